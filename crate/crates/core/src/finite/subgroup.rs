use std::collections::{BTreeSet, HashSet, VecDeque};

use serde::Serialize;

use super::gyrogroup::FiniteGyrogroup;
use crate::error::GyroError;

/// Default cap on the order accepted by [`enumerate_subgyrogroups`].
pub const DEFAULT_ENUMERATION_CAP: usize = 64;

/// A subset of a finite gyrogroup containing 0 and closed under `⊕` and `⊖`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Subgyrogroup {
    members: Vec<usize>,
}

impl Subgyrogroup {
    /// Checks the subgyrogroup criterion and wraps the (sorted) members.
    pub fn new(g: &FiniteGyrogroup, members: &[usize]) -> Result<Self, GyroError> {
        let members = normalize(members);
        if let Some(&bad) = members.iter().find(|&&x| x >= g.order()) {
            return Err(GyroError::InvalidSubset(format!(
                "element {bad} is outside 0..{}",
                g.order()
            )));
        }
        if !is_subgyrogroup(g, &members) {
            return Err(GyroError::InvalidSubset(format!(
                "{members:?} is not closed under ⊕ and ⊖ or misses 0"
            )));
        }
        Ok(Self { members })
    }

    pub fn trivial() -> Self {
        Self { members: vec![0] }
    }

    pub fn whole(g: &FiniteGyrogroup) -> Self {
        Self {
            members: g.elements().collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members == [0]
    }

    pub fn is_subset_of(&self, other: &Subgyrogroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }
}

fn normalize(set: &[usize]) -> Vec<usize> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// `0 ∈ s` and `s` is closed under `⊕` and `⊖`.
pub fn is_subgyrogroup(g: &FiniteGyrogroup, s: &[usize]) -> bool {
    let n = g.order();
    let mut mask = vec![false; n];
    for &x in s {
        if x >= n {
            return false;
        }
        mask[x] = true;
    }
    if !mask[0] {
        return false;
    }
    s.iter().all(|&a| {
        mask[g.neg(a)] && s.iter().all(|&b| mask[g.add(a, b)])
    })
}

/// Smallest subgyrogroup containing `generators`.
pub fn closure(g: &FiniteGyrogroup, generators: &[usize]) -> Subgyrogroup {
    let n = g.order();
    let mut mask = vec![false; n];
    let mut members = vec![0];
    mask[0] = true;
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &x in generators {
        if !mask[x] {
            mask[x] = true;
            members.push(x);
            queue.push_back(x);
        }
    }
    while let Some(x) = queue.pop_front() {
        let mut fresh = vec![g.neg(x)];
        for &y in &members {
            fresh.push(g.add(x, y));
            fresh.push(g.add(y, x));
        }
        for z in fresh {
            if !mask[z] {
                mask[z] = true;
                members.push(z);
                queue.push_back(z);
            }
        }
    }
    members.sort_unstable();
    Subgyrogroup { members }
}

/// All subgyrogroups, by closure of generating sets, sorted by order and
/// then lexicographically by members.
pub fn enumerate_subgyrogroups(
    g: &FiniteGyrogroup,
    cap: usize,
) -> Result<Vec<Subgyrogroup>, GyroError> {
    if g.order() > cap {
        return Err(GyroError::OrderCapExceeded {
            order: g.order(),
            cap,
        });
    }
    let mut found: HashSet<Subgyrogroup> = HashSet::new();
    let mut queue = VecDeque::new();
    let start = Subgyrogroup::trivial();
    found.insert(start.clone());
    queue.push_back(start);
    // Every subgyrogroup is reached by adjoining one element at a time to
    // a subgyrogroup it contains.
    while let Some(s) = queue.pop_front() {
        for x in g.elements().filter(|&x| !s.contains(x)) {
            let mut gens = s.members.clone();
            gens.push(x);
            let t = closure(g, &gens);
            if found.insert(t.clone()) {
                queue.push_back(t);
            }
        }
    }
    let mut out: Vec<Subgyrogroup> = found.into_iter().collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    Ok(out)
}

/// `gyr[a,h](H) = H` for all `a ∈ G`, `h ∈ H`.
pub fn is_l_subgyrogroup(g: &FiniteGyrogroup, h: &Subgyrogroup) -> bool {
    g.elements().all(|a| {
        h.members.iter().all(|&k| {
            let image: BTreeSet<usize> = h.members.iter().map(|&x| g.gyr(a, k, x)).collect();
            image.len() == h.order() && image.iter().all(|&y| h.contains(y))
        })
    })
}

/// `gyr[a,b](H) ⊆ H` for all `a, b ∈ G`; returns the first violation.
pub fn gyration_invariance_witness(
    g: &FiniteGyrogroup,
    h: &Subgyrogroup,
) -> Option<(usize, usize, usize)> {
    for a in g.elements() {
        for b in g.elements() {
            for &x in &h.members {
                if !h.contains(g.gyr(a, b, x)) {
                    return Some((a, b, x));
                }
            }
        }
    }
    None
}

/// The left cosets `a⊕H`, with partition diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CosetPartition {
    pub subgroup: Subgyrogroup,
    /// Distinct cosets (sorted members), ordered by first representative.
    pub cosets: Vec<Vec<usize>>,
    /// `representatives[i]` is the smallest `a` with `a⊕H = cosets[i]`.
    pub representatives: Vec<usize>,
    /// `[G:H]`.
    pub index: usize,
    /// Pairs of distinct cosets that intersect.
    pub overlaps: Vec<(usize, usize)>,
    pub equal_sizes: bool,
    /// `|G| = [G:H]·|H|`.
    pub index_formula_holds: bool,
    /// `assignment[x]` is the coset containing `x`; only for partitions.
    assignment: Option<Vec<usize>>,
}

impl CosetPartition {
    pub fn is_partition(&self) -> bool {
        self.assignment.is_some()
    }

    /// The coset containing `x`, when the cosets partition `G`.
    pub fn coset_of(&self, x: usize) -> Option<usize> {
        self.assignment.as_ref().map(|a| a[x])
    }

    pub fn assignment(&self) -> Option<&[usize]> {
        self.assignment.as_deref()
    }
}

pub fn left_cosets(g: &FiniteGyrogroup, h: &Subgyrogroup) -> CosetPartition {
    let n = g.order();
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    let mut representatives = Vec::new();
    for a in g.elements() {
        let coset = normalize(&h.members.iter().map(|&k| g.add(a, k)).collect::<Vec<_>>());
        if !cosets.contains(&coset) {
            cosets.push(coset);
            representatives.push(a);
        }
    }
    let mut overlaps = Vec::new();
    for i in 0..cosets.len() {
        for j in i + 1..cosets.len() {
            if cosets[i].iter().any(|x| cosets[j].binary_search(x).is_ok()) {
                overlaps.push((i, j));
            }
        }
    }
    let equal_sizes = cosets.iter().all(|c| c.len() == h.order());
    let assignment = overlaps.is_empty().then(|| {
        let mut assignment = vec![0; n];
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                assignment[x] = i;
            }
        }
        assignment
    });
    let index = cosets.len();
    CosetPartition {
        subgroup: h.clone(),
        cosets,
        representatives,
        index,
        overlaps,
        equal_sizes,
        index_formula_holds: n == index * h.order(),
        assignment,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn singleton_and_whole() {
        let g = FiniteGyrogroup::cyclic(6);
        assert!(is_subgyrogroup(&g, &[0]));
        assert!(is_subgyrogroup(&g, &[0, 1, 2, 3, 4, 5]));
        assert!(!is_subgyrogroup(&g, &[1, 2, 3, 4, 5]));
        assert!(!is_subgyrogroup(&g, &[0, 1]));
        assert!(!is_subgyrogroup(&g, &[0, 9]));
    }

    #[test]
    fn z6_subgyrogroup_orders() {
        let g = FiniteGyrogroup::cyclic(6);
        let subs = enumerate_subgyrogroups(&g, DEFAULT_ENUMERATION_CAP).unwrap();
        let orders: Vec<usize> = subs.iter().map(Subgyrogroup::order).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert!(subs.iter().all(|h| is_l_subgyrogroup(&g, h)));
    }

    #[test]
    fn enumeration_cap() {
        let g = FiniteGyrogroup::cyclic(6);
        assert_eq!(
            enumerate_subgyrogroups(&g, 5),
            Err(GyroError::OrderCapExceeded { order: 6, cap: 5 })
        );
        let trivial = FiniteGyrogroup::cyclic(1);
        assert_eq!(enumerate_subgyrogroups(&trivial, 64).unwrap().len(), 1);
    }

    #[test]
    fn coset_extremes() {
        let g = FiniteGyrogroup::cyclic(6);
        let p = left_cosets(&g, &Subgyrogroup::trivial());
        assert_eq!(p.index, 6);
        assert!(p.cosets.iter().all(|c| c.len() == 1));
        let p = left_cosets(&g, &Subgyrogroup::whole(&g));
        assert_eq!(p.index, 1);
        assert!(p.index_formula_holds);

        let h = Subgyrogroup::new(&g, &[3, 0]).unwrap();
        let p = left_cosets(&g, &h);
        assert_eq!(p.cosets, vec![vec![0, 3], vec![1, 4], vec![2, 5]]);
        assert_eq!(p.coset_of(4), Some(1));
    }

    #[test]
    fn closure_of_generator() {
        let g = FiniteGyrogroup::cyclic(6);
        assert_eq!(closure(&g, &[2]).members(), &[0, 2, 4]);
        assert_eq!(closure(&g, &[]).members(), &[0]);
        assert!(Subgyrogroup::new(&g, &[0, 2]).is_err());
    }
}
