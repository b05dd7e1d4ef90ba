//! G-maps between finite G-sets over the same carrier.

use serde::Serialize;

use crate::action::{FiniteGSet, Restriction};
use crate::coset::{build_coset_action, CosetAction};
use crate::error::{ActionError, AnalysisError};
use crate::finite::Subgyrogroup;

/// Largest point count for which bijections are enumerated exhaustively.
pub const BRUTE_FORCE_LIMIT: usize = 6;

/// A point map `Φ: X → Y` between G-sets over the same carrier.
#[derive(Debug, Clone, PartialEq)]
pub struct GMap {
    pub source: FiniteGSet,
    pub target: FiniteGSet,
    pub map: Vec<usize>,
}

impl GMap {
    pub fn new(source: FiniteGSet, target: FiniteGSet, map: Vec<usize>) -> Result<Self, ActionError> {
        if !source.same_carrier(&target) {
            return Err(ActionError::CarrierMismatch);
        }
        if map.len() != source.points() {
            return Err(ActionError::Shape {
                expected: source.points(),
                actual: map.len(),
            });
        }
        if let Some(&y) = map.iter().find(|&&y| y >= target.points()) {
            return Err(ActionError::PointOutOfRange(y));
        }
        Ok(Self { source, target, map })
    }

    pub fn identity(gset: &FiniteGSet) -> Self {
        Self {
            source: gset.clone(),
            target: gset.clone(),
            map: (0..gset.points()).collect(),
        }
    }

    /// First `(a, x)` with `Φ(a·x) ≠ a·Φ(x)`.
    pub fn commuting_witness(&self) -> Option<(usize, usize)> {
        commuting_witness(&self.source, &self.target, &self.map)
    }

    pub fn is_g_map(&self) -> bool {
        self.commuting_witness().is_none()
    }

    pub fn is_bijective(&self) -> bool {
        is_bijection(&self.map, self.target.points())
    }

    pub fn is_equivalence(&self) -> bool {
        self.is_bijective() && self.is_g_map()
    }

    /// First `x` with `stab x ≠ stab Φ(x)`.
    pub fn stabilizer_mismatch(&self) -> Option<usize> {
        (0..self.source.points())
            .find(|&x| self.source.stabilizer(x) != self.target.stabilizer(self.map[x]))
    }
}

fn commuting_witness(source: &FiniteGSet, target: &FiniteGSet, map: &[usize]) -> Option<(usize, usize)> {
    for a in source.group().elements() {
        for x in 0..source.points() {
            if map[source.act(a, x)] != target.act(a, map[x]) {
                return Some((a, x));
            }
        }
    }
    None
}

fn is_bijection(map: &[usize], codomain: usize) -> bool {
    if map.len() != codomain {
        return false;
    }
    let mut seen = vec![false; codomain];
    map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
}

fn violation(property: &'static str, witness: Vec<usize>) -> AnalysisError {
    AnalysisError::TheoremViolation { property, witness }
}

/// `Φ(a⊕stab z) = a·z` from `G/stab z` onto `orb(z)`.
#[derive(Debug, Clone)]
pub struct FundamentalIsomorphism {
    pub coset_action: CosetAction,
    /// `orb(z)` as a sub-G-set.
    pub orbit: Restriction,
    /// Equivalence from the coset space onto the orbit.
    pub map: GMap,
}

pub fn fundamental_isomorphism(gset: &FiniteGSet, z: usize) -> Result<FundamentalIsomorphism, AnalysisError> {
    if z >= gset.points() {
        return Err(ActionError::PointOutOfRange(z).into());
    }
    let g = gset.group();
    let stab = Subgyrogroup::new(g, &gset.stabilizer(z))?;
    let coset_action = build_coset_action(gset.group_arc().clone(), &stab)?;
    let orbit = gset.restrict_to_invariant(&gset.orbit(z))?;
    let position = |p: usize| orbit.embedding.binary_search(&p).expect("a·z lies in orb(z)");
    let map: Vec<usize> = coset_action
        .partition
        .representatives
        .iter()
        .map(|&a| position(gset.act(a, z)))
        .collect();
    let map = GMap::new(coset_action.gset.clone(), orbit.gset.clone(), map)?;
    if !map.is_equivalence() {
        return Err(violation("Φ(a⊕stab z) = a·z is an equivalence", vec![z]));
    }
    if orbit.embedding.len() == gset.points() && orbit.gset != *gset {
        return Err(violation("G/stab z ≡ X for transitive X", vec![z]));
    }
    Ok(FundamentalIsomorphism {
        coset_action,
        orbit,
        map,
    })
}

/// All equivalences `X → Y` found by trying every bijection.
pub fn brute_force_equivalence(x: &FiniteGSet, y: &FiniteGSet) -> Option<Vec<usize>> {
    if x.points() != y.points() || !x.same_carrier(y) {
        return None;
    }
    let k = x.points();
    let mut perm: Vec<usize> = (0..k).collect();
    let mut found = None;
    heap_permutations(&mut perm, k, &mut |p| {
        if found.is_none() && commuting_witness(x, y, p).is_none() {
            found = Some(p.to_vec());
        }
    });
    found
}

fn heap_permutations(perm: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        visit(perm);
        return;
    }
    for i in 0..k - 1 {
        heap_permutations(perm, k - 1, visit);
        if k.is_multiple_of(2) {
            perm.swap(i, k - 1);
        } else {
            perm.swap(0, k - 1);
        }
    }
    heap_permutations(perm, k - 1, visit);
}

/// Decides `X ≡ Y` for transitive G-sets by searching `a` with
/// `stab x₀ = conj_a(stab y₀)`. On success the equivalence sends `b·x₀` to
/// `b·(a·y₀)`. For at most [`BRUTE_FORCE_LIMIT`] points the answer is
/// compared with an exhaustive search over bijections.
pub fn are_equivalent_transitive(x: &FiniteGSet, y: &FiniteGSet) -> Result<Option<GMap>, AnalysisError> {
    if !x.same_carrier(y) {
        return Err(ActionError::CarrierMismatch.into());
    }
    if x.orbit(0).len() != x.points() || y.orbit(0).len() != y.points() {
        return Err(AnalysisError::Precondition("both G-sets must be transitive".into()));
    }
    let g = x.group();
    let stab_x = x.stabilizer(0);
    let stab_y = y.stabilizer(0);
    let conjugator = g.elements().find(|&a| g.conjugate_set(a, &stab_y) == stab_x);

    let witness = match conjugator {
        None => None,
        Some(a) => {
            let y0 = y.act(a, 0);
            if y.stabilizer(y0) != stab_x {
                return Err(violation("stab(a·y) is the conjugate of stab y by a", vec![a]));
            }
            let mut map = vec![usize::MAX; x.points()];
            for b in g.elements() {
                let (p, q) = (x.act(b, 0), y.act(b, y0));
                if map[p] == usize::MAX {
                    map[p] = q;
                } else if map[p] != q {
                    return Err(violation("b·x₀ ↦ b·y₀ is well defined", vec![a, b]));
                }
            }
            let phi = GMap::new(x.clone(), y.clone(), map)?;
            if !phi.is_equivalence() {
                return Err(violation("conjugate stabilizers give an equivalence", vec![a]));
            }
            Some(phi)
        }
    };

    if x.points() <= BRUTE_FORCE_LIMIT && y.points() <= BRUTE_FORCE_LIMIT {
        let brute = brute_force_equivalence(x, y);
        if brute.is_some() != witness.is_some() {
            return Err(violation(
                "equivalent iff stabilizers are conjugate",
                vec![brute.is_some() as usize, witness.is_some() as usize],
            ));
        }
    }
    Ok(witness)
}

/// The orbits of `gset` as transitive sub-G-sets, ordered by smallest point.
pub fn transitive_components(gset: &FiniteGSet) -> Result<Vec<Restriction>, AnalysisError> {
    let dec = gset.orbits_and_stabilizers()?;
    dec.orbits
        .iter()
        .map(|o| gset.restrict_to_invariant(o).map_err(AnalysisError::from))
        .collect()
}

/// Result of matching the transitive components of two G-sets.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentMatching {
    /// `(i, j)`: component `i` of `X` is matched with component `j` of `Y`.
    pub pairs: Vec<(usize, usize)>,
    /// Components of `X` left unmatched, by index.
    pub unmatched_source: Vec<usize>,
    /// Components of `Y` left unmatched, by index.
    pub unmatched_target: Vec<usize>,
    /// A global equivalence `X → Y`, when the matching is perfect.
    pub map: Option<Vec<usize>>,
}

impl ComponentMatching {
    pub fn is_equivalent(&self) -> bool {
        self.map.is_some()
    }
}

/// Matches components of `x` with equivalent components of `y` by maximum
/// bipartite matching. Candidates are tried in increasing index order, so
/// the result is deterministic. A perfect matching yields an assembled
/// global equivalence.
pub fn match_components(x: &FiniteGSet, y: &FiniteGSet) -> Result<ComponentMatching, AnalysisError> {
    if !x.same_carrier(y) {
        return Err(ActionError::CarrierMismatch.into());
    }
    let cx = transitive_components(x)?;
    let cy = transitive_components(y)?;
    let mut edges: Vec<Vec<Option<GMap>>> = Vec::with_capacity(cx.len());
    for a in &cx {
        let mut row = Vec::with_capacity(cy.len());
        for b in &cy {
            row.push(are_equivalent_transitive(&a.gset, &b.gset)?);
        }
        edges.push(row);
    }

    let mut owner: Vec<Option<usize>> = vec![None; cy.len()];
    for i in 0..cx.len() {
        let mut visited = vec![false; cy.len()];
        augment(i, &edges, &mut visited, &mut owner);
    }
    let mut pairs: Vec<(usize, usize)> = owner
        .iter()
        .enumerate()
        .filter_map(|(j, o)| o.map(|i| (i, j)))
        .collect();
    pairs.sort_unstable();
    let unmatched_source: Vec<usize> = (0..cx.len()).filter(|i| !pairs.iter().any(|p| p.0 == *i)).collect();
    let unmatched_target: Vec<usize> = (0..cy.len()).filter(|j| owner[*j].is_none()).collect();

    let map = (unmatched_source.is_empty() && unmatched_target.is_empty()).then(|| {
        let mut map = vec![0; x.points()];
        for &(i, j) in &pairs {
            let phi = edges[i][j].as_ref().expect("matched pairs are equivalent");
            for (p, &q) in phi.map.iter().enumerate() {
                map[cx[i].embedding[p]] = cy[j].embedding[q];
            }
        }
        map
    });
    if let Some(map) = &map {
        let phi = GMap::new(x.clone(), y.clone(), map.clone())?;
        if !phi.is_equivalence() {
            return Err(violation("assembled component maps form an equivalence", pairs.iter().map(|p| p.0).collect()));
        }
    }
    Ok(ComponentMatching {
        pairs,
        unmatched_source,
        unmatched_target,
        map,
    })
}

fn augment(i: usize, edges: &[Vec<Option<GMap>>], visited: &mut [bool], owner: &mut [Option<usize>]) -> bool {
    for j in 0..owner.len() {
        if edges[i][j].is_none() || visited[j] {
            continue;
        }
        visited[j] = true;
        if owner[j].is_none_or(|k| augment(k, edges, visited, owner)) {
            owner[j] = Some(i);
            return true;
        }
    }
    false
}
