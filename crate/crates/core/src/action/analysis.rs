//! Orbits, stabilizers and the counting theorems, all in exact arithmetic.

use std::collections::HashMap;
use std::sync::Arc;

use num_rational::Ratio;
use serde::Serialize;

use super::FiniteGSet;
use crate::error::AnalysisError;
use crate::finite::{
    is_l_subgyrogroup, left_cosets, CayleyTable, CosetPartition, FiniteGyrogroup, Subgyrogroup,
};

fn violation(property: &'static str, witness: Vec<usize>) -> AnalysisError {
    AnalysisError::TheoremViolation { property, witness }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitDecomposition {
    /// Orbits, each sorted, ordered by smallest point.
    pub orbits: Vec<Vec<usize>>,
    /// `orbit_of[x]` indexes `orbits`.
    pub orbit_of: Vec<usize>,
    /// `stabilizers[x] = stab(x)`.
    pub stabilizers: Vec<Subgyrogroup>,
    /// `Fix(X)`.
    pub fixed_points: Vec<usize>,
    /// `per_element_fixed[a] = fix(a)`.
    pub per_element_fixed: Vec<Vec<usize>>,
}

impl OrbitDecomposition {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitStabilizerRecord {
    pub point: usize,
    pub group_order: usize,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
}

/// `|X| = |Fix(X)| + Σ [G : stab(x_i)]` over non-singleton orbits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassEquation {
    pub points: usize,
    pub fixed: usize,
    /// `(x_i, [G : stab(x_i)])`, one per non-singleton orbit, by increasing
    /// index.
    pub terms: Vec<(usize, usize)>,
    pub holds: bool,
}

impl ClassEquation {
    /// The equation as text, e.g. `6 = 1 + 2 + 3`.
    pub fn render(&self) -> String {
        let mut rhs = vec![self.fixed.to_string()];
        rhs.extend(self.terms.iter().map(|(_, i)| i.to_string()));
        format!("{} = {}", self.points, rhs.join(" + "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BurnsideReport {
    /// `|fix(a)|` for each `a`.
    pub fixed_counts: Vec<usize>,
    pub total_fixed: usize,
    pub group_order: usize,
    /// The reduced fraction `total_fixed / group_order`.
    pub numerator: usize,
    pub denominator: usize,
    pub orbit_count: usize,
}

impl BurnsideReport {
    pub fn ratio(&self) -> Ratio<usize> {
        Ratio::new(self.numerator, self.denominator)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ActionClassification {
    pub faithful: bool,
    pub transitive: bool,
    pub free: bool,
    pub semiregular: bool,
    pub sharply_transitive: bool,
}

/// `G/ker` acting faithfully on the same points.
#[derive(Debug, Clone)]
pub struct QuotientAction {
    pub kernel: Subgyrogroup,
    pub cosets: CosetPartition,
    /// Element `i` is the coset `cosets.cosets[i]`.
    pub quotient: Arc<FiniteGyrogroup>,
    pub gset: FiniteGSet,
}

impl FiniteGSet {
    /// Orbits, stabilizers and fixed sets. Every stabilizer is checked to be
    /// an L-subgyrogroup invariant under all gyrations.
    pub fn orbits_and_stabilizers(&self) -> Result<OrbitDecomposition, AnalysisError> {
        let g = self.group();
        let k = self.points();
        let mut orbit_of = vec![usize::MAX; k];
        let mut orbits = Vec::new();
        for x in 0..k {
            if orbit_of[x] != usize::MAX {
                continue;
            }
            let orbit = self.orbit(x);
            for &y in &orbit {
                if orbit_of[y] != usize::MAX {
                    return Err(violation("orbits partition X", vec![x, y]));
                }
                orbit_of[y] = orbits.len();
            }
            orbits.push(orbit);
        }

        let mut stabilizers = Vec::with_capacity(k);
        for x in 0..k {
            let members = self.stabilizer(x);
            let s = Subgyrogroup::new(g, &members)
                .map_err(|_| violation("stabilizer is a subgyrogroup", vec![x]))?;
            if !is_l_subgyrogroup(g, &s) {
                return Err(violation("stabilizer is an L-subgyrogroup", vec![x]));
            }
            for a in g.elements() {
                for b in g.elements() {
                    let mut image: Vec<usize> =
                        members.iter().map(|&c| g.gyr(a, b, c)).collect();
                    image.sort_unstable();
                    if image != members {
                        return Err(violation("gyr[a,b](stab x) = stab x", vec![a, b, x]));
                    }
                }
            }
            stabilizers.push(s);
        }

        let fixed_points = (0..k).filter(|&x| stabilizers[x].order() == g.order()).collect();
        let per_element_fixed = g
            .elements()
            .map(|a| (0..k).filter(|&x| self.act(a, x) == x).collect())
            .collect();
        Ok(OrbitDecomposition {
            orbits,
            orbit_of,
            stabilizers,
            fixed_points,
            per_element_fixed,
        })
    }

    /// `|G| = |orb x|·|stab x|` at every point, together with the bijection
    /// `θ(a·x) = a⊕stab x`, checked to be well defined and injective.
    pub fn check_orbit_stabilizer(&self) -> Result<Vec<OrbitStabilizerRecord>, AnalysisError> {
        let g = self.group();
        let n = g.order();
        let mut records = Vec::with_capacity(self.points());
        for x in 0..self.points() {
            let stab = self.stabilizer(x);
            let orbit = self.orbit(x);
            if n != orbit.len() * stab.len() {
                return Err(violation("|G| = |orb x||stab x|", vec![x]));
            }
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let coset_id: Vec<usize> = g
                .elements()
                .map(|a| {
                    let mut c: Vec<usize> = stab.iter().map(|&s| g.add(a, s)).collect();
                    c.sort_unstable();
                    let next = ids.len();
                    *ids.entry(c).or_insert(next)
                })
                .collect();
            for a in g.elements() {
                for b in g.elements() {
                    let same_point = self.act(a, x) == self.act(b, x);
                    let same_coset = coset_id[a] == coset_id[b];
                    if same_point && !same_coset {
                        return Err(violation("θ is well defined", vec![x, a, b]));
                    }
                    if same_coset && !same_point {
                        return Err(violation("θ is injective", vec![x, a, b]));
                    }
                }
            }
            if ids.len() != orbit.len() {
                return Err(violation("θ is onto G/stab x", vec![x]));
            }
            records.push(OrbitStabilizerRecord {
                point: x,
                group_order: n,
                orbit_size: orbit.len(),
                stabilizer_order: stab.len(),
            });
        }
        Ok(records)
    }

    /// `|X| = |Fix(X)| + Σ [G : stab(x_i)]`, with `x_i` the smallest point of
    /// each non-singleton orbit and the index counted as the number of cosets.
    pub fn orbit_decomposition_equation(&self) -> Result<ClassEquation, AnalysisError> {
        let dec = self.orbits_and_stabilizers()?;
        let g = self.group();
        let mut terms: Vec<(usize, usize)> = dec
            .orbits
            .iter()
            .filter(|o| o.len() > 1)
            .map(|o| (o[0], left_cosets(g, &dec.stabilizers[o[0]]).index))
            .collect();
        terms.sort_by_key(|&(x, index)| (index, x));
        let sum: usize = dec.fixed_points.len() + terms.iter().map(|t| t.1).sum::<usize>();
        let eq = ClassEquation {
            points: self.points(),
            fixed: dec.fixed_points.len(),
            terms,
            holds: sum == self.points(),
        };
        if !eq.holds {
            return Err(violation("orbit decomposition equation", vec![sum, self.points()]));
        }
        Ok(eq)
    }

    /// `(1/|G|) Σ_a |fix(a)|`, which must equal the number of orbits.
    pub fn burnside_count(&self) -> Result<BurnsideReport, AnalysisError> {
        let g = self.group();
        let fixed_counts: Vec<usize> = g
            .elements()
            .map(|a| (0..self.points()).filter(|&x| self.act(a, x) == x).count())
            .collect();
        let total_fixed: usize = fixed_counts.iter().sum();
        let count = Ratio::new(total_fixed, g.order());
        let orbit_count = self.orbits_and_stabilizers()?.orbit_count();
        if !count.is_integer() || count.to_integer() != orbit_count {
            return Err(violation(
                "Burnside count equals orbit count",
                vec![*count.numer(), *count.denom(), orbit_count],
            ));
        }
        Ok(BurnsideReport {
            fixed_counts,
            total_fixed,
            group_order: g.order(),
            numerator: *count.numer(),
            denominator: *count.denom(),
            orbit_count,
        })
    }

    /// Action-type flags. Sharp transitivity is decided by counting
    /// solutions of `a·x = y` and then compared with the other flags.
    pub fn classify(&self) -> Result<ActionClassification, AnalysisError> {
        let g = self.group();
        let k = self.points();
        let stabs: Vec<Vec<usize>> = (0..k).map(|x| self.stabilizer(x)).collect();
        let kernel_trivial = g
            .elements()
            .filter(|&a| (0..k).all(|x| self.act(a, x) == x))
            .eq(std::iter::once(0));
        let transitive = self.orbit(0).len() == k;
        let free = stabs.iter().all(|s| s == &[0]);
        let semiregular = stabs.iter().any(|s| s == &[0]);
        let mut sharply_transitive = true;
        'outer: for x in 0..k {
            let mut solutions = vec![0usize; k];
            for a in g.elements() {
                solutions[self.act(a, x)] += 1;
            }
            if solutions.iter().any(|&c| c != 1) {
                sharply_transitive = false;
                break 'outer;
            }
        }
        let cancellative = (0..k).all(|x| {
            let mut seen = vec![false; k];
            g.elements().all(|a| !std::mem::replace(&mut seen[self.act(a, x)], true))
        });

        let c = ActionClassification {
            faithful: kernel_trivial,
            transitive,
            free,
            semiregular,
            sharply_transitive,
        };
        let flags = vec![
            c.faithful as usize,
            c.transitive as usize,
            c.free as usize,
            c.semiregular as usize,
            c.sharply_transitive as usize,
        ];
        let checks: [(&'static str, bool); 6] = [
            ("free iff a·x = b·x implies a = b", free == cancellative),
            ("sharply transitive iff transitive and free", sharply_transitive == (transitive && free)),
            (
                "sharply transitive iff transitive and semiregular",
                sharply_transitive == (transitive && semiregular),
            ),
            ("transitive: free iff semiregular", !transitive || free == semiregular),
            ("free implies semiregular", !free || semiregular),
            ("semiregular implies faithful", !semiregular || kernel_trivial),
        ];
        for (property, ok) in checks {
            if !ok {
                return Err(violation(property, flags));
            }
        }
        Ok(c)
    }

    /// `stab(a·x)`, computed directly and as the conjugate of `stab(x)` by `a`.
    pub fn stabilizer_of_translate(&self, a: usize, x: usize) -> Result<Vec<usize>, AnalysisError> {
        let direct = self.stabilizer(self.act(a, x));
        let conjugated = self.group().conjugate_set(a, &self.stabilizer(x));
        if direct != conjugated {
            return Err(violation("stab(a·x) is the conjugate of stab x by a", vec![a, x]));
        }
        Ok(direct)
    }

    /// Sweeps [`Self::stabilizer_of_translate`] over every `(a, x)`, which in
    /// particular shows that stabilizers along an orbit are conjugate.
    pub fn check_translate_stabilizers(&self) -> Result<(), AnalysisError> {
        for a in self.group().elements() {
            for x in 0..self.points() {
                self.stabilizer_of_translate(a, x)?;
            }
        }
        Ok(())
    }

    /// `(a⊕K)·x = a·x` on `G/K`, `K` the kernel. The quotient operation and
    /// the action are checked to be well defined and the result faithful.
    pub fn faithful_quotient_action(&self) -> Result<QuotientAction, AnalysisError> {
        let g = self.group();
        let kernel = self.representation()?.kernel;
        if let Some((a, b, x)) = crate::finite::gyration_invariance_witness(g, &kernel) {
            return Err(violation("kernel is gyration invariant", vec![a, b, x]));
        }
        let cosets = left_cosets(g, &kernel);
        let Some(assign) = cosets.assignment() else {
            let (i, j) = cosets.overlaps[0];
            return Err(AnalysisError::CosetsOverlap(i, j));
        };
        let m = cosets.index;
        let mut entries = vec![usize::MAX; m * m];
        for a in g.elements() {
            for b in g.elements() {
                let slot = &mut entries[assign[a] * m + assign[b]];
                let value = assign[g.add(a, b)];
                if *slot == usize::MAX {
                    *slot = value;
                } else if *slot != value {
                    return Err(violation("quotient operation is well defined", vec![a, b]));
                }
            }
        }
        let labels = cosets.representatives.iter().map(|&r| g.table().label(r)).collect();
        let table = CayleyTable::new(m, entries)?.with_labels(labels)?;
        let quotient = Arc::new(
            FiniteGyrogroup::validate(table)
                .map_err(|_| violation("quotient is a gyrogroup", kernel.members().to_vec()))?,
        );
        for a in g.elements() {
            let rep = cosets.representatives[assign[a]];
            if let Some(x) = (0..self.points()).find(|&x| self.act(a, x) != self.act(rep, x)) {
                return Err(violation("quotient action is well defined", vec![a, x]));
            }
        }
        let gset = FiniteGSet::from_fn(quotient.clone(), self.points(), |i, x| {
            self.act(cosets.representatives[i], x)
        })?;
        if !gset.classify()?.faithful {
            return Err(violation("quotient action is faithful", kernel.members().to_vec()));
        }
        Ok(QuotientAction {
            kernel,
            cosets,
            quotient,
            gset,
        })
    }
}
