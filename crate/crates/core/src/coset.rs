//! Left-gyroaddition actions `a·(x⊕H) = (a⊕x)⊕H` on coset spaces.
//!
//! The action exists exactly when `gyr[a,b](H) ⊆ H` and `⊖x⊕gyr[a,b]x ∈ H`
//! for all `a, b, x`. Both conditions are checked before anything is built.

use std::sync::Arc;

use serde::Serialize;

use crate::action::{ActionClassification, FiniteGSet};
use crate::carrier::{self, Gyrogroup};
use crate::error::{ActionError, AnalysisError};
use crate::finite::{gyration_invariance_witness, left_cosets, CosetPartition, FiniteGyrogroup, Subgyrogroup};

/// Whether `a·x = a⊕x` is an action, i.e. all gyrations are trivial.
pub fn self_action_possible(g: &FiniteGyrogroup) -> bool {
    g.nontrivial_gyration_witness().is_none()
}

/// `G` acting on itself by `a·x = a⊕x`. Fails with a compatibility witness
/// on non-degenerate carriers.
pub fn self_action(g: Arc<FiniteGyrogroup>) -> Result<FiniteGSet, ActionError> {
    let n = g.order();
    let h = g.clone();
    FiniteGSet::from_fn(g, n, move |a, x| h.add(a, x))
}

/// Index of the first sampled triple `(a,b,c)` with `gyr[a,b]c ≠ c`.
pub fn sampled_nontrivial_gyration<G: Gyrogroup + ?Sized>(
    g: &G,
    triples: &[(G::Element, G::Element, G::Element)],
) -> Option<usize> {
    triples.iter().position(|(a, b, c)| match carrier::gyration(g, a, b, c) {
        Ok(image) => !g.equals(&image, c),
        Err(_) => false,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CriterionMode {
    Exhaustive,
    Sampled,
}

/// Outcome of the two coset-criterion conditions.
///
/// In exhaustive mode witnesses are `[a, b, x]`; in sampled mode they are
/// the index of the failing sample.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub mode: CriterionMode,
    pub seed: Option<u64>,
    pub samples: usize,
    /// `gyr[a,b](H) ⊆ H`.
    pub gyration_invariant: bool,
    pub gyration_witness: Option<Vec<usize>>,
    /// Samples on which the first condition was actually evaluated.
    pub invariance_checked: usize,
    /// `⊖x ⊕ gyr[a,b]x ∈ H`.
    pub translate_condition: bool,
    pub translate_witness: Option<Vec<usize>>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.gyration_invariant && self.translate_condition
    }

    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if let Some(w) = &self.gyration_witness {
            parts.push(format!("gyr[a,b](H) ⊄ H at {w:?}"));
        }
        if let Some(w) = &self.translate_witness {
            parts.push(format!("⊖x⊕gyr[a,b]x ∉ H at {w:?}"));
        }
        if parts.is_empty() {
            "criterion holds".into()
        } else {
            parts.join("; ")
        }
    }
}

/// Both conditions over all of `G`.
pub fn coset_criterion(g: &FiniteGyrogroup, h: &Subgyrogroup) -> CriterionReport {
    let gyration_witness = gyration_invariance_witness(g, h).map(|(a, b, x)| vec![a, b, x]);
    let mut translate_witness = None;
    'outer: for a in g.elements() {
        for b in g.elements() {
            for x in g.elements() {
                if !h.contains(g.add(g.neg(x), g.gyr(a, b, x))) {
                    translate_witness = Some(vec![a, b, x]);
                    break 'outer;
                }
            }
        }
    }
    let n = g.order();
    CriterionReport {
        mode: CriterionMode::Exhaustive,
        seed: None,
        samples: n * n * n,
        gyration_invariant: gyration_witness.is_none(),
        gyration_witness,
        invariance_checked: n * n * h.order(),
        translate_condition: translate_witness.is_none(),
        translate_witness,
    }
}

/// Both conditions over sampled triples `(a, b, x)`, for carriers where `H`
/// is given by a membership test. The first condition is evaluated on the
/// triples whose third entry lies in `H`.
pub fn sampled_criterion<G: Gyrogroup + ?Sized>(
    g: &G,
    contains: impl Fn(&G::Element) -> bool,
    triples: &[(G::Element, G::Element, G::Element)],
    seed: u64,
) -> CriterionReport {
    let mut gyration_witness = None;
    let mut translate_witness = None;
    let mut invariance_checked = 0;
    for (i, (a, b, x)) in triples.iter().enumerate() {
        let image = carrier::gyration(g, a, b, x);
        if contains(x) {
            invariance_checked += 1;
            let ok = image.as_ref().map(&contains).unwrap_or(false);
            if !ok && gyration_witness.is_none() {
                gyration_witness = Some(vec![i]);
            }
        }
        let ok = image
            .and_then(|y| g.oplus(&g.ominus(x)?, &y))
            .map(|d| contains(&d))
            .unwrap_or(false);
        if !ok && translate_witness.is_none() {
            translate_witness = Some(vec![i]);
        }
    }
    CriterionReport {
        mode: CriterionMode::Sampled,
        seed: Some(seed),
        samples: triples.len(),
        gyration_invariant: gyration_witness.is_none(),
        gyration_witness,
        invariance_checked,
        translate_condition: translate_witness.is_none(),
        translate_witness,
    }
}

/// A verified left-gyroaddition action on `G/H`. Point `i` is the coset
/// `partition.cosets[i]`.
#[derive(Debug, Clone)]
pub struct CosetAction {
    pub subgroup: Subgyrogroup,
    pub criterion: CriterionReport,
    pub partition: CosetPartition,
    pub gset: FiniteGSet,
    pub classification: ActionClassification,
}

impl CosetAction {
    pub fn index(&self) -> usize {
        self.partition.index
    }
}

fn violation(property: &'static str, witness: Vec<usize>) -> AnalysisError {
    AnalysisError::TheoremViolation { property, witness }
}

/// Builds `a·(x⊕H) = (a⊕x)⊕H` and verifies well-definedness, the action
/// axioms, transitivity, `stab(x⊕H) = conj_x(H)`, non-semiregularity for
/// `H ≠ {0}` and `|G| = [G:H]·|H|`.
pub fn build_coset_action(
    group: Arc<FiniteGyrogroup>,
    h: &Subgyrogroup,
) -> Result<CosetAction, AnalysisError> {
    let g = &*group;
    let criterion = coset_criterion(g, h);
    if !criterion.passed() {
        return Err(AnalysisError::CriterionNotSatisfied(criterion.summary()));
    }
    let partition = left_cosets(g, h);
    let Some(assign) = partition.assignment() else {
        let (i, j) = partition.overlaps[0];
        return Err(AnalysisError::CosetsOverlap(i, j));
    };
    let m = partition.index;
    let mut table = vec![0; g.order() * m];
    for a in g.elements() {
        for (i, coset) in partition.cosets.iter().enumerate() {
            let target = assign[g.add(a, partition.representatives[i])];
            if let Some(&x) = coset.iter().find(|&&x| assign[g.add(a, x)] != target) {
                return Err(violation("coset action is well defined", vec![a, x]));
            }
            table[a * m + i] = target;
        }
    }
    let gset = FiniteGSet::new(group.clone(), m, table)?;
    if gset.orbit(0).len() != m {
        return Err(violation("coset action is transitive", vec![]));
    }
    for x in g.elements() {
        let stab = gset.stabilizer(assign[x]);
        if stab != g.conjugate_set(x, h.members()) {
            return Err(violation("stab(x⊕H) is the conjugate of H by x", vec![x]));
        }
    }
    let classification = gset.classify()?;
    if !h.is_trivial() && classification.semiregular {
        return Err(violation("coset action is not semiregular", h.members().to_vec()));
    }
    if !partition.index_formula_holds {
        return Err(violation("|G| = [G:H]|H|", vec![g.order(), m, h.order()]));
    }
    Ok(CosetAction {
        subgroup: h.clone(),
        criterion,
        partition,
        gset,
        classification,
    })
}

/// The coset action on `G/H` for a subgyrogroup `H` containing the kernel
/// of `gset` and invariant under all gyrations.
pub fn induced_action_over_subgyrogroup(
    gset: &FiniteGSet,
    h: &Subgyrogroup,
) -> Result<CosetAction, AnalysisError> {
    let g = gset.group();
    let kernel = gset.representation()?.kernel;
    if let Some(&k) = kernel.members().iter().find(|&&k| !h.contains(k)) {
        return Err(AnalysisError::Precondition(format!(
            "kernel element {k} is not in H"
        )));
    }
    if let Some((a, b, x)) = gyration_invariance_witness(g, h) {
        return Err(AnalysisError::Precondition(format!(
            "H is not gyration invariant: gyr[{a},{b}]{x} = {} ∉ H",
            g.gyr(a, b, x)
        )));
    }
    build_coset_action(gset.group_arc().clone(), h).map_err(|e| match e {
        AnalysisError::CriterionNotSatisfied(_) => {
            violation("kernel-containing invariant subgyrogroup passes the criterion", h.members().to_vec())
        }
        other => other,
    })
}
