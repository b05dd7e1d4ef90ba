use std::sync::Arc;

use rand::Rng;

use super::FiniteGSet;
use crate::coset::{build_coset_action, coset_criterion};
use crate::error::AnalysisError;
use crate::finite::{enumerate_subgyrogroups, FiniteGyrogroup, DEFAULT_ENUMERATION_CAP};
use crate::sampling::random_permutation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomActionConfig {
    /// Components are drawn uniformly from `1..=max_components`.
    pub max_components: usize,
}

impl Default for RandomActionConfig {
    fn default() -> Self {
        Self { max_components: 3 }
    }
}

/// A random action: a disjoint union of coset actions `G/H` over random
/// subgyrogroups `H` passing the coset criterion, with points shuffled.
/// The result is rebuilt through [`FiniteGSet::from_homomorphism`].
pub fn random_action<R: Rng + ?Sized>(
    group: &Arc<FiniteGyrogroup>,
    rng: &mut R,
    config: RandomActionConfig,
) -> Result<FiniteGSet, AnalysisError> {
    let candidates: Vec<_> = enumerate_subgyrogroups(group, DEFAULT_ENUMERATION_CAP)?
        .into_iter()
        .filter(|h| coset_criterion(group, h).passed())
        .collect();
    // G itself always passes, so `candidates` is never empty.
    let components = rng.gen_range(1..=config.max_components.max(1));
    let mut rows: Vec<Vec<usize>> = vec![Vec::new(); group.order()];
    for _ in 0..components {
        let h = &candidates[rng.gen_range(0..candidates.len())];
        let coset = build_coset_action(group.clone(), h)?;
        let offset = rows[0].len();
        for (a, row) in rows.iter_mut().enumerate() {
            row.extend(coset.gset.permutation(a).iter().map(|&y| y + offset));
        }
    }
    let k = rows[0].len();
    let relabel = random_permutation(rng, k);
    let perms: Vec<Vec<usize>> = rows
        .iter()
        .map(|row| {
            let mut p = vec![0; k];
            for x in 0..k {
                p[relabel[x]] = relabel[row[x]];
            }
            p
        })
        .collect();
    Ok(FiniteGSet::from_homomorphism(group.clone(), k, &perms)?)
}
