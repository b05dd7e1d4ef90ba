use std::fmt;

use serde::Serialize;

use super::table::CayleyTable;
use crate::carrier::{self, Gyrogroup};
use crate::error::GyroError;

/// Witnesses kept per violated check; the total count is always exact.
pub const MAX_WITNESSES: usize = 64;

/// The exhaustive checks run by [`FiniteGyrogroup::validate`], in order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// `0⊕b = b`; witness `[b]`.
    IdentityRow,
    /// Row `a` is a permutation; witness `[a, b1, b2]` with `a⊕b1 = a⊕b2`,
    /// or `[a, c]` when `c` is missing from the row.
    RowPermutation,
    /// Unique `b` with `b⊕a = 0` that also satisfies `a⊕b = 0`; witness `[a]`.
    TwoSidedInverse,
    /// `gyr[a,b]` is a bijection; witness `[a, b, c1, c2]` with equal images.
    GyrationBijective,
    /// `gyr[a,b](u⊕v) = gyr[a,b]u ⊕ gyr[a,b]v`; witness `[a, b, u, v]`.
    GyrationAutomorphism,
    /// `a⊕(b⊕c) = (a⊕b)⊕gyr[a,b]c`; witness `[a, b, c]`.
    LeftGyroassociativity,
    /// `gyr[a⊕b,b]c = gyr[a,b]c`; witness `[a, b, c]`.
    LeftLoopProperty,
}

impl Check {
    pub const ALL: [Check; 7] = [
        Check::IdentityRow,
        Check::RowPermutation,
        Check::TwoSidedInverse,
        Check::GyrationBijective,
        Check::GyrationAutomorphism,
        Check::LeftGyroassociativity,
        Check::LeftLoopProperty,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::IdentityRow => "identity-row",
            Check::RowPermutation => "row-permutation",
            Check::TwoSidedInverse => "two-sided-inverse",
            Check::GyrationBijective => "gyration-bijective",
            Check::GyrationAutomorphism => "gyration-automorphism",
            Check::LeftGyroassociativity => "left-gyroassociativity",
            Check::LeftLoopProperty => "left-loop-property",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// All violations of one check, witnesses sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub check: Check,
    pub total: usize,
    pub witnesses: Vec<Vec<usize>>,
}

/// Why a table is not a gyrogroup.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationFailure {
    pub diagnostics: Vec<Diagnostic>,
    /// Checks that could not run because inverses are undefined.
    pub skipped: Vec<Check>,
}

impl ValidationFailure {
    pub fn diagnostic(&self, check: Check) -> Option<&Diagnostic> {
        self.diagnostics.iter().find(|d| d.check == check)
    }

    pub fn failed_checks(&self) -> Vec<Check> {
        self.diagnostics.iter().map(|d| d.check).collect()
    }
}

impl fmt::Display for ValidationFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for d in &self.diagnostics {
            writeln!(
                f,
                "{}: {} violation(s), first witness {:?}",
                d.check,
                d.total,
                d.witnesses.first()
            )?;
        }
        if !self.skipped.is_empty() {
            let names: Vec<_> = self.skipped.iter().map(|c| c.name()).collect();
            writeln!(f, "skipped: {}", names.join(", "))?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationFailure {}

#[derive(Default)]
struct Collector {
    total: usize,
    witnesses: Vec<Vec<usize>>,
}

impl Collector {
    fn push(&mut self, w: Vec<usize>) {
        self.total += 1;
        self.witnesses.push(w);
    }

    fn finish(mut self, check: Check, out: &mut Vec<Diagnostic>) {
        if self.total == 0 {
            return;
        }
        self.witnesses.sort();
        self.witnesses.truncate(MAX_WITNESSES);
        out.push(Diagnostic {
            check,
            total: self.total,
            witnesses: self.witnesses,
        });
    }
}

/// Table plus precomputed inverses: the carrier used to evaluate the
/// gyrator identity during validation.
struct InverseMagma<'t> {
    table: &'t CayleyTable,
    inverse: &'t [usize],
}

impl Gyrogroup for InverseMagma<'_> {
    type Element = usize;
    fn identity(&self) -> usize {
        0
    }
    fn oplus(&self, a: &usize, b: &usize) -> Result<usize, GyroError> {
        Ok(self.table.get(*a, *b))
    }
    fn ominus(&self, a: &usize) -> Result<usize, GyroError> {
        Ok(self.inverse[*a])
    }
    fn discrepancy(&self, a: &usize, b: &usize) -> f64 {
        if a == b {
            0.0
        } else {
            1.0
        }
    }
    fn tolerance(&self) -> f64 {
        0.0
    }
}

/// A Cayley table certified to satisfy the gyrogroup axioms, with cached
/// inverses and gyrations.
#[derive(Debug, Clone)]
pub struct FiniteGyrogroup {
    table: CayleyTable,
    inverse: Vec<usize>,
    /// `gyrations[a*n + b][c] = gyr[a,b]c`.
    gyrations: Vec<Vec<usize>>,
}

impl PartialEq for FiniteGyrogroup {
    fn eq(&self, other: &Self) -> bool {
        self.table.entries() == other.table.entries()
    }
}

impl Eq for FiniteGyrogroup {}

impl FiniteGyrogroup {
    /// Runs every check exhaustively and returns the certified carrier, or
    /// every violated check with witnesses.
    pub fn validate(table: CayleyTable) -> Result<Self, ValidationFailure> {
        let n = table.order();
        let mut diagnostics = Vec::new();

        let mut identity = Collector::default();
        for b in 0..n {
            if table.get(0, b) != b {
                identity.push(vec![b]);
            }
        }
        identity.finish(Check::IdentityRow, &mut diagnostics);

        let mut rows = Collector::default();
        for a in 0..n {
            let mut first_seen = vec![None; n];
            for b in 0..n {
                let v = table.get(a, b);
                match first_seen[v] {
                    None => first_seen[v] = Some(b),
                    Some(b1) => rows.push(vec![a, b1, b]),
                }
            }
        }
        rows.finish(Check::RowPermutation, &mut diagnostics);

        let mut inverses = Collector::default();
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            match table.left_inverses(a).as_slice() {
                [b] if table.get(a, *b) == 0 => inverse.push(*b),
                _ => inverses.push(vec![a]),
            }
        }
        let inverses_ok = inverses.total == 0;
        inverses.finish(Check::TwoSidedInverse, &mut diagnostics);

        if !inverses_ok {
            return Err(ValidationFailure {
                diagnostics,
                skipped: vec![
                    Check::GyrationBijective,
                    Check::GyrationAutomorphism,
                    Check::LeftGyroassociativity,
                    Check::LeftLoopProperty,
                ],
            });
        }

        let magma = InverseMagma {
            table: &table,
            inverse: &inverse,
        };
        let gyrations: Vec<Vec<usize>> = (0..n * n)
            .map(|ab| {
                let (a, b) = (ab / n, ab % n);
                (0..n)
                    .map(|c| carrier::gyration(&magma, &a, &b, &c).expect("finite ops are total"))
                    .collect()
            })
            .collect();

        let mut bijective = Collector::default();
        let mut automorphism = Collector::default();
        let mut assoc = Collector::default();
        let mut loop_prop = Collector::default();
        for a in 0..n {
            for b in 0..n {
                let gyr = &gyrations[a * n + b];
                let mut first_seen = vec![None; n];
                for (c, &v) in gyr.iter().enumerate() {
                    match first_seen[v] {
                        None => first_seen[v] = Some(c),
                        Some(c1) => bijective.push(vec![a, b, c1, c]),
                    }
                }
                for u in 0..n {
                    for v in 0..n {
                        if gyr[table.get(u, v)] != table.get(gyr[u], gyr[v]) {
                            automorphism.push(vec![a, b, u, v]);
                        }
                    }
                }
                let ab = table.get(a, b);
                let shifted = &gyrations[ab * n + b];
                for c in 0..n {
                    if table.get(a, table.get(b, c)) != table.get(ab, gyr[c]) {
                        assoc.push(vec![a, b, c]);
                    }
                    if shifted[c] != gyr[c] {
                        loop_prop.push(vec![a, b, c]);
                    }
                }
            }
        }
        bijective.finish(Check::GyrationBijective, &mut diagnostics);
        automorphism.finish(Check::GyrationAutomorphism, &mut diagnostics);
        assoc.finish(Check::LeftGyroassociativity, &mut diagnostics);
        loop_prop.finish(Check::LeftLoopProperty, &mut diagnostics);

        if diagnostics.is_empty() {
            Ok(Self {
                table,
                inverse,
                gyrations,
            })
        } else {
            Err(ValidationFailure {
                diagnostics,
                skipped: Vec::new(),
            })
        }
    }

    /// The cyclic group `Z/n` as a degenerate gyrogroup.
    pub fn cyclic(n: usize) -> Self {
        let table = CayleyTable::from_fn(n, |a, b| (a + b) % n).expect("n > 0");
        Self::validate(table).expect("cyclic groups are gyrogroups")
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.table.get(a, b)
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `a ⊖ b = a ⊕ (⊖b)`.
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn gyr(&self, a: usize, b: usize, c: usize) -> usize {
        self.gyrations[a * self.order() + b][c]
    }

    /// `gyr[a,b]` as a permutation of `0..n`.
    pub fn gyration_permutation(&self, a: usize, b: usize) -> &[usize] {
        &self.gyrations[a * self.order() + b]
    }

    /// `a ⊞ b`.
    pub fn coadd(&self, a: usize, b: usize) -> usize {
        self.add(a, self.gyr(a, self.neg(b), b))
    }

    /// `a ⊟ b`.
    pub fn cosub(&self, a: usize, b: usize) -> usize {
        self.coadd(a, self.neg(b))
    }

    /// `(a⊕b) ⊟ a`.
    pub fn conjugate(&self, a: usize, b: usize) -> usize {
        self.cosub(self.add(a, b), a)
    }

    /// The conjugate of a set by `a`, sorted and deduplicated.
    pub fn conjugate_set(&self, a: usize, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&b| self.conjugate(a, b)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// True when every gyration is the identity, i.e. the table is a group.
    pub fn is_degenerate(&self) -> bool {
        self.gyrations
            .iter()
            .all(|g| g.iter().enumerate().all(|(c, &v)| c == v))
    }

    /// First `(a, b, c)` with `gyr[a,b]c ≠ c`.
    pub fn nontrivial_gyration_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.order();
        self.gyrations.iter().enumerate().find_map(|(ab, g)| {
            g.iter()
                .enumerate()
                .find(|&(c, &v)| c != v)
                .map(|(c, _)| (ab / n, ab % n, c))
        })
    }

    /// Distinct gyrations, in order of first appearance over `(a,b)`.
    pub fn distinct_gyrations(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for g in &self.gyrations {
            if !out.contains(g) {
                out.push(g.clone());
            }
        }
        out
    }
}

impl Gyrogroup for FiniteGyrogroup {
    type Element = usize;

    fn identity(&self) -> usize {
        0
    }

    fn oplus(&self, a: &usize, b: &usize) -> Result<usize, GyroError> {
        let n = self.order();
        if *a >= n || *b >= n {
            return Err(GyroError::InvalidElement(format!("({a},{b}) outside 0..{n}")));
        }
        Ok(self.add(*a, *b))
    }

    fn ominus(&self, a: &usize) -> Result<usize, GyroError> {
        self.inverse
            .get(*a)
            .copied()
            .ok_or_else(|| GyroError::InvalidElement(format!("{a} outside 0..{}", self.order())))
    }

    fn discrepancy(&self, a: &usize, b: &usize) -> f64 {
        if a == b {
            0.0
        } else {
            1.0
        }
    }

    fn tolerance(&self) -> f64 {
        0.0
    }
}

/// Cycle decomposition of a permutation, omitting fixed points; each cycle
/// starts at its smallest element and cycles are sorted by that element.
pub fn cycle_decomposition(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut x = perm[start];
        while x != start {
            seen[x] = true;
            cycle.push(x);
            x = perm[x];
        }
        cycles.push(cycle);
    }
    cycles
}
