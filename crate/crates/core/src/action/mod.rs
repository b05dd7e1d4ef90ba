//! Gyrogroup actions on finite sets.
//!
//! A [`FiniteGSet`] can only be obtained through validation: every value
//! of the type satisfies `0·x = x` and `a·(b·x) = (a⊕b)·x` exhaustively.

mod analysis;
mod file;
mod random;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{ActionError, AnalysisError};
use crate::finite::{FiniteGyrogroup, Subgyrogroup, MAX_WITNESSES};

pub use analysis::{
    ActionClassification, BurnsideReport, ClassEquation, OrbitDecomposition,
    OrbitStabilizerRecord, QuotientAction,
};
pub use file::ActionTable;
pub use random::{random_action, RandomActionConfig};

/// A validated action of a finite gyrogroup on the points `0..k`.
#[derive(Clone)]
pub struct FiniteGSet {
    group: Arc<FiniteGyrogroup>,
    points: usize,
    /// `table[a*k + x] = a·x`.
    table: Vec<usize>,
}

impl fmt::Debug for FiniteGSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGSet")
            .field("group_order", &self.group.order())
            .field("points", &self.points)
            .field("table", &self.table)
            .finish()
    }
}

impl PartialEq for FiniteGSet {
    fn eq(&self, other: &Self) -> bool {
        self.same_carrier(other) && self.points == other.points && self.table == other.table
    }
}

impl FiniteGSet {
    /// Validates a row-major `|G|×k` action table.
    pub fn new(
        group: Arc<FiniteGyrogroup>,
        points: usize,
        table: Vec<usize>,
    ) -> Result<Self, ActionError> {
        match Self::diagnose(&group, points, &table).into_iter().next() {
            Some(err) => Err(err),
            None => Ok(Self {
                group,
                points,
                table,
            }),
        }
    }

    pub fn from_fn(
        group: Arc<FiniteGyrogroup>,
        points: usize,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, ActionError> {
        let table = (0..group.order())
            .flat_map(|a| (0..points).map(move |x| (a, x)))
            .map(|(a, x)| f(a, x))
            .collect();
        Self::new(group, points, table)
    }

    pub fn from_action_table(
        group: Arc<FiniteGyrogroup>,
        table: &ActionTable,
    ) -> Result<Self, ActionError> {
        if table.order != group.order() {
            return Err(ActionError::OrderMismatch {
                table: table.order,
                carrier: group.order(),
            });
        }
        Self::new(group, table.points, table.entries.clone())
    }

    /// Every violated axiom, up to a fixed number of witnesses. Shape and
    /// range problems stop the scan since the axioms cannot be evaluated.
    pub fn diagnose(group: &FiniteGyrogroup, points: usize, table: &[usize]) -> Vec<ActionError> {
        let n = group.order();
        if points == 0 {
            return vec![ActionError::EmptyPointSet];
        }
        if table.len() != n * points {
            return vec![ActionError::Shape {
                expected: n * points,
                actual: table.len(),
            }];
        }
        let mut out = Vec::new();
        for a in 0..n {
            for x in 0..points {
                let value = table[a * points + x];
                if value >= points {
                    out.push(ActionError::OutOfRange {
                        element: a,
                        point: x,
                        value,
                    });
                }
            }
        }
        if !out.is_empty() {
            out.truncate(MAX_WITNESSES);
            return out;
        }
        for (x, &image) in table[..points].iter().enumerate() {
            if image != x {
                out.push(ActionError::Identity { point: x, image });
            }
        }
        'outer: for a in 0..n {
            for b in 0..n {
                let ab = group.add(a, b);
                for x in 0..points {
                    let bx = table[b * points + x];
                    if table[a * points + bx] != table[ab * points + x] {
                        out.push(ActionError::Compatibility { a, b, x });
                        if out.len() >= MAX_WITNESSES {
                            break 'outer;
                        }
                    }
                }
            }
        }
        out
    }

    /// Builds `a·x = σ_a(x)` from permutations, after checking that they
    /// form a homomorphism into `Sym(X)`.
    pub fn from_homomorphism(
        group: Arc<FiniteGyrogroup>,
        points: usize,
        perms: &[Vec<usize>],
    ) -> Result<Self, ActionError> {
        let n = group.order();
        if points == 0 {
            return Err(ActionError::EmptyPointSet);
        }
        if perms.len() != n {
            return Err(ActionError::Shape {
                expected: n,
                actual: perms.len(),
            });
        }
        for (a, p) in perms.iter().enumerate() {
            let mut seen = vec![false; points];
            if p.len() != points || p.iter().any(|&y| y >= points || std::mem::replace(&mut seen[y], true)) {
                return Err(ActionError::NotPermutation { element: a });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = &perms[group.add(a, b)];
                if (0..points).any(|x| ab[x] != perms[a][perms[b][x]]) {
                    return Err(ActionError::NotHomomorphism { a, b });
                }
            }
        }
        let table = perms.iter().flatten().copied().collect();
        Self::new(group, points, table)
    }

    pub fn group(&self) -> &FiniteGyrogroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGyrogroup> {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    #[inline]
    pub fn act(&self, a: usize, x: usize) -> usize {
        self.table[a * self.points + x]
    }

    /// `σ_a`, the row of `a`.
    pub fn permutation(&self, a: usize) -> &[usize] {
        &self.table[a * self.points..(a + 1) * self.points]
    }

    pub fn same_carrier(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || self.group == other.group
    }

    pub fn to_action_table(&self) -> ActionTable {
        ActionTable {
            order: self.group.order(),
            points: self.points,
            entries: self.table.clone(),
        }
    }

    /// The permutation representation `a ↦ σ_a` and its kernel.
    pub fn representation(&self) -> Result<Representation, AnalysisError> {
        let n = self.group.order();
        let perms: Vec<Vec<usize>> = (0..n).map(|a| self.permutation(a).to_vec()).collect();
        for a in 0..n {
            for b in 0..n {
                let ab = &perms[self.group.add(a, b)];
                if (0..self.points).any(|x| ab[x] != perms[a][perms[b][x]]) {
                    return Err(AnalysisError::TheoremViolation {
                        property: "σ is a homomorphism",
                        witness: vec![a, b],
                    });
                }
            }
        }
        let kernel: Vec<usize> = (0..n)
            .filter(|&a| perms[a].iter().enumerate().all(|(x, &y)| x == y))
            .collect();
        let kernel = Subgyrogroup::new(&self.group, &kernel).map_err(|_| {
            AnalysisError::TheoremViolation {
                property: "kernel is a subgyrogroup",
                witness: kernel.clone(),
            }
        })?;
        let stabilizers: Vec<Vec<usize>> = (0..self.points).map(|x| self.stabilizer(x)).collect();
        let intersection: Vec<usize> = (0..n)
            .filter(|a| stabilizers.iter().all(|s| s.contains(a)))
            .collect();
        if intersection != kernel.members() {
            return Err(AnalysisError::TheoremViolation {
                property: "kernel equals the intersection of stabilizers",
                witness: intersection,
            });
        }
        Ok(Representation { perms, kernel })
    }

    /// `stab(x)`, sorted.
    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        self.group.elements().filter(|&a| self.act(a, x) == x).collect()
    }

    /// `orb(x)`, sorted.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.points];
        for a in self.group.elements() {
            seen[self.act(a, x)] = true;
        }
        (0..self.points).filter(|&y| seen[y]).collect()
    }

    /// The action restricted to an invariant subset `ys`. Point `i` of the
    /// result is `ys[i]` after sorting.
    pub fn restrict_to_invariant(&self, ys: &[usize]) -> Result<Restriction, ActionError> {
        let mut ys = ys.to_vec();
        ys.sort_unstable();
        ys.dedup();
        if ys.is_empty() {
            return Err(ActionError::EmptyPointSet);
        }
        if let Some(&y) = ys.iter().find(|&&y| y >= self.points) {
            return Err(ActionError::PointOutOfRange(y));
        }
        let mut index = vec![usize::MAX; self.points];
        for (i, &y) in ys.iter().enumerate() {
            index[y] = i;
        }
        let mut table = Vec::with_capacity(self.group.order() * ys.len());
        for a in self.group.elements() {
            for &y in &ys {
                let image = index[self.act(a, y)];
                if image == usize::MAX {
                    return Err(ActionError::NotInvariant { a, y });
                }
                table.push(image);
            }
        }
        let gset = FiniteGSet::new(self.group.clone(), ys.len(), table)?;
        Ok(Restriction {
            gset,
            embedding: ys,
        })
    }
}

/// `a ↦ σ_a` together with `ker = {a : σ_a = id}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Representation {
    pub perms: Vec<Vec<usize>>,
    pub kernel: Subgyrogroup,
}

/// A sub-G-set together with the original labels of its points.
#[derive(Debug, Clone, PartialEq)]
pub struct Restriction {
    pub gset: FiniteGSet,
    /// `embedding[i]` is the original point behind point `i`.
    pub embedding: Vec<usize>,
}
