//! Pairs `(u, ρ)` of a planar ball vector and a rotation by a multiple of
//! `2π/m`, standing for the permutation `L_u ∘ ρ` of the ball.
//!
//! Only the finite cyclic group of rotations is modelled in place of all
//! identity-fixing permutations. The translation part `Ĝ = B×{id}` has
//! exactly `m` left cosets, indexed by the rotation component.

use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use crate::ball::{BallElement, BallGyrogroup, BallVariant};
use crate::carrier::{self, Gyrogroup};
use crate::coset::{self, CriterionReport};
use crate::error::{AnalysisError, GyroError};

/// Rotations of the plane by multiples of `2π/m`, written additively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RotationGroup {
    m: usize,
}

impl RotationGroup {
    pub fn new(m: usize) -> Result<Self, GyroError> {
        if m == 0 {
            return Err(GyroError::InvalidElement("rotation order must be at least 1".into()));
        }
        Ok(Self { m })
    }

    pub fn order(&self) -> usize {
        self.m
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        (a + b) % self.m
    }

    pub fn inverse(&self, a: usize) -> usize {
        (self.m - a % self.m) % self.m
    }

    pub fn angle(&self, r: usize) -> f64 {
        2.0 * PI * (r % self.m) as f64 / self.m as f64
    }

    /// Rotates a planar vector by `r` steps.
    pub fn rotate(&self, r: usize, v: &[f64]) -> Vec<f64> {
        let (s, c) = self.angle(r).sin_cos();
        vec![c * v[0] - s * v[1], s * v[0] + c * v[1]]
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairElement {
    pub u: BallElement,
    pub r: usize,
}

impl PairElement {
    pub fn new(u: BallElement, r: usize) -> Self {
        Self { u, r }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairGyrogroup {
    ball: BallGyrogroup,
    rotations: RotationGroup,
}

impl PairGyrogroup {
    pub fn new(m: usize, variant: BallVariant) -> Result<Self, GyroError> {
        Ok(Self {
            ball: BallGyrogroup::new(2, variant)?,
            rotations: RotationGroup::new(m)?,
        })
    }

    pub fn ball(&self) -> &BallGyrogroup {
        &self.ball
    }

    pub fn rotations(&self) -> &RotationGroup {
        &self.rotations
    }

    pub fn element(&self, u: Vec<f64>, r: usize) -> Result<PairElement, GyroError> {
        let e = PairElement::new(self.ball.element(u)?, r);
        self.check(&e)?;
        Ok(e)
    }

    fn check(&self, x: &PairElement) -> Result<(), GyroError> {
        self.ball.check(&x.u)?;
        if x.r >= self.rotations.order() {
            return Err(GyroError::InvalidElement(format!(
                "rotation index {} is outside 0..{}",
                x.r,
                self.rotations.order()
            )));
        }
        Ok(())
    }

    /// `gyr[(a,α),(b,β)](c,γ) = (gyr[a,b]c, γ)`, in closed form.
    pub fn pair_gyration(
        &self,
        x: &PairElement,
        y: &PairElement,
        z: &PairElement,
    ) -> Result<PairElement, GyroError> {
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        Ok(PairElement::new(
            carrier::gyration(&self.ball, &x.u, &y.u, &z.u)?,
            z.r,
        ))
    }

    /// The left coset of `Ĝ` containing `x`.
    pub fn hat_coset_index(&self, x: &PairElement) -> usize {
        x.r
    }

    /// Membership in `Ĝ = B×{id}`.
    pub fn in_hat(&self, x: &PairElement) -> bool {
        x.r == 0
    }

    /// Evaluates the permutation `L_u ∘ ρ` at a ball point.
    pub fn apply(&self, x: &PairElement, v: &BallElement) -> Result<BallElement, GyroError> {
        self.check(x)?;
        self.ball.check(v)?;
        let rotated = BallElement(self.rotations.rotate(x.r, &v.0));
        self.ball.oplus(&x.u, &rotated)
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, max_norm: f64) -> PairElement {
        PairElement::new(
            self.ball.random_element(rng, max_norm),
            rng.gen_range(0..self.rotations.order()),
        )
    }

    pub fn random_triples<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        count: usize,
        max_norm: f64,
    ) -> Vec<(PairElement, PairElement, PairElement)> {
        (0..count)
            .map(|_| {
                (
                    self.random_element(rng, max_norm),
                    self.random_element(rng, max_norm),
                    self.random_element(rng, max_norm),
                )
            })
            .collect()
    }

    /// Largest distance between the closed-form gyration and the one
    /// evaluated through the gyrator identity, over `triples`.
    pub fn gyration_cross_check(
        &self,
        triples: &[(PairElement, PairElement, PairElement)],
    ) -> Result<f64, GyroError> {
        let mut worst = 0.0f64;
        for (x, y, z) in triples {
            let closed = self.pair_gyration(x, y, z)?;
            let generic = carrier::gyration(self, x, y, z)?;
            worst = worst.max(self.discrepancy(&closed, &generic));
        }
        Ok(worst)
    }

    /// The coset space of `Ĝ`, after checking the coset criterion on the
    /// sampled `triples`.
    pub fn hat_coset_space(
        &self,
        triples: &[(PairElement, PairElement, PairElement)],
        seed: u64,
    ) -> Result<HatCosetSpace, AnalysisError> {
        let criterion = coset::sampled_criterion(self, |x| self.in_hat(x), triples, seed);
        if !criterion.passed() {
            return Err(AnalysisError::CriterionNotSatisfied(criterion.summary()));
        }
        Ok(HatCosetSpace {
            m: self.rotations.order(),
            criterion,
        })
    }
}

impl Gyrogroup for PairGyrogroup {
    type Element = PairElement;

    fn identity(&self) -> PairElement {
        PairElement::new(BallElement::zero(2), 0)
    }

    /// `(a,α)⊕(b,β) = (a⊕b, α∘β)`.
    fn oplus(&self, x: &PairElement, y: &PairElement) -> Result<PairElement, GyroError> {
        self.check(x)?;
        self.check(y)?;
        Ok(PairElement::new(
            self.ball.oplus(&x.u, &y.u)?,
            self.rotations.compose(x.r, y.r),
        ))
    }

    fn ominus(&self, x: &PairElement) -> Result<PairElement, GyroError> {
        self.check(x)?;
        Ok(PairElement::new(x.u.neg(), self.rotations.inverse(x.r)))
    }

    fn discrepancy(&self, x: &PairElement, y: &PairElement) -> f64 {
        if x.r != y.r {
            return f64::INFINITY;
        }
        self.ball.discrepancy(&x.u, &y.u)
    }

    fn tolerance(&self) -> f64 {
        self.ball.epsilon()
    }
}

/// The `m` left cosets of `Ĝ` under left gyroaddition.
#[derive(Debug, Clone, Serialize)]
pub struct HatCosetSpace {
    m: usize,
    pub criterion: CriterionReport,
}

impl HatCosetSpace {
    pub fn coset_count(&self) -> usize {
        self.m
    }

    /// `g·(x⊕Ĝ) = (g⊕x)⊕Ĝ`, i.e. `k ↦ α+k` for `g = (a,α)`.
    pub fn act(&self, g: &PairElement, k: usize) -> usize {
        (g.r + k) % self.m
    }

    pub fn fixes(&self, g: &PairElement, k: usize) -> bool {
        self.act(g, k) == k
    }

    /// Cosets reached from `k` by the given elements.
    pub fn orbit<'e>(&self, k: usize, elements: impl IntoIterator<Item = &'e PairElement>) -> Vec<usize> {
        let mut seen = vec![false; self.m];
        seen[k] = true;
        for g in elements {
            seen[self.act(g, k)] = true;
        }
        (0..self.m).filter(|&j| seen[j]).collect()
    }

    /// A non-identity element fixing coset `k`, witnessing that the action
    /// is not semiregular.
    pub fn stabilizing_nonidentity(&self, k: usize) -> (PairElement, usize) {
        let g = PairElement::new(BallElement(vec![0.5, 0.0]), 0);
        let image = self.act(&g, k);
        (g, image)
    }
}
