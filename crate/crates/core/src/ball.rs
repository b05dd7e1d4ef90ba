//! Möbius and Einstein gyrogroups on the open unit ball of `R^n`.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::Serialize;

use crate::carrier::{self, Gyrogroup};
use crate::error::GyroError;
use crate::sampling;

pub const DEFAULT_EPSILON: f64 = 1e-9;
pub const DEFAULT_DELTA: f64 = 1e-6;
/// Probe scale used to extract gyration matrices column by column.
pub const PROBE_SCALE: f64 = 1e-3;
const MIN_DENOMINATOR: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BallVariant {
    Mobius,
    Einstein,
}

impl FromStr for BallVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mobius" => Ok(Self::Mobius),
            "einstein" => Ok(Self::Einstein),
            other => Err(format!("unknown variant `{other}` (expected mobius|einstein)")),
        }
    }
}

impl fmt::Display for BallVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Mobius => "mobius",
            Self::Einstein => "einstein",
        })
    }
}

/// A point of the ball. Validity is checked by the owning carrier.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallElement(pub Vec<f64>);

impl BallElement {
    pub fn zero(dim: usize) -> Self {
        Self(vec![0.0; dim])
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        norm_sq(&self.0).sqrt()
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|x| -x).collect())
    }

    pub fn scale(&self, s: f64) -> Self {
        Self(self.0.iter().map(|x| s * x).collect())
    }

    pub fn distance(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt()
    }
}

impl fmt::Display for BallElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for BallElement {
    type Err = GyroError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split_whitespace()
            .map(|tok| {
                tok.parse::<f64>()
                    .map_err(|_| GyroError::InvalidElement(format!("`{tok}` is not a number")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BallElement)
    }
}

fn dot(u: &[f64], v: &[f64]) -> f64 {
    u.iter().zip(v).map(|(x, y)| x * y).sum()
}

fn norm_sq(u: &[f64]) -> f64 {
    dot(u, u)
}

/// The ball `‖v‖ < 1` under Möbius or Einstein addition.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallGyrogroup {
    dim: usize,
    variant: BallVariant,
    epsilon: f64,
    delta: f64,
}

impl BallGyrogroup {
    pub fn new(dim: usize, variant: BallVariant) -> Result<Self, GyroError> {
        Self::with_tolerances(dim, variant, DEFAULT_EPSILON, DEFAULT_DELTA)
    }

    /// Builds the carrier and verifies `(−u)⊕u = 0` on a fixed probe set.
    pub fn with_tolerances(
        dim: usize,
        variant: BallVariant,
        epsilon: f64,
        delta: f64,
    ) -> Result<Self, GyroError> {
        if dim == 0 {
            return Err(GyroError::InvalidElement("dimension must be at least 1".into()));
        }
        if epsilon.is_nan() || epsilon <= 0.0 || !(0.0..1.0).contains(&delta) {
            return Err(GyroError::InvalidElement(format!(
                "bad tolerances epsilon={epsilon}, delta={delta}"
            )));
        }
        let ball = Self {
            dim,
            variant,
            epsilon,
            delta,
        };
        let mut probes: Vec<BallElement> = (0..dim)
            .map(|j| {
                let mut v = vec![0.0; dim];
                v[j] = 0.5;
                BallElement(v)
            })
            .collect();
        probes.push(BallElement(vec![0.9 / (dim as f64).sqrt(); dim]));
        for u in &probes {
            let r = ball.oplus(&u.neg(), u)?;
            if r.norm() > epsilon {
                return Err(GyroError::InvalidElement(format!(
                    "negation is not the inverse at {u}: (−u)⊕u = {r}"
                )));
            }
        }
        Ok(ball)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn variant(&self) -> BallVariant {
        self.variant
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Wraps coordinates after checking dimension and the boundary margin.
    pub fn element(&self, coords: Vec<f64>) -> Result<BallElement, GyroError> {
        let e = BallElement(coords);
        self.check(&e)?;
        Ok(e)
    }

    pub fn check(&self, u: &BallElement) -> Result<(), GyroError> {
        if u.dim() != self.dim {
            return Err(GyroError::DimensionMismatch {
                expected: self.dim,
                actual: u.dim(),
            });
        }
        if u.0.iter().any(|x| !x.is_finite()) {
            return Err(GyroError::InvalidElement(format!("non-finite coordinate in {u}")));
        }
        let norm = u.norm();
        if norm >= 1.0 - self.delta {
            return Err(GyroError::InvalidElement(format!(
                "norm {norm} violates the boundary margin {}",
                self.delta
            )));
        }
        Ok(())
    }

    /// `γ_u = 1/√(1−‖u‖²)`.
    pub fn lorentz_gamma(&self, u: &BallElement) -> Result<f64, GyroError> {
        if u.norm() >= 1.0 - self.delta {
            return Err(GyroError::NumericalOverflow(format!(
                "Lorentz factor diverges at norm {}",
                u.norm()
            )));
        }
        self.check(u)?;
        Ok(1.0 / (1.0 - norm_sq(&u.0)).sqrt())
    }

    /// `[(1 + 2⟨u,v⟩ + ‖v‖²)u + (1 − ‖u‖²)v] / (1 + 2⟨u,v⟩ + ‖u‖²‖v‖²)`.
    pub fn mobius_add(&self, u: &BallElement, v: &BallElement) -> Result<BallElement, GyroError> {
        self.check(u)?;
        self.check(v)?;
        let uv = dot(&u.0, &v.0);
        let uu = norm_sq(&u.0);
        let vv = norm_sq(&v.0);
        let denom = 1.0 + 2.0 * uv + uu * vv;
        if denom.abs() < MIN_DENOMINATOR {
            return Err(GyroError::NumericalOverflow(format!(
                "Möbius denominator {denom:e}"
            )));
        }
        let cu = 1.0 + 2.0 * uv + vv;
        let cv = 1.0 - uu;
        let w: Vec<f64> = u
            .0
            .iter()
            .zip(&v.0)
            .map(|(x, y)| (cu * x + cv * y) / denom)
            .collect();
        finish(BallElement(w))
    }

    /// `(1/(1+⟨u,v⟩)) [u + (1/γ_u)v + (γ_u/(1+γ_u))⟨u,v⟩u]`.
    pub fn einstein_add(
        &self,
        u: &BallElement,
        v: &BallElement,
    ) -> Result<BallElement, GyroError> {
        self.check(u)?;
        self.check(v)?;
        let gamma = self.lorentz_gamma(u)?;
        let uv = dot(&u.0, &v.0);
        let denom = 1.0 + uv;
        if denom.abs() < MIN_DENOMINATOR {
            return Err(GyroError::NumericalOverflow(format!(
                "Einstein denominator {denom:e}"
            )));
        }
        let cu = 1.0 + gamma / (1.0 + gamma) * uv;
        let cv = 1.0 / gamma;
        let w: Vec<f64> = u
            .0
            .iter()
            .zip(&v.0)
            .map(|(x, y)| (cu * x + cv * y) / denom)
            .collect();
        finish(BallElement(w))
    }

    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R, max_norm: f64) -> BallElement {
        BallElement(sampling::random_ball_vector(rng, self.dim, max_norm))
    }

    /// Extracts `gyr[a,b]` as a matrix, column `j` being
    /// `gyr[a,b](s·e_j)/s`, and measures how far the map is from linear on
    /// `probes` and from orthogonal.
    pub fn gyration_matrix(
        &self,
        a: &BallElement,
        b: &BallElement,
        probes: &[BallElement],
    ) -> Result<GyrationMatrix, GyroError> {
        self.check(a)?;
        self.check(b)?;
        let n = self.dim;
        let mut entries = vec![0.0; n * n];
        for j in 0..n {
            let mut e = vec![0.0; n];
            e[j] = PROBE_SCALE;
            let col = carrier::gyration(self, a, b, &BallElement(e))?;
            for i in 0..n {
                entries[i * n + j] = col.0[i] / PROBE_SCALE;
            }
        }
        let mut m = GyrationMatrix {
            dim: n,
            entries,
            linearity_residual: 0.0,
            orthogonality_residual: 0.0,
        };
        for c in probes {
            let exact = carrier::gyration(self, a, b, c)?;
            let linear = m.apply(c);
            m.linearity_residual = m.linearity_residual.max(exact.distance(&linear));
        }
        m.orthogonality_residual = m.orthogonality_defect();
        Ok(m)
    }
}

fn finish(w: BallElement) -> Result<BallElement, GyroError> {
    let norm = w.norm();
    if !norm.is_finite() || norm >= 1.0 {
        return Err(GyroError::NumericalOverflow(format!(
            "sum left the ball (norm {norm})"
        )));
    }
    Ok(w)
}

impl Gyrogroup for BallGyrogroup {
    type Element = BallElement;

    fn identity(&self) -> BallElement {
        BallElement::zero(self.dim)
    }

    fn oplus(&self, a: &BallElement, b: &BallElement) -> Result<BallElement, GyroError> {
        match self.variant {
            BallVariant::Mobius => self.mobius_add(a, b),
            BallVariant::Einstein => self.einstein_add(a, b),
        }
    }

    fn ominus(&self, a: &BallElement) -> Result<BallElement, GyroError> {
        self.check(a)?;
        Ok(a.neg())
    }

    fn discrepancy(&self, a: &BallElement, b: &BallElement) -> f64 {
        if a.dim() != b.dim() {
            return f64::INFINITY;
        }
        a.distance(b)
    }

    fn tolerance(&self) -> f64 {
        self.epsilon
    }
}

/// A gyration extracted as a square matrix, with empirical residuals.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GyrationMatrix {
    pub dim: usize,
    /// Row-major.
    pub entries: Vec<f64>,
    /// Largest `‖gyr[a,b]c − M·c‖` over the probes.
    pub linearity_residual: f64,
    /// Frobenius norm of `MᵀM − I`.
    pub orthogonality_residual: f64,
}

impl GyrationMatrix {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.dim + j]
    }

    pub fn apply(&self, c: &BallElement) -> BallElement {
        BallElement(
            (0..self.dim)
                .map(|i| (0..self.dim).map(|j| self.get(i, j) * c.0[j]).sum())
                .collect(),
        )
    }

    /// Frobenius norm of `MᵀM − I`.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.dim;
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                let mtm: f64 = (0..n).map(|k| self.get(k, i) * self.get(k, j)).sum();
                let d = mtm - if i == j { 1.0 } else { 0.0 };
                sum += d * d;
            }
        }
        sum.sqrt()
    }

    /// Frobenius distance to the identity matrix.
    pub fn distance_from_identity(&self) -> f64 {
        let n = self.dim;
        let mut sum = 0.0;
        for i in 0..n {
            for j in 0..n {
                let d = self.get(i, j) - if i == j { 1.0 } else { 0.0 };
                sum += d * d;
            }
        }
        sum.sqrt()
    }

    /// Rotation angle of a 2×2 matrix, in `(−π, π]`.
    pub fn rotation_angle(&self) -> Option<f64> {
        (self.dim == 2).then(|| self.get(1, 0).atan2(self.get(0, 0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> BallElement {
        BallElement(c.to_vec())
    }

    #[test]
    fn mobius_identity_and_inverse() {
        let ball = BallGyrogroup::new(2, BallVariant::Mobius).unwrap();
        let u = v(&[0.3, -0.4]);
        assert_eq!(ball.mobius_add(&u, &v(&[0.0, 0.0])).unwrap(), u);
        let r = ball.mobius_add(&u.neg(), &u).unwrap();
        assert!(r.norm() < 1e-15);
    }

    #[test]
    fn einstein_identity_and_inverse() {
        let ball = BallGyrogroup::new(3, BallVariant::Einstein).unwrap();
        let u = v(&[0.3, -0.4, 0.1]);
        let w = ball.einstein_add(&v(&[0.0; 3]), &u).unwrap();
        assert!(w.distance(&u) < 1e-15);
        let r = ball.einstein_add(&u, &u.neg()).unwrap();
        assert!(r.norm() < 1e-15);
    }

    #[test]
    fn margin_and_dimension_errors() {
        let ball = BallGyrogroup::new(2, BallVariant::Mobius).unwrap();
        assert!(matches!(
            ball.element(vec![1.0, 0.0]),
            Err(GyroError::InvalidElement(_))
        ));
        assert!(matches!(
            ball.element(vec![0.1]),
            Err(GyroError::DimensionMismatch { .. })
        ));
        assert!(ball.element(vec![f64::NAN, 0.0]).is_err());
        assert!(matches!(
            ball.lorentz_gamma(&v(&[0.9999999, 0.0])),
            Err(GyroError::NumericalOverflow(_))
        ));
    }

    #[test]
    fn bad_construction() {
        assert!(BallGyrogroup::new(0, BallVariant::Mobius).is_err());
        assert!(BallGyrogroup::with_tolerances(2, BallVariant::Mobius, 0.0, 1e-6).is_err());
    }

    #[test]
    fn vector_text_round_trip() {
        let e: BallElement = "0.25 -0.5".parse().unwrap();
        assert_eq!(e, v(&[0.25, -0.5]));
        assert_eq!(e.to_string(), "0.25 -0.5");
        assert!("0.1 abc".parse::<BallElement>().is_err());
    }

    #[test]
    fn gyration_matrix_for_zero_argument_is_identity() {
        for variant in [BallVariant::Mobius, BallVariant::Einstein] {
            let ball = BallGyrogroup::new(3, variant).unwrap();
            let a = v(&[0.2, 0.1, -0.3]);
            let m = ball.gyration_matrix(&a, &BallElement::zero(3), &[]).unwrap();
            assert!(m.distance_from_identity() < 1e-12);
            let m = ball.gyration_matrix(&BallElement::zero(3), &a, &[]).unwrap();
            assert!(m.distance_from_identity() < 1e-12);
        }
    }
}
