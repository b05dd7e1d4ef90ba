//! The abstract gyrogroup contract and the algebra derived from it.
//!
//! Every carrier supplies `⊕`, `⊖`, the identity and an equality predicate.
//! Gyrations are never supplied by a carrier: they are always evaluated
//! through the gyrator identity `gyr[a,b]c = ⊖(a⊕b) ⊕ (a⊕(b⊕c))`.

use std::fmt;

use crate::error::GyroError;

/// A set with a binary operation that is (claimed to be) a gyrogroup.
///
/// Implementations must be immutable after construction; all methods take
/// `&self` and carriers are expected to be `Sync`.
pub trait Gyrogroup {
    type Element: Clone + fmt::Debug;

    fn identity(&self) -> Self::Element;

    fn oplus(&self, a: &Self::Element, b: &Self::Element) -> Result<Self::Element, GyroError>;

    fn ominus(&self, a: &Self::Element) -> Result<Self::Element, GyroError>;

    /// Distance between two elements. Finite carriers return `0.0` or `1.0`.
    fn discrepancy(&self, a: &Self::Element, b: &Self::Element) -> f64;

    /// Largest discrepancy still counted as equality.
    fn tolerance(&self) -> f64;

    fn equals(&self, a: &Self::Element, b: &Self::Element) -> bool {
        self.discrepancy(a, b) <= self.tolerance()
    }
}

/// `gyr[a,b]c`, evaluated strictly by the gyrator identity.
pub fn gyration<G: Gyrogroup + ?Sized>(
    g: &G,
    a: &G::Element,
    b: &G::Element,
    c: &G::Element,
) -> Result<G::Element, GyroError> {
    let ab = g.oplus(a, b)?;
    let bc = g.oplus(b, c)?;
    let a_bc = g.oplus(a, &bc)?;
    g.oplus(&g.ominus(&ab)?, &a_bc)
}

/// `a ⊞ b = a ⊕ gyr[a,⊖b]b`.
pub fn coaddition<G: Gyrogroup + ?Sized>(
    g: &G,
    a: &G::Element,
    b: &G::Element,
) -> Result<G::Element, GyroError> {
    let neg_b = g.ominus(b)?;
    g.oplus(a, &gyration(g, a, &neg_b, b)?)
}

/// `a ⊟ b = a ⊞ (⊖b)`.
pub fn cominus<G: Gyrogroup + ?Sized>(
    g: &G,
    a: &G::Element,
    b: &G::Element,
) -> Result<G::Element, GyroError> {
    coaddition(g, a, &g.ominus(b)?)
}

/// The conjugate of `b` by `a`: `(a⊕b) ⊟ a`.
pub fn conjugate<G: Gyrogroup + ?Sized>(
    g: &G,
    a: &G::Element,
    b: &G::Element,
) -> Result<G::Element, GyroError> {
    cominus(g, &g.oplus(a, b)?, a)
}

/// The conjugate of a subset, element by element, in input order.
pub fn conjugate_set<G: Gyrogroup + ?Sized>(
    g: &G,
    a: &G::Element,
    set: &[G::Element],
) -> Result<Vec<G::Element>, GyroError> {
    set.iter().map(|b| conjugate(g, a, b)).collect()
}

/// The gyroautomorphism `gyr[a,b]` as a callable map.
pub struct GyrationMap<'g, G: Gyrogroup + ?Sized> {
    carrier: &'g G,
    a: G::Element,
    b: G::Element,
}

impl<'g, G: Gyrogroup + ?Sized> GyrationMap<'g, G> {
    pub fn new(carrier: &'g G, a: G::Element, b: G::Element) -> Self {
        Self { carrier, a, b }
    }

    pub fn apply(&self, c: &G::Element) -> Result<G::Element, GyroError> {
        gyration(self.carrier, &self.a, &self.b, c)
    }

    /// `‖gyr(u⊕v) − gyr(u)⊕gyr(v)‖`.
    pub fn homomorphism_residual(&self, u: &G::Element, v: &G::Element) -> Result<f64, GyroError> {
        let g = self.carrier;
        let lhs = self.apply(&g.oplus(u, v)?)?;
        let rhs = g.oplus(&self.apply(u)?, &self.apply(v)?)?;
        Ok(g.discrepancy(&lhs, &rhs))
    }
}

/// Outcome of one law evaluated over a sample.
#[derive(Debug, Clone)]
pub struct LawOutcome<E> {
    pub law: &'static str,
    pub checked: usize,
    pub max_residual: f64,
    pub passed: bool,
    /// First failing tuple, if any.
    pub witness: Option<Vec<E>>,
}

impl<E: Clone> LawOutcome<E> {
    fn new(law: &'static str) -> Self {
        Self {
            law,
            checked: 0,
            max_residual: 0.0,
            passed: true,
            witness: None,
        }
    }

    fn record(&mut self, residual: f64, tolerance: f64, tuple: &[E]) {
        self.checked += 1;
        // NaN never compares, so treat it as failure explicitly.
        let residual = if residual.is_nan() { f64::INFINITY } else { residual };
        if residual > self.max_residual {
            self.max_residual = residual;
        }
        if residual > tolerance && self.passed {
            self.passed = false;
            self.witness = Some(tuple.to_vec());
        }
    }

    fn record_eval(&mut self, eval: Result<f64, GyroError>, tolerance: f64, tuple: &[E]) {
        self.record(eval.unwrap_or(f64::INFINITY), tolerance, tuple);
    }
}

/// Which tuples a sampled check sweeps.
#[derive(Debug, Clone, Copy)]
pub enum Samples<'s, E> {
    /// All ordered pairs and triples drawn from the slice.
    Exhaustive(&'s [E]),
    /// Only the listed pairs.
    Pairs(&'s [(E, E)]),
}

pub const GENERAL_LEFT_CANCELLATION: &str = "general left cancellation";
pub const LEFT_CANCELLATION: &str = "left cancellation";
pub const RIGHT_CANCELLATION_I: &str = "right cancellation I";
pub const RIGHT_CANCELLATION_II: &str = "right cancellation II";

/// Per-law outcomes of [`check_cancellation_laws`], in the order
/// general left, left, right I, right II.
#[derive(Debug, Clone)]
pub struct CancellationReport<E> {
    pub laws: Vec<LawOutcome<E>>,
}

impl<E> CancellationReport<E> {
    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }
}

/// Checks the four cancellation laws:
///
/// 1. `a⊕b = a⊕c ⇒ b = c`
/// 2. `⊖a⊕(a⊕b) = b`
/// 3. `(b⊖a)⊞a = b`
/// 4. `(b⊟a)⊕a = b`
///
/// With [`Samples::Exhaustive`] law 1 runs over every triple of the slice.
/// With [`Samples::Pairs`] the only candidate `c` for a pair `(a,b)` is the
/// left-cancellation solution `⊖a⊕(a⊕b)`; the residual combines the premise
/// and the conclusion.
pub fn check_cancellation_laws<G: Gyrogroup + ?Sized>(
    g: &G,
    samples: Samples<'_, G::Element>,
) -> CancellationReport<G::Element> {
    let tol = g.tolerance();
    let mut general = LawOutcome::new(GENERAL_LEFT_CANCELLATION);
    let mut left = LawOutcome::new(LEFT_CANCELLATION);
    let mut right1 = LawOutcome::new(RIGHT_CANCELLATION_I);
    let mut right2 = LawOutcome::new(RIGHT_CANCELLATION_II);

    let mut pair_laws = |a: &G::Element, b: &G::Element| {
        let tuple = [a.clone(), b.clone()];
        left.record_eval(
            g.oplus(a, b)
                .and_then(|ab| g.oplus(&g.ominus(a)?, &ab))
                .map(|r| g.discrepancy(&r, b)),
            tol,
            &tuple,
        );
        // (b ⊖ a) ⊞ a
        right1.record_eval(
            g.ominus(a)
                .and_then(|na| g.oplus(b, &na))
                .and_then(|bma| coaddition(g, &bma, a))
                .map(|r| g.discrepancy(&r, b)),
            tol,
            &tuple,
        );
        // (b ⊟ a) ⊕ a
        right2.record_eval(
            cominus(g, b, a)
                .and_then(|bca| g.oplus(&bca, a))
                .map(|r| g.discrepancy(&r, b)),
            tol,
            &tuple,
        );
    };

    match samples {
        Samples::Exhaustive(elems) => {
            for a in elems {
                for b in elems {
                    pair_laws(a, b);
                }
            }
            for a in elems {
                let row: Vec<_> = elems.iter().map(|x| g.oplus(a, x)).collect();
                for (i, b) in elems.iter().enumerate() {
                    for (j, c) in elems.iter().enumerate() {
                        let tuple = [a.clone(), b.clone(), c.clone()];
                        let eval = match (&row[i], &row[j]) {
                            (Ok(ab), Ok(ac)) => Ok(if g.equals(ab, ac) {
                                g.discrepancy(b, c)
                            } else {
                                0.0
                            }),
                            (Err(e), _) | (_, Err(e)) => Err(e.clone()),
                        };
                        general.record_eval(eval, tol, &tuple);
                    }
                }
            }
        }
        Samples::Pairs(pairs) => {
            for (a, b) in pairs {
                pair_laws(a, b);
                let eval = (|| {
                    let ab = g.oplus(a, b)?;
                    let c = g.oplus(&g.ominus(a)?, &ab)?;
                    let ac = g.oplus(a, &c)?;
                    Ok(g.discrepancy(&ab, &ac).max(g.discrepancy(b, &c)))
                })();
                general.record_eval(eval, tol, &[a.clone(), b.clone()]);
            }
        }
    }

    CancellationReport {
        laws: vec![general, left, right1, right2],
    }
}

pub const IDENTITY_LAW: &str = "two-sided identity";
pub const INVERSE_LAW: &str = "two-sided inverse";
pub const GYROASSOCIATIVITY: &str = "left gyroassociative law";
pub const LOOP_PROPERTY: &str = "left loop property";
pub const GYRATION_AUTOMORPHISM: &str = "gyration respects ⊕";

/// Sampled verification of the gyrogroup axioms over triples `(a,b,c)`.
#[derive(Debug, Clone)]
pub struct AxiomReport<E> {
    pub laws: Vec<LawOutcome<E>>,
}

impl<E> AxiomReport<E> {
    pub fn all_passed(&self) -> bool {
        self.laws.iter().all(|l| l.passed)
    }

    pub fn law(&self, name: &str) -> Option<&LawOutcome<E>> {
        self.laws.iter().find(|l| l.law == name)
    }
}

/// Checks, for every triple `(a,b,c)`:
/// `0⊕a = a = a⊕0`, `⊖a⊕a = 0 = a⊕⊖a`,
/// `a⊕(b⊕c) = (a⊕b)⊕gyr[a,b]c`, `gyr[a⊕b,b]c = gyr[a,b]c`, and
/// `gyr[a,b](c⊕a) = gyr[a,b]c ⊕ gyr[a,b]a`.
///
/// `automorphism_tolerance` is used for the last law only, which compounds
/// more rounding than the others on analytic carriers.
pub fn check_axioms<G: Gyrogroup + ?Sized>(
    g: &G,
    triples: &[(G::Element, G::Element, G::Element)],
    automorphism_tolerance: f64,
) -> AxiomReport<G::Element> {
    let tol = g.tolerance();
    let zero = g.identity();
    let mut identity = LawOutcome::new(IDENTITY_LAW);
    let mut inverse = LawOutcome::new(INVERSE_LAW);
    let mut assoc = LawOutcome::new(GYROASSOCIATIVITY);
    let mut loop_prop = LawOutcome::new(LOOP_PROPERTY);
    let mut auto = LawOutcome::new(GYRATION_AUTOMORPHISM);

    for (a, b, c) in triples {
        let tuple = [a.clone(), b.clone(), c.clone()];
        identity.record_eval(
            (|| {
                let l = g.oplus(&zero, a)?;
                let r = g.oplus(a, &zero)?;
                Ok(g.discrepancy(&l, a).max(g.discrepancy(&r, a)))
            })(),
            tol,
            &tuple,
        );
        inverse.record_eval(
            (|| {
                let na = g.ominus(a)?;
                let l = g.oplus(&na, a)?;
                let r = g.oplus(a, &na)?;
                Ok(g.discrepancy(&l, &zero).max(g.discrepancy(&r, &zero)))
            })(),
            tol,
            &tuple,
        );
        assoc.record_eval(
            (|| {
                let lhs = g.oplus(a, &g.oplus(b, c)?)?;
                let rhs = g.oplus(&g.oplus(a, b)?, &gyration(g, a, b, c)?)?;
                Ok(g.discrepancy(&lhs, &rhs))
            })(),
            tol,
            &tuple,
        );
        loop_prop.record_eval(
            (|| {
                let ab = g.oplus(a, b)?;
                let lhs = gyration(g, &ab, b, c)?;
                let rhs = gyration(g, a, b, c)?;
                Ok(g.discrepancy(&lhs, &rhs))
            })(),
            tol,
            &tuple,
        );
        auto.record_eval(
            GyrationMap::new(g, a.clone(), b.clone()).homomorphism_residual(c, a),
            automorphism_tolerance,
            &tuple,
        );
    }

    AxiomReport {
        laws: vec![identity, inverse, assoc, loop_prop, auto],
    }
}
