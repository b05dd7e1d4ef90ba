//! Acceptance suite. Prints one line per criterion and exits non-zero if
//! any criterion fails. Run with `cargo test -p gyract --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use gyract::action::{random_action, RandomActionConfig};
use gyract::carrier::{check_axioms, check_cancellation_laws, Gyrogroup, Samples, LOOP_PROPERTY};
use gyract::coset::{build_coset_action, coset_criterion, self_action};
use gyract::equivalence::{are_equivalent_transitive, fundamental_isomorphism};
use gyract::finite::{enumerate_subgyrogroups, Check, DEFAULT_ENUMERATION_CAP};
use gyract::sampling::{seeded_rng, DEFAULT_MAX_NORM, TRIPLE_MAX_NORM};
use gyract::{BallElement, BallGyrogroup, BallVariant, FiniteGSet, FiniteGyrogroup, PairGyrogroup};
use rand::Rng;

const SEED: u64 = 7919;
const BALL_TOL: f64 = 1e-9;
const FORMULA_TOL: f64 = 1e-12;
const ORTHOGONALITY_TOL: f64 = 1e-8;
const LOOP_TOL: f64 = 1e-9;

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn from(r: Result<String, String>) -> Outcome {
    match r {
        Ok(s) => Outcome::Pass(s),
        Err(s) => Outcome::Fail(s),
    }
}

/// Every finite G-set used by criteria 5 and 6: the fixture files, left
/// translation on each group, every coset action, and seeded random actions.
fn fixture_gsets() -> Vec<(String, FiniteGSet)> {
    let mut out = Vec::new();
    let s3 = load_group("s3.gyro");
    out.push(("S3 conjugation".into(), load_gset(&s3, "s3_conj.action")));
    let z6 = load_group("z6.gyro");
    for f in ["z6_mod3.action", "z6_mod3_twisted.action", "z6_union.action", "z6_union_swapped.action"] {
        out.push((f.into(), load_gset(&z6, f)));
    }
    for (name, g) in finite_carriers() {
        if let Ok(x) = self_action(g.clone()) {
            out.push((format!("{name} on itself"), x));
        }
        for h in enumerate_subgyrogroups(&g, DEFAULT_ENUMERATION_CAP).unwrap() {
            if let Ok(c) = build_coset_action(g.clone(), &h) {
                out.push((format!("{name}/{:?}", h.members()), c.gset));
            }
        }
    }
    out
}

fn random_gsets(count: usize) -> Vec<(String, FiniteGSet)> {
    let carriers = finite_carriers();
    (0..count)
        .map(|i| {
            let (name, g) = &carriers[i % carriers.len()];
            let seed = SEED + i as u64;
            let x = random_action(g, &mut seeded_rng(seed), RandomActionConfig::default()).unwrap();
            (format!("{name} random seed {seed}"), x)
        })
        .collect()
}

fn axiom_suite() -> Outcome {
    from((|| {
        let fixtures = group_fixtures();
        ensure(fixtures.len() >= 10, || "too few fixtures".into())?;
        for (name, t) in &fixtures {
            FiniteGyrogroup::validate(t.clone()).map_err(|e| format!("{name}: {e}"))?;
        }
        let mut rng = seeded_rng(SEED);
        let mut rejected = 0;
        while rejected < 20 {
            let (name, t) = &fixtures[rng.gen_range(0..fixtures.len())];
            let n = t.order();
            if n < 2 {
                continue;
            }
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let old = t.get(a, b);
            let new = (old + rng.gen_range(1..n)) % n;
            let other = t.row(a).iter().position(|&v| v == new).unwrap();
            let err = match FiniteGyrogroup::validate(t.with_entry(a, b, new).unwrap()) {
                Ok(_) => return Err(format!("{name}: perturbation ({a},{b})→{new} accepted")),
                Err(e) => e,
            };
            let expected = vec![a, b.min(other), b.max(other)];
            let ok = err
                .diagnostic(Check::RowPermutation)
                .is_some_and(|d| d.witnesses.contains(&expected));
            ensure(ok, || format!("{name}: no witness {expected:?} for ({a},{b})→{new}"))?;
            rejected += 1;
        }
        Ok(format!("{} fixtures accepted, {rejected} perturbations rejected with witnesses", fixtures.len()))
    })())
}

fn cancellation_suite() -> Outcome {
    from((|| {
        for (name, g) in finite_carriers() {
            let elems: Vec<usize> = g.elements().collect();
            let r = check_cancellation_laws(&*g, Samples::Exhaustive(&elems));
            ensure(r.all_passed(), || format!("{name}: {:?}", r.laws))?;
        }
        let mut worst = 0.0f64;
        for variant in [BallVariant::Mobius, BallVariant::Einstein] {
            let ball = BallGyrogroup::new(3, variant).unwrap();
            let mut rng = seeded_rng(SEED);
            let pairs: Vec<_> = (0..1000)
                .map(|_| {
                    (
                        ball.random_element(&mut rng, DEFAULT_MAX_NORM),
                        ball.random_element(&mut rng, DEFAULT_MAX_NORM),
                    )
                })
                .collect();
            let r = check_cancellation_laws(&ball, Samples::Pairs(&pairs));
            for law in &r.laws {
                worst = worst.max(law.max_residual);
                ensure(law.passed && law.max_residual <= BALL_TOL, || {
                    format!("{variant} {}: residual {:e}", law.law, law.max_residual)
                })?;
            }
        }
        Ok(format!("15 finite carriers exhaustive; 2×1000 ball pairs, max residual {worst:.1e} ≤ {BALL_TOL:e}"))
    })())
}

fn ball_formulas() -> Outcome {
    from((|| {
        let half = [q(1, 2), q(0, 1)];
        let exact_mobius: Vec<f64> = mobius_exact(&half, &half).iter().map(to_f64).collect();
        ensure(exact_mobius == vec![0.8, 0.0], || format!("exact Möbius {exact_mobius:?}"))?;
        // Collinear Einstein sum, (1/2 + 1/2)/(1 + 1/4), exactly.
        let exact_einstein = to_f64(&((q(1, 2) + q(1, 2)) / (q(1, 1) + q(1, 4))));
        let u = BallElement(vec![0.5, 0.0]);
        let mut worst = 0.0f64;
        for (variant, want) in [
            (BallVariant::Mobius, exact_mobius[0]),
            (BallVariant::Einstein, exact_einstein),
        ] {
            let ball = BallGyrogroup::new(2, variant).unwrap();
            let s = ball.oplus(&u, &u).map_err(|e| e.to_string())?;
            let err = s.distance(&BallElement(vec![want, 0.0]));
            worst = worst.max(err);
            ensure(err <= FORMULA_TOL, || format!("{variant}: {s}"))?;
        }
        let ball = BallGyrogroup::new(2, BallVariant::Einstein).unwrap();
        let gamma = ball.lorentz_gamma(&BallElement(vec![0.8, 0.0])).map_err(|e| e.to_string())?;
        let err = (gamma - 5.0 / 3.0).abs();
        ensure(err <= FORMULA_TOL, || format!("γ = {gamma}"))?;
        Ok(format!("sums within {worst:.1e}, γ error {err:.1e}, tolerance {FORMULA_TOL:e}"))
    })())
}

fn gyration_structure() -> Outcome {
    from((|| {
        let (mut orth, mut looped) = (0.0f64, 0.0f64);
        for variant in [BallVariant::Mobius, BallVariant::Einstein] {
            let ball = BallGyrogroup::new(3, variant).unwrap();
            let mut rng = seeded_rng(SEED);
            let triples: Vec<_> = (0..200)
                .map(|_| {
                    (
                        ball.random_element(&mut rng, TRIPLE_MAX_NORM),
                        ball.random_element(&mut rng, TRIPLE_MAX_NORM),
                        ball.random_element(&mut rng, TRIPLE_MAX_NORM),
                    )
                })
                .collect();
            for (a, b, c) in &triples {
                let m = ball.gyration_matrix(a, b, std::slice::from_ref(c)).map_err(|e| e.to_string())?;
                orth = orth.max(m.orthogonality_residual);
            }
            let r = check_axioms(&ball, &triples, LOOP_TOL);
            looped = looped.max(r.law(LOOP_PROPERTY).unwrap().max_residual);
        }
        ensure(orth <= ORTHOGONALITY_TOL && looped <= LOOP_TOL, || {
            format!("‖MᵀM − I‖ {orth:e}, loop residual {looped:e}")
        })?;
        Ok(format!(
            "2×200 pairs (norm ≤ {TRIPLE_MAX_NORM}): ‖MᵀM − I‖ ≤ {orth:.1e} (tol {ORTHOGONALITY_TOL:e}), loop residual ≤ {looped:.1e} (tol {LOOP_TOL:e})"
        ))
    })())
}

fn orbit_stabilizer() -> Outcome {
    from((|| {
        let fixtures = fixture_gsets();
        let random = random_gsets(60);
        let mut points = 0;
        for (name, x) in fixtures.iter().chain(&random) {
            let n = x.group().order();
            for p in 0..x.points() {
                let orbit = x.orbit(p).len();
                let stab = x.stabilizer(p).len();
                ensure(orbit * stab == n, || format!("{name}, point {p}: {orbit}·{stab} ≠ {n}"))?;
                points += 1;
            }
            x.check_orbit_stabilizer().map_err(|e| format!("{name}: {e}"))?;
        }
        Ok(format!(
            "{} fixture and {} random actions, {points} points",
            fixtures.len(),
            random.len()
        ))
    })())
}

fn burnside() -> Outcome {
    from((|| {
        let all: Vec<_> = fixture_gsets().into_iter().chain(random_gsets(60)).collect();
        for (name, x) in &all {
            let b = x.burnside_count().map_err(|e| format!("{name}: {e}"))?;
            let mut seen = vec![false; x.points()];
            let mut orbits = 0;
            for p in 0..x.points() {
                if !seen[p] {
                    orbits += 1;
                    x.orbit(p).into_iter().for_each(|y| seen[y] = true);
                }
            }
            let ratio = b.ratio();
            ensure(*ratio.denom() == 1 && *ratio.numer() == orbits, || {
                format!("{name}: {}/{} vs {orbits} orbits", b.numerator, b.denominator)
            })?;
        }
        let s3 = load_group("s3.gyro");
        let x = load_gset(&s3, "s3_conj.action");
        let b = x.burnside_count().map_err(|e| e.to_string())?;
        let eq = x.orbit_decomposition_equation().map_err(|e| e.to_string())?.render();
        ensure(b.orbit_count == 3 && eq == "6 = 1 + 2 + 3", || format!("S3: {} orbits, {eq}", b.orbit_count))?;
        Ok(format!(
            "{} actions exact; S3 conjugation {}/{} = 3, {eq}",
            all.len(),
            b.total_fixed,
            b.group_order
        ))
    })())
}

fn coset_construction() -> Outcome {
    from((|| {
        let mut count = 0;
        for (name, t) in group_fixtures() {
            let g = Arc::new(FiniteGyrogroup::validate(t).unwrap());
            for h in enumerate_subgyrogroups(&g, DEFAULT_ENUMERATION_CAP).unwrap() {
                let ctx = || format!("{name}/{:?}", h.members());
                ensure(coset_criterion(&g, &h).passed(), || format!("{}: criterion", ctx()))?;
                let c = build_coset_action(g.clone(), &h).map_err(|e| format!("{}: {e}", ctx()))?;
                // Classical table: a·(x+H) = (a+x)+H on coset sets.
                let sets: Vec<BTreeSet<usize>> = c
                    .partition
                    .cosets
                    .iter()
                    .map(|v| v.iter().copied().collect())
                    .collect();
                for a in g.elements() {
                    for (i, s) in sets.iter().enumerate() {
                        let img: BTreeSet<usize> = s.iter().map(|&x| g.add(a, x)).collect();
                        ensure(sets[c.gset.act(a, i)] == img, || format!("{}: a = {a}, coset {i}", ctx()))?;
                    }
                }
                let cl = &c.classification;
                if !h.is_trivial() {
                    ensure(cl.transitive && !cl.semiregular, || format!("{}: {cl:?}", ctx()))?;
                }
                ensure(c.index() * h.order() == g.order(), || format!("{}: index formula", ctx()))?;
                count += 1;
            }
        }
        Ok(format!("{count} subgroups of 14 groups"))
    })())
}

fn pair_gyro() -> Outcome {
    from((|| {
        let m = 6;
        let p = PairGyrogroup::new(m, BallVariant::Mobius).unwrap();
        let triples = p.random_triples(&mut seeded_rng(SEED), 10_000, TRIPLE_MAX_NORM);
        let r = check_axioms(&p, &triples, BALL_TOL);
        let worst = r.laws.iter().map(|l| l.max_residual).fold(0.0, f64::max);
        ensure(r.all_passed() && worst <= BALL_TOL, || format!("axioms: {:?}", r.laws))?;
        let space = p.hat_coset_space(&triples, SEED).map_err(|e| e.to_string())?;
        let elements: Vec<_> = triples.iter().flat_map(|(x, y, z)| [x, y, z]).collect();
        let observed: BTreeSet<usize> = elements.iter().map(|x| p.hat_coset_index(x)).collect();
        ensure(observed.len() == m, || format!("{} cosets observed", observed.len()))?;
        let orbit = space.orbit(0, elements.iter().copied());
        ensure(orbit.len() == m, || format!("orbit of coset 0: {orbit:?}"))?;
        let stabilizing: Vec<_> = elements.iter().filter(|g| space.fixes(g, 0)).collect();
        ensure(stabilizing.iter().all(|g| p.in_hat(g)), || "stabilizer of coset 0 leaves Ĝ".into())?;
        ensure(!stabilizing.is_empty(), || "no stabilizing samples".into())?;
        Ok(format!(
            "10⁴ triples, max axiom residual {worst:.1e} ≤ {BALL_TOL:e}; {m} cosets; transitive; {} stabilizing samples in Ĝ",
            stabilizing.len()
        ))
    })())
}

fn equivalence() -> Outcome {
    from((|| {
        let mut transitive: Vec<(String, FiniteGSet)> = Vec::new();
        for (name, g) in finite_carriers() {
            for h in enumerate_subgyrogroups(&g, DEFAULT_ENUMERATION_CAP).unwrap() {
                if let Ok(c) = build_coset_action(g.clone(), &h) {
                    if c.gset.points() <= 6 {
                        transitive.push((name.clone(), c.gset));
                    }
                }
            }
        }
        let z6 = load_group("z6.gyro");
        for f in ["z6_mod3.action", "z6_mod3_twisted.action"] {
            transitive.push(("Z6".into(), load_gset(&z6, f)));
        }
        let mut pairs = 0;
        for (nx, x) in &transitive {
            for (_, y) in &transitive {
                if !x.same_carrier(y) || x.points() != y.points() {
                    continue;
                }
                let ours = are_equivalent_transitive(x, y).map_err(|e| format!("{nx}: {e}"))?;
                ensure(ours.is_some() == equivalent_by_brute_force(x, y), || format!("{nx}: disagreement"))?;
                pairs += 1;
            }
        }
        let mut isos = 0;
        for (name, x) in fixture_gsets().into_iter().chain(random_gsets(60)) {
            for z in 0..x.points() {
                let f = fundamental_isomorphism(&x, z).map_err(|e| format!("{name}, z = {z}: {e}"))?;
                ensure(f.map.is_equivalence(), || format!("{name}, z = {z}"))?;
                for a in x.group().elements() {
                    let coset = f.coset_action.partition.coset_of(a).unwrap();
                    let image = f.orbit.embedding[f.map.map[coset]];
                    ensure(image == x.act(a, z), || format!("{name}: Φ(a⊕stab z) ≠ a·z at a = {a}"))?;
                }
                isos += 1;
            }
        }
        Ok(format!("{pairs} transitive pairs agree with exhaustive search; {isos} fundamental isomorphisms verified"))
    })())
}

fn g15() -> Outcome {
    match g15_source() {
        None => Outcome::Skip(format!("no table; set {G15_ENV} or add tests/fixtures/g15.gyro")),
        Some((path, text)) => match check_g15(&text) {
            Ok(s) => Outcome::Pass(format!("{}: {s}", path.display())),
            Err(e) => Outcome::Fail(format!("{}: {e}", path.display())),
        },
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("axiom suite", Some(Duration::from_secs(1)), axiom_suite),
        ("cancellation laws", Some(Duration::from_secs(5)), cancellation_suite),
        ("ball formulas", None, ball_formulas),
        ("gyration structure", None, gyration_structure),
        ("orbit-stabilizer", None, orbit_stabilizer),
        ("Burnside count", None, burnside),
        ("coset action construction", None, coset_construction),
        ("pair gyrogroup", Some(Duration::from_secs(10)), pair_gyro),
        ("G-set equivalence", None, equivalence),
        ("order-15 gyrogroup", None, g15),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let timing = match budget {
            Some(b) => format!("{:.3}s, budget {}s", elapsed.as_secs_f64(), b.as_secs()),
            None => format!("{:.3}s", elapsed.as_secs_f64()),
        };
        let over = budget.is_some_and(|b| elapsed > b);
        let (tag, detail) = match outcome {
            Outcome::Pass(d) if over => ("FAIL", format!("{d}; over time budget")),
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => ("FAIL", d),
            Outcome::Skip(d) => ("SKIP", d),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} [{:>2}] {name}: {detail} ({timing})", i + 1);
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
