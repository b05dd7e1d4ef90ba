//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;

use gyract::finite::{CayleyTable, FiniteGyrogroup};
use gyract::{ActionTable, FiniteGSet};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn read_fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

pub fn load_table(name: &str) -> CayleyTable {
    CayleyTable::parse(&read_fixture(name)).unwrap()
}

pub fn load_group(name: &str) -> Arc<FiniteGyrogroup> {
    Arc::new(FiniteGyrogroup::validate(load_table(name)).unwrap())
}

pub fn load_gset(group: &Arc<FiniteGyrogroup>, name: &str) -> FiniteGSet {
    let t = ActionTable::parse(&read_fixture(name)).unwrap();
    FiniteGSet::from_action_table(group.clone(), &t).unwrap()
}

/// `Z/m × Z/n` with `(i,j)` at index `i*n + j`.
pub fn product_table(m: usize, n: usize) -> CayleyTable {
    CayleyTable::from_fn(m * n, |a, b| {
        let (i, j) = (a / n, a % n);
        let (k, l) = (b / n, b % n);
        ((i + k) % m) * n + (j + l) % n
    })
    .unwrap()
}

pub fn cyclic_table(n: usize) -> CayleyTable {
    CayleyTable::from_fn(n, |a, b| (a + b) % n).unwrap()
}

/// The permutation group generated by `gens`, elements sorted
/// lexicographically (so the identity is 0), operation `(p∘q)(i) = p(q(i))`.
pub fn permutation_group_table(gens: &[Vec<usize>]) -> CayleyTable {
    let degree = gens[0].len();
    let compose = |p: &[usize], q: &[usize]| -> Vec<usize> { q.iter().map(|&i| p[i]).collect() };
    let mut elems: BTreeSet<Vec<usize>> = BTreeSet::new();
    elems.insert((0..degree).collect());
    loop {
        let mut next = elems.clone();
        for p in &elems {
            for g in gens {
                next.insert(compose(g, p));
            }
        }
        if next.len() == elems.len() {
            break;
        }
        elems = next;
    }
    let elems: Vec<Vec<usize>> = elems.into_iter().collect();
    let index = |p: &Vec<usize>| elems.iter().position(|e| e == p).unwrap();
    CayleyTable::from_fn(elems.len(), |a, b| index(&compose(&elems[a], &elems[b]))).unwrap()
}

pub fn s3_table() -> CayleyTable {
    permutation_group_table(&[vec![1, 0, 2], vec![1, 2, 0]])
}

pub fn d4_table() -> CayleyTable {
    permutation_group_table(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
}

/// Quaternion units `±1, ±i, ±j, ±k`, index `2·unit + sign`.
pub fn q8_table() -> CayleyTable {
    // unit products: (product unit, negated?)
    const MUL: [[(usize, bool); 4]; 4] = [
        [(0, false), (1, false), (2, false), (3, false)],
        [(1, false), (0, true), (3, false), (2, true)],
        [(2, false), (3, true), (0, true), (1, false)],
        [(3, false), (2, false), (1, true), (0, true)],
    ];
    CayleyTable::from_fn(8, |a, b| {
        let (ua, sa) = (a / 2, a % 2 == 1);
        let (ub, sb) = (b / 2, b % 2 == 1);
        let (u, s) = MUL[ua][ub];
        2 * u + (s ^ sa ^ sb) as usize
    })
    .unwrap()
}

/// Group tables of orders 1 to 8, with names.
pub fn group_fixtures() -> Vec<(String, CayleyTable)> {
    let mut out: Vec<(String, CayleyTable)> =
        (1..=8).map(|n| (format!("Z{n}"), cyclic_table(n))).collect();
    out.push(("Z2xZ2".into(), product_table(2, 2)));
    out.push(("Z2xZ4".into(), product_table(2, 4)));
    out.push((
        "Z2xZ2xZ2".into(),
        CayleyTable::from_fn(8, |a, b| a ^ b).unwrap(),
    ));
    out.push(("S3".into(), s3_table()));
    out.push(("D4".into(), d4_table()));
    out.push(("Q8".into(), q8_table()));
    out
}

/// Every validated finite carrier used across the suites: the groups plus
/// the non-degenerate order-8 gyrogroup.
pub fn finite_carriers() -> Vec<(String, Arc<FiniteGyrogroup>)> {
    let mut out: Vec<(String, Arc<FiniteGyrogroup>)> = group_fixtures()
        .into_iter()
        .map(|(name, t)| (name, Arc::new(FiniteGyrogroup::validate(t).unwrap())))
        .collect();
    out.push(("G8".into(), load_group("g8.gyro")));
    out
}

/// All bijections `0..k → 0..k`.
pub fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

/// Whether some bijection `Φ` satisfies `Φ(a·x) = a·Φ(x)`.
pub fn equivalent_by_brute_force(x: &FiniteGSet, y: &FiniteGSet) -> bool {
    if x.points() != y.points() {
        return false;
    }
    let n = x.group().order();
    all_permutations(x.points()).iter().any(|phi| {
        (0..n).all(|a| (0..x.points()).all(|p| phi[x.act(a, p)] == y.act(a, phi[p])))
    })
}

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn to_f64(v: &Q) -> f64 {
    v.to_f64().unwrap()
}

fn dot(u: &[Q], v: &[Q]) -> Q {
    u.iter().zip(v).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

/// Exact Möbius addition over the rationals.
pub fn mobius_exact(u: &[Q], v: &[Q]) -> Vec<Q> {
    let one = Q::one();
    let two = &one + &one;
    let uv = dot(u, v);
    let uu = dot(u, u);
    let vv = dot(v, v);
    let denom = &one + &two * &uv + &uu * &vv;
    let cu = &one + &two * &uv + &vv;
    let cv = &one - &uu;
    u.iter()
        .zip(v)
        .map(|(x, y)| (&cu * x + &cv * y) / &denom)
        .collect()
}

pub fn neg_exact(u: &[Q]) -> Vec<Q> {
    u.iter().map(|x| -x).collect()
}

/// `gyr[a,b]c = ⊖(a⊕b)⊕(a⊕(b⊕c))`, exactly.
pub fn mobius_gyration_exact(a: &[Q], b: &[Q], c: &[Q]) -> Vec<Q> {
    let ab = mobius_exact(a, b);
    let abc = mobius_exact(a, &mobius_exact(b, c));
    mobius_exact(&neg_exact(&ab), &abc)
}

/// Relativistic addition of parallel velocities, `(u+v)/(1+uv)`.
pub fn collinear_einstein(u: f64, v: f64) -> f64 {
    (u + v) / (1.0 + u * v)
}

/// Environment variable naming a user-supplied order-15 table.
pub const G15_ENV: &str = "GYRACT_G15_TABLE";

/// The order-15 table, from `GYRACT_G15_TABLE` or `tests/fixtures/g15.gyro`,
/// with its source path. `None` when neither exists.
pub fn g15_source() -> Option<(PathBuf, String)> {
    let path = std::env::var_os(G15_ENV)
        .map(PathBuf::from)
        .unwrap_or_else(|| fixture_path("g15.gyro"));
    std::fs::read_to_string(&path).ok().map(|text| (path, text))
}

/// `A = (1 7 5 10 6)(2 3 8 11 14)` as an array on `0..15`.
pub fn g15_generator() -> Vec<usize> {
    let mut a: Vec<usize> = (0..15).collect();
    for cycle in [[1, 7, 5, 10, 6], [2, 3, 8, 11, 14]] {
        for i in 0..5 {
            a[cycle[i]] = cycle[(i + 1) % 5];
        }
    }
    a
}

/// Checks the order-15 table: gyrations `{I, A, …, A⁴}`, the three cosets
/// of `{0,4,9,12,13}` and a transitive coset action on 3 points.
pub fn check_g15(text: &str) -> Result<String, String> {
    use gyract::coset::build_coset_action;
    use gyract::finite::{is_l_subgyrogroup, left_cosets, Subgyrogroup};

    let table = CayleyTable::parse(text).map_err(|e| e.to_string())?;
    let g = Arc::new(FiniteGyrogroup::validate(table).map_err(|e| e.to_string())?);
    if g.order() != 15 {
        return Err(format!("order {} instead of 15", g.order()));
    }
    let a = g15_generator();
    let mut powers: Vec<Vec<usize>> = vec![(0..15).collect()];
    for _ in 1..5 {
        let last = powers.last().unwrap();
        powers.push(last.iter().map(|&i| a[i]).collect());
    }
    let mut expected = powers.clone();
    expected.sort();
    let mut found = g.distinct_gyrations();
    found.sort();
    if found != expected {
        return Err(format!("gyration set has {} members, not {{I, A, …, A⁴}}", found.len()));
    }
    let h = Subgyrogroup::new(&g, &[0, 4, 9, 12, 13]).map_err(|e| e.to_string())?;
    if !is_l_subgyrogroup(&g, &h) {
        return Err("{0,4,9,12,13} is not an L-subgyrogroup".into());
    }
    let mut cosets: Vec<Vec<usize>> = left_cosets(&g, &h)
        .cosets
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c
        })
        .collect();
    cosets.sort();
    let listed = vec![
        vec![0, 4, 9, 12, 13],
        vec![1, 5, 6, 7, 10],
        vec![2, 3, 8, 11, 14],
    ];
    if cosets != listed {
        return Err(format!("cosets {cosets:?}"));
    }
    let c = build_coset_action(g.clone(), &h).map_err(|e| e.to_string())?;
    if c.gset.points() != 3 || !c.classification.transitive {
        return Err(format!("coset action on {} points, transitive = {}", c.gset.points(), c.classification.transitive));
    }
    Ok("5 gyrations, 3 cosets, transitive on 3 points".into())
}
