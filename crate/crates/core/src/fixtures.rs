//! Named test knots, seeded random connected sums, and the structural
//! properties every complex of knot type must satisfy.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::BifilteredComplex;
use crate::error::Error;
use crate::expr::{build_complex, parse, KnotExpr};
use crate::invariants::{nu, nu_plus, tau, v};
use crate::oracle::brute_force_v;

pub const K: &str = "torus(2,9) # mirror(cable(2,5,torus(2,3)))";
pub const K_PRIME: &str = "torus(2,5) # torus(2,3) # torus(2,3) # mirror(cable(2,5,torus(2,3)))";
pub const SEED: u64 = 0x5eed_cf4b;

const BASE: [&str; 8] = [
    "unknot",
    "torus(2,3)",
    "torus(2,5)",
    "torus(2,7)",
    "torus(2,9)",
    "torus(3,4)",
    "torus(3,5)",
    "cable(2,5,torus(2,3))",
];

/// The base knots, their mirrors, and the two connected sums above.
pub fn fixtures() -> Vec<KnotExpr> {
    let base: Vec<KnotExpr> = BASE.iter().map(|t| parse(t).expect("fixture parses")).collect();
    let mut out = base.clone();
    out.extend(base.into_iter().skip(1).map(KnotExpr::mirror));
    out.push(parse(K).expect("fixture parses"));
    out.push(parse(K_PRIME).expect("fixture parses"));
    out
}

/// `count` connected sums of two to four factors from `T(2,3)`, `T(2,5)` and their mirrors.
pub fn random_products(seed: u64, count: usize) -> Vec<KnotExpr> {
    let pool = [
        KnotExpr::torus(2, 3),
        KnotExpr::torus(2, 5),
        KnotExpr::mirror(KnotExpr::torus(2, 3)),
        KnotExpr::mirror(KnotExpr::torus(2, 5)),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=4);
            let mut e = pool.choose(&mut rng).expect("pool is nonempty").clone();
            for _ in 1..n {
                e = KnotExpr::sum(e, pool.choose(&mut rng).expect("pool is nonempty").clone());
            }
            e
        })
        .collect()
}

pub fn build(e: &KnotExpr) -> BifilteredComplex {
    build_complex(e).expect("fixture builds")
}

/// Failures of the `V_k` identities and of `τ <= ν <= ν⁺`, `ν - τ ∈ {0, 1}`,
/// `ν⁺ = 0 ⇔ V_0 = 0` for `k` in `ks`.
pub fn property_violations(c: &BifilteredComplex, ks: std::ops::RangeInclusive<i64>) -> Result<Vec<String>, Error> {
    let mut bad = Vec::new();
    let top = c.top_alexander();
    for k in ks {
        let (vk, vm, vn) = (v(c, k)?, v(c, -k)?, v(c, k + 1)?);
        if vm != vk + k {
            bad.push(format!("V_{} = {vm} but V_{k} + {k} = {}", -k, vk + k));
        }
        if !(vk - 1 <= vn && vn <= vk) {
            bad.push(format!("V_{k} = {vk}, V_{} = {vn}", k + 1));
        }
        if k >= top && vk != 0 {
            bad.push(format!("V_{k} = {vk} above the top Alexander grading {top}"));
        }
    }
    let (t, n, np) = (tau(c)?, nu(c)?, nu_plus(c)?);
    if !(t <= n && n <= np && n - t <= 1) {
        bad.push(format!("tau = {t}, nu = {n}, nu_plus = {np}"));
    }
    if (np == 0) != (v(c, 0)? == 0) {
        bad.push(format!("nu_plus = {np} but V_0 = {}", v(c, 0)?));
    }
    Ok(bad)
}

/// Values of `k` where the brute-force and reduction engines disagree.
pub fn oracle_disagreements(c: &BifilteredComplex, ks: std::ops::RangeInclusive<i64>) -> Result<Vec<i64>, Error> {
    let mut bad = Vec::new();
    for k in ks {
        if brute_force_v(c, k)? != v(c, k)? {
            bad.push(k);
        }
    }
    Ok(bad)
}
