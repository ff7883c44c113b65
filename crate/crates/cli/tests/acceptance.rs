//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use cfk::expr::{build_complex, parse};
use cfk::fixtures::{build, fixtures, oracle_disagreements, property_violations, random_products, K, K_PRIME, SEED};
use cfk::format::{read_complex, render_cfk, write_complex};
use cfk::invariants::{epsilon, nu, nu_plus, tau, v};
use cfk::surgery::{cable_nu_plus_bounds, cable_tau, lens_d, qa_nu_plus, signature_eval, surgery_d, SurgerySpec};
use cfk::{staircase, BifilteredComplex, Error};

/// Runs `check`, prints one line for the criterion, and fails the test on error or timeout.
fn criterion(n: u32, title: &str, budget: Duration, check: impl FnOnce() -> Result<(), String>) {
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let result = result.and_then(|()| {
        if elapsed <= budget {
            Ok(())
        } else {
            Err(format!("took {elapsed:?}, budget {budget:?}"))
        }
    });
    match &result {
        Ok(()) => println!("criterion {n:>2}: PASS  {title} ({:.2?})", elapsed),
        Err(e) => println!("criterion {n:>2}: FAIL  {title}: {e}"),
    }
    if let Err(e) = result {
        panic!("criterion {n} failed: {e}");
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: Error) -> String {
    e.to_string()
}

fn complex(text: &str) -> Result<BifilteredComplex, String> {
    build_complex(&parse(text).map_err(err)?).map_err(err)
}

fn triple(c: &BifilteredComplex) -> Result<(i64, i64, i64), String> {
    Ok((tau(c).map_err(err)?, nu(c).map_err(err)?, nu_plus(c).map_err(err)?))
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

#[test]
fn criterion_01_tau_of_staircases() {
    criterion(1, "tau(T(2,9)) = 4, tau(-T(2,3;2,5)) = -4", secs(1), || {
        let t29 = tau(&complex("torus(2,9)")?).map_err(err)?;
        let m = tau(&complex("mirror(cable(2,5,torus(2,3)))")?).map_err(err)?;
        ensure((t29, m) == (4, -4), || format!("got {t29}, {m}"))
    });
}

#[test]
fn criterion_02_two_summand_knot() {
    criterion(2, "K = T(2,9) # -T(2,3;2,5): tau 0, nu 1, nu+ 2, V_0, V_1 >= 1, V_2 = 0", secs(2), || {
        let c = complex(K)?;
        ensure(c.len() == 45, || format!("{} generators", c.len()))?;
        let t = triple(&c)?;
        ensure(t == (0, 1, 2), || format!("(tau, nu, nu+) = {t:?}"))?;
        let vs: Vec<i64> = (0..3).map(|k| v(&c, k)).collect::<Result<_, _>>().map_err(err)?;
        ensure(vs[0] >= 1 && vs[1] >= 1 && vs[2] == 0, || format!("V_0..V_2 = {vs:?}"))
    });
}

#[test]
fn criterion_03_four_summand_knot() {
    criterion(3, "K' = T(2,5) # 2T(2,3) # -T(2,3;2,5): tau 0, nu 1, nu+ 2", secs(15), || {
        let c = complex(K_PRIME)?;
        // 5 * 3 * 3 * 5 generators
        ensure(c.len() == 225, || format!("{} generators", c.len()))?;
        let t = triple(&c)?;
        ensure(t == (0, 1, 2), || format!("(tau, nu, nu+) = {t:?}"))
    });
}

#[test]
fn criterion_04_property_suite() {
    criterion(4, "V_k identities and nu+ properties on all fixtures, k in [-6, 6]", secs(30), || {
        let all = fixtures();
        ensure(all.len() == 17, || format!("{} fixtures", all.len()))?;
        for e in all {
            let bad = property_violations(&build(&e), -6..=6).map_err(err)?;
            ensure(bad.is_empty(), || format!("{e}: {}", bad.join("; ")))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_05_quasi_alternating() {
    criterion(5, "nu+ = qa_nu_plus(sigma) for T(2,q) and mirrors, q = 3, 5, 7, 9", secs(5), || {
        for q in [3, 5, 7, 9] {
            for text in [format!("torus(2,{q})"), format!("mirror(torus(2,{q}))")] {
                let e = parse(&text).map_err(err)?;
                let sigma = signature_eval(&e).value.ok_or(format!("no signature for {text}"))?;
                let want = qa_nu_plus(sigma).map_err(err)?;
                let got = nu_plus(&build(&e)).map_err(err)?;
                ensure(got == want, || format!("{text}: nu+ {got}, qa formula {want}"))?;
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_06_torus_sharpness() {
    criterion(6, "nu+ = tau = g = (p-1)(q-1)/2 on torus knots", secs(5), || {
        for (p, q) in [(2, 3), (2, 5), (2, 7), (2, 9), (3, 4), (3, 5)] {
            let c = complex(&format!("torus({p},{q})"))?;
            let g = (p - 1) * (q - 1) / 2;
            let (t, _, np) = triple(&c)?;
            let top = c.top_alexander();
            ensure((np, t, top) == (g, g, g), || format!("T({p},{q}): nu+ {np}, tau {t}, top {top}, want {g}"))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_07_cable_formulas() {
    criterion(7, "cable_tau 3, 9, 18 and cable bounds 6, 13, 23 for K'_{p,3p-1}", secs(15), || {
        let c = complex(K_PRIME)?;
        let (t, eps) = (tau(&c).map_err(err)?, epsilon(&c).map_err(err)?);
        ensure(eps == -1, || format!("epsilon(K') = {eps}"))?;
        for (p, tau_want, nu_want) in [(2, 3, 6), (3, 9, 13), (4, 18, 23)] {
            let q = 3 * p - 1;
            let ct = cable_tau(t, eps, p, q).map_err(err)?;
            ensure(ct == tau_want, || format!("cable_tau at p={p}: {ct}"))?;
            let b = cable_nu_plus_bounds(&c, p, q, Some(2)).map_err(err)?;
            ensure(b.lower == Some(nu_want) && b.upper == Some(nu_want), || format!("bounds at p={p}: {b:?}"))?;
            let n = nu_plus(&c).map_err(err)?;
            let general = p * ((2 * n - 1) * p - 1) / 2 + 1;
            ensure(general == nu_want, || format!("general form at p={p}: {general}"))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_08_signature_calculus() {
    criterion(8, "sigma(T(2,3;2,5)) = sigma(K') = sigma(K'_{2,5}) = -4; genus inequality for p = 2, 3", secs(15), || {
        let sig = |t: &str| parse(t).map(|e| signature_eval(&e)).map_err(err);
        let s1 = sig("cable(2,5,torus(2,3))")?.value;
        let s2 = sig(K_PRIME)?.value;
        let s3 = sig(&format!("cable(2,5,{K_PRIME})"))?.value;
        ensure([s1, s2, s3] == [Some(-4); 3], || format!("got {s1:?}, {s2:?}, {s3:?}"))?;
        let c = complex(K_PRIME)?;
        for p in [2, 3] {
            let q = 3 * p - 1;
            let s = sig(&format!("cable({p},{q},{K_PRIME})"))?;
            let abs = s.value.map(i64::abs).or(s.abs_bound).ok_or(format!("no signature data at p={p}"))?;
            let upper = cable_nu_plus_bounds(&c, p, q, Some(2)).map_err(err)?.upper.ok_or("no upper bound")?;
            let lhs = (abs + 1) / 2 + 2 * p - 2;
            ensure(lhs <= upper, || format!("p={p}: {lhs} > {upper}"))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_09_surgery_d_invariants() {
    criterion(9, "surgery_d(unknot) = lens_d on all slots; denominators divide 4pq", secs(5), || {
        let u = BifilteredComplex::unknot();
        for (p, q) in [(1, 1), (2, 1), (3, 1), (3, 2), (5, 2), (7, 3)] {
            for s in SurgerySpec::all(p, q).map_err(err)? {
                let l = lens_d(p, q, s.spinc).map_err(err)?;
                let d = surgery_d(&u, &s).map_err(err)?;
                ensure(d == l, || format!("L({p},{q}) slot {}: {d} vs {l}", s.spinc))?;
                ensure((4 * p * q) % l.denom() == 0, || format!("L({p},{q}) slot {}: {l}", s.spinc))?;
            }
        }
        Ok(())
    });
}

#[test]
fn criterion_10_oracle_equivalence() {
    criterion(10, "brute-force V_k = reduction V_k on fixtures and 20 seeded random products", secs(20), || {
        let products = random_products(SEED, 20);
        ensure(products.len() == 20, || "wrong product count".into())?;
        for e in fixtures().into_iter().chain(products) {
            let bad = oracle_disagreements(&build(&e), -6..=6).map_err(err)?;
            ensure(bad.is_empty(), || format!("{e}: k = {bad:?}"))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_11_exclusions_are_honest() {
    criterion(11, "non-L-space cables get no fabricated complex; 1-cable formula is the identity", secs(5), || {
        for p in [2, 3, 4] {
            let text = format!("cable({p},{},{K_PRIME})", 3 * p - 1);
            let e = parse(&text).map_err(err)?;
            ensure(matches!(build_complex(&e), Err(Error::NoConstructor(_))), || format!("{text} was built"))?;
        }
        let c = complex(K_PRIME)?;
        let t = tau(&c).map_err(err)?;
        ensure(cable_tau(t, -1, 1, 7).map_err(err)? == t, || "1-cable changes tau".into())
    });
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn cfk(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_cfk")).args(args).output().expect("cfk runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

#[test]
fn criterion_12_format_and_cli() {
    criterion(12, "cfk v1 round trip, exit codes 0/1/2/3, selftest", secs(30), || {
        let path = fixture("dual_cable_staircase.cfk");
        let c = read_complex(&path).map_err(err)?;
        let cable = staircase(&cfk::laurent::cable_alexander(&cfk::laurent::torus_alexander(2, 3).map_err(err)?, 2, 5).map_err(err)?)
            .map_err(err)?;
        ensure(c.equal_under(&cable.dual(), &[0, 1, 2, 3, 4]), || "file is not the dual staircase".into())?;
        let text = std::fs::read_to_string(&path).map_err(|e| e.to_string())?;
        ensure(render_cfk(&c) == text, || "canonical rendering differs from the file".into())?;
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let copy = dir.path().join("copy.cfk");
        write_complex(&c, &copy).map_err(err)?;
        ensure(read_complex(&copy).map_err(err)? == c, || "read(write(C)) != C".into())?;
        ensure(std::fs::read_to_string(&copy).map_err(|e| e.to_string())? == text, || "rewritten file differs".into())?;

        let path_s = path.to_string_lossy().into_owned();
        let bad = fixture("bad_grading.cfk").to_string_lossy().into_owned();
        let file_expr = format!("file(\"{}\")", bad.replace('\\', "\\\\"));
        let cases: Vec<(Vec<&str>, i32)> = vec![
            (vec!["validate", &path_s], 0),
            (vec!["invariants", "unknot"], 0),
            (vec!["invariants", "torus(2,"], 1),
            (vec!["invariants", "torus(2,4)"], 1),
            (vec!["invariants", "torus(0,3)"], 1),
            (vec!["invariants", "{torus(2,3) @ colour=1}"], 1),
            (vec!["dinv", "unknot", "--surgery", "4/2"], 1),
            (vec!["validate", &bad], 2),
            (vec!["invariants", &file_expr], 2),
            (vec!["invariants", "cable(2,1,torus(2,3))"], 3),
            (vec!["frobnicate"], 1),
            (vec!["selftest"], 0),
        ];
        for (args, want) in cases {
            let (code, _) = cfk(&args);
            ensure(code == want, || format!("cfk {args:?}: exit {code}, want {want}"))?;
        }
        Ok(())
    });
}
