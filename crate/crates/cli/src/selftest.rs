//! Golden values and property checks run by `cfk selftest`.

use cfk::expr::{build_complex, parse};
use cfk::fixtures::{build, fixtures, oracle_disagreements, property_violations, random_products, K, K_PRIME, SEED};
use cfk::format::{parse_cfk, render_cfk};
use cfk::invariants::{epsilon, nu, nu_plus, tau, v};
use cfk::surgery::{cable_nu_plus_bounds, cable_tau, lens_d, qa_nu_plus, signature_eval, surgery_d, SurgerySpec};
use cfk::BifilteredComplex;

pub struct Outcome {
    pub name: String,
    pub error: Option<String>,
}

type Check = Result<(), String>;
type Item = (&'static str, fn() -> Check);

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Check {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn complex(text: &str) -> Result<BifilteredComplex, String> {
    build_complex(&parse(text).map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

fn triple(c: &BifilteredComplex) -> Result<(i64, i64, i64), String> {
    let s = |e: cfk::Error| e.to_string();
    Ok((tau(c).map_err(s)?, nu(c).map_err(s)?, nu_plus(c).map_err(s)?))
}

fn tau_values() -> Check {
    expect("tau(T(2,9))", tau(&complex("torus(2,9)")?).map_err(|e| e.to_string())?, 4)?;
    expect("tau(-T(2,3;2,5))", tau(&complex("mirror(cable(2,5,torus(2,3)))")?).map_err(|e| e.to_string())?, -4)
}

fn two_summand() -> Check {
    let c = complex(K)?;
    expect("generators", c.len(), 45)?;
    expect("(tau, nu, nu+)", triple(&c)?, (0, 1, 2))?;
    let vs: Vec<i64> = (0..3).map(|k| v(&c, k)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    if vs[0] < 1 || vs[1] < 1 || vs[2] != 0 {
        return Err(format!("V_0..V_2 = {vs:?}"));
    }
    Ok(())
}

fn four_summand() -> Check {
    let c = complex(K_PRIME)?;
    expect("generators", c.len(), 225)?;
    expect("(tau, nu, nu+)", triple(&c)?, (0, 1, 2))
}

fn properties() -> Check {
    for e in fixtures() {
        let bad = property_violations(&build(&e), -6..=6).map_err(|x| x.to_string())?;
        if !bad.is_empty() {
            return Err(format!("{e}: {}", bad.join("; ")));
        }
    }
    Ok(())
}

fn quasi_alternating() -> Check {
    for q in [3, 5, 7, 9] {
        let t = complex(&format!("torus(2,{q})"))?;
        for (c, sigma) in [(t.dual(), q - 1), (t, 1 - q)] {
            let np = nu_plus(&c).map_err(|e| e.to_string())?;
            expect(&format!("T(2,{q}) sigma {sigma}"), np, qa_nu_plus(sigma).map_err(|e| e.to_string())?)?;
        }
    }
    Ok(())
}

fn torus_sharpness() -> Check {
    for (p, q) in [(2, 3), (2, 5), (2, 7), (2, 9), (3, 4), (3, 5)] {
        let c = complex(&format!("torus({p},{q})"))?;
        let g = (p - 1) * (q - 1) / 2;
        let (t, _, np) = triple(&c)?;
        expect(&format!("T({p},{q})"), (np, t, c.top_alexander()), (g, g, g))?;
    }
    Ok(())
}

fn cable_formulas() -> Check {
    let c = complex(K_PRIME)?;
    let t = tau(&c).map_err(|e| e.to_string())?;
    let eps = epsilon(&c).map_err(|e| e.to_string())?;
    for (p, tau_want, nu_want) in [(2, 3, 6), (3, 9, 13), (4, 18, 23)] {
        let q = 3 * p - 1;
        expect(&format!("cable_tau p={p}"), cable_tau(t, eps, p, q).map_err(|e| e.to_string())?, tau_want)?;
        let b = cable_nu_plus_bounds(&c, p, q, Some(2)).map_err(|e| e.to_string())?;
        expect(&format!("cable bounds p={p}"), (b.lower, b.upper), (Some(nu_want), Some(nu_want)))?;
        expect("general form", p * ((2 * 2 - 1) * p - 1) / 2 + 1, nu_want)?;
    }
    Ok(())
}

fn signatures() -> Check {
    let sig = |t: &str| parse(t).map(|e| signature_eval(&e).value).map_err(|e| e.to_string());
    expect("sigma(T(2,3;2,5))", sig("cable(2,5,torus(2,3))")?, Some(-4))?;
    expect("sigma(K')", sig(K_PRIME)?, Some(-4))?;
    expect("sigma(K'_{2,5})", sig(&format!("cable(2,5,{K_PRIME})"))?, Some(-4))?;
    expect("sigma(T(3,4))", sig("torus(3,4)")?, None)
}

fn surgeries() -> Check {
    let u = BifilteredComplex::unknot();
    for (p, q) in [(1, 1), (2, 1), (3, 1), (3, 2), (5, 2), (7, 3)] {
        for s in SurgerySpec::all(p, q).map_err(|e| e.to_string())? {
            let d = surgery_d(&u, &s).map_err(|e| e.to_string())?;
            let l = lens_d(p, q, s.spinc).map_err(|e| e.to_string())?;
            expect(&format!("S^3_{p}/{q}(U) slot {}", s.spinc), d, l)?;
            if (4 * p * q) % l.denom() != 0 {
                return Err(format!("denominator of d(L({p},{q}),{}) = {l}", s.spinc));
            }
        }
    }
    let t = complex("torus(2,3)")?;
    let d = surgery_d(&t, &SurgerySpec::new(1, 1, 0).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    expect("d(S^3_1(T(2,3)))", d.to_string(), "-2".to_string())
}

fn oracle() -> Check {
    let mut all = fixtures();
    all.extend(random_products(SEED, 20));
    for e in all {
        let bad = oracle_disagreements(&build(&e), -6..=6).map_err(|x| x.to_string())?;
        if !bad.is_empty() {
            return Err(format!("{e}: disagreement at k = {bad:?}"));
        }
    }
    Ok(())
}

fn round_trips() -> Check {
    for e in fixtures().into_iter().chain(random_products(SEED, 5)) {
        expect("parse(print(e))", parse(&e.to_string()).map_err(|x| x.to_string())?, e.clone())?;
        let c = build(&e);
        let back = parse_cfk(&render_cfk(&c), "selftest.cfk".as_ref()).map_err(|x| x.to_string())?;
        expect(&format!("cfk file of {e}"), back == c, true)?;
    }
    Ok(())
}

pub fn run() -> Vec<Outcome> {
    let items: [Item; 11] = [
        ("tau of T(2,9) and -T(2,3;2,5)", tau_values),
        ("tau, nu, nu+ of T(2,9) # -T(2,3;2,5)", two_summand),
        ("tau, nu, nu+ of T(2,5) # 2T(2,3) # -T(2,3;2,5)", four_summand),
        ("V_k and nu properties on all fixtures", properties),
        ("quasi-alternating nu+ from signature", quasi_alternating),
        ("torus knot sharpness", torus_sharpness),
        ("cable tau and nu+ bounds", cable_formulas),
        ("signature calculus", signatures),
        ("surgeries on the unknot and the trefoil", surgeries),
        ("brute-force V_k agrees with the reduction", oracle),
        ("expression and cfk file round trips", round_trips),
    ];
    items
        .iter()
        .map(|(name, f)| Outcome { name: name.to_string(), error: f().err() })
        .collect()
}
