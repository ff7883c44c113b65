//! Correction terms of lens spaces and of surgeries on knots, the cable
//! formulas for `τ` and `ν⁺`, a partial signature calculus, and 4-ball
//! genus bounds.
//!
//! `L(p, q)` is `p/q` surgery on the unknot, so that `d(L(p, 1), 0) = (p - 1)/4`
//! and `d(S³_{p/q}(K), i) = d(L(p, q), i) - 2 max(V_⌊i/q⌋, H_⌊(i-p)/q⌋)`.

use num_integer::Integer;
use num_rational::Rational64;

use crate::complex::BifilteredComplex;
use crate::error::Error;
use crate::expr::KnotExpr;
use crate::invariants::{h, hfk_hat, nu, nu_plus, tau, v};

/// A rational surgery `p/q` with a Spin^c label `0 <= spinc < p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurgerySpec {
    pub p: i64,
    pub q: i64,
    pub spinc: i64,
}

impl SurgerySpec {
    pub fn new(p: i64, q: i64, spinc: i64) -> Result<Self, Error> {
        check_coefficient(p, q)?;
        if !(0..p).contains(&spinc) {
            return Err(Error::Surgery(format!("Spin^c label {spinc} outside 0..{p}")));
        }
        Ok(Self { p, q, spinc })
    }

    /// Every Spin^c structure on `S³_{p/q}`.
    pub fn all(p: i64, q: i64) -> Result<Vec<Self>, Error> {
        check_coefficient(p, q)?;
        Ok((0..p).map(|spinc| Self { p, q, spinc }).collect())
    }
}

fn check_coefficient(p: i64, q: i64) -> Result<(), Error> {
    if p <= 0 || q <= 0 {
        return Err(Error::Surgery(format!("coefficient {p}/{q} must be positive")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::Surgery(format!("coefficient {p}/{q} is not in lowest terms")));
    }
    Ok(())
}

/// Parses a surgery coefficient `p/q` or `p`.
pub fn parse_coefficient(text: &str) -> Result<(i64, i64), Error> {
    let bad = || Error::Surgery(format!("cannot read '{text}' as p/q"));
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?),
        None => (text.trim().parse().map_err(|_| bad())?, 1),
    };
    check_coefficient(p, q)?;
    Ok((p, q))
}

/// `d(L(p, q), i)` by the reciprocity recursion on `(p, q)`.
pub fn lens_d(p: i64, q: i64, i: i64) -> Result<Rational64, Error> {
    let (mut p, mut q, mut i) = (SurgerySpec::new(p, q, i)?.p, q, i);
    let mut total = Rational64::from_integer(0);
    let mut sign = 1;
    while p > 1 {
        let s = 2 * i + 1 - p - q;
        let term = Rational64::new(-1, 4) + Rational64::new(s * s, 4 * p * q);
        total += term * sign;
        (p, q, i) = (q, p.mod_floor(&q), i.mod_floor(&q));
        sign = -sign;
    }
    Ok(total)
}

/// `d(S³_{p/q}(K), i)` for the knot with complex `c`.
pub fn surgery_d(c: &BifilteredComplex, s: &SurgerySpec) -> Result<Rational64, Error> {
    let base = lens_d(s.p, s.q, s.spinc)?;
    let vk = v(c, Integer::div_floor(&s.spinc, &s.q))?;
    let hk = h(c, Integer::div_floor(&(s.spinc - s.p), &s.q))?;
    Ok(base - Rational64::from_integer(2 * vk.max(hk)))
}

/// `ν⁺` of a quasi-alternating knot with signature `sigma`.
pub fn qa_nu_plus(sigma: i64) -> Result<i64, Error> {
    if sigma % 2 != 0 {
        return Err(Error::Inapplicable(format!("signature {sigma} is odd")));
    }
    Ok(if sigma >= 0 { 0 } else { -sigma / 2 })
}

fn check_cable(p: i64, q: i64) -> Result<(), Error> {
    if p <= 0 {
        return Err(Error::NonPositive { p, q });
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NonCoprime { p, q });
    }
    Ok(())
}

/// `τ` of the `(p, q)`-cable of a knot with `ε = -1`.
pub fn cable_tau(tau_k: i64, eps_k: i64, p: i64, q: i64) -> Result<i64, Error> {
    check_cable(p, q)?;
    if eps_k != -1 {
        return Err(Error::Inapplicable(format!("the cable formula for tau needs epsilon = -1, not {eps_k}")));
    }
    Ok(p * tau_k + (p - 1) * (q + 1) / 2)
}

/// Bounds on `ν⁺` of a cable. `upper` is also a 4-ball genus bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CableBounds {
    pub lower: Option<i64>,
    pub upper: Option<i64>,
}

/// `lower = ⌊pq/2⌋ + 1` whenever every residue `0 <= s < q` has
/// `max(V_⌊s/p⌋, H_⌊(s-q)/p⌋) > 0`. `upper = p g + (p-1)(q-1)/2`, where
/// `g = g4_upper` bounds the 4-ball genus of the companion.
pub fn cable_nu_plus_bounds(c: &BifilteredComplex, p: i64, q: i64, g4_upper: Option<i64>) -> Result<CableBounds, Error> {
    check_cable(p, q)?;
    if q <= 0 {
        return Err(Error::NonPositive { p, q });
    }
    let mut all_positive = true;
    for s in 0..q {
        if v(c, Integer::div_floor(&s, &p))?.max(h(c, Integer::div_floor(&(s - q), &p))?) == 0 {
            all_positive = false;
            break;
        }
    }
    Ok(CableBounds {
        lower: all_positive.then_some(p * q / 2 + 1),
        upper: g4_upper.map(|g| p * g + (p - 1) * (q - 1) / 2),
    })
}

/// A knot signature, or a bound on its absolute value when the rules do not determine it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignatureValue {
    pub value: Option<i64>,
    pub abs_bound: Option<i64>,
    pub derivation: Vec<String>,
}

impl SignatureValue {
    fn known(value: i64, rule: String) -> Self {
        Self { value: Some(value), abs_bound: Some(value.abs()), derivation: vec![rule] }
    }

    /// `⌈|σ|/2⌉`, a lower bound for the 4-ball genus.
    pub fn genus_bound(&self) -> Option<i64> {
        self.value.map(|s| (s.abs() + 1) / 2)
    }
}

fn torus_sigma(p: i64, q: i64) -> Option<i64> {
    match (p, q) {
        (1, _) | (_, 1) | (_, -1) => Some(0),
        (2, q) => Some(-q.signum() * (q.abs() - 1)),
        (p, 2) => Some(-(p - 1)),
        (p, -2) => Some(p - 1),
        _ => None,
    }
}

fn torus_signature(p: i64, q: i64) -> SignatureValue {
    match torus_sigma(p, q) {
        Some(s) => SignatureValue::known(s, format!("sigma(T({p},{q})) = {s}")),
        None => SignatureValue {
            value: None,
            abs_bound: Some((p - 1) * (q.abs() - 1)),
            derivation: vec![format!("sigma(T({p},{q})) unknown; |sigma| <= {}", (p - 1) * (q.abs() - 1))],
        },
    }
}

/// Signature from the torus knot rule for `p = 2`, additivity, mirrors and
/// the cabling rule `σ(K_{p,q}) = σ(T_{p,q}) (+ σ(K) when p is odd)`.
pub fn signature_eval(e: &KnotExpr) -> SignatureValue {
    match e {
        KnotExpr::Unknot => SignatureValue::known(0, "sigma(unknot) = 0".into()),
        KnotExpr::Torus(p, q) => torus_signature(*p, *q),
        KnotExpr::Mirror(c) => {
            let mut s = signature_eval(c);
            s.value = s.value.map(|x| -x);
            s.derivation.push(format!("mirror: sigma({e}) = -sigma({c})"));
            s
        }
        KnotExpr::Sum(a, b) => {
            let (sa, sb) = (signature_eval(a), signature_eval(b));
            let mut derivation = sa.derivation;
            derivation.extend(sb.derivation);
            derivation.push(format!("additivity over {e}"));
            let value = sa.value.zip(sb.value).map(|(x, y)| x + y);
            SignatureValue {
                value,
                abs_bound: value.map(i64::abs).or(sa.abs_bound.zip(sb.abs_bound).map(|(x, y)| x + y)),
                derivation,
            }
        }
        KnotExpr::Cable(1, _, c) => signature_eval(c),
        KnotExpr::Cable(p, q, c) => {
            let pattern = torus_signature(*p, *q);
            if p % 2 == 0 {
                let mut s = pattern;
                s.derivation.push(format!("even cable: sigma({e}) = sigma(T({p},{q}))"));
                return s;
            }
            let companion = signature_eval(c);
            let mut derivation = companion.derivation;
            derivation.extend(pattern.derivation);
            derivation.push(format!("odd cable: sigma({e}) = sigma({c}) + sigma(T({p},{q}))"));
            let value = companion.value.zip(pattern.value).map(|(x, y)| x + y);
            SignatureValue {
                value,
                abs_bound: value.map(i64::abs).or(companion.abs_bound.zip(pattern.abs_bound).map(|(x, y)| x + y)),
                derivation,
            }
        }
        KnotExpr::FromFile(path) => SignatureValue {
            value: None,
            abs_bound: None,
            derivation: vec![format!("no signature rule for the complex in {path}")],
        },
        KnotExpr::Annotated(c, notes) => match notes.sigma {
            Some(s) => SignatureValue::known(s, format!("sigma = {s} by annotation")),
            None => signature_eval(c),
        },
    }
}

/// 4-ball genus upper bound carried by the shape of an expression.
pub fn expr_g4_upper(e: &KnotExpr) -> Option<i64> {
    match e {
        KnotExpr::Unknot => Some(0),
        KnotExpr::Torus(p, q) => Some((p - 1) * (q.abs() - 1) / 2),
        KnotExpr::Mirror(c) => expr_g4_upper(c),
        KnotExpr::Sum(a, b) => Some(expr_g4_upper(a)? + expr_g4_upper(b)?),
        KnotExpr::Cable(p, q, c) => Some(p * expr_g4_upper(c)? + (p - 1) * (q.abs() - 1) / 2),
        KnotExpr::FromFile(_) => None,
        KnotExpr::Annotated(c, notes) => match (notes.g4_upper, expr_g4_upper(c)) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        },
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenusReport {
    pub tau: i64,
    pub nu: i64,
    pub nu_plus: i64,
    pub sigma: SignatureValue,
    pub g4_lower: i64,
    pub g4_upper: Option<i64>,
    pub seifert_genus: i64,
    pub notes: Vec<String>,
}

pub fn genus_report(c: &BifilteredComplex, e: Option<&KnotExpr>) -> Result<GenusReport, Error> {
    let t = tau(c)?;
    let n = nu(c)?;
    let np = nu_plus(c)?;
    let np_mirror = nu_plus(&c.dual())?;
    let sigma = e.map(signature_eval).unwrap_or(SignatureValue {
        value: None,
        abs_bound: None,
        derivation: vec!["no expression".into()],
    });
    let seifert_genus = hfk_hat(c).keys().map(|&(a, _)| a).max().unwrap_or(0);

    let mut notes = Vec::new();
    let lowers = [("nu_plus", Some(np)), ("nu_plus of the mirror", Some(np_mirror)), ("signature", sigma.genus_bound())];
    let g4_lower = lowers.iter().filter_map(|l| l.1).max().unwrap_or(0);
    let active: Vec<&str> = lowers.iter().filter(|l| l.1 == Some(g4_lower)).map(|l| l.0).collect();
    notes.push(format!("g4 >= {g4_lower} from {}", active.join(", ")));

    let expr_bound = e.and_then(expr_g4_upper);
    let g4_upper = match expr_bound {
        Some(b) if b < seifert_genus => {
            notes.push(format!("g4 <= {b} from the expression"));
            b
        }
        _ => {
            notes.push(format!("g4 <= {seifert_genus} from the Seifert genus"));
            seifert_genus
        }
    };
    if g4_lower == g4_upper {
        notes.push(format!("g4 = {g4_lower}"));
    } else if g4_lower > g4_upper {
        notes.push(format!("inconsistent bounds: {g4_lower} > {g4_upper}"));
    }
    Ok(GenusReport { tau: t, nu: n, nu_plus: np, sigma, g4_lower, g4_upper: Some(g4_upper), seifert_genus, notes })
}

/// Genus data of a cable computed from its companion's complex, for cables with no complex of their own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CableReport {
    pub p: i64,
    pub q: i64,
    pub tau: Option<i64>,
    pub nu_plus: Option<i64>,
    pub nu_plus_lower: i64,
    pub sigma: SignatureValue,
    pub g4_lower: i64,
    pub g4_upper: Option<i64>,
    pub notes: Vec<String>,
}

/// `e` must be a cable (possibly annotated); `companion` is the complex of its companion.
pub fn cable_report(e: &KnotExpr, companion: &BifilteredComplex) -> Result<CableReport, Error> {
    let KnotExpr::Cable(p, q, child) = e.strip() else {
        return Err(Error::Inapplicable(format!("{e} is not a cable")));
    };
    let (p, q) = (*p, *q);
    let mut notes = Vec::new();
    let companion_upper = genus_report(companion, Some(child))?.g4_upper;
    let eps = crate::invariants::epsilon(companion)?;
    let tau_c = match cable_tau(tau(companion)?, eps, p, q) {
        Ok(t) => {
            notes.push(format!("tau from the cable formula (companion epsilon = {eps})"));
            Some(t)
        }
        Err(_) => {
            notes.push(format!("tau unknown: companion epsilon = {eps}"));
            None
        }
    };
    let bounds = if q > 0 {
        cable_nu_plus_bounds(companion, p, q, companion_upper)?
    } else {
        notes.push("nu_plus bounds need q > 0".into());
        CableBounds { lower: None, upper: companion_upper.map(|g| p * g + (p - 1) * (q.abs() - 1) / 2) }
    };
    let sigma = signature_eval(e);
    let nu_plus_lower = bounds.lower.unwrap_or(0).max(tau_c.unwrap_or(0));
    let g4_lower = [Some(nu_plus_lower), sigma.genus_bound(), tau_c.map(i64::abs)].into_iter().flatten().max().unwrap_or(0);
    let g4_upper = match (bounds.upper, e.annotations().and_then(|a| a.g4_upper)) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, b) => a.or(b),
    };
    if let Some(l) = bounds.lower {
        notes.push(format!("nu_plus >= {l}: max(V, H) > 0 on every residue mod {q}"));
    }
    if let Some(u) = g4_upper {
        notes.push(format!("g4 <= {u} from {p} parallel copies of a companion surface"));
    }
    let nu_plus = (Some(nu_plus_lower) == g4_upper).then_some(nu_plus_lower);
    Ok(CableReport { p, q, tau: tau_c, nu_plus, nu_plus_lower, sigma, g4_lower, g4_upper, notes })
}
