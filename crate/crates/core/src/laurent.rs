//! Integer Laurent polynomials in one variable `t`, with the Alexander
//! polynomial constructors for torus knots and their cables.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use crate::error::Error;

/// A Laurent polynomial with integer coefficients. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated exponents accumulate.
    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Value at `t = 1`.
    pub fn eval_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect(),
        }
    }

    /// The substitution `t -> t^m`.
    pub fn substitute_power(&self, m: u32) -> Self {
        assert!(m >= 1, "substitute_power needs m >= 1");
        let m = i64::from(m);
        Self {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e * m, c)).collect(),
        }
    }

    /// Coefficient of `t^s` equals that of `t^-s` for every `s`.
    pub fn is_symmetric(&self) -> bool {
        self.coeffs.iter().all(|(&e, &c)| self.coeff(-e) == c)
    }

    /// Shifts so the exponents are centred on zero. Returns `None` when the
    /// span is odd and no such shift exists.
    pub fn symmetrize(&self) -> Option<Self> {
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Some(self.clone()),
        };
        if (lo + hi) % 2 != 0 {
            return None;
        }
        Some(self.shift(-(lo + hi) / 2))
    }

    /// Exact quotient by a divisor whose leading coefficient is a unit.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, Error> {
        let (dlead_e, dlead_c) = divisor
            .coeffs
            .iter()
            .next_back()
            .map(|(&e, &c)| (e, c))
            .ok_or_else(|| Error::Internal("division by the zero polynomial".into()))?;
        if dlead_c.abs() != 1 {
            return Err(Error::Internal(format!("divisor {divisor} is not monic")));
        }
        let dlow = divisor.min_exp().unwrap_or(dlead_e);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some((&re, &rc)) = rem.coeffs.iter().next_back() {
            let low = rem.min_exp().unwrap_or(re);
            if re - dlead_e < low - dlow {
                break;
            }
            let q = Self::monomial(rc * dlead_c, re - dlead_e);
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        if !rem.is_zero() {
            return Err(Error::Internal(format!(
                "{self} is not divisible by {divisor} (remainder {rem})"
            )));
        }
        Ok(quot)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.coeffs {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.coeffs {
            for (&e2, &c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms().rev().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if n == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (a, e) {
                (_, 0) => write!(f, "{a}")?,
                (1, 1) => write!(f, "t")?,
                (1, _) => write!(f, "t^{e}")?,
                (_, 1) => write!(f, "{a}t")?,
                _ => write!(f, "{a}t^{e}")?,
            }
        }
        Ok(())
    }
}

fn check_pair(p: i64, q: i64) -> Result<(), Error> {
    if p < 1 || q < 1 {
        return Err(Error::NonPositive { p, q });
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NonCoprime { p, q });
    }
    Ok(())
}

/// `t^n - 1`
fn t_pow_minus_one(n: i64) -> LaurentPoly {
    LaurentPoly::from_terms([(n, 1), (0, -1)])
}

/// Symmetrized Alexander polynomial of the positive torus knot `T(p,q)`:
/// `t^{-(p-1)(q-1)/2} (t^{pq}-1)(t-1) / ((t^p-1)(t^q-1))`.
pub fn torus_alexander(p: i64, q: i64) -> Result<LaurentPoly, Error> {
    check_pair(p, q)?;
    let num = &t_pow_minus_one(p * q) * &t_pow_minus_one(1);
    let den = &t_pow_minus_one(p) * &t_pow_minus_one(q);
    let quot = num.div_exact(&den)?;
    Ok(quot.shift(-(p - 1) * (q - 1) / 2))
}

/// Alexander polynomial of the `(p,q)`-cable: `Δ_K(t^p) · Δ_{T(p,q)}(t)`, symmetrized.
pub fn cable_alexander(delta: &LaurentPoly, p: i64, q: i64) -> Result<LaurentPoly, Error> {
    check_pair(p, q)?;
    let prod = &delta.substitute_power(p as u32) * &torus_alexander(p, q)?;
    prod.symmetrize()
        .ok_or_else(|| Error::Internal(format!("cable polynomial {prod} has odd span")))
}

/// Recognizes the Alexander polynomials of L-space knots: symmetric, with
/// an odd number of nonzero coefficients alternating `+1, -1, ..., +1` from
/// the top. Returns the exponents in decreasing order.
pub fn is_lspace_form(p: &LaurentPoly) -> Option<Vec<i64>> {
    if p.is_zero() || !p.is_symmetric() {
        return None;
    }
    let terms: Vec<(i64, i64)> = p.terms().rev().collect();
    if terms.len().is_multiple_of(2) {
        return None;
    }
    for (n, &(_, c)) in terms.iter().enumerate() {
        let want = if n % 2 == 0 { 1 } else { -1 };
        if c != want {
            return None;
        }
    }
    Some(terms.into_iter().map(|(e, _)| e).collect())
}
