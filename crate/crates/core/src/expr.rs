//! Knot expressions: a small language for connected sums, mirrors, torus
//! knots, cables and complexes read from files.
//!
//! ```text
//! expr  := term { "#" term }
//! term  := "unknot" | "torus(" int "," int ")" | "cable(" int "," int "," expr ")"
//!        | "mirror(" expr ")" | "file(" string ")" | "{" expr "@" annots "}" | "(" expr ")"
//! annots := annot { "," annot }      annot := key [ "=" int ]
//! ```

use std::fmt;

use num_integer::Integer;

use crate::complex::{staircase, BifilteredComplex};
use crate::error::Error;
use crate::format::read_complex;
use crate::laurent::{cable_alexander, torus_alexander, LaurentPoly};

/// Facts about a knot supplied by the user rather than computed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Annotations {
    pub g4_upper: Option<i64>,
    pub sigma: Option<i64>,
    pub quasi_alternating: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotExpr {
    Unknot,
    Torus(i64, i64),
    Cable(i64, i64, Box<KnotExpr>),
    Mirror(Box<KnotExpr>),
    Sum(Box<KnotExpr>, Box<KnotExpr>),
    FromFile(String),
    Annotated(Box<KnotExpr>, Annotations),
}

impl KnotExpr {
    pub fn torus(p: i64, q: i64) -> Self {
        KnotExpr::Torus(p, q)
    }

    pub fn cable(p: i64, q: i64, child: KnotExpr) -> Self {
        KnotExpr::Cable(p, q, Box::new(child))
    }

    pub fn mirror(child: KnotExpr) -> Self {
        KnotExpr::Mirror(Box::new(child))
    }

    pub fn sum(a: KnotExpr, b: KnotExpr) -> Self {
        KnotExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn annotated(child: KnotExpr, notes: Annotations) -> Self {
        KnotExpr::Annotated(Box::new(child), notes)
    }

    /// Annotations attached at the top of the expression, if any.
    pub fn annotations(&self) -> Option<&Annotations> {
        match self {
            KnotExpr::Annotated(_, a) => Some(a),
            _ => None,
        }
    }

    /// The expression with top-level annotations removed.
    pub fn strip(&self) -> &KnotExpr {
        match self {
            KnotExpr::Annotated(c, _) => c.strip(),
            e => e,
        }
    }

    fn check(&self) -> Result<(), Error> {
        match self {
            KnotExpr::Unknot | KnotExpr::FromFile(_) => Ok(()),
            KnotExpr::Torus(p, q) => check_pq(*p, *q),
            KnotExpr::Cable(p, q, c) => {
                check_pq(*p, *q)?;
                c.check()
            }
            KnotExpr::Mirror(c) => c.check(),
            KnotExpr::Sum(a, b) => {
                a.check()?;
                b.check()
            }
            KnotExpr::Annotated(c, _) => c.check(),
        }
    }
}

fn check_pq(p: i64, q: i64) -> Result<(), Error> {
    if p <= 0 {
        return Err(Error::NonPositive { p, q });
    }
    if q == 0 {
        return Err(Error::Semantic(format!("pattern ({p},0) is not a knot")));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NonCoprime { p, q });
    }
    Ok(())
}

/// Parses and checks an expression.
pub fn parse(text: &str) -> Result<KnotExpr, Error> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    e.check()?;
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric() || *c == b'_') {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn int(&mut self) -> Result<i64, Error> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-' | b'+')) {
            self.pos += 1;
        }
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
        s.parse().map_err(|_| Error::Syntax { pos: start, msg: "expected an integer".into() })
    }

    fn string(&mut self) -> Result<String, Error> {
        self.expect(b'"')?;
        let mut out = Vec::new();
        loop {
            match self.src.get(self.pos) {
                None => return Err(self.error("unterminated string")),
                Some(b'"') => {
                    self.pos += 1;
                    break;
                }
                Some(b'\\') => {
                    match self.src.get(self.pos + 1) {
                        Some(&c @ (b'"' | b'\\')) => out.push(c),
                        _ => return Err(self.error("bad escape")),
                    }
                    self.pos += 2;
                }
                Some(&c) => {
                    out.push(c);
                    self.pos += 1;
                }
            }
        }
        String::from_utf8(out).map_err(|_| self.error("path is not UTF-8"))
    }

    fn expr(&mut self) -> Result<KnotExpr, Error> {
        let mut e = self.term()?;
        while self.eat(b'#') {
            e = KnotExpr::sum(e, self.term()?);
        }
        Ok(e)
    }

    fn term(&mut self) -> Result<KnotExpr, Error> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'{') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b'@')?;
                let notes = self.annotations()?;
                self.expect(b'}')?;
                Ok(KnotExpr::annotated(e, notes))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let at = self.pos;
                let word = self.ident();
                match word.as_str() {
                    "unknot" => Ok(KnotExpr::Unknot),
                    "torus" => {
                        self.expect(b'(')?;
                        let p = self.int()?;
                        self.expect(b',')?;
                        let q = self.int()?;
                        self.expect(b')')?;
                        Ok(KnotExpr::Torus(p, q))
                    }
                    "cable" => {
                        self.expect(b'(')?;
                        let p = self.int()?;
                        self.expect(b',')?;
                        let q = self.int()?;
                        self.expect(b',')?;
                        let c = self.expr()?;
                        self.expect(b')')?;
                        Ok(KnotExpr::cable(p, q, c))
                    }
                    "mirror" => {
                        self.expect(b'(')?;
                        let c = self.expr()?;
                        self.expect(b')')?;
                        Ok(KnotExpr::mirror(c))
                    }
                    "file" => {
                        self.expect(b'(')?;
                        self.skip_ws();
                        let path = self.string()?;
                        self.expect(b')')?;
                        Ok(KnotExpr::FromFile(path))
                    }
                    _ => Err(Error::Syntax { pos: at, msg: format!("unknown knot '{word}'") }),
                }
            }
            Some(_) => Err(self.error("expected a knot")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn annotations(&mut self) -> Result<Annotations, Error> {
        let mut notes = Annotations::default();
        let mut seen = Vec::new();
        loop {
            let at = self.pos;
            let key = self.ident();
            if key.is_empty() {
                return Err(self.error("expected an annotation"));
            }
            let value = if self.eat(b'=') { Some(self.int()?) } else { None };
            if seen.contains(&key) {
                return Err(Error::Semantic(format!("annotation '{key}' given twice")));
            }
            match (key.as_str(), value) {
                ("g4_upper", Some(v)) if v >= 0 => notes.g4_upper = Some(v),
                ("sigma", Some(v)) if v % 2 == 0 => notes.sigma = Some(v),
                ("quasi_alternating", None) => notes.quasi_alternating = true,
                ("g4_upper" | "sigma" | "quasi_alternating", _) => {
                    return Err(Error::Semantic(format!("bad value for annotation '{key}'")))
                }
                _ => return Err(Error::Semantic(format!("unknown annotation '{key}' at byte {at}"))),
            }
            seen.push(key);
            if !self.eat(b',') {
                return Ok(notes);
            }
        }
    }
}

impl fmt::Display for Annotations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(g) = self.g4_upper {
            parts.push(format!("g4_upper={g}"));
        }
        if let Some(s) = self.sigma {
            parts.push(format!("sigma={s}"));
        }
        if self.quasi_alternating {
            parts.push("quasi_alternating".into());
        }
        f.write_str(&parts.join(", "))
    }
}

/// Canonical form, read back by [`parse`] as the same tree.
impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => f.write_str("unknot"),
            KnotExpr::Torus(p, q) => write!(f, "torus({p},{q})"),
            KnotExpr::Cable(p, q, c) => write!(f, "cable({p},{q},{c})"),
            KnotExpr::Mirror(c) => write!(f, "mirror({c})"),
            KnotExpr::Sum(a, b) => match **b {
                KnotExpr::Sum(..) => write!(f, "{a} # ({b})"),
                _ => write!(f, "{a} # {b}"),
            },
            KnotExpr::FromFile(p) => write!(f, "file(\"{}\")", p.replace('\\', "\\\\").replace('"', "\\\"")),
            KnotExpr::Annotated(c, a) => write!(f, "{{{c} @ {a}}}"),
        }
    }
}

/// Alexander polynomial of an expression that denotes an L-space knot
/// (positive torus knots and sufficiently positive cables of them).
pub fn lspace_alexander(e: &KnotExpr) -> Option<LaurentPoly> {
    match e {
        KnotExpr::Unknot => Some(LaurentPoly::one()),
        KnotExpr::Torus(p, q) if *p == 1 || q.abs() == 1 => Some(LaurentPoly::one()),
        KnotExpr::Torus(p, q) if *q > 0 => torus_alexander(*p, *q).ok(),
        KnotExpr::Torus(..) | KnotExpr::FromFile(_) => None,
        KnotExpr::Cable(p, q, c) => {
            let delta = lspace_alexander(c)?;
            if *p == 1 {
                return Some(delta);
            }
            if delta == LaurentPoly::one() {
                return lspace_alexander(&KnotExpr::Torus(*p, *q));
            }
            let g = delta.max_exp()?;
            if *q >= p * (2 * g - 1) {
                cable_alexander(&delta, *p, *q).ok()
            } else {
                None
            }
        }
        KnotExpr::Mirror(c) => lspace_alexander(c).filter(|d| *d == LaurentPoly::one()),
        KnotExpr::Sum(a, b) => {
            let one = LaurentPoly::one();
            (lspace_alexander(a)? == one && lspace_alexander(b)? == one).then_some(one)
        }
        KnotExpr::Annotated(c, _) => lspace_alexander(c),
    }
}

/// Builds a complex for the expression: staircases for L-space knots,
/// duals for mirrors, tensor products for sums.
pub fn build_complex(e: &KnotExpr) -> Result<BifilteredComplex, Error> {
    let mut c = build(e)?;
    c.label = e.to_string();
    Ok(c)
}

fn build(e: &KnotExpr) -> Result<BifilteredComplex, Error> {
    match e {
        KnotExpr::Unknot => Ok(BifilteredComplex::unknot()),
        KnotExpr::Torus(p, q) if *p == 1 || q.abs() == 1 => Ok(BifilteredComplex::unknot()),
        KnotExpr::Torus(p, q) if *q < 0 => Ok(build(&KnotExpr::Torus(*p, -q))?.dual()),
        KnotExpr::Torus(p, q) => staircase(&torus_alexander(*p, *q)?),
        KnotExpr::Cable(p, q, c) => {
            if *p == 1 {
                return build(c);
            }
            match lspace_alexander(c) {
                Some(d) if d == LaurentPoly::one() => build(&KnotExpr::Torus(*p, *q)),
                _ => match lspace_alexander(e) {
                    Some(d) => staircase(&d),
                    None => Err(Error::NoConstructor(format!(
                        "{e} is not known to be an L-space knot; its invariants come from the cable formulas"
                    ))),
                },
            }
        }
        KnotExpr::Mirror(c) => Ok(build(c)?.dual()),
        KnotExpr::Sum(a, b) => Ok(build(a)?.tensor(&build(b)?)),
        KnotExpr::FromFile(path) => read_complex(path.as_ref()),
        KnotExpr::Annotated(c, _) => build(c),
    }
}
