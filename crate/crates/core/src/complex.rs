//! Bifiltered chain complexes over F2[U, U^-1], stored by a finite set of
//! generators with positions `(i, j)` and Maslov gradings.
//!
//! `U^n · g` sits at `(i - n, j - n)` in grading `M(g) - 2n`. A differential
//! term `source -> U^n target` must not raise either filtration and must
//! drop the grading by one.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::Error;
use crate::invariants::vertical_complex;
use crate::laurent::{is_lspace_form, LaurentPoly};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub i: i64,
    pub j: i64,
    pub maslov: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, i: i64, j: i64, maslov: i64) -> Self {
        Self { name: name.into(), i, j, maslov }
    }

    /// Alexander grading `j - i`, invariant under multiplication by `U`.
    pub fn alexander(&self) -> i64 {
        self.j - self.i
    }
}

/// The term `U^upower · target` in the boundary of `source` (indices into the generator list).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiffTerm {
    pub source: usize,
    pub target: usize,
    pub upower: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DuplicateName(String),
    BadIndex(DiffTerm),
    FiltrationRaise { source: String, target: String, upower: u32 },
    GradingMismatch { source: String, target: String, upower: u32 },
    /// `∂∂ source` has a nonzero coefficient on `U^upower · target`.
    DSquared { source: String, target: String, upower: u32 },
    /// The vertical complex does not have one-dimensional homology in grading 0.
    VerticalHomology { rank_by_grading: Vec<(i64, usize)> },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateName(n) => write!(f, "duplicate generator name {n}"),
            Violation::BadIndex(t) => write!(f, "term {} -> {} refers to a missing generator", t.source, t.target),
            Violation::FiltrationRaise { source, target, upower } => {
                write!(f, "term {source} -> U^{upower}.{target} raises a filtration")
            }
            Violation::GradingMismatch { source, target, upower } => {
                write!(f, "term {source} -> U^{upower}.{target} does not drop the Maslov grading by one")
            }
            Violation::DSquared { source, target, upower } => {
                write!(f, "d^2 {source} contains U^{upower}.{target}")
            }
            Violation::VerticalHomology { rank_by_grading } => {
                let total: usize = rank_by_grading.iter().map(|(_, r)| r).sum();
                write!(f, "vertical homology has total rank {total} (by grading: {rank_by_grading:?}), expected rank 1 in grading 0")
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct BifilteredComplex {
    generators: Vec<Generator>,
    terms: Vec<DiffTerm>,
    pub label: String,
}

/// Structural equality; the provenance label is ignored.
impl PartialEq for BifilteredComplex {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators && self.terms == other.terms
    }
}

impl Eq for BifilteredComplex {}

impl BifilteredComplex {
    /// Terms are sorted and duplicate terms cancel in pairs (coefficients are in F2).
    pub fn new(generators: Vec<Generator>, terms: impl IntoIterator<Item = DiffTerm>, label: impl Into<String>) -> Self {
        let mut set = BTreeSet::new();
        for t in terms {
            if !set.insert(t) {
                set.remove(&t);
            }
        }
        Self { generators, terms: set.into_iter().collect(), label: label.into() }
    }

    /// Convenience constructor taking terms by generator name.
    pub fn from_named(generators: Vec<Generator>, terms: &[(&str, &str, u32)], label: &str) -> Result<Self, Error> {
        let index: HashMap<&str, usize> = generators.iter().enumerate().map(|(k, g)| (g.name.as_str(), k)).collect();
        let look = |n: &str| index.get(n).copied().ok_or_else(|| Error::Semantic(format!("unknown generator {n}")));
        let mut ts = Vec::with_capacity(terms.len());
        for &(s, t, n) in terms {
            ts.push(DiffTerm { source: look(s)?, target: look(t)?, upower: n });
        }
        Ok(Self::new(generators, ts, label))
    }

    pub fn unknot() -> Self {
        Self::new(vec![Generator::new("a", 0, 0, 0)], [], "unknot")
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn terms(&self) -> &[DiffTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Boundary of generator `k` as `(target, upower)` pairs.
    pub fn boundary(&self, k: usize) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.terms.iter().filter(move |t| t.source == k).map(|t| (t.target, t.upower))
    }

    /// Largest Alexander grading of any generator.
    pub fn top_alexander(&self) -> i64 {
        self.generators.iter().map(Generator::alexander).max().unwrap_or(0)
    }

    pub fn bottom_alexander(&self) -> i64 {
        self.generators.iter().map(Generator::alexander).min().unwrap_or(0)
    }

    /// Checks names, filtration and grading of every term, `∂² = 0`, and
    /// that the vertical complex has homology `F2` in grading 0.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for g in &self.generators {
            if !seen.insert(g.name.as_str()) {
                out.push(Violation::DuplicateName(g.name.clone()));
            }
        }
        let n = self.generators.len();
        for t in &self.terms {
            if t.source >= n || t.target >= n {
                out.push(Violation::BadIndex(*t));
                continue;
            }
            let s = &self.generators[t.source];
            let g = &self.generators[t.target];
            let u = i64::from(t.upower);
            let names = || (s.name.clone(), g.name.clone());
            if g.i - u > s.i || g.j - u > s.j {
                let (source, target) = names();
                out.push(Violation::FiltrationRaise { source, target, upower: t.upower });
            }
            if s.maslov - 1 != g.maslov - 2 * u {
                let (source, target) = names();
                out.push(Violation::GradingMismatch { source, target, upower: t.upower });
            }
        }
        if !out.is_empty() {
            return Err(out);
        }
        for (source, coeffs) in self.d_squared() {
            for (target, upower) in coeffs {
                out.push(Violation::DSquared {
                    source: self.generators[source].name.clone(),
                    target: self.generators[target].name.clone(),
                    upower,
                });
            }
        }
        if !out.is_empty() {
            return Err(out);
        }
        let ranks = vertical_complex(self).homology_ranks();
        let total: usize = ranks.values().sum();
        if total != 1 || ranks.get(&0).copied() != Some(1) {
            out.push(Violation::VerticalHomology { rank_by_grading: ranks.into_iter().filter(|&(_, r)| r > 0).collect() });
            return Err(out);
        }
        Ok(())
    }

    /// Nonzero coefficients of `∂²g` for each generator `g`.
    fn d_squared(&self) -> BTreeMap<usize, BTreeSet<(usize, u32)>> {
        let mut outgoing: Vec<Vec<(usize, u32)>> = vec![Vec::new(); self.generators.len()];
        for t in &self.terms {
            outgoing[t.source].push((t.target, t.upower));
        }
        let mut res = BTreeMap::new();
        for (s, outs) in outgoing.iter().enumerate() {
            let mut acc: BTreeSet<(usize, u32)> = BTreeSet::new();
            for &(mid, a) in outs {
                for &(tgt, b) in &outgoing[mid] {
                    let key = (tgt, a + b);
                    if !acc.insert(key) {
                        acc.remove(&key);
                    }
                }
            }
            if !acc.is_empty() {
                res.insert(s, acc);
            }
        }
        res
    }

    /// The dual complex: `(i, j) -> (-i, -j)`, `M -> -M`, and every term reversed.
    pub fn dual(&self) -> Self {
        let gens = self
            .generators
            .iter()
            .map(|g| Generator::new(g.name.clone(), -g.i, -g.j, -g.maslov))
            .collect();
        let terms = self.terms.iter().map(|t| DiffTerm { source: t.target, target: t.source, upower: t.upower });
        Self::new(gens, terms, format!("dual({})", self.label))
    }

    /// Tensor product over F2[U, U^-1]. Generator `(g, h)` is named `g*h` and
    /// ordered by `(index of g, index of h)`.
    pub fn tensor(&self, other: &Self) -> Self {
        let m = other.generators.len();
        let mut gens = Vec::with_capacity(self.generators.len() * m);
        for g in &self.generators {
            for h in &other.generators {
                gens.push(Generator::new(format!("{}*{}", g.name, h.name), g.i + h.i, g.j + h.j, g.maslov + h.maslov));
            }
        }
        let mut terms = Vec::new();
        for t in &self.terms {
            for h in 0..m {
                terms.push(DiffTerm { source: t.source * m + h, target: t.target * m + h, upower: t.upower });
            }
        }
        for g in 0..self.generators.len() {
            for t in &other.terms {
                terms.push(DiffTerm { source: g * m + t.source, target: g * m + t.target, upower: t.upower });
            }
        }
        Self::new(gens, terms, format!("{} # {}", self.label, other.label))
    }

    /// Repeatedly cancels a term `a -> b` with `U`-power zero between
    /// generators at the same `(i, j)`, until none remains.
    pub fn cancel_filtered_pairs(&self) -> Self {
        let mut gens: Vec<Option<Generator>> = self.generators.iter().cloned().map(Some).collect();
        let mut terms: BTreeSet<DiffTerm> = self.terms.iter().copied().collect();
        loop {
            let pivot = terms.iter().copied().find(|t| {
                let (s, g) = (gens[t.source].as_ref().unwrap(), gens[t.target].as_ref().unwrap());
                t.upower == 0 && t.source != t.target && s.i == g.i && s.j == g.j
            });
            let Some(p) = pivot else { break };
            let from_a: Vec<(usize, u32)> = terms
                .iter()
                .filter(|t| t.source == p.source && t.target != p.target)
                .map(|t| (t.target, t.upower))
                .collect();
            let into_b: Vec<(usize, u32)> = terms
                .iter()
                .filter(|t| t.target == p.target && t.source != p.source)
                .map(|t| (t.source, t.upower))
                .collect();
            for &(x, alpha) in &into_b {
                for &(y, beta) in &from_a {
                    let t = DiffTerm { source: x, target: y, upower: alpha + beta };
                    if !terms.insert(t) {
                        terms.remove(&t);
                    }
                }
            }
            terms.retain(|t| ![p.source, p.target].contains(&t.source) && ![p.source, p.target].contains(&t.target));
            gens[p.source] = None;
            gens[p.target] = None;
        }
        let mut remap = vec![usize::MAX; gens.len()];
        let mut kept = Vec::new();
        for (k, g) in gens.into_iter().enumerate() {
            if let Some(g) = g {
                remap[k] = kept.len();
                kept.push(g);
            }
        }
        let terms = terms.into_iter().map(|t| DiffTerm { source: remap[t.source], target: remap[t.target], upower: t.upower });
        Self::new(kept, terms, self.label.clone())
    }

    /// Equality after relabelling generator `k` of `self` as `perm[k]` of `other`;
    /// names are ignored.
    pub fn equal_under(&self, other: &Self, perm: &[usize]) -> bool {
        if self.len() != other.len() || perm.len() != self.len() {
            return false;
        }
        let pos_ok = self.generators.iter().zip(perm).all(|(g, &k)| {
            let h = &other.generators[k];
            (g.i, g.j, g.maslov) == (h.i, h.j, h.maslov)
        });
        let mapped: BTreeSet<DiffTerm> = self
            .terms
            .iter()
            .map(|t| DiffTerm { source: perm[t.source], target: perm[t.target], upower: t.upower })
            .collect();
        pos_ok && mapped == other.terms.iter().copied().collect()
    }
}

/// Staircase complex of an L-space knot with Alexander polynomial `delta`.
/// Generator `x_0` sits at `(0, a_0)` in Maslov grading 0; odd generators
/// map to both neighbours.
pub fn staircase(delta: &LaurentPoly) -> Result<BifilteredComplex, Error> {
    let exps = is_lspace_form(delta).ok_or_else(|| Error::NotStaircase(delta.to_string()))?;
    let mut gens = Vec::with_capacity(exps.len());
    let (mut i, mut j) = (0, exps[0]);
    gens.push(Generator::new("x0", i, j, 0));
    for k in 1..exps.len() {
        let step = exps[k - 1] - exps[k];
        if k % 2 == 1 {
            i += step;
        } else {
            j -= step;
        }
        gens.push(Generator::new(format!("x{k}"), i, j, 0));
    }
    let mut terms = Vec::new();
    for k in (1..exps.len()).step_by(2) {
        terms.push(DiffTerm { source: k, target: k - 1, upower: 0 });
        terms.push(DiffTerm { source: k, target: k + 1, upower: 0 });
    }
    propagate_maslov(&mut gens, &terms, 0)?;
    Ok(BifilteredComplex::new(gens, terms, format!("staircase({delta})")))
}

/// Fixes Maslov gradings from the grading rule along terms, starting at generator `root` (grading 0).
fn propagate_maslov(gens: &mut [Generator], terms: &[DiffTerm], root: usize) -> Result<(), Error> {
    let n = gens.len();
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for t in terms {
        // M(target) = M(source) - 1 + 2n
        let delta = 2 * i64::from(t.upower) - 1;
        adj[t.source].push((t.target, delta));
        adj[t.target].push((t.source, -delta));
    }
    let mut m: Vec<Option<i64>> = vec![None; n];
    m[root] = Some(0);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let mv = m[v].unwrap();
        for &(w, d) in &adj[v] {
            match m[w] {
                None => {
                    m[w] = Some(mv + d);
                    queue.push_back(w);
                }
                Some(x) if x != mv + d => return Err(Error::Internal("inconsistent Maslov gradings".into())),
                Some(_) => {}
            }
        }
    }
    for (g, mg) in gens.iter_mut().zip(m) {
        g.maslov = mg.ok_or_else(|| Error::Internal("disconnected staircase".into()))?;
    }
    Ok(())
}
