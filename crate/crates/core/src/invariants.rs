//! Subquotient complexes of a knot complex and the invariants read from
//! them: `V_k`, `H_k`, `τ`, `ν`, `ν⁺`, `ε` and the ranks of `ĤFK`.
//!
//! Every generator is first translated to `i = 0` (multiplied by `U^i`),
//! which leaves a basis indexed by generators with an Alexander grading
//! `A = j - i`, a grading `M - 2i`, and terms `U^e` with `e >= 0`.
//!
//! `V_k` is read from the subcomplex `A⁻_k = C{max(i, j - k) <= 0}`, a
//! finitely generated free F2[U]-complex: its homology is `F2[U]` in
//! grading `-2 V_k` plus torsion.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::BifilteredComplex;
use crate::error::Error;
use crate::gf2::{kernel, BitVec, Echelon};

/// A graded complex of free F2[U]-modules. `terms` are `(source, target, n)`, meaning `U^n · target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeUComplex {
    pub basis: Vec<(String, i64)>,
    pub terms: Vec<(usize, usize, u32)>,
}

/// Homology of a [`FreeUComplex`]: free summands by grading and torsion summands `F2[U]/U^e` as `(grading, e)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UModuleSummary {
    pub free_gradings: Vec<i64>,
    pub torsion: Vec<(i64, u32)>,
}

/// A chain complex of F2-vector spaces. Basis entries are `(name, maslov, alexander)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2Complex {
    pub basis: Vec<(String, i64, i64)>,
    pub terms: Vec<(usize, usize)>,
}

impl F2Complex {
    fn images(&self) -> Vec<BitVec> {
        let n = self.basis.len();
        let mut out = vec![BitVec::zeros(n); n];
        for &(s, t) in &self.terms {
            out[s].toggle(t);
        }
        out
    }

    /// Rank of homology in each Maslov grading.
    pub fn homology_ranks(&self) -> BTreeMap<i64, usize> {
        graded_ranks(&self.images(), |k| self.basis[k].1, |m| m + 1)
    }

    /// Rank of homology of the associated graded complex (only
    /// Alexander-preserving terms), by `(alexander, maslov)`.
    pub fn associated_graded_ranks(&self) -> BTreeMap<(i64, i64), usize> {
        let n = self.basis.len();
        let mut imgs = vec![BitVec::zeros(n); n];
        for &(s, t) in &self.terms {
            if self.basis[s].2 == self.basis[t].2 {
                imgs[s].toggle(t);
            }
        }
        graded_ranks(&imgs, |k| (self.basis[k].2, self.basis[k].1), |(a, m)| (a, m + 1))
    }
}

/// Homology ranks of a homogeneous differential: group `g` receives its
/// boundaries from group `above(g)`.
fn graded_ranks<K: Ord + Copy>(images: &[BitVec], key: impl Fn(usize) -> K, above: impl Fn(K) -> K) -> BTreeMap<K, usize> {
    let mut groups: BTreeMap<K, Vec<usize>> = BTreeMap::new();
    for k in 0..images.len() {
        groups.entry(key(k)).or_default().push(k);
    }
    let ranks: BTreeMap<K, usize> = groups
        .iter()
        .map(|(&g, members)| {
            let mut e = Echelon::new(images.len());
            for &k in members {
                e.insert(&images[k]);
            }
            (g, e.rank())
        })
        .collect();
    groups
        .iter()
        .map(|(&g, members)| {
            let incoming = ranks.get(&above(g)).copied().unwrap_or(0);
            (g, members.len() - ranks[&g] - incoming)
        })
        .collect()
}

/// Generators translated to `i = 0`: `(alexander, grading)` and terms `(s, t, e)`.
struct Normalized {
    alexander: Vec<i64>,
    grading: Vec<i64>,
    terms: Vec<(usize, usize, i64)>,
}

impl Normalized {
    fn of(c: &BifilteredComplex) -> Self {
        let gens = c.generators();
        Self {
            alexander: gens.iter().map(|g| g.alexander()).collect(),
            grading: gens.iter().map(|g| g.maslov - 2 * g.i).collect(),
            terms: c
                .terms()
                .iter()
                .map(|t| (t.source, t.target, gens[t.source].i + i64::from(t.upower) - gens[t.target].i))
                .collect(),
        }
    }

    /// Power of `U` placing each generator on the boundary of `max(i, j - k) <= 0`.
    fn shifts(&self, k: i64) -> Vec<i64> {
        self.alexander.iter().map(|&a| (a - k).max(0)).collect()
    }
}

fn shifted_name(name: &str, m: i64) -> String {
    if m == 0 {
        name.to_string()
    } else {
        format!("U^{m}.{name}")
    }
}

/// The subcomplex `A⁻_k = C{max(i, j - k) <= 0}` as a free F2[U]-complex,
/// generated by `U^{m_g} g` with `m_g = max(0, A(g) - k)`.
pub fn a_minus(c: &BifilteredComplex, k: i64) -> FreeUComplex {
    let nz = Normalized::of(c);
    let m = nz.shifts(k);
    let basis = c
        .generators()
        .iter()
        .enumerate()
        .map(|(b, g)| (shifted_name(&g.name, m[b]), nz.grading[b] - 2 * m[b]))
        .collect();
    let terms = nz
        .terms
        .iter()
        .map(|&(s, t, e)| {
            let n = m[s] + e - m[t];
            debug_assert!(n >= 0, "A-_k is not a subcomplex");
            (s, t, n as u32)
        })
        .collect();
    FreeUComplex { basis, terms }
}

/// The vertical complex `C{i = 0}`: terms with exponent 0 after translating to `i = 0`.
pub fn vertical_complex(c: &BifilteredComplex) -> F2Complex {
    let nz = Normalized::of(c);
    let basis = c
        .generators()
        .iter()
        .enumerate()
        .map(|(b, g)| (g.name.clone(), nz.grading[b], nz.alexander[b]))
        .collect();
    let terms = nz.terms.iter().filter(|t| t.2 == 0).map(|&(s, t, _)| (s, t)).collect();
    F2Complex { basis, terms }
}

/// The subquotient `Â_k = C{max(i, j - k) = 0}`, basis `U^{m_g} g` as in [`a_minus`].
pub fn hat_a(c: &BifilteredComplex, k: i64) -> F2Complex {
    let nz = Normalized::of(c);
    let m = nz.shifts(k);
    let basis = c
        .generators()
        .iter()
        .enumerate()
        .map(|(b, g)| (shifted_name(&g.name, m[b]), nz.grading[b] - 2 * m[b], nz.alexander[b]))
        .collect();
    let terms = nz
        .terms
        .iter()
        .filter(|&&(s, t, e)| m[s] + e - m[t] == 0)
        .map(|&(s, t, _)| (s, t))
        .collect();
    F2Complex { basis, terms }
}

/// Homology of a free F2[U]-complex with monomial entries.
///
/// Repeatedly picks the entry `b -> U^e c` of least exponent (ties: least
/// `(b, c)`), splits off the pair `{b, c}` (a torsion summand `F2[U]/U^e`
/// in the grading of `c` when `e > 0`), and updates every other `x` whose
/// boundary hits `c` by `∂x += U^{α-e} ∂b`. Homogeneity makes every
/// entry a monomial whose exponent is fixed by the gradings, so the
/// matrix is kept over F2.
pub fn homology_over_u(x: &FreeUComplex) -> Result<UModuleSummary, Error> {
    let n = x.basis.len();
    let grading: Vec<i64> = x.basis.iter().map(|b| b.1).collect();
    let exponent = |s: usize, t: usize| (grading[t] - grading[s] + 1) / 2;
    let mut out: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    let mut inc: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for &(s, t, u) in &x.terms {
        if s >= n || t >= n {
            return Err(Error::Internal(format!("term {s} -> {t} out of range")));
        }
        if grading[s] - 1 != grading[t] - 2 * i64::from(u) {
            return Err(Error::NonHomogeneous {
                source_idx: s,
                target: t,
                upower: u,
                src_grading: grading[s],
                tgt_grading: grading[t],
            });
        }
        if !out[s].insert(t) {
            out[s].remove(&t);
            inc[t].remove(&s);
        } else {
            inc[t].insert(s);
        }
    }
    let mut alive = vec![true; n];
    let mut summary = UModuleSummary::default();
    loop {
        let mut best: Option<(i64, usize, usize)> = None;
        for (s, targets) in out.iter().enumerate() {
            for &t in targets {
                let e = exponent(s, t);
                if best.is_none_or(|(be, _, _)| e < be) {
                    best = Some((e, s, t));
                }
            }
        }
        let Some((e, b, c)) = best else { break };
        if e > 0 {
            summary.torsion.push((grading[c], e as u32));
        }
        let db: Vec<usize> = out[b].iter().copied().collect();
        let hits: Vec<usize> = inc[c].iter().copied().filter(|&y| y != b).collect();
        for xi in hits {
            for &y in &db {
                if out[xi].insert(y) {
                    inc[y].insert(xi);
                } else {
                    out[xi].remove(&y);
                    inc[y].remove(&xi);
                }
            }
        }
        for v in [b, c] {
            for t in std::mem::take(&mut out[v]) {
                inc[t].remove(&v);
            }
            for s in std::mem::take(&mut inc[v]) {
                out[s].remove(&v);
            }
            alive[v] = false;
        }
    }
    summary.free_gradings = (0..n).filter(|&k| alive[k]).map(|k| grading[k]).collect();
    summary.free_gradings.sort_unstable_by(|a, b| b.cmp(a));
    summary.torsion.sort_unstable();
    Ok(summary)
}

/// `V_k`: minus half the grading of the free summand of `H_*(A⁻_k)`.
pub fn v(c: &BifilteredComplex, k: i64) -> Result<i64, Error> {
    let h = homology_over_u(&a_minus(c, k))?;
    match h.free_gradings.as_slice() {
        [g] if g % 2 == 0 && *g <= 0 => Ok(-g / 2),
        other => Err(Error::NotKnotType(format!("H_*(A-_{k}) has free gradings {other:?}"))),
    }
}

/// `H_k = V_{-k}`.
pub fn h(c: &BifilteredComplex, k: i64) -> Result<i64, Error> {
    v(c, -k)
}

/// `ν⁺`: the least `k >= 0` with `V_k = 0`.
pub fn nu_plus(c: &BifilteredComplex) -> Result<i64, Error> {
    let top = c.top_alexander().max(0);
    for k in 0..=top {
        if v(c, k)? == 0 {
            return Ok(k);
        }
    }
    Err(Error::NotKnotType(format!("V_{top} does not vanish")))
}

/// The vertical complex together with its boundary space.
struct Vertical {
    complex: F2Complex,
    images: Vec<BitVec>,
    boundaries: Echelon,
}

impl Vertical {
    fn of(c: &BifilteredComplex) -> Result<Self, Error> {
        let complex = vertical_complex(c);
        let ranks = complex.homology_ranks();
        if ranks.values().sum::<usize>() != 1 || ranks.get(&0) != Some(&1) {
            return Err(Error::NotKnotType("vertical homology is not F2 in grading 0".into()));
        }
        let images = complex.images();
        let mut boundaries = Echelon::new(images.len());
        for img in &images {
            boundaries.insert(img);
        }
        Ok(Self { complex, images, boundaries })
    }

    /// Whether some cycle in the span of `support` is not a boundary.
    fn carries_class(&self, support: &[usize]) -> bool {
        let n = self.images.len();
        let imgs: Vec<BitVec> = support.iter().map(|&b| self.images[b].clone()).collect();
        kernel(&imgs).iter().any(|z| {
            let cycle = BitVec::from_indices(n, z.ones().map(|q| support[q]));
            !self.boundaries.contains(&cycle)
        })
    }
}

/// `τ`: the least `k` for which `C{i = 0, j <= k}` carries the generator of the vertical homology.
pub fn tau(c: &BifilteredComplex) -> Result<i64, Error> {
    let vert = Vertical::of(c)?;
    let (lo, hi) = (c.bottom_alexander(), c.top_alexander());
    for k in lo..=hi {
        let support: Vec<usize> = (0..vert.complex.basis.len()).filter(|&b| vert.complex.basis[b].2 <= k).collect();
        if vert.carries_class(&support) {
            return Ok(k);
        }
    }
    Err(Error::Internal("tau scan did not terminate".into()))
}

/// `ν`: the least `k` such that the projection `Â_k -> C{i = 0}` is nonzero on homology.
pub fn nu(c: &BifilteredComplex) -> Result<i64, Error> {
    let vert = Vertical::of(c)?;
    let nz = Normalized::of(c);
    let n = c.len();
    let start = tau(c)?;
    for k in start..=c.top_alexander().max(start) + 1 {
        let m = nz.shifts(k);
        let hat = hat_a(c, k);
        let imgs = hat.images();
        let hit = kernel(&imgs).iter().any(|z| {
            let projected = BitVec::from_indices(n, z.ones().filter(|&b| m[b] == 0));
            !vert.boundaries.contains(&projected)
        });
        if hit {
            return Ok(k);
        }
    }
    Err(Error::Internal("nu scan did not terminate".into()))
}

/// `ε ∈ {-1, 0, 1}`: `-1` when `ν = τ + 1`, `+1` when the mirror has `ν = τ + 1`.
pub fn epsilon(c: &BifilteredComplex) -> Result<i64, Error> {
    let minus = nu(c)? == tau(c)? + 1;
    let d = c.dual();
    let plus = nu(&d)? == tau(&d)? + 1;
    match (minus, plus) {
        (true, true) => Err(Error::NotKnotType("both the complex and its dual have nu = tau + 1".into())),
        (true, false) => Ok(-1),
        (false, true) => Ok(1),
        (false, false) => Ok(0),
    }
}

/// Ranks of `ĤFK` by `(alexander, maslov)`.
pub fn hfk_hat(c: &BifilteredComplex) -> BTreeMap<(i64, i64), usize> {
    vertical_complex(c).associated_graded_ranks().into_iter().filter(|&(_, r)| r > 0).collect()
}

/// Largest Alexander grading with nonzero `ĤFK`.
pub fn seifert_genus(c: &BifilteredComplex) -> i64 {
    hfk_hat(c).keys().map(|&(a, _)| a).max().unwrap_or(0)
}

/// The invariants of one complex, with `V_k` and `H_k` over a range of `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub tau: i64,
    pub nu: i64,
    pub nu_plus: i64,
    pub epsilon: i64,
    pub v_table: BTreeMap<i64, i64>,
    pub h_table: BTreeMap<i64, i64>,
    pub hfk: BTreeMap<(i64, i64), usize>,
    pub seifert_genus: i64,
}

impl InvariantReport {
    /// `V_k` evaluations for distinct `k` are independent and run on separate threads.
    pub fn compute(c: &BifilteredComplex, ks: std::ops::RangeInclusive<i64>) -> Result<Self, Error> {
        let ks: Vec<i64> = ks.collect();
        let mut needed: BTreeSet<i64> = ks.iter().copied().collect();
        needed.extend(ks.iter().map(|k| -k));
        let needed: Vec<i64> = needed.into_iter().collect();
        let values: Vec<Result<i64, Error>> = std::thread::scope(|s| {
            let handles: Vec<_> = needed.iter().map(|&k| s.spawn(move || v(c, k))).collect();
            handles.into_iter().map(|h| h.join().expect("V_k worker panicked")).collect()
        });
        let mut all = BTreeMap::new();
        for (k, val) in needed.iter().zip(values) {
            all.insert(*k, val?);
        }
        let hfk = hfk_hat(c);
        Ok(Self {
            tau: tau(c)?,
            nu: nu(c)?,
            nu_plus: nu_plus(c)?,
            epsilon: epsilon(c)?,
            v_table: ks.iter().map(|&k| (k, all[&k])).collect(),
            h_table: ks.iter().map(|&k| (k, all[&-k])).collect(),
            seifert_genus: hfk.keys().map(|&(a, _)| a).max().unwrap_or(0),
            hfk,
        })
    }

    /// Values of `k` where `V_{-k} = V_k + k` fails; empty for complexes of knot type.
    pub fn symmetry_violations(&self) -> Vec<i64> {
        self.v_table
            .iter()
            .filter(|&(&k, &vk)| self.h_table.get(&k).is_some_and(|&hk| hk != vk + k))
            .map(|(&k, _)| k)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{staircase, Generator};
    use crate::laurent::{cable_alexander, torus_alexander};

    fn torus(p: i64, q: i64) -> BifilteredComplex {
        staircase(&torus_alexander(p, q).unwrap()).unwrap()
    }

    fn t2325() -> BifilteredComplex {
        staircase(&cable_alexander(&torus_alexander(2, 3).unwrap(), 2, 5).unwrap()).unwrap()
    }

    #[test]
    fn a_minus_unknot() {
        let u = BifilteredComplex::unknot();
        for k in 0..3 {
            assert_eq!(a_minus(&u, k).basis, vec![("a".to_string(), 0)]);
        }
        assert_eq!(a_minus(&u, -2).basis, vec![("U^2.a".to_string(), -4)]);
    }

    #[test]
    fn a_minus_trefoil() {
        let t = torus(2, 3);
        let a0 = a_minus(&t, 0);
        let gradings: Vec<i64> = a0.basis.iter().map(|b| b.1).collect();
        assert_eq!(gradings, vec![-2, -1, -2]);
        assert_eq!(a0.terms, vec![(1, 0, 0), (1, 2, 0)]);
        let a1 = a_minus(&t, 1);
        let gradings: Vec<i64> = a1.basis.iter().map(|b| b.1).collect();
        assert_eq!(gradings, vec![0, -1, -2]);
        assert_eq!(a1.terms, vec![(1, 0, 1), (1, 2, 0)]);
    }

    #[test]
    fn homology_over_u_examples() {
        let u = BifilteredComplex::unknot();
        assert_eq!(homology_over_u(&a_minus(&u, 0)).unwrap(), UModuleSummary { free_gradings: vec![0], torsion: vec![] });

        let boxed = FreeUComplex { basis: vec![("a".into(), -1), ("b".into(), 0)], terms: vec![(0, 1, 1)] };
        assert_eq!(homology_over_u(&boxed).unwrap(), UModuleSummary { free_gradings: vec![], torsion: vec![(0, 1)] });

        let t = torus(2, 3);
        assert_eq!(homology_over_u(&a_minus(&t, 0)).unwrap(), UModuleSummary { free_gradings: vec![-2], torsion: vec![] });

        let bad = FreeUComplex { basis: vec![("a".into(), 0), ("b".into(), 0)], terms: vec![(0, 1, 0)] };
        assert!(matches!(homology_over_u(&bad), Err(Error::NonHomogeneous { .. })));
    }

    #[test]
    fn torsion_from_a_square() {
        // A box a -> b, a -> c, b -> d, c -> d in the i = 0 column with U-powers
        // on the horizontal edges: H has one tower and torsion of length 1.
        let gens = vec![
            Generator::new("a", 1, 1, 1),
            Generator::new("b", 0, 1, 0),
            Generator::new("c", 1, 0, 0),
            Generator::new("d", 0, 0, -1),
            Generator::new("z", 0, 0, 0),
        ];
        let c = BifilteredComplex::from_named(gens, &[("a", "b", 0), ("a", "c", 0), ("b", "d", 0), ("c", "d", 0)], "box").unwrap();
        assert!(c.validate().is_ok());
        let h0 = homology_over_u(&a_minus(&c, 0)).unwrap();
        assert_eq!(h0.free_gradings, vec![0]);
        assert_eq!(h0.torsion, vec![(-1, 1)]);
        assert_eq!(v(&c, 0).unwrap(), 0);
    }

    #[test]
    fn v_and_h_small_cases() {
        let u = BifilteredComplex::unknot();
        for k in -4..=4 {
            assert_eq!(v(&u, k).unwrap(), (-k).max(0));
            assert_eq!(h(&u, k).unwrap(), k.max(0));
        }
        let t = torus(2, 3);
        assert_eq!(v(&t, 0).unwrap(), 1);
        assert_eq!(v(&t, 1).unwrap(), 0);
        assert_eq!(h(&t, 1).unwrap(), 1);
        assert_eq!(h(&t, 0).unwrap(), v(&t, 0).unwrap());
    }

    #[test]
    fn tau_nu_examples() {
        assert_eq!(tau(&torus(2, 9)).unwrap(), 4);
        assert_eq!(tau(&t2325().dual()).unwrap(), -4);
        let k = torus(2, 9).tensor(&t2325().dual());
        assert_eq!(tau(&k).unwrap(), 0);
        assert_eq!(nu(&k).unwrap(), 1);
        assert_eq!(nu_plus(&k).unwrap(), 2);
        assert_eq!(epsilon(&k).unwrap(), -1);
        assert!(v(&k, 0).unwrap() >= 1 && v(&k, 1).unwrap() >= 1);
        assert_eq!(v(&k, 2).unwrap(), 0);

        let u = BifilteredComplex::unknot();
        assert_eq!((tau(&u).unwrap(), nu(&u).unwrap(), nu_plus(&u).unwrap(), epsilon(&u).unwrap()), (0, 0, 0, 0));
        let t = torus(2, 3);
        assert_eq!((tau(&t).unwrap(), nu(&t).unwrap(), nu_plus(&t).unwrap(), epsilon(&t).unwrap()), (1, 1, 1, 1));
        let m = t.dual();
        assert_eq!((tau(&m).unwrap(), nu(&m).unwrap(), nu_plus(&m).unwrap(), epsilon(&m).unwrap()), (-1, 0, 0, -1));
    }

    #[test]
    fn vertical_and_hat_complexes() {
        let t29 = torus(2, 9);
        let vert = vertical_complex(&t29);
        assert_eq!(vert.basis.len(), 9);
        // only x_{2k+1} -> x_{2k+2} stays in the column i = 0
        assert_eq!(vert.terms, vec![(1, 2), (3, 4), (5, 6), (7, 8)]);

        let u = BifilteredComplex::unknot();
        let hat = hat_a(&u, 0);
        assert_eq!(hat.basis.len(), 1);
        assert!(hat.terms.is_empty());

        let hat = hat_a(&torus(2, 3), 0);
        assert_eq!(hat.terms, vec![(1, 0), (1, 2)]);
    }

    #[test]
    fn hfk_examples() {
        assert_eq!(hfk_hat(&BifilteredComplex::unknot()), BTreeMap::from([((0, 0), 1)]));
        let t29 = hfk_hat(&torus(2, 9));
        assert_eq!(t29.len(), 9);
        assert!(t29.values().all(|&r| r == 1));
        assert_eq!(t29.keys().map(|k| k.0).collect::<Vec<_>>(), (-4..=4).collect::<Vec<_>>());
        let k = torus(2, 9).tensor(&t2325().dual());
        let hk = hfk_hat(&k);
        assert_eq!(hk.values().sum::<usize>(), 45);
        assert_eq!(seifert_genus(&k), 8);
    }

    #[test]
    fn report_consistency() {
        let k = torus(2, 5).tensor(&torus(2, 3).dual());
        let r = InvariantReport::compute(&k, -3..=3).unwrap();
        assert!(r.symmetry_violations().is_empty());
        assert_eq!(r.v_table.len(), 7);
    }

    #[test]
    fn cancellation_preserves_invariants() {
        // trefoil plus a filtered pair wired into it
        let mut gens = torus(2, 3).generators().to_vec();
        gens.push(Generator::new("a", 1, 1, 1));
        gens.push(Generator::new("b", 1, 1, 0));
        let c = BifilteredComplex::from_named(
            gens,
            &[("x1", "x0", 0), ("x1", "x2", 0), ("x1", "b", 0), ("a", "b", 0)],
            "decorated",
        )
        .unwrap();
        assert!(c.validate().is_ok());
        let r = c.cancel_filtered_pairs();
        assert_eq!(r.len(), 3);
        assert!(r.validate().is_ok());
        for k in -2..=2 {
            assert_eq!(v(&c, k).unwrap(), v(&r, k).unwrap());
        }
        assert_eq!(tau(&c).unwrap(), tau(&r).unwrap());
        assert_eq!(nu(&c).unwrap(), nu(&r).unwrap());
        assert_eq!(nu_plus(&c).unwrap(), nu_plus(&r).unwrap());
        assert_eq!(hfk_hat(&c), hfk_hat(&r));
    }
}
