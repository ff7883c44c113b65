//! A slow, independent computation of `V_k` used to cross-check
//! [`crate::invariants::v`].
//!
//! `A⁻_k` is expanded into its F2 basis `U^n g` with
//! `n >= max(i_g, j_g - k)`, truncated below a grading cutoff, and its
//! homology is computed by dense elimination one grading at a time. The
//! free tower starts at the highest grading `d` where multiplication by a
//! large power `U^N` is nonzero on `H_d`; `N` exceeds every torsion order.

use std::collections::{BTreeMap, HashMap};

use crate::complex::BifilteredComplex;
use crate::error::Error;
use crate::gf2::{kernel, BitVec, Echelon};

struct Truncated {
    /// Elements `(generator, n)` of each grading.
    by_grading: BTreeMap<i64, Vec<(usize, i64)>>,
    index: HashMap<(usize, i64), usize>,
}

impl Truncated {
    fn new(c: &BifilteredComplex, k: i64, cutoff: i64) -> Self {
        let mut by_grading: BTreeMap<i64, Vec<(usize, i64)>> = BTreeMap::new();
        for (g, gen) in c.generators().iter().enumerate() {
            let mut n = gen.i.max(gen.j - k);
            while gen.maslov - 2 * n >= cutoff {
                by_grading.entry(gen.maslov - 2 * n).or_default().push((g, n));
                n += 1;
            }
        }
        let mut index = HashMap::new();
        for elems in by_grading.values() {
            for (pos, &e) in elems.iter().enumerate() {
                index.insert(e, pos);
            }
        }
        Self { by_grading, index }
    }

    fn dim(&self, d: i64) -> usize {
        self.by_grading.get(&d).map_or(0, Vec::len)
    }

    /// Boundaries of the elements in grading `d`, as vectors in grading `d - 1`.
    fn boundary_images(&self, c: &BifilteredComplex, d: i64) -> Vec<BitVec> {
        let target_dim = self.dim(d - 1);
        let Some(elems) = self.by_grading.get(&d) else { return Vec::new() };
        elems
            .iter()
            .map(|&(g, n)| {
                let mut img = BitVec::zeros(target_dim);
                for (t, u) in c.boundary(g) {
                    if let Some(&pos) = self.index.get(&(t, n + i64::from(u))) {
                        img.toggle(pos);
                    }
                }
                img
            })
            .collect()
    }

    fn boundaries(&self, c: &BifilteredComplex, d: i64) -> Echelon {
        let mut e = Echelon::new(self.dim(d));
        for img in self.boundary_images(c, d + 1) {
            e.insert(&img);
        }
        e
    }
}

/// `V_k` by brute force.
pub fn brute_force_v(c: &BifilteredComplex, k: i64) -> Result<i64, Error> {
    let tops: Vec<i64> = c.generators().iter().map(|g| g.maslov - 2 * g.i.max(g.j - k)).collect();
    let (Some(&lo), Some(&hi)) = (tops.iter().min(), tops.iter().max()) else {
        return Err(Error::NotKnotType("empty complex".into()));
    };
    let power = (hi - lo) / 2 + 2;
    let cutoff = lo - 2 * power - 2;
    let a = Truncated::new(c, k, cutoff);

    for d in (lo..=hi).rev() {
        let Some(elems) = a.by_grading.get(&d) else { continue };
        let cycles = kernel(&a.boundary_images(c, d));
        let mut span = a.boundaries(c, d);
        let below = a.boundaries(c, d - 2 * power);
        let target_dim = a.dim(d - 2 * power);
        for z in cycles {
            let z_vec = BitVec::from_indices(elems.len(), z.ones());
            if !span.insert(&z_vec) {
                continue;
            }
            let image = BitVec::from_indices(target_dim, z.ones().map(|pos| {
                let (g, n) = elems[pos];
                a.index[&(g, n + power)]
            }));
            if !below.contains(&image) {
                if d % 2 != 0 {
                    return Err(Error::NotKnotType(format!("tower of A-_{k} starts in odd grading {d}")));
                }
                return Ok(-d / 2);
            }
        }
    }
    Err(Error::NotKnotType(format!("no free tower found in A-_{k}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{build_complex, parse};
    use crate::invariants::v;

    #[test]
    fn agrees_on_small_knots() {
        for text in ["unknot", "torus(2,3)", "mirror(torus(2,3))", "torus(3,4)", "cable(2,5,torus(2,3))", "torus(2,3) # mirror(torus(2,5))"] {
            let c = build_complex(&parse(text).unwrap()).unwrap();
            for k in -5..=5 {
                assert_eq!(brute_force_v(&c, k).unwrap(), v(&c, k).unwrap(), "{text} k={k}");
            }
        }
    }

    #[test]
    fn unknot_closed_form() {
        let u = BifilteredComplex::unknot();
        for k in -6..=6 {
            assert_eq!(brute_force_v(&u, k).unwrap(), (-k).max(0));
        }
    }
}
