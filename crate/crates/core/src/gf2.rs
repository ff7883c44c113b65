//! Dense linear algebra over the field with two elements.

use std::fmt;

/// A vector over F2 of fixed length, packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(len: usize, idx: I) -> Self {
        let mut v = Self::zeros(len);
        for i in idx {
            v.toggle(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        if self.get(i) != bit {
            self.toggle(i);
        }
    }

    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Index of the lowest set bit.
    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(n, w)| n * 64 + w.trailing_zeros() as usize)
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// A subspace of `F2^n` in echelon form. Each stored row has a distinct
/// pivot, its lowest set bit.
#[derive(Clone, Debug)]
pub struct Echelon {
    dim: usize,
    rows: Vec<BitVec>,
    pivot_of: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: Vec::new(), pivot_of: vec![None; dim] }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows; the result is zero iff `v` lies in the span.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut v = v.clone();
        self.reduce_in_place(&mut v);
        v
    }

    fn reduce_in_place(&self, v: &mut BitVec) {
        // A row only has bits at or above its pivot, so one upward sweep suffices.
        for i in 0..self.dim {
            if v.get(i) {
                if let Some(r) = self.pivot_of[i] {
                    v.xor_assign(&self.rows[r]);
                }
            }
        }
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span. Returns `true` if the rank went up.
    pub fn insert(&mut self, v: &BitVec) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let r = self.reduce(v);
        match r.first_one() {
            None => false,
            Some(p) => {
                self.pivot_of[p] = Some(self.rows.len());
                self.rows.push(r);
                true
            }
        }
    }
}

/// Kernel of the linear map sending basis vector `k` to `images[k]`.
/// Each returned vector has length `images.len()`.
pub fn kernel(images: &[BitVec]) -> Vec<BitVec> {
    let n = images.len();
    let Some(m) = images.first().map(BitVec::len) else {
        return Vec::new();
    };
    // Rows: (image, combination of source basis vectors producing it).
    let mut rows: Vec<(BitVec, BitVec)> = Vec::new();
    let mut pivot_of: Vec<Option<usize>> = vec![None; m];
    let mut out = Vec::new();
    for (k, img) in images.iter().enumerate() {
        let mut v = img.clone();
        let mut tag = BitVec::zeros(n);
        tag.toggle(k);
        for (i, pivot) in pivot_of.iter().enumerate() {
            if v.get(i) {
                if let Some(r) = *pivot {
                    v.xor_assign(&rows[r].0);
                    tag.xor_assign(&rows[r].1);
                }
            }
        }
        match v.first_one() {
            None => out.push(tag),
            Some(p) => {
                pivot_of[p] = Some(rows.len());
                rows.push((v, tag));
            }
        }
    }
    out
}

/// Rank of the span of `vectors`.
pub fn rank(vectors: &[BitVec]) -> usize {
    let Some(dim) = vectors.first().map(BitVec::len) else {
        return 0;
    };
    let mut e = Echelon::new(dim);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}
