//! Small dense linear algebra over GF(2).
//!
//! Rows are word-packed bitvectors. Symplectic vectors for an `n`-qubit Pauli
//! are laid out as `[x_0 .. x_{n-1} | z_0 .. z_{n-1}]`.

use smallvec::SmallVec;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitRow {
    len: usize,
    words: SmallVec<[u64; 4]>,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: SmallVec::from_elem(0, len.div_ceil(64).max(1)),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Parity of the bitwise AND.
    pub fn dot(&self, other: &BitRow) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut row = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                row.set(i, true);
            }
        }
        row
    }

    /// Concatenation `[self | other]`.
    pub fn concat(&self, other: &BitRow) -> BitRow {
        let mut out = BitRow::zeros(self.len + other.len);
        for i in self.ones() {
            out.set(i, true);
        }
        for i in other.ones() {
            out.set(self.len + i, true);
        }
        out
    }

    pub fn slice(&self, start: usize, end: usize) -> BitRow {
        let mut out = BitRow::zeros(end - start);
        for i in start..end {
            if self.get(i) {
                out.set(i - start, true);
            }
        }
        out
    }

    /// Symplectic form on `[x | z]` rows of length `2n`.
    pub fn symplectic(&self, other: &BitRow) -> bool {
        debug_assert_eq!(self.len % 2, 0);
        let n = self.len / 2;
        let mut acc = false;
        for i in 0..n {
            acc ^= (self.get(i) & other.get(n + i)) ^ (self.get(n + i) & other.get(i));
        }
        acc
    }
}

/// Incrementally maintained reduced row echelon basis.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<BitRow>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `row` against the current basis.
    pub fn reduce(&self, row: &BitRow) -> BitRow {
        let mut r = row.clone();
        for (basis, &p) in self.rows.iter().zip(&self.pivots) {
            if r.get(p) {
                r.xor_assign(basis);
            }
        }
        r
    }

    pub fn contains(&self, row: &BitRow) -> bool {
        self.reduce(row).is_zero()
    }

    /// Adds `row` to the span; returns false if it was already dependent.
    pub fn insert(&mut self, row: &BitRow) -> bool {
        let r = self.reduce(row);
        let Some(p) = r.first_one() else {
            return false;
        };
        for basis in &mut self.rows {
            if basis.get(p) {
                basis.xor_assign(&r);
            }
        }
        self.rows.push(r);
        self.pivots.push(p);
        true
    }
}

pub fn rank(rows: &[BitRow]) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Rank of rows packed into single `u64` words.
pub fn rank_words(rows: &[u64]) -> usize {
    let mut pivots = [0u64; 64];
    let mut rank = 0;
    for &row in rows {
        let mut v = row;
        while v != 0 {
            let lead = 63 - v.leading_zeros() as usize;
            if pivots[lead] == 0 {
                pivots[lead] = v;
                rank += 1;
                break;
            }
            v ^= pivots[lead];
        }
    }
    rank
}

/// Basis of `{ v : row · v = 0 for every row }` over vectors of length `ncols`.
pub fn null_space(rows: &[BitRow], ncols: usize) -> Vec<BitRow> {
    let mut m: Vec<BitRow> = rows.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(sel) = (r..m.len()).find(|&i| m[i].get(c)) else {
            continue;
        };
        m.swap(r, sel);
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.xor_assign(&pivot);
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = BitRow::zeros(ncols);
        v.set(free, true);
        for (i, &pc) in pivot_cols.iter().enumerate() {
            if m[i].get(free) {
                v.set(pc, true);
            }
        }
        basis.push(v);
    }
    basis
}
