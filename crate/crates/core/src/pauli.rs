//! Sign-tracked Pauli group algebra on word-packed symplectic vectors.
//!
//! Each qubit carries an `(x, z)` bit pair read as the operator `X^x Z^z`, so
//! the `(1, 1)` slot is `Y = X·Z = -iσ_y`. Under that convention the group is
//! closed over the real signs `{+1, -1}`: `XY = Z`, `YX = -Z`, `Y² = -I`.
//!
//! Qubit `q` lives at bit `q % 64` of word `q / 64`. Up to 128 qubits are
//! stored inline without heap allocation.

use std::fmt;
use std::str::FromStr;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::gf2::BitRow;

/// Default qubit cap for dense matrix conversion.
pub const MATRIX_QUBIT_CAP: usize = 12;

type Words = SmallVec<[u64; 2]>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn bits(self) -> (bool, bool) {
        match self {
            Pauli::I => (false, false),
            Pauli::X => (true, false),
            Pauli::Y => (true, true),
            Pauli::Z => (false, true),
        }
    }

    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Pauli::I,
            (true, false) => Pauli::X,
            (true, true) => Pauli::Y,
            (false, true) => Pauli::Z,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

/// An element of the n-qubit Pauli group `G_n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOperator {
    n: usize,
    x: Words,
    z: Words,
    sign: Sign,
}

impl PauliOperator {
    pub fn identity(n: usize) -> Self {
        let w = n.div_ceil(64).max(1);
        Self {
            n,
            x: SmallVec::from_elem(0, w),
            z: SmallVec::from_elem(0, w),
            sign: Sign::Plus,
        }
    }

    /// A single-qubit Pauli `p` on `qubit`, identity elsewhere.
    pub fn single(n: usize, qubit: usize, p: Pauli) -> Self {
        let mut op = Self::identity(n);
        op.set(qubit, p);
        op
    }

    pub fn from_paulis(paulis: &[Pauli]) -> Self {
        let mut op = Self::identity(paulis.len());
        for (q, &p) in paulis.iter().enumerate() {
            op.set(q, p);
        }
        op
    }

    /// Builds an operator from low-word masks (qubit `q` at bit `q`); `n <= 64`.
    pub fn from_u64_masks(n: usize, x: u64, z: u64) -> Self {
        assert!(n <= 64, "u64 masks hold at most 64 qubits");
        let mut op = Self::identity(n);
        let keep = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        op.x[0] = x & keep;
        op.z[0] = z & keep;
        op
    }

    /// Low-word masks; only meaningful for `n <= 64`.
    pub fn u64_masks(&self) -> (u64, u64) {
        (self.x[0], self.z[0])
    }

    pub fn n_qubits(&self) -> usize {
        self.n
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn with_sign(mut self, sign: Sign) -> Self {
        self.sign = sign;
        self
    }

    pub fn negated(mut self) -> Self {
        self.sign = self.sign.flip();
        self
    }

    /// Same masks with sign `+1`.
    pub fn unsigned(&self) -> Self {
        self.clone().with_sign(Sign::Plus)
    }

    pub fn get(&self, qubit: usize) -> Pauli {
        assert!(qubit < self.n, "qubit {qubit} out of range for {}", self.n);
        let (w, b) = (qubit / 64, qubit % 64);
        Pauli::from_bits((self.x[w] >> b) & 1 == 1, (self.z[w] >> b) & 1 == 1)
    }

    pub fn set(&mut self, qubit: usize, p: Pauli) {
        assert!(qubit < self.n, "qubit {qubit} out of range for {}", self.n);
        let (w, b) = (qubit / 64, qubit % 64);
        let (xb, zb) = p.bits();
        let mask = 1u64 << b;
        self.x[w] = (self.x[w] & !mask) | if xb { mask } else { 0 };
        self.z[w] = (self.z[w] & !mask) | if zb { mask } else { 0 };
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&w| w == 0)
    }

    /// Number of non-identity tensor factors.
    pub fn weight(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x | z).count_ones() as usize)
            .sum()
    }

    pub fn y_count(&self) -> usize {
        self.x
            .iter()
            .zip(&self.z)
            .map(|(x, z)| (x & z).count_ones() as usize)
            .sum()
    }

    /// Hermitian iff the number of `Y` factors is even.
    pub fn is_hermitian(&self) -> bool {
        self.y_count().is_multiple_of(2)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&q| self.get(q) != Pauli::I).collect()
    }

    fn check_len(&self, other: &PauliOperator) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            })
        }
    }

    /// Group product `self · other`.
    pub fn multiply(&self, other: &PauliOperator) -> Result<PauliOperator> {
        self.check_len(other)?;
        // X^a Z^b X^c Z^d = (-1)^{b·c} X^{a+c} Z^{b+d}
        let swaps: u32 = self
            .z
            .iter()
            .zip(&other.x)
            .map(|(z, x)| (z & x).count_ones())
            .sum();
        let x = self.x.iter().zip(&other.x).map(|(a, b)| a ^ b).collect();
        let z = self.z.iter().zip(&other.z).map(|(a, b)| a ^ b).collect();
        Ok(PauliOperator {
            n: self.n,
            x,
            z,
            sign: self
                .sign
                .times(other.sign)
                .times(Sign::from_parity(swaps % 2 == 1)),
        })
    }

    /// Symplectic inner product is zero. Signs are irrelevant.
    pub fn commutes(&self, other: &PauliOperator) -> Result<bool> {
        self.check_len(other)?;
        Ok(!self.anticommutes_unchecked(other))
    }

    pub(crate) fn anticommutes_unchecked(&self, other: &PauliOperator) -> bool {
        let mut acc = 0u32;
        for i in 0..self.x.len() {
            acc ^= (self.x[i] & other.z[i]).count_ones() ^ (self.z[i] & other.x[i]).count_ones();
        }
        acc & 1 == 1
    }

    /// Pads with identities (or truncates identity-only tail) to `n` qubits.
    pub fn resized(&self, n: usize) -> Result<PauliOperator> {
        let mut out = PauliOperator::identity(n).with_sign(self.sign);
        for q in 0..self.n {
            let p = self.get(q);
            if q >= n {
                if p != Pauli::I {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        found: self.n,
                    });
                }
            } else {
                out.set(q, p);
            }
        }
        Ok(out)
    }

    /// The operator restricted to qubits `range`, keeping the sign.
    pub fn restrict(&self, range: std::ops::Range<usize>) -> PauliOperator {
        let mut out = PauliOperator::identity(range.len()).with_sign(self.sign);
        for (i, q) in range.enumerate() {
            out.set(i, self.get(q));
        }
        out
    }

    /// Symplectic row `[x | z]` of length `2n`.
    pub fn symplectic_row(&self) -> BitRow {
        let mut row = BitRow::zeros(2 * self.n);
        for q in 0..self.n {
            let (xb, zb) = self.get(q).bits();
            row.set(q, xb);
            row.set(self.n + q, zb);
        }
        row
    }

    pub fn from_symplectic_row(row: &BitRow) -> PauliOperator {
        let n = row.len() / 2;
        let mut op = PauliOperator::identity(n);
        for q in 0..n {
            op.set(q, Pauli::from_bits(row.get(q), row.get(n + q)));
        }
        op
    }

    /// Masks in basis-index order: qubit 0 is the most significant bit.
    pub(crate) fn index_masks(&self) -> (usize, usize) {
        let mut xm = 0usize;
        let mut zm = 0usize;
        for q in 0..self.n {
            let (xb, zb) = self.get(q).bits();
            let bit = 1usize << (self.n - 1 - q);
            if xb {
                xm |= bit;
            }
            if zb {
                zm |= bit;
            }
        }
        (xm, zm)
    }

    /// Dense `2^n × 2^n` matrix. Qubit 0 is the leftmost tensor factor.
    pub fn to_matrix(&self) -> Result<DMatrix<Complex64>> {
        self.to_matrix_capped(MATRIX_QUBIT_CAP)
    }

    pub fn to_matrix_capped(&self, cap: usize) -> Result<DMatrix<Complex64>> {
        if self.n > cap {
            return Err(Error::CapExceeded {
                what: "pauli matrix",
                requested: self.n,
                cap,
            });
        }
        let dim = 1usize << self.n;
        let (xm, zm) = self.index_masks();
        let s = self.sign.value();
        let mut m = DMatrix::zeros(dim, dim);
        for col in 0..dim {
            let phase = if (col & zm).count_ones() % 2 == 1 { -s } else { s };
            m[(col ^ xm, col)] = Complex64::new(phase, 0.0);
        }
        Ok(m)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Minus {
            f.write_str("-")?;
        }
        for q in 0..self.n {
            write!(f, "{}", self.get(q).as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOperator({self})")
    }
}

impl FromStr for PauliOperator {
    type Err = Error;

    /// Accepts `[+-]?[IXYZ1]+`; `1` is read as identity.
    fn from_str(s: &str) -> Result<Self> {
        let (sign, body) = match s.as_bytes().first() {
            Some(b'-') => (Sign::Minus, &s[1..]),
            Some(b'+') => (Sign::Plus, &s[1..]),
            _ => (Sign::Plus, s),
        };
        if body.is_empty() {
            return Err(Error::Parse(format!("empty Pauli string {s:?}")));
        }
        let paulis = body
            .chars()
            .map(|c| match c {
                'I' | '1' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(Error::Parse(format!("bad Pauli symbol {other:?} in {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PauliOperator::from_paulis(&paulis).with_sign(sign))
    }
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Iterates all `4^n` unsigned Paulis on `n <= 31` qubits.
pub fn all_paulis(n: usize) -> impl Iterator<Item = PauliOperator> {
    assert!(n <= 31);
    (0u64..1u64 << (2 * n)).map(move |i| {
        let x = i & ((1 << n) - 1);
        let z = i >> n;
        PauliOperator::from_u64_masks(n, x, z)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliOperator {
        s.parse().unwrap()
    }

    #[test]
    fn xy_is_z() {
        assert_eq!(p("X").multiply(&p("Y")).unwrap(), p("Z"));
        assert_eq!(p("Y").multiply(&p("X")).unwrap(), p("-Z"));
        assert_eq!(p("Y").multiply(&p("Y")).unwrap(), p("-I"));
    }

    #[test]
    fn identity_is_neutral() {
        for q in ["I", "X", "Y", "Z", "-Y"] {
            assert_eq!(p("I").multiply(&p(q)).unwrap(), p(q));
        }
    }

    #[test]
    fn commutation_examples() {
        assert!(!p("X").commutes(&p("Z")).unwrap());
        assert!(p("XIX").commutes(&p("ZYY")).unwrap());
        assert!(p("-ZYY").commutes(&p("ZYY")).unwrap());
    }

    #[test]
    fn weights() {
        assert_eq!(p("III").weight(), 0);
        assert_eq!(p("Z1Z").weight(), 2);
        assert_eq!(p("XYZ").weight(), 3);
    }

    #[test]
    fn length_mismatch_is_an_error() {
        assert!(matches!(
            p("XX").multiply(&p("X")),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(p("XX").commutes(&p("XXX")).is_err());
    }

    #[test]
    fn text_round_trip() {
        for s in ["-ZYY", "XIXZZ", "I", "-I", "YYYYYYYY"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert_eq!(p("Z1Z"), p("ZIZ"));
        assert!("XQ".parse::<PauliOperator>().is_err());
        assert!("-".parse::<PauliOperator>().is_err());
    }

    #[test]
    fn y_matrix_is_minus_i_sigma_y() {
        let m = p("Y").to_matrix().unwrap();
        assert_eq!(m[(0, 0)], Complex64::new(0.0, 0.0));
        assert_eq!(m[(0, 1)], Complex64::new(-1.0, 0.0));
        assert_eq!(m[(1, 0)], Complex64::new(1.0, 0.0));
    }

    #[test]
    fn matrix_cap_enforced() {
        let big = PauliOperator::identity(13);
        assert!(matches!(big.to_matrix(), Err(Error::CapExceeded { .. })));
        assert!(big.to_matrix_capped(2).is_err());
    }

    #[test]
    fn wide_operators_stay_inline() {
        let mut a = PauliOperator::identity(100);
        a.set(70, Pauli::X);
        a.set(99, Pauli::Z);
        let b = PauliOperator::single(100, 70, Pauli::Z);
        assert!(!a.commutes(&b).unwrap());
        assert_eq!(a.multiply(&b).unwrap().get(70), Pauli::Y);
        assert_eq!(a.weight(), 2);
        assert!(!a.x.spilled());
    }

    #[test]
    fn symplectic_row_round_trip() {
        let a = p("XYZI");
        assert_eq!(PauliOperator::from_symplectic_row(&a.symplectic_row()), a);
    }
}
