//! Stabilizer codes: validation, syndromes, coset classification, distance.
//!
//! A generator `g` is read through its Hermitian lift: `g` itself when it has
//! an even number of `Y` factors, `i·g` otherwise. With independent commuting
//! generators the lifted group never contains `-I`.

use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::gf2::{self, BitRow, Echelon};
use crate::pauli::{Pauli, PauliOperator};

pub const NORMALIZER_ENUM_CAP: usize = 6;
pub const DISTANCE_ENUM_CAP: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilizerCode {
    pub n: usize,
    pub k: usize,
    pub generators: Vec<PauliOperator>,
    /// Interleaved pairs `[X̄_1, Z̄_1, X̄_2, Z̄_2, ...]`.
    pub logical_ops: Vec<PauliOperator>,
}

/// First invariant a code fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Length { which: String, found: usize },
    GeneratorCount { expected: usize, found: usize },
    LogicalCount { expected: usize, found: usize },
    Anticommuting { first: usize, second: usize },
    Dependent { index: usize },
    LogicalAnticommutesWithGenerator { logical: usize, generator: usize },
    LogicalPairing { first: usize, second: usize },
    LogicalInGroup { index: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Length { which, found } => write!(f, "{which} has {found} qubits"),
            Violation::GeneratorCount { expected, found } => {
                write!(f, "expected {expected} generators, found {found}")
            }
            Violation::LogicalCount { expected, found } => {
                write!(f, "expected {expected} logical operators, found {found}")
            }
            Violation::Anticommuting { first, second } => {
                write!(f, "generators {first} and {second} anticommute")
            }
            Violation::Dependent { index } => {
                write!(f, "generator {index} is dependent on earlier generators")
            }
            Violation::LogicalAnticommutesWithGenerator { logical, generator } => {
                write!(f, "logical {logical} anticommutes with generator {generator}")
            }
            Violation::LogicalPairing { first, second } => {
                write!(f, "logicals {first} and {second} break the canonical pairing")
            }
            Violation::LogicalInGroup { index } => {
                write!(f, "logical {index} lies in the span of the stabilizer and earlier logicals")
            }
        }
    }
}

/// Commutation pattern against the generators: bit `i` set iff anticommuting with `g_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syndrome {
    len: usize,
    words: SmallVec<[u64; 1]>,
}

impl Syndrome {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: SmallVec::from_elem(0, len.div_ceil(64).max(1)),
        }
    }

    pub fn from_u64(len: usize, bits: u64) -> Self {
        assert!(len <= 64);
        let mut s = Self::zeros(len);
        s.words[0] = bits;
        s
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        let m = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= m;
        } else {
            self.words[i / 64] &= !m;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor(&self, other: &Syndrome) -> Syndrome {
        assert_eq!(self.len, other.len);
        Syndrome {
            len: self.len,
            words: self.words.iter().zip(&other.words).map(|(a, b)| a ^ b).collect(),
        }
    }

    /// Packed value when at most 64 bits long.
    pub fn as_u64(&self) -> Option<u64> {
        (self.len <= 64).then(|| self.words[0])
    }
}

impl fmt::Display for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    Stabilizer,
    /// Logical action on the `k` encoded qubits, sign discarded.
    Logical(PauliOperator),
    OutsideNormalizer,
}

impl StabilizerCode {
    pub fn new(
        n: usize,
        k: usize,
        generators: Vec<PauliOperator>,
        logical_ops: Vec<PauliOperator>,
    ) -> Result<Self> {
        let code = Self {
            n,
            k,
            generators,
            logical_ops,
        };
        code.validate()
            .map_err(|v| Error::InvalidCode(v.to_string()))?;
        Ok(code)
    }

    pub fn from_strings(n: usize, k: usize, generators: &[&str], logical_ops: &[&str]) -> Result<Self> {
        let parse = |v: &[&str]| v.iter().map(|s| s.parse()).collect::<Result<Vec<PauliOperator>>>();
        Self::new(n, k, parse(generators)?, parse(logical_ops)?)
    }

    /// Builds a code from generators alone, completing the logical operators
    /// by symplectic Gram-Schmidt on the normalizer modulo the stabilizer.
    pub fn from_generators(n: usize, generators: Vec<PauliOperator>) -> Result<Self> {
        for g in &generators {
            if g.n_qubits() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: g.n_qubits(),
                });
            }
        }
        let k = n
            .checked_sub(generators.len())
            .ok_or_else(|| Error::InvalidCode(format!("{} generators on {n} qubits", generators.len())))?;
        let logical_ops = symplectic_completion(n, &generators)?;
        Self::new(n, k, generators, logical_ops)
    }

    pub fn n_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn logical_x(&self, i: usize) -> &PauliOperator {
        &self.logical_ops[2 * i]
    }

    pub fn logical_z(&self, i: usize) -> &PauliOperator {
        &self.logical_ops[2 * i + 1]
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    /// Checks every structural invariant, naming the first violated pair.
    pub fn validate(&self) -> std::result::Result<(), Violation> {
        for (i, g) in self.generators.iter().enumerate() {
            if g.n_qubits() != self.n {
                return Err(Violation::Length {
                    which: format!("generator {i}"),
                    found: g.n_qubits(),
                });
            }
        }
        for (i, l) in self.logical_ops.iter().enumerate() {
            if l.n_qubits() != self.n {
                return Err(Violation::Length {
                    which: format!("logical {i}"),
                    found: l.n_qubits(),
                });
            }
        }
        if self.k > self.n || self.generators.len() != self.n - self.k {
            return Err(Violation::GeneratorCount {
                expected: self.n.saturating_sub(self.k),
                found: self.generators.len(),
            });
        }
        if self.logical_ops.len() != 2 * self.k {
            return Err(Violation::LogicalCount {
                expected: 2 * self.k,
                found: self.logical_ops.len(),
            });
        }
        for i in 0..self.generators.len() {
            for j in i + 1..self.generators.len() {
                if self.generators[i].anticommutes_unchecked(&self.generators[j]) {
                    return Err(Violation::Anticommuting { first: i, second: j });
                }
            }
        }
        // Independence also rules out -I: only the empty product has identity masks.
        let mut span = Echelon::new();
        for (i, g) in self.generators.iter().enumerate() {
            if !span.insert(&g.symplectic_row()) {
                return Err(Violation::Dependent { index: i });
            }
        }
        for (li, l) in self.logical_ops.iter().enumerate() {
            for (gi, g) in self.generators.iter().enumerate() {
                if l.anticommutes_unchecked(g) {
                    return Err(Violation::LogicalAnticommutesWithGenerator {
                        logical: li,
                        generator: gi,
                    });
                }
            }
        }
        for a in 0..self.logical_ops.len() {
            for b in a + 1..self.logical_ops.len() {
                let paired = a / 2 == b / 2;
                if self.logical_ops[a].anticommutes_unchecked(&self.logical_ops[b]) != paired {
                    return Err(Violation::LogicalPairing { first: a, second: b });
                }
            }
        }
        for (li, l) in self.logical_ops.iter().enumerate() {
            if !span.insert(&l.symplectic_row()) {
                return Err(Violation::LogicalInGroup { index: li });
            }
        }
        Ok(())
    }

    fn check_error(&self, error: &PauliOperator) -> Result<()> {
        if error.n_qubits() == self.n {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: error.n_qubits(),
            })
        }
    }

    pub fn syndrome(&self, error: &PauliOperator) -> Result<Syndrome> {
        self.check_error(error)?;
        let mut s = Syndrome::zeros(self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            if g.anticommutes_unchecked(error) {
                s.set(i, true);
            }
        }
        Ok(s)
    }

    /// Logical action bits of an error: `(x_i, z_i)` with `x_i` from `Z̄_i`
    /// and `z_i` from `X̄_i` anticommutation.
    pub fn logical_action(&self, error: &PauliOperator) -> Result<PauliOperator> {
        self.check_error(error)?;
        let mut g = PauliOperator::identity(self.k);
        for i in 0..self.k {
            let xb = error.anticommutes_unchecked(self.logical_z(i));
            let zb = error.anticommutes_unchecked(self.logical_x(i));
            g.set(i, Pauli::from_bits(xb, zb));
        }
        Ok(g)
    }

    pub fn classify(&self, error: &PauliOperator) -> Result<ErrorClass> {
        if !self.syndrome(error)?.is_zero() {
            return Ok(ErrorClass::OutsideNormalizer);
        }
        let action = self.logical_action(error)?;
        Ok(if action.is_identity() {
            ErrorClass::Stabilizer
        } else {
            ErrorClass::Logical(action)
        })
    }

    /// Number of unsigned Paulis with zero syndrome, by exhaustive enumeration.
    pub fn normalizer_count(&self) -> Result<u64> {
        if self.n > NORMALIZER_ENUM_CAP {
            return Err(Error::CapExceeded {
                what: "normalizer enumeration",
                requested: self.n,
                cap: NORMALIZER_ENUM_CAP,
            });
        }
        let packed = PackedCode::new(self)?;
        let mut count = 0u64;
        for i in 0u64..1 << (2 * self.n) {
            let (x, z) = (i & ((1 << self.n) - 1), i >> self.n);
            if packed.syndrome(x, z) == 0 {
                count += 1;
            }
        }
        Ok(count)
    }

    /// `|N(S)| = 4^k · |S|` with `|S| = 2^(n-k)`.
    pub fn normalizer_count_check(&self) -> Result<bool> {
        let expected = 4u64.pow(self.k as u32) * 2u64.pow((self.n - self.k) as u32);
        Ok(self.normalizer_count()? == expected)
    }

    /// Minimum weight of an element of `N(S) \ S`, searched by increasing weight.
    pub fn distance(&self) -> Result<usize> {
        if self.n > DISTANCE_ENUM_CAP {
            return Err(Error::CapExceeded {
                what: "distance enumeration",
                requested: self.n,
                cap: DISTANCE_ENUM_CAP,
            });
        }
        if self.k == 0 {
            return Err(Error::InvalidCode("k = 0 code has no logical operators".into()));
        }
        let packed = PackedCode::new(self)?;
        for w in 1..=self.n {
            let mut found = false;
            for_each_weight(self.n, w, |x, z| {
                if !found && packed.syndrome(x, z) == 0 && packed.logical(x, z) != 0 {
                    found = true;
                }
            });
            if found {
                return Ok(w);
            }
        }
        unreachable!("a valid code with k > 0 has a logical operator of weight <= n")
    }

    /// All `2^(n-k)` elements of the stabilizer group as unsigned Paulis.
    pub fn stabilizer_elements(&self) -> Result<Vec<PauliOperator>> {
        let r = self.generators.len();
        if r > 20 {
            return Err(Error::CapExceeded {
                what: "stabilizer enumeration",
                requested: r,
                cap: 20,
            });
        }
        let mut out = Vec::with_capacity(1 << r);
        for mask in 0u64..1 << r {
            let mut e = PauliOperator::identity(self.n);
            for (i, g) in self.generators.iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    e = e.multiply(g)?;
                }
            }
            out.push(e);
        }
        Ok(out)
    }
}

/// Visits every `(x, z)` mask pair of weight exactly `w` on `n` qubits.
pub(crate) fn for_each_weight(n: usize, w: usize, mut f: impl FnMut(u64, u64)) {
    fn rec(n: usize, start: usize, left: usize, x: u64, z: u64, f: &mut dyn FnMut(u64, u64)) {
        if left == 0 {
            f(x, z);
            return;
        }
        for q in start..=n - left {
            let b = 1u64 << q;
            rec(n, q + 1, left - 1, x | b, z, f);
            rec(n, q + 1, left - 1, x | b, z | b, f);
            rec(n, q + 1, left - 1, x, z | b, f);
        }
    }
    if w <= n {
        rec(n, 0, w, 0, 0, &mut f);
    }
}

/// Generator and logical masks packed into `u64` words (qubit `q` at bit `q`).
#[derive(Clone, Debug)]
pub struct PackedCode {
    pub n: usize,
    gens: Vec<(u64, u64)>,
    logicals: Vec<(u64, u64)>,
}

#[inline]
fn anti(a: (u64, u64), x: u64, z: u64) -> u64 {
    (((a.0 & z).count_ones() ^ (a.1 & x).count_ones()) & 1) as u64
}

impl PackedCode {
    pub fn new(code: &StabilizerCode) -> Result<Self> {
        if code.n > 64 || code.generators.len() > 64 || code.logical_ops.len() > 64 {
            return Err(Error::CapExceeded {
                what: "packed code",
                requested: code.n,
                cap: 64,
            });
        }
        Ok(Self {
            n: code.n,
            gens: code.generators.iter().map(|g| g.u64_masks()).collect(),
            logicals: code.logical_ops.iter().map(|g| g.u64_masks()).collect(),
        })
    }

    pub fn n_generators(&self) -> usize {
        self.gens.len()
    }

    #[inline]
    pub fn syndrome(&self, x: u64, z: u64) -> u64 {
        self.gens
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &g)| acc | (anti(g, x, z) << i))
    }

    /// Anticommutation bits against each logical operator in stored order.
    #[inline]
    pub fn logical(&self, x: u64, z: u64) -> u64 {
        self.logicals
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &g)| acc | (anti(g, x, z) << i))
    }
}

fn symplectic_completion(n: usize, generators: &[PauliOperator]) -> Result<Vec<PauliOperator>> {
    let gen_rows: Vec<BitRow> = generators.iter().map(|g| g.symplectic_row()).collect();
    if gf2::rank(&gen_rows) != gen_rows.len() {
        return Err(Error::InvalidCode("generators are dependent".into()));
    }
    // v commutes with g  <=>  v · swap(g) = 0
    let swapped: Vec<BitRow> = gen_rows
        .iter()
        .map(|r| r.slice(n, 2 * n).concat(&r.slice(0, n)))
        .collect();
    let normalizer = gf2::null_space(&swapped, 2 * n);

    let mut span = Echelon::new();
    for r in &gen_rows {
        span.insert(r);
    }
    let mut reps: Vec<BitRow> = Vec::new();
    for v in normalizer {
        if span.insert(&v) {
            reps.push(v);
        }
    }

    let mut logicals = Vec::new();
    while let Some(a) = reps.first().cloned() {
        let Some(pos) = reps.iter().position(|b| a.symplectic(b)) else {
            return Err(Error::InvalidCode("generators do not pairwise commute".into()));
        };
        let b = reps.remove(pos);
        reps.remove(0);
        for r in reps.iter_mut() {
            let with_b = r.symplectic(&b);
            let with_a = r.symplectic(&a);
            if with_b {
                r.xor_assign(&a);
            }
            if with_a {
                r.xor_assign(&b);
            }
        }
        logicals.push(PauliOperator::from_symplectic_row(&a));
        logicals.push(PauliOperator::from_symplectic_row(&b));
    }
    Ok(logicals)
}

/// Unassisted three-qubit repetition code `{ZZI, IZZ}` with `X̄ = XXX`, `Z̄ = ZII`.
pub fn repetition_code() -> StabilizerCode {
    StabilizerCode::from_strings(3, 1, &["ZZI", "IZZ"], &["XXX", "ZII"]).expect("valid code")
}

/// The `[[5,1,3]]` code in its cyclic presentation.
pub fn five_qubit_code() -> StabilizerCode {
    StabilizerCode::from_strings(
        5,
        1,
        &["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"],
        &["XXXXX", "ZZZZZ"],
    )
    .expect("valid code")
}
