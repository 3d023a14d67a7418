//! Entanglement-assisted stabilizer codes.
//!
//! An [`EACode`] sends `n_send = k + m + a` qubits through the channel. The
//! receiver already holds the other halves of `m` e-bits; those are modelled
//! as `m` noiseless qubits appended after the sender's, so the whole object is
//! an ordinary [`StabilizerCode`] on `n_send + m` qubits with `2m + a`
//! generators.

mod named;
mod random;
mod state;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{self, BitRow, Echelon};
use crate::pauli::{all_paulis, Pauli, PauliOperator, Sign};
use crate::stabilizer::{ErrorClass, StabilizerCode, Syndrome};

pub use named::{
    five_qubit_from_basis_change, three_qubit_ea, three_qubit_ea_codeword, three_qubit_ea_error_set,
    three_qubit_phase_table, oracle_correctable, FiveQubitReconstruction, TeleportCode, UnassistedElement,
    FIVE_QUBIT_BASIS_CHANGE,
};
pub use random::{random_ea, random_sender_symplectic, SenderSymplectic};
pub use state::{gram_schmidt, StateVector, STATE_QUBIT_CAP};

const ORACLE_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EACode {
    pub n_send: usize,
    pub k: usize,
    pub m: usize,
    pub a: usize,
    pub extended_code: StabilizerCode,
}

/// `|S|` restricted to elements trivial on the receiver halves, and `a / n_send`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Degeneracy {
    pub stabilizer_size: u64,
    pub ratio: f64,
}

impl EACode {
    pub fn new(n_send: usize, k: usize, m: usize, a: usize, extended_code: StabilizerCode) -> Result<Self> {
        let code = Self {
            n_send,
            k,
            m,
            a,
            extended_code,
        };
        code.validate()?;
        Ok(code)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidCode(msg));
        if self.n_send != self.k + self.m + self.a {
            return bad(format!(
                "n_send = {} but k + m + a = {}",
                self.n_send,
                self.k + self.m + self.a
            ));
        }
        if self.extended_code.n != self.n_ext() || self.extended_code.k != self.k {
            return bad(format!(
                "extended code is [[{}, {}]], expected [[{}, {}]]",
                self.extended_code.n,
                self.extended_code.k,
                self.n_ext(),
                self.k
            ));
        }
        if self.extended_code.n_generators() != 2 * self.m + self.a {
            return bad(format!(
                "{} generators, expected 2m + a = {}",
                self.extended_code.n_generators(),
                2 * self.m + self.a
            ));
        }
        self.extended_code
            .validate()
            .map_err(|v| Error::InvalidCode(v.to_string()))
    }

    /// Physical qubits of the extended code: sent qubits plus receiver halves.
    pub fn n_ext(&self) -> usize {
        self.n_send + self.m
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n_send as f64
    }

    /// Lifts a channel error to the extended code. Accepts operators on
    /// `n_send` qubits, or on `n_ext` qubits with no receiver support.
    pub fn embed_error(&self, error: &PauliOperator) -> Result<PauliOperator> {
        if error.n_qubits() == self.n_send {
            return error.resized(self.n_ext());
        }
        if error.n_qubits() == self.n_ext() {
            for q in self.n_send..self.n_ext() {
                if error.get(q) != Pauli::I {
                    return Err(Error::ReceiverSupport { qubit: q });
                }
            }
            return Ok(error.clone());
        }
        Err(Error::DimensionMismatch {
            expected: self.n_send,
            found: error.n_qubits(),
        })
    }

    pub fn syndrome(&self, error: &PauliOperator) -> Result<Syndrome> {
        self.extended_code.syndrome(&self.embed_error(error)?)
    }

    pub fn classify(&self, error: &PauliOperator) -> Result<ErrorClass> {
        self.extended_code.classify(&self.embed_error(error)?)
    }

    /// Every pair with equal syndromes must differ by a stabilizer element.
    pub fn correctable(&self, errors: &[PauliOperator]) -> Result<bool> {
        let embedded = errors
            .iter()
            .map(|e| self.embed_error(e))
            .collect::<Result<Vec<_>>>()?;
        let syndromes = embedded
            .iter()
            .map(|e| self.extended_code.syndrome(e))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..embedded.len() {
            for j in i + 1..embedded.len() {
                if syndromes[i] == syndromes[j] {
                    let product = embedded[i].multiply(&embedded[j])?;
                    if self.extended_code.classify(&product)? != ErrorClass::Stabilizer {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Stabilizer elements acting trivially on the receiver halves, counted
    /// structurally as `2^(r - rank(receiver parts))`.
    pub fn degeneracy_params(&self) -> Degeneracy {
        let receiver_rows: Vec<BitRow> = self
            .extended_code
            .generators
            .iter()
            .map(|g| g.restrict(self.n_send..self.n_ext()).symplectic_row())
            .collect();
        let kernel_dim = self.extended_code.n_generators() - gf2::rank(&receiver_rows);
        Degeneracy {
            stabilizer_size: 1u64 << kernel_dim,
            ratio: self.a as f64 / self.n_send as f64,
        }
    }

    /// Same count as [`degeneracy_params`](Self::degeneracy_params) by listing
    /// the whole stabilizer group.
    pub fn sender_only_stabilizer_count(&self) -> Result<u64> {
        let elements = self.extended_code.stabilizer_elements()?;
        Ok(elements
            .iter()
            .filter(|e| (self.n_send..self.n_ext()).all(|q| e.get(q) == Pauli::I))
            .count() as u64)
    }

    /// Logical basis states `|j̄⟩`, `j` in `0..2^k`, of the extended code.
    pub fn codewords(&self) -> Result<Vec<StateVector>> {
        codewords(&self.extended_code)
    }
}

/// Logical basis of a stabilizer code built by projection: `|0̄⟩` is the joint
/// `+1` eigenstate of the generators and every `Z̄_i`; `|j̄⟩ = Π X̄_i^{j_i} |0̄⟩`.
pub fn codewords(code: &StabilizerCode) -> Result<Vec<StateVector>> {
    if code.n > STATE_QUBIT_CAP {
        return Err(Error::CapExceeded {
            what: "codeword oracle",
            requested: code.n,
            cap: STATE_QUBIT_CAP,
        });
    }
    let mut constraints = code.generators.clone();
    for i in 0..code.k {
        constraints.push(code.logical_z(i).clone());
    }
    let mut zero = None;
    for index in 0..1usize << code.n {
        let v = StateVector::basis(code.n, index)?.project(&constraints)?;
        if v.norm() > 1e-6 {
            zero = Some(StateVector::normalized(v.amplitudes().to_vec())?);
            break;
        }
    }
    let zero = zero.ok_or_else(|| Error::InvalidCode("empty codespace".into()))?;
    let mut out = Vec::with_capacity(1 << code.k);
    for j in 0..1usize << code.k {
        let mut v = zero.clone();
        for i in 0..code.k {
            if (j >> i) & 1 == 1 {
                v = v.apply_pauli(code.logical_x(i))?;
            }
        }
        out.push(v);
    }
    Ok(out)
}

/// Knill-Laflamme check on explicit codewords:
/// `⟨c_i|E_a† E_b|c_j⟩ = M_ab δ_ij` for every pair of errors.
pub fn knill_laflamme(codewords: &[StateVector], errors: &[PauliOperator]) -> Result<bool> {
    let images = errors
        .iter()
        .map(|e| codewords.iter().map(|c| c.apply_pauli(e)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    for a in 0..errors.len() {
        for b in a..errors.len() {
            let m_ab = images[a][0].inner(&images[b][0]);
            for i in 0..codewords.len() {
                for j in 0..codewords.len() {
                    let value = images[a][i].inner(&images[b][j]);
                    let expected = if i == j { m_ab } else { Complex64::new(0.0, 0.0) };
                    if (value - expected).norm() > ORACLE_TOL {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// How an operator acts on a set of codewords.
fn common_eigenvalue(op: &PauliOperator, codewords: &[StateVector]) -> Result<Option<Complex64>> {
    let mut lambda = None;
    for c in codewords {
        let v = c.apply_pauli(op)?;
        let l = c.inner(&v);
        if (l.norm() - 1.0).abs() > ORACLE_TOL {
            return Ok(None);
        }
        match lambda {
            None => lambda = Some(l),
            Some(prev) if (prev - l).norm() > ORACLE_TOL => return Ok(None),
            _ => {}
        }
    }
    Ok(lambda)
}

fn hermitian_sign(op: &PauliOperator, lambda: Complex64) -> Sign {
    let lifted = if op.is_hermitian() {
        lambda
    } else {
        lambda * Complex64::new(0.0, 1.0)
    };
    if lifted.re > 0.0 {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// Recovers a stabilizer code from its `2^k` logical basis states by
/// enumerating every Pauli on `n <= 6` qubits.
pub fn reconstruct_code(codewords: &[StateVector]) -> Result<StabilizerCode> {
    let first = codewords
        .first()
        .ok_or_else(|| Error::InvalidCode("no codewords".into()))?;
    let n = first.qubits();
    if n > 6 {
        return Err(Error::CapExceeded {
            what: "code reconstruction",
            requested: n,
            cap: 6,
        });
    }
    if !codewords.len().is_power_of_two() {
        return Err(Error::InvalidCode(format!("{} codewords", codewords.len())));
    }
    let k = codewords.len().trailing_zeros() as usize;

    let mut candidates: Vec<PauliOperator> = all_paulis(n).collect();
    candidates.sort_by_key(|p| (p.weight(), p.to_string()));

    let mut generators = Vec::new();
    let mut span = Echelon::new();
    let mut z_logicals: Vec<Option<PauliOperator>> = vec![None; k];
    let mut x_logicals: Vec<Option<PauliOperator>> = vec![None; k];
    for p in &candidates {
        if p.is_identity() {
            continue;
        }
        if let Some(lambda) = common_eigenvalue(p, codewords)? {
            if span.insert(&p.symplectic_row()) {
                generators.push(p.clone().with_sign(hermitian_sign(p, lambda)));
            }
            continue;
        }
        for i in 0..k {
            if z_logicals[i].is_none() && is_logical_z(p, i, codewords)? {
                z_logicals[i] = Some(p.clone());
            }
            if x_logicals[i].is_none() && is_logical_x(p, i, codewords)? {
                x_logicals[i] = Some(p.clone());
            }
        }
    }
    let mut logical_ops = Vec::with_capacity(2 * k);
    for i in 0..k {
        let (Some(x), Some(z)) = (x_logicals[i].take(), z_logicals[i].take()) else {
            return Err(Error::InvalidCode(format!("no logical pair for qubit {i}")));
        };
        logical_ops.push(x);
        logical_ops.push(z);
    }
    StabilizerCode::new(n, k, generators, logical_ops)
}

fn is_logical_z(p: &PauliOperator, i: usize, codewords: &[StateVector]) -> Result<bool> {
    let mut lambda: Option<Complex64> = None;
    for (j, c) in codewords.iter().enumerate() {
        let v = c.apply_pauli(p)?;
        let l = c.inner(&v);
        if (l.norm() - 1.0).abs() > ORACLE_TOL {
            return Ok(false);
        }
        let base = if (j >> i) & 1 == 1 { -l } else { l };
        match lambda {
            None => lambda = Some(base),
            Some(prev) if (prev - base).norm() > ORACLE_TOL => return Ok(false),
            _ => {}
        }
    }
    Ok(true)
}

fn is_logical_x(p: &PauliOperator, i: usize, codewords: &[StateVector]) -> Result<bool> {
    for (j, c) in codewords.iter().enumerate() {
        let v = c.apply_pauli(p)?;
        if (codewords[j ^ (1 << i)].inner(&v).norm() - 1.0).abs() > ORACLE_TOL {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Canonical construction: message qubits `0..k`, e-bit halves `k..k+m`,
/// ancillas `k+m..n_send`, receiver halves `n_send..n_send+m`. E-bit `j`
/// contributes `X_{k+j} X_{B_j}` and `Z_{k+j} Z_{B_j}`; ancilla `i` contributes `Z_{k+m+i}`.
pub fn canonical_ea(k: usize, m: usize, a: usize) -> Result<EACode> {
    let n_send = k + m + a;
    if n_send == 0 {
        return Err(Error::Infeasible("k, m and a are all zero".into()));
    }
    let n_ext = n_send + m;
    let mut generators = Vec::with_capacity(2 * m + a);
    for j in 0..m {
        for p in [Pauli::X, Pauli::Z] {
            let mut g = PauliOperator::identity(n_ext);
            g.set(k + j, p);
            g.set(n_send + j, p);
            generators.push(g);
        }
    }
    for i in 0..a {
        generators.push(PauliOperator::single(n_ext, k + m + i, Pauli::Z));
    }
    let mut logical_ops = Vec::with_capacity(2 * k);
    for i in 0..k {
        logical_ops.push(PauliOperator::single(n_ext, i, Pauli::X));
        logical_ops.push(PauliOperator::single(n_ext, i, Pauli::Z));
    }
    EACode::new(n_send, k, m, a, StabilizerCode::new(n_ext, k, generators, logical_ops)?)
}

/// Codes addressable by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedCode {
    ThreeQubitEa,
    FiveQubit,
    Teleport,
}

impl NamedCode {
    pub const ALL: [NamedCode; 3] = [NamedCode::ThreeQubitEa, NamedCode::FiveQubit, NamedCode::Teleport];

    pub fn id(self) -> &'static str {
        match self {
            NamedCode::ThreeQubitEa => "three-qubit-ea",
            NamedCode::FiveQubit => "five-qubit",
            NamedCode::Teleport => "teleport",
        }
    }

    pub fn ea_code(self) -> Result<EACode> {
        match self {
            NamedCode::ThreeQubitEa => Ok(three_qubit_ea()),
            NamedCode::FiveQubit => five_qubit_from_basis_change()?.ea_code(),
            NamedCode::Teleport => TeleportCode::new().ea_code(),
        }
    }
}

impl fmt::Display for NamedCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for NamedCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NamedCode::ALL
            .into_iter()
            .find(|c| c.id() == s)
            .ok_or_else(|| Error::Parse(format!("unknown code id {s:?}")))
    }
}
