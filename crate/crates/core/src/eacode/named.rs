//! Worked examples: the assisted repetition code, the five-qubit code grown
//! from two e-bits, and the teleportation code.

use num_complex::Complex64;

use super::{codewords, knill_laflamme, reconstruct_code, EACode, StateVector};
use crate::error::{Error, Result};
use crate::pauli::{all_paulis, Pauli, PauliOperator, Sign};
use crate::stabilizer::StabilizerCode;

fn p(s: &str) -> PauliOperator {
    s.parse().expect("literal Pauli")
}

/// Repetition code with both ancillas replaced by e-bit halves.
///
/// Qubit order is `A1 A2 A3 B1 B2`. The message sits on `A1`; `A2`, `A3`
/// are copies of it XOR-ed with the labels held on `B1`, `B2`.
pub fn three_qubit_ea() -> EACode {
    let code = StabilizerCode::from_strings(
        5,
        1,
        &["ZZIZI", "ZIZIZ", "IXIXI", "IIXIX"],
        &["XXXII", "ZIIII"],
    )
    .expect("valid code");
    EACode::new(3, 1, 2, 0, code).expect("valid EA code")
}

/// Up to one bit flip on the sent qubits, times any phase pattern on qubits 2 and 3.
pub fn three_qubit_ea_error_set() -> Vec<PauliOperator> {
    let flips = ["III", "XII", "IXI", "IIX"];
    let phases = ["III", "IZI", "IIZ", "IZZ"];
    let mut out = Vec::with_capacity(16);
    for f in flips {
        for ph in phases {
            out.push(p(f).multiply(&p(ph)).expect("same length"));
        }
    }
    out
}

/// `α/2 Σ_b |0, b⟩_A |b⟩_B + β/2 Σ_b |1, b̄⟩_A |b⟩_B` written out term by term.
pub fn three_qubit_ea_codeword(alpha: Complex64, beta: Complex64) -> Result<StateVector> {
    let mut amps = vec![Complex64::new(0.0, 0.0); 32];
    for b in 0..4usize {
        amps[b << 2 | b] += alpha * 0.5;
        amps[(0b100 | (b ^ 0b11)) << 2 | b] += beta * 0.5;
    }
    StateVector::new(amps)
}

/// Signs picked up by each component `|0, b⟩_A |b⟩_B` of the logical zero
/// under the unassisted repetition-code stabilizer `{III, ZIZ, IZZ, ZZI}`.
pub fn three_qubit_phase_table() -> Result<Vec<(PauliOperator, [i8; 4])>> {
    let zero = three_qubit_ea_codeword(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))?;
    let mut table = Vec::new();
    for s in ["III", "ZIZ", "IZZ", "ZZI"] {
        let op = p(s);
        let image = zero.apply_pauli(&op.resized(5)?)?;
        let mut signs = [0i8; 4];
        for (b, sign) in signs.iter_mut().enumerate() {
            let idx = b << 2 | b;
            *sign = if image.amplitudes()[idx].re > 0.0 { 1 } else { -1 };
        }
        table.push((op, signs));
    }
    Ok(table)
}

/// Three-qubit basis change producing the five-qubit code: row `i` lists the
/// (unnormalized, factor 1/2) image of `|i⟩` over the output basis `|000⟩ .. |111⟩`.
pub const FIVE_QUBIT_BASIS_CHANGE: [[i8; 8]; 8] = [
    [1, 0, 0, -1, 0, 1, -1, 0],
    [0, 1, 1, 0, -1, 0, 0, -1],
    [0, -1, 1, 0, 1, 0, 0, -1],
    [-1, 0, 0, -1, 0, -1, -1, 0],
    [0, -1, -1, 0, -1, 0, 0, -1],
    [-1, 0, 0, 1, 0, 1, -1, 0],
    [-1, 0, 0, -1, 0, 1, 1, 0],
    [0, -1, 1, 0, -1, 0, 0, 1],
];

fn basis_change_unitary() -> Vec<Vec<Complex64>> {
    let mut u = vec![vec![Complex64::new(0.0, 0.0); 8]; 8];
    for (input, row) in FIVE_QUBIT_BASIS_CHANGE.iter().enumerate() {
        for (output, &v) in row.iter().enumerate() {
            u[output][input] = Complex64::new(v as f64 * 0.5, 0.0);
        }
    }
    u
}

/// A sender-side operator that, completed by a Pauli on the receiver halves,
/// fixes the codespace.
#[derive(Clone, Debug, PartialEq)]
pub struct UnassistedElement {
    pub sender_op: PauliOperator,
    pub receiver_completion: PauliOperator,
    /// Eigenvalue of the Hermitian lift of `sender_op ⊗ receiver_completion`.
    pub sign: Sign,
    /// `sender_op` alone maps the codespace to an orthogonal subspace.
    pub orthogonal_alone: bool,
}

#[derive(Clone, Debug)]
pub struct FiveQubitReconstruction {
    pub codewords: [StateVector; 2],
    pub code: StabilizerCode,
    pub unassisted: Vec<UnassistedElement>,
}

/// Applies the basis change to `|k⟩_A ⊗ |Ψ+⟩ ⊗ |Ψ+⟩` for `k ∈ {0, 1}` (qubit
/// order `A1 A2 A3 B1 B2`, e-bits on `A2B1` and `A3B2`), then rebuilds the
/// stabilizer code and checks that it corrects every single-qubit error.
pub fn five_qubit_from_basis_change() -> Result<FiveQubitReconstruction> {
    let u = basis_change_unitary();
    let mut words = Vec::with_capacity(2);
    for k in 0..2usize {
        let mut amps = vec![Complex64::new(0.0, 0.0); 32];
        for b1 in 0..2usize {
            for b2 in 0..2usize {
                let idx = k << 4 | b1 << 3 | b2 << 2 | b1 << 1 | b2;
                amps[idx] = Complex64::new(0.5, 0.0);
            }
        }
        words.push(StateVector::new(amps)?.apply_leading(3, &u)?);
    }
    let code = reconstruct_code(&words)?;

    let mut unassisted = Vec::new();
    for s in ["XIX", "ZYY", "YYZ"] {
        unassisted.push(unassisted_element(&p(s), &words)?);
    }

    let recon = FiveQubitReconstruction {
        codewords: [words[0].clone(), words[1].clone()],
        code,
        unassisted,
    };
    if !recon.orthogonal_error_subspaces()? {
        return Err(Error::Verification(
            "single-qubit errors do not map the codespace to orthogonal subspaces".into(),
        ));
    }
    Ok(recon)
}

fn unassisted_element(sender_op: &PauliOperator, words: &[StateVector]) -> Result<UnassistedElement> {
    let orthogonal_alone = {
        let mut all_zero = true;
        for ci in words {
            for cj in words {
                let v = cj.apply_pauli(&sender_op.resized(5)?)?;
                all_zero &= ci.inner(&v).norm() < 1e-9;
            }
        }
        all_zero
    };
    for receiver in all_paulis(2) {
        let mut full = sender_op.resized(5)?;
        full.set(3, receiver.get(0));
        full.set(4, receiver.get(1));
        if let Some(lambda) = super::common_eigenvalue(&full, words)? {
            return Ok(UnassistedElement {
                sender_op: sender_op.clone(),
                receiver_completion: receiver,
                sign: super::hermitian_sign(&full, lambda),
                orthogonal_alone,
            });
        }
    }
    Err(Error::Verification(format!(
        "{sender_op} has no receiver completion fixing the codespace"
    )))
}

impl FiveQubitReconstruction {
    /// The identity plus the 15 single-qubit Paulis on five qubits.
    pub fn single_error_set() -> Vec<PauliOperator> {
        let mut out = vec![PauliOperator::identity(5)];
        for q in 0..5 {
            for pauli in [Pauli::X, Pauli::Y, Pauli::Z] {
                out.push(PauliOperator::single(5, q, pauli));
            }
        }
        out
    }

    /// `⟨c_i|E_a† E_b|c_j⟩ = δ_ab δ_ij` over the 16 single-error classes.
    pub fn orthogonal_error_subspaces(&self) -> Result<bool> {
        let errors = Self::single_error_set();
        let images = errors
            .iter()
            .map(|e| self.codewords.iter().map(|c| c.apply_pauli(e)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        for a in 0..errors.len() {
            for b in 0..errors.len() {
                for i in 0..2 {
                    for j in 0..2 {
                        let v = images[a][i].inner(&images[b][j]);
                        let expected = if a == b && i == j { 1.0 } else { 0.0 };
                        if (v - Complex64::new(expected, 0.0)).norm() > 1e-9 {
                            return Ok(false);
                        }
                    }
                }
            }
        }
        Ok(true)
    }

    /// The same code read as an assisted code on three sent qubits.
    pub fn ea_code(&self) -> Result<EACode> {
        EACode::new(3, 1, 2, 0, self.code.clone())
    }
}

/// Teleportation code on two label qubits plus the receiver's half.
///
/// Codeword: `(|00⟩|ψ⟩ + |01⟩X|ψ⟩ + |10⟩Y|ψ⟩ + |11⟩Z|ψ⟩) / 2` with `Y = XZ`.
/// The labels are sent; the receiver measures them and applies
/// `V = Σ_l |l⟩⟨l| ⊗ σ_l` with `σ = (I, σ_x, σ_y, σ_z)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct TeleportCode;

impl TeleportCode {
    pub const LABEL_QUBITS: usize = 2;

    pub fn new() -> Self {
        TeleportCode
    }

    /// One message qubit per two channel uses.
    pub fn rate(&self) -> f64 {
        0.5
    }

    fn label_ops() -> [PauliOperator; 4] {
        [p("I"), p("X"), p("Y"), p("Z")]
    }

    pub fn encode(&self, psi: &StateVector) -> Result<StateVector> {
        if psi.qubits() != 1 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: psi.qubits(),
            });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 8];
        for (label, op) in Self::label_ops().iter().enumerate() {
            let branch = psi.apply_pauli(op)?;
            for (r, a) in branch.amplitudes().iter().enumerate() {
                amps[label << 1 | r] += a * 0.5;
            }
        }
        StateVector::new(amps)
    }

    pub fn codewords(&self) -> Result<Vec<StateVector>> {
        [0, 1]
            .into_iter()
            .map(|k| self.encode(&StateVector::basis(1, k)?))
            .collect()
    }

    /// Applies a Pauli error on the two label qubits.
    pub fn apply_channel_error(&self, state: &StateVector, error: &PauliOperator) -> Result<StateVector> {
        if error.n_qubits() != Self::LABEL_QUBITS {
            return Err(Error::DimensionMismatch {
                expected: Self::LABEL_QUBITS,
                found: error.n_qubits(),
            });
        }
        state.apply_pauli(&error.resized(3)?)
    }

    /// Measures the labels and applies the conditional correction; returns
    /// `(outcome, probability, receiver state)` per branch.
    pub fn decode(&self, state: &StateVector) -> Result<Vec<(usize, f64, StateVector)>> {
        let corrections = Self::label_ops();
        state
            .measure_leading(Self::LABEL_QUBITS)
            .into_iter()
            .map(|(label, prob, branch)| Ok((label, prob, branch.apply_hermitian(&corrections[label])?)))
            .collect()
    }

    /// Worst-branch fidelity of `decode(error(encode(ψ)))` with `ψ`.
    pub fn round_trip_fidelity(&self, psi: &StateVector, error: &PauliOperator) -> Result<f64> {
        let received = self.apply_channel_error(&self.encode(psi)?, error)?;
        Ok(self
            .decode(&received)?
            .iter()
            .map(|(_, _, out)| out.fidelity(psi))
            .fold(f64::INFINITY, f64::min))
    }

    /// The stabilizer description recovered from the codewords.
    pub fn ea_code(&self) -> Result<EACode> {
        EACode::new(2, 1, 1, 0, reconstruct_code(&self.codewords()?)?)
    }
}

/// Knill-Laflamme check of a named code's claim set against projected codewords.
pub fn oracle_correctable(code: &EACode, errors: &[PauliOperator]) -> Result<bool> {
    let words = codewords(&code.extended_code)?;
    let embedded = errors
        .iter()
        .map(|e| code.embed_error(e))
        .collect::<Result<Vec<_>>>()?;
    knill_laflamme(&words, &embedded)
}
