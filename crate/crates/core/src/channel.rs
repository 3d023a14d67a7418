//! Single-qubit channel models, Choi states, entropies, and error sampling.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix4};
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{check_prob, Error, Result};
use crate::gf2::BitRow;
use crate::pauli::{Pauli, PauliOperator};

const SUM_TOL: f64 = 1e-12;
const STATE_TOL: f64 = 1e-10;
const ENTROPY_FLOOR: f64 = 1e-14;

/// `ρ ↦ Σ p_σ σ ρ σ` with probabilities ordered `(I, X, Y, Z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliChannel {
    probs: [f64; 4],
}

impl PauliChannel {
    pub fn new(probs: [f64; 4]) -> Result<Self> {
        for (name, &q) in ["p_I", "p_X", "p_Y", "p_Z"].iter().zip(&probs) {
            check_prob(name, q)?;
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::OutOfRange {
                what: "Pauli probability sum",
                value: total,
            });
        }
        Ok(Self { probs })
    }

    pub fn identity() -> Self {
        Self {
            probs: [1.0, 0.0, 0.0, 0.0],
        }
    }

    /// Total error probability `p` split evenly over `X`, `Y`, `Z`.
    pub fn depolarizing(p: f64) -> Result<Self> {
        let p = check_prob("depolarizing p", p)?;
        Self::new([1.0 - p, p / 3.0, p / 3.0, p / 3.0])
    }

    /// `(1 − p) ρ + p Z ρ Z`.
    pub fn dephasing(p: f64) -> Result<Self> {
        let p = check_prob("dephasing p", p)?;
        Self::new([1.0 - p, 0.0, 0.0, p])
    }

    pub fn bit_flip(p: f64) -> Result<Self> {
        let p = check_prob("bit-flip p", p)?;
        Self::new([1.0 - p, p, 0.0, 0.0])
    }

    pub fn probs(&self) -> [f64; 4] {
        self.probs
    }

    pub fn prob(&self, pauli: Pauli) -> f64 {
        self.probs[pauli as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.probs[0] == 1.0
    }

    /// Phase-flip only (`p_X = p_Y = 0`).
    pub fn is_dephasing(&self) -> bool {
        self.probs[1] == 0.0 && self.probs[2] == 0.0
    }

    /// Probability of an `n`-qubit Pauli error under i.i.d. use (sign ignored).
    pub fn error_prob(&self, error: &PauliOperator) -> f64 {
        (0..error.n_qubits()).map(|q| self.prob(error.get(q))).product()
    }

    /// Single-qubit Kraus operators `√p_σ σ` (Hermitian Paulis).
    pub fn kraus(&self) -> Vec<DMatrix<Complex64>> {
        let sigmas = pauli_matrices();
        self.probs
            .iter()
            .zip(sigmas)
            .filter(|(&q, _)| q > 0.0)
            .map(|(&q, s)| s * Complex64::new(q.sqrt(), 0.0))
            .collect()
    }

    /// Samples an i.i.d. error on `n` qubits.
    pub fn sample_error(&self, n: usize, rng: &mut impl Rng) -> PauliOperator {
        let mut op = PauliOperator::identity(n);
        for q in 0..n {
            let u: f64 = rng.random();
            let mut acc = 0.0;
            let mut pick = Pauli::Z;
            for pauli in Pauli::ALL {
                acc += self.prob(pauli);
                if u < acc {
                    pick = pauli;
                    break;
                }
            }
            // Guard against a zero-probability tail pick from rounding in `acc`.
            if self.prob(pick) == 0.0 {
                pick = Pauli::ALL
                    .into_iter()
                    .rev()
                    .find(|&p| self.prob(p) > 0.0)
                    .unwrap_or(Pauli::I);
            }
            op.set(q, pick);
        }
        op
    }
}

/// Each position is independently erased (and flagged) with probability `ε`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErasureChannel {
    epsilon: f64,
}

impl ErasureChannel {
    pub fn new(epsilon: f64) -> Result<Self> {
        Ok(Self {
            epsilon: check_prob("erasure epsilon", epsilon)?,
        })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Kraus operators into a three-level output whose last level flags erasure.
    pub fn kraus(&self) -> Vec<DMatrix<Complex64>> {
        let keep = Complex64::new((1.0 - self.epsilon).sqrt(), 0.0);
        let lose = Complex64::new(self.epsilon.sqrt(), 0.0);
        let zero = Complex64::new(0.0, 0.0);
        vec![
            DMatrix::from_row_slice(3, 2, &[keep, zero, zero, keep, zero, zero]),
            DMatrix::from_row_slice(3, 2, &[zero, zero, zero, zero, lose, zero]),
            DMatrix::from_row_slice(3, 2, &[zero, zero, zero, zero, zero, lose]),
        ]
    }

    /// The erased positions among `n`.
    pub fn sample_erasures(&self, n: usize, rng: &mut impl Rng) -> BitRow {
        let mut row = BitRow::zeros(n);
        for q in 0..n {
            let u: f64 = rng.random();
            if u < self.epsilon {
                row.set(q, true);
            }
        }
        row
    }
}

/// A channel named by a spec string such as `depolarizing:0.1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Channel {
    Depolarizing(f64),
    Dephasing(f64),
    Erasure(f64),
    Pauli([f64; 4]),
}

impl Channel {
    /// The Pauli model, or `None` for erasure.
    pub fn pauli(&self) -> Result<Option<PauliChannel>> {
        match *self {
            Channel::Depolarizing(p) => PauliChannel::depolarizing(p).map(Some),
            Channel::Dephasing(p) => PauliChannel::dephasing(p).map(Some),
            Channel::Pauli(probs) => PauliChannel::new(probs).map(Some),
            Channel::Erasure(_) => Ok(None),
        }
    }

    pub fn erasure(&self) -> Option<ErasureChannel> {
        match *self {
            Channel::Erasure(e) => ErasureChannel::new(e).ok(),
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Channel::Erasure(e) => ErasureChannel::new(e).map(|_| ()),
            _ => self.pauli().map(|_| ()),
        }
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Channel::Depolarizing(p) => write!(f, "depolarizing:{p}"),
            Channel::Dephasing(p) => write!(f, "dephasing:{p}"),
            Channel::Erasure(e) => write!(f, "erasure:{e}"),
            Channel::Pauli([a, b, c, d]) => write!(f, "pauli:{a},{b},{c},{d}"),
        }
    }
}

impl FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("channel spec `{s}` needs the form kind:params")))?;
        let nums = args
            .split(',')
            .map(|v| {
                v.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse(format!("bad number `{v}` in channel spec `{s}`")))
            })
            .collect::<Result<Vec<f64>>>()?;
        let single = || -> Result<f64> {
            match nums.as_slice() {
                [v] => Ok(*v),
                _ => Err(Error::Parse(format!("`{kind}` takes one parameter"))),
            }
        };
        let channel = match kind.trim() {
            "depolarizing" => Channel::Depolarizing(single()?),
            "dephasing" => Channel::Dephasing(single()?),
            "erasure" => Channel::Erasure(single()?),
            "pauli" => match nums.as_slice() {
                [a, b, c, d] => Channel::Pauli([*a, *b, *c, *d]),
                _ => return Err(Error::Parse("`pauli` takes pI,pX,pY,pZ".into())),
            },
            other => return Err(Error::Parse(format!("unknown channel kind `{other}`"))),
        };
        channel.validate()?;
        Ok(channel)
    }
}

impl Serialize for Channel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Channel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `(I ⊗ Λ)|Φ+⟩⟨Φ+|`, reference qubit first.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiState {
    matrix: Matrix4<Complex64>,
    /// Spectrum in non-increasing order when known in closed form.
    bell_spectrum: Option<[f64; 4]>,
}

impl ChoiState {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: Matrix4<Complex64>) -> Result<Self> {
        let herm_gap = (matrix - matrix.adjoint()).norm();
        if herm_gap > STATE_TOL {
            return Err(Error::OutOfRange {
                what: "Choi Hermiticity defect",
                value: herm_gap,
            });
        }
        let trace = matrix.trace();
        if (trace.re - 1.0).abs() > STATE_TOL || trace.im.abs() > STATE_TOL {
            return Err(Error::OutOfRange {
                what: "Choi trace",
                value: trace.re,
            });
        }
        let state = Self {
            matrix,
            bell_spectrum: None,
        };
        let min = state.eigenvalues().into_iter().fold(f64::INFINITY, f64::min);
        if min < -STATE_TOL {
            return Err(Error::OutOfRange {
                what: "Choi eigenvalue",
                value: min,
            });
        }
        Ok(state)
    }

    pub fn matrix(&self) -> &Matrix4<Complex64> {
        &self.matrix
    }

    /// Eigenvalues in non-increasing order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        if let Some(spec) = self.bell_spectrum {
            return spec.to_vec();
        }
        hermitian_eigenvalues(&DMatrix::from_iterator(4, 4, self.matrix.iter().copied()))
    }

    pub fn entropy(&self) -> f64 {
        shannon_entropy(&self.eigenvalues())
    }

    /// `Λ(I/2)`, the reduced state of the output qubit.
    pub fn output_state(&self) -> [[Complex64; 2]; 2] {
        let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
        for (s, row) in out.iter_mut().enumerate() {
            for (t, v) in row.iter_mut().enumerate() {
                *v = self.matrix[(s, t)] + self.matrix[(2 + s, 2 + t)];
            }
        }
        out
    }

    /// `Λ(I) = I`.
    pub fn is_unital(&self) -> bool {
        let o = self.output_state();
        (o[0][0].re - 0.5).abs() < STATE_TOL && (o[1][1].re - 0.5).abs() < STATE_TOL && o[0][1].norm() < STATE_TOL
    }

    /// Partial transpose on the reference qubit.
    pub fn partial_transpose(&self) -> Matrix4<Complex64> {
        Matrix4::from_fn(|i, j| {
            let (r, s) = (i / 2, i % 2);
            let (r2, s2) = (j / 2, j % 2);
            self.matrix[(r2 * 2 + s, r * 2 + s2)]
        })
    }

    /// Peres–Horodecki test, exact for two qubits.
    pub fn is_ppt(&self) -> bool {
        let pt = self.partial_transpose();
        hermitian_eigenvalues(&DMatrix::from_iterator(4, 4, pt.iter().copied()))
            .into_iter()
            .all(|v| v > -STATE_TOL)
    }

    /// Kraus operators `K_j[out, in] = √(2λ_j) v_j[2·in + out]`.
    pub fn kraus(&self) -> Vec<DMatrix<Complex64>> {
        let m = DMatrix::from_iterator(4, 4, self.matrix.iter().copied());
        let eig = m.symmetric_eigen();
        let mut out = Vec::new();
        for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
            if lambda <= ENTROPY_FLOOR {
                continue;
            }
            let v = eig.eigenvectors.column(j);
            let scale = (2.0 * lambda).sqrt();
            out.push(DMatrix::from_fn(2, 2, |o, i| v[2 * i + o] * scale));
        }
        out
    }
}

fn pauli_matrices() -> [DMatrix<Complex64>; 4] {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    [
        DMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]),
        DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]),
        DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)]),
        DMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)]),
    ]
}

/// Bell-diagonal Choi state of a Pauli channel.
pub fn choi(ch: &PauliChannel) -> ChoiState {
    let mut phi = [Complex64::new(0.0, 0.0); 4];
    phi[0] = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    phi[3] = phi[0];
    let mut matrix = Matrix4::<Complex64>::zeros();
    for (q, sigma) in ch.probs.iter().zip(pauli_matrices()) {
        if *q == 0.0 {
            continue;
        }
        let mut v = [Complex64::new(0.0, 0.0); 4];
        for r in 0..2 {
            for s in 0..2 {
                for t in 0..2 {
                    v[r * 2 + s] += sigma[(s, t)] * phi[r * 2 + t];
                }
            }
        }
        for i in 0..4 {
            for j in 0..4 {
                matrix[(i, j)] += v[i] * v[j].conj() * *q;
            }
        }
    }
    let mut spectrum = ch.probs;
    spectrum.sort_by(|a, b| b.total_cmp(a));
    ChoiState {
        matrix,
        bell_spectrum: Some(spectrum),
    }
}

/// Eigenvalues of a Hermitian matrix in non-increasing order.
pub fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let mut vals: Vec<f64> = m.clone().symmetric_eigen().eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

/// Von Neumann entropy in bits of a Hermitian PSD matrix.
pub fn von_neumann_entropy(m: &DMatrix<Complex64>) -> Result<f64> {
    let vals = hermitian_eigenvalues(m);
    if let Some(&min) = vals.last() {
        if min < -STATE_TOL {
            return Err(Error::OutOfRange {
                what: "density-matrix eigenvalue",
                value: min,
            });
        }
    }
    Ok(shannon_entropy(&vals))
}

/// Shannon entropy in bits; entries below `1e-14` contribute zero.
pub fn shannon_entropy(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&q| q > ENTROPY_FLOOR)
        .map(|&q| -q * q.log2())
        .sum::<f64>()
        .max(0.0)
}

/// `H(p)`, zero at the endpoints.
pub fn binary_entropy(p: f64) -> f64 {
    shannon_entropy(&[p, 1.0 - p])
}

/// `log₂` of the typical-error count bound, `n·S(choi) + 2nδ`.
pub fn typical_set_log_size(ch: &PauliChannel, n: usize, delta: f64) -> Result<f64> {
    typical_check(n, delta)?;
    Ok(n as f64 * choi(ch).entropy() + 2.0 * n as f64 * delta)
}

/// Erasure analogue: `2nε + 2nδ` (the count approaches `4^{nε}`).
pub fn erasure_typical_set_log_size(ch: &ErasureChannel, n: usize, delta: f64) -> Result<f64> {
    typical_check(n, delta)?;
    Ok(2.0 * n as f64 * (ch.epsilon + delta))
}

fn typical_check(n: usize, delta: f64) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange {
            what: "block length",
            value: 0.0,
        });
    }
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::OutOfRange {
            what: "delta",
            value: delta,
        });
    }
    Ok(())
}

/// Whether the Choi state has positive partial transpose.
pub fn is_entanglement_breaking(ch: &PauliChannel) -> bool {
    choi(ch).is_ppt()
}
