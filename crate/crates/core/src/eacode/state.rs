//! Dense state vectors used as an independent oracle for codeword claims.
//!
//! Qubit 0 is the most significant bit of the basis index, so `|abc⟩` has
//! index `4a + 2b + c`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::pauli::PauliOperator;

pub const STATE_QUBIT_CAP: usize = 12;
const NORM_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    qubits: usize,
    amplitudes: Vec<Complex64>,
}

fn check_cap(qubits: usize) -> Result<()> {
    if qubits > STATE_QUBIT_CAP {
        Err(Error::CapExceeded {
            what: "state vector",
            requested: qubits,
            cap: STATE_QUBIT_CAP,
        })
    } else {
        Ok(())
    }
}

impl StateVector {
    /// Wraps amplitudes that must already have unit norm.
    pub fn new(amplitudes: Vec<Complex64>) -> Result<Self> {
        let state = Self::from_unnormalized(amplitudes)?;
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::OutOfRange {
                what: "state norm",
                value: norm,
            });
        }
        Ok(state)
    }

    /// Normalizes the given amplitudes.
    pub fn normalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let mut state = Self::from_unnormalized(amplitudes)?;
        let norm = state.norm();
        if norm < 1e-300 {
            return Err(Error::OutOfRange {
                what: "state norm",
                value: norm,
            });
        }
        state.scale(Complex64::new(1.0 / norm, 0.0));
        Ok(state)
    }

    fn from_unnormalized(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() {
            return Err(Error::Parse(format!("amplitude count {len} is not a power of two")));
        }
        let qubits = len.trailing_zeros() as usize;
        check_cap(qubits)?;
        Ok(Self { qubits, amplitudes })
    }

    pub fn basis(qubits: usize, index: usize) -> Result<Self> {
        check_cap(qubits)?;
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << qubits];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { qubits, amplitudes })
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn scale(&mut self, c: Complex64) {
        for a in &mut self.amplitudes {
            *a *= c;
        }
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.qubits, other.qubits);
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        check_cap(self.qubits + other.qubits)?;
        let mut amplitudes = Vec::with_capacity(self.amplitudes.len() * other.amplitudes.len());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        Ok(StateVector {
            qubits: self.qubits + other.qubits,
            amplitudes,
        })
    }

    /// Applies the group element `P` (no Hermitian lift).
    pub fn apply_pauli(&self, p: &PauliOperator) -> Result<StateVector> {
        if p.n_qubits() != self.qubits {
            return Err(Error::DimensionMismatch {
                expected: self.qubits,
                found: p.n_qubits(),
            });
        }
        let (xm, zm) = p.index_masks();
        let s = p.sign().value();
        let mut out = vec![Complex64::new(0.0, 0.0); self.amplitudes.len()];
        for (b, &amp) in self.amplitudes.iter().enumerate() {
            let phase = if (b & zm).count_ones() % 2 == 1 { -s } else { s };
            out[b ^ xm] = amp * phase;
        }
        Ok(StateVector {
            qubits: self.qubits,
            amplitudes: out,
        })
    }

    /// Applies the Hermitian lift of `P`: `i·P` when `P` has an odd number of `Y`s.
    pub fn apply_hermitian(&self, p: &PauliOperator) -> Result<StateVector> {
        let mut out = self.apply_pauli(p)?;
        if !p.is_hermitian() {
            out.scale(Complex64::new(0.0, 1.0));
        }
        Ok(out)
    }

    /// `(v + H(g) v) / 2` for each generator in turn.
    pub fn project(&self, generators: &[PauliOperator]) -> Result<StateVector> {
        let mut v = self.clone();
        for g in generators {
            let gv = v.apply_hermitian(g)?;
            for (a, b) in v.amplitudes.iter_mut().zip(gv.amplitudes) {
                *a = (*a + b) * 0.5;
            }
        }
        Ok(v)
    }

    /// Applies a dense unitary `unitary[row][col]` on the leading `width` qubits.
    pub fn apply_leading(&self, width: usize, unitary: &[Vec<Complex64>]) -> Result<StateVector> {
        if width > self.qubits || unitary.len() != 1 << width {
            return Err(Error::DimensionMismatch {
                expected: self.qubits,
                found: width,
            });
        }
        let tail = self.qubits - width;
        let mut out = vec![Complex64::new(0.0, 0.0); self.amplitudes.len()];
        for (b, &amp) in self.amplitudes.iter().enumerate() {
            if amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            let (head, rest) = (b >> tail, b & ((1 << tail) - 1));
            for (row, entries) in unitary.iter().enumerate() {
                let u = entries[head];
                if u != Complex64::new(0.0, 0.0) {
                    out[(row << tail) | rest] += u * amp;
                }
            }
        }
        Ok(StateVector {
            qubits: self.qubits,
            amplitudes: out,
        })
    }

    /// Probability-weighted post-measurement states of the leading `width` qubits.
    pub fn measure_leading(&self, width: usize) -> Vec<(usize, f64, StateVector)> {
        let tail = self.qubits - width;
        let mut out = Vec::new();
        for outcome in 0..1usize << width {
            let amps: Vec<Complex64> = (0..1usize << tail)
                .map(|r| self.amplitudes[(outcome << tail) | r])
                .collect();
            let prob: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
            if prob > 1e-14 {
                let state = StateVector::normalized(amps).expect("nonzero branch");
                out.push((outcome, prob, state));
            }
        }
        out
    }

    /// `|⟨self|other⟩|²`.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm_sqr()
    }
}

/// Orthonormalizes `states` in order, dropping those already in the span.
pub fn gram_schmidt(states: &[StateVector], tol: f64) -> Vec<StateVector> {
    let mut basis: Vec<StateVector> = Vec::new();
    for s in states {
        let mut v = s.clone();
        for b in &basis {
            let c = b.inner(&v);
            for (a, bb) in v.amplitudes.iter_mut().zip(&b.amplitudes) {
                *a -= c * bb;
            }
        }
        let norm = v.norm();
        if norm > tol {
            v.scale(Complex64::new(1.0 / norm, 0.0));
            basis.push(v);
        }
    }
    basis
}
