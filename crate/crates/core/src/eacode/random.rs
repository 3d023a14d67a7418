use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{canonical_ea, EACode};
use crate::error::Result;
use crate::gf2::BitRow;
use crate::pauli::{Pauli, PauliOperator};
use crate::stabilizer::StabilizerCode;

/// A symplectic map on the sender's qubits stored as a product of transvections
/// `v ↦ v + ⟨v, h⟩ h`, applied in order.
#[derive(Clone, Debug)]
pub struct SenderSymplectic {
    n_send: usize,
    transvections: Vec<BitRow>,
}

impl SenderSymplectic {
    pub fn n_send(&self) -> usize {
        self.n_send
    }

    pub fn len(&self) -> usize {
        self.transvections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transvections.is_empty()
    }

    /// Conjugates the sender part of `op`; remaining qubits are untouched.
    /// The result carries sign `+1` under the Hermitian-lift reading.
    pub fn apply(&self, op: &PauliOperator) -> PauliOperator {
        let ns = self.n_send;
        let mut row = op.restrict(0..ns).symplectic_row();
        for h in &self.transvections {
            if row.symplectic(h) {
                row.xor_assign(h);
            }
        }
        let mut out = op.unsigned();
        for q in 0..ns {
            out.set(q, Pauli::from_bits(row.get(q), row.get(ns + q)));
        }
        out
    }
}

/// `2 · n_send²` uniformly random nonzero transvections from a seeded stream.
pub fn random_sender_symplectic(n_send: usize, rng: &mut impl Rng) -> SenderSymplectic {
    let count = 2 * n_send * n_send;
    let mut transvections = Vec::with_capacity(count);
    while transvections.len() < count {
        let mut h = BitRow::zeros(2 * n_send);
        for i in 0..2 * n_send {
            h.set(i, rng.random::<bool>());
        }
        if !h.is_zero() {
            transvections.push(h);
        }
    }
    SenderSymplectic {
        n_send,
        transvections,
    }
}

/// `canonical_ea(k, m, a)` conjugated by a random sender-local symplectic map.
pub fn random_ea(k: usize, m: usize, a: usize, seed: u64) -> Result<EACode> {
    let base = canonical_ea(k, m, a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let map = random_sender_symplectic(base.n_send, &mut rng);
    let ext = &base.extended_code;
    let code = StabilizerCode::new(
        ext.n,
        ext.k,
        ext.generators.iter().map(|g| map.apply(g)).collect(),
        ext.logical_ops.iter().map(|l| map.apply(l)).collect(),
    )?;
    EACode::new(base.n_send, k, m, a, code)
}
