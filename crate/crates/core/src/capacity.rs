//! Entanglement-assisted capacities, Hamming-type rate bounds, and the
//! ledger of entanglement-requirement inequalities.

use nalgebra::DMatrix;
use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::{
    binary_entropy, choi, is_entanglement_breaking, shannon_entropy, von_neumann_entropy, Channel, ChoiState,
    ErasureChannel, PauliChannel,
};
use crate::error::{check_prob, Error, Result};

const GRID_STEPS: usize = 20;
const SEARCH_TOL: f64 = 1e-9;
const LEDGER_TOL: f64 = 1e-12;

/// Closed interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo.is_nan() || hi.is_nan() || lo > hi + LEDGER_TOL {
            return Err(Error::Infeasible(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Self { lo, hi: hi.max(lo) })
    }

    pub fn point(v: f64) -> Self {
        Self { lo: v, hi: v }
    }

    pub fn is_point(&self) -> bool {
        (self.hi - self.lo).abs() <= LEDGER_TOL
    }

    pub fn contains(&self, v: f64, tol: f64) -> bool {
        v >= self.lo - tol && v <= self.hi + tol
    }

    fn add(self, o: Interval) -> Interval {
        Interval {
            lo: self.lo + o.lo,
            hi: self.hi + o.hi,
        }
    }

    fn sub(self, o: Interval) -> Interval {
        Interval {
            lo: self.lo - o.hi,
            hi: self.hi - o.lo,
        }
    }

    fn abs(self) -> Interval {
        if self.lo >= 0.0 {
            self
        } else if self.hi <= 0.0 {
            Interval {
                lo: -self.hi,
                hi: -self.lo,
            }
        } else {
            Interval {
                lo: 0.0,
                hi: self.hi.max(-self.lo),
            }
        }
    }

    fn scale(self, c: f64) -> Interval {
        let (a, b) = (self.lo * c, self.hi * c);
        Interval { lo: a.min(b), hi: a.max(b) }
    }
}

/// A channel as consumed by the capacity optimizer.
#[derive(Clone, Debug)]
pub enum ChannelEvaluator {
    Pauli(PauliChannel),
    Erasure(ErasureChannel),
    Choi(Box<ChoiState>),
}

impl ChannelEvaluator {
    pub fn from_channel(ch: &Channel) -> Result<Self> {
        match ch.pauli()? {
            Some(p) => Ok(Self::Pauli(p)),
            None => Ok(Self::Erasure(ErasureChannel::new(match ch {
                Channel::Erasure(e) => *e,
                _ => unreachable!("non-Pauli channels are erasures"),
            })?)),
        }
    }

    fn kraus(&self) -> Vec<DMatrix<Complex64>> {
        match self {
            Self::Pauli(p) => p.kraus(),
            Self::Erasure(e) => e.kraus(),
            Self::Choi(c) => c.kraus(),
        }
    }

    pub fn is_unital(&self) -> bool {
        match self {
            Self::Pauli(_) => true,
            Self::Erasure(e) => e.epsilon() == 0.0,
            Self::Choi(c) => c.is_unital(),
        }
    }

    /// `2 − S(choi)`, the value at the maximally mixed input, for unital channels.
    pub fn unital_shortcut(&self) -> Option<f64> {
        match self {
            Self::Pauli(p) => Some(2.0 - choi(p).entropy()),
            Self::Choi(c) if c.is_unital() => Some(2.0 - c.entropy()),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EaCapacity {
    pub c_e: f64,
    pub q_e: f64,
    /// Bloch vector of the maximizing input state.
    pub argmax_bloch: [f64; 3],
    pub unital_shortcut: Option<f64>,
}

fn bloch_state(r: [f64; 3]) -> DMatrix<Complex64> {
    let c = |re: f64, im: f64| Complex64::new(re, im);
    DMatrix::from_row_slice(
        2,
        2,
        &[
            c((1.0 + r[2]) / 2.0, 0.0),
            c(r[0] / 2.0, -r[1] / 2.0),
            c(r[0] / 2.0, r[1] / 2.0),
            c((1.0 - r[2]) / 2.0, 0.0),
        ],
    )
}

fn hermitian_sqrt(m: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let eig = m.clone().symmetric_eigen();
    let vecs = &eig.eigenvectors;
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|v| Complex64::new(v.max(0.0).sqrt(), 0.0)));
    vecs * d * vecs.adjoint()
}

/// `S(ρ) + S(Λρ) − S((I ⊗ Λ)|φ⟩⟨φ|)` for the input with Bloch vector `r`.
pub fn mutual_information(kraus: &[DMatrix<Complex64>], r: [f64; 3]) -> f64 {
    let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt().min(1.0);
    let s_in = shannon_entropy(&[(1.0 + norm) / 2.0, (1.0 - norm) / 2.0]);
    let rho = bloch_state(r);
    let sqrt_rho = hermitian_sqrt(&rho);
    let d_out = kraus[0].nrows();
    let mut out = DMatrix::<Complex64>::zeros(d_out, d_out);
    let mut joint = DMatrix::<Complex64>::zeros(2 * d_out, 2 * d_out);
    for k in kraus {
        out += k * &rho * k.adjoint();
        // (I ⊗ K)|φ⟩ with φ[2i + s] = √ρ[s, i].
        let w = DMatrix::from_fn(2 * d_out, 1, |idx, _| {
            let (i, o) = (idx / d_out, idx % d_out);
            (0..2).map(|s| k[(o, s)] * sqrt_rho[(s, i)]).sum::<Complex64>()
        });
        joint += &w * w.adjoint();
    }
    let s_out = von_neumann_entropy(&out).unwrap_or(f64::NAN);
    let s_joint = von_neumann_entropy(&joint).unwrap_or(f64::NAN);
    s_in + s_out - s_joint
}

fn better(a: (f64, [f64; 3]), b: (f64, [f64; 3])) -> (f64, [f64; 3]) {
    match a.0.total_cmp(&b.0) {
        std::cmp::Ordering::Greater => a,
        std::cmp::Ordering::Less => b,
        std::cmp::Ordering::Equal => {
            if a.1.iter().zip(&b.1).map(|(x, y)| x.total_cmp(y)).find(|o| o.is_ne()) == Some(std::cmp::Ordering::Greater) {
                b
            } else {
                a
            }
        }
    }
}

fn project_to_ball(mut r: [f64; 3]) -> [f64; 3] {
    let norm = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
    if norm > 1.0 {
        for v in &mut r {
            *v /= norm;
        }
    }
    r
}

/// Maximizes the input-output mutual information over single-qubit inputs:
/// a 21³ Bloch-ball grid, then compass search down to step `1e-9`.
pub fn ea_capacity(ch: &ChannelEvaluator) -> Result<EaCapacity> {
    let kraus = ch.kraus();
    if kraus.is_empty() {
        return Err(Error::InvalidCode("channel has no Kraus operators".into()));
    }
    let f = |r: [f64; 3]| mutual_information(&kraus, r);
    let coord = |i: usize| -1.0 + 2.0 * i as f64 / GRID_STEPS as f64;
    let side = GRID_STEPS + 1;
    let (mut best, mut at) = (0..side * side * side)
        .into_par_iter()
        .filter_map(|idx| {
            let r = [coord(idx / (side * side)), coord(idx / side % side), coord(idx % side)];
            (r.iter().map(|v| v * v).sum::<f64>() <= 1.0 + 1e-12).then(|| (f(r), r))
        })
        .reduce(|| (f64::NEG_INFINITY, [0.0; 3]), better);

    let mut step = 0.5 / GRID_STEPS as f64;
    while step > SEARCH_TOL {
        let mut moved = false;
        for axis in 0..3 {
            for dir in [1.0, -1.0] {
                let mut cand = at;
                cand[axis] += dir * step;
                let cand = project_to_ball(cand);
                let v = f(cand);
                if v > best + 1e-15 {
                    best = v;
                    at = cand;
                    moved = true;
                }
            }
        }
        if !moved {
            step /= 2.0;
        }
    }
    if !best.is_finite() {
        return Err(Error::Verification("capacity objective is not finite".into()));
    }
    Ok(EaCapacity {
        c_e: best,
        q_e: best / 2.0,
        argmax_bloch: at,
        unital_shortcut: ch.unital_shortcut(),
    })
}

/// Closed-form capacities of the erasure channel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErasureCapacities {
    pub c_e: f64,
    pub q_e: f64,
    pub c: f64,
    pub q: f64,
    pub e_q: Interval,
    pub e_c: Interval,
}

/// `C_E = 2 − 2ε`, `Q_E = 1 − ε`, `C = 1 − ε`, `Q = max(1 − 2ε, 0)`.
///
/// `E_Q = ε` for `ε ≤ 1/2`. Above that the lower bound `Q_E − Q` and the
/// random-coding upper bound `1 − Q_E` no longer meet and an interval is returned.
pub fn erasure_capacities(eps: f64) -> Result<ErasureCapacities> {
    let eps = check_prob("erasure epsilon", eps)?;
    let c_e = 2.0 - 2.0 * eps;
    let q_e = c_e / 2.0;
    let c = 1.0 - eps;
    let q = (1.0 - 2.0 * eps).max(0.0);
    let bounds = entanglement_ledger(Some(c), Some(q), c_e, q_e)?;
    Ok(ErasureCapacities {
        c_e,
        q_e,
        c,
        q,
        e_q: bounds.e_q,
        e_c: bounds.e_c,
    })
}

/// Which side of the bounded entanglement quantity an inequality sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Lower,
    Upper,
}

/// One instantiated inequality, normalized to `lhs ≥ rhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Inequality {
    pub id: String,
    pub relation: String,
    pub kind: BoundKind,
    pub lhs: Interval,
    pub rhs: Interval,
    /// Holds for every value in the intervals.
    pub satisfied: bool,
    /// Holds for some value in the intervals.
    pub consistent: bool,
    #[serde(rename = "paper_eq")]
    pub equation: String,
}

impl Inequality {
    fn new(id: &str, relation: &str, kind: BoundKind, lhs: Interval, rhs: Interval, equation: &str) -> Self {
        Self {
            id: id.into(),
            relation: relation.into(),
            kind,
            lhs,
            rhs,
            satisfied: lhs.lo >= rhs.hi - LEDGER_TOL,
            consistent: lhs.hi >= rhs.lo - LEDGER_TOL,
            equation: equation.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EntanglementBounds {
    pub e_q: Interval,
    pub e_c: Interval,
    /// `1 − Q_E`, the requirement of random maximal-entanglement codes.
    pub e_q_random: f64,
    pub inequalities: Vec<Inequality>,
}

/// Intervals for `E_Q`, `E_C` and every inequality instantiated on the inputs.
/// `C` and `Q` are optional because they are unknown for most channels.
pub fn entanglement_ledger(c: Option<f64>, q: Option<f64>, c_e: f64, q_e: f64) -> Result<EntanglementBounds> {
    if (c_e - 2.0 * q_e).abs() > LEDGER_TOL {
        return Err(Error::Infeasible(format!("C_E = {c_e} is not 2 Q_E = {}", 2.0 * q_e)));
    }
    if q_e < -LEDGER_TOL {
        return Err(Error::OutOfRange { what: "Q_E", value: q_e });
    }
    if let (Some(c), Some(q)) = (c, q) {
        if q < -LEDGER_TOL || q > c + LEDGER_TOL {
            return Err(Error::Infeasible(format!("need 0 <= Q <= C, got Q = {q}, C = {c}")));
        }
    }

    let e_q_random = 1.0 - q_e;
    let mut e_q_lo: f64 = 0.0;
    if let Some(q) = q {
        e_q_lo = e_q_lo.max(q_e - q);
    }
    let e_q = Interval::new(e_q_lo, e_q_random)?;

    let mut e_c_lo = (e_q.lo - q_e).max(0.0);
    if let Some(c) = c {
        e_c_lo = e_c_lo.max(c_e - c);
        if let Some(q) = q {
            if c > 0.0 {
                e_c_lo = e_c_lo.max(q / c * (c_e - c));
            }
        }
    }
    let e_c = Interval::new(e_c_lo, e_q.hi + q_e)?;

    let pt = Interval::point;
    let qe = pt(q_e);
    let mut ineq = vec![
        Inequality::new("bound1", "Q_E >= |E_C - E_Q|", BoundKind::Upper, qe, e_c.sub(e_q).abs(), "bound1"),
        Inequality::new("dense_coding", "E_Q >= E_C - Q_E", BoundKind::Lower, e_q, e_c.sub(qe), "bound1"),
        Inequality::new("teleportation", "E_C + Q_E >= E_Q", BoundKind::Upper, e_c.add(qe), e_q, "bound1"),
        Inequality::new("random_coding", "1 - Q_E >= E_Q", BoundKind::Upper, pt(e_q_random), e_q, "random_coding"),
    ];
    if let Some(q) = q {
        ineq.push(Inequality::new("bound2", "E_Q >= Q_E - Q", BoundKind::Lower, e_q, pt(q_e - q), "bound2"));
        ineq.push(Inequality::new("sandwich_lower", "Q >= Q_E - E_Q", BoundKind::Lower, pt(q), qe.sub(e_q), "sandwich"));
    }
    if let Some(c) = c {
        ineq.push(Inequality::new("bound2_classical", "E_C >= C_E - C", BoundKind::Lower, e_c, pt(c_e - c), "bound2"));
        if let Some(q) = q {
            ineq.push(Inequality::new("unassisted_order", "C >= Q", BoundKind::Upper, pt(c), pt(q), "lowerE_Cbound"));
            if c > 0.0 {
                ineq.push(Inequality::new(
                    "lowerE_Cbound",
                    "E_C >= (Q / C)(C_E - C)",
                    BoundKind::Lower,
                    e_c,
                    pt(q / c * (c_e - c)),
                    "lowerE_Cbound",
                ));
            }
            if c > 0.0 && c_e > c + LEDGER_TOL {
                ineq.push(Inequality::new(
                    "sandwich_upper",
                    "E_C / (C_E / C - 1) >= Q",
                    BoundKind::Upper,
                    e_c.scale(1.0 / (c_e / c - 1.0)),
                    pt(q),
                    "sandwich",
                ));
            }
        }
    }
    Ok(EntanglementBounds {
        e_q,
        e_c,
        e_q_random,
        inequalities: ineq,
    })
}

/// Hashing-protocol distillable-entanglement bound `1 − S(ρ)` for a Bell-diagonal state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HashingBound {
    pub raw: f64,
    pub clamped: f64,
}

pub fn hashing_lower_bound(bell_diag_probs: &[f64; 4]) -> Result<HashingBound> {
    PauliChannel::new(*bell_diag_probs)?;
    let raw = 1.0 - shannon_entropy(bell_diag_probs);
    Ok(HashingBound {
        raw,
        clamped: raw.max(0.0),
    })
}

/// Two-sided check of the unproven conjecture `Q = Q_E − E_Q = C_E − E_C`.
/// It is reported, never assumed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    /// Always `true`: marks the block as an unproven conjecture.
    pub conjecture: bool,
    pub q_e_minus_e_q: Interval,
    pub c_e_minus_e_c: Interval,
    /// `Q` predicted by the first equality, or `[0, 0]` when `Q_E < E_Q`.
    pub predicted_q: Interval,
    pub first_equality_consistent: Option<bool>,
    /// `None` unless `C` is known and `C_E > C`.
    pub second_equality_consistent: Option<bool>,
    pub consistent: Option<bool>,
}

pub fn conjecture_report(
    c: Option<f64>,
    q: Option<f64>,
    c_e: f64,
    q_e: f64,
    e_c: Interval,
    e_q: Interval,
) -> ConjectureReport {
    let tol = 1e-9;
    let q_e_minus_e_q = Interval::point(q_e).sub(e_q);
    let c_e_minus_e_c = Interval::point(c_e).sub(e_c);
    let predicted_q = if q_e_minus_e_q.hi < -tol {
        Interval::point(0.0)
    } else {
        Interval {
            lo: q_e_minus_e_q.lo.max(0.0),
            hi: q_e_minus_e_q.hi.max(0.0),
        }
    };
    let first = q.map(|q| predicted_q.contains(q, tol));
    let second = match (c, q) {
        (Some(c), Some(q)) if c_e > c + tol && c_e_minus_e_c.hi >= -tol => Some(c_e_minus_e_c.contains(q, tol)),
        _ => None,
    };
    let consistent = match (first, second) {
        (Some(a), Some(b)) => Some(a && b),
        (Some(a), None) => Some(a),
        _ => None,
    };
    ConjectureReport {
        conjecture: true,
        q_e_minus_e_q,
        c_e_minus_e_c,
        predicted_q,
        first_equality_consistent: first,
        second_equality_consistent: second,
        consistent,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LedgerFlag {
    EntanglementBreaking,
    Unital,
    ConjectureConsistent,
}

/// Everything known about a channel's capacities and entanglement requirements.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CapacityLedger {
    pub channel: Channel,
    pub c_e: f64,
    pub q_e: f64,
    pub c: Option<f64>,
    pub q: Option<f64>,
    pub argmax_bloch: [f64; 3],
    pub unital_shortcut: Option<f64>,
    pub e_q_bounds: Interval,
    pub e_c_bounds: Interval,
    pub e_q_random: f64,
    pub hashing: Option<HashingBound>,
    /// `C_E ≤ 1` and `Q_E ≤ 1/2`, present when the channel breaks entanglement.
    pub entanglement_breaking_constraints: Vec<Inequality>,
    pub inequalities: Vec<Inequality>,
    pub conjecture: ConjectureReport,
    pub flags: Vec<LedgerFlag>,
}

/// Unassisted capacities known in closed form: dephasing and erasure.
pub fn known_unassisted(ch: &Channel) -> Result<(Option<f64>, Option<f64>)> {
    if let Some(e) = ch.erasure() {
        let caps = erasure_capacities(e.epsilon())?;
        return Ok((Some(caps.c), Some(caps.q)));
    }
    match ch.pauli()? {
        Some(p) if p.is_dephasing() => Ok((Some(1.0), Some(1.0 - binary_entropy(p.prob(crate::pauli::Pauli::Z))))),
        _ => Ok((None, None)),
    }
}

impl CapacityLedger {
    /// Ledger using closed-form `C` and `Q` where they are known.
    pub fn for_channel(ch: &Channel) -> Result<Self> {
        let (c, q) = known_unassisted(ch)?;
        Self::with_unassisted(ch, c, q)
    }

    /// Ledger with caller-supplied unassisted capacities.
    pub fn with_unassisted(ch: &Channel, c: Option<f64>, q: Option<f64>) -> Result<Self> {
        ch.validate()?;
        let eval = ChannelEvaluator::from_channel(ch)?;
        let mut cap = ea_capacity(&eval)?;
        // Closed forms replace the optimizer value where the optimum is known exactly.
        if let Some(e) = ch.erasure() {
            cap.c_e = 2.0 - 2.0 * e.epsilon();
        } else if let Some(shortcut) = cap.unital_shortcut {
            if (shortcut - cap.c_e).abs() < 1e-6 {
                cap.c_e = shortcut;
            }
        }
        let c_e = cap.c_e;
        let q_e = c_e / 2.0;
        let bounds = entanglement_ledger(c, q, c_e, q_e)?;

        let pauli = ch.pauli()?;
        let eb = match (&pauli, ch.erasure()) {
            (Some(p), _) => is_entanglement_breaking(p),
            (None, Some(e)) => e.epsilon() == 1.0,
            _ => false,
        };
        let mut eb_constraints = Vec::new();
        if eb {
            let pt = Interval::point;
            eb_constraints.push(Inequality::new("eb_c_e", "1 >= C_E", BoundKind::Upper, pt(1.0), pt(c_e), "entanglement_breaking"));
            eb_constraints.push(Inequality::new("eb_q_e", "1/2 >= Q_E", BoundKind::Upper, pt(0.5), pt(q_e), "entanglement_breaking"));
        }
        let hashing = match &pauli {
            Some(p) => Some(hashing_lower_bound(&p.probs())?),
            None => None,
        };
        let conjecture = conjecture_report(c, q, c_e, q_e, bounds.e_c, bounds.e_q);

        let mut flags = Vec::new();
        if eb {
            flags.push(LedgerFlag::EntanglementBreaking);
        }
        if eval.is_unital() {
            flags.push(LedgerFlag::Unital);
        }
        if conjecture.consistent == Some(true) {
            flags.push(LedgerFlag::ConjectureConsistent);
        }
        Ok(Self {
            channel: *ch,
            c_e,
            q_e,
            c,
            q,
            argmax_bloch: cap.argmax_bloch,
            unital_shortcut: cap.unital_shortcut,
            e_q_bounds: bounds.e_q,
            e_c_bounds: bounds.e_c,
            e_q_random: bounds.e_q_random,
            hashing,
            entanglement_breaking_constraints: eb_constraints,
            inequalities: bounds.inequalities,
            conjecture,
            flags,
        })
    }

    /// Every inequality and constraint holds for all values in the intervals.
    pub fn all_satisfied(&self) -> bool {
        self.inequalities
            .iter()
            .chain(&self.entanglement_breaking_constraints)
            .all(|i| i.satisfied)
    }
}

/// Result of the finite entanglement-assisted Hamming check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HammingCheck {
    pub holds: bool,
    /// `2^k Σ_{j≤t} 3^j C(n, j)` in decimal.
    pub lhs: String,
    /// `2^{2m+k+a}` in decimal.
    pub rhs: String,
    /// `log₂(rhs / lhs)`; negative when the bound fails.
    pub slack_log2: f64,
}

fn big_log2(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().map(f64::log2).unwrap_or(f64::NAN);
    }
    let shift = bits - 64;
    (x >> shift).to_f64().map(f64::log2).unwrap_or(f64::NAN) + shift as f64
}

fn error_ball(n: usize, t: usize) -> BigUint {
    let mut total = BigUint::zero();
    let mut binom = BigUint::one();
    let mut pow3 = BigUint::one();
    for j in 0..=t.min(n) {
        if j > 0 {
            binom = binom * BigUint::from(n - j + 1) / BigUint::from(j);
            pow3 *= 3u32;
        }
        total += &binom * &pow3;
    }
    total
}

/// `2^k Σ_{j≤t} 3^j C(n, j) ≤ 2^{2n−k}` in exact arithmetic (all ancillas entangled).
pub fn ea_hamming_ok(n: usize, k: usize, t: usize) -> Result<HammingCheck> {
    if k > n {
        return Err(Error::Infeasible(format!("k = {k} exceeds n = {n}")));
    }
    ea_hamming_general(n, k, n - k, 0, t)
}

/// `2^k Σ_{j≤t} 3^j C(n, j) ≤ 2^{2m+k+a}` with `n = k + m + a`.
pub fn ea_hamming_general(n: usize, k: usize, m: usize, a: usize, t: usize) -> Result<HammingCheck> {
    if k + m + a != n {
        return Err(Error::Infeasible(format!("k + m + a = {} differs from n = {n}", k + m + a)));
    }
    let lhs = error_ball(n, t) << k;
    let rhs = BigUint::one() << (2 * m + k + a);
    Ok(HammingCheck {
        holds: lhs <= rhs,
        slack_log2: (2 * m + k + a) as f64 - big_log2(&lhs),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

fn check_depolarizing_p(p: f64) -> Result<f64> {
    if !(0.0..=0.75).contains(&p) {
        return Err(Error::OutOfRange {
            what: "error fraction p",
            value: p,
        });
    }
    Ok(p)
}

fn hamming_exponent(p: f64) -> f64 {
    p * 3f64.log2() + binary_entropy(p)
}

/// Asymptotic assisted Hamming rate `1 − (p/2) log₂3 − H(p)/2`.
pub fn ea_hamming_rate(p: f64) -> Result<f64> {
    Ok(1.0 - hamming_exponent(check_depolarizing_p(p)?) / 2.0)
}

/// Unassisted Hamming rate `1 − p log₂3 − H(p)`.
pub fn unassisted_hamming_rate(p: f64) -> Result<f64> {
    Ok(1.0 - hamming_exponent(check_depolarizing_p(p)?))
}

/// Rate bound with `(1 − R)/M` e-bits per channel use: `1 − M/(M+1) (p log₂3 + H(p))`.
pub fn hamming_family(p: f64, m: f64) -> Result<f64> {
    let p = check_depolarizing_p(p)?;
    if m.is_nan() || m < 1.0 {
        return Err(Error::OutOfRange { what: "family index M", value: m });
    }
    Ok(1.0 - m / (m + 1.0) * hamming_exponent(p))
}

/// Rate bound with `E` e-bits per channel use: `1 + E − p log₂3 − H(p)`.
pub fn ea_hamming_with_entanglement(p: f64, e: f64) -> Result<f64> {
    let p = check_depolarizing_p(p)?;
    if e.is_nan() || e < 0.0 {
        return Err(Error::OutOfRange {
            what: "entanglement per use",
            value: e,
        });
    }
    Ok(1.0 + e - hamming_exponent(p))
}

/// Random-coding failure bound for Pauli channels, `2^{n(S + 2R − 2 + 2δ)}` (atypical mass omitted).
pub fn pauli_failure_bound(choi_entropy: f64, n: usize, rate: f64, delta: f64) -> f64 {
    2f64.powf(n as f64 * (choi_entropy + 2.0 * rate - 2.0 + 2.0 * delta))
}

/// Erasure analogue, `2^{2n(ε − 1 + R + δ)}`.
pub fn erasure_failure_bound(epsilon: f64, n: usize, rate: f64, delta: f64) -> f64 {
    2f64.powf(2.0 * n as f64 * (epsilon - 1.0 + rate + delta))
}
