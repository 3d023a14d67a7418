//! Syndrome decoding and failure-probability estimation for assisted codes:
//! exact maximum-likelihood tables, erasure decoding by known locations,
//! Monte Carlo estimation, and sweeps over random codes.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::capacity::{erasure_failure_bound, pauli_failure_bound, Interval};
use crate::channel::{choi, Channel, ErasureChannel, PauliChannel};
use crate::eacode::{random_ea, EACode};
use crate::error::{Error, Result};
use crate::gf2::rank_words;
use crate::pauli::{Pauli, PauliOperator};
use crate::rng::{derive_key, TrialRng};
use crate::stabilizer::{for_each_weight, PackedCode, Syndrome};

/// Largest `n_send` for full `4^n` enumeration.
pub const EXACT_SEND_CAP: usize = 10;
/// Largest `n_send` for bounded-weight tables.
pub const BOUNDED_SEND_CAP: usize = 14;
/// Largest erased set for the enumeration oracle.
pub const ERASURE_ENUM_CAP: usize = 12;
pub const DEFAULT_MAX_WEIGHT: usize = 3;
/// Display-only slack in the random-coding reference curve.
pub const DEFAULT_DELTA: f64 = 0.05;
/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

const TAG_CODE: u64 = 1;
const TAG_TRIALS: u64 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum DecodeMode {
    ExactMl,
    BoundedWeight { w_max: usize },
}

impl DecodeMode {
    /// Exact when feasible, bounded weight `w ≤ 3` otherwise.
    pub fn auto(n_send: usize) -> Self {
        if n_send <= EXACT_SEND_CAP {
            DecodeMode::ExactMl
        } else {
            DecodeMode::BoundedWeight {
                w_max: DEFAULT_MAX_WEIGHT,
            }
        }
    }
}

impl fmt::Display for DecodeMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecodeMode::ExactMl => write!(f, "exact_ml"),
            DecodeMode::BoundedWeight { w_max } => write!(f, "bounded_weight({w_max})"),
        }
    }
}

/// A correction on the sent qubits together with its logical signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Correction {
    pub x: u64,
    pub z: u64,
    pub logical: u64,
}

/// Syndrome → correction map for one code.
#[derive(Clone, Debug)]
pub struct DecoderTable {
    mode: DecodeMode,
    n_send: usize,
    packed: PackedCode,
    entries: HashMap<u64, Correction>,
}

/// Sort key that orders Pauli strings lexicographically with `I < X < Y < Z`.
fn lex_key(n: usize, x: u64, z: u64) -> u64 {
    (0..n).fold(0u64, |acc, q| {
        let digit = match ((x >> q) & 1, (z >> q) & 1) {
            (0, 0) => 0,
            (1, 0) => 1,
            (1, 1) => 2,
            _ => 3,
        };
        acc * 4 + digit
    })
}

fn qubit_probs(ch: &PauliChannel) -> [[f64; 2]; 2] {
    // indexed [x][z]
    [
        [ch.prob(Pauli::I), ch.prob(Pauli::Z)],
        [ch.prob(Pauli::X), ch.prob(Pauli::Y)],
    ]
}

fn mask_prob(probs: &[[f64; 2]; 2], n: usize, x: u64, z: u64) -> f64 {
    (0..n).fold(1.0, |acc, q| acc * probs[((x >> q) & 1) as usize][((z >> q) & 1) as usize])
}

fn to_operator(n: usize, x: u64, z: u64) -> PauliOperator {
    PauliOperator::from_u64_masks(n, x, z)
}

#[derive(Clone, Copy)]
struct Cell {
    prob: f64,
    key: u64,
    x: u64,
    z: u64,
}

/// Per syndrome, the logical class with the largest total probability; ties
/// go to the class holding the lexicographically smallest error, and the
/// correction is that class's smallest member.
pub fn build_decoder(code: &EACode, ch: &PauliChannel, mode: DecodeMode) -> Result<DecoderTable> {
    let n = code.n_send;
    let cap = match mode {
        DecodeMode::ExactMl => EXACT_SEND_CAP,
        DecodeMode::BoundedWeight { .. } => BOUNDED_SEND_CAP,
    };
    if n > cap {
        return Err(Error::CapExceeded {
            what: "decoder table n_send",
            requested: n,
            cap,
        });
    }
    let packed = PackedCode::new(&code.extended_code)?;
    let probs = qubit_probs(ch);
    let mut cells: HashMap<(u64, u64), Cell> = HashMap::new();
    let mut visit = |x: u64, z: u64| {
        let s = packed.syndrome(x, z);
        let l = packed.logical(x, z);
        let p = mask_prob(&probs, n, x, z);
        let key = lex_key(n, x, z);
        cells
            .entry((s, l))
            .and_modify(|c| {
                c.prob += p;
                if key < c.key {
                    *c = Cell { prob: c.prob, key, x, z };
                }
            })
            .or_insert(Cell { prob: p, key, x, z });
    };
    match mode {
        DecodeMode::ExactMl => {
            for x in 0..1u64 << n {
                for z in 0..1u64 << n {
                    visit(x, z);
                }
            }
        }
        DecodeMode::BoundedWeight { w_max } => {
            for w in 0..=w_max.min(n) {
                for_each_weight(n, w, &mut visit);
            }
        }
    }
    let mut best: HashMap<u64, (Cell, u64)> = HashMap::new();
    for (&(s, l), &cell) in &cells {
        best.entry(s)
            .and_modify(|(b, bl)| {
                if cell.prob > b.prob || (cell.prob == b.prob && cell.key < b.key) {
                    *b = cell;
                    *bl = l;
                }
            })
            .or_insert((cell, l));
    }
    let entries = best
        .into_iter()
        .map(|(s, (c, l))| (s, Correction { x: c.x, z: c.z, logical: l }))
        .collect();
    Ok(DecoderTable {
        mode,
        n_send: n,
        packed,
        entries,
    })
}

impl DecoderTable {
    /// A table from explicit corrections, e.g. to compare against alternatives.
    pub fn from_corrections(code: &EACode, mode: DecodeMode, corrections: &[PauliOperator]) -> Result<Self> {
        let packed = PackedCode::new(&code.extended_code)?;
        let mut entries = HashMap::new();
        for c in corrections {
            let ext = code.embed_error(c)?;
            let (x, z) = ext.u64_masks();
            entries.insert(
                packed.syndrome(x, z),
                Correction {
                    x,
                    z,
                    logical: packed.logical(x, z),
                },
            );
        }
        Ok(Self {
            mode,
            n_send: code.n_send,
            packed,
            entries,
        })
    }

    pub fn mode(&self) -> DecodeMode {
        self.mode
    }

    pub fn n_send(&self) -> usize {
        self.n_send
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn lookup(&self, syndrome: u64) -> Option<&Correction> {
        self.entries.get(&syndrome)
    }

    /// The correction for a syndrome, on the sent qubits.
    pub fn correction(&self, syndrome: &Syndrome) -> Option<PauliOperator> {
        let s = syndrome.as_u64()?;
        self.lookup(s).map(|c| to_operator(self.n_send, c.x, c.z))
    }

    /// Whether the table fails to undo the error given as sender masks.
    #[inline]
    pub fn fails(&self, x: u64, z: u64) -> bool {
        let s = self.packed.syndrome(x, z);
        match self.entries.get(&s) {
            Some(c) => c.logical != self.packed.logical(x, z),
            None => true,
        }
    }

    /// `(syndrome, correction)` pairs sorted by syndrome.
    pub fn sorted_entries(&self) -> Vec<(u64, PauliOperator)> {
        let mut v: Vec<(u64, PauliOperator)> = self
            .entries
            .iter()
            .map(|(&s, c)| (s, to_operator(self.n_send, c.x, c.z)))
            .collect();
        v.sort_by_key(|e| e.0);
        v
    }
}

#[derive(Default)]
struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Total probability of errors the table leaves with a nontrivial logical residue.
pub fn exact_fail_prob(code: &EACode, ch: &PauliChannel, decoder: &DecoderTable) -> Result<f64> {
    let n = code.n_send;
    if n > EXACT_SEND_CAP {
        return Err(Error::CapExceeded {
            what: "exact failure enumeration n_send",
            requested: n,
            cap: EXACT_SEND_CAP,
        });
    }
    if decoder.n_send != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: decoder.n_send,
        });
    }
    let probs = qubit_probs(ch);
    let mut acc = Neumaier::default();
    for x in 0..1u64 << n {
        for z in 0..1u64 << n {
            if decoder.fails(x, z) {
                acc.add(mask_prob(&probs, n, x, z));
            }
        }
    }
    Ok(acc.value())
}

/// Erasure decoding by known locations.
///
/// Decoding fails iff some Pauli supported on the erased set has trivial
/// syndrome but nontrivial logical action, i.e. iff the single-qubit rows
/// `[syndrome | logical]` over the erased positions have larger rank than
/// their syndrome parts alone.
#[derive(Clone, Debug)]
pub struct ErasureDecoder {
    n_send: usize,
    n_gens: usize,
    rows: Vec<[u64; 2]>,
}

impl ErasureDecoder {
    pub fn new(code: &EACode) -> Result<Self> {
        let packed = PackedCode::new(&code.extended_code)?;
        let n_gens = packed.n_generators();
        if n_gens + 2 * code.k > 64 {
            return Err(Error::CapExceeded {
                what: "erasure decoder syndrome + logical bits",
                requested: n_gens + 2 * code.k,
                cap: 64,
            });
        }
        let pack = |x: u64, z: u64| packed.syndrome(x, z) | packed.logical(x, z) << n_gens;
        let rows = (0..code.n_send)
            .map(|q| [pack(1 << q, 0), pack(0, 1 << q)])
            .collect();
        Ok(Self {
            n_send: code.n_send,
            n_gens,
            rows,
        })
    }

    /// Failure for the erased positions given as a bit mask.
    pub fn fails_mask(&self, erased: u64) -> bool {
        let mut full = Vec::with_capacity(2 * erased.count_ones() as usize);
        for q in 0..self.n_send {
            if erased >> q & 1 == 1 {
                full.extend_from_slice(&self.rows[q]);
            }
        }
        let syn_mask = (1u64 << self.n_gens) - 1;
        let synd: Vec<u64> = full.iter().map(|r| r & syn_mask).collect();
        rank_words(&full) > rank_words(&synd)
    }
}

fn erased_mask(code: &EACode, erased: &[usize]) -> Result<u64> {
    let mut mask = 0u64;
    for &q in erased {
        if q >= code.n_send {
            return Err(Error::ReceiverSupport { qubit: q });
        }
        mask |= 1 << q;
    }
    Ok(mask)
}

/// Whether erasing `erased` (positions among the sent qubits) is unrecoverable.
pub fn erasure_decode_failure(code: &EACode, erased: &[usize]) -> Result<bool> {
    let mask = erased_mask(code, erased)?;
    Ok(ErasureDecoder::new(code)?.fails_mask(mask))
}

/// Same decision by listing all `4^|erased|` Paulis on the erased set.
pub fn erasure_decode_failure_enumerated(code: &EACode, erased: &[usize]) -> Result<bool> {
    let mask = erased_mask(code, erased)?;
    let positions: Vec<usize> = (0..code.n_send).filter(|q| mask >> q & 1 == 1).collect();
    if positions.len() > ERASURE_ENUM_CAP {
        return Err(Error::CapExceeded {
            what: "erased positions",
            requested: positions.len(),
            cap: ERASURE_ENUM_CAP,
        });
    }
    let packed = PackedCode::new(&code.extended_code)?;
    let e = positions.len();
    for code_word in 0..1u64 << (2 * e) {
        let (mut x, mut z) = (0u64, 0u64);
        for (i, &q) in positions.iter().enumerate() {
            x |= (code_word >> (2 * i) & 1) << q;
            z |= (code_word >> (2 * i + 1) & 1) << q;
        }
        if packed.syndrome(x, z) == 0 && packed.logical(x, z) != 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Wilson score interval at normal quantile `z`, widened to contain `k/n`.
pub fn wilson_interval(failures: u64, trials: u64, z: f64) -> Interval {
    if trials == 0 {
        return Interval { lo: 0.0, hi: 1.0 };
    }
    let n = trials as f64;
    let p = failures as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    Interval {
        lo: (center - half).min(p).max(0.0),
        hi: (center + half).max(p).min(1.0),
    }
}

/// Outcome of a Monte Carlo run, for one code or pooled over several.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub a: usize,
    pub channel: Channel,
    pub rate: f64,
    pub trials: u64,
    pub failures: u64,
    pub p_fail: f64,
    pub ci95: Interval,
    pub seed: u64,
    pub codes: usize,
    /// Per-code failure fractions when pooled over several codes.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub code_p_fail: Vec<f64>,
    pub decode_mode: Option<DecodeMode>,
    pub appendix_bound: Option<f64>,
}

impl SimResult {
    /// Standard error of the mean over codes, or the binomial one for a single code.
    pub fn standard_error(&self) -> f64 {
        let c = self.code_p_fail.len();
        if c >= 2 {
            let mean = self.code_p_fail.iter().sum::<f64>() / c as f64;
            let var = self.code_p_fail.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (c - 1) as f64;
            (var / c as f64).sqrt()
        } else {
            (self.p_fail * (1.0 - self.p_fail) / self.trials.max(1) as f64).sqrt()
        }
    }
}

/// Sampling settings for [`monte_carlo_with`].
#[derive(Clone, Debug)]
pub struct McConfig {
    pub trials: u64,
    pub seed: u64,
    /// Thread count; 0 uses the ambient rayon pool. Never changes results.
    pub workers: usize,
}

fn in_pool<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if workers == 0 {
        return Ok(f());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Infeasible(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn count_failures(code: &EACode, channel: &Channel, decoder: Option<&DecoderTable>, key: u64, trials: u64) -> Result<u64> {
    let n = code.n_send;
    let src = TrialRng::new(key);
    if let Some(e) = channel.erasure() {
        let dec = ErasureDecoder::new(code)?;
        return Ok((0..trials)
            .into_par_iter()
            .filter(|&t| dec.fails_mask(sample_erasure_mask(&e, n, &mut src.trial(t))))
            .count() as u64);
    }
    let ch = channel.pauli()?.expect("Pauli channel");
    let owned;
    let table = match decoder {
        Some(d) => d,
        None => {
            owned = build_decoder(code, &ch, DecodeMode::auto(n))?;
            &owned
        }
    };
    Ok((0..trials)
        .into_par_iter()
        .filter(|&t| {
            let (x, z) = ch.sample_error(n, &mut src.trial(t)).u64_masks();
            table.fails(x, z)
        })
        .count() as u64)
}

fn sample_erasure_mask(ch: &ErasureChannel, n: usize, rng: &mut impl Rng) -> u64 {
    ch.sample_erasures(n, rng).ones().fold(0u64, |m, q| m | 1 << q)
}

/// Monte Carlo failure rate of one code. Pauli channels use `decoder` (or an
/// automatically built table); erasure channels use [`ErasureDecoder`].
pub fn monte_carlo_with(
    code: &EACode,
    channel: &Channel,
    decoder: Option<&DecoderTable>,
    cfg: &McConfig,
) -> Result<SimResult> {
    if cfg.trials == 0 {
        return Err(Error::OutOfRange {
            what: "trials",
            value: 0.0,
        });
    }
    channel.validate()?;
    let key = derive_key(cfg.seed, &[TAG_TRIALS]);
    let failures = in_pool(cfg.workers, || count_failures(code, channel, decoder, key, cfg.trials))??;
    let p = failures as f64 / cfg.trials as f64;
    Ok(SimResult {
        n: code.n_send,
        k: code.k,
        m: code.m,
        a: code.a,
        channel: *channel,
        rate: code.rate(),
        trials: cfg.trials,
        failures,
        p_fail: p,
        ci95: wilson_interval(failures, cfg.trials, Z95),
        seed: cfg.seed,
        codes: 1,
        code_p_fail: Vec::new(),
        decode_mode: match channel.erasure() {
            Some(_) => None,
            None => Some(decoder.map(|d| d.mode()).unwrap_or(DecodeMode::auto(code.n_send))),
        },
        appendix_bound: None,
    })
}

/// [`monte_carlo_with`] on the ambient thread pool with an automatic decoder.
pub fn monte_carlo(code: &EACode, channel: &Channel, trials: u64, seed: u64) -> Result<SimResult> {
    monte_carlo_with(code, channel, None, &McConfig { trials, seed, workers: 0 })
}

/// Random-coding failure bound at block length `n`, for reference only.
pub fn appendix_bound(channel: &Channel, n: usize, rate: f64, delta: f64) -> Result<f64> {
    Ok(match (channel.pauli()?, channel.erasure()) {
        (Some(p), _) => pauli_failure_bound(choi(&p).entropy(), n, rate, delta),
        (None, Some(e)) => erasure_failure_bound(e.epsilon(), n, rate, delta),
        _ => unreachable!("channels are Pauli or erasure"),
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SweepConfig {
    pub ns: Vec<usize>,
    pub rate: f64,
    pub channel: Channel,
    /// Trials per code.
    pub trials: u64,
    /// Random codes per block length.
    pub codes: usize,
    pub seed: u64,
    pub workers: usize,
    pub delta: f64,
}

impl SweepConfig {
    pub fn new(ns: Vec<usize>, rate: f64, channel: Channel, trials: u64, seed: u64) -> Self {
        Self {
            ns,
            rate,
            channel,
            trials,
            codes: 20,
            seed,
            workers: 0,
            delta: DEFAULT_DELTA,
        }
    }
}

/// `k = round(R·n)`, `m = n − k`, `a = 0`.
pub fn sweep_params(n: usize, rate: f64) -> Result<(usize, usize)> {
    if rate.is_nan() || rate < 0.0 {
        return Err(Error::Infeasible(format!("rate {rate} is negative")));
    }
    let k = (rate * n as f64).round();
    if k > n as f64 {
        return Err(Error::Infeasible(format!("k = {k} exceeds n = {n} at rate {rate}")));
    }
    let k = k as usize;
    Ok((k, n - k))
}

/// For each block length, pools Monte Carlo runs over `codes` random
/// maximal-entanglement codes and attaches the analytic reference bound.
pub fn random_code_sweep(cfg: &SweepConfig) -> Result<Vec<SimResult>> {
    cfg.channel.validate()?;
    if cfg.codes == 0 || cfg.trials == 0 {
        return Err(Error::Infeasible("sweep needs at least one code and one trial".into()));
    }
    for &n in &cfg.ns {
        sweep_params(n, cfg.rate)?;
        if n == 0 || (cfg.channel.erasure().is_none() && n > BOUNDED_SEND_CAP) {
            return Err(Error::CapExceeded {
                what: "sweep block length",
                requested: n,
                cap: BOUNDED_SEND_CAP,
            });
        }
    }
    let pauli = cfg.channel.pauli()?;
    in_pool(cfg.workers, || {
        cfg.ns
            .iter()
            .map(|&n| {
                let (k, m) = sweep_params(n, cfg.rate)?;
                let mut failures = 0u64;
                let mut per_code = Vec::with_capacity(cfg.codes);
                for c in 0..cfg.codes as u64 {
                    let code = random_ea(k, m, 0, derive_key(cfg.seed, &[n as u64, c, TAG_CODE]))?;
                    let table = match &pauli {
                        Some(ch) => Some(build_decoder(&code, ch, DecodeMode::auto(n))?),
                        None => None,
                    };
                    let key = derive_key(cfg.seed, &[n as u64, c, TAG_TRIALS]);
                    let f = count_failures(&code, &cfg.channel, table.as_ref(), key, cfg.trials)?;
                    failures += f;
                    per_code.push(f as f64 / cfg.trials as f64);
                }
                let trials = cfg.trials * cfg.codes as u64;
                let rate = k as f64 / n as f64;
                Ok(SimResult {
                    n,
                    k,
                    m,
                    a: 0,
                    channel: cfg.channel,
                    rate,
                    trials,
                    failures,
                    p_fail: failures as f64 / trials as f64,
                    ci95: wilson_interval(failures, trials, Z95),
                    seed: cfg.seed,
                    codes: cfg.codes,
                    code_p_fail: per_code,
                    decode_mode: pauli.map(|_| DecodeMode::auto(n)),
                    appendix_bound: Some(appendix_bound(&cfg.channel, n, rate, cfg.delta)?),
                })
            })
            .collect()
    })?
}

/// Each consecutive drop in `p_fail` exceeds `z` combined standard errors.
pub fn strictly_decreasing(rows: &[SimResult], z: f64) -> bool {
    rows.windows(2).all(|w| {
        let se = (w[0].standard_error().powi(2) + w[1].standard_error().powi(2)).sqrt();
        w[0].p_fail - w[1].p_fail > z * se
    })
}

#[derive(Serialize)]
struct CsvRow {
    n: usize,
    k: usize,
    m: usize,
    a: usize,
    channel: String,
    rate: f64,
    trials: u64,
    failures: u64,
    p_fail: f64,
    ci_lo: f64,
    ci_hi: f64,
    appendix_bound: Option<f64>,
    seed: u64,
}

/// Writes rows with columns `n,k,m,a,channel,rate,trials,failures,p_fail,ci_lo,ci_hi,appendix_bound,seed`.
pub fn write_csv<W: Write>(rows: &[SimResult], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(CsvRow {
            n: r.n,
            k: r.k,
            m: r.m,
            a: r.a,
            channel: r.channel.to_string(),
            rate: r.rate,
            trials: r.trials,
            failures: r.failures,
            p_fail: r.p_fail,
            ci_lo: r.ci95.lo,
            ci_hi: r.ci95.hi,
            appendix_bound: r.appendix_bound,
            seed: r.seed,
        })?;
    }
    w.flush()?;
    Ok(())
}
