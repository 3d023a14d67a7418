//! Command-line front end: `capacity`, `verify`, `bounds`, `simulate`, `sweep`.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 usage or parse error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::capacity::{
    ea_hamming_ok, ea_hamming_rate, ea_hamming_with_entanglement, hamming_family, unassisted_hamming_rate,
    CapacityLedger, HammingCheck,
};
use crate::channel::{Channel, PauliChannel};
use crate::eacode::{
    five_qubit_from_basis_change, oracle_correctable, random_ea, three_qubit_ea_codeword,
    three_qubit_ea_error_set, three_qubit_phase_table, NamedCode, StateVector, TeleportCode,
};
use crate::error::{Error, Result};
use crate::pauli::PauliOperator;
use crate::simulate::{
    build_decoder, exact_fail_prob, monte_carlo_with, random_code_sweep, sweep_params, write_csv, DecodeMode,
    McConfig, SimResult, SweepConfig, DEFAULT_DELTA,
};
use crate::stabilizer::ErrorClass;

#[derive(Parser, Debug)]
#[command(name = "eaqec", version, about = "Entanglement-assisted quantum error correction toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Capacity ledger for a channel.
    Capacity(Flags),
    /// Run the claim suite of a named code.
    Verify(Flags),
    /// Hamming-type rate bounds as a table.
    Bounds(Flags),
    /// Monte Carlo failure rate of one code.
    Simulate(Flags),
    /// Failure rate of random codes across block lengths.
    Sweep(Flags),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// Flags shared by every command; a `--config` JSON file may supply any of them.
#[derive(Args, Debug, Default, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Flags {
    /// Channel spec: depolarizing:p, dephasing:p, erasure:eps, pauli:pI,pX,pY,pZ.
    #[arg(long)]
    pub channel: Option<String>,
    /// Code id: three-qubit-ea, five-qubit, teleport, or random (with --n and --rate).
    #[arg(long)]
    pub code: Option<String>,
    /// Block lengths (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub n: Option<Vec<usize>>,
    #[arg(long)]
    pub rate: Option<f64>,
    /// Trials (per code for sweeps).
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Worker threads; 0 uses all cores. Does not change results.
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Random codes per block length in sweeps.
    #[arg(long)]
    pub codes: Option<usize>,
    /// Error fractions: `start:stop:step` or a comma list.
    #[arg(long)]
    pub p: Option<String>,
    /// Hamming-family indices M (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub m: Option<Vec<f64>>,
    /// E-bits per channel use (comma separated).
    #[arg(long, value_delimiter = ',')]
    pub e: Option<Vec<f64>>,
    /// Finite Hamming checks as `n,k,t`; repeatable.
    #[arg(long)]
    pub nkt: Option<Vec<String>>,
    /// Known unassisted classical capacity.
    #[arg(long = "classical")]
    #[serde(rename = "classical")]
    pub c: Option<f64>,
    /// Known unassisted quantum capacity.
    #[arg(long = "quantum")]
    #[serde(rename = "quantum")]
    pub q: Option<f64>,
    /// Slack in the displayed random-coding bound.
    #[arg(long)]
    pub delta: Option<f64>,
    /// JSON file whose keys mirror these flags; flags given on the command line win.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
}

macro_rules! fill {
    ($dst:ident, $src:ident, $($f:ident),*) => {
        $( if $dst.$f.is_none() { $dst.$f = $src.$f; } )*
    };
}

impl Flags {
    fn merged(mut self) -> Result<Self> {
        let Some(path) = self.config.clone() else {
            return Ok(self);
        };
        let text = std::fs::read_to_string(&path)?;
        let file: Flags =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("config {}: {e}", path.display())))?;
        fill!(self, file, channel, code, n, rate, trials, seed, workers, out, format, codes, p, m, e, nkt, c, q, delta);
        Ok(self)
    }

    fn channel(&self) -> Result<Channel> {
        self.channel
            .as_deref()
            .ok_or_else(|| Error::Parse("--channel is required".into()))?
            .parse()
    }
}

enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(msg) => Failure::Check(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(stdout, "{e}")
            } else {
                write!(stderr, "{e}")
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => 0,
        Err(Failure::Check(msg)) => {
            let _ = writeln!(stderr, "check failed: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}\n\nRun `eaqec <command> --help` for usage.");
            2
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    match cmd {
        Command::Capacity(f) => cmd_capacity(&f.merged()?, stdout),
        Command::Verify(f) => cmd_verify(&f.merged()?, stdout),
        Command::Bounds(f) => cmd_bounds(&f.merged()?, stdout),
        Command::Simulate(f) => cmd_simulate(&f.merged()?, stdout),
        Command::Sweep(f) => cmd_sweep(&f.merged()?, stdout),
    }
}

/// Writes to `--out` when given (printing `summary` to stdout), else to stdout.
fn emit(flags: &Flags, stdout: &mut dyn Write, summary: &str, body: impl FnOnce(&mut dyn Write) -> Result<()>) -> Result<()> {
    match &flags.out {
        Some(path) => {
            let mut file = BufWriter::new(File::create(path)?);
            body(&mut file)?;
            file.flush()?;
            writeln!(stdout, "{summary}")?;
            writeln!(stdout, "wrote {}", path.display())?;
        }
        None => body(stdout)?,
    }
    Ok(())
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn require_json(flags: &Flags, what: &str) -> Result<()> {
    if flags.format == Some(Format::Csv) {
        return Err(Error::Parse(format!("{what} output is JSON only")));
    }
    Ok(())
}

fn cmd_capacity(flags: &Flags, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    require_json(flags, "capacity")?;
    let ch = flags.channel()?;
    let ledger = if flags.c.is_some() || flags.q.is_some() {
        CapacityLedger::with_unassisted(&ch, flags.c, flags.q)?
    } else {
        CapacityLedger::for_channel(&ch)?
    };
    let summary = format!("{ch}: C_E = {:.6}, Q_E = {:.6}", ledger.c_e, ledger.q_e);
    emit(flags, stdout, &summary, |w| write_json(w, &ledger))?;
    Ok(())
}

/// One named-code claim and whether it held.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimResult {
    pub claim: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub code: String,
    pub n_send: usize,
    pub k: usize,
    pub m: usize,
    pub a: usize,
    pub generators: Vec<String>,
    pub claims: Vec<ClaimResult>,
    pub passed: bool,
}

fn claim(claims: &mut Vec<ClaimResult>, name: &str, passed: bool, detail: impl Into<String>) {
    claims.push(ClaimResult {
        claim: name.into(),
        passed,
        detail: detail.into(),
    });
}

fn random_qubit(rng: &mut impl Rng) -> Result<StateVector> {
    let mut amp = || Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5);
    StateVector::normalized(vec![amp(), amp()])
}

/// Runs every claim attached to a named code.
pub fn verify_code(id: NamedCode) -> Result<VerifyReport> {
    let code = id.ea_code()?;
    let mut claims = Vec::new();
    match id {
        NamedCode::ThreeQubitEa => {
            let errors = three_qubit_ea_error_set();
            claim(&mut claims, "error_set_size", errors.len() == 16, format!("{} errors", errors.len()));
            claim(&mut claims, "error_set_correctable", code.correctable(&errors)?, "symplectic syndrome check");
            claim(
                &mut claims,
                "error_set_correctable_state_oracle",
                oracle_correctable(&code, &errors)?,
                "Knill-Laflamme conditions on projected codewords",
            );
            let zii: PauliOperator = "ZII".parse()?;
            let class = code.classify(&zii)?;
            claim(
                &mut claims,
                "zii_is_logical",
                matches!(class, ErrorClass::Logical(_)),
                format!("{class:?}"),
            );
            claim(
                &mut claims,
                "zii_not_correctable_state_oracle",
                !oracle_correctable(&code, &[PauliOperator::identity(3), zii])?,
                "ZII acts nontrivially on the codespace",
            );
            let h = ea_hamming_ok(3, 1, 1)?;
            claim(&mut claims, "ea_hamming_3_1_1", h.holds, format!("{} <= {}", h.lhs, h.rhs));
            let table = three_qubit_phase_table()?;
            let expected = [[1, 1, 1, 1], [1, -1, 1, -1], [1, -1, -1, 1], [1, 1, -1, -1]];
            let got: Vec<[i8; 4]> = table.iter().map(|t| t.1).collect();
            claim(&mut claims, "phase_table", got == expected, format!("{got:?}"));
            let word = three_qubit_ea_codeword(Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8))?;
            let fixed = code
                .extended_code
                .generators
                .iter()
                .map(|g| word.apply_hermitian(g).map(|v| (word.inner(&v).re - 1.0).abs() < 1e-12))
                .collect::<Result<Vec<bool>>>()?;
            claim(&mut claims, "explicit_codeword_in_codespace", fixed.iter().all(|&b| b), "all generators fix it");
        }
        NamedCode::FiveQubit => {
            let r = five_qubit_from_basis_change()?;
            claim(&mut claims, "orthogonal_error_subspaces", r.orthogonal_error_subspaces()?, "16 single-error classes");
            let d = r.code.distance()?;
            claim(&mut claims, "distance_3", d == 3, format!("distance {d}"));
            for u in &r.unassisted {
                claim(
                    &mut claims,
                    &format!("unassisted_{}", u.sender_op),
                    u.orthogonal_alone,
                    format!(
                        "{}|{} fixes the codespace with sign {}; {} alone maps it to an orthogonal subspace",
                        u.sender_op,
                        u.receiver_completion,
                        u.sign.value(),
                        u.sender_op
                    ),
                );
            }
        }
        NamedCode::Teleport => {
            let t = TeleportCode::new();
            let ch = PauliChannel::dephasing(0.5)?;
            let table = build_decoder(&code, &ch, DecodeMode::ExactMl)?;
            let p = exact_fail_prob(&code, &ch, &table)?;
            claim(&mut claims, "total_dephasing_zero_failure", p == 0.0, format!("exact failure probability {p}"));
            claim(&mut claims, "rate_one_half", t.rate() == 0.5 && code.rate() == 0.5, "1 qubit per 2 channel uses");
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            let mut worst: f64 = 1.0;
            for _ in 0..16 {
                let psi = random_qubit(&mut rng)?;
                for e in ["II", "ZI", "IZ", "ZZ"] {
                    worst = worst.min(t.round_trip_fidelity(&psi, &e.parse()?)?);
                }
            }
            claim(
                &mut claims,
                "z_patterns_round_trip",
                (worst - 1.0).abs() < 1e-12,
                format!("worst fidelity {worst}"),
            );
        }
    }
    let passed = claims.iter().all(|c| c.passed);
    Ok(VerifyReport {
        code: id.id().into(),
        n_send: code.n_send,
        k: code.k,
        m: code.m,
        a: code.a,
        generators: code.extended_code.generators.iter().map(|g| g.to_string()).collect(),
        claims,
        passed,
    })
}

fn cmd_verify(flags: &Flags, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    require_json(flags, "verify")?;
    let id: NamedCode = flags
        .code
        .as_deref()
        .ok_or_else(|| Error::Parse("--code is required".into()))?
        .parse()?;
    let report = verify_code(id)?;
    let passed = report.claims.iter().filter(|c| c.passed).count();
    let summary = format!("{}: {passed}/{} claims passed", report.code, report.claims.len());
    emit(flags, stdout, &summary, |w| write_json(w, &report))?;
    if !report.passed {
        return Err(Failure::Check(summary));
    }
    Ok(())
}

fn parse_p(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::Parse(format!("bad --p `{spec}`: use start:stop:step or a comma list"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    if spec.contains(':') {
        let parts: Vec<&str> = spec.split(':').collect();
        let [a, b, s] = parts.as_slice() else {
            return Err(bad());
        };
        let (start, stop, step) = (num(a)?, num(b)?, num(s)?);
        if step <= 0.0 || stop < start {
            return Err(bad());
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize;
        Ok((0..=count).map(|i| start + i as f64 * step).collect())
    } else {
        spec.split(',').map(num).collect()
    }
}

/// One row of the asymptotic bound table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundRow {
    pub p: f64,
    pub ea_hamming_rate: f64,
    pub unassisted_hamming_rate: f64,
    /// `(M, rate)` pairs.
    pub family: Vec<(f64, f64)>,
    /// `(E, rate)` pairs.
    pub with_entanglement: Vec<(f64, f64)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteHammingRow {
    pub n: usize,
    pub k: usize,
    pub t: usize,
    #[serde(flatten)]
    pub check: HammingCheck,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsTable {
    pub rows: Vec<BoundRow>,
    pub finite: Vec<FiniteHammingRow>,
}

/// Rate bounds over `ps` for each family index in `ms` and e-bit rate in `es`,
/// plus finite checks for each `(n, k, t)`.
pub fn bounds_table(ps: &[f64], ms: &[f64], es: &[f64], nkt: &[(usize, usize, usize)]) -> Result<BoundsTable> {
    let rows = ps
        .iter()
        .map(|&p| {
            Ok(BoundRow {
                p,
                ea_hamming_rate: ea_hamming_rate(p)?,
                unassisted_hamming_rate: unassisted_hamming_rate(p)?,
                family: ms.iter().map(|&m| Ok((m, hamming_family(p, m)?))).collect::<Result<_>>()?,
                with_entanglement: es
                    .iter()
                    .map(|&e| Ok((e, ea_hamming_with_entanglement(p, e)?)))
                    .collect::<Result<_>>()?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let finite = nkt
        .iter()
        .map(|&(n, k, t)| Ok(FiniteHammingRow { n, k, t, check: ea_hamming_ok(n, k, t)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundsTable { rows, finite })
}

fn parse_nkt(s: &str) -> Result<(usize, usize, usize)> {
    let v = s
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Parse(format!("bad --nkt `{s}`: use n,k,t")))?;
    match v.as_slice() {
        [n, k, t] => Ok((*n, *k, *t)),
        _ => Err(Error::Parse(format!("bad --nkt `{s}`: use n,k,t"))),
    }
}

fn write_bounds_csv(table: &BoundsTable, out: &mut dyn Write) -> Result<()> {
    if !table.finite.is_empty() {
        let mut w = csv::Writer::from_writer(&mut *out);
        w.write_record(["n", "k", "t", "holds", "lhs", "rhs", "slack_log2"])?;
        for r in &table.finite {
            w.write_record([
                r.n.to_string(),
                r.k.to_string(),
                r.t.to_string(),
                r.check.holds.to_string(),
                r.check.lhs.clone(),
                r.check.rhs.clone(),
                r.check.slack_log2.to_string(),
            ])?;
        }
        w.flush()?;
        drop(w);
        if table.rows.is_empty() {
            return Ok(());
        }
        writeln!(out)?;
    }
    let mut w = csv::Writer::from_writer(&mut *out);
    let Some(first) = table.rows.first() else {
        return Ok(());
    };
    let mut header = vec!["p".to_string(), "ea_hamming_rate".into(), "unassisted_hamming_rate".into()];
    header.extend(first.family.iter().map(|(m, _)| format!("family_M{m}")));
    header.extend(first.with_entanglement.iter().map(|(e, _)| format!("with_entanglement_E{e}")));
    w.write_record(&header)?;
    for r in &table.rows {
        let mut rec = vec![r.p.to_string(), r.ea_hamming_rate.to_string(), r.unassisted_hamming_rate.to_string()];
        rec.extend(r.family.iter().map(|(_, v)| v.to_string()));
        rec.extend(r.with_entanglement.iter().map(|(_, v)| v.to_string()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(())
}

fn cmd_bounds(flags: &Flags, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    let nkt = flags
        .nkt
        .iter()
        .flatten()
        .map(|s| parse_nkt(s))
        .collect::<Result<Vec<_>>>()?;
    let ps = match (&flags.p, nkt.is_empty()) {
        (Some(spec), _) => parse_p(spec)?,
        (None, true) => parse_p("0:0.75:0.05")?,
        (None, false) => Vec::new(),
    };
    let ms = flags.m.clone().unwrap_or_else(|| vec![1.0, 2.0, 4.0]);
    let es = flags.e.clone().unwrap_or_else(|| vec![0.0, 0.5, 1.0]);
    let table = bounds_table(&ps, &ms, &es, &nkt)?;
    let summary = format!("{} rate rows, {} finite checks", table.rows.len(), table.finite.len());
    emit(flags, stdout, &summary, |w| match flags.format.unwrap_or(Format::Csv) {
        Format::Csv => write_bounds_csv(&table, w),
        Format::Json => write_json(w, &table),
    })?;
    Ok(())
}

fn write_rows(flags: &Flags, rows: &[SimResult], w: &mut dyn Write) -> Result<()> {
    match flags.format.unwrap_or(Format::Csv) {
        Format::Csv => write_csv(rows, w),
        Format::Json => write_json(w, &rows),
    }
}

fn cmd_simulate(flags: &Flags, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    let ch = flags.channel()?;
    let seed = flags.seed.unwrap_or(0);
    let code = match flags.code.as_deref() {
        None => return Err(Error::Parse("--code is required".into()).into()),
        Some("random") => {
            let n = match flags.n.as_deref() {
                Some([n]) => *n,
                _ => return Err(Error::Parse("--code random needs a single --n".into()).into()),
            };
            let rate = flags
                .rate
                .ok_or_else(|| Error::Parse("--code random needs --rate".into()))?;
            let (k, m) = sweep_params(n, rate)?;
            random_ea(k, m, 0, seed)?
        }
        Some(id) => id.parse::<NamedCode>()?.ea_code()?,
    };
    let cfg = McConfig {
        trials: flags.trials.unwrap_or(10_000),
        seed,
        workers: flags.workers.unwrap_or(0),
    };
    let mut result = monte_carlo_with(&code, &ch, None, &cfg)?;
    result.appendix_bound = Some(crate::simulate::appendix_bound(
        &ch,
        code.n_send,
        code.rate(),
        flags.delta.unwrap_or(DEFAULT_DELTA),
    )?);
    let summary = format!(
        "n={} k={} {}: {}/{} failures, p_fail = {:.6} [{:.6}, {:.6}]",
        result.n, result.k, ch, result.failures, result.trials, result.p_fail, result.ci95.lo, result.ci95.hi
    );
    emit(flags, stdout, &summary, |w| write_rows(flags, std::slice::from_ref(&result), w))?;
    Ok(())
}

fn cmd_sweep(flags: &Flags, stdout: &mut dyn Write) -> std::result::Result<(), Failure> {
    let ch = flags.channel()?;
    let ns = flags.n.clone().ok_or_else(|| Error::Parse("--n is required".into()))?;
    let rate = flags.rate.ok_or_else(|| Error::Parse("--rate is required".into()))?;
    let mut cfg = SweepConfig::new(ns, rate, ch, flags.trials.unwrap_or(2000), flags.seed.unwrap_or(0));
    if let Some(c) = flags.codes {
        cfg.codes = c;
    }
    cfg.workers = flags.workers.unwrap_or(0);
    cfg.delta = flags.delta.unwrap_or(DEFAULT_DELTA);
    let rows = random_code_sweep(&cfg)?;
    let summary = rows
        .iter()
        .map(|r| format!("n={:>3} k={:>3} p_fail={:.6}", r.n, r.k, r.p_fail))
        .collect::<Vec<_>>()
        .join("\n");
    emit(flags, stdout, &summary, |w| write_rows(flags, &rows, w))?;
    Ok(())
}
