//! Acceptance run: one pass/fail line per criterion, nonzero exit if any fails.

use std::collections::HashMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use eaqec::capacity::{
    ea_capacity, ea_hamming_ok, entanglement_ledger, erasure_capacities, CapacityLedger, ChannelEvaluator,
};
use eaqec::channel::{binary_entropy, Channel, PauliChannel};
use eaqec::eacode::{
    canonical_ea, five_qubit_from_basis_change, oracle_correctable, random_ea, three_qubit_ea,
    three_qubit_ea_error_set, TeleportCode,
};
use eaqec::pauli::{all_paulis, Pauli, PauliOperator};
use eaqec::simulate::{
    build_decoder, exact_fail_prob, monte_carlo_with, random_code_sweep, strictly_decreasing, DecodeMode,
    DecoderTable, McConfig, SweepConfig, Z95,
};
use eaqec::stabilizer::ErrorClass;
use eaqec::EACode;
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e2s(e: eaqec::Error) -> String {
    e.to_string()
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn log2_3() -> f64 {
    3f64.log2()
}

fn capacity_closed_forms() -> Outcome {
    let mut worst = Duration::ZERO;
    for p in [0.0, 0.05, 0.1, 0.25] {
        let start = Instant::now();
        let ev = ChannelEvaluator::from_channel(&Channel::Depolarizing(p)).map_err(e2s)?;
        let cap = ea_capacity(&ev).map_err(e2s)?;
        worst = worst.max(start.elapsed());
        let expected = 1.0 - p / 2.0 * log2_3() - binary_entropy(p) / 2.0;
        ensure(close(cap.q_e, expected, 1e-6), format!("p={p}: Q_E {} vs {expected}", cap.q_e))?;
        let shortcut = cap.unital_shortcut.ok_or("no unital shortcut")?;
        ensure(close(cap.c_e, shortcut, 1e-6), format!("p={p}: optimizer {} vs shortcut {shortcut}", cap.c_e))?;
    }
    ensure(worst < Duration::from_secs(1), format!("slowest channel took {worst:?}"))?;
    Ok(format!("slowest channel {worst:?}"))
}

fn dephasing() -> Outcome {
    let ledger = CapacityLedger::for_channel(&Channel::Dephasing(0.5)).map_err(e2s)?;
    ensure(close(ledger.q_e, 0.5, 1e-9), format!("Q_E(dephasing 0.5) = {}", ledger.q_e))?;
    for p in [0.1, 0.3] {
        let l = CapacityLedger::for_channel(&Channel::Dephasing(p)).map_err(e2s)?;
        let h = binary_entropy(p);
        let eq = l.e_q_bounds;
        let ec = l.e_c_bounds;
        ensure(close(eq.lo, h / 2.0, 1e-9) && close(eq.hi, h / 2.0, 1e-9), format!("p={p}: E_Q {eq:?}"))?;
        ensure(close(ec.lo, 1.0 - h, 1e-9) && close(ec.hi, 1.0, 1e-9), format!("p={p}: E_C {ec:?}"))?;
    }
    Ok("Q_E = 0.5, E_Q = H/2, E_C = [1-H, 1]".into())
}

fn erasure() -> Outcome {
    for eps in [0.0, 0.25, 0.5] {
        let e = erasure_capacities(eps).map_err(e2s)?;
        ensure(close(e.c_e, 2.0 - 2.0 * eps, 1e-12), format!("eps={eps}: C_E {}", e.c_e))?;
        ensure(close(e.q_e, 1.0 - eps, 1e-12), format!("eps={eps}: Q_E {}", e.q_e))?;
        ensure(e.e_q.is_point() && close(e.e_q.lo, eps, 1e-12), format!("eps={eps}: E_Q {:?}", e.e_q))?;
        let l = CapacityLedger::for_channel(&Channel::Erasure(eps)).map_err(e2s)?;
        ensure(
            close(l.c_e, 2.0 - 2.0 * eps, 1e-12) && close(l.e_q_bounds.lo, eps, 1e-12) && l.e_q_bounds.is_point(),
            format!("eps={eps}: ledger disagrees"),
        )?;
    }
    Ok("C_E = 2-2eps, Q_E = 1-eps, E_Q = eps".into())
}

fn three_qubit() -> Outcome {
    let start = Instant::now();
    let code = three_qubit_ea();
    let errors = three_qubit_ea_error_set();
    ensure(errors.len() == 16, format!("{} errors", errors.len()))?;
    ensure(code.correctable(&errors).map_err(e2s)?, "symplectic check rejects the error set")?;
    ensure(oracle_correctable(&code, &errors).map_err(e2s)?, "state-vector oracle rejects the error set")?;
    let zii: PauliOperator = "ZII".parse().map_err(e2s)?;
    ensure(
        matches!(code.classify(&zii).map_err(e2s)?, ErrorClass::Logical(_)),
        "ZII is not logical",
    )?;
    ensure(
        !oracle_correctable(&code, &[PauliOperator::identity(3), zii]).map_err(e2s)?,
        "state-vector oracle treats ZII as harmless",
    )?;
    let h = ea_hamming_ok(3, 1, 1).map_err(e2s)?;
    ensure(h.holds && h.lhs == "20" && h.rhs == "32", format!("Hamming {} <= {}", h.lhs, h.rhs))?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(5), format!("took {t:?}"))?;
    Ok(format!("16 errors correctable, ZII logical, 20 <= 32 ({t:?})"))
}

fn five_qubit() -> Outcome {
    let r = five_qubit_from_basis_change().map_err(e2s)?;
    ensure(r.orthogonal_error_subspaces().map_err(e2s)?, "error subspaces overlap")?;
    let mut signs = Vec::new();
    for u in &r.unassisted {
        let mut full = u.sender_op.resized(5).map_err(e2s)?;
        full.set(3, u.receiver_completion.get(0));
        full.set(4, u.receiver_completion.get(1));
        for w in &r.codewords {
            let v = w.apply_hermitian(&full).map_err(e2s)?;
            let overlap = w.inner(&v);
            ensure(
                (overlap - Complex64::new(u.sign.value(), 0.0)).norm() < 1e-9,
                format!("{full} has overlap {overlap} instead of {}", u.sign.value()),
            )?;
        }
        signs.push(format!("{}|{}:{:+}", u.sender_op, u.receiver_completion, u.sign.value()));
    }
    ensure(signs.len() == 3, "missing unassisted elements")?;
    Ok(format!("16 orthogonal classes; {}", signs.join(" ")))
}

fn teleport() -> Outcome {
    let start = Instant::now();
    let t = TeleportCode::new();
    let code = t.ea_code().map_err(e2s)?;
    let ch = PauliChannel::dephasing(0.5).map_err(e2s)?;
    let table = build_decoder(&code, &ch, DecodeMode::ExactMl).map_err(e2s)?;
    let p = exact_fail_prob(&code, &ch, &table).map_err(e2s)?;
    ensure(p == 0.0, format!("exact failure {p}"))?;
    for e in ["II", "ZI", "IZ", "ZZ"] {
        let op: PauliOperator = e.parse().map_err(e2s)?;
        ensure(!table.fails(op.u64_masks().0, op.u64_masks().1), format!("{e} not corrected"))?;
    }
    ensure(t.rate() == 0.5 && code.rate() == 0.5, "rate is not 1/2")?;
    let el = start.elapsed();
    ensure(el < Duration::from_secs(1), format!("took {el:?}"))?;
    Ok(format!("zero failure, rate 1/2 ({el:?})"))
}

fn sweep_trend() -> Outcome {
    let start = Instant::now();
    let ch = Channel::Erasure(0.25);
    let run = |rate| {
        let mut cfg = SweepConfig::new(vec![4, 6, 8, 10, 12], rate, ch, 2000, 2024);
        cfg.codes = 200;
        cfg.workers = 1;
        random_code_sweep(&cfg)
    };
    let low = run(0.5).map_err(e2s)?;
    let high = run(0.9).map_err(e2s)?;
    let fmt = |rows: &[eaqec::simulate::SimResult]| {
        rows.iter().map(|r| format!("{:.3}", r.p_fail)).collect::<Vec<_>>().join(",")
    };
    ensure(strictly_decreasing(&low, Z95), format!("R=0.5 not significantly decreasing: {}", fmt(&low)))?;
    ensure(!strictly_decreasing(&high, Z95), format!("R=0.9 decreasing: {}", fmt(&high)))?;
    let el = start.elapsed();
    ensure(el < Duration::from_secs(600), format!("took {el:?}"))?;
    Ok(format!("R=0.5 [{}], R=0.9 [{}] ({el:?})", fmt(&low), fmt(&high)))
}

fn random_table(code: &EACode, rng: &mut ChaCha8Rng) -> eaqec::Result<DecoderTable> {
    let mut by_syndrome: HashMap<Vec<bool>, Vec<PauliOperator>> = HashMap::new();
    for e in all_paulis(code.n_send) {
        let s = code.syndrome(&e)?;
        by_syndrome.entry((0..s.len()).map(|i| s.get(i)).collect()).or_default().push(e);
    }
    let mut keys: Vec<_> = by_syndrome.keys().cloned().collect();
    keys.sort();
    let picks: Vec<PauliOperator> = keys
        .iter()
        .map(|k| by_syndrome[k].choose(rng).expect("nonempty class").clone())
        .collect();
    DecoderTable::from_corrections(code, DecodeMode::ExactMl, &picks)
}

fn oracle_agreement() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let ch = Channel::Depolarizing(0.08);
    let pauli = ch.pauli().map_err(e2s)?.ok_or("not Pauli")?;
    let mut worst_sigma: f64 = 0.0;
    for i in 0..10u64 {
        let n = rng.random_range(2..=6usize);
        let k = rng.random_range(1..n);
        let code = random_ea(k, n - k, 0, 100 + i).map_err(e2s)?;
        let table = build_decoder(&code, &pauli, DecodeMode::ExactMl).map_err(e2s)?;
        let exact = exact_fail_prob(&code, &pauli, &table).map_err(e2s)?;
        let cfg = McConfig { trials: 100_000, seed: 500 + i, workers: 0 };
        let mc = monte_carlo_with(&code, &ch, Some(&table), &cfg).map_err(e2s)?;
        let sigma = (exact * (1.0 - exact) / cfg.trials as f64).sqrt().max(1e-12);
        let z = (mc.p_fail - exact).abs() / sigma;
        worst_sigma = worst_sigma.max(z);
        ensure(z <= 3.0, format!("[[{n},{k}]]: sampled {} vs exact {exact} ({z:.2} sigma)", mc.p_fail))?;
    }
    let mut margin = f64::INFINITY;
    for i in 0..4u64 {
        let n = 3 + (i as usize % 3);
        let code = random_ea(1 + i as usize % 2, n - 1 - i as usize % 2, 0, 900 + i).map_err(e2s)?;
        let ml = build_decoder(&code, &pauli, DecodeMode::ExactMl).map_err(e2s)?;
        let p_ml = exact_fail_prob(&code, &pauli, &ml).map_err(e2s)?;
        for _ in 0..100 {
            let t = random_table(&code, &mut rng).map_err(e2s)?;
            let p = exact_fail_prob(&code, &pauli, &t).map_err(e2s)?;
            ensure(p_ml <= p + 1e-12, format!("random table {p} beats ML {p_ml}"))?;
            margin = margin.min(p - p_ml);
        }
    }
    Ok(format!("max deviation {worst_sigma:.2} sigma; ML never beaten (min margin {margin:.2e})"))
}

fn single_matrix(p: Pauli) -> DMatrix<Complex64> {
    let c = |re: f64| Complex64::new(re, 0.0);
    match p {
        Pauli::I => DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(1.0)]),
        Pauli::X => DMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)]),
        // XZ
        Pauli::Y => DMatrix::from_row_slice(2, 2, &[c(0.0), c(-1.0), c(1.0), c(0.0)]),
        Pauli::Z => DMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)]),
    }
}

fn oracle_matrix(op: &PauliOperator) -> DMatrix<Complex64> {
    let mut m = DMatrix::from_element(1, 1, Complex64::new(op.sign().value(), 0.0));
    for q in 0..op.n_qubits() {
        m = m.kronecker(&single_matrix(op.get(q)));
    }
    m
}

fn check_pair(a: &PauliOperator, b: &PauliOperator) -> Result<(), String> {
    let (ma, mb) = (oracle_matrix(a), oracle_matrix(b));
    let prod = a.multiply(b).map_err(e2s)?;
    ensure((oracle_matrix(&prod) - &ma * &mb).norm() < 1e-12, format!("{a}*{b} = {prod} disagrees"))?;
    let commute = (&ma * &mb - &mb * &ma).norm() < 1e-12;
    ensure(a.commutes(b).map_err(e2s)? == commute, format!("{a},{b} commutation disagrees"))
}

fn invariants() -> Outcome {
    let mut pairs = 0usize;
    for n in 1..=2 {
        let ops: Vec<PauliOperator> = all_paulis(n).flat_map(|p| [p.clone(), p.negated()]).collect();
        for a in &ops {
            for b in &ops {
                check_pair(a, b)?;
                pairs += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let random_op = |rng: &mut ChaCha8Rng, n: usize| {
        let x = rng.random_range(0..1u64 << n);
        let z = rng.random_range(0..1u64 << n);
        let op = PauliOperator::from_u64_masks(n, x, z);
        if rng.random() {
            op.negated()
        } else {
            op
        }
    };
    for _ in 0..500 {
        let (a, b) = (random_op(&mut rng, 3), random_op(&mut rng, 3));
        check_pair(&a, &b)?;
        pairs += 1;
    }

    for seed in 0..20 {
        let code = random_ea(2, 2, 1, seed).map_err(e2s)?;
        for _ in 0..20 {
            let (a, b) = (random_op(&mut rng, 5), random_op(&mut rng, 5));
            let lhs = code.syndrome(&a.multiply(&b).map_err(e2s)?).map_err(e2s)?;
            let rhs = code.syndrome(&a).map_err(e2s)?.xor(&code.syndrome(&b).map_err(e2s)?);
            ensure(lhs == rhs, format!("syndrome not linear on {a}, {b}"))?;
        }
    }

    for m in 0..=2 {
        for a in 0..=2 {
            for code in [canonical_ea(1, m, a).map_err(e2s)?, random_ea(1, m, a, 31).map_err(e2s)?] {
                let count = code.sender_only_stabilizer_count().map_err(e2s)?;
                ensure(count == 1 << a, format!("(m={m}, a={a}): |S| = {count}"))?;
            }
        }
    }

    let mut ledgers = 0;
    let mut channels: Vec<Channel> = Vec::new();
    for i in 0..=10 {
        let x = i as f64 / 10.0;
        channels.push(Channel::Erasure(x));
        channels.push(Channel::Dephasing(x));
        channels.push(Channel::Depolarizing(x * 0.75));
    }
    channels.push(Channel::Pauli([0.7, 0.1, 0.05, 0.15]));
    for ch in &channels {
        let l = CapacityLedger::for_channel(ch).map_err(e2s)?;
        ensure(close(l.q_e, l.c_e / 2.0, 1e-12), format!("{ch}: Q_E != C_E/2"))?;
        ensure(l.inequalities.iter().all(|i| i.consistent), format!("{ch}: inconsistent ledger"))?;
        let closed_form = match ch {
            Channel::Dephasing(_) => true,
            Channel::Erasure(eps) => *eps <= 0.5,
            _ => false,
        };
        if closed_form {
            let bad: Vec<_> = l.inequalities.iter().filter(|i| !i.satisfied).map(|i| i.id.clone()).collect();
            ensure(bad.is_empty(), format!("{ch}: violated {bad:?}"))?;
            let eb = entanglement_ledger(l.c, l.q, l.c_e, l.q_e).map_err(e2s)?;
            ensure(eb.inequalities.iter().all(|i| i.satisfied), format!("{ch}: direct ledger violated"))?;
        }
        ledgers += 1;
    }
    Ok(format!("{pairs} operator pairs, 400 syndrome pairs, 18 |S| counts, {ledgers} ledgers"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 capacity closed forms", capacity_closed_forms),
        ("2 dephasing ledger", dephasing),
        ("3 erasure ledger", erasure),
        ("4 three-qubit assisted code", three_qubit),
        ("5 five-qubit reconstruction", five_qubit),
        ("6 teleportation code", teleport),
        ("7 random-code sweep trend", sweep_trend),
        ("8 decoder oracle agreement", oracle_agreement),
        ("9 invariant suites", invariants),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
