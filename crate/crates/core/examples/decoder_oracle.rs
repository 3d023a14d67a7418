//! Exact maximum-likelihood decoding of a random assisted code, compared with
//! Monte Carlo sampling of the same decoder.

use eaqec::channel::{Channel, PauliChannel};
use eaqec::eacode::random_ea;
use eaqec::simulate::{build_decoder, exact_fail_prob, monte_carlo_with, DecodeMode, McConfig};

pub fn run_example() -> eaqec::Result<()> {
    let code = random_ea(2, 3, 0, 11)?;
    let pauli = PauliChannel::depolarizing(0.05)?;
    for mode in [DecodeMode::ExactMl, DecodeMode::BoundedWeight { w_max: 1 }] {
        let table = build_decoder(&code, &pauli, mode)?;
        let exact = exact_fail_prob(&code, &pauli, &table)?;
        let cfg = McConfig { trials: 100_000, seed: 7, workers: 0 };
        let mc = monte_carlo_with(&code, &Channel::Depolarizing(0.05), Some(&table), &cfg)?;
        println!(
            "{mode}: {} syndromes, exact {:.5}, sampled {:.5} [{:.5}, {:.5}]",
            table.len(),
            exact,
            mc.p_fail,
            mc.ci95.lo,
            mc.ci95.hi
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> eaqec::Result<()> {
    run_example()
}
