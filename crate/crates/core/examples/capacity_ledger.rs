//! Assisted capacities and entanglement bounds for a few qubit channels.

use eaqec::capacity::{ea_capacity, CapacityLedger, ChannelEvaluator};
use eaqec::channel::Channel;

pub fn run_example() -> eaqec::Result<()> {
    for spec in ["depolarizing:0.1", "dephasing:0.3", "erasure:0.25", "pauli:0.7,0.1,0.1,0.1"] {
        let ch: Channel = spec.parse()?;
        let ledger = CapacityLedger::for_channel(&ch)?;
        let raw = ea_capacity(&ChannelEvaluator::from_channel(&ch)?)?;
        println!("{ch}");
        println!("  C_E = {:.6} (optimizer {:.6}), Q_E = {:.6}", ledger.c_e, raw.c_e, ledger.q_e);
        println!(
            "  E_Q in [{:.4}, {:.4}], E_C in [{:.4}, {:.4}], random coding uses {:.4}",
            ledger.e_q_bounds.lo, ledger.e_q_bounds.hi, ledger.e_c_bounds.lo, ledger.e_c_bounds.hi, ledger.e_q_random
        );
        for ineq in &ledger.inequalities {
            println!(
                "  {:<18} {:<28} holds throughout: {:<5} holds somewhere: {}",
                ineq.id, ineq.relation, ineq.satisfied, ineq.consistent
            );
        }
        println!("  flags {:?}\n", ledger.flags);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> eaqec::Result<()> {
    run_example()
}
