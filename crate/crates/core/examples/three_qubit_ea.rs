//! The three-qubit assisted code: one transmitted-qubit bit flip plus any phase
//! pattern on the receiver halves is correctable, and `ZII` is a logical operator.

use eaqec::capacity::ea_hamming_ok;
use eaqec::eacode::{oracle_correctable, three_qubit_ea, three_qubit_ea_error_set, three_qubit_phase_table};

pub fn run_example() -> eaqec::Result<()> {
    let code = three_qubit_ea();
    println!("generators:");
    for g in &code.extended_code.generators {
        println!("  {g}");
    }
    let errors = three_qubit_ea_error_set();
    println!("{} errors, syndrome-correctable: {}", errors.len(), code.correctable(&errors)?);
    println!("state-vector oracle agrees: {}", oracle_correctable(&code, &errors)?);
    println!("ZII -> {:?}", code.classify(&"ZII".parse()?)?);

    let h = ea_hamming_ok(3, 1, 1)?;
    println!("Hamming check: {} <= {} ({})", h.lhs, h.rhs, h.holds);

    println!("phase table (signs on |00>, |01>, |10>, |11> of the receiver halves):");
    for (op, signs) in three_qubit_phase_table()? {
        println!("  {op}: {signs:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> eaqec::Result<()> {
    run_example()
}
