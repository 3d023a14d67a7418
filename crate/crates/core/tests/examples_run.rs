#[path = "../examples/capacity_ledger.rs"]
mod capacity_ledger;
#[path = "../examples/decoder_oracle.rs"]
mod decoder_oracle;
#[path = "../examples/five_qubit_basis_change.rs"]
mod five_qubit_basis_change;
#[path = "../examples/hamming_bounds.rs"]
mod hamming_bounds;
#[path = "../examples/random_code_sweep.rs"]
mod random_code_sweep;
#[path = "../examples/teleportation_code.rs"]
mod teleportation_code;
#[path = "../examples/three_qubit_ea.rs"]
mod three_qubit_ea;

#[test]
fn every_example_runs() {
    capacity_ledger::run_example().unwrap();
    decoder_oracle::run_example().unwrap();
    five_qubit_basis_change::run_example().unwrap();
    hamming_bounds::run_example().unwrap();
    random_code_sweep::run_example().unwrap();
    teleportation_code::run_example().unwrap();
    three_qubit_ea::run_example().unwrap();
}
