//! Rebuilds the five-qubit code from assisted codewords and checks that the
//! sixteen single-qubit error classes land in orthogonal subspaces.

use eaqec::eacode::five_qubit_from_basis_change;

pub fn run_example() -> eaqec::Result<()> {
    let r = five_qubit_from_basis_change()?;
    println!("reconstructed stabilizer:");
    for g in &r.code.generators {
        println!("  {g}");
    }
    println!("distance {}", r.code.distance()?);
    println!("orthogonal error subspaces: {}", r.orthogonal_error_subspaces()?);
    for u in &r.unassisted {
        println!(
            "  {} completed by {} fixes the codespace with sign {:+}; alone orthogonal: {}",
            u.sender_op,
            u.receiver_completion,
            u.sign.value(),
            u.orthogonal_alone
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> eaqec::Result<()> {
    run_example()
}
