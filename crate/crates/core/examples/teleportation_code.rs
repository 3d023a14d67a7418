//! Teleportation viewed as a rate-1/2 assisted code that survives total dephasing.

use eaqec::channel::PauliChannel;
use eaqec::eacode::{StateVector, TeleportCode};
use eaqec::simulate::{build_decoder, exact_fail_prob, DecodeMode};
use num_complex::Complex64;

pub fn run_example() -> eaqec::Result<()> {
    let t = TeleportCode::new();
    let psi = StateVector::normalized(vec![Complex64::new(0.3, 0.1), Complex64::new(-0.2, 0.9)])?;
    for e in ["II", "ZI", "IZ", "ZZ", "XI"] {
        println!("error {e}: fidelity {:.12}", t.round_trip_fidelity(&psi, &e.parse()?)?);
    }

    let code = t.ea_code()?;
    let ch = PauliChannel::dephasing(0.5)?;
    let table = build_decoder(&code, &ch, DecodeMode::ExactMl)?;
    println!("rate {}, exact failure under total dephasing {}", code.rate(), exact_fail_prob(&code, &ch, &table)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> eaqec::Result<()> {
    run_example()
}
