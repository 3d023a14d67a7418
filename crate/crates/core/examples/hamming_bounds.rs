//! Asymptotic Hamming-type rate bounds for the depolarizing channel, and a few
//! finite checks in exact arithmetic.

use eaqec::capacity::{ea_hamming_ok, ea_hamming_rate, hamming_family, unassisted_hamming_rate};

pub fn run_example() -> eaqec::Result<()> {
    println!("{:>5} {:>9} {:>9} {:>9} {:>9}", "p", "assisted", "M=2", "M=4", "plain");
    for i in 0..=10 {
        let p = 0.025 * i as f64;
        println!(
            "{p:>5.3} {:>9.5} {:>9.5} {:>9.5} {:>9.5}",
            ea_hamming_rate(p)?,
            hamming_family(p, 2.0)?,
            hamming_family(p, 4.0)?,
            unassisted_hamming_rate(p)?
        );
    }
    for (n, k, t) in [(3, 1, 1), (3, 3, 1), (5, 1, 1), (10, 4, 2)] {
        let h = ea_hamming_ok(n, k, t)?;
        println!("[[{n},{k}]] t={t}: {} <= {}: {} (slack {:.3} bits)", h.lhs, h.rhs, h.holds, h.slack_log2);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> eaqec::Result<()> {
    run_example()
}
