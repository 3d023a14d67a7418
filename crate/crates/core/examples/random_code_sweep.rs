//! Failure rate of random maximal-entanglement codes over an erasure channel
//! as the block length grows, below and above the assisted quantum capacity.

use eaqec::simulate::{random_code_sweep, strictly_decreasing, SweepConfig, Z95};

pub fn run_example() -> eaqec::Result<()> {
    let channel = "erasure:0.25".parse()?;
    for rate in [0.5, 0.9] {
        let mut cfg = SweepConfig::new(vec![4, 6, 8, 10, 12], rate, channel, 2000, 2024);
        cfg.codes = 200;
        let rows = random_code_sweep(&cfg)?;
        println!("rate {rate}");
        println!("{:>3} {:>3} {:>3} {:>9} {:>9} {:>12}", "n", "k", "m", "p_fail", "se", "bound");
        for r in &rows {
            println!(
                "{:>3} {:>3} {:>3} {:>9.5} {:>9.5} {:>12.4e}",
                r.n,
                r.k,
                r.m,
                r.p_fail,
                r.standard_error(),
                r.appendix_bound.unwrap_or(f64::NAN)
            );
        }
        println!("strictly decreasing at 95%: {}\n", strictly_decreasing(&rows, Z95));
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> eaqec::Result<()> {
    run_example()
}
