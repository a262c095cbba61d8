//! On a slice of the 3x3 positive semidefinite cone the minimiser of the first
//! metric residual does not also zero the second one.

use conic_metrics::experiments::vinberg_experiment;

fn main() -> conic_metrics::Result<()> {
    let report = vinberg_experiment(&[0.1, 0.05, 0.02, 0.01])?;
    println!("{:>8} {:>12} {:>12} {:>12}", "epsilon", "first", "second", "control");
    for row in &report.rows {
        println!(
            "{:>8} {:>12.3e} {:>12.3e} {:>12.3e}",
            row.epsilon, row.first_residual, row.second_residual, row.control_second
        );
    }
    println!("log-log slope of the second residual: {:.3}", report.slope);
    Ok(())
}
