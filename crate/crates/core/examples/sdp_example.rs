//! Diagonal semidefinite pair on which the integral scaling is a full-rank
//! change of the diagonal block while the NT scaling changes by rank one.

use conic_metrics::experiments::sdp_example;

fn main() -> conic_metrics::Result<()> {
    for (epsilon, n) in [(0.5, 2), (0.01, 3)] {
        let r = sdp_example(epsilon, n)?;
        println!("epsilon = {epsilon}, n = {n}, mu = {:.4}", r.mu);
        println!("  integral-scaling rank {}, NT rank {}", r.integral_rank, r.nt_rank);
        println!("  deviation from the closed form {:.2e}", r.formula_deviation);
        for (i, row) in r.integral_entries.iter().enumerate() {
            println!("  row {i}: {row:?}");
        }
    }
    Ok(())
}
