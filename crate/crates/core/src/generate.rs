//! Seeded random feasible problems with a central start.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::cones::{Barrier, BlockSpec, ProductCone};
use crate::error::Result;
use crate::io::ProblemFile;
use crate::ipm::ConicProblem;
use crate::linalg::{Matrix, Vector};
use crate::sampling::random_interior_point;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProblemKind {
    Lp,
    Socp,
    Sdp,
}

impl ProblemKind {
    /// Default cone and number of equality constraints for each kind.
    pub fn default_shape(self) -> (Vec<BlockSpec>, usize) {
        match self {
            Self::Lp => (vec![BlockSpec::Orthant { dim: 20 }], 10),
            Self::Socp => (
                vec![
                    BlockSpec::Soc { dim: 4 },
                    BlockSpec::Soc { dim: 3 },
                    BlockSpec::Soc { dim: 5 },
                ],
                5,
            ),
            Self::Sdp => (vec![BlockSpec::Psd { side: 3 }], 3),
        }
    }
}

/// A random problem over `blocks` with `m` constraints whose start is exactly
/// central with `mu = 1`: `x` random interior, `s = -F'(x)`, `y` random,
/// `b = A x`, `c = A^T y + s`.
pub fn random_problem(blocks: Vec<BlockSpec>, m: usize, rng: &mut ChaCha8Rng) -> Result<ProblemFile> {
    let cone = ProductCone::new(blocks.clone())?;
    let n = cone.dim();
    let a = Matrix::from_fn(m, n, |_, _| StandardNormal.sample(rng));
    let x = random_interior_point(&cone, rng);
    let s = -cone.primal.gradient(&x)?;
    let y = Vector::from_fn(m, |_, _| StandardNormal.sample(rng));
    let b = &a * &x;
    let c = a.transpose() * &y + &s;
    let problem = ConicProblem::new(a, b, c, blocks)?;
    Ok(ProblemFile::from_problem(&problem, Some((&x, &y, &s))))
}

pub fn generate(kind: ProblemKind, seed: u64) -> Result<ProblemFile> {
    let (blocks, m) = kind.default_shape();
    random_problem(blocks, m, &mut ChaCha8Rng::seed_from_u64(seed))
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_files_round_trip() {
        for kind in [ProblemKind::Lp, ProblemKind::Socp, ProblemKind::Sdp] {
            let file = generate(kind, 7).unwrap();
            let again = ProblemFile::from_json(&file.to_json()).unwrap();
            assert_eq!(again, file);
            let problem = again.problem().unwrap();
            assert!(again.start_vectors(&problem).is_ok());
        }
    }

    #[test]
    fn generation_is_deterministic() {
        assert_eq!(generate(ProblemKind::Lp, 3).unwrap(), generate(ProblemKind::Lp, 3).unwrap());
    }
}
