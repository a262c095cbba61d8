use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{check_dim, Barrier, HyperbolicBarrier, OrthantBarrier, PsdBarrier, SocBarrier};
use crate::conjugate::ConjugateBarrier;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::polynomial::Polynomial;
use crate::quadrature::LineRule;

/// File-level description of one cone block.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BlockSpec {
    Orthant { dim: usize },
    Soc { dim: usize },
    Psd { side: usize },
    Hyperbolic { poly: Vec<(f64, Vec<u32>)>, e: Vec<f64> },
}

impl BlockSpec {
    pub fn is_symmetric(&self) -> bool {
        !matches!(self, BlockSpec::Hyperbolic { .. })
    }
}

/// A cone block with its primal barrier and the matching conjugate barrier.
#[derive(Debug, Clone)]
pub struct ConeBlock {
    pub spec: BlockSpec,
    pub primal: Arc<dyn Barrier>,
    pub dual: Arc<dyn Barrier>,
}

impl ConeBlock {
    pub fn new(spec: BlockSpec) -> Result<Self> {
        let (primal, dual): (Arc<dyn Barrier>, Arc<dyn Barrier>) = match &spec {
            BlockSpec::Orthant { dim } if *dim >= 1 => (
                Arc::new(OrthantBarrier::new(*dim)),
                Arc::new(OrthantBarrier::conjugate(*dim)),
            ),
            BlockSpec::Soc { dim } if *dim >= 2 => (
                Arc::new(SocBarrier::new(*dim)),
                Arc::new(SocBarrier::conjugate(*dim)),
            ),
            BlockSpec::Psd { side } if *side >= 1 => (
                Arc::new(PsdBarrier::new(*side)),
                Arc::new(PsdBarrier::conjugate(*side)),
            ),
            BlockSpec::Hyperbolic { poly, e } => {
                let e = Vector::from_vec(e.clone());
                let nvars = e.len();
                let p = Polynomial::new(nvars, poly.clone())?;
                let primal: Arc<dyn Barrier> = Arc::new(HyperbolicBarrier::new(p, e.clone())?);
                let dual = Arc::new(ConjugateBarrier::new(primal.clone(), e)?);
                (primal, dual)
            }
            other => return Err(Error::Invalid(format!("degenerate cone block {other:?}"))),
        };
        Ok(Self { spec, primal, dual })
    }

    pub fn dim(&self) -> usize {
        self.primal.dim()
    }

    pub fn theta(&self) -> f64 {
        self.primal.theta()
    }
}

/// Sum of block barriers over concatenated coordinates.
#[derive(Debug, Clone)]
pub struct ProductBarrier {
    parts: Vec<(usize, Arc<dyn Barrier>)>,
    dim: usize,
}

impl ProductBarrier {
    pub fn new(parts: Vec<Arc<dyn Barrier>>) -> Self {
        let mut offset = 0;
        let parts: Vec<_> = parts
            .into_iter()
            .map(|b| {
                let start = offset;
                offset += b.dim();
                (start, b)
            })
            .collect();
        Self { parts, dim: offset }
    }

    /// `(start, barrier)` for each block.
    pub fn parts(&self) -> &[(usize, Arc<dyn Barrier>)] {
        &self.parts
    }

    fn each<T>(
        &self,
        x: &Vector,
        mut f: impl FnMut(&dyn Barrier, Vector) -> Result<T>,
    ) -> Result<Vec<T>> {
        check_dim(x, self.dim)?;
        self.parts
            .iter()
            .map(|(start, b)| f(b.as_ref(), x.rows(*start, b.dim()).into_owned()))
            .collect()
    }

    fn assemble_diag(&self, blocks: Vec<Matrix>) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for ((start, b), blk) in self.parts.iter().zip(blocks) {
            m.view_mut((*start, *start), (b.dim(), b.dim())).copy_from(&blk);
        }
        m
    }
}

impl Barrier for ProductBarrier {
    fn dim(&self) -> usize {
        self.dim
    }

    fn theta(&self) -> f64 {
        self.parts.iter().map(|(_, b)| b.theta()).sum()
    }

    fn is_interior(&self, x: &Vector) -> bool {
        x.len() == self.dim
            && self
                .parts
                .iter()
                .all(|(start, b)| b.is_interior(&x.rows(*start, b.dim()).into_owned()))
    }

    fn value(&self, x: &Vector) -> Result<f64> {
        Ok(self.each(x, |b, xi| b.value(&xi))?.into_iter().sum())
    }

    fn gradient(&self, x: &Vector) -> Result<Vector> {
        let parts = self.each(x, |b, xi| b.gradient(&xi))?;
        let mut g = Vector::zeros(self.dim);
        for ((start, b), gi) in self.parts.iter().zip(parts) {
            g.rows_mut(*start, b.dim()).copy_from(&gi);
        }
        Ok(g)
    }

    fn hessian(&self, x: &Vector) -> Result<Matrix> {
        let blocks = self.each(x, |b, xi| b.hessian(&xi))?;
        Ok(self.assemble_diag(blocks))
    }

    fn hessian_line_integral(
        &self,
        base: &Vector,
        direction: &Vector,
        rule: &LineRule,
    ) -> Result<Matrix> {
        check_dim(base, self.dim)?;
        check_dim(direction, self.dim)?;
        let blocks = self
            .parts
            .iter()
            .map(|(start, b)| {
                b.hessian_line_integral(
                    &base.rows(*start, b.dim()).into_owned(),
                    &direction.rows(*start, b.dim()).into_owned(),
                    rule,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.assemble_diag(blocks))
    }
}

/// An ordered product of cone blocks with primal and dual barriers.
#[derive(Debug, Clone)]
pub struct ProductCone {
    pub blocks: Vec<ConeBlock>,
    pub primal: ProductBarrier,
    pub dual: ProductBarrier,
}

impl ProductCone {
    pub fn new(specs: Vec<BlockSpec>) -> Result<Self> {
        if specs.is_empty() {
            return Err(Error::Invalid("cone needs at least one block".into()));
        }
        let blocks = specs
            .into_iter()
            .map(ConeBlock::new)
            .collect::<Result<Vec<_>>>()?;
        let primal = ProductBarrier::new(blocks.iter().map(|b| b.primal.clone()).collect());
        let dual = ProductBarrier::new(blocks.iter().map(|b| b.dual.clone()).collect());
        Ok(Self {
            blocks,
            primal,
            dual,
        })
    }

    pub fn dim(&self) -> usize {
        self.primal.dim()
    }

    pub fn theta(&self) -> f64 {
        self.primal.theta()
    }

    pub fn is_symmetric(&self) -> bool {
        self.blocks.iter().all(|b| b.spec.is_symmetric())
    }

    pub fn specs(&self) -> Vec<BlockSpec> {
        self.blocks.iter().map(|b| b.spec.clone()).collect()
    }

    /// `(start, block)` pairs.
    pub fn ranges(&self) -> impl Iterator<Item = (usize, &ConeBlock)> {
        self.primal
            .parts()
            .iter()
            .map(|(s, _)| *s)
            .zip(self.blocks.iter())
    }
}
