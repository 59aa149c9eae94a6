//! Convex gauges `g: R^N -> [0, inf)` and the transport cost `g(y - x)^p`.
//!
//! A [`Gauge`] is an immutable expression tree. Leaves are the classical
//! norms plus a few named examples (`cylinder3`, `doublecone3`, crystalline
//! norms, `|<v, x>|`); the two combinators are the pointwise maximum and
//! composition with a coordinate projection. Every node is positively
//! homogeneous, so every gauge built here is a seminorm.
//!
//! Polyhedral nodes (l1, linf, crystalline, abs-inner) and the combinators
//! over them also evaluate in exact rational arithmetic.

mod cost;
mod descriptor;

use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

pub use cost::CostSpec;
pub use descriptor::GaugeDescriptor;

use crate::scalar::decimal_to_ratio;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GaugeError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("crystalline vectors span a space of dimension {rank}, need {dim}")]
    RankDeficient { rank: usize, dim: usize },
    #[error("invalid projection: {0}")]
    InvalidProjection(String),
    #[error("gauge `{0}` has no exact rational evaluation")]
    ExactUnsupported(&'static str),
}

/// Immutable convex gauge on `R^dim`.
#[derive(Debug, Clone, PartialEq)]
pub struct Gauge {
    dim: usize,
    node: Node,
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    PNorm { p: f64 },
    L1,
    LInf,
    Crystalline { vectors: Vec<Vec<f64>>, exact: Vec<Vec<BigRational>> },
    Cylinder3,
    DoubleCone3,
    AbsInner { v: Vec<f64>, exact: Vec<BigRational> },
    Max(Arc<Gauge>, Arc<Gauge>),
    Projected { inner: Arc<Gauge>, coords: Vec<usize> },
}

fn check_dim(dim: usize) -> Result<(), GaugeError> {
    if dim == 0 {
        return Err(GaugeError::InvalidParameter("dimension must be positive".into()));
    }
    Ok(())
}

fn exact_vector(v: &[f64]) -> Result<Vec<BigRational>, GaugeError> {
    v.iter()
        .map(|&c| decimal_to_ratio(c).map_err(|_| GaugeError::InvalidParameter(format!("non-finite entry {c}"))))
        .collect()
}

impl Gauge {
    /// `(sum |x_k|^p)^(1/p)` for `p` in `(1, inf)`.
    pub fn pnorm(dim: usize, p: f64) -> Result<Self, GaugeError> {
        check_dim(dim)?;
        if !(p.is_finite() && p > 1.0) {
            return Err(GaugeError::InvalidParameter(format!("p-norm exponent must lie in (1, inf), got {p}")));
        }
        Ok(Gauge { dim, node: Node::PNorm { p } })
    }

    pub fn euclidean(dim: usize) -> Result<Self, GaugeError> {
        Self::pnorm(dim, 2.0)
    }

    pub fn l1(dim: usize) -> Result<Self, GaugeError> {
        check_dim(dim)?;
        Ok(Gauge { dim, node: Node::L1 })
    }

    pub fn linf(dim: usize) -> Result<Self, GaugeError> {
        check_dim(dim)?;
        Ok(Gauge { dim, node: Node::LInf })
    }

    /// `max_{v in V} |<v, x>|`. The vectors must span `R^N`.
    pub fn crystalline(vectors: Vec<Vec<f64>>) -> Result<Self, GaugeError> {
        let dim = vectors
            .first()
            .map(Vec::len)
            .ok_or_else(|| GaugeError::InvalidParameter("crystalline norm needs at least one vector".into()))?;
        check_dim(dim)?;
        if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
            return Err(GaugeError::DimensionMismatch { expected: dim, got: bad.len() });
        }
        let exact = vectors.iter().map(|v| exact_vector(v)).collect::<Result<Vec<_>, _>>()?;
        let rank = rank(&vectors);
        if rank < dim {
            return Err(GaugeError::RankDeficient { rank, dim });
        }
        Ok(Gauge { dim, node: Node::Crystalline { vectors, exact } })
    }

    /// `max{ sqrt(x^2 + y^2), |z| }` on `R^3`.
    pub fn cylinder3() -> Self {
        Gauge { dim: 3, node: Node::Cylinder3 }
    }

    /// `sqrt(x^2 + y^2) + |z|` on `R^3`.
    pub fn double_cone3() -> Self {
        Gauge { dim: 3, node: Node::DoubleCone3 }
    }

    /// `|<v, x>|`.
    pub fn abs_inner(v: Vec<f64>) -> Result<Self, GaugeError> {
        check_dim(v.len())?;
        let exact = exact_vector(&v)?;
        Ok(Gauge { dim: v.len(), node: Node::AbsInner { v, exact } })
    }

    /// Pointwise maximum of two gauges on the same space.
    pub fn make_max(a: Gauge, b: Gauge) -> Result<Self, GaugeError> {
        if a.dim != b.dim {
            return Err(GaugeError::DimensionMismatch { expected: a.dim, got: b.dim });
        }
        Ok(Gauge { dim: a.dim, node: Node::Max(Arc::new(a), Arc::new(b)) })
    }

    /// `g ∘ p` where `p: R^target_dim -> R^g.dim()` keeps the listed
    /// coordinates (zero-based, in order).
    pub fn make_projected(inner: Gauge, coords: Vec<usize>, target_dim: usize) -> Result<Self, GaugeError> {
        if coords.len() != inner.dim {
            return Err(GaugeError::InvalidProjection(format!(
                "{} indices given for an inner gauge of dimension {}",
                coords.len(),
                inner.dim
            )));
        }
        if target_dim <= inner.dim {
            return Err(GaugeError::InvalidProjection(format!(
                "target dimension {target_dim} must exceed inner dimension {}",
                inner.dim
            )));
        }
        if let Some(&c) = coords.iter().find(|&&c| c >= target_dim) {
            return Err(GaugeError::InvalidProjection(format!("index {c} out of range for dimension {target_dim}")));
        }
        let mut seen = vec![false; target_dim];
        for &c in &coords {
            if std::mem::replace(&mut seen[c], true) {
                return Err(GaugeError::InvalidProjection(format!("index {c} repeated")));
            }
        }
        Ok(Gauge { dim: target_dim, node: Node::Projected { inner: Arc::new(inner), coords } })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &'static str {
        match &self.node {
            Node::PNorm { .. } => "pnorm",
            Node::L1 => "l1",
            Node::LInf => "linf",
            Node::Crystalline { .. } => "crystalline",
            Node::Cylinder3 => "cylinder3",
            Node::DoubleCone3 => "doublecone3",
            Node::AbsInner { .. } => "absinner",
            Node::Max(..) => "max",
            Node::Projected { .. } => "projected",
        }
    }

    /// Whether every node of the tree has a rational formula.
    pub fn supports_exact(&self) -> bool {
        match &self.node {
            Node::PNorm { .. } | Node::Cylinder3 | Node::DoubleCone3 => false,
            Node::L1 | Node::LInf | Node::Crystalline { .. } | Node::AbsInner { .. } => true,
            Node::Max(a, b) => a.supports_exact() && b.supports_exact(),
            Node::Projected { inner, .. } => inner.supports_exact(),
        }
    }

    /// A gauge is a norm when it vanishes only at the origin. All nodes are
    /// seminorms whose kernel is the null space of [`Self::kernel_rows`].
    pub fn is_norm(&self) -> bool {
        rank(&self.kernel_rows()) == self.dim
    }

    /// Rows of a matrix whose null space is the kernel of the gauge.
    fn kernel_rows(&self) -> Vec<Vec<f64>> {
        let identity = |n: usize| {
            (0..n)
                .map(|k| {
                    let mut row = vec![0.0; n];
                    row[k] = 1.0;
                    row
                })
                .collect()
        };
        match &self.node {
            Node::PNorm { .. } | Node::L1 | Node::LInf | Node::Cylinder3 | Node::DoubleCone3 => identity(self.dim),
            Node::Crystalline { vectors, .. } => vectors.clone(),
            Node::AbsInner { v, .. } => vec![v.clone()],
            Node::Max(a, b) => {
                let mut rows = a.kernel_rows();
                rows.extend(b.kernel_rows());
                rows
            }
            Node::Projected { inner, coords } => inner
                .kernel_rows()
                .into_iter()
                .map(|row| {
                    let mut lifted = vec![0.0; self.dim];
                    for (k, &c) in coords.iter().enumerate() {
                        lifted[c] = row[k];
                    }
                    lifted
                })
                .collect(),
        }
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64, GaugeError> {
        if x.len() != self.dim {
            return Err(GaugeError::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(self.eval_unchecked(x))
    }

    /// Evaluation without the dimension check; `x.len()` must equal `dim`.
    pub(crate) fn eval_unchecked(&self, x: &[f64]) -> f64 {
        match &self.node {
            Node::PNorm { p } => {
                let p = *p;
                if p == 2.0 {
                    x.iter().map(|c| c * c).sum::<f64>().sqrt()
                } else {
                    let scale = x.iter().fold(0.0f64, |m, c| m.max(c.abs()));
                    if scale == 0.0 {
                        return 0.0;
                    }
                    scale * x.iter().map(|c| (c.abs() / scale).powf(p)).sum::<f64>().powf(1.0 / p)
                }
            }
            Node::L1 => x.iter().map(|c| c.abs()).sum(),
            Node::LInf => x.iter().fold(0.0, |m, c| m.max(c.abs())),
            Node::Crystalline { vectors, .. } => vectors.iter().fold(0.0, |m, v| m.max(dot(v, x).abs())),
            Node::Cylinder3 => x[0].hypot(x[1]).max(x[2].abs()),
            Node::DoubleCone3 => x[0].hypot(x[1]) + x[2].abs(),
            Node::AbsInner { v, .. } => dot(v, x).abs(),
            Node::Max(a, b) => a.eval_unchecked(x).max(b.eval_unchecked(x)),
            Node::Projected { inner, coords } => {
                let projected: Vec<f64> = coords.iter().map(|&c| x[c]).collect();
                inner.eval_unchecked(&projected)
            }
        }
    }

    /// Exact evaluation for polyhedral trees.
    pub fn eval_exact(&self, x: &[BigRational]) -> Result<BigRational, GaugeError> {
        if x.len() != self.dim {
            return Err(GaugeError::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        self.eval_exact_unchecked(x)
    }

    fn eval_exact_unchecked(&self, x: &[BigRational]) -> Result<BigRational, GaugeError> {
        let max = |a: BigRational, b: BigRational| if b > a { b } else { a };
        match &self.node {
            Node::PNorm { .. } | Node::Cylinder3 | Node::DoubleCone3 => Err(GaugeError::ExactUnsupported(self.kind())),
            Node::L1 => Ok(x.iter().fold(BigRational::zero(), |s, c| s + c.abs())),
            Node::LInf => Ok(x.iter().fold(BigRational::zero(), |m, c| max(m, c.abs()))),
            Node::Crystalline { exact, .. } => {
                Ok(exact.iter().fold(BigRational::zero(), |m, v| max(m, dot(v, x).abs())))
            }
            Node::AbsInner { exact, .. } => Ok(dot(exact, x).abs()),
            Node::Max(a, b) => Ok(max(a.eval_exact_unchecked(x)?, b.eval_exact_unchecked(x)?)),
            Node::Projected { inner, coords } => {
                let projected: Vec<BigRational> = coords.iter().map(|&c| x[c].clone()).collect();
                inner.eval_exact_unchecked(&projected)
            }
        }
    }

    pub fn descriptor(&self) -> GaugeDescriptor {
        match &self.node {
            Node::PNorm { p } => GaugeDescriptor::PNorm { dim: self.dim, p: *p },
            Node::L1 => GaugeDescriptor::L1 { dim: self.dim },
            Node::LInf => GaugeDescriptor::LInf { dim: self.dim },
            Node::Crystalline { vectors, .. } => GaugeDescriptor::Crystalline { vectors: vectors.clone() },
            Node::Cylinder3 => GaugeDescriptor::Cylinder3,
            Node::DoubleCone3 => GaugeDescriptor::DoubleCone3,
            Node::AbsInner { v, .. } => GaugeDescriptor::AbsInner { v: v.clone() },
            Node::Max(a, b) => GaugeDescriptor::Max { left: Box::new(a.descriptor()), right: Box::new(b.descriptor()) },
            Node::Projected { inner, coords } => GaugeDescriptor::Projected {
                inner: Box::new(inner.descriptor()),
                coords: coords.clone(),
                dim: self.dim,
            },
        }
    }
}

fn dot<T>(a: &[T], b: &[T]) -> T
where
    T: Clone + Zero + std::ops::Mul<Output = T>,
{
    a.iter().zip(b).fold(T::zero(), |s, (u, v)| s + u.clone() * v.clone())
}

/// Numerical rank by Gaussian elimination with partial pivoting.
pub(crate) fn rank(rows: &[Vec<f64>]) -> usize {
    let mut m: Vec<Vec<f64>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let scale = m.iter().flatten().fold(0.0f64, |s, v| s.max(v.abs()));
    if scale == 0.0 {
        return 0;
    }
    let eps = 1e-10 * scale;
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())) else {
            break;
        };
        if m[pivot][col].abs() <= eps {
            continue;
        }
        m.swap(rank, pivot);
        let pivot_row = m[rank].clone();
        for row in m.iter_mut().skip(rank + 1) {
            let factor = row[col] / pivot_row[col];
            for (x, p) in row[col..cols].iter_mut().zip(&pivot_row[col..cols]) {
                *x -= factor * p;
            }
        }
        rank += 1;
    }
    rank
}
