//! Two-stage (lexicographic) discrete optimal transport.
//!
//! Stage one solves the transportation problem for `c(x, y) = g(y - x)^p`
//! and reads off optimal dual potentials. The arcs with zero reduced cost
//! that some optimal coupling uses form the optimal face: a coupling is
//! primary-optimal exactly when it is supported there. Stage two minimises the squared Euclidean transport cost
//! over couplings on that face, warm-started from the stage-one basis.
//!
//! Everything is generic over [`Scalar`], so the same code runs in `f64`
//! and in exact rational arithmetic.

mod crosscheck;
mod measure;
mod oracle;
mod plan;
mod simplex;

use num_rational::BigRational;
use petgraph::algo::tarjan_scc;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::{Deserialize, Serialize};

pub use crosscheck::{scalarization_crosscheck, CrosscheckEntry, CrosscheckReport};
pub use measure::DiscreteMeasure;
pub use oracle::{oracle_lex_permutations, OracleOutcome, MAX_ORACLE_ATOMS};
pub use plan::{ArcRepr, PlanArc, PlanRepr, TransportPlan};
pub use simplex::Basis;

use crate::gauges::{CostSpec, GaugeError};
use crate::scalar::{Scalar, ScalarRepr};
use simplex::{northwest_corner, EngineError, Network};

/// Relative tolerance for float-mode optimal-face membership.
pub const FACE_REL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolveError {
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid plan: {0}")]
    InvalidPlan(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("unbalanced marginals: source mass {source_total}, target mass {target_total}")]
    Unbalanced { source_total: f64, target_total: f64 },
    #[error(transparent)]
    Gauge(#[from] GaugeError),
    #[error("simplex did not certify optimality within {0} pivots")]
    IterationCap(usize),
    #[error("secondary stage infeasible: {0}")]
    Infeasible(String),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl From<EngineError> for SolveError {
    fn from(e: EngineError) -> Self {
        match e {
            EngineError::IterationCap(k) => SolveError::IterationCap(k),
        }
    }
}

/// Dense `m × n` cost table.
#[derive(Debug, Clone, PartialEq)]
pub struct CostTable<S> {
    m: usize,
    n: usize,
    data: Vec<S>,
}

impl<S: Scalar> CostTable<S> {
    pub fn from_fn(m: usize, n: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(m * n);
        for i in 0..m {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        CostTable { m, n, data }
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self, SolveError> {
        let m = rows.len();
        let n = rows.first().map_or(0, Vec::len);
        if m == 0 || n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(SolveError::InvalidPlan("cost table must be a non-empty rectangle".into()));
        }
        Ok(CostTable { m, n, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.n + j]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, c| m.max(c.to_f64().abs()))
    }

    /// `self + lambda * other`, entrywise.
    pub fn combine(&self, other: &CostTable<S>, lambda: &S) -> CostTable<S> {
        CostTable {
            m: self.m,
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + lambda.clone() * b.clone()).collect(),
        }
    }
}

/// Dual potentials: `u_i + v_j <= c_ij` with equality on the optimal face.
#[derive(Debug, Clone, PartialEq)]
pub struct Duals<S> {
    pub source: Vec<S>,
    pub target: Vec<S>,
}

impl<S: Scalar> Duals<S> {
    pub fn reduced_cost(&self, costs: &CostTable<S>, i: usize, j: usize) -> S {
        costs.get(i, j).clone() - self.source[i].clone() - self.target[j].clone()
    }

    /// `Σ u_i a_i + Σ v_j b_j`.
    pub fn objective(&self, a: &[S], b: &[S]) -> S {
        let side = |pot: &[S], w: &[S]| pot.iter().zip(w).fold(S::zero(), |s, (p, w)| s + p.clone() * w.clone());
        side(&self.source, a) + side(&self.target, b)
    }
}

/// Arcs of the optimal face, sorted row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct FaceArcs {
    m: usize,
    n: usize,
    arcs: Vec<(usize, usize)>,
    /// Largest reduced cost admitted into the face (zero in exact mode).
    pub leakage: f64,
}

impl FaceArcs {
    pub fn new(m: usize, n: usize, mut arcs: Vec<(usize, usize)>) -> Result<Self, SolveError> {
        if let Some(&(i, j)) = arcs.iter().find(|&&(i, j)| i >= m || j >= n) {
            return Err(SolveError::InvalidPlan(format!("face arc ({i}, {j}) outside {m} x {n}")));
        }
        arcs.sort_unstable();
        arcs.dedup();
        Ok(FaceArcs { m, n, arcs, leakage: 0.0 })
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.arcs.binary_search(&(i, j)).is_ok()
    }

    fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.m * self.n];
        for &(i, j) in &self.arcs {
            mask[i * self.n + j] = true;
        }
        mask
    }
}

/// Output of the first stage.
#[derive(Debug, Clone)]
pub struct PrimarySolution<S> {
    pub plan: TransportPlan<S>,
    pub duals: Duals<S>,
    pub value: S,
    pub basis: Basis<S>,
    pub pivots: usize,
}

/// Output of the full two-stage solve.
#[derive(Debug, Clone)]
pub struct LexSolution<S> {
    /// `Σ c π` of the final plan.
    pub primary_value: S,
    /// `Σ |y - x|^2 π` of the final plan.
    pub secondary_value: S,
    pub plan: TransportPlan<S>,
    pub duals: Duals<S>,
    pub optimal_face: FaceArcs,
    /// Basic optimal plan of the first stage alone.
    pub primary_plan: TransportPlan<S>,
    /// Final basis, reusable for further solves on the same face.
    pub basis: Basis<S>,
}

fn pivot_cap(m: usize, n: usize) -> usize {
    50 * m * n + 1000
}

fn float_flow_tol<S: Scalar>(a: &[S], b: &[S]) -> S {
    let scale = a.iter().chain(b).fold(0.0f64, |s, w| s.max(w.to_f64().abs()));
    S::tolerance(0.0, 1e-12 * scale.max(f64::MIN_POSITIVE))
}

fn check_balanced<S: Scalar>(a: &[S], b: &[S]) -> Result<(), SolveError> {
    let sa = a.iter().fold(S::zero(), |s, w| s + w.clone());
    let sb = b.iter().fold(S::zero(), |s, w| s + w.clone());
    if a.is_empty() || b.is_empty() || (sa.clone() - sb.clone()).abs() > float_flow_tol(a, b) {
        return Err(SolveError::Unbalanced { source_total: sa.to_f64(), target_total: sb.to_f64() });
    }
    Ok(())
}

fn read_plan<S: Scalar>(basis: &Basis<S>, flow_tol: &S) -> Result<TransportPlan<S>, SolveError> {
    let arcs = basis.arcs.iter().zip(&basis.flows).filter(|(_, f)| f.val > *flow_tol).map(|(&(i, j), f)| PlanArc {
        source: i,
        target: j,
        mass: f.val.clone(),
    });
    TransportPlan::from_arcs(basis.m, basis.n, arcs)
}

fn certify_marginals<S: Scalar>(plan: &TransportPlan<S>, a: &[S], b: &[S]) -> Result<(), SolveError> {
    let err = plan.marginal_error(a, b);
    if err > S::tolerance(0.0, 1e-10) {
        return Err(SolveError::Certification(format!("marginal error {err} exceeds tolerance")));
    }
    Ok(())
}

/// Cost tables `g(y_j - x_i)^p` and `|y_j - x_i|^2`.
pub fn build_cost_matrices<S: Scalar>(
    spec: &CostSpec,
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
) -> Result<(CostTable<S>, CostTable<S>), SolveError> {
    if mu.dim() != spec.dim() {
        return Err(SolveError::DimensionMismatch { expected: spec.dim(), got: mu.dim() });
    }
    if nu.dim() != spec.dim() {
        return Err(SolveError::DimensionMismatch { expected: spec.dim(), got: nu.dim() });
    }
    if S::EXACT && !spec.supports_exact() {
        return Err(SolveError::Unsupported(format!(
            "exact mode needs a polyhedral gauge and an integral exponent (gauge `{}`, p = {})",
            spec.gauge().kind(),
            spec.exponent()
        )));
    }
    let xs: Vec<Vec<S>> = mu.points().iter().map(|p| S::lift(p)).collect();
    let ys: Vec<Vec<S>> = nu.points().iter().map(|p| S::lift(p)).collect();
    let mut primary = Vec::with_capacity(xs.len() * ys.len());
    for x in &xs {
        for y in &ys {
            primary.push(S::cost(spec, x, y)?);
        }
    }
    let primary = CostTable { m: xs.len(), n: ys.len(), data: primary };
    let secondary = CostTable::from_fn(xs.len(), ys.len(), |i, j| S::sq_dist(&xs[i], &ys[j]));
    Ok((primary, secondary))
}

/// Optimal basic solution of the transportation problem with its duals.
pub fn solve_primary<S: Scalar>(costs: &CostTable<S>, a: &[S], b: &[S]) -> Result<PrimarySolution<S>, SolveError> {
    if a.len() != costs.m || b.len() != costs.n {
        return Err(SolveError::DimensionMismatch { expected: costs.m * costs.n, got: a.len() * b.len() });
    }
    check_balanced(a, b)?;
    let flow_tol = float_flow_tol(a, b);
    let cost = |i: usize, j: usize| [costs.get(i, j).clone()];
    let net = Network {
        m: costs.m,
        n: costs.n,
        cost: &cost,
        allowed: None,
        cost_tol: [S::tolerance(costs.max_abs(), 1e-13)],
        flow_tol: flow_tol.clone(),
    };
    let start = northwest_corner(a, b, &flow_tol);
    let out = net.optimize(start, pivot_cap(costs.m, costs.n))?;
    let plan = read_plan(&out.basis, &flow_tol)?;
    certify_marginals(&plan, a, b)?;
    let duals =
        Duals { source: out.u.into_iter().map(|[u]| u).collect(), target: out.v.into_iter().map(|[v]| v).collect() };
    let value = plan.objective(costs);
    Ok(PrimarySolution { plan, duals, value, basis: out.basis, pivots: out.pivots })
}

/// Arcs used by at least one primary-optimal coupling.
///
/// Candidates are the arcs with reduced cost at most `tol`; every optimal
/// coupling lives on them. A candidate is kept when `plan` (any optimal
/// coupling) already uses it, or when it closes a cycle with the residual
/// graph of `plan`, i.e. some mass can be rerouted through it.
pub fn optimal_face_arcs<S: Scalar>(
    costs: &CostTable<S>,
    duals: &Duals<S>,
    plan: &TransportPlan<S>,
    tol: &S,
) -> FaceArcs {
    let (m, n) = (costs.m, costs.n);
    let mut tight = Vec::new();
    let mut graph = DiGraph::<(), ()>::with_capacity(m + n, m * n);
    let nodes: Vec<NodeIndex> = (0..m + n).map(|_| graph.add_node(())).collect();
    for i in 0..m {
        for j in 0..n {
            let r = duals.reduced_cost(costs, i, j);
            if r <= *tol {
                graph.add_edge(nodes[i], nodes[m + j], ());
                tight.push((i, j, r.to_f64()));
            }
        }
    }
    for a in plan.arcs() {
        graph.add_edge(nodes[m + a.target], nodes[a.source], ());
    }
    let mut component = vec![0usize; m + n];
    for (k, scc) in tarjan_scc(&graph).iter().enumerate() {
        for node in scc {
            component[node.index()] = k;
        }
    }
    let mut leakage = 0.0f64;
    let mut arcs = Vec::new();
    for (i, j, r) in tight {
        if component[i] == component[m + j] {
            leakage = leakage.max(r);
            arcs.push((i, j));
        }
    }
    FaceArcs { m, n, arcs, leakage }
}

/// Default face tolerance: `1e-9 (1 + max|c|)` in float mode, zero when exact.
pub fn face_tolerance<S: Scalar>(costs: &CostTable<S>) -> S {
    S::tolerance(costs.max_abs(), FACE_REL_TOL)
}

/// Minimises `Σ objective · π` over couplings supported on `face`.
///
/// Without a warm start the search begins at the northwest corner and
/// treats off-face arcs as a higher-priority cost tier, so they are driven
/// out first and never re-enter.
fn solve_on_face<S: Scalar>(
    face: &FaceArcs,
    objective: &CostTable<S>,
    a: &[S],
    b: &[S],
    warm: Option<Basis<S>>,
) -> Result<(TransportPlan<S>, Basis<S>), SolveError> {
    if face.m != objective.m || face.n != objective.n || a.len() != face.m || b.len() != face.n {
        return Err(SolveError::DimensionMismatch { expected: face.m * face.n, got: objective.m * objective.n });
    }
    check_balanced(a, b)?;
    let flow_tol = float_flow_tol(a, b);
    let mask = face.mask();
    let cost = |i: usize, j: usize| {
        let off = if mask[i * face.n + j] { S::zero() } else { S::one() };
        [off, objective.get(i, j).clone()]
    };
    let net = Network {
        m: face.m,
        n: face.n,
        cost: &cost,
        allowed: Some(&mask),
        cost_tol: [S::tolerance(1.0, 1e-13), S::tolerance(objective.max_abs(), 1e-13)],
        flow_tol: flow_tol.clone(),
    };
    let start = match warm {
        Some(basis) if basis.m == face.m && basis.n == face.n => basis,
        Some(_) => return Err(SolveError::DimensionMismatch { expected: face.m + face.n, got: 0 }),
        None => northwest_corner(a, b, &flow_tol),
    };
    let out = net.optimize(start, pivot_cap(face.m, face.n))?;
    let plan = read_plan(&out.basis, &flow_tol)?;
    if let Some(arc) = plan.arcs().iter().find(|arc| !mask[arc.source * face.n + arc.target]) {
        return Err(SolveError::Infeasible(format!(
            "no coupling fits the face: arc ({}, {}) off the face still carries {}",
            arc.source, arc.target, arc.mass
        )));
    }
    certify_marginals(&plan, a, b)?;
    Ok((plan, out.basis))
}

/// Minimises the secondary cost over couplings supported on `face`.
pub fn solve_secondary<S: Scalar>(
    face: &FaceArcs,
    secondary: &CostTable<S>,
    a: &[S],
    b: &[S],
) -> Result<TransportPlan<S>, SolveError> {
    solve_on_face(face, secondary, a, b, None).map(|(plan, _)| plan)
}

/// Same as [`solve_secondary`], starting from a basis that carries no mass
/// off the face (the stage-one optimal basis never does).
pub fn solve_secondary_from<S: Scalar>(
    face: &FaceArcs,
    secondary: &CostTable<S>,
    a: &[S],
    b: &[S],
    basis: Basis<S>,
) -> Result<(TransportPlan<S>, Basis<S>), SolveError> {
    solve_on_face(face, secondary, a, b, Some(basis))
}

/// Stage one, face extraction and stage two in sequence.
pub fn solve_lexicographic<S: Scalar>(
    spec: &CostSpec,
    mu: &DiscreteMeasure,
    nu: &DiscreteMeasure,
) -> Result<LexSolution<S>, SolveError> {
    let (primary, secondary) = build_cost_matrices::<S>(spec, mu, nu)?;
    let (a, b) = (mu.weights_as::<S>(), nu.weights_as::<S>());
    solve_lexicographic_tables(&primary, &secondary, &a, &b)
}

/// [`solve_lexicographic`] on precomputed tables.
pub fn solve_lexicographic_tables<S: Scalar>(
    primary: &CostTable<S>,
    secondary: &CostTable<S>,
    a: &[S],
    b: &[S],
) -> Result<LexSolution<S>, SolveError> {
    let stage_one = solve_primary(primary, a, b)?;
    let face = optimal_face_arcs(primary, &stage_one.duals, &stage_one.plan, &face_tolerance(primary));
    let (plan, basis) = solve_secondary_from(&face, secondary, a, b, stage_one.basis.clone())?;
    let solution = LexSolution {
        primary_value: plan.objective(primary),
        secondary_value: plan.objective(secondary),
        plan,
        duals: stage_one.duals,
        optimal_face: face,
        primary_plan: stage_one.plan,
        basis,
    };
    let gap = (solution.primary_value.clone() - solution.duals.objective(a, b)).abs();
    if gap > S::tolerance(solution.primary_value.to_f64(), 1e-9) {
        return Err(SolveError::Certification(format!("duality gap {gap} after the secondary stage")));
    }
    Ok(solution)
}

/// Extreme point of the optimal face in the direction of the secondary
/// cost: `maximize = true` gives the largest squared-distance plan.
pub fn face_extreme_plan<S: Scalar>(
    solution: &LexSolution<S>,
    secondary: &CostTable<S>,
    a: &[S],
    b: &[S],
    maximize: bool,
) -> Result<TransportPlan<S>, SolveError> {
    let objective = if maximize {
        CostTable::from_fn(secondary.m, secondary.n, |i, j| -secondary.get(i, j).clone())
    } else {
        secondary.clone()
    };
    solve_secondary_from(&solution.optimal_face, &objective, a, b, solution.basis.clone()).map(|(p, _)| p)
}

/// A primary-optimal plan that splits mass whenever the optimal face allows
/// it: the midpoint of the squared-distance minimiser and maximiser on the
/// face. Both endpoints are primary-optimal and the face is convex, so the
/// midpoint is too. It coincides with the secondary plan exactly when the
/// secondary cost is constant on the face.
pub fn adversarial_primary_plan<S: Scalar>(
    solution: &LexSolution<S>,
    secondary: &CostTable<S>,
    a: &[S],
    b: &[S],
) -> Result<TransportPlan<S>, SolveError> {
    let far = face_extreme_plan(solution, secondary, a, b, true)?;
    let half = S::one() / (S::one() + S::one());
    solution.plan.mix(&far, &half)
}

/// JSON shape of a [`LexSolution`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionRepr {
    pub mode: String,
    pub primary_value: ScalarRepr,
    pub secondary_value: ScalarRepr,
    pub face_size: usize,
    pub face_leakage: f64,
    pub sources: usize,
    pub targets: usize,
    pub arcs: Vec<ArcRepr>,
    pub duals: DualsRepr,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualsRepr {
    pub source: Vec<ScalarRepr>,
    pub target: Vec<ScalarRepr>,
}

impl<S: Scalar> LexSolution<S> {
    pub fn to_repr(&self) -> SolutionRepr {
        let plan = self.plan.to_repr();
        SolutionRepr {
            mode: if S::EXACT { "rational" } else { "float" }.into(),
            primary_value: self.primary_value.to_repr(),
            secondary_value: self.secondary_value.to_repr(),
            face_size: self.optimal_face.len(),
            face_leakage: self.optimal_face.leakage,
            sources: plan.sources,
            targets: plan.targets,
            arcs: plan.arcs,
            duals: DualsRepr {
                source: self.duals.source.iter().map(Scalar::to_repr).collect(),
                target: self.duals.target.iter().map(Scalar::to_repr).collect(),
            },
        }
    }
}

impl SolutionRepr {
    pub fn plan_repr(&self) -> PlanRepr {
        PlanRepr { sources: self.sources, targets: self.targets, arcs: self.arcs.clone() }
    }
}

/// Instance file: two measures and a cost.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub mu: DiscreteMeasure,
    pub nu: DiscreteMeasure,
    pub cost: CostSpec,
}

/// Arithmetic used for a solve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Float,
    Rational,
}

/// A solution in whichever arithmetic was requested.
#[derive(Debug, Clone)]
pub enum AnySolution {
    Float(LexSolution<f64>),
    Rational(LexSolution<BigRational>),
}

impl AnySolution {
    pub fn to_repr(&self) -> SolutionRepr {
        match self {
            AnySolution::Float(s) => s.to_repr(),
            AnySolution::Rational(s) => s.to_repr(),
        }
    }

    pub fn plan_f64(&self) -> TransportPlan<f64> {
        match self {
            AnySolution::Float(s) => s.plan.clone(),
            AnySolution::Rational(s) => s.plan.to_f64(),
        }
    }
}

impl Instance {
    pub fn solve(&self, mode: Mode) -> Result<AnySolution, SolveError> {
        match mode {
            Mode::Float => solve_lexicographic::<f64>(&self.cost, &self.mu, &self.nu).map(AnySolution::Float),
            Mode::Rational => {
                solve_lexicographic::<BigRational>(&self.cost, &self.mu, &self.nu).map(AnySolution::Rational)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauges::Gauge;
    use crate::pt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn square_instance() -> (CostSpec, DiscreteMeasure, DiscreteMeasure) {
        let spec = CostSpec::new(Gauge::linf(2).unwrap(), 2.0).unwrap();
        let mu = DiscreteMeasure::uniform(vec![pt![0, 0], pt![0, 1]]).unwrap();
        let nu = DiscreteMeasure::uniform(vec![pt![2, 0], pt![2, 1]]).unwrap();
        (spec, mu, nu)
    }

    #[test]
    fn cost_tables_for_the_square() {
        let (spec, mu, nu) = square_instance();
        let (c, d) = build_cost_matrices::<BigRational>(&spec, &mu, &nu).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(*c.get(i, j), q(4, 1));
            }
        }
        assert_eq!(*d.get(0, 0), q(4, 1));
        assert_eq!(*d.get(0, 1), q(5, 1));
        assert_eq!(*d.get(1, 0), q(5, 1));
        assert_eq!(*d.get(1, 1), q(4, 1));
    }

    #[test]
    fn exact_mode_refuses_curved_gauges() {
        let spec = CostSpec::new(Gauge::euclidean(2).unwrap(), 2.0).unwrap();
        let mu = DiscreteMeasure::uniform(vec![pt![0, 0]]).unwrap();
        assert!(matches!(build_cost_matrices::<BigRational>(&spec, &mu, &mu), Err(SolveError::Unsupported(_))));
    }

    #[test]
    fn square_face_is_everything_and_secondary_uncrosses() {
        let (spec, mu, nu) = square_instance();
        let sol = solve_lexicographic::<BigRational>(&spec, &mu, &nu).unwrap();
        assert_eq!(sol.optimal_face.len(), 4);
        assert_eq!(sol.primary_value, q(4, 1));
        assert_eq!(sol.secondary_value, q(4, 1));
        assert_eq!(sol.plan.as_map(), Some(vec![0, 1]));
    }

    #[test]
    fn unbalanced_is_rejected() {
        let costs = CostTable::from_rows(vec![vec![1.0, 2.0]]).unwrap();
        assert!(matches!(solve_primary(&costs, &[1.0], &[0.5, 0.25]), Err(SolveError::Unbalanced { .. })));
    }

    #[test]
    fn secondary_on_a_face_without_spanning_tree() {
        // Face = the two monotone arcs of the 1D instance: the only coupling.
        let face = FaceArcs::new(2, 2, vec![(0, 0), (1, 1)]).unwrap();
        let d = CostTable::from_rows(vec![vec![q(4, 1), q(9, 1)], vec![q(1, 1), q(4, 1)]]).unwrap();
        let half = vec![q(1, 2), q(1, 2)];
        let plan = solve_secondary(&face, &d, &half, &half).unwrap();
        assert_eq!(plan.as_map(), Some(vec![0, 1]));
    }

    #[test]
    fn infeasible_face_is_reported() {
        let face = FaceArcs::new(2, 2, vec![(0, 0), (1, 0)]).unwrap();
        let d = CostTable::from_rows(vec![vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(matches!(solve_secondary(&face, &d, &[0.5, 0.5], &[0.5, 0.5]), Err(SolveError::Infeasible(_))));
    }
}
