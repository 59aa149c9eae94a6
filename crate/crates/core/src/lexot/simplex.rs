//! Transportation simplex on the complete bipartite graph.
//!
//! A basis is a spanning tree of the `m + n` nodes. Supplies are perturbed
//! symbolically (`a_i + ε` for every source, `b_n + m·ε` for the last
//! target), which keeps every basis strictly feasible, so pivots always
//! make progress and the method cannot cycle. Flows carry the ε coefficient
//! alongside the value and compare lexicographically; the perturbation is
//! dropped when the plan is read out.
//!
//! Arc costs are `K` tiers compared lexicographically. One tier is the plain
//! transportation problem; two tiers express "minimise the second objective
//! among minimisers of the first", which is how off-face arcs are kept out
//! of the secondary stage without a penalty constant.

use std::cmp::Ordering;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Perturbed<S> {
    pub val: S,
    pub eps: i64,
}

impl<S: Scalar> Perturbed<S> {
    fn new(val: S, eps: i64) -> Self {
        Perturbed { val, eps }
    }

    fn cmp_tol(&self, other: &Self, tol: &S) -> Ordering {
        let diff = self.val.clone() - other.val.clone();
        if diff > *tol {
            Ordering::Greater
        } else if diff < -tol.clone() {
            Ordering::Less
        } else {
            self.eps.cmp(&other.eps)
        }
    }

    fn sub(&self, o: &Self) -> Self {
        Perturbed::new(self.val.clone() - o.val.clone(), self.eps - o.eps)
    }

    fn add(&self, o: &Self) -> Self {
        Perturbed::new(self.val.clone() + o.val.clone(), self.eps + o.eps)
    }
}

/// A spanning-tree basis together with its (perturbed) flows. Carrying a
/// basis from one stage to the next is what makes the secondary solve a
/// warm start.
#[derive(Debug, Clone)]
pub struct Basis<S> {
    pub(crate) m: usize,
    pub(crate) n: usize,
    pub(crate) arcs: Vec<(usize, usize)>,
    pub(crate) flows: Vec<Perturbed<S>>,
}

impl<S: Scalar> Basis<S> {
    /// Basic arcs in basis order.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    /// Unperturbed flows on the basic arcs.
    pub fn flows(&self) -> impl Iterator<Item = &S> {
        self.flows.iter().map(|f| &f.val)
    }
}

/// Northwest-corner start on the perturbed supplies.
pub(crate) fn northwest_corner<S: Scalar>(a: &[S], b: &[S], tol: &S) -> Basis<S> {
    let (m, n) = (a.len(), b.len());
    let supply = |i: usize| Perturbed::new(a[i].clone(), 1);
    let demand = |j: usize| Perturbed::new(b[j].clone(), if j + 1 == n { m as i64 } else { 0 });
    let mut arcs = Vec::with_capacity(m + n - 1);
    let mut flows = Vec::with_capacity(m + n - 1);
    let (mut i, mut j) = (0, 0);
    let mut ra = supply(0);
    let mut rb = demand(0);
    loop {
        let row_first = ra.cmp_tol(&rb, tol) == Ordering::Less;
        let x = if row_first { ra.clone() } else { rb.clone() };
        arcs.push((i, j));
        flows.push(x.clone());
        if i + 1 == m && j + 1 == n {
            break;
        }
        if (row_first && i + 1 < m) || j + 1 == n {
            rb = rb.sub(&x);
            i += 1;
            ra = supply(i);
        } else {
            ra = ra.sub(&x);
            j += 1;
            rb = demand(j);
        }
    }
    Basis { m, n, arcs, flows }
}

pub(crate) struct Outcome<S, const K: usize> {
    pub basis: Basis<S>,
    pub u: Vec<[S; K]>,
    pub v: Vec<[S; K]>,
    pub pivots: usize,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub(crate) enum EngineError {
    #[error("no optimal basis after {0} pivots")]
    IterationCap(usize),
}

/// Arc costs in `K` lexicographic tiers, row-major over `m × n`.
pub(crate) struct Network<'a, S, const K: usize> {
    pub m: usize,
    pub n: usize,
    pub cost: &'a dyn Fn(usize, usize) -> [S; K],
    pub allowed: Option<&'a [bool]>,
    pub cost_tol: [S; K],
    pub flow_tol: S,
}

struct Tree<S, const K: usize> {
    parent: Vec<usize>,
    parent_arc: Vec<usize>,
    depth: Vec<usize>,
    u: Vec<[S; K]>,
    v: Vec<[S; K]>,
}

impl<S: Scalar, const K: usize> Network<'_, S, K> {
    fn build_tree(&self, basis: &Basis<S>) -> Tree<S, K> {
        let nodes = self.m + self.n;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
        for (k, &(i, j)) in basis.arcs.iter().enumerate() {
            adj[i].push(k);
            adj[self.m + j].push(k);
        }
        let zero = || std::array::from_fn::<S, K, _>(|_| S::zero());
        let mut tree = Tree {
            parent: vec![usize::MAX; nodes],
            parent_arc: vec![usize::MAX; nodes],
            depth: vec![0; nodes],
            u: (0..self.m).map(|_| zero()).collect(),
            v: (0..self.n).map(|_| zero()).collect(),
        };
        let mut seen = vec![false; nodes];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(node) = stack.pop() {
            for &k in &adj[node] {
                let (i, j) = basis.arcs[k];
                let other = if node < self.m { self.m + j } else { i };
                if seen[other] {
                    continue;
                }
                seen[other] = true;
                tree.parent[other] = node;
                tree.parent_arc[other] = k;
                tree.depth[other] = tree.depth[node] + 1;
                let c = (self.cost)(i, j);
                if other >= self.m {
                    tree.v[j] = std::array::from_fn(|t| c[t].clone() - tree.u[i][t].clone());
                } else {
                    tree.u[i] = std::array::from_fn(|t| c[t].clone() - tree.v[j][t].clone());
                }
                stack.push(other);
            }
        }
        debug_assert!(seen.iter().all(|&s| s), "basis is not a spanning tree");
        tree
    }

    /// Sign of the reduced cost in the lexicographic tier order.
    fn reduced_sign(&self, tree: &Tree<S, K>, i: usize, j: usize) -> Ordering {
        let c = (self.cost)(i, j);
        for (t, ct) in c.iter().enumerate() {
            let r = ct.clone() - tree.u[i][t].clone() - tree.v[j][t].clone();
            if r < -self.cost_tol[t].clone() {
                return Ordering::Less;
            }
            if r > self.cost_tol[t] {
                return Ordering::Greater;
            }
        }
        Ordering::Equal
    }

    /// Bland's rule: the first improving arc in row-major order.
    fn entering(&self, tree: &Tree<S, K>, is_basic: &[bool]) -> Option<(usize, usize)> {
        for i in 0..self.m {
            for j in 0..self.n {
                let idx = i * self.n + j;
                if is_basic[idx] || self.allowed.is_some_and(|a| !a[idx]) {
                    continue;
                }
                if self.reduced_sign(tree, i, j) == Ordering::Less {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn optimize(&self, mut basis: Basis<S>, max_pivots: usize) -> Result<Outcome<S, K>, EngineError> {
        let (m, n) = (self.m, self.n);
        let mut is_basic = vec![false; m * n];
        for &(i, j) in &basis.arcs {
            is_basic[i * n + j] = true;
        }
        let mut pivots = 0;
        loop {
            let tree = self.build_tree(&basis);
            let Some((ei, ej)) = self.entering(&tree, &is_basic) else {
                return Ok(Outcome { basis, u: tree.u, v: tree.v, pivots });
            };
            if pivots == max_pivots {
                return Err(EngineError::IterationCap(pivots));
            }
            pivots += 1;

            // Tree path from the entering target back to the entering source.
            let (mut a, mut b) = (m + ej, ei);
            let mut from_target = Vec::new();
            let mut from_source = Vec::new();
            while a != b {
                if tree.depth[a] >= tree.depth[b] {
                    from_target.push(tree.parent_arc[a]);
                    a = tree.parent[a];
                } else {
                    from_source.push(tree.parent_arc[b]);
                    b = tree.parent[b];
                }
            }
            from_source.reverse();
            let cycle: Vec<usize> = from_target.into_iter().chain(from_source).collect();

            // Arcs at even positions lose flow; ties go to the lowest arc index.
            let mut leave: Option<usize> = None;
            for &k in cycle.iter().step_by(2) {
                leave = match leave {
                    None => Some(k),
                    Some(best) => {
                        let ord = basis.flows[k].cmp_tol(&basis.flows[best], &self.flow_tol);
                        let key = |k: usize| basis.arcs[k].0 * n + basis.arcs[k].1;
                        if ord == Ordering::Less || (ord == Ordering::Equal && key(k) < key(best)) {
                            Some(k)
                        } else {
                            Some(best)
                        }
                    }
                };
            }
            let leave = leave.expect("cycle through a tree has a backward arc");
            let theta = basis.flows[leave].clone();
            for (pos, &k) in cycle.iter().enumerate() {
                basis.flows[k] = if pos % 2 == 0 { basis.flows[k].sub(&theta) } else { basis.flows[k].add(&theta) };
            }
            let (li, lj) = basis.arcs[leave];
            is_basic[li * n + lj] = false;
            is_basic[ei * n + ej] = true;
            basis.arcs[leave] = (ei, ej);
            basis.flows[leave] = theta;
        }
    }
}
