//! Tensor networks and the deterministic greedy contraction planner.
//!
//! A network is a directed multigraph of tensors: edges join one out-leg to
//! one in-leg of equal dimension, each leg participates in at most one edge,
//! and the unmatched legs are the network's free legs (ordered by node id,
//! then leg index). Contracting a closed network yields a single scalar.
//!
//! The planner is greedy: it repeatedly contracts the edge whose resulting
//! merged tensor has the smallest dense-size estimate, breaking ties by the
//! lexicographically smallest `((node, leg), (node, leg))` edge endpoints.
//! The same network therefore always yields the same plan, and the executor
//! is pure, so contraction is bit-reproducible across threads and runs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::tensor::{LegDir, Tensor};

/// Identifies a node in the network.
pub type NodeId = usize;

/// One contraction edge: `from` must be an out-leg, `to` an in-leg.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub from: (NodeId, usize),
    pub to: (NodeId, usize),
}

/// A directed multigraph of tensors with leg-matched contraction edges.
#[derive(Debug, Clone)]
pub struct TensorNetwork {
    field: Field,
    nodes: BTreeMap<NodeId, Tensor>,
    edges: Vec<Edge>,
    next_id: NodeId,
}

/// One planned step: contract the edge with this index in the network's edge
/// list; `est_size` is the dense-size estimate of the merged tensor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanStep {
    pub edge_index: usize,
    pub est_size: u128,
}

/// An ordered, complete cover of the network's edges.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ContractionPlan {
    pub steps: Vec<PlanStep>,
    pub total_cost: u128,
}

impl TensorNetwork {
    pub fn new(field: Field) -> TensorNetwork {
        TensorNetwork { field, nodes: BTreeMap::new(), edges: Vec::new(), next_id: 0 }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Adds a tensor, returning its node id (assigned in insertion order).
    pub fn add_node(&mut self, tensor: Tensor) -> NodeId {
        assert_eq!(tensor.field(), self.field, "node from wrong field");
        let id = self.next_id;
        self.next_id += 1;
        self.nodes.insert(id, tensor);
        id
    }

    pub fn node(&self, id: NodeId) -> Option<&Tensor> {
        self.nodes.get(&id)
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Connects an out-leg to an in-leg of equal dimension.
    pub fn add_edge(&mut self, from: (NodeId, usize), to: (NodeId, usize)) -> Result<()> {
        let f = self
            .leg(from)
            .ok_or_else(|| Error::LegMismatch(format!("no leg {from:?}")))?;
        let t = self
            .leg(to)
            .ok_or_else(|| Error::LegMismatch(format!("no leg {to:?}")))?;
        if f.dir != LegDir::Out {
            return Err(Error::LegMismatch(format!("edge source {from:?} is not an out-leg")));
        }
        if t.dir != LegDir::In {
            return Err(Error::LegMismatch(format!("edge target {to:?} is not an in-leg")));
        }
        if f.dim != t.dim {
            return Err(Error::LegMismatch(format!(
                "edge {from:?}->{to:?} joins dimensions {} and {}",
                f.dim, t.dim
            )));
        }
        for e in &self.edges {
            for used in [e.from, e.to] {
                if used == from || used == to {
                    return Err(Error::LegMismatch(format!("leg {used:?} used twice")));
                }
            }
        }
        self.edges.push(Edge { from, to });
        Ok(())
    }

    fn leg(&self, at: (NodeId, usize)) -> Option<crate::tensor::Leg> {
        self.nodes.get(&at.0).and_then(|t| t.legs().get(at.1).copied())
    }

    /// Free legs in declared order: ascending node id, then leg index.
    pub fn free_legs(&self) -> Vec<(NodeId, usize)> {
        let mut used: Vec<(NodeId, usize)> = Vec::new();
        for e in &self.edges {
            used.push(e.from);
            used.push(e.to);
        }
        let mut free = Vec::new();
        for (&id, t) in &self.nodes {
            for leg in 0..t.num_legs() {
                if !used.contains(&(id, leg)) {
                    free.push((id, leg));
                }
            }
        }
        free
    }

    /// Structural validation of the invariants listed above.
    pub fn validate(&self) -> Result<()> {
        let mut used: BTreeMap<(NodeId, usize), usize> = BTreeMap::new();
        for e in &self.edges {
            let f = self
                .leg(e.from)
                .ok_or_else(|| Error::LegMismatch(format!("dangling edge source {:?}", e.from)))?;
            let t = self
                .leg(e.to)
                .ok_or_else(|| Error::LegMismatch(format!("dangling edge target {:?}", e.to)))?;
            if f.dir != LegDir::Out || t.dir != LegDir::In || f.dim != t.dim {
                return Err(Error::LegMismatch(format!("bad edge {e:?}")));
            }
            *used.entry(e.from).or_insert(0) += 1;
            *used.entry(e.to).or_insert(0) += 1;
        }
        if let Some((leg, _)) = used.iter().find(|(_, &c)| c > 1) {
            return Err(Error::LegMismatch(format!("leg {leg:?} used twice")));
        }
        Ok(())
    }
}

/// Execution state: every original node maps to a "current" merged tensor,
/// and each current tensor remembers which original legs its legs carry.
struct ExecNode {
    tensor: Tensor,
    slots: Vec<(NodeId, usize)>,
}

struct ExecState {
    current: BTreeMap<NodeId, ExecNode>,
    owner: BTreeMap<NodeId, NodeId>,
}

impl ExecState {
    fn new(net: &TensorNetwork) -> ExecState {
        let mut current = BTreeMap::new();
        let mut owner = BTreeMap::new();
        for (&id, t) in &net.nodes {
            let slots = (0..t.num_legs()).map(|l| (id, l)).collect();
            current.insert(id, ExecNode { tensor: t.clone(), slots });
            owner.insert(id, id);
        }
        ExecState { current, owner }
    }

    fn resolve(&self, orig: (NodeId, usize)) -> Result<((NodeId, usize), usize)> {
        let holder = *self
            .owner
            .get(&orig.0)
            .ok_or_else(|| Error::InvalidPlan(format!("unknown node {}", orig.0)))?;
        let node = &self.current[&holder];
        let pos = node
            .slots
            .iter()
            .position(|s| *s == orig)
            .ok_or_else(|| Error::InvalidPlan(format!("leg {orig:?} already consumed")))?;
        Ok(((holder, pos), pos))
    }

    /// Contracts one edge; merges nodes or traces a self-loop.
    fn contract_edge(&mut self, edge: Edge) -> Result<u128> {
        let ((from_node, from_pos), _) = self.resolve(edge.from)?;
        let ((to_node, to_pos), _) = self.resolve(edge.to)?;
        if from_node == to_node {
            let node = self.current.remove(&from_node).unwrap();
            let traced = node.tensor.trace_pair(from_pos, to_pos)?;
            let slots: Vec<(NodeId, usize)> = node
                .slots
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != from_pos && *i != to_pos)
                .map(|(_, s)| *s)
                .collect();
            let size = dense_size(&traced);
            self.current.insert(from_node, ExecNode { tensor: traced, slots });
            Ok(size)
        } else {
            let a = self.current.remove(&from_node).unwrap();
            let b = self.current.remove(&to_node).unwrap();
            let merged = a.tensor.contract_with(from_pos, &b.tensor, to_pos)?;
            let mut slots: Vec<(NodeId, usize)> = a
                .slots
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != from_pos)
                .map(|(_, s)| *s)
                .collect();
            slots.extend(
                b.slots
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != to_pos)
                    .map(|(_, s)| *s),
            );
            let keep = from_node.min(to_node);
            let drop = from_node.max(to_node);
            for o in self.owner.values_mut() {
                if *o == drop {
                    *o = keep;
                }
            }
            let size = dense_size(&merged);
            self.current.insert(keep, ExecNode { tensor: merged, slots });
            Ok(size)
        }
    }
}

fn dense_size(t: &Tensor) -> u128 {
    t.legs().iter().map(|l| l.dim as u128).product()
}

/// Greedy deterministic planner: repeatedly contract the edge minimizing the
/// merged tensor's dense-size estimate; ties break on edge endpoints.
pub fn plan_contraction(net: &TensorNetwork) -> ContractionPlan {
    // Simulate with sizes only.
    let mut owner: BTreeMap<NodeId, NodeId> = net.nodes.keys().map(|&k| (k, k)).collect();
    let mut size: BTreeMap<NodeId, Vec<u128>> = net
        .nodes
        .iter()
        .map(|(&k, t)| (k, t.legs().iter().map(|l| l.dim as u128).collect()))
        .collect();
    let mut remaining: Vec<usize> = (0..net.edges.len()).collect();
    let mut steps = Vec::new();
    let mut total: u128 = 0;

    while !remaining.is_empty() {
        let mut best: Option<(u128, Edge, usize)> = None;
        for &ei in &remaining {
            let e = net.edges[ei];
            let a = owner[&e.from.0];
            let b = owner[&e.to.0];
            let est: u128 = if a == b {
                let dims = &size[&a];
                let d = e_dim(net, e);
                dims.iter().product::<u128>() / (d * d)
            } else {
                let pa: u128 = size[&a].iter().product();
                let pb: u128 = size[&b].iter().product();
                let d = e_dim(net, e);
                pa / d * (pb / d)
            };
            let cand = (est, e, ei);
            best = match best {
                None => Some(cand),
                Some(cur) => {
                    if (cand.0, cand.1) < (cur.0, cur.1) {
                        Some(cand)
                    } else {
                        Some(cur)
                    }
                }
            };
        }
        let (est, e, ei) = best.unwrap();
        steps.push(PlanStep { edge_index: ei, est_size: est });
        total = total.saturating_add(est);
        remaining.retain(|&x| x != ei);
        // apply to the simulated state
        let a = owner[&e.from.0];
        let b = owner[&e.to.0];
        let d = e_dim(net, e);
        if a == b {
            let dims = size.get_mut(&a).unwrap();
            remove_once(dims, d);
            remove_once(dims, d);
        } else {
            let mut da = size.remove(&a).unwrap();
            let mut db = size.remove(&b).unwrap();
            remove_once(&mut da, d);
            remove_once(&mut db, d);
            da.extend(db);
            let keep = a.min(b);
            let drop = a.max(b);
            for o in owner.values_mut() {
                if *o == drop {
                    *o = keep;
                }
            }
            size.insert(keep, da);
        }
    }
    ContractionPlan { steps, total_cost: total }
}

fn e_dim(net: &TensorNetwork, e: Edge) -> u128 {
    net.leg(e.from).map(|l| l.dim as u128).unwrap_or(1)
}

fn remove_once(dims: &mut Vec<u128>, d: u128) {
    if let Some(pos) = dims.iter().position(|&x| x == d) {
        dims.remove(pos);
    }
}

/// Contracts the whole network. With `plan = None` the greedy plan is used.
/// The result's legs are the network's free legs in declared order.
pub fn contract(net: &TensorNetwork, plan: Option<&ContractionPlan>) -> Result<Tensor> {
    net.validate()?;
    let owned_plan;
    let plan = match plan {
        Some(p) => p,
        None => {
            owned_plan = plan_contraction(net);
            &owned_plan
        }
    };
    // A plan must cover each edge exactly once.
    let mut seen = vec![false; net.edges.len()];
    for step in &plan.steps {
        if step.edge_index >= net.edges.len() || seen[step.edge_index] {
            return Err(Error::InvalidPlan(format!(
                "edge index {} repeated or out of range",
                step.edge_index
            )));
        }
        seen[step.edge_index] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::InvalidPlan("plan does not cover all edges".into()));
    }

    let mut state = ExecState::new(net);
    for step in &plan.steps {
        state.contract_edge(net.edges[step.edge_index])?;
    }

    // Combine disconnected remainders (node-id order), then order free legs.
    let ids: Vec<NodeId> = state.current.keys().copied().collect();
    let mut iter = ids.into_iter();
    let first = match iter.next() {
        Some(id) => id,
        None => return Ok(Tensor::scalar(net.field.one())),
    };
    let mut acc = state.current[&first].tensor.clone();
    let mut slots = state.current[&first].slots.clone();
    for id in iter {
        let node = &state.current[&id];
        acc = acc.outer(&node.tensor);
        slots.extend(node.slots.iter().copied());
    }
    let declared = net.free_legs();
    if declared.len() != slots.len() {
        return Err(Error::InvalidPlan("free legs do not match declared order".into()));
    }
    let perm: Vec<usize> = declared
        .iter()
        .map(|want| slots.iter().position(|s| s == want).expect("free leg lost"))
        .collect();
    Ok(acc.permute_legs(&perm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactScalar;
    use crate::tensor::Leg;

    fn q(n: i64) -> ExactScalar {
        Field::Rational.from_i64(n)
    }

    /// Independent oracle: evaluates the network by brute-force summation
    /// over every assignment of values to all edges and free legs.
    pub(crate) fn brute_force_contract(net: &TensorNetwork) -> Tensor {
        let free = net.free_legs();
        let free_legs: Vec<Leg> = free
            .iter()
            .map(|&(n, l)| net.node(n).unwrap().legs()[l])
            .collect();
        let mut result = Tensor::zeros(net.field(), free_legs);
        let edge_dims: Vec<usize> = net
            .edges()
            .iter()
            .map(|e| net.node(e.from.0).unwrap().legs()[e.from.1].dim)
            .collect();
        let free_dims: Vec<usize> = result.legs().iter().map(|l| l.dim).collect();

        let mut free_idx = vec![0u32; free_dims.len()];
        loop {
            // sum over all edge assignments for this free-leg assignment
            let mut total = net.field().zero();
            let mut edge_idx = vec![0u32; edge_dims.len()];
            loop {
                let mut term = net.field().one();
                for (&id, tensor) in net.nodes.iter() {
                    let mut idx = vec![0u32; tensor.num_legs()];
                    for l in 0..tensor.num_legs() {
                        let here = (id, l);
                        if let Some(f) = free.iter().position(|&x| x == here) {
                            idx[l] = free_idx[f];
                        } else {
                            let e = net
                                .edges()
                                .iter()
                                .position(|e| e.from == here || e.to == here)
                                .unwrap();
                            idx[l] = edge_idx[e];
                        }
                    }
                    term = term * tensor.get(&idx);
                    if term.is_zero() {
                        break;
                    }
                }
                total = total + term;
                if !advance(&mut edge_idx, &edge_dims) {
                    break;
                }
            }
            result.add_at(&free_idx.clone(), total);
            if !advance(&mut free_idx, &free_dims) {
                break;
            }
        }
        result
    }

    fn advance(idx: &mut [u32], dims: &[usize]) -> bool {
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if (idx[k] as usize) < dims[k] {
                return true;
            }
            idx[k] = 0;
        }
        false
    }

    fn matrix_node(net: &mut TensorNetwork, rows: usize, cols: usize, f: impl Fn(u32, u32) -> i64) -> NodeId {
        let mut t = Tensor::zeros(Field::Rational, vec![Leg::input(rows), Leg::output(cols)]);
        for i in 0..rows as u32 {
            for j in 0..cols as u32 {
                t.set(&[i, j], q(f(i, j)));
            }
        }
        net.add_node(t)
    }

    #[test]
    fn chain_matches_matrix_product() {
        // Two (1,1) tensors chained out->in equals the matrix product.
        let mut net = TensorNetwork::new(Field::Rational);
        let a = matrix_node(&mut net, 2, 3, |i, j| (i * 3 + j) as i64);
        let b = matrix_node(&mut net, 3, 2, |i, j| (i as i64) - (j as i64));
        net.add_edge((a, 1), (b, 0)).unwrap();
        let r = contract(&net, None).unwrap();
        // by hand: A (2x3) * B (3x2)
        let expect = |i: usize, k: usize| -> i64 {
            (0..3).map(|j| ((i * 3 + j) as i64) * ((j as i64) - (k as i64))).sum()
        };
        for i in 0..2 {
            for k in 0..2 {
                assert_eq!(r.get(&[i as u32, k as u32]), q(expect(i, k)));
            }
        }
    }

    #[test]
    fn self_loop_is_trace() {
        let mut net = TensorNetwork::new(Field::Rational);
        let d = 5;
        let id = net.add_node(Tensor::identity(Field::Rational, d));
        net.add_edge((id, 1), (id, 0)).unwrap();
        let r = contract(&net, None).unwrap();
        assert_eq!(r.scalar_value().unwrap(), q(d as i64));
    }

    #[test]
    fn empty_network_contracts_to_one() {
        let net = TensorNetwork::new(Field::Rational);
        let plan = plan_contraction(&net);
        assert!(plan.steps.is_empty());
        assert_eq!(plan.total_cost, 0);
        let r = contract(&net, Some(&plan)).unwrap();
        assert_eq!(r.scalar_value().unwrap(), q(1));
    }

    #[test]
    fn single_edge_plan() {
        let mut net = TensorNetwork::new(Field::Rational);
        let a = matrix_node(&mut net, 1, 2, |_, j| j as i64 + 1);
        let b = matrix_node(&mut net, 2, 1, |i, _| 3 - i as i64);
        net.add_edge((a, 1), (b, 0)).unwrap();
        let plan = plan_contraction(&net);
        assert_eq!(plan.steps.len(), 1);
    }

    #[test]
    fn greedy_plan_on_matrix_chain() {
        // (2x8)(8x8)(8x2): the 8-8 edge must be contracted last.
        let mut net = TensorNetwork::new(Field::Rational);
        let a = matrix_node(&mut net, 2, 8, |i, j| (i + j) as i64);
        let b = matrix_node(&mut net, 8, 8, |i, j| (i as i64) - 2 * (j as i64));
        let c = matrix_node(&mut net, 8, 2, |i, j| (i * j) as i64 + 1);
        net.add_edge((a, 1), (b, 0)).unwrap();
        net.add_edge((b, 1), (c, 0)).unwrap();
        let plan = plan_contraction(&net);
        assert_eq!(plan.steps.last().unwrap().edge_index, 1);

        // value equals the single-shot brute-force summation
        let fast = contract(&net, Some(&plan)).unwrap();
        let slow = brute_force_contract(&net);
        assert_eq!(fast, slow);

        // max intermediate is not worse than the best over all edge orders
        let best = all_orders_best_max(&net);
        let ours = plan.steps.iter().map(|s| s.est_size).max().unwrap();
        assert!(ours <= best, "greedy {ours} worse than optimal {best}");
    }

    /// Exhaustive enumeration of all edge orders, returning the minimal
    /// possible maximum intermediate size.
    fn all_orders_best_max(net: &TensorNetwork) -> u128 {
        fn permutations(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for rest in permutations(n - 1) {
                for pos in 0..=rest.len() {
                    let mut p = rest.clone();
                    p.insert(pos, n - 1);
                    out.push(p);
                }
            }
            out
        }
        let mut best = u128::MAX;
        for perm in permutations(net.edges().len()) {
            let mut state = ExecState::new(net);
            let mut max_size: u128 = 0;
            for ei in perm {
                let s = state.contract_edge(net.edges()[ei]).unwrap();
                max_size = max_size.max(s);
            }
            best = best.min(max_size);
        }
        best
    }

    #[test]
    fn plan_independence_small_networks() {
        // All contraction orders of every network below give identical results.
        let mut nets = Vec::new();

        // triangle with a free leg
        let mut n1 = TensorNetwork::new(Field::Rational);
        let a = matrix_node(&mut n1, 2, 3, |i, j| (i + 2 * j) as i64 - 2);
        let b = matrix_node(&mut n1, 3, 2, |i, j| (i * j) as i64 + 1);
        let mut c3 = Tensor::zeros(
            Field::Rational,
            vec![Leg::input(2), Leg::output(2), Leg::output(4)],
        );
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..4 {
                    c3.set(&[i, j, k], q((i + j + k) as i64 % 3 - 1));
                }
            }
        }
        let c = n1.add_node(c3);
        n1.add_edge((a, 1), (b, 0)).unwrap();
        n1.add_edge((b, 1), (c, 0)).unwrap();
        n1.add_edge((c, 1), (a, 0)).unwrap();
        nets.push(n1);

        // two disconnected traces
        let mut n2 = TensorNetwork::new(Field::Rational);
        let x = matrix_node(&mut n2, 3, 3, |i, j| (i as i64 + 1) * (j as i64 - 1));
        let y = matrix_node(&mut n2, 2, 2, |i, j| (i + j) as i64);
        n2.add_edge((x, 1), (x, 0)).unwrap();
        n2.add_edge((y, 1), (y, 0)).unwrap();
        nets.push(n2);

        for net in &nets {
            let reference = brute_force_contract(net);
            let m = net.edges().len();
            // try all m! orders
            let alloc: Vec<Vec<usize>> = {
                fn perms(v: Vec<usize>) -> Vec<Vec<usize>> {
                    if v.is_empty() {
                        return vec![vec![]];
                    }
                    let mut out = Vec::new();
                    for (i, &x) in v.iter().enumerate() {
                        let mut rest = v.clone();
                        rest.remove(i);
                        for mut p in perms(rest) {
                            p.insert(0, x);
                            out.push(p);
                        }
                    }
                    out
                }
                perms((0..m).collect())
            };
            for order in alloc {
                let plan = ContractionPlan {
                    steps: order.iter().map(|&e| PlanStep { edge_index: e, est_size: 0 }).collect(),
                    total_cost: 0,
                };
                let got = contract(net, Some(&plan)).unwrap();
                assert_eq!(got, reference);
            }
        }
    }

    #[test]
    fn invalid_plans_are_rejected() {
        let mut net = TensorNetwork::new(Field::Rational);
        let a = matrix_node(&mut net, 2, 2, |i, j| (i + j) as i64);
        let b = matrix_node(&mut net, 2, 2, |i, j| (i * j) as i64);
        net.add_edge((a, 1), (b, 0)).unwrap();
        let empty = ContractionPlan::default();
        assert!(matches!(contract(&net, Some(&empty)), Err(Error::InvalidPlan(_))));
        let doubled = ContractionPlan {
            steps: vec![
                PlanStep { edge_index: 0, est_size: 0 },
                PlanStep { edge_index: 0, est_size: 0 },
            ],
            total_cost: 0,
        };
        assert!(matches!(contract(&net, Some(&doubled)), Err(Error::InvalidPlan(_))));
    }

    #[test]
    fn mismatched_edges_are_rejected() {
        let mut net = TensorNetwork::new(Field::Rational);
        let a = matrix_node(&mut net, 2, 3, |_, _| 1);
        let b = matrix_node(&mut net, 2, 2, |_, _| 1);
        // dimension conflict
        assert!(net.add_edge((a, 1), (b, 0)).is_err());
        // direction conflict
        assert!(net.add_edge((a, 0), (b, 0)).is_err());
        // double use
        net.add_edge((b, 1), (a, 0)).unwrap();
        assert!(net.add_edge((b, 1), (a, 0)).is_err());
    }
}
