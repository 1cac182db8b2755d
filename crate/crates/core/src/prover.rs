//! Deciding v-good sequenceability by constraint propagation over orderings.
//!
//! Each transitive triple `(a, b, c)` forbids the order `a < b < c`, which
//! is the disjunction `(c < b) or (b < a)`. Choosing one inequality per
//! triple yields a digraph on the points; the design has a v-good
//! sequencing iff some choice is acyclic, and then any topological order of
//! that digraph is a witness. The prover branches over the choices,
//! propagating forced inequalities (an inequality whose alternative would
//! close a directed cycle), and either finds a DAG or returns the explored
//! case tree as a checkable certificate of impossibility.
//!
//! There are `2^(n_triples)` selections in the worst case, so all searches
//! run under a [`Budget`] and report `Unknown` when it is spent.

use serde::{Deserialize, Serialize};

use crate::budget::{Budget, Meter};
use crate::design::{triples_l_good, Dts, Point, Sequencing, Triple};
use crate::error::{Error, Result};

/// A chosen inequality: `(u, v)` means `u` comes before `v`.
pub type OrderEdge = (Point, Point);

/// The per-triple condition. For triple `(a, b, c)`: `left = (c, b)` is
/// "c before b", `right = (b, a)` is "b before a".
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Disjunction {
    pub triple: usize,
    pub left: OrderEdge,
    pub right: OrderEdge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

impl Disjunction {
    pub fn edge(&self, side: Side) -> OrderEdge {
        match side {
            Side::Left => self.left,
            Side::Right => self.right,
        }
    }
}

/// One disjunction per triple, in triple order.
pub fn disjunctions(triples: &[Triple]) -> Vec<Disjunction> {
    triples
        .iter()
        .enumerate()
        .map(|(i, t)| Disjunction {
            triple: i,
            left: (t.last, t.mid),
            right: (t.mid, t.first),
        })
        .collect()
}

/// One forced step: taking the alternative side would have closed
/// `blocked_cycle` (its first two nodes are the alternative edge), so
/// `side` was forced.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcedStep {
    pub disjunction: usize,
    pub side: Side,
    pub blocked_cycle: Vec<Point>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProofNode {
    /// Case split on one disjunction; well-formed trees have exactly two
    /// cases covering both sides.
    Branch {
        disjunction: usize,
        cases: Vec<CaseBranch>,
    },
    /// Contradiction: after the forced chain (accumulated root to leaf),
    /// `cycle` is a directed cycle among the accepted inequalities.
    Leaf {
        forced: Vec<ForcedStep>,
        cycle: Vec<Point>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseBranch {
    pub edge: OrderEdge,
    pub node: ProofNode,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTree {
    pub root: ProofNode,
}

impl ProofTree {
    pub fn branch_count(&self) -> usize {
        fn walk(n: &ProofNode) -> usize {
            match n {
                ProofNode::Leaf { .. } => 0,
                ProofNode::Branch { cases, .. } => {
                    1 + cases.iter().map(|c| walk(&c.node)).sum::<usize>()
                }
            }
        }
        walk(&self.root)
    }
}

#[derive(Clone, Debug)]
pub enum ProverVerdict {
    Sequenceable(Sequencing),
    Unsequenceable(ProofTree),
    Unknown { nodes: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Propagation {
    /// No contradiction; the state is at a fixpoint.
    Fixpoint { newly_forced: usize },
    /// Both sides of some disjunction close cycles. `cycle` is the one the
    /// forced side would create; the trail records the step.
    Contradiction { cycle: Vec<Point> },
}

#[derive(Clone, Debug)]
pub enum TrailStep {
    Decision { disjunction: usize, side: Side },
    Forced(ForcedStep),
}

/// Partial orientation: chosen inequality edges plus the unresolved
/// disjunctions, with a trail for rewinding and proof emission.
pub struct ConstraintState {
    v: usize,
    disjunctions: Vec<Disjunction>,
    adj: Vec<Vec<Point>>,
    has_edge: Vec<bool>,
    resolved: Vec<Option<Side>>,
    trail: Vec<TrailStep>,
    /// Number of chosen edges incident to each point.
    touched: Vec<u32>,
    // DFS scratch
    visit_mark: Vec<u32>,
    epoch: u32,
}

pub struct Mark(usize);

impl ConstraintState {
    pub fn new(v: usize, triples: &[Triple]) -> Self {
        let disjunctions = disjunctions(triples);
        let n = disjunctions.len();
        ConstraintState {
            v,
            disjunctions,
            adj: vec![Vec::new(); v],
            has_edge: vec![false; v * v],
            resolved: vec![None; n],
            trail: Vec::new(),
            touched: vec![0; v],
            visit_mark: vec![0; v],
            epoch: 0,
        }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn disjunctions(&self) -> &[Disjunction] {
        &self.disjunctions
    }

    pub fn trail(&self) -> &[TrailStep] {
        &self.trail
    }

    pub fn resolved(&self, d: usize) -> Option<Side> {
        self.resolved[d]
    }

    pub fn chosen_edges(&self) -> Vec<OrderEdge> {
        let mut out = Vec::new();
        for (u, outs) in self.adj.iter().enumerate() {
            for &w in outs {
                out.push((u, w));
            }
        }
        out
    }

    /// All forced steps on the trail, root to now.
    pub fn forced_chain(&self) -> Vec<ForcedStep> {
        self.trail
            .iter()
            .filter_map(|s| match s {
                TrailStep::Forced(f) => Some(f.clone()),
                TrailStep::Decision { .. } => None,
            })
            .collect()
    }

    #[inline]
    fn has(&self, e: OrderEdge) -> bool {
        self.has_edge[e.0 * self.v + e.1]
    }

    fn insert_edge(&mut self, e: OrderEdge) {
        self.adj[e.0].push(e.1);
        self.has_edge[e.0 * self.v + e.1] = true;
        self.touched[e.0] += 1;
        self.touched[e.1] += 1;
    }

    fn remove_edge(&mut self, e: OrderEdge) {
        let popped = self.adj[e.0].pop();
        debug_assert_eq!(popped, Some(e.1));
        self.has_edge[e.0 * self.v + e.1] = false;
        self.touched[e.0] -= 1;
        self.touched[e.1] -= 1;
    }

    /// Path from `from` to `to` along chosen edges, inclusive, if one
    /// exists.
    pub fn find_path(&mut self, from: Point, to: Point) -> Option<Vec<Point>> {
        self.epoch += 1;
        let epoch = self.epoch;
        // prev[x] = predecessor on the discovered path
        let mut prev = vec![usize::MAX; self.v];
        let mut stack = vec![from];
        self.visit_mark[from] = epoch;
        while let Some(u) = stack.pop() {
            if u == to {
                let mut path = vec![to];
                let mut x = to;
                while x != from {
                    x = prev[x];
                    path.push(x);
                }
                path.reverse();
                return Some(path);
            }
            for &w in &self.adj[u] {
                if self.visit_mark[w] != epoch {
                    self.visit_mark[w] = epoch;
                    prev[w] = u;
                    stack.push(w);
                }
            }
        }
        None
    }

    /// Would adding `e` close a directed cycle? If so, return the cycle
    /// (starting with `e`'s endpoints).
    fn closing_cycle(&mut self, e: OrderEdge) -> Option<Vec<Point>> {
        let path = self.find_path(e.1, e.0)?;
        // cycle = e.0 -> e.1 -> ... -> e.0
        let mut cycle = Vec::with_capacity(path.len());
        cycle.push(e.0);
        cycle.extend_from_slice(&path[..path.len() - 1]);
        Some(cycle)
    }

    #[inline]
    fn closes(&mut self, e: OrderEdge) -> bool {
        self.epoch += 1;
        let epoch = self.epoch;
        let mut stack = vec![e.1];
        self.visit_mark[e.1] = epoch;
        while let Some(u) = stack.pop() {
            if u == e.0 {
                return true;
            }
            for &w in &self.adj[u] {
                if self.visit_mark[w] != epoch {
                    self.visit_mark[w] = epoch;
                    stack.push(w);
                }
            }
        }
        false
    }

    pub fn mark(&self) -> Mark {
        Mark(self.trail.len())
    }

    /// Rewind the trail (and the edges it added) back to `mark`.
    pub fn rewind(&mut self, mark: Mark) {
        while self.trail.len() > mark.0 {
            let step = self.trail.pop().unwrap();
            let (d, side) = match &step {
                TrailStep::Decision { disjunction, side } => (*disjunction, *side),
                TrailStep::Forced(f) => (f.disjunction, f.side),
            };
            self.remove_edge(self.disjunctions[d].edge(side));
            self.resolved[d] = None;
        }
    }

    /// Record a decision. Callers must ensure the edge does not close a
    /// cycle (check with [`ConstraintState::decision_cycle`] first).
    pub fn decide(&mut self, d: usize, side: Side) {
        debug_assert!(self.resolved[d].is_none());
        let e = self.disjunctions[d].edge(side);
        debug_assert!(self.closing_cycle(e).is_none());
        self.resolved[d] = Some(side);
        self.insert_edge(e);
        self.trail.push(TrailStep::Decision { disjunction: d, side });
    }

    /// The cycle a decision would close, if any.
    pub fn decision_cycle(&mut self, d: usize, side: Side) -> Option<Vec<Point>> {
        let e = self.disjunctions[d].edge(side);
        self.closing_cycle(e)
    }

    /// Force `side` of disjunction `d` because the other side closes
    /// `blocked`. Returns the contradiction cycle if the forced edge itself
    /// closes one (the step is still recorded on the trail).
    fn force(&mut self, d: usize, side: Side, blocked: Vec<Point>) -> Option<Vec<Point>> {
        let e = self.disjunctions[d].edge(side);
        let contradiction = self.closing_cycle(e);
        self.resolved[d] = Some(side);
        self.insert_edge(e);
        self.trail.push(TrailStep::Forced(ForcedStep {
            disjunction: d,
            side,
            blocked_cycle: blocked,
        }));
        contradiction
    }

    /// Propagate to fixpoint: whenever one side of an unresolved
    /// disjunction would close a directed cycle, the other side is forced.
    ///
    /// Two sweeps alternate until nothing fires: first disjunctions whose
    /// blocked side is a direct reversal of a chosen edge, then the general
    /// cycle test; both scan in triple order and restart after each
    /// forcing. This keeps the forced chains in the order a hand derivation
    /// produces them.
    pub fn propagate(&mut self) -> Propagation {
        let n = self.disjunctions.len();
        let mut newly_forced = 0;
        'outer: loop {
            // direct reversals
            for d in 0..n {
                if self.resolved[d].is_some() {
                    continue;
                }
                let dis = self.disjunctions[d];
                let side = if self.has(rev(dis.right)) {
                    Side::Left
                } else if self.has(rev(dis.left)) {
                    Side::Right
                } else {
                    continue;
                };
                let alt = dis.edge(side.other());
                newly_forced += 1;
                if let Some(cycle) = self.force(d, side, vec![alt.0, alt.1]) {
                    return Propagation::Contradiction { cycle };
                }
                continue 'outer;
            }
            // general cycle closure
            for d in 0..n {
                if self.resolved[d].is_some() {
                    continue;
                }
                let dis = self.disjunctions[d];
                let side = if self.closes(dis.right) {
                    Side::Left
                } else if self.closes(dis.left) {
                    Side::Right
                } else {
                    continue;
                };
                let alt = dis.edge(side.other());
                let blocked = self
                    .closing_cycle(alt)
                    .expect("closes() just found a path");
                newly_forced += 1;
                if let Some(cycle) = self.force(d, side, blocked) {
                    return Propagation::Contradiction { cycle };
                }
                continue 'outer;
            }
            return Propagation::Fixpoint { newly_forced };
        }
    }

    /// Fail-first branching: the unresolved disjunction touching the most
    /// already-constrained points, ties broken by lowest triple index.
    fn pick_branch(&self) -> Option<usize> {
        let mut best: Option<(u32, usize)> = None;
        for (d, dis) in self.disjunctions.iter().enumerate() {
            if self.resolved[d].is_some() {
                continue;
            }
            let (c, b) = dis.left;
            let (_, a) = dis.right;
            let score = [a, b, c]
                .iter()
                .filter(|&&p| self.touched[p] > 0)
                .count() as u32;
            match best {
                Some((s, _)) if s >= score => {}
                _ => best = Some((score, d)),
            }
        }
        best.map(|(_, d)| d)
    }
}

#[inline]
fn rev(e: OrderEdge) -> OrderEdge {
    (e.1, e.0)
}

/// Topological order of a digraph on `0..v`, or the directed cycle that
/// prevents one. Smallest-index-first, so the order is deterministic.
pub fn topological_order(
    v: usize,
    edges: &[OrderEdge],
) -> std::result::Result<Sequencing, Vec<Point>> {
    let mut indeg = vec![0usize; v];
    let mut adj = vec![Vec::new(); v];
    for &(a, b) in edges {
        adj[a].push(b);
        indeg[b] += 1;
    }
    let mut heap = std::collections::BinaryHeap::new();
    for (p, &d) in indeg.iter().enumerate() {
        if d == 0 {
            heap.push(std::cmp::Reverse(p));
        }
    }
    let mut order = Vec::with_capacity(v);
    let mut processed = vec![false; v];
    while let Some(std::cmp::Reverse(p)) = heap.pop() {
        order.push(p);
        processed[p] = true;
        for &w in &adj[p] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                heap.push(std::cmp::Reverse(w));
            }
        }
    }
    if order.len() == v {
        return Ok(Sequencing::new(order).expect("kahn yields a permutation"));
    }
    // Extract a cycle from the unprocessed part. Every unprocessed node has
    // an unprocessed predecessor (processed sources were decremented away),
    // so walking predecessors must revisit a node.
    let start = (0..v).find(|&p| !processed[p]).expect("cycle exists");
    let mut radj = vec![Vec::new(); v];
    for &(a, b) in edges {
        if !processed[a] && !processed[b] {
            radj[b].push(a);
        }
    }
    let mut seen = vec![usize::MAX; v];
    let mut path = vec![start];
    seen[start] = 0;
    loop {
        let u = *path.last().unwrap();
        let prev = radj[u][0];
        if seen[prev] != usize::MAX {
            let mut cycle = path[seen[prev]..].to_vec();
            cycle.reverse();
            return Err(cycle);
        }
        seen[prev] = path.len();
        path.push(prev);
    }
}

enum Solve {
    Sat(Sequencing),
    Refuted(ProofNode),
    Out,
}

fn solve(state: &mut ConstraintState, meter: &mut Meter) -> Solve {
    if !meter.tick() {
        return Solve::Out;
    }
    if let Propagation::Contradiction { cycle } = state.propagate() {
        return Solve::Refuted(ProofNode::Leaf {
            forced: state.forced_chain(),
            cycle,
        });
    }
    let Some(d) = state.pick_branch() else {
        // every disjunction resolved: the chosen edges are acyclic
        let order = topological_order(state.v(), &state.chosen_edges())
            .expect("live state is acyclic");
        return Solve::Sat(order);
    };
    let mut cases = Vec::with_capacity(2);
    for side in [Side::Right, Side::Left] {
        let edge = state.disjunctions()[d].edge(side);
        if let Some(cycle) = state.decision_cycle(d, side) {
            cases.push(CaseBranch {
                edge,
                node: ProofNode::Leaf { forced: state.forced_chain(), cycle },
            });
            continue;
        }
        let mark = state.mark();
        state.decide(d, side);
        match solve(state, meter) {
            Solve::Sat(s) => return Solve::Sat(s),
            Solve::Out => return Solve::Out,
            Solve::Refuted(node) => {
                state.rewind(mark);
                cases.push(CaseBranch { edge, node });
            }
        }
    }
    Solve::Refuted(ProofNode::Branch { disjunction: d, cases })
}

/// Complete search over one-side-per-disjunction choices with propagation.
///
/// Accepts any well-formed triple set, not only complete designs; `v` may
/// exceed the largest point mentioned (untouched points are free). The
/// verdict is `Unknown` only when the budget is exhausted.
pub fn decide_v_good(v: usize, triples: &[Triple], budget: &Budget) -> ProverVerdict {
    let mut state = ConstraintState::new(v, triples);
    let mut meter = Meter::new(*budget);
    match solve(&mut state, &mut meter) {
        Solve::Sat(seq) => {
            debug_assert!(triples_l_good(triples, &seq, v));
            ProverVerdict::Sequenceable(seq)
        }
        Solve::Refuted(root) => ProverVerdict::Unsequenceable(ProofTree { root }),
        Solve::Out => ProverVerdict::Unknown { nodes: meter.nodes() },
    }
}

pub fn decide_dts(dts: &Dts, budget: &Budget) -> ProverVerdict {
    decide_v_good(dts.v(), dts.triples(), budget)
}

/// Independent certificate checker.
///
/// Verifies that every branch splits a real disjunction into both of its
/// sides, that every forced step is justified (its blocked cycle starts
/// with the rejected edge and otherwise uses accepted edges), and that
/// every leaf cycle is a genuine directed cycle among the edges accepted on
/// the root-to-leaf path.
pub fn check_proof(v: usize, triples: &[Triple], tree: &ProofTree) -> Result<()> {
    let djs = disjunctions(triples);
    let mut accepted: std::collections::HashSet<OrderEdge> = std::collections::HashSet::new();
    let mut resolved = vec![false; djs.len()];
    check_node(v, &djs, &tree.root, &mut accepted, &mut resolved, "root")
}

fn check_node(
    v: usize,
    djs: &[Disjunction],
    node: &ProofNode,
    accepted: &mut std::collections::HashSet<OrderEdge>,
    resolved: &mut [bool],
    loc: &str,
) -> Result<()> {
    let fail = |problem: String, at: &str| Error::ProofCheck {
        location: at.to_string(),
        problem,
    };
    match node {
        ProofNode::Branch { disjunction, cases } => {
            let d = *disjunction;
            if d >= djs.len() {
                return Err(fail(format!("disjunction {d} out of range"), loc));
            }
            if resolved[d] {
                return Err(fail(format!("disjunction {d} already resolved"), loc));
            }
            if cases.len() != 2 {
                return Err(fail(
                    format!("branch has {} cases, want 2", cases.len()),
                    loc,
                ));
            }
            let sides = (cases[0].edge, cases[1].edge);
            let want = (djs[d].left, djs[d].right);
            if sides != want && sides != (want.1, want.0) {
                return Err(fail(
                    format!("cases {sides:?} do not cover both sides {want:?}"),
                    loc,
                ));
            }
            for (i, case) in cases.iter().enumerate() {
                let sub = format!("{loc}/case {}", i + 1);
                resolved[d] = true;
                accepted.insert(case.edge);
                let res = check_node(v, djs, &case.node, accepted, resolved, &sub);
                accepted.remove(&case.edge);
                resolved[d] = false;
                res?;
            }
            Ok(())
        }
        ProofNode::Leaf { forced, cycle } => {
            let mut added: Vec<(usize, OrderEdge)> = Vec::new();
            let undo = |accepted: &mut std::collections::HashSet<OrderEdge>,
                            resolved: &mut [bool],
                            added: &[(usize, OrderEdge)]| {
                for &(d, e) in added {
                    accepted.remove(&e);
                    resolved[d] = false;
                }
            };
            for (i, step) in forced.iter().enumerate() {
                let at = format!("{loc}/forced step {}", i + 1);
                let err = |problem: String| {
                    Error::ProofCheck { location: at.clone(), problem }
                };
                let check = (|| {
                    let d = step.disjunction;
                    if d >= djs.len() {
                        return Err(err(format!("disjunction {d} out of range")));
                    }
                    if resolved[d] {
                        return Err(err(format!("disjunction {d} already resolved")));
                    }
                    let chosen = djs[d].edge(step.side);
                    let alt = djs[d].edge(step.side.other());
                    check_cycle_shape(v, &step.blocked_cycle).map_err(&err)?;
                    let bc = &step.blocked_cycle;
                    if (bc[0], bc[1]) != alt {
                        return Err(err(format!(
                            "blocked cycle starts with ({}, {}), want the rejected edge {:?}",
                            bc[0], bc[1], alt
                        )));
                    }
                    for k in 1..bc.len() {
                        let e = (bc[k], bc[(k + 1) % bc.len()]);
                        if !accepted.contains(&e) {
                            return Err(err(format!("cycle edge {e:?} is not accepted")));
                        }
                    }
                    resolved[d] = true;
                    accepted.insert(chosen);
                    added.push((d, chosen));
                    Ok(())
                })();
                if let Err(e) = check {
                    undo(accepted, resolved, &added);
                    return Err(e);
                }
            }
            let res = (|| {
                let err = |problem: String| Error::ProofCheck {
                    location: format!("{loc}/cycle"),
                    problem,
                };
                check_cycle_shape(v, cycle).map_err(&err)?;
                for k in 0..cycle.len() {
                    let e = (cycle[k], cycle[(k + 1) % cycle.len()]);
                    if !accepted.contains(&e) {
                        return Err(err(format!("cycle edge {e:?} is not accepted")));
                    }
                }
                Ok(())
            })();
            undo(accepted, resolved, &added);
            res
        }
    }
}

fn check_cycle_shape(v: usize, cycle: &[Point]) -> std::result::Result<(), String> {
    if cycle.len() < 2 {
        return Err(format!("cycle of length {} is too short", cycle.len()));
    }
    let mut seen = std::collections::HashSet::new();
    for &p in cycle {
        if p >= v {
            return Err(format!("point {p} out of range"));
        }
        if !seen.insert(p) {
            return Err(format!("point {p} repeats in the cycle"));
        }
    }
    Ok(())
}

/// Render a proof tree as a human-readable case analysis.
pub fn proof_to_text(triples: &[Triple], tree: &ProofTree) -> String {
    let djs = disjunctions(triples);
    let mut out = String::new();
    out.push_str("conditions:\n");
    for (i, t) in triples.iter().enumerate() {
        out.push_str(&format!(
            "  T{} = {}: {} or {}\n",
            i + 1,
            t,
            fmt_edge(djs[i].right),
            fmt_edge(djs[i].left),
        ));
    }
    render(&djs, &tree.root, "", 0, &mut out);
    out
}

fn fmt_edge(e: OrderEdge) -> String {
    format!("{} < {}", e.0, e.1)
}

fn fmt_cycle(c: &[Point]) -> String {
    let mut parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
    parts.push(c[0].to_string());
    parts.join(" < ")
}

fn render(djs: &[Disjunction], node: &ProofNode, case: &str, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match node {
        ProofNode::Leaf { forced, cycle } => {
            for f in forced {
                let d = &djs[f.disjunction];
                out.push_str(&format!(
                    "{pad}T{} implies {} or {}; {} would close {}, so {}\n",
                    d.triple + 1,
                    fmt_edge(d.right),
                    fmt_edge(d.left),
                    fmt_edge(d.edge(f.side.other())),
                    fmt_cycle(&f.blocked_cycle),
                    fmt_edge(d.edge(f.side)),
                ));
            }
            out.push_str(&format!(
                "{pad}directed cycle: {}\n",
                fmt_cycle(cycle)
            ));
            if case.is_empty() {
                out.push_str(&format!("{pad}impossible.\n"));
            } else {
                out.push_str(&format!("{pad}Case {case} is impossible.\n"));
            }
        }
        ProofNode::Branch { disjunction, cases } => {
            let d = &djs[*disjunction];
            out.push_str(&format!(
                "{pad}case split on T{} : {} or {}\n",
                d.triple + 1,
                fmt_edge(d.right),
                fmt_edge(d.left),
            ));
            for (i, c) in cases.iter().enumerate() {
                let label = if case.is_empty() {
                    format!("{}", i + 1)
                } else {
                    format!("{case}.{}", i + 1)
                };
                out.push_str(&format!(
                    "{pad}Case {label}: assume {}\n",
                    fmt_edge(c.edge)
                ));
                render(djs, &c.node, &label, indent + 1, out);
            }
        }
    }
}
