//! Bounded congruence closure of walk homotopy.
//!
//! Nodes stand for walks from a fixed base vertex; an edge `u --α--> v`
//! records that the walk of `v` is homotopic to the walk of `u` followed by
//! α. Classes are kept in a union-find whose class maps are folded so each
//! class has at most one out-edge and one in-edge per base arrow. Every merge
//! records its reason in a proof forest, from which an explicit chain of
//! elementary moves can be rebuilt.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap, VecDeque};
use std::rc::Rc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::qcore::{
    raw_mesh, ArrowIndex, Direction, Mesh, Step, TranslationQuiver, VertexIndex, Walk,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HomotopyKind {
    /// Cancellation and mesh relations.
    Universal,
    /// Additionally identifies parallel arrows.
    Generic,
}

impl HomotopyKind {
    pub fn name(self) -> &'static str {
        match self {
            HomotopyKind::Universal => "universal",
            HomotopyKind::Generic => "generic",
        }
    }

    pub fn parse(s: &str) -> Option<HomotopyKind> {
        match s {
            "universal" => Some(HomotopyKind::Universal),
            "generic" => Some(HomotopyKind::Generic),
            _ => None,
        }
    }
}

/// One rewriting step on a walk; positions index into the step list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// Removes `step, step⁻¹` at `at`, `at + 1`.
    Cancel { at: usize, step: Step },
    /// Inserts `step, step⁻¹` before position `at`.
    Insert { at: usize, step: Step },
    /// Replaces `σα, α` by `σα', α'` (or the inverse segment `α⁻¹, σα⁻¹`).
    MeshSwap {
        at: usize,
        from: [Step; 2],
        to: [Step; 2],
    },
    /// Replaces an arrow by a parallel one, in the same direction.
    ParallelSwap { at: usize, from: Step, to: Step },
}

impl Move {
    pub fn inverse(&self) -> Move {
        match *self {
            Move::Cancel { at, step } => Move::Insert { at, step },
            Move::Insert { at, step } => Move::Cancel { at, step },
            Move::MeshSwap { at, from, to } => Move::MeshSwap { at, from: to, to: from },
            Move::ParallelSwap { at, from, to } => Move::ParallelSwap { at, from: to, to: from },
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("move {index} does not apply: {reason}")]
    Invalid { index: usize, reason: String },
    #[error("replay ends at a different walk")]
    WrongEnd,
}

/// A chain of elementary moves turning `from` into `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub from: Walk,
    pub to: Walk,
    pub moves: Vec<Move>,
}

impl Witness {
    /// Applies every move with full checking and confirms the final walk.
    pub fn replay(&self, q: &TranslationQuiver, kind: HomotopyKind) -> Result<(), WitnessError> {
        let mut cur = self.from.steps.clone();
        for (index, m) in self.moves.iter().enumerate() {
            apply_move(q, kind, self.from.start, &mut cur, m)
                .map_err(|reason| WitnessError::Invalid { index, reason })?;
        }
        if self.to.start != self.from.start || cur != self.to.steps {
            return Err(WitnessError::WrongEnd);
        }
        Ok(())
    }
}

fn vertex_at(q: &TranslationQuiver, start: VertexIndex, steps: &[Step], at: usize) -> VertexIndex {
    if at == 0 {
        start
    } else {
        steps[at - 1].end(q)
    }
}

fn is_mesh_segment(q: &TranslationQuiver, seg: [Step; 2]) -> Option<(VertexIndex, Direction)> {
    let (partner, arrow, dir) = match (seg[0].dir, seg[1].dir) {
        (Direction::Forward, Direction::Forward) => (seg[0].arrow, seg[1].arrow, Direction::Forward),
        (Direction::Inverse, Direction::Inverse) => (seg[1].arrow, seg[0].arrow, Direction::Inverse),
        _ => return None,
    };
    let z = q.target(arrow);
    if q.is_projective(z) || q.sigma(arrow) != Some(partner) {
        return None;
    }
    Some((z, dir))
}

fn apply_move(
    q: &TranslationQuiver,
    kind: HomotopyKind,
    start: VertexIndex,
    cur: &mut Vec<Step>,
    m: &Move,
) -> Result<(), String> {
    match *m {
        Move::Cancel { at, step } => {
            if cur.get(at) != Some(&step) || cur.get(at + 1) != Some(&step.reversed()) {
                return Err("no cancelling pair at this position".into());
            }
            cur.drain(at..at + 2);
        }
        Move::Insert { at, step } => {
            if at > cur.len() || vertex_at(q, start, cur, at) != step.start(q) {
                return Err("inserted pair does not start at this vertex".into());
            }
            cur.splice(at..at, [step, step.reversed()]);
        }
        Move::MeshSwap { at, from, to } => {
            if cur.get(at..at + 2) != Some(&from[..]) {
                return Err("segment does not match".into());
            }
            match (is_mesh_segment(q, from), is_mesh_segment(q, to)) {
                (Some(a), Some(b)) if a == b => {}
                _ => return Err("segments are not spokes of one mesh".into()),
            }
            if from[0].start(q) != to[0].start(q) {
                return Err("segments start at different vertices".into());
            }
            cur[at] = to[0];
            cur[at + 1] = to[1];
        }
        Move::ParallelSwap { at, from, to } => {
            if kind != HomotopyKind::Generic {
                return Err("parallel arrows are only identified generically".into());
            }
            if cur.get(at) != Some(&from) || from.dir != to.dir {
                return Err("step does not match".into());
            }
            if q.source(from.arrow) != q.source(to.arrow) || q.target(from.arrow) != q.target(to.arrow) {
                return Err("arrows are not parallel".into());
            }
            cur[at] = to;
        }
    }
    Ok(())
}

pub(crate) type NodeId = usize;
type EdgeId = usize;

/// `from --arrow--> to`; `forward` means the walk of `to` is the walk of
/// `from` followed by the arrow, otherwise the walk of `from` is the walk of
/// `to` followed by the inverse arrow.
#[derive(Debug, Clone, Copy)]
struct EdgeRec {
    from: NodeId,
    to: NodeId,
    arrow: ArrowIndex,
    forward: bool,
}

#[derive(Debug, Clone, Copy)]
enum Reason {
    FoldOut(EdgeId, EdgeId),
    FoldIn(EdgeId, EdgeId),
    MeshOut([EdgeId; 2], [EdgeId; 2]),
    MeshIn([EdgeId; 2], [EdgeId; 2]),
    ParallelOut(EdgeId, EdgeId),
    ParallelIn(EdgeId, EdgeId),
}

#[derive(Debug, Clone, Copy)]
struct ProofEdge {
    a: NodeId,
    b: NodeId,
    reason: Reason,
}

/// Result of a bounded homotopy query.
#[derive(Debug, Clone)]
pub enum HomotopyAnswer {
    Yes(Witness),
    NoWithinBound,
}

impl HomotopyAnswer {
    pub fn is_yes(&self) -> bool {
        matches!(self, HomotopyAnswer::Yes(_))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomotopyError {
    #[error("walks start or end at different vertices")]
    EndpointMismatch,
    #[error("bound {bound} is shorter than a walk of length {len}")]
    BoundTooSmall { bound: usize, len: usize },
}

/// Class graph of walks from `base` under the bounded closure.
pub(crate) struct Enumeration<'q> {
    q: &'q TranslationQuiver,
    kind: HomotopyKind,
    bound: usize,
    base_vertex: VertexIndex,
    parent: Vec<NodeId>,
    size: Vec<usize>,
    vertex: Vec<VertexIndex>,
    rep: Vec<Vec<Step>>,
    out: Vec<BTreeMap<ArrowIndex, EdgeId>>,
    inc: Vec<BTreeMap<ArrowIndex, EdgeId>>,
    edges: Vec<EdgeRec>,
    proof_parent: Vec<Option<(NodeId, usize)>>,
    proofs: Vec<ProofEdge>,
    pending: VecDeque<(NodeId, NodeId, Reason)>,
    meshes: Vec<Option<Mesh>>,
    chains: RefCell<HashMap<usize, Rc<Vec<Move>>>>,
}

impl<'q> Enumeration<'q> {
    /// Classes of walks of length at most `bound` starting at `base`.
    pub(crate) fn run(
        q: &'q TranslationQuiver,
        base: VertexIndex,
        kind: HomotopyKind,
        bound: usize,
    ) -> Self {
        let meshes = q
            .vertex_indices()
            .map(|z| {
                if q.is_projective(z) {
                    return None;
                }
                raw_mesh(q, z).ok().filter(|m| m.spokes.len() >= 2)
            })
            .collect();
        let mut e = Enumeration {
            q,
            kind,
            bound,
            base_vertex: base,
            parent: Vec::new(),
            size: Vec::new(),
            vertex: Vec::new(),
            rep: Vec::new(),
            out: Vec::new(),
            inc: Vec::new(),
            edges: Vec::new(),
            proof_parent: Vec::new(),
            proofs: Vec::new(),
            pending: VecDeque::new(),
            meshes,
            chains: RefCell::new(HashMap::new()),
        };
        e.new_node(Vec::new(), base);
        e.grow();
        e
    }

    pub(crate) fn quiver(&self) -> &'q TranslationQuiver {
        self.q
    }

    pub(crate) fn base_vertex(&self) -> VertexIndex {
        self.base_vertex
    }

    pub(crate) fn base_node(&self) -> NodeId {
        self.root(0)
    }

    fn new_node(&mut self, rep: Vec<Step>, v: VertexIndex) -> NodeId {
        let id = self.parent.len();
        self.parent.push(id);
        self.size.push(1);
        self.vertex.push(v);
        self.rep.push(rep);
        self.out.push(BTreeMap::new());
        self.inc.push(BTreeMap::new());
        self.proof_parent.push(None);
        id
    }

    pub(crate) fn root(&self, mut n: NodeId) -> NodeId {
        while self.parent[n] != n {
            n = self.parent[n];
        }
        n
    }

    pub(crate) fn vertex(&self, n: NodeId) -> VertexIndex {
        self.vertex[n]
    }

    /// Class reached from class `n` by one step, if enumerated.
    pub(crate) fn step(&self, n: NodeId, s: Step) -> Option<NodeId> {
        let r = self.root(n);
        match s.dir {
            Direction::Forward => self.out[r].get(&s.arrow).map(|&e| self.root(self.edges[e].to)),
            Direction::Inverse => self.inc[r].get(&s.arrow).map(|&e| self.root(self.edges[e].from)),
        }
    }

    /// Out-edges of a class as (base arrow, target class).
    pub(crate) fn out_edges(&self, n: NodeId) -> Vec<(ArrowIndex, NodeId)> {
        let r = self.root(n);
        self.out[r]
            .iter()
            .map(|(&a, &e)| (a, self.root(self.edges[e].to)))
            .collect()
    }

    fn add_edge(&mut self, from: NodeId, to: NodeId, arrow: ArrowIndex, forward: bool) {
        let e = self.edges.len();
        self.edges.push(EdgeRec {
            from,
            to,
            arrow,
            forward,
        });
        self.out[from].insert(arrow, e);
        self.inc[to].insert(arrow, e);
    }

    fn is_expanded(&self, r: NodeId) -> bool {
        let v = self.vertex[r];
        self.out[r].len() == self.q.arrows_from(v).len()
            && self.inc[r].len() == self.q.arrows_into(v).len()
    }

    fn expand(&mut self, r: NodeId) {
        let v = self.vertex[r];
        for &a in self.q.arrows_from(v) {
            if !self.out[r].contains_key(&a) {
                let mut rep = self.rep[r].clone();
                rep.push(Step::forward(a));
                let w = self.new_node(rep, self.q.target(a));
                self.add_edge(r, w, a, true);
            }
        }
        for &a in self.q.arrows_into(v) {
            if !self.inc[r].contains_key(&a) {
                let mut rep = self.rep[r].clone();
                rep.push(Step::inverse(a));
                let w = self.new_node(rep, self.q.source(a));
                self.add_edge(w, r, a, false);
            }
        }
    }

    /// BFS distance of every class root from the base class.
    pub(crate) fn distances(&self) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.parent.len()];
        let b = self.base_node();
        dist[b] = 0;
        let mut queue = VecDeque::from([b]);
        while let Some(u) = queue.pop_front() {
            let next = self.out[u]
                .values()
                .map(|&e| self.edges[e].to)
                .chain(self.inc[u].values().map(|&e| self.edges[e].from));
            let nd = dist[u] + 1;
            let targets: Vec<NodeId> = next.map(|n| self.root(n)).collect();
            for t in targets {
                if dist[t] == usize::MAX {
                    dist[t] = nd;
                    queue.push_back(t);
                }
            }
        }
        dist
    }

    fn grow(&mut self) {
        loop {
            self.close();
            let dist = self.distances();
            let todo: Vec<NodeId> = (0..self.parent.len())
                .filter(|&n| dist[n] < self.bound && !self.is_expanded(n))
                .collect();
            let Some(level) = todo.iter().map(|&n| dist[n]).min() else {
                break;
            };
            for n in todo {
                if dist[n] == level {
                    self.expand(n);
                }
            }
        }
    }

    fn reroot_proof(&mut self, a: NodeId) {
        let mut prev = None;
        let mut cur = a;
        loop {
            let next = self.proof_parent[cur];
            self.proof_parent[cur] = prev;
            match next {
                None => break,
                Some((p, id)) => {
                    prev = Some((cur, id));
                    cur = p;
                }
            }
        }
    }

    fn merge(&mut self, a: NodeId, b: NodeId, reason: Reason) {
        let (ra, rb) = (self.root(a), self.root(b));
        if ra == rb {
            return;
        }
        self.reroot_proof(a);
        self.proof_parent[a] = Some((b, self.proofs.len()));
        self.proofs.push(ProofEdge { a, b, reason });

        let (r, x) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[x] = r;
        self.size[r] += self.size[x];
        for (arrow, e) in std::mem::take(&mut self.out[x]) {
            match self.out[r].get(&arrow) {
                Some(&kept) => {
                    let reason = Reason::FoldOut(kept, e);
                    self.pending.push_back((self.edges[kept].to, self.edges[e].to, reason));
                }
                None => {
                    self.out[r].insert(arrow, e);
                }
            }
        }
        for (arrow, e) in std::mem::take(&mut self.inc[x]) {
            match self.inc[r].get(&arrow) {
                Some(&kept) => {
                    let reason = Reason::FoldIn(kept, e);
                    self.pending.push_back((self.edges[kept].from, self.edges[e].from, reason));
                }
                None => {
                    self.inc[r].insert(arrow, e);
                }
            }
        }
    }

    fn scan(&mut self, r: NodeId) {
        let q = self.q;
        let v = self.vertex[r];
        if let Some(z) = q.tau_inverse(v) {
            if let Some(mesh) = &self.meshes[z.ix()] {
                let mut found: Vec<[EdgeId; 2]> = Vec::new();
                for s in &mesh.spokes {
                    let Some(&e1) = self.out[r].get(&s.partner) else { continue };
                    let y = self.root(self.edges[e1].to);
                    let Some(&e2) = self.out[y].get(&s.arrow) else { continue };
                    found.push([e1, e2]);
                }
                self.request_all(&found, |e, pair| e.edges[pair[1]].to, Reason::MeshOut);
            }
        }
        if let Some(mesh) = &self.meshes[v.ix()] {
            let mut found: Vec<[EdgeId; 2]> = Vec::new();
            for s in &mesh.spokes {
                let Some(&e1) = self.inc[r].get(&s.arrow) else { continue };
                let y = self.root(self.edges[e1].from);
                let Some(&e2) = self.inc[y].get(&s.partner) else { continue };
                found.push([e1, e2]);
            }
            self.request_all(&found, |e, pair| e.edges[pair[1]].from, Reason::MeshIn);
        }
        if self.kind == HomotopyKind::Generic {
            let mut by_target: BTreeMap<VertexIndex, EdgeId> = BTreeMap::new();
            let outs: Vec<EdgeId> = self.out[r].values().copied().collect();
            for e in outs {
                let t = q.target(self.edges[e].arrow);
                match by_target.get(&t) {
                    Some(&first) => self.request(
                        self.edges[first].to,
                        self.edges[e].to,
                        Reason::ParallelOut(first, e),
                    ),
                    None => {
                        by_target.insert(t, e);
                    }
                }
            }
            let mut by_source: BTreeMap<VertexIndex, EdgeId> = BTreeMap::new();
            let ins: Vec<EdgeId> = self.inc[r].values().copied().collect();
            for e in ins {
                let s = q.source(self.edges[e].arrow);
                match by_source.get(&s) {
                    Some(&first) => self.request(
                        self.edges[first].from,
                        self.edges[e].from,
                        Reason::ParallelIn(first, e),
                    ),
                    None => {
                        by_source.insert(s, e);
                    }
                }
            }
        }
    }

    fn request(&mut self, a: NodeId, b: NodeId, reason: Reason) {
        if self.root(a) != self.root(b) {
            self.pending.push_back((a, b, reason));
        }
    }

    fn request_all(
        &mut self,
        found: &[[EdgeId; 2]],
        end: impl Fn(&Self, &[EdgeId; 2]) -> NodeId,
        reason: impl Fn([EdgeId; 2], [EdgeId; 2]) -> Reason,
    ) {
        let Some(first) = found.first() else { return };
        for pair in &found[1..] {
            let (a, b) = (end(self, first), end(self, pair));
            self.request(a, b, reason(*first, *pair));
        }
    }

    fn close(&mut self) {
        loop {
            while let Some((a, b, reason)) = self.pending.pop_front() {
                self.merge(a, b, reason);
            }
            for n in 0..self.parent.len() {
                if self.parent[n] == n {
                    self.scan(n);
                }
            }
            if self.pending.is_empty() {
                break;
            }
        }
    }

    // Explanations. Every chain below turns `rep[a] ++ S` into `rep[b] ++ S`
    // for any suffix S, since moves only touch the leading part.

    fn len(&self, n: NodeId) -> usize {
        self.rep[n].len()
    }

    /// `rep[from] + α` to `rep[to]`.
    fn head_out(&self, e: EdgeId) -> Vec<Move> {
        let r = self.edges[e];
        if r.forward {
            Vec::new()
        } else {
            vec![Move::Cancel {
                at: self.len(r.to),
                step: Step::inverse(r.arrow),
            }]
        }
    }

    /// `rep[to] + α⁻¹` to `rep[from]`.
    fn head_in(&self, e: EdgeId) -> Vec<Move> {
        let r = self.edges[e];
        if r.forward {
            vec![Move::Cancel {
                at: self.len(r.from),
                step: Step::forward(r.arrow),
            }]
        } else {
            Vec::new()
        }
    }

    fn proof_chain(&self, id: usize) -> Rc<Vec<Move>> {
        if let Some(c) = self.chains.borrow().get(&id) {
            return Rc::clone(c);
        }
        let p = self.proofs[id];
        let ed = |e: EdgeId| self.edges[e];
        let mut m = Vec::new();
        match p.reason {
            Reason::FoldOut(e1, e2) => {
                m.extend(invert(&self.head_out(e1)));
                m.extend(self.explain(ed(e1).from, ed(e2).from));
                m.extend(self.head_out(e2));
            }
            Reason::FoldIn(e1, e2) => {
                m.extend(invert(&self.head_in(e1)));
                m.extend(self.explain(ed(e1).to, ed(e2).to));
                m.extend(self.head_in(e2));
            }
            Reason::MeshOut([e1, e2], [f1, f2]) => {
                m.extend(invert(&self.head_out(e2)));
                m.extend(self.explain(ed(e2).from, ed(e1).to));
                m.extend(invert(&self.head_out(e1)));
                m.extend(self.explain(ed(e1).from, ed(f1).from));
                m.push(Move::MeshSwap {
                    at: self.len(ed(f1).from),
                    from: [Step::forward(ed(e1).arrow), Step::forward(ed(e2).arrow)],
                    to: [Step::forward(ed(f1).arrow), Step::forward(ed(f2).arrow)],
                });
                m.extend(self.head_out(f1));
                m.extend(self.explain(ed(f1).to, ed(f2).from));
                m.extend(self.head_out(f2));
            }
            Reason::MeshIn([e1, e2], [f1, f2]) => {
                m.extend(invert(&self.head_in(e2)));
                m.extend(self.explain(ed(e2).to, ed(e1).from));
                m.extend(invert(&self.head_in(e1)));
                m.extend(self.explain(ed(e1).to, ed(f1).to));
                m.push(Move::MeshSwap {
                    at: self.len(ed(f1).to),
                    from: [Step::inverse(ed(e1).arrow), Step::inverse(ed(e2).arrow)],
                    to: [Step::inverse(ed(f1).arrow), Step::inverse(ed(f2).arrow)],
                });
                m.extend(self.head_in(f1));
                m.extend(self.explain(ed(f1).from, ed(f2).to));
                m.extend(self.head_in(f2));
            }
            Reason::ParallelOut(e1, e2) => {
                m.extend(invert(&self.head_out(e1)));
                m.extend(self.explain(ed(e1).from, ed(e2).from));
                m.push(Move::ParallelSwap {
                    at: self.len(ed(e2).from),
                    from: Step::forward(ed(e1).arrow),
                    to: Step::forward(ed(e2).arrow),
                });
                m.extend(self.head_out(e2));
            }
            Reason::ParallelIn(e1, e2) => {
                m.extend(invert(&self.head_in(e1)));
                m.extend(self.explain(ed(e1).to, ed(e2).to));
                m.push(Move::ParallelSwap {
                    at: self.len(ed(e2).to),
                    from: Step::inverse(ed(e1).arrow),
                    to: Step::inverse(ed(e2).arrow),
                });
                m.extend(self.head_in(e2));
            }
        }
        let m = Rc::new(m);
        self.chains.borrow_mut().insert(id, Rc::clone(&m));
        m
    }

    fn proof_ancestors(&self, mut n: NodeId) -> Vec<(NodeId, Option<usize>)> {
        let mut out = Vec::new();
        loop {
            match self.proof_parent[n] {
                Some((p, id)) => {
                    out.push((n, Some(id)));
                    n = p;
                }
                None => {
                    out.push((n, None));
                    return out;
                }
            }
        }
    }

    /// Moves from `rep[a]` to `rep[b]`; the nodes must share a class.
    fn explain(&self, a: NodeId, b: NodeId) -> Vec<Move> {
        if a == b {
            return Vec::new();
        }
        let up_a = self.proof_ancestors(a);
        let up_b = self.proof_ancestors(b);
        let on_b: HashMap<NodeId, usize> = up_b.iter().enumerate().map(|(i, &(n, _))| (n, i)).collect();
        let (ia, ib) = up_a
            .iter()
            .enumerate()
            .find_map(|(i, (n, _))| on_b.get(n).map(|&j| (i, j)))
            .expect("nodes share a proof tree");
        let mut moves = Vec::new();
        for &(n, id) in &up_a[..ia] {
            let id = id.expect("non-root proof node");
            let c = self.proof_chain(id);
            if self.proofs[id].a == n {
                moves.extend(c.iter().cloned());
            } else {
                moves.extend(invert(&c));
            }
        }
        for &(n, id) in up_b[..ib].iter().rev() {
            let id = id.expect("non-root proof node");
            let c = self.proof_chain(id);
            if self.proofs[id].b == n {
                moves.extend(c.iter().cloned());
            } else {
                moves.extend(invert(&c));
            }
        }
        moves
    }

    /// Follows a walk from the base class; returns the node whose
    /// representative the walk was rewritten into, with the moves.
    fn trace(&self, w: &Walk) -> Option<(NodeId, Vec<Move>)> {
        let mut n = self.base_node();
        let mut moves = self.explain(0, n);
        for s in &w.steps {
            let r = self.root(n);
            match s.dir {
                Direction::Forward => {
                    let e = *self.out[r].get(&s.arrow)?;
                    moves.extend(self.explain(n, self.edges[e].from));
                    moves.extend(self.head_out(e));
                    n = self.edges[e].to;
                }
                Direction::Inverse => {
                    let e = *self.inc[r].get(&s.arrow)?;
                    moves.extend(self.explain(n, self.edges[e].to));
                    moves.extend(self.head_in(e));
                    n = self.edges[e].from;
                }
            }
        }
        Some((n, moves))
    }

    /// Yes with a witness when both walks land in one class.
    pub(crate) fn compare(&self, w1: &Walk, w2: &Walk) -> HomotopyAnswer {
        let (Some((n1, m1)), Some((n2, m2))) = (self.trace(w1), self.trace(w2)) else {
            return HomotopyAnswer::NoWithinBound;
        };
        if self.root(n1) != self.root(n2) {
            return HomotopyAnswer::NoWithinBound;
        }
        let mut moves = m1;
        moves.extend(self.explain(n1, n2));
        moves.extend(invert(&m2));
        HomotopyAnswer::Yes(Witness {
            from: w1.clone(),
            to: w2.clone(),
            moves,
        })
    }
}

fn invert(moves: &[Move]) -> Vec<Move> {
    moves.iter().rev().map(Move::inverse).collect()
}

/// Decides `w1 ∼ w2` (or `∼′`) by closure over walks of length at most `bound`.
pub fn walks_homotopic(
    q: &TranslationQuiver,
    w1: &Walk,
    w2: &Walk,
    kind: HomotopyKind,
    bound: usize,
) -> Result<HomotopyAnswer, HomotopyError> {
    if w1.start != w2.start || w1.end(q) != w2.end(q) {
        return Err(HomotopyError::EndpointMismatch);
    }
    let len = w1.len().max(w2.len());
    if bound < len {
        return Err(HomotopyError::BoundTooSmall { bound, len });
    }
    Ok(Enumeration::run(q, w1.start, kind, bound).compare(w1, w2))
}
