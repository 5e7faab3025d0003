use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use thiserror::Error;

use super::homotopy::{Enumeration, HomotopyKind, NodeId};
use crate::qcore::text::parse_quiver_with;
use crate::qcore::{
    emit_quiver, raw_mesh, validate, ArrowIndex, Collapse, IssueKind, ParseError, Path,
    QuiverBuilder, Step, TranslationQuiver, ValidationReport, VertexFlags, VertexIndex, Walk,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("base quiver is not connected")]
    Disconnected,
    #[error("lift must start over {expected}, found a vertex over {found}")]
    StartMismatch { expected: String, found: String },
    #[error("lift leaves the ball at {at} (step {step})")]
    OutOfWindow { at: String, step: usize },
}

/// A finite ball of the universal or generic covering around a basepoint.
///
/// Vertex ids are the lexicographically least shortest walks from the base
/// vertex; arrow ids are `<base arrow>@<n>` with n the BFS rank of the
/// source. A vertex is frontier when it lies at distance `radius`, sits over
/// a frontier vertex, or its mesh is not complete inside the ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringBall {
    pub delta: TranslationQuiver,
    pub basepoint: VertexIndex,
    pub radius: usize,
    pub slack: usize,
    pub kind: HomotopyKind,
    /// Indexed by delta vertex.
    pub pi_vertices: Vec<VertexIndex>,
    /// Indexed by delta arrow.
    pub pi_arrows: Vec<ArrowIndex>,
    /// Same ball when the slack grows by two.
    pub stable: bool,
}

impl CoveringBall {
    pub fn pi(&self, v: VertexIndex) -> VertexIndex {
        self.pi_vertices[v.ix()]
    }

    pub fn pi_arrow(&self, a: ArrowIndex) -> ArrowIndex {
        self.pi_arrows[a.ix()]
    }

    /// Delta vertices over `y`, in index order.
    pub fn fiber(&self, y: VertexIndex) -> Vec<VertexIndex> {
        self.delta.vertex_indices().filter(|&v| self.pi(v) == y).collect()
    }

    /// The ball with parallel arrows merged, mapped into the collapsed base.
    pub fn collapse(&self, base: &Collapse) -> CoveringBall {
        let c = crate::qcore::collapse(&self.delta);
        let pi_arrows = c
            .quiver
            .arrow_indices()
            .map(|a| {
                let orig = self
                    .delta
                    .find_arrow(&c.quiver.arrow_id(a).0)
                    .expect("collapsed arrows keep an original id");
                base.class_of[self.pi_arrow(orig).ix()]
            })
            .collect();
        CoveringBall {
            basepoint: c
                .quiver
                .find_vertex(&self.delta.vertex_id(self.basepoint).0)
                .expect("vertices survive collapse"),
            delta: c.quiver,
            radius: self.radius,
            slack: self.slack,
            kind: self.kind,
            pi_vertices: self.pi_vertices.clone(),
            pi_arrows,
            stable: self.stable,
        }
    }
}

fn is_connected(q: &TranslationQuiver) -> bool {
    if q.vertex_count() == 0 {
        return true;
    }
    let mut seen = vec![false; q.vertex_count()];
    let mut queue = VecDeque::from([VertexIndex(0)]);
    seen[0] = true;
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        let nbrs = q
            .arrows_from(v)
            .iter()
            .map(|&a| q.target(a))
            .chain(q.arrows_into(v).iter().map(|&a| q.source(a)));
        for w in nbrs {
            if !seen[w.ix()] {
                seen[w.ix()] = true;
                count += 1;
                queue.push_back(w);
            }
        }
    }
    count == q.vertex_count()
}

/// Builds the radius-`radius` ball of the covering of `q` at `base`, using
/// the closure over walks of length `radius + slack`.
pub fn build_covering_ball(
    q: &TranslationQuiver,
    base: VertexIndex,
    radius: usize,
    kind: HomotopyKind,
    slack: usize,
) -> Result<CoveringBall, CoverError> {
    if !is_connected(q) {
        return Err(CoverError::Disconnected);
    }
    let first = ball_from(&Enumeration::run(q, base, kind, radius + slack), radius, kind, slack);
    let second = ball_from(&Enumeration::run(q, base, kind, radius + slack + 2), radius, kind, slack);
    let stable = first == second;
    Ok(CoveringBall { stable, ..first })
}

/// Default slack: twice the radius.
pub fn default_slack(radius: usize) -> usize {
    2 * radius
}

fn ball_from(e: &Enumeration<'_>, radius: usize, kind: HomotopyKind, slack: usize) -> CoveringBall {
    let q = e.quiver();
    let base = e.base_node();

    // level-order BFS with sorted steps yields least shortest walks
    let mut canon: HashMap<NodeId, Vec<Step>> = HashMap::from([(base, Vec::new())]);
    let mut order = vec![base];
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        if canon[&u].len() == radius {
            continue;
        }
        let v = e.vertex(u);
        let mut steps: Vec<Step> = q
            .arrows_from(v)
            .iter()
            .map(|&a| Step::forward(a))
            .chain(q.arrows_into(v).iter().map(|&a| Step::inverse(a)))
            .collect();
        steps.sort();
        for s in steps {
            if let Some(t) = e.step(u, s) {
                if !canon.contains_key(&t) {
                    let mut w = canon[&u].clone();
                    w.push(s);
                    canon.insert(t, w);
                    order.push(t);
                }
            }
        }
    }
    let rank: HashMap<NodeId, usize> = order.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let name = |n: NodeId| {
        Walk {
            start: e.base_vertex(),
            steps: canon[&n].clone(),
        }
        .display(q)
        .to_string()
    };

    let mut tau: BTreeMap<NodeId, NodeId> = BTreeMap::new();
    for &u in &order {
        let z = e.vertex(u);
        if q.is_projective(z) {
            continue;
        }
        let Ok(mesh) = raw_mesh(q, z) else { continue };
        let t = mesh.spokes.iter().find_map(|s| {
            let y = e.step(u, Step::inverse(s.arrow))?;
            e.step(y, Step::inverse(s.partner))
        });
        if let Some(t) = t.filter(|t| rank.contains_key(t)) {
            tau.insert(u, t);
        }
    }
    let tau_image: BTreeSet<NodeId> = tau.values().copied().collect();

    let mut b = QuiverBuilder::new(format!("{}~{}-r{}", q.name(), kind.name(), radius));
    for &u in &order {
        let z = e.vertex(u);
        let projective = q.is_projective(z);
        let injective = q.is_injective(z);
        let frontier = canon[&u].len() == radius
            || q.is_frontier(z)
            || (!projective && !tau.contains_key(&u))
            || (!injective && !tau_image.contains(&u));
        b.vertex(
            name(u),
            VertexFlags {
                projective,
                injective,
                frontier,
            },
        );
    }
    for (&u, &t) in &tau {
        b.tau(name(u), name(t));
    }
    let arrow_name = |u: NodeId, a: ArrowIndex| format!("{}@{}", q.arrow_id(a), rank[&u]);
    let mut arrow_pi: Vec<(String, ArrowIndex)> = Vec::new();
    for &u in &order {
        for (a, t) in e.out_edges(u) {
            if !rank.contains_key(&t) {
                continue;
            }
            b.arrow(arrow_name(u, a), name(u), name(t));
            arrow_pi.push((arrow_name(u, a), a));
            // σ of (u --a--> t) is (τt --σa--> u) when present
            if let (Some(&tt), Some(sa)) = (tau.get(&t), q.sigma(a)) {
                if e.step(tt, Step::forward(sa)) == Some(u) {
                    b.sigma(arrow_name(u, a), arrow_name(tt, sa));
                }
            }
        }
    }
    let delta = b.build().expect("ball ids are unique");
    let mut pi_vertices = vec![VertexIndex(0); delta.vertex_count()];
    for &u in &order {
        pi_vertices[delta.find_vertex(&name(u)).expect("vertex").ix()] = e.vertex(u);
    }
    let mut pi_arrows = vec![ArrowIndex(0); delta.arrow_count()];
    for (id, a) in arrow_pi {
        pi_arrows[delta.find_arrow(&id).expect("arrow").ix()] = a;
    }
    CoveringBall {
        basepoint: delta.find_vertex(&name(base)).expect("basepoint"),
        delta,
        radius,
        slack,
        kind,
        pi_vertices,
        pi_arrows,
        stable: true,
    }
}

/// Checks the covering axioms at every non-frontier vertex of the ball,
/// plus the translation quiver axioms of the ball itself.
pub fn check_covering(ball: &CoveringBall, q: &TranslationQuiver) -> ValidationReport {
    let d = &ball.delta;
    let mut r = validate(d);
    let vid = |v: VertexIndex| d.vertex_id(v).0.clone();
    for a in d.arrow_indices() {
        let pa = ball.pi_arrow(a);
        if q.source(pa) != ball.pi(d.source(a)) || q.target(pa) != ball.pi(d.target(a)) {
            r.push(
                false,
                IssueKind::QuiverMap,
                d.arrow_id(a).0.clone(),
                format!("image {} does not join the images of the ends", q.arrow_id(pa)),
            );
        }
    }
    for x in d.vertex_indices() {
        if d.is_frontier(x) {
            continue;
        }
        let px = ball.pi(x);
        if d.is_projective(x) != q.is_projective(px) || d.is_injective(x) != q.is_injective(px) {
            r.push(
                false,
                IssueKind::FlagMismatch,
                vid(x),
                format!("flags differ from {}", q.vertex_id(px)),
            );
        }
        match (d.tau(x), q.tau(px)) {
            (Some(t), Some(pt)) if ball.pi(t) == pt => {}
            (None, None) => {}
            _ => r.push(
                false,
                IssueKind::TauNotCommuting,
                vid(x),
                format!("translate does not map onto that of {}", q.vertex_id(px)),
            ),
        }
        let mut outs: Vec<ArrowIndex> = d.arrows_from(x).iter().map(|&a| ball.pi_arrow(a)).collect();
        let mut ins: Vec<ArrowIndex> = d.arrows_into(x).iter().map(|&a| ball.pi_arrow(a)).collect();
        outs.sort();
        ins.sort();
        if outs != q.arrows_from(px) || ins != q.arrows_into(px) {
            r.push(
                false,
                IssueKind::ArrowBijection,
                vid(x),
                format!("arrows do not biject onto those at {}", q.vertex_id(px)),
            );
        }
    }
    r.finish()
}

/// The unique lift of `path` starting at the delta vertex `start`.
pub fn lift_path(
    ball: &CoveringBall,
    q: &TranslationQuiver,
    path: &Path,
    start: VertexIndex,
) -> Result<Path, CoverError> {
    let d = &ball.delta;
    if ball.pi(start) != path.start {
        return Err(CoverError::StartMismatch {
            expected: q.vertex_id(path.start).0.clone(),
            found: q.vertex_id(ball.pi(start)).0.clone(),
        });
    }
    let mut at = start;
    let mut arrows = Vec::with_capacity(path.len());
    for (step, &a) in path.arrows.iter().enumerate() {
        let next = d
            .arrows_from(at)
            .iter()
            .copied()
            .find(|&b| ball.pi_arrow(b) == a)
            .ok_or_else(|| CoverError::OutOfWindow {
                at: d.vertex_id(at).0.clone(),
                step,
            })?;
        arrows.push(next);
        at = d.target(next);
    }
    Ok(Path { start, arrows })
}

struct Part<'a> {
    ball: &'a CoveringBall,
    members: Vec<VertexIndex>,
    inside: Vec<bool>,
}

impl<'a> Part<'a> {
    fn new(ball: &'a CoveringBall) -> Self {
        let d = &ball.delta;
        let inside: Vec<bool> = d
            .vertex_indices()
            .map(|v| !d.is_frontier(v) || v == ball.basepoint)
            .collect();
        let members = d.vertex_indices().filter(|v| inside[v.ix()]).collect();
        Part {
            ball,
            members,
            inside,
        }
    }

    fn mult(&self, x: VertexIndex, y: VertexIndex) -> usize {
        let d = &self.ball.delta;
        d.arrows_from(x).iter().filter(|&&a| d.target(a) == y).count()
    }

    fn tau(&self, x: VertexIndex) -> Option<VertexIndex> {
        self.ball.delta.tau(x).filter(|t| self.inside[t.ix()])
    }

    fn neighbours(&self, x: VertexIndex) -> Vec<VertexIndex> {
        let d = &self.ball.delta;
        let mut n: Vec<VertexIndex> = d
            .arrows_from(x)
            .iter()
            .map(|&a| d.target(a))
            .chain(d.arrows_into(x).iter().map(|&a| d.source(a)))
            .filter(|v| self.inside[v.ix()])
            .collect();
        n.sort();
        n.dedup();
        n
    }

    fn signature(&self, x: VertexIndex) -> (VertexIndex, VertexFlags, usize, usize, bool) {
        let d = &self.ball.delta;
        let outs = self.neighbours(x).iter().map(|&y| self.mult(x, y)).sum();
        let ins = self.neighbours(x).iter().map(|&y| self.mult(y, x)).sum();
        (self.ball.pi(x), d.flags(x), outs, ins, self.tau(x).is_some())
    }
}

/// Whether the non-frontier parts (plus basepoints) of two balls over the
/// same base are isomorphic by a basepoint- and projection-preserving map.
pub fn ball_isomorphic(b1: &CoveringBall, b2: &CoveringBall) -> bool {
    let (p1, p2) = (Part::new(b1), Part::new(b2));
    if p1.members.len() != p2.members.len() {
        return false;
    }
    if p1.signature(b1.basepoint) != p2.signature(b2.basepoint) {
        return false;
    }
    // BFS order from the basepoint, then any stragglers
    let mut order = vec![b1.basepoint];
    let mut parent: Vec<Option<VertexIndex>> = vec![None];
    let mut seen: BTreeSet<VertexIndex> = BTreeSet::from([b1.basepoint]);
    let mut head = 0;
    loop {
        while head < order.len() {
            let x = order[head];
            head += 1;
            for y in p1.neighbours(x) {
                if seen.insert(y) {
                    order.push(y);
                    parent.push(Some(x));
                }
            }
        }
        match p1.members.iter().find(|v| !seen.contains(v)) {
            Some(&v) => {
                seen.insert(v);
                order.push(v);
                parent.push(None);
            }
            None => break,
        }
    }
    let mut map: Vec<Option<VertexIndex>> = vec![None; b1.delta.vertex_count()];
    let mut used = vec![false; b2.delta.vertex_count()];
    map[b1.basepoint.ix()] = Some(b2.basepoint);
    used[b2.basepoint.ix()] = true;
    extend_iso(&p1, &p2, &order, &parent, 1, &mut map, &mut used)
}

fn consistent(
    p1: &Part<'_>,
    p2: &Part<'_>,
    x: VertexIndex,
    fx: VertexIndex,
    map: &[Option<VertexIndex>],
) -> bool {
    if p1.signature(x) != p2.signature(fx) {
        return false;
    }
    for y in p1.members.iter().copied() {
        let Some(fy) = map[y.ix()] else { continue };
        if p1.mult(x, y) != p2.mult(fx, fy) || p1.mult(y, x) != p2.mult(fy, fx) {
            return false;
        }
        if (p1.tau(x) == Some(y)) != (p2.tau(fx) == Some(fy))
            || (p1.tau(y) == Some(x)) != (p2.tau(fy) == Some(fx))
        {
            return false;
        }
    }
    true
}

fn extend_iso(
    p1: &Part<'_>,
    p2: &Part<'_>,
    order: &[VertexIndex],
    parent: &[Option<VertexIndex>],
    k: usize,
    map: &mut Vec<Option<VertexIndex>>,
    used: &mut Vec<bool>,
) -> bool {
    if k == order.len() {
        return true;
    }
    let x = order[k];
    let candidates = match parent[k] {
        Some(p) => p2.neighbours(map[p.ix()].expect("parent mapped first")),
        None => p2.members.clone(),
    };
    for fx in candidates {
        if used[fx.ix()] || !consistent(p1, p2, x, fx, map) {
            continue;
        }
        map[x.ix()] = Some(fx);
        used[fx.ix()] = true;
        if extend_iso(p1, p2, order, parent, k + 1, map, used) {
            return true;
        }
        map[x.ix()] = None;
        used[fx.ix()] = false;
    }
    false
}

/// Quiver text of the ball followed by the projection and ball parameters.
pub fn emit_covering(ball: &CoveringBall, q: &TranslationQuiver) -> String {
    let d = &ball.delta;
    let mut s = emit_quiver(d);
    let _ = writeln!(
        s,
        "ball {} radius {} slack {} kind {} stable {}",
        d.vertex_id(ball.basepoint),
        ball.radius,
        ball.slack,
        ball.kind.name(),
        ball.stable
    );
    for v in d.vertex_indices() {
        let _ = writeln!(s, "pi {} -> {}", d.vertex_id(v), q.vertex_id(ball.pi(v)));
    }
    for a in d.arrow_indices() {
        let _ = writeln!(s, "pi-arrow {} -> {}", d.arrow_id(a), q.arrow_id(ball.pi_arrow(a)));
    }
    s
}

/// Parses a covering file against its base quiver.
pub fn parse_covering(text: &str, q: &TranslationQuiver) -> Result<CoveringBall, ParseError> {
    let mut header: Option<(usize, Vec<String>)> = None;
    let mut pis: Vec<(usize, String, String)> = Vec::new();
    let mut pi_arrows: Vec<(usize, String, String)> = Vec::new();
    let delta = parse_quiver_with(text, |line, words| {
        let owned = |i: usize| words[i].to_owned();
        match words[0] {
            "ball" => {
                if words.len() != 10
                    || words[2] != "radius"
                    || words[4] != "slack"
                    || words[6] != "kind"
                    || words[8] != "stable"
                {
                    return Err(ParseError::new(
                        line,
                        "expected `ball <v> radius <r> slack <s> kind <k> stable <b>`",
                    ));
                }
                if header.is_some() {
                    return Err(ParseError::new(line, "ball line given twice"));
                }
                header = Some((line, words.iter().map(|w| w.to_string()).collect()));
            }
            "pi" | "pi-arrow" => {
                if words.len() != 4 || words[2] != "->" {
                    return Err(ParseError::new(line, format!("expected `{} <x> -> <y>`", words[0])));
                }
                let list = if words[0] == "pi" { &mut pis } else { &mut pi_arrows };
                list.push((line, owned(1), owned(3)));
            }
            other => return Err(ParseError::new(line, format!("unknown keyword {other}"))),
        }
        Ok(())
    })?;
    let (hline, h) = header.ok_or_else(|| ParseError::new(0, "missing `ball` line"))?;
    let num = |w: &str| {
        w.parse::<usize>()
            .map_err(|_| ParseError::new(hline, format!("expected a number, found {w}")))
    };
    let basepoint = delta
        .find_vertex(&h[1])
        .ok_or_else(|| ParseError::new(hline, format!("unknown vertex {}", h[1])))?;
    let kind = HomotopyKind::parse(&h[7])
        .ok_or_else(|| ParseError::new(hline, format!("unknown kind {}", h[7])))?;
    let stable = match h[9].as_str() {
        "true" => true,
        "false" => false,
        w => return Err(ParseError::new(hline, format!("expected true or false, found {w}"))),
    };

    let mut pv = vec![None; delta.vertex_count()];
    for (line, x, y) in pis {
        let dx = delta
            .find_vertex(&x)
            .ok_or_else(|| ParseError::new(line, format!("unknown vertex {x}")))?;
        let by = q
            .find_vertex(&y)
            .ok_or_else(|| ParseError::new(line, format!("unknown base vertex {y}")))?;
        if pv[dx.ix()].replace(by).is_some() {
            return Err(ParseError::new(line, format!("pi given twice for {x}")));
        }
    }
    let mut pa = vec![None; delta.arrow_count()];
    for (line, x, y) in pi_arrows {
        let dx = delta
            .find_arrow(&x)
            .ok_or_else(|| ParseError::new(line, format!("unknown arrow {x}")))?;
        let by = q
            .find_arrow(&y)
            .ok_or_else(|| ParseError::new(line, format!("unknown base arrow {y}")))?;
        if pa[dx.ix()].replace(by).is_some() {
            return Err(ParseError::new(line, format!("pi-arrow given twice for {x}")));
        }
    }
    let pi_vertices = pv
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                ParseError::new(0, format!("no pi for {}", delta.vertex_id(VertexIndex(i as u32))))
            })
        })
        .collect::<Result<_, _>>()?;
    let pi_arrows = pa
        .into_iter()
        .enumerate()
        .map(|(i, a)| {
            a.ok_or_else(|| {
                ParseError::new(0, format!("no pi-arrow for {}", delta.arrow_id(ArrowIndex(i as u32))))
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(CoveringBall {
        delta,
        basepoint,
        radius: num(&h[3])?,
        slack: num(&h[5])?,
        kind,
        pi_vertices,
        pi_arrows,
        stable,
    })
}
