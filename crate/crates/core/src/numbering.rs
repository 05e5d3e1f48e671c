//! Alexander numberings, oriented cut points and cut systems.
//!
//! Numbers live on edge segments: an edge carrying `k` cut points is split
//! into `k + 1` segments. Constraints (pinned chirality, `X` the north-east
//! strand of a classical crossing and `Y` the other one):
//!
//! * classical crossing: `X_in = i + 1, X_out = i, Y_in = i, Y_out = i + 1`;
//! * virtual crossing: both strands keep their number;
//! * cut point: crossing it forward changes the number by its sign.
//!
//! All of these are difference constraints, so a numbering exists exactly
//! when every cycle of the constraint graph has zero offset (mod `m`).

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{CrossingId, Diagram, EdgeId, Port};

/// A single oriented cut point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CutPoint {
    pub edge: EdgeId,
    /// Position among the cut points of `edge`, in edge direction.
    pub position: usize,
    /// `+1` raises the number when the edge is traversed forward.
    pub sign: i8,
}

/// Cut points keyed by edge, ordered along each edge.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CutSystem {
    cuts: BTreeMap<EdgeId, Vec<i8>>,
}

impl CutSystem {
    pub fn empty() -> Self {
        CutSystem::default()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.values().all(Vec::is_empty)
    }

    /// Total number of cut points.
    pub fn len(&self) -> usize {
        self.cuts.values().map(Vec::len).sum()
    }

    pub fn on_edge(&self, e: EdgeId) -> &[i8] {
        self.cuts.get(&e).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Algebraic sum of the cut signs on `e`.
    pub fn jump(&self, e: EdgeId) -> i64 {
        self.on_edge(e).iter().map(|&s| s as i64).sum()
    }

    /// Appends a cut point at the end of `e`.
    pub fn push_back(&mut self, e: EdgeId, sign: i8) {
        assert!(sign == 1 || sign == -1, "cut sign must be ±1");
        self.cuts.entry(e).or_default().push(sign);
    }

    /// Inserts a cut point at the start of `e`.
    pub fn push_front(&mut self, e: EdgeId, sign: i8) {
        assert!(sign == 1 || sign == -1, "cut sign must be ±1");
        self.cuts.entry(e).or_default().insert(0, sign);
    }

    fn pop_back(&mut self, e: EdgeId) -> Option<i8> {
        let v = self.cuts.get_mut(&e)?;
        let s = v.pop();
        if v.is_empty() {
            self.cuts.remove(&e);
        }
        s
    }

    pub fn points(&self) -> impl Iterator<Item = CutPoint> + '_ {
        self.cuts
            .iter()
            .flat_map(|(&edge, v)| v.iter().enumerate().map(move |(position, &sign)| CutPoint { edge, position, sign }))
    }
}

impl Serialize for CutSystem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.points())
    }
}

/// A segment of an edge between consecutive cut points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Segment {
    pub edge: EdgeId,
    pub index: usize,
}

/// A numbering: one value per segment, reduced mod `modulus` when nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Numbering {
    pub modulus: u32,
    pub values: BTreeMap<EdgeId, Vec<i64>>,
}

impl Numbering {
    pub fn value(&self, s: Segment) -> i64 {
        self.values[&s.edge][s.index]
    }

    /// Value at the head (last segment) of `e`.
    pub fn at_head(&self, e: EdgeId) -> i64 {
        *self.values[&e].last().expect("segment")
    }

    /// Value at the tail (first segment) of `e`.
    pub fn at_tail(&self, e: EdgeId) -> i64 {
        self.values[&e][0]
    }
}

/// A constraint cycle whose accumulated offset is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub cycle: Vec<Segment>,
    pub offset: i64,
}

/// One difference constraint `value(to) - value(from) = offset`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub from: Segment,
    pub to: Segment,
    pub offset: i64,
}

/// The full constraint list of a diagram with cut system.
pub fn constraints(d: &Diagram, cuts: &CutSystem) -> Vec<Constraint> {
    let seg = |edge: EdgeId, index: usize| Segment { edge, index };
    let last = |e: EdgeId| seg(e, cuts.on_edge(e).len());
    let first = |e: EdgeId| seg(e, 0);
    let mut out = Vec::new();
    for e in d.edge_ids() {
        for (k, &s) in cuts.on_edge(e).iter().enumerate() {
            out.push(Constraint { from: seg(e, k), to: seg(e, k + 1), offset: s as i64 });
        }
    }
    for c in d.crossings() {
        match c.northeast_strand() {
            None => {
                for k in 0..2 {
                    out.push(Constraint { from: last(c.ports[2 * k]), to: first(c.ports[2 * k + 1]), offset: 0 });
                }
            }
            Some(x) => {
                let y = 1 - x;
                let x_in = last(c.ports[2 * x]);
                out.push(Constraint { from: x_in, to: first(c.ports[2 * x + 1]), offset: -1 });
                out.push(Constraint { from: x_in, to: last(c.ports[2 * y]), offset: -1 });
                out.push(Constraint { from: x_in, to: first(c.ports[2 * y + 1]), offset: 0 });
            }
        }
    }
    for &e in d.free_loops() {
        out.push(Constraint { from: last(e), to: first(e), offset: 0 });
    }
    out
}

fn congruent(a: i64, b: i64, modulus: u32) -> bool {
    if modulus == 0 {
        a == b
    } else {
        (a - b).rem_euclid(modulus as i64) == 0
    }
}

/// Solves the numbering system of `d` with `cuts` over `Z` (`modulus == 0`)
/// or `Z/m`. Each connected part of the constraint graph gets base value 0
/// at its first segment.
pub fn solve_numbering(d: &Diagram, cuts: &CutSystem, modulus: u32) -> std::result::Result<Numbering, Witness> {
    let cons = constraints(d, cuts);
    let mut index: BTreeMap<Segment, usize> = BTreeMap::new();
    for e in d.edge_ids() {
        for k in 0..=cuts.on_edge(e).len() {
            let n = index.len();
            index.insert(Segment { edge: e, index: k }, n);
        }
    }
    let nodes: Vec<Segment> = index.keys().copied().collect();
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); nodes.len()];
    for c in &cons {
        let (u, v) = (index[&c.from], index[&c.to]);
        adj[u].push((v, c.offset));
        adj[v].push((u, -c.offset));
    }

    let mut value: Vec<Option<i64>> = vec![None; nodes.len()];
    let mut parent: Vec<usize> = (0..nodes.len()).collect();
    let mut depth = vec![0usize; nodes.len()];
    for root in 0..nodes.len() {
        if value[root].is_some() {
            continue;
        }
        value[root] = Some(0);
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            let vu = value[u].expect("visited");
            for &(v, w) in &adj[u] {
                match value[v] {
                    None => {
                        value[v] = Some(vu + w);
                        parent[v] = u;
                        depth[v] = depth[u] + 1;
                        stack.push(v);
                    }
                    Some(vv) if !congruent(vu + w, vv, modulus) => {
                        return Err(witness(&nodes, &parent, &depth, u, v, vu + w - vv));
                    }
                    Some(_) => {}
                }
            }
        }
    }

    let mut values: BTreeMap<EdgeId, Vec<i64>> = BTreeMap::new();
    for (k, s) in nodes.iter().enumerate() {
        let mut v = value[k].expect("all visited");
        if modulus > 0 {
            v = v.rem_euclid(modulus as i64);
        }
        values.entry(s.edge).or_default().push(v);
    }
    Ok(Numbering { modulus, values })
}

fn witness(nodes: &[Segment], parent: &[usize], depth: &[usize], u: usize, v: usize, offset: i64) -> Witness {
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while depth[a] > depth[b] {
        a = parent[a];
        left.push(a);
    }
    while depth[b] > depth[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    right.pop();
    left.extend(right.into_iter().rev());
    Witness { cycle: left.into_iter().map(|k| nodes[k]).collect(), offset }
}

pub fn is_valid_cut_system(d: &Diagram, cuts: &CutSystem) -> bool {
    solve_numbering(d, cuts, 0).is_ok()
}

/// Admits an integer Alexander numbering without cut points.
pub fn is_almost_classical_diagram(d: &Diagram) -> bool {
    solve_numbering(d, &CutSystem::empty(), 0).is_ok()
}

/// Admits an Alexander numbering in `Z/2`.
pub fn is_checkerboard_colorable(d: &Diagram) -> bool {
    solve_numbering(d, &CutSystem::empty(), 2).is_ok()
}

/// Value at `port` of a classical crossing with base `i`.
fn port_value(d: &Diagram, port: Port, base: i64) -> i64 {
    let c = d.crossing(port.crossing).expect("crossing");
    let x = c.northeast_strand().expect("classical");
    let on_x = port.slot / 2 == x;
    match (on_x, port.is_in()) {
        (true, true) | (false, false) => base + 1,
        _ => base,
    }
}

/// Deterministic cut system: propagate crossing base values along a spanning
/// forest of semi-arcs; every remaining semi-arc with a mismatch `j` gets
/// `|j|` cut points of sign `sgn(j)` on its first edge. Empty exactly for
/// almost classical diagrams.
pub fn canonical_cut_system(d: &Diagram) -> CutSystem {
    let arcs: Vec<_> = d.semi_arcs().into_iter().filter_map(|a| a.ends.map(|e| (a.edges[0], e))).collect();
    let mut incident: BTreeMap<CrossingId, Vec<usize>> = BTreeMap::new();
    for (k, &(_, (s, t))) in arcs.iter().enumerate() {
        incident.entry(s.crossing).or_default().push(k);
        incident.entry(t.crossing).or_default().push(k);
    }
    let mut base: BTreeMap<CrossingId, i64> = BTreeMap::new();
    let mut tree = vec![false; arcs.len()];
    for c in d.classical() {
        if base.contains_key(&c.id) {
            continue;
        }
        base.insert(c.id, 0);
        let mut stack = vec![c.id];
        while let Some(x) = stack.pop() {
            for &k in incident.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                let (_, (s, t)) = arcs[k];
                let (known, other) = if s.crossing == x { (s, t) } else { (t, s) };
                if base.contains_key(&other.crossing) {
                    continue;
                }
                // choose the other base so the arc carries no jump
                let target = port_value(d, known, base[&x]);
                let b0 = port_value(d, other, 0);
                base.insert(other.crossing, target - b0);
                tree[k] = true;
                stack.push(other.crossing);
            }
        }
    }
    let mut cuts = CutSystem::empty();
    for (k, &(first_edge, (s, t))) in arcs.iter().enumerate() {
        if tree[k] {
            continue;
        }
        let jump = port_value(d, t, base[&t.crossing]) - port_value(d, s, base[&s.crossing]);
        let sign = if jump > 0 { 1 } else { -1 };
        for _ in 0..jump.abs() {
            cuts.push_back(first_edge, sign);
        }
    }
    cuts
}

/// Two cut points at the start of the out-edges of virtual crossing `v`,
/// with opposite signs; `None` when neither orientation yields a valid
/// system. For `D_v` of an almost classical `D_+` this is always valid.
pub fn cut_system_around_virtual(d: &Diagram, v: CrossingId) -> Result<Option<CutSystem>> {
    let c = d.crossing(v).ok_or(Error::NoSuchCrossing(v))?;
    if c.is_classical() {
        return Err(Error::ClassicalCrossing(v));
    }
    for s in [-1i8, 1] {
        let mut cuts = CutSystem::empty();
        cuts.push_front(c.ports[1], s);
        cuts.push_front(c.ports[3], -s);
        if is_valid_cut_system(d, &cuts) {
            return Ok(Some(cuts));
        }
    }
    Ok(None)
}

/// Appends a `(+1, -1)` pair at the end of `edge`.
pub fn insert_canceling_pair(d: &Diagram, cuts: &CutSystem, edge: EdgeId) -> Result<CutSystem> {
    if !d.edge_ids().contains(&edge) {
        return Err(Error::CutMove(format!("no edge {edge}")));
    }
    let mut out = cuts.clone();
    out.push_back(edge, 1);
    out.push_back(edge, -1);
    Ok(out)
}

/// Moves terminal cut points on the in-edges of `crossing` to the start of
/// its out-edges. At a classical crossing both in-edges must end in cut
/// points of the same sign; at a virtual crossing each strand moves its own
/// terminal cut point, and at least one must exist.
pub fn push_through_crossing(d: &Diagram, cuts: &CutSystem, crossing: CrossingId) -> Result<CutSystem> {
    let c = d.crossing(crossing).ok_or(Error::NoSuchCrossing(crossing))?;
    let mut out = cuts.clone();
    if c.is_classical() {
        let (o, u) = (cuts.on_edge(c.ports[0]).last(), cuts.on_edge(c.ports[2]).last());
        match (o, u) {
            (Some(&so), Some(&su)) if so == su => {
                out.pop_back(c.ports[0]);
                out.pop_back(c.ports[2]);
                out.push_front(c.ports[1], so);
                out.push_front(c.ports[3], so);
            }
            _ => {
                return Err(Error::CutMove(format!(
                    "crossing {crossing}: both incoming edges need terminal cut points of one orientation"
                )))
            }
        }
    } else {
        let mut moved = false;
        for k in 0..2 {
            if let Some(s) = out.pop_back(c.ports[2 * k]) {
                out.push_front(c.ports[2 * k + 1], s);
                moved = true;
            }
        }
        if !moved {
            return Err(Error::CutMove(format!("crossing {crossing}: no terminal cut point to push")));
        }
    }
    Ok(out)
}
