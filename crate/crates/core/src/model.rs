//! Oriented virtual link diagrams as abstract 4-valent graphs.
//!
//! Every crossing owns four ports `[in0, out0, in1, out1]`; strand `k` enters
//! at port `2k` and leaves at port `2k + 1`. For a classical crossing strand 0
//! is the over strand and strand 1 the under strand, so the port order is
//! `(o_in, o_out, u_in, u_out)`. Edges are identified by the label stored in
//! the two ports they join: the out-port where the edge starts and the in-port
//! where it ends. A component without crossings is a free loop carrying a
//! single edge label.
//!
//! Planarity is not modelled. Local geometry is pinned by the sign: at a
//! positive crossing the over strand heads north-east and the under strand
//! north-west, mirrored for negative crossings.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CrossingId(pub u32);

impl fmt::Display for CrossingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub u32);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CrossingKind {
    Classical(Sign),
    Virtual,
}

/// Port slots. Even slots are in-ports, odd slots out-ports.
pub const O_IN: usize = 0;
pub const O_OUT: usize = 1;
pub const U_IN: usize = 2;
pub const U_OUT: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub id: CrossingId,
    pub kind: CrossingKind,
    pub ports: [EdgeId; 4],
}

impl Crossing {
    pub fn classical(id: u32, sign: Sign, ports: [u32; 4]) -> Self {
        Crossing { id: CrossingId(id), kind: CrossingKind::Classical(sign), ports: ports.map(EdgeId) }
    }

    pub fn virtual_(id: u32, ports: [u32; 4]) -> Self {
        Crossing { id: CrossingId(id), kind: CrossingKind::Virtual, ports: ports.map(EdgeId) }
    }

    pub fn is_classical(&self) -> bool {
        matches!(self.kind, CrossingKind::Classical(_))
    }

    pub fn sign(&self) -> Option<Sign> {
        match self.kind {
            CrossingKind::Classical(s) => Some(s),
            CrossingKind::Virtual => None,
        }
    }

    /// The strand heading north-east in the pinned local picture: the over
    /// strand at a positive crossing, the under strand at a negative one.
    /// Returns 0 (over) or 1 (under); `None` for virtual crossings.
    pub fn northeast_strand(&self) -> Option<usize> {
        match self.kind {
            CrossingKind::Classical(Sign::Positive) => Some(0),
            CrossingKind::Classical(Sign::Negative) => Some(1),
            CrossingKind::Virtual => None,
        }
    }
}

/// An endpoint slot on a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Port {
    pub crossing: CrossingId,
    pub slot: usize,
}

impl Port {
    pub fn is_in(&self) -> bool {
        self.slot % 2 == 0
    }
}

/// A directed edge from an out-port to an in-port.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: Port,
    pub head: Port,
}

/// Maximal edge path between classical ports, or a closed loop without
/// classical crossings (`ends == None`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SemiArc {
    pub id: usize,
    pub edges: Vec<EdgeId>,
    /// `(start out-port, end in-port)` at classical crossings.
    pub ends: Option<(Port, Port)>,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    EmptyDiagram,
    DuplicateCrossingId(CrossingId),
    /// Edge label with an end that is not attached to any port.
    DanglingPort { edge: EdgeId },
    /// Edge label attached to more ports than one tail and one head.
    PortArity { edge: EdgeId, tails: usize, heads: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyDiagram => write!(f, "empty diagram"),
            Violation::DuplicateCrossingId(c) => write!(f, "duplicate crossing id {c}"),
            Violation::DanglingPort { edge } => write!(f, "dangling port: edge {edge}"),
            Violation::PortArity { edge, tails, heads } => {
                write!(f, "port arity: edge {edge} has {tails} tails and {heads} heads")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Diagram {
    crossings: Vec<Crossing>,
    free_loops: Vec<EdgeId>,
}

impl Diagram {
    /// Builds a diagram without checking it; see [`Diagram::validate`].
    pub fn new(mut crossings: Vec<Crossing>, free_loops: Vec<EdgeId>) -> Self {
        crossings.sort_by_key(|c| c.id);
        Diagram { crossings, free_loops }
    }

    /// Builds a diagram and rejects it if any invariant is violated.
    pub fn checked(crossings: Vec<Crossing>, free_loops: Vec<EdgeId>) -> Result<Self> {
        let d = Diagram::new(crossings, free_loops);
        d.ensure_valid()?;
        Ok(d)
    }

    /// The crossingless unknot.
    pub fn unknot() -> Self {
        Diagram::new(vec![], vec![EdgeId(1)])
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn free_loops(&self) -> &[EdgeId] {
        &self.free_loops
    }

    pub fn classical(&self) -> impl Iterator<Item = &Crossing> {
        self.crossings.iter().filter(|c| c.is_classical())
    }

    pub fn virtuals(&self) -> impl Iterator<Item = &Crossing> {
        self.crossings.iter().filter(|c| !c.is_classical())
    }

    pub fn classical_count(&self) -> usize {
        self.classical().count()
    }

    pub fn virtual_count(&self) -> usize {
        self.virtuals().count()
    }

    pub fn crossing(&self, id: CrossingId) -> Option<&Crossing> {
        self.crossings.iter().find(|c| c.id == id)
    }

    fn crossing_mut(&mut self, id: CrossingId) -> Option<&mut Crossing> {
        self.crossings.iter_mut().find(|c| c.id == id)
    }

    fn classical_crossing(&self, id: CrossingId) -> Result<&Crossing> {
        let c = self.crossing(id).ok_or(Error::NoSuchCrossing(id))?;
        if !c.is_classical() {
            return Err(Error::VirtualCrossing(id));
        }
        Ok(c)
    }

    /// All edge labels in ascending order.
    pub fn edge_ids(&self) -> BTreeSet<EdgeId> {
        self.crossings.iter().flat_map(|c| c.ports).chain(self.free_loops.iter().copied()).collect()
    }

    /// Edges attached to crossings, keyed by label. Only meaningful for valid
    /// diagrams; free loops are not included.
    pub fn edges(&self) -> BTreeMap<EdgeId, Edge> {
        let mut tails = HashMap::new();
        let mut heads = HashMap::new();
        for c in &self.crossings {
            for (slot, &e) in c.ports.iter().enumerate() {
                let port = Port { crossing: c.id, slot };
                if port.is_in() {
                    heads.insert(e, port);
                } else {
                    tails.insert(e, port);
                }
            }
        }
        tails
            .into_iter()
            .filter_map(|(id, tail)| heads.get(&id).map(|&head| (id, Edge { id, tail, head })))
            .collect()
    }

    /// Every invariant violation; an empty list means the diagram is valid.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = BTreeSet::new();
        if self.crossings.is_empty() && self.free_loops.is_empty() {
            out.insert(Violation::EmptyDiagram);
        }
        let mut seen = BTreeSet::new();
        for c in &self.crossings {
            if !seen.insert(c.id) {
                out.insert(Violation::DuplicateCrossingId(c.id));
            }
        }
        let mut counts: BTreeMap<EdgeId, (usize, usize)> = BTreeMap::new();
        for c in &self.crossings {
            for (slot, &e) in c.ports.iter().enumerate() {
                let entry = counts.entry(e).or_default();
                if slot % 2 == 0 {
                    entry.1 += 1;
                } else {
                    entry.0 += 1;
                }
            }
        }
        for &e in &self.free_loops {
            let entry = counts.entry(e).or_default();
            entry.0 += 1;
            entry.1 += 1;
        }
        for (edge, (tails, heads)) in counts {
            if tails > 1 || heads > 1 {
                out.insert(Violation::PortArity { edge, tails, heads });
            } else if tails != heads {
                out.insert(Violation::DanglingPort { edge });
            }
        }
        out.into_iter().collect()
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            let msgs: Vec<String> = v.iter().map(|v| v.to_string()).collect();
            Err(Error::InvalidDiagram(msgs.join("; ")))
        }
    }

    /// The edge leaving the crossing after arriving on `e`, going straight
    /// through.
    fn straight_successor(&self, edges: &BTreeMap<EdgeId, Edge>, e: EdgeId) -> EdgeId {
        let head = edges[&e].head;
        self.crossing(head.crossing).expect("head crossing").ports[head.slot + 1]
    }

    /// Link components, each as its cyclic edge sequence.
    pub fn component_edges(&self) -> Vec<Vec<EdgeId>> {
        let edges = self.edges();
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &start in edges.keys() {
            if seen.contains(&start) {
                continue;
            }
            let mut comp = Vec::new();
            let mut e = start;
            loop {
                seen.insert(e);
                comp.push(e);
                e = self.straight_successor(&edges, e);
                if e == start {
                    break;
                }
            }
            out.push(comp);
        }
        out.extend(self.free_loops.iter().map(|&e| vec![e]));
        out
    }

    /// Number of link components.
    pub fn components(&self) -> usize {
        self.component_edges().len()
    }

    /// Sum of classical crossing signs.
    pub fn writhe(&self) -> i32 {
        self.classical().filter_map(Crossing::sign).map(Sign::value).sum()
    }

    /// Partition of the edges into semi-arcs. Arcs with classical ends come
    /// first, ordered by their starting port; closed arcs follow.
    pub fn semi_arcs(&self) -> Vec<SemiArc> {
        let edges = self.edges();
        let mut used = BTreeSet::new();
        let mut arcs = Vec::new();
        for c in self.classical() {
            for slot in [O_OUT, U_OUT] {
                let start = Port { crossing: c.id, slot };
                let mut e = c.ports[slot];
                let mut path = vec![e];
                used.insert(e);
                loop {
                    let head = edges[&e].head;
                    let hc = self.crossing(head.crossing).expect("head crossing");
                    if hc.is_classical() {
                        arcs.push(SemiArc { id: arcs.len(), edges: path, ends: Some((start, head)) });
                        break;
                    }
                    e = hc.ports[head.slot + 1];
                    used.insert(e);
                    path.push(e);
                }
            }
        }
        for &start in edges.keys() {
            if used.contains(&start) {
                continue;
            }
            let mut path = Vec::new();
            let mut e = start;
            loop {
                used.insert(e);
                path.push(e);
                e = self.straight_successor(&edges, e);
                if e == start {
                    break;
                }
            }
            arcs.push(SemiArc { id: arcs.len(), edges: path, ends: None });
        }
        for &e in &self.free_loops {
            arcs.push(SemiArc { id: arcs.len(), edges: vec![e], ends: None });
        }
        arcs
    }

    /// Swaps over and under at `c` and negates its sign.
    pub fn crossing_change(&self, c: CrossingId) -> Result<Diagram> {
        let x = self.classical_crossing(c)?;
        let sign = x.sign().expect("classical").flip();
        let [oi, oo, ui, uo] = x.ports;
        let mut out = self.clone();
        let y = out.crossing_mut(c).expect("present");
        y.kind = CrossingKind::Classical(sign);
        y.ports = [ui, uo, oi, oo];
        Ok(out)
    }

    /// Replaces classical `c` by a virtual crossing with the same strands.
    pub fn virtualize(&self, c: CrossingId) -> Result<Diagram> {
        self.classical_crossing(c)?;
        let mut out = self.clone();
        out.crossing_mut(c).expect("present").kind = CrossingKind::Virtual;
        Ok(out)
    }

    /// Removes `c`, reconnecting `o_in → u_out` and `u_in → o_out`.
    pub fn smooth_oriented(&self, c: CrossingId) -> Result<Diagram> {
        let x = self.classical_crossing(c)?;
        let [oi, oo, ui, uo] = x.ports;
        let mut out = self.clone();
        out.crossings.retain(|y| y.id != c);
        // Each pair (incoming, outgoing) becomes a single edge carrying the
        // incoming label.
        let mut pending = [(oi, uo), (ui, oo)];
        for k in 0..pending.len() {
            let (keep, drop) = pending[k];
            if keep == drop {
                out.free_loops.push(keep);
                continue;
            }
            out.rename_edge(drop, keep);
            for p in pending.iter_mut().skip(k + 1) {
                if p.0 == drop {
                    p.0 = keep;
                }
                if p.1 == drop {
                    p.1 = keep;
                }
            }
        }
        Ok(out)
    }

    fn rename_edge(&mut self, from: EdgeId, to: EdgeId) {
        for c in &mut self.crossings {
            for p in &mut c.ports {
                if *p == from {
                    *p = to;
                }
            }
        }
        for e in &mut self.free_loops {
            if *e == from {
                *e = to;
            }
        }
    }

    /// Changes every classical crossing.
    pub fn mirror(&self) -> Diagram {
        let mut out = self.clone();
        for c in &mut out.crossings {
            if let CrossingKind::Classical(s) = c.kind {
                let [oi, oo, ui, uo] = c.ports;
                c.kind = CrossingKind::Classical(s.flip());
                c.ports = [ui, uo, oi, oo];
            }
        }
        out
    }

    /// Shifts every edge label and crossing id; used to relabel fixtures.
    pub fn relabeled(&self, edge_map: impl Fn(EdgeId) -> EdgeId, crossing_map: impl Fn(CrossingId) -> CrossingId) -> Diagram {
        let crossings = self
            .crossings
            .iter()
            .map(|c| Crossing { id: crossing_map(c.id), kind: c.kind, ports: c.ports.map(&edge_map) })
            .collect();
        Diagram::new(crossings, self.free_loops.iter().map(|&e| edge_map(e)).collect())
    }

    /// Canonical relabeling for isomorphism checks: crossings renumbered
    /// `1..` in id order, edges renumbered in order of first appearance.
    pub fn normalized(&self) -> Diagram {
        let mut emap: HashMap<EdgeId, EdgeId> = HashMap::new();
        for e in self.crossings.iter().flat_map(|c| c.ports).chain(self.free_loops.iter().copied()) {
            let n = emap.len() as u32 + 1;
            emap.entry(e).or_insert(EdgeId(n));
        }
        let cmap: HashMap<CrossingId, CrossingId> =
            self.crossings.iter().enumerate().map(|(k, c)| (c.id, CrossingId(k as u32 + 1))).collect();
        let mut d = self.relabeled(|e| emap[&e], |c| cmap[&c]);
        d.free_loops.sort();
        d
    }
}

/// `(D_+, D_-, D_0, D_v)` at one classical crossing.
#[derive(Clone, Debug)]
pub struct SkeinTriple {
    pub crossing: CrossingId,
    pub plus: Diagram,
    pub minus: Diagram,
    pub smoothed: Diagram,
    pub virtualized: Diagram,
    /// `true` when the input crossing was negative and the input became `D_-`.
    pub relabeled: bool,
}

/// Builds the skein diagrams at `c`. If `c` is negative, the input plays the
/// role of `D_-` and `D_+` is its crossing change.
pub fn skein_triples(d: &Diagram, c: CrossingId) -> Result<SkeinTriple> {
    let x = d.classical_crossing(c)?;
    let (plus, relabeled) = match x.sign().expect("classical") {
        Sign::Positive => (d.clone(), false),
        Sign::Negative => (d.crossing_change(c)?, true),
    };
    Ok(SkeinTriple {
        crossing: c,
        minus: plus.crossing_change(c)?,
        smoothed: plus.smooth_oriented(c)?,
        virtualized: plus.virtualize(c)?,
        plus,
        relabeled,
    })
}
