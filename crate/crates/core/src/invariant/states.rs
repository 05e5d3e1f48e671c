//! Splicing every classical crossing and tracing the resulting loops over
//! semi-arcs.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{CrossingId, Diagram, Sign, O_IN, O_OUT, U_IN, U_OUT};
use crate::numbering::{is_valid_cut_system, CutSystem};
use crate::poly::{Monomial, MultiPoly};

/// Default refusal threshold for the number of classical crossings.
pub const DEFAULT_CROSSING_CAP: usize = 26;

/// Largest accepted cap: states are indexed by `u64` bit masks.
pub const MAX_CROSSING_CAP: usize = 63;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Splice {
    A,
    B,
}

/// Port pairs joined by a splice: `(o_in, u_out), (u_in, o_out)` for the
/// oriented smoothing, `(o_in, u_in), (o_out, u_out)` for the other one.
/// The A-splice is the oriented one at positive crossings.
pub(crate) fn splice_partner(sign: Sign, splice: Splice, slot: usize) -> usize {
    if is_oriented(sign, splice) {
        match slot {
            O_IN => U_OUT,
            U_OUT => O_IN,
            U_IN => O_OUT,
            _ => U_IN,
        }
    } else {
        match slot {
            O_IN => U_IN,
            U_IN => O_IN,
            O_OUT => U_OUT,
            _ => O_OUT,
        }
    }
}

pub(crate) fn is_oriented(sign: Sign, splice: Splice) -> bool {
    matches!((sign, splice), (Sign::Positive, Splice::A) | (Sign::Negative, Splice::B))
}

/// One loop of a state.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopReport {
    /// Semi-arc ids in traversal order.
    pub arcs: Vec<usize>,
    /// Algebraic cut-point sum along the traversal.
    pub cut_sum: i64,
    pub iota: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StateReport {
    pub index: u64,
    /// Splice per classical crossing, crossings in id order.
    pub splices: Vec<(CrossingId, Splice)>,
    /// `#A - #B`.
    pub natural: i32,
    pub loops: Vec<LoopReport>,
    #[serde(serialize_with = "crate::codec::json::serialize_poly")]
    pub term: MultiPoly,
}

impl StateReport {
    pub fn loop_count(&self) -> usize {
        self.loops.len()
    }

    /// `τ_i` counts as `(i, count)` pairs for `i >= 1`.
    pub fn d_part(&self) -> Vec<(u32, u32)> {
        d_part(self.loops.iter().map(|l| l.iota))
    }

    /// One line for the state table dump.
    pub fn line(&self) -> String {
        let splices: String = self.splices.iter().map(|(_, s)| if *s == Splice::A { 'A' } else { 'B' }).collect();
        let iotas: Vec<String> = self.loops.iter().map(|l| l.iota.to_string()).collect();
        let sums: Vec<String> = self.loops.iter().map(|l| l.cut_sum.to_string()).collect();
        format!(
            "state={} splices={} natural={:+} loops={} cut_sums=[{}] iota=[{}] term={}",
            self.index,
            if splices.is_empty() { "-".to_string() } else { splices },
            self.natural,
            self.loops.len(),
            sums.join(","),
            iotas.join(","),
            self.term.pretty()
        )
    }
}

fn d_part(iotas: impl Iterator<Item = u32>) -> Vec<(u32, u32)> {
    let mut counts: Vec<(u32, u32)> = Vec::new();
    for i in iotas.filter(|&i| i > 0) {
        match counts.iter_mut().find(|(j, _)| *j == i) {
            Some(c) => c.1 += 1,
            None => counts.push((i, 1)),
        }
    }
    counts.sort_unstable();
    counts
}

/// Precomputed splice and semi-arc tables of a diagram with cut system.
pub(crate) struct StateSpace {
    crossings: Vec<(CrossingId, Sign)>,
    /// `port_arc[4 * k + slot]`: semi-arc ending (in-port) or starting
    /// (out-port) at that port of the `k`-th classical crossing.
    port_arc: Vec<usize>,
    /// `(start port, end port)` as flat port indices; `None` for closed arcs.
    arc_ends: Vec<Option<(usize, usize)>>,
    arc_jump: Vec<i64>,
}

impl StateSpace {
    pub(crate) fn new(d: &Diagram, cuts: &CutSystem, cap: usize) -> Result<Self> {
        d.ensure_valid()?;
        let crossings: Vec<(CrossingId, Sign)> =
            d.classical().map(|c| (c.id, c.sign().expect("classical"))).collect();
        let cap = cap.min(MAX_CROSSING_CAP);
        if crossings.len() > cap {
            return Err(Error::CapExceeded { crossings: crossings.len(), cap });
        }
        let pos: HashMap<CrossingId, usize> = crossings.iter().enumerate().map(|(k, &(id, _))| (id, k)).collect();
        let flat = |p: crate::model::Port| 4 * pos[&p.crossing] + p.slot;
        let arcs = d.semi_arcs();
        let mut port_arc = vec![usize::MAX; 4 * crossings.len()];
        let mut arc_ends = Vec::with_capacity(arcs.len());
        let mut arc_jump = Vec::with_capacity(arcs.len());
        for a in &arcs {
            arc_jump.push(a.edges.iter().map(|&e| cuts.jump(e)).sum());
            match a.ends {
                Some((s, t)) => {
                    port_arc[flat(s)] = a.id;
                    port_arc[flat(t)] = a.id;
                    arc_ends.push(Some((flat(s), flat(t))));
                }
                None => arc_ends.push(None),
            }
        }
        Ok(StateSpace { crossings, port_arc, arc_ends, arc_jump })
    }

    pub(crate) fn state_count(&self) -> u64 {
        1u64 << self.crossings.len()
    }

    pub(crate) fn splice(&self, state: u64, k: usize) -> Splice {
        if state >> k & 1 == 0 {
            Splice::A
        } else {
            Splice::B
        }
    }

    pub(crate) fn natural(&self, state: u64) -> i32 {
        let b = (state & (self.state_count() - 1)).count_ones() as i32;
        self.crossings.len() as i32 - 2 * b
    }

    /// Traces every loop of `state`, calling `emit(arcs, cut_sum)` per loop.
    /// `visited` and `arcs` are scratch buffers.
    pub(crate) fn trace(
        &self,
        state: u64,
        visited: &mut Vec<bool>,
        arcs: &mut Vec<usize>,
        mut emit: impl FnMut(&[usize], i64),
    ) {
        visited.clear();
        visited.resize(self.arc_ends.len(), false);
        for start in 0..self.arc_ends.len() {
            if visited[start] {
                continue;
            }
            arcs.clear();
            let Some(_) = self.arc_ends[start] else {
                visited[start] = true;
                arcs.push(start);
                emit(arcs, self.arc_jump[start]);
                continue;
            };
            let mut sum = 0i64;
            let mut arc = start;
            let mut forward = true;
            loop {
                visited[arc] = true;
                arcs.push(arc);
                let (s, t) = self.arc_ends[arc].expect("open arc");
                let arrive = if forward {
                    sum += self.arc_jump[arc];
                    t
                } else {
                    sum -= self.arc_jump[arc];
                    s
                };
                let k = arrive / 4;
                let sign = self.crossings[k].1;
                let next = 4 * k + splice_partner(sign, self.splice(state, k), arrive % 4);
                arc = self.port_arc[next];
                // leaving through an in-port means walking that arc backwards
                forward = next % 2 == 1;
                if arc == start {
                    debug_assert!(forward);
                    break;
                }
            }
            emit(arcs, sum);
        }
    }

    pub(crate) fn report(&self, state: u64) -> Result<StateReport> {
        let mut visited = Vec::new();
        let mut scratch = Vec::new();
        let mut loops = Vec::new();
        let mut err = None;
        self.trace(state, &mut visited, &mut scratch, |arcs, sum| {
            if sum % 2 != 0 {
                err.get_or_insert(Error::OddLoopSum(sum));
            }
            loops.push(LoopReport { arcs: arcs.to_vec(), cut_sum: sum, iota: (sum.unsigned_abs() / 2) as u32 });
        });
        if let Some(e) = err {
            return Err(e);
        }
        let natural = self.natural(state);
        let dp = d_part(loops.iter().map(|l| l.iota));
        let term = state_term(natural, loops.len(), &dp);
        Ok(StateReport {
            index: state,
            splices: (0..self.crossings.len()).map(|k| (self.crossings[k].0, self.splice(state, k))).collect(),
            natural,
            loops,
            term,
        })
    }
}

/// `A^natural (-A^2-A^-2)^(loops-1) Π d_i^{τ_i}`.
pub(crate) fn state_term(natural: i32, loops: usize, d: &[(u32, u32)]) -> MultiPoly {
    let base = MultiPoly::from_monomial(Monomial::new(natural, d), 1.into());
    &base * &MultiPoly::loop_value().pow(loops as u32 - 1)
}

/// Streams one report per state, `2^m` in total, in counter order.
pub fn enumerate_states(d: &Diagram, cuts: &CutSystem) -> Result<impl Iterator<Item = Result<StateReport>>> {
    enumerate_states_with_cap(d, cuts, DEFAULT_CROSSING_CAP)
}

pub fn enumerate_states_with_cap(
    d: &Diagram,
    cuts: &CutSystem,
    cap: usize,
) -> Result<impl Iterator<Item = Result<StateReport>>> {
    let space = StateSpace::new(d, cuts, cap)?;
    if !is_valid_cut_system(d, cuts) {
        return Err(Error::InvalidCutSystem);
    }
    Ok((0..space.state_count()).map(move |s| space.report(s)))
}
