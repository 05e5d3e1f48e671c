//! Cusp-based state sum that needs no cut system or numbering.
//!
//! Each non-oriented splice leaves a cusp on both of its new arcs. Walking a
//! state loop, a cusp is recorded by the side of the walk it points to. The
//! local picture pins that side: arriving along the north-east strand the
//! cusp is on the left, otherwise on the right. Adjacent cusps on the same
//! side cancel; a loop whose reduced word has `2r` cusps gets index `r`.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::model::{Diagram, EdgeId, Port};
use crate::poly::MultiPoly;

use super::states::{is_oriented, splice_partner, Splice, DEFAULT_CROSSING_CAP, MAX_CROSSING_CAP};
use super::{aggregate, dpart_of, writhe_factor};

/// Length of the cyclic cusp word after cancelling adjacent equal sides.
pub fn reduced_cusp_count(word: &[i8]) -> usize {
    let mut stack: Vec<i8> = Vec::with_capacity(word.len());
    for &s in word {
        if stack.last() == Some(&s) {
            stack.pop();
        } else {
            stack.push(s);
        }
    }
    let (mut lo, mut hi) = (0, stack.len());
    while hi - lo >= 2 && stack[lo] == stack[hi - 1] {
        lo += 1;
        hi -= 1;
    }
    hi - lo
}

struct EdgeGraph {
    edges: Vec<EdgeId>,
    /// `(tail, head)` per edge.
    ends: Vec<(Port, Port)>,
    /// Edge index at each port.
    at_port: HashMap<Port, usize>,
    classical_pos: HashMap<crate::model::CrossingId, usize>,
    free: usize,
}

pub fn arrow_oracle(d: &Diagram) -> Result<MultiPoly> {
    arrow_oracle_with_cap(d, DEFAULT_CROSSING_CAP)
}

pub fn arrow_oracle_with_cap(d: &Diagram, cap: usize) -> Result<MultiPoly> {
    d.ensure_valid()?;
    let m = d.classical_count();
    let cap = cap.min(MAX_CROSSING_CAP);
    if m > cap {
        return Err(Error::CapExceeded { crossings: m, cap });
    }
    let all: BTreeMap<EdgeId, crate::model::Edge> = d.edges();
    let graph = EdgeGraph {
        edges: all.keys().copied().collect(),
        ends: all.values().map(|e| (e.tail, e.head)).collect(),
        at_port: all
            .values()
            .enumerate()
            .flat_map(|(k, e)| [(e.tail, k), (e.head, k)])
            .collect(),
        classical_pos: d.classical().enumerate().map(|(k, c)| (c.id, k)).collect(),
        free: d.free_loops().len(),
    };
    let bracket = aggregate(1u64 << m, |state, scratch| {
        let visited = &mut scratch.visited;
        visited.clear();
        visited.resize(graph.edges.len(), false);
        let iotas = &mut scratch.iotas;
        iotas.clear();
        iotas.extend(std::iter::repeat_n(0, graph.free));
        let mut natural = 0i32;
        for c in d.classical() {
            let k = graph.classical_pos[&c.id];
            natural += if state >> k & 1 == 0 { 1 } else { -1 };
        }
        for start in 0..graph.edges.len() {
            if visited[start] {
                continue;
            }
            let word = &mut scratch.words;
            word.clear();
            let (mut e, mut forward) = (start, true);
            loop {
                visited[e] = true;
                let arrive = if forward { graph.ends[e].1 } else { graph.ends[e].0 };
                let c = d.crossing(arrive.crossing).expect("crossing");
                let leave = match c.sign() {
                    None => Port { crossing: c.id, slot: arrive.slot ^ 1 },
                    Some(sign) => {
                        let k = graph.classical_pos[&c.id];
                        let splice = if state >> k & 1 == 0 { Splice::A } else { Splice::B };
                        if !is_oriented(sign, splice) {
                            let ne = c.northeast_strand().expect("classical");
                            word.push(if arrive.slot / 2 == ne { 1 } else { -1 });
                        }
                        Port { crossing: c.id, slot: splice_partner(sign, splice, arrive.slot) }
                    }
                };
                e = graph.at_port[&leave];
                forward = !leave.is_in();
                if e == start && forward {
                    break;
                }
            }
            let n = reduced_cusp_count(word);
            if n % 2 != 0 {
                return Err(Error::OddLoopSum(n as i64));
            }
            iotas.push((n / 2) as u32);
        }
        Ok((natural, iotas.len(), dpart_of(iotas)))
    })?;
    Ok(&writhe_factor(d.writhe()) * &bracket)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cusp_reduction() {
        assert_eq!(reduced_cusp_count(&[]), 0);
        assert_eq!(reduced_cusp_count(&[1, 1]), 0);
        assert_eq!(reduced_cusp_count(&[1, -1]), 2);
        assert_eq!(reduced_cusp_count(&[1, -1, 1, -1]), 4);
        assert_eq!(reduced_cusp_count(&[1, 1, -1, 1, -1, -1]), 2);
        // cyclic cancellation across the seam
        assert_eq!(reduced_cusp_count(&[1, -1, 1]), 1);
        assert_eq!(reduced_cusp_count(&[1, -1, -1, 1]), 0);
    }

    #[test]
    fn unknot() {
        assert_eq!(arrow_oracle(&Diagram::unknot()).unwrap(), MultiPoly::one());
    }
}
