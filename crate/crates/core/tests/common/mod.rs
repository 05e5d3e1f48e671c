#![allow(dead_code)]

use std::collections::BTreeMap;

use vskein_core::model::{O_IN, O_OUT, U_IN, U_OUT};
use vskein_core::*;

/// Laurent polynomial in `A` with `i64` coefficients.
pub type Laurent = BTreeMap<i32, i64>;

fn mul(p: &Laurent, q: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (a, x) in p {
        for (b, y) in q {
            *out.entry(a + b).or_default() += x * y;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn find(&mut self, x: usize) -> usize {
        let p = self.0[x];
        if p == x {
            return x;
        }
        let r = self.find(p);
        self.0[x] = r;
        r
    }
    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        self.0[a] = b;
    }
}

/// Normalized Kauffman bracket by brute force: union-find over crossing
/// ports, A-smoothing oriented at positive crossings, virtual crossings
/// joined straight through.
pub fn brute_force_f(d: &Diagram) -> Laurent {
    let cs = d.crossings();
    let node = |k: usize, slot: usize| 4 * k + slot;
    let index: BTreeMap<CrossingId, usize> = cs.iter().enumerate().map(|(k, c)| (c.id, k)).collect();
    let classical: Vec<usize> = (0..cs.len()).filter(|&k| cs[k].is_classical()).collect();
    let mut bracket = Laurent::new();
    for state in 0..1u64 << classical.len() {
        let mut dsu = Dsu((0..4 * cs.len()).collect());
        for (_, e) in d.edges() {
            dsu.union(node(index[&e.tail.crossing], e.tail.slot), node(index[&e.head.crossing], e.head.slot));
        }
        let mut a_exp = 0;
        for (k, c) in cs.iter().enumerate() {
            let pairs = match c.sign() {
                None => [(0, 1), (2, 3)],
                Some(s) => {
                    let j = classical.iter().position(|&x| x == k).unwrap();
                    let a_splice = state >> j & 1 == 0;
                    a_exp += if a_splice { 1 } else { -1 };
                    let oriented = a_splice == (s == Sign::Positive);
                    if oriented {
                        [(O_IN, U_OUT), (U_IN, O_OUT)]
                    } else {
                        [(O_IN, U_IN), (O_OUT, U_OUT)]
                    }
                }
            };
            for (x, y) in pairs {
                dsu.union(node(k, x), node(k, y));
            }
        }
        let mut roots: Vec<usize> = (0..4 * cs.len()).map(|x| dsu.find(x)).collect();
        roots.sort_unstable();
        roots.dedup();
        let loops = roots.len() + d.free_loops().len();
        let delta: Laurent = [(2, -1), (-2, -1)].into_iter().collect();
        let mut term: Laurent = [(a_exp, 1)].into_iter().collect();
        for _ in 1..loops {
            term = mul(&term, &delta);
        }
        for (e, c) in term {
            *bracket.entry(e).or_default() += c;
        }
    }
    bracket.retain(|_, c| *c != 0);
    let w = d.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    mul(&[(-3 * w, sign)].into_iter().collect(), &bracket)
}

pub fn as_laurent(p: &MultiPoly) -> Laurent {
    assert!(p.is_d_free(), "{p}");
    p.terms().map(|(m, c)| (m.a_exp(), MultiPoly::coeff_i64(c).unwrap())).collect()
}

pub fn poly(s: &str) -> MultiPoly {
    s.parse().unwrap()
}

/// Three cut systems obtained from `base` by canceling pairs and pushes.
/// All of them are equivalent to `base`.
pub fn perturbed_systems(d: &Diagram, base: &CutSystem) -> Vec<CutSystem> {
    let mut out = Vec::new();
    let edges: Vec<EdgeId> = d.edge_ids().into_iter().collect();
    let Some(&first) = edges.first() else { return out };
    out.push(insert_canceling_pair(d, base, first).unwrap());

    let classical: Vec<&Crossing> = d.classical().collect();
    let through = |cuts: &CutSystem, c: &Crossing| -> CutSystem {
        let mut s = insert_canceling_pair(d, cuts, c.ports[O_IN]).unwrap();
        s = insert_canceling_pair(d, &s, c.ports[U_IN]).unwrap();
        push_through_crossing(d, &s, c.id).unwrap()
    };
    match classical.first() {
        Some(c) => out.push(through(base, c)),
        None => out.push(insert_canceling_pair(d, &out[0], first).unwrap()),
    }
    let last = out[1].clone();
    match (d.virtuals().next(), classical.last()) {
        (Some(v), _) => {
            let s = insert_canceling_pair(d, &last, v.ports[0]).unwrap();
            out.push(push_through_crossing(d, &s, v.id).unwrap());
        }
        (None, Some(c)) => out.push(through(&last, c)),
        (None, None) => out.push(insert_canceling_pair(d, &last, *edges.last().unwrap()).unwrap()),
    }
    out
}

pub const FIXTURE_NAMES: &[&str] = &[
    "unknot",
    "curl+",
    "curl-",
    "hopf+",
    "trefoil",
    "trefoil_mirror",
    "figure8",
    "vtrefoil",
    "trefoil_vcurl",
    "trefoil_vpass",
    "figure8_triple_plus",
    "figure8_triple_minus",
    "figure8_triple_virtual",
];

pub fn fixtures() -> Vec<(&'static str, Diagram)> {
    FIXTURE_NAMES.iter().map(|n| (*n, catalog(n).unwrap())).collect()
}
