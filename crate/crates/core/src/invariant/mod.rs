//! Cut-system double bracket, the normalized invariants `X_D` and `f_D`, an
//! independent cusp-based state sum, and the skein-relation verifiers.

mod oracle;
mod skein;
mod states;

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::Diagram;
use crate::numbering::{canonical_cut_system, is_valid_cut_system, CutSystem};
use crate::poly::MultiPoly;

pub use oracle::{arrow_oracle, arrow_oracle_with_cap, reduced_cusp_count};
pub use skein::{
    check_exponent_congruence, check_exponent_congruence_with_cap, classify_virtualization_states,
    classify_virtualization_states_with_cap, verify_skein_classical, verify_skein_classical_with_cap,
    verify_skein_main, verify_skein_main_with_cap, verify_skein_virtual_cc, verify_skein_virtual_cc_with_cap,
    CongruenceReport, SkeinCheck, StateClass, StateClassReport,
};
pub use states::{
    enumerate_states, enumerate_states_with_cap, LoopReport, Splice, StateReport, DEFAULT_CROSSING_CAP,
    MAX_CROSSING_CAP,
};

use states::{state_term, StateSpace};

/// Aggregation key: `(natural, loop count, d-part)`.
type TermKey = (i32, usize, Vec<(u32, u32)>);

/// Sums per-state monomials by key across worker threads.
pub(crate) fn aggregate<F>(states: u64, per_state: F) -> Result<MultiPoly>
where
    F: Fn(u64, &mut Scratch) -> Result<TermKey> + Sync,
{
    let counts = (0..states)
        .into_par_iter()
        .fold(
            || (Scratch::default(), Ok(HashMap::<TermKey, u64>::new())),
            |(mut scratch, acc), s| {
                let acc = acc.and_then(|mut m| {
                    *m.entry(per_state(s, &mut scratch)?).or_default() += 1;
                    Ok(m)
                });
                (scratch, acc)
            },
        )
        .map(|(_, acc)| acc)
        .try_reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            Ok(a)
        })?;
    let mut keys: Vec<_> = counts.into_iter().collect();
    keys.sort();
    let mut out = MultiPoly::zero();
    for ((natural, loops, d), n) in keys {
        let t = state_term(natural, loops, &d);
        out += &(&t * &MultiPoly::from_monomial(Default::default(), n.into()));
    }
    Ok(out)
}

#[derive(Default)]
pub(crate) struct Scratch {
    pub(crate) visited: Vec<bool>,
    pub(crate) arcs: Vec<usize>,
    pub(crate) iotas: Vec<u32>,
    pub(crate) words: Vec<i8>,
}

fn dpart_of(iotas: &mut [u32]) -> Vec<(u32, u32)> {
    iotas.sort_unstable();
    let mut out: Vec<(u32, u32)> = Vec::new();
    for &i in iotas.iter().filter(|&&i| i > 0) {
        match out.last_mut() {
            Some((j, c)) if *j == i => *c += 1,
            _ => out.push((i, 1)),
        }
    }
    out
}

/// `⟨⟨D, C⟩⟩` with the default crossing cap.
pub fn double_bracket(d: &Diagram, cuts: &CutSystem) -> Result<MultiPoly> {
    double_bracket_with_cap(d, cuts, DEFAULT_CROSSING_CAP)
}

pub fn double_bracket_with_cap(d: &Diagram, cuts: &CutSystem, cap: usize) -> Result<MultiPoly> {
    let space = StateSpace::new(d, cuts, cap)?;
    if !is_valid_cut_system(d, cuts) {
        return Err(Error::InvalidCutSystem);
    }
    aggregate(space.state_count(), |s, scratch| {
        let Scratch { visited, arcs, iotas, .. } = scratch;
        iotas.clear();
        let mut odd = None;
        space.trace(s, visited, arcs, |_, sum| {
            if sum % 2 != 0 {
                odd = Some(sum);
            }
            iotas.push((sum.unsigned_abs() / 2) as u32);
        });
        if let Some(sum) = odd {
            return Err(Error::OddLoopSum(sum));
        }
        Ok((space.natural(s), iotas.len(), dpart_of(iotas)))
    })
}

/// `(-A^3)^{-w}`.
pub(crate) fn writhe_factor(w: i32) -> MultiPoly {
    (-MultiPoly::a_pow(3)).powi(-w).expect("unit")
}

/// `X_D = (-A^3)^{-w(D)} ⟨⟨D⟩⟩`, using the canonical cut system.
pub fn x_polynomial(d: &Diagram) -> Result<MultiPoly> {
    x_polynomial_with_cap(d, DEFAULT_CROSSING_CAP)
}

pub fn x_polynomial_with_cap(d: &Diagram, cap: usize) -> Result<MultiPoly> {
    d.ensure_valid()?;
    let cuts = canonical_cut_system(d);
    Ok(&writhe_factor(d.writhe()) * &double_bracket_with_cap(d, &cuts, cap)?)
}

/// `f_D`: `X_D` with every `d_i` set to 1.
pub fn f_polynomial(d: &Diagram) -> Result<MultiPoly> {
    Ok(x_polynomial(d)?.substitute_d_one())
}

pub fn f_polynomial_with_cap(d: &Diagram, cap: usize) -> Result<MultiPoly> {
    Ok(x_polynomial_with_cap(d, cap)?.substitute_d_one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Crossing, CrossingId, Sign};
    use crate::numbering::{insert_canceling_pair, push_through_crossing};

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    fn curl(sign: Sign) -> Diagram {
        Diagram::new(vec![Crossing::classical(1, sign, [1, 2, 2, 1])], vec![])
    }

    fn vtrefoil() -> Diagram {
        Diagram::new(
            vec![
                Crossing::classical(1, Sign::Positive, [6, 1, 5, 3]),
                Crossing::classical(2, Sign::Positive, [1, 2, 3, 4]),
                Crossing::virtual_(3, [2, 5, 4, 6]),
            ],
            vec![],
        )
    }

    #[test]
    fn unknot_has_one_state() {
        let states: Vec<_> = enumerate_states(&Diagram::unknot(), &CutSystem::empty()).unwrap().collect();
        assert_eq!(states.len(), 1);
        let s = states[0].as_ref().unwrap();
        assert_eq!(s.loop_count(), 1);
        assert_eq!(s.term, MultiPoly::one());
        assert_eq!(double_bracket(&Diagram::unknot(), &CutSystem::empty()).unwrap(), MultiPoly::one());
    }

    #[test]
    fn positive_curl_states() {
        let states: Vec<StateReport> =
            enumerate_states(&curl(Sign::Positive), &CutSystem::empty()).unwrap().map(Result::unwrap).collect();
        let pairs: Vec<(i32, usize)> = states.iter().map(|s| (s.natural, s.loop_count())).collect();
        assert_eq!(pairs, vec![(1, 2), (-1, 1)]);
        assert_eq!(double_bracket(&curl(Sign::Positive), &CutSystem::empty()).unwrap(), p("-A^3"));
        assert_eq!(double_bracket(&curl(Sign::Negative), &CutSystem::empty()).unwrap(), p("-A^-3"));
        assert_eq!(x_polynomial(&curl(Sign::Positive)).unwrap(), MultiPoly::one());
        assert_eq!(x_polynomial(&curl(Sign::Negative)).unwrap(), MultiPoly::one());
    }

    #[test]
    fn virtual_trefoil_has_an_index_one_loop() {
        let d = vtrefoil();
        let cuts = canonical_cut_system(&d);
        let states: Vec<StateReport> = enumerate_states(&d, &cuts).unwrap().map(Result::unwrap).collect();
        assert_eq!(states.len(), 4);
        assert!(states.iter().any(|s| s.loops.iter().any(|l| l.iota == 1)));
        let x = x_polynomial(&d).unwrap();
        assert_eq!(x.d_indices().into_iter().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn invalid_cut_system_is_rejected() {
        let mut cuts = CutSystem::empty();
        cuts.push_back(crate::model::EdgeId(1), 1);
        assert_eq!(double_bracket(&Diagram::unknot(), &cuts), Err(Error::InvalidCutSystem));
    }

    #[test]
    fn bracket_ignores_cut_moves() {
        let d = vtrefoil();
        let c0 = canonical_cut_system(&d);
        let b0 = double_bracket(&d, &c0).unwrap();
        let x = d.crossing(CrossingId(2)).unwrap().clone();
        let c1 = insert_canceling_pair(&d, &c0, x.ports[0]).unwrap();
        let c1 = insert_canceling_pair(&d, &c1, x.ports[2]).unwrap();
        assert_eq!(double_bracket(&d, &c1).unwrap(), b0);
        let c2 = push_through_crossing(&d, &c1, CrossingId(2)).unwrap();
        assert_eq!(double_bracket(&d, &c2).unwrap(), b0);
    }

    #[test]
    fn cap_is_enforced() {
        let d = vtrefoil();
        assert_eq!(x_polynomial_with_cap(&d, 1), Err(Error::CapExceeded { crossings: 2, cap: 1 }));
    }
}
