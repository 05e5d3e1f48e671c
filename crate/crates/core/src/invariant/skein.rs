//! Skein-relation verifiers and exponent congruence checks.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::codec::json::serialize_poly;
use crate::error::{Error, Result};
use crate::model::{skein_triples, CrossingId, Diagram, SkeinTriple};
use crate::numbering::{
    cut_system_around_virtual, is_almost_classical_diagram, is_checkerboard_colorable, CutSystem,
};
use crate::poly::MultiPoly;

use super::states::{enumerate_states_with_cap, Splice, StateReport, DEFAULT_CROSSING_CAP};
use super::{f_polynomial_with_cap, x_polynomial_with_cap};

/// Both sides of one identity and their difference.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SkeinCheck {
    pub relation: &'static str,
    pub crossing: CrossingId,
    pub relabeled: bool,
    #[serde(serialize_with = "serialize_poly")]
    pub lhs: MultiPoly,
    #[serde(serialize_with = "serialize_poly")]
    pub rhs: MultiPoly,
    #[serde(serialize_with = "serialize_poly")]
    pub residual: MultiPoly,
}

impl SkeinCheck {
    fn new(relation: &'static str, t: &SkeinTriple, lhs: MultiPoly, rhs: MultiPoly) -> Self {
        let residual = &lhs - &rhs;
        SkeinCheck { relation, crossing: t.crossing, relabeled: t.relabeled, lhs, rhs, residual }
    }

    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

fn a(k: i32) -> MultiPoly {
    MultiPoly::a_pow(k)
}

/// `A^4 f_{D+} - A^{-4} f_{D-} + (A^2 - A^{-2}) f_{D0} = 0`.
pub fn verify_skein_classical(d: &Diagram, c: CrossingId) -> Result<SkeinCheck> {
    verify_skein_classical_with_cap(d, c, DEFAULT_CROSSING_CAP)
}

pub fn verify_skein_classical_with_cap(d: &Diagram, c: CrossingId, cap: usize) -> Result<SkeinCheck> {
    let t = skein_triples(d, c)?;
    let plus = f_polynomial_with_cap(&t.plus, cap)?;
    let minus = f_polynomial_with_cap(&t.minus, cap)?;
    let zero = f_polynomial_with_cap(&t.smoothed, cap)?;
    let lhs = &(&(&a(4) * &plus) - &(&a(-4) * &minus)) + &(&(&a(2) - &a(-2)) * &zero);
    Ok(SkeinCheck::new("classical", &t, lhs, MultiPoly::zero()))
}

/// `A^3 f_{D+} + A^{-3} f_{D-} = (A^3 + A^{-3}) f_{Dv}`, for checkerboard
/// colorable `D_+`.
pub fn verify_skein_virtual_cc(d: &Diagram, c: CrossingId) -> Result<SkeinCheck> {
    verify_skein_virtual_cc_with_cap(d, c, DEFAULT_CROSSING_CAP)
}

pub fn verify_skein_virtual_cc_with_cap(d: &Diagram, c: CrossingId, cap: usize) -> Result<SkeinCheck> {
    let t = skein_triples(d, c)?;
    if !is_checkerboard_colorable(&t.plus) {
        return Err(Error::Precondition("D+ is not checkerboard colorable".into()));
    }
    let plus = f_polynomial_with_cap(&t.plus, cap)?;
    let minus = f_polynomial_with_cap(&t.minus, cap)?;
    let virt = f_polynomial_with_cap(&t.virtualized, cap)?;
    let lhs = &(&a(3) * &plus) + &(&a(-3) * &minus);
    let rhs = &(&a(3) + &a(-3)) * &virt;
    Ok(SkeinCheck::new("checkerboard", &t, lhs, rhs))
}

/// `(A^6 - d_1) X_{D+} + (-A^{-6} + d_1) X_{D-} = (A^6 - A^{-6}) X_{Dv}`, for
/// almost classical `D_+` and `D_-`.
pub fn verify_skein_main(d: &Diagram, c: CrossingId) -> Result<SkeinCheck> {
    verify_skein_main_with_cap(d, c, DEFAULT_CROSSING_CAP)
}

pub fn verify_skein_main_with_cap(d: &Diagram, c: CrossingId, cap: usize) -> Result<SkeinCheck> {
    let t = skein_triples(d, c)?;
    if !is_almost_classical_diagram(&t.plus) {
        return Err(Error::Precondition("D+ is not almost classical".into()));
    }
    if !is_almost_classical_diagram(&t.minus) {
        return Err(Error::Precondition("D- is not almost classical".into()));
    }
    let d1 = MultiPoly::d(1);
    let plus = x_polynomial_with_cap(&t.plus, cap)?;
    let minus = x_polynomial_with_cap(&t.minus, cap)?;
    let virt = x_polynomial_with_cap(&t.virtualized, cap)?;
    let lhs = &(&(&a(6) - &d1) * &plus) + &(&(&d1 - &a(-6)) * &minus);
    let rhs = &(&a(6) - &a(-6)) * &virt;
    Ok(SkeinCheck::new("virtualized", &t, lhs, rhs))
}

/// Exponent congruences for a diagram obtained from an almost classical one
/// by a single virtualization. The caller asserts that origin.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CongruenceReport {
    pub origin_asserted: bool,
    pub components: usize,
    #[serde(serialize_with = "serialize_poly")]
    pub x: MultiPoly,
    pub exp: BTreeSet<i32>,
    pub exp_d1: BTreeSet<i32>,
    /// Required residue mod 4 of `exp`, and of `exp_d1`.
    pub exp_residue: i32,
    pub exp_d1_residue: i32,
    pub exp_ok: bool,
    pub exp_d1_ok: bool,
    /// Only `d_1` occurs.
    pub only_d1: bool,
}

impl CongruenceReport {
    pub fn holds(&self) -> bool {
        self.exp_ok && self.exp_d1_ok && self.only_d1
    }
}

pub fn check_exponent_congruence(d: &Diagram) -> Result<CongruenceReport> {
    check_exponent_congruence_with_cap(d, DEFAULT_CROSSING_CAP)
}

pub fn check_exponent_congruence_with_cap(d: &Diagram, cap: usize) -> Result<CongruenceReport> {
    let x = x_polynomial_with_cap(d, cap)?;
    let n = d.components();
    let (exp_residue, exp_d1_residue) = if n % 2 == 1 { (0, 2) } else { (2, 0) };
    let exp = x.exp_set();
    let exp_d1 = x.exp_set_d(1);
    Ok(CongruenceReport {
        origin_asserted: true,
        components: n,
        exp_ok: exp.iter().all(|e| e.rem_euclid(4) == exp_residue),
        exp_d1_ok: exp_d1.iter().all(|e| e.rem_euclid(4) == exp_d1_residue),
        only_d1: x.d_indices().iter().all(|&i| i == 1),
        exp,
        exp_d1,
        exp_residue,
        exp_d1_residue,
        x,
    })
}

/// How a state of `D_v` relates to its two lifts in `D_+`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum StateClass {
    /// A-lift has one more loop, B-lift the same count; same d-parts.
    Primed,
    /// A-lift the same count, B-lift one more; lifts carry one `d_1` fewer.
    DoublePrimed,
    Neither,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StateClassReport {
    pub primed: usize,
    pub double_primed: usize,
    pub neither: usize,
}

fn d1_times(mut dp: Vec<(u32, u32)>) -> Vec<(u32, u32)> {
    match dp.iter_mut().find(|(i, _)| *i == 1) {
        Some(e) => e.1 += 1,
        None => {
            dp.push((1, 1));
            dp.sort_unstable();
        }
    }
    dp
}

/// Pairs every state of `D_v` (with the two cut points around the new
/// virtual crossing) with its A- and B-lifts in `D_+` (empty cut system) and
/// classifies the pair.
pub fn classify_virtualization_states(d: &Diagram, c: CrossingId) -> Result<StateClassReport> {
    classify_virtualization_states_with_cap(d, c, DEFAULT_CROSSING_CAP)
}

pub fn classify_virtualization_states_with_cap(d: &Diagram, c: CrossingId, cap: usize) -> Result<StateClassReport> {
    let t = skein_triples(d, c)?;
    if !is_almost_classical_diagram(&t.plus) {
        return Err(Error::Precondition("D+ is not almost classical".into()));
    }
    let v_cuts = cut_system_around_virtual(&t.virtualized, c)?
        .ok_or_else(|| Error::Precondition("no two-point cut system around the virtual crossing".into()))?;
    let plus: Vec<StateReport> = enumerate_states_with_cap(&t.plus, &CutSystem::empty(), cap)?.collect::<Result<_>>()?;
    let virt: Vec<StateReport> = enumerate_states_with_cap(&t.virtualized, &v_cuts, cap)?.collect::<Result<_>>()?;

    let key = |s: &StateReport, skip: Option<CrossingId>| -> Vec<(CrossingId, Splice)> {
        s.splices.iter().copied().filter(|(id, _)| Some(*id) != skip).collect()
    };
    let mut lifts: HashMap<(Vec<(CrossingId, Splice)>, Splice), &StateReport> = HashMap::new();
    for s in &plus {
        let at = s.splices.iter().find(|(id, _)| *id == c).expect("crossing in state").1;
        lifts.insert((key(s, Some(c)), at), s);
    }
    let mut report = StateClassReport { primed: 0, double_primed: 0, neither: 0 };
    for sv in &virt {
        let k = key(sv, None);
        let la = lifts[&(k.clone(), Splice::A)];
        let lb = lifts[&(k, Splice::B)];
        let (nv, na, nb) = (sv.loop_count(), la.loop_count(), lb.loop_count());
        let class = if na == nv + 1 && nb == nv && la.d_part() == sv.d_part() && lb.d_part() == sv.d_part() {
            StateClass::Primed
        } else if na == nv
            && nb == nv + 1
            && d1_times(la.d_part()) == sv.d_part()
            && d1_times(lb.d_part()) == sv.d_part()
        {
            StateClass::DoublePrimed
        } else {
            StateClass::Neither
        };
        match class {
            StateClass::Primed => report.primed += 1,
            StateClass::DoublePrimed => report.double_primed += 1,
            StateClass::Neither => report.neither += 1,
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codec::{catalog, TRIPLE_CROSSING};

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn figure_eight_main_relation_sides() {
        let r = verify_skein_main(&catalog("figure8").unwrap(), TRIPLE_CROSSING).unwrap();
        let side = p("A^14 - A^10 + A^6 - A^2 + A^-2 - A^-6 + (-A^8 + A^4 + A^-4 - A^-8) d_1");
        assert_eq!(r.lhs, side);
        assert_eq!(r.rhs, side);
        assert!(r.holds());
    }

    #[test]
    fn classical_relation_everywhere() {
        for name in ["trefoil", "vtrefoil", "hopf+", "figure8"] {
            let d = catalog(name).unwrap();
            for c in d.classical().map(|c| c.id).collect::<Vec<_>>() {
                assert!(verify_skein_classical(&d, c).unwrap().holds(), "{name} {c}");
            }
        }
    }

    #[test]
    fn checkerboard_relation_and_gate() {
        let h = catalog("hopf+").unwrap();
        for c in [CrossingId(1), CrossingId(2)] {
            assert!(verify_skein_virtual_cc(&h, c).unwrap().holds());
        }
        assert!(verify_skein_virtual_cc(&catalog("figure8").unwrap(), TRIPLE_CROSSING).unwrap().holds());
        let vt = catalog("vtrefoil").unwrap();
        assert!(matches!(verify_skein_virtual_cc(&vt, CrossingId(1)), Err(Error::Precondition(_))));
        assert!(matches!(verify_skein_main(&vt, CrossingId(1)), Err(Error::Precondition(_))));
    }

    #[test]
    fn main_relation_on_trefoil() {
        let t = catalog("trefoil").unwrap();
        for c in 1..=3 {
            assert!(verify_skein_main(&t, CrossingId(c)).unwrap().holds());
        }
    }

    #[test]
    fn congruences() {
        let r = check_exponent_congruence(&catalog("figure8_triple_virtual").unwrap()).unwrap();
        assert_eq!(r.exp, [0, 4, 8].into_iter().collect());
        assert_eq!(r.exp_d1, [-2, 2].into_iter().collect());
        assert!(r.holds());

        let vt = catalog("trefoil").unwrap().virtualize(CrossingId(1)).unwrap();
        let r = check_exponent_congruence(&vt).unwrap();
        assert_eq!(r.components, 1);
        assert!(r.holds());

        let vh = catalog("hopf+").unwrap().virtualize(CrossingId(1)).unwrap();
        let r = check_exponent_congruence(&vh).unwrap();
        assert_eq!(r.components, 2);
        assert_eq!((r.exp_residue, r.exp_d1_residue), (2, 0));
        assert!(r.holds(), "{:?}", r);
    }

    #[test]
    fn figure_eight_state_classes() {
        let r = classify_virtualization_states(&catalog("figure8").unwrap(), TRIPLE_CROSSING).unwrap();
        assert_eq!(r.neither, 0);
        assert_eq!(r.primed + r.double_primed, 8);
    }
}
