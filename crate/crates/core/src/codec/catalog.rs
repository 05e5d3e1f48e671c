//! Named fixture diagrams.

use crate::error::{Error, Result};
use crate::model::{skein_triples, CrossingId, Diagram};

use super::pd::parse_pd;

/// Crossing of the `figure8` fixture whose virtual skein triple is the
/// `figure8_triple_*` family.
pub const TRIPLE_CROSSING: CrossingId = CrossingId(1);

/// `(name, PD code)` for every fixture that is not derived.
pub const FIXTURES: &[(&str, &str)] = &[
    ("unknot", "L[1]"),
    ("curl+", "X[1,2,2,1] +"),
    ("curl-", "X[1,2,2,1] -"),
    ("hopf+", "X[2,1,4,3] +; X[3,4,1,2] +"),
    ("trefoil", "X[6,1,3,4] +; X[4,5,1,2] +; X[2,3,5,6] +"),
    ("trefoil_mirror", "X[3,4,6,1] -; X[1,2,4,5] -; X[5,6,2,3] -"),
    ("figure8", "X[1,2,4,5] +; X[5,6,8,1] +; X[3,4,6,7] -; X[7,8,2,3] -"),
    ("vtrefoil", "X[6,1,5,3] +; X[1,2,3,4] +; V[2,5,4,6]"),
    // almost classical, with a virtual kink
    ("trefoil_vcurl", "X[6,1,3,4] +; X[4,5,1,2] +; X[2,3,5,7] +; V[7,8,8,6]"),
    // almost classical, two strands pushed across each other virtually
    ("trefoil_vpass", "X[6,1,10,4] +; X[4,5,8,2] +; X[2,3,5,6] +; V[1,7,3,9]; V[7,8,9,10]"),
];

pub const DERIVED: &[&str] = &["figure8_triple_plus", "figure8_triple_minus", "figure8_triple_virtual"];

pub fn names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n).chain(DERIVED.iter().copied())
}

pub fn catalog(name: &str) -> Result<Diagram> {
    if let Some((_, code)) = FIXTURES.iter().find(|(n, _)| *n == name) {
        return parse_pd(code);
    }
    let t = || skein_triples(&catalog("figure8")?, TRIPLE_CROSSING);
    match name {
        "figure8_triple_plus" => Ok(t()?.plus),
        "figure8_triple_minus" => Ok(t()?.minus),
        "figure8_triple_virtual" => Ok(t()?.virtualized),
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_loads() {
        for n in names() {
            let d = catalog(n).unwrap();
            assert!(d.is_valid(), "{n}");
        }
        assert!(matches!(catalog("nope"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn basic_facts() {
        let u = catalog("unknot").unwrap();
        assert_eq!((u.components(), u.crossings().len()), (1, 0));
        let f = catalog("figure8").unwrap();
        assert_eq!((f.classical_count(), f.writhe()), (4, 0));
        let v = catalog("trefoil_vpass").unwrap();
        assert_eq!((v.classical_count(), v.virtual_count()), (3, 2));
        assert!(crate::numbering::is_almost_classical_diagram(&v));
        assert!(!crate::numbering::is_almost_classical_diagram(&catalog("vtrefoil").unwrap()));
        assert_eq!(catalog("trefoil").unwrap().mirror().normalized(), catalog("trefoil_mirror").unwrap().normalized());
    }
}
