//! Canonical JSON: object keys sorted, polynomials as term arrays.
//!
//! A polynomial is `[{"A": k, "c": coeff, "d": {"1": e1, ...}}, ...]` in
//! ascending monomial order. Coefficients that do not fit in `i64` are
//! written as decimal strings.

use serde::ser::{SerializeMap, SerializeSeq};
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::poly::MultiPoly;

struct Term<'a>(&'a crate::poly::Monomial, &'a num_bigint::BigInt);

impl Serialize for Term<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(3))?;
        m.serialize_entry("A", &self.0.a_exp())?;
        match MultiPoly::coeff_i64(self.1) {
            Some(c) => m.serialize_entry("c", &c)?,
            None => m.serialize_entry("c", &self.1.to_string())?,
        }
        let d: std::collections::BTreeMap<String, u32> =
            self.0.d_part().iter().map(|&(i, e)| (i.to_string(), e)).collect();
        m.serialize_entry("d", &d)?;
        m.end()
    }
}

pub fn serialize_poly<S: Serializer>(p: &MultiPoly, s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(p.len()))?;
    for (m, c) in p.terms() {
        seq.serialize_element(&Term(m, c))?;
    }
    seq.end()
}

pub fn poly_json(p: &MultiPoly) -> Value {
    serialize_poly(p, serde_json::value::Serializer).expect("polynomial serializes")
}

/// Serializes through `Value`, whose maps keep keys sorted.
pub fn to_canonical_value<T: Serialize + ?Sized>(v: &T) -> Value {
    serde_json::to_value(v).expect("value serializes")
}

/// Compact canonical JSON text.
pub fn emit_json<T: Serialize + ?Sized>(v: &T) -> String {
    to_canonical_value(v).to_string()
}
