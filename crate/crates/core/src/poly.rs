//! Exact sparse Laurent polynomials in `A` with monomials in `d_1, d_2, ...`.
//!
//! Coefficients are arbitrary precision, so no state sum can overflow.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// A monomial `A^a * d_{i1}^{e1} * d_{i2}^{e2} * ...`.
///
/// The d-part is kept sorted by index with strictly positive powers, so the
/// derived ordering is A-exponent first, then the d-part lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    a: i32,
    d: Vec<(u32, u32)>,
}

impl Monomial {
    pub fn new(a: i32, d: &[(u32, u32)]) -> Self {
        let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
        for &(i, e) in d {
            if e > 0 {
                *acc.entry(i).or_default() += e;
            }
        }
        Monomial { a, d: acc.into_iter().collect() }
    }

    pub fn a_exp(&self) -> i32 {
        self.a
    }

    /// Pairs `(index, power)` with increasing index.
    pub fn d_part(&self) -> &[(u32, u32)] {
        &self.d
    }

    pub fn is_d_free(&self) -> bool {
        self.d.is_empty()
    }

    pub fn contains_d(&self, index: u32) -> bool {
        self.d.iter().any(|&(i, _)| i == index)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut d = Vec::with_capacity(self.d.len() + other.d.len());
        let (mut x, mut y) = (self.d.iter().peekable(), other.d.iter().peekable());
        loop {
            match (x.peek(), y.peek()) {
                (Some(&&(i, e)), Some(&&(j, f))) => {
                    if i == j {
                        d.push((i, e + f));
                        x.next();
                        y.next();
                    } else if i < j {
                        d.push((i, e));
                        x.next();
                    } else {
                        d.push((j, f));
                        y.next();
                    }
                }
                (Some(&&t), None) => {
                    d.push(t);
                    x.next();
                }
                (None, Some(&&t)) => {
                    d.push(t);
                    y.next();
                }
                (None, None) => break,
            }
        }
        Monomial { a: self.a + other.a, d }
    }
}

/// Element of `Z[A^{±1}, d_1, d_2, ...]` in canonical sparse form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        MultiPoly::mono(0, &[], 1)
    }

    /// `coeff * A^a * Π d_i^e`.
    pub fn mono(a: i32, d: &[(u32, u32)], coeff: i64) -> Self {
        MultiPoly::from_monomial(Monomial::new(a, d), BigInt::from(coeff))
    }

    pub fn from_monomial(m: Monomial, coeff: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        MultiPoly { terms }
    }

    /// `A^k`.
    pub fn a_pow(k: i32) -> Self {
        MultiPoly::mono(k, &[], 1)
    }

    /// The variable `d_i`.
    pub fn d(i: u32) -> Self {
        MultiPoly::mono(0, &[(i, 1)], 1)
    }

    /// The loop value `-A^2 - A^{-2}`.
    pub fn loop_value() -> Self {
        -(MultiPoly::a_pow(2) + MultiPoly::a_pow(-2))
    }

    /// Builds a polynomial from `(coeff, a_exp, d_part)` triples.
    pub fn from_terms(terms: &[(i64, i32, &[(u32, u32)])]) -> Self {
        let mut p = MultiPoly::zero();
        for &(c, a, d) in terms {
            p.add_term(Monomial::new(a, d), BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_d_free(&self) -> bool {
        self.terms.keys().all(Monomial::is_d_free)
    }

    /// Indices of all d-variables that occur.
    pub fn d_indices(&self) -> BTreeSet<u32> {
        self.terms.keys().flat_map(|m| m.d.iter().map(|&(i, _)| i)).collect()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = MultiPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a unit `±A^k`; `None` for anything else.
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next()?;
        if !m.is_d_free() || !c.abs().is_one() {
            return None;
        }
        Some(MultiPoly::from_monomial(Monomial::new(-m.a, &[]), c.clone()))
    }

    /// Integer power, negative exponents allowed for units.
    pub fn powi(&self, n: i32) -> Option<Self> {
        if n >= 0 {
            Some(self.pow(n as u32))
        } else {
            Some(self.unit_inverse()?.pow(n.unsigned_abs()))
        }
    }

    /// Sets every `d_i` to 1.
    pub fn substitute_d_one(&self) -> Self {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(Monomial::new(m.a, &[]), c.clone());
        }
        out
    }

    /// `A ↦ A^{-1}`, d-parts unchanged.
    pub fn invert_a(&self) -> Self {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(Monomial { a: -m.a, d: m.d.clone() }, c.clone());
        }
        out
    }

    /// A-exponents of the terms without any d-variable.
    pub fn exp_set(&self) -> BTreeSet<i32> {
        self.terms.keys().filter(|m| m.is_d_free()).map(|m| m.a).collect()
    }

    /// A-exponents of the terms containing `d_index`.
    pub fn exp_set_d(&self, d_index: u32) -> BTreeSet<i32> {
        self.terms.keys().filter(|m| m.contains_d(d_index)).map(|m| m.a).collect()
    }

    /// Human-oriented rendering, e.g. `A^8 - A^4 + 1 - A^2*d1`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors = Vec::new();
            match m.a {
                0 => {}
                1 => factors.push("A".to_string()),
                a => factors.push(format!("A^{a}")),
            }
            for &(i, e) in &m.d {
                if e == 1 {
                    factors.push(format!("d{i}"));
                } else {
                    factors.push(format!("d{i}^{e}"));
                }
            }
            if factors.is_empty() {
                out.push_str(&mag.to_string());
            } else {
                if !mag.is_one() {
                    out.push_str(&format!("{mag}*"));
                }
                out.push_str(&factors.join("*"));
            }
        }
        out
    }

    /// Coefficient as `i64` when it fits.
    pub fn coeff_i64(c: &BigInt) -> Option<i64> {
        c.to_i64()
    }
}

/// Canonical form `c*A^k*d1^e1*...` joined by `+`, ascending order; zero is `0`.
impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "{c}*A^{}", m.a)?;
            for &(i, e) in &m.d {
                write!(f, "*d{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(mut self, rhs: MultiPoly) -> MultiPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&MultiPoly> for MultiPoly {
    fn add_assign(&mut self, rhs: &MultiPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl AddAssign for MultiPoly {
    fn add_assign(&mut self, rhs: MultiPoly) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(mut self) -> MultiPoly {
        for c in self.terms.values_mut() {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -self.clone()
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: MultiPoly) -> MultiPoly {
        &self - &rhs
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &'a MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: MultiPoly) -> MultiPoly {
        &self * &rhs
    }
}

impl std::iter::Sum for MultiPoly {
    fn sum<I: Iterator<Item = MultiPoly>>(iter: I) -> Self {
        iter.fold(MultiPoly::zero(), |acc, p| acc + p)
    }
}

impl FromStr for MultiPoly {
    type Err = Error;

    /// Accepts the canonical form as well as ordinary notation such as
    /// `A^8-A^4+1+(-A^2+A^{-2})d_1`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let normalized: Vec<char> =
            s.chars().map(|c| if c == '−' { '-' } else { c }).filter(|c| !c.is_whitespace()).collect();
        let mut p = PolyParser { src: &normalized, pos: 0 };
        let out = p.expr()?;
        if p.pos != normalized.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(out)
    }
}

struct PolyParser<'a> {
    src: &'a [char],
    pos: usize,
}

impl PolyParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: format!("polynomial: {msg}") }
    }

    fn peek(&self) -> Option<char> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, Error> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc += self.term()?;
            } else if self.peek() == Some('-') {
                // the sign is consumed by term()
                acc += self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, Error> {
        let mut negate = false;
        loop {
            if self.eat('-') {
                negate = !negate;
            } else if !self.eat('+') {
                break;
            }
        }
        let mut acc = self.factor()?;
        loop {
            // `*` or juxtaposition
            let implicit = matches!(self.peek(), Some(c) if c == 'A' || c == 'd' || c == '(' || c.is_ascii_digit());
            if !self.eat('*') && !implicit {
                break;
            }
            acc = &acc * &self.factor()?;
        }
        Ok(if negate { -acc } else { acc })
    }

    fn factor(&mut self) -> Result<MultiPoly, Error> {
        let base = match self.peek() {
            Some('A') => {
                self.pos += 1;
                MultiPoly::a_pow(1)
            }
            Some('d') => {
                self.pos += 1;
                self.eat('_');
                let braced = self.eat('{');
                let i = self.unsigned()?;
                if braced && !self.eat('}') {
                    return Err(self.err("expected '}'"));
                }
                if i == 0 {
                    return Err(self.err("d-indices start at 1"));
                }
                MultiPoly::d(i as u32)
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                inner
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    self.pos += 1;
                }
                let digits: String = self.src[start..self.pos].iter().collect();
                let n: BigInt = digits.parse().map_err(|_| self.err("bad integer"))?;
                MultiPoly::from_monomial(Monomial::default(), n)
            }
            _ => return Err(self.err("expected A, d_i, integer or '('")),
        };
        if self.eat('^') {
            let braced = self.eat('{');
            let neg = self.eat('-');
            let e = self.unsigned()? as i64;
            if braced && !self.eat('}') {
                return Err(self.err("expected '}'"));
            }
            let e = if neg { -e } else { e };
            let e = i32::try_from(e).map_err(|_| self.err("exponent out of range"))?;
            return base.powi(e).ok_or_else(|| self.err("negative power of a non-unit"));
        }
        Ok(base)
    }

    fn unsigned(&mut self) -> Result<u64, Error> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits: String = self.src[start..self.pos].iter().collect();
        digits.parse().map_err(|_| self.err("integer out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> MultiPoly {
        s.parse().unwrap()
    }

    #[test]
    fn unit_times_inverse() {
        assert_eq!(&MultiPoly::a_pow(3) * &MultiPoly::a_pow(-3), MultiPoly::one());
    }

    #[test]
    fn cancelling_d_terms() {
        let x = &(&MultiPoly::loop_value() * &MultiPoly::d(1)) + &p("(A^2+A^-2)*d1");
        assert!(x.is_zero());
        assert_eq!(x.to_string(), "0");
    }

    #[test]
    fn figure_eight_left_side_expansion() {
        let lhs = &(&p("A^6-d1") * &p("A^8-A^4+1-A^-4+A^-8")) + &(&p("-A^-6+d1") * &MultiPoly::one());
        let expected = p("A^14-A^10+A^6-A^2+A^-2-A^-6+(-A^8+A^4+A^-4-A^-8)d1");
        assert_eq!(lhs, expected);
        assert_eq!(lhs.len(), 10);
    }

    #[test]
    fn substitute_d() {
        assert_eq!(p("A^8-A^4+1+(-A^2+A^{-2})d_1").substitute_d_one(), p("A^8-A^4+1-A^2+A^-2"));
        let q = p("A^4 - 1");
        assert_eq!(q.substitute_d_one(), q);
        assert!(p("d1*d2 - 1").substitute_d_one().is_zero());
    }

    #[test]
    fn exponent_sets() {
        let x = p("A^8-A^4+1+(-A^2+A^{-2})d_1");
        assert_eq!(x.exp_set().into_iter().collect::<Vec<_>>(), vec![0, 4, 8]);
        assert_eq!(x.exp_set_d(1).into_iter().collect::<Vec<_>>(), vec![-2, 2]);
        let one = MultiPoly::one();
        assert_eq!(one.exp_set().into_iter().collect::<Vec<_>>(), vec![0]);
        assert!(one.exp_set_d(1).is_empty());
        let m = p("A*d1*d2");
        assert!(m.exp_set().is_empty());
        assert_eq!(m.exp_set_d(1).into_iter().collect::<Vec<_>>(), vec![1]);
        assert_eq!(m.exp_set_d(2).into_iter().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn canonical_text() {
        let x = p("A^8-A^4+1+(-A^2+A^{-2})d_1");
        assert_eq!(x.to_string(), "1*A^-2*d1^1+1*A^0+-1*A^2*d1^1+-1*A^4+1*A^8");
        assert_eq!(p(&x.to_string()), x);
        assert_eq!(p("d1^2*d3").to_string(), "1*A^0*d1^2*d3^1");
    }

    #[test]
    fn pretty_form() {
        assert_eq!(p("A^8-A^4+1-A^-4+A^-8").pretty(), "A^8 - A^4 + 1 - A^-4 + A^-8");
        assert_eq!(p("-2*A*d1^2").pretty(), "-2*A*d1^2");
    }

    #[test]
    fn powers() {
        let m = p("-A^3");
        assert_eq!(m.powi(-2).unwrap(), p("A^-6"));
        assert_eq!(m.powi(3).unwrap(), p("-A^9"));
        assert!(p("A+1").powi(-1).is_none());
    }

    #[test]
    fn parse_errors() {
        assert!("A^".parse::<MultiPoly>().is_err());
        assert!("(A+1".parse::<MultiPoly>().is_err());
        assert!("d0".parse::<MultiPoly>().is_err());
        assert!("(A+1)^-1".parse::<MultiPoly>().is_err());
    }

    fn arb_poly() -> impl Strategy<Value = MultiPoly> {
        let term = (-3i64..=3, -6i32..=6, proptest::collection::vec((1u32..=3, 1u32..=2), 0..=2));
        proptest::collection::vec(term, 0..5).prop_map(|ts| {
            let mut p = MultiPoly::zero();
            for (c, a, d) in ts {
                p.add_term(Monomial::new(a, &d), BigInt::from(c));
            }
            p
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(x in arb_poly(), y in arb_poly(), z in arb_poly()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert!((&x - &x).is_zero());
        }

        #[test]
        fn substitution_is_a_ring_map(x in arb_poly(), y in arb_poly()) {
            prop_assert_eq!((&x * &y).substitute_d_one(), &x.substitute_d_one() * &y.substitute_d_one());
            prop_assert_eq!((&x + &y).substitute_d_one(), &x.substitute_d_one() + &y.substitute_d_one());
        }

        #[test]
        fn canonical_text_round_trips(x in arb_poly()) {
            let text = x.to_string();
            prop_assert_eq!(text.parse::<MultiPoly>().unwrap(), x.clone());
            prop_assert_eq!(x.pretty().parse::<MultiPoly>().unwrap(), x);
        }
    }
}
