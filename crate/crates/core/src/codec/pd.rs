//! Virtual PD code.
//!
//! Records are separated by `;`:
//!
//! * `X[o_in,o_out,u_in,u_out] +` or `... -`: classical crossing;
//! * `V[a_in,a_out,b_in,b_out]`: virtual crossing, strands `a` and `b`;
//! * `L[e]`: a component without crossings.
//!
//! Integers label edges; each label occurs once at an out-port and once at
//! an in-port. Crossings get ids `1, 2, ...` in record order.
//!
//! ```text
//! X[6,1,3,4] +; X[4,5,1,2] +; X[2,3,5,6] +
//! ```

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::model::{Crossing, CrossingKind, Diagram, EdgeId, Sign};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.into() }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{}'", c as char)))
        }
    }

    fn number(&mut self) -> Result<u32> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected edge label"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::Syntax { pos: start, msg: "edge label out of range".into() })
    }

    fn labels(&mut self, n: usize) -> Result<Vec<u32>> {
        self.expect(b'[')?;
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            if k > 0 {
                self.expect(b',')?;
            }
            out.push(self.number()?);
        }
        self.expect(b']')?;
        Ok(out)
    }
}

pub fn parse_pd(text: &str) -> Result<Diagram> {
    let normalized = text.replace('−', "-");
    let mut cur = Cursor { src: normalized.as_bytes(), pos: 0 };
    let mut crossings = Vec::new();
    let mut free = Vec::new();
    loop {
        cur.skip_ws();
        if cur.pos >= cur.src.len() {
            break;
        }
        let tag = cur.src[cur.pos];
        cur.pos += 1;
        match tag {
            b'X' => {
                let l = cur.labels(4)?;
                cur.skip_ws();
                let sign = match cur.src.get(cur.pos) {
                    Some(b'+') => Sign::Positive,
                    Some(b'-') => Sign::Negative,
                    _ => return Err(cur.err("expected crossing sign '+' or '-'")),
                };
                cur.pos += 1;
                let id = crossings.len() as u32 + 1;
                crossings.push(Crossing::classical(id, sign, [l[0], l[1], l[2], l[3]]));
            }
            b'V' => {
                let l = cur.labels(4)?;
                let id = crossings.len() as u32 + 1;
                crossings.push(Crossing::virtual_(id, [l[0], l[1], l[2], l[3]]));
            }
            b'L' => {
                let l = cur.labels(1)?;
                free.push(EdgeId(l[0]));
            }
            _ => {
                cur.pos -= 1;
                return Err(cur.err("expected record X[..], V[..] or L[..]"));
            }
        }
        cur.skip_ws();
        match cur.src.get(cur.pos) {
            None => break,
            Some(b';') => cur.pos += 1,
            Some(_) => return Err(cur.err("expected ';'")),
        }
    }

    let mut counts: BTreeMap<u32, usize> = BTreeMap::new();
    for c in &crossings {
        for p in c.ports {
            *counts.entry(p.0).or_default() += 1;
        }
    }
    for e in &free {
        *counts.entry(e.0).or_default() += 2;
    }
    if let Some((&label, &count)) = counts.iter().find(|(_, &c)| c > 2) {
        return Err(Error::LabelArity { label, count });
    }
    if let Some((&label, _)) = counts.iter().find(|(_, &c)| c == 1) {
        return Err(Error::InvalidDiagram(format!("open component at edge label {label}")));
    }
    Diagram::checked(crossings, free)
}

pub fn emit_pd(d: &Diagram) -> String {
    let mut records: Vec<String> = d
        .crossings()
        .iter()
        .map(|c| {
            let [a, b, x, y] = c.ports;
            match c.kind {
                CrossingKind::Classical(s) => format!("X[{a},{b},{x},{y}] {s}"),
                CrossingKind::Virtual => format!("V[{a},{b},{x},{y}]"),
            }
        })
        .collect();
    records.extend(d.free_loops().iter().map(|e| format!("L[{e}]")));
    records.join("; ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_crossing_code() {
        let d = parse_pd("X[1,2,4,1] + ; X[3,4,2,3] +").unwrap();
        assert!(d.is_valid());
        assert_eq!(d.classical_count(), 2);
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse_pd("X[7,7,2,2] +; X[7,1,1,3] +"),
            Err(Error::LabelArity { label: 7, count: 3 })
        );
        assert!(matches!(parse_pd("X[1,2,2,3] +"), Err(Error::InvalidDiagram(_))));
        match parse_pd("X[1,2,2,1] *") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 11),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_pd("Q[1]"), Err(Error::Syntax { pos: 0, .. })));
        // both ends at out-ports
        assert!(matches!(parse_pd("X[1,2,1,2] +"), Err(Error::InvalidDiagram(_))));
    }

    #[test]
    fn round_trip() {
        let text = "X[6,1,5,3] +; X[1,2,3,4] +; V[2,5,4,6]; L[9]";
        let d = parse_pd(text).unwrap();
        assert_eq!(emit_pd(&d), text);
        assert_eq!(parse_pd(&emit_pd(&d)).unwrap(), d);
    }
}
