//! Signed Gauss codes and their lane-routed realization.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{Crossing, Diagram, EdgeId, Sign, O_IN, O_OUT, U_IN, U_OUT};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussToken {
    pub over: bool,
    pub crossing: u32,
    pub sign: Sign,
}

impl fmt::Display for GaussToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", if self.over { 'O' } else { 'U' }, self.crossing, self.sign)
    }
}

/// One cyclic word per component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedGaussCode {
    pub components: Vec<Vec<GaussToken>>,
}

impl fmt::Display for SignedGaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self
            .components
            .iter()
            .map(|w| w.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        write!(f, "{}", words.join(" / "))
    }
}

/// Whitespace-separated `O<k><±>` / `U<k><±>` tokens, components separated
/// by `/`.
pub fn parse_gauss(text: &str) -> Result<SignedGaussCode> {
    let text = text.replace('−', "-");
    let mut components = vec![Vec::new()];
    let bytes = text.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() {
        let c = bytes[pos];
        if c.is_ascii_whitespace() {
            pos += 1;
            continue;
        }
        if c == b'/' {
            components.push(Vec::new());
            pos += 1;
            continue;
        }
        let start = pos;
        let over = match c {
            b'O' => true,
            b'U' => false,
            _ => return Err(Error::Syntax { pos, msg: "expected 'O', 'U' or '/'".into() }),
        };
        pos += 1;
        let digits = pos;
        while pos < bytes.len() && bytes[pos].is_ascii_digit() {
            pos += 1;
        }
        if digits == pos {
            return Err(Error::Syntax { pos, msg: "expected crossing number".into() });
        }
        let crossing: u32 = text[digits..pos]
            .parse()
            .map_err(|_| Error::Syntax { pos: digits, msg: "crossing number out of range".into() })?;
        let sign = match bytes.get(pos) {
            Some(b'+') => Sign::Positive,
            Some(b'-') => Sign::Negative,
            _ => return Err(Error::Syntax { pos, msg: "expected sign '+' or '-'".into() }),
        };
        pos += 1;
        if pos < bytes.len() && !bytes[pos].is_ascii_whitespace() && bytes[pos] != b'/' {
            return Err(Error::Syntax { pos: start, msg: "malformed token".into() });
        }
        components.last_mut().expect("component").push(GaussToken { over, crossing, sign });
    }

    let mut seen: BTreeMap<u32, (usize, usize, Sign)> = BTreeMap::new();
    for t in components.iter().flatten() {
        let e = seen.entry(t.crossing).or_insert((0, 0, t.sign));
        if e.2 != t.sign {
            return Err(Error::Gauss(format!("sign mismatch at crossing {}", t.crossing)));
        }
        if t.over {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }
    for (k, (o, u, _)) in seen {
        if o != 1 || u != 1 {
            return Err(Error::Gauss(format!("crossing {k} needs exactly one O and one U, found {o} and {u}")));
        }
    }
    Ok(SignedGaussCode { components })
}

/// Lane assignment for the wires of a realization.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LaneOrder {
    /// Wire `k` runs at height `k + 1`.
    Ascending,
    /// Wire `k` runs at height `W - k`.
    Descending,
}

/// Realization with ascending lanes.
pub fn realize_gauss(g: &SignedGaussCode) -> Diagram {
    realize_gauss_with(g, LaneOrder::Ascending)
}

/// Places the classical crossings on a line in order of first appearance;
/// every wire between consecutive passes leaves its tail port upward, runs
/// horizontally in its own lane and comes down to its head port. Each
/// transverse meeting of two wires becomes a virtual crossing. Classical
/// crossing ids are the code's crossing numbers; virtual crossings are
/// numbered after the largest of them.
pub fn realize_gauss_with(g: &SignedGaussCode, lanes: LaneOrder) -> Diagram {
    let mut order: Vec<u32> = Vec::new();
    for t in g.components.iter().flatten() {
        if !order.contains(&t.crossing) {
            order.push(t.crossing);
        }
    }
    let place: HashMap<u32, i64> = order.iter().enumerate().map(|(k, &c)| (c, k as i64)).collect();
    // left-to-right port order on the line alternates the two strands
    let x_of = |crossing: u32, slot: usize| -> i64 {
        let offset = match slot {
            O_IN => 0,
            U_IN => 1,
            O_OUT => 2,
            _ => 3,
        };
        4 * place[&crossing] + offset
    };

    struct Wire {
        tail: (u32, usize),
        head: (u32, usize),
        x0: i64,
        x1: i64,
        h: i64,
    }
    let mut wires = Vec::new();
    let mut free = Vec::new();
    for word in &g.components {
        if word.is_empty() {
            free.push(());
            continue;
        }
        for (k, t) in word.iter().enumerate() {
            let n = &word[(k + 1) % word.len()];
            let tail = (t.crossing, if t.over { O_OUT } else { U_OUT });
            let head = (n.crossing, if n.over { O_IN } else { U_IN });
            wires.push(Wire { tail, head, x0: x_of(tail.0, tail.1), x1: x_of(head.0, head.1), h: 0 });
        }
    }
    let total = wires.len() as i64;
    for (k, w) in wires.iter_mut().enumerate() {
        w.h = match lanes {
            LaneOrder::Ascending => k as i64 + 1,
            LaneOrder::Descending => total - k as i64,
        };
    }

    // (position along wire, virtual crossing index, strand slot base)
    let mut events: Vec<Vec<(i64, usize, usize)>> = vec![Vec::new(); wires.len()];
    let mut vcount = 0;
    for (j, low) in wires.iter().enumerate() {
        for (k, high) in wires.iter().enumerate() {
            if high.h <= low.h {
                continue;
            }
            let (lo, hi) = (low.x0.min(low.x1), low.x0.max(low.x1));
            for (x, rising) in [(high.x0, true), (high.x1, false)] {
                if lo < x && x < hi {
                    let along_low = low.h + (x - low.x0).abs();
                    let span = (high.x1 - high.x0).abs();
                    let along_high = if rising { low.h } else { 2 * high.h + span - low.h };
                    events[j].push((along_low, vcount, 0));
                    events[k].push((along_high, vcount, 2));
                    vcount += 1;
                }
            }
        }
    }

    let first_virtual = order.iter().copied().max().unwrap_or(0) + 1;
    let mut next_label = wires.len() as u32 + 1;
    let mut vports = vec![[EdgeId(0); 4]; vcount];
    let mut classical: HashMap<u32, [EdgeId; 4]> = HashMap::new();
    for (k, w) in wires.iter().enumerate() {
        let mut label = EdgeId(k as u32 + 1);
        classical.entry(w.tail.0).or_insert([EdgeId(0); 4])[w.tail.1] = label;
        events[k].sort_unstable();
        for &(_, v, base) in &events[k] {
            vports[v][base] = label;
            label = EdgeId(next_label);
            next_label += 1;
            vports[v][base + 1] = label;
        }
        classical.entry(w.head.0).or_insert([EdgeId(0); 4])[w.head.1] = label;
    }

    let signs: HashMap<u32, Sign> = g.components.iter().flatten().map(|t| (t.crossing, t.sign)).collect();
    let mut crossings: Vec<Crossing> = order
        .iter()
        .map(|&c| Crossing::classical(c, signs[&c], classical[&c].map(|e| e.0)))
        .collect();
    crossings.extend(vports.iter().enumerate().map(|(v, p)| Crossing::virtual_(first_virtual + v as u32, p.map(|e| e.0))));
    let free_loops = free
        .iter()
        .map(|_| {
            next_label += 1;
            EdgeId(next_label - 1)
        })
        .collect();
    Diagram::new(crossings, free_loops)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let v = parse_gauss("O1+ O2+ U1+ U2+").unwrap();
        assert_eq!(v.components.len(), 1);
        assert_eq!(v.to_string(), "O1+ O2+ U1+ U2+");
        let t = parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+").unwrap();
        assert_eq!(t.components[0].len(), 6);
        assert_eq!(parse_gauss("O1+ U1-"), Err(Error::Gauss("sign mismatch at crossing 1".into())));
        assert!(matches!(parse_gauss("O1+ O1+"), Err(Error::Gauss(_))));
        assert!(matches!(parse_gauss("O1+ X2+"), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse_gauss("O1"), Err(Error::Syntax { .. })));
        let h = parse_gauss("O1+ U2+ / U1+ O2+").unwrap();
        assert_eq!(h.components.len(), 2);
    }

    #[test]
    fn realizations_are_valid() {
        for code in ["O1+ O2+ U1+ U2+", "O1+ U2+ O3+ U1+ O2+ U3+", "O1+ U1+", "O1+ U2+ / U1+ O2+", "O1- U1- / "] {
            let g = parse_gauss(code).unwrap();
            for lanes in [LaneOrder::Ascending, LaneOrder::Descending] {
                let d = realize_gauss_with(&g, lanes);
                assert!(d.is_valid(), "{code}: {:?}", d.validate());
                assert_eq!(d.components(), g.components.len(), "{code}");
                assert_eq!(d.classical_count(), g.components.iter().flatten().count() / 2);
            }
        }
    }

    #[test]
    fn virtual_trefoil_needs_a_virtual_crossing() {
        let d = realize_gauss(&parse_gauss("O1+ O2+ U1+ U2+").unwrap());
        assert!(d.virtual_count() >= 1);
    }
}
