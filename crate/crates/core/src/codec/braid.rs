//! Virtual braid words and their closures.
//!
//! Grammar: `s=<n>:` followed by tokens `s<i>` (σ_i), `S<i>` (σ_i^{-1}) and
//! `v<i>` (virtual), `1 <= i < n`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::{Crossing, Diagram, EdgeId, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BraidGen {
    Pos(u32),
    Neg(u32),
    Virtual(u32),
}

impl BraidGen {
    pub fn index(self) -> u32 {
        match self {
            BraidGen::Pos(i) | BraidGen::Neg(i) | BraidGen::Virtual(i) => i,
        }
    }
}

impl fmt::Display for BraidGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidGen::Pos(i) => write!(f, "s{i}"),
            BraidGen::Neg(i) => write!(f, "S{i}"),
            BraidGen::Virtual(i) => write!(f, "v{i}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    pub strands: u32,
    pub word: Vec<BraidGen>,
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s={}:", self.strands)?;
        for g in &self.word {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let trimmed = text.trim_start();
        let lead = text.len() - trimmed.len();
        let rest = trimmed
            .strip_prefix("s=")
            .ok_or(Error::Syntax { pos: lead, msg: "expected 's=<n>:' prefix".into() })?;
        let colon = rest.find(':').ok_or(Error::Syntax { pos: lead + 2, msg: "expected ':'".into() })?;
        let strands: u32 = rest[..colon]
            .trim()
            .parse()
            .map_err(|_| Error::Syntax { pos: lead + 2, msg: "bad strand count".into() })?;
        if strands == 0 {
            return Err(Error::Braid("braid on 0 strands".into()));
        }
        let mut word = Vec::new();
        let body_start = lead + 2 + colon + 1;
        let mut offset = body_start;
        for tok in rest[colon + 1..].split_inclusive(char::is_whitespace) {
            let t = tok.trim_end();
            if !t.is_empty() {
                let (kind, digits) = t.split_at(1);
                let i: u32 = digits
                    .parse()
                    .map_err(|_| Error::Syntax { pos: offset, msg: format!("bad generator `{t}`") })?;
                let g = match kind {
                    "s" => BraidGen::Pos(i),
                    "S" => BraidGen::Neg(i),
                    "v" => BraidGen::Virtual(i),
                    _ => return Err(Error::Syntax { pos: offset, msg: format!("bad generator `{t}`") }),
                };
                if i == 0 || i >= strands {
                    return Err(Error::Braid(format!("generator index {i} out of range for {strands} strands")));
                }
                word.push(g);
            }
            offset += tok.len();
        }
        Ok(BraidWord { strands, word })
    }
}

impl BraidWord {
    /// Closure of the braid. Crossing `k` of the word gets id `k + 1`;
    /// untouched strands close up into free loops.
    pub fn closure(&self) -> Diagram {
        let s = self.strands as usize;
        let init: Vec<u32> = (1..=s as u32).collect();
        let mut cur = init.clone();
        let mut next = s as u32 + 1;
        let mut crossings = Vec::with_capacity(self.word.len());
        for (k, g) in self.word.iter().enumerate() {
            let i = g.index() as usize;
            let (left, right) = (cur[i - 1], cur[i]);
            // the left strand moves right (north-east), the right one north-west
            let (to_right, to_left) = (next, next + 1);
            next += 2;
            let id = k as u32 + 1;
            crossings.push(match g {
                BraidGen::Pos(_) => Crossing::classical(id, Sign::Positive, [left, to_right, right, to_left]),
                BraidGen::Neg(_) => Crossing::classical(id, Sign::Negative, [right, to_left, left, to_right]),
                BraidGen::Virtual(_) => Crossing::virtual_(id, [left, to_right, right, to_left]),
            });
            cur[i] = to_right;
            cur[i - 1] = to_left;
        }
        let mut free = Vec::new();
        for p in 0..s {
            if cur[p] == init[p] {
                free.push(EdgeId(init[p]));
                continue;
            }
            for c in &mut crossings {
                for port in &mut c.ports {
                    if port.0 == cur[p] {
                        *port = EdgeId(init[p]);
                    }
                }
            }
        }
        Diagram::new(crossings, free)
    }
}

pub fn parse_braid(text: &str) -> Result<Diagram> {
    Ok(text.parse::<BraidWord>()?.closure())
}
