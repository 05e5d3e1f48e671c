//! Seeded random test instances: braid closures, a chosen crossing, and an
//! optional virtualization.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::codec::braid::{BraidGen, BraidWord};
use crate::error::Result;
use crate::model::{CrossingId, Diagram};

/// Upper bound on classical crossings of generated instances.
pub const MAX_INSTANCE_CROSSINGS: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    /// Classical braid generators only.
    Classical,
    /// A classical closure with one crossing virtualized.
    Virtualized,
    /// Words mixing classical and virtual generators.
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Instance {
    #[serde(serialize_with = "as_text")]
    pub word: BraidWord,
    /// Crossing of the closure replaced by a virtual one, if any.
    pub virtualized: Option<CrossingId>,
    /// Classical crossing at which skein relations are checked.
    pub crossing: CrossingId,
}

fn as_text<S: Serializer>(w: &BraidWord, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(w)
}

impl Instance {
    pub fn diagram(&self) -> Result<Diagram> {
        let d = self.word.closure();
        match self.virtualized {
            Some(c) => d.virtualize(c),
            None => Ok(d),
        }
    }
}

fn random_word(rng: &mut ChaCha8Rng, kind: InstanceKind) -> BraidWord {
    let strands = rng.gen_range(2..=4u32);
    let min = if kind == InstanceKind::Classical { 1 } else { 2 };
    let classical = rng.gen_range(min..=MAX_INSTANCE_CROSSINGS);
    let virtuals = if kind == InstanceKind::Mixed { rng.gen_range(0..=4) } else { 0 };
    let mut word = Vec::with_capacity(classical + virtuals);
    for _ in 0..classical {
        let i = rng.gen_range(1..strands);
        word.push(if rng.gen_bool(0.5) { BraidGen::Pos(i) } else { BraidGen::Neg(i) });
    }
    for _ in 0..virtuals {
        word.push(BraidGen::Virtual(rng.gen_range(1..strands)));
    }
    word.shuffle(rng);
    BraidWord { strands, word }
}

fn classical_ids(w: &BraidWord) -> Vec<CrossingId> {
    w.word
        .iter()
        .enumerate()
        .filter(|(_, g)| !matches!(g, BraidGen::Virtual(_)))
        .map(|(k, _)| CrossingId(k as u32 + 1))
        .collect()
}

/// `count` instances of `kind`, identical for identical `seed`.
pub fn random_instances(seed: u64, count: usize, kind: InstanceKind) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let word = random_word(&mut rng, kind);
            let mut ids = classical_ids(&word);
            let virtualized = match kind {
                InstanceKind::Virtualized => {
                    let k = rng.gen_range(0..ids.len());
                    Some(ids.swap_remove(k))
                }
                _ => None,
            };
            let crossing = *ids.choose(&mut rng).expect("classical crossing");
            Instance { word, virtualized, crossing }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_in_bounds() {
        for kind in [InstanceKind::Classical, InstanceKind::Virtualized, InstanceKind::Mixed] {
            let a = random_instances(7, 30, kind);
            assert_eq!(a, random_instances(7, 30, kind));
            assert_ne!(a, random_instances(8, 30, kind));
            for inst in &a {
                let d = inst.diagram().unwrap();
                assert!(d.is_valid());
                assert!(d.classical_count() <= MAX_INSTANCE_CROSSINGS);
                assert!(d.crossing(inst.crossing).unwrap().is_classical());
                if kind == InstanceKind::Classical {
                    assert_eq!(d.virtual_count(), 0);
                }
            }
        }
    }
}
