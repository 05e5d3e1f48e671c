//! Inputs shared by the benchmarks.

use vskein_core::{random_instances, Diagram, InstanceKind};

/// Closures of seeded random braids with exactly `crossings` classical
/// crossings where available.
pub fn diagrams_with(crossings: usize, seed: u64, count: usize) -> Vec<Diagram> {
    random_instances(seed, 20 * count, InstanceKind::Mixed)
        .into_iter()
        .filter_map(|i| i.diagram().ok())
        .filter(|d| d.classical_count() == crossings)
        .take(count)
        .collect()
}
