//! Fixtures shared by the benchmarks.

use pollard::search::{Mode, SearchConfig};
use pollard::{GSet, GroupSpec, SubgroupLattice};
use std::sync::Arc;

pub struct Fixture {
    pub name: &'static str,
    pub group: Arc<GroupSpec>,
    pub lattice: SubgroupLattice,
    pub a: GSet,
    pub b: GSet,
}

fn interval(g: &Arc<GroupSpec>, len: usize, step: usize) -> GSet {
    GSet::from_indices(g, (0..len).map(|i| i * step % g.order())).expect("in range")
}

/// Instances of increasing order: interval-like operands in a cyclic group and
/// coset-structured ones in a product group.
pub fn fixtures() -> Vec<Fixture> {
    [("Z12", 6, 4, 1), ("Z2xZ6", 6, 4, 3), ("Z64", 24, 16, 1), ("Z4xZ4xZ4", 24, 16, 5), ("Z257", 90, 60, 1)]
        .into_iter()
        .map(|(name, la, lb, step)| {
            let group = GroupSpec::parse(name).expect("valid group");
            let lattice = SubgroupLattice::new(&group).expect("lattice fits");
            Fixture {
                name,
                a: interval(&group, la, step),
                b: interval(&group, lb, step + 1),
                group,
                lattice,
            }
        })
        .collect()
}

/// A small exhaustive sweep over a handful of groups.
pub fn small_sweep(mode: Mode) -> SearchConfig {
    SearchConfig {
        groups: ["Z6", "Z7", "Z2xZ4", "Z8"].map(String::from).to_vec(),
        mode,
        ..SearchConfig::default()
    }
}
