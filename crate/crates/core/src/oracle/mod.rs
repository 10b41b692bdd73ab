//! Explicit `G₁T`-modules for `sl2` and `sl3` over `F_p`, and their socle series.

pub mod fp;
mod module;
mod series;

pub use module::{Algebra, FpModule, GradedSubspace};
pub use series::{Layer, Oracle};

use crate::error::Result;
use crate::loewy::LoewyTable;
use crate::rootsys::RootDatum;
use crate::weight::Weight;

/// The socle series of `∇̂_P(L̂^P(λ))` computed by explicit linear algebra.
pub fn loewy_table(d: &RootDatum, subset: &[usize], lambda: &Weight, p: u64) -> Result<LoewyTable> {
    d.check_index_set(subset)?;
    let mut oracle = Oracle::new(Algebra::for_datum(d)?, p as u32);
    let module = oracle.induce_parabolic(subset, lambda)?;
    let mut set = subset.to_vec();
    set.sort_unstable();
    set.dedup();
    let mut table = LoewyTable::new(&d.label, &set, lambda, p);
    for (j, layer) in oracle.socle_series(&module)?.into_iter().enumerate() {
        for (mu, m) in layer {
            table.add(j, mu, m as u64);
        }
    }
    Ok(table)
}
