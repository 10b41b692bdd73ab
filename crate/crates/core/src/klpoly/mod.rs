//! Kazhdan–Lusztig polynomials for affine Weyl groups.

mod cache;
mod engine;
mod parabolic;
pub mod poly;

pub use cache::KlCache;
pub use engine::KlEngine;
pub use parabolic::{Flavor, ParabolicKl};
pub use poly::HalfLaurent;
