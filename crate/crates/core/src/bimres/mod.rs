//! Minimal projective bimodule resolutions over split basic algebras, and the
//! stable-isomorphism test for the degree `−d` part of a `d`-sparse graded algebra.

mod comparison;
mod daic;
mod radical;
mod resolution;

pub use comparison::class_to_syzygy_map;
pub use daic::{bimodule_iso_exists, daic_criterion, daic_target_module, has_projective_summand, DaicTarget, DaicVerdict};
pub use radical::{jacobson_radical, SplitBasic};
pub use resolution::{minimal_syzygies, next_syzygy, Projective, ResolutionStage};
