//! Minimal A∞-structures, their morphisms and the classes attached to them.

pub mod bar;
mod structure;

pub use structure::{
    compose, gauge_inverse, gauge_transport, identity_cochain, mc_defect, morphism_defect, verify_morphism,
    verify_upto, AInftyMorphism, McFailure, MinimalAInfty,
};
pub(crate) use structure::insertion_sum;
mod massey;

pub use massey::{
    coefficient_complex, d_sparse_massey, extend_step, greedy_gauge_equiv, obstruction_class, restrict_cochain,
    restricted_massey, universal_massey, GaugeVerdict, HHClass, Obstruction, RestrictedMassey,
};
mod formality;

pub use formality::{intrinsic_formality_check, FormalityReport};
