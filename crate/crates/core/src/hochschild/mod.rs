//! Hochschild cochains of a graded algebra with coefficients in itself.

mod coeffs;
mod cochain;
mod cohomology;
mod ops;

pub use cochain::{Cochain, CochainSpace};
pub use coeffs::BimoduleHochschild;
pub use cohomology::{
    bracket_map, massey_complex, ClassReduction, HHGroup, HochschildComplex, MasseyNode, SubquotientData,
};
pub use ops::{
    bracket, cup, differential_columns, hochschild_differential, insert_at, mult_cochain, pre_lie, square,
    unit_cochain,
};
pub use ops::tabulate;
