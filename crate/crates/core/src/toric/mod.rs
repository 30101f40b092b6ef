//! Cyclic quotient singularities, their lattices and weighted blow-up charts.

mod lattice;
mod quotient;
mod snf;

pub use lattice::{
    charts, int_vector, is_in_lattice, is_primitive, lattice_index, lattice_shift, Chart,
    ChartReport, CyclicFactor, DiagonalAction, WeightVector,
};
pub use quotient::{normalize_quotient_type, reid_tai_is_terminal, QuotientType, ReidTai};
pub use snf::{smith_normal_form, IntMatrix, SmithForm};
