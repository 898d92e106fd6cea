//! Real Hermite, generalized Laguerre and complex Hermite families.
//!
//! Every family has at least two independent evaluation routes (exact
//! coefficients, recurrences, the Laguerre closed form) so each route can serve
//! as an oracle for the others.

mod complex_hermite;
mod hermite;
mod hermite_fn;
mod laguerre;

pub use complex_hermite::{
    complex_hermite_diagonal_normalized, complex_hermite_eval, complex_hermite_eval_normalized, complex_hermite_table,
    complex_hermite_via_laguerre, ComplexHermiteGrid, ComplexHermiteTable,
};
pub use hermite::{
    hermite_eval, hermite_eval_log, hermite_exact, hermite_norm_sq, hermite_norm_sq_ln,
};
pub use hermite_fn::{
    hermite_fn, hermite_fn_eval, HermiteFnValue, HermiteFunctionSpec, DIRECT_MAX_DEGREE,
};
pub use laguerre::laguerre_eval;

pub(crate) use complex_hermite::complex_hermite_grid_dd;
pub(crate) use hermite::{hermite_eval_dd, hermite_table_dd};
