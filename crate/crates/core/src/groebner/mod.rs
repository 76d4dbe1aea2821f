//! Gröbner bases for homogeneous submodules of graded free modules over a
//! weighted polynomial ring, with ideals as the rank-one case.

mod engine;
mod hilbert;
mod ideal;
mod module;

pub use engine::{buchberger_extended, buchberger_module, reduce, reduce_with_quotients, GroebnerRun, Quotient};
pub use hilbert::{krull_dimension_of_leads, monomial_ideal_numerator, HilbertSeries};
pub use ideal::{buchberger, eliminate, hilbert_series, krull_dimension, normal_form, GroebnerBasis, IdealSpec};
pub use module::{FreeModule, ModuleOrder, Term, Vector};
