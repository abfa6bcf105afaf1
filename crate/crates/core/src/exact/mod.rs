//! Exact arithmetic substrate: big rationals, dense rational polynomials
//! with Sturm-sequence root isolation, Laurent polynomials (rational or
//! mod-p coefficients), rational-function classes modulo integral Laurent
//! polynomials, certified interval numerics, real algebraic numbers, exact
//! angles on the unit circle, division-free characteristic polynomials, and
//! Smith normal form over the integers.

pub mod algebraic;
pub mod angle;
pub mod interval;
pub mod laurent;
pub mod qpoly;
pub mod rat;
pub mod ratfn;
pub mod ring;
pub mod smith;

pub use algebraic::RealAlgebraic;
pub use angle::Angle;
pub use interval::CertifiedInterval;
pub use laurent::LaurentPoly;
pub use qpoly::QPoly;
pub use rat::{rat, rat_from_str, rat_to_string};
pub use ratfn::RatFnClass;
pub use smith::{smith_normal_form, SmithDecomposition};
