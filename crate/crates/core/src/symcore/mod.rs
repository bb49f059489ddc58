//! Exact polynomial, graded-algebra and rational-section arithmetic over ℚ.

pub mod algebra;
pub mod equivariant;
pub mod euler;
pub mod form;
pub mod poly;
pub mod section;

pub use algebra::GradedAlgebra;
pub use equivariant::{poly_arith, ArithOp, EquivariantPolynomial};
pub use euler::{euler_class, invert_euler, NormalLine};
pub use form::{LinearForm, Variables};
pub use poly::{default_names, parse_poly, parse_rational, rational_string, Monomial, Poly};
pub use section::{Denominator, RationalSection};

/// `∫_F` applied coefficientwise; the result is a pure polynomial.
pub fn algebra_integrate(p: &EquivariantPolynomial) -> Poly {
    p.integrate()
}
