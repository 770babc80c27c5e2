//! Polynomials, rational functions and exact linear algebra over them.

pub mod field;
pub mod gcd;
pub mod linalg;
mod modgcd;
pub mod mono;
pub mod phipoly;
pub mod poly;
pub mod ratfun;
pub mod upoly;

pub use field::Field;
pub use gcd::{div_exact, gcd_cofactors, poly_gcd, poly_gcd_prs, primitive_part, rational_content};
pub use linalg::{clear_and_normalize, mat_vec, nullspace, rank, Matrix};
pub use mono::{Mono, Var};
pub use phipoly::{PhiPoly, PhiQuotient};
pub use poly::{poly, Poly};
pub use ratfun::RatFun;
pub use upoly::{ext_gcd, poly_divmod, UPoly};

/// `∂/∂v` for polynomials and rational functions alike.
pub trait PartialDerivative {
    fn partial_derivative(&self, v: Var) -> Self;
}

impl PartialDerivative for Poly {
    fn partial_derivative(&self, v: Var) -> Poly {
        Poly::partial_derivative(self, v)
    }
}

impl PartialDerivative for RatFun {
    fn partial_derivative(&self, v: Var) -> RatFun {
        RatFun::partial_derivative(self, v)
    }
}

pub fn partial_derivative<T: PartialDerivative>(a: &T, v: Var) -> T {
    a.partial_derivative(v)
}
