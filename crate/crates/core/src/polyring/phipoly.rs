use super::field::Field;
use super::mono::Var;
use super::ratfun::RatFun;
use super::upoly::{ext_gcd, UPoly};
use crate::error::{domain, Error, Result};

/// Element of `K[φ]/(P)` for a quartic `P`, stored by its remainder: the
/// coefficients of `φ^0 .. φ^3` over `K = Q(s, λ)`.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiPoly {
    coeffs: [RatFun; 4],
}

impl PhiPoly {
    pub fn zero() -> PhiPoly {
        PhiPoly { coeffs: std::array::from_fn(|_| RatFun::zero()) }
    }

    pub fn one() -> PhiPoly {
        PhiPoly::constant(RatFun::one())
    }

    pub fn constant(c: RatFun) -> PhiPoly {
        let mut p = PhiPoly::zero();
        p.coeffs[0] = c;
        p
    }

    pub fn from_coeffs(coeffs: [RatFun; 4]) -> PhiPoly {
        PhiPoly { coeffs }
    }

    /// Fails if `u` has degree above three; reduce it through a
    /// [`PhiQuotient`] first.
    pub fn from_upoly(u: &UPoly<RatFun>) -> Result<PhiPoly> {
        if u.degree().is_some_and(|d| d > 3) {
            return Err(domain("PhiPoly needs degree <= 3 in φ"));
        }
        Ok(PhiPoly { coeffs: std::array::from_fn(|k| u.coeff(k)) })
    }

    pub fn to_upoly(&self) -> UPoly<RatFun> {
        UPoly::new(Var::F, self.coeffs.to_vec())
    }

    pub fn coeffs(&self) -> &[RatFun; 4] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &RatFun {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatFun::is_zero)
    }

    pub fn add(&self, o: &PhiPoly) -> PhiPoly {
        PhiPoly { coeffs: std::array::from_fn(|k| &self.coeffs[k] + &o.coeffs[k]) }
    }

    pub fn sub(&self, o: &PhiPoly) -> PhiPoly {
        PhiPoly { coeffs: std::array::from_fn(|k| &self.coeffs[k] - &o.coeffs[k]) }
    }

    pub fn scale(&self, c: &RatFun) -> PhiPoly {
        PhiPoly { coeffs: std::array::from_fn(|k| &self.coeffs[k] * c) }
    }

    /// ∂/∂φ of the representative; stays below degree three.
    pub fn derivative_phi(&self) -> PhiPoly {
        PhiPoly::from_upoly(&self.to_upoly().derivative()).expect("degree drops")
    }

    /// Partial derivative of the coefficients in `v` (φ held fixed).
    pub fn partial_coeffs(&self, v: Var) -> PhiPoly {
        PhiPoly { coeffs: std::array::from_fn(|k| self.coeffs[k].partial_derivative(v)) }
    }
}

/// The quotient ring `K[φ]/(P)` for a fixed quartic modulus `P`.
#[derive(Debug, Clone)]
pub struct PhiQuotient {
    modulus: UPoly<RatFun>,
}

impl PhiQuotient {
    pub fn new(modulus: UPoly<RatFun>) -> Result<PhiQuotient> {
        if modulus.var() != Var::F || modulus.degree() != Some(4) {
            return Err(domain("modulus must be a quartic in φ"));
        }
        Ok(PhiQuotient { modulus })
    }

    pub fn modulus(&self) -> &UPoly<RatFun> {
        &self.modulus
    }

    pub fn reduce(&self, u: &UPoly<RatFun>) -> PhiPoly {
        let r = u.rem(&self.modulus).expect("modulus is nonzero");
        PhiPoly::from_upoly(&r).expect("remainder has degree <= 3")
    }

    pub fn mul(&self, a: &PhiPoly, b: &PhiPoly) -> PhiPoly {
        self.reduce(&a.to_upoly().mul(&b.to_upoly()))
    }

    /// Multiplicative inverse modulo `P`, via the Bézout identity.
    pub fn inverse(&self, a: &PhiPoly) -> Result<PhiPoly> {
        let (g, u, _) = ext_gcd(&a.to_upoly(), &self.modulus)?;
        if g.degree() != Some(0) || !g.lc().sub(&RatFun::one()).is_zero() {
            return Err(Error::Invariant(format!("{} is not invertible modulo P", a.to_upoly())));
        }
        Ok(self.reduce(&u))
    }
}
