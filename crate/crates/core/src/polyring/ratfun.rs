use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::gcd::{div_exact, gcd_cofactors};
use super::mono::Var;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::exactnum::Rat;

/// Quotient of polynomials in lowest terms, with a monic denominator (leading
/// coefficient one in the canonical monomial order). This form is unique, so
/// derived equality is equality of rational functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<RatFun> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn zero() -> RatFun {
        RatFun { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> RatFun {
        RatFun { num: Poly::one(), den: Poly::one() }
    }

    pub fn constant(c: Rat) -> RatFun {
        RatFun { num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> RatFun {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn monic(num: Poly, den: Poly) -> RatFun {
        let lc = den.leading_coeff();
        if lc.is_one() {
            return RatFun { num, den };
        }
        let inv = Rat::one() / lc;
        RatFun { num: num.scale(&inv), den: den.scale(&inv) }
    }

    fn reduce(num: Poly, den: Poly) -> RatFun {
        if num.is_zero() {
            return RatFun::zero();
        }
        if den.is_constant() {
            let c = den.constant_term();
            return RatFun { num: num.scale(&(Rat::one() / c)), den: Poly::one() };
        }
        if num.is_constant() {
            return Self::monic(num, den);
        }
        let (g, _, _) = gcd_cofactors(&num, &den);
        if g.is_constant() {
            return Self::monic(num, den);
        }
        let n = div_exact(&num, &g).expect("gcd divides numerator");
        let d = div_exact(&den, &g).expect("gcd divides denominator");
        Self::monic(n, d)
    }

    pub fn inv(&self) -> Result<RatFun> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::monic(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rat) -> RatFun {
        if c.is_zero() {
            return RatFun::zero();
        }
        RatFun { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &Poly) -> RatFun {
        Self::reduce(&self.num * p, self.den.clone())
    }

    /// Quotient rule, renormalized.
    pub fn partial_derivative(&self, v: Var) -> RatFun {
        if !self.den.uses(v) {
            return Self::reduce(self.num.partial_derivative(v), self.den.clone());
        }
        let n = &(&self.num.partial_derivative(v) * &self.den)
            - &(&self.num * &self.den.partial_derivative(v));
        Self::reduce(n, &self.den * &self.den)
    }

    pub fn eval_var(&self, v: Var, value: &Rat) -> Result<RatFun> {
        RatFun::new(self.num.eval_var(v, value), self.den.eval_var(v, value))
    }

    pub fn degree_in(&self, v: Var) -> (Option<u32>, Option<u32>) {
        (self.num.degree_in(v), self.den.degree_in(v))
    }
}

impl From<Poly> for RatFun {
    fn from(p: Poly) -> RatFun {
        RatFun::from_poly(p)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, o: &RatFun) -> RatFun {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return RatFun::reduce(&self.num + &o.num, self.den.clone());
        }
        if self.den.is_one() {
            return RatFun { num: &(&self.num * &o.den) + &o.num, den: o.den.clone() };
        }
        if o.den.is_one() {
            return RatFun { num: &self.num + &(&o.num * &self.den), den: self.den.clone() };
        }
        // a/(g b') + c/(g d') = (a d' + c b') / (g b' d')
        let (_, b1, d1) = cancel(&self.den, &o.den);
        let num = &(&self.num * &d1) + &(&o.num * &b1);
        RatFun::reduce(num, &self.den * &d1)
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, o: &RatFun) -> RatFun {
        self + &(-o)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, o: &RatFun) -> RatFun {
        if self.is_zero() || o.is_zero() {
            return RatFun::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFun { num: &self.num * &o.num, den: Poly::one() };
        }
        // cross-cancel; inputs are already in lowest terms
        let (_, a1, d1) = cancel(&self.num, &o.den);
        let (_, c1, b1) = cancel(&o.num, &self.den);
        RatFun::monic(&a1 * &c1, &b1 * &d1)
    }
}

/// `(g, a/g, b/g)` with exact rational cofactors.
fn cancel(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    if a.is_constant() || b.is_constant() {
        return (Poly::one(), a.clone(), b.clone());
    }
    gcd_cofactors(a, b)
}

impl Div for &RatFun {
    type Output = RatFun;
    /// Panics on division by zero; use [`RatFun::inv`] for a checked version.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &RatFun) -> RatFun {
        self * &o.inv().expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for RatFun {
            type Output = RatFun;
            fn $f(self, rhs: RatFun) -> RatFun {
                (&self).$f(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::ratio;
    use crate::polyring::poly::poly;

    fn rf(n: &str, d: &str) -> RatFun {
        RatFun::new(poly(n), poly(d)).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(rf("2*s^2 - 2", "4*s + 4"), rf("s - 1", "2"));
        assert_eq!(rf("s - 1", "2").to_string(), "1/2*s - 1/2");
        assert_eq!(rf("l", "-2*l^2 + l"), rf("-1", "2*l - 1"));
        assert_eq!(rf("l", "-2*l^2 + l").den().leading_coeff(), ratio(1, 1));
        assert!(RatFun::new(poly("1"), poly("0")).is_err());
    }

    #[test]
    fn field_operations() {
        let a = rf("1", "s - 1");
        let b = rf("s", "s + 1");
        let sum = &a + &b;
        assert_eq!(sum, rf("s^2 + 1", "s^2 - 1"));
        assert_eq!(&sum - &b, a);
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&a * &a.inv().unwrap(), RatFun::one());
    }

    #[test]
    fn quotient_rule() {
        let a = rf("s*l", "1 + l");
        assert_eq!(a.partial_derivative(Var::L), rf("s", "(1 + l)^2"));
        assert_eq!(a.partial_derivative(Var::S), rf("l", "1 + l"));
        assert_eq!(rf("s", "l").partial_derivative(Var::F), RatFun::zero());
        assert_eq!(rf("l*s + l + 1", "s + 1").partial_derivative(Var::L), RatFun::one());
    }
}
