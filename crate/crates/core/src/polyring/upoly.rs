use std::fmt;

use super::field::Field;
use super::mono::Var;
use super::poly::Poly;
use super::ratfun::RatFun;
use crate::error::{domain, Error, Result};
use crate::exactnum::rat;

/// Dense univariate polynomial in `var` over a field, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct UPoly<F> {
    var: Var,
    coeffs: Vec<F>,
}

impl<F: Field> UPoly<F> {
    pub fn new(var: Var, mut coeffs: Vec<F>) -> UPoly<F> {
        while coeffs.last().is_some_and(F::is_zero) {
            coeffs.pop();
        }
        UPoly { var, coeffs }
    }

    pub fn zero(var: Var) -> UPoly<F> {
        UPoly { var, coeffs: Vec::new() }
    }

    pub fn constant(var: Var, c: F) -> UPoly<F> {
        UPoly::new(var, vec![c])
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new(self.var, (0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        UPoly::new(self.var, (0..n).map(|k| self.coeff(k).sub(&o.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        UPoly::new(self.var, self.coeffs.iter().map(F::neg).collect())
    }

    pub fn scale(&self, c: &F) -> Self {
        UPoly::new(self.var, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly::zero(self.var);
        }
        let mut v = vec![F::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        UPoly::new(self.var, v)
    }

    /// `(q, r)` with `self = q * b + r` and `deg r < deg b`.
    pub fn divmod(&self, b: &Self) -> Result<(Self, Self)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let inv_lc = b.lc().inv().ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        let mut q = vec![F::zero(); r.len().saturating_sub(db).max(1)];
        while r.len() > db {
            let k = r.len() - 1 - db;
            let c = r[r.len() - 1].mul(&inv_lc);
            if !c.is_zero() {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    r[j + k] = r[j + k].sub(&c.mul(bj));
                }
            }
            q[k] = c;
            r.pop();
        }
        Ok((UPoly::new(self.var, q), UPoly::new(self.var, r)))
    }

    pub fn rem(&self, b: &Self) -> Result<Self> {
        Ok(self.divmod(b)?.1)
    }

    pub fn monic(&self) -> Self {
        match self.lc().inv() {
            Some(i) if !self.is_zero() => self.scale(&i),
            _ => self.clone(),
        }
    }

    /// Derivative with respect to the polynomial's own variable.
    pub fn derivative(&self) -> Self {
        UPoly::new(
            self.var,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| {
                    let mut acc = F::zero();
                    for _ in 0..k {
                        acc = acc.add(c);
                    }
                    acc
                })
                .collect(),
        )
    }

    pub fn map(&self, f: impl Fn(&F) -> F) -> Self {
        UPoly::new(self.var, self.coeffs.iter().map(f).collect())
    }
}

/// Extended Euclid: `(g, u, v)` with `u a + v b = g`, `g` the monic gcd.
pub fn ext_gcd<F: Field>(a: &UPoly<F>, b: &UPoly<F>) -> Result<(UPoly<F>, UPoly<F>, UPoly<F>)> {
    let var = a.var;
    if a.is_zero() && b.is_zero() {
        return Err(domain("ext_gcd of two zero polynomials"));
    }
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut u0, mut u1) = (UPoly::constant(var, F::one()), UPoly::zero(var));
    let (mut v0, mut v1) = (UPoly::zero(var), UPoly::constant(var, F::one()));
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1)?;
        let u2 = u0.sub(&q.mul(&u1));
        let v2 = v0.sub(&q.mul(&v1));
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u2);
        v0 = std::mem::replace(&mut v1, v2);
    }
    let inv = r0.lc().inv().ok_or(Error::DivisionByZero)?;
    Ok((r0.scale(&inv), u0.scale(&inv), v0.scale(&inv)))
}

impl UPoly<RatFun> {
    /// View `p` as a polynomial in `v` whose coefficients are polynomials in
    /// the remaining variables.
    pub fn from_poly(p: &Poly, v: Var) -> UPoly<RatFun> {
        UPoly::new(v, p.coefficients_in(v).into_iter().map(RatFun::from_poly).collect())
    }

    /// Partial derivative of every coefficient in another variable.
    pub fn partial_coeffs(&self, w: Var) -> Self {
        self.map(|c| c.partial_derivative(w))
    }

    /// Back to a sparse polynomial, provided all coefficients are
    /// polynomials.
    pub fn to_poly(&self) -> Option<Poly> {
        let cs: Option<Vec<Poly>> = self
            .coeffs
            .iter()
            .map(|c| c.is_polynomial().then(|| c.num().clone()))
            .collect();
        Some(Poly::from_coefficients_in(self.var, &cs?))
    }

    pub fn scale_rat(&self, c: i64) -> Self {
        self.scale(&RatFun::constant(rat(c)))
    }
}

/// Division with remainder of `a` by `b`, both regarded as univariate in `v`
/// with rational-function coefficients in the other variables.
pub fn poly_divmod(a: &Poly, b: &Poly, v: Var) -> Result<(UPoly<RatFun>, UPoly<RatFun>)> {
    if b.is_zero() {
        return Err(Error::DivisionByZero);
    }
    UPoly::from_poly(a, v).divmod(&UPoly::from_poly(b, v))
}

impl<F: Field + fmt::Display> fmt::Display for UPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*{}", self.var)?,
                _ => write!(f, "({c})*{}^{k}", self.var)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::poly::poly;
    use proptest::prelude::*;

    #[test]
    fn divmod_contract() {
        let p = poly("f - l*(1+f)^4");
        let (q, r) = poly_divmod(&poly("f^2"), &p, Var::F).unwrap();
        assert!(r.degree().unwrap() <= 3);
        let back = q.mul(&UPoly::from_poly(&p, Var::F)).add(&r);
        assert_eq!(back, UPoly::from_poly(&poly("f^2"), Var::F));

        let (q, r) = poly_divmod(&p, &p, Var::F).unwrap();
        assert_eq!(q, UPoly::constant(Var::F, RatFun::one()));
        assert!(r.is_zero());
        assert!(poly_divmod(&p, &Poly::zero(), Var::F).is_err());
    }

    #[test]
    fn quartic_is_coprime_to_its_derivative() {
        let p = UPoly::from_poly(&poly("f - l*(1+f)^4"), Var::F);
        let dp = p.derivative();
        assert_eq!(dp, UPoly::from_poly(&poly("1 - 4*l*(1+f)^3"), Var::F));
        let (g, u, v) = ext_gcd(&p, &dp).unwrap();
        assert_eq!(g, UPoly::constant(Var::F, RatFun::one()));
        assert_eq!(u.mul(&p).add(&v.mul(&dp)), g);
    }

    #[test]
    fn gcd_with_zero() {
        let a = UPoly::from_poly(&poly("2*l*f + 4"), Var::F);
        let (g, u, v) = ext_gcd(&a, &UPoly::zero(Var::F)).unwrap();
        assert_eq!(g, a.monic());
        assert_eq!(u, UPoly::constant(Var::F, RatFun::new(poly("1"), poly("2*l")).unwrap()));
        assert!(v.is_zero());
    }

    fn cubic() -> impl Strategy<Value = UPoly<RatFun>> {
        proptest::collection::vec((-3i64..4, 0u32..2), 1..5).prop_map(|cs| {
            UPoly::new(
                Var::F,
                cs.into_iter()
                    .map(|(a, e)| RatFun::from_poly(&Poly::int(a) + &poly("l").pow(e)))
                    .collect(),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn bezout_identity_re_expands(a in cubic(), b in cubic()) {
            prop_assume!(!a.is_zero() || !b.is_zero());
            let (g, u, v) = ext_gcd(&a, &b).unwrap();
            prop_assert_eq!(u.mul(&a).add(&v.mul(&b)), g.clone());
            prop_assert!(a.rem(&g).unwrap().is_zero());
            prop_assert!(b.rem(&g).unwrap().is_zero());
        }

        #[test]
        fn divmod_re_expands(a in cubic(), b in cubic()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.degree().is_none_or(|d| d < b.degree().unwrap()));
        }
    }
}
