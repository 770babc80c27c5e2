use std::collections::BTreeMap;
use std::fmt;

use super::log2::{L2Series, Log2Rat};
use super::trunc::Series;
use crate::error::{domain, Result};
use crate::exactnum::{rat, Rat};

/// Sentinel cap for exactly known Laurent polynomials.
pub const EXACT: i64 = i64::MAX / 4;

/// Truncated Laurent series in `x` with coefficients in `Q ⊕ Q·log 2`.
/// Coefficients are known exactly for exponents `<= cap`.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentX {
    cap: i64,
    coeffs: BTreeMap<i64, Log2Rat>,
}

impl LaurentX {
    pub fn zero(cap: i64) -> Self {
        LaurentX { cap, coeffs: BTreeMap::new() }
    }

    pub fn monomial(k: i64, c: Log2Rat, cap: i64) -> Self {
        let mut out = LaurentX::zero(cap);
        out.add_term(k, c);
        out
    }

    /// An exactly known Laurent polynomial `Σ c_k x^k`.
    pub fn polynomial(terms: impl IntoIterator<Item = (i64, Rat)>) -> Self {
        let mut out = LaurentX::zero(EXACT);
        for (k, c) in terms {
            out.add_term(k, Log2Rat::rational(c));
        }
        out
    }

    /// A series in `t` alone, read as a series in `x`.
    pub fn from_t_series(s: &Series) -> Result<Self> {
        Self::from_l2_series(&L2Series::rational(s.clone()))
    }

    pub fn from_l2_series(s: &L2Series) -> Result<Self> {
        let mut out = LaurentX::zero(s.q.d_cap().min(s.p.d_cap()) as i64);
        for (part, is_log) in [(&s.q, false), (&s.p, true)] {
            for ((a, b, c), v) in part.terms() {
                if b > 0 || c > 0 {
                    return Err(domain("series in x must not involve s or λ"));
                }
                let term = if is_log { Log2Rat::new(rat(0), v.clone()) } else { Log2Rat::rational(v.clone()) };
                out.add_term(a as i64, term);
            }
        }
        Ok(out)
    }

    pub fn add_term(&mut self, k: i64, c: Log2Rat) {
        if k > self.cap || c.is_zero() {
            return;
        }
        let e = self.coeffs.entry(k).or_default();
        *e = e.add(&c);
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn cap(&self) -> i64 {
        self.cap
    }

    pub fn coeff(&self, k: i64) -> Log2Rat {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Log2Rat)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent present; `cap + 1` for the zero series.
    pub fn valuation(&self) -> i64 {
        self.coeffs.keys().next().copied().unwrap_or(self.cap.saturating_add(1))
    }

    pub fn truncate(&self, cap: i64) -> Self {
        let cap = cap.min(self.cap);
        LaurentX { cap, coeffs: self.coeffs.range(..=cap).map(|(k, v)| (*k, v.clone())).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.truncate(o.cap);
        for (k, v) in o.terms() {
            out.add_term(k, v.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&rat(-1)))
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = LaurentX::zero(self.cap);
        for (k, v) in self.terms() {
            out.add_term(k, v.scale(c));
        }
        out
    }

    /// Product; the result is exact up to `min(cap_a + val_b, cap_b + val_a)`.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        let cap = self.cap.saturating_add(o.valuation()).min(o.cap.saturating_add(self.valuation())).min(EXACT);
        let mut out = LaurentX::zero(cap);
        for (i, u) in self.terms() {
            for (j, v) in o.terms() {
                if i + j <= cap {
                    out.add_term(i + j, u.mul(v)?);
                }
            }
        }
        Ok(out)
    }

    /// Termwise `d/dx`.
    pub fn derivative(&self) -> Self {
        let cap = if self.cap >= EXACT { EXACT } else { self.cap - 1 };
        let mut out = LaurentX::zero(cap);
        for (k, v) in self.terms() {
            out.add_term(k - 1, v.scale(&rat(k)));
        }
        out
    }
}

impl fmt::Display for LaurentX {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in self.terms() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({v})*x^{k}")?;
        }
        if first {
            f.write_str("0")?;
        }
        if self.cap < EXACT {
            write!(f, " + O(x^{})", self.cap + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::binomial;
    use crate::polyring::{poly, Var};

    #[test]
    fn central_binomial_times_sqrt_is_one() {
        let n = 12;
        let inv_sqrt = LaurentX::polynomial((0..=n).map(|l| (l, binomial(2 * l, l))));
        let sqrt = Series::from_poly(&poly("1 - 4*t"), n as u32, 0).unwrap().sqrt().unwrap();
        let prod = inv_sqrt.truncate(n).mul(&LaurentX::from_t_series(&sqrt).unwrap()).unwrap();
        assert_eq!(prod, LaurentX::polynomial([(0, rat(1))]).truncate(n));
    }

    #[test]
    fn caps_track_valuations() {
        let a = LaurentX::polynomial([(-3, rat(1))]);
        let b = LaurentX::from_t_series(&Series::var(Var::T, 10, 0).unwrap()).unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(p.cap(), 7);
        assert_eq!(p.coeff(-2), Log2Rat::rational(rat(1)));
        assert_eq!(p.derivative().cap(), 6);
        assert!(LaurentX::monomial(0, Log2Rat::log2(), 3)
            .mul(&LaurentX::monomial(1, Log2Rat::log2(), 3))
            .is_err());
    }

    #[test]
    fn log_of_one_plus_sqrt() {
        let root = Series::from_poly(&poly("1 - 4*t^2"), 8, 0).unwrap().sqrt().unwrap();
        let arg = &root + &Series::one(8, 0);
        let lg = LaurentX::from_l2_series(&arg.log().unwrap()).unwrap();
        assert_eq!(lg.coeff(0), Log2Rat::log2());
        assert_eq!(lg.coeff(2), Log2Rat::rational(rat(-1)));
        assert_eq!(lg.coeff(4), Log2Rat::rational(rat(-3) / rat(2)));
    }
}
