use std::fmt;

use num_traits::{One, Zero};

use super::trunc::Series;
use crate::error::{domain, Result};
use crate::exactnum::Rat;

/// An element `q + p·L2` of `Q ⊕ Q·log 2`. Equality is componentwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Log2Rat {
    pub q: Rat,
    pub p: Rat,
}

impl Log2Rat {
    pub fn new(q: Rat, p: Rat) -> Self {
        Log2Rat { q, p }
    }

    pub fn rational(q: Rat) -> Self {
        Log2Rat { q, p: Rat::zero() }
    }

    pub fn log2() -> Self {
        Log2Rat { q: Rat::zero(), p: Rat::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero() && self.p.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.p.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        Log2Rat { q: &self.q + &o.q, p: &self.p + &o.p }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Log2Rat { q: &self.q - &o.q, p: &self.p - &o.p }
    }

    pub fn neg(&self) -> Self {
        Log2Rat { q: -&self.q, p: -&self.p }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Log2Rat { q: &self.q * c, p: &self.p * c }
    }

    /// Product; `L2²` is outside the representable span and is an error.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if !self.p.is_zero() && !o.p.is_zero() {
            return Err(domain("product of two log 2 terms"));
        }
        Ok(Log2Rat { q: &self.q * &o.q, p: &self.q * &o.p + &self.p * &o.q })
    }
}

impl fmt::Display for Log2Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.q.is_zero(), self.p.is_zero()) {
            (_, true) => write!(f, "{}", self.q),
            (true, false) => write!(f, "{}*L2", self.p),
            (false, false) => write!(f, "{} + {}*L2", self.q, self.p),
        }
    }
}

/// A truncated series with coefficients in `Q ⊕ Q·log 2`, stored as its
/// rational part `q` and its `log 2` part `p`.
#[derive(Debug, Clone, PartialEq)]
pub struct L2Series {
    pub q: Series,
    pub p: Series,
}

impl L2Series {
    pub fn rational(q: Series) -> Self {
        let p = Series::zero(q.d_cap(), q.l_cap());
        L2Series { q, p }
    }

    pub fn add(&self, o: &Self) -> Self {
        L2Series { q: &self.q + &o.q, p: &self.p + &o.p }
    }

    pub fn sub(&self, o: &Self) -> Self {
        L2Series { q: &self.q - &o.q, p: &self.p - &o.p }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        L2Series { q: self.q.scale(c), p: self.p.scale(c) }
    }

    pub fn mul_series(&self, b: &Series) -> Self {
        L2Series { q: &self.q * b, p: &self.p * b }
    }

    pub fn restrict(&self, d: u32, l: u32) -> Self {
        L2Series { q: self.q.restrict(d, l), p: self.p.restrict(d, l) }
    }
}
