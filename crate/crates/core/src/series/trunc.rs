use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde_json::json;

use super::log2::L2Series;
use crate::error::{domain, Error, Result};
use crate::exactnum::{rat, Rat};
use crate::polyring::{Mono, Poly, Var};
use crate::report::Report;

/// Exponents `(a, b, c)` of `t^a s^b λ^c`. The lexicographic order refines
/// divisibility, which the coefficient recurrences rely on.
pub type Key = (u32, u32, u32);

/// Weighted degree with `t:1, s:2, λ:-2`.
pub fn wdeg((a, b, c): Key) -> i64 {
    a as i64 + 2 * b as i64 - 2 * c as i64
}

/// Truncated power series in `t, s, λ`. Stored keys satisfy `a + 2b <= D`
/// and `c <= L`; results of binary operations carry the smaller caps.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    d: u32,
    l: u32,
    coeffs: BTreeMap<Key, Rat>,
}

/// Series in `t, s, λ` with caps `(D, L)`.
pub type Series3 = Series;

/// Series in `s, λ` only: a [`Series`] without `t`, with s-cap `S = D / 2`.
pub type Series2 = Series;

fn fits((a, b, c): Key, d: u32, l: u32) -> bool {
    a + 2 * b <= d && c <= l
}

fn key_add(x: Key, y: Key) -> Key {
    (x.0 + y.0, x.1 + y.1, x.2 + y.2)
}

fn key_sub(x: Key, y: Key) -> Option<Key> {
    Some((x.0.checked_sub(y.0)?, x.1.checked_sub(y.1)?, x.2.checked_sub(y.2)?))
}

fn key_weight((a, b, c): Key) -> u32 {
    a + b + c
}

impl Series {
    pub fn zero(d: u32, l: u32) -> Series {
        Series { d, l, coeffs: BTreeMap::new() }
    }

    /// A series in `s, λ` with s-cap `s_cap`.
    pub fn zero2(s_cap: u32, l: u32) -> Series {
        Series::zero(2 * s_cap, l)
    }

    pub fn constant(c: Rat, d: u32, l: u32) -> Series {
        Series::monomial((0, 0, 0), c, d, l)
    }

    pub fn one(d: u32, l: u32) -> Series {
        Series::constant(Rat::one(), d, l)
    }

    pub fn monomial(k: Key, c: Rat, d: u32, l: u32) -> Series {
        let mut out = Series::zero(d, l);
        out.insert(k, c);
        out
    }

    pub fn var(v: Var, d: u32, l: u32) -> Result<Series> {
        let k = match v {
            Var::T => (1, 0, 0),
            Var::S => (0, 1, 0),
            Var::L => (0, 0, 1),
            _ => return Err(domain(format!("series have no variable {v}"))),
        };
        Ok(Series::monomial(k, Rat::one(), d, l))
    }

    /// Truncation of a polynomial in `t, s, λ`.
    pub fn from_poly(p: &Poly, d: u32, l: u32) -> Result<Series> {
        let mut out = Series::zero(d, l);
        for (m, c) in p.terms() {
            if m.exp(Var::F) + m.exp(Var::X) + m.exp(Var::Y) > 0 {
                return Err(domain(format!("monomial {m} is not in t, s, λ")));
            }
            out.insert((m.exp(Var::T), m.exp(Var::S), m.exp(Var::L)), c.clone());
        }
        Ok(out)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::from_terms(self.coeffs.iter().map(|(&(a, b, c), v)| {
            (Mono::from_pairs(&[(Var::T, a), (Var::S, b), (Var::L, c)]), v.clone())
        }))
    }

    fn insert(&mut self, k: Key, c: Rat) {
        if !c.is_zero() && fits(k, self.d, self.l) {
            self.coeffs.insert(k, c);
        }
    }

    fn accumulate(&mut self, k: Key, c: Rat) {
        if c.is_zero() || !fits(k, self.d, self.l) {
            return;
        }
        let e = self.coeffs.entry(k).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn d_cap(&self) -> u32 {
        self.d
    }

    /// The s-cap of a series in `s, λ`.
    pub fn s_cap(&self) -> u32 {
        self.d / 2
    }

    pub fn l_cap(&self) -> u32 {
        self.l
    }

    pub fn coeff(&self, a: u32, b: u32, c: u32) -> Rat {
        self.coeffs.get(&(a, b, c)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Nonzero coefficients in increasing key order.
    pub fn terms(&self) -> impl Iterator<Item = (Key, &Rat)> {
        self.coeffs.iter().map(|(k, v)| (*k, v))
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn constant_term(&self) -> Rat {
        self.coeff(0, 0, 0)
    }

    pub fn uses_t(&self) -> bool {
        self.coeffs.keys().any(|k| k.0 > 0)
    }

    /// Every key within the caps, in increasing order.
    fn all_keys(&self) -> Vec<Key> {
        let mut keys = Vec::new();
        for a in 0..=self.d {
            for b in 0..=(self.d - a) / 2 {
                for c in 0..=self.l {
                    keys.push((a, b, c));
                }
            }
        }
        keys
    }

    pub fn restrict(&self, d: u32, l: u32) -> Series {
        let (d, l) = (d.min(self.d), l.min(self.l));
        Series {
            d,
            l,
            coeffs: self.coeffs.iter().filter(|(&k, _)| fits(k, d, l)).map(|(k, v)| (*k, v.clone())).collect(),
        }
    }

    /// Raise the `(t,s)`-cap of a series in `λ` alone, which is exact in
    /// those directions.
    pub fn lift_d(&self, d: u32) -> Result<Series> {
        if self.coeffs.keys().any(|k| k.0 + k.1 > 0) {
            return Err(domain("only series in λ alone can have their (t,s)-cap raised"));
        }
        Ok(Series { d: d.max(self.d), l: self.l, coeffs: self.coeffs.clone() })
    }

    pub fn scale(&self, c: &Rat) -> Series {
        if c.is_zero() {
            return Series::zero(self.d, self.l);
        }
        Series { d: self.d, l: self.l, coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    /// Multiply by the monomial `t^a s^b λ^c`.
    pub fn shift(&self, k: Key) -> Series {
        let mut out = Series::zero(self.d, self.l);
        for (&j, v) in &self.coeffs {
            out.insert(key_add(j, k), v.clone());
        }
        out
    }

    pub fn pow(&self, e: u32) -> Series {
        let mut acc = Series::one(self.d, self.l);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The coefficient of `λ^c` as a polynomial in `t, s`.
    pub fn lambda_slice(&self, c: u32) -> Poly {
        Poly::from_terms(
            self.coeffs
                .iter()
                .filter(|(k, _)| k.2 == c)
                .map(|(&(a, b, _), v)| (Mono::from_pairs(&[(Var::T, a), (Var::S, b)]), v.clone())),
        )
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn inverse(&self) -> Result<Series> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::ConstantTerm("inverse of a series without constant term".into()));
        }
        let inv0 = Rat::one() / &c0;
        let rest: Vec<(Key, &Rat)> = self.terms().filter(|(k, _)| *k != (0, 0, 0)).collect();
        let mut out = Series::zero(self.d, self.l);
        for k in self.all_keys() {
            let mut acc = if k == (0, 0, 0) { Rat::one() } else { Rat::zero() };
            for &(j, v) in &rest {
                if let Some(r) = key_sub(k, j) {
                    if let Some(x) = out.coeffs.get(&r) {
                        acc -= v * x;
                    }
                }
            }
            out.insert(k, acc * &inv0);
        }
        Ok(out)
    }

    /// Principal square root (constant term `+1`) by Newton iteration.
    pub fn sqrt(&self) -> Result<Series> {
        if !self.constant_term().is_one() {
            return Err(Error::ConstantTerm(format!(
                "square root needs constant term 1, found {}",
                self.constant_term()
            )));
        }
        let half = rat(1) / rat(2);
        let mut y = Series::one(self.d, self.l);
        loop {
            let next = (&y + &(self * &y.inverse()?)).scale(&half);
            if next == y {
                return Ok(y);
            }
            y = next;
        }
    }

    /// `log(self)` for constant term `1`, or `L2 + log(self / 2)` for
    /// constant term `2`. Solved from `E(log u) · u = E(u)` where `E` is the
    /// Euler operator multiplying `t^a s^b λ^c` by `a + b + c`.
    pub fn log(&self) -> Result<L2Series> {
        let c = self.constant_term();
        let (u, l2) = if c == rat(1) {
            (self.clone(), Rat::zero())
        } else if c == rat(2) {
            (self.scale(&(rat(1) / rat(2))), Rat::one())
        } else {
            return Err(Error::ConstantTerm(format!("log needs constant term 1 or 2, found {c}")));
        };
        let rest: Vec<(Key, &Rat)> = u.terms().filter(|(k, _)| *k != (0, 0, 0)).collect();
        let mut out = Series::zero(self.d, self.l);
        for k in self.all_keys() {
            if k == (0, 0, 0) {
                continue;
            }
            let w = key_weight(k);
            let mut acc = u.coeff(k.0, k.1, k.2) * rat(w as i64);
            for &(j, v) in &rest {
                if j == k {
                    continue;
                }
                if let Some(r) = key_sub(k, j) {
                    if let Some(x) = out.coeffs.get(&r) {
                        acc -= v * x * rat(key_weight(r) as i64);
                    }
                }
            }
            out.insert(k, acc / rat(w as i64));
        }
        Ok(L2Series { q: out, p: Series::constant(l2, self.d, self.l) })
    }

    /// `exp(self)` for a series without constant term.
    pub fn exp(&self) -> Result<Series> {
        if !self.constant_term().is_zero() {
            return Err(Error::ConstantTerm("exp needs zero constant term".into()));
        }
        let weighted: Vec<(Key, Rat)> =
            self.terms().map(|(k, v)| (k, v * rat(key_weight(k) as i64))).collect();
        let mut out = Series::one(self.d, self.l);
        for k in self.all_keys() {
            if k == (0, 0, 0) {
                continue;
            }
            let mut acc = Rat::zero();
            for (j, v) in &weighted {
                if let Some(r) = key_sub(k, *j) {
                    if let Some(x) = out.coeffs.get(&r) {
                        acc += v * x;
                    }
                }
            }
            out.insert(k, acc / rat(key_weight(k) as i64));
        }
        Ok(out)
    }

    /// Partial derivative. Differentiating lowers the corresponding cap.
    pub fn derivative(&self, v: Var) -> Result<Series> {
        let (i, d, l) = match v {
            Var::T if self.d >= 1 => (0, self.d - 1, self.l),
            Var::S if self.d >= 2 => (1, self.d - 2, self.l),
            Var::L if self.l >= 1 => (2, self.d, self.l - 1),
            Var::T | Var::S | Var::L => {
                return Err(Error::CapTooSmall(format!("cannot differentiate in {v} at caps ({}, {})", self.d, self.l)))
            }
            _ => return Err(domain(format!("series have no variable {v}"))),
        };
        let mut out = Series::zero(d, l);
        for (&k, c) in &self.coeffs {
            let mut e = [k.0, k.1, k.2];
            if e[i] > 0 {
                let n = e[i];
                e[i] -= 1;
                out.insert((e[0], e[1], e[2]), c * rat(n as i64));
            }
        }
        Ok(out)
    }

    /// Substitute `v := b`. Every monomial of `b` must have at least the
    /// `(t,s)`-weight and λ-order of `v` itself (and `b(0) = 0`), so the
    /// composite is determined by the caps.
    pub fn substitute(&self, v: Var, b: &Series) -> Result<Series> {
        let (vw, vl) = match v {
            Var::T => (1, 0),
            Var::S => (2, 0),
            Var::L => (0, 1),
            _ => return Err(domain(format!("series have no variable {v}"))),
        };
        if !b.constant_term().is_zero() {
            return Err(Error::ConstantTerm(format!("substitution for {v} has a constant term")));
        }
        if let Some((k, _)) = b.terms().find(|(k, _)| k.0 + 2 * k.1 < vw || k.2 < vl) {
            return Err(domain(format!("substitution for {v} has a term t^{} s^{} l^{} of lower weight", k.0, k.1, k.2)));
        }
        let (d, l) = (self.d.min(b.d), self.l.min(b.l));
        let idx = match v {
            Var::T => 0,
            Var::S => 1,
            _ => 2,
        };
        let mut parts: BTreeMap<u32, Series> = BTreeMap::new();
        for (&k, c) in &self.coeffs {
            let mut r = [k.0, k.1, k.2];
            let e = std::mem::take(&mut r[idx]);
            parts.entry(e).or_insert_with(|| Series::zero(d, l)).insert((r[0], r[1], r[2]), c.clone());
        }
        let emax = parts.keys().next_back().copied().unwrap_or(0);
        let b = b.restrict(d, l);
        let mut acc = Series::zero(d, l);
        for e in (0..=emax).rev() {
            acc = &acc * &b;
            if let Some(p) = parts.get(&e) {
                acc = &acc + p;
            }
        }
        Ok(acc)
    }

    /// Pass iff every monomial has weighted degree `<= bound`; otherwise the
    /// witness is the first offending monomial.
    pub fn assert_degree_le(&self, bound: i64) -> Report {
        let mut r = Report::new("degree_le").param("bound", bound);
        for (&k, c) in &self.coeffs {
            r.case(wdeg(k) <= bound, || {
                json!({ "monomial": format!("t^{} s^{} l^{}", k.0, k.1, k.2), "coeff": c.to_string(), "wdeg": wdeg(k) })
            });
        }
        r
    }

    /// Whether some stored monomial reaches the s-cap.
    pub fn touches_s_cap(&self) -> bool {
        self.coeffs.keys().any(|k| k.1 >= self.s_cap())
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "caps D={}, L={}", self.d, self.l)?;
        for (&(a, b, c), v) in &self.coeffs {
            writeln!(f, "{v} * t^{a} s^{b} l^{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Series {
    type Err = Error;

    fn from_str(src: &str) -> Result<Series> {
        let parse_err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
        let mut lines = src.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or_else(|| parse_err(0, "missing caps header"))?;
        let caps = header
            .trim()
            .strip_prefix("caps D=")
            .and_then(|r| r.split_once(", L="))
            .and_then(|(d, l)| Some((d.trim().parse().ok()?, l.trim().parse().ok()?)));
        let (d, l) = caps.ok_or_else(|| parse_err(0, "bad caps header"))?;
        let mut out = Series::zero(d, l);
        for (n, line) in lines {
            let (coeff, mono) = line.split_once('*').ok_or_else(|| parse_err(n, "expected `coeff * monomial`"))?;
            let c: Rat = coeff.trim().parse().map_err(|_| parse_err(n, "bad coefficient"))?;
            let mut e = [0u32; 3];
            for part in mono.split_whitespace() {
                let (name, exp) = part.split_once('^').ok_or_else(|| parse_err(n, "bad exponent"))?;
                let i = ["t", "s", "l"].iter().position(|&x| x == name).ok_or_else(|| parse_err(n, "bad variable"))?;
                e[i] = exp.parse().map_err(|_| parse_err(n, "bad exponent"))?;
            }
            let k = (e[0], e[1], e[2]);
            if !fits(k, d, l) {
                return Err(parse_err(n, "monomial exceeds the caps"));
            }
            out.accumulate(k, c);
        }
        Ok(out)
    }
}

impl<'a> Add<&'a Series> for &'a Series {
    type Output = Series;
    fn add(self, o: &Series) -> Series {
        let mut out = self.restrict(o.d, o.l);
        for (&k, v) in &o.coeffs {
            out.accumulate(k, v.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Series> for &'a Series {
    type Output = Series;
    fn sub(self, o: &Series) -> Series {
        let mut out = self.restrict(o.d, o.l);
        for (&k, v) in &o.coeffs {
            out.accumulate(k, -v);
        }
        out
    }
}

impl<'a> Mul<&'a Series> for &'a Series {
    type Output = Series;
    fn mul(self, o: &Series) -> Series {
        let (d, l) = (self.d.min(o.d), self.l.min(o.l));
        let mut acc: BTreeMap<Key, Rat> = BTreeMap::new();
        let rhs: Vec<(Key, &Rat)> = o.terms().filter(|(k, _)| fits(*k, d, l)).collect();
        for (&x, u) in &self.coeffs {
            if !fits(x, d, l) {
                continue;
            }
            for &(y, v) in &rhs {
                let k = key_add(x, y);
                if fits(k, d, l) {
                    *acc.entry(k).or_insert_with(Rat::zero) += u * v;
                }
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Series { d, l, coeffs: acc }
    }
}

impl Neg for &Series {
    type Output = Series;
    fn neg(self) -> Series {
        self.scale(&rat(-1))
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Series> for Series {
            type Output = Series;
            fn $m(self, o: Series) -> Series {
                (&self).$m(&o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);
