//! Multivariate gcd and exact division.
//!
//! Sparse [`Poly`] values are cleared of denominators and converted to a
//! recursive dense representation `Z[x1][x2]...[xk]` over only the variables
//! they actually use. The gcd is the subresultant PRS in the outermost
//! variable, with contents computed recursively.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::modgcd;
use super::mono::{Mono, Var, NVARS};
use super::poly::Poly;
use crate::exactnum::{lcm_denominators, Rat};

pub(crate) trait Coef: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn exact_div(&self, o: &Self) -> Option<Self>;
    /// Unit-normal gcd (innermost leading coefficient positive).
    fn gcd(&self, o: &Self) -> Self;
    fn lead_sign(&self) -> i8;
    fn from_terms(terms: Vec<(Vec<u32>, BigInt)>) -> Self;
    fn push_terms(&self, prefix: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, BigInt)>);

    fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    fn unit_normal(&self) -> Self {
        if self.lead_sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }
}

impl Coef for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        if Zero::is_zero(o) {
            return None;
        }
        let (q, r) = self.div_rem(o);
        Zero::is_zero(&r).then_some(q)
    }
    fn gcd(&self, o: &Self) -> Self {
        Integer::gcd(self, o)
    }
    fn lead_sign(&self) -> i8 {
        if self.is_negative() {
            -1
        } else if Zero::is_zero(self) {
            0
        } else {
            1
        }
    }
    fn from_terms(terms: Vec<(Vec<u32>, BigInt)>) -> Self {
        terms.into_iter().map(|(_, c)| c).sum()
    }
    fn push_terms(&self, prefix: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, BigInt)>) {
        if !Zero::is_zero(self) {
            out.push((prefix.clone(), self.clone()));
        }
    }
}

/// Dense univariate polynomial over `R`, lowest degree first, no trailing
/// zeros.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Dense<R>(Vec<R>);

impl<R: Coef> Dense<R> {
    fn trimmed(mut v: Vec<R>) -> Self {
        while v.last().is_some_and(R::is_zero) {
            v.pop();
        }
        Dense(v)
    }

    fn constant(c: R) -> Self {
        Self::trimmed(vec![c])
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn lc(&self) -> &R {
        self.0.last().expect("nonzero polynomial")
    }

    fn scale(&self, c: &R) -> Self {
        Self::trimmed(self.0.iter().map(|a| a.mul(c)).collect())
    }

    fn div_scalar(&self, c: &R) -> Option<Self> {
        let v: Option<Vec<R>> = self.0.iter().map(|a| a.exact_div(c)).collect();
        v.map(Dense)
    }

    fn content(&self) -> R {
        let mut g = R::zero();
        for c in &self.0 {
            g = g.gcd(c);
            if g == R::one() {
                break;
            }
        }
        g
    }

    /// `a - c * x^k * b`
    fn sub_shifted(&self, b: &Self, c: &R, k: usize) -> Self {
        let mut v = self.0.clone();
        if v.len() < b.0.len() + k {
            v.resize(b.0.len() + k, R::zero());
        }
        for (i, bi) in b.0.iter().enumerate() {
            v[i + k] = v[i + k].sub(&bi.mul(c));
        }
        Self::trimmed(v)
    }

    fn prem(&self, b: &Self) -> Self {
        let n = b.degree();
        let lb = b.lc().clone();
        let mut r = self.clone();
        let mut e = self.degree() + 1 - n;
        while !r.0.is_empty() && r.degree() >= n {
            let k = r.degree() - n;
            let lr = r.lc().clone();
            r = r.scale(&lb).sub_shifted(b, &lr, k);
            e -= 1;
        }
        if e > 0 {
            r = r.scale(&lb.pow(e));
        }
        r
    }

    fn primitive(&self) -> Self {
        let c = self.content();
        self.div_scalar(&c).expect("content divides")
    }

    fn subresultant_gcd(a: &Self, b: &Self) -> Self {
        let (mut a, mut b) = if a.degree() >= b.degree() {
            (a.primitive(), b.primitive())
        } else {
            (b.primitive(), a.primitive())
        };
        let mut g = R::one();
        let mut h = R::one();
        loop {
            let delta = a.degree() - b.degree();
            let r = a.prem(&b);
            if r.0.is_empty() {
                break;
            }
            if r.degree() == 0 {
                return Dense::constant(R::one());
            }
            let div = g.mul(&h.pow(delta));
            a = b;
            b = r.div_scalar(&div).expect("subresultant division is exact");
            g = a.lc().clone();
            if delta > 0 {
                h = g.pow(delta).exact_div(&h.pow(delta - 1)).expect("exact");
            }
        }
        b.primitive()
    }
}

impl<R: Coef> Coef for Dense<R> {

    fn zero() -> Self {
        Dense(Vec::new())
    }
    fn one() -> Self {
        Dense(vec![R::one()])
    }
    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let v = (0..n)
            .map(|i| match (self.0.get(i), o.0.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => R::zero(),
            })
            .collect();
        Self::trimmed(v)
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.0.is_empty() || o.0.is_empty() {
            return Self::zero();
        }
        let mut v = vec![R::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.0.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = v[i + j].add(&a.mul(b));
                }
            }
        }
        Self::trimmed(v)
    }
    fn neg(&self) -> Self {
        Dense(self.0.iter().map(R::neg).collect())
    }
    fn exact_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < o.degree() {
            return None;
        }
        let mut q = vec![R::zero(); self.degree() - o.degree() + 1];
        let mut r = self.clone();
        while !r.is_zero() {
            if r.degree() < o.degree() {
                return None;
            }
            let k = r.degree() - o.degree();
            let c = r.lc().exact_div(o.lc())?;
            r = r.sub_shifted(o, &c, k);
            q[k] = c;
        }
        Some(Self::trimmed(q))
    }
    fn gcd(&self, o: &Self) -> Self {
        if self.is_zero() {
            return o.unit_normal();
        }
        if o.is_zero() {
            return self.unit_normal();
        }
        let d = self.content().gcd(&o.content());
        if self.degree() == 0 || o.degree() == 0 {
            return Dense::constant(d);
        }
        Self::subresultant_gcd(self, o).scale(&d).unit_normal()
    }
    fn lead_sign(&self) -> i8 {
        self.0.last().map_or(0, R::lead_sign)
    }
    fn from_terms(terms: Vec<(Vec<u32>, BigInt)>) -> Self {
        let deg = terms.iter().map(|(e, _)| e[0] as usize).max();
        let Some(deg) = deg else { return Self::zero() };
        let mut buckets: Vec<Vec<(Vec<u32>, BigInt)>> = vec![Vec::new(); deg + 1];
        for (e, c) in terms {
            buckets[e[0] as usize].push((e[1..].to_vec(), c));
        }
        Self::trimmed(buckets.into_iter().map(R::from_terms).collect())
    }
    fn push_terms(&self, prefix: &mut Vec<u32>, out: &mut Vec<(Vec<u32>, BigInt)>) {
        for (k, c) in self.0.iter().enumerate() {
            prefix.push(k as u32);
            c.push_terms(prefix, out);
            prefix.pop();
        }
    }
}

/// Variables shared by a set of polynomials, ordered for the recursive
/// representation (outermost first). The outermost variable is the one of
/// smallest degree, which keeps the PRS short.
fn layout(polys: &[&Poly]) -> Vec<Var> {
    let mut used = [false; NVARS];
    for p in polys {
        for (u, v) in used.iter_mut().zip(p.used_vars()) {
            *u |= v;
        }
    }
    let mut vars: Vec<Var> = Var::ALL.into_iter().filter(|v| used[v.index()]).collect();
    vars.sort_by_key(|&v| (polys.iter().filter_map(|p| p.degree_in(v)).max().unwrap_or(0), v));
    vars
}

/// Integer image of `p` (times the lcm of its denominators) in the layout.
fn to_int_terms(p: &Poly, vars: &[Var]) -> Vec<(Vec<u32>, BigInt)> {
    let den = lcm_denominators(p.terms().map(|(_, c)| c));
    p.terms()
        .map(|(m, c)| {
            let e = vars.iter().map(|&v| m.exp(v)).collect();
            let n = c.numer() * (&den / c.denom());
            (e, n)
        })
        .collect()
}

fn from_int_terms(terms: Vec<(Vec<u32>, BigInt)>, vars: &[Var]) -> Poly {
    Poly::from_terms(terms.into_iter().map(|(e, c)| {
        let mut m = Mono::ONE;
        for (&v, &k) in vars.iter().zip(&e) {
            m.0[v.index()] = k;
        }
        (m, Rat::from_integer(c))
    }))
}

fn to_rec<R: Coef>(p: &Poly, vars: &[Var]) -> R {
    R::from_terms(to_int_terms(p, vars))
}

fn from_rec<R: Coef>(r: &R, vars: &[Var]) -> Poly {
    let mut out = Vec::new();
    r.push_terms(&mut Vec::with_capacity(vars.len()), &mut out);
    from_int_terms(out, vars)
}

type D1 = Dense<BigInt>;
type D2 = Dense<D1>;
type D3 = Dense<D2>;
type D4 = Dense<D3>;
type D5 = Dense<D4>;
type D6 = Dense<D5>;

macro_rules! by_depth {
    ($depth:expr, $f:ident($($arg:expr),*)) => {
        match $depth {
            1 => $f::<D1>($($arg),*),
            2 => $f::<D2>($($arg),*),
            3 => $f::<D3>($($arg),*),
            4 => $f::<D4>($($arg),*),
            5 => $f::<D5>($($arg),*),
            6 => $f::<D6>($($arg),*),
            _ => unreachable!("at most six variables"),
        }
    };
}

fn gcd_rec<R: Coef>(a: &Poly, b: &Poly, vars: &[Var]) -> Poly {
    let ra: R = to_rec(a, vars);
    let rb: R = to_rec(b, vars);
    from_rec(&ra.gcd(&rb), vars)
}

/// Primitive integer gcd with positive leading coefficient; `gcd(0, 0) = 0`.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    gcd_cofactors(a, b).0
}

/// The same gcd by the subresultant PRS on a recursive dense
/// representation. Slower; kept as an independent reference.
pub fn poly_gcd_prs(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() && b.is_zero() {
        return Poly::zero();
    }
    let vars = layout(&[a, b]);
    if vars.is_empty() {
        return Poly::one();
    }
    primitive_part(&by_depth!(vars.len(), gcd_rec(a, b, &vars)))
}

/// `(g, a', b')` with `g = gcd(a, b)` normalized as in [`poly_gcd`] and
/// exact cofactors `a = g·a'`, `b = g·b'`.
pub fn gcd_cofactors(a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
    if a.is_zero() && b.is_zero() {
        return (Poly::zero(), Poly::zero(), Poly::zero());
    }
    if a.is_zero() || b.is_zero() {
        let nz = if a.is_zero() { b } else { a };
        let c = rational_content(nz);
        let unit = Poly::constant(c);
        let (ca, cb) = if a.is_zero() { (Poly::zero(), unit) } else { (unit, Poly::zero()) };
        return (primitive_part(nz), ca, cb);
    }
    let vars = layout(&[a, b]);
    if vars.is_empty() {
        return (Poly::one(), a.clone(), b.clone());
    }
    let (ra, rb) = (rational_content(a), rational_content(b));
    let ai = to_int_terms(&a.scale(&(Rat::one() / &ra)), &vars);
    let bi = to_int_terms(&b.scale(&(Rat::one() / &rb)), &vars);
    let ((ai, fa), (bi, fb)) = (lex_normal(ai), lex_normal(bi));
    let (g, qa, qb) = modgcd::gcd_int(&ai, &bi, vars.len());
    let mut g = from_int_terms(g, &vars);
    let flip = !g.is_sign_normal();
    if flip {
        g = -g;
    }
    let sign = |r: Rat, f: bool| if f != flip { -r } else { r };
    let qa = from_int_terms(qa, &vars).scale(&sign(ra, fa));
    let qb = from_int_terms(qb, &vars).scale(&sign(rb, fb));
    (g, qa, qb)
}

/// Make the lex-leading coefficient positive; reports whether it flipped.
fn lex_normal(mut p: Vec<(Vec<u32>, BigInt)>) -> (Vec<(Vec<u32>, BigInt)>, bool) {
    let neg = p.iter().max_by(|x, y| x.0.cmp(&y.0)).is_some_and(|(_, c)| c.is_negative());
    if neg {
        for (_, c) in &mut p {
            *c = -&*c;
        }
    }
    (p, neg)
}

/// `a / b` when `b` divides `a` exactly in `Q[vars]`.
pub fn div_exact(a: &Poly, b: &Poly) -> Option<Poly> {
    if b.is_zero() {
        return None;
    }
    if a.is_zero() {
        return Some(Poly::zero());
    }
    if b.is_constant() {
        return Some(a.scale(&(Rat::one() / b.constant_term())));
    }
    let vars = layout(&[a, b]);
    // a primitive divisor divides over Q iff it divides the integer image
    let (ra, rb) = (rational_content(a), rational_content(b));
    let ai = to_int_terms(&a.scale(&(Rat::one() / &ra)), &vars);
    let bi = to_int_terms(&b.scale(&(Rat::one() / &rb)), &vars);
    let q = modgcd::div_exact_int(&ai, &bi)?;
    Some(from_int_terms(q, &vars).scale(&(ra / rb)))
}

/// Integer content of the numerators after clearing denominators, returned as
/// the rational `c` with `p / c` primitive with integer coefficients and
/// positive leading coefficient.
pub fn rational_content(p: &Poly) -> Rat {
    if p.is_zero() {
        return Rat::one();
    }
    let den = lcm_denominators(p.terms().map(|(_, c)| c));
    let num = p
        .terms()
        .fold(<BigInt as Zero>::zero(), |g, (_, c)| Integer::gcd(&g, &(c.numer() * (&den / c.denom()))));
    let c = Rat::new(num, den);
    if p.leading_coeff().is_negative() {
        -c
    } else {
        c
    }
}

pub fn primitive_part(p: &Poly) -> Poly {
    p.scale(&(Rat::one() / rational_content(p)))
}
