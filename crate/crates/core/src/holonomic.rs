//! The holonomic tower behind the degree bound for
//! `b(s, λ) = s + (1 + λs)·sqrt((1 + r)² - 4s)`.
//!
//! With `φ(λ)` the root of `P = φ - λ(1+φ)^4`, every `λ`-derivative of
//! `F = b - s` is `Q_i(s, λ, φ)·F` for some `Q_i` of `φ`-degree at most 3.
//! Five consecutive `Q_i` are linearly dependent over `Q(s, λ)`; the
//! dependencies `R` (for `Q_0..Q_4`) and `R̂` (for `Q_1..Q_5`) give two
//! recursions for the coefficients `b_l`.

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactnum::{binomial, factorial_rat, rat, Rat};
use crate::polyring::{
    clear_and_normalize, div_exact, ext_gcd, nullspace, poly, poly_gcd, PhiPoly, PhiQuotient, Poly,
    RatFun, UPoly, Var,
};
use crate::report::Report;
use crate::series::Series;
use crate::tutte::{phi_series, tau_from_phi};

pub const MAX_TOWER: usize = 6;

/// The quartic `P = φ - λ(1+φ)^4`.
pub fn quartic() -> Poly {
    poly("f - l*(1 + f)^4")
}

pub fn quotient_ring() -> PhiQuotient {
    PhiQuotient::new(UPoly::from_poly(&quartic(), Var::F)).expect("P is a quartic in φ")
}

/// `(1 + λs + s + (1 + λs)τ)² - 4s(1 + λs)²` with `τ = φ(1 - φ - φ²)`, so that
/// `F² = this` on `φ = φ(λ)`.
pub fn f_squared() -> Poly {
    poly("(1 + l*s + s + (1 + l*s)*f*(1 - f - f^2))^2 - 4*s*(1 + l*s)^2")
}

/// The displayed closed form of `φ'(λ)`.
pub fn p0_expected() -> PhiPoly {
    let num = UPoly::from_poly(&poly("12*l*f^3 + 52*l*f^2 + 4*l*f - 36*l + 9*f"), Var::F);
    let den = RatFun::from_poly(poly("(256*l - 27)*l"));
    let coeffs: Vec<RatFun> = (0..4).map(|k| &num.coeff(k) / &den).collect();
    PhiPoly::from_coeffs(coeffs.try_into().expect("four coefficients"))
}

/// `φ' = -P_λ / P_φ`, computed as `-V·P_λ mod P` where `U·P + V·P_φ = 1`.
pub fn compute_p0() -> Result<PhiPoly> {
    let ring = quotient_ring();
    let p = ring.modulus().clone();
    let (g, _, v) = ext_gcd(&p, &p.derivative())?;
    if g.degree() != Some(0) {
        return Err(Error::Invariant("P and dP/dφ are not coprime".into()));
    }
    let p_lambda = p.partial_coeffs(Var::L);
    Ok(ring.reduce(&v.mul(&p_lambda).neg()))
}

/// `Q_0..Q_kmax` reduced modulo `P`.
pub fn q_tower(kmax: usize) -> Result<Vec<PhiPoly>> {
    if !(1..=MAX_TOWER).contains(&kmax) {
        return Err(crate::error::domain(format!("tower height must be in 1..={MAX_TOWER}")));
    }
    let ring = quotient_ring();
    let p0 = compute_p0()?;
    let f2 = ring.reduce(&UPoly::from_poly(&f_squared(), Var::F));
    let inv = ring.inverse(&f2.scale(&RatFun::constant(rat(2))))?;
    let p1 = ring.mul(&f2.partial_coeffs(Var::L), &inv);
    let p2 = ring.mul(&f2.derivative_phi(), &inv);
    let q1 = p1.add(&ring.mul(&p0, &p2));
    let mut tower = vec![PhiPoly::one(), q1.clone()];
    while tower.len() <= kmax {
        let q = tower.last().expect("nonempty");
        let next = q.partial_coeffs(Var::L).add(&ring.mul(&q.derivative_phi(), &p0)).add(&ring.mul(q, &q1));
        tower.push(next);
    }
    Ok(tower)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DependencyKind {
    /// `Σ_{i=0}^4 R_i Q_i / i! = 0`.
    R,
    /// `Σ_{i=1}^5 R̂_i Q_i / i! = 0`.
    RHat,
}

impl DependencyKind {
    pub fn first(self) -> usize {
        match self {
            DependencyKind::R => 0,
            DependencyKind::RHat => 1,
        }
    }

    /// `k` below which `R_{ik}` vanishes is `i - lag`.
    pub fn lag(self) -> usize {
        match self {
            DependencyKind::R => 1,
            DependencyKind::RHat => 2,
        }
    }

    /// The factor of `R_{i,i-lag}`.
    pub fn factor(self) -> Poly {
        match self {
            DependencyKind::R => poly("s - 1"),
            DependencyKind::RHat => poly("3*s + 1"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DependencyKind::R => "R",
            DependencyKind::RHat => "Rhat",
        }
    }
}

/// A normalized dependency: coprime integer polynomials in `s, λ` with
/// content one, signed so that the lowest structural coefficient is a
/// positive multiple of the kind's factor.
#[derive(Debug, Clone, PartialEq)]
pub struct DependencyVector {
    pub kind: DependencyKind,
    /// `entries[j]` multiplies `Q_{first + j} / (first + j)!`.
    pub entries: Vec<Poly>,
}

impl DependencyVector {
    pub fn entry(&self, i: usize) -> &Poly {
        &self.entries[i - self.kind.first()]
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        self.kind.first()..=self.kind.first() + self.entries.len() - 1
    }

    /// `R_{ik} = k!·[λ^k] R_i`, a polynomial in `s`.
    pub fn coeff(&self, i: usize, k: usize) -> Poly {
        lambda_coeff(self.entry(i), k)
    }

    /// `c_i` with `R_{i,i-lag} = c_i·factor`, if it has that shape.
    pub fn structural_constant(&self, i: usize) -> Option<Rat> {
        let c = self.coeff(i, i - self.kind.lag());
        let q = div_exact(&c, &self.kind.factor())?;
        (q.is_constant() && !q.is_zero()).then(|| q.constant_term())
    }
}

pub fn lambda_coeff(p: &Poly, k: usize) -> Poly {
    p.coefficients_in(Var::L).get(k).cloned().unwrap_or_else(Poly::zero).scale(&factorial_rat(k as u32))
}

fn dependency_matrix(tower: &[PhiPoly], kind: DependencyKind) -> Vec<Vec<RatFun>> {
    let cols: Vec<usize> = (kind.first()..kind.first() + 5).collect();
    (0..4)
        .map(|k| cols.iter().map(|&i| tower[i].coeff(k).scale(&(Rat::one() / factorial_rat(i as u32)))).collect())
        .collect()
}

pub fn find_dependency(tower: &[PhiPoly], kind: DependencyKind) -> Result<DependencyVector> {
    let needed = kind.first() + 4;
    if tower.len() <= needed {
        return Err(crate::error::domain(format!("{} needs Q_0..Q_{needed}", kind.name())));
    }
    let kernel = nullspace(&dependency_matrix(tower, kind));
    if kernel.len() != 1 {
        return Err(Error::KernelDimension { expected: 1, found: kernel.len() });
    }
    let mut entries = clear_and_normalize(&kernel[0], None)?;
    let mut dv = DependencyVector { kind, entries: entries.clone() };
    // the lowest entry with a nonzero constant structural term
    let sign = dv.coeff(kind.lag(), 0).leading_coeff();
    if sign.is_negative() {
        entries = entries.iter().map(|p| -p).collect();
        dv = DependencyVector { kind, entries };
    }
    Ok(dv)
}

pub fn find_r(tower: &[PhiPoly]) -> Result<DependencyVector> {
    find_dependency(tower, DependencyKind::R)
}

pub fn find_rhat(tower: &[PhiPoly]) -> Result<DependencyVector> {
    find_dependency(tower, DependencyKind::RHat)
}

/// Re-expansion and the structural claims on a dependency.
pub fn verify_dependency(tower: &[PhiPoly], dv: &DependencyVector) -> Report {
    let kind = dv.kind;
    let mut r = Report::new(format!("dependency_{}", kind.name()));
    let mut sum = PhiPoly::zero();
    for i in dv.indices() {
        let c = RatFun::from_poly(dv.entry(i).clone()).scale(&(Rat::one() / factorial_rat(i as u32)));
        sum = sum.add(&tower[i].scale(&c));
    }
    r.case(sum.is_zero(), || json!({ "reexpansion": "nonzero" }));
    for i in dv.indices() {
        for k in 0..i.saturating_sub(kind.lag()) {
            let c = dv.coeff(i, k);
            r.case(c.is_zero(), || json!({ "i": i, "k": k, "coeff": c.to_string() }));
        }
    }
    for i in kind.lag()..=*dv.indices().end() {
        let c = dv.structural_constant(i);
        r.case(c.as_ref().is_some_and(|c| c.is_positive()), || {
            json!({ "i": i, "k": i - kind.lag(), "coeff": dv.coeff(i, i - kind.lag()).to_string() })
        });
    }
    if kind == DependencyKind::RHat {
        for i in dv.indices() {
            let bound = 2 * (3 - i as i64);
            let worst = dv.entry(i).terms().map(|(m, _)| 2 * m.exp(Var::S) as i64 - 2 * m.exp(Var::L) as i64).max();
            r.case(worst.is_none_or(|w| w <= bound), || json!({ "i": i, "wdeg": worst, "bound": bound }));
        }
    }
    r
}

/// Coefficients `b_0..b_L` of `b = Σ b_l λ^l / l!`.
#[derive(Debug, Clone, PartialEq)]
pub struct BSeq {
    pub source: BSource,
    pub b: Vec<Poly>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BSource {
    Direct,
    RecursionR,
    RecursionRHat,
}

impl BSeq {
    pub fn degree_report(&self) -> Report {
        let mut r = Report::new(format!("b_degree_{:?}", self.source).to_lowercase());
        for (l, b) in self.b.iter().enumerate() {
            let d = b.degree_in(Var::S).unwrap_or(0);
            r.case(d as usize <= l, || json!({ "l": l, "deg_s": d, "b": b.to_string() }));
        }
        r
    }
}

/// `F = sqrt(F²)` as a series in `s, λ` with the root of `P` substituted.
pub fn f_series(s_cap: u32, l: u32) -> Result<Series> {
    let tau = tau_from_phi(l).lift_d(2 * s_cap)?;
    let one = Series::one(2 * s_cap, l);
    let s = Series::var(Var::S, 2 * s_cap, l)?;
    let ls = &Series::var(Var::L, 2 * s_cap, l)? * &s;
    let u = &one + &ls;
    let base = &(&u + &s) + &(&u * &tau);
    let sq = &(&base * &base) - &(&(&s * &u) * &u).scale(&rat(4));
    sq.sqrt()
}

/// `b_0..b_L` by expanding `b` at caps `(S, L)`. Coefficients that reach the
/// s-cap make the run inconclusive.
pub fn b_direct(s_cap: u32, l: u32) -> Result<(BSeq, Report)> {
    let mut r = Report::new("b_direct").param("s_cap", s_cap).param("lambda_cap", l);
    if s_cap < l + 2 {
        return Err(Error::CapTooSmall(format!("b_direct needs S >= L + 2, got S = {s_cap}, L = {l}")));
    }
    let b = &f_series(s_cap, l)? + &Series::var(Var::S, 2 * s_cap, l)?;
    let mut seq = Vec::new();
    for k in 0..=l {
        let p = b.lambda_slice(k).scale(&factorial_rat(k));
        let deg = p.degree_in(Var::S).unwrap_or(0);
        if deg >= s_cap {
            r.inconclusive(format!("b_{k} reaches the s-cap {s_cap}"));
        }
        r.case(deg <= k, || json!({ "l": k, "deg_s": deg, "b": p.to_string() }));
        seq.push(p);
    }
    Ok((BSeq { source: BSource::Direct, b: seq }, r))
}

/// One step of a recursion: the coefficient of `λ^l / l!` in
/// `Σ_i R_i b^{(i)} / i!`, split into the part multiplying `b_target` and
/// the rest.
#[allow(clippy::needless_range_loop)]
fn recursion_step(dv: &DependencyVector, b: &[Poly], l: usize, target: usize) -> (Poly, Poly) {
    let mut lead = Poly::zero();
    let mut rest = Poly::zero();
    for i in dv.indices() {
        let w = Rat::one() / factorial_rat(i as u32);
        for m in i..=target {
            // k = l + i - m must be a valid λ-index
            let Some(k) = (l + i).checked_sub(m) else { continue };
            let coeff = binomial(l as i64, (m - i) as i64) * &w;
            if coeff.is_zero() {
                continue;
            }
            let rik = dv.coeff(i, k);
            if rik.is_zero() {
                continue;
            }
            let term = rik.scale(&coeff);
            if m == target {
                lead = &lead + &term;
            } else {
                rest = &rest + &(&term * &b[m]);
            }
        }
    }
    (lead, rest)
}

/// `b_0..b_L` from a dependency. `R` solves for `b_{l+1}` from `b_0` on;
/// `R̂` solves for `b_{l+2}` from `b_0 = 1`, `b_1 = 3s + 1`. Each step is an
/// exact division whose failure is reported with a witness.
pub fn b_recursion(dv: &DependencyVector, l_max: usize) -> (BSeq, Report) {
    let kind = dv.kind;
    let source = match kind {
        DependencyKind::R => BSource::RecursionR,
        DependencyKind::RHat => BSource::RecursionRHat,
    };
    let mut r = Report::new(format!("b_recursion_{}", kind.name())).param("b_orders", l_max as u64);
    let mut b = vec![Poly::one()];
    if kind == DependencyKind::RHat {
        b.push(poly("3*s + 1"));
    }
    let lag = kind.lag();
    let mut l = 0;
    while b.len() <= l_max {
        let target = l + lag;
        let (lead, rest) = recursion_step(dv, &b, l, target);
        // R carries the inhomogeneous term R_0·s from F = b - s
        let rhs = match kind {
            DependencyKind::R => &dv.coeff(0, l) * &poly("s"),
            DependencyKind::RHat => Poly::zero(),
        };
        let numer = &rhs - &rest;
        let factor_ok = div_exact(&lead, &kind.factor()).is_some_and(|q| q.is_constant() && !q.is_zero());
        r.case(factor_ok, || json!({ "l": l, "leading": lead.to_string() }));
        match div_exact(&numer, &lead) {
            Some(q) => {
                r.case(true, || Value::Null);
                b.push(q);
            }
            None => {
                r.case(false, || json!({ "l": l, "numerator": numer.to_string(), "divisor": lead.to_string() }));
                break;
            }
        }
        l += 1;
    }
    (BSeq { source, b }, r)
}

/// Compare `λ^J·d^iF/dλ^i` with `(λ^J·Q_i)(φ(λ))·F` as series at caps
/// `(S, L)`, where `λ^J` clears the `λ`-poles of `Q_i`.
pub fn verify_tower_series(tower: &[PhiPoly], imax: usize, s_cap: u32, l: u32) -> Result<Report> {
    let mut r = Report::new("tower_series").param("s_cap", s_cap).param("lambda_cap", l);
    let d = 2 * s_cap;
    let phi = phi_series(l).lift_d(d)?;
    let f = f_series(s_cap, l)?;
    let mut deriv = f.clone();
    for (i, q) in tower.iter().enumerate().take(imax + 1).skip(1) {
        deriv = deriv.derivative(Var::L)?;
        let lc = deriv.l_cap();
        let mut lhs_scale = 0u32;
        let mut terms = Vec::new();
        for (k, c) in q.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let j = c.den().min_degree_in(Var::L).unwrap_or(0);
            lhs_scale = lhs_scale.max(j);
            terms.push((k, c, j));
        }
        let mut value = Series::zero(d, lc);
        for (k, c, j) in terms {
            // λ^J·num/den = λ^{J-j}·num/(den/λ^j)
            let den = div_exact(c.den(), &Poly::var(Var::L).pow(j)).expect("λ^j divides");
            let num = Series::from_poly(c.num(), d, lc + lhs_scale)?;
            let inv = Series::from_poly(&den, d, lc + lhs_scale)?.inverse()?;
            let coeff = (&num * &inv).shift((0, 0, lhs_scale - j));
            let phik = phi.pow(k as u32).restrict(d, lc + lhs_scale);
            value = &value + &(&coeff * &phik).restrict(d, lc);
        }
        let rhs = &value * &f.restrict(d, lc);
        let lhs = deriv.shift((0, 0, lhs_scale));
        let diff = &lhs - &rhs;
        r.case(diff.is_zero(), || json!({ "i": i, "first_difference": diff.terms().next().map(|(k, v)| format!("{v} * t^{} s^{} l^{}", k.0, k.1, k.2)) }));
    }
    Ok(r)
}

/// `gcd(s - 1, 3s + 1) = 1`.
pub fn verify_coprime_factors() -> Report {
    let mut r = Report::new("coprime_factors");
    let g = poly_gcd(&DependencyKind::R.factor(), &DependencyKind::RHat.factor());
    r.case(g.is_one(), || json!({ "gcd": g.to_string() }));
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p0_matches_closed_form() {
        assert_eq!(compute_p0().unwrap(), p0_expected());
    }

    #[test]
    fn first_tower_levels() {
        let t = q_tower(2).unwrap();
        assert_eq!(t[0], PhiPoly::one());
        assert_eq!(t.len(), 3);
        assert!(verify_tower_series(&t, 2, 6, 4).unwrap().passed());
    }

    #[test]
    fn b_direct_small() {
        let (b, rep) = b_direct(6, 4).unwrap();
        assert!(rep.passed(), "{}", rep.summary_line());
        assert_eq!(b.b[0], poly("1"));
        assert_eq!(b.b[1], poly("3*s + 1"));
        assert!(b_direct(4, 4).is_err());
    }
}
