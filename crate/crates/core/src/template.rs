//! The template method: the functional `∫_{C^n}`, the reduction
//! `t^k ≡ binom(k, k/2) s^{k/2}`, the polynomials `Q_1^m, Q_2^m` of the
//! combinatorial series identity, and the series `h_m(s, λ)` with
//! `t^m log(1 + t + r) ≡ h_m`.
//!
//! The integral uses `∫_{C^n} s^k t^{2n-2k} = binom(2n-2k, n-k)` on the
//! degree-`2n` component; every other monomial integrates to zero.

use num_traits::{One, Zero};
use serde_json::json;

use crate::error::{domain, Error, Result};
use crate::exactnum::{binomial, double_factorial, rat, rat_from_int, Rat};
use crate::polyring::{Mono, Poly, Var};
use crate::report::Report;
use crate::series::{L2Series, LaurentX, Log2Rat, Series, EXACT};
use crate::tutte::tau_from_phi;

/// Value of a single template `t^a s^b` on `C^n`.
pub fn template_value(a: u32, b: u32, n: u32) -> Rat {
    if a + 2 * b != 2 * n || a % 2 == 1 {
        return Rat::zero();
    }
    binomial(a as i64, a as i64 / 2)
}

/// `∫_{C^n} p` for a polynomial in `t, s`.
pub fn integrate(p: &Poly, n: u32) -> Result<Rat> {
    let mut acc = Rat::zero();
    for (m, c) in p.terms() {
        if m.vars().any(|(v, e)| e > 0 && v != Var::T && v != Var::S) {
            return Err(domain("integrand must be a polynomial in t and s"));
        }
        acc += c * template_value(m.exp(Var::T), m.exp(Var::S), n);
    }
    Ok(acc)
}

/// `∫_{C^n}` of a truncated series in `t, s`; needs `2n <= D`.
pub fn integrate_series(p: &Series, n: u32) -> Result<Rat> {
    if 2 * n > p.d_cap() {
        return Err(Error::CapTooSmall(format!("∫ over C^{n} needs D >= {}, got {}", 2 * n, p.d_cap())));
    }
    let mut acc = Rat::zero();
    for ((a, b, c), v) in p.terms() {
        if c > 0 {
            return Err(domain("integrand must not involve λ"));
        }
        acc += v * template_value(a, b, n);
    }
    Ok(acc)
}

/// Replace every `t^k` by `binom(k, k/2) s^{k/2}` (zero for odd `k`).
pub fn reduce_templates(p: &Poly) -> Poly {
    Poly::from_terms(p.terms().filter(|(m, _)| m.exp(Var::T) % 2 == 0).map(|(m, c)| {
        let a = m.exp(Var::T);
        let m2 = m.with_exp(Var::T, 0).with_exp(Var::S, m.exp(Var::S) + a / 2);
        (m2, c * binomial(a as i64, a as i64 / 2))
    }))
}

/// [`reduce_templates`] on a series; the result is `t`-free with the same
/// caps, which keeps every coefficient exact.
pub fn reduce_series(p: &Series) -> Series {
    let mut out = Series::zero(p.d_cap(), p.l_cap());
    for ((a, b, c), v) in p.terms() {
        if a % 2 == 0 {
            let term = Series::monomial((0, b + a / 2, c), v * binomial(a as i64, a as i64 / 2), p.d_cap(), p.l_cap());
            out = &out + &term;
        }
    }
    out
}

fn y_poly(coeffs: impl IntoIterator<Item = (u32, Rat)>) -> Poly {
    Poly::from_terms(coeffs.into_iter().map(|(i, c)| (Mono::var(Var::Y, i), c)))
}

fn q1_coeff(m: u32, i: u32) -> Rat {
    binomial((m - i) as i64, (m - i) as i64 / 2) / rat(i as i64)
}

fn q2_coeff(m: u32, i: u32) -> Rat {
    let df = |k: i64| rat_from_int(double_factorial(k).expect("k >= -1"));
    let num = rat(2).pow((m - i) as i32) * df(i as i64) * df(m as i64 - 1);
    let den = rat(i as i64) * df(i as i64 - 1) * df(m as i64);
    -(num / den)
}

fn parity_range(m: u32) -> impl Iterator<Item = u32> {
    (1..=m).filter(move |i| (m - i).is_multiple_of(2))
}

/// `Q_1^m(y) = Σ binom(m-i, (m-i)/2) y^i / i` over `1 <= i <= m`,
/// `i ≡ m (mod 2)`, without the additive constant of the even case.
pub fn q1_poly(m: u32) -> Poly {
    y_poly(parity_range(m).map(|i| (i, q1_coeff(m, i))))
}

/// `Q_2^m(y) = -Σ 2^{m-i} i!! (m-1)!! / (i (i-1)!! m!!) y^i` over the same
/// range.
pub fn q2_poly(m: u32) -> Poly {
    y_poly(parity_range(m).map(|i| (i, q2_coeff(m, i))))
}

fn central(m: u32) -> Rat {
    if m.is_multiple_of(2) {
        binomial(m as i64, m as i64 / 2)
    } else {
        Rat::zero()
    }
}

/// `(4 - y²) Q_2' - (4/y) Q_2 = y^{m+1} - [m even] binom(m, m/2) y`.
pub fn verify_q2_ode(m: u32) -> Report {
    let mut r = Report::new("q2_ode").param("m", m);
    let q2 = q2_poly(m);
    let y = Poly::var(Var::Y);
    let over_y = Poly::from_terms(q2.terms().map(|(mono, c)| {
        let e = mono.exp(Var::Y);
        (mono.with_exp(Var::Y, e - 1), c.clone())
    }));
    let lhs = &(&(&Poly::int(4) - &(&y * &y)) * &q2.partial_derivative(Var::Y)) - &over_y.scale(&rat(4));
    let rhs = &y.pow(m + 1) - &y.scale(&central(m));
    r.case(lhs == rhs, || json!({ "lhs": lhs.to_string(), "rhs": rhs.to_string() }));
    let parity_ok = [&q2, &q1_poly(m)].iter().all(|p| p.terms().all(|(mono, _)| (mono.exp(Var::Y) + m).is_multiple_of(2)));
    r.case(parity_ok && q2.constant_term().is_zero(), || json!({ "parity": "violated" }));
    r
}

/// `Q(1/x)` as an exact Laurent polynomial.
fn at_inverse_x(q: &Poly) -> LaurentX {
    LaurentX::polynomial(q.terms().map(|(mono, c)| (-(mono.exp(Var::Y) as i64), c.clone())))
}

fn first_difference(a: &LaurentX, b: &LaurentX) -> serde_json::Value {
    let d = a.sub(b);
    let out = match d.terms().next() {
        Some((k, v)) => json!({ "exponent": k, "difference": v.to_string() }),
        None => json!({ "caps": [a.cap(), b.cap()] }),
    };
    out
}

/// The pieces of the combinatorial series identity at x-order `n`.
struct Identity {
    lhs: LaurentX,
    q1: LaurentX,
    q2_term: LaurentX,
    log_term: LaurentX,
    target: LaurentX,
}

fn identity_pieces(m: u32, n: i64) -> Result<Identity> {
    let mi = m as i64;
    let cap = n + mi + 2;
    let root = Series::from_poly(&crate::polyring::poly("1 - 4*t^2"), cap as u32, 0)?.sqrt()?;
    let lhs = LaurentX::polynomial(
        (1..=n + 1).filter(|k| (k - mi) % 2 == 0).map(|k| (k, binomial(k + mi, (k + mi) / 2) / rat(k))),
    )
    .truncate(n + 1);
    let q2_term = at_inverse_x(&q2_poly(m)).mul(&LaurentX::from_t_series(&root)?)?;
    let log_term = if m.is_multiple_of(2) {
        LaurentX::from_l2_series(&(&root + &Series::one(cap as u32, 0)).log()?)?.scale(&central(m))
    } else {
        LaurentX::zero(EXACT)
    };
    // 1/sqrt(1 - 4x²) = Σ binom(2l, l) x^{2l}
    let inv_root = LaurentX::polynomial((0..=(n + mi + 1) / 2).map(|l| (2 * l, binomial(2 * l, l)))).truncate(n + mi + 1);
    let principal = LaurentX::polynomial([(-mi - 1, Rat::one())]).sub(&LaurentX::polynomial([(-1, central(m))]));
    let target = principal.mul(&inv_root)?.truncate(n);
    Ok(Identity { lhs, q1: at_inverse_x(&q1_poly(m)), q2_term, log_term, target })
}

/// The additive constant `κ_m` of `Q_1^m`, from the `x^0` coefficient of the
/// identity. Zero for odd `m`.
pub fn kappa(m: u32) -> Result<Log2Rat> {
    let p = identity_pieces(m, 2 * m as i64 + 4)?;
    Ok(p.log_term.sub(&p.q2_term).coeff(0))
}

/// The derivative form of
/// `Σ_{k ≡ m, k > 0} binom(k+m, (k+m)/2) x^k / k
///     = Q_1^m(1/x) + Q_2^m(1/x) sqrt(1-4x²) - [m even] binom(m, m/2) log(1 + sqrt(1-4x²))`
/// to x-order `n`, then the identity itself once `κ_m` is fixed.
pub fn verify_series_identity(m: u32, n: u32) -> Result<Report> {
    if n < 2 * m + 4 {
        return Err(Error::CapTooSmall(format!("series identity for m = {m} needs order >= {}", 2 * m + 4)));
    }
    let n = n as i64;
    let mut r = Report::new("series_identity").param("m", m).param("order", n);
    let p = identity_pieces(m, n)?;
    let left = p.lhs.sub(&p.q1).add(&p.log_term).derivative().truncate(n);
    r.case(left == p.target, || json!({ "side": "series - Q1 + log", "first_difference": first_difference(&left, &p.target) }));
    let right = p.q2_term.derivative().truncate(n);
    r.case(right == p.target, || json!({ "side": "Q2 term", "first_difference": first_difference(&right, &p.target) }));

    let kappa = p.log_term.sub(&p.q2_term).coeff(0);
    if m % 2 == 1 {
        r.case(kappa.is_zero(), || json!({ "odd_constant": kappa.to_string() }));
    }
    let rhs = p.q1.add(&LaurentX::monomial(0, kappa.clone(), EXACT)).add(&p.q2_term).sub(&p.log_term);
    let full = p.lhs.sub(&rhs).truncate(n);
    r.case(full.is_zero(), || json!({ "side": "identity", "first_difference": first_difference(&p.lhs, &rhs) }));
    Ok(r.param("kappa", kappa.to_string()))
}

/// Series pieces shared by `h_m` and its template oracle at caps `(2S, L)`.
struct Background {
    d: u32,
    l: u32,
    s: Series,
    ls: Series,
    tau: Series,
    one_plus_r: Series,
}

fn background(s_cap: u32, l: u32) -> Result<Background> {
    let d = 2 * s_cap;
    let one = Series::one(d, l);
    let s = Series::var(Var::S, d, l)?;
    let ls = &Series::var(Var::L, d, l)? * &s;
    let tau = tau_from_phi(l).lift_d(d)?;
    let r = &(&s * &(&one + &ls).inverse()?) + &tau;
    Ok(Background { d, l, s, ls, tau, one_plus_r: &one + &r })
}

/// `h_m(s, λ)` at caps `(S, L)`, with its `log 2` component kept apart.
pub fn h_m_series(m: u32, s_cap: u32, l: u32) -> Result<L2Series> {
    let bg = background(s_cap, l)?;
    let (d, one) = (bg.d, Series::one(bg.d, l));
    let root = (&(&bg.one_plus_r * &bg.one_plus_r) - &bg.s.scale(&rat(4))).sqrt()?;
    let s_pow = |k: u32| Series::monomial((0, k, 0), Rat::one(), d, l);

    let mut poly_part = Series::zero(d, l);
    for i in parity_range(m) {
        let base = &s_pow((m - i) / 2) * &bg.one_plus_r.pow(i - 1);
        let q1 = (&base * &bg.one_plus_r).scale(&q1_coeff(m, i));
        let q2 = (&base * &root).scale(&q2_coeff(m, i));
        poly_part = &(&poly_part + &q1) + &q2;
    }
    let mut h = L2Series::rational(Series::zero(d, l));
    if m.is_multiple_of(2) {
        let kappa = kappa(m)?;
        let sm = s_pow(m / 2);
        poly_part = &poly_part + &sm.scale(&kappa.q);
        h.p = &h.p - &sm.scale(&kappa.p);
        // log(1 + λs + (1 + λs)τ + b) - log(1 + λs) with b = s + (1 + λs)·root
        let u = &one + &bg.ls;
        let b = &bg.s + &(&u * &root);
        let arg = &(&u + &(&u * &bg.tau)) + &b;
        let logs = arg.log()?.sub(&L2Series::rational(u.log()?.q));
        h = h.add(&logs.mul_series(&sm).scale(&central(m)));
    }
    let sign = if m.is_multiple_of(2) { rat(-1) } else { rat(1) };
    h.q = &h.q + &poly_part.scale(&sign);
    Ok(h.restrict(d, l))
}

/// `reduce_templates(t^m log(1 + t + r))` at caps `(S, L)`, expanded
/// directly.
pub fn template_oracle(m: u32, s_cap: u32, l: u32) -> Result<Series> {
    let bg = background(s_cap, l)?;
    let t = Series::var(Var::T, bg.d, bg.l)?;
    let lg = (&t + &bg.one_plus_r).log()?;
    if !lg.p.is_zero() {
        return Err(Error::Invariant("log(1 + t + r) has no constant term".into()));
    }
    Ok(reduce_series(&(&t.pow(m) * &lg.q)))
}

/// `t^m log(1 + t + r) ≡ h_m` coefficientwise, the `log 2` parts cancel, and
/// every monomial `s^i λ^j` of `h_m` has `2i - 2j <= 2m`. Needs `S > m` so
/// that monomials breaking the bound fit under the caps.
pub fn verify_h_m(m: u32, s_cap: u32, l: u32) -> Result<Report> {
    if s_cap <= m {
        return Err(Error::CapTooSmall(format!("h_{m} degree check needs S > {m}, got S = {s_cap}")));
    }
    let mut r = Report::new("h_m").param("m", m).param("s_cap", s_cap).param("lambda_cap", l);
    let h = h_m_series(m, s_cap, l)?;
    let oracle = template_oracle(m, s_cap, l)?;
    let diff = &h.q - &oracle;
    r.case(diff.is_zero(), || {
        let first = diff.terms().next().map(|((a, b, c), v)| format!("{v} * t^{a} s^{b} l^{c}"));
        json!({ "equivalence": "mismatch", "first_difference": first })
    });
    r.case(h.p.is_zero(), || json!({ "log2_part": h.p.to_string() }));
    r.absorb(&h.q.assert_degree_le(2 * m as i64));
    Ok(r)
}
