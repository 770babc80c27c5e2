//! Modular multivariate gcd over `Z` (Brown's dense algorithm).
//!
//! Images modulo 62-bit primes are computed by evaluating away variables one
//! at a time down to univariate Euclid, then interpolated back (Newton) and
//! combined by Chinese remaindering. A candidate is accepted only after it
//! divides both inputs exactly over `Z`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exponent vector; lexicographic order with the first variable most
/// significant.
type Exp = Vec<u32>;
type ModPoly = BTreeMap<Exp, u64>;
type Uni = Vec<u64>;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes below `2^62`, largest first.
struct Primes(u64);

impl Iterator for Primes {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            self.0 -= 2;
            if is_prime(self.0) {
                return Some(self.0);
            }
        }
    }
}

fn primes() -> Primes {
    Primes((1u64 << 62) + 1)
}

// ---- univariate polynomials over F_p, lowest degree first ----

fn uni_trim(mut a: Uni) -> Uni {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn uni_eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| add_mod(mul_mod(acc, x, p), c, p))
}

fn uni_monic(a: Uni, p: u64) -> Uni {
    match a.last() {
        None => a,
        Some(&lc) => {
            let inv = inv_mod(lc, p);
            a.into_iter().map(|c| mul_mod(c, inv, p)).collect()
        }
    }
}

fn uni_rem(mut a: Uni, b: &[u64], p: u64) -> Uni {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db {
        let lc = *a.last().expect("nonempty");
        let q = mul_mod(lc, inv, p);
        let shift = a.len() - 1 - db;
        for (j, &c) in b.iter().enumerate() {
            a[shift + j] = sub_mod(a[shift + j], mul_mod(q, c, p), p);
        }
        a = uni_trim(a);
    }
    a
}

fn uni_divexact(a: &[u64], b: &[u64], p: u64) -> Option<Uni> {
    if a.is_empty() {
        return Some(Vec::new());
    }
    if a.len() < b.len() {
        return None;
    }
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut r = a.to_vec();
    let mut q = vec![0; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = mul_mod(r[i + db], inv, p);
        q[i] = c;
        if c != 0 {
            for (j, &bc) in b.iter().enumerate() {
                r[i + j] = sub_mod(r[i + j], mul_mod(c, bc, p), p);
            }
        }
    }
    r.iter().all(|&c| c == 0).then_some(uni_trim(q))
}

fn uni_gcd(a: &[u64], b: &[u64], p: u64) -> Uni {
    let (mut a, mut b) = (uni_trim(a.to_vec()), uni_trim(b.to_vec()));
    while !b.is_empty() {
        let r = uni_rem(a, &b, p);
        a = b;
        b = r;
    }
    uni_monic(a, p)
}

fn uni_mul(a: &[u64], b: &[u64], p: u64) -> Uni {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = add_mod(out[i + j], mul_mod(x, y, p), p);
        }
    }
    uni_trim(out)
}

// ---- sparse multivariate polynomials over F_p ----

fn lead(a: &ModPoly) -> (&Exp, u64) {
    let (e, &c) = a.iter().next_back().expect("nonzero polynomial");
    (e, c)
}

fn monic(a: ModPoly, p: u64) -> ModPoly {
    if a.is_empty() {
        return a;
    }
    let inv = inv_mod(lead(&a).1, p);
    a.into_iter().map(|(e, c)| (e, mul_mod(c, inv, p))).collect()
}

fn scale(a: &ModPoly, c: u64, p: u64) -> ModPoly {
    if c == 0 {
        return ModPoly::new();
    }
    a.iter().map(|(e, &v)| (e.clone(), mul_mod(v, c, p))).collect()
}

/// Split off the last variable: `a = Σ_e x'^e · u_e(x_last)`.
fn split_last(a: &ModPoly) -> BTreeMap<Exp, Uni> {
    let mut out: BTreeMap<Exp, Uni> = BTreeMap::new();
    for (e, &c) in a {
        let (head, last) = e.split_at(e.len() - 1);
        let u = out.entry(head.to_vec()).or_default();
        let k = last[0] as usize;
        if u.len() <= k {
            u.resize(k + 1, 0);
        }
        u[k] = c;
    }
    out
}

fn join_last(parts: &BTreeMap<Exp, Uni>) -> ModPoly {
    let mut out = ModPoly::new();
    for (head, u) in parts {
        for (k, &c) in u.iter().enumerate() {
            if c != 0 {
                let mut e = head.clone();
                e.push(k as u32);
                out.insert(e, c);
            }
        }
    }
    out
}

fn eval_last(a: &ModPoly, x: u64, p: u64) -> ModPoly {
    split_last(a)
        .into_iter()
        .filter_map(|(head, u)| {
            let v = uni_eval(&u, x, p);
            (v != 0).then_some((head, v))
        })
        .collect()
}

fn mul_uni_last(a: &ModPoly, u: &[u64], p: u64) -> ModPoly {
    let parts: BTreeMap<Exp, Uni> = split_last(a).into_iter().map(|(h, v)| (h, uni_mul(&v, u, p))).collect();
    join_last(&parts)
}

/// Exact division over `F_p`; `None` if `b` does not divide `a`.
fn div_exact_mod(a: &ModPoly, b: &ModPoly, p: u64) -> Option<ModPoly> {
    let (lb, lcb) = lead(b);
    let (lb, inv) = (lb.clone(), inv_mod(lcb, p));
    let mut r = a.clone();
    let mut q = ModPoly::new();
    while let Some((le, lc)) = r.iter().next_back().map(|(e, &c)| (e.clone(), c)) {
        if le.iter().zip(&lb).any(|(x, y)| x < y) {
            return None;
        }
        let m: Exp = le.iter().zip(&lb).map(|(x, y)| x - y).collect();
        let c = mul_mod(lc, inv, p);
        for (e, &v) in b {
            let k: Exp = e.iter().zip(&m).map(|(x, y)| x + y).collect();
            let t = mul_mod(c, v, p);
            let slot = r.entry(k.clone()).or_insert(0);
            *slot = sub_mod(*slot, t, p);
            if *slot == 0 {
                r.remove(&k);
            }
        }
        q.insert(m, c);
    }
    Some(q)
}

/// Monic gcd over `F_p` of polynomials in `nvars` variables.
fn gcd_mod(a: &ModPoly, b: &ModPoly, nvars: usize, p: u64) -> ModPoly {
    if a.is_empty() {
        return monic(b.clone(), p);
    }
    if b.is_empty() {
        return monic(a.clone(), p);
    }
    if nvars == 1 {
        let ua = split_last(a).remove(&Vec::new()).unwrap_or_default();
        let ub = split_last(b).remove(&Vec::new()).unwrap_or_default();
        let g = uni_gcd(&ua, &ub, p);
        return join_last(&BTreeMap::from([(Vec::new(), g)]));
    }
    let pa = split_last(a);
    let pb = split_last(b);
    let content = |parts: &BTreeMap<Exp, Uni>| parts.values().fold(Vec::new(), |g, u| uni_gcd(&g, u, p));
    let (ca, cb) = (content(&pa), content(&pb));
    let c = uni_gcd(&ca, &cb, p);
    let strip = |parts: BTreeMap<Exp, Uni>, cont: &Uni| -> BTreeMap<Exp, Uni> {
        parts.into_iter().map(|(h, u)| (h, uni_divexact(&u, cont, p).expect("content divides"))).collect()
    };
    let pa = strip(pa, &ca);
    let pb = strip(pb, &cb);
    let lca = pa.values().next_back().expect("nonzero").clone();
    let lcb = pb.values().next_back().expect("nonzero").clone();
    let g = uni_gcd(&lca, &lcb, p);
    let (a1, b1) = (join_last(&pa), join_last(&pb));
    let deg_last = |parts: &BTreeMap<Exp, Uni>| parts.values().map(|u| u.len().saturating_sub(1)).max().unwrap_or(0);
    let bound = g.len().saturating_sub(1) + deg_last(&pa).min(deg_last(&pb));

    let mut h_acc: Option<(BTreeMap<Exp, Uni>, Exp)> = None;
    let mut modulus: Uni = vec![1];
    let mut count = 0usize;
    let mut alpha = 0u64;
    loop {
        alpha += 1;
        assert!(alpha < p, "ran out of evaluation points");
        if uni_eval(&lca, alpha, p) == 0 || uni_eval(&lcb, alpha, p) == 0 {
            continue;
        }
        let (ea, eb) = (eval_last(&a1, alpha, p), eval_last(&b1, alpha, p));
        let img = scale(&gcd_mod(&ea, &eb, nvars - 1, p), uni_eval(&g, alpha, p), p);
        let deg = lead(&img).0.clone();
        let (acc, acc_deg) = match &mut h_acc {
            Some((acc, d)) if deg == *d => (acc, d.clone()),
            Some((_, d)) if deg > *d => continue,
            _ => {
                // first image, or a lower degree exposes earlier points as unlucky
                let parts = img.into_iter().map(|(e, c)| (e, vec![c])).collect();
                h_acc = Some((parts, deg));
                modulus = vec![sub_mod(0, alpha, p), 1];
                count = 1;
                continue;
            }
        };
        let _ = acc_deg;
        // Newton step: acc += (img - acc(alpha)) * modulus / modulus(alpha)
        let scale_inv = inv_mod(uni_eval(&modulus, alpha, p), p);
        let mut changed = false;
        let keys: std::collections::BTreeSet<Exp> = acc.keys().cloned().chain(img.keys().cloned()).collect();
        for k in keys {
            let cur = acc.get(&k).map_or(0, |u| uni_eval(u, alpha, p));
            let want = img.get(&k).copied().unwrap_or(0);
            let delta = mul_mod(sub_mod(want, cur, p), scale_inv, p);
            if delta != 0 {
                changed = true;
                let corr: Uni = modulus.iter().map(|&m| mul_mod(m, delta, p)).collect();
                let u = acc.entry(k).or_default();
                if u.len() < corr.len() {
                    u.resize(corr.len(), 0);
                }
                for (x, y) in u.iter_mut().zip(&corr) {
                    *x = add_mod(*x, *y, p);
                }
                *u = uni_trim(std::mem::take(u));
            }
        }
        acc.retain(|_, u| !u.is_empty());
        modulus = uni_mul(&modulus, &[sub_mod(0, alpha, p), 1], p);
        count += 1;
        if !changed || count > bound + 1 {
            let cont = acc.values().fold(Vec::new(), |g, u| uni_gcd(&g, u, p));
            let cand: BTreeMap<Exp, Uni> =
                acc.iter().map(|(h, u)| (h.clone(), uni_divexact(u, &cont, p).expect("content divides"))).collect();
            let cand = join_last(&cand);
            if div_exact_mod(&a1, &cand, p).is_some() && div_exact_mod(&b1, &cand, p).is_some() {
                return monic(mul_uni_last(&cand, &c, p), p);
            }
        }
    }
}

// ---- integer level ----

pub(crate) type IntTerms = Vec<(Exp, BigInt)>;

fn reduce_mod(a: &IntTerms, p: u64) -> ModPoly {
    let pb = BigInt::from(p);
    a.iter()
        .filter_map(|(e, c)| {
            let r = c.mod_floor(&pb).to_u64().expect("residue fits");
            (r != 0).then(|| (e.clone(), r))
        })
        .collect()
}

fn int_lead(a: &IntTerms) -> (&Exp, &BigInt) {
    let (e, c) = a.iter().max_by(|x, y| x.0.cmp(&y.0)).expect("nonzero");
    (e, c)
}

fn int_content(a: &IntTerms) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
}

/// `a / b` over `Z` if `b` divides `a`; a modular image rejects most
/// non-divisors before any big-integer work.
pub(crate) fn div_exact_int(a: &IntTerms, b: &IntTerms) -> Option<IntTerms> {
    let (lb, lcb) = int_lead(b);
    let (lb, lcb) = (lb.clone(), lcb.clone());
    let p = primes().find(|&p| !(&lcb % BigInt::from(p)).is_zero()).expect("some prime works");
    div_exact_mod(&reduce_mod(a, p), &reduce_mod(b, p), p)?;
    let mut r: BTreeMap<Exp, BigInt> = a.iter().filter(|(_, c)| !c.is_zero()).cloned().collect();
    let mut q = IntTerms::new();
    while let Some((le, lc)) = r.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
        if le.iter().zip(&lb).any(|(x, y)| x < y) {
            return None;
        }
        let (c, rem) = lc.div_rem(&lcb);
        if !rem.is_zero() {
            return None;
        }
        let m: Exp = le.iter().zip(&lb).map(|(x, y)| x - y).collect();
        for (e, v) in b {
            let k: Exp = e.iter().zip(&m).map(|(x, y)| x + y).collect();
            let slot = r.entry(k.clone()).or_insert_with(BigInt::zero);
            *slot -= &c * v;
            if slot.is_zero() {
                r.remove(&k);
            }
        }
        q.push((m, c));
    }
    Some(q)
}

/// Gcd of integer polynomials in `nvars` variables that are primitive with
/// positive lex-leading coefficient, together with the exact cofactors
/// `(g, a / g, b / g)`. `g` is primitive with positive lex-leading
/// coefficient.
pub(crate) fn gcd_int(a: &IntTerms, b: &IntTerms, nvars: usize) -> (IntTerms, IntTerms, IntTerms) {
    let gamma = int_lead(a).1.gcd(int_lead(b).1);
    let (lca, lcb) = (int_lead(a).1.clone(), int_lead(b).1.clone());
    let trivial = || (vec![(vec![0; nvars], BigInt::one())], a.clone(), b.clone());

    let mut acc: Option<(BTreeMap<Exp, BigInt>, Exp, BigInt)> = None;
    for p in primes() {
        let pb = BigInt::from(p);
        if (&lca % &pb).is_zero() || (&lcb % &pb).is_zero() {
            continue;
        }
        let img = gcd_mod(&reduce_mod(a, p), &reduce_mod(b, p), nvars, p);
        let deg = lead(&img).0.clone();
        if deg.iter().all(|&d| d == 0) {
            return trivial();
        }
        let g_p = gamma.mod_floor(&pb).to_u64().expect("residue fits");
        let img = scale(&img, g_p, p);
        match &mut acc {
            Some((_, d, _)) if deg > *d => continue,
            Some((coeffs, d, m)) if deg == *d => {
                // CRT: x ≡ coeffs (mod m), x ≡ img (mod p)
                let m_inv = inv_mod((*m).mod_floor(&pb).to_u64().expect("fits"), p);
                let mut changed = false;
                let keys: std::collections::BTreeSet<Exp> = coeffs.keys().cloned().chain(img.keys().cloned()).collect();
                let new_m = &*m * &pb;
                let half = &new_m >> 1;
                for k in keys {
                    let old = coeffs.get(&k).cloned().unwrap_or_default();
                    let want = img.get(&k).copied().unwrap_or(0);
                    let cur = old.mod_floor(&pb).to_u64().expect("fits");
                    let t = mul_mod(sub_mod(want, cur, p), m_inv, p);
                    if t != 0 {
                        changed = true;
                    }
                    let mut x = (&old + &*m * BigInt::from(t)).mod_floor(&new_m);
                    if x > half {
                        x -= &new_m;
                    }
                    if x.is_zero() {
                        coeffs.remove(&k);
                    } else {
                        coeffs.insert(k, x);
                    }
                }
                *m = new_m;
                if !changed {
                    let cand: IntTerms = coeffs.iter().map(|(e, c)| (e.clone(), c.clone())).collect();
                    let cont = int_content(&cand);
                    let sign = if int_lead(&cand).1.is_negative() { -BigInt::one() } else { BigInt::one() };
                    let cand: IntTerms = cand.into_iter().map(|(e, c)| (e, c / &cont * &sign)).collect();
                    if let Some(qa) = div_exact_int(a, &cand) {
                        if let Some(qb) = div_exact_int(b, &cand) {
                            return (cand, qa, qb);
                        }
                    }
                }
            }
            _ => {
                let half = &pb >> 1;
                let coeffs = img
                    .into_iter()
                    .map(|(e, c)| {
                        let mut x = BigInt::from(c);
                        if x > half {
                            x -= &pb;
                        }
                        (e, x)
                    })
                    .collect();
                acc = Some((coeffs, deg, pb));
            }
        }
    }
    unreachable!("the prime iterator is unbounded")
}
