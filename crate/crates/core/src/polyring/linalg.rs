use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::field::Field;
use super::gcd::{div_exact, poly_gcd};
use super::poly::Poly;
use super::ratfun::RatFun;
use crate::error::{domain, Result};
use crate::exactnum::Rat;

pub type Matrix<F> = Vec<Vec<F>>;

/// Fraction-free (Bareiss) forward elimination. Returns the echelon form and
/// the pivot columns. Entries below the pivots are zeroed; every division is
/// by the previous pivot.
pub fn bareiss_echelon<F: Field>(m: &Matrix<F>) -> (Matrix<F>, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = F::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv_prev = prev.inv().expect("previous pivot is nonzero");
        for i in r + 1..rows {
            let factor = a[i][c].clone();
            for j in c + 1..cols {
                let v = a[r][c].mul(&a[i][j]).sub(&factor.mul(&a[r][j]));
                a[i][j] = v.mul(&inv_prev);
            }
            a[i][c] = F::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    bareiss_echelon(m).1.len()
}

/// Basis of the right kernel `{v : M v = 0}`, one vector per free column.
pub fn nullspace<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let cols = m.first().map_or(0, Vec::len);
    let (e, pivots) = bareiss_echelon(m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![F::zero(); cols];
            v[fc] = F::one();
            for (r, &pc) in pivots.iter().enumerate().rev() {
                let mut acc = F::zero();
                for j in pc + 1..cols {
                    if !v[j].is_zero() && !e[r][j].is_zero() {
                        acc = acc.add(&e[r][j].mul(&v[j]));
                    }
                }
                v[pc] = acc.neg().div(&e[r][pc]).expect("pivot is nonzero");
            }
            v
        })
        .collect()
}

pub fn mat_vec<F: Field>(m: &Matrix<F>, v: &[F]) -> Vec<F> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b))))
        .collect()
}

/// Scale a nonzero vector of rational functions to coprime polynomials with
/// integer coefficients of overall content one. The global sign makes the
/// leading coefficient of entry `sign_entry` (default: first nonzero entry)
/// positive.
pub fn clear_and_normalize(v: &[RatFun], sign_entry: Option<usize>) -> Result<Vec<Poly>> {
    if v.iter().all(RatFun::is_zero) {
        return Err(domain("cannot normalize the zero vector"));
    }
    let mut lcd = Poly::one();
    for x in v {
        let g = poly_gcd(&lcd, x.den());
        lcd = &lcd * &div_exact(x.den(), &g).expect("gcd divides");
    }
    let mut out: Vec<Poly> = v
        .iter()
        .map(|x| x.num() * &div_exact(&lcd, x.den()).expect("denominator divides lcd"))
        .collect();
    let g = out.iter().fold(Poly::zero(), |g, p| poly_gcd(&g, p));
    if !g.is_constant() {
        out = out.iter().map(|p| div_exact(p, &g).expect("gcd divides")).collect();
    }
    let coeffs = || out.iter().flat_map(|p| p.terms().map(|(_, c)| c));
    let den = coeffs().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let num = coeffs().fold(BigInt::zero(), |acc, c| acc.gcd(&(c.numer() * (&den / c.denom()))));
    let idx = sign_entry
        .filter(|&i| !out[i].is_zero())
        .unwrap_or_else(|| out.iter().position(|p| !p.is_zero()).expect("nonzero"));
    let mut scale = Rat::new(den, num);
    if out[idx].leading_coeff().is_negative() {
        scale = -scale;
    }
    Ok(out.iter().map(|p| p.scale(&scale)).collect())
}
