//! Arbitrary-precision scalars and the combinatorial functions built on them.
//!
//! [`Rat`] is `num_rational::BigRational`; it is always kept in lowest terms
//! with a positive denominator and renders as `num/den` (or just `num` when
//! the denominator is one).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Result};

pub type Int = BigInt;
pub type Rat = num_rational::BigRational;

pub fn int(n: i64) -> Int {
    BigInt::from(n)
}

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_int(n: Int) -> Rat {
    Rat::from_integer(n)
}

/// `C(n, k)`, with the generating-function convention that anything outside
/// `0 <= k <= n` is zero.
pub fn binomial(n: i64, k: i64) -> Rat {
    rat_from_int(binomial_int(n, k))
}

pub fn binomial_int(n: i64, k: i64) -> Int {
    if n < 0 || k < 0 || k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = Int::one();
    for j in 0..k {
        acc *= n - j;
        acc /= j + 1;
    }
    acc
}

pub fn factorial(n: i64) -> Result<Int> {
    if n < 0 {
        return Err(domain(format!("factorial of negative number {n}")));
    }
    Ok((1..=n).fold(Int::one(), |acc, j| acc * j))
}

/// `i!! = i (i-2) (i-4) ...` with `(-1)!! = 0` and `0!! = 1`.
pub fn double_factorial(i: i64) -> Result<Int> {
    match i {
        i if i < -1 => Err(domain(format!("double factorial of {i}"))),
        -1 => Ok(Int::zero()),
        _ => Ok((1..=i).rev().step_by(2).fold(Int::one(), |acc, j| acc * j)),
    }
}

pub fn factorial_rat(n: u32) -> Rat {
    rat_from_int(factorial(n as i64).expect("non-negative"))
}

/// Least common multiple of the denominators of `values` (one for an empty
/// iterator).
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Int {
    values
        .into_iter()
        .fold(Int::one(), |acc, q| acc.lcm(q.denom()))
}

/// Gcd of the numerators; zero for an empty iterator or all-zero input.
pub fn gcd_numerators<'a>(values: impl IntoIterator<Item = &'a Rat>) -> Int {
    values
        .into_iter()
        .fold(Int::zero(), |acc, q| acc.gcd(q.numer()))
}

pub fn rat_to_i64(q: &Rat) -> Option<i64> {
    if q.is_integer() {
        q.numer().to_i64()
    } else {
        None
    }
}

pub fn is_positive(q: &Rat) -> bool {
    q.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(4, 2), rat(6));
        assert_eq!(binomial(0, 0), rat(1));
        // value of the integral of s t^2 over C^2
        assert_eq!(binomial(2, 1), rat(2));
        assert_eq!(binomial(3, 5), rat(0));
        assert_eq!(binomial(3, -1), rat(0));
        assert_eq!(binomial(-2, 1), rat(0));
    }

    #[test]
    fn double_factorial_conventions() {
        assert_eq!(double_factorial(-1).unwrap(), int(0));
        assert_eq!(double_factorial(0).unwrap(), int(1));
        assert_eq!(double_factorial(5).unwrap(), int(15));
        assert_eq!(double_factorial(6).unwrap(), int(48));
        assert!(double_factorial(-2).is_err());
    }

    #[test]
    fn factorial_values() {
        assert_eq!(factorial(0).unwrap(), int(1));
        assert_eq!(factorial(5).unwrap(), int(120));
        assert!(factorial(-1).is_err());
        let tutte1 = rat_from_int(int(2) * factorial(5).unwrap())
            / rat_from_int(factorial(2).unwrap() * factorial(5).unwrap());
        assert_eq!(tutte1, rat(1));
    }

    #[test]
    fn wide_values_do_not_overflow() {
        assert_eq!(
            factorial(25).unwrap().to_string(),
            "15511210043330985984000000"
        );
        assert_eq!(binomial(100, 50).to_string(), "100891344545564193334812497256");
    }

    #[test]
    fn rendering() {
        assert_eq!(ratio(6, -4).to_string(), "-3/2");
        assert_eq!(rat(7).to_string(), "7");
    }

    proptest! {
        #[test]
        fn pascal_and_symmetry(n in 0i64..60, k in -3i64..65) {
            prop_assert_eq!(binomial(n, k), binomial(n, n - k));
            if n >= 1 {
                prop_assert_eq!(binomial(n, k), binomial(n - 1, k - 1) + binomial(n - 1, k));
            }
        }

        #[test]
        // i = 0 is excluded: (-1)!! = 0 by convention.
        fn double_factorials_split_factorial(h in 1i64..30) {
            let i = 2 * h;
            prop_assert_eq!(
                double_factorial(i).unwrap() * double_factorial(i - 1).unwrap(),
                factorial(i).unwrap()
            );
        }

        #[test]
        fn rational_round_trips(a in -1000i64..1000, b in 1i64..1000, c in -1000i64..1000, d in 1i64..1000) {
            let x = ratio(a, b);
            let y = ratio(c, d);
            prop_assert_eq!((&x + &y) - &y, x.clone());
            if !y.is_zero() {
                prop_assert_eq!((&x * &y) / &y, x);
            }
        }
    }
}
