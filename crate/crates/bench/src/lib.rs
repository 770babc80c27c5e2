//! Benchmark inputs shared by the criterion targets.

use fuseries_core::polyring::poly;
use fuseries_core::series::Series;
use fuseries_core::{Poly, Var};

/// A pair with a known nontrivial gcd, of the size met in the tower.
pub fn gcd_pair() -> (Poly, Poly) {
    let g = poly("(256*l - 27)*(s*l + s + 1)^2");
    let a = &g * &poly("(3*s + 1)^3*l^4 - 7*s*f + 2");
    let b = &g * &poly("(s - 1)^2*l^5 + f^2*s - l");
    (a, b)
}

/// `1 + t + s/(1 + λs)` at caps `(d, l)`.
pub fn log_argument(d: u32, l: u32) -> Series {
    let s = Series::var(Var::S, d, l).expect("s");
    let ls = &Series::var(Var::L, d, l).expect("λ") * &s;
    let one = Series::one(d, l);
    let frac = &s * &(&one + &ls).inverse().expect("unit");
    &(&one + &Series::var(Var::T, d, l).expect("t")) + &frac
}
