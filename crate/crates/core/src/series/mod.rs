//! Truncated power series in the weighted grading `t:1, s:2, λ:-2`, and
//! Laurent series in `x` with a formal `log 2`.

pub mod laurent;
pub mod log2;
pub mod trunc;

pub use laurent::{LaurentX, EXACT};
pub use log2::{L2Series, Log2Rat};
pub use trunc::{wdeg, Key, Series, Series2, Series3};
