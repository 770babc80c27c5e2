//! Exact machinery for checking the identities behind Fu's power series
//! conjecture on unitarily invariant valuations: truncated series in the
//! weighted grading `t:1, s:2, λ:-2`, Tutte's series, the template integral,
//! the holonomic tower for `b(s, λ)`, and the top-level verifier.

pub mod error;
pub mod exactnum;
pub mod holonomic;
pub mod polyring;
pub mod report;
pub mod series;
pub mod template;
pub mod tutte;
pub mod verifier;

pub use error::{Error, Result};
pub use exactnum::{binomial, double_factorial, factorial, Int, Rat};
pub use polyring::{Mono, PhiPoly, Poly, RatFun, Var};
pub use report::{Report, Status};
