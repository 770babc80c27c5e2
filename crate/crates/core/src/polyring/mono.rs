use std::cmp::Ordering;
use std::fmt;

/// The fixed, ordered variable set `t < s < λ < φ < x < y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T,
    S,
    L,
    F,
    X,
    Y,
}

pub const NVARS: usize = 6;

impl Var {
    pub const ALL: [Var; NVARS] = [Var::T, Var::S, Var::L, Var::F, Var::X, Var::Y];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Var {
        Var::ALL[i]
    }

    /// Text alias used by the serializer and parser.
    pub fn alias(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::S => "s",
            Var::L => "l",
            Var::F => "f",
            Var::X => "x",
            Var::Y => "y",
        }
    }

    pub fn from_alias(name: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.alias() == name)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.alias())
    }
}

/// Exponent vector over [`Var::ALL`]. Unused variables carry exponent zero.
///
/// Ordered graded-lexicographically: total degree first, then the exponent of
/// `t`, then `s`, and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Mono(pub [u32; NVARS]);

impl Mono {
    pub const ONE: Mono = Mono([0; NVARS]);

    pub fn var(v: Var, e: u32) -> Mono {
        let mut m = Mono::ONE;
        m.0[v.index()] = e;
        m
    }

    pub fn from_pairs(pairs: &[(Var, u32)]) -> Mono {
        let mut m = Mono::ONE;
        for &(v, e) in pairs {
            m.0[v.index()] += e;
        }
        m
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn with_exp(mut self, v: Var, e: u32) -> Mono {
        self.0[v.index()] = e;
        self
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a += b;
        }
        out
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0) {
            *a = a.checked_sub(b)?;
        }
        Some(out)
    }

    pub fn vars(&self) -> impl Iterator<Item = (Var, u32)> + '_ {
        Var::ALL
            .into_iter()
            .zip(self.0)
            .filter(|&(_, e)| e > 0)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (v, e) in self.vars() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let lf3 = Mono::from_pairs(&[(Var::L, 1), (Var::F, 3)]);
        let lf2 = Mono::from_pairs(&[(Var::L, 1), (Var::F, 2)]);
        let l = Mono::var(Var::L, 1);
        let f = Mono::var(Var::F, 1);
        assert!(lf3 > lf2);
        assert!(lf2 > l);
        assert!(l > f);
        assert!(f > Mono::ONE);
        assert_eq!(lf3.to_string(), "l*f^3");
    }
}
