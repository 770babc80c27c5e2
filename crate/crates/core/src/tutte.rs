//! Tutte's series `τ(λ) = Σ 2(4i+1)!/((i+1)!(3i+2)!) λ^i` from its closed
//! form, from the quartic `φ = λ(1+φ)^4` with `τ = φ(1 - φ - φ²)`, and by
//! counting intervals in the Tamari lattice.

use std::collections::HashMap;

use serde_json::json;

use crate::error::{domain, Result};
use crate::exactnum::{binomial, factorial, rat, rat_from_int, Rat};
use crate::polyring::Var;
use crate::report::Report;
use crate::series::Series;

pub const TAMARI_MAX: usize = 6;

pub fn tutte_coeff(i: u32) -> Result<Rat> {
    if i < 1 {
        return Err(domain("Tutte coefficients start at i = 1"));
    }
    let num = factorial(4 * i as i64 + 1)? * 2;
    let den = factorial(i as i64 + 1)? * factorial(3 * i as i64 + 2)?;
    Ok(rat_from_int(num) / rat_from_int(den))
}

/// The power series root of `φ = λ(1+φ)^4` without constant term, to order
/// `l`, by fixed-point iteration.
pub fn phi_series(l: u32) -> Series {
    let lam = Series::var(Var::L, 0, l).expect("λ is a series variable");
    let one = Series::one(0, l);
    let mut phi = Series::zero(0, l);
    for _ in 0..l {
        phi = &lam * &(&one + &phi).pow(4);
    }
    phi
}

/// `τ = φ(1 - φ - φ²)` to order `l`.
pub fn tau_from_phi(l: u32) -> Series {
    let phi = phi_series(l);
    let one = Series::one(0, l);
    &phi * &(&(&one - &phi) - &(&phi * &phi))
}

/// Closed-form coefficients `τ_1..τ_l` as a series.
pub fn tau_closed_form(l: u32) -> Series {
    let mut out = Series::zero(0, l);
    for i in 1..=l {
        out = &out + &Series::monomial((0, 0, i), tutte_coeff(i).expect("i >= 1"), 0, l);
    }
    out
}

/// Binary tree with a canonical encoding: `Leaf` or a node with two
/// subtrees. Internal nodes count the size.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    fn node(l: Tree, r: Tree) -> Tree {
        Tree::Node(Box::new(l), Box::new(r))
    }

    pub fn size(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(l, r) => 1 + l.size() + r.size(),
        }
    }

    /// All trees reachable by one right rotation `(A B) C -> A (B C)` at
    /// some node.
    fn right_rotations(&self) -> Vec<Tree> {
        let Tree::Node(l, r) = self else { return Vec::new() };
        let mut out = Vec::new();
        if let Tree::Node(a, b) = l.as_ref() {
            out.push(Tree::node((**a).clone(), Tree::node((**b).clone(), (**r).clone())));
        }
        for l2 in l.right_rotations() {
            out.push(Tree::node(l2, (**r).clone()));
        }
        for r2 in r.right_rotations() {
            out.push(Tree::node((**l).clone(), r2));
        }
        out
    }
}

/// All binary trees with `n` internal nodes, in a fixed order.
pub fn binary_trees(n: usize) -> Vec<Tree> {
    let mut by_size: Vec<Vec<Tree>> = vec![vec![Tree::Leaf]];
    for k in 1..=n {
        let mut level = Vec::new();
        for i in 0..k {
            for l in &by_size[i] {
                for r in &by_size[k - 1 - i] {
                    level.push(Tree::node(l.clone(), r.clone()));
                }
            }
        }
        by_size.push(level);
    }
    by_size.swap_remove(n)
}

/// The Tamari order on trees of size `n` as reachability bitsets. Right
/// rotations go downwards, so `reach[x][y]` means `y <= x` and the left comb
/// is the top element.
pub fn tamari_order(n: usize) -> (Vec<Tree>, Vec<Vec<bool>>) {
    let trees = binary_trees(n);
    let index: HashMap<&Tree, usize> = trees.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let covers: Vec<Vec<usize>> =
        trees.iter().map(|t| t.right_rotations().iter().map(|u| index[u]).collect()).collect();
    let reach = (0..trees.len())
        .map(|x| {
            let mut seen = vec![false; trees.len()];
            let mut stack = vec![x];
            seen[x] = true;
            while let Some(y) = stack.pop() {
                for &z in &covers[y] {
                    if !seen[z] {
                        seen[z] = true;
                        stack.push(z);
                    }
                }
            }
            seen
        })
        .collect();
    (trees, reach)
}

pub fn tamari_interval_count(i: usize) -> Result<u64> {
    if !(1..=TAMARI_MAX).contains(&i) {
        return Err(domain(format!("Tamari enumeration supports 1 <= i <= {TAMARI_MAX}")));
    }
    let (_, reach) = tamari_order(i);
    Ok(reach.iter().map(|row| row.iter().filter(|&&b| b).count() as u64).sum())
}

/// Closed form against the algebraic equation for `i <= max_i`, and against
/// Tamari interval counts for `i <= tamari_max`.
pub fn verify_tutte(max_i: u32, tamari_max: usize) -> Result<Report> {
    let mut r = Report::new("tutte").param("max_i", max_i).param("tamari_max", tamari_max as u64);
    let tau = tau_from_phi(max_i);
    for i in 1..=max_i {
        let closed = tutte_coeff(i)?;
        let alg = tau.coeff(0, 0, i);
        r.case(closed == alg, || json!({ "i": i, "closed_form": closed.to_string(), "algebraic": alg.to_string() }));
    }
    for i in 1..=tamari_max.min(max_i as usize) {
        let count = tamari_interval_count(i)?;
        let closed = tutte_coeff(i as u32)?;
        r.case(closed == rat(count as i64), || json!({ "i": i, "closed_form": closed.to_string(), "tamari": count }));
    }
    Ok(r)
}

/// `[λ^n]φ = binom(4n, n-1)/n` for `1 <= n <= l`, and `P(λ, φ) = 0`.
pub fn verify_phi_lagrange(l: u32) -> Report {
    let mut r = Report::new("phi_lagrange").param("order", l);
    let phi = phi_series(l);
    for n in 1..=l {
        let expected = binomial(4 * n as i64, n as i64 - 1) / rat(n as i64);
        let got = phi.coeff(0, 0, n);
        r.case(got == expected, || json!({ "n": n, "series": got.to_string(), "lagrange": expected.to_string() }));
    }
    let lam = Series::var(Var::L, 0, l).expect("λ is a series variable");
    let residual = &phi - &(&lam * &(&Series::one(0, l) + &phi).pow(4));
    r.case(residual.is_zero(), || json!({ "residual": residual.to_string() }));
    r
}

pub fn catalan(n: u32) -> Rat {
    binomial(2 * n as i64, n as i64) / rat(n as i64 + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    #[test]
    fn closed_form_values() {
        let v: Vec<Rat> = (1..=6).map(|i| tutte_coeff(i).unwrap()).collect();
        assert_eq!(v, [1, 3, 13, 68, 399, 2530].map(rat));
        assert!(tutte_coeff(0).is_err());
    }

    #[test]
    fn phi_low_coefficients() {
        let phi = phi_series(3);
        assert_eq!((1..=3).map(|n| phi.coeff(0, 0, n)).collect::<Vec<_>>(), [1, 4, 22].map(rat));
        assert!(phi.constant_term().is_zero());
    }

    #[test]
    fn tree_counts_are_catalan() {
        for n in 0..=7 {
            assert_eq!(rat(binary_trees(n).len() as i64), catalan(n as u32));
        }
    }

    #[test]
    fn tamari_poset_shape() {
        let (trees, reach) = tamari_order(4);
        let n = trees.len();
        for x in 0..n {
            assert!(reach[x][x]);
            for y in 0..n {
                if x != y {
                    assert!(!(reach[x][y] && reach[y][x]));
                }
                for z in 0..n {
                    if reach[x][y] && reach[y][z] {
                        assert!(reach[x][z]);
                    }
                }
            }
        }
        let top: Vec<usize> = (0..n).filter(|&x| reach[x].iter().all(|&b| b)).collect();
        let bottom: Vec<usize> = (0..n).filter(|&y| (0..n).all(|x| reach[x][y])).collect();
        assert_eq!((bottom.len(), top.len()), (1, 1));
        let left_comb = (0..4).fold(Tree::Leaf, |t, _| Tree::node(t, Tree::Leaf));
        let right_comb = (0..4).fold(Tree::Leaf, |t, _| Tree::node(Tree::Leaf, t));
        assert_eq!(trees[top[0]], left_comb);
        assert_eq!(trees[bottom[0]], right_comb);
    }

    #[test]
    fn small_interval_counts() {
        assert_eq!(tamari_interval_count(1).unwrap(), 1);
        assert_eq!(tamari_interval_count(2).unwrap(), 3);
        assert_eq!(tamari_interval_count(5).unwrap(), 399);
        assert!(tamari_interval_count(7).is_err());
    }
}
