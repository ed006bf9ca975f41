//! Alexander polynomial and Seifert genus of knot expressions.
//!
//! Both are computed on the canonical form: the Alexander polynomial through
//! the cabling and connected-sum product formulas, with torus knots read off
//! their semigroup, and the genus through its cabling recursion.

mod laurent;

pub use laurent::{LaurentPoly, PolyError};

use crate::expr::{normalize, KnotExpr, MalformedExpression};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error(transparent)]
    Malformed(#[from] MalformedExpression),
    #[error(transparent)]
    Arithmetic(#[from] PolyError),
}

/// Alexander polynomial of the `(p, q)` torus knot, `p, q >= 1` coprime.
///
/// With `c = (p - 1)(q - 1)` and `S` the semigroup generated by `p` and `q`,
/// it equals `(1 - t) * sum_{s in S, s < c} t^s + t^c`.
pub fn torus_alexander(p: u32, q: u32) -> LaurentPoly {
    if p <= 1 || q <= 1 {
        return LaurentPoly::one();
    }
    let (p, q) = (p as usize, q as usize);
    let c = (p - 1) * (q - 1);
    let mut in_semigroup = vec![false; c.max(1)];
    for a in (0..c).step_by(p) {
        for s in (a..c).step_by(q) {
            in_semigroup[s] = true;
        }
    }
    let mut coeffs = vec![0i128; c + 1];
    for (s, _) in in_semigroup.iter().enumerate().filter(|(_, &m)| m) {
        coeffs[s] += 1;
        coeffs[s + 1] -= 1;
    }
    coeffs[c] += 1;
    LaurentPoly::new(0, coeffs)
}

/// Canonical Alexander polynomial of `e`.
pub fn alexander(e: &KnotExpr) -> Result<LaurentPoly, InvariantError> {
    Ok(alexander_canonical(&normalize(e)?)?.canonical())
}

fn alexander_canonical(e: &KnotExpr) -> Result<LaurentPoly, PolyError> {
    match e {
        KnotExpr::Unknot => Ok(LaurentPoly::one()),
        KnotExpr::Cable { p, q, companion } => {
            let p = u32::try_from(*p).map_err(|_| PolyError::Overflow)?;
            let q = u32::try_from(q.unsigned_abs()).map_err(|_| PolyError::Overflow)?;
            let inner = alexander_canonical(companion)?.substitute_power(p)?;
            inner.checked_mul(&torus_alexander(p, q))
        }
        KnotExpr::Sum(xs) => xs
            .iter()
            .try_fold(LaurentPoly::one(), |acc, x| acc.checked_mul(&alexander_canonical(x)?)),
    }
}

/// Seifert genus of `e`: additive over sums, and `p * g(K) + (p - 1)(|q| - 1) / 2`
/// for the canonical cable `Cable(p, q, K)`.
pub fn genus(e: &KnotExpr) -> Result<u64, MalformedExpression> {
    Ok(genus_canonical(&normalize(e)?))
}

fn genus_canonical(e: &KnotExpr) -> u64 {
    match e {
        KnotExpr::Unknot => 0,
        KnotExpr::Cable { p, q, companion } => {
            let p = p.unsigned_abs();
            p * genus_canonical(companion) + (p - 1) * (q.unsigned_abs() - 1) / 2
        }
        KnotExpr::Sum(xs) => xs.iter().map(genus_canonical).sum(),
    }
}
