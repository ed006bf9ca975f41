//! Knot expressions built from the unknot by cabling and connected sum.
//!
//! A [`KnotExpr`] is a tree over `Unknot`, `Cable(p, q, companion)` and
//! `Sum(summands)`. Cable coefficients read as "`p` longitudes plus `q`
//! meridians" of the companion. Sums are unoriented and unordered, so the
//! canonical form sorts its summands.
//!
//! [`normalize`] rewrites an expression bottom-up to its canonical form:
//!
//! * `(p, q)` and `(-p, -q)` describe the same unoriented curve; keep `p >= 0`
//!   (and `q = 1` for the meridian).
//! * `Cable(0, ±1, K)` is a meridian of `K`, hence an unknot.
//! * `Cable(1, q, K)` is isotopic to `K`.
//! * `Cable(p, q, Unknot)` with `|q| <= 1` is a trivial torus knot.
//! * Unknot summands vanish, nested sums flatten, summands sort by their
//!   serialization, and a one-element sum is its element.

mod kit;
mod parse;
pub mod rewrite;

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;

pub use kit::{kit_of, GraphKit, KitDefect, Label};
pub use parse::{parse_expr, ParseError, ParseExprError};

/// A knot expression tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KnotExpr {
    Unknot,
    Cable {
        p: i64,
        q: i64,
        companion: Box<KnotExpr>,
    },
    Sum(Vec<KnotExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MalformedExpression {
    #[error("cable({p},{q},...) is not a primitive curve class")]
    NonPrimitive { p: i64, q: i64 },
    #[error("sum needs at least two summands, got {0}")]
    ShortSum(usize),
    #[error("cable coefficient {0} is out of range")]
    CoefficientRange(i64),
}

impl KnotExpr {
    pub fn cable(p: i64, q: i64, companion: KnotExpr) -> Self {
        KnotExpr::Cable {
            p,
            q,
            companion: Box::new(companion),
        }
    }

    /// The `(p, q)` torus knot, as a cable of the unknot.
    pub fn torus(p: i64, q: i64) -> Self {
        KnotExpr::cable(p, q, KnotExpr::Unknot)
    }

    pub fn sum(summands: impl IntoIterator<Item = KnotExpr>) -> Self {
        KnotExpr::Sum(summands.into_iter().collect())
    }

    pub fn is_unknot_node(&self) -> bool {
        matches!(self, KnotExpr::Unknot)
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            KnotExpr::Unknot => 1,
            KnotExpr::Cable { companion, .. } => 1 + companion.size(),
            KnotExpr::Sum(xs) => 1 + xs.iter().map(KnotExpr::size).sum::<usize>(),
        }
    }

    /// Tree depth; `Unknot` has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            KnotExpr::Unknot => 0,
            KnotExpr::Cable { companion, .. } => 1 + companion.depth(),
            KnotExpr::Sum(xs) => 1 + xs.iter().map(KnotExpr::depth).max().unwrap_or(0),
        }
    }

    /// Checks primitivity of every cable and the arity of every sum.
    pub fn check_structure(&self) -> Result<(), MalformedExpression> {
        match self {
            KnotExpr::Unknot => Ok(()),
            KnotExpr::Cable { p, q, companion } => {
                check_primitive(*p, *q)?;
                companion.check_structure()
            }
            KnotExpr::Sum(xs) => {
                if xs.len() < 2 {
                    return Err(MalformedExpression::ShortSum(xs.len()));
                }
                xs.iter().try_for_each(KnotExpr::check_structure)
            }
        }
    }

    /// Prefix serialization in the text grammar, without whitespace.
    pub fn serialize(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => f.write_str("U"),
            KnotExpr::Cable { p, q, companion } => write!(f, "cable({p},{q},{companion})"),
            KnotExpr::Sum(xs) => {
                f.write_str("sum(")?;
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                f.write_str(")")
            }
        }
    }
}

/// Total order on expressions: lexicographic on the serialization.
pub fn serial_cmp(a: &KnotExpr, b: &KnotExpr) -> Ordering {
    a.serialize().cmp(&b.serialize())
}

pub(crate) fn check_primitive(p: i64, q: i64) -> Result<(), MalformedExpression> {
    for c in [p, q] {
        if c == i64::MIN {
            return Err(MalformedExpression::CoefficientRange(c));
        }
    }
    if p.gcd(&q) != 1 {
        return Err(MalformedExpression::NonPrimitive { p, q });
    }
    Ok(())
}

/// Sign-canonical representative of an unoriented curve class: `p >= 0`,
/// and `q > 0` when `p == 0`.
pub fn canonical_sign(p: i64, q: i64) -> (i64, i64) {
    if p < 0 || (p == 0 && q < 0) {
        (-p, -q)
    } else {
        (p, q)
    }
}

/// Canonical form of `e`.
pub fn normalize(e: &KnotExpr) -> Result<KnotExpr, MalformedExpression> {
    match e {
        KnotExpr::Unknot => Ok(KnotExpr::Unknot),
        KnotExpr::Cable { p, q, companion } => {
            check_primitive(*p, *q)?;
            let inner = normalize(companion)?;
            Ok(canonical_cable(*p, *q, inner))
        }
        KnotExpr::Sum(xs) => {
            if xs.len() < 2 {
                return Err(MalformedExpression::ShortSum(xs.len()));
            }
            let parts = xs.iter().map(normalize).collect::<Result<Vec<_>, _>>()?;
            Ok(canonical_sum(parts))
        }
    }
}

/// Cable over an already canonical companion. `(p, q)` must be primitive.
pub(crate) fn canonical_cable(p: i64, q: i64, companion: KnotExpr) -> KnotExpr {
    let (p, q) = canonical_sign(p, q);
    match (p, companion) {
        (0, _) => KnotExpr::Unknot,
        (1, inner) => inner,
        (_, KnotExpr::Unknot) if q.abs() <= 1 => KnotExpr::Unknot,
        (p, inner) => KnotExpr::cable(p, q, inner),
    }
}

/// Connected sum of already canonical parts.
pub(crate) fn canonical_sum(parts: Vec<KnotExpr>) -> KnotExpr {
    let mut flat = Vec::with_capacity(parts.len());
    for part in parts {
        match part {
            KnotExpr::Unknot => {}
            KnotExpr::Sum(inner) => flat.extend(inner),
            other => flat.push(other),
        }
    }
    let mut keyed: Vec<(String, KnotExpr)> = flat.into_iter().map(|x| (x.serialize(), x)).collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    let mut flat: Vec<KnotExpr> = keyed.into_iter().map(|(_, x)| x).collect();
    match flat.len() {
        0 => KnotExpr::Unknot,
        1 => flat.pop().unwrap(),
        _ => KnotExpr::Sum(flat),
    }
}

/// Whether `a` and `b` have the same canonical form.
///
/// Sound for isotopy within the calculus; distinct canonical forms are not a
/// proof of distinct knots.
pub fn equal_normalized(a: &KnotExpr, b: &KnotExpr) -> Result<bool, MalformedExpression> {
    Ok(normalize(a)? == normalize(b)?)
}

pub fn is_unknot(e: &KnotExpr) -> Result<bool, MalformedExpression> {
    Ok(normalize(e)? == KnotExpr::Unknot)
}

/// Smallest `n` with `e` in the `n`-th layer of the cabling/sum hierarchy.
///
/// A bare top-level sum counts as the `(1, r)` cable of itself.
pub fn level(e: &KnotExpr) -> Result<usize, MalformedExpression> {
    Ok(canonical_level(&normalize(e)?))
}

fn canonical_level(e: &KnotExpr) -> usize {
    match e {
        KnotExpr::Unknot => 0,
        KnotExpr::Cable { companion, .. } => match companion.as_ref() {
            KnotExpr::Sum(xs) => 1 + max_level(xs),
            other => 1 + canonical_level(other),
        },
        KnotExpr::Sum(xs) => 1 + max_level(xs),
    }
}

fn max_level(xs: &[KnotExpr]) -> usize {
    xs.iter().map(canonical_level).max().unwrap_or(0)
}
