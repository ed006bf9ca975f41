//! Single-step rewriting, for testing the canonical form against arbitrary
//! rule orders.
//!
//! [`super::normalize`] is the bottom-up fixpoint of these rules. Here each
//! rule fires at one position at a time, so callers can pick the order.

use rand::seq::SliceRandom;
use rand::Rng;

use super::{KnotExpr, MalformedExpression};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `Cable(p, q, K)` with `p < 0`, or `p = 0, q < 0`, becomes `Cable(-p, -q, K)`.
    SignFlip,
    /// `Cable(1, q, K)` becomes `K`.
    LongitudeCollapse,
    /// `Cable(0, 1, K)` becomes `Unknot`.
    MeridianCollapse,
    /// `Cable(p, ±1, Unknot)` becomes `Unknot`.
    TrivialTorus,
    /// Removes the unknot summand at this index.
    DropUnknot(usize),
    /// Splices the nested sum at this index into its parent.
    Flatten(usize),
    /// Swaps summands `i` and `i + 1`, which are out of order.
    Swap(usize),
}

/// A rule firing at the node reached by `path` (child indices from the root;
/// a cable's companion is child 0).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redex {
    pub path: Vec<usize>,
    pub rule: Rule,
}

const STEP_LIMIT: usize = 1_000_000;

fn local_rules(e: &KnotExpr) -> Vec<Rule> {
    match e {
        KnotExpr::Unknot => Vec::new(),
        KnotExpr::Cable { p, q, companion } => {
            let rule = if *p < 0 || (*p == 0 && *q < 0) {
                Some(Rule::SignFlip)
            } else if *p == 0 {
                Some(Rule::MeridianCollapse)
            } else if *p == 1 {
                Some(Rule::LongitudeCollapse)
            } else if companion.is_unknot_node() && q.abs() <= 1 {
                Some(Rule::TrivialTorus)
            } else {
                None
            };
            rule.into_iter().collect()
        }
        KnotExpr::Sum(xs) => {
            let mut rules = Vec::new();
            for (i, x) in xs.iter().enumerate() {
                match x {
                    KnotExpr::Unknot => rules.push(Rule::DropUnknot(i)),
                    KnotExpr::Sum(_) => rules.push(Rule::Flatten(i)),
                    _ => {}
                }
            }
            let keys: Vec<String> = xs.iter().map(KnotExpr::serialize).collect();
            for i in 0..keys.len().saturating_sub(1) {
                if keys[i] > keys[i + 1] {
                    rules.push(Rule::Swap(i));
                }
            }
            rules
        }
    }
}

/// Every position where some rule applies.
pub fn redexes(e: &KnotExpr) -> Vec<Redex> {
    let mut out = Vec::new();
    let mut path = Vec::new();
    collect(e, &mut path, &mut out);
    out
}

fn collect(e: &KnotExpr, path: &mut Vec<usize>, out: &mut Vec<Redex>) {
    for rule in local_rules(e) {
        out.push(Redex { path: path.clone(), rule });
    }
    match e {
        KnotExpr::Unknot => {}
        KnotExpr::Cable { companion, .. } => {
            path.push(0);
            collect(companion, path, out);
            path.pop();
        }
        KnotExpr::Sum(xs) => {
            for (i, x) in xs.iter().enumerate() {
                path.push(i);
                collect(x, path, out);
                path.pop();
            }
        }
    }
}

fn node_mut<'a>(e: &'a mut KnotExpr, path: &[usize]) -> &'a mut KnotExpr {
    let mut node = e;
    for &i in path {
        node = match node {
            KnotExpr::Cable { companion, .. } => companion.as_mut(),
            KnotExpr::Sum(xs) => &mut xs[i],
            KnotExpr::Unknot => panic!("path runs through a leaf"),
        };
    }
    node
}

fn paths(e: &KnotExpr, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(path.clone());
    match e {
        KnotExpr::Unknot => {}
        KnotExpr::Cable { companion, .. } => {
            path.push(0);
            paths(companion, path, out);
            path.pop();
        }
        KnotExpr::Sum(xs) => {
            for (i, x) in xs.iter().enumerate() {
                path.push(i);
                paths(x, path, out);
                path.pop();
            }
        }
    }
}

/// Applies `redex` to `e`. Panics if the rule does not apply there.
pub fn apply(e: &KnotExpr, redex: &Redex) -> KnotExpr {
    let mut out = e.clone();
    let node = node_mut(&mut out, &redex.path);
    let old = std::mem::replace(node, KnotExpr::Unknot);
    *node = fire(old, redex.rule);
    out
}

fn fire(e: KnotExpr, rule: Rule) -> KnotExpr {
    match (rule, e) {
        (Rule::SignFlip, KnotExpr::Cable { p, q, companion }) => KnotExpr::Cable { p: -p, q: -q, companion },
        (Rule::LongitudeCollapse, KnotExpr::Cable { companion, .. }) => *companion,
        (Rule::MeridianCollapse | Rule::TrivialTorus, KnotExpr::Cable { .. }) => KnotExpr::Unknot,
        (Rule::DropUnknot(i), KnotExpr::Sum(mut xs)) => {
            xs.remove(i);
            if xs.len() == 1 {
                xs.pop().unwrap()
            } else {
                KnotExpr::Sum(xs)
            }
        }
        (Rule::Flatten(i), KnotExpr::Sum(mut xs)) => {
            let KnotExpr::Sum(inner) = xs.remove(i) else {
                panic!("flatten of a non-sum")
            };
            for (k, x) in inner.into_iter().enumerate() {
                xs.insert(i + k, x);
            }
            KnotExpr::Sum(xs)
        }
        (Rule::Swap(i), KnotExpr::Sum(mut xs)) => {
            xs.swap(i, i + 1);
            KnotExpr::Sum(xs)
        }
        (rule, e) => panic!("{rule:?} does not apply to {e}"),
    }
}

/// Rewrites `e` to a normal form, each step firing a uniformly chosen redex.
pub fn rewrite_to_normal_form<R: Rng + ?Sized>(e: &KnotExpr, rng: &mut R) -> Result<KnotExpr, MalformedExpression> {
    e.check_structure()?;
    let mut cur = e.clone();
    for _ in 0..STEP_LIMIT {
        let rs = redexes(&cur);
        let Some(r) = rs.choose(rng) else {
            return Ok(cur);
        };
        cur = apply(&cur, r);
    }
    panic!("rewriting did not terminate within {STEP_LIMIT} steps");
}

/// One random isotopy step: either a rule fired forward or one of the
/// inverse moves (wrapping in a longitude cable, adding an unknot summand,
/// reversing a cable's signs, permuting a sum, or replacing an unknot by a
/// meridian or a trivial torus knot).
pub fn random_isotopy_step<R: Rng + ?Sized>(e: &KnotExpr, rng: &mut R) -> KnotExpr {
    let rs = redexes(e);
    if !rs.is_empty() && rng.gen_bool(0.3) {
        return apply(e, rs.choose(rng).unwrap());
    }
    let mut all = Vec::new();
    paths(e, &mut Vec::new(), &mut all);
    let path = all.choose(rng).unwrap().clone();
    let mut out = e.clone();
    let node = node_mut(&mut out, &path);
    let old = std::mem::replace(node, KnotExpr::Unknot);
    *node = expand(old, rng);
    out
}

fn expand<R: Rng + ?Sized>(node: KnotExpr, rng: &mut R) -> KnotExpr {
    let r = rng.gen_range(-4..=4);
    match (rng.gen_range(0..4), node) {
        (0, x) => KnotExpr::cable(1, r, x),
        (1, x) => {
            if rng.gen_bool(0.5) {
                KnotExpr::sum([KnotExpr::Unknot, x])
            } else {
                KnotExpr::sum([x, KnotExpr::Unknot])
            }
        }
        (2, KnotExpr::Cable { p, q, companion }) => KnotExpr::Cable { p: -p, q: -q, companion },
        (2, KnotExpr::Sum(mut xs)) => {
            xs.shuffle(rng);
            KnotExpr::Sum(xs)
        }
        (_, KnotExpr::Unknot) => {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            if rng.gen_bool(0.5) {
                let inside = KnotExpr::torus(2, 2 * rng.gen_range(1..4) + 1);
                KnotExpr::cable(0, sign, inside)
            } else {
                KnotExpr::torus(rng.gen_range(2..6) * sign, sign)
            }
        }
        (_, x) => KnotExpr::cable(-1, r, x),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::normalize;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_orders_reach_canonical_form() {
        let e = KnotExpr::sum([
            KnotExpr::cable(-1, 3, KnotExpr::sum([KnotExpr::torus(2, 5), KnotExpr::Unknot])),
            KnotExpr::Unknot,
            KnotExpr::torus(-2, -3),
            KnotExpr::cable(0, -1, KnotExpr::torus(3, 4)),
        ]);
        let want = normalize(&e).unwrap();
        for seed in 0..20 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            assert_eq!(rewrite_to_normal_form(&e, &mut rng).unwrap(), want);
        }
    }

    #[test]
    fn canonical_forms_have_no_redex() {
        let e = normalize(&KnotExpr::sum([KnotExpr::torus(3, 2), KnotExpr::torus(2, 3)])).unwrap();
        assert!(redexes(&e).is_empty());
    }

    #[test]
    fn isotopy_steps_preserve_canonical_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut e = KnotExpr::cable(2, 3, KnotExpr::torus(3, 5));
        let want = normalize(&e).unwrap();
        for _ in 0..50 {
            e = random_isotopy_step(&e, &mut rng);
            assert_eq!(normalize(&e).unwrap(), want, "{e}");
        }
    }
}
