//! Brute-force oracles: torus knot polynomials by long division, seeded
//! random expressions, and exhaustive enumeration of small decompositions.

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::expr::{canonical_sign, KnotExpr};
use crate::invariants::LaurentPoly;
use crate::rhd::{AttachCircle, CurveClass, HandleEvent, Placement, Rhd, Saddle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    #[error("gcd({0},{1}) is not 1")]
    NonCoprime(u32, u32),
    #[error("torus knot parameters must be at least 2, got ({0},{1})")]
    InvalidArgument(u32, u32),
    #[error("long division left a remainder")]
    DivisionRemainder,
}

/// `t^n - 1`, low degree first.
fn cyclotomic_product(n: usize) -> Vec<i128> {
    let mut v = vec![0; n + 1];
    v[0] = -1;
    v[n] = 1;
    v
}

fn mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Schoolbook division by a monic polynomial.
fn long_division(num: &[i128], den: &[i128]) -> (Vec<i128>, Vec<i128>) {
    let mut rem = num.to_vec();
    let dl = den.len();
    if rem.len() < dl {
        return (vec![0], rem);
    }
    let mut quot = vec![0; rem.len() - dl + 1];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dl - 1] / den[dl - 1];
        quot[k] = c;
        for (j, d) in den.iter().enumerate() {
            rem[k + j] -= c * d;
        }
    }
    rem.truncate(dl - 1);
    (quot, rem)
}

/// `(t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1))`, checked to divide exactly.
pub fn poly_div_torus(p: u32, q: u32) -> Result<LaurentPoly, OracleError> {
    if p < 2 || q < 2 {
        return Err(OracleError::InvalidArgument(p, q));
    }
    if p.gcd(&q) != 1 {
        return Err(OracleError::NonCoprime(p, q));
    }
    let (p, q) = (p as usize, q as usize);
    let num = mul(&cyclotomic_product(p * q), &cyclotomic_product(1));
    let den = mul(&cyclotomic_product(p), &cyclotomic_product(q));
    let (quot, rem) = long_division(&num, &den);
    if rem.iter().any(|&c| c != 0) {
        return Err(OracleError::DivisionRemainder);
    }
    Ok(LaurentPoly::new(0, quot))
}

/// Bounds for [`enumerate_rhds`] and the random generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationBudget {
    pub max_saddles: usize,
    pub coeff_bound: i64,
    pub max_depth: usize,
    pub seed: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_saddles: 2,
            coeff_bound: 3,
            max_depth: 4,
            seed: 0,
        }
    }
}

fn coprime_pair(rng: &mut ChaCha8Rng, bound: i64) -> (i64, i64) {
    loop {
        let p = rng.gen_range(1..=bound);
        let q = rng.gen_range(1..=bound);
        if p.gcd(&q) == 1 {
            return (p, q);
        }
    }
}

fn random_node(rng: &mut ChaCha8Rng, depth: usize, bound: i64) -> KnotExpr {
    if depth <= 1 {
        let (p, q) = coprime_pair(rng, bound);
        return KnotExpr::torus(p, q);
    }
    match rng.gen_range(0..4) {
        0 => {
            let n = rng.gen_range(2..=3);
            KnotExpr::sum((0..n).map(|_| random_node(rng, depth - 1, bound)))
        }
        1 => random_node(rng, depth - 1, bound),
        _ => {
            let (p, q) = coprime_pair(rng, bound);
            let q = if rng.gen_bool(0.5) { q } else { -q };
            KnotExpr::cable(p, q, random_node(rng, depth - 1, bound))
        }
    }
}

/// A deterministic expression of depth at most `depth` with cable
/// coefficients bounded by `bound` in absolute value. Depth 1 gives a torus
/// knot with positive coefficients.
pub fn random_expr(seed: u64, depth: usize, bound: i64) -> KnotExpr {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_node(&mut rng, depth.max(1), bound.max(1))
}

/// Attaching classes with coefficients bounded by `bound`, disks first.
pub fn classes(bound: i64) -> Vec<CurveClass> {
    let mut out = vec![CurveClass::Disk];
    for p in 0..=bound {
        for q in -bound..=bound {
            if p.gcd(&q) == 1 && canonical_sign(p, q) == (p, q) {
                out.extend(CurveClass::essential(p, q));
            }
        }
    }
    out
}

/// The decompositions sharing a source count and first saddle. Enumeration
/// is split into these so that it can run in parallel.
#[derive(Clone, Debug)]
pub struct Prefix {
    events: Vec<HandleEvent>,
    live: Vec<String>,
}

fn sources(n: usize) -> Vec<HandleEvent> {
    (0..n)
        .map(|i| HandleEvent::Source {
            id: format!("s{i}"),
            placement: Placement::Split,
        })
        .collect()
}

/// Saddles attachable to the live components, in a fixed order. Circles on
/// distinct components are listed once per unordered pair; on one
/// component, `diskin` only appears nested in a `disk`.
fn saddle_options(id: &str, live: &[String], classes: &[CurveClass]) -> Vec<Saddle> {
    let mut out = Vec::new();
    let circles: Vec<(usize, CurveClass)> =
        (0..live.len()).flat_map(|c| classes.iter().map(move |&k| (c, k))).collect();
    for (i, &(ca, ka)) in circles.iter().enumerate() {
        for &(cb, kb) in &circles[i..] {
            if ca == cb && ka == CurveClass::Disk && kb == CurveClass::Disk {
                out.push(Saddle::new(
                    id,
                    AttachCircle::new(&live[ca], CurveClass::Disk),
                    AttachCircle::new(&live[cb], CurveClass::NestedDisk),
                ));
            }
            out.push(Saddle::new(id, AttachCircle::new(&live[ca], ka), AttachCircle::new(&live[cb], kb)));
        }
    }
    out
}

fn after(live: &[String], s: &Saddle) -> Vec<String> {
    let mut next: Vec<String> = live.iter().filter(|c| **c != s.c1.comp && **c != s.c2.comp).cloned().collect();
    next.extend(s.products());
    next.sort();
    next
}

/// Source counts and first saddles covering the budget. Placements are
/// always `split`; they do not affect validation.
pub fn prefixes(b: &EnumerationBudget) -> Vec<Prefix> {
    let classes = classes(b.coeff_bound);
    let mut out = Vec::new();
    for n in 1..=(b.max_saddles + 1).max(2) {
        let events = sources(n);
        let live: Vec<String> = (0..n).map(|i| format!("s{i}")).collect();
        out.push(Prefix {
            events: events.clone(),
            live: live.clone(),
        });
        if b.max_saddles == 0 {
            continue;
        }
        for s in saddle_options("x0", &live, &classes) {
            let live = after(&live, &s);
            let mut events = events.clone();
            events.push(HandleEvent::Saddle(s));
            out.push(Prefix { events, live });
        }
    }
    out
}

fn close(events: Vec<HandleEvent>, live: &[String], saddles: usize, out: &mut Vec<Rhd>) {
    let sink = |i: usize, c: &String| HandleEvent::Sink {
        id: format!("k{i}"),
        target: c.clone(),
    };
    if saddles == 0 {
        for mask in 0u32..(1 << live.len()) {
            let mut ev = events.clone();
            let chosen = live.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0);
            ev.extend(chosen.enumerate().map(|(k, (_, c))| sink(k, c)));
            out.push(Rhd::new(ev));
        }
    } else {
        let mut ev = events;
        ev.extend(live.iter().enumerate().map(|(k, c)| sink(k, c)));
        out.push(Rhd::new(ev));
    }
}

fn extend(events: Vec<HandleEvent>, live: Vec<String>, saddles: usize, b: &EnumerationBudget, classes: &[CurveClass], out: &mut Vec<Rhd>) {
    close(events.clone(), &live, saddles, out);
    if saddles >= b.max_saddles {
        return;
    }
    for s in saddle_options(&format!("x{saddles}"), &live, classes) {
        let next = after(&live, &s);
        let mut ev = events.clone();
        ev.push(HandleEvent::Saddle(s));
        extend(ev, next, saddles + 1, b, classes, out);
    }
}

/// Every decomposition under `prefix`. Saddle-free decompositions take any
/// subset of sinks; otherwise every final component gets one sink.
pub fn expand(prefix: &Prefix, b: &EnumerationBudget) -> Vec<Rhd> {
    let saddles = prefix.events.iter().filter(|e| e.rank() == 1).count();
    let mut out = Vec::new();
    if saddles == 0 {
        close(prefix.events.clone(), &prefix.live, 0, &mut out);
    } else {
        extend(prefix.events.clone(), prefix.live.clone(), saddles, b, &classes(b.coeff_bound), &mut out);
    }
    out
}

/// Streams all decompositions within the budget: one to `max(s + 1, 2)`
/// split sources, up to `s` saddles over the classes of [`classes`], and
/// sinks closing the final level.
pub fn enumerate_rhds(b: EnumerationBudget) -> impl Iterator<Item = Rhd> {
    prefixes(&b).into_iter().flat_map(move |p| expand(&p, &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::normalize;
    use crate::rhd::{build_unknot, validate};

    #[test]
    fn torus_quotients() {
        assert_eq!(poly_div_torus(2, 3).unwrap(), LaurentPoly::new(0, vec![1, -1, 1]));
        assert_eq!(poly_div_torus(2, 5).unwrap(), LaurentPoly::new(0, vec![1, -1, 1, -1, 1]));
        assert_eq!(poly_div_torus(2, 4), Err(OracleError::NonCoprime(2, 4)));
        assert_eq!(poly_div_torus(1, 4), Err(OracleError::InvalidArgument(1, 4)));
    }

    #[test]
    fn random_exprs() {
        for seed in 0..50 {
            match random_expr(seed, 1, 7) {
                KnotExpr::Cable { p, q, companion } => {
                    assert!((1..=7).contains(&p) && (1..=7).contains(&q));
                    assert_eq!(*companion, KnotExpr::Unknot);
                }
                e => panic!("{e}"),
            }
        }
        assert_eq!(random_expr(42, 4, 7), random_expr(42, 4, 7));
        for seed in 0..500 {
            let e = random_expr(seed, 4, 7);
            assert!(e.depth() <= 4);
            normalize(&e).unwrap();
        }
    }

    #[test]
    fn class_list() {
        let c = classes(3);
        assert_eq!(c.len(), 17);
        assert!(c.contains(&CurveClass::MERIDIAN) && c.contains(&CurveClass::LONGITUDE));
    }

    #[test]
    fn no_saddles() {
        let b = EnumerationBudget {
            max_saddles: 0,
            ..Default::default()
        };
        let all: Vec<Rhd> = enumerate_rhds(b).collect();
        // one source with 0 or 1 sinks, two sources with 0, 1 or 2 sinks
        assert_eq!(all.len(), 2 + 4);
        let valid: Vec<&Rhd> = all.iter().filter(|r| validate(r).is_ok()).collect();
        assert_eq!(valid, vec![&build_unknot()]);
        for r in all.iter().filter(|r| r.sources().count() == 2 && r.sinks().count() == 1) {
            assert!(validate(r).is_err());
        }
    }

    #[test]
    fn deterministic_order() {
        let b = EnumerationBudget {
            max_saddles: 1,
            coeff_bound: 2,
            ..Default::default()
        };
        let a: Vec<Rhd> = enumerate_rhds(b).collect();
        let c: Vec<Rhd> = enumerate_rhds(b).collect();
        assert_eq!(a, c);
    }
}
