//! Batch drivers over many independent items. The `seq_*` functions always
//! exist; the `par_*` functions need the `parallel` feature, and the
//! unprefixed ones pick whichever is compiled in.

use std::collections::BTreeMap;
use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::expr::{equal_normalized, normalize, KnotExpr, MalformedExpression};
use crate::oracle::{expand, prefixes, random_expr, EnumerationBudget, Prefix};
use crate::rhd::{build, check_witnesses, extract, validate, Rhd, ViolationKind};

/// Tally of an exhaustive validation run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumerationSummary {
    pub total: usize,
    pub accepted: usize,
    /// Accepted decompositions whose distinguished source failed to extract
    /// or gave an incoherent kit.
    pub extraction_failures: usize,
    /// Number of decompositions reporting each kind at least once.
    pub rejections: BTreeMap<ViolationKind, usize>,
}

impl EnumerationSummary {
    fn record(&mut self, r: &Rhd) {
        self.total += 1;
        match validate(r) {
            Ok(()) => {
                self.accepted += 1;
                let k = r.distinguished_source().unwrap_or_default();
                if !extract(r, k).is_ok_and(|res| check_witnesses(&res).is_ok()) {
                    self.extraction_failures += 1;
                }
            }
            Err(vs) => {
                let mut kinds: Vec<ViolationKind> = vs.iter().map(|v| v.kind).collect();
                kinds.sort();
                kinds.dedup();
                for k in kinds {
                    *self.rejections.entry(k).or_default() += 1;
                }
            }
        }
    }

    fn merge(mut self, other: Self) -> Self {
        self.total += other.total;
        self.accepted += other.accepted;
        self.extraction_failures += other.extraction_failures;
        for (k, n) in other.rejections {
            *self.rejections.entry(k).or_default() += n;
        }
        self
    }
}

fn summarize_prefix(p: &Prefix, b: &EnumerationBudget) -> EnumerationSummary {
    let mut s = EnumerationSummary::default();
    for r in expand(p, b) {
        s.record(&r);
    }
    s
}

/// `extract(build(e))` for the seeded expression; `true` when it comes back
/// equal to `e` up to normalization.
pub fn round_trips(seed: u64, depth: usize, bound: i64) -> bool {
    let e = random_expr(seed, depth, bound);
    let Ok(r) = build(&e) else { return false };
    let Some(k) = r.distinguished_source() else { return false };
    extract(&r, k).is_ok_and(|res| equal_normalized(&res.expr, &e) == Ok(true))
}

pub fn seq_normalize_all(exprs: &[KnotExpr]) -> Vec<Result<KnotExpr, MalformedExpression>> {
    exprs.iter().map(normalize).collect()
}

pub fn seq_round_trip_failures(seeds: Range<u64>, depth: usize, bound: i64) -> Vec<u64> {
    seeds.filter(|&s| !round_trips(s, depth, bound)).collect()
}

pub fn seq_validate_enumeration(b: EnumerationBudget) -> EnumerationSummary {
    prefixes(&b)
        .iter()
        .map(|p| summarize_prefix(p, &b))
        .fold(EnumerationSummary::default(), EnumerationSummary::merge)
}

#[cfg(feature = "parallel")]
pub fn par_normalize_all(exprs: &[KnotExpr]) -> Vec<Result<KnotExpr, MalformedExpression>> {
    exprs.par_iter().map(normalize).collect()
}

#[cfg(feature = "parallel")]
pub fn par_round_trip_failures(seeds: Range<u64>, depth: usize, bound: i64) -> Vec<u64> {
    seeds.into_par_iter().filter(|&s| !round_trips(s, depth, bound)).collect()
}

#[cfg(feature = "parallel")]
pub fn par_validate_enumeration(b: EnumerationBudget) -> EnumerationSummary {
    prefixes(&b)
        .par_iter()
        .map(|p| summarize_prefix(p, &b))
        .reduce(EnumerationSummary::default, EnumerationSummary::merge)
}

pub fn normalize_all(exprs: &[KnotExpr]) -> Vec<Result<KnotExpr, MalformedExpression>> {
    #[cfg(feature = "parallel")]
    return par_normalize_all(exprs);
    #[cfg(not(feature = "parallel"))]
    return seq_normalize_all(exprs);
}

pub fn round_trip_failures(seeds: Range<u64>, depth: usize, bound: i64) -> Vec<u64> {
    #[cfg(feature = "parallel")]
    return par_round_trip_failures(seeds, depth, bound);
    #[cfg(not(feature = "parallel"))]
    return seq_round_trip_failures(seeds, depth, bound);
}

pub fn validate_enumeration(b: EnumerationBudget) -> EnumerationSummary {
    #[cfg(feature = "parallel")]
    return par_validate_enumeration(b);
    #[cfg(not(feature = "parallel"))]
    return seq_validate_enumeration(b);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> EnumerationBudget {
        EnumerationBudget {
            max_saddles: 1,
            coeff_bound: 2,
            ..Default::default()
        }
    }

    #[test]
    fn small_enumeration() {
        let s = seq_validate_enumeration(small());
        assert!(s.accepted > 0);
        assert_eq!(s.extraction_failures, 0);
        #[cfg(feature = "parallel")]
        assert_eq!(s, par_validate_enumeration(small()));
    }

    #[test]
    fn round_trip_sample() {
        assert!(seq_round_trip_failures(0..40, 3, 5).is_empty());
        #[cfg(feature = "parallel")]
        assert!(par_round_trip_failures(0..40, 3, 5).is_empty());
    }
}
