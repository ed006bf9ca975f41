use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::expr::{canonical_sign, KnotExpr};

use super::extract::{solve, ExtractError, Solved};
use super::level::SaddleCase;
use super::{HandleEvent, Placement, Region, Rhd};

/// Unoriented link type of two unknotted critical knots.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LinkType {
    SplitLink,
    HopfLink,
    /// Each is the `(p, q)` cable of the other.
    CableOfEachOther { p: i64, q: i64 },
}

impl fmt::Display for LinkType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LinkType::SplitLink => f.write_str("SplitLink"),
            LinkType::HopfLink => f.write_str("HopfLink"),
            LinkType::CableOfEachOther { p, q } => write!(f, "CableOfEachOther({p},{q})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Extract(#[from] ExtractError),
    #[error("{0} is not an unknot")]
    NotUnknots(String),
    #[error("a knot cannot be paired with itself")]
    SameKnot,
    #[error("the decomposition does not determine how {0} and {1} are linked")]
    Undetermined(String, String),
}

/// Link type of an unknot and a `(p, q)` curve on the boundary of its tube.
/// `None` when the curve is knotted.
pub fn classify_cable(p: i64, q: i64) -> Option<LinkType> {
    let (p, q) = canonical_sign(p, q);
    match (p, q.abs()) {
        (0, _) => Some(LinkType::HopfLink),
        (1, 0) => Some(LinkType::SplitLink),
        (_, 1) => Some(LinkType::HopfLink),
        (1, _) => Some(LinkType::CableOfEachOther { p: 1, q }),
        _ => None,
    }
}

/// Records pair relations; the first relation recorded for a pair wins.
#[derive(Default)]
struct Relations {
    pairs: HashMap<(String, String), LinkType>,
    isolated: BTreeSet<String>,
}

impl Relations {
    fn set(&mut self, a: &str, b: &str, t: Option<LinkType>) {
        if a == b {
            return;
        }
        if let Some(t) = t {
            let key = if a < b { (a.into(), b.into()) } else { (b.into(), a.into()) };
            self.pairs.entry(key).or_insert(t);
        }
    }

    fn get(&self, a: &str, b: &str) -> Option<LinkType> {
        let key = if a < b { (a.to_string(), b.to_string()) } else { (b.to_string(), a.to_string()) };
        self.pairs.get(&key).copied()
    }
}

fn relations(r: &Rhd, s: &Solved) -> Relations {
    let mut rel = Relations::default();
    let saddles: HashMap<&str, _> = r.saddles().map(|x| (x.id.as_str(), x)).collect();
    // cable steps by companion, for sinks capping the companion later
    let mut cables_over: HashMap<usize, Vec<(String, i64, i64)>> = HashMap::new();

    for step in &s.replay.steps {
        let id = step.saddle.as_str();
        match step.case {
            SaddleCase::Cable { p, q, cable, companion } => {
                let saddle = saddles[id];
                let cable_side = if saddle.c1.class.coefficients().map(|c| c.0) == Some(1) {
                    saddle.c1.class
                } else {
                    saddle.c2.class
                };
                let (_, m) = cable_side.coefficients().unwrap();
                if let Some(sc) = s.source_of(cable) {
                    rel.set(id, sc, classify_cable(1, m));
                    if let Some(so) = s.source_of(companion) {
                        rel.set(sc, so, classify_cable(p, q));
                    }
                    cables_over.entry(companion).or_default().push((sc.to_string(), p, q));
                }
                if let Some(so) = s.source_of(companion) {
                    rel.set(id, so, classify_cable(p, q));
                }
                cables_over.entry(companion).or_default().push((id.to_string(), p, q));
            }
            SaddleCase::Hopf { first, second, .. } => {
                if let (Some(a), Some(b)) = (s.source_of(first), s.source_of(second)) {
                    rel.set(a, b, Some(LinkType::HopfLink));
                }
            }
            SaddleCase::DiskAbsorb { absorbed, .. } => {
                rel.isolated.insert(id.to_string());
                if let Some(a) = s.source_of(absorbed) {
                    rel.isolated.insert(a.to_string());
                }
            }
            SaddleCase::MeridianAbsorb { meridian_side, absorbed } => {
                let p1 = s.source_of(meridian_side);
                let p2 = s.source_of(absorbed);
                if let (Some(a), Some(b)) = (p1, p2) {
                    rel.set(a, b, Some(LinkType::HopfLink));
                }
                if let Some(a) = p1 {
                    rel.set(id, a, Some(LinkType::HopfLink));
                }
                if let Some(b) = p2 {
                    rel.set(id, b, Some(LinkType::SplitLink));
                }
            }
            SaddleCase::MeridianSplit { whole, .. } => {
                if let Some(v) = s.source_of(whole) {
                    rel.set(id, v, Some(LinkType::HopfLink));
                }
                let tags = &saddles[id].regions;
                for (x, rx) in tags {
                    rel.set(id, x, Some(LinkType::SplitLink));
                    for (y, ry) in tags {
                        if rx == &Region::A && ry == &Region::B {
                            rel.set(x, y, Some(LinkType::SplitLink));
                        }
                    }
                }
            }
            SaddleCase::NestedDisks { .. } => {
                rel.isolated.insert(id.to_string());
            }
            SaddleCase::Sphere | SaddleCase::Rejected => {}
        }
    }

    for sink in &s.replay.sinks {
        let Some(v) = sink.capped else { continue };
        if let Some(src) = s.source_of(v) {
            rel.set(&sink.sink, src, Some(LinkType::HopfLink));
        }
        // a (p, q) curve on the capped tube is a (q, p) curve around the sink
        for (knot, p, q) in cables_over.get(&v).into_iter().flatten() {
            rel.set(&sink.sink, knot, classify_cable(*q, *p));
        }
    }

    for e in &r.events {
        if let HandleEvent::Source {
            id,
            placement: Placement::Hopf(other),
        } = e
        {
            rel.set(id, other, Some(LinkType::HopfLink));
        }
    }
    let split: Vec<&str> = r
        .events
        .iter()
        .filter_map(|e| match e {
            HandleEvent::Source {
                id,
                placement: Placement::Split,
            } => Some(id.as_str()),
            _ => None,
        })
        .collect();
    for (i, a) in split.iter().enumerate() {
        for b in &split[i + 1..] {
            rel.set(a, b, Some(LinkType::SplitLink));
        }
    }
    rel
}

/// Link type of two unknotted critical knots, read from the placements and
/// the relations recorded while extracting.
pub fn classify_pair(r: &Rhd, k1: &str, k2: &str) -> Result<LinkType, ClassifyError> {
    let solved = solve(r)?;
    for k in [k1, k2] {
        let term = solved
            .knots
            .get(k)
            .ok_or_else(|| ExtractError::UnknownComponent(k.to_string()))?;
        if solved.expr(term) != KnotExpr::Unknot {
            return Err(ClassifyError::NotUnknots(k.to_string()));
        }
    }
    if k1 == k2 {
        return Err(ClassifyError::SameKnot);
    }
    let rel = relations(r, &solved);
    if let Some(t) = rel.get(k1, k2) {
        return Ok(t);
    }
    if rel.isolated.contains(k1) || rel.isolated.contains(k2) {
        return Ok(LinkType::SplitLink);
    }
    Err(ClassifyError::Undetermined(k1.to_string(), k2.to_string()))
}
