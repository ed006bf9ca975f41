use std::collections::HashMap;

use crate::expr::{normalize, KnotExpr, MalformedExpression};

use super::{AttachCircle, CurveClass, HandleEvent, Placement, Region, Rhd, Saddle};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BuildError {
    #[error("{0} is not a source of the decomposition")]
    UnknownComponent(String),
    #[error("({p},{q}) is not a primitive class")]
    NonPrimitiveClass { p: i64, q: i64 },
    #[error("a cable with p = 0 is a meridian; build the unknot instead")]
    MeridianCable,
    #[error("another source is placed relative to {0}")]
    PlacementReference(String),
    #[error(transparent)]
    Malformed(#[from] MalformedExpression),
}

/// One source and one sink on its tube; their cores form a Hopf link.
pub fn build_unknot() -> Rhd {
    Rhd::new(vec![
        HandleEvent::Source {
            id: "s0".into(),
            placement: Placement::Split,
        },
        HandleEvent::Sink {
            id: "k0".into(),
            target: "s0".into(),
        },
    ])
}

fn ensure_source(r: &Rhd, id: &str) -> Result<(), BuildError> {
    if r.sources().any(|s| s == id) {
        Ok(())
    } else {
        Err(BuildError::UnknownComponent(id.to_string()))
    }
}

fn retarget(c: &mut String, from: &str, to: &str) {
    if c == from {
        *c = to.to_string();
    }
}

fn retarget_event(e: &mut HandleEvent, from: &str, to: &str) {
    match e {
        HandleEvent::Saddle(s) => {
            retarget(&mut s.c1.comp, from, to);
            retarget(&mut s.c2.comp, from, to);
        }
        HandleEvent::Sink { target, .. } => retarget(target, from, to),
        HandleEvent::Source { .. } => {}
    }
}

/// Adds the `(p, q)` cable of source `j` as the new first source, placed in
/// `j`'s tube, and a first saddle joining its longitude `l0` to the `(p, q)`
/// curve on `j`'s tube. Later events on `j`'s tube move to the merged tube.
pub fn build_cable(base: &Rhd, j: &str, p: i64, q: i64) -> Result<Rhd, BuildError> {
    ensure_source(base, j)?;
    let class = CurveClass::essential(p, q).ok_or(BuildError::NonPrimitiveClass { p, q })?;
    if class.is_meridian() {
        return Err(BuildError::MeridianCable);
    }
    let base = prefixed(base, "b.");
    let j = format!("b.{j}");
    let (src, sad) = ("n", "c");
    let mut events = vec![HandleEvent::Source {
        id: src.into(),
        placement: Placement::Tube(j.clone()),
    }];
    events.extend(base.events.iter().filter(|e| e.rank() == 0).cloned());
    events.push(HandleEvent::Saddle(Saddle::new(
        sad,
        AttachCircle::new(src, CurveClass::LONGITUDE),
        AttachCircle::new(j.clone(), class),
    )));
    for e in base.events.iter().filter(|e| e.rank() > 0) {
        let mut e = e.clone();
        retarget_event(&mut e, &j, sad);
        events.push(e);
    }
    Ok(renumber(&events))
}

/// Connected sum: a new first source `V` whose tube splits along two
/// meridians into the tubes of `sa` and `sb`, which are removed. The events
/// of `a` and `b` are tagged with the side of the splitting sphere they lie
/// on.
pub fn build_sum(a: &Rhd, b: &Rhd, sa: &str, sb: &str) -> Result<Rhd, BuildError> {
    ensure_source(a, sa)?;
    ensure_source(b, sb)?;
    for (r, s) in [(a, sa), (b, sb)] {
        let referenced = r.events.iter().any(|e| match e {
            HandleEvent::Source {
                placement: Placement::Hopf(x) | Placement::Tube(x),
                ..
            } => x == s,
            _ => false,
        });
        if referenced {
            return Err(BuildError::PlacementReference(s.to_string()));
        }
    }
    let (a, b) = (prefixed(a, "a."), prefixed(b, "b."));
    let (sa, sb) = (format!("a.{sa}"), format!("b.{sb}"));
    let (v, w) = ("v", "w");
    let parts = [(&a, &sa, Region::A), (&b, &sb, Region::B)];

    let mut saddle = Saddle::new(
        w,
        AttachCircle::new(v, CurveClass::MERIDIAN),
        AttachCircle::new(v, CurveClass::MERIDIAN),
    );
    for (r, s, region) in parts {
        saddle
            .regions
            .extend(r.events.iter().filter(|e| e.id() != s.as_str()).map(|e| (e.id().to_string(), region)));
    }

    let mut events = vec![HandleEvent::Source {
        id: v.into(),
        placement: Placement::Split,
    }];
    for (r, s, _) in parts {
        events.extend(r.events.iter().filter(|e| e.rank() == 0 && e.id() != s.as_str()).cloned());
    }
    events.push(HandleEvent::Saddle(saddle));
    for rank in [1, 2] {
        for (r, s, region) in parts {
            let half = format!("{w}.{}", region.suffix());
            for e in r.events.iter().filter(|e| e.rank() == rank) {
                let mut e = e.clone();
                retarget_event(&mut e, s, &half);
                events.push(e);
            }
        }
    }
    Ok(renumber(&events))
}

/// Decomposition with the canonical form of `e` at its first source: the
/// unknot, cables and sums are built recursively, an n-fold sum as nested
/// binary sums.
pub fn build(e: &KnotExpr) -> Result<Rhd, BuildError> {
    build_canonical(&normalize(e)?)
}

fn build_canonical(e: &KnotExpr) -> Result<Rhd, BuildError> {
    match e {
        KnotExpr::Unknot => Ok(build_unknot()),
        KnotExpr::Cable { p, q, companion } => {
            let base = build_canonical(companion)?;
            let j = base.distinguished_source().unwrap().to_string();
            build_cable(&base, &j, *p, *q)
        }
        KnotExpr::Sum(xs) => {
            let mut acc = build_canonical(&xs[0])?;
            for x in &xs[1..] {
                let next = build_canonical(x)?;
                let sa = acc.distinguished_source().unwrap().to_string();
                let sb = next.distinguished_source().unwrap().to_string();
                acc = build_sum(&acc, &next, &sa, &sb)?;
            }
            Ok(acc)
        }
    }
}

fn prefix_comp(c: &str, pre: &str) -> String {
    format!("{pre}{c}")
}

/// Prefixes every identifier of `r`.
fn prefixed(r: &Rhd, pre: &str) -> Rhd {
    let events = r
        .events
        .iter()
        .map(|e| match e {
            HandleEvent::Source { id, placement } => HandleEvent::Source {
                id: prefix_comp(id, pre),
                placement: match placement {
                    Placement::Split => Placement::Split,
                    Placement::Hopf(x) => Placement::Hopf(prefix_comp(x, pre)),
                    Placement::Tube(x) => Placement::Tube(prefix_comp(x, pre)),
                },
            },
            HandleEvent::Saddle(s) => HandleEvent::Saddle(Saddle {
                id: prefix_comp(&s.id, pre),
                c1: AttachCircle::new(prefix_comp(&s.c1.comp, pre), s.c1.class),
                c2: AttachCircle::new(prefix_comp(&s.c2.comp, pre), s.c2.class),
                regions: s.regions.iter().map(|(id, r)| (prefix_comp(id, pre), *r)).collect(),
            }),
            HandleEvent::Sink { id, target } => HandleEvent::Sink {
                id: prefix_comp(id, pre),
                target: prefix_comp(target, pre),
            },
        })
        .collect();
    Rhd::new(events)
}

/// Renames sources `s0, s1, ...`, saddles `x0, ...` and sinks `k0, ...` in
/// list order, with component names following their events.
fn renumber(events: &[HandleEvent]) -> Rhd {
    let mut map: HashMap<&str, String> = HashMap::new();
    let mut counts = [0usize; 3];
    for e in events {
        let r = e.rank() as usize;
        map.insert(e.id(), format!("{}{}", ["s", "x", "k"][r], counts[r]));
        counts[r] += 1;
    }
    let ev = |id: &str| map.get(id).cloned().unwrap_or_else(|| id.to_string());
    let comp = |c: &str| {
        if let Some(m) = map.get(c) {
            return m.clone();
        }
        for suffix in [".A", ".B"] {
            if let Some(m) = c.strip_suffix(suffix).and_then(|stem| map.get(stem)) {
                return format!("{m}{suffix}");
            }
        }
        c.to_string()
    };
    let events = events
        .iter()
        .map(|e| match e {
            HandleEvent::Source { id, placement } => HandleEvent::Source {
                id: ev(id),
                placement: match placement {
                    Placement::Split => Placement::Split,
                    Placement::Hopf(x) => Placement::Hopf(ev(x)),
                    Placement::Tube(x) => Placement::Tube(comp(x)),
                },
            },
            HandleEvent::Saddle(s) => HandleEvent::Saddle(Saddle {
                id: ev(&s.id),
                c1: AttachCircle::new(comp(&s.c1.comp), s.c1.class),
                c2: AttachCircle::new(comp(&s.c2.comp), s.c2.class),
                regions: s.regions.iter().map(|(id, r)| (ev(id), *r)).collect(),
            }),
            HandleEvent::Sink { id, target } => HandleEvent::Sink {
                id: ev(id),
                target: comp(target),
            },
        })
        .collect();
    Rhd::new(events)
}
