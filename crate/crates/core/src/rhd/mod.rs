//! Combinatorial round handle decompositions of the 3-sphere.
//!
//! An [`Rhd`] is an ordered list of handle events. A source creates a torus
//! component named after it: the boundary of a tube around the source knot.
//! A saddle surgers the level surface along two attaching circles; merging
//! two components produces the component `<saddle>`, splitting one produces
//! `<saddle>.A` and `<saddle>.B`. A sink caps a component.
//!
//! Embedding data is not modeled geometrically. It is encoded by source
//! placements, attaching classes, and region tags on splitting saddles.

mod build;
mod classify;
mod extract;
mod format;
mod level;
mod validate;

use std::fmt;

use num_integer::Integer;

pub use build::{build, build_cable, build_sum, build_unknot, BuildError};
pub use classify::{classify_pair, ClassifyError, LinkType};
pub use extract::{check_witnesses, extract, ExtractError, ExtractionResult, KitNode};
pub use format::{parse_rhd, RhdParseError};
pub use level::{
    replay, Component, Core, DeadComponent, Def, LevelSnapshot, LevelState, Replay, SaddleCase, SinkRecord, Step,
    Surgery, VarId,
};
pub use validate::{validate, Violation, ViolationKind};

/// A circle on a level torus, up to isotopy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveClass {
    /// Bounds a disk in the torus.
    Disk,
    /// Bounds a disk nested inside the disk of the other attaching circle.
    NestedDisk,
    /// Essential primitive class `p` longitudes plus `q` meridians, with
    /// `p >= 0` and `q = 1` when `p = 0`.
    Essential { p: i64, q: i64 },
}

impl CurveClass {
    pub const MERIDIAN: CurveClass = CurveClass::Essential { p: 0, q: 1 };
    pub const LONGITUDE: CurveClass = CurveClass::Essential { p: 1, q: 0 };

    /// Sign-canonical essential class; `None` unless `(p, q)` is primitive.
    pub fn essential(p: i64, q: i64) -> Option<CurveClass> {
        if p == i64::MIN || q == i64::MIN || p.gcd(&q) != 1 {
            return None;
        }
        let (p, q) = crate::expr::canonical_sign(p, q);
        Some(CurveClass::Essential { p, q })
    }

    pub fn is_disk_like(self) -> bool {
        matches!(self, CurveClass::Disk | CurveClass::NestedDisk)
    }

    pub fn is_meridian(self) -> bool {
        self == CurveClass::MERIDIAN
    }

    pub fn coefficients(self) -> Option<(i64, i64)> {
        match self {
            CurveClass::Essential { p, q } => Some((p, q)),
            _ => None,
        }
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CurveClass::Disk => f.write_str("disk"),
            CurveClass::NestedDisk => f.write_str("diskin"),
            CurveClass::Essential { p: 0, .. } => f.write_str("m"),
            CurveClass::Essential { p: 1, q } => write!(f, "l{q}"),
            CurveClass::Essential { p, q } => write!(f, "({p},{q})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Placement {
    /// In a ball disjoint from everything placed before.
    Split,
    /// Core of the solid torus complementary to the named source's tube.
    Hopf(String),
    /// Inside the tube of the named component.
    Tube(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AttachCircle {
    pub comp: String,
    pub class: CurveClass,
}

impl AttachCircle {
    pub fn new(comp: impl Into<String>, class: CurveClass) -> Self {
        AttachCircle { comp: comp.into(), class }
    }
}

impl fmt::Display for AttachCircle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.comp, self.class)
    }
}

/// Side of the splitting sphere of a connected-sum saddle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    A,
    B,
}

impl Region {
    pub fn suffix(self) -> &'static str {
        match self {
            Region::A => "A",
            Region::B => "B",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Saddle {
    pub id: String,
    pub c1: AttachCircle,
    pub c2: AttachCircle,
    /// Events lying on each side of the splitting sphere.
    pub regions: Vec<(String, Region)>,
}

impl Saddle {
    pub fn new(id: impl Into<String>, c1: AttachCircle, c2: AttachCircle) -> Self {
        Saddle {
            id: id.into(),
            c1,
            c2,
            regions: Vec::new(),
        }
    }

    /// Names of the components the surgery produces. Depends only on the
    /// syntax: one component for a merge or a disk/essential pair, two
    /// otherwise.
    pub fn products(&self) -> Vec<String> {
        let disks = (self.c1.class.is_disk_like(), self.c2.class.is_disk_like());
        let two = if self.c1.comp == self.c2.comp {
            disks.0 == disks.1
        } else {
            disks.0 && disks.1
        };
        if two {
            vec![format!("{}.A", self.id), format!("{}.B", self.id)]
        } else {
            vec![self.id.clone()]
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum HandleEvent {
    Source { id: String, placement: Placement },
    Saddle(Saddle),
    Sink { id: String, target: String },
}

impl HandleEvent {
    pub fn id(&self) -> &str {
        match self {
            HandleEvent::Source { id, .. } | HandleEvent::Sink { id, .. } => id,
            HandleEvent::Saddle(s) => &s.id,
        }
    }

    /// 0 for sources, 1 for saddles, 2 for sinks.
    pub fn rank(&self) -> u8 {
        match self {
            HandleEvent::Source { .. } => 0,
            HandleEvent::Saddle(_) => 1,
            HandleEvent::Sink { .. } => 2,
        }
    }
}

/// An ordered round handle decomposition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Rhd {
    pub events: Vec<HandleEvent>,
}

impl Rhd {
    pub fn new(events: Vec<HandleEvent>) -> Self {
        Rhd { events }
    }

    pub fn sources(&self) -> impl Iterator<Item = &str> {
        self.events.iter().filter_map(|e| match e {
            HandleEvent::Source { id, .. } => Some(id.as_str()),
            _ => None,
        })
    }

    pub fn saddles(&self) -> impl Iterator<Item = &Saddle> {
        self.events.iter().filter_map(|e| match e {
            HandleEvent::Saddle(s) => Some(s),
            _ => None,
        })
    }

    pub fn sinks(&self) -> impl Iterator<Item = &str> {
        self.events.iter().filter_map(|e| match e {
            HandleEvent::Sink { id, .. } => Some(id.as_str()),
            _ => None,
        })
    }

    pub fn saddle_count(&self) -> usize {
        self.saddles().count()
    }

    /// The first source; the builders put the constructed knot there.
    pub fn distinguished_source(&self) -> Option<&str> {
        self.sources().next()
    }

    pub fn event(&self, id: &str) -> Option<&HandleEvent> {
        self.events.iter().find(|e| e.id() == id)
    }
}

impl fmt::Display for HandleEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HandleEvent::Source { id, placement } => match placement {
                Placement::Split => write!(f, "source {id} split"),
                Placement::Hopf(s) => write!(f, "source {id} hopf {s}"),
                Placement::Tube(c) => write!(f, "source {id} tube {c}"),
            },
            HandleEvent::Saddle(s) => {
                write!(f, "saddle {} {} {}", s.id, s.c1, s.c2)?;
                if !s.regions.is_empty() {
                    f.write_str(" region")?;
                    for (id, r) in &s.regions {
                        write!(f, " {id}={}", r.suffix())?;
                    }
                }
                Ok(())
            }
            HandleEvent::Sink { id, target } => write!(f, "sink {id} {target}"),
        }
    }
}

impl fmt::Display for Rhd {
    /// The line-based file format, one event per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}
