//! Level surfaces between events, and the surgery a saddle performs on them.
//!
//! Each component records which side is a solid torus. An inner component
//! bounds a solid torus below the level; its core is a knot variable whose
//! type is fixed when the component's solid torus is absorbed, split or
//! capped. An outer component has a solid torus above it, around a known
//! torus knot.

use std::collections::{BTreeMap, HashSet};

use super::validate::{Violation, ViolationKind};
use super::{CurveClass, HandleEvent, Placement, Region, Rhd, Saddle};

pub type VarId = usize;

/// How a knot variable is fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Def {
    Unknot,
    /// The `(p, q)` cable of the variable `of`.
    Cable { p: i64, q: i64, of: VarId },
    Sum(VarId, VarId),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Birth {
    Source(String),
    Split { saddle: String, region: Region },
    Fresh { saddle: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarInfo {
    pub birth: Birth,
    /// The component created with this variable as its core.
    pub birth_comp: String,
    pub def: Option<Def>,
    /// Event that fixed the definition.
    pub defined_at: Option<String>,
    /// For cable and sum definitions: a component whose core is the
    /// companion.
    pub gamma_comp: Option<String>,
}

/// The solid torus above an outer component, around the `(p, q)` torus knot
/// that lies on the boundary of `inner`'s tube, held in `gamma_comp`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OuterCore {
    pub p: i64,
    pub q: i64,
    pub inner: VarId,
    pub gamma_comp: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Core {
    Inner(VarId),
    Outer(OuterCore),
    /// No core is tracked (degenerate components).
    Opaque,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub genus: u32,
    /// Produced by a rejected surgery; exempt from later checks.
    pub degenerate: bool,
    pub core: Core,
    pub(crate) piece: usize,
}

/// Which configuration a saddle was found in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaddleCase {
    /// One circle bounds a disk and the other is the longitude `l0` of the
    /// absorbed torus; the absorbed core is trivial.
    DiskAbsorb { absorbed: VarId, result: VarId },
    /// Nested disk-bounding circles on one torus split off a new torus.
    NestedDisks { outer: VarId, inner: VarId },
    /// Two meridians of one torus: its core is the sum of the two new cores.
    MeridianSplit { whole: VarId, a: VarId, b: VarId },
    /// A meridian on one torus and `l0` on another, whose core is trivial.
    MeridianAbsorb { meridian_side: VarId, absorbed: VarId },
    /// A longitude-type circle on the torus of `cable` and the `(p, q)` class
    /// on the torus of `companion`.
    Cable { p: i64, q: i64, cable: VarId, companion: VarId },
    /// Classes `(p, q)` and `(|q|, ±p)` on two Hopf-linked trivial tori; the
    /// saddle is the `(p, q)` torus knot.
    Hopf { p: i64, q: i64, first: VarId, second: VarId },
    /// Disjoint disks: one product is a sphere.
    Sphere,
    /// The configuration was rejected or touched a degenerate component.
    Rejected,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surgery {
    pub case: SaddleCase,
    pub consumed: Vec<String>,
    pub produced: Vec<String>,
    pub violations: Vec<(ViolationKind, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub saddle: String,
    pub case: SaddleCase,
    pub consumed: Vec<String>,
    pub produced: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SinkRecord {
    pub sink: String,
    pub target: String,
    /// Inner core that the sink caps; the sink is its Hopf dual.
    pub capped: Option<VarId>,
    /// Outer core the sink runs along.
    pub outer: Option<OuterCore>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("component {0} is not live")]
pub struct DeadComponent(pub String);

/// The regular level surface, plus the knot variables met so far.
#[derive(Clone, Debug, Default)]
pub struct LevelState {
    pub components: BTreeMap<String, Component>,
    pub vars: Vec<VarInfo>,
    parent: Vec<usize>,
    seen: HashSet<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSnapshot {
    pub after: String,
    /// `(component, genus, degenerate)` in name order.
    pub components: Vec<(String, u32, bool)>,
    pub euler_characteristic: i64,
}

type CaseResult = Result<(SaddleCase, Core), (ViolationKind, String)>;

impl LevelState {
    pub fn new() -> Self {
        LevelState::default()
    }

    /// Sum of `2 - 2g` over components.
    pub fn euler_characteristic(&self) -> i64 {
        self.components.values().map(|c| 2 - 2 * c.genus as i64).sum()
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> usize {
        let (ra, rb) = (self.find(a), self.find(b));
        self.parent[rb] = ra;
        ra
    }

    /// Number of connected pieces of the sublevel set swept so far.
    pub fn piece_count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }

    fn new_var(&mut self, birth: Birth, comp: &str) -> VarId {
        self.vars.push(VarInfo {
            birth,
            birth_comp: comp.to_string(),
            def: None,
            defined_at: None,
            gamma_comp: None,
        });
        self.vars.len() - 1
    }

    fn define(&mut self, v: VarId, def: Def, at: &str, gamma_comp: Option<&str>) {
        let info = &mut self.vars[v];
        debug_assert!(info.def.is_none(), "variable {v} defined twice");
        info.def = Some(def);
        info.defined_at = Some(at.to_string());
        info.gamma_comp = gamma_comp.map(str::to_string);
    }

    fn insert(&mut self, name: &str, genus: u32, degenerate: bool, core: Core, piece: usize) {
        self.components.insert(
            name.to_string(),
            Component {
                genus,
                degenerate,
                core,
                piece,
            },
        );
    }

    /// Adds the tube of a new source. Placements refer to other sources of
    /// the decomposition, listed in `sources`. Returns an unknown reference,
    /// if any.
    pub fn add_source(&mut self, id: &str, placement: &Placement, sources: &HashSet<String>) -> Option<String> {
        let missing = match placement {
            Placement::Split => None,
            Placement::Hopf(s) | Placement::Tube(s) => (s == id || !sources.contains(s)).then(|| s.clone()),
        };
        self.seen.insert(id.to_string());
        let v = self.new_var(Birth::Source(id.to_string()), id);
        self.parent.push(self.parent.len());
        let piece = self.parent.len() - 1;
        self.insert(id, 1, false, Core::Inner(v), piece);
        missing
    }

    /// Caps a component.
    pub fn apply_sink(&mut self, id: &str, target: &str) -> Result<SinkRecord, DeadComponent> {
        let comp = self
            .components
            .remove(target)
            .ok_or_else(|| DeadComponent(target.to_string()))?;
        let mut record = SinkRecord {
            sink: id.to_string(),
            target: target.to_string(),
            capped: None,
            outer: None,
        };
        if !comp.degenerate {
            match comp.core {
                Core::Inner(v) => {
                    self.define(v, Def::Unknot, id, None);
                    record.capped = Some(v);
                }
                Core::Outer(o) => record.outer = Some(o),
                Core::Opaque => {}
            }
        }
        Ok(record)
    }

    /// Pure surgery: the level after the saddle, and what happened.
    pub fn surger(&self, s: &Saddle) -> Result<(LevelState, Surgery), DeadComponent> {
        let mut next = self.clone();
        let surgery = next.apply_saddle(s)?;
        Ok((next, surgery))
    }

    /// Surgery in place.
    pub fn apply_saddle(&mut self, s: &Saddle) -> Result<Surgery, DeadComponent> {
        for c in [&s.c1, &s.c2] {
            if !self.components.contains_key(&c.comp) {
                return Err(DeadComponent(c.comp.clone()));
            }
        }
        let names = s.products();
        let mut out = Surgery {
            case: SaddleCase::Rejected,
            consumed: Vec::new(),
            produced: names.clone(),
            violations: Vec::new(),
        };
        for n in &names {
            if !self.seen.insert(n.clone()) {
                out.violations
                    .push((ViolationKind::DuplicateId, format!("component {n} already exists")));
            }
        }
        if s.c1.comp == s.c2.comp {
            self.surger_same(s, &names, &mut out);
        } else {
            self.surger_distinct(s, &names, &mut out);
        }
        Ok(out)
    }

    fn sphere(&mut self, names: &[String], other_genus: u32, inputs_degenerate: bool, piece: usize, out: &mut Surgery) {
        out.case = SaddleCase::Sphere;
        out.violations
            .push((ViolationKind::SphereProduced, format!("{} is a sphere", names[0])));
        if !inputs_degenerate && other_genus != 1 {
            out.violations.push((
                ViolationKind::GenusExceeded,
                format!("{} has genus {other_genus}", names[1]),
            ));
        }
        self.insert(&names[0], 0, true, Core::Opaque, piece);
        self.insert(&names[1], other_genus, true, Core::Opaque, piece);
    }

    fn surger_distinct(&mut self, s: &Saddle, names: &[String], out: &mut Surgery) {
        let x = self.components.remove(&s.c1.comp).unwrap();
        let y = self.components.remove(&s.c2.comp).unwrap();
        out.consumed = vec![s.c1.comp.clone(), s.c2.comp.clone()];
        let piece = self.union(x.piece, y.piece);
        let degenerate = x.degenerate || y.degenerate;
        if s.c1.class.is_disk_like() && s.c2.class.is_disk_like() {
            self.sphere(names, x.genus + y.genus, degenerate, piece, out);
            return;
        }
        let genus = (x.genus + y.genus).saturating_sub(1);
        let result = if degenerate {
            Ok((SaddleCase::Rejected, Core::Opaque))
        } else {
            self.distinct_case(s, &x.core, &y.core)
        };
        match result {
            Ok((case, core)) => {
                let bad_genus = !degenerate && genus != 1;
                if bad_genus {
                    out.violations
                        .push((ViolationKind::GenusExceeded, format!("{} has genus {genus}", names[0])));
                }
                out.case = case;
                self.insert(&names[0], genus, degenerate || bad_genus, core, piece);
            }
            Err(v) => {
                out.violations.push(v);
                self.insert(&names[0], genus, true, Core::Opaque, piece);
            }
        }
    }

    fn distinct_case(&mut self, s: &Saddle, cx: &Core, cy: &Core) -> CaseResult {
        let (Core::Inner(vx), Core::Inner(vy)) = (cx, cy) else {
            return Err((
                ViolationKind::UnsupportedConfiguration,
                "saddle on a component bounding a knot complement".into(),
            ));
        };
        let (vx, vy) = (*vx, *vy);
        let (a, b) = (s.c1.class, s.c2.class);
        if a == CurveClass::NestedDisk || b == CurveClass::NestedDisk {
            return Err(inconsistent("diskin needs a disk partner on the same component"));
        }
        match (a.coefficients(), b.coefficients()) {
            (None, Some(_)) | (Some(_), None) => {
                let (disk_var, ess_var, ess) = if a == CurveClass::Disk { (vx, vy, b) } else { (vy, vx, a) };
                if ess != CurveClass::LONGITUDE {
                    return Err(inconsistent(format!("a disk can only be paired with l0 on another torus, got {ess}")));
                }
                self.define(ess_var, Def::Unknot, &s.id, None);
                Ok((
                    SaddleCase::DiskAbsorb {
                        absorbed: ess_var,
                        result: disk_var,
                    },
                    Core::Inner(disk_var),
                ))
            }
            (Some((pa, qa)), Some((pb, qb))) => {
                if a.is_meridian() && b.is_meridian() {
                    return Err(inconsistent("two meridians on distinct components"));
                }
                if a.is_meridian() || b.is_meridian() {
                    let (mv, other_var, other) = if a.is_meridian() { (vx, vy, b) } else { (vy, vx, a) };
                    if other != CurveClass::LONGITUDE {
                        return Err(inconsistent(format!("a meridian can only be paired with l0, got {other}")));
                    }
                    self.define(other_var, Def::Unknot, &s.id, None);
                    return Ok((
                        SaddleCase::MeridianAbsorb {
                            meridian_side: mv,
                            absorbed: other_var,
                        },
                        Core::Inner(mv),
                    ));
                }
                if pa == 1 || pb == 1 {
                    let (cable, companion, (p, q), comp) = if pa == 1 {
                        (vx, vy, (pb, qb), &s.c2.comp)
                    } else {
                        (vy, vx, (pa, qa), &s.c1.comp)
                    };
                    self.define(cable, Def::Cable { p, q, of: companion }, &s.id, Some(comp));
                    return Ok((SaddleCase::Cable { p, q, cable, companion }, Core::Inner(companion)));
                }
                if pb != qa.abs() || qb != qa.signum() * pa {
                    return Err(inconsistent(format!(
                        "({pa},{qa}) and ({pb},{qb}) are not the same curve on a pair of Hopf-linked tori"
                    )));
                }
                self.define(vx, Def::Unknot, &s.id, None);
                self.define(vy, Def::Unknot, &s.id, None);
                let outer = OuterCore {
                    p: pa,
                    q: qa,
                    inner: vx,
                    gamma_comp: s.c1.comp.clone(),
                };
                Ok((
                    SaddleCase::Hopf {
                        p: pa,
                        q: qa,
                        first: vx,
                        second: vy,
                    },
                    Core::Outer(outer),
                ))
            }
            (None, None) => unreachable!("disk pairs are handled by the caller"),
        }
    }

    fn surger_same(&mut self, s: &Saddle, names: &[String], out: &mut Surgery) {
        let comp = &s.c1.comp;
        let x = self.components.remove(comp).unwrap();
        out.consumed = vec![comp.clone()];
        let piece = x.piece;
        let (a, b) = (s.c1.class, s.c2.class);
        if a == CurveClass::Disk && b == CurveClass::Disk {
            self.sphere(names, x.genus + 1, x.degenerate, piece, out);
            return;
        }
        let genera: Vec<u32> = if names.len() == 1 { vec![x.genus] } else { vec![x.genus, 1] };
        let result = match (&x.core, x.degenerate) {
            (_, true) => Err(None),
            (Core::Inner(v), false) => self.same_case(s, *v, names).map_err(Some),
            (_, false) => Err(Some((
                ViolationKind::UnsupportedConfiguration,
                "saddle on a component bounding a knot complement".into(),
            ))),
        };
        match result {
            Ok((case, cores)) => {
                out.case = case;
                for ((name, genus), core) in names.iter().zip(genera).zip(cores) {
                    self.insert(name, genus, false, core, piece);
                }
            }
            Err(v) => {
                out.violations.extend(v);
                for (name, genus) in names.iter().zip(genera) {
                    self.insert(name, genus, true, Core::Opaque, piece);
                }
            }
        }
    }

    fn same_case(
        &mut self,
        s: &Saddle,
        vx: VarId,
        names: &[String],
    ) -> Result<(SaddleCase, Vec<Core>), (ViolationKind, String)> {
        use CurveClass::{Disk, Essential, NestedDisk};
        let (a, b) = (s.c1.class, s.c2.class);
        match (a, b) {
            (Disk, NestedDisk) | (NestedDisk, Disk) => {
                let inner = self.new_var(Birth::Fresh { saddle: s.id.clone() }, &names[1]);
                Ok((SaddleCase::NestedDisks { outer: vx, inner }, vec![Core::Inner(vx), Core::Inner(inner)]))
            }
            (NestedDisk, _) | (_, NestedDisk) => Err(inconsistent("diskin needs a plain disk partner")),
            (Disk, ess @ Essential { .. }) | (ess @ Essential { .. }, Disk) => {
                if ess != CurveClass::LONGITUDE {
                    return Err(inconsistent(format!("a disk can only be paired with l0 on its own torus, got {ess}")));
                }
                self.define(vx, Def::Unknot, &s.id, None);
                let result = self.new_var(Birth::Fresh { saddle: s.id.clone() }, &names[0]);
                Ok((SaddleCase::DiskAbsorb { absorbed: vx, result }, vec![Core::Inner(result)]))
            }
            _ if a.is_meridian() && b.is_meridian() => {
                let va = self.new_var(
                    Birth::Split {
                        saddle: s.id.clone(),
                        region: Region::A,
                    },
                    &names[0],
                );
                let vb = self.new_var(
                    Birth::Split {
                        saddle: s.id.clone(),
                        region: Region::B,
                    },
                    &names[1],
                );
                self.define(vx, Def::Sum(va, vb), &s.id, Some(&s.c1.comp));
                Ok((
                    SaddleCase::MeridianSplit { whole: vx, a: va, b: vb },
                    vec![Core::Inner(va), Core::Inner(vb)],
                ))
            }
            _ if a == b => Err((
                ViolationKind::UnsupportedConfiguration,
                format!("two parallel {a} circles on one torus"),
            )),
            _ => Err(inconsistent(format!("{a} and {b} intersect on one torus"))),
        }
    }
}

fn inconsistent(msg: impl Into<String>) -> (ViolationKind, String) {
    (ViolationKind::InconsistentAttachment, msg.into())
}

/// Everything learned by running the events of a decomposition in order.
#[derive(Clone, Debug, Default)]
pub struct Replay {
    pub violations: Vec<Violation>,
    pub state: LevelState,
    pub steps: Vec<Step>,
    pub sinks: Vec<SinkRecord>,
    pub source_vars: Vec<(String, VarId)>,
    /// Every component ever created, with its core at creation.
    pub created: Vec<(String, Core)>,
    /// Level after each event, when requested.
    pub levels: Vec<LevelSnapshot>,
}

fn kind_name(e: &HandleEvent) -> &'static str {
    match e {
        HandleEvent::Source { .. } => "source",
        HandleEvent::Saddle(_) => "saddle",
        HandleEvent::Sink { .. } => "sink",
    }
}

/// Runs the events through the level surface, collecting violations.
///
/// Ordering violations are checked first; if there are any, nothing else is
/// replayed.
pub fn replay(rhd: &Rhd, record_levels: bool) -> Replay {
    let mut r = Replay::default();
    let mut top: Option<&HandleEvent> = None;
    for e in &rhd.events {
        match top {
            Some(t) if e.rank() < t.rank() => r.violations.push(Violation::new(
                ViolationKind::OrderingViolation,
                e.id(),
                format!("{} {} comes after {} {}", kind_name(e), e.id(), kind_name(t), t.id()),
            )),
            Some(t) if e.rank() == t.rank() => {}
            _ => top = Some(e),
        }
    }
    if !r.violations.is_empty() {
        return r;
    }

    let mut event_ids = HashSet::new();
    for e in &rhd.events {
        if !event_ids.insert(e.id().to_string()) {
            r.violations
                .push(Violation::new(ViolationKind::DuplicateId, e.id(), "event id used twice"));
        }
    }

    let sources: HashSet<String> = rhd.sources().map(str::to_string).collect();
    for e in &rhd.events {
        match e {
            HandleEvent::Source { id, placement } => {
                if let Some(missing) = r.state.add_source(id, placement, &sources) {
                    r.violations.push(Violation::new(
                        ViolationKind::UnknownComponent,
                        id,
                        format!("placement refers to unknown {missing}"),
                    ));
                }
                r.source_vars.push((id.clone(), r.state.vars.len() - 1));
                r.created.push((id.clone(), r.state.components[id].core.clone()));
            }
            HandleEvent::Saddle(s) => match r.state.apply_saddle(s) {
                Ok(surgery) => {
                    for (kind, detail) in surgery.violations {
                        r.violations.push(Violation::new(kind, &s.id, detail));
                    }
                    check_regions(s, &surgery.case, &event_ids, &mut r.violations);
                    for name in &surgery.produced {
                        r.created.push((name.clone(), r.state.components[name].core.clone()));
                    }
                    r.steps.push(Step {
                        saddle: s.id.clone(),
                        case: surgery.case,
                        consumed: surgery.consumed,
                        produced: surgery.produced,
                    });
                }
                Err(DeadComponent(c)) => r.violations.push(Violation::new(
                    ViolationKind::UnknownComponent,
                    &s.id,
                    format!("{c} is not a live component"),
                )),
            },
            HandleEvent::Sink { id, target } => match r.state.apply_sink(id, target) {
                Ok(rec) => r.sinks.push(rec),
                Err(DeadComponent(c)) => r.violations.push(Violation::new(
                    ViolationKind::UnknownComponent,
                    id,
                    format!("{c} is not a live component"),
                )),
            },
        }
        if record_levels {
            r.levels.push(LevelSnapshot {
                after: e.id().to_string(),
                components: r
                    .state
                    .components
                    .iter()
                    .map(|(n, c)| (n.clone(), c.genus, c.degenerate))
                    .collect(),
                euler_characteristic: r.state.euler_characteristic(),
            });
        }
    }

    let dangling: Vec<String> = r
        .state
        .components
        .iter()
        .filter(|(_, c)| !c.degenerate)
        .map(|(n, _)| n.clone())
        .collect();
    for name in dangling {
        r.violations.push(Violation::new(
            ViolationKind::DanglingComponent,
            &name,
            "never capped by a sink",
        ));
    }
    if sources.is_empty() {
        r.violations
            .push(Violation::new(ViolationKind::Disconnected, "-", "no sources"));
    } else {
        let pieces = r.state.piece_count();
        if pieces > 1 {
            r.violations.push(Violation::new(
                ViolationKind::Disconnected,
                "-",
                format!("sublevel set has {pieces} pieces"),
            ));
        }
    }
    r
}

fn check_regions(s: &Saddle, case: &SaddleCase, event_ids: &HashSet<String>, out: &mut Vec<Violation>) {
    if s.regions.is_empty() {
        return;
    }
    if !matches!(case, SaddleCase::MeridianSplit { .. }) {
        out.push(Violation::new(
            ViolationKind::RegionMismatch,
            &s.id,
            "region tags on a saddle that does not split along meridians",
        ));
        return;
    }
    let mut tagged = HashSet::new();
    for (id, _) in &s.regions {
        if id == &s.id || !event_ids.contains(id) || !tagged.insert(id) {
            out.push(Violation::new(
                ViolationKind::RegionMismatch,
                &s.id,
                format!("bad region tag for {id}"),
            ));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rhd::AttachCircle;

    fn torus_pair() -> LevelState {
        let mut st = LevelState::new();
        let all: HashSet<String> = ["a".to_string(), "b".to_string()].into();
        st.add_source("a", &Placement::Split, &all);
        st.add_source("b", &Placement::Split, &all);
        st
    }

    fn ess(p: i64, q: i64) -> CurveClass {
        CurveClass::essential(p, q).unwrap()
    }

    #[test]
    fn essential_merge_gives_one_torus() {
        let st = torus_pair();
        let s = Saddle::new("x", AttachCircle::new("a", ess(1, 0)), AttachCircle::new("b", ess(2, 3)));
        let (next, surgery) = st.surger(&s).unwrap();
        assert!(surgery.violations.is_empty());
        assert_eq!(next.components.len(), 1);
        assert_eq!(next.components["x"].genus, 1);
        assert_eq!(next.euler_characteristic(), 0);
        assert!(matches!(surgery.case, SaddleCase::Cable { p: 2, q: 3, .. }));
    }

    #[test]
    fn disjoint_disks_make_a_sphere() {
        let st = torus_pair();
        let s = Saddle::new("x", AttachCircle::new("a", CurveClass::Disk), AttachCircle::new("a", CurveClass::Disk));
        let (next, surgery) = st.surger(&s).unwrap();
        assert_eq!(surgery.case, SaddleCase::Sphere);
        assert_eq!(next.components["x.A"].genus, 0);
        assert_eq!(next.components["x.B"].genus, 2);
        assert_eq!(next.euler_characteristic(), 0);
        let kinds: Vec<_> = surgery.violations.iter().map(|v| v.0).collect();
        assert_eq!(kinds, vec![ViolationKind::SphereProduced, ViolationKind::GenusExceeded]);
    }

    #[test]
    fn nested_disks_make_two_tori() {
        let st = torus_pair();
        let s = Saddle::new(
            "x",
            AttachCircle::new("a", CurveClass::Disk),
            AttachCircle::new("a", CurveClass::NestedDisk),
        );
        let (next, surgery) = st.surger(&s).unwrap();
        assert!(surgery.violations.is_empty());
        assert_eq!(next.components["x.A"].genus, 1);
        assert_eq!(next.components["x.B"].genus, 1);
        assert_eq!(next.components.len(), 3);
    }

    #[test]
    fn dead_component() {
        let st = torus_pair();
        let s = Saddle::new("x", AttachCircle::new("a", ess(1, 0)), AttachCircle::new("zz", ess(2, 3)));
        assert_eq!(st.surger(&s).unwrap_err(), DeadComponent("zz".into()));
    }

    #[test]
    fn hopf_pair_needs_swapped_classes() {
        let st = torus_pair();
        let good = Saddle::new("x", AttachCircle::new("a", ess(2, 3)), AttachCircle::new("b", ess(3, 2)));
        let (next, s) = st.surger(&good).unwrap();
        assert!(s.violations.is_empty());
        assert!(matches!(next.components["x"].core, Core::Outer(OuterCore { p: 2, q: 3, .. })));
        let mirror = Saddle::new("x", AttachCircle::new("a", ess(2, -3)), AttachCircle::new("b", ess(3, -2)));
        assert!(st.surger(&mirror).unwrap().1.violations.is_empty());
        let bad = Saddle::new("x", AttachCircle::new("a", ess(2, 3)), AttachCircle::new("b", ess(2, 5)));
        let (_, s) = st.surger(&bad).unwrap();
        assert_eq!(s.violations[0].0, ViolationKind::InconsistentAttachment);
    }
}
