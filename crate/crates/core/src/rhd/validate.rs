use std::fmt;

use super::level::replay;
use super::Rhd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ViolationKind {
    /// An event of lower kind follows a higher one (sources, then saddles,
    /// then sinks).
    OrderingViolation,
    SphereProduced,
    /// A non-degenerate level component has genus other than 1.
    GenusExceeded,
    /// A component is still live after the last event.
    DanglingComponent,
    UnknownComponent,
    /// The attaching classes cannot occur together.
    InconsistentAttachment,
    /// Realizable, but outside what the model tracks.
    UnsupportedConfiguration,
    /// The sublevel set before the sinks is not connected.
    Disconnected,
    RegionMismatch,
    DuplicateId,
}

impl ViolationKind {
    pub const ALL: [ViolationKind; 10] = [
        ViolationKind::OrderingViolation,
        ViolationKind::SphereProduced,
        ViolationKind::GenusExceeded,
        ViolationKind::DanglingComponent,
        ViolationKind::UnknownComponent,
        ViolationKind::InconsistentAttachment,
        ViolationKind::UnsupportedConfiguration,
        ViolationKind::Disconnected,
        ViolationKind::RegionMismatch,
        ViolationKind::DuplicateId,
    ];
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Event or component the violation is about, `-` for the whole
    /// decomposition.
    pub at: String,
    pub detail: String,
}

impl Violation {
    pub fn new(kind: ViolationKind, at: &str, detail: impl Into<String>) -> Self {
        Violation {
            kind,
            at: at.to_string(),
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", self.kind, self.at, self.detail)
    }
}

/// Replays `r` and reports every violation, or `Ok` if the level surface is
/// a union of tori at every regular level and closes up at the end.
pub fn validate(r: &Rhd) -> Result<(), Vec<Violation>> {
    let violations = replay(r, false).violations;
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}
