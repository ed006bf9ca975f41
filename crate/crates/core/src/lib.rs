//! Graph knots as expression trees, exact invariants, and combinatorial round
//! handle decompositions of the 3-sphere.

pub mod batch;
pub mod cli;
pub mod expr;
pub mod invariants;
pub mod oracle;
pub mod rhd;
