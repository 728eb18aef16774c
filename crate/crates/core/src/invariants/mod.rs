//! Link invariants built from the representations, and the Markov-move harness.

mod bracket;
mod classes;
mod gbraid;
mod report;
mod tensor_trace;

pub use bracket::{
    bracket_invariant, bracket_value, simplicity_check, Bracket, SimplicityVerdict, SimplicityWitness, DEFAULT_MAX_LEN,
};
pub use classes::{
    calibrate_trace, charpoly_class_invariant, charpoly_family_invariant, group_trace_invariant, CharpolyClass,
    CharpolyFamily, GroupTrace, TraceCalibration,
};
pub use gbraid::{component_products, gbraid_from_braid, GBraid, LabelRule, LabelScheme, SequenceSource};
pub use report::{
    markov_invariance_suite, InvariantReport, InvariantValue, LinkInvariant, SuiteFailure, SuiteReport, MOVES_PER_TRIAL,
};
pub use tensor_trace::{tensor_trace_invariant, TensorTrace};
