//! Benchmark-only crate; see `benches/engines.rs`. Shared helpers live here
//! so the bench target stays small.

use gengame_core::{build_group, FiniteGroup, GroupSpec};

/// Builds a named benchmark subject, panicking on invalid specs — bench
/// setup errors should abort loudly, not skew measurements.
pub fn subject(spec: GroupSpec) -> FiniteGroup {
    build_group(&spec).expect("benchmark subject must build")
}
