//! The shipped fixtures, compiled in so `demo` needs no files.

pub const INSTANCE_B: &str = include_str!("../fixtures/instance-b.json");
pub const INSTANCE_B_TRIVIAL: &str = include_str!("../fixtures/instance-b-trivial.json");
pub const INSTANCE_B_RESCALED: &str = include_str!("../fixtures/instance-b-rescaled.json");
pub const INSTANCE_B3: &str = include_str!("../fixtures/instance-b3.json");
pub const Q2_RANK1: &str = include_str!("../fixtures/q2-rank1.json");
pub const COMPOSITE_B_CUBEROOT2: &str = include_str!("../fixtures/composite-b-cuberoot2.json");
pub const COMPOSITE_B_ZETA7PLUS: &str = include_str!("../fixtures/composite-b-zeta7plus.json");
pub const COMPOSITE_B3_SQRT5: &str = include_str!("../fixtures/composite-b3-sqrt5.json");
pub const COMPOSITE_B_TRIVIAL: &str = include_str!("../fixtures/composite-b-trivial.json");
pub const WITNESS_B: &str = include_str!("../fixtures/witness-b.json");
pub const WITNESS_B_CUBEROOT2: &str = include_str!("../fixtures/witness-b-cuberoot2.json");

use crate::format::{CompositeSpec, Fixture};

/// Parses a compiled-in fixture; they are known to be well formed.
pub fn fixture(text: &str) -> Fixture {
    Fixture::parse(text, "builtin").expect("shipped fixture parses")
}

pub fn composite(text: &str) -> CompositeSpec {
    CompositeSpec::parse(text, "builtin").expect("shipped composite parses")
}
