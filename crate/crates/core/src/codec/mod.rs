//! Text formats: virtual PD codes, signed Gauss codes, braid words, the
//! fixture catalog and canonical JSON.

pub mod braid;
pub mod catalog;
pub mod gauss;
pub mod json;
pub mod pd;

pub use braid::{parse_braid, BraidGen, BraidWord};
pub use catalog::{catalog, TRIPLE_CROSSING};
pub use gauss::{parse_gauss, realize_gauss, realize_gauss_with, GaussToken, LaneOrder, SignedGaussCode};
pub use json::{emit_json, poly_json};
pub use pd::{emit_pd, parse_pd};
