//! Cut-system state sums for virtual link diagrams: the multivariable
//! polynomial `X_D`, its single-variable specialization, skein-relation
//! checks and an independent cusp-based oracle.
//!
//! ```
//! use vskein_core::{catalog, x_polynomial};
//!
//! let d = catalog("figure8").unwrap();
//! assert_eq!(x_polynomial(&d).unwrap().pretty(), "A^8 - A^4 + 1 - A^-4 + A^-8");
//! ```

pub mod codec;
pub mod error;
pub mod instances;
pub mod invariant;
pub mod model;
pub mod numbering;
pub mod poly;

pub use codec::{
    catalog, emit_json, emit_pd, parse_braid, parse_gauss, parse_pd, realize_gauss, realize_gauss_with, BraidWord,
    SignedGaussCode,
};
pub use error::{Error, Result};
pub use instances::{random_instances, Instance, InstanceKind};
pub use invariant::*;
pub use model::{skein_triples, Crossing, CrossingId, CrossingKind, Diagram, EdgeId, SemiArc, Sign, SkeinTriple, Violation};
pub use numbering::{
    canonical_cut_system, cut_system_around_virtual, insert_canceling_pair, is_almost_classical_diagram,
    is_checkerboard_colorable, is_valid_cut_system, push_through_crossing, solve_numbering, CutPoint, CutSystem,
    Numbering, Witness,
};
pub use poly::{Monomial, MultiPoly};
