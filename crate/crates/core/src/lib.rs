//! Exact decision procedures for translational multi-tilings of the plane by
//! centrally symmetric convex polygons (planar zonotopes).
//!
//! Coordinates live in multi-quadratic fields ([`qfield`]), so irrational
//! generators and offsets are handled without floating point. On top of
//! that:
//!
//! * [`plane`]: vectors, lattices in canonical Hermite normal form,
//!   discreteness of finitely generated subgroups, intersections, and the
//!   per-edge Diophantine test of Bolle's second condition;
//! * [`zonotope`]: the polygon given by generators `e_1, …, e_m` of
//!   increasing argument, its edge-translation vectors `τ_j`, vertices and area;
//! * [`criteria`]: Bolle's lattice criterion, the polynomial-time decision
//!   procedure with a verified witness lattice, and the canonical lattice `L_P`;
//! * [`oracle`]: an independent brute-force check that the covering function
//!   of `P + Λ` is constant;
//! * [`json`] and [`svg`]: file formats and rendering used by the CLI.

pub mod criteria;
pub mod error;
pub mod hnf;
pub mod json;
pub mod oracle;
pub mod plane;
pub mod qfield;
pub mod svg;
pub mod zonotope;

pub use criteria::{
    bolle_check, compute_lp, decide_multitile, lattice_multiplicity, BolleReport, Branch, Decision,
    FailureReason, LpResult, PairRecord,
};
pub use error::{Error, Result};
pub use oracle::{
    builtin_pattern, covering_at, enumerate_points, strip_profile, verify_multitiling, Mode,
    Polygon, TranslateSet, VerifyReport, Window,
};
pub use plane::{
    avoid_coset, condition2_superlattice, exact_condition2, lattice_intersect, q_rank,
    zspan_lattice, PlaneLattice, PlaneVector, SpanAnalysis, SpanVerdict,
};
pub use qfield::{FieldDescriptor, FieldElement, Rational};
pub use zonotope::Zonotope;
