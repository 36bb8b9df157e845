//! Exact classification and enumeration of preperiodic points of the
//! quadratic family x^2 + c under local rationality constraints.
//!
//! A point is preperiodic when its forward orbit under f_c(x) = x^2 + c is
//! finite. This crate decides, for rational c, whether the set of
//! preperiodic points that are *totally real* (all conjugates real) or
//! *totally p-adic* (all conjugates in Q_p) is empty, finite, or infinite;
//! computes the transfinite diameters that drive those trichotomies; and,
//! in the finite range, turns a capacity-based degree bound into the full
//! explicit list of points.
//!
//! Module map:
//!
//! * [`exact`] — big-rational polynomial arithmetic, Sturm counting,
//!   squarefree factoring, multiquadratic algebras with exact real
//!   embeddings, fixed-point decimal rendering.
//! * [`realdyn`] — the totally real trichotomy over the reals and the
//!   archimedean escape test against the fixed-point radius.
//! * [`padicdyn`] — p-adic valuations, squares in Q_p, the filled Julia
//!   set dichotomy over C_p, and the totally p-adic trichotomy.
//! * [`capfek`] — capacities (segment, unit-ball, adelic), Fekete point
//!   optimization, and the transfinite-diameter degree bound.
//! * [`preper`] — the conjugated integral model, candidate enumeration,
//!   orbit classification, and independent certification of membership.
//! * [`cli`] — the command-line front end (`classify`, `preper`,
//!   `capacity`, `fekete`, `degree-bound`, `verify`) with JSON reports.
//!
//! Everything on the decision path is exact big-integer/rational
//! arithmetic; floating point appears only in displayed approximations and
//! in the Fekete optimizer, whose output is advisory rather than part of
//! any correctness claim.

pub mod capfek;
pub mod cli;
pub mod exact;
pub mod padicdyn;
pub mod preper;
pub mod realdyn;
