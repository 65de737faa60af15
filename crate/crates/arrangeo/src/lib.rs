//! Exact-arithmetic toolkit for finite hyperplane arrangements in general
//! position over the rationals.
//!
//! Everything in this crate computes with arbitrary-precision rationals; no
//! floating point is used anywhere, so every predicate (feasibility,
//! betweenness, isomorphism, ...) is decided exactly.
//!
//! The crate is organised around a handful of cooperating modules:
//!
//! * [`exactmath`] — rationals, vectors, matrices, fraction-free linear
//!   algebra (determinant, rank, solving, kernels) and exact orthogonal
//!   projectors.
//! * [`arrangement`] — hyperplanes `a·x = b`, general-position validation,
//!   flats, vertices and vertex orders along lines.
//! * [`regions`] — exact strict-inequality feasibility (Fourier–Motzkin),
//!   region enumeration, boundedness, and closed-form region counts.
//! * [`normsys`] — normal systems (one representative per hyperplane
//!   direction), normal simple bases, and convex positive bijections.
//! * [`arriso`] — arrangement isomorphism via betweenness data, and
//!   translation equivalence.
//! * [`concurr`] — the concurrency arrangement of an arrangement's offset
//!   vector: cone signatures, facets, and facet crossings.
//! * [`infinity`] — hyperplanes at infinity, induced lower-dimensional
//!   arrangements, and infinity orders.
//! * [`compat3d`] — the compatible-pairs graph of a 3-dimensional normal
//!   system, a translation-equivalence invariant.
//! * [`io`] — JSON file formats for arrangements and normal systems.
//!
//! Subscripts of hyperplanes and lines are 1-based in every public structure,
//! report and file format; internal code may index from 0 but the convention
//! never leaks.

pub mod arrangement;
pub mod arriso;
pub mod compat3d;
pub mod concurr;
mod error;
pub mod exactmath;
pub mod infinity;
pub mod io;
pub mod normsys;
pub mod regions;

pub use error::Error;

/// Convenient result alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
