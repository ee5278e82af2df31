//! Core library for the random meander link model.
//!
//! A diagram in this model is seeded by two balanced parenthesis strings
//! of `s` pairs (the skeleton) plus an over/under letter for each of the
//! `(2s - 1) r^2` crossings obtained by taking `r` parallel copies of
//! every strand. The modules split along that pipeline:
//!
//! - [`pstring`]: balanced strings, enumeration, exact-uniform sampling.
//! - [`combinatorics`]: exact counts and expectation formulas.
//! - [`meander`]: graphs, assembled diagrams, faces, diagram codes.
//! - [`experiments`]: reproducible Monte Carlo and enumeration runs.

pub mod combinatorics;
pub mod experiments;
pub mod meander;
pub mod pstring;

pub use combinatorics::{CountTable, RatioPoint, VolumeBounds};
pub use meander::{
    CrossingAssignment, DiagramStats, LinkDiagram, MeanderError, MeanderGraph, Sense,
};
pub use pstring::{BallotTable, NestingSet, PString, PStringError};
