//! Meander graphs and assembled link diagrams.
//!
//! The skeleton is a 4-valent planar graph: two non-crossing arc systems
//! (one above the axis, one below) whose union with the axis closure is
//! 2-regular, giving `2s - 1` transversal crossings on the axis. Adding
//! `r` parallel copies of every strand and an over/under letter per
//! crossing yields the assembled diagram.

mod codes;
mod diagram;
mod graph;

pub use codes::{diagram_from_json, export_gauss, export_json, export_pd, parse_pd};
pub use diagram::{
    alternating_assignments, verify_alternating, Component, Crossing, CrossingAssignment,
    DiagramStats, LinkDiagram, Role, Sense, Visit,
};
pub use graph::{BaseCycle, MeanderGraph, Passage};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MeanderError {
    #[error("top string has {top} pairs, bottom has {bottom}")]
    LengthMismatch { top: usize, bottom: usize },
    #[error("a meander graph needs at least one pair per string")]
    Empty,
    #[error("assignment shape {words} words x {letters} letters does not fit s = {s}, r = {r}")]
    AssignmentMismatch {
        s: usize,
        r: usize,
        words: usize,
        letters: usize,
    },
    #[error("component {0} does not cross the axis exactly twice per copy")]
    NotPiercedCircle(usize),
    #[error("component index {index} out of range ({count} components)")]
    ComponentOutOfRange { index: usize, count: usize },
    #[error("axis copy {copy} out of range 1..={r}")]
    AxisCopyOutOfRange { copy: usize, r: usize },
    #[error("diagram has {0} components; Gauss codes need exactly one")]
    MultiComponent(usize),
    #[error("invalid letter {0:?}; crossing words use only 'O' and 'U'")]
    BadLetter(char),
    #[error("malformed diagram code: {0}")]
    Malformed(String),
}
