//! The meander skeleton: two arc matchings over axis points plus the
//! closure edge, decomposed into its closed curves.

use super::MeanderError;
use crate::pstring::PString;

/// Edge kinds of the 2-regular curve union. `Axis` is the closure edge
/// joining the outermost points 0 and `2s`; traversing it stands for the
/// full west-to-east run along the axis line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum EdgeKind {
    Top,
    Bottom,
    Axis,
}

/// One traversal step of a base curve through the crossing band.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Passage {
    /// West-to-east run along the axis line, crossing every vertex.
    AxisRun,
    /// Transversal passage at one vertex, from the upper arc down
    /// (`southbound`) or from the lower arc up.
    Meander { vertex: usize, southbound: bool },
}

/// A closed curve of the skeleton, with its traversal order fixed:
/// starting at the lowest point, the axis curve first crosses the axis
/// eastward, other curves leave along their upper arc.
#[derive(Clone, Debug)]
pub struct BaseCycle {
    points: Vec<usize>,
    passages: Vec<Passage>,
    is_axis: bool,
}

impl BaseCycle {
    /// Axis points on the curve, in traversal order.
    pub fn points(&self) -> &[usize] {
        &self.points
    }

    pub fn passages(&self) -> &[Passage] {
        &self.passages
    }

    /// Whether this curve contains the axis line.
    pub fn is_axis(&self) -> bool {
        self.is_axis
    }

    /// Position of the pierced circle this curve forms, if it is one:
    /// a non-axis curve through exactly two adjacent vertices.
    pub fn circle_position(&self) -> Option<usize> {
        if self.is_axis || self.points.len() != 2 {
            return None;
        }
        let lo = *self.points.iter().min().unwrap();
        let hi = *self.points.iter().max().unwrap();
        (hi == lo + 1).then_some(lo)
    }
}

/// Skeleton of a meander diagram: `2s + 1` axis points, upper arcs pairing
/// points `1..=2s`, lower arcs pairing `0..=2s-1`, and the closure edge
/// `(0, 2s)`. The interior points `1..=2s-1` are the vertices.
#[derive(Clone, Debug)]
pub struct MeanderGraph {
    top: PString,
    bottom: PString,
    /// Upper-arc partner per point; `usize::MAX` where no upper arc ends.
    top_partner: Vec<usize>,
    /// Lower-arc partner per point.
    bottom_partner: Vec<usize>,
    /// Transversal direction per vertex, indexed `1..=2s-1`.
    southbound: Vec<bool>,
    cycles: Vec<BaseCycle>,
}

impl MeanderGraph {
    /// Builds the skeleton from two strings of equal, positive length.
    pub fn new(top: PString, bottom: PString) -> Result<Self, MeanderError> {
        if top.pairs() != bottom.pairs() {
            return Err(MeanderError::LengthMismatch {
                top: top.pairs(),
                bottom: bottom.pairs(),
            });
        }
        if top.pairs() == 0 {
            return Err(MeanderError::Empty);
        }
        let s = top.pairs();
        let n = 2 * s;

        let mut top_partner = vec![usize::MAX; n + 1];
        for (open, close) in top.matched_pairs() {
            top_partner[open] = close;
            top_partner[close] = open;
        }
        let mut bottom_partner = vec![usize::MAX; n + 1];
        for (open, close) in bottom.matched_pairs() {
            bottom_partner[open - 1] = close - 1;
            bottom_partner[close - 1] = open - 1;
        }

        let mut graph = MeanderGraph {
            top,
            bottom,
            top_partner,
            bottom_partner,
            southbound: vec![false; n],
            cycles: Vec::new(),
        };
        graph.trace_cycles();
        Ok(graph)
    }

    pub fn s(&self) -> usize {
        self.top.pairs()
    }

    /// Number of crossings of the uncabled skeleton, `2s - 1`.
    pub fn vertex_count(&self) -> usize {
        2 * self.s() - 1
    }

    pub fn top(&self) -> &PString {
        &self.top
    }

    pub fn bottom(&self) -> &PString {
        &self.bottom
    }

    /// Closed curves of the skeleton; the axis curve is always first and
    /// the rest are ordered by their lowest point.
    pub fn cycles(&self) -> &[BaseCycle] {
        &self.cycles
    }

    /// Whether the transversal strand at `vertex` runs downward.
    pub fn is_southbound(&self, vertex: usize) -> bool {
        self.southbound[vertex]
    }

    /// Pierced-circle positions found by direct arc inspection: vertices
    /// `i`, `i + 1` joined by both an upper and a lower arc.
    pub fn pierced_circles(&self) -> Vec<usize> {
        let n = 2 * self.s();
        (1..n - 1)
            .filter(|&i| self.top_partner[i] == i + 1 && self.bottom_partner[i] == i + 1)
            .collect()
    }

    /// The same positions via the nesting alignment of the two strings:
    /// a top nesting at `i` over a bottom nesting at `i + 1`. Kept as an
    /// independent detector for cross-checking.
    pub fn pierced_circles_by_nesting(&self) -> Vec<usize> {
        let top = self.top.nestings();
        let bottom = self.bottom.nestings();
        (1..2 * self.s() - 1)
            .filter(|&i| top.contains(i) && bottom.contains(i + 1))
            .collect()
    }

    /// Number of degenerate extreme nestings: a bottom nesting at
    /// position 1 or a top nesting at position `2s - 1`. Each produces a
    /// reducible kink through an outermost point instead of a bigon.
    pub fn nugatory_count(&self) -> usize {
        let n = 2 * self.s();
        usize::from(self.bottom_partner[0] == 1) + usize::from(self.top_partner[n] == n - 1)
    }

    fn other_incident(&self, point: usize, arrived_by: EdgeKind) -> EdgeKind {
        let n = 2 * self.s();
        let kinds: [EdgeKind; 2] = if point == 0 {
            [EdgeKind::Bottom, EdgeKind::Axis]
        } else if point == n {
            [EdgeKind::Top, EdgeKind::Axis]
        } else {
            [EdgeKind::Top, EdgeKind::Bottom]
        };
        if kinds[0] == arrived_by {
            kinds[1]
        } else {
            kinds[0]
        }
    }

    fn neighbor(&self, point: usize, edge: EdgeKind) -> usize {
        match edge {
            EdgeKind::Top => self.top_partner[point],
            EdgeKind::Bottom => self.bottom_partner[point],
            EdgeKind::Axis => 2 * self.s() - point,
        }
    }

    fn trace_cycles(&mut self) {
        let n = 2 * self.s();
        let mut seen = vec![false; n + 1];
        for start in 0..=n {
            if seen[start] {
                continue;
            }
            let start_edge = if start == 0 {
                EdgeKind::Axis
            } else {
                EdgeKind::Top
            };
            let mut points = vec![start];
            let mut departs = vec![start_edge];
            seen[start] = true;
            loop {
                let here = *points.last().unwrap();
                let via = *departs.last().unwrap();
                let next = self.neighbor(here, via);
                if next == start {
                    break;
                }
                seen[next] = true;
                points.push(next);
                departs.push(self.other_incident(next, via));
            }

            let len = points.len();
            let mut passages = Vec::new();
            let mut is_axis = false;
            for i in 0..len {
                let p = points[i];
                let arrive = departs[(i + len - 1) % len];
                let depart = departs[i];
                if depart == EdgeKind::Axis {
                    passages.push(Passage::AxisRun);
                    is_axis = true;
                } else if p != 0 && p != n {
                    let southbound = arrive == EdgeKind::Top;
                    debug_assert_ne!(arrive, depart);
                    self.southbound[p] = southbound;
                    passages.push(Passage::Meander {
                        vertex: p,
                        southbound,
                    });
                }
            }
            self.cycles.push(BaseCycle {
                points,
                passages,
                is_axis,
            });
        }
    }
}
