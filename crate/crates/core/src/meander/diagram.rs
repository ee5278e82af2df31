//! Assembled link diagrams: `r` parallel copies of every strand of the
//! skeleton plus one over/under letter per crossing.
//!
//! Copy `k` of a curve runs at offset `k - 1` to the left of its travel
//! direction, so lanes never cross along a strand and every base vertex
//! blows up into an `r x r` grid of crossings. All slot bookkeeping below
//! is in the fixed frame of that grid: the axis bundle runs west to east,
//! the transversal bundle north-south, and the counterclockwise slot
//! order at a crossing is east, north, west, south.

use rand::Rng;
use std::fmt;

use super::graph::{MeanderGraph, Passage};
use super::MeanderError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sense {
    Over,
    Under,
}

impl Sense {
    pub fn flipped(self) -> Sense {
        match self {
            Sense::Over => Sense::Under,
            Sense::Under => Sense::Over,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Sense::Over => 'O',
            Sense::Under => 'U',
        }
    }
}

/// The crossing information: `r` words of `r * (2s - 1)` letters. Word
/// `m` governs meander copy `m`; within a word the letters are ordered by
/// vertex and then by axis copy, which for `r = 1` is the left-to-right
/// order along the axis. A letter gives the sense of the meander strand,
/// `O` meaning it passes over the axis strand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingAssignment {
    words: Vec<Vec<Sense>>,
}

impl CrossingAssignment {
    /// Samples every letter independently and uniformly.
    pub fn sample<R: Rng + ?Sized>(s: usize, r: usize, rng: &mut R) -> Self {
        assert!(s >= 1 && r >= 1);
        let letters = r * (2 * s - 1);
        let words = (0..r)
            .map(|_| {
                (0..letters)
                    .map(|_| {
                        if rng.gen_bool(0.5) {
                            Sense::Over
                        } else {
                            Sense::Under
                        }
                    })
                    .collect()
            })
            .collect();
        CrossingAssignment { words }
    }

    pub fn from_senses(words: Vec<Vec<Sense>>) -> Self {
        assert!(!words.is_empty());
        let len = words[0].len();
        assert!(words.iter().all(|w| w.len() == len));
        CrossingAssignment { words }
    }

    /// Parses words of 'O'/'U' letters.
    pub fn from_words<S: AsRef<str>>(words: &[S]) -> Result<Self, MeanderError> {
        let mut parsed = Vec::with_capacity(words.len());
        for word in words {
            let senses = word
                .as_ref()
                .chars()
                .map(|ch| match ch {
                    'O' => Ok(Sense::Over),
                    'U' => Ok(Sense::Under),
                    other => Err(MeanderError::BadLetter(other)),
                })
                .collect::<Result<Vec<_>, _>>()?;
            parsed.push(senses);
        }
        if parsed.is_empty() {
            return Err(MeanderError::Malformed("no crossing words".into()));
        }
        let len = parsed[0].len();
        if parsed.iter().any(|w| w.len() != len) {
            return Err(MeanderError::Malformed("ragged crossing words".into()));
        }
        Ok(CrossingAssignment { words: parsed })
    }

    /// Number of parallel copies `r`.
    pub fn copies(&self) -> usize {
        self.words.len()
    }

    pub fn letters_per_word(&self) -> usize {
        self.words[0].len()
    }

    pub fn total_letters(&self) -> usize {
        self.copies() * self.letters_per_word()
    }

    /// Sense at base vertex `b` between meander copy `m` and axis copy
    /// `a` (all 1-based).
    pub fn sense(&self, vertex: usize, meander_copy: usize, axis_copy: usize) -> Sense {
        let r = self.copies();
        self.words[meander_copy - 1][(vertex - 1) * r + (axis_copy - 1)]
    }

    pub fn set_sense(
        &mut self,
        vertex: usize,
        meander_copy: usize,
        axis_copy: usize,
        sense: Sense,
    ) {
        let r = self.copies();
        self.words[meander_copy - 1][(vertex - 1) * r + (axis_copy - 1)] = sense;
    }

    /// Letterwise complement.
    pub fn complement(&self) -> Self {
        let words = self
            .words
            .iter()
            .map(|w| w.iter().map(|s| s.flipped()).collect())
            .collect();
        CrossingAssignment { words }
    }

    pub fn word_strings(&self) -> Vec<String> {
        self.words
            .iter()
            .map(|w| w.iter().map(|s| s.letter()).collect())
            .collect()
    }
}

impl fmt::Display for CrossingAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, word) in self.word_strings().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(word)?;
        }
        Ok(())
    }
}

/// How a strand passes through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// Along the axis bundle, west to east.
    Axis,
    /// Transversal, downward through the grid.
    MeanderSouth,
    /// Transversal, upward through the grid.
    MeanderNorth,
}

// Slot numbering: counterclockwise east, north, west, south.
pub(super) const EAST: usize = 0;
pub(super) const NORTH: usize = 1;
pub(super) const WEST: usize = 2;
pub(super) const SOUTH: usize = 3;

impl Role {
    pub(super) fn in_slot(self) -> usize {
        match self {
            Role::Axis => WEST,
            Role::MeanderSouth => NORTH,
            Role::MeanderNorth => SOUTH,
        }
    }

    pub(super) fn out_slot(self) -> usize {
        match self {
            Role::Axis => EAST,
            Role::MeanderSouth => SOUTH,
            Role::MeanderNorth => NORTH,
        }
    }

    pub fn is_axis(self) -> bool {
        self == Role::Axis
    }
}

/// One crossing traversal on a component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Visit {
    pub crossing: usize,
    pub role: Role,
}

/// A closed strand of the assembled diagram: copy `copy` of base curve
/// `cycle`, with its full crossing itinerary.
#[derive(Clone, Debug)]
pub struct Component {
    cycle: usize,
    copy: usize,
    is_axis: bool,
    visits: Vec<Visit>,
}

impl Component {
    pub fn cycle(&self) -> usize {
        self.cycle
    }

    pub fn copy(&self) -> usize {
        self.copy
    }

    pub fn is_axis(&self) -> bool {
        self.is_axis
    }

    pub fn visits(&self) -> &[Visit] {
        &self.visits
    }
}

/// One crossing record: grid cell `(meander_copy, axis_copy)` at a base
/// vertex, with the sense of the meander strand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub base_vertex: usize,
    pub meander_copy: usize,
    pub axis_copy: usize,
    pub sense: Sense,
}

/// Connectivity and embedding of the cabled diagram, independent of the
/// crossing senses.
pub(super) struct Structure {
    pub r: usize,
    pub crossing_count: usize,
    pub components: Vec<Component>,
    pub axis_components: Vec<usize>,
    /// Darts of each face, one dart per corner; dart `4 * crossing + slot`.
    pub faces: Vec<Vec<u32>>,
    /// Index of the unbounded face in `faces`.
    pub outer_face: usize,
}

fn crossing_id(r: usize, vertex: usize, meander_copy: usize, axis_copy: usize) -> usize {
    ((vertex - 1) * r + (meander_copy - 1)) * r + (axis_copy - 1)
}

pub(super) fn build_structure(graph: &MeanderGraph, r: usize) -> Structure {
    assert!(r >= 1);
    let vertices = graph.vertex_count();
    let crossing_count = vertices * r * r;

    let mut components = Vec::with_capacity(graph.cycles().len() * r);
    for (ci, cycle) in graph.cycles().iter().enumerate() {
        for copy in 1..=r {
            let mut visits = Vec::new();
            for passage in cycle.passages() {
                match *passage {
                    Passage::AxisRun => {
                        for b in 1..=vertices {
                            // An eastbound axis lane meets southbound
                            // lanes innermost first, northbound lanes
                            // outermost first.
                            if graph.is_southbound(b) {
                                for m in 1..=r {
                                    visits.push(Visit {
                                        crossing: crossing_id(r, b, m, copy),
                                        role: Role::Axis,
                                    });
                                }
                            } else {
                                for m in (1..=r).rev() {
                                    visits.push(Visit {
                                        crossing: crossing_id(r, b, m, copy),
                                        role: Role::Axis,
                                    });
                                }
                            }
                        }
                    }
                    Passage::Meander { vertex, southbound } => {
                        if southbound {
                            for a in (1..=r).rev() {
                                visits.push(Visit {
                                    crossing: crossing_id(r, vertex, copy, a),
                                    role: Role::MeanderSouth,
                                });
                            }
                        } else {
                            for a in 1..=r {
                                visits.push(Visit {
                                    crossing: crossing_id(r, vertex, copy, a),
                                    role: Role::MeanderNorth,
                                });
                            }
                        }
                    }
                }
            }
            components.push(Component {
                cycle: ci,
                copy,
                is_axis: cycle.is_axis(),
                visits,
            });
        }
    }

    let axis_components = components
        .iter()
        .enumerate()
        .filter(|(_, c)| c.is_axis)
        .map(|(i, _)| i)
        .collect();

    // Twin darts from consecutive visits along every component.
    let mut partner = vec![u32::MAX; 4 * crossing_count];
    for component in &components {
        let visits = &component.visits;
        for (i, visit) in visits.iter().enumerate() {
            let next = visits[(i + 1) % visits.len()];
            let from = (visit.crossing * 4 + visit.role.out_slot()) as u32;
            let to = (next.crossing * 4 + next.role.in_slot()) as u32;
            debug_assert_eq!(partner[from as usize], u32::MAX);
            debug_assert_eq!(partner[to as usize], u32::MAX);
            partner[from as usize] = to;
            partner[to as usize] = from;
        }
    }
    debug_assert!(partner.iter().all(|&p| p != u32::MAX));

    // Faces are the orbits of dart -> counterclockwise successor of its
    // twin; the orbit length is the number of corners of the face. The
    // orbit of a dart covers the quadrant clockwise-before its slot.
    let mut faces = Vec::new();
    let mut seen = vec![false; partner.len()];
    for start in 0..partner.len() as u32 {
        if seen[start as usize] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut dart = start;
        loop {
            seen[dart as usize] = true;
            orbit.push(dart);
            let twin = partner[dart as usize];
            dart = (twin & !3) | ((twin + 1) & 3);
            if dart == start {
                break;
            }
        }
        faces.push(orbit);
    }

    // The unbounded face owns the northwest quadrant of the westmost
    // crossing on the outermost axis lane: nothing of the diagram lies
    // north or west of it.
    let first_lane = if graph.is_southbound(1) { 1 } else { r };
    let outer_dart = (crossing_id(r, 1, first_lane, r) * 4 + WEST) as u32;
    let outer_face = faces
        .iter()
        .position(|f| f.contains(&outer_dart))
        .expect("every dart lies on a face");

    Structure {
        r,
        crossing_count,
        components,
        axis_components,
        faces,
        outer_face,
    }
}

/// Per-diagram statistics of an assembled diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramStats {
    pub pierced_circle_positions: Vec<usize>,
    /// Faces bounded by exactly two crossings.
    pub bigons: usize,
    /// Total nestings of the two seed strings; every nesting yields a
    /// bigon except the extreme ones, which kink instead.
    pub nesting_bigons: usize,
    /// Twist count by the nesting accounting, crossings minus nesting
    /// bigons; negative only for all-nesting seeds.
    pub twists: i64,
    pub nugatory: usize,
    pub components: usize,
}

/// An assembled `(r, 2s - 1)` meander link diagram.
pub struct LinkDiagram {
    skeleton: MeanderGraph,
    assignment: CrossingAssignment,
    structure: Structure,
}

impl LinkDiagram {
    /// Assembles the diagram; the number of copies is taken from the
    /// assignment, whose shape must fit the skeleton.
    pub fn assemble(
        skeleton: MeanderGraph,
        assignment: CrossingAssignment,
    ) -> Result<Self, MeanderError> {
        let r = assignment.copies();
        let expected = r * skeleton.vertex_count();
        if assignment.letters_per_word() != expected {
            return Err(MeanderError::AssignmentMismatch {
                s: skeleton.s(),
                r,
                words: assignment.copies(),
                letters: assignment.letters_per_word(),
            });
        }
        let structure = build_structure(&skeleton, r);
        Ok(LinkDiagram {
            skeleton,
            assignment,
            structure,
        })
    }

    pub fn s(&self) -> usize {
        self.skeleton.s()
    }

    pub fn r(&self) -> usize {
        self.structure.r
    }

    pub fn skeleton(&self) -> &MeanderGraph {
        &self.skeleton
    }

    pub fn assignment(&self) -> &CrossingAssignment {
        &self.assignment
    }

    pub fn crossing_count(&self) -> usize {
        self.structure.crossing_count
    }

    /// Decodes a crossing id into its record.
    pub fn crossing(&self, id: usize) -> Crossing {
        let r = self.r();
        let axis_copy = id % r + 1;
        let meander_copy = (id / r) % r + 1;
        let base_vertex = id / (r * r) + 1;
        Crossing {
            base_vertex,
            meander_copy,
            axis_copy,
            sense: self.assignment.sense(base_vertex, meander_copy, axis_copy),
        }
    }

    pub fn crossings(&self) -> Vec<Crossing> {
        (0..self.crossing_count())
            .map(|id| self.crossing(id))
            .collect()
    }

    pub fn components(&self) -> &[Component] {
        &self.structure.components
    }

    pub fn axis_components(&self) -> &[usize] {
        &self.structure.axis_components
    }

    pub fn face_count(&self) -> usize {
        self.structure.faces.len()
    }

    /// Corner counts of all faces.
    pub fn face_sizes(&self) -> Vec<usize> {
        self.structure.faces.iter().map(|f| f.len()).collect()
    }

    /// Bounded faces with exactly two crossings on their boundary.
    pub fn bigon_count(&self) -> usize {
        self.bounded_faces_of_size(2)
    }

    /// Bounded faces with exactly one crossing, the reducible kinks.
    pub fn monogon_count(&self) -> usize {
        self.bounded_faces_of_size(1)
    }

    fn bounded_faces_of_size(&self, size: usize) -> usize {
        self.structure
            .faces
            .iter()
            .enumerate()
            .filter(|(i, f)| *i != self.structure.outer_face && f.len() == size)
            .count()
    }

    /// Sense experienced by the strand making `visit`: the letter itself
    /// for the transversal strand, flipped for the axis strand.
    pub fn experienced_sense(&self, visit: Visit) -> Sense {
        let c = self.crossing(visit.crossing);
        if visit.role.is_axis() {
            c.sense.flipped()
        } else {
            c.sense
        }
    }

    pub fn stats(&self) -> DiagramStats {
        let nesting_bigons =
            self.skeleton.top().nestings().len() + self.skeleton.bottom().nestings().len();
        DiagramStats {
            pierced_circle_positions: self.skeleton.pierced_circles(),
            bigons: self.bigon_count(),
            nesting_bigons,
            twists: self.crossing_count() as i64 - nesting_bigons as i64,
            nugatory: self.skeleton.nugatory_count(),
            components: self.structure.components.len(),
        }
    }

    /// Twist regions counted geometrically, merging crossings that share
    /// a bigon face. A cross-check for uncabled diagrams; clasps (two
    /// crossings sharing two bigons) merge into one region here, so this
    /// can exceed `crossings - bigons`.
    pub fn twist_regions_by_chain(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.crossing_count()).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let root = find(parent, parent[x]);
                parent[x] = root;
            }
            parent[x]
        }
        for (i, face) in self.structure.faces.iter().enumerate() {
            if i != self.structure.outer_face && face.len() == 2 {
                let a = find(&mut parent, face[0] as usize / 4);
                let b = find(&mut parent, face[1] as usize / 4);
                parent[a] = b;
            }
        }
        (0..self.crossing_count())
            .filter(|&c| find(&mut parent, c) == c)
            .count()
    }

    /// Component id of copy `copy` of the pierced circle at `position`.
    pub fn pierced_circle_component(&self, position: usize, copy: usize) -> Option<usize> {
        let cycle = self
            .skeleton
            .cycles()
            .iter()
            .position(|c| c.circle_position() == Some(position))?;
        self.structure
            .components
            .iter()
            .position(|c| c.cycle == cycle && c.copy == copy)
    }

    /// Whether the circle component is unlinked from the given axis copy:
    /// true when it passes on the same side at both of their crossings.
    /// The component must cross that axis copy exactly twice.
    pub fn circle_axis_unlinked(
        &self,
        component: usize,
        axis_copy: usize,
    ) -> Result<bool, MeanderError> {
        let comp =
            self.structure
                .components
                .get(component)
                .ok_or(MeanderError::ComponentOutOfRange {
                    index: component,
                    count: self.structure.components.len(),
                })?;
        if axis_copy < 1 || axis_copy > self.r() {
            return Err(MeanderError::AxisCopyOutOfRange {
                copy: axis_copy,
                r: self.r(),
            });
        }
        if comp.is_axis {
            return Err(MeanderError::NotPiercedCircle(component));
        }
        let senses: Vec<Sense> = comp
            .visits
            .iter()
            .filter(|v| self.crossing(v.crossing).axis_copy == axis_copy)
            .map(|v| self.crossing(v.crossing).sense)
            .collect();
        if senses.len() != 2 {
            return Err(MeanderError::NotPiercedCircle(component));
        }
        Ok(senses[0] == senses[1])
    }

    /// Unlinked from every axis copy at once.
    pub fn circle_fully_unlinked(&self, component: usize) -> Result<bool, MeanderError> {
        for a in 1..=self.r() {
            if !self.circle_axis_unlinked(component, a)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// The two crossing assignments that make every strand alternate between
/// over and under; they are letterwise complements. The first one puts
/// the meander strand over at the first crossing of the first vertex.
pub fn alternating_assignments(
    graph: &MeanderGraph,
    r: usize,
) -> (CrossingAssignment, CrossingAssignment) {
    let structure = build_structure(graph, r);
    let n = structure.crossing_count;

    // Strand alternation pins the relative sense of consecutive
    // crossings: equal letters when exactly one of the two passages is
    // the axis strand, flipped otherwise.
    let mut adjacency: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n];
    for component in &structure.components {
        let visits = &component.visits;
        for (i, visit) in visits.iter().enumerate() {
            let next = visits[(i + 1) % visits.len()];
            let flip = !(visit.role.is_axis() ^ next.role.is_axis());
            adjacency[visit.crossing].push((next.crossing, flip));
            adjacency[next.crossing].push((visit.crossing, flip));
        }
    }

    let mut under = vec![false; n];
    let mut assigned = vec![false; n];
    let mut queue = std::collections::VecDeque::from([0usize]);
    assigned[0] = true;
    while let Some(c) = queue.pop_front() {
        for &(next, flip) in &adjacency[c] {
            let value = under[c] ^ flip;
            if assigned[next] {
                assert_eq!(
                    under[next], value,
                    "projection admits no alternating senses"
                );
            } else {
                under[next] = value;
                assigned[next] = true;
                queue.push_back(next);
            }
        }
    }
    assert!(assigned.iter().all(|&a| a), "diagram is connected");

    let vertices = graph.vertex_count();
    let mut words = vec![vec![Sense::Over; r * vertices]; r];
    for b in 1..=vertices {
        for m in 1..=r {
            for a in 1..=r {
                let id = crossing_id(r, b, m, a);
                if under[id] {
                    words[m - 1][(b - 1) * r + (a - 1)] = Sense::Under;
                }
            }
        }
    }
    let first = CrossingAssignment::from_senses(words);
    let second = first.complement();
    (first, second)
}

/// Checks alternation along every strand of an assembled diagram.
pub fn verify_alternating(diagram: &LinkDiagram) -> bool {
    diagram.components().iter().all(|component| {
        let visits = component.visits();
        visits.iter().enumerate().all(|(i, &visit)| {
            let next = visits[(i + 1) % visits.len()];
            diagram.experienced_sense(visit) != diagram.experienced_sense(next)
        })
    })
}
