//! Diagram codes: planar-diagram text, signed Gauss codes and the JSON
//! interchange record.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::diagram::{LinkDiagram, Sense, NORTH, SOUTH, WEST};
use super::MeanderError;

/// Half-edge labels per crossing and slot. Labels run `1..=2c`, assigned
/// by walking the components in index order along their orientation.
fn edge_labels(diagram: &LinkDiagram) -> Vec<[usize; 4]> {
    let mut labels = vec![[0usize; 4]; diagram.crossing_count()];
    let mut next = 1usize;
    for component in diagram.components() {
        let visits = component.visits();
        for (i, visit) in visits.iter().enumerate() {
            let successor = visits[(i + 1) % visits.len()];
            labels[visit.crossing][visit.role.out_slot()] = next;
            labels[successor.crossing][successor.role.in_slot()] = next;
            next += 1;
        }
    }
    labels
}

/// Crossings as 4-tuples: the incoming under-strand half-edge first, the
/// remaining slots counterclockwise.
pub fn pd_tuples(diagram: &LinkDiagram) -> Vec<[usize; 4]> {
    let labels = edge_labels(diagram);
    (0..diagram.crossing_count())
        .map(|id| {
            let crossing = diagram.crossing(id);
            let southbound = diagram.skeleton().is_southbound(crossing.base_vertex);
            let under_in = match (crossing.sense, southbound) {
                (Sense::Under, true) => NORTH,
                (Sense::Under, false) => SOUTH,
                (Sense::Over, _) => WEST,
            };
            let mut tuple = [0usize; 4];
            for (i, slot) in tuple.iter_mut().enumerate() {
                *slot = labels[id][(under_in + i) % 4];
            }
            tuple
        })
        .collect()
}

/// Planar-diagram text, `PD[X[a,b,c,d],...]`.
pub fn export_pd(diagram: &LinkDiagram) -> String {
    let tuples: Vec<String> = pd_tuples(diagram)
        .iter()
        .map(|t| format!("X[{},{},{},{}]", t[0], t[1], t[2], t[3]))
        .collect();
    format!("PD[{}]", tuples.join(","))
}

/// Parses `PD[X[a,b,c,d],...]` back into crossing tuples.
pub fn parse_pd(text: &str) -> Result<Vec<[usize; 4]>, MeanderError> {
    let inner = text
        .strip_prefix("PD[")
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| MeanderError::Malformed("expected PD[...]".into()))?;
    let mut tuples = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        rest = rest.strip_prefix(',').unwrap_or(rest);
        let body = rest
            .strip_prefix("X[")
            .ok_or_else(|| MeanderError::Malformed("expected X[...]".into()))?;
        let end = body
            .find(']')
            .ok_or_else(|| MeanderError::Malformed("unterminated X[...]".into()))?;
        let fields: Vec<&str> = body[..end].split(',').collect();
        if fields.len() != 4 {
            return Err(MeanderError::Malformed("crossing needs 4 labels".into()));
        }
        let mut tuple = [0usize; 4];
        for (slot, field) in tuple.iter_mut().zip(&fields) {
            *slot = field
                .parse()
                .map_err(|_| MeanderError::Malformed(format!("bad label {field:?}")))?;
        }
        tuples.push(tuple);
        rest = &body[end + 1..];
    }
    Ok(tuples)
}

/// Signed Gauss code of a one-component diagram: entries `O<i><sign>` or
/// `U<i><sign>` in traversal order, crossings numbered by first visit.
pub fn export_gauss(diagram: &LinkDiagram) -> Result<String, MeanderError> {
    if diagram.components().len() != 1 {
        return Err(MeanderError::MultiComponent(diagram.components().len()));
    }
    let mut numbering: HashMap<usize, usize> = HashMap::new();
    let mut entries = Vec::new();
    for &visit in diagram.components()[0].visits() {
        let n = numbering.len() + 1;
        let index = *numbering.entry(visit.crossing).or_insert(n);
        let crossing = diagram.crossing(visit.crossing);
        let over = diagram.experienced_sense(visit) == Sense::Over;
        // Right-hand sign: rotating the over-strand direction a quarter
        // turn counterclockwise must give the under-strand direction.
        let southbound = diagram.skeleton().is_southbound(crossing.base_vertex);
        let positive = if southbound {
            crossing.sense == Sense::Over
        } else {
            crossing.sense == Sense::Under
        };
        entries.push(format!(
            "{}{}{}",
            if over { 'O' } else { 'U' },
            index,
            if positive { '+' } else { '-' }
        ));
    }
    Ok(entries.join(","))
}

#[derive(Serialize, Deserialize)]
struct DiagramRecord {
    s: usize,
    r: usize,
    top: String,
    bottom: String,
    crossing_info: Vec<String>,
    components: usize,
    axis_components: Vec<usize>,
    pierced_circles: Vec<usize>,
    pd: Vec<[usize; 4]>,
}

/// Machine-readable record of a diagram.
pub fn export_json(diagram: &LinkDiagram) -> String {
    let record = DiagramRecord {
        s: diagram.s(),
        r: diagram.r(),
        top: diagram.skeleton().top().to_string(),
        bottom: diagram.skeleton().bottom().to_string(),
        crossing_info: diagram.assignment().word_strings(),
        components: diagram.components().len(),
        axis_components: diagram.axis_components().to_vec(),
        pierced_circles: diagram.skeleton().pierced_circles(),
        pd: pd_tuples(diagram),
    };
    serde_json::to_string(&record).expect("plain data serializes")
}

/// Rebuilds a diagram from its JSON record; the derived fields must agree
/// with the rebuilt diagram.
pub fn diagram_from_json(text: &str) -> Result<LinkDiagram, MeanderError> {
    let record: DiagramRecord =
        serde_json::from_str(text).map_err(|e| MeanderError::Malformed(e.to_string()))?;
    let top = record
        .top
        .parse()
        .map_err(|e| MeanderError::Malformed(format!("top: {e}")))?;
    let bottom = record
        .bottom
        .parse()
        .map_err(|e| MeanderError::Malformed(format!("bottom: {e}")))?;
    let graph = super::MeanderGraph::new(top, bottom)?;
    let assignment = super::CrossingAssignment::from_words(&record.crossing_info)?;
    let diagram = LinkDiagram::assemble(graph, assignment)?;
    if diagram.s() != record.s || diagram.r() != record.r {
        return Err(MeanderError::Malformed("recorded s/r do not match".into()));
    }
    if diagram.components().len() != record.components
        || diagram.axis_components() != record.axis_components
        || diagram.skeleton().pierced_circles() != record.pierced_circles
        || pd_tuples(&diagram) != record.pd
    {
        return Err(MeanderError::Malformed(
            "recorded derived fields do not match the rebuilt diagram".into(),
        ));
    }
    Ok(diagram)
}
