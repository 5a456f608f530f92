//! Line-oriented mesh files.
//!
//! ```text
//! tet10 v1
//! # comment
//! elem <id> [density <rho0>]
//! x y z        # ten lines, nodes 1..10
//! ```

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::element::{Tet10Nodes, NODE_COUNT};
use crate::error::{Error, Result};

pub const MESH_HEADER: &str = "tet10 v1";

#[derive(Debug, Clone, PartialEq)]
pub struct MeshElement {
    pub id: String,
    pub density: Option<f64>,
    pub nodes: Tet10Nodes,
}

struct Pending {
    id: String,
    line: usize,
    density: Option<f64>,
    coords: Vec<[f64; 3]>,
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn finish(pending: Pending) -> Result<MeshElement> {
    let found = pending.coords.len();
    let coords: [[f64; 3]; NODE_COUNT] = pending.coords.try_into().map_err(|_| {
        parse_error(
            pending.line,
            format!("element {}: expected 10 nodes, found {found}", pending.id),
        )
    })?;
    Ok(MeshElement {
        id: pending.id,
        density: pending.density,
        nodes: Tet10Nodes::new(coords),
    })
}

fn parse_number(token: &str, line: usize, id: &str, what: &str) -> Result<f64> {
    let value: f64 = token
        .parse()
        .map_err(|_| parse_error(line, format!("element {id}: invalid {what} `{token}`")))?;
    if !value.is_finite() {
        return Err(parse_error(line, format!("element {id}: non-finite {what} `{token}`")));
    }
    Ok(value)
}

pub fn parse_mesh(text: &str) -> Result<Vec<MeshElement>> {
    let mut elements = Vec::new();
    let mut seen = HashSet::new();
    let mut header_seen = false;
    let mut pending: Option<Pending> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if !header_seen {
            if tokens.join(" ") != MESH_HEADER {
                return Err(parse_error(line, format!("expected header `{MESH_HEADER}`")));
            }
            header_seen = true;
            continue;
        }
        if tokens[0] == "elem" {
            if let Some(done) = pending.take() {
                elements.push(finish(done)?);
            }
            let id = match tokens.get(1) {
                Some(id) => id.to_string(),
                None => return Err(parse_error(line, "`elem` without an element id")),
            };
            let density = match &tokens[2..] {
                [] => None,
                ["density", value] => {
                    let rho = parse_number(value, line, &id, "density")?;
                    if rho <= 0.0 {
                        return Err(parse_error(line, format!("element {id}: density must be positive")));
                    }
                    Some(rho)
                }
                _ => {
                    return Err(parse_error(
                        line,
                        format!("element {id}: expected `elem <id> [density <rho0>]`"),
                    ))
                }
            };
            if !seen.insert(id.clone()) {
                return Err(parse_error(line, format!("duplicate element id {id}")));
            }
            pending = Some(Pending {
                id,
                line,
                density,
                coords: Vec::with_capacity(NODE_COUNT),
            });
            continue;
        }
        let Some(current) = pending.as_mut() else {
            return Err(parse_error(line, "coordinates outside of an element"));
        };
        if tokens.len() != 3 {
            return Err(parse_error(
                line,
                format!("element {}: expected 3 coordinates, found {}", current.id, tokens.len()),
            ));
        }
        if current.coords.len() == NODE_COUNT {
            return Err(parse_error(
                line,
                format!("element {}: expected 10 nodes, found more", current.id),
            ));
        }
        let mut xyz = [0.0; 3];
        for (slot, token) in xyz.iter_mut().zip(&tokens) {
            *slot = parse_number(token, line, &current.id, "coordinate")?;
        }
        current.coords.push(xyz);
    }

    if !header_seen {
        return Err(parse_error(
            last_line.max(1),
            format!("expected header `{MESH_HEADER}`"),
        ));
    }
    if let Some(done) = pending {
        elements.push(finish(done)?);
    }
    Ok(elements)
}

pub fn read_mesh(path: impl AsRef<Path>) -> Result<Vec<MeshElement>> {
    parse_mesh(&std::fs::read_to_string(path)?)
}

/// Serialises elements; coordinates use the shortest round-trip form.
pub fn write_mesh(elements: &[MeshElement]) -> String {
    let mut out = format!("{MESH_HEADER}\n");
    for e in elements {
        match e.density {
            Some(rho) => writeln!(out, "elem {} density {rho}", e.id),
            None => writeln!(out, "elem {}", e.id),
        }
        .unwrap();
        for [x, y, z] in e.nodes.coords() {
            writeln!(out, "{x} {y} {z}").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::is_straight_sided;

    const REFERENCE: &str = "tet10 v1
# unit corner element
elem 1 density 2520
0 0 0
1 0 0
0 1 0
0 0 1
0.5 0 0
0.5 0.5 0
0 0.5 0
0 0 0.5
0.5 0 0.5
0 0.5 0.5
";

    fn message(err: Error) -> (usize, String) {
        match err {
            Error::Parse { line, message } => (line, message),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn parses_reference_element() {
        let elements = parse_mesh(REFERENCE).unwrap();
        assert_eq!(elements.len(), 1);
        assert_eq!(elements[0].id, "1");
        assert_eq!(elements[0].density, Some(2520.0));
        assert_eq!(elements[0].nodes, Tet10Nodes::reference());
        assert!(is_straight_sided(&elements[0].nodes, 1e-12));
    }

    #[test]
    fn missing_node_is_reported() {
        let text = REFERENCE.replace("0 0.5 0.5\n", "");
        let (line, msg) = message(parse_mesh(&text).unwrap_err());
        assert_eq!(line, 3);
        assert!(msg.contains("expected 10 nodes"), "{msg}");
        assert!(msg.contains("element 1"));
    }

    #[test]
    fn extra_node_is_reported() {
        let text = format!("{REFERENCE}1 1 1\n");
        let (line, msg) = message(parse_mesh(&text).unwrap_err());
        assert_eq!(line, 14);
        assert!(msg.contains("expected 10 nodes"));
    }

    #[test]
    fn bad_tokens_are_reported() {
        let text = REFERENCE.replace("0.5 0.5 0\n", "0.5 abc 0\n");
        let (line, msg) = message(parse_mesh(&text).unwrap_err());
        assert_eq!(line, 9);
        assert!(msg.contains("invalid coordinate `abc`"));

        let text = REFERENCE.replace("0.5 0.5 0\n", "0.5 inf 0\n");
        assert!(message(parse_mesh(&text).unwrap_err()).1.contains("non-finite"));
    }

    #[test]
    fn duplicate_ids_are_reported() {
        let body = REFERENCE.strip_prefix("tet10 v1\n").unwrap();
        let text = format!("{REFERENCE}{body}");
        let (line, msg) = message(parse_mesh(&text).unwrap_err());
        assert_eq!(line, 15);
        assert_eq!(msg, "duplicate element id 1");
    }

    #[test]
    fn header_is_required() {
        let (line, msg) = message(parse_mesh("elem 1\n").unwrap_err());
        assert_eq!(line, 1);
        assert!(msg.contains("header"));
        assert!(parse_mesh("").is_err());
        assert!(parse_mesh("tet10 v1\n").unwrap().is_empty());
    }

    #[test]
    fn stray_coordinates_are_reported() {
        let (line, msg) = message(parse_mesh("tet10 v1\n1 2 3\n").unwrap_err());
        assert_eq!((line, msg.as_str()), (2, "coordinates outside of an element"));
    }

    #[test]
    fn round_trip() {
        let mut coords = Tet10Nodes::reference().coords().to_owned();
        coords[6] = [0.1 + 0.2, -1.0 / 3.0, 2.5e-17];
        let elements = vec![
            MeshElement {
                id: "a".into(),
                density: None,
                nodes: Tet10Nodes::new(coords),
            },
            MeshElement {
                id: "b".into(),
                density: Some(7.25),
                nodes: Tet10Nodes::reference().scaled(3.0),
            },
        ];
        assert_eq!(parse_mesh(&write_mesh(&elements)).unwrap(), elements);
    }
}
