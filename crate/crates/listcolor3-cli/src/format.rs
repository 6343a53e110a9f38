//! The lcol file format and assignment files.
//!
//! Line-oriented ASCII, DIMACS-adjacent so existing graph corpora import by
//! swapping the header:
//!
//! ```text
//! c comment lines start with "c "
//! p lcol <n> <m>        (or "p edge <n> <m>" for a plain graph)
//! e <u> <v>             exactly m of these, 1-based endpoints
//! l <v> <c1> [<c2> [<c3>]]   colors strictly increasing; omitted vertices
//!                            default to the full list {1,2,3}
//! ```
//!
//! Assignment files hold one line `<v> <c>` per vertex, ascending `v`.

use listcolor3::{Assignment, Color, ColorSet, Instance, VertexId};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("malformed header; expected \"p lcol <n> <m>\" or \"p edge <n> <m>\"")]
    BadHeader,
    #[error("duplicate header")]
    DuplicateHeader,
    #[error("missing \"p\" header")]
    MissingHeader,
    #[error("unknown record type {0:?}")]
    UnknownRecord(String),
    #[error("malformed edge record; expected \"e <u> <v>\"")]
    BadEdge,
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(u64, u32),
    #[error("color {0} out of range 1..=3")]
    ColorOutOfRange(u64),
    #[error("list colors must be strictly increasing")]
    NonIncreasingColors,
    #[error("duplicate list record for vertex {0}")]
    DuplicateList(VertexId),
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("expected {expected} edge records, found {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("malformed list record; expected \"l <v> <c1> [<c2> [<c3>]]\"")]
    BadList,
    #[error("malformed assignment record; expected \"<v> <c>\"")]
    BadAssignment,
    #[error("duplicate assignment for vertex {0}")]
    DuplicateAssignment(VertexId),
}

/// A parse failure with its 1-based line number (0 for end-of-input checks).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn err<T>(line: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { line, kind })
}

fn is_comment(line: &str) -> bool {
    line == "c" || line.starts_with("c ")
}

fn parse_u64(token: &str) -> Option<u64> {
    token.parse::<u64>().ok()
}

/// Parses an lcol (or plain DIMACS edge) document into an instance whose
/// vertex ids are the file's 1-based ids.
pub fn parse_lcol(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<(u32, usize)> = None;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();
    let mut lists: Vec<(VertexId, ColorSet)> = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || is_comment(trimmed) {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        match tokens[0] {
            "p" => {
                if header.is_some() {
                    return err(line, ParseErrorKind::DuplicateHeader);
                }
                if tokens.len() != 4 || !matches!(tokens[1], "lcol" | "edge") {
                    return err(line, ParseErrorKind::BadHeader);
                }
                let n = parse_u64(tokens[2]).and_then(|n| u32::try_from(n).ok());
                let m = parse_u64(tokens[3]).map(|m| m as usize);
                match (n, m) {
                    (Some(n), Some(m)) => header = Some((n, m)),
                    _ => return err(line, ParseErrorKind::BadHeader),
                }
            }
            "e" => {
                let Some((n, m)) = header else {
                    return err(line, ParseErrorKind::MissingHeader);
                };
                if tokens.len() != 3 {
                    return err(line, ParseErrorKind::BadEdge);
                }
                let mut ends = [0u32; 2];
                for (slot, token) in ends.iter_mut().zip(&tokens[1..]) {
                    let Some(v) = parse_u64(token) else {
                        return err(line, ParseErrorKind::BadEdge);
                    };
                    if v < 1 || v > n as u64 {
                        return err(line, ParseErrorKind::VertexOutOfRange(v, n));
                    }
                    *slot = v as u32;
                }
                if ends[0] == ends[1] {
                    return err(line, ParseErrorKind::SelfLoop(ends[0]));
                }
                if edges.len() == m {
                    return err(
                        line,
                        ParseErrorKind::EdgeCountMismatch {
                            expected: m,
                            found: m + 1,
                        },
                    );
                }
                edges.push((ends[0], ends[1]));
            }
            "l" => {
                let Some((n, _)) = header else {
                    return err(line, ParseErrorKind::MissingHeader);
                };
                if !(3..=5).contains(&tokens.len()) {
                    return err(line, ParseErrorKind::BadList);
                }
                let Some(v) = parse_u64(tokens[1]) else {
                    return err(line, ParseErrorKind::BadList);
                };
                if v < 1 || v > n as u64 {
                    return err(line, ParseErrorKind::VertexOutOfRange(v, n));
                }
                let v = v as u32;
                if lists.iter().any(|&(u, _)| u == v) {
                    return err(line, ParseErrorKind::DuplicateList(v));
                }
                let mut set = ColorSet::EMPTY;
                let mut prev: Option<u8> = None;
                for token in &tokens[2..] {
                    let Some(c) = parse_u64(token) else {
                        return err(line, ParseErrorKind::BadList);
                    };
                    if !(1..=3).contains(&c) {
                        return err(line, ParseErrorKind::ColorOutOfRange(c));
                    }
                    let c = c as u8;
                    if prev.is_some_and(|p| c <= p) {
                        return err(line, ParseErrorKind::NonIncreasingColors);
                    }
                    prev = Some(c);
                    set = set.with(Color::new(c).expect("range checked"));
                }
                lists.push((v, set));
            }
            other => return err(line, ParseErrorKind::UnknownRecord(other.to_string())),
        }
    }

    let Some((n, m)) = header else {
        return err(0, ParseErrorKind::MissingHeader);
    };
    if edges.len() != m {
        return err(
            0,
            ParseErrorKind::EdgeCountMismatch {
                expected: m,
                found: edges.len(),
            },
        );
    }
    let vertices: Vec<VertexId> = (1..=n).collect();
    let built = Instance::build(&vertices, &edges, &lists)
        .expect("parser validated the structure already");
    Ok(built.expect_valid())
}

/// Writes an instance in lcol format. Vertex ids are renumbered 1..=n in
/// ascending order (the identity for parsed or generated instances); lists
/// equal to the full palette are left implicit.
pub fn write_lcol(inst: &Instance) -> String {
    let ids: Vec<VertexId> = inst.vertex_ids().collect();
    let index_of = |v: VertexId| ids.binary_search(&v).expect("own vertex") + 1;
    let mut out = String::new();
    out.push_str(&format!("p lcol {} {}\n", ids.len(), inst.num_edges()));
    for &u in &ids {
        for &w in inst.neighbors(u) {
            if w > u {
                out.push_str(&format!("e {} {}\n", index_of(u), index_of(w)));
            }
        }
    }
    for &v in &ids {
        let list = inst.list(v);
        if list == ColorSet::ALL {
            continue;
        }
        out.push_str(&format!("l {}", index_of(v)));
        for c in list.iter() {
            out.push_str(&format!(" {c}"));
        }
        out.push('\n');
    }
    out
}

/// Parses an assignment file ("<v> <c>" per line).
pub fn parse_assignment(text: &str) -> Result<Assignment, ParseError> {
    let mut a = Assignment::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || is_comment(trimmed) {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split_whitespace().collect();
        if tokens.len() != 2 {
            return err(line, ParseErrorKind::BadAssignment);
        }
        let (Some(v), Some(c)) = (parse_u64(tokens[0]), parse_u64(tokens[1])) else {
            return err(line, ParseErrorKind::BadAssignment);
        };
        if !(1..=3).contains(&c) {
            return err(line, ParseErrorKind::ColorOutOfRange(c));
        }
        let Ok(v) = u32::try_from(v) else {
            return err(line, ParseErrorKind::BadAssignment);
        };
        if a.contains_vertex(v) {
            return err(line, ParseErrorKind::DuplicateAssignment(v));
        }
        a.set(v, Color::new(c as u8).expect("range checked"));
    }
    Ok(a)
}

/// Writes an assignment as one "<v> <c>" line per vertex, ascending.
pub fn write_assignment(a: &Assignment) -> String {
    let mut out = String::new();
    for (v, c) in a.iter() {
        out.push_str(&format!("{v} {c}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_two_vertex_path() {
        let inst = parse_lcol("p lcol 2 1\ne 1 2\nl 1 1 2\nl 2 1 2\n").unwrap();
        assert_eq!(inst.num_vertices(), 2);
        assert_eq!(inst.num_edges(), 1);
        assert_eq!(inst.list(1), ColorSet::from_bits(0b011));
        assert_eq!(inst.list(2), ColorSet::from_bits(0b011));
    }

    #[test]
    fn missing_list_records_default_to_the_full_palette() {
        let inst = parse_lcol("p lcol 1 0\n").unwrap();
        assert_eq!(inst.num_vertices(), 1);
        assert_eq!(inst.list(1), ColorSet::ALL);
    }

    #[test]
    fn plain_edge_header_is_accepted() {
        let inst = parse_lcol("c a triangle\np edge 3 3\ne 1 2\ne 2 3\ne 1 3\n").unwrap();
        assert_eq!(inst.num_edges(), 3);
        assert!(inst.vertex_ids().all(|v| inst.list(v) == ColorSet::ALL));
    }

    #[test]
    fn non_increasing_colors_are_rejected_with_the_line() {
        let e = parse_lcol("p lcol 1 0\nl 1 3 1\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.kind, ParseErrorKind::NonIncreasingColors);
    }

    #[test]
    fn error_cases_carry_line_numbers() {
        assert_eq!(
            parse_lcol("p what 1 0\n").unwrap_err(),
            ParseError { line: 1, kind: ParseErrorKind::BadHeader }
        );
        assert_eq!(
            parse_lcol("p lcol 2 1\ne 1 3\n").unwrap_err(),
            ParseError { line: 2, kind: ParseErrorKind::VertexOutOfRange(3, 2) }
        );
        assert_eq!(
            parse_lcol("p lcol 2 0\nl 1 1\nl 1 2\n").unwrap_err(),
            ParseError { line: 3, kind: ParseErrorKind::DuplicateList(1) }
        );
        assert_eq!(
            parse_lcol("p lcol 2 1\ne 1 1\n").unwrap_err(),
            ParseError { line: 2, kind: ParseErrorKind::SelfLoop(1) }
        );
        assert_eq!(
            parse_lcol("p lcol 2 2\ne 1 2\n").unwrap_err(),
            ParseError {
                line: 0,
                kind: ParseErrorKind::EdgeCountMismatch { expected: 2, found: 1 }
            }
        );
        assert_eq!(
            parse_lcol("p lcol 2 0\nl 1 4\n").unwrap_err(),
            ParseError { line: 2, kind: ParseErrorKind::ColorOutOfRange(4) }
        );
        assert_eq!(
            parse_lcol("x 1 2\n").unwrap_err(),
            ParseError { line: 1, kind: ParseErrorKind::UnknownRecord("x".into()) }
        );
    }

    #[test]
    fn write_then_parse_is_stable() {
        let text = "p lcol 4 3\ne 1 2\ne 2 3\ne 3 4\nl 2 1 3\nl 4 2\n";
        let first = parse_lcol(text).unwrap();
        let round = parse_lcol(&write_lcol(&first)).unwrap();
        assert_eq!(first, round);
    }

    #[test]
    fn assignment_roundtrip() {
        let text = "1 2\n2 1\n3 3\n";
        let a = parse_assignment(text).unwrap();
        assert_eq!(write_assignment(&a), text);
        assert_eq!(
            parse_assignment("1 2\n1 3\n").unwrap_err().kind,
            ParseErrorKind::DuplicateAssignment(1)
        );
    }
}
