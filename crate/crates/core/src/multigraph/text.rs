//! Line-based text format:
//!
//! ```text
//! # optional comments
//! vertices 4
//! edge 1 2 1
//! edge 2 3 2
//! ```
//!
//! Repeated `edge u v` lines accumulate. Several graphs in one stream are
//! separated by a line containing only `---`.

use std::fmt::Write as _;

use super::Multigraph;
use crate::error::{Error, Result};

const SEPARATOR: &str = "---";

pub fn parse_graph(input: &str) -> Result<Multigraph> {
    parse_block(input.lines().enumerate().map(|(i, l)| (i + 1, l)))
}

/// Parses a `---` separated stream of graphs.
pub fn parse_graphs(input: &str) -> Result<Vec<Multigraph>> {
    let mut graphs = Vec::new();
    let mut block = Vec::new();
    for (i, line) in input.lines().enumerate() {
        if line.trim() == SEPARATOR {
            graphs.push(parse_block(block.drain(..))?);
        } else {
            block.push((i + 1, line));
        }
    }
    if block.iter().any(|(_, l)| is_content(l)) || graphs.is_empty() {
        graphs.push(parse_block(block.into_iter())?);
    }
    Ok(graphs)
}

pub fn write_graph(g: &Multigraph) -> String {
    let mut out = String::new();
    writeln!(out, "vertices {}", g.vertex_count()).unwrap();
    for (u, v, m) in g.edges() {
        writeln!(out, "edge {u} {v} {m}").unwrap();
    }
    out
}

pub fn write_graphs<'a, I>(graphs: I) -> String
where
    I: IntoIterator<Item = &'a Multigraph>,
{
    let mut out = String::new();
    for (i, g) in graphs.into_iter().enumerate() {
        if i > 0 {
            out.push_str(SEPARATOR);
            out.push('\n');
        }
        out.push_str(&write_graph(g));
    }
    out
}

fn is_content(line: &str) -> bool {
    let t = line.trim();
    !t.is_empty() && !t.starts_with('#')
}

fn parse_block<'a, I>(lines: I) -> Result<Multigraph>
where
    I: Iterator<Item = (usize, &'a str)>,
{
    let mut graph: Option<Multigraph> = None;
    let mut last_line = 0;
    for (line_no, raw) in lines {
        last_line = line_no;
        if !is_content(raw) {
            continue;
        }
        let err = |message: String| Error::Parse { line: line_no, message };
        let fields: Vec<&str> = raw.split_whitespace().collect();
        match (fields[0], graph.as_mut()) {
            ("vertices", None) => {
                if fields.len() != 2 {
                    return Err(err("expected `vertices N`".into()));
                }
                let n = parse_num(fields[1]).map_err(&err)?;
                graph = Some(Multigraph::new(n).map_err(|e| err(e.to_string()))?);
            }
            ("vertices", Some(_)) => return Err(err("duplicate `vertices` header".into())),
            ("edge", None) => return Err(err("`edge` before `vertices` header".into())),
            ("edge", Some(g)) => {
                if fields.len() != 4 {
                    return Err(err("expected `edge u v m`".into()));
                }
                let u = parse_num(fields[1]).map_err(&err)?;
                let v = parse_num(fields[2]).map_err(&err)?;
                let m = parse_num(fields[3]).map_err(&err)?;
                if m == 0 {
                    return Err(err("multiplicity must be at least 1".into()));
                }
                let m = u32::try_from(m).map_err(|_| err("multiplicity too large".into()))?;
                g.add_edge(u, v, m).map_err(|e| err(e.to_string()))?;
            }
            (other, _) => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    graph.ok_or(Error::Parse { line: last_line, message: "missing `vertices` header".into() })
}

fn parse_num(s: &str) -> std::result::Result<usize, String> {
    s.parse::<usize>().map_err(|_| format!("`{s}` is not a nonnegative integer"))
}
