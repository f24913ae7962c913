//! Graph arguments and graph6 files.

use std::fs;
use std::path::Path;

use cospec_core::{graph6, Graph, VertexSet};

use crate::error::{CliError, CliResult};

/// Graphs named by an argument: `g6:<string>` for one inline graph, or
/// `@<path>` for a file of graph6 lines.
pub fn read_graphs(arg: &str) -> CliResult<Vec<Graph>> {
    if let Some(s) = arg.strip_prefix("g6:") {
        Ok(vec![decode(s)?])
    } else if let Some(path) = arg.strip_prefix('@') {
        read_graph6_file(Path::new(path))
    } else {
        Err(CliError::Usage(format!("graph argument {arg:?} must start with g6: or @")))
    }
}

/// Exactly one graph named by an argument.
pub fn read_graph(arg: &str) -> CliResult<Graph> {
    let mut graphs = read_graphs(arg)?;
    if graphs.len() != 1 {
        return Err(CliError::Domain(format!("{arg} holds {} graphs, expected one", graphs.len())));
    }
    Ok(graphs.remove(0))
}

pub fn read_graph6_file(path: &Path) -> CliResult<Vec<Graph>> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Domain(format!("{}: {e}", path.display())))?;
    parse_graph6_lines(&text)
}

/// One graph per nonblank line, with an optional `>>graph6<<` header.
pub fn parse_graph6_lines(text: &str) -> CliResult<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty())
        .enumerate()
        .map(|(i, line)| decode(line).map_err(|e| CliError::Domain(format!("line {}: {e}", i + 1))))
        .collect()
}

fn decode(s: &str) -> CliResult<Graph> {
    Ok(graph6::decode(s.strip_prefix(">>graph6<<").unwrap_or(s))?)
}

/// Comma separated vertices; the empty string is the empty set.
pub fn parse_vertex_set(s: &str) -> CliResult<VertexSet> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(VertexSet::EMPTY);
    }
    let vertices = s
        .split(',')
        .map(|v| v.trim().parse::<usize>().map_err(|_| CliError::Usage(format!("bad vertex {v:?} in {s:?}"))))
        .collect::<CliResult<Vec<usize>>>()?;
    Ok(VertexSet::from_vertices(vertices)?)
}

pub fn format_vertex_set(s: VertexSet) -> String {
    s.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inline_and_lists() {
        assert_eq!(read_graph("g6:Cl").unwrap(), Graph::cycle(4).unwrap());
        assert!(matches!(read_graph("Cl"), Err(CliError::Usage(_))));
        assert!(matches!(read_graph("g6:C~~"), Err(CliError::Domain(_))));
        let s = parse_vertex_set("0, 2,5").unwrap();
        assert_eq!(format_vertex_set(s), "0,2,5");
        assert_eq!(parse_vertex_set("").unwrap(), VertexSet::EMPTY);
        assert!(parse_vertex_set("1,x").is_err());
    }

    #[test]
    fn graph6_lines() {
        let graphs = parse_graph6_lines(">>graph6<<Cl\n\nC~\n").unwrap();
        assert_eq!(graphs, vec![Graph::cycle(4).unwrap(), Graph::complete(4).unwrap()]);
        assert!(parse_graph6_lines("Cl\n!!\n").unwrap_err().to_string().contains("line 2"));
    }
}
