//! Graph ingestion and emission.
//!
//! Two text formats are understood:
//!
//! * an edge list, one `u v` pair per line, with isolated vertices declared
//!   as `vertex u`; blank lines and `#` comments are ignored;
//! * a DOT subset: an undirected `graph` (optionally `strict` and named)
//!   whose statements are node ids and `--` chains. Attributes, subgraphs
//!   and directed edges are rejected.

use thiserror::Error;

use crate::graph::{GraphError, SimplicialGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Dot,
}

impl GraphFormat {
    /// Guesses the format from the first meaningful token.
    pub fn sniff(text: &str) -> Self {
        let first = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("//"))
            .unwrap_or("");
        let word = first
            .split(|c: char| c.is_whitespace() || c == '{')
            .next()
            .unwrap_or("");
        if matches!(word, "graph" | "strict" | "digraph") {
            GraphFormat::Dot
        } else {
            GraphFormat::EdgeList
        }
    }
}

pub fn parse_graph(text: &str) -> Result<SimplicialGraph, ParseError> {
    match GraphFormat::sniff(text) {
        GraphFormat::EdgeList => parse_edge_list(text),
        GraphFormat::Dot => parse_dot(text),
    }
}

fn ensure_vertex(g: &mut SimplicialGraph, v: &str) {
    if !g.contains_vertex(v) {
        g.add_vertex(v.to_string()).expect("checked absent");
    }
}

fn add_edge(g: &mut SimplicialGraph, u: &str, v: &str, line: usize) -> Result<(), ParseError> {
    ensure_vertex(g, u);
    ensure_vertex(g, v);
    g.add_edge(u, v).map_err(|e| match e {
        GraphError::SelfLoop(v) => ParseError::new(line, format!("self-loop at {v:?}")),
        other => ParseError::new(line, other.to_string()),
    })
}

pub fn parse_edge_list(text: &str) -> Result<SimplicialGraph, ParseError> {
    let mut g = SimplicialGraph::empty();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            ["vertex", v] => ensure_vertex(&mut g, v),
            ["vertex", ..] => {
                return Err(ParseError::new(line, "expected `vertex <id>`"));
            }
            [u, v] => add_edge(&mut g, u, v, line)?,
            _ => {
                return Err(ParseError::new(
                    line,
                    format!("expected `u v` or `vertex u`, found {content:?}"),
                ))
            }
        }
    }
    Ok(g)
}

/// Edge-list text for `g`. Isolated vertices are declared first so the
/// vertex order survives a round trip only up to that reordering; edges
/// follow in lexicographic position order.
pub fn write_edge_list(g: &SimplicialGraph) -> String {
    let mut out = String::new();
    for (i, v) in g.vertices().iter().enumerate() {
        if g.neighbors(i).next().is_none() {
            out.push_str(&format!("vertex {v}\n"));
        }
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Id(String),
    Dash,
    Semi,
    Comma,
    Open,
    Close,
}

fn tokenize_dot(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut line = 1;
    while i < chars.len() {
        let c = chars[i];
        match c {
            '\n' => {
                line += 1;
                i += 1;
            }
            c if c.is_whitespace() => i += 1,
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'/') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '/' if chars.get(i + 1) == Some(&'*') => {
                i += 2;
                while i < chars.len() && !(chars[i] == '*' && chars.get(i + 1) == Some(&'/')) {
                    if chars[i] == '\n' {
                        line += 1;
                    }
                    i += 1;
                }
                if i >= chars.len() {
                    return Err(ParseError::new(line, "unterminated comment"));
                }
                i += 2;
            }
            '-' if chars.get(i + 1) == Some(&'-') => {
                toks.push((Tok::Dash, line));
                i += 2;
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                return Err(ParseError::new(line, "directed edges are not supported"));
            }
            ';' => {
                toks.push((Tok::Semi, line));
                i += 1;
            }
            ',' => {
                toks.push((Tok::Comma, line));
                i += 1;
            }
            '{' => {
                toks.push((Tok::Open, line));
                i += 1;
            }
            '}' => {
                toks.push((Tok::Close, line));
                i += 1;
            }
            '[' | '=' => {
                return Err(ParseError::new(line, "attributes are not supported"));
            }
            '"' => {
                let start_line = line;
                let mut s = String::new();
                i += 1;
                loop {
                    match chars.get(i) {
                        None => return Err(ParseError::new(start_line, "unterminated string")),
                        Some('"') => break,
                        Some('\\') if chars.get(i + 1) == Some(&'"') => {
                            s.push('"');
                            i += 2;
                        }
                        Some(&ch) => {
                            if ch == '\n' {
                                line += 1;
                            }
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                i += 1;
                toks.push((Tok::Id(s), start_line));
            }
            c if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' => {
                let mut s = String::new();
                while i < chars.len() {
                    let ch = chars[i];
                    let sign = ch == '-' && s.is_empty() && chars.get(i + 1) != Some(&'-');
                    if ch.is_alphanumeric() || ch == '_' || ch == '.' || sign {
                        s.push(ch);
                        i += 1;
                    } else {
                        break;
                    }
                }
                toks.push((Tok::Id(s), line));
            }
            other => {
                return Err(ParseError::new(
                    line,
                    format!("unexpected character {other:?}"),
                ));
            }
        }
    }
    Ok(toks)
}

pub fn parse_dot(text: &str) -> Result<SimplicialGraph, ParseError> {
    let toks = tokenize_dot(text)?;
    let mut pos = 0;
    let last_line = text.lines().count().max(1);
    let line_at = |p: usize| toks.get(p).map(|t| t.1).unwrap_or(last_line);

    let keyword = |p: usize, kw: &str| matches!(toks.get(p), Some((Tok::Id(s), _)) if s.eq_ignore_ascii_case(kw));
    if keyword(pos, "strict") {
        pos += 1;
    }
    if keyword(pos, "digraph") {
        return Err(ParseError::new(
            line_at(pos),
            "directed graphs are not supported",
        ));
    }
    if !keyword(pos, "graph") {
        return Err(ParseError::new(line_at(pos), "expected `graph`"));
    }
    pos += 1;
    if let Some((Tok::Id(_), _)) = toks.get(pos) {
        pos += 1;
    }
    if toks.get(pos).map(|t| &t.0) != Some(&Tok::Open) {
        return Err(ParseError::new(line_at(pos), "expected `{`"));
    }
    pos += 1;

    let mut g = SimplicialGraph::empty();
    loop {
        match toks.get(pos) {
            None => return Err(ParseError::new(last_line, "missing `}`")),
            Some((Tok::Close, _)) => {
                pos += 1;
                break;
            }
            Some((Tok::Semi, _)) | Some((Tok::Comma, _)) => pos += 1,
            Some((Tok::Id(first), line)) => {
                if ["node", "edge", "graph", "subgraph"]
                    .contains(&first.to_ascii_lowercase().as_str())
                {
                    return Err(ParseError::new(
                        *line,
                        format!("`{first}` statements are not supported"),
                    ));
                }
                let mut chain = vec![(first.clone(), *line)];
                pos += 1;
                while let Some((Tok::Dash, _)) = toks.get(pos) {
                    pos += 1;
                    match toks.get(pos) {
                        Some((Tok::Id(next), line)) => {
                            chain.push((next.clone(), *line));
                            pos += 1;
                        }
                        _ => {
                            return Err(ParseError::new(
                                line_at(pos),
                                "expected node id after `--`",
                            ))
                        }
                    }
                }
                if chain.len() == 1 {
                    ensure_vertex(&mut g, &chain[0].0);
                } else {
                    for w in chain.windows(2) {
                        add_edge(&mut g, &w[0].0, &w[1].0, w[1].1)?;
                    }
                }
            }
            Some((tok, line)) => {
                return Err(ParseError::new(*line, format!("unexpected token {tok:?}")));
            }
        }
    }
    if pos != toks.len() {
        return Err(ParseError::new(line_at(pos), "trailing input after `}`"));
    }
    Ok(g)
}

fn dot_id(v: &str) -> String {
    let plain = !v.is_empty()
        && v.chars().all(|c| c.is_alphanumeric() || c == '_')
        && !v.eq_ignore_ascii_case("graph")
        && !v.eq_ignore_ascii_case("node")
        && !v.eq_ignore_ascii_case("edge")
        && !v.eq_ignore_ascii_case("strict")
        && !v.eq_ignore_ascii_case("subgraph")
        && !v.eq_ignore_ascii_case("digraph");
    if plain {
        v.to_string()
    } else {
        format!("\"{}\"", v.replace('"', "\\\""))
    }
}

pub fn write_dot(g: &SimplicialGraph) -> String {
    let mut out = String::from("graph {\n");
    for v in g.vertices() {
        out.push_str(&format!("  {};\n", dot_id(v)));
    }
    for (u, v) in g.edges() {
        out.push_str(&format!("  {} -- {};\n", dot_id(&u), dot_id(&v)));
    }
    out.push_str("}\n");
    out
}

pub fn write_graph(g: &SimplicialGraph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => write_edge_list(g),
        GraphFormat::Dot => write_dot(g),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_basics() {
        let g = parse_edge_list("# P4\n1 2\n2 3\n\n3 4  # tail\nvertex 9\n").unwrap();
        assert_eq!(g.vertices(), &["1", "2", "3", "4", "9"].map(String::from));
        assert_eq!(g.edge_count(), 3);
        let again = parse_edge_list(&write_edge_list(&g)).unwrap();
        assert_eq!(again.edge_set(), g.edge_set());
        assert_eq!(again.vertex_count(), 5);
    }

    #[test]
    fn edge_list_errors_carry_line_numbers() {
        let e = parse_edge_list("1 2\n1 2 3\n").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_edge_list("\n\nx x\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e = parse_edge_list("vertex\n").unwrap_err();
        assert_eq!(e.line, 1);
    }

    #[test]
    fn dot_subset() {
        let g = parse_dot("strict graph G {\n a -- b -- c;\n d\n \"e f\" -- a\n}\n").unwrap();
        assert_eq!(g.vertices(), &["a", "b", "c", "d", "e f"].map(String::from));
        assert!(g.has_edge("a", "b") && g.has_edge("b", "c") && g.has_edge("e f", "a"));
        assert_eq!(g.edge_count(), 3);
        let again = parse_dot(&write_dot(&g)).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn dot_rejections() {
        assert!(parse_dot("digraph { a -> b }").is_err());
        assert!(parse_dot("graph { a -> b }").is_err());
        assert!(parse_dot("graph { a [label=x] }").is_err());
        let e = parse_dot("graph {\n a -- \n}").unwrap_err();
        assert_eq!(e.line, 3);
        assert!(parse_dot("graph { a -- a }").is_err());
        assert!(parse_dot("graph { a").is_err());
    }

    #[test]
    fn sniffing() {
        assert_eq!(GraphFormat::sniff("graph {}"), GraphFormat::Dot);
        assert_eq!(GraphFormat::sniff("# c\nstrict graph{}"), GraphFormat::Dot);
        assert_eq!(GraphFormat::sniff("1 2"), GraphFormat::EdgeList);
        assert_eq!(parse_graph("vertex v\n").unwrap().vertex_count(), 1);
    }
}
