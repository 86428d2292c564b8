//! Line-based text formats.
//!
//! Graphs:
//!
//! ```text
//! vars a b c
//! a -> b
//! b -- c
//! ```
//!
//! Statement sets:
//!
//! ```text
//! vars a b c d
//! k 1
//! ci c d | a
//! ```
//!
//! `#` starts a comment; blank lines are ignored.

use std::fmt::Write as _;

use crate::ci::{CISet, CIStatement};
use crate::error::{Error, Result};
use crate::graph::{EdgeKind, Graph, Vertex, VertexNames};

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let content = line.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_vars<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
) -> Result<VertexNames> {
    let (line, tokens) = lines
        .next()
        .ok_or_else(|| parse_err(0, "missing `vars` line"))?;
    if tokens[0] != "vars" {
        return Err(parse_err(line, format!("expected `vars`, found `{}`", tokens[0])));
    }
    VertexNames::new(tokens[1..].iter().map(|s| s.to_string()).collect())
        .map_err(|e| parse_err(line, e.to_string()))
}

fn lookup(names: &VertexNames, name: &str, line: usize) -> Result<Vertex> {
    names
        .index(name)
        .ok_or_else(|| parse_err(line, format!("unknown vertex `{name}`")))
}

pub fn parse_graph(text: &str) -> Result<(Graph, VertexNames)> {
    let mut it = lines(text);
    let names = parse_vars(&mut it)?;
    let mut g = Graph::new(names.len());
    for (line, tokens) in it {
        let [a, op, b] = tokens[..] else {
            return Err(parse_err(line, "expected `<a> -> <b>` or `<a> -- <b>`"));
        };
        let a = lookup(&names, a, line)?;
        let b = lookup(&names, b, line)?;
        if a == b {
            return Err(parse_err(line, format!("self-loop on `{}`", names.name(a))));
        }
        if g.adjacent(a, b) {
            return Err(parse_err(
                line,
                format!("duplicate edge between `{}` and `{}`", names.name(a), names.name(b)),
            ));
        }
        match op {
            "->" => g.add_directed(a, b)?,
            "--" => g.add_undirected(a, b)?,
            other => return Err(parse_err(line, format!("unknown edge operator `{other}`"))),
        }
    }
    Ok((g, names))
}

pub fn write_graph(g: &Graph, names: &VertexNames) -> Result<String> {
    if g.n() != names.len() {
        return Err(Error::SizeMismatch {
            left: g.n(),
            right: names.len(),
        });
    }
    let mut out = String::new();
    write_vars(&mut out, names);
    for a in 0..g.n() {
        for b in a + 1..g.n() {
            let (x, op, y) = match g.kind(a, b) {
                EdgeKind::None => continue,
                EdgeKind::Forward => (a, "->", b),
                EdgeKind::Backward => (b, "->", a),
                EdgeKind::Undirected => (a, "--", b),
            };
            writeln!(out, "{} {op} {}", names.name(x), names.name(y)).expect("write to String");
        }
    }
    Ok(out)
}

fn write_vars(out: &mut String, names: &VertexNames) {
    out.push_str("vars");
    for name in names.as_slice() {
        out.push(' ');
        out.push_str(name);
    }
    out.push('\n');
}

pub fn parse_ci(text: &str) -> Result<CISet> {
    let mut it = lines(text);
    let names = parse_vars(&mut it)?;
    let (line, tokens) = it
        .next()
        .ok_or_else(|| parse_err(0, "missing `k` line"))?;
    let k = match tokens[..] {
        ["k", value] => value
            .parse::<usize>()
            .map_err(|_| parse_err(line, format!("invalid order `{value}`")))?,
        _ => return Err(parse_err(line, "expected `k <integer>`")),
    };
    let mut s = CISet::with_names(names, k);
    for (line, tokens) in it {
        if tokens[0] != "ci" {
            return Err(parse_err(line, format!("expected `ci`, found `{}`", tokens[0])));
        }
        let (pair, z) = match tokens.iter().position(|&t| t == "|") {
            Some(bar) => (&tokens[1..bar], &tokens[bar + 1..]),
            None => (&tokens[1..], &tokens[tokens.len()..]),
        };
        let [a, b] = pair else {
            return Err(parse_err(line, "expected `ci <a> <b> [| <z>...]`"));
        };
        let a = lookup(s.names(), a, line)?;
        let b = lookup(s.names(), b, line)?;
        let z = z
            .iter()
            .map(|name| lookup(s.names(), name, line))
            .collect::<Result<Vec<_>>>()?;
        let st = CIStatement::new(a, b, z).map_err(|e| parse_err(line, e.to_string()))?;
        s.insert(st).map_err(|e| parse_err(line, e.to_string()))?;
    }
    Ok(s)
}

pub fn write_ci(s: &CISet) -> String {
    let names = s.names();
    let mut out = String::new();
    write_vars(&mut out, names);
    writeln!(out, "k {}", s.k()).expect("write to String");
    for st in s.statements() {
        write!(out, "ci {} {}", names.name(st.a), names.name(st.b)).expect("write to String");
        if !st.z.is_empty() {
            out.push_str(" |");
            for &v in &st.z {
                out.push(' ');
                out.push_str(names.name(v));
            }
        }
        out.push('\n');
    }
    out
}
