//! The plain-text structure format.
//!
//! ```text
//! # comment
//! class poset n=4
//! rel 0 1
//! rel 1 3
//! ```
//!
//! The header comes first. Body keywords by class: `edge u v` (graph),
//! `arc u v` (tournament, digraph, oriented graph), `rel u v` (poset and
//! linear order, closed transitively), `perm v1 .. vn` (permutation, values
//! `1..=n`, one line) and `tuple a1 .. ak` (k-ary classes; a hypergraph edge
//! is given once in any order).
//!
//! The normalized form written by [`write_structure`] uses dense ids and
//! sorted lines; posets and linear orders are written as cover relations.

use crate::error::{Error, Result};
use crate::structure::{
    check, close_transitively, orderings, transitive_reduction, ElementId, Permutation,
    RelationalStructure, StructureClass,
};

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A whitespace-separated token with its 1-based column.
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &body[s..i],
                    column: body[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

fn body_keyword(class: StructureClass) -> &'static str {
    use StructureClass::*;
    match class {
        Graph => "edge",
        Tournament | Digraph | OrientedGraph => "arc",
        Poset | LinearOrder => "rel",
        Permutation => "perm",
        Kary(_) | KaryIrreflexive(_) | Hypergraph(_) => "tuple",
    }
}

fn parse_header(toks: &[Token<'_>], line: usize) -> Result<(StructureClass, usize)> {
    let at = |i: usize| toks.get(i).map_or(1, |t| t.column);
    if toks.first().map(|t| t.text) != Some("class") {
        return Err(parse_error(line, at(0), "expected header `class <tag> n=<int>`"));
    }
    let tag = toks
        .get(1)
        .ok_or_else(|| parse_error(line, at(0), "missing class tag"))?;
    let class: StructureClass = tag
        .text
        .parse()
        .map_err(|_| parse_error(line, tag.column, format!("unknown class `{}`", tag.text)))?;
    let size = toks
        .get(2)
        .ok_or_else(|| parse_error(line, tag.column, "missing `n=<int>`"))?;
    let n = size
        .text
        .strip_prefix("n=")
        .and_then(|v| v.parse::<usize>().ok())
        .ok_or_else(|| parse_error(line, size.column, format!("expected `n=<int>`, got `{}`", size.text)))?;
    if let Some(extra) = toks.get(3) {
        return Err(parse_error(line, extra.column, "unexpected text after header"));
    }
    Ok((class, n))
}

fn parse_ids(toks: &[Token<'_>], line: usize, n: usize, one_based: bool) -> Result<Vec<ElementId>> {
    toks.iter()
        .map(|t| {
            let v: usize = t
                .text
                .parse()
                .map_err(|_| parse_error(line, t.column, format!("expected an integer, got `{}`", t.text)))?;
            let ok = if one_based { (1..=n).contains(&v) } else { v < n };
            if ok {
                Ok(v)
            } else {
                let range = if one_based { format!("1..={n}") } else { format!("0..{n}") };
                Err(parse_error(line, t.column, format!("id {v} out of range {range}")))
            }
        })
        .collect()
}

/// Parses a structure file. The result validates under its declared class.
pub fn parse_structure(text: &str) -> Result<(RelationalStructure, StructureClass)> {
    let mut header: Option<(StructureClass, usize)> = None;
    let mut s = RelationalStructure::empty(0, Vec::new());
    let mut perm_seen = false;
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last_line = line;
        let toks = tokens(raw);
        if toks.is_empty() {
            continue;
        }
        let Some((class, n)) = header else {
            let h = parse_header(&toks, line)?;
            header = Some(h);
            s = RelationalStructure::for_class(h.1, h.0);
            continue;
        };
        let key = &toks[0];
        let want = body_keyword(class);
        if key.text != want {
            return Err(parse_error(
                line,
                key.column,
                format!("expected `{want}` for class {class}, got `{}`", key.text),
            ));
        }
        let args = &toks[1..];
        let arity = match class {
            StructureClass::Permutation => n,
            StructureClass::Kary(k) | StructureClass::KaryIrreflexive(k) | StructureClass::Hypergraph(k) => k,
            _ => 2,
        };
        if args.len() != arity {
            let col = args.get(arity).map_or(key.column, |t| t.column);
            return Err(parse_error(
                line,
                col,
                format!("`{want}` takes {arity} values, got {}", args.len()),
            ));
        }
        let one_based = class == StructureClass::Permutation;
        let ids = parse_ids(args, line, n, one_based)?;
        match class {
            StructureClass::Graph => {
                s.insert(0, vec![ids[0], ids[1]])?;
                s.insert(0, vec![ids[1], ids[0]])?;
            }
            StructureClass::Permutation => {
                if std::mem::replace(&mut perm_seen, true) {
                    return Err(parse_error(line, key.column, "a permutation has one `perm` line"));
                }
                let p = Permutation::new(ids)
                    .map_err(|e| parse_error(line, args[0].column, e.to_string()))?;
                s = crate::structure::perm_to_structure(&p);
            }
            StructureClass::Hypergraph(_) => {
                for t in orderings(&ids) {
                    s.insert(0, t)?;
                }
            }
            _ => {
                s.insert(0, ids)?;
            }
        }
    }
    let (class, n) = header.ok_or_else(|| parse_error(last_line.max(1), 1, "missing header `class <tag> n=<int>`"))?;
    if class == StructureClass::Permutation && !perm_seen && n > 0 {
        return Err(parse_error(last_line.max(1), 1, "missing `perm` line"));
    }
    if matches!(class, StructureClass::Poset | StructureClass::LinearOrder) {
        close_transitively(&mut s, 0);
    }
    check(&s, class)?;
    Ok((s, class))
}

/// Relabels a permutation so ids follow positions; other classes unchanged.
/// Returns the structure and the map from old to new ids.
pub fn normalize(s: &RelationalStructure, class: StructureClass) -> Result<(RelationalStructure, Vec<ElementId>)> {
    let n = s.n();
    if class != StructureClass::Permutation {
        return Ok((s.clone(), (0..n).collect()));
    }
    let map: Vec<ElementId> = (0..n)
        .map(|x| (0..n).filter(|&y| s.related(0, y, x)).count())
        .collect();
    Ok((s.relabel(&map)?, map))
}

fn line(key: &str, ids: &[ElementId]) -> String {
    let mut out = key.to_string();
    for x in ids {
        out.push(' ');
        out.push_str(&x.to_string());
    }
    out
}

/// The normalized text of `s`, ending with a newline.
pub fn write_structure(s: &RelationalStructure, class: StructureClass) -> Result<String> {
    use StructureClass::*;
    check(s, class)?;
    let n = s.n();
    let mut body: Vec<Vec<ElementId>> = match class {
        Graph => s.tuples(0).filter(|t| t[0] < t[1]).map(|t| t.to_vec()).collect(),
        Poset | LinearOrder => transitive_reduction(s, 0).into_iter().map(|(u, v)| vec![u, v]).collect(),
        Permutation => Vec::new(),
        Hypergraph(_) => s
            .tuples(0)
            .filter(|t| t.windows(2).all(|w| w[0] < w[1]))
            .map(|t| t.to_vec())
            .collect(),
        _ => s.tuples(0).map(|t| t.to_vec()).collect(),
    };
    body.sort();
    let mut out = format!("class {class} n={n}\n");
    if class == Permutation {
        if n > 0 {
            let p = crate::structure::Permutation::from_structure(s)?;
            out.push_str(&line("perm", p.oneline()));
            out.push('\n');
        }
        return Ok(out);
    }
    let key = body_keyword(class);
    for t in body {
        out.push_str(&line(key, &t));
        out.push('\n');
    }
    Ok(out)
}

/// Splits an extension report into its structure block and the rest, at the
/// first `added` line.
pub fn split_report(text: &str) -> (&str, &str) {
    let mut offset = 0;
    for l in text.split_inclusive('\n') {
        if l.trim_start().starts_with("added ") || l.trim() == "added" {
            return (&text[..offset], &text[offset..]);
        }
        offset += l.len();
    }
    (text, "")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{digraph, perm_to_structure};

    #[test]
    fn chain_two() {
        let (s, c) = parse_structure("class tournament n=2\narc 0 1").unwrap();
        assert_eq!(c, StructureClass::Tournament);
        assert_eq!(s, digraph(2, &[(0, 1)]).unwrap());
    }

    #[test]
    fn permutation_2413() {
        let (s, c) = parse_structure("class permutation n=4\nperm 2 4 1 3").unwrap();
        assert_eq!(c, StructureClass::Permutation);
        assert_eq!(s, perm_to_structure(&Permutation::parse_compact("2413").unwrap()));
    }

    #[test]
    fn oriented_graph_rejects_two_cycle() {
        let err = parse_structure("class oriented-graph n=2\narc 0 1\narc 1 0").unwrap_err();
        assert!(matches!(err, Error::Axiom { .. }), "{err}");
    }

    #[test]
    fn diagnostics_carry_positions() {
        let err = parse_structure("# header next\nclass graph n=3\nedge 0 7\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 3,
                column: 8,
                message: "id 7 out of range 0..3".into()
            }
        );
        let err = parse_structure("class graph n=3\narc 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 1, .. }));
        let err = parse_structure("class shape n=3\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 7, .. }));
        let err = parse_structure("edge 0 1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 1, .. }));
    }

    #[test]
    fn poset_is_closed_and_written_as_covers() {
        let (s, _) = parse_structure("class poset n=3\nrel 0 1\nrel 1 2").unwrap();
        assert!(s.related(0, 0, 2));
        let text = write_structure(&s, StructureClass::Poset).unwrap();
        assert_eq!(text, "class poset n=3\nrel 0 1\nrel 1 2\n");
    }

    #[test]
    fn hypergraph_edges_are_sets() {
        let (s, _) = parse_structure("class hypergraph(3) n=4\ntuple 2 0 1\n").unwrap();
        assert_eq!(s.tuple_count(0), 6);
        let text = write_structure(&s, StructureClass::Hypergraph(3)).unwrap();
        assert_eq!(text, "class hypergraph(3) n=4\ntuple 0 1 2\n");
    }

    #[test]
    fn report_split() {
        let (a, b) = split_report("class graph n=1\nadded 1\nsimple true\n");
        assert_eq!(a, "class graph n=1\n");
        assert_eq!(b, "added 1\nsimple true\n");
    }
}
