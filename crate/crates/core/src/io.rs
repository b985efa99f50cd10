//! Poset input formats and DOT export.
//!
//! Three input forms are accepted:
//!
//! ```text
//! family=C n=3
//! -2 <= 1
//! -2 <= 3
//! ```
//!
//! the JSON object `{"family":"C","n":3,"relations":[[-2,1],[-2,3]]}`, and the
//! one-line form `C;3;-2<=1,-2<=3`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::RelationGraph;
use crate::poset::{Family, MirrorMode, SignedPoset};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetSpec {
    pub family: Family,
    pub n: usize,
    pub relations: Vec<(i64, i64)>,
}

impl PosetSpec {
    pub fn build(&self, mode: MirrorMode) -> Result<SignedPoset> {
        SignedPoset::build_with(self.family, self.n, &self.relations, mode)
    }

    pub fn of(p: &SignedPoset) -> Self {
        PosetSpec { family: p.family(), n: p.n(), relations: p.covering_relations().into_iter().collect() }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_int(s: &str, line: usize) -> Result<i64> {
    s.trim().parse().map_err(|_| parse_err(line, format!("expected an integer, got {:?}", s.trim())))
}

fn parse_relation(s: &str, line: usize) -> Result<(i64, i64)> {
    let (x, y) = s.split_once("<=").ok_or_else(|| parse_err(line, format!("expected `x <= y`, got {:?}", s.trim())))?;
    Ok((parse_int(x, line)?, parse_int(y, line)?))
}

fn parse_n(s: &str, line: usize) -> Result<usize> {
    s.trim().parse().map_err(|_| parse_err(line, format!("expected a nonnegative size, got {:?}", s.trim())))
}

/// `family=C n=3` header followed by `x <= y` lines; `#` starts a comment.
pub fn parse_text(text: &str) -> Result<PosetSpec> {
    let mut header = None;
    let mut relations = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if header.is_none() {
            let mut family = None;
            let mut n = None;
            for field in content.split_whitespace() {
                match field.split_once('=') {
                    Some(("family", v)) => family = Some(v.parse::<Family>().map_err(|_| parse_err(line, format!("unknown family {v:?}")))?),
                    Some(("n", v)) => n = Some(parse_n(v, line)?),
                    _ => return Err(parse_err(line, format!("unexpected header field {field:?}"))),
                }
            }
            match (family, n) {
                (Some(f), Some(n)) => header = Some((f, n)),
                _ => return Err(parse_err(line, "header needs `family=<A|B|C|D> n=<int>`")),
            }
        } else {
            relations.push(parse_relation(content, line)?);
        }
    }
    let (family, n) = header.ok_or_else(|| parse_err(1, "missing header line"))?;
    Ok(PosetSpec { family, n, relations })
}

pub fn parse_json(text: &str) -> Result<PosetSpec> {
    serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))
}

/// `C;3;-2<=1,-2<=3`; the relation list may be empty.
pub fn parse_inline(text: &str) -> Result<PosetSpec> {
    let mut parts = text.trim().splitn(3, ';');
    let family = parts.next().unwrap_or("").parse::<Family>().map_err(|_| parse_err(1, "inline poset must start with a family"))?;
    let n = parse_n(parts.next().ok_or_else(|| parse_err(1, "inline poset needs `family;n;relations`"))?, 1)?;
    let relations = parts
        .next()
        .unwrap_or("")
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_relation(s, 1))
        .collect::<Result<_>>()?;
    Ok(PosetSpec { family, n, relations })
}

/// Picks the format from the first non-blank character.
pub fn parse_any(text: &str) -> Result<PosetSpec> {
    let t = text.trim_start();
    if t.starts_with('{') {
        parse_json(t)
    } else if t.contains("family=") {
        parse_text(t)
    } else {
        parse_inline(t)
    }
}

pub fn parse_poset(text: &str) -> Result<SignedPoset> {
    parse_any(text)?.build(MirrorMode::Complete)
}

pub fn to_text(p: &SignedPoset) -> String {
    let mut s = format!("family={} n={}\n", p.family(), p.n());
    for (x, y) in p.covering_relations() {
        s.push_str(&format!("{x} <= {y}\n"));
    }
    s
}

pub fn to_json(p: &SignedPoset) -> serde_json::Value {
    serde_json::to_value(PosetSpec::of(p)).expect("plain data")
}

pub fn hasse_dot(p: &SignedPoset) -> String {
    let mut s = String::from("digraph hasse {\n  rankdir=BT;\n");
    for x in p.elements() {
        s.push_str(&format!("  \"{x}\";\n"));
    }
    for (x, y) in p.covering_relations() {
        s.push_str(&format!("  \"{x}\" -> \"{y}\";\n"));
    }
    s.push_str("}\n");
    s
}

pub fn relation_graph_dot(g: &RelationGraph) -> String {
    let mut s = String::from("graph relations {\n");
    for v in &g.vertices {
        s.push_str(&format!("  {v};\n"));
    }
    for (a, b) in &g.edges {
        s.push_str(&format!("  {a} -- {b};\n"));
    }
    for v in &g.self_loops {
        s.push_str(&format!("  {v} -- {v};\n"));
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> SignedPoset {
        SignedPoset::build(Family::C, 3, &[(-2, 1), (-2, 3), (-3, 2), (-1, 2)]).unwrap()
    }

    #[test]
    fn three_formats_agree() {
        let text = "# path\nfamily=C n=3\n-2 <= 1\n-2 <= 3\n\n-3 <= 2  # mirror of -2 <= 3\n";
        let json = r#"{"family":"C","n":3,"relations":[[-2,1],[-2,3],[-3,2]]}"#;
        let inline = "C;3;-2<=1,-2<=3,-3<=2";
        let a = parse_poset(text).unwrap();
        assert_eq!(a, parse_poset(json).unwrap());
        assert_eq!(a, parse_poset(inline).unwrap());
        assert_eq!(a, path3());
    }

    #[test]
    fn round_trips() {
        let p = path3();
        assert_eq!(parse_poset(&to_text(&p)).unwrap(), p);
        assert_eq!(parse_poset(&to_json(&p).to_string()).unwrap(), p);
        assert_eq!(parse_poset(&p.to_string()).unwrap(), p);
        let anti = SignedPoset::build(Family::B, 2, &[]).unwrap();
        assert_eq!(parse_poset(&anti.to_string()).unwrap(), anti);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_poset("family=Q n=2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_poset("family=C n=2\n-1 < 2\n"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_poset("C;x;"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poset("{\"family\":\"C\"}"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poset(""), Err(Error::Parse { .. })));
        assert_eq!(parse_poset("family=C n=2\n2 <= 1\n").unwrap_err(), Error::Condition1Violation { x: 2, y: 1 });
    }

    #[test]
    fn dot_output() {
        let p = SignedPoset::build(Family::C, 3, &[(-2, 1), (-2, 2), (-2, 3), (-3, 2), (-1, 2)]).unwrap();
        let h = hasse_dot(&p);
        assert!(h.contains("\"-2\" -> \"1\";"));
        let g = relation_graph_dot(&p.relation_graph().unwrap());
        assert!(g.contains("  2 -- 2;") && g.contains("  1 -- 2;"));
    }
}
