//! Line-oriented digraph text format and composition JSON.
//!
//! Digraph format: optional `#` comment lines, a header `n <count>`,
//! then one `u v` arc per line (0-indexed, whitespace separated).
//! Serialization is canonical: header first, arcs sorted
//! lexicographically, no comments.

use crate::{CompositionSpec, Digraph, Error, Result};

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut n: Option<usize> = None;
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    let mut seen_at: Vec<((usize, usize), usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        match n {
            None => {
                if fields.next() != Some("n") {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("expected header 'n <count>', got '{line}'"),
                    });
                }
                let count = parse_field(fields.next(), lineno, "vertex count")?;
                if fields.next().is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "trailing tokens after header".into(),
                    });
                }
                n = Some(count);
            }
            Some(order) => {
                let u = parse_field(fields.next(), lineno, "arc tail")?;
                let v = parse_field(fields.next(), lineno, "arc head")?;
                if fields.next().is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "trailing tokens after arc".into(),
                    });
                }
                if u >= order || v >= order {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("arc ({u}, {v}) out of range for n = {order}"),
                    });
                }
                if u == v {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("loop at vertex {u}"),
                    });
                }
                if seen_at.iter().any(|&(a, _)| a == (u, v)) {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: format!("duplicate arc ({u}, {v})"),
                    });
                }
                seen_at.push(((u, v), lineno));
                arcs.push((u, v));
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 1,
        msg: "missing 'n <count>' header".into(),
    })?;
    Digraph::new(n, arcs)
}

pub fn serialize_digraph(d: &Digraph) -> String {
    let mut s = format!("n {}\n", d.n());
    for &(u, v) in d.arcs() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Composition JSON: `{"outer": <digraph>, "parts": [<digraph>, ...]}`
/// where a digraph is `{"n": int, "arcs": [[u, v], ...]}`.
pub fn parse_composition(text: &str) -> Result<CompositionSpec> {
    let spec: CompositionSpec = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    spec.validate()?;
    Ok(spec)
}

pub fn serialize_composition(spec: &CompositionSpec) -> String {
    serde_json::to_string(spec).expect("composition serialization cannot fail")
}

fn parse_field(field: Option<&str>, line: usize, what: &str) -> Result<usize> {
    let tok = field.ok_or_else(|| Error::Parse {
        line,
        msg: format!("missing {what}"),
    })?;
    tok.parse().map_err(|_| Error::Parse {
        line,
        msg: format!("invalid {what} '{tok}'"),
    })
}
