//! Line-oriented quiver text format.
//!
//! ```text
//! quiver <name>
//! vertex <id> [proj] [inj] [frontier]
//! arrow <id> : <src> -> <tgt>
//! tau <x> -> <y>
//! sigma <arrow> -> <arrow>
//! ```
//!
//! `#` starts a comment. Ids are whitespace-free tokens. References may
//! appear before the declaration they point to.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use super::quiver::{QuiverBuilder, TranslationQuiver, VertexFlags};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

/// Parses a quiver file.
pub fn parse_quiver(text: &str) -> Result<TranslationQuiver, ParseError> {
    parse_quiver_with(text, |line, words| {
        Err(ParseError::new(line, format!("unknown keyword {}", words[0])))
    })
}

/// Parses a quiver file, handing lines with unrecognized keywords to `extra`.
pub fn parse_quiver_with(
    text: &str,
    mut extra: impl FnMut(usize, &[&str]) -> Result<(), ParseError>,
) -> Result<TranslationQuiver, ParseError> {
    let mut b = QuiverBuilder::new("");
    let mut named = false;
    let mut vertices = BTreeSet::new();
    let mut arrows = BTreeSet::new();
    let mut vertex_refs: Vec<(usize, String)> = Vec::new();
    let mut arrow_refs: Vec<(usize, String)> = Vec::new();
    let mut tau_seen = BTreeSet::new();
    let mut sigma_seen = BTreeSet::new();

    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        if words.is_empty() {
            continue;
        }
        match words[0] {
            "quiver" => {
                if words.len() != 2 {
                    return Err(ParseError::new(line, "expected `quiver <name>`"));
                }
                if named {
                    return Err(ParseError::new(line, "quiver name given twice"));
                }
                named = true;
                b.set_name(words[1]);
            }
            "vertex" => {
                if words.len() < 2 {
                    return Err(ParseError::new(line, "expected `vertex <id> [proj] [inj] [frontier]`"));
                }
                let mut flags = VertexFlags::NONE;
                for w in &words[2..] {
                    let slot = match *w {
                        "proj" => &mut flags.projective,
                        "inj" => &mut flags.injective,
                        "frontier" => &mut flags.frontier,
                        other => {
                            return Err(ParseError::new(line, format!("unknown vertex flag {other}")))
                        }
                    };
                    if std::mem::replace(slot, true) {
                        return Err(ParseError::new(line, format!("flag {w} repeated")));
                    }
                }
                if !vertices.insert(words[1].to_owned()) {
                    return Err(ParseError::new(line, format!("duplicate vertex {}", words[1])));
                }
                b.vertex(words[1], flags);
            }
            "arrow" => {
                if words.len() != 6 || words[2] != ":" || words[4] != "->" {
                    return Err(ParseError::new(line, "expected `arrow <id> : <src> -> <tgt>`"));
                }
                if !arrows.insert(words[1].to_owned()) {
                    return Err(ParseError::new(line, format!("duplicate arrow {}", words[1])));
                }
                vertex_refs.push((line, words[3].to_owned()));
                vertex_refs.push((line, words[5].to_owned()));
                b.arrow(words[1], words[3], words[5]);
            }
            "tau" => {
                if words.len() != 4 || words[2] != "->" {
                    return Err(ParseError::new(line, "expected `tau <x> -> <y>`"));
                }
                if !tau_seen.insert(words[1].to_owned()) {
                    return Err(ParseError::new(line, format!("tau given twice for {}", words[1])));
                }
                vertex_refs.push((line, words[1].to_owned()));
                vertex_refs.push((line, words[3].to_owned()));
                b.tau(words[1], words[3]);
            }
            "sigma" => {
                if words.len() != 4 || words[2] != "->" {
                    return Err(ParseError::new(line, "expected `sigma <arrow> -> <arrow>`"));
                }
                if !sigma_seen.insert(words[1].to_owned()) {
                    return Err(ParseError::new(line, format!("sigma given twice for {}", words[1])));
                }
                arrow_refs.push((line, words[1].to_owned()));
                arrow_refs.push((line, words[3].to_owned()));
                b.sigma(words[1], words[3]);
            }
            _ => extra(line, &words)?,
        }
    }
    if !named {
        return Err(ParseError::new(0, "missing `quiver <name>` line"));
    }
    for (line, v) in vertex_refs {
        if !vertices.contains(&v) {
            return Err(ParseError::new(line, format!("unknown vertex {v}")));
        }
    }
    for (line, a) in arrow_refs {
        if !arrows.contains(&a) {
            return Err(ParseError::new(line, format!("unknown arrow {a}")));
        }
    }
    b.build().map_err(|e| ParseError::new(0, e.to_string()))
}

/// Canonical text for a quiver; `parse_quiver(emit_quiver(q)) == q`.
pub fn emit_quiver(q: &TranslationQuiver) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "quiver {}", q.name());
    for v in q.vertices() {
        let _ = write!(s, "vertex {}", v.id);
        if v.flags.projective {
            s.push_str(" proj");
        }
        if v.flags.injective {
            s.push_str(" inj");
        }
        if v.flags.frontier {
            s.push_str(" frontier");
        }
        s.push('\n');
    }
    for a in q.arrows() {
        let _ = writeln!(
            s,
            "arrow {} : {} -> {}",
            a.id,
            q.vertex_id(a.source),
            q.vertex_id(a.target)
        );
    }
    for x in q.vertex_indices() {
        if let Some(t) = q.tau(x) {
            let _ = writeln!(s, "tau {} -> {}", q.vertex_id(x), q.vertex_id(t));
        }
    }
    for a in q.arrow_indices() {
        if let Some(b) = q.sigma(a) {
            let _ = writeln!(s, "sigma {} -> {}", q.arrow_id(a), q.arrow_id(b));
        }
    }
    s
}
