use std::fmt;

use thiserror::Error;

use super::quiver::{ArrowIndex, TranslationQuiver, VertexIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Forward,
    Inverse,
}

/// One step of a walk: an arrow traversed forwards or backwards.
///
/// Steps order by arrow first, forward before inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Step {
    pub arrow: ArrowIndex,
    pub dir: Direction,
}

impl Step {
    pub fn forward(arrow: ArrowIndex) -> Step {
        Step {
            arrow,
            dir: Direction::Forward,
        }
    }

    pub fn inverse(arrow: ArrowIndex) -> Step {
        Step {
            arrow,
            dir: Direction::Inverse,
        }
    }

    pub fn reversed(self) -> Step {
        Step {
            arrow: self.arrow,
            dir: match self.dir {
                Direction::Forward => Direction::Inverse,
                Direction::Inverse => Direction::Forward,
            },
        }
    }

    /// Start vertex, with s(α⁻¹) = e(α).
    pub fn start(self, q: &TranslationQuiver) -> VertexIndex {
        match self.dir {
            Direction::Forward => q.source(self.arrow),
            Direction::Inverse => q.target(self.arrow),
        }
    }

    pub fn end(self, q: &TranslationQuiver) -> VertexIndex {
        match self.dir {
            Direction::Forward => q.target(self.arrow),
            Direction::Inverse => q.source(self.arrow),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("step {index} starts at {found} but the walk is at {expected}")]
    NotComposable {
        index: usize,
        expected: String,
        found: String,
    },
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("empty arrow list; a trivial path needs an explicit vertex")]
    Empty,
    #[error("walk contains an inverse step")]
    NotAPath,
}

/// A walk over a quiver, stored in traversal order (first step first).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Walk {
    pub start: VertexIndex,
    pub steps: Vec<Step>,
}

impl Walk {
    pub fn trivial(v: VertexIndex) -> Walk {
        Walk {
            start: v,
            steps: Vec::new(),
        }
    }

    pub fn new(
        q: &TranslationQuiver,
        start: VertexIndex,
        steps: Vec<Step>,
    ) -> Result<Walk, WalkError> {
        let mut at = start;
        for (index, s) in steps.iter().enumerate() {
            if s.start(q) != at {
                return Err(WalkError::NotComposable {
                    index,
                    expected: q.vertex_id(at).0.clone(),
                    found: q.vertex_id(s.start(q)).0.clone(),
                });
            }
            at = s.end(q);
        }
        Ok(Walk { start, steps })
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn end(&self, q: &TranslationQuiver) -> VertexIndex {
        self.steps.last().map_or(self.start, |s| s.end(q))
    }

    pub fn then(&self, step: Step) -> Walk {
        let mut steps = self.steps.clone();
        steps.push(step);
        Walk {
            start: self.start,
            steps,
        }
    }

    pub fn concat(&self, other: &[Step]) -> Walk {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(other);
        Walk {
            start: self.start,
            steps,
        }
    }

    pub fn is_path(&self) -> bool {
        self.steps.iter().all(|s| s.dir == Direction::Forward)
    }

    pub fn to_path(&self) -> Result<Path, WalkError> {
        if !self.is_path() {
            return Err(WalkError::NotAPath);
        }
        Ok(Path {
            start: self.start,
            arrows: self.steps.iter().map(|s| s.arrow).collect(),
        })
    }

    pub fn display<'a>(&'a self, q: &'a TranslationQuiver) -> WalkDisplay<'a> {
        WalkDisplay { walk: self, q }
    }
}

/// `<start>` followed by `+arrow` / `-arrow` per step.
pub struct WalkDisplay<'a> {
    walk: &'a Walk,
    q: &'a TranslationQuiver,
}

impl fmt::Display for WalkDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q.vertex_id(self.walk.start))?;
        for s in &self.walk.steps {
            let sign = match s.dir {
                Direction::Forward => '+',
                Direction::Inverse => '-',
            };
            write!(f, "{}{}", sign, self.q.arrow_id(s.arrow))?;
        }
        Ok(())
    }
}

/// A walk with forward steps only. Length zero is the trivial path ε at `start`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    pub start: VertexIndex,
    pub arrows: Vec<ArrowIndex>,
}

impl Path {
    pub fn trivial(v: VertexIndex) -> Path {
        Path {
            start: v,
            arrows: Vec::new(),
        }
    }

    pub fn new(
        q: &TranslationQuiver,
        start: VertexIndex,
        arrows: Vec<ArrowIndex>,
    ) -> Result<Path, WalkError> {
        let mut at = start;
        for (index, &a) in arrows.iter().enumerate() {
            if q.source(a) != at {
                return Err(WalkError::NotComposable {
                    index,
                    expected: q.vertex_id(at).0.clone(),
                    found: q.vertex_id(q.source(a)).0.clone(),
                });
            }
            at = q.target(a);
        }
        Ok(Path { start, arrows })
    }

    /// Path from a non-empty list of arrow ids in traversal order.
    pub fn from_arrow_ids<S: AsRef<str>>(
        q: &TranslationQuiver,
        ids: &[S],
    ) -> Result<Path, WalkError> {
        let arrows = ids
            .iter()
            .map(|id| {
                q.find_arrow(id.as_ref())
                    .ok_or_else(|| WalkError::UnknownArrow(id.as_ref().to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let first = arrows.first().ok_or(WalkError::Empty)?;
        Path::new(q, q.source(*first), arrows)
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn end(&self, q: &TranslationQuiver) -> VertexIndex {
        self.arrows.last().map_or(self.start, |&a| q.target(a))
    }

    /// The vertices x_0, …, x_n visited by the path.
    pub fn vertices(&self, q: &TranslationQuiver) -> Vec<VertexIndex> {
        let mut vs = Vec::with_capacity(self.arrows.len() + 1);
        vs.push(self.start);
        vs.extend(self.arrows.iter().map(|&a| q.target(a)));
        vs
    }

    /// Concatenation in traversal order: `self` first, then `next`.
    pub fn then(&self, next: &Path) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Path {
            start: self.start,
            arrows,
        }
    }

    pub fn to_walk(&self) -> Walk {
        Walk {
            start: self.start,
            steps: self.arrows.iter().map(|&a| Step::forward(a)).collect(),
        }
    }

    /// Comma-separated arrow ids, or `@vertex` for a trivial path.
    pub fn label(&self, q: &TranslationQuiver) -> String {
        if self.arrows.is_empty() {
            format!("@{}", q.vertex_id(self.start))
        } else {
            self.arrows
                .iter()
                .map(|&a| q.arrow_id(a).0.as_str())
                .collect::<Vec<_>>()
                .join(",")
        }
    }

    /// Inverse of [`Path::label`].
    pub fn parse_label(q: &TranslationQuiver, text: &str) -> Result<Path, WalkError> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix('@') {
            let v = q
                .find_vertex(v)
                .ok_or_else(|| WalkError::UnknownVertex(v.to_owned()))?;
            return Ok(Path::trivial(v));
        }
        let ids: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        Path::from_arrow_ids(q, &ids)
    }
}
