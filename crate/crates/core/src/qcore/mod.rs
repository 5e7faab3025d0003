//! Translation quivers: the data model, walks and paths, meshes, sectional
//! paths, the collapse Γ ↦ Γ^v, validation and the text format.

mod collapse;
mod mesh;
mod paths;
mod quiver;
pub mod text;
mod validate;
mod walk;

pub use collapse::{collapse, Collapse};
pub use mesh::{is_sectional, is_sectional_from_end, mesh_at, Mesh, MeshError, Spoke};
pub(crate) use mesh::raw_mesh;
pub use paths::{enumerate_paths, forward_layers, paths_from};
pub use quiver::{
    Arrow, ArrowId, ArrowIndex, BuildError, QuiverBuilder, TranslationQuiver, Vertex, VertexFlags,
    VertexId, VertexIndex,
};
pub use text::{emit_quiver, parse_quiver, ParseError};
pub use validate::{validate, Issue, IssueKind, ValidationReport};
pub use walk::{Direction, Path, Step, Walk, WalkError};
