//! Command dispatch for the `meshkit` binary.
//!
//! [`run`] never prints or exits; it returns the exit status and both output
//! streams so the binary stays thin and tests can drive every command.

mod report;

use std::collections::BTreeMap;
use std::fs;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use thiserror::Error;

use crate::cover::{
    build_covering_ball, check_covering, default_slack, emit_covering, lift_path, parse_covering,
    CoverError, HomotopyKind,
};
use crate::crit::{depth_certificate, fiber_sum, n2_mesh_analysis, radical_verdict, CritError};
use crate::gen::{self, GenError, TreeSpec};
use crate::meshcat::{FieldBackend, MeshCatError, MeshCategory};
use crate::oracle::{self, OracleError};
use crate::qcore::{collapse, emit_quiver, parse_quiver, validate, ParseError, Path, TranslationQuiver, VertexIndex, WalkError};

pub use report::render_text;

#[derive(Debug, Parser)]
#[command(name = "meshkit", version, about = "Translation quivers, coverings and mesh categories")]
pub struct Cli {
    /// Emit one JSON document instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Answer with the brute-force reference implementation.
    #[arg(long, global = true, hide = true)]
    pub oracle: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the translation quiver axioms.
    Validate(QuiverArg),
    /// Emit a generated quiver.
    #[command(subcommand)]
    Generate(Family),
    /// Merge parallel arrows.
    Collapse(QuiverArg),
    /// Build a ball of the universal or generic covering.
    Cover(CoverArgs),
    /// Check the covering axioms of a covering file.
    CheckCover(CoverFileArgs),
    /// Lift a path of the base into a covering ball.
    Lift(LiftArgs),
    /// Dimension of one graded hom space.
    MeshDim(MeshDimArgs),
    /// Class of the composite of a path.
    Compose(PathArgs),
    /// Radical-power verdict for a composite of irreducibles.
    Verdict(PathArgs),
    /// Search for a depth certificate of a zero composite.
    Depth(DepthArgs),
    /// Sum of hom dimensions over a fiber of the covering.
    FiberSum(FiberSumArgs),
    /// Length-two mesh conditions at one vertex.
    Mesh2(Mesh2Args),
    /// Graded dimensions for a range of degrees.
    DimsTable(DimsTableArgs),
}

#[derive(Debug, Args)]
pub struct QuiverArg {
    #[arg(long)]
    pub quiver: String,
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// ZΔ window for a tree Δ written `1-2,2-3`.
    Ztree {
        #[arg(long)]
        tree: String,
        #[arg(long, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
    },
    /// Stable tube of rank p cut at h rows.
    Tube {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        rows: usize,
    },
    /// AR quiver of linearly oriented A_n.
    Triangle {
        #[arg(long)]
        n: usize,
    },
    /// Preprojective Kronecker window of m vertices.
    Kronecker {
        #[arg(long)]
        len: usize,
    },
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    #[arg(long)]
    pub quiver: String,
    #[arg(long)]
    pub base: String,
    #[arg(long)]
    pub radius: usize,
    #[arg(long, default_value = "universal")]
    pub kind: String,
    /// Defaults to twice the radius.
    #[arg(long)]
    pub slack: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CoverFileArgs {
    #[arg(long)]
    pub quiver: String,
    #[arg(long)]
    pub cover: String,
}

#[derive(Debug, Args)]
pub struct LiftArgs {
    #[arg(long)]
    pub quiver: String,
    #[arg(long)]
    pub cover: String,
    /// Comma-separated arrow ids in traversal order, or `@v` for ε_v.
    #[arg(long)]
    pub path: String,
    /// Delta vertex to start from; the basepoint by default.
    #[arg(long)]
    pub start: Option<String>,
}

#[derive(Debug, Args)]
pub struct MeshDimArgs {
    #[arg(long)]
    pub quiver: String,
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    #[arg(long)]
    pub deg: usize,
}

#[derive(Debug, Args)]
pub struct PathArgs {
    #[arg(long)]
    pub quiver: String,
    /// Comma-separated arrow ids in traversal order, or `@v` for ε_v.
    #[arg(long)]
    pub path: String,
}

#[derive(Debug, Args)]
pub struct DepthArgs {
    #[arg(long)]
    pub quiver: String,
    #[arg(long)]
    pub path: String,
    #[arg(long)]
    pub max_extra: usize,
    #[arg(long)]
    pub cap: usize,
}

#[derive(Debug, Args)]
pub struct FiberSumArgs {
    #[arg(long)]
    pub quiver: String,
    #[arg(long)]
    pub cover: String,
    /// Delta vertex.
    #[arg(long)]
    pub x: String,
    /// Base vertex.
    #[arg(long = "Y")]
    pub y: String,
    #[arg(long)]
    pub deg: usize,
}

#[derive(Debug, Args)]
pub struct Mesh2Args {
    #[arg(long)]
    pub quiver: String,
    #[arg(long)]
    pub vertex: String,
    #[arg(long)]
    pub cap: Option<usize>,
}

#[derive(Debug, Args)]
pub struct DimsTableArgs {
    #[arg(long)]
    pub quiver: String,
    #[arg(long)]
    pub from: String,
    #[arg(long)]
    pub to: String,
    #[arg(long)]
    pub max_deg: usize,
}

/// Exit status 2: malformed input. Exit status 1: well-formed input the
/// mathematics refuses.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    File { path: String, source: ParseError },
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Domain(_) => 1,
            CliError::Usage(_) | CliError::File { .. } => 2,
        }
    }
}

macro_rules! domain_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Domain(e.to_string())
            }
        }
    )*};
}
domain_from!(CritError, MeshCatError, CoverError, OracleError);

impl From<WalkError> for CliError {
    fn from(e: WalkError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        CliError::Usage(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match execute(&cli) {
        Ok(Reply::Report { code, value, text }) => {
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&value).expect("reports serialize");
                s.push('\n');
                s
            } else {
                text.unwrap_or_else(|| render_text(&value))
            };
            Outcome { code, stdout, stderr: String::new() }
        }
        Err(e) => {
            let stderr = format!("error: {e}\n");
            let stdout = if cli.json {
                let doc = serde_json::json!({ "error": e.to_string(), "exit": e.code() });
                format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
            } else {
                String::new()
            };
            Outcome { code: e.code(), stdout, stderr }
        }
    }
}

enum Reply {
    /// `text` overrides the generic table rendering.
    Report { code: i32, value: serde_json::Value, text: Option<String> },
}

fn reply<T: Serialize>(value: &T) -> Result<Reply, CliError> {
    Ok(Reply::Report { code: 0, value: serde_json::to_value(value).expect("reports serialize"), text: None })
}

fn reply_file<T: Serialize>(value: &T, text: String) -> Result<Reply, CliError> {
    Ok(Reply::Report { code: 0, value: serde_json::to_value(value).expect("reports serialize"), text: Some(text) })
}

fn read(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{path}: {e}")))
}

fn load_quiver(path: &str) -> Result<TranslationQuiver, CliError> {
    parse_quiver(&read(path)?).map_err(|source| CliError::File { path: path.to_owned(), source })
}

fn vertex(q: &TranslationQuiver, id: &str) -> Result<VertexIndex, CliError> {
    q.find_vertex(id)
        .ok_or_else(|| CliError::Usage(format!("unknown vertex {id} in {}", q.name())))
}

fn category(q: &TranslationQuiver) -> MeshCategory<'_> {
    MeshCategory::with_backend(q, FieldBackend::from_env())
}

fn no_oracle(cli: &Cli, what: &str) -> Result<(), CliError> {
    if cli.oracle {
        return Err(CliError::Usage(format!("--oracle is not available for {what}")));
    }
    Ok(())
}

fn execute(cli: &Cli) -> Result<Reply, CliError> {
    use report::*;
    match &cli.command {
        Command::Validate(a) => {
            no_oracle(cli, "validate")?;
            let q = load_quiver(&a.quiver)?;
            let r = validate(&q);
            let code = if r.is_valid() { 0 } else { 1 };
            let value = serde_json::to_value(ValidateReport::new(&q, &r)).unwrap();
            Ok(Reply::Report { code, value, text: None })
        }
        Command::Generate(f) => {
            no_oracle(cli, "generate")?;
            let q = match f {
                Family::Ztree { tree, from, to } => gen::ztree(&TreeSpec::parse(tree)?, *from, *to)?,
                Family::Tube { rank, rows } => gen::tube(*rank, *rows)?,
                Family::Triangle { n } => gen::triangle_an(*n)?,
                Family::Kronecker { len } => gen::kronecker(*len)?,
            };
            let text = emit_quiver(&q);
            reply_file(&QuiverText { name: q.name().to_owned(), text: text.clone() }, text)
        }
        Command::Collapse(a) => {
            no_oracle(cli, "collapse")?;
            let q = load_quiver(&a.quiver)?;
            let c = collapse(&q);
            let multiplicity: BTreeMap<String, usize> =
                c.multiplicity.iter().map(|(k, v)| (k.0.clone(), *v)).collect();
            let mut text = emit_quiver(&c.quiver);
            for (arrow, m) in &multiplicity {
                text.push_str(&format!("# multiplicity {arrow} {m}\n"));
            }
            let doc = CollapseReport { text: emit_quiver(&c.quiver), multiplicity };
            reply_file(&doc, text)
        }
        Command::Cover(a) => {
            no_oracle(cli, "cover")?;
            let q = load_quiver(&a.quiver)?;
            let kind = HomotopyKind::parse(&a.kind)
                .ok_or_else(|| CliError::Usage(format!("unknown kind {}", a.kind)))?;
            let base = vertex(&q, &a.base)?;
            let slack = a.slack.unwrap_or_else(|| default_slack(a.radius));
            let ball = build_covering_ball(&q, base, a.radius, kind, slack)?;
            let text = emit_covering(&ball, &q);
            reply_file(&CoverReport::new(&ball, text.clone()), text)
        }
        Command::CheckCover(a) => {
            no_oracle(cli, "check-cover")?;
            let q = load_quiver(&a.quiver)?;
            let ball = parse_covering(&read(&a.cover)?, &q)
                .map_err(|source| CliError::File { path: a.cover.clone(), source })?;
            let r = check_covering(&ball, &q);
            let code = if r.is_valid() { 0 } else { 1 };
            let value = serde_json::to_value(ValidateReport::new(&ball.delta, &r)).unwrap();
            Ok(Reply::Report { code, value, text: None })
        }
        Command::Lift(a) => {
            no_oracle(cli, "lift")?;
            let q = load_quiver(&a.quiver)?;
            let ball = parse_covering(&read(&a.cover)?, &q)
                .map_err(|source| CliError::File { path: a.cover.clone(), source })?;
            let p = Path::parse_label(&q, &a.path)?;
            let start = match &a.start {
                Some(s) => vertex(&ball.delta, s)?,
                None => ball.basepoint,
            };
            let lift = lift_path(&ball, &q, &p, start)?;
            reply(&LiftReport {
                path: p.label(&q),
                start: ball.delta.vertex_id(start).0.clone(),
                lift: lift.label(&ball.delta),
                end: ball.delta.vertex_id(lift.end(&ball.delta)).0.clone(),
            })
        }
        Command::MeshDim(a) => {
            let q = load_quiver(&a.quiver)?;
            let (x, y) = (vertex(&q, &a.from)?, vertex(&q, &a.to)?);
            let cat = category(&q);
            let h = cat.hom_space(x, y, a.deg);
            let dim = if cli.oracle { oracle::oracle_hom_dim(&q, x, y, a.deg)? } else { h.quotient_dim() };
            reply(&MeshDimReport {
                from: a.from.clone(),
                to: a.to.clone(),
                degree: a.deg,
                paths: h.basis().len(),
                relations: h.relations().rank(),
                dim,
                exact: h.is_exact(),
                backend: if cli.oracle { "oracle" } else { cat.backend().name() },
            })
        }
        Command::Compose(a) => {
            let q = load_quiver(&a.quiver)?;
            let p = Path::parse_label(&q, &a.path)?;
            let cat = category(&q);
            let class = cat.class_of_path(&p)?;
            let zero = if cli.oracle { oracle::oracle_path_is_zero(&q, &p)? } else { class.is_zero() };
            reply(&ComposeReport::new(&q, &p, &class, zero))
        }
        Command::Verdict(a) => {
            let q = load_quiver(&a.quiver)?;
            let p = Path::parse_label(&q, &a.path)?;
            let cat = category(&q);
            let mut v = radical_verdict(&cat, &p)?;
            if cli.oracle {
                v.verdict = if oracle::oracle_path_is_zero(&q, &p)? {
                    crate::crit::Verdict::InRadNPlus1
                } else {
                    crate::crit::Verdict::ExactlyRadN
                };
            }
            reply(&VerdictReport::new(&q, &v))
        }
        Command::Depth(a) => {
            let q = load_quiver(&a.quiver)?;
            let p = Path::parse_label(&q, &a.path)?;
            let cat = category(&q);
            if cli.oracle {
                if !cat.class_of_path(&p)?.is_zero() {
                    return Err(CliError::Domain("precondition failed: the composite has a nonzero class".into()));
                }
                let found = oracle::oracle_depth_search(&q, &p, a.max_extra, a.cap)?;
                return reply(&DepthReport::from_oracle(&q, &p, a.max_extra, a.cap, found.as_ref()));
            }
            let end = p.end(&q);
            if !cat.is_exact(p.start, end, p.len() + a.max_extra) {
                return Err(MeshCatError::OutOfWindow {
                    source_id: q.vertex_id(p.start).0.clone(),
                    target_id: q.vertex_id(end).0.clone(),
                    degree: p.len() + a.max_extra,
                }
                .into());
            }
            let found = depth_certificate(&cat, &p, a.max_extra, a.cap)?;
            reply(&DepthReport::new(&q, &p, a.max_extra, a.cap, found.as_ref()))
        }
        Command::FiberSum(a) => {
            no_oracle(cli, "fiber-sum")?;
            let q = load_quiver(&a.quiver)?;
            let ball = parse_covering(&read(&a.cover)?, &q)
                .map_err(|source| CliError::File { path: a.cover.clone(), source })?;
            let x = vertex(&ball.delta, &a.x)?;
            let y = vertex(&q, &a.y)?;
            let dcat = category(&ball.delta);
            let sum = fiber_sum(&dcat, &ball, x, y, a.deg)?;
            let bcat = category(&q);
            let base = bcat.hom_space(ball.pi(x), y, a.deg);
            reply(&FiberSumReport {
                x: a.x.clone(),
                pi_x: q.vertex_id(ball.pi(x)).0.clone(),
                y: a.y.clone(),
                degree: a.deg,
                total: sum.total,
                terms: sum.terms,
                base_dim: base.quotient_dim(),
                base_exact: base.is_exact(),
            })
        }
        Command::Mesh2(a) => {
            no_oracle(cli, "mesh2")?;
            let q = load_quiver(&a.quiver)?;
            let z = vertex(&q, &a.vertex)?;
            let cat = category(&q);
            let r = n2_mesh_analysis(&cat, z, a.cap.unwrap_or(8))?;
            reply(&Mesh2Report { vertex: a.vertex.clone(), analysis: r })
        }
        Command::DimsTable(a) => {
            let q = load_quiver(&a.quiver)?;
            let (x, y) = (vertex(&q, &a.from)?, vertex(&q, &a.to)?);
            let cat = category(&q);
            let mut dims = cat.graded_dims(x, y, a.max_deg);
            if cli.oracle {
                for d in &mut dims {
                    d.dim = oracle::oracle_hom_dim(&q, x, y, d.degree)?;
                }
            }
            reply(&DimsTableReport { from: a.from.clone(), to: a.to.clone(), dims })
        }
    }
}
