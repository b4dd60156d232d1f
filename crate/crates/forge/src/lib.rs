//! Command-line front end for `ulrich-core`: argument parsing, polynomial
//! and matrix input, and versioned JSON reports.
//!
//! [`dispatch`] runs one command and returns the exit code together with
//! the serialized report, so the binary is a thin wrapper and tests can
//! drive every subcommand in-process.

mod render;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use ulrich_core::curve_cover::{
    check_branch_splitting, keem_counterexample_certificate, riemann_hurwitz, transversality_check, SplitOutcome,
};
use ulrich_core::graded::{graded_dimension, is_smooth_hypersurface, smoothness_bound, GradedSystem, Smoothness};
use ulrich_core::matrix_factor::{
    build_clifford_factorization, determinant_certificate, verify_factorization, MatrixFactorization,
};
use ulrich_core::quadform::{diagonalize, gram_from_poly, pencil_determinant, sum_of_products, univariate_coefficients};
use ulrich_core::veronese::{
    decompose_form, double_cover_quadric, lift_form, normalize_plane_decomposition, rank_bounds, ulrich_presentation,
    FormDecomposition, VeroneseMap,
};
use ulrich_core::{Field, Poly};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Overrides `--seed` when set.
pub const SEED_ENV: &str = "ULRICH_FORGE_SEED";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, thiserror::Error)]
pub enum ForgeError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ulrich_core::Error),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("bad matrix JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl ForgeError {
    fn exit_code(&self) -> i32 {
        match self {
            ForgeError::Core(ulrich_core::Error::ExtensionNeeded(_)) => EXIT_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

type Outcome = Result<(bool, Value), ForgeError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "ulrich-forge", version, about = "Exact matrix factorizations, Veronese lifts and double-cover certificates")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Field: q, qi, fp:<p> or fp2:<p>
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Seed for every randomized step (default 0)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Degree cap for Hilbert-function searches
    #[arg(long = "e-max", global = true)]
    e_max: Option<u32>,
    /// Scalar candidates per search step
    #[arg(long = "max-trials", global = true, default_value_t = 20)]
    max_trials: u32,
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    output: OutputFormat,
    /// Number of variables (inferred from the input when absent)
    #[arg(long, global = true)]
    nvars: Option<usize>,
    /// Read polynomials (one per line, `#` comments) after the inline ones
    #[arg(long, global = true)]
    file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Quadratic forms
    #[command(subcommand)]
    Quad(QuadCmd),
    /// Matrix factorizations A² = Q·Id
    #[command(subcommand)]
    Mf(MfCmd),
    /// Veronese pipeline for forms of even degree
    #[command(subcommand)]
    Ulrich(UlrichCmd),
    /// Hilbert function of a homogeneous ideal
    #[command(subcommand)]
    Hilbert(HilbertCmd),
    /// Smoothness of a projective hypersurface
    #[command(subcommand)]
    Smooth(SmoothCmd),
    /// Double covers of curves
    #[command(subcommand)]
    Cover(CoverCmd),
}

#[derive(Debug, Subcommand)]
enum QuadCmd {
    /// Gram matrix and rank
    Rank { polys: Vec<String> },
    /// Congruence diagonalization
    Diag { polys: Vec<String> },
    /// Sum of products Q = Σ lᵢmᵢ
    Sop { polys: Vec<String> },
    /// det(Gram(r) − α·Gram(q)) for the forms r, q
    PencilDet { polys: Vec<String> },
}

#[derive(Debug, Args)]
struct MatrixInput {
    /// Matrix JSON file with `size`, `entries` and `quadric`
    #[arg(long)]
    matrix: Option<PathBuf>,
    /// Inline matrix JSON, or a quadric to factor first
    input: Option<String>,
}

#[derive(Debug, Subcommand)]
enum MfCmd {
    /// Factor a quadric
    Build { polys: Vec<String> },
    /// Check A·A = Q·Id
    Verify(MatrixInput),
    /// Randomized check det A(ξ) = ±Q(ξ)^{size/2}
    DetCert {
        #[command(flatten)]
        input: MatrixInput,
        #[arg(long, default_value_t = 50)]
        trials: u32,
    },
}

#[derive(Debug, Subcommand)]
enum UlrichCmd {
    /// Lift, decompose and factor T² − Q. Optional extra polynomials give
    /// the decomposition as F₁ G₁ F₂ G₂ …
    Pipeline {
        polys: Vec<String>,
        /// Expected degree of the form
        #[arg(long)]
        deg: Option<u32>,
    },
    /// Upper, achieved and lower rank bounds
    Bounds {
        polys: Vec<String>,
        #[arg(long)]
        deg: Option<u32>,
    },
    /// Rewrite F = F₁G₁ + F₂G₂ with a smooth first factor and a transversal second pair
    Normalize { polys: Vec<String> },
}

#[derive(Debug, Subcommand)]
enum HilbertCmd {
    /// dim (S/J)_e
    Value {
        #[arg(long)]
        degree: u32,
        polys: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
enum SmoothCmd {
    /// Decide smoothness of F = 0
    Check { polys: Vec<String> },
}

#[derive(Debug, Subcommand)]
enum CoverCmd {
    /// Genus of a double cover
    Rh {
        #[arg(long = "h", allow_hyphen_values = true)]
        h: i64,
        #[arg(long = "d", allow_hyphen_values = true)]
        d: i64,
    },
    /// Solve r − lm − a² = h·F₁ for the polynomials F₁ r l m a
    SplitCheck { polys: Vec<String> },
    /// Transversality of two plane curves
    Transversal {
        polys: Vec<String>,
        #[arg(long, default_value_t = 8)]
        trials: u32,
    },
    /// Certificate for the genus-8 cover whose branch quadric does not split
    KeemCounterexample,
}

/// Options echoed into every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: String,
    pub field: String,
    pub seed: u64,
    pub seed_source: &'static str,
    pub e_max: Option<u32>,
    pub max_trials: u32,
    pub output: OutputFormat,
    pub nvars: Option<usize>,
}

#[derive(Debug, Serialize)]
struct Report<'a> {
    version: &'static str,
    command: &'a str,
    config: &'a RunConfig,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// Matrix input format.
#[derive(Debug, Deserialize)]
struct MatrixJson {
    size: usize,
    entries: Vec<Vec<String>>,
    quadric: String,
}

/// The result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dispatch {
    pub code: i32,
    pub output: String,
}

/// Runs one command; `argv[0]` is the program name. The seed comes from
/// [`SEED_ENV`] when set, else `--seed`, else 0.
pub fn dispatch<I, S>(argv: I) -> Dispatch
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    dispatch_with_env(argv, std::env::var(SEED_ENV).ok())
}

/// [`dispatch`] with the seed override passed explicitly.
pub fn dispatch_with_env<I, S>(argv: I, env_seed: Option<String>) -> Dispatch
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return Dispatch { code, output: e.to_string() };
        }
    };
    let g = &cli.global;
    let (seed, seed_source) = match (env_seed.as_deref().map(str::trim), g.seed) {
        (Some(s), _) if !s.is_empty() => match s.parse() {
            Ok(v) => (v, "env"),
            Err(_) => {
                return Dispatch { code: EXIT_USAGE, output: format!("error: {SEED_ENV}={s:?} is not a 64-bit seed\n") }
            }
        },
        (_, Some(v)) => (v, "flag"),
        _ => (0, "default"),
    };
    let config = RunConfig {
        command: command_name(&cli.command).to_string(),
        field: g.field.clone(),
        seed,
        seed_source,
        e_max: g.e_max,
        max_trials: g.max_trials,
        output: g.output,
        nvars: g.nvars,
    };
    let (code, status, result, error) = match run(&cli, &config) {
        Ok((true, v)) => (EXIT_OK, "ok", Some(v), None),
        Ok((false, v)) => (EXIT_FAILED, "failed", Some(v), None),
        Err(e) => (e.exit_code(), "error", None, Some(e.to_string())),
    };
    let report = Report { version: VERSION, command: &config.command, config: &config, status, result, error };
    let output = match g.output {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
            s.push('\n');
            s
        }
        OutputFormat::Text => render::text(&serde_json::to_value(&report).expect("reports serialize")),
    };
    Dispatch { code, output }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Quad(QuadCmd::Rank { .. }) => "quad rank",
        Command::Quad(QuadCmd::Diag { .. }) => "quad diag",
        Command::Quad(QuadCmd::Sop { .. }) => "quad sop",
        Command::Quad(QuadCmd::PencilDet { .. }) => "quad pencil-det",
        Command::Mf(MfCmd::Build { .. }) => "mf build",
        Command::Mf(MfCmd::Verify(_)) => "mf verify",
        Command::Mf(MfCmd::DetCert { .. }) => "mf det-cert",
        Command::Ulrich(UlrichCmd::Pipeline { .. }) => "ulrich pipeline",
        Command::Ulrich(UlrichCmd::Bounds { .. }) => "ulrich bounds",
        Command::Ulrich(UlrichCmd::Normalize { .. }) => "ulrich normalize",
        Command::Hilbert(HilbertCmd::Value { .. }) => "hilbert value",
        Command::Smooth(SmoothCmd::Check { .. }) => "smooth check",
        Command::Cover(CoverCmd::Rh { .. }) => "cover rh",
        Command::Cover(CoverCmd::SplitCheck { .. }) => "cover split-check",
        Command::Cover(CoverCmd::Transversal { .. }) => "cover transversal",
        Command::Cover(CoverCmd::KeemCounterexample) => "cover keem-counterexample",
    }
}

struct Ctx<'a> {
    field: Field,
    config: &'a RunConfig,
    file: Option<&'a PathBuf>,
}

impl Ctx<'_> {
    fn read(path: &PathBuf) -> Result<String, ForgeError> {
        std::fs::read_to_string(path)
            .map_err(|e| ForgeError::Io { path: path.display().to_string(), message: e.to_string() })
    }

    /// Inline polynomials followed by those from `--file`, all in one arity.
    fn polys(&self, inline: &[String]) -> Result<Vec<Poly>, ForgeError> {
        let mut sources: Vec<String> = inline.to_vec();
        if let Some(path) = self.file {
            let text = Self::read(path)?;
            sources.extend(
                text.lines()
                    .map(|l| l.split('#').next().unwrap_or("").trim().to_string())
                    .filter(|l| !l.is_empty()),
            );
        }
        self.parse_all(&sources)
    }

    fn parse_all(&self, sources: &[String]) -> Result<Vec<Poly>, ForgeError> {
        let n = match self.config.nvars {
            Some(n) => n,
            None => sources
                .iter()
                .map(|s| ulrich_core::parse_poly(self.field, None, s).map(|p| p.nvars()))
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .max()
                .unwrap_or(1),
        };
        Ok(sources
            .iter()
            .map(|s| ulrich_core::parse_poly(self.field, Some(n), s))
            .collect::<Result<_, _>>()?)
    }

    fn exactly(&self, inline: &[String], count: usize, what: &str) -> Result<Vec<Poly>, ForgeError> {
        let ps = self.polys(inline)?;
        if ps.len() != count {
            return Err(ForgeError::Usage(format!("expected {count} polynomial(s) ({what}), got {}", ps.len())));
        }
        Ok(ps)
    }

    fn at_least(&self, inline: &[String], count: usize, what: &str) -> Result<Vec<Poly>, ForgeError> {
        let ps = self.polys(inline)?;
        if ps.len() < count {
            return Err(ForgeError::Usage(format!("expected at least {count} polynomial(s) ({what}), got {}", ps.len())));
        }
        Ok(ps)
    }

    /// A matrix from `--matrix`, inline JSON, or a quadric to factor.
    fn matrix(&self, input: &MatrixInput) -> Result<MatrixFactorization, ForgeError> {
        let json = match (&input.matrix, &input.input) {
            (Some(path), None) => Self::read(path)?,
            (None, Some(s)) if s.trim_start().starts_with('{') => s.clone(),
            (None, Some(s)) => {
                let [q] = self.exactly(std::slice::from_ref(s), 1, "quadric")?.try_into().unwrap();
                return Ok(build_clifford_factorization(&sum_of_products(&gram_from_poly(&q)?)?)?);
            }
            (Some(_), Some(_)) => return Err(ForgeError::Usage("give either --matrix or an inline input".into())),
            (None, None) => return Err(ForgeError::Usage("missing matrix input".into())),
        };
        let m: MatrixJson = serde_json::from_str(&json)?;
        if m.entries.len() != m.size {
            return Err(ForgeError::Usage(format!("size {} but {} rows", m.size, m.entries.len())));
        }
        let mut sources = vec![m.quadric.clone()];
        sources.extend(m.entries.iter().flatten().cloned());
        let mut parsed = self.parse_all(&sources)?.into_iter();
        let quadric = parsed.next().unwrap();
        let entries = m.entries.iter().map(|row| parsed.by_ref().take(row.len()).collect()).collect();
        Ok(MatrixFactorization::from_entries(entries, quadric)?)
    }
}

fn check_degree(f: &Poly, deg: Option<u32>) -> Result<(), ForgeError> {
    if let Some(expected) = deg {
        let found = f.homogeneous_degree()?;
        if found != expected {
            return Err(ForgeError::Usage(format!("--deg {expected} but the form has degree {found}")));
        }
    }
    Ok(())
}

/// `F` followed by an optional decomposition `F₁ G₁ F₂ G₂ …`.
fn form_and_decomposition(ps: Vec<Poly>) -> Result<(Poly, Option<FormDecomposition>), ForgeError> {
    let mut it = ps.into_iter();
    let f = it.next().ok_or_else(|| ForgeError::Usage("missing form".into()))?;
    let rest: Vec<Poly> = it.collect();
    if rest.is_empty() {
        return Ok((f, None));
    }
    if rest.len() % 2 == 1 {
        return Err(ForgeError::Usage("decomposition factors must come in pairs".into()));
    }
    let summands = rest.chunks(2).map(|c| (c[0].clone(), c[1].clone())).collect();
    let decomp = FormDecomposition::new(f.clone(), summands)?;
    Ok((f, Some(decomp)))
}

fn default_decomposition(f: &Poly) -> Result<FormDecomposition, ForgeError> {
    let deg = f.homogeneous_degree()?;
    if deg == 0 || deg % 2 == 1 {
        return Err(ForgeError::Usage(format!("form degree {deg} is not a positive even number")));
    }
    Ok(decompose_form(f, &VeroneseMap::new(f.nvars() - 1, deg / 2)?)?)
}

fn run(cli: &Cli, config: &RunConfig) -> Outcome {
    let field = Field::parse(&cli.global.field)?;
    let ctx = Ctx { field, config, file: cli.global.file.as_ref() };
    let seed = config.seed;
    match &cli.command {
        Command::Quad(cmd) => quad(&ctx, cmd),
        Command::Mf(MfCmd::Build { polys }) => {
            let [q] = ctx.exactly(polys, 1, "quadric")?.try_into().unwrap();
            let rec = gram_from_poly(&q)?;
            let sop = sum_of_products(&rec)?;
            let mf = build_clifford_factorization(&sop)?;
            let mut v = render::factorization(&mf, true);
            v["pairs"] = render::pairs(&sop.pairs);
            Ok((true, v))
        }
        Command::Mf(MfCmd::Verify(input)) => {
            let mf = ctx.matrix(input)?;
            let ok = verify_factorization(&mf);
            Ok((ok, render::factorization(&mf, ok)))
        }
        Command::Mf(MfCmd::DetCert { input, trials }) => {
            let mf = ctx.matrix(input)?;
            let cert = determinant_certificate(&mf, *trials, seed)?;
            Ok((
                cert.holds,
                json!({
                    "size": mf.size,
                    "quadric": mf.quadric.to_string(),
                    "trials": trials,
                    "checked": cert.checked,
                    "skipped": cert.skipped,
                    "sign": cert.sign.as_ref().map(render::scalar),
                    "holds": cert.holds,
                }),
            ))
        }
        Command::Ulrich(UlrichCmd::Pipeline { polys, deg }) => {
            let (f, decomp) = form_and_decomposition(ctx.at_least(polys, 1, "form")?)?;
            check_degree(&f, *deg)?;
            let decomp = match decomp {
                Some(d) => d,
                None => default_decomposition(&f)?,
            };
            let d = f.homogeneous_degree()? / 2;
            let vmap = VeroneseMap::new(f.nvars() - 1, d)?;
            let lift = lift_form(&f, &vmap)?;
            let cover = double_cover_quadric(&lift)?;
            let pres = ulrich_presentation(&f, Some(decomp.clone()))?;
            let verified = verify_factorization(&pres.factorization);
            let report = rank_bounds(&f, &decomp, config.e_max)?;
            let names = ulrich_core::poly::default_names(f.nvars());
            let mut coordinates: Vec<String> =
                vmap.basis.iter().map(|m| Poly::term(field, m.clone(), field.one()).to_string()).collect();
            coordinates.push("T".into());
            let mut pull_names = names.clone();
            pull_names.push("T".into());
            let pullbacks: Vec<Vec<String>> = pres
                .pullbacks
                .iter()
                .map(|row| row.iter().map(|p| p.display_with(&pull_names).to_string()).collect())
                .collect();
            Ok((
                verified,
                json!({
                    "form": f.to_string(),
                    "n": vmap.n,
                    "d": d,
                    "target_dim": vmap.target_dim(),
                    "coordinates": coordinates,
                    "lift": render::quadric(&lift.q),
                    "double_cover": render::quadric(&cover),
                    "decomposition": render::decomposition(&decomp),
                    "case": render::case(pres.case),
                    "factorization": render::factorization(&pres.factorization, verified),
                    "pullbacks": pullbacks,
                    "rank_report": render::rank_report(&report),
                }),
            ))
        }
        Command::Ulrich(UlrichCmd::Bounds { polys, deg }) => {
            let (f, decomp) = form_and_decomposition(ctx.at_least(polys, 1, "form")?)?;
            check_degree(&f, *deg)?;
            let decomp = match decomp {
                Some(d) => d,
                None => default_decomposition(&f)?,
            };
            let report = rank_bounds(&f, &decomp, config.e_max)?;
            Ok((
                true,
                json!({
                    "form": f.to_string(),
                    "decomposition": render::decomposition(&decomp),
                    "rank_report": render::rank_report(&report),
                }),
            ))
        }
        Command::Ulrich(UlrichCmd::Normalize { polys }) => {
            let ps = ctx.exactly(polys, 5, "F F1 G1 F2 G2")?;
            let (f, decomp) = form_and_decomposition(ps)?;
            let norm = normalize_plane_decomposition(&f, &decomp.unwrap(), seed, config.max_trials)?;
            let transversality = norm.decomposition.certificates.transversality.as_ref().map(render::transversality);
            Ok((
                norm.success,
                json!({
                    "success": norm.success,
                    "alpha": norm.alpha.as_ref().map(render::scalar),
                    "beta": norm.beta.as_ref().map(render::scalar),
                    "trials": norm.trials,
                    "decomposition": render::decomposition(&norm.decomposition),
                    "transversality": transversality,
                    "failure": norm.failure,
                }),
            ))
        }
        Command::Hilbert(HilbertCmd::Value { degree, polys }) => {
            let gens = ctx.at_least(polys, 1, "generators")?;
            let nvars = gens[0].nvars();
            let sys = GradedSystem::new(field, nvars, gens.clone())?;
            Ok((
                true,
                json!({
                    "generators": render::polys(&gens),
                    "nvars": nvars,
                    "degree": degree,
                    "value": sys.hilbert_value(*degree),
                    "graded_dimension": graded_dimension(nvars, *degree),
                }),
            ))
        }
        Command::Smooth(SmoothCmd::Check { polys }) => {
            let [f] = ctx.exactly(polys, 1, "form")?.try_into().unwrap();
            let s = is_smooth_hypersurface(&f, config.e_max)?;
            let degree = f.homogeneous_degree()?;
            let mut v = render::smoothness(&s);
            v["form"] = render::poly(&f);
            v["degree"] = json!(degree);
            v["smooth"] = json!(s == Smoothness::Smooth);
            v["degree_bound"] = json!(smoothness_bound(f.nvars(), degree));
            Ok((s == Smoothness::Smooth, v))
        }
        Command::Cover(cmd) => cover(&ctx, cmd),
    }
}

fn quad(ctx: &Ctx, cmd: &QuadCmd) -> Outcome {
    match cmd {
        QuadCmd::Rank { polys } => {
            let [q] = ctx.exactly(polys, 1, "quadric")?.try_into().unwrap();
            let rec = gram_from_poly(&q)?;
            let mut v = render::quadric(&rec);
            v["nonsingular"] = json!(rec.is_nonsingular());
            v["singular_point"] = render::point(rec.singular_point().as_ref());
            Ok((true, v))
        }
        QuadCmd::Diag { polys } => {
            let [q] = ctx.exactly(polys, 1, "quadric")?.try_into().unwrap();
            let rec = gram_from_poly(&q)?;
            let diag = diagonalize(&rec)?;
            let mut v = render::quadric(&rec);
            v["p"] = render::matrix(&diag.p);
            v["d"] = render::scalars(&diag.d);
            v["lambdas"] = render::polys(&diag.lambdas);
            Ok((true, v))
        }
        QuadCmd::Sop { polys } => {
            let [q] = ctx.exactly(polys, 1, "quadric")?.try_into().unwrap();
            let rec = gram_from_poly(&q)?;
            let sop = sum_of_products(&rec)?;
            let mut v = render::quadric(&rec);
            v["pairing_field"] = json!(sop.field.to_string());
            v["pairs"] = render::pairs(&sop.pairs);
            v["square_term"] = json!(sop.square_term);
            Ok((true, v))
        }
        QuadCmd::PencilDet { polys } => {
            let [r, q] = ctx.exactly(polys, 2, "r q")?.try_into().unwrap();
            let det = pencil_determinant(&gram_from_poly(&r)?, &gram_from_poly(&q)?)?;
            let alpha = ["alpha".to_string()];
            Ok((
                true,
                json!({
                    "r": r.to_string(),
                    "q": q.to_string(),
                    "determinant": det.display_with(&alpha).to_string(),
                    "coefficients": render::scalars(&univariate_coefficients(&det)),
                    "constant": det.is_constant(),
                }),
            ))
        }
    }
}

fn cover(ctx: &Ctx, cmd: &CoverCmd) -> Outcome {
    let seed = ctx.config.seed;
    match cmd {
        CoverCmd::Rh { h, d } => {
            let p = riemann_hurwitz(*h, *d)?;
            Ok((true, render::profile(&p)))
        }
        CoverCmd::SplitCheck { polys } => {
            let [f1, r, l, m, a] = ctx.exactly(polys, 5, "F1 r l m a")?.try_into().unwrap();
            Ok(match check_branch_splitting(&f1, &r, &l, &m, &a)? {
                SplitOutcome::Split(s) => (true, json!({ "split": true, "witness": s.witness.to_string() })),
                SplitOutcome::NoWitness => (false, json!({ "split": false, "witness": null })),
            })
        }
        CoverCmd::Transversal { polys, trials } => {
            let [f, g] = ctx.exactly(polys, 2, "F G")?.try_into().unwrap();
            let t = transversality_check(&f, &g, seed, *trials)?;
            Ok((t.is_transversal(), render::transversality(&t)))
        }
        CoverCmd::KeemCounterexample => {
            let cert = keem_counterexample_certificate(ctx.field, seed)?;
            Ok((cert.valid, render::keem(&cert)))
        }
    }
}
