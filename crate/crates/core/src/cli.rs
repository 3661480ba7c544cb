//! The `gkm` command-line driver.
//!
//! Every command prints canonical JSON to standard output (or to the `-o`
//! path). Exit codes: 0 on success, 1 when a validation or mathematical check
//! fails (the report is still emitted), 2 on malformed input or usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::algebra::{LaurentPoly, Weight};
use crate::bundle::{expand_in_fiber_basis, extend_invariant, validate_bundle, GkmBundle};
use crate::flag::{build_flag_bundle_with_cap, build_gp_graph_with_cap, invariant_basis, RootSystem, RootType};
use crate::gkm::{is_equivariant_class, validate_graph, EquivariantClass, GkmGraph};
use crate::json::{emit, tensor_from_json, FromJson, ToJson};
use crate::kostant::{kk_evaluate, kk_property_check, KkContext};
use crate::projective::{build_complete_gkm, coordinates_in_fg, dual_bases_fg, expand_in_nu, integrate};
use crate::{Error, Result, DEFAULT_GROUP_CAP};

/// Environment variable overriding the group closure cap.
pub const MAX_GROUP_ENV: &str = "GKM_MAX_GROUP";

#[derive(Parser, Debug)]
#[command(name = "gkm", version, about = "Exact equivariant K-theory of GKM graphs")]
struct Cli {
    /// Render the result as a readable table instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    /// Write the result to this path (a directory for `flag basis`).
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a GKM graph or bundle.
    #[command(subcommand)]
    Build(BuildCmd),
    /// Operations on GKM graphs.
    #[command(subcommand)]
    Graph(GraphCmd),
    /// Operations on equivariant classes.
    #[command(subcommand)]
    Class(ClassCmd),
    /// Integrate a cohomology vertex map on CP^{n-1}.
    Integrate { class: PathBuf },
    /// The dual bases f and g of the cohomology of CP^{n-1}.
    DualBasis {
        #[arg(long)]
        n: usize,
    },
    /// Coordinates of a cohomology class of CP^{n-1} in the f and g bases.
    Coords { class: PathBuf },
    /// Coefficients of a K-class of CP^{n-1} in the powers of nu.
    ExpandNu { class: PathBuf },
    /// Operations on GKM fiber bundles.
    #[command(subcommand)]
    Bundle(BundleCmd),
    /// Flag manifolds G/P.
    #[command(subcommand)]
    Flag(FlagCmd),
    /// The Kostant-Kumar tensor model.
    #[command(subcommand)]
    Kk(KkCmd),
}

#[derive(Subcommand, Debug)]
enum BuildCmd {
    /// The complete graph of CP^{n-1}.
    Cpn {
        #[arg(long)]
        n: usize,
    },
    /// The coset graph of G/P.
    Flag(RootArgs),
    /// The bundle G/B -> G/P.
    Bundle(RootArgs),
}

#[derive(Subcommand, Debug)]
enum GraphCmd {
    /// Check the GKM axioms and report findings.
    Validate { graph: PathBuf },
}

#[derive(Subcommand, Debug)]
enum ClassCmd {
    /// Decide whether a vertex map is a class on the graph.
    Check { graph: PathBuf, class: PathBuf },
    /// Sum of two classes.
    Add { graph: PathBuf, f: PathBuf, g: PathBuf },
    /// Product of two classes.
    Mul { graph: PathBuf, f: PathBuf, g: PathBuf },
}

#[derive(Args, Debug)]
struct BundleArg {
    #[arg(long)]
    bundle: PathBuf,
}

#[derive(Subcommand, Debug)]
enum BundleCmd {
    /// Check the bundle conditions and report findings.
    Validate(BundleArg),
    /// The fiber over a base vertex.
    Fiber {
        #[command(flatten)]
        bundle: BundleArg,
        #[arg(long)]
        at: String,
    },
    /// The holonomy group of the fiber over a base vertex.
    Holonomy {
        #[command(flatten)]
        bundle: BundleArg,
        #[arg(long)]
        at: String,
    },
    /// Extend a holonomy invariant fiber class to the total space.
    Extend {
        #[command(flatten)]
        bundle: BundleArg,
        #[arg(long)]
        at: String,
        #[arg(long)]
        class: PathBuf,
    },
    /// Coefficients of a class in a basis of fiberwise restrictions.
    Expand {
        #[command(flatten)]
        bundle: BundleArg,
        #[arg(long)]
        class: PathBuf,
        #[arg(long, num_args = 1.., required = true)]
        basis: Vec<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum FlagCmd {
    /// The coset graph of G/P.
    Build(RootArgs),
    /// The invariant basis of the flag tower.
    Basis {
        #[arg(long = "type", value_enum)]
        kind: Kind,
        #[arg(long)]
        n: usize,
    },
    /// The bundle G/B -> G/P.
    Bundle(RootArgs),
}

#[derive(Subcommand, Debug)]
enum KkCmd {
    /// Evaluate a tensor on the coset graph.
    Eval {
        #[command(flatten)]
        roots: RootArgs,
        #[arg(long)]
        tensor: PathBuf,
    },
    /// Check the ring morphism and invariance properties on random tensors.
    Check {
        #[command(flatten)]
        roots: RootArgs,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "custom")]
    Custom,
}

#[derive(Args, Debug)]
struct RootArgs {
    #[arg(long = "type", value_enum)]
    kind: Kind,
    /// Rank of the root system (types A and C).
    #[arg(long)]
    rank: Option<usize>,
    /// JSON array of simple roots (custom type).
    #[arg(long)]
    roots: Option<PathBuf>,
    /// 1-based simple root indices spanning the parabolic subgroup.
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    sigma: Vec<usize>,
}

enum Outcome {
    Report { value: Value, ok: bool },
    Files { files: Vec<(String, Value)>, summary: Value },
}

fn done(value: Value) -> Outcome {
    Outcome::Report { value, ok: true }
}

fn read_value(path: &Path) -> Result<Value> {
    Ok(serde_json::from_str(&fs::read_to_string(path)?)?)
}

fn read<T: FromJson>(path: &Path) -> Result<T> {
    T::from_json(&read_value(path)?)
}

fn group_cap() -> Result<usize> {
    match std::env::var(MAX_GROUP_ENV) {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{MAX_GROUP_ENV} must be a positive integer, got `{s}`"))),
        Err(_) => Ok(DEFAULT_GROUP_CAP),
    }
}

impl RootArgs {
    fn root_system(&self) -> Result<RootSystem> {
        match self.kind {
            Kind::Custom => {
                let path = self.roots.as_ref().ok_or_else(|| Error::InvalidArgument("custom type needs --roots".into()))?;
                let simple = match read_value(path)? {
                    Value::Array(xs) => xs.iter().map(Weight::from_json).collect::<Result<Vec<_>>>()?,
                    _ => return Err(Error::Malformed("simple roots must be an array of weights".into())),
                };
                RootSystem::custom(simple)
            }
            kind => {
                let n = self.rank.ok_or_else(|| Error::InvalidArgument("--rank is required".into()))?;
                RootSystem::new(root_type(kind), n)
            }
        }
    }

    fn sigma(&self) -> Result<Vec<usize>> {
        self.sigma
            .iter()
            .map(|&i| {
                i.checked_sub(1).ok_or_else(|| Error::InvalidArgument("simple root indices start at 1".into()))
            })
            .collect()
    }
}

fn root_type(kind: Kind) -> RootType {
    match kind {
        Kind::A => RootType::A,
        Kind::C => RootType::C,
        Kind::Custom => RootType::Custom,
    }
}

fn build_flag(args: &RootArgs) -> Result<Outcome> {
    let g = build_gp_graph_with_cap(&args.root_system()?, &args.sigma()?, group_cap()?)?;
    Ok(done(g.graph().to_json()))
}

fn build_bundle(args: &RootArgs) -> Result<Outcome> {
    let fb = build_flag_bundle_with_cap(&args.root_system()?, &args.sigma()?, group_cap()?)?;
    Ok(done(fb.bundle.to_json()))
}

fn kk_context(args: &RootArgs) -> Result<KkContext> {
    Ok(KkContext::from_graph(build_gp_graph_with_cap(&args.root_system()?, &args.sigma()?, group_cap()?)?))
}

fn cpn_for(class: &EquivariantClass) -> Result<crate::projective::ProjectiveModel> {
    build_complete_gkm(class.rank())
}

fn class_op(graph: &Path, f: &Path, g: &Path, op: fn(&EquivariantClass, &EquivariantClass) -> Result<EquivariantClass>) -> Result<Outcome> {
    let graph: GkmGraph = read(graph)?;
    let (f, g): (EquivariantClass, EquivariantClass) = (read(f)?, read(g)?);
    for (name, c) in [("first", &f), ("second", &g)] {
        let report = is_equivariant_class(&graph, c)?;
        if !report.is_class {
            let mut value = report.to_json();
            value["argument"] = json!(name);
            return Ok(Outcome::Report { value, ok: false });
        }
    }
    Ok(done(op(&f, &g)?.to_json()))
}

fn execute(command: &Command) -> Result<Outcome> {
    match command {
        Command::Build(BuildCmd::Cpn { n }) => Ok(done(build_complete_gkm(*n)?.graph.to_json())),
        Command::Build(BuildCmd::Flag(args)) | Command::Flag(FlagCmd::Build(args)) => build_flag(args),
        Command::Build(BuildCmd::Bundle(args)) | Command::Flag(FlagCmd::Bundle(args)) => build_bundle(args),
        Command::Graph(GraphCmd::Validate { graph }) => {
            let report = validate_graph(&read(graph)?);
            Ok(Outcome::Report { ok: report.is_valid(), value: report.to_json() })
        }
        Command::Class(ClassCmd::Check { graph, class }) => {
            let report = is_equivariant_class(&read(graph)?, &read(class)?)?;
            Ok(Outcome::Report { ok: report.is_class, value: report.to_json() })
        }
        Command::Class(ClassCmd::Add { graph, f, g }) => class_op(graph, f, g, EquivariantClass::add),
        Command::Class(ClassCmd::Mul { graph, f, g }) => class_op(graph, f, g, EquivariantClass::mul),
        Command::Integrate { class } => {
            let f: EquivariantClass = read(class)?;
            let integral = integrate(&cpn_for(&f)?, &f)?;
            Ok(done(integral.to_json()))
        }
        Command::DualBasis { n } => {
            let (f, g) = dual_bases_fg(&build_complete_gkm(*n)?)?;
            Ok(done(json!({"f": f.to_json(), "g": g.to_json()})))
        }
        Command::Coords { class } => {
            let h: EquivariantClass = read(class)?;
            let (a, b) = coordinates_in_fg(&cpn_for(&h)?, &h)?;
            Ok(done(json!({"f": a.to_json(), "g": b.to_json()})))
        }
        Command::ExpandNu { class } => {
            let g: EquivariantClass = read(class)?;
            let coeffs = expand_in_nu(&cpn_for(&g)?, &g)?;
            Ok(done(json!({"coefficients": coeffs.to_json()})))
        }
        Command::Bundle(cmd) => bundle_command(cmd),
        Command::Flag(FlagCmd::Basis { kind, n }) => {
            let basis = invariant_basis(root_type(*kind), *n)?;
            let files: Vec<(String, Value)> = basis
                .indices()
                .iter()
                .zip(basis.classes())
                .map(|(index, c)| {
                    let name = index.iter().map(i64::to_string).collect::<Vec<_>>().join("_");
                    (format!("C_{name}.json"), c.to_json())
                })
                .collect();
            let summary = json!({
                "type": root_type(*kind).to_string(),
                "n": n,
                "indices": basis.indices(),
                "classes": basis.classes().to_json(),
            });
            Ok(Outcome::Files { files, summary })
        }
        Command::Kk(KkCmd::Eval { roots, tensor }) => {
            let ctx = kk_context(roots)?;
            let t = tensor_from_json(&ctx, &read_value(tensor)?)?;
            Ok(done(kk_evaluate(&ctx, &t)?.to_json()))
        }
        Command::Kk(KkCmd::Check { roots, samples, seed }) => {
            let report = kk_property_check(&kk_context(roots)?, *samples, *seed)?;
            Ok(Outcome::Report { ok: report.all_pass(), value: report.to_json() })
        }
    }
}

fn bundle_command(cmd: &BundleCmd) -> Result<Outcome> {
    match cmd {
        BundleCmd::Validate(b) => {
            let report = validate_bundle(&read::<GkmBundle>(&b.bundle)?);
            Ok(Outcome::Report { ok: report.is_valid(), value: report.to_json() })
        }
        BundleCmd::Fiber { bundle, at } => Ok(done(read::<GkmBundle>(&bundle.bundle)?.fiber_subgraph(at)?.to_json())),
        BundleCmd::Holonomy { bundle, at } => {
            let b: GkmBundle = read(&bundle.bundle)?;
            Ok(done(b.holonomy_group_with_cap(at, group_cap()?)?.to_json()))
        }
        BundleCmd::Extend { bundle, at, class } => {
            let b: GkmBundle = read(&bundle.bundle)?;
            Ok(done(extend_invariant(&b, at, &read(class)?)?.to_json()))
        }
        BundleCmd::Expand { bundle, class, basis } => {
            let b: GkmBundle = read(&bundle.bundle)?;
            let basis = basis.iter().map(|p| read(p)).collect::<Result<Vec<EquivariantClass>>>()?;
            let coeffs = expand_in_fiber_basis(&b, &read(class)?, &basis)?;
            Ok(done(json!({"coefficients": coeffs.to_json()})))
        }
    }
}

/// Exit code for an error: 1 when the input is well formed but fails a
/// mathematical requirement, 2 otherwise.
fn error_code(e: &Error) -> i32 {
    match e {
        Error::NotAClass(..)
        | Error::NotInvariant(_)
        | Error::NotABasis(_)
        | Error::NotInRing(_)
        | Error::CapExceeded(_) => 1,
        _ => 2,
    }
}

fn is_poly(map: &serde_json::Map<String, Value>) -> bool {
    map.len() == 2 && map.contains_key("rank") && map.contains_key("terms")
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(m) if is_poly(m) => LaurentPoly::from_json(v).ok().map(|p| p.to_string()),
        Value::Array(xs) => xs
            .iter()
            .map(|x| match x {
                Value::Array(_) | Value::Object(_) => None,
                _ => scalar(x),
            })
            .collect::<Option<Vec<_>>>()
            .map(|s| format!("[{}]", s.join(", "))),
        Value::Object(_) => None,
    }
}

fn render(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            let width = m.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, x) in m {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}{k:<width$}  {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{k}").unwrap();
                        render(out, x, indent + 1);
                    }
                }
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}{i:>3}  {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}{i:>3}").unwrap();
                        render(out, x, indent + 1);
                    }
                }
            }
        }
        _ => writeln!(out, "{pad}{}", scalar(v).unwrap_or_default()).unwrap(),
    }
}

/// Readable rendering of a JSON result: one row per field, polynomials in
/// algebraic notation.
pub fn render_human(v: &Value) -> String {
    let mut out = String::new();
    render(&mut out, v, 0);
    out
}

fn format_value(v: &Value, human: bool) -> String {
    if human {
        render_human(v)
    } else {
        emit(v)
    }
}

fn write_output(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn deliver(cli: &Cli, outcome: Outcome, stdout: &mut dyn Write) -> Result<i32> {
    match outcome {
        Outcome::Report { value, ok } => {
            write_output(cli.output.as_deref(), &format_value(&value, cli.human), stdout)?;
            Ok(if ok { 0 } else { 1 })
        }
        Outcome::Files { files, summary } => {
            match &cli.output {
                Some(dir) => {
                    fs::create_dir_all(dir)?;
                    for (name, value) in &files {
                        fs::write(dir.join(name), emit(value))?;
                    }
                    let listing = json!({"files": files.iter().map(|(n, _)| n.clone()).collect::<Vec<_>>()});
                    write_output(None, &format_value(&listing, cli.human), stdout)?;
                }
                None => write_output(None, &format_value(&summary, cli.human), stdout)?,
            }
            Ok(0)
        }
    }
}

/// Runs the CLI on `args` (including the program name), writing results to
/// the given streams, and returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = execute(&cli.command).and_then(|outcome| deliver(&cli, outcome, stdout));
    match result {
        Ok(code) => code,
        Err(e) => {
            let code = error_code(&e);
            if code == 1 {
                let value = json!({"error": e.to_string()});
                if let Err(w) = write_output(cli.output.as_deref(), &format_value(&value, cli.human), stdout) {
                    let _ = writeln!(stderr, "gkm: {w}");
                }
            }
            let _ = writeln!(stderr, "gkm: {e}");
            code
        }
    }
}

/// Runs the CLI with the process arguments and standard streams.
pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
