//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad usage or input,
//! 3 external data missing.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};
use synchro_core::chartab::{CharacterTable, StructureConstants};
use synchro_core::diagonal::{certify, DiagonalGraph};
use synchro_core::matrep::{fingerprint, BitMatrix, WordEnvironment};
use synchro_core::orbitals::{
    collapsed_adjacency, intersection_algebra_expand, orbital_decomposition, wilcox_check, CollapsedAdjacency,
};
use synchro_core::witness::{
    factorisation_pipeline, factorisation_to_partition, group_elements, left_right_group, right_regular_elements,
    sync_witness_to_sep, verify_sep_witness, verify_sync_witness, ExactFactorisation, SepWitness, SyncWitness,
};
use synchro_core::{
    find_complete_mapping, hall_paige_predicate, CompleteMapping, FiniteGroup, Permutation, SearchOptions,
    SearchOutcome,
};

use crate::actions::resolve_action;
use crate::formats::ctbl::load_character_table;
use crate::formats::grid::{parse_grid, write_grid};
use crate::formats::group::{parse_group, parse_permutations, resolve_group};
use crate::formats::orbital_table::{parse_orbital_table, OrbitalRow};
use crate::formats::sets::{parse_mapping, parse_partition, parse_set, write_mapping};
use crate::formats::FormatError;
use crate::j4;
use crate::manifest::{write_manifest, Session};
use crate::random::{random_cases, DEFAULT_SEED, MAX_ORDER};
use crate::reproduce::{self, J4Context};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exit {
    Ok = 0,
    Verification = 1,
    Usage = 2,
    MissingData = 3,
}

#[derive(Debug)]
pub struct Failure {
    pub exit: Exit,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            exit: Exit::Usage,
            message: message.into(),
        }
    }

    fn verification(message: impl Into<String>) -> Self {
        Self {
            exit: Exit::Verification,
            message: message.into(),
        }
    }

    fn missing(message: impl Into<String>) -> Self {
        Self {
            exit: Exit::MissingData,
            message: message.into(),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::usage(e.to_string())
    }
}

#[derive(Debug, Parser)]
#[command(name = "synchro", version, about = "Synchronization and separation witnesses, orbitals and structure constants")]
pub struct Cli {
    /// Seed for randomized runs.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Worker thread cap.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Also write the result as JSON.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Write a run manifest with input and output digests.
    #[arg(long, global = true, value_name = "PATH")]
    pub manifest: Option<PathBuf>,
    /// Directory holding external data files.
    #[arg(long, global = true, value_name = "DIR")]
    pub data_dir: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Search for a complete mapping and compare with the Hall-Paige predicate.
    CompleteMapping(CompleteMappingArgs),
    /// Colourings of the diagonal graph D(T, n).
    Diagonal(DiagonalArgs),
    /// Verify and transfer witnesses.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Suborbits, collapsed adjacency matrices and intersection algebras.
    Orbitals(OrbitalsArgs),
    /// Matrix-group computations over a prime field.
    Matrep(MatrepArgs),
    /// Character tables and class structure constants.
    Chartab(ChartabArgs),
    /// Recompute the J4 reference results.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Args)]
pub struct CompleteMappingArgs {
    /// Group table file or catalog name.
    #[arg(long)]
    pub group: String,
    /// Maximum number of search nodes.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Write the mapping found as JSON.
    #[arg(long, value_name = "PATH")]
    pub emit_mapping: Option<PathBuf>,
    /// Disable the abelianisation sum pruning.
    #[arg(long)]
    pub no_pruning: bool,
}

#[derive(Debug, Args)]
pub struct DiagonalArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub n: usize,
    #[arg(long, conflicts_with = "color_odd")]
    pub color_even: bool,
    #[arg(long)]
    pub color_odd: bool,
    /// Complete mapping JSON for the odd colouring; searched for when absent.
    #[arg(long, value_name = "PATH")]
    pub phi: Option<PathBuf>,
    /// Check the colouring on every edge and the clique on every pair.
    #[arg(long)]
    pub verify: bool,
    /// Write the verified clique and colour partition as JSON.
    #[arg(long, value_name = "PATH")]
    pub emit_witness: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum WitnessCommand {
    /// Check that every image `A g` is a transversal of `P`.
    Sync(WitnessArgs),
    /// Check `|A g ∩ B| = 1` for every `g`.
    Sep(WitnessArgs),
    /// Check `H = A B` exactly and derive the partition `{A b}`.
    Factorise(WitnessArgs),
    /// Separating pair to factorisation to synchronizing witness and back.
    Pipeline(WitnessArgs),
    /// Seeded random factorisations through the pipeline.
    Random(RandomArgs),
}

#[derive(Debug, Args)]
pub struct WitnessArgs {
    /// Permutation file, group table file or catalog name.
    #[arg(long)]
    pub group: String,
    /// JSON array, inline or in a file.
    #[arg(long = "A", value_name = "SET")]
    pub a: String,
    #[arg(long = "B", value_name = "SET")]
    pub b: Option<String>,
    /// JSON array of arrays, inline or in a file.
    #[arg(long = "P", value_name = "PARTITION")]
    pub p: Option<String>,
    /// Permutation file listing every element of the acting group.
    #[arg(long, value_name = "PATH")]
    pub elements: Option<PathBuf>,
    /// Use the group generated by left and right multiplication.
    #[arg(long)]
    pub left_right: bool,
}

#[derive(Debug, Args)]
pub struct RandomArgs {
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = MAX_ORDER)]
    pub max_order: usize,
}

#[derive(Debug, Args)]
pub struct OrbitalsArgs {
    /// Permutation file, `S<n>`/`A<n>`, or a group acting regularly.
    #[arg(long, required_unless_present = "expand")]
    pub group: Option<String>,
    /// Act on unordered pairs of points.
    #[arg(long)]
    pub on_pairs: bool,
    #[arg(long, default_value_t = 0)]
    pub base: usize,
    /// Print `A_i` (1-based orbital number).
    #[arg(long, value_name = "I")]
    pub collapsed: Option<usize>,
    /// Read off the paired and diagonal entries of every `A_i`.
    #[arg(long)]
    pub wilcox: bool,
    /// Expand the intersection algebra from collapsed matrix grids.
    #[arg(long, value_name = "GRID", num_args = 1.., conflicts_with = "group")]
    pub expand: Vec<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MatrepArgs {
    /// Matrix file holding the standard generators `a`, `b`.
    #[arg(long, value_name = "PATH", conflicts_with = "meataxe")]
    pub gens: Option<PathBuf>,
    /// MeatAxe text files for `a` and `b`.
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    pub meataxe: Option<Vec<PathBuf>>,
    #[arg(long)]
    pub verify_standard: bool,
    /// Fingerprint of the pair of words.
    #[arg(long, num_args = 2, value_names = ["W1", "W2"])]
    pub fingerprint: Option<Vec<String>>,
    /// Collapsed adjacency matrix `A_i` (1-based).
    #[arg(long, value_name = "I")]
    pub collapsed: Option<usize>,
    /// Orbital representative table; defaults to the shipped J4 table.
    #[arg(long, value_name = "PATH")]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ChartabArgs {
    /// Character table JSON, or `J4` to search the data directories.
    #[arg(long)]
    pub table: String,
    #[arg(long, num_args = 3, value_names = ["C1", "C2", "C3"])]
    pub xi: Option<Vec<String>>,
    /// Unnormalised constant for any number of classes.
    #[arg(long, num_args = 1.., value_name = "CLASS", conflicts_with = "xi")]
    pub hat: Option<Vec<String>>,
    /// Multiply `xi` by this integer.
    #[arg(long)]
    pub scale: Option<u128>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    #[value(name = "table1")]
    Table1,
    #[value(name = "table2")]
    Table2,
    #[value(name = "A2")]
    A2,
    #[value(name = "A4")]
    A4,
    #[value(name = "entry-lists")]
    EntryLists,
}

impl Target {
    fn reproduces(self) -> &'static str {
        match self {
            Target::Table1 => "Table 1",
            Target::Table2 => "Table 2",
            Target::A2 => "collapsed adjacency matrix A2",
            Target::A4 => "collapsed adjacency matrix A4",
            Target::EntryLists => "entry lists (A_i)[i][i*] and (A_i)[i][i]",
        }
    }
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    pub target: Target,
    /// For entry-lists: compute A2 and A4 from the generators instead of
    /// using the shipped matrices.
    #[arg(long)]
    pub from_generators: bool,
}

/// Human-readable text plus a JSON body.
pub struct Report {
    pub text: String,
    pub result: Value,
    pub reproduces: Option<&'static str>,
    pub ok: bool,
}

impl Report {
    fn new(text: String, result: Value, ok: bool) -> Self {
        Self {
            text,
            result,
            reproduces: None,
            ok,
        }
    }
}

struct Ctx {
    session: Session,
    seed: u64,
    data_dir: Option<PathBuf>,
    warnings: Vec<String>,
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        self.session
            .read(path)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }

    fn write(&mut self, path: &Path, contents: &str) -> Result<(), Failure> {
        self.session
            .write(path, contents)
            .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }

    fn group(&mut self, spec: &str) -> Result<FiniteGroup, Failure> {
        let path = Path::new(spec);
        if path.is_file() {
            let text = self.read(path)?;
            return parse_group(&text).map_err(|e| Failure::usage(format!("{spec}: {e}")));
        }
        Ok(resolve_group(spec)?)
    }

    /// Inline JSON or a file, recorded when read from disk.
    fn json_arg(&mut self, arg: &str) -> Result<String, Failure> {
        let t = arg.trim_start();
        if t.starts_with('[') || t.starts_with('{') {
            Ok(arg.to_string())
        } else {
            self.read(Path::new(arg))
        }
    }

    fn set(&mut self, arg: &str) -> Result<Vec<usize>, Failure> {
        let text = self.json_arg(arg)?;
        parse_set(&text).map_err(|e| Failure::usage(format!("{arg}: {e}")))
    }

    fn generators(&mut self, gens: Option<&Path>, meataxe: Option<&[PathBuf]>) -> Result<(BitMatrix, BitMatrix), Failure> {
        let src = match (gens, meataxe) {
            (Some(p), _) => j4::GeneratorSource::Native(p.to_path_buf()),
            (None, Some([a, b])) => j4::GeneratorSource::MeatAxe(a.clone(), b.clone()),
            _ => j4::find_generators(self.data_dir.as_deref()).ok_or_else(|| Failure::missing(j4::missing_generators_message()))?,
        };
        for (p, want, found) in j4::digest_mismatches(&src).map_err(|e| Failure::usage(e.to_string()))? {
            self.warnings.push(format!("{} has sha256 {found}, expected {want}", p.display()));
        }
        for p in src.paths() {
            let bytes = std::fs::read(p).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
            self.session.record_input(&p.display().to_string(), &bytes);
        }
        Ok(j4::load_generators(&src)?)
    }

    fn character_table(&mut self, spec: &str) -> Result<CharacterTable, Failure> {
        let path = if spec.eq_ignore_ascii_case("J4") && !Path::new(spec).is_file() {
            j4::find_table(self.data_dir.as_deref()).ok_or_else(|| Failure::missing(j4::missing_table_message()))?
        } else {
            PathBuf::from(spec)
        };
        let text = self.read(&path)?;
        load_character_table(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
    }
}

/// Parses `argv` (program name first), runs the command and returns the
/// exit status.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Exit::Ok,
                _ => Exit::Usage,
            };
            let rendered = e.render().to_string();
            let _ = if code == Exit::Ok { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code as i32;
        }
    };
    if let Some(n) = cli.threads {
        // A global pool can only be built once per process; later calls keep the first.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let command_line: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let mut ctx = Ctx {
        session: Session::default(),
        seed: cli.seed,
        data_dir: cli.data_dir.clone(),
        warnings: Vec::new(),
    };
    let outcome = dispatch(&cli.command, &mut ctx);
    for w in &ctx.warnings {
        let _ = writeln!(err, "warning: {w}");
    }
    let code = match outcome {
        Ok(report) => {
            let _ = out.write_all(report.text.as_bytes());
            ctx.session.record_output("stdout", report.text.as_bytes());
            let mut code = if report.ok { Exit::Ok } else { Exit::Verification };
            if let Some(path) = &cli.json {
                let body = json!({
                    "command": command_line,
                    "reproduces": report.reproduces,
                    "ok": report.ok,
                    "result": report.result,
                });
                let mut text = serde_json::to_string_pretty(&body).expect("report serializes");
                text.push('\n');
                if let Err(f) = ctx.write(path, &text) {
                    let _ = writeln!(err, "error: {}", f.message);
                    code = f.exit;
                }
            }
            code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.exit
        }
    };
    if let Some(path) = &cli.manifest {
        let m = ctx.session.manifest(command_line, cli.seed);
        if let Err(e) = write_manifest(path, &m) {
            let _ = writeln!(err, "error: {}: {e}", path.display());
            return Exit::Usage as i32;
        }
    }
    code as i32
}

fn dispatch(command: &Command, ctx: &mut Ctx) -> Result<Report, Failure> {
    match command {
        Command::CompleteMapping(a) => complete_mapping(a, ctx),
        Command::Diagonal(a) => diagonal(a, ctx),
        Command::Witness(w) => witness(w, ctx),
        Command::Orbitals(a) => orbitals(a, ctx),
        Command::Matrep(a) => matrep(a, ctx),
        Command::Chartab(a) => chartab(a, ctx),
        Command::Reproduce(a) => reproduce_target(a, ctx),
    }
}

fn join<T: ToString>(items: &[T], sep: &str) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn complete_mapping(args: &CompleteMappingArgs, ctx: &mut Ctx) -> Result<Report, Failure> {
    let g = ctx.group(&args.group)?;
    let mut options = SearchOptions::default();
    if let Some(b) = args.budget {
        options.budget = b;
    }
    options.quotient_sum_pruning = !args.no_pruning;
    let predicted = hall_paige_predicate(&g);
    let outcome = find_complete_mapping(&g, options);
    let mut text = format!("group {} of order {}\n", args.group, g.order());
    text.push_str(&format!(
        "hall-paige: {}\n",
        if predicted { "complete mapping exists" } else { "no complete mapping" }
    ));
    let (status, ok) = match &outcome {
        SearchOutcome::Found { mapping, nodes } => {
            text.push_str(&format!("found after {nodes} nodes\nphi: {}\n", join(mapping.phi(), " ")));
            ("found", predicted)
        }
        SearchOutcome::NotFound { nodes } => {
            text.push_str(&format!("none exists (search exhausted after {nodes} nodes)\n"));
            ("not-found", !predicted)
        }
        SearchOutcome::BudgetExhausted { nodes } => {
            text.push_str(&format!("indeterminate: budget exhausted after {nodes} nodes\n"));
            ("budget-exhausted", false)
        }
    };
    if let (Some(path), Some(m)) = (&args.emit_mapping, outcome.mapping()) {
        ctx.write(path, &(write_mapping(m.phi()) + "\n"))?;
    }
    let result = json!({
        "group": args.group,
        "order": g.order(),
        "hall_paige": predicted,
        "outcome": status,
        "nodes": outcome.nodes(),
        "phi": outcome.mapping().map(|m| m.phi().to_vec()),
    });
    Ok(Report::new(text, result, ok))
}

fn diagonal(args: &DiagonalArgs, ctx: &mut Ctx) -> Result<Report, Failure> {
    let t = ctx.group(&args.group)?;
    let graph = DiagonalGraph::new(&t, args.n).map_err(|e| Failure::usage(e.to_string()))?;
    let odd = args.color_odd || (!args.color_even && args.n % 2 == 1);
    let coloring = if odd {
        let mapping = match &args.phi {
            Some(p) => {
                let text = ctx.read(p)?;
                let phi = parse_mapping(&text).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?;
                CompleteMapping::new(&t, phi).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?
            }
            None => match find_complete_mapping(&t, SearchOptions::default()) {
                SearchOutcome::Found { mapping, .. } => mapping,
                _ => return Err(Failure::verification(format!("{} has no complete mapping", args.group))),
            },
        };
        graph.coloring_odd(&mapping)
    } else {
        graph.coloring_even()
    }
    .map_err(|e| Failure::usage(e.to_string()))?;
    let kind = if odd { "odd" } else { "even" };
    let vertices = coloring.color_of.len();
    let colors = coloring.color_count();
    let mut text = format!("D({}, {}): {vertices} vertices, {kind} colouring with {colors} colors\n", args.group, args.n);
    let mut result = json!({
        "group": args.group,
        "n": args.n,
        "colouring": kind,
        "vertices": vertices,
        "colors": colors,
    });
    if args.verify || args.emit_witness.is_some() {
        let clique = graph.canonical_cliques(0).swap_remove(0);
        let cert = certify(&graph, clique, coloring).map_err(|e| Failure::verification(e.to_string()))?;
        text.push_str(&format!("proper, {colors} colors\n"));
        text.push_str(&format!("clique of size {}: {}\n", cert.clique.len(), join(&cert.clique, " ")));
        result["verified"] = json!(true);
        result["clique"] = json!(cert.clique);
        if let Some(path) = &args.emit_witness {
            let witness = json!({
                "group": args.group,
                "n": args.n,
                "clique": cert.clique,
                "partition": cert.coloring.partition(),
            });
            ctx.write(path, &(serde_json::to_string(&witness).expect("witness serializes") + "\n"))?;
        }
    }
    Ok(Report::new(text, result, true))
}

fn acting_elements(args: &WitnessArgs, ctx: &mut Ctx) -> Result<(Vec<Permutation>, usize), Failure> {
    if let Some(path) = &args.elements {
        let text = ctx.read(path)?;
        let g = parse_permutations(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        return Ok((g.generators().to_vec(), g.degree()));
    }
    let g = if args.left_right {
        left_right_group(&ctx.group(&args.group)?)
    } else {
        let path = Path::new(&args.group);
        let (g, text) = resolve_action(&args.group)?;
        if let Some(text) = text {
            ctx.session.record_input(&path.display().to_string(), text.as_bytes());
        }
        g
    };
    let degree = g.degree();
    let elements = group_elements(&g).map_err(|e| Failure::usage(e.to_string()))?;
    Ok((elements, degree))
}

fn witness(cmd: &WitnessCommand, ctx: &mut Ctx) -> Result<Report, Failure> {
    match cmd {
        WitnessCommand::Sync(args) => {
            let (elements, degree) = acting_elements(args, ctx)?;
            let a = ctx.set(&args.a)?;
            let p = args.p.as_deref().ok_or_else(|| Failure::usage("sync needs --P"))?;
            let text = ctx.json_arg(p)?;
            let parts = parse_partition(&text).map_err(|e| Failure::usage(format!("{p}: {e}")))?;
            let w = SyncWitness::new(&a, &parts, degree).map_err(|e| Failure::usage(e.to_string()))?;
            verify_sync_witness(&elements, degree, &w).map_err(|e| Failure::verification(e.to_string()))?;
            let sep = sync_witness_to_sep(&w).map_err(|e| Failure::verification(e.to_string()))?;
            verify_sep_witness(&elements, degree, &sep).map_err(|e| Failure::verification(e.to_string()))?;
            let text = format!(
                "synchronizing witness verified over {} elements: |A| = {}, {} parts\nseparating pair: A = [{}], B = [{}]\n",
                elements.len(),
                w.a.len(),
                w.parts.len(),
                join(&sep.a, ","),
                join(&sep.b, ",")
            );
            let result = json!({"elements": elements.len(), "A": w.a, "P": w.parts, "sep": {"A": sep.a, "B": sep.b}});
            Ok(Report::new(text, result, true))
        }
        WitnessCommand::Sep(args) => {
            let (elements, degree) = acting_elements(args, ctx)?;
            let a = ctx.set(&args.a)?;
            let b = ctx.set(args.b.as_deref().ok_or_else(|| Failure::usage("sep needs --B"))?)?;
            let w = SepWitness::new(&a, &b, degree).map_err(|e| Failure::usage(e.to_string()))?;
            verify_sep_witness(&elements, degree, &w).map_err(|e| Failure::verification(e.to_string()))?;
            let text = format!(
                "separating pair verified over {} elements: |A| = {}, |B| = {}\n",
                elements.len(),
                w.a.len(),
                w.b.len()
            );
            Ok(Report::new(text, json!({"elements": elements.len(), "A": w.a, "B": w.b}), true))
        }
        WitnessCommand::Factorise(args) => {
            let h = ctx.group(&args.group)?;
            let a = ctx.set(&args.a)?;
            let b = ctx.set(args.b.as_deref().ok_or_else(|| Failure::usage("factorise needs --B"))?)?;
            let f = ExactFactorisation::new(&h, &a, &b).map_err(|e| Failure::verification(e.to_string()))?;
            let parts = factorisation_to_partition(&f).map_err(|e| Failure::verification(e.to_string()))?;
            let sync = SyncWitness::new(f.b(), &parts, h.order()).map_err(|e| Failure::verification(e.to_string()))?;
            verify_sync_witness(&right_regular_elements(&h), h.order(), &sync)
                .map_err(|e| Failure::verification(e.to_string()))?;
            let parts_text: Vec<String> = parts.iter().map(|p| format!("[{}]", join(p, ","))).collect();
            let text = format!(
                "exact factorisation of order {}: |A| = {}, |B| = {}\npartition: {}\nsynchronizing witness (B, P) verified for the right action\n",
                h.order(),
                f.a().len(),
                f.b().len(),
                parts_text.join(" ")
            );
            Ok(Report::new(text, json!({"A": f.a(), "B": f.b(), "P": parts}), true))
        }
        WitnessCommand::Pipeline(args) => {
            let h = ctx.group(&args.group)?;
            let a = ctx.set(&args.a)?;
            let b = ctx.set(args.b.as_deref().ok_or_else(|| Failure::usage("pipeline needs --B"))?)?;
            let w = SepWitness::new(&a, &b, h.order()).map_err(|e| Failure::usage(e.to_string()))?;
            let elements = if args.left_right {
                group_elements(&left_right_group(&h)).map_err(|e| Failure::usage(e.to_string()))?
            } else {
                right_regular_elements(&h)
            };
            let r = factorisation_pipeline(&h, &elements, &w).map_err(|e| Failure::verification(e.to_string()))?;
            let text = format!(
                "factorisation A^-1 = [{}], B = [{}]\nsynchronizing witness: A = [{}], {} parts\nseparating pair: A = [{}], B = [{}]\nall steps verified over {} elements\n",
                join(&r.factor_a, ","),
                join(&r.factor_b, ","),
                join(&r.sync.a, ","),
                r.sync.parts.len(),
                join(&r.sep.a, ","),
                join(&r.sep.b, ","),
                elements.len()
            );
            let result = json!({
                "factor_a": r.factor_a,
                "factor_b": r.factor_b,
                "sync": {"A": r.sync.a, "P": r.sync.parts},
                "sep": {"A": r.sep.a, "B": r.sep.b},
            });
            Ok(Report::new(text, result, true))
        }
        WitnessCommand::Random(args) => {
            let cases = random_cases(args.count, ctx.seed, args.max_order);
            let passed = cases.iter().filter(|c| c.sync_ok && c.sep_ok).count();
            let mut text = String::new();
            for (k, c) in cases.iter().enumerate() {
                text.push_str(&format!(
                    "{:>3} {:<36} {} {}\n",
                    k + 1,
                    c.group,
                    if c.subgroup_first { "K*T" } else { "T*K" },
                    if c.sync_ok && c.sep_ok { "ok" } else { c.error.as_deref().unwrap_or("FAILED") }
                ));
            }
            text.push_str(&format!("{passed}/{} passed (seed {})\n", cases.len(), ctx.seed));
            let ok = passed == cases.len();
            Ok(Report::new(text, json!({"seed": ctx.seed, "cases": cases}), ok))
        }
    }
}

fn grid_json(m: &CollapsedAdjacency) -> Value {
    json!({"orbital": m.orbital + 1, "matrix": m.matrix})
}

fn orbitals(args: &OrbitalsArgs, ctx: &mut Ctx) -> Result<Report, Failure> {
    if !args.expand.is_empty() {
        let mut gens = Vec::new();
        for p in &args.expand {
            let text = ctx.read(p)?;
            gens.push(parse_grid(&text).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?);
        }
        let rank = gens[0].rank();
        let basis = intersection_algebra_expand(&gens, rank).map_err(|e| Failure::verification(e.to_string()))?;
        let text: String = basis.iter().map(write_grid).collect::<Vec<_>>().join("\n");
        let result = json!({"rank": rank, "basis": basis.iter().map(grid_json).collect::<Vec<_>>()});
        return Ok(Report::new(text, result, true));
    }
    let spec = args.group.as_deref().expect("clap requires --group without --expand");
    let (mut g, source) = resolve_action(spec)?;
    if let Some(text) = source {
        ctx.session.record_input(spec, text.as_bytes());
    }
    if args.on_pairs {
        g = crate::actions::on_pairs(&g);
    }
    let dec = orbital_decomposition(&g, args.base).map_err(|e| Failure::usage(e.to_string()))?;
    let pairing_1: Vec<usize> = dec.pairing.iter().map(|p| p + 1).collect();
    let mut text = format!(
        "degree {}, rank {}, {} self-paired\nsubdegrees: {}\npairing: {}\n",
        dec.degree(),
        dec.rank(),
        dec.self_paired_count(),
        join(&dec.subdegrees, " "),
        join(&pairing_1, " ")
    );
    let mut result = json!({
        "degree": dec.degree(),
        "rank": dec.rank(),
        "subdegrees": dec.subdegrees,
        "pairing": pairing_1,
        "suborbits": dec.suborbits,
    });
    if let Some(i) = args.collapsed {
        let m = i
            .checked_sub(1)
            .ok_or_else(|| Failure::usage("orbital numbers start at 1"))
            .and_then(|i| collapsed_adjacency(&dec, i).map_err(|e| Failure::usage(e.to_string())))?;
        text.push_str(&write_grid(&m));
        result["collapsed"] = grid_json(&m);
    }
    if args.wilcox {
        let all = (0..dec.rank())
            .map(|i| collapsed_adjacency(&dec, i))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure::usage(e.to_string()))?;
        let w = wilcox_check(&all, &dec.pairing).map_err(|e| Failure::verification(e.to_string()))?;
        text.push_str(&format!(
            "paired entries: {}\ndiagonal entries: {}\nD^-1 in D^2 for all orbitals: {}\nD in D^2 for all orbitals: {}\n",
            join(&w.paired_entries, " "),
            join(&w.diagonal_entries, " "),
            w.all_cor15(),
            w.all_cor16()
        ));
        result["wilcox"] = json!({
            "paired": w.paired_entries,
            "diagonal": w.diagonal_entries,
            "inverse_contained": w.cor15,
            "contained": w.cor16,
        });
    }
    Ok(Report::new(text, result, true))
}

fn orbital_rows(table: Option<&Path>, ctx: &mut Ctx) -> Result<Vec<OrbitalRow>, Failure> {
    match table {
        Some(p) => {
            let text = ctx.read(p)?;
            Ok(parse_orbital_table(&text).map_err(|e| Failure::usage(format!("{}: {e}", p.display())))?)
        }
        None => Ok(j4::orbital_rows()),
    }
}

fn matrep(args: &MatrepArgs, ctx: &mut Ctx) -> Result<Report, Failure> {
    if !args.verify_standard && args.fingerprint.is_none() && args.collapsed.is_none() {
        return Err(Failure::usage("matrep needs --verify-standard, --fingerprint or --collapsed"));
    }
    let (a, b) = ctx.generators(args.gens.as_deref(), args.meataxe.as_deref())?;
    let mut text = String::new();
    let mut result = json!({"dimension": a.dim(), "characteristic": a.characteristic()});
    let mut ok = true;
    if args.verify_standard {
        let report = synchro_core::matrep::verify_standard_generators(&a, &b).map_err(|e| Failure::usage(e.to_string()))?;
        for c in &report.checks {
            let found = c.found.map_or_else(|| "> cutoff".to_string(), |o| o.to_string());
            text.push_str(&format!("o({}) = {found}, expected {}\n", c.word, c.expected));
        }
        text.push_str(if report.passed() { "standard generators\n" } else { "not standard generators\n" });
        ok &= report.passed();
        result["standard"] = json!(report.passed());
    }
    if let Some(words) = &args.fingerprint {
        let env = WordEnvironment::new(&a, &b).map_err(|e| Failure::usage(e.to_string()))?;
        let x = env.evaluate_str(&words[0]).map_err(|e| Failure::usage(e.to_string()))?;
        let y = env.evaluate_str(&words[1]).map_err(|e| Failure::usage(e.to_string()))?;
        let f = fingerprint(&x, &y).map_err(|e| Failure::usage(e.to_string()))?;
        text.push_str(&format!("fingerprint {f}\n"));
        result["fingerprint"] = json!(f.as_tuple());
    }
    if let Some(i) = args.collapsed {
        let rows = orbital_rows(args.table.as_deref(), ctx)?;
        let i = i
            .checked_sub(1)
            .filter(|&i| i < rows.len())
            .ok_or_else(|| Failure::usage(format!("orbital outside 1..={}", rows.len())))?;
        let j4ctx = J4Context::new(&a, &b, rows).map_err(|e| Failure::verification(e.to_string()))?;
        let m = j4ctx.collapsed(i).map_err(|e| Failure::verification(e.to_string()))?;
        text.push_str(&write_grid(&m));
        result["collapsed"] = grid_json(&m);
    }
    Ok(Report::new(text, result, ok))
}

fn chartab(args: &ChartabArgs, ctx: &mut Ctx) -> Result<Report, Failure> {
    let table = ctx.character_table(&args.table)?;
    let mut sc = StructureConstants::new(&table).map_err(|e| Failure::usage(e.to_string()))?;
    if let Some(c) = &args.xi {
        let s = sc.xi_by_name(&c[0], &c[1], &c[2]).map_err(|e| Failure::usage(e.to_string()))?;
        let mut text = format!(
            "xi({},{},{}) = {}\nhat = {}\n",
            c[0],
            c[1],
            c[2],
            rational(&s.xi_value),
            s.hat_value
        );
        let mut result = json!({
            "table": table.name(),
            "classes": c,
            "hat": s.hat_value.to_string(),
            "xi": rational(&s.xi_value),
        });
        if let Some(h) = args.scale {
            let scaled = s.scaled(h);
            text.push_str(&format!("{h} * xi = {}\n", rational(&scaled)));
            result["scale"] = json!(h.to_string());
            result["scaled"] = json!(rational(&scaled));
        }
        return Ok(Report::new(text, result, true));
    }
    if let Some(names) = &args.hat {
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let v = StructureConstants::with_arity(&table, refs.len().max(3))
            .and_then(|mut s| s.hat_by_name(&refs))
            .map_err(|e| Failure::usage(e.to_string()))?;
        let text = format!("hat({}) = {v}\n", names.join(","));
        return Ok(Report::new(text, json!({"table": table.name(), "classes": names, "hat": v.to_string()}), true));
    }
    let mut text = format!("{} of order {}, {} classes\n", table.name(), table.group_order(), table.class_count());
    for c in table.classes() {
        text.push_str(&format!(
            "{:<6} order {:<4} size {:<24} centralizer {}\n",
            c.name, c.element_order, c.size, c.centralizer_order
        ));
    }
    let classes: Vec<Value> = table
        .classes()
        .iter()
        .map(|c| json!({"name": c.name, "size": c.size.to_string(), "centralizer": c.centralizer_order.to_string(), "element_order": c.element_order}))
        .collect();
    Ok(Report::new(text, json!({"table": table.name(), "order": table.group_order().to_string(), "classes": classes}), true))
}

fn j4_context(ctx: &mut Ctx) -> Result<J4Context, Failure> {
    let (a, b) = ctx.generators(None, None)?;
    J4Context::new(&a, &b, j4::orbital_rows()).map_err(|e| Failure::verification(e.to_string()))
}

fn compare_matrix(ctx: &mut Ctx, i: usize, printed: CollapsedAdjacency) -> Result<(String, Value, bool), Failure> {
    let j4ctx = j4_context(ctx)?;
    if !j4ctx.standard.passed() {
        return Err(Failure::verification("generators fail the standard generator conditions"));
    }
    let m = j4ctx.collapsed(i).map_err(|e| Failure::verification(e.to_string()))?;
    let ok = m == printed;
    let mut text = write_grid(&m);
    text.push_str(if ok { "matches the printed matrix\n" } else { "DIFFERS from the printed matrix\n" });
    Ok((text, json!({"computed": grid_json(&m), "matches": ok}), ok))
}

fn reproduce_target(args: &ReproduceArgs, ctx: &mut Ctx) -> Result<Report, Failure> {
    let (text, result, ok) = match args.target {
        Target::Table1 => {
            let table = ctx.character_table("J4")?;
            let r = reproduce::table1(&table).map_err(|e| Failure::verification(e.to_string()))?;
            let mut text = String::new();
            for row in &r.rows {
                text.push_str(&format!(
                    "{:<4} xi = {:<14} |H| xi = {:<10} {}\n",
                    row.class,
                    row.xi,
                    row.scaled,
                    if row.ok { "ok" } else { "MISMATCH" }
                ));
            }
            let zero_ok = r.zero_classes.iter().filter(|(_, z)| *z).count();
            text.push_str(&format!("{zero_ok}/{} other classes give 0\n", r.zero_classes.len()));
            let ok = r.passed();
            (text, serde_json::to_value(&r).expect("report serializes"), ok)
        }
        Target::Table2 => {
            let j4ctx = j4_context(ctx)?;
            let r = reproduce::table2(&j4ctx, &[1, 3]).map_err(|e| Failure::verification(e.to_string()))?;
            let mut text = format!(
                "standard generators: {}\n",
                r.failed_condition.as_deref().map_or("yes".to_string(), |c| format!("no, {c}"))
            );
            for f in &r.fingerprints {
                text.push_str(&format!(
                    "{:>2} {:?} {}\n",
                    f.orbital,
                    f.found,
                    if f.ok { "ok" } else { "MISMATCH" }
                ));
            }
            for (i, want, got) in &r.orbit_sizes {
                text.push_str(&format!("orbit {i}: {got} elements, expected {want}\n"));
            }
            let ok = r.passed();
            (text, serde_json::to_value(&r).expect("report serializes"), ok)
        }
        Target::A2 => compare_matrix(ctx, 1, j4::printed_a2())?,
        Target::A4 => compare_matrix(ctx, 3, j4::printed_a4())?,
        Target::EntryLists => {
            let gens = if args.from_generators {
                let j4ctx = j4_context(ctx)?;
                vec![
                    j4ctx.collapsed(1).map_err(|e| Failure::verification(e.to_string()))?,
                    j4ctx.collapsed(3).map_err(|e| Failure::verification(e.to_string()))?,
                ]
            } else {
                vec![j4::printed_a2(), j4::printed_a4()]
            };
            let (_, r) = reproduce::entry_lists(&gens).map_err(|e| Failure::verification(e.to_string()))?;
            let text = format!(
                "basis of {} matrices\n(A_i)[i][i*]: {}\n(A_i)[i][i]: {}\nmatches: {}\n",
                r.basis_size,
                join(&r.paired, " "),
                join(&r.diagonal, " "),
                r.passed()
            );
            let ok = r.passed();
            (text, serde_json::to_value(&r).expect("report serializes"), ok)
        }
    };
    Ok(Report {
        text,
        result,
        reproduces: Some(args.target.reproduces()),
        ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("synchro").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn diagonal_s3_even() {
        let (code, out, _) = run_capture(&["diagonal", "--group", "S3", "--n", "4", "--color-even", "--verify"]);
        assert_eq!(code, 0);
        assert!(out.contains("proper, 6 colors"), "{out}");
    }

    #[test]
    fn unknown_flag_is_usage_error() {
        let (code, _, err) = run_capture(&["diagonal", "--bogus"]);
        assert_eq!(code, 2);
        assert!(!err.is_empty());
    }

    #[test]
    fn missing_generators_exit_3() {
        let dir = std::env::temp_dir().join("synchro-empty-data-dir-test");
        std::fs::create_dir_all(&dir).unwrap();
        let (code, _, err) = run_capture(&["--data-dir", dir.to_str().unwrap(), "reproduce", "A2"]);
        if j4::find_generators(Some(&dir)).is_none() {
            assert_eq!(code, 3);
            assert!(err.contains(j4::MEATAXE_SHA256[0]), "{err}");
        }
    }

    #[test]
    fn complete_mapping_z4_has_none() {
        let (code, out, _) = run_capture(&["complete-mapping", "--group", "Z4"]);
        assert_eq!(code, 0);
        assert!(out.contains("none exists"), "{out}");
    }

    #[test]
    fn entry_lists_from_printed_matrices() {
        let (code, out, _) = run_capture(&["reproduce", "entry-lists"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("matches: true"));
    }
}
