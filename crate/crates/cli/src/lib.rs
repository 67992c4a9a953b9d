//! Command-line front end: certificate emission and checking, exhaustive
//! sweeps, extension-graph ball reports and a word playground.
//!
//! Exit codes: 0 pass, 1 internal error, 2 input or precondition error,
//! 3 a sweep found a counterexample or a certificate failed verification.

use std::fmt;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use raagtl_core::atlas::{sweep_bounds, sweep_loxo_equiv, sweep_theorem_2v, SweepReport};
use raagtl_core::certificates::{
    best_upper_bound, build_len2, find_star_edge_scan, is_loxodromic, qualifying_star_edges,
    verify_path_certificate, BoundCertificate, BoundOptions, CertificateJson, GraphJson,
    DEFAULT_LAMBDA_SEARCH_CAP,
};
use raagtl_core::extension::{orbit_ratio_in, Ball, OrbitSample, DEFAULT_BALL_CAP};
use raagtl_core::graph::{to_edge_list, to_graph6};
use raagtl_core::{Error, Graph, GroupElement, Raag};

pub mod source;

use source::{load_graph, load_graphs, read_text};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_COUNTEREXAMPLE: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    pub fn internal(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::Invariant(_) => CliError::internal(e.to_string()),
            _ => CliError::input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        // A closed downstream pipe (`| head`) is not an error.
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return CliError {
                code: EXIT_OK,
                message: String::new(),
            };
        }
        CliError::internal(format!("write failed: {e}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "raagtl",
    version,
    about = "Translation-length certificates for right-angled Artin groups"
)]
pub struct Cli {
    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a verified upper-bound certificate for each input graph.
    Certify(CertifyArgs),
    /// Re-check a certificate produced by `certify`.
    Verify(VerifyArgs),
    /// Star-edge existence over all labeled biconnected graphs.
    #[command(name = "sweep-2v")]
    Sweep2v(SweepRange),
    /// Loxodromicity criteria agreement over all vertex subsets.
    SweepLoxo(SweepLoxoArgs),
    /// Certify every labeled biconnected graph in a range.
    SweepBounds(SweepBoundsArgs),
    /// Orbit distances of an element inside a ball of the extension graph.
    Ball(BallArgs),
    /// Print a graph with basic invariants.
    Family(FamilyArgs),
    /// Normal form, support and cyclic reduction of a word.
    Reduce(ReduceArgs),
}

#[derive(Debug, Args)]
pub struct CertifyArgs {
    /// Graph source: file, `-`, `family:lambda:<n>`, `family:gamma:<n>` or `example:<name>`.
    pub source: String,
    /// Largest vertex count for the exhaustive search over `Λ`.
    #[arg(long, default_value_t = DEFAULT_LAMBDA_SEARCH_CAP)]
    pub cap: usize,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Certificate JSON file, or `-` for stdin.
    #[arg(default_value = "-")]
    pub certificate: String,
    /// Also check the zig-zag path for n = 1..=max-n.
    #[arg(long, default_value_t = 4)]
    pub max_n: u32,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SweepRange {
    #[arg(long, default_value_t = 4)]
    pub min_n: usize,
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SweepLoxoArgs {
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SweepBoundsArgs {
    #[arg(long, default_value_t = 4)]
    pub min_n: usize,
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
    /// Zig-zag path checks for n = 1..=paths.
    #[arg(long, default_value_t = 4)]
    pub paths: u32,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BallArgs {
    pub source: String,
    /// Element as a word; defaults to the path-certificate element on the
    /// first star-edge.
    #[arg(long)]
    pub element: Option<String>,
    /// Ball radius (conjugator length).
    #[arg(short = 'L', long = "radius", default_value_t = 3)]
    pub radius: usize,
    /// Sample n = 1..=max-n.
    #[arg(long, default_value_t = 3)]
    pub max_n: u32,
    /// Base vertex; defaults to the first label.
    #[arg(long)]
    pub base: Option<String>,
    /// Vertex cap for the ball.
    #[arg(long, default_value_t = DEFAULT_BALL_CAP)]
    pub cap: usize,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write an SVG plot of the ratio curve.
    #[arg(long)]
    pub svg: Option<std::path::PathBuf>,
    /// Write the ball itself as JSON.
    #[arg(long)]
    pub dump_ball: Option<std::path::PathBuf>,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    pub source: String,
    /// `json` adds invariants, `csv` lists edges; default is the edge-list format.
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Print graph6 instead of an edge list.
    #[arg(long)]
    pub graph6: bool,
}

#[derive(Debug, Args)]
pub struct ReduceArgs {
    pub source: String,
    /// Word such as `v1 v2^-1 v3`.
    pub word: String,
    /// Compare with a second word.
    #[arg(long)]
    pub equals: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

/// Runs a parsed command line; returns the exit code on success.
pub fn run(
    cli: Cli,
    out: &mut (dyn Write + Send),
    err: &mut (dyn Write + Send),
) -> Result<i32, CliError> {
    match cli.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| CliError::internal(format!("thread pool: {e}")))?
            .install(|| dispatch(cli.command, out, err)),
        None => dispatch(cli.command, out, err),
    }
}

fn dispatch(
    command: Command,
    out: &mut (dyn Write + Send),
    err: &mut (dyn Write + Send),
) -> Result<i32, CliError> {
    match command {
        Command::Certify(a) => certify(&a, out, err),
        Command::Verify(a) => verify(&a, out),
        Command::Sweep2v(a) => emit_sweep(
            &sweep_theorem_2v(a.min_n, a.max_n, None)?,
            a.format,
            out,
            err,
        ),
        Command::SweepLoxo(a) => emit_sweep(&sweep_loxo_equiv(a.max_n, None)?, a.format, out, err),
        Command::SweepBounds(a) => emit_sweep(
            &sweep_bounds(a.min_n, a.max_n, a.paths, None)?,
            a.format,
            out,
            err,
        ),
        Command::Ball(a) => ball(&a, out),
        Command::Family(a) => family(&a, out),
        Command::Reduce(a) => reduce(&a, out),
    }
}

/// Best certificate for one graph, verified.
pub fn certify_graph(graph: &Graph, cap: usize) -> Result<BoundCertificate, CliError> {
    let group = Raag::new(graph.clone());
    let cert = best_upper_bound(
        &group,
        BoundOptions {
            lambda_search_cap: cap,
        },
    )?;
    if !cert.is_valid() {
        return Err(CliError::internal(format!(
            "constructed certificate fails {:?}",
            cert.failures()
        )));
    }
    Ok(cert)
}

fn certify(
    a: &CertifyArgs,
    out: &mut (dyn Write + Send),
    err: &mut (dyn Write + Send),
) -> Result<i32, CliError> {
    let graphs = load_graphs(&a.source)?;
    let single = graphs.len() == 1;
    let mut code = EXIT_OK;
    let mut certs = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        match certify_graph(g, a.cap) {
            Ok(c) => certs.push((i, c)),
            Err(e) if single => return Err(e),
            Err(e) => {
                writeln!(err, "graph {} ({}): {}", i + 1, to_graph6(g), e.message)?;
                code = code.max(e.code);
            }
        }
    }
    match a.format {
        Format::Json if single => writeln!(out, "{}", certs[0].1.to_json().to_json_string())?,
        Format::Json => {
            let all: Vec<CertificateJson> = certs.iter().map(|(_, c)| c.to_json()).collect();
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&all).expect("serializes")
            )?;
        }
        Format::Csv => {
            writeln!(out, "index,graph6,kind,bound,element,valid")?;
            for (i, c) in &certs {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    i + 1,
                    to_graph6(c.graph()),
                    c.witness().kind(),
                    c.bound(),
                    c.element(),
                    c.is_valid()
                )?;
            }
        }
    }
    Ok(code)
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub valid: bool,
    pub bound: String,
    pub checks: std::collections::BTreeMap<String, bool>,
    pub path_checks: Vec<bool>,
}

/// Parses and re-checks certificate JSON, including the zig-zag path for
/// `n = 1..=max_n`.
pub fn verify_text(text: &str, max_n: u32) -> Result<VerifyReport, CliError> {
    let cert = CertificateJson::parse(text)?.into_certificate()?;
    let checks: std::collections::BTreeMap<String, bool> = cert
        .verify()
        .into_iter()
        .map(|(k, v)| (k.to_owned(), v))
        .collect();
    let structural = checks.values().all(|&v| v);
    let path_checks: Vec<bool> = if structural {
        (1..=max_n)
            .map(|n| verify_path_certificate(&cert, n))
            .collect::<Result<_, _>>()?
    } else {
        Vec::new()
    };
    Ok(VerifyReport {
        valid: structural && path_checks.iter().all(|&v| v),
        bound: cert.bound().to_string(),
        checks,
        path_checks,
    })
}

fn verify(a: &VerifyArgs, out: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    let report = verify_text(&read_text(&a.certificate)?, a.max_n)?;
    match a.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("serializes")
        )?,
        Format::Csv => {
            writeln!(out, "check,passed")?;
            for (k, v) in &report.checks {
                writeln!(out, "{k},{v}")?;
            }
            for (n, v) in report.path_checks.iter().enumerate() {
                writeln!(out, "path_n{},{v}", n + 1)?;
            }
            writeln!(out, "valid,{}", report.valid)?;
        }
    }
    Ok(if report.valid {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    })
}

fn emit_sweep(
    report: &SweepReport,
    format: Format,
    out: &mut (dyn Write + Send),
    err: &mut (dyn Write + Send),
) -> Result<i32, CliError> {
    match format {
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => write!(out, "{}", report.to_csv())?,
    }
    let total = report.total();
    writeln!(
        err,
        "{}: {} graphs, {} checked, {} skipped, {} failures in {:.2?}",
        report.sweep,
        total.graphs,
        total.biconnected,
        total.skipped,
        total.failures,
        report.wall_time
    )?;
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_COUNTEREXAMPLE
    })
}

/// Path-certificate element on the first star-edge.
pub fn default_element(group: &Raag) -> Result<GroupElement, CliError> {
    let e = find_star_edge_scan(group.graph())?;
    Ok(build_len2(group, e)?.element().clone())
}

#[derive(Debug, Serialize)]
pub struct BallReport {
    pub element: String,
    pub base: String,
    pub radius: usize,
    pub ball_vertices: usize,
    pub ball_edges: usize,
    pub samples: Vec<OrbitSample>,
}

pub fn ball_report(graph: &Graph, a: &BallArgs) -> Result<(BallReport, Ball), CliError> {
    let group = Raag::new(graph.clone());
    let g = match &a.element {
        Some(w) => group.parse(w)?,
        None => default_element(&group)?,
    };
    if g.is_identity() {
        return Err(CliError::input("orbit ratios need a nontrivial element"));
    }
    let base = a.base.clone().unwrap_or_else(|| graph.label(0).to_owned());
    let ball = Ball::build_capped(&group, a.radius, a.cap)?;
    let samples = orbit_ratio_in(&ball, &g, &base, a.max_n)?;
    Ok((
        BallReport {
            element: g.to_string(),
            base,
            radius: a.radius,
            ball_vertices: ball.len(),
            ball_edges: ball.edge_count(),
            samples,
        },
        ball,
    ))
}

fn ball(a: &BallArgs, out: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    let graph = load_graph(&a.source)?;
    let (report, ball) = ball_report(&graph, a)?;
    match a.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&report).expect("serializes")
        )?,
        Format::Csv => {
            writeln!(out, "n,distance,ratio,boundary_touched")?;
            for s in &report.samples {
                let d = s.distance.map(|d| d.to_string()).unwrap_or_default();
                let r = s.ratio.map(|r| format!("{r:.6}")).unwrap_or_default();
                writeln!(out, "{},{d},{r},{}", s.n, s.boundary_touched)?;
            }
        }
    }
    if let Some(path) = &a.svg {
        std::fs::write(path, ratio_svg(&report))
            .map_err(|e| CliError::input(format!("writing {}: {e}", path.display())))?;
    }
    if let Some(path) = &a.dump_ball {
        let text = serde_json::to_string(&ball.to_json()).expect("serializes");
        std::fs::write(path, text)
            .map_err(|e| CliError::input(format!("writing {}: {e}", path.display())))?;
    }
    Ok(EXIT_OK)
}

/// Line plot of `ratio` against `n`; hollow markers flag boundary contact.
pub fn ratio_svg(report: &BallReport) -> String {
    const W: f64 = 480.0;
    const H: f64 = 320.0;
    const PAD: f64 = 40.0;
    let n_max = report.samples.len().max(1) as f64;
    let r_max = report
        .samples
        .iter()
        .filter_map(|s| s.ratio)
        .fold(1.0f64, f64::max)
        .ceil();
    let x = |n: u32| PAD + (n as f64 - 1.0) / (n_max - 1.0).max(1.0) * (W - 2.0 * PAD);
    let y = |r: f64| H - PAD - r / r_max * (H - 2.0 * PAD);
    let mut svg = format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    );
    svg.push_str(&format!(
        "<path d=\"M{PAD} {PAD} V{} H{}\" fill=\"none\" stroke=\"black\"/>\n",
        H - PAD,
        W - PAD
    ));
    svg.push_str(&format!(
        "<text x=\"{PAD}\" y=\"{}\" font-size=\"12\">d(x, x g^n)/n for g = {}, radius {}</text>\n",
        PAD / 2.0,
        report.element,
        report.radius
    ));
    let points: Vec<String> = report
        .samples
        .iter()
        .filter_map(|s| s.ratio.map(|r| format!("{:.1},{:.1}", x(s.n), y(r))))
        .collect();
    if !points.is_empty() {
        svg.push_str(&format!(
            "<polyline points=\"{}\" fill=\"none\" stroke=\"steelblue\"/>\n",
            points.join(" ")
        ));
    }
    for s in &report.samples {
        if let Some(r) = s.ratio {
            let fill = if s.boundary_touched {
                "white"
            } else {
                "steelblue"
            };
            svg.push_str(&format!(
                "<circle cx=\"{:.1}\" cy=\"{:.1}\" r=\"4\" fill=\"{fill}\" stroke=\"steelblue\"/>\n",
                x(s.n),
                y(r)
            ));
        }
    }
    svg.push_str("</svg>\n");
    svg
}

#[derive(Debug, Serialize)]
struct FamilyJson {
    graph: GraphJson,
    graph6: String,
    order: usize,
    edges: usize,
    biconnected: bool,
    diameter: Option<u32>,
    complement_diameter: Option<u32>,
    star_edges: Vec<[String; 2]>,
}

fn family(a: &FamilyArgs, out: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    let g = load_graph(&a.source)?;
    let co = g.complement();
    match a.format {
        None if a.graph6 => writeln!(out, "{}", to_graph6(&g))?,
        None => {
            writeln!(
                out,
                "# order {}, edges {}, biconnected {}, diameter {}, complement diameter {}",
                g.order(),
                g.edge_count(),
                g.is_biconnected(),
                fmt_distance(g.diameter().finite()),
                fmt_distance(co.diameter().finite())
            )?;
            write!(out, "{}", to_edge_list(&g))?;
        }
        Some(Format::Csv) => {
            writeln!(out, "a,b")?;
            for e in g.edges() {
                let (x, y) = e.labels(&g);
                writeln!(out, "{x},{y}")?;
            }
        }
        Some(Format::Json) => {
            let j = FamilyJson {
                graph: GraphJson::from_graph(&g),
                graph6: to_graph6(&g),
                order: g.order(),
                edges: g.edge_count(),
                biconnected: g.is_biconnected(),
                diameter: g.diameter().finite(),
                complement_diameter: co.diameter().finite(),
                star_edges: qualifying_star_edges(&g)
                    .into_iter()
                    .map(|e| {
                        let (x, y) = e.labels(&g);
                        [x, y]
                    })
                    .collect(),
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&j).expect("serializes")
            )?;
        }
    }
    Ok(EXIT_OK)
}

fn fmt_distance(d: Option<u32>) -> String {
    d.map(|d| d.to_string()).unwrap_or_else(|| "inf".into())
}

#[derive(Debug, Serialize)]
struct ReduceJson {
    normal_form: String,
    length: usize,
    support: Vec<String>,
    cyclic_core: String,
    conjugator: String,
    loxodromic: Option<bool>,
    equals: Option<bool>,
}

fn reduce(a: &ReduceArgs, out: &mut (dyn Write + Send)) -> Result<i32, CliError> {
    let group = Raag::new(load_graph(&a.source)?);
    let g = group.parse(&a.word)?;
    let (conjugator, core) = g.cyclic_reduce();
    let loxodromic = if group.graph().is_nontrivial_biconnected() && !g.is_identity() {
        Some(is_loxodromic(&group, &g)?.verdict())
    } else {
        None
    };
    let equals = match &a.equals {
        Some(w) => Some(g.equals(&group.parse(w)?)?),
        None => None,
    };
    let j = ReduceJson {
        normal_form: g.to_string(),
        length: g.len(),
        support: g.support_labels(),
        cyclic_core: core.to_string(),
        conjugator: conjugator.to_string(),
        loxodromic,
        equals,
    };
    match a.format {
        Some(Format::Json) => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&j).expect("serializes")
        )?,
        Some(Format::Csv) => {
            writeln!(
                out,
                "normal_form,length,support,cyclic_core,conjugator,loxodromic,equals"
            )?;
            let opt = |b: Option<bool>| b.map(|b| b.to_string()).unwrap_or_default();
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                j.normal_form,
                j.length,
                j.support.join(" "),
                j.cyclic_core,
                j.conjugator,
                opt(j.loxodromic),
                opt(j.equals)
            )?;
        }
        None => {
            writeln!(out, "normal form: {}", j.normal_form)?;
            writeln!(out, "length: {}", j.length)?;
            writeln!(out, "support: {}", j.support.join(" "))?;
            writeln!(
                out,
                "cyclic core: {} (conjugator {})",
                j.cyclic_core, j.conjugator
            )?;
            if let Some(l) = j.loxodromic {
                writeln!(out, "loxodromic: {l}")?;
            }
            if let Some(e) = j.equals {
                writeln!(out, "equals: {e}")?;
            }
        }
    }
    Ok(EXIT_OK)
}

/// Captured result of [`invoke`].
#[derive(Debug, Clone)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (without the program name) and runs the command with
/// captured output, as the binary would.
pub fn invoke<S: AsRef<str>>(args: &[S]) -> Invocation {
    let argv = std::iter::once("raagtl").chain(args.iter().map(AsRef::as_ref));
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = match Cli::try_parse_from(argv) {
        Ok(cli) => match run(cli, &mut out, &mut err) {
            Ok(code) => code,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                e.code
            }
        },
        Err(e) => {
            let _ = write!(err, "{e}");
            if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_OK
            }
        }
    };
    Invocation {
        code,
        stdout: String::from_utf8_lossy(&out).into_owned(),
        stderr: String::from_utf8_lossy(&err).into_owned(),
    }
}
