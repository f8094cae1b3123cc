//! `gqcage build | verify | table`.
//!
//! Exit codes: 0 success, 1 I/O or internal error, 2 invalid arguments
//! (including q or variant), 3 failed certification.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cage::{build_cage, moore_bound};
use crate::excise_even::{is_valid_even_order, prepare_even};
use crate::excise_odd::{is_valid_odd_order, latin_squares, prepare_odd, OddConstruction};
use crate::format::{decode, encode, encode_labels, Format};
use crate::gf::{make_field, Field};
use crate::graph::Graph;
use crate::latin::{check_latin, is_row_permuted_cyclic_table, rows_shift_match};
use crate::plan::ExcisionPlan;
use crate::verify::{certify, check_matching_conditions, Certificate, Expectations, OrderNote};

/// Largest q accepted by `build` and `table`.
pub const MAX_BUILD_Q: u64 = 32;

#[derive(Debug, Parser)]
#[command(name = "gqcage", version, about = "Generalized-quadrangle cages and girth-7 excisions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a graph, write it with a labels sidecar and a certificate.
    Build(BuildArgs),
    /// Certify a graph file against optional expectations.
    Verify(VerifyArgs),
    /// Tabulate orders, Moore bounds and excess for several q.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Variant {
    Cage,
    #[value(name = "girth7-even")]
    Girth7Even,
    #[value(name = "girth7-odd-g1")]
    Girth7OddG1,
    #[value(name = "girth7-odd-g2")]
    Girth7OddG2,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Cage => "cage",
            Variant::Girth7Even => "girth7-even",
            Variant::Girth7OddG1 => "girth7-odd-g1",
            Variant::Girth7OddG2 => "girth7-odd-g2",
        }
    }
}

#[derive(Debug, Args)]
pub struct BuildArgs {
    #[arg(long)]
    pub q: u64,
    #[arg(long, value_enum)]
    pub variant: Variant,
    #[arg(long, value_enum, default_value = "graph6")]
    pub format: Format,
    /// Output path; sidecars go to `<out>.labels.json` and `<out>.cert.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Accepted for interface stability; every run is deterministic.
    #[arg(long, default_value_t = true)]
    pub deterministic: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "graph6")]
    pub format: Format,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long)]
    pub girth: Option<usize>,
    #[arg(long)]
    pub order: Option<usize>,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    pub qs: Vec<u64>,
}

/// A built graph with its field and certificate.
#[derive(Clone, Debug)]
pub struct Artifact {
    pub graph: Graph,
    pub field: Field,
    pub certificate: Certificate,
}

#[derive(Debug)]
pub enum BuildError {
    Invalid(String),
    Failed(String),
}

/// Checks q against the variant.
pub fn validate(q: u64, variant: Variant) -> Result<(), String> {
    make_field(q).map_err(|e| e.to_string())?;
    if q > MAX_BUILD_Q {
        return Err(format!("q = {q} exceeds the supported maximum {MAX_BUILD_Q}"));
    }
    match variant {
        Variant::Cage => Ok(()),
        Variant::Girth7Even if !is_valid_even_order(q) => {
            Err(format!("girth7-even needs q a power of two at least 4, got {q}"))
        }
        Variant::Girth7OddG1 | Variant::Girth7OddG2 if !is_valid_odd_order(q) => {
            Err(format!("{} needs an odd prime power q at least 5, got {q}", variant.name()))
        }
        _ => Ok(()),
    }
}

pub fn graph_id(q: u64, variant: Variant) -> String {
    format!("{}-q{q}", variant.name())
}

/// Builds the requested graph and its full certificate.
pub fn build_artifact(q: u64, variant: Variant) -> Result<Artifact, BuildError> {
    validate(q, variant).map_err(BuildError::Invalid)?;
    let failed = |e: &dyn std::fmt::Display| BuildError::Failed(e.to_string());
    let id = graph_id(q, variant);
    let qu = q as usize;
    match variant {
        Variant::Cage => {
            let cage = build_cage(q).map_err(|e| failed(&e))?;
            let expected = Expectations {
                degree: Some(qu + 1),
                girth: Some(8),
                order: Some(moore_bound(q + 1, 8) as usize),
            };
            let mut cert = certify(&id, &cage.graph, &expected);
            let half = cage.graph.n() / 2;
            let bipartite = cage.graph.edges().all(|(u, v)| (u < half) != (v < half));
            cert.push("bipartite", bipartite, "every edge joins side 0 to side 1");
            Ok(Artifact { graph: cage.graph, field: cage.field, certificate: cert })
        }
        Variant::Girth7Even => {
            let c = prepare_even(q).map_err(|e| failed(&e))?;
            let expected = Expectations {
                degree: Some(qu + 1),
                girth: Some(7),
                order: Some(2 * qu * qu * qu + qu * qu + 2 * qu),
            };
            let mut cert = certify(&id, &c.graph, &expected);
            push_matching_check(&mut cert, &c.cage.graph, c.plan());
            Ok(Artifact { graph: c.graph, field: c.cage.field, certificate: cert })
        }
        Variant::Girth7OddG1 | Variant::Girth7OddG2 => {
            let c = prepare_odd(q).map_err(|e| failed(&e))?;
            let order = 2 * qu * qu * qu + 2 * qu * qu - qu;
            let cert = odd_certificate(&id, &c, variant, order);
            let graph = if variant == Variant::Girth7OddG1 { c.gamma1 } else { c.gamma2 };
            Ok(Artifact { graph, field: c.cage.field, certificate: cert })
        }
    }
}

fn push_matching_check(cert: &mut Certificate, cage: &Graph, plan: &ExcisionPlan) {
    match plan.residual(cage) {
        Ok(residual) => {
            let report = check_matching_conditions(&residual.graph, &plan.zsets_in(&residual));
            let detail = match report.violations.first() {
                None => format!("{} edge pairs checked, no violations", report.pairs_checked),
                Some(v) => format!(
                    "{} violations, first {}{:?} against {}{:?}",
                    report.violations.len(),
                    v.first,
                    v.first_edge,
                    v.second,
                    v.second_edge
                ),
            };
            cert.push("matching_conditions", report.passed(), detail);
        }
        Err(e) => cert.push("matching_conditions", false, e.to_string()),
    }
}

fn odd_certificate(id: &str, c: &OddConstruction, variant: Variant, order: usize) -> Certificate {
    let q = c.frame.q;
    let (graph, degree) = match variant {
        Variant::Girth7OddG1 => (&c.gamma1, None),
        _ => (&c.gamma2, Some(q + 1)),
    };
    let expected = Expectations { degree, girth: Some(7), order: Some(order) };
    let mut cert = certify(id, graph, &expected);
    push_matching_check(&mut cert, &c.cage.graph, &c.plan);

    let field = &c.cage.field;
    let (latin_ok, detail) = match latin_squares(field) {
        Ok(squares) => {
            let latin = squares.iter().all(check_latin);
            let structure = if field.is_prime_field() {
                (0..q).all(|j| rows_shift_match(&squares[j], &squares[(j + 1) % q], |i| (i + 1) % q))
            } else {
                squares.iter().all(is_row_permuted_cyclic_table)
            };
            let what = if field.is_prime_field() { "row shift" } else { "cyclic tables" };
            (latin && structure, format!("{q} squares of order {}; latin {latin}, {what} {structure}", q - 1))
        }
        Err(e) => (false, e.to_string()),
    };
    cert.push("latin_squares", latin_ok, detail);

    match variant {
        Variant::Girth7OddG1 => {
            let profile = graph.degree_profile();
            let ok = profile.get(&(q - 1)) == Some(&3)
                && profile.get(&(q + 1)) == Some(&(graph.n() - 3))
                && profile.len() == 2;
            cert.push("degree_profile", ok, format!("three vertices of degree {}, the rest {}", q - 1, q + 1));
        }
        _ => {
            let ok = c.gamma2.n() == c.gamma1.n() && c.gamma2.edge_count() == c.gamma1.edge_count() + 3;
            cert.push("rewire", ok, format!("|E| {} -> {}", c.gamma1.edge_count(), c.gamma2.edge_count()));
            let qq = q as u64;
            let stated = 2 * qq * qq * qq + 2 * qq * qq - qq + 1;
            cert.order_note = Some(OrderNote {
                formula: "2q^3+2q^2-q+1".into(),
                stated,
                computed: graph.n() as u64,
                difference: graph.n() as i64 - stated as i64,
            });
        }
    }
    cert
}

fn sidecar(out: &Path, suffix: &str) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn cmd_build(args: &BuildArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let artifact = match build_artifact(args.q, args.variant) {
        Ok(a) => a,
        Err(BuildError::Invalid(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            return 2;
        }
        Err(BuildError::Failed(m)) => {
            let _ = writeln!(stderr, "error: construction failed: {m}");
            return 3;
        }
    };
    let id = graph_id(args.q, args.variant);
    let out = args
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{id}.{}", args.format.extension())));
    let cert_json = artifact.certificate.to_json().into_bytes();
    let labels = encode_labels(&artifact.graph, &id, Some(&artifact.field));
    let main = match args.format {
        Format::CertJson => Ok(cert_json.clone()),
        Format::LabelsJson => labels.as_ref().map(|l| l.clone()).map_err(|e| e.to_string()),
        f => encode(&artifact.graph, f).map(|mut b| {
            if f == Format::Graph6 {
                b.push(b'\n');
            }
            b
        })
        .map_err(|e| e.to_string()),
    };
    let writes = main.and_then(|main| {
        let labels = labels.map_err(|e| e.to_string())?;
        fs::write(&out, main).map_err(|e| format!("{}: {e}", out.display()))?;
        let lp = sidecar(&out, ".labels.json");
        fs::write(&lp, labels).map_err(|e| format!("{}: {e}", lp.display()))?;
        let cp = sidecar(&out, ".cert.json");
        fs::write(&cp, &cert_json).map_err(|e| format!("{}: {e}", cp.display()))
    });
    if let Err(m) = writes {
        let _ = writeln!(stderr, "error: {m}");
        return 1;
    }
    let cert = &artifact.certificate;
    let _ = writeln!(
        stdout,
        "{}: order {}, size {}, girth {}, certificate {}",
        out.display(),
        cert.order,
        cert.size,
        cert.girth.map_or("none".to_string(), |g| g.to_string()),
        if cert.passed() { "passed" } else { "FAILED" }
    );
    if let Some(note) = &cert.order_note {
        let _ = writeln!(
            stdout,
            "note: computed order {} differs from {} = {} by {}",
            note.computed, note.formula, note.stated, note.difference
        );
    }
    if cert.passed() {
        0
    } else {
        for c in cert.failed_checks() {
            let _ = writeln!(stderr, "check {} failed: {}", c.name, c.detail);
        }
        3
    }
}

fn cmd_verify(args: &VerifyArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let bytes = match fs::read(&args.input) {
        Ok(b) => b,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}: {e}", args.input.display());
            return 1;
        }
    };
    let g = match decode(&bytes, args.format) {
        Ok(g) => g,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return 2;
        }
    };
    let expected = Expectations { degree: args.degree, girth: args.girth, order: args.order };
    let id = args.input.file_name().map_or("input".into(), |s| s.to_string_lossy().into_owned());
    let cert = certify(&id, &g, &expected);
    let _ = stdout.write_all(cert.to_json().as_bytes());
    if cert.passed() {
        0
    } else {
        3
    }
}

/// One row of `table`.
pub fn table_row(q: u64) -> Result<[u64; 5], String> {
    let variant = if q.is_multiple_of(2) { Variant::Girth7Even } else { Variant::Girth7OddG2 };
    validate(q, variant)?;
    let order = match variant {
        Variant::Girth7Even => {
            crate::excise_even::build_gamma_q1_even(q).map_err(|e| e.to_string())?.graph.n()
        }
        _ => crate::excise_odd::build_gamma_q2(q).map_err(|e| e.to_string())?.n(),
    } as u64;
    let cage = build_cage(q).map_err(|e| e.to_string())?.graph.n() as u64;
    let bound = moore_bound(q + 1, 7);
    Ok([q, cage, order, bound, order - bound])
}

fn cmd_table(args: &TableArgs, stdout: &mut dyn Write) -> i32 {
    let _ = writeln!(stdout, "q\tcage_order\tgirth7_order\tmoore_bound_g7\texcess");
    let mut ok = 0;
    for &q in &args.qs {
        match table_row(q) {
            Ok(row) => {
                ok += 1;
                let cells: Vec<String> = row.iter().map(u64::to_string).collect();
                let _ = writeln!(stdout, "{}", cells.join("\t"));
            }
            Err(m) => {
                let _ = writeln!(stdout, "{q}\terror: {m}");
            }
        }
    }
    if ok > 0 || args.qs.is_empty() {
        0
    } else {
        2
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(rendered.as_bytes());
            } else {
                let _ = stdout.write_all(rendered.as_bytes());
            }
            return e.exit_code();
        }
    };
    match &cli.command {
        Command::Build(a) => cmd_build(a, stdout, stderr),
        Command::Verify(a) => cmd_verify(a, stdout, stderr),
        Command::Table(a) => cmd_table(a, stdout),
    }
}
