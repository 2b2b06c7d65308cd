//! The `obstructor` command line: argument parsing, dispatch and reports.
//!
//! Exit codes: 0 on success, 1 when a mathematical check fails (a certificate is
//! rejected or a construction cannot be completed), 2 on operator error.

mod generate;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

pub use generate::{generate, GenKind};
pub use report::{flatten_value, parse_text, Header, Report};

use crate::complex::{complex_to_value, parse_complex_file, write_complex_text, SimplicialComplex, Vertex};
use crate::cycles::{
    cross_polytope_certificate, inductive_essential_cycle, join_essential_cycles, pobdim_report, union_ray_cycle, wedge_with_ray, Composition, RayBranch,
};
use crate::deleted::{deleted_product, diagonal_filtration, grid_window, vankampen_obstruction, VanKampenWitness};
use crate::equivariant::{quotient_complex, verify_essential_cycle, EssentialCycleCertificate};
use crate::error::{Error, Result};
use crate::gf2::{betti_numbers, homology_basis};
use crate::pro::{is_pro_trivial, pro_homology_of_filtration, stable_image, validate_system, InverseSystemGF2};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "obstructor", version, about = "Van Kampen-type embedding obstructions over GF(2)")]
struct Cli {
    /// Emit the report as JSON instead of key: value lines.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized generators; recorded in every header.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mod-2 Betti numbers of a complex.
    Homology {
        file: PathBuf,
        /// Report only this dimension.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// The simplicial deleted product with its swap and quotient.
    DeletedProduct {
        file: PathBuf,
        /// Write the deleted product as a complex file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The Van Kampen obstruction for embedding in R^m.
    Vankampen {
        file: PathBuf,
        #[arg(long)]
        dim: usize,
    },
    /// Levels of the diagonal-complement filtration of a window.
    Filtration {
        file: Option<PathBuf>,
        /// `grid:k:h` or a complex file with coordinates.
        #[arg(long)]
        window: Option<String>,
        #[arg(long, value_delimiter = ',', required = true)]
        radii: Vec<usize>,
        /// Build levels only up to this dimension.
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Pro-homology of a filtration, or analysis of a stored inverse system.
    ProHomology {
        /// A window complex when radii are given, a system JSON file otherwise.
        file: Option<PathBuf>,
        #[arg(long)]
        window: Option<String>,
        #[arg(long, value_delimiter = ',')]
        radii: Vec<usize>,
        #[arg(long)]
        dim: Option<usize>,
        /// Write the computed system as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an essential-cycle certificate bundle.
    VerifyCycle { bundle: PathBuf },
    /// Build an essential cycle in a window by the inductive construction.
    BuildCycle {
        #[arg(long)]
        window: String,
        #[arg(long, value_delimiter = ',', required = true)]
        radii: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Raise a certificate one dimension by attaching a ray to its window.
    UnionRay {
        cert: PathBuf,
        /// `r,R` with `0 < r < R`.
        #[arg(long, value_delimiter = ',', required = true)]
        radii: Vec<usize>,
        /// Ray length; defaults to `2r`.
        #[arg(long)]
        length: Option<usize>,
        /// Label of the attachment vertex; defaults to the vertex at the origin.
        #[arg(long)]
        attach: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Join two certificates.
    Join {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Summarize what a list of certificates implies.
    Report {
        certs: Vec<PathBuf>,
        /// `i,j`: join certificates `i` and `j` (1-based).
        #[arg(long = "join", value_parser = parse_pair)]
        joins: Vec<(usize, usize)>,
        /// `i`: union certificate `i` with a ray (1-based).
        #[arg(long = "ray")]
        rays: Vec<usize>,
    },
    /// Write a fixture complex.
    Generate {
        kind: GenKind,
        params: Vec<usize>,
        /// For `cross_polytope`: emit the antipodal certificate bundle instead.
        #[arg(long)]
        certificate: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_pair(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected i,j, got `{s}`"))?;
    let p = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
    Ok((p(a)?, p(b)?))
}

/// What a command produced.
enum Outcome {
    Report(Report),
    /// A report whose checks failed; printed, then exit 1.
    Failed(Report),
    /// A complex file written to standard output.
    Complex(SimplicialComplex),
    /// A certificate bundle written to standard output.
    Bundle(EssentialCycleCertificate),
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Construction(_) => 1,
        _ => 2,
    }
}

/// Parses `argv` (program name first), runs the command and writes the report.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let invocation = std::iter::once("obstructor".to_string())
        .chain(args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()))
        .collect::<Vec<_>>()
        .join(" ");
    let header = Header { version: VERSION, invocation, seed: cli.seed };
    let result = dispatch(&cli);
    let (code, body) = match result {
        Ok(Outcome::Report(r)) => (0, Some(r)),
        Ok(Outcome::Failed(r)) => (1, Some(r)),
        Ok(Outcome::Complex(c)) => {
            let text = if cli.json {
                let mut v = complex_to_value(&c);
                if let Value::Object(m) = &mut v {
                    m.shift_insert(0, "header".into(), header.to_value());
                }
                serde_json::to_string_pretty(&v).expect("plain data") + "\n"
            } else {
                header.to_text() + &write_complex_text(&c)
            };
            let _ = out.write_all(text.as_bytes());
            return 0;
        }
        Ok(Outcome::Bundle(c)) => {
            // readers ignore the extra key, so the bundle reads back unchanged
            let mut v: Value = serde_json::from_str(&c.to_json()).expect("bundle is JSON");
            if let Value::Object(m) = &mut v {
                m.shift_insert(0, "header".into(), header.to_value());
            }
            let _ = out.write_all((serde_json::to_string_pretty(&v).expect("plain data") + "\n").as_bytes());
            return 0;
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            (exit_code(&e), None)
        }
    };
    let text = match (&body, cli.json) {
        (Some(r), true) => {
            let v = json!({ "header": header.to_value(), "report": r.to_value() });
            serde_json::to_string_pretty(&v).expect("plain data") + "\n"
        }
        (Some(r), false) => header.to_text() + &r.to_text(),
        (None, true) => serde_json::to_string_pretty(&json!({ "header": header.to_value() })).expect("plain data") + "\n",
        (None, false) => header.to_text(),
    };
    let _ = out.write_all(text.as_bytes());
    code
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// `grid:k:h` or a path to a complex file.
fn load_window(text: &str) -> Result<SimplicialComplex> {
    if let Some(rest) = text.strip_prefix("grid:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let nums: Vec<usize> = parts
            .iter()
            .map(|p| p.parse::<usize>().map_err(|_| Error::Precondition(format!("bad window `{text}`, expected grid:k:h"))))
            .collect::<Result<_>>()?;
        if nums.len() != 2 {
            return Err(Error::Precondition(format!("bad window `{text}`, expected grid:k:h")));
        }
        return grid_window(nums[0], nums[1]);
    }
    parse_complex_file(Path::new(text))
}

fn window_from(file: &Option<PathBuf>, window: &Option<String>) -> Result<SimplicialComplex> {
    match (file, window) {
        (Some(f), None) => parse_complex_file(f),
        (None, Some(w)) => load_window(w),
        (Some(_), Some(_)) => Err(Error::Precondition("give either a window file or --window, not both".into())),
        (None, None) => Err(Error::Precondition("a window is required (a file or --window grid:k:h)".into())),
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Homology { file, dim } => homology_cmd(file, *dim),
        Command::DeletedProduct { file, out } => deleted_cmd(file, out.as_deref()),
        Command::Vankampen { file, dim } => vankampen_cmd(file, *dim),
        Command::Filtration { file, window, radii, dim } => filtration_cmd(&window_from(file, window)?, radii, *dim),
        Command::ProHomology { file, window, radii, dim, out } => pro_cmd(file, window, radii, *dim, out.as_deref()),
        Command::VerifyCycle { bundle } => verify_cmd(bundle),
        Command::BuildCycle { window, radii, out } => build_cmd(window, radii, out.as_deref()),
        Command::UnionRay { cert, radii, length, attach, out } => {
            union_ray_cmd(cert, radii, *length, attach.as_deref(), out.as_deref())
        }
        Command::Join { first, second, out } => join_cmd(first, second, out.as_deref()),
        Command::Report { certs, joins, rays } => report_cmd(certs, joins, rays),
        Command::Generate { kind, params, certificate: true, out } => {
            if *kind != GenKind::CrossPolytope || params.len() != 1 || params[0] == 0 {
                return Err(Error::Precondition("--certificate needs cross_polytope <d> with d >= 1".into()));
            }
            let cert = cross_polytope_certificate(params[0] - 1);
            match out {
                Some(p) => {
                    let mut r = Report::new();
                    r.put("note", cert.note.clone());
                    save(&mut r, &cert, Some(p))?;
                    Ok(Outcome::Report(r))
                }
                None => Ok(Outcome::Bundle(cert)),
            }
        }
        Command::Generate { kind, params, certificate: false, out } => {
            let c = generate(*kind, params, cli.seed)?;
            match out {
                Some(p) => {
                    write_file(p, &write_complex_text(&c))?;
                    let mut r = Report::new();
                    r.put("kind", format!("{kind:?}").to_lowercase()).put("f_vector", c.f_vector()).put("written", p.display().to_string());
                    Ok(Outcome::Report(r))
                }
                None => Ok(Outcome::Complex(c)),
            }
        }
    }
}

fn describe(r: &mut Report, key: &str, c: &SimplicialComplex) {
    r.put(key, json!({ "f_vector": c.f_vector(), "euler": c.euler_characteristic() }));
}

fn homology_cmd(file: &Path, dim: Option<usize>) -> Result<Outcome> {
    let c = parse_complex_file(file)?;
    let mut r = Report::new();
    r.put("f_vector", c.f_vector()).put("euler", c.euler_characteristic());
    match dim {
        Some(j) => {
            r.put("dim", j).put("betti", homology_basis(&c, j).rank());
        }
        None => {
            r.put("betti", betti_numbers(&c));
        }
    }
    Ok(Outcome::Report(r))
}

fn deleted_cmd(file: &Path, out: Option<&Path>) -> Result<Outcome> {
    let k = parse_complex_file(file)?;
    let d = deleted_product(&k);
    let q = quotient_complex(&d.swap)?;
    let mut r = Report::new();
    describe(&mut r, "input", &k);
    describe(&mut r, "deleted", &d.complex);
    r.put("deleted_betti", betti_numbers(&d.complex));
    r.put("free", true);
    describe(&mut r, "quotient", &q.quotient);
    if let Some(p) = out {
        write_file(p, &write_complex_text(&d.complex))?;
        r.put("written", p.display().to_string());
    }
    Ok(Outcome::Report(r))
}

fn vankampen_cmd(file: &Path, m: usize) -> Result<Outcome> {
    let k = parse_complex_file(file)?;
    let v = vankampen_obstruction(&k, m)?;
    let q = &v.quotient.quotient;
    let mut r = Report::new();
    r.put("m", m).put("obstruction", v.obstruction);
    describe(&mut r, "deleted", &v.deleted.complex);
    describe(&mut r, "quotient", q);
    let (kind, text) = match &v.witness {
        VanKampenWitness::Cycle(z) => ("cycle", z.to_text(q)),
        VanKampenWitness::Cochain(c) => ("cochain", c.to_text(q)),
    };
    let size = match &v.witness {
        VanKampenWitness::Cycle(z) => z.len(),
        VanKampenWitness::Cochain(c) => c.len(),
    };
    r.put("witness", json!({ "kind": kind, "size": size, "chain": text.trim_end() }));
    Ok(Outcome::Report(r))
}

fn filtration_cmd(x: &SimplicialComplex, radii: &[usize], dim: Option<usize>) -> Result<Outcome> {
    let f = diagonal_filtration(x, radii, dim)?;
    let mut r = Report::new();
    describe(&mut r, "window", x);
    r.put("radii", f.radii());
    let levels: Vec<Value> = f
        .levels
        .iter()
        .map(|l| json!({ "radius": l.radius, "f_vector": l.complex.f_vector(), "betti": betti_numbers(&l.complex) }))
        .collect();
    r.put("levels", levels);
    r.put("warnings", f.warnings.clone());
    Ok(Outcome::Report(r))
}

fn system_report(r: &mut Report, s: &InverseSystemGF2) -> Result<()> {
    r.put("dims", s.dims().to_vec());
    r.put("labels", s.labels.clone());
    let steps: Vec<Value> = (0..s.len().saturating_sub(1))
        .map(|i| json!({ "from": s.labels[i + 1], "to": s.labels[i], "rows": s.map(i, i + 1).to_row_strings() }))
        .collect();
    r.put("maps", steps);
    r.put("composition_violations", validate_system(s).len());
    let t = is_pro_trivial(s);
    r.put("pro_trivial", json!({ "verdict": t.verdict.to_string(), "depth": t.depth, "witnesses": t.witnesses }));
    let mut images = Vec::new();
    for i in 0..s.len() {
        let im = stable_image(s, i)?;
        images.push(json!({ "at": s.labels[i], "dim": im.dim(), "stabilized_at": im.stabilized_at }));
    }
    r.put("stable_image", images);
    Ok(())
}

fn pro_cmd(
    file: &Option<PathBuf>,
    window: &Option<String>,
    radii: &[usize],
    dim: Option<usize>,
    out: Option<&Path>,
) -> Result<Outcome> {
    let mut r = Report::new();
    let system = if radii.is_empty() {
        let path = file.as_ref().ok_or_else(|| Error::Precondition("a system file or --radii is required".into()))?;
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        InverseSystemGF2::from_json(&text)?
    } else {
        let j = dim.ok_or_else(|| Error::Precondition("--dim is required with --radii".into()))?;
        let x = window_from(file, window)?;
        let f = diagonal_filtration(&x, radii, Some(j + 1))?;
        let h = pro_homology_of_filtration(&f, j)?;
        r.put("dim", j).put("reduced", j == 0).put("warnings", h.warnings.clone());
        h.system
    };
    system_report(&mut r, &system)?;
    if let Some(p) = out {
        write_file(p, &system.to_json())?;
        r.put("written", p.display().to_string());
    }
    Ok(Outcome::Report(r))
}

/// Verification summary; `None` when the certificate fails.
fn verification(r: &mut Report, cert: &EssentialCycleCertificate) -> bool {
    let v = verify_essential_cycle(cert);
    r.put("essential", v.passed());
    r.put("m", v.m.map_or(Value::Null, Value::from));
    r.put("deg2", v.deg2.map_or(Value::Null, Value::from));
    r.put("f_vector", cert.complex.f_vector());
    r.put("radius", cert.target.as_ref().map_or(Value::Null, |t| Value::from(t.radius)));
    r.put("note", cert.note.clone());
    let mut checks = serde_json::Map::new();
    for c in &v.checks {
        let status = if c.passed { "pass".to_string() } else { "fail".to_string() };
        let s = if c.detail.is_empty() { status } else { format!("{status} ({})", c.detail) };
        checks.insert(c.name.to_string(), s.into());
    }
    r.put("check", Value::Object(checks));
    v.passed()
}

fn finish(r: Report, ok: bool) -> Result<Outcome> {
    Ok(if ok { Outcome::Report(r) } else { Outcome::Failed(r) })
}

fn save(r: &mut Report, cert: &EssentialCycleCertificate, out: Option<&Path>) -> Result<()> {
    if let Some(p) = out {
        write_file(p, &cert.to_json())?;
        r.put("written", p.display().to_string());
    }
    Ok(())
}

fn verify_cmd(bundle: &Path) -> Result<Outcome> {
    let cert = EssentialCycleCertificate::read(bundle)?;
    let mut r = Report::new();
    let ok = verification(&mut r, &cert);
    finish(r, ok)
}

fn build_cmd(window: &str, radii: &[usize], out: Option<&Path>) -> Result<Outcome> {
    let x = load_window(window)?;
    let built = inductive_essential_cycle(&x, radii)?;
    let mut r = Report::new();
    r.put("window", window).put("radii", radii.to_vec());
    r.put("stage_radii", built.stage_radii.clone());
    r.put("stage_sizes", built.stages.iter().map(|s| s.len()).collect::<Vec<_>>());
    let ok = verification(&mut r, &built.certificate);
    save(&mut r, &built.certificate, out)?;
    finish(r, ok)
}

/// The vertex whose coordinates are all zero.
fn origin(x: &SimplicialComplex) -> Option<Vertex> {
    let coords = x.coords()?;
    x.vertices().find(|&v| coords[v as usize].iter().all(|t| t == &crate::rational::int(0)))
}

fn union_ray_cmd(cert_path: &Path, radii: &[usize], length: Option<usize>, attach: Option<&str>, out: Option<&Path>) -> Result<Outcome> {
    let &[small, big] = radii else {
        return Err(Error::Precondition("--radii takes exactly two values r,R".into()));
    };
    let cert = EssentialCycleCertificate::read(cert_path)?;
    let window = cert
        .target
        .as_ref()
        .map(|t| t.window.clone())
        .ok_or_else(|| Error::Precondition("the certificate has no target map".into()))?;
    let a = match attach {
        Some(label) => *window.label_lookup().get(label).ok_or_else(|| Error::UnknownVertex(label.to_string()))?,
        None => origin(&window).ok_or_else(|| Error::Precondition("no vertex at the origin; pass --attach".into()))?,
    };
    let wedge = wedge_with_ray(&window, a, length.unwrap_or(2 * small))?;
    let res = union_ray_cycle(&wedge, small, big, &cert)?;
    let mut r = Report::new();
    r.put("attach", window.label(a)).put("ray_length", wedge.length()).put("radii", radii.to_vec());
    match res.branch {
        RayBranch::BoundsInLevel => {
            r.put("branch", "bounds-in-level");
        }
        RayBranch::LinkingSlice { search_radius, linking } => {
            r.put("branch", "linking-slice").put("search_radius", search_radius).put("linking", linking);
        }
    }
    r.put("ray_steps", res.ray_steps);
    let ok = verification(&mut r, &res.certificate);
    save(&mut r, &res.certificate, out)?;
    finish(r, ok)
}

fn join_cmd(first: &Path, second: &Path, out: Option<&Path>) -> Result<Outcome> {
    let a = EssentialCycleCertificate::read(first)?;
    let b = EssentialCycleCertificate::read(second)?;
    let j = join_essential_cycles(&a, &b)?;
    let mut r = Report::new();
    let ok = verification(&mut r, &j);
    save(&mut r, &j, out)?;
    finish(r, ok)
}

fn report_cmd(paths: &[PathBuf], joins: &[(usize, usize)], rays: &[usize]) -> Result<Outcome> {
    let certs = paths
        .iter()
        .map(|p| Ok((p.display().to_string(), EssentialCycleCertificate::read(p)?)))
        .collect::<Result<Vec<_>>>()?;
    let index = |i: usize| {
        if i == 0 || i > certs.len() {
            Err(Error::Precondition(format!("certificate index {i} is outside 1..={}", certs.len())))
        } else {
            Ok(i - 1)
        }
    };
    let mut comps = Vec::new();
    for &(i, j) in joins {
        comps.push(Composition::Join(index(i)?, index(j)?));
    }
    for &i in rays {
        comps.push(Composition::Ray(index(i)?));
    }
    let summary = pobdim_report(&certs, &comps);
    let mut r = Report::new();
    for (k, v) in parse_text(&summary.to_text()) {
        r.put(k, v);
    }
    Ok(Outcome::Report(r))
}
