use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use transurf::curvature_ode::{equilibria, DEFAULT_STEP, DOUBLE_ROOT_TOL};
use transurf::fixtures::{self, Fixture};
use transurf::io::{
    parse_curve_csv, tolerance_scale, write_curve_csv, write_mesh, write_profile_csv,
    write_surface_csv, CurveData, MeshFormat, VerificationReport,
};
use transurf::moduli::{coefficients_from_roots, is_double_root, roots_from_coefficients};
use transurf::pipeline::{construct, ConstructOptions, DEFAULT_GRID};
use transurf::verify::{certify_fixture, verify_curve};
use transurf::{Error, Result};

/// Samples written for a fixture's generating curve.
const FIXTURE_CURVE_SAMPLES: usize = 1001;

#[derive(Parser)]
#[command(
    name = "transurf",
    version,
    about = "Minimal translation surfaces from the roots of a cubic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the generating curve and surface for given moduli and write all outputs.
    Construct(ConstructArgs),
    /// Check a curve CSV (Frenet or sampled schema) and print or write a report.
    Verify(VerifyArgs),
    /// Mesh the surface α(s) + α(t) of a curve CSV.
    Export(ExportArgs),
    /// Write a reference surface: plane, helicoid or scherk:<c>:<theta>.
    Fixture(FixtureArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Obj,
    Ply,
}

impl From<Format> for MeshFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Obj => MeshFormat::Obj,
            Format::Ply => MeshFormat::Ply,
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    /// Roots λ1 λ2 λ3 of the cubic.
    #[arg(long, num_args = 3, value_names = ["L1", "L2", "L3"], allow_negative_numbers = true,
          required_unless_present = "coeffs", conflicts_with = "coeffs")]
    roots: Option<Vec<f64>>,
    /// Coefficients c1 c2 c3 of −λ³ + c2λ² − c3λ + c1.
    #[arg(long, num_args = 3, value_names = ["C1", "C2", "C3"], allow_negative_numbers = true)]
    coeffs: Option<Vec<f64>>,
    /// Initial curvature, strictly between the two equilibria.
    #[arg(long, allow_negative_numbers = true)]
    y0: Option<f64>,
    #[arg(long, num_args = 2, value_names = ["START", "END"], default_values_t = [0.0, 20.0],
          allow_negative_numbers = true)]
    span: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_STEP)]
    step: f64,
    /// Surface nodes per side.
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Obj)]
    format: Format,
    /// Omit the report timestamp, making every output reproducible byte for byte.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Args)]
struct VerifyArgs {
    file: PathBuf,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Args)]
struct ExportArgs {
    /// Curve CSV with Frenet frames.
    curve: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Defaults to the extension of --out, else obj.
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long, default_value_t = DEFAULT_GRID)]
    grid: usize,
}

#[derive(Args)]
struct FixtureArgs {
    name: String,
    #[arg(long)]
    out: PathBuf,
    #[arg(long, default_value_t = fixtures::DEFAULT_GRID)]
    grid: usize,
    #[arg(long, value_enum, default_value_t = Format::Obj)]
    format: Format,
    #[arg(long)]
    no_timestamp: bool,
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn write_report(report: &VerificationReport, path: &Path) -> Result<()> {
    fs::write(path, report.to_json())?;
    Ok(())
}

fn summarize(report: &VerificationReport, path: Option<&Path>) {
    for n in &report.notices {
        eprintln!("note: {n}");
    }
    let verdict = if report.pass { "PASS" } else { "FAIL" };
    let failing = report.failing();
    let detail = if failing.is_empty() {
        String::new()
    } else {
        format!(" (failing: {})", failing.join(", "))
    };
    match path {
        Some(p) => eprintln!("report {verdict}{detail}: {}", p.display()),
        None => eprintln!("report {verdict}{detail}"),
    }
}

fn run_construct(args: ConstructArgs) -> Result<bool> {
    let moduli = match (&args.roots, &args.coeffs) {
        (Some(r), _) => coefficients_from_roots(r[0], r[1], r[2])?,
        (None, Some(c)) => roots_from_coefficients(c[0], c[1], c[2])?,
        (None, None) => return Err(Error::InvalidArgument("give --roots or --coeffs".into())),
    };
    let y0 = match args.y0 {
        Some(y) => y,
        None if is_double_root(&moduli, DOUBLE_ROOT_TOL) => equilibria(&moduli).0,
        None => {
            return Err(Error::InvalidArgument(
                "--y0 is required unless λ1 = λ2".into(),
            ))
        }
    };
    let opts = ConstructOptions {
        moduli,
        y0,
        span: (args.span[0], args.span[1]),
        step: args.step,
        grid: args.grid,
    };
    let mut result = construct(&opts, tolerance_scale()?)?;
    let dir = &args.out;
    fs::create_dir_all(dir)?;
    let mut moduli_json = moduli.to_json();
    moduli_json.push('\n');
    fs::write(dir.join("moduli.json"), moduli_json)?;
    write_profile_csv(&result.profile, create(&dir.join("profile.csv"))?)?;
    write_curve_csv(&result.curve, create(&dir.join("curve.csv"))?)?;
    write_surface_csv(&result.surface, create(&dir.join("surface.csv"))?)?;
    let format = MeshFormat::from(args.format);
    let mesh_path = dir.join(format!("surface.{}", format.extension()));
    let stats = write_mesh(&result.surface, format, create(&mesh_path)?)?;
    let report = &mut result.report;
    report.record("mesh_triangles", stats.triangles as f64);
    report.record("mesh_omitted_cells", stats.omitted_cells as f64);
    if !args.no_timestamp {
        report.stamp_now();
    }
    let report_path = dir.join("report.json");
    write_report(report, &report_path)?;
    summarize(report, Some(&report_path));
    Ok(report.pass)
}

fn run_verify(args: VerifyArgs) -> Result<bool> {
    let bytes = fs::read(&args.file)?;
    let data = parse_curve_csv(&bytes)?;
    let mut report = verify_curve(
        &data,
        Some(args.file.display().to_string()),
        tolerance_scale()?,
    )?;
    if !args.no_timestamp {
        report.stamp_now();
    }
    match &args.out {
        Some(p) => write_report(&report, p)?,
        None => print!("{}", report.to_json()),
    }
    summarize(&report, args.out.as_deref());
    Ok(report.pass)
}

fn run_export(args: ExportArgs) -> Result<bool> {
    let bytes = fs::read(&args.curve)?;
    let curve = match parse_curve_csv(&bytes)? {
        CurveData::Frenet(c) => c,
        CurveData::Sampled(_) => {
            return Err(Error::InvalidArgument(
                "export needs a curve with frames (s,x,y,z,tx,...,kappa,tau)".into(),
            ))
        }
    };
    let format = match (args.format, args.out.extension().and_then(|e| e.to_str())) {
        (Some(f), _) => f.into(),
        (None, Some("ply")) => MeshFormat::Ply,
        _ => MeshFormat::Obj,
    };
    let grid = curve.subsample(args.grid);
    let surface = transurf::geometry::surface_from_curves(&grid, &grid)?;
    let stats = write_mesh(&surface, format, create(&args.out)?)?;
    eprintln!(
        "{} vertices, {} triangles, {} cells omitted at degenerate nodes: {}",
        stats.vertices,
        stats.triangles,
        stats.omitted_cells,
        args.out.display()
    );
    Ok(true)
}

fn run_fixture(args: FixtureArgs) -> Result<bool> {
    let fixture: Fixture = args.name.parse()?;
    let (surface, mut report) = certify_fixture(&fixture, args.grid, tolerance_scale()?)?;
    let dir = &args.out;
    fs::create_dir_all(dir)?;
    write_curve_csv(
        &fixture.generator(FIXTURE_CURVE_SAMPLES)?,
        create(&dir.join("curve.csv"))?,
    )?;
    write_surface_csv(&surface, create(&dir.join("surface.csv"))?)?;
    let format = MeshFormat::from(args.format);
    let stats = write_mesh(
        &surface,
        format,
        create(&dir.join(format!("surface.{}", format.extension())))?,
    )?;
    report.record("mesh_triangles", stats.triangles as f64);
    report.record("mesh_omitted_cells", stats.omitted_cells as f64);
    if !args.no_timestamp {
        report.stamp_now();
    }
    let report_path = dir.join("report.json");
    write_report(&report, &report_path)?;
    summarize(&report, Some(&report_path));
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Construct(a) => run_construct(a),
        Command::Verify(a) => run_verify(a),
        Command::Export(a) => run_export(a),
        Command::Fixture(a) => run_fixture(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            let _ = writeln!(std::io::stderr(), "error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
