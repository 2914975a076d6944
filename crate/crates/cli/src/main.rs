use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use laddertool_core::ideals::MembershipMode;
use laddertool_core::invariants::{
    canonical_class, class_group, is_gorenstein, semidualizing_census, CoefficientDescriptor,
};
use laddertool_core::io::{analyze, fixtures, parse, render, Format, Overlay, ReportDocument};
use laddertool_core::ladder::{assumption_d, decompose, t_components, ComponentKind, Ladder};
use laddertool_core::poly::GroebnerCaps;
use laddertool_core::psi::DEFAULT_MAX_CELLS;
use laddertool_core::verify::{
    run_fixture_suite, verify_correspondence, verify_decomposition, verify_inverse_seeded, verify_residual_canonical,
    CorrespondenceOptions, SuiteCaps, Verdict, VerificationReport,
};
use laddertool_core::Error;

mod text;

#[derive(Parser)]
#[command(name = "laddertool", version, about = "Invariants of ladder determinantal rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Corner profile, corner types and t-components.
    Analyze(Common),
    /// Divisor class group and its basis.
    Classgroup(Common),
    /// Canonical class of each connected t-component.
    Canonical(Common),
    /// Gorenstein pieces and the semidualizing census.
    Semidualizing(Common),
    /// Gluing decomposition into pieces.
    Decompose(Common),
    /// Symbolic checks on the input, or the built-in suite with --suite.
    Verify(VerifyArgs),
    /// ASCII grid with an optional overlay.
    Render(RenderArgs),
}

#[derive(Args)]
struct Source {
    /// Ladder file, or `-` for standard input.
    #[arg(long, conflicts_with = "fixture")]
    input: Option<PathBuf>,
    /// Bundled ladder: L1, L2, L3, L4 or full:MxN.
    #[arg(long)]
    fixture: Option<String>,
    #[arg(long, default_value_t = Format::Grid)]
    format: Format,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    source: Source,
    /// Minor size.
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
    t: u64,
    /// Coefficient ring descriptor (JSON).
    #[arg(long)]
    coeff: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Mode {
    AssumedGb,
    Buchberger,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..), required_unless_present = "suite")]
    t: Option<u64>,
    #[arg(long)]
    coeff: Option<PathBuf>,
    /// Run the built-in fixture suite instead of checking one ladder.
    #[arg(long)]
    suite: bool,
    #[arg(long, env = "LADDERTOOL_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Mode::Buchberger)]
    mode: Mode,
    /// Largest S-polynomial degree during completion.
    #[arg(long)]
    degree_cap: Option<u32>,
    #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
    max_cells: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum OverlayArg {
    None,
    Corners,
    Borders,
    Z,
    Pieces,
}

#[derive(Args)]
struct RenderArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_parser = clap::value_parser!(u64).range(2..), required_if_eq("overlay", "pieces"))]
    t: Option<u64>,
    #[arg(long, value_enum, default_value_t = OverlayArg::None)]
    overlay: OverlayArg,
}

/// Exit status for a run whose checks did not all pass.
#[derive(Debug)]
enum Failure {
    Error(Error),
    Checks(u8),
    Usage(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn load(source: &Source) -> Result<Ladder, Failure> {
    match (&source.fixture, &source.input) {
        (Some(name), _) => Ok(fixtures::by_name(name)?),
        (None, Some(path)) => {
            let mut bytes = Vec::new();
            let read = if path.as_os_str() == "-" {
                std::io::stdin().read_to_end(&mut bytes).map(|_| ())
            } else {
                std::fs::read(path).map(|b| bytes = b)
            };
            read.map_err(|e| Error::Parse { line: 0, column: 0, message: format!("{}: {e}", path.display()) })?;
            Ok(parse(&bytes, source.format)?)
        }
        (None, None) => Err(Failure::Usage("one of --input or --fixture is required")),
    }
}

fn coefficient(path: &Option<PathBuf>) -> Result<CoefficientDescriptor, Error> {
    match path {
        None => Ok(CoefficientDescriptor::default()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| Error::InvalidDescriptor(format!("{}: {e}", p.display())))?;
            CoefficientDescriptor::from_json(&text)
        }
    }
}

fn emit(out: &mut impl Write, json: bool, doc: &ReportDocument, human: impl FnOnce() -> String) {
    let body = if json { doc.to_json() } else { human() };
    let _ = writeln!(out, "{}", body.trim_end());
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    match cli.command {
        Command::Analyze(a) => {
            let (y, t, coeff) = (load(&a.source)?, a.t as usize, coefficient(&a.coeff)?);
            let analysis = analyze(&y, t)?;
            let mut doc = ReportDocument::new(&y, Some(t), coeff);
            doc.sections.profile = Some(analysis.clone());
            emit(out, a.source.json, &doc, || text::analysis(&y, &analysis));
        }
        Command::Classgroup(a) => {
            let (y, t, coeff) = (load(&a.source)?, a.t as usize, coefficient(&a.coeff)?);
            let report = class_group(&y, t, &coeff)?;
            let mut doc = ReportDocument::new(&y, Some(t), coeff);
            doc.sections.class_group = Some(report.clone());
            emit(out, a.source.json, &doc, || text::class_group(&report));
        }
        Command::Canonical(a) => {
            let (y, t, coeff) = (load(&a.source)?, a.t as usize, coefficient(&a.coeff)?);
            let classes = canonical_class(&y, t)?;
            let mut doc = ReportDocument::new(&y, Some(t), coeff);
            doc.sections.canonical = Some(classes.clone());
            emit(out, a.source.json, &doc, || text::canonical(&classes));
        }
        Command::Semidualizing(a) => {
            let (y, t, coeff) = (load(&a.source)?, a.t as usize, coefficient(&a.coeff)?);
            let census = semidualizing_census(&y, t, &coeff)?;
            let gorenstein = is_gorenstein(&y, t)?;
            let mut doc = ReportDocument::new(&y, Some(t), coeff);
            doc.sections.semidualizing = Some(census.clone());
            doc.sections.gorenstein = Some(gorenstein.clone());
            emit(out, a.source.json, &doc, || text::census(&census, &gorenstein));
        }
        Command::Decompose(a) => {
            let (y, t, coeff) = (load(&a.source)?, a.t as usize, coefficient(&a.coeff)?);
            let d = decompose(&y, t)?;
            let picture = render(&y, Overlay::Pieces { t })?;
            let mut doc = ReportDocument::new(&y, Some(t), coeff);
            doc.sections.decomposition = Some(d.clone());
            emit(out, a.source.json, &doc, || text::decomposition(&d, &picture));
        }
        Command::Verify(a) => return verify(a, out),
        Command::Render(a) => {
            let y = load(&a.source)?;
            let overlay = match a.overlay {
                OverlayArg::None => Overlay::None,
                OverlayArg::Corners => Overlay::Corners,
                OverlayArg::Borders => Overlay::Borders,
                OverlayArg::Z => Overlay::Z,
                OverlayArg::Pieces => {
                    Overlay::Pieces { t: a.t.expect("clap requires --t") as usize }
                }
            };
            let picture = render(&y, overlay)?;
            if a.source.json {
                let lines: Vec<&str> = picture.lines().collect();
                let value = serde_json::json!({ "input_digest": laddertool_core::io::input_digest(&y), "grid": lines });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("json"));
            } else {
                let _ = writeln!(out, "{picture}");
            }
        }
    }
    Ok(())
}

fn verify(a: VerifyArgs, out: &mut impl Write) -> Result<(), Failure> {
    let coeff = coefficient(&a.coeff)?;
    let mut caps = GroebnerCaps::default();
    if let Some(d) = a.degree_cap {
        caps.max_degree = d;
    }
    let (reports, doc_ladder, t) = if a.suite {
        let suite_caps = SuiteCaps { groebner: caps, ..SuiteCaps::default() };
        let reports = run_fixture_suite(a.seed, &suite_caps);
        (reports, fixtures::l1(), None)
    } else {
        let y = load(&a.source)?;
        let t = a.t.expect("clap requires --t") as usize;
        let opts = CorrespondenceOptions {
            mode: match a.mode {
                Mode::AssumedGb => MembershipMode::AssumedGb,
                Mode::Buchberger => MembershipMode::Buchberger,
            },
            caps,
            max_cells: a.max_cells,
            ..CorrespondenceOptions::default()
        };
        let mut reports = vec![verify_decomposition(&y, t)];
        if t > 2 {
            for tc in t_components(&y, t)?.into_iter().filter(|c| c.kind == ComponentKind::Connected) {
                let c = &tc.ladder;
                reports.push(verify_inverse_seeded(c, t, a.seed));
                reports.push(verify_correspondence(c, t, &opts));
                if assumption_d(c, t)?.holds {
                    reports.push(verify_residual_canonical(c, t));
                }
            }
        }
        (reports, y, Some(t))
    };
    let reports: Vec<VerificationReport> = reports.into_iter().map(VerificationReport::without_timing).collect();
    let mut doc = ReportDocument::new(&doc_ladder, t, coeff);
    if a.suite {
        doc.input_digest = "suite".into();
    }
    doc.sections.verification = Some(reports.clone());
    emit(out, a.source.json, &doc, || text::verification(&reports));
    if reports.iter().any(|r| r.verdict == Verdict::Fail) {
        Err(Failure::Checks(2))
    } else if reports.iter().any(|r| r.verdict == Verdict::Inconclusive) {
        Err(Failure::Checks(4))
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks(code)) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            if let Error::AssumptionDViolated(_) = e {
                eprintln!("hint: run `decompose` to split the ladder into pieces that satisfy (d)");
            }
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
