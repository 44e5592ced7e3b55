//! The `cig` command line: `parse`, `compose`, `cig`, `tests gen` and
//! `tests compose`.
//!
//! Exit codes: 0 on success, 1 on domain errors (not composable, no
//! interaction, duplicate test ids, unreachable providers), 2 on usage,
//! I/O, parse and schema errors. Primary output goes to stdout or `--out`;
//! diagnostics, warnings and the `--report` table go to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::cig::{
    build_cig, cig_from_json, cig_to_dot, cig_to_json, classification_report, cross_services,
    find_switching_states,
};
use crate::error::Error;
use crate::interface::compose_many;
use crate::statechart::{
    extract_interfaces, parse_statechart, serialize_statechart, ChartSet, Statechart,
};
use crate::testlib::{compose_libraries, generate_new_tests, TestLibrary};
use crate::CompositionResult;

#[derive(Debug, Parser)]
#[command(
    name = "cig",
    version,
    about = "Component interaction graphs and composed test libraries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate statecharts and print their canonical form.
    Parse {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Compose the components described by the charts, in argument order.
    Compose {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the component interaction graph.
    Cig {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the state classification table to stderr.
        #[arg(long)]
        report: bool,
    },
    /// Generate or compose test libraries.
    #[command(subcommand)]
    Tests(TestsCommand),
}

#[derive(Debug, Subcommand)]
enum TestsCommand {
    /// One interaction test per graph edge.
    Gen {
        #[arg(long)]
        cig: PathBuf,
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply ((T1 ∪ T2) \ Ts) ∪ Tnew.
    Compose {
        #[arg(long)]
        t1: PathBuf,
        #[arg(long)]
        t2: PathBuf,
        /// Output of `cig compose`; its satisfied services define Ts.
        #[arg(long)]
        composition: PathBuf,
        #[arg(long)]
        tnew: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Dot,
    Json,
}

/// Summary of one command invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunReport {
    pub command: String,
    pub inputs: Vec<PathBuf>,
    pub warnings: Vec<String>,
    pub exit_code: i32,
}

/// A failure carrying its exit code.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::NotComposable { .. }
            | Error::NoInteraction
            | Error::DuplicateTestId(_)
            | Error::ReservedTestId(_)
            | Error::UnreachableProvider(_) => 1,
            _ => 2,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

struct Session<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    inputs: Vec<PathBuf>,
    warnings: Vec<String>,
}

impl Session<'_> {
    fn read(&mut self, path: &Path) -> Result<String, Failure> {
        self.inputs.push(path.to_owned());
        fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
    }

    fn chart(&mut self, path: &Path) -> Result<Statechart, Failure> {
        let text = self.read(path)?;
        parse_statechart(&text).map_err(|e| Failure::input(format!("{}:{e}", path.display())))
    }

    fn charts(&mut self, files: &[PathBuf]) -> Result<ChartSet, Failure> {
        let charts = files
            .iter()
            .map(|f| self.chart(f))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ChartSet::new(charts)?)
    }

    fn warn(&mut self, message: String) {
        let _ = writeln!(self.stderr, "warning: {message}");
        self.warnings.push(message);
    }

    fn emit(&mut self, out: Option<&Path>, text: &str) -> Result<(), Failure> {
        match out {
            Some(path) => fs::write(path, text)
                .map_err(|e| Failure::input(format!("{}: {e}", path.display()))),
            None => self
                .stdout
                .write_all(text.as_bytes())
                .map_err(|e| Failure::input(format!("stdout: {e}"))),
        }
    }

    fn need_two(files: &[PathBuf]) -> Result<(), Failure> {
        if files.len() < 2 {
            Err(Failure::input(format!(
                "usage: at least two statechart files are required, got {}",
                files.len()
            )))
        } else {
            Ok(())
        }
    }
}

fn cmd_parse(session: &mut Session<'_>, files: &[PathBuf]) -> Result<(), Failure> {
    let mut failed = 0;
    for (i, file) in files.iter().enumerate() {
        match session.chart(file) {
            Ok(chart) => {
                let sep = if i > 0 { "\n" } else { "" };
                session.emit(None, &format!("{sep}{}", serialize_statechart(&chart)))?;
            }
            Err(f) => {
                let _ = writeln!(session.stderr, "error: {}", f.message);
                failed += 1;
            }
        }
    }
    if failed > 0 {
        return Err(Failure::input(format!(
            "{failed} of {} file(s) invalid",
            files.len()
        )));
    }
    Ok(())
}

fn cmd_compose(
    session: &mut Session<'_>,
    files: &[PathBuf],
    out: Option<&Path>,
) -> Result<(), Failure> {
    Session::need_two(files)?;
    let charts = session.charts(files)?;
    let components = charts
        .charts()
        .iter()
        .map(extract_interfaces)
        .collect::<Result<Vec<_>, _>>()?;
    let result = compose_many(&components)?;
    session.emit(out, &result.to_json())
}

fn cmd_cig(
    session: &mut Session<'_>,
    files: &[PathBuf],
    format: Format,
    out: Option<&Path>,
    report: bool,
) -> Result<(), Failure> {
    Session::need_two(files)?;
    let charts = session.charts(files)?;
    let cig = build_cig(&charts)?;

    let before = cross_services(&charts);
    for s in find_switching_states(&charts) {
        session.warn(format!("removed switching state {s}"));
    }
    for service in before.keys() {
        if !cig.edges().iter().any(|e| &e.service == service) {
            session.warn(format!(
                "service {service} only links switching states and has no edge"
            ));
        }
    }
    if report {
        let table = classification_report(&charts);
        let _ = session.stderr.write_all(table.as_bytes());
    }

    let text = match format {
        Format::Dot => cig_to_dot(&cig),
        Format::Json => cig_to_json(&cig),
    };
    session.emit(out, &text)
}

fn cmd_tests_gen(
    session: &mut Session<'_>,
    cig_path: &Path,
    files: &[PathBuf],
    out: Option<&Path>,
) -> Result<(), Failure> {
    let text = session.read(cig_path)?;
    let cig = cig_from_json(&text)?;
    let charts = session.charts(files)?;
    let library = generate_new_tests(&cig, &charts)?;
    session.emit(out, &library.to_json())
}

fn cmd_tests_compose(
    session: &mut Session<'_>,
    paths: [&Path; 4],
    out: Option<&Path>,
) -> Result<(), Failure> {
    let [t1, t2, composition, tnew] = paths;
    let t1 = TestLibrary::from_json(&session.read(t1)?)?;
    let t2 = TestLibrary::from_json(&session.read(t2)?)?;
    let composition = CompositionResult::from_json(&session.read(composition)?)?;
    let tnew = TestLibrary::from_json(&session.read(tnew)?)?;
    let result = compose_libraries(&t1, &t2, &composition.satisfied_overall(), &tnew)?;
    session.emit(out, &result.to_json())
}

/// Parses `args` (including the program name) and runs the command,
/// writing to the given streams.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> RunReport
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return RunReport {
                command: String::new(),
                inputs: Vec::new(),
                warnings: Vec::new(),
                exit_code: code,
            };
        }
    };

    let mut session = Session {
        stdout,
        stderr,
        inputs: Vec::new(),
        warnings: Vec::new(),
    };
    let (name, outcome) = match &cli.command {
        Command::Parse { files } => ("parse", cmd_parse(&mut session, files)),
        Command::Compose { files, out } => {
            ("compose", cmd_compose(&mut session, files, out.as_deref()))
        }
        Command::Cig {
            files,
            format,
            out,
            report,
        } => (
            "cig",
            cmd_cig(&mut session, files, *format, out.as_deref(), *report),
        ),
        Command::Tests(TestsCommand::Gen { cig, files, out }) => (
            "tests gen",
            cmd_tests_gen(&mut session, cig, files, out.as_deref()),
        ),
        Command::Tests(TestsCommand::Compose {
            t1,
            t2,
            composition,
            tnew,
            out,
        }) => (
            "tests compose",
            cmd_tests_compose(&mut session, [t1, t2, composition, tnew], out.as_deref()),
        ),
    };

    let exit_code = match outcome {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(session.stderr, "error: {}", f.message);
            f.code
        }
    };
    RunReport {
        command: name.to_owned(),
        inputs: session.inputs,
        warnings: session.warnings,
        exit_code,
    }
}
