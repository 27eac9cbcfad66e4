//! The `lattice-tax` command line.
//!
//! Exit codes: 0 on success, 1 for usage errors, 2 for data errors
//! (unreadable files, malformed tables, failed computations).

use std::ffi::OsString;
use std::io::{self, BufRead, Write};
use std::net::SocketAddr;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lattice_tax::exploration::{question_text, start_session, Counterexample, SessionStatus};
use lattice_tax::formats::{serialize_cxt, ParseReport};
use lattice_tax::lattice::{build_lattice, LineDiagram};
use lattice_tax::FormalContext;

use crate::input::{builtin, builtin_names, parse_table, render_table, TableFormat, DEFAULT_DATASET};
use crate::service::{router, AppState};
use crate::views::{biclusters_view, concepts_view, implications_view};

#[derive(Parser, Debug)]
#[command(name = "lattice-tax", version, about = "Concept lattices, implications, biclusters and attribute exploration")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Default)]
struct Source {
    /// Context file (.cxt, or .csv by extension); with a bare --builtin, a dataset name
    #[arg(short = 'i', long = "input", value_name = "FILE")]
    input: Option<String>,
    /// Use a bundled dataset (default: fca-related-biclustering)
    #[arg(long, value_name = "NAME", num_args = 0..=1, default_missing_value = "")]
    builtin: Option<String>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
enum OutputFormat {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the formal concepts in lectic order (dot: line diagram)
    Concepts {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Print the Duquenne-Guigues implication base with supports
    Implications {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
    },
    /// Mine OA-biclusters of at least the given density
    Biclusters {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t)]
        format: OutputFormat,
        #[arg(long = "min-density", value_name = "R", default_value_t = 0.0)]
        min_density: f64,
    },
    /// Interactive attribute exploration on the terminal
    Explore {
        #[command(flatten)]
        source: Source,
        /// Directory for the final session.json and context.cxt
        #[arg(long, value_name = "DIR")]
        snapshot: Option<PathBuf>,
    },
    /// Convert between cxt and csv (reads stdin without -i)
    Convert {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_name = "FORMAT")]
        from: Option<TableFormat>,
        #[arg(long, value_name = "FORMAT")]
        to: TableFormat,
        /// Context name to write (CSV carries none)
        #[arg(long)]
        name: Option<String>,
    },
    /// Run the HTTP/JSON service
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: std::net::IpAddr,
        /// Directory with the static UI bundle, served at /
        #[arg(long = "static", value_name = "DIR")]
        static_dir: Option<PathBuf>,
        /// Directory for JSON snapshots of contexts and sessions
        #[arg(long, value_name = "DIR")]
        snapshot: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<lattice_tax::Error> for Failure {
    fn from(e: lattice_tax::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Data(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

/// Runs one command line. `argv` includes the program name.
pub fn cli_dispatch<I, T>(argv: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            let text = e.render().to_string();
            if informational {
                let _ = write!(stdout, "{text}");
                return 0;
            }
            let _ = write!(stderr, "{text}");
            return 1;
        }
    };
    match run(cli.command, stdin, stdout, stderr) {
        Ok(()) => 0,
        Err(Failure::Usage(message)) => {
            let _ = writeln!(stderr, "error: {message}");
            1
        }
        Err(Failure::Data(message)) => {
            let _ = writeln!(stderr, "error: {message}");
            2
        }
    }
}

fn run(command: Command, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Outcome {
    match command {
        Command::Concepts { source, format } => {
            let ctx = load(&source, None, stderr)?;
            match format {
                OutputFormat::Json => write_json(stdout, &concepts_view(&ctx)?)?,
                OutputFormat::Dot => {
                    let lattice = build_lattice(&ctx)?;
                    write!(stdout, "{}", LineDiagram::new(&ctx, &lattice).to_dot())?;
                }
                OutputFormat::Text => {
                    let view = concepts_view(&ctx)?;
                    for (i, c) in view.concepts.iter().enumerate() {
                        writeln!(stdout, "{i}\t{{{}}}\t{{{}}}", c.extent.join(", "), c.intent.join(", "))?;
                    }
                    writeln!(stdout, "{} concepts", view.count)?;
                }
            }
        }
        Command::Implications { source, format } => {
            let ctx = load(&source, None, stderr)?;
            let view = implications_view(&ctx);
            match format {
                OutputFormat::Json => write_json(stdout, &view)?,
                OutputFormat::Text => {
                    for imp in &view.implications {
                        writeln!(stdout, "{imp}")?;
                    }
                }
                OutputFormat::Dot => return Err(Failure::Usage("--format dot is only available for concepts".into())),
            }
        }
        Command::Biclusters { source, format, min_density } => {
            if !(0.0..=1.0).contains(&min_density) {
                return Err(Failure::Usage(format!("--min-density must lie in [0, 1], got {min_density}")));
            }
            let ctx = load(&source, None, stderr)?;
            let view = biclusters_view(&ctx, min_density)?;
            match format {
                OutputFormat::Json => write_json(stdout, &view)?,
                OutputFormat::Text => {
                    for b in &view.biclusters {
                        writeln!(
                            stdout,
                            "{}\t{{{}}}\t{{{}}}\t({}, {})",
                            b.density,
                            b.extent.join(", "),
                            b.intent.join(", "),
                            b.generator.object,
                            b.generator.attribute
                        )?;
                    }
                    writeln!(stdout, "{} biclusters with density >= {min_density}", view.count)?;
                }
                OutputFormat::Dot => return Err(Failure::Usage("--format dot is only available for concepts".into())),
            }
        }
        Command::Explore { source, snapshot } => {
            let ctx = load(&source, None, stderr)?;
            explore(ctx, snapshot, stdin, stdout)?;
        }
        Command::Convert { source, from, to, name } => {
            let ctx = if source.input.is_none() && source.builtin.is_none() {
                let mut text = String::new();
                stdin.read_to_string(&mut text)?;
                let (ctx, report) = parse_table(&text, from.unwrap_or(TableFormat::Cxt))?;
                report_warnings(&report, "<stdin>", stderr);
                ctx
            } else {
                load(&source, from, stderr)?
            };
            let ctx = match name {
                Some(name) => ctx.with_name(name),
                None => ctx,
            };
            write!(stdout, "{}", render_table(&ctx, to))?;
        }
        Command::Serve { port, host, static_dir, snapshot } => serve(SocketAddr::new(host, port), static_dir, snapshot, stdout)?,
    }
    Ok(())
}

fn write_json<T: serde::Serialize>(out: &mut dyn Write, value: &T) -> io::Result<()> {
    writeln!(out, "{}", serde_json::to_string_pretty(value).expect("views serialize"))
}

fn report_warnings(report: &ParseReport, origin: &str, stderr: &mut dyn Write) {
    for w in &report.warnings {
        let _ = writeln!(stderr, "warning: {origin}:{}: {}", w.line, w.message);
    }
}

fn load(source: &Source, format: Option<TableFormat>, stderr: &mut dyn Write) -> Result<FormalContext, Failure> {
    let dataset = match (&source.builtin, &source.input) {
        (Some(name), Some(_)) if !name.is_empty() => {
            return Err(Failure::Usage("give either -i FILE or --builtin NAME, not both".into()))
        }
        (Some(_), Some(name)) => Some(name.as_str()),
        (Some(name), None) if name.is_empty() => Some(DEFAULT_DATASET),
        (Some(name), None) => Some(name.as_str()),
        (None, _) => None,
    };
    if let Some(name) = dataset {
        return builtin(name).ok_or_else(|| {
            Failure::Usage(format!("unknown dataset {name:?}; available: {}", builtin_names().join(", ")))
        });
    }
    let Some(path) = &source.input else {
        return Err(Failure::Usage("no input: pass -i FILE or --builtin [NAME]".into()));
    };
    let path = PathBuf::from(path);
    let text = std::fs::read_to_string(&path).map_err(|e| Failure::Data(format!("cannot read {}: {e}", path.display())))?;
    let format = format.unwrap_or_else(|| TableFormat::from_path(&path));
    let (ctx, report) = parse_table(&text, format).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))?;
    report_warnings(&report, &path.display().to_string(), stderr);
    Ok(ctx)
}

fn prompt(stdin: &mut dyn BufRead, stdout: &mut dyn Write, text: &str) -> io::Result<Option<String>> {
    write!(stdout, "{text}")?;
    stdout.flush()?;
    let mut line = String::new();
    if stdin.read_line(&mut line)? == 0 {
        return Ok(None);
    }
    Ok(Some(line.trim().to_string()))
}

fn explore(ctx: FormalContext, snapshot: Option<PathBuf>, stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> Outcome {
    writeln!(
        stdout,
        "Exploring {:?}: {} objects, {} attributes.\nAnswer y (yes), n (no, then describe a counterexample) or stop.",
        ctx.name(),
        ctx.object_count(),
        ctx.attribute_count()
    )?;
    let mut session = start_session(ctx);
    'questions: while let Some(question) = session.next_question().map_err(lattice_tax::Error::from)? {
        writeln!(stdout, "Q{}: {}", session.seq(), question_text(session.working_context(), &question))?;
        loop {
            let Some(reply) = prompt(stdin, stdout, "[y/n/stop] > ")? else {
                session.stop().map_err(lattice_tax::Error::from)?;
                break 'questions;
            };
            match reply.to_ascii_lowercase().as_str() {
                "y" | "yes" => {
                    session.accept().map_err(lattice_tax::Error::from)?;
                    break;
                }
                "stop" | "s" | "q" => {
                    session.stop().map_err(lattice_tax::Error::from)?;
                    break 'questions;
                }
                "n" | "no" => {
                    let Some(name) = prompt(stdin, stdout, "counterexample name > ")? else { continue };
                    let Some(attrs) = prompt(stdin, stdout, "its attributes (comma-separated) > ")? else { continue };
                    let names: Vec<&str> = attrs.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
                    let attributes = match session.working_context().attributes_named(&names) {
                        Ok(a) => a,
                        Err(e) => {
                            writeln!(stdout, "not accepted: {e}")?;
                            continue;
                        }
                    };
                    match session.reject(Counterexample { name, attributes }) {
                        Ok(()) => break,
                        Err(e) => writeln!(stdout, "not accepted: {e}")?,
                    }
                }
                other => writeln!(stdout, "please answer y, n or stop (got {other:?})")?,
            }
        }
    }

    let ctx = session.working_context();
    writeln!(
        stdout,
        "Exploration {}: {} implications accepted, {} objects.",
        if session.status() == SessionStatus::Finished { "finished" } else { "stopped" },
        session.accepted().len(),
        ctx.object_count()
    )?;
    for imp in session.accepted().iter() {
        writeln!(stdout, "{}", imp.render(ctx))?;
    }
    if let Some(dir) = snapshot {
        std::fs::create_dir_all(&dir)?;
        std::fs::write(dir.join("session.json"), session.to_json())?;
        std::fs::write(dir.join("context.cxt"), serialize_cxt(ctx))?;
        writeln!(stdout, "Saved session.json and context.cxt to {}", dir.display())?;
    }
    Ok(())
}

fn serve(addr: SocketAddr, static_dir: Option<PathBuf>, snapshot: Option<PathBuf>, stdout: &mut dyn Write) -> Outcome {
    let state = match snapshot {
        Some(dir) => AppState::with_snapshots(&dir)
            .map_err(|e| Failure::Data(format!("snapshot directory {}: {e}", dir.display())))?,
        None => AppState::new(),
    };
    if let Some(dir) = &static_dir {
        if !dir.is_dir() {
            return Err(Failure::Usage(format!("--static {} is not a directory", dir.display())));
        }
    }
    let runtime = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    runtime.block_on(async {
        let listener = tokio::net::TcpListener::bind(addr)
            .await
            .map_err(|e| Failure::Data(format!("cannot listen on {addr}: {e}")))?;
        writeln!(stdout, "listening on http://{}", listener.local_addr()?)?;
        stdout.flush()?;
        axum::serve(listener, router(state, static_dir))
            .with_graceful_shutdown(async {
                let _ = tokio::signal::ctrl_c().await;
            })
            .await?;
        Ok(())
    })
}
