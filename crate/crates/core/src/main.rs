use std::io::{self, BufRead, Write};
use std::net::SocketAddr;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use ontodm::answer::AnswerEnvelope;
use ontodm::context::new_context;
use ontodm::ontology::graph_metrics;
use ontodm::service::{
    parse_script, replay_script, serve, Engine, EngineConfig, ServiceError, SessionStore, SourcePaths, Sources,
};

#[derive(Parser)]
#[command(name = "ontodm", version, about = "Ontology-driven dialogue manager for banking chatbots")]
struct Cli {
    #[command(flatten)]
    data: DataArgs,
    #[command(subcommand)]
    command: Command,
}

/// Data files; each defaults to the bundled copy.
#[derive(Args)]
struct DataArgs {
    #[arg(long, global = true)]
    ontology: Option<PathBuf>,
    #[arg(long, global = true)]
    lexicon: Option<PathBuf>,
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,
    #[arg(long, global = true)]
    embeddings: Option<PathBuf>,
    #[arg(long, global = true)]
    templates: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Chat on the terminal; one message per line.
    Chat {
        /// Also print the full context snapshot as JSON after every answer.
        #[arg(long)]
        show_state: bool,
    },
    /// Serve the HTTP API.
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
        /// Directory for JSONL session transcripts.
        #[arg(long)]
        transcripts: Option<PathBuf>,
    },
    /// Play scripted conversations and check their expectations.
    Replay {
        #[arg(long = "script", required = true, num_args = 1..)]
        scripts: Vec<PathBuf>,
        /// Print full reports as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Load and cross-check all data files.
    Validate,
    /// Print structural metrics of the ontology graph as JSON.
    Metrics,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

fn engine(data: &DataArgs) -> Result<Engine, ServiceError> {
    let paths = SourcePaths {
        ontology: data.ontology.clone(),
        lexicon: data.lexicon.clone(),
        corpus: data.corpus.clone(),
        templates: data.templates.clone(),
        embeddings: data.embeddings.clone(),
    };
    Engine::build(&Sources::load(&paths)?, EngineConfig::default())
}

fn run(cli: Cli) -> Result<ExitCode, Box<dyn std::error::Error>> {
    match cli.command {
        Command::Chat { show_state } => chat(&engine(&cli.data)?, show_state)?,
        Command::Serve {
            port,
            host,
            transcripts,
        } => {
            let engine = Arc::new(engine(&cli.data)?);
            let store = match transcripts {
                Some(dir) => SessionStore::with_transcripts(engine, dir)?,
                None => SessionStore::new(engine),
            };
            let addr: SocketAddr = format!("{host}:{port}").parse()?;
            tokio::runtime::Runtime::new()?.block_on(serve(Arc::new(store), addr))?;
        }
        Command::Replay { scripts, json } => {
            let engine = engine(&cli.data)?;
            let mut ok = true;
            for path in scripts {
                let text = std::fs::read_to_string(&path).map_err(|source| ServiceError::Io {
                    path: path.clone(),
                    source,
                })?;
                let mut script = parse_script(&text)?;
                if script.name.is_empty() {
                    script.name = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                }
                let report = replay_script(&engine, &script)?;
                if json {
                    println!("{}", serde_json::to_string_pretty(&report)?);
                } else {
                    for (i, t) in report.turns.iter().enumerate() {
                        println!("[{}] > {}", i + 1, t.user);
                        println!("[{}] < {}", i + 1, t.answer);
                    }
                    for (turn, f) in report.failures() {
                        println!("FAIL turn {turn}: {f}");
                    }
                    let verdict = if report.passed() { "passed" } else { "FAILED" };
                    println!(
                        "{}: {verdict} ({} turns, {} pass, {} fail)",
                        path.display(),
                        report.total,
                        report.pass,
                        report.fail
                    );
                }
                ok &= report.passed();
            }
            if !ok {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Validate => {
            let e = engine(&cli.data)?;
            println!(
                "ok: {} ontology nodes, {} lexicon heads, {} corpus entries, {} intents, {} templates",
                e.graph().node_count(),
                e.lexicon().heads().len(),
                e.corpus().entries.len(),
                e.intents().labels().len(),
                e.templates().len()
            );
        }
        Command::Metrics => {
            let e = engine(&cli.data)?;
            println!("{}", serde_json::to_string_pretty(&graph_metrics(e.graph()))?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn chat(engine: &Engine, show_state: bool) -> Result<(), Box<dyn std::error::Error>> {
    let mut ctx = new_context();
    let stdin = io::stdin();
    let mut out = io::stdout();
    write!(out, "> ")?;
    out.flush()?;
    for line in stdin.lock().lines() {
        let line = line?;
        let text = line.trim();
        if matches!(text, "exit" | "quit") {
            break;
        }
        if !text.is_empty() {
            match engine.respond(&ctx, text) {
                Ok(turn) => {
                    writeln!(out, "{}", turn.envelope.answer)?;
                    writeln!(out, "{}", summary(&turn.envelope))?;
                    if show_state {
                        writeln!(out, "{}", serde_json::to_string(&turn.envelope.state)?)?;
                    }
                    ctx = turn.context;
                }
                Err(e) => writeln!(out, "error: {e}")?,
            }
        }
        write!(out, "> ")?;
        out.flush()?;
    }
    Ok(())
}

fn summary(envelope: &AnswerEnvelope) -> String {
    let s = &envelope.state;
    let show = |p: &Option<String>| p.clone().unwrap_or_else(|| "-".into());
    format!(
        "  [{} rule={:?} prod={} indiv={} inode={} leaf={} msg={}]",
        envelope.outcome.kind().as_str(),
        envelope.outcome.fired_rule,
        show(&s.curr_prod),
        show(&s.curr_prod_indiv),
        show(&s.curr_inode),
        show(&s.curr_leaf),
        s.message_index
    )
}
