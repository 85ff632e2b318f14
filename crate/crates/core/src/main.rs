use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use treeregex::cli::{
    cmd_build, cmd_compare, cmd_compare_random, cmd_gen, cmd_run, cmd_stats, Construction,
    Format, GeneratorConfig, Outcome, DEFAULT_ALPHABET, DEFAULT_DEPTH,
};
use treeregex::terms::parse_alphabet;

/// Regular tree expressions to bottom-up tree automata.
#[derive(Parser)]
#[command(name = "treeregex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Expression text, e.g. "g(c,a)*[c] .[c] b".
    #[arg(long, conflicts_with = "expr_file")]
    expr: Option<String>,
    #[arg(long)]
    expr_file: Option<PathBuf>,
    /// Ranked alphabet as `name:arity` pairs [default: "a:0 b:0 c:0 f:1 h:1 g:2"].
    #[arg(long, conflicts_with = "alphabet_file")]
    alphabet: Option<String>,
    #[arg(long)]
    alphabet_file: Option<PathBuf>,
    /// Write standard output here instead.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build an automaton and print it as JSON or DOT.
    Build {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "kpos")]
        construction: Construction,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run an automaton on a tree.
    Run {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "kpos")]
        construction: Construction,
        /// Tree literal, e.g. "g(b,a)".
        #[arg(long)]
        tree: String,
    },
    /// State and rule counts of every construction.
    Stats {
        #[command(flatten)]
        input: Input,
        /// Also print First, Follow and Last.
        #[arg(long)]
        show_posfun: bool,
    },
    /// Check every relation between the constructions; without an
    /// expression, checks `--count` generated ones.
    Compare {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_DEPTH)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Upper bound on generated expression size.
        #[arg(long, default_value_t = 12)]
        max_nodes: usize,
    },
    /// Print generated expressions.
    Gen {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 12)]
        max_nodes: usize,
    },
}

fn read(path: &PathBuf) -> Result<String, Outcome> {
    fs::read_to_string(path).map_err(|e| Outcome {
        stderr: format!("error: cannot read {}: {e}\n", path.display()),
        code: 2,
        ..Outcome::default()
    })
}

impl Input {
    fn expr(&self) -> Result<Option<String>, Outcome> {
        match (&self.expr, &self.expr_file) {
            (Some(e), _) => Ok(Some(e.clone())),
            (None, Some(p)) => read(p).map(Some),
            (None, None) => Ok(None),
        }
    }

    fn required_expr(&self) -> Result<String, Outcome> {
        self.expr()?.ok_or_else(|| Outcome {
            stderr: "error: one of --expr or --expr-file is required\n".into(),
            code: 2,
            ..Outcome::default()
        })
    }

    fn alphabet(&self) -> Result<Option<String>, Outcome> {
        match (&self.alphabet, &self.alphabet_file) {
            (Some(a), _) => Ok(Some(a.clone())),
            (None, Some(p)) => read(p).map(Some),
            (None, None) => Ok(None),
        }
    }

    fn generator(&self, seed: u64, max_nodes: usize) -> Result<GeneratorConfig, Outcome> {
        let text = self.alphabet()?.unwrap_or_else(|| DEFAULT_ALPHABET.to_string());
        let sigma = parse_alphabet(&text).map_err(|e| Outcome::from_error(&e.into()))?;
        let mut config = GeneratorConfig::new(sigma, seed);
        config.max_ast_nodes = max_nodes;
        Ok(config)
    }
}

fn dispatch(command: &Command) -> Result<Outcome, Outcome> {
    Ok(match command {
        Command::Build {
            input,
            construction,
            format,
        } => cmd_build(*construction, &input.required_expr()?, input.alphabet()?.as_deref(), *format),
        Command::Run {
            input,
            construction,
            tree,
        } => cmd_run(*construction, &input.required_expr()?, input.alphabet()?.as_deref(), tree),
        Command::Stats { input, show_posfun } => {
            cmd_stats(&input.required_expr()?, input.alphabet()?.as_deref(), *show_posfun)
        }
        Command::Compare {
            input,
            depth,
            seed,
            count,
            max_nodes,
        } => match input.expr()? {
            Some(e) => cmd_compare(&e, input.alphabet()?.as_deref(), *depth),
            None => cmd_compare_random(&input.generator(*seed, *max_nodes)?, *count, *depth),
        },
        Command::Gen {
            input,
            seed,
            count,
            max_nodes,
        } => cmd_gen(&input.generator(*seed, *max_nodes)?, *count),
    })
}

fn input_of(command: &Command) -> &Input {
    match command {
        Command::Build { input, .. }
        | Command::Run { input, .. }
        | Command::Stats { input, .. }
        | Command::Compare { input, .. }
        | Command::Gen { input, .. } => input,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = dispatch(&cli.command).unwrap_or_else(|o| o);
    eprint!("{}", outcome.stderr);
    let written = match &input_of(&cli.command).out {
        Some(path) => fs::write(path, &outcome.stdout),
        None => std::io::stdout().write_all(outcome.stdout.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(outcome.code as u8)
}
