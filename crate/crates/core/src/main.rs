use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use galcoh::document::{
    cmd_abelianize, cmd_brauer, cmd_cohomology, cmd_sha, cmd_validate, input_digest, parse_document, render_text,
    Output, Problem, ResultDocument, RunError, RunOptions,
};
use galcoh::group::DEFAULT_ORDER_BOUND;

/// Exact cohomology of finite Galois modules and complexes.
#[derive(Parser)]
#[command(name = "galcoh", version)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// problem document (JSON); standard input if omitted
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// print the result document as JSON
    #[arg(long, global = true)]
    json: bool,
    /// cross-check against the independent oracle where one applies
    #[arg(long, global = true)]
    oracle: bool,
    /// largest group order accepted
    #[arg(long, global = true, default_value_t = DEFAULT_ORDER_BOUND)]
    max_order: usize,
}

#[derive(Subcommand)]
enum Command {
    /// H^n(G, M) for a named module
    Cohomology {
        #[arg(long)]
        module: String,
        #[arg(long)]
        degree: usize,
    },
    /// kernel of H^1(G, C) over cyclic subgroups, for the document's complex
    Sha,
    /// the same kernel read as a Brauer group under the document's hypotheses
    Brauer,
    /// abelianization of a presentation, from flags or the document
    Abelianize {
        /// comma-separated generator names
        #[arg(long, value_delimiter = ',')]
        generators: Option<Vec<String>>,
        /// one relator per flag
        #[arg(long = "relator")]
        relators: Vec<String>,
    },
    /// parse and check the document
    Validate,
}

fn read_input(path: &Option<PathBuf>) -> Result<String, RunError> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = std::fs::read_to_string(p).map_err(|e| RunError::Schema(format!("{}: {e}", p.display())))?
        }
        None => {
            std::io::stdin().read_to_string(&mut text).map_err(|e| RunError::Schema(format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn run(cli: &Cli, digest: &mut String) -> Result<Output, RunError> {
    let opts = RunOptions { oracle: cli.common.oracle, max_order: cli.common.max_order };
    if let Command::Abelianize { generators: Some(gens), relators } = &cli.command {
        *digest = input_digest(format!("{gens:?}{relators:?}").as_bytes());
        return cmd_abelianize(gens, relators);
    }
    let text = read_input(&cli.common.input)?;
    *digest = input_digest(text.as_bytes());
    let document = parse_document(&text)?;
    if let Command::Abelianize { .. } = cli.command {
        let p = document
            .presentation
            .ok_or_else(|| RunError::Schema("missing section `presentation` (or pass --generators)".into()))?;
        return cmd_abelianize(&p.generators, &p.relators);
    }
    let problem = Problem::from_document(document, opts.max_order)?;
    match &cli.command {
        Command::Cohomology { module, degree } => cmd_cohomology(&problem, module, *degree, &opts),
        Command::Sha => cmd_sha(&problem, &opts),
        Command::Brauer => cmd_brauer(&problem, &opts),
        Command::Validate => cmd_validate(&problem),
        Command::Abelianize { .. } => unreachable!(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut digest = String::new();
    let outcome = run(&cli, &mut digest);
    let doc = ResultDocument::from_outcome(digest, outcome);
    // a closed pipe on the reader's side is not an error of ours
    let _ = if cli.common.json {
        writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&doc).expect("result documents serialize"))
    } else if doc.error.is_some() {
        write!(std::io::stderr(), "{}", render_text(&doc))
    } else {
        write!(std::io::stdout(), "{}", render_text(&doc))
    };
    ExitCode::from(doc.exit_status as u8)
}
