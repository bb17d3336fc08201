//! Command-line surface over the presentation engine.
//!
//! Exit codes: 0 on success, 1 when verification fails, 2 on usage or input
//! errors. Payload goes to stdout, diagnostics to stderr.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use puretwin::presentation::{
    build_presentation_with_limit, export, export_simplified, simplify_n6, verify_presentation,
    ExportFormat, VerifyOptions,
};
use puretwin::rewrite::realize_generator;
use puretwin::words::{pair, TwinWord};
use puretwin::{CrossingType, DEFAULT_MAX_N};

#[derive(Parser)]
#[command(
    name = "puretwin",
    version,
    about = "Presentations of planar pure braid groups (pure twin groups)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Raise the strand-count guard (enumeration is factorial-scale).
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,

    /// Worker threads for verification; defaults to the available cores.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Seed for the sampled checks of `verify`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Print the number of essential crossing and double crossing types.
    Count {
        #[arg(short)]
        n: usize,
    },
    /// Print the presentation in the chosen format.
    Present {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value = "plain")]
        format: String,
    },
    /// Build the presentation and verify it against the word oracle.
    Verify {
        #[arg(short)]
        n: usize,
    },
    /// Print the pure braid word realizing an essential crossing type.
    Realize {
        #[arg(short)]
        n: usize,
        #[arg(long = "type")]
        type_name: String,
    },
    /// Print the canonical form of a braid word.
    Reduce {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        word: String,
    },
    /// Print the signed count of crossings of a type in a pure braid word.
    Pair {
        #[arg(short)]
        n: usize,
        #[arg(long = "type")]
        type_name: String,
        #[arg(long)]
        word: String,
    },
    /// Simplify the six-strand presentation to commutators of generator
    /// pairs and print it with its structure certificate.
    Simplify6 {
        #[arg(long, default_value = "plain")]
        format: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> puretwin::Result<ExitCode> {
    match &cli.command {
        Command::Count { n } => {
            let crossings =
                puretwin::perm::enumerate_essential_crossing_types_with_limit(*n, cli.max_n)?;
            let doubles =
                puretwin::perm::enumerate_essential_double_types_with_limit(*n, cli.max_n)?;
            println!(
                "essential crossing types: {} / essential double types: {}",
                crossings.len(),
                doubles.len()
            );
        }
        Command::Present { n, format } => {
            let format: ExportFormat = format.parse()?;
            let p = build_presentation_with_limit(*n, cli.max_n)?;
            println!("{}", export(&p, format));
        }
        Command::Verify { n } => {
            let p = build_presentation_with_limit(*n, cli.max_n)?;
            let opts = VerifyOptions {
                seed: cli.seed,
                ..VerifyOptions::default()
            };
            let report = verify_presentation(&p, &opts);
            println!("{}", report.to_json());
            if !report.passed {
                for check in report.checks.iter().filter(|c| !c.passed) {
                    eprintln!(
                        "verification failed: {}: {}",
                        check.name,
                        check.counterexample.as_deref().unwrap_or("no witness")
                    );
                }
                return Ok(ExitCode::from(1));
            }
        }
        Command::Realize { n, type_name } => {
            check_n(*n, cli.max_n)?;
            let ty = CrossingType::parse(*n, type_name)?;
            println!("{}", realize_generator(&ty)?);
        }
        Command::Reduce { n, word } => {
            check_n(*n, cli.max_n)?;
            let w = TwinWord::parse(*n, word)?;
            println!("{}", w.canonical());
        }
        Command::Pair { n, type_name, word } => {
            check_n(*n, cli.max_n)?;
            let ty = CrossingType::parse(*n, type_name)?;
            let w = TwinWord::parse(*n, word)?;
            println!("{}", pair(&ty, &w)?);
        }
        Command::Simplify6 { format } => {
            let format: ExportFormat = format.parse()?;
            let p = build_presentation_with_limit(6, cli.max_n)?;
            let report = verify_presentation(
                &p,
                &VerifyOptions {
                    seed: cli.seed,
                    ..VerifyOptions::default()
                },
            );
            if !report.passed {
                eprintln!("verification failed before simplification:");
                eprintln!("{}", report.to_json());
                return Ok(ExitCode::from(1));
            }
            let (sp, cert) = simplify_n6(&p)?;
            println!("{}", export_simplified(&sp, &cert, format));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn check_n(n: usize, max_n: usize) -> puretwin::Result<()> {
    if n < 2 || n > max_n {
        return Err(puretwin::Error::StrandCountOutOfRange {
            n,
            min: 2,
            max: max_n,
        });
    }
    Ok(())
}
