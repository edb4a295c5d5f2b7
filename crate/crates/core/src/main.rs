use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use schubert_snp::cli::{self, Checks, Format, RunConfig};
use schubert_snp::detideal::{schubert_determinantal_generators, standardize};
use schubert_snp::schubert::{enumerate_pipe_dreams, PipeDream};
use schubert_snp::{Permutation, Result};

#[derive(Parser)]
#[command(name = "schubert-snp", version, about = "Double Schubert polynomials, pipe dreams and Newton polytope checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification checks on one permutation or all of S_p.
    Verify {
        #[arg(long)]
        p: usize,
        /// Restrict to a single permutation (one-line notation).
        #[arg(long)]
        perm: Option<String>,
        /// Comma-separated: recursion, pipedream, snp, polymatroid, ineqs, all.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, env = "SCHUBERT_SNP_THREADS")]
        threads: Option<usize>,
        /// Skip the pipe-dream oracle (required for p = 7).
        #[arg(long)]
        no_pipedream_oracle: bool,
    },
    /// Print the double Schubert polynomial of a permutation.
    Poly {
        #[arg(long)]
        perm: String,
        /// Set s = 0.
        #[arg(long)]
        ordinary: bool,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// List the reduced pipe dreams of a permutation.
    Pipedreams {
        #[arg(long)]
        perm: String,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Dump the determinantal ideal generators of a permutation.
    Ideal {
        #[arg(long)]
        perm: String,
        /// Emit the generators in the standardized w/z variables.
        #[arg(long)]
        standardized: bool,
        #[arg(long, default_value = "text")]
        format: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(command: Command) -> Result<ExitCode> {
    match command {
        Command::Verify {
            p,
            perm,
            checks,
            format,
            out,
            threads,
            no_pipedream_oracle,
        } => {
            let config = RunConfig {
                p,
                permutation: perm.as_deref().map(str::parse).transpose()?,
                checks: checks.parse::<Checks>()?,
                format: format.parse()?,
                out,
                threads,
                pipe_dream_oracle: !no_pipedream_oracle,
            };
            let report = cli::run(&config)?;
            if let Some(text) = cli::emit(&report, &config)? {
                print(&text)?;
            }
            if report.all_passed() {
                Ok(ExitCode::SUCCESS)
            } else {
                eprintln!("verification failed: {}", report.summary.failures.join(" "));
                Ok(ExitCode::from(1))
            }
        }
        Command::Poly {
            perm,
            ordinary,
            format,
        } => {
            print(&cli::print_polynomial(&perm, ordinary, format.parse()?)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Pipedreams { perm, format } => {
            let perm: Permutation = perm.parse()?;
            let dreams = enumerate_pipe_dreams(&perm);
            let text = match format.parse()? {
                Format::Text => {
                    let mut s = format!("{} pipe dreams\n", dreams.len());
                    for d in &dreams {
                        s.push('\n');
                        s.push_str(&draw(perm.size(), d));
                    }
                    s
                }
                Format::Json | Format::Csv => {
                    let list: Vec<_> = dreams.iter().map(|d| json!(d.crosses())).collect();
                    let v = json!({"perm": perm, "count": dreams.len(), "pipe_dreams": list});
                    format!("{}\n", serde_json::to_string_pretty(&v).unwrap())
                }
            };
            print(&text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Ideal {
            perm,
            standardized,
            format,
        } => {
            let perm: Permutation = perm.parse()?;
            let mut ideal = schubert_determinantal_generators(&perm);
            if standardized {
                ideal = standardize(&ideal)?;
            }
            let text = match format.parse()? {
                Format::Text => ideal.generators().iter().map(|g| format!("{g}\n")).collect(),
                Format::Json | Format::Csv => {
                    format!("{}\n", serde_json::to_string_pretty(&ideal.to_json()).unwrap())
                }
            };
            print(&text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Staircase picture: `+` for a cross, `.` for an elbow.
fn draw(p: usize, dream: &PipeDream) -> String {
    let mut s = String::new();
    for i in 1..p {
        for j in 1..=p - i {
            s.push(if dream.crosses().contains(&(i, j)) { '+' } else { '.' });
        }
        s.push('\n');
    }
    s
}

fn print(text: &str) -> Result<()> {
    let mut out = std::io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}
