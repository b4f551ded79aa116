use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use liesym_cli::workspace::LoadError;
use liesym_cli::{
    cmd_adjoint, cmd_classify, cmd_commutators, cmd_determine, cmd_equivalence_check, cmd_optimal, exit_code,
    parse_vector, Format, OptimalRequest, Workspace, EXIT_USAGE,
};

/// Symmetry analysis of u_t = f(x,u) u_x^2 + g(x,u) u_xx.
#[derive(Debug, Parser)]
#[command(name = "liesym", version)]
struct Cli {
    /// Workspace JSON; the bundled generalized Burgers workspace when omitted.
    #[arg(long, global = true)]
    workspace: Option<PathBuf>,
    /// Output format: text, latex or json.
    #[arg(long, global = true, default_value = "text")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Commutator table of the basis.
    Commutators,
    /// Adjoint table Ad(exp(s Y_i)) Y_j.
    Adjoint {
        /// Value substituted for s.
        #[arg(long)]
        at: Option<String>,
    },
    /// Determining function and equations of one basis field.
    Determine {
        #[arg(long)]
        field: String,
        #[arg(long, default_value = "f(x,u)")]
        f: String,
        #[arg(long, default_value = "g(x,u)")]
        g: String,
    },
    /// Checks basis fields and the parametric family as equivalence operators.
    EquivalenceCheck,
    /// Normalizes a coefficient vector along the optimal-system case analysis.
    Optimal {
        /// Comma-separated coefficients a1,...,an in theorem labeling.
        #[arg(long, conflicts_with_all = ["survey", "seed"], required_unless_present = "survey")]
        vector: Option<String>,
        /// Number of random vectors.
        #[arg(long, requires = "seed")]
        survey: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Classification table of invariant forms.
    Classify,
}

fn usage(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let ws = match &cli.workspace {
        Some(p) => Workspace::load(p),
        None => Workspace::bundled().map_err(LoadError::Workspace),
    };
    let ws = match ws {
        Ok(w) => w,
        Err(LoadError::Io(msg)) => return usage(&msg),
        Err(LoadError::Workspace(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e) as u8);
        }
    };
    let format = cli.format;
    let result = match &cli.command {
        Command::Commutators => cmd_commutators(&ws, format),
        Command::Adjoint { at } => cmd_adjoint(&ws, format, at.as_deref()),
        Command::Determine { field, f, g } => cmd_determine(&ws, format, field, f, g),
        Command::EquivalenceCheck => cmd_equivalence_check(&ws, format),
        Command::Optimal { vector, survey, seed } => match (vector, survey, seed) {
            (Some(v), _, _) => match parse_vector(v) {
                Ok(v) => cmd_optimal(&ws, format, OptimalRequest::Vector(&v)),
                Err(msg) => return usage(&msg),
            },
            (None, Some(n), Some(seed)) => cmd_optimal(&ws, format, OptimalRequest::Survey { n: *n, seed: *seed }),
            _ => return usage("optimal needs --vector or --survey N --seed S"),
        },
        Command::Classify => cmd_classify(&ws, format),
    };
    match result {
        Ok(out) => {
            print!("{}", out.output);
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e) as u8)
        }
    }
}
