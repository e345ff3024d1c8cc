mod commands;
mod params;
mod report;
mod reproduce;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use commands::{Method, ModelCheck, Outcome};
use params::ModelKind;
use report::Report;

/// Exact polynomial-identity and operad computations for nonassociative
/// algebras.
///
/// Exit status: 0 on success, 1 when a mathematical check fails, 2 on usage
/// or input errors. OPERADLAB_THREADS caps the worker thread count.
#[derive(Parser, Debug)]
#[command(name = "operadlab", version)]
struct Cli {
    /// Also write a JSON report to this path.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Operad component dimensions d_1..d_N.
    Dims {
        /// Set name (wlei, assoc, free, full, leibniz, lie, comm-assoc), a
        /// comma list of builtin identities, or a relation file.
        #[arg(long)]
        relations: String,
        #[arg(long, default_value_t = 5)]
        max_arity: usize,
        /// Permit arity 6, an exact elimination of several minutes.
        #[arg(long)]
        allow_arity_6: bool,
        #[arg(long, value_enum, default_value_t = Method::Tower)]
        method: Method,
    },
    /// Koszul dual of a binary quadratic relation set.
    Dual {
        #[arg(long)]
        relations: String,
    },
    /// Generating-series Koszulity test: f(f!(x)) - x.
    KoszulTest {
        #[arg(long)]
        relations: String,
        #[arg(long, default_value_t = 5)]
        degree: usize,
        #[arg(long)]
        allow_arity_6: bool,
    },
    /// Degree-3 implication with a certificate.
    Implies {
        /// Comma list of builtin identities.
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Degree-3 equivalence of two identity lists.
    Equiv {
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Degree-3 normal form over c(ab), (bc)a, (ca)b, (ac)b, (ba)c, (ab)c.
    NormalForm {
        #[arg(long)]
        relations: String,
    },
    /// Exact window check of an identity or axiom set on a model.
    ModelCheck {
        #[arg(long, value_enum)]
        model: ModelKind,
        /// `S=1,-2 eps=1/2,3` for aS; `u=2 v=0` for derivation and
        /// localized, where an element is a comma list of `index` or
        /// `coeff:index` terms.
        #[arg(long, default_value = "")]
        params: String,
        /// Relation set or builtin identities to check on the product.
        #[arg(long, conflicts_with = "axioms")]
        identity: Option<String>,
        /// transposed_poisson, novikov_poisson or poisson.
        #[arg(long)]
        axioms: Option<String>,
        #[arg(long, default_value_t = 4)]
        window: i64,
        /// Check the identity on the half commutator of a single product.
        #[arg(long)]
        commutator: bool,
        /// Depolarize two products as ½(a∘b + a•b) instead of a∘b + a•b.
        #[arg(long)]
        half: bool,
    },
    /// Run every reproduction check and print a pass/fail table.
    ReproducePaper {
        #[arg(long)]
        allow_arity_6: bool,
    },
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Dims { .. } => "dims",
        Command::Dual { .. } => "dual",
        Command::KoszulTest { .. } => "koszul-test",
        Command::Implies { .. } => "implies",
        Command::Equiv { .. } => "equiv",
        Command::NormalForm { .. } => "normal-form",
        Command::ModelCheck { .. } => "model-check",
        Command::ReproducePaper { .. } => "reproduce-paper",
    }
}

fn run(c: &Command) -> operadlab::Result<Outcome> {
    match c {
        Command::Dims { relations, max_arity, allow_arity_6, method } => {
            commands::dims(relations, *max_arity, *allow_arity_6, *method)
        }
        Command::Dual { relations } => commands::dual(relations),
        Command::KoszulTest { relations, degree, allow_arity_6 } => {
            commands::koszul_test(relations, *degree, *allow_arity_6)
        }
        Command::Implies { from, to } => commands::implies(from, to),
        Command::Equiv { left, right } => commands::equiv(left, right),
        Command::NormalForm { relations } => commands::normal_form_cmd(relations),
        Command::ModelCheck { model, params, identity, axioms, window, commutator, half } => {
            commands::model_check(&ModelCheck {
                model: *model,
                params,
                identity: identity.as_deref(),
                axioms: axioms.as_deref(),
                window: *window,
                commutator: *commutator,
                half: *half,
            })
        }
        Command::ReproducePaper { allow_arity_6 } => reproduce::run(*allow_arity_6),
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("OPERADLAB_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| format!("OPERADLAB_THREADS must be a positive integer, got `{raw}`"))?;
    if n == 0 {
        return Err("OPERADLAB_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    let start = Instant::now();
    let outcome = match run(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    print!("{}", outcome.text);
    if let Some(path) = &cli.json {
        let report = Report {
            command: command_name(&cli.command).to_string(),
            inputs: outcome.inputs,
            results: outcome.results,
            duration_ms: start.elapsed().as_millis() as u64,
        };
        if let Err(e) = report.write(path) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
