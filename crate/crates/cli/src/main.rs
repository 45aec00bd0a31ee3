use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

mod commands;
mod input;

/// Exact coderivation calculus for 2|1-dimensional codifferentials.
#[derive(Parser, Debug)]
#[command(name = "codiff", version, about)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the randomized part of witness searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that `[d,d] = 0`.
    Check {
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// Graded bracket `[a,b]`.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Cohomology dimensions of `d`.
    Cohomology {
        #[arg(allow_hyphen_values = true)]
        d: String,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        /// Print class representatives.
        #[arg(long)]
        basis: bool,
    },
    /// Recompute the cohomology table of the catalog.
    Table,
    /// Pull back `d` along a matrix or witness.
    Transform {
        g: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// Search for an equivalence `g*a = b`.
    Equivalent {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Versal deformation of `d`.
    Deform {
        #[arg(allow_hyphen_values = true)]
        d: String,
        #[arg(long, default_value_t = 4)]
        order: usize,
        /// Semicolon-separated representatives of odd H^2 to use as the
        /// parameter basis.
        #[arg(long)]
        basis: Option<String>,
        /// Skip the search for jump targets.
        #[arg(long)]
        no_jumps: bool,
    },
    /// Check the structure equations of an extension datum.
    ExtensionCheck { datum: String },
    /// Extensions of the simple 0|1 algebra by the trivial 2|0 algebra.
    EnumerateSimple01,
    /// Catalog of codifferentials.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand, Debug)]
enum CatalogAction {
    /// Table rows with their formulas.
    List,
    /// One entry, e.g. `d_13(1:-1)`.
    Get {
        label: String,
        /// Column order of the printed matrix: lex or parity-block.
        #[arg(long, default_value = "lex")]
        column_order: String,
    },
    /// The whole catalog as JSON.
    Export {
        #[arg(long)]
        output: Option<std::path::PathBuf>,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Bad input; exit status 2.
    Usage(String),
    /// The mathematics disagreed; exit status 1. Carries the report.
    Failed(commands::Report),
}

impl From<codiff_core::Error> for CliError {
    fn from(e: codiff_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = commands::Context {
        format: cli.format,
        seed: cli.seed,
    };
    let result = match cli.command {
        Command::Check { d } => commands::check(&ctx, &d),
        Command::Bracket { a, b } => commands::bracket(&ctx, &a, &b),
        Command::Cohomology {
            d,
            max_degree,
            basis,
        } => commands::cohomology(&ctx, &d, max_degree, basis),
        Command::Table => commands::table(&ctx),
        Command::Transform { g, d } => commands::transform(&ctx, &g, &d),
        Command::Equivalent { a, b } => commands::equivalent(&ctx, &a, &b),
        Command::Deform {
            d,
            order,
            basis,
            no_jumps,
        } => commands::deform(&ctx, &d, order, basis.as_deref(), !no_jumps),
        Command::ExtensionCheck { datum } => commands::extension_check(&ctx, &datum),
        Command::EnumerateSimple01 => commands::enumerate_simple01(&ctx),
        Command::Catalog { action } => match action {
            CatalogAction::List => commands::catalog_list(&ctx),
            CatalogAction::Get {
                label,
                column_order,
            } => commands::catalog_get(&ctx, &label, &column_order),
            CatalogAction::Export { output } => commands::catalog_export(&ctx, output.as_deref()),
        },
    };
    match result {
        Ok(report) => {
            report.print(ctx.format);
            ExitCode::SUCCESS
        }
        Err(CliError::Failed(report)) => {
            report.print(ctx.format);
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            match ctx.format {
                Format::Json => println!("{}", serde_json::json!({ "error": msg })),
                Format::Text => eprintln!("error: {msg}"),
            }
            ExitCode::from(2)
        }
    }
}
