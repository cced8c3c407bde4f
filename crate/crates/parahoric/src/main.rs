use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use parahoric::commands::{self, Basis, FacetSpec};
use parahoric::descriptor::{self, Loaded};
use parahoric::{library, verify, CliError};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "parahoric", version, about = "Iwahori-Weyl groups, parahoric Hecke centers and test functions")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum BasisArg {
    Bernstein,
    IwahoriMatsumoto,
}

#[derive(clap::Args)]
struct Input {
    /// Descriptor file, or the name of a shipped descriptor (e.g. gl2, res_gl2_ram2).
    #[arg(long)]
    descriptor: String,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
}

#[derive(Subcommand)]
enum Verb {
    /// Ranks, relative root system, pi_1 coinvariants and Omega.
    Describe {
        #[command(flatten)]
        input: Input,
    },
    /// The mu-admissible set at a facet.
    Adm {
        #[command(flatten)]
        input: Input,
        /// Dominant coweight, comma-separated.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        /// iwahori, hyperspecial, or a comma-separated list of affine nodes.
        #[arg(long, default_value = "iwahori")]
        facet: String,
    },
    /// The Bernstein function z_lambda for the W_0-orbit of a coweight.
    Bernstein {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
    },
    /// The test function z^Phi or z^ss of a coweight.
    Testfn {
        #[command(flatten)]
        input: Input,
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value = "iwahori")]
        facet: String,
        /// Inertia lift index, or ss for the semisimple version.
        #[arg(long, default_value = "ss")]
        lift: String,
        #[arg(long, value_enum, default_value = "bernstein")]
        basis: BasisArg,
    },
    /// Run the acceptance suites: all, or a comma-separated list of suite numbers.
    Verify {
        #[arg(default_value = "all")]
        suites: String,
    },
}

fn load(name: &str) -> Result<Loaded, CliError> {
    let path = Path::new(name);
    if !path.exists() && library::get(name).is_some() {
        return library::load(name);
    }
    descriptor::load_path(path)
}

fn emit<T: Serialize>(report: &T, format: FormatArg, text: impl FnOnce() -> String, csv: impl FnOnce() -> String) -> Result<String, CliError> {
    Ok(match format {
        FormatArg::Json => serde_json::to_string_pretty(report).map_err(|e| CliError::Compute(e.to_string()))? + "\n",
        FormatArg::Text => text(),
        FormatArg::Csv => csv(),
    })
}

fn run(verb: Verb) -> Result<(String, bool), CliError> {
    let out = match verb {
        Verb::Describe { input } => {
            let r = commands::describe(&load(&input.descriptor)?)?;
            emit(&r, input.format, || r.text(), || r.csv())?
        }
        Verb::Adm { input, mu, facet } => {
            let l = load(&input.descriptor)?;
            let r = commands::adm(&l, &commands::parse_ints("--mu", &mu)?, &FacetSpec::parse(&facet)?)?;
            emit(&r, input.format, || r.text(), || r.csv())?
        }
        Verb::Bernstein { input, mu } => {
            let l = load(&input.descriptor)?;
            let r = commands::bernstein(&l, &commands::parse_ints("--mu", &mu)?)?;
            emit(&r, input.format, || r.text(), || r.csv())?
        }
        Verb::Testfn { input, mu, facet, lift, basis } => {
            let l = load(&input.descriptor)?;
            let basis = match basis {
                BasisArg::Bernstein => Basis::Bernstein,
                BasisArg::IwahoriMatsumoto => Basis::IwahoriMatsumoto,
            };
            let r = commands::testfn(&l, &commands::parse_ints("--mu", &mu)?, &FacetSpec::parse(&facet)?, &commands::parse_lift(&lift)?, basis)?;
            emit(&r, input.format, || r.text(), || r.csv())?
        }
        Verb::Verify { suites } => {
            let ids = verify::select(&suites).map_err(CliError::Validation)?;
            let results = verify::run(&ids);
            let mut out = String::new();
            for r in &results {
                out.push_str(&r.line());
                out.push('\n');
            }
            let failed = results.iter().filter(|r| !r.passed).count();
            out.push_str(&format!("{} passed, {failed} failed\n", results.len() - failed));
            return Ok((out, failed == 0));
        }
    };
    Ok((out, true))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.verb) {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
