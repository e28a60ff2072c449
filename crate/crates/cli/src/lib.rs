//! Command-line front end: argument definitions, verb dispatch and reports.

pub mod commands;
pub mod report;

use std::path::PathBuf;

use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

/// Exact computations with nilpotent graded Lie algebras and quadratic
/// Sullivan algebras.
#[derive(Parser, Debug)]
#[command(name = "quadlie", version)]
pub struct Cli {
    /// validate, lcs, ce, hla, cohomology, wedge-h, minimal-model,
    /// wedge-model, profree, free-product, bch, exp, acyclic-closure, eta-check
    pub verb: String,
    /// Input JSON files
    pub inputs: Vec<PathBuf>,
    /// Truncation window, e.g. N=4,K=3
    #[arg(long)]
    pub truncation: Option<String>,
    /// Bracket-length truncation for hla
    #[arg(long = "K")]
    pub k: Option<usize>,
    /// Nilpotency class used by bch
    #[arg(long)]
    pub class: Option<usize>,
    /// Word bound n for UL/J^n
    #[arg(long)]
    pub word_bound: Option<usize>,
    /// Sphere dimensions for wedge-model, e.g. 1,1
    #[arg(long)]
    pub spheres: Option<String>,
    /// Lie element, e.g. "x + 1/2 [x,y]"
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub y: Option<String>,
    /// Write the report here instead of stdout
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}
