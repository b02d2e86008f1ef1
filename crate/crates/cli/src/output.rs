use std::fs;

use selfsim::catalogue::CatalogueError;
use selfsim::element::NotationError;
use selfsim::graph::GraphError;
use selfsim::{ElementError, MealyError};
use serde_json::Value;

use crate::{Cli, Format};

/// A command's result in each format it supports.
#[derive(Debug, Default)]
pub struct Output {
    pub text: String,
    pub structured: Option<Value>,
    pub dot: Option<String>,
    pub csv: Option<String>,
    /// False when a check or suite failed; the process exits with 1.
    pub success: bool,
}

impl Output {
    pub fn new(text: impl Into<String>, structured: Value) -> Self {
        Output {
            text: text.into(),
            structured: Some(structured),
            success: true,
            ..Default::default()
        }
    }

    pub fn failed_if(mut self, failed: bool) -> Self {
        self.success = !failed;
        self
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub const CHECK_FAILED: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const NOT_FOUND: u8 = 3;
    pub const PARSE: u8 = 4;
    pub const BUDGET: u8 = 5;
    pub const IO: u8 = 6;

    pub fn new(code: u8, message: impl Into<String>) -> Self {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<ElementError> for Failure {
    fn from(e: ElementError) -> Self {
        let code = match e {
            ElementError::ClosureCapExceeded { .. } | ElementError::LevelBudgetExceeded { .. } => Failure::BUDGET,
            ElementError::AutomatonMismatch => Failure::USAGE,
            _ => Failure::PARSE,
        };
        Failure::new(code, e.to_string())
    }
}

impl From<NotationError> for Failure {
    fn from(e: NotationError) -> Self {
        Failure::new(Failure::PARSE, e.to_string())
    }
}

impl From<MealyError> for Failure {
    fn from(e: MealyError) -> Self {
        Failure::new(Failure::PARSE, e.to_string())
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::Element(e) => e.into(),
            GraphError::BudgetExceeded { .. } => Failure::new(Failure::BUDGET, e.to_string()),
            GraphError::Premise(_) => Failure::new(Failure::CHECK_FAILED, e.to_string()),
            _ => Failure::new(Failure::USAGE, e.to_string()),
        }
    }
}

impl From<CatalogueError> for Failure {
    fn from(e: CatalogueError) -> Self {
        let code = match e {
            CatalogueError::UnknownKey(_) | CatalogueError::Io { .. } => Failure::NOT_FOUND,
            _ => Failure::PARSE,
        };
        Failure::new(code, e.to_string())
    }
}

/// Renders `out` in the requested format to stdout or `--out`.
pub fn emit(cli: &Cli, out: &Output) -> Result<(), Failure> {
    let unsupported = |name: &str| Failure::new(Failure::USAGE, format!("this command has no {name} output"));
    let mut body = match cli.format {
        Format::Text => out.text.clone(),
        Format::Structured => {
            let value = out.structured.as_ref().ok_or_else(|| unsupported("structured"))?;
            serde_json::to_string_pretty(value).expect("values serialize")
        }
        Format::Dot => out.dot.clone().ok_or_else(|| unsupported("dot"))?,
        Format::Csv => out.csv.clone().ok_or_else(|| unsupported("csv"))?,
    };
    if !body.ends_with('\n') {
        body.push('\n');
    }
    match &cli.out {
        Some(path) => fs::write(path, body).map_err(|e| Failure::new(Failure::IO, format!("{}: {e}", path.display()))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}
