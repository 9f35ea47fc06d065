// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

use std::fmt;

use serde::Serialize;

use majcolor::construct::ConstructError;
use majcolor::exact::ExactError;
use majcolor::format::ParseError;
use majcolor::generators::GenError;
use majcolor::GraphError;

use crate::report::RunStatus;

pub const EXIT_USAGE: u8 = 1;
pub const EXIT_HYPOTHESIS: u8 = 2;
pub const EXIT_PARSE: u8 = 3;
pub const EXIT_BUDGET: u8 = 4;
pub const EXIT_AUDIT: u8 = 5;
pub const EXIT_VIOLATED: u8 = 6;

/// A failure with its process exit code, printed as JSON on stderr.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliError {
    pub kind: &'static str,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<usize>,
    pub exit_code: u8,
}

impl CliError {
    pub fn new(kind: &'static str, exit_code: u8, message: impl Into<String>) -> Self {
        CliError {
            kind,
            message: message.into(),
            offset: None,
            exit_code,
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self::new("Usage", EXIT_USAGE, message)
    }

    pub fn hypothesis(message: impl Into<String>) -> Self {
        Self::new("HypothesisViolated", EXIT_HYPOTHESIS, message)
    }

    pub fn audit(message: impl Into<String>) -> Self {
        Self::new("AuditFailed", EXIT_AUDIT, message)
    }

    pub fn parse(e: ParseError, source: &str) -> Self {
        CliError {
            kind: "ParseError",
            message: format!("{source}: {}", e.message),
            offset: Some(e.offset),
            exit_code: EXIT_PARSE,
        }
    }

    pub fn io(e: std::io::Error, source: &str) -> Self {
        Self::new("Io", EXIT_USAGE, format!("{source}: {e}"))
    }

    /// Status recorded in a report for a run that ended in this error.
    pub fn status(&self) -> RunStatus {
        match self.exit_code {
            EXIT_HYPOTHESIS | EXIT_USAGE | EXIT_PARSE => RunStatus::HypothesisViolated,
            EXIT_BUDGET => RunStatus::BudgetExceeded,
            EXIT_VIOLATED => RunStatus::Violated,
            _ => RunStatus::AuditFailed,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "error": self }).to_string()
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.message)
    }
}

impl From<ConstructError> for CliError {
    fn from(e: ConstructError) -> Self {
        let message = e.to_string();
        match e {
            ConstructError::BudgetExceeded { .. } => {
                Self::new("BudgetExceeded", EXIT_BUDGET, message)
            }
            ConstructError::RepairFailed { .. } => Self::new("RepairFailed", EXIT_AUDIT, message),
            ConstructError::AuditFailed(_) | ConstructError::Verify(_) => Self::audit(message),
            ConstructError::TooSmall(_)
            | ConstructError::NotAdmissible
            | ConstructError::HypothesisViolated(_)
            | ConstructError::DegreeTooHigh(_)
            | ConstructError::OddDegreeVertex(_)
            | ConstructError::NotSixRegular
            | ConstructError::Graph(_) => Self::hypothesis(message),
        }
    }
}

impl From<ExactError> for CliError {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::NotAdmissible => Self::hypothesis(e.to_string()),
            ExactError::PaletteOutOfRange(_) => Self::usage(e.to_string()),
        }
    }
}

impl From<GenError> for CliError {
    fn from(e: GenError) -> Self {
        Self::new("GeneratorError", EXIT_USAGE, e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        Self::hypothesis(e.to_string())
    }
}
