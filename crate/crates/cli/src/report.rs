use std::fmt::Debug;
use std::fmt::Write as _;

use qk_core::instance::is_input_error;
use qk_core::Error;

pub const SUCCESS: u8 = 0;
pub const PROPERTY_FALSE: u8 = 1;
pub const INPUT_ERROR: u8 = 2;
pub const CAP_EXCEEDED: u8 = 3;

const FENCE: &str = "---report---";

/// A command that could not produce a verdict.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: INPUT_ERROR,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::TooLarge { .. } => CAP_EXCEEDED,
            e if is_input_error(e) => INPUT_ERROR,
            Error::NotVisualizable(_) => INPUT_ERROR,
            _ => PROPERTY_FALSE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// `key: value` lines plus the overall verdict.
#[derive(Debug)]
pub struct Report {
    lines: Vec<String>,
    holds: bool,
}

impl Report {
    pub fn new() -> Self {
        Report {
            lines: Vec::new(),
            holds: true,
        }
    }

    pub fn line(&mut self, key: &str, value: impl std::fmt::Display) {
        self.lines.push(format!("{key}: {value}"));
    }

    pub fn fails(&mut self) {
        self.holds = false;
    }

    pub fn code(&self) -> u8 {
        if self.holds {
            SUCCESS
        } else {
            PROPERTY_FALSE
        }
    }

    pub fn render(&self, command: &str) -> String {
        let mut out = format!("{FENCE}\ncommand: {command}\n");
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        let _ = writeln!(out, "exit: {}\n{FENCE}", self.code());
        out
    }
}

pub fn error_block(command: &str, code: u8, message: &str) -> String {
    format!("{FENCE}\ncommand: {command}\nerror: {message}\nexit: {code}\n{FENCE}\n")
}

fn variant(v: &impl Debug) -> String {
    let dbg = format!("{v:?}");
    dbg.chars().take_while(|c| c.is_alphanumeric()).collect()
}

fn tagged<V: Debug + std::fmt::Display>(vs: &[V]) -> Vec<String> {
    vs.iter().map(|v| format!("{}: {v}", variant(v))).collect()
}

/// One line per violation, each tagged with its kind.
pub fn violation_lines(e: &Error) -> Vec<String> {
    match e {
        Error::Lattice(vs) => tagged(vs),
        Error::Category(vs) => tagged(vs),
        Error::Quantaloid(vs) => tagged(vs),
        Error::Enriched(vs) => tagged(vs),
        Error::Concrete(vs) => tagged(vs),
        other => vec![format!("{}: {other}", variant(other))],
    }
}
