//! Command dispatch and reporting for the `supertriple` binary.

pub mod args;
pub mod commands;
pub mod report;

use std::path::Path;

use args::{Cli, Command, DeformCommand, NijenhuisCommand};
use report::{digests, RunReport, Status};

/// A finished command: the report plus its human rendering.
pub struct Run {
    pub report: RunReport,
    pub lines: Vec<String>,
}

impl Run {
    pub fn exit_code(&self) -> i32 {
        self.report.status.exit_code()
    }

    /// The text printed to stdout.
    pub fn render(&self, json: bool) -> String {
        if json {
            return self.report.to_json();
        }
        let mut out = String::new();
        for line in &self.lines {
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&format!("status: {}\n", self.report.status.name()));
        out
    }
}

fn describe(cmd: &Command) -> (&'static str, Vec<(&'static str, &Path)>) {
    let mut inputs: Vec<(&'static str, &Path)> = Vec::new();
    let name = match cmd {
        Command::Verify { system } | Command::Theorems { system } | Command::Spaces { system, .. } => {
            inputs.push(("system", system));
            match cmd {
                Command::Verify { .. } => "verify",
                Command::Theorems { .. } => "theorems",
                _ => "spaces",
            }
        }
        Command::RepCheck { system, rep } | Command::Semidirect { system, rep, .. } | Command::Cohomology { system, rep, .. } | Command::ComplexCheck { system, rep } => {
            inputs.push(("system", system));
            if let Some(p) = &rep.rep {
                inputs.push(("representation", p));
            }
            match cmd {
                Command::RepCheck { .. } => "rep-check",
                Command::Semidirect { .. } => "semidirect",
                Command::Cohomology { .. } => "cohomology",
                _ => "complex-check",
            }
        }
        Command::Deform(DeformCommand::Check { file }) => {
            inputs.push(("deformation", file));
            "deform check"
        }
        Command::Deform(DeformCommand::Equiv { system, f1, f1p }) => {
            inputs.extend([("system", system.as_path()), ("f1", f1.as_path()), ("f1p", f1p.as_path())]);
            "deform equiv"
        }
        Command::Deform(DeformCommand::Rigidity { system }) => {
            inputs.push(("system", system));
            "deform rigidity"
        }
        Command::Nijenhuis(NijenhuisCommand::Check { file, .. }) => {
            inputs.push(("nijenhuis", file));
            "nijenhuis check"
        }
        Command::Selftest { .. } => "selftest",
    };
    (name, inputs)
}

pub fn run(cli: &Cli) -> Run {
    let (name, inputs) = describe(&cli.command);
    let inputs = digests(&inputs);
    let (status, results, error, lines) = match commands::execute(&cli.command, cli.json || cli.verbose) {
        Ok(o) => (if o.violations { Status::Violations } else { Status::Ok }, o.results, None, o.lines),
        Err(e) => (Status::Error, serde_json::Value::Null, Some(e.to_string()), vec![format!("error: {e}")]),
    };
    Run { report: RunReport { command: name.into(), inputs, status, results, error }, lines }
}
