//! Job specifications: the JSON form of a command line.

use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Witt,
    Layers,
    Reid,
    Certify,
    ScanQ42,
    ScanG53,
    Klein,
    Oracle,
    Repro,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Witt => "witt",
            Command::Layers => "layers",
            Command::Reid => "reid",
            Command::Certify => "certify",
            Command::ScanQ42 => "scan-q42",
            Command::ScanG53 => "scan-g53",
            Command::Klein => "klein",
            Command::Oracle => "oracle",
            Command::Repro => "repro",
        }
    }

    /// Parameters each command accepts besides `threads`.
    fn accepts(self) -> &'static [&'static str] {
        match self {
            Command::Witt => &["rank", "max-degree"],
            Command::Layers => &["rank", "class"],
            Command::Reid => &["rank", "class", "n"],
            Command::Certify => &["rank", "class", "n", "verify"],
            Command::ScanQ42 => &["bound", "samples", "retries", "seed"],
            Command::ScanG53 => &["b-bound"],
            Command::Klein => &["lo", "hi", "radius"],
            Command::Oracle => &["moduli", "seed"],
            Command::Repro => &["target", "bound", "b-bound", "seed"],
        }
    }

    fn takes_group(self) -> bool {
        matches!(self, Command::Layers | Command::Reid | Command::Certify | Command::Klein)
    }
}

/// Command-specific options. Flag names and JSON keys coincide.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize, Args)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Params {
    /// Number of free generators.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Largest layer degree in the table.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<usize>,
    /// Nilpotency class.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<usize>,
    /// Number of extra free factors `Z^n`.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Certificate file to check instead of generating one.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<PathBuf>,
    /// Entry bound for matrix scans.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<u64>,
    /// Switch scan-q42 to seeded sampling with this many draws.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    /// Redraws per column before a sample is abandoned.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub retries: Option<u32>,
    /// Bound on |b| in the G53 abelianization tuples.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_bound: Option<u64>,
    /// First index of the Klein witness window.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lo: Option<i64>,
    /// Last index of the Klein witness window.
    #[arg(long, allow_hyphen_values = true)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hi: Option<i64>,
    /// Word-length radius of the oracle ball.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
    /// Heisenberg moduli, comma separated.
    #[arg(long, value_delimiter = ',')]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub moduli: Option<Vec<u32>>,
    /// Seed for randomized procedures (default 0).
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Worker threads for parallel scans.
    #[arg(long)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub threads: Option<usize>,
    #[arg(skip)]
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<String>,
}

impl Params {
    fn present(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        let mut note = |on: bool, name: &'static str| {
            if on {
                out.push(name);
            }
        };
        note(self.rank.is_some(), "rank");
        note(self.max_degree.is_some(), "max-degree");
        note(self.class.is_some(), "class");
        note(self.n.is_some(), "n");
        note(self.verify.is_some(), "verify");
        note(self.bound.is_some(), "bound");
        note(self.samples.is_some(), "samples");
        note(self.retries.is_some(), "retries");
        note(self.b_bound.is_some(), "b-bound");
        note(self.lo.is_some(), "lo");
        note(self.hi.is_some(), "hi");
        note(self.radius.is_some(), "radius");
        note(self.moduli.is_some(), "moduli");
        note(self.seed.is_some(), "seed");
        note(self.target.is_some(), "target");
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    /// Catalog name or inline JSON descriptor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Value>,
    /// Endomorphism descriptor; its form depends on the group.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub endo: Option<Value>,
    #[serde(default)]
    pub params: Params,
}

impl JobSpec {
    /// Rejects options the command does not use.
    pub fn validate(&self) -> Result<(), String> {
        let allowed = self.command.accepts();
        if let Some(p) = self.params.present().into_iter().find(|p| !allowed.contains(p)) {
            return Err(format!("parameter {p:?} does not apply to {}", self.command.name()));
        }
        let group_ok = self.command.takes_group();
        if !group_ok && (self.group.is_some() || self.endo.is_some()) {
            return Err(format!("{} takes no group or endomorphism", self.command.name()));
        }
        if self.command == Command::Repro && self.params.target.is_none() {
            return Err("repro needs a target".into());
        }
        Ok(())
    }
}

/// Interprets a flag value as JSON when it looks like JSON, else as a string.
pub fn flag_value(s: &str) -> Value {
    let t = s.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        if let Ok(v) = serde_json::from_str(t) {
            return v;
        }
    }
    Value::String(s.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_fields_rejected() {
        let bad = r#"{"command": "witt", "params": {"rank": 2, "colour": 1}}"#;
        assert!(serde_json::from_str::<JobSpec>(bad).is_err());
        let bad = r#"{"command": "witt", "extra": 1}"#;
        assert!(serde_json::from_str::<JobSpec>(bad).is_err());
    }

    #[test]
    fn irrelevant_params_rejected() {
        let j: JobSpec = serde_json::from_str(r#"{"command": "witt", "params": {"bound": 2}}"#).unwrap();
        assert!(j.validate().is_err());
        let j: JobSpec = serde_json::from_str(r#"{"command": "scan-q42", "params": {"bound": 1}}"#).unwrap();
        assert!(j.validate().is_ok());
    }

    #[test]
    fn flag_values() {
        assert_eq!(flag_value("b,r=2"), Value::String("b,r=2".into()));
        assert_eq!(flag_value("[[1,2],[3,4]]"), serde_json::json!([[1, 2], [3, 4]]));
    }
}
