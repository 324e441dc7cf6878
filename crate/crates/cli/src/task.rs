//! Task files: one JSON object per line, each with an `op` key.
//!
//! ```text
//! {"op": "ring", "vars": ["x", "y", "z"]}
//! {"op": "map", "name": "F", "components": ["1 + x*z", "y + z + x*y*z"]}
//! {"op": "fiber", "map": "F", "point": ["0", "0"]}
//! ```
//!
//! Loading checks the whole file before anything runs: every line must be a
//! known command, a ring must be declared before any command that needs one,
//! and every referenced map, derivation, action, slice or polynomial name must
//! be declared (or bound by an earlier command's `name`) above its first use.

use std::collections::HashSet;
use std::io::BufRead;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub lower: Vec<String>,
    pub upper: Vec<String>,
    pub steps: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Command {
    Ring {
        vars: Vec<String>,
    },
    Poly {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        expr: String,
    },
    Map {
        name: String,
        components: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        target: Option<Vec<String>>,
    },
    Derivation {
        name: String,
        images: Vec<String>,
    },
    Apply {
        derivation: String,
        poly: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        k: Option<usize>,
    },
    Nilpotency {
        derivation: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bound: Option<usize>,
    },
    Exp {
        derivation: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        bound: Option<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Act {
        action: String,
        poly: String,
    },
    Invariant {
        action: String,
        poly: String,
    },
    FixedLocus {
        derivation: String,
    },
    JacobianDerivation {
        map: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Slice {
        derivation: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree_bound: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        map: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
    },
    Localization {
        derivation: String,
        map: String,
        poly: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        slice: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        degree_bound: Option<u32>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        power_bound: Option<u32>,
    },
    Fiber {
        map: String,
        point: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<String>,
    },
    SingularLocus {
        map: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<String>,
    },
    Scan {
        map: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        points: Option<Vec<Vec<String>>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        grid: Option<Grid>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<String>,
    },
    Subalgebra {
        poly: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        generators: Option<Vec<String>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        map: Option<String>,
    },
}

impl Command {
    pub fn op(&self) -> &'static str {
        match self {
            Command::Ring { .. } => "ring",
            Command::Poly { .. } => "poly",
            Command::Map { .. } => "map",
            Command::Derivation { .. } => "derivation",
            Command::Apply { .. } => "apply",
            Command::Nilpotency { .. } => "nilpotency",
            Command::Exp { .. } => "exp",
            Command::Act { .. } => "act",
            Command::Invariant { .. } => "invariant",
            Command::FixedLocus { .. } => "fixed-locus",
            Command::JacobianDerivation { .. } => "jacobian-derivation",
            Command::Slice { .. } => "slice",
            Command::Localization { .. } => "localization",
            Command::Fiber { .. } => "fiber",
            Command::SingularLocus { .. } => "singular-locus",
            Command::Scan { .. } => "scan",
            Command::Subalgebra { .. } => "subalgebra",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LoadError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {message}")]
    Reference { line: usize, message: String },
    #[error("reading task: {0}")]
    Io(String),
}

/// A validated task: commands with their source line numbers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TaskFile {
    pub commands: Vec<(usize, Command)>,
}

#[derive(Default)]
struct Scope {
    ring: Option<Vec<String>>,
    polys: HashSet<String>,
    maps: HashSet<String>,
    derivations: HashSet<String>,
    actions: HashSet<String>,
    slices: HashSet<String>,
}

impl Scope {
    fn err(line: usize, message: String) -> LoadError {
        LoadError::Reference { line, message }
    }

    fn need(set: &HashSet<String>, kind: &str, name: &str, line: usize) -> Result<(), LoadError> {
        if set.contains(name) {
            Ok(())
        } else {
            Err(Self::err(line, format!("unknown {kind} `{name}`")))
        }
    }

    fn need_ring(&self, line: usize) -> Result<(), LoadError> {
        if self.ring.is_some() {
            Ok(())
        } else {
            Err(Self::err(line, "no ring declared before this command".into()))
        }
    }

    fn bind(&mut self, kind: fn(&mut Scope) -> &mut HashSet<String>, name: &str, line: usize) -> Result<(), LoadError> {
        let ring = self.ring.as_ref().expect("checked");
        if ring.iter().any(|v| v == name) {
            return Err(Self::err(line, format!("name `{name}` shadows a ring variable")));
        }
        kind(self).insert(name.to_string());
        Ok(())
    }

    fn check(&mut self, line: usize, cmd: &Command) -> Result<(), LoadError> {
        if !matches!(cmd, Command::Ring { .. }) {
            self.need_ring(line)?;
        }
        match cmd {
            Command::Ring { vars } => {
                if self.ring.is_some() {
                    return Err(Self::err(line, "ring declared twice".into()));
                }
                self.ring = Some(vars.clone());
            }
            Command::Poly { name, .. } => {
                if let Some(n) = name {
                    self.bind(|s| &mut s.polys, n, line)?;
                }
            }
            Command::Map { name, .. } => self.bind(|s| &mut s.maps, name, line)?,
            Command::Derivation { name, .. } => self.bind(|s| &mut s.derivations, name, line)?,
            Command::Apply { derivation, .. }
            | Command::Nilpotency { derivation, .. }
            | Command::FixedLocus { derivation } => {
                Self::need(&self.derivations, "derivation", derivation, line)?
            }
            Command::Exp {
                derivation, name, ..
            } => {
                Self::need(&self.derivations, "derivation", derivation, line)?;
                if let Some(n) = name {
                    self.bind(|s| &mut s.actions, n, line)?;
                }
            }
            Command::Act { action, .. } | Command::Invariant { action, .. } => {
                Self::need(&self.actions, "action", action, line)?
            }
            Command::JacobianDerivation { map, name } => {
                Self::need(&self.maps, "map", map, line)?;
                if let Some(n) = name {
                    self.bind(|s| &mut s.derivations, n, line)?;
                }
            }
            Command::Slice {
                derivation,
                map,
                name,
                ..
            } => {
                Self::need(&self.derivations, "derivation", derivation, line)?;
                if let Some(m) = map {
                    Self::need(&self.maps, "map", m, line)?;
                }
                if let Some(n) = name {
                    self.bind(|s| &mut s.slices, n, line)?;
                }
            }
            Command::Localization {
                derivation,
                map,
                slice,
                ..
            } => {
                Self::need(&self.derivations, "derivation", derivation, line)?;
                Self::need(&self.maps, "map", map, line)?;
                if let Some(s) = slice {
                    Self::need(&self.slices, "slice", s, line)?;
                }
            }
            Command::Fiber { map, .. } | Command::SingularLocus { map, .. } => {
                Self::need(&self.maps, "map", map, line)?
            }
            Command::Scan {
                map, points, grid, ..
            } => {
                Self::need(&self.maps, "map", map, line)?;
                if points.is_some() == grid.is_some() {
                    return Err(LoadError::Syntax {
                        line,
                        message: "scan needs exactly one of `points` or `grid`".into(),
                    });
                }
            }
            Command::Subalgebra {
                generators, map, ..
            } => {
                if generators.is_some() == map.is_some() {
                    return Err(LoadError::Syntax {
                        line,
                        message: "subalgebra needs exactly one of `generators` or `map`".into(),
                    });
                }
                if let Some(m) = map {
                    Self::need(&self.maps, "map", m, line)?;
                }
            }
        }
        Ok(())
    }
}

impl TaskFile {
    pub fn new(commands: Vec<Command>) -> Result<Self, LoadError> {
        Self::from_numbered(commands.into_iter().enumerate().map(|(i, c)| (i + 1, c)).collect())
    }

    fn from_numbered(commands: Vec<(usize, Command)>) -> Result<Self, LoadError> {
        let mut scope = Scope::default();
        for (line, cmd) in &commands {
            scope.check(*line, cmd)?;
        }
        Ok(TaskFile { commands })
    }

    /// Parses line-delimited JSON. Blank lines are skipped.
    pub fn parse(src: &str) -> Result<Self, LoadError> {
        let mut commands = Vec::new();
        for (i, raw) in src.lines().enumerate() {
            if raw.trim().is_empty() {
                continue;
            }
            let cmd: Command = serde_json::from_str(raw).map_err(|e| LoadError::Syntax {
                line: i + 1,
                message: e.to_string(),
            })?;
            commands.push((i + 1, cmd));
        }
        Self::from_numbered(commands)
    }

    pub fn read(reader: impl BufRead) -> Result<Self, LoadError> {
        let mut src = String::new();
        for line in reader.lines() {
            src.push_str(&line.map_err(|e| LoadError::Io(e.to_string()))?);
            src.push('\n');
        }
        Self::parse(&src)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_validates() {
        let src = r#"
{"op": "ring", "vars": ["x", "y", "z"]}
{"op": "map", "name": "F", "components": ["1 + x*z", "y + z + x*y*z"]}

{"op": "fiber", "map": "F", "point": ["0", "0"]}
"#;
        let task = TaskFile::parse(src).unwrap();
        assert_eq!(task.commands.len(), 3);
        assert_eq!(task.commands[2].0, 5);
        assert_eq!(task.commands[2].1.op(), "fiber");
    }

    #[test]
    fn unknown_names_fail_at_load_time() {
        let src = r#"{"op": "ring", "vars": ["x"]}
{"op": "fiber", "map": "G", "point": ["0"]}"#;
        assert!(matches!(
            TaskFile::parse(src),
            Err(LoadError::Reference { line: 2, .. })
        ));
    }

    #[test]
    fn names_bound_by_commands_are_visible_later() {
        let src = r#"{"op": "ring", "vars": ["x", "y"]}
{"op": "map", "name": "F", "components": ["x"]}
{"op": "jacobian-derivation", "map": "F", "name": "D"}
{"op": "exp", "derivation": "D", "name": "A"}
{"op": "act", "action": "A", "poly": "y"}"#;
        assert!(TaskFile::parse(src).is_ok());
    }

    #[test]
    fn structural_errors() {
        let cases = [
            r#"{"op": "fiber", "map": "F", "point": []}"#,
            r#"{"op": "ring", "vars": ["x"]}
{"op": "ring", "vars": ["y"]}"#,
            r#"{"op": "ring", "vars": ["x"]}
{"op": "map", "name": "x", "components": ["x"]}"#,
            r#"{"op": "ring", "vars": ["x"]}
{"op": "frobnicate"}"#,
            r#"{"op": "ring", "vars": ["x"], "extra": 1}"#,
            r#"{"op": "ring", "vars": ["x"]}
{"op": "map", "name": "F", "components": ["x"]}
{"op": "scan", "map": "F"}"#,
            "not json",
        ];
        for src in cases {
            assert!(TaskFile::parse(src).is_err(), "{src}");
        }
    }
}
