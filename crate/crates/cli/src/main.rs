use std::fs::File;
use std::io::{self, BufReader, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use gaql_cli::task::{Command, Grid, TaskFile};
use gaql_cli::{exit_code, run, Options, OutputRecord};

/// Exact computations with locally nilpotent derivations and Ga-actions.
///
/// `gaql run FILE` executes a task file (one JSON command per line, `-` for
/// stdin) and prints one JSON record per command. The other subcommands run a
/// single operation and print its record.
#[derive(Parser)]
#[command(name = "gaql", version)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args)]
struct RingArg {
    /// Comma-separated variable names, e.g. `x,y,z`.
    #[arg(long)]
    ring: String,
}

#[derive(Args)]
struct OrderArg {
    /// Monomial order: lex, grevlex or block(k).
    #[arg(long)]
    order: Option<String>,
}

#[derive(Subcommand)]
enum Sub {
    /// Execute a task file.
    Run {
        /// Path to the task file, or `-` for stdin.
        file: String,
    },
    /// Declare a ring and echo it.
    Ring {
        #[command(flatten)]
        ring: RingArg,
    },
    /// Parse a polynomial and print it in canonical form.
    Poly {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        poly: String,
    },
    /// Apply the k-th power of a derivation.
    Apply {
        #[command(flatten)]
        ring: RingArg,
        /// Images of the variables, e.g. `(0, 0, y, -x)`.
        #[arg(long)]
        derivation: String,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        k: Option<usize>,
    },
    /// Certify local nilpotency.
    Nilpotency {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        derivation: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Exponentiate a locally nilpotent derivation.
    Exp {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        derivation: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Act on a polynomial by the exponential of a derivation.
    Act {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        derivation: String,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Test invariance and report the degree in the group parameter.
    Invariant {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        derivation: String,
        #[arg(long)]
        poly: String,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Ideal and dimension of the fixed locus.
    FixedLocus {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        derivation: String,
    },
    /// Jacobian derivation of a map with n-1 components.
    JacobianDerivation {
        #[command(flatten)]
        ring: RingArg,
        /// Components, e.g. `x, y, x*u + y*v`.
        #[arg(long)]
        map: String,
    },
    /// Search for a local slice; with --map and no --derivation, uses the
    /// Jacobian derivation of the map.
    Slice {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        derivation: Option<String>,
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        degree_bound: Option<u32>,
    },
    /// Find a localization witness c^k * r = T(f, F).
    Localization {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        map: String,
        #[arg(long)]
        poly: String,
        /// Defaults to the Jacobian derivation of the map.
        #[arg(long)]
        derivation: Option<String>,
        #[arg(long)]
        degree_bound: Option<u32>,
        #[arg(long)]
        power_bound: Option<u32>,
    },
    /// Decide whether the fiber over a point is empty.
    Fiber {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        map: String,
        /// Comma-separated rationals, e.g. `0,1/2`.
        #[arg(long)]
        point: String,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Singular locus of the fibration.
    SingularLocus {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        map: String,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Report the empty fibers among a list of points or a grid.
    Scan {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        map: String,
        /// Semicolon-separated points, e.g. `0,0;1,2`.
        #[arg(long, conflicts_with_all = ["lower", "upper", "steps"])]
        points: Option<String>,
        #[arg(long, requires_all = ["upper", "steps"])]
        lower: Option<String>,
        #[arg(long, requires_all = ["lower", "steps"])]
        upper: Option<String>,
        /// Points per axis, e.g. `11,11`.
        #[arg(long, requires_all = ["lower", "upper"])]
        steps: Option<String>,
        #[command(flatten)]
        order: OrderArg,
    },
    /// Subalgebra membership, with an explicit expression when it holds.
    Subalgebra {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        poly: String,
        #[arg(long, conflicts_with = "map", required_unless_present = "map")]
        generators: Option<String>,
        #[arg(long)]
        map: Option<String>,
    },
}

/// Splits on commas outside parentheses, after dropping one pair of
/// parentheses wrapping the whole list.
fn split_list(src: &str) -> Vec<String> {
    let mut s = src.trim();
    if s.starts_with('(') && s.ends_with(')') && wraps(s) {
        s = &s[1..s.len() - 1];
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(cur.trim().to_string());
                cur.clear();
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    if !cur.trim().is_empty() || !out.is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

// True when the opening parenthesis at 0 closes at the last character.
fn wraps(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return i == s.len() - 1;
                }
            }
            _ => {}
        }
    }
    false
}

fn ring_cmd(r: &RingArg) -> Command {
    Command::Ring {
        vars: split_list(&r.ring),
    }
}

fn map_cmd(map: &str) -> Command {
    Command::Map {
        name: "F".into(),
        components: split_list(map),
        target: None,
    }
}

fn derivation_cmd(d: &str) -> Command {
    Command::Derivation {
        name: "D".into(),
        images: split_list(d),
    }
}

fn exp_cmd(bound: Option<usize>) -> Command {
    Command::Exp {
        derivation: "D".into(),
        bound,
        name: Some("A".into()),
    }
}

fn commands(sub: Sub) -> Vec<Command> {
    match sub {
        Sub::Run { .. } => unreachable!("handled by the caller"),
        Sub::Ring { ring } => vec![ring_cmd(&ring)],
        Sub::Poly { ring, poly } => vec![ring_cmd(&ring), Command::Poly { name: None, expr: poly }],
        Sub::Apply {
            ring,
            derivation,
            poly,
            k,
        } => vec![
            ring_cmd(&ring),
            derivation_cmd(&derivation),
            Command::Apply {
                derivation: "D".into(),
                poly,
                k,
            },
        ],
        Sub::Nilpotency {
            ring,
            derivation,
            bound,
        } => vec![
            ring_cmd(&ring),
            derivation_cmd(&derivation),
            Command::Nilpotency {
                derivation: "D".into(),
                bound,
            },
        ],
        Sub::Exp {
            ring,
            derivation,
            bound,
        } => vec![ring_cmd(&ring), derivation_cmd(&derivation), exp_cmd(bound)],
        Sub::Act {
            ring,
            derivation,
            poly,
            bound,
        } => vec![
            ring_cmd(&ring),
            derivation_cmd(&derivation),
            exp_cmd(bound),
            Command::Act {
                action: "A".into(),
                poly,
            },
        ],
        Sub::Invariant {
            ring,
            derivation,
            poly,
            bound,
        } => vec![
            ring_cmd(&ring),
            derivation_cmd(&derivation),
            exp_cmd(bound),
            Command::Invariant {
                action: "A".into(),
                poly,
            },
        ],
        Sub::FixedLocus { ring, derivation } => vec![
            ring_cmd(&ring),
            derivation_cmd(&derivation),
            Command::FixedLocus {
                derivation: "D".into(),
            },
        ],
        Sub::JacobianDerivation { ring, map } => vec![
            ring_cmd(&ring),
            map_cmd(&map),
            Command::JacobianDerivation {
                map: "F".into(),
                name: None,
            },
        ],
        Sub::Slice {
            ring,
            derivation,
            map,
            degree_bound,
        } => {
            let mut cmds = vec![ring_cmd(&ring)];
            if let Some(m) = &map {
                cmds.push(map_cmd(m));
            }
            match &derivation {
                Some(d) => cmds.push(derivation_cmd(d)),
                None => cmds.push(Command::JacobianDerivation {
                    map: "F".into(),
                    name: Some("D".into()),
                }),
            }
            cmds.push(Command::Slice {
                derivation: "D".into(),
                degree_bound,
                map: map.map(|_| "F".into()),
                name: None,
            });
            cmds
        }
        Sub::Localization {
            ring,
            map,
            poly,
            derivation,
            degree_bound,
            power_bound,
        } => {
            let mut cmds = vec![ring_cmd(&ring), map_cmd(&map)];
            match &derivation {
                Some(d) => cmds.push(derivation_cmd(d)),
                None => cmds.push(Command::JacobianDerivation {
                    map: "F".into(),
                    name: Some("D".into()),
                }),
            }
            cmds.push(Command::Localization {
                derivation: "D".into(),
                map: "F".into(),
                poly,
                slice: None,
                degree_bound,
                power_bound,
            });
            cmds
        }
        Sub::Fiber {
            ring,
            map,
            point,
            order,
        } => vec![
            ring_cmd(&ring),
            map_cmd(&map),
            Command::Fiber {
                map: "F".into(),
                point: split_list(&point),
                order: order.order,
            },
        ],
        Sub::SingularLocus { ring, map, order } => vec![
            ring_cmd(&ring),
            map_cmd(&map),
            Command::SingularLocus {
                map: "F".into(),
                order: order.order,
            },
        ],
        Sub::Scan {
            ring,
            map,
            points,
            lower,
            upper,
            steps,
            order,
        } => {
            let grid = match (lower, upper, steps) {
                (Some(l), Some(u), Some(s)) => Some(Grid {
                    lower: split_list(&l),
                    upper: split_list(&u),
                    steps: split_list(&s)
                        .iter()
                        .map(|x| x.parse().unwrap_or(0))
                        .collect(),
                }),
                _ => None,
            };
            vec![
                ring_cmd(&ring),
                map_cmd(&map),
                Command::Scan {
                    map: "F".into(),
                    points: points.map(|p| p.split(';').map(split_list).collect()),
                    grid,
                    order: order.order,
                },
            ]
        }
        Sub::Subalgebra {
            ring,
            poly,
            generators,
            map,
        } => {
            let mut cmds = vec![ring_cmd(&ring)];
            if let Some(m) = &map {
                cmds.push(map_cmd(m));
            }
            cmds.push(Command::Subalgebra {
                poly,
                generators: generators.map(|g| split_list(&g)),
                map: map.map(|_| "F".into()),
            });
            cmds
        }
    }
}

fn load(sub: Sub) -> Result<(TaskFile, bool), String> {
    match sub {
        Sub::Run { file } => {
            let task = if file == "-" {
                TaskFile::read(io::stdin().lock())
            } else {
                let f = File::open(&file).map_err(|e| format!("{file}: {e}"))?;
                TaskFile::read(BufReader::new(f))
            };
            task.map(|t| (t, true)).map_err(|e| e.to_string())
        }
        other => TaskFile::new(commands(other))
            .map(|t| (t, false))
            .map_err(|e| e.to_string()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (task, all) = match load(cli.command) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("gaql: {e}");
            return ExitCode::from(2);
        }
    };
    let records = run(&task, Options::from_env());
    let shown: Vec<&OutputRecord> = if all {
        records.iter().collect()
    } else {
        // The first failure explains a failing setup step better than the
        // final record would.
        records
            .iter()
            .find(|r| !r.is_ok())
            .or(records.last())
            .into_iter()
            .collect()
    };
    let mut out = io::stdout().lock();
    for r in shown {
        if writeln!(out, "{}", r.to_json_line()).is_err() {
            return ExitCode::from(2);
        }
    }
    ExitCode::from(exit_code(&records) as u8)
}
