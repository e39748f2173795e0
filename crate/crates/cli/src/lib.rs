//! Command-line front end for the `mpd` binary.
//!
//! Group files are described in [`mpd_core::group_file`].
//!
//! A hint file is JSON:
//!
//! ```text
//! {
//!   "factor_index": 0,
//!   "family": "PSL",
//!   "d": 3,
//!   "q": 4,
//!   "field_convention": "lex-least-irreducible",
//!   "generator_images": [
//!     { "permutation": "(1 2)(3 4)", "matrix": [[[1, 0], [1, 0], [0, 0]], ...] }
//!   ]
//! }
//! ```
//!
//! `family` is one of `PSL`, `PSp` or `POmegaPlus` and `d` is the matrix
//! dimension. `factor_index` may be left out, in which case the factor
//! generated by the permutations is looked up. Each matrix is a list of
//! rows; each entry is the coefficient vector of a field element over the
//! prime field, constant term first, in the basis 1, x, x^2, ... where x is
//! a root of the lexicographically least monic irreducible polynomial of
//! degree e over F_p.
//!
//! `mu --json` prints a [`mpd_core::pipeline::MuCertificate`]; the README
//! lists its fields.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::json;

use mpd_core::group_file::GroupFile;
use mpd_core::hint::RecognitionHint;
use mpd_core::oracle::mu_oracle;
use mpd_core::pipeline::{mu_fitting_free, mu_small_quotient};
use mpd_core::simple_id::name_simple;
use mpd_core::small_group::{list_elements, DEFAULT_SUBGROUP_LIMIT};
use mpd_core::socle::{socle_fitting_free, SocleOptions};
use mpd_core::{Error, PermGroup};

pub mod fixtures;

/// Default bound on the order of a group listed element by element.
pub const DEFAULT_LIMIT: usize = 2000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_PARTIAL: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "mpd",
    version,
    about = "Minimal faithful permutation degree of permutation groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for random elements.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Order of G, or of G/K for a file with a kernel block.
    Order { file: PathBuf },
    /// Socle of a Fitting-free group and its simple factors.
    Socle { file: PathBuf },
    /// Minimal normal subgroups as orbits on the socle factors.
    MinNormal { file: PathBuf },
    /// Name of a non-abelian simple group.
    Recognize { file: PathBuf },
    /// Minimal degree of a Fitting-free group, with a certificate.
    Mu {
        file: PathBuf,
        /// Recognition hint for one socle factor; may be repeated.
        #[arg(long = "hint")]
        hints: Vec<PathBuf>,
    },
    /// Minimal degree by exhaustive subgroup search.
    MuOracle {
        file: PathBuf,
        /// Largest group order to list.
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
    /// Minimal degree of G/K by listing the quotient.
    MuQuotient {
        file: PathBuf,
        /// Largest quotient order to list.
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: usize,
    },
}

enum Failure {
    Input(String),
    Partial(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unsupported(_) | Error::HintRequired(_) => Failure::Partial(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<GroupFile, Failure> {
    GroupFile::parse(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_group(path: &Path) -> Result<PermGroup, Failure> {
    let f = load(path)?;
    if f.kernel.is_some() {
        return Err(Failure::Input(format!(
            "{}: this command takes a group without a kernel block",
            path.display()
        )));
    }
    Ok(f.group()?)
}

fn json_line(out: &mut dyn Write, v: &serde_json::Value) -> std::io::Result<()> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(v).expect("json value serializes")
    )
}

/// Runs one command and reports whether the result is partial.
fn execute(cli: &Cli, out: &mut dyn Write) -> Result<bool, Failure> {
    let opts = SocleOptions {
        seed: cli.seed,
        ..SocleOptions::default()
    };
    let io = |e: std::io::Error| Failure::Input(format!("write failed: {e}"));
    match &cli.command {
        Command::Order { file } => {
            let q = load(file)?.quotient()?;
            let order = q.order();
            if cli.json {
                json_line(out, &json!({ "order": order.to_string() })).map_err(io)?;
            } else {
                writeln!(out, "{order}").map_err(io)?;
            }
        }
        Command::Socle { file } => {
            let g = load_group(file)?;
            let soc = socle_fitting_free(&g, &opts)?;
            let factors: Vec<_> = soc
                .factors
                .iter()
                .map(|f| {
                    json!({
                        "order": f.order().to_string(),
                        "name": name_simple(f).ok().map(|n| n.to_string()),
                        "generators": f.generators().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    })
                })
                .collect();
            if cli.json {
                let v = json!({
                    "socle_order": soc.socle.order().to_string(),
                    "factors": factors,
                    "minimal_normals": soc.minimal_normals,
                    "fitting_free": soc.fitting_free,
                    "probabilistic": soc.probabilistic,
                });
                json_line(out, &v).map_err(io)?;
            } else {
                writeln!(out, "socle order {}", soc.socle.order()).map_err(io)?;
                for (i, f) in factors.iter().enumerate() {
                    let name = f["name"].as_str().unwrap_or("?");
                    writeln!(out, "factor {i}: {name}, order {}", f["order"].as_str().unwrap_or("")).map_err(io)?;
                }
                if soc.probabilistic {
                    writeln!(out, "minimality checked on random samples").map_err(io)?;
                }
            }
        }
        Command::MinNormal { file } => {
            let g = load_group(file)?;
            let soc = socle_fitting_free(&g, &opts)?;
            if cli.json {
                json_line(out, &json!({ "minimal_normals": soc.minimal_normals })).map_err(io)?;
            } else {
                for (i, orbit) in soc.minimal_normals.iter().enumerate() {
                    let order = soc.minimal_normal(i).order();
                    writeln!(out, "N{i}: factors {orbit:?}, order {order}").map_err(io)?;
                }
            }
        }
        Command::Recognize { file } => {
            let g = load_group(file)?;
            let name = name_simple(&g)?;
            if cli.json {
                json_line(out, &json!({ "name": name.to_string() })).map_err(io)?;
            } else {
                writeln!(out, "{name}").map_err(io)?;
            }
        }
        Command::Mu { file, hints } => {
            let g = load_group(file)?;
            let hints = hints
                .iter()
                .map(|h| {
                    RecognitionHint::from_json(&read(h)?).map_err(|e| Failure::Input(format!("{}: {e}", h.display())))
                })
                .collect::<Result<Vec<_>, _>>()?;
            let cert = mu_fitting_free(&g, &hints, &opts)?;
            if cli.json {
                writeln!(out, "{}", cert.to_json()).map_err(io)?;
            } else {
                for (i, r) in cert.minimal_normals.iter().enumerate() {
                    let name = r.name.as_ref().map(|n| n.to_string()).unwrap_or_else(|| "?".into());
                    match (&r.mu, &r.failure) {
                        (Some(m), _) => writeln!(
                            out,
                            "N{i}: {}x {name}, |A/S| = {}, {}: μ = {m}",
                            r.ell,
                            r.a_over_s,
                            r.rule.as_deref().unwrap_or("")
                        ),
                        (None, Some(f)) => {
                            writeln!(out, "N{i}: {}x {name}, |A/S| = {}: {}", r.ell, r.a_over_s, f.message)
                        }
                        (None, None) => Ok(()),
                    }
                    .map_err(io)?;
                }
                match cert.total {
                    Some(t) => writeln!(out, "μ = {t}").map_err(io)?,
                    None => writeln!(out, "μ undetermined").map_err(io)?,
                }
            }
            return Ok(cert.total.is_none());
        }
        Command::MuOracle { file, limit } => {
            let q = load(file)?.quotient()?;
            let c = list_elements(&q, *limit)?;
            let (mu, witness) = mu_oracle(&c, DEFAULT_SUBGROUP_LIMIT)?;
            let subgroups: Vec<_> = witness
                .subgroups
                .iter()
                .map(|h| json!({ "order": h.len(), "index": c.order() / h.len() }))
                .collect();
            if cli.json {
                json_line(
                    out,
                    &json!({ "mu": mu, "group_order": c.order(), "witness": subgroups }),
                )
                .map_err(io)?;
            } else {
                writeln!(out, "μ = {mu}").map_err(io)?;
                for s in &subgroups {
                    writeln!(out, "  subgroup of order {} and index {}", s["order"], s["index"]).map_err(io)?;
                }
            }
        }
        Command::MuQuotient { file, limit } => {
            let q = load(file)?.quotient()?;
            let mu = mu_small_quotient(&q, *limit)?;
            if cli.json {
                json_line(out, &json!({ "mu": mu })).map_err(io)?;
            } else {
                writeln!(out, "μ = {mu}").map_err(io)?;
            }
        }
    }
    Ok(false)
}

/// Parses `args` (program name first) and runs the command. Returns the
/// exit code: 0 on success, 1 on input errors, 2 when the result is partial.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(false) => EXIT_OK,
        Ok(true) => EXIT_PARTIAL,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Partial(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_PARTIAL
        }
    }
}
