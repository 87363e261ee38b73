//! `johnson`: command-line access to Hall bases, Johnson homomorphisms,
//! handlebody obstructions and the region table.

mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use johnson_core::io::{
    lagrangian_from_json, lagrangian_to_json, mapping_class_from_json, matrix_from_json, tau_to_json,
};
use johnson_core::johnson::{johnson_depth, jprime_depth, surface_reduce, tau, tau1, MappingClassData};
use johnson_core::obstruction::{grade_decompose, robustness_scan, LagrangianSource};
use johnson_core::region::{region_table, render_csv, render_json, render_table};
use johnson_core::surface::SurfaceModel;
use johnson_core::symplectic::{eigen_pm1_condition, invariant_lagrangian_search, is_invariant, is_symplectic, Lagrangian};
use johnson_core::{hall_basis, witt, Alphabet, Depth, Error};
use serde_json::{json, Value};

use config::Config;

#[derive(Parser, Debug)]
#[command(name = "johnson", version, about = "Johnson homomorphisms and handlebody obstructions")]
struct Cli {
    /// JSON config file (overrides the JOHNSON_CONFIG environment variable)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Magnus truncation degree
    #[arg(long, global = true)]
    cap: Option<usize>,
    /// Diagnostics on stderr
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum IdealKind {
    Symplectic,
    Handlebody,
    Free,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank of the weight-K part of the free Lie ring on G generators
    Witt { k: u64, g: u64 },
    /// Basic commutators of weight K on the surface alphabet of genus G
    Hall {
        k: usize,
        g: usize,
        /// Print the trees as a JSON array
        #[arg(long)]
        json: bool,
    },
    /// Rank of a graded quotient of the free Lie ring on 2G generators
    Rank {
        k: usize,
        #[arg(long)]
        genus: usize,
        #[arg(long, value_enum, default_value = "symplectic")]
        ideal: IdealKind,
    },
    /// The Johnson homomorphism of a mapping class at weight K
    Tau {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        k: usize,
        /// Values in the free Lie ring instead of the surface Lie ring
        #[arg(long)]
        free: bool,
    },
    /// Johnson filtration depths in the free and surface groups
    Depth {
        #[arg(long)]
        map: PathBuf,
    },
    /// The handlebody obstruction for one Lagrangian (default: span of the a's)
    Obstruct {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lagrangian: Option<PathBuf>,
    },
    /// The obstruction over coordinate Lagrangians and their perturbations
    Scan {
        #[arg(long)]
        map: PathBuf,
        #[arg(long)]
        k: usize,
        /// Perturbation entry bound; 0 keeps only coordinate Lagrangians
        #[arg(long)]
        height: Option<usize>,
        /// Extra Lagrangians to include
        #[arg(long)]
        lagrangian: Vec<PathBuf>,
    },
    /// The dimension-count region over 2 ≤ k ≤ KMAX, 2 ≤ g ≤ GMAX
    Region {
        #[arg(long, default_value_t = 8)]
        kmax: u64,
        #[arg(long, default_value_t = 8)]
        gmax: u64,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
    /// First-homology checks for an integer matrix
    MatrixCheck {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long)]
        lagrangian: Option<PathBuf>,
        /// Candidate budget for the invariant Lagrangian search
        #[arg(long, default_value_t = 10_000)]
        bound: usize,
    },
}

/// A failure reported as JSON on stderr with exit status 1.
#[derive(Debug)]
struct Failure {
    kind: String,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { kind: e.kind().to_string(), message: e.to_string() }
    }
}

impl Failure {
    fn new(kind: &str, message: impl Into<String>) -> Self {
        Failure { kind: kind.to_string(), message: message.into() }
    }
}

type Outcome = Result<String, Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::new("io", format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::new("parse", format!("{}: {e}", path.display())))
}

fn read_map(path: &Path) -> Result<MappingClassData, Failure> {
    Ok(mapping_class_from_json(&read_json(path)?)?)
}

fn read_lagrangian(path: &Path, genus: usize) -> Result<Lagrangian, Failure> {
    let l = lagrangian_from_json(&read_json(path)?)?;
    if l.genus() != genus {
        return Err(Error::DimensionMismatch { expected: genus, found: l.genus() }.into());
    }
    Ok(l)
}

/// The surface model whose relator is the map's boundary word.
fn model_for(f: &MappingClassData) -> Result<SurfaceModel, Failure> {
    Ok(SurfaceModel::with_relator(f.genus(), f.boundary().clone())?)
}

fn render(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize") + "\n"
}

fn depth_text(d: Depth) -> String {
    match d {
        Depth::Exact(k) => format!("= {k}"),
        Depth::AtLeast(_) => d.to_string(),
    }
}

fn run(cli: Cli) -> Outcome {
    let mut cfg = Config::load(cli.config.as_deref()).map_err(|m| Failure::new("config", m))?;
    if let Some(cap) = cli.cap {
        cfg.cap = cap;
    }
    cfg.verbosity = cfg.verbosity.max(cli.verbose);
    cfg.validate().map_err(|m| Failure::new("precondition-violation", m))?;
    if cfg.verbosity > 0 {
        eprintln!("config: cap {}, height {}", cfg.cap, cfg.height);
    }
    match cli.command {
        Command::Witt { k, g } => {
            if k == 0 {
                return Err(Error::InvalidArgument("weight must be positive".into()).into());
            }
            Ok(format!("{}\n", witt(k, g)))
        }
        Command::Hall { k, g, json } => {
            if k == 0 || g == 0 {
                return Err(Error::InvalidArgument("weight and genus must be positive".into()).into());
            }
            let alphabet = Alphabet::surface(g);
            let trees = hall_basis(k, &alphabet);
            if json {
                let v: Vec<Value> = trees.iter().map(|t| johnson_core::io::tree_to_json(t, &alphabet)).collect();
                Ok(render(&Value::Array(v)))
            } else {
                Ok(trees.iter().map(|t| t.format(&alphabet) + "\n").collect())
            }
        }
        Command::Rank { k, genus, ideal } => {
            if k == 0 || genus == 0 {
                return Err(Error::InvalidArgument("weight and genus must be positive".into()).into());
            }
            let model = SurfaceModel::new(genus);
            let (rank, torsion) = match ideal {
                IdealKind::Free => (johnson_core::hall::hall_basis_of_rank(k, 2 * genus).len(), Vec::new()),
                IdealKind::Symplectic => {
                    let span = model.symplectic_ideal().span(k);
                    (model.symplectic_ideal().quotient_rank(k), span.torsion().to_vec())
                }
                IdealKind::Handlebody => {
                    let span = model.handlebody_ideal().span(k);
                    (model.handlebody_ideal().quotient_rank(k), span.torsion().to_vec())
                }
            };
            if !torsion.is_empty() {
                return Err(Error::Torsion(torsion.iter().map(ToString::to_string).collect()).into());
            }
            Ok(format!("{rank}\n"))
        }
        Command::Tau { map, k, free } => {
            let f = read_map(&map)?;
            let alphabet = Alphabet::surface(f.genus());
            let t = if free {
                tau1(&f, k)?
            } else {
                let model = model_for(&f)?;
                surface_reduce(&model, &tau(&model, &f, k)?)
            };
            Ok(render(&tau_to_json(&t, &alphabet)))
        }
        Command::Depth { map } => {
            let f = read_map(&map)?;
            let model = model_for(&f)?;
            let j = johnson_depth(&f, cfg.cap);
            let jp = jprime_depth(&model, &f, cfg.cap)?;
            Ok(format!("johnson {}, jprime {}\n", depth_text(j), depth_text(jp)))
        }
        Command::Obstruct { map, k, lagrangian } => {
            let f = read_map(&map)?;
            let model = model_for(&f)?;
            let l = match lagrangian {
                Some(p) => read_lagrangian(&p, f.genus())?,
                None => Lagrangian::standard(f.genus()),
            };
            let t = tau(&model, &f, k)?;
            let d = grade_decompose(&model, &t, &l)?;
            let alphabet = Alphabet::surface(f.genus());
            let grade0 = d.grade(0);
            Ok(render(&json!({
                "lagrangian": lagrangian_to_json(&l),
                "k": k,
                "vanishes": grade0.is_zero(),
                "obstruction": tau_to_json(grade0, &alphabet),
            })))
        }
        Command::Scan { map, k, height, lagrangian } => {
            let f = read_map(&map)?;
            let model = model_for(&f)?;
            let extra = lagrangian.iter().map(|p| read_lagrangian(p, f.genus())).collect::<Result<Vec<_>, _>>()?;
            let source = LagrangianSource { coordinate: true, height: height.unwrap_or(cfg.height), extra };
            let report = robustness_scan(&model, &f, k, &source)?;
            Ok(render(&json!({
                "k": k,
                "scanned": report.scanned,
                "robust_on_family": report.vanishing.is_empty(),
                "vanishing": report.vanishing.iter().map(lagrangian_to_json).collect::<Vec<_>>(),
            })))
        }
        Command::Region { kmax, gmax, format } => {
            if kmax < 2 || gmax < 2 {
                return Err(Error::InvalidArgument("kmax and gmax must be at least 2".into()).into());
            }
            let format = match format {
                Some(f) => f,
                None => match cfg.format.as_deref() {
                    None | Some("table") => Format::Table,
                    Some("json") => Format::Json,
                    Some("csv") => Format::Csv,
                    Some(other) => return Err(Failure::new("config", format!("unknown format `{other}`"))),
                },
            };
            let cells = region_table(kmax, gmax);
            Ok(match format {
                Format::Table => render_table(&cells),
                Format::Csv => render_csv(&cells),
                Format::Json => render(&render_json(&cells)),
            })
        }
        Command::MatrixCheck { matrix, lagrangian, bound } => {
            let m = matrix_from_json(&read_json(&matrix)?)?;
            if !m.is_square() || m.rows() % 2 != 0 || m.rows() == 0 {
                return Err(Error::DimensionMismatch { expected: m.cols(), found: m.rows() }.into());
            }
            let genus = m.rows() / 2;
            let mut out = json!({
                "genus": genus,
                "symplectic": is_symplectic(&m),
                "eigen_pm1_condition": eigen_pm1_condition(&m),
            });
            if let Some(p) = lagrangian {
                let l = read_lagrangian(&p, genus)?;
                out["invariant"] = json!(is_invariant(&m, &l)?);
            }
            let search = invariant_lagrangian_search(&m, bound)?;
            out["search"] = json!({
                "lagrangian": search.lagrangian.as_ref().map(lagrangian_to_json),
                "candidates_examined": search.candidates_examined,
                "real_planes": serde_json::to_value(&search.real_planes).expect("plane checks serialize"),
            });
            Ok(render(&out))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(text) => {
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("{}", json!({"error": f.kind, "message": f.message}));
            ExitCode::from(1)
        }
    }
}
