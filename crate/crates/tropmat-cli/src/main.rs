//! Command line front end: check type collections, realise weight matrices,
//! transform subdivisions, query convexity machinery, run the census, and
//! render arrangements.
//!
//! Exit codes: 0 success / all checks pass, 1 a check failed (a report is
//! printed), 2 input error.

mod render;

use std::collections::BTreeSet;
use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tropmat::blowup::{blow_up, blow_up_nonfine};
use tropmat::census::census;
use tropmat::convexity::{convex_hull, eliminate_via_connectivity};
use tropmat::halfspace::{halfspace_covectors, m_of, HalfspaceSystem, PartitionTuple};
use tropmat::json::{
    AxiomReportWire, SubdivisionFile, SubdivisionReportWire, TomFile, WeightsFile,
};
use tropmat::ops::dual_subdivision;
use tropmat::placing::{d_placing, n_placing};
use tropmat::realize::{realize_tom, regular_mixed_subdivision};
use tropmat::subdivision::{to_tom, verify_subdivision, MixedSubdivision};
use tropmat::subset::Subset;
use tropmat::tom::Tom;
use tropmat::types::NdType;

#[derive(Parser)]
#[command(name = "tropmat", version, about = "tropical oriented matroid toolkit")]
struct Cli {
    /// Output format for reports and results
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check the four axioms of a type collection, or verify a subdivision
    Check {
        #[command(flatten)]
        input: TomOrSubdivision,
    },
    /// Compute the full type collection of a weight matrix
    Realize {
        #[arg(long)]
        weights: PathBuf,
        /// Write the resulting collection as JSON
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the regular mixed subdivision of a weight matrix
    Subdivide {
        #[arg(long)]
        weights: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dualize a type collection or subdivision
    Dual {
        #[command(flatten)]
        input: TomOrSubdivision,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Delete one position from a type collection
    Delete {
        #[arg(long)]
        tom: PathBuf,
        /// Position to delete, 1-based
        #[arg(long)]
        position: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Contract one coordinate of a type collection
    Contract {
        #[arg(long)]
        tom: PathBuf,
        /// Coordinate to contract, 1-based
        #[arg(long)]
        coord: u8,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend a subdivision by placing a new simplex factor
    PlaceN {
        #[arg(long)]
        subdivision: PathBuf,
        /// Permutation of the coordinates, e.g. 1,3,2
        #[arg(long, value_delimiter = ',')]
        perm: Vec<u8>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend a subdivision by placing a new coordinate
    PlaceD {
        #[arg(long)]
        subdivision: PathBuf,
        /// Permutation of the positions, 1-based, e.g. 2,1
        #[arg(long, value_delimiter = ',')]
        perm: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Blow up one position of a subdivision
    Blowup {
        #[arg(long)]
        subdivision: PathBuf,
        /// Position to blow up, 1-based
        #[arg(long)]
        position: usize,
        /// Fine blow-up with an explicit subdivision file
        #[arg(long, conflicts_with = "perm")]
        with: Option<PathBuf>,
        /// Blow-up along a coordinate permutation (works for coarse input)
        #[arg(long, value_delimiter = ',')]
        perm: Option<Vec<u8>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Combinatorial convex hull of two types in a collection
    Hull {
        #[arg(long)]
        tom: PathBuf,
        /// First type as JSON, e.g. [[2],[2],[3]]
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Eliminate two cells of a subdivision at a position
    Eliminate {
        #[arg(long)]
        subdivision: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        /// Position, 1-based
        #[arg(long)]
        position: usize,
    },
    /// The subcomplex M(I,J) of a type collection
    Mij {
        #[arg(long)]
        tom: PathBuf,
        /// Confinement sets as JSON, e.g. [[1,2,3,4]]
        #[arg(long)]
        i: String,
        /// Partitions as JSON, e.g. [[[1,4],[2,3]]]
        #[arg(long)]
        j: String,
    },
    /// Halfspace covectors over chosen positions
    Covectors {
        #[arg(long)]
        tom: PathBuf,
        /// Positions, 1-based, e.g. 1,2
        #[arg(long, value_delimiter = ',')]
        positions: Vec<usize>,
        /// Halfspaces as JSON, one proper subset per position
        #[arg(long)]
        i: String,
    },
    /// Enumerate and certify all mixed subdivisions of nΔ^{d-1}
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: u8,
    },
    /// Render a subdivision as SVG, or a type graph as DOT
    Render {
        #[arg(long, required_unless_present = "type")]
        subdivision: Option<PathBuf>,
        /// Label regions by their types
        #[arg(long)]
        labels: bool,
        /// A single type as JSON (with --dot)
        #[arg(long = "type")]
        r#type: Option<String>,
        /// Coordinate count for --type
        #[arg(long)]
        d: Option<u8>,
        /// Emit a DOT type graph instead of SVG
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct TomOrSubdivision {
    #[arg(long)]
    tom: Option<PathBuf>,
    #[arg(long)]
    subdivision: Option<PathBuf>,
}

/// Failure modes mapped to exit codes.
enum Failure {
    /// Exit 2: unusable input.
    Input(String),
    /// Exit 1: input was readable but a check failed.
    Check(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Input(m) | Failure::Check(m) => f.write_str(m),
        }
    }
}

fn input_err<E: fmt::Display>(context: &str) -> impl FnOnce(E) -> Failure + '_ {
    move |e| Failure::Input(format!("{context}: {e}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            println!("{msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn max_d() -> u8 {
    std::env::var("TROPMAT_MAX_D")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(6)
}

fn guard_enumeration(d: u8, what: &str) -> Result<(), Failure> {
    let cap = max_d();
    if d > cap {
        return Err(Failure::Input(format!(
            "{what} = {d} exceeds TROPMAT_MAX_D = {cap}; raise the variable for larger \
             exhaustive enumerations"
        )));
    }
    Ok(())
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let data = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&data)
        .map_err(|e| Failure::Input(format!("cannot parse {}: {e}", path.display())))
}

fn load_tom(path: &Path) -> Result<Tom, Failure> {
    let file: TomFile = read_json(path)?;
    let tom = file.to_tom().map_err(input_err("field 'types'"))?;
    guard_enumeration(tom.d(), "d")?;
    Ok(tom)
}

fn load_subdivision(path: &Path) -> Result<MixedSubdivision, Failure> {
    let file: SubdivisionFile = read_json(path)?;
    let s = file
        .to_subdivision()
        .map_err(input_err("field 'maximal_cells'"))?;
    guard_enumeration(s.d(), "d")?;
    Ok(s)
}

fn parse_type(d: u8, text: &str, field: &str) -> Result<NdType, Failure> {
    let entries: Vec<Vec<u8>> = serde_json::from_str(text)
        .map_err(|e| Failure::Input(format!("field '{field}': {e}")))?;
    NdType::new(
        d,
        entries
            .iter()
            .map(|e| Subset::from_labels(e.iter().copied()))
            .collect(),
    )
    .map_err(input_err(&format!("field '{field}'")))
}

fn write_or_print(out: Option<&PathBuf>, json: String) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, json + "\n")
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn emit_subdivision(
    s: &MixedSubdivision,
    out: Option<&PathBuf>,
    format: Format,
) -> Result<(), Failure> {
    let file = SubdivisionFile::from_subdivision(s);
    match format {
        Format::Json => write_or_print(out, serde_json::to_string(&file).unwrap()),
        Format::Text => {
            if let Some(path) = out {
                write_or_print(Some(path), serde_json::to_string(&file).unwrap())?;
                println!("wrote subdivision with {} maximal cells", s.maximal_cells().len());
            } else {
                println!("subdivision of {}Δ^{} with maximal cells:", s.n(), s.d() - 1);
                for c in s.maximal_cells() {
                    println!("  {c}");
                }
            }
            Ok(())
        }
    }
}

fn emit_tom(m: &Tom, out: Option<&PathBuf>, format: Format) -> Result<(), Failure> {
    let file = TomFile::from_tom(m);
    match format {
        Format::Json => write_or_print(out, serde_json::to_string(&file).unwrap()),
        Format::Text => {
            if let Some(path) = out {
                write_or_print(Some(path), serde_json::to_string(&file).unwrap())?;
            }
            println!(
                "collection with parameters ({},{}): {} types, {} vertices, {} topes",
                m.n(),
                m.d(),
                m.len(),
                m.vertices().len(),
                m.topes().len()
            );
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let format = cli.format;
    match cli.command {
        Command::Check { input } => {
            if let Some(path) = input.tom {
                let m = load_tom(&path)?;
                let reports = m.check_all();
                let pass = reports.iter().all(|r| r.pass_flag());
                let wires: Vec<AxiomReportWire> =
                    reports.iter().map(AxiomReportWire::from_report).collect();
                let rendered = match format {
                    Format::Json => serde_json::to_string(&wires).unwrap(),
                    Format::Text => reports
                        .iter()
                        .map(|r| r.to_string())
                        .collect::<Vec<_>>()
                        .join("\n"),
                };
                if pass {
                    println!("{rendered}");
                    Ok(())
                } else {
                    Err(Failure::Check(rendered))
                }
            } else {
                let s = load_subdivision(input.subdivision.as_ref().unwrap())?;
                let report = verify_subdivision(&s);
                let rendered = match format {
                    Format::Json => {
                        serde_json::to_string(&SubdivisionReportWire::from_report(&report))
                            .unwrap()
                    }
                    Format::Text => {
                        if report.pass() {
                            "subdivision: pass".to_string()
                        } else {
                            report
                                .failures
                                .iter()
                                .map(|f| format!("subdivision: FAIL ({f})"))
                                .collect::<Vec<_>>()
                                .join("\n")
                        }
                    }
                };
                if report.pass() {
                    println!("{rendered}");
                    Ok(())
                } else {
                    Err(Failure::Check(rendered))
                }
            }
        }
        Command::Realize { weights, out } => {
            let w: WeightsFile = read_json(&weights)?;
            let w = w.to_weights().map_err(input_err("field 'w'"))?;
            guard_enumeration(w.d(), "d")?;
            let tom = realize_tom(&w).map_err(input_err("realization"))?;
            emit_tom(&tom, out.as_ref(), format)
        }
        Command::Subdivide { weights, out } => {
            let w: WeightsFile = read_json(&weights)?;
            let w = w.to_weights().map_err(input_err("field 'w'"))?;
            guard_enumeration(w.d(), "d")?;
            let s = regular_mixed_subdivision(&w).map_err(input_err("realization"))?;
            emit_subdivision(&s, out.as_ref(), format)
        }
        Command::Dual { input, out } => {
            if let Some(path) = input.tom {
                let m = load_tom(&path)?;
                guard_enumeration(m.n() as u8, "n (dual enumerates partitions of [n])")?;
                let dual = m.dual().map_err(input_err("dual"))?;
                emit_tom(&dual, out.as_ref(), format)
            } else {
                let s = load_subdivision(input.subdivision.as_ref().unwrap())?;
                guard_enumeration(s.n() as u8, "n (dual enumerates partitions of [n])")?;
                let dual = dual_subdivision(&s).map_err(input_err("dual"))?;
                emit_subdivision(&dual, out.as_ref(), format)
            }
        }
        Command::Delete { tom, position, out } => {
            let m = load_tom(&tom)?;
            let i = position
                .checked_sub(1)
                .ok_or_else(|| Failure::Input("field 'position': positions are 1-based".into()))?;
            let del = m.deletion(i).map_err(input_err("field 'position'"))?;
            emit_tom(&del, out.as_ref(), format)
        }
        Command::Contract { tom, coord, out } => {
            let m = load_tom(&tom)?;
            let con = m.contraction(coord).map_err(input_err("field 'coord'"))?;
            emit_tom(&con, out.as_ref(), format)
        }
        Command::PlaceN {
            subdivision,
            perm,
            out,
        } => {
            let s = load_subdivision(&subdivision)?;
            let ext = n_placing(&s, &perm).map_err(input_err("field 'perm'"))?;
            emit_subdivision(&ext, out.as_ref(), format)
        }
        Command::PlaceD {
            subdivision,
            perm,
            out,
        } => {
            let s = load_subdivision(&subdivision)?;
            let tau: Vec<usize> = perm
                .iter()
                .map(|&p| {
                    p.checked_sub(1)
                        .ok_or_else(|| Failure::Input("field 'perm': positions are 1-based".into()))
                })
                .collect::<Result<_, _>>()?;
            let ext = d_placing(&s, &tau).map_err(input_err("field 'perm'"))?;
            emit_subdivision(&ext, out.as_ref(), format)
        }
        Command::Blowup {
            subdivision,
            position,
            with,
            perm,
            out,
        } => {
            let s = load_subdivision(&subdivision)?;
            let i = position
                .checked_sub(1)
                .ok_or_else(|| Failure::Input("field 'position': positions are 1-based".into()))?;
            let result = if let Some(path) = with {
                let s2 = load_subdivision(&path)?;
                blow_up(&s, i, &s2).map_err(input_err("blow-up"))?
            } else if let Some(pi) = perm {
                blow_up_nonfine(&s, i, &pi).map_err(input_err("blow-up"))?
            } else {
                return Err(Failure::Input(
                    "blowup needs either --with <subdivision> or --perm <permutation>".into(),
                ));
            };
            emit_subdivision(&result, out.as_ref(), format)
        }
        Command::Hull { tom, a, b } => {
            let m = load_tom(&tom)?;
            let a = parse_type(m.d(), &a, "a")?;
            let b = parse_type(m.d(), &b, "b")?;
            let hull = convex_hull(m.types(), &a, &b).map_err(input_err("hull"))?;
            print_cells(&hull, format);
            Ok(())
        }
        Command::Eliminate {
            subdivision,
            a,
            b,
            position,
        } => {
            let s = load_subdivision(&subdivision)?;
            let a = parse_type(s.d(), &a, "a")?;
            let b = parse_type(s.d(), &b, "b")?;
            let j = position
                .checked_sub(1)
                .ok_or_else(|| Failure::Input("field 'position': positions are 1-based".into()))?;
            match eliminate_via_connectivity(&s, &a, &b, j) {
                Ok(c) => {
                    match format {
                        Format::Json => println!(
                            "{}",
                            serde_json::to_string(
                                &c.entries().iter().map(|e| e.to_labels()).collect::<Vec<_>>()
                            )
                            .unwrap()
                        ),
                        Format::Text => println!("{c}"),
                    }
                    Ok(())
                }
                Err(tropmat::Error::TheoremViolation(a, b)) => Err(Failure::Check(format!(
                    "theorem violation: hull of {a} and {b} is disconnected"
                ))),
                Err(e) => Err(Failure::Input(e.to_string())),
            }
        }
        Command::Mij { tom, i, j } => {
            let m = load_tom(&tom)?;
            let i_sets: Vec<Vec<u8>> = serde_json::from_str(&i)
                .map_err(|e| Failure::Input(format!("field 'i': {e}")))?;
            let i_sets: Vec<Subset> = i_sets
                .iter()
                .map(|labels| Subset::from_labels(labels.iter().copied()))
                .collect();
            if i_sets.len() != m.n() {
                return Err(Failure::Input(format!(
                    "field 'i': expected {} sets, got {}",
                    m.n(),
                    i_sets.len()
                )));
            }
            let blocks: Vec<Vec<Vec<u8>>> = serde_json::from_str(&j)
                .map_err(|e| Failure::Input(format!("field 'j': {e}")))?;
            let j = PartitionTuple::new(
                m.d(),
                blocks
                    .iter()
                    .map(|p| {
                        p.iter()
                            .map(|b| Subset::from_labels(b.iter().copied()))
                            .collect()
                    })
                    .collect(),
            )
            .map_err(input_err("field 'j'"))?;
            let complex = m_of(m.types(), &i_sets, &j);
            print_cells(&complex, format);
            Ok(())
        }
        Command::Covectors { tom, positions, i } => {
            let m = load_tom(&tom)?;
            let positions: Vec<usize> = positions
                .iter()
                .map(|&p| {
                    p.checked_sub(1).ok_or_else(|| {
                        Failure::Input("field 'positions': positions are 1-based".into())
                    })
                })
                .collect::<Result<_, _>>()?;
            let sets: Vec<Vec<u8>> = serde_json::from_str(&i)
                .map_err(|e| Failure::Input(format!("field 'i': {e}")))?;
            let system = HalfspaceSystem::new(
                m.d(),
                sets.iter()
                    .map(|labels| Subset::from_labels(labels.iter().copied()))
                    .collect(),
            )
            .map_err(input_err("field 'i'"))?;
            if system.sets().len() != m.n() {
                return Err(Failure::Input(format!(
                    "field 'i': expected {} halfspaces, got {}",
                    m.n(),
                    system.sets().len()
                )));
            }
            for p in &positions {
                if *p >= m.n() {
                    return Err(Failure::Input(format!(
                        "field 'positions': position {} out of range",
                        p + 1
                    )));
                }
            }
            let covectors = halfspace_covectors(m.types(), &positions, &system);
            match format {
                Format::Json => {
                    let wires: Vec<String> = covectors
                        .iter()
                        .map(|v| v.iter().map(|s| s.to_string()).collect())
                        .collect();
                    println!("{}", serde_json::to_string(&wires).unwrap());
                }
                Format::Text => {
                    for v in &covectors {
                        println!(
                            "{}",
                            v.iter().map(|s| s.to_string()).collect::<String>()
                        );
                    }
                }
            }
            Ok(())
        }
        Command::Census { n, d } => {
            guard_enumeration(d, "d")?;
            let subdivisions = census(n, d).map_err(input_err("census"))?;
            let mut all_certified = true;
            for s in &subdivisions {
                let verified = verify_subdivision(s).pass();
                let tom_ok = to_tom(s).map(|t| t.is_tom()).unwrap_or(false);
                all_certified &= verified && tom_ok;
                match format {
                    Format::Json => {
                        let file = SubdivisionFile::from_subdivision(s);
                        println!(
                            "{}",
                            serde_json::json!({
                                "subdivision": file,
                                "verified": verified,
                                "tom": tom_ok,
                            })
                        );
                    }
                    Format::Text => {
                        println!(
                            "{s}  verified={verified} tom={tom_ok} fine={}",
                            s.is_fine()
                        );
                    }
                }
            }
            println!("census({n},{d}): {} subdivisions", subdivisions.len());
            if all_certified {
                Ok(())
            } else {
                Err(Failure::Check("census certification failed".into()))
            }
        }
        Command::Render {
            subdivision,
            labels,
            r#type,
            d,
            dot,
            out,
        } => {
            if dot {
                let text = r#type.ok_or_else(|| {
                    Failure::Input("--dot needs --type and --d".into())
                })?;
                let d = d.ok_or_else(|| Failure::Input("--dot needs --d".into()))?;
                let t = parse_type(d, &text, "type")?;
                return write_or_print(out.as_ref(), render::type_graph_dot(&t));
            }
            let s = load_subdivision(subdivision.as_ref().unwrap())?;
            let svg = render::subdivision_svg(&s, labels).map_err(input_err("render"))?;
            write_or_print(out.as_ref(), svg)
        }
    }
}

fn print_cells(cells: &BTreeSet<NdType>, format: Format) {
    match format {
        Format::Json => {
            let wires: Vec<Vec<Vec<u8>>> = cells
                .iter()
                .map(|c| c.entries().iter().map(|e| e.to_labels()).collect())
                .collect();
            println!("{}", serde_json::to_string(&wires).unwrap());
        }
        Format::Text => {
            for c in cells {
                println!("{c}");
            }
        }
    }
}
