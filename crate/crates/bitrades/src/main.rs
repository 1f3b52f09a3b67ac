//! Command-line front end.
//!
//! Machine-readable results go to stdout as JSON (or as the documented
//! text formats), human diagnostics to stderr, SVG only to files. Exit
//! codes: 0 success, 1 validation or data failure, 2 usage error, 3
//! internal invariant breach.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use bitrades::bitrade::{validate_bitrade, Bitrade, Entry};
use bitrades::exact::Rat;
use bitrades::formats::{self, Format, RawBitrade};
use bitrades::generate::{self, corpus_record, CorpusManifest, GenerateError, LatticeSpec};
use bitrades::partition::{
    brute_force_partitions, three_transversal_partition, three_transversal_partition_unchecked,
    OracleError, PartitionFailure, TransversalPartition, DEFAULT_ORACLE_CAP,
};
use bitrades::permrep::{bitrade_from_tau, tau_representation, TauRep};
use bitrades::surface::{genus, genus_per_orbit, SurfaceError};
use bitrades::tessellate::{lift_to_plane, render_svg, RenderOptions, TessellateError};

#[derive(Parser)]
#[command(
    name = "bitrades",
    version,
    about = "Latin bitrade toolkit",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Input file, or `-` for stdin.
    input: String,
    /// Input format: triples, grid, or json.
    #[arg(long, default_value = "triples")]
    format: String,
}

#[derive(Subcommand)]
enum Command {
    /// Check the latin and bitrade rules and report every violation.
    Validate(InputArgs),
    /// Print the row/column/symbol permutations in cycle notation.
    Tau(InputArgs),
    /// Rebuild a bitrade from three lines of cycle notation.
    FromTau {
        /// Input file with three permutations, or `-` for stdin.
        input: String,
        /// Output format: triples, grid, or json.
        #[arg(long, default_value = "triples")]
        format: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Cycle counts, Euler characteristic, and genus of the embedding.
    Genus(InputArgs),
    /// Partition a 3-homogeneous bitrade into three transversals.
    Partition {
        #[command(flatten)]
        input: InputArgs,
        /// Skip validation and resolve steps by first match; contradictions
        /// are then reported as internal invariant breaches (exit 3).
        #[arg(long)]
        unchecked: bool,
    },
    /// Exhaustively list all partitions into three transversals.
    Oracle {
        #[command(flatten)]
        input: InputArgs,
        /// Largest first-half size the search will accept.
        #[arg(long, default_value_t = DEFAULT_ORACLE_CAP)]
        cap: usize,
    },
    /// Draw the plane tessellation of a 3-homogeneous bitrade as SVG.
    Tessellate {
        #[command(flatten)]
        input: InputArgs,
        /// Base entry `row:col:sym`, placed above the origin.
        #[arg(long)]
        base: String,
        /// Clipping radius around the origin (taken to the nearest 1e-6).
        #[arg(long, default_value_t = 6.0)]
        radius: f64,
        /// Draw entry labels at triangle centroids.
        #[arg(long, default_value_t = true, action = clap::ArgAction::Set)]
        labels: bool,
        /// Draw the coordinate axes.
        #[arg(long, default_value_t = false, action = clap::ArgAction::Set)]
        axes: bool,
        /// Fill color for shaded triangles.
        #[arg(long, default_value = "#c9c9c9")]
        shade_color: String,
        /// Fundamental-domain parallelogram `a,b,c,d`: the two vectors
        /// (a,b) and (c,d) in the black-lattice basis.
        #[arg(long)]
        domain: Option<String>,
        /// SVG output file (SVG is never written to stdout).
        #[arg(long)]
        output: PathBuf,
    },
    /// Emit one bitrade from a built-in family.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Write every difference bitrade of the given order to a directory.
    Enumerate {
        /// Latin square order, at most 4.
        #[arg(long)]
        order: usize,
        /// Directory for the corpus files and `manifest.json`.
        #[arg(long)]
        output: PathBuf,
        /// Corpus file format: triples, grid, or json.
        #[arg(long, default_value = "triples")]
        format: String,
    },
}

#[derive(Args)]
struct EmitArgs {
    /// Output format: triples, grid, or json.
    #[arg(long, default_value = "triples")]
    format: String,
    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Family {
    /// The four-entry 2x2 swap.
    Intercalate(EmitArgs),
    /// The twelve-entry 3-homogeneous bitrade on four rows.
    Example2(EmitArgs),
    /// Difference of the mod-n addition table and its symbol shift.
    Cyclic {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        emit: EmitArgs,
    },
    /// Quotient of the plane tessellation by a black-lattice sublattice.
    Lattice {
        /// First basis vector `a,b` in the black-lattice basis.
        #[arg(long)]
        v1: String,
        /// Second basis vector `c,d` in the black-lattice basis.
        #[arg(long)]
        v2: String,
        #[command(flatten)]
        emit: EmitArgs,
    },
}

/// Failure with an exit code under the documented contract.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn data(message: impl Into<String>) -> Failure {
        Failure {
            code: 1,
            message: message.into(),
        }
    }

    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Failure {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli.command) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    };
    std::process::exit(code);
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buffer = String::new();
        std::io::stdin()
            .read_to_string(&mut buffer)
            .map_err(|e| Failure::data(format!("reading stdin: {e}")))?;
        Ok(buffer)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::data(format!("reading {path}: {e}")))
    }
}

fn parse_format(name: &str) -> Result<Format, Failure> {
    Format::parse_name(name)
        .ok_or_else(|| Failure::usage(format!("unknown format `{name}` (triples, grid, json)")))
}

fn load_raw(args: &InputArgs) -> Result<RawBitrade, Failure> {
    let format = parse_format(&args.format)?;
    let text = read_input(&args.input)?;
    formats::parse(&text, format).map_err(|e| Failure::data(e.to_string()))
}

/// Validates a raw pair; on failure prints the report to stdout and fails
/// with exit code 1.
fn load_valid(args: &InputArgs) -> Result<Bitrade, Failure> {
    let raw = load_raw(args)?;
    match Bitrade::from_raw(raw.t_dia, raw.t_oti) {
        Ok(b) => Ok(b),
        Err(report) => {
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Err(Failure::data(format!(
                "input is not a valid bitrade ({} violations)",
                report.violations.len()
            )))
        }
    }
}

fn emit(text: &str, output: Option<&Path>) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::data(format!("writing {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn tau_for(b: &Bitrade) -> Result<TauRep, Failure> {
    tau_representation(b).map_err(|e| Failure::data(e.to_string()))
}

fn run(command: Command) -> Result<i32, Failure> {
    match command {
        Command::Validate(args) => {
            let raw = load_raw(&args)?;
            let report = validate_bitrade(&raw.t_dia, &raw.t_oti);
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            if report.ok {
                eprintln!("ok");
                Ok(0)
            } else {
                eprintln!("{} violation(s)", report.violations.len());
                Ok(1)
            }
        }
        Command::Tau(args) => {
            let b = load_valid(&args)?;
            let rep = tau_for(&b)?;
            print!("{}", rep.render_cycles());
            Ok(0)
        }
        Command::FromTau {
            input,
            format,
            output,
        } => {
            let format = parse_format(&format)?;
            let text = read_input(&input)?;
            let rep = TauRep::parse_cycles(&text).map_err(|e| Failure::data(e.to_string()))?;
            let b = bitrade_from_tau(&rep).map_err(|e| Failure::data(e.to_string()))?;
            emit(
                &formats::serialize(&RawBitrade::from(&b), format),
                output.as_deref(),
            )?;
            Ok(0)
        }
        Command::Genus(args) => {
            let b = load_valid(&args)?;
            let rep = tau_for(&b)?;
            match genus(&rep) {
                Ok(report) => {
                    println!("{}", serde_json::to_string_pretty(&report).unwrap());
                    Ok(0)
                }
                Err(SurfaceError::Disconnected(_)) => {
                    let reports =
                        genus_per_orbit(&rep).map_err(|e| Failure::internal(e.to_string()))?;
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({ "per_orbit": reports })).unwrap()
                    );
                    Ok(0)
                }
                Err(e @ SurfaceError::EulerBreach(_)) => Err(Failure::internal(e.to_string())),
                Err(e) => Err(Failure::data(e.to_string())),
            }
        }
        Command::Partition { input, unchecked } => {
            let outcome = if unchecked {
                let raw = load_raw(&input)?;
                three_transversal_partition_unchecked(&raw.t_dia, &raw.t_oti)
            } else {
                let b = load_valid(&input)?;
                three_transversal_partition(&b)
            };
            report_partition(outcome)
        }
        Command::Oracle { input, cap } => {
            let b = load_valid(&input)?;
            match brute_force_partitions(&b, cap) {
                Ok(partitions) => {
                    let body = json!({
                        "count": partitions.len(),
                        "partitions": partitions.iter().map(TransversalPartition::to_json).collect::<Vec<_>>(),
                    });
                    println!("{}", serde_json::to_string_pretty(&body).unwrap());
                    Ok(0)
                }
                Err(e @ OracleError::CapExceeded { .. }) => Err(Failure::data(e.to_string())),
            }
        }
        Command::Tessellate {
            input,
            base,
            radius,
            labels,
            axes,
            shade_color,
            domain,
            output,
        } => {
            let b = load_valid(&input)?;
            let base = Entry::parse_dart(&base).map_err(|e| Failure::usage(e.to_string()))?;
            if !radius.is_finite() || radius < 0.0 {
                return Err(Failure::usage("radius must be a nonnegative number"));
            }
            let radius = Rat::new((radius * 1e6).round() as i64, 1_000_000);
            let domain = match domain {
                None => None,
                Some(text) => Some(parse_domain(&text)?),
            };
            let drawing = lift_to_plane(&b, &base, radius).map_err(|e| match e {
                TessellateError::LabelConflict { .. } => Failure::internal(e.to_string()),
                other => Failure::data(other.to_string()),
            })?;
            let options = RenderOptions {
                show_labels: labels,
                show_axes: axes,
                shade_color,
                domain,
                ..RenderOptions::default()
            };
            let svg = render_svg(&drawing, &options);
            fs::write(&output, svg)
                .map_err(|e| Failure::data(format!("writing {}: {e}", output.display())))?;
            eprintln!(
                "wrote {} ({} triangles)",
                output.display(),
                drawing.triangles.len()
            );
            Ok(0)
        }
        Command::Generate { family } => {
            let (result, emit_args) = match family {
                Family::Intercalate(emit) => (Ok(generate::intercalate()), emit),
                Family::Example2(emit) => (Ok(generate::example2()), emit),
                Family::Cyclic { n, emit } => (generate::cyclic_shift_bitrade(n), emit),
                Family::Lattice { v1, v2, emit } => {
                    let spec = LatticeSpec::new(parse_vector(&v1)?, parse_vector(&v2)?);
                    (generate::lattice_quotient_bitrade(&spec), emit)
                }
            };
            let b = result.map_err(|e| match e {
                GenerateError::OrderTooSmall(_) | GenerateError::DegenerateSpec => {
                    Failure::usage(e.to_string())
                }
                GenerateError::QuotientRejected(ref report) => {
                    println!("{}", serde_json::to_string_pretty(report).unwrap());
                    Failure::data(e.to_string())
                }
                other => Failure::usage(other.to_string()),
            })?;
            let format = parse_format(&emit_args.format)?;
            emit(
                &formats::serialize(&RawBitrade::from(&b), format),
                emit_args.output.as_deref(),
            )?;
            Ok(0)
        }
        Command::Enumerate {
            order,
            output,
            format,
        } => {
            let format_name = format;
            let format = parse_format(&format_name)?;
            fs::create_dir_all(&output)
                .map_err(|e| Failure::data(format!("creating {}: {e}", output.display())))?;
            let extension = match format {
                Format::Json => "json",
                _ => "txt",
            };
            let mut records = Vec::new();
            let mut write_error: Option<Failure> = None;
            let mut index = 0usize;
            generate::enumerate_small_for_each(order, |b| {
                if write_error.is_some() {
                    return;
                }
                let file = format!("bitrade_{index:06}.{extension}");
                index += 1;
                let text = formats::serialize(&RawBitrade::from(b), format);
                if let Err(e) = fs::write(output.join(&file), text) {
                    write_error = Some(Failure::data(format!("writing {file}: {e}")));
                    return;
                }
                records.push(corpus_record(b, file));
            })
            .map_err(|e| Failure::usage(e.to_string()))?;
            if let Some(failure) = write_error {
                return Err(failure);
            }
            let manifest = CorpusManifest {
                order,
                count: records.len(),
                bitrades: records,
            };
            let manifest_text = format!("{}\n", serde_json::to_string_pretty(&manifest).unwrap());
            fs::write(output.join("manifest.json"), &manifest_text)
                .map_err(|e| Failure::data(format!("writing manifest.json: {e}")))?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "order": order,
                    "count": manifest.count,
                    "directory": output.display().to_string(),
                }))
                .unwrap()
            );
            Ok(0)
        }
    }
}

fn report_partition(
    outcome: Result<TransversalPartition, PartitionFailure>,
) -> Result<i32, Failure> {
    match outcome {
        Ok(partition) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&partition.to_json()).unwrap()
            );
            Ok(0)
        }
        Err(failure @ PartitionFailure::Not3Homogeneous { .. }) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&failure.to_json()).unwrap()
            );
            eprintln!("{failure}");
            Ok(1)
        }
        Err(failure) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&failure.to_json()).unwrap()
            );
            Err(Failure::internal(failure.to_string()))
        }
    }
}

fn parse_vector(text: &str) -> Result<(i64, i64), Failure> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err(Failure::usage(format!("expected `a,b`, got `{text}`")));
    }
    let a = parts[0]
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("bad integer in `{text}`")))?;
    let b = parts[1]
        .trim()
        .parse()
        .map_err(|_| Failure::usage(format!("bad integer in `{text}`")))?;
    Ok((a, b))
}

fn parse_domain(text: &str) -> Result<[(i64, i64); 2], Failure> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(Failure::usage(format!("expected `a,b,c,d`, got `{text}`")));
    }
    let mut values = [0i64; 4];
    for (slot, part) in values.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse()
            .map_err(|_| Failure::usage(format!("bad integer in `{text}`")))?;
    }
    Ok([(values[0], values[1]), (values[2], values[3])])
}
