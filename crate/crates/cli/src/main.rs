mod io;
mod render;

use clap::{Parser, Subcommand};
use serde_json::json;

use cak_core::comb::{
    abstract_swap_pair, canonical_form_of, enumerate_canonical, equivalent, layers,
    standard_configuration, SwapPair, Tableau,
};
use cak_core::exact::{Point2, Rational, Turn};
use cak_core::geometry::{points_arrangement, Arrangement};
use cak_core::ordertype::{
    allowable_sequence, chirotope_of, firstpath_representation, Chirotope, PathSystem,
};
use cak_core::realize::{realize_ngons, universal_dual, universal_primal, RealizeOptions};
use cak_core::{Error, Label};

use io::{print_json, read_json, PointsFile};
use render::{render_svg, RenderSpec};

/// Combinatorial types of arrangements of convex bodies: exact computation,
/// comparison, and realization. All commands read JSON from files or
/// standard input ("-") and write JSON to standard output.
///
/// Exit codes: 0 success, 1 negative result (inequivalent, non-orientable,
/// axiom violated), 2 invalid or degenerate input.
#[derive(Parser)]
#[command(name = "cak", version, about)]
struct Cli {
    /// Seed for any randomized generation (reserved; current commands are
    /// fully deterministic).
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Combinatorial type of an arrangement: swap pair, canonical tableau,
    /// layers, depth, periodicity.
    Ct {
        /// Arrangement JSON file, or - for stdin.
        input: String,
    },
    /// Decide whether two swap pairs (or arrangements) have the same
    /// combinatorial type. Exit 1 when inequivalent.
    Eq { a: String, b: String },
    /// Realize a swap pair as an arrangement of N-gons.
    Realize {
        /// Swap pair JSON file, or - for stdin.
        input: String,
        /// Multiplier on the base radius bound (rational, e.g. "3/2").
        #[arg(long, default_value = "1")]
        radius_scale: String,
        /// Escalation attempts before giving up.
        #[arg(long, default_value_t = 3)]
        max_retries: usize,
        /// Also write an SVG rendering to this path.
        #[arg(long)]
        svg: Option<String>,
    },
    /// Orientation of all triples of a swap pair, as a chirotope. Exit 1
    /// when some triple is not orientable.
    Orient { input: String },
    /// Check Knuth's CC-system axioms on a chirotope. Exit 1 on violation.
    Cc { input: String },
    /// Layer partition and depth of a swap pair.
    Layers { input: String },
    /// Periodicity and period of a tableau (or of a swap pair's tableau).
    Period { input: String },
    /// Standard configuration of a combinatorial type at a base angle.
    Standard {
        /// Swap pair JSON file, or - for stdin.
        input: String,
        /// Base angle as a fraction of a turn in (0, 1].
        #[arg(long, default_value = "1")]
        theta: String,
    },
    /// Glue pseudoline representations into the dual universality type.
    UniversalDual {
        /// JSON file: {"systems": [path system, ...]}.
        input: String,
    },
    /// Build the primal universality arrangement from point sets.
    UniversalPrimal {
        /// JSON file: {"sets": [{"points": [...]}, ...]}.
        input: String,
    },
    /// Swap pair, canonical form, and chirotope of a point set.
    Points2ct { input: String },
    /// Wiring diagram (allowable sequence) of a point set; with
    /// --distinguished, the firstpath pseudoline representation.
    Wiring {
        input: String,
        #[arg(long)]
        distinguished: Option<String>,
    },
    /// Enumerate canonical combinatorial types on n curves with N swaps.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        crossings: usize,
        /// Keep only orientable types.
        #[arg(long)]
        orientable: bool,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Render an arrangement as SVG (primal bodies and dual support
    /// curves).
    Render {
        input: String,
        #[arg(long, default_value_t = 800)]
        width: u32,
        #[arg(long, default_value_t = 900)]
        height: u32,
        #[arg(long, default_value_t = 24)]
        margin: u32,
        #[arg(long, default_value_t = 0)]
        color_seed: u64,
        /// Suppress text labels.
        #[arg(long)]
        no_labels: bool,
    },
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::new().filter("CAK_LOG")).init();
    let cli = Cli::parse();
    let _ = cli.seed;
    std::process::exit(match run(cli.command) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("{}", json!({ "error": msg }));
            2
        }
    });
}

/// A swap pair given either directly or as an arrangement to sweep.
fn load_swap_pair(path: &str) -> Result<SwapPair, String> {
    let value: serde_json::Value = read_json(path)?;
    if value.get("rho").is_some() {
        return serde_json::from_value(value).map_err(|e| format!("parsing {path}: {e}"));
    }
    if value.get("bodies").is_some() {
        let arr: Arrangement =
            serde_json::from_value(value).map_err(|e| format!("parsing {path}: {e}"))?;
        return arr.swap_pair().map_err(|e| e.to_string());
    }
    Err(format!("{path}: expected a swap pair or an arrangement"))
}

fn core_err(e: Error) -> String {
    e.to_string()
}

fn run(cmd: Command) -> Result<i32, String> {
    match cmd {
        Command::Ct { input } => {
            let arr: Arrangement = read_json(&input)?;
            let sp = arr.swap_pair().map_err(core_err)?;
            let ct = canonical_form_of(&sp).map_err(core_err)?;
            print_json(&json!({
                "swap_pair": sp,
                "canonical": ct.canonical,
                "layers": ct.layers,
                "depth": ct.depth,
                "periodicity": ct.periodicity,
            }));
            Ok(0)
        }
        Command::Eq { a, b } => {
            let pa = load_swap_pair(&a)?;
            let pb = load_swap_pair(&b)?;
            let eq = equivalent(&pa, &pb).map_err(core_err)?;
            print_json(&json!({ "equivalent": eq }));
            Ok(if eq { 0 } else { 1 })
        }
        Command::Realize {
            input,
            radius_scale,
            max_retries,
            svg,
        } => {
            let sp: SwapPair = read_json(&input)?;
            let opts = RealizeOptions {
                radius_scale: radius_scale
                    .parse::<Rational>()
                    .map_err(|e| e.to_string())?,
                max_retries,
            };
            let r = realize_ngons(&sp, &opts).map_err(core_err)?;
            if let Some(path) = svg {
                let spec = RenderSpec::default();
                std::fs::write(&path, render_svg(&r.arrangement, &spec))
                    .map_err(|e| format!("writing {path}: {e}"))?;
            }
            print_json(&r.arrangement);
            log::info!("realized after {} retries", r.retries);
            Ok(0)
        }
        Command::Orient { input } => {
            let sp = load_swap_pair(&input)?;
            match chirotope_of(&sp) {
                Ok(chi) => {
                    print_json(&chi);
                    Ok(0)
                }
                Err(Error::NonOrientable(i, j, k)) => {
                    print_json(&json!({
                        "orientable": false,
                        "triple": [i, j, k],
                    }));
                    Ok(1)
                }
                Err(e) => Err(core_err(e)),
            }
        }
        Command::Cc { input } => {
            let chi: Chirotope<Label> = read_json(&input)?;
            match chi.cc_check() {
                None => {
                    print_json(&json!({ "cc": true }));
                    Ok(0)
                }
                Some(v) => {
                    print_json(&json!({ "cc": false, "axiom": v.axiom, "witness": v.witness }));
                    Ok(1)
                }
            }
        }
        Command::Layers { input } => {
            let sp = load_swap_pair(&input)?;
            let (parts, depth) = layers(&sp);
            print_json(&json!({ "layers": parts, "depth": depth }));
            Ok(0)
        }
        Command::Period { input } => {
            let value: serde_json::Value = read_json(&input)?;
            let tableau: Tableau = if value.get("order").is_some() {
                serde_json::from_value(value).map_err(|e| format!("parsing {input}: {e}"))?
            } else {
                let sp: SwapPair =
                    serde_json::from_value(value).map_err(|e| format!("parsing {input}: {e}"))?;
                Tableau::of(&sp)
            };
            let (p, period) = tableau.periodicity();
            print_json(&json!({ "periodicity": p, "period": period }));
            Ok(0)
        }
        Command::Standard { input, theta } => {
            let sp = load_swap_pair(&input)?;
            let ct = canonical_form_of(&sp).map_err(core_err)?;
            let theta = Turn::new(theta.parse::<Rational>().map_err(|e| e.to_string())?)
                .map_err(core_err)?;
            let cfg = standard_configuration(&ct, &theta).map_err(core_err)?;
            // Round-trip is validated inside; expose the swept pair too.
            let swept = abstract_swap_pair(&cfg).map_err(core_err)?;
            print_json(&json!({ "configuration": cfg, "swap_pair": swept }));
            Ok(0)
        }
        Command::UniversalDual { input } => {
            #[derive(serde::Deserialize)]
            struct Input {
                systems: Vec<PathSystem>,
            }
            let parsed: Input = read_json(&input)?;
            let sp = universal_dual(&parsed.systems).map_err(core_err)?;
            print_json(&sp);
            Ok(0)
        }
        Command::UniversalPrimal { input } => {
            #[derive(serde::Deserialize)]
            struct Input {
                sets: Vec<PointsFile>,
            }
            let parsed: Input = read_json(&input)?;
            let sets: Vec<Vec<(Label, Point2)>> = parsed
                .sets
                .into_iter()
                .map(PointsFile::into_pairs)
                .collect();
            let arr = universal_primal(&sets).map_err(core_err)?;
            print_json(&arr);
            Ok(0)
        }
        Command::Points2ct { input } => {
            let pts: PointsFile = read_json(&input)?;
            let pairs = pts.into_pairs();
            let arr = points_arrangement(&pairs).map_err(core_err)?;
            let sp = arr.swap_pair().map_err(core_err)?;
            let ct = canonical_form_of(&sp).map_err(core_err)?;
            let chi = Chirotope::of_points(&pairs).map_err(core_err)?;
            print_json(&json!({
                "swap_pair": sp,
                "canonical": ct.canonical,
                "chirotope": chi,
            }));
            Ok(0)
        }
        Command::Wiring {
            input,
            distinguished,
        } => {
            let pts: PointsFile = read_json(&input)?;
            let pairs = pts.into_pairs();
            let system = match distinguished {
                Some(d) => firstpath_representation(&pairs, &Label::new(d)).map_err(core_err)?,
                None => allowable_sequence(&pairs).map_err(core_err)?,
            };
            print_json(&system);
            Ok(0)
        }
        Command::Enumerate {
            n,
            crossings,
            orientable,
            jobs,
        } => {
            let types = enumerate_canonical(n, crossings, orientable, jobs).map_err(core_err)?;
            let canonical: Vec<&Tableau> = types.iter().map(|t| &t.canonical).collect();
            print_json(&json!({ "count": types.len(), "types": canonical }));
            Ok(0)
        }
        Command::Render {
            input,
            width,
            height,
            margin,
            color_seed,
            no_labels,
        } => {
            let arr: Arrangement = read_json(&input)?;
            let spec = RenderSpec {
                width,
                height,
                margin,
                color_seed,
                show_labels: !no_labels,
            };
            print!("{}", render_svg(&arr, &spec));
            Ok(0)
        }
    }
}
