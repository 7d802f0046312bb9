//! `nesto`: building sets, (extended) nested complexes, face numbers, the
//! partial weak Bruhat order, and the batch verification harness.
//!
//! Exit codes: 0 on success, 1 on a failed check (with a JSON failure
//! report on stdout), 2 on usage errors.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nestohedra::building::{from_graph, BuildingSet, DirectedGraph};
use nestohedra::complex::{extended_nested_complex, nested_complex, SimplicialComplex};
use nestohedra::counting::{
    a_number, b_number, f_extended_recursive, f_nestohedron_recursive, gamma_poly, h_poly,
};
use nestohedra::geom::{cost_orientation, extended_vertex_coords, stellar_realization};
use nestohedra::iso::{
    extended_interval_rotation, interval_extension, interval_rotation, spider_to_octopus,
    SpiderSpec,
};
use nestohedra::orders::{
    facet_of_partial_permutation, flip_poset, partial_weak_order, verify_shelling, word_label,
};
use nestohedra::perms::{
    b_partial_permutations, gamma_via_descents, h_via_descents, hop, PartialPermutation,
    Permutation,
};
use nestohedra::verify::verify_all;
use nestohedra::{complex::extended_facets, DEFAULT_MAX_N};

#[derive(Parser)]
#[command(name = "nesto", version, about = "Building sets, nested complexes, and their face numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Args)]
struct InputArgs {
    /// Path to a JSON input file ("-" for stdin).
    #[arg(long)]
    input: Option<PathBuf>,
    /// Inline JSON input.
    #[arg(long)]
    json: Option<String>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a building set given as {"n": ..., "sets": [[...], ...]}.
    Validate {
        #[command(flatten)]
        io: InputArgs,
        /// Ground-set size cap (NESTO_MAX_N overrides the default 16).
        #[arg(long)]
        max_n: Option<usize>,
    },
    /// Build the graphical building set of a digraph {"n":..,"arcs":[[u,v],..]}.
    FromGraph {
        #[command(flatten)]
        io: InputArgs,
    },
    /// Enumerate the nested or extended nested complex.
    Complex {
        #[command(flatten)]
        io: InputArgs,
        /// Enumerate the extended complex instead of the nested one.
        #[arg(long)]
        extended: bool,
        /// json: the complex; dot: its independence graph.
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// f/h/gamma polynomials and a/b numbers.
    Counts {
        #[command(flatten)]
        io: InputArgs,
        /// Count the extended nestohedron instead of the nestohedron.
        #[arg(long)]
        extended: bool,
        /// Print only the f-polynomial.
        #[arg(long)]
        f: bool,
        /// Print only the h-polynomial.
        #[arg(long)]
        h: bool,
        /// Print only the gamma-polynomial.
        #[arg(long)]
        gamma: bool,
        /// Print only the a/b numbers.
        #[arg(long)]
        ab: bool,
    },
    /// Partial permutations: list them, apply hops, or compute descent h/gamma.
    Perms {
        #[command(subcommand)]
        action: PermsAction,
    },
    /// Posets: the partial weak order, flip posets, shelling verification.
    Order {
        #[command(subcommand)]
        action: OrderAction,
    },
    /// Constructive isomorphisms and the generic checker.
    Iso {
        #[command(subcommand)]
        action: IsoAction,
    },
    /// Realizations: stellar subdivision, vertex coordinates, orientations.
    Geom {
        #[command(subcommand)]
        action: GeomAction,
    },
    /// Run the acceptance suite and print the JSON report.
    VerifyAll {
        /// Ground-set cap for the instance families.
        #[arg(long, default_value = "4")]
        max_n: usize,
        /// Seed for every randomized family in the run.
        #[arg(long, default_value = "7")]
        seed: u64,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum PermsAction {
    /// List the B-partial permutations of a connected building set.
    List {
        #[command(flatten)]
        io: InputArgs,
    },
    /// Apply the hop at an entry of an extended B-permutation.
    Hops {
        #[command(flatten)]
        io: InputArgs,
        /// The word, comma-separated, e.g. "4,1,3,5,2".
        #[arg(long)]
        word: String,
        /// The intermediary entry to hop.
        #[arg(long)]
        entry: usize,
    },
    /// Descent-generating h and gamma for a connected chordal building set.
    GammaChordal {
        #[command(flatten)]
        io: InputArgs,
    },
}

#[derive(Subcommand)]
enum OrderAction {
    /// The partial weak Bruhat order on all partial permutations of [n].
    PartialWeak {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Flip poset on maximal (extended) nested collections.
    Flip {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long)]
        extended: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Verify a facet ordering as a shelling; input {"complex":…,"order":[[labels],…]}.
    Shell {
        #[command(flatten)]
        io: InputArgs,
    },
    /// Shell the dual stellohedron by seeded linear extensions of the
    /// partial weak order.
    ShellStellohedron {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "7")]
        seed: u64,
        #[arg(long, default_value = "20")]
        samples: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum IsoAction {
    /// Interval extension with the witness map.
    Interval {
        #[command(flatten)]
        io: InputArgs,
    },
    /// Interval rotation (or the extended variant) with the witness map.
    Rotate {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long)]
        extended: bool,
    },
    /// Spider-to-octopus; input is a SpiderSpec {"legs": [building sets]}.
    Spider2octopus {
        #[command(flatten)]
        io: InputArgs,
    },
    /// Generic isomorphism check between two complexes
    /// {"first": {...), "second": {...}}.
    Check {
        #[command(flatten)]
        io: InputArgs,
        /// Search-node budget.
        #[arg(long, default_value = "10000000")]
        budget: usize,
    },
}

#[derive(Subcommand)]
enum GeomAction {
    /// Stellar realization of the extended nested complex.
    Stellar {
        #[command(flatten)]
        io: InputArgs,
    },
    /// Vertex coordinates of the extended nestohedron.
    Coords {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Orient the dual graph by a cost vector, e.g. --cost "-2,-1".
    Orient {
        #[command(flatten)]
        io: InputArgs,
        #[arg(long)]
        extended: bool,
        #[arg(long, allow_hyphen_values = true)]
        cost: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

/// A failed run: usage problems exit 2, failed checks exit 1 with a JSON
/// failure report.
enum Failure {
    Usage(String),
    Check(serde_json::Value),
}

fn read_input(io: &InputArgs) -> Result<serde_json::Value, Failure> {
    let text = match (&io.input, &io.json) {
        (Some(path), None) => {
            if path.as_os_str() == "-" {
                use std::io::Read;
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Failure::Usage(e.to_string()))?;
                s
            } else {
                fs::read_to_string(path)
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?
            }
        }
        (None, Some(inline)) => inline.clone(),
        _ => return Err(Failure::Usage("provide exactly one of --input or --json".to_string())),
    };
    serde_json::from_str(&text).map_err(|e| Failure::Check(serde_json::json!({"error": format!("invalid JSON: {e}")})))
}

fn write_output(output: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            use std::io::Write;
            let mut out = std::io::stdout();
            // a closed pipe downstream is not our error
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
                _ => Ok(()),
            }
        }
    }
}

fn building_set_input(io: &InputArgs) -> Result<BuildingSet, Failure> {
    let v = read_input(io)?;
    BuildingSet::from_json(&v).map_err(|e| Failure::Check(serde_json::json!({"error": e})))
}

fn usage_failure(msg: String) -> Failure {
    Failure::Usage(msg)
}

fn poset_json(p: &nestohedra::orders::Poset) -> serde_json::Value {
    serde_json::json!({
        "elements": p.labels(),
        "covers": p.covers().iter().map(|&(a, b)| serde_json::json!([a, b])).collect::<Vec<_>>(),
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Validate { io, max_n } => {
            let v = read_input(&io)?;
            let cap = max_n
                .or_else(|| std::env::var("NESTO_MAX_N").ok().and_then(|s| s.parse().ok()))
                .unwrap_or(DEFAULT_MAX_N);
            let parsed: serde_json::Value = v;
            let n = parsed.get("n").and_then(|x| x.as_u64()).unwrap_or(0) as usize;
            let sets: Result<Vec<nestohedra::Subset>, String> = parsed
                .get("sets")
                .and_then(|s| s.as_array())
                .ok_or_else(|| usage_failure("missing \"sets\"".to_string()))?
                .iter()
                .map(|s| serde_json::from_value::<nestohedra::Subset>(s.clone()).map_err(|e| e.to_string()))
                .collect();
            let sets = sets.map_err(|e| Failure::Check(serde_json::json!({"error": e})))?;
            match BuildingSet::validate_with_cap(&sets, n, cap) {
                Ok(b) => write_output(&io.output, &b.to_json().to_string()).map_err(usage_failure),
                Err(e) => Err(Failure::Check(serde_json::json!({"error": e.to_string()}))),
            }
        }
        Command::FromGraph { io } => {
            let v = read_input(&io)?;
            let g = DirectedGraph::from_json(&v)
                .map_err(|e| Failure::Check(serde_json::json!({"error": e})))?;
            let b = from_graph(&g);
            write_output(&io.output, &b.to_json().to_string()).map_err(usage_failure)
        }
        Command::Complex { io, extended, format } => {
            let b = building_set_input(&io)?;
            let c = if extended { extended_nested_complex(&b) } else { nested_complex(&b) };
            let text = match format {
                Format::Dot => c.independence_graph_dot(),
                _ => c.to_json().to_string(),
            };
            write_output(&io.output, &text).map_err(usage_failure)
        }
        Command::Counts { io, extended, f, h, gamma, ab } => {
            let b = building_set_input(&io)?;
            let f_poly = if extended { f_extended_recursive(&b) } else { f_nestohedron_recursive(&b) };
            let h_poly_v = h_poly(&f_poly);
            let d = if extended {
                b.ground_size()
            } else {
                b.ground_size() - b.maximal_elements().len()
            };
            let gamma_v = gamma_poly(&h_poly_v, d)
                .map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
            let mut out = serde_json::Map::new();
            let all = !(f || h || gamma || ab);
            if f || all {
                out.insert("f".into(), serde_json::json!(f_poly.coeffs()));
            }
            if h || all {
                out.insert("h".into(), serde_json::json!(h_poly_v.coeffs()));
            }
            if gamma || all {
                out.insert("gamma".into(), serde_json::json!(gamma_v.coeffs()));
            }
            if ab || all {
                out.insert("a".into(), serde_json::json!(a_number(&b)));
                out.insert("b".into(), serde_json::json!(b_number(&b)));
            }
            write_output(&io.output, &serde_json::Value::Object(out).to_string()).map_err(usage_failure)
        }
        Command::Perms { action } => match action {
            PermsAction::List { io } => {
                let b = building_set_input(&io)?;
                let words = b_partial_permutations(&b)
                    .map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
                let arr: Vec<Vec<usize>> = words.into_iter().map(|w| w.word).collect();
                write_output(&io.output, &serde_json::json!(arr).to_string()).map_err(usage_failure)
            }
            PermsAction::Hops { io, word, entry } => {
                let b = building_set_input(&io)?;
                let parsed: Result<Vec<usize>, _> =
                    word.split(',').map(|s| s.trim().parse::<usize>()).collect();
                let parsed = parsed.map_err(|e| usage_failure(format!("bad word: {e}")))?;
                let w = Permutation::new(parsed)
                    .map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
                match hop(&b, &w, entry) {
                    Ok(u) => write_output(&io.output, &serde_json::json!(u.word).to_string())
                        .map_err(usage_failure),
                    Err(e) => Err(Failure::Check(serde_json::json!({"error": e.to_string()}))),
                }
            }
            PermsAction::GammaChordal { io } => {
                let b = building_set_input(&io)?;
                let h = h_via_descents(&b)
                    .map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
                let g = gamma_via_descents(&b)
                    .map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
                let out = serde_json::json!({"h": h.coeffs(), "gamma": g.coeffs()});
                write_output(&io.output, &out.to_string()).map_err(usage_failure)
            }
        },
        Command::Order { action } => match action {
            OrderAction::PartialWeak { n, format, output } => {
                let p = partial_weak_order(None, n)
                    .map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
                let text = match format {
                    Format::Dot => p.to_dot(),
                    _ => poset_json(&p).to_string(),
                };
                write_output(&output, &text).map_err(usage_failure)
            }
            OrderAction::Flip { io, extended, format } => {
                let b = building_set_input(&io)?;
                let p = flip_poset(&b, extended)
                    .map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
                let text = match format {
                    Format::Dot => p.to_dot(),
                    _ => poset_json(&p).to_string(),
                };
                write_output(&io.output, &text).map_err(usage_failure)
            }
            OrderAction::Shell { io } => {
                let v = read_input(&io)?;
                let complex = SimplicialComplex::from_json(
                    v.get("complex").ok_or_else(|| usage_failure("missing \"complex\"".into()))?,
                )
                .map_err(|e| Failure::Check(serde_json::json!({"error": e})))?;
                let order: Vec<Vec<String>> = serde_json::from_value(
                    v.get("order")
                        .cloned()
                        .ok_or_else(|| usage_failure("missing \"order\"".into()))?,
                )
                .map_err(|e| usage_failure(e.to_string()))?;
                let report = verify_shelling(&complex, &order)
                    .map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
                let text = report.to_json().to_string();
                write_output(&io.output, &text).map_err(usage_failure)?;
                if report.ok {
                    Ok(())
                } else {
                    Err(Failure::Check(report.to_json()))
                }
            }
            OrderAction::ShellStellohedron { n, seed, samples, output } => {
                let b = from_graph(&DirectedGraph::complete(n));
                let complex = extended_nested_complex(&b);
                let p = partial_weak_order(None, n)
                    .map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
                let words = b_partial_permutations(&b)
                    .map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
                let by_label: std::collections::HashMap<String, PartialPermutation> = words
                    .into_iter()
                    .map(|w| (word_label(&w.word), w))
                    .collect();
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut all_ok = true;
                for _ in 0..samples {
                    let ext = p.random_linear_extension(&mut rng);
                    let order: Vec<Vec<String>> = ext
                        .iter()
                        .map(|&i| facet_of_partial_permutation(&b, &by_label[&p.labels()[i]]).labels())
                        .collect();
                    let report = verify_shelling(&complex, &order)
                        .map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
                    all_ok &= report.ok;
                }
                let out = serde_json::json!({
                    "version": env!("CARGO_PKG_VERSION"),
                    "seed": seed,
                    "samples": samples,
                    "ok": all_ok,
                });
                write_output(&output, &out.to_string()).map_err(usage_failure)?;
                if all_ok {
                    Ok(())
                } else {
                    Err(Failure::Check(out))
                }
            }
        },
        Command::Iso { action } => match action {
            IsoAction::Interval { io } => {
                let b = building_set_input(&io)?;
                let (b_prime, map) = interval_extension(&b)
                    .map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
                let out = serde_json::json!({"building_set": b_prime.to_json(), "map": map.to_json()});
                write_output(&io.output, &out.to_string()).map_err(usage_failure)
            }
            IsoAction::Rotate { io, extended } => {
                let b = building_set_input(&io)?;
                let (b_prime, map) = if extended {
                    extended_interval_rotation(&b)
                } else {
                    interval_rotation(&b)
                }
                .map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
                let out = serde_json::json!({"building_set": b_prime.to_json(), "map": map.to_json()});
                write_output(&io.output, &out.to_string()).map_err(usage_failure)
            }
            IsoAction::Spider2octopus { io } => {
                let v = read_input(&io)?;
                let spec = SpiderSpec::from_json(&v)
                    .map_err(|e| Failure::Check(serde_json::json!({"error": e})))?;
                let (octopus, glued, map) = spider_to_octopus(&spec)
                    .map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
                let out = serde_json::json!({
                    "octopus": octopus.to_json(),
                    "building_set": glued.to_json(),
                    "map": map.to_json(),
                });
                write_output(&io.output, &out.to_string()).map_err(usage_failure)
            }
            IsoAction::Check { io, budget } => {
                let v = read_input(&io)?;
                let first = SimplicialComplex::from_json(
                    v.get("first").ok_or_else(|| usage_failure("missing \"first\"".into()))?,
                )
                .map_err(|e| Failure::Check(serde_json::json!({"error": e})))?;
                let second = SimplicialComplex::from_json(
                    v.get("second").ok_or_else(|| usage_failure("missing \"second\"".into()))?,
                )
                .map_err(|e| Failure::Check(serde_json::json!({"error": e})))?;
                let witness = first
                    .is_isomorphic(&second, budget)
                    .map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
                let out = match &witness {
                    Some(w) => serde_json::json!({"isomorphic": true, "witness": w}),
                    None => serde_json::json!({"isomorphic": false}),
                };
                write_output(&io.output, &out.to_string()).map_err(usage_failure)
            }
        },
        Command::Geom { action } => match action {
            GeomAction::Stellar { io } => {
                let b = building_set_input(&io)?;
                let c = stellar_realization(&b)
                    .map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
                write_output(&io.output, &c.to_json().to_string()).map_err(usage_failure)
            }
            GeomAction::Coords { io, format } => {
                let b = building_set_input(&io)?;
                let facets = extended_facets(&b);
                let coords: Result<Vec<_>, _> =
                    facets.iter().map(|f| extended_vertex_coords(&b, f)).collect();
                let coords =
                    coords.map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
                let text = match format {
                    Format::Csv => {
                        let mut s = String::from("facet,coords\n");
                        for (f, v) in facets.iter().zip(&coords) {
                            let nums: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                            s.push_str(&format!(
                                "\"{}\",\"({})\"\n",
                                f.labels().join("|"),
                                nums.join(",")
                            ));
                        }
                        s
                    }
                    _ => serde_json::json!(facets
                        .iter()
                        .zip(&coords)
                        .map(|(f, v)| serde_json::json!({"facet": f.labels(), "coords": v}))
                        .collect::<Vec<_>>())
                    .to_string(),
                };
                write_output(&io.output, &text).map_err(usage_failure)
            }
            GeomAction::Orient { io, extended, cost, format } => {
                let b = building_set_input(&io)?;
                let c: Result<Vec<i64>, _> =
                    cost.split(',').map(|s| s.trim().parse::<i64>()).collect();
                let c = c.map_err(|e| usage_failure(format!("bad cost vector: {e}")))?;
                let o = cost_orientation(&b, &c, extended)
                    .map_err(|e| Failure::Check(serde_json::json!({"error": e.to_string()})))?;
                let text = match format {
                    Format::Dot => o.to_dot(),
                    Format::Csv => o.coords_csv(),
                    Format::Json => serde_json::json!({
                        "facets": o.facet_labels,
                        "coords": o.coords,
                        "edges": o.edges,
                    })
                    .to_string(),
                };
                write_output(&io.output, &text).map_err(usage_failure)
            }
        },
        Command::VerifyAll { max_n, seed, output } => {
            let report = verify_all(max_n, seed);
            let text = report.to_json().to_string();
            write_output(&output, &text).map_err(usage_failure)?;
            if report.all_passed() {
                Ok(())
            } else {
                Err(Failure::Check(report.to_json()))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(report)) => {
            eprintln!("{report}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
