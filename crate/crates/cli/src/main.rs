//! `wreathkit`: build, analyze and certify suspensions and wreath products
//! from the command line.
//!
//! Exit codes: 0 success (or the checked property holds), 1 the property
//! fails, 2 the search ran out of budget, 3 usage, input or parse error.

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use wreathkit::constructions::{one_point_suspension, reduced_join, wreath_product};
use wreathkit::decompose::{
    certificate_to_text, find_morse_matching, find_shelling, is_cone, is_constructible, is_non_evasive,
    is_vertex_decomposable, lift_morse_matching, lift_shelling, parse_shelling, shelling_to_text, verify_morse_matching,
    verify_shelling, MorseMatching,
};
use wreathkit::generators;
use wreathkit::geometry::{
    dual_wedge_with_facets, parse_polytope, polytope_wreath, predicted_facets, translate_facets,
    verify_facet_system, write_polytope, FacetSpec, PolytopeFile,
};
use wreathkit::io::{parse_facets, write_facets, NonMaximalPolicy};
use wreathkit::suite;
use wreathkit::symmetry::{automorphism_group, wreath_group_generators};
use wreathkit::topology::{dual_diameter, hirsch_gap, is_cohen_macaulay_q, is_pseudomanifold, neighborliness, reduced_homology, Pseudomanifold};
use wreathkit::verdict::DEFAULT_BUDGET;
use wreathkit::{Error, PropertyVerdict, SimplicialComplex, Status, VertexLabel};

const EXIT_FAILS: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "wreathkit", version, about = "Suspensions, reduced joins and wreath products of simplicial complexes and polytopes")]
struct Cli {
    /// Print flat JSON records instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap the number of worker threads.
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,
    /// Drop non-maximal facets from input files instead of rejecting them.
    #[arg(long, global = true)]
    prune: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a standard complex.
    Gen {
        kind: GenKind,
        /// `k` for simplex, simplex-boundary and cross; `n` for cycle and path; `e n` for cyclic.
        #[arg(required = true)]
        params: Vec<usize>,
        #[arg(short, value_name = "FILE")]
        o: Option<PathBuf>,
    },
    /// One-point suspension at a vertex.
    Susp {
        #[arg(short = 'v', value_name = "VERTEX")]
        vertex: String,
        #[arg(short, value_name = "FILE")]
        i: Option<PathBuf>,
        #[arg(short, value_name = "FILE")]
        o: Option<PathBuf>,
    },
    /// Reduced join with the boundary of a d-simplex at a vertex.
    Rjoin {
        #[arg(short)]
        d: usize,
        #[arg(short = 'v', value_name = "VERTEX")]
        vertex: String,
        #[arg(short, value_name = "FILE")]
        i: Option<PathBuf>,
        #[arg(short, value_name = "FILE")]
        o: Option<PathBuf>,
    },
    /// Wreath product with the boundary of a d-simplex.
    Wreath {
        #[arg(short)]
        d: usize,
        #[arg(short, value_name = "FILE")]
        i: Option<PathBuf>,
        #[arg(short, value_name = "FILE")]
        o: Option<PathBuf>,
    },
    /// Join of two complexes.
    Join {
        #[arg(short, value_name = "FILE", num_args = 1, required = true)]
        i: Vec<PathBuf>,
        #[arg(short, value_name = "FILE")]
        o: Option<PathBuf>,
    },
    /// Compute an invariant.
    Analyze {
        what: Analysis,
        #[arg(short, value_name = "FILE")]
        i: Option<PathBuf>,
    },
    /// Decide a property, optionally writing its certificate.
    Check {
        what: Property,
        #[arg(short, value_name = "FILE")]
        i: Option<PathBuf>,
        /// Search nodes before giving up.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_name = "FILE")]
        certificate: Option<PathBuf>,
    },
    /// Lift a certificate to the one-point suspension at a vertex.
    Lift {
        what: LiftKind,
        #[arg(short = 'v', value_name = "VERTEX")]
        vertex: String,
        #[arg(long, value_name = "FILE")]
        certificate: PathBuf,
        #[arg(short, value_name = "FILE")]
        i: Option<PathBuf>,
        #[arg(short, value_name = "FILE")]
        o: Option<PathBuf>,
    },
    /// Combinatorial symmetry.
    Sym {
        what: SymKind,
        #[arg(short, value_name = "FILE")]
        i: Option<PathBuf>,
        #[arg(short, default_value_t = 1)]
        d: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Polytopes with exact coordinates.
    Poly {
        what: PolyKind,
        /// Polytope file; `wreath` takes two (P then Q).
        #[arg(short, value_name = "PFILE", num_args = 1)]
        i: Vec<PathBuf>,
        #[arg(short = 'v', value_name = "VERTEX")]
        vertex: Option<String>,
        #[arg(short, value_name = "PFILE")]
        o: Option<PathBuf>,
    },
    /// Run the regression suite and print a pass/fail table.
    #[command(alias = "suite")]
    PaperSuite,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Simplex,
    SimplexBoundary,
    Cycle,
    Path,
    Cross,
    Cyclic,
}

#[derive(Clone, Copy, ValueEnum)]
enum Analysis {
    Fvector,
    Euler,
    Homology,
    Neighborly,
    Pseudomanifold,
    Dualdiam,
    Hirsch,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Vd,
    Shellable,
    Constructible,
    Cone,
    Nonevasive,
    Collapsible,
    Cm,
}

#[derive(Clone, Copy, ValueEnum)]
enum LiftKind {
    Shelling,
    Morse,
}

#[derive(Clone, Copy, ValueEnum)]
enum SymKind {
    Aut,
    Transitive,
    Wreathgroup,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolyKind {
    Dualwedge,
    Wreath,
    Verify,
}

type CliResult<T = u8> = Result<T, Box<dyn std::error::Error>>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("could not set thread count: {e}");
        }
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}

fn read_input(path: Option<&Path>) -> CliResult<String> {
    Ok(match path {
        Some(p) => fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?,
        None => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            s
        }
    })
}

fn write_output(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display()))?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn policy(cli: &Cli) -> NonMaximalPolicy {
    if cli.prune {
        NonMaximalPolicy::WarnAndPrune
    } else {
        NonMaximalPolicy::Reject
    }
}

fn read_complex(cli: &Cli, path: Option<&Path>) -> CliResult<SimplicialComplex> {
    Ok(parse_facets(&read_input(path)?, policy(cli))?)
}

fn label(s: &str) -> CliResult<VertexLabel> {
    Ok(VertexLabel::new(s)?)
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Holds => 0,
        Status::Fails => EXIT_FAILS,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

fn print_record(cli: &Cli, record: Map<String, Value>, text: &str) {
    if cli.json {
        println!("{}", Value::Object(record));
    } else {
        print!("{text}");
    }
}

/// JSON number when it fits, string otherwise.
fn big(x: &impl ToString) -> Value {
    let s = x.to_string();
    s.parse::<i64>().map(Value::from).unwrap_or(Value::String(s))
}

fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Gen { kind, params, o } => {
            let k = generate(*kind, params)?;
            write_output(o.as_deref(), &write_facets(&k))?;
            Ok(0)
        }
        Command::Susp { vertex, i, o } => {
            let k = read_complex(cli, i.as_deref())?;
            write_output(o.as_deref(), &write_facets(&one_point_suspension(&k, &label(vertex)?)?))?;
            Ok(0)
        }
        Command::Rjoin { d, vertex, i, o } => {
            let k = read_complex(cli, i.as_deref())?;
            write_output(o.as_deref(), &write_facets(&reduced_join(*d, &k, &label(vertex)?)?))?;
            Ok(0)
        }
        Command::Wreath { d, i, o } => {
            let k = read_complex(cli, i.as_deref())?;
            write_output(o.as_deref(), &write_facets(&wreath_product(*d, &k)))?;
            Ok(0)
        }
        Command::Join { i, o } => {
            let [a, b] = i.as_slice() else { return Err("join takes exactly two -i files".into()) };
            let (a, b) = (read_complex(cli, Some(a))?, read_complex(cli, Some(b))?);
            write_output(o.as_deref(), &write_facets(&a.join(&b)))?;
            Ok(0)
        }
        Command::Analyze { what, i } => analyze(cli, *what, &read_complex(cli, i.as_deref())?),
        Command::Check { what, i, budget, certificate } => {
            let k = read_complex(cli, i.as_deref())?;
            check(cli, *what, &k, *budget, certificate.as_deref())
        }
        Command::Lift { what, vertex, certificate, i, o } => {
            let k = read_complex(cli, i.as_deref())?;
            lift(*what, &k, &label(vertex)?, certificate, o.as_deref())
        }
        Command::Sym { what, i, d, budget } => sym(cli, *what, &read_complex(cli, i.as_deref())?, *d, *budget),
        Command::Poly { what, i, vertex, o } => poly(cli, *what, i, vertex.as_deref(), o.as_deref()),
        Command::PaperSuite => {
            let mut all = true;
            for id in 1..=suite::CRITERIA.len() {
                let r = suite::run(id);
                all &= r.passed;
                if cli.json {
                    println!("{}", json!({"criterion": r.id, "name": r.name, "passed": r.passed, "detail": r.detail}));
                } else {
                    println!("{r}");
                }
            }
            Ok(if all { 0 } else { EXIT_FAILS })
        }
    }
}

fn generate(kind: GenKind, params: &[usize]) -> CliResult<SimplicialComplex> {
    let one = || match params {
        [x] => Ok(*x),
        _ => Err(format!("expected one parameter, got {}", params.len())),
    };
    Ok(match kind {
        GenKind::Simplex => generators::simplex(one()?),
        GenKind::SimplexBoundary => generators::simplex_boundary(one()?),
        GenKind::Cycle => generators::cycle(one()?)?,
        GenKind::Path => generators::path(one()?)?,
        GenKind::Cross => generators::cross_polytope_boundary(one()?)?,
        GenKind::Cyclic => match params {
            [e, n] => generators::cyclic_polytope_boundary(*e, *n)?,
            _ => return Err("cyclic takes two parameters: e n".into()),
        },
    })
}

fn analyze(cli: &Cli, what: Analysis, k: &SimplicialComplex) -> CliResult {
    let mut rec = Map::new();
    let text;
    let mut code = 0;
    match what {
        Analysis::Fvector => {
            let f = k.f_vector();
            rec.insert("fvector".into(), Value::Array(f.counts().iter().map(big).collect()));
            text = format!("{f}\n");
        }
        Analysis::Euler => {
            let (e, r) = (k.euler_characteristic(), k.reduced_euler_characteristic());
            rec.insert("euler".into(), big(&e));
            rec.insert("reduced_euler".into(), big(&r));
            text = format!("euler {e}\nreduced {r}\n");
        }
        Analysis::Homology => {
            let h = reduced_homology(k);
            let start = if h.get(-1).is_trivial() { 0 } else { -1 };
            for i in start..=h.dim() {
                rec.insert(format!("H{i}"), Value::String(h.get(i).to_string()));
            }
            text = h.to_string();
        }
        Analysis::Neighborly => {
            let n = neighborliness(k);
            rec.insert("neighborliness".into(), n.into());
            text = format!("{n}\n");
        }
        Analysis::Pseudomanifold => {
            let p = match is_pseudomanifold(k) {
                Ok(Pseudomanifold::Closed) => "closed",
                Ok(Pseudomanifold::WithBoundary) => "with-boundary",
                Ok(Pseudomanifold::Neither) => "neither",
                Err(Error::NotPure) => "not-pure",
                Err(e) => return Err(e.into()),
            };
            rec.insert("pseudomanifold".into(), p.into());
            text = format!("{p}\n");
        }
        Analysis::Dualdiam | Analysis::Hirsch => match (what, dual_diameter(k)) {
            (_, Err(Error::DisconnectedDualGraph)) => {
                rec.insert("dual_graph".into(), "disconnected".into());
                text = "disconnected dual graph\n".into();
                code = EXIT_FAILS;
            }
            (Analysis::Dualdiam, d) => {
                let d = d?;
                rec.insert("dual_diameter".into(), d.into());
                text = format!("{d}\n");
            }
            (_, _) => {
                let g = hirsch_gap(k)?;
                rec.insert("hirsch_gap".into(), g.into());
                text = format!("{g}\n");
            }
        },
    }
    print_record(cli, rec, &text);
    Ok(code)
}

fn check(cli: &Cli, what: Property, k: &SimplicialComplex, budget: u64, cert: Option<&Path>) -> CliResult {
    let (name, v): (&str, PropertyVerdict) = match what {
        Property::Vd => ("vd", is_vertex_decomposable(k, budget)?),
        Property::Shellable => ("shellable", find_shelling(k, budget)?),
        Property::Constructible => ("constructible", is_constructible(k, budget)?),
        Property::Cone => ("cone", is_cone(k)),
        Property::Nonevasive => ("nonevasive", is_non_evasive(k, budget)),
        Property::Collapsible => ("collapsible", find_morse_matching(k, budget)),
        Property::Cm => ("cm", is_cohen_macaulay_q(k)),
    };
    if let Some(path) = cert {
        write_output(Some(path), &certificate_to_text(&v.certificate))?;
    }
    let mut rec = Map::new();
    rec.insert("check".into(), name.into());
    rec.insert("status".into(), v.status.to_string().into());
    rec.insert("nodes".into(), v.nodes_explored.into());
    print_record(cli, rec, &format!("{name}: {} ({} nodes)\n", v.status, v.nodes_explored));
    Ok(status_code(v.status))
}

fn lift(what: LiftKind, k: &SimplicialComplex, v: &VertexLabel, cert: &Path, o: Option<&Path>) -> CliResult {
    let text = read_input(Some(cert))?;
    match what {
        LiftKind::Shelling => {
            let order = parse_shelling(&text)?;
            if !verify_shelling(k, &order) {
                eprintln!("the given order is not a shelling of the input");
                return Ok(EXIT_FAILS);
            }
            write_output(o, &shelling_to_text(&lift_shelling(k, &order, v)?))?;
        }
        LiftKind::Morse => {
            let m: MorseMatching = text.parse()?;
            if !verify_morse_matching(k, &m) {
                eprintln!("the given matching is not perfect and acyclic on the input");
                return Ok(EXIT_FAILS);
            }
            write_output(o, &lift_morse_matching(k, &m, v)?.to_string())?;
        }
    }
    Ok(0)
}

fn sym(cli: &Cli, what: SymKind, k: &SimplicialComplex, d: usize, budget: u64) -> CliResult {
    let aut = automorphism_group(k, budget);
    let incomplete = if aut.complete { 0 } else { EXIT_UNKNOWN };
    let mut rec = Map::new();
    match what {
        SymKind::Aut => {
            rec.insert("order".into(), big(&aut.order));
            rec.insert("complete".into(), aut.complete.into());
            rec.insert("generators".into(), aut.generators.iter().map(|g| Value::String(g.to_cycle_string(&aut.labels))).collect());
            print_record(cli, rec, &aut.to_string());
            Ok(incomplete)
        }
        SymKind::Transitive => {
            let t = aut.is_transitive();
            rec.insert("vertex_transitive".into(), t.into());
            print_record(cli, rec, &format!("{t}\n"));
            Ok(match (t, aut.complete) {
                (true, _) => 0,
                (false, true) => EXIT_FAILS,
                (false, false) => EXIT_UNKNOWN,
            })
        }
        SymKind::Wreathgroup => {
            let g = wreath_group_generators(d, k, &aut)?;
            rec.insert("order".into(), big(&g.order));
            rec.insert("generators".into(), g.generators.iter().map(|p| Value::String(p.to_cycle_string(&g.labels))).collect());
            print_record(cli, rec, &g.to_string());
            Ok(incomplete)
        }
    }
}

fn read_polytope(path: &Path) -> CliResult<PolytopeFile> {
    Ok(parse_polytope(&read_input(Some(path))?)?)
}

fn poly(cli: &Cli, what: PolyKind, inputs: &[PathBuf], vertex: Option<&str>, o: Option<&Path>) -> CliResult {
    match what {
        PolyKind::Dualwedge => {
            let [p] = inputs else { return Err("dualwedge takes one -i file".into()) };
            let p = read_polytope(p)?;
            let v = label(vertex.ok_or("dualwedge needs -v VERTEX")?)?;
            let (q, facets) = dual_wedge_with_facets(&p.polytope, &p.facets, &v)?;
            write_output(o, &write_polytope(&q, &facets))?;
            Ok(0)
        }
        PolyKind::Wreath => {
            let [p, q] = inputs else { return Err("wreath takes two -i files: P then Q".into()) };
            let (p, q) = (read_polytope(p)?, read_polytope(q)?);
            let centered = |f: &PolytopeFile| -> Vec<FacetSpec> { translate_facets(&f.facets, &f.polytope.barycenter()) };
            let w = polytope_wreath(&p.polytope, &q.polytope);
            let facets = if p.facets.is_empty() || q.facets.is_empty() {
                Vec::new()
            } else {
                predicted_facets(&w, &centered(&p), &centered(&q))?.into_iter().map(|f| f.spec).collect()
            };
            write_output(o, &write_polytope(&w.polytope, &facets))?;
            Ok(0)
        }
        PolyKind::Verify => {
            let [p] = inputs else { return Err("verify takes one -i file".into()) };
            let p = read_polytope(p)?;
            let v = verify_facet_system(&p.polytope, &p.facets);
            let mut rec = Map::new();
            rec.insert("status".into(), v.status.to_string().into());
            rec.insert("facets".into(), p.facets.len().into());
            let mut text = format!("{} ({} facets)\n", v.status, p.facets.len());
            if let wreathkit::Certificate::Facet { index, reason } = &v.certificate {
                rec.insert("facet".into(), (*index).into());
                rec.insert("reason".into(), reason.clone().into());
                text.push_str(&format!("facet {index}: {reason}\n"));
            }
            print_record(cli, rec, &text);
            Ok(status_code(v.status))
        }
    }
}
