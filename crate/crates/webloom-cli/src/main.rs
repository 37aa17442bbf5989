//! `webloom`: tableaux, growth, trip permutations, web enumeration, sink
//! contraction, dual webs, Plücker evaluation, rendering and the acceptance
//! suite from the command line.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use webloom::catalog::load_type_lists_from;
use webloom::compatibility::{dual_matching, dual_web, Matching, WebUniverse};
use webloom::dimers::{superimpose, DimerConfig, PlabicGraph};
use webloom::plucker::{parse_matrix_csv, random_matrix};
use webloom::render::{render_dimer, render_map, render_matching, render_web, RenderSpec};
use webloom::webs::{contract_sinks, classify_type, enumerate_black_webs, enumerate_mixed_webs};
use webloom::{acceptance, grow, CombMap, Error, HourglassGraph, PluckerPolynomial, RectTableau, Web};

/// Exit status for invalid input or a failed computation.
const EXIT_INPUT: u8 = 2;
/// Exit status when `verify` finds a failing criterion.
const EXIT_CHECK: u8 = 1;

/// Interior vertex cap used when enumerating webs on a fixed boundary.
const UNIVERSE_CAP: usize = 12;

#[derive(Parser)]
#[command(name = "webloom", version, about = "Webs, hourglass plabic graphs and cluster variables of Gr(4,8)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tableau operations.
    Tabl {
        #[arg(value_enum)]
        op: TablOp,
        /// Rows separated by commas, e.g. 14,25,37,68.
        #[arg(long)]
        tableau: String,
        /// Row index for `promperm`; all indices when omitted.
        #[arg(long)]
        i: Option<usize>,
    },
    /// Grow the hourglass plabic graph of a 4-row tableau.
    Grow {
        #[arg(long)]
        tableau: String,
        /// Write the graph JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print every rule application to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Trip permutations of an hourglass plabic graph.
    Trips {
        /// Graph JSON, or a catalog entry with an "hourglass" field.
        #[arg(long)]
        graph: PathBuf,
    },
    /// Enumerate non-elliptic webs.
    Enumerate {
        #[arg(value_enum)]
        what: EnumerateWhat,
        #[arg(long, value_enum)]
        boundary: BoundaryKind,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads; output does not depend on it.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Contract claw sites of a web into white boundary vertices.
    Contract {
        #[arg(long)]
        web: PathBuf,
        /// Sites as "i,j;k,l;...".
        #[arg(long)]
        sites: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dual web or matching of a Plücker polynomial.
    Dual {
        #[arg(long)]
        poly: PathBuf,
        /// Directory with type{1..8}/ web lists to use as the universe;
        /// webs are enumerated directly when omitted.
        #[arg(long)]
        atlas: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a Plücker polynomial on a matrix.
    Eval {
        #[arg(long)]
        poly: PathBuf,
        /// Comma-separated integer or rational entries, one row per line.
        #[arg(long, conflicts_with = "random")]
        matrix: Option<PathBuf>,
        /// Use a seeded random integer matrix.
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Entries are drawn from -bound..=bound.
        #[arg(long, default_value_t = 9)]
        bound: i64,
    },
    /// Run the acceptance suite.
    Verify {
        #[arg(long, conflicts_with = "criterion")]
        all: bool,
        #[arg(long)]
        criterion: Option<usize>,
    },
    /// Render a map, web, matching or dimer overlay to SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        spec: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TablOp {
    Promote,
    Evacuate,
    Word,
    Promperm,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumerateWhat {
    Webs,
}

#[derive(Clone, Copy, ValueEnum)]
enum BoundaryKind {
    #[value(name = "12-black")]
    TwelveBlack,
    #[value(name = "4x4")]
    FourByFour,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", one_line(&e));
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn one_line(e: &anyhow::Error) -> String {
    e.chain().map(|c| c.to_string()).collect::<Vec<_>>().join(": ").replace('\n', " ")
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_json(path: &Path) -> Result<Value> {
    serde_json::from_str(&read(path)?).with_context(|| format!("{} is not valid JSON", path.display()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cmd: Command) -> Result<u8> {
    match cmd {
        Command::Tabl { op, tableau, i } => tabl(op, &tableau, i),
        Command::Grow { tableau, out, trace } => {
            let t = RectTableau::parse_short(&tableau)?;
            let g = grow(&t)?;
            if trace {
                for step in &g.trace {
                    eprintln!("{step}");
                }
            }
            write_or_print(out.as_deref(), &g.graph.map().to_json_pretty())?;
            Ok(0)
        }
        Command::Trips { graph } => {
            let v = read_json(&graph)?;
            let map: CombMap = serde_json::from_value(v.get("hourglass").cloned().unwrap_or(v)).context("graph JSON does not match the map schema")?;
            let g = HourglassGraph::validate(map)?;
            for p in g.trip_perms()? {
                println!("{p}");
            }
            Ok(0)
        }
        Command::Enumerate { what: EnumerateWhat::Webs, boundary, out, jobs } => {
            if let Some(j) = jobs {
                rayon::ThreadPoolBuilder::new().num_threads(j).build_global().map_err(|e| anyhow!("cannot start {j} workers: {e}"))?;
            }
            enumerate(boundary, &out)
        }
        Command::Contract { web, sites, out } => {
            let w = load_web(&web)?;
            let sites = parse_sites(&sites)?;
            let c = contract_sinks(&w, &sites)?;
            if c.n() == 8 {
                if let Ok((t, g)) = classify_type(&c) {
                    eprintln!("type {t} after relabeling by {g}");
                }
            }
            write_or_print(out.as_deref(), &c.map().to_json_pretty())?;
            Ok(0)
        }
        Command::Dual { poly, atlas, out } => dual(&poly, atlas.as_deref(), out.as_deref()),
        Command::Eval { poly, matrix, random, seed, bound } => {
            let p = load_poly(&poly)?;
            let m = match (matrix, random) {
                (Some(path), _) => parse_matrix_csv(&read(&path)?)?,
                (None, true) => random_matrix(p.k, p.n, bound, seed),
                (None, false) => bail!("give --matrix FILE or --random"),
            };
            println!("{}", p.evaluate(&m)?);
            Ok(0)
        }
        Command::Verify { all, criterion } => {
            let verdicts = match (all, criterion) {
                (true, _) => acceptance::run_all(),
                (false, Some(id)) => vec![acceptance::run(id).ok_or_else(|| anyhow!("no criterion {id}; criteria are 1 to 11"))?],
                (false, None) => bail!("give --all or --criterion N"),
            };
            for v in &verdicts {
                println!("{v}");
            }
            Ok(if verdicts.iter().all(|v| v.pass) { 0 } else { EXIT_CHECK })
        }
        Command::Render { input, out, spec } => {
            let spec: RenderSpec = match spec {
                Some(p) => serde_json::from_value(read_json(&p)?).context("render spec does not match the schema")?,
                None => RenderSpec::default(),
            };
            let svg = render(&read_json(&input)?, &spec)?;
            fs::write(&out, svg).with_context(|| format!("cannot write {}", out.display()))?;
            Ok(0)
        }
    }
}

fn tabl(op: TablOp, tableau: &str, i: Option<usize>) -> Result<u8> {
    let t = RectTableau::parse_short(tableau)?;
    match op {
        TablOp::Promote => println!("{}", if t.is_standard() { t.promotion()? } else { t.ssyt_promotion()? }.short()),
        TablOp::Evacuate => println!("{}", t.evacuation()?.short()),
        TablOp::Word => println!("{}", t.lattice_word()),
        TablOp::Promperm => {
            let std = t.standardize();
            match i {
                Some(i) => println!("{}", std.prom_perm(i)?),
                None => {
                    for p in std.prom_perms()? {
                        println!("{p}");
                    }
                }
            }
        }
    }
    Ok(0)
}

fn load_web(path: &Path) -> Result<Web> {
    let map: CombMap = serde_json::from_value(read_json(path)?).context("web JSON does not match the map schema")?;
    Ok(Web::new(map)?)
}

fn load_poly(path: &Path) -> Result<PluckerPolynomial> {
    let text = read(path)?;
    Ok(text.trim().parse::<PluckerPolynomial>()?)
}

fn parse_sites(s: &str) -> Result<Vec<(usize, usize)>> {
    s.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| {
            let parts: Vec<&str> = p.split(',').map(str::trim).collect();
            match parts.as_slice() {
                [a, b] => Ok((a.parse()?, b.parse()?)),
                _ => bail!("site {p:?} is not of the form i,j"),
            }
        })
        .collect()
}

fn enumerate(boundary: BoundaryKind, out: &Path) -> Result<u8> {
    fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    let census = enumerate_black_webs(12)?;
    let counts = match boundary {
        BoundaryKind::TwelveBlack => {
            for (i, (w, _)) in census.classes.iter().enumerate() {
                let name = format!("W{}", i + 1);
                let map = w.map().clone().with_name(&name).with_flavor("web");
                fs::write(out.join(format!("{name}.json")), map.to_json_pretty())?;
            }
            json!({"classes": census.classes.len(), "total": census.total(), "by_type": {}})
        }
        BoundaryKind::FourByFour => {
            let mixed = enumerate_mixed_webs(&census)?;
            // Labeled codes exceed filename limits, so files are numbered
            // within each type and index.json maps file names to codes.
            let mut index: BTreeMap<String, String> = BTreeMap::new();
            let mut next = [0usize; 9];
            for (t, w) in &mixed.webs {
                let dir = out.join(format!("type{t}"));
                fs::create_dir_all(&dir)?;
                next[*t] += 1;
                let file = format!("type{t}/{}.json", next[*t]);
                let map = w.map().clone().with_name(format!("type {t} #{}", next[*t])).with_flavor("web");
                fs::write(out.join(&file), map.to_json_pretty())?;
                index.insert(file, w.labeled_code().to_string());
            }
            fs::write(out.join("index.json"), serde_json::to_string_pretty(&index)?)?;
            let by_type: BTreeMap<String, usize> = mixed.by_type().iter().enumerate().map(|(t, &c)| ((t + 1).to_string(), c)).collect();
            json!({"classes": mixed.dihedral_class_count(), "total": mixed.len(), "by_type": by_type})
        }
    };
    fs::write(out.join("counts.json"), serde_json::to_string_pretty(&counts)?)?;
    println!("{counts}");
    Ok(0)
}

fn matching_key(m: &Matching) -> String {
    let pairs: String = m.pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
    let iso: Vec<String> = m.isolated_white.iter().map(|x| x.to_string()).collect();
    format!("{pairs}|{}", iso.join(","))
}

fn dual(poly: &Path, atlas: Option<&Path>, out: Option<&Path>) -> Result<u8> {
    let p = load_poly(poly)?;
    let lambda = p.boundary_condition()?;
    let sum: BTreeMap<String, i64> = match p.degree() {
        2 => dual_matching(&p)?.terms.iter().map(|(m, &c)| (matching_key(m), c)).collect(),
        3 => {
            let universe = match atlas {
                Some(dir) => {
                    let lists = load_type_lists_from(dir)?;
                    WebUniverse::from_classes(lists.iter().flatten())
                }
                None => WebUniverse::for_boundary(&lambda, UNIVERSE_CAP)?,
            };
            dual_web(&p, &universe)?.terms().map(|(_, c, w)| (w.canonical_code().to_string(), c)).collect()
        }
        d => return Err(Error::Polynomial(format!("degree {d} is not supported; expected 2 or 3")).into()),
    };
    write_or_print(out, &serde_json::to_string_pretty(&sum)?)?;
    Ok(0)
}

fn render(v: &Value, spec: &RenderSpec) -> Result<String> {
    if v.get("pairs").is_some() {
        let m: Matching = serde_json::from_value(v.clone()).context("matching JSON does not match the schema")?;
        return Ok(render_matching(&Matching::new(m.n, m.pairs, m.isolated_white)?, spec));
    }
    if let (Some(graph), Some(dimers)) = (v.get("graph"), v.get("dimers")) {
        let g = PlabicGraph::new(serde_json::from_value(graph.clone()).context("graph JSON does not match the map schema")?)?;
        let ds: Vec<Vec<usize>> = serde_json::from_value(dimers.clone()).context("dimers must be lists of edge ids")?;
        let ds = ds.into_iter().map(|d| DimerConfig::new(&g, d)).collect::<webloom::Result<Vec<_>>>()?;
        return Ok(render_dimer(&g, &superimpose(&g, &ds)?, spec));
    }
    let map_value = v.get("hourglass").cloned().unwrap_or_else(|| v.clone());
    let map: CombMap = serde_json::from_value(map_value).context("JSON does not match the map schema")?;
    if map.flavor() == Some("web") {
        return Ok(render_web(&Web::new(map)?, spec));
    }
    Ok(render_map(&map, spec))
}
