use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use framing_core::constructors::{preset, reverse_framing, reverse_graph};
use framing_core::cross_tamari::{self, CrossGrid, ProperLabeling};
use framing_core::graph::{validate, GraphDoc};
use framing_core::labels::{self, ExtendedPath};
use framing_core::lattice::{poset_dot, FramingLattice, LatticeDoc};
use framing_core::oracle::{poset_isomorphic, ISO_CAP};
use framing_core::order::{self, Poset};
use framing_core::quotients;
use framing_core::{Error, FramedGraph, Limits, Path, Result};

#[derive(Parser)]
#[command(
    name = "framing",
    version,
    about = "Framing lattices of framed flow graphs"
)]
struct Cli {
    #[arg(long, global = true, default_value_t = 20_000)]
    max_routes: usize,
    #[arg(long, global = true, default_value_t = 1_000_000)]
    max_paths: usize,
    #[arg(long, global = true, default_value_t = 100_000)]
    max_elements: usize,
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Graph JSON file; `-` or omitted reads standard input.
    input: Option<String>,
    /// Build a preset graph instead of reading one.
    #[arg(long)]
    preset: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum LabelKind {
    Path,
    CwExt,
    CcwExt,
}

#[derive(Subcommand)]
enum Command {
    /// Print a preset graph as JSON.
    Build {
        #[arg(long)]
        preset: String,
        /// Reverse every edge and swap source and sink.
        #[arg(long)]
        reverse_graph: bool,
        /// Reverse every in- and out-order.
        #[arg(long)]
        reverse_framing: bool,
    },
    /// Check a graph document against the schema.
    Validate { input: Option<String> },
    /// List routes; exceptional routes are marked with `*`.
    Routes {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List maximal cliques in canonical order.
    Cliques {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Print the framing lattice.
    Lattice {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Edge labels for DOT output.
        #[arg(long, value_enum)]
        labels: Option<LabelKind>,
    },
    /// Verify structural properties; exits 1 if any fails.
    Check {
        #[command(flatten)]
        input: Input,
        /// Comma-separated: lattice, semidistributive, polygons, hh, triangle-free, ccw, join-meet.
        #[arg(
            long,
            default_value = "lattice,semidistributive,polygons,hh,triangle-free"
        )]
        props: String,
    },
    /// Join of two elements (by index).
    Join {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
    },
    /// Meet of two elements (by index).
    Meet {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
    },
    /// The cw-most clique coherent with the given paths.
    Cmin {
        #[command(flatten)]
        input: Input,
        /// Paths as edge lists, e.g. `0,2;5`.
        #[arg(long, default_value = "")]
        paths: String,
    },
    /// The ccw-most clique coherent with the given paths.
    Cmax {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "")]
        paths: String,
    },
    /// Join- and meet-irreducibles with their extended paths.
    Irreducibles {
        #[command(flatten)]
        input: Input,
    },
    /// The path, cw-extended and ccw-extended labels of every cover.
    Labels {
        #[command(flatten)]
        input: Input,
    },
    /// Elements ordered by inclusion of core label sets.
    CoreLabelOrder {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Count intervals by length.
    Intervals {
        #[command(flatten)]
        input: Input,
        /// Only count linear intervals (chains).
        #[arg(long)]
        linear: bool,
    },
    /// Quotients by M-moves.
    Quotient {
        #[command(flatten)]
        input: Input,
        /// Inner edge to cut.
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        edge: Option<usize>,
        /// Lattice sizes for every subset of inner edges.
        #[arg(long)]
        all: bool,
        /// With --all, list edge subsets only up to this many inner edges.
        #[arg(long, default_value_t = 6)]
        threshold: usize,
    },
    /// Cross-shaped grids.
    Grid {
        #[command(subcommand)]
        action: GridAction,
    },
    /// Compare two lattice or poset JSON files; exits 0 iff isomorphic.
    Iso { a: String, b: String },
}

#[derive(Subcommand)]
enum GridAction {
    /// Report connectivity and nesting violations.
    Check { input: Option<String> },
    /// List all maximal fillings.
    Fillings { input: Option<String> },
    /// The cross-Tamari lattice.
    Lattice {
        input: Option<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// The framed graph of the grid with its deterministic proper labeling.
    ToGraph { input: Option<String> },
}

#[derive(Serialize)]
struct QuotientDoc {
    graph: GraphDoc,
    lattice: LatticeDoc,
    class_of: Vec<usize>,
    classes: Vec<(usize, usize)>,
}

fn read_text(path: Option<&str>) -> Result<String> {
    match path {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Error::Precondition(format!("reading stdin: {e}")))?;
            Ok(s)
        }
        Some(p) => {
            fs::read_to_string(p).map_err(|e| Error::Precondition(format!("reading {p}: {e}")))
        }
    }
}

fn load_graph(input: &Input) -> Result<FramedGraph> {
    match &input.preset {
        Some(p) => preset(p),
        None => FramedGraph::from_json(&read_text(input.input.as_deref())?),
    }
}

fn load_lattice(input: &Input, limits: Limits) -> Result<FramingLattice> {
    FramingLattice::build(&load_graph(input)?, limits)
}

fn fmt_path(p: &Path) -> String {
    let edges: Vec<String> = p.edges.iter().map(ToString::to_string).collect();
    format!("{}:[{}]", p.start, edges.join(","))
}

fn fmt_ext(p: &ExtendedPath) -> String {
    fmt_path(&p.path)
}

fn json_line(v: &impl Serialize) -> String {
    serde_json::to_string(v).expect("serializable") + "\n"
}

fn parse_paths(g: &FramedGraph, text: &str) -> Result<Vec<Path>> {
    text.split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            let edges = s
                .split(',')
                .map(|e| {
                    e.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Precondition(format!("bad edge id {e:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Path::from_edges(g, edges)
        })
        .collect()
}

fn element_line(l: &FramingLattice, x: usize) -> String {
    format!(
        "{x} {}\n",
        serde_json::to_string(&l.clique_json(l.element(x))).expect("serializable")
    )
}

fn check_index(l: &FramingLattice, x: usize) -> Result<()> {
    if x >= l.size() {
        return Err(Error::Precondition(format!(
            "element {x} out of range (size {})",
            l.size()
        )));
    }
    Ok(())
}

fn poset_json(p: &Poset) -> Value {
    json!({ "size": p.size(), "covers": p.covers().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>() })
}

/// Reads either a lattice document (`elements` + object covers) or a poset
/// document (`size` + pair covers).
fn load_poset(path: &str) -> Result<Poset> {
    let text = read_text(Some(path))?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| Error::schema("document", e.to_string()))?;
    let covers = v
        .get("covers")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::schema("covers", "missing array"))?;
    let size = match (v.get("size"), v.get("elements")) {
        (Some(s), _) => {
            s.as_u64()
                .ok_or_else(|| Error::schema("size", "not an integer"))? as usize
        }
        (None, Some(e)) => e
            .as_array()
            .ok_or_else(|| Error::schema("elements", "not an array"))?
            .len(),
        _ => return Err(Error::schema("size", "need `size` or `elements`")),
    };
    let pair = |c: &Value| -> Option<(usize, usize)> {
        match c {
            Value::Array(a) if a.len() == 2 => {
                Some((a[0].as_u64()? as usize, a[1].as_u64()? as usize))
            }
            Value::Object(o) => Some((
                o.get("lo")?.as_u64()? as usize,
                o.get("hi")?.as_u64()? as usize,
            )),
            _ => None,
        }
    };
    let pairs = covers
        .iter()
        .map(|c| pair(c).ok_or_else(|| Error::schema("covers", "bad cover entry")))
        .collect::<Result<Vec<_>>>()?;
    Poset::from_relation(size, pairs)
}

fn load_grid(input: Option<&str>) -> Result<CrossGrid> {
    CrossGrid::from_json(&read_text(input)?)
}

fn labeling_json(l: &ProperLabeling) -> Value {
    json!({
        "columns": l.columns.iter().map(|(x, k)| [*x as i64, *k as i64]).collect::<Vec<_>>(),
        "rows": l.rows.iter().map(|(y, k)| [*y as i64, *k as i64]).collect::<Vec<_>>(),
    })
}

fn check_props(l: &FramingLattice, props: &str) -> Result<(String, bool)> {
    let mut out = String::new();
    let mut ok = true;
    for prop in props.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let pass = match prop {
            "lattice" => l.poset().is_lattice(),
            "semidistributive" => order::check_semidistributive(l.tables()?).holds(),
            "polygons" => l.polygons().is_ok(),
            "hh" => l.check_hh()?.holds(),
            "triangle-free" => l.is_triangle_free(),
            "ccw" => {
                (0..l.size()).all(|x| (0..l.size()).all(|y| l.leq(x, y) == l.leq_by_routes(x, y)))
            }
            "join-meet" => {
                let t = l.tables()?;
                let mut good = true;
                for x in 0..l.size() {
                    for y in x..l.size() {
                        good &= l.join(x, y)? == t.join(x, y) && l.meet(x, y)? == t.meet(x, y);
                    }
                }
                good
            }
            other => return Err(Error::Precondition(format!("unknown property {other:?}"))),
        };
        ok &= pass;
        out.push_str(&format!("{} {prop}\n", if pass { "PASS" } else { "FAIL" }));
    }
    Ok((out, ok))
}

/// Output text plus the exit code to use after printing it.
fn run(cli: Cli) -> Result<(String, u8)> {
    let limits = Limits {
        max_routes: cli.max_routes,
        max_paths: cli.max_paths,
        max_elements: cli.max_elements,
    };
    let out = match cli.command {
        Command::Build {
            preset: p,
            reverse_graph: rg,
            reverse_framing: rf,
        } => {
            let mut g = preset(&p)?;
            if rg {
                g = reverse_graph(&g);
            }
            if rf {
                g = reverse_framing(&g);
            }
            g.to_json() + "\n"
        }
        Command::Validate { input } => {
            let text = read_text(input.as_deref())?;
            let doc: GraphDoc = serde_json::from_str(&text)
                .map_err(|e| Error::schema("document", e.to_string()))?;
            let report = validate(&doc);
            if let Some(v) = report.violations.first() {
                let mut out = String::new();
                for v in &report.violations {
                    out.push_str(&format!("{}: {v}\n", v.field()));
                }
                print!("{out}");
                return Err(Error::schema(v.field(), v.to_string()));
            }
            "valid\n".into()
        }
        Command::Routes { input, format } => {
            let g = load_graph(&input)?;
            let space = framing_core::cliques::RouteSpace::new(g, limits)?;
            match format {
                Format::Json => {
                    json_line(&space.routes().iter().map(|r| &r.edges).collect::<Vec<_>>())
                }
                _ => (0..space.route_count())
                    .map(|r| {
                        let mark = if space.is_exceptional(r) { " *" } else { "" };
                        format!(
                            "{r} {}{mark}\n",
                            serde_json::to_string(&space.route(r).edges).expect("serializable")
                        )
                    })
                    .collect(),
            }
        }
        Command::Cliques { input, format } => {
            let l = load_lattice(&input, limits)?;
            match format {
                Format::Json => json_line(
                    &(0..l.size())
                        .map(|x| l.clique_json(l.element(x)))
                        .collect::<Vec<_>>(),
                ),
                _ => (0..l.size()).map(|x| element_line(&l, x)).collect(),
            }
        }
        Command::Lattice {
            input,
            format,
            labels: kind,
        } => {
            let l = load_lattice(&input, limits)?;
            match format {
                Format::Json => l.to_json() + "\n",
                Format::Dot => l.to_dot(|c| {
                    kind.map(|k| {
                        let e = labels::edge_labels(&l, c);
                        match k {
                            LabelKind::Path => fmt_path(&e.path),
                            LabelKind::CwExt => fmt_ext(&e.cw),
                            LabelKind::CcwExt => fmt_ext(&e.ccw),
                        }
                    })
                }),
                Format::Text => {
                    let mut out = format!("elements {}\ncovers {}\n", l.size(), l.covers().len());
                    for c in l.covers() {
                        out.push_str(&format!("{} < {}\n", c.lo, c.hi));
                    }
                    out
                }
            }
        }
        Command::Check { input, props } => {
            let l = load_lattice(&input, limits)?;
            let (out, ok) = check_props(&l, &props)?;
            if !ok {
                print!("{out}");
                return Err(Error::Structural("some properties failed".into()));
            }
            out
        }
        Command::Join { input, x, y } => {
            let l = load_lattice(&input, limits)?;
            check_index(&l, x)?;
            check_index(&l, y)?;
            element_line(&l, l.join(x, y)?)
        }
        Command::Meet { input, x, y } => {
            let l = load_lattice(&input, limits)?;
            check_index(&l, x)?;
            check_index(&l, y)?;
            element_line(&l, l.meet(x, y)?)
        }
        Command::Cmin { input, paths } => {
            let l = load_lattice(&input, limits)?;
            let s = parse_paths(l.graph(), &paths)?;
            element_line(&l, l.c_min(&s)?)
        }
        Command::Cmax { input, paths } => {
            let l = load_lattice(&input, limits)?;
            let s = parse_paths(l.graph(), &paths)?;
            element_line(&l, l.c_max(&s)?)
        }
        Command::Irreducibles { input } => {
            let l = load_lattice(&input, limits)?;
            let mut out = String::new();
            for (p, x) in labels::join_irreducibles(&l)? {
                out.push_str(&format!("join {x} {}\n", fmt_ext(&p)));
            }
            for (p, x) in labels::meet_irreducibles(&l)? {
                out.push_str(&format!("meet {x} {}\n", fmt_ext(&p)));
            }
            out
        }
        Command::Labels { input } => {
            let l = load_lattice(&input, limits)?;
            l.covers()
                .iter()
                .map(|c| {
                    let e = labels::edge_labels(&l, c);
                    format!(
                        "{} {} {} {} {}\n",
                        c.lo,
                        c.hi,
                        fmt_path(&e.path),
                        fmt_ext(&e.cw),
                        fmt_ext(&e.ccw)
                    )
                })
                .collect()
        }
        Command::CoreLabelOrder { input, format } => {
            let l = load_lattice(&input, limits)?;
            let clo = labels::core_label_order(&l)?;
            let set_text = |x: usize| {
                clo.sets[x]
                    .iter()
                    .map(fmt_path)
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            match format {
                Format::Json => {
                    let sets: Vec<Vec<String>> = clo
                        .sets
                        .iter()
                        .map(|s| s.iter().map(fmt_path).collect())
                        .collect();
                    let mut v = poset_json(&clo.poset);
                    v["elements"] = json!(sets);
                    json_line(&v)
                }
                Format::Dot => poset_dot(&clo.poset, |x| x.to_string(), |_, _| None),
                Format::Text => {
                    let mut out = String::new();
                    for x in 0..clo.sets.len() {
                        out.push_str(&format!("{x} {{{}}}\n", set_text(x)));
                    }
                    for &(a, b) in clo.poset.covers() {
                        out.push_str(&format!("{a} < {b}\n"));
                    }
                    out
                }
            }
        }
        Command::Intervals { input, linear } => {
            let l = load_lattice(&input, limits)?;
            let counts = if linear {
                l.count_linear_intervals()
            } else {
                let ranks = l.poset().ranks();
                let mut c = BTreeMap::new();
                for x in 0..l.size() {
                    for y in 0..l.size() {
                        if l.leq(x, y) {
                            *c.entry(ranks[y] - ranks[x]).or_insert(0) += 1;
                        }
                    }
                }
                c
            };
            order::format_counts(&counts) + "\n"
        }
        Command::Quotient {
            input,
            edge,
            all,
            threshold,
        } => {
            let g = load_graph(&input)?;
            if all {
                let diagram = quotients::move_diagram(&g, limits)?;
                if g.inner_edges().len() > threshold {
                    let sizes: Vec<usize> = diagram.iter().map(|m| m.size).collect();
                    json_line(&json!({ "inner_edges": g.inner_edges(), "sizes": sizes }))
                } else {
                    json_line(&json!({ "inner_edges": g.inner_edges(), "subsets": diagram }))
                }
            } else {
                let e = edge.expect("clap requires --edge without --all");
                let l = FramingLattice::build(&g, limits)?;
                let q = quotients::quotient_lattice(&l, e)?;
                json_line(&QuotientDoc {
                    graph: q.mv.graph.to_doc(),
                    lattice: q.target.to_document(),
                    class_of: q.classes.class_of,
                    classes: q.classes.intervals,
                })
            }
        }
        Command::Grid { action } => match action {
            GridAction::Check { input } => {
                let text = read_text(input.as_deref())?;
                let doc: cross_tamari::GridDoc = serde_json::from_str(&text)
                    .map_err(|e| Error::schema("points", e.to_string()))?;
                let pts: Vec<(i32, i32)> = doc.points.iter().map(|&[x, y]| (x, y)).collect();
                let report = cross_tamari::validate_grid(&pts);
                if let Some(v) = report.violations.first() {
                    let lines: String =
                        report.violations.iter().map(|v| format!("{v}\n")).collect();
                    print!("{lines}");
                    return Err(Error::Precondition(format!("not a cross-shaped grid: {v}")));
                }
                let d = CrossGrid::new(pts)?;
                let (a, b) = d.shape();
                let l = cross_tamari::proper_labeling(&d);
                format!(
                    "valid columns={a} rows={b}\n{}",
                    json_line(&labeling_json(&l))
                )
            }
            GridAction::Fillings { input } => {
                let d = load_grid(input.as_deref())?;
                cross_tamari::maximal_fillings(&d, limits.max_elements)?
                    .iter()
                    .map(|f| json_line(&f.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>()))
                    .collect()
            }
            GridAction::Lattice { input, format } => {
                let d = load_grid(input.as_deref())?;
                let ct = cross_tamari::cross_tamari_lattice(&d, limits.max_elements)?;
                match format {
                    Format::Dot => poset_dot(&ct.poset, |x| x.to_string(), |_, _| None),
                    _ => {
                        let mut v = poset_json(&ct.poset);
                        v["elements"] = json!(ct
                            .fillings
                            .iter()
                            .map(|f| f.iter().map(|&(x, y)| [x, y]).collect::<Vec<_>>())
                            .collect::<Vec<_>>());
                        json_line(&v)
                    }
                }
            }
            GridAction::ToGraph { input } => {
                let d = load_grid(input.as_deref())?;
                let gg = cross_tamari::grid_graph(&d, &cross_tamari::proper_labeling(&d))?;
                gg.graph.to_json() + "\n"
            }
        },
        Command::Iso { a, b } => {
            let (p, q) = (load_poset(&a)?, load_poset(&b)?);
            return Ok(
                match poset_isomorphic(&p, &q, ISO_CAP.max(limits.max_elements))? {
                    Some(_) => ("isomorphic\n".into(), 0),
                    None => ("not isomorphic\n".into(), 1),
                },
            );
        }
    };
    Ok((out, 0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: precondition: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli) {
        Ok((out, code)) => {
            let mut stdout = io::stdout().lock();
            let _ = stdout.write_all(out.as_bytes());
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {}: {}", e.kind(), e.to_string().replace('\n', " "));
            ExitCode::from(1)
        }
    }
}
