use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use pfaffian_tree::io::{parse_graph_json, parse_link_json, GraphInput, LabelMap, LinkInput};
use pfaffian_tree::linkinv::{conway_c2m2, conway_cm1, LinkData, LinkingMatrix};
use pfaffian_tree::pfaffian::{
    determinant_integer, pf_combinatorial, pf_numeric, pf_row_development, Matrix, SkewMatrix,
};
use pfaffian_tree::relations::{
    complete_square, contraction_deletion_check, four_term_check, square_recursive,
    three_term_check,
};
use pfaffian_tree::treepoly::{
    epsilon_sum_complete, kirchhoff_poly, pfaffian_tree_poly, tree_generating_function,
};
use pfaffian_tree::{
    tree_monomial, AntisymPoly, CommPoly, Error, Monomial, OrientationClass, Ring,
    ThreeGraph,
};

#[derive(Parser)]
#[command(name = "pftree", version, about = "Signed spanning-tree polynomials of 3-graphs")]
struct Cli {
    /// Worker threads for parallel enumeration (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the tree polynomial of a 3-graph (or the Kirchhoff polynomial of a graph)
    Poly {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1)]
        pivot: usize,
        #[arg(long, value_enum, default_value_t = PolyMethod::Pfaffian)]
        method: PolyMethod,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List spanning trees with their signs
    Trees {
        #[command(flatten)]
        source: Source,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run identity suites
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long, default_value_t = 7)]
        max_m: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Conway coefficients from linking data
    Link {
        #[arg(long)]
        input: PathBuf,
    },
    /// Print P_m² or one of its coefficients
    Square {
        #[arg(long)]
        m: usize,
        #[arg(long, value_enum, default_value_t = SquareMethod::Recursive)]
        method: SquareMethod,
        /// Print only the coefficient of this monomial, e.g. `y[1,2,3]^2`
        #[arg(long)]
        monomial: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Use the complete 3-graph on M vertices
    #[arg(long, value_name = "M")]
    complete: Option<usize>,
    /// Read a graph from a JSON file
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolyMethod {
    Pfaffian,
    Trees,
    EpsilonSum,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SquareMethod {
    Recursive,
    Direct,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    MainTheorem,
    Pfaffian,
    FourTerm,
    ThreeTerm,
    Contraction,
    Square,
    Link,
    All,
}

enum Failure {
    Input(String),
    Identity(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) => Failure::Identity(e.to_string()),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome<T> = Result<T, Failure>;

fn identity(ok: bool, what: impl FnOnce() -> String) -> Outcome<()> {
    if ok {
        Ok(())
    } else {
        Err(Failure::Identity(what()))
    }
}

fn load(source: &Source) -> Outcome<(GraphInput, bool)> {
    match (&source.complete, &source.input) {
        (Some(m), None) => Ok((
            GraphInput::Three { graph: ThreeGraph::complete(*m)?, labels: LabelMap::identity(*m) },
            true,
        )),
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            Ok((parse_graph_json(&text)?, false))
        }
        _ => Err(Failure::Input("give exactly one of --complete or --input".into())),
    }
}

fn comm_json(p: &CommPoly) -> String {
    let terms: Vec<_> = p
        .terms()
        .map(|(vars, c)| json!({"coeff": c.to_string(), "vars": vars}))
        .collect();
    serde_json::Value::Array(terms).to_string()
}

fn cmd_poly(source: &Source, pivot: usize, method: PolyMethod, format: Format) -> Outcome<String> {
    let (input, complete) = load(source)?;
    match input {
        GraphInput::Three { graph, labels } => {
            let m = graph.vertex_count();
            let pf = pfaffian_tree_poly(&graph, pivot)?;
            let trees = tree_generating_function(&graph, &OrientationClass::canonical(m))?;
            identity(pf == trees, || "Pfaffian and tree sum differ".into())?;
            if complete && m % 2 == 1 {
                identity(epsilon_sum_complete(m)? == pf, || "ε-sum differs from the Pfaffian".into())?;
            } else if method == PolyMethod::EpsilonSum && !complete {
                return Err(Failure::Input("--method epsilon-sum needs --complete".into()));
            }
            let p = labels.to_labels(&pf);
            Ok(match format {
                Format::Text => p.to_string(),
                Format::Json => p.to_json(),
            })
        }
        GraphInput::Simple { graph, .. } => {
            if method == PolyMethod::EpsilonSum {
                return Err(Failure::Input("--method epsilon-sum applies to 3-graphs only".into()));
            }
            let det = kirchhoff_poly(&graph, pivot)?;
            let mut trees = CommPoly::constant(BigInt::from(0));
            for t in graph.spanning_trees() {
                trees = trees.add(&CommPoly::monomial(t.iter().map(|i| i + 1).collect(), BigInt::from(1)));
            }
            identity(det == trees, || "Kirchhoff determinant and tree sum differ".into())?;
            Ok(match format {
                Format::Text => det.to_string(),
                Format::Json => comm_json(&det),
            })
        }
    }
}

fn bracket(vs: &[usize]) -> String {
    let parts: Vec<String> = vs.iter().map(|v| v.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn cmd_trees(source: &Source, format: Format) -> Outcome<String> {
    let (input, _) = load(source)?;
    let rows: Vec<(i32, Vec<Vec<usize>>)> = match input {
        GraphInput::Three { graph, labels } => {
            let o = OrientationClass::canonical(graph.vertex_count());
            graph
                .spanning_trees()
                .iter()
                .map(|t| {
                    let sub = graph.spanning_subgraph(t)?;
                    let mono = tree_monomial(&sub, &o)?;
                    let (_, c) = mono
                        .terms()
                        .next()
                        .ok_or_else(|| Failure::Identity("tree monomial vanished".into()))?;
                    let sign = if *c > BigInt::from(0) { 1 } else { -1 };
                    let edges = sub.edges().iter().map(|e| e.map(|v| labels.label(v)).to_vec()).collect();
                    Ok((sign, edges))
                })
                .collect::<Outcome<_>>()?
        }
        GraphInput::Simple { graph, labels } => graph
            .spanning_trees()
            .iter()
            .map(|t| {
                let edges = t.iter().map(|&i| graph.edges()[i].map(|v| labels.label(v)).to_vec()).collect();
                (1, edges)
            })
            .collect(),
    };
    Ok(match format {
        Format::Text => rows
            .iter()
            .map(|(s, edges)| {
                let mut line = format!("{s:+}");
                for e in edges {
                    line.push(' ');
                    line.push_str(&bracket(e));
                }
                line
            })
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Json => {
            let v: Vec<_> = rows.iter().map(|(s, e)| json!({"sign": s, "edges": e})).collect();
            serde_json::Value::Array(v).to_string()
        }
    })
}

fn odd_range(lo: usize, max_m: usize) -> Vec<usize> {
    (lo..=max_m).filter(|m| m % 2 == 1).collect()
}

fn list(ms: &[usize]) -> String {
    ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ")
}

fn suite_main_theorem(max_m: usize, rng: &mut ChaCha8Rng) -> Outcome<String> {
    let ms = odd_range(1, max_m);
    for &m in &ms {
        let g = ThreeGraph::complete(m)?;
        let trees = tree_generating_function(&g, &OrientationClass::canonical(m))?;
        for p in 1..=m {
            identity(pfaffian_tree_poly(&g, p)? == trees, || format!("Γ_{m}, pivot {p}"))?;
        }
    }
    let mut count = 0;
    for _ in 0..20 {
        let m = 1 + rng.gen_range(0..max_m.max(1));
        let edges = ThreeGraph::complete(m)?
            .edges()
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        let g = ThreeGraph::new(m, edges)?;
        let trees = tree_generating_function(&g, &OrientationClass::canonical(m))?;
        let p = 1 + rng.gen_range(0..m);
        identity(pfaffian_tree_poly(&g, p)? == trees, || format!("random 3-graph on {m} vertices"))?;
        count += 1;
    }
    Ok(format!("complete m = {}; {count} random 3-graphs", list(&ms)))
}

fn suite_pfaffian(rng: &mut ChaCha8Rng) -> Outcome<String> {
    for k in 0..100 {
        let n = 2 * rng.gen_range(1..=5);
        let a = SkewMatrix::from_upper(n, |_, _| BigInt::from(rng.gen_range(-5..=5)));
        let pf = pf_row_development(&a)?;
        identity(pf_numeric(&a.map(|x| x.clone().into()))? == pf.clone().into(), || {
            format!("matrix {k}: elimination Pfaffian differs")
        })?;
        if n <= 8 {
            identity(pf_combinatorial(&a)? == pf, || format!("matrix {k}: matching sum differs"))?;
        }
        identity(&pf * &pf == determinant_integer(a.matrix())?, || format!("matrix {k}: Pf² ≠ det"))?;
        let s = Matrix::from_fn(n, n, |_, _| BigInt::from(rng.gen_range(-3..=3)));
        let lhs = pf_row_development(&a.congruence(&s)?)?;
        identity(lhs == determinant_integer(&s)? * &pf, || format!("matrix {k}: Pf(SᵀAS) ≠ det S · Pf A"))?;
    }
    Ok("100 random skew matrices".into())
}

fn suite_four_term(max_m: usize) -> Outcome<String> {
    let ms = odd_range(5, max_m);
    for &m in &ms {
        for a in 1..=m {
            for b in a + 1..=m {
                for c in b + 1..=m {
                    for d in c + 1..=m {
                        identity(four_term_check(m, [a, b, c, d])?, || format!("m = {m}, {{{a},{b},{c},{d}}}"))?;
                    }
                }
            }
        }
    }
    Ok(format!("m = {}", list(&ms)))
}

fn suite_three_term(max_m: usize) -> Outcome<String> {
    let ms = odd_range(3, max_m);
    for &m in &ms {
        identity(three_term_check(m)?, || format!("m = {m}"))?;
    }
    Ok(format!("m = {}", list(&ms)))
}

fn suite_contraction(max_m: usize) -> Outcome<String> {
    let ms = odd_range(3, max_m);
    for &m in &ms {
        let g = ThreeGraph::complete(m)?;
        let o = OrientationClass::canonical(m);
        for (idx, e) in g.edges().iter().enumerate() {
            for oriented in [*e, [e[0], e[2], e[1]]] {
                identity(contraction_deletion_check(&g, &o, idx, oriented)?, || {
                    format!("Γ_{m}, edge {}", bracket(&oriented))
                })?;
            }
        }
    }
    Ok(format!("every edge of Γ_m, m = {}", list(&ms)))
}

fn suite_square(max_m: usize) -> Outcome<String> {
    let ms = odd_range(1, max_m);
    for &m in &ms {
        identity(square_recursive(m)? == complete_square(m)?, || format!("recursive P_{m}² differs"))?;
    }
    Ok(format!("m = {}", list(&ms)))
}

fn suite_link(max_m: usize, rng: &mut ChaCha8Rng) -> Outcome<String> {
    for m in 2..=max_m {
        let mut lk = LinkingMatrix::new(m);
        for i in 1..=m {
            for j in i + 1..=m {
                lk.set(i, j, BigInt::from(rng.gen_range(-4..=4)))?;
            }
        }
        conway_cm1(&lk)?;
    }
    let ms = odd_range(3, max_m);
    for &m in &ms {
        for _ in 0..10 {
            let mut d = LinkData::new(m);
            for i in 1..=m {
                for j in i + 1..=m {
                    for k in j + 1..=m {
                        d.set(i, j, k, BigInt::from(rng.gen_range(-3..=3)))?;
                    }
                }
            }
            conway_c2m2(&d)?;
        }
    }
    Ok(format!("linking matrices m ≤ {max_m}; triple linking m = {}", list(&ms)))
}

fn cmd_verify(suite: Suite, max_m: usize, seed: u64) -> Outcome<String> {
    if max_m == 0 {
        return Err(Failure::Input("--max-m must be positive".into()));
    }
    let chosen: Vec<Suite> = if suite == Suite::All {
        vec![
            Suite::MainTheorem,
            Suite::Pfaffian,
            Suite::FourTerm,
            Suite::ThreeTerm,
            Suite::Contraction,
            Suite::Square,
            Suite::Link,
        ]
    } else {
        vec![suite]
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = String::new();
    let mut failures = Vec::new();
    for s in chosen {
        let name = s.to_possible_value().expect("named suite").get_name().to_string();
        let result = match s {
            Suite::MainTheorem => suite_main_theorem(max_m, &mut rng),
            Suite::Pfaffian => suite_pfaffian(&mut rng),
            Suite::FourTerm => suite_four_term(max_m),
            Suite::ThreeTerm => suite_three_term(max_m),
            Suite::Contraction => suite_contraction(max_m),
            Suite::Square => suite_square(max_m),
            Suite::Link => suite_link(max_m, &mut rng),
            Suite::All => unreachable!(),
        };
        match result {
            Ok(detail) => writeln!(report, "{name}: pass ({detail})").unwrap(),
            Err(Failure::Identity(msg)) => {
                writeln!(report, "{name}: FAIL ({msg})").unwrap();
                failures.push(name);
            }
            Err(e) => return Err(e),
        }
    }
    let report = report.trim_end().to_string();
    if failures.is_empty() {
        Ok(report)
    } else {
        println!("{report}");
        Err(Failure::Identity(format!("failed suites: {}", failures.join(", "))))
    }
}

fn cmd_link(path: &PathBuf) -> Outcome<String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    match parse_link_json(&text)? {
        LinkInput::Linking(lk) => {
            let m = lk.components();
            Ok(format!("c_{} = {}", m - 1, conway_cm1(&lk)?))
        }
        LinkInput::Triple(d) => {
            let m = d.components();
            let r = conway_c2m2(&d)?;
            Ok(format!("P_{m} = {}, c_{} = {}", r.pm, 2 * m - 2, r.value))
        }
    }
}

fn cmd_square(m: usize, method: SquareMethod, monomial: Option<&str>, format: Format) -> Outcome<String> {
    if m.is_multiple_of(2) {
        return Err(Failure::Input(format!("m must be odd (got {m})")));
    }
    let recursive = square_recursive(m)?;
    let direct = complete_square(m)?;
    identity(recursive == direct, || format!("recursive and direct P_{m}² differ"))?;
    let p: &AntisymPoly = match method {
        SquareMethod::Recursive => &recursive,
        SquareMethod::Direct => &direct,
    };
    if let Some(text) = monomial {
        let mono: Monomial = text.parse()?;
        return Ok(p.coefficient(&mono).to_string());
    }
    Ok(match format {
        Format::Text => p.to_string(),
        Format::Json => p.to_json(),
    })
}

fn run(cli: Cli) -> Outcome<String> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Input(e.to_string()))?;
    }
    match cli.command {
        Command::Poly { source, pivot, method, format } => cmd_poly(&source, pivot, method, format),
        Command::Trees { source, format } => cmd_trees(&source, format),
        Command::Verify { suite, max_m, seed } => cmd_verify(suite, max_m, seed),
        Command::Link { input } => cmd_link(&input),
        Command::Square { m, method, monomial, format } => {
            cmd_square(m, method, monomial.as_deref(), format)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            if !out.is_empty() {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Identity(msg)) => {
            eprintln!("identity failure: {msg}");
            ExitCode::from(2)
        }
    }
}
