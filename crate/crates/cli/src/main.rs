//! `lzcrystal`: explore level-zero crystals of type `A_n^(1)` from the shell.

use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use lzcrystal::acceptance::{self, SuiteConfig};
use lzcrystal::crystal::{explore, Crystal, CrystalGraph, TensorCrystal, TensorRule, TieBreak, Window};
use lzcrystal::kr::{parse_tensor, AffinizedKr, GradeSign};
use lzcrystal::lab::{character_to_json, depth_window, graded_character, Conventions, Lab, LambdaSpec};
use lzcrystal::partitions::Partition;
use lzcrystal::schur::{schur, SchurMethod};
use lzcrystal::weyl::{element_orbit, is_extremal, ExtremalityReport};
use lzcrystal::{CartanDatum, Polynomial, TensorElement};

#[derive(Parser)]
#[command(name = "lzcrystal", version, about = "Level-zero extremal weight crystals of type A_n^(1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mutation {
    TieBreak,
    GradeSign,
}

#[derive(Subcommand)]
enum Command {
    /// Windowed crystal graph of Aff(B^{i,1}) or of W′.
    Enumerate {
        #[arg(long)]
        rank: usize,
        /// `kr:i` for Aff(B^{i,1}), `w:m1,..,mn` for W′.
        #[arg(long)]
        crystal: String,
        /// Grade bounds `min,max` (per factor for W′).
        #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
        window: String,
        #[arg(long, default_value_t = Window::DEFAULT_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        /// `binary` or `signature`.
        #[arg(long, default_value = "binary")]
        rule: String,
    },
    /// Windowed component of a tensor element such as `[1|m=0]⊗[1,2|m=0]`.
    Component {
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0,0")]
        window: String,
        #[arg(long, default_value_t = Window::DEFAULT_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Decides whether an element is extremal.
    ExtremalCheck {
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// `S_w b` for all Weyl group elements up to a given length.
    WeylOrbit {
        #[arg(long)]
        rank: usize,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Monomial expansion of a Schur polynomial.
    Schur {
        /// Parts, e.g. `2,1`; empty for the empty shape.
        #[arg(long, default_value = "")]
        shape: String,
        #[arg(long)]
        vars: usize,
        /// `ssyt` or `jt`.
        #[arg(long, default_value = "ssyt")]
        method: String,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Component, extremal, index-set and character reports for λ = Σ m_i ϖ_i.
    Lab {
        #[arg(long = "type", default_value = "a")]
        kind: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        lambda: String,
        /// Grades range over `[-K, 0]`.
        #[arg(long, default_value_t = 2)]
        grade_window: usize,
        #[arg(long, default_value_t = 2)]
        max_schur: usize,
        #[arg(long, default_value_t = Window::DEFAULT_CAP)]
        cap: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Runs the acceptance suite.
    Verify {
        /// Comma-separated criterion ids or keys, e.g. `schur` or `1,7`.
        #[arg(long)]
        only: Option<String>,
        /// Injects a convention fault into criteria 4 to 7.
        #[arg(long, value_enum)]
        mutate: Option<Mutation>,
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        #[arg(long, default_value_t = 2)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        max_schur: usize,
    },
}

/// Invalid invocations exit with this code.
const USAGE: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}

fn datum(rank: usize) -> anyhow::Result<CartanDatum> {
    Ok(CartanDatum::affine_a(rank)?)
}

fn parse_list(s: &str) -> anyhow::Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<usize>().with_context(|| format!("{t:?} is not a nonnegative integer")))
        .collect()
}

fn parse_window(s: &str) -> anyhow::Result<(i64, i64)> {
    let (a, b) = s.split_once(',').context("window must be written min,max")?;
    let (a, b): (i64, i64) = (a.trim().parse()?, b.trim().parse()?);
    if a > b {
        bail!("window minimum {a} exceeds maximum {b}");
    }
    Ok((a, b))
}

fn tensor_for(
    d: &CartanDatum,
    b: &TensorElement<lzcrystal::AffineElement>,
) -> anyhow::Result<TensorCrystal<AffinizedKr>> {
    let factors = b
        .factors()
        .iter()
        .map(|x| AffinizedKr::new(d.clone(), x.column.height()))
        .collect::<lzcrystal::Result<Vec<_>>>()?;
    Ok(TensorCrystal::new(factors)?)
}

fn table<C: Crystal>(graph: &CrystalGraph<C::Elem>, crystal: &C) -> String {
    let mut out = String::from("id\telement\tweight\tgrades\n");
    for (id, x) in graph.nodes().iter().enumerate() {
        let mark = if graph.truncated().contains(&id) { " *" } else { "" };
        let _ = writeln!(
            out,
            "{id}\t{}\t{}\t{:?}{mark}",
            crystal.label(x),
            crystal.weight(x),
            crystal.grades(x)
        );
    }
    out.push_str("src\tdst\tcolor\n");
    for e in graph.edges() {
        let _ = writeln!(out, "{}\t{}\t{}", e.src, e.dst, e.color);
    }
    out
}

fn emit_graph<C: Crystal>(graph: &CrystalGraph<C::Elem>, crystal: &C, format: Format) -> anyhow::Result<()> {
    if graph.cap_hit() {
        eprintln!("warning: node cap reached after {} nodes", graph.len());
    }
    if !graph.truncated().is_empty() {
        eprintln!("warning: {} nodes have neighbours outside the window", graph.truncated().len());
    }
    match format {
        Format::Dot => print!("{}", graph.to_dot(crystal)),
        Format::Json => println!("{}", serde_json::to_string_pretty(&graph.to_json(crystal))?),
        Format::Table => print!("{}", table(graph, crystal)),
    }
    Ok(())
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Enumerate { rank, crystal, window, cap, format, rule } => {
            let d = datum(rank)?;
            let (lo, hi) = parse_window(&window)?;
            let rule: TensorRule = rule.parse()?;
            if let Some(i) = crystal.strip_prefix("kr:") {
                let i: usize = i.trim().parse().context("kr:<i> expects a node index")?;
                let kr = AffinizedKr::new(d, i)?;
                let g = explore(&kr, &kr.u_varpi(), Window::grades(lo, hi).with_cap(cap));
                emit_graph(&g, &kr, format)?;
            } else if let Some(m) = crystal.strip_prefix("w:") {
                let spec = LambdaSpec::new(d, parse_list(m)?)?;
                let conventions = Conventions { rule, ..Default::default() };
                let lab = Lab::new(spec, conventions)?;
                let g = lab.enumerate_b0(Window::per_factor(lo, hi).with_cap(cap));
                emit_graph(&g, lab.crystal(), format)?;
            } else {
                bail!("--crystal must be kr:<i> or w:<m1,..,mn>");
            }
        }
        Command::Component { rank, element, window, cap, format } => {
            let d = datum(rank)?;
            let (lo, hi) = parse_window(&window)?;
            let b = parse_tensor(&element, rank)?;
            let t = tensor_for(&d, &b)?;
            let g = explore(&t, &b, Window::per_factor(lo, hi).with_cap(cap));
            emit_graph(&g, &t, format)?;
        }
        Command::ExtremalCheck { rank, element, format } => {
            let d = datum(rank)?;
            let b = parse_tensor(&element, rank)?;
            let t = tensor_for(&d, &b)?;
            let report = is_extremal(&t, &b);
            let json = match &report {
                ExtremalityReport::Extremal { closure } => serde_json::json!({
                    "element": b.to_string(),
                    "weight": t.weight(&b),
                    "extremal": true,
                    "closure": closure.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                }),
                ExtremalityReport::NotExtremal { witness, color, reason } => serde_json::json!({
                    "element": b.to_string(),
                    "weight": t.weight(&b),
                    "extremal": false,
                    "witness": witness.to_string(),
                    "color": color,
                    "reason": reason,
                }),
            };
            match format {
                Format::Table => match report {
                    ExtremalityReport::Extremal { closure } => {
                        println!("{b}: extremal (closure of {} classical elements)", closure.len())
                    }
                    ExtremalityReport::NotExtremal { witness, reason, .. } => {
                        println!("{b}: not extremal; at {witness}: {reason}")
                    }
                },
                _ => println!("{}", serde_json::to_string_pretty(&json)?),
            }
        }
        Command::WeylOrbit { rank, element, max_len, format } => {
            let d = datum(rank)?;
            let b = parse_tensor(&element, rank)?;
            let t = tensor_for(&d, &b)?;
            let orbit = element_orbit(&t, &b, max_len)?;
            match format {
                Format::Table => {
                    println!("word\telement\tweight");
                    for p in &orbit {
                        let word: Vec<String> = p.word.iter().map(|i| format!("s{i}")).collect();
                        let word = if word.is_empty() { "e".to_string() } else { word.join(" ") };
                        println!("{word}\t{}\t{}", p.element, p.weight);
                    }
                }
                _ => println!("{}", serde_json::to_string_pretty(&orbit)?),
            }
        }
        Command::Schur { shape, vars, method, format } => {
            let rho = Partition::new(parse_list(&shape)?)?;
            let method: SchurMethod = method.parse()?;
            let p: Polynomial = schur(&rho, vars, method);
            match format {
                Format::Table => println!("{p}"),
                _ => println!("{}", serde_json::to_string_pretty(&p.to_json())?),
            }
        }
        Command::Lab { kind, rank, lambda, grade_window, max_schur, cap, format } => {
            if !kind.eq_ignore_ascii_case("a") {
                bail!("only type a is supported, got {kind:?}");
            }
            let spec = LambdaSpec::new(datum(rank)?, parse_list(&lambda)?)?;
            lab_report(spec, grade_window, max_schur, cap, format)?;
        }
        Command::Verify { only, mutate, max_rank, depth, max_schur } => {
            if max_rank == 0 {
                bail!("--max-rank must be positive");
            }
            let ids = match only {
                Some(s) => acceptance::select(&s)?,
                None => acceptance::CRITERIA.iter().map(|c| c.0).collect(),
            };
            let mut conventions = Conventions::default();
            match mutate {
                Some(Mutation::TieBreak) => conventions.tie_break = TieBreak::Flipped,
                Some(Mutation::GradeSign) => conventions.grade_sign = GradeSign::Raising,
                None => {}
            }
            let config = SuiteConfig {
                max_rank,
                depth,
                max_schur,
                conventions,
                ..SuiteConfig::default()
            };
            let mut all = true;
            for id in ids {
                let report = acceptance::run(id, &config);
                all &= report.passed;
                println!("{report}");
            }
            return Ok(if all { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn lab_report(spec: LambdaSpec, depth: usize, max_schur: usize, cap: usize, format: Format) -> anyhow::Result<()> {
    let lab = Lab::new(spec, Conventions::default())?;
    let g = lab.enumerate_b0(depth_window(depth).with_cap(cap));
    if g.cap_hit() {
        eprintln!("warning: node cap reached after {} nodes", g.len());
    }
    let t = lab.crystal();
    let extremal = lab.extremal_in_component(&g);
    let index = lab.index_set(&g, max_schur)?;
    let character = graded_character(t, g.nodes().iter());
    let connectivity = lab.connectivity(depth, 2);
    match format {
        Format::Table => {
            println!("lambda = {}  (weight {})", lab.spec(), lab.spec().weight());
            println!("u' = {}", lab.u_prime());
            println!();
            println!("component census: {} elements, {} at the window boundary", g.len(), g.truncated().len());
            println!(
                "connectivity: {} checked, {} connected, {} undetermined",
                connectivity.checked,
                connectivity.connected,
                connectivity.undetermined.len()
            );
            println!();
            println!("extremal census: {} elements", extremal.len());
            for (b, w) in &extremal {
                println!("  {b}\t{w}");
            }
            println!();
            println!("graded character (weight mod delta, degree: count):");
            for ((w, k), c) in &character {
                println!("  {:?}\t{k}\t{c}", w.lambda);
            }
            println!();
            println!("index set: {} pairs with |c0| <= {max_schur}", index.len());
            for img in &index {
                println!("  ({}, {}) -> {}", img.c0, img.element, img.realization);
            }
        }
        _ => {
            let json = serde_json::json!({
                "lambda": lab.spec().multiplicities(),
                "weight": lab.spec().weight(),
                "u_prime": lab.u_prime().to_string(),
                "component": {
                    "size": g.len(),
                    "boundary": g.truncated().len(),
                    "cap_hit": g.cap_hit(),
                },
                "connectivity": {
                    "checked": connectivity.checked,
                    "connected": connectivity.connected,
                    "undetermined": connectivity.undetermined,
                },
                "extremal": extremal
                    .iter()
                    .map(|(b, w)| serde_json::json!({ "element": b.to_string(), "weight": w }))
                    .collect::<Vec<_>>(),
                "character": character_to_json(&character),
                "index_set": index.iter().map(|i| i.to_json()).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&json)?);
        }
    }
    Ok(())
}
