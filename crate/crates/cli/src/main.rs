use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use sch_cli::verify::{verify, Section, Severity, VerifyConfig, VerifyReport, EXIT_BUDGET, EXIT_MISMATCH, EXIT_USAGE};
use sch_homology::complexes::{betti, ComplexSpec, Flavor, Reduction, DEFAULT_BUDGET};
use sch_homology::invariants::{module_invariants, Acting, ModuleKind};
use sch_homology::liealg::{build_algebra, check_tables, AlgebraName, LieAlgebra};
use sch_homology::linalg::{Method, RankStrategy};
use sch_homology::multilinear::{named_chain, ChainName};
use sch_homology::series::{distinguishes_gamma_options, predicted_series, GammaDegree, SeriesOptions, Target};

#[derive(Parser)]
#[command(name = "sch", version, about = "Exact Lie and Leibniz homology of Schrödinger and Galilei algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Basis and bracket-table checks.
    Algebra {
        #[command(subcommand)]
        action: AlgebraCmd,
    },
    /// Named chains.
    Chains {
        #[command(subcommand)]
        action: ChainsCmd,
    },
    /// Invariants of one module in one degree.
    Invariants(InvariantsArgs),
    /// Betti numbers of one complex.
    Homology(HomologyArgs),
    Series {
        #[command(subcommand)]
        action: SeriesCmd,
    },
    /// Verification suites.
    Verify {
        #[arg(value_enum)]
        what: VerifyWhat,
        #[command(flatten)]
        args: VerifyArgs,
    },
}

#[derive(Subcommand)]
enum AlgebraCmd {
    Info {
        #[arg(long, default_value = "schrodinger")]
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "table")]
        emit: Emit,
    },
}

#[derive(Subcommand)]
enum ChainsCmd {
    Show {
        #[arg(long)]
        name: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "table")]
        emit: Emit,
    },
}

#[derive(Subcommand)]
enum SeriesCmd {
    Predict {
        #[arg(long)]
        target: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "2n-2")]
        gamma_degree: GammaChoice,
        #[arg(long)]
        beta_included: bool,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
        #[arg(long, value_enum, default_value = "table")]
        emit: Emit,
    },
}

#[derive(Args)]
struct InvariantsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "hbar")]
    acting: String,
    #[arg(long, default_value = "wedge")]
    module: String,
    #[arg(long)]
    k: usize,
    #[arg(long, value_enum, default_value = "table")]
    emit: Emit,
}

#[derive(Args)]
struct HomologyArgs {
    #[arg(long, default_value = "schrodinger")]
    algebra: String,
    #[arg(long)]
    n: usize,
    /// ce-trivial, ce-ideal-adjoint, ce-adjoint or leibniz
    #[arg(long, default_value = "leibniz")]
    flavor: String,
    #[arg(long)]
    max_degree: usize,
    #[arg(long, default_value_t = 0)]
    min_degree: usize,
    /// none, weight-zero or all-weights; the default depends on the flavor
    #[arg(long)]
    reduction: Option<String>,
    #[command(flatten)]
    rank: RankArgs,
    #[arg(long, value_enum, default_value = "table")]
    emit: Emit,
    #[arg(long)]
    stable: bool,
}

#[derive(Args)]
struct RankArgs {
    /// Rational arithmetic instead of random primes.
    #[arg(long)]
    exact: bool,
    #[arg(long, default_value_t = 2)]
    primes: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// auto, dense, sparse or blackbox
    #[arg(long, default_value = "auto")]
    method: String,
    /// Bytes.
    #[arg(long, default_value_t = 4 << 30)]
    memory_cap: usize,
    /// Largest block, in columns, that will be materialized.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Args)]
struct VerifyArgs {
    /// A single n or a range `a..b` (inclusive).
    #[arg(long, default_value = "2..3")]
    n: String,
    #[arg(long, default_value_t = 4)]
    square_max_degree: usize,
    #[arg(long)]
    lie_max_degree: Option<usize>,
    #[arg(long, default_value_t = 4)]
    leibniz_max_degree: usize,
    #[arg(long, default_value_t = 4)]
    galilei_max_degree: usize,
    #[command(flatten)]
    rank: RankArgs,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "table")]
    emit: Emit,
    /// Zero all timings so reports compare byte for byte.
    #[arg(long)]
    stable: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyWhat {
    Lemmas,
    Theorem,
    Galilei,
    All,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GammaChoice {
    #[value(name = "2n-2")]
    TwoNMinus2,
    #[value(name = "2n-1")]
    TwoNMinus1,
    Both,
}

struct Failure {
    code: u8,
    message: String,
}

fn usage(message: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_USAGE as u8, message: message.to_string() }
}

fn runtime(e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_MISMATCH as u8, message: e.to_string() }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE as u8 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn check_n(n: usize) -> Result<(), Failure> {
    if n < 2 {
        Err(usage(format!("n must be at least 2, got {n}")))
    } else {
        Ok(())
    }
}

fn json_out<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn csv_out<R: Serialize>(rows: impl IntoIterator<Item = R>) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(runtime)?;
    }
    let bytes = w.into_inner().map_err(runtime)?;
    String::from_utf8(bytes).map_err(runtime)
}

fn print(s: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes());
}

fn algebra(name: &str, n: usize) -> Result<Arc<LieAlgebra>, Failure> {
    check_n(n)?;
    let name: AlgebraName = name.parse().map_err(usage)?;
    build_algebra(name, n).map(Arc::new).map_err(|e| usage(e.to_string()))
}

fn strategy(r: &RankArgs) -> Result<RankStrategy, Failure> {
    let method: Method = r.method.parse().map_err(usage)?;
    let s = if r.exact { RankStrategy::exact() } else { RankStrategy::modular(r.primes, r.seed) };
    Ok(s.with_method(method).with_memory_cap(r.memory_cap))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Algebra { action: AlgebraCmd::Info { name, n, emit } } => algebra_info(&name, n, emit),
        Command::Chains { action: ChainsCmd::Show { name, n, emit } } => chains_show(&name, n, emit),
        Command::Invariants(a) => invariants(a),
        Command::Homology(a) => homology(a),
        Command::Series { action: SeriesCmd::Predict { target, n, gamma_degree, beta_included, max_degree, emit } } => {
            series_predict(&target, n, gamma_degree, beta_included, max_degree, emit)
        }
        Command::Verify { what, args } => verify_cmd(what, args),
    }
}

fn algebra_info(name: &str, n: usize, emit: Emit) -> Result<u8, Failure> {
    let g = algebra(name, n)?;
    let tables = check_tables(&g);
    let labels: Vec<String> = (0..g.dim()).map(|i| g.label(i)).collect();
    let nonzero = (0..g.dim())
        .flat_map(|i| (i + 1..g.dim()).map(move |j| (i, j)))
        .filter(|&(i, j)| !g.basis_bracket(i, j).is_empty())
        .count();
    let ok = tables.all_passed() && g.is_antisymmetric() && g.satisfies_jacobi();
    match emit {
        Emit::Json => print(&json_out(&json!({
            "algebra": g.name().to_string(),
            "n": n,
            "dim": g.dim(),
            "basis": labels,
            "nonzero_brackets": nonzero,
            "jacobi": g.satisfies_jacobi(),
            "tables": tables,
        }))),
        Emit::Csv => print(&csv_out(tables.relations.iter())?),
        Emit::Table => {
            print(&format!("{} n={} dim={}\nbasis: {}\n", g.name(), n, g.dim(), labels.join(" ")));
            print(&format!("nonzero brackets: {nonzero}\nrelations: {} checked, all passed: {}\n", tables.relations.len(), tables.all_passed()));
        }
    }
    Ok(if ok { 0 } else { EXIT_MISMATCH as u8 })
}

fn chains_show(name: &str, n: usize, emit: Emit) -> Result<u8, Failure> {
    check_n(n)?;
    let name: ChainName = name.parse().map_err(usage)?;
    let c = named_chain(name, n).map_err(runtime)?;
    let terms: Vec<_> = c
        .terms()
        .into_iter()
        .map(|(m, v)| json!({"monomial": m, "coeff": v.to_string()}))
        .collect();
    match emit {
        Emit::Json => print(&json_out(&json!({"name": name, "n": n, "terms": terms, "rendered": c.render()}))),
        Emit::Csv => print(&csv_out(c.terms().into_iter().map(|(m, v)| [m.join(" "), v.to_string()]))?),
        Emit::Table => print(&format!("{name}_{n} = {}\n", c.render())),
    }
    Ok(0)
}

fn invariants(a: InvariantsArgs) -> Result<u8, Failure> {
    let g = algebra("schrodinger", a.n)?;
    let acting: Acting = a.acting.parse().map_err(usage)?;
    let module: ModuleKind = a.module.parse().map_err(usage)?;
    let r = module_invariants(&g, acting, module, a.k).map_err(runtime)?;
    match a.emit {
        Emit::Json => print(&json_out(&r)),
        Emit::Csv => print(&csv_out(r.rendered.iter().enumerate().map(|(i, b)| (i, b)))?),
        Emit::Table => {
            print(&format!("{} k={} dim={}\n", r.module, r.k, r.dim));
            for b in &r.rendered {
                print(&format!("  {b}\n"));
            }
        }
    }
    Ok(0)
}

fn homology(a: HomologyArgs) -> Result<u8, Failure> {
    let g = algebra(&a.algebra, a.n)?;
    let flavor: Flavor = a.flavor.parse().map_err(usage)?;
    if a.min_degree > a.max_degree {
        return Err(usage("min degree exceeds max degree"));
    }
    let mut spec = ComplexSpec::new(g, flavor, a.max_degree).with_budget(a.rank.budget);
    if let Some(r) = &a.reduction {
        spec = spec.with_reduction(r.parse::<Reduction>().map_err(usage)?);
    }
    let report = betti(&spec, a.min_degree..=a.max_degree, &strategy(&a.rank)?).map_err(runtime)?;
    let report = if a.stable { report.without_timings() } else { report };
    match a.emit {
        Emit::Json => print(&json_out(&report)),
        Emit::Csv => print(&csv_out(report.degrees.iter().map(|d| (d.k, d.dim, d.full_dim, d.rank_dk, d.rank_dk1, d.betti)))?),
        Emit::Table => {
            print(&format!("{} n={} {} ({:?})\n", report.algebra, report.n, report.flavor, report.reduction));
            print("  k        dim   rank d_k  rank d_k+1  betti\n");
            for d in &report.degrees {
                let show = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
                print(&format!(
                    "{:>3} {:>10} {:>10} {:>11} {:>6}\n",
                    d.k,
                    d.dim,
                    show(d.rank_dk),
                    show(d.rank_dk1),
                    d.betti.map_or("-".to_string(), |b| b.to_string())
                ));
            }
        }
    }
    let skipped = report.degrees.iter().any(|d| d.skipped.is_some());
    Ok(if skipped { EXIT_BUDGET as u8 } else { 0 })
}

fn series_predict(target: &str, n: usize, gamma: GammaChoice, beta: bool, max: usize, emit: Emit) -> Result<u8, Failure> {
    check_n(n)?;
    let target: Target = target.parse().map_err(usage)?;
    let options: Vec<GammaDegree> = match gamma {
        GammaChoice::TwoNMinus2 => vec![GammaDegree::TwoNMinus2],
        GammaChoice::TwoNMinus1 => vec![GammaDegree::TwoNMinus1],
        GammaChoice::Both => vec![GammaDegree::TwoNMinus2, GammaDegree::TwoNMinus1],
    };
    let mut columns = Vec::new();
    for g in &options {
        let opts = SeriesOptions { beta_included: beta, gamma_degree: *g };
        let s = predicted_series(target, n, opts, max).map_err(runtime)?;
        columns.push((format!("gamma_{}", g.degree(n)), s));
    }
    if !distinguishes_gamma_options(target, n, max) {
        eprintln!("warning: truncation {max} is too small to tell the gamma-degree options apart");
    }
    match emit {
        Emit::Json => {
            let obj: serde_json::Map<_, _> = columns.iter().map(|(k, s)| (k.clone(), json!(s.coefficients()))).collect();
            print(&json_out(&json!({"target": target, "n": n, "beta_included": beta, "series": obj})));
        }
        Emit::Csv | Emit::Table => {
            let sep = if emit == Emit::Csv { "," } else { "\t" };
            let mut s = String::from("degree");
            for (name, _) in &columns {
                s.push_str(sep);
                s.push_str(name);
            }
            s.push('\n');
            for k in 0..=max {
                s.push_str(&k.to_string());
                for (_, p) in &columns {
                    s.push_str(sep);
                    s.push_str(&p.coeff(k).to_string());
                }
                s.push('\n');
            }
            print(&s);
        }
    }
    Ok(0)
}

fn parse_range(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || usage(format!("bad n range `{s}`"));
    match s.split_once("..") {
        Some((a, b)) => Ok((a.trim().parse().map_err(|_| bad())?, b.trim().trim_start_matches('=').parse().map_err(|_| bad())?)),
        None => {
            let n = s.trim().parse().map_err(|_| bad())?;
            Ok((n, n))
        }
    }
}

fn verify_cmd(what: VerifyWhat, a: VerifyArgs) -> Result<u8, Failure> {
    let (n_min, n_max) = parse_range(&a.n)?;
    let cfg = VerifyConfig {
        n_min,
        n_max,
        square_max_degree: a.square_max_degree,
        lie_max_degree: a.lie_max_degree,
        leibniz_max_degree: a.leibniz_max_degree,
        galilei_max_degree: a.galilei_max_degree,
        primes: if a.rank.exact { 0 } else { a.rank.primes },
        seed: a.rank.seed,
        memory_cap: a.rank.memory_cap,
        budget_columns: a.rank.budget,
        stable: a.stable,
    };
    cfg.validate().map_err(usage)?;
    let sections: &[Section] = match what {
        VerifyWhat::Lemmas => &[Section::Lemmas],
        VerifyWhat::Theorem => &[Section::Theorem],
        VerifyWhat::Galilei => &[Section::Galilei],
        VerifyWhat::All => &Section::ALL,
    };
    let report = verify(&cfg, sections).map_err(runtime)?;
    let text = render_report(&report, a.emit)?;
    match &a.output {
        Some(path) => {
            fs::write(path, json_out(&report)).map_err(runtime)?;
            if a.emit != Emit::Json {
                print(&text);
            }
        }
        None => print(&text),
    }
    Ok(report.exit_code() as u8)
}

fn render_report(report: &VerifyReport, emit: Emit) -> Result<String, Failure> {
    Ok(match emit {
        Emit::Json => json_out(report),
        Emit::Csv => csv_out(report.findings.iter())?,
        Emit::Table => {
            let mut s = String::new();
            for step in &report.steps {
                s.push_str(&format!("step {:<16} n={} {} ms\n", step.name, step.n, step.elapsed_ms));
            }
            for f in &report.findings {
                let tag = match f.severity {
                    Severity::Hard => "MISMATCH",
                    Severity::Soft => "finding",
                    Severity::Budget => "BUDGET",
                };
                s.push_str(&format!("{tag:<8} [{}] {}\n", f.step, f.message));
            }
            s.push_str(&format!("passed: {}\n", report.passed));
            s
        }
    })
}
