use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::json;

use starfree::biclique::{count_biclique_with, lower_bound_from_count, sweep_lower_bounds_with, DpOptions};
use starfree::count::{brute_force_count_with, count_star_free_with, CountOptions, Engine};
use starfree::shearer::{upper_bound_b_with, BoundOptions};
use starfree::star::{f_with, FMethod};
use starfree::{par, Error, Execution, ForbidParams, Graph, Result, Verifier};

/// Bounds on the number of edge-colorings with no monochromatic star.
#[derive(Parser)]
#[command(name = "starfree", version)]
struct Cli {
    /// Run every engine on a single thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct RT {
    /// Number of colors.
    #[arg(long)]
    r: u32,
    /// Forbidden star size.
    #[arg(long)]
    t: u32,
}

impl RT {
    fn params(self) -> Result<ForbidParams> {
        ForbidParams::new(self.r, self.t)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Star count f(a).
    F {
        #[command(flatten)]
        rt: RT,
        #[arg(long)]
        a: u32,
        #[arg(long, default_value = "auto", value_parser = parse_method)]
        method: FMethod,
        #[arg(long)]
        json: bool,
    },
    /// Upper bound on the growth rate.
    Upper {
        #[command(flatten)]
        rt: RT,
        /// Significant digits of the decimal value.
        #[arg(long, default_value_t = 30)]
        precision: usize,
        #[arg(long)]
        json: bool,
    },
    /// Exact coloring count of one graph.
    Count {
        /// kbip:M,N | union:A+B | file:PATH | empty:N | path:N | cycle:N
        #[arg(long)]
        graph: String,
        #[command(flatten)]
        rt: RT,
        #[arg(long, value_enum, default_value_t = CountEngine::Auto)]
        engine: CountEngine,
        #[arg(long)]
        json: bool,
    },
    /// Exact coloring count of K_{m,n} and the lower bound it gives.
    Biclique {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        rt: RT,
        #[arg(long, value_enum, default_value_t = BicliqueEngine::Dp)]
        engine: BicliqueEngine,
        #[arg(long)]
        json: bool,
    },
    /// Lower bounds from every K_{m,n} up to a vertex budget.
    Sweep {
        #[command(flatten)]
        rt: RT,
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        json: bool,
    },
    /// Replay the reference values.
    Verify {
        #[arg(long)]
        json: bool,
    },
}

#[derive(ValueEnum, Clone, Copy)]
enum CountEngine {
    Auto,
    Brute,
    Backtrack,
}

#[derive(ValueEnum, Clone, Copy)]
enum BicliqueEngine {
    Dp,
    Brute,
}

fn parse_method(s: &str) -> std::result::Result<FMethod, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

fn run(cli: Cli) -> Result<i32> {
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    match cli.cmd {
        Cmd::F { rt, a, method, json } => {
            let p = rt.params()?;
            let f = f_with(&p, a, method)?;
            if json {
                print_json(&json!({
                    "r": p.r(), "t": p.t(), "a": a, "f": f.to_string(), "method": method.to_string(),
                }));
            } else {
                println!("{f}");
            }
        }
        Cmd::Upper { rt, precision, json } => {
            let p = rt.params()?;
            let opts = BoundOptions { precision, exec, ..BoundOptions::default() };
            let rep = upper_bound_b_with(&p, &opts)?;
            if json {
                print_json(&rep.to_json(true));
            } else {
                println!("params    {p}");
                println!("k         {}", rep.k);
                println!("a*        {}", rep.a_star);
                if !rep.ties.is_empty() {
                    println!("ties      {:?}", rep.ties);
                }
                println!("base      {}", starfree::numeric::format_rational(rep.base()));
                println!("exponent  {}", starfree::numeric::format_ratio_u64(&rep.exponent()));
                println!("value     {}", rep.value);
                println!("g(a, a), with g(a) = g(a, a)^a:");
                for (a, w) in &rep.edge_weights {
                    println!("  {a:>4}  {w}");
                }
            }
        }
        Cmd::Count { graph, rt, engine, json } => {
            let p = rt.params()?;
            let g = Graph::from_spec(&graph)?;
            let opts = CountOptions { exec, ..CountOptions::default() };
            let res = match engine {
                CountEngine::Brute => brute_force_count_with(&g, &p, &opts)?,
                CountEngine::Backtrack => count_star_free_with(&g, &p, &opts)?,
                CountEngine::Auto => match (count_star_free_with(&g, &p, &opts), g.as_complete_bipartite()) {
                    (Err(Error::Budget(_)), Some((m, n))) => {
                        let start = std::time::Instant::now();
                        let dp = DpOptions { exec, ..DpOptions::from_env() };
                        let count = count_biclique_with(m, n, &p, &dp)?;
                        starfree::count::CountResult {
                            vertices: g.vertex_count(),
                            edges: g.edge_count(),
                            max_degree: g.max_degree(),
                            params: p,
                            count,
                            engine: Engine::Dp,
                            elapsed: start.elapsed(),
                        }
                    }
                    (res, _) => res?,
                },
            };
            if json {
                print_json(&res.to_json());
            } else {
                println!("{}", res.count);
            }
        }
        Cmd::Biclique { m, n, rt, engine, json } => {
            let p = rt.params()?;
            let count: BigUint = match engine {
                BicliqueEngine::Dp => {
                    let dp = DpOptions { exec, ..DpOptions::from_env() };
                    count_biclique_with(m, n, &p, &dp)?
                }
                BicliqueEngine::Brute => {
                    let g = Graph::complete_bipartite(m, n)?;
                    let opts = CountOptions { exec, ..CountOptions::default() };
                    brute_force_count_with(&g, &p, &opts)?.count
                }
            };
            let bound = if count == BigUint::from(0u32) { None } else { Some(lower_bound_from_count(&count, m + n)?) };
            if json {
                print_json(&json!({
                    "m": m, "n": n, "r": p.r(), "t": p.t(),
                    "count": count.to_string(),
                    "bound": bound.as_ref().map(|b| b.to_string()),
                    "value": bound.as_ref().map(|b| b.to_fixed(4)).transpose()?,
                }));
            } else {
                println!("count  {count}");
                match bound {
                    Some(b) => println!("bound  {b} = {}", b.to_fixed(4)?),
                    None => println!("bound  none (no valid coloring)"),
                }
            }
        }
        Cmd::Sweep { rt, max_vertices, json } => {
            let p = rt.params()?;
            let dp = DpOptions { exec, ..DpOptions::from_env() };
            let sweep = sweep_lower_bounds_with(&p, max_vertices, &dp)?;
            if json {
                print_json(&sweep.to_json());
            } else {
                println!("{:>3} {:>3}  {:>30}  {:>10}", "m", "n", "count", "bound");
                for row in &sweep.rows {
                    let count = row.count.as_ref().map_or("-".to_string(), |c| c.to_string());
                    let bound = match (&row.bound, &row.skipped) {
                        (Some(b), _) => b.to_fixed(4)?,
                        (None, Some(_)) => "skipped".to_string(),
                        (None, None) => "-".to_string(),
                    };
                    println!("{:>3} {:>3}  {count:>30}  {bound:>10}", row.m, row.n);
                }
                if let Some(best) = sweep.best_row() {
                    let b = best.bound.as_ref().expect("best row has a bound");
                    println!("best: K_{{{},{}}} gives {} = {}", best.m, best.n, b, b.to_fixed(4)?);
                }
            }
        }
        Cmd::Verify { json } => {
            let rep = Verifier::default().execution(exec).run();
            if json {
                print_json(&rep.to_json());
            } else {
                print!("{}", rep.render());
            }
            return Ok(rep.exit_code());
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    par::init_threads_from_env();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
