//! `metakappa` — minimal product sets in finite metacyclic groups.
//!
//! Subcommands: `analyze` (subgroup lattice report), `table` (kappa/mu
//! grids as CSV or JSON), `verify` (sweep the K_{m,n} family, checking
//! witnesses and solver values against kappa), and `counterexample`
//! (reproduce the order-21 group where mu > kappa).
//!
//! Exit codes: 0 success, 2 usage or group-specification error, 3
//! verification failure.

mod cache;
mod records;

use std::path::PathBuf;
use std::time::Duration;

use anyhow::{anyhow, bail, Result};
use clap::{Args, Parser, Subcommand};

use metakappa_core::bounds::BoundsContext;
use metakappa_core::lattice;
use metakappa_core::presentation::{
    all_kmn, cyclic_params, kmn_params, validate_params, GroupTable, PresentationParams,
};
use metakappa_core::solver::{self, SearchBudget, SearchStatus};
use metakappa_core::witness;

use cache::ResultCache;
use records::{encode_set, ResultRecord};

#[derive(Parser)]
#[command(
    name = "metakappa",
    about = "Minimal product sets mu_G(r,s) and the kappa bound in finite metacyclic groups",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report the subgroup lattice, normal orders, and quotient
    /// presentations of one group.
    Analyze {
        #[command(flatten)]
        group: GroupSpec,
    },
    /// Emit kappa/mu rows for a grid of (r, s) queries.
    Table {
        #[command(flatten)]
        group: GroupSpec,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Restrict to specific cells, e.g. `5:9,6:8`; default is the
        /// full r ≤ s grid.
        #[arg(long, value_name = "r:s,...")]
        pairs: Option<String>,
        /// Output format.
        #[arg(long, default_value = "csv")]
        format: Format,
        /// Append-only JSONL result cache; hits are re-verified.
        #[arg(long, value_name = "PATH")]
        cache: Option<PathBuf>,
        /// Include witness sets in the output rows.
        #[arg(long)]
        witnesses: bool,
    },
    /// Sweep every valid K_{m,n} with 2mn ≤ the bound: construct and
    /// check a witness for each cell, and (unless --witness-only) certify
    /// mu = kappa with the solver where the budget allows.
    Verify {
        #[command(flatten)]
        budget: BudgetArgs,
        /// Largest group order 2mn to include.
        #[arg(long, default_value_t = 24)]
        max_order: u32,
        /// Skip the solver; check witness bounds only.
        #[arg(long)]
        witness_only: bool,
    },
    /// Reproduce the pairs where mu > kappa in the order-21 group
    /// C7⋊C3.
    Counterexample {
        #[command(flatten)]
        budget: BudgetArgs,
        /// Pairs to check; default `5:9,6:8`.
        #[arg(long, value_name = "r:s,...", default_value = "5:9,6:8")]
        pairs: String,
    },
}

/// Exactly one way of naming the group.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupSpec {
    /// K_{m,n} presentation parameters `m,n,g`.
    #[arg(long, value_name = "m,n,g")]
    kmn: Option<String>,
    /// Raw presentation tuple `m,n_exp,g,h`.
    #[arg(long, value_name = "m,nexp,g,h")]
    raw: Option<String>,
    /// Named group: dihedral:n, dicyclic:n, cyclic:N, or c7xc3.
    #[arg(long, value_name = "NAME")]
    named: Option<String>,
}

#[derive(Args)]
struct BudgetArgs {
    /// Node limit per solver call.
    #[arg(long, default_value_t = u64::MAX)]
    budget_nodes: u64,
    /// Time limit per solver call, in seconds.
    #[arg(long, default_value_t = 60)]
    budget_seconds: u64,
}

impl BudgetArgs {
    fn to_budget(&self) -> SearchBudget {
        SearchBudget {
            max_nodes: self.budget_nodes,
            max_time: Duration::from_secs(self.budget_seconds),
            ..Default::default()
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_ints(text: &str, expected: usize, what: &str) -> Result<Vec<u32>> {
    let parts: Vec<u32> = text
        .split(',')
        .map(|p| p.trim().parse::<u32>().map_err(|e| anyhow!("{what}: {e}")))
        .collect::<Result<_>>()?;
    if parts.len() != expected {
        bail!("{what}: expected {expected} comma-separated integers, got {}", parts.len());
    }
    Ok(parts)
}

fn parse_pairs(text: &str) -> Result<Vec<(u32, u32)>> {
    text.split(',')
        .map(|p| {
            let (r, s) = p
                .split_once(':')
                .ok_or_else(|| anyhow!("pair `{p}` is not of the form r:s"))?;
            Ok((r.trim().parse()?, s.trim().parse()?))
        })
        .collect()
}

impl GroupSpec {
    fn resolve(&self) -> Result<PresentationParams> {
        if let Some(text) = &self.kmn {
            let v = parse_ints(text, 3, "--kmn")?;
            return Ok(kmn_params(v[0], v[1], v[2])?.params);
        }
        if let Some(text) = &self.raw {
            let v = parse_ints(text, 4, "--raw")?;
            return Ok(validate_params(v[0], v[1], v[2], v[3])?);
        }
        let name = self.named.as_deref().expect("clap enforces one spec");
        match name.split_once(':') {
            Some(("dihedral", n)) => Ok(kmn_params(n.parse()?, 1, 0)?.params),
            Some(("dicyclic", n)) => {
                let n: u32 = n.parse()?;
                Ok(kmn_params(2 * n, 1, n)?.params)
            }
            Some(("cyclic", n)) => Ok(cyclic_params(n.parse()?)?),
            None if name == "c7xc3" => Ok(validate_params(7, 3, 0, 2)?),
            _ => bail!("unknown group name `{name}` (dihedral:n, dicyclic:n, cyclic:N, c7xc3)"),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Analyze { group } => cmd_analyze(&group.resolve()?),
        Command::Table {
            group,
            budget,
            pairs,
            format,
            cache,
            witnesses,
        } => {
            let pairs = pairs.as_deref().map(parse_pairs).transpose()?;
            cmd_table(
                &group.resolve()?,
                &budget.to_budget(),
                pairs,
                format,
                cache,
                witnesses,
            )
        }
        Command::Verify {
            budget,
            max_order,
            witness_only,
        } => cmd_verify(&budget.to_budget(), max_order, witness_only),
        Command::Counterexample { budget, pairs } => {
            cmd_counterexample(&budget.to_budget(), &parse_pairs(&pairs)?)
        }
    }
}

fn cmd_analyze(params: &PresentationParams) -> Result<i32> {
    println!("group: {params}");
    println!("tuple (m, n_exp, g, h): {params:?}");
    println!("order: {}", params.order());
    println!("abelian: {}", if params.is_abelian() { "yes" } else { "no" });

    println!("\nsubgroups (k, l, beta) via Ψ:");
    for d in lattice::enumerate_gamma(params) {
        let sub = lattice::psi(params, &d)?;
        if sub.is_normal {
            let q = lattice::quotient_params(params, &d)?;
            println!("  {d:?}  normal      quotient {q:?}");
        } else {
            println!("  {d:?}  not normal");
        }
    }

    let h_orders = lattice::subgroup_orders(params)?;
    let n_orders = lattice::normal_orders(params)?;
    println!("\nsubgroup orders H(G): {h_orders:?}");
    println!("normal orders   N(G): {n_orders:?}");

    if let Some((m, n, g)) = params.kmn_view() {
        println!("\nK_{{{m},{n}}} with g = {g}: fast normal-order predicate vs lattice");
        let mut agree = true;
        let order = params.order();
        for k in (1..=order).filter(|k| order % k == 0) {
            let fast = lattice::kmn_normal_order(m, n, g, k)?;
            let from_lattice = n_orders.contains(&k);
            let mark = if fast == from_lattice { "agree" } else { "MISMATCH" };
            agree &= fast == from_lattice;
            println!("  k = {k:>3}: predicate {fast:>5}, lattice {from_lattice:>5}  {mark}");
        }
        if !agree {
            eprintln!("error: predicate and lattice disagree");
            return Ok(3);
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn solve_cell(
    table: &GroupTable,
    ctx: &BoundsContext,
    budget: &SearchBudget,
    cache: &mut Option<ResultCache>,
    r: u32,
    s: u32,
    witnesses: bool,
) -> Result<ResultRecord> {
    if let Some(c) = cache {
        if let Some(mut hit) = c.lookup(table, ctx, r, s) {
            if !witnesses {
                hit.witness_a.clear();
                hit.witness_b.clear();
            }
            return Ok(hit);
        }
    }
    let params = table.params();
    let profile = ctx.profile(r, s);
    let result = solver::exact_mu(table, r, s, budget)?;
    let status = match result.status {
        SearchStatus::Optimal => "optimal",
        SearchStatus::UpperBoundOnly => "upper_bound_only",
    };
    let mut record = ResultRecord {
        m: params.m(),
        n_exp: params.n_exp(),
        g: params.g(),
        h: params.h(),
        r,
        s,
        kappa: profile.kappa,
        dkappa: profile.dkappa,
        nkappa: profile.nkappa,
        mu: result.value,
        status: status.to_string(),
        witness_a: encode_set(params, &result.witness.a),
        witness_b: encode_set(params, &result.witness.b),
    };
    if let Some(c) = cache {
        c.append(&record)?;
    }
    if !witnesses {
        record.witness_a.clear();
        record.witness_b.clear();
    }
    Ok(record)
}

fn cmd_table(
    params: &PresentationParams,
    budget: &SearchBudget,
    pairs: Option<Vec<(u32, u32)>>,
    format: Format,
    cache_path: Option<PathBuf>,
    witnesses: bool,
) -> Result<i32> {
    let table = GroupTable::build(*params)?;
    let ctx = BoundsContext::new(params)?;
    let order = params.order();

    let mut cells: Vec<(u32, u32)> = match pairs {
        Some(pairs) => {
            for &(r, s) in &pairs {
                if r < 1 || r > order || s < 1 || s > order {
                    bail!("pair {r}:{s} is out of range for order {order}");
                }
            }
            pairs
        }
        None => (1..=order)
            .flat_map(|r| (r..=order).map(move |s| (r, s)))
            .collect(),
    };
    cells.sort();
    cells.dedup();

    let mut cache = cache_path.as_deref().map(ResultCache::open).transpose()?;
    let mut records = Vec::with_capacity(cells.len());
    let mut sandwich_ok = true;
    for (r, s) in cells {
        let record = solve_cell(&table, &ctx, budget, &mut cache, r, s, witnesses)?;
        if record.status == "optimal"
            && !(record.dkappa <= record.mu && record.mu <= record.nkappa)
        {
            eprintln!(
                "error: sandwich violated at ({r}, {s}): dkappa {} mu {} nkappa {}",
                record.dkappa, record.mu, record.nkappa
            );
            sandwich_ok = false;
        }
        records.push(record);
    }

    let mut out = std::io::stdout().lock();
    match format {
        Format::Csv => records::write_csv(&records, &mut out)?,
        Format::Json => records::write_json(&records, &mut out)?,
    }
    Ok(if sandwich_ok { 0 } else { 3 })
}

fn cmd_verify(budget: &SearchBudget, max_order: u32, witness_only: bool) -> Result<i32> {
    let mut groups = 0u32;
    let mut cells = 0u64;
    let mut solved = 0u64;
    let mut timed_out = 0u64;
    for kmn in all_kmn(max_order) {
        let params = kmn.params;
        let ctx = BoundsContext::new(&params)?;
        let table = GroupTable::build(params)?;
        let order = params.order();
        for r in 1..=order {
            for s in r..=order {
                let kappa = ctx.profile(r, s).kappa;
                let pair = match witness::construct_witness(&params, r, s) {
                    Ok(pair) => pair,
                    Err(e) => {
                        println!(
                            "FAIL: K_{{{},{}}} g={} at ({r},{s}): witness construction: {e}",
                            kmn.m, kmn.n, kmn.g
                        );
                        return Ok(3);
                    }
                };
                if pair.product_size > kappa {
                    println!(
                        "FAIL: K_{{{},{}}} g={} at ({r},{s}): witness |AB| = {} > kappa = {kappa}",
                        kmn.m, kmn.n, kmn.g, pair.product_size
                    );
                    return Ok(3);
                }
                if !witness_only {
                    let res = solver::exact_mu(&table, r, s, budget)?;
                    match res.status {
                        SearchStatus::Optimal => {
                            if res.value != kappa {
                                println!(
                                    "FAIL: K_{{{},{}}} g={} at ({r},{s}): mu = {} ≠ kappa = {kappa}",
                                    kmn.m, kmn.n, kmn.g, res.value
                                );
                                return Ok(3);
                            }
                            solved += 1;
                        }
                        SearchStatus::UpperBoundOnly => timed_out += 1,
                    }
                }
                cells += 1;
            }
        }
        groups += 1;
    }
    println!(
        "PASS: {groups} groups, {cells} cells; witnesses all within kappa{}",
        if witness_only {
            String::new()
        } else {
            format!("; solver certified {solved} cells ({timed_out} over budget)")
        }
    );
    Ok(0)
}

fn cmd_counterexample(budget: &SearchBudget, pairs: &[(u32, u32)]) -> Result<i32> {
    let params = validate_params(7, 3, 0, 2)?;
    let table = GroupTable::build(params)?;
    let ctx = BoundsContext::new(&params)?;
    println!("group: {params} (order 21)");
    let mut all_proven = true;
    for &(r, s) in pairs {
        let profile = ctx.profile(r, s);
        let res = solver::exact_mu(&table, r, s, budget)?;
        let verdict = match res.status {
            SearchStatus::Optimal if res.value > profile.kappa => "mu > kappa proven",
            SearchStatus::Optimal => {
                all_proven = false;
                "mu = kappa (no counterexample here)"
            }
            SearchStatus::UpperBoundOnly => {
                all_proven = false;
                "inconclusive (budget exhausted)"
            }
        };
        println!(
            "({r},{s}): kappa = {}, Nkappa = {}, mu {} {} [{}] — {verdict}",
            profile.kappa,
            profile.nkappa,
            if res.status == SearchStatus::Optimal { "=" } else { "≤" },
            res.value,
            match res.status {
                SearchStatus::Optimal => "optimal",
                SearchStatus::UpperBoundOnly => "upper_bound_only",
            },
        );
    }
    Ok(if all_proven { 0 } else { 3 })
}
