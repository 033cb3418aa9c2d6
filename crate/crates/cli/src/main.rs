//! `projsys`: bounds, constructions and searches for codes with small
//! Singleton defect, from the command line.

mod output;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use output::{cell, Format, Report, Table};
use projsys::bounds::{self, BoundQuery, IntegralityMode, KappaEntry, KappaStatus};
use projsys::constructions::{self, ConstructionArgs, ConstructionId};
use projsys::search::{self, KappaVerdict, SearchConfig, DEFAULT_BUDGET};
use projsys::{verify, CodeParams, ProjectiveSystem};

const THREADS_ENV: &str = "PROJSYS_THREADS";

#[derive(Parser)]
#[command(name = "projsys", version, about = "Projective systems and codes with small Singleton defect")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "tsv")]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parameters of the code in a .gm file.
    Params {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Build a catalog construction and write it as .gm.
    Construct(ConstructCmd),
    /// Every upper and lower rule that fires, or a table over a range.
    Bounds(BoundsCmd),
    /// The counting identities at full or near-full length.
    Integrality {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        s: u64,
        /// full or near; inferred from n when omitted.
        #[arg(long)]
        mode: Option<String>,
    },
    /// κ(s, q), the largest dimension with a full-length code.
    Kappa(KappaCmd),
    /// Exhaustive search for the longest system.
    Search(SearchCmd),
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "paper-tables")]
        suite: String,
    },
}

#[derive(Args)]
struct ConstructCmd {
    /// Construction name, e.g. elliptic_quadric.
    name: String,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    s: Option<u64>,
    #[arg(long)]
    degree: Option<u64>,
    /// Input systems for `union` (exactly two).
    #[arg(long = "from")]
    from: Vec<PathBuf>,
    /// Where to write the .gm file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsCmd {
    #[arg(long, required_unless_present = "table")]
    k: Option<u64>,
    #[arg(long, required_unless_present = "table")]
    q: Option<u64>,
    #[arg(long, required_unless_present = "table")]
    s: Option<u64>,
    #[arg(long)]
    t: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
    /// 3 for m^s(k, q), 4 for m^s_t(k, q).
    #[arg(long, value_parser = clap::value_parser!(u8).range(3..=4), conflicts_with_all = ["k", "q", "s", "t", "d"])]
    table: Option<u8>,
    /// Ranges such as `k=3..6,q=2..9,s=0..3,t=0..2`.
    #[arg(long, requires = "table")]
    range: Option<String>,
}

#[derive(Args)]
struct KappaCmd {
    #[arg(long, required_unless_present = "table")]
    q: Option<u64>,
    #[arg(long, required_unless_present = "table")]
    s: Option<u64>,
    /// Settle open dimensions with constructions and search.
    #[arg(long)]
    search: bool,
    /// Node budget per searched dimension.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// The grid q = 2^b, s + 2 = 2^a with 2 ≤ a ≤ max(b, 2).
    #[arg(long, conflicts_with_all = ["q", "s"])]
    table: bool,
    /// Largest q in the grid.
    #[arg(long, default_value_t = 8192, requires = "table")]
    max_q: u64,
}

#[derive(Args)]
struct SearchCmd {
    #[arg(long)]
    k: usize,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    s: u64,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads; falls back to PROJSYS_THREADS, then to all cores.
    #[arg(long)]
    threads: Option<usize>,
    /// Skip the point symmetry and the bound engine.
    #[arg(long)]
    lex_only: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    let (report, code) = match run(&cli, &mut stdout) {
        Ok(r) => {
            let code = if r.ok { 0 } else { 1 };
            (r, code)
        }
        Err(e) => {
            let code_name = e
                .downcast_ref::<projsys::Error>()
                .map_or("Usage", projsys::Error::code);
            eprintln!("error: {code_name}: {e:#}");
            (error_report(code_name, &e), 2)
        }
    };
    if code == 2 && cli.format == Format::Tsv {
        return ExitCode::from(2);
    }
    match output::emit(&mut stdout, cli.format, cli.seed, &report) {
        // a closed pipe (`| head`) is the reader's choice, not a failure
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => {}
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Ok(()) => {}
    }
    ExitCode::from(code)
}

fn error_report(code: &str, e: &anyhow::Error) -> Report {
    let mut table = Table::new(output::ERROR_COLUMNS);
    table.push(vec![code.into(), format!("{e:#}")]);
    Report {
        command: "error",
        result: json!({ "error": code, "message": format!("{e:#}") }),
        table: Some(table),
        citations: Vec::new(),
        ok: false,
    }
}

fn run(cli: &Cli, out: &mut impl Write) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Params { input } => params(input),
        Command::Construct(c) => construct(c, cli.format, out),
        Command::Bounds(b) => match b.table {
            Some(n) => bounds_table(n, b.range.as_deref()),
            None => bounds_query(b),
        },
        Command::Integrality { n, k, q, s, mode } => integrality(*n, *k, *q, *s, mode.as_deref()),
        Command::Kappa(c) => kappa(c),
        Command::Search(c) => run_search(c),
        Command::Verify { suite } => run_verify(suite, cli.seed, cli.format, out),
    }
}

fn read_gm(path: &Path) -> anyhow::Result<ProjectiveSystem> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(ProjectiveSystem::from_gm(&text)?)
}

fn params_row(p: &CodeParams) -> Vec<String> {
    vec![
        p.n.to_string(),
        p.k.to_string(),
        p.q.to_string(),
        p.d.to_string(),
        p.d_perp.to_string(),
        p.s.to_string(),
        p.t.to_string(),
        p.k_perp.to_string(),
        p.projective.to_string(),
        p.degenerate.to_string(),
        p.griesmer_met.to_string(),
    ]
}

fn params(input: &Path) -> anyhow::Result<Report> {
    let p = read_gm(input)?.params();
    let mut table = Table::new(output::PARAMS_COLUMNS);
    table.push(params_row(&p));
    Ok(Report {
        command: "params",
        result: serde_json::to_value(p)?,
        table: Some(table),
        citations: Vec::new(),
        ok: true,
    })
}

fn construct(c: &ConstructCmd, format: Format, out: &mut impl Write) -> anyhow::Result<Report> {
    let id: ConstructionId = c.name.parse()?;
    let ps = if id == ConstructionId::Union {
        let [a, b] = c.from.as_slice() else {
            bail!("union needs exactly two --from files");
        };
        constructions::union(&read_gm(a)?, &read_gm(b)?)?
    } else {
        let q = c.q.ok_or_else(|| anyhow!("{id} needs --q"))?;
        let args = ConstructionArgs {
            q,
            k: c.k,
            s: c.s,
            degree: c.degree,
        };
        id.build(&args)?
    };
    let gm = ps.to_gm();
    let p = ps.params();
    let file = match &c.out {
        Some(path) => {
            fs::write(path, &gm).with_context(|| format!("writing {}", path.display()))?;
            Some(path.display().to_string())
        }
        None => {
            // in TSV mode the matrix owns stdout and the summary moves to stderr
            if format == Format::Tsv {
                out.write_all(gm.as_bytes())?;
                eprintln!("{}", output::header_line(output::PARAMS_COLUMNS));
                eprintln!("{}", output::tsv_line(&params_row(&p)));
            }
            return Ok(Report {
                command: "construct",
                result: json!({ "construction": id.name(), "params": p, "file": null, "gm": gm }),
                table: None,
                citations: Vec::new(),
                ok: true,
            });
        }
    };
    let mut table = Table::new(output::PARAMS_COLUMNS);
    table.push(params_row(&p));
    Ok(Report {
        command: "construct",
        result: json!({ "construction": id.name(), "params": p, "file": file }),
        table: Some(table),
        citations: Vec::new(),
        ok: true,
    })
}

fn bound_rows(table: &mut Table, results: &[bounds::BoundResult]) {
    for r in results {
        table.push(vec![
            serde_json::to_value(r.direction).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default(),
            r.value.to_string(),
            r.rule_id.into(),
            r.binding.to_string(),
            cell(r.citation),
            cell(r.conditions_used.join("; ")),
            r.witness.clone().unwrap_or_default(),
        ]);
    }
}

fn bounds_query(b: &BoundsCmd) -> anyhow::Result<Report> {
    let (Some(k), Some(q), Some(s)) = (b.k, b.q, b.s) else {
        bail!("--k, --q and --s are required");
    };
    let query = BoundQuery { k, q, s, t: b.t, d: b.d };
    let upper = bounds::upper_bounds(&query)?;
    let lower = bounds::lower_bounds(&query)?;
    let mut table = Table::new(output::BOUNDS_COLUMNS);
    bound_rows(&mut table, &upper);
    bound_rows(&mut table, &lower);
    let binding = |v: &[bounds::BoundResult]| v.iter().find(|r| r.binding).map(|r| r.value);
    let citations = output::citations(upper.iter().chain(&lower).map(|r| r.citation));
    Ok(Report {
        command: "bounds",
        result: json!({
            "query": query,
            "upper": binding(&upper),
            "lower": binding(&lower),
            "full_length": query.full_length(),
            "upper_rules": upper,
            "lower_rules": lower,
        }),
        table: Some(table),
        citations,
        ok: true,
    })
}

/// Parses `k=3..6,q=2..9,s=0..3`; a bare number is a one-point range.
fn parse_ranges(spec: &str) -> anyhow::Result<Vec<(String, u64, u64)>> {
    spec.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|part| {
            let (key, val) = part
                .split_once('=')
                .ok_or_else(|| anyhow!("range `{part}` is not key=a..b"))?;
            let (lo, hi) = match val.split_once("..") {
                Some((a, b)) => (a.trim().parse()?, b.trim().parse()?),
                None => {
                    let v: u64 = val.trim().parse()?;
                    (v, v)
                }
            };
            if lo > hi {
                bail!("empty range `{part}`");
            }
            Ok((key.trim().to_string(), lo, hi))
        })
        .collect()
}

fn bounds_table(which: u8, range: Option<&str>) -> anyhow::Result<Report> {
    let mut ranges = [("k".to_string(), 3, 6),
        ("q".to_string(), 2, 9),
        ("s".to_string(), 0, 3),
        ("t".to_string(), 0, 2)];
    for (key, lo, hi) in parse_ranges(range.unwrap_or(""))? {
        let slot = ranges
            .iter_mut()
            .find(|r| r.0 == key)
            .ok_or_else(|| anyhow!("unknown range key `{key}`"))?;
        *slot = (key, lo, hi);
    }
    let span = |i: usize| ranges[i].1..=ranges[i].2;
    let ts: Vec<Option<u64>> = if which == 4 { span(3).map(Some).collect() } else { vec![None] };
    let header = if which == 4 { output::TABLE4_COLUMNS } else { output::TABLE3_COLUMNS };
    let mut table = Table::new(header);
    let mut entries = Vec::new();
    let mut cites = Vec::new();
    for q in span(1) {
        if projsys::FieldSpec::new(q).is_err() {
            continue;
        }
        for k in span(0) {
            for s in span(2) {
                for &t in &ts {
                    let query = BoundQuery { k, q, s, t, d: None };
                    if query.validate().is_err() {
                        continue;
                    }
                    let upper = bounds::upper_bounds(&query)?;
                    let lower = bounds::lower_bounds(&query)?;
                    let up = upper.iter().find(|r| r.binding);
                    let lo = lower.iter().find(|r| r.binding);
                    cites.extend(up.map(|r| r.citation));
                    cites.extend(lo.map(|r| r.citation));
                    let mut row = vec![k.to_string(), q.to_string(), s.to_string()];
                    row.extend(t.map(|t| t.to_string()));
                    row.extend([
                        lo.map_or("-".into(), |r| r.value.to_string()),
                        lo.map_or("-", |r| r.rule_id).into(),
                        up.map_or("-".into(), |r| r.value.to_string()),
                        up.map_or("-", |r| r.rule_id).into(),
                    ]);
                    table.push(row);
                    entries.push(json!({
                        "k": k, "q": q, "s": s, "t": t,
                        "lower": lo.map(|r| r.value), "lower_rule": lo.map(|r| r.rule_id),
                        "upper": up.map(|r| r.value), "upper_rule": up.map(|r| r.rule_id),
                    }));
                }
            }
        }
    }
    Ok(Report {
        command: "bounds",
        result: json!({ "table": which, "rows": entries }),
        table: Some(table),
        citations: output::citations(cites),
        ok: true,
    })
}

fn integrality(n: u64, k: u64, q: u64, s: u64, mode: Option<&str>) -> anyhow::Result<Report> {
    let query = BoundQuery::new(k, q, s);
    query.validate()?;
    let mode = match mode {
        Some(m) => m.parse()?,
        None if n == query.full_length() => IntegralityMode::FullLength,
        None if n + 1 == query.full_length() => IntegralityMode::NearFullLength,
        None => bail!(
            "n = {n} is neither full length {} nor one less; pass --mode",
            query.full_length()
        ),
    };
    let reports = bounds::integrality(n, k, q, s, mode)?;
    let mut table = Table::new(output::INTEGRALITY_COLUMNS);
    for r in &reports {
        for (name, v) in r.quantities() {
            table.push(vec![
                r.j.to_string(),
                name.into(),
                v.as_computed(),
                v.reduced.to_string(),
                v.is_integer().to_string(),
            ]);
        }
    }
    Ok(Report {
        command: "integrality",
        result: json!({
            "n": n, "k": k, "q": q, "s": s,
            "mode": mode.name(),
            "all_integer": reports.iter().all(|r| r.all_integer()),
            "reports": reports,
        }),
        table: Some(table),
        citations: Vec::new(),
        ok: true,
    })
}

/// Result of one `verify_kappa_entry` call, flattened for output.
#[derive(serde::Serialize)]
struct Probe {
    k: u64,
    verdict: String,
    detail: String,
}

/// Tries dimensions above the known lower end until one fails or the
/// answer is pinned. Returns the probes and the tightened (lower, upper).
fn probe_kappa(e: &KappaEntry, budget: u64) -> (Vec<Probe>, u64, Option<u64>) {
    let (mut lower, mut upper) = (e.lower, e.upper);
    let mut probes = Vec::new();
    let last = upper.unwrap_or(lower + 2);
    for k in lower + 1..=last {
        let (verdict, detail) = match search::verify_kappa_entry(e.s, e.q, k, budget) {
            Ok(v) => {
                let detail = match &v {
                    KappaVerdict::Exists { provenance, .. } => provenance.clone(),
                    KappaVerdict::RuledOut { rule_id, reason } => format!("{rule_id}: {reason}"),
                    KappaVerdict::ExhaustedNoCode { nodes } => format!("{nodes} nodes"),
                    KappaVerdict::Inconclusive { nodes, best } => {
                        format!("best n = {best} after {nodes} nodes")
                    }
                };
                match v {
                    KappaVerdict::Exists { .. } => lower = k,
                    KappaVerdict::RuledOut { .. } | KappaVerdict::ExhaustedNoCode { .. } => {
                        upper = Some(k - 1)
                    }
                    KappaVerdict::Inconclusive { .. } => {}
                }
                (v.label().to_string(), detail)
            }
            Err(err) => ("skipped".to_string(), format!("{}: {err}", err.code())),
        };
        let stop = verdict != "exists";
        probes.push(Probe { k, verdict, detail });
        if stop {
            break;
        }
    }
    (probes, lower, upper)
}

fn kappa_row(e: &KappaEntry, probes: &[Probe]) -> Vec<String> {
    vec![
        e.q.to_string(),
        e.s.to_string(),
        e.display(),
        e.lower.to_string(),
        e.lower_rule.into(),
        e.lower_witness.clone(),
        e.upper.map_or("-".into(), |u| u.to_string()),
        e.upper_rule.unwrap_or("-").into(),
        e.upper_reason.clone().or_else(|| e.note.clone()).unwrap_or_default(),
        probes
            .iter()
            .map(|p| format!("k={}:{}", p.k, p.verdict))
            .collect::<Vec<_>>()
            .join(" "),
    ]
}

fn kappa(c: &KappaCmd) -> anyhow::Result<Report> {
    let pairs: Vec<(u64, u64)> = if c.table {
        let mut v = Vec::new();
        let mut q = 2u64;
        while q <= c.max_q {
            let mut a = 4u64;
            while a <= q.max(4) {
                v.push((a - 2, q));
                a *= 2;
            }
            q *= 2;
        }
        v
    } else {
        vec![(c.s.unwrap_or_default(), c.q.unwrap_or_default())]
    };
    let mut table = Table::new(output::KAPPA_COLUMNS);
    let mut entries = Vec::new();
    for (s, q) in pairs {
        let mut e = bounds::kappa(s, q)?;
        let mut probes = Vec::new();
        if c.search && e.status != KappaStatus::Exact {
            let (p, lower, upper) = probe_kappa(&e, c.budget);
            probes = p;
            if lower > e.lower {
                e.lower = lower;
                e.lower_rule = "search";
                e.lower_witness = probes
                    .iter()
                    .rfind(|p| p.verdict == "exists")
                    .map(|p| p.detail.clone())
                    .unwrap_or_default();
            }
            if upper != e.upper {
                e.upper = upper;
                e.upper_rule = Some("search");
                e.upper_reason = probes.last().map(|p| format!("k = {}: {}", p.k, p.detail));
            }
            if e.upper == Some(e.lower) {
                e.status = KappaStatus::Exact;
            } else if e.upper.is_some() {
                e.status = KappaStatus::Range;
            }
        }
        table.push(kappa_row(&e, &probes));
        entries.push(json!({ "entry": e, "display": e.display(), "probes": probes }));
    }
    Ok(Report {
        command: "kappa",
        result: json!({ "entries": entries }),
        table: Some(table),
        citations: Vec::new(),
        ok: true,
    })
}

fn threads(flag: Option<usize>) -> anyhow::Result<usize> {
    if let Some(t) = flag {
        return Ok(t);
    }
    match std::env::var(THREADS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{THREADS_ENV}={v} is not a thread count")),
        Err(_) => Ok(0),
    }
}

fn run_search(c: &SearchCmd) -> anyhow::Result<Report> {
    let mut config = SearchConfig::new(c.k, c.q, c.s)
        .with_budget(c.budget)
        .with_threads(threads(c.threads)?);
    if c.lex_only {
        config = config.lex_only();
    }
    let cert = search::max_length(&config)?;
    let mut ok = true;
    let dual = match (&cert.witness, search::dual_defect_scan(&cert)) {
        (None, _) => Value::Null,
        (Some(_), Ok(t)) => json!(t),
        (Some(_), Err(e)) => {
            eprintln!("{}: {e}", e.code());
            ok = false;
            Value::String(e.to_string())
        }
    };
    let file = match (&c.out, &cert.witness) {
        (Some(path), Some(w)) => {
            fs::write(path, w.to_gm()).with_context(|| format!("writing {}", path.display()))?;
            Some(path.display().to_string())
        }
        _ => None,
    };
    let rules: Vec<&str> = cert.rules_used.iter().map(|r| r.rule_id.as_str()).collect();
    let mut table = Table::new(output::SEARCH_COLUMNS);
    table.push(vec![
        cert.n_max.to_string(),
        cert.exhaustive.to_string(),
        cert.budget_exhausted.to_string(),
        cert.nodes.to_string(),
        file.clone().unwrap_or_default(),
        match &dual {
            Value::Number(t) => t.to_string(),
            _ => String::new(),
        },
        rules.join(","),
    ]);
    Ok(Report {
        command: "search",
        result: json!({
            "n_max": cert.n_max,
            "exhaustive": cert.exhaustive,
            "budget_exhausted": cert.budget_exhausted,
            "nodes": cert.nodes,
            "witness_file": file,
            "witness_params": cert.witness.as_ref().map(|w| w.params()),
            "dual_defect": dual,
            "rules_used": cert.rules_used,
            "symmetries": cert.symmetries,
            "config": cert.config,
        }),
        table: Some(table),
        citations: output::citations(cert.rules_used.iter().map(|r| r.citation.as_str())),
        ok,
    })
}

fn run_verify(suite: &str, seed: u64, format: Format, out: &mut impl Write) -> anyhow::Result<Report> {
    if suite != "paper-tables" {
        bail!("unknown suite `{suite}` (available: paper-tables)");
    }
    eprintln!("seed {seed}");
    let row = |r: &verify::CriterionResult| {
        vec![
            r.id.to_string(),
            if r.passed { "PASS" } else { "FAIL" }.to_string(),
            r.elapsed_ms.to_string(),
            r.limit_ms.map_or(String::new(), |l| l.to_string()),
            r.title.to_string(),
            r.detail.clone(),
        ]
    };
    if format == Format::Tsv {
        writeln!(out, "{}", output::header_line(output::VERIFY_COLUMNS))?;
    }
    let mut io_err = None;
    let results = verify::run_suite_with(seed, |r| {
        let res = match format {
            Format::Tsv => writeln!(out, "{}", output::tsv_line(&row(r))).and_then(|_| out.flush()),
            Format::Json => writeln!(io::stderr(), "{}", r.line()),
        };
        if let Err(e) = res {
            io_err.get_or_insert(e);
        }
    });
    if let Some(e) = io_err {
        return Err(e.into());
    }
    let failed: Vec<&str> = results.iter().filter(|r| !r.passed).map(|r| r.id).collect();
    Ok(Report {
        command: "verify",
        result: json!({
            "suite": suite,
            "passed": results.len() - failed.len(),
            "total": results.len(),
            "failed": failed,
            "criteria": results,
        }),
        table: None,
        citations: Vec::new(),
        ok: failed.is_empty(),
    })
}
