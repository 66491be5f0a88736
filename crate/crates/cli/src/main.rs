//! Batch front end: every subcommand computes a report, writes it in the
//! requested format and exits with 0 (ok), 2 (disagreement) or 3 (window).

use std::fs;
use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use pe2odd::homalg::{self, Gauge, MultiplicityTable};
use pe2odd::pe2core::Weight;
use pe2odd::quiveralg::{is_center, pe2_algebra, pe2_presentation, Window};
use pe2odd::resolution::{self, ExtTable, KoszulReport, Resolution};
use pe2odd::Error;

const EXIT_DISAGREE: u8 = 2;
const EXIT_WINDOW: u8 = 3;
const EXIT_INPUT: u8 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Parser, Debug)]
#[command(name = "pe2odd", version, about = "Exact computations in the odd block of category O for pe(2)")]
struct Cli {
    /// Vertex window "a_min,a_max,b_min,b_max" for the quiver algebra.
    #[arg(long, global = true, allow_hyphen_values = true)]
    window: Option<String>,
    /// Base δ-coefficient of the weights examined.
    #[arg(long, global = true, default_value_t = 0, allow_hyphen_values = true)]
    b0: i64,
    /// Maximal homological degree.
    #[arg(long, global = true, default_value_t = 3)]
    n: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Target vectors of P(λ) by weight, in PBW coordinates.
    Targets {
        #[arg(long, allow_hyphen_values = true)]
        lambda: Weight,
    },
    /// [P(λ):L(μ)] by target counting, the sl2 pipeline and the closed form.
    Multiplicities {
        #[arg(long, default_value_t = 21)]
        amax: i64,
    },
    /// Evaluate the quadratic relations in every local picture.
    VerifyRelations {
        #[arg(long, default_value_t = 15)]
        amax: i64,
        /// Add this to every β (a deliberate mutation).
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        perturb_beta: i64,
    },
    /// The downstairs composition identities.
    Downstairs {
        #[arg(long, default_value_t = 9)]
        amax: i64,
    },
    /// Ext dimensions N^n_n(μ, λ) from a resolution next to the closed form.
    Ext {
        #[arg(long, allow_hyphen_values = true)]
        mu: Weight,
        /// Report every degree 0..=n, not just n.
        #[arg(long)]
        all: bool,
    },
    /// Koszulity and Ext agreement for every odd a in [−amax, amax].
    Koszul {
        #[arg(long, default_value_t = 9)]
        amax: i64,
        /// Drop the relation qp = 0 and cut paths off at this length.
        #[arg(long)]
        drop_qp: Option<u32>,
    },
    /// The full minimal resolution of L(μ) as JSON.
    Resolve {
        #[arg(long, allow_hyphen_values = true)]
        mu: Weight,
    },
    /// The quiver presentation on the window as JSON.
    Presentation,
}

/// Exit status carried alongside a rendered report.
struct Report {
    body: String,
    status: u8,
}

fn parse_window(s: &str) -> anyhow::Result<Window> {
    let v: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("window {s:?} must be four integers a_min,a_max,b_min,b_max"))?;
    let [a_min, a_max, b_min, b_max] = v[..] else {
        bail!("window {s:?} must be four integers a_min,a_max,b_min,b_max");
    };
    if a_min.rem_euclid(2) != 1 || a_max.rem_euclid(2) != 1 {
        bail!("window a bounds must be odd, got {a_min},{a_max}");
    }
    Ok(Window::new(a_min, a_max, b_min, b_max)?)
}

fn odd_range(amax: i64) -> Vec<i64> {
    let top = if amax.rem_euclid(2) == 1 { amax } else { amax - 1 };
    (-top..=top).step_by(2).collect()
}

impl Cli {
    /// Window for resolutions out of |a| ≤ `amax`: explicit, or wide enough
    /// that every reported degree is in the safe region.
    fn window_for(&self, amax: i64) -> anyhow::Result<Window> {
        match &self.window {
            Some(s) => parse_window(s),
            None => {
                let a = amax.abs() + 2 * self.n as i64 + 12;
                Ok(resolution::resolution_window(a | 1, self.b0, self.n))
            }
        }
    }

    fn header(&self) -> serde_json::Value {
        json!({
            "command": format!("{:?}", self.cmd),
            "window": self.window,
            "b0": self.b0,
            "n": self.n,
            "format": self.format,
        })
    }

    fn render(&self, json_body: serde_json::Value, csv: String, md: String) -> String {
        let header = self.header();
        match self.format {
            Format::Json => {
                let doc = json!({ "config": header, "result": json_body });
                serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
            }
            Format::Csv => format!("# config: {header}\n{csv}"),
            Format::Md => format!("<!-- config: {header} -->\n\n{md}"),
        }
    }
}

fn targets(cli: &Cli, lambda: Weight) -> anyhow::Result<Report> {
    let mus = homalg::candidate_weights(lambda);
    let found: Vec<(Weight, Vec<String>)> = mus
        .par_iter()
        .map(|&mu| Ok((mu, homalg::target_vectors(lambda, mu)?.iter().map(|m| m.vector.to_string()).collect())))
        .collect::<pe2odd::Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, v): &(Weight, Vec<String>)| !v.is_empty())
        .collect();
    let total: usize = found.iter().map(|(_, v)| v.len()).sum();
    let rows: Vec<_> = found.iter().map(|(mu, v)| json!({ "mu": mu, "count": v.len(), "vectors": v })).collect();
    let mut csv = String::from("lambda_a,lambda_b,mu_a,mu_b,index,vector\n");
    let mut md = format!("## Target vectors of P({lambda}): {total}\n\n| μ | # | vector |\n|---|---|---|\n");
    for (mu, v) in &found {
        for (i, x) in v.iter().enumerate() {
            csv.push_str(&format!("{},{},{},{},{i},\"{x}\"\n", lambda.a, lambda.b, mu.a, mu.b));
            md.push_str(&format!("| ({mu}) | {i} | {x} |\n"));
        }
    }
    let body = cli.render(json!({ "lambda": lambda, "total": total, "by_weight": rows }), csv, md);
    Ok(Report { body, status: 0 })
}

fn multiplicities(cli: &Cli, amax: i64) -> anyhow::Result<Report> {
    let lambdas: Vec<Weight> = odd_range(amax).into_iter().map(|a| Weight::new(a, cli.b0)).collect();
    let parts: Vec<MultiplicityTable> =
        lambdas.par_iter().map(|&l| MultiplicityTable::build(&[l])).collect::<pe2odd::Result<_>>()?;
    let rows: Vec<_> = parts.iter().flat_map(|t| t.rows.values().cloned()).collect();
    let bad = rows.iter().filter(|r| !r.agrees()).count();
    let mut csv = String::from("lambda_a,lambda_b,mu_a,mu_b,targets,pipeline,closed_form,agree\n");
    let mut md = format!("## [P(λ):L(μ)], {} nonzero pairs, {bad} disagreements\n\n| λ | μ | targets | pipeline | closed form |\n|---|---|---|---|---|\n", rows.len());
    for r in &rows {
        csv.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.lambda.a, r.lambda.b, r.mu.a, r.mu.b, r.targets, r.pipeline, r.closed_form, r.agrees()
        ));
        let flag = if r.agrees() { "" } else { " ✗" };
        md.push_str(&format!("| ({}) | ({}) | {} | {} | {}{flag} |\n", r.lambda, r.mu, r.targets, r.pipeline, r.closed_form));
    }
    let body = cli.render(json!({ "rows": rows, "disagreements": bad }), csv, md);
    Ok(Report { body, status: if bad > 0 { EXIT_DISAGREE } else { 0 } })
}

fn verify_relations(cli: &Cli, amax: i64, perturb: i64) -> anyhow::Result<Report> {
    let centers: Vec<Weight> =
        odd_range(amax).into_iter().map(|a| Weight::new(a, cli.b0)).filter(|&w| is_center(w)).collect();
    let gauge = if perturb == 0 { Gauge::QUADRATIC } else { Gauge::perturbed_beta(perturb) };
    let rep = homalg::verify_relations(&centers, &gauge)?;
    let status = if rep.all_pass() { 0 } else { EXIT_DISAGREE };
    let json_body = json!({ "checks": rep.checks, "failures": rep.failures().len() });
    let md = format!("## Relations, {} checks, {} failures\n\n{}", rep.checks.len(), rep.failures().len(), rep.to_markdown());
    Ok(Report { body: cli.render(json_body, rep.to_csv(), md), status })
}

fn downstairs(cli: &Cli, amax: i64) -> anyhow::Result<Report> {
    let mut checks = Vec::new();
    for a in std::iter::once(-1).chain((1..=amax).step_by(2)) {
        checks.extend(homalg::downstairs_identities(a, cli.b0)?);
    }
    let bad = checks.iter().filter(|c| !c.passed).count();
    let mut csv = String::from("a,identity,status\n");
    let mut md = format!("## Downstairs identities, {bad} failures\n\n| a | identity | status |\n|---|---|---|\n");
    for c in &checks {
        let st = if c.passed { "pass" } else { "FAIL" };
        csv.push_str(&format!("{},\"{}\",{st}\n", c.a, c.id));
        md.push_str(&format!("| {} | {} | {st} |\n", c.a, c.id));
    }
    let body = cli.render(json!({ "checks": checks, "failures": bad }), csv, md);
    Ok(Report { body, status: if bad > 0 { EXIT_DISAGREE } else { 0 } })
}

fn ext(cli: &Cli, mu: Weight, all: bool) -> anyhow::Result<Report> {
    let win = cli.window_for(mu.a)?;
    let alg = pe2_algebra(win);
    let res = resolution::resolve(&alg, mu, cli.n, win)?;
    let mut t = ExtTable::from_resolution(&res);
    if !all {
        t.entries.retain(|e| e.n == cli.n);
    }
    let status = if t.disagreements().is_empty() { 0 } else { EXIT_DISAGREE };
    let json_body: serde_json::Value = serde_json::from_str(&t.to_json()).expect("table is json");
    Ok(Report { body: cli.render(json_body, t.to_csv(), t.to_markdown()), status })
}

#[derive(Serialize)]
struct KoszulRow {
    koszul: KoszulReport,
    ext_compared: usize,
    ext_disagreements: usize,
}

fn koszul(cli: &Cli, amax: i64, drop_qp: Option<u32>) -> anyhow::Result<Report> {
    let win = cli.window_for(amax)?;
    let alg = match drop_qp {
        Some(t) => resolution::mutated_algebra(win, t),
        None => pe2_algebra(win),
    };
    let mus: Vec<Weight> = odd_range(amax).into_iter().map(|a| Weight::new(a, cli.b0)).collect();
    let results: Vec<Resolution> =
        mus.par_iter().map(|&mu| resolution::resolve(&alg, mu, cli.n, win)).collect::<pe2odd::Result<_>>()?;
    let rows: Vec<KoszulRow> = results
        .iter()
        .map(|res| {
            let t = ExtTable::from_resolution(res);
            // Over a truncated algebra only degrees up to the cut-off are meaningful.
            let koszul = match drop_qp {
                Some(t) => resolution::koszul_check_below(res, t),
                None => resolution::koszul_check(res),
            };
            KoszulRow { koszul, ext_compared: t.compared(), ext_disagreements: t.disagreements().len() }
        })
        .collect();
    let ok = rows.iter().all(|r| r.koszul.passed && r.ext_disagreements == 0);
    let mut csv = String::from("mu_a,mu_b,koszul,checked_through,first_failure_n,first_failure_degree,ext_compared,ext_disagreements\n");
    let mut md = format!(
        "## Koszul check: {}\n\n| μ | linear | checked through n | first failure | Ext compared | Ext disagreements |\n|---|---|---|---|---|---|\n",
        if ok { "PASS" } else { "FAIL" }
    );
    for r in &rows {
        let k = &r.koszul;
        let (fn_, fd) = k.first_failure.as_ref().map_or((String::new(), String::new()), |f| (f.n.to_string(), f.degree.to_string()));
        csv.push_str(&format!(
            "{},{},{},{},{fn_},{fd},{},{}\n",
            k.mu.a, k.mu.b, k.passed, k.checked_through, r.ext_compared, r.ext_disagreements
        ));
        let ff = k.first_failure.as_ref().map_or("-".to_string(), |f| format!("n={} at ({}) in degree {}", f.n, f.vertex, f.degree));
        md.push_str(&format!(
            "| ({}) | {} | {} | {ff} | {} | {} |\n",
            k.mu, k.passed, k.checked_through, r.ext_compared, r.ext_disagreements
        ));
    }
    let body = cli.render(json!({ "passed": ok, "rows": rows }), csv, md);
    Ok(Report { body, status: if ok { 0 } else { EXIT_DISAGREE } })
}

fn resolve(cli: &Cli, mu: Weight) -> anyhow::Result<Report> {
    if cli.format != Format::Json {
        bail!("resolve only emits json");
    }
    let win = cli.window_for(mu.a)?;
    let alg = pe2_algebra(win);
    let res = resolution::resolve(&alg, mu, cli.n, win)?;
    let body = cli.render(serde_json::to_value(res.to_doc(&alg))?, String::new(), String::new());
    Ok(Report { body, status: 0 })
}

fn presentation(cli: &Cli) -> anyhow::Result<Report> {
    if cli.format != Format::Json {
        bail!("presentation only emits json");
    }
    let win = cli.window_for(0)?;
    let doc = serde_json::to_value(pe2_presentation(win).to_doc())?;
    Ok(Report { body: cli.render(doc, String::new(), String::new()), status: 0 })
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    if cli.n == 0 {
        bail!("--n must be at least 1");
    }
    match &cli.cmd {
        Cmd::Targets { lambda } => targets(cli, *lambda),
        Cmd::Multiplicities { amax } => multiplicities(cli, *amax),
        Cmd::VerifyRelations { amax, perturb_beta } => verify_relations(cli, *amax, *perturb_beta),
        Cmd::Downstairs { amax } => downstairs(cli, *amax),
        Cmd::Ext { mu, all } => ext(cli, *mu, *all),
        Cmd::Koszul { amax, drop_qp } => koszul(cli, *amax, *drop_qp),
        Cmd::Resolve { mu } => resolve(cli, *mu),
        Cmd::Presentation => presentation(cli),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if cli.jobs > 0 {
        // Only fails if a pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    }
    match run(&cli) {
        Ok(rep) => {
            let written = match &cli.out {
                Some(p) => fs::write(p, &rep.body).with_context(|| format!("writing {p}")),
                None => std::io::stdout().write_all(rep.body.as_bytes()).context("writing stdout"),
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(EXIT_INPUT);
            }
            ExitCode::from(rep.status)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::Window { .. }) => {
                    eprintln!("hint: widen --window or pick μ further from its edge");
                    ExitCode::from(EXIT_WINDOW)
                }
                _ => ExitCode::from(EXIT_INPUT),
            }
        }
    }
}
