//! srglab command-line front end.
//!
//! Exit codes are a stable contract for scripting: 0 when the command
//! succeeds and every checked property holds, 1 when a checked property
//! fails, 2 on usage or I/O errors. All randomized behavior flows from the
//! explicit `--seed` flag (echoed in every report); rerunning a command
//! with the same configuration produces byte-identical output files.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand};

use srglab::asymptotics::{family_sweep, sweep_to_csv, SweepFamily, SWEEP_CSV_HEADER};
use srglab::counting::{
    codegree_concentration_check, codegree_sum_check, codegree_tail_check,
    cross_codegree_sum_check, format_lemma_report, pair_codegree_concentration_check,
    LemmaReport, Tail,
};
use srglab::instances::{
    random_bipartite, random_center_blocks, random_cross_pairs, random_pair_family,
    random_tripartite, random_twin_blocks,
};
use srglab::io::{format_edge_list, read_edge_list};
use srglab::regularity::{
    build_partition, density_dichotomy, format_dichotomy, format_partition_report,
    verify_partition,
};
use srglab::srg::{verify_srg, FamilySpec, SrgParams, SrgVerdict};
use srglab::Graph;

#[derive(Parser)]
#[command(name = "srglab", version, about = "Codegree statistics of dense graphs at desk scale")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a family graph, write its edge list, print its verified parameters.
    ///
    /// Specs: paley:Q | triangular:M | lattice:M | cliques:RxM, with an
    /// optional '~' prefix for the complement (e.g. ~triangular:5).
    Gen {
        spec: String,
        /// Output edge-list path.
        #[arg(long)]
        out: PathBuf,
    },
    /// Check an edge-list file for strong regularity; exit 0 iff it is one.
    Verify { path: PathBuf },
    /// Deviation sweep over a one-parameter family, written as CSV.
    ///
    /// Families: paley | triangular | lattice | cliques-m:M | cliques-r:R,
    /// optionally prefixed with '~'.
    Sweep {
        family: String,
        /// Comma-separated size list (paley: q, triangular/lattice: m,
        /// cliques-m: r, cliques-r: m).
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<u64>>,
        /// Sweep every valid size up to this limit instead of --sizes.
        #[arg(long)]
        upto: Option<u64>,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        /// Output format (only "csv" is supported for sweeps).
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Run one counting check on a seeded instance; exit 0 iff the verdict
    /// holds or the hypothesis is vacuous.
    ///
    /// Checks: xsec | xsec1 | xsec2 | xple2 | dle | lebs.
    /// Instances: random:AxB:P (xsec/xsec1/xsec2), random-tri:A1xA2xB:P1,P2
    /// (xple2), random-multi:t=T,p=P (dle/lebs).
    Lemma {
        id: String,
        instance: String,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        /// Set size r for the r-set checks (ignored by xple2/dle/lebs).
        #[arg(long, default_value_t = 2)]
        r: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Output format (only "text" is supported for reports).
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Build an equitable partition and verify the uniformity conditions;
    /// exit 0 iff both hold.
    ///
    /// GRAPH is a family spec (paley:401) or an edge-list path.
    Regularity {
        graph: String,
        /// Number of non-exceptional classes.
        #[arg(long)]
        l: usize,
        #[arg(long, default_value_t = 0.1)]
        eps: f64,
        /// Refinement round cap.
        #[arg(long, default_value_t = 16)]
        rounds: usize,
        /// Falsifier trials per pair during verification.
        #[arg(long, default_value_t = 32)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Partition output path.
        #[arg(long)]
        out: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Output format (only "text" is supported for reports).
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Eigenvalue-multiplicity feasibility of a parameter quadruple; exit 0
    /// iff feasible.
    Feasibility { n: u64, k: u64, lambda: u64, mu: u64 },
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("SRGLAB_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Gen { spec, out } => cmd_gen(&spec, &out),
        Command::Verify { path } => cmd_verify(&path),
        Command::Sweep { family, sizes, upto, out, format } => {
            cmd_sweep(&family, sizes, upto, &out, &format)
        }
        Command::Lemma { id, instance, eps, r, seed, out, format } => {
            cmd_lemma(&id, &instance, eps, r, seed, out.as_deref(), &format)
        }
        Command::Regularity { graph, l, eps, rounds, trials, seed, out, report, format } => {
            cmd_regularity(&graph, l, eps, rounds, trials, seed, &out, report.as_deref(), &format)
        }
        Command::Feasibility { n, k, lambda, mu } => cmd_feasibility(n, k, lambda, mu),
    }
}

/// Writes via a temp file in the same directory, then renames into place.
fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let tmp = PathBuf::from(format!("{}.tmp", path.display()));
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming into {}", path.display()))?;
    Ok(())
}

fn emit(out: Option<&Path>, contents: &str) -> Result<()> {
    match out {
        Some(path) => write_atomic(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn cmd_gen(spec: &str, out: &Path) -> Result<u8> {
    let spec = FamilySpec::parse(spec)?;
    let g = spec.generate()?;
    write_atomic(out, &format_edge_list(&g))?;
    println!("{}", verify_srg(&g));
    Ok(0)
}

fn cmd_verify(path: &Path) -> Result<u8> {
    let g = read_edge_list(path)?;
    let verdict = verify_srg(&g);
    println!("{verdict}");
    Ok(if matches!(verdict, SrgVerdict::Srg(_)) { 0 } else { 1 })
}

fn cmd_sweep(
    family: &str,
    sizes: Option<Vec<u64>>,
    upto: Option<u64>,
    out: &Path,
    format: &str,
) -> Result<u8> {
    if format != "csv" {
        bail!("unsupported sweep format '{format}' (expected csv)");
    }
    let family = SweepFamily::parse(family)?;
    let sizes = match (sizes, upto) {
        (Some(s), None) => s,
        (None, Some(limit)) => family.valid_sizes_upto(limit),
        (None, None) => Vec::new(),
        (Some(_), Some(_)) => bail!("--sizes and --upto are mutually exclusive"),
    };
    if sizes.is_empty() {
        write_atomic(out, &format!("{SWEEP_CSV_HEADER}\n"))?;
        println!("wrote 0 rows to {}", out.display());
        return Ok(0);
    }
    let rows = family_sweep(&family, &sizes)?;
    write_atomic(out, &sweep_to_csv(&rows))?;
    println!("wrote {} rows to {}", rows.len(), out.display());
    Ok(0)
}

fn parse_sizes_block(s: &str, expected: usize) -> Result<Vec<usize>> {
    let parts: Vec<usize> =
        s.split('x').map(|t| t.parse()).collect::<Result<_, _>>().context("bad size block")?;
    if parts.len() != expected {
        bail!("expected {expected} sizes separated by 'x', got '{s}'");
    }
    Ok(parts)
}

fn cmd_lemma(
    id: &str,
    instance: &str,
    eps: f64,
    r: u64,
    seed: u64,
    out: Option<&Path>,
    format: &str,
) -> Result<u8> {
    if format != "text" {
        bail!("unsupported report format '{format}' (expected text)");
    }
    let bad_instance = || {
        anyhow!(
            "check '{id}' does not accept instance '{instance}'; expected random:AxB:P for \
             xsec/xsec1/xsec2, random-tri:A1xA2xB:P1,P2 for xple2, random-multi:t=T,p=P for \
             dle/lebs"
        )
    };

    let mut reports: Vec<LemmaReport> = Vec::new();
    let mut extra_config = Vec::new();
    match id {
        "xsec" | "xsec1" | "xsec2" => {
            let rest = instance.strip_prefix("random:").ok_or_else(bad_instance)?;
            let (block, prob) = rest.rsplit_once(':').ok_or_else(bad_instance)?;
            let sizes = parse_sizes_block(block, 2)?;
            let prob: f64 = prob.parse().context("bad edge probability")?;
            let (g, a, b) = random_bipartite(sizes[0], sizes[1], prob, seed)?;
            match id {
                "xsec" => reports.push(codegree_tail_check(&g, &a, &b, &b, eps, r, Tail::Lower)?),
                "xsec1" => reports.push(codegree_tail_check(&g, &a, &b, &b, eps, r, Tail::Upper)?),
                _ => {
                    let (i, ii) = codegree_concentration_check(&g, &a, &b, eps, r)?;
                    reports.push(i);
                    reports.push(ii);
                }
            }
        }
        "xple2" => {
            let rest = instance.strip_prefix("random-tri:").ok_or_else(bad_instance)?;
            let (block, probs) = rest.rsplit_once(':').ok_or_else(bad_instance)?;
            let sizes = parse_sizes_block(block, 3)?;
            let (p1, p2) = probs.split_once(',').ok_or_else(bad_instance)?;
            let d1: f64 = p1.parse().context("bad edge probability")?;
            let d2: f64 = p2.parse().context("bad edge probability")?;
            let (g, a1, a2, b) = random_tripartite(sizes[0], sizes[1], sizes[2], d1, d2, seed)?;
            let (i, ii) = pair_codegree_concentration_check(&g, &a1, &a2, &b, eps)?;
            reports.push(i);
            reports.push(ii);
        }
        "dle" | "lebs" => {
            let rest = instance.strip_prefix("random-multi:").ok_or_else(bad_instance)?;
            let mut t = None;
            let mut p = None;
            for part in rest.split(',') {
                match part.split_once('=') {
                    Some(("t", v)) => t = Some(v.parse::<usize>().context("bad t")?),
                    Some(("p", v)) => p = Some(v.parse::<usize>().context("bad p")?),
                    _ => return Err(bad_instance()),
                }
            }
            let (t, p) = (t.ok_or_else(bad_instance)?, p.ok_or_else(bad_instance)?);
            let s_seed = seed.wrapping_add(1);
            if id == "dle" {
                let inst = random_center_blocks(t, p, seed)?;
                let s = random_pair_family(&inst.center, 0.5, s_seed);
                extra_config.push(format!("s-pairs: {}", s.len()));
                reports.push(codegree_sum_check(&inst.graph, &inst.center, &inst.blocks, &s, eps)?);
            } else {
                let inst = random_twin_blocks(t, p, seed)?;
                let s = random_cross_pairs(&inst.a1, &inst.a2, 0.5, s_seed);
                extra_config.push(format!("s-pairs: {}", s.len()));
                reports.push(cross_codegree_sum_check(
                    &inst.graph,
                    &inst.a1,
                    &inst.a2,
                    &inst.blocks,
                    &s,
                    eps,
                )?);
            }
        }
        _ => bail!("unknown check '{id}' (expected xsec | xsec1 | xsec2 | xple2 | dle | lebs)"),
    }

    let mut doc = String::new();
    doc.push_str("command: lemma\n");
    doc.push_str(&format!("check: {id}\n"));
    doc.push_str(&format!("instance: {instance}\n"));
    doc.push_str(&format!("epsilon: {eps}\n"));
    doc.push_str(&format!("r: {r}\n"));
    doc.push_str(&format!("seed: {seed}\n"));
    for line in &extra_config {
        doc.push_str(line);
        doc.push('\n');
    }
    for report in &reports {
        doc.push_str("---\n");
        doc.push_str(&format_lemma_report(report));
    }
    emit(out, &doc)?;

    let ok = reports.iter().all(|rep| rep.holds || !rep.hypothesis.is_met());
    Ok(if ok { 0 } else { 1 })
}

fn load_graph_arg(arg: &str) -> Result<(Graph, String)> {
    if let Ok(spec) = FamilySpec::parse(arg) {
        return Ok((spec.generate()?, spec.to_string()));
    }
    let g = read_edge_list(arg).with_context(|| {
        format!("'{arg}' is neither a family spec nor a readable edge-list file")
    })?;
    Ok((g, arg.to_string()))
}

#[allow(clippy::too_many_arguments)]
fn cmd_regularity(
    graph: &str,
    l: usize,
    eps: f64,
    rounds: usize,
    trials: usize,
    seed: u64,
    out: &Path,
    report_path: Option<&Path>,
    format: &str,
) -> Result<u8> {
    if format != "text" {
        bail!("unsupported report format '{format}' (expected text)");
    }
    let (g, label) = load_graph_arg(graph)?;
    let partition = build_partition(&g, l, eps, rounds, seed)?;
    write_atomic(out, &partition.format())?;
    let report = verify_partition(&g, &partition, eps, trials, seed)?;
    let dichotomy = density_dichotomy(&report, eps);

    let mut doc = String::new();
    doc.push_str("command: regularity\n");
    doc.push_str(&format!("graph: {label}\n"));
    doc.push_str(&format!("l: {l}\n"));
    doc.push_str(&format!("rounds: {rounds}\n"));
    doc.push_str(&format_partition_report(&report));
    doc.push_str(&format_dichotomy(&dichotomy));
    emit(report_path, &doc)?;

    Ok(if report.condition_i && report.condition_ii { 0 } else { 1 })
}

fn cmd_feasibility(n: u64, k: u64, lambda: u64, mu: u64) -> Result<u8> {
    let params = SrgParams::new(n, k, lambda, mu);
    let report = params.eigen_feasibility();
    println!("params: {params}");
    println!("conference: {}", report.conference);
    match report.integer_eigenvalues {
        Some((r, s)) => println!("eigenvalues: {r} {s}"),
        None => println!("eigenvalues: {} {}", report.eigenvalue_r, report.eigenvalue_s),
    }
    match report.multiplicities {
        Some((f, g)) => println!("multiplicities: {f} {g}"),
        None => println!("multiplicities: none"),
    }
    println!("feasible: {}", report.feasible);
    if let Some(reason) = &report.reason {
        println!("reason: {reason}");
    }
    Ok(if report.feasible { 0 } else { 1 })
}
