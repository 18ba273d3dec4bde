//! Command-line front end for `poset-ramsey`.
//!
//! Every subcommand prints a [`RunReport`]: the command line, SHA-256 digests
//! of its inputs, the wall time, and a reproducible payload. `verify` exits
//! with 0 when the coloring avoids all targets and 1 when it does not; every
//! command exits with 2 on an error.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use poset_ramsey::constructions::{
    antichain_lb, band_coloring, c_for_dimension, layered_coloring, sample_st, verify_st,
};
use poset_ramsey::finder::{classify, find_colored_copy, Verdict};
use poset_ramsey::lattice::{parse_coloring, LatticeColoring};
use poset_ramsey::phase::{alternation_reduce, check_phase_color, compute_phases};
use poset_ramsey::poset::{builtin_pattern, parse_pattern, ChainPattern, Color, ColoredPoset};
use poset_ramsey::search::{
    eh_number, export_cnf, exhaustive_classify, ramsey_number, NumberResult, SearchOptions,
};

use report::RunReport;

#[derive(Parser)]
#[command(name = "poset-ramsey", version, about = "Colored Boolean lattices and small poset Ramsey numbers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a coloring: pattern copy, monochromatic Q_n, or avoids both.
    Verify {
        #[arg(long)]
        coloring: PathBuf,
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        n: usize,
    },
    /// Exhaustively decide whether every coloring of Q_N contains a target.
    Search {
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        dim: usize,
        #[command(flatten)]
        opts: SearchArgs,
        /// Where to write the witness coloring, if one is found.
        #[arg(long)]
        witness_out: Option<PathBuf>,
    },
    /// Smallest N forcing a copy of the pattern or a monochromatic Q_n.
    EhNumber {
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        n: usize,
        #[arg(long = "N-max", default_value_t = 5)]
        n_max: usize,
        #[command(flatten)]
        opts: SearchArgs,
    },
    /// Smallest N forcing a blue P1 or a red P2.
    RamseyNumber {
        /// Builtin spec, or `@path` for a pattern file; colors are ignored.
        #[arg(long)]
        p1: String,
        #[arg(long)]
        p2: String,
        #[arg(long = "N-max", default_value_t = 5)]
        n_max: usize,
        #[command(flatten)]
        opts: SearchArgs,
    },
    /// Generate a lower-bound coloring or a family pair.
    Construct {
        #[command(subcommand)]
        generator: Generator,
    },
    /// Phase table, phase-color check, or alternation reduction.
    Phase {
        #[arg(long)]
        coloring: PathBuf,
        /// Chain colors bottom-up, e.g. `rbb`.
        #[arg(long)]
        chain: String,
        #[arg(long, value_enum, default_value_t = PhaseMode::Table)]
        mode: PhaseMode,
    },
    /// Write the avoidance problem as DIMACS CNF.
    ExportCnf {
        #[command(flatten)]
        pattern: PatternArg,
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        dim: usize,
        /// Output file; the DIMACS text goes into the report otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct PatternArg {
    /// Pattern file.
    #[arg(long)]
    pattern: Option<PathBuf>,
    /// Builtin pattern `name[:params]`, e.g. `alt-chain-rbr:3` or `q2:rrbb`.
    #[arg(long)]
    builtin: Option<String>,
}

#[derive(Args, Clone, Copy)]
struct SearchArgs {
    /// Disable lex-leader pruning under ground-set permutations.
    #[arg(long)]
    no_symmetry: bool,
    /// Also prune under swapping both colors (targets must allow it).
    #[arg(long)]
    color_swap: bool,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
}

impl SearchArgs {
    fn options(self) -> SearchOptions {
        SearchOptions { use_symmetry: !self.no_symmetry, use_color_swap: self.color_swap, jobs: self.jobs }
    }
}

#[derive(Subcommand)]
enum Generator {
    /// One color per layer, e.g. `--N 3 --colors rrbb`.
    Layered {
        #[arg(long = "N")]
        dim: usize,
        #[arg(long)]
        colors: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Q_{n+t} with t+1 blue and n red monochromatic layers.
    AntichainLb {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Four-band coloring over sampled families; checks C4(rbr)-freeness.
    Band {
        #[arg(long)]
        n: usize,
        #[arg(long = "N")]
        dim: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0.355)]
        p_base: f64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the sampled family pair.
        #[arg(long)]
        families_out: Option<PathBuf>,
    },
    /// Sampled family pair, optionally checked against the four properties.
    St {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.24)]
        c: f64,
        #[arg(long, default_value_t = 0.355)]
        p_base: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum PhaseMode {
    Table,
    Check,
    Reduce,
    All,
}

fn read(path: &Path, report: &mut RunReport, label: &str) -> Result<String> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    report.input(format!("{label} {}", path.display()), text.as_bytes());
    Ok(text)
}

fn load_pattern(arg: &PatternArg, report: &mut RunReport) -> Result<ColoredPoset> {
    match (&arg.pattern, &arg.builtin) {
        (Some(path), _) => {
            let text = read(path, report, "pattern")?;
            parse_pattern(&text).with_context(|| format!("parsing {}", path.display()))
        }
        (None, Some(spec)) => {
            report.input(format!("builtin {spec}"), spec.as_bytes());
            Ok(builtin_pattern(spec)?)
        }
        (None, None) => bail!("one of --pattern or --builtin is required"),
    }
}

fn load_spec(spec: &str, report: &mut RunReport) -> Result<ColoredPoset> {
    match spec.strip_prefix('@') {
        Some(path) => {
            let text = read(Path::new(path), report, "pattern")?;
            parse_pattern(&text).with_context(|| format!("parsing {path}"))
        }
        None => load_pattern(&PatternArg { pattern: None, builtin: Some(spec.to_string()) }, report),
    }
}

fn load_coloring(path: &Path, report: &mut RunReport) -> Result<LatticeColoring> {
    let text = read(path, report, "coloring")?;
    parse_coloring(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes `text` to `out` when given, otherwise appends it to the payload.
fn emit(report: &mut RunReport, out: Option<&Path>, what: &str, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
            report.line(format!("{what} written to {}", path.display()));
        }
        None => {
            report.line(format!("{what}:"));
            report.line(text);
        }
    }
    Ok(())
}

fn verdict_lines(report: &mut RunReport, v: &Verdict) {
    report.line(format!("verdict: {}", v.name()));
    if let Some(e) = v.embedding() {
        report.line(format!("embedding: {e}"));
    }
}

fn number_lines(report: &mut RunReport, result: &NumberResult, certificates: &[poset_ramsey::search::Certificate]) {
    for c in certificates {
        report.line(format!(
            "N={}: {} (nodes {}, prunes pattern/mono/symmetry {}/{}/{})",
            c.dim,
            c.kind(),
            c.stats.nodes,
            c.stats.prunes_pattern,
            c.stats.prunes_mono,
            c.stats.prunes_symmetry
        ));
    }
    report.line(result.to_string());
}

fn run(cli: Cli, report: &mut RunReport) -> Result<u8> {
    match cli.command {
        Command::Verify { coloring, pattern, n } => {
            let host = load_coloring(&coloring, report)?;
            let p = load_pattern(&pattern, report)?;
            let v = classify(&host, &p, n)?;
            verdict_lines(report, &v);
            Ok(if v == Verdict::Avoids { 0 } else { 1 })
        }
        Command::Search { pattern, n, dim, opts, witness_out } => {
            let p = load_pattern(&pattern, report)?;
            let cert = exhaustive_classify(&p, n, dim, opts.options())?;
            report.line(cert.to_string());
            if let (Some(path), Some(w)) = (witness_out, &cert.witness) {
                fs::write(&path, w.to_string()).with_context(|| format!("writing {}", path.display()))?;
                report.line(format!("witness written to {}", path.display()));
            }
            Ok(0)
        }
        Command::EhNumber { pattern, n, n_max, opts } => {
            let p = load_pattern(&pattern, report)?;
            let (result, certs) = eh_number(&p, n, n_max, opts.options())?;
            number_lines(report, &result, &certs);
            Ok(0)
        }
        Command::RamseyNumber { p1, p2, n_max, opts } => {
            let a = load_spec(&p1, report)?;
            let b = load_spec(&p2, report)?;
            let (result, certs) = ramsey_number(a.poset(), b.poset(), n_max, opts.options())?;
            number_lines(report, &result, &certs);
            Ok(0)
        }
        Command::Construct { generator } => construct(generator, report),
        Command::Phase { coloring, chain, mode } => {
            let host = load_coloring(&coloring, report)?;
            let chain: ChainPattern = chain.parse()?;
            report.input(format!("chain {chain}"), chain.to_string().as_bytes());
            if matches!(mode, PhaseMode::Table | PhaseMode::All) {
                report.line("phases:");
                report.line(compute_phases(&host, &chain)?.serialize());
            }
            if matches!(mode, PhaseMode::Check | PhaseMode::All) {
                let bad = check_phase_color(&host, &chain)?;
                if bad.is_empty() {
                    report.line("violations: none");
                } else {
                    let list: Vec<String> = bad.iter().map(u32::to_string).collect();
                    report.line(format!("violations: {}", list.join(" ")));
                }
            }
            if matches!(mode, PhaseMode::Reduce | PhaseMode::All) {
                let r = alternation_reduce(&host, &chain)?;
                let idx: Vec<String> = r.repeat_indices.iter().map(usize::to_string).collect();
                let removed: Vec<String> = r.removed.iter().map(u32::to_string).collect();
                report.line(format!("repeat indices: {}", idx.join(" ")));
                report.line(format!("removed: {}", removed.join(" ")));
                report.line(format!("cube dimension: {}", r.dim()));
                report.line(format!("cube: {}", r.cube));
                report.line(format!("alternation: {}", r.alternation));
                report.line(format!("leading alternating chain free: {}", r.leading_free));
                report.line(format!("rbr free: {}, brb free: {}", r.rbr_free, r.brb_free));
                report.line("restricted coloring:");
                report.line(r.restricted.to_string());
            }
            Ok(0)
        }
        Command::ExportCnf { pattern, n, dim, out } => {
            let p = load_pattern(&pattern, report)?;
            let cnf = export_cnf(&p, n, dim)?;
            report.line(format!("variables: {}", cnf.num_vars));
            for kind in [
                poset_ramsey::search::ClauseKind::PatternCopy,
                poset_ramsey::search::ClauseKind::BlueCube,
                poset_ramsey::search::ClauseKind::RedCube,
            ] {
                report.line(format!("{} clauses: {}", kind.tag(), cnf.count(kind)));
            }
            emit(report, out.as_deref(), "dimacs", &cnf.to_dimacs())?;
            Ok(0)
        }
    }
}

fn construct(generator: Generator, report: &mut RunReport) -> Result<u8> {
    match generator {
        Generator::Layered { dim, colors, out } => {
            let colors = colors
                .chars()
                .map(|c| Color::from_char(c).with_context(|| format!("bad layer color `{c}`")))
                .collect::<Result<Vec<_>>>()?;
            let c = layered_coloring(dim, &colors)?;
            emit(report, out.as_deref(), "coloring", &c.to_string())?;
        }
        Generator::AntichainLb { n, t, out } => {
            let c = antichain_lb(n, t)?;
            emit(report, out.as_deref(), "coloring", &c.to_string())?;
        }
        Generator::Band { n, dim, seed, p_base, out, families_out } => {
            let c = c_for_dimension(n, dim)?;
            let fp = sample_st(n, c, p_base, seed)?;
            let host = band_coloring(&fp, n)?;
            let rbr4 = builtin_pattern("alt-chain-rbr:4")?;
            report.line(format!("c: {c}"));
            report.line(format!("|S| = {}, |T| = {}", fp.s.len(), fp.t.len()));
            report.line(format!("C4rbr-free: {}", find_colored_copy(&rbr4, &host)?.is_none()));
            if let Some(path) = families_out {
                fs::write(&path, fp.to_string()).with_context(|| format!("writing {}", path.display()))?;
                report.line(format!("families written to {}", path.display()));
            }
            emit(report, out.as_deref(), "coloring", &host.to_string())?;
        }
        Generator::St { n, c, p_base, seed, verify, out } => {
            let fp = sample_st(n, c, p_base, seed)?;
            if verify {
                let r = verify_st(&fp, n, c)?;
                report.line(format!("(i) levels: {}", r.levels));
                report.line(format!("(ii) parallel: {}", r.parallel));
                report.line(format!("(iii) S dense: {} {}", r.s_dense, witness(r.s_witness)));
                report.line(format!("(iv) T dense: {} {}", r.t_dense, witness(r.t_witness)));
                report.line(format!("pairs checked: {}", r.pairs));
            }
            emit(report, out.as_deref(), "families", &fp.to_string())?;
        }
    }
    Ok(0)
}

fn witness(w: Option<(u32, u32)>) -> String {
    w.map_or(String::new(), |(a, b)| {
        format!("(first failure A={}, B={})", poset_ramsey::finder::fmt_set(a), poset_ramsey::finder::fmt_set(b))
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().collect::<Vec<_>>().join(" ");
    let mut report = RunReport::new(echo);
    let start = Instant::now();
    let status = run(cli, &mut report);
    report.wall = start.elapsed();
    match status {
        Ok(code) => {
            print!("{}", report.render());
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
