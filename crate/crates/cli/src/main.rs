//! `dts`: construct, verify, sequence, and prove non-sequenceability of
//! directed triple systems.
//!
//! Exit codes: 0 success / claim holds, 1 negative result (invalid design,
//! no sequencing, refuted, bad proof), 2 budget exhausted, 3 input error.

mod manifest;

use std::collections::BTreeMap;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use dts_core::budget::Budget;
use dts_core::catalog;
use dts_core::construct::{
    build_sequenceable, build_unsequenceable, compose_pbd, compose_pbd_with_bad_block, Filler,
};
use dts_core::design::{is_l_good, Dts, Sequencing, Triple};
use dts_core::enumerate::{classify_directings, CensusOptions};
use dts_core::error::Error as CoreError;
use dts_core::format;
use dts_core::hillclimb::{hill_climb, ClimbConfig, ClimbOutcome};
use dts_core::prover::{check_proof, decide_v_good, proof_to_text, ProofTree, ProverVerdict};
use dts_core::search::{count_l_good_parallel, find_l_good, max_good_l, MaxGoodL, SearchOutcome};
use dts_core::suite::{self, SuiteOptions};

use manifest::RunManifest;

const EXIT_OK: i32 = 0;
const EXIT_NEGATIVE: i32 = 1;
const EXIT_BUDGET: i32 = 2;
const EXIT_INPUT: i32 = 3;

#[derive(Parser)]
#[command(name = "dts", version, about = "Directed triple systems: build, sequence, prove")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Input design file (default: standard input).
    #[arg(long = "in", global = true, value_name = "FILE")]
    input: Option<PathBuf>,
    /// Output file (default: standard output).
    #[arg(long = "out", global = true, value_name = "FILE")]
    output: Option<PathBuf>,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Node budget for searches and the prover.
    #[arg(long, global = true, value_name = "N")]
    budget_nodes: Option<u64>,
    /// Time budget in seconds.
    #[arg(long, global = true, value_name = "S")]
    budget_secs: Option<f64>,
    /// Worker threads for counting and the census.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Write a reproducibility manifest (inputs, outputs, digests, timings).
    #[arg(long, global = true, value_name = "FILE")]
    manifest: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check that the input is a valid directed triple system.
    Verify {
        /// Also check the trailing SEQ line at this window length.
        #[arg(long)]
        l: Option<usize>,
    },
    /// Search for l-good sequencings.
    Seq {
        #[command(subcommand)]
        action: SeqCommand,
    },
    /// Decide v-good sequenceability; print a witness or a refutation.
    Prove {
        /// Also write the machine-checkable proof tree as JSON.
        #[arg(long, value_name = "FILE")]
        emit_json_tree: Option<PathBuf>,
    },
    /// Check a JSON proof file produced by `prove --emit-json-tree`.
    CheckProof { tree_file: PathBuf },
    /// Build designs of a given order.
    Build {
        #[command(subcommand)]
        action: BuildCommand,
    },
    /// Compose a design along a pairwise balanced design.
    Compose {
        #[arg(long, value_name = "FILE")]
        pbd: PathBuf,
        /// Directory of filler designs (canonical format with SEQ lines).
        #[arg(long, value_name = "DIR")]
        fill: Option<PathBuf>,
        /// Fill this block with the `--bad` design instead.
        #[arg(long, value_name = "INDEX")]
        bad_block: Option<usize>,
        /// A design without a good sequencing, for `--bad-block`.
        #[arg(long, value_name = "FILE")]
        bad: Option<PathBuf>,
    },
    /// Hill-climb a design, optionally protecting initial triples.
    Climb {
        #[arg(long)]
        v: usize,
        /// File of triples that must survive into the output.
        #[arg(long, value_name = "FILE")]
        protect: Option<PathBuf>,
        #[arg(long, default_value_t = 100_000)]
        max_iter: u64,
        #[arg(long, default_value_t = 2_000)]
        restart: u64,
        /// Print the decision log.
        #[arg(long)]
        transcript: bool,
    },
    /// Direct the blocks of a twofold triple system in all ways and
    /// classify the results by sequenceability.
    Census {
        #[arg(long, value_name = "FILE")]
        tts: PathBuf,
    },
    /// Built-in reference designs.
    Catalog {
        #[command(subcommand)]
        action: CatalogCommand,
    },
    /// Run the reproduction suite (all claims re-derived).
    Suite {
        /// Run a single check (C1..C11).
        #[arg(long, value_name = "NAME")]
        only: Option<String>,
    },
}

#[derive(Subcommand)]
enum SeqCommand {
    /// Find one l-good sequencing.
    Find {
        #[arg(long)]
        l: usize,
    },
    /// Count all l-good sequencings exactly.
    Count {
        #[arg(long)]
        l: usize,
        /// Allow counting above order 8 (factorial growth).
        #[arg(long)]
        force: bool,
    },
    /// Largest l with an l-good sequencing.
    Maxl,
}

#[derive(Subcommand)]
enum BuildCommand {
    /// A DTS(v) with a verified v-good sequencing.
    Good {
        #[arg(long)]
        v: usize,
    },
    /// A DTS(v) with no v-good sequencing, plus its embedding certificate.
    Bad {
        #[arg(long)]
        v: usize,
        /// Write the embedding certificate as JSON.
        #[arg(long, value_name = "FILE")]
        cert: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    List,
    /// Print one entry in canonical format.
    Show { name: String },
}

/// Proof file: the triples the tree refutes, plus the tree itself.
#[derive(Serialize, Deserialize)]
struct ProofFile {
    v: usize,
    triples: Vec<Triple>,
    tree: ProofTree,
}

struct Ctx {
    input: Option<PathBuf>,
    output: Option<PathBuf>,
    budget: Budget,
    workers: usize,
    manifest: RunManifest,
}

impl Ctx {
    fn read_input(&mut self) -> anyhow::Result<String> {
        let (name, text) = match &self.input {
            Some(path) => (
                path.display().to_string(),
                std::fs::read_to_string(path)
                    .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?,
            ),
            None => {
                let mut buf = String::new();
                std::io::stdin().read_to_string(&mut buf)?;
                ("(stdin)".to_string(), buf)
            }
        };
        self.manifest.record_input(&name, text.as_bytes());
        Ok(text)
    }

    fn read_design(&mut self) -> anyhow::Result<(Dts, Option<Sequencing>)> {
        let text = self.read_input()?;
        Ok(format::parse_design(&text)?)
    }

    fn read_file(&mut self, path: &Path) -> anyhow::Result<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
        self.manifest.record_input(&path.display().to_string(), text.as_bytes());
        Ok(text)
    }

    fn write_file(&mut self, path: &Path, content: &str) -> anyhow::Result<()> {
        std::fs::write(path, content).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
        self.manifest.record_output(&path.display().to_string(), content.as_bytes());
        Ok(())
    }

    fn emit(&mut self, content: &str) -> anyhow::Result<()> {
        match self.output.clone() {
            Some(path) => self.write_file(&path, content),
            None => {
                print!("{content}");
                self.manifest.record_output("(stdout)", content.as_bytes());
                Ok(())
            }
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> i32 {
    match err.downcast_ref::<CoreError>() {
        Some(CoreError::PartialCount { .. }) => EXIT_BUDGET,
        Some(CoreError::ProofCheck { .. }) => EXIT_NEGATIVE,
        Some(_) => EXIT_INPUT,
        None => EXIT_INPUT,
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_INPUT,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };

    let budget = Budget {
        max_nodes: cli.budget_nodes,
        max_time: cli.budget_secs.map(std::time::Duration::from_secs_f64),
    };
    let mut ctx = Ctx {
        input: cli.input.clone(),
        output: cli.output.clone(),
        budget,
        workers: cli.workers.max(1),
        manifest: RunManifest::new(cli.seed, cli.budget_nodes, cli.budget_secs, cli.workers),
    };

    let manifest_path = cli.manifest.clone();
    let code = match run(cli, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code_for(&e)
        }
    };
    if let Some(path) = manifest_path {
        if let Err(e) = ctx.manifest.write(&path, code) {
            eprintln!("error: could not write manifest: {e}");
        }
    }
    std::process::exit(code);
}

fn run(cli: Cli, ctx: &mut Ctx) -> anyhow::Result<i32> {
    match cli.command {
        Command::Verify { l } => cmd_verify(ctx, l),
        Command::Seq { action } => match action {
            SeqCommand::Find { l } => cmd_seq_find(ctx, l),
            SeqCommand::Count { l, force } => cmd_seq_count(ctx, l, force),
            SeqCommand::Maxl => cmd_seq_maxl(ctx),
        },
        Command::Prove { emit_json_tree } => cmd_prove(ctx, emit_json_tree),
        Command::CheckProof { tree_file } => cmd_check_proof(ctx, &tree_file),
        Command::Build { action } => match action {
            BuildCommand::Good { v } => cmd_build_good(ctx, v),
            BuildCommand::Bad { v, cert } => cmd_build_bad(ctx, v, cert),
        },
        Command::Compose { pbd, fill, bad_block, bad } => {
            cmd_compose(ctx, &pbd, fill.as_deref(), bad_block, bad.as_deref())
        }
        Command::Climb { v, protect, max_iter, restart, transcript } => {
            cmd_climb(ctx, cli.seed, v, protect.as_deref(), max_iter, restart, transcript)
        }
        Command::Census { tts } => cmd_census(ctx, &tts),
        Command::Catalog { action } => match action {
            CatalogCommand::List => cmd_catalog_list(ctx),
            CatalogCommand::Show { name } => cmd_catalog_show(ctx, &name),
        },
        Command::Suite { only } => cmd_suite(ctx, only.as_deref()),
    }
}

fn cmd_verify(ctx: &mut Ctx, l: Option<usize>) -> anyhow::Result<i32> {
    let (dts, seq) = ctx.read_design()?;
    let report = dts.validate();
    if !report.valid() {
        println!("INVALID: {}", report.summary());
        return Ok(EXIT_NEGATIVE);
    }
    println!("VALID DTS({}) with {} triples", dts.v(), dts.triples().len());
    if let Some(l) = l {
        let Some(seq) = seq else {
            anyhow::bail!("--l given but the input has no SEQ line");
        };
        if is_l_good(&dts, &seq, l)? {
            println!("SEQ is {l}-good");
        } else {
            println!("SEQ is not {l}-good");
            return Ok(EXIT_NEGATIVE);
        }
    }
    Ok(EXIT_OK)
}

fn cmd_seq_find(ctx: &mut Ctx, l: usize) -> anyhow::Result<i32> {
    let (dts, _) = ctx.read_design()?;
    match find_l_good(&dts, l, &ctx.budget)? {
        SearchOutcome::Found(seq) => {
            println!("SEQ {seq}");
            Ok(EXIT_OK)
        }
        SearchOutcome::NoneExists => {
            println!("no {l}-good sequencing exists (search exhausted)");
            Ok(EXIT_NEGATIVE)
        }
        SearchOutcome::BudgetExhausted => {
            println!("budget exhausted before a decision");
            Ok(EXIT_BUDGET)
        }
    }
}

fn cmd_seq_count(ctx: &mut Ctx, l: usize, force: bool) -> anyhow::Result<i32> {
    let (dts, _) = ctx.read_design()?;
    if dts.v() > 8 && !force {
        anyhow::bail!(
            "exact counting scans {}! permutations; pass --force to insist",
            dts.v()
        );
    }
    let n = count_l_good_parallel(&dts, l, &ctx.budget, ctx.workers)?;
    println!("{n}");
    Ok(EXIT_OK)
}

fn cmd_seq_maxl(ctx: &mut Ctx) -> anyhow::Result<i32> {
    let (dts, _) = ctx.read_design()?;
    match max_good_l(&dts, &ctx.budget)? {
        MaxGoodL::Exact { l, witness } => {
            println!("maxl {l} certified");
            println!("SEQ {witness}");
            Ok(EXIT_OK)
        }
        MaxGoodL::LowerBound { l, witness } => {
            println!("maxl >= {l} (budget exhausted before certifying {})", l + 1);
            println!("SEQ {witness}");
            Ok(EXIT_BUDGET)
        }
        MaxGoodL::NoneGood => {
            println!("no 3-good sequencing exists");
            Ok(EXIT_NEGATIVE)
        }
        MaxGoodL::Unknown => {
            println!("budget exhausted before any decision");
            Ok(EXIT_BUDGET)
        }
    }
}

fn cmd_prove(ctx: &mut Ctx, emit: Option<PathBuf>) -> anyhow::Result<i32> {
    let (dts, _) = ctx.read_design()?;
    let budget = if ctx.budget.is_unlimited() {
        Budget::nodes(1_000_000)
    } else {
        ctx.budget
    };
    match decide_v_good(dts.v(), dts.triples(), &budget) {
        ProverVerdict::Sequenceable(seq) => {
            println!("SEQ {seq}");
            Ok(EXIT_OK)
        }
        ProverVerdict::Unsequenceable(tree) => {
            print!("no {}-good sequencing:\n{}", dts.v(), proof_to_text(dts.triples(), &tree));
            if let Some(path) = emit {
                let file = ProofFile {
                    v: dts.v(),
                    triples: dts.triples().to_vec(),
                    tree,
                };
                let json = serde_json::to_string_pretty(&file)?;
                ctx.write_file(&path, &json)?;
            }
            Ok(EXIT_NEGATIVE)
        }
        ProverVerdict::Unknown { nodes } => {
            println!("undecided: budget exhausted after {nodes} nodes");
            Ok(EXIT_BUDGET)
        }
    }
}

fn cmd_check_proof(ctx: &mut Ctx, path: &Path) -> anyhow::Result<i32> {
    let text = ctx.read_file(path)?;
    let file: ProofFile = serde_json::from_str(&text)
        .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
    match check_proof(file.v, &file.triples, &file.tree) {
        Ok(()) => {
            println!("proof OK: certifies no {}-good sequencing", file.v);
            Ok(EXIT_OK)
        }
        Err(e) => {
            println!("proof REJECTED: {e}");
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_build_good(ctx: &mut Ctx, v: usize) -> anyhow::Result<i32> {
    let (dts, seq) = build_sequenceable(v)?;
    ctx.emit(&format::serialize_design(&dts, Some(&seq)))?;
    Ok(EXIT_OK)
}

fn cmd_build_bad(ctx: &mut Ctx, v: usize, cert_path: Option<PathBuf>) -> anyhow::Result<i32> {
    let (dts, cert) = build_unsequenceable(v)?;
    ctx.emit(&format::serialize_design(&dts, None))?;
    eprintln!(
        "# embedded {} pattern of {} triples at points {:?}",
        match cert.kind {
            dts_core::construct::CertificateKind::Gadget => "gadget",
            dts_core::construct::CertificateKind::SeedSubdesign => "seed-subdesign",
        },
        cert.pattern.len(),
        cert.injection
    );
    if let Some(path) = cert_path {
        let json = serde_json::to_string_pretty(&cert)?;
        ctx.write_file(&path, &json)?;
    }
    Ok(EXIT_OK)
}

fn load_fillers(ctx: &mut Ctx, dir: Option<&Path>, sizes: &[usize]) -> anyhow::Result<BTreeMap<usize, Filler>> {
    let mut fillers = BTreeMap::new();
    if let Some(dir) = dir {
        let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
            .map_err(|e| anyhow::anyhow!("{}: {e}", dir.display()))?
            .filter_map(|entry| entry.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "dts"))
            .collect();
        paths.sort();
        for path in paths {
            let text = ctx.read_file(&path)?;
            let (dts, seq) = format::parse_design(&text)?;
            let Some(seq) = seq else {
                anyhow::bail!("{}: filler has no SEQ line", path.display());
            };
            let v = dts.v();
            let filler = Filler::new(dts, seq)
                .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
            if fillers.insert(v, filler).is_some() {
                anyhow::bail!("two fillers of order {v} in {}", dir.display());
            }
        }
    }
    for &size in sizes {
        if let std::collections::btree_map::Entry::Vacant(e) = fillers.entry(size) {
            if let Ok((dts, seq)) = build_sequenceable(size) {
                e.insert(Filler { dts, seq });
            }
        }
    }
    Ok(fillers)
}

fn cmd_compose(
    ctx: &mut Ctx,
    pbd_path: &Path,
    fill: Option<&Path>,
    bad_block: Option<usize>,
    bad: Option<&Path>,
) -> anyhow::Result<i32> {
    let pbd = format::parse_pbd(&ctx.read_file(pbd_path)?)?;
    let sizes: Vec<usize> = pbd.blocks().iter().map(|b| b.len()).collect();
    let fillers = load_fillers(ctx, fill, &sizes)?;
    match (bad_block, bad) {
        (Some(index), Some(bad_path)) => {
            let (bad_dts, _) = format::parse_design(&ctx.read_file(bad_path)?)?;
            let (dts, cert) = compose_pbd_with_bad_block(&pbd, &fillers, index, &bad_dts)?;
            ctx.emit(&format::serialize_design(&dts, None))?;
            eprintln!(
                "# bad block {index}: {} triples embedded at points {:?}",
                cert.pattern.len(),
                cert.injection
            );
        }
        (None, None) => {
            let (dts, seq) = compose_pbd(&pbd, &fillers)?;
            ctx.emit(&format::serialize_design(&dts, Some(&seq)))?;
        }
        _ => anyhow::bail!("--bad-block and --bad must be given together"),
    }
    Ok(EXIT_OK)
}

fn cmd_climb(
    ctx: &mut Ctx,
    seed: u64,
    v: usize,
    protect: Option<&Path>,
    max_iter: u64,
    restart: u64,
    transcript: bool,
) -> anyhow::Result<i32> {
    let initial: Vec<Triple> = match protect {
        Some(path) => {
            let text = ctx.read_file(path)?;
            let parsed = format::parse_design(&text)?;
            parsed.0.triples().to_vec()
        }
        None => Vec::new(),
    };
    let config = ClimbConfig {
        seed,
        max_iterations: max_iter,
        restart_after_stall: restart,
        keep_transcript: transcript,
    };
    let report = hill_climb(v, &initial, &config)?;
    if transcript {
        for line in &report.transcript {
            eprintln!("{line}");
        }
    }
    match report.outcome {
        ClimbOutcome::Complete(dts) => {
            eprintln!(
                "# complete after {} iterations, {} restarts",
                report.iterations, report.restarts
            );
            ctx.emit(&format::serialize_design(&dts, None))?;
            Ok(EXIT_OK)
        }
        ClimbOutcome::Stalled { triples_reached } => {
            println!(
                "stalled at {triples_reached}/{} triples after {} iterations ({} restarts)",
                Dts::expected_triples(v),
                report.iterations,
                report.restarts
            );
            Ok(EXIT_NEGATIVE)
        }
    }
}

fn cmd_census(ctx: &mut Ctx, tts_path: &Path) -> anyhow::Result<i32> {
    let tts = format::parse_tts(&ctx.read_file(tts_path)?)?;
    let budget = if ctx.budget.is_unlimited() {
        Budget::nodes(1_000_000)
    } else {
        ctx.budget
    };
    let options = CensusOptions { budget, workers: ctx.workers };
    let report = classify_directings(&tts, &options)?;
    let mut out = String::new();
    out.push_str(&format!(
        "directings={} classes={} with_v_good={} exceptional={}{}\n",
        report.total_directings,
        report.nonisomorphic,
        report.with_v_good,
        report.exceptional.len(),
        if report.complete { "" } else { " (PARTIAL: budget exhausted)" },
    ));
    for e in &report.exceptional {
        out.push_str(&format!("CLASS {} maxl={}\n", e.canonical.hex(), e.max_good_l));
    }
    ctx.emit(&out)?;
    Ok(if report.complete { EXIT_OK } else { EXIT_BUDGET })
}

fn cmd_catalog_list(_ctx: &mut Ctx) -> anyhow::Result<i32> {
    for e in catalog::entries() {
        println!(
            "{:<12} v={:<3} triples={:<4}{}",
            e.name,
            e.dts.v(),
            e.dts.triples().len(),
            if e.partial { " (partial set)" } else { "" }
        );
    }
    Ok(EXIT_OK)
}

fn cmd_catalog_show(ctx: &mut Ctx, name: &str) -> anyhow::Result<i32> {
    let entry = catalog::builtin(name)?;
    ctx.emit(&format::serialize_design(&entry.dts, entry.seq.as_ref()))?;
    Ok(EXIT_OK)
}

fn cmd_suite(ctx: &mut Ctx, only: Option<&str>) -> anyhow::Result<i32> {
    let options = SuiteOptions { workers: ctx.workers };
    let results = match only {
        Some(name) => {
            let r = suite::run_check(name, &options)
                .ok_or_else(|| anyhow::anyhow!("unknown check {name:?}; have C1..C11"))?;
            vec![r]
        }
        None => {
            let mut results = Vec::new();
            for name in suite::CHECK_NAMES {
                let r = suite::run_check(name, &options).expect("known name");
                println!("{}", r.line());
                results.push(r);
            }
            results
        }
    };
    if only.is_some() {
        for r in &results {
            println!("{}", r.line());
        }
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    if failed == 0 {
        println!("suite: all {} checks passed", results.len());
        Ok(EXIT_OK)
    } else {
        println!("suite: {failed} of {} checks FAILED", results.len());
        Ok(EXIT_NEGATIVE)
    }
}
