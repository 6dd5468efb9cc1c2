//! Command-line front end for the flag-transitive Steiner 4-design
//! classifier.
//!
//! Subcommands:
//!
//! * `verify-design` — check a design file for the Steiner property and,
//!   optionally, flag-transitivity under a group file;
//! * `witt` — construct the Witt `4-(11, 5, 1)` / `4-(23, 7, 1)` designs
//!   and their Mathieu groups, emit them as files, or verify both pairs;
//! * `orbits` — closed-form orbit profile of a `PSL(2, q)` subgroup class
//!   on the projective line, optionally cross-checked against an explicit
//!   construction;
//! * `scan` — run the case elimination for a single 2-transitive family;
//! * `classify` — run the full classification and report the survivors.
//!
//! Exit codes: 0 success/PASS, 1 verification or classification mismatch,
//! 2 usage or input error.  Reports are JSON; designs and groups are plain
//! text (design files: line 1 `v k b`, then `b` lines of `k` sorted
//! 0-based point indices; group files: line 1 `degree m`, then `m` lines
//! of images).  There are no configuration files or environment variables:
//! flags only, so every run is reproducible from its command line.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use steiner4_core::classify::{
    families, params, run_classification, scan, CaseReport, EliminationReport, FamilyTag,
    ScanLimits, Verdict,
};
use steiner4_core::designs::{
    induced_block_perm, is_flag_transitive, verify_steiner, IncidenceStructure, SteinerVerdict,
};
use steiner4_core::perm::PermGroup;
use steiner4_core::psl2::{
    brute_profile, closed_form_profile, construct_subgroup, construct_subgroup_seeded,
    Psl2Context, SubgroupSpec,
};
use steiner4_core::witt::{mathieu_group, verify_main_theorem, witt_design};

/// Mechanized classification of flag-transitive Steiner 4-designs.
#[derive(Parser)]
#[command(name = "steiner4", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a design file for the Steiner property (and, with --group,
    /// flag-transitivity).
    VerifyDesign(VerifyDesignArgs),
    /// Construct the Witt designs and Mathieu groups; emit or verify them.
    Witt(WittArgs),
    /// Orbit profile of a PSL(2,q) subgroup class on the projective line.
    Orbits(OrbitsArgs),
    /// Run the case elimination for one 2-transitive family.
    Scan(ScanArgs),
    /// Run the full classification and report the survivors.
    Classify(ClassifyArgs),
}

#[derive(Args)]
struct VerifyDesignArgs {
    /// Design file: line 1 `v k b`, then b lines of k sorted point indices.
    #[arg(long)]
    file: PathBuf,
    /// Steiner parameter t: every t-subset must lie in exactly one block.
    #[arg(long, default_value_t = 4)]
    t: u64,
    /// Group file; checks block preservation and flag-transitivity.
    #[arg(long)]
    group: Option<PathBuf>,
}

#[derive(Args)]
struct WittArgs {
    /// Number of points: 11 or 23.
    #[arg(long)]
    v: Option<u64>,
    /// Write the design to this file (requires --v).
    #[arg(long)]
    emit: Option<PathBuf>,
    /// Write the Mathieu group generators to this file (requires --emit).
    #[arg(long)]
    group: Option<PathBuf>,
    /// Verify both Witt design / Mathieu group pairs end to end.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct OrbitsArgs {
    /// Field size q of PSL(2, q).
    #[arg(long)]
    q: u64,
    /// Subgroup class: cyclic:c | dihedral:c | ea:qbar | semi:qbar:c |
    /// a4 | s4 | a5 | psl2:qbar | pgl2:qbar.
    #[arg(long)]
    subgroup: String,
    /// Construct the subgroup and compare the closed-form profile against
    /// brute force (prints AGREE or DISAGREE).
    #[arg(long)]
    oracle: bool,
    /// Construction seed, overriding the fixed per-(q, subgroup) default
    /// (requires --oracle).
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Args)]
struct ScanArgs {
    /// Family name as used in JSON reports (e.g. psl, sz, mathieu).
    #[arg(long)]
    family: String,
    /// Ceiling for q (family psl: the PSL(2,q) scan; psu3: the field size).
    #[arg(long)]
    max_q: Option<u64>,
    /// Ceiling for the number of points v (degree-parameterized families).
    #[arg(long)]
    max_v: Option<u64>,
    /// Ceiling for e (family sz: q = 2^(2e+1); family ree: q = 3^(2e+1)).
    #[arg(long)]
    max_e: Option<u64>,
    /// Ceiling for d (family sp2d2: v = 2^(2d-1) +/- 2^(d-1)).
    #[arg(long)]
    max_d: Option<u64>,
    /// Write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; the output is canonical regardless of the count.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Ceiling for q in the PSL(2,q) scan (default 1000).
    #[arg(long)]
    max_q: Option<u64>,
    /// Ceiling for the number of points v (default 1000000).
    #[arg(long)]
    max_v: Option<u64>,
    /// Write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Worker threads; the output is canonical regardless of the count.
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::VerifyDesign(args) => verify_design(args),
        Command::Witt(args) => witt(args),
        Command::Orbits(args) => orbits(args),
        Command::Scan(args) => scan_family(args),
        Command::Classify(args) => classify(args),
    }
}

fn verify_design(args: VerifyDesignArgs) -> Result<ExitCode> {
    let design = IncidenceStructure::from_file(&args.file)
        .with_context(|| format!("reading design file {}", args.file.display()))?;
    if args.t < 1 || args.t > design.k() as u64 {
        bail!("--t must lie in [1, k] = [1, {}]", design.k());
    }
    let t = args.t as usize;
    let mut pass = true;
    match verify_steiner(&design, t) {
        SteinerVerdict::Pass => println!(
            "steiner {t}-({}, {}, 1): PASS ({} blocks)",
            design.v(),
            design.k(),
            design.b()
        ),
        SteinerVerdict::Fail { witness, count } => {
            println!(
                "steiner {t}-({}, {}, 1): FAIL ({witness:?} lies in {count} blocks)",
                design.v(),
                design.k()
            );
            pass = false;
        }
    }
    if let Some(path) = &args.group {
        let group = PermGroup::from_file(path)
            .with_context(|| format!("reading group file {}", path.display()))?;
        if group.degree() != design.v() {
            bail!(
                "group degree {} does not match the design's {} points",
                group.degree(),
                design.v()
            );
        }
        let bad_gen = group
            .gens()
            .iter()
            .position(|g| induced_block_perm(&design, g).is_err());
        match bad_gen {
            Some(i) => {
                println!("block preservation: FAIL (generator {i} does not map blocks to blocks)");
                pass = false;
            }
            None => {
                println!("block preservation: PASS (group order {})", group.order());
                let flag = is_flag_transitive(&design, &group)?;
                println!("flag-transitive: {}", if flag { "PASS" } else { "FAIL" });
                pass &= flag;
            }
        }
    }
    Ok(exit_flag(pass))
}

fn witt(args: WittArgs) -> Result<ExitCode> {
    if args.emit.is_none() && !args.verify {
        bail!("witt requires --emit and/or --verify");
    }
    if args.group.is_some() && args.emit.is_none() {
        bail!("--group requires --emit");
    }
    if let Some(v) = args.v {
        if v != 11 && v != 23 {
            bail!("--v must be 11 or 23, got {v}");
        }
    }
    if let Some(design_path) = &args.emit {
        let v = args.v.context("--emit requires --v 11|23")?;
        let design = match witt_design(v) {
            Ok(d) => d,
            Err(err) => {
                println!("FAIL: {err}");
                return Ok(exit_flag(false));
            }
        };
        design
            .to_file(design_path)
            .with_context(|| format!("writing {}", design_path.display()))?;
        println!(
            "wrote the 4-({v}, {}, 1) design, {} blocks, to {}",
            design.k(),
            design.b(),
            design_path.display()
        );
        if let Some(group_path) = &args.group {
            let group = match mathieu_group(v) {
                Ok(g) => g,
                Err(err) => {
                    println!("FAIL: {err}");
                    return Ok(exit_flag(false));
                }
            };
            group
                .to_file(group_path)
                .with_context(|| format!("writing {}", group_path.display()))?;
            println!(
                "wrote M{v} generators, group order {}, to {}",
                group.order(),
                group_path.display()
            );
        }
    }
    if args.verify {
        match verify_main_theorem() {
            Ok(report) => {
                for (v, orbit) in report.flag_orbits {
                    println!(
                        "pair ({v}, M{v}): flag-transitive, point 2-transitive, \
                         flag orbit {orbit}"
                    );
                }
                println!("PASS");
            }
            Err(err) => {
                println!("FAIL: {err}");
                return Ok(exit_flag(false));
            }
        }
    }
    Ok(exit_flag(true))
}

fn orbits(args: OrbitsArgs) -> Result<ExitCode> {
    if args.seed.is_some() && !args.oracle {
        bail!("--seed requires --oracle");
    }
    let ctx = Psl2Context::new(args.q).with_context(|| format!("invalid q = {}", args.q))?;
    let spec = SubgroupSpec::parse(&args.subgroup, &ctx)
        .with_context(|| format!("invalid subgroup spec {:?}", args.subgroup))?;
    let closed = closed_form_profile(&ctx, &spec)
        .with_context(|| format!("no {spec} subgroup class in PSL(2, {})", args.q))?;
    if !args.oracle {
        for (len, count) in closed.counts() {
            println!("{len}:{count}");
        }
        return Ok(exit_flag(true));
    }
    let group = match args.seed {
        Some(seed) => construct_subgroup_seeded(&ctx, &spec, seed),
        None => construct_subgroup(&ctx, &spec),
    }
    .with_context(|| format!("constructing {spec} in PSL(2, {})", args.q))?;
    let brute = brute_profile(&group);
    let mut lengths: BTreeSet<u64> = closed.counts().keys().copied().collect();
    lengths.extend(brute.counts().keys().copied());
    for len in lengths {
        println!("{len}:{} {len}:{}", closed.count(len), brute.count(len));
    }
    let agree = closed == brute;
    println!("{}", if agree { "AGREE" } else { "DISAGREE" });
    Ok(exit_flag(agree))
}

fn scan_family(args: ScanArgs) -> Result<ExitCode> {
    let tag = FamilyTag::parse(&args.family).with_context(|| {
        let known: Vec<&str> = FamilyTag::ALL.iter().map(|t| t.name()).collect();
        format!(
            "unknown family {:?}; known families: {}",
            args.family,
            known.join(", ")
        )
    })?;
    validate_scan_flags(tag, &args)?;
    install_jobs(args.jobs)?;
    let defaults = ScanLimits::default();
    let limits = ScanLimits {
        q_max: args.max_q.unwrap_or(defaults.q_max),
        v_max: args.max_v.unwrap_or(defaults.v_max),
    };
    let report = EliminationReport::new(family_cases(tag, &limits, &args)?);
    summarize(&format!("family {tag}"), &report);
    write_report(args.out.as_deref(), &report)?;
    // A family scan succeeds exactly when it produces no survivors beyond
    // the two Witt/Mathieu pairs of the classification.
    let witt_11 = params(&[("k", 5), ("v", 11)]);
    let witt_23 = params(&[("k", 7), ("v", 23)]);
    let ok = report
        .survivors()
        .iter()
        .all(|c| c.family == FamilyTag::Mathieu && (c.params == witt_11 || c.params == witt_23));
    Ok(exit_flag(ok))
}

/// Rejects scan limit flags that the chosen family does not consume.
fn validate_scan_flags(tag: FamilyTag, args: &ScanArgs) -> Result<()> {
    use FamilyTag::*;
    let allowed: &[&str] = match tag {
        AffineGammaL1 | AffineSl | AffineSp | AffineG2 => &["max-v"],
        PslD => &["max-q", "max-v"],
        Psu3 => &["max-q"],
        Sz | Ree => &["max-e"],
        Sp2d2 => &["max-d"],
        _ => &[],
    };
    let given = [
        ("max-q", args.max_q.is_some()),
        ("max-v", args.max_v.is_some()),
        ("max-e", args.max_e.is_some()),
        ("max-d", args.max_d.is_some()),
    ];
    for (name, present) in given {
        if present && !allowed.contains(&name) {
            bail!("--{name} does not apply to family {tag}");
        }
    }
    Ok(())
}

/// All case rows for one family at the given ceilings.
fn family_cases(tag: FamilyTag, limits: &ScanLimits, args: &ScanArgs) -> Result<Vec<CaseReport>> {
    use FamilyTag::*;
    Ok(match tag {
        AffineGammaL1 => families::check_affine_gammal1(limits.v_max),
        AffineSl => families::check_affine_sl(limits.v_max),
        AffineSp => families::check_affine_sp(limits.v_max),
        AffineG2 => families::check_affine_g2(limits.v_max),
        Alt => families::check_alt(),
        Mathieu => families::check_mathieu(),
        Psl2Deg11 => families::check_psl2_11(),
        PslD => {
            let mut rows = scan::psl2_case_scan(limits.q_max)?.cases;
            rows.extend(families::check_psl3(limits.v_max));
            rows.extend(families::check_psld_reduction(limits.v_max));
            rows
        }
        Psu3 => families::check_psu3(args.max_q.unwrap_or_else(|| limits.psu3_q_max())),
        Sz => families::check_sz(args.max_e.unwrap_or_else(|| limits.sz_e_max())),
        Ree => families::check_ree(args.max_e.unwrap_or_else(|| limits.ree_e_max())),
        Sp2d2 => families::check_sp2d2(args.max_d.unwrap_or_else(|| limits.sp2d2_d_max())),
        AffineSporadic | Psl2Deg28 | M11Deg12 | A7Deg15 | Hs | Co3 => {
            families::check_small_cases()
                .into_iter()
                .filter(|c| c.family == tag)
                .collect()
        }
    })
}

fn classify(args: ClassifyArgs) -> Result<ExitCode> {
    install_jobs(args.jobs)?;
    let defaults = ScanLimits::default();
    let limits = ScanLimits {
        q_max: args.max_q.unwrap_or(defaults.q_max),
        v_max: args.max_v.unwrap_or(defaults.v_max),
    };
    let report = match run_classification(&limits) {
        Ok(report) => report,
        Err(err) => {
            println!("FAIL: {err}");
            return Ok(exit_flag(false));
        }
    };
    summarize("classification", &report);
    write_report(args.out.as_deref(), &report)?;
    let matches = report.matches_main_theorem();
    println!(
        "{}",
        if matches {
            "survivors match the two Witt/Mathieu pairs"
        } else {
            "survivor set does NOT match the classification"
        }
    );
    Ok(exit_flag(matches))
}

/// Prints the per-verdict row counts and one line per survivor.
fn summarize(label: &str, report: &EliminationReport) {
    let (mut mech, mut cited, mut surv) = (0usize, 0usize, 0usize);
    for case in report.cases() {
        match case.verdict {
            Verdict::EliminatedMechanized => mech += 1,
            Verdict::EliminatedCited => cited += 1,
            Verdict::Survivor => surv += 1,
        }
    }
    println!(
        "{label}: {} rows: mechanized {mech}, cited {cited}, survivors {surv}",
        report.cases().len()
    );
    for case in report.survivors() {
        let ps: Vec<String> = case
            .params
            .iter()
            .map(|(name, value)| format!("{name}={value}"))
            .collect();
        println!("survivor: {} {}", case.family, ps.join(" "));
    }
}

fn write_report(path: Option<&Path>, report: &EliminationReport) -> Result<()> {
    if let Some(path) = path {
        fs::write(path, report.to_json())
            .with_context(|| format!("writing {}", path.display()))?;
        println!("wrote JSON report to {}", path.display());
    }
    Ok(())
}

/// Installs a bounded worker pool when `--jobs` is given.
fn install_jobs(jobs: Option<usize>) -> Result<()> {
    if let Some(n) = jobs {
        if n == 0 {
            bail!("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("installing the worker thread pool")?;
    }
    Ok(())
}

fn exit_flag(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
