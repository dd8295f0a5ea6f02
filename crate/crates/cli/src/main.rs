mod inputs;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use chebotarev::covers::{element_loops, verify_bijection_all};
use chebotarev::experiment::{run_a5_experiment, ExperimentConfig, ExperimentError, SubgroupSpec};
use chebotarev::freewords::abelianized_matrix;
use chebotarev::quotients::SearchOptions;
use chebotarev::sft::{enumerate_orbits, exact_counts, DEFAULT_DP_CAP};
use chebotarev::{
    build_cover, chebotarev_report, coset_action, cyclic_reduce, decompose_loop, generic_check, quotient_search,
    smith_normal_form, verify_artin, Word,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::render::{decimal, density_rows, density_text, final_deviation, ratio, Table};

#[derive(Parser)]
#[command(name = "chebotarev", version, about = "Decomposition types in finite covers and orbit densities of group-labeled subshifts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite permutation groups
    #[command(subcommand)]
    Group(GroupCmd),
    /// Braid closures
    #[command(subcommand)]
    Braid(BraidCmd),
    /// Loops in coset-graph covers
    #[command(subcommand)]
    Cover(CoverCmd),
    /// Group-labeled subshifts of finite type
    #[command(subcommand)]
    Sft(SftCmd),
    /// Homomorphisms onto finite groups
    #[command(subcommand)]
    Quotient(QuotientCmd),
    /// Smith normal form of an integer matrix file (`-` for stdin)
    Snf { matrix: PathBuf },
    /// Whether class words generate H1
    #[command(subcommand)]
    Generic(GenericCmd),
    /// Decomposition-type densities of the A5 example against 1/60, 1/4, 1/3, 2/5
    A5Experiment(ExperimentArgs),
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Conjugacy classes of a group file or standard name (S4, A5, D6, Z5)
    Classes { group: String },
}

#[derive(Subcommand)]
enum BraidCmd {
    /// Wirtinger-style presentation of a braid closure, e.g. `2:s1 s1 s1`
    Presentation { braid: String },
}

#[derive(Subcommand)]
enum CoverCmd {
    /// Decomposition type of loops in the cover of a subgroup
    Decompose {
        #[command(flatten)]
        hom: HomArg,
        #[command(flatten)]
        subgroup: SubgroupArg,
        /// Loop words such as `x1 x2^-1`
        #[arg(required = true)]
        words: Vec<String>,
    },
    /// Compare covering-graph decomposition types with monodromy cycle types
    VerifyArtin {
        group: String,
        /// Check one subgroup instead of all of them
        #[command(flatten)]
        subgroup: SubgroupArg,
    },
}

#[derive(Subcommand)]
enum SftCmd {
    /// List primitive periodic orbits in length order
    Orbits {
        #[command(flatten)]
        files: SftArgs,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
        /// Print at most this many orbits (counts per length are always shown)
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Per-class and per-cycle-type densities at every cutoff
    Chebotarev {
        #[command(flatten)]
        files: SftArgs,
        #[command(flatten)]
        density: DensityArgs,
    },
}

#[derive(Subcommand)]
enum QuotientCmd {
    /// All homomorphisms (surjections by default) onto a target group
    Search {
        #[command(flatten)]
        pres: PresentationArgs,
        /// Target group file or standard name
        #[arg(long)]
        target: String,
        /// Include non-surjective homomorphisms
        #[arg(long)]
        all: bool,
        /// Keep one representative per simultaneous conjugation orbit
        #[arg(long)]
        dedup: bool,
        #[arg(long, default_value_t = chebotarev::quotients::DEFAULT_SEARCH_BUDGET)]
        budget: u128,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Print only the count
        #[arg(long)]
        count_only: bool,
    },
}

#[derive(Subcommand)]
enum GenericCmd {
    /// Smith-form test with a Z/p witness on failure
    Check {
        #[command(flatten)]
        pres: PresentationArgs,
        /// Class words; repeatable
        #[arg(long = "class")]
        classes: Vec<String>,
    },
}

#[derive(Args)]
struct HomArg {
    /// Homomorphism file (default: bundled A5 generators)
    #[arg(long)]
    hom: Option<PathBuf>,
}

#[derive(Args)]
struct SubgroupArg {
    /// `stab:N` or generators separated by `;`
    #[arg(long)]
    subgroup: Option<String>,
}

#[derive(Args)]
struct SftArgs {
    /// Subshift file (default: bundled A5 example)
    #[arg(long)]
    sft: Option<PathBuf>,
    /// Homomorphism file resolving edge labels (default: bundled A5)
    #[arg(long)]
    hom: Option<PathBuf>,
}

#[derive(Args)]
struct PresentationArgs {
    /// Braid whose closure is presented, e.g. `2:s1 s1 s1`
    #[arg(long)]
    braid: Option<String>,
    /// Number of generators of an explicit presentation
    #[arg(long)]
    generators: Option<usize>,
    /// Relator word; repeatable
    #[arg(long = "relator")]
    relators: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Rows,
}

#[derive(Args)]
struct DensityArgs {
    #[arg(long, default_value_t = 11)]
    max_len: usize,
    /// Drop this many orbits from the start of the length order
    #[arg(long, default_value_t = 0)]
    skip: usize,
    #[arg(long, default_value_t = 0.02)]
    tolerance: f64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct ExperimentArgs {
    #[command(flatten)]
    files: SftArgs,
    /// Index-5 subgroup (default: the stabilizer of a point)
    #[command(flatten)]
    subgroup: SubgroupArg,
    #[command(flatten)]
    density: DensityArgs,
}

/// Whether a command's verification succeeded.
enum Status {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Failed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            let verification = e
                .downcast_ref::<ExperimentError>()
                .is_some_and(|e| !e.is_input_error());
            ExitCode::from(if verification { 1 } else { 2 })
        }
    }
}

fn run(cmd: Command) -> Result<Status> {
    match cmd {
        Command::Group(GroupCmd::Classes { group }) => group_classes(&group),
        Command::Braid(BraidCmd::Presentation { braid }) => braid_presentation(&braid),
        Command::Cover(CoverCmd::Decompose { hom, subgroup, words }) => {
            cover_decompose(hom, subgroup.subgroup.as_deref(), &words)
        }
        Command::Cover(CoverCmd::VerifyArtin { group, subgroup }) => {
            cover_verify(&group, subgroup.subgroup.as_deref())
        }
        Command::Sft(SftCmd::Orbits { files, max_len, limit }) => sft_orbits(files, max_len, limit),
        Command::Sft(SftCmd::Chebotarev { files, density }) => sft_chebotarev(files, density),
        Command::Quotient(QuotientCmd::Search {
            pres,
            target,
            all,
            dedup,
            budget,
            workers,
            count_only,
        }) => {
            let opts = SearchOptions {
                surjective_only: !all,
                dedup_conjugation: dedup,
                budget,
                workers: workers.max(1),
            };
            search(pres, &target, &opts, count_only)
        }
        Command::Snf { matrix } => snf(matrix),
        Command::Generic(GenericCmd::Check { pres, classes }) => generic(pres, &classes),
        Command::A5Experiment(args) => a5_experiment(args),
    }
}

fn group_classes(spec: &str) -> Result<Status> {
    let g = inputs::load_group(spec)?;
    println!("order {} on {} points", g.order(), g.degree());
    let mut t = Table::new(["class", "size", "order", "cycle type", "representative"]);
    for (i, c) in g.conjugacy_classes().iter().enumerate() {
        let rep = g.element(c.representative);
        t.push(vec![
            format!("C{i}"),
            c.size().to_string(),
            rep.order().to_string(),
            rep.cycle_type().to_string(),
            rep.to_string(),
        ]);
    }
    print!("{}", t.render());
    Ok(Status::Ok)
}

fn braid_presentation(text: &str) -> Result<Status> {
    let braid = chebotarev::BraidWord::parse(text)?;
    let p = chebotarev::braid_presentation(&braid);
    println!("braid {braid}");
    println!("{p}");
    let snf = smith_normal_form(&abelianized_matrix(&p));
    let diag = snf.diagonal();
    let torsion: Vec<String> = diag.iter().filter(|d| **d > 1.into()).map(|d| format!("Z/{d}")).collect();
    let free_rank = p.generator_count() - snf.rank();
    let mut parts = Vec::new();
    if free_rank > 0 {
        parts.push(if free_rank == 1 { "Z".to_string() } else { format!("Z^{free_rank}") });
    }
    parts.extend(torsion);
    println!("H1 = {}", if parts.is_empty() { "0".into() } else { parts.join(" + ") });
    Ok(Status::Ok)
}

fn cover_decompose(hom: HomArg, subgroup: Option<&str>, words: &[String]) -> Result<Status> {
    let hom = inputs::load_hom(hom.hom.as_deref())?;
    let g = hom.target().clone();
    let sub = inputs::resolve_subgroup(&g, subgroup)?;
    let cover = build_cover(&hom, &sub)?;
    let action = coset_action(&g, &sub)?;
    println!("cover of index {} (subgroup order {})", cover.vertex_count(), sub.order());
    let mut t = Table::new(["word", "image", "monodromy type", "decomposition type", "components"]);
    let mut agree = true;
    for text in words {
        let word = Word::parse(text).with_context(|| format!("word {text:?}"))?;
        let cw = cyclic_reduce(&word);
        let lift = decompose_loop(&cover, &cw).with_context(|| format!("word {text:?}"))?;
        let z = hom.evaluate(&word)?;
        let mono = action.image(z).cycle_type();
        agree &= mono == lift.decomposition_type;
        let comps: Vec<String> = lift
            .components
            .iter()
            .map(|c| {
                let vs: Vec<String> = c.vertices.iter().map(|v| v.to_string()).collect();
                format!("{{{}}}:{}", vs.join(","), c.degree)
            })
            .collect();
        t.push(vec![
            word.to_string(),
            g.element(z).to_string(),
            mono.to_string(),
            lift.decomposition_type.to_string(),
            comps.join(" "),
        ]);
    }
    print!("{}", t.render());
    Ok(if agree { Status::Ok } else { Status::Failed })
}

fn cover_verify(spec: &str, subgroup: Option<&str>) -> Result<Status> {
    let g = Arc::new(inputs::load_group(spec)?);
    let subs = match subgroup {
        Some(_) => vec![inputs::resolve_subgroup(&g, subgroup)?],
        None => g.subgroups(),
    };
    let loops = element_loops(&g).iter().flatten().count();
    println!("group order {}, {} subgroup(s), {} loop(s) per subgroup", g.order(), subs.len(), loops);
    let mut t = Table::new(["subgroup order", "index", "checked", "type mismatches", "lemma failures"]);
    let mut ok = true;
    for sub in &subs {
        let artin = verify_artin(&g, sub)?;
        let lemma = verify_bijection_all(&g, sub)?;
        let lemma_failures = lemma.iter().filter(|r| !r.passed()).count();
        ok &= artin.passed() && lemma_failures == 0;
        t.push(vec![
            sub.order().to_string(),
            artin.index.to_string(),
            artin.checked.to_string(),
            artin.mismatches.len().to_string(),
            lemma_failures.to_string(),
        ]);
        for m in &artin.mismatches {
            eprintln!(
                "mismatch: element {} via {}: graph {} vs monodromy {}",
                g.element(m.element),
                m.word,
                m.decomposition_type,
                m.monodromy_type
            );
        }
    }
    print!("{}", t.render());
    println!("{}", if ok { "all checks passed" } else { "CHECKS FAILED" });
    Ok(if ok { Status::Ok } else { Status::Failed })
}

fn sft_orbits(files: SftArgs, max_len: usize, limit: Option<usize>) -> Result<Status> {
    if max_len == 0 {
        bail!("--max-len must be at least 1");
    }
    let sft = inputs::load_sft(files.sft.as_deref(), files.hom.as_deref())?;
    let g = sft.group();
    let mut per_len = vec![0u64; max_len + 1];
    let mut t = Table::new(["length", "edges", "holonomy", "class"]);
    for (i, o) in enumerate_orbits(&sft, max_len).enumerate() {
        per_len[o.len()] += 1;
        if limit.is_none_or(|l| i < l) {
            let edges: Vec<String> = o.edges.iter().map(|e| e.to_string()).collect();
            t.push(vec![
                o.len().to_string(),
                edges.join(" "),
                g.element(o.holonomy).to_string(),
                format!("C{}", o.class),
            ]);
        }
    }
    print!("{}", t.render());
    println!();
    let mut counts = Table::new(["length", "primitive orbits", "closed paths"]);
    for (n, &c) in per_len.iter().enumerate().skip(1) {
        let closed = match exact_counts(&sft, n, DEFAULT_DP_CAP) {
            Ok(v) => v.iter().sum::<u128>().to_string(),
            Err(_) => "-".into(),
        };
        counts.push(vec![n.to_string(), c.to_string(), closed]);
    }
    print!("{}", counts.render());
    Ok(Status::Ok)
}

fn check_tolerance(tolerance: f64) -> Result<()> {
    if tolerance.is_nan() || tolerance <= 0.0 {
        bail!("--tolerance must be positive");
    }
    Ok(())
}

fn sft_chebotarev(files: SftArgs, d: DensityArgs) -> Result<Status> {
    check_tolerance(d.tolerance)?;
    let sft = inputs::load_sft(files.sft.as_deref(), files.hom.as_deref())?;
    let report = chebotarev_report(&sft, d.max_len, d.skip, d.workers.max(1))?;
    let worst = final_deviation(&report, &report.class_rows).context("no orbits counted")?;
    let worst_f = *worst.numer() as f64 / *worst.denom() as f64;
    let ok = worst_f <= d.tolerance;
    match d.format {
        Format::Text => {
            print!("{}", density_text(&report));
            println!();
            println!("max class deviation {} (tolerance {})", decimal(&worst), d.tolerance);
            println!("{}", if ok { "PASS" } else { "FAIL: tolerance exceeded" });
        }
        Format::Rows => {
            print!("{}", density_rows(&report));
            if !ok {
                eprintln!("tolerance exceeded: {} > {}", decimal(&worst), d.tolerance);
            }
        }
    }
    Ok(if ok { Status::Ok } else { Status::Failed })
}

fn search(pres: PresentationArgs, target: &str, opts: &SearchOptions, count_only: bool) -> Result<Status> {
    let p = inputs::presentation(pres.braid.as_deref(), pres.generators, &pres.relators)?;
    let g = Arc::new(inputs::load_group(target)?);
    let homs = quotient_search(&p, &g, opts)?;
    if !count_only {
        for h in &homs {
            let imgs: Vec<String> = h.images().iter().map(|&x| g.element(x).to_string()).collect();
            println!("{}", imgs.join(" | "));
        }
    }
    let kind = if opts.surjective_only { "surjection" } else { "homomorphism" };
    let plural = if homs.len() == 1 { "" } else { "s" };
    let dedup = if opts.dedup_conjugation { " up to conjugation" } else { "" };
    println!("{} {kind}{plural}{dedup} onto a group of order {}", homs.len(), g.order());
    Ok(Status::Ok)
}

fn snf(path: PathBuf) -> Result<Status> {
    let a = inputs::load_matrix(&path)?;
    let f = smith_normal_form(&a);
    println!("S =\n{}", f.s);
    println!("U =\n{}", f.u);
    println!("V =\n{}", f.v);
    let diag: Vec<String> = f.diagonal().iter().map(|d| d.to_string()).collect();
    println!("invariant factors: {}", diag.join(" "));
    println!("rank {}", f.rank());
    Ok(Status::Ok)
}

fn generic(pres: PresentationArgs, classes: &[String]) -> Result<Status> {
    let p = inputs::presentation(pres.braid.as_deref(), pres.generators, &pres.relators)?;
    let words = classes
        .iter()
        .map(|c| Word::parse(c).with_context(|| format!("class {c:?}")))
        .collect::<Result<Vec<_>>>()?;
    let r = generic_check(&p, &words);
    let diag: Vec<String> = r.invariant_factors.iter().map(|d| d.to_string()).collect();
    println!("{p}");
    println!("invariant factors: {}", diag.join(" "));
    match &r.witness {
        None => println!("generic: the classes generate H1"),
        Some(w) => {
            let vals: Vec<String> = w.values.iter().enumerate().map(|(j, v)| format!("x{} -> {v}", j + 1)).collect();
            println!("not generic: witness Z/{} with {}", w.prime, vals.join(", "));
        }
    }
    Ok(if r.generic { Status::Ok } else { Status::Failed })
}

fn a5_experiment(args: ExperimentArgs) -> Result<Status> {
    let d = args.density;
    let sft = inputs::load_sft(args.files.sft.as_deref(), args.files.hom.as_deref())?;
    let subgroup = match args.subgroup.subgroup.as_deref() {
        None => SubgroupSpec::Canonical,
        Some(spec) => {
            let g = sft.group();
            let sub = inputs::resolve_subgroup(g, Some(spec))?;
            SubgroupSpec::Generators(sub.members().iter().map(|&x| g.element(x).clone()).collect())
        }
    };
    let cfg = ExperimentConfig {
        max_len: d.max_len,
        skip: d.skip,
        tolerance: d.tolerance,
        workers: d.workers.max(1),
        subgroup,
    };
    let out = run_a5_experiment(&sft, &cfg)?;
    match d.format {
        Format::Rows => {
            print!("{}", density_rows(&out.report));
        }
        Format::Text => {
            let g = sft.group();
            println!(
                "{} primitive orbits of length <= {} ({} skipped)",
                out.orbit_count, d.max_len, d.skip
            );
            let witnesses: Vec<String> = out
                .realization
                .witnesses
                .iter()
                .flatten()
                .map(|o| format!("{}@{}", g.element(o.holonomy).cycle_type(), o.len()))
                .collect();
            let longest = out.realization.witnesses.iter().flatten().map(|o| o.len()).max().unwrap_or(0);
            println!(
                "realization: holonomy order {}, all classes by length {}: {}",
                out.realization.holonomy_order,
                longest,
                witnesses.join(" ")
            );
            let conservation = if out.conservation_failures.is_empty() {
                "exact at every length".to_string()
            } else {
                format!("FAILED at lengths {:?}", out.conservation_failures)
            };
            println!("conservation against transfer counts: {conservation}");
            println!();
            let mut t = Table::new(["decomposition type", "elements", "target", "count", "density", "deviation"]);
            for r in &out.table {
                t.push(vec![
                    r.decomposition_type.to_string(),
                    r.element_count.to_string(),
                    ratio(&r.target),
                    r.count.to_string(),
                    decimal(&r.density()),
                    decimal(&r.deviation()),
                ]);
            }
            print!("{}", t.render());
            println!();
            println!("max deviation {:.6} (tolerance {})", out.max_deviation, out.tolerance);
        }
    }
    let verdict = if out.passed() {
        "PASS".to_string()
    } else if !out.conservation_failures.is_empty() {
        "FAIL: conservation identity violated".to_string()
    } else {
        format!("FAIL: deviation {:.6} exceeds tolerance {}", out.max_deviation, out.tolerance)
    };
    match d.format {
        Format::Text => println!("{verdict}"),
        Format::Rows if !out.passed() => eprintln!("{verdict}"),
        Format::Rows => {}
    }
    Ok(if out.passed() { Status::Ok } else { Status::Failed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use chebotarev::experiment::WITNESS_BOUND;
    use chebotarev::realization_check;

    #[test]
    fn bundled_data_builds() {
        let sft = inputs::load_sft(None, None).unwrap();
        assert_eq!(sft.group().order(), 60);
        assert_eq!(sft.edges().len(), 3);
        assert!(realization_check(&sft, WITNESS_BOUND).passed());
    }

    #[test]
    fn cli_parses() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
