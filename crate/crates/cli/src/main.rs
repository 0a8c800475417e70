use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use fuschar::character::{dixon_character_table, restrict_character, ClassInfo};
use fuschar::corpus::{builtin_corpus, run_group_corpus, CorpusEntry, CorpusItem, CorpusReport};
use fuschar::fusion::FusionData;
use fuschar::group::class_fusion_map;
use fuschar::reproduce::{run_item, Item, Outcome};
use fuschar::spec::{build_group_spec, parse_group_spec, parse_spec, resolve_fusion, ParsedSpec};
use fuschar::stable::Ambient;
use fuschar::verify::{verify_conjecture, verify_group_case, verify_with_basis, Check, VerificationReport};

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(name = "fuschar", version, about = "Character-table determinants of fusion systems")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Print JSON reports instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for representative shuffles.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Allow the constructions at p ≥ 7.
    #[arg(long, global = true)]
    large: bool,
    /// Cap on enumerated group orders.
    #[arg(long, global = true, env = "FUSCHAR_MAX_ORDER")]
    max_order: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Verify the group case F = F_S(G) at a prime.
    VerifyGroup {
        #[arg(short, long, value_name = "FILE")]
        group: PathBuf,
        #[arg(short, long)]
        p: u64,
    },
    /// Verify the determinant identity for a fusion spec.
    VerifyFusion {
        #[arg(short, long, value_name = "FILE")]
        fusion: PathBuf,
    },
    /// Print the character table of a group.
    CharTable {
        #[arg(short, long, value_name = "FILE")]
        group: PathBuf,
        /// Comma-separated words generating a subgroup to restrict to.
        #[arg(long, value_delimiter = ',')]
        restrict_to: Option<Vec<String>>,
    },
    /// Reproduce a published table, lemma, example or exotic verification.
    Paper {
        /// table1..table6, lemma42, lemma56, lemma58, example27, transitive or exotic:<name>.
        #[arg(long)]
        item: String,
        #[arg(long)]
        p: Option<u64>,
    },
    /// Verify a corpus of groups at every prime divisor of their order.
    Corpus {
        /// The built-in corpus of small symmetric, alternating, linear and dihedral groups.
        #[arg(long, conflicts_with = "dir")]
        builtin: bool,
        /// A directory of group or fusion spec files.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

/// Errors that end the run with exit code 2.
#[derive(Debug)]
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Fatal> {
    fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    let out = if json {
        serde_json::to_string_pretty(value).expect("reports serialise")
    } else {
        text()
    };
    let _ = writeln!(std::io::stdout().lock(), "{out}");
}

fn status(ok: bool) -> ExitCode {
    ExitCode::from(if ok { 0 } else { 1 })
}

/// Re-evaluates the basis at one random column of every class and checks that
/// the determinant is unchanged.
fn shuffle_check(
    report: &VerificationReport,
    fusion: &FusionData,
    ambient: &Ambient,
    basis: &fuschar::algebra::IntMatrix,
    seed: u64,
) -> Result<Check, Fatal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let columns: Vec<usize> = fusion
        .classes()
        .iter()
        .map(|c| c.columns[rng.gen_range(0..c.columns.len())])
        .collect();
    let shuffled = verify_with_basis(&report.input, fusion, ambient, basis, Some(&columns))?;
    Ok(Check::new(
        "representative_independence",
        shuffled.lhs_det == report.lhs_det,
        format!("seed {seed}: det(X X̄ᵀ) = {}", shuffled.lhs_det),
    ))
}

fn verify_group(g: &Global, path: &Path, p: u64) -> Result<ExitCode, Fatal> {
    let spec = parse_group_spec(&read(path)?)?;
    let (group, _) = build_group_spec(&spec)?;
    let label = path.file_stem().map_or("group".into(), |s| s.to_string_lossy().into_owned());
    let report = verify_group_case(&label, &group, p)?;
    let ok = report.report.passed();
    emit(g.json, &report, || {
        let mut out = report.report.summary();
        out.push_str(&format!(
            "\n  |G| = {}, |S| = {}, det C = {}, Π|C_G(s)| = {}",
            report.group_order, report.sylow_order, report.det_c, report.centralizer_product_g
        ));
        for c in &report.report.checks {
            out.push_str(&format!("\n  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail));
        }
        out
    });
    Ok(status(ok))
}

fn verify_fusion_text(g: &Global, text: &str) -> Result<VerificationReport, Fatal> {
    let spec = match parse_spec(text)? {
        ParsedSpec::Fusion(f) => f,
        ParsedSpec::Group(_) => return Err(Fatal("expected a fusion spec, found a group spec".into())),
    };
    let resolved = resolve_fusion(&spec)?;
    let (mut report, lattice) = verify_conjecture(&resolved.label, &resolved.fusion, &resolved.ambient)?;
    report.checks.push(shuffle_check(
        &report,
        &resolved.fusion,
        &resolved.ambient,
        &lattice.basis,
        g.seed,
    )?);
    Ok(report)
}

fn verify_fusion(g: &Global, path: &Path) -> Result<ExitCode, Fatal> {
    let report = verify_fusion_text(g, &read(path)?)?;
    emit(g.json, &report, || {
        let mut out = report.summary();
        for c in &report.checks {
            out.push_str(&format!("\n  [{}] {}: {}", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail));
        }
        out
    });
    // An identity failure is a finding; a failed internal check is not.
    let internal_ok = report.checks.iter().all(|c| c.passed);
    if !internal_ok {
        return Err(Fatal("internal consistency check failed".into()));
    }
    Ok(status(report.passed()))
}

#[derive(Serialize)]
struct TableOutput {
    group_order: u64,
    classes: Vec<ClassInfo>,
    characters: Vec<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    restriction: Option<RestrictionOutput>,
}

#[derive(Serialize)]
struct RestrictionOutput {
    subgroup_order: u64,
    classes: Vec<ClassInfo>,
    values: Vec<Vec<String>>,
    /// Multiplicities of the irreducibles of the subgroup in each restriction.
    decompositions: Vec<Vec<String>>,
}

fn render_rows(classes: &[ClassInfo], rows: &[Vec<String>], prefix: &str) -> String {
    let mut out = String::new();
    let head: Vec<String> = classes.iter().map(|c| c.rep_word.clone()).collect();
    out.push_str(&format!("{prefix}classes: {}\n", head.join("  ")));
    let sizes: Vec<String> = classes.iter().map(|c| c.size.to_string()).collect();
    out.push_str(&format!("{prefix}sizes:   {}\n", sizes.join("  ")));
    for (i, r) in rows.iter().enumerate() {
        out.push_str(&format!("{prefix}X.{i}: {}\n", r.join("  ")));
    }
    out
}

fn char_table(g: &Global, path: &Path, restrict: Option<&[String]>) -> Result<ExitCode, Fatal> {
    let spec = parse_group_spec(&read(path)?)?;
    let (group, _) = build_group_spec(&spec)?;
    let table = dixon_character_table(&group)?;
    let strings = |fs: &[fuschar::character::ClassFunction]| -> Vec<Vec<String>> {
        fs.iter()
            .map(|f| f.values.iter().map(ToString::to_string).collect())
            .collect()
    };
    let restriction = match restrict {
        None => None,
        Some(words) => {
            let gens = words
                .iter()
                .map(|w| group.eval_word(w.trim()))
                .collect::<Result<Vec<_>, _>>()?;
            let h = group.subgroup(gens)?;
            let irr_h = dixon_character_table(&h)?;
            let map = class_fusion_map(&group, &h)?;
            let res: Vec<_> = table.irreducibles.iter().map(|c| restrict_character(c, &map)).collect();
            let decompositions = res
                .iter()
                .map(|r| Ok(irr_h.decompose(r)?.iter().map(ToString::to_string).collect()))
                .collect::<Result<Vec<Vec<String>>, Fatal>>()?;
            Some(RestrictionOutput {
                subgroup_order: h.order(),
                classes: irr_h.classes.clone(),
                values: strings(&res),
                decompositions,
            })
        }
    };
    let out = TableOutput {
        group_order: table.group_order,
        classes: table.classes.clone(),
        characters: strings(&table.irreducibles),
        restriction,
    };
    emit(g.json, &out, || {
        let mut s = format!("|G| = {}, {} classes\n", out.group_order, out.classes.len());
        s.push_str(&render_rows(&out.classes, &out.characters, ""));
        if let Some(r) = &out.restriction {
            s.push_str(&format!("restriction to a subgroup of order {}\n", r.subgroup_order));
            s.push_str(&render_rows(&r.classes, &r.values, "  "));
            for (i, d) in r.decompositions.iter().enumerate() {
                s.push_str(&format!("  X.{i} restricted = [{}]\n", d.join(", ")));
            }
        }
        s.trim_end().to_string()
    });
    Ok(ExitCode::SUCCESS)
}

fn paper(g: &Global, item: &str, p: Option<u64>) -> Result<ExitCode, Fatal> {
    let item: Item = item.parse()?;
    let outcome: Outcome = run_item(&item, p, g.large)?;
    emit(g.json, &outcome, || {
        format!("[{}] {}", if outcome.passed { "PASS" } else { "FAIL" }, outcome.summary)
    });
    Ok(status(outcome.passed))
}

/// Verifies every `*.json` file in `dir`: group specs at each prime divisor,
/// fusion specs directly. Files run in parallel; output is ordered by label.
fn dir_corpus(g: &Global, dir: &Path) -> Result<CorpusReport, Fatal> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(|e| Fatal(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    let mut entries: Vec<Vec<CorpusEntry>> = files
        .par_iter()
        .map(|path| {
            let label = path.file_stem().map_or(String::new(), |s| s.to_string_lossy().into_owned());
            let error = |e: String| {
                vec![CorpusEntry {
                    label: label.clone(),
                    p: 0,
                    passed: false,
                    summary: String::new(),
                    error: Some(e),
                    bundle: None,
                }]
            };
            let text = match read(path) {
                Ok(t) => t,
                Err(Fatal(e)) => return error(e),
            };
            match parse_spec(&text) {
                Err(e) => error(e.to_string()),
                Ok(ParsedSpec::Group(spec)) => {
                    let item = CorpusItem {
                        label: label.clone(),
                        group: build_group_spec(&spec).map(|(grp, _)| grp).map_err(|e| {
                            fuschar::group::GroupError::Invalid(e.to_string())
                        }),
                        primes: None,
                    };
                    run_group_corpus(vec![item]).entries
                }
                Ok(ParsedSpec::Fusion(_)) => match verify_fusion_text(g, &text) {
                    Ok(r) => vec![CorpusEntry {
                        label: label.clone(),
                        p: r.p,
                        passed: r.passed(),
                        summary: r.summary(),
                        error: None,
                        bundle: None,
                    }],
                    Err(Fatal(e)) => error(e),
                },
            }
        })
        .collect();
    let entries: Vec<CorpusEntry> = entries.drain(..).flatten().collect();
    let passed = entries.iter().filter(|e| e.passed).count();
    let errors = entries.iter().filter(|e| e.error.is_some()).count();
    Ok(CorpusReport {
        failed: entries.len() - passed - errors,
        passed,
        errors,
        entries,
    })
}

fn corpus(g: &Global, builtin: bool, dir: Option<&Path>) -> Result<ExitCode, Fatal> {
    let report = match (builtin, dir) {
        (_, Some(d)) => dir_corpus(g, d)?,
        (true, None) => {
            let mut items: Vec<CorpusItem> = builtin_corpus();
            items.sort_by(|a, b| a.label.cmp(&b.label));
            let entries: Vec<CorpusEntry> = items
                .into_par_iter()
                .map(|item| run_group_corpus(vec![item]).entries)
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .collect();
            let passed = entries.iter().filter(|e| e.passed).count();
            let errors = entries.iter().filter(|e| e.error.is_some()).count();
            CorpusReport {
                failed: entries.len() - passed - errors,
                passed,
                errors,
                entries,
            }
        }
        (false, None) => return Err(Fatal("corpus needs --builtin or --dir".into())),
    };
    emit(g.json, &report, || {
        let mut out = String::new();
        for e in &report.entries {
            let tag = match (&e.error, e.passed) {
                (Some(_), _) => "ERROR",
                (None, true) => "PASS",
                (None, false) => "FAIL",
            };
            let body = e.error.clone().unwrap_or_else(|| e.summary.clone());
            out.push_str(&format!("[{tag}] {}: {body}\n", e.label));
        }
        out.push_str(&format!(
            "{} passed, {} failed, {} errors",
            report.passed, report.failed, report.errors
        ));
        out
    });
    if report.errors > 0 {
        return Ok(ExitCode::from(2));
    }
    Ok(status(report.all_passed()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(cap) = cli.global.max_order {
        std::env::set_var("FUSCHAR_MAX_ORDER", cap.to_string());
    }
    let g = &cli.global;
    let result = match &cli.command {
        Command::VerifyGroup { group, p } => verify_group(g, group, *p),
        Command::VerifyFusion { fusion } => verify_fusion(g, fusion),
        Command::CharTable { group, restrict_to } => char_table(g, group, restrict_to.as_deref()),
        Command::Paper { item, p } => paper(g, item, *p),
        Command::Corpus { builtin, dir } => corpus(g, *builtin, dir.as_deref()),
    };
    match result {
        Ok(code) => code,
        Err(Fatal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
