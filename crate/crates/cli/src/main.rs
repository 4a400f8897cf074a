use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use sigma_core::analysis::{classify, probe_conjecture};
use sigma_core::certificates::{
    check_cover_certificate, check_definitely_unbeatable, conclude_sigma_pi, subgroups_from_words,
    Certificate, Condition4Mode, GroupRef, PiSpec, UnbeatabilityCertificate,
};
use sigma_core::constructions::{a5wrc2_cover, sym_odd_cover};
use sigma_core::corpus::{file_stem, load_dir, random_solvable, table1};
use sigma_core::formulas::{eval_formula, FormulaKind, Params};
use sigma_core::lattice::{all_subgroups, maximal_subgroups};
use sigma_core::spec_file::GroupSpec;
use sigma_core::{sigma, Caps, Mode, SigmaOptions};

/// Covering numbers of finite permutation groups.
#[derive(Parser)]
#[command(name = "sigma", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute sigma(G) for a group spec file. Exit code 2 means bounds only.
    Sigma {
        spec: PathBuf,
        #[arg(long, conflicts_with = "bounds")]
        exact: bool,
        #[arg(long)]
        bounds: bool,
        /// Seconds for the exact search.
        #[arg(long)]
        time_budget: Option<u64>,
    },
    /// Classify every spec file in a directory.
    Classify {
        dir: PathBuf,
        /// Print JSON lines instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// sigma, sigma* and the smallest supplement index of a primitive monolithic group.
    ProbeConjecture { spec: PathBuf },
    /// Check a cover or unbeatability certificate.
    Verify { certificate: PathBuf },
    /// Emit a certificate for a known family.
    Construct {
        family: Family,
        /// Degree for `sym-odd`.
        n: Option<usize>,
        /// Emit an unbeatability certificate instead of a cover certificate.
        #[arg(long)]
        unbeatability: bool,
        /// Which set to pair with the family; tried in order when omitted.
        #[arg(long)]
        pi: Option<PiReading>,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a closed form, e.g. `formula t2-odd-sym n=7,m=1`.
    Formula { kind: String, params: String },
    /// Print a spec file with its maximal subgroups listed.
    Maximals { spec: PathBuf },
    /// Write the built-in corpus as spec files.
    Corpus {
        dir: PathBuf,
        #[arg(long, default_value_t = 20240611)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        count: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    SymOdd,
    A5wrc2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PiReading {
    /// Permutations with at most two cycles, fixed points included.
    AtMostTwoCycles,
    /// Non-identity permutations with at most two non-trivial cycles.
    NontrivialCycles,
    /// One permutation of the first kind per member, any two generating.
    Sparse,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load_spec(path: &Path) -> Result<GroupSpec> {
    GroupSpec::load(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(value: &serde_json::Value, out: Option<&Path>) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let caps = Caps::from_env();
    match cli.command {
        Command::Sigma {
            spec,
            exact,
            bounds,
            time_budget,
        } => {
            let s = load_spec(&spec)?;
            let mut caps = caps;
            if let Some(t) = time_budget {
                caps.time_budget = Duration::from_secs(t);
            }
            let g = s.build(&caps)?;
            let mode = if exact {
                Mode::Exact
            } else if bounds {
                Mode::Bounds
            } else {
                Mode::Auto
            };
            let opts = SigmaOptions {
                caps,
                mode,
                maximals: s.maximal_subgroups.clone(),
            };
            let r = sigma(&g, &opts)?;
            emit(&r.to_json(&s.name, &g), None)?;
            Ok(if r.is_exact() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            })
        }
        Command::Classify { dir, json } => {
            let specs = load_dir(&dir).with_context(|| format!("reading {}", dir.display()))?;
            let report = classify(&specs, &caps);
            if json {
                for line in report.json_lines() {
                    println!("{line}");
                }
            } else {
                print!("{}", report.table());
                println!();
                for (k, names) in report.small_sigma_elementary() {
                    println!("{k:>3}  {}", names.join(", "));
                }
            }
            Ok(if report.mismatches().next().is_some() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::ProbeConjecture { spec } => {
            let s = load_spec(&spec)?;
            let g = s.build(&caps)?;
            let opts = SigmaOptions {
                caps,
                mode: Mode::Auto,
                maximals: s.maximal_subgroups.clone(),
            };
            let r = probe_conjecture(&s.name, &g, &opts)?;
            emit(&serde_json::to_value(r)?, None)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { certificate } => verify(&certificate, &caps),
        Command::Construct {
            family,
            n,
            unbeatability,
            pi,
            out,
        } => construct(family, n, unbeatability, pi, out.as_deref(), &caps),
        Command::Formula { kind, params } => {
            let k = FormulaKind::from_tag(&kind)
                .with_context(|| format!("unknown formula `{kind}`"))?;
            let v = eval_formula(k, &Params::parse(&params)?)?;
            println!("{}", v.value);
            Ok(ExitCode::SUCCESS)
        }
        Command::Maximals { spec } => {
            let mut s = load_spec(&spec)?;
            let g = s.build(&caps)?;
            let m = maximal_subgroups(&g, &caps, None)?;
            s.maximal_subgroups = Some(
                m.subgroups()
                    .map(|h| h.gens.iter().map(|&e| g.perm(e).clone()).collect())
                    .collect(),
            );
            print!("{s}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Corpus { dir, seed, count } => {
            fs::create_dir_all(&dir)?;
            let mut specs = table1()?;
            specs.extend(random_solvable(seed, count, 500, &caps)?);
            for mut s in specs {
                if s.name == "M11" {
                    let g = s.build(&caps)?;
                    let m = maximal_subgroups(&g, &caps, None)?;
                    s.maximal_subgroups = Some(
                        m.subgroups()
                            .map(|h| h.gens.iter().map(|&e| g.perm(e).clone()).collect())
                            .collect(),
                    );
                }
                let path = dir.join(format!("{}.grp", file_stem(&s.name)));
                fs::write(&path, s.to_string())?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn verify(path: &Path, caps: &Caps) -> Result<ExitCode> {
    let cert = Certificate::load(path).with_context(|| format!("reading {}", path.display()))?;
    match cert {
        Certificate::Cover(c) => {
            let r = check_cover_certificate(&c, caps)?;
            emit(&serde_json::to_value(&r)?, None)?;
            println!("{}", if r.claim_holds { "pass" } else { "fail" });
            Ok(if r.claim_holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Certificate::Unbeatability(c) => {
            let g = c.group.build(caps)?;
            g.require_elements()?;
            let family = subgroups_from_words(&g, &c.family)?;
            let pi = c.pi.materialize(&g)?;
            let lattice = if g.len() <= caps.lattice {
                Some(all_subgroups(&g, caps)?)
            } else {
                None
            };
            let r = check_definitely_unbeatable(
                &g,
                &family,
                &pi,
                lattice.as_ref(),
                Condition4Mode::Exhaustive,
            )?;
            emit(&serde_json::to_value(&r)?, None)?;
            match conclude_sigma_pi(&r) {
                Ok(k) => {
                    println!("pass: sigma >= {k}");
                    Ok(ExitCode::SUCCESS)
                }
                Err(e) => {
                    println!("fail: {e}");
                    Ok(ExitCode::from(1))
                }
            }
        }
    }
}

fn construct(
    family: Family,
    n: Option<usize>,
    unbeatability: bool,
    pi: Option<PiReading>,
    out: Option<&Path>,
    caps: &Caps,
) -> Result<ExitCode> {
    match family {
        Family::A5wrc2 => {
            if unbeatability {
                bail!("a5wrc2 has no unbeatability construction");
            }
            let w = a5wrc2_cover(caps)?;
            for (name, c) in [
                ("literal", &w.literal),
                ("distinct-pairs", &w.distinct_pairs),
            ] {
                eprintln!(
                    "{name}: {} members, cover {}, irredundant {}",
                    c.members.len(),
                    c.check.is_cover,
                    c.irredundant
                );
            }
            let (name, c) = w
                .accepted()
                .context("no reading of the family verifies as a cover")?;
            eprintln!("emitting the {name} reading");
            let cert = Certificate::Cover(c.certificate("A5wrC2", &w.data.group));
            emit(&serde_json::to_value(cert)?, out)?;
        }
        Family::SymOdd => {
            let n = n.context("sym-odd needs the degree n")?;
            let c = sym_odd_cover(n)?;
            if c.excluded {
                eprintln!("note: n = {n} is outside the range of the exact formula");
            }
            if !unbeatability {
                emit(
                    &serde_json::to_value(Certificate::Cover(c.certificate()))?,
                    out,
                )?;
                return Ok(ExitCode::SUCCESS);
            }
            let readings = match pi {
                Some(p) => vec![p],
                None => vec![
                    PiReading::AtMostTwoCycles,
                    PiReading::NontrivialCycles,
                    PiReading::Sparse,
                ],
            };
            let g = c.group(caps)?;
            let fam = c.materialize(&g)?;
            let lattice = all_subgroups(&g, caps)?;
            let mut last = None;
            for reading in readings {
                let spec = match reading {
                    PiReading::AtMostTwoCycles => c.pi.clone(),
                    PiReading::NontrivialCycles => c.pi_alternate.clone(),
                    PiReading::Sparse => c.sparse_pi(&g, &fam)?,
                };
                let set = spec.materialize(&g)?;
                let r = check_definitely_unbeatable(
                    &g,
                    &fam,
                    &set,
                    Some(&lattice),
                    Condition4Mode::Exhaustive,
                )?;
                eprintln!(
                    "{}: {}",
                    reading_name(reading),
                    json!({ "verdict": r.verdict, "max_outside": r.max_outside, "min_inside": r.min_inside })
                );
                let holds = r.holds();
                last = Some(spec);
                if holds {
                    break;
                }
            }
            let pi: PiSpec = last.expect("at least one reading");
            let cert = Certificate::Unbeatability(UnbeatabilityCertificate {
                group: GroupRef::of(&format!("Sym({n})"), &g),
                family: c
                    .members
                    .iter()
                    .map(|gens| gens.iter().map(ToString::to_string).collect())
                    .collect(),
                pi,
            });
            emit(&serde_json::to_value(cert)?, out)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn reading_name(r: PiReading) -> &'static str {
    match r {
        PiReading::AtMostTwoCycles => "at-most-two-cycles",
        PiReading::NontrivialCycles => "nontrivial-cycles",
        PiReading::Sparse => "sparse",
    }
}
