use std::collections::BTreeMap;
use std::io::Write;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{mpsc, Arc};

use rayon::prelude::*;
use serde::Serialize;
use wreath_core::error::Error;
use wreath_core::genring::{check_generation, GenerationReport, Verdict};
use wreath_core::group::GroupContext;
use wreath_core::partition::{parse_multipartition, MultiPartition};
use wreath_core::stability::{check_stability, stable_labels, RingFamily, StabilityReport, WINDOW};
use wreath_core::symfunc::{graded_generation_check, EhFlavor, GradedReport};
use wreath_core::wreath::{filtration_degree, generator_family, EpsChoice, Flavor, RepRing, RepRingElement, Theorem};

use crate::config::{thread_pool, CliError, CliResult};
use crate::{DecomposeArgs, Format, GenSource, GradedArgs, StabilityArgs, UnitFlavor, VerifyArgs};

/// Runs `work` over `tasks` on `pool` and hands results to `emit` in task
/// order as soon as each prefix is complete. The first error cancels the
/// tasks that have not started.
fn run_ordered<T, R, W, E>(pool: &rayon::ThreadPool, tasks: &[T], work: W, mut emit: E) -> CliResult<()>
where
    T: Sync,
    R: Send,
    W: Fn(&T) -> CliResult<R> + Sync,
    E: FnMut(R),
{
    let cancel = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel();
    let (work, cancel_ref) = (&work, &cancel);
    std::thread::scope(|s| {
        s.spawn(move || {
            pool.scope(|ps| {
                for (i, t) in tasks.iter().enumerate() {
                    let tx = tx.clone();
                    ps.spawn(move |_| {
                        let r = (!cancel_ref.load(Ordering::Relaxed)).then(|| work(t));
                        let _ = tx.send((i, r));
                    });
                }
            });
        });
        let mut pending = BTreeMap::new();
        let mut next = 0;
        let mut outcome = Ok(());
        for (i, r) in rx {
            pending.insert(i, r);
            while let Some(r) = pending.remove(&next) {
                next += 1;
                match (r, &outcome) {
                    (Some(Ok(v)), Ok(())) => emit(v),
                    (Some(Err(e)), Ok(())) => {
                        cancel.store(true, Ordering::Relaxed);
                        outcome = Err(e);
                    }
                    _ => {}
                }
            }
        }
        outcome
    })
}

fn print_json(value: &impl Serialize) {
    let line = serde_json::to_string(value).expect("reports serialize");
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
}

fn print_text(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}");
    let _ = out.flush();
}

fn build_rings(
    pool: &rayon::ThreadPool,
    ctx: &Arc<GroupContext>,
    ns: &[usize],
) -> CliResult<BTreeMap<usize, Arc<RepRing>>> {
    let rings = pool.install(|| {
        ns.par_iter()
            .map(|&n| RepRing::new(ctx.clone(), n).map(|r| (n, Arc::new(r))))
            .collect::<Result<Vec<_>, Error>>()
    })?;
    Ok(rings.into_iter().collect())
}

/// Parses `1; ((1),(1)); 2*((2),∅)` into elements of `R(S_n(G))`.
fn parse_gen_list(s: &str, m: usize, n: usize) -> CliResult<Vec<RepRingElement>> {
    let mut gens = Vec::new();
    for item in s.split(';').map(str::trim).filter(|x| !x.is_empty()) {
        let (coeff, label) = match item.split_once('*') {
            Some((c, l)) => {
                let c: i64 = c
                    .trim()
                    .parse()
                    .map_err(|_| CliError::invalid(format!("bad coefficient in {item:?}")))?;
                (c, l.trim())
            }
            None => (1, item),
        };
        let label = if label == "1" {
            MultiPartition::trivial(m, n)
        } else {
            parse_multipartition(label, m)?
        };
        if label.size() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                got: label.size(),
            }
            .into());
        }
        gens.push(RepRingElement::irreducible(label).scale(coeff));
    }
    if gens.is_empty() {
        return Err(CliError::invalid("--gen-list is empty"));
    }
    Ok(gens)
}

#[derive(Serialize)]
struct VerifyRecord {
    #[serde(flatten)]
    report: GenerationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    eps: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    flavor: Option<String>,
}

impl VerifyRecord {
    fn text(&self) -> String {
        let r = &self.report;
        let mut line = format!(
            "{:<9} {} n={} theorem={}",
            r.verdict.to_string(),
            r.group,
            r.n,
            r.theorem
        );
        if let Some(eps) = &self.eps {
            line += &format!(" eps={eps}");
        }
        if let Some(flavor) = &self.flavor {
            line += &format!(" flavor={flavor}");
        }
        line + &format!(
            " generators={} rank={} span={} index={} rounds={} ({} ms)",
            r.generator_count, r.rank, r.span_rank, r.index, r.rounds, r.elapsed_ms
        )
    }
}

enum Source {
    Theorem(Theorem),
    Custom(BTreeMap<usize, Vec<RepRingElement>>),
}

struct VerifyTask {
    n: usize,
    eps: Option<EpsChoice>,
    flavor: Option<Flavor>,
}

pub fn verify(args: &VerifyArgs) -> CliResult<bool> {
    let ctx = args.common.group.load()?;
    let m = ctx.num_irreducibles();
    let names = ctx.irreducible_names();
    let ns = args.n.values();
    let source = match args.gens {
        GenSource::Theorem => {
            let theorem = args
                .theorem
                .as_deref()
                .ok_or_else(|| CliError::invalid("--theorem is required unless --gens custom"))?;
            Source::Theorem(theorem.parse()?)
        }
        GenSource::Custom => {
            if args.theorem.is_some() {
                return Err(CliError::invalid("--theorem and --gens custom are exclusive"));
            }
            let list = args.gen_list.as_deref().unwrap_or_default();
            let gens = ns
                .iter()
                .map(|&n| parse_gen_list(list, m, n).map(|g| (n, g)))
                .collect::<CliResult<_>>()?;
            Source::Custom(gens)
        }
    };
    let wreath_hooks = matches!(source, Source::Theorem(Theorem::WreathHooks));
    let mut eps_choices: Vec<Option<EpsChoice>> = match (&args.eps, wreath_hooks) {
        (None, true) => vec![Some(EpsChoice::default_for(m))],
        (Some(s), true) if s.trim() == "all" => EpsChoice::all(&(0..m).collect::<Vec<_>>())
            .into_iter()
            .map(Some)
            .collect(),
        (Some(s), true) => vec![Some(EpsChoice::parse(s, names)?)],
        (Some(_), false) => return Err(CliError::invalid("--eps only applies to theorem 4.1")),
        (None, false) => vec![None],
    };
    eps_choices.sort_by_key(|e| e.as_ref().map(|e| e.display(names)));
    let flavors: Vec<Option<Flavor>> = match (args.unit_flavor, wreath_hooks) {
        (UnitFlavor::Hook, true) => vec![Some(Flavor::Hook)],
        (UnitFlavor::TwoRow, true) => vec![Some(Flavor::TwoRow)],
        (UnitFlavor::Both, true) => vec![Some(Flavor::Hook), Some(Flavor::TwoRow)],
        (UnitFlavor::Hook, false) => vec![None],
        (_, false) => return Err(CliError::invalid("--unit-flavor only applies to theorem 4.1")),
    };
    let mut tasks = Vec::new();
    for &n in &ns {
        for eps in &eps_choices {
            for &flavor in &flavors {
                tasks.push(VerifyTask {
                    n,
                    eps: eps.clone(),
                    flavor,
                });
            }
        }
    }

    let pool = thread_pool(args.common.jobs)?;
    let rings = build_rings(&pool, &ctx, &ns)?;
    let format = args.common.format;
    let (mut total, mut passed) = (0, 0);
    run_ordered(
        &pool,
        &tasks,
        |task| {
            let ring = &rings[&task.n];
            let (theorem, gens) = match &source {
                Source::Theorem(t) => {
                    let eps = task.eps.clone().unwrap_or_default();
                    let gens = generator_family(ring, *t, task.flavor.unwrap_or(Flavor::Hook), &eps)?;
                    (t.id(), gens)
                }
                Source::Custom(lists) => ("custom", lists[&task.n].clone()),
            };
            let report = check_generation(ring, theorem, &gens)?;
            Ok(VerifyRecord {
                report,
                eps: task.eps.as_ref().map(|e| e.display(names)),
                flavor: task.flavor.map(|f| f.to_string()),
            })
        },
        |record| {
            total += 1;
            if record.report.verdict == Verdict::Generates {
                passed += 1;
            }
            match format {
                Format::Text => print_text(&record.text()),
                Format::Json => print_json(&record),
            }
        },
    )?;
    if format == Format::Text {
        print_text(&format!("{passed} of {total} runs generate"));
    }
    Ok(passed == total)
}

fn parse_irrep(ring: &RepRing, s: &str) -> CliResult<MultiPartition> {
    let m = ring.context().num_irreducibles();
    let label = parse_multipartition(s, m).map_err(|_| Error::UnknownLabel(s.to_string()))?;
    if ring.irrep_index(&label).is_none() {
        return Err(Error::UnknownLabel(format!(
            "{s} (not an irreducible of S_{}({}))",
            ring.n(),
            ring.context().name()
        ))
        .into());
    }
    Ok(label)
}

#[derive(Serialize)]
struct Constituent {
    label: String,
    multiplicity: i64,
    dimension: u128,
    filtration_degree: usize,
}

#[derive(Serialize)]
struct Decomposition {
    group: String,
    n: usize,
    a: String,
    b: String,
    dimension: u128,
    constituents: Vec<Constituent>,
}

pub fn decompose(args: &DecomposeArgs) -> CliResult<bool> {
    let ctx = args.common.group.load()?;
    let ring = RepRing::new(ctx.clone(), args.n)?;
    let a = parse_irrep(&ring, &args.a)?;
    let b = parse_irrep(&ring, &args.b)?;
    let product = ring.tensor(
        &RepRingElement::irreducible(a.clone()),
        &RepRingElement::irreducible(b.clone()),
    )?;
    let constituents: Vec<Constituent> = product
        .terms()
        .iter()
        .map(|(label, &multiplicity)| Constituent {
            label: label.to_string(),
            multiplicity,
            dimension: ring.dimension(label),
            filtration_degree: filtration_degree(label),
        })
        .collect();
    let result = Decomposition {
        group: ctx.name().to_string(),
        n: args.n,
        a: a.to_string(),
        b: b.to_string(),
        dimension: ring.dimension(&a) * ring.dimension(&b),
        constituents,
    };
    match args.common.format {
        Format::Json => print_json(&result),
        Format::Text => {
            print_text(&format!(
                "V{} ⊗ V{} in R(S_{}({})), dimension {}",
                result.a, result.b, result.n, result.group, result.dimension
            ));
            for c in &result.constituents {
                print_text(&format!(
                    "  {} × V{}  dim {}  degree {}",
                    c.multiplicity, c.label, c.dimension, c.filtration_degree
                ));
            }
        }
    }
    Ok(true)
}

#[derive(Serialize)]
struct GradedRecord {
    group: String,
    passes: bool,
    #[serde(flatten)]
    report: GradedReport,
}

fn parse_flavors(s: &str, m: usize) -> CliResult<Vec<EhFlavor>> {
    let flavors = s
        .split(',')
        .map(|f| f.trim().parse::<EhFlavor>())
        .collect::<Result<Vec<_>, Error>>()?;
    if flavors.len() != m {
        return Err(CliError::invalid(format!(
            "--flavors needs one entry per irreducible ({m}), got {}",
            flavors.len()
        )));
    }
    Ok(flavors)
}

pub fn graded_check(args: &GradedArgs) -> CliResult<bool> {
    let ctx = args.common.group.load()?;
    let m = ctx.num_irreducibles();
    if args.degree == 0 {
        return Err(CliError::invalid("--degree must be at least 1"));
    }
    let assignments = match args.flavors.as_deref().map(str::trim) {
        None => vec![vec![EhFlavor::E; m]],
        Some("all") => EhFlavor::all_assignments(m),
        Some(s) => vec![parse_flavors(s, m)?],
    };
    let pool = thread_pool(args.common.jobs)?;
    let mut all_pass = true;
    let format = args.common.format;
    run_ordered(
        &pool,
        &assignments,
        |flavors| Ok(graded_generation_check(m, flavors, args.degree)?),
        |report| {
            let record = GradedRecord {
                group: ctx.name().to_string(),
                passes: report.passes(),
                report,
            };
            all_pass &= record.passes;
            match format {
                Format::Json => print_json(&record),
                Format::Text => {
                    let flavors: Vec<String> = record.report.flavors.iter().map(ToString::to_string).collect();
                    print_text(&format!(
                        "{} flavors ({}): {}",
                        record.group,
                        flavors.join(","),
                        if record.passes { "unimodular" } else { "FAILS" }
                    ));
                    for d in &record.report.degrees {
                        print_text(&format!(
                            "  degree {}: dimension {} det {} {}",
                            d.degree,
                            d.dimension,
                            d.determinant,
                            if d.unimodular { "ok" } else { "not unimodular" }
                        ));
                    }
                }
            }
        },
    )?;
    Ok(all_pass)
}

#[derive(Serialize)]
struct StabilityRecord {
    passes: bool,
    #[serde(flatten)]
    report: StabilityReport,
}

fn onset_text(onset: Option<usize>) -> String {
    onset.map_or_else(
        || "does not hold at the end of the window".to_string(),
        |n| format!("holds from n={n}"),
    )
}

pub fn stability(args: &StabilityArgs) -> CliResult<bool> {
    let ctx = args.common.group.load()?;
    let m = ctx.num_irreducibles();
    let pairs: Vec<(MultiPartition, MultiPartition)> = match (&args.lambda, &args.mu) {
        (Some(l), Some(u)) => {
            let (l, u) = (parse_multipartition(l, m)?, parse_multipartition(u, m)?);
            if l.size() + u.size() > args.bound {
                return Err(CliError::invalid(format!(
                    "|λ| + |μ| = {} exceeds --bound {}",
                    l.size() + u.size(),
                    args.bound
                )));
            }
            vec![(l, u)]
        }
        _ => {
            let labels = stable_labels(m, args.bound);
            labels
                .iter()
                .enumerate()
                .flat_map(|(i, l)| labels[i..].iter().map(move |u| (l.clone(), u.clone())))
                .filter(|(l, u)| l.size() + u.size() <= args.bound)
                .collect()
        }
    };
    let pool = thread_pool(args.common.jobs)?;
    let rings = RingFamily::new(ctx.clone());
    let top = pairs.iter().map(|(l, u)| l.size() + u.size()).max().unwrap_or(0) + WINDOW;
    pool.install(|| (0..=top).into_par_iter().try_for_each(|n| rings.get(n).map(drop)))?;
    let format = args.common.format;
    let mut all_pass = true;
    run_ordered(
        &pool,
        &pairs,
        |(l, u)| Ok(check_stability(&rings, l, u)?),
        |report| {
            let record = StabilityRecord {
                passes: report.passes(),
                report,
            };
            all_pass &= record.passes;
            match format {
                Format::Json => print_json(&record),
                Format::Text => {
                    let r = &record.report;
                    print_text(&format!(
                        "{} λ={} μ={} n={}..{}: {}",
                        r.group,
                        r.lambda,
                        r.mu,
                        r.window.0,
                        r.window.1,
                        if record.passes { "stable" } else { "NOT STABLE" }
                    ));
                    print_text(&format!(
                        "  product lead term {}",
                        onset_text(r.product_lead_term.onset)
                    ));
                    print_text(&format!(
                        "  restriction lead term {}",
                        onset_text(r.restriction_lead_term.onset)
                    ));
                    for t in &r.multiplicities {
                        let values: Vec<String> = t.values.iter().map(ToString::to_string).collect();
                        print_text(&format!(
                            "  ν={}: {}  constant from n={}",
                            t.nu,
                            values.join(" "),
                            t.onset.map_or("-".to_string(), |n| n.to_string())
                        ));
                    }
                }
            }
        },
    )?;
    Ok(all_pass)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gen_list_parsing() {
        let gens = parse_gen_list("1; ((1),(1)); 2*((2),∅)", 2, 2).unwrap();
        assert_eq!(gens.len(), 3);
        assert_eq!(gens[0], RepRingElement::irreducible(MultiPartition::trivial(2, 2)));
        assert_eq!(gens[2].terms().values().copied().collect::<Vec<_>>(), vec![2]);
        assert_eq!(parse_gen_list("((1),∅)", 2, 2).err().unwrap().code, 2);
        assert_eq!(parse_gen_list(" ; ", 2, 2).err().unwrap().code, 2);
    }

    #[test]
    fn ordered_results_despite_parallel_completion() {
        let pool = thread_pool(Some(4)).unwrap();
        let tasks: Vec<u64> = (0..40).collect();
        let mut seen = Vec::new();
        run_ordered(
            &pool,
            &tasks,
            |&t| {
                std::thread::sleep(std::time::Duration::from_millis((40 - t) % 7));
                Ok(t)
            },
            |t| seen.push(t),
        )
        .ok()
        .unwrap();
        assert_eq!(seen, tasks);
    }

    #[test]
    fn first_error_stops_emission() {
        let pool = thread_pool(Some(2)).unwrap();
        let tasks: Vec<u64> = (0..10).collect();
        let mut seen = Vec::new();
        let result = run_ordered(
            &pool,
            &tasks,
            |&t| if t == 3 { Err(CliError::invalid("boom")) } else { Ok(t) },
            |t| seen.push(t),
        );
        assert_eq!(result.err().unwrap().code, 2);
        assert_eq!(seen, vec![0, 1, 2]);
    }
}
