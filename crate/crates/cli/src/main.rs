//! Command-line front end binding the library modules into
//! reproducible pipelines. Exit codes: 0 success/satisfied,
//! 1 unsatisfied/not-proven/mismatch, 2 input error.

mod report;
mod scenario;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use corrbc::itp::{
    parse_constraint, parse_expression, parse_target, prove, verify_certificate, GroundSet,
    ProofConstraint, ProofResult,
};
use corrbc::polytope::parse_lin_ineq;
use corrbc::regions::{
    check_more_capable, compare_thm2_hc, compose_full, eval_covering_rates, eval_decoding_rates,
    eval_superposition_rates, eval_theorem1_hc, eval_theorem2, fm_pipeline, search_feasible_aux,
    specialize_degraded, specialize_gray_wyner, specialize_marton, RateTriple, RegionReport,
};
use corrbc::simcode::{run_covering_experiment, run_end_to_end, Scheme, SimError, TypicalityParams};

use report::{config_hash, Format, RowRecord, RunReport};
use scenario::ScenarioFile;

/// The eight-row projection onto (H1, H2, v1..v11) that the built-in
/// elimination pipeline must reproduce exactly.
const GOLDEN_PROJECTION: [&str; 8] = [
    "H1 < v9 - v4",
    "H1 < v8 - v2",
    "H2 < v11 - v5",
    "H2 < v10 - v3",
    "H1 + H2 < v9 + v10 - v7",
    "H1 + H2 < v8 + v11 - v7",
    "H1 + H2 < v8 + v10 - v6",
    "H1 + H2 < v9 + v11 - v7 - v1",
];

/// Raw inequality count the source derivation reports for the
/// side-condition-free elimination.
const RAW_COUNT_REFERENCE: usize = 28;

#[derive(Parser)]
#[command(name = "corrbc", about = "Correlated-source broadcast achievability toolkit")]
struct Cli {
    /// Output format: human table or machine-readable JSON record.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    /// Satisfaction tolerance for strict inequalities.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
    /// Master seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate an entropy/mutual-information expression on a scenario.
    Info {
        /// Expression, e.g. "H(S1)" or "I(U1;U0,S2|S1)-I(U1;S2|S1)".
        expr: String,
        #[arg(long)]
        scenario: PathBuf,
    },
    /// Prove a Shannon-type inequality, optionally under constraints.
    Prove {
        /// Claim, e.g. "I(A;B|C) <= H(A)".
        target: String,
        /// File of side conditions, one "expr = 0" per line.
        #[arg(long)]
        constraints: Option<PathBuf>,
        /// Comma-separated ground set; defaults to the variables used.
        #[arg(long)]
        ground: Option<String>,
    },
    /// Run the built-in rate-variable elimination pipeline.
    Fm {
        /// Drop the ordering side conditions and report the raw count.
        #[arg(long)]
        no_s3: bool,
        /// Elimination order, e.g. "R2,R1,R0".
        #[arg(long, default_value = "R0,R1,R2")]
        order: String,
    },
    /// Evaluate a rate region or specialization on a scenario.
    Region {
        #[arg(value_enum)]
        kind: RegionKind,
        #[arg(long)]
        scenario: PathBuf,
        /// Rate triple "r0,r1,r2" (used by gw, cover, decode, superpos).
        #[arg(long)]
        rates: Option<String>,
        /// Grid resolution for the more-capable check.
        #[arg(long, default_value_t = 100)]
        resolution: usize,
    },
    /// Monte Carlo: covering failure or the full coding chain.
    Simulate {
        #[arg(value_enum)]
        kind: SimKind,
        #[arg(long)]
        scenario: PathBuf,
        /// Rate triple "r0,r1,r2".
        #[arg(long)]
        rates: String,
        /// Blocklength.
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, value_enum, default_value = "plain")]
        scheme: SchemeArg,
        #[arg(long, default_value_t = 0.2)]
        eps: f64,
        #[arg(long, default_value_t = 0.1)]
        eps_prime: f64,
    },
    /// Random-restart search for a feasible auxiliary choice.
    Search {
        #[arg(long)]
        scenario: PathBuf,
        /// Auxiliary cardinalities "u0,u1,u2".
        #[arg(long, default_value = "2,2,2")]
        cards: String,
        #[arg(long, default_value_t = 2000)]
        budget: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RegionKind {
    Thm2,
    Hc,
    Compare,
    Marton,
    Gw,
    Degraded,
    Cover,
    Decode,
    Superpos,
    MoreCapable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SimKind {
    Cover,
    E2e,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SchemeArg {
    Plain,
    Superposition,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Scheme {
        match s {
            SchemeArg::Plain => Scheme::Plain,
            SchemeArg::Superposition => Scheme::Superposition,
        }
    }
}

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => std::process::exit(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(2);
        }
    }
}

fn parse_triple(text: &str) -> Result<RateTriple> {
    let parts: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| anyhow!("{e}: {p:?}")))
        .collect::<Result<_>>()?;
    let [r0, r1, r2] = parts[..] else {
        bail!("expected three comma-separated rates, got {text:?}");
    };
    Ok(RateTriple::new(r0, r1, r2)?)
}

fn region_rows(report: &RegionReport) -> Vec<RowRecord> {
    report
        .rows
        .iter()
        .map(|r| RowRecord::bound(&r.name, r.lhs, r.rhs, r.margin, r.satisfied))
        .collect()
}

/// Rate sum selected by a bound name like "R0+R1" or "H(S1)+R0+R1";
/// entropy terms contribute the supplied (h1, h2).
fn named_sum(name: &str, rates: &RateTriple, h1: f64, h2: f64) -> f64 {
    name.split('+')
        .map(|part| match part.trim() {
            "R0" => rates.r0,
            "R1" => rates.r1,
            "R2" => rates.r2,
            "H(S1)" => h1,
            "H(S2)" => h2,
            other => panic!("unknown bound component {other:?}"),
        })
        .sum()
}

fn finish(
    cli: &Cli,
    command: String,
    hash_parts: &[&str],
    rows: Vec<RowRecord>,
    notes: Vec<String>,
    verdict: &str,
    started: Instant,
    exit: i32,
) -> i32 {
    let report = RunReport {
        command,
        config_hash: config_hash(hash_parts),
        seed: Some(cli.seed),
        verdict: verdict.into(),
        rows,
        notes,
        wall_ms: started.elapsed().as_secs_f64() * 1e3,
    };
    print!("{}", report.render(cli.format));
    exit
}

fn run(cli: &Cli) -> Result<i32> {
    let t0 = Instant::now();
    match &cli.cmd {
        Cmd::Info { expr, scenario } => {
            let (file, text) = ScenarioFile::load(scenario)?;
            let p = compose_full(&file.scenario()?, &file.auxiliary()?)?;
            let e = parse_expression(expr).map_err(|e| anyhow!("{e}"))?;
            let v = p.eval_expression(&e)?;
            if cli.format == Format::Table {
                println!("{v:.12}");
                return Ok(0);
            }
            Ok(finish(
                cli,
                format!("info {expr}"),
                &[expr, &text],
                vec![RowRecord::plain(expr, v)],
                vec![],
                "ok",
                t0,
                0,
            ))
        }
        Cmd::Prove {
            target,
            constraints,
            ground,
        } => {
            let expr = parse_target(target).map_err(|e| anyhow!("{e}"))?;
            let mut cons: Vec<ProofConstraint> = Vec::new();
            let mut cons_text = String::new();
            if let Some(path) = constraints {
                cons_text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                for line in cons_text.lines() {
                    let line = line.trim();
                    if line.is_empty() || line.starts_with('#') {
                        continue;
                    }
                    cons.push(parse_constraint(line).map_err(|e| anyhow!("{e}"))?);
                }
            }
            let names: Vec<String> = match ground {
                Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
                None => {
                    let mut set: BTreeSet<String> = expr.support();
                    for c in &cons {
                        set.extend(c.expression().support());
                    }
                    set.into_iter().collect()
                }
            };
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let gs = GroundSet::new(&refs).map_err(|e| anyhow!("{e}"))?;
            let result = prove(&expr, &cons, &gs).map_err(|e| anyhow!("{e}"))?;
            let mut notes = Vec::new();
            let (verdict, exit) = match &result {
                ProofResult::Proven {
                    elemental_multipliers,
                    constraint_multipliers,
                } => {
                    let ok = verify_certificate(&expr, &cons, &gs, &result)
                        .map_err(|e| anyhow!("{e}"))?;
                    notes.push(format!(
                        "certificate: {} elemental + {} constraint multipliers, recombination {}",
                        elemental_multipliers.iter().filter(|m| !num::Zero::is_zero(*m)).count(),
                        constraint_multipliers.iter().filter(|m| !num::Zero::is_zero(*m)).count(),
                        if ok { "verified" } else { "FAILED" },
                    ));
                    if ok {
                        ("proven", 0)
                    } else {
                        ("certificate-mismatch", 1)
                    }
                }
                ProofResult::NotProvable { counterexample } => {
                    notes.push(format!(
                        "counterexample entropy vector has {} coordinates",
                        counterexample.len()
                    ));
                    ("not-provable", 1)
                }
            };
            Ok(finish(
                cli,
                format!("prove {target}"),
                &[target, &cons_text, &names.join(",")],
                vec![],
                notes,
                verdict,
                t0,
                exit,
            ))
        }
        Cmd::Fm { no_s3, order } => {
            let order_names: Vec<&str> = order.split(',').map(|s| s.trim()).collect();
            for o in &order_names {
                if !["R0", "R1", "R2"].contains(o) {
                    bail!("order must be a permutation of R0,R1,R2, got {o:?}");
                }
            }
            if order_names.len() != 3 {
                bail!("order must list all three rate variables");
            }
            let pipe = fm_pipeline(&order_names, !no_s3);
            let mut notes = vec![format!(
                "raw post-elimination count (no side conditions): {} (reference derivation: {})",
                fm_pipeline(&order_names, false).raw_h_count,
                RAW_COUNT_REFERENCE
            )];
            let got: BTreeSet<String> = pipe.h_rows.iter().map(|r| r.to_string()).collect();
            let rows: Vec<RowRecord> = pipe
                .h_rows
                .iter()
                .enumerate()
                .map(|(i, r)| RowRecord::plain(r.to_string(), i as f64))
                .collect();
            if *no_s3 {
                notes.push(format!(
                    "side conditions disabled: {} unreduced rows kept",
                    pipe.h_rows.len()
                ));
                return Ok(finish(
                    cli,
                    format!("fm --no-s3 --order {order}"),
                    &["fm", order, "no-s3"],
                    rows,
                    notes,
                    "reported",
                    t0,
                    0,
                ));
            }
            let want: BTreeSet<String> = GOLDEN_PROJECTION
                .iter()
                .map(|s| parse_lin_ineq(s).expect("fixture parses").to_string())
                .collect();
            for missing in want.difference(&got) {
                notes.push(format!("missing expected row: {missing}"));
            }
            for extra in got.difference(&want) {
                notes.push(format!("unexpected row: {extra}"));
            }
            let matched = got == want;
            Ok(finish(
                cli,
                format!("fm --order {order}"),
                &["fm", order],
                rows,
                notes,
                if matched { "match" } else { "MISMATCH" },
                t0,
                if matched { 0 } else { 1 },
            ))
        }
        Cmd::Region {
            kind,
            scenario,
            rates,
            resolution,
        } => {
            let (file, text) = ScenarioFile::load(scenario)?;
            let sc = file.scenario()?;
            let rates_val = rates.as_deref().map(parse_triple).transpose()?;
            let kind_name = format!("{kind:?}").to_lowercase();
            let command = format!("region {kind_name}");
            let hash_owned = rates.clone().unwrap_or_default();
            let hash_parts: Vec<&str> = vec![&kind_name, &text, &hash_owned];

            // Kinds that produce a plain satisfaction report.
            let report: Option<RegionReport> = match kind {
                RegionKind::Thm2 => Some(eval_theorem2(&sc, &file.auxiliary()?)?),
                RegionKind::Hc => Some(eval_theorem1_hc(&sc, &file.auxiliary()?)?),
                RegionKind::Marton => {
                    let (aux, x_map) = file.marton()?;
                    Some(specialize_marton(&sc.channel, &aux, &x_map)?)
                }
                RegionKind::Degraded => Some(specialize_degraded(&sc, &file.degraded()?)?),
                _ => None,
            };
            if let Some(report) = report {
                let ok = report.all_satisfied();
                let notes = vec![format!("min margin {:.9}", report.min_margin())];
                return Ok(finish(
                    cli,
                    command,
                    &hash_parts,
                    region_rows(&report),
                    notes,
                    if ok { "satisfied" } else { "not-satisfied" },
                    t0,
                    if ok { 0 } else { 1 },
                ));
            }
            match kind {
                RegionKind::Compare => {
                    let cmp = compare_thm2_hc(&sc, &file.auxiliary()?)?;
                    let all = cmp.iter().all(|c| c.dominated);
                    let rows = cmp
                        .iter()
                        .map(|c| {
                            RowRecord::bound(
                                &c.name,
                                c.thm2_rhs,
                                c.hc_rhs,
                                c.hc_rhs - c.thm2_rhs,
                                c.dominated,
                            )
                        })
                        .collect();
                    Ok(finish(
                        cli,
                        command,
                        &hash_parts,
                        rows,
                        vec![],
                        if all { "dominated" } else { "NOT-DOMINATED" },
                        t0,
                        if all { 0 } else { 1 },
                    ))
                }
                RegionKind::Gw => {
                    let r = rates_val
                        .ok_or_else(|| anyhow!("region gw requires --rates r0,r1,r2"))?;
                    let reports = specialize_gray_wyner(&sc.source, &file.gray_wyner()?, &r)?;
                    let mut rows = region_rows(&reports.four_row);
                    rows.extend(region_rows(&reports.canonical));
                    let ok = reports.four_row.all_satisfied();
                    Ok(finish(
                        cli,
                        command,
                        &hash_parts,
                        rows,
                        vec!["rows 1-5 four-row region; rows 6-8 canonical region".into()],
                        if ok { "satisfied" } else { "not-satisfied" },
                        t0,
                        if ok { 0 } else { 1 },
                    ))
                }
                RegionKind::MoreCapable => {
                    let v = check_more_capable(&sc.channel, *resolution);
                    let rows = vec![RowRecord::plain("worst_gap", v.worst_gap)];
                    let notes = vec![format!(
                        "witness input pmf {:?} at resolution {}",
                        v.witness, v.resolution
                    )];
                    Ok(finish(
                        cli,
                        command,
                        &hash_parts,
                        rows,
                        notes,
                        if v.more_capable {
                            "more-capable"
                        } else {
                            "not-more-capable"
                        },
                        t0,
                        if v.more_capable { 0 } else { 1 },
                    ))
                }
                RegionKind::Cover | RegionKind::Decode | RegionKind::Superpos => {
                    let aux = file.auxiliary()?;
                    let named: Vec<(String, f64, bool)> = match kind {
                        RegionKind::Cover => eval_covering_rates(&sc, &aux)?
                            .into_iter()
                            .map(|(n, v)| (n, v, false))
                            .collect(),
                        RegionKind::Decode => eval_decoding_rates(&sc, &aux)?
                            .into_iter()
                            .map(|(n, v)| (n, v, true))
                            .collect(),
                        _ => {
                            let (cover, dec) = eval_superposition_rates(&sc, &aux)?;
                            cover
                                .into_iter()
                                .map(|(n, v)| (n, v, false))
                                .chain(dec.into_iter().map(|(n, v)| (n, v, true)))
                                .collect()
                        }
                    };
                    let p = compose_full(&sc, &aux)?;
                    let h1 = p.entropy_joint(&["S1"])?;
                    let h2 = p.entropy_joint(&["S2"])?;
                    let mut all_ok = true;
                    let rows: Vec<RowRecord> = named
                        .iter()
                        .map(|(name, bound, upper)| match rates_val {
                            // With rates: check the sum against the bound.
                            // Lower bounds (covering) need sum > bound;
                            // upper bounds (decoding) need sum < bound.
                            Some(r) => {
                                let sum = named_sum(name, &r, h1, h2);
                                let margin = if *upper { bound - sum } else { sum - bound };
                                let ok = margin > cli.tol;
                                all_ok &= ok;
                                RowRecord::bound(name, sum, *bound, margin, ok)
                            }
                            None => RowRecord::plain(name, *bound),
                        })
                        .collect();
                    let (verdict, exit) = if rates_val.is_none() {
                        ("reported", 0)
                    } else if all_ok {
                        ("satisfied", 0)
                    } else {
                        ("not-satisfied", 1)
                    };
                    Ok(finish(
                        cli, command, &hash_parts, rows, vec![], verdict, t0, exit,
                    ))
                }
                _ => unreachable!("handled above"),
            }
        }
        Cmd::Simulate {
            kind,
            scenario,
            rates,
            n,
            trials,
            scheme,
            eps,
            eps_prime,
        } => {
            let (file, text) = ScenarioFile::load(scenario)?;
            let sc = file.scenario()?;
            let aux = file.auxiliary()?;
            let r = parse_triple(rates)?;
            let params = TypicalityParams::new(*n, *eps, *eps_prime).map_err(sim_input_err)?;
            let scheme_val: Scheme = (*scheme).into();
            let command = format!("simulate {kind:?}").to_lowercase();
            let echo = format!(
                "{rates}|n={n}|trials={trials}|scheme={scheme:?}|eps={eps}|eps'={eps_prime}|seed={}",
                cli.seed
            );
            match kind {
                SimKind::Cover => {
                    let stats = run_covering_experiment(
                        &sc, &aux, &r, &params, *trials, cli.seed, scheme_val,
                    )
                    .map_err(sim_input_err)?;
                    let rows = vec![
                        RowRecord::plain("p_hat", stats.p_hat),
                        RowRecord::plain("ci_lower", stats.ci_lower),
                        RowRecord::plain("ci_upper", stats.ci_upper),
                        RowRecord::plain("failures", stats.failures as f64),
                        RowRecord::plain("trials", stats.trials as f64),
                    ];
                    Ok(finish(
                        cli,
                        command,
                        &[&text, &echo],
                        rows,
                        vec![],
                        "estimated",
                        t0,
                        0,
                    ))
                }
                SimKind::E2e => {
                    let stats =
                        run_end_to_end(&sc, &aux, &r, &params, *trials, cli.seed, scheme_val)
                            .map_err(sim_input_err)?;
                    let d = |c: corrbc::simcode::DecodeCounts, tag: &str| {
                        vec![
                            RowRecord::plain(format!("{tag}.correct"), c.correct as f64),
                            RowRecord::plain(format!("{tag}.none_typical"), c.none_typical as f64),
                            RowRecord::plain(format!("{tag}.ambiguous"), c.ambiguous as f64),
                            RowRecord::plain(format!("{tag}.wrong"), c.wrong as f64),
                        ]
                    };
                    let mut rows = vec![
                        RowRecord::plain("error_rate", stats.error_rate),
                        RowRecord::plain("errors", stats.errors as f64),
                        RowRecord::plain("covering_failures", stats.covering_failures as f64),
                        RowRecord::plain("trials", stats.trials as f64),
                    ];
                    rows.extend(d(stats.decoder1, "decoder1"));
                    rows.extend(d(stats.decoder2, "decoder2"));
                    Ok(finish(
                        cli,
                        command,
                        &[&text, &echo],
                        rows,
                        vec![],
                        "estimated",
                        t0,
                        0,
                    ))
                }
            }
        }
        Cmd::Search {
            scenario,
            cards,
            budget,
        } => {
            let (file, text) = ScenarioFile::load(scenario)?;
            let sc = file.scenario()?;
            let parts: Vec<usize> = cards
                .split(',')
                .map(|p| p.trim().parse().map_err(|e| anyhow!("{e}: {p:?}")))
                .collect::<Result<_>>()?;
            let [c0, c1, c2] = parts[..] else {
                bail!("cards must be three comma-separated sizes");
            };
            let out = search_feasible_aux(&sc, (c0, c1, c2), *budget, cli.seed)?;
            let mut rows = vec![
                RowRecord::plain("best_margin", out.best_margin),
                RowRecord::plain("evaluations", out.evaluations as f64),
            ];
            rows.extend(region_rows(&out.report));
            let ok = out.best_margin > cli.tol;
            Ok(finish(
                cli,
                "search".into(),
                &[&text, cards, &budget.to_string()],
                rows,
                vec![],
                if ok { "feasible" } else { "no-feasible-point-found" },
                t0,
                if ok { 0 } else { 1 },
            ))
        }
    }
}

/// Simulation configuration problems (bad parameters, budget overrun)
/// are input errors: surface them as exit code 2 via the error path.
fn sim_input_err(e: SimError) -> anyhow::Error {
    anyhow!("{e}")
}
