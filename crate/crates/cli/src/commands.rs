use std::fmt::Write as _;

use plankforge_core::bounds::{
    compare_bounds, estimate_mn, estimate_polarization_constant, verify_product_inequality, BoundKind, BoundSpec,
    BoundValue, CheckStatus, SearchOptions, VerifyOptions,
};
use plankforge_core::extremal::{bst_sharpness_check, build_family, hilbert_equality_check, verify_equality};
use plankforge_core::plank::{find_witness, WitnessOptions};
use plankforge_core::remez::{check_lemma8_integral, estimate_sublevel_measures, MonteCarloOptions};
use plankforge_core::space::{estimate_sup_norm, normalize};
use plankforge_core::{Field, NormOptions, PlankInstance, Regime};
use serde::Serialize;

use crate::args::*;
use crate::error::{usage, CliError};
use crate::io::{json_report, parse_range, parse_space, read_poly, read_polys, resolve_space};

/// Report text and whether a check inside it failed.
pub struct Outcome {
    pub text: String,
    pub check_failed: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, check_failed: false }
    }
}

fn norm_options(seed: u64, opt: &OptimizerArgs) -> NormOptions {
    NormOptions { starts: opt.starts, max_iters: opt.max_iters, tol: opt.tol, seed }
}

fn parse_field(s: &str) -> Result<Field, CliError> {
    s.parse().map_err(usage)
}

fn parse_kind(s: &str) -> Result<BoundKind, CliError> {
    let kind: BoundKind = s.parse()?;
    if let Some(w) = kind.warning() {
        eprintln!("warning: {w}");
    }
    Ok(kind)
}

#[derive(Serialize)]
struct Resolved<'a, A: Serialize> {
    #[serde(flatten)]
    args: &'a A,
    resolved_space: String,
}

pub fn norm(seed: u64, args: &NormArgs) -> Result<Outcome, CliError> {
    let poly = read_poly(&args.poly)?;
    let space = resolve_space(&args.space, &poly)?;
    let est = estimate_sup_norm(&poly, &space, &norm_options(seed, &args.optimizer))?;
    let config = Resolved { args, resolved_space: space.to_string() };
    Ok(Outcome::ok(json_report("norm", seed, &config, &est)))
}

#[derive(Serialize)]
struct ConstantReport {
    kind: BoundKind,
    degrees: Vec<u32>,
    d: Option<usize>,
    p: Option<f64>,
    field: Field,
    #[serde(flatten)]
    value: BoundValue,
    warning: Option<&'static str>,
}

pub fn constants(seed: u64, cmd: &ConstantsCmd) -> Result<Outcome, CliError> {
    match &cmd.action {
        Some(ConstantsAction::Sweep(a)) => sweep(seed, a),
        Some(ConstantsAction::Compare(a)) => {
            let report = compare_bounds(a.n, a.k, a.d, parse_field(&a.field)?)?;
            Ok(Outcome::ok(json_report("constants compare", seed, a, &report)))
        }
        None => {
            let a = &cmd.single;
            let kind = parse_kind(a.kind.as_deref().ok_or_else(|| usage("--kind is required"))?)?;
            if a.k.is_empty() {
                return Err(usage("--k is required"));
            }
            let spec = BoundSpec { kind, degrees: a.k.clone(), dim: a.d, p: a.p, field: parse_field(&a.field)? };
            let value = spec.value()?;
            let report = ConstantReport {
                kind,
                degrees: spec.degrees,
                d: spec.dim,
                p: spec.p,
                field: spec.field,
                value,
                warning: kind.warning(),
            };
            Ok(Outcome::ok(json_report("constants", seed, a, &report)))
        }
    }
}

/// CSV with columns `kind,field,d,p,n,k,log_value`, preceded by `#` comment
/// lines holding the run header.
fn sweep(seed: u64, a: &SweepArgs) -> Result<Outcome, CliError> {
    let kinds = a.kinds.iter().map(|k| parse_kind(k)).collect::<Result<Vec<_>, _>>()?;
    let field = parse_field(&a.field)?;
    let ds = parse_range(&a.d)?;
    let ns = parse_range(&a.n)?;
    let ks = parse_range(&a.k)?;
    let mut out = String::new();
    let config = serde_json::to_string(a).expect("args serialize");
    let _ = writeln!(out, "# tool={} version={}", env!("CARGO_PKG_NAME"), env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "# command=constants sweep seed={seed}");
    let _ = writeln!(out, "# config={config}");
    out.push_str("kind,field,d,p,n,k,log_value\n");
    let p_col = a.p.map(|p| p.to_string()).unwrap_or_default();
    for &kind in &kinds {
        for &d in &ds {
            for &n in &ns {
                for &k in &ks {
                    let degree = u32::try_from(k).map_err(|_| usage("degree too large"))?;
                    let n_usize = usize::try_from(n).map_err(|_| usage("n too large"))?;
                    let spec = BoundSpec { kind, degrees: vec![degree; n_usize], dim: Some(d as usize), p: a.p, field };
                    let v = spec.log_value()?;
                    let _ = writeln!(out, "{kind},{field},{d},{p_col},{n},{k},{v:?}");
                }
            }
        }
    }
    Ok(Outcome::ok(out))
}

fn search_options(seed: u64, s: &SearchArgs) -> SearchOptions {
    SearchOptions { budget: s.budget, seed, norm: NormOptions { starts: s.starts, ..NormOptions::with_seed(seed) } }
}

pub fn mn_estimate(seed: u64, args: &MnArgs) -> Result<Outcome, CliError> {
    let space = parse_space(&args.space)?;
    let est = estimate_mn(&space, args.n, args.degree_cap, &search_options(seed, &args.search))?;
    Ok(Outcome::ok(json_report("mn-estimate", seed, args, &est)))
}

pub fn polarization(seed: u64, args: &PolarizationArgs) -> Result<Outcome, CliError> {
    let space = parse_space(&args.space)?;
    let est = estimate_polarization_constant(&space, args.k, &search_options(seed, &args.search))?;
    Ok(Outcome::ok(json_report("polarization", seed, args, &est)))
}

fn monte_carlo_setup(
    seed: u64,
    a: &MonteCarloArgs,
) -> Result<(plankforge_core::Polynomial, plankforge_core::SpaceSpec, MonteCarloOptions), CliError> {
    let poly = read_poly(&a.poly)?;
    let space = resolve_space(&a.space, &poly)?;
    let norm = NormOptions { starts: a.starts, ..NormOptions::with_seed(seed) };
    let poly = if a.normalize { normalize(&poly, &space, &norm)?.0 } else { poly };
    Ok((poly, space, MonteCarloOptions { samples: a.samples, seed, norm }))
}

#[derive(Serialize)]
struct SublevelReport {
    estimates: Vec<plankforge_core::remez::SublevelEstimate>,
    pass: bool,
}

pub fn remez(seed: u64, cmd: &RemezCmd) -> Result<Outcome, CliError> {
    match cmd {
        RemezCmd::Sublevel(a) => {
            let (poly, space, opts) = monte_carlo_setup(seed, &a.common)?;
            let estimates = estimate_sublevel_measures(&poly, &space, &a.t, &opts)?;
            let pass = estimates.iter().all(|e| e.pass);
            let config = Resolved { args: a, resolved_space: space.to_string() };
            let text = json_report("remez sublevel", seed, &config, &SublevelReport { estimates, pass });
            Ok(Outcome { text, check_failed: !pass })
        }
        RemezCmd::Lemma8(a) => {
            let (poly, space, opts) = monte_carlo_setup(seed, &a.common)?;
            let check = check_lemma8_integral(&poly, &space, a.t_max, &opts)?;
            let failed = !check.pass || check.homogeneous_pass == Some(false);
            let config = Resolved { args: a, resolved_space: space.to_string() };
            Ok(Outcome { text: json_report("remez lemma8", seed, &config, &check), check_failed: failed })
        }
    }
}

pub fn plank(seed: u64, args: &PlankArgs) -> Result<Outcome, CliError> {
    let polys = read_polys(&args.polys)?;
    let space = parse_space(&args.space)?;
    let regime = match args.regime {
        RegimeArg::Bst => Regime::Bst,
        RegimeArg::Lp => Regime::Lp,
        RegimeArg::FiniteDim => Regime::FiniteDim,
        RegimeArg::KCustom => Regime::KCustom { k: args.k_const.ok_or_else(|| usage("k-custom needs --K"))? },
    };
    let opts = WitnessOptions { norm: norm_options(seed, &args.optimizer), r_cap: args.r_cap };
    let inst = PlankInstance::new(&polys, &args.radii, space, regime, &opts.norm)?;
    let report = find_witness(&inst, &opts)?;
    let failed = !report.success;
    Ok(Outcome { text: json_report("plank", seed, args, &report), check_failed: failed })
}

pub fn extremal(seed: u64, args: &ExtremalArgs) -> Result<Outcome, CliError> {
    let (text, pass) = match args.check {
        ExtremalCheck::Family => {
            let fam = build_family(args.d, args.n, args.k)?;
            let norm = NormOptions::with_seed(seed);
            let rep = verify_equality(&fam, args.cross_check.then_some(&norm))?;
            let pass = rep.exact_pass && rep.estimate_pass != Some(false);
            (json_report("extremal", seed, args, &rep), pass)
        }
        ExtremalCheck::Bst => {
            let rep = bst_sharpness_check(args.n)?;
            (json_report("extremal", seed, args, &rep), rep.pass)
        }
        ExtremalCheck::Hilbert => {
            let rep = hilbert_equality_check(args.n)?;
            (json_report("extremal", seed, args, &rep), rep.pass)
        }
    };
    Ok(Outcome { text, check_failed: !pass })
}

pub fn verify_inequality(seed: u64, args: &VerifyArgs) -> Result<Outcome, CliError> {
    let polys = read_polys(&args.polys)?;
    let space = parse_space(&args.space)?;
    let kind = parse_kind(&args.kind)?;
    let opts = VerifyOptions { norm: norm_options(seed, &args.optimizer), rtol: args.rtol };
    let check = verify_product_inequality(&polys, &space, kind, &opts)?;
    let failed = check.status == CheckStatus::Violation;
    Ok(Outcome { text: json_report("verify-inequality", seed, args, &check), check_failed: failed })
}
