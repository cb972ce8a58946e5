//! Command-line front end: computes variation factors, curve and
//! two-dimensional variation, the BV/D/spoke norms, ray classifications,
//! absolute-continuity verdicts and isomorphism distortion from JSON
//! manifests, and reproduces the worked examples as pass/fail demos.
//!
//! Reports are JSON on stdout, deterministic byte-for-byte for a fixed
//! manifest and tool version. Exit codes: 0 success, 2 validation error,
//! 3 demo assertion failure.

mod demos;
mod manifest;

use bvsigma::csets::classify_finite;
use bvsigma::geometry::{vf, PointList};
use bvsigma::isomorphisms::{
    distortion_estimate, move_isolated_point, order_matching_homeo, Continuity, NormKind,
    PointBijection,
};
use bvsigma::membership::{ac_test_kray, DEFAULT_SCHEDULE, DEFAULT_TOL};
use bvsigma::norms::{d_norm, spoke_norm};
use bvsigma::variation::{bv_norm, cvar, var_search, SearchConfig};
use clap::{Args, Parser, Subcommand};
use manifest::{Manifest, MapDescription, NormChoice, SetDescription};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::PathBuf;

#[derive(Parser)]
#[command(name = "bvsigma", version, about = "Variation, BV/AC norms and composition-operator isomorphisms on plane sets")]
struct Cli {
    /// Worker threads (overrides the THREADS environment variable).
    /// The engine is sequential and deterministic; the value is echoed in
    /// reports and reserved for future use.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Variation factor of an ordered point list.
    Vf(TaskArgs),
    /// Curve variation of a function along an ordered list.
    Cvar(TaskArgs),
    /// Two-dimensional variation search.
    Var(TaskArgs),
    /// Sup norm plus two-dimensional variation.
    BvNorm(TaskArgs),
    /// Decomposition norm at an isolated point.
    DNorm(TaskArgs),
    /// Spoke norm of a strict k-ray truncation.
    SpokeNorm(TaskArgs),
    /// Ray decomposition of a set.
    ClassifyRays(TaskArgs),
    /// Absolute-continuity verdict on a k-ray spec.
    AcTest(TaskArgs),
    /// Norm ratios of a composition operator over a test family.
    IsoDistortion(TaskArgs),
    /// Reproduce a worked computation with a pass/fail verdict.
    Demo(DemoArgs),
}

#[derive(Args)]
struct TaskArgs {
    /// Path to the JSON manifest ("-" for stdin).
    #[arg(long, conflicts_with = "points")]
    manifest: Option<PathBuf>,
    /// Inline point list, e.g. [["-1","0"],["0","0"],["1","0"]].
    #[arg(long)]
    points: Option<String>,
}

#[derive(Args)]
struct DemoArgs {
    /// One of: d-sharpness, bv-no-hom, parabola, interleave, lpam,
    /// spoke-equiv, psi.
    name: String,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    l: usize,
    #[arg(long, default_value_t = 5)]
    n: u64,
    #[arg(long, default_value_t = 8)]
    trunc: u64,
    #[arg(long, default_value_t = 20)]
    functions: usize,
}

#[derive(Serialize)]
struct Envelope {
    schema_version: u32,
    tool_version: &'static str,
    task: String,
    threads: usize,
    inputs: Value,
    result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pass: Option<bool>,
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = Cli::parse();
    let threads = cli
        .threads
        .or_else(|| {
            std::env::var("THREADS")
                .ok()
                .and_then(|v| v.parse::<usize>().ok())
        })
        .unwrap_or(1);
    if threads == 0 {
        eprintln!("error: --threads must be >= 1");
        return 2;
    }
    match dispatch(cli.command, threads) {
        Ok((envelope, pass)) => {
            println!(
                "{}",
                serde_json::to_string_pretty(&envelope).expect("report serializes")
            );
            match pass {
                Some(false) => 3,
                _ => 0,
            }
        }
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}

fn dispatch(command: Command, threads: usize) -> Result<(Envelope, Option<bool>), String> {
    let (task, inputs, result, pass) = match command {
        Command::Vf(args) => task_vf(&args)?,
        Command::Cvar(args) => task_cvar(&args)?,
        Command::Var(args) => task_var(&args)?,
        Command::BvNorm(args) => task_bv_norm(&args)?,
        Command::DNorm(args) => task_d_norm(&args)?,
        Command::SpokeNorm(args) => task_spoke_norm(&args)?,
        Command::ClassifyRays(args) => task_classify(&args)?,
        Command::AcTest(args) => task_ac_test(&args)?,
        Command::IsoDistortion(args) => task_iso_distortion(&args)?,
        Command::Demo(args) => task_demo(&args)?,
    };
    Ok((
        Envelope {
            schema_version: 1,
            tool_version: env!("CARGO_PKG_VERSION"),
            task,
            threads,
            inputs,
            result,
            pass,
        },
        pass,
    ))
}

type TaskOutput = (String, Value, Value, Option<bool>);

fn read_manifest(args: &TaskArgs) -> Result<(Manifest, Value), String> {
    let raw = match (&args.manifest, &args.points) {
        (Some(path), None) => {
            if path.as_os_str() == "-" {
                use std::io::Read;
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| e.to_string())?;
                buf
            } else {
                std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?
            }
        }
        (None, Some(points)) => format!("{{\"set\": {{\"points\": {points}}}}}"),
        _ => return Err("provide exactly one of --manifest or --points".into()),
    };
    let echo: Value = serde_json::from_str(&raw).map_err(|e| format!("invalid JSON: {e}"))?;
    let manifest: Manifest =
        serde_json::from_str(&raw).map_err(|e| format!("invalid manifest: {e}"))?;
    Ok((manifest, echo))
}

fn ordered_list(manifest: &Manifest) -> Result<PointList, String> {
    let raw = match (&manifest.list, &manifest.set) {
        (Some(list), _) => list.clone(),
        (None, SetDescription::Points(points)) => points.clone(),
        _ => return Err("an ordered list is required (manifest field \"list\")".into()),
    };
    PointList::new(manifest::parse_points(&raw)?).map_err(|e| e.to_string())
}

fn config_of(manifest: &Manifest, set_len: usize) -> SearchConfig {
    let base = if set_len <= 6 {
        SearchConfig::exhaustive_for(set_len)
    } else {
        SearchConfig::default()
    };
    match &manifest.config {
        Some(overrides) => overrides.to_config(base),
        None => base,
    }
}

fn task_vf(args: &TaskArgs) -> Result<TaskOutput, String> {
    let (manifest, echo) = read_manifest(args)?;
    let list = ordered_list(&manifest)?;
    let value = vf(&list);
    Ok(("vf".into(), echo, json!({ "vf": value }), None))
}

fn task_cvar(args: &TaskArgs) -> Result<TaskOutput, String> {
    let (manifest, echo) = read_manifest(args)?;
    let set = manifest.set.to_finite()?;
    let function = manifest
        .function
        .as_ref()
        .ok_or("cvar needs a function")?
        .to_table(&set)?;
    let list = ordered_list(&manifest)?;
    let value = cvar(&function, &list).map_err(|e| e.to_string())?;
    Ok(("cvar".into(), echo, json!({ "cvar": value }), None))
}

fn task_var(args: &TaskArgs) -> Result<TaskOutput, String> {
    let (manifest, echo) = read_manifest(args)?;
    let set = manifest.set.to_finite()?;
    let function = manifest
        .function
        .as_ref()
        .ok_or("var needs a function")?
        .to_table(&set)?;
    let cfg = config_of(&manifest, set.len());
    let estimate = var_search(&function, &set, &cfg).map_err(|e| e.to_string())?;
    Ok((
        "var".into(),
        echo,
        serde_json::to_value(&estimate).map_err(|e| e.to_string())?,
        None,
    ))
}

fn task_bv_norm(args: &TaskArgs) -> Result<TaskOutput, String> {
    let (manifest, echo) = read_manifest(args)?;
    let set = manifest.set.to_finite()?;
    let function = manifest
        .function
        .as_ref()
        .ok_or("bv-norm needs a function")?
        .to_table(&set)?;
    let cfg = config_of(&manifest, set.len());
    let norm = bv_norm(&function, &set, &cfg).map_err(|e| e.to_string())?;
    Ok((
        "bv-norm".into(),
        echo,
        serde_json::to_value(&norm).map_err(|e| e.to_string())?,
        None,
    ))
}

fn task_d_norm(args: &TaskArgs) -> Result<TaskOutput, String> {
    let (manifest, echo) = read_manifest(args)?;
    let set = manifest.set.to_finite()?;
    let z = manifest
        .isolated_point
        .as_ref()
        .ok_or("d-norm needs isolated_point")?;
    let z = manifest::parse_point(z)?;
    let base = set.without_point(&z).map_err(|e| e.to_string())?;
    let function = manifest
        .function
        .as_ref()
        .ok_or("d-norm needs a function")?
        .to_table(&set)?;
    let cfg = config_of(&manifest, base.len());
    let report = d_norm(&function, &base, &z, &cfg).map_err(|e| e.to_string())?;
    Ok((
        "d-norm".into(),
        echo,
        serde_json::to_value(&report).map_err(|e| e.to_string())?,
        None,
    ))
}

fn task_spoke_norm(args: &TaskArgs) -> Result<TaskOutput, String> {
    let (manifest, echo) = read_manifest(args)?;
    let set = manifest.set.to_finite()?;
    let partition = classify_finite(&set).map_err(|e| e.to_string())?;
    let function = manifest
        .function
        .as_ref()
        .ok_or("spoke-norm needs a function")?
        .to_table(&set)?;
    let report = spoke_norm(&function, &partition).map_err(|e| e.to_string())?;
    Ok((
        "spoke-norm".into(),
        echo,
        serde_json::to_value(&report).map_err(|e| e.to_string())?,
        None,
    ))
}

fn task_classify(args: &TaskArgs) -> Result<TaskOutput, String> {
    let (manifest, echo) = read_manifest(args)?;
    let (partition, level) = manifest.set.classify()?;
    Ok((
        "classify-rays".into(),
        echo,
        json!({
            "level": level,
            "partition": partition,
            "k": partition.k(),
            "strict": partition.is_strict(),
        }),
        None,
    ))
}

fn task_ac_test(args: &TaskArgs) -> Result<TaskOutput, String> {
    let (manifest, echo) = read_manifest(args)?;
    let builder = match &manifest.set {
        SetDescription::Builder(b) => b,
        _ => return Err("ac-test needs a builder set".into()),
    };
    let spec = builder.to_spec()?;
    let rule = match manifest.function.as_ref() {
        Some(manifest::FunctionDescription::Rule(rule)) => rule.to_rule()?,
        _ => return Err("ac-test needs a function rule".into()),
    };
    let schedule = manifest
        .schedule
        .clone()
        .unwrap_or_else(|| DEFAULT_SCHEDULE.to_vec());
    let tol = manifest.tol.unwrap_or(DEFAULT_TOL);
    let verdict = ac_test_kray(&rule, &spec, &schedule, tol).map_err(|e| e.to_string())?;
    Ok((
        "ac-test".into(),
        echo,
        serde_json::to_value(&verdict).map_err(|e| e.to_string())?,
        None,
    ))
}

fn task_iso_distortion(args: &TaskArgs) -> Result<TaskOutput, String> {
    let (manifest, echo) = read_manifest(args)?;
    let set = manifest.set.to_finite()?;
    let family_size = manifest.family_size.unwrap_or(20);
    let family = bvsigma::isomorphisms::deterministic_family(&set, family_size, 0xD1_57);
    let map = manifest.map.as_ref().ok_or("iso-distortion needs a map")?;
    let h = match map {
        MapDescription::Swap01 {} => {
            let origin = bvsigma::geometry::PlanarPoint::origin();
            let one = bvsigma::geometry::PlanarPoint::from_ints(1, 0);
            if !set.contains(&origin) || !set.contains(&one) {
                return Err("swap01 needs both 0 and 1 in the set".into());
            }
            PointBijection::new(
                set.iter().map(|p| {
                    let image = if p == &origin {
                        one.clone()
                    } else if p == &one {
                        origin.clone()
                    } else {
                        p.clone()
                    };
                    (p.clone(), image)
                }),
                Continuity::BijectionOnly,
            )
            .map_err(|e| e.to_string())?
        }
        MapDescription::MovePoint { from, to } => {
            let from = manifest::parse_point(from)?;
            let to = manifest::parse_point(to)?;
            let base = set.without_point(&from).map_err(|e| e.to_string())?;
            move_isolated_point(&base, &from, &to).map_err(|e| e.to_string())?
        }
        MapDescription::OrderMatch { target } => {
            let target_set = target.to_finite()?;
            order_matching_homeo(
                &classify_finite(&set).map_err(|e| e.to_string())?,
                &classify_finite(&target_set).map_err(|e| e.to_string())?,
            )
            .map_err(|e| e.to_string())?
        }
    };
    let cfg = config_of(&manifest, set.len());
    let norm = match manifest.norm.as_ref().unwrap_or(&NormChoice::Bv) {
        NormChoice::Bv => NormKind::Bv,
        NormChoice::Spoke => NormKind::Spoke,
    };
    let report = distortion_estimate(&h, &family, &norm, &cfg).map_err(|e| e.to_string())?;
    Ok((
        "iso-distortion".into(),
        echo,
        serde_json::to_value(&report).map_err(|e| e.to_string())?,
        None,
    ))
}

fn task_demo(args: &DemoArgs) -> Result<TaskOutput, String> {
    let inputs = json!({
        "name": args.name,
        "k": args.k,
        "l": args.l,
        "n": args.n,
        "trunc": args.trunc,
        "functions": args.functions,
    });
    let (result, pass) = match args.name.as_str() {
        "d-sharpness" => demos::d_sharpness()?,
        "bv-no-hom" => demos::bv_no_hom(args.trunc, args.functions)?,
        "parabola" => demos::parabola(args.trunc, args.functions)?,
        "interleave" => demos::interleave(args.k, args.l, args.n, args.trunc)?,
        "lpam" => demos::lpam()?,
        "spoke-equiv" => demos::spoke_equiv(args.k, args.trunc, args.functions)?,
        "psi" => demos::psi(args.trunc)?,
        other => return Err(format!("unknown demo {other:?}")),
    };
    Ok((format!("demo {}", args.name), inputs, result, Some(pass)))
}
