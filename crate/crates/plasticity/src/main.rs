//! Command-line front end: validate space files, compute separation
//! profiles, exact plasticity moduli, lower bounds, plasticity checks,
//! and generate the example constructions. Reports are JSON objects
//! with top-level "verdict" and "witnesses" fields; `--format text`
//! renders the same data as indented lines.
//!
//! Oversized instances are refused, never approximated: every number
//! printed is exact.

use clap::{Parser, Subcommand, ValueEnum};
use plasticity::bounds::{bound_orbit, bound_pair_sum, m_of_n, nitka_bound};
use plasticity::constructions::{GeneratorOutput, GeneratorRecipe};
use plasticity::mapping::PointMap;
use plasticity::metric::{space_from_json, space_to_json, FiniteMetricSpace};
use plasticity::randgen::{random_catalog, random_space, random_subspace, rng_from_seed};
use plasticity::search::{
    exact_modulus, is_ec_plastic, is_strongly_plastic, proper_measurement_check,
    verify_s_comparison_plasticity, verify_surjection_theorem, MapClass, Measurement,
};
use plasticity::separation::profile;
use plasticity::{format_rational, parse_rational, MonotoneGauge, Rational};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

const MAP_ENUMERATION_LIMIT: f64 = 1e8;

#[derive(Parser)]
#[command(
    name = "plasticity",
    version,
    about = "Exact plasticity invariants of finite metric spaces"
)]
struct Cli {
    /// Output format for reports.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker count; kept for compatibility, output is identical for
    /// any value.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    /// Largest point count accepted for subset (separation) searches.
    #[arg(long, global = true, default_value_t = 12)]
    max_size: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassArg {
    Bijections,
    AllMaps,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CheckKind {
    Ec,
    Strong,
    SurjectionTheorem,
    SComparison,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a space file against the metric axioms.
    Validate { path: PathBuf },
    /// Separation profile: s, alpha, N, n sampled over all breakpoints.
    Profile { path: PathBuf },
    /// Exact modulus of plasticity for a pair of spaces at a level eps.
    Modulus {
        x: PathBuf,
        y: PathBuf,
        #[arg(long)]
        eps: String,
        #[arg(long, value_enum, default_value_t = ClassArg::Bijections)]
        class: ClassArg,
    },
    /// Plasticity decisions and finite-instance theorem checks.
    Check {
        x: PathBuf,
        y: PathBuf,
        #[arg(long, value_enum)]
        kind: CheckKind,
    },
    /// Closed-form lower bounds at a level eps.
    Bounds {
        /// Space file; enables the net-based bound and supplies N.
        #[arg(long)]
        space: Option<PathBuf>,
        /// Point count, if no space file is given.
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        eps: String,
    },
    /// Generate an example construction from a recipe (inline JSON or
    /// a path to a JSON file).
    Generate {
        #[arg(long)]
        recipe: String,
        /// Write space/map files here in addition to the report.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Seeded self-verification suite over random instances.
    VerifyAll {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        /// Point count for the random instances.
        #[arg(long, default_value_t = 4)]
        size: usize,
    },
}

enum CmdError {
    /// instance exceeds a size limit; nothing was computed
    Refusal(String),
    /// input could not be read or parsed
    Input(String),
}

type CmdResult = Result<(Value, ExitCode), CmdError>;

fn load_space(path: &Path) -> Result<FiniteMetricSpace, CmdError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::Input(format!("{}: {e}", path.display())))?;
    space_from_json(&text).map_err(|e| CmdError::Input(format!("{}: {e}", path.display())))
}

fn parse_eps(text: &str) -> Result<Rational, CmdError> {
    parse_rational(text).map_err(|e| CmdError::Input(format!("--eps: {e}")))
}

fn guard_subset_search(space: &FiniteMetricSpace, max_size: usize) -> Result<(), CmdError> {
    if space.len() > max_size {
        return Err(CmdError::Refusal(format!(
            "subset search limit: |X| = {} exceeds --max-size = {max_size}",
            space.len()
        )));
    }
    Ok(())
}

fn guard_map_search(x: &FiniteMetricSpace, y: &FiniteMetricSpace) -> Result<(), CmdError> {
    let count = (y.len() as f64).powi(x.len() as i32);
    if count > MAP_ENUMERATION_LIMIT {
        return Err(CmdError::Refusal(format!(
            "map enumeration limit: |Y|^|X| = {}^{} exceeds 10^8",
            y.len(),
            x.len()
        )));
    }
    Ok(())
}

fn cmd_validate(path: &Path) -> CmdResult {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CmdError::Input(format!("{}: {e}", path.display())))?;
    match space_from_json(&text) {
        Ok(space) => Ok((
            json!({
                "verdict": "valid",
                "witnesses": {},
                "points": space.len(),
                "diameter": format_rational(&space.diam()),
            }),
            ExitCode::SUCCESS,
        )),
        Err(violation) => Ok((
            json!({
                "verdict": "invalid",
                "witnesses": { "violation": violation.to_string() },
            }),
            ExitCode::FAILURE,
        )),
    }
}

fn cmd_profile(path: &Path, max_size: usize) -> CmdResult {
    let space = load_space(path)?;
    guard_subset_search(&space, max_size)?;
    let prof = profile(&space).map_err(|e| CmdError::Input(e.to_string()))?;
    Ok((
        json!({
            "verdict": "profile",
            "witnesses": {},
            "profile": serde_json::to_value(&prof).expect("serializable"),
        }),
        ExitCode::SUCCESS,
    ))
}

fn cmd_modulus(xp: &Path, yp: &Path, eps: &str, class: ClassArg) -> CmdResult {
    let x = load_space(xp)?;
    let y = load_space(yp)?;
    let eps = parse_eps(eps)?;
    guard_map_search(&x, &y)?;
    let class = match class {
        ClassArg::Bijections => MapClass::Bijections,
        ClassArg::AllMaps => MapClass::AllMaps,
    };
    let report = exact_modulus(&x, &y, &eps, class).map_err(|e| CmdError::Input(e.to_string()))?;
    Ok((report.to_json(&x, &y), ExitCode::SUCCESS))
}

fn cmd_check(xp: &Path, yp: &Path, kind: CheckKind) -> CmdResult {
    let x = load_space(xp)?;
    let y = load_space(yp)?;
    guard_map_search(&x, &y)?;
    let value = match kind {
        CheckKind::Ec | CheckKind::Strong => {
            let r = if kind == CheckKind::Ec { is_ec_plastic(&x, &y) } else { is_strongly_plastic(&x, &y) };
            json!({
                "verdict": if r.plastic { "plastic" } else { "not_plastic" },
                "witnesses": { "counterexample_map": r.counterexample },
                "note": r.note,
            })
        }
        CheckKind::SurjectionTheorem => {
            let r = verify_surjection_theorem(&x, &y).map_err(|e| CmdError::Input(e.to_string()))?;
            if !r.applicable {
                json!({
                    "verdict": "n/a",
                    "witnesses": { "failed_hypothesis": r.hypothesis_failure },
                })
            } else {
                json!({
                    "verdict": if r.counterexample.is_none() { "all_isometries" } else { "counterexample" },
                    "witnesses": { "counterexample_map": r.counterexample },
                    "surjections_checked": r.surjections_checked,
                })
            }
        }
        CheckKind::SComparison => {
            let r = verify_s_comparison_plasticity(&x, &y)
                .map_err(|e| CmdError::Input(e.to_string()))?;
            if !r.applicable {
                json!({
                    "verdict": "n/a",
                    "witnesses": { "failed_hypothesis": r.hypothesis_failure },
                })
            } else {
                json!({
                    "verdict": if r.strongly_plastic == Some(true) { "strongly_plastic" } else { "not_plastic" },
                    "witnesses": { "counterexample_map": r.counterexample },
                })
            }
        }
    };
    Ok((value, ExitCode::SUCCESS))
}

fn cmd_bounds(space: Option<&Path>, n: Option<u64>, eps: &str, max_size: usize) -> CmdResult {
    let eps = parse_eps(eps)?;
    let loaded = space.map(load_space).transpose()?;
    let n = match (&loaded, n) {
        (Some(s), _) => s.len() as u64,
        (None, Some(n)) => n,
        (None, None) => return Err(CmdError::Input("give --space or --n".into())),
    };
    let mut witnesses = serde_json::Map::new();
    let mut body = serde_json::Map::new();
    body.insert("n".into(), json!(n));
    body.insert("eps".into(), json!(format_rational(&eps)));
    if let Ok(m) = m_of_n(n) {
        body.insert("m_of_n".into(), json!(m));
    }
    match bound_orbit(n, &eps) {
        Ok(b) => { body.insert("orbit_bound".into(), json!(format_rational(&b))); }
        Err(e) => { body.insert("orbit_bound_error".into(), json!(e.to_string())); }
    }
    match bound_pair_sum(n, &eps) {
        Ok(b) => { body.insert("pair_sum_bound".into(), json!(format_rational(&b))); }
        Err(e) => { body.insert("pair_sum_bound_error".into(), json!(e.to_string())); }
    }
    if let Some(s) = &loaded {
        guard_subset_search(s, max_size)?;
        let b = nitka_bound(s, &eps).map_err(|e| CmdError::Input(e.to_string()))?;
        body.insert("nitka_bound".into(), json!(format_rational(&b)));
        witnesses.insert("space".into(), json!(space.unwrap().display().to_string()));
    }
    let mut report = serde_json::Map::new();
    report.insert("verdict".into(), json!("bounds"));
    report.insert("witnesses".into(), Value::Object(witnesses));
    report.extend(body);
    Ok((Value::Object(report), ExitCode::SUCCESS))
}

fn map_json(map: &PointMap) -> Value {
    let margins = map.margins().ok();
    json!({
        "table": map.table(),
        "by_label": map
            .table()
            .iter()
            .enumerate()
            .map(|(i, &v)| json!([map.domain().label(i), map.codomain().label(v)]))
            .collect::<Vec<_>>(),
        "expansion_margin": margins.as_ref().map(|m| format_rational(&m.expansion)),
        "contraction_margin": margins.as_ref().map(|m| format_rational(&m.contraction)),
    })
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<String, CmdError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CmdError::Input(format!("{}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| CmdError::Input(format!("{}: {e}", path.display())))?;
    Ok(path.display().to_string())
}

fn cmd_generate(recipe: &str, out_dir: Option<&Path>) -> CmdResult {
    let text = if recipe.trim_start().starts_with('{') {
        recipe.to_string()
    } else {
        std::fs::read_to_string(recipe).map_err(|e| CmdError::Input(format!("{recipe}: {e}")))?
    };
    let recipe: GeneratorRecipe =
        serde_json::from_str(&text).map_err(|e| CmdError::Input(format!("recipe: {e}")))?;
    let output = recipe.generate().map_err(|e| CmdError::Input(e.to_string()))?;
    let mut files = Vec::new();
    let witnesses = match &output {
        GeneratorOutput::Map(map) => {
            if let Some(dir) = out_dir {
                files.push(write_file(dir, "domain.json", &space_to_json(map.domain()))?);
                if !Arc::ptr_eq(map.domain(), map.codomain()) {
                    files.push(write_file(dir, "codomain.json", &space_to_json(map.codomain()))?);
                }
                let map_text = serde_json::to_string_pretty(&map_json(map)).expect("serializable");
                files.push(write_file(dir, "map.json", &(map_text + "\n"))?);
            }
            json!({
                "space": { "points": map.domain().len(), "labels": map.domain().labels() },
                "map": map_json(map),
            })
        }
        GeneratorOutput::Union { space, maps } => {
            if let Some(dir) = out_dir {
                files.push(write_file(dir, "space.json", &space_to_json(space))?);
                let maps_value: Vec<Value> = maps.iter().map(map_json).collect();
                let text = serde_json::to_string_pretty(&maps_value).expect("serializable");
                files.push(write_file(dir, "maps.json", &(text + "\n"))?);
            }
            json!({
                "space": { "points": space.len(), "labels": space.labels() },
                "maps": maps.iter().map(map_json).collect::<Vec<_>>(),
            })
        }
        GeneratorOutput::Hilbert(report) => {
            let value = serde_json::to_value(report).expect("serializable");
            if let Some(dir) = out_dir {
                let text = serde_json::to_string_pretty(&value).expect("serializable");
                files.push(write_file(dir, "report.json", &(text + "\n"))?);
            }
            value
        }
    };
    Ok((
        json!({
            "verdict": "generated",
            "witnesses": witnesses,
            "files": files,
        }),
        ExitCode::SUCCESS,
    ))
}

fn cmd_verify_all(seed: u64, size: usize, max_size: usize) -> CmdResult {
    if size < 2 || size > 5 {
        return Err(CmdError::Refusal(format!(
            "verify-all runs exhaustive map searches; --size {size} outside 2..=5"
        )));
    }
    let _ = max_size;
    let mut suites = serde_json::Map::new();
    let mut all_ok = true;
    let record = |name: &str, ok: bool, detail: Value, suites: &mut serde_json::Map<String, Value>| {
        suites.insert(name.into(), json!({ "ok": ok, "detail": detail }));
        ok
    };

    // 1: sigma and two gauged variants are proper measurements
    let catalog = random_catalog(seed, 10, size, 8);
    let mut ok = true;
    for (name, psi) in [
        ("sigma", Measurement::Sigma),
        ("sigma_g_t2", Measurement::SigmaG(MonotoneGauge::power(2).expect("k >= 1"))),
        ("sigma_g_t3", Measurement::SigmaG(MonotoneGauge::power(3).expect("k >= 1"))),
    ] {
        let r = proper_measurement_check(&catalog, &psi)
            .map_err(|e| CmdError::Input(e.to_string()))?;
        if !r.violations.is_empty() {
            ok = false;
        }
        let _ = name;
    }
    all_ok &= record("proper_measurements", ok, json!({ "catalog": 10 }), &mut suites);

    // 2: s-comparison pairs (Y an induced subspace of X) are strongly plastic
    let mut rng = rng_from_seed(seed ^ 0x5eed);
    let mut checked = 0;
    let mut ok = true;
    for _ in 0..10 {
        let x = random_space(&mut rng, size, 8);
        let y = random_subspace(&mut rng, &x, size - 1);
        let r = verify_s_comparison_plasticity(&x, &y)
            .map_err(|e| CmdError::Input(e.to_string()))?;
        if r.applicable {
            checked += 1;
            if r.strongly_plastic != Some(true) {
                ok = false;
            }
        }
    }
    all_ok &= record("s_comparison", ok, json!({ "applicable_pairs": checked }), &mut suites);

    // 3: the net-based bound never exceeds an actual finite modulus
    let mut rng = rng_from_seed(seed ^ 0xb0b);
    let eps = parse_rational("1/2").expect("literal");
    let mut ok = true;
    for _ in 0..5 {
        let x = random_space(&mut rng, size, 6);
        let lower = nitka_bound(&x, &eps).map_err(|e| CmdError::Input(e.to_string()))?;
        let report = exact_modulus(&x, &x, &eps, MapClass::AllMaps)
            .map_err(|e| CmdError::Input(e.to_string()))?;
        if let plasticity::ModulusVerdict::Value(v) = &report.verdict {
            if *v < lower {
                ok = false;
            }
        }
    }
    all_ok &= record("net_lower_bound", ok, json!({ "spaces": 5 }), &mut suites);

    Ok((
        json!({
            "verdict": if all_ok { "pass" } else { "fail" },
            "witnesses": { "seed": seed, "size": size },
            "suites": Value::Object(suites),
        }),
        if all_ok { ExitCode::SUCCESS } else { ExitCode::FAILURE },
    ))
}

fn render_text(value: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {v}\n")),
                }
            }
        }
        Value::Array(items) => {
            for v in items {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {v}\n")),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{value}\n")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.cmd {
        Cmd::Validate { path } => cmd_validate(path),
        Cmd::Profile { path } => cmd_profile(path, cli.max_size),
        Cmd::Modulus { x, y, eps, class } => cmd_modulus(x, y, eps, *class),
        Cmd::Check { x, y, kind } => cmd_check(x, y, *kind),
        Cmd::Bounds { space, n, eps } => cmd_bounds(space.as_deref(), *n, eps, cli.max_size),
        Cmd::Generate { recipe, out_dir } => cmd_generate(recipe, out_dir.as_deref()),
        Cmd::VerifyAll { seed, size } => cmd_verify_all(*seed, *size, cli.max_size),
    };
    match result {
        Ok((report, code)) => {
            match cli.format {
                Format::Json => {
                    println!("{}", serde_json::to_string_pretty(&report).expect("serializable"))
                }
                Format::Text => {
                    let mut out = String::new();
                    render_text(&report, 0, &mut out);
                    print!("{out}");
                }
            }
            code
        }
        Err(CmdError::Refusal(msg)) => {
            eprintln!("refused: {msg}");
            ExitCode::from(2)
        }
        Err(CmdError::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
