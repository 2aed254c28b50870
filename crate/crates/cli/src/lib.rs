//! Batch front-end: parses scene files and subcommands, runs the exact
//! computations from `logsurf-core`, and emits deterministic JSON reports.
//!
//! Every report printed on standard output contains the echoed command, a
//! digest of the inputs, the outputs with rationals rendered as `p/q`
//! strings, any certificates, and the pass/fail list of invariant checks.
//! The report body carries no timestamps, so identical inputs produce
//! byte-identical reports; wall time goes to standard error.
//!
//! Exit codes: 0 on success, 1 on mathematical signals (not big, not log
//! canonical, no configuration-supported Zariski decomposition, failed
//! verification), 2 on malformed scenes or flags.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use logsurf_core::chains::{
    different_report, verify_standard_different, BoundaryHit, Chain, ChainBoundary,
};
use logsurf_core::coeffsets::CoeffSet;
use logsurf_core::constructions::{
    bounds_table, cartier_multiples_c2, enumerate_standard_sums, example_even, example_odd,
    iterated_sequence, nklt_blowup_sequence, ConstructionError, NkltChain,
};
use logsurf_core::rational::Rat;
use logsurf_core::scene::Scene;
use logsurf_core::surfaces::{
    zariski, Class, Divisor, LcVerdict, LogPair, SurfaceConfig, SurfaceError,
};
use logsurf_core::verify;

/// Exact computations on log surface pairs, exactly.
#[derive(Parser, Debug)]
#[command(name = "logsurf", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Volume of K + B for the pair described by a scene file.
    Volume { scene: PathBuf },
    /// Zariski decomposition of a divisor class on the scene's configuration.
    Zariski {
        scene: PathBuf,
        /// Divisor as comma-separated name:coeff terms, e.g. "L1:1,E1:1/2".
        /// Defaults to K + B of the scene.
        #[arg(long)]
        divisor: Option<String>,
        /// Add the canonical class to the given divisor.
        #[arg(long)]
        with_canonical: bool,
    },
    /// Log-canonicity verdict for the scene's pair.
    LcCheck { scene: PathBuf },
    /// Different coefficient and codiscrepancies of a chain with boundary.
    Different {
        /// Chain self-intersection magnitudes, e.g. "2,3,6"; omit for the
        /// smooth-point case.
        #[arg(long)]
        chain: Option<String>,
        /// Boundary hits as comma-separated index:multiplicity:coefficient
        /// triples, e.g. "1:1:1/2,3:2:2/3" (index 0 for a smooth point).
        #[arg(long)]
        hits: Option<String>,
    },
    /// The maximum t_m of a coefficient set.
    Tm {
        /// Preset name: C0, C1 or C2.
        #[arg(long, default_value = "C2")]
        set: String,
        /// Inline JSON coefficient set, overriding --set.
        #[arg(long)]
        set_json: Option<String>,
        #[arg(long)]
        m: u32,
    },
    /// Multisets of standard denominators with coefficient sum 1 or 2.
    Sums {
        #[arg(long)]
        target: Option<u32>,
        #[arg(long, default_value_t = 8)]
        max_len: u32,
        /// Report the induced Cartier multiples instead.
        #[arg(long)]
        cartier: bool,
    },
    /// The table of bound constants.
    Bounds,
    /// Construction generators.
    Construct {
        #[command(subcommand)]
        what: ConstructCmd,
    },
    /// Run the full verification suite; nonzero exit on any failure.
    Verify,
}

#[derive(Subcommand, Debug)]
pub enum ConstructCmd {
    /// 3 + n coefficient-1 rulings on the quadric; volume 2(n-2).
    Even {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        emit_scene: Option<PathBuf>,
        /// Write a CSV volume table sweeping up to n.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Three sections and n fibers on F_1; volume 2n-3.
    Odd {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        emit_scene: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// s-step blow-up chain at a node of the scene's pair.
    Nklt {
        scene: PathBuf,
        #[arg(long)]
        b1: String,
        #[arg(long)]
        b2: String,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        emit_scene: Option<PathBuf>,
        /// Write a CSV volume table sweeping s.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// n general lines on the plane with an s_j-chain at each node on the
    /// last line.
    Iterated {
        #[arg(long)]
        n: u32,
        /// Comma-separated list of n-1 step counts, e.g. "2,3,4,5".
        #[arg(long)]
        s: String,
        #[arg(long)]
        emit_scene: Option<PathBuf>,
    },
}

/// Outcome of one invocation.
pub struct RunOutcome {
    pub code: i32,
    /// The deterministic report, pretty-printed JSON.
    pub stdout: String,
    /// Human diagnostics (criterion lines, wall time is added by main).
    pub stderr: String,
}

enum CliError {
    /// Malformed scene or flags: exit 2.
    Usage(String),
}

struct CommandOutput {
    outputs: Value,
    certificates: Value,
    checks: Vec<(String, bool)>,
    exit: i32,
    stderr: String,
    digest_parts: Vec<Vec<u8>>,
}

impl CommandOutput {
    fn new(outputs: Value) -> Self {
        CommandOutput {
            outputs,
            certificates: Value::Null,
            checks: Vec::new(),
            exit: 0,
            stderr: String::new(),
            digest_parts: Vec::new(),
        }
    }
}

pub fn run(cli: Cli, argv_echo: Vec<String>) -> RunOutcome {
    let result = dispatch(&cli.command);
    match result {
        Ok(out) => {
            let mut hasher = Sha256::new();
            for a in &argv_echo {
                hasher.update(a.as_bytes());
                hasher.update([0]);
            }
            for p in &out.digest_parts {
                hasher.update(p);
                hasher.update([0]);
            }
            let digest = hex::encode(hasher.finalize());
            let checks: Vec<Value> = out
                .checks
                .iter()
                .map(|(name, pass)| json!({"name": name, "pass": pass}))
                .collect();
            let report = json!({
                "command": argv_echo,
                "inputs_digest": digest,
                "outputs": out.outputs,
                "certificates": out.certificates,
                "checks": checks,
            });
            let code = if out.exit == 0 && out.checks.iter().any(|(_, p)| !p) {
                1
            } else {
                out.exit
            };
            RunOutcome {
                code,
                stdout: serde_json::to_string_pretty(&report).expect("report is valid json"),
                stderr: out.stderr,
            }
        }
        Err(CliError::Usage(msg)) => RunOutcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}"),
        },
    }
}

fn dispatch(command: &Command) -> Result<CommandOutput, CliError> {
    match command {
        Command::Volume { scene } => cmd_volume(scene),
        Command::Zariski {
            scene,
            divisor,
            with_canonical,
        } => cmd_zariski(scene, divisor.as_deref(), *with_canonical),
        Command::LcCheck { scene } => cmd_lc_check(scene),
        Command::Different { chain, hits } => cmd_different(chain.as_deref(), hits.as_deref()),
        Command::Tm { set, set_json, m } => cmd_tm(set, set_json.as_deref(), *m),
        Command::Sums {
            target,
            max_len,
            cartier,
        } => cmd_sums(*target, *max_len, *cartier),
        Command::Bounds => cmd_bounds(),
        Command::Construct { what } => cmd_construct(what),
        Command::Verify => cmd_verify(),
    }
}

// ---- helpers ----------------------------------------------------------

fn rat_str(r: &Rat) -> Value {
    Value::String(r.to_string())
}

fn divisor_json(d: &Divisor) -> Value {
    let map: BTreeMap<String, String> = d
        .iter()
        .map(|(n, c)| (n.to_string(), c.to_string()))
        .collect();
    json!(map)
}

fn class_json(config: &SurfaceConfig, class: &Class) -> Value {
    let mut map = BTreeMap::new();
    for (i, name) in config.class_names().iter().enumerate() {
        let c = class.coeff(i);
        if !c.is_zero() {
            map.insert(name.clone(), c.to_string());
        }
    }
    json!(map)
}

fn read_scene(path: &Path) -> Result<(Scene, Vec<u8>), CliError> {
    let bytes = std::fs::read(path)
        .map_err(|e| CliError::Usage(format!("scene file {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| CliError::Usage(format!("scene file {}: not utf-8", path.display())))?;
    let scene =
        Scene::from_json(&text).map_err(|e| CliError::Usage(format!("field scene: {e}")))?;
    Ok((scene, bytes))
}

fn build_pair(scene: &Scene) -> Result<LogPair, CliError> {
    scene
        .build_pair()
        .map_err(|e| CliError::Usage(format!("field scene: {e}")))
}

fn parse_rat(field: &str, text: &str) -> Result<Rat, CliError> {
    text.parse()
        .map_err(|e| CliError::Usage(format!("field {field}: {e}")))
}

fn parse_divisor_arg(text: &str) -> Result<Vec<(String, Rat)>, CliError> {
    let mut out = Vec::new();
    for term in text.split(',').filter(|t| !t.trim().is_empty()) {
        let (name, coeff) = term.split_once(':').ok_or_else(|| {
            CliError::Usage(format!("field divisor: term {term:?} is not name:coeff"))
        })?;
        out.push((name.trim().to_string(), parse_rat("divisor", coeff)?));
    }
    Ok(out)
}

fn parse_chain(text: Option<&str>) -> Result<Chain, CliError> {
    let entries: Vec<i64> = match text {
        None => Vec::new(),
        Some(t) if t.trim().is_empty() => Vec::new(),
        Some(t) => t
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<i64>()
                    .map_err(|e| CliError::Usage(format!("field chain: {e}")))
            })
            .collect::<Result<_, _>>()?,
    };
    Chain::new(entries).map_err(|e| CliError::Usage(format!("field chain: {e}")))
}

fn parse_hits(text: Option<&str>) -> Result<ChainBoundary, CliError> {
    let mut hits = Vec::new();
    if let Some(t) = text {
        for part in t.split(',').filter(|p| !p.trim().is_empty()) {
            let fields: Vec<&str> = part.split(':').collect();
            if fields.len() != 3 {
                return Err(CliError::Usage(format!(
                    "field hits: {part:?} is not index:multiplicity:coefficient"
                )));
            }
            let curve = fields[0]
                .trim()
                .parse::<usize>()
                .map_err(|e| CliError::Usage(format!("field hits: index: {e}")))?;
            let multiplicity = fields[1]
                .trim()
                .parse::<u32>()
                .map_err(|e| CliError::Usage(format!("field hits: multiplicity: {e}")))?;
            let coefficient = parse_rat("hits", fields[2])?;
            hits.push(BoundaryHit {
                curve,
                multiplicity,
                coefficient,
            });
        }
    }
    Ok(ChainBoundary::new(hits))
}

fn decimal(r: &Rat) -> String {
    r.to_decimal_string(12)
}

fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn volume_csv(rows: &[(u32, Rat)]) -> String {
    let mut out = String::from("s,volume,volume_decimal\n");
    for (s, v) in rows {
        let _ = writeln!(out, "{s},{v},{}", decimal(v));
    }
    out
}

fn emit_scene_file(
    path: &Path,
    pair: &LogPair,
    report: &mut CommandOutput,
) -> Result<(), CliError> {
    let scene = Scene::emit(pair.config(), pair.boundary())
        .map_err(|e| CliError::Usage(format!("cannot emit scene: {e}")))?;
    write_text(path, &scene.to_json())?;
    report.outputs["scene_written"] = json!(path.display().to_string());
    Ok(())
}

// ---- commands ---------------------------------------------------------

fn cmd_volume(scene_path: &Path) -> Result<CommandOutput, CliError> {
    let (scene, bytes) = read_scene(scene_path)?;
    let pair = build_pair(&scene)?;
    let mut out = match pair.volume() {
        Ok(v) => {
            let mut o = CommandOutput::new(json!({
                "volume": rat_str(&v.value),
                "volume_decimal": decimal(&v.value),
            }));
            o.certificates = json!({
                "config_nef": v.certificate.config_nef,
                "contracted": v.certificate.contracted,
                "scope": v.certificate.scope,
            });
            o.checks.push(("config_nef".into(), v.certificate.config_nef));
            o.checks.push(("volume_positive".into(), v.value.is_positive()));
            o
        }
        Err(SurfaceError::NotBig { value }) => {
            let mut o = CommandOutput::new(json!({
                "signal": "not_big",
                "positive_part_square": rat_str(&value),
            }));
            o.exit = 1;
            o
        }
        Err(SurfaceError::NotLogCanonical { witness }) => {
            let mut o = CommandOutput::new(json!({
                "signal": "not_lc",
                "witness": witness,
            }));
            o.exit = 1;
            o
        }
        Err(SurfaceError::NoConfigZariski { curve }) => {
            let mut o = CommandOutput::new(json!({
                "signal": "no_configuration_zariski",
                "curve": curve,
            }));
            o.exit = 1;
            o
        }
        Err(e) => return Err(CliError::Usage(format!("field scene: {e}"))),
    };
    out.digest_parts.push(bytes);
    Ok(out)
}

fn cmd_zariski(
    scene_path: &Path,
    divisor: Option<&str>,
    with_canonical: bool,
) -> Result<CommandOutput, CliError> {
    let (scene, bytes) = read_scene(scene_path)?;
    let (config, boundary) = scene
        .build()
        .map_err(|e| CliError::Usage(format!("field scene: {e}")))?;
    let d_class = match divisor {
        None => {
            let b = config
                .class_of(&boundary)
                .map_err(|e| CliError::Usage(format!("field boundary: {e}")))?;
            config.canonical_class().add(&b)
        }
        Some(text) => {
            let mut d = Divisor::new();
            for (name, coeff) in parse_divisor_arg(text)? {
                d.set(name, coeff);
            }
            let mut cls = config
                .class_of(&d)
                .map_err(|e| CliError::Usage(format!("field divisor: {e}")))?;
            if with_canonical {
                cls = cls.add(&config.canonical_class());
            }
            cls
        }
    };
    let mut out = match zariski(&config, &d_class) {
        Ok(z) => {
            let p_sq = z.positive_square(&config);
            let d_sq = config.pair_classes(&d_class, &d_class);
            let mut o = CommandOutput::new(json!({
                "divisor": class_json(&config, &d_class),
                "positive": class_json(&config, &z.positive),
                "negative": divisor_json(&z.negative),
                "positive_square": rat_str(&p_sq),
                "divisor_square": rat_str(&d_sq),
            }));
            o.certificates = json!({
                "config_nef": z.config_nef,
                "support_negative_definite": z.support_negative_definite,
            });
            let reassembled = z
                .positive
                .add(&config.class_of(&z.negative).expect("support is tracked"));
            let residual = d_class.sub(&reassembled);
            o.checks.push((
                "decomposition_reassembles".into(),
                residual_zero(&residual),
            ));
            o.checks
                .push(("negative_part_effective".into(), z.negative.is_effective()));
            o.checks.push(("positive_square_at_least_divisor_square".into(), p_sq >= d_sq));
            o
        }
        Err(SurfaceError::NoConfigZariski { curve }) => {
            let mut o = CommandOutput::new(json!({
                "signal": "no_configuration_zariski",
                "curve": curve,
            }));
            o.exit = 1;
            o
        }
        Err(e) => return Err(CliError::Usage(format!("field divisor: {e}"))),
    };
    out.digest_parts.push(bytes);
    Ok(out)
}

fn residual_zero(c: &Class) -> bool {
    c.0.iter().all(|x| x.is_zero())
}

fn cmd_lc_check(scene_path: &Path) -> Result<CommandOutput, CliError> {
    let (scene, bytes) = read_scene(scene_path)?;
    let pair = build_pair(&scene)?;
    let report = pair.lc_check();
    let verdict = match report.verdict {
        LcVerdict::Klt => "klt",
        LcVerdict::Lc => "lc",
        LcVerdict::NotLc => "not_lc",
    };
    let nodes: Vec<Value> = report
        .nodes
        .iter()
        .map(|n| {
            json!({
                "curves": [n.curves.0, n.curves.1],
                "codiscrepancy": rat_str(&n.value),
            })
        })
        .collect();
    let accessible = if report.verdict != LcVerdict::NotLc {
        let ws = pair
            .accessible_nklt()
            .map_err(|e| CliError::Usage(format!("field scene: {e}")))?;
        ws.iter()
            .map(|w| json!({"center": w.center, "meets": w.meets}))
            .collect()
    } else {
        Vec::new()
    };
    let mut out = CommandOutput::new(json!({
        "verdict": verdict,
        "witness": report.witness,
        "node_codiscrepancies": nodes,
        "accessible_nklt": accessible,
    }));
    out.checks.push((
        "node_codiscrepancies_at_most_one".into(),
        report.nodes.iter().all(|n| n.value.cmp_int(1).is_le()),
    ));
    if report.verdict == LcVerdict::NotLc {
        out.exit = 1;
    }
    out.digest_parts.push(bytes);
    Ok(out)
}

fn cmd_different(
    chain_text: Option<&str>,
    hits_text: Option<&str>,
) -> Result<CommandOutput, CliError> {
    let chain = parse_chain(chain_text)?;
    let boundary = parse_hits(hits_text)?;
    let report = different_report(&chain, &boundary)
        .map_err(|e| CliError::Usage(format!("field hits: {e}")))?;
    let standard = verify_standard_different(&chain, &boundary).ok().map(|sd| {
        json!({
            "n": sd.n.to_string(),
            "m": sd.m.to_string(),
            "n_prime": sd.n_prime.to_string(),
        })
    });
    let mut out = CommandOutput::new(json!({
        "m": report.index.to_string(),
        "n_j": report.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        "b_prime": rat_str(&report.coefficient),
        "log_canonical": report.log_canonical,
        "discrepancies": report
            .codiscrepancies
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>(),
        "standard_decomposition": standard,
    }));
    if !report.log_canonical {
        out.exit = 1;
    }
    Ok(out)
}

fn load_set(set: &str, set_json: Option<&str>) -> Result<CoeffSet, CliError> {
    match set_json {
        Some(js) => {
            serde_json::from_str(js).map_err(|e| CliError::Usage(format!("field set-json: {e}")))
        }
        None => CoeffSet::preset(set).map_err(|e| CliError::Usage(format!("field set: {e}"))),
    }
}

fn cmd_tm(set: &str, set_json: Option<&str>, m: u32) -> Result<CommandOutput, CliError> {
    if m < 1 {
        return Err(CliError::Usage("field m: must be at least 1".into()));
    }
    let coeffs = load_set(set, set_json)?;
    let t = coeffs.t_m(m);
    let mut out = CommandOutput::new(json!({
        "m": m,
        "t_m": rat_str(&t),
        "t_m_decimal": decimal(&t),
    }));
    out.checks
        .push(("t_m_at_least_one".into(), t.cmp_int(1).is_ge()));
    Ok(out)
}

fn cmd_sums(target: Option<u32>, max_len: u32, cartier: bool) -> Result<CommandOutput, CliError> {
    if cartier {
        let cm = cartier_multiples_c2();
        let per: Vec<Value> = cm
            .per_tuple
            .iter()
            .map(|(t, l)| json!({"tuple": t, "lcm": l}))
            .collect();
        let mut out = CommandOutput::new(json!({
            "per_tuple": per,
            "multiples": cm.multiples,
            "lcm": cm.lcm,
        }));
        out.checks.push(("lcm_is_twelve".into(), cm.lcm == 12));
        return Ok(out);
    }
    let target = target.ok_or_else(|| {
        CliError::Usage("field target: required unless --cartier is given".into())
    })?;
    let sums = enumerate_standard_sums(target, max_len)
        .map_err(|e| CliError::Usage(format!("field target: {e}")))?;
    Ok(CommandOutput::new(json!({
        "target": target,
        "max_len": max_len,
        "solutions": sums,
    })))
}

fn cmd_bounds() -> Result<CommandOutput, CliError> {
    let table = bounds_table();
    let entries: Vec<Value> = table
        .entries()
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "value": e.value.to_string(),
                "decimal": decimal(&e.value),
                "source": e.source,
            })
        })
        .collect();
    let mut out = CommandOutput::new(json!({ "bounds": entries }));
    out.checks.push((
        "lower_bound_recomputed".into(),
        table.lower_bound_c2
            == logsurf_core::constructions::lower_bound(&table.v1_c2, 6, &Rat::one()),
    ));
    Ok(out)
}

fn map_construction_error(e: ConstructionError) -> Result<CommandOutput, CliError> {
    match e {
        ConstructionError::Surface(SurfaceError::NotBig { value }) => {
            let mut o = CommandOutput::new(json!({
                "signal": "not_big",
                "self_intersection": rat_str(&value),
            }));
            o.exit = 1;
            Ok(o)
        }
        ConstructionError::Surface(SurfaceError::NotLogCanonical { witness }) => {
            let mut o = CommandOutput::new(json!({
                "signal": "not_lc",
                "witness": witness,
            }));
            o.exit = 1;
            Ok(o)
        }
        ConstructionError::Surface(SurfaceError::NoConfigZariski { curve }) => {
            let mut o = CommandOutput::new(json!({
                "signal": "no_configuration_zariski",
                "curve": curve,
            }));
            o.exit = 1;
            Ok(o)
        }
        other => Err(CliError::Usage(other.to_string())),
    }
}

fn pairings_json(pairings: &[(String, Rat)]) -> Vec<Value> {
    pairings
        .iter()
        .map(|(n, v)| json!({"curve": n, "pairing": v.to_string()}))
        .collect()
}

fn cmd_construct(what: &ConstructCmd) -> Result<CommandOutput, CliError> {
    match what {
        ConstructCmd::Even { n, emit_scene, csv } => {
            let (pair, volume) = match example_even(*n) {
                Ok(x) => x,
                Err(e) => return map_construction_error(e),
            };
            let mut out = CommandOutput::new(json!({
                "n": n,
                "volume": rat_str(&volume),
                "volume_decimal": decimal(&volume),
            }));
            if let Some(path) = csv {
                let rows: Result<Vec<(u32, Rat)>, _> =
                    (3..=*n).map(|k| example_even(k).map(|(_, v)| (k, v))).collect();
                let rows = rows.map_err(|e| CliError::Usage(e.to_string()))?;
                write_text(path, &volume_csv(&rows))?;
                out.outputs["csv_written"] = json!(path.display().to_string());
            }
            if let Some(path) = emit_scene {
                emit_scene_file(path, &pair, &mut out)?;
            }
            Ok(out)
        }
        ConstructCmd::Odd { n, emit_scene, csv } => {
            let (pair, volume) = match example_odd(*n) {
                Ok(x) => x,
                Err(e) => return map_construction_error(e),
            };
            let mut out = CommandOutput::new(json!({
                "n": n,
                "volume": rat_str(&volume),
                "volume_decimal": decimal(&volume),
            }));
            if let Some(path) = csv {
                let rows: Result<Vec<(u32, Rat)>, _> =
                    (2..=*n).map(|k| example_odd(k).map(|(_, v)| (k, v))).collect();
                let rows = rows.map_err(|e| CliError::Usage(e.to_string()))?;
                write_text(path, &volume_csv(&rows))?;
                out.outputs["csv_written"] = json!(path.display().to_string());
            }
            if let Some(path) = emit_scene {
                emit_scene_file(path, &pair, &mut out)?;
            }
            Ok(out)
        }
        ConstructCmd::Nklt {
            scene,
            b1,
            b2,
            s,
            emit_scene,
            csv,
        } => {
            let (scene, bytes) = read_scene(scene)?;
            let pair = build_pair(&scene)?;
            let base_volume = pair
                .volume()
                .map_err(|e| CliError::Usage(format!("field scene: {e}")))?
                .value;
            let chain: NkltChain = match nklt_blowup_sequence(&pair, b1, b2, *s) {
                Ok(c) => c,
                Err(e) => return map_construction_error(e),
            };
            let gap = &base_volume - &chain.self_intersection;
            let expected_gap = chain.b2.square() / Rat::from_int(*s as i64);
            let mut out = CommandOutput::new(json!({
                "s": s,
                "base_volume": rat_str(&base_volume),
                "self_intersection": rat_str(&chain.self_intersection),
                "self_intersection_decimal": decimal(&chain.self_intersection),
                "gap": rat_str(&gap),
                "exceptional_pairings": pairings_json(&chain.exceptional_pairings),
            }));
            out.checks
                .push(("gap_is_b2_squared_over_s".into(), gap == expected_gap));
            let interior_zero = chain.exceptional_pairings[..chain.exceptional_pairings.len() - 1]
                .iter()
                .all(|(_, v)| v.is_zero());
            out.checks
                .push(("interior_chain_pairings_zero".into(), interior_zero));
            if let Some(path) = csv {
                let mut rows = Vec::new();
                for k in 1..=*s {
                    let c = nklt_blowup_sequence(&pair, b1, b2, k)
                        .map_err(|e| CliError::Usage(e.to_string()))?;
                    rows.push((k, c.self_intersection));
                }
                write_text(path, &volume_csv(&rows))?;
                out.outputs["csv_written"] = json!(path.display().to_string());
            }
            if let Some(path) = emit_scene {
                emit_scene_file(path, &chain.pair, &mut out)?;
            }
            out.digest_parts.push(bytes);
            Ok(out)
        }
        ConstructCmd::Iterated { n, s, emit_scene } => {
            let steps: Vec<u32> = s
                .split(',')
                .filter(|t| !t.trim().is_empty())
                .map(|t| {
                    t.trim()
                        .parse::<u32>()
                        .map_err(|e| CliError::Usage(format!("field s: {e}")))
                })
                .collect::<Result<_, _>>()?;
            let result = match iterated_sequence(*n, &steps) {
                Ok(r) => r,
                Err(e) => return map_construction_error(e),
            };
            let mut out = CommandOutput::new(json!({
                "n": n,
                "s": steps,
                "self_intersection": rat_str(&result.self_intersection),
                "self_intersection_decimal": decimal(&result.self_intersection),
                "line_pairings": pairings_json(&result.line_pairings),
                "exceptional_pairings": pairings_json(&result.exceptional_pairings),
            }));
            out.checks.push((
                "exceptional_pairings_nonnegative".into(),
                result
                    .exceptional_pairings
                    .iter()
                    .all(|(_, v)| !v.is_negative()),
            ));
            if let Some(path) = emit_scene {
                emit_scene_file(path, &result.pair, &mut out)?;
            }
            Ok(out)
        }
    }
}

fn cmd_verify() -> Result<CommandOutput, CliError> {
    let results = verify::run_all();
    let mut stderr = String::new();
    let mut all = true;
    let mut criteria = Vec::new();
    for r in &results {
        let _ = writeln!(stderr, "{}", r.line());
        all &= r.passed;
        criteria.push(json!({
            "index": r.index,
            "name": r.name,
            "passed": r.passed,
            "details": r.details,
        }));
    }
    let mut out = CommandOutput::new(json!({ "criteria": criteria }));
    for r in &results {
        out.checks.push((format!("criterion_{}", r.index), r.passed));
    }
    out.exit = if all { 0 } else { 1 };
    out.stderr = stderr;
    Ok(out)
}
