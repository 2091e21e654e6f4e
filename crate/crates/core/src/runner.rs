//! Executes a manifest's commands and assembles the JSON report, with an
//! on-disk cache of per-command results.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::cohomology::{check_motivic_interpretation, flasque_resolution, is_flasque, real_decomposition, MotivicOptions};
use crate::dirichlet::artin_L_minus_one;
use crate::engine::{btc_predict, btc_symbolic, isogeny_invariance_check, weil_restriction_check, EngineOptions};
use crate::error::{Error, Result};
use crate::galois::{global_coinvariants_order, local_table, w_group_order, StabilizationOptions};
use crate::induction::ono_decomposition;
use crate::manifest::{Command, Context, Manifest};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

impl From<&Error> for ErrorInfo {
    fn from(e: &Error) -> Self {
        ErrorInfo {
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommandResult {
    pub command: String,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub generated_at: String,
    pub inputs: Manifest,
    pub results: Vec<CommandResult>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn all_ok(&self) -> bool {
        self.results.iter().all(|r| r.ok)
    }

    pub fn result(&self, command: Command) -> Option<&CommandResult> {
        self.results.iter().find(|r| r.command == command.name())
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Run statistics that are not part of the report itself.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunStats {
    pub cache_hits: usize,
    pub cache_writes: usize,
}

/// Content hash of everything that can influence `command`'s result.
pub fn cache_key(m: &Manifest, command: Command) -> String {
    let mut canon = m.clone();
    canon.fixture = None;
    canon.commands.clear();
    canon.options.cache_dir = None;
    let value = serde_json::to_value(&canon).expect("manifest serializes");
    let mut h = Sha256::new();
    h.update(TOOL_VERSION.as_bytes());
    h.update([0]);
    h.update(command.name().as_bytes());
    h.update([0]);
    h.update(value.to_string().as_bytes());
    hex::encode(h.finalize())
}

fn cache_path(dir: &Path, key: &str) -> PathBuf {
    dir.join(format!("{key}.json"))
}

fn cache_load(dir: &Path, key: &str) -> Option<Value> {
    let text = fs::read_to_string(cache_path(dir, key)).ok()?;
    serde_json::from_str(&text).ok()
}

/// Writes to a temporary file in `dir` and renames it into place.
fn cache_store(dir: &Path, key: &str, value: &Value) -> Result<()> {
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(value.to_string().as_bytes())?;
    tmp.flush()?;
    tmp.persist(cache_path(dir, key)).map_err(|e| Error::Io(e.error.to_string()))?;
    Ok(())
}

fn engine_options(m: &Manifest, ctx: &Context) -> EngineOptions {
    EngineOptions {
        subgroup_bound: Some(m.options.subgroup_bound()),
        stabilization: StabilizationOptions {
            cap: m.options.stab_cap(),
            debug: m.options.debug_oracles(),
        },
        motivic: MotivicOptions {
            certificate: ctx.certificate.clone(),
            reference: ctx.reference.clone(),
            subgroup_bound: Some(m.options.subgroup_bound()),
            ..MotivicOptions::default()
        },
        skip_motivic: m.options.skip_motivic.unwrap_or(false),
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("results serialize")
}

/// Runs a single command against built objects.
pub fn execute(command: Command, m: &Manifest, ctx: &Context) -> Result<Value> {
    let opts = engine_options(m, ctx);
    let x = &ctx.lattice;
    let bound = m.options.subgroup_bound();
    match command {
        Command::Predict => match &ctx.realization {
            None if !ctx.group.is_abelian() => Ok(to_value(&btc_symbolic(x, &opts)?)),
            _ => Ok(to_value(&btc_predict(x, ctx.realization()?, &opts)?)),
        },
        Command::LValue => match &ctx.realization {
            None if !ctx.group.is_abelian() => {
                let classes = ctx.group.subgroup_classes(bound)?;
                let ono = ono_decomposition(x, &classes)?;
                Ok(json!({
                    "symbolic": true,
                    "reason": Error::NonAbelianRealization.to_string(),
                    "ono": ono,
                }))
            }
            _ => {
                let classes = ctx.group.subgroup_classes(bound)?;
                Ok(to_value(&artin_L_minus_one(x, ctx.realization()?, &classes)?))
            }
        },
        Command::WGroup => {
            let r = ctx.realization()?;
            let w = w_group_order(x, r, opts.stabilization)?;
            let m_global = global_coinvariants_order(x, r, opts.stabilization)?;
            Ok(json!({ "w": w, "m_global": m_global }))
        }
        Command::Resolve => {
            let res = flasque_resolution(x, bound)?;
            res.check_exact(x)?;
            let q_flasque = is_flasque(&res.q, bound)?;
            Ok(json!({ "resolution": res, "q_flasque": q_flasque }))
        }
        Command::Motivic => Ok(to_value(&check_motivic_interpretation(x, &opts.motivic)?)),
        Command::RealDecompose => {
            let conj = match (ctx.conjugation, &ctx.realization) {
                (Some(c), _) => c,
                (None, Some(_)) => ctx.realization()?.conjugation(),
                (None, None) => ctx.group.identity(),
            };
            Ok(json!({ "conjugation": conj, "decomposition": real_decomposition(x, conj)? }))
        }
        Command::LocalTable => {
            let r = ctx.realization()?;
            Ok(json!({
                "prime_cap": m.options.prime_cap(),
                "counts": local_table(x, r, m.options.prime_cap())?,
            }))
        }
        Command::CheckIsogeny => {
            let x2 = ctx.lattice2.as_ref().ok_or_else(|| {
                Error::from(crate::error::ManifestError::field("lattice2", "check-isogeny needs a [lattice2] section"))
            })?;
            Ok(to_value(&isogeny_invariance_check(x, x2, ctx.realization()?, &opts)?))
        }
        Command::CheckShapiro => {
            let r = ctx.realization()?;
            let subgroups = match &ctx.subgroup {
                Some(h) => vec![h.clone()],
                None => ctx
                    .group
                    .subgroup_classes(bound)?
                    .into_iter()
                    .map(|c| c.representative)
                    .collect(),
            };
            let verdicts = subgroups
                .par_iter()
                .map(|h| weil_restriction_check(h, r, &opts))
                .collect::<Result<Vec<_>>>()?;
            let pass = verdicts.iter().all(|v| v.pass);
            Ok(json!({ "pass": pass, "checks": verdicts }))
        }
    }
}

fn now() -> String {
    chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true)
}

/// Runs every requested command. Build and command errors are recorded per
/// command; none of them aborts the run.
pub fn run_manifest(m: &Manifest) -> (Report, RunStats) {
    let commands = m.parsed_commands();
    let cache_dir = m.options.cache_dir.as_ref().map(PathBuf::from);
    let built = m.build();
    let outcomes: Vec<(CommandResult, bool, bool)> = commands
        .par_iter()
        .map(|&c| {
            let key = cache_key(m, c);
            if let Some(v) = cache_dir.as_deref().and_then(|d| cache_load(d, &key)) {
                return (ok_result(c, v), true, false);
            }
            let res = built.as_ref().map_err(Clone::clone).and_then(|ctx| execute(c, m, ctx));
            match res {
                Ok(v) => {
                    let wrote = cache_dir.as_deref().is_some_and(|d| cache_store(d, &key, &v).is_ok());
                    (ok_result(c, v), false, wrote)
                }
                Err(e) => (
                    CommandResult {
                        command: c.name().to_string(),
                        ok: false,
                        result: None,
                        error: Some(ErrorInfo::from(&e)),
                    },
                    false,
                    false,
                ),
            }
        })
        .collect();
    let mut stats = RunStats::default();
    let mut results = Vec::with_capacity(outcomes.len());
    let mut warnings = Vec::new();
    for (r, hit, wrote) in outcomes {
        stats.cache_hits += usize::from(hit);
        stats.cache_writes += usize::from(wrote);
        if let Some(ws) = r.result.as_ref().and_then(|v| v.get("warnings")).and_then(Value::as_array) {
            for w in ws.iter().filter_map(Value::as_str) {
                let line = format!("{}: {w}", r.command);
                if !warnings.contains(&line) {
                    warnings.push(line);
                }
            }
        }
        results.push(r);
    }
    if commands.is_empty() {
        warnings.push("manifest requests no commands".into());
    }
    let report = Report {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        generated_at: now(),
        inputs: m.clone(),
        results,
        warnings,
    };
    (report, stats)
}

fn ok_result(c: Command, v: Value) -> CommandResult {
    CommandResult {
        command: c.name().to_string(),
        ok: true,
        result: Some(v),
        error: None,
    }
}

/// Writes the report atomically.
pub fn write_report(report: &Report, path: &Path) -> Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(report.to_json_pretty().as_bytes())?;
    tmp.write_all(b"\n")?;
    tmp.persist(path).map_err(|e| Error::Io(e.error.to_string()))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str, commands: &[&str]) -> Manifest {
        let list = commands.iter().map(|c| format!("{c:?}")).collect::<Vec<_>>().join(", ");
        Manifest::parse(&format!("fixture = {name:?}\ncommands = [{list}]\n")).unwrap()
    }

    #[test]
    fn predict_gm() {
        let (r, _) = run_manifest(&fixture("gm_q", &["predict"]));
        assert!(r.all_ok());
        let v = r.result(Command::Predict).unwrap().result.as_ref().unwrap();
        assert_eq!(v["prediction"]["predicted_kt_order"], "2");
        assert_eq!(v["prediction"]["l_value"], "-1/12");
    }

    #[test]
    fn errors_stay_per_command() {
        let (r, _) = run_manifest(&fixture("s3_standard", &["predict", "wgroup", "lvalue"]));
        assert!(r.result(Command::Predict).unwrap().ok);
        assert!(r.result(Command::LValue).unwrap().ok);
        let w = r.result(Command::WGroup).unwrap();
        assert_eq!(w.error.as_ref().unwrap().kind, "NonAbelianRealization");
        assert!(!r.all_ok());
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let mut m = fixture("res_sqrt5", &["predict", "local-table"]);
        m.options.cache_dir = Some(dir.path().display().to_string());
        let (a, s1) = run_manifest(&m);
        assert_eq!(s1, RunStats { cache_hits: 0, cache_writes: 2 });
        let (b, s2) = run_manifest(&m);
        assert_eq!(s2.cache_hits, 2);
        assert_eq!(a.results, b.results);
        m.options.prime_cap = Some(20);
        assert_ne!(cache_key(&m, Command::LocalTable), {
            let mut m2 = m.clone();
            m2.options.prime_cap = None;
            cache_key(&m2, Command::LocalTable)
        });
    }
}
