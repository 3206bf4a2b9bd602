//! The golden corpus: CLI invocations with their expected exit codes.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde::Deserialize;
use serde_json::Value;

#[derive(Debug, Deserialize)]
pub struct Case {
    pub args: Vec<String>,
    pub exit: i32,
}

pub fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(golden_dir().join("cases.json")).expect("cases.json");
    serde_json::from_str(&text).expect("cases.json parses")
}

pub fn finlat(args: &[String]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_finlat"))
        .args(args)
        .current_dir(golden_dir())
        .env_clear()
        .output()
        .expect("finlat runs")
}

/// Runs a case; `Err` describes the first inconsistency between the exit
/// code, the expected code and the report.
pub fn check_case(case: &Case) -> Result<(), String> {
    let out = finlat(&case.args);
    let code = out.status.code().unwrap_or(-1);
    let label = case.args.join(" ");
    if code != case.exit {
        return Err(format!(
            "`{label}`: exit {code}, expected {}; stderr: {}",
            case.exit,
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    let stdout = String::from_utf8_lossy(&out.stdout);
    match code {
        2 => {
            let err: Value = serde_json::from_str(String::from_utf8_lossy(&out.stderr).trim())
                .map_err(|e| format!("`{label}`: stderr is not a JSON error: {e}"))?;
            if err.get("error").and_then(Value::as_str).is_none() {
                return Err(format!("`{label}`: error report lacks a kind"));
            }
            if err["error"] == "budget_exceeded" && err.get("dimension").is_none() {
                return Err(format!("`{label}`: budget error lacks the dimension"));
            }
        }
        _ if case
            .args
            .iter()
            .any(|a| a == "--pretty" || a == "export-dot" || a == "--survey")
            && !case.args.iter().any(|a| a == "json") => {}
        _ => {
            let report: Value =
                serde_json::from_str(&stdout).map_err(|e| format!("`{label}`: report is not JSON: {e}"))?;
            let all_match = report["expectations"]
                .as_array()
                .ok_or_else(|| format!("`{label}`: no expectations array"))?
                .iter()
                .all(|e| e["expected"] == e["actual"]);
            let verdicts = report["verdicts"].as_object().cloned().unwrap_or_default();
            for e in report["expectations"].as_array().unwrap() {
                let name = e["name"].as_str().unwrap_or_default();
                if verdicts.get(name) != Some(&e["actual"]) {
                    return Err(format!("`{label}`: expectation {name} disagrees with the verdicts"));
                }
            }
            let status = report["status"].as_str().unwrap_or_default();
            let consistent = match code {
                0 => all_match && status == "ok",
                1 => !all_match && status == "assertion_failed",
                _ => false,
            };
            if !consistent {
                return Err(format!(
                    "`{label}`: exit {code} but status {status}, expectations met: {all_match}"
                ));
            }
        }
    }
    Ok(())
}

/// Fresh DOT export compared with the checked-in file.
pub fn check_dot(name: &str) -> Result<(), String> {
    let out = finlat(&["export-dot".to_string(), format!("{name}.json")]);
    let want = std::fs::read_to_string(golden_dir().join(format!("{name}.dot"))).map_err(|e| e.to_string())?;
    let got = String::from_utf8_lossy(&out.stdout);
    if got != want {
        return Err(format!("{name}.dot differs from the export"));
    }
    Ok(())
}
