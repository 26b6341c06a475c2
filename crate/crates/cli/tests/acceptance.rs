//! One line per acceptance criterion: verdict, case count and wall time
//! against its budget. Run with `--nocapture` to see the lines.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use tensemv::suite::{run_suite, SuiteOutcome};

fn report(id: u32, title: &str, budget_secs: u64, run: impl FnOnce() -> SuiteOutcome) -> bool {
    let start = Instant::now();
    let outcome = run();
    let elapsed = start.elapsed();
    let in_budget = elapsed <= Duration::from_secs(budget_secs);
    let ok = outcome.passed() && in_budget;
    println!(
        "{} criterion {id:>2} {title}: {} cases, {} failures, {:.2}s (budget {budget_secs}s){}",
        if ok { "PASS" } else { "FAIL" },
        outcome.cases,
        outcome.failures.len(),
        elapsed.as_secs_f64(),
        if outcome.notes.is_empty() { String::new() } else { format!(" [{}]", outcome.notes.join("; ")) },
    );
    for f in outcome.failures.iter().take(5) {
        println!("    {f}");
    }
    ok
}

fn suite(name: &str) -> SuiteOutcome {
    run_suite(name).unwrap_or_else(|e| panic!("suite {name} did not run: {e}"))
}

#[test]
fn acceptance() {
    let criteria: [(u32, &str, &str, u64); 10] = [
        (1, "threshold terms", "threshold", 10),
        (2, "sandwich bounds", "sandwich", 10),
        (3, "tense axioms of induced operators", "tense-axioms", 60),
        (4, "representation roundtrip", "roundtrip", 60),
        (5, "fm implies strong fm, diagrams commute", "duals", 30),
        (6, "semi-state enumeration", "semistates", 120),
        (7, "semi-states on chains", "consts", 30),
        (8, "frame correspondences", "correspondence", 60),
        (9, "adjunction", "adjunction", 30),
        (10, "filter machinery", "filters", 10),
    ];
    let mut all = true;
    for (id, title, name, budget) in criteria {
        all &= report(id, title, budget, || suite(name));
    }
    all &= report(11, "cli golden files", 5, golden);
    assert!(all, "some acceptance criteria failed");
}

/// Runs every golden case through the built binary.
fn golden() -> SuiteOutcome {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut cases = 0;
    let mut failures = Vec::new();
    let mut entries: Vec<_> = std::fs::read_dir(&dir)
        .map(|rd| rd.filter_map(|e| e.ok()).map(|e| e.path()).filter(|p| p.is_dir()).collect())
        .unwrap_or_default();
    entries.sort();
    for case in entries {
        cases += 1;
        if let Err(e) = run_golden(&case) {
            failures.push(format!("{}: {e}", case.file_name().unwrap().to_string_lossy()));
        }
    }
    if cases != 12 {
        failures.push(format!("expected 12 golden cases, found {cases}"));
    }
    let mut out = SuiteOutcome { name: "golden", cases, failures, notes: Vec::new() };
    out.notes.push("text and JSON outputs, exit codes".into());
    out
}

fn run_golden(case: &Path) -> Result<(), String> {
    let read = |name: &str| std::fs::read_to_string(case.join(name)).map_err(|e| format!("{name}: {e}"));
    let args: Vec<String> = read("args")?.lines().filter(|l| !l.is_empty()).map(str::to_string).collect();
    let expected_code: i32 = read("exit_code")?.trim().parse().map_err(|e| format!("exit_code: {e}"))?;
    for (extra, file) in [(None, "expected.txt"), (Some("--json"), "expected.json")] {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_tensemv"));
        cmd.current_dir(case).args(&args);
        if let Some(flag) = extra {
            cmd.arg(flag);
        }
        let out = cmd.output().map_err(|e| e.to_string())?;
        let code = out.status.code().unwrap_or(-1);
        if code != expected_code {
            return Err(format!("{file}: exit code {code}, expected {expected_code}"));
        }
        let mut got = String::from_utf8_lossy(&out.stdout).into_owned();
        got.push_str(&String::from_utf8_lossy(&out.stderr));
        let want = read(file)?;
        if got != want {
            return Err(format!("{file} differs:\n--- expected\n{want}--- got\n{got}"));
        }
    }
    Ok(())
}
