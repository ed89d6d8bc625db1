//! CLI fixture commands and their golden reports.
//!
//! Each case runs the built binary inside a scratch copy of the fixture
//! directory, so reports only ever mention relative paths. Set
//! `INTRANSKIT_BLESS=1` to rewrite the goldens from the current binary.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

pub struct Case {
    pub name: &'static str,
    pub args: &'static [&'static str],
}

pub const CASES: &[Case] = &[
    Case {
        name: "analyze_justice",
        args: &["analyze", "justice.csv"],
    },
    Case {
        name: "analyze_justice_popular",
        args: &["analyze", "justice_popular.csv"],
    },
    Case {
        name: "analyze_manager",
        args: &["analyze", "manager.csv"],
    },
    Case {
        name: "analyze_subscription_pair",
        args: &[
            "analyze",
            "subscription.csv",
            "--reference-group",
            "subscription_pair.json",
        ],
    },
    Case {
        name: "closure_rps",
        args: &["closure", "rps.csv"],
    },
    Case {
        name: "closure_manager",
        args: &["closure", "manager.csv"],
    },
    Case {
        name: "decompose_subscription",
        args: &["decompose", "subscription.csv"],
    },
    Case {
        name: "nash_rps",
        args: &["nash", "rps_game.json"],
    },
    Case {
        name: "nash_dice",
        args: &["nash", "dice_game.json"],
    },
    Case {
        name: "coarsen_subscription",
        args: &["coarsen", "subscription_adjusted_criteria.json"],
    },
    Case {
        name: "coarsen_ng_witness",
        args: &["coarsen", "ng_strict_criteria.json", "--witness"],
    },
    Case {
        name: "coarsen_ng_gauss",
        args: &[
            "coarsen",
            "ng_strict_criteria.json",
            "--method",
            "gauss",
            "--k",
            "1",
        ],
    },
    Case {
        name: "quantum_dice",
        args: &["quantum", "dice_a.json", "dice_b.json", "dice_c.json"],
    },
    Case {
        name: "simulate_transitive",
        args: &["simulate", "sim_transitive.toml", "--out-dir", "out"],
    },
    Case {
        name: "simulate_intransitive",
        args: &["simulate", "sim_intransitive.json", "--out-dir", "out"],
    },
];

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn golden_path(name: &str) -> PathBuf {
    fixtures().join("golden").join(format!("{name}.json"))
}

/// Copies every fixture file into `dir`.
pub fn stage(dir: &Path) {
    for entry in fs::read_dir(fixtures()).unwrap() {
        let path = entry.unwrap().path();
        if path.is_file() {
            fs::copy(&path, dir.join(path.file_name().unwrap())).unwrap();
        }
    }
}

/// Runs one case in `dir`; returns the exit code and the report bytes.
pub fn run(dir: &Path, case: &Case) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_intranskit"))
        .current_dir(dir)
        .args(["--reproducible", "--seed", "0"])
        .args(case.args)
        .env_remove("INTRANSKIT_SEED")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

pub fn bless() -> bool {
    std::env::var_os("INTRANSKIT_BLESS").is_some_and(|v| v == "1")
}

/// Runs every case and compares with (or, when `bless`, rewrites) its
/// golden. Returns one message per mismatch.
pub fn check_all(bless: bool) -> Vec<String> {
    let dir = tempfile::tempdir().unwrap();
    stage(dir.path());
    let mut failures = Vec::new();
    for case in CASES {
        let (code, report) = run(dir.path(), case);
        if code != 0 {
            failures.push(format!("{}: exit code {code}", case.name));
            continue;
        }
        let golden = golden_path(case.name);
        if bless {
            fs::create_dir_all(golden.parent().unwrap()).unwrap();
            fs::write(&golden, &report).unwrap();
            continue;
        }
        match fs::read(&golden) {
            Ok(expected) if expected == report => {}
            Ok(_) => failures.push(format!("{}: report differs from golden", case.name)),
            Err(e) => failures.push(format!("{}: cannot read golden: {e}", case.name)),
        }
    }
    failures
}
