//! End-to-end runs of the `facloc` binary.

use std::process::{Command, Output};

fn facloc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_facloc"))
        .args(args)
        .env_remove("FM_RESOLUTION")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn run_minmaxp_zero_utility() {
    let o = facloc(&[
        "run",
        "--mech",
        "minmaxp",
        "--agents",
        "0,1",
        "--pred",
        "0",
        "--obj",
        "min-utility",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("placement: 0/1 (0.000000)"), "{s}");
    assert!(s.contains("ratio inf"), "{s}");
}

#[test]
fn run_midornearest_decimal_input() {
    let s = stdout(&facloc(&[
        "run",
        "--mech",
        "midornearest",
        "--agents",
        "0.1,0.2",
    ]));
    assert!(s.contains("placement: 1/5 (0.200000)"), "{s}");
    assert!(s.contains("max-distance:"), "{s}");
    assert!(s.contains("min-utility:"), "{s}");
}

#[test]
fn ratio_gamma_quarter_robustness() {
    let o = facloc(&[
        "ratio",
        "--mech",
        "minmaxp-gamma",
        "--param",
        "1/4",
        "--mode",
        "robustness",
        "--obj",
        "min-utility",
        "--res",
        "20",
        "--max-agents",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(
        s.contains("measured 5/2 (2.500000), closed form 5/2 (2.500000), ok"),
        "{s}"
    );
}

#[test]
fn ratio_minmax2p_max_distance_robustness_is_unbounded() {
    let o = facloc(&[
        "ratio",
        "--mech",
        "minmax2p",
        "--mode",
        "robustness",
        "--obj",
        "max-distance",
        "--res",
        "10",
        "--max-agents",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("measured inf, closed form inf"));
}

#[test]
fn ratio_lrmp_half_consistency() {
    let o = facloc(&[
        "ratio",
        "--mech",
        "lrmp",
        "--param",
        "1/2",
        "--mode",
        "consistency",
        "--obj",
        "min-utility",
        "--res",
        "10",
        "--max-agents",
        "3",
    ]);
    assert!(stdout(&o).contains("closed form 2/1 (2.000000)"));
}

#[test]
fn resolution_comes_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_facloc"))
        .args(["sp", "--mech", "minmaxp", "--max-agents", "2"])
        .env("FM_RESOLUTION", "7")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("resolution 7"));
}

#[test]
fn sweep_endpoints() {
    for (mech, first, last) in [
        (
            "minmaxp-gamma",
            "0/1,0.000000,1/1,1.000000,inf,inf",
            "1/2,0.500000,3/2,1.500000,3/2,1.500000",
        ),
        (
            "lrmtp",
            "0/1,0.000000,1/1,1.000000,inf,inf",
            "1/2,0.500000,4/3,1.333333,4/3,1.333333",
        ),
        (
            "randends2p",
            "0/1,0.000000,1/1,1.000000,3/2,1.500000",
            "1/2,0.500000,9/7,1.285714,9/7,1.285714",
        ),
    ] {
        let s = stdout(&facloc(&["sweep", "--mech", mech]));
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines.len(), 22, "{mech}");
        assert_eq!(lines[1], first);
        assert_eq!(lines[21], last);
    }
}

#[test]
fn sweep_rejects_unparameterized_family() {
    assert_eq!(
        facloc(&["sweep", "--mech", "randends"]).status.code(),
        Some(2)
    );
}

#[test]
fn table_matches_and_writes_file() {
    let dir = std::env::temp_dir().join(format!("facloc-table-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("table.txt");
    let o = facloc(&["table", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("0 mismatching rows"));
    assert!(text.contains("cited, not verified"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn sp_exit_codes() {
    let clean = facloc(&[
        "sp",
        "--mech",
        "minmax2p-lambda",
        "--param",
        "1/8",
        "--res",
        "10",
        "--max-agents",
        "3",
    ]);
    assert_eq!(clean.status.code(), Some(0));
    assert!(stdout(&clean).contains(": 0 violations"));
    let broken = facloc(&["sp", "--mech", "broken-third", "--res", "10"]);
    assert_eq!(broken.status.code(), Some(1));
    let lrm = facloc(&["sp", "--mech", "lrm", "--res", "10"]);
    assert_eq!(lrm.status.code(), Some(0));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        facloc(&["run", "--mech", "minmaxp", "--agents", "0,1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        facloc(&["run", "--mech", "nope", "--agents", "0"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        facloc(&["run", "--mech", "midornearest", "--agents", "0,1.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        facloc(&["ratio", "--mech", "minmaxp", "--res", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(facloc(&["bogus"]).status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let args = [
        "ratio",
        "--mech",
        "randends2p",
        "--param",
        "1/4",
        "--res",
        "6",
        "--max-agents",
        "3",
    ];
    assert_eq!(facloc(&args).stdout, facloc(&args).stdout);
}
