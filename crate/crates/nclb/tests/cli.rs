use std::process::{Command, Output};

fn nclb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nclb")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_passes_on_builtin_presets() {
    for preset in ["slq2", "circle", "trivial"] {
        let o = nclb(&["verify", "--preset", preset, "--suite", "confluence,gram,line-axioms,hopf-galois", "--samples", "5"]);
        assert_eq!(o.status.code(), Some(0), "{preset}: {}", stdout(&o));
        assert!(!stdout(&o).contains("FAIL"));
    }
}

#[test]
fn suites_are_reported_in_sorted_order() {
    let o = nclb(&["verify", "--preset", "circle", "--suite", "gram,confluence", "--samples", "3"]);
    let text = stdout(&o);
    let gram = text.find("[gram]").unwrap();
    let conf = text.find("[confluence]").unwrap();
    assert!(conf < gram);
}

#[test]
fn slq2_has_no_star_on_l() {
    let o = nclb(&["verify", "--preset", "slq2", "--suite", "xi-alpha"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("SKIP"));
    assert!(stdout(&o).contains("NoStarOnL"));
}

#[test]
fn usage_errors_exit_with_2() {
    assert_eq!(nclb(&["verify", "--preset", "nope"]).status.code(), Some(2));
    assert_eq!(nclb(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(nclb(&["verify", "--bogus"]).status.code(), Some(2));
    assert_eq!(nclb(&["thom", "--variant", "square"]).status.code(), Some(2));
    assert_eq!(nclb(&["chern", "--zeta", "e0 +"]).status.code(), Some(2));
}

#[test]
fn json_reports_are_deterministic() {
    let dir = std::env::temp_dir().join(format!("nclb-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let run = |name: &str| {
        let path = dir.join(name);
        let o = nclb(&[
            "verify", "--preset", "slq2", "--suite", "confluence,tz-star", "--samples", "4", "--seed", "7", "--json",
            path.to_str().unwrap(),
        ]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        std::fs::read_to_string(path).unwrap()
    };
    let (a, b) = (run("a.json"), run("b.json"));
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["version"], 1);
    assert_eq!(v["seed"], 7);
    assert!(v["suites"][0].get("elapsed_ms").is_none());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn chern_reports_kappa_and_omega() {
    let o = nclb(&["chern", "--preset", "slq2", "--zeta", "0"]);
    let text = stdout(&o);
    assert!(text.contains("kappa = e0"), "{text}");
    assert!(text.contains("omega = -q^3 e+^e-"), "{text}");
    assert_eq!(o.status.code(), Some(0));

    let o = nclb(&["chern", "--preset", "circle", "--zeta", "U du"]);
    assert!(stdout(&o).contains("omega = 0"), "{}", stdout(&o));
    assert!(stdout(&o).contains(": compatible"), "{}", stdout(&o));

    let o = nclb(&["chern", "--preset", "slq2", "--zeta", "e0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn thom_runs_at_small_size() {
    let o = nclb(&["thom", "--grid", "129", "--samples", "4", "--variant", "thom"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("PASS adjoint"));
}
