use std::process::Command;

fn run(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_reflekt"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

#[test]
fn good_pair_exits_zero() {
    let (code, out) = run(&["good", "G12", "center2"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("good: true"), "{out}");
}

#[test]
fn json_report_has_witness() {
    let (code, out) = run(&["--json", "good", "ZpZq(2,4)", "center2"]);
    assert_eq!(code, 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["command"].as_str().unwrap().contains("good"));
    assert_eq!(v["status"], "failed");
    assert_eq!(v["payload"]["reason"]["kind"], "non_invariant_alpha");
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(run(&["degrees", "Nope"]).0, 2);
    assert_eq!(run(&["good", "G12", "nonsense"]).0, 2);
    assert_eq!(run(&["diagram", "quotient", "/nonexistent.dgm", "--rule", "s=t", "--group", "A2"]).0, 2);
}

#[test]
fn diagram_commands() {
    let dir = std::env::temp_dir().join(format!("reflekt-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g12.dgm");
    std::fs::write(&path, "node s 2\nnode t 2\nnode u 2\ntwisted s t u e=3 f=3\n").unwrap();
    let p = path.to_str().unwrap();
    let (code, out) = run(&["--json", "present", "enumerate", p]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["payload"]["order"], 48);
    let (code, out) = run(&["diagram", "quotient", p, "--rule", "su=us", "--group", "G12"]);
    assert_eq!(code, 0, "{out}");
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn molien_and_tables() {
    let (code, out) = run(&["--json", "molien", "Itilde2(2)", "--order", "8"]);
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["payload"].to_string().contains('['));
    let (code, out) = run(&["tables", "verify", "--table", "2", "--max-param", "4"]);
    assert_eq!(code, 0, "{out}");
}
