use std::process::Command;

fn ea(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ea")).args(args).current_dir(env!("CARGO_MANIFEST_DIR")).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

#[test]
fn count_only() {
    assert_eq!(ea(&["enumerate", "-n", "6", "--count-only"]), (0, "10\n".into()));
    let (code, json) = ea(&["enumerate", "-n", "5", "--format", "json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["count"], 4);
    assert_eq!(ea(&["enumerate", "-n", "1"]).0, 64);
}

#[test]
fn exit_codes() {
    assert_eq!(ea(&["validate", "data/tables/e5-3.txt"]).0, 0);
    assert_eq!(ea(&["validate", "data/tables/spade4.txt"]).0, 2);
    assert_eq!(ea(&["validate", "no/such/file"]).0, 66);
    assert_eq!(ea(&["frobnicate"]).0, 64);
    assert_eq!(ea(&["--help"]).0, 0);
    assert_eq!(ea(&["classify", "data/tables/spade4.txt"]).0, 65);
}

#[test]
fn models_and_isomorphism() {
    let dir = std::env::temp_dir().join(format!("ea-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = |n: &str| dir.join(n).to_str().unwrap().to_string();
    for name in ["E8", "S2", "P4", "E6(9)"] {
        let (code, text) = ea(&["catalog", "--export", name]);
        assert_eq!(code, 0);
        std::fs::write(path(name), text).unwrap();
    }
    assert_eq!(ea(&["verify-model", &path("E8"), "data/models/e8-quantum.json"]).0, 0);
    assert_eq!(ea(&["verify-model", &path("E8"), "data/models/e8-fuzzy.json"]).0, 0);
    assert_eq!(ea(&["verify-model", &path("E6(9)"), "data/models/e6-9-real.json"]).0, 0);
    assert_eq!(ea(&["verify-model", &path("E6(9)"), "data/models/e8-fuzzy.json"]).0, 65);
    assert_eq!(ea(&["compose", &path("S2"), &path("S2"), "-o", &path("prod")]).0, 0);
    assert_eq!(ea(&["iso", &path("prod"), &path("P4")]).0, 0);
    assert_eq!(ea(&["iso", &path("prod"), &path("S2")]).0, 3);
    let (_, f) = ea(&["factor", &path("E8")]);
    assert!(f.starts_with("composite: order 2 x order 4"));
    let (_, s) = ea(&["states", &path("E6(9)")]);
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["unique_state"]["g"], "2/3");
    assert_eq!(v["separating"], false);
    std::fs::remove_dir_all(dir).unwrap();
}
