use std::path::Path;

use sheafctl::{run, Outcome};

fn sheafctl(args: &[&str]) -> Outcome {
    std::env::set_current_dir(env!("CARGO_MANIFEST_DIR")).unwrap();
    run(std::iter::once("sheafctl").chain(args.iter().copied()))
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)).unwrap()
}

#[test]
fn golden_reports() {
    let cases: [(&str, &[&str]); 5] = [
        ("sections_const_k.txt", &["sections", "corpus/const_k.shf"]),
        ("hocolim_const_k.txt", &["hocolim", "corpus/const_k.shf"]),
        ("check_kernel_tail_column.txt", &["--emit", "machine", "check-kernel", "corpus/tail_column.ker"]),
        ("localize_collapse.txt", &["localize-check", "corpus/collapse.mono"]),
        ("demo_towers.txt", &["--emit", "machine", "demo", "towers"]),
    ];
    for (file, args) in cases {
        assert_eq!(sheafctl(args).stdout, golden(file), "{file}");
    }
}

#[test]
fn exit_codes() {
    assert_eq!(sheafctl(&["check-kernel", "corpus/id.ker"]).code, 0);
    assert_eq!(sheafctl(&["check-kernel", "corpus/tail_column.ker"]).code, 1);
    assert_eq!(sheafctl(&["classify", "--proper", "corpus/perfect_tail.shf"]).code, 0);
    assert_eq!(sheafctl(&["classify", "--compact", "corpus/tail_stalk.shf"]).code, 1);
    assert_eq!(sheafctl(&["cellularize", "corpus/const.tower"]).code, 1);
    assert_eq!(sheafctl(&["transfer-report", "corpus/collapse.mono"]).code, 1);
    assert_eq!(sheafctl(&["sections"]).code, 2);
    assert_eq!(sheafctl(&["classify", "corpus/const_k.shf"]).code, 2);
    assert_eq!(sheafctl(&["frobnicate"]).code, 2);
    assert_eq!(sheafctl(&["--help"]).code, 0);
}

#[test]
fn diagnostics_name_file_line_and_token() {
    let dir = std::env::temp_dir().join(format!("sheafctl-diag-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::copy(Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus/circle.poset"), dir.join("circle.poset")).unwrap();
    let bad = dir.join("bad.shf");
    std::fs::write(&bad, "sheaf s over circle field F2\nval a { deg 0 dim 1 ; }\nval zz { deg 0 dim 1 ; }\n").unwrap();
    let out = sheafctl(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("bad.shf:3"), "{}", out.stderr);
    assert!(out.stderr.contains("`zz`"), "{}", out.stderr);

    std::fs::write(&bad, "sheaf s over nowhere field F2\n").unwrap();
    let out = sheafctl(&["validate", bad.to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("nowhere"), "{}", out.stderr);

    let out = sheafctl(&["sections", "corpus/missing.shf"]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("corpus/missing.shf"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn referenced_posets_load_once_and_are_digested() {
    let out = sheafctl(&["validate", "corpus/circle.poset", "corpus/const_k.shf", "corpus/collapse.mono"]);
    assert_eq!(out.code, 0);
    let digests = out.stdout.lines().filter(|l| l.starts_with("input ")).count();
    assert_eq!(digests, 4, "{}", out.stdout);
    assert!(out.stdout.contains("corpus/point.poset"));
}

#[test]
fn field_override_changes_arithmetic_not_answers() {
    for field in ["F2", "Fp:5", "Q"] {
        let out = sheafctl(&["--emit", "machine", "--field", field, "sections", "corpus/const_octahedron.shf"]);
        assert!(out.stdout.contains("section.0.betti={0:1, 2:1}"), "{field}: {}", out.stdout);
        assert!(out.stdout.contains(&format!("meta.field={field}")));
    }
    assert_eq!(sheafctl(&["--field", "Fp:4", "sections", "corpus/const_k.shf"]).code, 2);
}

#[test]
fn towers_rhom_and_homology() {
    let out = sheafctl(&["--emit", "machine", "rhom", "corpus/yoneda0.tower", "corpus/const.tower"]);
    assert_eq!(out.code, 0);
    assert!(out.stdout.contains("section.0.betti={0:1}"), "{}", out.stdout);
    let out = sheafctl(&["--emit", "machine", "homology", "corpus/trunc3.tower"]);
    assert!(out.stdout.contains("section.0.position_3={0:1}"), "{}", out.stdout);
    assert!(out.stdout.contains("section.0.position_4={}"), "{}", out.stdout);
}
