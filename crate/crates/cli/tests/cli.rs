use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use seamkit_core::io::{save_image, save_mask};
use seamkit_core::ops::{generate_mask, MaskGenParams};
use seamkit_core::synth::photo;
use seamkit_core::Rng;
use tempfile::TempDir;

fn seamkit(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_seamkit"))
        .args(args)
        .current_dir(cwd)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str], cwd: &Path) -> Output {
    let out = seamkit(args, cwd);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn bytes(p: impl AsRef<Path>) -> Vec<u8> {
    std::fs::read(p).unwrap()
}

/// `img.png` and `mask.png` plus a three-entry batch directory `batch/`.
fn fixture() -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    save_image(&photo(64, 64, 1), root.join("img.png")).unwrap();
    let mask = generate_mask(64, 64, &MaskGenParams::default(), &mut Rng::new(1, 0)).unwrap();
    save_mask(&mask, root.join("mask.png")).unwrap();

    let batch = root.join("batch");
    std::fs::create_dir(&batch).unwrap();
    let mut entries = Vec::new();
    for i in 0..3u64 {
        save_image(&photo(48, 48, 10 + i), batch.join(format!("img{i}.png"))).unwrap();
        save_image(&photo(48, 48, 20 + i), batch.join(format!("gt{i}.png"))).unwrap();
        let m = generate_mask(48, 48, &MaskGenParams::default(), &mut Rng::new(i, 0)).unwrap();
        save_mask(&m, batch.join(format!("mask{i}.png"))).unwrap();
        entries.push(serde_json::json!({
            "image": format!("img{i}.png"),
            "mask": format!("mask{i}.png"),
            "gt": format!("gt{i}.png"),
        }));
    }
    std::fs::write(batch.join("manifest.json"), serde_json::to_string(&entries).unwrap()).unwrap();
    dir
}

fn error_json(out: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stderr);
    serde_json::from_str(text.trim()).unwrap_or_else(|_| panic!("stderr is not JSON: {text}"))
}

#[test]
fn help_exits_zero_everywhere() {
    let dir = tempfile::tempdir().unwrap();
    ok(&["--help"], dir.path());
    for sub in [
        "mask-gen",
        "simulate",
        "refine",
        "pool",
        "blend",
        "tonemap-fit",
        "tonemap-apply",
        "eval",
    ] {
        let out = ok(&[sub, "--help"], dir.path());
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains("Usage"), "{sub}");
    }
    let text = String::from_utf8(ok(&["eval", "--help"], dir.path()).stdout).unwrap();
    assert!(text.contains("--seed") && text.contains("[default: 0]"));
}

#[test]
fn eval_of_identical_images() {
    let dir = fixture();
    let out = ok(&["eval", "--pred", "img.png", "--gt", "img.png", "--mask", "mask.png"], dir.path());
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["schema"], 1);
    assert_eq!(report["l1_full"], 0.0);
    assert_eq!(report["l1_masked"], 0.0);
    assert_eq!(report["disc_l1"], 0.0);
    assert!(report["psnr"].is_null());
    assert_eq!(report["identical"], true);
}

#[test]
fn simulate_is_reproducible() {
    let dir = fixture();
    let run = |tag: &str| {
        ok(
            &[
                "simulate",
                "--in",
                "img.png",
                "--mask",
                "mask.png",
                "--seed",
                "7",
                "--out",
                &format!("d{tag}.png"),
                "--out-gt",
                &format!("t{tag}.png"),
                "--out-mask",
                &format!("m{tag}.png"),
                "--sidecar",
                &format!("s{tag}.json"),
            ],
            dir.path(),
        );
    };
    run("a");
    run("b");
    for stem in ["d", "t", "m"] {
        assert_eq!(bytes(dir.path().join(format!("{stem}a.png"))), bytes(dir.path().join(format!("{stem}b.png"))));
    }
    let a = bytes(dir.path().join("sa.json"));
    assert_eq!(a, bytes(dir.path().join("sb.json")));
    let sidecar: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(sidecar["seed"], 7);
    assert!(sidecar["applied"].is_array());
}

#[test]
fn shipped_config_loads() {
    let dir = fixture();
    let config: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "config", "default_sim.json"].iter().collect();
    ok(
        &[
            "simulate",
            "--in",
            "img.png",
            "--mask",
            "mask.png",
            "--config",
            config.to_str().unwrap(),
            "--quality",
            "40",
            "--out",
            "d.png",
            "--out-gt",
            "t.png",
            "--out-mask",
            "m.png",
            "--sidecar",
            "s.json",
        ],
        dir.path(),
    );
}

#[test]
fn pool_of_one_equals_refine() {
    let dir = fixture();
    ok(&["refine", "--in", "img.png", "--mask", "mask.png", "--out", "r.png"], dir.path());
    ok(&["pool", "--in", "img.png", "--mask", "mask.png", "--out", "p.png", "--n", "1"], dir.path());
    assert_eq!(bytes(dir.path().join("r.png")), bytes(dir.path().join("p.png")));
}

#[test]
fn batch_output_ignores_worker_count() {
    let dir = fixture();
    for jobs in ["1", "4"] {
        ok(&["simulate", "--in", "batch", "--out", &format!("sim{jobs}"), "--jobs", jobs], dir.path());
        ok(&["pool", "--in", "batch", "--out", &format!("pool{jobs}"), "--jobs", jobs], dir.path());
        ok(&["eval", "--pred", "batch", "--out", &format!("eval{jobs}"), "--jobs", jobs], dir.path());
    }
    for sub in ["sim", "pool", "eval"] {
        let mut names: Vec<_> = std::fs::read_dir(dir.path().join(format!("{sub}1")))
            .unwrap()
            .map(|e| e.unwrap().file_name())
            .collect();
        names.sort();
        assert!(!names.is_empty());
        for n in names {
            assert_eq!(
                bytes(dir.path().join(format!("{sub}1")).join(&n)),
                bytes(dir.path().join(format!("{sub}4")).join(&n)),
                "{sub}/{n:?}"
            );
        }
    }
    let report: serde_json::Value = serde_json::from_slice(&bytes(dir.path().join("eval1/report.json"))).unwrap();
    assert_eq!(report.as_array().unwrap().len(), 3);
    assert_eq!(report[2]["metadata"]["stream"], 2);
    let csv = String::from_utf8(bytes(dir.path().join("eval1/summary.csv"))).unwrap();
    assert!(csv.starts_with("metric,mean,count\n"));
}

#[test]
fn tonemap_fit_then_apply() {
    let dir = fixture();
    ok(&["refine", "--in", "img.png", "--mask", "mask.png", "--out", "r.png"], dir.path());
    ok(
        &[
            "tonemap-fit",
            "--pred",
            "r.png",
            "--gt",
            "img.png",
            "--mask",
            "mask.png",
            "--out",
            "tm.json",
            "--degree",
            "3",
        ],
        dir.path(),
    );
    let tm: serde_json::Value = serde_json::from_slice(&bytes(dir.path().join("tm.json"))).unwrap();
    assert_eq!(tm["degree"], 3);
    assert_eq!(tm["coefficients"].as_array().unwrap().len(), 3);
    ok(&["tonemap-apply", "--in", "r.png", "--map", "tm.json", "--out", "y.png"], dir.path());
    assert!(dir.path().join("y.png").exists());
}

#[test]
fn blend_with_and_without_oracle_gradients() {
    let dir = fixture();
    ok(
        &["blend", "--src", "img.png", "--dst", "img.png", "--mask", "mask.png", "--out", "b.png"],
        dir.path(),
    );
    let out = seamkit(
        &["blend", "--src", "img.png", "--dst", "img.png", "--mask", "mask.png", "--out", "b.png", "--oracle-gradients"],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(1));
    ok(
        &[
            "blend",
            "--src",
            "img.png",
            "--dst",
            "img.png",
            "--mask",
            "mask.png",
            "--out",
            "o.png",
            "--oracle-gradients",
            "--gt",
            "img.png",
            "--method",
            "gauss-seidel",
        ],
        dir.path(),
    );
}

#[test]
fn exit_codes_and_error_objects() {
    let dir = fixture();

    let out = seamkit(&["eval", "--pred", "missing.png", "--gt", "img.png", "--mask", "mask.png"], dir.path());
    assert_eq!(out.status.code(), Some(2));
    let err = error_json(&out);
    assert_eq!(err["code"], 2);
    assert!(err["message"].as_str().unwrap().contains("missing.png"));
    assert_eq!(err["context"][0], "eval");

    std::fs::write(dir.path().join("junk.png"), b"not a png").unwrap();
    let out = seamkit(&["refine", "--in", "junk.png", "--mask", "mask.png", "--out", "r.png"], dir.path());
    assert_eq!(out.status.code(), Some(2));

    let out = seamkit(&["pool", "--in", "img.png", "--mask", "mask.png", "--out", "p.png", "--n", "0"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_json(&out)["code"], 1);

    let out = seamkit(&["refine", "--bogus"], dir.path());
    assert_eq!(out.status.code(), Some(1));
    error_json(&out);

    let out = seamkit(
        &[
            "blend", "--src", "img.png", "--dst", "mask.png", "--mask", "mask.png", "--out", "b.png", "--max-iter", "1",
            "--tol", "1e-14",
        ],
        dir.path(),
    );
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(error_json(&out)["code"], 3);
}

#[cfg(unix)]
#[test]
fn external_refiner_round_trip() {
    let dir = fixture();
    // Copies its input: the pooled result must then equal the input.
    ok(
        &[
            "pool",
            "--in",
            "img.png",
            "--mask",
            "mask.png",
            "--out",
            "p.png",
            "--n",
            "3",
            "--external",
            "sh",
            "--external-arg",
            "-c",
            "--external-arg",
            "cp \"$0\" \"$2\"",
        ],
        dir.path(),
    );
    let a = seamkit_core::io::load_image(dir.path().join("p.png")).unwrap();
    let b = seamkit_core::io::load_image(dir.path().join("img.png")).unwrap();
    assert_eq!(a, b);
}
