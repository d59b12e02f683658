use std::fs;
use std::process::{Command, Output};

use detcone::cone::parse_vector_file;
use detcone::known;

fn detcone(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_detcone"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn membership_exit_codes() {
    let d = detcone(&[
        "membership",
        known::E4_NOT_D4,
        "--semigroup",
        "D",
        "--n",
        "4",
    ]);
    assert_eq!(d.status.code(), Some(1));
    assert!(stdout(&d).contains("witness: M6:{3,4} = -1"));

    let e = detcone(&[
        "membership",
        known::E4_NOT_D4,
        "--semigroup",
        "E",
        "--n",
        "4",
    ]);
    assert_eq!(e.status.code(), Some(0));

    let q = detcone(&["membership", "Q", "--semigroup", "D", "--n", "5"]);
    assert_eq!(q.status.code(), Some(0));

    let k = detcone(&["membership", "R1", "--semigroup", "K"]);
    assert_eq!(k.status.code(), Some(1));

    let unsupported = detcone(&[
        "membership",
        "{1,2}{} / {1}{2}",
        "--semigroup",
        "D",
        "--n",
        "2",
    ]);
    assert_eq!(unsupported.status.code(), Some(2));
    let garbage = detcone(&["membership", "{1,2", "--semigroup", "H"]);
    assert_eq!(garbage.status.code(), Some(2));
    assert!(!garbage.stderr.is_empty());
}

#[test]
fn nullity_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("m.txt");
    fs::write(&path, "1 1 1\n").unwrap();
    let o = detcone(&["nullity", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let nul: Vec<u64> = v["entries"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["nullity"].as_u64().unwrap())
        .collect();
    assert_eq!(nul, [0, 0, 0, 0, 1, 1, 1, 2]);

    fs::write(&path, "1 x\n").unwrap();
    assert_eq!(
        detcone(&["nullity", path.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn extreme_rays_listing_is_stable() {
    let a = detcone(&["extreme-rays", "--system", "D", "--n", "4"]);
    let b = detcone(&["extreme-rays", "--system", "D", "--n", "4"]);
    assert_eq!(a.stdout, b.stdout);
    let file = parse_vector_file(&stdout(&a)).unwrap();
    assert_eq!(file.rays.len(), 46);
    assert_eq!(
        file.rays
            .iter()
            .filter(|(l, _)| l.contains("koteljanskii"))
            .count(),
        24
    );

    let e3 = parse_vector_file(&stdout(&detcone(&[
        "extreme-rays",
        "--system",
        "E",
        "--n",
        "3",
    ])))
    .unwrap();
    let d3 = parse_vector_file(&stdout(&detcone(&[
        "extreme-rays",
        "--system",
        "D",
        "--n",
        "3",
    ])))
    .unwrap();
    let vectors =
        |f: &detcone::cone::VectorFile| f.rays.iter().map(|(_, v)| v.clone()).collect::<Vec<_>>();
    assert_eq!(vectors(&e3), vectors(&d3));
    assert_eq!(
        detcone(&["extreme-rays", "--system", "E", "--n", "5"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn asn_and_probe_poly() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.txt");
    fs::write(&p, known::ASN_FAMILY).unwrap();
    let o = detcone(&["asn", p.to_str().unwrap(), "--ratio", "Q"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("pairing = -1\n"));

    let diag = dir.path().join("diag.txt");
    fs::write(
        &diag,
        "e,0,0,0,0\n0,e,0,0,0\n0,0,e,0,0\n0,0,0,e,0\n0,0,0,0,e\n",
    )
    .unwrap();
    let o = detcone(&["asn", diag.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for e in v["entries"].as_array().unwrap() {
        let set = e["set"].as_str().unwrap();
        let size = if set == "{}" {
            0
        } else {
            set.split(',').count() as u64
        };
        assert_eq!(e["d"].as_u64(), Some(size));
    }

    let o = detcone(&["probe-poly", "Q", p.to_str().unwrap(), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["fitted_slope"].as_f64().unwrap() + 2.0).abs() < 0.1);
}

#[test]
fn probe_family_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m6.txt");
    fs::write(&m, "1 0 1 1\n0 1 1 1\n").unwrap();
    let out = dir.path().join("report.txt");
    let o = detcone(&[
        "probe-family",
        "E4-not-D4",
        m.to_str().unwrap(),
        "--eps-max",
        "1e-2",
        "--eps-min",
        "1e-7",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.contains("predicted_slope = -1"));
    assert!(text.contains("observed = divergent"));

    let narrow = detcone(&[
        "probe-family",
        "E4-not-D4",
        m.to_str().unwrap(),
        "--eps-max",
        "1e-2",
        "--eps-min",
        "1e-4",
    ]);
    assert_eq!(narrow.status.code(), Some(2));
}

#[test]
fn bound_search_and_fiedler_are_seeded() {
    let args = ["bound-search", "R1", "--samples", "500", "--seed", "3"];
    let a = detcone(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, detcone(&args).stdout);

    let f = detcone(&[
        "fiedler",
        "--n",
        "5",
        "--samples",
        "300",
        "--format",
        "json",
    ]);
    assert_eq!(f.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&f)).unwrap();
    assert_eq!(v["failures"].as_u64(), Some(0));
}

#[test]
fn reproduce_writes_both_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = detcone(&[
        "reproduce",
        "--samples",
        "2000",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = fs::read_to_string(dir.path().join("reproduction.txt")).unwrap();
    assert!(text.contains("10/10 checks passed"));
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("reproduction.json")).unwrap())
            .unwrap();
    assert_eq!(json["checks"].as_array().unwrap().len(), 10);
}
