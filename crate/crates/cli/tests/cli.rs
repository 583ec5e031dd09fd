use std::path::PathBuf;
use std::process::{Command, Output};

use lattice_actions::action::LatticeAction;
use lattice_actions::catalog::{fixture, FIXTURES};
use lattice_actions::lattice::Lattice;
use lattice_actions::matrix::ZMatrix;
use lattice_actions_cli::action_file::ActionFile;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn latact(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_latact")).args(args).output().expect("binary runs")
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("latact-tests-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn fixture_file(name: &str) -> PathBuf {
    let out = latact(&["catalog", name]);
    assert!(out.status.success());
    scratch(&format!("{name}.toml"), &String::from_utf8(out.stdout).unwrap())
}

fn lines(out: &Output) -> Vec<(String, String)> {
    let text = String::from_utf8_lossy(if out.status.success() { &out.stdout } else { &out.stderr }).into_owned();
    text.lines().filter_map(|l| l.split_once('=')).map(|(k, v)| (k.to_string(), v.to_string())).collect()
}

fn value<'a>(pairs: &'a [(String, String)], key: &str) -> Option<&'a str> {
    pairs.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
}

#[test]
fn catalog_lists_every_fixture() {
    let out = latact(&["catalog"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().collect::<Vec<_>>(), FIXTURES.to_vec());
}

#[test]
fn fixtures_report_their_expected_values() {
    for name in FIXTURES {
        let f = fixture(name).unwrap();
        let path = fixture_file(name);
        let p = path.to_str().unwrap();
        let mut pairs = lines(&latact(&["--format", "lines", "check", p]));
        if f.action.first_antiholomorphic().is_some() && name.starts_with("d3") {
            pairs.extend(lines(&latact(&["--format", "lines", "walls", p])));
        }
        for (k, v) in &f.expected {
            assert_eq!(value(&pairs, k), Some(v.as_str()), "{name}: {k}");
        }
    }
}

#[test]
fn exit_codes() {
    let bad = scratch("bad.toml", "gram = [[\"2\", \"01\"], [\"1\", \"2\"]]\n");
    assert_eq!(latact(&["check", bad.to_str().unwrap()]).status.code(), Some(2));
    let missing = latact(&["check", "/nonexistent/action.toml"]);
    assert_eq!(missing.status.code(), Some(2));
    let asym = scratch("asym.toml", "gram = [[\"2\", \"1\"], [\"0\", \"2\"]]\n");
    assert_eq!(latact(&["check", asym.to_str().unwrap()]).status.code(), Some(2));

    // No antiholomorphic element, and eigenlattices of rank other than 2.
    let swap = fixture_file("e8_swap");
    assert_eq!(latact(&["walls", swap.to_str().unwrap()]).status.code(), Some(3));
    let flip = fixture_file("kappa_flip");
    assert_eq!(latact(&["walls", flip.to_str().unwrap()]).status.code(), Some(3));

    // e6 is moved by the swap, so span(e6) is not invariant.
    let root = "0,0,0,0,0,0,1";
    let out = latact(&["degenerate", swap.to_str().unwrap(), "--roots", root]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());

    assert_eq!(latact(&["classify", "order5"]).status.code(), Some(2));
    assert_eq!(latact(&["catalog", "nope"]).status.code(), Some(2));
}

#[test]
fn degenerate_writes_a_verified_action() {
    let flip = fixture_file("kappa_flip");
    let out_path = std::env::temp_dir().join(format!("latact-tests-{}", std::process::id())).join("flip_deg.toml");
    let out = latact(&[
        "--format",
        "lines",
        "degenerate",
        flip.to_str().unwrap(),
        "--roots",
        "1,-1",
        "--output",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let pairs = lines(&out);
    assert_eq!(value(&pairs, "saturated.type"), Some("A1"));
    assert_eq!(value(&pairs, "verified"), Some("true"));
    for c in ["admissible", "complement", "components", "discriminant", "geometric"] {
        assert_eq!(value(&pairs, &format!("check.{c}")), Some("pass"));
    }
    let check = lines(&latact(&["--format", "lines", "check", out_path.to_str().unwrap()]));
    assert_eq!(value(&check, "geometric"), Some("true"));
    assert_eq!(value(&check, "group.antiholomorphic"), Some("1"));

    // With `--output -` the action goes to stdout and parses back.
    let piped = latact(&["degenerate", flip.to_str().unwrap(), "--roots", "1,-1", "--output", "-"]);
    assert!(piped.status.success());
    let text = String::from_utf8(piped.stdout).unwrap();
    assert_eq!(text, std::fs::read_to_string(&out_path).unwrap());
    assert!(ActionFile::parse(&text).unwrap().to_action().is_ok());
}

#[test]
fn reports_are_byte_identical_across_runs() {
    let d3 = fixture_file("d3_S");
    let d3 = d3.to_str().unwrap();
    let runs: [&[&str]; 6] = [
        &["--format", "lines", "check", d3],
        &["check", d3],
        &["--format", "lines", "walls", d3],
        &["--format", "lines", "classify", "order3-2u", "--bound", "1"],
        &["--format", "lines", "survey", "torus"],
        &["--format", "lines", "discr", d3],
    ];
    for args in runs {
        let (a, b) = (latact(args), latact(args));
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stderr, b.stderr, "{args:?}");
    }
}

fn random_action(rng: &mut ChaCha8Rng) -> LatticeAction {
    let n = rng.gen_range(1..=6);
    let mut g = ZMatrix::zeros(n, n);
    for i in 0..n {
        g.set(i, i, BigInt::from(2 * rng.gen_range(-3i64..=3)));
        for j in i + 1..n {
            let x = BigInt::from(rng.gen_range(-4i64..=4));
            g.set(i, j, x.clone());
            g.set(j, i, x);
        }
    }
    let l = Lattice::new(g).unwrap();
    let mut gens = Vec::new();
    for k in 0..rng.gen_range(0..=3) {
        let mut m = ZMatrix::identity(n);
        for _ in 0..rng.gen_range(0..4) {
            let v: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-1i64..=1))).collect();
            let norm = l.norm(&v);
            if norm == BigInt::from(2) || norm == BigInt::from(-2) {
                m = &l.reflection(&v).unwrap().into_matrix() * &m;
            }
        }
        if rng.gen_bool(0.5) {
            m = -&m;
        }
        let kappa = if rng.gen_bool(0.5) { 1 } else { -1 };
        gens.push((format!("g{k}"), m, kappa));
    }
    LatticeAction::new(l, gens).unwrap()
}

#[test]
fn action_files_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a77);
    for i in 0..300 {
        let a = random_action(&mut rng);
        let comment = (i % 3 == 0).then_some("random \"quoted\" action");
        let text = ActionFile::from_action(&a, comment).to_toml();
        let parsed = ActionFile::parse(&text).unwrap();
        assert_eq!(parsed.to_action().unwrap(), a);
        assert_eq!(parsed.to_toml(), text);
    }
    // Arbitrary precision survives the file format.
    let big: BigInt = "-123456789012345678901234567890123456789012".parse().unwrap();
    let g = ZMatrix::from_rows(&[vec![big.clone(), BigInt::from(0)], vec![BigInt::from(0), big]]).unwrap();
    let a = LatticeAction::new(Lattice::new(g).unwrap(), vec![("id".into(), ZMatrix::identity(2), 1)]).unwrap();
    let text = ActionFile::from_action(&a, None).to_toml();
    assert!(text.contains("\"-123456789012345678901234567890123456789012\""));
    assert_eq!(ActionFile::parse(&text).unwrap().to_action().unwrap(), a);
}
