use std::path::Path;
use std::process::{Command, Output};

use qeuler::designs::{mols_pair, ols_to_permutation, Design, DesignFile, LatinSquare};
use qeuler::linalg::ComplexMatrix;
use qeuler::solver::SearchReport;
use qeuler::states::PureState;

fn qeuler(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qeuler")).args(args).env_remove("QEULER_RNG_SEED").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn mols_of_order_three_match_the_numeric_square_up_to_relabeling() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("mols.json");
    let o = qeuler(&["design", "gen", "--kind", "mols", "--order", "3", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(0));
    let files: Vec<DesignFile> = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let squares: Vec<LatinSquare> = files
        .into_iter()
        .map(|f| match Design::from_file(f).unwrap() {
            Design::Ls(l) => l,
            other => panic!("unexpected {}", other.kind()),
        })
        .collect();
    assert_eq!(squares.len(), 2);
    // 11 23 32 / 22 31 13 / 33 12 21
    let ranks = [[0, 1, 2], [1, 2, 0], [2, 0, 1]];
    let suits = [[0, 2, 1], [1, 0, 2], [2, 1, 0]];
    let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let matches = |l: &LatinSquare, target: &[[usize; 3]; 3]| {
        perms.iter().any(|s| (0..9).all(|k| s[l.get(k / 3, k % 3)] == target[k / 3][k % 3]))
    };
    assert!(matches(&squares[0], &ranks) && matches(&squares[1], &suits));
}

#[test]
fn no_pair_of_order_six() {
    for kind in ["mols", "ols"] {
        let o = qeuler(&["design", "gen", "--kind", kind, "--order", "6"]);
        assert_eq!(o.status.code(), Some(1));
        assert!(stderr(&o).contains("no OLS(6)"), "{}", stderr(&o));
    }
}

#[test]
fn tampered_pair_is_located() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ols.json");
    let pair = mols_pair(3).unwrap();
    let mut suits = pair.suits.cells().to_vec();
    suits.swap(1, 2);
    let file = DesignFile::Ols { d: 3, ranks: pair.ranks.cells().to_vec(), suits };
    std::fs::write(&path, serde_json::to_string(&file).unwrap()).unwrap();
    let o = qeuler(&["design", "verify", "--in", p(&path)]);
    assert_eq!(o.status.code(), Some(1), "{}{}", stdout(&o), stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("C1") && text.contains("FAIL"), "{text}");

    let broken = DesignFile::Ls { d: 2, cells: vec![vec![0, 1], vec![0, 1]] };
    std::fs::write(&path, serde_json::to_string(&broken).unwrap()).unwrap();
    let o = qeuler(&["design", "verify", "--in", p(&path)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("Column"), "{}", stdout(&o));
}

#[test]
fn encode_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let ols = dir.path().join("ols.json");
    let perm = dir.path().join("p.json");
    assert_eq!(qeuler(&["design", "gen", "--kind", "ols", "--order", "3", "--out", p(&ols)]).status.code(), Some(0));
    assert_eq!(qeuler(&["design", "verify", "--in", p(&ols)]).status.code(), Some(0));
    let o = qeuler(&["design", "encode", "--in", p(&ols), "--out", p(&perm), "--render", "cards"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("A♠"));
    let m: ComplexMatrix = serde_json::from_str(&std::fs::read_to_string(&perm).unwrap()).unwrap();
    assert_eq!(m, ols_to_permutation(&mols_pair(3).unwrap()).unwrap());
    let design = Design::from_json(&std::fs::read_to_string(&ols).unwrap()).unwrap();
    assert_eq!(design, Design::Ols(mols_pair(3).unwrap()));
}

#[test]
fn state_from_pair_is_two_uniform() {
    let dir = tempfile::tempdir().unwrap();
    let state = dir.path().join("s.json");
    assert_eq!(qeuler(&["state", "build", "--from", "ols", "--order", "3", "--out", p(&state)]).status.code(), Some(0));
    let o = qeuler(&["state", "check", "--in", p(&state), "--k", "2", "--tol", "1e-12"]);
    assert_eq!(o.status.code(), Some(0));
    let residuals: Vec<f64> = stdout(&o)
        .lines()
        .filter(|l| l.starts_with('['))
        .map(|l| l.rsplit(' ').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(residuals.len(), 6);
    assert!(residuals.iter().all(|&r| r < 1e-12));
    PureState::from_json(&std::fs::read_to_string(&state).unwrap()).unwrap();
}

#[test]
fn state_from_matrix_and_failures() {
    let dir = tempfile::tempdir().unwrap();
    let m = dir.path().join("m.json");
    let s = dir.path().join("s.json");
    let cells = ols_to_permutation(&mols_pair(3).unwrap()).unwrap().transpose();
    std::fs::write(&m, serde_json::to_string(&cells).unwrap()).unwrap();
    assert_eq!(qeuler(&["state", "build", "--from", "matrix", "--in", p(&m), "--out", p(&s)]).status.code(), Some(0));
    assert_eq!(qeuler(&["state", "check", "--in", p(&s)]).status.code(), Some(0));

    let product = PureState::basis(vec![2; 4], &[0, 0, 0, 0]).unwrap();
    std::fs::write(&s, product.to_json().unwrap()).unwrap();
    assert_eq!(qeuler(&["state", "check", "--in", p(&s), "--k", "2"]).status.code(), Some(1));

    std::fs::write(&s, "{\"dims\": [2, 2]").unwrap();
    assert_eq!(qeuler(&["state", "check", "--in", p(&s)]).status.code(), Some(2));
    assert_eq!(qeuler(&["state", "check", "--in", p(&dir.path().join("missing.json"))]).status.code(), Some(2));
}

#[test]
fn search_report_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    let csv = dir.path().join("t.csv");
    let args = ["search", "--dim", "3", "--seeds", "3", "--rng-seed", "5", "--jobs", "2"];
    let o = qeuler(&[&args[..], &["--out", p(&a), "--traces", p(&csv)]].concat());
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("converged"));
    let o2 = Command::new(env!("CARGO_BIN_EXE_qeuler"))
        .args(["search", "--dim", "3", "--seeds", "3", "--out", p(&b)])
        .env("QEULER_RNG_SEED", "5")
        .output()
        .unwrap();
    assert_eq!(o2.status.code(), Some(0));
    let ra = std::fs::read_to_string(&a).unwrap();
    assert_eq!(ra, std::fs::read_to_string(&b).unwrap());
    let report = SearchReport::from_json(&ra).unwrap();
    assert_eq!(report.runs.len(), 3);
    assert_eq!(report.to_json().unwrap(), ra);
    assert!(std::fs::read_to_string(&csv).unwrap().starts_with("rng_seed,iteration,defect\n"));
}

#[test]
fn unsuccessful_search_exits_one() {
    let o = qeuler(&["search", "--dim", "2", "--seeds", "2", "--max-iter", "50"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("converged 0 of 2"));
    let o = qeuler(&["search", "--dim", "6", "--seeds", "1", "--max-iter", "3", "--seed-kind", "perturbed-permutation"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn bad_search_arguments() {
    assert_eq!(qeuler(&["search", "--dim", "3", "--tol", "0"]).status.code(), Some(2));
    assert_eq!(qeuler(&["search", "--dim", "3", "--seed-kind", "user-matrix"]).status.code(), Some(2));
    assert_eq!(qeuler(&["search"]).status.code(), Some(2));
    assert_eq!(qeuler(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn bruteforce_counts() {
    let o = qeuler(&["bruteforce", "--dim", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("0 found"));
    let o = qeuler(&["bruteforce", "--dim", "3", "--show"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("72 found"));
    let p9: Vec<String> = [0, 7, 5, 8, 3, 1, 4, 2, 6]
        .iter()
        .map(|&c| (0..9).map(|k| if k == c { "1" } else { "0" }).collect::<Vec<_>>().join(" "))
        .collect();
    assert!(text.contains(&p9.join("\n")), "{text}");
    let o = qeuler(&["bruteforce", "--dim", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("(16)!"));
}

#[test]
fn cards_render_pair() {
    let o = qeuler(&["design", "gen", "--kind", "ols", "--order", "3", "--render", "cards"]);
    assert!(stdout(&o).starts_with("A♠ K♦ Q♣"));
}
