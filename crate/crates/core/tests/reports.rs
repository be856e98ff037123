use mmv::hp::Engine;
use mmv::verify::{emit, run_suite, run_suite_with, Format, Grid, SuiteOptions, VerificationReport, SUITES};

fn engine() -> Engine {
    Engine::with_digits(30)
}

#[test]
fn every_named_suite_runs_clean_on_the_small_grid() {
    for s in SUITES {
        let r = run_suite(s, Grid::Small, &engine()).unwrap();
        assert!(r.all_passed(), "{} failed: {:?}", s, r.cases.iter().find(|c| !c.pass));
        assert_eq!(r.summary.total, r.cases.len());
        assert_eq!(r.summary.total, r.summary.passed + r.summary.failed + r.summary.skipped_singular);
        assert!(r.cases.windows(2).all(|w| w[0].id <= w[1].id));
    }
}

#[test]
fn files_roundtrip() {
    let r = run_suite("shuffle", Grid::Small, &engine()).unwrap();
    let dir = std::env::temp_dir().join(format!("mmv-reports-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let j = dir.join("r.json");
    emit(&r, Format::Json, &j).unwrap();
    let back = VerificationReport::from_json(&std::fs::read_to_string(&j).unwrap()).unwrap();
    assert_eq!(back, r);
    let c = dir.join("r.csv");
    emit(&r, Format::Csv, &c).unwrap();
    assert_eq!(std::fs::read_to_string(&c).unwrap().lines().count(), r.cases.len() + 1);
    assert!(emit(&r, Format::Json, &dir.join("missing/r.json")).is_err());
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn corrupted_sign_is_caught() {
    let r = run_suite_with("symmetry", Grid::Small, &engine(), &SuiteOptions { corrupt_sign: true }).unwrap();
    assert!(r.summary.failed > r.summary.total / 2);
}

#[test]
fn singular_tuples_are_recorded() {
    let r = run_suite("firstdiff", Grid::Small, &engine()).unwrap();
    let sk: Vec<_> = r.cases.iter().filter(|c| c.skipped_singular).collect();
    assert!(!sk.is_empty());
    assert!(sk.iter().all(|c| !c.notes.is_empty()));
    assert!(r.notes.iter().any(|n| n.contains("NoConstant: 0 of")));
}
