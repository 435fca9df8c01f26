use std::path::{Path, PathBuf};

use polygame::catalog::{run_all, Catalog, RunOptions};

fn catalog_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog")
}

fn opts(jobs: usize) -> RunOptions {
    RunOptions { jobs: Some(jobs), cross_check: false, ..RunOptions::default() }
}

#[test]
fn reports_do_not_depend_on_the_thread_count() {
    let cat = Catalog::load(&catalog_dir().join("catalog.txt")).unwrap();
    let one = run_all(&cat, &opts(1)).unwrap();
    let many = run_all(&cat, &opts(6)).unwrap();
    assert!(one.ok(), "{:?}", one.failures());
    assert_eq!(one.to_string(), many.to_string());
    assert!(one.to_string().ends_with("all claims reproduced\n"));
}

#[test]
fn every_animal_is_catalogued() {
    let cat = Catalog::load(&catalog_dir().join("catalog.txt")).unwrap();
    let names: Vec<&str> = cat.entries.iter().map(|e| e.name.as_str()).collect();
    for name in polygame::polyform::NAMES {
        assert!(names.contains(&name), "{name} missing");
    }
    for e in &cat.entries {
        assert!(e.polyform.is_congruent(&polygame::polyform::named(&e.name).unwrap()), "{}", e.name);
    }
}

/// A catalog with one record, written next to the real one so relative
/// witness paths resolve.
fn single(record: &str) -> Catalog {
    Catalog::parse("test", record, &catalog_dir()).unwrap()
}

#[test]
fn a_wrong_threshold_is_reported_not_accepted() {
    let good = "animal T31\npolyform polyforms/T31.txt\nthreshold 1 5 inf\n\
                maker 1,1 proof proofs/T31_1_1.txt\nbreaker 1,2 paving pavings/tri_T21.txt\n\
                maker 2,5 proof proofs/T31_2_5.txt\nbreaker 2,6 surround\nmaker 3,* size\n";
    assert!(run_all(&single(good), &opts(2)).unwrap().ok());

    // Claiming b_2 = 6 leaves the maker's (2,6) win without a witness.
    let bad = good.replace("threshold 1 5 inf", "threshold 1 6 inf");
    let report = run_all(&single(&bad), &opts(2)).unwrap();
    assert!(!report.ok());
    assert!(report.failures().iter().any(|f| f.contains("(2,6)")), "{:?}", report.failures());
    assert!(report.to_string().contains("failure"));
}

#[test]
fn a_witness_that_does_not_hold_fails_its_claim() {
    // The degree-one paving built for four-triangle animals lets the
    // three-triangle strip through.
    let rec = "animal T31\npolyform polyforms/T31.txt\nthreshold 1 5 inf\n\
               maker 1,1 proof proofs/T31_1_1.txt\nbreaker 1,2 paving pavings/tri_T11.txt\n\
               maker 2,5 proof proofs/T31_2_5.txt\nbreaker 2,6 surround\nmaker 3,* size\n";
    let report = run_all(&single(rec), &opts(1)).unwrap();
    assert!(!report.ok());
    let failures = report.failures();
    assert!(failures.iter().any(|f| f.contains("tri_T11")), "{failures:?}");
}

#[test]
fn missing_witness_files_fail_cleanly() {
    let rec = "animal T31\npolyform polyforms/T31.txt\nthreshold 1 5 inf\n\
               maker 1,1 proof proofs/nope.txt\nbreaker 1,2 paving pavings/tri_T21.txt\n\
               maker 2,5 proof proofs/T31_2_5.txt\nbreaker 2,6 surround\nmaker 3,* size\n";
    let report = run_all(&single(rec), &opts(1)).unwrap();
    assert!(!report.ok());
    assert!(report.failures().iter().any(|f| f.contains("nope.txt")), "{:?}", report.failures());
}
