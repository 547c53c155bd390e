use lzcrystal::acceptance::{run, CriterionReport, SuiteConfig};

fn check(id: u8) {
    let report: CriterionReport = run(id, &SuiteConfig::default());
    println!("{report}");
    assert!(report.passed, "{report}");
}

#[test]
fn criterion_01_crystal_axioms() {
    check(1);
}

#[test]
fn criterion_02_kr_census() {
    check(2);
}

#[test]
fn criterion_03_tensor_conventions() {
    check(3);
}

#[test]
fn criterion_04_weyl_relations() {
    check(4);
}

#[test]
fn criterion_05_translation_word() {
    check(5);
}

#[test]
fn criterion_06_extremality() {
    check(6);
}

#[test]
fn criterion_07_connectivity() {
    check(7);
}

#[test]
fn criterion_08_schur_oracle() {
    check(8);
}

#[test]
fn criterion_09_index_set() {
    check(9);
}

#[test]
fn criterion_10_harness_integrity() {
    check(10);
}
