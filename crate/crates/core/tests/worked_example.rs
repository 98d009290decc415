use algzero::fixtures::run_all;

#[test]
fn every_fixture_check_passes() {
    for c in run_all(0) {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
}

#[test]
fn fixture_run_is_deterministic() {
    assert_eq!(run_all(3), run_all(3));
}
