use wonderful::verify::run_suite;

#[test]
fn core_suite_passes() {
    let checks = run_suite("core").unwrap();
    for c in &checks {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
    assert!(checks.len() >= 8);
}

#[test]
fn unknown_suite_is_an_input_error() {
    assert!(run_suite("everything").unwrap_err().is_input());
}
