mod common;

/// Set `UPDATE_GOLDEN=1` to rewrite the expected files.
#[test]
fn every_subcommand_matches_its_golden_file() {
    let mismatched = common::golden_mismatches(std::env::var("UPDATE_GOLDEN").is_ok());
    assert!(mismatched.is_empty(), "golden mismatch: {mismatched:?}");
}

#[test]
fn every_subcommand_has_a_case() {
    assert_eq!(common::uncovered_subcommands(), Vec::<String>::new());
}
