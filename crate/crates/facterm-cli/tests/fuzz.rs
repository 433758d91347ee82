mod common;

#[test]
fn a_thousand_malformed_inputs_never_crash() {
    let codes = common::fuzz_mutated_inputs(1000).unwrap();
    assert!(codes[1] > 0 && codes[2] > 0, "{codes:?}");
}

#[test]
fn a_thousand_odd_arguments_never_crash() {
    common::fuzz_arguments(1000).unwrap();
}
