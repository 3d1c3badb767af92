use alexmod::fixtures::run_acceptance;

#[test]
fn acceptance_criteria() {
    let outcomes = run_acceptance();
    for o in &outcomes {
        println!("{}", o.line());
    }
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.passed).map(|o| o.index).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
