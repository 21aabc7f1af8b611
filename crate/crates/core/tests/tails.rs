use lyndon_core::stats::tail_check_runs;

#[test]
fn run_tails_at_one_thousand() {
    let t = tail_check_runs(1_000, 2, 10_000, 11, 0.2).unwrap();
    assert!(t.freq_max_run_a_large <= 0.05, "{t:?}");
    // The small-value tail decays slowly at this size; 0.2 is the frozen
    // bound, the stricter 0.01 only holds for much larger n.
    assert!(t.freq_max_run_a_small <= 0.2, "{t:?}");
    assert!((t.mean_runs_per_letter - 0.5).abs() <= 0.01, "{t:?}");
    assert!((t.small_threshold - 0.8 * 1_000f64.log2()).abs() < 1e-9);
}

#[test]
fn small_value_tail_shrinks_with_n() {
    let a = tail_check_runs(1_000, 2, 4_000, 12, 0.2).unwrap();
    let b = tail_check_runs(10_000, 2, 4_000, 12, 0.2).unwrap();
    assert!(b.freq_max_run_a_small < a.freq_max_run_a_small, "{a:?} {b:?}");
    assert!(b.freq_runs_deviation <= a.freq_runs_deviation + 0.01);
}

#[test]
fn ternary_tails() {
    let t = tail_check_runs(2_000, 3, 4_000, 13, 0.2).unwrap();
    assert!(t.freq_max_run_a_large <= 0.05, "{t:?}");
    assert!((t.mean_runs_per_letter - 2.0 / 3.0).abs() <= 0.01, "{t:?}");
}
