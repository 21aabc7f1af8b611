use std::collections::BTreeMap;

use lyndon_core::factorize::{factorization_tree, right_factor_len};
use lyndon_core::runs_blocks::{
    classify_good, decompose_blocks, decompose_slice, permute_blocks, run_stats, BlockParams, GoodCondition,
    RightFactorCase,
};
use lyndon_core::sampling::{sample_lyndon, LyndonSampler, RngState};
use lyndon_core::stats::{montecarlo_r, MonteCarloConfig};
use lyndon_core::words::{Alphabet, Word};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::Rng;

#[test]
fn tree_leaves_spell_the_word() {
    let mut rng = RngState::new(1, 0);
    for _ in 0..1_000 {
        let n = rng.rng().random_range(1..=200);
        let q = rng.rng().random_range(2..=4);
        let w = sample_lyndon(n, Alphabet::new(q).unwrap(), &mut rng);
        let tree = factorization_tree(&w).unwrap();
        let leaves = tree.leaves();
        assert_eq!(leaves.len(), n);
        let spelled: Vec<u8> = leaves.iter().flat_map(|l| l.letters().to_vec()).collect();
        assert_eq!(spelled, w.letters());
        assert_eq!(tree.node_count(), 2 * n - 1);
    }
}

proptest! {
    #[test]
    fn blocks_partition_any_word(letters in prop::collection::vec(0u8..3, 1..300), eps in 0.05f64..0.9) {
        let params = BlockParams::new(letters.len().max(2), 3, eps).unwrap();
        let d = decompose_slice(&letters, &params);
        prop_assert_eq!(d.blocks.iter().map(|b| b.len).sum::<usize>(), letters.len());
        let mut pos = 0;
        for b in &d.blocks {
            prop_assert_eq!(b.start, pos);
            prop_assert!(b.len > 0);
            pos = b.end();
        }
    }

    #[test]
    fn small_overrides_partition_lyndon_words(seed in any::<u64>(), n in 20usize..400) {
        let mut rng = RngState::new(seed, 0);
        let w = sample_lyndon(n, Alphabet::BINARY, &mut rng);
        let params = BlockParams::new(n, 2, 0.2).unwrap().with_min_run(2).with_min_block_len(6);
        let d = decompose_blocks(&w, &params);
        let joined: Vec<u8> = d.blocks.iter().flat_map(|b| b.letters(w.letters()).to_vec()).collect();
        prop_assert_eq!(joined, w.letters().to_vec());
    }
}

/// Draws `count` good Lyndon words.
fn good_words(n: usize, q: usize, params: &BlockParams, count: usize, rng: &mut RngState) -> Vec<Word> {
    let alphabet = Alphabet::new(q).unwrap();
    let mut sampler = LyndonSampler::new(n, alphabet);
    let mut out = Vec::new();
    while out.len() < count {
        let w = Word::new(sampler.draw(rng).0.to_vec(), alphabet).unwrap();
        if classify_good(&w, params).unwrap().is_good {
            out.push(w);
        }
    }
    out
}

#[test]
fn block_permutations_keep_lyndon_and_block_family() {
    // Permuting can bring two long blocks closer than the separation bound, so
    // only that condition may fail on the output.
    for q in [2, 3] {
        let n = 2_000;
        let params = BlockParams::new(n, q, 0.25).unwrap();
        let mut rng = RngState::new(20 + q as u64, 0);
        let mut separation_only = 0;
        for w in good_words(n, q, &params, 100, &mut rng) {
            let d = decompose_blocks(&w, &params);
            let family = d.block_multiset(w.letters());
            let mut sigma: Vec<usize> = (1..d.block_count()).collect();
            for _ in 0..100 {
                sigma.shuffle(rng.rng());
                let y = permute_blocks(&w, &sigma, &params).unwrap();
                assert!(y.is_lyndon());
                let dy = decompose_blocks(&y, &params);
                assert_eq!(dy.block_multiset(y.letters()), family);
                assert_eq!(dy.long_count, d.long_count);
                let report = classify_good(&y, &params).unwrap();
                if !report.is_good {
                    assert_eq!(report.failed_conditions, [GoodCondition::Separation]);
                    separation_only += 1;
                }
            }
        }
        assert!(separation_only < 2_000, "q={q}: {separation_only}");
    }
}

#[test]
fn good_blocks_are_short() {
    let n = 10_000;
    let params = BlockParams::new(n, 2, 0.2).unwrap();
    let bound = 7.0 * (n as f64).log2();
    let mut rng = RngState::new(3, 0);
    for w in good_words(n, 2, &params, 200, &mut rng) {
        let d = decompose_blocks(&w, &params);
        assert!(d.blocks.iter().all(|b| (b.len as f64) <= bound));
    }
}

#[test]
fn right_factor_dichotomy_on_good_words() {
    let n = 10_000;
    let params = BlockParams::new(n, 2, 0.2).unwrap();
    let mut rng = RngState::new(4, 0);
    let mut cases = BTreeMap::new();
    for w in good_words(n, 2, &params, 1_000, &mut rng) {
        let r = right_factor_len(w.letters());
        let d = decompose_blocks(&w, &params);
        let case = lyndon_core::runs_blocks::right_factor_case(w.letters(), r, &d);
        assert_ne!(case, RightFactorCase::Neither, "{w}");
        if case == RightFactorCase::SecondSmallestBlock {
            assert_eq!(d.offset_before_j0(), Some(n - r));
        }
        *cases.entry(format!("{case:?}")).or_insert(0) += 1;
    }
    assert_eq!(cases.len(), 2, "{cases:?}");
}

#[test]
fn atom_class_in_every_draw() {
    for q in [2, 3, 4] {
        let r = montecarlo_r(&MonteCarloConfig::new(1_000, q, 2_000, 5)).unwrap();
        assert_eq!(r.atom_class_violations, 0);
    }
}

#[test]
fn dichotomy_holds_once_two_long_blocks_are_forced() {
    // With H = 1 the right factor can start at a unit absorbed into the first
    // long block; h_lo > 1 rules that out.
    for q in [2, 3] {
        let r = montecarlo_r(&MonteCarloConfig::new(10_000, q, 1_000, 15)).unwrap();
        assert!(r.params.h_lo > 1.0);
        assert_eq!(r.ambiguous_second_block, 0);
        assert_eq!(r.dichotomy_violations, 0);
        assert_eq!(r.dn_mismatches, 0);
    }
}

#[test]
fn workers_change_streams_but_stay_deterministic() {
    let cfg = MonteCarloConfig::new(1_000, 2, 999, 6);
    let one = montecarlo_r(&cfg).unwrap();
    let four = montecarlo_r(&cfg.workers(4)).unwrap();
    assert_eq!(four, montecarlo_r(&cfg.workers(4)).unwrap());
    assert_eq!(one.sample_count, four.sample_count);
    assert!((one.atom_freq - four.atom_freq).abs() < 0.1);
}

#[test]
fn transfer_from_words_to_lyndon_words() {
    // Exact over all 2^16 words: P_Lyndon(M^a >= k) against the uniform-word
    // probability that the canonical rotation has M^a >= k.
    let n = 16;
    let mut lyndon_hits = vec![0u64; n + 1];
    let mut preimage_hits = vec![0u64; n + 1];
    let mut lyndon_total = 0u64;
    for code in 0u32..(1 << n) {
        let letters: Vec<u8> = (0..n).map(|i| ((code >> i) & 1) as u8).collect();
        let w = Word::new(letters, Alphabet::BINARY).unwrap();
        let Ok(rho) = w.canonical_rotation() else { continue };
        let ma = run_stats(rho.letters()).max_run_smallest;
        let lyndon = w.is_lyndon();
        lyndon_total += u64::from(lyndon);
        for k in 0..=ma {
            preimage_hits[k] += 1;
            lyndon_hits[k] += u64::from(lyndon);
        }
    }
    let bound = 2f64.powf(-(n as f64) / 2.0 + 2.0);
    for k in 0..=n {
        let p_lyndon = lyndon_hits[k] as f64 / lyndon_total as f64;
        let p_words = preimage_hits[k] as f64 / (1u64 << n) as f64;
        assert!((p_lyndon - p_words).abs() <= bound, "k={k}: {p_lyndon} vs {p_words}");
    }
}
