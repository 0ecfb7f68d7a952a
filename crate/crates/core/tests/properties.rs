mod common;

use codedel::codes::{ldpc_from_alist, make_rln, make_rs, to_alist};
use codedel::coupon::{
    completion_pmf, completion_pmf_exact, evolve_pmf, evolve_pmf_exact, expected_unseen,
    tradeoff, ChainSpec,
};
use codedel::delivery::{compositions, run_same_code_trial, SessionConfig, SourceState};
use codedel::lifting::{devectorize, lift_generator, vectorize};
use codedel::{BitMatrix, BitVec, Field, Matrix, Offer, RankTracker};
use num_traits::ToPrimitive;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{chain_by_enumeration, clmul_mod};

fn field_and_values(count: usize) -> impl Strategy<Value = (Field, Vec<u16>)> {
    (1u32..=12).prop_flat_map(move |m| {
        let q = 1u16 << m;
        proptest::collection::vec(0..q, count)
            .prop_map(move |v| (Field::with_degree(m).unwrap(), v))
    })
}

proptest! {
    #![proptest_config(ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn field_axioms_any_degree((f, v) in field_and_values(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        let m = f.degree();
        prop_assert_eq!(f.mul_raw(a, b), clmul_mod(a, b, f.polynomial(), m));
        prop_assert_eq!(f.mul_raw(f.mul_raw(a, b), c), f.mul_raw(a, f.mul_raw(b, c)));
        prop_assert_eq!(f.mul_raw(a, b ^ c), f.mul_raw(a, b) ^ f.mul_raw(a, c));
        if a != 0 {
            prop_assert_eq!(f.mul_raw(a, f.inv_raw(a).unwrap()), 1);
        } else {
            prop_assert!(f.inv_raw(a).is_none());
        }
    }

    #[test]
    fn vectorize_roundtrip((f, v) in field_and_values(9)) {
        let bits = vectorize(&f, &v);
        prop_assert_eq!(bits.len(), 9 * f.degree() as usize);
        prop_assert_eq!(devectorize(&f, &bits).unwrap(), v);
    }

    #[test]
    fn tracker_matches_batch_rank(
        m in 1u32..=8,
        k in 1usize..10,
        seed in any::<u64>(),
        cols in 1usize..16,
        dup in 0usize..4,
    ) {
        use rand::Rng;
        let f = Field::with_degree(m).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = f.order() as u16;
        let mut columns: Vec<Vec<u16>> = (0..cols)
            .map(|_| (0..k).map(|_| rng.gen_range(0..q)).collect())
            .collect();
        for _ in 0..dup {
            let a = rng.gen_range(0..columns.len());
            let b = rng.gen_range(0..columns.len());
            let s = rng.gen_range(0..q);
            let mixed: Vec<u16> = columns[a]
                .iter()
                .zip(&columns[b])
                .map(|(&x, &y)| x ^ f.mul_raw(s, y))
                .collect();
            columns.push(mixed);
        }
        let mut tracker = RankTracker::new(&f, k);
        for (i, col) in columns.iter().enumerate() {
            let before = tracker.rank();
            let offer = tracker.offer_column(col).unwrap();
            prop_assert_eq!(tracker.rank(), before + (offer == Offer::Novel) as usize);
            let rows: Vec<Vec<u16>> = (0..k)
                .map(|r| columns[..=i].iter().map(|c| c[r]).collect())
                .collect();
            prop_assert_eq!(tracker.rank(), Matrix::from_rows(&f, &rows).unwrap().rank());
        }
    }

    #[test]
    fn binary_tracker_matches_bit_matrix(rows in 1usize..80, cols in 1usize..80, seed in any::<u64>()) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let density = rng.gen_range(0.05..0.6);
        let columns: Vec<BitVec> = (0..cols)
            .map(|_| BitVec::from_bools(&(0..rows).map(|_| rng.gen_bool(density)).collect::<Vec<_>>()))
            .collect();
        let mut tracker = RankTracker::new(&Field::binary(), rows);
        for c in &columns {
            tracker.offer_bits(c).unwrap();
        }
        prop_assert_eq!(tracker.rank(), BitMatrix::from_columns(rows, &columns).rank());
    }

    #[test]
    fn lifting_commutes_with_encoding(m in 2u32..=8, seed in any::<u64>(), rs in any::<bool>()) {
        use rand::Rng;
        let f = Field::with_degree(m).unwrap();
        let n = (f.order()).min(12);
        let k = n / 2;
        let code = if rs { make_rs(n, k, &f).unwrap() } else { make_rln(n, k, &f, seed).unwrap() };
        let lifted = lift_generator(&code);
        prop_assert_eq!(lifted.lifted_generator().rank(), k * m as usize);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u: Vec<u16> = (0..k).map(|_| rng.gen_range(0..f.order() as u16)).collect();
        let c = code.encode(&u).unwrap();
        prop_assert_eq!(lifted.encode_bits(&vectorize(&f, &u)).unwrap(), vectorize(&f, &c));
    }

    #[test]
    fn chain_invariants(n in 1usize..40, s in 1usize..6, k_frac in 0.0f64..1.0) {
        let spec = ChainSpec::new(n, s).unwrap();
        let pmfs = evolve_pmf(&spec);
        prop_assert_eq!(pmfs.len(), n * s + 1);
        let mut prev_mean = n as f64 + 1.0;
        for pmf in &pmfs {
            prop_assert!((pmf.total() - 1.0).abs() < 1e-12);
            prop_assert!(pmf.probs.iter().all(|&p| p >= 0.0));
            let e = expected_unseen(pmf.step, &spec).unwrap();
            prop_assert!((pmf.mean() - e).abs() < 1e-9);
            prop_assert!(pmf.mean() <= prev_mean);
            prev_mean = pmf.mean();
        }
        prop_assert!((pmfs.last().unwrap().probs[0] - 1.0).abs() < 1e-12);
        let k = 1 + ((n - 1) as f64 * k_frac) as usize;
        let completion = completion_pmf(&ChainSpec::with_k(n, s, k).unwrap()).unwrap();
        prop_assert!((completion.total() - 1.0).abs() < 1e-12);
        prop_assert_eq!(completion.support_start(), Some(k));
        prop_assert!(completion.mean() >= k as f64 - 1e-9);
    }

    #[test]
    fn exact_mode_matches_float(n in 1usize..7, s in 1usize..4, k_frac in 0.0f64..1.0) {
        let spec = ChainSpec::new(n, s).unwrap();
        for (exact, float) in evolve_pmf_exact(&spec).iter().zip(evolve_pmf(&spec)) {
            for (e, f) in exact.iter().zip(&float.probs) {
                prop_assert!((e.to_f64().unwrap() - f).abs() < 1e-13);
            }
        }
        let k = 1 + ((n - 1) as f64 * k_frac) as usize;
        let spec = ChainSpec::with_k(n, s, k).unwrap();
        let exact = completion_pmf_exact(&spec).unwrap();
        for (e, f) in exact.iter().zip(&completion_pmf(&spec).unwrap().probs) {
            prop_assert!((e.to_f64().unwrap() - f).abs() < 1e-13);
        }
    }

    #[test]
    fn tradeoff_is_bounded_and_decreasing(s in 1usize..20, sigma in 1.01f64..6.0) {
        let d = tradeoff(sigma, s).unwrap();
        let d2 = tradeoff(sigma + 0.5, s).unwrap();
        prop_assert!(d >= 1.0 - 1e-12 && d <= s as f64 + 1e-12);
        prop_assert!(d2 <= d + 1e-12);
        prop_assert!(tradeoff(sigma, s + 1).unwrap() >= d - 1e-12);
    }

    #[test]
    fn source_state_sends_each_survivor_once(n in 1usize..200, f in 0.0f64..0.99, seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut state = SourceState::new(n, f, &mut rng);
        let keep = n - (f * n as f64).floor() as usize;
        prop_assert_eq!(state.surviving().len(), keep);
        let mut sent = Vec::new();
        while let Some(s) = state.next_symbol() {
            sent.push(s);
        }
        sent.sort_unstable();
        prop_assert_eq!(&sent[..], state.surviving());
        prop_assert_eq!(state.remaining(), 0);
    }

    #[test]
    fn same_code_trial_invariants(n in 2usize..30, s in 1usize..4, k_frac in 0.0f64..1.0, t in any::<u64>()) {
        let k = 1 + ((n - 1) as f64 * k_frac) as usize;
        let cfg = SessionConfig::same_code(n, k, s);
        let r = run_same_code_trial(&cfg, t).unwrap();
        let l = r.completion_time.unwrap();
        prop_assert!(r.success);
        prop_assert!(l >= k && l <= n * s);
        prop_assert_eq!(r.per_source_counts.iter().sum::<usize>(), l);
        prop_assert_eq!(r.novel_count, k);
        prop_assert_eq!(r, run_same_code_trial(&cfg, t).unwrap());
    }

    #[test]
    fn compositions_cover_grid(parts in 1usize..4, steps in 1usize..6) {
        let step = 4;
        let total = step * steps;
        let comps = compositions(total, step, parts).unwrap();
        let expected = (1..parts).map(|i| (steps + i) as f64 / i as f64).product::<f64>().round() as usize;
        prop_assert_eq!(comps.len(), expected);
        for c in &comps {
            prop_assert_eq!(c.iter().sum::<usize>(), total);
            prop_assert!(c.iter().all(|x| x % step == 0));
        }
        let mut sorted = comps.clone();
        sorted.sort();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), comps.len());
    }

    #[test]
    fn alist_roundtrip(rows in 1usize..12, cols in 2usize..20, seed in any::<u64>()) {
        use rand::Rng;
        let f = Field::binary();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let data: Vec<Vec<u16>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_bool(0.3) as u16).collect())
            .collect();
        let h = Matrix::from_rows(&f, &data).unwrap();
        let text = to_alist(&h).unwrap();
        prop_assert_eq!(ldpc_from_alist(&text).unwrap(), h);
    }
}

#[test]
fn enumeration_oracle_small_cases() {
    for n in 1..=3 {
        for s in 1..=3 {
            let (unseen, completion) = chain_by_enumeration(n, s);
            let spec = ChainSpec::new(n, s).unwrap();
            for (pmf, row) in evolve_pmf(&spec).iter().zip(&unseen) {
                for (a, b) in pmf.probs.iter().zip(row) {
                    assert!((a - b).abs() < 1e-12);
                }
            }
            for k in 1..=n {
                let pmf = completion_pmf(&ChainSpec::with_k(n, s, k).unwrap()).unwrap();
                for (a, b) in pmf.probs.iter().zip(&completion[k]) {
                    assert!((a - b).abs() < 1e-12, "n={n} S={s} k={k}");
                }
            }
        }
    }
}
