//! Cross-module invariants checked on randomized inputs.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use feec4d::geometry::{CellKind, RefCell};
use feec4d::rational::q;
use feec4d::tabulate::{reproduces, tabulate, TabulationFile};
use feec4d::verify::{canonical_space, random_form, random_map};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pullback_commutes_with_d(seed in any::<u64>(), prism in any::<bool>(), s in 0usize..4) {
        let kind = if prism { CellKind::TetPrism } else { CellKind::Pentatope };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_map(&mut rng, kind);
        let w = random_form(&mut rng, s);
        prop_assert_eq!(m.pullback(&w).d().unwrap(), m.pullback(&w.d().unwrap()));
    }

    #[test]
    fn d_maps_into_next_space(seed in any::<u64>(), prism in any::<bool>(), s in 0usize..4, k in 1i64..3) {
        use rand::Rng;
        let cell = if prism { CellKind::TetPrism } else { CellKind::Pentatope };
        let v = canonical_space(cell, k, s).unwrap();
        let next = canonical_space(cell, k, s + 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut w = feec4d::form::FormPoly::zero(4, s);
        for b in v.basis() {
            w = &w + &b.scale(&q(rng.gen_range(-5..=5), rng.gen_range(1..=3)));
        }
        prop_assert!(next.contains(&w.d().unwrap()));
    }

    #[test]
    fn tabulation_round_trips(m in 1u32..4, s in 0usize..5, prism in any::<bool>()) {
        let cell = if prism { CellKind::TetPrism } else { CellKind::Pentatope };
        let pts = RefCell::new(cell).lattice(m);
        let t = tabulate(cell, s, 1, &pts).unwrap();
        let back = TabulationFile::from_json(&t.to_json()).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert!(reproduces(&back).unwrap());
        prop_assert_eq!(TabulationFile::rows_from_csv(&t.to_csv()).unwrap(), t.rows);
    }
}
