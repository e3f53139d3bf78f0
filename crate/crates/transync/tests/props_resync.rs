//! Property tests for resynchronizers and uniformizer synthesis.

use proptest::prelude::*;
use transync::automata::{self, includes};
use transync::random;
use transync::resync::{build_dk, image_of_word, s_included, Resynchronizer};
use transync::uniformize::{build_uniformization_game, seq_s_uniformizable, synthesize, verify_uniformizer, BurstPolicy};
use transync::words::{equivalent, lag, project, Alphabet, Color};

const AB: [char; 2] = ['a', 'b'];

fn sigma() -> Alphabet {
    Alphabet::new(AB).unwrap()
}

fn alphabet_of(t: &transync::transducer::Transducer<char>) -> Alphabet {
    Alphabet::new(t.alphabet().iter().copied()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn delay_image_matches_lag(seed in any::<u64>(), k in 0usize..3) {
        let mut rng = random::rng(seed);
        let w = random::sync_word(&mut rng, &AB, 5);
        let w2 = random::shuffle(&mut rng, &project(&w, Color::In), &project(&w, Color::Out));
        let w3 = random::sync_word(&mut rng, &AB, 5);
        let img = image_of_word(&build_dk(&sigma(), k), &sigma(), &w).unwrap();
        for x in [w2, w3] {
            prop_assert_eq!(automata::accepts(&img, &x), equivalent(&w, &x) && lag(&w, &x).at_most(k));
        }
    }

    #[test]
    fn delay_images_grow_with_k(seed in any::<u64>(), k in 0usize..2) {
        let t = random::transducer(&mut random::rng(seed), &AB, 2, 3, 1);
        let l = t.underlying_automaton();
        let small = build_dk(&sigma(), k).apply(&l).unwrap();
        let large = build_dk(&sigma(), k + 1).apply(&l).unwrap();
        prop_assert!(includes(&small, &large).unwrap().holds());
    }

    #[test]
    fn identity_inclusion_implies_delay_inclusion(seed in any::<u64>(), k in 0usize..3) {
        let mut rng = random::rng(seed);
        let t1 = random::transducer(&mut rng, &AB, 2, 3, 1);
        let t2 = random::transducer(&mut rng, &AB, 2, 4, 1);
        for (a, b) in [(&t1, &t2), (&t1, &t1)] {
            if s_included(a, b, &Resynchronizer::identity(&sigma())).unwrap().holds() {
                prop_assert!(s_included(a, b, &build_dk(&sigma(), k)).unwrap().holds());
            }
        }
    }

    #[test]
    fn synthesized_uniformizers_verify(seed in any::<u64>()) {
        let t = random::transducer(&mut random::rng(seed), &AB, 2, 4, 1);
        let s = build_dk(&alphabet_of(&t), 1);
        let syn = synthesize(&t, &s, BurstPolicy::LoopFree).unwrap();
        if let Some(u) = syn.uniformizer {
            prop_assert!(u.transducer().is_sequential());
            prop_assert!(verify_uniformizer(u.transducer(), &t, &s).unwrap());
        }
    }

    #[test]
    fn uniformizability_grows_with_k(seed in any::<u64>()) {
        let t = random::transducer(&mut random::rng(seed), &AB, 2, 4, 1);
        let sigma = alphabet_of(&t);
        if seq_s_uniformizable(&t, &build_dk(&sigma, 0)).unwrap().is_some() {
            prop_assert!(seq_s_uniformizable(&t, &build_dk(&sigma, 1)).unwrap().is_some());
        }
    }

    #[test]
    fn longer_bursts_do_not_change_the_winner(seed in any::<u64>()) {
        let t = random::transducer(&mut random::rng(seed), &AB, 2, 4, 1);
        let s = build_dk(&alphabet_of(&t), 1);
        let base = build_uniformization_game(&t, &s, BurstPolicy::LoopFree).unwrap();
        prop_assume!(base.image_states <= 8);
        let winner = |policy| {
            let g = build_uniformization_game(&t, &s, policy).unwrap();
            g.solve().initial_winning(&g.game)
        };
        let loop_free = base.solve().initial_winning(&base.game);
        prop_assert_eq!(winner(BurstPolicy::MaxLen(base.image_states)), loop_free);
        prop_assert_eq!(winner(BurstPolicy::MaxLen(base.image_states + 2)), loop_free);
    }
}
