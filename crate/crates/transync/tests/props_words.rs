//! Property tests for words, delays and lag.

use proptest::prelude::*;
use transync::random;
use transync::words::{aligned_lag, del, equivalent, lag, project, Color, FreeGroupWord, Generator, Lag, SyncLetter};

fn word(max: usize) -> impl Strategy<Value = Vec<char>> {
    prop::collection::vec(prop::sample::select(vec!['a', 'b']), 0..=max)
}

fn generators() -> impl Strategy<Value = Vec<Generator>> {
    prop::collection::vec(
        (prop::sample::select(vec!['a', 'b']), any::<bool>()).prop_map(|(c, pos)| if pos { Generator::pos(c) } else { Generator::neg(c) }),
        0..12,
    )
}

proptest! {
    #[test]
    fn reduction_is_idempotent_and_shrinks(raw in generators()) {
        let r = FreeGroupWord::reduce(raw.iter().copied());
        prop_assert!(r.len() <= raw.len());
        prop_assert!(r.is_irreducible());
        prop_assert_eq!(FreeGroupWord::reduce(r.generators().iter().copied()), r);
    }

    #[test]
    fn delay_triangle_bound(u1 in word(3), u2 in word(3), u3 in word(3), v1 in word(3), v2 in word(3), v3 in word(3)) {
        let whole = del(&[u1.clone(), u2.clone(), u3.clone()].concat(), &[v1.clone(), v2.clone(), v3.clone()].concat());
        let part = del(&[u1, u2].concat(), &[v1, v2].concat());
        prop_assert!(whole.len() <= part.len() + u3.len() + v3.len());
    }

    #[test]
    fn changing_delay_never_repeats(v1 in word(3), w1 in word(3), v2 in word(3), w2 in word(3)) {
        let step = |i: usize| del(&[v1.clone(), v2.repeat(i)].concat(), &[w1.clone(), w2.repeat(i)].concat());
        prop_assume!(step(0) != step(1));
        let ds: Vec<FreeGroupWord> = (0..=5).map(step).collect();
        for i in 0..ds.len() {
            for j in i + 1..ds.len() {
                prop_assert_ne!(&ds[i], &ds[j]);
            }
        }
    }

    #[test]
    fn lag_recursion(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let ab = ['a', 'b'];
        let input = random::word(&mut rng, &ab, 3);
        let mut build = || {
            let mut out = Vec::new();
            for &a in &input {
                out.extend(random::word(&mut rng, &ab, 2).into_iter().map(SyncLetter::output));
                out.push(SyncLetter::input(a));
            }
            out.extend(random::word(&mut rng, &ab, 2).into_iter().map(SyncLetter::output));
            out
        };
        let (u, v) = (build(), build());
        let tails = (random::word(&mut rng, &ab, 2), random::word(&mut rng, &ab, 2));
        let extend = |x: &Vec<SyncLetter>, tail: &[char]| {
            let mut y = x.clone();
            y.push(SyncLetter::input('a'));
            y.extend(tail.iter().map(|&c| SyncLetter::output(c)));
            y
        };
        let last = del(&[project(&u, Color::Out), tails.0.clone()].concat(), &[project(&v, Color::Out), tails.1.clone()].concat());
        let expected = aligned_lag(&u, &v).unwrap().max(last.len());
        prop_assert_eq!(aligned_lag(&extend(&u, &tails.0), &extend(&v, &tails.1)), Some(expected));
    }

    #[test]
    fn equivalence_is_an_equivalence(seed in any::<u64>()) {
        let mut rng = random::rng(seed);
        let w = random::sync_word(&mut rng, &['a', 'b'], 6);
        let (i, o) = (project(&w, Color::In), project(&w, Color::Out));
        let w2 = random::shuffle(&mut rng, &i, &o);
        let w3 = random::shuffle(&mut rng, &i, &o);
        prop_assert!(equivalent(&w, &w));
        prop_assert!(equivalent(&w2, &w) && equivalent(&w, &w2));
        prop_assert!(equivalent(&w, &w3) && equivalent(&w2, &w3));
        prop_assert_eq!(lag(&w, &w2), lag(&w2, &w));
        prop_assert_eq!(lag(&w, &w2) == Lag::Finite(0), w == w2);
    }
}
