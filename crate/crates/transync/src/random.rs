//! Seeded generators for words, automata, transducers and games.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::Nfa;
use crate::drat::{DetBuilder, DetTransducer, Transformation};
use crate::error::Result;
use crate::game::{Owner, SafetyGame};
use crate::transducer::Transducer;
use crate::words::{Alphabet, SyncLetter, SyncWord, ENDMARKER};

/// The generator used throughout: reproducible from a seed.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A word of length `0..=max_len`.
pub fn word<R: Rng>(rng: &mut R, letters: &[char], max_len: usize) -> Vec<char> {
    let len = rng.gen_range(0..=max_len);
    word_of_len(rng, letters, len)
}

pub fn word_of_len<R: Rng>(rng: &mut R, letters: &[char], len: usize) -> Vec<char> {
    (0..len).map(|_| *letters.choose(rng).expect("nonempty alphabet")).collect()
}

/// A synchronization word of length `0..=max_len`.
pub fn sync_word<R: Rng>(rng: &mut R, letters: &[char], max_len: usize) -> SyncWord {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| {
            let a = *letters.choose(rng).expect("nonempty alphabet");
            if rng.gen_bool(0.5) {
                SyncLetter::input(a)
            } else {
                SyncLetter::output(a)
            }
        })
        .collect()
}

/// A random shuffle of `u` (input letters) and `v` (output letters).
pub fn shuffle<R: Rng>(rng: &mut R, u: &[char], v: &[char]) -> SyncWord {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::with_capacity(u.len() + v.len());
    while i < u.len() || j < v.len() {
        let take_input = j == v.len() || (i < u.len() && rng.gen_bool(0.5));
        if take_input {
            out.push(SyncLetter::input(u[i]));
            i += 1;
        } else {
            out.push(SyncLetter::output(v[j]));
            j += 1;
        }
    }
    out
}

/// A letter-labeled NFA where each possible transition is present with
/// probability `density`.
pub fn nfa<R: Rng>(rng: &mut R, letters: &[char], states: usize, density: f64) -> Nfa<char> {
    let mut a = Nfa::new(letters.iter().copied());
    for q in 0..states {
        a.add_state();
        a.set_final(q, rng.gen_bool(0.4));
    }
    a.add_initial(0);
    if states > 1 && rng.gen_bool(0.3) {
        a.add_initial(rng.gen_range(1..states));
    }
    for p in 0..states {
        for &c in letters {
            for q in 0..states {
                if rng.gen_bool(density) {
                    a.add_transition(p, vec![c], q);
                }
            }
        }
    }
    a
}

/// A real-time transducer with `edges` random transitions and outputs of
/// length at most `max_out`.
pub fn transducer<R: Rng>(rng: &mut R, letters: &[char], states: usize, edges: usize, max_out: usize) -> Transducer<char> {
    let mut t = Transducer::new(letters.iter().copied());
    for q in 0..states {
        t.add_state(format!("q{q}"));
    }
    t.set_initial(0);
    for q in 0..states {
        if rng.gen_bool(0.4) {
            let out = word(rng, letters, max_out.min(1));
            t.set_final(q, out);
        }
    }
    if !(0..states).any(|q| t.is_final(q)) {
        t.set_final(states - 1, Vec::new());
    }
    for _ in 0..edges {
        let src = rng.gen_range(0..states);
        let dst = rng.gen_range(0..states);
        let a = *letters.choose(rng).expect("nonempty alphabet");
        let out = word(rng, letters, max_out);
        t.add_transition(src, vec![a], out, dst);
    }
    t
}

/// A sequential transducer: at most one transition per state and letter.
pub fn sequential<R: Rng>(rng: &mut R, letters: &[char], states: usize, max_out: usize) -> Transducer<char> {
    let mut t = Transducer::new(letters.iter().copied());
    for q in 0..states {
        t.add_state(format!("q{q}"));
    }
    t.set_initial(0);
    for q in 0..states {
        if rng.gen_bool(0.5) {
            t.set_final(q, Vec::new());
        }
        for &a in letters {
            if rng.gen_bool(0.7) {
                let dst = rng.gen_range(0..states);
                let out = word(rng, letters, max_out);
                t.add_transition(q, vec![a], out, dst);
            }
        }
    }
    if !(0..states).any(|q| t.is_final(q)) {
        t.set_final(0, Vec::new());
    }
    t
}

/// The trimmed disjoint union of `components` sequential transducers.
pub fn union_of_unambiguous<R: Rng>(
    rng: &mut R,
    letters: &[char],
    components: usize,
    states: usize,
    max_out: usize,
) -> Transducer<char> {
    let mut t = sequential(rng, letters, states, max_out);
    for _ in 1..components {
        t = t.union(&sequential(rng, letters, states, max_out));
    }
    t.trim()
}

/// A deterministic endmarked transducer with `1..=max_states` states plus a
/// sink; state 0 is the initial input state.
pub fn det_transducer<R: Rng>(rng: &mut R, letters: &[char], max_states: usize) -> Result<DetTransducer> {
    let sigma = Alphabet::new(letters.iter().copied())?;
    let n = rng.gen_range(1..=max_states.max(1));
    let mut b = DetBuilder::new(&sigma);
    for q in 0..n {
        let output = q > 0 && rng.gen_bool(0.4);
        b.add_state(if output { format!("o{q}") } else { format!("i{q}") }, output)?;
    }
    b.set_initial(0);
    for q in 0..n {
        if rng.gen_bool(0.4) {
            b.set_final(q);
        }
        for a in letters.iter().copied().chain([ENDMARKER]) {
            if rng.gen_bool(0.85) {
                b.set_delta(q, a, rng.gen_range(0..n))?;
            }
        }
    }
    b.build_with_sink()
}

/// A transformation of `t`: each input state maps to a random state or is
/// undefined.
pub fn transformation<R: Rng>(rng: &mut R, t: &DetTransducer) -> Transformation {
    Transformation(
        (0..t.num_states())
            .map(|q| (t.is_input(q) && rng.gen_bool(0.8)).then(|| rng.gen_range(0..t.num_states()) as u32))
            .collect(),
    )
}

/// A sequence of `0..=max_len` random transformations.
pub fn transformation_seq<R: Rng>(rng: &mut R, t: &DetTransducer, max_len: usize) -> Vec<Transformation> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| transformation(rng, t)).collect()
}

/// A safety game with `vertices` vertices, each with up to `max_degree`
/// successors; about a tenth of the vertices are bad.
pub fn safety_game<R: Rng>(rng: &mut R, vertices: usize, max_degree: usize) -> SafetyGame {
    let mut g = SafetyGame::new();
    for v in 0..vertices {
        let owner = if rng.gen_bool(0.5) { Owner::Input } else { Owner::Output };
        g.add_vertex(owner, format!("v{v}"), rng.gen_bool(0.1));
    }
    for v in 0..vertices {
        for _ in 0..rng.gen_range(0..=max_degree) {
            let target = rng.gen_range(0..vertices);
            g.add_edge(v, target, Vec::new());
        }
    }
    g
}
