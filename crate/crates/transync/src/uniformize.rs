//! Sequential uniformizers modulo a resynchronizer, synthesized by a safety game.
//!
//! Let `B` be the determinized image of the synchronization language under
//! the resynchronizer and `D` the determinized domain automaton. Input picks
//! the next letter or ends the word; Output answers with an output burst that
//! keeps `B` alive, and after the end must bring `B` into an accepting state.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::automata::{self, Dfa};
use crate::error::{Error, Result};
use crate::game::{self, Owner, SafetyGame, Solution};
use crate::resync::Resynchronizer;
use crate::transducer::{SequentialTransducer, Transducer};
use crate::words::{Alphabet, SyncLetter, ENDMARKER};

/// Which output bursts Output may play.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BurstPolicy {
    /// One shortest (then least) burst per reachable state of `B`.
    LoopFree,
    /// Every burst of length at most the bound.
    MaxLen(usize),
}

/// The reachable part of the uniformization game.
#[derive(Clone, Debug)]
pub struct UniformizationGame {
    pub game: SafetyGame,
    pub alphabet: Alphabet,
    pub image_states: usize,
    pub domain_states: usize,
    win_sink: usize,
}

impl UniformizationGame {
    pub fn solve(&self) -> Solution {
        game::solve_safety(&self.game)
    }

    /// The uniformizer given by a winning strategy.
    pub fn extract(&self, sol: &Solution) -> Result<SequentialTransducer> {
        let sink = self.win_sink;
        game::extract_sequential(&self.game, sol, self.alphabet.letters(), |v| (v == sink).then(Vec::new))
    }
}

fn shared_alphabet(t: &Transducer<char>) -> Result<Alphabet> {
    Alphabet::new(t.alphabet().iter().copied())
}

/// Bursts from `b`: output words leading to live states of `b_dfa`.
fn bursts(b_dfa: &Dfa<SyncLetter>, live: &[bool], sigma: &Alphabet, b: usize, policy: BurstPolicy) -> Vec<(Vec<char>, usize)> {
    let step = |q: usize, c: char| b_dfa.step(q, SyncLetter::output(c)).expect("output letter in alphabet");
    let mut out = Vec::new();
    match policy {
        BurstPolicy::LoopFree => {
            let mut seen = vec![false; b_dfa.num_states()];
            let mut queue = VecDeque::new();
            seen[b] = true;
            queue.push_back((b, Vec::new()));
            while let Some((q, w)) = queue.pop_front() {
                if live[q] {
                    out.push((w.clone(), q));
                }
                for &c in sigma.letters() {
                    let r = step(q, c);
                    if !seen[r] && live[r] {
                        seen[r] = true;
                        let mut w2 = w.clone();
                        w2.push(c);
                        queue.push_back((r, w2));
                    }
                }
            }
        }
        BurstPolicy::MaxLen(n) => {
            for w in sigma.words_up_to(n) {
                let r = w.iter().fold(b, |q, &c| step(q, c));
                if live[r] {
                    out.push((w, r));
                }
            }
        }
    }
    out
}

/// Builds the reachable game from the initial vertex.
pub fn build_uniformization_game(t: &Transducer<char>, s: &Resynchronizer, policy: BurstPolicy) -> Result<UniformizationGame> {
    let sigma = shared_alphabet(t)?;
    let image = s.apply(&t.underlying_automaton())?.with_alphabet(sigma.sync_letters());
    let b_dfa = automata::determinize(&image)?;
    let d_dfa = automata::determinize(&t.domain_automaton().with_alphabet(sigma.letters().iter().copied()))?;
    let b_live = b_dfa.live();
    let d_live = d_dfa.live();
    let mut g = SafetyGame::new();
    let win_sink = g.add_vertex(Owner::Input, "win", false);
    g.add_edge(win_sink, win_sink, Vec::new());
    let mut inputs: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut input_vertex = |g: &mut SafetyGame, queue: &mut VecDeque<(usize, usize)>, b: usize, d: usize| -> usize {
        *inputs.entry((b, d)).or_insert_with(|| {
            queue.push_back((b, d));
            g.add_vertex(Owner::Input, format!("b{b},d{d}"), !b_live[b] && d_live[d])
        })
    };
    g.initial = input_vertex(&mut g, &mut queue, b_dfa.initial(), d_dfa.initial());
    let mut burst_cache: HashMap<usize, Vec<(Vec<char>, usize)>> = HashMap::new();
    while let Some((b, d)) = queue.pop_front() {
        let v = input_vertex(&mut g, &mut queue, b, d);
        if g.bad[v] {
            continue;
        }
        for &a in sigma.letters() {
            let d2 = d_dfa.step(d, a).expect("letter in alphabet");
            if !d_live[d2] {
                continue;
            }
            let b2 = b_dfa.step(b, SyncLetter::input(a)).expect("input letter in alphabet");
            let o = g.add_vertex(Owner::Output, format!("b{b2},d{d2},{a}"), false);
            g.add_edge(v, o, vec![a]);
            if !b_live[b2] {
                continue;
            }
            let options = burst_cache.entry(b2).or_insert_with(|| bursts(&b_dfa, &b_live, &sigma, b2, policy)).clone();
            for (w, r) in options {
                let target = input_vertex(&mut g, &mut queue, r, d2);
                g.add_edge(o, target, w);
            }
        }
        if d_dfa.is_final(d) {
            let o = g.add_vertex(Owner::Output, format!("b{b},d{d},{ENDMARKER}"), false);
            g.add_edge(v, o, vec![ENDMARKER]);
            if b_live[b] {
                let options = burst_cache.entry(b).or_insert_with(|| bursts(&b_dfa, &b_live, &sigma, b, policy)).clone();
                let mut targets = BTreeSet::new();
                for (w, r) in options {
                    if b_dfa.is_final(r) && targets.insert(w.clone()) {
                        g.add_edge(o, win_sink, w);
                    }
                }
            }
        }
    }
    Ok(UniformizationGame {
        game: g,
        alphabet: sigma,
        image_states: b_dfa.num_states(),
        domain_states: d_dfa.num_states(),
        win_sink,
    })
}

/// Checks `L(u) ⊆ S(L(t))` and `dom(u) = dom(t)`.
pub fn verify_uniformizer(u: &Transducer<char>, t: &Transducer<char>, s: &Resynchronizer) -> Result<bool> {
    let image = s.apply(&t.underlying_automaton())?;
    if !automata::includes(&u.underlying_automaton(), &image)?.holds() {
        return Ok(false);
    }
    let du = u.domain_automaton();
    let dt = t.domain_automaton();
    Ok(automata::includes(&du, &dt)?.holds() && automata::includes(&dt, &du)?.holds())
}

/// A solved game and, when Output wins, the verified uniformizer.
#[derive(Clone, Debug)]
pub struct Synthesis {
    pub game: UniformizationGame,
    pub solution: Solution,
    pub uniformizer: Option<SequentialTransducer>,
}

/// Solves the game and extracts a uniformizer; a failed self-check is an error.
pub fn synthesize(t: &Transducer<char>, s: &Resynchronizer, policy: BurstPolicy) -> Result<Synthesis> {
    let game = build_uniformization_game(t, s, policy)?;
    let solution = game.solve();
    let uniformizer = if solution.initial_winning(&game.game) {
        let u = game.extract(&solution)?;
        if !verify_uniformizer(u.transducer(), t, s)? {
            return Err(Error::SelfCheck("synthesized uniformizer fails verification".into()));
        }
        Some(u)
    } else {
        None
    };
    Ok(Synthesis { game, solution, uniformizer })
}

/// A sequential uniformizer of `t` modulo `s`, if one exists.
pub fn seq_s_uniformizable(t: &Transducer<char>, s: &Resynchronizer) -> Result<Option<SequentialTransducer>> {
    Ok(synthesize(t, s, BurstPolicy::LoopFree)?.uniformizer)
}
