//! Resynchronizers, the k-delay construction and the deciders modulo a resynchronizer.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;

use crate::automata::{self, Inclusion, Nfa};
use crate::error::{Error, Result};
use crate::transducer::Transducer;
use crate::words::{self, Alphabet, Color, FreeGroupWord, Generator, Lag, SyncLetter, SyncWord};

/// Largest k at which the finite-valued inclusion decision is attempted.
pub const DEFAULT_K_CAP: u64 = 32;

/// A relation on synchronization words that contains the identity and
/// preserves the underlying (input, output) pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Resynchronizer {
    /// Given by a transducer over the colored alphabet.
    Rational(Transducer<SyncLetter>),
    /// Relates all equivalent words. Not rational; no operation supports it.
    Universal,
}

impl Resynchronizer {
    /// The one-state copy transducer.
    pub fn identity(alphabet: &Alphabet) -> Self {
        let mut t = Transducer::new(alphabet.sync_letters());
        let q = t.add_state("id");
        t.set_initial(q);
        t.set_final(q, Vec::new());
        for s in alphabet.sync_letters() {
            t.add_transition(q, vec![s], vec![s], q);
        }
        Resynchronizer::Rational(t)
    }

    pub fn carrier(&self) -> Result<&Transducer<SyncLetter>> {
        match self {
            Resynchronizer::Rational(t) => Ok(t),
            Resynchronizer::Universal => Err(Error::UniversalUnsupported),
        }
    }

    /// The image `S(L)` of a synchronization language.
    pub fn apply(&self, l: &Nfa<SyncLetter>) -> Result<Nfa<SyncLetter>> {
        let c = self.carrier()?;
        let l = automata::letterize(l);
        let mut succ: HashMap<(usize, SyncLetter), Vec<usize>> = HashMap::new();
        for e in l.edges() {
            succ.entry((e.src, e.label[0])).or_default().push(e.dst);
        }
        let step_word = |q: usize, w: &[SyncLetter]| -> Vec<usize> {
            let mut set = vec![q];
            for x in w {
                let mut next: Vec<usize> = set.iter().flat_map(|&p| succ.get(&(p, *x)).into_iter().flatten().copied()).collect();
                next.sort_unstable();
                next.dedup();
                set = next;
            }
            set
        };
        let mut by_src = vec![Vec::new(); c.num_states()];
        for e in c.edges() {
            by_src[e.src].push(e);
        }
        let mut out = Nfa::new(c.alphabet().iter().chain(l.alphabet()).copied());
        let sink = out.add_state();
        out.set_final(sink, true);
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut intern = |pair: (usize, usize), out: &mut Nfa<SyncLetter>, queue: &mut VecDeque<(usize, usize)>| {
            *ids.entry(pair).or_insert_with(|| {
                queue.push_back(pair);
                out.add_state()
            })
        };
        for &p in c.initial() {
            for &q in l.initial() {
                let id = intern((p, q), &mut out, &mut queue);
                out.add_initial(id);
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let id = intern((p, q), &mut out, &mut queue);
            if let (Some(f), true) = (c.final_output(p), l.is_final(q)) {
                out.add_transition(id, f.to_vec(), sink);
            }
            for e in &by_src[p] {
                for q2 in step_word(q, &e.input) {
                    let id2 = intern((e.dst, q2), &mut out, &mut queue);
                    out.add_transition(id, e.output.clone(), id2);
                }
            }
        }
        Ok(out)
    }

    /// Sampled check of both axioms on every sync word of length at most `max_len`.
    pub fn check_axioms(&self, alphabet: &Alphabet, max_len: usize) -> Result<bool> {
        let letters = alphabet.sync_letters();
        for w in words::words_up_to(&letters, max_len) {
            let image = self.apply(&Nfa::singleton(letters.iter().copied(), &w))?;
            if !automata::accepts(&image, &w) {
                return Ok(false);
            }
            if automata::accepted_words(&image, w.len() + 2).iter().any(|w2| !words::equivalent(&w, w2)) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Delay states: pure-sign words of length at most `k`, identity first,
/// then positive words, then inverse words, each by length and letter order.
fn delay_states(alphabet: &Alphabet, k: usize) -> Vec<FreeGroupWord> {
    let mut states = Vec::new();
    for w in alphabet.words_up_to(k) {
        states.push(FreeGroupWord::from_letters(&w));
    }
    for w in alphabet.words_up_to(k).into_iter().skip(1) {
        states.push(FreeGroupWord::from_letters(&w).invert());
    }
    states
}

fn state_name(u: &FreeGroupWord) -> String {
    format!("d[{}]", u.compact())
}

/// Outputs `v` with `reduce(v⁻¹ w)` a pure-sign word of length at most `k`,
/// paired with that word.
fn emissions(alphabet: &Alphabet, w: &FreeGroupWord, k: usize) -> Vec<(Vec<char>, FreeGroupWord)> {
    let mut out = Vec::new();
    if let Some(pos) = w.positive_letters() {
        for i in 0..=pos.len() {
            if pos.len() - i <= k {
                out.push((pos[..i].to_vec(), FreeGroupWord::from_letters(&pos[i..])));
            }
        }
        for y in alphabet.words_up_to(k).into_iter().skip(1) {
            let mut v = pos.clone();
            v.extend_from_slice(&y);
            out.push((v, FreeGroupWord::from_letters(&y).invert()));
        }
    } else if w.is_negative() {
        for y in alphabet.words_up_to(k.saturating_sub(w.len())) {
            let target = FreeGroupWord::from_letters(&y).invert().mul(w);
            if target.len() <= k {
                out.push((y, target));
            }
        }
    }
    out
}

fn build_delay(alphabet: &Alphabet, k: usize, emit_anywhere: bool) -> Transducer<SyncLetter> {
    let states = delay_states(alphabet, k);
    let index: HashMap<FreeGroupWord, usize> = states.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect();
    let mut t = Transducer::new(alphabet.sync_letters());
    for u in &states {
        let q = t.add_state(state_name(u));
        if let Some(pos) = u.positive_letters() {
            t.set_final(q, words::colored(&pos, Color::Out));
        }
    }
    t.set_initial(0);
    for (q, u) in states.iter().enumerate() {
        for &x in alphabet.letters() {
            t.add_transition(q, vec![SyncLetter::input(x)], vec![SyncLetter::input(x)], q);
        }
        for &x in alphabet.letters() {
            let w = u.mul(&FreeGroupWord::from_letters(&[x]));
            for (v, target) in emissions(alphabet, &w, k) {
                t.add_transition(q, vec![SyncLetter::output(x)], words::colored(&v, Color::Out), index[&target]);
            }
        }
        if emit_anywhere || u.is_empty() {
            for (v, target) in emissions(alphabet, u, k) {
                if !v.is_empty() {
                    t.add_transition(q, Vec::new(), words::colored(&v, Color::Out), index[&target]);
                }
            }
        }
    }
    t
}

/// The k-delay resynchronizer: relates equivalent words whose lag is at most `k`.
///
/// Besides copies and output reads, output bursts may be emitted from every
/// delay state, so the delay only has to be small at input boundaries.
pub fn build_dk(alphabet: &Alphabet, k: usize) -> Resynchronizer {
    Resynchronizer::Rational(build_delay(alphabet, k, true))
}

/// The three transition families with bursts emitted only from the
/// identity state. For `Σ = {a}`, `k = 1` this is the three-state drawing;
/// it relates fewer pairs than [`build_dk`].
pub fn build_dk_literal(alphabet: &Alphabet, k: usize) -> Transducer<SyncLetter> {
    build_delay(alphabet, k, false)
}

/// Decides `L(t1) ⊆ S(L(t2))`.
pub fn s_included(t1: &Transducer<char>, t2: &Transducer<char>, s: &Resynchronizer) -> Result<Inclusion<SyncLetter>> {
    let image = s.apply(&t2.underlying_automaton())?;
    automata::includes(&t1.underlying_automaton(), &image)
}

/// Both inclusions modulo a resynchronizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equivalence {
    pub left_in_right: Inclusion<SyncLetter>,
    pub right_in_left: Inclusion<SyncLetter>,
}

impl Equivalence {
    pub fn holds(&self) -> bool {
        self.left_in_right.holds() && self.right_in_left.holds()
    }

    /// The first counterexample, tagged with the transducer it comes from (1 or 2).
    pub fn counterexample(&self) -> Option<(u8, &[SyncLetter])> {
        if let Some(w) = self.left_in_right.counterexample() {
            return Some((1, w));
        }
        self.right_in_left.counterexample().map(|w| (2, w))
    }
}

pub fn s_equivalent(t1: &Transducer<char>, t2: &Transducer<char>, s: &Resynchronizer) -> Result<Equivalence> {
    Ok(Equivalence { left_in_right: s_included(t1, t2, s)?, right_in_left: s_included(t2, t1, s)? })
}

fn shared_alphabet(t1: &Transducer<char>, t2: &Transducer<char>) -> Result<Alphabet> {
    let mut letters: Vec<char> = t1.alphabet().iter().chain(t2.alphabet()).copied().collect();
    letters.sort_unstable();
    letters.dedup();
    Alphabet::new(letters)
}

pub fn k_included(t1: &Transducer<char>, t2: &Transducer<char>, k: usize) -> Result<Inclusion<SyncLetter>> {
    s_included(t1, t2, &build_dk(&shared_alphabet(t1, t2)?, k))
}

pub fn k_equivalent(t1: &Transducer<char>, t2: &Transducer<char>, k: usize) -> Result<Equivalence> {
    s_equivalent(t1, t2, &build_dk(&shared_alphabet(t1, t2)?, k))
}

/// The smallest lag between `w` and a synchronization of the same pair in `t`.
pub fn min_lag_to(t: &Transducer<char>, w: &[SyncLetter]) -> Lag {
    let u = words::project(w, Color::In);
    let v = words::project(w, Color::Out);
    t.synchronizations(&u, &v).iter().map(|w2| words::lag(w, w2)).min().unwrap_or(Lag::Infinite)
}

/// Sufficient k for k-inclusion when `t2` is `m`-ambiguous:
/// `4·M·|Q1|·((|Δ2|·|Q2|)^m · 2^(|Q2|·|Δ2|) + 1)`.
pub fn inclusion_bound_k(t1: &Transducer<char>, t2: &Transducer<char>, m: u32) -> Result<BigUint> {
    for t in [t1, t2] {
        if !t.is_real_time() {
            return Err(Error::NotRealTime("inclusion bound".into()));
        }
    }
    let big_m = t1.max_output_len().max(t2.max_output_len());
    Ok(inclusion_bound_formula(t1.num_states(), big_m, t2.num_states(), t2.edges().len(), m))
}

/// The bound formula on raw sizes.
pub fn inclusion_bound_formula(q1: usize, max_out: usize, q2: usize, d2: usize, m: u32) -> BigUint {
    let base = BigUint::from(d2) * BigUint::from(q2);
    let exp = BigUint::from(1u32) << (q2 * d2);
    BigUint::from(4u32) * BigUint::from(max_out) * BigUint::from(q1) * (base.pow(m) * exp + 1u32)
}

/// Outcome of the finite-valued inclusion procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundedInclusion {
    /// The bound was small enough to run the k-inclusion check.
    Decided { k: BigUint, result: Inclusion<SyncLetter> },
    /// The bound exceeds the cap; no decision was attempted.
    Infeasible { k: BigUint },
}

/// Computes the bound for `m`-ambiguous `t2` and runs k-inclusion when `k ≤ cap`.
pub fn bounded_k_inclusion(t1: &Transducer<char>, t2: &Transducer<char>, m: u32, cap: u64) -> Result<BoundedInclusion> {
    let k = inclusion_bound_k(t1, t2, m)?;
    if k > BigUint::from(cap) {
        return Ok(BoundedInclusion::Infeasible { k });
    }
    let small = k.to_u64_digits().first().copied().unwrap_or(0) as usize;
    Ok(BoundedInclusion::Decided { result: k_included(t1, t2, small)?, k })
}

/// Parses a delay-state name back to its word.
pub fn parse_delay_state(name: &str) -> Option<FreeGroupWord> {
    let inner = name.strip_prefix("d[")?.strip_suffix(']')?;
    if inner == "1" {
        return Some(FreeGroupWord::identity());
    }
    let mut gens = Vec::new();
    let mut chars = inner.chars().peekable();
    while let Some(c) = chars.next() {
        if chars.peek() == Some(&'^') {
            let rest: String = chars.by_ref().take(3).collect();
            if rest != "^-1" {
                return None;
            }
            gens.push(Generator::neg(c));
        } else {
            gens.push(Generator::pos(c));
        }
    }
    Some(FreeGroupWord::reduce(gens))
}

/// All sync words of the given length with the given image under `s`.
pub fn image_of_word(s: &Resynchronizer, alphabet: &Alphabet, w: &SyncWord) -> Result<Nfa<SyncLetter>> {
    s.apply(&Nfa::singleton(alphabet.sync_letters(), w))
}
