//! Deterministic transducers with endmarker and their uniformization game.
//!
//! States are split into input states, which read the next input letter, and
//! output states, which read the next output letter. Both words end with the
//! endmarker `⊣`.

pub mod game;
pub mod profile;
pub mod transform;

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use crate::automata::{self, Dfa, Nfa};
use crate::error::{Error, Result};
use crate::words::{Alphabet, ENDMARKER};

pub use game::{build_drat_game, delay_bound, drat_uniformize, DratGame, DratOutcome};
pub use profile::{find_saturation_witness, profile, profile_mul, profile_of_word, ramsey_k, Profile, Tag};
pub use transform::{
    compose, is_consistent, lout_automaton, reduce_seq, rho_of_word, shortest_traversal, tau_of_letter, traversals,
    Transformation,
};

/// A deterministic transducer `(Q^in, Q^out, F, q0, δ)` with a total
/// transition function over `Σ ∪ {⊣}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DetTransducer {
    alphabet: Vec<char>,
    names: Vec<String>,
    is_output: Vec<bool>,
    initial: usize,
    delta: Vec<Vec<usize>>,
    finals: Vec<bool>,
}

/// Incremental construction of a [`DetTransducer`].
#[derive(Clone, Debug)]
pub struct DetBuilder {
    alphabet: Vec<char>,
    names: Vec<String>,
    is_output: Vec<bool>,
    initial: Option<usize>,
    delta: Vec<Vec<Option<usize>>>,
    finals: Vec<bool>,
}

impl DetBuilder {
    pub fn new(alphabet: &Alphabet) -> Self {
        DetBuilder {
            alphabet: alphabet.letters().to_vec(),
            names: Vec::new(),
            is_output: Vec::new(),
            initial: None,
            delta: Vec::new(),
            finals: Vec::new(),
        }
    }

    pub fn add_state(&mut self, name: impl Into<String>, is_output: bool) -> Result<usize> {
        let name = name.into();
        if self.names.contains(&name) {
            return Err(Error::InvalidArgument(format!("duplicate state {name}")));
        }
        self.names.push(name);
        self.is_output.push(is_output);
        self.delta.push(vec![None; self.alphabet.len() + 1]);
        self.finals.push(false);
        Ok(self.names.len() - 1)
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn set_initial(&mut self, q: usize) {
        self.initial = Some(q);
    }

    pub fn set_final(&mut self, q: usize) {
        self.finals[q] = true;
    }

    /// Sets `δ(src, letter) = dst`; `letter` may be the endmarker.
    pub fn set_delta(&mut self, src: usize, letter: char, dst: usize) -> Result<()> {
        let i = letter_slot(&self.alphabet, letter)?;
        if self.delta[src][i].is_some_and(|d| d != dst) {
            return Err(Error::InvalidArgument(format!("δ({}, {letter}) defined twice", self.names[src])));
        }
        self.delta[src][i] = Some(dst);
        Ok(())
    }

    /// Requires a total transition function.
    pub fn build(self) -> Result<DetTransducer> {
        let initial = self.initial.ok_or_else(|| Error::InvalidArgument("no initial state".into()))?;
        let mut delta = Vec::with_capacity(self.names.len());
        for (q, row) in self.delta.iter().enumerate() {
            let mut full = Vec::with_capacity(row.len());
            for (i, d) in row.iter().enumerate() {
                let letter = self.alphabet.get(i).copied().unwrap_or(ENDMARKER);
                full.push(d.ok_or_else(|| {
                    Error::InvalidArgument(format!("δ({}, {}) undefined", self.names[q], letter_token(letter)))
                })?);
            }
            delta.push(full);
        }
        Ok(DetTransducer {
            alphabet: self.alphabet,
            names: self.names,
            is_output: self.is_output,
            initial,
            delta,
            finals: self.finals,
        })
    }

    /// Sends every undefined transition to a fresh rejecting input state.
    pub fn build_with_sink(mut self) -> Result<DetTransducer> {
        if self.delta.iter().any(|row| row.iter().any(|d| d.is_none())) {
            let mut name = "sink".to_string();
            while self.names.contains(&name) {
                name.push('\'');
            }
            let sink = self.add_state(name, false)?;
            for row in &mut self.delta {
                for d in row.iter_mut() {
                    d.get_or_insert(sink);
                }
            }
        }
        self.build()
    }
}

fn letter_slot(alphabet: &[char], letter: char) -> Result<usize> {
    if letter == ENDMARKER {
        return Ok(alphabet.len());
    }
    alphabet.binary_search(&letter).map_err(|_| Error::UnknownLetter(letter.to_string()))
}

/// `end` for the endmarker, the letter otherwise.
pub fn letter_token(c: char) -> String {
    if c == ENDMARKER {
        "end".into()
    } else {
        c.to_string()
    }
}

impl DetTransducer {
    /// The letters, without the endmarker.
    pub fn alphabet(&self) -> &[char] {
        &self.alphabet
    }

    /// The letters followed by the endmarker.
    pub fn letters_with_end(&self) -> Vec<char> {
        let mut v = self.alphabet.clone();
        v.push(ENDMARKER);
        v
    }

    pub fn num_states(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, q: usize) -> &str {
        &self.names[q]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_output(&self, q: usize) -> bool {
        self.is_output[q]
    }

    pub fn is_input(&self, q: usize) -> bool {
        !self.is_output[q]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn letter_index(&self, letter: char) -> Result<usize> {
        letter_slot(&self.alphabet, letter)
    }

    /// `δ(q, letter)`; the letter may be the endmarker.
    pub fn delta(&self, q: usize, letter: char) -> Result<usize> {
        Ok(self.delta[q][self.letter_index(letter)?])
    }

    /// `δ` by letter slot (the endmarker is the last slot).
    pub fn delta_slot(&self, q: usize, slot: usize) -> usize {
        self.delta[q][slot]
    }

    /// Runs `δ*`: input states read input letters, output states read
    /// output letters, until the relevant word is exhausted. Returns the
    /// state and the unread suffixes.
    pub fn delta_star<'a>(&self, mut q: usize, mut u: &'a [char], mut v: &'a [char]) -> Result<(usize, &'a [char], &'a [char])> {
        loop {
            if self.is_input(q) {
                let Some((&a, rest)) = u.split_first() else { break };
                q = self.delta(q, a)?;
                u = rest;
            } else {
                let Some((&b, rest)) = v.split_first() else { break };
                q = self.delta(q, b)?;
                v = rest;
            }
        }
        Ok((q, u, v))
    }

    /// Membership of `(u, v)`; the endmarkers are appended here.
    pub fn accepts(&self, u: &[char], v: &[char]) -> Result<bool> {
        for w in [u, v] {
            if let Some(c) = w.iter().find(|&&c| c == ENDMARKER || self.alphabet.binary_search(&c).is_err()) {
                return Err(Error::UnknownLetter(c.to_string()));
            }
        }
        let mut ue = u.to_vec();
        ue.push(ENDMARKER);
        let mut ve = v.to_vec();
        ve.push(ENDMARKER);
        let (q, ru, rv) = self.delta_star(self.initial, &ue, &ve)?;
        Ok(ru.is_empty() && rv.is_empty() && self.finals[q])
    }

    /// An equivalent transducer that rejects any endmarker that is not the
    /// last letter of its word: states remember which words have ended.
    pub fn endmarker_normalized(&self) -> DetTransducer {
        let slots = self.alphabet.len() + 1;
        let end = self.alphabet.len();
        let mut ids: HashMap<(usize, bool, bool), usize> = HashMap::new();
        let mut keys: Vec<(usize, bool, bool)> = Vec::new();
        let mut queue = VecDeque::new();
        let start = (self.initial, false, false);
        ids.insert(start, 0);
        keys.push(start);
        queue.push_back(start);
        let mut rows: Vec<Vec<Option<(usize, bool, bool)>>> = Vec::new();
        while let Some((q, fi, fo)) = queue.pop_front() {
            let mut row = Vec::with_capacity(slots);
            for slot in 0..slots {
                let ended = if self.is_output[q] { fo } else { fi };
                if ended {
                    row.push(None);
                    continue;
                }
                let r = self.delta[q][slot];
                let next = if self.is_output[q] { (r, fi, slot == end) } else { (r, slot == end, fo) };
                if let std::collections::hash_map::Entry::Vacant(e) = ids.entry(next) {
                    e.insert(keys.len());
                    keys.push(next);
                    queue.push_back(next);
                }
                row.push(Some(next));
            }
            rows.push(row);
        }
        let mut names: Vec<String> = keys
            .iter()
            .map(|&(q, fi, fo)| match (fi, fo) {
                (false, false) => self.names[q].clone(),
                (true, false) => format!("{}.i", self.names[q]),
                (false, true) => format!("{}.o", self.names[q]),
                (true, true) => format!("{}.io", self.names[q]),
            })
            .collect();
        let mut is_output: Vec<bool> = keys.iter().map(|k| self.is_output[k.0]).collect();
        let mut finals: Vec<bool> = keys.iter().map(|&(q, fi, fo)| self.finals[q] && fi && fo).collect();
        let mut delta: Vec<Vec<usize>> =
            rows.iter().map(|row| row.iter().map(|n| n.map_or(usize::MAX, |k| ids[&k])).collect()).collect();
        if delta.iter().any(|row| row.contains(&usize::MAX)) {
            let sink = names.len();
            let mut name = "sink".to_string();
            while names.contains(&name) {
                name.push('\'');
            }
            names.push(name);
            is_output.push(false);
            finals.push(false);
            delta.push(vec![sink; slots]);
            for row in &mut delta {
                for d in row.iter_mut() {
                    if *d == usize::MAX {
                        *d = sink;
                    }
                }
            }
        }
        DetTransducer { alphabet: self.alphabet.clone(), names, is_output, initial: 0, delta, finals }
    }

    /// Automaton over `Σ ∪ {⊣}` for the input words `u⊣` that have an
    /// accepted output. Assumes an endmarker-normalized transducer.
    pub fn domain_nfa(&self) -> Nfa<char> {
        let letters = self.letters_with_end();
        let mut a = Nfa::new(letters.iter().copied());
        for q in 0..self.num_states() {
            a.add_state();
            a.set_final(q, self.finals[q]);
        }
        a.add_initial(self.initial);
        for q in 0..self.num_states() {
            for (slot, &c) in letters.iter().enumerate() {
                let r = self.delta[q][slot];
                if self.is_output[q] {
                    a.add_transition(q, Vec::new(), r);
                } else {
                    a.add_transition(q, vec![c], r);
                }
            }
        }
        a
    }

    /// Deterministic domain automaton over `Σ ∪ {⊣}`.
    pub fn domain_dfa(&self) -> Result<Dfa<char>> {
        automata::determinize(&self.endmarker_normalized().domain_nfa())
    }

    /// True iff `u` is in the domain.
    pub fn in_domain(&self, dom: &Dfa<char>, u: &[char]) -> bool {
        let mut w = u.to_vec();
        w.push(ENDMARKER);
        dom.accepts(&w)
    }

    /// A shortest word `z` with `δ*(p, ε, z) = (f, ε, ε)`, `f` final, read
    /// through output states only.
    pub fn completion(&self, p: usize) -> Option<Vec<char>> {
        let letters = self.letters_with_end();
        let mut parent: Vec<Option<(usize, char)>> = vec![None; self.num_states()];
        let mut seen = vec![false; self.num_states()];
        let mut queue = VecDeque::new();
        seen[p] = true;
        queue.push_back(p);
        while let Some(q) = queue.pop_front() {
            if self.finals[q] {
                let mut w = Vec::new();
                let mut cur = q;
                while let Some((prev, c)) = parent[cur] {
                    w.push(c);
                    cur = prev;
                }
                w.reverse();
                return Some(w);
            }
            if !self.is_output[q] {
                continue;
            }
            for (slot, &c) in letters.iter().enumerate() {
                let r = self.delta[q][slot];
                if !seen[r] {
                    seen[r] = true;
                    parent[r] = Some((q, c));
                    queue.push_back(r);
                }
            }
        }
        None
    }

    /// Graphviz rendering; output states are boxes.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{\n  rankdir=LR;", name.replace('"', "\\\""));
        for q in 0..self.num_states() {
            let shape = if self.is_output[q] { "box" } else { "circle" };
            let periph = if self.finals[q] { ", peripheries=2" } else { "" };
            let _ = writeln!(s, "  q{q} [shape={shape}{periph}, label=\"{}\"];", self.names[q].replace('"', "\\\""));
        }
        let _ = writeln!(s, "  init [shape=point];\n  init -> q{};", self.initial);
        let letters = self.letters_with_end();
        for q in 0..self.num_states() {
            let mut by_dst: Vec<(usize, Vec<char>)> = Vec::new();
            for (slot, &c) in letters.iter().enumerate() {
                let r = self.delta[q][slot];
                match by_dst.iter_mut().find(|(d, _)| *d == r) {
                    Some((_, cs)) => cs.push(c),
                    None => by_dst.push((r, vec![c])),
                }
            }
            for (r, cs) in by_dst {
                let label: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(s, "  q{q} -> q{r} [label=\"{}\"];", label.join(","));
            }
        }
        s.push_str("}\n");
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    fn w(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    #[test]
    fn lookahead_example_relation() {
        let t = library::r1_transducer(&['a', 'b', 'c', 'd']).unwrap();
        assert!(t.accepts(&w("ab#cd#ab"), &w("cdba")).unwrap());
        assert!(!t.accepts(&w("ab#cd#ab"), &w("ce")).unwrap_or(false));
        assert!(!t.accepts(&w("ab#cd#ab"), &w("dc")).unwrap());
        assert!(!t.accepts(&w("abcd"), &w("")).unwrap());
    }

    #[test]
    fn delta_star_runs_to_the_end() {
        let t = library::r1_transducer(&['a', 'b']).unwrap();
        let (u, v) = (w("ab#b#⊣"), w("b⊣"));
        let (q, ru, rv) = t.delta_star(t.initial(), &u, &v).unwrap();
        assert!(ru.is_empty() && rv.is_empty() && t.is_final(q));
        let b = w("b");
        let (q, u, v) = t.delta_star(t.initial(), &[], &b).unwrap();
        assert_eq!((q, u.len(), v.len()), (t.initial(), 0, 1));
    }

    #[test]
    fn delta_star_composes() {
        let t = library::r1_transducer(&['a', 'b']).unwrap();
        let (u, v) = (w("ab#a"), w("a"));
        let (r, u1, v1) = t.delta_star(t.initial(), &u, &v).unwrap();
        assert!(u1.is_empty() && v1.is_empty());
        let (q, ..) = t.delta_star(r, &w("#b⊣"), &w("⊣")).unwrap();
        let (q2, ..) = t.delta_star(t.initial(), &w("ab#a#b⊣"), &w("a⊣")).unwrap();
        assert_eq!(q, q2);
    }

    #[test]
    fn normalization_preserves_relation() {
        let t = library::r1_transducer(&['a', 'b']).unwrap();
        let n = t.endmarker_normalized();
        let sigma = Alphabet::new(['a', 'b', '#']).unwrap();
        for u in sigma.words_up_to(4) {
            for v in Alphabet::new(['a', 'b']).unwrap().words_up_to(2) {
                assert_eq!(t.accepts(&u, &v).unwrap(), n.accepts(&u, &v).unwrap());
            }
        }
    }

    #[test]
    fn domain_automaton() {
        let t = library::r1_transducer(&['a', 'b']).unwrap();
        let dom = t.domain_dfa().unwrap();
        assert!(t.in_domain(&dom, &w("a#b#")));
        assert!(!t.in_domain(&dom, &w("a#b")));
        assert!(!t.in_domain(&dom, &w("##⊣")));
    }

    #[test]
    fn completion_word() {
        let t = library::r1_transducer(&['a', 'b']).unwrap();
        let d = t.state_index("D").unwrap();
        assert_eq!(t.completion(d), Some(vec![ENDMARKER]));
        assert_eq!(t.completion(t.initial()), None);
    }

    #[test]
    fn partial_delta_is_rejected() {
        let mut b = DetBuilder::new(&Alphabet::new(['a']).unwrap());
        let q = b.add_state("q", false).unwrap();
        b.set_initial(q);
        b.set_delta(q, 'a', q).unwrap();
        assert!(b.clone().build().is_err());
        assert_eq!(b.build_with_sink().unwrap().num_states(), 2);
    }
}
