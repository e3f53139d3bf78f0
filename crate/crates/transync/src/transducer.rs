//! Nondeterministic finite transducers.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::automata::{self, Letter, Nfa};
use crate::error::{Error, Result};
use crate::parallel::{self, Execution};
use crate::words::{Alphabet, Color, SyncLetter};

/// A transition `(src, input, output, dst)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge<L> {
    pub src: usize,
    pub input: Vec<L>,
    pub output: Vec<L>,
    pub dst: usize,
}

/// A transducer `(Q, I, F, Δ, f)` with named states.
///
/// A state is final exactly when its final output is defined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transducer<L = char> {
    alphabet: Vec<L>,
    names: Vec<String>,
    initial: Vec<usize>,
    final_out: Vec<Option<Vec<L>>>,
    edges: Vec<Edge<L>>,
}

impl<L: Letter> Transducer<L> {
    pub fn new(alphabet: impl IntoIterator<Item = L>) -> Self {
        let mut a: Vec<L> = alphabet.into_iter().collect();
        a.sort_unstable();
        a.dedup();
        Transducer { alphabet: a, names: Vec::new(), initial: Vec::new(), final_out: Vec::new(), edges: Vec::new() }
    }

    /// Adds a state; the name must be unique.
    pub fn add_state(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        assert!(!self.names.contains(&name), "duplicate state name {name}");
        self.names.push(name);
        self.final_out.push(None);
        self.names.len() - 1
    }

    /// Adds a state named `base`, or `base'`, `base''`, ... if taken.
    pub fn add_fresh_state(&mut self, base: &str) -> usize {
        let mut name = base.to_string();
        while self.names.contains(&name) {
            name.push('\'');
        }
        self.add_state(name)
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn set_initial(&mut self, q: usize) {
        assert!(q < self.names.len(), "initial state not declared");
        if let Err(pos) = self.initial.binary_search(&q) {
            self.initial.insert(pos, q);
        }
    }

    pub fn set_final(&mut self, q: usize, output: Vec<L>) {
        self.final_out[q] = Some(output);
    }

    pub fn add_transition(&mut self, src: usize, input: Vec<L>, output: Vec<L>, dst: usize) {
        assert!(src < self.names.len() && dst < self.names.len(), "transition endpoint not declared");
        self.edges.push(Edge { src, input, output, dst });
    }

    pub fn alphabet(&self) -> &[L] {
        &self.alphabet
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

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.final_out[q].is_some()
    }

    pub fn final_output(&self, q: usize) -> Option<&[L]> {
        self.final_out[q].as_deref()
    }

    pub fn edges(&self) -> &[Edge<L>] {
        &self.edges
    }

    /// Longest output over transitions and final outputs.
    pub fn max_output_len(&self) -> usize {
        let e = self.edges.iter().map(|e| e.output.len()).max().unwrap_or(0);
        let f = self.final_out.iter().flatten().map(|w| w.len()).max().unwrap_or(0);
        e.max(f)
    }

    fn useful(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for e in &self.edges {
            succ[e.src].push(e.dst);
            pred[e.dst].push(e.src);
        }
        let fwd = reach(&succ, self.initial.iter().copied());
        let bwd = reach(&pred, (0..n).filter(|&q| self.is_final(q)));
        (0..n).map(|q| fwd[q] && bwd[q]).collect()
    }

    /// Removes states that are not both accessible and co-accessible.
    pub fn trim(&self) -> Transducer<L> {
        let keep = self.useful();
        self.restrict(&keep)
    }

    fn restrict(&self, keep: &[bool]) -> Transducer<L> {
        let mut out = Transducer::new(self.alphabet.iter().copied());
        let mut map = vec![usize::MAX; self.num_states()];
        for q in 0..self.num_states() {
            if keep[q] {
                map[q] = out.add_state(self.names[q].clone());
                out.final_out[map[q]] = self.final_out[q].clone();
            }
        }
        for &q in &self.initial {
            if keep[q] {
                out.set_initial(map[q]);
            }
        }
        for e in &self.edges {
            if keep[e.src] && keep[e.dst] {
                out.edges.push(Edge { src: map[e.src], input: e.input.clone(), output: e.output.clone(), dst: map[e.dst] });
            }
        }
        out
    }

    /// True iff every transition reads exactly one input letter.
    pub fn is_real_time(&self) -> bool {
        self.edges.iter().all(|e| e.input.len() == 1)
    }

    /// Real-time, at most one initial state, and a deterministic input automaton.
    pub fn is_sequential(&self) -> bool {
        if self.initial.len() > 1 || !self.is_real_time() {
            return false;
        }
        let mut seen = HashSet::new();
        self.edges.iter().all(|e| seen.insert((e.src, e.input[0])))
    }

    /// The input automaton of the trimmed transducer.
    pub fn domain_automaton(&self) -> Nfa<L> {
        let t = self.trim();
        let mut a = Nfa::new(self.alphabet.iter().copied());
        for q in 0..t.num_states() {
            a.add_state();
            a.set_final(q, t.is_final(q));
        }
        for &q in &t.initial {
            a.add_initial(q);
        }
        for e in &t.edges {
            a.add_transition(e.src, e.input.clone(), e.dst);
        }
        a
    }

    /// Disjoint union of two transducers.
    pub fn union(&self, other: &Transducer<L>) -> Transducer<L> {
        let mut out = Transducer::new(self.alphabet.iter().chain(other.alphabet.iter()).copied());
        let offset = self.num_states();
        for (t, tag) in [(self, "1"), (other, "2")] {
            for q in 0..t.num_states() {
                let id = out.add_state(format!("{}.{}", tag, t.names[q]));
                out.final_out[id] = t.final_out[q].clone();
            }
        }
        for &q in &self.initial {
            out.set_initial(q);
        }
        for &q in &other.initial {
            out.set_initial(q + offset);
        }
        out.edges = self.edges.clone();
        out.edges.extend(other.edges.iter().map(|e| Edge {
            src: e.src + offset,
            input: e.input.clone(),
            output: e.output.clone(),
            dst: e.dst + offset,
        }));
        out
    }

    /// An equivalent transducer whose transitions all read one input letter.
    ///
    /// Fails if the trimmed transducer has a cycle of ε-input transitions that
    /// produces output.
    pub fn to_real_time(&self) -> Result<Transducer<L>> {
        let t = self.trim();
        let mut split = Transducer::new(t.alphabet.iter().copied());
        for q in 0..t.num_states() {
            split.add_state(t.names[q].clone());
            split.final_out[q] = t.final_out[q].clone();
        }
        split.initial = t.initial.clone();
        for e in &t.edges {
            if e.input.len() <= 1 {
                split.edges.push(e.clone());
                continue;
            }
            let mut prev = e.src;
            for (i, &a) in e.input.iter().enumerate() {
                let next = if i + 1 == e.input.len() {
                    e.dst
                } else {
                    split.add_fresh_state(&format!("{}~{}", t.names[e.src], i + 1))
                };
                let out = if i == 0 { e.output.clone() } else { Vec::new() };
                split.edges.push(Edge { src: prev, input: vec![a], output: out, dst: next });
                prev = next;
            }
        }
        let n = split.num_states();
        let mut eps: Vec<Vec<(usize, &[L])>> = vec![Vec::new(); n];
        for e in split.edges.iter().filter(|e| e.input.is_empty()) {
            eps[e.src].push((e.dst, &e.output));
        }
        let eps_succ: Vec<Vec<usize>> = eps.iter().map(|v| v.iter().map(|x| x.0).collect()).collect();
        for e in split.edges.iter().filter(|e| e.input.is_empty() && !e.output.is_empty()) {
            if reach(&eps_succ, std::iter::once(e.dst))[e.src] {
                return Err(Error::NotRealTimeConvertible(format!(
                    "ε-input cycle through state {} produces output",
                    split.names[e.src]
                )));
            }
        }
        let closure: Vec<Vec<(usize, Vec<L>)>> = (0..n).map(|p| eps_outputs(&eps, p)).collect();
        let mut out = Transducer::new(split.alphabet.iter().copied());
        for q in 0..n {
            out.add_state(split.names[q].clone());
            out.final_out[q] = split.final_out[q].clone();
        }
        let letter_edges: Vec<&Edge<L>> = split.edges.iter().filter(|e| !e.input.is_empty()).collect();
        let mut seen = HashSet::new();
        let mut push = |out: &mut Transducer<L>, e: Edge<L>| {
            if seen.insert(e.clone()) {
                out.edges.push(e);
            }
        };
        for e in &letter_edges {
            for (r, w) in &closure[e.dst] {
                let mut o = e.output.clone();
                o.extend_from_slice(w);
                push(&mut out, Edge { src: e.src, input: e.input.clone(), output: o, dst: *r });
            }
        }
        let start = out.add_fresh_state("rt.start");
        out.set_initial(start);
        let mut empty_outputs: BTreeSet<Vec<L>> = BTreeSet::new();
        for &i in &split.initial {
            for (q, w0) in &closure[i] {
                if let Some(f) = &split.final_out[*q] {
                    let mut o = w0.clone();
                    o.extend_from_slice(f);
                    empty_outputs.insert(o);
                }
                for e in letter_edges.iter().filter(|e| e.src == *q) {
                    for (r, w) in &closure[e.dst] {
                        let mut o = w0.clone();
                        o.extend_from_slice(&e.output);
                        o.extend_from_slice(w);
                        push(&mut out, Edge { src: start, input: e.input.clone(), output: o, dst: *r });
                    }
                }
            }
        }
        for o in empty_outputs {
            let s = out.add_fresh_state("rt.empty");
            out.set_initial(s);
            out.set_final(s, o);
        }
        Ok(out.trim())
    }

    /// All outputs `v` with `(u, v)` in the relation and `|v| ≤ max_out_len`.
    pub fn enumerate_outputs(&self, u: &[L], max_out_len: usize) -> BTreeSet<Vec<L>> {
        let mut results = BTreeSet::new();
        let mut seen: HashSet<(usize, usize, Vec<L>)> = HashSet::new();
        let mut stack: Vec<(usize, usize, Vec<L>)> = Vec::new();
        for &q in &self.initial {
            if seen.insert((q, 0, Vec::new())) {
                stack.push((q, 0, Vec::new()));
            }
        }
        let mut by_src: Vec<Vec<&Edge<L>>> = vec![Vec::new(); self.num_states()];
        for e in &self.edges {
            by_src[e.src].push(e);
        }
        while let Some((q, pos, out)) = stack.pop() {
            if pos == u.len() {
                if let Some(f) = &self.final_out[q] {
                    if out.len() + f.len() <= max_out_len {
                        let mut v = out.clone();
                        v.extend_from_slice(f);
                        results.insert(v);
                    }
                }
            }
            for e in &by_src[q] {
                if !u[pos..].starts_with(&e.input) || out.len() + e.output.len() > max_out_len {
                    continue;
                }
                let mut v = out.clone();
                v.extend_from_slice(&e.output);
                let cfg = (e.dst, pos + e.input.len(), v);
                if seen.insert(cfg.clone()) {
                    stack.push(cfg);
                }
            }
        }
        results
    }

    /// An upper bound on output lengths for inputs of length at most `n`;
    /// `None` if some transition reads no input.
    fn output_bound(&self, n: usize) -> Option<usize> {
        if self.edges.iter().any(|e| e.input.is_empty()) {
            return None;
        }
        let e = self.edges.iter().map(|e| e.output.len()).max().unwrap_or(0);
        let f = self.final_out.iter().flatten().map(|w| w.len()).max().unwrap_or(0);
        Some(n * e + f)
    }

    /// Graphviz rendering with `in|out` labels.
    pub fn to_dot(&self, name: &str) -> String {
        let w = |v: &[L]| if v.is_empty() { "ε".to_string() } else { v.iter().map(|l| l.to_string()).collect::<String>() };
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{\n  rankdir=LR;", name.replace('"', "\\\""));
        for q in 0..self.num_states() {
            let shape = if self.is_final(q) { "doublecircle" } else { "circle" };
            let label = match &self.final_out[q] {
                Some(f) if !f.is_empty() => format!("{} / {}", self.names[q], w(f)),
                _ => self.names[q].clone(),
            };
            let _ = writeln!(s, "  q{q} [shape={shape}, label=\"{}\"];", label.replace('"', "\\\""));
        }
        for &q in &self.initial {
            let _ = writeln!(s, "  init{q} [shape=point];\n  init{q} -> q{q};");
        }
        for e in &self.edges {
            let _ = writeln!(s, "  q{} -> q{} [label=\"{}|{}\"];", e.src, e.dst, w(&e.input), w(&e.output));
        }
        s.push_str("}\n");
        s
    }
}

fn reach(succ: &[Vec<usize>], seeds: impl Iterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; succ.len()];
    let mut stack = Vec::new();
    for s in seeds {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(q) = stack.pop() {
        for &r in &succ[q] {
            if !seen[r] {
                seen[r] = true;
                stack.push(r);
            }
        }
    }
    seen
}

/// States reachable from `p` through ε-input transitions, with the outputs
/// produced on the way. Finite when no such cycle produces output.
fn eps_outputs<L: Letter>(eps: &[Vec<(usize, &[L])>], p: usize) -> Vec<(usize, Vec<L>)> {
    let mut seen: HashSet<(usize, Vec<L>)> = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert((p, Vec::new()));
    queue.push_back((p, Vec::new()));
    while let Some((q, w)) = queue.pop_front() {
        order.push((q, w.clone()));
        for &(r, o) in &eps[q] {
            let mut w2 = w.clone();
            w2.extend_from_slice(o);
            if seen.insert((r, w2.clone())) {
                queue.push_back((r, w2));
            }
        }
    }
    order
}

impl Transducer<char> {
    /// The synchronization automaton over the colored alphabet.
    ///
    /// A fresh sink is the only final state; final outputs label the
    /// transitions into it.
    pub fn underlying_automaton(&self) -> Nfa<SyncLetter> {
        let letters = self.alphabet.iter().flat_map(|&c| [SyncLetter::input(c), SyncLetter::output(c)]);
        let mut a = Nfa::new(letters);
        for _ in 0..self.num_states() {
            a.add_state();
        }
        let sink = a.add_state();
        a.set_final(sink, true);
        for &q in &self.initial {
            a.add_initial(q);
        }
        for e in &self.edges {
            let mut label: Vec<SyncLetter> = e.input.iter().map(|&c| SyncLetter::input(c)).collect();
            label.extend(e.output.iter().map(|&c| SyncLetter::output(c)));
            a.add_transition(e.src, label, e.dst);
        }
        for q in 0..self.num_states() {
            if let Some(f) = &self.final_out[q] {
                a.add_transition(q, f.iter().map(|&c| SyncLetter::output(c)).collect(), sink);
            }
        }
        a
    }

    /// Reads a synchronization automaton back as a transducer.
    pub fn from_sync_language(a: &Nfa<SyncLetter>) -> Transducer<char> {
        let l = automata::letterize(a);
        let mut t = Transducer::new(a.alphabet().iter().map(|s| s.letter));
        for q in 0..l.num_states() {
            t.add_state(format!("s{q}"));
            if l.is_final(q) {
                t.set_final(q, Vec::new());
            }
        }
        for &q in l.initial() {
            t.set_initial(q);
        }
        for e in l.edges() {
            let s = e.label[0];
            let (i, o) = match s.color {
                Color::In => (vec![s.letter], vec![]),
                Color::Out => (vec![], vec![s.letter]),
            };
            t.add_transition(e.src, i, o, e.dst);
        }
        t
    }

    /// Membership of `(u, v)` in the relation.
    pub fn evaluate_pair(&self, u: &[char], v: &[char]) -> bool {
        let shuffle = shuffle_automaton(&self.alphabet, u, v);
        !automata::is_empty(&automata::intersect(&self.underlying_automaton(), &shuffle))
    }

    /// Every synchronization of `(u, v)` accepted by the underlying automaton.
    pub fn synchronizations(&self, u: &[char], v: &[char]) -> BTreeSet<Vec<SyncLetter>> {
        let shuffle = shuffle_automaton(&self.alphabet, u, v);
        let product = automata::intersect(&self.underlying_automaton(), &shuffle);
        automata::accepted_words(&product, u.len() + v.len())
    }

    /// Compares the output sets of every input of length at most `n`.
    pub fn relation_equal_bounded(&self, other: &Transducer<char>, n: usize) -> Result<bool> {
        self.relation_equal_bounded_with(other, n, Execution::Auto)
    }

    pub fn relation_equal_bounded_with(&self, other: &Transducer<char>, n: usize, exec: Execution) -> Result<bool> {
        let a = realtime_if_needed(self)?;
        let b = realtime_if_needed(other)?;
        let bound = a.output_bound(n).unwrap_or(0).max(b.output_bound(n).unwrap_or(0));
        let letters: BTreeSet<char> = a.alphabet.iter().chain(b.alphabet.iter()).copied().collect();
        let sigma = Alphabet::new(letters)?;
        let inputs = sigma.words_up_to(n);
        let same = parallel::map(&inputs, exec, |u| a.enumerate_outputs(u, bound) == b.enumerate_outputs(u, bound));
        Ok(same.into_iter().all(|x| x))
    }

    /// True iff no input word has two accepting runs. Needs a real-time transducer.
    pub fn is_unambiguous(&self) -> Result<bool> {
        if !self.is_real_time() {
            return Err(Error::NotRealTime("unambiguity check".into()));
        }
        let t = self.trim();
        let n = t.num_states();
        let mut by_src: Vec<Vec<&Edge<char>>> = vec![Vec::new(); n];
        for e in &t.edges {
            by_src[e.src].push(e);
        }
        // Pairs of runs on the same input, explored until they first split.
        let mut seen = vec![false; n * n];
        let mut queue = VecDeque::new();
        for &p in &t.initial {
            for &q in &t.initial {
                if p != q {
                    return Ok(false);
                }
            }
            seen[p * n + p] = true;
            queue.push_back(p);
        }
        while let Some(p) = queue.pop_front() {
            for (i, e) in by_src[p].iter().enumerate() {
                for f in &by_src[p][i + 1..] {
                    if e.input == f.input {
                        return Ok(false);
                    }
                }
                if !seen[e.dst * n + e.dst] {
                    seen[e.dst * n + e.dst] = true;
                    queue.push_back(e.dst);
                }
            }
        }
        Ok(true)
    }
}

fn realtime_if_needed(t: &Transducer<char>) -> Result<Transducer<char>> {
    if t.edges.iter().any(|e| e.input.is_empty()) {
        t.to_real_time()
    } else {
        Ok(t.clone())
    }
}

/// The automaton of all synchronizations of `(u, v)`.
pub fn shuffle_automaton(alphabet: &[char], u: &[char], v: &[char]) -> Nfa<SyncLetter> {
    let letters = alphabet
        .iter()
        .chain(u)
        .chain(v)
        .flat_map(|&c| [SyncLetter::input(c), SyncLetter::output(c)]);
    let mut a = Nfa::new(letters);
    let w = v.len() + 1;
    for _ in 0..(u.len() + 1) * w {
        a.add_state();
    }
    a.add_initial(0);
    a.set_final(u.len() * w + v.len(), true);
    for i in 0..=u.len() {
        for j in 0..=v.len() {
            if i < u.len() {
                a.add_transition(i * w + j, vec![SyncLetter::input(u[i])], (i + 1) * w + j);
            }
            if j < v.len() {
                a.add_transition(i * w + j, vec![SyncLetter::output(v[j])], i * w + j + 1);
            }
        }
    }
    a
}

/// A transducer with a deterministic input automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequentialTransducer(Transducer<char>);

impl SequentialTransducer {
    pub fn new(t: Transducer<char>) -> Result<Self> {
        if t.is_sequential() {
            Ok(SequentialTransducer(t))
        } else {
            Err(Error::InvalidArgument("transducer is not sequential".into()))
        }
    }

    pub fn transducer(&self) -> &Transducer<char> {
        &self.0
    }

    pub fn into_inner(self) -> Transducer<char> {
        self.0
    }

    /// The transition on `a` from `q`: its output and target.
    pub fn step(&self, q: usize, a: char) -> Option<(&[char], usize)> {
        self.0.edges.iter().find(|e| e.src == q && e.input[0] == a).map(|e| (e.output.as_slice(), e.dst))
    }

    /// The unique output for `u`, if `u` is in the domain.
    pub fn apply(&self, u: &[char]) -> Option<Vec<char>> {
        let t = &self.0;
        let mut q = *t.initial.first()?;
        let mut out = Vec::new();
        let index: HashMap<(usize, char), &Edge<char>> = t.edges.iter().map(|e| ((e.src, e.input[0]), e)).collect();
        for &a in u {
            let e = index.get(&(q, a))?;
            out.extend_from_slice(&e.output);
            q = e.dst;
        }
        out.extend_from_slice(t.final_out[q].as_ref()?);
        Some(out)
    }
}
