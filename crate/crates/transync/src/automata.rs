//! Finite automata over arbitrary ordered alphabets.
//!
//! Transitions carry words (possibly empty). Algorithms that need single
//! letters work on the letterized form internally. State sets are explored in
//! a fixed order, so every result is reproducible.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::{self, Debug, Display, Write as _};
use std::hash::Hash;

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Anything usable as a letter.
pub trait Letter: Copy + Ord + Hash + Debug + Display + Send + Sync + 'static {}

impl<T> Letter for T where T: Copy + Ord + Hash + Debug + Display + Send + Sync + 'static {}

/// Default bound on the number of subset states explored by determinization
/// and inclusion checks.
pub const DEFAULT_STATE_CAP: usize = 1 << 20;

/// A transition labeled by a word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NfaEdge<L> {
    pub src: usize,
    pub label: Vec<L>,
    pub dst: usize,
}

/// A nondeterministic automaton with word labels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa<L> {
    alphabet: Vec<L>,
    num_states: usize,
    initial: Vec<usize>,
    finals: Vec<bool>,
    edges: Vec<NfaEdge<L>>,
}

fn sorted<L: Ord>(it: impl IntoIterator<Item = L>) -> Vec<L> {
    let mut v: Vec<L> = it.into_iter().collect();
    v.sort_unstable();
    v.dedup();
    v
}

impl<L: Letter> Nfa<L> {
    /// An automaton with no states over `alphabet`.
    pub fn new(alphabet: impl IntoIterator<Item = L>) -> Self {
        Nfa { alphabet: sorted(alphabet), num_states: 0, initial: Vec::new(), finals: Vec::new(), edges: Vec::new() }
    }

    /// The automaton accepting exactly `word`.
    pub fn singleton(alphabet: impl IntoIterator<Item = L>, word: &[L]) -> Self {
        let mut a = Nfa::new(alphabet);
        let s = a.add_state();
        let t = a.add_state();
        a.add_initial(s);
        a.set_final(t, true);
        a.add_transition(s, word.to_vec(), t);
        a
    }

    /// The automaton accepting every word over `alphabet`.
    pub fn universal(alphabet: impl IntoIterator<Item = L>) -> Self {
        let mut a = Nfa::new(alphabet);
        let s = a.add_state();
        a.add_initial(s);
        a.set_final(s, true);
        for l in a.alphabet.clone() {
            a.add_transition(s, vec![l], s);
        }
        a
    }

    pub fn add_state(&mut self) -> usize {
        self.num_states += 1;
        self.finals.push(false);
        self.num_states - 1
    }

    pub fn add_initial(&mut self, q: usize) {
        assert!(q < self.num_states, "initial state {q} is not declared");
        if let Err(pos) = self.initial.binary_search(&q) {
            self.initial.insert(pos, q);
        }
    }

    pub fn set_final(&mut self, q: usize, value: bool) {
        self.finals[q] = value;
    }

    /// Adds a transition; endpoints must exist and letters must be in the alphabet.
    pub fn add_transition(&mut self, src: usize, label: Vec<L>, dst: usize) {
        assert!(src < self.num_states && dst < self.num_states, "transition endpoint not declared");
        debug_assert!(label.iter().all(|l| self.alphabet.binary_search(l).is_ok()), "letter outside the alphabet");
        self.edges.push(NfaEdge { src, label, dst });
    }

    pub fn alphabet(&self) -> &[L] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.num_states
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn edges(&self) -> &[NfaEdge<L>] {
        &self.edges
    }

    /// True iff every label is a single letter.
    pub fn is_letterized(&self) -> bool {
        self.edges.iter().all(|e| e.label.len() == 1)
    }

    fn letter_index(&self, l: &L) -> Option<usize> {
        self.alphabet.binary_search(l).ok()
    }

    /// Extends the alphabet (the language is unchanged).
    pub fn with_alphabet(mut self, extra: impl IntoIterator<Item = L>) -> Self {
        self.alphabet = sorted(self.alphabet.into_iter().chain(extra));
        self
    }

    /// Renames letters through `f`; `f` must be injective on the alphabet.
    pub fn map_letters<M: Letter>(&self, f: impl Fn(L) -> M) -> Nfa<M> {
        Nfa {
            alphabet: sorted(self.alphabet.iter().map(|&l| f(l))),
            num_states: self.num_states,
            initial: self.initial.clone(),
            finals: self.finals.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| NfaEdge { src: e.src, label: e.label.iter().map(|&l| f(l)).collect(), dst: e.dst })
                .collect(),
        }
    }

    fn index(&self) -> Index {
        let a = if self.is_letterized() { None } else { Some(letterize(self)) };
        let a = a.as_ref().unwrap_or(self);
        let k = a.alphabet.len();
        let mut succ = vec![vec![Vec::new(); k]; a.num_states];
        for e in &a.edges {
            let li = a.letter_index(&e.label[0]).expect("letter in alphabet");
            succ[e.src][li].push(e.dst);
        }
        for row in &mut succ {
            for v in row.iter_mut() {
                v.sort_unstable();
                v.dedup();
            }
        }
        Index { initial: a.initial.clone(), finals: a.finals.clone(), succ }
    }
}

/// Single-letter adjacency of a letterized automaton over the same alphabet.
struct Index {
    initial: Vec<usize>,
    finals: Vec<bool>,
    succ: Vec<Vec<Vec<usize>>>,
}

impl Index {
    fn n(&self) -> usize {
        self.finals.len()
    }

    fn step(&self, set: &[usize], li: usize) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().flat_map(|&q| self.succ[q][li].iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn any_final(&self, set: &[usize]) -> bool {
        set.iter().any(|&q| self.finals[q])
    }
}

/// Splits word labels into letter chains and removes ε-transitions.
pub fn letterize<L: Letter>(a: &Nfa<L>) -> Nfa<L> {
    let mut split = Nfa::new(a.alphabet.iter().copied());
    for _ in 0..a.num_states {
        split.add_state();
    }
    split.initial = a.initial.clone();
    split.finals = a.finals.clone();
    let mut eps: Vec<Vec<usize>> = vec![Vec::new(); a.num_states];
    for e in &a.edges {
        match e.label.len() {
            0 => eps[e.src].push(e.dst),
            1 => split.edges.push(e.clone()),
            n => {
                let mut prev = e.src;
                for (i, &l) in e.label.iter().enumerate() {
                    let next = if i + 1 == n { e.dst } else { split.add_state() };
                    split.edges.push(NfaEdge { src: prev, label: vec![l], dst: next });
                    prev = next;
                }
            }
        }
    }
    let n = split.num_states;
    eps.resize(n, Vec::new());
    let mut out_edges: Vec<Vec<(L, usize)>> = vec![Vec::new(); n];
    for e in &split.edges {
        out_edges[e.src].push((e.label[0], e.dst));
    }
    let mut result = Nfa::new(a.alphabet.iter().copied());
    for _ in 0..n {
        result.add_state();
    }
    result.initial = split.initial.clone();
    let mut new_edges = Vec::new();
    for p in 0..n {
        let closure = eps_closure(&eps, p);
        result.finals[p] = closure.iter().any(|&q| split.finals[q]);
        for &q in &closure {
            for &(l, r) in &out_edges[q] {
                new_edges.push((p, l, r));
            }
        }
    }
    new_edges.sort_unstable();
    new_edges.dedup();
    result.edges = new_edges.into_iter().map(|(src, l, dst)| NfaEdge { src, label: vec![l], dst }).collect();
    result
}

fn eps_closure(eps: &[Vec<usize>], p: usize) -> Vec<usize> {
    let mut seen = vec![false; eps.len()];
    let mut stack = vec![p];
    seen[p] = true;
    let mut out = Vec::new();
    while let Some(q) = stack.pop() {
        out.push(q);
        for &r in &eps[q] {
            if !seen[r] {
                seen[r] = true;
                stack.push(r);
            }
        }
    }
    out.sort_unstable();
    out
}

/// A complete deterministic automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa<L> {
    alphabet: Vec<L>,
    initial: usize,
    delta: Vec<Vec<usize>>,
    finals: Vec<bool>,
}

impl<L: Letter> Dfa<L> {
    pub fn alphabet(&self) -> &[L] {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn letter_index(&self, l: L) -> Option<usize> {
        self.alphabet.binary_search(&l).ok()
    }

    /// Successor by letter index.
    pub fn next(&self, q: usize, li: usize) -> usize {
        self.delta[q][li]
    }

    /// Successor by letter; `None` for letters outside the alphabet.
    pub fn step(&self, q: usize, l: L) -> Option<usize> {
        self.letter_index(l).map(|li| self.delta[q][li])
    }

    pub fn run(&self, q: usize, w: &[L]) -> Option<usize> {
        w.iter().try_fold(q, |q, &l| self.step(q, l))
    }

    pub fn accepts(&self, w: &[L]) -> bool {
        self.run(self.initial, w).is_some_and(|q| self.finals[q])
    }

    /// States from which a final state is reachable.
    pub fn live(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (q, row) in self.delta.iter().enumerate() {
            for &r in row {
                pred[r].push(q);
            }
        }
        backward_reach(&pred, (0..n).filter(|&q| self.finals[q]))
    }

    pub fn to_nfa(&self) -> Nfa<L> {
        let mut a = Nfa::new(self.alphabet.iter().copied());
        for _ in 0..self.num_states() {
            a.add_state();
        }
        a.add_initial(self.initial);
        for q in 0..self.num_states() {
            a.set_final(q, self.finals[q]);
            for (li, &r) in self.delta[q].iter().enumerate() {
                a.add_transition(q, vec![self.alphabet[li]], r);
            }
        }
        a
    }
}

fn backward_reach(pred: &[Vec<usize>], seeds: impl Iterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; pred.len()];
    let mut stack: Vec<usize> = Vec::new();
    for s in seeds {
        if !seen[s] {
            seen[s] = true;
            stack.push(s);
        }
    }
    while let Some(q) = stack.pop() {
        for &p in &pred[q] {
            if !seen[p] {
                seen[p] = true;
                stack.push(p);
            }
        }
    }
    seen
}

/// Subset construction with the default state cap.
pub fn determinize<L: Letter>(a: &Nfa<L>) -> Result<Dfa<L>> {
    determinize_capped(a, DEFAULT_STATE_CAP)
}

/// Subset construction; fails once more than `cap` subsets are created.
pub fn determinize_capped<L: Letter>(a: &Nfa<L>, cap: usize) -> Result<Dfa<L>> {
    let idx = a.index();
    let k = a.alphabet.len();
    let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut sets: Vec<Vec<usize>> = Vec::new();
    let mut delta: Vec<Vec<usize>> = Vec::new();
    let start = idx.initial.clone();
    ids.insert(start.clone(), 0);
    sets.push(start);
    let mut i = 0;
    while i < sets.len() {
        let mut row = Vec::with_capacity(k);
        for li in 0..k {
            let next = idx.step(&sets[i], li);
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    if sets.len() >= cap {
                        return Err(Error::CapExceeded { what: "determinization", cap });
                    }
                    ids.insert(next.clone(), sets.len());
                    sets.push(next);
                    sets.len() - 1
                }
            };
            row.push(id);
        }
        delta.push(row);
        i += 1;
    }
    let finals = sets.iter().map(|s| idx.any_final(s)).collect();
    Ok(Dfa { alphabet: a.alphabet.clone(), initial: 0, delta, finals })
}

/// Complement of a complete DFA with respect to its alphabet.
pub fn complement<L: Letter>(d: &Dfa<L>) -> Dfa<L> {
    let mut c = d.clone();
    for f in &mut c.finals {
        *f = !*f;
    }
    c
}

/// Product automaton; the alphabet is the union of both alphabets.
pub fn intersect<L: Letter>(a: &Nfa<L>, b: &Nfa<L>) -> Nfa<L> {
    let ia = a.index();
    let ib = b.index();
    let bmap: Vec<Option<usize>> = a.alphabet.iter().map(|l| b.letter_index(l)).collect();
    let mut out = Nfa::new(a.alphabet.iter().chain(b.alphabet.iter()).copied());
    let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &p in &ia.initial {
        for &q in &ib.initial {
            let s = out.add_state();
            ids.insert((p, q), s);
            out.add_initial(s);
            queue.push_back((p, q));
        }
    }
    while let Some((p, q)) = queue.pop_front() {
        let s = ids[&(p, q)];
        out.set_final(s, ia.finals[p] && ib.finals[q]);
        for (li, bl) in bmap.iter().enumerate() {
            let Some(bl) = *bl else { continue };
            for &p2 in &ia.succ[p][li] {
                for &q2 in &ib.succ[q][bl] {
                    let t = *ids.entry((p2, q2)).or_insert_with(|| {
                        queue.push_back((p2, q2));
                        out.num_states += 1;
                        out.finals.push(false);
                        out.num_states - 1
                    });
                    out.edges.push(NfaEdge { src: s, label: vec![a.alphabet[li]], dst: t });
                }
            }
        }
    }
    out
}

/// Disjoint union; the alphabet is the union of both alphabets.
pub fn union<L: Letter>(a: &Nfa<L>, b: &Nfa<L>) -> Nfa<L> {
    let mut out = Nfa::new(a.alphabet.iter().chain(b.alphabet.iter()).copied());
    out.num_states = a.num_states + b.num_states;
    out.finals = a.finals.iter().chain(b.finals.iter()).copied().collect();
    out.initial = a.initial.iter().copied().chain(b.initial.iter().map(|q| q + a.num_states)).collect();
    out.edges = a.edges.clone();
    out.edges.extend(b.edges.iter().map(|e| NfaEdge {
        src: e.src + a.num_states,
        label: e.label.clone(),
        dst: e.dst + a.num_states,
    }));
    out
}

/// Outcome of an inclusion check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inclusion<L> {
    Included,
    /// A shortest word of the left language outside the right one.
    Counterexample(Vec<L>),
}

impl<L> Inclusion<L> {
    pub fn holds(&self) -> bool {
        matches!(self, Inclusion::Included)
    }

    pub fn counterexample(&self) -> Option<&[L]> {
        match self {
            Inclusion::Included => None,
            Inclusion::Counterexample(w) => Some(w),
        }
    }
}

/// Decides L(a) ⊆ L(b) with the default cap.
pub fn includes<L: Letter>(a: &Nfa<L>, b: &Nfa<L>) -> Result<Inclusion<L>> {
    includes_capped(a, b, DEFAULT_STATE_CAP)
}

/// Decides L(a) ⊆ L(b) by exploring a × complement(det(b)) on the fly.
///
/// The search is breadth-first with letters in order, so the counterexample
/// is a shortest one.
pub fn includes_capped<L: Letter>(a: &Nfa<L>, b: &Nfa<L>, cap: usize) -> Result<Inclusion<L>> {
    let ia = a.index();
    let ib = b.index();
    let bmap: Vec<Option<usize>> = a.alphabet.iter().map(|l| b.letter_index(l)).collect();
    let mut subset_ids: HashMap<Vec<usize>, usize> = HashMap::new();
    let mut subsets: Vec<Vec<usize>> = Vec::new();
    let mut intern = |s: Vec<usize>, subsets: &mut Vec<Vec<usize>>| -> usize {
        *subset_ids.entry(s.clone()).or_insert_with(|| {
            subsets.push(s);
            subsets.len() - 1
        })
    };
    let mut seen: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    let mut nodes: Vec<(usize, usize)> = Vec::new();
    let mut parent: Vec<Option<(usize, usize)>> = Vec::new();
    let start = intern(ib.initial.clone(), &mut subsets);
    for &p in &ia.initial {
        if let std::collections::hash_map::Entry::Vacant(e) = seen.entry((p, start)) {
            e.insert((nodes.len(), 0));
            nodes.push((p, start));
            parent.push(None);
        }
    }
    let mut i = 0;
    while i < nodes.len() {
        let (p, s) = nodes[i];
        if ia.finals[p] && !ib.any_final(&subsets[s]) {
            let mut word = Vec::new();
            let mut cur = i;
            while let Some((par, li)) = parent[cur] {
                word.push(a.alphabet[li]);
                cur = par;
            }
            word.reverse();
            return Ok(Inclusion::Counterexample(word));
        }
        for li in 0..a.alphabet.len() {
            if ia.succ[p][li].is_empty() {
                continue;
            }
            let next_set = match bmap[li] {
                Some(bl) => ib.step(&subsets[s], bl),
                None => Vec::new(),
            };
            let s2 = intern(next_set, &mut subsets);
            for &p2 in &ia.succ[p][li] {
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry((p2, s2)) {
                    if nodes.len() >= cap {
                        return Err(Error::CapExceeded { what: "inclusion check", cap });
                    }
                    e.insert((nodes.len(), 0));
                    nodes.push((p2, s2));
                    parent.push(Some((i, li)));
                }
            }
        }
        i += 1;
    }
    Ok(Inclusion::Included)
}

/// True iff no final state is reachable.
pub fn is_empty<L: Letter>(a: &Nfa<L>) -> bool {
    let reach = forward_reach(a);
    !(0..a.num_states).any(|q| reach[q] && a.finals[q])
}

fn forward_reach<L: Letter>(a: &Nfa<L>) -> Vec<bool> {
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); a.num_states];
    for e in &a.edges {
        succ[e.src].push(e.dst);
    }
    backward_reach(&succ, a.initial.iter().copied())
}

/// Keeps only states that are both accessible and co-accessible.
pub fn trim<L: Letter>(a: &Nfa<L>) -> Nfa<L> {
    let fwd = forward_reach(a);
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); a.num_states];
    for e in &a.edges {
        pred[e.dst].push(e.src);
    }
    let bwd = backward_reach(&pred, (0..a.num_states).filter(|&q| a.finals[q]));
    let mut map = vec![usize::MAX; a.num_states];
    let mut out = Nfa::new(a.alphabet.iter().copied());
    for q in 0..a.num_states {
        if fwd[q] && bwd[q] {
            map[q] = out.add_state();
            out.set_final(map[q], a.finals[q]);
        }
    }
    for &q in &a.initial {
        if map[q] != usize::MAX {
            out.add_initial(map[q]);
        }
    }
    for e in &a.edges {
        if map[e.src] != usize::MAX && map[e.dst] != usize::MAX {
            out.edges.push(NfaEdge { src: map[e.src], label: e.label.clone(), dst: map[e.dst] });
        }
    }
    out
}

/// A shortest accepted word, least in letter order among the shortest.
pub fn shortest_accepted<L: Letter>(a: &Nfa<L>) -> Option<Vec<L>> {
    let idx = a.index();
    let n = idx.n();
    let mut pred: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (q, row) in idx.succ.iter().enumerate() {
        for &r in row.iter().flatten() {
            pred[r].push(q);
        }
    }
    let mut dist: Vec<Option<usize>> = vec![None; n];
    let mut queue = VecDeque::new();
    for q in (0..n).filter(|&q| idx.finals[q]) {
        dist[q] = Some(0);
        queue.push_back(q);
    }
    while let Some(q) = queue.pop_front() {
        for &p in &pred[q] {
            if dist[p].is_none() {
                dist[p] = Some(dist[q].expect("visited") + 1);
                queue.push_back(p);
            }
        }
    }
    let mut len = idx.initial.iter().filter_map(|&q| dist[q]).min()?;
    let mut set: Vec<usize> = idx.initial.iter().copied().filter(|&q| dist[q] == Some(len)).collect();
    let mut w = Vec::with_capacity(len);
    while len > 0 {
        len -= 1;
        let (li, next) = (0..a.alphabet.len())
            .map(|li| (li, idx.step(&set, li).into_iter().filter(|&r| dist[r] == Some(len)).collect::<Vec<_>>()))
            .find(|(_, next)| !next.is_empty())
            .expect("a successor one step closer");
        w.push(a.alphabet[li]);
        set = next;
    }
    Some(w)
}

/// All accepted words of length at most `max_len`.
pub fn accepted_words<L: Letter>(a: &Nfa<L>, max_len: usize) -> BTreeSet<Vec<L>> {
    let a = trim(a);
    let idx = a.index();
    let mut out = BTreeSet::new();
    let mut stack = vec![(idx.initial.clone(), Vec::new())];
    while let Some((set, w)) = stack.pop() {
        if idx.any_final(&set) {
            out.insert(w.clone());
        }
        if w.len() == max_len {
            continue;
        }
        for li in 0..a.alphabet.len() {
            let next = idx.step(&set, li);
            if !next.is_empty() {
                let mut w2 = w.clone();
                w2.push(a.alphabet[li]);
                stack.push((next, w2));
            }
        }
    }
    out
}

/// Membership test.
pub fn accepts<L: Letter>(a: &Nfa<L>, w: &[L]) -> bool {
    let idx = a.index();
    let mut set = idx.initial.clone();
    for l in w {
        let Some(li) = a.letter_index(l) else { return false };
        set = idx.step(&set, li);
        if set.is_empty() {
            return false;
        }
    }
    idx.any_final(&set)
}

/// Number of accepting runs on `w`; the automaton must be letterized.
pub fn count_accepting_runs<L: Letter>(a: &Nfa<L>, w: &[L]) -> Result<BigUint> {
    if !a.is_letterized() {
        return Err(Error::InvalidArgument("run counting needs single-letter labels".into()));
    }
    let mut counts = vec![BigUint::from(0u32); a.num_states];
    for &q in &a.initial {
        counts[q] = BigUint::from(1u32);
    }
    for l in w {
        let mut next = vec![BigUint::from(0u32); a.num_states];
        for e in a.edges.iter().filter(|e| e.label[0] == *l) {
            if counts[e.src] != BigUint::from(0u32) {
                next[e.dst] += &counts[e.src];
            }
        }
        counts = next;
    }
    Ok((0..a.num_states).filter(|&q| a.finals[q]).map(|q| counts[q].clone()).sum())
}

/// Concatenates letters with their `Display` form (`ε` for the empty word).
pub fn format_word<L: Display>(w: &[L]) -> String {
    if w.is_empty() {
        return "ε".into();
    }
    w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering.
pub fn to_dot<L: Letter>(a: &Nfa<L>, name: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{}\" {{\n  rankdir=LR;", dot_escape(name));
    for q in 0..a.num_states {
        let shape = if a.finals[q] { "doublecircle" } else { "circle" };
        let _ = writeln!(s, "  q{q} [shape={shape}, label=\"{q}\"];");
    }
    for &q in &a.initial {
        let _ = writeln!(s, "  init{q} [shape=point];\n  init{q} -> q{q};");
    }
    for e in &a.edges {
        let _ = writeln!(s, "  q{} -> q{} [label=\"{}\"];", e.src, e.dst, dot_escape(&format_word(&e.label)));
    }
    s.push_str("}\n");
    s
}

impl<L: Letter> fmt::Display for Nfa<L> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", to_dot(self, "nfa"))
    }
}
