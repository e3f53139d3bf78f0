//! The uniformization game over transformation sequences.
//!
//! An Input vertex `(p, ρ, d)` records the state `p` reached on the input
//! already answered, the lookahead `ρ` on the input not yet answered, and the
//! state `d` of the domain automaton. Output vertices also carry the letter
//! just played.

use std::collections::{BTreeSet, HashMap, VecDeque};

use super::transform::{compose, is_consistent, reduce_seq, tau_of_letter, traversals, Transformation};
use super::DetTransducer;
use crate::automata::{self, Dfa};
use crate::error::{Error, Result};
use crate::game::{self, Owner, SafetyGame, Solution};
use crate::transducer::SequentialTransducer;
use crate::words::{words_up_to, ENDMARKER};

/// Input length up to which every synthesized uniformizer is replayed.
pub const DEFAULT_CHECK_LEN: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Kind {
    Input { p: usize, seq: usize, d: usize },
    Output { p: usize, seq: usize, d: usize, slot: usize },
}

/// The reachable game for a lookahead bound `K`, on the
/// endmarker-normalized transducer.
#[derive(Clone, Debug)]
pub struct DratGame {
    pub game: SafetyGame,
    pub transducer: DetTransducer,
    pub domain: Dfa<char>,
    pub k: usize,
    /// Longest Output annotation in the game.
    pub max_annotation: usize,
    transformations: Vec<Transformation>,
    seqs: Vec<Vec<u32>>,
    kinds: Vec<Kind>,
}

struct Builder<'a> {
    t: &'a DetTransducer,
    dom: &'a Dfa<char>,
    dom_live: Vec<bool>,
    dom_index: Vec<usize>,
    letters: Vec<char>,
    max_len: usize,
    g: SafetyGame,
    kinds: Vec<Kind>,
    ids: HashMap<Kind, usize>,
    queue: VecDeque<usize>,
    trans: Vec<Transformation>,
    trans_ids: HashMap<Transformation, u32>,
    seqs: Vec<Vec<u32>>,
    seq_ids: HashMap<Vec<u32>, usize>,
    traversal_cache: HashMap<(usize, usize), Vec<Option<Vec<char>>>>,
    completions: Vec<Option<Vec<char>>>,
    max_annotation: usize,
}

impl Builder<'_> {
    fn intern_seq(&mut self, rho: &[Transformation]) -> usize {
        let mut key = Vec::with_capacity(rho.len());
        for tau in rho {
            let id = match self.trans_ids.get(tau) {
                Some(&id) => id,
                None => {
                    let id = self.trans.len() as u32;
                    self.trans.push(tau.clone());
                    self.trans_ids.insert(tau.clone(), id);
                    id
                }
            };
            key.push(id);
        }
        if let Some(&s) = self.seq_ids.get(&key) {
            return s;
        }
        self.seqs.push(key.clone());
        self.seq_ids.insert(key, self.seqs.len() - 1);
        self.seqs.len() - 1
    }

    fn seq(&self, s: usize) -> Vec<Transformation> {
        self.seqs[s].iter().map(|&i| self.trans[i as usize].clone()).collect()
    }

    fn seq_label(&self, s: usize) -> String {
        if self.seqs[s].is_empty() {
            "ε".into()
        } else {
            self.seqs[s].iter().map(|i| format!("t{i}")).collect::<Vec<_>>().join(".")
        }
    }

    fn traversals(&mut self, p: usize, s: usize) -> Vec<Option<Vec<char>>> {
        if let Some(v) = self.traversal_cache.get(&(p, s)) {
            return v.clone();
        }
        let v = traversals(self.t, p, &self.seq(s));
        self.traversal_cache.insert((p, s), v.clone());
        v
    }

    fn vertex(&mut self, kind: Kind) -> usize {
        if let Some(&v) = self.ids.get(&kind) {
            return v;
        }
        let v = match kind {
            Kind::Input { p, seq, d } => {
                let bad = self.dom.is_final(d) && (!self.seqs[seq].is_empty() || self.completions[p].is_none());
                let label = format!("({},{},d{d})", self.t.name(p), self.seq_label(seq));
                self.g.add_vertex(Owner::Input, label, bad)
            }
            Kind::Output { p, seq, d, slot } => {
                let label = format!("({},{},d{d},{})", self.t.name(p), self.seq_label(seq), self.letters[slot]);
                self.g.add_vertex(Owner::Output, label, false)
            }
        };
        self.kinds.push(kind);
        self.ids.insert(kind, v);
        self.queue.push_back(v);
        v
    }

    fn edge(&mut self, src: usize, target: Kind, word: Vec<char>) {
        let v = self.vertex(target);
        if self.g.owner[src] == Owner::Output {
            self.max_annotation = self.max_annotation.max(word.len());
        }
        if !self.g.edges[src].iter().any(|e| e.target == v && e.word == word) {
            self.g.add_edge(src, v, word);
        }
    }

    fn expand(&mut self, v: usize) {
        match self.kinds[v] {
            Kind::Input { p, seq, d } => {
                if self.g.bad[v] {
                    return;
                }
                for slot in 0..self.letters.len() {
                    if self.dom_live[self.dom.next(d, self.dom_index[slot])] {
                        self.edge(v, Kind::Output { p, seq, d, slot }, vec![self.letters[slot]]);
                    }
                }
            }
            Kind::Output { p, seq, d, slot } => {
                let d2 = self.dom.next(d, self.dom_index[slot]);
                let tau = tau_of_letter(self.t, self.letters[slot]).expect("letter of the transducer");
                let rho = self.seq(seq);
                if rho.is_empty() {
                    let single = self.intern_seq(std::slice::from_ref(&tau));
                    for (q, w) in self.traversals(p, single).into_iter().enumerate() {
                        if let Some(w) = w {
                            let empty = self.intern_seq(&[]);
                            self.edge(v, Kind::Input { p: q, seq: empty, d: d2 }, w);
                        }
                    }
                }
                for i in 1..=rho.len() {
                    let head = self.intern_seq(&rho[..i]);
                    let rest = self.intern_seq(&rho[i..]);
                    for (q, w) in self.traversals(p, head).into_iter().enumerate() {
                        if let Some(w) = w {
                            self.edge(v, Kind::Output { p: q, seq: rest, d, slot }, w);
                        }
                    }
                }
                let longer = compose(self.t, &rho, std::slice::from_ref(&tau));
                if longer.len() <= self.max_len {
                    let s = self.intern_seq(&longer);
                    self.edge(v, Kind::Input { p, seq: s, d: d2 }, Vec::new());
                }
                for i in 0..rho.len() {
                    for j in i + 2..=rho.len() {
                        let mid = reduce_seq(self.t, &rho[i..j]).expect("nonempty infix");
                        let shorter = compose(self.t, &compose(self.t, &rho[..i], &[mid]), &rho[j..]);
                        let s = self.intern_seq(&shorter);
                        self.edge(v, Kind::Output { p, seq: s, d, slot }, Vec::new());
                    }
                }
            }
        }
    }
}

/// Builds the reachable game with sequences of length at most `2k + 1`.
pub fn build_drat_game(t: &DetTransducer, k: usize) -> Result<DratGame> {
    let tn = t.endmarker_normalized();
    let dom = automata::determinize(&tn.domain_nfa())?;
    let letters = tn.letters_with_end();
    let dom_index = letters
        .iter()
        .map(|&c| dom.letter_index(c).ok_or_else(|| Error::UnknownLetter(c.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let completions = (0..tn.num_states()).map(|p| tn.completion(p)).collect();
    let mut b = Builder {
        t: &tn,
        dom: &dom,
        dom_live: dom.live(),
        dom_index,
        letters,
        max_len: 2 * k + 1,
        g: SafetyGame::new(),
        kinds: Vec::new(),
        ids: HashMap::new(),
        queue: VecDeque::new(),
        trans: Vec::new(),
        trans_ids: HashMap::new(),
        seqs: Vec::new(),
        seq_ids: HashMap::new(),
        traversal_cache: HashMap::new(),
        completions,
        max_annotation: 0,
    };
    let empty = b.intern_seq(&[]);
    b.g.initial = b.vertex(Kind::Input { p: tn.initial(), seq: empty, d: dom.initial() });
    while let Some(v) = b.queue.pop_front() {
        b.expand(v);
    }
    let Builder { g, kinds, trans, seqs, max_annotation, .. } = b;
    Ok(DratGame { game: g, transducer: tn, domain: dom, k, max_annotation, transformations: trans, seqs, kinds })
}

/// `(2K + 1) · M`.
pub fn delay_bound_formula(k: usize, max_annotation: usize) -> usize {
    (2 * k + 1) * max_annotation
}

/// The delay bound of the game for `k`.
pub fn delay_bound(t: &DetTransducer, k: usize) -> Result<usize> {
    let g = build_drat_game(t, k)?;
    Ok(g.delay_bound())
}

impl DratGame {
    pub fn solve(&self) -> Solution {
        game::solve_safety(&self.game)
    }

    pub fn delay_bound(&self) -> usize {
        delay_bound_formula(self.k, self.max_annotation)
    }

    /// The lookahead sequence stored in a vertex.
    pub fn sequence(&self, v: usize) -> Vec<Transformation> {
        let seq = match self.kinds[v] {
            Kind::Input { seq, .. } | Kind::Output { seq, .. } => seq,
        };
        self.seqs[seq].iter().map(|&i| self.transformations[i as usize].clone()).collect()
    }

    /// `(p, d)` of a vertex.
    pub fn states(&self, v: usize) -> (usize, usize) {
        match self.kinds[v] {
            Kind::Input { p, d, .. } | Kind::Output { p, d, .. } => (p, d),
        }
    }

    /// The uniformizer given by a winning strategy.
    pub fn extract(&self, sol: &Solution) -> Result<SequentialTransducer> {
        let tn = &self.transducer;
        game::extract_sequential(&self.game, sol, tn.alphabet(), |v| match self.kinds[v] {
            Kind::Input { p, seq, d } if self.seqs[seq].is_empty() && self.domain.is_final(d) => {
                tn.completion(p).map(|w| w.into_iter().filter(|&c| c != ENDMARKER).collect())
            }
            _ => None,
        })
    }

    fn vertex_by_label(&self) -> HashMap<&str, usize> {
        (0..self.game.num_vertices())
            .filter(|&v| self.game.owner[v] == Owner::Input)
            .map(|v| (self.game.labels[v].as_str(), v))
            .collect()
    }
}

/// Result of [`drat_uniformize`].
#[derive(Clone, Debug)]
pub enum DratOutcome {
    /// A verified uniformizer and its delay bound.
    Yes { uniformizer: SequentialTransducer, delay_bound: usize },
    /// Output loses the game for this `K`; a definitive answer only when
    /// `K` reaches the saturation bound.
    NoUpTo(usize),
}

impl DratOutcome {
    pub fn uniformizer(&self) -> Option<&SequentialTransducer> {
        match self {
            DratOutcome::Yes { uniformizer, .. } => Some(uniformizer),
            DratOutcome::NoUpTo(_) => None,
        }
    }
}

/// Solves the game for `k` and verifies any extracted uniformizer on inputs
/// of length at most [`DEFAULT_CHECK_LEN`].
pub fn drat_uniformize(t: &DetTransducer, k: usize) -> Result<DratOutcome> {
    drat_uniformize_checked(t, k, DEFAULT_CHECK_LEN)
}

/// [`drat_uniformize`] with an explicit replay length.
pub fn drat_uniformize_checked(t: &DetTransducer, k: usize, check_len: usize) -> Result<DratOutcome> {
    let g = build_drat_game(t, k)?;
    Ok(solve_checked(&g, check_len)?.1)
}

/// Solves a built game; a Yes answer passes the three replay checks on
/// inputs of length at most `check_len`.
pub fn solve_checked(g: &DratGame, check_len: usize) -> Result<(Solution, DratOutcome)> {
    let sol = g.solve();
    if !sol.initial_winning(&g.game) {
        return Ok((sol, DratOutcome::NoUpTo(g.k)));
    }
    let u = g.extract(&sol)?;
    let bound = g.delay_bound();
    check_uniformizer(&g.transducer, &u, check_len)?;
    check_pending_output(&g.transducer, &u, bound, check_len)?;
    check_game_property(g, &u, check_len)?;
    Ok((sol, DratOutcome::Yes { uniformizer: u, delay_bound: bound }))
}

/// Every input up to `max_len` is in the domain of `u` exactly when it is in
/// the domain of `t`, and then `u` produces an accepted output.
pub fn check_uniformizer(t: &DetTransducer, u: &SequentialTransducer, max_len: usize) -> Result<()> {
    let dom = t.domain_dfa()?;
    for w in words_up_to(t.alphabet(), max_len) {
        match (t.in_domain(&dom, &w), u.apply(&w)) {
            (true, Some(v)) if t.accepts(&w, &v)? => {}
            (false, None) => {}
            (in_dom, out) => {
                return Err(Error::SelfCheck(format!(
                    "uniformizer fails on {} (in domain: {in_dom}, output: {:?})",
                    automata::format_word(&w),
                    out.map(|v| automata::format_word(&v))
                )))
            }
        }
    }
    Ok(())
}

/// Output letters consumed by `t` on `(u⊣, v⊣)` when it first waits at an
/// input state after each input prefix.
fn consumed_output(t: &DetTransducer, u: &[char], v: &[char]) -> Result<Vec<usize>> {
    let mut ue = u.to_vec();
    ue.push(ENDMARKER);
    let mut ve = v.to_vec();
    ve.push(ENDMARKER);
    let mut out = vec![None; u.len() + 1];
    let (mut q, mut i, mut j) = (t.initial(), 0, 0);
    loop {
        if t.is_input(q) {
            if i <= u.len() && out[i].is_none() {
                out[i] = Some(j);
            }
            if i == ue.len() {
                break;
            }
            q = t.delta(q, ue[i])?;
            i += 1;
        } else {
            if j == ve.len() {
                break;
            }
            q = t.delta(q, ve[j])?;
            j += 1;
        }
    }
    let out = out.into_iter().map(|c| c.unwrap_or(j)).collect();
    Ok(out)
}

/// The output `t` has consumed beyond what `u` has emitted stays within `bound`
/// on every prefix of every domain word up to `max_len`.
pub fn check_pending_output(t: &DetTransducer, u: &SequentialTransducer, bound: usize, max_len: usize) -> Result<()> {
    let dom = t.domain_dfa()?;
    let ut = u.transducer();
    for w in words_up_to(t.alphabet(), max_len) {
        if !t.in_domain(&dom, &w) {
            continue;
        }
        let v = u.apply(&w).ok_or_else(|| Error::SelfCheck("uniformizer undefined on domain word".into()))?;
        let consumed = consumed_output(t, &w, &v)?;
        let mut q = ut.initial()[0];
        let mut emitted = 0;
        for (i, &a) in w.iter().enumerate() {
            let pending = consumed[i].saturating_sub(emitted);
            if pending > bound {
                return Err(Error::SelfCheck(format!(
                    "pending output {pending} exceeds {bound} after {}",
                    automata::format_word(&w[..i])
                )));
            }
            let (o, r) = u.step(q, a).ok_or_else(|| Error::SelfCheck("missing transition".into()))?;
            emitted += o.len();
            q = r;
        }
    }
    Ok(())
}

/// Replays `u` on every domain prefix up to `max_len`: at each Input vertex
/// `(p, ρ, d)` reached after input `x w` with output `v`, the domain automaton
/// is in `d`, `t` reaches `p` on `(x, v)` and `w` is consistent with `ρ`.
pub fn check_game_property(g: &DratGame, u: &SequentialTransducer, max_len: usize) -> Result<()> {
    let tn = &g.transducer;
    let by_label = g.vertex_by_label();
    let ut = u.transducer();
    let live = g.domain.live();
    let mut prefixes: BTreeSet<Vec<char>> = BTreeSet::new();
    for w in words_up_to(tn.alphabet(), max_len) {
        if g.domain.run(g.domain.initial(), &w).is_some_and(|d| live[d]) {
            prefixes.insert(w);
        }
    }
    for w in prefixes {
        let mut q = ut.initial()[0];
        let mut v = Vec::new();
        for &a in &w {
            let (o, r) = u.step(q, a).ok_or_else(|| Error::SelfCheck("missing transition".into()))?;
            v.extend_from_slice(o);
            q = r;
        }
        let base = ut.name(q).trim_end_matches('\'');
        let &vertex = by_label.get(base).ok_or_else(|| Error::SelfCheck(format!("unknown state {base}")))?;
        let (p, d) = g.states(vertex);
        if g.domain.run(g.domain.initial(), &w) != Some(d) {
            return Err(Error::SelfCheck(format!("domain state mismatch at {}", automata::format_word(&w))));
        }
        let rho = g.sequence(vertex);
        let mut found = false;
        for split in 0..=w.len() {
            let (x, rest) = w.split_at(split);
            let (r, ru, rv) = tn.delta_star(tn.initial(), x, &v)?;
            if r == p && ru.is_empty() && rv.is_empty() && is_consistent(tn, &rho, rest)? {
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::SelfCheck(format!("game property fails at {}", automata::format_word(&w))));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drat::DetBuilder;
    use crate::library;
    use crate::words::Alphabet;

    fn w(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    fn single_pair() -> DetTransducer {
        let mut b = DetBuilder::new(&Alphabet::new(['a', 'b']).unwrap());
        let q0 = b.add_state("q0", false).unwrap();
        let q1 = b.add_state("q1", false).unwrap();
        let q2 = b.add_state("q2", true).unwrap();
        let q3 = b.add_state("q3", true).unwrap();
        let f = b.add_state("f", false).unwrap();
        b.set_initial(q0);
        b.set_final(f);
        b.set_delta(q0, 'a', q1).unwrap();
        b.set_delta(q1, '⊣', q2).unwrap();
        b.set_delta(q2, 'b', q3).unwrap();
        b.set_delta(q3, '⊣', f).unwrap();
        b.build_with_sink().unwrap()
    }

    #[test]
    fn single_pair_has_one_transition() {
        let t = single_pair();
        let out = drat_uniformize(&t, 0).unwrap();
        let u = out.uniformizer().unwrap();
        assert_eq!(u.transducer().edges().len(), 1);
        assert_eq!(u.apply(&w("a")), Some(w("b")));
        assert_eq!(u.apply(&w("b")), None);
    }

    #[test]
    fn initial_vertex() {
        let t = single_pair();
        let g = build_drat_game(&t, 1).unwrap();
        assert_eq!(g.states(g.game.initial), (g.transducer.initial(), g.domain.initial()));
        assert!(g.sequence(g.game.initial).is_empty());
    }

    #[test]
    fn output_always_moves() {
        let t = library::r1_transducer(&['a', 'b']).unwrap();
        for k in 1..=2 {
            let g = build_drat_game(&t, k).unwrap();
            for v in 0..g.game.num_vertices() {
                if g.game.owner[v] == Owner::Output {
                    assert!(!g.game.edges[v].is_empty(), "{}", g.game.labels[v]);
                    for e in &g.game.edges[v] {
                        if g.game.owner[e.target] == Owner::Output {
                            assert!(g.sequence(e.target).len() < g.sequence(v).len());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn lookahead_relation_is_uniformizable() {
        let t = library::r1_transducer(&['a', 'b']).unwrap();
        let DratOutcome::Yes { uniformizer, delay_bound } = drat_uniformize(&t, 1).unwrap() else {
            panic!("expected a uniformizer");
        };
        assert_eq!(uniformizer.apply(&w("ab#ba#a")), Some(w("ba")));
        assert_eq!(uniformizer.apply(&w("#ab#")), Some(w("ab")));
        assert!(delay_bound >= 1);
    }

    #[test]
    fn counting_relation_is_not() {
        let t = library::count_or_forget();
        for k in 0..=1 {
            assert!(matches!(drat_uniformize(&t, k).unwrap(), DratOutcome::NoUpTo(_)));
        }
    }

    #[test]
    fn bound_formula() {
        assert_eq!(delay_bound_formula(0, 1), 1);
        assert!(delay_bound_formula(1, 3) <= delay_bound_formula(2, 3));
    }
}
