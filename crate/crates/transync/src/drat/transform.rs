//! Partial transformations of the input states and their sequences.

use std::collections::VecDeque;

use super::DetTransducer;
use crate::automata::{self, Nfa};
use crate::error::{Error, Result};

/// A partial map on states; defined only on input states.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation(pub Vec<Option<u32>>);

impl Transformation {
    pub fn get(&self, q: usize) -> Option<usize> {
        self.0[q].map(|r| r as usize)
    }

    /// The identity on input states.
    pub fn identity(t: &DetTransducer) -> Self {
        Transformation((0..t.num_states()).map(|q| t.is_input(q).then_some(q as u32)).collect())
    }

    /// True iff some input state is mapped to an output state.
    pub fn is_maximal(&self, t: &DetTransducer) -> bool {
        self.0.iter().flatten().any(|&r| t.is_output(r as usize))
    }

    /// `self` followed by `next`; undefined wherever either step is.
    pub fn then(&self, next: &Transformation) -> Transformation {
        Transformation(self.0.iter().map(|r| r.and_then(|r| next.0[r as usize])).collect())
    }

    /// Drops the entries that land in output states.
    pub fn erase_outputs(&self, t: &DetTransducer) -> Transformation {
        Transformation(self.0.iter().map(|r| r.filter(|&r| t.is_input(r as usize))).collect())
    }

    /// `q -> r` pairs, using state names.
    pub fn describe(&self, t: &DetTransducer) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter_map(|(q, r)| r.map(|r| format!("{}>{}", t.name(q), t.name(r as usize))))
            .collect();
        format!("{{{}}}", parts.join(" "))
    }
}

/// `τ_a`: the transformation of one letter (possibly the endmarker).
pub fn tau_of_letter(t: &DetTransducer, a: char) -> Result<Transformation> {
    let slot = t.letter_index(a)?;
    Ok(Transformation(
        (0..t.num_states()).map(|q| t.is_input(q).then(|| t.delta_slot(q, slot) as u32)).collect(),
    ))
}

/// Sequence composition: the elements of `right` are appended one by one,
/// each absorbed by the current last element unless that one is maximal.
pub fn compose(t: &DetTransducer, left: &[Transformation], right: &[Transformation]) -> Vec<Transformation> {
    let mut out = left.to_vec();
    for next in right {
        match out.last_mut() {
            Some(last) if !last.is_maximal(t) => *last = last.then(next),
            _ => out.push(next.clone()),
        }
    }
    out
}

/// `ρ_u`, the composition of the letter transformations of `u`.
pub fn rho_of_word(t: &DetTransducer, u: &[char]) -> Result<Vec<Transformation>> {
    let mut rho = Vec::new();
    for &a in u {
        rho = compose(t, &rho, &[tau_of_letter(t, a)?]);
    }
    Ok(rho)
}

fn consistent_single(t: &DetTransducer, tau: &Transformation, u: &[char]) -> Result<bool> {
    for q in (0..t.num_states()).filter(|&q| t.is_input(q)) {
        let (p, rest, _) = t.delta_star(q, u, &[])?;
        match tau.get(q) {
            Some(r) => {
                if !rest.is_empty() || p != r {
                    return Ok(false);
                }
            }
            None => {
                if rest.is_empty() && t.is_input(p) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// True iff `u` splits into factors consistent with the elements of `rho`.
/// The empty sequence is consistent only with the empty word.
pub fn is_consistent(t: &DetTransducer, rho: &[Transformation], u: &[char]) -> Result<bool> {
    let n = u.len();
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for tau in rho {
        let mut next = vec![false; n + 1];
        for i in (0..=n).filter(|&i| reach[i]) {
            for j in i..=n {
                if !next[j] && consistent_single(t, tau, &u[i..j])? {
                    next[j] = true;
                }
            }
        }
        reach = next;
    }
    Ok(reach[n])
}

/// `⟨ρ⟩`: the composition of `rho` where every element but the last first
/// forgets the entries landing in output states.
pub fn reduce_seq(t: &DetTransducer, rho: &[Transformation]) -> Result<Transformation> {
    let (last, init) = rho.split_last().ok_or(Error::EmptySequence)?;
    let mut acc = Transformation::identity(t);
    for tau in init {
        acc = acc.then(&tau.erase_outputs(t));
    }
    Ok(acc.then(last))
}

/// Automaton for the output words that traverse `rho` from `p` to `q`.
///
/// States are `(layer, state)`. Output states read a letter within a layer;
/// an input state moves to the next layer through the next transformation.
pub fn lout_automaton(t: &DetTransducer, p: usize, rho: &[Transformation], q: usize) -> Nfa<char> {
    let m = t.num_states();
    let n = rho.len();
    let letters = t.letters_with_end();
    let mut a = Nfa::new(letters.iter().copied());
    for _ in 0..(n + 1) * m {
        a.add_state();
    }
    a.add_initial(p);
    a.set_final(n * m + q, true);
    for (i, tau) in rho.iter().enumerate() {
        for s in 0..m {
            if t.is_output(s) {
                for (slot, &c) in letters.iter().enumerate() {
                    a.add_transition(i * m + s, vec![c], i * m + t.delta_slot(s, slot));
                }
            } else if let Some(r) = tau.get(s) {
                a.add_transition(i * m + s, Vec::new(), (i + 1) * m + r);
            }
        }
    }
    a
}

/// Shortest, then least, word traversing `rho` from `p` to `q`.
pub fn shortest_traversal(t: &DetTransducer, p: usize, rho: &[Transformation], q: usize) -> Option<Vec<char>> {
    automata::shortest_accepted(&lout_automaton(t, p, rho, q))
}

/// [`shortest_traversal`] from `p` to every state at once.
pub fn traversals(t: &DetTransducer, p: usize, rho: &[Transformation]) -> Vec<Option<Vec<char>>> {
    let m = t.num_states();
    let n = rho.len();
    let letters = t.letters_with_end();
    let mut parent: Vec<Option<(usize, Option<char>)>> = vec![None; (n + 1) * m];
    let mut seen = vec![false; (n + 1) * m];
    let mut hits: Vec<Option<usize>> = vec![None; m];
    let mut queue = VecDeque::new();
    let mut visit = |mut node: usize,
                     mut from: Option<(usize, Option<char>)>,
                     seen: &mut Vec<bool>,
                     parent: &mut Vec<Option<(usize, Option<char>)>>,
                     queue: &mut VecDeque<usize>| loop {
        if seen[node] {
            return;
        }
        seen[node] = true;
        parent[node] = from;
        let (i, s) = (node / m, node % m);
        if i == n {
            hits[s] = Some(node);
            return;
        }
        if t.is_output(s) {
            queue.push_back(node);
            return;
        }
        let Some(r) = rho[i].get(s) else { return };
        from = Some((node, None));
        node = (i + 1) * m + r;
    };
    visit(p, None, &mut seen, &mut parent, &mut queue);
    while let Some(node) = queue.pop_front() {
        let s = node % m;
        let layer = node - s;
        for (slot, &c) in letters.iter().enumerate() {
            visit(layer + t.delta_slot(s, slot), Some((node, Some(c))), &mut seen, &mut parent, &mut queue);
        }
    }
    hits.iter()
        .map(|h| {
            h.map(|mut node| {
                let mut w = Vec::new();
                while let Some((prev, c)) = parent[node] {
                    w.extend(c);
                    node = prev;
                }
                w.reverse();
                w
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;
    use crate::words::ENDMARKER;

    fn w(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    #[test]
    fn word_transformation_is_consistent() {
        let t = library::r1_transducer(&['a', 'b']).unwrap();
        for u in ["", "a", "ab#", "a#b", "#a#", "ab#ba#a⊣"] {
            let rho = rho_of_word(&t, &w(u)).unwrap();
            assert!(is_consistent(&t, &rho, &w(u)).unwrap(), "{u}");
        }
        assert!(!is_consistent(&t, &[], &w("a")).unwrap());
    }

    #[test]
    fn maximal_split() {
        let t = library::r1_transducer(&['a', 'b']).unwrap();
        let rho = rho_of_word(&t, &w("#ab")).unwrap();
        // #a lands B in an echo state, so the sequence splits there.
        assert_eq!(rho.len(), 2);
        assert!(rho[0].is_maximal(&t));
    }

    #[test]
    fn traversal_matches_automaton() {
        let t = library::r1_transducer(&['a', 'b']).unwrap();
        for u in ["a", "#a", "#ab", "#ab#", "#ab#a⊣", "#⊣"] {
            let rho = rho_of_word(&t, &w(u)).unwrap();
            for p in 0..t.num_states() {
                let all = traversals(&t, p, &rho);
                for q in 0..t.num_states() {
                    assert_eq!(all[q], shortest_traversal(&t, p, &rho, q), "{u} {p} {q}");
                }
            }
        }
    }

    #[test]
    fn traversal_outputs_echo() {
        let t = library::r1_transducer(&['a', 'b']).unwrap();
        let rho = rho_of_word(&t, &w("#ab")).unwrap();
        let b = t.state_index("B").unwrap();
        let f = t.state_index("e.a").unwrap();
        let g = t.state_index("e.b").unwrap();
        assert_eq!(shortest_traversal(&t, t.initial(), &rho, g), Some(w("a")));
        assert_eq!(shortest_traversal(&t, t.initial(), &rho[..1], f), Some(vec![]));
        assert_eq!(shortest_traversal(&t, b, &[], b), Some(vec![]));
        assert_eq!(shortest_traversal(&t, b, &[], f), None);
        let d = t.state_index("D").unwrap();
        let end = rho_of_word(&t, &[ENDMARKER]).unwrap();
        let c = t.state_index("C").unwrap();
        assert_eq!(shortest_traversal(&t, c, &end, d), Some(vec![]));
    }

    #[test]
    fn reduce_of_single_is_itself() {
        let t = library::r1_transducer(&['a', 'b']).unwrap();
        let tau = tau_of_letter(&t, 'a').unwrap();
        assert_eq!(reduce_seq(&t, std::slice::from_ref(&tau)).unwrap(), tau);
        assert_eq!(reduce_seq(&t, &[]), Err(Error::EmptySequence));
    }
}
