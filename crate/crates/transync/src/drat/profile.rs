//! Profiles: which output languages of a transformation sequence are
//! nonempty, and which contain the empty word.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;

use super::transform::{rho_of_word, tau_of_letter, traversals, Transformation};
use super::DetTransducer;
use crate::error::{Error, Result};

/// Tag of a profile triple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    /// The output language contains the empty word.
    Eps,
    /// The output language is nonempty and avoids the empty word.
    Plus,
}

impl Tag {
    fn times(self, other: Tag) -> Tag {
        if self == Tag::Eps && other == Tag::Eps {
            Tag::Eps
        } else {
            Tag::Plus
        }
    }
}

/// A set of triples `(p, tag, q)`, at most one tag per pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    size: usize,
    cells: Vec<Option<Tag>>,
}

impl Profile {
    pub fn empty(size: usize) -> Self {
        Profile { size, cells: vec![None; size * size] }
    }

    /// `{(q, ε, q)}`, the profile of the empty sequence.
    pub fn identity(size: usize) -> Self {
        let mut p = Profile::empty(size);
        for q in 0..size {
            p.set(q, q, Some(Tag::Eps));
        }
        p
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, p: usize, q: usize) -> Option<Tag> {
        self.cells[p * self.size + q]
    }

    pub fn set(&mut self, p: usize, q: usize, tag: Option<Tag>) {
        self.cells[p * self.size + q] = tag;
    }

    pub fn triples(&self) -> impl Iterator<Item = (usize, Tag, usize)> + '_ {
        (0..self.size).flat_map(move |p| (0..self.size).filter_map(move |q| self.get(p, q).map(|t| (p, t, q))))
    }

    pub fn is_idempotent(&self) -> bool {
        profile_mul(self, self) == *self
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .triples()
            .map(|(p, t, q)| format!("({p},{},{q})", if t == Tag::Eps { "ε" } else { "+" }))
            .collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}

/// Relational composition; `ε·ε = ε`, anything else is `+`, and `ε` wins
/// over `+` when both arise for a pair.
pub fn profile_mul(left: &Profile, right: &Profile) -> Profile {
    let n = left.size;
    let mut out = Profile::empty(n);
    for p in 0..n {
        for r in 0..n {
            let Some(t1) = left.get(p, r) else { continue };
            for q in 0..n {
                let Some(t2) = right.get(r, q) else { continue };
                let t = t1.times(t2);
                if out.get(p, q) != Some(Tag::Eps) {
                    out.set(p, q, Some(t));
                }
            }
        }
    }
    out
}

/// `P_ρ`.
pub fn profile(t: &DetTransducer, rho: &[Transformation]) -> Profile {
    let n = t.num_states();
    let mut out = Profile::empty(n);
    for p in 0..n {
        for (q, w) in traversals(t, p, rho).into_iter().enumerate() {
            out.set(p, q, w.map(|w| if w.is_empty() { Tag::Eps } else { Tag::Plus }));
        }
    }
    out
}

/// `P_u = P_{ρ_u}`.
pub fn profile_of_word(t: &DetTransducer, u: &[char]) -> Result<Profile> {
    Ok(profile(t, &rho_of_word(t, u)?))
}

fn product(t: &DetTransducer, ps: &[Profile]) -> Profile {
    ps.iter().fold(Profile::identity(t.num_states()), |acc, p| profile_mul(&acc, p))
}

/// First split `ρ = ρ1 ρ2 ρ3` (by `|ρ1|`, then `|ρ2|`) with `ρ1` nonempty,
/// `|ρ2| ≥ 2`, `P_{ρ2}` idempotent and absorbed by `P_{ρ1}`, and the products
/// of `profiles` over the two blocks absorbing likewise. Returns the end
/// positions of `ρ1` and `ρ2`.
pub fn find_saturation_witness(
    t: &DetTransducer,
    rho: &[Transformation],
    profiles: &[Profile],
) -> Result<Option<(usize, usize)>> {
    if profiles.len() != rho.len() {
        return Err(Error::InvalidArgument("one profile per transformation required".into()));
    }
    let n = rho.len();
    for i in 1..n {
        let p1 = profile(t, &rho[..i]);
        let hat1 = product(t, &profiles[..i]);
        for j in i + 2..=n {
            let p2 = profile(t, &rho[i..j]);
            if !p2.is_idempotent() || profile_mul(&p1, &p2) != p1 {
                continue;
            }
            let hat2 = product(t, &profiles[i..j]);
            if profile_mul(&hat1, &hat2) == hat1 && hat2.is_idempotent() {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// The monoid generated by the profiles of single letters, endmarker
/// included; errors once it exceeds `cap` elements.
pub fn profile_monoid(t: &DetTransducer, cap: usize) -> Result<Vec<Profile>> {
    let gens: Vec<Profile> = t
        .letters_with_end()
        .iter()
        .map(|&a| Ok(profile(t, &[tau_of_letter(t, a)?])))
        .collect::<Result<_>>()?;
    let id = Profile::identity(t.num_states());
    let mut seen: HashSet<Profile> = HashSet::from([id.clone()]);
    let mut elems = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(p) = queue.pop_front() {
        for g in &gens {
            let r = profile_mul(&p, g);
            if seen.insert(r.clone()) {
                if elems.len() >= cap {
                    return Err(Error::BoundNotComputable { cap });
                }
                elems.push(r.clone());
                queue.push_back(r);
            }
        }
    }
    Ok(elems)
}

/// `3 · c!`, the coarse bound on the three-clique Ramsey number for `c` colours.
pub fn ramsey_bound(colours: u64) -> BigUint {
    (1..=colours).fold(BigUint::from(3u32), |acc, i| acc * i)
}

/// Sequence length beyond which every reduced sequence is saturated, with
/// colours the pairs of profiles of the generated monoid.
pub fn ramsey_k(t: &DetTransducer, cap: usize) -> Result<BigUint> {
    let m = profile_monoid(t, cap)?.len() as u64;
    Ok(ramsey_bound(m * m))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drat::{reduce_seq, DetBuilder};
    use crate::library;
    use crate::words::Alphabet;

    fn w(s: &str) -> Vec<char> {
        s.chars().collect()
    }

    #[test]
    fn empty_sequence_profile() {
        let t = library::r1_transducer(&['a', 'b']).unwrap();
        assert_eq!(profile(&t, &[]), Profile::identity(t.num_states()));
    }

    #[test]
    fn multiplicative_on_words() {
        let t = library::r1_transducer(&['a', 'b']).unwrap();
        for (u1, u2) in [("a", "#"), ("#a", "b#"), ("#ab", "#⊣"), ("", "a#")] {
            let left = profile_of_word(&t, &w(u1)).unwrap();
            let right = profile_of_word(&t, &w(u2)).unwrap();
            let whole = profile_of_word(&t, &w(&format!("{u1}{u2}"))).unwrap();
            assert_eq!(profile_mul(&left, &right), whole, "{u1}|{u2}");
        }
    }

    #[test]
    fn reduction_keeps_empty_traversals() {
        let t = library::r1_transducer(&['a', 'b']).unwrap();
        let rho = rho_of_word(&t, &w("#ab#a")).unwrap();
        let full = profile(&t, &rho);
        let red = profile(&t, &[reduce_seq(&t, &rho).unwrap()]);
        for p in 0..t.num_states() {
            for q in 0..t.num_states() {
                assert_eq!(full.get(p, q) == Some(Tag::Eps), red.get(p, q) == Some(Tag::Eps));
                if red.get(p, q).is_some() {
                    assert!(full.get(p, q).is_some());
                }
            }
        }
    }

    /// Two states: `p` reads input `a` into the output state `o`, which reads
    /// any output letter back into `p`.
    fn toy() -> DetTransducer {
        let mut b = DetBuilder::new(&Alphabet::new(['a']).unwrap());
        let p = b.add_state("p", false).unwrap();
        let o = b.add_state("o", true).unwrap();
        b.set_initial(p);
        b.set_final(p);
        b.set_delta(p, 'a', o).unwrap();
        b.set_delta(p, '⊣', p).unwrap();
        b.set_delta(o, 'a', p).unwrap();
        b.set_delta(o, '⊣', o).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn saturation_needs_three() {
        let t = toy();
        let tau = tau_of_letter(&t, '⊣').unwrap();
        assert_eq!(tau.then(&tau), tau);
        let pe = profile_of_word(&t, &w("⊣")).unwrap();
        assert!(pe.is_idempotent());
        assert_eq!(find_saturation_witness(&t, std::slice::from_ref(&tau), std::slice::from_ref(&pe)).unwrap(), None);
        let two = vec![tau.clone(), tau.clone()];
        assert_eq!(find_saturation_witness(&t, &two, &[pe.clone(), pe.clone()]).unwrap(), None);
        let three = vec![tau.clone(), tau.clone(), tau];
        assert_eq!(find_saturation_witness(&t, &three, &[pe.clone(), pe.clone(), pe]).unwrap(), Some((1, 3)));
    }

    #[test]
    fn letter_profile_not_idempotent() {
        let t = toy();
        let pa = profile_of_word(&t, &w("a")).unwrap();
        assert!(!pa.is_idempotent());
        assert!(profile_mul(&pa, &pa).is_idempotent());
    }

    #[test]
    fn ramsey_formula() {
        assert_eq!(ramsey_bound(1), BigUint::from(3u32));
        assert!(ramsey_bound(3) <= ramsey_bound(4));
        let k = ramsey_k(&toy(), 10_000).unwrap();
        assert!(k >= BigUint::from(3u32));
    }
}
