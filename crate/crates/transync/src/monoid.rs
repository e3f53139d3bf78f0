//! Transition monoids of real-time transducers and the pumping functions
//! built on their idempotents.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::transducer::Transducer;
use crate::words::{del, FreeGroupWord, Lag};

/// Default cap on the number of generated monoid elements.
pub const DEFAULT_MONOID_CAP: usize = 10_000;

/// A binary relation on the states of a transducer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonoidElement {
    size: usize,
    bits: Vec<bool>,
}

impl MonoidElement {
    pub fn empty(size: usize) -> Self {
        MonoidElement { size, bits: vec![false; size * size] }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = MonoidElement::empty(size);
        for q in 0..size {
            m.insert(q, q);
        }
        m
    }

    pub fn from_pairs(size: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut m = MonoidElement::empty(size);
        for (p, q) in pairs {
            m.insert(p, q);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, p: usize, q: usize) -> bool {
        self.bits[p * self.size + q]
    }

    pub fn insert(&mut self, p: usize, q: usize) {
        self.bits[p * self.size + q] = true;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.size).flat_map(move |p| (0..self.size).filter(move |&q| self.contains(p, q)).map(move |q| (p, q)))
    }

    pub fn is_idempotent(&self) -> bool {
        monoid_mul(self, self) == *self
    }
}

impl fmt::Display for MonoidElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs().map(|(p, q)| format!("({p},{q})")).collect();
        write!(f, "{{{}}}", parts.join(" "))
    }
}

/// Relational composition.
pub fn monoid_mul(left: &MonoidElement, right: &MonoidElement) -> MonoidElement {
    let n = left.size;
    let mut out = MonoidElement::empty(n);
    for (p, r) in left.pairs() {
        for q in 0..n {
            if right.contains(r, q) {
                out.insert(p, q);
            }
        }
    }
    out
}

fn require_real_time(t: &Transducer<char>) -> Result<()> {
    if t.is_real_time() {
        Ok(())
    } else {
        Err(Error::NotRealTime("every transition must read exactly one letter".into()))
    }
}

/// `σ(a)` for each letter of the alphabet, in alphabet order.
pub fn letter_elements(t: &Transducer<char>) -> Result<Vec<MonoidElement>> {
    require_real_time(t)?;
    Ok(t.alphabet()
        .iter()
        .map(|&a| {
            MonoidElement::from_pairs(
                t.num_states(),
                t.edges().iter().filter(|e| e.input[0] == a).map(|e| (e.src, e.dst)),
            )
        })
        .collect())
}

/// `σ(w)`: the pairs of states connected by a run on `w`.
pub fn sigma(t: &Transducer<char>, w: &[char]) -> Result<MonoidElement> {
    let letters = letter_elements(t)?;
    let mut m = MonoidElement::identity(t.num_states());
    for &a in w {
        let i = t.alphabet().binary_search(&a).map_err(|_| Error::UnknownLetter(a.to_string()))?;
        m = monoid_mul(&m, &letters[i]);
    }
    Ok(m)
}

/// The transition monoid, generated breadth-first from the identity.
pub fn generate_monoid(t: &Transducer<char>, cap: usize) -> Result<Vec<MonoidElement>> {
    let gens = letter_elements(t)?;
    let id = MonoidElement::identity(t.num_states());
    let mut seen = HashSet::from([id.clone()]);
    let mut elems = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let r = monoid_mul(&m, g);
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

/// Distinct `q1, q2` with `(q1,q1), (q1,q2), (q2,q2)` all in `m`.
pub fn is_s_form(m: &MonoidElement) -> bool {
    (0..m.size).any(|p| {
        m.contains(p, p) && (0..m.size).any(|q| q != p && m.contains(p, q) && m.contains(q, q))
    })
}

/// A state `q` with `(q1,q), (q,q), (q,q2)` in `m`.
pub fn z_form_witness(m: &MonoidElement, q1: usize, q2: usize) -> Option<usize> {
    (0..m.size).find(|&q| m.contains(q1, q) && m.contains(q, q) && m.contains(q, q2))
}

/// First `i1 < i2 < i3 < i4` (blocks numbered from 1, `i4` up to
/// `len + 1`) such that the three consecutive groups of blocks map to the
/// same idempotent.
pub fn find_idempotent_triple(t: &Transducer<char>, blocks: &[Vec<char>]) -> Result<Option<(usize, usize, usize, usize)>> {
    let n = blocks.len();
    let group = |i: usize, j: usize| -> Result<MonoidElement> {
        let w: Vec<char> = blocks[i - 1..j - 1].concat();
        sigma(t, &w)
    };
    for i1 in 1..=n {
        for i2 in i1 + 1..=n {
            let m = group(i1, i2)?;
            if !m.is_idempotent() {
                continue;
            }
            for i3 in i2 + 1..=n {
                if group(i2, i3)? != m {
                    continue;
                }
                for i4 in i3 + 1..=n + 1 {
                    if group(i3, i4)? == m {
                        return Ok(Some((i1, i2, i3, i4)));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// A factorization `v = w x y z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub w: Vec<char>,
    pub x: Vec<char>,
    pub y: Vec<char>,
    pub z: Vec<char>,
}

/// The ordered factorizations of `v` with `σ(x) = σ(y)` idempotent, the
/// induced split `v = v_1 … v_{n+1}`, and the cut index `l` (from 1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PumpDecomposition {
    pub factorizations: Vec<Factorization>,
    pub pieces: Vec<Vec<char>>,
    pub cut: usize,
}

impl PumpDecomposition {
    pub fn n(&self) -> usize {
        self.factorizations.len()
    }

    /// `y_i`, numbered from 1.
    pub fn y(&self, i: usize) -> &[char] {
        &self.factorizations[i - 1].y
    }

    /// `v_i`, numbered from 1.
    pub fn piece(&self, i: usize) -> &[char] {
        &self.pieces[i - 1]
    }
}

/// Enumerates and orders the factorizations of `v`; `x` and `y` are nonempty.
pub fn decompose_for_pumping(t: &Transducer<char>, v: &[char]) -> Result<PumpDecomposition> {
    let len = v.len();
    let mut found: Vec<(usize, usize, usize, Factorization)> = Vec::new();
    for ws in 0..=len {
        for xe in ws + 1..=len {
            let sx = sigma(t, &v[ws..xe])?;
            if !sx.is_idempotent() {
                continue;
            }
            for ye in xe + 1..=len {
                if sigma(t, &v[xe..ye])? == sx {
                    let f = Factorization {
                        w: v[..ws].to_vec(),
                        x: v[ws..xe].to_vec(),
                        y: v[xe..ye].to_vec(),
                        z: v[ye..].to_vec(),
                    };
                    found.push((xe, ye - xe, xe - ws, f));
                }
            }
        }
    }
    found.sort_by_key(|(wx, y, x, _)| (*wx, *y, *x));
    let factorizations: Vec<Factorization> = found.into_iter().map(|(.., f)| f).collect();
    let mut pieces = Vec::with_capacity(factorizations.len() + 1);
    let mut start = 0;
    for f in &factorizations {
        let end = f.w.len() + f.x.len();
        pieces.push(v[start..end].to_vec());
        start = end;
    }
    pieces.push(v[start..].to_vec());
    let cut = factorizations.iter().position(|f| f.z.is_empty()).map_or(factorizations.len() + 1, |d| d + 1);
    Ok(PumpDecomposition { factorizations, pieces, cut })
}

fn power(w: &[char], times: usize) -> Vec<char> {
    w.repeat(times)
}

fn check_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidArgument("k must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `v_1 y_1^{12k} … v_n y_n^{12k} v_{n+1}`.
pub fn phi(t: &Transducer<char>, v: &[char], k: usize) -> Result<Vec<char>> {
    let d = decompose_for_pumping(t, v)?;
    let mut out = Vec::new();
    for i in 1..=d.n() {
        out.extend_from_slice(d.piece(i));
        out.extend(power(d.y(i), 12 * k));
    }
    out.extend_from_slice(d.piece(d.n() + 1));
    Ok(out)
}

/// `y_l^{12k-1} v_{l+1} y_{l+1}^{12k} … v_n y_n^{12k} v_{n+1}`; empty when
/// no factorization has an empty `z`.
pub fn phi_prime(t: &Transducer<char>, v: &[char], k: usize) -> Result<Vec<char>> {
    check_k(k)?;
    let d = decompose_for_pumping(t, v)?;
    let l = d.cut;
    if l > d.n() {
        return Ok(Vec::new());
    }
    let mut out = power(d.y(l), 12 * k - 1);
    for i in l + 1..=d.n() {
        out.extend_from_slice(d.piece(i));
        out.extend(power(d.y(i), 12 * k));
    }
    out.extend_from_slice(d.piece(d.n() + 1));
    Ok(out)
}

/// `ρ(ε) = ε`, `ρ(wa) = ρ(w) a φ'(wa)`.
pub fn rho_pump(t: &Transducer<char>, v: &[char], k: usize) -> Result<Vec<char>> {
    check_k(k)?;
    let mut out = Vec::new();
    for i in 1..=v.len() {
        out.push(v[i - 1]);
        out.extend(phi_prime(t, &v[..i], k)?);
    }
    Ok(out)
}

/// Output prefixes, one per input position, of the unique run on `v` from an
/// initial state to `end`.
fn unique_run(t: &Transducer<char>, v: &[char], end: usize) -> Result<Vec<Vec<char>>> {
    require_real_time(t)?;
    let mut runs: Vec<Vec<Vec<char>>> = Vec::new();
    let mut stack: Vec<(usize, Vec<Vec<char>>)> = t.initial().iter().map(|&q| (q, vec![Vec::new()])).collect();
    while let Some((q, outs)) = stack.pop() {
        let i = outs.len() - 1;
        if i == v.len() {
            if q == end {
                runs.push(outs);
                if runs.len() > 1 {
                    return Err(Error::RunNotUnique);
                }
            }
            continue;
        }
        for e in t.edges().iter().filter(|e| e.src == q && e.input[0] == v[i]) {
            let mut next = outs.clone();
            let mut o = outs[i].clone();
            o.extend_from_slice(&e.output);
            next.push(o);
            stack.push((e.dst, next));
        }
    }
    runs.pop().ok_or(Error::NoRun)
}

/// Delay between the outputs of the runs on `v` ending in `p` and in `q`.
pub fn run_delay(t: &Transducer<char>, v: &[char], p: usize, q: usize) -> Result<FreeGroupWord> {
    let rp = unique_run(t, v, p)?;
    let rq = unique_run(t, v, q)?;
    Ok(del(&rp[v.len()], &rq[v.len()]))
}

/// Largest delay over all input prefixes of the two runs.
pub fn run_lag(t: &Transducer<char>, v: &[char], p: usize, q: usize) -> Result<Lag> {
    let rp = unique_run(t, v, p)?;
    let rq = unique_run(t, v, q)?;
    Ok(Lag::Finite(rp.iter().zip(&rq).map(|(a, b)| del(a, b).len()).max().unwrap_or(0)))
}

/// `c^{4c}`, floored at 4: the coarse four-clique Ramsey bound for `c` colours.
pub fn four_clique_bound(colours: u64) -> BigUint {
    let b = BigUint::from(colours).pow((4 * colours) as u32);
    b.max(BigUint::from(4u32))
}

/// `2·|Q|·2·C·m` with `C` the four-clique bound over the monoid size and `m`
/// the longest output (at least 1).
pub fn nt_bound_formula(states: usize, monoid_size: u64, max_output: usize) -> BigUint {
    BigUint::from(4 * states as u64) * four_clique_bound(monoid_size) * BigUint::from(max_output.max(1) as u64)
}

/// [`nt_bound_formula`] for `t`.
pub fn nt_bound(t: &Transducer<char>, cap: usize) -> Result<BigUint> {
    let c = generate_monoid(t, cap)?.len() as u64;
    Ok(nt_bound_formula(t.num_states(), c, t.max_output_len()))
}
