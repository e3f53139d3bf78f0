//! Alphabets, colored synchronization words, free-group delays and lag.

use std::fmt;

use crate::error::{Error, Result};

/// The reserved endmarker symbol. It never belongs to a user alphabet.
pub const ENDMARKER: char = '⊣';

/// A finite, ordered, non-empty set of letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    /// Builds an alphabet, keeping letters in ascending order.
    ///
    /// Rejects empty sets, duplicates, whitespace, commas and the endmarker.
    pub fn new<I: IntoIterator<Item = char>>(letters: I) -> Result<Self> {
        let mut v: Vec<char> = letters.into_iter().collect();
        if v.is_empty() {
            return Err(Error::Alphabet("alphabet is empty".into()));
        }
        for &c in &v {
            if c == ENDMARKER {
                return Err(Error::Alphabet("the endmarker ⊣ cannot be a letter".into()));
            }
            if c.is_whitespace() || c.is_control() || c == ',' {
                return Err(Error::Alphabet(format!("{c:?} cannot be a letter")));
            }
        }
        v.sort_unstable();
        let before = v.len();
        v.dedup();
        if v.len() != before {
            return Err(Error::Alphabet("duplicate letter".into()));
        }
        Ok(Alphabet { letters: v })
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn contains(&self, c: char) -> bool {
        self.letters.binary_search(&c).is_ok()
    }

    pub fn index_of(&self, c: char) -> Option<usize> {
        self.letters.binary_search(&c).ok()
    }

    /// Letters followed by the endmarker.
    pub fn with_endmarker(&self) -> Vec<char> {
        let mut v = self.letters.clone();
        v.push(ENDMARKER);
        v
    }

    /// The colored alphabet, input letters first.
    pub fn sync_letters(&self) -> Vec<SyncLetter> {
        let mut v: Vec<SyncLetter> = self.letters.iter().map(|&c| SyncLetter::input(c)).collect();
        v.extend(self.letters.iter().map(|&c| SyncLetter::output(c)));
        v
    }

    /// Checks that every letter of `w` belongs to the alphabet.
    pub fn check_word(&self, w: &[char]) -> Result<()> {
        match w.iter().find(|c| !self.contains(**c)) {
            Some(c) => Err(Error::UnknownLetter(c.to_string())),
            None => Ok(()),
        }
    }

    /// All words of length at most `n`, shortest first, then in letter order.
    pub fn words_up_to(&self, n: usize) -> Vec<Vec<char>> {
        words_up_to(&self.letters, n)
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.letters.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", s.join(","))
    }
}

/// All words over `letters` of length at most `n`, by length then letter order.
pub fn words_up_to<L: Copy>(letters: &[L], n: usize) -> Vec<Vec<L>> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(layer.len() * letters.len());
        for w in &layer {
            for &a in letters {
                let mut x: Vec<L> = w.clone();
                x.push(a);
                next.push(x);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Which side of a pair a colored letter belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Color {
    In,
    Out,
}

/// A letter of the colored alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SyncLetter {
    pub color: Color,
    pub letter: char,
}

impl SyncLetter {
    pub fn input(letter: char) -> Self {
        SyncLetter { color: Color::In, letter }
    }

    pub fn output(letter: char) -> Self {
        SyncLetter { color: Color::Out, letter }
    }

    pub fn is_input(self) -> bool {
        self.color == Color::In
    }
}

impl fmt::Display for SyncLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.color {
            Color::In => write!(f, "i.{}", self.letter),
            Color::Out => write!(f, "o.{}", self.letter),
        }
    }
}

/// A synchronization of an (input, output) pair.
pub type SyncWord = Vec<SyncLetter>;

/// Colors every letter of `w` with `color`.
pub fn colored(w: &[char], color: Color) -> SyncWord {
    w.iter().map(|&letter| SyncLetter { color, letter }).collect()
}

/// Parses the CLI encoding: whitespace-separated `i.<letter>` / `o.<letter>`
/// tokens. An empty string or `eps` is the empty word.
pub fn parse_sync_word(s: &str) -> Result<SyncWord> {
    let mut w = Vec::new();
    for tok in s.split_whitespace() {
        if tok == "eps" {
            continue;
        }
        w.push(parse_sync_token(tok)?);
    }
    Ok(w)
}

fn parse_sync_token(tok: &str) -> Result<SyncLetter> {
    let mut it = tok.chars();
    let color = match (it.next(), it.next()) {
        (Some('i'), Some('.')) => Color::In,
        (Some('o'), Some('.')) => Color::Out,
        _ => return Err(Error::InvalidArgument(format!("bad sync token {tok:?}"))),
    };
    match (it.next(), it.next()) {
        (Some(letter), None) => Ok(SyncLetter { color, letter }),
        _ => Err(Error::InvalidArgument(format!("bad sync token {tok:?}"))),
    }
}

/// Formats a sync word in the CLI encoding (`eps` when empty).
pub fn format_sync_word(w: &[SyncLetter]) -> String {
    if w.is_empty() {
        return "eps".into();
    }
    w.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ")
}

/// Erases the letters of the other color.
pub fn project(w: &[SyncLetter], color: Color) -> Vec<char> {
    w.iter().filter(|l| l.color == color).map(|l| l.letter).collect()
}

/// True iff both projections agree.
pub fn equivalent(w: &[SyncLetter], w2: &[SyncLetter]) -> bool {
    project(w, Color::In) == project(w2, Color::In) && project(w, Color::Out) == project(w2, Color::Out)
}

/// A letter or its formal inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub letter: char,
    pub inverse: bool,
}

impl Generator {
    pub fn pos(letter: char) -> Self {
        Generator { letter, inverse: false }
    }

    pub fn neg(letter: char) -> Self {
        Generator { letter, inverse: true }
    }

    pub fn inv(self) -> Self {
        Generator { letter: self.letter, inverse: !self.inverse }
    }
}

/// An irreducible word of the free group.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FreeGroupWord(Vec<Generator>);

impl FreeGroupWord {
    pub fn identity() -> Self {
        FreeGroupWord(Vec::new())
    }

    /// Reduces an arbitrary sequence of generators.
    pub fn reduce<I: IntoIterator<Item = Generator>>(raw: I) -> Self {
        let mut stack: Vec<Generator> = Vec::new();
        for g in raw {
            if stack.last() == Some(&g.inv()) {
                stack.pop();
            } else {
                stack.push(g);
            }
        }
        FreeGroupWord(stack)
    }

    /// A positive word.
    pub fn from_letters(w: &[char]) -> Self {
        FreeGroupWord(w.iter().map(|&c| Generator::pos(c)).collect())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.0
    }

    /// Number of signed letters.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn invert(&self) -> Self {
        FreeGroupWord(self.0.iter().rev().map(|g| g.inv()).collect())
    }

    /// Reduced product `self · other`.
    pub fn mul(&self, other: &FreeGroupWord) -> Self {
        FreeGroupWord::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    /// True iff the word only has positive letters.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|g| !g.inverse)
    }

    /// True iff the word only has inverse letters.
    pub fn is_negative(&self) -> bool {
        self.0.iter().all(|g| g.inverse)
    }

    /// The letters of a positive word.
    pub fn positive_letters(&self) -> Option<Vec<char>> {
        self.is_positive().then(|| self.0.iter().map(|g| g.letter).collect())
    }

    /// True iff no adjacent pair cancels.
    pub fn is_irreducible(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != p[1].inv())
    }

    /// Single-token rendering, e.g. `ab` or `a^-1b^-1`; `1` for the identity.
    pub fn compact(&self) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        let mut s = String::new();
        for g in &self.0 {
            s.push(g.letter);
            if g.inverse {
                s.push_str("^-1");
            }
        }
        s
    }
}

impl fmt::Display for FreeGroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "eps");
        }
        let toks: Vec<String> = self
            .0
            .iter()
            .map(|g| if g.inverse { format!("{}^-1", g.letter) } else { g.letter.to_string() })
            .collect();
        write!(f, "{}", toks.join(" "))
    }
}

/// Reduces `raw` after checking every letter against `alphabet`.
pub fn reduce_free(alphabet: &Alphabet, raw: &[Generator]) -> Result<FreeGroupWord> {
    if let Some(g) = raw.iter().find(|g| !alphabet.contains(g.letter)) {
        return Err(Error::UnknownLetter(g.letter.to_string()));
    }
    Ok(FreeGroupWord::reduce(raw.iter().copied()))
}

/// Parses whitespace-separated `<letter>` / `<letter>^-1` tokens (not reduced).
pub fn parse_generators(s: &str) -> Result<Vec<Generator>> {
    let mut out = Vec::new();
    for tok in s.split_whitespace() {
        if tok == "eps" {
            continue;
        }
        let mut chars = tok.chars();
        let letter = chars.next().expect("non-empty token");
        let rest: String = chars.collect();
        match rest.as_str() {
            "" => out.push(Generator::pos(letter)),
            "^-1" => out.push(Generator::neg(letter)),
            _ => return Err(Error::InvalidArgument(format!("bad free-group token {tok:?}"))),
        }
    }
    Ok(out)
}

/// The delay `reduce(u⁻¹ v)` between two plain words.
pub fn del(u: &[char], v: &[char]) -> FreeGroupWord {
    let common = u.iter().zip(v).take_while(|(a, b)| a == b).count();
    let mut g: Vec<Generator> = u[common..].iter().rev().map(|&c| Generator::neg(c)).collect();
    g.extend(v[common..].iter().map(|&c| Generator::pos(c)));
    FreeGroupWord(g)
}

/// A natural number or infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Lag {
    Finite(usize),
    Infinite,
}

impl Lag {
    pub fn at_most(self, k: usize) -> bool {
        matches!(self, Lag::Finite(n) if n <= k)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Lag::Finite(n) => Some(n),
            Lag::Infinite => None,
        }
    }
}

impl fmt::Display for Lag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Lag::Finite(n) => write!(f, "{n}"),
            Lag::Infinite => write!(f, "inf"),
        }
    }
}

/// Output prefixes emitted before each input letter, plus the full output.
fn output_blocks(w: &[SyncLetter]) -> Vec<Vec<char>> {
    let mut blocks = Vec::new();
    let mut out = Vec::new();
    for l in w {
        match l.color {
            Color::In => blocks.push(out.clone()),
            Color::Out => out.push(l.letter),
        }
    }
    blocks.push(out);
    blocks
}

/// Maximum delay over input-aligned prefixes, without requiring equal
/// outputs; `None` when the input projections differ.
pub fn aligned_lag(w: &[SyncLetter], w2: &[SyncLetter]) -> Option<usize> {
    if project(w, Color::In) != project(w2, Color::In) {
        return None;
    }
    let a = output_blocks(w);
    let b = output_blocks(w2);
    Some(a.iter().zip(&b).map(|(x, y)| del(x, y).len()).max().unwrap_or(0))
}

/// Maximum delay over input-aligned prefixes; infinite for inequivalent words.
pub fn lag(w: &[SyncLetter], w2: &[SyncLetter]) -> Lag {
    match aligned_lag(w, w2) {
        Some(n) if equivalent(w, w2) => Lag::Finite(n),
        _ => Lag::Infinite,
    }
}
