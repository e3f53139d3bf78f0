//! Line-based text formats for transducers, resynchronizers and
//! deterministic transducers with endmarker.
//!
//! ```text
//! // a comment
//! transducer t1
//! alphabet a
//! states p q
//! initial p
//! final q eps
//! trans p a aa p
//! trans p a eps q
//! ```
//!
//! `eps` is the empty word. A `resync` file uses the same lines with
//! comma-separated colored letters (`i.a,o.b`) as words. A `drat` file
//! declares `istate`/`ostate` lines, `final <state>` and
//! `delta <src> <letter|end> <dst>` with a total transition function.

use crate::drat::{letter_token, DetBuilder, DetTransducer};
use crate::error::{Error, Result};
use crate::transducer::Transducer;
use crate::words::{format_sync_word, parse_sync_word, Alphabet, SyncLetter, ENDMARKER};

/// A parsed file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Transducer { name: String, transducer: Transducer<char> },
    Resync { name: String, alphabet: Alphabet, carrier: Transducer<SyncLetter> },
    Drat { name: String, transducer: DetTransducer },
}

impl Document {
    pub fn name(&self) -> &str {
        match self {
            Document::Transducer { name, .. } | Document::Resync { name, .. } | Document::Drat { name, .. } => name,
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Non-empty, non-comment lines with their 1-based numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        (!l.is_empty() && !l.starts_with("//")).then(|| (i + 1, l.split_whitespace().collect()))
    })
}

fn arity(line: usize, toks: &[&str], n: usize) -> Result<()> {
    if toks.len() == n {
        Ok(())
    } else {
        Err(err(line, format!("`{}` expects {} argument(s)", toks[0], n - 1)))
    }
}

fn parse_alphabet(line: usize, arg: &str) -> Result<Alphabet> {
    Alphabet::new(arg.split(',').map(|s| {
        let mut cs = s.chars();
        match (cs.next(), cs.next()) {
            (Some(c), None) => Ok(c),
            _ => Err(err(line, format!("letter {s:?} is not a single character"))),
        }
    }).collect::<Result<Vec<char>>>()?)
    .map_err(|e| err(line, e.to_string()))
}

fn char_word(line: usize, alphabet: &Alphabet, tok: &str) -> Result<Vec<char>> {
    if tok == "eps" {
        return Ok(Vec::new());
    }
    let w: Vec<char> = tok.chars().collect();
    alphabet.check_word(&w).map_err(|e| err(line, e.to_string()))?;
    Ok(w)
}

fn sync_word(line: usize, alphabet: &Alphabet, tok: &str) -> Result<Vec<SyncLetter>> {
    if tok == "eps" {
        return Ok(Vec::new());
    }
    let w = parse_sync_word(&tok.replace(',', " ")).map_err(|e| err(line, e.to_string()))?;
    if let Some(l) = w.iter().find(|l| !alphabet.contains(l.letter)) {
        return Err(err(line, format!("letter {:?} is not in the alphabet", l.letter)));
    }
    Ok(w)
}

/// Parses any of the three formats.
pub fn parse(text: &str) -> Result<Document> {
    let mut it = lines(text);
    let (line, head) = it.next().ok_or_else(|| err(1, "empty file"))?;
    if head.len() != 2 {
        return Err(err(line, "expected `transducer <name>`, `resync <name>` or `drat <name>`"));
    }
    let name = head[1].to_string();
    let (line, toks) = it.next().ok_or_else(|| err(line, "missing alphabet line"))?;
    if toks[0] != "alphabet" {
        return Err(err(line, "expected `alphabet`"));
    }
    arity(line, &toks, 2)?;
    let alphabet = parse_alphabet(line, toks[1])?;
    match head[0] {
        "transducer" => {
            let transducer = parse_body(it, &alphabet, alphabet.letters().to_vec(), char_word)?;
            Ok(Document::Transducer { name, transducer })
        }
        "resync" => {
            let carrier = parse_body(it, &alphabet, alphabet.sync_letters(), sync_word)?;
            Ok(Document::Resync { name, alphabet, carrier })
        }
        "drat" => Ok(Document::Drat { name, transducer: parse_drat_body(it, &alphabet)? }),
        other => Err(err(line, format!("unknown file kind `{other}`"))),
    }
}

fn parse_body<'a, L: crate::automata::Letter>(
    it: impl Iterator<Item = (usize, Vec<&'a str>)>,
    alphabet: &Alphabet,
    letters: Vec<L>,
    word: fn(usize, &Alphabet, &str) -> Result<Vec<L>>,
) -> Result<Transducer<L>> {
    let mut t = Transducer::new(letters);
    let state = |t: &Transducer<L>, line: usize, name: &str| {
        t.state_index(name).ok_or_else(|| err(line, format!("undeclared state `{name}`")))
    };
    for (line, toks) in it {
        match toks[0] {
            "states" => {
                for &n in &toks[1..] {
                    if t.state_index(n).is_some() {
                        return Err(err(line, format!("duplicate state `{n}`")));
                    }
                    t.add_state(n);
                }
            }
            "initial" => {
                for &n in &toks[1..] {
                    let q = state(&t, line, n)?;
                    t.set_initial(q);
                }
            }
            "final" => {
                if toks.len() != 2 && toks.len() != 3 {
                    return Err(err(line, "`final` expects a state and an optional output word"));
                }
                let q = state(&t, line, toks[1])?;
                let out = match toks.get(2) {
                    Some(w) => word(line, alphabet, w)?,
                    None => Vec::new(),
                };
                t.set_final(q, out);
            }
            "trans" => {
                arity(line, &toks, 5)?;
                let src = state(&t, line, toks[1])?;
                let input = word(line, alphabet, toks[2])?;
                let output = word(line, alphabet, toks[3])?;
                let dst = state(&t, line, toks[4])?;
                t.add_transition(src, input, output, dst);
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }
    Ok(t)
}

fn parse_drat_body<'a>(it: impl Iterator<Item = (usize, Vec<&'a str>)>, alphabet: &Alphabet) -> Result<DetTransducer> {
    let mut b = DetBuilder::new(alphabet);
    let mut last = 1;
    let state = |b: &DetBuilder, line: usize, name: &str| {
        b.state_index(name).ok_or_else(|| err(line, format!("undeclared state `{name}`")))
    };
    for (line, toks) in it {
        last = line;
        match toks[0] {
            kind @ ("istate" | "ostate") => {
                for &n in &toks[1..] {
                    b.add_state(n, kind == "ostate").map_err(|e| err(line, e.to_string()))?;
                }
            }
            "initial" => {
                arity(line, &toks, 2)?;
                let q = state(&b, line, toks[1])?;
                b.set_initial(q);
            }
            "final" => {
                for &n in &toks[1..] {
                    let q = state(&b, line, n)?;
                    b.set_final(q);
                }
            }
            "delta" => {
                arity(line, &toks, 4)?;
                let src = state(&b, line, toks[1])?;
                let letter = match toks[2] {
                    "end" => ENDMARKER,
                    tok => {
                        let w = char_word(line, alphabet, tok)?;
                        if w.len() != 1 {
                            return Err(err(line, "`delta` reads exactly one letter"));
                        }
                        w[0]
                    }
                };
                let dst = state(&b, line, toks[3])?;
                b.set_delta(src, letter, dst).map_err(|e| err(line, e.to_string()))?;
            }
            other => return Err(err(line, format!("unknown keyword `{other}`"))),
        }
    }
    b.build().map_err(|e| err(last, e.to_string()))
}

/// Parses a `transducer` file.
pub fn parse_transducer(text: &str) -> Result<(String, Transducer<char>)> {
    match parse(text)? {
        Document::Transducer { name, transducer } => Ok((name, transducer)),
        _ => Err(err(1, "expected a `transducer` file")),
    }
}

/// Parses a `drat` file.
pub fn parse_drat(text: &str) -> Result<(String, DetTransducer)> {
    match parse(text)? {
        Document::Drat { name, transducer } => Ok((name, transducer)),
        _ => Err(err(1, "expected a `drat` file")),
    }
}

fn alphabet_line(letters: &[char]) -> String {
    let ls: Vec<String> = letters.iter().map(|c| c.to_string()).collect();
    format!("alphabet {}\n", ls.join(","))
}

fn print_body<L: crate::automata::Letter>(t: &Transducer<L>, word: impl Fn(&[L]) -> String) -> String {
    let mut s = String::new();
    if t.num_states() > 0 {
        s.push_str(&format!("states {}\n", t.names().join(" ")));
    }
    if !t.initial().is_empty() {
        let names: Vec<&str> = t.initial().iter().map(|&q| t.name(q)).collect();
        s.push_str(&format!("initial {}\n", names.join(" ")));
    }
    for q in 0..t.num_states() {
        if let Some(out) = t.final_output(q) {
            s.push_str(&format!("final {} {}\n", t.name(q), word(out)));
        }
    }
    for e in t.edges() {
        s.push_str(&format!("trans {} {} {} {}\n", t.name(e.src), word(&e.input), word(&e.output), t.name(e.dst)));
    }
    s
}

fn char_token(w: &[char]) -> String {
    if w.is_empty() {
        "eps".into()
    } else {
        w.iter().collect()
    }
}

/// Prints a `transducer` file.
pub fn print_transducer(name: &str, t: &Transducer<char>) -> String {
    format!("transducer {name}\n{}{}", alphabet_line(t.alphabet()), print_body(t, char_token))
}

/// Prints a `resync` file for a carrier over the colored letters of `alphabet`.
pub fn print_resync(name: &str, alphabet: &Alphabet, carrier: &Transducer<SyncLetter>) -> String {
    let word = |w: &[SyncLetter]| if w.is_empty() { "eps".to_string() } else { format_sync_word(w).replace(' ', ",") };
    format!("resync {name}\n{}{}", alphabet_line(alphabet.letters()), print_body(carrier, word))
}

/// Prints a `drat` file.
pub fn print_drat(name: &str, t: &DetTransducer) -> String {
    let mut s = format!("drat {name}\n{}", alphabet_line(t.alphabet()));
    let mut q = 0;
    while q < t.num_states() {
        let kind = t.is_output(q);
        let mut group = Vec::new();
        while q < t.num_states() && t.is_output(q) == kind {
            group.push(t.name(q));
            q += 1;
        }
        s.push_str(&format!("{} {}\n", if kind { "ostate" } else { "istate" }, group.join(" ")));
    }
    s.push_str(&format!("initial {}\n", t.name(t.initial())));
    let finals: Vec<&str> = (0..t.num_states()).filter(|&q| t.is_final(q)).map(|q| t.name(q)).collect();
    if !finals.is_empty() {
        s.push_str(&format!("final {}\n", finals.join(" ")));
    }
    let letters = t.letters_with_end();
    for q in 0..t.num_states() {
        for (slot, &c) in letters.iter().enumerate() {
            s.push_str(&format!("delta {} {} {}\n", t.name(q), letter_token(c), t.name(t.delta_slot(q, slot))));
        }
    }
    s
}

/// Prints any document.
pub fn print(doc: &Document) -> String {
    match doc {
        Document::Transducer { name, transducer } => print_transducer(name, transducer),
        Document::Resync { name, alphabet, carrier } => print_resync(name, alphabet, carrier),
        Document::Drat { name, transducer } => print_drat(name, transducer),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resync::build_dk;

    const T1: &str = "transducer t1\nalphabet a\nstates p q\ninitial p\nfinal q eps\ntrans p a aa p\ntrans p a eps q\ntrans q a eps q\n";

    #[test]
    fn round_trip() {
        let doc = parse(T1).unwrap();
        assert_eq!(print(&doc), T1);
        let Document::Transducer { transducer, .. } = &doc else { panic!() };
        assert_eq!(transducer.num_states(), 2);
        assert_eq!(transducer.edges().len(), 3);
    }

    #[test]
    fn undeclared_state_line() {
        let text = "transducer x\nalphabet a\nstates p\n\ntrans p a a r\n";
        assert_eq!(parse(text), Err(Error::Parse { line: 5, message: "undeclared state `r`".into() }));
    }

    #[test]
    fn endmarker_rejected_in_alphabet() {
        assert!(matches!(parse("drat x\nalphabet a,⊣\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn resync_round_trip() {
        let sigma = Alphabet::new(['a']).unwrap();
        let carrier = build_dk(&sigma, 1).carrier().unwrap().clone();
        let text = print_resync("d1", &sigma, &carrier);
        let doc = parse(&text).unwrap();
        assert_eq!(doc, Document::Resync { name: "d1".into(), alphabet: sigma, carrier });
        assert_eq!(print(&doc), text);
    }

    #[test]
    fn unknown_letter_line() {
        let text = "transducer x\nalphabet a\nstates p\ntrans p b a p\n";
        assert!(matches!(parse(text), Err(Error::Parse { line: 4, .. })));
    }
}
