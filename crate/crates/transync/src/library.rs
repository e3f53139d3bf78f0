//! Built-in example transducers, shipped as data files.

use crate::drat::{DetBuilder, DetTransducer};
use crate::error::Result;
use crate::format;
use crate::transducer::Transducer;
use crate::words::{Alphabet, ENDMARKER};

/// Shipped files by name.
pub const FILES: &[(&str, &str)] = &[
    ("t1.tr", include_str!("../data/t1.tr")),
    ("t2.tr", include_str!("../data/t2.tr")),
    ("marked.tr", include_str!("../data/marked.tr")),
    ("marked_u.tr", include_str!("../data/marked_u.tr")),
    ("r1.dtr", include_str!("../data/r1.dtr")),
    ("count.dtr", include_str!("../data/count.dtr")),
];

/// The text of a shipped file.
pub fn file(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

fn shipped_transducer(name: &str) -> Transducer<char> {
    format::parse_transducer(file(name).expect("shipped file")).expect("shipped file parses").1
}

fn shipped_drat(name: &str) -> DetTransducer {
    format::parse_drat(file(name).expect("shipped file")).expect("shipped file parses").1
}

/// `{(a^n, a^{2i}) : n ≥ 1, i < n}`, doubling first.
pub fn t1() -> Transducer<char> {
    shipped_transducer("t1.tr")
}

/// The same relation as [`t1`], doubling last.
pub fn t2() -> Transducer<char> {
    shipped_transducer("t2.tr")
}

/// `{(a^n A, a^n) : n ≥ 0} ∪ {(a^n B, a^i) : n ≥ 1, i < 2n}`.
pub fn marked() -> Transducer<char> {
    shipped_transducer("marked.tr")
}

/// The sequential transducer `a^n α ↦ a^n`.
pub fn marked_uniformizer() -> Transducer<char> {
    shipped_transducer("marked_u.tr")
}

/// `{(a^n A, a^n) : n ≥ 0} ∪ {(a^n B, ε) : n ≥ 1}` as a deterministic
/// transducer; it has no sequential uniformizer.
pub fn count_or_forget() -> DetTransducer {
    shipped_drat("count.dtr")
}

/// The relation `{(u#v#w, v x)}` over `letters ∪ {#}`: `v` is echoed one
/// letter at a time and `x` is free. Echo states are named `e.<letter>`.
pub fn r1_transducer(letters: &[char]) -> Result<DetTransducer> {
    let sigma = Alphabet::new(letters.iter().copied().chain(['#']))?;
    let mut b = DetBuilder::new(&sigma);
    let a = b.add_state("A", false)?;
    let bs = b.add_state("B", false)?;
    let c = b.add_state("C", false)?;
    let d = b.add_state("D", true)?;
    let e = b.add_state("E", false)?;
    b.set_initial(a);
    b.set_final(e);
    b.set_delta(a, '#', bs)?;
    b.set_delta(bs, '#', c)?;
    b.set_delta(c, ENDMARKER, d)?;
    b.set_delta(d, ENDMARKER, e)?;
    for &x in letters {
        let echo = b.add_state(format!("e.{x}"), true)?;
        b.set_delta(a, x, a)?;
        b.set_delta(bs, x, echo)?;
        b.set_delta(echo, x, bs)?;
        b.set_delta(c, x, c)?;
        b.set_delta(d, x, d)?;
    }
    b.build_with_sink()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t1_shape() {
        let t = t1();
        assert_eq!(t.num_states(), 2);
        assert!(t.is_real_time());
        assert_eq!(t.edges().len(), 3);
    }

    #[test]
    fn shipped_r1_is_the_builder() {
        assert_eq!(shipped_drat("r1.dtr"), r1_transducer(&['a', 'b']).unwrap());
    }

    #[test]
    fn shipped_files_are_print_fixpoints() {
        for (name, text) in FILES {
            let once = format::print(&format::parse(text).unwrap());
            let twice = format::print(&format::parse(&once).unwrap());
            assert_eq!(once, twice, "{name}");
        }
    }

    #[test]
    fn marked_uniformizer_is_sequential() {
        assert!(marked_uniformizer().is_sequential());
        assert!(!marked().is_sequential());
    }
}
