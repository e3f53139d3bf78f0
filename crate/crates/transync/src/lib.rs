//! Finite transducers modulo resynchronizers.
//!
//! The crate decides inclusion and equivalence of rational transductions up to
//! a resynchronizer (in particular the k-delay resynchronizers), synthesizes
//! sequential uniformizers through safety games, solves the uniformization
//! game for deterministic endmarked transducers, and exposes the transition
//! monoid and pumping machinery used for finite-valued transducers.
//!
//! Module map:
//!
//! * [`words`]: alphabets, synchronization words, free-group delays, lag.
//! * [`automata`]: NFAs and DFAs with the Boolean operations.
//! * [`transducer`]: nondeterministic transducers and their synchronization languages.
//! * [`resync`]: resynchronizers, the k-delay construction and the deciders.
//! * [`game`] and [`uniformize`]: safety games and sequential uniformizer synthesis.
//! * [`drat`]: deterministic endmarked transducers and their lookahead game.
//! * [`monoid`]: transition monoids, idempotents and pumping functions.
//! * [`format`]: text formats shared with the command-line tool.

pub mod automata;
pub mod drat;
pub mod error;
pub mod format;
pub mod game;
pub mod library;
pub mod monoid;
pub mod parallel;
pub mod random;
pub mod resync;
pub mod transducer;
pub mod uniformize;
pub mod words;

pub use error::{Error, Result};
pub use words::{Alphabet, Color, FreeGroupWord, Lag, SyncLetter, SyncWord, ENDMARKER};
