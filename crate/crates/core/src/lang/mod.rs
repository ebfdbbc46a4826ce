//! Words, regular expressions, automata and transition monoids.

pub mod alphabet;
pub mod dfa;
pub mod monoid;
pub mod nfa;
pub mod regex;

pub use alphabet::{is_piece, words_up_to, Alphabet, Symbol, Word};
pub use dfa::Dfa;
pub use monoid::{transition_monoid, MonoidMorphism, Recognizer};
pub use nfa::{Combine, Nfa, NfaJson, Query};
pub use regex::Regex;

/// `(B*, B^⊛)` for the sub-alphabet `mask`.
pub fn alphabet_languages(alphabet: &Alphabet, mask: u32) -> (Nfa, Nfa) {
    (
        Nfa::alphabet_star(alphabet, mask),
        Nfa::alphabet_exact(alphabet, mask),
    )
}
