use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a symbol inside its [`Alphabet`].
pub type Symbol = u8;

/// A finite word, as a sequence of symbol indices. The empty word is `vec![]`.
pub type Word = Vec<Symbol>;

pub const MAX_ALPHABET: usize = 16;

/// An ordered set of single-character symbols.
///
/// Symbols are kept sorted, so the index of a symbol only depends on the set.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut symbols: Vec<char> = symbols.into_iter().collect();
        symbols.sort_unstable();
        let before = symbols.len();
        symbols.dedup();
        if symbols.len() != before {
            return Err(Error::invalid("alphabet symbols must be distinct"));
        }
        if symbols.is_empty() || symbols.len() > MAX_ALPHABET {
            return Err(Error::invalid(format!(
                "alphabet size must be in 1..={MAX_ALPHABET}, got {}",
                symbols.len()
            )));
        }
        if let Some(c) = symbols
            .iter()
            .find(|c| c.is_whitespace() || "()|*+%".contains(**c))
        {
            return Err(Error::invalid(format!("{c:?} cannot be used as a symbol")));
        }
        Ok(Alphabet { symbols })
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(text.chars())
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.symbols.len()).map(|i| i as Symbol)
    }

    pub fn char_of(&self, s: Symbol) -> char {
        self.symbols[s as usize]
    }

    pub fn index_of(&self, c: char) -> Result<Symbol> {
        self.symbols
            .binary_search(&c)
            .map(|i| i as Symbol)
            .map_err(|_| Error::UnknownSymbol(c))
    }

    pub fn word(&self, text: &str) -> Result<Word> {
        text.chars().map(|c| self.index_of(c)).collect()
    }

    pub fn render(&self, w: &[Symbol]) -> String {
        if w.is_empty() {
            return "%eps".to_string();
        }
        w.iter().map(|&s| self.char_of(s)).collect()
    }

    /// Bit mask with one bit per symbol of `w`.
    pub fn content(w: &[Symbol]) -> u32 {
        w.iter().fold(0, |m, &s| m | (1 << s))
    }

    pub fn full_mask(&self) -> u32 {
        (1u32 << self.len()) - 1
    }

    /// Renders a sub-alphabet given as a bit mask, e.g. `{a,c}`.
    pub fn render_mask(&self, mask: u32) -> String {
        let inner: Vec<String> = self
            .symbols()
            .filter(|s| mask & (1 << s) != 0)
            .map(|s| self.char_of(s).to_string())
            .collect();
        format!("{{{}}}", inner.join(","))
    }

    pub(crate) fn ensure_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.symbols {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Alphabet({self})")
    }
}

impl TryFrom<String> for Alphabet {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        Alphabet::parse(&s)
    }
}

impl From<Alphabet> for String {
    fn from(a: Alphabet) -> String {
        a.to_string()
    }
}

/// All words over `alphabet` of length at most `max_len`, shortest first.
pub fn words_up_to(alphabet: &Alphabet, max_len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * alphabet.len());
        for w in &layer {
            for s in alphabet.symbols() {
                let mut v = w.clone();
                v.push(s);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Whether `u` is a piece (scattered subword) of `v`.
pub fn is_piece(u: &[Symbol], v: &[Symbol]) -> bool {
    let mut it = v.iter();
    u.iter().all(|a| it.any(|b| b == a))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorted_and_indexed() {
        let a = Alphabet::parse("cab").unwrap();
        assert_eq!(a.to_string(), "abc");
        assert_eq!(a.index_of('c').unwrap(), 2);
        assert_eq!(a.word("ba").unwrap(), vec![1, 0]);
        assert!(matches!(a.index_of('z'), Err(Error::UnknownSymbol('z'))));
    }

    #[test]
    fn rejects_bad_alphabets() {
        assert!(Alphabet::parse("").is_err());
        assert!(Alphabet::parse("aa").is_err());
        assert!(Alphabet::parse("a|").is_err());
        assert!(Alphabet::parse("abcdefghijklmnopq").is_err());
    }

    #[test]
    fn pieces() {
        assert!(is_piece(&[0, 1], &[1, 0, 0, 1]));
        assert!(!is_piece(&[1, 0, 1], &[1, 0]));
        assert!(is_piece(&[], &[]));
    }

    #[test]
    fn enumeration_counts() {
        let a = Alphabet::parse("ab").unwrap();
        assert_eq!(words_up_to(&a, 3).len(), 1 + 2 + 4 + 8);
    }
}
