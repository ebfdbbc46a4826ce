use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lang::alphabet::{Alphabet, Symbol};
use crate::lang::nfa::{Nfa, DEFAULT_MAX_STATES};

/// Default cap on the size of computed transition monoids.
pub const DEFAULT_MAX_MONOID: usize = 4096;

/// A morphism `α: A* → M` into a finite monoid given by its multiplication
/// table and the images of the letters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidMorphism {
    alphabet: Alphabet,
    size: usize,
    identity: u32,
    mul: Vec<u32>,
    letter_image: Vec<u32>,
}

impl MonoidMorphism {
    /// Builds a morphism from an explicit table; `mul[x][y]` is `x·y`.
    pub fn from_table(
        alphabet: Alphabet,
        identity: usize,
        mul: Vec<Vec<usize>>,
        letter_image: Vec<usize>,
    ) -> Result<Self> {
        let size = mul.len();
        if size == 0 || identity >= size {
            return Err(Error::invalid("monoid needs an identity element"));
        }
        if mul.iter().any(|row| row.len() != size || row.iter().any(|&z| z >= size)) {
            return Err(Error::invalid("monoid table must be square with entries in range"));
        }
        if letter_image.len() != alphabet.len() || letter_image.iter().any(|&z| z >= size) {
            return Err(Error::invalid("one letter image per symbol is required"));
        }
        Ok(MonoidMorphism {
            alphabet,
            size,
            identity: identity as u32,
            mul: mul.into_iter().flatten().map(|z| z as u32).collect(),
            letter_image: letter_image.into_iter().map(|z| z as u32).collect(),
        })
    }

    /// The morphism onto the trivial monoid.
    pub fn trivial(alphabet: &Alphabet) -> Self {
        MonoidMorphism {
            alphabet: alphabet.clone(),
            size: 1,
            identity: 0,
            mul: vec![0],
            letter_image: vec![0; alphabet.len()],
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity as usize
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.size + y] as usize
    }

    pub fn letter_image(&self, s: Symbol) -> usize {
        self.letter_image[s as usize] as usize
    }

    pub fn image(&self, w: &[Symbol]) -> usize {
        w.iter()
            .fold(self.identity(), |m, &s| self.mul(m, self.letter_image(s)))
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    /// `x^ω`, the idempotent power of `x`.
    pub fn idempotent_power(&self, x: usize) -> usize {
        let mut p = x;
        loop {
            if self.is_idempotent(p) {
                return p;
            }
            p = self.mul(p, x);
        }
    }

    /// Elements reachable as images of words; all of them when `α` is onto.
    pub fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.size];
        seen[self.identity()] = true;
        let mut stack = vec![self.identity()];
        while let Some(m) = stack.pop() {
            for s in self.alphabet.symbols() {
                let n = self.mul(m, self.letter_image(s));
                if !seen[n] {
                    seen[n] = true;
                    stack.push(n);
                }
            }
        }
        seen
    }

    /// Some shortest word with image `m`, if any.
    pub fn witness(&self, m: usize) -> Option<Vec<Symbol>> {
        let mut parent: Vec<Option<(usize, Symbol)>> = vec![None; self.size];
        let mut seen = vec![false; self.size];
        seen[self.identity()] = true;
        let mut queue = std::collections::VecDeque::from([self.identity()]);
        while let Some(x) = queue.pop_front() {
            if x == m {
                let mut w = Vec::new();
                let mut cur = x;
                while let Some((prev, s)) = parent[cur] {
                    w.push(s);
                    cur = prev;
                }
                w.reverse();
                return Some(w);
            }
            for s in self.alphabet.symbols() {
                let y = self.mul(x, self.letter_image(s));
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, s));
                    queue.push_back(y);
                }
            }
        }
        None
    }

    /// Automaton for `α⁻¹(F)`, reading on the right Cayley graph.
    pub fn preimage_nfa(&self, accepting: &[bool]) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.clone(), self.size);
        nfa.add_initial(self.identity());
        assert_eq!(accepting.len(), self.size);
        for (m, &acc) in accepting.iter().enumerate() {
            if acc {
                nfa.add_final(m);
            }
            for s in self.alphabet.symbols() {
                nfa.add_transition(m, s, self.mul(m, self.letter_image(s)));
            }
        }
        nfa.trim()
    }

    /// Checks associativity and the identity laws exhaustively. Each failing
    /// law yields one entry with a count and a first witness.
    pub fn validate(&self) -> Vec<String> {
        let n = self.size;
        let mut out = Vec::new();
        let mut assoc_fail = 0usize;
        let mut first = None;
        for x in 0..n {
            for y in 0..n {
                let xy = self.mul(x, y);
                for z in 0..n {
                    if self.mul(xy, z) != self.mul(x, self.mul(y, z)) {
                        assoc_fail += 1;
                        first.get_or_insert((x, y, z));
                    }
                }
            }
        }
        if let Some((x, y, z)) = first {
            out.push(format!(
                "associativity fails on {assoc_fail} triple(s), first ({x},{y},{z})"
            ));
        }
        let e = self.identity();
        let bad: Vec<usize> = (0..n)
            .filter(|&x| self.mul(e, x) != x || self.mul(x, e) != x)
            .collect();
        if let Some(x) = bad.first() {
            out.push(format!(
                "identity law fails on {} element(s), first {x}",
                bad.len()
            ));
        }
        out
    }
}

/// A morphism together with an accepting set: `L = α⁻¹(F)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recognizer {
    pub morphism: MonoidMorphism,
    pub accepting: Vec<bool>,
}

impl Recognizer {
    pub fn accepts(&self, w: &[Symbol]) -> bool {
        self.accepting[self.morphism.image(w)]
    }

    pub fn accepting_elements(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.accepting.len()).filter(|&m| self.accepting[m])
    }
}

/// Transition monoid of the minimal complete automaton of `nfa`.
pub fn transition_monoid(nfa: &Nfa) -> Result<Recognizer> {
    transition_monoid_capped(nfa, DEFAULT_MAX_STATES, DEFAULT_MAX_MONOID)
}

pub fn transition_monoid_capped(
    nfa: &Nfa,
    max_states: usize,
    max_monoid: usize,
) -> Result<Recognizer> {
    let dfa = nfa.determinize(max_states)?.minimize();
    let n = dfa.state_count();
    let alphabet = dfa.alphabet().clone();
    let identity: Vec<u32> = (0..n as u32).collect();
    let letters: Vec<Vec<u32>> = alphabet
        .symbols()
        .map(|s| (0..n).map(|q| dfa.step(q, s) as u32).collect())
        .collect();
    let mut elems = vec![identity.clone()];
    let mut index: HashMap<Vec<u32>, u32> = HashMap::from([(identity, 0)]);
    let mut i = 0;
    while i < elems.len() {
        for t in &letters {
            let next: Vec<u32> = elems[i].iter().map(|&q| t[q as usize]).collect();
            if !index.contains_key(&next) {
                if elems.len() >= max_monoid {
                    return Err(Error::cap("transition monoid size", max_monoid));
                }
                index.insert(next.clone(), elems.len() as u32);
                elems.push(next);
            }
        }
        i += 1;
    }
    let size = elems.len();
    let mut mul = vec![0u32; size * size];
    for (x, fx) in elems.iter().enumerate() {
        for (y, fy) in elems.iter().enumerate() {
            let xy: Vec<u32> = fx.iter().map(|&q| fy[q as usize]).collect();
            mul[x * size + y] = index[&xy];
        }
    }
    let letter_image = letters.iter().map(|t| index[t]).collect();
    let accepting = elems
        .iter()
        .map(|f| dfa.is_final(f[dfa.initial()] as usize))
        .collect();
    Ok(Recognizer {
        morphism: MonoidMorphism {
            alphabet,
            size,
            identity: 0,
            mul,
            letter_image,
        },
        accepting,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::alphabet::words_up_to;
    use crate::lang::regex::Regex;

    fn rec(text: &str, alphabet: &str) -> (Alphabet, Nfa, Recognizer) {
        let a = Alphabet::parse(alphabet).unwrap();
        let nfa = Regex::parse(text, &a).unwrap().to_nfa(&a);
        let r = transition_monoid(&nfa).unwrap();
        (a, nfa, r)
    }

    #[test]
    fn universal_language_gives_trivial_monoid() {
        let (_, _, r) = rec("(a|b)*", "ab");
        assert_eq!(r.morphism.size(), 1);
        assert_eq!(r.accepting, vec![true]);
    }

    #[test]
    fn even_as_is_cyclic_of_order_two() {
        let (a, _, r) = rec("(aa)*", "a");
        assert_eq!(r.morphism.size(), 2);
        let g = r.morphism.letter_image(0);
        assert_eq!(r.morphism.mul(g, g), r.morphism.identity());
        assert!(r.accepts(&a.word("aaaa").unwrap()));
        assert!(!r.accepts(&a.word("aaa").unwrap()));
        assert!(r.morphism.validate().is_empty());
    }

    #[test]
    fn recognition_is_exact() {
        for text in ["a+", "(ab)+|b(ab)+", "a(a|b)*b"] {
            let (a, nfa, r) = rec(text, "ab");
            for w in words_up_to(&a, 6) {
                assert_eq!(r.accepts(&w), nfa.accepts(&w), "{text}");
            }
            assert!(r.morphism.validate().is_empty());
            let back = r.morphism.preimage_nfa(&r.accepting);
            assert!(back.equivalent(&nfa, 1000).unwrap());
        }
    }

    #[test]
    fn broken_table_reports_associativity() {
        let a = Alphabet::parse("a").unwrap();
        let good = MonoidMorphism::from_table(a.clone(), 0, vec![vec![0, 1], vec![1, 1]], vec![1]).unwrap();
        assert!(good.validate().is_empty());
        let bad = MonoidMorphism::from_table(
            a,
            0,
            vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 2, 0]],
            vec![1],
        )
        .unwrap();
        let v = bad.validate();
        assert_eq!(v.len(), 1, "{v:?}");
        assert!(v[0].starts_with("associativity"));
    }

    #[test]
    fn cap_is_reported() {
        let a = Alphabet::parse("ab").unwrap();
        let nfa = Regex::parse("(a|b)*a(a|b)(a|b)", &a).unwrap().to_nfa(&a);
        assert!(transition_monoid_capped(&nfa, 1000, 4).unwrap_err().is_resource());
    }

    #[test]
    fn witnesses_and_powers() {
        let (_, _, r) = rec("(aa)*", "a");
        let m = &r.morphism;
        let g = m.letter_image(0);
        assert_eq!(m.witness(g), Some(vec![0]));
        assert_eq!(m.idempotent_power(g), m.identity());
    }
}
