use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lang::alphabet::{Alphabet, Symbol};
use crate::lang::nfa::Nfa;

/// A complete deterministic automaton. State 0 is not special; `initial`
/// names the start state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<u32>,
    initial: u32,
    accepting: Vec<bool>,
}

impl Dfa {
    /// Subset construction restricted to reachable subsets. The empty subset
    /// becomes the sink.
    pub fn from_nfa(nfa: &Nfa, max_states: usize) -> Result<Dfa> {
        let k = nfa.alphabet().len();
        let mut start: Vec<u32> = nfa.initials().map(|q| q as u32).collect();
        start.sort_unstable();
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        let mut subsets = vec![start.clone()];
        index.insert(start, 0);
        let mut delta = Vec::new();
        let mut i = 0;
        while i < subsets.len() {
            for s in 0..k {
                let mut next: Vec<u32> = subsets[i]
                    .iter()
                    .flat_map(|&q| nfa.successors(q as usize, s as Symbol).iter().copied())
                    .collect();
                next.sort_unstable();
                next.dedup();
                let id = match index.get(&next) {
                    Some(&id) => id,
                    None => {
                        if subsets.len() >= max_states {
                            return Err(Error::cap("determinized states", max_states));
                        }
                        let id = subsets.len() as u32;
                        index.insert(next.clone(), id);
                        subsets.push(next);
                        id
                    }
                };
                delta.push(id);
            }
            i += 1;
        }
        let accepting = subsets
            .iter()
            .map(|set| set.iter().any(|&q| nfa.is_final(q as usize)))
            .collect();
        Ok(Dfa {
            alphabet: nfa.alphabet().clone(),
            delta,
            initial: 0,
            accepting,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn initial(&self) -> usize {
        self.initial as usize
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn step(&self, q: usize, s: Symbol) -> usize {
        self.delta[q * self.alphabet.len() + s as usize] as usize
    }

    pub fn run_from(&self, q: usize, w: &[Symbol]) -> usize {
        w.iter().fold(q, |q, &s| self.step(q, s))
    }

    pub fn accepts(&self, w: &[Symbol]) -> bool {
        self.accepting[self.run_from(self.initial(), w)]
    }

    pub fn complement(&self) -> Dfa {
        let mut out = self.clone();
        for f in &mut out.accepting {
            *f = !*f;
        }
        out
    }

    /// Moore partition refinement. Assumes every state is reachable, which
    /// holds for automata built by [`Dfa::from_nfa`].
    pub fn minimize(&self) -> Dfa {
        let n = self.state_count();
        let k = self.alphabet.len();
        let mut class: Vec<u32> = self.accepting.iter().map(|&f| f as u32).collect();
        let mut count = renumber(&mut class);
        loop {
            let mut sig_index: HashMap<Vec<u32>, u32> = HashMap::new();
            let mut next = vec![0u32; n];
            for q in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[q]);
                sig.extend((0..k).map(|s| class[self.step(q, s as Symbol)]));
                let fresh = sig_index.len() as u32;
                next[q] = *sig_index.entry(sig).or_insert(fresh);
            }
            let new_count = sig_index.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        let mut delta = vec![0u32; count * k];
        let mut accepting = vec![false; count];
        for q in 0..n {
            let c = class[q] as usize;
            accepting[c] = self.accepting[q];
            for s in 0..k {
                delta[c * k + s] = class[self.step(q, s as Symbol)];
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: class[self.initial()],
            accepting,
        }
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut nfa = Nfa::new(self.alphabet.clone(), self.state_count());
        nfa.add_initial(self.initial());
        for q in 0..self.state_count() {
            if self.accepting[q] {
                nfa.add_final(q);
            }
            for s in self.alphabet.symbols() {
                nfa.add_transition(q, s, self.step(q, s));
            }
        }
        nfa
    }
}

/// Renumbers class ids densely in order of first appearance.
fn renumber(class: &mut [u32]) -> usize {
    let mut map: HashMap<u32, u32> = HashMap::new();
    for c in class.iter_mut() {
        let fresh = map.len() as u32;
        *c = *map.entry(*c).or_insert(fresh);
    }
    map.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::alphabet::words_up_to;
    use crate::lang::regex::Regex;

    #[test]
    fn minimal_sizes() {
        let a = Alphabet::parse("ab").unwrap();
        for (text, size) in [("(a|b)*", 1), ("%empty", 1), ("(a|b)*a", 2), ("a(a|b)*", 3), ("(aa)*", 3)] {
            let nfa = Regex::parse(text, &a).unwrap().to_nfa(&a);
            let d = nfa.determinize(1000).unwrap();
            let m = d.minimize();
            assert_eq!(m.state_count(), size, "{text}");
            for w in words_up_to(&a, 6) {
                assert_eq!(m.accepts(&w), nfa.accepts(&w), "{text}");
            }
        }
    }

    #[test]
    fn cap_is_reported() {
        let a = Alphabet::parse("ab").unwrap();
        // the fifth letter from the end is an a: 32 subset states
        let nfa = Regex::parse("(a|b)*a(a|b)(a|b)(a|b)(a|b)", &a).unwrap().to_nfa(&a);
        let err = nfa.determinize(10).unwrap_err();
        assert!(err.is_resource());
        assert_eq!(nfa.determinize(100).unwrap().minimize().state_count(), 32);
    }
}
