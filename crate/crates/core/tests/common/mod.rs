//! Seeded generators shared by the integration suites.
#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use regcover::lang::{Alphabet, Nfa, Regex, Symbol};

/// Random regex of depth at most `depth`.
pub fn random_regex(rng: &mut ChaCha8Rng, alphabet: &Alphabet, depth: usize) -> Regex {
    let letter = |rng: &mut ChaCha8Rng| Regex::Letter(rng.gen_range(0..alphabet.len()) as Symbol);
    if depth == 0 {
        return if rng.gen_bool(0.15) { Regex::Epsilon } else { letter(rng) };
    }
    match rng.gen_range(0..6) {
        0 => letter(rng),
        1 | 2 => Regex::union(
            random_regex(rng, alphabet, depth - 1),
            random_regex(rng, alphabet, depth - 1),
        ),
        3 => Regex::concat(
            random_regex(rng, alphabet, depth - 1),
            random_regex(rng, alphabet, depth - 1),
        ),
        4 => Regex::star(random_regex(rng, alphabet, depth - 1)),
        _ => Regex::plus(random_regex(rng, alphabet, depth - 1)),
    }
}

/// Random automaton with `1..=max_states` states and initial state 0.
pub fn random_nfa(rng: &mut ChaCha8Rng, alphabet: &Alphabet, max_states: usize) -> Nfa {
    let n = rng.gen_range(1..=max_states);
    let mut nfa = Nfa::new(alphabet.clone(), n);
    nfa.add_initial(0);
    for p in 0..n {
        if rng.gen_bool(0.5) {
            nfa.add_final(p);
        }
        for s in alphabet.symbols() {
            for q in 0..n {
                if rng.gen_bool(0.4) {
                    nfa.add_transition(p, s, q);
                }
            }
        }
    }
    nfa
}

/// Random word of length at most `max_len`.
pub fn random_word(rng: &mut ChaCha8Rng, alphabet: &Alphabet, max_len: usize) -> Vec<Symbol> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..alphabet.len()) as Symbol).collect()
}

/// Membership oracle by derivatives, independent of the automaton code.
pub fn regex_matches(r: &Regex, w: &[Symbol]) -> bool {
    fn nullable(r: &Regex) -> bool {
        match r {
            Regex::Empty | Regex::Letter(_) => false,
            Regex::Epsilon | Regex::Star(_) => true,
            Regex::Union(x, y) => nullable(x) || nullable(y),
            Regex::Concat(x, y) => nullable(x) && nullable(y),
            Regex::Plus(x) => nullable(x),
        }
    }
    fn deriv(r: &Regex, a: Symbol) -> Regex {
        match r {
            Regex::Empty | Regex::Epsilon => Regex::Empty,
            Regex::Letter(b) => {
                if *b == a {
                    Regex::Epsilon
                } else {
                    Regex::Empty
                }
            }
            Regex::Union(x, y) => Regex::union(deriv(x, a), deriv(y, a)),
            Regex::Concat(x, y) => {
                let left = Regex::concat(deriv(x, a), (**y).clone());
                if nullable(x) {
                    Regex::union(left, deriv(y, a))
                } else {
                    left
                }
            }
            Regex::Star(x) => Regex::concat(deriv(x, a), Regex::star((**x).clone())),
            Regex::Plus(x) => Regex::concat(deriv(x, a), Regex::star((**x).clone())),
        }
    }
    let mut cur = r.clone();
    for &a in w {
        cur = deriv(&cur, a);
    }
    nullable(&cur)
}
