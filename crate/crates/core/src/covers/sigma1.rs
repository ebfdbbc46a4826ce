//! Upward-closed covers from minimal words.

use std::collections::{HashMap, VecDeque};

use crate::covers::{Cover, Piece};
use crate::error::{Error, Result};
use crate::lang::alphabet::Word;
use crate::lang::monoid::MonoidMorphism;
use crate::lang::regex::Regex;
use crate::saturation::ClassId;

/// The minimal words of `α⁻¹(s)` for the scattered subword order, shortest
/// first.
///
/// Each round looks for a shortest word of `α⁻¹(s)` outside the upward
/// closure of the words found so far; such a word is always minimal. The
/// search runs over pairs (monoid element, greedy embedding progress into
/// each found word).
pub fn minimal_words(alpha: &MonoidMorphism, s: usize, max_states: usize) -> Result<Vec<Word>> {
    let mut found: Vec<Word> = Vec::new();
    loop {
        match shortest_outside(alpha, s, &found, max_states)? {
            Some(w) => found.push(w),
            None => return Ok(found),
        }
    }
}

fn shortest_outside(
    alpha: &MonoidMorphism,
    s: usize,
    found: &[Word],
    max_states: usize,
) -> Result<Option<Word>> {
    if found.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    type State = (usize, Vec<u16>);
    let start: State = (alpha.identity(), vec![0; found.len()]);
    let mut parent: HashMap<State, Option<(State, u8)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        if state.0 == s {
            let mut w = Vec::new();
            let mut cur = state;
            while let Some(Some((prev, a))) = parent.get(&cur) {
                w.push(*a);
                cur = prev.clone();
            }
            w.reverse();
            return Ok(Some(w));
        }
        for a in alpha.alphabet().symbols() {
            let mut progress = state.1.clone();
            let mut blocked = false;
            for (p, u) in progress.iter_mut().zip(found) {
                if u.get(*p as usize) == Some(&a) {
                    *p += 1;
                    blocked |= *p as usize == u.len();
                }
            }
            if blocked {
                continue;
            }
            let next = (alpha.mul(state.0, alpha.letter_image(a)), progress);
            if !parent.contains_key(&next) {
                if parent.len() >= max_states {
                    return Err(Error::cap("minimal word search states", max_states));
                }
                parent.insert(next.clone(), Some((state.clone(), a)));
                queue.push_back(next);
            }
        }
    }
    Ok(None)
}

/// `{A*a₁A*⋯aₙA* : a₁⋯aₙ minimal in α⁻¹(s), s ∈ targets}`, a cover of
/// `α⁻¹(targets)` by upward-closed languages.
pub fn sigma1_cover(alpha: &MonoidMorphism, targets: &[usize], max_states: usize) -> Result<Cover> {
    let a = alpha.alphabet();
    let mut accepting = vec![false; alpha.size()];
    let mut pieces = Vec::new();
    let mut counts = Vec::new();
    for &s in targets {
        accepting[s] = true;
        let words = minimal_words(alpha, s, max_states)?;
        counts.push(format!("{s}:{}", words.len()));
        for w in words {
            pieces.push(Piece::from_regex(Regex::upward_word(&w, a), a));
        }
    }
    Ok(Cover {
        class: ClassId::Sigma1,
        target: alpha.preimage_nfa(&accepting),
        k: None,
        pieces,
        optimal: true,
        provenance: format!(
            "upward closures of the minimal words of each monoid element ({})",
            counts.join(", ")
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::alphabet::{is_piece, words_up_to, Alphabet};
    use crate::lang::nfa::{Nfa, DEFAULT_MAX_STATES};
    use crate::lang::transition_monoid;

    #[test]
    fn trivial_monoid_gives_universal_piece() {
        let a = Alphabet::parse("ab").unwrap();
        let alpha = MonoidMorphism::trivial(&a);
        let c = sigma1_cover(&alpha, &[0], 1000).unwrap();
        assert_eq!(c.pieces.len(), 1);
        assert!(c.pieces[0].nfa.equivalent(&Nfa::universal(&a), 100).unwrap());
    }

    #[test]
    fn minimal_words_match_brute_force() {
        let a = Alphabet::parse("ab").unwrap();
        let rec = transition_monoid(&Regex::parse("(ab)*a|b*", &a).unwrap().to_nfa(&a)).unwrap();
        let alpha = &rec.morphism;
        let words = words_up_to(&a, 7);
        for s in 0..alpha.size() {
            let got = minimal_words(alpha, s, 100_000).unwrap();
            let members: Vec<&Word> = words.iter().filter(|w| alpha.image(w) == s).collect();
            let brute: Vec<&Word> = members
                .iter()
                .copied()
                .filter(|w| !members.iter().any(|u| u.len() < w.len() && is_piece(u, w)))
                .collect();
            let short: Vec<&Word> = got.iter().filter(|w| w.len() <= 5).collect();
            let brute_short: Vec<&Word> = brute.into_iter().filter(|w| w.len() <= 5).collect();
            assert_eq!(short.len(), brute_short.len(), "element {s}");
            for w in brute_short {
                assert!(got.contains(w));
            }
        }
    }

    #[test]
    fn cover_of_a_plus() {
        let a = Alphabet::parse("ab").unwrap();
        let rec = transition_monoid(&Regex::parse("a+", &a).unwrap().to_nfa(&a)).unwrap();
        let f: Vec<usize> = rec.accepting_elements().collect();
        let c = sigma1_cover(&rec.morphism, &f, 10_000).unwrap();
        let l = Regex::parse("a+", &a).unwrap().to_nfa(&a);
        assert!(l.is_subset_of(&c.union_nfa().unwrap(), DEFAULT_MAX_STATES).unwrap());
        let aa = Regex::parse("(a|b)*a(a|b)*", &a).unwrap().to_nfa(&a);
        assert!(c.pieces.iter().any(|p| p.nfa.equivalent(&aa, 100).unwrap()));
    }
}
