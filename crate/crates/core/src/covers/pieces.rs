//! The `~_k` partition as a deterministic automaton, and piecewise testable
//! covers built from it.

use std::collections::{HashMap, VecDeque};

use crate::algebra::Elem;
use crate::covers::{Cover, Piece};
use crate::error::{Error, Result};
use crate::lang::alphabet::{words_up_to, Alphabet, Symbol, Word};
use crate::lang::dfa::Dfa;
use crate::lang::nfa::Nfa;
use crate::rating::RatingMap;
use crate::saturation::{ClassId, ImprintSet};

/// Default cap on piece-automaton states.
pub const DEFAULT_MAX_PIECE_STATES: usize = 200_000;

type Bits = Vec<u64>;

/// States are the sets of pieces of length at most `k` of the words read so
/// far; two words reach the same state iff they are `~_k`-equivalent.
#[derive(Clone, Debug)]
pub struct PieceAutomaton {
    alphabet: Alphabet,
    k: usize,
    pieces: Vec<Word>,
    states: Vec<Bits>,
    delta: Vec<u32>,
}

impl PieceAutomaton {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn step(&self, q: usize, s: Symbol) -> usize {
        self.delta[q * self.alphabet.len() + s as usize] as usize
    }

    /// The state reached by `w`; the initial state is 0.
    pub fn state_of(&self, w: &[Symbol]) -> usize {
        w.iter().fold(0, |q, &s| self.step(q, s))
    }

    /// The pieces recorded by state `q`.
    pub fn pieces_of(&self, q: usize) -> Vec<&Word> {
        self.pieces
            .iter()
            .enumerate()
            .filter(|(i, _)| self.states[q][i / 64] >> (i % 64) & 1 == 1)
            .map(|(_, w)| w)
            .collect()
    }

    /// The automaton with accepting set `accepting`, as a complete DFA.
    pub fn dfa(&self, accepting: &[bool]) -> Dfa {
        let mut nfa = Nfa::new(self.alphabet.clone(), self.state_count());
        nfa.add_initial(0);
        assert_eq!(accepting.len(), self.state_count());
        for (q, &acc) in accepting.iter().enumerate() {
            if acc {
                nfa.add_final(q);
            }
            for s in self.alphabet.symbols() {
                nfa.add_transition(q, s, self.step(q, s));
            }
        }
        Dfa::from_nfa(&nfa, usize::MAX).expect("already deterministic")
    }

    /// The `~_k` class of state `q`.
    pub fn class_of(&self, q: usize) -> Nfa {
        let mut acc = vec![false; self.state_count()];
        acc[q] = true;
        self.dfa(&acc).minimize().to_nfa().trim()
    }

    /// `Σ_{w ↦ q} ρ(w)` for every state, as the least solution of the
    /// linear system of the automaton over `R`.
    pub fn class_images(&self, rho: &RatingMap) -> Vec<Elem> {
        let r = rho.semiring();
        let n = self.state_count();
        let mut val = vec![r.zero().clone(); n];
        val[0] = r.one().clone();
        let mut queue: VecDeque<usize> = VecDeque::from([0]);
        let mut queued = vec![false; n];
        queued[0] = true;
        while let Some(q) = queue.pop_front() {
            queued[q] = false;
            for s in self.alphabet.symbols() {
                let t = self.step(q, s);
                let add = r.mul(&val[q], rho.letter(s));
                let next = r.add(&val[t], &add);
                if next != val[t] {
                    val[t] = next;
                    if !queued[t] {
                        queued[t] = true;
                        queue.push_back(t);
                    }
                }
            }
        }
        val
    }

    /// Whether `lang` is a union of `~_k` classes: every class is either
    /// inside or outside it.
    pub fn is_union_of_classes(&self, lang: &Nfa, max_states: usize) -> Result<bool> {
        let d = lang.determinize(max_states)?.minimize();
        let mut verdict: Vec<Option<bool>> = vec![None; self.state_count()];
        let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
        let mut queue = VecDeque::from([(0usize, d.initial())]);
        seen.insert((0, d.initial()), ());
        while let Some((q, p)) = queue.pop_front() {
            let f = d.is_final(p);
            match verdict[q] {
                Some(v) if v != f => return Ok(false),
                _ => verdict[q] = Some(f),
            }
            for s in self.alphabet.symbols() {
                let key = (self.step(q, s), d.step(p, s));
                if seen.insert(key, ()).is_none() {
                    if seen.len() > max_states {
                        return Err(Error::cap("class check product states", max_states));
                    }
                    queue.push_back(key);
                }
            }
        }
        Ok(true)
    }
}

/// Builds the piece automaton for `k`.
pub fn pt_partition(k: usize, alphabet: &Alphabet, max_states: usize) -> Result<PieceAutomaton> {
    let pieces = words_up_to(alphabet, k);
    let index: HashMap<&Word, usize> = pieces.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let n = alphabet.len();
    let ext: Vec<Option<usize>> = pieces
        .iter()
        .flat_map(|u| {
            alphabet.symbols().map(|s| {
                (u.len() < k).then(|| {
                    let mut v = u.clone();
                    v.push(s);
                    index[&v]
                })
            })
        })
        .collect();
    let words = pieces.len().div_ceil(64);
    let mut init: Bits = vec![0; words];
    init[0] |= 1;
    let mut states = vec![init.clone()];
    let mut ids: HashMap<Bits, u32> = HashMap::from([(init, 0)]);
    let mut delta: Vec<u32> = Vec::new();
    let mut q = 0;
    while q < states.len() {
        for s in alphabet.symbols() {
            let mut next = states[q].clone();
            for (i, _) in pieces.iter().enumerate() {
                if states[q][i / 64] >> (i % 64) & 1 == 1 {
                    if let Some(j) = ext[i * n + s as usize] {
                        next[j / 64] |= 1 << (j % 64);
                    }
                }
            }
            let id = match ids.get(&next) {
                Some(&id) => id,
                None => {
                    if states.len() >= max_states {
                        return Err(Error::cap("piece automaton states", max_states));
                    }
                    let id = states.len() as u32;
                    ids.insert(next.clone(), id);
                    states.push(next);
                    id
                }
            };
            delta.push(id);
        }
        q += 1;
    }
    Ok(PieceAutomaton {
        alphabet: alphabet.clone(),
        k,
        pieces,
        states,
        delta,
    })
}

/// Default bound on `k` for iterative deepening.
pub fn default_max_k(alphabet: &Alphabet) -> usize {
    match alphabet.len() {
        0..=2 => 4,
        3 => 3,
        _ => 2,
    }
}

/// Groups the `~_k` classes by their image under `ρ`; one piece per group.
fn grouped_cover(pa: &PieceAutomaton, images: &[Elem], optimal: bool, note: &str) -> Cover {
    let mut groups: Vec<(Elem, Vec<bool>)> = Vec::new();
    for (q, x) in images.iter().enumerate() {
        let slot = match groups.iter().position(|(y, _)| y == x) {
            Some(i) => i,
            None => {
                groups.push((x.clone(), vec![false; pa.state_count()]));
                groups.len() - 1
            }
        };
        groups[slot].1[q] = true;
    }
    let pieces = groups.iter().map(|(_, acc)| Piece::from_dfa(&pa.dfa(acc))).collect();
    Cover {
        class: ClassId::Bsigma1,
        target: Nfa::universal(pa.alphabet()),
        k: Some(pa.k()),
        pieces,
        optimal,
        provenance: format!(
            "~{} classes ({} states) grouped by rating into {} pieces{note}",
            pa.k(),
            pa.state_count(),
            groups.len()
        ),
    }
}

/// Smallest `k ≤ max_k` whose `~_k` partition has imprint inside `goal`,
/// returned as a universal cover. When no such `k` exists below the cap, the
/// `max_k` partition is returned with `optimal = false`.
pub fn bsigma1_cover(
    rho: &RatingMap,
    goal: &ImprintSet,
    max_k: usize,
    max_states: usize,
) -> Result<Cover> {
    let a = rho.alphabet();
    let mut k = 0;
    loop {
        let pa = pt_partition(k, a, max_states)?;
        let images = pa.class_images(rho);
        if images.iter().all(|x| goal.contains(x)) {
            return Ok(grouped_cover(&pa, &images, true, ""));
        }
        if k >= max_k {
            return Ok(grouped_cover(
                &pa,
                &images,
                false,
                "; piece bound cap reached before the imprint matched",
            ));
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::alphabet::is_piece;
    use crate::lang::nfa::DEFAULT_MAX_STATES;
    use crate::rating::{rm_from_morphism, rm_from_multiset, Language};
    use crate::lang::{MonoidMorphism, Regex};
    use crate::saturation::saturate_universal;

    fn pieces_upto(w: &[Symbol], k: usize, a: &Alphabet) -> Vec<Word> {
        words_up_to(a, k).into_iter().filter(|u| is_piece(u, w)).collect()
    }

    #[test]
    fn k_zero_is_one_class() {
        let a = Alphabet::parse("ab").unwrap();
        let pa = pt_partition(0, &a, 100).unwrap();
        assert_eq!(pa.state_count(), 1);
        assert!(pa.class_of(0).equivalent(&Nfa::universal(&a), 100).unwrap());
    }

    #[test]
    fn k_one_classifies_by_alphabet() {
        let a = Alphabet::parse("ab").unwrap();
        let pa = pt_partition(1, &a, 100).unwrap();
        assert_eq!(pa.state_count(), 4);
        for u in words_up_to(&a, 4) {
            for v in words_up_to(&a, 4) {
                let same = Alphabet::content(&u) == Alphabet::content(&v);
                assert_eq!(pa.state_of(&u) == pa.state_of(&v), same);
            }
        }
    }

    #[test]
    fn states_are_piece_sets() {
        let a = Alphabet::parse("ab").unwrap();
        let pa = pt_partition(3, &a, 10_000).unwrap();
        let words = words_up_to(&a, 6);
        for u in &words {
            let mut got: Vec<Word> = pa.pieces_of(pa.state_of(u)).into_iter().cloned().collect();
            got.sort();
            let mut want = pieces_upto(u, 3, &a);
            want.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn classes_partition_the_words() {
        let a = Alphabet::parse("ab").unwrap();
        let pa = pt_partition(2, &a, 1000).unwrap();
        let classes: Vec<Nfa> = (0..pa.state_count()).map(|q| pa.class_of(q)).collect();
        let mut all = Nfa::empty(&a);
        for (i, c) in classes.iter().enumerate() {
            for d in &classes[i + 1..] {
                assert!(!c.meets(d).unwrap());
            }
            all = all.union(c).unwrap();
        }
        assert!(all.equivalent(&Nfa::universal(&a), DEFAULT_MAX_STATES).unwrap());
    }

    #[test]
    fn class_images_sum_words() {
        let a = Alphabet::parse("ab").unwrap();
        let langs = vec![Language::Nfa(Regex::parse("(ab)+", &a).unwrap().to_nfa(&a))];
        let ext = rm_from_multiset(&langs).unwrap();
        let pa = pt_partition(2, &a, 1000).unwrap();
        let images = pa.class_images(&ext.tau);
        for (q, img) in images.iter().enumerate() {
            assert_eq!(*img, ext.tau.eval(&pa.class_of(q)).unwrap());
        }
    }

    #[test]
    fn unions_of_classes() {
        let a = Alphabet::parse("ab").unwrap();
        let pa = pt_partition(2, &a, 1000).unwrap();
        let yes = Regex::parse("(a|b)*a(a|b)*b(a|b)*", &a).unwrap().to_nfa(&a);
        let no = Regex::parse("(aa)*", &a).unwrap().to_nfa(&a);
        assert!(pa.is_union_of_classes(&yes, 1000).unwrap());
        assert!(!pa.is_union_of_classes(&no, 1000).unwrap());
    }

    #[test]
    fn unary_trivial_morphism_converges_immediately() {
        let a = Alphabet::parse("a").unwrap();
        let ext = rm_from_morphism(&MonoidMorphism::trivial(&a), &[true]).unwrap();
        let (goal, _) = saturate_universal(&ext.tau, ClassId::Bsigma1, 10_000).unwrap();
        let c = bsigma1_cover(&ext.tau, &goal, 4, 10_000).unwrap();
        assert!(c.optimal);
        assert!(c.k.unwrap() <= 1);
        assert_eq!(c.imprint(&ext.tau).unwrap(), goal);
    }
}
