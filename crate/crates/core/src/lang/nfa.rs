use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lang::alphabet::{Alphabet, Symbol};
use crate::lang::dfa::Dfa;
use crate::lang::regex::Regex;

/// Default cap on the number of subset states built during determinization.
pub const DEFAULT_MAX_STATES: usize = 1 << 20;

/// An epsilon-free nondeterministic automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nfa {
    alphabet: Alphabet,
    delta: Vec<Vec<Vec<u32>>>,
    initial: Vec<bool>,
    accepting: Vec<bool>,
}

/// Binary set operations supported by [`Nfa::combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Combine {
    Union,
    Intersection,
    Concatenation,
}

/// Decision queries answered by [`Nfa::decide`].
#[derive(Clone, Debug)]
pub enum Query<'a> {
    Emptiness,
    Membership(&'a [Symbol]),
    Inclusion(&'a Nfa),
    Equivalence(&'a Nfa),
}

impl Nfa {
    pub fn new(alphabet: Alphabet, states: usize) -> Self {
        let k = alphabet.len();
        Nfa {
            alphabet,
            delta: vec![vec![Vec::new(); k]; states],
            initial: vec![false; states],
            accepting: vec![false; states],
        }
    }

    pub fn empty(alphabet: &Alphabet) -> Self {
        Nfa::new(alphabet.clone(), 0)
    }

    pub fn epsilon(alphabet: &Alphabet) -> Self {
        let mut n = Nfa::new(alphabet.clone(), 1);
        n.add_initial(0);
        n.add_final(0);
        n
    }

    pub fn universal(alphabet: &Alphabet) -> Self {
        Nfa::alphabet_star(alphabet, alphabet.full_mask())
    }

    pub fn from_word(alphabet: &Alphabet, w: &[Symbol]) -> Self {
        let mut n = Nfa::new(alphabet.clone(), w.len() + 1);
        n.add_initial(0);
        n.add_final(w.len());
        for (i, &s) in w.iter().enumerate() {
            n.add_transition(i, s, i + 1);
        }
        n
    }

    /// `B*` for the sub-alphabet `mask`.
    pub fn alphabet_star(alphabet: &Alphabet, mask: u32) -> Self {
        let mut n = Nfa::epsilon(alphabet);
        for s in alphabet.symbols().filter(|s| mask & (1 << s) != 0) {
            n.add_transition(0, s, 0);
        }
        n
    }

    /// `B^⊛`: words whose set of letters is exactly `mask`. States track the
    /// letters seen so far.
    pub fn alphabet_exact(alphabet: &Alphabet, mask: u32) -> Self {
        let subs: Vec<u32> = (0..=mask).filter(|c| c & !mask == 0).collect();
        let index: HashMap<u32, usize> = subs.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut n = Nfa::new(alphabet.clone(), subs.len());
        n.add_initial(index[&0]);
        n.add_final(index[&mask]);
        for &c in &subs {
            for s in alphabet.symbols().filter(|s| mask & (1 << s) != 0) {
                n.add_transition(index[&c], s, index[&(c | (1 << s))]);
            }
        }
        n
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn add_state(&mut self) -> usize {
        self.delta.push(vec![Vec::new(); self.alphabet.len()]);
        self.initial.push(false);
        self.accepting.push(false);
        self.delta.len() - 1
    }

    pub fn add_initial(&mut self, q: usize) {
        self.initial[q] = true;
    }

    pub fn add_final(&mut self, q: usize) {
        self.accepting[q] = true;
    }

    pub fn add_transition(&mut self, from: usize, s: Symbol, to: usize) {
        let row = &mut self.delta[from][s as usize];
        if let Err(pos) = row.binary_search(&(to as u32)) {
            row.insert(pos, to as u32);
        }
    }

    pub fn is_initial(&self, q: usize) -> bool {
        self.initial[q]
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.accepting[q]
    }

    pub fn initials(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.state_count()).filter(|&q| self.initial[q])
    }

    pub fn finals(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.state_count()).filter(|&q| self.accepting[q])
    }

    pub fn successors(&self, q: usize, s: Symbol) -> &[u32] {
        &self.delta[q][s as usize]
    }

    pub fn transitions(&self) -> impl Iterator<Item = (usize, Symbol, usize)> + '_ {
        self.delta.iter().enumerate().flat_map(|(p, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(s, ts)| ts.iter().map(move |&q| (p, s as Symbol, q as usize)))
        })
    }

    pub fn accepts_empty_word(&self) -> bool {
        self.initials().any(|q| self.accepting[q])
    }

    pub fn accepts(&self, w: &[Symbol]) -> bool {
        let mut cur: BTreeSet<u32> = self.initials().map(|q| q as u32).collect();
        for &s in w {
            let mut next = BTreeSet::new();
            for &q in &cur {
                next.extend(self.successors(q as usize, s).iter().copied());
            }
            if next.is_empty() {
                return false;
            }
            cur = next;
        }
        cur.iter().any(|&q| self.accepting[q as usize])
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.state_count()];
        let mut queue: VecDeque<usize> = self.initials().collect();
        for &q in &queue {
            seen[q] = true;
        }
        while let Some(p) = queue.pop_front() {
            for ts in &self.delta[p] {
                for &q in ts {
                    if !seen[q as usize] {
                        seen[q as usize] = true;
                        queue.push_back(q as usize);
                    }
                }
            }
        }
        seen
    }

    pub fn is_empty(&self) -> bool {
        let seen = self.reachable();
        !(0..self.state_count()).any(|q| seen[q] && self.accepting[q])
    }

    /// Removes states that are not both reachable and co-reachable.
    pub fn trim(&self) -> Nfa {
        let fwd = self.reachable();
        let n = self.state_count();
        let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (p, _, q) in self.transitions() {
            preds[q].push(p);
        }
        let mut bwd = vec![false; n];
        let mut queue: VecDeque<usize> = self.finals().collect();
        for &q in &queue {
            bwd[q] = true;
        }
        while let Some(q) = queue.pop_front() {
            for &p in &preds[q] {
                if !bwd[p] {
                    bwd[p] = true;
                    queue.push_back(p);
                }
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&q| fwd[q] && bwd[q]).collect();
        let mut index = vec![usize::MAX; n];
        for (i, &q) in keep.iter().enumerate() {
            index[q] = i;
        }
        let mut out = Nfa::new(self.alphabet.clone(), keep.len());
        for (i, &q) in keep.iter().enumerate() {
            if self.initial[q] {
                out.add_initial(i);
            }
            if self.accepting[q] {
                out.add_final(i);
            }
        }
        for (p, s, q) in self.transitions() {
            if index[p] != usize::MAX && index[q] != usize::MAX {
                out.add_transition(index[p], s, index[q]);
            }
        }
        out
    }

    /// Disjoint copy of `other` appended to `self`; returns the offset.
    fn append(&mut self, other: &Nfa) -> usize {
        let off = self.state_count();
        for _ in 0..other.state_count() {
            self.add_state();
        }
        for (p, s, q) in other.transitions() {
            self.add_transition(p + off, s, q + off);
        }
        off
    }

    pub fn combine(&self, op: Combine, other: &Nfa) -> Result<Nfa> {
        self.alphabet.ensure_same(&other.alphabet)?;
        Ok(match op {
            Combine::Union => self.union_unchecked(other),
            Combine::Intersection => self.intersection_unchecked(other),
            Combine::Concatenation => self.concat_unchecked(other),
        })
    }

    pub fn union(&self, other: &Nfa) -> Result<Nfa> {
        self.combine(Combine::Union, other)
    }

    pub fn intersection(&self, other: &Nfa) -> Result<Nfa> {
        self.combine(Combine::Intersection, other)
    }

    pub fn concat(&self, other: &Nfa) -> Result<Nfa> {
        self.combine(Combine::Concatenation, other)
    }

    fn union_unchecked(&self, other: &Nfa) -> Nfa {
        let mut out = self.clone();
        let off = out.append(other);
        for q in other.initials() {
            out.add_initial(q + off);
        }
        for q in other.finals() {
            out.add_final(q + off);
        }
        out
    }

    fn intersection_unchecked(&self, other: &Nfa) -> Nfa {
        let mut index: HashMap<(u32, u32), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut out = Nfa::new(self.alphabet.clone(), 0);
        for p in self.initials() {
            for q in other.initials() {
                let id = out.add_state();
                out.add_initial(id);
                index.insert((p as u32, q as u32), id);
                queue.push_back((p as u32, q as u32));
            }
        }
        while let Some((p, q)) = queue.pop_front() {
            let id = index[&(p, q)];
            if self.accepting[p as usize] && other.accepting[q as usize] {
                out.add_final(id);
            }
            for s in self.alphabet.symbols() {
                for &p2 in self.successors(p as usize, s) {
                    for &q2 in other.successors(q as usize, s) {
                        let next = *index.entry((p2, q2)).or_insert_with(|| {
                            queue.push_back((p2, q2));
                            out.add_state()
                        });
                        out.add_transition(id, s, next);
                    }
                }
            }
        }
        out
    }

    fn concat_unchecked(&self, other: &Nfa) -> Nfa {
        let mut out = self.clone();
        let off = out.append(other);
        let right_nullable = other.accepts_empty_word();
        for q in 0..self.state_count() {
            out.accepting[q] = self.accepting[q] && right_nullable;
        }
        for q in other.finals() {
            out.add_final(q + off);
        }
        if self.accepts_empty_word() {
            for q in other.initials() {
                out.add_initial(q + off);
            }
        }
        let bridges: Vec<(usize, Symbol)> = self
            .transitions()
            .filter(|&(_, _, q)| self.accepting[q])
            .map(|(p, s, _)| (p, s))
            .collect();
        for (p, s) in bridges {
            for r in other.initials() {
                out.add_transition(p, s, r + off);
            }
        }
        out
    }

    /// Kleene star, epsilon-free.
    pub fn star(&self) -> Nfa {
        let mut out = self.clone();
        let inits: Vec<usize> = self.initials().collect();
        for (p, s, q) in self.transitions() {
            if self.accepting[q] {
                for &i in &inits {
                    out.add_transition(p, s, i);
                }
            }
        }
        let fresh = out.add_state();
        out.add_initial(fresh);
        out.add_final(fresh);
        out
    }

    /// Words having some word of the language as a piece: every state gets a
    /// self-loop on every symbol.
    pub fn upward_closure(&self) -> Nfa {
        let mut out = self.clone();
        for q in 0..out.state_count() {
            for s in self.alphabet.symbols() {
                out.add_transition(q, s, q);
            }
        }
        out
    }

    pub fn determinize(&self, max_states: usize) -> Result<Dfa> {
        Dfa::from_nfa(self, max_states)
    }

    pub fn complement(&self) -> Result<Nfa> {
        self.complement_capped(DEFAULT_MAX_STATES)
    }

    pub fn complement_capped(&self, max_states: usize) -> Result<Nfa> {
        Ok(self.determinize(max_states)?.complement().to_nfa())
    }

    /// Whether `L(self) ⊆ L(other)`, by searching the product of `self` with
    /// the on-the-fly subset automaton of `other` for a counterexample.
    pub fn is_subset_of(&self, other: &Nfa, max_states: usize) -> Result<bool> {
        self.alphabet.ensure_same(&other.alphabet)?;
        let start: Vec<u32> = other.initials().map(|q| q as u32).collect();
        let mut seen: HashMap<(u32, Vec<u32>), ()> = HashMap::new();
        let mut queue = VecDeque::new();
        for p in self.initials() {
            let key = (p as u32, start.clone());
            if seen.insert(key.clone(), ()).is_none() {
                queue.push_back(key);
            }
        }
        while let Some((p, set)) = queue.pop_front() {
            if self.accepting[p as usize] && !set.iter().any(|&q| other.accepting[q as usize]) {
                return Ok(false);
            }
            for s in self.alphabet.symbols() {
                let succ = self.successors(p as usize, s);
                if succ.is_empty() {
                    continue;
                }
                let mut next: Vec<u32> = set
                    .iter()
                    .flat_map(|&q| other.successors(q as usize, s).iter().copied())
                    .collect();
                next.sort_unstable();
                next.dedup();
                for &p2 in succ {
                    let key = (p2, next.clone());
                    if seen.insert(key.clone(), ()).is_none() {
                        if seen.len() > max_states {
                            return Err(Error::cap("inclusion product states", max_states));
                        }
                        queue.push_back(key);
                    }
                }
            }
        }
        Ok(true)
    }

    pub fn equivalent(&self, other: &Nfa, max_states: usize) -> Result<bool> {
        Ok(self.is_subset_of(other, max_states)? && other.is_subset_of(self, max_states)?)
    }

    /// Whether the two languages share a word.
    pub fn meets(&self, other: &Nfa) -> Result<bool> {
        Ok(!self.intersection(other)?.is_empty())
    }

    pub fn decide(&self, query: Query<'_>) -> Result<bool> {
        match query {
            Query::Emptiness => Ok(self.is_empty()),
            Query::Membership(w) => Ok(self.accepts(w)),
            Query::Inclusion(other) => self.is_subset_of(other, DEFAULT_MAX_STATES),
            Query::Equivalence(other) => self.equivalent(other, DEFAULT_MAX_STATES),
        }
    }

    /// Some shortest accepted word, if any.
    pub fn shortest_word(&self) -> Option<Vec<Symbol>> {
        let mut parent: HashMap<usize, Option<(usize, Symbol)>> = HashMap::new();
        let mut queue = VecDeque::new();
        for q in self.initials() {
            parent.insert(q, None);
            queue.push_back(q);
        }
        while let Some(p) = queue.pop_front() {
            if self.accepting[p] {
                let mut w = Vec::new();
                let mut cur = p;
                while let Some(Some((prev, s))) = parent.get(&cur) {
                    w.push(*s);
                    cur = *prev;
                }
                w.reverse();
                return Some(w);
            }
            for s in self.alphabet.symbols() {
                for &q in self.successors(p, s) {
                    parent.entry(q as usize).or_insert_with(|| {
                        queue.push_back(q as usize);
                        Some((p, s))
                    });
                }
            }
        }
        None
    }

    /// Regular expression for the language, by state elimination.
    pub fn to_regex(&self) -> Regex {
        let nfa = self.trim();
        let n = nfa.state_count();
        if n == 0 {
            return Regex::Empty;
        }
        let start = n;
        let end = n + 1;
        let mut edges: Vec<BTreeMap<usize, Regex>> = vec![BTreeMap::new(); n + 2];
        let add = |edges: &mut Vec<BTreeMap<usize, Regex>>, p: usize, q: usize, r: Regex| {
            let slot = edges[p].entry(q).or_insert(Regex::Empty);
            *slot = Regex::union(std::mem::replace(slot, Regex::Empty), r);
        };
        for q in nfa.initials() {
            add(&mut edges, start, q, Regex::Epsilon);
        }
        for q in nfa.finals() {
            add(&mut edges, q, end, Regex::Epsilon);
        }
        for (p, s, q) in nfa.transitions() {
            add(&mut edges, p, q, Regex::Letter(s));
        }
        let mut alive: BTreeSet<usize> = (0..n).collect();
        while !alive.is_empty() {
            // cheapest state first: fewest in-edges times out-edges
            let &q = alive
                .iter()
                .min_by_key(|&&q| {
                    let ins = (0..n + 2).filter(|&p| p != q && edges[p].contains_key(&q)).count();
                    let outs = edges[q].keys().filter(|&&r| r != q).count();
                    (ins * outs, q)
                })
                .unwrap();
            alive.remove(&q);
            let self_loop = edges[q].remove(&q).map(Regex::star).unwrap_or(Regex::Epsilon);
            let outs: Vec<(usize, Regex)> = std::mem::take(&mut edges[q]).into_iter().collect();
            let ins: Vec<usize> = (0..n + 2).filter(|&p| edges[p].contains_key(&q)).collect();
            for p in ins {
                let into = edges[p].remove(&q).unwrap();
                for (r, out) in &outs {
                    let path = Regex::concat_all([into.clone(), self_loop.clone(), out.clone()]);
                    add(&mut edges, p, *r, path);
                }
            }
        }
        edges[start].remove(&end).unwrap_or(Regex::Empty)
    }

    pub fn to_json(&self) -> NfaJson {
        NfaJson {
            alphabet: self.alphabet.to_string(),
            states: self.state_count(),
            initials: self.initials().collect(),
            finals: self.finals().collect(),
            transitions: self
                .transitions()
                .map(|(p, s, q)| (p, self.alphabet.char_of(s).to_string(), q))
                .collect(),
        }
    }

    pub fn from_json(json: &NfaJson) -> Result<Nfa> {
        let alphabet = Alphabet::parse(&json.alphabet)?;
        let mut n = Nfa::new(alphabet.clone(), json.states);
        let check = |q: usize| {
            if q < json.states {
                Ok(q)
            } else {
                Err(Error::invalid(format!("state {q} out of range")))
            }
        };
        for &q in &json.initials {
            n.add_initial(check(q)?);
        }
        for &q in &json.finals {
            n.add_final(check(q)?);
        }
        for (p, s, q) in &json.transitions {
            let mut chars = s.chars();
            let c = match (chars.next(), chars.next()) {
                (Some(c), None) => c,
                _ => return Err(Error::invalid(format!("bad transition symbol {s:?}"))),
            };
            n.add_transition(check(*p)?, alphabet.index_of(c)?, check(*q)?);
        }
        Ok(n)
    }

    pub fn parse_json(text: &str) -> Result<Nfa> {
        let json: NfaJson =
            serde_json::from_str(text).map_err(|e| Error::invalid(format!("NFA JSON: {e}")))?;
        Nfa::from_json(&json)
    }
}

/// Wire format for automata:
/// `{"alphabet":"abc","states":N,"initials":[..],"finals":[..],"transitions":[[q,"a",r],..]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NfaJson {
    pub alphabet: String,
    pub states: usize,
    pub initials: Vec<usize>,
    pub finals: Vec<usize>,
    pub transitions: Vec<(usize, String, usize)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::alphabet::words_up_to;

    fn abc() -> Alphabet {
        Alphabet::parse("abc").unwrap()
    }

    fn re(text: &str, a: &Alphabet) -> Nfa {
        Regex::parse(text, a).unwrap().to_nfa(a)
    }

    #[test]
    fn intersection_of_unions() {
        let a = abc();
        let l = re("a+|b+", &a);
        let l1 = re("b+|c+", &a);
        let l2 = re("c+|a+", &a);
        let both = l.intersection(&l1).unwrap();
        for (w, expect) in [("b", true), ("bb", true), ("a", false), ("c", false)] {
            assert_eq!(both.accepts(&a.word(w).unwrap()), expect, "{w}");
        }
        assert!(both.intersection(&l2).unwrap().is_empty());
    }

    #[test]
    fn union_with_empty_is_identity() {
        let a = abc();
        let l = re("a(b|c)*", &a);
        let u = l.union(&Nfa::empty(&a)).unwrap();
        assert!(u.equivalent(&l, DEFAULT_MAX_STATES).unwrap());
    }

    #[test]
    fn alphabet_mismatch() {
        let l = Nfa::universal(&abc());
        let m = Nfa::universal(&Alphabet::parse("ab").unwrap());
        assert!(matches!(l.union(&m), Err(Error::AlphabetMismatch(..))));
    }

    #[test]
    fn complements() {
        let a = abc();
        assert!(Nfa::universal(&a).complement().unwrap().is_empty());
        let all = Nfa::empty(&a).complement().unwrap();
        assert!(all.equivalent(&Nfa::universal(&a), 1000).unwrap());
        let no_b = re("(a|b|c)*b(a|b|c)*", &a).complement().unwrap();
        assert!(no_b.accepts(&a.word("ac").unwrap()));
        assert!(!no_b.accepts(&a.word("ab").unwrap()));
    }

    #[test]
    fn decisions() {
        let a = abc();
        assert!(Nfa::empty(&a).decide(Query::Emptiness).unwrap());
        let plus = re("a+", &a);
        let has_a = re("(a|b|c)*a(a|b|c)*", &a);
        assert!(plus.decide(Query::Inclusion(&has_a)).unwrap());
        assert!(!has_a.decide(Query::Inclusion(&plus)).unwrap());
        for w in words_up_to(&a, 5) {
            if plus.accepts(&w) {
                assert!(has_a.accepts(&w));
            }
        }
        let ab = Alphabet::parse("ab").unwrap();
        assert!(re("(a|b)*", &ab)
            .decide(Query::Equivalence(&Nfa::universal(&ab)))
            .unwrap());
    }

    #[test]
    fn concatenation_and_star() {
        let a = abc();
        let l = re("a|%eps", &a).concat(&re("b+", &a)).unwrap();
        assert!(l.equivalent(&re("ab+|b+", &a), 1000).unwrap());
        let s = re("ab|c", &a).star();
        assert!(s.equivalent(&re("(ab|c)*", &a), 1000).unwrap());
        let s2 = re("a*b", &a).star();
        assert!(s2.equivalent(&re("(a*b)*", &a), 1000).unwrap());
    }

    #[test]
    fn upward_closure_of_word() {
        let ab = Alphabet::parse("ab").unwrap();
        let up = re("ab", &ab).upward_closure();
        for (w, expect) in [("ab", true), ("aab", true), ("abb", true), ("bab", true), ("ba", false)] {
            assert_eq!(up.accepts(&ab.word(w).unwrap()), expect, "{w}");
        }
        assert!(Nfa::empty(&ab).upward_closure().is_empty());
        let all = Nfa::universal(&ab);
        assert!(all.upward_closure().equivalent(&all, 100).unwrap());
    }

    #[test]
    fn special_alphabet_languages() {
        let a = abc();
        let star = Nfa::alphabet_star(&a, 0);
        let exact = Nfa::alphabet_exact(&a, 0);
        assert!(star.accepts(&[]) && exact.accepts(&[]));
        assert!(!star.accepts(&[0]));
        let exact_ab = Nfa::alphabet_exact(&a, 0b011);
        assert!(exact_ab.accepts(&a.word("ab").unwrap()));
        assert!(exact_ab.accepts(&a.word("ba").unwrap()));
        assert!(!exact_ab.accepts(&a.word("a").unwrap()));
        assert!(!exact_ab.accepts(&a.word("abc").unwrap()));
        let cac = re("c(ac)+", &a);
        assert!(!exact_ab.meets(&cac).unwrap());
        assert!(Nfa::alphabet_exact(&a, 0b101).meets(&cac).unwrap());
    }

    #[test]
    fn regex_round_trip_through_elimination() {
        let a = abc();
        for text in ["a(b|c)*", "(ab)+|c*", "%empty", "%eps", "(a|b)*c(a|b)*"] {
            let n = re(text, &a);
            let back = n.to_regex().to_nfa(&a);
            assert!(n.equivalent(&back, 1000).unwrap(), "{text}");
        }
    }

    #[test]
    fn json_wire_format() {
        let text = r#"{"alphabet":"ab","states":2,"initials":[0],"finals":[1],"transitions":[[0,"a",1],[1,"b",1]]}"#;
        let n = Nfa::parse_json(text).unwrap();
        let ab = n.alphabet().clone();
        assert!(n.accepts(&ab.word("abb").unwrap()));
        assert!(!n.accepts(&ab.word("b").unwrap()));
        let again = Nfa::from_json(&n.to_json()).unwrap();
        assert_eq!(again, n);
        assert!(Nfa::parse_json(r#"{"alphabet":"ab","states":1,"initials":[3],"finals":[],"transitions":[]}"#).is_err());
    }

    #[test]
    fn shortest_words() {
        let a = abc();
        assert_eq!(re("c(ac)+", &a).shortest_word(), Some(a.word("cac").unwrap()));
        assert_eq!(Nfa::empty(&a).shortest_word(), None);
    }
}
