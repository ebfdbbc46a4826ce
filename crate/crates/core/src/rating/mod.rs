//! Nice multiplicative rating maps, their extensions, and evaluation.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::algebra::{Elem, Hit, Semiring, SemiringMorphism};
use crate::error::{Error, Result};
use crate::lang::alphabet::{Alphabet, Symbol};
use crate::lang::monoid::{transition_monoid_capped, MonoidMorphism, Recognizer};
use crate::lang::nfa::{Nfa, DEFAULT_MAX_STATES};
use crate::saturation::imprint::{ImprintSet, PointedImprintSet};

/// Cap on `(state, element)` pairs explored while evaluating a language.
pub const DEFAULT_MAX_EVAL: usize = 4_000_000;

/// A nice multiplicative rating map `ρ: 2^{A*} → R`, given by the images of
/// the letters.
#[derive(Clone, Debug)]
pub struct RatingMap {
    alphabet: Alphabet,
    semiring: Semiring,
    letters: Vec<Elem>,
    cont: Option<SemiringMorphism>,
}

impl RatingMap {
    pub fn new(alphabet: Alphabet, semiring: Semiring, letters: Vec<Elem>) -> Result<Self> {
        if letters.len() != alphabet.len() {
            return Err(Error::invalid("one letter image per symbol is required"));
        }
        Ok(RatingMap {
            alphabet,
            semiring,
            letters,
            cont: None,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn semiring(&self) -> &Semiring {
        &self.semiring
    }

    pub fn letter(&self, s: Symbol) -> &Elem {
        &self.letters[s as usize]
    }

    pub fn letters(&self) -> &[Elem] {
        &self.letters
    }

    /// The morphism `r ↦ cont(r)`, present on alphabet-compatible maps.
    pub fn cont(&self) -> Option<&SemiringMorphism> {
        self.cont.as_ref()
    }

    pub fn is_alphabet_compatible(&self) -> bool {
        self.cont.is_some()
    }

    /// Sub-alphabet masks recorded by `cont(x)`.
    pub fn cont_of(&self, x: &[u64]) -> Option<Vec<u32>> {
        self.cont
            .as_ref()
            .map(|c| Semiring::bits_of(&c.apply(x)).into_iter().map(|b| b as u32).collect())
    }

    /// `ρ(w)`.
    pub fn word(&self, w: &[Symbol]) -> Elem {
        w.iter().fold(self.semiring.one().clone(), |acc, &s| {
            self.semiring.mul(&acc, &self.letters[s as usize])
        })
    }

    /// `ρ(K)`.
    pub fn eval(&self, k: &Nfa) -> Result<Elem> {
        self.eval_capped(k, DEFAULT_MAX_EVAL)
    }

    /// Sums the elements reachable at accepting states of the product of
    /// `k` with the word morphism.
    pub fn eval_capped(&self, k: &Nfa, cap: usize) -> Result<Elem> {
        self.alphabet.ensure_same(k.alphabet())?;
        let r = &self.semiring;
        let mut seen: HashSet<(usize, Elem)> = HashSet::new();
        let mut queue = VecDeque::new();
        for q in k.initials() {
            let key = (q, r.one().clone());
            if seen.insert(key.clone()) {
                queue.push_back(key);
            }
        }
        let mut acc = r.zero().clone();
        while let Some((q, x)) = queue.pop_front() {
            if k.is_final(q) {
                acc = r.add(&acc, &x);
            }
            for s in self.alphabet.symbols() {
                let succ = k.successors(q, s);
                if succ.is_empty() {
                    continue;
                }
                let y = r.mul(&x, &self.letters[s as usize]);
                for &q2 in succ {
                    let key = (q2 as usize, y.clone());
                    if !seen.contains(&key) {
                        if seen.len() >= cap {
                            return Err(Error::cap("rating evaluation pairs", cap));
                        }
                        seen.insert(key.clone());
                        queue.push_back(key);
                    }
                }
            }
        }
        Ok(acc)
    }

    /// `{ρ(w) : w ∈ A*}`, the multiplicative submonoid generated by the
    /// letter images.
    pub fn word_images(&self, cap: usize) -> Result<Vec<Elem>> {
        self.word_images_over(self.alphabet.full_mask(), cap)
    }

    /// `{ρ(w) : w ∈ B*}`.
    pub fn word_images_over(&self, mask: u32, cap: usize) -> Result<Vec<Elem>> {
        let r = &self.semiring;
        let mut seen: HashSet<Elem> = HashSet::from([r.one().clone()]);
        let mut out = vec![r.one().clone()];
        let mut i = 0;
        while i < out.len() {
            for s in self.alphabet.symbols().filter(|s| mask & (1 << s) != 0) {
                let y = r.mul(&out[i], &self.letters[s as usize]);
                if seen.insert(y.clone()) {
                    if out.len() >= cap {
                        return Err(Error::cap("word image enumeration", cap));
                    }
                    out.push(y);
                }
            }
            i += 1;
        }
        Ok(out)
    }

    /// `itriv(ρ) = ↓{ρ(w) : w ∈ A*}`.
    pub fn trivial_imprint(&self, cap: usize) -> Result<ImprintSet> {
        let images = self.word_images(cap)?;
        Ok(ImprintSet::down_closure(&self.semiring, &images))
    }

    /// `{(α(w), ρ(w)) : w ∈ A*}`.
    pub fn pointed_word_images(
        &self,
        alpha: &MonoidMorphism,
        cap: usize,
    ) -> Result<Vec<(usize, Elem)>> {
        self.alphabet.ensure_same(alpha.alphabet())?;
        let r = &self.semiring;
        let start = (alpha.identity(), r.one().clone());
        let mut seen: HashSet<(usize, Elem)> = HashSet::from([start.clone()]);
        let mut out = vec![start];
        let mut i = 0;
        while i < out.len() {
            for s in self.alphabet.symbols() {
                let m = alpha.mul(out[i].0, alpha.letter_image(s));
                let y = r.mul(&out[i].1, &self.letters[s as usize]);
                if seen.insert((m, y.clone())) {
                    if out.len() >= cap {
                        return Err(Error::cap("pointed word image enumeration", cap));
                    }
                    out.push((m, y));
                }
            }
            i += 1;
        }
        Ok(out)
    }

    /// `ptriv(α, ρ)`.
    pub fn pointed_trivial_imprint(
        &self,
        alpha: &MonoidMorphism,
        cap: usize,
    ) -> Result<PointedImprintSet> {
        let mut p = PointedImprintSet::empty(alpha.size(), &self.semiring);
        for (m, x) in self.pointed_word_images(alpha, cap)? {
            p.insert(m, &x);
        }
        p.normalize();
        Ok(p)
    }

    /// Pairs `ρ` with the alphabet-set semiring:
    /// `τ(K) = (ρ(K), {alph(w) : w ∈ K})`. Returns `τ` and the projection
    /// back onto `R`.
    pub fn augment(&self) -> Result<(RatingMap, SemiringMorphism)> {
        let sets = Semiring::alphabet_sets(self.alphabet.len())?;
        let q = Semiring::product(vec![self.semiring.clone(), sets.clone()])?;
        let letters = self
            .alphabet
            .symbols()
            .map(|s| {
                let mut e = q.zero().clone();
                let w = self.semiring.words();
                e[..w].copy_from_slice(&self.letters[s as usize]);
                let single = sets.with_bits([1usize << s]);
                e[w..].copy_from_slice(&single);
                e
            })
            .collect();
        let delta = SemiringMorphism::project(&q, 0)?;
        let cont = SemiringMorphism::project(&q, 1)?;
        Ok((
            RatingMap {
                alphabet: self.alphabet.clone(),
                semiring: q,
                letters,
                cont: Some(cont),
            },
            delta,
        ))
    }

    /// Index of the alphabet-set component, for maps built by [`augment`].
    ///
    /// [`augment`]: RatingMap::augment
    pub(crate) fn cont_component(&self) -> Option<usize> {
        match self.cont.as_ref()?.rule() {
            crate::algebra::Rule::Project(i) => Some(*i),
            _ => None,
        }
    }
}

/// Which construction backs one language of a multiset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backing {
    /// Relations over the states of an automaton.
    Relations { states: usize },
    /// Subsets of a transition monoid.
    Powerset { monoid: usize },
}

/// A rating map `τ` together with an extending morphism `δ` into the flag
/// semiring `2^𝐋`, so that `ρ_𝐋 = δ ∘ τ`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub tau: RatingMap,
    pub delta: SemiringMorphism,
    pub languages: usize,
    pub backings: Vec<Backing>,
}

/// An input language of a multiset.
#[derive(Clone, Debug)]
pub enum Language {
    Nfa(Nfa),
    Recognizer(Recognizer),
}

impl Language {
    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Language::Nfa(n) => n.alphabet(),
            Language::Recognizer(r) => r.morphism.alphabet(),
        }
    }
}

impl Extension {
    /// The element `δ(r)` as a set of language indices.
    pub fn hit_set(&self, r: &[u64]) -> Vec<usize> {
        Semiring::bits_of(&self.delta.apply(r))
    }

    /// Whether `r ∈ F_R = δ⁻¹(𝐋)`.
    pub fn is_marked(&self, r: &[u64]) -> bool {
        self.hit_set(r).len() == self.languages
    }

    /// Alphabet-compatible version of this extension.
    pub fn augment(&self) -> Result<Extension> {
        let (tau, back) = self.tau.augment()?;
        Ok(Extension {
            tau,
            delta: back.then(self.delta.clone()),
            languages: self.languages,
            backings: self.backings.clone(),
        })
    }

    /// `log2` of the rating set size.
    pub fn size_log2(&self) -> f64 {
        self.tau.semiring().size_log2()
    }

    /// `↓δ(S)` as an imprint over `2^𝐋`.
    pub fn pullback(&self, s: &ImprintSet) -> ImprintSet {
        let images: Vec<Elem> = s.generators().iter().map(|g| self.delta.apply(g)).collect();
        ImprintSet::down_closure(self.delta.target(), &images)
    }

    /// Pointwise pullback of a pointed imprint.
    pub fn pullback_pointed(&self, p: &PointedImprintSet) -> PointedImprintSet {
        let mut out = PointedImprintSet::empty(p.monoid_size(), self.delta.target());
        for (m, g) in p.generators() {
            out.insert(m, &self.delta.apply(g));
        }
        out.normalize();
        out
    }
}

/// `ρ_α` over `2^M`, with `δ(S) = {L}` iff `S ∩ F ≠ ∅`.
pub fn rm_from_morphism(alpha: &MonoidMorphism, accepting: &[bool]) -> Result<Extension> {
    let r = Semiring::powerset(alpha)?;
    let letters = alpha
        .alphabet()
        .symbols()
        .map(|s| r.with_bits([alpha.letter_image(s)]))
        .collect();
    let tau = RatingMap::new(alpha.alphabet().clone(), r.clone(), letters)?;
    let flags = Semiring::flags(1)?;
    let mask = r.with_bits((0..alpha.size()).filter(|&m| accepting[m]));
    let delta = SemiringMorphism::hits(&r, &flags, vec![Hit { component: None, mask, out_bit: 0 }]);
    Ok(Extension {
        tau,
        delta,
        languages: 1,
        backings: vec![Backing::Powerset { monoid: alpha.size() }],
    })
}

/// `ρ_𝒜` over `2^{Q²}`, with `δ(S) = {L(𝒜)}` iff `S ∩ (I × F) ≠ ∅`.
pub fn rm_from_nfa(n: &Nfa) -> Result<Extension> {
    let q = n.state_count();
    let r = Semiring::relation(q)?;
    let letters = n
        .alphabet()
        .symbols()
        .map(|s| {
            r.with_bits(
                (0..q).flat_map(|p| n.successors(p, s).iter().map(move |&t| p * q + t as usize)),
            )
        })
        .collect();
    let tau = RatingMap::new(n.alphabet().clone(), r.clone(), letters)?;
    let flags = Semiring::flags(1)?;
    let mask = r.with_bits(n.initials().flat_map(|i| n.finals().map(move |f| i * q + f)));
    let delta = SemiringMorphism::hits(&r, &flags, vec![Hit { component: None, mask, out_bit: 0 }]);
    Ok(Extension {
        tau,
        delta,
        languages: 1,
        backings: vec![Backing::Relations { states: q }],
    })
}

/// Picks the cheapest finite representation of one language: relations over
/// the trimmed automaton or its trimmed minimal DFA when small enough, else
/// the powerset of the transition monoid.
fn single_extension(lang: &Language, max_states: usize) -> Result<Extension> {
    match lang {
        Language::Recognizer(r) => rm_from_morphism(&r.morphism, &r.accepting),
        Language::Nfa(n) => {
            let trimmed = n.trim();
            let min = n.determinize(max_states)?.minimize().to_nfa().trim();
            let best = if min.state_count() < trimmed.state_count() {
                min
            } else {
                trimmed
            };
            let q = best.state_count();
            let monoid = transition_monoid_capped(n, max_states, crate::algebra::semiring::MAX_POWERSET_MONOID)
                .ok()
                .filter(|rec| rec.morphism.size() < q * q || q > crate::algebra::semiring::MAX_RELATION_STATES);
            match monoid {
                Some(rec) => rm_from_morphism(&rec.morphism, &rec.accepting),
                None => rm_from_nfa(&best),
            }
        }
    }
}

/// Extension of `ρ_𝐋` for a multiset `𝐋`, over the product of the
/// per-language rating sets.
pub fn rm_from_multiset(langs: &[Language]) -> Result<Extension> {
    rm_from_multiset_capped(langs, DEFAULT_MAX_STATES)
}

pub fn rm_from_multiset_capped(langs: &[Language], max_states: usize) -> Result<Extension> {
    let first = langs
        .first()
        .ok_or_else(|| Error::invalid("the multiset needs at least one language"))?;
    let alphabet = first.alphabet().clone();
    for l in langs {
        alphabet.ensure_same(l.alphabet())?;
    }
    let singles: Vec<Extension> = langs
        .iter()
        .map(|l| single_extension(l, max_states))
        .collect::<Result<_>>()?;
    let r = Semiring::product(singles.iter().map(|e| e.tau.semiring().clone()).collect())?;
    let letters = alphabet
        .symbols()
        .map(|s| {
            let mut e = r.zero().clone();
            for (i, ext) in singles.iter().enumerate() {
                let (part, off) = &r.parts().unwrap()[i];
                e[*off..*off + part.words()].copy_from_slice(ext.tau.letter(s));
            }
            e
        })
        .collect();
    let tau = RatingMap::new(alphabet, r.clone(), letters)?;
    let flags = Semiring::flags(langs.len())?;
    let hits = singles
        .iter()
        .enumerate()
        .map(|(i, ext)| match ext.delta.rule() {
            crate::algebra::Rule::Hits(h) => Hit {
                component: Some(i),
                mask: h[0].mask.clone(),
                out_bit: i,
            },
            _ => unreachable!("single extensions use hit tests"),
        })
        .collect();
    let delta = SemiringMorphism::hits(&r, &flags, hits);
    Ok(Extension {
        tau,
        delta,
        languages: langs.len(),
        backings: singles.iter().flat_map(|e| e.backings.clone()).collect(),
    })
}

/// Caches `ρ(B*)` and `ρ(B^⊛)` for every sub-alphabet `B`.
#[derive(Clone, Debug)]
pub struct AlphabetImages {
    pub star: HashMap<u32, Elem>,
    pub exact: HashMap<u32, Elem>,
}

impl AlphabetImages {
    pub fn compute(rho: &RatingMap) -> Result<Self> {
        let a = rho.alphabet();
        let mut star = HashMap::new();
        let mut exact = HashMap::new();
        for mask in 0..=a.full_mask() {
            let (s, e) = crate::lang::alphabet_languages(a, mask);
            star.insert(mask, rho.eval(&s)?);
            exact.insert(mask, rho.eval(&e)?);
        }
        Ok(AlphabetImages { star, exact })
    }
}
