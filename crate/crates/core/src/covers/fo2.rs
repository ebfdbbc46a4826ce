//! Covers for two-variable first-order logic, by induction on the
//! sub-alphabet and on the reachability index of the context elements.

use std::collections::{HashMap, HashSet, VecDeque};
use std::rc::Rc;

use crate::algebra::Elem;
use crate::covers::{Cover, Piece};
use crate::error::{Error, Result};
use crate::lang::alphabet::Symbol;
use crate::lang::regex::Regex;
use crate::rating::{AlphabetImages, RatingMap};
use crate::saturation::{ClassId, ImprintSet};

#[derive(Clone, Copy, Debug)]
pub struct Fo2Options {
    pub max_pieces: usize,
    /// Cap on the size of each `S_B`.
    pub max_elements: usize,
}

impl Default for Fo2Options {
    fn default() -> Self {
        Fo2Options {
            max_pieces: 10_000,
            max_elements: 200_000,
        }
    }
}

#[derive(Clone, Debug)]
struct Term {
    regex: Regex,
    value: Elem,
}

type Key = (u32, Elem, Elem);

struct Ctx<'a> {
    rho: &'a RatingMap,
    s: &'a ImprintSet,
    images: AlphabetImages,
    opts: Fo2Options,
    sb: HashMap<u32, Rc<Vec<Elem>>>,
    memo: HashMap<Key, Rc<Vec<Term>>>,
    active: HashSet<Key>,
}

impl Ctx<'_> {
    /// `S_B = {ρ(K) ∈ S : ∅ ≠ K ⊆ B*}`: sums of images of words of `B*`
    /// that stay in `S`. Partial sums of a member stay in `S` because `S` is
    /// a downset, so a closure search is exact.
    fn s_b(&mut self, b: u32) -> Result<Rc<Vec<Elem>>> {
        if let Some(v) = self.sb.get(&b) {
            return Ok(v.clone());
        }
        let r = self.rho.semiring();
        let cap = self.opts.max_elements;
        let words = self.rho.word_images_over(b, cap)?;
        let mut seen: HashSet<Elem> = words.iter().cloned().collect();
        let mut queue: VecDeque<Elem> = words.iter().cloned().collect();
        while let Some(x) = queue.pop_front() {
            for w in &words {
                let y = r.add(&x, w);
                if !seen.contains(&y) && self.s.contains(&y) {
                    if seen.len() >= cap {
                        return Err(Error::cap("fo2 cover S_B elements", cap));
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut v: Vec<Elem> = seen.into_iter().collect();
        v.sort_unstable();
        let v = Rc::new(v);
        self.sb.insert(b, v.clone());
        Ok(v)
    }

    /// Smallest `b ∈ B` with `t ∉ t·S_B·ρ(b)·S_B` (right) or
    /// `t ∉ S_B·ρ(b)·S_B·t` (left).
    fn unsaturated(&self, set: u32, sb: &[Elem], t: &[u64], right: bool) -> Option<Symbol> {
        let r = self.rho.semiring();
        let side = |x: &[u64], y: &[u64]| if right { r.mul(x, y) } else { r.mul(y, x) };
        let reach: HashSet<Elem> = sb.iter().map(|x| side(t, x)).collect();
        self.rho.alphabet().symbols().filter(|s| set & (1 << s) != 0).find(|&b| {
            let stepped: HashSet<Elem> = reach.iter().map(|z| side(z, self.rho.letter(b))).collect();
            !stepped.iter().any(|z| sb.iter().any(|y| side(z, y).as_slice() == t))
        })
    }

    fn rec(&mut self, set: u32, tl: Elem, tr: Elem) -> Result<Rc<Vec<Term>>> {
        let key: Key = (set, tl.clone(), tr.clone());
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        if !self.active.insert(key.clone()) {
            return Err(Error::invalid(
                "fo2 cover recursion revisited a context; the input set is not fo2-saturated",
            ));
        }
        let r = self.rho.semiring().clone();
        let a = self.rho.alphabet().clone();
        let sb = self.s_b(set)?;
        let one = r.one().clone();
        let out = if let Some(b) = self.unsaturated(set, &sb, &tl, true) {
            let hs = self.rec(set & !(1 << b), one.clone(), one)?;
            let rb = self.rho.letter(b).clone();
            let mut out: Vec<Term> = hs.as_ref().clone();
            for h in hs.iter() {
                let th = r.mul(&r.mul(&tl, &h.value), &rb);
                for k in self.rec(set, th, tr.clone())?.iter() {
                    out.push(Term {
                        regex: Regex::concat_all([h.regex.clone(), Regex::Letter(b), k.regex.clone()]),
                        value: r.mul(&r.mul(&h.value, &rb), &k.value),
                    });
                    self.check_size(out.len())?;
                }
            }
            out
        } else if let Some(b) = self.unsaturated(set, &sb, &tr, false) {
            let hs = self.rec(set & !(1 << b), one.clone(), one)?;
            let rb = self.rho.letter(b).clone();
            let mut out: Vec<Term> = hs.as_ref().clone();
            for h in hs.iter() {
                let th = r.mul(&r.mul(&rb, &h.value), &tr);
                for k in self.rec(set, tl.clone(), th)?.iter() {
                    out.push(Term {
                        regex: Regex::concat_all([k.regex.clone(), Regex::Letter(b), h.regex.clone()]),
                        value: r.mul(&r.mul(&k.value, &rb), &h.value),
                    });
                    self.check_size(out.len())?;
                }
            }
            out
        } else {
            vec![Term {
                regex: Regex::star_of(set, &a),
                value: self.images.star[&set].clone(),
            }]
        };
        self.active.remove(&key);
        let out = Rc::new(out);
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    fn check_size(&self, n: usize) -> Result<()> {
        if n > self.opts.max_pieces {
            return Err(Error::cap("fo2 cover pieces", self.opts.max_pieces));
        }
        Ok(())
    }
}

/// A cover `𝐊` of `B*` with `t_ℓ·ρ(K)·t_r ∈ S` for every piece. `s` must be
/// the FO²-saturated imprint of `rho`, and `rho` alphabet compatible.
pub fn fo2_cover(
    rho: &RatingMap,
    s: &ImprintSet,
    set: u32,
    tl: &[u64],
    tr: &[u64],
    opts: Fo2Options,
) -> Result<Cover> {
    if !rho.is_alphabet_compatible() {
        return Err(Error::Unsupported(
            "fo2 covers need an alphabet-compatible rating map".into(),
        ));
    }
    if !s.contains(tl) || !s.contains(tr) {
        return Err(Error::invalid("context elements must belong to the imprint"));
    }
    let mut ctx = Ctx {
        rho,
        s,
        images: AlphabetImages::compute(rho)?,
        opts,
        sb: HashMap::new(),
        memo: HashMap::new(),
        active: HashSet::new(),
    };
    let terms = ctx.rec(set, tl.into(), tr.into())?;
    let r = rho.semiring();
    if let Some(t) = terms
        .iter()
        .find(|t| !s.contains(&r.mul(&r.mul(tl, &t.value), tr)))
    {
        return Err(Error::invalid(format!(
            "fo2 cover piece rated {} escapes the imprint",
            r.render(&t.value)
        )));
    }
    let a = rho.alphabet();
    let mut seen = HashSet::new();
    let pieces = terms
        .iter()
        .filter(|t| seen.insert(t.regex.clone()))
        .map(|t| Piece::from_regex(t.regex.clone(), a))
        .collect::<Vec<_>>();
    Ok(Cover {
        class: ClassId::Fo2,
        target: crate::lang::nfa::Nfa::alphabet_star(a, set),
        k: None,
        provenance: format!(
            "fo2 recursion over {} ({} contexts, {} pieces)",
            a.render_mask(set),
            ctx.memo.len(),
            pieces.len()
        ),
        pieces,
        optimal: true,
    })
}

/// The optimal universal cover: `B = A`, `t_ℓ = t_r = 1_R`.
pub fn fo2_universal_cover(rho: &RatingMap, s: &ImprintSet, opts: Fo2Options) -> Result<Cover> {
    let one = rho.semiring().one().clone();
    fo2_cover(rho, s, rho.alphabet().full_mask(), &one, &one, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::alphabet::Alphabet;
    use crate::lang::nfa::{Nfa, DEFAULT_MAX_STATES};
    use crate::rating::{rm_from_multiset, Language};
    use crate::saturation::saturate_universal;

    fn setup(texts: &[&str], a: &Alphabet) -> (RatingMap, ImprintSet) {
        let langs: Vec<Language> = texts
            .iter()
            .map(|t| Language::Nfa(Regex::parse(t, a).unwrap().to_nfa(a)))
            .collect();
        let ext = rm_from_multiset(&langs).unwrap().augment().unwrap();
        let (s, _) = saturate_universal(&ext.tau, ClassId::Fo2, 200_000).unwrap();
        (ext.tau, s)
    }

    #[test]
    fn empty_alphabet_gives_epsilon() {
        let a = Alphabet::parse("ab").unwrap();
        let (rho, s) = setup(&["a+"], &a);
        let one = rho.semiring().one().clone();
        let c = fo2_cover(&rho, &s, 0, &one, &one, Fo2Options::default()).unwrap();
        assert_eq!(c.pieces.len(), 1);
        assert!(c.pieces[0].nfa.equivalent(&Nfa::epsilon(&a), 10).unwrap());
    }

    #[test]
    fn universal_cover_is_optimal() {
        let a = Alphabet::parse("ab").unwrap();
        for texts in [&["a+"][..], &["(ab)+", "b*"], &["a(a|b)*b"]] {
            let (rho, s) = setup(texts, &a);
            let c = fo2_universal_cover(&rho, &s, Fo2Options::default()).unwrap();
            assert!(Nfa::universal(&a).is_subset_of(&c.union_nfa().unwrap(), DEFAULT_MAX_STATES).unwrap());
            assert_eq!(c.imprint(&rho).unwrap(), s, "{texts:?}");
        }
    }
}
