//! Least-fixpoint computation of optimal imprints.
//!
//! Saturated sets are downsets, so the engines only manipulate their maximal
//! elements. Every closure rule is monotone in its arguments, which makes it
//! enough to fire the rules on generators: multiplication on pairs of
//! generators, `g^ω + g^{ω+1}` on each generator `g`, and the idempotent
//! rules on `g^ω` (restricted to a single sub-alphabet for FO²).

pub mod imprint;

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::{Elem, Semiring};
use crate::error::{Error, Result};
use crate::lang::monoid::MonoidMorphism;
use crate::lang::nfa::Nfa;
use crate::rating::{AlphabetImages, Extension, RatingMap};

pub use imprint::{ImprintSet, PointedImprintSet};

/// Default cap on distinct elements produced during a fixpoint.
pub const DEFAULT_MAX_ELEMENTS: usize = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassId {
    At,
    Sigma1,
    Bsigma1,
    Sigma2,
    Fo2,
    Fo,
}

impl ClassId {
    pub const ALL: [ClassId; 6] = [
        ClassId::At,
        ClassId::Sigma1,
        ClassId::Bsigma1,
        ClassId::Sigma2,
        ClassId::Fo2,
        ClassId::Fo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassId::At => "at",
            ClassId::Sigma1 => "sigma1",
            ClassId::Bsigma1 => "bsigma1",
            ClassId::Sigma2 => "sigma2",
            ClassId::Fo2 => "fo2",
            ClassId::Fo => "fo",
        }
    }

    /// Lattices that are not Boolean algebras go through the pointed engine.
    pub fn is_pointed(self) -> bool {
        matches!(self, ClassId::Sigma1 | ClassId::Sigma2)
    }

    /// Whether saturation needs an alphabet-compatible map.
    pub fn needs_alphabet(self) -> bool {
        matches!(self, ClassId::Fo2 | ClassId::Sigma2)
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ClassId::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::invalid(format!("unknown class {s:?}")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SatStats {
    /// Generators taken off the worklist.
    pub iterations: usize,
    /// Distinct elements produced by the rules.
    pub produced: usize,
    /// Size of the final antichain.
    pub generators: usize,
}

struct Worklist<T> {
    queue: VecDeque<T>,
    seen: HashSet<T>,
    cap: usize,
}

impl<T: Clone + Eq + std::hash::Hash> Worklist<T> {
    fn new(cap: usize) -> Self {
        Worklist {
            queue: VecDeque::new(),
            seen: HashSet::new(),
            cap,
        }
    }

    /// Queues `x` if it has never been produced and `grow` accepts it.
    fn offer(&mut self, x: T, what: &str, grow: impl FnOnce(&T) -> bool) -> Result<()> {
        if self.seen.contains(&x) {
            return Ok(());
        }
        if self.seen.len() >= self.cap {
            return Err(Error::cap(format!("{what} saturation elements"), self.cap));
        }
        self.seen.insert(x.clone());
        if grow(&x) {
            self.queue.push_back(x);
        }
        Ok(())
    }
}

/// `x` with its alphabet component replaced by `{B}`.
fn restrict(r: &Semiring, comp: usize, x: &[u64], b: u32) -> Elem {
    let (part, off) = &r.parts().expect("alphabet-compatible product")[comp];
    let mut out: Elem = x.into();
    out[*off..*off + part.words()].copy_from_slice(&part.with_bits([b as usize]));
    out
}

fn cont_bits(rho: &RatingMap, x: &[u64]) -> Vec<u32> {
    rho.cont_of(x).unwrap_or_default()
}

/// `I_AT[ρ] = ↓{ρ(B^⊛) : B ⊆ A}`, or over the atoms meeting `L` when given.
pub fn at_imprint(rho: &RatingMap, scope: Option<&Nfa>) -> Result<ImprintSet> {
    let a = rho.alphabet();
    let mut images = Vec::new();
    for mask in 0..=a.full_mask() {
        let atom = Nfa::alphabet_exact(a, mask);
        if let Some(l) = scope {
            if !atom.meets(l)? {
                continue;
            }
        }
        images.push(rho.eval(&atom)?);
    }
    Ok(ImprintSet::down_closure(rho.semiring(), &images))
}

/// The least `class`-saturated subset of `R`.
pub fn saturate_universal(
    rho: &RatingMap,
    class: ClassId,
    max_elements: usize,
) -> Result<(ImprintSet, SatStats)> {
    match class {
        ClassId::Bsigma1 | ClassId::Fo => {}
        ClassId::Fo2 => {
            if rho.cont_component().is_none() {
                return Err(Error::Unsupported(
                    "fo2 saturation needs an alphabet-compatible rating map".into(),
                ));
            }
        }
        ClassId::At => {
            let s = at_imprint(rho, None)?;
            let stats = SatStats {
                generators: s.len_generators(),
                ..SatStats::default()
            };
            return Ok((s, stats));
        }
        other => {
            return Err(Error::Unsupported(format!(
                "{other} is handled by the pointed engine"
            )))
        }
    }
    let r = rho.semiring();
    let images = AlphabetImages::compute(rho)?;
    let full = rho.alphabet().full_mask();
    let mut s = ImprintSet::empty(r);
    let mut work: Worklist<Elem> = Worklist::new(max_elements);
    let what = class.name();
    for x in rho.word_images(max_elements)? {
        work.offer(x, what, |x| s.insert(x))?;
    }
    if class == ClassId::Bsigma1 {
        for mask in 0..=full {
            let e = r.idempotent_power(&images.exact[&mask]);
            work.offer(e, what, |x| s.insert(x))?;
        }
    }
    let comp = rho.cont_component();
    let mut stats = SatStats::default();
    while let Some(x) = work.queue.pop_front() {
        if !s.generators().contains(&x) {
            continue;
        }
        stats.iterations += 1;
        let gens: Vec<Elem> = s.generators().to_vec();
        for g in &gens {
            work.offer(r.mul(&x, g), what, |y| s.insert(y))?;
            work.offer(r.mul(g, &x), what, |y| s.insert(y))?;
        }
        match class {
            ClassId::Fo => {
                let e = r.idempotent_power(&x);
                let y = r.add(&e, &r.mul(&e, &x));
                work.offer(y, what, |y| s.insert(y))?;
            }
            ClassId::Fo2 => {
                let comp = comp.unwrap();
                let xb = cont_bits(rho, &x);
                for g in &gens {
                    for b in cont_bits(rho, g).into_iter().filter(|b| xb.contains(b)) {
                        let ex = r.idempotent_power(&restrict(r, comp, &x, b));
                        let eg = r.idempotent_power(&restrict(r, comp, g, b));
                        let mid = &images.star[&b];
                        let y1 = r.mul(&r.mul(&ex, mid), &eg);
                        let y2 = r.mul(&r.mul(&eg, mid), &ex);
                        work.offer(y1, what, |y| s.insert(y))?;
                        work.offer(y2, what, |y| s.insert(y))?;
                    }
                }
            }
            _ => {}
        }
    }
    s.normalize();
    stats.produced = work.seen.len();
    stats.generators = s.len_generators();
    Ok((s, stats))
}

/// The least `class`-saturated subset of `M × R`.
pub fn saturate_pointed(
    alpha: &MonoidMorphism,
    rho: &RatingMap,
    class: ClassId,
    max_elements: usize,
) -> Result<(PointedImprintSet, SatStats)> {
    match class {
        ClassId::Sigma1 => {}
        ClassId::Sigma2 => {
            if rho.cont_component().is_none() {
                return Err(Error::Unsupported(
                    "sigma2 saturation needs an alphabet-compatible rating map".into(),
                ));
            }
        }
        other => {
            return Err(Error::Unsupported(format!(
                "{other} is handled by the universal engine"
            )))
        }
    }
    let r = rho.semiring();
    let images = AlphabetImages::compute(rho)?;
    let mut p = PointedImprintSet::empty(alpha.size(), r);
    let mut work: Worklist<(usize, Elem)> = Worklist::new(max_elements);
    let what = class.name();
    for (m, x) in rho.pointed_word_images(alpha, max_elements)? {
        work.offer((m, x), what, |(m, x)| p.insert(*m, x))?;
    }
    if class == ClassId::Sigma1 {
        let top = images.star[&rho.alphabet().full_mask()].clone();
        work.offer((alpha.identity(), top), what, |(m, x)| p.insert(*m, x))?;
    }
    let mut stats = SatStats::default();
    while let Some((m, x)) = work.queue.pop_front() {
        if !p.slice(m).generators().contains(&x) {
            continue;
        }
        stats.iterations += 1;
        let gens: Vec<(usize, Elem)> = p.generators().map(|(n, g)| (n, g.clone())).collect();
        for (n, g) in &gens {
            work.offer((alpha.mul(m, *n), r.mul(&x, g)), what, |(m, x)| p.insert(*m, x))?;
            work.offer((alpha.mul(*n, m), r.mul(g, &x)), what, |(m, x)| p.insert(*m, x))?;
        }
        if class == ClassId::Sigma2 && alpha.is_idempotent(m) {
            let f = r.idempotent_power(&x);
            for b in cont_bits(rho, &f) {
                let y = r.mul(&r.mul(&f, &images.star[&b]), &f);
                work.offer((m, y), what, |(m, x)| p.insert(*m, x))?;
            }
        }
    }
    p.normalize();
    stats.produced = work.seen.len();
    stats.generators = p.generators().count();
    Ok((p, stats))
}

/// Outcome of a covering decision.
#[derive(Clone, Debug)]
pub struct Decision {
    pub coverable: bool,
    /// `↓δ(imprint)` over the flags of the extension.
    pub pulled: ImprintSet,
    /// Index sets `𝐇` (over the `against` languages) with `(L, 𝐇)` not
    /// coverable.
    pub noncoverable_subsets: Vec<Vec<usize>>,
    pub stats: SatStats,
}

/// All index sets `H ⊆ {0..n}` lying under some generator that contains
/// `target`, renumbered to skip `target`.
fn subsets_under(pulled: &ImprintSet, languages: usize, target: Option<usize>) -> Vec<Vec<usize>> {
    let mut out: HashSet<Vec<usize>> = HashSet::new();
    for g in pulled.generators() {
        let bits = Semiring::bits_of(g);
        if let Some(t) = target {
            if !bits.contains(&t) {
                continue;
            }
        }
        let rest: Vec<usize> = bits.into_iter().filter(|&b| Some(b) != target).collect();
        for m in 0u64..1 << rest.len() {
            let h: Vec<usize> = rest
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, &b)| match target {
                    Some(t) if b > t => b - 1,
                    _ => b,
                })
                .collect();
            out.insert(h);
        }
    }
    let _ = languages;
    let mut v: Vec<Vec<usize>> = out.into_iter().collect();
    v.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    v
}

/// Universal route. `target` is the flag index of `L` when the extension was
/// built from `{L} ∪ 𝐋`, and `None` for universal covering of `𝐋`.
pub fn decide_universal_covering(
    ext: &Extension,
    class: ClassId,
    target: Option<usize>,
    max_elements: usize,
) -> Result<(ImprintSet, Decision)> {
    let (imprint, stats) = saturate_universal(&ext.tau, class, max_elements)?;
    let coverable = !imprint.generators().iter().any(|g| ext.is_marked(g));
    let pulled = ext.pullback(&imprint);
    let noncoverable_subsets = subsets_under(&pulled, ext.languages, target);
    Ok((
        imprint,
        Decision {
            coverable,
            pulled,
            noncoverable_subsets,
            stats,
        },
    ))
}

/// Pointed route: `alpha` recognizes `L` with accepting set `accepting`,
/// `ext` is built from `𝐋` alone.
pub fn decide_pointed_covering(
    alpha: &MonoidMorphism,
    accepting: &[bool],
    ext: &Extension,
    class: ClassId,
    max_elements: usize,
) -> Result<(PointedImprintSet, Decision)> {
    let (p, stats) = saturate_pointed(alpha, &ext.tau, class, max_elements)?;
    let coverable = !p
        .generators()
        .any(|(m, g)| accepting[m] && ext.is_marked(g));
    let pulled = ext.pullback(&p.union_over(accepting));
    let noncoverable_subsets = subsets_under(&pulled, ext.languages, None);
    Ok((
        p,
        Decision {
            coverable,
            pulled,
            noncoverable_subsets,
            stats,
        },
    ))
}

/// Post-hoc checks of the imprint invariants: antichain representation,
/// `1_R` and `itriv(ρ)` included, closure under multiplication.
pub fn check_universal(s: &ImprintSet, rho: &RatingMap, cap: usize) -> Result<Vec<String>> {
    let r = rho.semiring();
    let mut out = Vec::new();
    let gens = s.generators();
    for (i, g) in gens.iter().enumerate() {
        if gens.iter().enumerate().any(|(j, h)| i != j && r.leq(g, h)) {
            out.push(format!("generator {} is not maximal", r.render(g)));
        }
    }
    if !s.contains(r.one()) {
        out.push("1_R is missing".into());
    }
    if let Some(x) = rho.word_images(cap)?.iter().find(|x| !s.contains(x)) {
        out.push(format!("trivial imprint element {} is missing", r.render(x)));
    }
    'outer: for g in gens {
        for h in gens {
            if !s.contains(&r.mul(g, h)) {
                out.push(format!("not closed under product at {}", r.render(g)));
                break 'outer;
            }
        }
    }
    Ok(out)
}

/// Pointed counterpart of [`check_universal`].
pub fn check_pointed(
    p: &PointedImprintSet,
    alpha: &MonoidMorphism,
    rho: &RatingMap,
    cap: usize,
) -> Result<Vec<String>> {
    let r = rho.semiring();
    let mut out = Vec::new();
    for m in 0..p.monoid_size() {
        let gens = p.slice(m).generators();
        for (i, g) in gens.iter().enumerate() {
            if gens.iter().enumerate().any(|(j, h)| i != j && r.leq(g, h)) {
                out.push(format!("generator ({m}, {}) is not maximal", r.render(g)));
            }
        }
    }
    if !p.contains(alpha.identity(), r.one()) {
        out.push("(1_M, 1_R) is missing".into());
    }
    if let Some((m, x)) = rho
        .pointed_word_images(alpha, cap)?
        .into_iter()
        .find(|(m, x)| !p.contains(*m, x))
    {
        out.push(format!("pointed trivial element ({m}, {}) is missing", r.render(&x)));
    }
    let gens: Vec<(usize, &Elem)> = p.generators().collect();
    'outer: for (m, g) in &gens {
        for (n, h) in &gens {
            if !p.contains(alpha.mul(*m, *n), &r.mul(g, h)) {
                out.push(format!("not closed under product at ({m}, {})", r.render(g)));
                break 'outer;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::alphabet::Alphabet;
    use crate::lang::regex::Regex;
    use crate::lang::transition_monoid;
    use crate::rating::{rm_from_morphism, rm_from_multiset, Language};

    fn nfa(text: &str, a: &Alphabet) -> Nfa {
        Regex::parse(text, a).unwrap().to_nfa(a)
    }

    fn multiset(texts: &[&str], a: &Alphabet) -> Extension {
        let langs: Vec<Language> = texts.iter().map(|t| Language::Nfa(nfa(t, a))).collect();
        rm_from_multiset(&langs).unwrap()
    }

    fn subsets(pulled: &ImprintSet) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = pulled
            .enumerate(1000)
            .unwrap()
            .iter()
            .map(|e| Semiring::bits_of(e))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn at_imprint_of_three_languages() {
        let a = Alphabet::parse("abc").unwrap();
        let ext = multiset(&["(ab)+", "b(ab)+", "c(ac)+"], &a);
        let pulled = ext.pullback(&at_imprint(&ext.tau, None).unwrap());
        assert_eq!(subsets(&pulled), vec![vec![], vec![0], vec![0, 1], vec![1], vec![2]]);
    }

    #[test]
    fn trivial_morphism_saturates_to_everything_reachable() {
        let a = Alphabet::parse("a").unwrap();
        let alpha = MonoidMorphism::trivial(&a);
        let ext = rm_from_morphism(&alpha, &[true]).unwrap();
        let top = ext.tau.eval(&Nfa::universal(&a)).unwrap();
        let aug = ext.augment().unwrap();
        for class in [ClassId::Bsigma1, ClassId::Fo] {
            let (s, _) = saturate_universal(&ext.tau, class, 1000).unwrap();
            assert_eq!(s, ImprintSet::down_closure(ext.tau.semiring(), [&top]));
        }
        let (s, _) = saturate_universal(&aug.tau, ClassId::Fo2, 1000).unwrap();
        assert!(!s.contains(&aug.tau.eval(&Nfa::universal(&a)).unwrap()));
        let proj = crate::algebra::SemiringMorphism::project(aug.tau.semiring(), 0).unwrap();
        let images: Vec<Elem> = s.generators().iter().map(|g| proj.apply(g)).collect();
        let back = ImprintSet::down_closure(ext.tau.semiring(), &images);
        assert_eq!(back, ImprintSet::down_closure(ext.tau.semiring(), [&top]));
        assert!(check_universal(&s, &aug.tau, 1000).unwrap().is_empty());
    }

    #[test]
    fn fo2_requires_alphabet_compatibility() {
        let a = Alphabet::parse("ab").unwrap();
        let ext = multiset(&["a+"], &a);
        assert!(matches!(
            saturate_universal(&ext.tau, ClassId::Fo2, 1000),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn bsigma1_rule_instances_present() {
        let a = Alphabet::parse("ab").unwrap();
        let ext = multiset(&["(ab)+", "b+"], &a);
        let (s, _) = saturate_universal(&ext.tau, ClassId::Bsigma1, 100_000).unwrap();
        let r = ext.tau.semiring();
        for mask in 0..4 {
            let e = ext.tau.eval(&Nfa::alphabet_exact(&a, mask)).unwrap();
            assert!(s.contains(&r.idempotent_power(&e)));
        }
        assert!(check_universal(&s, &ext.tau, 100_000).unwrap().is_empty());
    }

    #[test]
    fn pairwise_and_joint_instances_under_at() {
        let a = Alphabet::parse("abc").unwrap();
        let with_both = multiset(&["a+|b+", "b+|c+", "c+|a+"], &a);
        let (_, d) = decide_universal_covering(&with_both, ClassId::At, Some(0), 1000).unwrap();
        assert!(d.coverable);
        assert!(d.noncoverable_subsets.contains(&vec![0]));
        assert!(d.noncoverable_subsets.contains(&vec![1]));
        let single = multiset(&["a+|b+", "b+|c+"], &a);
        let (_, d) = decide_universal_covering(&single, ClassId::At, Some(0), 1000).unwrap();
        assert!(!d.coverable);
    }

    #[test]
    fn sigma1_pointed_decision() {
        let a = Alphabet::parse("ab").unwrap();
        let rec = transition_monoid(&nfa("a+", &a)).unwrap();
        let ext = multiset(&["b+"], &a);
        let (p, d) =
            decide_pointed_covering(&rec.morphism, &rec.accepting, &ext, ClassId::Sigma1, 10_000)
                .unwrap();
        assert!(d.coverable);
        assert!(p.contains(rec.morphism.identity(), &ext.tau.eval(&Nfa::universal(&a)).unwrap()));
        assert!(check_pointed(&p, &rec.morphism, &ext.tau, 10_000).unwrap().is_empty());
        let ext = multiset(&["(a|b)*a(a|b)*"], &a);
        let (_, d) =
            decide_pointed_covering(&rec.morphism, &rec.accepting, &ext, ClassId::Sigma1, 10_000)
                .unwrap();
        assert!(!d.coverable);
    }

    #[test]
    fn sigma2_within_sigma1() {
        let a = Alphabet::parse("ab").unwrap();
        let rec = transition_monoid(&nfa("(ab)*", &a)).unwrap();
        let ext = multiset(&["a(a|b)*b", "b+"], &a).augment().unwrap();
        let (p1, _) = saturate_pointed(&rec.morphism, &ext.tau, ClassId::Sigma1, 100_000).unwrap();
        let (p2, _) = saturate_pointed(&rec.morphism, &ext.tau, ClassId::Sigma2, 100_000).unwrap();
        assert!(p2.is_subset(&p1));
        assert!(check_pointed(&p2, &rec.morphism, &ext.tau, 100_000).unwrap().is_empty());
    }

    #[test]
    fn class_names_round_trip() {
        for c in ClassId::ALL {
            assert_eq!(c.name().parse::<ClassId>().unwrap(), c);
        }
        assert!("bogus".parse::<ClassId>().is_err());
    }
}
