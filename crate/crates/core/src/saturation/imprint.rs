use std::collections::HashSet;

use crate::algebra::{Elem, Semiring};
use crate::error::Result;

/// A downward-closed subset of a semiring, stored as the antichain of its
/// maximal elements. The antichain is kept sorted, so two sets are equal
/// exactly when their generator lists are.
#[derive(Clone, Debug)]
pub struct ImprintSet {
    semiring: Semiring,
    gens: Vec<Elem>,
}

impl ImprintSet {
    pub fn empty(r: &Semiring) -> Self {
        ImprintSet {
            semiring: r.clone(),
            gens: Vec::new(),
        }
    }

    /// `↓X`.
    pub fn down_closure<'a>(r: &Semiring, xs: impl IntoIterator<Item = &'a Elem>) -> Self {
        let mut s = ImprintSet::empty(r);
        for x in xs {
            s.insert(x);
        }
        s.normalize();
        s
    }

    pub fn semiring(&self) -> &Semiring {
        &self.semiring
    }

    /// The maximal elements.
    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.gens.iter().any(|g| self.semiring.leq(x, g))
    }

    /// Adds `↓x`; returns whether the set grew.
    pub fn insert(&mut self, x: &[u64]) -> bool {
        if self.contains(x) {
            return false;
        }
        let r = &self.semiring;
        self.gens.retain(|g| !r.leq(g, x));
        self.gens.push(x.into());
        true
    }

    /// Sorts the antichain into its canonical order.
    pub fn normalize(&mut self) {
        self.gens.sort_unstable();
    }

    pub fn is_subset(&self, other: &ImprintSet) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Every member, up to `cap` of them.
    pub fn enumerate(&self, cap: usize) -> Result<Vec<Elem>> {
        let mut seen: HashSet<Elem> = HashSet::new();
        for g in &self.gens {
            for y in self.semiring.below(g, cap)? {
                seen.insert(y);
                if seen.len() > cap {
                    return Err(crate::Error::cap("imprint enumeration", cap));
                }
            }
        }
        let mut out: Vec<Elem> = seen.into_iter().collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn len_generators(&self) -> usize {
        self.gens.len()
    }

    pub fn render(&self) -> String {
        let items: Vec<String> = self.gens.iter().map(|g| self.semiring.render(g)).collect();
        format!("↓{{{}}}", items.join(", "))
    }
}

impl PartialEq for ImprintSet {
    fn eq(&self, other: &Self) -> bool {
        let mut a = self.gens.clone();
        let mut b = other.gens.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

impl Eq for ImprintSet {}

/// A subset of `M × R`, downward closed in the `R` component: one
/// [`ImprintSet`] per monoid element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointedImprintSet {
    slices: Vec<ImprintSet>,
}

impl PointedImprintSet {
    pub fn empty(monoid_size: usize, r: &Semiring) -> Self {
        PointedImprintSet {
            slices: vec![ImprintSet::empty(r); monoid_size],
        }
    }

    pub fn monoid_size(&self) -> usize {
        self.slices.len()
    }

    pub fn semiring(&self) -> &Semiring {
        self.slices[0].semiring()
    }

    /// `{r : (m, r) ∈ P}`.
    pub fn slice(&self, m: usize) -> &ImprintSet {
        &self.slices[m]
    }

    pub fn contains(&self, m: usize, x: &[u64]) -> bool {
        self.slices[m].contains(x)
    }

    pub fn insert(&mut self, m: usize, x: &[u64]) -> bool {
        self.slices[m].insert(x)
    }

    pub fn normalize(&mut self) {
        for s in &mut self.slices {
            s.normalize();
        }
    }

    /// All generator pairs `(m, g)`.
    pub fn generators(&self) -> impl Iterator<Item = (usize, &Elem)> + '_ {
        self.slices
            .iter()
            .enumerate()
            .flat_map(|(m, s)| s.generators().iter().map(move |g| (m, g)))
    }

    pub fn is_subset(&self, other: &PointedImprintSet) -> bool {
        self.slices
            .iter()
            .zip(&other.slices)
            .all(|(a, b)| a.is_subset(b))
    }

    /// `⋃_{m ∈ F} P(m)`.
    pub fn union_over(&self, accepting: &[bool]) -> ImprintSet {
        let mut out = ImprintSet::empty(self.semiring());
        for (m, s) in self.slices.iter().enumerate() {
            if accepting[m] {
                for g in s.generators() {
                    out.insert(g);
                }
            }
        }
        out.normalize();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn antichain_keeps_maximal_elements() {
        let r = Semiring::relation(2).unwrap();
        let mut s = ImprintSet::empty(&r);
        assert!(s.insert(&r.with_bits([0])));
        assert!(s.insert(&r.with_bits([1])));
        assert!(!s.insert(&r.with_bits([0])));
        assert!(s.insert(&r.with_bits([0, 1])));
        assert_eq!(s.generators().len(), 1);
        assert!(s.contains(r.zero()));
        assert_eq!(s.enumerate(100).unwrap().len(), 4);
        let t = ImprintSet::down_closure(&r, [&r.with_bits([1, 0])]);
        assert_eq!(s, t);
        assert!(ImprintSet::empty(&r).is_subset(&s));
    }
}
