use crate::algebra::semiring::{Elem, Semiring};
use crate::error::{Error, Result};

/// An additive morphism between finite semirings, given by a structural rule.
#[derive(Clone, Debug)]
pub struct SemiringMorphism {
    source: Semiring,
    target: Semiring,
    rule: Rule,
}

/// Raises target flag `out_bit` when the selected part of the source element
/// meets `mask`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hit {
    pub component: Option<usize>,
    pub mask: Elem,
    pub out_bit: usize,
}

#[derive(Clone, Debug)]
pub enum Rule {
    Identity,
    /// Projection onto a component of a product.
    Project(usize),
    /// Into a flag semiring: one flag per hit test.
    Hits(Vec<Hit>),
    /// Explicit image table, for explicit-table sources.
    Table(Vec<Elem>),
    /// `second ∘ first`.
    Compose(Box<SemiringMorphism>, Box<SemiringMorphism>),
}

impl SemiringMorphism {
    pub fn identity(r: &Semiring) -> Self {
        SemiringMorphism {
            source: r.clone(),
            target: r.clone(),
            rule: Rule::Identity,
        }
    }

    pub fn project(source: &Semiring, i: usize) -> Result<Self> {
        let parts = source
            .parts()
            .ok_or_else(|| Error::invalid("projection needs a product semiring"))?;
        let target = parts
            .get(i)
            .ok_or_else(|| Error::invalid(format!("no component {i}")))?
            .0
            .clone();
        Ok(SemiringMorphism {
            source: source.clone(),
            target,
            rule: Rule::Project(i),
        })
    }

    pub fn hits(source: &Semiring, target: &Semiring, hits: Vec<Hit>) -> Self {
        SemiringMorphism {
            source: source.clone(),
            target: target.clone(),
            rule: Rule::Hits(hits),
        }
    }

    pub fn table(source: &Semiring, target: &Semiring, images: Vec<Elem>) -> Self {
        SemiringMorphism {
            source: source.clone(),
            target: target.clone(),
            rule: Rule::Table(images),
        }
    }

    /// `then ∘ self`.
    pub fn then(self, then: SemiringMorphism) -> Self {
        SemiringMorphism {
            source: self.source.clone(),
            target: then.target.clone(),
            rule: Rule::Compose(Box::new(self), Box::new(then)),
        }
    }

    pub fn source(&self) -> &Semiring {
        &self.source
    }

    pub fn target(&self) -> &Semiring {
        &self.target
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn apply(&self, x: &[u64]) -> Elem {
        match &self.rule {
            Rule::Identity => x.into(),
            Rule::Project(i) => self.source.component(x, *i).into(),
            Rule::Hits(hits) => {
                let bits = hits.iter().filter_map(|h| {
                    let part = match h.component {
                        Some(i) => self.source.component(x, i),
                        None => x,
                    };
                    part.iter()
                        .zip(&h.mask)
                        .any(|(a, b)| a & b != 0)
                        .then_some(h.out_bit)
                });
                self.target.with_bits(bits)
            }
            Rule::Table(images) => images[x[0] as usize].clone(),
            Rule::Compose(first, second) => second.apply(&first.apply(x)),
        }
    }

    /// Checks additivity and zero preservation on the given elements.
    pub fn validate_on(&self, elems: &[Elem]) -> Vec<String> {
        let mut out = Vec::new();
        let (s, t) = (&self.source, &self.target);
        if self.apply(s.zero()) != *t.zero() {
            out.push("zero is not preserved".to_string());
        }
        'outer: for x in elems {
            for y in elems {
                if self.apply(&s.add(x, y)) != t.add(&self.apply(x), &self.apply(y)) {
                    out.push(format!(
                        "addition not preserved at ({}, {})",
                        s.render(x),
                        s.render(y)
                    ));
                    break 'outer;
                }
            }
        }
        out
    }
}
