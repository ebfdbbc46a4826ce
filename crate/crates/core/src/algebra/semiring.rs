use std::fmt::Write as _;
use std::sync::Arc;

use rand::Rng;
use serde::Deserialize;
use smallvec::{smallvec, SmallVec};

use crate::error::{Error, Result};
use crate::lang::monoid::MonoidMorphism;

/// Encoded semiring element: a fixed-width bit vector whose layout depends on
/// the semiring kind. Encodings are canonical, so equality of encodings is
/// equality of elements.
pub type Elem = SmallVec<[u64; 4]>;

pub const MAX_POWERSET_MONOID: usize = 20;
pub const MAX_RELATION_STATES: usize = 6;
pub const MAX_ALPHABET_SETS: usize = 8;
pub const MAX_FLAGS: usize = 64;

/// A finite idempotent semiring.
#[derive(Clone)]
pub struct Semiring(Arc<Inner>);

struct Inner {
    kind: Kind,
    words: usize,
    zero: Elem,
    one: Elem,
}

#[derive(Clone)]
pub enum Kind {
    /// Explicit tables; the element is its index.
    Table {
        size: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
    },
    /// Subsets of a finite monoid, with the pointwise product.
    Powerset { size: usize, mul: Vec<u32> },
    /// Binary relations over `q` states, with composition.
    Relation(usize),
    /// Sets of sub-alphabets of an `l`-letter alphabet, with pairwise union.
    AlphabetSets(usize),
    /// Subsets of `n` flags; product is intersection. Used as the target
    /// `2^𝐋`, where only the additive structure matters.
    Flags(usize),
    /// Componentwise product; each part is stored at a word offset.
    Product(Vec<(Semiring, usize)>),
}

impl std::fmt::Debug for Semiring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Semiring({})", self.describe())
    }
}

impl PartialEq for Semiring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.describe() == other.describe()
    }
}

#[derive(Deserialize)]
struct TableJson {
    size: usize,
    add: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    zero: usize,
    one: usize,
}

fn bit_words(bits: usize) -> usize {
    bits.div_ceil(64).max(1)
}

fn get_bit(x: &[u64], i: usize) -> bool {
    x[i / 64] >> (i % 64) & 1 == 1
}

fn set_bit(x: &mut [u64], i: usize) {
    x[i / 64] |= 1 << (i % 64);
}

fn ones(x: &[u64]) -> impl Iterator<Item = usize> + '_ {
    x.iter().enumerate().flat_map(|(w, &word)| {
        let mut rest = word;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(w * 64 + b)
            }
        })
    })
}

impl Semiring {
    fn build(kind: Kind) -> Semiring {
        let words = match &kind {
            Kind::Table { .. } | Kind::Powerset { .. } | Kind::Relation(_) | Kind::Flags(_) => 1,
            Kind::AlphabetSets(l) => bit_words(1 << l),
            Kind::Product(parts) => parts.iter().map(|(p, _)| p.words()).sum(),
        };
        let mut zero: Elem = smallvec![0; words];
        let mut one: Elem = smallvec![0; words];
        match &kind {
            Kind::Table { .. } => {}
            Kind::Powerset { .. } => {}
            Kind::Relation(q) => {
                for i in 0..*q {
                    one[0] |= 1 << (i * q + i);
                }
            }
            Kind::AlphabetSets(_) => one[0] = 1,
            Kind::Flags(n) => one[0] = if *n == 64 { u64::MAX } else { (1 << n) - 1 },
            Kind::Product(parts) => {
                for (p, off) in parts {
                    zero[*off..*off + p.words()].copy_from_slice(p.zero());
                    one[*off..*off + p.words()].copy_from_slice(p.one());
                }
            }
        }
        Semiring(Arc::new(Inner { kind, words, zero, one }))
    }

    /// Explicit-table semiring; `add` and `mul` are indexed `[x][y]`.
    pub fn from_tables(
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    ) -> Result<Semiring> {
        let size = add.len();
        let square = |t: &Vec<Vec<usize>>| {
            t.len() == size && t.iter().all(|r| r.len() == size && r.iter().all(|&z| z < size))
        };
        if size == 0 || !square(&add) || !square(&mul) || zero >= size || one >= size {
            return Err(Error::invalid("semiring tables must be square with entries in range"));
        }
        let flat = |t: Vec<Vec<usize>>| t.into_iter().flatten().map(|z| z as u32).collect();
        let s = Semiring::build(Kind::Table {
            size,
            add: flat(add),
            mul: flat(mul),
        });
        // table elements are indices, so the neutral elements need patching
        let mut inner = Arc::try_unwrap(s.0).ok().expect("fresh semiring");
        inner.zero[0] = zero as u64;
        inner.one[0] = one as u64;
        Ok(Semiring(Arc::new(inner)))
    }

    /// Loads `{"size":n,"add":[[..]],"mul":[[..]],"zero":z,"one":o}`.
    pub fn from_table_json(text: &str) -> Result<Semiring> {
        let t: TableJson = serde_json::from_str(text)
            .map_err(|e| Error::invalid(format!("semiring JSON: {e}")))?;
        if t.add.len() != t.size {
            return Err(Error::invalid("size does not match the tables"));
        }
        Semiring::from_tables(t.add, t.mul, t.zero, t.one)
    }

    pub fn powerset(m: &MonoidMorphism) -> Result<Semiring> {
        let size = m.size();
        if size > MAX_POWERSET_MONOID {
            return Err(Error::cap("powerset semiring monoid size", MAX_POWERSET_MONOID));
        }
        let mut mul = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                mul.push(m.mul(x, y) as u32);
            }
        }
        let s = Semiring::build(Kind::Powerset { size, mul });
        let mut inner = Arc::try_unwrap(s.0).ok().expect("fresh semiring");
        inner.one[0] = 1 << m.identity();
        Ok(Semiring(Arc::new(inner)))
    }

    pub fn relation(q: usize) -> Result<Semiring> {
        if q > MAX_RELATION_STATES {
            return Err(Error::cap("relation semiring states", MAX_RELATION_STATES));
        }
        Ok(Semiring::build(Kind::Relation(q)))
    }

    pub fn alphabet_sets(letters: usize) -> Result<Semiring> {
        if letters > MAX_ALPHABET_SETS {
            return Err(Error::cap("alphabet-set semiring letters", MAX_ALPHABET_SETS));
        }
        Ok(Semiring::build(Kind::AlphabetSets(letters)))
    }

    pub fn flags(n: usize) -> Result<Semiring> {
        if n > MAX_FLAGS {
            return Err(Error::cap("flag semiring size", MAX_FLAGS));
        }
        Ok(Semiring::build(Kind::Flags(n)))
    }

    pub fn product(parts: Vec<Semiring>) -> Result<Semiring> {
        if parts.is_empty() {
            return Err(Error::invalid("product of no semirings"));
        }
        let mut off = 0;
        let parts = parts
            .into_iter()
            .map(|p| {
                let here = off;
                off += p.words();
                (p, here)
            })
            .collect();
        Ok(Semiring::build(Kind::Product(parts)))
    }

    pub fn kind(&self) -> &Kind {
        &self.0.kind
    }

    pub fn words(&self) -> usize {
        self.0.words
    }

    pub fn zero(&self) -> &Elem {
        &self.0.zero
    }

    pub fn one(&self) -> &Elem {
        &self.0.one
    }

    /// Product parts, or `None` for other kinds.
    pub fn parts(&self) -> Option<&[(Semiring, usize)]> {
        match self.kind() {
            Kind::Product(parts) => Some(parts),
            _ => None,
        }
    }

    /// The `i`-th component of a product element.
    pub fn component<'a>(&self, x: &'a [u64], i: usize) -> &'a [u64] {
        let (p, off) = &self.parts().expect("product semiring")[i];
        &x[*off..*off + p.words()]
    }

    /// Number of bits for bit-vector kinds.
    fn bits(&self) -> Option<usize> {
        match self.kind() {
            Kind::Powerset { size, .. } => Some(*size),
            Kind::Relation(q) => Some(q * q),
            Kind::AlphabetSets(l) => Some(1 << l),
            Kind::Flags(n) => Some(*n),
            _ => None,
        }
    }

    /// `log2 |R|`.
    pub fn size_log2(&self) -> f64 {
        match self.kind() {
            Kind::Table { size, .. } => (*size as f64).log2(),
            Kind::Product(parts) => parts.iter().map(|(p, _)| p.size_log2()).sum(),
            _ => self.bits().unwrap() as f64,
        }
    }

    /// `|R|` when it fits in a `u128`.
    pub fn size(&self) -> Option<u128> {
        match self.kind() {
            Kind::Table { size, .. } => Some(*size as u128),
            Kind::Product(parts) => parts
                .iter()
                .try_fold(1u128, |acc, (p, _)| acc.checked_mul(p.size()?)),
            _ => 1u128.checked_shl(self.bits().unwrap() as u32),
        }
    }

    pub fn describe(&self) -> String {
        match self.kind() {
            Kind::Table { size, .. } => format!("table({size})"),
            Kind::Powerset { size, .. } => format!("powerset(M, |M|={size})"),
            Kind::Relation(q) => format!("relations({q})"),
            Kind::AlphabetSets(l) => format!("alphabet-sets({l})"),
            Kind::Flags(n) => format!("flags({n})"),
            Kind::Product(parts) => {
                let inner: Vec<String> = parts.iter().map(|(p, _)| p.describe()).collect();
                format!("product[{}]", inner.join(", "))
            }
        }
    }

    fn add_raw(&self, x: &[u64], y: &[u64], out: &mut [u64]) {
        match self.kind() {
            Kind::Table { size, add, .. } => {
                out[0] = add[x[0] as usize * size + y[0] as usize] as u64;
            }
            Kind::Product(parts) => {
                for (p, off) in parts {
                    let r = *off..*off + p.words();
                    p.add_raw(&x[r.clone()], &y[r.clone()], &mut out[r]);
                }
            }
            _ => {
                for i in 0..out.len() {
                    out[i] = x[i] | y[i];
                }
            }
        }
    }

    fn mul_raw(&self, x: &[u64], y: &[u64], out: &mut [u64]) {
        match self.kind() {
            Kind::Table { size, mul, .. } => {
                out[0] = mul[x[0] as usize * size + y[0] as usize] as u64;
            }
            Kind::Powerset { size, mul } => {
                let mut acc = 0u64;
                for i in ones(x) {
                    for j in ones(y) {
                        acc |= 1 << mul[i * size + j];
                    }
                }
                out[0] = acc;
            }
            Kind::Relation(q) => {
                let q = *q;
                let row_mask = (1u64 << q) - 1;
                let row = |z: u64, i: usize| (z >> (i * q)) & row_mask;
                let mut acc = 0u64;
                for i in 0..q {
                    let mut r = 0u64;
                    let mut mid = row(x[0], i);
                    while mid != 0 {
                        let j = mid.trailing_zeros() as usize;
                        mid &= mid - 1;
                        r |= row(y[0], j);
                    }
                    acc |= r << (i * q);
                }
                out[0] = acc;
            }
            Kind::AlphabetSets(_) => {
                out.fill(0);
                let ys: SmallVec<[usize; 16]> = ones(y).collect();
                for b in ones(x) {
                    for &c in &ys {
                        set_bit(out, b | c);
                    }
                }
            }
            Kind::Flags(_) => out[0] = x[0] & y[0],
            Kind::Product(parts) => {
                for (p, off) in parts {
                    let r = *off..*off + p.words();
                    p.mul_raw(&x[r.clone()], &y[r.clone()], &mut out[r]);
                }
            }
        }
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Elem {
        let mut out: Elem = smallvec![0; self.words()];
        self.add_raw(x, y, &mut out);
        out
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Elem {
        let mut out: Elem = smallvec![0; self.words()];
        self.mul_raw(x, y, &mut out);
        out
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a Elem>) -> Elem {
        items
            .into_iter()
            .fold(self.zero().clone(), |acc, x| self.add(&acc, x))
    }

    pub fn product_of<'a>(&self, items: impl IntoIterator<Item = &'a Elem>) -> Elem {
        items
            .into_iter()
            .fold(self.one().clone(), |acc, x| self.mul(&acc, x))
    }

    /// The canonical order: `x ≤ y` iff `x + y = y`.
    pub fn leq(&self, x: &[u64], y: &[u64]) -> bool {
        match self.kind() {
            Kind::Table { .. } => self.add(x, y).as_slice() == y,
            Kind::Product(parts) => parts.iter().all(|(p, off)| {
                let r = *off..*off + p.words();
                p.leq(&x[r.clone()], &y[r])
            }),
            _ => x.iter().zip(y).all(|(a, b)| a & !b == 0),
        }
    }

    pub fn is_idempotent(&self, x: &[u64]) -> bool {
        self.mul(x, x).as_slice() == x
    }

    /// `x^ω`: walks the powers of `x` until one is idempotent.
    pub fn idempotent_power(&self, x: &[u64]) -> Elem {
        let mut p: Elem = x.into();
        loop {
            let sq = self.mul(&p, &p);
            if sq == p {
                return p;
            }
            p = self.mul(&p, x);
        }
    }

    pub fn pow(&self, x: &[u64], n: usize) -> Elem {
        let mut acc = self.one().clone();
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    /// Every element of `R`, up to `cap` of them.
    pub fn elements(&self, cap: usize) -> Result<Vec<Elem>> {
        let too_big = || Error::cap("semiring element enumeration", cap);
        match self.kind() {
            Kind::Table { size, .. } => {
                if *size > cap {
                    return Err(too_big());
                }
                Ok((0..*size as u64).map(|i| smallvec![i]).collect())
            }
            Kind::Product(parts) => {
                let mut acc: Vec<Elem> = vec![smallvec![0; self.words()]];
                for (p, off) in parts {
                    let sub = p.elements(cap)?;
                    if acc.len().saturating_mul(sub.len()) > cap {
                        return Err(too_big());
                    }
                    let mut next = Vec::with_capacity(acc.len() * sub.len());
                    for a in &acc {
                        for s in &sub {
                            let mut e = a.clone();
                            e[*off..*off + p.words()].copy_from_slice(s);
                            next.push(e);
                        }
                    }
                    acc = next;
                }
                Ok(acc)
            }
            _ => {
                let bits = self.bits().unwrap();
                if bits >= 63 || (1usize << bits) > cap {
                    return Err(too_big());
                }
                Ok((0..1u64 << bits).map(|v| {
                    let mut e: Elem = smallvec![0; self.words()];
                    e[0] = v;
                    e
                })
                .collect())
            }
        }
    }

    /// All `y ≤ x`, up to `cap` of them.
    pub fn below(&self, x: &[u64], cap: usize) -> Result<Vec<Elem>> {
        let too_big = || Error::cap("downset enumeration", cap);
        match self.kind() {
            Kind::Table { .. } => Ok(self
                .elements(cap)?
                .into_iter()
                .filter(|y| self.leq(y, x))
                .collect()),
            Kind::Product(parts) => {
                let mut acc: Vec<Elem> = vec![smallvec![0; self.words()]];
                for (p, off) in parts {
                    let r = *off..*off + p.words();
                    let sub = p.below(&x[r.clone()], cap)?;
                    if acc.len().saturating_mul(sub.len()) > cap {
                        return Err(too_big());
                    }
                    let mut next = Vec::with_capacity(acc.len() * sub.len());
                    for a in &acc {
                        for s in &sub {
                            let mut e = a.clone();
                            e[r.clone()].copy_from_slice(s);
                            next.push(e);
                        }
                    }
                    acc = next;
                }
                Ok(acc)
            }
            _ => {
                let bits: Vec<usize> = ones(x).collect();
                if bits.len() >= 63 || (1usize << bits.len()) > cap {
                    return Err(too_big());
                }
                Ok((0..1u64 << bits.len())
                    .map(|m| {
                        let mut e: Elem = smallvec![0; self.words()];
                        for (k, &b) in bits.iter().enumerate() {
                            if m >> k & 1 == 1 {
                                set_bit(&mut e, b);
                            }
                        }
                        e
                    })
                    .collect())
            }
        }
    }

    /// A uniformly random element.
    pub fn random<G: Rng>(&self, rng: &mut G) -> Elem {
        let mut e: Elem = smallvec![0; self.words()];
        match self.kind() {
            Kind::Table { size, .. } => e[0] = rng.gen_range(0..*size as u64),
            Kind::Product(parts) => {
                for (p, off) in parts {
                    let sub = p.random(rng);
                    e[*off..*off + p.words()].copy_from_slice(&sub);
                }
            }
            _ => {
                let bits = self.bits().unwrap();
                for (w, word) in e.iter_mut().enumerate() {
                    let live = bits.saturating_sub(w * 64).min(64);
                    *word = if live == 64 {
                        rng.gen()
                    } else {
                        rng.gen::<u64>() & ((1u64 << live) - 1)
                    };
                }
            }
        }
        e
    }

    /// Human-readable rendering.
    pub fn render(&self, x: &[u64]) -> String {
        match self.kind() {
            Kind::Table { .. } => format!("#{}", x[0]),
            Kind::Relation(q) => {
                let pairs: Vec<String> =
                    ones(x).map(|b| format!("({},{})", b / q, b % q)).collect();
                format!("{{{}}}", pairs.join(","))
            }
            Kind::AlphabetSets(l) => {
                let sets: Vec<String> = ones(x)
                    .map(|b| {
                        let mut s = String::from("{");
                        for i in 0..*l {
                            if b >> i & 1 == 1 {
                                let _ = write!(s, "{}", i);
                            }
                        }
                        s.push('}');
                        s
                    })
                    .collect();
                format!("{{{}}}", sets.join(","))
            }
            Kind::Product(parts) => {
                let inner: Vec<String> = parts
                    .iter()
                    .map(|(p, off)| p.render(&x[*off..*off + p.words()]))
                    .collect();
                format!("({})", inner.join(", "))
            }
            _ => {
                let items: Vec<String> = ones(x).map(|b| b.to_string()).collect();
                format!("{{{}}}", items.join(","))
            }
        }
    }

    /// Indices of set bits, for bit-vector kinds.
    pub fn bits_of(x: &[u64]) -> Vec<usize> {
        ones(x).collect()
    }

    pub fn has_bit(x: &[u64], i: usize) -> bool {
        get_bit(x, i)
    }

    pub fn with_bits(&self, bits: impl IntoIterator<Item = usize>) -> Elem {
        let mut e: Elem = smallvec![0; self.words()];
        for b in bits {
            set_bit(&mut e, b);
        }
        e
    }

    /// Checks the idempotent semiring axioms: exhaustively when `|R| ≤ 64`,
    /// otherwise on `samples` random triples drawn with `rng`.
    pub fn validate<G: Rng>(&self, rng: &mut G, samples: usize) -> Vec<String> {
        let exhaustive = self.elements(64).ok();
        let mut out = Vec::new();
        let mut check = |name: &str, ok: bool, x: &Elem, y: &Elem, z: &Elem| {
            if !ok && !out.iter().any(|m: &String| m.starts_with(name)) {
                out.push(format!(
                    "{name} fails at ({}, {}, {})",
                    self.render(x),
                    self.render(y),
                    self.render(z)
                ));
            }
        };
        let mut triple = |x: &Elem, y: &Elem, z: &Elem| {
            let (zero, one) = (self.zero(), self.one());
            check("add commutative", self.add(x, y) == self.add(y, x), x, y, z);
            check("add idempotent", self.add(x, x) == *x, x, y, z);
            check("add zero", self.add(x, zero) == *x, x, y, z);
            check(
                "add associative",
                self.add(&self.add(x, y), z) == self.add(x, &self.add(y, z)),
                x, y, z,
            );
            check(
                "mul associative",
                self.mul(&self.mul(x, y), z) == self.mul(x, &self.mul(y, z)),
                x, y, z,
            );
            check("mul one", self.mul(x, one) == *x && self.mul(one, x) == *x, x, y, z);
            check(
                "zero annihilates",
                self.mul(x, zero) == *zero && self.mul(zero, x) == *zero,
                x, y, z,
            );
            check(
                "left distributive",
                self.mul(x, &self.add(y, z)) == self.add(&self.mul(x, y), &self.mul(x, z)),
                x, y, z,
            );
            check(
                "right distributive",
                self.mul(&self.add(x, y), z) == self.add(&self.mul(x, z), &self.mul(y, z)),
                x, y, z,
            );
        };
        match exhaustive {
            Some(all) => {
                for x in &all {
                    for y in &all {
                        for z in &all {
                            triple(x, y, z);
                        }
                    }
                }
            }
            None => {
                for _ in 0..samples {
                    let (x, y, z) = (self.random(rng), self.random(rng), self.random(rng));
                    triple(&x, &y, &z);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::alphabet::Alphabet;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn z2() -> MonoidMorphism {
        MonoidMorphism::from_table(
            Alphabet::parse("a").unwrap(),
            0,
            vec![vec![0, 1], vec![1, 0]],
            vec![1],
        )
        .unwrap()
    }

    #[test]
    fn powerset_of_cyclic_group() {
        let r = Semiring::powerset(&z2()).unwrap();
        let g = r.with_bits([1]);
        let both = r.with_bits([0, 1]);
        assert_eq!(r.mul(&g, &g), r.with_bits([0]));
        assert_eq!(r.mul(&both, &g), both);
        assert_eq!(r.mul(r.zero(), &both), *r.zero());
        assert_eq!(r.mul(r.one(), &g), g);
        assert_eq!(r.idempotent_power(&g), r.with_bits([0]));
        assert!(r.leq(&g, &both) && !r.leq(&both, &g));
    }

    #[test]
    fn relation_composition() {
        let r = Semiring::relation(2).unwrap();
        let s = r.with_bits([1]); // (0,1)
        let t = r.with_bits([2]); // (1,0)
        assert_eq!(r.mul(&s, &t), r.with_bits([0]));
        assert_eq!(r.mul(r.one(), &s), s);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(r.validate(&mut rng, 0).is_empty());
    }

    #[test]
    fn alphabet_sets() {
        let r = Semiring::alphabet_sets(2).unwrap();
        let a = r.with_bits([0b01]);
        let b = r.with_bits([0b10]);
        assert_eq!(r.mul(&a, &b), r.with_bits([0b11]));
        assert_eq!(r.mul(r.one(), &a), a);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        assert!(r.validate(&mut rng, 0).is_empty());
        let big = Semiring::alphabet_sets(8).unwrap();
        assert_eq!(big.words(), 4);
        assert!(big.validate(&mut rng, 300).is_empty());
    }

    #[test]
    fn products_are_componentwise() {
        let p = Semiring::powerset(&z2()).unwrap();
        let prod = Semiring::product(vec![p.clone(), p.clone()]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(prod.validate(&mut rng, 0).is_empty());
        let x = prod.with_bits([0]);
        let y = prod.with_bits([0, 64 + 1]);
        assert!(prod.leq(&x, &y) && !prod.leq(&y, &x));
        assert_eq!(prod.size(), Some(16));
        assert_eq!(prod.below(&y, 100).unwrap().len(), 4);
        let single = Semiring::product(vec![p.clone()]).unwrap();
        assert_eq!(single.elements(100).unwrap(), p.elements(100).unwrap());
    }

    #[test]
    fn caps_are_typed() {
        assert!(Semiring::relation(7).unwrap_err().is_resource());
        assert!(Semiring::alphabet_sets(9).unwrap_err().is_resource());
    }

    #[test]
    fn table_json_and_broken_axioms() {
        let bool_sr = r#"{"size":2,"add":[[0,1],[1,1]],"mul":[[0,0],[0,1]],"zero":0,"one":1}"#;
        let r = Semiring::from_table_json(bool_sr).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        assert!(r.validate(&mut rng, 0).is_empty());
        assert!(r.leq(r.zero(), r.one()));
        let broken = r#"{"size":2,"add":[[0,1],[1,0]],"mul":[[0,0],[0,1]],"zero":0,"one":1}"#;
        let v = Semiring::from_table_json(broken).unwrap().validate(&mut rng, 0);
        assert!(v.iter().any(|m| m.starts_with("add idempotent")));
    }

    #[test]
    fn omega_is_idempotent() {
        let r = Semiring::relation(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let x = r.random(&mut rng);
            let e = r.idempotent_power(&x);
            assert_eq!(r.mul(&e, &e), e);
        }
    }
}
