//! Templates and per-word witnesses for piecewise testable covers.

use crate::lang::alphabet::{Alphabet, Symbol, Word};
use crate::lang::nfa::Nfa;
use crate::lang::regex::Regex;

/// A template unit: a single letter, or a triple `(b, B, c)` with `b, c ∈ B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Unit {
    Letter(Symbol),
    Triple { b: Symbol, set: u32, c: Symbol },
}

impl Unit {
    /// `K_{n,t}`: `{a}`, or `B* b (B^⊛)^n c B*`.
    pub fn language(&self, n: usize, alphabet: &Alphabet) -> Regex {
        match *self {
            Unit::Letter(a) => Regex::Letter(a),
            Unit::Triple { b, set, c } => {
                let star = Regex::star_of(set, alphabet);
                let exact = Regex::exact_alphabet(set, alphabet);
                let mut parts = vec![star.clone(), Regex::Letter(b)];
                parts.extend(std::iter::repeat_n(exact, n));
                parts.push(Regex::Letter(c));
                parts.push(star);
                Regex::concat_all(parts)
            }
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        match *self {
            Unit::Letter(a) => alphabet.char_of(a).to_string(),
            Unit::Triple { b, set, c } => format!(
                "({}, {}, {})",
                alphabet.char_of(b),
                alphabet.render_mask(set),
                alphabet.char_of(c)
            ),
        }
    }
}

/// A sequence of units.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Template {
    pub units: Vec<Unit>,
}

impl Template {
    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    /// Checks the three adjacency conditions on every consecutive pair.
    pub fn is_unambiguous(&self) -> bool {
        self.units.windows(2).all(|w| match (w[0], w[1]) {
            (Unit::Letter(_), Unit::Letter(_)) => true,
            (Unit::Letter(a), Unit::Triple { set, .. })
            | (Unit::Triple { set, .. }, Unit::Letter(a)) => set & (1 << a) == 0,
            (Unit::Triple { set: s1, c, .. }, Unit::Triple { b, set: s2, .. }) => {
                s2 & (1 << c) == 0 && s1 & (1 << b) == 0
            }
        })
    }

    /// `K_{n,T}`, with `K_{n,ε} = {ε}`.
    pub fn language(&self, n: usize, alphabet: &Alphabet) -> Regex {
        Regex::concat_all(self.units.iter().map(|u| u.language(n, alphabet)))
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        if self.units.is_empty() {
            return "ε".into();
        }
        let parts: Vec<String> = self.units.iter().map(|u| u.render(alphabet)).collect();
        parts.join(" ")
    }
}

/// A template together with the factorization of the word it was built for.
#[derive(Clone, Debug)]
pub struct Witness {
    pub template: Template,
    /// `factors[i]` is the factor matched by unit `i`.
    pub factors: Vec<Word>,
    pub regex: Regex,
    /// `w ∈ K_{n,T}`, checked on the automaton of the regex.
    pub member: bool,
}

impl Witness {
    /// `(n+2)^{|alph(w)|} − 1`.
    pub fn length_bound(w: &[Symbol], n: usize) -> u128 {
        (n as u128 + 2).pow(Alphabet::content(w).count_ones()) - 1
    }
}

/// Number of consecutive factors with alphabet exactly `set` that `w` can be
/// cut into (leftovers joined to the last one).
fn exact_factor_count(w: &[Symbol], set: u32) -> usize {
    if Alphabet::content(w) & !set != 0 {
        return 0;
    }
    let mut count = 0;
    let mut seen = 0u32;
    for &s in w {
        seen |= 1 << s;
        if seen == set {
            count += 1;
            seen = 0;
        }
    }
    count
}

/// Whether `w ∈ P_{n,t}`.
pub fn in_unit_pattern(w: &[Symbol], unit: Unit, n: usize) -> bool {
    match unit {
        Unit::Letter(a) => w == [a],
        Unit::Triple { set, .. } => exact_factor_count(w, set) >= n + 2,
    }
}

/// Builds units for `w` by splitting it into shortest factors whose
/// alphabet is `alph(w)`.
fn build(w: &[Symbol], n: usize, out: &mut Vec<(Unit, Word)>) {
    if w.is_empty() {
        return;
    }
    let set = Alphabet::content(w);
    let mut cuts = Vec::new();
    let mut seen = 0u32;
    let mut start = 0;
    for (i, &s) in w.iter().enumerate() {
        seen |= 1 << s;
        if seen == set {
            cuts.push((start, i));
            start = i + 1;
            seen = 0;
        }
    }
    if cuts.len() >= n + 2 {
        let b = w[0];
        out.push((Unit::Triple { b, set, c: b }, w.to_vec()));
        return;
    }
    for &(from, last) in &cuts {
        build(&w[from..last], n, out);
        out.push((Unit::Letter(w[last]), vec![w[last]]));
    }
    build(&w[start..], n, out);
}

fn merge_pair(
    (u, x): &(Unit, Word),
    (v, y): &(Unit, Word),
) -> Option<(Unit, Word)> {
    let joined = || [x.as_slice(), y.as_slice()].concat();
    match (*u, *v) {
        (Unit::Letter(_), Unit::Letter(_)) => None,
        (Unit::Letter(a), t @ Unit::Triple { set, .. })
        | (t @ Unit::Triple { set, .. }, Unit::Letter(a)) => {
            (set & (1 << a) != 0).then(|| (t, joined()))
        }
        (Unit::Triple { set: s1, .. }, Unit::Triple { set: s2, .. }) => {
            if s1 & !s2 == 0 {
                Some((*v, joined()))
            } else if s2 & !s1 == 0 {
                Some((*u, joined()))
            } else {
                None
            }
        }
    }
}

/// Picks `b` and `c` in every triple so that neighbouring triples with
/// incomparable alphabets are unambiguous.
fn choose_ends(units: &mut [(Unit, Word)]) {
    let sets: Vec<Option<u32>> = units
        .iter()
        .map(|(u, _)| match u {
            Unit::Triple { set, .. } => Some(*set),
            Unit::Letter(_) => None,
        })
        .collect();
    let lowest = |m: u32| m.trailing_zeros() as Symbol;
    for i in 0..units.len() {
        let Some(set) = sets[i] else { continue };
        let prev = i.checked_sub(1).and_then(|j| sets[j]).unwrap_or(0);
        let next = sets.get(i + 1).copied().flatten().unwrap_or(0);
        let b = lowest(if set & !prev != 0 { set & !prev } else { set });
        let c = lowest(if set & !next != 0 { set & !next } else { set });
        units[i].0 = Unit::Triple { b, set, c };
    }
}

/// An unambiguous template `T` with `w ∈ P_{n,T} ⊆ K_{n,T}` and
/// `|T| ≤ (n+2)^{|alph(w)|} − 1`.
pub fn bsigma1_template_witness(w: &[Symbol], n: usize, alphabet: &Alphabet) -> Witness {
    let mut units = Vec::new();
    build(w, n, &mut units);
    // Merging neighbours keeps every factor inside its pattern and only
    // shortens the template.
    loop {
        let pos = (0..units.len().saturating_sub(1))
            .find_map(|i| merge_pair(&units[i], &units[i + 1]).map(|m| (i, m)));
        match pos {
            Some((i, merged)) => {
                units[i] = merged;
                units.remove(i + 1);
            }
            None => break,
        }
    }
    choose_ends(&mut units);
    let template = Template {
        units: units.iter().map(|(u, _)| *u).collect(),
    };
    let regex = template.language(n, alphabet);
    let member = regex.to_nfa(alphabet).accepts(w);
    Witness {
        template,
        factors: units.into_iter().map(|(_, f)| f).collect(),
        regex,
        member,
    }
}

/// Automaton for `K_{n,T}`.
pub fn template_nfa(t: &Template, n: usize, alphabet: &Alphabet) -> Nfa {
    t.language(n, alphabet).to_nfa(alphabet)
}
