//! Regular expressions over a declared alphabet.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := term ('|' term)*
//! term   := factor+
//! factor := atom ('*' | '+')?
//! atom   := symbol | '(' expr ')' | '%eps' | '%empty'
//! ```
//!
//! Postfix operators may be stacked (`a**`), which the grammar above reads as
//! nested factors.

use std::fmt;

use crate::error::{Error, Result};
use crate::lang::alphabet::{Alphabet, Symbol};
use crate::lang::nfa::Nfa;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Regex {
    Empty,
    Epsilon,
    Letter(Symbol),
    Union(Box<Regex>, Box<Regex>),
    Concat(Box<Regex>, Box<Regex>),
    Star(Box<Regex>),
    Plus(Box<Regex>),
}

impl Regex {
    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Regex> {
        let mut p = Parser {
            chars: text.chars().collect(),
            pos: 0,
            alphabet,
        };
        let r = p.expr()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(r)
    }

    pub fn letter(s: Symbol) -> Regex {
        Regex::Letter(s)
    }

    /// Union, folding away `%empty`.
    pub fn union(a: Regex, b: Regex) -> Regex {
        match (a, b) {
            (Regex::Empty, r) | (r, Regex::Empty) => r,
            (a, b) if a == b => a,
            (a, b) => Regex::Union(Box::new(a), Box::new(b)),
        }
    }

    /// Concatenation, folding away `%eps` and propagating `%empty`.
    pub fn concat(a: Regex, b: Regex) -> Regex {
        match (a, b) {
            (Regex::Empty, _) | (_, Regex::Empty) => Regex::Empty,
            (Regex::Epsilon, r) | (r, Regex::Epsilon) => r,
            (a, b) => Regex::Concat(Box::new(a), Box::new(b)),
        }
    }

    pub fn star(a: Regex) -> Regex {
        match a {
            Regex::Empty | Regex::Epsilon => Regex::Epsilon,
            Regex::Star(_) => a,
            Regex::Plus(inner) => Regex::Star(inner),
            a => Regex::Star(Box::new(a)),
        }
    }

    pub fn plus(a: Regex) -> Regex {
        match a {
            Regex::Empty => Regex::Empty,
            Regex::Epsilon => Regex::Epsilon,
            Regex::Star(_) | Regex::Plus(_) => a,
            a => Regex::Plus(Box::new(a)),
        }
    }

    pub fn union_all(items: impl IntoIterator<Item = Regex>) -> Regex {
        items.into_iter().fold(Regex::Empty, Regex::union)
    }

    pub fn concat_all(items: impl IntoIterator<Item = Regex>) -> Regex {
        items.into_iter().fold(Regex::Epsilon, Regex::concat)
    }

    pub fn word(w: &[Symbol]) -> Regex {
        Regex::concat_all(w.iter().map(|&s| Regex::Letter(s)))
    }

    /// The letters of `mask`, as a union (`%empty` for the empty mask).
    pub fn letters(mask: u32, alphabet: &Alphabet) -> Regex {
        Regex::union_all(
            alphabet
                .symbols()
                .filter(|s| mask & (1 << s) != 0)
                .map(Regex::Letter),
        )
    }

    /// `B*` for the sub-alphabet `mask`.
    pub fn star_of(mask: u32, alphabet: &Alphabet) -> Regex {
        Regex::star(Regex::letters(mask, alphabet))
    }

    /// Words whose alphabet is exactly `mask`. Built from the decomposition
    /// `B^⊛ = ⋃_b (B∖{b})^⊛ · b · B*` on the letter whose first occurrence
    /// comes last.
    pub fn exact_alphabet(mask: u32, alphabet: &Alphabet) -> Regex {
        if mask == 0 {
            return Regex::Epsilon;
        }
        let tail = Regex::star_of(mask, alphabet);
        Regex::union_all(
            alphabet
                .symbols()
                .filter(|s| mask & (1 << s) != 0)
                .map(|b| {
                    Regex::concat_all([
                        Regex::exact_alphabet(mask & !(1 << b), alphabet),
                        Regex::Letter(b),
                        tail.clone(),
                    ])
                }),
        )
    }

    /// `A*a₁A*a₂A*⋯A*aₙA*`, the upward closure of the single word `w`.
    pub fn upward_word(w: &[Symbol], alphabet: &Alphabet) -> Regex {
        let all = Regex::star_of(alphabet.full_mask(), alphabet);
        let mut r = all.clone();
        for &s in w {
            r = Regex::concat_all([r, Regex::Letter(s), all.clone()]);
        }
        r
    }

    pub fn is_nullable(&self) -> bool {
        match self {
            Regex::Empty | Regex::Letter(_) => false,
            Regex::Epsilon | Regex::Star(_) => true,
            Regex::Union(a, b) => a.is_nullable() || b.is_nullable(),
            Regex::Concat(a, b) => a.is_nullable() && b.is_nullable(),
            Regex::Plus(a) => a.is_nullable(),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Regex::Empty | Regex::Epsilon | Regex::Letter(_) => 1,
            Regex::Union(a, b) | Regex::Concat(a, b) => 1 + a.size() + b.size(),
            Regex::Star(a) | Regex::Plus(a) => 1 + a.size(),
        }
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> RegexDisplay<'a> {
        RegexDisplay {
            regex: self,
            alphabet,
        }
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.display(alphabet).to_string()
    }

    /// Epsilon-free position automaton (Glushkov construction).
    pub fn to_nfa(&self, alphabet: &Alphabet) -> Nfa {
        let mut g = Glushkov::default();
        let info = g.walk(self);
        let n = g.labels.len();
        let mut nfa = Nfa::new(alphabet.clone(), n + 1);
        nfa.add_initial(0);
        if info.nullable {
            nfa.add_final(0);
        }
        for &p in &info.last {
            nfa.add_final(p + 1);
        }
        for &p in &info.first {
            nfa.add_transition(0, g.labels[p], p + 1);
        }
        for (p, follow) in g.follow.iter().enumerate() {
            for &q in follow {
                nfa.add_transition(p + 1, g.labels[q], q + 1);
            }
        }
        nfa
    }
}

struct PosInfo {
    nullable: bool,
    first: Vec<usize>,
    last: Vec<usize>,
}

#[derive(Default)]
struct Glushkov {
    labels: Vec<Symbol>,
    follow: Vec<Vec<usize>>,
}

impl Glushkov {
    fn link(&mut self, from: &[usize], to: &[usize]) {
        for &p in from {
            for &q in to {
                if !self.follow[p].contains(&q) {
                    self.follow[p].push(q);
                }
            }
        }
    }

    fn walk(&mut self, r: &Regex) -> PosInfo {
        match r {
            Regex::Empty => PosInfo {
                nullable: false,
                first: vec![],
                last: vec![],
            },
            Regex::Epsilon => PosInfo {
                nullable: true,
                first: vec![],
                last: vec![],
            },
            Regex::Letter(s) => {
                let p = self.labels.len();
                self.labels.push(*s);
                self.follow.push(Vec::new());
                PosInfo {
                    nullable: false,
                    first: vec![p],
                    last: vec![p],
                }
            }
            Regex::Union(a, b) => {
                let a = self.walk(a);
                let b = self.walk(b);
                PosInfo {
                    nullable: a.nullable || b.nullable,
                    first: [a.first, b.first].concat(),
                    last: [a.last, b.last].concat(),
                }
            }
            Regex::Concat(a, b) => {
                let a = self.walk(a);
                let b = self.walk(b);
                self.link(&a.last, &b.first);
                let first = if a.nullable {
                    [a.first, b.first.clone()].concat()
                } else {
                    a.first
                };
                let last = if b.nullable {
                    [a.last, b.last].concat()
                } else {
                    b.last
                };
                PosInfo {
                    nullable: a.nullable && b.nullable,
                    first,
                    last,
                }
            }
            Regex::Star(a) | Regex::Plus(a) => {
                let info = self.walk(a);
                self.link(&info.last, &info.first);
                PosInfo {
                    nullable: info.nullable || matches!(r, Regex::Star(_)),
                    ..info
                }
            }
        }
    }
}

pub struct RegexDisplay<'a> {
    regex: &'a Regex,
    alphabet: &'a Alphabet,
}

impl RegexDisplay<'_> {
    fn prec(r: &Regex) -> u8 {
        match r {
            Regex::Union(..) => 0,
            Regex::Concat(..) => 1,
            Regex::Star(_) | Regex::Plus(_) => 2,
            _ => 3,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, r: &Regex, min: u8) -> fmt::Result {
        let paren = Self::prec(r) < min;
        if paren {
            f.write_str("(")?;
        }
        match r {
            Regex::Empty => f.write_str("%empty")?,
            Regex::Epsilon => f.write_str("%eps")?,
            Regex::Letter(s) => write!(f, "{}", self.alphabet.char_of(*s))?,
            Regex::Union(a, b) => {
                self.write(f, a, 0)?;
                f.write_str("|")?;
                self.write(f, b, 0)?;
            }
            Regex::Concat(a, b) => {
                self.write(f, a, 1)?;
                self.write(f, b, 1)?;
            }
            Regex::Star(a) => {
                self.write(f, a, 3)?;
                f.write_str("*")?;
            }
            Regex::Plus(a) => {
                self.write(f, a, 3)?;
                f.write_str("+")?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for RegexDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, self.regex, 0)
    }
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Regex> {
        let mut r = self.term()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let rhs = self.term()?;
            r = Regex::Union(Box::new(r), Box::new(rhs));
        }
        Ok(r)
    }

    fn term(&mut self) -> Result<Regex> {
        let mut r: Option<Regex> = None;
        while let Some(c) = self.peek() {
            if c == '|' || c == ')' {
                break;
            }
            let f = self.factor()?;
            r = Some(match r {
                None => f,
                Some(prev) => Regex::Concat(Box::new(prev), Box::new(f)),
            });
        }
        r.ok_or_else(|| self.error("expected an expression"))
    }

    fn factor(&mut self) -> Result<Regex> {
        let mut r = self.atom()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    r = Regex::Star(Box::new(r));
                }
                Some('+') => {
                    self.pos += 1;
                    r = Regex::Plus(Box::new(r));
                }
                _ => return Ok(r),
            }
        }
    }

    fn atom(&mut self) -> Result<Regex> {
        match self.peek() {
            None => Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let r = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(r)
            }
            Some('%') => {
                let rest: String = self.chars[self.pos..].iter().collect();
                if rest.starts_with("%eps") {
                    self.pos += 4;
                    Ok(Regex::Epsilon)
                } else if rest.starts_with("%empty") {
                    self.pos += 6;
                    Ok(Regex::Empty)
                } else {
                    Err(self.error("unknown keyword, expected %eps or %empty"))
                }
            }
            Some(c) if "*+".contains(c) => Err(self.error("operator without operand")),
            Some(c) => {
                let s = self.alphabet.index_of(c)?;
                self.pos += 1;
                Ok(Regex::Letter(s))
            }
        }
    }
}
