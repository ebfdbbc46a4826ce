//! Cover synthesis, assembly and verification.

pub mod fo2;
pub mod pieces;
pub mod sigma1;
pub mod template;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lang::alphabet::Alphabet;
use crate::lang::dfa::Dfa;
use crate::lang::nfa::{Nfa, NfaJson};
use crate::lang::regex::Regex;
use crate::rating::{Extension, RatingMap};
use crate::saturation::{ClassId, ImprintSet};

pub use fo2::{fo2_cover, fo2_universal_cover, Fo2Options};
pub use pieces::{bsigma1_cover, pt_partition, PieceAutomaton, DEFAULT_MAX_PIECE_STATES};
pub use sigma1::{minimal_words, sigma1_cover};
pub use template::{bsigma1_template_witness, Template, Unit, Witness};

/// Largest minimal DFA for which pieces also get a regular expression.
const REGEX_STATE_LIMIT: usize = 8;
const REGEX_SIZE_LIMIT: usize = 400;

/// One language of a cover.
#[derive(Clone, Debug)]
pub struct Piece {
    pub nfa: Nfa,
    pub regex: Option<Regex>,
}

impl Piece {
    pub fn from_regex(regex: Regex, alphabet: &Alphabet) -> Self {
        Piece {
            nfa: regex.to_nfa(alphabet),
            regex: Some(regex),
        }
    }

    /// Keeps the automaton; adds a regex when the minimal DFA is small.
    pub fn from_dfa(dfa: &Dfa) -> Self {
        let min = dfa.minimize();
        let nfa = min.to_nfa().trim();
        let regex = (min.state_count() <= REGEX_STATE_LIMIT)
            .then(|| nfa.to_regex())
            .filter(|r| r.size() <= REGEX_SIZE_LIMIT);
        Piece { nfa, regex }
    }

    fn to_json(&self) -> PieceJson {
        let alphabet = self.nfa.alphabet();
        match &self.regex {
            Some(r) => PieceJson {
                regex: Some(r.render(alphabet)),
                nfa: None,
            },
            None => PieceJson {
                regex: None,
                nfa: Some(self.nfa.to_json()),
            },
        }
    }
}

/// A finite set of languages covering `target`.
#[derive(Clone, Debug)]
pub struct Cover {
    pub class: ClassId,
    pub target: Nfa,
    /// Piece length bound, for piecewise testable covers.
    pub k: Option<usize>,
    pub pieces: Vec<Piece>,
    /// Whether the construction guarantees an optimal imprint.
    pub optimal: bool,
    pub provenance: String,
}

impl Cover {
    pub fn alphabet(&self) -> &Alphabet {
        self.target.alphabet()
    }

    /// Drops pieces with an empty language.
    pub fn prune_empty(mut self) -> Self {
        self.pieces.retain(|p| !p.nfa.is_empty());
        self
    }

    /// `↓{ρ(K) : K ∈ 𝐊}`.
    pub fn imprint(&self, rho: &RatingMap) -> Result<ImprintSet> {
        let images = self
            .pieces
            .iter()
            .map(|p| rho.eval(&p.nfa))
            .collect::<Result<Vec<_>>>()?;
        Ok(ImprintSet::down_closure(rho.semiring(), &images))
    }

    /// The union of the pieces as one automaton.
    pub fn union_nfa(&self) -> Result<Nfa> {
        let mut acc = Nfa::empty(self.alphabet());
        for p in &self.pieces {
            acc = acc.union(&p.nfa)?;
        }
        Ok(acc.trim())
    }

    pub fn to_json(&self, verified: Option<VerifyReport>) -> CoverJson {
        CoverJson {
            class: self.class,
            alphabet: self.alphabet().to_string(),
            k: self.k,
            pieces: self.pieces.iter().map(Piece::to_json).collect(),
            optimal: self.optimal,
            provenance: self.provenance.clone(),
            verified,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regex: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nfa: Option<NfaJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverJson {
    pub class: ClassId,
    pub alphabet: String,
    #[serde(default)]
    pub k: Option<usize>,
    pub pieces: Vec<PieceJson>,
    #[serde(default)]
    pub optimal: bool,
    #[serde(default)]
    pub provenance: String,
    #[serde(default)]
    pub verified: Option<VerifyReport>,
}

impl CoverJson {
    /// Rebuilds the pieces. The target is not serialized and becomes `A*`.
    pub fn to_cover(&self) -> Result<Cover> {
        let alphabet = Alphabet::parse(&self.alphabet)?;
        let pieces = self
            .pieces
            .iter()
            .map(|p| match (&p.regex, &p.nfa) {
                (Some(r), _) => Ok(Piece::from_regex(Regex::parse(r, &alphabet)?, &alphabet)),
                (None, Some(n)) => Ok(Piece {
                    nfa: Nfa::from_json(n)?,
                    regex: None,
                }),
                (None, None) => Err(crate::Error::invalid("a piece needs a regex or an nfa")),
            })
            .collect::<Result<_>>()?;
        Ok(Cover {
            class: self.class,
            target: Nfa::universal(&alphabet),
            k: self.k,
            pieces,
            optimal: self.optimal,
            provenance: self.provenance.clone(),
        })
    }
}

/// `𝐊_AT`: the atoms `B^⊛`, all of them or those meeting `scope`.
pub fn at_cover(alphabet: &Alphabet, scope: Option<&Nfa>) -> Result<Cover> {
    let mut pieces = Vec::new();
    for mask in 0..=alphabet.full_mask() {
        let atom = Nfa::alphabet_exact(alphabet, mask);
        if let Some(l) = scope {
            if !atom.meets(l)? {
                continue;
            }
        }
        pieces.push(Piece::from_regex(Regex::exact_alphabet(mask, alphabet), alphabet));
    }
    Ok(Cover {
        class: ClassId::At,
        target: scope.cloned().unwrap_or_else(|| Nfa::universal(alphabet)),
        k: None,
        pieces,
        optimal: true,
        provenance: format!(
            "alphabet atoms over {}{}",
            alphabet,
            if scope.is_some() { " meeting the target" } else { "" }
        ),
    })
}

/// Keeps the pieces of a universal cover that meet `target`.
pub fn restrict(cover: Cover, target: &Nfa) -> Result<Cover> {
    let mut pieces = Vec::new();
    for p in cover.pieces {
        if p.nfa.meets(target)? {
            pieces.push(p);
        }
    }
    Ok(Cover {
        target: target.clone(),
        pieces,
        provenance: format!("{}; restricted to the pieces meeting the target", cover.provenance),
        ..cover
    })
}

/// Concatenates the piece lists of covers of the parts of `target`.
pub fn union(class: ClassId, target: &Nfa, parts: Vec<Cover>) -> Cover {
    let optimal = parts.iter().all(|c| c.optimal);
    let k = parts.iter().filter_map(|c| c.k).max();
    let provenance = format!("union of {} partial covers", parts.len());
    Cover {
        class,
        target: target.clone(),
        k,
        pieces: parts.into_iter().flat_map(|c| c.pieces).collect(),
        optimal,
        provenance,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckStatus {
    Ok,
    Failed,
    Unchecked,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCheck {
    pub status: CheckStatus,
    pub detail: String,
}

/// Findings of [`verify_cover`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub covers_target: bool,
    pub separating: bool,
    /// Per piece, the index of an `against` language it misses.
    pub witnesses: Vec<Option<usize>>,
    pub class_check: ClassCheck,
    /// Hit sets of the cover imprint under the supplied extension.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub imprint: Option<Vec<Vec<usize>>>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.covers_target && self.separating && self.class_check.status != CheckStatus::Failed
    }
}

/// Checks coverage, separation, and class membership of every piece.
pub fn verify_cover(
    cover: &Cover,
    target: &Nfa,
    against: &[Nfa],
    class_check: bool,
    ext: Option<&Extension>,
    max_states: usize,
) -> Result<VerifyReport> {
    let covers_target = target.is_subset_of(&cover.union_nfa()?, max_states)?;
    let mut witnesses = Vec::with_capacity(cover.pieces.len());
    for p in &cover.pieces {
        let mut hit = None;
        for (i, l) in against.iter().enumerate() {
            if !p.nfa.meets(l)? {
                hit = Some(i);
                break;
            }
        }
        witnesses.push(hit);
    }
    let separating = witnesses.iter().all(Option::is_some);
    let class_check = if class_check {
        check_class(cover, max_states)?
    } else {
        ClassCheck {
            status: CheckStatus::Unchecked,
            detail: "not requested".into(),
        }
    };
    let imprint = match ext {
        Some(e) => {
            let s = e.pullback(&cover.imprint(&e.tau)?);
            Some(
                s.generators()
                    .iter()
                    .map(|g| crate::algebra::Semiring::bits_of(g))
                    .collect(),
            )
        }
        None => None,
    };
    Ok(VerifyReport {
        covers_target,
        separating,
        witnesses,
        class_check,
        imprint,
    })
}

fn check_class(cover: &Cover, max_states: usize) -> Result<ClassCheck> {
    let a = cover.alphabet();
    let mut failures = Vec::new();
    match cover.class {
        ClassId::At => {
            for (i, p) in cover.pieces.iter().enumerate() {
                for mask in 0..=a.full_mask() {
                    let atom = Nfa::alphabet_exact(a, mask);
                    if atom.meets(&p.nfa)? && !atom.is_subset_of(&p.nfa, max_states)? {
                        failures.push(format!("piece {i} splits the atom {}", a.render_mask(mask)));
                        break;
                    }
                }
            }
        }
        ClassId::Sigma1 => {
            for (i, p) in cover.pieces.iter().enumerate() {
                if !p.nfa.upward_closure().is_subset_of(&p.nfa, max_states)? {
                    failures.push(format!("piece {i} is not upward closed"));
                }
            }
        }
        ClassId::Bsigma1 => {
            let Some(k) = cover.k else {
                return Ok(ClassCheck {
                    status: CheckStatus::Failed,
                    detail: "no piece length bound recorded".into(),
                });
            };
            let pa = pt_partition(k, a, max_states)?;
            for (i, p) in cover.pieces.iter().enumerate() {
                if !pa.is_union_of_classes(&p.nfa, max_states)? {
                    failures.push(format!("piece {i} is not a union of ~{k} classes"));
                }
            }
        }
        other => {
            return Ok(ClassCheck {
                status: CheckStatus::Unchecked,
                detail: format!("{other} membership holds by construction and is not checked"),
            })
        }
    }
    Ok(if failures.is_empty() {
        ClassCheck {
            status: CheckStatus::Ok,
            detail: match cover.class {
                ClassId::At => "every piece is a union of atoms".into(),
                ClassId::Sigma1 => "every piece is upward closed".into(),
                _ => format!("every piece is a union of ~{} classes", cover.k.unwrap_or(0)),
            },
        }
    } else {
        ClassCheck {
            status: CheckStatus::Failed,
            detail: failures.join("; "),
        }
    })
}
