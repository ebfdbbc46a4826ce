//! End-to-end commands: parse an instance, build the rating map, saturate,
//! decide, and optionally synthesize and verify a cover.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::Semiring;
use crate::covers::{
    self, at_cover, bsigma1_cover, fo2_universal_cover, pieces::default_max_k, pt_partition,
    sigma1_cover, Cover, CoverJson, Fo2Options, PieceJson, VerifyReport,
};
use crate::error::{Error, Result};
use crate::lang::alphabet::Alphabet;
use crate::lang::monoid::{transition_monoid_capped, MonoidMorphism, DEFAULT_MAX_MONOID};
use crate::lang::nfa::{Nfa, NfaJson, DEFAULT_MAX_STATES};
use crate::lang::regex::Regex;
use crate::rating::{rm_from_multiset_capped, Backing, Extension, Language};
use crate::saturation::{
    decide_pointed_covering, decide_universal_covering, saturate_pointed, saturate_universal,
    ClassId, ImprintSet, DEFAULT_MAX_ELEMENTS,
};

/// Text form of the universal language.
pub const UNIVERSAL: &str = "%universal";

/// A language: a regex, `%universal`, or an automaton in wire format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LangSpec {
    Text(String),
    Nfa { nfa: NfaJson },
}

impl LangSpec {
    pub fn universal() -> Self {
        LangSpec::Text(UNIVERSAL.into())
    }

    pub fn is_universal(&self) -> bool {
        matches!(self, LangSpec::Text(t) if t.trim() == UNIVERSAL)
    }

    pub fn to_nfa(&self, alphabet: &Alphabet) -> Result<Nfa> {
        match self {
            LangSpec::Text(t) if t.trim() == UNIVERSAL => Ok(Nfa::universal(alphabet)),
            LangSpec::Text(t) if t.trim_start().starts_with('{') => {
                let n = Nfa::parse_json(t)?;
                alphabet.ensure_same(n.alphabet())?;
                Ok(n)
            }
            LangSpec::Text(t) => Ok(Regex::parse(t, alphabet)?.to_nfa(alphabet)),
            LangSpec::Nfa { nfa } => {
                let n = Nfa::from_json(nfa)?;
                alphabet.ensure_same(n.alphabet())?;
                Ok(n)
            }
        }
    }

    pub fn label(&self) -> String {
        match self {
            LangSpec::Text(t) => t.clone(),
            LangSpec::Nfa { nfa } => format!("<nfa with {} states>", nfa.states),
        }
    }
}

impl Default for LangSpec {
    fn default() -> Self {
        LangSpec::universal()
    }
}

/// Resource caps and output switches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Options {
    pub max_elements: usize,
    /// Piece length cap for piecewise testable covers; per-alphabet default
    /// when absent.
    pub max_k: Option<usize>,
    pub max_states: usize,
    pub emit_cover: bool,
    pub verify: bool,
    pub json: bool,
    /// Seed for the sampled semiring law checks run by `verify`.
    pub seed: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_elements: DEFAULT_MAX_ELEMENTS,
            max_k: None,
            max_states: DEFAULT_MAX_STATES,
            emit_cover: false,
            verify: false,
            json: false,
            seed: 0,
        }
    }
}

/// A covering question `(L, 𝐋)` for a class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub alphabet: String,
    pub class: ClassId,
    #[serde(default)]
    pub target: LangSpec,
    #[serde(default)]
    pub against: Vec<LangSpec>,
    #[serde(default)]
    pub options: Options,
}

impl Instance {
    pub fn parse_json(text: &str) -> Result<Instance> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("instance: {e}")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    /// `|R|` in decimal, or `2^bits` when it does not fit.
    pub rating_set_size: String,
    pub backings: Vec<String>,
    /// Size of the monoid recognizing the target, on the pointed route.
    #[serde(default)]
    pub monoid_size: Option<usize>,
    pub iterations: usize,
    pub produced: usize,
    pub generators: usize,
    pub wall_ms: u64,
}

/// Outcome of a command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub class: ClassId,
    pub coverable: bool,
    /// Names of the flag indices used by `imprint_summary`.
    pub languages: Vec<String>,
    /// Maximal elements of the imprint pulled back to sets of languages.
    pub imprint_summary: Vec<Vec<usize>>,
    /// Sets `𝐇` of `against` indices with `(L, 𝐇)` not coverable.
    pub noncoverable_subsets: Vec<Vec<usize>>,
    #[serde(default)]
    pub cover: Option<CoverJson>,
    #[serde(default)]
    pub verification: Option<VerifyReport>,
    /// Union of the cover pieces, for separation questions.
    #[serde(default)]
    pub separator: Option<PieceJson>,
    #[serde(default)]
    pub notes: Vec<String>,
    pub stats: Stats,
}

impl Verdict {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("verdicts serialize")
    }

    pub fn parse_json(text: &str) -> Result<Verdict> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("verdict: {e}")))
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "class {}: {}\n",
            self.class,
            if self.coverable { "coverable" } else { "not coverable" }
        ));
        for (i, l) in self.languages.iter().enumerate() {
            out.push_str(&format!("  [{i}] {l}\n"));
        }
        out.push_str(&format!("imprint generators: {:?}\n", self.imprint_summary));
        out.push_str(&format!("non-coverable subsets: {:?}\n", self.noncoverable_subsets));
        if let Some(c) = &self.cover {
            out.push_str(&format!("cover ({} pieces", c.pieces.len()));
            if let Some(k) = c.k {
                out.push_str(&format!(", k = {k}"));
            }
            out.push_str("):\n");
            for p in &c.pieces {
                match (&p.regex, &p.nfa) {
                    (Some(r), _) => out.push_str(&format!("  {r}\n")),
                    (None, Some(n)) => out.push_str(&format!("  <nfa with {} states>\n", n.states)),
                    _ => {}
                }
            }
        }
        if let Some(v) = &self.verification {
            out.push_str(&format!(
                "verified: covers={} separating={} class={:?} ({})\n",
                v.covers_target, v.separating, v.class_check.status, v.class_check.detail
            ));
        }
        if let Some(s) = &self.separator {
            match (&s.regex, &s.nfa) {
                (Some(r), _) => out.push_str(&format!("separator: {r}\n")),
                (None, Some(n)) => out.push_str(&format!("separator: <nfa with {} states>\n", n.states)),
                _ => {}
            }
        }
        for n in &self.notes {
            out.push_str(&format!("note: {n}\n"));
        }
        out.push_str(&format!(
            "stats: |R| = {}, iterations = {}, generators = {}, {} ms\n",
            self.stats.rating_set_size, self.stats.iterations, self.stats.generators, self.stats.wall_ms
        ));
        out
    }
}

/// Prefixes cap errors with the stage that hit them.
fn stage<T>(name: &str, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Cap { what, limit } => Error::Cap {
            what: format!("{name}: {what}"),
            limit,
        },
        other => other,
    })
}

fn describe_size(r: &Semiring) -> String {
    match r.size() {
        Some(n) => n.to_string(),
        None => format!("2^{:.0}", r.size_log2()),
    }
}

fn describe_backing(b: &Backing) -> String {
    match b {
        Backing::Relations { states } => format!("relations over {states} states"),
        Backing::Powerset { monoid } => format!("subsets of a {monoid}-element monoid"),
    }
}

fn hit_sets(s: &ImprintSet) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = s.generators().iter().map(|g| Semiring::bits_of(g)).collect();
    v.sort();
    v
}

/// Parsed languages of an instance.
struct Parsed {
    alphabet: Alphabet,
    target: Nfa,
    universal: bool,
    against: Vec<Nfa>,
}

fn parse(inst: &Instance) -> Result<Parsed> {
    let alphabet = Alphabet::parse(&inst.alphabet)?;
    if inst.against.is_empty() {
        return Err(Error::invalid("at least one language to separate from is required"));
    }
    Ok(Parsed {
        target: inst.target.to_nfa(&alphabet)?,
        universal: inst.target.is_universal(),
        against: inst
            .against
            .iter()
            .map(|l| l.to_nfa(&alphabet))
            .collect::<Result<_>>()?,
        alphabet,
    })
}

fn extension(langs: &[Nfa], class: ClassId, opts: &Options) -> Result<Extension> {
    let ls: Vec<Language> = langs.iter().cloned().map(Language::Nfa).collect();
    let ext = stage("rating map", rm_from_multiset_capped(&ls, opts.max_states))?;
    if matches!(class, ClassId::Fo2 | ClassId::Sigma2) {
        stage("alphabet augmentation", ext.augment())
    } else {
        Ok(ext)
    }
}

fn law_notes(ext: &Extension, seed: u64) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ext.tau
        .semiring()
        .validate(&mut rng, 200)
        .into_iter()
        .map(|v| format!("semiring law violation: {v}"))
        .collect()
}

/// Decides `(L, 𝐋)` and, when asked and possible, returns a verified
/// separating cover.
pub fn cmd_cover(inst: &Instance) -> Result<Verdict> {
    let start = Instant::now();
    let p = parse(inst)?;
    let opts = &inst.options;
    let class = inst.class;
    let mut notes = Vec::new();
    let mut languages: Vec<String> = Vec::new();
    let (decision, ext, cover, monoid_size) = if class.is_pointed() {
        let (alpha, accepting) = if p.universal {
            (MonoidMorphism::trivial(&p.alphabet), vec![true])
        } else {
            let rec = stage(
                "target monoid",
                transition_monoid_capped(&p.target, opts.max_states, DEFAULT_MAX_MONOID),
            )?;
            (rec.morphism, rec.accepting)
        };
        languages.extend(inst.against.iter().map(LangSpec::label));
        let ext = extension(&p.against, class, opts)?;
        let (_, d) = stage(
            "saturation",
            decide_pointed_covering(&alpha, &accepting, &ext, class, opts.max_elements),
        )?;
        let cover = if d.coverable && (opts.emit_cover || opts.verify) {
            if class == ClassId::Sigma1 {
                let f: Vec<usize> = (0..alpha.size()).filter(|&m| accepting[m]).collect();
                let mut c = stage("cover synthesis", sigma1_cover(&alpha, &f, opts.max_states))?;
                c.target = p.target.clone();
                Some(c)
            } else {
                notes.push(format!("{class} is decision-only: no cover is synthesized"));
                None
            }
        } else {
            None
        };
        (d, ext, cover, Some(alpha.size()))
    } else {
        let mut langs = Vec::new();
        let target_flag = if p.universal {
            None
        } else {
            langs.push(p.target.clone());
            languages.push(inst.target.label());
            Some(0)
        };
        langs.extend(p.against.iter().cloned());
        languages.extend(inst.against.iter().map(LangSpec::label));
        let ext = extension(&langs, class, opts)?;
        let (imprint, d) = stage(
            "saturation",
            decide_universal_covering(&ext, class, target_flag, opts.max_elements),
        )?;
        let cover = if d.coverable && (opts.emit_cover || opts.verify) {
            let universal = match class {
                ClassId::At => Some(at_cover(&p.alphabet, None)?),
                ClassId::Bsigma1 => {
                    let max_k = opts.max_k.unwrap_or_else(|| default_max_k(&p.alphabet));
                    let c = stage(
                        "cover synthesis",
                        bsigma1_cover(&ext.tau, &imprint, max_k, opts.max_states),
                    )?;
                    if !c.optimal {
                        notes.push(format!(
                            "piece bound cap {max_k} reached before the optimal imprint; the cover may not separate"
                        ));
                    }
                    Some(c)
                }
                ClassId::Fo2 => {
                    let o = Fo2Options {
                        max_elements: opts.max_elements,
                        ..Fo2Options::default()
                    };
                    Some(stage("cover synthesis", fo2_universal_cover(&ext.tau, &imprint, o))?)
                }
                _ => {
                    notes.push(format!("{class} is decision-only: no cover is synthesized"));
                    None
                }
            };
            match universal {
                Some(c) if !p.universal => Some(covers::restrict(c, &p.target)?.prune_empty()),
                Some(c) => Some(c.prune_empty()),
                None => None,
            }
        } else {
            None
        };
        (d, ext, cover, None)
    };

    let mut verification = None;
    let mut cover_json = None;
    if let Some(c) = &cover {
        let report = stage(
            "verification",
            covers::verify_cover(c, &p.target, &p.against, true, None, opts.max_states),
        )?;
        if opts.verify {
            notes.extend(law_notes(&ext, opts.seed));
        }
        if !report.passed() {
            notes.push("the synthesized cover failed verification and is withheld".into());
        } else if opts.emit_cover {
            cover_json = Some(c.to_json(Some(report.clone())));
        }
        verification = Some(report);
    }

    Ok(Verdict {
        class,
        coverable: decision.coverable,
        languages,
        imprint_summary: hit_sets(&decision.pulled),
        noncoverable_subsets: decision.noncoverable_subsets,
        cover: cover_json,
        verification,
        separator: None,
        notes,
        stats: Stats {
            rating_set_size: describe_size(ext.tau.semiring()),
            backings: ext.backings.iter().map(describe_backing).collect(),
            monoid_size,
            iterations: decision.stats.iterations,
            produced: decision.stats.produced,
            generators: decision.stats.generators,
            wall_ms: start.elapsed().as_millis() as u64,
        },
    })
}

fn separator_of(cover: &Cover) -> Result<(Nfa, PieceJson)> {
    let nfa = cover.union_nfa()?;
    let regexes: Option<Vec<Regex>> = cover.pieces.iter().map(|p| p.regex.clone()).collect();
    let json = match regexes {
        Some(rs) => PieceJson {
            regex: Some(Regex::union_all(rs).render(cover.alphabet())),
            nfa: None,
        },
        None => PieceJson {
            regex: None,
            nfa: Some(nfa.to_json()),
        },
    };
    Ok((nfa, json))
}

/// Is `l1` separable from `l2` by the class? When it is and a cover can be
/// synthesized, the verdict carries a verified separator.
pub fn cmd_separate(
    alphabet: &str,
    class: ClassId,
    l1: LangSpec,
    l2: LangSpec,
    options: Options,
) -> Result<Verdict> {
    let inst = Instance {
        alphabet: alphabet.into(),
        class,
        target: l1,
        against: vec![l2],
        options: Options {
            verify: true,
            ..options.clone()
        },
    };
    let mut v = cmd_cover(&inst)?;
    if v.coverable && v.verification.is_some() {
        if let Some(cover) = rebuild_cover(&inst, &v)? {
            let p = parse(&inst)?;
            let (nfa, json) = separator_of(&cover)?;
            let contains = p.target.is_subset_of(&nfa, options.max_states)?;
            let misses = !nfa.meets(&p.against[0])?;
            if contains && misses {
                v.separator = Some(json);
            } else {
                v.notes.push("separator check failed".into());
            }
        }
    }
    if !options.emit_cover {
        v.cover = None;
    }
    Ok(v)
}

/// Re-synthesizes the cover of a verdict (it is withheld from verdicts
/// without `emit_cover`).
fn rebuild_cover(inst: &Instance, v: &Verdict) -> Result<Option<Cover>> {
    if let Some(c) = &v.cover {
        let mut cover = c.to_cover()?;
        cover.target = inst.target.to_nfa(&Alphabet::parse(&inst.alphabet)?)?;
        return Ok(Some(cover));
    }
    let again = Instance {
        options: Options {
            emit_cover: true,
            ..inst.options.clone()
        },
        ..inst.clone()
    };
    let w = cmd_cover(&again)?;
    match w.cover {
        Some(c) => Ok(Some(c.to_cover()?)),
        None => Ok(None),
    }
}

/// Membership: `L` belongs to the class iff it is separable from its
/// complement.
pub fn cmd_member(alphabet: &str, class: ClassId, l: LangSpec, options: Options) -> Result<Verdict> {
    let a = Alphabet::parse(alphabet)?;
    let nfa = l.to_nfa(&a)?;
    let comp = stage("complement", nfa.complement_capped(options.max_states))?;
    cmd_separate(alphabet, class, l, LangSpec::Nfa { nfa: comp.to_json() }, options)
}

/// The optimal imprint of a multiset, pulled back to sets of languages.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImprintReport {
    pub class: ClassId,
    pub languages: Vec<String>,
    /// Every member of the pulled-back imprint.
    pub subsets: Vec<Vec<usize>>,
    pub generators: Vec<Vec<usize>>,
    /// Number of maximal elements of the imprint inside `R`.
    pub raw_generators: usize,
    pub rating_set_size: String,
}

/// Runs construction and saturation only. Pointed classes use the target
/// (or `A*`) as the language to cover.
pub fn cmd_imprint(inst: &Instance) -> Result<ImprintReport> {
    let p = parse(inst)?;
    let opts = &inst.options;
    let class = inst.class;
    let ext = extension(&p.against, class, opts)?;
    let (pulled, raw) = if class.is_pointed() {
        let (alpha, accepting) = if p.universal {
            (MonoidMorphism::trivial(&p.alphabet), vec![true])
        } else {
            let rec = stage(
                "target monoid",
                transition_monoid_capped(&p.target, opts.max_states, DEFAULT_MAX_MONOID),
            )?;
            (rec.morphism, rec.accepting)
        };
        let (pi, _) = stage("saturation", saturate_pointed(&alpha, &ext.tau, class, opts.max_elements))?;
        let u = pi.union_over(&accepting);
        (ext.pullback(&u), pi.generators().count())
    } else {
        if !p.universal {
            return Err(Error::invalid(
                "universal classes compute the imprint of the multiset; omit the target",
            ));
        }
        let (s, _) = stage("saturation", saturate_universal(&ext.tau, class, opts.max_elements))?;
        (ext.pullback(&s), s.len_generators())
    };
    let subsets = pulled
        .enumerate(1 << 20)?
        .iter()
        .map(|e| Semiring::bits_of(e))
        .collect::<Vec<_>>();
    let mut subsets = subsets;
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    Ok(ImprintReport {
        class,
        languages: inst.against.iter().map(LangSpec::label).collect(),
        subsets,
        generators: hit_sets(&pulled),
        raw_generators: raw,
        rating_set_size: describe_size(ext.tau.semiring()),
    })
}

/// Imprints of every universal class for one multiset, with the inclusions
/// between them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImprintChain {
    pub reports: Vec<ImprintReport>,
    /// `(smaller, larger, holds)` for the expected inclusions.
    pub inclusions: Vec<(ClassId, ClassId, bool)>,
}

pub fn cmd_imprint_chain(inst: &Instance) -> Result<ImprintChain> {
    let classes = [ClassId::Fo, ClassId::Fo2, ClassId::Bsigma1, ClassId::At];
    let reports: Vec<ImprintReport> = classes
        .iter()
        .map(|&c| cmd_imprint(&Instance { class: c, ..inst.clone() }))
        .collect::<Result<_>>()?;
    let get = |c: ClassId| reports.iter().find(|r| r.class == c).unwrap();
    let subset = |x: &ImprintReport, y: &ImprintReport| x.subsets.iter().all(|s| y.subsets.contains(s));
    let inclusions = [
        (ClassId::Fo, ClassId::Fo2),
        (ClassId::Fo2, ClassId::At),
        (ClassId::Fo, ClassId::Bsigma1),
        (ClassId::Bsigma1, ClassId::At),
    ]
    .into_iter()
    .map(|(a, b)| (a, b, subset(get(a), get(b))))
    .collect();
    Ok(ImprintChain { reports, inclusions })
}

/// Independent oracles.
pub mod oracle {
    use super::*;

    /// `L1` is Σ1-separable from `L2` iff `↑L1 ∩ L2 = ∅`.
    pub fn sigma1_separable(l1: &Nfa, l2: &Nfa) -> Result<bool> {
        Ok(!l1.upward_closure().meets(l2)?)
    }

    /// The AT imprint of a multiset computed from atoms directly: the hit
    /// set of `B^⊛` is the set of languages it meets.
    pub fn at_imprint(langs: &[Nfa]) -> Result<Vec<Vec<usize>>> {
        let a = langs
            .first()
            .ok_or_else(|| Error::invalid("the multiset needs at least one language"))?
            .alphabet()
            .clone();
        let mut maximal: Vec<u64> = Vec::new();
        for mask in 0..=a.full_mask() {
            let atom = Nfa::alphabet_exact(&a, mask);
            let mut hits = 0u64;
            for (i, l) in langs.iter().enumerate() {
                if atom.meets(l)? {
                    hits |= 1 << i;
                }
            }
            maximal.push(hits);
        }
        let mut all: Vec<u64> = Vec::new();
        for &m in &maximal {
            let mut sub = m;
            loop {
                if !all.contains(&sub) {
                    all.push(sub);
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & m;
            }
        }
        let mut out: Vec<Vec<usize>> = all
            .into_iter()
            .map(|m| (0..langs.len()).filter(|i| m >> i & 1 == 1).collect())
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        Ok(out)
    }

    #[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
    pub struct PartitionReport {
        pub k: usize,
        pub classes: usize,
        /// Regex of each class when small, else `None`.
        pub class_regexes: Vec<Option<String>>,
        /// Whether the queried language is a union of classes.
        #[serde(default)]
        pub member: Option<bool>,
    }

    pub fn pt_k(k: usize, alphabet: &Alphabet, query: Option<&Nfa>, max_states: usize) -> Result<PartitionReport> {
        let pa = pt_partition(k, alphabet, max_states)?;
        let class_regexes = (0..pa.state_count())
            .map(|q| {
                let c = covers::Piece::from_dfa(&pa.class_of(q).determinize(max_states)?);
                Ok(c.regex.map(|r| r.render(alphabet)))
            })
            .collect::<Result<_>>()?;
        let member = query.map(|l| pa.is_union_of_classes(l, max_states)).transpose()?;
        Ok(PartitionReport {
            k,
            classes: pa.state_count(),
            class_regexes,
            member,
        })
    }
}
