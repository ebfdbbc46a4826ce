//! Acceptance suite: one pass/fail line per criterion.

mod common;

use std::io::Write;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use regcover::algebra::{Semiring, SemiringMorphism};
use regcover::covers::{
    self, bsigma1_cover, bsigma1_template_witness, fo2_universal_cover, pieces::default_max_k,
    CheckStatus, Fo2Options, Witness,
};
use regcover::lang::{transition_monoid, Alphabet, Nfa, Regex};
use regcover::pipeline::{cmd_cover, cmd_imprint, cmd_separate, oracle, Instance, LangSpec, Options};
use regcover::rating::{rm_from_multiset, Extension, Language};
use regcover::saturation::{
    at_imprint, check_pointed, check_universal, decide_universal_covering, saturate_pointed,
    saturate_universal, ClassId, ImprintSet,
};

const LIMIT_EXAMPLE: Duration = Duration::from_secs(1);
const LIMIT_SIGMA1: Duration = Duration::from_secs(30);
const LIMIT_BSIGMA1: Duration = Duration::from_secs(300);
const LIMIT_FO2: Duration = Duration::from_secs(300);
const MAX_ELEMENTS: usize = 200_000;
const MAX_STATES: usize = 1 << 20;
const FO2_MAX_RATING_SET: u128 = 5000;

struct Outcome {
    id: usize,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn multiset(langs: &[Nfa]) -> Extension {
    let ls: Vec<Language> = langs.iter().cloned().map(Language::Nfa).collect();
    rm_from_multiset(&ls).unwrap()
}

fn regex_nfa(text: &str, a: &Alphabet) -> Nfa {
    Regex::parse(text, a).unwrap().to_nfa(a)
}

fn spec(t: &str) -> LangSpec {
    LangSpec::Text(t.into())
}

/// Projection of an augmented imprint back onto the original rating set.
fn project(s: &ImprintSet, r: &Semiring) -> ImprintSet {
    let p = SemiringMorphism::project(s.semiring(), 0).unwrap();
    let images: Vec<_> = s.generators().iter().map(|g| p.apply(g)).collect();
    ImprintSet::down_closure(r, &images)
}

fn c1_example_imprint() -> Outcome {
    let start = Instant::now();
    let inst = Instance {
        alphabet: "abc".into(),
        class: ClassId::At,
        target: LangSpec::universal(),
        against: ["(ab)+", "b(ab)+", "c(ac)+"].iter().map(|t| spec(t)).collect(),
        options: Options::default(),
    };
    let r = cmd_imprint(&inst).unwrap();
    let elapsed = start.elapsed();
    let expected: Vec<Vec<usize>> = vec![vec![], vec![0], vec![1], vec![2], vec![0, 1]];
    Outcome {
        id: 1,
        name: "AT imprint of the worked example",
        pass: r.subsets == expected && elapsed < LIMIT_EXAMPLE,
        detail: format!("{:?} in {:?}", r.subsets, elapsed),
    }
}

fn c2_joint_separation() -> Outcome {
    let start = Instant::now();
    let run = |against: &[&str]| {
        let inst = Instance {
            alphabet: "abc".into(),
            class: ClassId::At,
            target: spec("a+|b+"),
            against: against.iter().map(|t| spec(t)).collect(),
            options: Options {
                emit_cover: true,
                verify: true,
                ..Options::default()
            },
        };
        cmd_cover(&inst).unwrap()
    };
    let v1 = run(&["b+|c+"]);
    let v2 = run(&["c+|a+"]);
    let v12 = run(&["b+|c+", "c+|a+"]);
    let elapsed = start.elapsed();
    let verified = v12
        .cover
        .as_ref()
        .and_then(|c| c.verified.as_ref())
        .is_some_and(|r| r.passed());
    Outcome {
        id: 2,
        name: "pairwise not coverable, jointly coverable with verified cover",
        pass: !v1.coverable && !v2.coverable && v12.coverable && verified && elapsed < LIMIT_EXAMPLE,
        detail: format!(
            "{{L1}}: {}, {{L2}}: {}, {{L1,L2}}: {} (cover verified: {verified}) in {elapsed:?}",
            v1.coverable, v2.coverable, v12.coverable
        ),
    }
}

fn c3_sigma1_oracle() -> Outcome {
    let start = Instant::now();
    let a = Alphabet::parse("ab").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut mismatches = Vec::new();
    let mut separable = 0;
    for i in 0..50 {
        let r1 = common::random_regex(&mut rng, &a, 3);
        let r2 = common::random_regex(&mut rng, &a, 3);
        let (t1, t2) = (r1.render(&a), r2.render(&a));
        let v = cmd_separate("ab", ClassId::Sigma1, spec(&t1), spec(&t2), Options::default()).unwrap();
        let o = oracle::sigma1_separable(&r1.to_nfa(&a), &r2.to_nfa(&a)).unwrap();
        separable += o as usize;
        let separator_ok = !v.coverable || v.separator.is_some();
        if v.coverable != o || !separator_ok {
            mismatches.push(format!("#{i} {t1} vs {t2}"));
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        id: 3,
        name: "sigma1 separation agrees with the upward-closure oracle",
        pass: mismatches.is_empty() && elapsed < LIMIT_SIGMA1,
        detail: format!(
            "50 pairs ({separable} separable), {} mismatches {:?} in {elapsed:?}",
            mismatches.len(),
            mismatches
        ),
    }
}

/// The random instances shared by criteria 4 and 5: a target and one or
/// two languages to separate from.
fn random_instances() -> Vec<(Nfa, Vec<Nfa>)> {
    let a = Alphabet::parse("ab").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    (0..30)
        .map(|_| {
            let target = common::random_nfa(&mut rng, &a, 3);
            let n = rng.gen_range(1..=2);
            let against = (0..n).map(|_| common::random_nfa(&mut rng, &a, 3)).collect();
            (target, against)
        })
        .collect()
}

fn c4_bsigma1(instances: &[(Nfa, Vec<Nfa>)], violations: &mut Vec<String>) -> Outcome {
    let start = Instant::now();
    let a = Alphabet::parse("ab").unwrap();
    let mut failures = Vec::new();
    let (mut coverable, mut ks) = (0, Vec::new());
    let nonempty = instances.iter().filter(|(t, _)| !t.is_empty()).count();
    for (i, (target, against)) in instances.iter().enumerate() {
        let mut langs = vec![target.clone()];
        langs.extend(against.iter().cloned());
        let ext = multiset(&langs);
        let (imprint, d) =
            decide_universal_covering(&ext, ClassId::Bsigma1, Some(0), MAX_ELEMENTS).unwrap();
        for v in check_universal(&imprint, &ext.tau, MAX_ELEMENTS).unwrap() {
            violations.push(format!("bsigma1 #{i}: {v}"));
        }
        let universal = bsigma1_cover(&ext.tau, &imprint, default_max_k(&a), MAX_STATES).unwrap();
        ks.push(universal.k.unwrap());
        let optimal = universal.optimal && universal.imprint(&ext.tau).unwrap() == imprint;
        let cover = covers::restrict(universal, target).unwrap().prune_empty();
        let rep = covers::verify_cover(&cover, target, against, true, None, MAX_STATES).unwrap();
        let class_ok = rep.class_check.status == CheckStatus::Ok;
        let ok = if d.coverable {
            coverable += 1;
            rep.covers_target && rep.separating && class_ok && optimal
        } else {
            rep.covers_target && !rep.separating && class_ok && optimal
        };
        if !ok {
            failures.push(format!(
                "#{i} coverable={} covers={} separating={} class={:?} optimal={optimal}",
                d.coverable, rep.covers_target, rep.separating, rep.class_check.status
            ));
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        id: 4,
        name: "bsigma1 covers verify (separating iff coverable)",
        pass: failures.is_empty() && elapsed < LIMIT_BSIGMA1,
        detail: format!(
            "30 instances ({nonempty} nonempty targets, {coverable} coverable), k up to {}, failures {:?} in {elapsed:?}",
            ks.iter().max().unwrap(),
            failures
        ),
    }
}

fn c5_monotonicity(instances: &[(Nfa, Vec<Nfa>)], violations: &mut Vec<String>) -> Outcome {
    let mut failures = Vec::new();
    for (i, (target, against)) in instances.iter().enumerate() {
        let mut langs = vec![target.clone()];
        langs.extend(against.iter().cloned());
        let ext = multiset(&langs);
        let rho = &ext.tau;
        let r = rho.semiring();
        let mut imprint = |class: ClassId| {
            let (s, _) = saturate_universal(rho, class, MAX_ELEMENTS).unwrap();
            for v in check_universal(&s, rho, MAX_ELEMENTS).unwrap() {
                violations.push(format!("{class} #{i}: {v}"));
            }
            s
        };
        let at = imprint(ClassId::At);
        let bs = imprint(ClassId::Bsigma1);
        let fo = imprint(ClassId::Fo);
        let aug = ext.augment().unwrap();
        let (fo2_aug, _) = saturate_universal(&aug.tau, ClassId::Fo2, MAX_ELEMENTS).unwrap();
        for v in check_universal(&fo2_aug, &aug.tau, MAX_ELEMENTS).unwrap() {
            violations.push(format!("fo2 #{i}: {v}"));
        }
        let fo2 = project(&fo2_aug, r);
        for (name, x, y) in [
            ("fo ⊆ fo2", &fo, &fo2),
            ("fo2 ⊆ at", &fo2, &at),
            ("fo ⊆ bsigma1", &fo, &bs),
            ("bsigma1 ⊆ at", &bs, &at),
        ] {
            if !x.is_subset(y) {
                failures.push(format!("#{i} {name}"));
            }
        }
        let rec = transition_monoid(target).unwrap();
        let pext = multiset(against).augment().unwrap();
        let alpha = &rec.morphism;
        let (p1, _) = saturate_pointed(alpha, &pext.tau, ClassId::Sigma1, MAX_ELEMENTS).unwrap();
        let (p2, _) = saturate_pointed(alpha, &pext.tau, ClassId::Sigma2, MAX_ELEMENTS).unwrap();
        for (name, p) in [("sigma1", &p1), ("sigma2", &p2)] {
            for v in check_pointed(p, alpha, &pext.tau, MAX_ELEMENTS).unwrap() {
                violations.push(format!("{name} #{i}: {v}"));
            }
        }
        if !p2.is_subset(&p1) {
            failures.push(format!("#{i} sigma2 ⊆ sigma1"));
        }
    }
    Outcome {
        id: 5,
        name: "imprint monotonicity along class inclusions",
        pass: failures.is_empty(),
        detail: format!("30 instances, {} violations {:?}", failures.len(), failures),
    }
}

fn c7_fo2(violations: &mut Vec<String>) -> Outcome {
    let start = Instant::now();
    let a = Alphabet::parse("ab").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut failures = Vec::new();
    let mut sizes = Vec::new();
    let mut pieces = 0;
    while sizes.len() < 15 {
        let n = rng.gen_range(1..=2);
        let langs: Vec<Nfa> = (0..n).map(|_| common::random_nfa(&mut rng, &a, 2)).collect();
        let ext = multiset(&langs).augment().unwrap();
        let size = ext.tau.semiring().size().unwrap_or(u128::MAX);
        if size > FO2_MAX_RATING_SET {
            continue;
        }
        let i = sizes.len();
        sizes.push(size);
        let (s, _) = saturate_universal(&ext.tau, ClassId::Fo2, MAX_ELEMENTS).unwrap();
        for v in check_universal(&s, &ext.tau, MAX_ELEMENTS).unwrap() {
            violations.push(format!("fo2 cover #{i}: {v}"));
        }
        let cover = fo2_universal_cover(&ext.tau, &s, Fo2Options::default()).unwrap();
        pieces += cover.pieces.len();
        let covers = Nfa::universal(&a).is_subset_of(&cover.union_nfa().unwrap(), MAX_STATES).unwrap();
        if !covers || cover.imprint(&ext.tau).unwrap() != s {
            failures.push(format!("#{i} covers={covers}"));
        }
    }
    let elapsed = start.elapsed();
    Outcome {
        id: 7,
        name: "fo2 cover imprint equals the saturated imprint",
        pass: failures.is_empty() && elapsed < LIMIT_FO2,
        detail: format!(
            "15 instances (|R| up to {}, {pieces} pieces in total), failures {:?} in {elapsed:?}",
            sizes.iter().max().unwrap(),
            failures
        ),
    }
}

fn c8_extension() -> Outcome {
    let a = Alphabet::parse("abc").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut failures = Vec::new();
    for i in 0..20 {
        let n = rng.gen_range(1..=3);
        let langs: Vec<Nfa> = (0..n)
            .map(|_| common::random_regex(&mut rng, &a, 3).to_nfa(&a))
            .collect();
        let ext = multiset(&langs);
        let pulled = ext.pullback(&at_imprint(&ext.tau, None).unwrap());
        let mut got: Vec<Vec<usize>> = pulled
            .enumerate(1 << 10)
            .unwrap()
            .iter()
            .map(|e| Semiring::bits_of(e))
            .collect();
        got.sort_by(|x, y| x.len().cmp(&y.len()).then(x.cmp(y)));
        if got != oracle::at_imprint(&langs).unwrap() {
            failures.push(i);
        }
    }
    Outcome {
        id: 8,
        name: "pulled-back AT imprint equals the direct atom imprint",
        pass: failures.is_empty(),
        detail: format!("20 multisets, mismatches {failures:?}"),
    }
}

fn c9_templates() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut failures = Vec::new();
    let mut longest = 0;
    for i in 0..100 {
        let a = Alphabet::parse(if rng.gen_bool(0.5) { "a" } else { "ab" }).unwrap();
        let n = rng.gen_range(1..=3);
        let w = common::random_word(&mut rng, &a, 20);
        let wit = bsigma1_template_witness(&w, n, &a);
        let bound = Witness::length_bound(&w, n);
        let member = common::regex_matches(&wit.regex, &w) && wit.member;
        longest = longest.max(wit.template.len());
        if !wit.template.is_unambiguous() || !member || wit.template.len() as u128 > bound {
            failures.push(format!("#{i} {} n={n}", a.render(&w)));
        }
    }
    Outcome {
        id: 9,
        name: "template witnesses are unambiguous, bounded, and contain the word",
        pass: failures.is_empty(),
        detail: format!("100 words (longest template {longest}), failures {failures:?}"),
    }
}

fn main() {
    let mut violations = Vec::new();
    let mut outcomes = vec![c1_example_imprint(), c2_joint_separation(), c3_sigma1_oracle()];
    let instances = random_instances();
    outcomes.push(c4_bsigma1(&instances, &mut violations));
    outcomes.push(c5_monotonicity(&instances, &mut violations));
    outcomes.push(c7_fo2(&mut violations));
    {
        let a = Alphabet::parse("abc").unwrap();
        let langs: Vec<Nfa> = ["(ab)+", "b(ab)+", "c(ac)+"].iter().map(|t| regex_nfa(t, &a)).collect();
        let ext = multiset(&langs);
        let s = at_imprint(&ext.tau, None).unwrap();
        violations.extend(
            check_universal(&s, &ext.tau, MAX_ELEMENTS)
                .unwrap()
                .into_iter()
                .map(|v| format!("at example: {v}")),
        );
    }
    outcomes.push(Outcome {
        id: 6,
        name: "structural invariants of every computed imprint",
        pass: violations.is_empty(),
        detail: format!("{} violations {:?}", violations.len(), violations),
    });
    outcomes.push(c8_extension());
    outcomes.push(c9_templates());
    outcomes.sort_by_key(|o| o.id);

    let mut out = std::io::stdout().lock();
    let mut failed = 0;
    for o in &outcomes {
        failed += !o.pass as usize;
        writeln!(
            out,
            "[{}] criterion {}: {} -- {}",
            if o.pass { "PASS" } else { "FAIL" },
            o.id,
            o.name,
            o.detail
        )
        .unwrap();
    }
    writeln!(out, "{} of {} criteria passed", outcomes.len() - failed, outcomes.len()).unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
