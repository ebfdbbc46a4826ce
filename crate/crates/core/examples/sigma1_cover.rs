//! Upward-closed covers: minimal words of each monoid element, and
//! separation checked against the upward-closure oracle.

use regcover::covers::{minimal_words, sigma1_cover};
use regcover::lang::{transition_monoid, Alphabet, Regex};
use regcover::pipeline::{cmd_separate, oracle, LangSpec, Options};
use regcover::saturation::ClassId;

fn main() -> regcover::Result<()> {
    let a = Alphabet::parse("ab")?;
    let target = Regex::parse("a(a|b)*b", &a)?.to_nfa(&a);
    let rec = transition_monoid(&target)?;
    for s in rec.accepting_elements() {
        let words: Vec<String> = minimal_words(&rec.morphism, s, 1 << 16)?
            .iter()
            .map(|w| a.render(w))
            .collect();
        println!("element {s}: minimal words {words:?}");
    }
    let f: Vec<usize> = rec.accepting_elements().collect();
    let c = sigma1_cover(&rec.morphism, &f, 1 << 16)?;
    for p in &c.pieces {
        println!("  piece {}", p.regex.as_ref().map(|r| r.render(&a)).unwrap_or_default());
    }

    for (l1, l2) in [("a+", "b+"), ("ab", "a"), ("a", "ab")] {
        let v = cmd_separate("ab", ClassId::Sigma1, LangSpec::Text(l1.into()), LangSpec::Text(l2.into()), Options::default())?;
        let o = oracle::sigma1_separable(&Regex::parse(l1, &a)?.to_nfa(&a), &Regex::parse(l2, &a)?.to_nfa(&a))?;
        let sep = v.separator.and_then(|s| s.regex).unwrap_or_else(|| "-".into());
        println!("{l1} from {l2}: separable {} (oracle {o}), separator {sep}", v.coverable);
    }
    Ok(())
}
