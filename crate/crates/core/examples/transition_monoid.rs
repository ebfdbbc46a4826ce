//! Transition monoid of an automaton and the morphism recognizing it.

use regcover::lang::{transition_monoid, Alphabet, Regex};

fn main() -> regcover::Result<()> {
    let a = Alphabet::parse("ab")?;
    let rec = transition_monoid(&Regex::parse("(ab)*", &a)?.to_nfa(&a))?;
    let m = &rec.morphism;
    println!("|M| = {}, identity = {}", m.size(), m.identity());
    for x in 0..m.size() {
        let w = m.witness(x).map(|w| a.render(&w)).unwrap_or_default();
        println!(
            "  {x}: witness '{w}', idempotent {}, accepting {}",
            m.is_idempotent(x),
            rec.accepting[x]
        );
    }
    let w = a.word("abab")?;
    println!("α(abab) = {}, accepted {}", m.image(&w), rec.accepts(&w));
    println!("morphism laws: {:?}", m.validate());
    Ok(())
}
