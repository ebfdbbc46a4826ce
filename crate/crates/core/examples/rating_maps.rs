//! Semirings and the rating map extension built from a multiset of
//! languages.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use regcover::algebra::Semiring;
use regcover::lang::{Alphabet, Regex};
use regcover::rating::{rm_from_multiset, Language};

fn main() -> regcover::Result<()> {
    let rel = Semiring::relation(2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    println!("{}: laws {:?}", rel.describe(), rel.validate(&mut rng, 0));

    let a = Alphabet::parse("abc")?;
    let langs: Vec<Language> = ["(ab)+", "b(ab)+", "c(ac)+"]
        .iter()
        .map(|t| Ok(Language::Nfa(Regex::parse(t, &a)?.to_nfa(&a))))
        .collect::<regcover::Result<_>>()?;
    let ext = rm_from_multiset(&langs)?;
    let r = ext.tau.semiring();
    println!("rating set: {} (2^{:.1} elements)", r.describe(), ext.size_log2());
    for w in ["ab", "bab", "cac", "abc"] {
        let x = ext.tau.word(&a.word(w)?);
        println!("  ρ({w}) hits {:?}", ext.hit_set(&x));
    }
    let k = Regex::parse("(a|b)*", &a)?.to_nfa(&a);
    println!("  ρ((a|b)*) hits {:?}", ext.hit_set(&ext.tau.eval(&k)?));
    Ok(())
}
