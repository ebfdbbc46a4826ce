//! Two-variable first-order covers built by recursion on the sub-alphabet.

use regcover::covers::{fo2_universal_cover, Fo2Options};
use regcover::lang::{Alphabet, Regex};
use regcover::rating::{rm_from_multiset, Language};
use regcover::saturation::{saturate_universal, ClassId};

fn main() -> regcover::Result<()> {
    let a = Alphabet::parse("ab")?;
    let langs = ["(ab)+", "b(a|b)*"]
        .iter()
        .map(|t| Ok(Language::Nfa(Regex::parse(t, &a)?.to_nfa(&a))))
        .collect::<regcover::Result<Vec<_>>>()?;
    let ext = rm_from_multiset(&langs)?.augment()?;
    let (s, stats) = saturate_universal(&ext.tau, ClassId::Fo2, 200_000)?;
    println!("imprint: {} generators after {} rounds", s.len_generators(), stats.iterations);
    let c = fo2_universal_cover(&ext.tau, &s, Fo2Options::default())?;
    println!("{}", c.provenance);
    for p in c.pieces.iter().filter(|p| p.regex.is_some()).take(12) {
        let r = p.regex.as_ref().map(|r| r.render(&a)).unwrap_or_default();
        println!("  {r}  hits {:?}", ext.hit_set(&ext.tau.eval(&p.nfa)?));
    }
    println!("  ... {} pieces in total", c.pieces.len());
    println!("imprint of the cover is optimal: {}", c.imprint(&ext.tau)? == s);
    Ok(())
}
