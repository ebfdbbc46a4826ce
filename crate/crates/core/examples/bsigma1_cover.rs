//! Piecewise testable covers: the ~k partition and an optimal cover found
//! by deepening k.

use regcover::covers::{bsigma1_cover, pt_partition};
use regcover::lang::{Alphabet, Regex};
use regcover::rating::{rm_from_multiset, Language};
use regcover::saturation::{saturate_universal, ClassId};

fn main() -> regcover::Result<()> {
    let a = Alphabet::parse("ab")?;
    for k in 0..4 {
        println!("~{k} has {} classes", pt_partition(k, &a, 1 << 16)?.state_count());
    }
    let pa = pt_partition(2, &a, 1 << 16)?;
    let l = Regex::parse("(a|b)*a(a|b)*b(a|b)*", &a)?.to_nfa(&a);
    let even = Regex::parse("(aa)*", &a)?.to_nfa(&a);
    println!("a..b is a union of ~2 classes: {}", pa.is_union_of_classes(&l, 1 << 16)?);
    println!("(aa)* is a union of ~2 classes: {}", pa.is_union_of_classes(&even, 1 << 16)?);

    let langs = [Language::Nfa(l), Language::Nfa(Regex::parse("b*a*", &a)?.to_nfa(&a))];
    let ext = rm_from_multiset(&langs)?;
    let (s, _) = saturate_universal(&ext.tau, ClassId::Bsigma1, 200_000)?;
    let c = bsigma1_cover(&ext.tau, &s, 4, 1 << 20)?;
    println!("optimal cover at k = {:?} (optimal {}):", c.k, c.optimal);
    for p in &c.pieces {
        println!("  {}", p.regex.as_ref().map(|r| r.render(&a)).unwrap_or_else(|| "<automaton>".into()));
    }
    Ok(())
}
