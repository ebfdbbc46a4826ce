//! Template witnesses: a word together with a template language of bounded
//! piece length containing it.

use regcover::covers::bsigma1_template_witness;
use regcover::lang::Alphabet;

fn main() -> regcover::Result<()> {
    let a = Alphabet::parse("abc")?;
    for (w, n) in [("aabcabcab", 1), ("abcabcabcabc", 2), ("aaabbbccc", 1)] {
        let word = a.word(w)?;
        let wit = bsigma1_template_witness(&word, n, &a);
        println!("{w} (n = {n}):");
        println!("  template   {}", wit.template.render(&a));
        println!("  factors    {:?}", wit.factors.iter().map(|f| a.render(f)).collect::<Vec<_>>());
        println!("  language   {}", wit.regex.render(&a));
        println!("  member {} unambiguous {}", wit.member, wit.template.is_unambiguous());
    }
    Ok(())
}
