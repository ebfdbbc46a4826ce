//! Regex parsing, automata operations and language queries.

use regcover::lang::{Alphabet, Regex};

fn main() -> regcover::Result<()> {
    let a = Alphabet::parse("ab")?;
    let l = Regex::parse("(ab)+", &a)?.to_nfa(&a);
    let up = l.upward_closure();
    let min = up.determinize(1 << 16)?.minimize();
    println!("(ab)+ has an NFA with {} states", l.state_count());
    println!("its upward closure: {} ({} DFA states)", up.to_regex().render(&a), min.state_count());
    let c = l.complement()?;
    for w in ["", "ab", "aab", "abab"] {
        let w = a.word(w)?;
        println!("{:>6}: in L {}, in complement {}", format!("'{}'", a.render(&w)), l.accepts(&w), c.accepts(&w));
    }
    let shortest = c.shortest_word().map(|w| a.render(&w));
    println!("shortest word outside L: {shortest:?}");
    println!("L ⊆ ↑L: {}", l.is_subset_of(&up, 1 << 16)?);
    println!("{}", serde_json::to_string(&l.to_json()).expect("json"));
    Ok(())
}
