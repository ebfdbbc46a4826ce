//! Optimal imprints of one multiset for every universal class, with the
//! inclusions expected from the class hierarchy.

use regcover::pipeline::{cmd_imprint_chain, Instance, LangSpec, Options};
use regcover::saturation::ClassId;

fn main() -> regcover::Result<()> {
    let inst = Instance {
        alphabet: "ab".into(),
        class: ClassId::At,
        target: LangSpec::universal(),
        against: ["a(a|b)*", "b(a|b)*", "(ab)+"].iter().map(|t| LangSpec::Text((*t).into())).collect(),
        options: Options::default(),
    };
    let chain = cmd_imprint_chain(&inst)?;
    for r in &chain.reports {
        println!("{:>8}: {:?}", r.class.to_string(), r.subsets);
    }
    for (a, b, ok) in &chain.inclusions {
        println!("{a} ⊆ {b}: {ok}");
    }
    Ok(())
}
