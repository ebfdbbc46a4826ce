//! Optimal imprint for alphabet testable covers, compared with the
//! independent atom oracle.

use regcover::lang::{Alphabet, Regex};
use regcover::pipeline::{cmd_imprint, oracle, Instance, LangSpec, Options};
use regcover::saturation::ClassId;

fn main() -> regcover::Result<()> {
    let against = ["(ab)+", "b(ab)+", "c(ac)+"];
    let inst = Instance {
        alphabet: "abc".into(),
        class: ClassId::At,
        target: LangSpec::universal(),
        against: against.iter().map(|t| LangSpec::Text((*t).into())).collect(),
        options: Options::default(),
    };
    let r = cmd_imprint(&inst)?;
    println!("hit sets of the optimal imprint: {:?}", r.subsets);

    let a = Alphabet::parse("abc")?;
    let langs = against
        .iter()
        .map(|t| Ok(Regex::parse(t, &a)?.to_nfa(&a)))
        .collect::<regcover::Result<Vec<_>>>()?;
    println!("atom oracle:                     {:?}", oracle::at_imprint(&langs)?);
    Ok(())
}
