//! Pointed saturation: covering with the class of the second level is
//! decided relative to the transition monoid of the target.

use regcover::pipeline::{cmd_cover, Instance, LangSpec, Options};
use regcover::saturation::ClassId;

fn main() -> regcover::Result<()> {
    for (target, against) in [("a(a|b)*", "b(a|b)*"), ("(ab)*", "(ab)*a"), ("(aa)*", "a(aa)*")] {
        let inst = Instance {
            alphabet: "ab".into(),
            class: ClassId::Sigma2,
            target: LangSpec::Text(target.into()),
            against: vec![LangSpec::Text(against.into())],
            options: Options::default(),
        };
        let v = cmd_cover(&inst)?;
        println!(
            "{target} from {against}: separable {} (|M| = {:?}, {} rounds)",
            v.coverable, v.stats.monoid_size, v.stats.iterations
        );
    }
    Ok(())
}
