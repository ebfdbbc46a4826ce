//! A language that cannot be separated from either of two languages alone,
//! yet has a cover separating it from both at once.

use regcover::pipeline::{cmd_cover, Instance, LangSpec, Options};
use regcover::saturation::ClassId;

fn decide(against: &[&str]) -> regcover::Result<()> {
    let inst = Instance {
        alphabet: "abc".into(),
        class: ClassId::At,
        target: LangSpec::Text("a+|b+".into()),
        against: against.iter().map(|t| LangSpec::Text((*t).into())).collect(),
        options: Options {
            emit_cover: true,
            verify: true,
            ..Options::default()
        },
    };
    let v = cmd_cover(&inst)?;
    println!("a+|b+ against {against:?}: coverable {}", v.coverable);
    if let Some(c) = &v.cover {
        for p in &c.pieces {
            println!("  piece {}", p.regex.as_deref().unwrap_or("<automaton>"));
        }
    }
    Ok(())
}

fn main() -> regcover::Result<()> {
    decide(&["b+|c+"])?;
    decide(&["c+|a+"])?;
    decide(&["b+|c+", "c+|a+"])
}
