use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use regcover::lang::{Alphabet, Nfa};
use regcover::pipeline::{
    cmd_cover, cmd_imprint, cmd_imprint_chain, cmd_member, cmd_separate, oracle, Instance,
    LangSpec, Options,
};
use regcover::saturation::ClassId;
use regcover::{Error, Result};

#[derive(Parser)]
#[command(name = "regcover", version, about = "Covering and separation for regular languages")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the target can be covered by class languages each
    /// missing one of the `--against` languages.
    Cover(Shared),
    /// Decide separability of `--target` from a single `--against`.
    Separate(Shared),
    /// Decide whether `--target` belongs to the class.
    Member(Shared),
    /// Dump the optimal imprint of the `--against` multiset (`--class all`
    /// compares every universal class).
    Imprint(Shared),
    /// Independent oracles used for cross-validation.
    Oracle {
        which: OracleKind,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        shared: Shared,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleKind {
    /// `↑L1 ∩ L2 = ∅`.
    Sigma1Sep,
    /// The `~_k` partition, and whether `--target` is a union of classes.
    PtK,
    /// Atom imprint of the `--against` multiset.
    At,
}

#[derive(Args, Clone)]
struct Shared {
    /// Instance file (JSON); flags given on the command line override it.
    #[arg(long)]
    instance: Option<String>,
    /// at, sigma1, bsigma1, sigma2, fo2, fo (or `all` for `imprint`).
    #[arg(long)]
    class: Option<String>,
    #[arg(long)]
    alphabet: Option<String>,
    /// Regex, `%universal`, inline NFA JSON, or `@file`.
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    against: Vec<String>,
    #[arg(long)]
    emit_cover: bool,
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    json: bool,
    #[arg(long)]
    max_elements: Option<usize>,
    #[arg(long)]
    max_k: Option<usize>,
    #[arg(long)]
    max_states: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
}

fn read_spec(text: &str) -> Result<LangSpec> {
    match text.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|t| LangSpec::Text(t.trim().to_string()))
            .map_err(|e| Error::Invalid(format!("{path}: {e}"))),
        None => Ok(LangSpec::Text(text.to_string())),
    }
}

impl Shared {
    /// Merges the instance file with the command-line flags.
    fn instance(&self, default_class: Option<ClassId>) -> Result<Instance> {
        let mut inst = match &self.instance {
            Some(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| Error::Invalid(format!("{path}: {e}")))?;
                Instance::parse_json(&text)?
            }
            None => Instance {
                alphabet: String::new(),
                class: ClassId::At,
                target: LangSpec::universal(),
                against: Vec::new(),
                options: Options::default(),
            },
        };
        match (&self.class, default_class) {
            (Some(c), _) => inst.class = c.parse()?,
            (None, Some(c)) if self.instance.is_none() => inst.class = c,
            (None, _) if self.instance.is_none() => {
                return Err(Error::Invalid("--class is required".into()))
            }
            _ => {}
        }
        if let Some(a) = &self.alphabet {
            inst.alphabet = a.clone();
        }
        if inst.alphabet.is_empty() {
            return Err(Error::Invalid("--alphabet is required".into()));
        }
        if let Some(t) = &self.target {
            inst.target = read_spec(t)?;
        }
        if !self.against.is_empty() {
            inst.against = self.against.iter().map(|t| read_spec(t)).collect::<Result<_>>()?;
        }
        let o = &mut inst.options;
        o.emit_cover |= self.emit_cover;
        o.verify |= self.verify;
        o.json |= self.json;
        if let Some(n) = self.max_elements {
            o.max_elements = n;
        }
        if self.max_k.is_some() {
            o.max_k = self.max_k;
        }
        if let Some(n) = self.max_states {
            o.max_states = n;
        }
        if let Some(s) = self.seed {
            o.seed = s;
        }
        Ok(inst)
    }
}

fn print<T: serde::Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
    } else {
        print!("{}", text());
    }
}

fn single_against(inst: &Instance) -> Result<LangSpec> {
    match inst.against.as_slice() {
        [l] => Ok(l.clone()),
        _ => Err(Error::Invalid("exactly one --against language is required".into())),
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Cover(s) => {
            let inst = s.instance(None)?;
            let v = cmd_cover(&inst)?;
            print(inst.options.json, &v, || v.render_text());
        }
        Command::Separate(s) => {
            let inst = s.instance(None)?;
            let l2 = single_against(&inst)?;
            let v = cmd_separate(&inst.alphabet, inst.class, inst.target.clone(), l2, inst.options.clone())?;
            print(inst.options.json, &v, || v.render_text());
        }
        Command::Member(s) => {
            let inst = s.instance(None)?;
            let v = cmd_member(&inst.alphabet, inst.class, inst.target.clone(), inst.options.clone())?;
            print(inst.options.json, &v, || {
                format!("member: {}\n{}", v.coverable, v.render_text())
            });
        }
        Command::Imprint(s) => {
            if s.class.as_deref() == Some("all") {
                let shared = Shared { class: Some("at".into()), ..s };
                let inst = shared.instance(None)?;
                let chain = cmd_imprint_chain(&inst)?;
                print(inst.options.json, &chain, || {
                    let mut out = String::new();
                    for r in &chain.reports {
                        out.push_str(&format!("{}: {:?}\n", r.class, r.subsets));
                    }
                    for (a, b, ok) in &chain.inclusions {
                        out.push_str(&format!("{a} ⊆ {b}: {ok}\n"));
                    }
                    out
                });
            } else {
                let inst = s.instance(None)?;
                let r = cmd_imprint(&inst)?;
                print(inst.options.json, &r, || {
                    let mut out = format!("class {}: {} subsets\n", r.class, r.subsets.len());
                    for (i, l) in r.languages.iter().enumerate() {
                        out.push_str(&format!("  [{i}] {l}\n"));
                    }
                    for x in &r.subsets {
                        out.push_str(&format!("  {x:?}\n"));
                    }
                    out.push_str(&format!(
                        "raw generators: {}, |R| = {}\n",
                        r.raw_generators, r.rating_set_size
                    ));
                    out
                });
            }
        }
        Command::Oracle { which, k, shared } => {
            let inst = shared.instance(Some(ClassId::At))?;
            let a = Alphabet::parse(&inst.alphabet)?;
            let json = inst.options.json;
            match which {
                OracleKind::Sigma1Sep => {
                    let l1 = inst.target.to_nfa(&a)?;
                    let l2 = single_against(&inst)?.to_nfa(&a)?;
                    let sep = oracle::sigma1_separable(&l1, &l2)?;
                    print(json, &serde_json::json!({ "separable": sep }), || {
                        format!("separable: {sep}\n")
                    });
                }
                OracleKind::PtK => {
                    let k = k.ok_or_else(|| Error::Invalid("--k is required".into()))?;
                    let query = if inst.target.is_universal() {
                        None
                    } else {
                        Some(inst.target.to_nfa(&a)?)
                    };
                    let r = oracle::pt_k(k, &a, query.as_ref(), inst.options.max_states)?;
                    print(json, &r, || {
                        let mut out = format!("~{} has {} classes\n", r.k, r.classes);
                        for c in &r.class_regexes {
                            out.push_str(&format!("  {}\n", c.as_deref().unwrap_or("<large>")));
                        }
                        if let Some(m) = r.member {
                            out.push_str(&format!("target is a union of classes: {m}\n"));
                        }
                        out
                    });
                }
                OracleKind::At => {
                    let langs: Vec<Nfa> =
                        inst.against.iter().map(|l| l.to_nfa(&a)).collect::<Result<_>>()?;
                    let subsets = oracle::at_imprint(&langs)?;
                    print(json, &subsets, || {
                        subsets.iter().map(|s| format!("{s:?}\n")).collect()
                    });
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource() { 3 } else { 2 })
        }
    }
}
