//! The `facterm` command line: every subcommand reads JSON (a path, `-` for
//! stdin, or inline text starting with `{` or `[`) and writes one JSON
//! document to stdout.
//!
//! Exit codes: 0 on success, 1 when the input is well-formed but the
//! computation or check fails (`{"error": ..., "witness": ...}`), 2 when the
//! input cannot be read or parsed.

use std::collections::BTreeMap;
use std::io::Read;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use facterm::fincat::{check_fs, check_fs_functor, complete, core_groupoid, is_complete, FSCategory, FSFunctor};
use facterm::fmor::{parse_word, word_to_string};
use facterm::nerve::{nerve_table, nerve_value, restrict, segal_check, ModelTable};
use facterm::orientals::{compose_cells, enumerate_cells, validate_cell, OrCell};
use facterm::sdelta::homology;
use facterm::spans::{check_beck, distlaw_from_fs, fs_from_distlaw, functor_from_lax_data, lax_data_from_functor, BaseDistLaw, DistLaw};
use facterm::{
    canonical_word, classify, compose, factor_active_inert, factor_covering_inclusion, from_word, Error, FMorphism,
    FString, GeneratorToken,
};

pub const BOUND_VAR: &str = "FACTERM_BOUND";

/// Enumeration limits: longest string, and most objects for commands that
/// enumerate labelings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub string_len: usize,
    pub objects: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { string_len: 6, objects: 4 }
    }
}

impl Bounds {
    /// `"N"` sets the string length, `"N,M"` both limits.
    pub fn parse(text: &str) -> Result<Self, String> {
        let nums: Vec<usize> = text
            .split(',')
            .map(|p| p.trim().parse().map_err(|_| format!("{BOUND_VAR} must be N or N,M, got {text:?}")))
            .collect::<Result<_, _>>()?;
        match nums[..] {
            [s] => Ok(Bounds { string_len: s, ..Bounds::default() }),
            [s, o] => Ok(Bounds { string_len: s, objects: o }),
            _ => Err(format!("{BOUND_VAR} must be N or N,M, got {text:?}")),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "facterm", version, about = "Exact computations with grid strings and factorization systems")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical word of a morphism given by a word on a source string, or as JSON.
    Normalize {
        #[arg(long)]
        source: Option<String>,
        #[arg(long)]
        word: Option<String>,
        #[arg(long)]
        input: Option<String>,
    },
    /// `g ∘ f` from `{"g": .., "f": ..}`.
    Compose {
        #[arg(long)]
        input: String,
    },
    /// Split a morphism in one of the two factorization systems.
    Factor {
        #[arg(long, value_enum)]
        system: System,
        #[arg(long)]
        input: String,
    },
    /// Class membership flags of a morphism.
    Classify {
        #[arg(long)]
        input: String,
    },
    /// Check that a category with marked H and V is a factorization system.
    CheckFs {
        #[arg(long)]
        input: String,
    },
    /// Nerve values on one string, or the whole table up to a bound.
    Nerve {
        #[arg(long)]
        input: String,
        #[arg(long)]
        string: Option<String>,
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Restrict a labeling along a morphism: `{"category", "morphism", "labeling"}`.
    Restrict {
        #[arg(long)]
        input: String,
    },
    /// Check the Segal condition of a table on one string or on all of them.
    SegalCheck {
        #[arg(long)]
        input: String,
        #[arg(long)]
        string: Option<String>,
    },
    /// The groupoid core.
    Core {
        #[arg(long)]
        input: String,
    },
    /// Collapse the core, returning the completion and the quotient functor.
    Complete {
        #[arg(long)]
        input: String,
    },
    /// Distributive laws between the two classes.
    Distlaw {
        #[command(subcommand)]
        action: DistlawAction,
    },
    /// Distributive laws graded over a base factorization system.
    Laxdata {
        #[command(subcommand)]
        action: LaxdataAction,
    },
    /// Integer homology of the square-probe simplicial set of a string.
    Homology {
        #[arg(long)]
        string: String,
    },
    /// Cells of low orientals.
    Orientals {
        #[command(subcommand)]
        action: OrientalsAction,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum System {
    ActiveInert,
    CoveringInclusion,
}

#[derive(Subcommand, Debug)]
enum DistlawAction {
    Check {
        #[arg(long)]
        input: String,
    },
    FromFs {
        #[arg(long)]
        input: String,
    },
    ToFs {
        #[arg(long)]
        input: String,
    },
}

#[derive(Subcommand, Debug)]
enum LaxdataAction {
    /// `{"total", "base", "functor"}` to graded data.
    Extract {
        #[arg(long)]
        input: String,
    },
    /// Graded data back to a total system and its projection.
    Reconstruct {
        #[arg(long)]
        input: String,
    },
}

#[derive(Subcommand, Debug)]
enum OrientalsAction {
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: Option<usize>,
    },
    /// A cell as JSON via `--input`, or in display form via `--cell` and `--n`.
    Validate {
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        cell: Option<String>,
        #[arg(long)]
        n: Option<usize>,
    },
    /// `y *_p x` from `{"y", "x", "p"}`.
    Compose {
        #[arg(long)]
        input: String,
    },
}

/// A failed run: exit code and the JSON error document.
#[derive(Debug)]
struct Failure {
    code: i32,
    error: String,
    witness: Value,
}

impl Failure {
    fn malformed(error: impl ToString) -> Self {
        Failure { code: 2, error: error.to_string(), witness: Value::Null }
    }

    fn domain(error: impl ToString, witness: Value) -> Self {
        Failure { code: 1, error: error.to_string(), witness }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) => Failure::malformed(e),
            Error::Word { ref source, .. } if matches!(**source, Error::Parse(_)) => Failure::malformed(e),
            other => Failure::domain(other, Value::Null),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::malformed(format!("invalid JSON: {e}"))
    }
}

type Outcome = Result<Value, Failure>;

struct Ctx<'a> {
    bounds: Bounds,
    stdin: &'a mut dyn Read,
    stdin_used: bool,
}

impl Ctx<'_> {
    /// Inline JSON, `-` for stdin, or a file path.
    fn text(&mut self, spec: &str) -> Result<String, Failure> {
        let trimmed = spec.trim_start();
        if trimmed.starts_with('{') || trimmed.starts_with('[') {
            return Ok(spec.to_string());
        }
        if spec == "-" {
            if self.stdin_used {
                return Err(Failure::malformed("stdin can only be read once"));
            }
            self.stdin_used = true;
            let mut buf = String::new();
            self.stdin.read_to_string(&mut buf).map_err(|e| Failure::malformed(format!("cannot read stdin: {e}")))?;
            return Ok(buf);
        }
        std::fs::read_to_string(spec).map_err(|e| Failure::malformed(format!("cannot read {spec}: {e}")))
    }

    fn json<T: for<'de> Deserialize<'de>>(&mut self, spec: &str) -> Result<T, Failure> {
        let text = self.text(spec)?;
        Ok(serde_json::from_str(&text)?)
    }
}

fn string_arg(s: &str) -> Result<FString, Failure> {
    s.parse().map_err(Failure::from)
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize")
}

/// A functor by names: `{"objects": {src: tgt}, "morphisms": {src: tgt}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedFunctor {
    pub objects: BTreeMap<String, String>,
    pub morphisms: BTreeMap<String, String>,
}

impl NamedFunctor {
    pub fn from_functor(src: &FSCategory, tgt: &FSCategory, p: &FSFunctor) -> Self {
        let (c, d) = (src.cat(), tgt.cat());
        NamedFunctor {
            objects: (0..c.num_objects()).map(|x| (c.object_name(x).into(), d.object_name(p.objects[x]).into())).collect(),
            morphisms: (0..c.num_morphisms()).map(|f| (c.name(f).into(), d.name(p.morphisms[f]).into())).collect(),
        }
    }

    pub fn to_functor(&self, src: &FSCategory, tgt: &FSCategory) -> facterm::Result<FSFunctor> {
        let (c, d) = (src.cat(), tgt.cat());
        let look = |map: &BTreeMap<String, String>, name: &str, find: &dyn Fn(&str) -> Option<usize>| {
            let image = map.get(name).ok_or_else(|| Error::Parse(format!("functor does not map {name:?}")))?;
            find(image).ok_or_else(|| Error::Parse(format!("functor sends {name:?} to unknown {image:?}")))
        };
        if self.objects.len() != c.num_objects() || self.morphisms.len() != c.num_morphisms() {
            return Err(Error::Parse("functor lists names outside its source".into()));
        }
        let objects = (0..c.num_objects())
            .map(|x| look(&self.objects, c.object_name(x), &|n| d.object_index(n)))
            .collect::<facterm::Result<_>>()?;
        let morphisms = (0..c.num_morphisms())
            .map(|f| look(&self.morphisms, c.name(f), &|n| d.morphism_index(n)))
            .collect::<facterm::Result<_>>()?;
        Ok(FSFunctor { objects, morphisms })
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComposeInput {
    g: FMorphism,
    f: FMorphism,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RestrictInput {
    category: FSCategory,
    morphism: FMorphism,
    labeling: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtractInput {
    total: FSCategory,
    base: FSCategory,
    functor: NamedFunctor,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CellComposeInput {
    y: OrCell,
    x: OrCell,
    p: usize,
}

fn checked_fs(f: &FSCategory) -> Result<(), Failure> {
    check_fs(f).map_err(|v| Failure::domain(format!("not a factorization system: {v}"), to_value(&v)))
}

fn word_from(text: &str) -> Result<Vec<GeneratorToken>, Failure> {
    if text.trim_start().starts_with('[') {
        Ok(serde_json::from_str(text)?)
    } else {
        Ok(parse_word(text)?)
    }
}

fn dispatch(cmd: Command, ctx: &mut Ctx<'_>) -> Outcome {
    match cmd {
        Command::Normalize { source, word, input } => {
            let f = match (source, word, input) {
                (Some(s), Some(w), None) => {
                    let s = string_arg(&s)?;
                    let text = if w.trim_start().starts_with('[') || std::path::Path::new(&w).is_file() || w == "-" {
                        ctx.text(&w)?
                    } else {
                        w
                    };
                    from_word(&word_from(&text)?, &s)?
                }
                (None, None, Some(i)) => ctx.json::<FMorphism>(&i)?,
                _ => return Err(Failure::malformed("normalize takes --source with --word, or --input")),
            };
            let w = canonical_word(&f);
            Ok(json!({ "morphism": to_value(&f), "canonical": to_value(&w), "text": word_to_string(&w) }))
        }
        Command::Compose { input } => {
            let ComposeInput { g, f } = ctx.json(&input)?;
            Ok(to_value(&compose(&g, &f)?))
        }
        Command::Factor { system, input } => {
            let f: FMorphism = ctx.json(&input)?;
            Ok(match system {
                System::ActiveInert => {
                    let (act, inrt) = factor_active_inert(&f);
                    json!({ "active": to_value(&act), "inert": to_value(&inrt) })
                }
                System::CoveringInclusion => {
                    let (cov, inc) = factor_covering_inclusion(&f)?;
                    json!({ "covering": to_value(&cov), "inclusion": to_value(&inc) })
                }
            })
        }
        Command::Classify { input } => {
            let f: FMorphism = ctx.json(&input)?;
            Ok(to_value(&classify(&f)))
        }
        Command::CheckFs { input } => {
            let f: FSCategory = ctx.json(&input)?;
            checked_fs(&f)?;
            Ok(json!({ "ok": true }))
        }
        Command::Nerve { input, string, bound } => {
            let f: FSCategory = ctx.json(&input)?;
            checked_fs(&f)?;
            if f.num_objects() > ctx.bounds.objects {
                return Err(Error::Resource(format!(
                    "{} objects exceed the bound {}; raise it with {BOUND_VAR}",
                    f.num_objects(),
                    ctx.bounds.objects
                ))
                .into());
            }
            match string {
                Some(s) => {
                    let s = string_arg(&s)?;
                    let mut names: Vec<String> = nerve_value(&f, &s)?.iter().map(|l| l.name(f.cat())).collect();
                    names.sort();
                    Ok(json!({ "S": s.to_string(), "values": names }))
                }
                None => {
                    let bound = bound.unwrap_or(ctx.bounds.string_len);
                    if bound > ctx.bounds.string_len {
                        return Err(Error::Resource(format!("bound {bound} exceeds {}", ctx.bounds.string_len)).into());
                    }
                    Ok(to_value(&nerve_table(&f, bound)?))
                }
            }
        }
        Command::Restrict { input } => {
            let RestrictInput { category, morphism, labeling } = ctx.json(&input)?;
            checked_fs(&category)?;
            let labs = nerve_value(&category, morphism.target())?;
            let lab = labs.iter().find(|l| l.name(category.cat()) == labeling).ok_or_else(|| {
                Failure::domain(format!("{labeling:?} is not a labeling of {}", morphism.target()), Value::Null)
            })?;
            let out = restrict(&category, &morphism, lab)?;
            Ok(json!({ "S": morphism.source().to_string(), "labeling": out.name(category.cat()) }))
        }
        Command::SegalCheck { input, string } => {
            let t: ModelTable = ctx.json(&input)?;
            let strings: Vec<FString> = match string {
                Some(s) => vec![string_arg(&s)?],
                None => FString::all_up_to(t.bound().min(ctx.bounds.string_len)),
            };
            let mut failures = Vec::new();
            for s in &strings {
                if !segal_check(&t, s)? {
                    failures.push(s.to_string());
                }
            }
            if failures.is_empty() {
                Ok(json!({ "ok": true, "checked": strings.len() }))
            } else {
                Err(Failure::domain("the Segal condition fails", json!({ "strings": failures })))
            }
        }
        Command::Core { input } => {
            let f: FSCategory = ctx.json(&input)?;
            checked_fs(&f)?;
            Ok(to_value(&core_groupoid(&f)))
        }
        Command::Complete { input } => {
            let f: FSCategory = ctx.json(&input)?;
            checked_fs(&f)?;
            let (g, unit) = complete(&f)?;
            Ok(json!({
                "already_complete": is_complete(&f),
                "completion": to_value(&g),
                "unit": to_value(&NamedFunctor::from_functor(&f, &g, &unit)),
            }))
        }
        Command::Distlaw { action } => match action {
            DistlawAction::Check { input } => {
                let d: DistLaw = ctx.json(&input)?;
                check_beck(&d).map_err(|v| Failure::domain(format!("distributive law violated: {v}"), to_value(&v)))?;
                Ok(json!({ "ok": true }))
            }
            DistlawAction::FromFs { input } => {
                let f: FSCategory = ctx.json(&input)?;
                checked_fs(&f)?;
                Ok(to_value(&distlaw_from_fs(&f)?))
            }
            DistlawAction::ToFs { input } => {
                let d: DistLaw = ctx.json(&input)?;
                check_beck(&d).map_err(|v| Failure::domain(format!("distributive law violated: {v}"), to_value(&v)))?;
                Ok(to_value(&fs_from_distlaw(&d)?))
            }
        },
        Command::Laxdata { action } => match action {
            LaxdataAction::Extract { input } => {
                let ExtractInput { total, base, functor } = ctx.json(&input)?;
                checked_fs(&total)?;
                checked_fs(&base)?;
                let p = functor.to_functor(&total, &base)?;
                check_fs_functor(&total, &base, &p)?;
                Ok(to_value(&lax_data_from_functor(&total, &base, &p)?))
            }
            LaxdataAction::Reconstruct { input } => {
                let b: BaseDistLaw = ctx.json(&input)?;
                let (g, p) = functor_from_lax_data(&b)?;
                Ok(json!({ "total": to_value(&g), "functor": to_value(&NamedFunctor::from_functor(&g, &b.base, &p)) }))
            }
        },
        Command::Homology { string } => {
            let s = string_arg(&string)?;
            if s.len() > ctx.bounds.string_len {
                return Err(Error::Resource(format!(
                    "length {} exceeds the bound {}; raise it with {BOUND_VAR}",
                    s.len(),
                    ctx.bounds.string_len
                ))
                .into());
            }
            Ok(json!({ "S": s.to_string(), "H": to_value(&homology(&s)) }))
        }
        Command::Orientals { action } => match action {
            OrientalsAction::Enumerate { n, k } => match k {
                Some(k) => Ok(to_value(&enumerate_cells(n, k)?)),
                None => {
                    let all = (0..=n).map(|k| enumerate_cells(n, k)).collect::<facterm::Result<Vec<_>>>()?;
                    Ok(to_value(&all))
                }
            },
            OrientalsAction::Validate { input, cell, n } => {
                let c = match (input, cell, n) {
                    (Some(i), None, None) => ctx.json::<OrCell>(&i)?,
                    (None, Some(c), Some(n)) => OrCell::parse_in(n, &c)?,
                    _ => return Err(Failure::malformed("validate takes --input, or --cell with --n")),
                };
                validate_cell(&c).map_err(|v| Failure::domain(format!("invalid cell: {v}"), to_value(&v)))?;
                Ok(json!({ "ok": true, "dim": c.dim(), "degenerate": c.is_degenerate(), "cell": c.to_string() }))
            }
            OrientalsAction::Compose { input } => {
                let CellComposeInput { y, x, p } = ctx.json(&input)?;
                for c in [&x, &y] {
                    validate_cell(c).map_err(|v| Failure::domain(format!("invalid cell {c}: {v}"), to_value(&v)))?;
                }
                let z = compose_cells(&y, &x, p)?;
                Ok(json!({ "cell": to_value(&z), "display": z.to_string() }))
            }
        },
    }
}

fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

/// Run with explicit bounds; returns the exit code and stdout.
pub fn run_with<I, T>(bounds: Bounds, args: I, stdin: &mut dyn Read) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return (0, e.to_string());
            }
            if e.kind() == ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand {
                return (2, render(&json!({ "error": "missing subcommand; see --help", "witness": Value::Null })));
            }
            let first = e.to_string().lines().next().unwrap_or_default().trim_start_matches("error: ").to_string();
            return (2, render(&json!({ "error": first, "witness": Value::Null })));
        }
    };
    let mut ctx = Ctx { bounds, stdin, stdin_used: false };
    match dispatch(cli.cmd, &mut ctx) {
        Ok(v) => (0, render(&v)),
        Err(f) => (f.code, render(&json!({ "error": f.error, "witness": f.witness }))),
    }
}

/// Run with bounds from `FACTERM_BOUND`.
pub fn run<I, T>(args: I, stdin: &mut dyn Read) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let bounds = match std::env::var(BOUND_VAR) {
        Ok(text) => match Bounds::parse(&text) {
            Ok(b) => b,
            Err(e) => return (2, render(&json!({ "error": e, "witness": Value::Null }))),
        },
        Err(_) => Bounds::default(),
    };
    run_with(bounds, args, stdin)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn go(args: &[&str]) -> (i32, Value) {
        let mut argv = vec!["facterm"];
        argv.extend_from_slice(args);
        let (code, out) = run_with(Bounds::default(), argv, &mut std::io::empty());
        (code, serde_json::from_str(&out).unwrap())
    }

    #[test]
    fn bounds_parse() {
        assert_eq!(Bounds::parse("5").unwrap(), Bounds { string_len: 5, objects: 4 });
        assert_eq!(Bounds::parse("3,2").unwrap(), Bounds { string_len: 3, objects: 2 });
        assert!(Bounds::parse("x").is_err());
        assert!(Bounds::parse("1,2,3").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(go(&["homology", "--string", "(1|1)"]).0, 0);
        assert_eq!(go(&["homology", "--string", "hxv"]).0, 2);
        assert_eq!(go(&["frobnicate"]).0, 2);
        assert_eq!(go(&["homology", "--string", "hhhhhhhh"]).0, 1);
        let (code, v) = go(&["orientals", "validate", "--cell", "({0},{1}|{01},{01})", "--n", "1"]);
        assert_eq!(code, 1);
        assert_eq!(v["witness"]["violation"], "movement");
    }

    #[test]
    fn stdin_is_read_once() {
        let mut input: &[u8] = br#"{"source":"h","target":"hh","a":[0,1],"b":[0]}"#;
        let (code, out) = run_with(Bounds::default(), ["facterm", "classify", "--input", "-"], &mut input);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("\"inert\": true"));
    }
}
