//! `homcat`: axiom checks, homology, homotopy and CW builds from the command line.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use homcat::acyclic::{build_p, InvarianceContext};
use homcat::budget::{Budget, DEFAULT_BOUND};
use homcat::chain::{homology, ChainComplex, Coefficients};
use homcat::complexes::{build_recipe, CwRecipe};
use homcat::convexity::{certify_convex, cone_chain_homotopy, check_acyclic, ConeFamily, ConeFile};
use homcat::cosimplicial::{finset_standard, sset_standard, Cosimplicial};
use homcat::fincat::{Category, FinSet, SSetCategory, TableCategory};
use homcat::homotopy::{find_homotopy_equivalence, homotopy_classes, is_contractible};
use homcat::nerve::nerve;
use homcat::report::{axioms_report, theorem1_pipeline};
use homcat::simplicial::TruncSimplicialSet;
use homcat::{Error, Result};

const REPORT_FORMAT: &str = "homcat.report/1";

#[derive(Parser)]
#[command(name = "homcat", version, about = "Exact homology and homotopy for finite categorical data")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Config {
    /// finset | sset | table:PATH
    #[arg(long, global = true, default_value = "sset")]
    instance: String,
    /// Cosimplicial object file (required for table instances).
    #[arg(long, global = true)]
    cosimplicial: Option<PathBuf>,
    /// Truncation level L.
    #[arg(long, global = true, default_value_t = 3)]
    level: usize,
    /// Z or Zmod:m
    #[arg(long, global = true, default_value = "Z")]
    coeff: String,
    /// Reduced (augmented) chains: true or false.
    #[arg(
        long,
        global = true,
        default_value = "false",
        action = clap::ArgAction::Set,
        value_parser = clap::builder::BoolishValueParser::new()
    )]
    reduced: bool,
    /// Limit on elementary checks per search; HOMCAT_BOUND takes precedence.
    #[arg(long, global = true)]
    bound: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Axioms 1-5 with witnesses.
    CheckAxioms,
    /// Homology of an object per degree below L.
    Homology { object: String },
    /// Partition of hom(X, Y) into homotopy classes.
    HomotopyClasses { source: String, target: String },
    /// Search for a homotopy equivalence between two objects.
    HomotopyEquivalent { source: String, target: String },
    /// Is the identity homotopic to a constant map?
    Contractible { object: String },
    /// Homology invariance for every homotopic pair in hom(X, Y).
    Invariance { source: String, target: String },
    /// Cone family on an object and the chain homotopy it induces.
    ChainHomotopy {
        object: String,
        #[arg(long)]
        cone: Option<PathBuf>,
    },
    /// Build a CW recipe; the output is a simplicial set file.
    Build { recipe: PathBuf },
    /// The three claims of homotopy invariance, end to end.
    Pipeline,
    /// The nerve of an object as a simplicial set file.
    Nerve { object: String },
}

struct Outcome {
    report: Value,
    passed: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.report).expect("reports serialize") + "\n";
            if let Some(path) = &cli.config.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn bound(config: &Config) -> Result<u64> {
    let b = match std::env::var("HOMCAT_BOUND") {
        Ok(v) => v.parse::<u64>().map_err(|_| Error::Parse(format!("HOMCAT_BOUND must be a positive integer, got {v:?}")))?,
        Err(_) => config.bound.unwrap_or(DEFAULT_BOUND),
    };
    if b == 0 {
        return Err(Error::Parse("the bound must be positive".into()));
    }
    Ok(b)
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn with_file<T>(path: &Path, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
        other => other,
    })
}

fn run(cli: &Cli) -> Result<Outcome> {
    let config = &cli.config;
    if config.level == 0 {
        return Err(Error::Parse("--level must be at least 1".into()));
    }
    let b = bound(config)?;
    let coeff: Coefficients = config.coeff.parse()?;
    let l = config.level;
    if let Command::Build { recipe } = &cli.command {
        return build(recipe, l);
    }
    match config.instance.as_str() {
        "finset" => {
            let c = FinSet::new(l + 1).with_bound(b);
            let f = finset_standard(l);
            dispatch(&c, &f, cli, coeff, |s| {
                s.parse::<usize>().map_err(|_| Error::Parse(format!("finset objects are sizes, got {s:?}")))
            })
        }
        "sset" => {
            let c = SSetCategory::new(l).with_bound(b);
            let f = sset_standard(&c, l)?;
            dispatch(&c, &f, cli, coeff, |s| sset_object(s, l))
        }
        other => {
            let path = other
                .strip_prefix("table:")
                .ok_or_else(|| Error::Parse(format!("--instance must be finset, sset or table:PATH, got {other:?}")))?;
            let path = Path::new(path);
            let c = with_file(path, TableCategory::from_json(&read(path)?))?.with_bound(b);
            let cpath = config
                .cosimplicial
                .as_ref()
                .ok_or_else(|| Error::Parse("table instances need --cosimplicial".into()))?;
            let f = with_file(cpath, Cosimplicial::from_json(&c, &read(cpath)?))?;
            if f.level() != l {
                return Err(Error::LevelMismatch(format!("cosimplicial file has level {}, --level is {l}", f.level())));
            }
            dispatch(&c, &f, cli, coeff, |s| {
                c.object(s).ok_or_else(|| Error::Parse(format!("unknown object {s:?}")))
            })
        }
    }
}

/// `point`, `empty`, `delta:N`, `boundary:N`, or a simplicial set or CW
/// recipe file.
fn sset_object(spec: &str, l: usize) -> Result<Arc<TruncSimplicialSet>> {
    let num = |s: &str| s.parse::<usize>().map_err(|_| Error::Parse(format!("bad dimension in {spec:?}")));
    let x = if spec == "point" {
        TruncSimplicialSet::point(l)
    } else if spec == "empty" {
        TruncSimplicialSet::empty(l)
    } else if let Some(n) = spec.strip_prefix("delta:") {
        TruncSimplicialSet::standard(num(n)?, l)
    } else if let Some(n) = spec.strip_prefix("boundary:") {
        TruncSimplicialSet::boundary(num(n)?, l)
    } else {
        let path = Path::new(spec);
        let text = read(path)?;
        let value: Value = with_file(path, serde_json::from_str(&text).map_err(Error::from))?;
        if value.get("cells").is_some() {
            let recipe = with_file(path, CwRecipe::from_json(&text))?;
            if recipe.level != l {
                return Err(Error::LevelMismatch(format!("recipe level {}, --level is {l}", recipe.level)));
            }
            return Ok(build_recipe(&recipe)?.result().clone());
        }
        let x = with_file(path, TruncSimplicialSet::from_json(&text))?;
        if x.level() != l {
            return Err(Error::LevelMismatch(format!("{} has level {}, --level is {l}", path.display(), x.level())));
        }
        x
    };
    Ok(Arc::new(x))
}

fn build(recipe: &Path, l: usize) -> Result<Outcome> {
    let r = with_file(recipe, CwRecipe::from_json(&read(recipe)?))?;
    if r.level != l {
        return Err(Error::LevelMismatch(format!("recipe level {}, --level is {l}", r.level)));
    }
    let b = build_recipe(&r)?;
    Ok(Outcome { report: serde_json::to_value(b.result().to_file())?, passed: true })
}

fn dispatch<C: Category>(
    c: &C,
    f: &Cosimplicial<C>,
    cli: &Cli,
    coeff: Coefficients,
    object: impl Fn(&str) -> Result<C::Obj>,
) -> Result<Outcome> {
    let head = |cmd: &str, checks: &[&str]| {
        json!({ "format": REPORT_FORMAT, "command": cmd, "checks": checks, "instance": c.name(), "level": f.level() })
    };
    let merge = |mut base: Value, extra: Value| {
        if let (Some(b), Value::Object(e)) = (base.as_object_mut(), extra) {
            b.extend(e);
        }
        base
    };
    match &cli.command {
        Command::Build { .. } => unreachable!("handled before instance setup"),
        Command::CheckAxioms => {
            let (report, passed) = axioms_report(c, f)?;
            Ok(Outcome { report, passed })
        }
        Command::Pipeline => {
            let (report, passed) = theorem1_pipeline(c, f)?;
            Ok(Outcome { report, passed })
        }
        Command::Homology { object: spec } => {
            let x = object(spec)?;
            let nv = nerve(c, f, &x)?;
            let cx = ChainComplex::from_sset(&nv.sset, coeff, cli.config.reduced)?;
            let groups: Vec<Value> = (0..f.level()).map(|n| homology(&cx, n).map(|h| h.report())).collect::<Result<_>>()?;
            let extra = json!({
                "object": c.obj_label(&x),
                "coefficients": coeff.to_string(),
                "reduced": cli.config.reduced,
                "simplices": nv.sset.counts(),
                "homology": groups,
            });
            let checks: &[&str] = if nv.object == *f.cell(0) { &["claim i", "P1"] } else { &["claim i"] };
            Ok(Outcome { report: merge(head("homology", checks), extra), passed: true })
        }
        Command::Nerve { object: spec } => {
            let x = object(spec)?;
            let nv = nerve(c, f, &x)?;
            let extra = json!({ "object": c.obj_label(&x), "sset": serde_json::to_value(nv.sset.to_file())? });
            Ok(Outcome { report: merge(head("nerve", &["claim i"]), extra), passed: true })
        }
        Command::HomotopyClasses { source, target } => {
            let (x, y) = (object(source)?, object(target)?);
            let cl = homotopy_classes(c, f, &x, &y)?;
            let classes: Vec<Vec<String>> =
                cl.classes.iter().map(|k| k.iter().map(|&i| c.mor_label(&cl.morphisms[i])).collect()).collect();
            let raw: Vec<[String; 2]> = cl
                .raw
                .iter()
                .map(|&(i, j)| [c.mor_label(&cl.morphisms[i]), c.mor_label(&cl.morphisms[j])])
                .collect();
            let extra = json!({
                "source": c.obj_label(&x),
                "target": c.obj_label(&y),
                "classes": classes,
                "raw": raw,
                "raw_equals_closure": cl.raw_equals_closure,
                "raw_symmetric": cl.raw_symmetric(),
            });
            Ok(Outcome { report: merge(head("homotopy-classes", &["claim ii"]), extra), passed: true })
        }
        Command::HomotopyEquivalent { source, target } => {
            let (x, y) = (object(source)?, object(target)?);
            let found = find_homotopy_equivalence(c, f, &x, &y)?;
            let extra = json!({
                "source": c.obj_label(&x),
                "target": c.obj_label(&y),
                "equivalent": found.is_some(),
                "witness": found.as_ref().map(|(m, g)| json!({ "f": c.mor_label(m), "g": c.mor_label(g) })),
            });
            Ok(Outcome { report: merge(head("homotopy-equivalent", &["claim ii"]), extra), passed: found.is_some() })
        }
        Command::Contractible { object: spec } => {
            let x = object(spec)?;
            let point = is_contractible(c, f, &x)?;
            let extra = json!({
                "object": c.obj_label(&x),
                "contractible": point.is_some(),
                "point": point.as_ref().map(|p| c.mor_label(p)),
            });
            Ok(Outcome { report: merge(head("contractible", &["claim ii"]), extra), passed: point.is_some() })
        }
        Command::Invariance { source, target } => {
            let (x, y) = (object(source)?, object(target)?);
            let p = build_p(c, f, f.level() - 1)?;
            let cl = homotopy_classes(c, f, &x, &y)?;
            let ctx = InvarianceContext::new(c, f, &p, &x, &y)?;
            let budget = Budget::new(c.bound());
            let mut checks = Vec::new();
            let mut passed = true;
            for &(i, j) in &cl.raw {
                budget.tick(ctx.cost())?;
                let h = cl.witness(i, j)
                    .ok_or_else(|| Error::Internal("raw pair without a witness".into()))?;
                let r = ctx.check(c, f, &h)?;
                passed &= r.passed;
                checks.push(r);
            }
            let extra = json!({
                "source": c.obj_label(&x),
                "target": c.obj_label(&y),
                "pairs": checks,
                "equal_induced_maps": passed,
            });
            Ok(Outcome { report: merge(head("invariance", &["claim iii", "P3"]), extra), passed })
        }
        Command::ChainHomotopy { object: spec, cone } => {
            let x = object(spec)?;
            let nv = nerve(c, f, &x)?;
            let (method, family) = match cone {
                Some(path) => {
                    let file: ConeFile = with_file(path, serde_json::from_str(&read(path)?).map_err(Error::from))?;
                    (json!("file"), Some(with_file(path, ConeFamily::from_file(&file, &nv.sset))?))
                }
                None => match certify_convex(&nv.sset, &Budget::new(c.bound()))? {
                    Some((m, fam)) => (json!(m), Some(fam)),
                    None => (json!("search"), None),
                },
            };
            let acyclic = check_acyclic(&nv.sset, None)?;
            let extra = match &family {
                Some(fam) => {
                    let r = cone_chain_homotopy(&nv.sset, fam)?;
                    let passed = r.passed;
                    let extra = json!({
                        "object": c.obj_label(&x),
                        "method": method,
                        "cone": fam.to_file(&c.obj_label(&x), &nv.sset),
                        "chain_homotopy": r,
                        "acyclic": acyclic,
                    });
                    return Ok(Outcome { report: merge(head("chain-homotopy", &["A5", "P2"]), extra), passed });
                }
                None => json!({
                    "object": c.obj_label(&x),
                    "method": method,
                    "cone": Value::Null,
                    "acyclic": acyclic,
                }),
            };
            Ok(Outcome { report: merge(head("chain-homotopy", &["A5", "P2"]), extra), passed: false })
        }
    }
}
