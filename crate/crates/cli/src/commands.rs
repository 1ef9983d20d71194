use std::fs;
use std::io::Write;
use std::path::PathBuf;

use abelian_spiders::bounds::{verify_b_nonneg_with, BFunction, NonnegCertificate};
use abelian_spiders::classify::morrison::abelian_pairs;
use abelian_spiders::classify::tables::{a_bound_with, ProductCaps};
use abelian_spiders::classify::three::{abelian_hyperbolic, write_csv};
use abelian_spiders::classify::{
    classify_morrison, classify_three_spiders, salem_check, three_spider_b_table, three_spider_bounds, ClassificationRecord,
    Journal, MorrisonScope, Scope,
};
use abelian_spiders::cyclo::{abelian_check, ch_polynomial, m_value, AbelianVerdict};
use abelian_spiders::par::{self, Mode};
use abelian_spiders::polyzq::dyadic::parse_decimal;
use abelian_spiders::polyzq::IntPolynomial;
use abelian_spiders::spider::{perron_frobenius, spider_charpoly};
use anyhow::{anyhow, bail, Context, Result};
use serde_json::{json, Value};

use crate::config::{FileConfig, RunConfig};
use crate::spec::parse_spider;
use crate::{BcertAction, Cli, ClassifyTarget, Command, Global, TableKind};

pub enum Outcome {
    Done,
    /// Some verdict could not be decided within the budget.
    Unknown,
}

fn resolve(g: &Global) -> Result<RunConfig> {
    let file = match &g.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let flags = FileConfig {
        precision_bits: g.precision_bits,
        conductor_bound: g.conductor_bound,
        prime_budget: g.prime_budget,
        subdivision_depth: g.subdivision_depth,
        worker_count: g.workers,
        journal_path: g.journal.clone(),
        data_dir: g.data_dir.clone(),
    };
    file.merge(flags).resolve()
}

fn parse_poly(s: &str) -> Result<IntPolynomial> {
    s.parse::<IntPolynomial>().map_err(|e| anyhow!("bad polynomial `{s}`: {e}"))
}

struct Out {
    json: bool,
}

impl Out {
    /// Prints `v` as JSON, or `text` otherwise.
    fn emit(&self, v: Value, text: impl FnOnce() -> String) -> Result<()> {
        let mut o = std::io::stdout().lock();
        if self.json {
            writeln!(o, "{}", serde_json::to_string_pretty(&v)?)?;
        } else {
            writeln!(o, "{}", text())?;
        }
        Ok(())
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let cfg = resolve(&cli.global)?;
    let mode = if cli.global.sequential { Mode::Sequential } else { Mode::Parallel };
    let budget = cfg.budget(mode);
    let out = Out { json: cli.global.json };
    let bits = cfg.precision_bits;
    match cli.command {
        Command::Charpoly { spider } => {
            let p = spider_charpoly(&parse_spider(&spider)?);
            out.emit(json!({ "polynomial": p.to_string(), "coefficients": p }), || p.to_string())?;
        }
        Command::Pf { spider } => {
            let s = perron_frobenius(&spider_charpoly(&parse_spider(&spider)?))?;
            let lambda = s.pf.refine(bits);
            let v = json!({
                "lambda": lambda.display_with(20),
                "lambda_minpoly": s.pf.minpoly.to_string(),
                "lambda2_minpoly": s.pf_squared.minpoly.to_string(),
                "beta_minpoly": s.beta_minpoly.to_string(),
                "large_conjugates": s.large_conjugates,
                "at_most_two": s.is_small(),
            });
            out.emit(v, || {
                format!(
                    "λ = {}\nminpoly(λ) = {}\nminpoly(λ²) = {}\nminpoly(λ² - 2) = {}",
                    lambda.display_with(20),
                    s.pf.minpoly,
                    s.pf_squared.minpoly,
                    s.beta_minpoly
                )
            })?;
        }
        Command::Mvalue { poly } => {
            let m = m_value(&parse_poly(&poly)?)?;
            out.emit(json!({ "m_value": m.to_string() }), || m.to_string())?;
        }
        Command::Chpoly { n } => {
            if n == 0 {
                bail!("N must be positive");
            }
            let p = ch_polynomial(n);
            out.emit(json!({ "n": n, "polynomial": p.to_string() }), || p.to_string())?;
        }
        Command::Bfunc { x } => {
            let r = parse_decimal(&x).map_err(|e| anyhow!("bad number `{x}`: {e}"))?;
            let v = BFunction::standard().eval_rational(&r, bits)?;
            out.emit(json!({ "x": r.to_string(), "value": v.display_with(15), "lo": v.lo.to_decimal(20), "hi": v.hi.to_decimal(20) }), || {
                v.display_with(15)
            })?;
        }
        Command::Bcert { action } => return bcert(action, &cfg, mode, &out),
        Command::Abelian { poly } => {
            let v = abelian_check(&parse_poly(&poly)?, &budget)?;
            let unknown = matches!(v, AbelianVerdict::Unknown { .. });
            out.emit(serde_json::to_value(&v)?, || describe_abelian(&v))?;
            if unknown {
                return Ok(Outcome::Unknown);
            }
        }
        Command::Classify { target } => {
            let recs = par::with_workers(cfg.worker_count, || classify(target, &cfg, &budget, &out))?;
            if recs.iter().any(|r| r.verdict.is_unknown()) {
                return Ok(Outcome::Unknown);
            }
        }
        Command::Salem { poly } => {
            let s = salem_check(&parse_poly(&poly)?, &budget)?;
            let rho = s.refine(bits);
            let v = json!({
                "rho": rho.display_with(20),
                "trace_minpoly": s.trace_minpoly.to_string(),
                "abelian_type": s.abelian_type,
            });
            out.emit(v, || {
                format!("Salem ρ = {}\nminpoly(ρ + 1/ρ) = {}\n{}", rho.display_with(20), s.trace_minpoly, describe_abelian(&s.abelian_type))
            })?;
            if matches!(s.abelian_type, AbelianVerdict::Unknown { .. }) {
                return Ok(Outcome::Unknown);
            }
        }
        Command::Table { which } => par::with_workers(cfg.worker_count, || table(which, &cfg, mode, &out))?,
    }
    Ok(Outcome::Done)
}

fn describe_abelian(v: &AbelianVerdict) -> String {
    match v {
        AbelianVerdict::Abelian(e) => format!("abelian, conductor {}", e.conductor),
        AbelianVerdict::NotGalois { prime, degrees } => format!("not abelian: not Galois (factor degrees {degrees:?} mod {prime})"),
        AbelianVerdict::NotAbelianCertified { reason } => format!("not abelian: {reason}"),
        AbelianVerdict::Unknown { reason } => format!("unknown: {reason}"),
    }
}

fn bcert(action: BcertAction, cfg: &RunConfig, mode: Mode, out: &Out) -> Result<Outcome> {
    match action {
        BcertAction::Emit { out: path } => {
            let cert = par::with_workers(cfg.worker_count, || {
                verify_b_nonneg_with(&BFunction::standard(), cfg.subdivision_depth, cfg.precision_bits, mode)
            })?;
            let text = serde_json::to_string_pretty(&cert)? + "\n";
            match path {
                Some(p) => fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{text}"),
            }
            if !cert.is_complete() {
                bail!("certificate incomplete: {} intervals uncovered", cert.failures.len());
            }
        }
        BcertAction::Verify { file } => {
            let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let cert: NonnegCertificate = serde_json::from_str(&text).with_context(|| format!("parsing {}", file.display()))?;
            cert.verify()?;
            out.emit(json!({ "verified": true, "pieces": cert.pieces.len(), "neighborhoods": cert.neighborhoods.len() }), || {
                format!("verified: {} pieces, {} neighborhoods", cert.pieces.len(), cert.neighborhoods.len())
            })?;
        }
    }
    Ok(Outcome::Done)
}

fn classify(target: ClassifyTarget, cfg: &RunConfig, budget: &abelian_spiders::config::Budget, out: &Out) -> Result<Vec<ClassificationRecord>> {
    match target {
        ClassifyTarget::Morrison { brute_max, corner } => {
            let corner = match corner.as_deref() {
                None => MorrisonScope::default().corner,
                Some(&[lo, hi]) if lo <= hi => Some((lo, hi)),
                Some(c) => bail!("bad corner `{c:?}`: expected lo,hi"),
            };
            let recs = classify_morrison(&MorrisonScope { brute_max, corner }, budget)?;
            let ab = abelian_pairs(&recs);
            let v = json!({
                "abelian": ab,
                "records": recs.len(),
                "unknown": recs.iter().filter(|r| r.verdict.is_unknown()).count(),
            });
            out.emit(v, || {
                let mut s = String::new();
                for r in &recs {
                    s += &format!("{}\t{}\n", r.subject, r.verdict.label());
                }
                let list: Vec<String> = ab.iter().map(|(a, b)| format!("({a},{b})")).collect();
                s + &format!("abelian: {}", list.join(" "))
            })?;
            Ok(recs)
        }
        ClassifyTarget::Threespider { desk, resume, csv } => {
            let scope = match desk {
                Some(c_max) => Scope::Desk { c_max },
                None => Scope::Certified(three_spider_bounds(budget.mode)?),
            };
            let path: Option<PathBuf> = cfg.journal_path.clone().or_else(|| resume.then(|| PathBuf::from("threespider.jsonl")));
            if !resume {
                if let Some(p) = &path {
                    if p.exists() {
                        bail!("journal {} exists; pass --resume to continue it", p.display());
                    }
                }
            }
            let mut journal = path.as_deref().map(Journal::open).transpose()?;
            let recs = classify_three_spiders(&scope, budget, journal.as_mut())?;
            if let Some(p) = csv {
                let mut f = fs::File::create(&p).with_context(|| format!("writing {}", p.display()))?;
                write_csv(&recs, &mut f)?;
            }
            let ab: Vec<String> = abelian_hyperbolic(&recs).iter().map(|r| r.subject.to_string()).collect();
            let v = json!({
                "records": recs.len(),
                "abelian_hyperbolic": ab,
                "unknown": recs.iter().filter(|r| r.verdict.is_unknown()).map(|r| r.subject.to_string()).collect::<Vec<_>>(),
            });
            out.emit(v, || {
                let mut s = String::new();
                for r in abelian_hyperbolic(&recs) {
                    s += &format!("{}\tλ = {}\t{}\n", r.subject, r.pf_interval.display_with(9), r.verdict.label());
                }
                s + &format!("{} triples, {} abelian beyond Dynkin", recs.len(), ab.len())
            })?;
            Ok(recs)
        }
    }
}

fn table(which: TableKind, cfg: &RunConfig, mode: Mode, out: &Out) -> Result<()> {
    match which {
        TableKind::Abound => {
            let r = a_bound_with(&ProductCaps::certified(), 48)?;
            out.emit(serde_json::to_value(&r)?, || format!("a ≤ {} (gap {:.6e})", r.a_max, r.gap.mid().to_f64()))?;
        }
        TableKind::Bbound => {
            let a_max = a_bound_with(&ProductCaps::certified(), 48)?.a_max;
            let rows = three_spider_b_table(a_max, mode);
            out.emit(json!(rows), || rows.iter().map(|(a, b)| format!("{a}\t{b}")).collect::<Vec<_>>().join("\n"))?;
        }
        TableKind::Cbound => {
            let t = three_spider_bounds(mode)?;
            let rows: Vec<Value> = t.c_rows.iter().map(|(&(a, b), &c)| json!([a, b, c])).collect();
            let v = json!({ "a_max": t.a_max, "b_max": t.b_max, "c_max": t.c_max, "rows": rows });
            out.emit(v, || {
                let mut s: String = t.c_rows.iter().map(|((a, b), c)| format!("{a}\t{b}\t{c}\n")).collect();
                s += &format!("a ≤ {}, b ≤ {}, c ≤ {}", t.a_max, t.b_max, t.c_max);
                s
            })?;
        }
        TableKind::Cyclo => {
            let dir = cfg.data_dir.clone().ok_or_else(|| anyhow!("table cyclo needs --data-dir"))?;
            let path = dir.join("cyclo_tables.json");
            let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let diffs = abelian_spiders::cyclo::data::diff(&text)?;
            out.emit(json!({ "differences": diffs }), || {
                if diffs.is_empty() {
                    "tables agree".to_string()
                } else {
                    diffs.join("\n")
                }
            })?;
            if !diffs.is_empty() {
                bail!("{} differences", diffs.len());
            }
        }
    }
    Ok(())
}
