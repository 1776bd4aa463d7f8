//! Subcommand bodies. Each returns the text to print and whether the run
//! counts as a success.

use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use heckecat_core::oracle::check_names;
use heckecat_core::{
    verify_suite, BasisTag, CartanType, CharacterVector, CoxeterGroup, Element, FunctorKind, Functors, HeckeElement,
    KLCache, Side, VerificationReport,
};
use serde_json::{json, Value};

use crate::cache::{obtain, CacheStore, Provenance};
use crate::expr::{class_vector, parse_class, parse_functors};
use crate::format::{csv_string, hecke_csv, hecke_to_json, q_coeffs, vector_csv, vector_to_json, OutputFormat};

/// Settings shared by every subcommand.
#[derive(Debug, Clone)]
pub struct CliConfig {
    pub output: OutputFormat,
    pub cache: Option<CacheStore>,
    pub seed: u64,
}

pub struct Outcome {
    pub stdout: String,
    pub success: bool,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self { stdout, success: true }
    }
}

pub fn build_group(cartan: &str) -> Result<Arc<CoxeterGroup>> {
    let t: CartanType = cartan.parse()?;
    Ok(Arc::new(CoxeterGroup::build(t)?))
}

fn load_kl(cfg: &CliConfig, cartan: &str) -> Result<KLCache> {
    let group = build_group(cartan)?;
    let (kl, _) = obtain(cfg.cache.as_ref(), group, cfg.seed, |w| eprintln!("warning: {w}"))?;
    Ok(kl)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values always serialize")
}

fn generator_list(list: &[usize]) -> String {
    list.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

/// Element, word, length, left and right descents, inverse.
type ElementRow = (Element, String, usize, Vec<usize>, Vec<usize>, String);

pub fn cmd_group(cfg: &CliConfig, cartan: &str, table: bool) -> Result<Outcome> {
    let g = build_group(cartan)?;
    let w0 = g.longest();
    let rows: Vec<ElementRow> = g
        .elements()
        .map(|w| {
            (w, g.display(w), g.length(w), g.descents(w, Side::Left), g.descents(w, Side::Right), g.display(g.inverse(w)))
        })
        .collect();
    let out = match cfg.output {
        OutputFormat::Text => {
            let mut s = format!(
                "{}: {} elements, rank {}, w0 = {}, l(w0) = {}\n",
                g.cartan(),
                g.order(),
                g.rank(),
                g.display(w0),
                g.length(w0)
            );
            if table {
                let width = g.display(w0).len().max(4);
                s.push_str(&format!("{:>5}  {:width$}  {:>3}  {:9}  {:9}  {:width$}\n", "index", "w", "l", "left", "right", "inverse"));
                for (w, name, len, left, right, inv) in &rows {
                    s.push_str(&format!(
                        "{:>5}  {name:width$}  {len:>3}  {:9}  {:9}  {inv:width$}\n",
                        w.index(),
                        format!("{{{}}}", generator_list(left)),
                        format!("{{{}}}", generator_list(right)),
                    ));
                }
            }
            s
        }
        OutputFormat::Json => {
            let mut v = json!({
                "cartan": g.cartan().to_string(),
                "order": g.order(),
                "rank": g.rank(),
                "w0": g.display(w0),
                "length_w0": g.length(w0),
            });
            if table {
                v["elements"] = rows
                    .iter()
                    .map(|(w, name, len, left, right, inv)| {
                        json!({"index": w.index(), "w": name, "length": len, "left_descents": left, "right_descents": right, "inverse": inv})
                    })
                    .collect();
            }
            pretty(&v) + "\n"
        }
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = rows
                .iter()
                .map(|(w, name, len, left, right, inv)| {
                    vec![w.index().to_string(), name.clone(), len.to_string(), generator_list(left), generator_list(right), inv.clone()]
                })
                .collect();
            csv_string(&["index", "w", "length", "left_descents", "right_descents", "inverse"], &rows)?
        }
    };
    Ok(Outcome::ok(out))
}

/// Which of the four KL-type bases to expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum KlBasis {
    /// Kazhdan–Lusztig basis
    #[value(name = "uH")]
    Kl,
    /// twisted Kazhdan–Lusztig basis
    #[value(name = "ucH")]
    Twisted,
    /// dual of the KL basis under the trace pairing
    #[value(name = "huH")]
    Dual,
    /// dual of the twisted basis
    #[value(name = "hucH")]
    DualTwisted,
}

pub fn cmd_kl(
    cfg: &CliConfig,
    cartan: &str,
    x: Option<&str>,
    y: Option<&str>,
    basis: Option<KlBasis>,
    w: Option<&str>,
) -> Result<Outcome> {
    let kl = load_kl(cfg, cartan)?;
    let g = kl.group();
    if let Some(basis) = basis {
        let w = g.parse_element(w.context("--basis needs --w")?)?;
        let h: HeckeElement = match basis {
            KlBasis::Kl => kl.kl_basis(w).clone(),
            KlBasis::Twisted => kl.twisted_kl_basis(w).clone(),
            KlBasis::Dual => kl.dual_kl_basis(w)?.clone(),
            KlBasis::DualTwisted => kl.dual_twisted_kl_basis(w)?.clone(),
        };
        let out = match cfg.output {
            OutputFormat::Text => h.display(g) + "\n",
            OutputFormat::Json => pretty(&hecke_to_json(g, &h)) + "\n",
            OutputFormat::Csv => hecke_csv(g, &h)?,
        };
        return Ok(Outcome::ok(out));
    }
    if w.is_some() {
        bail!("--w needs --basis");
    }
    let x = x.map(|s| g.parse_element(s)).transpose()?;
    let y = y.map(|s| g.parse_element(s)).transpose()?;
    if let (Some(x), Some(y)) = (x, y) {
        let p = kl.kl_poly(x, y);
        let m = kl.mu(x, y);
        let (xs, ys) = (g.display(x), g.display(y));
        let out = match cfg.output {
            OutputFormat::Text => format!("P_{{{xs},{ys}}} = {}\nmu({xs},{ys}) = {m}\n", p.in_variable("q")),
            OutputFormat::Json => pretty(&json!({"x": xs, "y": ys, "P": q_coeffs(&p), "mu": m})) + "\n",
            OutputFormat::Csv => csv_string(&["x", "y", "P", "mu"], &[vec![xs, ys, p.in_variable("q").to_string(), m.to_string()]])?,
        };
        return Ok(Outcome::ok(out));
    }
    let mut rows = Vec::new();
    for yy in g.elements().filter(|&e| y.is_none_or(|y| y == e)) {
        for (xx, p) in kl.kl_column(yy) {
            if x.is_none_or(|x| x == xx) {
                rows.push((g.display(xx), g.display(yy), p.clone(), kl.mu(xx, yy)));
            }
        }
    }
    let out = match cfg.output {
        OutputFormat::Text => {
            let wx = rows.iter().map(|r| r.0.len()).max().unwrap_or(1).max(1);
            let wy = rows.iter().map(|r| r.1.len()).max().unwrap_or(1).max(1);
            let mut s = format!("{:wx$}  {:wy$}  {:12}  mu\n", "x", "y", "P");
            for (xs, ys, p, m) in &rows {
                s.push_str(&format!("{xs:wx$}  {ys:wy$}  {:12}  {m}\n", p.in_variable("q").to_string()));
            }
            s
        }
        OutputFormat::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|(xs, ys, p, m)| json!({"x": xs, "y": ys, "P": q_coeffs(p), "mu": m}))
                .collect();
            pretty(&json!({"cartan": g.cartan().to_string(), "entries": v})) + "\n"
        }
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = rows
                .into_iter()
                .map(|(xs, ys, p, m)| vec![xs, ys, p.in_variable("q").to_string(), m.to_string()])
                .collect();
            csv_string(&["x", "y", "P", "mu"], &rows)?
        }
    };
    Ok(Outcome::ok(out))
}

fn render_vector(cfg: &CliConfig, g: &CoxeterGroup, v: &CharacterVector) -> Result<String> {
    Ok(match cfg.output {
        OutputFormat::Text => v.display(g) + "\n",
        OutputFormat::Json => pretty(&vector_to_json(g, v)) + "\n",
        OutputFormat::Csv => vector_csv(g, v)?,
    })
}

pub fn cmd_basis(cfg: &CliConfig, cartan: &str, class: &str, to: Option<BasisTag>) -> Result<Outcome> {
    let kl = load_kl(cfg, cartan)?;
    let f = Functors::new(&kl);
    let kg = f.kgroup();
    let g = kl.group();
    let expr = parse_class(g, class)?;
    let targets: Vec<BasisTag> = match to {
        Some(b) => vec![b],
        None => BasisTag::ALL.to_vec(),
    };
    let vectors = targets.iter().map(|&b| class_vector(kg, &expr, b)).collect::<Result<Vec<_>, _>>()?;
    if let [v] = vectors.as_slice() {
        return Ok(Outcome::ok(render_vector(cfg, g, v)?));
    }
    let out = match cfg.output {
        OutputFormat::Text => {
            let mut s = String::new();
            for v in &vectors {
                s.push_str(&format!("{:>5}: {}\n", v.basis().name(), v.display(g)));
            }
            s
        }
        OutputFormat::Json => pretty(&Value::Array(vectors.iter().map(|v| vector_to_json(g, v)).collect())) + "\n",
        OutputFormat::Csv => {
            let mut s = String::new();
            for (i, v) in vectors.iter().enumerate() {
                let block = vector_csv(g, v)?;
                // keep a single header line
                s.push_str(if i == 0 { &block } else { block.split_once('\n').map_or("", |(_, rest)| rest) });
            }
            s
        }
    };
    Ok(Outcome::ok(out))
}

pub fn cmd_apply(cfg: &CliConfig, cartan: &str, functor: &str, class: &str, to: Option<BasisTag>) -> Result<Outcome> {
    let kl = load_kl(cfg, cartan)?;
    let f = Functors::new(&kl);
    let kg = f.kgroup();
    let g = kl.group();
    let kinds = parse_functors(g, functor)?;
    let expr = parse_class(g, class)?;
    let target = to.unwrap_or(expr.leading_basis());

    let simple_case = match (kinds.as_slice(), expr.single()) {
        ([FunctorKind::DerivedTwist(w)], Some((BasisTag::Simple, x))) => (g.length(*w) == 1).then(|| (true, g.word(*w)[0] as usize, x)),
        ([FunctorKind::DerivedShuffle(w)], Some((BasisTag::Simple, x))) => (g.length(*w) == 1).then(|| (false, g.word(*w)[0] as usize, x)),
        _ => None,
    };
    let result = match simple_case {
        Some((true, s, x)) if g.is_left_descent(s, x) => f.ts_simple(s, x)?.character,
        Some((false, s, x)) if g.is_right_descent(x, s) => f.cs_simple(s, x)?.character,
        other => {
            if let Some((twist, s, x)) = other {
                let (name, side) = if twist { ("T", "sx > x") } else { ("C", "xs > x") };
                eprintln!(
                    "note: {side} for s = {s}, x = {}, so {name}_s L(x) = 0; showing the class of the derived functor",
                    g.display(x)
                );
            }
            let mut v = class_vector(kg, &expr, expr.leading_basis())?;
            for kind in kinds {
                v = f.apply(kind, &v)?;
            }
            v
        }
    };
    let result = kg.change_basis(&result, target)?;
    Ok(Outcome::ok(render_vector(cfg, g, &result)?))
}

pub fn report_json(r: &VerificationReport) -> Value {
    json!({
        "group": r.group.to_string(),
        "seed": r.seed,
        "passed": r.all_passed(),
        "checks": r.checks.iter().map(|c| json!({
            "name": c.name,
            "instances": c.instances,
            "passed": c.passed,
            "counterexample": c.counterexample,
            "diagnostics": c.diagnostics,
        })).collect::<Vec<_>>(),
    })
}

pub fn cmd_verify(cfg: &CliConfig, cartan: &str, checks: &[String], json_out: Option<PathBuf>) -> Result<Outcome> {
    let known: Vec<&str> = check_names().collect();
    for c in checks {
        if !known.contains(&c.as_str()) {
            bail!("unknown check {c:?}; available: {}", known.join(", "));
        }
    }
    let kl = load_kl(cfg, cartan)?;
    let filter: Vec<&str> = checks.iter().map(String::as_str).collect();
    let report = verify_suite(&kl, (!filter.is_empty()).then_some(filter.as_slice()), cfg.seed);
    let v = report_json(&report);
    if let Some(path) = json_out {
        std::fs::write(&path, pretty(&v) + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    let stdout = match cfg.output {
        OutputFormat::Json => pretty(&v) + "\n",
        OutputFormat::Text => report.to_string() + "\n",
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        c.instances.to_string(),
                        c.passed.to_string(),
                        c.counterexample.clone().unwrap_or_default(),
                    ]
                })
                .collect();
            csv_string(&["check", "instances", "passed", "counterexample"], &rows)?
        }
    };
    Ok(Outcome { stdout, success: report.all_passed() })
}

#[derive(Debug, Clone, clap::Subcommand)]
pub enum CacheAction {
    /// Print the cache directory
    Path,
    /// List cached tables
    List,
    /// Compute and store tables for the given types
    Build { cartans: Vec<String> },
    /// Delete the table for one type, or all tables
    Clear { cartan: Option<String> },
}

pub fn cmd_cache(cfg: &CliConfig, action: &CacheAction) -> Result<Outcome> {
    let store = cfg.cache.as_ref().context("no cache directory (caching disabled or no data directory)")?;
    let out = match action {
        CacheAction::Path => format!("{}\n", store.dir().display()),
        CacheAction::List => {
            let entries = store.entries()?;
            match cfg.output {
                OutputFormat::Json => pretty(&json!(entries
                    .iter()
                    .map(|(t, n)| json!({"cartan": t, "bytes": n}))
                    .collect::<Vec<_>>())) + "\n",
                OutputFormat::Csv => csv_string(
                    &["cartan", "bytes"],
                    &entries.iter().map(|(t, n)| vec![t.clone(), n.to_string()]).collect::<Vec<_>>(),
                )?,
                OutputFormat::Text => entries.iter().map(|(t, n)| format!("{t}\t{n} bytes\n")).collect(),
            }
        }
        CacheAction::Build { cartans } => {
            if cartans.is_empty() {
                bail!("name at least one Cartan type");
            }
            let mut s = String::new();
            for t in cartans {
                let group = build_group(t)?;
                let (kl, how) = obtain(Some(store), group, cfg.seed, |w| eprintln!("warning: {w}"))?;
                let path = store.path_for(kl.group().cartan());
                let verb = match how {
                    Provenance::Loaded => "already cached",
                    Provenance::Computed { saved: true } => "written",
                    Provenance::Computed { saved: false } => "computed but not written",
                };
                s.push_str(&format!("{}: {verb} ({})\n", kl.group().cartan(), path.display()));
            }
            s
        }
        CacheAction::Clear { cartan } => {
            let t = cartan.as_deref().map(str::parse::<CartanType>).transpose()?;
            format!("removed {} file(s)\n", store.clear(t)?)
        }
    };
    Ok(Outcome::ok(out))
}
