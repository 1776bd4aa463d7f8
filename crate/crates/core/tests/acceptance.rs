use std::collections::BTreeMap;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use heckecat_core::oracle::DEFAULT_SEED;
use heckecat_core::{verify_suite, CoxeterGroup, KLCache, VerificationReport};

struct Criterion {
    number: u8,
    title: &'static str,
    check: &'static str,
    groups: &'static [&'static str],
}

/// Criteria whose statement is false as written. They are checked literally
/// and reported as FAIL; the run only errors if one of them stops failing.
const FALSE_AS_STATED: &[(u8, &str)] = &[
    (5, "the folded ∇-basis sum assumes P_{u,w} = P_{us,w} for us < u, ws > w"),
    (8, "P_{x,y} = P_{yw0,xw0} fails; only the mu identities and inversion hold"),
    (12, "the two sides agree only after relabelling ∇(y) as ∇(y^-1)"),
];

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, title: "quadratic relation for LT_s and LC_s", check: "quadratic", groups: &["A2", "A3", "B2", "G2"] },
    Criterion { number: 2, title: "braid relations", check: "braid", groups: &["A2", "A3", "B2", "G2"] },
    Criterion { number: 3, title: "rho-intertwining of LT_w and LC_w", check: "rho_intertwining", groups: &["A3"] },
    Criterion { number: 4, title: "rho and rho' of simple classes", check: "rho_simple", groups: &["A3", "B2"] },
    Criterion { number: 5, title: "T_s L(x) and C_s L(x) expansions", check: "twisted_simple", groups: &["A3", "B2"] },
    Criterion { number: 6, title: "tau-duality of KL bases", check: "tau_duality", groups: &["A3"] },
    Criterion { number: 7, title: "dual KL bases via H_w0", check: "dual_products", groups: &["A3", "B2"] },
    Criterion { number: 8, title: "KL symmetries and degree bound", check: "kl_symmetry", groups: &["A3", "B2"] },
    Criterion { number: 9, title: "bar-solve and subword oracles", check: "oracle", groups: &["A2", "A3", "B2", "G2"] },
    Criterion { number: 10, title: "rho of Verma classes at involutions", check: "involution_verma", groups: &["A3"] },
    Criterion { number: 11, title: "r-coefficient inversion symmetry", check: "r_symmetry", groups: &["A3"] },
    Criterion { number: 12, title: "nabla minus simple under inversion", check: "nabla_minus_simple", groups: &["A3"] },
    Criterion { number: 13, title: "T_s on Verma classes", check: "twist_verma", groups: &["A3"] },
    Criterion { number: 14, title: "Zuckerman recursion", check: "zuckerman", groups: &["A2", "A3"] },
    Criterion { number: 15, title: "theta_x commutes with LT_s", check: "theta_commutation", groups: &["A3"] },
    Criterion { number: 16, title: "positivity", check: "positivity", groups: &["A3"] },
];

fn main() -> ExitCode {
    let start = Instant::now();
    let mut caches: BTreeMap<&str, KLCache> = BTreeMap::new();
    for c in CRITERIA {
        for &t in c.groups {
            if !caches.contains_key(t) {
                let g = CoxeterGroup::build(t.parse().expect("known type")).expect("group builds");
                caches.insert(t, KLCache::new(Arc::new(g)).expect("KL tables"));
            }
        }
    }
    let mut reports: BTreeMap<&str, VerificationReport> = BTreeMap::new();
    for (&t, kl) in &caches {
        let names: Vec<&str> = CRITERIA.iter().filter(|c| c.groups.contains(&t)).map(|c| c.check).collect();
        reports.insert(t, verify_suite(kl, Some(&names), DEFAULT_SEED));
    }

    let mut failed = 0;
    let mut unexpected = 0;
    for c in CRITERIA {
        let mut ok = true;
        let mut instances = 0;
        let mut detail = Vec::new();
        for &t in c.groups {
            let r = reports[t].check(c.check).expect("check ran");
            instances += r.instances;
            ok &= r.passed;
            if let Some(ce) = &r.counterexample {
                detail.push(format!("{t}: {ce}"));
            }
            for d in &r.diagnostics {
                detail.push(format!("{t}: {d}"));
            }
        }
        let known = FALSE_AS_STATED.iter().find(|(n, _)| *n == c.number);
        if !ok {
            failed += 1;
        }
        if ok == known.is_some() {
            unexpected += 1;
        }
        println!(
            "{} criterion {:>2}: {} [{}] ({} instances)",
            if ok { "PASS" } else { "FAIL" },
            c.number,
            c.title,
            c.groups.join(" "),
            instances
        );
        if let Some((_, why)) = known {
            println!("       false as stated: {why}");
        }
        for d in detail {
            println!("       {d}");
        }
    }
    println!("{} of {} criteria passed in {:.1?}", CRITERIA.len() - failed, CRITERIA.len(), start.elapsed());
    if unexpected == 0 {
        println!("every failure is a documented counterexample");
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} criteria deviate from the documented outcome");
        ExitCode::FAILURE
    }
}
