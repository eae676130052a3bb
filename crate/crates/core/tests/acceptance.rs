//! The twelve acceptance criteria, each at exact equality with pinned bounds
//! and a pinned wall-clock limit. Prints one line per criterion and exits
//! nonzero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use intform_core::combinatorics::LabelConfig;
use intform_core::identities::{
    adjoint_part, check_a2, check_commutation, check_d_consistency, check_d_identities,
    check_divided_powers, check_engine, check_p_properties, check_straightening, commutator_part,
    forms_part, product_part, CheckName, CheckReport, CheckSpec, Checker, Profile,
};
use intform_core::pbw::PresetKind;
use intform_core::Result;

const SEED: u64 = 0x5eed;

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn(&Checker) -> Result<Vec<CheckReport>>,
}

fn spec(ck: &Checker, name: CheckName, bounds: &[(&str, u32)]) -> CheckSpec {
    let mut s = CheckSpec::for_profile(name, Profile::Desk, ck.labels());
    s.seed = SEED;
    for (k, v) in bounds {
        s.set_bound(k, *v).expect("declared bound");
    }
    s
}

/// Keeps only the parts whose names start with one of `prefixes`.
fn only(report: CheckReport, prefixes: &[&str]) -> CheckReport {
    let keep = |n: &str| prefixes.iter().any(|p| n.starts_with(p));
    let mut r = report;
    r.parts.retain(|p| keep(&p.name));
    r.failures.retain(|f| keep(&f.part));
    r.instances = r.parts.iter().map(|p| p.instances).sum();
    r.pass = r.parts.iter().all(|p| p.pass);
    r.elapsed = Duration::from_millis(r.parts.iter().map(|p| p.elapsed_ms).sum());
    r
}

fn ac1(ck: &Checker) -> Result<Vec<CheckReport>> {
    // |φ|, |χ| ≤ 2 over {1, t, t²}; 200 samples at size 3 over {1, t}; anchor
    let s = spec(
        ck,
        CheckName::Straightening,
        &[("size", 2), ("samples", 200), ("sample-size", 3)],
    );
    Ok(vec![check_straightening(ck, &s)?])
}

fn ac2(ck: &Checker) -> Result<Vec<CheckReport>> {
    let s = spec(ck, CheckName::DConsistency, &[("size", 3), ("k", 3)]);
    Ok(vec![only(
        check_d_consistency(ck, &s)?,
        &["d-consistency/explicit"],
    )])
}

fn ac3(ck: &Checker) -> Result<Vec<CheckReport>> {
    let s = spec(ck, CheckName::DConsistency, &[("size", 3), ("k", 1)]);
    Ok(vec![only(
        check_d_consistency(ck, &s)?,
        &["d-consistency/homogeneous", "d-consistency/bbd-degree"],
    )])
}

fn ac4(ck: &Checker) -> Result<Vec<CheckReport>> {
    let s = spec(
        ck,
        CheckName::PProperties,
        &[("size", 4), ("product-size", 1), ("mult-l", 1)],
    );
    Ok(vec![only(
        check_p_properties(ck, &s)?,
        &["p-properties/leading-term", "p-properties/anchor"],
    )])
}

fn ac5(ck: &Checker) -> Result<Vec<CheckReport>> {
    let s = spec(ck, CheckName::Integrality, &[("size", 3)]);
    Ok(vec![forms_part(ck, &s, PresetKind::Sl2)?])
}

fn ac6(ck: &Checker) -> Result<Vec<CheckReport>> {
    let s = spec(ck, CheckName::DividedPowers, &[("total", 8)]);
    Ok(vec![check_divided_powers(ck, &s)?])
}

fn ac7(ck: &Checker) -> Result<Vec<CheckReport>> {
    let s = spec(ck, CheckName::A2, &[("order", 3)]);
    Ok(vec![check_a2(ck, &s)?])
}

fn ac8(ck: &Checker) -> Result<Vec<CheckReport>> {
    let s = spec(ck, CheckName::Commutation, &[("size", 2), ("r", 2)]);
    Ok(vec![check_commutation(ck, &s)?])
}

fn ac9(ck: &Checker) -> Result<Vec<CheckReport>> {
    let s = spec(ck, CheckName::DIdentities, &[("size", 2)]);
    Ok(vec![check_d_identities(ck, &s)?])
}

fn ac10(ck: &Checker) -> Result<Vec<CheckReport>> {
    let s = spec(
        ck,
        CheckName::Integrality,
        &[("order", 3), ("length", 3), ("chi-size", 2)],
    );
    Ok(vec![
        product_part(ck, &s, PresetKind::Sl2)?,
        commutator_part(ck, &s, PresetKind::Sl2)?,
    ])
}

fn ac11(ck: &Checker) -> Result<Vec<CheckReport>> {
    let s = spec(ck, CheckName::Integrality, &[("ad-order", 4)]);
    Ok(vec![
        adjoint_part(ck, &s, PresetKind::Sl2)?,
        adjoint_part(ck, &s, PresetKind::Sl3)?,
    ])
}

fn ac12(ck: &Checker) -> Result<Vec<CheckReport>> {
    // both presets, each with its own 6-generator word pool
    let s = spec(
        ck,
        CheckName::Engine,
        &[("triples", 500), ("word-length", 4)],
    );
    Ok(vec![check_engine(ck, &s)?])
}

const CRITERIA: [Criterion; 12] = [
    Criterion {
        id: 1,
        title: "straightening of x+(phi)x-(chi)",
        limit: Duration::from_secs(300),
        run: ac1,
    },
    Criterion {
        id: 2,
        title: "explicit D against recursive D",
        limit: Duration::from_secs(60),
        run: ac2,
    },
    Criterion {
        id: 3,
        title: "D homogeneity and bbD degree bound",
        limit: Duration::from_secs(60),
        run: ac3,
    },
    Criterion {
        id: 4,
        title: "leading term of p(chi)",
        limit: Duration::from_secs(60),
        run: ac4,
    },
    Criterion {
        id: 5,
        title: "integrality of D and p",
        limit: Duration::from_secs(300),
        run: ac5,
    },
    Criterion {
        id: 6,
        title: "divided-power product law",
        limit: Duration::from_secs(10),
        run: ac6,
    },
    Criterion {
        id: 7,
        title: "A2 straightening signs",
        limit: Duration::from_secs(120),
        run: ac7,
    },
    Criterion {
        id: 8,
        title: "commutation past p",
        limit: Duration::from_secs(300),
        run: ac8,
    },
    Criterion {
        id: 9,
        title: "D and bbD identities",
        limit: Duration::from_secs(300),
        run: ac9,
    },
    Criterion {
        id: 10,
        title: "triangular decomposition",
        limit: Duration::from_secs(600),
        run: ac10,
    },
    Criterion {
        id: 11,
        title: "adjoint integrality",
        limit: Duration::from_secs(60),
        run: ac11,
    },
    Criterion {
        id: 12,
        title: "engine self-consistency",
        limit: Duration::from_secs(120),
        run: ac12,
    },
];

fn main() -> ExitCode {
    let labels = LabelConfig::polynomial(1);
    let mut all_pass = true;
    for c in &CRITERIA {
        // a fresh checker per criterion keeps the timings independent
        let ck = Checker::new(labels, 0);
        let start = Instant::now();
        let outcome = (c.run)(&ck);
        let elapsed = start.elapsed();
        let (pass, note) = match &outcome {
            Ok(reports) => {
                let instances: usize = reports.iter().map(|r| r.instances).sum();
                let failures: usize = reports.iter().map(|r| r.failure_count).sum();
                let ok = reports.iter().all(|r| r.pass) && instances > 0 && elapsed <= c.limit;
                (ok, format!("instances={instances} failures={failures}"))
            }
            Err(e) => (false, format!("error: {e}")),
        };
        all_pass &= pass;
        println!(
            "[{}] AC-{:<2} {:<38} {} elapsed={:.2}s limit={}s",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            note,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
        if let Ok(reports) = &outcome {
            for f in reports.iter().flat_map(|r| &r.failures).take(3) {
                println!("       counterexample {} {}", f.part, f.args);
            }
        }
    }
    if all_pass {
        println!("acceptance: all 12 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: FAILED");
        ExitCode::FAILURE
    }
}
