use num_rational::BigRational;
use serde_json::json;

use super::{label_json, ms_json, CheckReport, CheckSpec, Checker, Outcome};
use crate::combinatorics::{multisets_over, ALabel, Multiset};
use crate::error::Result;
use crate::forms::FormEngine;
use crate::pbw::{Element, Generator, PresetKind, Sign};

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn sign_str(s: Sign) -> &'static str {
    match s {
        Sign::Plus => "+",
        Sign::Minus => "-",
    }
}

pub fn check_d_consistency(ck: &Checker, spec: &CheckSpec) -> Result<CheckReport> {
    spec.presets()?;
    let f = ck.engine(PresetKind::Sl2)?;
    let size = spec.bound("size");
    let pool = multisets_over(&spec.labels, size);

    let mut explicit = Vec::new();
    for psi in &pool {
        for k in 1..=spec.bound("k") {
            for b in &spec.labels {
                for c in &spec.labels {
                    for sign in [Sign::Plus, Sign::Minus] {
                        explicit.push((sign, psi.clone(), b.clone(), k, c.clone()));
                    }
                }
            }
        }
    }
    let explicit = ck.run_part(
        "d-consistency/explicit",
        spec.seed,
        &explicit,
        |(s, psi, b, k, c)| {
            json!({"sign": sign_str(*s), "psi": ms_json(psi), "b": label_json(b), "k": k, "c": label_json(c)})
        },
        |(s, psi, b, k, c)| {
            let lhs = f.d_explicit(*s, psi, b, *k, c, spec.reading)?;
            let rhs = f.d_rec(
                *s,
                psi,
                &Multiset::scaled(b.clone(), psi.size()),
                &Multiset::scaled(c.clone(), *k),
            );
            Ok(Outcome::new(lhs, rhs))
        },
    )?;

    let mut triples = Vec::new();
    for a in &pool {
        for b in &pool {
            for c in &pool {
                triples.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    let signed: Vec<_> = triples
        .iter()
        .flat_map(|t| [(Sign::Plus, t.clone()), (Sign::Minus, t.clone())])
        .collect();
    let describe3 = |(a, b, c): &(Multiset, Multiset, Multiset)| json!({"psi1": ms_json(a), "psi2": ms_json(b), "psi3": ms_json(c)});
    let homogeneous = ck.run_part(
        "d-consistency/homogeneous",
        spec.seed,
        &signed,
        |(s, t)| {
            let mut v = describe3(t);
            v["sign"] = sign_str(*s).into();
            v
        },
        |(s, (a, b, c))| Ok(Outcome::homogeneous(f.d_rec(*s, a, b, c), c.size())),
    )?;
    let bbd_degree = ck.run_part(
        "d-consistency/bbd-degree",
        spec.seed,
        &triples,
        describe3,
        |(a, b, c)| Ok(Outcome::degree_at_most(f.bbd(a, b, c), c.size() + a.size())),
    )?;
    Ok(CheckReport::merge(
        spec.name.as_str(),
        spec.seed,
        vec![explicit, homogeneous, bbd_degree],
    ))
}

/// Both sides of `ψ2(b)D^±(ψ1,ψ2,ψ3) = Σ φ2(b) D^±(φ1,φ2,χ_c) D^±(ψ1−φ1,ψ2−φ2,ψ3−χ_c)`
/// (`second = false`), or of the same sum weighted by `|φ1|+1` against
/// `(|ψ2|+|ψ3|)D^±(ψ1,ψ2,ψ3)` (`second = true`).
pub fn d_split(
    f: &FormEngine,
    sign: Sign,
    psi1: &Multiset,
    psi2: &Multiset,
    psi3: &Multiset,
    b: &ALabel,
    second: bool,
) -> (Element, Element) {
    let alg = f.sl2();
    let d = f.d_arc(sign, psi1, psi2, psi3);
    let lhs = if second {
        d.scale_int((psi2.size() + psi3.size()) as i64)
    } else {
        d.scale_int(psi2.get(b) as i64)
    };
    let mut rhs = alg.zero();
    for phi1 in psi1.sub_multisets() {
        let r1 = psi1.minus(&phi1).expect("sub-multiset");
        for phi2 in psi2.sub_multisets_of_size(phi1.size()) {
            let w = if second {
                phi1.size() as i64 + 1
            } else {
                phi2.get(b) as i64
            };
            if w == 0 {
                continue;
            }
            let r2 = psi2.minus(&phi2).expect("sub-multiset");
            for c in psi3.support() {
                let head = f.d_arc(sign, &phi1, &phi2, &Multiset::single(c.clone()));
                let tail = f.d_arc(sign, &r1, &r2, &psi3.minus_label(c).expect("in support"));
                rhs.add_scaled(&alg.mul(&head, &tail), &int(w));
            }
        }
    }
    (lhs, rhs)
}

/// Both sides of
/// `Σ_ϕ 𝔻(ϕ,χ,φ−ϕ)(x⁻⊗b) = −(χ(b)+1) Σ_ϕ 𝔻(ϕ,χ+χ_b,φ−ϕ)
///   + Σ_ϕ Σ_{φ1≤ϕ, φ2≤χ} (|φ1|+1) D⁻(φ1,φ2,χ_b) 𝔻(ϕ−φ1,χ−φ2,φ−ϕ)`.
pub fn bbd_past_x_minus(
    f: &FormEngine,
    phi: &Multiset,
    chi: &Multiset,
    b: &ALabel,
) -> (Element, Element) {
    let alg = f.sl2();
    let xb = alg.gen(Generator::new(0, b.clone()));
    let chib = chi.plus(&Multiset::single(b.clone()));
    let mut lhs = alg.zero();
    let mut rhs = alg.zero();
    let weight = int(-(chi.get(b) as i64 + 1));
    for part in phi.sub_multisets() {
        let rest = phi.minus(&part).expect("sub-multiset");
        lhs += &alg.mul(&f.bbd_arc(&part, chi, &rest), &xb);
        rhs.add_scaled(&f.bbd_arc(&part, &chib, &rest), &weight);
        for phi1 in part.sub_multisets() {
            for phi2 in chi.sub_multisets_of_size(phi1.size()) {
                let head = f.d_arc(Sign::Minus, &phi1, &phi2, &Multiset::single(b.clone()));
                let tail = f.bbd_arc(
                    &part.minus(&phi1).expect("sub-multiset"),
                    &chi.minus(&phi2).expect("sub-multiset"),
                    &rest,
                );
                rhs.add_scaled(&alg.mul(&head, &tail), &int(phi1.size() as i64 + 1));
            }
        }
    }
    (lhs, rhs)
}

/// Both sides of `−(χ(b)+1) p(φ,χ+χ_b) = Σ_{c∈supp φ} Σ_{φ1≤φ−χ_c, φ2≤χ} 𝓜(φ1)𝓜(φ2)(h⊗bcπ(φ1)π(φ2)) p(φ−χ_c−φ1, χ−φ2)`.
pub fn p_shift(f: &FormEngine, phi: &Multiset, chi: &Multiset, b: &ALabel) -> (Element, Element) {
    let alg = f.sl2();
    let vars = alg.labels().vars;
    let chib = chi.plus(&Multiset::single(b.clone()));
    let lhs = f.p_arc(phi, &chib).scale_int(-(chi.get(b) as i64 + 1));
    let mut rhs = alg.zero();
    for c in phi.support() {
        let phic = phi.minus_label(c).expect("in support");
        for phi1 in phic.sub_multisets() {
            for phi2 in chi.sub_multisets_of_size(phi1.size()) {
                let label = b.times(c).times(&phi1.pi(vars)).times(&phi2.pi(vars));
                let h = alg.gen(Generator::new(1, label));
                let tail = f.p_arc(
                    &phic.minus(&phi1).expect("sub-multiset"),
                    &chi.minus(&phi2).expect("sub-multiset"),
                );
                let w = BigRational::from_integer(phi1.multinomial() * phi2.multinomial());
                rhs.add_scaled(&alg.mul(&h, &tail), &w);
            }
        }
    }
    (lhs, rhs)
}

/// Both sides of
/// `(|φ|−|ϕ|)𝔻(ϕ,χ,φ−ϕ) = Σ_{c∈supp(φ−ϕ)} [(x⁺⊗c)𝔻(ϕ,χ,φ−ϕ−χ_c)
///   − Σ_{d∈supp ϕ, d′∈supp χ} (x⁺⊗cdd′)𝔻(ϕ−χ_d,χ−χ_{d′},φ−ϕ−χ_c)]`.
pub fn bbd_recursion(
    f: &FormEngine,
    phi: &Multiset,
    part: &Multiset,
    chi: &Multiset,
) -> (Element, Element) {
    let alg = f.sl2();
    let rest = phi.minus(part).expect("part ≤ φ");
    let lhs = f.bbd_arc(part, chi, &rest).scale_int(rest.size() as i64);
    let mut rhs = alg.zero();
    for c in rest.support() {
        let rc = rest.minus_label(c).expect("in support");
        let xc = alg.gen(Generator::new(2, c.clone()));
        rhs += &alg.mul(&xc, &f.bbd_arc(part, chi, &rc));
        for d in part.support() {
            for d2 in chi.support() {
                let x = alg.gen(Generator::new(2, c.times(d).times(d2)));
                let tail = f.bbd_arc(
                    &part.minus_label(d).expect("in support"),
                    &chi.minus_label(d2).expect("in support"),
                    &rc,
                );
                rhs -= &alg.mul(&x, &tail);
            }
        }
    }
    (lhs, rhs)
}

pub fn check_d_identities(ck: &Checker, spec: &CheckSpec) -> Result<CheckReport> {
    spec.presets()?;
    let f = ck.engine(PresetKind::Sl2)?;
    let pool = multisets_over(&spec.labels, spec.bound("size"));

    let mut d_cases = Vec::new();
    for a in &pool {
        for b in &pool {
            for c in pool.iter().filter(|c| !c.is_empty()) {
                for l in &spec.labels {
                    for s in [Sign::Plus, Sign::Minus] {
                        d_cases.push((s, a.clone(), b.clone(), c.clone(), l.clone()));
                    }
                }
            }
        }
    }
    let describe_d = |(s, a, b, c, l): &(Sign, Multiset, Multiset, Multiset, ALabel)| json!({"sign": sign_str(*s), "psi1": ms_json(a), "psi2": ms_json(b), "psi3": ms_json(c), "b": label_json(l)});
    let mut reports = Vec::new();
    for (second, part) in [
        (false, "d-identities/d-split"),
        (true, "d-identities/d-split-weighted"),
    ] {
        reports.push(
            ck.run_part(part, spec.seed, &d_cases, describe_d, |(s, a, b, c, l)| {
                let (lhs, rhs) = d_split(&f, *s, a, b, c, l, second);
                Ok(Outcome::new(lhs, rhs))
            })?,
        );
    }

    let mut pairs = Vec::new();
    for phi in &pool {
        for chi in &pool {
            for b in &spec.labels {
                pairs.push((phi.clone(), chi.clone(), b.clone()));
            }
        }
    }
    let describe_p = |(phi, chi, b): &(Multiset, Multiset, ALabel)| json!({"phi": ms_json(phi), "chi": ms_json(chi), "b": label_json(b)});
    reports.push(ck.run_part(
        "d-identities/bbd-past-x-",
        spec.seed,
        &pairs,
        describe_p,
        |(phi, chi, b)| {
            let (lhs, rhs) = bbd_past_x_minus(&f, phi, chi, b);
            Ok(Outcome::new(lhs, rhs))
        },
    )?);
    reports.push(ck.run_part(
        "d-identities/p-shift",
        spec.seed,
        &pairs,
        describe_p,
        |(phi, chi, b)| {
            let (lhs, rhs) = p_shift(&f, phi, chi, b);
            Ok(Outcome::new(lhs, rhs))
        },
    )?);

    let mut bbd_cases = Vec::new();
    for phi in &pool {
        for part in phi.sub_multisets() {
            for chi in &pool {
                bbd_cases.push((phi.clone(), part.clone(), chi.clone()));
            }
        }
    }
    reports.push(ck.run_part(
        "d-identities/bbd-recursion",
        spec.seed,
        &bbd_cases,
        |(phi, part, chi)| json!({"phi": ms_json(phi), "part": ms_json(part), "chi": ms_json(chi)}),
        |(phi, part, chi)| {
            let (lhs, rhs) = bbd_recursion(&f, phi, part, chi);
            Ok(Outcome::new(lhs, rhs))
        },
    )?);
    Ok(CheckReport::merge(spec.name.as_str(), spec.seed, reports))
}
