use num_rational::BigRational;
use num_traits::One;
use serde_json::json;

use super::{label_json, ms_json, CheckReport, CheckSpec, Checker, Outcome};
use crate::combinatorics::{
    binomial, multisets_over, subpartitions_k, subpartitions_k_nonempty, ALabel, Multiset,
};
use crate::error::Result;
use crate::forms::{FormEngine, Reading};
use crate::pbw::{Element, Generator, PresetKind, Sign};

fn coefficient(pairing: i64, size: u32) -> BigRational {
    BigRational::from_integer(binomial(pairing + size as i64 - 1, size))
}

/// Both sides of `(x⁺_α⊗b) p_i(φ,χ) = Σ C(α(h_i)+|ψ1|−1, |ψ1|) 𝓜(ψ1)𝓜(ψ2) p_i(φ−ψ1,χ−ψ2)(x⁺_α⊗bπ(ψ1)π(ψ2))`
/// (`minus = false`), or the mirrored `p_i(φ,χ)(x⁻_α⊗b)` form (`minus = true`).
pub fn x_past_p(
    f: &FormEngine,
    alpha: usize,
    i: usize,
    phi: &Multiset,
    chi: &Multiset,
    b: &ALabel,
    minus: bool,
) -> Result<(Element, Element)> {
    let alg = f.algebra();
    let preset = alg.preset();
    let simple = preset.simple_root(i);
    let pairing = preset.pairing(alpha, i);
    let vars = alg.labels().vars;
    let sign = if minus { Sign::Minus } else { Sign::Plus };
    let x = alg.gen(alg.root_generator(sign, alpha, b.clone()));
    let p = f.p_alpha_pair(simple, phi, chi)?;
    let lhs = if minus {
        alg.mul(&p, &x)
    } else {
        alg.mul(&x, &p)
    };
    let mut rhs = alg.zero();
    for psi1 in phi.sub_multisets() {
        for psi2 in chi.sub_multisets_of_size(psi1.size()) {
            let label = b.times(&psi1.pi(vars)).times(&psi2.pi(vars));
            let xg = alg.gen(alg.root_generator(sign, alpha, label));
            let rest = f.p_alpha_pair(simple, &phi.minus(&psi1)?, &chi.minus(&psi2)?)?;
            let w = coefficient(pairing, psi1.size())
                * BigRational::from_integer(psi1.multinomial() * psi2.multinomial());
            let term = if minus {
                alg.mul(&xg, &rest)
            } else {
                alg.mul(&rest, &xg)
            };
            rhs.add_scaled(&term, &w);
        }
    }
    Ok((lhs, rhs))
}

/// Both sides of `(x⁺_α⊗b)^(r) p_i(χ) = Σ_{ψ∈𝒮_r(χ)} p_i(χ−Σψ(φ)φ) ∏_φ (C 𝓜(φ)(x⁺_α⊗bπ(φ)))^(ψ(φ))`
/// (`minus = false`), or the mirrored `p_i(χ)(x⁻_α⊗b)^(r)` form.
#[allow(clippy::too_many_arguments)]
pub fn x_past_p_single(
    f: &FormEngine,
    alpha: usize,
    i: usize,
    chi: &Multiset,
    b: &ALabel,
    r: u32,
    minus: bool,
    reading: Reading,
) -> Result<(Element, Element)> {
    let alg = f.algebra();
    let preset = alg.preset();
    let simple = preset.simple_root(i);
    let pairing = preset.pairing(alpha, i);
    let vars = alg.labels().vars;
    let sign = if minus { Sign::Minus } else { Sign::Plus };
    let xr = alg.divided_power(&alg.root_generator(sign, alpha, b.clone()), r as i64)?;
    let p = f.p_alpha(simple, chi)?;
    let lhs = if minus {
        alg.mul(&p, &xr)
    } else {
        alg.mul(&xr, &p)
    };
    let parts = match reading {
        Reading::Corrected => subpartitions_k(chi, r),
        Reading::Literal => subpartitions_k_nonempty(chi, r),
    };
    let mut rhs = alg.zero();
    for psi in parts {
        let mut prod = alg.one();
        for (phi, n) in psi.iter() {
            let c = coefficient(pairing, phi.size()) * BigRational::from_integer(phi.multinomial());
            let g = alg.root_generator(sign, alpha, b.times(&phi.pi(vars)));
            let cn = (0..n).fold(BigRational::one(), |acc, _| acc * &c);
            prod = alg.mul(&prod, &alg.divided_power(&g, n as i64)?.scale(&cn));
        }
        let rest = f.p_alpha(simple, &chi.minus(&psi.weighted_sum())?)?;
        rhs += &if minus {
            alg.mul(&prod, &rest)
        } else {
            alg.mul(&rest, &prod)
        };
    }
    Ok((lhs, rhs))
}

/// Both sides of
/// `p(φ,χ)(x⁺⊗b) = (x⁺⊗b)p(φ,χ) − 2Σ_{c,d}(x⁺⊗bcd)p(φ−χ_c,χ−χ_d)
///   + Σ_{φ1∈𝓕_2(φ), φ2∈𝓕_2(χ)} 𝓜(φ1)𝓜(φ2)(x⁺⊗bπ(φ1)π(φ2))p(φ−φ1,χ−φ2)` in `𝔰𝔩₂`.
pub fn p_past_x(
    f: &FormEngine,
    phi: &Multiset,
    chi: &Multiset,
    b: &ALabel,
) -> Result<(Element, Element)> {
    let alg = f.sl2();
    let vars = alg.labels().vars;
    let x = |label: ALabel| alg.gen(Generator::new(2, label));
    let p = f.p_arc(phi, chi);
    let lhs = alg.mul(&p, &x(b.clone()));
    let mut rhs = alg.mul(&x(b.clone()), &p);
    for c in phi.support() {
        for d in chi.support() {
            let tail = f.p_arc(&phi.minus_label(c)?, &chi.minus_label(d)?);
            rhs.add_scaled(
                &alg.mul(&x(b.times(c).times(d)), &tail),
                &BigRational::from_integer((-2).into()),
            );
        }
    }
    for phi1 in phi.sub_multisets_of_size(2) {
        for phi2 in chi.sub_multisets_of_size(2) {
            let label = b.times(&phi1.pi(vars)).times(&phi2.pi(vars));
            let tail = f.p_arc(&phi.minus(&phi1)?, &chi.minus(&phi2)?);
            let w = BigRational::from_integer(phi1.multinomial() * phi2.multinomial());
            rhs.add_scaled(&alg.mul(&x(label), &tail), &w);
        }
    }
    Ok((lhs, rhs))
}

pub fn check_commutation(ck: &Checker, spec: &CheckSpec) -> Result<CheckReport> {
    let pool = multisets_over(&spec.labels, spec.bound("size"));
    let mut reports = Vec::new();
    for kind in spec.presets()? {
        let f = ck.engine(kind)?;
        let preset = f.algebra().preset();
        let mut pairs = Vec::new();
        for alpha in 0..preset.num_positive_roots() {
            for i in (0..preset.rank()).filter(|&i| preset.pairing(alpha, i) != 0) {
                pairs.push((alpha, i));
            }
        }

        let mut cases = Vec::new();
        for &(alpha, i) in &pairs {
            for phi in &pool {
                for chi in &pool {
                    for b in &spec.labels {
                        cases.push((alpha, i, phi.clone(), chi.clone(), b.clone()));
                    }
                }
            }
        }
        for (minus, part) in [(false, "x-past-p-plus"), (true, "x-past-p-minus")] {
            reports.push(ck.run_part(
                &format!("commutation/{part}[{}]", kind.name()),
                spec.seed,
                &cases,
                |(alpha, i, phi, chi, b)| {
                    json!({"alpha": alpha, "i": i, "phi": ms_json(phi), "chi": ms_json(chi), "b": label_json(b)})
                },
                |(alpha, i, phi, chi, b)| {
                    let (lhs, rhs) = x_past_p(&f, *alpha, *i, phi, chi, b, minus)?;
                    Ok(Outcome::new(lhs, rhs))
                },
            )?);
        }

        let mut rcases = Vec::new();
        for &(alpha, i) in &pairs {
            for chi in &pool {
                for b in &spec.labels {
                    for r in 1..=spec.bound("r") {
                        rcases.push((alpha, i, chi.clone(), b.clone(), r));
                    }
                }
            }
        }
        for (minus, part) in [(false, "xr-past-p-plus"), (true, "xr-past-p-minus")] {
            reports.push(ck.run_part(
                &format!("commutation/{part}[{}]", kind.name()),
                spec.seed,
                &rcases,
                |(alpha, i, chi, b, r)| json!({"alpha": alpha, "i": i, "chi": ms_json(chi), "b": label_json(b), "r": r}),
                |(alpha, i, chi, b, r)| {
                    let (lhs, rhs) = x_past_p_single(&f, *alpha, *i, chi, b, *r, minus, spec.reading)?;
                    Ok(Outcome::new(lhs, rhs))
                },
            )?);
        }

        if kind == PresetKind::Sl2 {
            let mut qcases = Vec::new();
            for phi in &pool {
                for chi in &pool {
                    for b in &spec.labels {
                        qcases.push((phi.clone(), chi.clone(), b.clone()));
                    }
                }
            }
            reports.push(ck.run_part(
                "commutation/p-past-x+[sl2]",
                spec.seed,
                &qcases,
                |(phi, chi, b)| json!({"phi": ms_json(phi), "chi": ms_json(chi), "b": label_json(b)}),
                |(phi, chi, b)| {
                    let (lhs, rhs) = p_past_x(&f, phi, chi, b)?;
                    Ok(Outcome::new(lhs, rhs))
                },
            )?);
        }
    }
    Ok(CheckReport::merge(spec.name.as_str(), spec.seed, reports))
}
