use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::json;

use super::{label_json, CheckReport, CheckSpec, Checker, Outcome};
use crate::combinatorics::ALabel;
use crate::error::{Error, Result};
use crate::pbw::{Algebra, Element, Monomial, PresetKind, Sign};

/// The normalized left side `x_α(rχ_a) x_β(sχ_b)`, the normalized products
/// `T_k = (x_β⊗b)^(s−k) (x_{α+β}⊗ab)^(k) (x_α⊗a)^(r−k)`, and the coefficients
/// `ε_k` with `lhs = Σ ε_k T_k` when such coefficients exist.
///
/// `T_k` contains the sorted form of its own leading word with nonzero
/// coefficient and otherwise only words with more `x_{α+β}` factors, so the
/// `ε_k` are found by elimination in increasing `k`. The last component is
/// what remains of `lhs` after elimination.
#[allow(clippy::type_complexity)]
#[allow(clippy::too_many_arguments)]
pub fn extract_signs(
    alg: &Algebra,
    alpha: usize,
    beta: usize,
    sign: Sign,
    r: u32,
    s: u32,
    a: &ALabel,
    b: &ALabel,
) -> Result<(Element, Vec<Element>, Vec<BigRational>, Element)> {
    let preset = alg.preset();
    let sum: Vec<i64> = preset
        .root(alpha)
        .iter()
        .zip(preset.root(beta))
        .map(|(x, y)| x + y)
        .collect();
    let gamma = preset.root_index(&sum).ok_or_else(|| {
        Error::Config(format!(
            "{} and {} do not span an A2 subsystem",
            alpha, beta
        ))
    })?;
    let xa = alg.root_generator(sign, alpha, a.clone());
    let xb = alg.root_generator(sign, beta, b.clone());
    let xab = alg.root_generator(sign, gamma, a.times(b));
    let lhs = alg.mul(
        &alg.divided_power(&xa, r as i64)?,
        &alg.divided_power(&xb, s as i64)?,
    );
    let mut residual = lhs.clone();
    let mut terms = Vec::new();
    let mut eps = Vec::new();
    for k in 0..=r.min(s) {
        let t = alg.product(&[
            alg.divided_power(&xb, (s - k) as i64)?,
            alg.divided_power(&xab, k as i64)?,
            alg.divided_power(&xa, (r - k) as i64)?,
        ]);
        let mut factors: Vec<_> = [(xb.clone(), s - k), (xab.clone(), k), (xa.clone(), r - k)]
            .into_iter()
            .filter(|(_, e)| *e > 0)
            .collect();
        factors.sort();
        let lead = Monomial::from_factors(factors)?;
        let pivot = t.coefficient(&lead);
        if pivot.is_zero() {
            return Err(Error::Validation(format!("T_{k} lacks its leading word")));
        }
        let e = residual.coefficient(&lead) / pivot;
        residual.add_scaled(&t, &-&e);
        terms.push(t);
        eps.push(e);
    }
    Ok((lhs, terms, eps, residual))
}

type A2Case = (usize, usize, Sign, u32, u32, ALabel, ALabel);

pub fn check_a2(ck: &Checker, spec: &CheckSpec) -> Result<CheckReport> {
    spec.presets()?;
    let f = ck.engine(PresetKind::Sl3)?;
    let alg = f.algebra();
    let preset = alg.preset();
    let (s1, s2) = (preset.simple_root(0), preset.simple_root(1));
    let order = spec.bound("order");
    let mut cases: Vec<A2Case> = Vec::new();
    for (alpha, beta) in [(s1, s2), (s2, s1)] {
        for sign in [Sign::Plus, Sign::Minus] {
            for r in 0..=order {
                for s in 0..=order {
                    for a in &spec.labels {
                        for b in &spec.labels {
                            cases.push((alpha, beta, sign, r, s, a.clone(), b.clone()));
                        }
                    }
                }
            }
        }
    }
    let describe = |(alpha, beta, sign, r, s, a, b): &A2Case| {
        json!({
            "alpha": preset.name(preset.root_vector(true, *alpha)),
            "beta": preset.name(preset.root_vector(true, *beta)),
            "sign": if *sign == Sign::Plus { "+" } else { "-" },
            "r": r, "s": s, "a": label_json(a), "b": label_json(b),
        })
    };
    let report = ck.run_part("a2/straightening", spec.seed, &cases, describe, |case| {
        let (alpha, beta, sign, r, s, a, b) = case;
        let (lhs, terms, eps, _) = extract_signs(alg, *alpha, *beta, *sign, *r, *s, a, b)?;
        // rebuild with every ε rounded to ±1, so a coefficient outside {±1}
        // shows up as a nonzero difference
        let mut rhs = alg.zero();
        let mut signs = Vec::new();
        for (t, e) in terms.iter().zip(&eps) {
            let unit = if *e < BigRational::zero() {
                -BigRational::one()
            } else {
                BigRational::one()
            };
            rhs.add_scaled(t, &unit);
            signs.push(if e.is_integer() {
                e.to_integer().to_string()
            } else {
                e.to_string()
            });
        }
        let mut detail = describe(case);
        detail["eps"] = json!(signs);
        Ok(Outcome {
            lhs,
            rhs,
            detail: Some(detail),
        })
    })?;
    Ok(CheckReport::merge(
        spec.name.as_str(),
        spec.seed,
        vec![report],
    ))
}
