use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::json;

use super::{integral_outcome, label_json, ms_json, CheckReport, CheckSpec, Checker, Outcome};
use crate::combinatorics::{binomial, factorial, multisets_over, Multiset};
use crate::error::Result;
use crate::pbw::{Generator, Monomial, PresetKind};

pub fn check_p_properties(ck: &Checker, spec: &CheckSpec) -> Result<CheckReport> {
    spec.presets()?;
    let f = ck.engine(PresetKind::Sl2)?;
    let alg = f.sl2();

    let pool = multisets_over(&spec.labels, spec.bound("size"));
    let leading = ck.run_part(
        "p-properties/leading-term",
        spec.seed,
        &pool,
        |chi| json!({"chi": ms_json(chi)}),
        |chi| {
            // (−1)^{|χ|} ∏ (h⊗a)^(χ(a))
            let mut factors = Vec::new();
            let mut denom = BigInt::one();
            for (a, k) in chi.iter() {
                factors.push((Generator::new(1, a.clone()), k));
                denom *= factorial(k);
            }
            let sign = if chi.size() % 2 == 0 { 1 } else { -1 };
            let lead = crate::pbw::Element::from_monomial(
                PresetKind::Sl2,
                Monomial::from_factors(factors)?,
                BigRational::new(sign.into(), denom),
            );
            let d = &*f.p_single_arc(chi) - &lead;
            Ok(Outcome::degree_below(d, chi.size()))
        },
    )?;

    let one = ck.labels().unit();
    let anchor_cases = [Multiset::scaled(one.clone(), 2)];
    let anchor = ck.run_part(
        "p-properties/anchor",
        spec.seed,
        &anchor_cases,
        |chi| json!({"chi": ms_json(chi)}),
        |chi| {
            let h = alg.gen(Generator::new(1, one.clone()));
            let half = BigRational::new(1.into(), 2.into());
            let hand = &alg.mul(&h, &h).scale(&half) - &h.scale(&half);
            Ok(Outcome::new(f.p_single(chi), hand))
        },
    )?;

    let small = multisets_over(&spec.labels, spec.bound("product-size"));
    let mut pairs = Vec::new();
    for a in &small {
        for b in &small {
            pairs.push((a.clone(), b.clone()));
        }
    }
    let product = ck.run_part(
        "p-properties/product",
        spec.seed,
        &pairs,
        |(a, b)| json!({"chi": ms_json(a), "chi2": ms_json(b)}),
        |(a, b)| {
            let sum = a.plus(b);
            let weight: BigInt = sum
                .iter()
                .map(|(l, k)| binomial(k as i64, a.get(l)))
                .product();
            let mut e = alg.mul(&f.p_single_arc(a), &f.p_single_arc(b));
            e.add_scaled(&f.p_single_arc(&sum), &-BigRational::from_integer(weight));
            integral_outcome(&f, e, |idx| {
                idx.minus.iter().chain(&idx.plus).all(Multiset::is_empty)
            })
        },
    )?;

    let mut mult = Vec::new();
    for l in 1..=spec.bound("mult-l") {
        for a in &spec.wide_labels {
            for b in &spec.wide_labels {
                mult.push((l, a.clone(), b.clone()));
            }
        }
    }
    let multiplicative = ck.run_part(
        "p-properties/multiplicative",
        spec.seed,
        &mult,
        |(l, a, b)| json!({"l": l, "a": label_json(a), "b": label_json(b)}),
        |(l, a, b)| {
            let lhs = f.p_pair(
                &Multiset::scaled(a.clone(), *l),
                &Multiset::scaled(b.clone(), *l),
            );
            let rhs = f.p_single(&Multiset::scaled(a.times(b), *l));
            Ok(Outcome::new(lhs, rhs))
        },
    )?;
    Ok(CheckReport::merge(
        spec.name.as_str(),
        spec.seed,
        vec![leading, anchor, product, multiplicative],
    ))
}
