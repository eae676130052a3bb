use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{ms_json, CheckReport, CheckSpec, Checker, Outcome};
use crate::combinatorics::{multisets_over, ALabel, Multiset};
use crate::error::Result;
use crate::forms::FormEngine;
use crate::pbw::{Element, Generator, PresetKind, Sign};

/// The right side of `x⁺(φ)x⁻(χ) = Σ (−1)^{|ψ1|+|ψ2|} D⁻(φ1,ψ1,χ−ψ1−ψ2) 𝔻(φ2,ψ2,φ−φ1−φ2)`.
pub fn straightening_rhs(f: &FormEngine, phi: &Multiset, chi: &Multiset) -> Element {
    let alg = f.sl2();
    let mut out = alg.zero();
    for phi1 in phi.sub_multisets() {
        let phi_rest = phi.minus(&phi1).expect("sub-multiset");
        for psi1 in chi.sub_multisets_of_size(phi1.size()) {
            let chi_rest = chi.minus(&psi1).expect("sub-multiset");
            for psi2 in chi_rest.sub_multisets() {
                let d_minus = f.d_arc(
                    Sign::Minus,
                    &phi1,
                    &psi1,
                    &chi_rest.minus(&psi2).expect("sub-multiset"),
                );
                if d_minus.is_zero() {
                    continue;
                }
                for phi2 in phi_rest.sub_multisets_of_size(psi2.size()) {
                    let third = phi_rest.minus(&phi2).expect("sub-multiset");
                    let bbd = f.bbd_arc(&phi2, &psi2, &third);
                    if bbd.is_zero() {
                        continue;
                    }
                    let term = alg.mul(&d_minus, &bbd);
                    if (psi1.size() + psi2.size()) % 2 == 0 {
                        out += &term;
                    } else {
                        out -= &term;
                    }
                }
            }
        }
    }
    out
}

fn random_multiset(rng: &mut ChaCha8Rng, pool: &[ALabel], size: u32) -> Multiset {
    let mut m = Multiset::new();
    for _ in 0..size {
        m.add_label(pool.choose(rng).expect("non-empty pool").clone(), 1);
    }
    m
}

pub fn check_straightening(ck: &Checker, spec: &CheckSpec) -> Result<CheckReport> {
    spec.presets()?;
    let f = ck.engine(PresetKind::Sl2)?;
    let alg = f.sl2();
    let size = spec.bound("size");
    let pool = multisets_over(&spec.wide_labels, size);
    let mut cases: Vec<(Multiset, Multiset)> = Vec::new();
    for phi in &pool {
        for chi in &pool {
            cases.push((phi.clone(), chi.clone()));
        }
    }
    let exhaustive = cases.len();
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let k = spec.bound("sample-size");
    for _ in 0..spec.bound("samples") {
        let phi = random_multiset(&mut rng, &spec.labels, k);
        let chi = random_multiset(&mut rng, &spec.labels, k);
        cases.push((phi, chi));
    }
    let describe =
        |(phi, chi): &(Multiset, Multiset)| json!({"phi": ms_json(phi), "chi": ms_json(chi)});
    let eval = |(phi, chi): &(Multiset, Multiset)| {
        let lhs = alg.mul(
            &f.x_power(Sign::Plus, 0, phi)?,
            &f.x_power(Sign::Minus, 0, chi)?,
        );
        Ok(Outcome::new(lhs, straightening_rhs(&f, phi, chi)))
    };
    let exact = ck.run_part(
        "straightening/exhaustive",
        spec.seed,
        &cases[..exhaustive],
        describe,
        eval,
    )?;
    let sampled = ck.run_part(
        "straightening/random",
        spec.seed,
        &cases[exhaustive..],
        describe,
        eval,
    )?;

    // x⁺(χ_1)x⁻(χ_1) = x⁻(χ_1)x⁺(χ_1) + h⊗1, written out by hand.
    let one = ck.labels().unit();
    let c1 = Multiset::single(one.clone());
    let anchor_cases = [(c1.clone(), c1)];
    let anchor = ck.run_part(
        "straightening/anchor",
        spec.seed,
        &anchor_cases,
        describe,
        |(phi, chi)| {
            let xm = alg.gen(Generator::new(0, one.clone()));
            let xp = alg.gen(Generator::new(2, one.clone()));
            let h = alg.gen(Generator::new(1, one.clone()));
            let mut hand = alg.mul(&xm, &xp);
            hand.add_scaled(&h, &BigRational::from_integer(1.into()));
            Ok(Outcome::new(straightening_rhs(&f, phi, chi), hand))
        },
    )?;
    Ok(CheckReport::merge(
        spec.name.as_str(),
        spec.seed,
        vec![exact, sampled, anchor],
    ))
}
