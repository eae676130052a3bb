use num_traits::Zero;
use serde_json::json;

use super::{label_json, ms_json, CheckReport, CheckSpec, Checker, Outcome};
use crate::combinatorics::{multisets_over, ALabel, Multiset};
use crate::error::Result;
use crate::forms::{BasisIndex, FormEngine};
use crate::pbw::{Element, Generator, PresetKind, Sign};

/// Passes iff `e` reduces over `ℬ` with integer coefficients, zero residual,
/// and only basis elements accepted by `accept`.
///
/// On failure the right side is the accepted integral part of the expansion,
/// so the difference carries the offending terms.
pub fn integral_outcome(
    f: &FormEngine,
    e: Element,
    accept: impl Fn(&BasisIndex) -> bool,
) -> Result<Outcome> {
    let r = f.reduce_to_basis(&e)?;
    let ok = r.residual.is_zero() && r.terms.iter().all(|(idx, c)| c.is_integer() && accept(idx));
    if ok {
        return Ok(Outcome::new(e.clone(), e));
    }
    let mut rhs = f.algebra().zero();
    for (idx, c) in &r.terms {
        let fl = c.floor();
        if accept(idx) && !fl.is_zero() {
            rhs.add_scaled(&*f.basis_arc(idx)?, &fl);
        }
    }
    Ok(Outcome::new(e, rhs))
}

#[derive(Clone, Copy, Debug)]
enum Obj {
    D(Sign),
    Bbd,
    P,
}

impl Obj {
    fn name(self) -> &'static str {
        match self {
            Obj::D(Sign::Plus) => "D+",
            Obj::D(Sign::Minus) => "D-",
            Obj::Bbd => "bbD",
            Obj::P => "p",
        }
    }
}

type FormCase = (Obj, usize, Multiset, Multiset, Multiset);

/// `D^±`, `𝔻` and `p` (through `Ω_α` on `𝔰𝔩₃`) reduce integrally.
pub fn forms_part(ck: &Checker, spec: &CheckSpec, kind: PresetKind) -> Result<CheckReport> {
    let f = ck.engine(kind)?;
    let roots = f.algebra().preset().num_positive_roots();
    let size = match kind {
        PresetKind::Sl2 => spec.bound("size"),
        PresetKind::Sl3 => spec.bound("sl3-size"),
    };
    let pool = multisets_over(&spec.labels, size);
    let mut cases: Vec<FormCase> = Vec::new();
    for alpha in 0..roots {
        for a in &pool {
            for b in &pool {
                cases.push((Obj::P, alpha, a.clone(), b.clone(), Multiset::new()));
                for c in &pool {
                    for obj in [Obj::D(Sign::Plus), Obj::D(Sign::Minus), Obj::Bbd] {
                        cases.push((obj, alpha, a.clone(), b.clone(), c.clone()));
                    }
                }
            }
        }
    }
    ck.run_part(
        &format!("integrality/forms[{}]", kind.name()),
        spec.seed,
        &cases,
        |(obj, alpha, a, b, c)| {
            json!({"object": obj.name(), "alpha": alpha, "psi1": ms_json(a), "psi2": ms_json(b), "psi3": ms_json(c)})
        },
        |(obj, alpha, a, b, c)| {
            let e = match obj {
                Obj::D(s) => f.d_alpha(*s, *alpha, a, b, c)?,
                Obj::Bbd => f.bbd_alpha(*alpha, a, b, c)?,
                Obj::P => f.p_alpha_pair(*alpha, a, b)?,
            };
            integral_outcome(&f, e, |_| true)
        },
    )
}

/// `(ad x^±_β⊗a)^(r)` maps each `z⊗c` to an integer combination of `z′⊗c′`.
pub fn adjoint_part(ck: &Checker, spec: &CheckSpec, kind: PresetKind) -> Result<CheckReport> {
    let f = ck.engine(kind)?;
    let alg = f.algebra();
    let preset = alg.preset();
    let mut cases = Vec::new();
    for sign in [Sign::Plus, Sign::Minus] {
        for beta in 0..preset.num_positive_roots() {
            for a in &spec.labels {
                for r in 1..=spec.bound("ad-order") {
                    for z in 0..preset.dim() {
                        for c in &spec.labels {
                            cases.push((
                                alg.root_generator(sign, beta, a.clone()),
                                r,
                                Generator::new(z, c.clone()),
                            ));
                        }
                    }
                }
            }
        }
    }
    ck.run_part(
        &format!("integrality/adjoint[{}]", kind.name()),
        spec.seed,
        &cases,
        |(x, r, v)| {
            json!({"x": preset.name(x.lie), "a": label_json(&x.label), "r": r, "z": preset.name(v.lie), "c": label_json(&v.label)})
        },
        |(x, r, v)| Ok(Outcome::integer_coefficients(alg.ad_divided(x, *r as i64, &alg.gen(v.clone()))?)),
    )
}

/// Divided-power root vectors `(x^±_β⊗a)^(r)`.
fn divided_generators(f: &FormEngine, labels: &[ALabel], order: u32) -> Vec<(Generator, u32)> {
    let alg = f.algebra();
    let mut out = Vec::new();
    for sign in [Sign::Minus, Sign::Plus] {
        for beta in 0..alg.preset().num_positive_roots() {
            for a in labels {
                for r in 1..=order {
                    out.push((alg.root_generator(sign, beta, a.clone()), r));
                }
            }
        }
    }
    out
}

/// Every product of at most `length` divided-power root vectors lies in the
/// `ℤ`-span of `ℬ`.
pub fn product_part(ck: &Checker, spec: &CheckSpec, kind: PresetKind) -> Result<CheckReport> {
    let f = ck.engine(kind)?;
    let alg = f.algebra();
    let (order, length) = match kind {
        PresetKind::Sl2 => (spec.bound("order"), spec.bound("length")),
        PresetKind::Sl3 => (spec.bound("sl3-order"), spec.bound("sl3-length")),
    };
    let gens = divided_generators(&f, &spec.labels, order);
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut cases = Vec::new();
    for _ in 0..length {
        words = words
            .iter()
            .flat_map(|w| (0..gens.len()).map(move |i| [w.as_slice(), &[i]].concat()))
            .collect();
        cases.extend(words.iter().cloned());
    }
    let preset = alg.preset();
    ck.run_part(
        &format!("integrality/products[{}]", kind.name()),
        spec.seed,
        &cases,
        |w| {
            let factors: Vec<String> = w
                .iter()
                .map(|&i| {
                    let (g, r) = &gens[i];
                    format!("({}⊗{})^({})", preset.name(g.lie), g.label, r)
                })
                .collect();
            json!({"word": factors.join(" ")})
        },
        |w| {
            let mut e = alg.one();
            for &i in w {
                let (g, r) = &gens[i];
                e = alg.mul(&e, &alg.divided_power(g, *r as i64)?);
            }
            integral_outcome(&f, e, |_| true)
        },
    )
}

#[derive(Clone, Debug)]
enum Bracket {
    /// `[(x⁺_α⊗a)^(r), (x⁻_α⊗b)^(s)]`
    RootRoot(usize, ALabel, u32, ALabel, u32),
    /// `[(x⁺_α⊗a)^(r), p_i(χ)]`
    RootP(usize, ALabel, u32, usize, Multiset),
    /// `[p_i(χ), (x⁻_α⊗a)^(s)]`
    PRoot(usize, Multiset, usize, ALabel, u32),
}

/// Commutators of divided powers with each other and with `p_i`: integral,
/// with degree strictly below the naive bound.
pub fn commutator_part(ck: &Checker, spec: &CheckSpec, kind: PresetKind) -> Result<CheckReport> {
    let f = ck.engine(kind)?;
    let alg = f.algebra();
    let preset = alg.preset();
    let order = match kind {
        PresetKind::Sl2 => spec.bound("order"),
        PresetKind::Sl3 => spec.bound("sl3-order"),
    };
    let chis = multisets_over(&spec.labels, spec.bound("chi-size"));
    let mut cases = Vec::new();
    for alpha in 0..preset.num_positive_roots() {
        for a in &spec.labels {
            for r in 1..=order {
                for b in &spec.labels {
                    for s in 1..=order {
                        cases.push(Bracket::RootRoot(alpha, a.clone(), r, b.clone(), s));
                    }
                }
                for i in 0..preset.rank() {
                    for chi in &chis {
                        cases.push(Bracket::RootP(alpha, a.clone(), r, i, chi.clone()));
                        cases.push(Bracket::PRoot(i, chi.clone(), alpha, a.clone(), r));
                    }
                }
            }
        }
    }
    let xdp = |sign, alpha, a: &ALabel, r: u32| {
        alg.divided_power(&alg.root_generator(sign, alpha, a.clone()), r as i64)
    };
    let p_i = |i: usize, chi: &Multiset| f.p_alpha_arc(preset.simple_root(i), chi);
    ck.run_part(
        &format!("integrality/commutators[{}]", kind.name()),
        spec.seed,
        &cases,
        |c| match c {
            Bracket::RootRoot(al, a, r, b, s) => {
                json!({"form": "[x+^(r), x-^(s)]", "alpha": al, "a": label_json(a), "r": r, "b": label_json(b), "s": s})
            }
            Bracket::RootP(al, a, r, i, chi) => {
                json!({"form": "[x+^(r), p_i]", "alpha": al, "a": label_json(a), "r": r, "i": i, "chi": ms_json(chi)})
            }
            Bracket::PRoot(i, chi, al, a, s) => {
                json!({"form": "[p_i, x-^(s)]", "alpha": al, "a": label_json(a), "s": s, "i": i, "chi": ms_json(chi)})
            }
        },
        |c| {
            let (e, bound) = match c {
                Bracket::RootRoot(al, a, r, b, s) => (
                    alg.commutator(&xdp(Sign::Plus, *al, a, *r)?, &xdp(Sign::Minus, *al, b, *s)?),
                    r + s,
                ),
                Bracket::RootP(al, a, r, i, chi) => {
                    (alg.commutator(&xdp(Sign::Plus, *al, a, *r)?, &*p_i(*i, chi)?), r + chi.size())
                }
                Bracket::PRoot(i, chi, al, a, s) => {
                    (alg.commutator(&*p_i(*i, chi)?, &xdp(Sign::Minus, *al, a, *s)?), s + chi.size())
                }
            };
            let deg = Outcome::degree_below(e.clone(), bound);
            if !deg.passed() {
                return Ok(deg);
            }
            integral_outcome(&f, e, |_| true)
        },
    )
}

pub fn check_integrality(ck: &Checker, spec: &CheckSpec) -> Result<CheckReport> {
    let mut reports = Vec::new();
    for kind in spec.presets()? {
        reports.push(forms_part(ck, spec, kind)?);
        reports.push(adjoint_part(ck, spec, kind)?);
        reports.push(product_part(ck, spec, kind)?);
        reports.push(commutator_part(ck, spec, kind)?);
    }
    Ok(CheckReport::merge(spec.name.as_str(), spec.seed, reports))
}
