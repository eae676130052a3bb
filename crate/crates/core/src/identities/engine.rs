use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{label_json, CheckReport, CheckSpec, Checker, Outcome};
use crate::combinatorics::binomial;
use crate::error::Result;
use crate::pbw::{straighten_word, Algebra, Element, Generator, PresetKind, Strategy};

pub fn check_divided_powers(ck: &Checker, spec: &CheckSpec) -> Result<CheckReport> {
    let total = spec.bound("total");
    let mut reports = Vec::new();
    for kind in spec.presets()? {
        let f = ck.engine(kind)?;
        let alg = f.algebra();
        let preset = alg.preset();
        let mut cases = Vec::new();
        for z in 0..preset.dim() {
            for a in &spec.labels {
                for r in 0..=total {
                    for s in 0..=total - r {
                        cases.push((Generator::new(z, a.clone()), r, s));
                    }
                }
            }
        }
        reports.push(ck.run_part(
            &format!("divided-powers/product[{}]", kind.name()),
            spec.seed,
            &cases,
            |(g, r, s)| json!({"z": preset.name(g.lie), "a": label_json(&g.label), "r": r, "s": s}),
            |(g, r, s)| {
                let lhs = alg.mul(
                    &alg.divided_power(g, *r as i64)?,
                    &alg.divided_power(g, *s as i64)?,
                );
                let c = BigRational::from_integer(binomial((r + s) as i64, *r));
                Ok(Outcome::new(
                    lhs,
                    alg.divided_power(g, (r + s) as i64)?.scale(&c),
                ))
            },
        )?);
    }
    Ok(CheckReport::merge(spec.name.as_str(), spec.seed, reports))
}

/// Six generators spread over all three classes.
pub(crate) fn word_pool(alg: &Algebra) -> Vec<Generator> {
    let l = alg.labels();
    let p = alg.preset();
    let (one, t) = (l.t(0), l.t(1));
    match alg.kind() {
        PresetKind::Sl2 => vec![
            Generator::new(p.negative(0), one.clone()),
            Generator::new(p.negative(0), t.clone()),
            Generator::new(p.cartan(0), one.clone()),
            Generator::new(p.cartan(0), t.clone()),
            Generator::new(p.positive(0), one),
            Generator::new(p.positive(0), t),
        ],
        PresetKind::Sl3 => vec![
            Generator::new(p.negative(0), one.clone()),
            Generator::new(p.negative(1), t.clone()),
            Generator::new(p.cartan(1), t.clone()),
            Generator::new(p.positive(0), one.clone()),
            Generator::new(p.positive(1), t),
            Generator::new(p.positive(2), one),
        ],
    }
}

fn random_element(alg: &Algebra, pool: &[Generator], rng: &mut ChaCha8Rng) -> Element {
    let mut out = alg.zero();
    for _ in 0..rng.gen_range(1..=3) {
        let len = rng.gen_range(0..=2);
        let word: Vec<Generator> = (0..len)
            .map(|_| pool.choose(rng).expect("pool").clone())
            .collect();
        let mut c = rng.gen_range(-3i64..=2);
        if c >= 0 {
            c += 1;
        }
        out.add_scaled(
            &alg.normalize_word(&word),
            &BigRational::from_integer(c.into()),
        );
    }
    out
}

fn render_word(alg: &Algebra, w: &[Generator]) -> String {
    w.iter()
        .map(|g| format!("({}⊗{})", alg.preset().name(g.lie), g.label))
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn check_engine(ck: &Checker, spec: &CheckSpec) -> Result<CheckReport> {
    let mut reports = Vec::new();
    for kind in spec.presets()? {
        let f = ck.engine(kind)?;
        let alg = f.algebra();
        let mut gens = Vec::new();
        for z in 0..alg.preset().dim() {
            for a in &spec.labels {
                gens.push(Generator::new(z, a.clone()));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let triples: Vec<[Element; 3]> = (0..spec.bound("triples"))
            .map(|_| std::array::from_fn(|_| random_element(alg, &gens, &mut rng)))
            .collect();
        reports.push(ck.run_part(
            &format!("engine/associativity[{}]", kind.name()),
            spec.seed,
            &triples,
            |[u, v, w]| json!({"u": alg.render(u), "v": alg.render(v), "w": alg.render(w)}),
            |[u, v, w]| {
                Ok(Outcome::new(
                    alg.mul(&alg.mul(u, v), w),
                    alg.mul(u, &alg.mul(v, w)),
                ))
            },
        )?);

        let pool = word_pool(alg);
        let mut words: Vec<Vec<Generator>> = vec![vec![]];
        let mut cases = Vec::new();
        for _ in 0..spec.bound("word-length") {
            words = words
                .iter()
                .flat_map(|w| {
                    pool.iter()
                        .map(move |g| [w.as_slice(), std::slice::from_ref(g)].concat())
                })
                .collect();
            cases.extend(words.iter().cloned());
        }
        let describe = |w: &Vec<Generator>| json!({"word": render_word(alg, w)});
        reports.push(ck.run_part(
            &format!("engine/fold[{}]", kind.name()),
            spec.seed,
            &cases,
            describe,
            |w| {
                Ok(Outcome::new(
                    alg.normalize_word(w),
                    alg.normalize_word_rev(w),
                ))
            },
        )?);
        for (strategy, part) in [
            (Strategy::Leftmost, "rewrite-leftmost"),
            (Strategy::Rightmost, "rewrite-rightmost"),
        ] {
            reports.push(ck.run_part(
                &format!("engine/{part}[{}]", kind.name()),
                spec.seed,
                &cases,
                describe,
                |w| {
                    Ok(Outcome::new(
                        alg.normalize_word(w),
                        straighten_word(alg.preset(), w, strategy),
                    ))
                },
            )?);
        }
    }
    Ok(CheckReport::merge(spec.name.as_str(), spec.seed, reports))
}
