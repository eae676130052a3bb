use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use super::{x_power_in, FormEngine};
use crate::combinatorics::{multisets_over, LabelConfig, Multiset};
use crate::error::{Error, Result};
use crate::pbw::{Element, GenClass, LiePreset, Monomial, Sign};

/// Names one element `f⁻(ψ̲) f⁰(χ̲) f⁺(ψ̲′)` of `ℬ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisIndex {
    pub minus: Vec<Multiset>,
    pub zero: Vec<Multiset>,
    pub plus: Vec<Multiset>,
}

impl BasisIndex {
    /// The all-empty index for a preset, naming `1`.
    pub fn empty(preset: &LiePreset) -> Self {
        let (m, n) = (preset.num_positive_roots(), preset.rank());
        Self {
            minus: vec![Multiset::new(); m],
            zero: vec![Multiset::new(); n],
            plus: vec![Multiset::new(); m],
        }
    }

    /// `Σ|ψ| + Σ|χ|`, the degree of the element named.
    pub fn total_size(&self) -> u32 {
        self.slots().map(Multiset::size).sum()
    }

    fn slots(&self) -> impl Iterator<Item = &Multiset> + '_ {
        self.minus.iter().chain(&self.zero).chain(&self.plus)
    }

    fn check_arity(&self, preset: &LiePreset) -> Result<()> {
        let (m, n) = (preset.num_positive_roots(), preset.rank());
        if self.minus.len() != m || self.zero.len() != n || self.plus.len() != m {
            return Err(Error::Arity(format!(
                "{} needs ({m}, {n}, {m}) multisets, got ({}, {}, {})",
                preset.kind(),
                self.minus.len(),
                self.zero.len(),
                self.plus.len()
            )));
        }
        Ok(())
    }

    /// The index whose basis element has `m` as its leading monomial.
    fn of_leading(m: &Monomial, preset: &LiePreset) -> Self {
        let mut idx = Self::empty(preset);
        for (g, e) in m.factors() {
            let slot = match preset.class(g.lie) {
                GenClass::Negative(b) => &mut idx.minus[b],
                GenClass::Cartan(i) => &mut idx.zero[i],
                GenClass::Positive(b) => &mut idx.plus[b],
            };
            slot.add_label(g.label.clone(), *e);
        }
        idx
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Multiset]| {
            v.iter()
                .map(|m| m.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(
            f,
            "minus [{}] zero [{}] plus [{}]",
            join(&self.minus),
            join(&self.zero),
            join(&self.plus)
        )
    }
}

/// Coefficients of an element over `ℬ`.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionResult {
    pub terms: Vec<(BasisIndex, BigRational)>,
    pub integral: bool,
    pub residual: Element,
}

pub(crate) fn rational_string(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl Serialize for ReductionResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<(&BasisIndex, String)> = self
            .terms
            .iter()
            .map(|(i, c)| (i, rational_string(c)))
            .collect();
        let mut st = s.serialize_struct("ReductionResult", 2)?;
        st.serialize_field("terms", &terms)?;
        st.serialize_field("integral", &self.integral)?;
        st.end()
    }
}

impl FormEngine {
    /// `f⁻(ψ̲) f⁰(χ̲) f⁺(ψ̲′)` in the target algebra.
    pub fn build_basis_element(&self, idx: &BasisIndex) -> Result<Element> {
        Ok((*self.basis_arc(idx)?).clone())
    }

    pub(crate) fn basis_arc(&self, idx: &BasisIndex) -> Result<Arc<Element>> {
        let alg = self.algebra();
        let preset = alg.preset();
        idx.check_arity(preset)?;
        if let Some(hit) = self.basis_memo.get(idx) {
            return Ok(Arc::clone(hit.value()));
        }
        for m in idx.slots() {
            for a in m.support() {
                alg.labels().validate(a)?;
            }
        }
        let mut out = alg.one();
        for (b, psi) in idx.minus.iter().enumerate() {
            out = alg.mul(&out, &x_power_in(alg, Sign::Minus, b, psi));
        }
        for (i, chi) in idx.zero.iter().enumerate() {
            out = alg.mul(&out, &*self.p_alpha_arc(preset.simple_root(i), chi)?);
        }
        for (b, psi) in idx.plus.iter().enumerate() {
            out = alg.mul(&out, &x_power_in(alg, Sign::Plus, b, psi));
        }
        let out = Arc::new(out);
        self.basis_memo.insert(idx.clone(), Arc::clone(&out));
        Ok(out)
    }

    /// Writes `e` over `ℬ` by repeatedly cancelling a leading monomial.
    ///
    /// The top-degree part of each basis element is a single monomial, so every
    /// step removes one monomial of maximal degree and adds only lower ones.
    pub fn reduce_to_basis(&self, e: &Element) -> Result<ReductionResult> {
        let alg = self.algebra();
        if e.preset() != alg.kind() {
            return Err(Error::PresetMismatch {
                expected: alg.kind(),
                found: e.preset(),
            });
        }
        let mut residual = e.clone();
        let mut terms = Vec::new();
        while let Some(lead) = residual.leading_monomial().cloned() {
            let idx = BasisIndex::of_leading(&lead, alg.preset());
            let b = self.basis_arc(&idx)?;
            let pivot = b.coefficient(&lead);
            if pivot.is_zero() {
                return Err(Error::Validation(format!(
                    "basis element {idx} does not lead with its own monomial"
                )));
            }
            let c = residual.coefficient(&lead) / pivot;
            residual.add_scaled(&b, &-&c);
            terms.push((idx, c));
        }
        let integral = terms.iter().all(|(_, c)| c.is_integer());
        Ok(ReductionResult {
            terms,
            integral,
            residual,
        })
    }
}

/// All indices of total size at most `max_degree` whose labels have degree at
/// most `max_label_degree`, ordered by total size and then lexicographically.
pub fn enumerate_basis(
    preset: &LiePreset,
    labels: &LabelConfig,
    max_degree: u32,
    max_label_degree: u32,
) -> std::vec::IntoIter<BasisIndex> {
    let (m, n) = (preset.num_positive_roots(), preset.rank());
    let slots = 2 * m + n;
    let pool = multisets_over(&labels.labels_up_to(max_label_degree), max_degree);
    let mut out = Vec::new();
    let mut cur: Vec<Multiset> = Vec::with_capacity(slots);
    fill(&pool, slots, max_degree, &mut cur, &mut |v| {
        out.push(BasisIndex {
            minus: v[..m].to_vec(),
            zero: v[m..m + n].to_vec(),
            plus: v[m + n..].to_vec(),
        })
    });
    out.sort_by_key(BasisIndex::total_size);
    out.into_iter()
}

fn fill(
    pool: &[Multiset],
    slots: usize,
    budget: u32,
    cur: &mut Vec<Multiset>,
    emit: &mut dyn FnMut(&[Multiset]),
) {
    if cur.len() == slots {
        emit(cur);
        return;
    }
    for m in pool.iter().take_while(|m| m.size() <= budget) {
        cur.push(m.clone());
        fill(pool, slots, budget - m.size(), cur, emit);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::ALabel;
    use crate::pbw::{Algebra, Generator, PresetKind};

    fn engine(kind: PresetKind) -> FormEngine {
        FormEngine::new(Arc::new(
            Algebra::new(kind, LabelConfig::polynomial(1)).unwrap(),
        ))
        .unwrap()
    }

    fn c1() -> Multiset {
        Multiset::single(ALabel::from_exponents([0]))
    }

    #[test]
    fn basis_elements() {
        let f = engine(PresetKind::Sl2);
        let p = f.algebra().preset();
        assert_eq!(
            f.build_basis_element(&BasisIndex::empty(p)).unwrap(),
            f.algebra().one()
        );
        let mut idx = BasisIndex::empty(p);
        idx.minus[0] = c1();
        assert_eq!(
            f.build_basis_element(&idx).unwrap(),
            f.algebra()
                .gen(Generator::new(0, ALabel::from_exponents([0])))
        );
        let mut idx = BasisIndex::empty(p);
        idx.zero[0] = Multiset::scaled(ALabel::from_exponents([0]), 2);
        assert_eq!(
            f.build_basis_element(&idx).unwrap(),
            f.p_single(&idx.zero[0])
        );
        idx.plus.push(Multiset::new());
        assert!(matches!(f.build_basis_element(&idx), Err(Error::Arity(_))));
    }

    #[test]
    fn reduce_commutator() {
        let f = engine(PresetKind::Sl2);
        let alg = f.algebra();
        let one = ALabel::from_exponents([0]);
        let e = alg.mul(
            &alg.gen(Generator::new(2, one.clone())),
            &alg.gen(Generator::new(0, one.clone())),
        );
        let r = f.reduce_to_basis(&e).unwrap();
        assert!(r.integral && r.residual.is_zero());
        let mut a = BasisIndex::empty(alg.preset());
        a.minus[0] = c1();
        a.plus[0] = c1();
        let mut b = BasisIndex::empty(alg.preset());
        b.zero[0] = c1();
        assert_eq!(
            r.terms,
            vec![
                (a, BigRational::from_integer(1.into())),
                (b, BigRational::from_integer((-1).into()))
            ]
        );
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["terms"][1][1], "-1");
        assert_eq!(json["integral"], true);

        let half = alg
            .gen(Generator::new(1, one))
            .scale(&BigRational::new(1.into(), 2.into()));
        assert!(!f.reduce_to_basis(&half).unwrap().integral);
        let z = f.reduce_to_basis(&alg.zero()).unwrap();
        assert!(z.terms.is_empty() && z.integral);
    }

    #[test]
    fn enumeration_counts() {
        let p = LiePreset::new(PresetKind::Sl2).unwrap();
        let l = LabelConfig::polynomial(1);
        assert_eq!(enumerate_basis(&p, &l, 0, 3).count(), 1);
        let all: Vec<_> = enumerate_basis(&p, &l, 1, 1).collect();
        assert_eq!(all.len(), 7);
        assert_eq!(all[0], BasisIndex::empty(&p));
    }
}
