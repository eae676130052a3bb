//! The named elements of the integral form: `x^±(ψ)`, `p(φ,χ)`, `p(χ)`, `p_α(χ)`,
//! `D^±`, `𝔻`, and the basis `ℬ` with reduction onto it.
//!
//! `p`, `D^±` and `𝔻` live in `U(𝔰𝔩₂⊗A)`; their images under `Ω_α` are obtained
//! through the `*_alpha` methods.

mod basis;

use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub use basis::{enumerate_basis, BasisIndex, ReductionResult};

use crate::combinatorics::{factorial, partitions_k, partitions_k_nonempty, ALabel, Multiset};
use crate::error::{Error, Result};
use crate::pbw::{Algebra, Element, Generator, Monomial, PresetKind, Sign};

/// How to read places where the source formulas are ambiguous.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize,
)]
#[serde(rename_all = "lowercase")]
pub enum Reading {
    /// Partitions may have empty parts.
    #[default]
    Corrected,
    /// Partitions have only non-empty parts.
    Literal,
}

type Triple = (Multiset, Multiset, Multiset);

/// Memoizing constructor for the named elements over one target algebra.
pub struct FormEngine {
    alg: Arc<Algebra>,
    sl2: Arc<Algebra>,
    p_memo: DashMap<(Multiset, Multiset), Arc<Element>>,
    d_memo: DashMap<(Sign, Triple), Arc<Element>>,
    bbd_memo: DashMap<Triple, Arc<Element>>,
    p_alpha_memo: DashMap<(usize, Multiset), Arc<Element>>,
    basis_memo: DashMap<BasisIndex, Arc<Element>>,
}

impl FormEngine {
    pub fn new(alg: Arc<Algebra>) -> Result<Self> {
        let sl2 = if alg.kind() == PresetKind::Sl2 {
            Arc::clone(&alg)
        } else {
            Arc::new(Algebra::new(PresetKind::Sl2, *alg.labels())?)
        };
        Ok(Self {
            alg,
            sl2,
            p_memo: DashMap::new(),
            d_memo: DashMap::new(),
            bbd_memo: DashMap::new(),
            p_alpha_memo: DashMap::new(),
            basis_memo: DashMap::new(),
        })
    }

    /// The target algebra.
    pub fn algebra(&self) -> &Arc<Algebra> {
        &self.alg
    }

    /// The `𝔰𝔩₂` algebra in which `p`, `D^±` and `𝔻` are computed.
    pub fn sl2(&self) -> &Arc<Algebra> {
        &self.sl2
    }

    fn vars(&self) -> usize {
        self.alg.labels().vars
    }

    fn pi(&self, psi: &Multiset) -> ALabel {
        psi.pi(self.vars())
    }

    fn check_root(&self, alpha: usize) -> Result<()> {
        let count = self.alg.preset().num_positive_roots();
        if alpha >= count {
            return Err(Error::InvalidRoot {
                index: alpha,
                count,
            });
        }
        Ok(())
    }

    fn check_labels(&self, sets: &[&Multiset]) -> Result<()> {
        for m in sets {
            for a in m.support() {
                self.alg.labels().validate(a)?;
            }
        }
        Ok(())
    }

    fn sl2_gen(&self, lie: usize, label: ALabel) -> Element {
        self.sl2.gen(Generator::new(lie, label))
    }

    /// `x^±_α(ψ) = ∏_a (x^±_α⊗a)^(ψ(a))` in the target algebra.
    pub fn x_power(&self, sign: Sign, alpha: usize, psi: &Multiset) -> Result<Element> {
        self.check_root(alpha)?;
        self.check_labels(&[psi])?;
        Ok(x_power_in(&self.alg, sign, alpha, psi))
    }

    /// `p(φ,χ)` in `U(𝔰𝔩₂⊗A)`.
    pub fn p_pair(&self, phi: &Multiset, chi: &Multiset) -> Element {
        (*self.p_arc(phi, chi)).clone()
    }

    pub(crate) fn p_arc(&self, phi: &Multiset, chi: &Multiset) -> Arc<Element> {
        let n = phi.size();
        if n != chi.size() {
            return Arc::new(self.sl2.zero());
        }
        if n == 0 {
            return Arc::new(self.sl2.one());
        }
        let key = (phi.clone(), chi.clone());
        if let Some(hit) = self.p_memo.get(&key) {
            return Arc::clone(hit.value());
        }
        let mut out = self.sl2.zero();
        for psi1 in phi.sub_multisets().filter(|m| !m.is_empty()) {
            let rest1 = phi.minus(&psi1).expect("sub-multiset");
            for psi2 in chi.sub_multisets_of_size(psi1.size()) {
                let rest2 = chi.minus(&psi2).expect("sub-multiset");
                let h = self.sl2_gen(1, self.pi(&psi1).times(&self.pi(&psi2)));
                let tail = self.p_arc(&rest1, &rest2);
                let weight = BigRational::from_integer(psi1.multinomial() * psi2.multinomial());
                out.add_scaled(&self.sl2.mul(&h, &tail), &weight);
            }
        }
        let out = Arc::new(out.scale(&BigRational::new((-1).into(), n.into())));
        self.p_memo.insert(key, Arc::clone(&out));
        out
    }

    /// `p(χ) = p(χ, |χ|χ_1)`.
    pub fn p_single(&self, chi: &Multiset) -> Element {
        (*self.p_single_arc(chi)).clone()
    }

    pub(crate) fn p_single_arc(&self, chi: &Multiset) -> Arc<Element> {
        let ones = Multiset::scaled(self.alg.unit_label(), chi.size());
        self.p_arc(chi, &ones)
    }

    /// `p_α(χ) = Ω_α(p(χ))` in the target algebra.
    pub fn p_alpha(&self, alpha: usize, chi: &Multiset) -> Result<Element> {
        Ok((*self.p_alpha_arc(alpha, chi)?).clone())
    }

    pub(crate) fn p_alpha_arc(&self, alpha: usize, chi: &Multiset) -> Result<Arc<Element>> {
        self.check_root(alpha)?;
        let key = (alpha, chi.clone());
        if let Some(hit) = self.p_alpha_memo.get(&key) {
            return Ok(Arc::clone(hit.value()));
        }
        let out = Arc::new(self.alg.omega(alpha, &self.p_single_arc(chi))?);
        self.p_alpha_memo.insert(key, Arc::clone(&out));
        Ok(out)
    }

    /// `Ω_α(p(φ,χ))`.
    pub fn p_alpha_pair(&self, alpha: usize, phi: &Multiset, chi: &Multiset) -> Result<Element> {
        self.alg.omega(alpha, &self.p_arc(phi, chi))
    }

    /// `D^±(ψ1,ψ2,ψ3)` by its defining recursion.
    pub fn d_rec(&self, sign: Sign, psi1: &Multiset, psi2: &Multiset, psi3: &Multiset) -> Element {
        (*self.d_arc(sign, psi1, psi2, psi3)).clone()
    }

    pub(crate) fn d_arc(
        &self,
        sign: Sign,
        psi1: &Multiset,
        psi2: &Multiset,
        psi3: &Multiset,
    ) -> Arc<Element> {
        let k = psi3.size();
        if k == 0 {
            return Arc::new(if psi1.is_empty() && psi2.is_empty() {
                self.sl2.one()
            } else {
                self.sl2.zero()
            });
        }
        if psi1.size() != psi2.size() {
            return Arc::new(self.sl2.zero());
        }
        let lie = sl2_root_index(sign);
        if k == 1 {
            let c = psi3.support().next().expect("size one");
            let label = c.times(&self.pi(psi1)).times(&self.pi(psi2));
            let weight = BigRational::from_integer(psi1.multinomial() * psi2.multinomial());
            return Arc::new(self.sl2_gen(lie, label).scale(&weight));
        }
        let key = (sign, (psi1.clone(), psi2.clone(), psi3.clone()));
        if let Some(hit) = self.d_memo.get(&key) {
            return Arc::clone(hit.value());
        }
        let mut out = self.sl2.zero();
        for phi1 in psi1.sub_multisets() {
            let rest1 = psi1.minus(&phi1).expect("sub-multiset");
            for phi2 in psi2.sub_multisets_of_size(phi1.size()) {
                let rest2 = psi2.minus(&phi2).expect("sub-multiset");
                for b in psi3.support() {
                    let single = Multiset::single(b.clone());
                    let head = self.d_arc(sign, &phi1, &phi2, &single);
                    let tail = self.d_arc(
                        sign,
                        &rest1,
                        &rest2,
                        &psi3.minus_label(b).expect("in support"),
                    );
                    out.add_scaled(&self.sl2.mul(&head, &tail), &BigRational::one());
                }
            }
        }
        let out = Arc::new(out.scale(&BigRational::new(BigInt::one(), k.into())));
        self.d_memo.insert(key, Arc::clone(&out));
        out
    }

    /// `D^±(ψ, |ψ|χ_b, kχ_c)` through its partition expansion.
    pub fn d_explicit(
        &self,
        sign: Sign,
        psi: &Multiset,
        b: &ALabel,
        k: u32,
        c: &ALabel,
        reading: Reading,
    ) -> Result<Element> {
        if k == 0 {
            return Err(Error::Precondition("explicit D needs k ≥ 1".into()));
        }
        self.check_labels(&[psi, &Multiset::from_pairs([(b.clone(), 1), (c.clone(), 1)])])?;
        let parts = match reading {
            Reading::Corrected => partitions_k(psi, k),
            Reading::Literal => partitions_k_nonempty(psi, k),
        };
        let lie = sl2_root_index(sign);
        let mut out = self.sl2.zero();
        for chi in parts {
            let mut term = self.sl2.one();
            for (phi, mult) in chi.iter() {
                let label = c.times(&b.pow(phi.size())).times(&self.pi(phi));
                let m = BigRational::from_integer(phi.multinomial());
                let g = Generator::new(lie, label);
                let factor = Element::from_monomial(
                    PresetKind::Sl2,
                    Monomial::power(g, mult),
                    pow_rational(&m, mult) / BigRational::from_integer(factorial(mult)),
                );
                term = self.sl2.mul(&term, &factor);
            }
            out += &term;
        }
        Ok(out)
    }

    /// `𝔻(ψ1,ψ2,ψ3) = Σ p(φ1,φ2) D^+(ψ1−φ1, ψ2−φ2, ψ3)`.
    pub fn bbd(&self, psi1: &Multiset, psi2: &Multiset, psi3: &Multiset) -> Element {
        (*self.bbd_arc(psi1, psi2, psi3)).clone()
    }

    pub(crate) fn bbd_arc(
        &self,
        psi1: &Multiset,
        psi2: &Multiset,
        psi3: &Multiset,
    ) -> Arc<Element> {
        let key = (psi1.clone(), psi2.clone(), psi3.clone());
        if let Some(hit) = self.bbd_memo.get(&key) {
            return Arc::clone(hit.value());
        }
        let mut out = self.sl2.zero();
        for phi1 in psi1.sub_multisets() {
            let rest1 = psi1.minus(&phi1).expect("sub-multiset");
            for phi2 in psi2.sub_multisets_of_size(phi1.size()) {
                let rest2 = psi2.minus(&phi2).expect("sub-multiset");
                let d = self.d_arc(Sign::Plus, &rest1, &rest2, psi3);
                if d.is_zero() {
                    continue;
                }
                out += &self.sl2.mul(&self.p_arc(&phi1, &phi2), &d);
            }
        }
        let out = Arc::new(out);
        self.bbd_memo.insert(key, Arc::clone(&out));
        out
    }

    /// `Ω_α(D^±(ψ1,ψ2,ψ3))`.
    pub fn d_alpha(
        &self,
        sign: Sign,
        alpha: usize,
        psi1: &Multiset,
        psi2: &Multiset,
        psi3: &Multiset,
    ) -> Result<Element> {
        self.alg.omega(alpha, &self.d_arc(sign, psi1, psi2, psi3))
    }

    /// `Ω_α(𝔻(ψ1,ψ2,ψ3))`.
    pub fn bbd_alpha(
        &self,
        alpha: usize,
        psi1: &Multiset,
        psi2: &Multiset,
        psi3: &Multiset,
    ) -> Result<Element> {
        self.alg.omega(alpha, &self.bbd_arc(psi1, psi2, psi3))
    }
}

fn sl2_root_index(sign: Sign) -> usize {
    match sign {
        Sign::Plus => 2,
        Sign::Minus => 0,
    }
}

fn pow_rational(x: &BigRational, e: u32) -> BigRational {
    (0..e).fold(BigRational::one(), |acc, _| acc * x)
}

pub(crate) fn x_power_in(alg: &Algebra, sign: Sign, alpha: usize, psi: &Multiset) -> Element {
    let mut factors = Vec::new();
    let mut denom = BigInt::one();
    for (a, k) in psi.iter() {
        factors.push((alg.root_generator(sign, alpha, a.clone()), k));
        denom *= factorial(k);
    }
    let mono = Monomial::from_factors(factors).expect("labels are sorted");
    Element::from_monomial(alg.kind(), mono, BigRational::new(BigInt::one(), denom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::LabelConfig;

    fn engine(kind: PresetKind) -> FormEngine {
        FormEngine::new(Arc::new(
            Algebra::new(kind, LabelConfig::polynomial(1)).unwrap(),
        ))
        .unwrap()
    }

    fn t(e: i32) -> ALabel {
        ALabel::from_exponents([e])
    }

    fn ms(pairs: &[(i32, u32)]) -> Multiset {
        Multiset::from_pairs(pairs.iter().map(|&(e, k)| (t(e), k)))
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn h(f: &FormEngine, e: i32) -> Element {
        f.sl2().gen(Generator::new(1, t(e)))
    }

    #[test]
    fn p_small_values() {
        let f = engine(PresetKind::Sl2);
        assert_eq!(f.p_pair(&Multiset::new(), &Multiset::new()), f.sl2().one());
        assert_eq!(f.p_pair(&ms(&[(1, 1)]), &ms(&[(1, 1)])), -h(&f, 2));
        assert!(f.p_pair(&ms(&[(1, 1)]), &Multiset::new()).is_zero());
        let two = ms(&[(0, 2)]);
        let h1 = h(&f, 0);
        let want = &f.sl2().mul(&h1, &h1).scale(&q(1, 2)) - &h1.scale(&q(1, 2));
        assert_eq!(f.p_single(&two), want);
        assert_eq!(f.p_single(&ms(&[(1, 1)])), -h(&f, 1));
    }

    #[test]
    fn p_alpha_in_sl3() {
        let f = engine(PresetKind::Sl3);
        let got = f.p_alpha(0, &ms(&[(0, 1)])).unwrap();
        assert_eq!(got, -f.algebra().gen(f.algebra().cartan_generator(0, t(0))));
        assert!(f.p_alpha(3, &ms(&[(0, 1)])).is_err());
    }

    #[test]
    fn x_power_values() {
        let f = engine(PresetKind::Sl2);
        assert_eq!(
            f.x_power(Sign::Plus, 0, &Multiset::new()).unwrap(),
            f.sl2().one()
        );
        let got = f.x_power(Sign::Minus, 0, &ms(&[(0, 1), (1, 2)])).unwrap();
        let a = f.sl2().gen(Generator::new(0, t(0)));
        let b = f.sl2().divided_power(&Generator::new(0, t(1)), 2).unwrap();
        assert_eq!(got, f.sl2().mul(&a, &b));
        assert!(f.x_power(Sign::Plus, 1, &Multiset::new()).is_err());
    }

    #[test]
    fn d_base_cases() {
        let f = engine(PresetKind::Sl2);
        let z = Multiset::new();
        assert_eq!(f.d_rec(Sign::Plus, &z, &z, &z), f.sl2().one());
        assert_eq!(
            f.d_rec(Sign::Minus, &z, &z, &ms(&[(1, 1)])),
            f.sl2_gen(0, t(1))
        );
        let psi = ms(&[(0, 1), (1, 2)]);
        assert_eq!(
            f.d_rec(Sign::Plus, &z, &z, &psi),
            f.x_power(Sign::Plus, 0, &psi).unwrap()
        );
        assert!(f.d_rec(Sign::Plus, &ms(&[(0, 1)]), &z, &psi).is_zero());
    }

    #[test]
    fn d_explicit_examples() {
        let f = engine(PresetKind::Sl2);
        let one = t(0);
        let got = f
            .d_explicit(
                Sign::Plus,
                &Multiset::new(),
                &one,
                2,
                &one,
                Reading::Corrected,
            )
            .unwrap();
        assert_eq!(
            got,
            f.sl2()
                .divided_power(&Generator::new(2, one.clone()), 2)
                .unwrap()
        );
        let psi = ms(&[(1, 2)]);
        let got = f
            .d_explicit(Sign::Plus, &psi, &one, 2, &one, Reading::Corrected)
            .unwrap();
        let want = &f.sl2().divided_power(&Generator::new(2, t(1)), 2).unwrap()
            + &f.sl2().mul(&f.sl2_gen(2, t(0)), &f.sl2_gen(2, t(2)));
        assert_eq!(got, want);
        assert_eq!(
            got,
            f.d_rec(Sign::Plus, &psi, &ms(&[(0, 2)]), &ms(&[(0, 2)]))
        );
        assert!(f
            .d_explicit(Sign::Plus, &psi, &one, 0, &one, Reading::Corrected)
            .is_err());
    }

    #[test]
    fn bbd_values() {
        let f = engine(PresetKind::Sl2);
        let z = Multiset::new();
        let phi = ms(&[(0, 1), (1, 1)]);
        assert_eq!(f.bbd(&z, &z, &phi), f.x_power(Sign::Plus, 0, &phi).unwrap());
        let c1 = ms(&[(0, 1)]);
        assert_eq!(f.bbd(&c1, &c1, &z), -h(&f, 0));
    }
}
