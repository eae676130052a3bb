use std::sync::Arc;

use dashmap::DashMap;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::element::{Degree, Element, ElementTermJson, Generator, Monomial};
use super::preset::{GenClass, LiePreset, PresetKind};
use super::Sign;
use crate::combinatorics::{factorial, ALabel, LabelConfig};
use crate::error::{Error, Result};

/// `U(𝔤⊗A)` for one preset and one label configuration.
///
/// Products are normalized by inserting generators from the left into PBW
/// monomials, rewriting `g·h → h·g + [g,h]` whenever `g > h`. The results of
/// single insertions are memoized; the cache is a pure function of its key,
/// so sharing it between worker threads cannot change any result.
pub struct Algebra {
    preset: Arc<LiePreset>,
    labels: LabelConfig,
    insert_cache: DashMap<(Generator, Monomial), Arc<Element>>,
}

impl Algebra {
    pub fn new(kind: PresetKind, labels: LabelConfig) -> Result<Self> {
        Ok(Self {
            preset: Arc::new(LiePreset::new(kind)?),
            labels,
            insert_cache: DashMap::new(),
        })
    }

    pub fn preset(&self) -> &LiePreset {
        &self.preset
    }

    pub fn kind(&self) -> PresetKind {
        self.preset.kind()
    }

    pub fn labels(&self) -> &LabelConfig {
        &self.labels
    }

    pub fn zero(&self) -> Element {
        Element::zero(self.kind())
    }

    pub fn one(&self) -> Element {
        Element::one(self.kind())
    }

    pub fn scalar(&self, c: BigRational) -> Element {
        Element::scalar(self.kind(), c)
    }

    pub fn unit_label(&self) -> ALabel {
        self.labels.unit()
    }

    /// `x^±_β ⊗ a`.
    pub fn root_generator(&self, sign: Sign, root: usize, label: ALabel) -> Generator {
        Generator::new(self.preset.root_vector(sign == Sign::Plus, root), label)
    }

    /// `h_i ⊗ a`.
    pub fn cartan_generator(&self, i: usize, label: ALabel) -> Generator {
        Generator::new(self.preset.cartan(i), label)
    }

    pub fn gen(&self, g: Generator) -> Element {
        Element::generator(self.kind(), g)
    }

    /// `[z⊗a, z'⊗b] = [z,z']⊗ab` as a degree-one element.
    pub fn lie_bracket(&self, a: &Generator, b: &Generator) -> Element {
        let label = a.label.times(&b.label);
        let mut out = self.zero();
        for &(idx, c) in self.preset.bracket(a.lie, b.lie) {
            out.add_term(
                Monomial::power(Generator::new(idx, label.clone()), 1),
                BigRational::from_integer(c.into()),
            );
        }
        out
    }

    /// `g · m` in normal form.
    fn insert_left(&self, g: &Generator, m: &Monomial) -> Arc<Element> {
        match m.first() {
            None => {
                return Arc::new(Element::from_monomial(
                    self.kind(),
                    m.prepend(g),
                    BigRational::one(),
                ))
            }
            Some(h) if g <= h => {
                return Arc::new(Element::from_monomial(
                    self.kind(),
                    m.prepend(g),
                    BigRational::one(),
                ))
            }
            _ => {}
        }
        let key = (g.clone(), m.clone());
        if let Some(hit) = self.insert_cache.get(&key) {
            return Arc::clone(hit.value());
        }
        let (h, rest) = m.split_first().expect("non-empty");
        // g·h·rest = h·(g·rest) + [g,h]·rest
        let inner = self.insert_left(g, &rest);
        let mut out = self.zero();
        for (mm, c) in inner.terms() {
            out.add_scaled(&self.insert_left(&h, mm), c);
        }
        let label = g.label.times(&h.label);
        for &(idx, c) in self.preset.bracket(g.lie, h.lie) {
            let bracket_gen = Generator::new(idx, label.clone());
            out.add_scaled(
                &self.insert_left(&bracket_gen, &rest),
                &BigRational::from_integer(c.into()),
            );
        }
        let out = Arc::new(out);
        self.insert_cache.insert(key, Arc::clone(&out));
        out
    }

    /// `g · u`.
    pub fn left_mul_generator(&self, g: &Generator, u: &Element) -> Element {
        let mut out = self.zero();
        for (m, c) in u.terms() {
            out.add_scaled(&self.insert_left(g, m), c);
        }
        out
    }

    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Element {
        match (a.last(), b.first()) {
            (None, _) | (_, None) => {
                return Element::from_monomial(self.kind(), a.concat_ordered(b), BigRational::one())
            }
            (Some(x), Some(y)) if x <= y => {
                return Element::from_monomial(self.kind(), a.concat_ordered(b), BigRational::one())
            }
            _ => {}
        }
        let mut cur = Element::from_monomial(self.kind(), b.clone(), BigRational::one());
        for g in a.word().iter().rev() {
            cur = self.left_mul_generator(g, &cur);
        }
        cur
    }

    /// The normal form of `u · v`.
    ///
    /// # Panics
    /// Panics if the operands belong to a different preset; see [`Self::checked_mul`].
    pub fn mul(&self, u: &Element, v: &Element) -> Element {
        assert_eq!(u.preset(), self.kind(), "left operand from another preset");
        assert_eq!(v.preset(), self.kind(), "right operand from another preset");
        let mut out = self.zero();
        for (a, ca) in u.terms() {
            for (b, cb) in v.terms() {
                out.add_scaled(&self.mul_monomials(a, b), &(ca * cb));
            }
        }
        out
    }

    pub fn checked_mul(&self, u: &Element, v: &Element) -> Result<Element> {
        for e in [u, v] {
            if e.preset() != self.kind() {
                return Err(Error::PresetMismatch {
                    expected: self.kind(),
                    found: e.preset(),
                });
            }
        }
        Ok(self.mul(u, v))
    }

    /// Left-to-right product of the factors.
    pub fn product<'a, I: IntoIterator<Item = &'a Element>>(&self, factors: I) -> Element {
        factors
            .into_iter()
            .fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn pow(&self, u: &Element, k: u32) -> Element {
        (0..k).fold(self.one(), |acc, _| self.mul(&acc, u))
    }

    /// `uv − vu`.
    pub fn commutator(&self, u: &Element, v: &Element) -> Element {
        &self.mul(u, v) - &self.mul(v, u)
    }

    /// `g^(r) = g^r / r!`.
    pub fn divided_power(&self, g: &Generator, r: i64) -> Result<Element> {
        let r = nonneg(r, "divided power")?;
        Ok(Element::from_monomial(
            self.kind(),
            Monomial::power(g.clone(), r),
            BigRational::new(BigInt::one(), factorial(r)),
        ))
    }

    /// `(c·u)^(r)` for an arbitrary element `u`.
    pub fn divided_power_of(&self, u: &Element, r: u32) -> Element {
        self.pow(u, r)
            .scale(&BigRational::new(BigInt::one(), factorial(r)))
    }

    /// `u(u−1)⋯(u−r+1) / r!`.
    pub fn binom_element(&self, u: &Element, r: i64) -> Result<Element> {
        let r = nonneg(r, "binomial")?;
        let mut acc = self.one();
        for j in 0..r {
            let shifted = u - &self.scalar(BigRational::from_integer(j.into()));
            acc = self.mul(&acc, &shifted);
        }
        Ok(acc.scale(&BigRational::new(BigInt::one(), factorial(r))))
    }

    /// `(ad x)^r (v) / r!` for `v` in `𝔤⊗A` (degree at most one).
    pub fn ad_divided(&self, x: &Generator, r: i64, v: &Element) -> Result<Element> {
        let r = nonneg(r, "adjoint power")?;
        if v.degree() > Degree::Finite(1) {
            return Err(Error::Precondition(
                "adjoint action is only defined here on elements of degree at most one".into(),
            ));
        }
        let mut cur = self.zero();
        for (m, c) in v.terms() {
            if let [(g, 1)] = m.factors() {
                cur.add_term(Monomial::power(g.clone(), 1), c.clone());
            }
        }
        for _ in 0..r {
            let mut next = self.zero();
            for (m, c) in cur.terms() {
                let (g, _) = &m.factors()[0];
                next.add_scaled(&self.lie_bracket(x, g), c);
            }
            cur = next;
        }
        Ok(cur.scale(&BigRational::new(BigInt::one(), factorial(r))))
    }

    /// `Ω_β : U(𝔰𝔩₂⊗A) → U(𝔤⊗A)`, sending `x^±⊗a ↦ x^±_β⊗a` and `h⊗a ↦ h_β⊗a`.
    pub fn omega(&self, root: usize, u: &Element) -> Result<Element> {
        if u.preset() != PresetKind::Sl2 {
            return Err(Error::PresetMismatch {
                expected: PresetKind::Sl2,
                found: u.preset(),
            });
        }
        let count = self.preset.num_positive_roots();
        if root >= count {
            return Err(Error::InvalidRoot { index: root, count });
        }
        if self.kind() == PresetKind::Sl2 {
            return Ok(u.clone());
        }
        let image = |g: &Generator| -> Element {
            match g.lie {
                0 => self.gen(self.root_generator(Sign::Minus, root, g.label.clone())),
                2 => self.gen(self.root_generator(Sign::Plus, root, g.label.clone())),
                _ => {
                    let mut h = self.zero();
                    for (i, &c) in self.preset.coroot(root).iter().enumerate() {
                        h.add_term(
                            Monomial::power(self.cartan_generator(i, g.label.clone()), 1),
                            BigRational::from_integer(c.into()),
                        );
                    }
                    h
                }
            }
        };
        let mut out = self.zero();
        for (m, c) in u.terms() {
            let mut term = self.one();
            for (g, e) in m.factors() {
                term = self.mul(&term, &self.pow(&image(g), *e));
            }
            out.add_scaled(&term, c);
        }
        Ok(out)
    }

    /// Normal form of a word of generators, multiplied left to right.
    pub fn normalize_word(&self, word: &[Generator]) -> Element {
        word.iter()
            .fold(self.one(), |acc, g| self.mul(&acc, &self.gen(g.clone())))
    }

    /// Normal form of a word of generators, multiplied right to left.
    pub fn normalize_word_rev(&self, word: &[Generator]) -> Element {
        word.iter()
            .rev()
            .fold(self.one(), |acc, g| self.left_mul_generator(g, &acc))
    }

    pub fn from_json(&self, terms: &[ElementTermJson]) -> Result<Element> {
        let mut out = self.zero();
        for (word, c) in Element::parse_terms(terms, &self.preset, &self.labels)? {
            out.add_scaled(&self.normalize_word(&word), &c);
        }
        Ok(out)
    }

    pub fn class(&self, g: &Generator) -> GenClass {
        self.preset.class(g.lie)
    }

    pub fn render(&self, u: &Element) -> String {
        u.render(&self.preset)
    }
}

fn nonneg(r: i64, what: &str) -> Result<u32> {
    u32::try_from(r)
        .map_err(|_| Error::Precondition(format!("{what} order must be non-negative, got {r}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sl2() -> Algebra {
        Algebra::new(PresetKind::Sl2, LabelConfig::polynomial(1)).unwrap()
    }

    fn t(e: i32) -> ALabel {
        ALabel::from_exponents([e])
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sl2_commutation_relation() {
        let alg = sl2();
        let xp = alg.gen(Generator::new(2, t(0)));
        let xm = alg.gen(Generator::new(0, t(0)));
        let h = alg.gen(Generator::new(1, t(0)));
        let lhs = alg.mul(&xp, &xm);
        let want = &alg.mul(&xm, &xp) + &h;
        assert_eq!(lhs, want);
        assert_eq!(lhs.len(), 2);
    }

    #[test]
    fn cartan_past_positive_with_labels() {
        let alg = sl2();
        let h = alg.gen(Generator::new(1, t(1)));
        let x = alg.gen(Generator::new(2, t(1)));
        let got = alg.mul(&h, &x);
        let mut want = alg.mul(&x, &h);
        want.add_scaled(&alg.gen(Generator::new(2, t(2))), &q(2, 1));
        assert_eq!(got, want);
        assert_eq!(got.len(), 1);
        assert_eq!(alg.mul(&x, &h).len(), 2);
    }

    #[test]
    fn commuting_pair_stays_single_monomial() {
        let alg = sl2();
        let a = alg.gen(Generator::new(0, t(0)));
        let b = alg.gen(Generator::new(0, t(1)));
        let p = alg.mul(&a, &b);
        assert_eq!(p.len(), 1);
        assert_eq!(p, alg.mul(&b, &a));
    }

    #[test]
    fn divided_powers() {
        let alg = sl2();
        let g = Generator::new(2, t(1));
        let d3 = alg.divided_power(&g, 3).unwrap();
        assert_eq!(
            d3,
            Element::from_monomial(PresetKind::Sl2, Monomial::power(g.clone(), 3), q(1, 6))
        );
        assert_eq!(alg.divided_power(&g, 0).unwrap(), alg.one());
        let prod = alg.mul(&alg.divided_power(&g, 2).unwrap(), &d3);
        assert_eq!(prod, alg.divided_power(&g, 5).unwrap().scale_int(10));
        assert!(matches!(
            alg.divided_power(&g, -1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn binomial_elements() {
        let alg = sl2();
        let h = alg.gen(Generator::new(1, t(0)));
        let b2 = alg.binom_element(&h, 2).unwrap();
        let h2 = alg.mul(&h, &h);
        let want = &h2.scale(&q(1, 2)) - &h.scale(&q(1, 2));
        assert_eq!(b2, want);
        assert_eq!(alg.binom_element(&h, 0).unwrap(), alg.one());
        assert_eq!(alg.binom_element(&h, 1).unwrap(), h);
        assert!(alg.binom_element(&h, -2).is_err());
    }

    #[test]
    fn degrees() {
        let alg = sl2();
        let h = alg.gen(Generator::new(1, t(0)));
        assert_eq!(h.degree(), Degree::Finite(1));
        let xm = alg.gen(Generator::new(0, t(0)));
        let xp = alg.gen(Generator::new(2, t(1)));
        let e = &alg.mul(&xm, &xp) + &alg.gen(Generator::new(1, t(1)));
        assert_eq!(e.degree(), Degree::Finite(2));
        let d5 = alg.divided_power(&Generator::new(2, t(0)), 5).unwrap();
        assert_eq!(d5.degree(), Degree::Finite(5));
        assert_eq!(alg.zero().degree(), Degree::NegInfinity);
    }

    #[test]
    fn adjoint_divided_powers() {
        let alg = sl2();
        let x = Generator::new(2, t(0));
        let v = alg.gen(Generator::new(0, t(1)));
        assert_eq!(
            alg.ad_divided(&x, 1, &v).unwrap(),
            alg.gen(Generator::new(1, t(1)))
        );
        assert_eq!(
            alg.ad_divided(&x, 2, &v).unwrap(),
            -alg.gen(Generator::new(2, t(1)))
        );
        assert!(alg.ad_divided(&x, 3, &v).unwrap().is_zero());
        let xt = Generator::new(2, t(1));
        let v1 = alg.gen(Generator::new(0, t(0)));
        assert_eq!(
            alg.ad_divided(&xt, 2, &v1).unwrap(),
            -alg.gen(Generator::new(2, t(2)))
        );
        let deg2 = alg.mul(&v, &v);
        assert!(alg.ad_divided(&x, 1, &deg2).is_err());
    }

    #[test]
    fn omega_into_sl3() {
        let sl3 = Algebra::new(PresetKind::Sl3, LabelConfig::polynomial(1)).unwrap();
        let s2 = sl2();
        let xp = s2.gen(Generator::new(2, t(1)));
        let img = sl3.omega(0, &xp).unwrap();
        assert_eq!(img, sl3.gen(sl3.root_generator(Sign::Plus, 0, t(1))));
        let top = sl3.preset().root_index(&[1, 1]).unwrap();
        let h = s2.gen(Generator::new(1, t(0)));
        let img = sl3.omega(top, &h).unwrap();
        let want =
            &sl3.gen(sl3.cartan_generator(0, t(0))) + &sl3.gen(sl3.cartan_generator(1, t(0)));
        assert_eq!(img, want);
        assert!(matches!(sl3.omega(3, &h), Err(Error::InvalidRoot { .. })));
        assert!(matches!(
            sl3.omega(0, &img),
            Err(Error::PresetMismatch { .. })
        ));
    }

    #[test]
    fn preset_mismatch_is_reported() {
        let sl3 = Algebra::new(PresetKind::Sl3, LabelConfig::polynomial(1)).unwrap();
        let s2 = sl2();
        assert!(matches!(
            sl3.checked_mul(&s2.one(), &sl3.one()),
            Err(Error::PresetMismatch { .. })
        ));
    }

    #[test]
    fn render_text() {
        let alg = sl2();
        let d = alg.divided_power(&Generator::new(2, t(1)), 2).unwrap();
        assert_eq!(alg.render(&d), "(1/2) (x+⊗t)^2");
        let h = -alg.gen(Generator::new(1, t(0)));
        assert_eq!(alg.render(&h), "-1 (h⊗1)");
        assert_eq!(alg.render(&alg.zero()), "0");
    }
}
