use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::preset::{LiePreset, PresetKind};
use crate::combinatorics::{ALabel, LabelConfig};
use crate::error::{Error, Result};

/// `z ⊗ a` for a Chevalley basis vector `z` (by index) and a label `a`.
///
/// Ordered by basis index first, which already encodes negative < Cartan <
/// positive, then by label.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Generator {
    pub lie: usize,
    pub label: ALabel,
}

impl Generator {
    pub fn new(lie: usize, label: ALabel) -> Self {
        Self { lie, label }
    }
}

/// A PBW monomial: strictly increasing generators with positive exponents.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<(Generator, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn power(g: Generator, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(g, e)])
        }
    }

    /// Builds a monomial from factors, rejecting ones that are not in PBW order.
    pub fn from_factors(factors: Vec<(Generator, u32)>) -> Result<Self> {
        if factors.iter().any(|(_, e)| *e == 0) {
            return Err(Error::Precondition("zero exponent in monomial".into()));
        }
        if factors.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::Precondition(
                "monomial factors must be strictly increasing".into(),
            ));
        }
        Ok(Monomial(factors))
    }

    pub fn factors(&self) -> &[(Generator, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn first(&self) -> Option<&Generator> {
        self.0.first().map(|(g, _)| g)
    }

    pub fn last(&self) -> Option<&Generator> {
        self.0.last().map(|(g, _)| g)
    }

    /// Prepends `g`, which must not exceed the first generator.
    pub(crate) fn prepend(&self, g: &Generator) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        match self.0.first() {
            Some((h, e)) if h == g => {
                v.push((g.clone(), e + 1));
                v.extend_from_slice(&self.0[1..]);
            }
            _ => {
                v.push((g.clone(), 1));
                v.extend_from_slice(&self.0);
            }
        }
        Monomial(v)
    }

    /// Drops one copy of the first generator.
    pub(crate) fn split_first(&self) -> Option<(Generator, Monomial)> {
        let (g, e) = self.0.first()?;
        let mut rest = self.0.clone();
        if *e == 1 {
            rest.remove(0);
        } else {
            rest[0].1 -= 1;
        }
        Some((g.clone(), Monomial(rest)))
    }

    /// Concatenation when `self.last() <= other.first()`.
    pub(crate) fn concat_ordered(&self, other: &Monomial) -> Monomial {
        let mut v = self.0.clone();
        let mut rest = other.0.iter();
        if let (Some(last), Some(first)) = (v.last_mut(), other.0.first()) {
            if last.0 == first.0 {
                last.1 += first.1;
                rest.next();
            }
        }
        v.extend(rest.cloned());
        Monomial(v)
    }

    /// The generators one copy at a time, left to right.
    pub fn word(&self) -> Vec<Generator> {
        self.0
            .iter()
            .flat_map(|(g, e)| std::iter::repeat_n(g.clone(), *e as usize))
            .collect()
    }
}

/// The filtration degree of an element; the zero element has degree `−∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// An element of `U(𝔤⊗A)` in PBW normal form with exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element {
    preset: PresetKind,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Element {
    pub fn zero(preset: PresetKind) -> Self {
        Self {
            preset,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(preset: PresetKind) -> Self {
        Self::from_monomial(preset, Monomial::one(), BigRational::one())
    }

    pub fn scalar(preset: PresetKind, c: BigRational) -> Self {
        Self::from_monomial(preset, Monomial::one(), c)
    }

    pub fn from_monomial(preset: PresetKind, m: Monomial, c: BigRational) -> Self {
        let mut e = Self::zero(preset);
        e.add_term(m, c);
        e
    }

    pub fn generator(preset: PresetKind, g: Generator) -> Self {
        Self::from_monomial(preset, Monomial::power(g, 1), BigRational::one())
    }

    pub fn preset(&self) -> PresetKind {
        self.preset
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> + '_ {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c · other`.
    pub fn add_scaled(&mut self, other: &Element, c: &BigRational) {
        self.check_same(other);
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            self.add_term(m.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &BigRational) -> Element {
        let mut out = Element::zero(self.preset);
        out.add_scaled(self, c);
        out
    }

    pub fn scale_int(&self, c: i64) -> Element {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// Maximum total exponent over the normal form.
    pub fn degree(&self) -> Degree {
        self.terms
            .keys()
            .map(Monomial::degree)
            .max()
            .map_or(Degree::NegInfinity, Degree::Finite)
    }

    /// True when every monomial has total exponent exactly `d`.
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// The terms whose monomial degree satisfies `keep`.
    pub fn degree_part(&self, keep: impl Fn(u32) -> bool) -> Element {
        Element {
            preset: self.preset,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m.degree()))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub(crate) fn check_same(&self, other: &Element) {
        assert_eq!(
            self.preset, other.preset,
            "elements from different presets combined"
        );
    }

    /// Text rendering in PBW order, e.g. `(1/2) (x+⊗t)^2 - (h⊗1)`. A leading
    /// negative term keeps an explicit `-1`, so `-1 (h⊗1)` reads unambiguously.
    pub fn render(&self, preset: &LiePreset) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative() && i > 0;
            let c = if negative { -c } else { c.clone() };
            if i > 0 {
                out.push_str(if negative { " - " } else { " + " });
            }
            let coeff = if c.is_integer() {
                c.to_integer().to_string()
            } else {
                format!("({}/{})", c.numer(), c.denom())
            };
            if m.is_one() {
                out.push_str(&coeff);
                continue;
            }
            let mono: Vec<String> = m
                .factors()
                .iter()
                .map(|(g, e)| {
                    let base = format!("({}⊗{})", preset.name(g.lie), g.label);
                    if *e == 1 {
                        base
                    } else {
                        format!("{base}^{e}")
                    }
                })
                .collect();
            if !c.is_one() {
                out.push_str(&coeff);
                out.push(' ');
            }
            out.push_str(&mono.join(" "));
        }
        out
    }

    pub fn to_json(&self) -> Vec<ElementTermJson> {
        self.terms
            .iter()
            .map(|(m, c)| ElementTermJson {
                monomial: m
                    .factors()
                    .iter()
                    .map(|(g, e)| (g.lie, g.label.clone(), *e))
                    .collect(),
                coeff: (c.numer().to_string(), c.denom().to_string()),
            })
            .collect()
    }

    /// Rebuilds an element from its JSON terms. Monomials need not be in PBW
    /// order on input; callers normalize through `Algebra::from_json`.
    pub(crate) fn parse_terms(
        terms: &[ElementTermJson],
        preset: &LiePreset,
        labels: &LabelConfig,
    ) -> Result<Vec<(Vec<Generator>, BigRational)>> {
        let mut out = Vec::new();
        for t in terms {
            let num: BigInt = t
                .coeff
                .0
                .parse()
                .map_err(|_| Error::Config(format!("bad numerator `{}`", t.coeff.0)))?;
            let den: BigInt = t
                .coeff
                .1
                .parse()
                .map_err(|_| Error::Config(format!("bad denominator `{}`", t.coeff.1)))?;
            if den.is_zero() {
                return Err(Error::Config("zero denominator".into()));
            }
            let mut word = Vec::new();
            for (lie, label, e) in &t.monomial {
                if *lie >= preset.dim() {
                    return Err(Error::Config(format!(
                        "basis index {lie} out of range for {}",
                        preset.kind()
                    )));
                }
                labels.validate(label)?;
                for _ in 0..*e {
                    word.push(Generator::new(*lie, label.clone()));
                }
            }
            out.push((word, BigRational::new(num, den)));
        }
        Ok(out)
    }

    /// The integer-coefficient part; `self − floor_part()` has coefficients in `[0, 1)`.
    pub fn floor_part(&self) -> Element {
        Element {
            preset: self.preset,
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let f = c.floor();
                    (!f.is_zero()).then(|| (m.clone(), f))
                })
                .collect(),
        }
    }

    /// Largest monomial of maximal degree, under the global monomial order.
    pub fn leading_monomial(&self) -> Option<&Monomial> {
        let d = self.degree().finite()?;
        self.terms.keys().rev().find(|m| m.degree() == d)
    }
}

/// One JSON term: `{"monomial": [[lieIndex, label, exp], ...], "coeff": [num, den]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementTermJson {
    pub monomial: Vec<(usize, ALabel, u32)>,
    pub coeff: (String, String),
}

impl Add<&Element> for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Element {
    type Output = Element;
    fn add(mut self, rhs: Element) -> Element {
        self += &rhs;
        self
    }
}

impl Sub<&Element> for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Element {
    type Output = Element;
    fn sub(mut self, rhs: Element) -> Element {
        self -= &rhs;
        self
    }
}

impl AddAssign<&Element> for Element {
    fn add_assign(&mut self, rhs: &Element) {
        self.add_scaled(rhs, &BigRational::one());
    }
}

impl SubAssign<&Element> for Element {
    fn sub_assign(&mut self, rhs: &Element) {
        self.add_scaled(rhs, &-BigRational::one());
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        self.scale(&-BigRational::one())
    }
}

impl Neg for Element {
    type Output = Element;
    fn neg(self) -> Element {
        -&self
    }
}
