use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::label::{ALabel, LabelConfig};
use crate::error::{Error, Result};

/// A finite-support multiplicity function on labels. Zero multiplicities are
/// never stored, so the empty map is the zero multiset.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multiset(BTreeMap<ALabel, u32>);

impl Multiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// `k·χ_a`.
    pub fn scaled(a: ALabel, k: u32) -> Self {
        let mut m = Self::new();
        m.add_label(a, k);
        m
    }

    /// The characteristic function `χ_a`.
    pub fn single(a: ALabel) -> Self {
        Self::scaled(a, 1)
    }

    pub fn from_pairs<I: IntoIterator<Item = (ALabel, u32)>>(pairs: I) -> Self {
        let mut m = Self::new();
        for (a, k) in pairs {
            m.add_label(a, k);
        }
        m
    }

    pub fn add_label(&mut self, a: ALabel, k: u32) {
        if k > 0 {
            *self.0.entry(a).or_insert(0) += k;
        }
    }

    pub fn get(&self, a: &ALabel) -> u32 {
        self.0.get(a).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ALabel, u32)> + '_ {
        self.0.iter().map(|(a, &k)| (a, k))
    }

    pub fn support(&self) -> impl Iterator<Item = &ALabel> + '_ {
        self.0.keys()
    }

    /// Pointwise `self ≤ other`.
    pub fn le(&self, other: &Multiset) -> bool {
        self.iter().all(|(a, k)| other.get(a) >= k)
    }

    pub fn plus(&self, other: &Multiset) -> Multiset {
        let mut out = self.clone();
        for (a, k) in other.iter() {
            out.add_label(a.clone(), k);
        }
        out
    }

    /// `self − other`, defined only when `other ≤ self`.
    pub fn minus(&self, other: &Multiset) -> Result<Multiset> {
        let mut out = self.0.clone();
        for (a, k) in other.iter() {
            match out.get_mut(a) {
                Some(v) if *v >= k => {
                    *v -= k;
                    if *v == 0 {
                        out.remove(a);
                    }
                }
                _ => {
                    return Err(Error::Precondition(format!(
                        "{other} is not a sub-multiset of {self}"
                    )))
                }
            }
        }
        Ok(Multiset(out))
    }

    /// `self − χ_a`.
    pub fn minus_label(&self, a: &ALabel) -> Result<Multiset> {
        self.minus(&Multiset::single(a.clone()))
    }

    /// `π(ψ) = ∏ a^{ψ(a)}`; the unit for the zero multiset.
    pub fn pi(&self, vars: usize) -> ALabel {
        self.iter()
            .fold(ALabel::unit(vars), |acc, (a, k)| acc.times(&a.pow(k)))
    }

    /// `|ψ|! / ∏ ψ(a)!`.
    pub fn multinomial(&self) -> BigInt {
        let mut num = factorial(self.size());
        for (_, k) in self.iter() {
            num /= factorial(k);
        }
        num
    }

    /// Every sub-multiset, each exactly once, in odometer order.
    pub fn sub_multisets(&self) -> SubMultisets {
        SubMultisets::new(self, None)
    }

    /// Sub-multisets of size exactly `k`.
    pub fn sub_multisets_of_size(&self, k: u32) -> SubMultisets {
        SubMultisets::new(self, Some(k))
    }

    /// Number of sub-multisets, `∏ (χ(a)+1)`.
    pub fn sub_multiset_count(&self) -> u64 {
        self.iter().map(|(_, k)| k as u64 + 1).product()
    }

    /// Parses the inline syntax `{[e1,e2,...]:mult, ...}`.
    pub fn parse_inline(src: &str, config: &LabelConfig) -> Result<Multiset> {
        let mut p = InlineParser { src, pos: 0 };
        let m = p.multiset(config)?;
        p.skip_ws();
        if p.pos != src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(m)
    }
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

/// `C(n, k) = n(n−1)⋯(n−k+1)/k!`, defined for every integer `n`.
pub fn binomial(n: i64, k: u32) -> BigInt {
    let num = (0..k as i64).fold(BigInt::one(), |acc, i| acc * (n - i));
    num / factorial(k)
}

/// Lazy enumeration of `F(χ)` or `F_k(χ)`.
pub struct SubMultisets {
    labels: Vec<ALabel>,
    caps: Vec<u32>,
    cur: Vec<u32>,
    size: Option<u32>,
    done: bool,
}

impl SubMultisets {
    fn new(of: &Multiset, size: Option<u32>) -> Self {
        let (labels, caps): (Vec<_>, Vec<_>) = of.iter().map(|(a, k)| (a.clone(), k)).unzip();
        let n = labels.len();
        let done = matches!(size, Some(k) if k > of.size());
        Self {
            labels,
            caps,
            cur: vec![0; n],
            size,
            done,
        }
    }

    fn advance(&mut self) -> bool {
        for j in (0..self.cur.len()).rev() {
            if self.cur[j] < self.caps[j] {
                self.cur[j] += 1;
                return true;
            }
            self.cur[j] = 0;
        }
        false
    }
}

impl Iterator for SubMultisets {
    type Item = Multiset;

    fn next(&mut self) -> Option<Multiset> {
        while !self.done {
            let total: u32 = self.cur.iter().sum();
            let hit = self.size.is_none_or(|k| k == total);
            let item = hit.then(|| {
                Multiset::from_pairs(self.labels.iter().cloned().zip(self.cur.iter().copied()))
            });
            if !self.advance() {
                self.done = true;
            }
            if item.is_some() {
                return item;
            }
        }
        None
    }
}

impl fmt::Display for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (a, k)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}:{k}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Multiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Multiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Multiset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<(ALabel, u32)>::deserialize(d)?;
        Ok(Multiset::from_pairs(pairs))
    }
}

struct InlineParser<'a> {
    src: &'a str,
    pos: usize,
}

impl InlineParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.src[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn peek(&mut self, c: char) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(c)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let mut len = 0;
        for (i, ch) in rest.char_indices() {
            if ch.is_ascii_digit() || (i == 0 && (ch == '-' || ch == '+')) {
                len = i + 1;
            } else {
                break;
            }
        }
        self.src[start..start + len]
            .parse()
            .inspect(|_v| {
                self.pos += len;
            })
            .map_err(|_| self.err("expected an integer"))
    }

    fn label(&mut self, config: &LabelConfig) -> Result<ALabel> {
        let start = self.pos;
        self.expect('[')?;
        let mut exps = Vec::new();
        if !self.peek(']') {
            loop {
                let v = self.integer()?;
                exps.push(i32::try_from(v).map_err(|_| self.err("exponent out of range"))?);
                if self.peek(',') {
                    self.expect(',')?;
                } else {
                    break;
                }
            }
        }
        self.expect(']')?;
        let label = ALabel::from_exponents(exps);
        config.validate(&label).map_err(|e| Error::Parse {
            pos: start,
            msg: e.to_string(),
        })?;
        Ok(label)
    }

    fn multiset(&mut self, config: &LabelConfig) -> Result<Multiset> {
        self.expect('{')?;
        let mut m = Multiset::new();
        if !self.peek('}') {
            loop {
                let a = self.label(config)?;
                self.expect(':')?;
                let k = self.integer()?;
                if k < 0 {
                    return Err(self.err("multiplicity must be non-negative"));
                }
                let k = u32::try_from(k).map_err(|_| self.err("multiplicity out of range"))?;
                m.add_label(a, k);
                if self.peek(',') {
                    self.expect(',')?;
                } else {
                    break;
                }
            }
        }
        self.expect('}')?;
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(e: i32) -> ALabel {
        ALabel::from_exponents([e])
    }

    fn ms(pairs: &[(i32, u32)]) -> Multiset {
        Multiset::from_pairs(pairs.iter().map(|&(e, k)| (t(e), k)))
    }

    #[test]
    fn signed_binomials() {
        assert_eq!(binomial(5, 2), 10.into());
        assert_eq!(binomial(0, 0), 1.into());
        assert_eq!(binomial(-1, 1), (-1).into());
        assert_eq!(binomial(-1, 3), (-1).into());
        assert_eq!(binomial(0, 2), 0.into());
        assert_eq!(binomial(-2, 2), 3.into());
    }

    #[test]
    fn pi_of_multisets() {
        assert_eq!(ms(&[(1, 2), (2, 1)]).pi(1), t(4));
        assert_eq!(Multiset::new().pi(1), t(0));
        assert_eq!(ms(&[(0, 5)]).pi(1), t(0));
    }

    #[test]
    fn multinomials() {
        assert_eq!(ms(&[(0, 2), (1, 1)]).multinomial(), BigInt::from(3));
        assert_eq!(ms(&[(3, 4)]).multinomial(), BigInt::from(1));
        assert_eq!(ms(&[(0, 2), (1, 2)]).multinomial(), BigInt::from(6));
        assert_eq!(Multiset::new().multinomial(), BigInt::from(1));
    }

    #[test]
    fn subtraction() {
        assert_eq!(
            ms(&[(0, 3), (1, 1)]).minus(&ms(&[(0, 1)])).unwrap(),
            ms(&[(0, 2), (1, 1)])
        );
        let chi = ms(&[(0, 2)]);
        assert!(chi.minus(&chi).unwrap().is_empty());
        assert!(matches!(
            ms(&[(0, 1)]).minus(&ms(&[(1, 1)])),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn sub_multiset_listing() {
        let all: Vec<_> = ms(&[(0, 1), (1, 1)]).sub_multisets().collect();
        assert_eq!(all.len(), 4);
        assert!(all.contains(&Multiset::new()));
        assert!(all.contains(&ms(&[(0, 1), (1, 1)])));

        let k1: Vec<_> = ms(&[(0, 2)]).sub_multisets_of_size(1).collect();
        assert_eq!(k1, vec![ms(&[(0, 1)])]);

        let mut k2: Vec<_> = ms(&[(0, 2), (1, 1)]).sub_multisets_of_size(2).collect();
        k2.sort();
        let mut want = vec![ms(&[(0, 2)]), ms(&[(0, 1), (1, 1)])];
        want.sort();
        assert_eq!(k2, want);

        assert_eq!(Multiset::new().sub_multisets().count(), 1);
        assert_eq!(ms(&[(0, 1)]).sub_multisets_of_size(2).count(), 0);
    }

    #[test]
    fn inline_syntax() {
        let c = LabelConfig::polynomial(1);
        assert_eq!(
            Multiset::parse_inline("{[0]:1}", &c).unwrap(),
            ms(&[(0, 1)])
        );
        assert_eq!(
            Multiset::parse_inline(" { } ", &c).unwrap(),
            Multiset::new()
        );
        assert_eq!(
            Multiset::parse_inline("{[1]:2, [0]:1}", &c).unwrap(),
            ms(&[(0, 1), (1, 2)])
        );
        match Multiset::parse_inline("{[1]:x}", &c) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Multiset::parse_inline("{[1,2]:1}", &c).is_err());
        assert!(Multiset::parse_inline("{[-1]:1}", &c).is_err());
        assert!(Multiset::parse_inline("{[1]:1} extra", &c).is_err());
    }

    #[test]
    fn display_and_json() {
        let m = ms(&[(2, 1), (0, 3)]);
        assert_eq!(m.to_string(), "{1:3, t^2:1}");
        let j = serde_json::to_string(&m).unwrap();
        assert_eq!(j, "[[[0],3],[[2],1]]");
        let back: Multiset = serde_json::from_str(&j).unwrap();
        assert_eq!(back, m);
    }
}
