//! A direct rewriting normalizer, independent of the memoized insertion in
//! [`Algebra`](super::Algebra). It repeatedly picks one adjacent inversion and
//! applies `g·h → h·g + [g,h]` until every word is sorted.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::{Element, Generator, Monomial};
use super::preset::LiePreset;

/// Which adjacent inversion to rewrite first.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

fn find_inversion(word: &[Generator], strategy: Strategy) -> Option<usize> {
    let mut idx = (0..word.len().saturating_sub(1)).filter(|&i| word[i] > word[i + 1]);
    match strategy {
        Strategy::Leftmost => idx.next(),
        Strategy::Rightmost => idx.next_back(),
    }
}

fn collect_word(word: &[Generator]) -> Monomial {
    let mut factors: Vec<(Generator, u32)> = Vec::new();
    for g in word {
        match factors.last_mut() {
            Some((h, e)) if h == g => *e += 1,
            _ => factors.push((g.clone(), 1)),
        }
    }
    Monomial::from_factors(factors).expect("sorted word")
}

/// Normal form of a single word.
pub fn straighten_word(preset: &LiePreset, word: &[Generator], strategy: Strategy) -> Element {
    straighten_words(preset, [(word.to_vec(), BigRational::one())], strategy)
}

/// Normal form of a linear combination of words.
pub fn straighten_words<I>(preset: &LiePreset, words: I, strategy: Strategy) -> Element
where
    I: IntoIterator<Item = (Vec<Generator>, BigRational)>,
{
    let mut pending: BTreeMap<Vec<Generator>, BigRational> = BTreeMap::new();
    let push =
        |pending: &mut BTreeMap<Vec<Generator>, BigRational>, w: Vec<Generator>, c: BigRational| {
            let slot = pending.entry(w).or_insert_with(BigRational::zero);
            *slot += c;
        };
    for (w, c) in words {
        push(&mut pending, w, c);
    }
    let mut out = Element::zero(preset.kind());
    while let Some((word, c)) = pending.pop_last() {
        if c.is_zero() {
            continue;
        }
        let Some(i) = find_inversion(&word, strategy) else {
            out.add_term(collect_word(&word), c);
            continue;
        };
        let (g, h) = (&word[i], &word[i + 1]);
        let mut swapped = word.clone();
        swapped.swap(i, i + 1);
        let label = g.label.times(&h.label);
        for &(idx, k) in preset.bracket(g.lie, h.lie) {
            let mut shorter = word[..i].to_vec();
            shorter.push(Generator::new(idx, label.clone()));
            shorter.extend_from_slice(&word[i + 2..]);
            push(
                &mut pending,
                shorter,
                &c * BigRational::from_integer(k.into()),
            );
        }
        push(&mut pending, swapped, c);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::ALabel;
    use crate::pbw::PresetKind;

    #[test]
    fn strategies_agree_on_sl2_word() {
        let p = LiePreset::new(PresetKind::Sl2).unwrap();
        let t = |e| ALabel::from_exponents([e]);
        let word = vec![
            Generator::new(2, t(1)),
            Generator::new(2, t(0)),
            Generator::new(0, t(0)),
            Generator::new(1, t(2)),
        ];
        let a = straighten_word(&p, &word, Strategy::Leftmost);
        let b = straighten_word(&p, &word, Strategy::Rightmost);
        assert_eq!(a, b);
        assert!(!a.is_zero());
    }

    #[test]
    fn sorted_word_is_fixed() {
        let p = LiePreset::new(PresetKind::Sl2).unwrap();
        let g = Generator::new(0, ALabel::from_exponents([0]));
        let e = straighten_word(&p, &[g.clone(), g.clone()], Strategy::Leftmost);
        assert_eq!(
            e,
            Element::from_monomial(PresetKind::Sl2, Monomial::power(g, 2), BigRational::one())
        );
    }
}
