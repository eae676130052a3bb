use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use super::multiset::Multiset;

/// A multiset of multisets. The empty multiset is an allowed part.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition(BTreeMap<Multiset, u32>);

impl Partition {
    pub fn from_parts<I: IntoIterator<Item = (Multiset, u32)>>(parts: I) -> Self {
        let mut map = BTreeMap::new();
        for (phi, k) in parts {
            if k > 0 {
                *map.entry(phi).or_insert(0) += k;
            }
        }
        Partition(map)
    }

    /// Number of parts counted with multiplicity.
    pub fn num_parts(&self) -> u32 {
        self.0.values().sum()
    }

    /// `Σ ψ(φ)·φ`.
    pub fn weighted_sum(&self) -> Multiset {
        let mut out = Multiset::new();
        for (phi, &k) in &self.0 {
            for (a, m) in phi.iter() {
                out.add_label(a.clone(), m * k);
            }
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Multiset, u32)> + '_ {
        self.0.iter().map(|(phi, &k)| (phi, k))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (phi, k)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{phi}:{k}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

/// `𝒫_k(χ)`: partitions of `χ` into exactly `k` parts (empty parts allowed).
pub fn partitions_k(chi: &Multiset, k: u32) -> Partitions {
    Partitions::new(chi, k, true, true)
}

/// `𝒫_k(χ)` with the empty part forbidden. Kept to demonstrate that the
/// explicit `D^±` expansion needs empty parts.
pub fn partitions_k_nonempty(chi: &Multiset, k: u32) -> Partitions {
    Partitions::new(chi, k, true, false)
}

/// `𝒮_k(χ)`: `k`-part multisets of multisets whose weighted sum is `≤ χ`.
pub fn subpartitions_k(chi: &Multiset, k: u32) -> Partitions {
    Partitions::new(chi, k, false, true)
}

pub fn subpartitions_k_nonempty(chi: &Multiset, k: u32) -> Partitions {
    Partitions::new(chi, k, false, false)
}

/// Depth-first enumeration of non-decreasing index sequences into the sorted
/// list of candidate parts.
pub struct Partitions {
    cands: Vec<Multiset>,
    k: usize,
    exact: bool,
    chosen: Vec<usize>,
    // rem[j] is what is left of χ after the first j choices
    rem: Vec<Multiset>,
    started: bool,
    done: bool,
}

impl Partitions {
    fn new(chi: &Multiset, k: u32, exact: bool, allow_empty: bool) -> Self {
        let mut cands: Vec<Multiset> = chi
            .sub_multisets()
            .filter(|m| allow_empty || !m.is_empty())
            .collect();
        cands.sort();
        Self {
            cands,
            k: k as usize,
            exact,
            chosen: Vec::new(),
            rem: vec![chi.clone()],
            started: false,
            done: false,
        }
    }

    fn first_fit(&self, from: usize) -> Option<usize> {
        let rem = self.rem.last().expect("rem is never empty");
        (from..self.cands.len()).find(|&i| self.cands[i].le(rem))
    }

    fn push(&mut self, i: usize) {
        let next = self.rem.last().unwrap().minus(&self.cands[i]).unwrap();
        self.chosen.push(i);
        self.rem.push(next);
    }

    fn pop(&mut self) -> Option<usize> {
        self.rem.pop();
        self.chosen.pop()
    }

    /// Extends the current prefix to length `k` greedily.
    fn descend(&mut self) -> bool {
        while self.chosen.len() < self.k {
            let from = self.chosen.last().copied().unwrap_or(0);
            match self.first_fit(from) {
                Some(i) => self.push(i),
                None => return false,
            }
        }
        true
    }

    fn accept(&self) -> bool {
        !self.exact || self.rem.last().unwrap().is_empty()
    }

    fn current(&self) -> Partition {
        let mut map = BTreeMap::new();
        for &i in &self.chosen {
            *map.entry(self.cands[i].clone()).or_insert(0) += 1;
        }
        Partition(map)
    }

    /// Moves to the next complete prefix in depth-first order.
    fn step(&mut self) -> bool {
        loop {
            let Some(last) = self.pop() else {
                return false;
            };
            if let Some(j) = self.first_fit(last + 1) {
                self.push(j);
                if self.descend() {
                    return true;
                }
            }
        }
    }
}

impl Iterator for Partitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        if self.done {
            return None;
        }
        let mut have = if !self.started {
            self.started = true;
            self.descend()
        } else {
            self.step()
        };
        loop {
            if !have {
                self.done = true;
                return None;
            }
            if self.accept() {
                let p = self.current();
                if self.k == 0 {
                    self.done = true;
                }
                return Some(p);
            }
            have = self.step();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::ALabel;

    fn t(e: i32) -> ALabel {
        ALabel::from_exponents([e])
    }

    fn ms(pairs: &[(i32, u32)]) -> Multiset {
        Multiset::from_pairs(pairs.iter().map(|&(e, k)| (t(e), k)))
    }

    #[test]
    fn zero_into_three_parts() {
        let all: Vec<_> = partitions_k(&Multiset::new(), 3).collect();
        assert_eq!(all, vec![Partition::from_parts([(Multiset::new(), 3)])]);
    }

    #[test]
    fn two_t_into_two_parts() {
        let all: Vec<_> = partitions_k(&ms(&[(1, 2)]), 2).collect();
        assert_eq!(all.len(), 2);
        assert!(all.contains(&Partition::from_parts([(ms(&[(1, 1)]), 2)])));
        assert!(all.contains(&Partition::from_parts([
            (ms(&[(1, 2)]), 1),
            (Multiset::new(), 1)
        ])));
    }

    #[test]
    fn single_part() {
        let all: Vec<_> = partitions_k(&ms(&[(0, 1)]), 1).collect();
        assert_eq!(all, vec![Partition::from_parts([(ms(&[(0, 1)]), 1)])]);
    }

    #[test]
    fn subpartitions_small() {
        assert_eq!(
            subpartitions_k(&Multiset::new(), 2).collect::<Vec<_>>(),
            vec![Partition::from_parts([(Multiset::new(), 2)])]
        );
        let s: Vec<_> = subpartitions_k(&ms(&[(0, 1)]), 1).collect();
        assert_eq!(s.len(), 2);
    }

    #[test]
    fn zero_parts() {
        assert_eq!(partitions_k(&Multiset::new(), 0).count(), 1);
        assert_eq!(partitions_k(&ms(&[(0, 1)]), 0).count(), 0);
        assert_eq!(subpartitions_k(&ms(&[(0, 1)]), 0).count(), 1);
    }

    #[test]
    fn nonempty_reading_drops_padding() {
        assert_eq!(partitions_k_nonempty(&Multiset::new(), 2).count(), 0);
        assert_eq!(partitions_k_nonempty(&ms(&[(1, 2)]), 2).count(), 1);
    }
}
