use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PresetKind {
    Sl2,
    Sl3,
}

impl PresetKind {
    pub fn name(self) -> &'static str {
        match self {
            PresetKind::Sl2 => "sl2",
            PresetKind::Sl3 => "sl3",
        }
    }
}

impl fmt::Display for PresetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PresetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sl2" => Ok(PresetKind::Sl2),
            "sl3" => Ok(PresetKind::Sl3),
            _ => Err(Error::UnknownPreset(s.to_string())),
        }
    }
}

/// Which part of the triangular decomposition a basis vector belongs to.
/// The payload is a positive-root index or a simple-root index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenClass {
    Negative(usize),
    Cartan(usize),
    Positive(usize),
}

/// A split simple Lie algebra given by a Chevalley basis and its integer
/// structure constants.
///
/// Basis indices are laid out as `x⁻_β` for every positive root `β`, then
/// `h_1..h_n`, then `x⁺_β`, so index order is the PBW order
/// `𝔫⁻ < 𝔥 < 𝔫⁺`.
#[derive(Clone, Debug)]
pub struct LiePreset {
    kind: PresetKind,
    rank: usize,
    roots: Vec<Vec<i64>>,
    simple_roots: Vec<usize>,
    names: Vec<String>,
    classes: Vec<GenClass>,
    brackets: Vec<Vec<Vec<(usize, i64)>>>,
    pairings: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
}

type Matrix = Vec<Vec<i64>>;

fn elementary(size: usize, i: usize, j: usize) -> Matrix {
    let mut m = vec![vec![0; size]; size];
    m[i][j] = 1;
    m
}

fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0;
            for k in 0..n {
                s += a[i][k] * b[k][j] - b[i][k] * a[k][j];
            }
            out[i][j] = s;
        }
    }
    out
}

/// Builds the preset for `sl_{rank+1}` from its defining representation.
fn special_linear(kind: PresetKind, rank: usize) -> Result<LiePreset> {
    let size = rank + 1;
    // positive roots e_i - e_j (i < j), ordered by height then by i
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for height in 1..size {
        for i in 0..size - height {
            pairs.push((i, i + height));
        }
    }
    let m = pairs.len();
    let roots: Vec<Vec<i64>> = pairs
        .iter()
        .map(|&(i, j)| (0..rank).map(|k| i64::from(k >= i && k < j)).collect())
        .collect();
    let simple_roots: Vec<usize> = (0..rank).collect();

    let root_name = |b: usize| -> String {
        if rank == 1 {
            String::new()
        } else {
            let (i, j) = pairs[b];
            let digits: String = (i + 1..=j).map(|d| d.to_string()).collect();
            format!("_a{digits}")
        }
    };
    let mut names = Vec::new();
    let mut classes = Vec::new();
    let mut mats: Vec<Matrix> = Vec::new();
    for (b, &(i, j)) in pairs.iter().enumerate() {
        names.push(format!("x-{}", root_name(b)));
        classes.push(GenClass::Negative(b));
        mats.push(elementary(size, j, i));
    }
    for k in 0..rank {
        names.push(if rank == 1 {
            "h".into()
        } else {
            format!("h_{}", k + 1)
        });
        classes.push(GenClass::Cartan(k));
        let mut h = elementary(size, k, k);
        h[k + 1][k + 1] = -1;
        mats.push(h);
    }
    for (b, &(i, j)) in pairs.iter().enumerate() {
        names.push(format!("x+{}", root_name(b)));
        classes.push(GenClass::Positive(b));
        mats.push(elementary(size, i, j));
    }

    let dim = mats.len();
    let decompose = |mat: &Matrix| -> Result<Vec<(usize, i64)>> {
        let mut out = Vec::new();
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mat[j][i] != 0 {
                out.push((b, mat[j][i]));
            }
        }
        let mut partial = 0;
        for (k, row) in mat.iter().enumerate().take(rank) {
            partial += row[k];
            if partial != 0 {
                out.push((m + k, partial));
            }
        }
        for (b, &(i, j)) in pairs.iter().enumerate() {
            if mat[i][j] != 0 {
                out.push((m + rank + b, mat[i][j]));
            }
        }
        out.sort();
        // the decomposition must reproduce the matrix exactly
        let mut rebuilt = vec![vec![0; size]; size];
        for &(idx, c) in &out {
            for r in 0..size {
                for s in 0..size {
                    rebuilt[r][s] += c * mats[idx][r][s];
                }
            }
        }
        if &rebuilt != mat {
            return Err(Error::Validation("bracket left the Chevalley span".into()));
        }
        Ok(out)
    };

    let mut brackets = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            brackets[a][b] = decompose(&commutator(&mats[a], &mats[b]))?;
        }
    }

    let mut preset = LiePreset {
        kind,
        rank,
        roots,
        simple_roots,
        names,
        classes,
        brackets,
        pairings: Vec::new(),
        coroots: Vec::new(),
    };
    preset.pairings = (0..m)
        .map(|b| {
            (0..rank)
                .map(|i| {
                    preset.coefficient(preset.cartan(i), preset.positive(b), preset.positive(b))
                })
                .collect()
        })
        .collect();
    preset.coroots = (0..m)
        .map(|b| {
            (0..rank)
                .map(|i| {
                    preset.coefficient(preset.positive(b), preset.negative(b), preset.cartan(i))
                })
                .collect()
        })
        .collect();
    preset.validate()?;
    Ok(preset)
}

/// Looks up a shipped preset by name.
pub fn make_preset(name: &str) -> Result<LiePreset> {
    LiePreset::new(name.parse()?)
}

impl LiePreset {
    pub fn new(kind: PresetKind) -> Result<Self> {
        match kind {
            PresetKind::Sl2 => special_linear(kind, 1),
            PresetKind::Sl3 => special_linear(kind, 2),
        }
    }

    pub fn kind(&self) -> PresetKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_positive_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    /// Coordinates of positive root `b` in the simple roots.
    pub fn root(&self, b: usize) -> &[i64] {
        &self.roots[b]
    }

    /// Positive-root index of the simple root `α_i`.
    pub fn simple_root(&self, i: usize) -> usize {
        self.simple_roots[i]
    }

    /// Index of the positive root with the given simple-root coordinates.
    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.roots.iter().position(|r| r == coords)
    }

    pub fn negative(&self, b: usize) -> usize {
        b
    }

    pub fn cartan(&self, i: usize) -> usize {
        self.roots.len() + i
    }

    pub fn positive(&self, b: usize) -> usize {
        self.roots.len() + self.rank + b
    }

    pub fn root_vector(&self, positive: bool, b: usize) -> usize {
        if positive {
            self.positive(b)
        } else {
            self.negative(b)
        }
    }

    pub fn class(&self, idx: usize) -> GenClass {
        self.classes[idx]
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    /// `[e_a, e_b]` as a sparse combination of basis indices.
    pub fn bracket(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.brackets[a][b]
    }

    fn coefficient(&self, a: usize, b: usize, target: usize) -> i64 {
        self.brackets[a][b]
            .iter()
            .find(|(i, _)| *i == target)
            .map_or(0, |(_, c)| *c)
    }

    /// `β(h_i)` for positive root `b`.
    pub fn pairing(&self, b: usize, i: usize) -> i64 {
        self.pairings[b][i]
    }

    /// The Cartan matrix `α_j(h_i)`, indexed `[i][j]`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .map(|j| self.pairing(self.simple_roots[j], i))
                    .collect()
            })
            .collect()
    }

    /// `h_β = [x⁺_β, x⁻_β]` in the coordinates `h_1..h_n`.
    pub fn coroot(&self, b: usize) -> &[i64] {
        &self.coroots[b]
    }

    /// Checks antisymmetry and the Jacobi identity on every basis triple.
    pub fn validate(&self) -> Result<()> {
        let dim = self.dim();
        let dense = |a: usize, b: usize| -> Vec<i64> {
            let mut v = vec![0; dim];
            for &(i, c) in &self.brackets[a][b] {
                v[i] += c;
            }
            v
        };
        for a in 0..dim {
            for b in 0..dim {
                let ab = dense(a, b);
                let ba = dense(b, a);
                if ab.iter().zip(&ba).any(|(x, y)| x + y != 0) {
                    return Err(Error::Validation(format!(
                        "antisymmetry fails for ({}, {})",
                        self.names[a], self.names[b]
                    )));
                }
            }
        }
        // [a,[b,c]] + [b,[c,a]] + [c,[a,b]] = 0
        let nested = |a: usize, b: usize, c: usize, acc: &mut Vec<i64>| {
            for &(i, k) in &self.brackets[b][c] {
                for &(j, l) in &self.brackets[a][i] {
                    acc[j] += k * l;
                }
            }
        };
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let mut acc = vec![0; dim];
                    nested(a, b, c, &mut acc);
                    nested(b, c, a, &mut acc);
                    nested(c, a, b, &mut acc);
                    if acc.iter().any(|&x| x != 0) {
                        return Err(Error::Validation(format!(
                            "Jacobi identity fails for ({}, {}, {})",
                            self.names[a], self.names[b], self.names[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_data() {
        let p = LiePreset::new(PresetKind::Sl2).unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(p.num_positive_roots(), 1);
        assert_eq!(p.pairing(0, 0), 2);
        assert_eq!(p.name(0), "x-");
        assert_eq!(p.name(1), "h");
        assert_eq!(p.name(2), "x+");
        // [x+, x-] = h, [h, x+] = 2x+, [h, x-] = -2x-
        assert_eq!(p.bracket(2, 0), &[(1, 1)]);
        assert_eq!(p.bracket(1, 2), &[(2, 2)]);
        assert_eq!(p.bracket(1, 0), &[(0, -2)]);
        assert_eq!(p.coroot(0), &[1]);
    }

    #[test]
    fn sl3_data() {
        let p = make_preset("sl3").unwrap();
        assert_eq!(p.dim(), 8);
        assert_eq!(p.num_positive_roots(), 3);
        assert_eq!(p.cartan_matrix(), vec![vec![2, -1], vec![-1, 2]]);
        let top = p.root_index(&[1, 1]).unwrap();
        assert_eq!(p.pairing(top, 0), 1);
        assert_eq!(p.pairing(top, 1), 1);
        assert_eq!(p.coroot(top), &[1, 1]);
        assert_eq!(p.name(p.negative(0)), "x-_a1");
        assert_eq!(p.name(p.cartan(1)), "h_2");
        assert_eq!(p.name(p.positive(top)), "x+_a12");
        // [x+_a1, x+_a2] is ± x+_a12
        let br = p.bracket(p.positive(0), p.positive(1));
        assert_eq!(br.len(), 1);
        assert_eq!(br[0].0, p.positive(top));
        assert_eq!(br[0].1.abs(), 1);
    }

    #[test]
    fn unknown_names() {
        assert!(matches!(make_preset("g2"), Err(Error::UnknownPreset(_))));
        assert_eq!("SL2".parse::<PresetKind>().unwrap(), PresetKind::Sl2);
    }

    #[test]
    fn classes_follow_pbw_order() {
        let p = LiePreset::new(PresetKind::Sl3).unwrap();
        let classes: Vec<_> = (0..p.dim()).map(|i| p.class(i)).collect();
        let mut sorted = classes.clone();
        sorted.sort();
        assert_eq!(classes, sorted);
    }
}
