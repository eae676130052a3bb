use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Whether exponents of a monomial label may be negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelMode {
    Polynomial,
    Laurent,
}

/// The coefficient algebra `A`, realized as a monomial monoid in `vars` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LabelConfig {
    pub vars: usize,
    pub mode: LabelMode,
}

impl LabelConfig {
    pub fn new(vars: usize, mode: LabelMode) -> Result<Self> {
        if vars == 0 {
            return Err(Error::Config("at least one variable is required".into()));
        }
        Ok(Self { vars, mode })
    }

    pub fn polynomial(vars: usize) -> Self {
        assert!(vars >= 1, "at least one variable is required");
        Self {
            vars,
            mode: LabelMode::Polynomial,
        }
    }

    pub fn unit(&self) -> ALabel {
        ALabel::unit(self.vars)
    }

    /// `t_i^e` for the variable with zero-based index `i`.
    pub fn var_power(&self, i: usize, e: i32) -> ALabel {
        let mut v = SmallVec::from_elem(0, self.vars);
        v[i] = e;
        ALabel(v)
    }

    /// `t^e` in the first variable.
    pub fn t(&self, e: i32) -> ALabel {
        self.var_power(0, e)
    }

    pub fn validate(&self, label: &ALabel) -> Result<()> {
        if label.len() != self.vars {
            return Err(Error::Config(format!(
                "label {label:?} has {} exponents, expected {}",
                label.len(),
                self.vars
            )));
        }
        if self.mode == LabelMode::Polynomial && label.exponents().iter().any(|&e| e < 0) {
            return Err(Error::Config(format!(
                "negative exponent in {label:?} requires laurent mode"
            )));
        }
        Ok(())
    }

    /// All labels of "size" at most `max_degree`, sorted in label order.
    ///
    /// Size is the total degree in polynomial mode and the sum of absolute
    /// exponents in Laurent mode.
    pub fn labels_up_to(&self, max_degree: u32) -> Vec<ALabel> {
        let lo = match self.mode {
            LabelMode::Polynomial => 0,
            LabelMode::Laurent => -(max_degree as i32),
        };
        let hi = max_degree as i32;
        let mut out = Vec::new();
        let mut cur = vec![lo; self.vars];
        loop {
            let weight: u32 = cur.iter().map(|e: &i32| e.unsigned_abs()).sum();
            if weight <= max_degree {
                out.push(ALabel::from_exponents(cur.clone()));
            }
            let mut j = self.vars;
            loop {
                if j == 0 {
                    out.sort();
                    return out;
                }
                j -= 1;
                if cur[j] < hi {
                    cur[j] += 1;
                    break;
                }
                cur[j] = lo;
            }
        }
    }
}

/// A basis element of `A`: an exponent vector of a monomial.
///
/// Ordered graded-lexicographically: total degree first, then exponent
/// vectors lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ALabel(SmallVec<[i32; 2]>);

impl ALabel {
    pub fn unit(vars: usize) -> Self {
        ALabel(SmallVec::from_elem(0, vars))
    }

    pub fn from_exponents<I: IntoIterator<Item = i32>>(exps: I) -> Self {
        ALabel(exps.into_iter().collect())
    }

    pub fn exponents(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    /// Product in `A`.
    ///
    /// # Panics
    /// Panics if the exponent vectors have different lengths; use
    /// [`mul_label`] at trust boundaries.
    pub fn times(&self, other: &ALabel) -> ALabel {
        assert_eq!(self.len(), other.len(), "label length mismatch");
        ALabel(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn pow(&self, k: u32) -> ALabel {
        ALabel(self.0.iter().map(|&e| e * k as i32).collect())
    }
}

/// Componentwise exponent sum, rejecting labels from different configurations.
pub fn mul_label(a: &ALabel, b: &ALabel) -> Result<ALabel> {
    if a.len() != b.len() {
        return Err(Error::Config(format!(
            "cannot multiply labels with {} and {} variables",
            a.len(),
            b.len()
        )));
    }
    Ok(a.times(b))
}

impl Ord for ALabel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ALabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ALabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// `t^2`, `t1*t2^3`, or `1` for the unit. A single variable is written `t`.
impl fmt::Display for ALabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_str("1");
        }
        let single = self.len() == 1;
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if single {
                f.write_str("t")?;
            } else {
                write!(f, "t{}", i + 1)?;
            }
            if e != 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(e: &[i32]) -> ALabel {
        ALabel::from_exponents(e.iter().copied())
    }

    #[test]
    fn multiplication_adds_exponents() {
        assert_eq!(l(&[1]).times(&l(&[2])), l(&[3]));
        assert_eq!(l(&[4]).times(&ALabel::unit(1)), l(&[4]));
        assert_eq!(l(&[1, 0]).times(&l(&[0, 2])), l(&[1, 2]));
    }

    #[test]
    fn mismatched_lengths_are_a_config_error() {
        assert!(matches!(
            mul_label(&l(&[1]), &l(&[1, 0])),
            Err(Error::Config(_))
        ));
    }

    #[test]
    fn graded_lex_order() {
        assert!(l(&[0, 0]) < l(&[0, 1]));
        assert!(l(&[0, 1]) < l(&[1, 0]));
        assert!(l(&[1, 0]) < l(&[0, 2]));
        assert!(l(&[2]) > l(&[1]));
    }

    #[test]
    fn rendering() {
        assert_eq!(ALabel::unit(2).to_string(), "1");
        assert_eq!(l(&[1]).to_string(), "t");
        assert_eq!(l(&[2]).to_string(), "t^2");
        assert_eq!(l(&[1, 3]).to_string(), "t1*t2^3");
        assert_eq!(l(&[0, -1]).to_string(), "t2^-1");
    }

    #[test]
    fn label_pools() {
        let c = LabelConfig::polynomial(1);
        assert_eq!(c.labels_up_to(2), vec![l(&[0]), l(&[1]), l(&[2])]);
        let c2 = LabelConfig::polynomial(2);
        assert_eq!(c2.labels_up_to(1).len(), 3);
        let lau = LabelConfig::new(1, LabelMode::Laurent).unwrap();
        assert_eq!(lau.labels_up_to(1).len(), 3);
    }

    #[test]
    fn validation() {
        let c = LabelConfig::polynomial(1);
        assert!(c.validate(&l(&[-1])).is_err());
        assert!(c.validate(&l(&[1, 1])).is_err());
        let lau = LabelConfig::new(1, LabelMode::Laurent).unwrap();
        assert!(lau.validate(&l(&[-1])).is_ok());
        assert!(LabelConfig::new(0, LabelMode::Polynomial).is_err());
    }
}
