use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::setcore::IntSet;

/// A finitely supported non-negative function on the nonzero integers.
///
/// Entries with value exactly zero are dropped, so `support()` is the true
/// support.
#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct Weight {
    values: BTreeMap<i64, f64>,
}

impl Weight {
    /// Builds a weight; repeated keys are summed.
    pub fn new(entries: impl IntoIterator<Item = (i64, f64)>) -> Result<Self> {
        let mut values = BTreeMap::new();
        for (n, w) in entries {
            if n == 0 {
                return Err(Error::Domain("weight support must exclude 0".into()));
            }
            if n == i64::MIN {
                return Err(Error::Overflow("weight key -2^63".into()));
            }
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::Domain(format!(
                    "weight at {n} must be finite and non-negative, found {w}"
                )));
            }
            *values.entry(n).or_insert(0.0) += w;
        }
        values.retain(|_, w| *w > 0.0);
        Ok(Weight { values })
    }

    pub fn indicator(set: &IntSet) -> Result<Self> {
        Weight::new(set.iter().map(|n| (n, 1.0)))
    }

    pub fn get(&self, n: i64) -> f64 {
        self.values.get(&n).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.values.iter().map(|(&n, &w)| (n, w))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn support(&self) -> IntSet {
        IntSet::from_sorted_unchecked(self.values.keys().copied().collect())
    }

    pub fn l1(&self) -> f64 {
        self.values.values().sum()
    }

    pub fn l2_squared(&self) -> f64 {
        self.values.values().map(|w| w * w).sum()
    }

    pub fn l2(&self) -> f64 {
        self.l2_squared().sqrt()
    }

    pub fn scaled(&self, c: f64) -> Result<Weight> {
        Weight::new(self.iter().map(|(n, w)| (n, w * c)))
    }

    /// Error unless every support point is a positive integer.
    pub fn require_positive_support(&self) -> Result<()> {
        match self.values.keys().next() {
            Some(&n) if n < 0 => Err(Error::Domain(format!(
                "weight support must be positive, found {n}"
            ))),
            _ => Ok(()),
        }
    }
}

/// A finitely supported real function on ℤ, listed as sorted `(point, value)`
/// pairs.
pub trait FiniteFunction {
    fn entries(&self) -> Vec<(i64, f64)>;
}

impl FiniteFunction for Weight {
    fn entries(&self) -> Vec<(i64, f64)> {
        self.iter().collect()
    }
}

/// The indicator function of the set.
impl FiniteFunction for IntSet {
    fn entries(&self) -> Vec<(i64, f64)> {
        self.iter().map(|x| (x, 1.0)).collect()
    }
}

impl FiniteFunction for BTreeMap<i64, f64> {
    fn entries(&self) -> Vec<(i64, f64)> {
        self.iter().map(|(&k, &v)| (k, v)).collect()
    }
}

/// Reads `n<TAB>w` lines; `#` starts a comment line.
pub fn read_weight_file(path: impl AsRef<Path>) -> Result<Weight> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let bad = |line: usize, message: String| Error::FileFormat {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (n, w) = t
            .split_once('\t')
            .ok_or_else(|| bad(i + 1, format!("expected <n>TAB<w>, found {t:?}")))?;
        let n: i64 = n
            .trim()
            .parse()
            .map_err(|_| bad(i + 1, format!("bad integer {n:?}")))?;
        let w: f64 = w
            .trim()
            .parse()
            .map_err(|_| bad(i + 1, format!("bad weight {w:?}")))?;
        if n == 0 {
            return Err(bad(i + 1, "weight support must exclude 0".into()));
        }
        if !(w >= 0.0) || !w.is_finite() {
            return Err(bad(
                i + 1,
                format!("weight must be non-negative, found {w}"),
            ));
        }
        entries.push((n, w));
    }
    Weight::new(entries).map_err(|e| bad(0, e.to_string()))
}

pub fn write_weight_file(path: impl AsRef<Path>, w: &Weight) -> Result<()> {
    let path = path.as_ref();
    let mut s = String::new();
    for (n, v) in w.iter() {
        s.push_str(&format!("{n}\t{v:e}\n"));
    }
    fs::write(path, s).map_err(|e| Error::io(path, e))
}
