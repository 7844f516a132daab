//! Monomials over string-labeled variables, and factorizations of a
//! monomial into generators of a reference set.
//!
//! Exponents are kept as a sparse ordered map from variable label to a
//! positive exponent; hot code paths convert to dense vectors against a
//! fixed variable table and convert back at the boundary.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::de::{self, Deserialize, Deserializer};
use serde::ser::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A monomial: finitely many variables with positive integer exponents.
/// The unit monomial has an empty exponent map and prints as `1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    exponents: BTreeMap<String, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// Single variable with exponent 1.
    pub fn var(label: impl Into<String>) -> Self {
        let mut exponents = BTreeMap::new();
        exponents.insert(label.into(), 1);
        Monomial { exponents }
    }

    /// Builds a monomial from (label, exponent) pairs. Zero exponents are
    /// dropped; repeated labels accumulate.
    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut exponents: BTreeMap<String, u32> = BTreeMap::new();
        for (label, e) in pairs {
            if e > 0 {
                *exponents.entry(label.into()).or_insert(0) += e;
            }
        }
        Monomial { exponents }
    }

    /// Squarefree monomial with the given support.
    pub fn squarefree<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Monomial::from_pairs(labels.into_iter().map(|l| (l, 1)))
    }

    pub fn is_one(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn degree(&self, label: &str) -> u32 {
        self.exponents.get(label).copied().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.exponents.values().sum()
    }

    pub fn support(&self) -> BTreeSet<&str> {
        self.exponents.keys().map(|s| s.as_str()).collect()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exponents.values().all(|&e| e == 1)
    }

    /// Iterates (label, exponent) in label order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.exponents.iter().map(|(l, &e)| (l.as_str(), e))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exponents = self.exponents.clone();
        for (l, &e) in &other.exponents {
            *exponents.entry(l.clone()).or_insert(0) += e;
        }
        Monomial { exponents }
    }

    /// Exact division: `self / other`, or `None` when `other` does not
    /// divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exponents = self.exponents.clone();
        for (l, &e) in &other.exponents {
            match exponents.get_mut(l) {
                Some(have) if *have >= e => {
                    *have -= e;
                    if *have == 0 {
                        exponents.remove(l);
                    }
                }
                _ => return None,
            }
        }
        Some(Monomial { exponents })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exponents.iter().all(|(l, &e)| other.degree(l) >= e)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exponents = self
            .exponents
            .iter()
            .filter_map(|(l, &e)| {
                let o = other.degree(l);
                let m = e.min(o);
                (m > 0).then(|| (l.clone(), m))
            })
            .collect();
        Monomial { exponents }
    }

    /// `self / gcd(self, other)`: the part of `self` that `other` misses.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        let exponents = self
            .exponents
            .iter()
            .filter_map(|(l, &e)| {
                let keep = e.saturating_sub(other.degree(l));
                (keep > 0).then(|| (l.clone(), keep))
            })
            .collect();
        Monomial { exponents }
    }

    /// Parses the text form `y1^2*y3*y5`. `^1` may be omitted; the string
    /// `1` denotes the unit monomial. Labels may not contain `*`, `^`, or
    /// whitespace (a variable literally named `1` can be written `1^1`).
    pub fn parse(text: &str) -> Result<Monomial> {
        let text = text.trim();
        if text.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        if text == "1" {
            return Ok(Monomial::one());
        }
        let mut pairs = Vec::new();
        for raw in text.split('*') {
            let factor = raw.trim();
            if factor.is_empty() {
                return Err(Error::Parse(format!("empty factor in monomial `{text}`")));
            }
            let (label, exp) = match factor.split_once('^') {
                Some((l, e)) => {
                    let exp: u32 = e.trim().parse().map_err(|_| {
                        Error::Parse(format!("bad exponent `{e}` in monomial `{text}`"))
                    })?;
                    (l.trim(), exp)
                }
                None => (factor, 1),
            };
            if label.is_empty() || label.contains(char::is_whitespace) {
                return Err(Error::Parse(format!("bad variable `{label}` in `{text}`")));
            }
            pairs.push((label.to_string(), exp));
        }
        Ok(Monomial::from_pairs(pairs))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (label, e) in self.iter() {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{label}")?;
            } else {
                write!(f, "{label}^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Monomial::parse(&text).map_err(de::Error::custom)
    }
}

/// Product of monomials.
pub fn product<'a, I: IntoIterator<Item = &'a Monomial>>(factors: I) -> Monomial {
    factors
        .into_iter()
        .fold(Monomial::one(), |acc, m| acc.mul(m))
}

/// A factorization of a target monomial over a reference generator set:
/// `target = factors[0] * ... * factors[k-1] * cofactor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<Monomial>,
    pub cofactor: Monomial,
}

impl Factorization {
    pub fn new(factors: Vec<Monomial>, cofactor: Monomial) -> Self {
        Factorization { factors, cofactor }
    }

    /// Product of the factors alone, without the cofactor.
    pub fn factor_product(&self) -> Monomial {
        product(self.factors.iter())
    }

    /// Product including the cofactor; equals the factored target.
    pub fn total(&self) -> Monomial {
        self.factor_product().mul(&self.cofactor)
    }

    pub fn k(&self) -> usize {
        self.factors.len()
    }
}
