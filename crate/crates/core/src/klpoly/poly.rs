use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};

/// Integer Laurent polynomial in `q^{1/2}`. Exponents are stored doubled: the key `k`
/// stands for `q^{k/2}`. Terms are sorted and never zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HalfLaurent {
    terms: Vec<(i64, i64)>,
}

impl HalfLaurent {
    pub fn zero() -> Self {
        HalfLaurent { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `coeff · q^{doubled/2}`.
    pub fn monomial(doubled: i64, coeff: i64) -> Self {
        if coeff == 0 {
            Self::zero()
        } else {
            HalfLaurent { terms: vec![(doubled, coeff)] }
        }
    }

    /// From coefficients of `q^0, q^1, ...`.
    pub fn from_q_coeffs(coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(k, &c)| (2 * k as i64, c)))
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(iter: I) -> Self {
        let mut terms: Vec<(i64, i64)> = iter.into_iter().collect();
        terms.sort_unstable_by_key(|t| t.0);
        let mut out: Vec<(i64, i64)> = Vec::with_capacity(terms.len());
        for (k, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == k => last.1 += c,
                _ => out.push((k, c)),
            }
        }
        out.retain(|t| t.1 != 0);
        HalfLaurent { terms: out }
    }

    pub fn terms(&self) -> &[(i64, i64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms == [(0, 1)]
    }

    /// Coefficient of `q^{doubled/2}`.
    pub fn coeff(&self, doubled: i64) -> i64 {
        self.terms.binary_search_by_key(&doubled, |t| t.0).map_or(0, |i| self.terms[i].1)
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.first().map(|t| t.0)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.last().map(|t| t.0)
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> i64 {
        self.terms.iter().map(|t| t.1).sum()
    }

    /// Multiply by `q^{doubled/2}`.
    pub fn shift(&self, doubled: i64) -> Self {
        HalfLaurent { terms: self.terms.iter().map(|&(k, c)| (k + doubled, c)).collect() }
    }

    pub fn scale(&self, s: i64) -> Self {
        if s == 0 {
            return Self::zero();
        }
        HalfLaurent { terms: self.terms.iter().map(|&(k, c)| (k, c * s)).collect() }
    }

    /// Whether every exponent is a nonnegative integer power of `q`.
    pub fn is_integral_polynomial(&self) -> bool {
        self.terms.iter().all(|&(k, _)| k >= 0 && k % 2 == 0)
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.iter().all(|t| t.1 > 0)
    }

    /// Degree in `q` of an integral polynomial (doubled exponent halved); `None` for zero.
    pub fn q_degree(&self) -> Option<i64> {
        self.max_exponent().map(|k| k.div_euclid(2))
    }

    /// Canonical cache text: `k:c,k:c`, or `0` for the zero polynomial.
    pub fn to_record(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        self.terms.iter().map(|(k, c)| format!("{k}:{c}")).collect::<Vec<_>>().join(",")
    }

    pub fn from_record(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut terms = Vec::new();
        for part in s.split(',') {
            let (k, c) = part.split_once(':').ok_or_else(|| Error::Parse(format!("bad term `{part}`")))?;
            let k = k.trim().parse().map_err(|_| Error::Parse(format!("bad exponent `{k}`")))?;
            let c = c.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient `{c}`")))?;
            terms.push((k, c));
        }
        Ok(Self::from_terms(terms))
    }
}

impl Add<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn add(self, rhs: &HalfLaurent) -> HalfLaurent {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < rhs.terms.len() {
            let a = self.terms.get(i);
            let b = rhs.terms.get(j);
            match (a, b) {
                (Some(&(ka, ca)), Some(&(kb, cb))) if ka == kb => {
                    if ca + cb != 0 {
                        out.push((ka, ca + cb));
                    }
                    i += 1;
                    j += 1;
                }
                (Some(&(ka, ca)), Some(&(kb, _))) if ka < kb => {
                    out.push((ka, ca));
                    i += 1;
                }
                (Some(_), Some(&(kb, cb))) => {
                    out.push((kb, cb));
                    j += 1;
                }
                (Some(&t), None) => {
                    out.push(t);
                    i += 1;
                }
                (None, Some(&t)) => {
                    out.push(t);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        HalfLaurent { terms: out }
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        self.scale(-1)
    }
}

impl Sub<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn sub(self, rhs: &HalfLaurent) -> HalfLaurent {
        self + &(-rhs)
    }
}

impl Mul<&HalfLaurent> for &HalfLaurent {
    type Output = HalfLaurent;
    fn mul(self, rhs: &HalfLaurent) -> HalfLaurent {
        HalfLaurent::from_terms(
            self.terms.iter().flat_map(|&(ka, ca)| rhs.terms.iter().map(move |&(kb, cb)| (ka + kb, ca * cb))),
        )
    }
}

impl AddAssign<&HalfLaurent> for HalfLaurent {
    fn add_assign(&mut self, rhs: &HalfLaurent) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&HalfLaurent> for HalfLaurent {
    fn sub_assign(&mut self, rhs: &HalfLaurent) {
        *self = &*self - rhs;
    }
}

impl fmt::Display for HalfLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, &(k, c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else { "+" };
            if i == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            let var = match (k % 2 == 0, k / 2) {
                (true, 0) => String::new(),
                (true, 1) => "q".to_string(),
                (true, e) => format!("q^{e}"),
                (false, _) => format!("q^({k}/2)"),
            };
            match (a, var.is_empty()) {
                (_, true) => write!(f, "{a}")?,
                (1, false) => write!(f, "{var}")?,
                (_, false) => write!(f, "{a}{var}")?,
            }
        }
        Ok(())
    }
}

/// Dense polynomial helpers used by the inner loops of the KL engines.
pub(crate) mod dense {
    /// `acc += s · q^shift · p`.
    pub fn add_scaled(acc: &mut Vec<i64>, p: &[i64], s: i64, shift: usize) {
        if p.is_empty() || s == 0 {
            return;
        }
        if acc.len() < p.len() + shift {
            acc.resize(p.len() + shift, 0);
        }
        for (i, &c) in p.iter().enumerate() {
            acc[i + shift] += s * c;
        }
    }

    pub fn trim(p: &mut Vec<i64>) {
        while p.last() == Some(&0) {
            p.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn display() {
        let p = HalfLaurent::from_terms([(0, 1), (2, 2), (3, -1), (4, 1)]);
        assert_eq!(p.to_string(), "1 + 2q - q^(3/2) + q^2");
        assert_eq!(HalfLaurent::zero().to_string(), "0");
    }

    #[test]
    fn records() {
        let p = HalfLaurent::from_terms([(-1, 3), (4, 1)]);
        assert_eq!(p.to_record(), "-1:3,4:1");
        assert_eq!(HalfLaurent::from_record("-1:3,4:1").unwrap(), p);
        assert!(HalfLaurent::from_record("x").is_err());
    }

    fn arb() -> impl Strategy<Value = HalfLaurent> {
        prop::collection::vec((-6i64..6, -5i64..5), 0..6).prop_map(HalfLaurent::from_terms)
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb(), b in arb(), c in arb()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!((&a * &b).eval_one(), a.eval_one() * b.eval_one());
            prop_assert_eq!(HalfLaurent::from_record(&a.to_record()).unwrap(), a);
        }
    }
}
