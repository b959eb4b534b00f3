//! Dense Laurent polynomials `Σ c_t x^t` over a contiguous exponent window.

use std::ops::{AddAssign, Mul};

use num_traits::{One, Zero};

/// Coefficient ring for [`Laurent`].
pub trait Coeff: Clone + Zero + One + AddAssign + Mul<Output = Self> {}

impl<T: Clone + Zero + One + AddAssign + Mul<Output = T>> Coeff for T {}

#[derive(Debug, Clone, PartialEq)]
pub struct Laurent<T> {
    /// Exponent of `coeffs[0]`.
    low: i64,
    coeffs: Vec<T>,
}

impl<T: Coeff> Laurent<T> {
    pub fn zero() -> Self {
        Self {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(0, c)
    }

    pub fn monomial(exp: i64, c: T) -> Self {
        Self {
            low: exp,
            coeffs: vec![c],
        }
    }

    /// Builds from `(exponent, coefficient)` terms; repeated exponents add.
    pub fn from_terms<I: IntoIterator<Item = (i64, T)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn from_dense(low: i64, coeffs: Vec<T>) -> Self {
        Self { low, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Lowest stored exponent (may carry a zero coefficient before [`Laurent::trim`]).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest stored exponent.
    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn into_dense(self) -> (i64, Vec<T>) {
        (self.low, self.coeffs)
    }

    pub fn coeff(&self, exp: i64) -> T {
        let idx = exp - self.low;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            T::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &T)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    fn reserve_range(&mut self, lo: i64, hi: i64) {
        if self.coeffs.is_empty() {
            self.low = lo;
            self.coeffs = vec![T::zero(); (hi - lo + 1) as usize];
            return;
        }
        if lo < self.low {
            let extra = (self.low - lo) as usize;
            let mut grown = vec![T::zero(); extra];
            grown.append(&mut self.coeffs);
            self.coeffs = grown;
            self.low = lo;
        }
        if hi > self.high() {
            let extra = (hi - self.high()) as usize;
            self.coeffs.extend(std::iter::repeat_n(T::zero(), extra));
        }
    }

    pub fn add_term(&mut self, exp: i64, c: T) {
        self.reserve_range(exp, exp);
        self.coeffs[(exp - self.low) as usize] += c;
    }

    /// `self += x^shift · other`.
    pub fn add_shifted(&mut self, other: &Self, shift: i64) {
        if other.coeffs.is_empty() {
            return;
        }
        let lo = other.low + shift;
        self.reserve_range(lo, other.high() + shift);
        let base = (lo - self.low) as usize;
        for (i, c) in other.coeffs.iter().enumerate() {
            self.coeffs[base + i] += c.clone();
        }
    }

    /// `self ← self · (1 + x^w)`, the in-place form of one binary factor.
    pub fn mul_one_plus_monomial(&mut self, w: i64) {
        let copy = self.clone();
        self.add_shifted(&copy, w);
    }

    /// Schoolbook product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero();
        }
        let len = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out = vec![T::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a.clone() * b.clone();
            }
        }
        Self {
            low: self.low + other.low,
            coeffs: out,
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| c.clone() * k.clone()).collect(),
        }
    }

    /// Drops zero coefficients at both ends.
    pub fn trim(mut self) -> Self {
        let first = self.coeffs.iter().position(|c| !c.is_zero());
        match first {
            None => Self::zero(),
            Some(first) => {
                let last = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
                self.coeffs.truncate(last + 1);
                self.coeffs.drain(..first);
                self.low += first as i64;
                self
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_binary_factors() {
        // (x^{-1} + 2 + x)(x^{-3} + 2 + x^3) from the n = 4 figurate.
        let a = Laurent::from_terms([(-1, 1u64), (0, 2), (1, 1)]);
        let b = Laurent::from_terms([(-3, 1u64), (0, 2), (3, 1)]);
        let p = a.mul(&b).trim();
        assert_eq!(p.low(), -4);
        assert_eq!(p.coeffs(), &[1, 2, 1, 2, 4, 2, 1, 2, 1]);
    }

    #[test]
    fn shifted_add_and_trim() {
        let mut p = Laurent::<u64>::zero();
        p.add_shifted(&Laurent::from_terms([(0, 1), (1, 1)]), 5);
        p.add_shifted(&Laurent::from_terms([(0, 1)]), -2);
        assert_eq!(p.low(), -2);
        assert_eq!(p.coeff(5), 1);
        assert_eq!(p.coeff(6), 1);
        assert_eq!(p.coeff(0), 0);
        let mut q = Laurent::from_dense(-3, vec![0u64, 0, 7, 0]);
        q = q.trim();
        assert_eq!((q.low(), q.coeffs()), (-1, &[7u64][..]));
        assert!(Laurent::from_dense(0, vec![0u64, 0]).trim().is_zero());
    }

    #[test]
    fn one_plus_monomial() {
        let mut p = Laurent::constant(1u64);
        for w in [2i64, 0, -2] {
            p.mul_one_plus_monomial(w);
        }
        assert_eq!(p.trim().coeffs(), &[2, 0, 4, 0, 2]);
    }
}
