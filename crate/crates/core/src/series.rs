//! Truncated power series in `t` with exact polynomial coefficients in `x`, `y`,
//! and the solver for
//!
//! ```text
//! F(x,y) = 1 + x·S + x/(y−1) · S · (F(x,y) − F(x,1)),
//! S = t·y·F(1,y) / (1 − t·F(1,1)),
//! ```
//!
//! where `[tⁿ xᵃ yᵇ] F` counts trees with `n` edges, `root = a`, `rmod = b`.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::SeriesError;

/// A polynomial in `x`, `y`: `coeffs[a][b]` is the coefficient of `xᵃyᵇ`.
/// Trailing zeros are trimmed so equality is structural.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly2 {
    coeffs: Vec<Vec<BigInt>>,
}

impl Poly2 {
    pub fn zero() -> Poly2 {
        Poly2::default()
    }

    pub fn one() -> Poly2 {
        Poly2::monomial(0, 0, BigInt::one())
    }

    pub fn monomial(a: usize, b: usize, c: BigInt) -> Poly2 {
        let mut p = Poly2::zero();
        p.add_term(a, b, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (usize, usize, i64)>>(terms: I) -> Poly2 {
        let mut p = Poly2::zero();
        for (a, b, c) in terms {
            p.add_term(a, b, BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, a: usize, b: usize) -> BigInt {
        self.coeffs.get(a).and_then(|row| row.get(b)).cloned().unwrap_or_default()
    }

    /// Nonzero terms `(a, b, c)` in `(a, b)` order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(a, row)| row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(b, c)| (a, b, c)))
    }

    /// Degree in `x`, or `None` for the zero polynomial.
    pub fn deg_x(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.coeffs.iter().map(|row| row.len()).max().and_then(|l| l.checked_sub(1))
    }

    fn add_term(&mut self, a: usize, b: usize, c: BigInt) {
        if c.is_zero() {
            return;
        }
        if self.coeffs.len() <= a {
            self.coeffs.resize(a + 1, Vec::new());
        }
        let row = &mut self.coeffs[a];
        if row.len() <= b {
            row.resize(b + 1, BigInt::zero());
        }
        row[b] += c;
        self.trim();
    }

    fn trim(&mut self) {
        for row in &mut self.coeffs {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.coeffs.last().is_some_and(|row| row.is_empty()) {
            self.coeffs.pop();
        }
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (a, b, c) in other.terms() {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (a, b, c) in other.terms() {
            out.add_term(a, b, -c);
        }
        out
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let (Some(dx1), Some(dx2)) = (self.deg_x(), other.deg_x()) else {
            return Poly2::zero();
        };
        let dy = self.deg_y().unwrap_or(0) + other.deg_y().unwrap_or(0);
        let mut coeffs = vec![vec![BigInt::zero(); dy + 1]; dx1 + dx2 + 1];
        for (a1, b1, c1) in self.terms() {
            for (a2, b2, c2) in other.terms() {
                coeffs[a1 + a2][b1 + b2] += c1 * c2;
            }
        }
        let mut p = Poly2 { coeffs };
        p.trim();
        p
    }

    /// Multiplies by `xᵃyᵇ`.
    pub fn shift(&self, a: usize, b: usize) -> Poly2 {
        let mut out = Poly2::zero();
        for (x, y, c) in self.terms() {
            out.add_term(x + a, y + b, c.clone());
        }
        out
    }

    /// `p(1, y)`.
    pub fn at_x1(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (_, b, c) in self.terms() {
            out.add_term(0, b, c.clone());
        }
        out
    }

    /// `p(x, 1)`.
    pub fn at_y1(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (a, _, c) in self.terms() {
            out.add_term(a, 0, c.clone());
        }
        out
    }

    /// `q` with `q·(y − 1) = p`, by synthetic division in `y` per power of `x`.
    pub fn div_exact_y_minus_1(&self) -> Result<Poly2, SeriesError> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for row in &self.coeffs {
            // p_b = q_{b-1} - q_b, so from the top: q_{b-1} = p_b + q_b.
            let mut q = vec![BigInt::zero(); row.len().saturating_sub(1)];
            let mut carry = BigInt::zero();
            for b in (1..row.len()).rev() {
                carry += &row[b];
                q[b - 1] = carry.clone();
            }
            if row.first().map_or(BigInt::zero(), |c| c.clone()) + carry != BigInt::zero() {
                return Err(SeriesError::NonzeroRemainder);
            }
            coeffs.push(q);
        }
        let mut p = Poly2 { coeffs };
        p.trim();
        Ok(p)
    }
}

/// A power series in `t` truncated after `t^order`, with [`Poly2`] coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series3 {
    coeffs: Vec<Poly2>,
}

impl Series3 {
    pub fn zero(order: usize) -> Series3 {
        Series3 { coeffs: vec![Poly2::zero(); order + 1] }
    }

    pub fn constant(order: usize, p: Poly2) -> Series3 {
        let mut s = Series3::zero(order);
        s.coeffs[0] = p;
        s
    }

    pub fn from_coeffs(coeffs: Vec<Poly2>) -> Series3 {
        assert!(!coeffs.is_empty(), "a series has at least the t^0 coefficient");
        Series3 { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `[tⁿ]`; zero beyond the order.
    pub fn coeff(&self, n: usize) -> Poly2 {
        self.coeffs.get(n).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[Poly2] {
        &self.coeffs
    }

    /// Nonzero `(n, a, b, c)` in lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, usize, &BigInt)> {
        self.coeffs.iter().enumerate().flat_map(|(n, p)| p.terms().map(move |(a, b, c)| (n, a, b, c)))
    }

    fn check(&self, other: &Series3) -> Result<(), SeriesError> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(SeriesError::OrderMismatch { left: self.order(), right: other.order() })
        }
    }

    pub fn add(&self, other: &Series3) -> Result<Series3, SeriesError> {
        self.check(other)?;
        Ok(Series3 { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(p, q)| p.add(q)).collect() })
    }

    pub fn sub(&self, other: &Series3) -> Result<Series3, SeriesError> {
        self.check(other)?;
        Ok(Series3 { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(p, q)| p.sub(q)).collect() })
    }

    pub fn mul(&self, other: &Series3) -> Result<Series3, SeriesError> {
        self.check(other)?;
        let order = self.order();
        let mut out = Series3::zero(order);
        for (i, p) in self.coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            for (j, q) in other.coeffs[..=order - i].iter().enumerate() {
                if !q.is_zero() {
                    out.coeffs[i + j] = out.coeffs[i + j].add(&p.mul(q));
                }
            }
        }
        Ok(out)
    }

    /// Drops `t^k` for `k > order`.
    pub fn truncate(&self, order: usize) -> Series3 {
        let mut coeffs: Vec<Poly2> = self.coeffs.iter().take(order + 1).cloned().collect();
        coeffs.resize(order + 1, Poly2::zero());
        Series3 { coeffs }
    }

    fn map(&self, f: impl Fn(&Poly2) -> Poly2) -> Series3 {
        Series3 { coeffs: self.coeffs.iter().map(f).collect() }
    }

    /// Multiplies by `t·xᵃyᵇ`, truncating.
    fn times_t(&self, a: usize, b: usize) -> Series3 {
        let mut coeffs = vec![Poly2::zero()];
        coeffs.extend(self.coeffs[..self.order()].iter().map(|p| p.shift(a, b)));
        Series3 { coeffs }
    }

    pub fn substitute_x1(&self) -> Series3 {
        self.map(Poly2::at_x1)
    }

    pub fn substitute_y1(&self) -> Series3 {
        self.map(Poly2::at_y1)
    }

    pub fn div_exact_y_minus_1(&self) -> Result<Series3, SeriesError> {
        Ok(Series3 { coeffs: self.coeffs.iter().map(Poly2::div_exact_y_minus_1).collect::<Result<_, _>>()? })
    }

    /// `1 / (1 − t·c(t))` for a series `c` in `t` alone, by
    /// `h₀ = 1`, `hₙ = Σ_{j<n} cⱼ·h_{n−1−j}`.
    fn geometric_t(&self) -> Series3 {
        let order = self.order();
        let c: Vec<Poly2> = self.coeffs.clone();
        let mut h: Vec<Poly2> = vec![Poly2::one()];
        for n in 1..=order {
            let mut acc = Poly2::zero();
            for j in 0..n {
                acc = acc.add(&c[j].mul(&h[n - 1 - j]));
            }
            h.push(acc);
        }
        Series3 { coeffs: h }
    }

    /// `[tⁿ]F(x,y) == [tⁿ]F(y,x)` for every `n`.
    pub fn is_symmetric(&self) -> bool {
        self.terms().all(|(n, a, b, c)| self.coeffs[n].coeff(b, a) == *c)
    }
}

/// One application of the right-hand side of the functional equation.
pub fn apply_equation(f: &Series3) -> Result<Series3, SeriesError> {
    let order = f.order();
    let f11 = f.substitute_x1().substitute_y1();
    let h = f11.geometric_t();
    // S = t·y·F(1,y)·H
    let s = f.substitute_x1().mul(&h)?.times_t(0, 1);
    let diff = f.sub(&f.substitute_y1())?.div_exact_y_minus_1()?;
    let tail = s.mul(&diff)?;
    let one = Series3::constant(order, Poly2::one());
    one.add(&s.add(&tail)?.map(|p| p.shift(1, 0)))
}

/// Solves the functional equation to order `t^order` by iterating from `F = 1`.
pub fn solve_f(order: usize) -> Result<Series3, SeriesError> {
    let mut f = Series3::constant(order, Poly2::one());
    let rounds = order + 2;
    for _ in 0..rounds {
        let next = apply_equation(&f)?;
        if next == f {
            return Ok(f);
        }
        f = next;
    }
    Err(SeriesError::NotStabilized { rounds })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_examples() {
        let p = Poly2::from_terms([(0, 2, 1), (0, 0, -1)]);
        assert_eq!(p.div_exact_y_minus_1().unwrap(), Poly2::from_terms([(0, 1, 1), (0, 0, 1)]));
        assert_eq!(Poly2::zero().div_exact_y_minus_1().unwrap(), Poly2::zero());
        let f2 = Poly2::from_terms([(1, 1, 1), (1, 2, 1), (2, 1, 1)]);
        let q = f2.sub(&f2.at_y1()).div_exact_y_minus_1().unwrap();
        assert_eq!(q, Poly2::from_terms([(1, 1, 1), (1, 0, 2), (2, 0, 1)]));
        assert_eq!(Poly2::from_terms([(0, 1, 1)]).div_exact_y_minus_1(), Err(SeriesError::NonzeroRemainder));
    }

    #[test]
    fn arithmetic_basics() {
        let f = solve_f(5).unwrap();
        let one = Series3::constant(5, Poly2::one());
        assert_eq!(one.mul(&f).unwrap(), f);
        let cut = f.truncate(2);
        assert_eq!(cut.order(), 2);
        assert_eq!(cut.coeff(3), Poly2::zero());
        assert_eq!(cut.coeff(2), f.coeff(2));
        assert_eq!(f.add(&Series3::zero(4)), Err(SeriesError::OrderMismatch { left: 5, right: 4 }));
    }

    #[test]
    fn low_order_coefficients() {
        let f = solve_f(6).unwrap();
        assert_eq!(f.coeff(0), Poly2::one());
        assert_eq!(f.coeff(1), Poly2::from_terms([(1, 1, 1)]));
        assert_eq!(f.coeff(2), Poly2::from_terms([(1, 1, 1), (1, 2, 1), (2, 1, 1)]));
        let counts: Vec<BigInt> = f.substitute_x1().substitute_y1().coeffs().iter().map(|p| p.coeff(0, 0)).collect();
        assert_eq!(counts, [1, 1, 3, 12, 56, 288, 1584].map(BigInt::from));
        assert!(f.is_symmetric());
        assert_eq!(apply_equation(&f).unwrap(), f);
        assert!(f.terms().all(|(_, _, _, c)| *c > BigInt::zero()));
    }
}
