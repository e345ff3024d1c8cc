//! Truncated power series and the generating-series Koszulity test.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::magma::factorial;
use crate::rational::{format_abs, Rational};

use super::koszul::koszul_dual;
use super::tower::operad_dims;
use super::RelationSet;

/// Coefficients of `x^0 .. x^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty(), "a power series keeps at least the constant term");
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![Rational::zero(); order + 1] }
    }

    /// `x` truncated at `order`.
    pub fn x(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Rational::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Rational {
        self.coeffs.get(n).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn truncate(&self, order: usize) -> Self {
        PowerSeries { coeffs: (0..=order).map(|n| self.coeff(n)).collect() }
    }

    pub fn add(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        PowerSeries { coeffs: (0..=n).map(|i| self.coeff(i) + other.coeff(i)).collect() }
    }

    pub fn sub(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        PowerSeries { coeffs: (0..=n).map(|i| self.coeff(i) - other.coeff(i)).collect() }
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                coeffs[i + j] += a * b;
            }
        }
        PowerSeries { coeffs }
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let abs = format_abs(c);
            match n {
                0 => write!(f, "{abs}")?,
                _ => {
                    if !c.abs().is_one() {
                        write!(f, "{abs} ")?;
                    }
                    if n == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{n}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Skew-exponential series `sum_{n=1..N} (-1)^n d_n x^n / n!`.
pub fn gen_series(dims: &[usize], order: usize) -> Result<PowerSeries> {
    if dims.len() < order {
        return Err(Error::InsufficientDims { needed: order, got: dims.len() });
    }
    let mut s = PowerSeries::zero(order);
    for n in 1..=order {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        s.coeffs[n] = Rational::new(BigInt::from(sign) * BigInt::from(dims[n - 1]), BigInt::from(factorial(n)));
    }
    Ok(s)
}

/// `f(g(x))` truncated at the smaller order.
pub fn compose_series(f: &PowerSeries, g: &PowerSeries) -> Result<PowerSeries> {
    if !g.coeff(0).is_zero() {
        return Err(Error::NonzeroConstantTerm);
    }
    let n = f.order().min(g.order());
    let g = g.truncate(n);
    let mut out = PowerSeries::zero(n);
    let mut power = PowerSeries::zero(n);
    power.coeffs[0] = Rational::one();
    for k in 0..=n {
        let c = f.coeff(k);
        if !c.is_zero() {
            for (o, p) in out.coeffs.iter_mut().zip(&power.coeffs) {
                *o += &c * p;
            }
        }
        power = power.mul(&g);
    }
    Ok(out)
}

/// Everything computed by [`koszulity_residual`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoszulityReport {
    pub dual: RelationSet,
    pub dims: Vec<usize>,
    pub dual_dims: Vec<usize>,
    pub f: PowerSeries,
    pub f_dual: PowerSeries,
    pub composition: PowerSeries,
    /// `f(f^!(x)) - x`; nonzero means `rels` is not Koszul.
    pub residual: PowerSeries,
}

impl KoszulityReport {
    pub fn passes(&self) -> bool {
        self.residual.is_zero()
    }
}

pub fn koszulity_residual(rels: &RelationSet, order: usize) -> Result<KoszulityReport> {
    if order < 2 {
        return Err(Error::InsufficientDims { needed: 2, got: order });
    }
    let dual = koszul_dual(rels)?;
    let dims = operad_dims(rels, order)?;
    let dual_dims = operad_dims(&dual, order)?;
    let f = gen_series(&dims, order)?;
    let f_dual = gen_series(&dual_dims, order)?;
    let composition = compose_series(&f, &f_dual)?;
    let residual = composition.sub(&PowerSeries::x(order));
    Ok(KoszulityReport { dual, dims, dual_dims, f, f_dual, composition, residual })
}
