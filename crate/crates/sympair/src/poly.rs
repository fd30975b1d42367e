//! Univariate polynomials with exact rational coefficients, stored lowest
//! degree first. Supplies the arithmetic needed by minimal polynomials and
//! descendant classification: division, gcd, derivatives, evaluation (scalar
//! and matrix), reversal, and Lagrange interpolation.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};

use crate::matrix::{LinAlgError, RationalMatrix};
use crate::rational::{rint, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoly {
    coeffs: Vec<Rational>, // lowest degree first, no trailing zeros
}

impl RationalPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The monic linear polynomial t − root.
    pub fn linear_from_root(root: &Rational) -> Self {
        Self::from_coeffs(vec![-root.clone(), Rational::one()])
    }

    /// Test helper: integer coefficients, lowest degree first.
    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rint(c)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(Rational::is_one)
    }

    /// Divides through by the leading coefficient. Panics on the zero
    /// polynomial.
    pub fn monic(&self) -> Self {
        let lead = self.leading().expect("monic of zero polynomial");
        let inv = lead.recip();
        Self::from_coeffs(self.coeffs.iter().map(|c| c * &inv).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::from_coeffs((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Self::from_coeffs(out)
    }

    pub fn mul_scalar(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Exact Euclidean division; panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead_inv = divisor.leading().unwrap().recip();
        let mut rem = self.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap() * &lead_inv;
            let shift = rd - dd;
            quot[shift] = factor.clone();
            let mut new_coeffs = rem.coeffs.clone();
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let v = &new_coeffs[shift + i] - &(c * &factor);
                new_coeffs[shift + i] = v;
            }
            rem = Self::from_coeffs(new_coeffs);
        }
        (Self::from_coeffs(quot), rem)
    }

    /// Quotient when the division is known exact; panics on nonzero remainder.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let (q, r) = self.div_rem(divisor);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = x.div_rem(&y).1;
            x = y;
            y = r;
        }
        if x.is_zero() {
            x
        } else {
            x.monic()
        }
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &rint(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * at) + c;
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &RationalMatrix) -> Result<RationalMatrix, LinAlgError> {
        if !m.is_square() {
            return Err(LinAlgError::Dimension("polynomial of non-square matrix".into()));
        }
        let size = m.rows();
        let mut acc = RationalMatrix::zeros(size, size);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m)?.add(&RationalMatrix::scalar(size, c.clone()))?;
        }
        Ok(acc)
    }

    /// The reversal t^deg · p(1/t), normalized monic. For polynomials with
    /// nonzero constant term this maps the root multiset to its inverses.
    pub fn reversal(&self) -> Self {
        let mut rev: Vec<Rational> = self.coeffs.iter().rev().cloned().collect();
        while rev.last().is_some_and(Rational::is_zero) {
            rev.pop();
        }
        let p = Self::from_coeffs(rev);
        if p.is_zero() {
            p
        } else {
            p.monic()
        }
    }

    /// True iff p is squarefree over Q, i.e. gcd(p, p′) is constant.
    pub fn is_squarefree(&self) -> bool {
        Self::gcd(self, &self.derivative()).degree() == Some(0)
    }

    /// Lagrange interpolation through distinct points.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Self {
        let mut acc = Self::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            let mut term = Self::constant(yi.clone());
            for (j, (xj, _)) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                let denom = xi - xj;
                let factor = Self::from_coeffs(vec![-xj / &denom, denom.recip()]);
                term = term.mul(&factor);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Integer coefficients after clearing denominators and dividing out the
    /// content; the leading coefficient is made positive.
    pub fn primitive_integer_coeffs(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        if ints.last().unwrap().is_negative() {
            content = -content;
        }
        for v in &mut ints {
            *v /= &content;
        }
        ints
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    /// Coefficients lowest degree first, comma-separated, each as `p/q` or
    /// an integer. This is the line format of factor files.
    pub fn to_coeff_line(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        self.coeffs
            .iter()
            .map(Rational::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn parse_coeff_line(line: &str) -> Result<Self, String> {
        let coeffs: Result<Vec<Rational>, String> = line
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<Rational>()
                    .map_err(|_| format!("bad coefficient `{t}`"))
            })
            .collect();
        Ok(Self::from_coeffs(coeffs?))
    }

    /// Deterministic ordering used for factor lists: by degree, then by the
    /// coefficient sequence from the constant term up.
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        match (self.degree(), other.degree()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) if a != b => a.cmp(&b),
            (Some(deg), Some(_)) => {
                for i in 0..=deg {
                    let c = self.coeff(i).cmp(&other.coeff(i));
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
                first = false;
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
