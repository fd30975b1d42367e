//! Graded sl₂ representation calculus.
//!
//! sl₂ carries the Z/2-grading in which h is even and e, f are odd. An
//! irreducible graded representation V_λ^w is determined by its highest
//! weight λ and the parity w of its highest weight vector; parities alternate
//! down the weight ladder because e and f are odd. This module implements
//! duals, tensor products, the trace of h on even e-invariants, and the
//! closed-form quantity m — together with a from-first-principles computation
//! of m that stays in the repository as a permanent cross-check.

use std::cmp::Reverse;
use std::fmt;
use std::ops::Mul;
use std::str::FromStr;

/// Parity of a homogeneous vector, the group Z/2 written multiplicatively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub fn sign(self) -> i64 {
        match self {
            Parity::Plus => 1,
            Parity::Minus => -1,
        }
    }

    /// `self^e` in the multiplicative group {+1, −1}.
    pub fn pow(self, e: u32) -> Self {
        if self == Parity::Minus && e % 2 == 1 {
            Parity::Minus
        } else {
            Parity::Plus
        }
    }
}

impl Mul for Parity {
    type Output = Parity;
    fn mul(self, rhs: Parity) -> Parity {
        if self == rhs {
            Parity::Plus
        } else {
            Parity::Minus
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Plus => "+",
            Parity::Minus => "-",
        })
    }
}

impl FromStr for Parity {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" => Ok(Parity::Plus),
            "-" => Ok(Parity::Minus),
            other => Err(format!("expected `+` or `-`, got `{other}`")),
        }
    }
}

/// Irreducible graded sl₂ representation V_λ^w, keyed by highest weight λ
/// (dimension r = λ + 1) and highest-weight-vector parity w.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GradedIrrep {
    pub lambda: u32,
    pub parity: Parity,
}

impl GradedIrrep {
    pub fn new(lambda: u32, parity: Parity) -> Self {
        Self { lambda, parity }
    }

    /// Builds V from its dimension r = λ + 1; r must be ≥ 1.
    pub fn from_dim(r: u32, parity: Parity) -> Self {
        assert!(r >= 1, "graded irrep dimension must be >= 1");
        Self::new(r - 1, parity)
    }

    pub fn dim(&self) -> u32 {
        self.lambda + 1
    }

    /// Dimension of the even part: the weight-j vector has parity w·(−1)^j.
    pub fn dim_even(&self) -> u32 {
        match self.parity {
            Parity::Plus => self.dim().div_ceil(2),
            Parity::Minus => self.dim() / 2,
        }
    }

    pub fn dim_odd(&self) -> u32 {
        self.dim() - self.dim_even()
    }

    /// (V_λ^w)* = V_λ^{w·(−1)^λ}.
    pub fn dual(&self) -> Self {
        Self::new(self.lambda, self.parity * Parity::Minus.pow(self.lambda))
    }

    /// Tr(h restricted to the even part of the e-invariants) = λ(1+w)/2.
    ///
    /// The e-invariants of V_λ^w form the highest weight line, which has
    /// weight λ and parity w; only w = +1 contributes to the even part.
    pub fn h_trace_on_even_invariants(&self) -> i64 {
        match self.parity {
            Parity::Plus => i64::from(self.lambda),
            Parity::Minus => 0,
        }
    }
}

impl fmt::Display for GradedIrrep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "V({},{})", self.lambda, self.parity)
    }
}

/// Multiset of graded irreducibles with multiplicities, kept in canonical
/// order: decreasing λ, then parity + before −.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedDecomp {
    terms: Vec<(GradedIrrep, u32)>,
}

impl GradedDecomp {
    pub fn new(raw: Vec<(GradedIrrep, u32)>) -> Self {
        let mut terms: Vec<(GradedIrrep, u32)> =
            raw.into_iter().filter(|&(_, m)| m > 0).collect();
        terms.sort_by_key(|&(v, _)| (Reverse(v.lambda), v.parity));
        let mut merged: Vec<(GradedIrrep, u32)> = Vec::with_capacity(terms.len());
        for (v, m) in terms {
            match merged.last_mut() {
                Some((last, lm)) if *last == v => *lm += m,
                _ => merged.push((v, m)),
            }
        }
        Self { terms: merged }
    }

    pub fn terms(&self) -> &[(GradedIrrep, u32)] {
        &self.terms
    }

    pub fn total_dim(&self) -> u64 {
        self.terms
            .iter()
            .map(|&(v, m)| u64::from(v.dim()) * u64::from(m))
            .sum()
    }

    pub fn dim_even(&self) -> u64 {
        self.terms
            .iter()
            .map(|&(v, m)| u64::from(v.dim_even()) * u64::from(m))
            .sum()
    }

    pub fn dim_odd(&self) -> u64 {
        self.total_dim() - self.dim_even()
    }

    /// Sum of h-traces on even e-invariants over all summands.
    pub fn h_trace_on_even_invariants(&self) -> i64 {
        self.terms
            .iter()
            .map(|&(v, m)| i64::from(m) * v.h_trace_on_even_invariants())
            .sum()
    }

    /// Dimension of the even part of the e-invariants: one line per summand,
    /// even exactly when the summand parity is +.
    pub fn even_invariant_dim(&self) -> u64 {
        self.terms
            .iter()
            .filter(|&&(v, _)| v.parity == Parity::Plus)
            .map(|&(_, m)| u64::from(m))
            .sum()
    }
}

impl fmt::Display for GradedDecomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let rendered: Vec<String> = self
            .terms
            .iter()
            .map(|&(v, m)| {
                if m == 1 {
                    v.to_string()
                } else {
                    format!("{v}^{m}")
                }
            })
            .collect();
        f.write_str(&rendered.join(" ⊕ "))
    }
}

/// Graded Clebsch–Gordan decomposition:
/// V_{λ₁}^{w₁} ⊗ V_{λ₂}^{w₂} = ⊕_{i=0}^{min(λ₁,λ₂)} V_{λ₁+λ₂−2i}^{w₁w₂(−1)^i}.
pub fn tensor(a: GradedIrrep, b: GradedIrrep) -> GradedDecomp {
    let lo = a.lambda.min(b.lambda);
    let terms = (0..=lo)
        .map(|i| {
            let v = GradedIrrep::new(
                a.lambda + b.lambda - 2 * i,
                a.parity * b.parity * Parity::Minus.pow(i),
            );
            (v, 1)
        })
        .collect();
    GradedDecomp::new(terms)
}

/// Hom(V₁, V₂) ≅ V₁* ⊗ V₂ as graded representations.
pub fn hom_decomp(a: GradedIrrep, b: GradedIrrep) -> GradedDecomp {
    tensor(a.dual(), b)
}

/// Closed form for
/// m = Tr(h|(Hom(V₁,V₂)^e)₀) + Tr(h|(Hom(V₂,V₁)^e)₀) − r₁r₂
/// in terms of the dimensions r_i and highest-weight parities w_i:
///
/// - r₁ ≢ r₂ (mod 2):  −min(r₁,r₂)
/// - both even:         −min(r₁,r₂)(1 + w₁w₂)
/// - both odd:          −min(r₁,r₂) + w₁w₂(max(r₁,r₂) − 1)
pub fn m_closed_form(r1: u32, w1: Parity, r2: u32, w2: Parity) -> i64 {
    assert!(r1 >= 1 && r2 >= 1, "dimensions must be >= 1");
    let min = i64::from(r1.min(r2));
    let max = i64::from(r1.max(r2));
    let ww = (w1 * w2).sign();
    if r1 % 2 != r2 % 2 {
        -min
    } else if r1.is_multiple_of(2) {
        -min * (1 + ww)
    } else {
        -min + ww * (max - 1)
    }
}

/// The same quantity m computed from first principles: expand both Hom
/// spaces through the dual and tensor formulas and sum the h-traces of the
/// even e-invariants of every summand. Kept permanently as the in-repo
/// oracle for [`m_closed_form`].
pub fn m_first_principles(r1: u32, w1: Parity, r2: u32, w2: Parity) -> i64 {
    let v1 = GradedIrrep::from_dim(r1, w1);
    let v2 = GradedIrrep::from_dim(r2, w2);
    hom_decomp(v1, v2).h_trace_on_even_invariants()
        + hom_decomp(v2, v1).h_trace_on_even_invariants()
        - i64::from(r1) * i64::from(r2)
}
