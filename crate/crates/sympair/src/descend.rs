//! Descendant classification for σ-fixed semisimple elements.
//!
//! A σ-fixed x satisfies εxεx = Id, so ε permutes the primary components
//! ker p_i(x) of the (squarefree) minimal polynomial, sending the component
//! of p to the component of the reversal p*. Each ε-orbit of components
//! contributes one block to the descendant pair:
//!
//! - two swapped components → a diagonal pair over E = Q[t]/(p);
//! - an ε-stable component with x ≠ x⁻¹ → a Galois pair (E over its index-2
//!   subfield L fixed by t ↦ t⁻¹);
//! - an ε-stable ±1 eigencomponent → a linear pair split by the ε eigenspaces.

use num::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::matrix::{EpsilonForm, LinAlgError, RationalMatrix};
use crate::poly::RationalPoly;
use crate::rational::Rational;

/// Kronecker search bound: factors of larger degree are never certified and
/// are handed back for user-supplied factorization instead.
pub const DEFAULT_KRONECKER_DEGREE: usize = 4;

/// Divisor enumeration gives up beyond this magnitude; the factorization is
/// then reported as incomplete rather than silently miscertified.
const DIVISOR_SEARCH_LIMIT: u128 = 1_000_000_000_000;

/// Candidate-tuple cap for one Kronecker interpolation round.
const KRONECKER_CANDIDATE_LIMIT: u64 = 4_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassifyError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("element is not fixed by the antiinvolution (εxεx ≠ Id)")]
    NotSigmaFixed,
    #[error("element is not semisimple (minimal polynomial is not squarefree)")]
    NotSemisimple,
    #[error("factor is not monic of positive degree: {0}")]
    InvalidFactor(RationalPoly),
    #[error("product of the supplied factors differs from the minimal polynomial")]
    FactorProductMismatch,
    #[error("factors are not pairwise coprime")]
    FactorsNotCoprime,
    #[error("supplied factors do not annihilate the element")]
    FactorsDontAnnihilate,
    #[error("factor {0} splits off {1}; supply its irreducible factors instead")]
    FactorReducible(RationalPoly, RationalPoly),
    #[error("factor {0} has trivial kernel; it does not divide the minimal polynomial")]
    TrivialComponent(RationalPoly),
    #[error("factorization incomplete; residual {residual}")]
    IncompleteFactorization { residual: RationalPoly },
    #[error("ε does not permute the primary components; factors are not a valid irreducible factorization")]
    PairingFailed,
    #[error("inconsistent classification state: {0}")]
    UnexpectedStructure(String),
}

/// Monic least-degree annihilating polynomial, by Krylov iteration per basis
/// vector with a running lcm.
pub fn minimal_polynomial(x: &RationalMatrix) -> Result<RationalPoly, LinAlgError> {
    if !x.is_square() {
        return Err(LinAlgError::Dimension(
            "minimal polynomial of non-square matrix".into(),
        ));
    }
    let size = x.rows();
    let mut min = RationalPoly::one();
    let mut evaluated = min.eval_matrix(x)?;
    for i in 0..size {
        if evaluated.column(i).is_zero_matrix() {
            continue; // current candidate already kills this basis vector
        }
        let mut e_i = RationalMatrix::zeros(size, 1);
        e_i[(i, 0)] = Rational::one();
        let local = local_min_poly(x, &e_i);
        let g = RationalPoly::gcd(&min, &local);
        min = min.mul(&local).div_exact(&g).monic();
        evaluated = min.eval_matrix(x)?;
        if evaluated.is_zero_matrix() {
            break;
        }
    }
    Ok(min)
}

/// Least monic polynomial with p(x)·v = 0: grow the Krylov sequence
/// v, xv, x²v, … until the first linear dependence.
fn local_min_poly(x: &RationalMatrix, v: &RationalMatrix) -> RationalPoly {
    let mut cols = vec![v.clone()];
    loop {
        let stacked = RationalMatrix::from_columns(&cols).expect("column stack");
        let kernel = stacked.nullspace();
        if let Some(u) = kernel.first() {
            // First dependence: the kernel vector has a 1 in its last slot,
            // so its coordinates are exactly the monic coefficients.
            let coeffs = (0..cols.len()).map(|j| u[(j, 0)].clone()).collect();
            return RationalPoly::from_coeffs(coeffs).monic();
        }
        cols.push(x.mul(cols.last().unwrap()).expect("square times column"));
    }
}

/// Semisimplicity over Q: the minimal polynomial is squarefree.
pub fn is_semisimple(x: &RationalMatrix) -> Result<bool, LinAlgError> {
    Ok(minimal_polynomial(x)?.is_squarefree())
}

/// True iff εxεx = Id. Errors on singular x (σ is only defined on GL).
pub fn check_sigma_fixed(x: &RationalMatrix, eps: &EpsilonForm) -> Result<bool, LinAlgError> {
    let prod = eps.theta(x)?.mul(x)?;
    if prod.is_identity() {
        return Ok(true);
    }
    if x.rank() < x.rows() {
        return Err(LinAlgError::Singular);
    }
    Ok(false)
}

/// Admissibility centrality condition: s(g) is a scalar matrix.
pub fn has_central_symmetrization(
    g: &RationalMatrix,
    eps: &EpsilonForm,
) -> Result<bool, LinAlgError> {
    Ok(eps.symmetrize(g)?.is_scalar())
}

/// Result of the built-in factorization of a squarefree monic polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Factorization {
    /// Monic irreducible factors in canonical order.
    Complete(Vec<RationalPoly>),
    /// Every certified factor has degree ≤ the Kronecker bound; the residual
    /// is of larger degree and must be factored by the caller.
    NeedsUserFactorization {
        factors: Vec<RationalPoly>,
        residual: RationalPoly,
    },
}

struct SearchGaveUp;

fn divisors(v: &num::BigInt) -> Result<Vec<u128>, SearchGaveUp> {
    let m = v.abs().to_u128().ok_or(SearchGaveUp)?;
    if m == 0 || m > DIVISOR_SEARCH_LIMIT {
        return Err(SearchGaveUp);
    }
    let mut divs = Vec::new();
    let mut i = 1u128;
    while i * i <= m {
        if m % i == 0 {
            divs.push(i);
            if i != m / i {
                divs.push(m / i);
            }
        }
        i += 1;
    }
    divs.sort_unstable();
    Ok(divs)
}

fn eval_int_poly(coeffs: &[num::BigInt], at: i64) -> num::BigInt {
    let at = num::BigInt::from(at);
    let mut acc = num::BigInt::zero();
    for c in coeffs.iter().rev() {
        acc = acc * &at + c;
    }
    acc
}

/// Searches for a rational root via the rational root theorem on the
/// primitive integer form.
fn find_rational_root(p: &RationalPoly) -> Result<Option<Rational>, SearchGaveUp> {
    if p.degree().unwrap_or(0) < 1 {
        return Ok(None);
    }
    if p.coeff(0).is_zero() {
        return Ok(Some(Rational::zero()));
    }
    let ints = p.primitive_integer_coeffs();
    let nums = divisors(ints.first().unwrap())?;
    let dens = divisors(ints.last().unwrap())?;
    for num in &nums {
        for den in &dens {
            if num::integer::gcd(*num, *den) != 1 {
                continue;
            }
            for sign in [1i64, -1] {
                let cand = Rational::new(
                    num::BigInt::from(*num) * sign,
                    num::BigInt::from(*den),
                );
                if p.eval(&cand).is_zero() {
                    return Ok(Some(cand));
                }
            }
        }
    }
    Ok(None)
}

/// Kronecker interpolation search for a degree-d factor of p: any integer
/// factor must take divisor values at the sample points, so interpolate every
/// divisor tuple and trial-divide.
fn kronecker_factor(p: &RationalPoly, d: usize) -> Result<Option<RationalPoly>, SearchGaveUp> {
    let ints = p.primitive_integer_coeffs();
    let points: Vec<i64> = sample_points(d + 1);
    let mut divisor_lists: Vec<Vec<i128>> = Vec::with_capacity(points.len());
    let mut combos: u64 = 1;
    for (idx, &a) in points.iter().enumerate() {
        let value = eval_int_poly(&ints, a);
        if value.is_zero() {
            // A zero value would mean a rational root survived extraction.
            return Err(SearchGaveUp);
        }
        let divs = divisors(&value)?;
        let signed: Vec<i128> = if idx == 0 {
            // Sign symmetry g ↔ −g: fix the first value positive.
            divs.iter().map(|&v| v as i128).collect()
        } else {
            divs.iter()
                .flat_map(|&v| [v as i128, -(v as i128)])
                .collect()
        };
        combos = combos.saturating_mul(signed.len() as u64);
        divisor_lists.push(signed);
    }
    if combos > KRONECKER_CANDIDATE_LIMIT {
        return Err(SearchGaveUp);
    }

    let mut chosen: Vec<(Rational, Rational)> = Vec::with_capacity(points.len());
    fn search(
        p: &RationalPoly,
        d: usize,
        points: &[i64],
        lists: &[Vec<i128>],
        chosen: &mut Vec<(Rational, Rational)>,
    ) -> Option<RationalPoly> {
        let idx = chosen.len();
        if idx == points.len() {
            let g = RationalPoly::interpolate(chosen);
            if g.degree() == Some(d) && g.has_integer_coeffs() && g.divides(p) {
                return Some(g.monic());
            }
            return None;
        }
        for &y in &lists[idx] {
            chosen.push((
                Rational::from_integer(points[idx].into()),
                Rational::from_integer(y.into()),
            ));
            if let Some(g) = search(p, d, points, lists, chosen) {
                return Some(g);
            }
            chosen.pop();
        }
        None
    }
    Ok(search(p, d, &points, &divisor_lists, &mut chosen))
}

fn sample_points(count: usize) -> Vec<i64> {
    let mut pts = vec![0i64];
    let mut v = 1i64;
    while pts.len() < count {
        pts.push(v);
        if pts.len() < count {
            pts.push(-v);
        }
        v += 1;
    }
    pts
}

fn sorted(mut factors: Vec<RationalPoly>) -> Vec<RationalPoly> {
    factors.sort_by(|a, b| a.cmp_canonical(b));
    factors
}

/// Factors a monic squarefree polynomial: rational-root extraction, then a
/// Kronecker search for factors of each degree up to `max_kronecker_degree`.
/// A leftover residual of degree ≤ the bound is certified irreducible (all
/// smaller factor degrees were exhausted); a larger residual is returned via
/// [`Factorization::NeedsUserFactorization`].
pub fn factor_min_poly(p: &RationalPoly, max_kronecker_degree: usize) -> Factorization {
    assert!(p.is_monic(), "factor_min_poly expects a monic polynomial");
    let mut residual = p.clone();
    let mut found: Vec<RationalPoly> = Vec::new();

    let give_up = |found: Vec<RationalPoly>, residual: RationalPoly| {
        Factorization::NeedsUserFactorization {
            factors: sorted(found),
            residual,
        }
    };

    while residual.degree().unwrap_or(0) >= 1 {
        match find_rational_root(&residual) {
            Err(SearchGaveUp) => return give_up(found, residual),
            Ok(None) => break,
            Ok(Some(root)) => {
                let lin = RationalPoly::linear_from_root(&root);
                residual = residual.div_exact(&lin);
                found.push(lin);
            }
        }
    }

    let mut d = 2;
    while d <= max_kronecker_degree && residual.degree().is_some_and(|deg| deg >= 2 * d) {
        match kronecker_factor(&residual, d) {
            Err(SearchGaveUp) => return give_up(found, residual),
            Ok(Some(g)) => {
                residual = residual.div_exact(&g);
                found.push(g);
            }
            Ok(None) => d += 1,
        }
    }

    match residual.degree().unwrap_or(0) {
        0 => Factorization::Complete(sorted(found)),
        deg if deg <= max_kronecker_degree => {
            found.push(residual);
            Factorization::Complete(sorted(found))
        }
        _ => give_up(found, residual),
    }
}

/// Best-effort irreducibility probe: no rational root and no Kronecker factor
/// of degree ≤ min(bound, deg/2). Returns the split-off factor on failure.
fn probe_reducible(p: &RationalPoly, bound: usize) -> Option<RationalPoly> {
    let deg = p.degree().unwrap_or(0);
    if deg < 2 {
        return None;
    }
    if let Ok(Some(root)) = find_rational_root(p) {
        return Some(RationalPoly::linear_from_root(&root));
    }
    for d in 2..=bound.min(deg / 2) {
        if let Ok(Some(g)) = kronecker_factor(p, d) {
            return Some(g);
        }
    }
    None
}

/// Validates a user-supplied (or built-in) irreducible factorization against
/// the minimal polynomial: monic factors of positive degree, exact product,
/// pairwise coprimality, and a per-factor irreducibility probe up to the
/// Kronecker bound.
pub fn certify_factors(
    min_poly: &RationalPoly,
    factors: &[RationalPoly],
    kronecker_bound: usize,
) -> Result<(), ClassifyError> {
    if factors.is_empty() {
        return Err(ClassifyError::FactorProductMismatch);
    }
    for f in factors {
        if f.degree().unwrap_or(0) < 1 || !f.is_monic() {
            return Err(ClassifyError::InvalidFactor(f.clone()));
        }
    }
    let product = factors
        .iter()
        .fold(RationalPoly::one(), |acc, f| acc.mul(f));
    if &product != min_poly {
        return Err(ClassifyError::FactorProductMismatch);
    }
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i + 1..] {
            if RationalPoly::gcd(a, b).degree() != Some(0) {
                return Err(ClassifyError::FactorsNotCoprime);
            }
        }
    }
    for f in factors {
        if let Some(g) = probe_reducible(f, kronecker_bound) {
            return Err(ClassifyError::FactorReducible(f.clone(), g));
        }
    }
    Ok(())
}

/// Kernel decomposition V = ⊕ ker p_i(x) for pairwise-coprime annihilating
/// factors; returns each factor with an exact basis of its component.
pub fn primary_decomposition(
    x: &RationalMatrix,
    factors: &[RationalPoly],
) -> Result<Vec<(RationalPoly, RationalMatrix)>, ClassifyError> {
    if !x.is_square() {
        return Err(LinAlgError::Dimension("primary decomposition of non-square matrix".into()).into());
    }
    for (i, a) in factors.iter().enumerate() {
        for b in &factors[i + 1..] {
            if RationalPoly::gcd(a, b).degree() != Some(0) {
                return Err(ClassifyError::FactorsNotCoprime);
            }
        }
    }
    let product = factors
        .iter()
        .fold(RationalPoly::one(), |acc, f| acc.mul(f));
    if !product.eval_matrix(x)?.is_zero_matrix() {
        return Err(ClassifyError::FactorsDontAnnihilate);
    }
    let mut components = Vec::with_capacity(factors.len());
    let mut total_dim = 0usize;
    for p in factors {
        let kernel = p.eval_matrix(x)?.nullspace();
        if kernel.is_empty() {
            return Err(ClassifyError::TrivialComponent(p.clone()));
        }
        total_dim += kernel.len();
        components.push((p.clone(), RationalMatrix::from_columns(&kernel)?));
    }
    if total_dim != x.rows() {
        return Err(ClassifyError::UnexpectedStructure(format!(
            "components span dimension {total_dim} of {}",
            x.rows()
        )));
    }
    Ok(components)
}

/// One block of a descendant symmetric pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DescendantPair {
    /// ε swaps two components with minimal polynomial of degree `ext_degree`:
    /// the block is ((GL_m)_{E/F} × (GL_m)_{E/F}, Δ(GL_m)_{E/F}) with
    /// E = Q[t]/(p) and m = `size`.
    Diagonal { ext_degree: usize, size: usize },
    /// ε-stable component with x ≠ x⁻¹: ((GL_m)_{E/F}, (GL_m)_{L/F}) where L
    /// is the fixed field of t ↦ t⁻¹, of degree `l_degree` = `e_degree`/2
    /// over F and generated by t + t⁻¹ with minimal polynomial `l_min_poly`.
    Galois {
        e_degree: usize,
        l_degree: usize,
        size: usize,
        l_min_poly: RationalPoly,
    },
    /// ε-stable ±1 eigencomponent: (GL_{m+l}, GL_m × GL_l) with m, l the
    /// dimensions of the ε eigenspaces on the component.
    Linear { plus_dim: usize, minus_dim: usize },
}

impl DescendantPair {
    /// Total F-dimension of the block inside the ambient space.
    pub fn f_dimension(&self) -> usize {
        match self {
            DescendantPair::Diagonal { ext_degree, size } => 2 * ext_degree * size,
            DescendantPair::Galois { e_degree, size, .. } => e_degree * size,
            DescendantPair::Linear { plus_dim, minus_dim } => plus_dim + minus_dim,
        }
    }
}

/// Classifies the descendant of a σ-fixed semisimple element, given a
/// certified irreducible factorization of its minimal polynomial.
pub fn classify_descendant(
    x: &RationalMatrix,
    eps: &EpsilonForm,
    factors: &[RationalPoly],
) -> Result<Vec<DescendantPair>, ClassifyError> {
    if !check_sigma_fixed(x, eps)? {
        return Err(ClassifyError::NotSigmaFixed);
    }
    let min_poly = minimal_polynomial(x)?;
    if !min_poly.is_squarefree() {
        return Err(ClassifyError::NotSemisimple);
    }
    certify_factors(&min_poly, factors, DEFAULT_KRONECKER_DEGREE)?;
    let components = primary_decomposition(x, factors)?;

    let e = eps.matrix();
    let evaluated: Vec<RationalMatrix> = factors
        .iter()
        .map(|p| p.eval_matrix(x))
        .collect::<Result<_, _>>()?;

    // partner[i] = j with ε·V_i = V_j; membership is exact annihilation.
    let mut partner = Vec::with_capacity(components.len());
    for (_, basis) in &components {
        let image = e.mul(basis)?;
        let j = (0..components.len()).find(|&j| {
            components[j].1.cols() == basis.cols()
                && evaluated[j]
                    .mul(&image)
                    .map(|z| z.is_zero_matrix())
                    .unwrap_or(false)
        });
        partner.push(j.ok_or(ClassifyError::PairingFailed)?);
    }
    for (i, &j) in partner.iter().enumerate() {
        if partner[j] != i {
            return Err(ClassifyError::PairingFailed);
        }
    }

    let mut visited = vec![false; components.len()];
    let mut out = Vec::new();
    for (i, (p, basis)) in components.iter().enumerate() {
        if visited[i] {
            continue;
        }
        visited[i] = true;
        let deg = p.degree().expect("certified factor");
        let j = partner[i];
        if j != i {
            visited[j] = true;
            out.push(DescendantPair::Diagonal {
                ext_degree: deg,
                size: basis.cols() / deg,
            });
        } else if deg == 1 {
            // ε-stable linear factor must be t ∓ 1 (the eigenvalue is its own
            // inverse); the block splits by the ε eigenspaces.
            let (plus_dim, minus_dim) = eigen_split(&e, basis)?;
            out.push(DescendantPair::Linear { plus_dim, minus_dim });
        } else {
            if deg % 2 != 0 || p.reversal() != *p {
                return Err(ClassifyError::UnexpectedStructure(format!(
                    "ε-stable factor {p} is not self-reciprocal of even degree"
                )));
            }
            let l_min_poly = trace_field_min_poly(p)?;
            out.push(DescendantPair::Galois {
                e_degree: deg,
                l_degree: deg / 2,
                size: basis.cols() / deg,
                l_min_poly,
            });
        }
    }
    Ok(out)
}

/// End-to-end classification: check σ-fixedness and semisimplicity, factor
/// the minimal polynomial with the built-in search, then classify.
pub fn classify_auto(
    x: &RationalMatrix,
    eps: &EpsilonForm,
    max_kronecker_degree: usize,
) -> Result<Vec<DescendantPair>, ClassifyError> {
    if !check_sigma_fixed(x, eps)? {
        return Err(ClassifyError::NotSigmaFixed);
    }
    let min_poly = minimal_polynomial(x)?;
    if !min_poly.is_squarefree() {
        return Err(ClassifyError::NotSemisimple);
    }
    match factor_min_poly(&min_poly, max_kronecker_degree) {
        Factorization::Complete(factors) => classify_descendant(x, eps, &factors),
        Factorization::NeedsUserFactorization { residual, .. } => {
            Err(ClassifyError::IncompleteFactorization { residual })
        }
    }
}

/// Dimensions of the ±1 eigenspaces of ε restricted to the span of `basis`.
fn eigen_split(
    e: &RationalMatrix,
    basis: &RationalMatrix,
) -> Result<(usize, usize), ClassifyError> {
    let m = basis.cols();
    let on_component = basis.solve(&e.mul(basis)?)?;
    let id = RationalMatrix::identity(m);
    let plus = on_component.sub(&id)?.nullspace().len();
    let minus = on_component.add(&id)?.nullspace().len();
    if plus + minus != m {
        return Err(ClassifyError::UnexpectedStructure(
            "ε is not an involution on the component".into(),
        ));
    }
    Ok((plus, minus))
}

/// Minimal polynomial of t + t⁻¹ in E = Q[t]/(p): the primitive element of
/// the fixed field L of t ↦ t⁻¹.
fn trace_field_min_poly(p: &RationalPoly) -> Result<RationalPoly, ClassifyError> {
    let c = companion_matrix(p);
    let u = c.add(&c.inverse()?)?;
    let l_poly = minimal_polynomial(&u)?;
    let expected = p.degree().unwrap() / 2;
    if l_poly.degree() != Some(expected) {
        return Err(ClassifyError::UnexpectedStructure(format!(
            "fixed subfield of {p} has degree {:?}, expected {expected}",
            l_poly.degree()
        )));
    }
    Ok(l_poly)
}

/// Companion matrix of a monic polynomial: multiplication by t on the power
/// basis of Q[t]/(p).
pub fn companion_matrix(p: &RationalPoly) -> RationalMatrix {
    let d = p.degree().expect("companion of nonzero polynomial");
    assert!(d >= 1 && p.is_monic(), "companion needs a monic polynomial of degree >= 1");
    let mut c = RationalMatrix::zeros(d, d);
    for j in 0..d - 1 {
        c[(j + 1, j)] = Rational::one();
    }
    for i in 0..d {
        c[(i, d - 1)] = -p.coeff(i);
    }
    c
}
