//! Matrix-level oracle for the orbit trace bound.
//!
//! Each orbit type is realized as explicit matrices (x, d, x₋) acting on a
//! graded 2n-dimensional space; the centralizer of x inside the even part
//! gl_n × gl_n is computed by an exact nullspace, and the trace of ad(d) on
//! it is read off by an exact linear solve. No representation theory enters
//! this path, so it independently cross-checks the closed-form evaluation.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::graded::Parity;
use crate::matrix::{EpsilonForm, LinAlgError, RationalMatrix};
use crate::orbits::SignedOrbit;
use crate::rational::{rint, Rational};

/// An sl₂ triple (x, d, x₋) realizing one orbit type on a graded basis.
///
/// Invariants (exact): [d,x] = 2x, [d,x₋] = −2x₋, [x,x₋] = d; x and x₋ are
/// odd for the grading, d is diagonal; the first n basis vectors are even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sl2Realization {
    pub n: u32,
    pub x: RationalMatrix,
    pub d: RationalMatrix,
    pub x_minus: RationalMatrix,
    pub basis_parity: Vec<Parity>,
}

impl Sl2Realization {
    /// The signature form for the even/odd split of this realization.
    pub fn eps(&self) -> EpsilonForm {
        EpsilonForm::new(self.n as usize, self.n as usize)
    }
}

/// Builds the standard weight-ladder realization of an orbit.
///
/// For each part (r, w) with λ = r − 1 the ladder v₀..v_{r−1} satisfies
/// d·v_j = (λ−2j)·v_j, x·v_j = (λ−j+1)·v_{j−1}, x₋·v_j = (j+1)·v_{j+1},
/// with v₀ of parity w and parities alternating downward. Ladders are
/// assembled blockwise and the basis is permuted so that all even vectors
/// precede all odd ones.
pub fn realize_orbit(orbit: &SignedOrbit) -> Sl2Realization {
    let n = orbit.n() as usize;
    let size = 2 * n;
    let mut x0 = RationalMatrix::zeros(size, size);
    let mut d0 = RationalMatrix::zeros(size, size);
    let mut xm0 = RationalMatrix::zeros(size, size);
    let mut parity0 = Vec::with_capacity(size);

    let mut off = 0;
    for &(r, w) in orbit.parts() {
        let r = r as usize;
        let lambda = (r - 1) as i64;
        for j in 0..r {
            d0[(off + j, off + j)] = rint(lambda - 2 * j as i64);
            parity0.push(w * Parity::Minus.pow(j as u32));
        }
        for j in 1..r {
            x0[(off + j - 1, off + j)] = rint(lambda - j as i64 + 1);
        }
        for j in 0..r - 1 {
            xm0[(off + j + 1, off + j)] = rint(j as i64 + 1);
        }
        off += r;
    }

    let mut order: Vec<usize> = (0..size).filter(|&i| parity0[i] == Parity::Plus).collect();
    debug_assert_eq!(order.len(), n, "balance forces an even/odd split of n/n");
    order.extend((0..size).filter(|&i| parity0[i] == Parity::Minus));

    let permute = |m: &RationalMatrix| {
        RationalMatrix::from_fn(size, size, |i, j| m[(order[i], order[j])].clone())
    };

    let mut basis_parity = vec![Parity::Plus; n];
    basis_parity.extend(vec![Parity::Minus; n]);

    Sl2Realization {
        n: orbit.n(),
        x: permute(&x0),
        d: permute(&d0),
        x_minus: permute(&xm0),
        basis_parity,
    }
}

/// Index pairs (i, j) of the even (block-diagonal) matrix positions, in
/// row-major order. These are the coordinates used for centralizer vectors.
fn even_positions(real: &Sl2Realization) -> Vec<(usize, usize)> {
    let size = 2 * real.n as usize;
    let mut vars = Vec::with_capacity(2 * (real.n as usize) * (real.n as usize));
    for i in 0..size {
        for j in 0..size {
            if real.basis_parity[i] == real.basis_parity[j] {
                vars.push((i, j));
            }
        }
    }
    vars
}

/// Exact basis of {Y block-diagonal : xY = Yx}, the centralizer of x in
/// gl_n × gl_n. Deterministic via the reduced-echelon nullspace convention.
pub fn centralizer_even_basis(real: &Sl2Realization) -> Vec<RationalMatrix> {
    let size = 2 * real.n as usize;
    let vars = even_positions(real);
    let mut var_index = vec![vec![None; size]; size];
    for (k, &(i, j)) in vars.iter().enumerate() {
        var_index[i][j] = Some(k);
    }

    // Row (a, b): entry of [x, Y] = xY − Yx at (a, b), linear in the Y vars.
    let mut constraints = RationalMatrix::zeros(size * size, vars.len());
    for a in 0..size {
        for b in 0..size {
            let row = a * size + b;
            #[allow(clippy::needless_range_loop)] // c indexes both x and var_index
            for c in 0..size {
                if let Some(k) = var_index[c][b] {
                    let v = &constraints[(row, k)] + &real.x[(a, c)];
                    constraints[(row, k)] = v;
                }
                if let Some(k) = var_index[a][c] {
                    let v = &constraints[(row, k)] - &real.x[(c, b)];
                    constraints[(row, k)] = v;
                }
            }
        }
    }

    constraints
        .nullspace()
        .into_iter()
        .map(|v| {
            let mut y = RationalMatrix::zeros(size, size);
            for (k, &(i, j)) in vars.iter().enumerate() {
                y[(i, j)] = v[(k, 0)].clone();
            }
            y
        })
        .collect()
}

/// Trace of ad(d): Y ↦ dY − Yd restricted to the centralizer of x in
/// gl_n × gl_n. The coordinates of each [d, Y_k] in the centralizer basis are
/// recovered by an exact solve, which simultaneously certifies that ad(d)
/// preserves the centralizer.
pub fn trace_ad_d_on_centralizer(real: &Sl2Realization) -> Result<Rational, LinAlgError> {
    let basis = centralizer_even_basis(real);
    if basis.is_empty() {
        return Ok(rint(0));
    }
    let vars = even_positions(real);
    let to_coords = |y: &RationalMatrix| {
        let mut col = RationalMatrix::zeros(vars.len(), 1);
        for (k, &(i, j)) in vars.iter().enumerate() {
            col[(k, 0)] = y[(i, j)].clone();
        }
        col
    };

    let basis_cols: Vec<RationalMatrix> = basis.iter().map(&to_coords).collect();
    let b = RationalMatrix::from_columns(&basis_cols)?;
    let image_cols: Vec<RationalMatrix> = basis
        .iter()
        .map(|y| Ok(to_coords(&real.d.commutator(y)?)))
        .collect::<Result<_, LinAlgError>>()?;
    let rhs = RationalMatrix::from_columns(&image_cols)?;

    let coords = b.solve(&rhs)?;
    coords.trace()
}

/// True iff Tr(ad(d)|centralizer) < 2n² = dim g^σ.
pub fn satisfies_regularity_bound(real: &Sl2Realization) -> Result<bool, LinAlgError> {
    let n = i64::from(real.n);
    Ok(trace_ad_d_on_centralizer(real)? < rint(2 * n * n))
}

/// Oracle trace for a single orbit.
pub fn trace_for(orbit: &SignedOrbit) -> Result<Rational, LinAlgError> {
    trace_ad_d_on_centralizer(&realize_orbit(orbit))
}

/// Oracle traces for a slice of orbits, preserving input order. Runs in
/// parallel when the `parallel` feature is enabled.
pub fn traces_of(orbits: &[SignedOrbit]) -> Result<Vec<Rational>, LinAlgError> {
    #[cfg(feature = "parallel")]
    {
        traces_of_par(orbits)
    }
    #[cfg(not(feature = "parallel"))]
    {
        traces_of_seq(orbits)
    }
}

pub fn traces_of_seq(orbits: &[SignedOrbit]) -> Result<Vec<Rational>, LinAlgError> {
    orbits.iter().map(trace_for).collect()
}

#[cfg(feature = "parallel")]
pub fn traces_of_par(orbits: &[SignedOrbit]) -> Result<Vec<Rational>, LinAlgError> {
    orbits.par_iter().map(trace_for).collect()
}
