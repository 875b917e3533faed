//! Exact rational arithmetic for the constructions whose entries are
//! rational (all normal forms with `k = 1`). The floating-point path stays
//! primary; this gives bit-exact dimension counts where it is cheap.

use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Zero};

use crate::linalg::Mat;
use crate::model::{CharacteristicElement, SymplecticModel};

type Q = BigRational;

fn to_q(v: f64) -> Option<Q> {
    Q::from_f64(v)
}

fn matrix(m: &Mat) -> Option<Vec<Vec<Q>>> {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| to_q(m[(i, j)])).collect())
        .collect()
}

fn mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, |r| r.len());
    let mut out = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

fn transpose(a: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let m = a.first().map_or(0, |r| r.len());
    (0..m)
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

/// Rank by fraction-exact Gaussian elimination.
#[allow(clippy::needless_range_loop)]
pub fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = Q::one() / &rows[r][c];
        let pivot_row: Vec<Q> = rows[r].iter().map(|v| v * &inv).collect();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for (dst, src) in rows[i].iter_mut().zip(&pivot_row) {
                    if !src.is_zero() {
                        *dst -= &f * src;
                    }
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Exact dimension of `{X : ᵗXΩ + ΩX = 0, XA = AX}`; `None` if an entry is
/// not a finite float.
#[allow(clippy::needless_range_loop)]
pub fn centralizer_dim(model: &SymplecticModel, a: &CharacteristicElement) -> Option<usize> {
    let d = model.ambient_dim();
    let om = matrix(&model.omega)?;
    let am = matrix(&a.a)?;
    // One row per scalar constraint, one column per entry of X.
    let mut rows = vec![vec![Q::zero(); d * d]; 2 * d * d];
    for idx in 0..d * d {
        let (i0, j0) = (idx % d, idx / d);
        // ᵗXΩ + ΩX for X = E_{i0 j0}: row j0 of ... written out entrywise.
        for c in 0..d {
            // (ᵗE Ω)[j0][c] = Ω[i0][c]
            let r = j0 * d + c;
            rows[r][idx] += om[i0][c].clone();
            // (Ω E)[r'][j0] = Ω[r'][i0]
            let r2 = c * d + j0;
            rows[r2][idx] += om[c][i0].clone();
            // (E A)[i0][c] = A[j0][c]
            let r3 = d * d + i0 * d + c;
            rows[r3][idx] += am[j0][c].clone();
            // (A E)[c][j0] = A[c][i0]
            let r4 = d * d + c * d + j0;
            rows[r4][idx] -= am[c][i0].clone();
        }
    }
    Some(d * d - rank(rows))
}

/// Exact check of `ᵗAΩ + ΩA = 0` and `A² = μ·Id`.
pub fn identities_hold(model: &SymplecticModel, a: &CharacteristicElement) -> Option<bool> {
    let om = matrix(&model.omega)?;
    let am = matrix(&a.a)?;
    let mu = to_q(a.mu)?;
    let d = om.len();
    let lhs = mul(&transpose(&am), &om);
    let rhs = mul(&om, &am);
    let sq = mul(&am, &am);
    for i in 0..d {
        for j in 0..d {
            if !(&lhs[i][j] + &rhs[i][j]).is_zero() {
                return Some(false);
            }
            let target = if i == j { mu.clone() } else { Q::zero() };
            if sq[i][j] != target {
                return Some(false);
            }
        }
    }
    Some(true)
}
