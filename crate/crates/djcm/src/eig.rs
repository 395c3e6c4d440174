//! Dense symmetric 4x4 eigensolver (cyclic Jacobi) with a deterministic
//! ordering and sign convention, so degenerate spectra still produce
//! reproducible eigenvector matrices.

use crate::error::DjcmError;
use crate::{frobenius, mat_mul, transpose, Mat4};

const MAX_SWEEPS: usize = 64;
const RESIDUAL_TOL: f64 = 1e-12;

/// Eigendecomposition of a real symmetric 4x4 matrix.
///
/// Eigenvalues are sorted ascending; `vectors` holds the corresponding
/// eigenvectors as columns. Each eigenvector is sign-fixed so that its first
/// component of magnitude above 1e-12 is positive, and exact eigenvalue ties
/// are ordered by lexicographic comparison of the sign-fixed vectors.
#[derive(Debug, Clone, Copy)]
pub struct SymEig {
    pub eigenvalues: [f64; 4],
    pub vectors: Mat4,
}

fn offdiag_norm(a: &Mat4) -> f64 {
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            if i != j {
                s += a[i][j] * a[i][j];
            }
        }
    }
    s.sqrt()
}

fn sign_fix(col: &mut [f64; 4]) {
    for &x in col.iter() {
        if x.abs() > 1e-12 {
            if x < 0.0 {
                for y in col.iter_mut() {
                    *y = -*y;
                }
            }
            return;
        }
    }
}

/// Diagonalize a symmetric 4x4 matrix by cyclic Jacobi rotations.
///
/// Fails with [`DjcmError::EigenNonConvergence`] if the off-diagonal part does
/// not vanish within the sweep budget, and checks the reconstruction residual
/// `||H V - V diag(lambda)||` against 1e-12 (relative to the matrix scale)
/// before returning.
pub fn jacobi_eigh(h: &Mat4) -> Result<SymEig, DjcmError> {
    let mut a = *h;
    let mut v: Mat4 = [[0.0; 4]; 4];
    for i in 0..4 {
        v[i][i] = 1.0;
    }

    let scale = frobenius(h).max(1.0);
    let mut sweeps = 0;
    while offdiag_norm(&a) > 1e-15 * scale {
        if sweeps >= MAX_SWEEPS {
            return Err(DjcmError::EigenNonConvergence {
                offdiag: offdiag_norm(&a),
                sweeps,
            });
        }
        sweeps += 1;
        for p in 0..3 {
            for q in (p + 1)..4 {
                let apq = a[p][q];
                if apq.abs() <= 1e-18 * scale {
                    continue;
                }
                // Standard Jacobi rotation annihilating a[p][q].
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = if theta >= 0.0 {
                    1.0 / (theta + (1.0 + theta * theta).sqrt())
                } else {
                    -1.0 / (-theta + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for k in 0..4 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..4 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                a[p][q] = 0.0;
                a[q][p] = 0.0;
                for k in 0..4 {
                    let vkp = v[k][p];
                    let vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut cols: Vec<([f64; 4], f64)> = (0..4)
        .map(|j| {
            let mut col = [v[0][j], v[1][j], v[2][j], v[3][j]];
            sign_fix(&mut col);
            (col, a[j][j])
        })
        .collect();
    // Ties are broken by descending lexicographic order of the sign-fixed
    // vectors, which keeps the natural basis order for the zero matrix.
    cols.sort_by(|(va, la), (vb, lb)| {
        la.partial_cmp(lb)
            .unwrap()
            .then_with(|| vb.partial_cmp(va).unwrap())
    });

    let mut out = SymEig {
        eigenvalues: [0.0; 4],
        vectors: [[0.0; 4]; 4],
    };
    for (j, (col, lambda)) in cols.iter().enumerate() {
        out.eigenvalues[j] = *lambda;
        for i in 0..4 {
            out.vectors[i][j] = col[i];
        }
    }

    // Reconstruction check: H V must match V diag(lambda).
    let hv = mat_mul(h, &out.vectors);
    let mut resid = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            let d = hv[i][j] - out.vectors[i][j] * out.eigenvalues[j];
            resid += d * d;
        }
    }
    let resid = resid.sqrt();
    if resid > RESIDUAL_TOL * scale {
        return Err(DjcmError::EigenNonConvergence {
            offdiag: resid,
            sweeps,
        });
    }
    Ok(out)
}

/// Frobenius norm of `T T^t - I`.
pub fn orthogonality_residual(t: &Mat4) -> f64 {
    let ttt = mat_mul(t, &transpose(t));
    let mut s = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            let d = ttt[i][j] - if i == j { 1.0 } else { 0.0 };
            s += d * d;
        }
    }
    s.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn zero_matrix_gives_identity() {
        let e = jacobi_eigh(&[[0.0; 4]; 4]).unwrap();
        assert_eq!(e.eigenvalues, [0.0; 4]);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(e.vectors[i][j], if i == j { 1.0 } else { 0.0 });
            }
        }
    }

    #[test]
    fn diagonal_matrix_sorted() {
        let mut h = [[0.0; 4]; 4];
        h[0][0] = 3.0;
        h[1][1] = -1.0;
        h[2][2] = 2.0;
        h[3][3] = 0.5;
        let e = jacobi_eigh(&h).unwrap();
        assert_eq!(e.eigenvalues, [-1.0, 0.5, 2.0, 3.0]);
    }

    #[test]
    fn random_symmetric_reconstruction() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let mut h = [[0.0; 4]; 4];
            for i in 0..4 {
                for j in i..4 {
                    let x = rng.gen_range(-5.0..5.0);
                    h[i][j] = x;
                    h[j][i] = x;
                }
            }
            let e = jacobi_eigh(&h).unwrap();
            assert!(orthogonality_residual(&e.vectors) < 1e-12);
            let hv = mat_mul(&h, &e.vectors);
            for i in 0..4 {
                for j in 0..4 {
                    assert!((hv[i][j] - e.vectors[i][j] * e.eigenvalues[j]).abs() < 1e-11);
                }
            }
        }
    }

    #[test]
    fn deterministic_given_same_input() {
        let h = [
            [0.0, 0.5, 0.5, 0.0],
            [0.5, 0.0, 0.0, 0.5],
            [0.5, 0.0, 0.0, 0.5],
            [0.0, 0.5, 0.5, 0.0],
        ];
        let a = jacobi_eigh(&h).unwrap();
        let b = jacobi_eigh(&h).unwrap();
        assert_eq!(a.eigenvalues, b.eigenvalues);
        assert_eq!(a.vectors, b.vectors);
    }
}
