//! Six-angle orthogonal parameterization of the dressed transformation,
//! implemented verbatim from the published expressions, plus a numeric
//! diagonalizer used by all downstream physics.
//!
//! The published entry formulas contain apparent typographical defects (an
//! unbalanced parenthesis in the (2,2) entry, term asymmetries between rows),
//! so `build_transform` measures and reports the orthogonality residual they
//! actually produce instead of assuming it is zero. Exact evolution never
//! depends on this parameterization; it always goes through
//! [`numeric_diagonalizer`].
//!
//! Two entries are read with their structurally forced factor: the second
//! term of the (2,4) entry takes `s6` (matching rows 1 and 3) and the middle
//! term of the (3,2) entry takes `c1 s2 c3` (matching the (3,4) entry).
//! Without these readings even the all-zero-angle matrix fails to be the
//! identity. Everything else is transcribed as printed.

use crate::eig::orthogonality_residual;
use crate::error::DjcmError;
use crate::model::{block_spectrum, BlockHamiltonian};
use crate::{mat_mul, transpose, Mat4};

/// The six Euler-like mixing angles, stored exactly as provided.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixingAngles {
    pub theta: [f64; 6],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformSource {
    /// Built from the printed six-angle entry formulas; carries whatever
    /// residual those formulas produce.
    BoseParameterization,
    /// Rows are eigenvectors from the numeric diagonalizer; residual < 1e-12.
    NumericEigenvectors,
}

impl std::fmt::Display for TransformSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TransformSource::BoseParameterization => write!(f, "bose_parameterization"),
            TransformSource::NumericEigenvectors => write!(f, "numeric_eigenvectors"),
        }
    }
}

/// A candidate dressed transformation with its measured orthogonality defect.
#[derive(Debug, Clone, Copy)]
pub struct OrthogonalTransform {
    pub matrix: Mat4,
    pub orthogonality_residual: f64,
    pub source: TransformSource,
}

/// Evaluates the sixteen printed entry expressions at the given angles.
///
/// The expressions are transcribed literally, including their suspect terms;
/// the returned residual records how far the result is from orthogonal.
pub fn build_transform(angles: &MixingAngles) -> OrthogonalTransform {
    let s: Vec<f64> = angles.theta.iter().map(|t| t.sin()).collect();
    let c: Vec<f64> = angles.theta.iter().map(|t| t.cos()).collect();
    let (s1, s2, s3, s4, s5, s6) = (s[0], s[1], s[2], s[3], s[4], s[5]);
    let (c1, c2, c3, c4, c5, c6) = (c[0], c[1], c[2], c[3], c[4], c[5]);

    let matrix = [
        [
            c1 * c5 + s1 * s3 * s4 * s5,
            c1 * s5 * s6 + s1 * c3 * c6 + s1 * s3 * s4 * c5 * s6,
            s1 * s3 * c4,
            -c1 * s5 * s6 - s1 * c3 * s6 + s1 * s3 * s4 * c5 * s6,
        ],
        [
            -s1 * c2 * c5 + (c1 * c2 * s3 - s2 * c3) * s4 * s5,
            s1 * c2 * s5 * s6 + (c1 * c2 * c3 + s2 * s3) * c6 + (c1 * c2 * s3 - s2 * c3) * s4 * c5 * s6,
            (c1 * c2 * s3 - s2 * c3) * c4,
            s1 * c2 * s5 * c6 - (c1 * c2 * c3 + s2 * s3) * s6 + (c1 * c2 * s3 - s2 * c3) * s4 * c5 * s6,
        ],
        [
            -s1 * s2 * c5 + (c1 * s2 * s3 + c2 * c3) * s4,
            s1 * s2 * s5 * s6 + (c1 * s2 * c3 - c2 * s3) * c6 + (c1 * s2 * s3 + c2 * c3) * s4 * c5 * s6,
            (c1 * s2 * s3 + c2 * c3) * c4,
            s1 * s2 * s5 * c6 - (c1 * s2 * c3 - c2 * s3) * s6 + (c1 * s2 * s3 + c2 * c3) * s4 * c5 * s6,
        ],
        [c4 * s5, c4 * c5 * s6, -s4, c4 * c5 * c6],
    ];

    OrthogonalTransform {
        matrix,
        orthogonality_residual: orthogonality_residual(&matrix),
        source: TransformSource::BoseParameterization,
    }
}

/// The published mixing-angle values.
pub fn paper_angles() -> MixingAngles {
    MixingAngles {
        theta: [
            (1.0 / 6.0f64.sqrt()).acos(),
            (2.0 / 5.0f64.sqrt()).acos(),
            (-(3.0f64 / 5.0).sqrt()).acos(),
            (-(3.0f64.sqrt()) / 2.0).acos(),
            (2.0f64 / 3.0).sqrt().acos(),
            (1.0 / 2.0f64.sqrt()).acos(),
        ],
    }
}

/// Measures how well `T` diagonalizes the interaction block: computes
/// `M = T H T^t` and returns the Frobenius norm of its off-diagonal part
/// together with its diagonal.
pub fn consistency_residual(
    transform: &OrthogonalTransform,
    h: &BlockHamiltonian,
) -> (f64, [f64; 4]) {
    let m = mat_mul(
        &mat_mul(&transform.matrix, &h.interaction),
        &transpose(&transform.matrix),
    );
    let mut off = 0.0;
    let mut diag = [0.0; 4];
    for i in 0..4 {
        diag[i] = m[i][i];
        for j in 0..4 {
            if i != j {
                off += m[i][j] * m[i][j];
            }
        }
    }
    (off.sqrt(), diag)
}

/// Fallback transformation: rows are the eigenvectors of the interaction
/// block, in the deterministic order and sign convention of `block_spectrum`.
pub fn numeric_diagonalizer(h: &BlockHamiltonian) -> Result<OrthogonalTransform, DjcmError> {
    let spec = block_spectrum(h, false)?;
    let matrix = transpose(&spec.eigenvectors);
    Ok(OrthogonalTransform {
        orthogonality_residual: orthogonality_residual(&matrix),
        matrix,
        source: TransformSource::NumericEigenvectors,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{interaction_block, BlockIndex, Scenario, SystemParams};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn symmetric_block() -> BlockHamiltonian {
        let p = SystemParams::resonant(1.0, 1.0, 1.0, 1.0, Scenario::I).unwrap();
        interaction_block(&p, BlockIndex::new(0, 0))
    }

    #[test]
    fn zero_angles_give_identity() {
        let t = build_transform(&MixingAngles { theta: [0.0; 6] });
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(t.matrix[i][j], if i == j { 1.0 } else { 0.0 });
            }
        }
        assert_eq!(t.orthogonality_residual, 0.0);
    }

    #[test]
    fn paper_angle_values() {
        let a = paper_angles();
        assert!((a.theta[5] - PI / 4.0).abs() < 1e-15);
        assert!((a.theta[3] - 5.0 * PI / 6.0).abs() < 1e-15);
        assert!((a.theta[0].cos() - 1.0 / 6.0f64.sqrt()).abs() < 1e-15);
        assert!((a.theta[1].cos() - 2.0 / 5.0f64.sqrt()).abs() < 1e-15);
        assert!((a.theta[2].cos() + (3.0f64 / 5.0).sqrt()).abs() < 1e-15);
        assert!((a.theta[4].cos() - (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    // Golden regression pins: residuals the printed formulas actually
    // produce at the published angles. These are measured values, not
    // claims of correctness.
    #[test]
    fn printed_transform_residuals_pinned() {
        let t = build_transform(&paper_angles());
        assert!((t.orthogonality_residual - 0.5456996288082809).abs() < 1e-12);
        let (off, _) = consistency_residual(&t, &symmetric_block());
        assert!((off - 0.2575006862127054).abs() < 1e-12);
    }

    #[test]
    fn theta6_only_embedding_is_a_rotation() {
        let mut theta = [0.0; 6];
        theta[5] = 0.7;
        let t = build_transform(&MixingAngles { theta });
        assert!(t.orthogonality_residual < 1e-15);
    }

    #[test]
    fn identity_on_diagonal_matrix() {
        let t = OrthogonalTransform {
            matrix: {
                let mut m = [[0.0; 4]; 4];
                for i in 0..4 {
                    m[i][i] = 1.0;
                }
                m
            },
            orthogonality_residual: 0.0,
            source: TransformSource::NumericEigenvectors,
        };
        let mut h = symmetric_block();
        h.interaction = [[0.0; 4]; 4];
        for i in 0..4 {
            h.interaction[i][i] = (i + 1) as f64;
        }
        let (off, diag) = consistency_residual(&t, &h);
        assert_eq!(off, 0.0);
        assert_eq!(diag, [1.0, 2.0, 3.0, 4.0]);
    }

    #[test]
    fn identity_on_symmetric_block_offdiag_sqrt2() {
        let t = build_transform(&MixingAngles { theta: [0.0; 6] });
        let (off, _) = consistency_residual(&t, &symmetric_block());
        assert!((off - 2.0f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn numeric_diagonalizer_diagonalizes_random_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..100 {
            let p = SystemParams::resonant(
                1.0,
                1.0,
                rng.gen_range(0.0..5.0),
                rng.gen_range(0.0..5.0),
                Scenario::I,
            )
            .unwrap();
            let h = interaction_block(&p, BlockIndex::new(rng.gen_range(0..50), rng.gen_range(0..50)));
            let t = numeric_diagonalizer(&h).unwrap();
            assert!(t.orthogonality_residual < 1e-12);
            let (off, diag) = consistency_residual(&t, &h);
            assert!(off < 1e-12);
            let spec = block_spectrum(&h, false).unwrap();
            for k in 0..4 {
                assert!((diag[k] - spec.eigenvalues[k]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn numeric_diagonalizer_zero_block_is_identity() {
        let p = SystemParams::resonant(1.0, 1.0, 0.0, 0.0, Scenario::I).unwrap();
        let h = interaction_block(&p, BlockIndex::new(0, 0));
        let t = numeric_diagonalizer(&h).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(t.matrix[i][j], if i == j { 1.0 } else { 0.0 });
            }
        }
    }
}
