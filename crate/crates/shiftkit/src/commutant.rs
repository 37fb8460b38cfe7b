//! The commutant of a shift matrix: every X with XS = SX.
//!
//! The commutant is computed directly on S as the null space of the linear
//! map X -> XS - SX over n^2 unknowns (no Jordan decomposition is ever
//! attempted, since exact Jordan forms of arbitrary rational matrices need
//! algebraic eigenvalues). Block structure is validated only on matrices the
//! caller builds from an explicit [`JordanSpec`], where every eigenvalue is
//! rational and the expected pattern is exactly checkable.

use crate::elim;
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::scalar::ExactScalar;

/// Exact basis of the commutant, in canonical free-variable order.
#[derive(Clone, Debug, PartialEq)]
pub struct CommutantBasis<T> {
    n: usize,
    basis: Vec<Mat<T>>,
}

impl<T> CommutantBasis<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Mat<T>] {
        &self.basis
    }
}

/// Rows of the commutation system. Unknowns are vec(X) in column-major order,
/// equations scan (XS - SX) entries in row-major order.
fn commutation_system<T: ExactScalar>(s: &Mat<T>) -> Vec<Vec<T>> {
    let n = s.n();
    let mut rows = vec![vec![T::zero(); n * n]; n * n];
    for i in 0..n {
        for j in 0..n {
            let row = &mut rows[i * n + j];
            for k in 0..n {
                // (XS)_ij picks up X_ik * S_kj; (SX)_ij picks up S_ik * X_kj.
                let c = &mut row[k * n + i];
                *c = c.clone() + s[(k, j)].clone();
                let c = &mut row[j * n + k];
                *c = c.clone() - s[(i, k)].clone();
            }
        }
    }
    rows
}

/// Canonical exact basis of `{X : XS = SX}`.
pub fn commutant_basis<T: ExactScalar>(s: &Mat<T>) -> CommutantBasis<T> {
    let n = s.n();
    let null = elim::nullspace(&commutation_system(s)).expect("system rows are rectangular");
    let basis = null
        .vectors()
        .iter()
        .map(|v| Mat::from_vec_col_major(n, v).expect("basis vector has length n^2"))
        .collect();
    CommutantBasis { n, basis }
}

/// Dimension of the commutant.
pub fn commutant_dimension<T: ExactScalar>(s: &Mat<T>) -> usize {
    commutant_basis(s).dim()
}

/// A Jordan matrix declared block by block: each entry is an eigenvalue and a
/// block size, materialized as `diag[J_1, ..., J_K]` with ones on each block's
/// superdiagonal.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanSpec<T> {
    blocks: Vec<(T, usize)>,
}

impl<T: ExactScalar> JordanSpec<T> {
    pub fn new(blocks: Vec<(T, usize)>) -> Result<Self> {
        if blocks.is_empty() || blocks.iter().any(|&(_, size)| size == 0) {
            return Err(Error::ZeroDimension);
        }
        Ok(JordanSpec { blocks })
    }

    pub fn blocks(&self) -> &[(T, usize)] {
        &self.blocks
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|&(_, size)| size).sum()
    }

    pub fn materialize(&self) -> Mat<T> {
        let mut m = Mat::zero(self.n());
        let mut offset = 0;
        for (lambda, size) in &self.blocks {
            for i in 0..*size {
                m[(offset + i, offset + i)] = lambda.clone();
                if i + 1 < *size {
                    m[(offset + i, offset + i + 1)] = T::one();
                }
            }
            offset += size;
        }
        m
    }

    /// Commutant dimension predicted by the block structure:
    /// `sum over ordered pairs (l, m) with equal eigenvalues of min(n_l, n_m)`.
    pub fn expected_commutant_dim(&self) -> usize {
        let mut dim = 0;
        for (la, sa) in &self.blocks {
            for (lb, sb) in &self.blocks {
                if la == lb {
                    dim += sa.min(sb);
                }
            }
        }
        dim
    }
}

/// Verdict for one (l, m) block pair of one basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPairCheck {
    pub l: usize,
    pub m: usize,
    pub same_eigenvalue: bool,
    pub ok: bool,
}

/// Structure report for a Jordan matrix's commutant basis.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureReport {
    pub n: usize,
    pub commutant_dim: usize,
    pub expected_dim: usize,
    pub pairs: Vec<BlockPairCheck>,
}

/// Materializes the Jordan matrix of `spec`, computes its commutant basis,
/// and checks every basis element block pair against the expected shape:
/// identically zero across distinct eigenvalues, and an upper-triangular
/// Toeplitz band (`[0 U]` when the block is fat, `[U; 0]` when it is thin)
/// across equal eigenvalues.
///
/// Fails on the first violating `(l, m, basis_index)` triple.
pub fn validate_block_structure<T: ExactScalar>(spec: &JordanSpec<T>) -> Result<StructureReport> {
    let j = spec.materialize();
    let basis = commutant_basis(&j);
    let blocks = spec.blocks();

    let mut offsets = Vec::with_capacity(blocks.len());
    let mut off = 0;
    for (_, size) in blocks {
        offsets.push(off);
        off += size;
    }

    let mut pairs = Vec::new();
    for (l, (lam_l, n_l)) in blocks.iter().enumerate() {
        for (m, (lam_m, n_m)) in blocks.iter().enumerate() {
            let same = lam_l == lam_m;
            for (bi, x) in basis.basis().iter().enumerate() {
                if !block_pair_ok(x, offsets[l], *n_l, offsets[m], *n_m, same) {
                    return Err(Error::StructureViolation {
                        l,
                        m,
                        basis_index: bi,
                    });
                }
            }
            pairs.push(BlockPairCheck {
                l,
                m,
                same_eigenvalue: same,
                ok: true,
            });
        }
    }
    Ok(StructureReport {
        n: spec.n(),
        commutant_dim: basis.dim(),
        expected_dim: spec.expected_commutant_dim(),
        pairs,
    })
}

/// One block pair of one basis element. Distinct eigenvalues force a zero
/// block. Equal eigenvalues force constant diagonals (Toeplitz) that vanish
/// below offset max(0, n_m - n_l); that single band condition covers both the
/// fat `[0 U]` and the thin `[U; 0]` shapes.
fn block_pair_ok<T: ExactScalar>(
    x: &Mat<T>,
    row_off: usize,
    n_l: usize,
    col_off: usize,
    n_m: usize,
    same_eigenvalue: bool,
) -> bool {
    if !same_eigenvalue {
        for r in 0..n_l {
            for c in 0..n_m {
                if !x[(row_off + r, col_off + c)].is_zero() {
                    return false;
                }
            }
        }
        return true;
    }
    let min_offset = n_m.saturating_sub(n_l) as isize;
    for t in -(n_l as isize - 1)..=(n_m as isize - 1) {
        let mut first: Option<&T> = None;
        for r in 0..n_l {
            let c = r as isize + t;
            if c < 0 || c >= n_m as isize {
                continue;
            }
            let entry = &x[(row_off + r, col_off + c as usize)];
            if t < min_offset {
                if !entry.is_zero() {
                    return false;
                }
            } else {
                match first {
                    None => first = Some(entry),
                    Some(f) => {
                        if f != entry {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{MatQ, Rat};
    use num::Zero;

    fn q(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    fn mat(rows: &[&[i64]]) -> MatQ {
        Mat::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| q(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn shift_s() -> MatQ {
        mat(&[&[0, 1, 1], &[0, 0, 0], &[0, 0, 0]])
    }

    fn cycle3() -> MatQ {
        mat(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])
    }

    fn jordan(blocks: &[(i64, usize)]) -> JordanSpec<Rat> {
        JordanSpec::new(blocks.iter().map(|&(l, s)| (q(l), s)).collect()).unwrap()
    }

    #[test]
    fn counterexample_shift_has_dim_five() {
        let s = shift_s();
        let basis = commutant_basis(&s);
        assert_eq!(basis.dim(), 5);
        for x in basis.basis() {
            assert_eq!(x * &s, &s * x);
            // hand-derived constraints of the commutation system
            assert!(x[(1, 0)].is_zero());
            assert!(x[(2, 0)].is_zero());
            assert_eq!(&x[(1, 1)] + &x[(2, 1)], x[(0, 0)].clone());
            assert_eq!(&x[(1, 2)] + &x[(2, 2)], x[(0, 0)].clone());
        }
    }

    #[test]
    fn identity_commutes_with_everything() {
        assert_eq!(commutant_dimension(&MatQ::identity(3)), 9);
    }

    #[test]
    fn cycle_commutant_is_circulant() {
        let basis = commutant_basis(&cycle3());
        assert_eq!(basis.dim(), 3);
        for x in basis.basis() {
            // circulant: entry depends only on (j - i) mod 3
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(x[(i, j)], x[((i + 1) % 3, (j + 1) % 3)]);
                }
            }
        }
    }

    #[test]
    fn jordan_spec_dimension_formula() {
        assert_eq!(jordan(&[(0, 2), (0, 1)]).expected_commutant_dim(), 5);
        assert_eq!(jordan(&[(0, 2), (5, 1)]).expected_commutant_dim(), 3);
        assert_eq!(jordan(&[(1, 1)]).expected_commutant_dim(), 1);
    }

    #[test]
    fn jordan_spec_matches_sylvester_dimension() {
        for spec in [
            jordan(&[(0, 2), (0, 1)]),
            jordan(&[(0, 2), (5, 1)]),
            jordan(&[(1, 1)]),
            jordan(&[(2, 3)]),
            jordan(&[(1, 2), (1, 2)]),
        ] {
            assert_eq!(
                commutant_dimension(&spec.materialize()),
                spec.expected_commutant_dim()
            );
        }
    }

    #[test]
    fn distinct_eigenvalue_blocks_reach_dimension_n() {
        // dim 2 + 1 = 3 = n, so the materialized matrix is shift-enabled
        let spec = jordan(&[(0, 2), (5, 1)]);
        let j = spec.materialize();
        assert_eq!(commutant_dimension(&j), 3);
        assert!(crate::spectra::is_shift_enabled(&j));
    }

    #[test]
    fn jordan_materialization_shape() {
        let j = jordan(&[(0, 2), (5, 1)]).materialize();
        assert_eq!(j, mat(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 5]]));
    }

    #[test]
    fn structure_validation_examples() {
        for spec in [
            jordan(&[(0, 2), (0, 1)]),
            jordan(&[(0, 1), (1, 1)]),
            jordan(&[(2, 3)]),
        ] {
            let report = validate_block_structure(&spec).unwrap();
            assert_eq!(report.commutant_dim, report.expected_dim);
            assert!(report.pairs.iter().all(|p| p.ok));
        }
    }

    #[test]
    fn upper_triangular_toeplitz_family_for_single_block() {
        let report = validate_block_structure(&jordan(&[(2, 3)])).unwrap();
        assert_eq!(report.commutant_dim, 3);
    }

    #[test]
    fn rejects_empty_and_zero_blocks() {
        assert!(JordanSpec::<Rat>::new(vec![]).is_err());
        assert!(JordanSpec::new(vec![(q(1), 0)]).is_err());
    }

    #[test]
    fn polynomial_span_sits_inside_commutant() {
        let s = shift_s();
        let basis = commutant_basis(&s);
        let cols: Vec<Vec<Rat>> = basis.basis().iter().map(|m| m.vec_col_major()).collect();
        let mut power = MatQ::identity(3);
        for _ in 0..2 {
            assert!(elim::solve_linear(&cols, &power.vec_col_major())
                .unwrap()
                .is_some());
            power = &power * &s;
        }
    }
}
