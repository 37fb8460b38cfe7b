//! Floating-point application of polynomial filters to signals.
//!
//! A degree-L filter h(S) applied to x never materializes a matrix power:
//! vector Horner runs L sparse matrix-vector products with two live vectors.
//! The bench harness times that path against full dense materialization and
//! reports the divergence between the two.

use std::time::Instant;

use num::traits::Float;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::scalar::Scalar;
use crate::SparseMatF;

/// Row-compressed sparse square matrix. Entries within a row are sorted by
/// column and duplicate-free; construction from triplets sums duplicates and
/// drops explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat<T> {
    n: usize,
    row_offsets: Vec<usize>,
    col_indices: Vec<usize>,
    values: Vec<T>,
}

impl<T: Float> SparseMat<T> {
    pub fn from_triplets(n: usize, triplets: &[(usize, usize, T)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroDimension);
        }
        let mut sorted: Vec<(usize, usize, T)> = Vec::with_capacity(triplets.len());
        for &(r, c, v) in triplets {
            if r >= n || c >= n {
                return Err(Error::IndexOutOfBounds { row: r, col: c, n });
            }
            if !v.is_finite() {
                return Err(Error::NonFinite { index: r * n + c });
            }
            sorted.push((r, c, v));
        }
        sorted.sort_by_key(|&(r, c, _)| (r, c));

        let mut row_offsets = Vec::with_capacity(n + 1);
        let mut col_indices = Vec::new();
        let mut values = Vec::new();
        row_offsets.push(0);
        let mut row = 0;
        let mut iter = sorted.into_iter().peekable();
        while row < n {
            while let Some(&(r, c, _)) = iter.peek() {
                if r != row {
                    break;
                }
                let mut acc = T::zero();
                while let Some(&(r2, c2, v2)) = iter.peek() {
                    if r2 == row && c2 == c {
                        acc = acc + v2;
                        iter.next();
                    } else {
                        break;
                    }
                }
                if acc != T::zero() {
                    col_indices.push(c);
                    values.push(acc);
                }
            }
            row += 1;
            row_offsets.push(col_indices.len());
        }
        Ok(SparseMat {
            n,
            row_offsets,
            col_indices,
            values,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    /// Column indices and values of one row, sorted by column.
    pub fn row(&self, i: usize) -> (&[usize], &[T]) {
        let span = self.row_offsets[i]..self.row_offsets[i + 1];
        (&self.col_indices[span.clone()], &self.values[span])
    }
}

impl<T: Float + Scalar> SparseMat<T> {
    pub fn from_dense(m: &Mat<T>) -> Self {
        let n = m.n();
        let mut triplets = Vec::new();
        for i in 0..n {
            for (j, &v) in m.row(i).iter().enumerate() {
                if v != T::zero() {
                    triplets.push((i, j, v));
                }
            }
        }
        Self::from_triplets(n, &triplets).expect("dense source is already validated")
    }

    pub fn to_dense(&self) -> Mat<T> {
        let mut m = Mat::zero(self.n);
        for i in 0..self.n {
            let (cols, vals) = self.row(i);
            for (&c, &v) in cols.iter().zip(vals) {
                m[(i, c)] = v;
            }
        }
        m
    }
}

/// A finite-valued signal, one value per vertex.
#[derive(Clone, Debug, PartialEq)]
pub struct Signal<T> {
    values: Vec<T>,
}

impl<T: Float> Signal<T> {
    pub fn new(values: Vec<T>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::ZeroDimension);
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Signal { values })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

/// y = S x with per-row accumulation in stored column order, so repeated runs
/// are bit-identical.
pub fn spmv<T: Float>(s: &SparseMat<T>, x: &Signal<T>) -> Result<Signal<T>> {
    if s.n() != x.len() {
        return Err(Error::DimensionMismatch {
            left: s.n(),
            right: x.len(),
        });
    }
    let xv = x.values();
    let mut out = Vec::with_capacity(s.n());
    for i in 0..s.n() {
        let (cols, vals) = s.row(i);
        let mut acc = T::zero();
        for (&c, &v) in cols.iter().zip(vals) {
            acc = acc + v * xv[c];
        }
        out.push(acc);
    }
    Ok(Signal { values: out })
}

/// y = (h_0 I + h_1 S + ... + h_L S^L) x by vector Horner:
/// y starts at h_L x and each step folds y <- S y + h_l x.
pub fn apply_poly_horner<T: Float>(
    s: &SparseMat<T>,
    coeffs: &[T],
    x: &Signal<T>,
) -> Result<Signal<T>> {
    let Some((&last, rest)) = coeffs.split_last() else {
        return Err(Error::EmptyCoefficients);
    };
    if s.n() != x.len() {
        return Err(Error::DimensionMismatch {
            left: s.n(),
            right: x.len(),
        });
    }
    let xv = x.values();
    let mut y: Vec<T> = xv.iter().map(|&v| last * v).collect();
    for &c in rest.iter().rev() {
        let shifted = spmv(s, &Signal { values: y })?;
        y = shifted.values;
        for (yi, &xi) in y.iter_mut().zip(xv) {
            *yi = *yi + c * xi;
        }
    }
    Ok(Signal { values: y })
}

/// Power-accumulation reference for the same polynomial: keeps S^l x
/// explicitly and sums the scaled terms. Used as the comparison path when the
/// dense route is skipped.
pub fn apply_poly_unrolled<T: Float>(
    s: &SparseMat<T>,
    coeffs: &[T],
    x: &Signal<T>,
) -> Result<Signal<T>> {
    let Some((&c0, rest)) = coeffs.split_first() else {
        return Err(Error::EmptyCoefficients);
    };
    if s.n() != x.len() {
        return Err(Error::DimensionMismatch {
            left: s.n(),
            right: x.len(),
        });
    }
    let mut acc: Vec<T> = x.values().iter().map(|&v| c0 * v).collect();
    let mut power = x.clone();
    for &c in rest {
        power = spmv(s, &power)?;
        for (a, &p) in acc.iter_mut().zip(power.values()) {
            *a = *a + c * p;
        }
    }
    Ok(Signal { values: acc })
}

/// Materializes h(S) as a dense matrix (matrix Horner) and applies it with a
/// dense matrix-vector product. O(L n^3); exists to be benched against.
pub fn apply_poly_dense<T: Float + Scalar>(
    s: &SparseMat<T>,
    coeffs: &[T],
    x: &Signal<T>,
) -> Result<Signal<T>> {
    if coeffs.is_empty() {
        return Err(Error::EmptyCoefficients);
    }
    if s.n() != x.len() {
        return Err(Error::DimensionMismatch {
            left: s.n(),
            right: x.len(),
        });
    }
    let dense = s.to_dense();
    let mut filter = Mat::zero(s.n());
    for &c in coeffs.iter().rev() {
        filter = &filter * &dense;
        filter.add_scaled_identity(&c);
    }
    let xv = x.values();
    let values = (0..s.n())
        .map(|i| {
            filter
                .row(i)
                .iter()
                .zip(xv)
                .fold(T::zero(), |acc, (&a, &b)| acc + a * b)
        })
        .collect();
    Ok(Signal { values })
}

/// Which evaluation route produced a measurement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ApplyMethod {
    Horner,
    Dense,
}

/// Timing and divergence of one evaluation route. The divergence is measured
/// against the dense-materialization output when the dense route ran, and
/// against the power-accumulation reference otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApplyReport {
    pub method: ApplyMethod,
    pub wall_time_s: f64,
    pub flops_estimate: u64,
    pub max_abs_diff: f64,
}

/// Reference route used for the divergence numbers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BenchReference {
    Dense,
    UnrolledSpmv,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchOutcome {
    pub repeats: usize,
    pub dense_cap: usize,
    pub reference: BenchReference,
    pub horner: ApplyReport,
    pub dense: Option<ApplyReport>,
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

fn time_best<F: FnMut() -> Signal<f64>>(repeats: usize, mut f: F) -> (f64, Signal<f64>) {
    let mut best = f64::INFINITY;
    let mut out = None;
    for _ in 0..repeats {
        let start = Instant::now();
        let y = f();
        best = best.min(start.elapsed().as_secs_f64());
        out = Some(y);
    }
    (best, out.expect("repeats is validated to be at least 1"))
}

/// Runs the Horner route and, when `n <= dense_cap`, the dense route on the
/// same input; wall times are the best of `repeats` runs. Above the cap the
/// dense route is skipped and divergence is measured against the
/// power-accumulation reference instead.
pub fn bench_apply(
    s: &SparseMatF,
    coeffs: &[f64],
    x: &Signal<f64>,
    repeats: usize,
    dense_cap: usize,
) -> Result<BenchOutcome> {
    if repeats == 0 {
        return Err(Error::SideCondition("repeats must be at least 1".into()));
    }
    let degree = coeffs.len().saturating_sub(1) as u64;
    let n = s.n() as u64;

    let (horner_time, horner_out) = {
        let mut run = || apply_poly_horner(s, coeffs, x).expect("validated above");
        apply_poly_horner(s, coeffs, x)?; // surface errors before timing
        time_best(repeats, &mut run)
    };
    let horner_flops = degree * (2 * s.nnz() as u64 + 2 * n) + n;

    let (dense_report, reference, ref_out) = if s.n() <= dense_cap {
        let mut run = || apply_poly_dense(s, coeffs, x).expect("validated above");
        let (dense_time, dense_out) = time_best(repeats, &mut run);
        let dense_flops = degree * 2 * n * n * n + 2 * n * n;
        (
            Some(ApplyReport {
                method: ApplyMethod::Dense,
                wall_time_s: dense_time,
                flops_estimate: dense_flops,
                max_abs_diff: 0.0,
            }),
            BenchReference::Dense,
            dense_out,
        )
    } else {
        let ref_out = apply_poly_unrolled(s, coeffs, x)?;
        (None, BenchReference::UnrolledSpmv, ref_out)
    };

    Ok(BenchOutcome {
        repeats,
        dense_cap,
        reference,
        horner: ApplyReport {
            method: ApplyMethod::Horner,
            wall_time_s: horner_time,
            flops_estimate: horner_flops,
            max_abs_diff: max_abs_diff(horner_out.values(), ref_out.values()),
        },
        dense: dense_report,
    })
}

/// Extrapolates a dense measurement taken at `measured_n` to `target_n` with
/// the cubic materialization model. An estimate for comparisons, not a
/// measurement.
pub fn extrapolate_dense_time(measured_s: f64, measured_n: usize, target_n: usize) -> f64 {
    let ratio = target_n as f64 / measured_n as f64;
    measured_s * ratio.powi(3)
}

/// Seeded random sparse matrix with `nnz_per_row` entries per row (distinct
/// columns) and values uniform in [-1, 1].
pub fn random_sparse(n: usize, nnz_per_row: usize, seed: u64) -> SparseMatF {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut triplets = Vec::with_capacity(n * nnz_per_row);
    for i in 0..n {
        let mut cols = Vec::with_capacity(nnz_per_row);
        while cols.len() < nnz_per_row.min(n) {
            let c = rng.gen_range(0..n);
            if !cols.contains(&c) {
                cols.push(c);
            }
        }
        for c in cols {
            triplets.push((i, c, rng.gen_range(-1.0..=1.0)));
        }
    }
    SparseMat::from_triplets(n, &triplets).expect("indices are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle3() -> SparseMatF {
        SparseMat::from_triplets(3, &[(0, 2, 1.0), (1, 0, 1.0), (2, 1, 1.0)]).unwrap()
    }

    fn shift_s() -> SparseMatF {
        SparseMat::from_triplets(3, &[(0, 1, 1.0), (0, 2, 1.0)]).unwrap()
    }

    fn sig(values: &[f64]) -> Signal<f64> {
        Signal::new(values.to_vec()).unwrap()
    }

    #[test]
    fn spmv_cycles_the_signal() {
        let y = spmv(&cycle3(), &sig(&[1.0, 2.0, 3.0])).unwrap();
        assert_eq!(y.values(), &[3.0, 1.0, 2.0]);
    }

    #[test]
    fn spmv_zero_matrix() {
        let z = SparseMat::from_triplets(3, &[]).unwrap();
        let y = spmv(&z, &sig(&[4.0, 5.0, 6.0])).unwrap();
        assert_eq!(y.values(), &[0.0, 0.0, 0.0]);
    }

    #[test]
    fn spmv_counterexample_shift() {
        let y = spmv(&shift_s(), &sig(&[0.0, 1.0, 1.0])).unwrap();
        assert_eq!(y.values(), &[2.0, 0.0, 0.0]);
    }

    #[test]
    fn spmv_rejects_bad_dims() {
        assert!(spmv(&cycle3(), &sig(&[1.0, 2.0])).is_err());
    }

    #[test]
    fn signals_must_be_finite() {
        assert!(Signal::new(vec![1.0, f64::NAN]).is_err());
        assert!(Signal::new(vec![f64::INFINITY]).is_err());
        assert!(Signal::<f64>::new(vec![]).is_err());
    }

    #[test]
    fn horner_constant_scales() {
        let y = apply_poly_horner(&cycle3(), &[2.5], &sig(&[1.0, 2.0, 3.0])).unwrap();
        assert_eq!(y.values(), &[2.5, 5.0, 7.5]);
    }

    #[test]
    fn horner_double_shift() {
        let y = apply_poly_horner(&cycle3(), &[0.0, 0.0, 1.0], &sig(&[1.0, 2.0, 3.0])).unwrap();
        assert_eq!(y.values(), &[2.0, 3.0, 1.0]);
    }

    #[test]
    fn horner_affine_on_counterexample_shift() {
        let y = apply_poly_horner(&shift_s(), &[1.0, 1.0], &sig(&[0.0, 1.0, 1.0])).unwrap();
        assert_eq!(y.values(), &[2.0, 1.0, 1.0]);
    }

    #[test]
    fn horner_rejects_empty_coeffs() {
        assert!(matches!(
            apply_poly_horner(&cycle3(), &[], &sig(&[1.0, 2.0, 3.0])),
            Err(Error::EmptyCoefficients)
        ));
    }

    #[test]
    fn routes_agree_on_toy_instance() {
        let s = cycle3();
        let x = sig(&[1.0, -2.0, 0.5]);
        let coeffs = [1.0, -1.5, 0.25, 2.0];
        let horner = apply_poly_horner(&s, &coeffs, &x).unwrap();
        let unrolled = apply_poly_unrolled(&s, &coeffs, &x).unwrap();
        let dense = apply_poly_dense(&s, &coeffs, &x).unwrap();
        assert!(max_abs_diff(horner.values(), dense.values()) < 1e-12);
        assert!(max_abs_diff(unrolled.values(), dense.values()) < 1e-12);
    }

    #[test]
    fn duplicates_are_summed_and_zeros_dropped() {
        let s = SparseMat::from_triplets(2, &[(0, 1, 2.0), (0, 1, 3.0), (1, 0, 0.0)]).unwrap();
        assert_eq!(s.nnz(), 1);
        let (cols, vals) = s.row(0);
        assert_eq!(cols, &[1]);
        assert_eq!(vals, &[5.0]);
    }

    #[test]
    fn triplets_are_validated() {
        assert!(SparseMat::from_triplets(2, &[(2, 0, 1.0)]).is_err());
        assert!(SparseMat::from_triplets(2, &[(0, 0, f64::NAN)]).is_err());
        assert!(SparseMat::<f64>::from_triplets(0, &[]).is_err());
    }

    #[test]
    fn repeated_runs_are_bit_identical() {
        let s = random_sparse(64, 4, 9);
        let x = Signal::new((0..64).map(|i| (i as f64).sin()).collect()).unwrap();
        let coeffs = [0.5, -1.0, 0.25, 0.125];
        let a = apply_poly_horner(&s, &coeffs, &x).unwrap();
        let b = apply_poly_horner(&s, &coeffs, &x).unwrap();
        assert_eq!(a.values(), b.values());
    }

    #[test]
    fn empty_rows_stay_zero_and_reads_stay_local() {
        let s = shift_s();
        let x = sig(&[7.0, 1.0, 2.0]);
        let y = spmv(&s, &x).unwrap();
        assert_eq!(y.values()[1], 0.0);
        assert_eq!(y.values()[2], 0.0);
        // row 0 reads only columns 1 and 2: perturbing x outside that
        // neighborhood leaves the entry unchanged
        let x2 = sig(&[-100.0, 1.0, 2.0]);
        let y2 = spmv(&s, &x2).unwrap();
        assert_eq!(y.values()[0], y2.values()[0]);
    }

    #[test]
    fn bench_toy_instance_agrees() {
        let s = cycle3();
        let x = sig(&[1.0, 2.0, 3.0]);
        let out = bench_apply(&s, &[1.0, 2.0, 0.5], &x, 2, 16).unwrap();
        assert_eq!(out.reference, BenchReference::Dense);
        assert!(out.horner.max_abs_diff < 1e-12);
        assert!(out.dense.is_some());
    }

    #[test]
    fn bench_identity_filter_echoes_input() {
        let s = cycle3();
        let x = sig(&[1.0, 2.0, 3.0]);
        let out = bench_apply(&s, &[1.0], &x, 1, 16).unwrap();
        assert_eq!(out.horner.max_abs_diff, 0.0);
    }

    #[test]
    fn bench_skips_dense_above_cap() {
        let s = random_sparse(32, 3, 4);
        let x = Signal::new(vec![1.0; 32]).unwrap();
        let out = bench_apply(&s, &[1.0, 1.0], &x, 1, 8).unwrap();
        assert!(out.dense.is_none());
        assert_eq!(out.reference, BenchReference::UnrolledSpmv);
        assert!(out.horner.max_abs_diff < 1e-9);
    }
}
