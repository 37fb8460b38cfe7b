//! Characteristic and minimal polynomials and the shift-enabled verdict.
//!
//! A shift matrix is shift-enabled when its characteristic and minimal
//! polynomials coincide (equivalently, it is nonderogatory). Everything here
//! is exact: the characteristic polynomial comes from the Faddeev-LeVerrier
//! recurrence, the minimal polynomial from the first exact linear dependence
//! among vectorized matrix powers.

use crate::elim::{SpanStep, SpanTracker};
use crate::mat::Mat;
use crate::poly::Poly;
use crate::scalar::ExactScalar;

/// Per-matrix spectral verdict. `commutant_dim` is filled by the commutant
/// module when the full analysis pipeline runs.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport<T> {
    pub n: usize,
    pub charpoly: Poly<T>,
    pub minpoly: Poly<T>,
    pub shift_enabled: bool,
    /// Dimension of span{I, S, ..., S^(d-1)} = degree of the minimal polynomial.
    pub poly_span_dim: usize,
    pub commutant_dim: Option<usize>,
}

/// Monic characteristic polynomial `det(xI - S)` via Faddeev-LeVerrier.
///
/// Exact over any field scalar; O(n) matrix products. The only divisions are
/// by the integers 1..=n.
pub fn charpoly<T: ExactScalar>(s: &Mat<T>) -> Poly<T> {
    let n = s.n();
    let mut coeffs = vec![T::zero(); n + 1];
    coeffs[n] = T::one();
    // am tracks A * M_k, starting from M_1 = I.
    let mut am = s.clone();
    for k in 1..=n {
        let kq = T::from_usize(k).expect("small integer fits any scalar");
        let c = am.trace().neg() / kq;
        coeffs[n - k] = c.clone();
        if k < n {
            let mut m = am;
            m.add_scaled_identity(&c);
            am = s * &m;
        }
    }
    Poly::new(coeffs)
}

/// Monic minimal polynomial: the least `d` with `vec(S^d)` in
/// `span{vec(I), ..., vec(S^(d-1))}`, with coefficients taken from that exact
/// dependence.
pub fn minpoly<T: ExactScalar>(s: &Mat<T>) -> Poly<T> {
    let n = s.n();
    let mut tracker: SpanTracker<T> = SpanTracker::new(n * n);
    let mut power = Mat::identity(n);
    for k in 0..=n {
        match tracker
            .insert(power.vec_col_major())
            .expect("power vectors share one ambient dimension")
        {
            SpanStep::Contained { combination } => {
                // S^k = sum c_l S^l  =>  m(x) = x^k - sum c_l x^l
                let mut coeffs: Vec<T> = combination.into_iter().map(|c| c.neg()).collect();
                coeffs.push(T::one());
                return Poly::new(coeffs);
            }
            SpanStep::Extended => {}
        }
        if k < n {
            power = &power * s;
        }
    }
    unreachable!("a dependence must appear at degree <= n");
}

/// True iff the characteristic and minimal polynomials coincide.
pub fn is_shift_enabled<T: ExactScalar>(s: &Mat<T>) -> bool {
    charpoly(s) == minpoly(s)
}

/// Computes both polynomials and the shift-enabled flag in one pass.
pub fn spectral_report<T: ExactScalar>(s: &Mat<T>) -> SpectralReport<T> {
    let charpoly = charpoly(s);
    let minpoly = minpoly(s);
    let shift_enabled = charpoly == minpoly;
    let poly_span_dim = minpoly.degree().expect("minimal polynomial is nonzero");
    SpectralReport {
        n: s.n(),
        charpoly,
        minpoly,
        shift_enabled,
        poly_span_dim,
        commutant_dim: None,
    }
}
