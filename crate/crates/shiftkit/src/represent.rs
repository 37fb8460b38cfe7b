//! Deciding whether a shift-invariant filter is a polynomial in the shift
//! matrix, with machine-checkable certificates either way.
//!
//! A filter H commuting with S is representable iff vec(H) lies in
//! span{vec(I), ..., vec(S^(d-1))} with d the minimal polynomial degree. On
//! success the exact coefficients come back; on failure the result carries a
//! residual certificate (a functional annihilating every power of S but not
//! H) and, when one exists, an entry-pair witness in the style of "row i has
//! equal entries in columns j and k for every power of S, but not in H".

pub mod cases;
pub mod conversion;

use crate::commutant;
use crate::elim;
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::poly::Poly;
use crate::scalar::ExactScalar;
use crate::spectra;

/// Outcome class of a representability test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Representable,
    NotRepresentable,
    NotCommuting,
}

/// Two same-row entries forced equal in every polynomial of S but differing
/// in H. Indices are zero-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EntryWitness {
    pub row: usize,
    pub col_a: usize,
    pub col_b: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepresentResult<T> {
    pub verdict: Verdict,
    /// Present iff representable: coefficients of degree < deg(minpoly),
    /// trimmed to minimal degree.
    pub coeffs: Option<Poly<T>>,
    /// Present when a simple entry-pattern certificate exists.
    pub witness_entry: Option<EntryWitness>,
    /// Present iff not representable: pairs to zero with every vec(S^l) and
    /// to nonzero with vec(H). Coordinates follow column-major vec order.
    pub residual_certificate: Option<Vec<T>>,
}

impl<T> RepresentResult<T> {
    fn not_commuting() -> Self {
        RepresentResult {
            verdict: Verdict::NotCommuting,
            coeffs: None,
            witness_entry: None,
            residual_certificate: None,
        }
    }
}

/// True iff HS = SH exactly.
pub fn commutes<T: ExactScalar>(h: &Mat<T>, s: &Mat<T>) -> Result<bool> {
    let hs = h.checked_mul(s)?;
    let sh = s.checked_mul(h)?;
    Ok(hs == sh)
}

fn matrix_powers<T: ExactScalar>(s: &Mat<T>, count: usize) -> Vec<Mat<T>> {
    let mut powers = Vec::with_capacity(count);
    let mut p = Mat::identity(s.n());
    for _ in 0..count {
        powers.push(p.clone());
        p = &p * s;
    }
    powers
}

/// Decides polynomial representability of `h` in `s`.
pub fn represent_filter<T: ExactScalar>(h: &Mat<T>, s: &Mat<T>) -> Result<RepresentResult<T>> {
    if h.n() != s.n() {
        return Err(Error::DimensionMismatch {
            left: h.n(),
            right: s.n(),
        });
    }
    if !commutes(h, s)? {
        return Ok(RepresentResult::not_commuting());
    }
    let span_dim = spectra::minpoly(s)
        .degree()
        .expect("minimal polynomial is nonzero");
    let powers = matrix_powers(s, span_dim);
    let cols: Vec<Vec<T>> = powers.iter().map(|p| p.vec_col_major()).collect();
    let target = h.vec_col_major();

    match elim::solve_linear(&cols, &target)? {
        Some(coeffs) => {
            let poly = Poly::new(coeffs);
            assert_eq!(
                poly.eval_matrix(s),
                *h,
                "recovered coefficients must re-evaluate to the filter"
            );
            Ok(RepresentResult {
                verdict: Verdict::Representable,
                coeffs: Some(poly),
                witness_entry: None,
                residual_certificate: None,
            })
        }
        None => {
            let witness_entry = entry_pattern_witness(&powers, h);
            let certificate = residual_certificate(&cols, &target)?;
            Ok(RepresentResult {
                verdict: Verdict::NotRepresentable,
                coeffs: None,
                witness_entry,
                residual_certificate: Some(certificate),
            })
        }
    }
}

/// First functional (canonical null-basis order) vanishing on every power of
/// S but not on H. Soundness is re-checked exactly before returning.
fn residual_certificate<T: ExactScalar>(power_vecs: &[Vec<T>], target: &[T]) -> Result<Vec<T>> {
    let null = elim::nullspace(power_vecs)?;
    for cand in null.vectors() {
        if !dot(cand, target).is_zero() {
            for row in power_vecs {
                assert!(
                    dot(cand, row).is_zero(),
                    "certificate must annihilate every power"
                );
            }
            return Ok(cand.clone());
        }
    }
    unreachable!("target outside the span admits a separating functional");
}

fn dot<T: ExactScalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Scans rows for a pair of columns with equal entries across every relevant
/// power of S but different entries in H.
fn entry_pattern_witness<T: ExactScalar>(powers: &[Mat<T>], h: &Mat<T>) -> Option<EntryWitness> {
    let n = h.n();
    for row in 0..n {
        for col_a in 0..n {
            for col_b in col_a + 1..n {
                let forced = powers
                    .iter()
                    .all(|p| p[(row, col_a)] == p[(row, col_b)]);
                if forced && h[(row, col_a)] != h[(row, col_b)] {
                    return Some(EntryWitness { row, col_a, col_b });
                }
            }
        }
    }
    None
}

/// For a non-shift-enabled matrix, returns the first canonical commutant
/// basis element outside the polynomial span: a commuting filter that is
/// provably not a polynomial in `s`. Returns `None` when `s` is shift-enabled.
pub fn find_nonrepresentable_witness<T: ExactScalar>(s: &Mat<T>) -> Option<Mat<T>> {
    if spectra::is_shift_enabled(s) {
        return None;
    }
    for x in commutant::commutant_basis(s).basis() {
        let result = represent_filter(x, s).expect("basis elements share the dimension of s");
        if result.verdict == Verdict::NotRepresentable {
            return Some(x.clone());
        }
    }
    unreachable!("a derogatory commutant strictly exceeds the polynomial span");
}

/// One member of the filter family `alpha * H + q(S)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FilterClassSample<T> {
    pub alpha: T,
    pub q_coeffs: Poly<T>,
    pub materialized: Mat<T>,
    pub commutes_with_shift: bool,
}

/// Materializes `alpha * H + q(S)` and attaches its commutation check.
/// Requires H to commute with S.
pub fn filter_class_sample<T: ExactScalar>(
    alpha: &T,
    q: &Poly<T>,
    h: &Mat<T>,
    s: &Mat<T>,
) -> Result<FilterClassSample<T>> {
    if h.n() != s.n() {
        return Err(Error::DimensionMismatch {
            left: h.n(),
            right: s.n(),
        });
    }
    if !commutes(h, s)? {
        return Err(Error::NotCommuting);
    }
    let materialized = &h.scale(alpha) + &q.eval_matrix(s);
    let commutes_with_shift = commutes(&materialized, s)?;
    Ok(FilterClassSample {
        alpha: alpha.clone(),
        q_coeffs: q.clone(),
        materialized,
        commutes_with_shift,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{MatQ, PolyQ, Rat};
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

    fn poly(cs: &[i64]) -> PolyQ {
        Poly::new(cs.iter().map(|&c| q(c)).collect())
    }

    fn shift_s() -> MatQ {
        mat(&[&[0, 1, 1], &[0, 0, 0], &[0, 0, 0]])
    }

    fn filter_h() -> MatQ {
        mat(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]])
    }

    fn cycle3() -> MatQ {
        mat(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])
    }

    #[test]
    fn commutes_examples() {
        let (s, h) = (shift_s(), filter_h());
        assert!(commutes(&h, &s).unwrap());
        assert!((&h * &s).is_zero());
        assert!((&s * &h).is_zero());
        assert!(commutes(&mat(&[&[5, 7], &[1, 2]]), &MatQ::identity(2)).unwrap());
        // HS = diag(1,0) but SH = diag(0,1)
        let h2 = mat(&[&[0, 1], &[0, 0]]);
        let s2 = mat(&[&[0, 0], &[1, 0]]);
        assert!(!commutes(&h2, &s2).unwrap());
    }

    #[test]
    fn commutes_rejects_mismatched_dims() {
        assert!(commutes(&MatQ::identity(2), &MatQ::identity(3)).is_err());
    }

    #[test]
    fn counterexample_filter_not_representable() {
        let result = represent_filter(&filter_h(), &shift_s()).unwrap();
        assert_eq!(result.verdict, Verdict::NotRepresentable);
        assert_eq!(
            result.witness_entry,
            Some(EntryWitness {
                row: 0,
                col_a: 1,
                col_b: 2
            })
        );
        let cert = result.residual_certificate.unwrap();
        let target = filter_h().vec_col_major();
        assert!(!dot(&cert, &target).is_zero());
    }

    #[test]
    fn shift_in_itself_is_degree_one() {
        let s = shift_s();
        let result = represent_filter(&s, &s).unwrap();
        assert_eq!(result.verdict, Verdict::Representable);
        assert_eq!(result.coeffs.unwrap(), poly(&[0, 1]));
    }

    #[test]
    fn circulant_recovers_its_coefficients() {
        let c3 = cycle3();
        let circ = &(&MatQ::identity(3).scale(&q(4)) + &c3.scale(&q(5)))
            + &(&c3 * &c3).scale(&q(6));
        let result = represent_filter(&circ, &c3).unwrap();
        assert_eq!(result.verdict, Verdict::Representable);
        assert_eq!(result.coeffs.unwrap(), poly(&[4, 5, 6]));
    }

    #[test]
    fn non_commuting_verdict() {
        let h = mat(&[&[0, 1], &[0, 0]]);
        let s = mat(&[&[0, 0], &[1, 0]]);
        let result = represent_filter(&h, &s).unwrap();
        assert_eq!(result.verdict, Verdict::NotCommuting);
        assert!(result.coeffs.is_none());
        assert!(result.residual_certificate.is_none());
    }

    #[test]
    fn witness_for_counterexample_shift() {
        let s = shift_s();
        let w = find_nonrepresentable_witness(&s).expect("derogatory matrix has a witness");
        assert!(commutes(&w, &s).unwrap());
        let result = represent_filter(&w, &s).unwrap();
        assert_eq!(result.verdict, Verdict::NotRepresentable);
    }

    #[test]
    fn most_commutant_directions_are_nonrepresentable() {
        // commutant dim 5 vs polynomial span dim 2: at least three canonical
        // basis elements project outside the span
        let s = shift_s();
        let outside = crate::commutant::commutant_basis(&s)
            .basis()
            .iter()
            .filter(|x| {
                represent_filter(x, &s).unwrap().verdict == Verdict::NotRepresentable
            })
            .count();
        assert!(outside >= 3, "found {outside}");
    }

    #[test]
    fn witness_absent_for_shift_enabled() {
        assert!(find_nonrepresentable_witness(&cycle3()).is_none());
    }

    #[test]
    fn witness_for_identity_is_deterministic() {
        let i2 = MatQ::identity(2);
        let w = find_nonrepresentable_witness(&i2).unwrap();
        // first canonical basis element of the full matrix space outside span{I}
        assert_eq!(w, mat(&[&[1, 0], &[0, 0]]));
        assert_eq!(
            represent_filter(&w, &i2).unwrap().verdict,
            Verdict::NotRepresentable
        );
    }

    #[test]
    fn filter_class_members() {
        let (s, h) = (shift_s(), filter_h());

        // alpha = 0, q = x: the shift itself, representable
        let sample = filter_class_sample(&q(0), &poly(&[0, 1]), &h, &s).unwrap();
        assert_eq!(sample.materialized, s);
        assert!(sample.commutes_with_shift);
        assert_eq!(
            represent_filter(&sample.materialized, &s).unwrap().verdict,
            Verdict::Representable
        );

        // alpha = 1, q = 0: H itself
        let sample = filter_class_sample(&q(1), &Poly::zero(), &h, &s).unwrap();
        assert_eq!(sample.materialized, h);
        assert_eq!(
            represent_filter(&sample.materialized, &s).unwrap().verdict,
            Verdict::NotRepresentable
        );

        // alpha = 2, q = 3 + x: 2H + 3I + S, commuting and not representable
        let sample = filter_class_sample(&q(2), &poly(&[3, 1]), &h, &s).unwrap();
        let expected = &(&h.scale(&q(2)) + &MatQ::identity(3).scale(&q(3))) + &s;
        assert_eq!(sample.materialized, expected);
        assert!(sample.commutes_with_shift);
        assert_eq!(
            represent_filter(&sample.materialized, &s).unwrap().verdict,
            Verdict::NotRepresentable
        );
    }

    #[test]
    fn filter_class_rejects_non_commuting_filter() {
        let h = mat(&[&[0, 1], &[0, 0]]);
        let s = mat(&[&[0, 0], &[1, 0]]);
        assert_eq!(
            filter_class_sample(&q(1), &Poly::zero(), &h, &s),
            Err(Error::NotCommuting)
        );
    }
}
