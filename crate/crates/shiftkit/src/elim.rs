//! Exact linear solving: fraction-free elimination, canonical null-space
//! bases, and an incremental span tracker.
//!
//! Forward elimination uses the division-deferred (Bareiss) update, so runs
//! over integral inputs never leave the integers until the final reduced form
//! is extracted. Pivoting always takes the first nonzero entry in column
//! order, which keeps every derived basis canonical and byte-stable.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Canonical basis of a null space: one vector per free variable, free
/// variable set to one, remaining free variables zero, bound variables
/// back-substituted. Vectors are ordered by ascending free-variable index.
#[derive(Clone, Debug, PartialEq)]
pub struct NullBasis<T> {
    width: usize,
    vectors: Vec<Vec<T>>,
}

impl<T> NullBasis<T> {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Length of each basis vector (the unknown count of the system).
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn vectors(&self) -> &[Vec<T>] {
        &self.vectors
    }
}

/// Reduced row echelon form together with its pivot columns.
struct Rref<T> {
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

fn validate_rows<T>(rows: &[Vec<T>]) -> Result<usize> {
    let width = rows.first().map_or(0, |r| r.len());
    if rows.is_empty() || width == 0 {
        return Err(Error::ZeroDimension);
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != width {
            return Err(Error::RaggedInput {
                row: i,
                found: row.len(),
                expected: width,
            });
        }
    }
    Ok(width)
}

/// Fraction-free forward elimination followed by back-substitution.
fn rref<T: Scalar>(mut a: Vec<Vec<T>>, width: usize) -> Rref<T> {
    let mut pivots = Vec::new();
    let mut prev = T::one();
    let mut r = 0;
    for c in 0..width {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in r + 1..a.len() {
            let f = a[i][c].clone();
            // Bareiss update: (pivot * a_ij - f * a_rj) / prev, division exact.
            for j in c..width {
                a[i][j] = (pivot.clone() * a[i][j].clone() - f.clone() * a[r][j].clone())
                    / prev.clone();
            }
        }
        prev = pivot;
        pivots.push(c);
        r += 1;
    }
    a.truncate(pivots.len());

    // Normalize pivots to one and clear entries above them.
    for ri in (0..pivots.len()).rev() {
        let pc = pivots[ri];
        let pv = a[ri][pc].clone();
        for j in pc..width {
            a[ri][j] = a[ri][j].clone() / pv.clone();
        }
        for i in 0..ri {
            let f = a[i][pc].clone();
            if f.is_zero() {
                continue;
            }
            for j in pc..width {
                a[i][j] = a[i][j].clone() - f.clone() * a[ri][j].clone();
            }
        }
    }
    Rref { rows: a, pivots }
}

/// Exact canonical basis of `{x : A x = 0}` for the matrix with the given rows.
pub fn nullspace<T: Scalar>(rows: &[Vec<T>]) -> Result<NullBasis<T>> {
    let width = validate_rows(rows)?;
    let red = rref(rows.to_vec(), width);
    let mut is_pivot = vec![false; width];
    for &c in &red.pivots {
        is_pivot[c] = true;
    }
    let mut vectors = Vec::with_capacity(width - red.pivots.len());
    for free in 0..width {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![T::zero(); width];
        v[free] = T::one();
        for (ri, &pc) in red.pivots.iter().enumerate() {
            v[pc] = red.rows[ri][free].clone().neg();
        }
        vectors.push(v);
    }
    Ok(NullBasis { width, vectors })
}

/// Solves `sum_j x_j * columns_j = target` exactly.
///
/// Returns the canonical particular solution (free coordinates zero, pivots
/// chosen greedily at the least indices), or `None` when the target is not in
/// the span of the columns.
pub fn solve_linear<T: Scalar>(columns: &[Vec<T>], target: &[T]) -> Result<Option<Vec<T>>> {
    if target.is_empty() {
        return Err(Error::ZeroDimension);
    }
    for col in columns {
        if col.len() != target.len() {
            return Err(Error::DimensionMismatch {
                left: col.len(),
                right: target.len(),
            });
        }
    }
    if columns.is_empty() {
        return Ok(if target.iter().all(|x| x.is_zero()) {
            Some(Vec::new())
        } else {
            None
        });
    }
    let width = columns.len() + 1;
    let rows: Vec<Vec<T>> = (0..target.len())
        .map(|r| {
            let mut row: Vec<T> = columns.iter().map(|c| c[r].clone()).collect();
            row.push(target[r].clone());
            row
        })
        .collect();
    let red = rref(rows, width);
    if red.pivots.contains(&columns.len()) {
        return Ok(None); // pivot in the augmented column: inconsistent
    }
    let mut x = vec![T::zero(); columns.len()];
    for (ri, &pc) in red.pivots.iter().enumerate() {
        x[pc] = red.rows[ri][columns.len()].clone();
    }
    Ok(Some(x))
}

/// Outcome of inserting a vector into a [`SpanTracker`].
#[derive(Clone, Debug, PartialEq)]
pub enum SpanStep<T> {
    /// The vector was already in the span; `combination[j]` is its coefficient
    /// on the j-th previously inserted vector.
    Contained { combination: Vec<T> },
    /// The vector extended the span.
    Extended,
}

/// Incremental exact linear-independence oracle over a fixed ambient dimension.
///
/// Keeps an echelonized copy of the inserted vectors plus bookkeeping that
/// expresses every stored row in terms of the original insertions, so a
/// dependent insert yields its exact combination.
pub struct SpanTracker<T> {
    width: usize,
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
    combos: Vec<Vec<T>>,
    inserted: usize,
}

impl<T: Scalar> SpanTracker<T> {
    pub fn new(width: usize) -> Self {
        SpanTracker {
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut v: Vec<T>) -> Result<SpanStep<T>> {
        if v.len() != self.width {
            return Err(Error::DimensionMismatch {
                left: v.len(),
                right: self.width,
            });
        }
        let mut combo = vec![T::zero(); self.inserted];
        for (row, (&pc, row_combo)) in self
            .rows
            .iter()
            .zip(self.pivots.iter().zip(&self.combos))
        {
            let f = v[pc].clone();
            if f.is_zero() {
                continue;
            }
            for (vj, rj) in v.iter_mut().zip(row).skip(pc) {
                *vj = vj.clone() - f.clone() * rj.clone();
            }
            for (cj, rj) in combo.iter_mut().zip(row_combo) {
                *cj = cj.clone() + f.clone() * rj.clone();
            }
        }
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            self.inserted += 1;
            return Ok(SpanStep::Contained { combination: combo });
        };
        // Store (v - sum combo_j u_j) / pivot so the row's pivot is one.
        let pv = v[pc].clone();
        for x in v.iter_mut().skip(pc) {
            *x = x.clone() / pv.clone();
        }
        let mut row_combo: Vec<T> = combo
            .into_iter()
            .map(|c| c.neg() / pv.clone())
            .collect();
        row_combo.push(T::one() / pv);
        self.rows.push(v);
        self.pivots.push(pc);
        self.combos.push(row_combo);
        self.inserted += 1;
        Ok(SpanStep::Extended)
    }
}
