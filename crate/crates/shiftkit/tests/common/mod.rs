//! Shared helpers and independent oracles for the integration suites.
//!
//! The elimination oracle here is a textbook division-based Gauss-Jordan,
//! deliberately distinct from the library's fraction-free path, so dimension
//! cross-checks do not share code with what they verify.

#![allow(dead_code)]

use num::Zero;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use shiftkit::commutant::JordanSpec;
use shiftkit::mat::Mat;
use shiftkit::poly::Poly;
use shiftkit::{MatQ, PolyQ, Rat};

pub fn q(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn qq(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

pub fn mat(rows: &[&[i64]]) -> MatQ {
    Mat::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect(),
    )
    .unwrap()
}

pub fn poly(cs: &[i64]) -> PolyQ {
    Poly::new(cs.iter().map(|&c| q(c)).collect())
}

pub fn counterexample_shift() -> MatQ {
    mat(&[&[0, 1, 1], &[0, 0, 0], &[0, 0, 0]])
}

pub fn counterexample_filter() -> MatQ {
    mat(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]])
}

pub fn cycle3() -> MatQ {
    mat(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])
}

/// Textbook Gauss-Jordan rank over the rationals.
pub fn naive_rank(mut rows: Vec<Vec<Rat>>) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank][col].clone();
        for x in rows[rank].iter_mut() {
            *x = x.clone() / pivot.clone();
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col].is_zero() {
                continue;
            }
            let f = rows[r][col].clone();
            for c in 0..width {
                let sub = f.clone() * rows[rank][c].clone();
                rows[r][c] = rows[r][c].clone() - sub;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Null-space dimension by rank-nullity on the naive rank.
pub fn naive_nullspace_dim(rows: Vec<Vec<Rat>>) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    width - naive_rank(rows)
}

/// The commutation constraints of XS = SX written out independently of the
/// library: unknowns X_ab indexed row-major, one equation per (i, j).
pub fn commutation_rows_row_major(s: &MatQ) -> Vec<Vec<Rat>> {
    let n = s.n();
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![q(0); n * n];
            for k in 0..n {
                row[i * n + k] = row[i * n + k].clone() + s[(k, j)].clone();
                row[k * n + j] = row[k * n + j].clone() - s[(i, k)].clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// All Jordan block multisets with total size in `1..=max_n` and eigenvalues
/// from the given list. Blocks are emitted nondecreasing in (eigenvalue
/// index, size), so each multiset appears exactly once.
pub fn enumerate_jordan_specs(max_n: usize, eigenvalues: &[i64]) -> Vec<JordanSpec<Rat>> {
    let mut out = Vec::new();
    let mut current: Vec<(usize, usize)> = Vec::new();
    fn recurse(
        remaining: usize,
        min_block: (usize, usize),
        eigenvalues: &[i64],
        current: &mut Vec<(usize, usize)>,
        out: &mut Vec<JordanSpec<Rat>>,
    ) {
        if !current.is_empty() {
            let blocks = current
                .iter()
                .map(|&(e, s)| (q(eigenvalues[e]), s))
                .collect();
            out.push(JordanSpec::new(blocks).unwrap());
        }
        for e in 0..eigenvalues.len() {
            for s in 1..=remaining {
                if (e, s) < min_block {
                    continue;
                }
                current.push((e, s));
                recurse(remaining - s, (e, s), eigenvalues, current, out);
                current.pop();
            }
        }
    }
    for n in 1..=max_n {
        // fixed total: only emit specs that use the full budget
        let mut sized = Vec::new();
        recurse(n, (0, 1), eigenvalues, &mut current, &mut sized);
        out.extend(sized.into_iter().filter(|spec| spec.n() == n));
    }
    out
}

/// Random unimodular integer matrix built from elementary row additions,
/// returned with its exact inverse.
pub fn random_unimodular(n: usize, ops: usize, rng: &mut ChaCha8Rng) -> (MatQ, MatQ) {
    let mut p = MatQ::identity(n);
    let mut elementary = Vec::with_capacity(ops);
    for _ in 0..ops {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while j == i {
            j = rng.gen_range(0..n);
        }
        let k = q(rng.gen_range(-2..=2i64));
        elementary.push((i, j, k));
    }
    for &(i, j, ref k) in &elementary {
        // add k * row i to row j
        let mut e = MatQ::identity(n);
        e[(j, i)] = k.clone();
        p = &p * &e;
    }
    let mut p_inv = MatQ::identity(n);
    for &(i, j, ref k) in elementary.iter().rev() {
        let mut e = MatQ::identity(n);
        e[(j, i)] = -k.clone();
        p_inv = &p_inv * &e;
    }
    assert_eq!(&p * &p_inv, MatQ::identity(n), "inverse bookkeeping");
    (p, p_inv)
}

/// Random monic polynomial of the given degree with coefficients in
/// [-bound, bound].
pub fn random_monic(degree: usize, bound: i64, rng: &mut ChaCha8Rng) -> PolyQ {
    let mut coeffs: Vec<Rat> = (0..degree).map(|_| q(rng.gen_range(-bound..=bound))).collect();
    coeffs.push(q(1));
    Poly::new(coeffs)
}

/// Random integer matrix with entries in [-bound, bound].
pub fn random_int_matrix(n: usize, bound: i64, rng: &mut ChaCha8Rng) -> MatQ {
    Mat::from_fn(n, |_, _| q(rng.gen_range(-bound..=bound)))
}
