//! Smith and Hermite normal forms over the integers, plus the linear-algebra
//! helpers built on them (kernels, exact integer solves, cokernels).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{FinAbGroup, IntMatrix};

/// Result of [`smith_normal_form`]: `u * m * v == d`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// Nonzero diagonal entries `d_1 | d_2 | ... | d_rank`.
    pub fn invariants(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form with minimal-absolute-value pivoting.
///
/// Returns unimodular `u`, `v` and diagonal `d` with `u * m * v == d`,
/// nonnegative diagonal, and `d[i][i] | d[i+1][i+1]`.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;

    while t < rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &a[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let p = a[(t, t)].clone();
            for i in t + 1..rows {
                if !a[(i, t)].is_zero() {
                    let q = -a[(i, t)].div_floor(&p);
                    a.add_row_multiple(i, t, &q);
                    u.add_row_multiple(i, t, &q);
                }
            }
            for j in t + 1..cols {
                if !a[(t, j)].is_zero() {
                    let q = -a[(t, j)].div_floor(&p);
                    a.add_col_multiple(j, t, &q);
                    v.add_col_multiple(j, t, &q);
                }
            }

            // A leftover remainder is smaller than the pivot; promote it.
            let mut smaller: Option<(usize, usize)> = None;
            for i in t + 1..rows {
                if !a[(i, t)].is_zero()
                    && smaller.is_none_or(|(bi, bj)| a[(i, t)].abs() < a[(bi, bj)].abs())
                {
                    smaller = Some((i, t));
                }
            }
            for j in t + 1..cols {
                if !a[(t, j)].is_zero()
                    && smaller.is_none_or(|(bi, bj)| a[(t, j)].abs() < a[(bi, bj)].abs())
                {
                    smaller = Some((t, j));
                }
            }
            if let Some((i, j)) = smaller {
                if j == t {
                    a.swap_rows(t, i);
                    u.swap_rows(t, i);
                } else {
                    a.swap_cols(t, j);
                    v.swap_cols(t, j);
                }
                continue;
            }

            // Row and column are clear; enforce divisibility of the trailing block.
            let p = a[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }

        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }

    let rank = (0..rows.min(cols)).take_while(|&i| !a[(i, i)].is_zero()).count();
    Smith { u, d: a, v, rank }
}

/// Isomorphism type of `Z^rows / image(m)`.
pub fn cokernel_structure(m: &IntMatrix) -> FinAbGroup {
    let s = smith_normal_form(m);
    FinAbGroup::from_smith_diagonal(&s.invariants(), m.rows() - s.rank)
}

/// Columns spanning `{x : m x = 0}`; the basis is saturated.
pub fn kernel_basis(m: &IntMatrix) -> IntMatrix {
    let s = smith_normal_form(m);
    let idx: Vec<usize> = (s.rank..m.cols()).collect();
    s.v.select_columns(&idx)
}

/// Kernel basis put in Hermite form (as columns), for reproducible output.
pub fn kernel_basis_hnf(m: &IntMatrix) -> IntMatrix {
    hermite_columns(&kernel_basis(m))
}

/// One integer solution `y` of `a * y == b`, if any exists.
pub fn solve_integer(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert_eq!(a.rows(), b.rows(), "solve: row mismatch");
    let s = smith_normal_form(a);
    let ub = &s.u * b;
    let mut z = IntMatrix::zeros(a.cols(), b.cols());
    for i in 0..a.rows() {
        for k in 0..b.cols() {
            let x = &ub[(i, k)];
            if i < s.rank {
                let d = &s.d[(i, i)];
                if !x.is_multiple_of(d) {
                    return None;
                }
                z[(i, k)] = x / d;
            } else if !x.is_zero() {
                return None;
            }
        }
    }
    Some(&s.v * &z)
}

/// Whether the vector lies in the Z-span of the columns of `a`.
pub fn in_column_span(a: &IntMatrix, v: &[BigInt]) -> bool {
    let b = IntMatrix::from_columns(v.len(), &[v.to_vec()]);
    if a.cols() == 0 {
        return b.is_zero();
    }
    solve_integer(a, &b).is_some()
}

/// Integer left inverse `l` with `l * a == I`, for `a` with saturated
/// full column rank (all invariant factors equal to 1).
pub fn left_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    let s = smith_normal_form(a);
    if s.rank != a.cols() || s.invariants().iter().any(|d| !d.is_one()) {
        return None;
    }
    // u a v = [I; 0]  =>  (v [I 0] u) a = I
    let n = a.cols();
    let mut proj = IntMatrix::zeros(n, a.rows());
    for i in 0..n {
        proj[(i, i)] = BigInt::one();
    }
    Some(&(&s.v * &proj) * &s.u)
}

/// Row-style Hermite normal form: upper echelon, positive pivots, entries
/// above each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Euclid on column c among rows r..
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !a[(i, c)].is_zero() && best.is_none_or(|b| a[(i, c)].abs() < a[(b, c)].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            a.swap_rows(r, b);
            let mut done = true;
            for i in r + 1..rows {
                if !a[(i, c)].is_zero() {
                    let q = -a[(i, c)].div_floor(&a[(r, c)]);
                    a.add_row_multiple(i, r, &q);
                    if !a[(i, c)].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if a[(r, c)].is_zero() {
            continue;
        }
        if a[(r, c)].is_negative() {
            a.negate_row(r);
        }
        let p = a[(r, c)].clone();
        for i in 0..r {
            let q = -a[(i, c)].div_floor(&p);
            a.add_row_multiple(i, r, &q);
        }
        pivots.push(c);
        r += 1;
    }
    let idx: Vec<usize> = (0..r).collect();
    a.transpose().select_columns(&idx).transpose()
}

/// Column-style Hermite form of the lattice spanned by the columns.
pub fn hermite_columns(m: &IntMatrix) -> IntMatrix {
    hermite_rows(&m.transpose()).transpose()
}
