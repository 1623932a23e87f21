//! Exact integer lattice linear algebra.
//!
//! Kernels, saturation, and integral solvability are all decided through a
//! column-style Hermite reduction with a tracked unimodular transform, so
//! every answer is a certificate: kernel vectors generate the full saturated
//! kernel lattice, and integral solutions come from exact divisions that are
//! checked rather than assumed.

use crate::rational::{Int, Rational};
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Column Hermite reduction `a * u = h` with `u` unimodular.
///
/// `h` is in column echelon form: the topmost nonzero row of each nonzero
/// column strictly increases, pivots are positive, and columns past `rank`
/// are zero.
pub struct ColumnEchelon {
    pub h: Vec<Vec<Int>>,
    pub u: Vec<Vec<Int>>,
    /// `(row, col)` of each pivot in `h`, in column order.
    pub pivots: Vec<(usize, usize)>,
}

impl ColumnEchelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

fn identity(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Int::from(1) } else { Int::zero() })
                .collect()
        })
        .collect()
}

fn swap_columns(m: &mut [Vec<Int>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

fn negate_column(m: &mut [Vec<Int>], c: usize) {
    for row in m.iter_mut() {
        let v = std::mem::take(&mut row[c]);
        row[c] = -v;
    }
}

/// `col_dst -= q * col_src`, applied to both `h` and `u`.
fn subtract_column(h: &mut [Vec<Int>], u: &mut [Vec<Int>], dst: usize, src: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    for row in h.iter_mut() {
        let d = &row[dst] - q * &row[src];
        row[dst] = d;
    }
    for row in u.iter_mut() {
        let d = &row[dst] - q * &row[src];
        row[dst] = d;
    }
}

/// Computes the column echelon reduction of an integer matrix.
pub fn column_echelon(a: &[Vec<Int>]) -> ColumnEchelon {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut h: Vec<Vec<Int>> = a.to_vec();
    let mut u = identity(cols);
    let mut pivots = Vec::new();
    let mut next_col = 0usize;

    for row in 0..rows {
        if next_col == cols {
            break;
        }
        // Gcd-eliminate across columns next_col.. until row has one nonzero.
        loop {
            let mut best: Option<usize> = None;
            for c in next_col..cols {
                if !h[row][c].is_zero()
                    && best.is_none_or(|b| h[row][c].abs() < h[row][b].abs())
                {
                    best = Some(c);
                }
            }
            let Some(p) = best else { break };
            let mut others = false;
            for c in next_col..cols {
                if c != p && !h[row][c].is_zero() {
                    others = true;
                    let q = Int::div_floor(&h[row][c], &h[row][p]);
                    subtract_column(&mut h, &mut u, c, p, &q);
                }
            }
            if !others {
                swap_columns(&mut h, next_col, p);
                swap_columns(&mut u, next_col, p);
                if h[row][next_col].is_negative() {
                    negate_column(&mut h, next_col);
                    negate_column(&mut u, next_col);
                }
                pivots.push((row, next_col));
                next_col += 1;
                break;
            }
        }
    }
    ColumnEchelon { h, u, pivots }
}

/// Basis of the saturated integer kernel lattice `{x in Z^c : a x = 0}`,
/// canonicalized by row Hermite reduction.
pub fn integer_kernel(a: &[Vec<Int>], cols: usize) -> Vec<Vec<Int>> {
    if a.is_empty() {
        return row_hermite(identity(cols));
    }
    debug_assert!(a.iter().all(|r| r.len() == cols));
    let ech = column_echelon(a);
    let rank = ech.rank();
    let kernel: Vec<Vec<Int>> = (rank..cols)
        .map(|c| ech.u.iter().map(|row| row[c].clone()).collect())
        .collect();
    row_hermite(kernel)
}

/// Row Hermite normal form of the lattice spanned by `rows`: pivots positive,
/// entries above each pivot reduced into `[0, pivot)`, rows ordered by pivot
/// column, zero rows dropped. Canonical for the row lattice.
pub fn row_hermite(mut rows: Vec<Vec<Int>>) -> Vec<Vec<Int>> {
    if rows.is_empty() {
        return rows;
    }
    let cols = rows[0].len();
    let mut done = 0usize;
    for col in 0..cols {
        // Gcd-eliminate below `done` in this column.
        loop {
            let mut best: Option<usize> = None;
            for r in done..rows.len() {
                if !rows[r][col].is_zero()
                    && best.is_none_or(|b| rows[r][col].abs() < rows[b][col].abs())
                {
                    best = Some(r);
                }
            }
            let Some(p) = best else { break };
            let mut others = false;
            for r in done..rows.len() {
                if r != p && !rows[r][col].is_zero() {
                    others = true;
                    let q = Int::div_floor(&rows[r][col], &rows[p][col]);
                    let (head, tail) = rows.split_at_mut(r.max(p));
                    let (dst, src) = if r < p {
                        (&mut head[r], &tail[0])
                    } else {
                        (&mut tail[0], &head[p])
                    };
                    for (d, s) in dst.iter_mut().zip(src.iter()) {
                        let v = &*d - &q * s;
                        *d = v;
                    }
                }
            }
            if !others {
                rows.swap(done, p);
                if rows[done][col].is_negative() {
                    for v in rows[done].iter_mut() {
                        let nv = -std::mem::take(v);
                        *v = nv;
                    }
                }
                // Reduce entries above the pivot into [0, pivot).
                for r in 0..done {
                    if !rows[r][col].is_zero() {
                        let q = Int::div_floor(&rows[r][col], &rows[done][col]);
                        let (above, below) = rows.split_at_mut(done);
                        for (d, s) in above[r].iter_mut().zip(below[0].iter()) {
                            let v = &*d - &q * s;
                            *d = v;
                        }
                    }
                }
                done += 1;
                break;
            }
        }
    }
    rows.truncate(done);
    rows
}

/// Finds an integer solution of `a x = b`, if one exists. Free directions are
/// fixed to zero in the transformed coordinates, making the answer
/// deterministic.
pub fn solve_integer(a: &[Vec<Int>], b: &[Int]) -> Option<Vec<Int>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    if rows == 0 {
        return Some(vec![Int::zero(); cols]);
    }
    let ech = column_echelon(a);
    let mut y = vec![Int::zero(); cols];
    let mut next_row = 0usize;
    for &(prow, pcol) in &ech.pivots {
        // Rows skipped by pivots must already balance.
        for r in next_row..prow {
            let acc: Int = (0..pcol).map(|j| &ech.h[r][j] * &y[j]).sum();
            if acc != b[r] {
                return None;
            }
        }
        let acc: Int = (0..pcol).map(|j| &ech.h[prow][j] * &y[j]).sum();
        let residual = &b[prow] - acc;
        let (q, rem) = residual.div_rem(&ech.h[prow][pcol]);
        if !rem.is_zero() {
            return None;
        }
        y[pcol] = q;
        next_row = prow + 1;
    }
    for r in next_row..rows {
        let acc: Int = (0..cols).map(|j| &ech.h[r][j] * &y[j]).sum();
        if acc != b[r] {
            return None;
        }
    }
    let x = (0..cols)
        .map(|i| (0..cols).map(|j| &ech.u[i][j] * &y[j]).sum())
        .collect();
    Some(x)
}

/// Solves `a x = b` over the rationals by exact elimination, free variables
/// fixed to zero. Returns `None` when the system is inconsistent.
pub fn solve_rational(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut prow = 0usize;
    for col in 0..cols {
        let Some(p) = (prow..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(prow, p);
        let inv = m[prow][col].recip();
        for v in m[prow].iter_mut() {
            let nv = &*v * &inv;
            *v = nv;
        }
        for r in 0..rows {
            if r != prow && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let (src, dst) = if prow < r {
                    let (h, t) = m.split_at_mut(r);
                    (&h[prow], &mut t[0])
                } else {
                    let (h, t) = m.split_at_mut(prow);
                    (&t[0], &mut h[r])
                };
                for (d, s) in dst.iter_mut().zip(src.iter()) {
                    let v = &*d - &factor * s;
                    *d = v;
                }
            }
        }
        pivots.push((prow, col));
        prow += 1;
        if prow == rows {
            break;
        }
    }
    for r in prow..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rational::zero(); cols];
    for &(r, c) in &pivots {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

/// Clears denominators row-by-row, preserving kernels and solution sets.
/// The right-hand side entry, when present, must be appended to its row first.
pub fn clear_denominators(rows: &[Vec<Rational>]) -> Vec<Vec<Int>> {
    rows.iter()
        .map(|row| {
            let lcm = row
                .iter()
                .fold(Int::from(1), |acc, v| acc.lcm(v.denom()));
            row.iter()
                .map(|v| v.numer() * (&lcm / v.denom()))
                .collect()
        })
        .collect()
}
