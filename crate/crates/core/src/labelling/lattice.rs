//! Integer lattices in `Z^m`: Hermite normal form for membership, Smith
//! normal form for presenting quotients, and left kernels.
//!
//! Everything is exact over `BigInt`; elementary divisors of cycle lattices
//! overflow machine words quickly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Row = Vec<BigInt>;

fn is_zero_row(r: &[BigInt]) -> bool {
    r.iter().all(Zero::is_zero)
}

/// `a -= q * b`, entrywise.
fn sub_mul(a: &mut [BigInt], b: &[BigInt], q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x -= q * y;
    }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`: an echelon
/// basis with positive pivots and entries above each pivot reduced into
/// `[0, pivot)`. Returned with the pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub basis: Vec<Row>,
    pub pivots: Vec<usize>,
    pub dim: usize,
}

impl Hnf {
    pub fn new(rows: &[Row], dim: usize) -> Self {
        let mut work: Vec<Row> = rows.iter().filter(|r| !is_zero_row(r)).cloned().collect();
        let mut basis: Vec<Row> = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..dim {
            // gcd-combine every row with a nonzero entry in `col`
            let mut pivot: Option<Row> = None;
            let mut rest = Vec::with_capacity(work.len());
            for mut r in work.drain(..) {
                if r[col].is_zero() {
                    rest.push(r);
                    continue;
                }
                match pivot.as_mut() {
                    None => pivot = Some(r),
                    Some(p) => {
                        // Euclid on the column entries via unimodular row ops
                        while !r[col].is_zero() {
                            let q = p[col].div_floor(&r[col]);
                            sub_mul(p, &r, &q);
                            std::mem::swap(p, &mut r);
                        }
                        if !is_zero_row(&r) {
                            rest.push(r);
                        }
                    }
                }
            }
            work = rest;
            if let Some(mut p) = pivot {
                if p[col].is_negative() {
                    for x in p.iter_mut() {
                        *x = -x.clone();
                    }
                }
                for b in basis.iter_mut() {
                    let q = b[col].div_floor(&p[col]);
                    sub_mul(b, &p, &q);
                }
                basis.push(p);
                pivots.push(col);
            }
        }
        Hnf { basis, pivots, dim }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Whether `x` lies in the lattice.
    pub fn contains(&self, x: &[BigInt]) -> bool {
        let mut v: Row = x.to_vec();
        for (b, &col) in self.basis.iter().zip(&self.pivots) {
            if v[col].is_zero() {
                continue;
            }
            let (q, r) = v[col].div_rem(&b[col]);
            if !r.is_zero() {
                return false;
            }
            sub_mul(&mut v, b, &q);
        }
        is_zero_row(&v)
    }
}

/// Smith normal form `U A V = D` of a `k x m` generator matrix, with the
/// column transform `V` (unimodular, `m x m`).
///
/// The quotient `Z^m / rowspace(A)` is `⊕ Z / d_i`, and `y ↦ (y V)_i mod d_i`
/// is the quotient map (`d_i = 0` past the rank).
#[derive(Clone, Debug)]
pub struct Snf {
    /// Diagonal `d_1 | d_2 | ...`, length `m`; zeros past the rank.
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
    pub v: Vec<Row>,
}

impl Snf {
    pub fn new(rows: &[Row], dim: usize) -> Self {
        let mut a: Vec<Row> = rows.iter().filter(|r| !is_zero_row(r)).cloned().collect();
        let k = a.len();
        let mut v: Vec<Row> =
            (0..dim).map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        let swap_cols = |a: &mut Vec<Row>, v: &mut Vec<Row>, i: usize, j: usize| {
            if i != j {
                for r in a.iter_mut() {
                    r.swap(i, j);
                }
                for r in v.iter_mut() {
                    r.swap(i, j);
                }
            }
        };
        // col_j -= q col_i, mirrored on V
        let col_sub = |a: &mut Vec<Row>, v: &mut Vec<Row>, j: usize, i: usize, q: &BigInt| {
            if q.is_zero() {
                return;
            }
            for r in a.iter_mut() {
                let t = &r[i] * q;
                r[j] -= t;
            }
            for r in v.iter_mut() {
                let t = &r[i] * q;
                r[j] -= t;
            }
        };
        let mut rank = 0;
        for t in 0..k.min(dim) {
            // smallest nonzero entry of the trailing block
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(t, bi);
            swap_cols(&mut a, &mut v, t, bj);
            loop {
                let mut dirty = false;
                for i in t + 1..k {
                    if !a[i][t].is_zero() {
                        let q = a[i][t].div_floor(&a[t][t]);
                        let (head, tail) = a.split_at_mut(i);
                        sub_mul(&mut tail[0], &head[t], &q);
                        if !a[i][t].is_zero() {
                            a.swap(t, i);
                            dirty = true;
                        }
                    }
                }
                for j in t + 1..dim {
                    if !a[t][j].is_zero() {
                        let q = a[t][j].div_floor(&a[t][t]);
                        col_sub(&mut a, &mut v, j, t, &q);
                        if !a[t][j].is_zero() {
                            swap_cols(&mut a, &mut v, t, j);
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    continue;
                }
                // divisibility of the trailing block by the pivot
                let mut offender = None;
                'scan: for (i, row) in a.iter().enumerate().skip(t + 1) {
                    for x in row.iter().skip(t + 1) {
                        if !x.is_multiple_of(&a[t][t]) {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => {
                        let src = a[i].clone();
                        for (x, y) in a[t].iter_mut().zip(&src) {
                            *x += y;
                        }
                    }
                    None => break,
                }
            }
            if a[t][t].is_negative() {
                for x in a[t].iter_mut() {
                    *x = -x.clone();
                }
            }
            rank += 1;
        }
        let diagonal = (0..dim).map(|i| if i < rank { a[i][i].clone() } else { BigInt::zero() }).collect();
        Snf { diagonal, rank, v }
    }

    /// Image of `y` in `⊕ Z / d_i`, reduced into `[0, d_i)` where `d_i > 0`.
    pub fn coordinates(&self, y: &[BigInt]) -> Row {
        let dim = self.v.len();
        (0..dim)
            .map(|j| {
                let s: BigInt = y.iter().zip(&self.v).map(|(yi, row)| yi * &row[j]).sum();
                let d = &self.diagonal[j];
                if d.is_zero() {
                    s
                } else {
                    s.mod_floor(d)
                }
            })
            .collect()
    }

    pub fn contains(&self, y: &[BigInt]) -> bool {
        self.coordinates(y).iter().all(Zero::is_zero)
    }
}

/// A generating set of `{z : z M = 0}` for an `r x c` matrix `M`.
pub fn left_kernel(m: &[Row], cols: usize) -> Vec<Row> {
    let r = m.len();
    // [M | I_r], row reduce the M block; rows whose M block vanishes carry
    // kernel vectors in the identity block
    let mut aug: Vec<Row> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut v = row.clone();
            v.extend((0..r).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            v
        })
        .collect();
    let mut pivot_row = 0;
    for col in 0..cols {
        loop {
            let mut best: Option<usize> = None;
            for i in pivot_row..r {
                if !aug[i][col].is_zero() && best.is_none_or(|b| aug[i][col].abs() < aug[b][col].abs()) {
                    best = Some(i);
                }
            }
            let Some(b) = best else { break };
            aug.swap(pivot_row, b);
            let mut clean = true;
            for i in pivot_row + 1..r {
                if !aug[i][col].is_zero() {
                    let q = aug[i][col].div_floor(&aug[pivot_row][col]);
                    let (head, tail) = aug.split_at_mut(i);
                    sub_mul(&mut tail[0], &head[pivot_row], &q);
                    if !aug[i][col].is_zero() {
                        clean = false;
                    }
                }
            }
            if clean {
                pivot_row += 1;
                break;
            }
        }
        if pivot_row == r {
            break;
        }
    }
    aug.into_iter().filter(|row| is_zero_row(&row[..cols])).map(|row| row[cols..].to_vec()).collect()
}
