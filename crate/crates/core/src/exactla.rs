//! Exact linear algebra over arbitrary-precision rationals.
//!
//! Vectors are dense `Vec<Rational>`; matrices are stored sparsely and
//! reduced either densely (narrow matrices) or row-sparsely.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Threshold below which elimination runs on a dense copy.
pub const DENSE_COLS: usize = 64;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Render as `p` or `p/q`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => Some(Rational::from_integer(s.parse().ok()?)),
    }
}

/// Largest absolute value among the entries, zero for an empty slice.
pub fn max_abs(v: &[Rational]) -> Rational {
    v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Rational>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged dense matrix");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Rational>> =
            rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Setting a zero removes the entry.
    pub fn set(&mut self, i: usize, j: usize, x: Rational) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        if x.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), x);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: &Rational) {
        let cur = self.get(i, j);
        self.set(i, j, cur + x);
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.entries.iter()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut d = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (&(i, j), x) in &self.entries {
            d[i][j] = x.clone();
        }
        d
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Rational::zero(); self.rows];
        for (&(i, j), x) in &self.entries {
            if !v[j].is_zero() {
                out[i] += x * &v[j];
            }
        }
        out
    }

    fn sparse_rows(&self) -> Vec<BTreeMap<usize, Rational>> {
        let mut rows = vec![BTreeMap::new(); self.rows];
        for (&(i, j), x) in &self.entries {
            rows[i].insert(j, x.clone());
        }
        rows
    }
}

fn dense_rref(mut d: Vec<Vec<Rational>>, cols: usize) -> (Vec<Vec<Rational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == d.len() {
            break;
        }
        let Some(p) = (r..d.len()).find(|&i| !d[i][c].is_zero()) else { continue };
        d.swap(r, p);
        let inv = d[r][c].recip();
        for x in d[r].iter_mut() {
            *x *= &inv;
        }
        let prow = d[r].clone();
        for (i, row) in d.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&prow).skip(c) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (d, pivots)
}

fn sparse_rref(
    mut rows: Vec<BTreeMap<usize, Rational>>,
) -> (Vec<BTreeMap<usize, Rational>>, Vec<usize>) {
    // Forward elimination keyed by the leading column, then back substitution.
    let mut by_pivot: BTreeMap<usize, BTreeMap<usize, Rational>> = BTreeMap::new();
    for mut row in rows.drain(..) {
        loop {
            let Some((&c, _)) = row.iter().next() else { break };
            match by_pivot.get(&c) {
                Some(prow) => {
                    let f = row[&c].clone();
                    for (j, y) in prow {
                        let e = row.entry(*j).or_insert_with(Rational::zero);
                        *e -= &f * y;
                        if e.is_zero() {
                            row.remove(j);
                        }
                    }
                }
                None => {
                    let inv = row[&c].recip();
                    for x in row.values_mut() {
                        *x *= &inv;
                    }
                    by_pivot.insert(c, row);
                    break;
                }
            }
        }
    }
    let pivots: Vec<usize> = by_pivot.keys().copied().collect();
    for &c in pivots.iter().rev() {
        let prow = by_pivot[&c].clone();
        for (_, row) in by_pivot.range_mut(..c) {
            if let Some(f) = row.get(&c).cloned() {
                for (j, y) in &prow {
                    let e = row.entry(*j).or_insert_with(Rational::zero);
                    *e -= &f * y;
                    if e.is_zero() {
                        row.remove(j);
                    }
                }
            }
        }
    }
    (by_pivot.into_values().collect(), pivots)
}

/// Reduced row echelon form and the pivot columns.
pub fn rref(m: &SparseMatrix) -> (SparseMatrix, Vec<usize>) {
    let mut out = SparseMatrix::zeros(m.rows, m.cols);
    if m.cols < DENSE_COLS {
        let (d, pivots) = dense_rref(m.to_dense(), m.cols);
        for (i, row) in d.into_iter().enumerate().take(pivots.len()) {
            for (j, x) in row.into_iter().enumerate() {
                out.set(i, j, x);
            }
        }
        (out, pivots)
    } else {
        rref_sparse_path(m)
    }
}

/// The row-sparse elimination path regardless of width.
pub fn rref_sparse_path(m: &SparseMatrix) -> (SparseMatrix, Vec<usize>) {
    let mut out = SparseMatrix::zeros(m.rows, m.cols);
    let (rows, pivots) = sparse_rref(m.sparse_rows());
    for (i, row) in rows.into_iter().enumerate() {
        for (j, x) in row {
            out.set(i, j, x);
        }
    }
    (out, pivots)
}

pub fn rank(m: &SparseMatrix) -> usize {
    rref(m).1.len()
}

/// A basis of the nullspace, one vector per free column in increasing order.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![None; m.cols];
    for (i, &c) in pivots.iter().enumerate() {
        is_pivot[c] = Some(i);
    }
    let mut rows: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); pivots.len()];
    for (&(i, j), x) in r.entries() {
        rows[i].insert(j, x.clone());
    }
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| is_pivot[c].is_none()) {
        let mut v = vec![Rational::zero(); m.cols];
        v[free] = Rational::one();
        for (i, &c) in pivots.iter().enumerate() {
            if let Some(x) = rows[i].get(&free) {
                v[c] = -x.clone();
            }
        }
        basis.push(v);
    }
    basis
}

/// Some solution of `m x = rhs`, or `None` when inconsistent.
pub fn solve(m: &SparseMatrix, rhs: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(rhs.len(), m.rows, "rhs length must equal row count");
    let mut aug = m.clone();
    aug.cols += 1;
    for (i, x) in rhs.iter().enumerate() {
        aug.set(i, m.cols, x.clone());
    }
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![Rational::zero(); m.cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = r.get(i, m.cols);
    }
    Some(x)
}

/// Coefficients expressing `v` in terms of `vectors`, if possible.
pub fn in_span(vectors: &[Vec<Rational>], v: &[Rational]) -> Option<Vec<Rational>> {
    let n = v.len();
    assert!(vectors.iter().all(|u| u.len() == n), "vectors must share a length");
    let mut m = SparseMatrix::zeros(n, vectors.len());
    for (j, u) in vectors.iter().enumerate() {
        for (i, x) in u.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    solve(&m, v)
}

/// Incrementally maintained row space, used to test membership and to pick
/// complements greedily.
#[derive(Clone, Debug, Default)]
pub struct RowSpace {
    cols: usize,
    rows: BTreeMap<usize, BTreeMap<usize, Rational>>,
}

impl RowSpace {
    pub fn new(cols: usize) -> Self {
        RowSpace { cols, rows: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Rational]) -> BTreeMap<usize, Rational> {
        assert_eq!(v.len(), self.cols);
        let mut row: BTreeMap<usize, Rational> = v
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(j, x)| (j, x.clone()))
            .collect();
        for (&c, prow) in &self.rows {
            if let Some(f) = row.get(&c).cloned() {
                for (j, y) in prow {
                    let e = row.entry(*j).or_insert_with(Rational::zero);
                    *e -= &f * y;
                    if e.is_zero() {
                        row.remove(j);
                    }
                }
            }
        }
        row
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        let mut row = self.reduce(v);
        let Some((&c, _)) = row.iter().next() else { return false };
        let inv = row[&c].recip();
        for x in row.values_mut() {
            *x *= &inv;
        }
        for prow in self.rows.values_mut() {
            if let Some(f) = prow.get(&c).cloned() {
                for (j, y) in &row {
                    let e = prow.entry(*j).or_insert_with(Rational::zero);
                    *e -= &f * y;
                    if e.is_zero() {
                        prow.remove(j);
                    }
                }
            }
        }
        self.rows.insert(c, row);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_rref() {
        let (r, p) = rref(&SparseMatrix::identity(3));
        assert_eq!(r, SparseMatrix::identity(3));
        assert_eq!(p, vec![0, 1, 2]);
    }

    #[test]
    fn rank_one_rref() {
        let (r, p) = rref(&SparseMatrix::from_i64(&[&[2, 4], &[1, 2]]));
        assert_eq!(r, SparseMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernels() {
        assert!(kernel_basis(&SparseMatrix::identity(4)).is_empty());
        assert_eq!(kernel_basis(&SparseMatrix::zeros(2, 3)).len(), 3);
        let m = SparseMatrix::from_i64(&[&[1, 2, 3]]);
        let k = kernel_basis(&m);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_cases() {
        let e1 = vec![int(1), int(0)];
        assert_eq!(solve(&SparseMatrix::identity(2), &e1), Some(e1.clone()));
        let m = SparseMatrix::from_i64(&[&[1, 1]]);
        let x = solve(&m, &[int(2)]).unwrap();
        assert_eq!(&x[0] + &x[1], int(2));
        assert_eq!(solve(&SparseMatrix::from_i64(&[&[1], &[2]]), &[int(1), int(1)]), None);
    }

    #[test]
    fn span_cases() {
        let e1 = vec![int(1), int(0)];
        let e2 = vec![int(0), int(1)];
        assert_eq!(in_span(&[e1.clone(), e2.clone()], &[int(1), int(2)]), Some(vec![int(1), int(2)]));
        assert_eq!(in_span(&[e1], &e2), None);
        assert_eq!(in_span(&[], &[int(0), int(0)]), Some(vec![]));
    }

    #[test]
    fn empty_shapes() {
        let m = SparseMatrix::zeros(0, 3);
        assert_eq!(kernel_basis(&m).len(), 3);
        assert_eq!(rank(&SparseMatrix::zeros(3, 0)), 0);
    }

    #[test]
    fn set_zero_removes() {
        let mut m = SparseMatrix::zeros(2, 2);
        m.set(0, 1, int(3));
        m.set(0, 1, int(0));
        assert_eq!(m.nnz(), 0);
    }

    #[test]
    #[should_panic]
    fn out_of_bounds_set() {
        SparseMatrix::zeros(1, 1).set(1, 0, int(1));
    }

    #[test]
    fn rational_text_roundtrip() {
        for r in [rat(-3, 4), int(7), rat(0, 5)] {
            assert_eq!(parse_rational(&fmt_rational(&r)), Some(r));
        }
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn row_space_membership() {
        let mut s = RowSpace::new(3);
        assert!(s.insert(&[int(1), int(1), int(0)]));
        assert!(s.insert(&[int(0), int(1), int(1)]));
        assert!(!s.insert(&[int(1), int(2), int(1)]));
        assert!(s.contains(&[int(1), int(0), int(-1)]));
        assert!(!s.contains(&[int(0), int(0), int(1)]));
        assert_eq!(s.dim(), 2);
    }
}
