//! Exact linear algebra over the rationals.
//!
//! Everything downstream reduces to ranks, kernels, and membership tests, so
//! this module offers two engines: a dense textbook `rref` for small systems
//! and an incremental sparse [`EchelonBuilder`] that keeps its rows in
//! reduced echelon form while absorbing one row at a time.  [`Subspace`]
//! wraps either engine's output in a canonical basis, making span equality a
//! plain row comparison.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat_int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parses `"p"` or `"p/q"`, signs allowed on the numerator.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::BadNumber(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(n, d))
}

pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Sparse vector: `(column, coefficient)` pairs, columns strictly increasing,
/// no zero coefficients.
pub type SparseRow = Vec<(u32, Rational)>;

pub fn dense_to_sparse(v: &[Rational]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u32, c.clone()))
        .collect()
}

pub fn sparse_to_dense(row: &[(u32, Rational)], ambient: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); ambient];
    for (c, v) in row {
        out[*c as usize] = v.clone();
    }
    out
}

/// Returns `a - c * b`; both inputs sorted by column.
fn sub_scaled(a: &SparseRow, b: &SparseRow, c: &Rational) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0usize, 0usize);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0);
        let cb = b.get(j).map(|e| e.0);
        match (ca, cb) {
            (Some(x), Some(y)) if x == y => {
                let v = &a[i].1 - c * &b[j].1;
                if !v.is_zero() {
                    out.push((x, v));
                }
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(a[i].clone());
                let _ = x;
                let _ = y;
                i += 1;
            }
            (Some(_), Some(_)) | (None, Some(_)) => {
                out.push((b[j].0, -(c * &b[j].1)));
                j += 1;
            }
            (Some(_), None) => {
                out.push(a[i].clone());
                i += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Incremental reduced-echelon accumulator.
///
/// Rows are kept fully reduced: each has leading coefficient 1 in its pivot
/// column, and no row has support on another row's pivot column.  As a
/// consequence a row's footprint never exceeds one pivot plus the current
/// set of free columns, which is what keeps large saturations affordable.
pub struct EchelonBuilder {
    ambient: usize,
    rows: Vec<SparseRow>,
    pivot_of_col: HashMap<u32, usize>,
}

impl EchelonBuilder {
    pub fn new(ambient: usize) -> Self {
        EchelonBuilder {
            ambient,
            rows: Vec::new(),
            pivot_of_col: HashMap::new(),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Fully reduces `row` against the accumulated rows.  The result has no
    /// support on any pivot column.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        loop {
            let hit = row.iter().find_map(|(c, v)| {
                self.pivot_of_col.get(c).map(|&ri| (v.clone(), ri))
            });
            match hit {
                Some((coeff, ri)) => row = sub_scaled(&row, &self.rows[ri], &coeff),
                None => return row,
            }
        }
    }

    /// Absorbs one row; returns `true` when it enlarged the span.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        let lead = row[0].1.clone();
        let pivot = row[0].0;
        if !lead.is_one() {
            for (_, v) in row.iter_mut() {
                *v /= &lead;
            }
        }
        for r in self.rows.iter_mut() {
            if let Ok(pos) = r.binary_search_by_key(&pivot, |e| e.0) {
                let c = r[pos].1.clone();
                *r = sub_scaled(r, &row, &c);
            }
        }
        self.pivot_of_col.insert(pivot, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn insert_dense(&mut self, v: &[Rational]) -> bool {
        self.insert(dense_to_sparse(v))
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    pub fn pivots(&self) -> Vec<u32> {
        let mut p: Vec<u32> = self.pivot_of_col.keys().copied().collect();
        p.sort_unstable();
        p
    }

    /// Canonical basis rows, sorted by pivot column.
    pub fn into_rows(self) -> Vec<SparseRow> {
        let mut rows = self.rows;
        rows.sort_by_key(|r| r[0].0);
        rows
    }
}

/// A linear subspace of `Q^ambient`, stored as its unique reduced-echelon
/// basis.  Equal spans compare equal.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<SparseRow>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, rows: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        let rows = (0..ambient as u32).map(|c| vec![(c, Rational::one())]).collect();
        Subspace { ambient, rows }
    }

    pub fn from_echelon(b: EchelonBuilder) -> Self {
        let ambient = b.ambient();
        Subspace { ambient, rows: b.into_rows() }
    }

    pub fn from_sparse_rows<I: IntoIterator<Item = SparseRow>>(ambient: usize, rows: I) -> Self {
        let mut b = EchelonBuilder::new(ambient);
        for r in rows {
            b.insert(r);
        }
        Subspace::from_echelon(b)
    }

    pub fn from_dense_rows(ambient: usize, rows: &[Vec<Rational>]) -> Self {
        Subspace::from_sparse_rows(ambient, rows.iter().map(|r| dense_to_sparse(r)))
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn basis_dense(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| sparse_to_dense(r, self.ambient)).collect()
    }

    pub fn pivots(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r[0].0).collect()
    }

    /// Columns that survive as coordinates on the quotient by this subspace.
    pub fn free_columns(&self) -> Vec<u32> {
        let pivots: Vec<u32> = self.pivots();
        let mut out = Vec::with_capacity(self.ambient - pivots.len());
        let mut pi = 0usize;
        for c in 0..self.ambient as u32 {
            if pi < pivots.len() && pivots[pi] == c {
                pi += 1;
            } else {
                out.push(c);
            }
        }
        out
    }

    fn as_builder(&self) -> EchelonBuilder {
        let mut pivot_of_col = HashMap::new();
        for (i, r) in self.rows.iter().enumerate() {
            pivot_of_col.insert(r[0].0, i);
        }
        EchelonBuilder { ambient: self.ambient, rows: self.rows.clone(), pivot_of_col }
    }

    /// Residue of `v` modulo this subspace: supported on free columns only,
    /// zero exactly when `v` lies in the span.
    pub fn residue(&self, v: SparseRow) -> SparseRow {
        self.as_builder().reduce(v)
    }

    pub fn contains_sparse(&self, v: SparseRow) -> bool {
        self.residue(v).is_empty()
    }

    pub fn contains_dense(&self, v: &[Rational]) -> bool {
        self.contains_sparse(dense_to_sparse(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        let b = other.as_builder();
        self.rows.iter().all(|r| b.reduce(r.clone()).is_empty())
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut b = self.as_builder();
        for r in &other.rows {
            b.insert(r.clone());
        }
        Subspace::from_echelon(b)
    }

    /// Orthogonal complement with respect to the standard dot product.
    pub fn complement(&self) -> Subspace {
        let pivots = self.pivots();
        let mut out = EchelonBuilder::new(self.ambient);
        for &f in &self.free_columns() {
            let mut v: SparseRow = vec![(f, Rational::one())];
            for (r, &p) in self.rows.iter().zip(&pivots) {
                if let Ok(pos) = r.binary_search_by_key(&f, |e| e.0) {
                    v.push((p, -r[pos].1.clone()));
                }
            }
            v.sort_by_key(|e| e.0);
            out.insert(v);
        }
        Subspace::from_echelon(out)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.complement().sum(&other.complement()).complement()
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} of {})", self.dim(), self.ambient)
    }
}

/// Dense rational matrix; meant for the small systems (arity-3 pairings,
/// generator substitutions, series coefficients).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl MatrixQ {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        MatrixQ { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatrixQ::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(MatrixQ { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut t = MatrixQ::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.at(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, rhs: &MatrixQ) -> Result<MatrixQ> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = MatrixQ::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.at(k, j);
                    if !b.is_zero() {
                        let v = out.at(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Rational::zero(); self.rows];
        for i in 0..self.rows {
            let mut acc = Rational::zero();
            for j in 0..self.cols {
                let a = self.at(i, j);
                if !a.is_zero() {
                    acc += a * &v[j];
                }
            }
            out[i] = acc;
        }
        Ok(out)
    }
}

/// Reduced row echelon form; returns the reduced matrix (zero rows kept in
/// place at the bottom) and the rank.
pub fn rref(m: &MatrixQ) -> (MatrixQ, usize) {
    let mut a = m.clone();
    let mut pivot_row = 0usize;
    for col in 0..a.cols {
        let Some(src) = (pivot_row..a.rows).find(|&r| !a.at(r, col).is_zero()) else {
            continue;
        };
        if src != pivot_row {
            for j in 0..a.cols {
                let x = a.at(src, j).clone();
                let y = a.at(pivot_row, j).clone();
                a.set(src, j, y);
                a.set(pivot_row, j, x);
            }
        }
        let lead = a.at(pivot_row, col).clone();
        for j in col..a.cols {
            let v = a.at(pivot_row, j) / &lead;
            a.set(pivot_row, j, v);
        }
        for r in 0..a.rows {
            if r == pivot_row || a.at(r, col).is_zero() {
                continue;
            }
            let f = a.at(r, col).clone();
            for j in col..a.cols {
                let v = a.at(r, j) - &f * a.at(pivot_row, j);
                a.set(r, j, v);
            }
        }
        pivot_row += 1;
        if pivot_row == a.rows {
            break;
        }
    }
    (a, pivot_row)
}

pub fn rank(m: &MatrixQ) -> usize {
    rref(m).1
}

/// Null space `{ v : m v = 0 }` as a subspace of `Q^cols`.
pub fn kernel_of(m: &MatrixQ) -> Subspace {
    let rows: Vec<SparseRow> = (0..m.nrows()).map(|i| dense_to_sparse(m.row(i))).collect();
    Subspace::from_sparse_rows(m.ncols(), rows).complement()
}

pub fn invert(m: &MatrixQ) -> Result<MatrixQ> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotInvertible(format!("{}x{} is not square", m.nrows(), m.ncols())));
    }
    let n = m.nrows();
    let mut aug = MatrixQ::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.at(i, j).clone());
        }
        aug.set(i, n + i, Rational::one());
    }
    let (red, rank) = rref(&aug);
    if rank < n || (0..n).any(|i| (0..n).any(|j| {
        let expect = if i == j { Rational::one() } else { Rational::zero() };
        *red.at(i, j) != expect
    })) {
        return Err(Error::NotInvertible("matrix is singular".into()));
    }
    let mut inv = MatrixQ::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, red.at(i, n + j).clone());
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> MatrixQ {
        MatrixQ::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| rat_int(x)).collect()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_rational("3").unwrap(), rat_int(3));
        assert_eq!(parse_rational("-5/10").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational(" 7/3 ").unwrap(), rat(7, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&rat(-4, 6)), "-2/3");
        assert_eq!(format_rational(&rat_int(9)), "9");
    }

    #[test]
    fn rref_collapses_dependent_rows() {
        let (r, rank) = rref(&m(&[&[1, 2], &[2, 4]]));
        assert_eq!(rank, 1);
        assert_eq!(r, m(&[&[1, 2], &[0, 0]]));
    }

    #[test]
    fn rref_of_identity_is_identity() {
        let id = MatrixQ::identity(4);
        let (r, rank) = rref(&id);
        assert_eq!(rank, 4);
        assert_eq!(r, id);
    }

    #[test]
    fn kernel_matches_hand_example() {
        // x + y + z = 0 has a plane of solutions.
        let k = kernel_of(&m(&[&[1, 1, 1]]));
        assert_eq!(k.dim(), 2);
        assert!(k.contains_dense(&[rat_int(1), rat_int(-1), rat_int(0)]));
        assert!(k.contains_dense(&[rat_int(0), rat_int(1), rat_int(-1)]));
        assert!(!k.contains_dense(&[rat_int(1), rat_int(0), rat_int(0)]));
    }

    #[test]
    fn builder_and_dense_rref_agree_on_rank() {
        let mat = m(&[&[2, 0, 4, 1], &[1, 1, 1, 1], &[3, 1, 5, 2], &[0, 2, -2, 1]]);
        let (_, dense_rank) = rref(&mat);
        let mut b = EchelonBuilder::new(4);
        for i in 0..mat.nrows() {
            b.insert_dense(mat.row(i));
        }
        assert_eq!(b.rank(), dense_rank);
    }

    #[test]
    fn builder_rows_stay_reduced() {
        let mut b = EchelonBuilder::new(3);
        b.insert_dense(&[rat_int(0), rat_int(2), rat_int(2)]);
        b.insert_dense(&[rat_int(1), rat_int(1), rat_int(0)]);
        b.insert_dense(&[rat_int(1), rat_int(0), rat_int(-1)]);
        assert_eq!(b.rank(), 2);
        let rows = b.into_rows();
        assert_eq!(rows[0], vec![(0, rat_int(1)), (2, rat_int(-1))]);
        assert_eq!(rows[1], vec![(1, rat_int(1)), (2, rat_int(1))]);
    }

    #[test]
    fn subspace_equality_is_span_equality() {
        let a = Subspace::from_dense_rows(3, &[
            vec![rat_int(1), rat_int(0), rat_int(1)],
            vec![rat_int(0), rat_int(1), rat_int(1)],
        ]);
        let b = Subspace::from_dense_rows(3, &[
            vec![rat_int(1), rat_int(1), rat_int(2)],
            vec![rat_int(1), rat_int(-1), rat_int(0)],
        ]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn complement_dim_and_double_complement() {
        let s = Subspace::from_dense_rows(4, &[
            vec![rat_int(1), rat_int(2), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(1), rat_int(3)],
        ]);
        let c = s.complement();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.complement(), s);
        for row in c.basis_dense() {
            for srow in s.basis_dense() {
                let dot: Rational =
                    row.iter().zip(&srow).map(|(x, y)| x * y).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn sum_and_intersection_dims() {
        let a = Subspace::from_dense_rows(3, &[
            vec![rat_int(1), rat_int(0), rat_int(0)],
            vec![rat_int(0), rat_int(1), rat_int(0)],
        ]);
        let b = Subspace::from_dense_rows(3, &[
            vec![rat_int(0), rat_int(1), rat_int(0)],
            vec![rat_int(0), rat_int(0), rat_int(1)],
        ]);
        let s = a.sum(&b);
        let i = a.intersect(&b);
        assert_eq!(s.dim(), 3);
        assert_eq!(i.dim(), 1);
        assert!(i.contains_dense(&[rat_int(0), rat_int(5), rat_int(0)]));
    }

    #[test]
    fn invert_round_trip() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = invert(&a).unwrap();
        assert_eq!(a.mul(&inv).unwrap(), MatrixQ::identity(2));
        assert!(invert(&m(&[&[1, 2], &[2, 4]])).is_err());
    }

    #[test]
    fn residue_lives_on_free_columns() {
        let s = Subspace::from_dense_rows(3, &[vec![rat_int(1), rat_int(1), rat_int(0)]]);
        let r = s.residue(dense_to_sparse(&[rat_int(2), rat_int(0), rat_int(1)]));
        // pivot column 0 is eliminated
        assert!(r.iter().all(|e| e.0 != 0));
        assert!(!r.is_empty());
        assert!(s.contains_dense(&[rat_int(-3), rat_int(-3), rat_int(0)]));
    }
}
