//! Exact linear algebra over ℚ.
//!
//! Ranks and determinants are computed fraction-free: each row is scaled to
//! an integer row by clearing its denominators, and elimination proceeds in
//! the style of Bareiss so that every intermediate entry stays an integer
//! (a minor of the scaled matrix). Reduction modulo a prime is available only
//! as an independent cross-check.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Exact rational scalar.
pub type Q = BigRational;

/// Shorthand for an integral rational.
pub fn q(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Shorthand for `num / den`.
pub fn q_frac(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Formats a rational as `a` or `a/b`.
pub fn q_to_string(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `a` or `a/b`.
pub fn q_parse(s: &str) -> Option<Q> {
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().ok()?;
            let b: BigInt = b.trim().parse().ok()?;
            if b.is_zero() {
                None
            } else {
                Some(Q::new(a, b))
            }
        }
        None => s.parse::<BigInt>().ok().map(Q::from_integer),
    }
}

/// Dense matrix with exact rational entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(q_to_string).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(q_to_string).collect())
            .collect();
        rows.serialize(serializer)
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    /// Builds a matrix from rows. All rows must have length `cols`.
    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<Q>>) -> Self {
        assert_eq!(entries.len(), rows, "row count mismatch");
        let mut data = Vec::with_capacity(rows * cols);
        for r in entries {
            assert_eq!(r.len(), cols, "row length mismatch");
            data.extend(r);
        }
        QMatrix { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[&[i64]]) -> Self {
        let e = entries
            .iter()
            .map(|r| r.iter().map(|&v| q(v)).collect())
            .collect();
        Self::from_rows(rows, cols, e)
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Q] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + a * b;
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, e: usize) -> QMatrix {
        assert_eq!(self.rows, self.cols);
        let mut result = Self::identity(self.rows);
        for _ in 0..e {
            result = result.mul(self);
        }
        result
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &QMatrix) -> QMatrix {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Rows scaled to primitive integer vectors. Row scaling preserves rank
    /// and changes the determinant by the product of the scale factors,
    /// which is returned alongside.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, Q) {
        let mut scale = Q::one();
        let rows = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                scale *= Q::from_integer(lcm.clone());
                row.iter()
                    .map(|x| x.numer() * (&lcm / x.denom()))
                    .collect()
            })
            .collect();
        (rows, scale)
    }

    pub fn rank(&self) -> usize {
        let (mut rows, _) = self.integer_rows();
        bareiss_eliminate(&mut rows, self.cols).rank
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn determinant(&self) -> Q {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return Q::one();
        }
        let (mut rows, scale) = self.integer_rows();
        let e = bareiss_eliminate(&mut rows, self.cols);
        if e.rank < self.rows {
            return Q::zero();
        }
        let mut det = Q::from_integer(rows[self.rows - 1][self.cols - 1].clone());
        if e.negate {
            det = -det;
        }
        det / scale
    }

    /// Gauss–Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let piv = (c..n).find(|&r| !a.get(r, c).is_zero())?;
            if piv != c {
                for j in 0..n {
                    a.data.swap(piv * n + j, c * n + j);
                    inv.data.swap(piv * n + j, c * n + j);
                }
            }
            let p = a.get(c, c).clone();
            for j in 0..n {
                let v = a.get(c, j) / &p;
                a.set(c, j, v);
                let v = inv.get(c, j) / &p;
                inv.set(c, j, v);
            }
            for r in 0..n {
                if r == c {
                    continue;
                }
                let factor = a.get(r, c).clone();
                if factor.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = a.get(r, j) - &factor * a.get(c, j);
                    a.set(r, j, v);
                    let v = inv.get(r, j) - &factor * inv.get(c, j);
                    inv.set(r, j, v);
                }
            }
        }
        Some(inv)
    }

    /// Rank over `F_p`, or `None` if some denominator vanishes mod `p`.
    pub fn rank_mod_p(&self, p: u64) -> Option<usize> {
        let pp = BigInt::from(p);
        let mut rows: Vec<Vec<u64>> = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            for x in self.row(i) {
                let den = x.denom().mod_floor(&pp).to_u64()?;
                if den == 0 {
                    return None;
                }
                let num = x.numer().mod_floor(&pp).to_u64()?;
                row.push(mul_mod(num, inv_mod(den, p), p));
            }
            rows.push(row);
        }
        Some(rank_mod_p_rows(&mut rows, self.cols, p))
    }
}

struct Elimination {
    rank: usize,
    negate: bool,
}

/// In-place fraction-free row echelon form. After return, row `rank-1`'s
/// pivot entry is the last Bareiss pivot, which for a full-rank square matrix
/// is the determinant (up to the recorded sign of row swaps).
fn bareiss_eliminate(m: &mut [Vec<BigInt>], cols: usize) -> Elimination {
    let rows = m.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    let mut negate = false;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        if piv != r {
            m.swap(piv, r);
            negate = !negate;
        }
        let (top, bottom) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in bottom.iter_mut() {
            let lead = row[c].clone();
            for j in c + 1..cols {
                let v = &pivot_row[c] * &row[j] - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    Elimination { rank: r, negate }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn rank_mod_p_rows(m: &mut [Vec<u64>], cols: usize, p: u64) -> usize {
    let rows = m.len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(piv, r);
        let inv = inv_mod(m[r][c], p);
        for j in c..cols {
            m[r][j] = mul_mod(m[r][j], inv, p);
        }
        for i in r + 1..rows {
            let f = m[i][c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = mul_mod(f, m[r][j], p);
                m[i][j] = (m[i][j] + p - sub) % p;
            }
        }
        r += 1;
    }
    r
}

/// Sparse integer row: strictly increasing column indices, nonzero values.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Converts a sparse rational row to a primitive integer row.
pub fn clear_denominators(row: &[(usize, Q)]) -> SparseRow {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let out: SparseRow = row
        .iter()
        .filter(|(_, x)| !x.is_zero())
        .map(|(c, x)| (*c, x.numer() * (&lcm / x.denom())))
        .collect();
    make_primitive(out)
}

fn make_primitive(mut row: SparseRow) -> SparseRow {
    let g = row
        .iter()
        .fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
    row
}

/// `b * row - a * pivot`, dropping zeros.
fn combine(row: &SparseRow, b: &BigInt, pivot: &SparseRow, a: &BigInt) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (col, v) = if ci < cj {
            i += 1;
            (ci, b * &row[i - 1].1)
        } else if cj < ci {
            j += 1;
            (cj, -(a * &pivot[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (ci, b * &row[i - 1].1 - a * &pivot[j - 1].1)
        };
        if !v.is_zero() {
            out.push((col, v));
        }
    }
    out
}

/// Incremental fraction-free row echelon form over ℤ (hence over ℚ).
///
/// Every stored row is primitive and has a distinct leading column. Entries
/// of a stored row live only at columns ≥ its leading column.
#[derive(Clone, Debug, Default)]
pub struct SparseEchelon {
    rows: Vec<SparseRow>,
    pivot_of: HashMap<usize, usize>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_of.contains_key(&col)
    }

    /// Reduces the leading entry until it is not a pivot column; returns the
    /// (primitive) residue.
    fn reduce_leading(&self, mut row: SparseRow) -> SparseRow {
        while let Some((col, lead)) = row.first().cloned() {
            let Some(&pi) = self.pivot_of.get(&col) else {
                break;
            };
            let piv = &self.rows[pi];
            let g = lead.gcd(&piv[0].1);
            let b = &piv[0].1 / &g;
            let a = &lead / &g;
            row = make_primitive(combine(&row, &b, piv, &a));
        }
        row
    }

    /// Adds a row; returns `true` when the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let row = self.reduce_leading(make_primitive(row));
        match row.first() {
            None => false,
            Some(&(col, _)) => {
                self.pivot_of.insert(col, self.rows.len());
                self.rows.push(row);
                true
            }
        }
    }

    pub fn insert_rational(&mut self, row: &[(usize, Q)]) -> bool {
        self.insert(clear_denominators(row))
    }

    /// Normal form of a rational vector: the unique vector congruent to it
    /// modulo the row span whose support avoids every pivot column.
    pub fn normal_form(&self, row: &[(usize, Q)]) -> Vec<(usize, Q)> {
        let lcm = row
            .iter()
            .fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
        let mut scale = Q::from_integer(lcm.clone());
        let mut cur: SparseRow = row
            .iter()
            .filter(|(_, x)| !x.is_zero())
            .map(|(c, x)| (*c, x.numer() * (&lcm / x.denom())))
            .collect();
        let mut cursor = 0usize;
        loop {
            let hit = cur
                .iter()
                .find(|(c, _)| *c >= cursor && self.pivot_of.contains_key(c))
                .cloned();
            let Some((col, val)) = hit else { break };
            let piv = &self.rows[self.pivot_of[&col]];
            let g = val.gcd(&piv[0].1);
            let b = &piv[0].1 / &g;
            let a = &val / &g;
            cur = combine(&cur, &b, piv, &a);
            scale *= Q::from_integer(b);
            cursor = col + 1;
        }
        cur.into_iter()
            .map(|(c, v)| (c, Q::from_integer(v) / &scale))
            .collect()
    }
}

/// Rank of a list of sparse rational rows.
pub fn sparse_rank<'a, I>(rows: I) -> usize
where
    I: IntoIterator<Item = &'a Vec<(usize, Q)>>,
{
    let mut e = SparseEchelon::new();
    for r in rows {
        e.insert_rational(r);
    }
    e.rank()
}

/// True when the integer is ±1.
pub fn is_unit(x: &BigInt) -> bool {
    x.abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_determinant_small() {
        let m = QMatrix::from_i64(3, 3, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 10]]);
        assert_eq!(m.rank(), 3);
        assert_eq!(m.determinant(), q(-3));
        let s = QMatrix::from_i64(3, 3, &[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(s.rank(), 2);
        assert_eq!(s.determinant(), q(0));
        assert_eq!(s.nullity(), 1);
    }

    #[test]
    fn determinant_with_row_swap_and_fractions() {
        let m = QMatrix::from_rows(
            2,
            2,
            vec![vec![q(0), q_frac(1, 2)], vec![q_frac(2, 3), q(5)]],
        );
        assert_eq!(m.determinant(), q_frac(-1, 3));
    }

    #[test]
    fn inverse_round_trip() {
        let m = QMatrix::from_i64(3, 3, &[&[2, 0, 1], &[1, 1, 0], &[0, 3, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(3));
        assert!(QMatrix::from_i64(2, 2, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn empty_matrices() {
        assert_eq!(QMatrix::zeros(0, 3).rank(), 0);
        assert_eq!(QMatrix::zeros(3, 0).rank(), 0);
        assert_eq!(QMatrix::zeros(0, 0).determinant(), q(1));
    }

    #[test]
    fn sparse_echelon_matches_dense_rank() {
        let m = QMatrix::from_i64(
            4,
            4,
            &[&[1, 2, 0, 1], &[2, 4, 0, 2], &[0, 1, 1, 0], &[1, 3, 1, 1]],
        );
        let rows: Vec<Vec<(usize, Q)>> = (0..4)
            .map(|i| {
                m.row(i)
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect()
            })
            .collect();
        assert_eq!(sparse_rank(&rows), m.rank());
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn normal_form_is_congruent_and_avoids_pivots() {
        let mut e = SparseEchelon::new();
        e.insert_rational(&[(0, q(2)), (2, q(1))]);
        e.insert_rational(&[(1, q(3)), (2, q(-1))]);
        let nf = e.normal_form(&[(0, q(1)), (1, q(1))]);
        // x0 ≡ -x2/2 and x1 ≡ x2/3, so x0 + x1 ≡ -x2/6.
        assert_eq!(nf, vec![(2, q_frac(-1, 6))]);
    }

    #[test]
    fn modular_rank_cross_check() {
        let m = QMatrix::from_i64(3, 4, &[&[1, 2, 3, 4], &[2, 3, 4, 5], &[3, 5, 7, 9]]);
        for p in [32003u64, 65537] {
            assert_eq!(m.rank_mod_p(p), Some(m.rank()));
        }
    }

    #[test]
    fn parse_and_format_rationals() {
        assert_eq!(q_parse("-3/6"), Some(q_frac(-1, 2)));
        assert_eq!(q_parse(" 7 "), Some(q(7)));
        assert_eq!(q_parse("1/0"), None);
        assert_eq!(q_to_string(&q_frac(4, -6)), "-2/3");
    }
}
