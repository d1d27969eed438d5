//! Partitions, Schur-functor dimensions, Gaussian binomials and
//! Littlewood–Richardson products truncated to a rectangle.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A weakly decreasing sequence of positive integers (trailing zeros are
/// stripped on construction).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    /// Builds a partition from parts already known to be weakly decreasing.
    ///
    /// # Panics
    /// If the parts are not weakly decreasing.
    pub fn from_parts(parts: &[usize]) -> Self {
        Self::new(parts.to_vec()).expect("parts must be weakly decreasing")
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The rectangle `(cols^rows)`.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 {
            return Self::empty();
        }
        Partition(vec![cols; rows])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    /// The `i`-th part (0-based), zero past the end.
    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn first(&self) -> usize {
        self.part(0)
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.first();
        Partition((0..cols).map(|j| self.0.iter().filter(|&&p| p > j).count()).collect())
    }

    pub fn fits(&self, bound: BoxBound) -> bool {
        self.length() <= bound.rows && self.first() <= bound.cols
    }

    /// Diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.length() <= self.length() && other.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Complement inside a rectangle, rotated by 180°: the partition `μ`
    /// with `μ_i = cols − λ_{rows+1−i}`.
    pub fn complement(&self, bound: BoxBound) -> Option<Partition> {
        if !self.fits(bound) {
            return None;
        }
        let parts = (0..bound.rows)
            .map(|i| bound.cols - self.part(bound.rows - 1 - i))
            .collect();
        Partition::new(parts).ok()
    }
}

/// A `rows × cols` rectangle bounding Young diagrams.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoxBound {
    pub rows: usize,
    pub cols: usize,
}

impl BoxBound {
    pub fn new(rows: usize, cols: usize) -> Self {
        BoxBound { rows, cols }
    }

    pub fn unbounded() -> Self {
        BoxBound {
            rows: usize::MAX,
            cols: usize::MAX,
        }
    }
}

/// Finitely supported graded dimensions, degree → dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GradedDims(pub BTreeMap<usize, u64>);

impl GradedDims {
    pub fn get(&self, degree: usize) -> u64 {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn top_degree(&self) -> usize {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    /// Dense list of dimensions in degrees `0, step, 2·step, …` up to the top.
    pub fn dense(&self, step: usize) -> Vec<u64> {
        (0..=self.top_degree() / step).map(|k| self.get(k * step)).collect()
    }

    /// From a dense list indexed by `degree / step`.
    pub fn from_dense(dims: &[u64], step: usize) -> Self {
        GradedDims(
            dims.iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(k, &d)| (k * step, d))
                .collect(),
        )
    }
}

/// `dim S_λ(C^n)` by the hook content formula.
pub fn dim_schur(p: &Partition, n: usize) -> u64 {
    if p.length() > n {
        return 0;
    }
    let conj = p.conjugate();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for (i, &row) in p.parts().iter().enumerate() {
        for j in 0..row {
            let content = (n + j - i) as u128;
            let hook = (row - j + conj.part(j) - i - 1) as u128;
            num = num.checked_mul(content).expect("Schur dimension overflow");
            den = den.checked_mul(hook).expect("Schur dimension overflow");
            let g = num.gcd(&den);
            num /= g;
            den /= g;
        }
    }
    debug_assert_eq!(den, 1);
    u64::try_from(num / den).expect("Schur dimension overflow")
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflow")
}

/// Dense Gaussian binomial `[N choose s]_q` as coefficients in `q`.
fn q_binomial(big_n: usize, s: usize) -> Vec<u64> {
    // table[k] holds [i choose k]_q for the current i.
    let mut table: Vec<Vec<u64>> = vec![vec![1]];
    for i in 1..=big_n {
        let mut next = vec![vec![1u64]; i + 1];
        for k in 1..i {
            // [i, k] = [i-1, k-1] + q^k [i-1, k]
            let a = &table[k - 1];
            let b = &table[k];
            let len = a.len().max(b.len() + k);
            let mut c = vec![0u64; len];
            for (d, v) in a.iter().enumerate() {
                c[d] += v;
            }
            for (d, v) in b.iter().enumerate() {
                c[d + k] += v;
            }
            next[k] = c;
        }
        table = next;
    }
    table[s].clone()
}

/// Poincaré polynomial of `Gr_s(C^N)` with the class of a partition of `k`
/// placed in degree `2k`.
pub fn gaussian_poincare(s: usize, big_n: usize) -> Result<GradedDims> {
    if s > big_n {
        return invalid(format!("gaussian_poincare: s = {s} exceeds N = {big_n}"));
    }
    Ok(GradedDims::from_dense(&q_binomial(big_n, s), 2))
}

/// Poincaré polynomial of the full flag variety of `C^n`,
/// `[n]_q! = ∏_{i=1}^n (1 + q + … + q^{i−1})`, with degrees doubled.
pub fn q_factorial(n: usize) -> GradedDims {
    let mut poly = vec![1u64];
    for i in 1..=n {
        let mut next = vec![0u64; poly.len() + i - 1];
        for (d, v) in poly.iter().enumerate() {
            for e in 0..i {
                next[d + e] += v;
            }
        }
        poly = next;
    }
    GradedDims::from_dense(&poly, 2)
}

/// All partitions of `k`, in reverse lexicographic order.
pub fn partitions_of(k: usize) -> Vec<Partition> {
    partitions_in_box_of_size(BoxBound::new(k, k), k)
}

/// All partitions of `k` fitting in `bound`, in reverse lexicographic order.
pub fn partitions_in_box_of_size(bound: BoxBound, k: usize) -> Vec<Partition> {
    fn rec(rem: usize, max_part: usize, rows_left: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rem == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if rows_left == 0 {
            return;
        }
        for part in (1..=max_part.min(rem)).rev() {
            cur.push(part);
            rec(rem - part, part, rows_left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, bound.cols.min(k), bound.rows, &mut Vec::new(), &mut out);
    out
}

/// All partitions fitting in a finite `bound`, ordered by size then reverse
/// lexicographically.
pub fn partitions_in_box(bound: BoxBound) -> Vec<Partition> {
    let max = bound.rows.saturating_mul(bound.cols);
    (0..=max)
        .flat_map(|k| partitions_in_box_of_size(bound, k))
        .collect()
}

/// Shapes obtained from `shape` by adding a horizontal strip of `k` boxes,
/// paired with the number of boxes added in each row.
fn add_horizontal_strips(shape: &[usize], k: usize, bound: BoxBound) -> Vec<(Vec<usize>, Vec<usize>)> {
    fn rec(
        shape: &[usize],
        row: usize,
        rem: usize,
        bound: BoxBound,
        cur: &mut Vec<usize>,
        added: &mut Vec<usize>,
        out: &mut Vec<(Vec<usize>, Vec<usize>)>,
    ) {
        let old = shape.get(row).copied().unwrap_or(0);
        if rem == 0 {
            let mut s = cur.clone();
            s.extend_from_slice(shape.get(row..).unwrap_or(&[]));
            let mut a = added.clone();
            a.resize(s.len(), 0);
            out.push((s, a));
            return;
        }
        if row >= bound.rows || row > shape.len() {
            return;
        }
        // A row may grow up to the old length of the row above.
        let cap = if row == 0 { bound.cols } else { shape[row - 1].min(bound.cols) };
        let max_add = cap.saturating_sub(old).min(rem);
        for add in 0..=max_add {
            cur.push(old + add);
            added.push(add);
            rec(shape, row + 1, rem - add, bound, cur, added, out);
            cur.pop();
            added.pop();
        }
    }
    let mut out = Vec::new();
    rec(shape, 0, k, bound, &mut Vec::new(), &mut Vec::new(), &mut out);
    for (s, a) in out.iter_mut() {
        while s.last() == Some(&0) {
            s.pop();
            a.pop();
        }
    }
    out
}

/// `s_p · s_q` expanded in Schur functions, keeping only shapes that fit in
/// `bound`. Coefficients are counted as Littlewood–Richardson tableaux:
/// fillings of `λ/p` with content `q` that are semistandard and whose
/// reverse reading word is a lattice word.
pub fn lr_expand_in_box(p: &Partition, q: &Partition, bound: BoxBound) -> Result<BTreeMap<Partition, u64>> {
    if !p.fits(bound) || !q.fits(bound) {
        return invalid(format!("lr_expand_in_box: {p} or {q} does not fit the box"));
    }
    // labels[row] lists the labels placed in that row, in increasing order.
    fn rec(
        shape: Vec<usize>,
        labels: Vec<Vec<usize>>,
        content: &[usize],
        label: usize,
        bound: BoxBound,
        out: &mut BTreeMap<Partition, u64>,
    ) {
        if label == content.len() {
            if is_lattice(&labels, content.len()) {
                *out.entry(Partition(shape)).or_insert(0) += 1;
            }
            return;
        }
        for (next, added) in add_horizontal_strips(&shape, content[label], bound) {
            // Label `label` may not sit above row `label` in an LR tableau.
            if added.iter().take(label).any(|&a| a > 0) {
                continue;
            }
            let mut nl = labels.clone();
            nl.resize(next.len(), Vec::new());
            for (row, &a) in added.iter().enumerate() {
                nl[row].extend(std::iter::repeat_n(label, a));
            }
            if !is_lattice(&nl, content.len()) {
                continue;
            }
            rec(next, nl, content, label + 1, bound, out);
        }
    }
    fn is_lattice(labels: &[Vec<usize>], nlabels: usize) -> bool {
        let mut counts = vec![0usize; nlabels];
        for row in labels {
            for &l in row.iter().rev() {
                counts[l] += 1;
                if l > 0 && counts[l] > counts[l - 1] {
                    return false;
                }
            }
        }
        true
    }
    let mut out = BTreeMap::new();
    rec(
        p.parts().to_vec(),
        vec![Vec::new(); p.length()],
        q.parts(),
        0,
        bound,
        &mut out,
    );
    Ok(out)
}

/// Number of semistandard tableaux of shape `shape` with content `content`
/// (a composition; zero entries allowed). Peels off the largest label as a
/// horizontal strip.
pub fn kostka(shape: &Partition, content: &[usize]) -> u64 {
    fn rec(shape: &[usize], content: &[usize]) -> u64 {
        let total: usize = shape.iter().sum();
        let Some((&last, rest)) = content.split_last() else {
            return u64::from(total == 0);
        };
        if total != content.iter().sum::<usize>() {
            return 0;
        }
        if last == 0 {
            return rec(shape, rest);
        }
        let mut count = 0;
        remove_strips(shape, 0, last, &mut shape.to_vec(), &mut |inner| {
            count += rec(inner, rest);
        });
        count
    }
    // Removes a horizontal strip of `k` boxes: row i may shrink down to the
    // original length of row i+1.
    fn remove_strips(shape: &[usize], row: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if k == 0 {
            let mut s = cur.clone();
            while s.last() == Some(&0) {
                s.pop();
            }
            f(&s);
            return;
        }
        if row >= shape.len() {
            return;
        }
        let floor = shape.get(row + 1).copied().unwrap_or(0);
        let max_remove = (shape[row] - floor).min(k);
        for r in 0..=max_remove {
            cur[row] = shape[row] - r;
            remove_strips(shape, row + 1, k - r, cur, f);
        }
        cur[row] = shape[row];
    }
    rec(shape.parts(), content)
}
