//! Brute-force `Tor_p^S(S/I, ℂ)_d` for ideals of minors.
//!
//! `S` is the polynomial ring on the entries `x_ij` of a generic `n × m`
//! matrix and `I` is generated by its `(t+1)`-minors. Everything is graded by
//! the torus of `GL(V₀) × GL(V₁)`: `x_ij` has weight `e_i ⊕ e_j ∈ ℤ^n ⊕ ℤ^m`,
//! and so do the minors. For each multidegree `w` we compute `(S/I)_w`
//! (monomials modulo the span of monomial multiples of minors), then the
//! homology of the Koszul complex `Λ^p(W) ⊗ S/I` in multidegree `w`.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lascoux::{betti_table, DetVarSpec};
use crate::linalg::{SparseEchelon, Q};
use crate::partition::{binomial, kostka};
use crate::poly::{graded_quotient_dims, Exponents, MultiPoly};

pub const MAX_VARIABLES: usize = 12;
pub const MAX_DEGREE: usize = 10;
pub const DEFAULT_MAX_CELLS: u64 = 2_000_000;
pub const MAX_CELLS_ENV: &str = "SUPERGRASS_MAX_CELLS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleJob {
    pub spec: DetVarSpec,
    pub p_max: usize,
    pub d_max: usize,
    /// Record the torus character of every `Tor_{p,d}`.
    pub characters: bool,
    /// Enumerate monomials in reverse order (changes every pivot choice).
    pub reverse_order: bool,
    pub parallel: bool,
}

impl OracleJob {
    pub fn new(spec: DetVarSpec, p_max: usize, d_max: usize) -> Self {
        OracleJob {
            spec,
            p_max,
            d_max,
            characters: false,
            reverse_order: false,
            parallel: false,
        }
    }

    pub fn with_characters(mut self, on: bool) -> Self {
        self.characters = on;
        self
    }

    pub fn reversed(mut self, on: bool) -> Self {
        self.reverse_order = on;
        self
    }

    pub fn with_parallel(mut self, on: bool) -> Self {
        self.parallel = on;
        self
    }

    /// Total size of the Koszul complex over the polynomial ring in degrees
    /// `≤ d_max`, an upper bound for the work done.
    pub fn estimated_cells(&self) -> u64 {
        let vars = self.spec.n * self.spec.m;
        let mut cells = 0u64;
        for d in 0..=self.d_max {
            for p in 0..=d.min(vars) {
                let monomials = if vars == 0 {
                    u64::from(d == p)
                } else {
                    binomial(vars + d - p - 1, d - p)
                };
                cells = cells.saturating_add(binomial(vars, p).saturating_mul(monomials));
            }
        }
        cells
    }

    pub fn check_bounds(&self) -> Result<()> {
        DetVarSpec::new(self.spec.n, self.spec.m, self.spec.t)?;
        let vars = self.spec.n * self.spec.m;
        if vars > MAX_VARIABLES {
            return Err(Error::ResourceBound(format!(
                "n·m = {vars} exceeds the oracle limit {MAX_VARIABLES}"
            )));
        }
        if self.d_max > MAX_DEGREE {
            return Err(Error::ResourceBound(format!(
                "d_max = {} exceeds the oracle limit {MAX_DEGREE}",
                self.d_max
            )));
        }
        let cap = max_cells()?;
        let cells = self.estimated_cells();
        if cells > cap {
            return Err(Error::ResourceBound(format!(
                "job needs about {cells} cells, cap is {cap} (set {MAX_CELLS_ENV} to raise it)"
            )));
        }
        Ok(())
    }
}

/// The cell cap, from the environment or the default.
pub fn max_cells() -> Result<u64> {
    match std::env::var(MAX_CELLS_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("{MAX_CELLS_ENV}={v:?} is not a nonnegative integer"))),
        Err(_) => Ok(DEFAULT_MAX_CELLS),
    }
}

/// A torus weight `(a, c) ∈ ℤ^n ⊕ ℤ^m` with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct WeightMult {
    pub v0: Vec<u32>,
    pub v1: Vec<u32>,
    pub mult: u64,
}

pub type Character = BTreeMap<(Vec<u32>, Vec<u32>), u64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorEntry {
    pub p: usize,
    pub d: usize,
    pub dim: u64,
    /// `dim (Λ^p W ⊗ S/I)_d`.
    pub complex_dim: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub character: Option<Vec<WeightMult>>,
}

/// Consistency checks run on every oracle computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OracleChecks {
    pub d_squared_zero: bool,
    pub euler: bool,
    /// `dim K_{0,d} = dim (S/I)_d` agrees with an independent quotient computation.
    pub quotient_matches: bool,
}

impl OracleChecks {
    pub fn all(&self) -> bool {
        self.d_squared_zero && self.euler && self.quotient_matches
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorDims {
    pub spec: DetVarSpec,
    pub p_max: usize,
    pub d_max: usize,
    pub entries: Vec<TorEntry>,
    /// `dim (S/I)_d` for `d = 0..=d_max`.
    pub quotient_dims: Vec<u64>,
    pub checks: OracleChecks,
}

impl TorDims {
    pub fn get(&self, p: usize, d: usize) -> u64 {
        self.entries
            .iter()
            .find(|e| e.p == p && e.d == d)
            .map_or(0, |e| e.dim)
    }

    /// Nonzero dimensions by `(p, d)`.
    pub fn betti_numbers(&self) -> BTreeMap<(usize, usize), u64> {
        self.entries
            .iter()
            .filter(|e| e.dim > 0)
            .map(|e| ((e.p, e.d), e.dim))
            .collect()
    }

    pub fn character(&self, p: usize, d: usize) -> Option<Character> {
        let e = self.entries.iter().find(|e| e.p == p && e.d == d)?;
        let ch = e.character.as_ref()?;
        Some(ch.iter().map(|w| ((w.v0.clone(), w.v1.clone()), w.mult)).collect())
    }
}

/// Compositions of `total` into `parts` nonnegative parts, lex ascending.
pub fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn rec(total: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=total {
            cur.push(x);
            rec(total - x, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts == 0 {
        if total == 0 {
            out.push(Vec::new());
        }
    } else {
        rec(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// Nonnegative `n × m` integer matrices with row sums `rows` and column sums
/// `cols`, flattened row-major, lex ascending.
fn contingency_tables(rows: &[u32], cols: &[u32]) -> Vec<Exponents> {
    let (n, m) = (rows.len(), cols.len());
    let mut out = Vec::new();
    if rows.iter().sum::<u32>() != cols.iter().sum::<u32>() {
        return out;
    }
    fn rec(
        v: usize,
        m: usize,
        rows: &mut Vec<u32>,
        cols: &mut Vec<u32>,
        cur: &mut Exponents,
        out: &mut Vec<Exponents>,
    ) {
        if v == cur.len() {
            if cols.iter().all(|&c| c == 0) {
                out.push(cur.clone());
            }
            return;
        }
        let (i, j) = (v / m, v % m);
        let hi = rows[i].min(cols[j]);
        let lo = if j + 1 == m { rows[i] } else { 0 };
        if lo > hi {
            return;
        }
        for x in lo..=hi {
            cur[v] = x;
            rows[i] -= x;
            cols[j] -= x;
            rec(v + 1, m, rows, cols, cur, out);
            rows[i] += x;
            cols[j] += x;
        }
        cur[v] = 0;
    }
    rec(0, m, &mut rows.to_vec(), &mut cols.to_vec(), &mut vec![0; n * m], &mut out);
    out
}

/// A minor as signed monomials together with its row and column sets.
struct Minor {
    rows: Vec<usize>,
    cols: Vec<usize>,
    terms: Vec<(Exponents, i64)>,
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize == k {
            out.push((0..n).filter(|i| mask >> i & 1 == 1).collect());
        }
    }
    out
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i64)> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, k: usize, out: &mut Vec<(Vec<usize>, i64)>) {
        if cur.len() == k {
            let mut inversions = 0;
            for a in 0..k {
                for b in a + 1..k {
                    if cur[a] > cur[b] {
                        inversions += 1;
                    }
                }
            }
            out.push((cur.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for x in 0..k {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(cur, used, k, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], k, &mut out);
    out
}

fn minors(n: usize, m: usize, size: usize) -> Vec<Minor> {
    if size > n.min(m) {
        return Vec::new();
    }
    let perms = permutations(size);
    let mut out = Vec::new();
    for rows in subsets(n, size) {
        for cols in subsets(m, size) {
            let terms = perms
                .iter()
                .map(|(perm, sign)| {
                    let mut e = vec![0u32; n * m];
                    for (a, &b) in perm.iter().enumerate() {
                        e[rows[a] * m + cols[b]] += 1;
                    }
                    (e, *sign)
                })
                .collect();
            out.push(Minor {
                rows: rows.clone(),
                cols,
                terms,
            });
        }
    }
    out
}

/// The `(t+1)`-minors of the generic `n × m` matrix as polynomials.
pub fn minor_generators(spec: DetVarSpec) -> Vec<MultiPoly> {
    let vars = spec.n * spec.m;
    minors(spec.n, spec.m, spec.t + 1)
        .into_iter()
        .map(|mi| MultiPoly::from_terms(vars, mi.terms.into_iter().map(|(e, s)| (e, Q::from_integer(s.into())))))
        .collect()
}

/// `(S/I)_w` for one multidegree `w`.
struct Piece {
    monomials: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
    basis: Vec<usize>,
    /// For every monomial, its normal form in basis coordinates.
    nf: Vec<Vec<(usize, Q)>>,
}

impl Piece {
    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn build(n: usize, w: &[u32], gens: &[Minor], reverse: bool) -> Piece {
        let (a, c) = w.split_at(n);
        let mut monomials = contingency_tables(a, c);
        if reverse {
            monomials.reverse();
        }
        let index: HashMap<Exponents, usize> = monomials.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();

        let mut ech = SparseEchelon::new();
        for g in gens {
            let mut ra = a.to_vec();
            let mut rc = c.to_vec();
            let fits = g.rows.iter().all(|&i| ra[i] > 0) && g.cols.iter().all(|&j| rc[j] > 0);
            if !fits {
                continue;
            }
            g.rows.iter().for_each(|&i| ra[i] -= 1);
            g.cols.iter().for_each(|&j| rc[j] -= 1);
            for mu in contingency_tables(&ra, &rc) {
                let mut row: Vec<(usize, Q)> = g
                    .terms
                    .iter()
                    .map(|(e, s)| {
                        let prod: Exponents = e.iter().zip(&mu).map(|(x, y)| x + y).collect();
                        (index[&prod], Q::from_integer((*s).into()))
                    })
                    .collect();
                row.sort_by_key(|(col, _)| *col);
                ech.insert_rational(&row);
            }
        }

        let basis: Vec<usize> = (0..monomials.len()).filter(|&i| !ech.is_pivot(i)).collect();
        let pos: HashMap<usize, usize> = basis.iter().enumerate().map(|(b, &i)| (i, b)).collect();
        let nf = (0..monomials.len())
            .map(|i| {
                if let Some(&b) = pos.get(&i) {
                    return vec![(b, Q::one())];
                }
                ech.normal_form(&[(i, Q::one())])
                    .into_iter()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(col, x)| (pos[&col], x))
                    .collect()
            })
            .collect();
        Piece {
            monomials,
            index,
            basis,
            nf,
        }
    }
}

fn maybe_par<T, R, F>(items: Vec<T>, parallel: bool, f: F) -> Vec<R>
where
    T: Send + Sync,
    R: Send,
    F: Fn(&T) -> R + Send + Sync,
{
    if parallel {
        items.par_iter().map(&f).collect()
    } else {
        items.iter().map(&f).collect()
    }
}

/// Homology data of the Koszul complex in a single multidegree.
struct MultiResult {
    w: Vec<u32>,
    complex: Vec<u64>,
    homology: Vec<u64>,
    d_squared_zero: bool,
}

fn var_weight(v: usize, n: usize, m: usize) -> (usize, usize) {
    (v / m, n + v % m)
}

fn koszul_at(
    w: &[u32],
    n: usize,
    m: usize,
    pieces: &HashMap<Vec<u32>, Piece>,
) -> MultiResult {
    let vars = n * m;
    let d: u32 = w[..n].iter().sum();
    let top = (d as usize).min(vars);

    let sub_mask = |mask: u32| -> Option<Vec<u32>> {
        let mut r = w.to_vec();
        for v in 0..vars {
            if mask >> v & 1 == 1 {
                let (i, j) = var_weight(v, n, m);
                if r[i] == 0 || r[j] == 0 {
                    return None;
                }
                r[i] -= 1;
                r[j] -= 1;
            }
        }
        Some(r)
    };

    // Basis of K_p: (mask, basis index in the piece at w − deg(mask)).
    let mut bases: Vec<Vec<(u32, usize)>> = Vec::with_capacity(top + 1);
    let mut positions: Vec<HashMap<(u32, usize), usize>> = Vec::with_capacity(top + 1);
    for p in 0..=top {
        let mut basis = Vec::new();
        for mask in 0u32..(1u32 << vars) {
            if mask.count_ones() as usize != p {
                continue;
            }
            if let Some(rest) = sub_mask(mask) {
                if let Some(piece) = pieces.get(&rest) {
                    basis.extend((0..piece.dim()).map(|b| (mask, b)));
                }
            }
        }
        positions.push(basis.iter().enumerate().map(|(i, x)| (*x, i)).collect());
        bases.push(basis);
    }

    // Rows of d_p : K_p → K_{p−1}.
    let boundary = |p: usize| -> Vec<Vec<(usize, Q)>> {
        bases[p]
            .iter()
            .map(|&(mask, b)| {
                let rest = sub_mask(mask).unwrap();
                let src = &pieces[&rest];
                let mono = &src.monomials[src.basis[b]];
                let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
                let mut k = 0;
                for v in 0..vars {
                    if mask >> v & 1 == 0 {
                        continue;
                    }
                    let sign = if k % 2 == 0 { Q::one() } else { -Q::one() };
                    k += 1;
                    let target_mask = mask ^ (1 << v);
                    let target_w = sub_mask(target_mask).unwrap();
                    let tgt = &pieces[&target_w];
                    let mut e = mono.clone();
                    e[v] += 1;
                    for (tb, c) in &tgt.nf[tgt.index[&e]] {
                        let col = positions[p - 1][&(target_mask, *tb)];
                        *acc.entry(col).or_insert_with(Q::zero) += &sign * c;
                    }
                }
                acc.into_iter().filter(|(_, x)| !x.is_zero()).collect()
            })
            .collect()
    };

    let mut ranks = vec![0usize; top + 2];
    let mut d_squared_zero = true;
    let mut previous: Option<Vec<Vec<(usize, Q)>>> = None;
    for p in 1..=top {
        let rows = boundary(p);
        if let Some(prev) = &previous {
            for row in &rows {
                let mut acc: BTreeMap<usize, Q> = BTreeMap::new();
                for (col, c) in row {
                    for (col2, c2) in &prev[*col] {
                        *acc.entry(*col2).or_insert_with(Q::zero) += c * c2;
                    }
                }
                if acc.values().any(|x| !x.is_zero()) {
                    d_squared_zero = false;
                }
            }
        }
        let mut ech = SparseEchelon::new();
        for row in &rows {
            ech.insert_rational(row);
        }
        ranks[p] = ech.rank();
        previous = Some(rows);
    }

    let complex: Vec<u64> = bases.iter().map(|b| b.len() as u64).collect();
    let homology = (0..=top)
        .map(|p| complex[p] - ranks[p] as u64 - ranks[p + 1] as u64)
        .collect();
    MultiResult {
        w: w.to_vec(),
        complex,
        homology,
        d_squared_zero,
    }
}

fn all_multidegrees(n: usize, m: usize, d_max: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for d in 0..=d_max as u32 {
        for a in compositions(d, n) {
            for c in compositions(d, m) {
                let mut w = a.clone();
                w.extend(&c);
                out.push(w);
            }
        }
    }
    out
}

/// Computes `Tor_p(S/I, ℂ)_d` for `p ≤ p_max`, `d ≤ d_max`.
///
/// All homological degrees are computed internally so that the Euler
/// characteristic check is meaningful; only `p ≤ p_max` is reported. Fails
/// with [`Error::Mismatch`] if `d² ≠ 0`, the Euler characteristic is off, or
/// the quotient dimensions disagree with [`graded_quotient_dims`].
pub fn tor_dims(job: &OracleJob) -> Result<TorDims> {
    job.check_bounds()?;
    let DetVarSpec { n, m, t } = job.spec;
    let gens = minors(n, m, t + 1);
    let degrees = all_multidegrees(n, m, job.d_max);

    let built = maybe_par(degrees.clone(), job.parallel, |w| {
        (w.clone(), Piece::build(n, w, &gens, job.reverse_order))
    });
    let pieces: HashMap<Vec<u32>, Piece> = built.into_iter().collect();
    let results = maybe_par(degrees, job.parallel, |w| koszul_at(w, n, m, &pieces));

    let mut complex: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut homology: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let mut chars: BTreeMap<(usize, usize), Character> = BTreeMap::new();
    let mut d_squared_zero = true;
    for r in &results {
        let d = r.w[..n].iter().sum::<u32>() as usize;
        d_squared_zero &= r.d_squared_zero;
        for (p, (&k, &h)) in r.complex.iter().zip(&r.homology).enumerate() {
            *complex.entry((p, d)).or_default() += k;
            *homology.entry((p, d)).or_default() += h;
            if job.characters && h > 0 {
                let key = (r.w[..n].to_vec(), r.w[n..].to_vec());
                chars.entry((p, d)).or_default().insert(key, h);
            }
        }
    }

    let mut euler = true;
    for d in 0..=job.d_max {
        let alt = |map: &BTreeMap<(usize, usize), u64>| -> i64 {
            map.iter()
                .filter(|((_, dd), _)| *dd == d)
                .map(|((p, _), &x)| if p % 2 == 0 { x as i64 } else { -(x as i64) })
                .sum()
        };
        euler &= alt(&complex) == alt(&homology);
    }

    let quotient_dims: Vec<u64> = (0..=job.d_max).map(|d| complex.get(&(0, d)).copied().unwrap_or(0)).collect();
    let vars = n * m;
    let independent = graded_quotient_dims(vars, &vec![1; vars], &minor_generators(job.spec), job.d_max as u32);
    let quotient_matches = match &independent {
        Ok(rep) => (0..=job.d_max).all(|d| rep.dims.get(d) == quotient_dims[d]),
        // Zero variables: S = ℚ, nothing to compare against.
        Err(_) if vars == 0 => quotient_dims.iter().enumerate().all(|(d, &x)| x == u64::from(d == 0)),
        Err(e) => return Err(e.clone()),
    };

    let checks = OracleChecks {
        d_squared_zero,
        euler,
        quotient_matches,
    };
    if !checks.all() {
        return Err(Error::Mismatch(format!("oracle self-check failed for {:?}: {:?}", job.spec, checks)));
    }

    let mut entries = Vec::new();
    for d in 0..=job.d_max {
        for p in 0..=job.p_max.min(d) {
            let character = job.characters.then(|| {
                chars
                    .get(&(p, d))
                    .map(|ch| {
                        ch.iter()
                            .map(|((a, c), &mult)| WeightMult {
                                v0: a.clone(),
                                v1: c.clone(),
                                mult,
                            })
                            .collect()
                    })
                    .unwrap_or_default()
            });
            entries.push(TorEntry {
                p,
                d,
                dim: homology.get(&(p, d)).copied().unwrap_or(0),
                complex_dim: complex.get(&(p, d)).copied().unwrap_or(0),
                character,
            });
        }
    }

    Ok(TorDims {
        spec: job.spec,
        p_max: job.p_max,
        d_max: job.d_max,
        entries,
        quotient_dims,
        checks,
    })
}

/// Runs the job with forward and reversed monomial orders and compares.
pub fn order_independent(job: &OracleJob) -> Result<bool> {
    let a = tor_dims(&job.reversed(false))?;
    let b = tor_dims(&job.reversed(true))?;
    Ok(a.entries == b.entries && a.quotient_dims == b.quotient_dims)
}

/// Torus character of the Lascoux summands at `(p, d)`.
pub fn lascoux_character(spec: DetVarSpec, p: usize, d: usize) -> Result<Character> {
    let table = betti_table(spec)?;
    let mut out = Character::new();
    for e in table.entries.iter().filter(|e| e.p == p && e.d == d) {
        let a_weights = compositions(e.rep.p.size() as u32, spec.n);
        let c_weights = compositions(e.rep.q.size() as u32, spec.m);
        for a in &a_weights {
            let ka = kostka(&e.rep.p, &a.iter().map(|&x| x as usize).collect::<Vec<_>>());
            if ka == 0 {
                continue;
            }
            for c in &c_weights {
                let kc = kostka(&e.rep.q, &c.iter().map(|&x| x as usize).collect::<Vec<_>>());
                if kc > 0 {
                    *out.entry((a.clone(), c.clone())).or_default() += ka * kc;
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompareRow {
    pub p: usize,
    pub d: usize,
    pub lascoux: u64,
    pub oracle: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub characters_equal: Option<bool>,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub spec: DetVarSpec,
    pub d_max: usize,
    pub rows: Vec<CompareRow>,
    pub checks: OracleChecks,
    pub all_equal: bool,
}

impl Comparison {
    pub fn first_mismatch(&self) -> Option<&CompareRow> {
        self.rows.iter().find(|r| !r.equal)
    }
}

/// Compares the closed-form Betti table with the oracle in every bidegree
/// `d ≤ d_max`.
pub fn compare_with_lascoux(spec: DetVarSpec, d_max: usize, characters: bool, parallel: bool) -> Result<Comparison> {
    let job = OracleJob::new(spec, spec.n * spec.m, d_max)
        .with_characters(characters)
        .with_parallel(parallel);
    let tor = tor_dims(&job)?;
    let table = betti_table(spec)?;
    let mut rows = Vec::new();
    for e in &tor.entries {
        let lascoux = table.dim_at(e.p, e.d);
        let characters_equal = if characters {
            let want = lascoux_character(spec, e.p, e.d)?;
            Some(tor.character(e.p, e.d).unwrap_or_default() == want)
        } else {
            None
        };
        rows.push(CompareRow {
            p: e.p,
            d: e.d,
            lascoux,
            oracle: e.dim,
            characters_equal,
            equal: lascoux == e.dim && characters_equal != Some(false),
        });
    }
    let all_equal = rows.iter().all(|r| r.equal);
    Ok(Comparison {
        spec,
        d_max,
        rows,
        checks: tor.checks,
        all_equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize, m: usize, t: usize) -> DetVarSpec {
        DetVarSpec::new(n, m, t).unwrap()
    }

    fn run(n: usize, m: usize, t: usize, d: usize) -> TorDims {
        tor_dims(&OracleJob::new(spec(n, m, t), n * m, d)).unwrap()
    }

    #[test]
    fn one_variable() {
        let tor = run(1, 1, 0, 4);
        let want: BTreeMap<(usize, usize), u64> = [((0, 0), 1), ((1, 1), 1)].into();
        assert_eq!(tor.betti_numbers(), want);
        assert_eq!(tor.quotient_dims, vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn determinant_hypersurface() {
        let tor = run(2, 2, 1, 6);
        let want: BTreeMap<(usize, usize), u64> = [((0, 0), 1), ((1, 2), 1)].into();
        assert_eq!(tor.betti_numbers(), want);
        // S/(det): C(d+3,3) − C(d+1,3).
        assert_eq!(tor.quotient_dims, vec![1, 4, 9, 16, 25, 36, 49]);
    }

    #[test]
    fn eagon_northcott() {
        let tor = run(3, 2, 1, 5);
        let want: BTreeMap<(usize, usize), u64> = [((0, 0), 1), ((1, 2), 3), ((2, 3), 2)].into();
        assert_eq!(tor.betti_numbers(), want);
    }

    #[test]
    fn cubic_determinant() {
        let tor = run(3, 3, 2, 4);
        let want: BTreeMap<(usize, usize), u64> = [((0, 0), 1), ((1, 3), 1)].into();
        assert_eq!(tor.betti_numbers(), want);
    }

    #[test]
    fn polynomial_ring_is_free() {
        let tor = run(2, 1, 1, 4);
        let want: BTreeMap<(usize, usize), u64> = [((0, 0), 1)].into();
        assert_eq!(tor.betti_numbers(), want);
        assert_eq!(tor.quotient_dims, vec![1, 2, 3, 4, 5]);
    }

    #[test]
    fn exterior_case_is_binomial() {
        let tor = run(2, 2, 0, 4);
        for p in 0..=4 {
            assert_eq!(tor.get(p, p), binomial(4, p));
        }
        assert_eq!(tor.betti_numbers().len(), 5);
    }

    #[test]
    fn empty_spaces() {
        let tor = run(0, 3, 0, 3);
        let want: BTreeMap<(usize, usize), u64> = [((0, 0), 1)].into();
        assert_eq!(tor.betti_numbers(), want);
    }

    #[test]
    fn reversed_order_agrees() {
        for (n, m, t) in [(2, 2, 1), (3, 2, 1), (2, 3, 1), (2, 2, 0)] {
            assert!(order_independent(&OracleJob::new(spec(n, m, t), 6, 4)).unwrap());
        }
    }

    #[test]
    fn parallel_agrees() {
        let job = OracleJob::new(spec(3, 2, 1), 6, 4).with_characters(true);
        assert_eq!(tor_dims(&job).unwrap(), tor_dims(&job.with_parallel(true)).unwrap());
    }

    #[test]
    fn compare_small() {
        for (n, m, t, d) in [(2, 2, 1, 6), (3, 2, 1, 6), (2, 2, 0, 4)] {
            let c = compare_with_lascoux(spec(n, m, t), d, false, false).unwrap();
            assert!(c.all_equal, "{:?}", c.first_mismatch());
        }
    }

    #[test]
    fn characters_match_schur_weights() {
        for (n, m, t, d) in [(2, 2, 1, 4), (3, 2, 1, 4), (2, 2, 0, 4), (2, 3, 1, 4)] {
            let c = compare_with_lascoux(spec(n, m, t), d, true, false).unwrap();
            assert!(c.all_equal, "({n},{m},{t}) {:?}", c.first_mismatch());
        }
    }

    #[test]
    fn minors_are_homogeneous() {
        let g = minor_generators(spec(3, 3, 1));
        assert_eq!(g.len(), 9);
        assert!(g.iter().all(|x| x.num_terms() == 2 && x.is_homogeneous(&[1; 9])));
    }

    #[test]
    fn bounds() {
        let too_big = OracleJob::new(spec(4, 4, 1), 2, 2);
        assert!(matches!(tor_dims(&too_big), Err(Error::ResourceBound(_))));
        let too_deep = OracleJob::new(spec(2, 2, 1), 2, 11);
        assert!(matches!(tor_dims(&too_deep), Err(Error::ResourceBound(_))));
    }

    #[test]
    fn contingency_counts() {
        // 2×2 tables with margins (1,1),(1,1): the two permutation matrices.
        assert_eq!(contingency_tables(&[1, 1], &[1, 1]).len(), 2);
        assert_eq!(contingency_tables(&[2, 1], &[1, 1]).len(), 0);
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(0, 0), vec![Vec::<u32>::new()]);
    }
}
