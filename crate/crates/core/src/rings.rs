//! Splitting rings, factorization rings, Sylvester matrices and discriminants.
//!
//! Elements of a ring over a base `A = ℚ[a_1, …, a_k]` are [`MultiPoly`]s in
//! the base variables followed by the new generators. Degrees follow the
//! cohomological convention: each `ξ_i` has degree 2 and `b_i` degree `2i`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::error::{invalid, Result};
use crate::linalg::{q, QMatrix, Q};
use crate::partition::{binomial, GradedDims};
use crate::poly::{filtered_quotient_dims, graded_quotient_dims, Exponents, MultiPoly, QPoly, UniPoly};

/// A ring presentation `ℚ[vars] / (relations)` for JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Presentation {
    pub vars: Vec<String>,
    pub weights: Vec<u32>,
    pub relations: Vec<String>,
}

fn base_names(k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("a{i}")).collect()
}

/// Weights `2, 4, …, 2n` of the coefficients of the universal monic polynomial.
pub fn universal_weights(n: usize) -> Vec<u32> {
    (1..=n as u32).map(|i| 2 * i).collect()
}

/// Monic polynomial over ℚ as a [`UniPoly`] with no coefficient variables.
pub fn specialize(f: &QPoly) -> Result<UniPoly> {
    if f.is_zero() || !f.leading().is_one() {
        return invalid(format!("{f} is not monic"));
    }
    Ok(UniPoly::from_rationals(0, f.coeffs()))
}

/// Replaces `x_var` by the remainder of division by `g(x_var)` for a monic `g`.
fn reduce_var(p: &MultiPoly, var: usize, g: &UniPoly) -> MultiPoly {
    let nvars = p.nvars();
    let as_uni = UniPoly::new(nvars, p.coefficients_in(var));
    let (_, rem) = as_uni.monic_divmod(g).expect("tower polynomial is monic");
    let x = MultiPoly::var(nvars, var);
    rem.coeffs()
        .iter()
        .enumerate()
        .fold(MultiPoly::zero(nvars), |acc, (k, c)| &acc + &(c * &x.pow(k as u32)))
}

/// Elementary symmetric polynomial `e_i` of the given variables.
fn elementary(nvars: usize, vars: &[usize], i: usize) -> MultiPoly {
    let mut e = vec![MultiPoly::one(nvars)];
    for &v in vars {
        let x = MultiPoly::var(nvars, v);
        let mut next = e.clone();
        for j in 1..e.len() {
            next[j] = &e[j] + &(&e[j - 1] * &x);
        }
        next.push(&e[e.len() - 1] * &x);
        e = next;
    }
    e.get(i).cloned().unwrap_or_else(|| MultiPoly::zero(nvars))
}

/// `Split_A(f)`: the universal `A`-algebra over which `f = ∏ (u − ξ_i)`.
#[derive(Clone, Debug)]
pub struct SplitRing {
    base_nvars: usize,
    base_weights: Vec<u32>,
    f: UniPoly,
    n: usize,
    /// `tower[i]` is `f / ((u − ξ_1)…(u − ξ_i))` over the full variable set.
    tower: Vec<UniPoly>,
}

impl SplitRing {
    /// `f` must be monic of degree `n ≥ 0` over `A = ℚ[x_0..x_{k-1}]`.
    pub fn new(f: &UniPoly, base_weights: &[u32]) -> Result<Self> {
        if !f.is_monic() {
            return invalid("splitting ring needs a monic polynomial");
        }
        let k = f.nvars();
        if base_weights.len() != k {
            return invalid("one weight per base variable expected");
        }
        let n = f.degree().unwrap();
        let total = k + n;
        let mut tower = vec![f.embed(total, 0)];
        for i in 0..n {
            let lin = UniPoly::new(total, vec![-MultiPoly::var(total, k + i), MultiPoly::one(total)]);
            let (quo, _) = tower[i].monic_divmod(&lin)?;
            tower.push(quo);
        }
        Ok(SplitRing {
            base_nvars: k,
            base_weights: base_weights.to_vec(),
            f: f.clone(),
            n,
            tower,
        })
    }

    /// Splitting ring of the universal monic polynomial of degree `n`.
    pub fn universal(n: usize) -> Self {
        Self::new(&UniPoly::universal_monic(n), &universal_weights(n)).expect("universal polynomial is monic")
    }

    /// Splitting ring of a monic polynomial with rational coefficients.
    pub fn specialized(f: &QPoly) -> Result<Self> {
        Self::new(&specialize(f)?, &[])
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn nvars(&self) -> usize {
        self.base_nvars + self.n
    }

    pub fn f(&self) -> &UniPoly {
        &self.f
    }

    /// `ξ_i` for `1 ≤ i ≤ n`.
    pub fn xi(&self, i: usize) -> MultiPoly {
        assert!(1 <= i && i <= self.n);
        MultiPoly::var(self.nvars(), self.base_nvars + i - 1)
    }

    /// A base-ring element embedded in the full ring.
    pub fn base(&self, a: &MultiPoly) -> MultiPoly {
        a.embed(self.nvars(), 0)
    }

    pub fn weights(&self) -> Vec<u32> {
        let mut w = self.base_weights.clone();
        w.extend(std::iter::repeat_n(2, self.n));
        w
    }

    /// The `n` relations `a_i − (−1)^i e_i(ξ)`, where `a_i` is the
    /// coefficient of `u^{n−i}`.
    pub fn relations(&self) -> Vec<MultiPoly> {
        let total = self.nvars();
        let xis: Vec<usize> = (self.base_nvars..total).collect();
        (1..=self.n)
            .map(|i| {
                let a = self.base(&self.f.coeff(self.n - i));
                let e = elementary(total, &xis, i);
                let e = if i % 2 == 0 { e } else { -e };
                &a - &e
            })
            .collect()
    }

    /// Reduces an element to the span of the staircase monomials.
    pub fn reduce(&self, x: &MultiPoly) -> MultiPoly {
        assert_eq!(x.nvars(), self.nvars());
        (1..=self.n).rev().fold(x.clone(), |acc, i| {
            reduce_var(&acc, self.base_nvars + i - 1, &self.tower[i - 1])
        })
    }

    /// Staircase coordinates: `ξ`-exponent vector `e` (with `e_i ≤ n − i`)
    /// mapped to its coefficient in `A`.
    pub fn normal_form(&self, x: &MultiPoly) -> BTreeMap<Exponents, MultiPoly> {
        let k = self.base_nvars;
        let mut out: BTreeMap<Exponents, MultiPoly> = BTreeMap::new();
        for (e, c) in self.reduce(x).terms() {
            let coeff = MultiPoly::monomial(k, e[..k].to_vec(), c.clone());
            let slot = out.entry(e[k..].to_vec()).or_insert_with(|| MultiPoly::zero(k));
            *slot = &*slot + &coeff;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// `{ξ^e : 0 ≤ e_i ≤ n − i}`.
    pub fn staircase_basis(&self) -> Vec<Exponents> {
        let mut out: Vec<Exponents> = vec![Vec::new()];
        for i in 1..=self.n {
            out = out
                .into_iter()
                .flat_map(|e| {
                    (0..=(self.n - i) as u32).map(move |k| {
                        let mut e = e.clone();
                        e.push(k);
                        e
                    })
                })
                .collect();
        }
        out
    }

    /// Trace of the permutation `ξ_i ↦ ξ_{perm[i−1]}` on the staircase basis.
    /// Only meaningful over a field, i.e. for a specialized ring.
    pub fn permutation_trace(&self, perm: &[usize]) -> Result<Q> {
        if self.base_nvars != 0 {
            return invalid("permutation traces need rational coefficients");
        }
        if perm.len() != self.n {
            return invalid("permutation has the wrong length");
        }
        let total = self.nvars();
        let mut trace = Q::zero();
        for e in self.staircase_basis() {
            let img = e.iter().enumerate().fold(MultiPoly::one(total), |acc, (i, &k)| {
                &acc * &MultiPoly::var(total, perm[i] - 1).pow(k)
            });
            let nf = self.normal_form(&img);
            if let Some(c) = nf.get(&e) {
                trace += c.as_constant().expect("rational coefficients");
            }
        }
        Ok(trace)
    }

    pub fn presentation(&self) -> Presentation {
        let mut vars = base_names(self.base_nvars);
        vars.extend((1..=self.n).map(|i| format!("xi{i}")));
        Presentation {
            relations: self.relations().iter().map(|r| r.display_with(&vars)).collect(),
            weights: self.weights(),
            vars,
        }
    }
}

/// `Fact^{p,q}_A(f)`: the universal `A`-algebra over which `f = g·h` with `g`
/// monic of degree `p`. The coefficients of `h` are eliminated by division,
/// leaving `p` generators `b_1, …, b_p` and `p` relations.
#[derive(Clone, Debug)]
pub struct FactRing {
    base_nvars: usize,
    base_weights: Vec<u32>,
    f: UniPoly,
    pub p: usize,
    pub q: usize,
    relations: Vec<MultiPoly>,
    g: UniPoly,
    h: UniPoly,
}

impl FactRing {
    pub fn base_nvars(&self) -> usize {
        self.base_nvars
    }

    pub fn nvars(&self) -> usize {
        self.base_nvars + self.p
    }

    pub fn weights(&self) -> Vec<u32> {
        let mut w = self.base_weights.clone();
        w.extend((1..=self.p as u32).map(|i| 2 * i));
        w
    }

    /// The remainder coefficients of `f ÷ g`, lowest power first.
    pub fn relations(&self) -> &[MultiPoly] {
        &self.relations
    }

    /// `g = u^p + b_1 u^{p−1} + … + b_p`.
    pub fn g(&self) -> &UniPoly {
        &self.g
    }

    /// The cofactor `h` with `f = g·h + remainder`.
    pub fn h(&self) -> &UniPoly {
        &self.h
    }

    pub fn f(&self) -> &UniPoly {
        &self.f
    }

    pub fn presentation(&self) -> Presentation {
        let mut vars = base_names(self.base_nvars);
        vars.extend((1..=self.p).map(|i| format!("b{i}")));
        Presentation {
            relations: self.relations.iter().map(|r| r.display_with(&vars)).collect(),
            weights: self.weights(),
            vars,
        }
    }
}

/// Presentation of `Fact^{p, n−p}_A(f)`.
pub fn fact_presentation(f: &UniPoly, p: usize, base_weights: &[u32]) -> Result<FactRing> {
    if !f.is_monic() {
        return invalid("factorization ring needs a monic polynomial");
    }
    let n = f.degree().unwrap();
    if p > n {
        return invalid(format!("p = {p} exceeds deg f = {n}"));
    }
    let k = f.nvars();
    if base_weights.len() != k {
        return invalid("one weight per base variable expected");
    }
    let total = k + p;
    let mut gc = vec![MultiPoly::zero(total); p + 1];
    gc[p] = MultiPoly::one(total);
    for i in 1..=p {
        gc[p - i] = MultiPoly::var(total, k + i - 1);
    }
    let g = UniPoly::new(total, gc);
    let fe = f.embed(total, 0);
    let (h, rem) = fe.monic_divmod(&g)?;
    let relations = (0..p).map(|j| rem.coeff(j)).collect();
    Ok(FactRing {
        base_nvars: k,
        base_weights: base_weights.to_vec(),
        f: f.clone(),
        p,
        q: n - p,
        relations,
        g,
        h,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RingKind {
    Split,
    Fact,
}

/// Expected versus computed `ℚ`-dimension of a split or factorization ring at
/// a rational specialization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreeRankReport {
    pub kind: RingKind,
    pub f: QPoly,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    pub expected: u64,
    pub computed: u64,
    /// Graded dimensions in halved degrees, when `f = u^n`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graded: Option<Vec<u64>>,
    /// `dim R_{≤D}/I_{≤D}` for `D = 0, 1, …` in halved degrees, otherwise.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filtered: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub staircase: Option<u64>,
    pub ok: bool,
}

fn is_pure_power(f: &QPoly) -> bool {
    let n = f.degree().unwrap_or(0);
    (0..n).all(|k| f.coeff(k).is_zero())
}

fn quotient_dim(nvars: usize, half_weights: &[u32], rels: &[MultiPoly], socle: u32, homogeneous: bool) -> Result<(u64, Vec<u64>)> {
    let slack = half_weights.iter().copied().max().unwrap_or(1) + 1;
    if homogeneous {
        let dense = graded_quotient_dims(nvars, half_weights, rels, socle + slack)?.dense();
        Ok((dense.iter().sum(), dense))
    } else {
        let dense = filtered_quotient_dims(nvars, half_weights, rels, socle + slack)?;
        Ok((*dense.last().unwrap(), dense))
    }
}

/// Checks that the split ring (`p = None`) or factorization ring has the
/// expected rank `n!` or `C(n, p)` over `ℚ` at the given monic `f`.
pub fn verify_free_rank(kind: RingKind, f: &QPoly, p: Option<usize>) -> Result<FreeRankReport> {
    let uf = specialize(f)?;
    let n = uf.degree().unwrap();
    let homogeneous = is_pure_power(f);
    let (expected, computed, dense, staircase) = match kind {
        RingKind::Split => {
            let ring = SplitRing::new(&uf, &[])?;
            let half = vec![1; n];
            let socle = (n * n.saturating_sub(1) / 2) as u32;
            let (computed, dense) = quotient_dim(n, &half, &ring.relations(), socle, homogeneous)?;
            let expected: u64 = (1..=n as u64).product();
            (expected, computed, dense, Some(ring.staircase_basis().len() as u64))
        }
        RingKind::Fact => {
            let Some(p) = p else {
                return invalid("factorization ring needs p");
            };
            let ring = fact_presentation(&uf, p, &[])?;
            let half: Vec<u32> = (1..=p as u32).collect();
            let socle = (p * (n - p)) as u32;
            let (computed, dense) = quotient_dim(p, &half, ring.relations(), socle, homogeneous)?;
            (binomial(n, p), computed, dense, None)
        }
    };
    let ok = expected == computed && staircase.is_none_or(|s| s == expected);
    Ok(FreeRankReport {
        kind,
        f: f.clone(),
        p: if kind == RingKind::Fact { p } else { None },
        expected,
        computed,
        graded: homogeneous.then(|| dense.clone()),
        filtered: (!homogeneous).then_some(dense),
        staircase,
        ok,
    })
}

/// Graded dimensions of `Fact^{p,n−p}(u^n)` with degrees doubled.
pub fn fact_graded_dims(n: usize, p: usize) -> Result<GradedDims> {
    let f = QPoly::u().pow(n);
    let ring = fact_presentation(&specialize(&f)?, p, &[])?;
    Ok(graded_quotient_dims(p, &ring.weights(), ring.relations(), 2 * (p * (n - p)) as u32 + 2)?.dims)
}

/// Graded dimensions of `Split(u^n)` with degrees doubled.
pub fn split_graded_dims(n: usize) -> Result<GradedDims> {
    let f = QPoly::u().pow(n);
    let ring = SplitRing::specialized(&f)?;
    Ok(graded_quotient_dims(n, &ring.weights(), &ring.relations(), (n * n.saturating_sub(1)) as u32 + 2)?.dims)
}

/// `Syl_{n,m}(f, g)`: `m` shifted rows of `a_0, …, a_n` above `n` shifted
/// rows of `b_0, …, b_m`, where `a_i` is the coefficient of `u^{n−i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterMatrix {
    pub n: usize,
    pub m: usize,
    entries: Vec<Vec<MultiPoly>>,
}

impl Serialize for SylvesterMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.display_with(&base_names(e.nvars()))).collect())
            .collect();
        rows.serialize(s)
    }
}

impl SylvesterMatrix {
    pub fn size(&self) -> usize {
        self.n + self.m
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i][j]
    }

    /// The matrix over ℚ, if every entry is constant.
    pub fn to_rational(&self) -> Option<QMatrix> {
        let rows: Option<Vec<Vec<Q>>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.as_constant()).collect())
            .collect();
        rows.map(|r| QMatrix::from_rows(self.size(), self.size(), r))
    }

    pub fn determinant(&self) -> MultiPoly {
        let nvars = self.entries.first().and_then(|r| r.first()).map_or(0, |e| e.nvars());
        poly_determinant(self.entries.clone(), nvars)
    }

    /// `dim ker` over ℚ, for rational matrices.
    pub fn nullity(&self) -> Option<usize> {
        self.to_rational().map(|m| m.nullity())
    }
}

/// Builds `Syl_{n,m}(f, g)`; requires `deg f ≤ n` with `a_0 ≠ 0` and `deg g ≤ m`.
pub fn sylvester(f: &UniPoly, g: &UniPoly, n: usize, m: usize) -> Result<SylvesterMatrix> {
    if f.nvars() != g.nvars() {
        return invalid("coefficient rings differ");
    }
    if f.degree().is_none_or(|d| d != n) {
        return invalid(format!("a_0 = 0: the coefficient of u^{n} in f vanishes"));
    }
    if g.degree().is_some_and(|d| d > m) {
        return invalid(format!("deg g exceeds m = {m}"));
    }
    let size = n + m;
    let nv = f.nvars();
    let mut entries = vec![vec![MultiPoly::zero(nv); size]; size];
    for r in 0..m {
        for i in 0..=n {
            entries[r][r + i] = f.coeff(n - i);
        }
    }
    for r in 0..n {
        for i in 0..=m {
            entries[m + r][r + i] = g.coeff(m - i);
        }
    }
    Ok(SylvesterMatrix { n, m, entries })
}

/// Fraction-free (Bareiss) determinant over a polynomial ring.
pub fn poly_determinant(mut a: Vec<Vec<MultiPoly>>, nvars: usize) -> MultiPoly {
    let n = a.len();
    if n == 0 {
        return MultiPoly::one(nvars);
    }
    let mut prev = MultiPoly::one(nvars);
    let mut negate = false;
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return MultiPoly::zero(nvars),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            a[i][k] = MultiPoly::zero(nvars);
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// `(−1)^{n(n−1)/2} det Syl_{n,n−1}(f, f')` for monic `f` of degree `n ≥ 1`,
/// normalized so that `u² + a₁u + a₂` has discriminant `a₁² − 4a₂`.
pub fn discriminant(f: &UniPoly) -> Result<MultiPoly> {
    if !f.is_monic() {
        return invalid("discriminant needs a monic polynomial");
    }
    let n = f.degree().unwrap();
    if n == 0 {
        return invalid("discriminant needs degree at least 1");
    }
    let det = sylvester(f, &f.derivative(), n, n - 1)?.determinant();
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -det } else { det })
}

/// One randomized check that `deg gcd(f, g) = dim ker Syl(f, g)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GcdTrial {
    pub f: QPoly,
    pub g: QPoly,
    pub planted_degree: usize,
    pub gcd_degree: usize,
    pub nullity: usize,
    pub ok: bool,
}

fn random_poly(rng: &mut ChaCha8Rng, degree: usize, monic: bool) -> QPoly {
    let mut c: Vec<Q> = (0..degree).map(|_| q(rng.random_range(-4..=4))).collect();
    let lead = if monic { 1 } else { [-3, -2, -1, 1, 2, 3][rng.random_range(0..6)] };
    c.push(q(lead));
    QPoly::new(c)
}

/// Random pairs with planted common factors of degree 0 to 3.
pub fn sylvester_gcd_trials(seed: u64, trials: usize) -> Result<Vec<GcdTrial>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let planted = rng.random_range(0..=3usize);
        let common = random_poly(&mut rng, planted, true);
        let (df, dg) = (rng.random_range(0..=3usize), rng.random_range(0..=3usize));
        let f = common.mul(&random_poly(&mut rng, df, false));
        let g = common.mul(&random_poly(&mut rng, dg, false));
        let (n, m) = (f.degree().unwrap(), g.degree().unwrap());
        let syl = sylvester(&UniPoly::from_rationals(0, f.coeffs()), &UniPoly::from_rationals(0, g.coeffs()), n, m)?;
        let nullity = syl.nullity().expect("rational matrix");
        let gcd_degree = f.gcd(&g).degree().unwrap_or(0);
        out.push(GcdTrial {
            ok: nullity == gcd_degree && gcd_degree >= planted,
            f,
            g,
            planted_degree: planted,
            gcd_degree,
            nullity,
        });
    }
    Ok(out)
}

/// One check of `disc(f) = ∏_{i<j} (r_i − r_j)²` for `f = ∏ (u − r_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootTrial {
    #[serde(serialize_with = "ser_rationals")]
    pub roots: Vec<Q>,
    #[serde(serialize_with = "ser_rational")]
    pub discriminant: Q,
    #[serde(serialize_with = "ser_rational")]
    pub root_product: Q,
    pub ok: bool,
}

fn ser_rational<S: Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::linalg::q_to_string(x))
}

fn ser_rationals<S: Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(crate::linalg::q_to_string))
}

/// Seeded split polynomials of degree `1..=max_degree` with rational roots.
pub fn discriminant_root_trials(seed: u64, trials: usize, max_degree: usize) -> Result<Vec<RootTrial>> {
    if max_degree == 0 {
        return invalid("max_degree must be at least 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let n = rng.random_range(1..=max_degree);
        let roots: Vec<Q> = (0..n)
            .map(|_| crate::linalg::q_frac(rng.random_range(-6..=6), rng.random_range(1..=3)))
            .collect();
        let f = roots
            .iter()
            .fold(QPoly::one(), |acc, r| acc.mul(&QPoly::linear(r.clone())));
        let disc = discriminant(&UniPoly::from_rationals(0, f.coeffs()))?;
        let discriminant = disc.as_constant().unwrap_or_else(Q::zero);
        let mut root_product = Q::one();
        for i in 0..n {
            for j in i + 1..n {
                let diff = &roots[i] - &roots[j];
                root_product *= &diff * &diff;
            }
        }
        out.push(RootTrial {
            ok: discriminant == root_product,
            roots,
            discriminant,
            root_product,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q_frac;
    use crate::partition::{gaussian_poincare, q_factorial};

    fn a(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i - 1)
    }

    #[test]
    fn split_normal_forms_quadratic() {
        let ring = SplitRing::universal(2);
        let nv = ring.nvars();
        let xi2 = ring.normal_form(&ring.xi(2));
        let expected: BTreeMap<Exponents, MultiPoly> = [
            (vec![0, 0], -a(2, 1)),
            (vec![1, 0], MultiPoly::constant(2, q(-1))),
        ]
        .into_iter()
        .collect();
        assert_eq!(xi2, expected);

        let sq = ring.reduce(&ring.xi(1).pow(2));
        let want = &(-(&ring.base(&a(2, 1)) * &ring.xi(1))) - &ring.base(&a(2, 2));
        assert_eq!(sq, want);
        assert_eq!(nv, 4);

        let flat = SplitRing::specialized(&QPoly::u().pow(2)).unwrap();
        assert!(flat.reduce(&flat.xi(1).pow(2)).is_zero());
    }

    #[test]
    fn split_relations_and_roots_vanish() {
        for n in 1..=4 {
            let ring = SplitRing::universal(n);
            assert_eq!(ring.staircase_basis().len() as u64, (1..=n as u64).product::<u64>());
            for r in ring.relations() {
                assert!(ring.reduce(&r).is_zero(), "n={n} relation {r}");
            }
            let f = ring.f().embed(ring.nvars(), 0);
            for i in 1..=n {
                assert!(ring.reduce(&f.eval_at(&ring.xi(i))).is_zero());
            }
        }
    }

    #[test]
    fn split_normal_form_is_idempotent_and_linear() {
        let ring = SplitRing::universal(3);
        let x = &(&ring.xi(3).pow(3) * &ring.xi(2)) + &ring.base(&a(3, 2)).scale(&q(5));
        let y = &ring.xi(1).pow(4) - &ring.xi(2);
        let rx = ring.reduce(&x);
        assert_eq!(ring.reduce(&rx), rx);
        let c = ring.base(&a(3, 1));
        let lhs = ring.reduce(&(&(&c * &x) + &y));
        let rhs = ring.reduce(&(&(&c * &rx) + &ring.reduce(&y)));
        assert_eq!(lhs, rhs);
        for e in ring.normal_form(&x).keys() {
            assert!(e[0] <= 2 && e[1] <= 1 && e[2] == 0);
        }
    }

    #[test]
    fn split_graded_dims_are_q_factorials() {
        for n in 0..=5 {
            assert_eq!(split_graded_dims(n).unwrap(), q_factorial(n), "n={n}");
        }
    }

    #[test]
    fn fact_presentations() {
        let f = UniPoly::universal_monic(2);
        let ring = fact_presentation(&f, 1, &universal_weights(2)).unwrap();
        let b = MultiPoly::var(3, 2);
        let a1 = MultiPoly::var(3, 0);
        let a2 = MultiPoly::var(3, 1);
        assert_eq!(ring.relations(), &[&(&b.pow(2) - &(&a1 * &b)) + &a2]);
        // f = g·h + remainder
        let back = ring.g().mul(ring.h()).add(&UniPoly::new(3, ring.relations().to_vec()));
        assert_eq!(back, f.embed(3, 0));
        for r in ring.relations() {
            assert!(r.is_homogeneous(&ring.weights()));
        }

        let full = fact_presentation(&specialize(&QPoly::u().pow(3)).unwrap(), 3, &[]).unwrap();
        assert_eq!(full.h().degree(), Some(0));
        let dims = graded_quotient_dims(3, &full.weights(), full.relations(), 8).unwrap();
        assert_eq!(dims.total(), 1);

        assert_eq!(fact_graded_dims(4, 2).unwrap().dense(2), vec![1, 1, 2, 1, 1]);
        assert!(fact_presentation(&f, 3, &universal_weights(2)).is_err());
    }

    #[test]
    fn fact_graded_dims_match_grassmannians() {
        for n in 0..=6 {
            for p in 0..=n {
                assert_eq!(fact_graded_dims(n, p).unwrap(), gaussian_poincare(p, n).unwrap(), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn free_rank_reports() {
        let r = verify_free_rank(RingKind::Split, &QPoly::u().pow(3), None).unwrap();
        assert!(r.ok);
        assert_eq!(r.computed, 6);
        let r = verify_free_rank(RingKind::Fact, &QPoly::u().pow(4), Some(2)).unwrap();
        assert!(r.ok);
        assert_eq!(r.graded.as_deref(), Some(&[1, 1, 2, 1, 1, 0, 0, 0][..]));
        let f = QPoly::from_i64(&[-1, 1]).mul(&QPoly::from_i64(&[-2, 1])).mul(&QPoly::from_i64(&[-3, 1]));
        let r = verify_free_rank(RingKind::Fact, &f, Some(1)).unwrap();
        assert_eq!((r.expected, r.computed), (3, 3));
        let r = verify_free_rank(RingKind::Split, &f, None).unwrap();
        assert_eq!((r.expected, r.computed), (6, 6));
        let g = QPoly::from_i64(&[1, 0, 1]).mul(&QPoly::from_i64(&[0, 1]).pow(2));
        let r = verify_free_rank(RingKind::Fact, &g, Some(2)).unwrap();
        assert!(r.ok, "{r:?}");
        assert!(verify_free_rank(RingKind::Split, &QPoly::from_i64(&[1, 2]), None).is_err());
    }

    #[test]
    fn sylvester_examples() {
        let f = UniPoly::from_rationals(0, &[q(-1), q(0), q(1)]);
        let g = UniPoly::from_rationals(0, &[q(-1), q(1)]);
        let s = sylvester(&f, &g, 2, 1).unwrap();
        assert_eq!(s.nullity(), Some(1));
        assert!(s.determinant().is_zero());
        let f = UniPoly::from_rationals(0, &[q(1), q(0), q(1)]);
        assert!(!sylvester(&f, &g, 2, 1).unwrap().determinant().is_zero());
        assert!(sylvester(&f, &g, 3, 1).is_err());
        let zero = UniPoly::zero(0);
        assert_eq!(sylvester(&f, &zero, 2, 0).unwrap().size(), 2);
    }

    #[test]
    fn sylvester_layout() {
        let f = UniPoly::from_rationals(0, &[q(3), q(2), q(1)]);
        let g = UniPoly::from_rationals(0, &[q(5), q(4)]);
        let s = sylvester(&f, &g, 2, 1).unwrap().to_rational().unwrap();
        assert_eq!(s, QMatrix::from_i64(3, 3, &[&[1, 2, 3], &[4, 5, 0], &[0, 4, 5]]));
    }

    #[test]
    fn sylvester_determinant_is_homogeneous() {
        for (n, m) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
            let nv = n + m + 2;
            let fc: Vec<MultiPoly> = (0..=n).map(|i| MultiPoly::var(nv, i)).collect();
            let gc: Vec<MultiPoly> = (0..=m).map(|i| MultiPoly::var(nv, n + 1 + i)).collect();
            let f = UniPoly::new(nv, fc.into_iter().rev().collect());
            let g = UniPoly::new(nv, gc.into_iter().rev().collect());
            // a_i = x_i, b_i = x_{n+1+i}, graded by the index i.
            let mut w: Vec<u32> = (0..=n as u32).collect();
            w.extend(0..=m as u32);
            let det = sylvester(&f, &g, n, m).unwrap().determinant();
            assert!(!det.is_zero());
            let degs: Vec<u32> = det.terms().map(|(e, _)| MultiPoly::weighted(e, &w)).collect();
            assert!(degs.iter().all(|&d| d == (n * m) as u32), "n={n} m={m}");
        }
    }

    #[test]
    fn discriminants() {
        let quad = UniPoly::universal_monic(2);
        let d = discriminant(&quad).unwrap();
        let a1 = MultiPoly::var(2, 0);
        let a2 = MultiPoly::var(2, 1);
        assert_eq!(d, &a1.pow(2) - &a2.scale(&q(4)));
        let sq = UniPoly::from_rationals(0, &[q(-1), q(0), q(1)]);
        assert_eq!(discriminant(&sq).unwrap().as_constant(), Some(q(4)));
        for n in 2..=5 {
            let un = specialize(&QPoly::u().pow(n)).unwrap();
            assert!(discriminant(&un).unwrap().is_zero());
        }
        let cubic = UniPoly::universal_monic(3);
        let d3 = discriminant(&cubic).unwrap();
        assert!(d3.is_homogeneous(&[1, 2, 3]));
        assert_eq!(d3.degree(&[1, 2, 3]), Some(6));
    }

    #[test]
    fn discriminant_matches_root_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.random_range(1..=5usize);
            let roots: Vec<i64> = (0..n).map(|_| rng.random_range(-4..=4)).collect();
            let f = roots.iter().fold(QPoly::one(), |acc, &r| acc.mul(&QPoly::from_i64(&[-r, 1])));
            let d = discriminant(&specialize(&f).unwrap()).unwrap().as_constant().unwrap();
            let mut prod = q(1);
            for i in 0..n {
                for j in i + 1..n {
                    let diff = q(roots[i] - roots[j]);
                    prod *= &diff * &diff;
                }
            }
            assert_eq!(d, prod, "roots {roots:?}");
        }
    }

    #[test]
    fn gcd_trials() {
        let trials = sylvester_gcd_trials(0, 200).unwrap();
        assert!(trials.iter().all(|t| t.ok));
        assert!((0..=3).all(|d| trials.iter().any(|t| t.planted_degree == d)));
    }

    #[test]
    fn regular_representation_traces() {
        let perms3: Vec<Vec<usize>> = vec![vec![2, 1, 3], vec![1, 3, 2], vec![3, 2, 1], vec![2, 3, 1], vec![3, 1, 2]];
        let f = QPoly::from_i64(&[-1, 1]).mul(&QPoly::from_i64(&[-2, 1])).mul(&QPoly::from_i64(&[4, 1]));
        let ring = SplitRing::specialized(&f).unwrap();
        assert_eq!(ring.permutation_trace(&[1, 2, 3]).unwrap(), q(6));
        for p in &perms3 {
            assert_eq!(ring.permutation_trace(p).unwrap(), q(0), "{p:?}");
        }
        let f = QPoly::new(vec![q_frac(1, 2), q(1)]).mul(&QPoly::from_i64(&[-3, 1]));
        let ring = SplitRing::specialized(&f).unwrap();
        assert_eq!(ring.permutation_trace(&[2, 1]).unwrap(), q(0));
    }
}
