//! Pairs of maps `f: V₀ → V₁`, `g: V₁ → V₀` over ℚ.
//!
//! Such a pair is a `ℤ/2`-graded module over `k[t]` with `t` odd, acting as
//! `f` on `V₀` and as `g` on `V₁`. The indecomposables are
//!
//! - `A(k, π)` for a monic irreducible `π`: `f = 1`, `g` the companion matrix
//!   of `π^k`; `A(k, u)` is the case of a nilpotent `g`;
//! - `A(k, ∞)`: `f` the companion matrix of `u^k`, `g = 1`;
//! - `B(k)`: a chain `x₀ → x₁ → … → x_{2k} → 0` with `V₀` spanned by the even
//!   positions; `B[1](k)` (here `Bshift`) is the same chain with parities
//!   swapped.
//!
//! The part where `t` is nilpotent is a sum of cyclic chains. A chain of
//! length `L` starting in parity `σ` is `A(L/2, u)` or `A(L/2, ∞)` for even
//! `L` and `σ = 0, 1`, and `B((L−1)/2)` or `Bshift((L−1)/2)` for odd `L`.
//! Writing `r_ε(j)` for the rank of `t^j` restricted to `V_ε`, the number of
//! chains of length `L` starting in parity `σ` is
//!
//! ```text
//! [r_σ(L−1) − r_σ(L)] − [r_{σ+1}(L) − r_{σ+1}(L+1)].
//! ```
//!
//! On the part where `t` is invertible, `A(k, π)` is read off from the ranks
//! of `π(fg)^k` on `V₁`.

use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Error, Result};
use crate::linalg::{q, q_parse, QMatrix, Q};
use crate::poly::{factor_rational, QPoly};

/// `f` is `m × n`, `g` is `n × m`, with `n = dim V₀` and `m = dim V₁`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixPair {
    pub f: QMatrix,
    pub g: QMatrix,
}

impl MatrixPair {
    pub fn new(f: QMatrix, g: QMatrix) -> Result<Self> {
        if f.nrows() != g.ncols() || f.ncols() != g.nrows() {
            return invalid(format!(
                "shape mismatch: f is {}x{} but g is {}x{}",
                f.nrows(),
                f.ncols(),
                g.nrows(),
                g.ncols()
            ));
        }
        Ok(MatrixPair { f, g })
    }

    pub fn empty() -> Self {
        MatrixPair {
            f: QMatrix::zeros(0, 0),
            g: QMatrix::zeros(0, 0),
        }
    }

    /// `dim V₀`.
    pub fn n(&self) -> usize {
        self.f.ncols()
    }

    /// `dim V₁`.
    pub fn m(&self) -> usize {
        self.f.nrows()
    }

    pub fn direct_sum(&self, other: &MatrixPair) -> MatrixPair {
        MatrixPair {
            f: self.f.direct_sum(&other.f),
            g: self.g.direct_sum(&other.g),
        }
    }

    /// The pair `(g, f)`: the same module with parities swapped.
    pub fn swap(&self) -> MatrixPair {
        MatrixPair {
            f: self.g.clone(),
            g: self.f.clone(),
        }
    }

    /// Base change by `P` on `V₀` and `R` on `V₁`: `(R f P⁻¹, P g R⁻¹)`.
    pub fn conjugate(&self, p: &QMatrix, r: &QMatrix) -> Result<MatrixPair> {
        let (Some(pi), Some(ri)) = (p.inverse(), r.inverse()) else {
            return invalid("base change matrices must be invertible");
        };
        Ok(MatrixPair {
            f: r.mul(&self.f).mul(&pi),
            g: p.mul(&self.g).mul(&ri),
        })
    }

    /// `fg`, acting on `V₁`.
    pub fn fg(&self) -> QMatrix {
        self.f.mul(&self.g)
    }

    /// `gf`, acting on `V₀`.
    pub fn gf(&self) -> QMatrix {
        self.g.mul(&self.f)
    }
}

/// Where `t²` acts: a monic irreducible polynomial, or `∞` for `A(k, ∞)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eigen {
    Poly(QPoly),
    Infinity,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indecomposable {
    A { k: usize, pi: Eigen },
    B { k: usize },
    Bshift { k: usize },
}

impl fmt::Display for Indecomposable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Indecomposable::A { k, pi: Eigen::Poly(p) } => write!(f, "A({k}, {p})"),
            Indecomposable::A { k, pi: Eigen::Infinity } => write!(f, "A({k}, inf)"),
            Indecomposable::B { k } => write!(f, "B({k})"),
            Indecomposable::Bshift { k } => write!(f, "Bshift({k})"),
        }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum PolyJson {
    Inf(String),
    Coeffs(Vec<String>),
}

#[derive(Serialize, Deserialize)]
struct IndecompJson {
    #[serde(rename = "type")]
    kind: String,
    k: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    poly: Option<PolyJson>,
}

impl Serialize for Indecomposable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let j = match self {
            Indecomposable::A { k, pi } => IndecompJson {
                kind: "A".into(),
                k: *k,
                poly: Some(match pi {
                    Eigen::Poly(p) => PolyJson::Coeffs(p.to_strings()),
                    Eigen::Infinity => PolyJson::Inf("inf".into()),
                }),
            },
            Indecomposable::B { k } => IndecompJson {
                kind: "B".into(),
                k: *k,
                poly: None,
            },
            Indecomposable::Bshift { k } => IndecompJson {
                kind: "Bshift".into(),
                k: *k,
                poly: None,
            },
        };
        j.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Indecomposable {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = IndecompJson::deserialize(d)?;
        let out = match (j.kind.as_str(), j.poly) {
            ("A", Some(PolyJson::Inf(s))) if s == "inf" => Indecomposable::A { k: j.k, pi: Eigen::Infinity },
            ("A", Some(PolyJson::Coeffs(c))) => {
                let coeffs: Option<Vec<Q>> = c.iter().map(|x| q_parse(x)).collect();
                let p = QPoly::new(coeffs.ok_or_else(|| D::Error::custom("bad coefficient"))?);
                Indecomposable::A { k: j.k, pi: Eigen::Poly(p) }
            }
            ("B", None) => Indecomposable::B { k: j.k },
            ("Bshift", None) => Indecomposable::Bshift { k: j.k },
            _ => return Err(D::Error::custom("unrecognized indecomposable")),
        };
        out.validate().map_err(D::Error::custom)?;
        Ok(out)
    }
}

impl Indecomposable {
    pub fn a_poly(k: usize, pi: QPoly) -> Self {
        Indecomposable::A { k, pi: Eigen::Poly(pi) }
    }

    pub fn a_inf(k: usize) -> Self {
        Indecomposable::A { k, pi: Eigen::Infinity }
    }

    /// `A(k, u)`.
    pub fn a_zero(k: usize) -> Self {
        Self::a_poly(k, QPoly::u())
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Indecomposable::A { k: 0, .. } => invalid("A(k, π) needs k ≥ 1"),
            Indecomposable::A { pi: Eigen::Poly(p), .. } => {
                if p.degree().unwrap_or(0) == 0 || !p.leading().is_one() {
                    return invalid(format!("{p} is not monic of positive degree"));
                }
                if factor_rational(p)?.len() != 1 || factor_rational(p)?[0].1 != 1 {
                    return invalid(format!("{p} is not irreducible over ℚ"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// `(dim V₀, dim V₁)`.
    pub fn dims(&self) -> (usize, usize) {
        match self {
            Indecomposable::A { k, pi: Eigen::Poly(p) } => {
                let d = k * p.degree().unwrap();
                (d, d)
            }
            Indecomposable::A { k, pi: Eigen::Infinity } => (*k, *k),
            Indecomposable::B { k } => (k + 1, *k),
            Indecomposable::Bshift { k } => (*k, k + 1),
        }
    }

    /// The same module with parities swapped.
    pub fn parity_shift(&self) -> Indecomposable {
        match self {
            Indecomposable::A { k, pi: Eigen::Infinity } => Self::a_zero(*k),
            Indecomposable::A { k, pi: Eigen::Poly(p) } if *p == QPoly::u() => Self::a_inf(*k),
            Indecomposable::A { .. } => self.clone(),
            Indecomposable::B { k } => Indecomposable::Bshift { k: *k },
            Indecomposable::Bshift { k } => Indecomposable::B { k: *k },
        }
    }

    /// A matrix pair realizing this indecomposable.
    pub fn synthesize(&self) -> MatrixPair {
        match self {
            Indecomposable::A { k, pi: Eigen::Poly(p) } => {
                let c = companion(&p.pow(*k));
                MatrixPair {
                    f: QMatrix::identity(c.nrows()),
                    g: c,
                }
            }
            Indecomposable::A { k, pi: Eigen::Infinity } => MatrixPair {
                f: companion(&QPoly::u().pow(*k)),
                g: QMatrix::identity(*k),
            },
            Indecomposable::B { k } => chain(*k),
            Indecomposable::Bshift { k } => chain(*k).swap(),
        }
    }

    /// `rank (fg)^j` on `V₁`.
    pub fn fg_rank(&self, j: usize) -> usize {
        match self {
            Indecomposable::A { k, pi: Eigen::Poly(p) } if *p == QPoly::u() => k.saturating_sub(j),
            Indecomposable::A { k, pi: Eigen::Poly(p) } => k * p.degree().unwrap(),
            Indecomposable::A { k, pi: Eigen::Infinity } => k.saturating_sub(j),
            Indecomposable::B { k } => k.saturating_sub(j),
            Indecomposable::Bshift { k } => (k + 1).saturating_sub(j),
        }
    }
}

/// Companion matrix of a monic polynomial: ones below the diagonal and
/// `−c_0, …, −c_{d−1}` in the last column.
pub fn companion(p: &QPoly) -> QMatrix {
    let d = p.degree().unwrap_or(0);
    let mut m = QMatrix::zeros(d, d);
    for i in 1..d {
        m.set(i, i - 1, Q::one());
    }
    for i in 0..d {
        m.set(i, d - 1, -p.coeff(i));
    }
    m
}

/// `B(k)`: `f` is `k × (k+1)` sending `x_{2i} ↦ x_{2i+1}`, `g` is `(k+1) × k`
/// sending `x_{2i+1} ↦ x_{2i+2}`.
fn chain(k: usize) -> MatrixPair {
    let mut f = QMatrix::zeros(k, k + 1);
    let mut g = QMatrix::zeros(k + 1, k);
    for i in 0..k {
        f.set(i, i, Q::one());
        g.set(i + 1, i, Q::one());
    }
    MatrixPair { f, g }
}

/// A sorted multiset of indecomposables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct IndecompMultiset(Vec<Indecomposable>);

impl<'de> Deserialize<'de> for IndecompMultiset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(Self::new(Vec::<Indecomposable>::deserialize(d)?))
    }
}

impl fmt::Display for IndecompMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl IndecompMultiset {
    pub fn new(mut items: Vec<Indecomposable>) -> Self {
        items.sort();
        IndecompMultiset(items)
    }

    pub fn items(&self) -> &[Indecomposable] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(dim V₀, dim V₁)` of the sum.
    pub fn dims(&self) -> (usize, usize) {
        self.0
            .iter()
            .map(|x| x.dims())
            .fold((0, 0), |(a, b), (c, d)| (a + c, b + d))
    }

    pub fn parity_shift(&self) -> Self {
        Self::new(self.0.iter().map(|x| x.parity_shift()).collect())
    }

    /// `rank (fg)^j` predicted from the decomposition.
    pub fn fg_rank(&self, j: usize) -> usize {
        self.0.iter().map(|x| x.fg_rank(j)).sum()
    }
}

/// The block-diagonal pair realizing a multiset.
pub fn synthesize(ms: &IndecompMultiset) -> MatrixPair {
    ms.0
        .iter()
        .fold(MatrixPair::empty(), |acc, x| acc.direct_sum(&x.synthesize()))
}

/// Characteristic polynomial `det(u − A)` by the Faddeev–LeVerrier recursion.
pub fn charpoly(a: &QMatrix) -> QPoly {
    let n = a.nrows();
    let mut coeffs = vec![Q::zero(); n + 1];
    coeffs[n] = Q::one();
    let mut m = QMatrix::zeros(n, n);
    for k in 1..=n {
        m = a.mul(&m).add(&QMatrix::identity(n).scale(&coeffs[n - k + 1]));
        let am = a.mul(&m);
        let trace: Q = (0..n).map(|i| am.get(i, i).clone()).sum();
        coeffs[n - k] = -trace / q(k as i64);
    }
    QPoly::new(coeffs)
}

/// `χ(u) / u^δ` for `χ` the characteristic polynomial of `fg`.
pub fn reduced_charpoly(pair: &MatrixPair, delta: usize) -> Result<QPoly> {
    let chi = charpoly(&pair.fg());
    if delta > pair.m() || (0..delta).any(|i| !chi.coeff(i).is_zero()) {
        return invalid(format!("u^{delta} does not divide the characteristic polynomial {chi}"));
    }
    Ok(QPoly::new(chi.coeffs()[delta..].to_vec()))
}

/// Ranks of `t^j` restricted to `V₀` and to `V₁`, for `j = 0..=len`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    pub v0: Vec<usize>,
    pub v1: Vec<usize>,
}

impl RankProfile {
    fn get(&self, parity: usize, j: usize) -> usize {
        let r = if parity == 0 { &self.v0 } else { &self.v1 };
        r[j.min(r.len() - 1)]
    }
}

/// Word ranks up to length `max(2·max(n, m), n + m + 1)`.
pub fn rank_profile(pair: &MatrixPair) -> RankProfile {
    let (n, m) = (pair.n(), pair.m());
    let len = (2 * n.max(m)).max(n + m + 1);
    let walk = |start: usize| {
        let dim = if start == 0 { n } else { m };
        let mut w = QMatrix::identity(dim);
        let mut ranks = vec![dim];
        for j in 1..=len {
            let on = (start + j - 1) % 2;
            w = if on == 0 { pair.f.mul(&w) } else { pair.g.mul(&w) };
            ranks.push(w.rank());
        }
        ranks
    };
    RankProfile {
        v0: walk(0),
        v1: walk(1),
    }
}

/// Decomposes a pair into indecomposables.
pub fn classify(pair: &MatrixPair) -> Result<IndecompMultiset> {
    let (n, m) = (pair.n(), pair.m());
    let mut items = Vec::new();

    let fg = pair.fg();
    for (pi, mult) in factor_rational(&charpoly(&fg))? {
        if pi == QPoly::u() {
            continue;
        }
        let deg = pi.degree().unwrap();
        let base = pi.eval_matrix(&fg);
        let mut ranks = vec![m];
        let mut power = QMatrix::identity(m);
        for _ in 0..=mult + 1 {
            power = power.mul(&base);
            ranks.push(power.rank());
        }
        for k in 1..=mult {
            let at_least_k = ranks[k - 1] - ranks[k];
            let at_least_k1 = ranks[k] - ranks[k + 1];
            let count = (at_least_k - at_least_k1) / deg;
            for _ in 0..count {
                items.push(Indecomposable::a_poly(k, pi.clone()));
            }
        }
    }

    let prof = rank_profile(pair);
    for len in 1..=n + m {
        for sigma in 0..2 {
            let own = prof.get(sigma, len - 1) as i64 - prof.get(sigma, len) as i64;
            let other = prof.get(1 - sigma, len) as i64 - prof.get(1 - sigma, len + 1) as i64;
            let count = own - other;
            if count < 0 {
                return Err(Error::Mismatch(format!(
                    "negative chain count for length {len}, parity {sigma}"
                )));
            }
            let item = match (len % 2, sigma) {
                (0, 0) => Indecomposable::a_zero(len / 2),
                (0, _) => Indecomposable::a_inf(len / 2),
                (_, 0) => Indecomposable::B { k: len / 2 },
                _ => Indecomposable::Bshift { k: len / 2 },
            };
            for _ in 0..count {
                items.push(item.clone());
            }
        }
    }

    let ms = IndecompMultiset::new(items);
    if ms.dims() != (n, m) {
        return Err(Error::Mismatch(format!(
            "classification {ms} has dims {:?}, pair has ({n}, {m})",
            ms.dims()
        )));
    }
    Ok(ms)
}

const SAMPLE_POLYS: &[&[i64]] = &[
    &[-1, 1],
    &[1, 1],
    &[-2, 1],
    &[3, 1],
    &[1, 0, 1],
    &[-2, 0, 1],
    &[1, 1, 1],
];

/// A random multiset with `dim V₀, dim V₁ ≤ max_dim`.
pub fn random_multiset(rng: &mut ChaCha8Rng, max_dim: usize) -> IndecompMultiset {
    let mut items = Vec::new();
    let (mut n, mut m) = (0, 0);
    let pieces = rng.random_range(0..=5usize);
    for _ in 0..pieces {
        let cand = match rng.random_range(0..5u8) {
            0 => {
                let p = SAMPLE_POLYS[rng.random_range(0..SAMPLE_POLYS.len())];
                Indecomposable::a_poly(rng.random_range(1..=2), QPoly::from_i64(p))
            }
            1 => Indecomposable::a_zero(rng.random_range(1..=3)),
            2 => Indecomposable::a_inf(rng.random_range(1..=3)),
            3 => Indecomposable::B { k: rng.random_range(0..=3) },
            _ => Indecomposable::Bshift { k: rng.random_range(0..=3) },
        };
        let (a, b) = cand.dims();
        if n + a <= max_dim && m + b <= max_dim {
            n += a;
            m += b;
            items.push(cand);
        }
    }
    IndecompMultiset::new(items)
}

/// A random invertible integer matrix (its inverse is rational).
pub fn random_invertible(rng: &mut ChaCha8Rng, dim: usize) -> QMatrix {
    loop {
        let rows: Vec<Vec<Q>> = (0..dim)
            .map(|_| (0..dim).map(|_| q(rng.random_range(-2..=2))).collect())
            .collect();
        let m = QMatrix::from_rows(dim, dim, rows);
        if !m.determinant().is_zero() {
            return m;
        }
    }
}

/// The pair under a random base change on both sides.
pub fn random_conjugate(pair: &MatrixPair, rng: &mut ChaCha8Rng) -> MatrixPair {
    let p = random_invertible(rng, pair.n());
    let r = random_invertible(rng, pair.m());
    pair.conjugate(&p, &r).expect("random matrices are invertible")
}

/// One synthesize, conjugate, classify round trip.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundTrip {
    pub multiset: IndecompMultiset,
    pub classified: IndecompMultiset,
    pub ok: bool,
}

/// Seeded round trips with dims at most `max_dim | max_dim`.
pub fn roundtrip_trials(seed: u64, trials: usize, max_dim: usize) -> Result<Vec<RoundTrip>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    for _ in 0..trials {
        let ms = random_multiset(&mut rng, max_dim);
        let pair = random_conjugate(&synthesize(&ms), &mut rng);
        let classified = classify(&pair)?;
        out.push(RoundTrip {
            ok: classified == ms,
            multiset: ms,
            classified,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(f: QMatrix, g: QMatrix) -> MatrixPair {
        MatrixPair::new(f, g).unwrap()
    }

    fn lin(c: i64) -> QPoly {
        QPoly::from_i64(&[-c, 1])
    }

    #[test]
    fn one_by_one_examples() {
        let p = pair(QMatrix::from_i64(1, 1, &[&[1]]), QMatrix::from_i64(1, 1, &[&[7]]));
        assert_eq!(classify(&p).unwrap(), IndecompMultiset::new(vec![Indecomposable::a_poly(1, lin(7))]));
        let p = pair(QMatrix::from_i64(1, 1, &[&[0]]), QMatrix::from_i64(1, 1, &[&[1]]));
        assert_eq!(classify(&p).unwrap(), IndecompMultiset::new(vec![Indecomposable::a_inf(1)]));
        let p = pair(QMatrix::zeros(0, 1), QMatrix::zeros(1, 0));
        assert_eq!(classify(&p).unwrap(), IndecompMultiset::new(vec![Indecomposable::B { k: 0 }]));
        assert!(classify(&MatrixPair::empty()).unwrap().is_empty());
    }

    #[test]
    fn synthesis_examples() {
        let p = Indecomposable::a_poly(1, lin(5)).synthesize();
        assert_eq!(p.f, QMatrix::from_i64(1, 1, &[&[1]]));
        assert_eq!(p.g, QMatrix::from_i64(1, 1, &[&[5]]));
        let p = Indecomposable::B { k: 1 }.synthesize();
        assert_eq!(p.f, QMatrix::from_i64(1, 2, &[&[1, 0]]));
        assert_eq!(p.g, QMatrix::from_i64(2, 1, &[&[0], &[1]]));
        let e = synthesize(&IndecompMultiset::default());
        assert_eq!((e.n(), e.m()), (0, 0));
    }

    #[test]
    fn dims_match_formula() {
        let items = vec![
            Indecomposable::a_poly(2, QPoly::from_i64(&[1, 0, 1])),
            Indecomposable::a_inf(3),
            Indecomposable::B { k: 2 },
            Indecomposable::Bshift { k: 0 },
        ];
        for it in &items {
            let p = it.synthesize();
            assert_eq!((p.n(), p.m()), it.dims(), "{it}");
        }
        let ms = IndecompMultiset::new(items);
        let p = synthesize(&ms);
        assert_eq!((p.n(), p.m()), ms.dims());
        assert_eq!(ms.dims(), (4 + 3 + 3, 4 + 3 + 2 + 1));
    }

    #[test]
    fn planted_example_roundtrip() {
        let ms = IndecompMultiset::new(vec![
            Indecomposable::a_poly(2, lin(3)),
            Indecomposable::B { k: 1 },
            Indecomposable::Bshift { k: 2 },
        ]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let p = random_conjugate(&synthesize(&ms), &mut rng);
        assert_eq!(classify(&p).unwrap(), ms);
    }

    #[test]
    fn seeded_roundtrips() {
        let trials = roundtrip_trials(3, 40, 8).unwrap();
        for t in &trials {
            assert!(t.ok, "{} classified as {}", t.multiset, t.classified);
        }
    }

    #[test]
    fn brute_force_chain_table_inverts() {
        // Every nilpotent indecomposable of total dimension ≤ 8, its word
        // ranks measured by multiplying matrices.
        let mut all = Vec::new();
        for k in 1..=4 {
            all.push(Indecomposable::a_zero(k));
            all.push(Indecomposable::a_inf(k));
        }
        for k in 0..=3 {
            all.push(Indecomposable::B { k });
            all.push(Indecomposable::Bshift { k });
        }
        let len = 10;
        let mut table: Vec<Vec<i64>> = Vec::new();
        for it in &all {
            let p = it.synthesize();
            let mut row = Vec::new();
            for start in 0..2 {
                let dim = if start == 0 { p.n() } else { p.m() };
                let mut w = QMatrix::identity(dim);
                row.push(dim as i64);
                for j in 1..=len {
                    w = if (start + j - 1) % 2 == 0 { p.f.mul(&w) } else { p.g.mul(&w) };
                    row.push(w.rank() as i64);
                }
            }
            table.push(row);
        }
        let rows: Vec<Vec<Q>> = table.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
        let mat = QMatrix::from_rows(rows.len(), rows[0].len(), rows);
        assert_eq!(mat.rank(), all.len(), "contribution table is not injective");
        for it in &all {
            assert_eq!(classify(&it.synthesize()).unwrap(), IndecompMultiset::new(vec![it.clone()]));
        }
        // Additivity: word ranks of a sum are sums of the table rows.
        let ms = IndecompMultiset::new(vec![all[0].clone(), all[3].clone(), all[9].clone()]);
        let prof = rank_profile(&synthesize(&ms));
        let idx: Vec<usize> = [0, 3, 9].to_vec();
        for j in 0..=len {
            let want: i64 = idx.iter().map(|&i| table[i][j]).sum();
            assert_eq!(prof.v0.get(j).copied().unwrap_or(*prof.v0.last().unwrap()) as i64, want);
        }
    }

    #[test]
    fn parity_shift_behaviour() {
        let ms = IndecompMultiset::new(vec![
            Indecomposable::a_poly(1, lin(2)),
            Indecomposable::a_poly(2, QPoly::from_i64(&[1, 0, 1])),
            Indecomposable::a_zero(2),
            Indecomposable::a_inf(1),
            Indecomposable::B { k: 1 },
            Indecomposable::Bshift { k: 0 },
        ]);
        let swapped = classify(&synthesize(&ms).swap()).unwrap();
        assert_eq!(swapped, ms.parity_shift());
        // t² is unchanged by the shift, so an invertible eigenvalue λ is not sent to 1/λ.
        let single = IndecompMultiset::new(vec![Indecomposable::a_poly(1, lin(2))]);
        let shifted = classify(&synthesize(&single).swap()).unwrap();
        assert_eq!(shifted, single);
    }

    #[test]
    fn fg_ranks_from_classification() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let ms = random_multiset(&mut rng, 8);
            let p = random_conjugate(&synthesize(&ms), &mut rng);
            let fg = p.fg();
            for j in 0..=6 {
                assert_eq!(fg.pow(j).rank(), ms.fg_rank(j), "{ms} j={j}");
            }
        }
    }

    #[test]
    fn charpolys() {
        let a = QMatrix::from_i64(2, 2, &[&[1, 2], &[3, 4]]);
        assert_eq!(charpoly(&a), QPoly::from_i64(&[-2, -5, 1]));
        let c = companion(&QPoly::from_i64(&[5, -3, 0, 1]));
        assert_eq!(charpoly(&c), QPoly::from_i64(&[5, -3, 0, 1]));
        assert_eq!(charpoly(&QMatrix::zeros(0, 0)), QPoly::one());
    }

    #[test]
    fn reduced_charpolys() {
        let f = QMatrix::from_i64(3, 3, &[&[2, 0, 0], &[0, 1, 0], &[0, 0, 0]]);
        let g = QMatrix::from_i64(3, 3, &[&[1, 0, 0], &[0, -3, 0], &[0, 0, 5]]);
        let p = pair(f, g);
        assert_eq!(reduced_charpoly(&p, 1).unwrap(), lin(2).mul(&lin(-3)));
        assert_eq!(reduced_charpoly(&p, 0).unwrap(), lin(2).mul(&lin(-3)).mul(&QPoly::u()));
        assert!(reduced_charpoly(&p, 2).is_err());
        let z = pair(QMatrix::zeros(2, 3), QMatrix::zeros(3, 2));
        assert_eq!(reduced_charpoly(&z, 2).unwrap(), QPoly::one());
    }

    #[test]
    fn nilpotent_without_b_has_pure_power_charpoly() {
        let ms = IndecompMultiset::new(vec![Indecomposable::a_zero(2), Indecomposable::a_inf(3)]);
        let p = synthesize(&ms);
        assert_eq!(charpoly(&p.fg()), QPoly::u().pow(p.m()));
        assert_eq!(reduced_charpoly(&p, p.m()).unwrap(), QPoly::one());
    }

    #[test]
    fn json_roundtrip() {
        let ms = IndecompMultiset::new(vec![
            Indecomposable::a_poly(1, lin(3)),
            Indecomposable::a_inf(2),
            Indecomposable::Bshift { k: 1 },
        ]);
        let v = serde_json::to_value(&ms).unwrap();
        let expected = serde_json::json!([
            {"type": "A", "k": 1, "poly": ["-3", "1"]},
            {"type": "A", "k": 2, "poly": "inf"},
            {"type": "Bshift", "k": 1}
        ]);
        assert_eq!(v, expected);
        let back: IndecompMultiset = serde_json::from_value(v).unwrap();
        assert_eq!(back, ms);
        let bad = serde_json::json!([{"type": "A", "k": 1, "poly": ["-2", "0", "1", "0"]}]);
        assert!(serde_json::from_value::<IndecompMultiset>(bad).is_ok());
        let reducible = serde_json::json!([{"type": "A", "k": 1, "poly": ["-1", "0", "1"]}]);
        assert!(serde_json::from_value::<IndecompMultiset>(reducible).is_err());
    }

    #[test]
    fn shape_errors() {
        assert!(MatrixPair::new(QMatrix::zeros(2, 3), QMatrix::zeros(2, 3)).is_err());
    }
}
