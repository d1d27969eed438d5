//! Equivariant Betti tables of determinantal varieties.
//!
//! For `Z₀ ⊂ Hom(V₀, V₁)` the maps of rank at most `t`, the summands of
//! `Tor_p(O_{Z₀}, C)_{p+q}` are indexed by `b ≥ 0` and partitions `α`, `β`
//! with `ℓ(α) ≤ b`, `β₁ ≤ b`. With `a = t` the summand is
//!
//! ```text
//! S_P(V₀) ⊗ S_Q(V₁*),  P = (b+α₁, …, b+α_b, b^a, β),
//!                      Q = (b+β†₁, …, b+β†_b, b^a, α†),
//! p = b² + |α| + |β|,  q = a·b.
//! ```
//!
//! A Schur functor of `V₀` vanishes once it has more than `n` rows, which
//! bounds `ℓ(β) ≤ n − t − b`; on `V₁*` it bounds `α₁ ≤ m − t − b`. These are
//! used as enumeration limits, so the table is finite by construction.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::partition::{dim_schur, partitions_in_box, BoxBound, Partition};

/// The determinantal variety of maps `C^n → C^m` of rank at most `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DetVarSpec {
    pub n: usize,
    pub m: usize,
    pub t: usize,
}

impl DetVarSpec {
    pub fn new(n: usize, m: usize, t: usize) -> Result<Self> {
        if t > n.min(m) {
            return invalid(format!("rank bound t = {t} exceeds min(n, m) = {}", n.min(m)));
        }
        Ok(DetVarSpec { n, m, t })
    }

    fn validate(&self) -> Result<()> {
        Self::new(self.n, self.m, self.t).map(|_| ())
    }
}

/// `S_P(V₀) ⊗ S_Q(V₁*)` together with its dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RepPair {
    #[serde(rename = "P")]
    pub p: Partition,
    #[serde(rename = "Q")]
    pub q: Partition,
    pub dim: u64,
}

impl RepPair {
    /// Builds the pair for `dim V₀ = n`, `dim V₁ = m`.
    pub fn new(p: Partition, q: Partition, n: usize, m: usize) -> Self {
        let dim = dim_schur(&p, n) * dim_schur(&q, m);
        RepPair { p, q, dim }
    }

    pub fn trivial() -> Self {
        RepPair {
            p: Partition::empty(),
            q: Partition::empty(),
            dim: 1,
        }
    }
}

/// One summand of the Betti table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    /// Homological degree.
    pub p: usize,
    /// Internal degree `p + strand`.
    pub d: usize,
    pub strand: usize,
    #[serde(flatten)]
    pub rep: RepPair,
    pub b: usize,
    pub alpha: Partition,
    pub beta: Partition,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub spec: DetVarSpec,
    pub entries: Vec<BettiEntry>,
}

impl BettiTable {
    /// Total dimension at each `(p, d)`.
    pub fn betti_numbers(&self) -> BTreeMap<(usize, usize), u64> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry((e.p, e.d)).or_insert(0) += e.rep.dim;
        }
        out
    }

    /// Total dimension of `Tor_p` summed over internal degrees.
    pub fn total_by_p(&self) -> BTreeMap<usize, u64> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry(e.p).or_insert(0) += e.rep.dim;
        }
        out
    }

    pub fn dim_at(&self, p: usize, d: usize) -> u64 {
        self.entries
            .iter()
            .filter(|e| e.p == p && e.d == d)
            .map(|e| e.rep.dim)
            .sum()
    }

    /// Entries of the strand `d − p = k`.
    pub fn strand(&self, k: usize) -> Vec<(usize, RepPair)> {
        self.entries
            .iter()
            .filter(|e| e.strand == k)
            .map(|e| (e.p, e.rep.clone()))
            .collect()
    }

    pub fn max_p(&self) -> usize {
        self.entries.iter().map(|e| e.p).max().unwrap_or(0)
    }
}

/// `(b+α₁, …, b+α_b, b^a, tail)`.
fn hook_shape(b: usize, a: usize, head: &Partition, tail: &Partition) -> Partition {
    let mut parts: Vec<usize> = (0..b).map(|i| b + head.part(i)).collect();
    parts.extend(std::iter::repeat_n(b, a));
    parts.extend_from_slice(tail.parts());
    Partition::new(parts).expect("hook shape is a partition")
}

/// The shapes `(P, Q)` attached to `(a, b, α, β)`.
pub fn lascoux_shapes(a: usize, b: usize, alpha: &Partition, beta: &Partition) -> (Partition, Partition) {
    let p = hook_shape(b, a, alpha, beta);
    let q = hook_shape(b, a, &beta.conjugate(), &alpha.conjugate());
    (p, q)
}

/// The full equivariant Betti table, sorted by `(p, d, P, Q)`.
pub fn betti_table(spec: DetVarSpec) -> Result<BettiTable> {
    spec.validate()?;
    let DetVarSpec { n, m, t } = spec;
    let a = t;
    let mut entries = Vec::new();
    for b in 0..=(m - t).min(n - t) {
        let alphas = partitions_in_box(BoxBound::new(b, m - t - b));
        let betas = partitions_in_box(BoxBound::new(n - t - b, b));
        for alpha in &alphas {
            for beta in &betas {
                let (pp, qq) = lascoux_shapes(a, b, alpha, beta);
                let rep = RepPair::new(pp, qq, n, m);
                if rep.dim == 0 {
                    continue;
                }
                let p = b * b + alpha.size() + beta.size();
                let strand = a * b;
                entries.push(BettiEntry {
                    p,
                    d: p + strand,
                    strand,
                    rep,
                    b,
                    alpha: alpha.clone(),
                    beta: beta.clone(),
                });
            }
        }
    }
    entries.sort_by(|x, y| {
        (x.p, x.d, &x.rep.p, &x.rep.q).cmp(&(y.p, y.d, &y.rep.p, &y.rep.q))
    });
    Ok(BettiTable { spec, entries })
}

/// The linear strand `L_k = ⊕_p Tor_p(O_{Z₀}, C)_{p+k}` as `(p, rep)` pairs.
pub fn linear_strand(spec: DetVarSpec, k: usize) -> Result<Vec<(usize, RepPair)>> {
    Ok(betti_table(spec)?.strand(k))
}

/// True when no `(P, Q)` occurs twice in the table.
pub fn verify_multiplicity_free(spec: DetVarSpec) -> Result<bool> {
    let table = betti_table(spec)?;
    let mut seen = BTreeSet::new();
    Ok(table
        .entries
        .iter()
        .all(|e| seen.insert((e.rep.p.clone(), e.rep.q.clone()))))
}
