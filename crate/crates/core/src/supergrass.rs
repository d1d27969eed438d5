//! Coherent cohomology of the structure sheaf of `Gr_{r|s}(C^{n|m})`.
//!
//! After normalizing to `r ≥ s`, put `δ = m − n + r − s` when `r − s > n − m`
//! and `δ = 0` otherwise, and `t = m − δ`. With `A = H*(Gr_s(C^t))` (degrees
//! doubled) and `L_k` the `k`-th linear strand of the resolution of the
//! determinantal variety of rank-`≤ t` maps `C^n → C^m`,
//!
//! ```text
//! H^i(X, O_X) = ⊕_j A_{2j} ⊗ L_{i−2j}.
//! ```
//!
//! A summand of `Tor_p` in strand `k` carries parity `(p + k) mod 2`.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::grassmann::{graded_dims, GrassSpec};
use crate::lascoux::{betti_table, DetVarSpec, RepPair};
use crate::partition::binomial;

/// The super Grassmannian `Gr_{r|s}(C^{n|m})`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SuperGrassSpec {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub s: usize,
}

impl SuperGrassSpec {
    pub fn new(n: usize, m: usize, r: usize, s: usize) -> Result<Self> {
        if r > n || s > m {
            return invalid(format!("Gr_{{{r}|{s}}}(C^{{{n}|{m}}}): need r ≤ n and s ≤ m"));
        }
        Ok(SuperGrassSpec { n, m, r, s })
    }

    fn validate(&self) -> Result<()> {
        Self::new(self.n, self.m, self.r, self.s).map(|_| ())
    }

    /// Swaps even and odd parts so that `r ≥ s`; idempotent.
    pub fn normalize(&self) -> Self {
        if self.r >= self.s {
            *self
        } else {
            SuperGrassSpec {
                n: self.m,
                m: self.n,
                r: self.s,
                s: self.r,
            }
        }
    }

    /// `δ`; requires a normalized spec.
    pub fn delta(&self) -> Result<usize> {
        if self.r < self.s {
            return invalid("delta needs r ≥ s; normalize first");
        }
        let lhs = self.r - self.s;
        Ok((lhs + self.m).saturating_sub(self.n))
    }
}

impl std::fmt::Display for SuperGrassSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gr_{{{}|{}}}(C^{{{}|{}}})", self.r, self.s, self.n, self.m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// One summand `A_{a_degree} ⊗ (rep in Tor_p, strand k)` of `H^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyTerm {
    pub a_degree: usize,
    pub a_dim: u64,
    pub strand: usize,
    pub p: usize,
    #[serde(rename = "P")]
    pub big_p: crate::partition::Partition,
    #[serde(rename = "Q")]
    pub big_q: crate::partition::Partition,
    pub rep_dim: u64,
    /// `a_dim · rep_dim`.
    pub dim: u64,
    pub parity: Parity,
}

impl CohomologyTerm {
    pub fn rep(&self) -> RepPair {
        RepPair {
            p: self.big_p.clone(),
            q: self.big_q.clone(),
            dim: self.rep_dim,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyGroup {
    pub i: usize,
    pub even_dim: u64,
    pub odd_dim: u64,
    pub terms: Vec<CohomologyTerm>,
}

impl CohomologyGroup {
    pub fn dim(&self) -> u64 {
        self.even_dim + self.odd_dim
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerCheck {
    pub formula: i64,
    pub computed: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyReport {
    pub spec: SuperGrassSpec,
    pub normalized: SuperGrassSpec,
    pub delta: usize,
    /// `A = H*(Gr_s(C^{m−δ}))` for the normalized spec.
    pub a: GrassSpec,
    /// The determinantal variety whose strands appear.
    pub detvar: DetVarSpec,
    pub groups: Vec<CohomologyGroup>,
    pub total_even: u64,
    pub total_odd: u64,
    pub euler: EulerCheck,
}

impl CohomologyReport {
    pub fn dims(&self) -> Vec<u64> {
        self.groups.iter().map(|g| g.dim()).collect()
    }

    pub fn dim(&self, i: usize) -> u64 {
        self.groups.get(i).map_or(0, |g| g.dim())
    }

    /// `Σ_i (−1)^i (even_dim − odd_dim)`.
    pub fn alternating_sum(&self) -> i64 {
        self.groups
            .iter()
            .map(|g| {
                let sd = g.even_dim as i64 - g.odd_dim as i64;
                if g.i % 2 == 0 {
                    sd
                } else {
                    -sd
                }
            })
            .sum()
    }
}

/// Closed-form super Euler characteristic.
pub fn euler_formula(spec: SuperGrassSpec) -> Result<i64> {
    spec.validate()?;
    let SuperGrassSpec { n, m, r, s } = spec.normalize();
    let value = if n + s >= m + r {
        binomial(m, s)
    } else if r == s && m > n {
        binomial(n, s)
    } else {
        0
    };
    Ok(value as i64)
}

/// Full per-degree decomposition of `H^*(X, O_X)`.
pub fn cohomology(spec: SuperGrassSpec) -> Result<CohomologyReport> {
    spec.validate()?;
    let norm = spec.normalize();
    let delta = norm.delta()?;
    let t = norm.m - delta;
    let a = GrassSpec::new(norm.s, t)?;
    let detvar = DetVarSpec::new(norm.n, norm.m, t)?;
    let a_dims = graded_dims(a);
    let table = betti_table(detvar)?;

    let max_strand = table.entries.iter().map(|e| e.strand).max().unwrap_or(0);
    let top = 2 * a.dimension() + max_strand;
    let mut groups: Vec<CohomologyGroup> = (0..=top)
        .map(|i| CohomologyGroup {
            i,
            even_dim: 0,
            odd_dim: 0,
            terms: Vec::new(),
        })
        .collect();
    for (&a_degree, &a_dim) in &a_dims.0 {
        for e in &table.entries {
            let i = a_degree + e.strand;
            let parity = if (e.p + e.strand) % 2 == 0 { Parity::Even } else { Parity::Odd };
            let dim = a_dim * e.rep.dim;
            let g = &mut groups[i];
            match parity {
                Parity::Even => g.even_dim += dim,
                Parity::Odd => g.odd_dim += dim,
            }
            g.terms.push(CohomologyTerm {
                a_degree,
                a_dim,
                strand: e.strand,
                p: e.p,
                big_p: e.rep.p.clone(),
                big_q: e.rep.q.clone(),
                rep_dim: e.rep.dim,
                dim,
                parity,
            });
        }
    }
    for g in &mut groups {
        g.terms.sort_by(|x, y| {
            (x.a_degree, x.p, &x.big_p, &x.big_q).cmp(&(y.a_degree, y.p, &y.big_p, &y.big_q))
        });
    }
    let total_even = groups.iter().map(|g| g.even_dim).sum();
    let total_odd = groups.iter().map(|g| g.odd_dim).sum();
    let mut report = CohomologyReport {
        spec,
        normalized: norm,
        delta,
        a,
        detvar,
        groups,
        total_even,
        total_odd,
        euler: EulerCheck {
            formula: euler_formula(spec)?,
            computed: 0,
        },
    };
    report.euler.computed = report.alternating_sum();
    Ok(report)
}

/// The super Euler characteristic computed both ways; errors if they differ.
pub fn super_euler(spec: SuperGrassSpec) -> Result<EulerCheck> {
    let check = cohomology(spec)?.euler;
    if check.formula != check.computed {
        return Err(Error::Mismatch(format!(
            "super Euler characteristic of {spec}: formula {} but cohomology gives {}",
            check.formula, check.computed
        )));
    }
    Ok(check)
}
