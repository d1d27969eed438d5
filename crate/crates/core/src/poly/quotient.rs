use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::linalg::{clear_denominators, SparseEchelon, SparseRow};
use crate::partition::GradedDims;
use crate::poly::multi::{Exponents, MultiPoly};

/// All exponent vectors of weighted degree exactly `d`, in lexicographic order.
pub fn monomials_of_degree(weights: &[u32], d: u32) -> Vec<Exponents> {
    fn rec(weights: &[u32], i: usize, left: u32, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        if i == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = weights[i];
        for k in 0..=left / w {
            cur[i] = k;
            rec(weights, i + 1, left - k * w, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    if weights.is_empty() {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(weights, 0, d, &mut vec![0; weights.len()], &mut out);
    out
}

/// Number of monomials of weighted degree `d`.
pub fn count_monomials(weights: &[u32], d: u32) -> u64 {
    let mut ways = vec![0u64; d as usize + 1];
    ways[0] = 1;
    for &w in weights {
        for k in w as usize..=d as usize {
            ways[k] += ways[k - w as usize];
        }
    }
    ways[d as usize]
}

/// Per-degree dimensions of a weighted-graded quotient `ℚ[x]/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedQuotientReport {
    pub weights: Vec<u32>,
    pub up_to: u32,
    /// Number of monomials in each degree `0..=up_to`.
    pub monomials: Vec<u64>,
    /// Rank of the ideal in each degree.
    pub ideal_rank: Vec<u64>,
    /// `monomials - ideal_rank`, nonzero entries only.
    pub dims: GradedDims,
}

impl GradedQuotientReport {
    /// Dimension in each degree `0..=up_to`, zeros included.
    pub fn dense(&self) -> Vec<u64> {
        self.monomials
            .iter()
            .zip(&self.ideal_rank)
            .map(|(m, r)| m - r)
            .collect()
    }

    pub fn total(&self) -> u64 {
        self.dims.total()
    }
}

struct Degree {
    monomials: Vec<Exponents>,
    echelon: SparseEchelon,
}

fn check_weights(nvars: usize, weights: &[u32]) -> Result<()> {
    if weights.len() != nvars {
        return invalid(format!("expected {nvars} weights, got {}", weights.len()));
    }
    if weights.contains(&0) {
        return invalid("weights must be positive");
    }
    Ok(())
}

fn to_row(p: &MultiPoly, index: &HashMap<Exponents, usize>) -> SparseRow {
    let mut row: Vec<_> = p.terms().map(|(e, c)| (index[e], c.clone())).collect();
    row.sort_by_key(|(c, _)| *c);
    clear_denominators(&row)
}

/// Graded dimensions of `ℚ[x_0..x_{n-1}] / (relations)` in degrees `0..=up_to`.
///
/// The degree-`d` part of the ideal is spanned by `x_i · I_{d - w_i}` together
/// with the relations of degree `d`, so each degree is one exact rank
/// computation over the previous echelon forms.
pub fn graded_quotient_dims(
    nvars: usize,
    weights: &[u32],
    relations: &[MultiPoly],
    up_to: u32,
) -> Result<GradedQuotientReport> {
    check_weights(nvars, weights)?;
    let mut by_degree: HashMap<u32, Vec<&MultiPoly>> = HashMap::new();
    for r in relations {
        if r.nvars() != nvars {
            return invalid(format!("relation has {} variables, expected {nvars}", r.nvars()));
        }
        if !r.is_homogeneous(weights) {
            return invalid(format!("relation {r} is not homogeneous"));
        }
        if let Some(d) = r.degree(weights) {
            by_degree.entry(d).or_default().push(r);
        }
    }

    let mut degrees: Vec<Degree> = Vec::with_capacity(up_to as usize + 1);
    for d in 0..=up_to {
        let monomials = monomials_of_degree(weights, d);
        let index: HashMap<Exponents, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let mut echelon = SparseEchelon::new();
        for (i, &w) in weights.iter().enumerate() {
            if w > d {
                continue;
            }
            let prev = &degrees[(d - w) as usize];
            for row in prev.echelon.rows() {
                let mut shifted: SparseRow = row
                    .iter()
                    .map(|(c, v)| {
                        let mut e = prev.monomials[*c].clone();
                        e[i] += 1;
                        (index[&e], v.clone())
                    })
                    .collect();
                shifted.sort_by_key(|(c, _)| *c);
                echelon.insert(shifted);
            }
        }
        for r in by_degree.get(&d).into_iter().flatten() {
            echelon.insert(to_row(r, &index));
        }
        degrees.push(Degree {
            monomials,
            echelon,
        });
    }

    let monomials: Vec<u64> = degrees.iter().map(|g| g.monomials.len() as u64).collect();
    let ideal_rank: Vec<u64> = degrees.iter().map(|g| g.echelon.rank() as u64).collect();
    let dims = GradedDims(
        monomials
            .iter()
            .zip(&ideal_rank)
            .enumerate()
            .filter(|(_, (m, r))| m > r)
            .map(|(d, (m, r))| (d, m - r))
            .collect(),
    );
    Ok(GradedQuotientReport {
        weights: weights.to_vec(),
        up_to,
        monomials,
        ideal_rank,
        dims,
    })
}

/// Homogenizes each relation with an extra last variable of weight 1.
pub fn homogenize(nvars: usize, weights: &[u32], relations: &[MultiPoly]) -> Vec<MultiPoly> {
    relations
        .iter()
        .filter_map(|r| {
            let top = r.degree(weights)?;
            Some(MultiPoly::from_terms(
                nvars + 1,
                r.terms().map(|(e, c)| {
                    let mut ne = e.clone();
                    ne.push(top - MultiPoly::weighted(e, weights));
                    (ne, c.clone())
                }),
            ))
        })
        .collect()
}

/// Filtered dimensions `dim R_{≤D} / span{m·r : deg(m·r) ≤ D}` for
/// `D = 0..=up_to`, where the relations need not be homogeneous.
///
/// When the top-degree forms of the relations generate their own leading
/// ideal (for instance when they form a regular sequence) the values
/// stabilize at `dim_ℚ R/I` once `D` passes the socle degree.
pub fn filtered_quotient_dims(
    nvars: usize,
    weights: &[u32],
    relations: &[MultiPoly],
    up_to: u32,
) -> Result<Vec<u64>> {
    check_weights(nvars, weights)?;
    if let Some(r) = relations.iter().find(|r| r.nvars() != nvars) {
        return invalid(format!("relation has {} variables, expected {nvars}", r.nvars()));
    }
    let mut hw = weights.to_vec();
    hw.push(1);
    let hrels = homogenize(nvars, weights, relations);
    Ok(graded_quotient_dims(nvars + 1, &hw, &hrels, up_to)?.dense())
}

/// Runs several independent quotient computations, optionally in parallel.
pub fn graded_quotient_dims_many(
    jobs: &[(usize, Vec<u32>, Vec<MultiPoly>, u32)],
    parallel: bool,
) -> Vec<Result<GradedQuotientReport>> {
    let run = |(n, w, r, d): &(usize, Vec<u32>, Vec<MultiPoly>, u32)| graded_quotient_dims(*n, w, r, *d);
    if parallel {
        jobs.par_iter().map(run).collect()
    } else {
        jobs.iter().map(run).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use proptest::prelude::*;

    fn x(n: usize, i: usize) -> MultiPoly {
        MultiPoly::var(n, i)
    }

    #[test]
    fn single_variable_square() {
        let r = graded_quotient_dims(1, &[1], &[x(1, 0).pow(2)], 4).unwrap();
        assert_eq!(r.dense(), vec![1, 1, 0, 0, 0]);
    }

    #[test]
    fn complete_intersection_two_squares() {
        let r = graded_quotient_dims(2, &[1, 1], &[x(2, 0).pow(2), x(2, 1).pow(2)], 4).unwrap();
        assert_eq!(r.dense(), vec![1, 2, 1, 0, 0]);
        assert_eq!(r.total(), 4);
    }

    #[test]
    fn inhomogeneous_rejected() {
        let rel = &x(2, 0).pow(2) + &x(2, 1);
        assert!(graded_quotient_dims(2, &[1, 1], std::slice::from_ref(&rel), 3).is_err());
        assert!(graded_quotient_dims(2, &[1, 2], &[rel], 3).is_ok());
    }

    #[test]
    fn bad_weights_rejected() {
        assert!(graded_quotient_dims(2, &[1], &[], 3).is_err());
        assert!(graded_quotient_dims(1, &[0], &[], 3).is_err());
    }

    #[test]
    fn weighted_monomial_count() {
        assert_eq!(count_monomials(&[1, 2], 4), 3);
        assert_eq!(monomials_of_degree(&[1, 2], 4).len(), 3);
        assert_eq!(count_monomials(&[], 0), 1);
        assert_eq!(count_monomials(&[], 2), 0);
    }

    #[test]
    fn filtered_dims_of_points() {
        // x^2 - 1 cuts out two points; filtered dims climb to 2 and stay there.
        let rel = &x(1, 0).pow(2) - &MultiPoly::constant(1, q(1));
        let dims = filtered_quotient_dims(1, &[1], &[rel], 5).unwrap();
        assert_eq!(dims, vec![1, 2, 2, 2, 2, 2]);
    }

    #[test]
    fn dependent_relations_counted_once() {
        let a = x(2, 0).pow(2);
        let b = &x(2, 0) * &x(2, 1);
        let c = &a + &b;
        let r = graded_quotient_dims(2, &[1, 1], &[a, b, c], 3).unwrap();
        assert_eq!(r.dense(), vec![1, 2, 1, 1]);
    }

    proptest! {
        #[test]
        fn zero_ideal_matches_monomial_count(weights in proptest::collection::vec(1u32..4, 1..4), d in 0u32..8) {
            let r = graded_quotient_dims(weights.len(), &weights, &[], d).unwrap();
            for k in 0..=d {
                prop_assert_eq!(r.dense()[k as usize], count_monomials(&weights, k));
            }
        }
    }
}
