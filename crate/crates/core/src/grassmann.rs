//! The cohomology ring of `Gr_s(C^N)` in the Schubert basis.
//!
//! The class `σ_λ` of a partition `λ ⊆ s × (N − s)` sits in degree `2|λ|`;
//! products are Littlewood–Richardson expansions truncated to the box.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{invalid, Result};
use crate::linalg::Q;
use crate::partition::{binomial, gaussian_poincare, lr_expand_in_box, partitions_in_box_of_size, BoxBound, GradedDims, Partition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GrassSpec {
    pub s: usize,
    #[serde(rename = "N")]
    pub ambient: usize,
}

impl GrassSpec {
    pub fn new(s: usize, ambient: usize) -> Result<Self> {
        if s > ambient {
            return invalid(format!("Gr_{s}(C^{ambient}): s exceeds N"));
        }
        Ok(GrassSpec { s, ambient })
    }

    /// The `s × (N − s)` box holding the Schubert basis.
    pub fn bound(&self) -> BoxBound {
        BoxBound::new(self.s, self.ambient - self.s)
    }

    /// Complex dimension `s(N − s)`; the top cohomological degree is twice this.
    pub fn dimension(&self) -> usize {
        self.s * (self.ambient - self.s)
    }

    /// The class of a point, `σ` of the full box.
    pub fn point_class(&self) -> Partition {
        Partition::rectangle(self.s, self.ambient - self.s)
    }
}

/// A rational combination of Schubert classes.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologyClass {
    terms: BTreeMap<Partition, Q>,
}

#[derive(Serialize)]
struct TermJson {
    partition: Partition,
    coeff_num: String,
    coeff_den: String,
}

impl Serialize for CohomologyClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (p, c) in &self.terms {
            seq.serialize_element(&TermJson {
                partition: p.clone(),
                coeff_num: c.numer().to_string(),
                coeff_den: c.denom().to_string(),
            })?;
        }
        seq.end()
    }
}

impl CohomologyClass {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The Schubert class `σ_λ`.
    pub fn schubert(p: Partition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(p, Q::one());
        CohomologyClass { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Partition, Q)>) -> Self {
        let mut out = Self::zero();
        for (p, c) in terms {
            out.add_term(p, c);
        }
        out
    }

    fn add_term(&mut self, p: Partition, c: Q) {
        let e = self.terms.entry(p.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Q> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Partition) -> Q {
        self.terms.get(p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add(&self, other: &CohomologyClass) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_terms(self.terms.iter().map(|(p, x)| (p.clone(), x * c)))
    }

    fn check(&self, spec: GrassSpec) -> Result<()> {
        match self.terms.keys().find(|p| !p.fits(spec.bound())) {
            Some(p) => invalid(format!("class {p} does not fit Gr_{}(C^{})", spec.s, spec.ambient)),
            None => Ok(()),
        }
    }
}

/// Schubert basis of `H^degree(Gr_s(C^N))`.
pub fn basis(spec: GrassSpec, degree: usize) -> Result<Vec<Partition>> {
    if degree % 2 == 1 {
        return invalid(format!("odd degree {degree}: the cohomology is concentrated in even degrees"));
    }
    Ok(partitions_in_box_of_size(spec.bound(), degree / 2))
}

/// Graded dimensions (degrees doubled).
pub fn graded_dims(spec: GrassSpec) -> GradedDims {
    gaussian_poincare(spec.s, spec.ambient).expect("spec is valid")
}

/// The cup product.
pub fn cup(spec: GrassSpec, x: &CohomologyClass, y: &CohomologyClass) -> Result<CohomologyClass> {
    x.check(spec)?;
    y.check(spec)?;
    let mut out = CohomologyClass::zero();
    for (p, a) in &x.terms {
        for (q, b) in &y.terms {
            let ab = a * b;
            for (l, c) in lr_expand_in_box(p, q, spec.bound())? {
                out.add_term(l, &ab * Q::from_integer(c.into()));
            }
        }
    }
    Ok(out)
}

/// `dim H^*(Gr_s(C^N)) = C(N, s)`.
pub fn total_dim(spec: GrassSpec) -> u64 {
    binomial(spec.ambient, spec.s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;
    use crate::partition::partitions_in_box;

    fn p(parts: &[usize]) -> Partition {
        Partition::from_parts(parts)
    }

    fn sigma(parts: &[usize]) -> CohomologyClass {
        CohomologyClass::schubert(p(parts))
    }

    fn g(s: usize, n: usize) -> GrassSpec {
        GrassSpec::new(s, n).unwrap()
    }

    #[test]
    fn bases() {
        assert_eq!(basis(g(1, 2), 2).unwrap(), vec![p(&[1])]);
        assert_eq!(basis(g(2, 4), 4).unwrap(), vec![p(&[2]), p(&[1, 1])]);
        assert!(basis(g(1, 3), 6).unwrap().is_empty());
        assert!(basis(g(1, 3), 3).is_err());
        assert!(GrassSpec::new(3, 2).is_err());
    }

    #[test]
    fn products() {
        assert!(cup(g(1, 2), &sigma(&[1]), &sigma(&[1])).unwrap().is_zero());
        assert_eq!(
            cup(g(2, 4), &sigma(&[1]), &sigma(&[1])).unwrap(),
            sigma(&[2]).add(&sigma(&[1, 1]))
        );
        assert_eq!(cup(g(2, 4), &sigma(&[1]), &sigma(&[2, 1])).unwrap(), sigma(&[2, 2]));
        assert!(cup(g(1, 2), &sigma(&[2]), &sigma(&[])).is_err());
    }

    #[test]
    fn totals() {
        assert_eq!(total_dim(g(1, 2)), 2);
        assert_eq!(total_dim(g(2, 4)), 6);
        assert_eq!(total_dim(g(0, 5)), 1);
        for n in 0..=6 {
            for s in 0..=n {
                assert_eq!(graded_dims(g(s, n)).total(), total_dim(g(s, n)));
            }
        }
    }

    #[test]
    fn associative_commutative_integral() {
        for n in 0..=4 {
            for s in 0..=n {
                let spec = g(s, n);
                let all = partitions_in_box(spec.bound());
                for a in &all {
                    for b in &all {
                        let ab = cup(spec, &sigma(a.parts()), &sigma(b.parts())).unwrap();
                        let ba = cup(spec, &sigma(b.parts()), &sigma(a.parts())).unwrap();
                        assert_eq!(ab, ba);
                        assert!(ab.terms().values().all(|c| c.is_integer() && *c > Q::zero()));
                        for c in &all {
                            let left = cup(spec, &ab, &sigma(c.parts())).unwrap();
                            let bc = cup(spec, &sigma(b.parts()), &sigma(c.parts())).unwrap();
                            let right = cup(spec, &sigma(a.parts()), &bc).unwrap();
                            assert_eq!(left, right);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn poincare_duality_pairing() {
        for n in 0..=4 {
            for s in 0..=n {
                let spec = g(s, n);
                let top = spec.point_class();
                let all = partitions_in_box(spec.bound());
                for a in &all {
                    let partners: Vec<&Partition> = all
                        .iter()
                        .filter(|b| {
                            cup(spec, &sigma(a.parts()), &sigma(b.parts())).unwrap()
                                == CohomologyClass::schubert(top.clone())
                        })
                        .collect();
                    assert_eq!(partners, vec![&a.complement(spec.bound()).unwrap()]);
                }
            }
        }
    }

    #[test]
    fn generated_span_dims() {
        // Products of the special classes σ_(k) span each graded piece.
        use crate::linalg::QMatrix;
        for n in 0..=6 {
            for s in 0..=n {
                let spec = g(s, n);
                let dims = graded_dims(spec);
                let gens: Vec<CohomologyClass> = (1..=n - s).map(|k| sigma(&[k])).collect();
                let mut by_degree: Vec<Vec<CohomologyClass>> = vec![Vec::new(); spec.dimension() + 1];
                by_degree[0].push(sigma(&[]));
                for d in 0..=spec.dimension() {
                    let current = by_degree[d].clone();
                    for x in &current {
                        for (k, gen) in gens.iter().enumerate() {
                            if d + k < spec.dimension() {
                                let y = cup(spec, x, gen).unwrap();
                                if !y.is_zero() {
                                    by_degree[d + k + 1].push(y);
                                }
                            }
                        }
                    }
                    let cols = basis(spec, 2 * d).unwrap();
                    let rows: Vec<Vec<Q>> = by_degree[d]
                        .iter()
                        .map(|c| cols.iter().map(|b| c.coeff(b)).collect())
                        .collect();
                    let rank = QMatrix::from_rows(rows.len(), cols.len(), rows).rank();
                    assert_eq!(rank as u64, dims.get(2 * d), "Gr_{s}(C^{n}) degree {}", 2 * d);
                }
            }
        }
    }

    #[test]
    fn linearity() {
        let spec = g(2, 4);
        let x = sigma(&[1]).scale(&q(3)).add(&sigma(&[2]));
        let y = sigma(&[1, 1]);
        let lhs = cup(spec, &x, &y).unwrap();
        let rhs = cup(spec, &sigma(&[1]), &y)
            .unwrap()
            .scale(&q(3))
            .add(&cup(spec, &sigma(&[2]), &y).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn json_shape() {
        let x = sigma(&[1]).scale(&crate::linalg::q_frac(-3, 2));
        let v = serde_json::to_value(&x).unwrap();
        assert_eq!(v, serde_json::json!([{"partition": [1], "coeff_num": "-3", "coeff_den": "2"}]));
    }
}
