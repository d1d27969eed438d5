use std::fmt;

use num_traits::One;

use crate::error::{invalid, Result};
use crate::linalg::{q, Q};
use crate::poly::MultiPoly;

/// Polynomial in one variable `u` whose coefficients are [`MultiPoly`]s.
///
/// `coeffs[k]` is the coefficient of `u^k`; trailing zero coefficients are
/// trimmed so the last entry (if any) is the leading coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    nvars: usize,
    coeffs: Vec<MultiPoly>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mono = match k {
                    0 => String::new(),
                    1 => "u".to_string(),
                    _ => format!("u^{k}"),
                };
                if k == 0 {
                    format!("({c})")
                } else if c.is_one() {
                    mono
                } else {
                    format!("({c})*{mono}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl UniPoly {
    pub fn zero(nvars: usize) -> Self {
        UniPoly {
            nvars,
            coeffs: Vec::new(),
        }
    }

    /// Builds from ascending coefficients.
    pub fn new(nvars: usize, coeffs: Vec<MultiPoly>) -> Self {
        assert!(coeffs.iter().all(|c| c.nvars() == nvars), "variable count mismatch");
        let mut p = UniPoly { nvars, coeffs };
        p.trim();
        p
    }

    /// Builds from ascending rational coefficients.
    pub fn from_rationals(nvars: usize, coeffs: &[Q]) -> Self {
        Self::new(
            nvars,
            coeffs.iter().map(|c| MultiPoly::constant(nvars, c.clone())).collect(),
        )
    }

    /// `u^k` with coefficient ring in `nvars` variables.
    pub fn u_pow(nvars: usize, k: usize) -> Self {
        let mut coeffs = vec![MultiPoly::zero(nvars); k + 1];
        coeffs[k] = MultiPoly::one(nvars);
        UniPoly { nvars, coeffs }
    }

    /// The universal monic polynomial `u^n + a_1 u^{n-1} + … + a_n` with
    /// `a_i` the variable `x_{i-1}` of an `n`-variable coefficient ring.
    pub fn universal_monic(n: usize) -> Self {
        let mut coeffs = vec![MultiPoly::zero(n); n + 1];
        coeffs[n] = MultiPoly::one(n);
        for i in 1..=n {
            coeffs[n - i] = MultiPoly::var(n, i - 1);
        }
        UniPoly { nvars: n, coeffs }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    /// Coefficient of `u^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> MultiPoly {
        self.coeffs.get(k).cloned().unwrap_or_else(|| MultiPoly::zero(self.nvars))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree in `u`; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&MultiPoly> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    /// Re-embeds the coefficient ring (see [`MultiPoly::embed`]).
    pub fn embed(&self, new_nvars: usize, offset: usize) -> Self {
        UniPoly {
            nvars: new_nvars,
            coeffs: self.coeffs.iter().map(|c| c.embed(new_nvars, offset)).collect(),
        }
    }

    pub fn add(&self, other: &UniPoly) -> Self {
        assert_eq!(self.nvars, other.nvars);
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new(
            self.nvars,
            (0..len).map(|k| &self.coeff(k) + &other.coeff(k)).collect(),
        )
    }

    pub fn sub(&self, other: &UniPoly) -> Self {
        self.add(&other.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::new(self.nvars, self.coeffs.iter().map(|x| x.scale(c)).collect())
    }

    pub fn scale_poly(&self, c: &MultiPoly) -> Self {
        Self::new(self.nvars, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> Self {
        assert_eq!(self.nvars, other.nvars);
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.nvars);
        }
        let mut coeffs = vec![MultiPoly::zero(self.nvars); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Self::new(self.nvars, coeffs)
    }

    /// Multiplies by `u^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![MultiPoly::zero(self.nvars); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly {
            nvars: self.nvars,
            coeffs,
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.nvars,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.scale(&q(k as i64)))
                .collect(),
        )
    }

    /// Evaluates at `u = value` (a coefficient-ring element).
    pub fn eval_at(&self, value: &MultiPoly) -> MultiPoly {
        let mut acc = MultiPoly::zero(self.nvars);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, nvars: usize, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        Self::new(nvars, self.coeffs.iter().map(f).collect())
    }

    /// Division with remainder by a divisor whose leading coefficient is 1.
    pub fn monic_divmod(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        if divisor.nvars != self.nvars {
            return invalid("divmod: coefficient rings differ");
        }
        if !divisor.is_monic() {
            return invalid("divmod: divisor is not monic");
        }
        let dd = divisor.degree().unwrap();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len().saturating_sub(dd);
        let mut quot = vec![MultiPoly::zero(self.nvars); qlen];
        for k in (0..qlen).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dd.min(rem.len()));
        Ok((Self::new(self.nvars, quot), Self::new(self.nvars, rem)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rat_poly(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_rationals(0, &coeffs.iter().map(|&c| q(c)).collect::<Vec<_>>())
    }

    #[test]
    fn universal_monic_shape() {
        let f = UniPoly::universal_monic(2);
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.coeff(1), MultiPoly::var(2, 0));
        assert_eq!(f.coeff(0), MultiPoly::var(2, 1));
        assert!(f.is_monic());
    }

    #[test]
    fn divmod_small() {
        let f = rat_poly(&[-1, 0, 0, 1]);
        let g = rat_poly(&[-1, 1]);
        let (quo, rem) = f.monic_divmod(&g).unwrap();
        assert_eq!(quo, rat_poly(&[1, 1, 1]));
        assert!(rem.is_zero());

        let f = rat_poly(&[5, 0, 1]);
        let (quo, rem) = f.monic_divmod(&g).unwrap();
        assert_eq!(quo, rat_poly(&[1, 1]));
        assert_eq!(rem, rat_poly(&[6]));
    }

    #[test]
    fn divmod_rejects_non_monic() {
        let f = rat_poly(&[1, 2, 3]);
        assert!(f.monic_divmod(&rat_poly(&[1, 2])).is_err());
        assert!(f.monic_divmod(&UniPoly::zero(0)).is_err());
    }

    #[test]
    fn divmod_symbolic_remainder() {
        // (u^2 + a1 u + a2) mod (u + b1) in variables (a1, a2, b1).
        let f = UniPoly::universal_monic(2).embed(3, 0);
        let g = UniPoly::new(3, vec![MultiPoly::var(3, 2), MultiPoly::one(3)]);
        let (_, rem) = f.monic_divmod(&g).unwrap();
        let b = MultiPoly::var(3, 2);
        let expected = &(&b.pow(2) - &(&MultiPoly::var(3, 0) * &b)) + &MultiPoly::var(3, 1);
        assert_eq!(rem.coeff(0), expected);
        assert_eq!(rem.degree(), Some(0));
    }

    #[test]
    fn derivative_and_eval() {
        let f = rat_poly(&[1, 2, 3]);
        assert_eq!(f.derivative(), rat_poly(&[2, 6]));
        assert_eq!(f.eval_at(&MultiPoly::constant(0, q(2))).as_constant(), Some(q(17)));
    }

    proptest! {
        #[test]
        fn divmod_roundtrip(
            f in proptest::collection::vec(-5i64..=5, 0..7),
            g in proptest::collection::vec(-5i64..=5, 0..4),
        ) {
            let f = rat_poly(&f);
            let mut g = g;
            g.push(1);
            let g = rat_poly(&g);
            let (quo, rem) = f.monic_divmod(&g).unwrap();
            prop_assert_eq!(quo.mul(&g).add(&rem), f);
            prop_assert!(rem.degree().is_none_or(|d| d < g.degree().unwrap()));
        }
    }
}
