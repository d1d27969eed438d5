//! Factorization of univariate rational polynomials.
//!
//! A squarefree integer polynomial is factored modulo a single prime close to
//! `2^62`, chosen so that the reduction stays squarefree and exceeds twice the
//! Mignotte bound on the coefficients of any integer factor. Modular factors
//! are recombined by subset search; no Hensel lifting is needed because the
//! prime already dominates the bound.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{inv_mod, mul_mod, pow_mod};
use crate::poly::QPoly;

type Fp = Vec<u64>;

/// Monic irreducible factors over ℚ with multiplicities, sorted by degree and
/// then coefficients. Constants have no factors.
pub fn factor_rational(f: &QPoly) -> Result<Vec<(QPoly, usize)>> {
    let mut out = Vec::new();
    for (g, mult) in f.squarefree_decomposition() {
        for h in factor_squarefree(&g)? {
            out.push((h, mult));
        }
    }
    out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.cmp(&b.0)));
    Ok(out)
}

/// Monic irreducible factors of a squarefree polynomial.
pub fn factor_squarefree(g: &QPoly) -> Result<Vec<QPoly>> {
    let n = match g.degree() {
        None | Some(0) => return Ok(Vec::new()),
        Some(1) => return Ok(vec![g.monic()]),
        Some(n) => n,
    };
    let big = g.primitive_integer();
    let lc = big[n].clone();

    let norm_sq: BigInt = big.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + BigInt::one();
    let bound = (BigInt::one() << n) * norm * lc.abs();

    let p = choose_prime(&big)?;
    if BigInt::from(2u8) * &bound >= BigInt::from(p) {
        return Err(Error::ResourceBound(format!(
            "coefficients of {g} too large for single-prime factorization"
        )));
    }

    let fp = monic_fp(&reduce(&big, p), p);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut modular = Vec::new();
    for (part, d) in distinct_degree(&fp, p) {
        equal_degree(&part, d, p, &mut rng, &mut modular);
    }

    let mut factors = Vec::new();
    let mut cur = QPoly::from_integers(&big);
    let mut s = 1;
    while 2 * s <= modular.len() {
        let mut hit = None;
        for subset in combinations(modular.len(), s) {
            let lc_cur = cur.primitive_integer()[cur.degree().unwrap()].clone();
            let mut prod: Fp = vec![reduce_int(&lc_cur, p)];
            for &i in &subset {
                prod = mul_fp(&prod, &modular[i], p);
            }
            let cand = QPoly::from_integers(&symmetric_lift(&prod, p));
            let cand = QPoly::from_integers(&cand.primitive_integer());
            if let Some(quo) = cur.div_exact(&cand) {
                hit = Some((subset, cand, quo));
                break;
            }
        }
        match hit {
            Some((subset, cand, quo)) => {
                factors.push(cand.monic());
                cur = quo;
                for i in subset.into_iter().rev() {
                    modular.remove(i);
                }
            }
            None => s += 1,
        }
    }
    factors.push(cur.monic());
    factors.sort();
    Ok(factors)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(sp) {
            return n == sp;
        }
    }
    let mut d = n - 1;
    let mut r = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        r += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..r {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn choose_prime(f: &[BigInt]) -> Result<u64> {
    let lc = f.last().unwrap();
    let mut cand = (1u64 << 62) - 1;
    let mut tried = 0;
    while tried < 64 {
        if is_prime_u64(cand) {
            tried += 1;
            if !reduce_int(lc, cand).is_zero() {
                let fp = reduce(f, cand);
                let g = gcd_fp(&fp, &derivative_fp(&fp, cand), cand);
                if g.len() == 1 {
                    return Ok(cand);
                }
            }
        }
        cand -= 2;
    }
    Err(Error::ResourceBound("no suitable prime for factorization".into()))
}

fn reduce_int(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

fn reduce(f: &[BigInt], p: u64) -> Fp {
    trim(f.iter().map(|c| reduce_int(c, p)).collect())
}

fn symmetric_lift(f: &Fp, p: u64) -> Vec<BigInt> {
    f.iter()
        .map(|&c| {
            if c > p / 2 {
                BigInt::from(c) - BigInt::from(p)
            } else {
                BigInt::from(c)
            }
        })
        .collect()
}

fn trim(mut f: Fp) -> Fp {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

fn monic_fp(f: &Fp, p: u64) -> Fp {
    match f.last() {
        None => Vec::new(),
        Some(&lc) => {
            let inv = inv_mod(lc, p);
            f.iter().map(|&c| mul_mod(c, inv, p)).collect()
        }
    }
}

fn sub_fp(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|k| {
                let x = a.get(k).copied().unwrap_or(0);
                let y = b.get(k).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn mul_fp(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn divrem_fp(a: &Fp, d: &Fp, p: u64) -> (Fp, Fp) {
    let dd = d.len() - 1;
    let inv = inv_mod(d[dd], p);
    let mut rem = a.clone();
    if rem.len() <= dd {
        return (Vec::new(), rem);
    }
    let mut quot = vec![0u64; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = mul_mod(rem[k + dd], inv, p);
        if c == 0 {
            continue;
        }
        for (j, &x) in d.iter().enumerate() {
            rem[k + j] = (rem[k + j] + p - mul_mod(c, x, p)) % p;
        }
        quot[k] = c;
    }
    rem.truncate(dd);
    (trim(quot), trim(rem))
}

fn gcd_fp(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = divrem_fp(&a, &b, p).1;
        a = b;
        b = r;
    }
    monic_fp(&a, p)
}

fn derivative_fp(f: &Fp, p: u64) -> Fp {
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| mul_mod(c, k as u64 % p, p))
            .collect(),
    )
}

fn powmod_fp(base: &Fp, exp: &BigUint, modulus: &Fp, p: u64) -> Fp {
    let mut result: Fp = vec![1];
    let base = divrem_fp(base, modulus, p).1;
    for i in (0..exp.bits()).rev() {
        result = divrem_fp(&mul_fp(&result, &result, p), modulus, p).1;
        if exp.bit(i) {
            result = divrem_fp(&mul_fp(&result, &base, p), modulus, p).1;
        }
    }
    result
}

/// Splits a monic squarefree polynomial into products of irreducibles of a
/// common degree.
fn distinct_degree(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let x: Fp = vec![0, 1];
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut h = x.clone();
    let mut d = 1;
    let pb = BigUint::from(p);
    while f.len() > 2 * d {
        h = powmod_fp(&h, &pb, &f, p);
        let g = gcd_fp(&f, &sub_fp(&h, &x, p), p);
        if g.len() > 1 {
            f = divrem_fp(&f, &g, p).0;
            h = divrem_fp(&h, &f, p).1;
            out.push((g, d));
        }
        d += 1;
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of degree-`d` irreducibles.
fn equal_degree(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Fp>) {
    let n = f.len() - 1;
    if n == d {
        out.push(f.clone());
        return;
    }
    let exp = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u8);
    loop {
        let a: Fp = trim((0..n).map(|_| rng.random_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = sub_fp(&powmod_fp(&a, &exp, f, p), &vec![1], p);
        let g = gcd_fp(f, &b, p);
        if g.len() > 1 && g.len() < f.len() {
            let other = monic_fp(&divrem_fp(f, &g, p).0, p);
            equal_degree(&g, d, p, rng, out);
            equal_degree(&other, d, p, rng, out);
            return;
        }
    }
}
