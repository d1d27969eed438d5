//! Acceptance run. Prints one `[PASS]` or `[FAIL]` line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use supergrass_core::lascoux::{verify_multiplicity_free, DetVarSpec};
use supergrass_core::linalg::{q, q_frac, Q};
use supergrass_core::oracle::{compare_with_lascoux, tor_dims, Comparison, OracleJob};
use supergrass_core::pairs::roundtrip_trials;
use supergrass_core::partition::{binomial, gaussian_poincare, q_factorial, Partition};
use supergrass_core::poly::{MultiPoly, QPoly, UniPoly};
use supergrass_core::rings::{
    discriminant, discriminant_root_trials, fact_graded_dims, split_graded_dims, sylvester_gcd_trials,
    verify_free_rank, RingKind,
};
use supergrass_core::supergrass::{cohomology, CohomologyReport, SuperGrassSpec};

type Outcome = Result<String, String>;

const D_MAX: usize = 6;

fn detvar_grid() -> Vec<DetVarSpec> {
    let mut out = Vec::new();
    for n in 0..=3 {
        for m in 0..=3 {
            for t in 0..=n.min(m) {
                out.push(DetVarSpec::new(n, m, t).unwrap());
            }
        }
    }
    out
}

fn super_grid() -> Vec<SuperGrassSpec> {
    let mut out = Vec::new();
    for n in 0..=4 {
        for m in 0..=4 {
            for r in 0..=n {
                for s in 0..=m {
                    out.push(SuperGrassSpec::new(n, m, r, s).unwrap());
                }
            }
        }
    }
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn betti(pairs: &[((usize, usize), u64)]) -> BTreeMap<(usize, usize), u64> {
    pairs.iter().copied().collect()
}

fn ac1(grid: &[(DetVarSpec, Comparison)]) -> Outcome {
    let mut bidegrees = 0;
    for (spec, cmp) in grid {
        if let Some(row) = cmp.first_mismatch() {
            return Err(format!(
                "{spec:?} at (p={}, d={}): lascoux {} vs oracle {}",
                row.p, row.d, row.lascoux, row.oracle
            ));
        }
        bidegrees += cmp.rows.len();
    }
    let signatures = [
        ((3, 2, 1), betti(&[((0, 0), 1), ((1, 2), 3), ((2, 3), 2)])),
        ((3, 3, 2), betti(&[((0, 0), 1), ((1, 3), 1)])),
    ];
    for ((n, m, t), want) in signatures {
        let spec = DetVarSpec::new(n, m, t).unwrap();
        let got = tor_dims(&OracleJob::new(spec, n * m, D_MAX)).map_err(|e| e.to_string())?;
        ensure(got.betti_numbers() == want, || {
            format!("({n},{m},{t}) oracle Betti numbers {:?}, want {want:?}", got.betti_numbers())
        })?;
    }
    Ok(format!(
        "{} specs, {bidegrees} bidegrees with d <= {D_MAX}; (3,2,1) gives 1,3,2 at d=0,2,3; (3,3,2) gives 1,1 at d=0,3",
        grid.len()
    ))
}

fn random_monic(rng: &mut ChaCha8Rng, n: usize) -> QPoly {
    let mut c: Vec<Q> = (0..n)
        .map(|_| q_frac(rng.random_range(-3..=3), rng.random_range(1..=2)))
        .collect();
    c.push(q(1));
    QPoly::new(c)
}

fn ac2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut checked = 0;
    for n in 1..=4 {
        for f in [QPoly::u().pow(n), random_monic(&mut rng, n)] {
            let r = verify_free_rank(RingKind::Split, &f, None).map_err(|e| e.to_string())?;
            let fact: u64 = (1..=n as u64).product();
            ensure(r.ok && r.computed == fact, || format!("Split({f}): rank {} want {fact}", r.computed))?;
            checked += 1;
        }
    }
    for n in 1..=5 {
        for f in [QPoly::u().pow(n), random_monic(&mut rng, n)] {
            for p in 0..=n {
                let r = verify_free_rank(RingKind::Fact, &f, Some(p)).map_err(|e| e.to_string())?;
                let want = binomial(n, p);
                ensure(r.ok && r.computed == want, || {
                    format!("Fact^{{{p},{}}}({f}): rank {} want {want}", n - p, r.computed)
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} rings at u^n and seeded rational specializations (seed 0)"))
}

fn ac3() -> Outcome {
    for big_n in 0..=6 {
        for s in 0..=big_n {
            let got = fact_graded_dims(big_n, s).map_err(|e| e.to_string())?;
            let want = gaussian_poincare(s, big_n).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("Fact(u^{big_n}, {s}): {got:?} vs {want:?}"))?;
        }
    }
    for n in 0..=5 {
        let got = split_graded_dims(n).map_err(|e| e.to_string())?;
        let want = q_factorial(n);
        ensure(got == want, || format!("Split(u^{n}): {got:?} vs {want:?}"))?;
    }
    Ok("Fact(u^N, s) for N <= 6 and Split(u^n) for n <= 5".into())
}

fn ac4(reports: &[CohomologyReport]) -> Outcome {
    for r in reports {
        ensure(r.euler.formula == r.euler.computed, || {
            format!("{}: formula {} vs cohomology {}", r.spec, r.euler.formula, r.euler.computed)
        })?;
    }
    Ok(format!("{} super Grassmannians with n, m <= 4", reports.len()))
}

fn ac5(reports: &[CohomologyReport]) -> Outcome {
    let mut count = 0;
    for r in reports.iter().filter(|r| r.delta == 0) {
        let SuperGrassSpec { m, s, .. } = r.normalized;
        let want = gaussian_poincare(s, m).map_err(|e| e.to_string())?;
        let top = want.top_degree().max(r.groups.len());
        for i in 0..=top {
            ensure(r.dim(i) == want.get(i), || {
                format!("{}: dim H^{i} = {} but Gr_{s}(C^{m}) has {}", r.spec, r.dim(i), want.get(i))
            })?;
        }
        ensure(r.total_odd == 0, || format!("{}: odd classes present", r.spec))?;
        count += 1;
    }
    Ok(format!("{count} specs with delta = 0, all classes even"))
}

fn ac6() -> Outcome {
    let mut count = 0;
    for n in 0..=12usize {
        for m in 0..=12usize {
            if n * m > 12 {
                continue;
            }
            let spec = SuperGrassSpec::new(n, m, n, 0).unwrap();
            let r = cohomology(spec).map_err(|e| e.to_string())?;
            let total: u64 = r.dims().iter().sum();
            ensure(total == 1 << (n * m), || format!("{spec}: total {total}"))?;
            ensure(r.dim(0) == total, || format!("{spec}: not concentrated in H^0: {:?}", r.dims()))?;
            count += 1;
        }
    }
    Ok(format!("{count} specs Gr_{{n|0}}(C^{{n|m}}) with nm <= 12 have total 2^(nm) in H^0"))
}

fn ac7(grid: &[(DetVarSpec, Comparison)], reports: &[CohomologyReport]) -> Outcome {
    for (spec, _) in grid {
        let free = verify_multiplicity_free(*spec).map_err(|e| e.to_string())?;
        ensure(free, || format!("{spec:?} repeats a representation"))?;
    }
    for r in reports {
        let reps: Vec<BTreeSet<(Partition, Partition)>> = r
            .groups
            .iter()
            .map(|g| g.terms.iter().map(|t| (t.big_p.clone(), t.big_q.clone())).collect())
            .collect();
        for (i, pair) in reps.windows(2).enumerate() {
            let shared: Vec<_> = pair[0].intersection(&pair[1]).collect();
            ensure(shared.is_empty(), || format!("{}: H^{i} and H^{} share {shared:?}", r.spec, i + 1))?;
        }
    }
    Ok(format!(
        "{} Betti tables multiplicity-free; no shared representation between adjacent H^i in {} reports",
        grid.len(),
        reports.len()
    ))
}

fn ac8() -> Outcome {
    let trials = roundtrip_trials(0, 100, 8).map_err(|e| e.to_string())?;
    let passed = trials.iter().filter(|t| t.ok).count();
    if let Some(bad) = trials.iter().find(|t| !t.ok) {
        return Err(format!("{passed}/100; {} classified as {}", bad.multiset, bad.classified));
    }
    Ok(format!("{passed}/100 round trips (seed 0, dims <= 8|8)"))
}

fn ac9() -> Outcome {
    let gcd = sylvester_gcd_trials(0, 200).map_err(|e| e.to_string())?;
    if let Some(bad) = gcd.iter().find(|t| !t.ok) {
        return Err(format!(
            "gcd({}, {}) has degree {} but nullity {}",
            bad.f, bad.g, bad.gcd_degree, bad.nullity
        ));
    }
    let quad = discriminant(&UniPoly::universal_monic(2)).map_err(|e| e.to_string())?;
    let a1 = MultiPoly::var(2, 0);
    let a2 = MultiPoly::var(2, 1);
    let want = &(&a1 * &a1) - &a2.scale(&q(4));
    ensure(quad == want, || format!("disc(u^2 + a1 u + a2) = {quad}"))?;
    let roots = discriminant_root_trials(0, 50, 5).map_err(|e| e.to_string())?;
    if let Some(bad) = roots.iter().find(|t| !t.ok) {
        return Err(format!("roots {:?}: {} vs {}", bad.roots, bad.discriminant, bad.root_product));
    }
    Ok("200 planted gcds (seed 0), symbolic quadratic, 50 split polynomials of degree <= 5 (seed 0)".into())
}

fn ac10(grid: &[(DetVarSpec, Comparison)]) -> Outcome {
    for (spec, cmp) in grid {
        ensure(cmp.checks.d_squared_zero, || format!("{spec:?}: d^2 != 0"))?;
        ensure(cmp.checks.quotient_matches, || format!("{spec:?}: (S/I)_d disagrees"))?;
        ensure(cmp.checks.euler, || format!("{spec:?}: Euler characteristic"))?;
    }
    Ok(format!(
        "{} oracle runs: d^2 = 0, degree-0 Koszul term equals independent quotient dims",
        grid.len()
    ))
}

fn main() -> ExitCode {
    let grid: Result<Vec<(DetVarSpec, Comparison)>, String> = detvar_grid()
        .into_iter()
        .map(|spec| {
            compare_with_lascoux(spec, D_MAX, false, true)
                .map(|c| (spec, c))
                .map_err(|e| format!("{spec:?}: {e}"))
        })
        .collect();
    let reports: Result<Vec<CohomologyReport>, String> = super_grid()
        .into_iter()
        .map(|s| cohomology(s).map_err(|e| format!("{s}: {e}")))
        .collect();

    let results: Vec<(&str, Outcome)> = vec![
        ("Lascoux equals Koszul oracle", grid.as_ref().map_err(Clone::clone).and_then(|g| ac1(g))),
        ("free ranks n! and C(n,p)", ac2()),
        ("Chow ring specializations", ac3()),
        ("super Euler characteristic", reports.as_ref().map_err(Clone::clone).and_then(|r| ac4(r))),
        ("delta = 0 gives even Grassmannian cohomology", reports.as_ref().map_err(Clone::clone).and_then(|r| ac5(r))),
        ("point cases", ac6()),
        (
            "multiplicity-freeness",
            match (&grid, &reports) {
                (Ok(g), Ok(r)) => ac7(g, r),
                (Err(e), _) | (_, Err(e)) => Err(e.clone()),
            },
        ),
        ("classification round trip", ac8()),
        ("Sylvester and discriminant", ac9()),
        ("oracle self-consistency", grid.as_ref().map_err(Clone::clone).and_then(|g| ac10(g))),
    ];

    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        match outcome {
            Ok(detail) => println!("[PASS] AC{} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] AC{} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
