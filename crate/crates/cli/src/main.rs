//! `supergrass`: command-line frontend for supergrass-core.
//!
//! Every subcommand prints an aligned table by default and a JSON document
//! with `"schema": 1` under `--json`. Exit codes: 0 success, 2 invalid input,
//! 3 verification mismatch, 4 resource bound exceeded.

mod parse;
mod table;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use supergrass_core::grassmann::{self, CohomologyClass, GrassSpec};
use supergrass_core::lascoux::{betti_table, linear_strand, verify_multiplicity_free, DetVarSpec};
use supergrass_core::linalg::q_to_string;
use supergrass_core::oracle::{compare_with_lascoux, tor_dims, OracleJob};
use supergrass_core::pairs::{classify, reduced_charpoly, roundtrip_trials, MatrixPair};
use supergrass_core::poly::UniPoly;
use supergrass_core::rings::{
    discriminant, discriminant_root_trials, fact_presentation, specialize, sylvester, sylvester_gcd_trials,
    universal_weights, verify_free_rank, Presentation, RingKind, SplitRing,
};
use supergrass_core::supergrass::{cohomology, super_euler, SuperGrassSpec};
use supergrass_core::{Error, QPoly, Result};

use table::Table;

#[derive(Parser)]
#[command(name = "supergrass", version, about = "Exact computations for determinantal syzygies and super Grassmannian cohomology")]
struct Cli {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Use the data-parallel code paths (output is unchanged).
    #[arg(long, global = true)]
    parallel: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Number of randomized trials.
    #[arg(long, global = true, default_value_t = 100)]
    trials: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct DetArgs {
    /// dim V0.
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    /// dim V1.
    #[arg(long, allow_negative_numbers = true)]
    m: i64,
    /// Rank bound.
    #[arg(long, allow_negative_numbers = true)]
    t: i64,
}

#[derive(Args, Clone, Copy)]
struct SuperArgs {
    #[arg(long, allow_negative_numbers = true)]
    n: i64,
    #[arg(long, allow_negative_numbers = true)]
    m: i64,
    #[arg(long, allow_negative_numbers = true)]
    r: i64,
    #[arg(long, allow_negative_numbers = true)]
    s: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Betti table of the variety of rank <= t maps C^n -> C^m.
    Betti(DetArgs),
    /// The k-th linear strand of the Betti table.
    Strand {
        #[command(flatten)]
        spec: DetArgs,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
    /// Cohomology of the structure sheaf of Gr_{r|s}(C^{n|m}).
    Supercoh(SuperArgs),
    /// Super Euler characteristic, closed form against the computed cohomology.
    Euler(SuperArgs),
    /// Cohomology of Gr_s(C^N): Poincare dims, Schubert bases, cup products.
    Poincare {
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long = "N", alias = "ambient", allow_negative_numbers = true)]
        big_n: i64,
        /// List the Schubert basis in this (even) degree.
        #[arg(long)]
        degree: Option<usize>,
        /// A partition such as 2,1; give twice to multiply.
        #[arg(long, allow_hyphen_values = true)]
        cup: Vec<String>,
    },
    /// Splitting ring of a monic polynomial.
    Splitring {
        /// Universal polynomial of this degree.
        #[arg(long)]
        degree: Option<usize>,
        /// Monic rational polynomial, e.g. "u^3" or "0,0,0,1".
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        /// Elements to reduce to normal form, e.g. "xi1^2".
        #[arg(long, allow_hyphen_values = true)]
        reduce: Vec<String>,
    },
    /// Factorization ring Fact^{p,n-p} of a monic polynomial.
    Factring {
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long)]
        p: usize,
    },
    /// Sylvester matrix of two polynomials, or seeded gcd checks.
    Sylvester {
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Universal monic f, g of degrees N,M.
        #[arg(long)]
        generic: Option<String>,
    },
    /// Discriminant of a monic polynomial, or seeded root-product checks.
    Discriminant {
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        /// Universal polynomial of this degree.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Decompose a pair f: V0 -> V1, g: V1 -> V0, or run seeded round trips.
    Classify {
        /// m x n matrix, rows separated by ';'.
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
        /// n x m matrix.
        #[arg(long, allow_hyphen_values = true)]
        g: Option<String>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        /// Also print the characteristic polynomial of fg divided by u^delta.
        #[arg(long)]
        delta: Option<usize>,
    },
    /// Brute-force Koszul homology of the ideal of (t+1)-minors.
    Oracle {
        #[command(flatten)]
        spec: DetArgs,
        #[arg(long)]
        pmax: Option<usize>,
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        #[arg(long)]
        characters: bool,
        #[arg(long)]
        reverse: bool,
    },
    /// Compare the Betti table with the oracle in every bidegree.
    Compare {
        #[command(flatten)]
        spec: DetArgs,
        #[arg(long, default_value_t = 6)]
        dmax: usize,
        #[arg(long)]
        characters: bool,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Betti(_) => "betti",
            Command::Strand { .. } => "strand",
            Command::Supercoh(_) => "supercoh",
            Command::Euler(_) => "euler",
            Command::Poincare { .. } => "poincare",
            Command::Splitring { .. } => "splitring",
            Command::Factring { .. } => "factring",
            Command::Sylvester { .. } => "sylvester",
            Command::Discriminant { .. } => "discriminant",
            Command::Classify { .. } => "classify",
            Command::Oracle { .. } => "oracle",
            Command::Compare { .. } => "compare",
        }
    }
}

/// A finished command: JSON payload, text rendering, and whether every
/// verification it ran passed.
struct Output {
    result: Value,
    text: String,
    verified: bool,
}

impl Output {
    fn new(result: impl Serialize, text: String) -> Self {
        Output {
            result: serde_json::to_value(result).expect("serializable"),
            text,
            verified: true,
        }
    }

    fn verified(mut self, ok: bool) -> Self {
        self.verified = ok;
        self
    }
}

fn nonneg(x: i64, what: &str) -> Result<usize> {
    usize::try_from(x).map_err(|_| Error::InvalidInput(format!("{what} must be nonnegative, got {x}")))
}

impl DetArgs {
    fn spec(&self) -> Result<DetVarSpec> {
        DetVarSpec::new(nonneg(self.n, "n")?, nonneg(self.m, "m")?, nonneg(self.t, "t")?)
    }
}

impl SuperArgs {
    fn spec(&self) -> Result<SuperGrassSpec> {
        SuperGrassSpec::new(
            nonneg(self.n, "n")?,
            nonneg(self.m, "m")?,
            nonneg(self.r, "r")?,
            nonneg(self.s, "s")?,
        )
    }
}

fn names(prefix: &str, k: usize) -> Vec<String> {
    (1..=k).map(|i| format!("{prefix}{i}")).collect()
}

fn seed_line(seed: u64, trials: usize) -> String {
    format!("seed: {seed}, trials: {trials}\n")
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Betti(args) => cmd_betti(args.spec()?),
        Command::Strand { spec, k } => cmd_strand(spec.spec()?, nonneg(*k, "k")?),
        Command::Supercoh(args) => cmd_supercoh(args.spec()?),
        Command::Euler(args) => cmd_euler(args.spec()?),
        Command::Poincare { s, big_n, degree, cup } => {
            cmd_poincare(GrassSpec::new(nonneg(*s, "s")?, nonneg(*big_n, "N")?)?, *degree, cup)
        }
        Command::Splitring { degree, poly, reduce } => cmd_splitring(*degree, poly.as_deref(), reduce),
        Command::Factring { degree, poly, p } => cmd_factring(*degree, poly.as_deref(), *p),
        Command::Sylvester { f, g, n, m, generic } => match (f, g, generic) {
            (_, _, Some(nm)) => cmd_sylvester_generic(parse::pair(nm)?),
            (Some(f), Some(g), None) => cmd_sylvester(&parse::qpoly(f)?, &parse::qpoly(g)?, *n, *m),
            (None, None, None) => cmd_sylvester_trials(cli.seed, cli.trials),
            _ => Err(Error::InvalidInput("give both --f and --g".into())),
        },
        Command::Discriminant { poly, degree } => match (poly, degree) {
            (Some(p), None) => cmd_discriminant(&parse::qpoly(p)?),
            (None, Some(n)) => cmd_discriminant_universal(*n),
            (None, None) => cmd_discriminant_trials(cli.seed, cli.trials),
            _ => Err(Error::InvalidInput("give either --poly or --degree".into())),
        },
        Command::Classify { f, g, n, m, delta } => match (f, g) {
            (Some(f), Some(g)) => cmd_classify(f, g, *n, *m, *delta),
            (None, None) => cmd_classify_trials(cli.seed, cli.trials),
            _ => Err(Error::InvalidInput("give both --f and --g".into())),
        },
        Command::Oracle {
            spec,
            pmax,
            dmax,
            characters,
            reverse,
        } => {
            let spec = spec.spec()?;
            let job = OracleJob::new(spec, pmax.unwrap_or(spec.n * spec.m), *dmax)
                .with_characters(*characters)
                .reversed(*reverse)
                .with_parallel(cli.parallel);
            cmd_oracle(&job)
        }
        Command::Compare { spec, dmax, characters } => cmd_compare(spec.spec()?, *dmax, *characters, cli.parallel),
    }
}

fn cmd_betti(spec: DetVarSpec) -> Result<Output> {
    let table = betti_table(spec)?;
    let mut t = Table::new(&["p", "d", "q", "P", "Q", "dim", "b", "alpha", "beta"]);
    for e in &table.entries {
        t.row(vec![
            e.p.to_string(),
            e.d.to_string(),
            e.strand.to_string(),
            e.rep.p.to_string(),
            e.rep.q.to_string(),
            e.rep.dim.to_string(),
            e.b.to_string(),
            e.alpha.to_string(),
            e.beta.to_string(),
        ]);
    }
    let numbers: Vec<String> = table
        .betti_numbers()
        .iter()
        .map(|((p, d), x)| format!("({p},{d})={x}"))
        .collect();
    let free = verify_multiplicity_free(spec)?;
    let text = format!(
        "Betti table for maps C^{} -> C^{} of rank <= {}\n{}Betti numbers (p,d): {}\nmultiplicity-free: {free}\n",
        spec.n,
        spec.m,
        spec.t,
        t.render(),
        numbers.join(" ")
    );
    let mut result = serde_json::to_value(&table).expect("serializable");
    result["multiplicity_free"] = json!(free);
    Ok(Output {
        result,
        text,
        verified: free,
    })
}

fn cmd_strand(spec: DetVarSpec, k: usize) -> Result<Output> {
    let strand = linear_strand(spec, k)?;
    let mut t = Table::new(&["p", "P", "Q", "dim"]);
    for (p, r) in &strand {
        t.row(vec![p.to_string(), r.p.to_string(), r.q.to_string(), r.dim.to_string()]);
    }
    let total: u64 = strand.iter().map(|(_, r)| r.dim).sum();
    let text = format!("linear strand {k}\n{}total dim {total}\n", t.render());
    let entries: Vec<Value> = strand
        .iter()
        .map(|(p, r)| json!({"p": p, "P": r.p, "Q": r.q, "dim": r.dim}))
        .collect();
    Ok(Output::new(json!({"spec": spec, "k": k, "entries": entries, "total_dim": total}), text))
}

fn cmd_supercoh(spec: SuperGrassSpec) -> Result<Output> {
    let report = cohomology(spec)?;
    let mut groups = Table::new(&["i", "even", "odd", "dim"]);
    let mut terms = Table::new(&["i", "A-degree", "A-dim", "strand", "p", "P", "Q", "dim", "parity"]);
    for g in &report.groups {
        groups.row(vec![
            g.i.to_string(),
            g.even_dim.to_string(),
            g.odd_dim.to_string(),
            g.dim().to_string(),
        ]);
        for x in &g.terms {
            terms.row(vec![
                g.i.to_string(),
                x.a_degree.to_string(),
                x.a_dim.to_string(),
                x.strand.to_string(),
                x.p.to_string(),
                x.big_p.to_string(),
                x.big_q.to_string(),
                x.dim.to_string(),
                format!("{:?}", x.parity).to_lowercase(),
            ]);
        }
    }
    let dims: Vec<String> = report.dims().iter().map(|d| d.to_string()).collect();
    let text = format!(
        "{} (normalized {}), delta = {}, A = H*(Gr_{}(C^{}))\n{}\n{}dims: ({})\nsuper Euler characteristic: {}\n",
        report.spec,
        report.normalized,
        report.delta,
        report.a.s,
        report.a.ambient,
        groups.render(),
        terms.render(),
        dims.join(","),
        report.euler.computed
    );
    let mut value = serde_json::to_value(&report).expect("serializable");
    value["dims"] = json!(report.dims());
    Ok(Output {
        result: value,
        text,
        verified: true,
    })
}

fn cmd_euler(spec: SuperGrassSpec) -> Result<Output> {
    let check = super_euler(spec)?;
    let text = format!(
        "super Euler characteristic of {spec}: {} (closed form {}, cohomology {})\n",
        check.computed, check.formula, check.computed
    );
    Ok(Output::new(json!({"spec": spec, "formula": check.formula, "computed": check.computed}), text))
}

fn class_string(c: &CohomologyClass) -> String {
    if c.is_zero() {
        return "0".into();
    }
    c.terms()
        .iter()
        .map(|(p, x)| {
            if *x == supergrass_core::linalg::q(1) {
                format!("s{p}")
            } else {
                format!("{}*s{p}", q_to_string(x))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

fn cmd_poincare(spec: GrassSpec, degree: Option<usize>, cup: &[String]) -> Result<Output> {
    let dims = grassmann::graded_dims(spec);
    let total = grassmann::total_dim(spec);
    let mut t = Table::new(&["degree", "dim"]);
    for (d, x) in &dims.0 {
        t.row(vec![d.to_string(), x.to_string()]);
    }
    let mut text = format!("H*(Gr_{}(C^{}))\n{}total {total}\n", spec.s, spec.ambient, t.render());
    let mut result = json!({"spec": spec, "dims": dims, "total": total});
    if let Some(d) = degree {
        let b = grassmann::basis(spec, d)?;
        let shown: Vec<String> = b.iter().map(|p| format!("s{p}")).collect();
        text += &format!("basis in degree {d}: [{}]\n", shown.join(", "));
        result["basis"] = json!({"degree": d, "partitions": b});
    }
    match cup {
        [] => {}
        [x, y] => {
            let (px, py) = (parse::partition(x)?, parse::partition(y)?);
            let prod = grassmann::cup(
                spec,
                &CohomologyClass::schubert(px.clone()),
                &CohomologyClass::schubert(py.clone()),
            )?;
            text += &format!("s{px} * s{py} = {}\n", class_string(&prod));
            result["cup"] = json!({"x": px, "y": py, "product": prod});
        }
        _ => return Err(Error::InvalidInput("--cup takes exactly two partitions".into())),
    }
    Ok(Output::new(result, text))
}

/// `f` with its coefficients written in the presentation's variable names.
fn show_uni(f: &UniPoly, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (k, c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let u = match k {
            0 => String::new(),
            1 => "u".to_string(),
            _ => format!("u^{k}"),
        };
        let coeff = c.display_with(names);
        parts.push(match (c.is_one(), k, c.num_terms() > 1) {
            (true, 0, _) => "1".to_string(),
            (true, _, _) => u,
            (false, 0, _) => coeff,
            (false, _, true) => format!("({coeff})*{u}"),
            (false, _, false) => format!("{coeff}*{u}"),
        });
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ").replace("+ -", "- ")
    }
}

fn presentation_text(p: &Presentation) -> String {
    let vars: Vec<String> = p
        .vars
        .iter()
        .zip(&p.weights)
        .map(|(v, w)| format!("{v} (deg {w})"))
        .collect();
    let mut out = format!("generators: {}\nrelations:\n", vars.join(", "));
    for r in &p.relations {
        out += &format!("  {r}\n");
    }
    out
}

fn rank_text(r: &supergrass_core::rings::FreeRankReport) -> String {
    let mut out = format!("rank over Q: {} (expected {})\n", r.computed, r.expected);
    if let Some(g) = &r.graded {
        let trimmed: Vec<String> = g.iter().rev().skip_while(|&&x| x == 0).map(|x| x.to_string()).collect();
        let dims: Vec<String> = trimmed.into_iter().rev().collect();
        out += &format!("graded dims (halved degrees): ({})\n", dims.join(","));
    }
    out
}

fn cmd_splitring(degree: Option<usize>, poly: Option<&str>, reduce: &[String]) -> Result<Output> {
    let (ring, f) = match (degree, poly) {
        (Some(n), None) => (SplitRing::universal(n), None),
        (None, Some(p)) => {
            let f = parse::qpoly(p)?;
            (SplitRing::specialized(&f)?, Some(f))
        }
        _ => return Err(Error::InvalidInput("give either --degree or --poly".into())),
    };
    let pres = ring.presentation();
    let f_shown = show_uni(ring.f(), &pres.vars);
    let mut text = format!("splitting ring of {f_shown}\n{}", presentation_text(&pres));
    let mut result = json!({"f": f_shown, "presentation": pres, "staircase_size": ring.staircase_basis().len()});
    let mut reduced = Vec::new();
    for e in reduce {
        let x = parse::expression(e, &pres.vars)?;
        let nf = ring.reduce(&x).display_with(&pres.vars);
        text += &format!("{e} -> {nf}\n");
        reduced.push(json!({"input": e, "normal_form": nf}));
    }
    if !reduced.is_empty() {
        result["reduce"] = json!(reduced);
    }
    let mut ok = true;
    if let Some(f) = f {
        let report = verify_free_rank(RingKind::Split, &f, None)?;
        text += &rank_text(&report);
        ok = report.ok;
        result["rank"] = serde_json::to_value(&report).expect("serializable");
    }
    Ok(Output::new(result, text).verified(ok))
}

fn cmd_factring(degree: Option<usize>, poly: Option<&str>, p: usize) -> Result<Output> {
    let (ring, f) = match (degree, poly) {
        (Some(n), None) => (fact_presentation(&UniPoly::universal_monic(n), p, &universal_weights(n))?, None),
        (None, Some(s)) => {
            let f = parse::qpoly(s)?;
            (fact_presentation(&specialize(&f)?, p, &[])?, Some(f))
        }
        _ => return Err(Error::InvalidInput("give either --degree or --poly".into())),
    };
    let pres = ring.presentation();
    let f_shown = show_uni(ring.f(), &pres.vars);
    let mut text = format!(
        "factorization ring Fact^{{{},{}}} of {f_shown}\n{}",
        ring.p,
        ring.q,
        presentation_text(&pres)
    );
    let mut result = json!({"f": f_shown, "p": ring.p, "q": ring.q, "presentation": pres});
    let mut ok = true;
    if let Some(f) = f {
        let report = verify_free_rank(RingKind::Fact, &f, Some(p))?;
        text += &rank_text(&report);
        ok = report.ok;
        result["rank"] = serde_json::to_value(&report).expect("serializable");
    }
    Ok(Output::new(result, text).verified(ok))
}

fn matrix_text(rows: &[Vec<String>]) -> String {
    let width = rows.first().map_or(0, |r| r.len());
    let mut out = String::new();
    let widths: Vec<usize> = (0..width)
        .map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{}{c}", " ".repeat(w - c.chars().count())))
            .collect();
        out += &format!("[ {} ]\n", cells.join("  "));
    }
    out
}

fn cmd_sylvester(f: &QPoly, g: &QPoly, n: Option<usize>, m: Option<usize>) -> Result<Output> {
    let n = n.or(f.degree()).unwrap_or(0);
    let m = m.or(g.degree()).unwrap_or(0);
    let syl = sylvester(&UniPoly::from_rationals(0, f.coeffs()), &UniPoly::from_rationals(0, g.coeffs()), n, m)?;
    let det = syl.to_rational().map(|x| x.determinant()).expect("rational entries");
    let nullity = syl.nullity().expect("rational entries");
    let gcd_degree = f.gcd(g).degree().unwrap_or(0);
    let rows: Vec<Vec<String>> = (0..syl.size())
        .map(|i| (0..syl.size()).map(|j| syl.entry(i, j).to_string()).collect())
        .collect();
    let text = format!(
        "Syl_{{{n},{m}}}({f}, {g})\n{}det = {}\nnullity = {nullity}, deg gcd = {gcd_degree}\n",
        matrix_text(&rows),
        q_to_string(&det)
    );
    let result = json!({
        "f": f, "g": g, "n": n, "m": m, "matrix": syl,
        "determinant": q_to_string(&det), "nullity": nullity, "gcd_degree": gcd_degree,
    });
    Ok(Output::new(result, text).verified(nullity == gcd_degree))
}

fn cmd_sylvester_generic((n, m): (usize, usize)) -> Result<Output> {
    let vars = n + m;
    let f = UniPoly::universal_monic(n).embed(vars, 0);
    let g = UniPoly::universal_monic(m).embed(vars, n);
    let syl = sylvester(&f, &g, n, m)?;
    let mut labels = names("a", n);
    labels.extend(names("b", m));
    let weights: Vec<u32> = (1..=n as u32).chain(1..=m as u32).collect();
    let det = syl.determinant();
    let homogeneous = det.is_homogeneous(&weights) && det.degree(&weights) == Some((n * m) as u32);
    let rows: Vec<Vec<String>> = (0..syl.size())
        .map(|i| (0..syl.size()).map(|j| syl.entry(i, j).display_with(&labels)).collect())
        .collect();
    let det_s = det.display_with(&labels);
    let text = format!(
        "Syl_{{{n},{m}}} of universal monic f, g\n{}det = {det_s}\nhomogeneous of degree {} (deg a_i = deg b_i = i): {homogeneous}\n",
        matrix_text(&rows),
        n * m
    );
    let result = json!({"n": n, "m": m, "matrix": rows, "determinant": det_s, "homogeneous_degree_nm": homogeneous});
    Ok(Output::new(result, text).verified(homogeneous))
}

fn cmd_sylvester_trials(seed: u64, trials: usize) -> Result<Output> {
    let out = sylvester_gcd_trials(seed, trials)?;
    let passed = out.iter().filter(|t| t.ok).count();
    let mut t = Table::new(&["f", "g", "planted", "deg gcd", "nullity", "ok"]);
    for x in &out {
        t.row(vec![
            x.f.to_string(),
            x.g.to_string(),
            x.planted_degree.to_string(),
            x.gcd_degree.to_string(),
            x.nullity.to_string(),
            x.ok.to_string(),
        ]);
    }
    let text = format!("{}{}{passed}/{trials} gcd degrees equal Sylvester nullities\n", seed_line(seed, trials), t.render());
    let result = json!({"seed": seed, "trials": trials, "passed": passed, "results": out});
    Ok(Output::new(result, text).verified(passed == trials))
}

fn cmd_discriminant(f: &QPoly) -> Result<Output> {
    let d = discriminant(&specialize(f)?)?;
    let value = d.as_constant().expect("rational polynomial");
    let text = format!("disc({f}) = {}\n", q_to_string(&value));
    Ok(Output::new(json!({"f": f, "discriminant": q_to_string(&value)}), text))
}

fn cmd_discriminant_universal(n: usize) -> Result<Output> {
    let d = discriminant(&UniPoly::universal_monic(n))?;
    let labels = names("a", n);
    let f: Vec<String> = std::iter::once(format!("u^{n}"))
        .chain((1..=n).map(|i| match n - i {
            0 => format!("a{i}"),
            1 => format!("a{i}*u"),
            k => format!("a{i}*u^{k}"),
        }))
        .collect();
    let shown = d.display_with(&labels);
    let text = format!("disc({}) = {shown}\n", f.join(" + "));
    Ok(Output::new(json!({"degree": n, "discriminant": shown}), text))
}

fn cmd_discriminant_trials(seed: u64, trials: usize) -> Result<Output> {
    let out = discriminant_root_trials(seed, trials, 5)?;
    let passed = out.iter().filter(|t| t.ok).count();
    let mut t = Table::new(&["roots", "disc", "root product", "ok"]);
    for x in &out {
        let roots: Vec<String> = x.roots.iter().map(q_to_string).collect();
        t.row(vec![
            roots.join(","),
            q_to_string(&x.discriminant),
            q_to_string(&x.root_product),
            x.ok.to_string(),
        ]);
    }
    let text = format!("{}{}{passed}/{trials} discriminants equal root products\n", seed_line(seed, trials), t.render());
    let result = json!({"seed": seed, "trials": trials, "passed": passed, "results": out});
    Ok(Output::new(result, text).verified(passed == trials))
}

fn cmd_classify(f: &str, g: &str, n: Option<usize>, m: Option<usize>, delta: Option<usize>) -> Result<Output> {
    let shape = match (m, n) {
        (Some(m), Some(n)) => Some((m, n)),
        (None, None) => None,
        _ => return Err(Error::InvalidInput("give both --n and --m or neither".into())),
    };
    let fm = parse::matrix(f, shape)?;
    let gm = parse::matrix(g, Some((fm.ncols(), fm.nrows())))?;
    let pair = MatrixPair::new(fm, gm)?;
    let ms = classify(&pair)?;
    let mut t = Table::new(&["indecomposable", "dim V0", "dim V1"]);
    for x in ms.items() {
        let (a, b) = x.dims();
        t.row(vec![x.to_string(), a.to_string(), b.to_string()]);
    }
    let mut text = format!("pair with dim V0 = {}, dim V1 = {}\n{}", pair.n(), pair.m(), t.render());
    let mut result = json!({"n": pair.n(), "m": pair.m(), "multiset": ms});
    if let Some(d) = delta {
        let chi = reduced_charpoly(&pair, d)?;
        text += &format!("charpoly(fg) / u^{d} = {chi}\n");
        result["reduced_charpoly"] = json!({"delta": d, "poly": chi, "display": chi.to_string()});
    }
    Ok(Output::new(result, text))
}

fn cmd_classify_trials(seed: u64, trials: usize) -> Result<Output> {
    let out = roundtrip_trials(seed, trials, 8)?;
    let passed = out.iter().filter(|t| t.ok).count();
    let mut t = Table::new(&["multiset", "classified", "ok"]);
    for x in &out {
        t.row(vec![x.multiset.to_string(), x.classified.to_string(), x.ok.to_string()]);
    }
    let text = format!(
        "{}{}{passed}/{trials} round trips recovered the planted multiset\n",
        seed_line(seed, trials),
        t.render()
    );
    let result = json!({"seed": seed, "trials": trials, "passed": passed, "results": out});
    Ok(Output::new(result, text).verified(passed == trials))
}

fn cmd_oracle(job: &OracleJob) -> Result<Output> {
    let tor = tor_dims(job)?;
    let mut t = Table::new(&["p", "d", "dim", "complex dim"]);
    for e in &tor.entries {
        t.row(vec![e.p.to_string(), e.d.to_string(), e.dim.to_string(), e.complex_dim.to_string()]);
    }
    let q: Vec<String> = tor.quotient_dims.iter().map(|x| x.to_string()).collect();
    let nonzero: Vec<String> = tor
        .betti_numbers()
        .iter()
        .map(|((p, d), x)| format!("({p},{d})={x}"))
        .collect();
    let mut text = format!(
        "Koszul homology for maps C^{} -> C^{} of rank <= {}, p <= {}, d <= {}\n{}",
        job.spec.n,
        job.spec.m,
        job.spec.t,
        job.p_max,
        job.d_max,
        t.render()
    );
    text += &format!("nonzero (p,d): {}\n", nonzero.join(" "));
    text += &format!("dim (S/I)_d: ({})\n", q.join(","));
    text += &format!(
        "checks: d^2 = 0 {}, Euler characteristic {}, quotient dims {}\n",
        tor.checks.d_squared_zero, tor.checks.euler, tor.checks.quotient_matches
    );
    let ok = tor.checks.all();
    Ok(Output::new(&tor, text).verified(ok))
}

fn cmd_compare(spec: DetVarSpec, d_max: usize, characters: bool, parallel: bool) -> Result<Output> {
    let cmp = compare_with_lascoux(spec, d_max, characters, parallel)?;
    let mut headers = vec!["p", "d", "lascoux", "oracle"];
    if characters {
        headers.push("characters");
    }
    headers.push("equal");
    let mut t = Table::new(&headers);
    for r in &cmp.rows {
        let mut row = vec![r.p.to_string(), r.d.to_string(), r.lascoux.to_string(), r.oracle.to_string()];
        if let Some(c) = r.characters_equal {
            row.push(c.to_string());
        }
        row.push(r.equal.to_string());
        t.row(row);
    }
    let verdict = match cmp.first_mismatch() {
        None => "all bidegrees match".to_string(),
        Some(r) => format!("mismatch at (p,d) = ({},{}): lascoux {}, oracle {}", r.p, r.d, r.lascoux, r.oracle),
    };
    let text = format!("{}{verdict}\n", t.render());
    let ok = cmp.all_equal;
    Ok(Output::new(&cmp, text).verified(ok))
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidPartition(_) | Error::InvalidInput(_) => 2,
        Error::Mismatch(_) => 3,
        Error::ResourceBound(_) => 4,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidPartition(_) | Error::InvalidInput(_) => "invalid",
        Error::Mismatch(_) => "mismatch",
        Error::ResourceBound(_) => "resource_bound",
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let name = cli.command.name();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                let doc = json!({"schema": 1, "command": name, "ok": out.verified, "result": out.result});
                emit(&(serde_json::to_string_pretty(&doc).expect("serializable") + "\n"));
            } else {
                emit(&out.text);
            }
            ExitCode::from(if out.verified { 0 } else { 3 })
        }
        Err(e) => {
            if cli.json {
                let doc = json!({"schema": 1, "command": name, "error": {"kind": error_kind(&e), "message": e.to_string()}});
                emit(&(serde_json::to_string_pretty(&doc).expect("serializable") + "\n"));
            }
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
