//! One-shot run of every checkable claim: exact cone computations, the
//! counterexamples, and the numerical bounds.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::asymptotics::{asn, asn_inner_product};
use crate::cone::{
    build_d_system, build_e_system, canonical_form, extreme_rays, extreme_rays_by_enumeration,
    koteljanskii_cone_membership, membership, orbit_decompose, orbit_of, Symmetry,
};
use crate::known;
use crate::linalg::{rank_by_minors, rational_rank};
use crate::nullity::{
    all_partitions, cardinality_vector, catalog_n3, catalog_n4, counts_to_rationals,
    dual_nullity_type, h_equivalent, nullity_type, rank_type, RationalMatrix,
};
use crate::probe::{
    bound_search, corollary_check, decomposition_check, eval_family_slope, eval_poly_family_slope,
    fiedler_check, random_deficient_matrix, random_homogeneous, sample_all, EpsilonGrid,
    SamplerConfig, SlopeVerdict, CHECK_TOLERANCE,
};
use crate::ratio::FormalLog;

/// Sample sizes for the randomized checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReproduceConfig {
    pub seed: u64,
    pub slope_pairs: usize,
    pub fiedler_samples: usize,
    pub bound_samples: usize,
    pub rank_matrices: usize,
}

impl Default for ReproduceConfig {
    fn default() -> Self {
        ReproduceConfig {
            seed: 1,
            slope_pairs: 100,
            fiedler_samples: 10_000,
            bound_samples: 100_000,
            rank_matrices: 200,
        }
    }
}

/// Grid for random slope pairs. Near `e = 0.1` the first-order corrections
/// `e/σ²` from small singular values of `M` still bend the curve.
pub fn slope_pair_grid() -> EpsilonGrid {
    EpsilonGrid::geometric(1e-3, 1e-7, 9).expect("valid grid")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Detail {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub details: Vec<Detail>,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReproductionReport {
    pub config: ReproduceConfig,
    pub checks: Vec<CheckResult>,
}

impl ReproductionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "[{status}] {:>2} {} ({:.2} s)",
                c.id, c.name, c.seconds
            );
            for d in &c.details {
                let _ = writeln!(out, "       {} = {}", d.key, d.value);
            }
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        let _ = writeln!(out, "{passed}/{} checks passed", self.checks.len());
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

struct Findings {
    passed: bool,
    details: Vec<Detail>,
}

impl Findings {
    fn new() -> Self {
        Findings {
            passed: true,
            details: Vec::new(),
        }
    }

    fn note(&mut self, key: &str, value: impl ToString) {
        self.details.push(Detail {
            key: key.to_string(),
            value: value.to_string(),
        });
    }

    /// Records `value` and folds `ok` into the verdict.
    fn expect(&mut self, key: &str, value: impl ToString, ok: bool) {
        self.note(key, value);
        if !ok {
            self.passed = false;
            self.note("failed", key);
        }
    }
}

type CheckBody = fn(&ReproduceConfig) -> Result<Findings, String>;

fn run_check(id: u8, name: &'static str, cfg: &ReproduceConfig, body: CheckBody) -> CheckResult {
    let start = Instant::now();
    let (passed, details) = match body(cfg) {
        Ok(f) => (f.passed, f.details),
        Err(e) => (
            false,
            vec![Detail {
                key: "error".into(),
                value: e,
            }],
        ),
    };
    CheckResult {
        id,
        name,
        passed,
        details,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

fn ray_logs(system: char, n: usize) -> Result<(Vec<FormalLog>, Duration), String> {
    let sys = match system {
        'E' => build_e_system(n),
        _ => build_d_system(n),
    }
    .map_err(err)?;
    let start = Instant::now();
    let rays = extreme_rays(&sys).map_err(err)?;
    Ok((
        rays.iter().map(|r| r.to_formal_log()).collect(),
        start.elapsed(),
    ))
}

fn e3_rays(_: &ReproduceConfig) -> Result<Findings, String> {
    let mut f = Findings::new();
    let (got, elapsed) = ray_logs('E', 3)?;
    let expected: BTreeSet<Vec<BigRational>> = known::E3_RAYS
        .iter()
        .map(|t| known::log_of(t, 3).ordered_entries())
        .collect();
    let got_set: BTreeSet<Vec<BigRational>> = got.iter().map(FormalLog::ordered_entries).collect();
    f.expect("rays", got.len(), got.len() == 6);
    f.expect(
        "equal to the six Koteljanskii logarithms",
        got_set == expected,
        got_set == expected,
    );
    f.expect(
        "seconds",
        format!("{:.4}", elapsed.as_secs_f64()),
        elapsed < Duration::from_secs(1),
    );
    Ok(f)
}

fn d4_rays(_: &ReproduceConfig) -> Result<Findings, String> {
    let mut f = Findings::new();
    let (rays, elapsed) = ray_logs('D', 4)?;
    f.expect("rays", rays.len(), rays.len() == 46);
    let k = rays.iter().filter(|r| r.is_koteljanskii_ray()).count();
    f.expect("koteljanskii", k, k == 24);
    let r1_orbit = orbit_of(&known::r1(), Symmetry::Permutations);
    let in_r1 = rays.iter().filter(|r| r1_orbit.contains(r)).count();
    f.expect("permutations of R1", in_r1, in_r1 == 6);
    let mut r23 = orbit_of(&known::r2(), Symmetry::PermutationsAndComplement);
    r23.extend(orbit_of(&known::r3(), Symmetry::PermutationsAndComplement));
    let rest: Vec<&FormalLog> = rays
        .iter()
        .filter(|r| !r.is_koteljanskii_ray() && !r1_orbit.contains(r))
        .collect();
    let in_r23 = rest.iter().filter(|r| r23.contains(r)).count();
    f.expect(
        "remaining in R2/R3 orbits",
        format!("{in_r23}/{}", rest.len()),
        in_r23 == 16 && rest.len() == 16,
    );
    f.expect(
        "seconds",
        format!("{:.3}", elapsed.as_secs_f64()),
        elapsed < Duration::from_secs(60),
    );
    Ok(f)
}

fn generators(_: &ReproduceConfig) -> Result<Findings, String> {
    let mut f = Findings::new();
    let (rays, _) = ray_logs('D', 4)?;
    let orbits = orbit_decompose(&rays, Symmetry::PermutationsAndComplement);
    let reps: BTreeSet<Vec<BigRational>> = orbits
        .iter()
        .map(|o| o.representative.ordered_entries())
        .collect();
    let mut expected = BTreeSet::new();
    for (name, text) in known::D4_GENERATORS {
        let c = canonical_form(&known::log_of(text, 4), Symmetry::PermutationsAndComplement);
        let size = orbits
            .iter()
            .find(|o| o.representative == c)
            .map_or(0, |o| o.members.len());
        f.note(&format!("orbit of {name}"), size);
        expected.insert(c.ordered_entries());
    }
    let total: usize = orbits.iter().map(|o| o.members.len()).sum();
    f.expect("orbits", orbits.len(), orbits.len() == 5);
    f.expect("members", total, total == 46);
    f.expect(
        "representatives match generators",
        reps == expected,
        reps == expected,
    );
    Ok(f)
}

fn e4_not_d4(_: &ReproduceConfig) -> Result<Findings, String> {
    let mut f = Findings::new();
    let v = known::e4_not_d4();
    let e = membership(&v, &build_e_system(4).map_err(err)?).map_err(err)?;
    f.expect("E4 member", e.is_member(), e.is_member());
    let d = membership(&v, &build_d_system(4).map_err(err)?).map_err(err)?;
    match &d.witness {
        Some((label, value)) => {
            let ok = label.starts_with("M6:") && *value == BigRational::from_integer((-1).into());
            f.expect("D4 witness", format!("{label} -> {value}"), ok);
        }
        None => f.expect("D4 witness", "none", false),
    }
    let nu = nullity_type(&known::m6());
    let pairing = v.dot_counts(nu.entries());
    f.expect(
        "pairing with nul(M6)",
        &pairing,
        pairing == BigRational::from_integer((-1).into()),
    );
    let r = eval_family_slope(&v, &known::m6(), &EpsilonGrid::default()).map_err(err)?;
    f.expect(
        "fitted slope",
        format!("{:.4}", r.fitted_slope),
        (r.fitted_slope + 1.0).abs() <= 0.05,
    );
    f.expect(
        "max ratio on grid",
        format!("{:.3e}", r.max_ratio()),
        r.max_ratio() > 1e3,
    );
    Ok(f)
}

fn example_q(_: &ReproduceConfig) -> Result<Findings, String> {
    let mut f = Findings::new();
    let q = known::q5();
    let sys = build_d_system(5).map_err(err)?;
    let cert = membership(&q, &sys).map_err(err)?;
    let loop_free: Vec<&BigRational> = cert
        .inner_products
        .iter()
        .filter(|(l, _)| l.starts_with("loop-free"))
        .map(|(_, x)| x)
        .collect();
    f.expect("loop-free rows", loop_free.len(), loop_free.len() == 37);
    f.expect(
        "loop-free rows nonnegative",
        loop_free.iter().all(|x| !x.is_negative()),
        loop_free.iter().all(|x| !x.is_negative()),
    );
    f.note("D5 rows", cert.inner_products.len());
    f.expect("D5 member", cert.is_member(), cert.is_member());
    for i in 1..=5 {
        let w = q.delete_index(i);
        let c = koteljanskii_cone_membership(&w).map_err(err)?;
        let ok = c.is_member() && c.verify(&w);
        f.expect(
            &format!("delete {i}"),
            if ok {
                "Koteljanskii product"
            } else {
                "no certificate"
            },
            ok,
        );
    }
    let a = asn(&known::asn_family()).map_err(err)?;
    let ip = asn_inner_product(&q, &a).map_err(err)?;
    f.expect(
        "log(Q)·asn(P)",
        &ip,
        ip == BigRational::from_integer((-1).into()),
    );
    let r =
        eval_poly_family_slope(&q, &known::asn_family(), &EpsilonGrid::default()).map_err(err)?;
    f.expect(
        "fitted slope",
        format!("{:.4}", r.fitted_slope),
        (r.fitted_slope + 2.0).abs() <= 0.1,
    );
    Ok(f)
}

fn slope_pairs(cfg: &ReproduceConfig) -> Result<Findings, String> {
    let mut f = Findings::new();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let grid = slope_pair_grid();
    let (mut matched, mut classified, mut worst) = (0, 0, 0.0f64);
    for _ in 0..cfg.slope_pairs {
        let n = rng.random_range(2..=4);
        let v = random_homogeneous(&mut rng, n, 2);
        let m = random_deficient_matrix(&mut rng, n, 2);
        let r = eval_family_slope(&v, &m, &grid).map_err(err)?;
        let p: f64 = r.predicted_slope.to_f64().unwrap_or(f64::NAN);
        worst = worst.max((r.fitted_slope - p).abs() / p.abs().max(1.0));
        matched += usize::from(r.verdict == SlopeVerdict::Matches);
        classified += usize::from(r.observed == r.predicted_behavior());
    }
    f.expect("pairs", cfg.slope_pairs, cfg.slope_pairs >= 1);
    f.expect("slopes within 5%", matched, matched == cfg.slope_pairs);
    f.expect(
        "behavior classified",
        classified,
        classified == cfg.slope_pairs,
    );
    f.note("worst relative error", format!("{worst:.4}"));
    Ok(f)
}

fn fiedler(cfg: &ReproduceConfig) -> Result<Findings, String> {
    let mut f = Findings::new();
    for n in 3..=6 {
        let sc = SamplerConfig::new(cfg.seed.wrapping_add(n as u64), cfg.fiedler_samples, n)
            .map_err(err)?;
        let results = sample_all(&sc, |_, a| -> Result<(f64, f64), String> {
            let res = fiedler_check(a, CHECK_TOLERANCE)
                .map_err(err)?
                .min_residual();
            let mut cor = f64::NEG_INFINITY;
            for i in 1..=n {
                cor = cor.max(corollary_check(a, i).map_err(err)?);
            }
            Ok((res, cor))
        });
        let mut min_res = f64::INFINITY;
        let mut max_cor = f64::NEG_INFINITY;
        for r in results {
            let (res, cor) = r?;
            min_res = min_res.min(res);
            max_cor = max_cor.max(cor);
        }
        f.expect(
            &format!("n={n} min residual"),
            format!("{min_res:.3e}"),
            min_res >= -CHECK_TOLERANCE,
        );
        let bound = ((n - 1) * (n - 1)) as f64;
        f.expect(
            &format!("n={n} max corollary value"),
            format!("{max_cor:.4}"),
            max_cor <= bound + CHECK_TOLERANCE,
        );
    }
    Ok(f)
}

fn bounds(cfg: &ReproduceConfig) -> Result<Findings, String> {
    let mut f = Findings::new();
    let sc = SamplerConfig::new(cfg.seed, cfg.bound_samples, 4).map_err(err)?;
    for (name, v) in [
        ("R1", known::r1()),
        ("R2", known::r2()),
        ("R3", known::r3()),
    ] {
        let r = bound_search(&v, &sc);
        f.expect(
            &format!("{name} max"),
            format!("{:.6}", r.max_ratio),
            r.max_ratio <= 4.0 + CHECK_TOLERANCE && !r.divergent,
        );
    }
    f.note("R1 reference value", "27/16 = 1.6875 (not asserted)");
    let ok = decomposition_check().is_ok();
    f.expect("factorizations", ok, ok);
    Ok(f)
}

fn structural(cfg: &ReproduceConfig) -> Result<Findings, String> {
    let mut f = Findings::new();
    let n4 = catalog_n4().map_err(err)?;
    let mut matrices: Vec<RationalMatrix> = catalog_n3().into_iter().map(|e| e.matrix).collect();
    matrices.extend(n4.iter().map(|e| e.matrix.clone()));
    matrices.extend(all_partitions(5).iter().map(|p| p.realize()));
    let sums_ok = matrices.iter().all(|m| {
        let nu = nullity_type(m);
        let rho = rank_type(m);
        let card = cardinality_vector(m.cols());
        nu.entries()
            .iter()
            .zip(rho.entries())
            .zip(&card)
            .all(|((a, b), c)| a + b == *c)
    });
    f.expect(
        "nul + rank = cardinality",
        format!("{} matrices", matrices.len()),
        sums_ok,
    );

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut additive = true;
    for _ in 0..50 {
        let small = |rng: &mut ChaCha8Rng| {
            let (r, c) = (rng.random_range(1..=3), rng.random_range(1..=3));
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| (0..c).map(|_| rng.random_range(-1..=1)).collect())
                .collect();
            RationalMatrix::from_int_rows(c, &rows)
        };
        let (a, b) = (small(&mut rng), small(&mut rng));
        let (na, nb) = (nullity_type(&a), nullity_type(&b));
        let nab = nullity_type(&a.direct_sum(&b));
        let ca = a.cols();
        let mask = (1u32 << ca) - 1;
        additive &= (0..1u32 << (ca + b.cols())).all(|t| {
            nab.entries()[t as usize]
                == na.entries()[(t & mask) as usize] + nb.entries()[(t >> ca) as usize]
        });
    }
    f.expect("direct sums add", additive, additive);

    let duals_ok = n4.iter().all(|e| {
        let dual = dual_nullity_type(&e.nullity).to_rationals();
        h_equivalent(
            &dual,
            &counts_to_rationals(&e.nullity.complement_reindexed()),
            4,
        )
    });
    f.expect("duals match complements", duals_ok, duals_ok);

    let (d3, _) = ray_logs('D', 3)?;
    let (e3, _) = ray_logs('E', 3)?;
    f.expect("D3 rays = E3 rays", d3 == e3, d3 == e3);
    let (d4, _) = ray_logs('D', 4)?;
    let e4 = build_e_system(4).map_err(err)?;
    let inside = d4.iter().all(|r| e4.contains(r));
    f.expect("D4 rays in E4", inside, inside);
    let d4_sys = build_d_system(4).map_err(err)?;
    // pointed iff the rows have full rank on the homogeneous space
    let mut rows = d4_sys.equalities().to_vec();
    rows.extend(d4_sys.inequalities().iter().map(|c| c.vector.clone()));
    let rank = rational_rank(&rows);
    f.expect("D4 lineality dimension", 16 - rank, rank == 16);
    Ok(f)
}

fn oracles(cfg: &ReproduceConfig) -> Result<Findings, String> {
    let mut f = Findings::new();
    let sys = build_e_system(3).map_err(err)?;
    let dd = extreme_rays(&sys).map_err(err)?;
    let brute = extreme_rays_by_enumeration(&sys);
    f.expect("E3 rays by enumeration", brute.len(), dd == brute);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(99));
    let mut agree = 0;
    for _ in 0..cfg.rank_matrices {
        let (r, c) = (rng.random_range(1..=5), rng.random_range(1..=5));
        let rows: Vec<Vec<BigRational>> = (0..r)
            .map(|_| {
                (0..c)
                    .map(|_| {
                        let x: i64 = if rng.random_bool(0.3) {
                            0
                        } else {
                            rng.random_range(-3..=3)
                        };
                        BigRational::from_integer(BigInt::from(x))
                    })
                    .collect()
            })
            .collect();
        if rational_rank(&rows) == rank_by_minors(&rows) {
            agree += 1;
        }
    }
    f.expect(
        "ranks agree",
        format!("{agree}/{}", cfg.rank_matrices),
        agree == cfg.rank_matrices,
    );
    Ok(f)
}

pub const CHECK_NAMES: [&str; 10] = [
    "e3-extreme-rays",
    "d4-extreme-rays",
    "d4-generators",
    "e4-not-d4-witness",
    "q-in-d5-unbounded",
    "slope-property",
    "fiedler-suite",
    "ratio-bounds",
    "structural-identities",
    "oracle-equivalence",
];

/// Runs every check in order.
pub fn run_reproduction(cfg: &ReproduceConfig) -> ReproductionReport {
    let bodies: [CheckBody; 10] = [
        e3_rays,
        d4_rays,
        generators,
        e4_not_d4,
        example_q,
        slope_pairs,
        fiedler,
        bounds,
        structural,
        oracles,
    ];
    let checks = bodies
        .iter()
        .zip(CHECK_NAMES)
        .enumerate()
        .map(|(k, (body, name))| run_check(k as u8 + 1, name, cfg, *body))
        .collect();
    ReproductionReport {
        config: *cfg,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_run_passes() {
        let cfg = ReproduceConfig {
            seed: 3,
            slope_pairs: 10,
            fiedler_samples: 50,
            bound_samples: 200,
            rank_matrices: 20,
        };
        let report = run_reproduction(&cfg);
        assert!(report.all_passed(), "{}", report.to_text());
        assert_eq!(report.checks.len(), 10);
        assert!(report.to_json().contains("\"e3-extreme-rays\""));
    }
}
