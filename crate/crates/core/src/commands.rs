//! The command-line subcommands as plain functions returning their output
//! and exit code.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use serde_json::{json, Value};
use thiserror::Error;

use crate::asymptotics::{
    asn, asn_inner_product, dominant_coefficients, parse_poly_matrix, AsnError, PolyParseError,
};
use crate::cone::{
    build_d_system, build_e_system, extreme_rays, koteljanskii_cone_membership, membership,
    orbit_decompose, write_rays, ConeError, KCertificate, Symmetry,
};
use crate::known;
use crate::nullity::{nullity_type, parse_matrix, rank_type, MatrixParseError};
use crate::probe::{
    bound_search, corollary_check, eval_family_slope, eval_poly_family_slope, fiedler_check,
    sample_all, EpsilonGrid, ProbeError, ProbeReport, SamplerConfig, CHECK_TOLERANCE,
};
use crate::ratio::{homogeneity_vectors, parse_ratio, FormalLog, RatioError};
use crate::reproduce::{run_reproduction, ReproduceConfig};
use crate::subset::display_order;

#[derive(Debug, Error)]
pub enum CommandError {
    #[error("ratio: {0}")]
    Ratio(#[from] RatioError),
    #[error("matrix file: {0}")]
    Matrix(#[from] MatrixParseError),
    #[error("polynomial matrix file: {0}")]
    Poly(#[from] PolyParseError),
    #[error(transparent)]
    Cone(#[from] ConeError),
    #[error(transparent)]
    Asn(#[from] AsnError),
    #[error(transparent)]
    Probe(#[from] ProbeError),
    #[error("{0}")]
    Unsupported(String),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            _ => Err(format!("unknown format '{s}' (expected text or json)")),
        }
    }
}

/// Semigroups that `membership` can decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Semigroup {
    /// Homogeneous ratios.
    H,
    /// Subset and superset sum conditions.
    E,
    /// Nonnegative against every nullity type.
    D,
    /// Products of Koteljanskii ratios.
    K,
}

impl FromStr for Semigroup {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "H" | "h" => Ok(Semigroup::H),
            "E" | "e" => Ok(Semigroup::E),
            "D" | "d" => Ok(Semigroup::D),
            "K" | "k" => Ok(Semigroup::K),
            _ => Err(format!("unknown semigroup '{s}' (expected H, E, D or K)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandOutput {
    pub text: String,
    pub exit_code: i32,
}

impl CommandOutput {
    fn ok(text: String) -> Self {
        CommandOutput { text, exit_code: 0 }
    }

    fn json(v: Value, exit_code: i32) -> Self {
        CommandOutput {
            text: serde_json::to_string_pretty(&v).expect("json value") + "\n",
            exit_code,
        }
    }
}

fn log_json(v: &FormalLog) -> Value {
    let entries: Vec<Value> = display_order(v.ground_size())
        .into_iter()
        .filter(|s| !v.entry(*s).is_zero())
        .map(|s| json!({ "set": s.to_string(), "exponent": v.entry(s).to_string() }))
        .collect();
    json!({ "n": v.ground_size(), "ratio": v.to_string(), "entries": entries })
}

/// Prints the nullity and rank of every column set.
pub fn nullity(matrix_text: &str, format: Format) -> Result<CommandOutput, CommandError> {
    let m = parse_matrix(matrix_text)?;
    let nu = nullity_type(&m);
    let rho = rank_type(&m);
    let order = display_order(m.cols());
    Ok(match format {
        Format::Text => {
            let mut out = String::new();
            for s in order {
                let _ = writeln!(out, "{s} nullity={} rank={}", nu.entry(s), rho.entry(s));
            }
            CommandOutput::ok(out)
        }
        Format::Json => {
            let entries: Vec<Value> = order
                .into_iter()
                .map(|s| json!({ "set": s.to_string(), "nullity": nu.entry(s), "rank": rho.entry(s) }))
                .collect();
            CommandOutput::json(json!({ "n": m.cols(), "entries": entries }), 0)
        }
    })
}

/// Exit code 0 for members and 1 for non-members.
pub fn membership_cmd(
    ratio: &str,
    semigroup: Semigroup,
    n: Option<usize>,
    format: Format,
) -> Result<CommandOutput, CommandError> {
    let v = parse_ratio(ratio, n)?.formal_log();
    let n = v.ground_size();
    if semigroup == Semigroup::D && !(3..=5).contains(&n) {
        return Err(ConeError::Unsupported { system: "D", n }.into());
    }
    if n > 10 {
        return Err(CommandError::Unsupported(format!("n = {n} exceeds 10")));
    }
    let mut lines: Vec<String> = Vec::new();
    let mut rows: Vec<Value> = Vec::new();
    let homogeneity: Vec<BigRational> = homogeneity_vectors(n).iter().map(|h| v.dot(h)).collect();
    let member = if !v.is_homogeneous() {
        lines.push("not homogeneous".into());
        for (k, x) in homogeneity.iter().enumerate() {
            let label = if k == 0 {
                "sum".to_string()
            } else {
                format!("index {k}")
            };
            lines.push(format!("{label} = {x}"));
            rows.push(json!({ "label": label, "value": x.to_string() }));
        }
        false
    } else {
        match semigroup {
            Semigroup::H => {
                lines.push("homogeneous".into());
                true
            }
            Semigroup::E | Semigroup::D => {
                let sys = if semigroup == Semigroup::E {
                    build_e_system(n)?
                } else {
                    build_d_system(n)?
                };
                let cert = membership(&v, &sys)?;
                for (label, x) in &cert.inner_products {
                    lines.push(format!("{label} = {x}"));
                    rows.push(json!({ "label": label, "value": x.to_string() }));
                }
                if let Some((label, x)) = &cert.witness {
                    lines.push(format!("witness: {label} = {x}"));
                }
                cert.is_member()
            }
            Semigroup::K => match koteljanskii_cone_membership(&v)? {
                KCertificate::Member { coefficients } => {
                    for (s, t, c) in &coefficients {
                        lines.push(format!("{c} * log({s}, {t})"));
                        rows.push(json!({ "s": s.to_string(), "t": t.to_string(), "coefficient": c.to_string() }));
                    }
                    true
                }
                KCertificate::NonMember { hyperplane, value } => {
                    for s in display_order(n) {
                        let h = &hyperplane[s.bits() as usize];
                        if !h.is_zero() {
                            lines.push(format!("h{s} = {h}"));
                            rows.push(json!({ "set": s.to_string(), "value": h.to_string() }));
                        }
                    }
                    lines.push(format!("separation value = {value}"));
                    false
                }
            },
        }
    };
    let verdict = if member { "member" } else { "non-member" };
    let code = if member { 0 } else { 1 };
    Ok(match format {
        Format::Text => {
            let mut out = format!("{verdict}\n");
            for l in lines {
                let _ = writeln!(out, "  {l}");
            }
            CommandOutput {
                text: out,
                exit_code: code,
            }
        }
        Format::Json => CommandOutput::json(
            json!({
                "ratio": log_json(&v),
                "semigroup": format!("{semigroup:?}"),
                "verdict": verdict,
                "certificate": rows,
            }),
            code,
        ),
    })
}

/// Rays of `E_3`, `E_4`, `D_3` or `D_4` with orbit and Koteljanskii labels.
pub fn extreme_rays_cmd(
    system: &str,
    n: usize,
    format: Format,
) -> Result<CommandOutput, CommandError> {
    let sys = match (system, n) {
        ("E" | "e", 3 | 4) => build_e_system(n)?,
        ("D" | "d", 3 | 4) => build_d_system(n)?,
        _ => {
            return Err(CommandError::Unsupported(format!(
                "extreme rays are available for E and D with n = 3 or 4, got {system} with n = {n}"
            )))
        }
    };
    let rays = extreme_rays(&sys)?;
    let logs: Vec<FormalLog> = rays.iter().map(|r| r.to_formal_log()).collect();
    let orbits = orbit_decompose(&logs, Symmetry::PermutationsAndComplement);
    let mut orbit_of_ray = vec![0; rays.len()];
    for (k, o) in orbits.iter().enumerate() {
        for &m in &o.members {
            orbit_of_ray[m] = k + 1;
        }
    }
    let kot = logs.iter().filter(|l| l.is_koteljanskii_ray()).count();
    Ok(match format {
        Format::Text => {
            let labeled: Vec<(Option<String>, _)> = rays
                .iter()
                .zip(&logs)
                .zip(&orbit_of_ray)
                .map(|((r, l), o)| {
                    let k = if l.is_koteljanskii_ray() {
                        " koteljanskii"
                    } else {
                        ""
                    };
                    (Some(format!("orbit {o}{k} {l}")), r)
                })
                .collect();
            let mut out = write_rays(n, &labeled);
            let _ = writeln!(out, "# {} rays, {kot} koteljanskii", rays.len());
            for (k, o) in orbits.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "# orbit {}: {} rays, representative {}",
                    k + 1,
                    o.members.len(),
                    o.representative
                );
            }
            CommandOutput::ok(out)
        }
        Format::Json => {
            let rays_json: Vec<Value> = logs
                .iter()
                .zip(&orbit_of_ray)
                .map(|(l, o)| {
                    let mut v = log_json(l);
                    v["orbit"] = json!(o);
                    v["koteljanskii"] = json!(l.is_koteljanskii_ray());
                    v
                })
                .collect();
            let orbits_json: Vec<Value> = orbits
                .iter()
                .map(|o| json!({ "representative": log_json(&o.representative), "members": o.members.len() }))
                .collect();
            CommandOutput::json(
                json!({ "system": system.to_uppercase(), "n": n, "rays": rays_json, "koteljanskii": kot, "orbits": orbits_json }),
                0,
            )
        }
    })
}

/// `asn(P)` with the sign of each dominating coefficient, and optionally the
/// pairing with a ratio.
pub fn asn_cmd(
    poly_text: &str,
    ratio: Option<&str>,
    format: Format,
) -> Result<CommandOutput, CommandError> {
    let p = parse_poly_matrix(poly_text)?;
    let a = asn(&p)?;
    let coeffs = dominant_coefficients(&p)?;
    let n = p.size();
    let pairing = match ratio {
        Some(r) => Some(asn_inner_product(
            &parse_ratio(r, Some(n))?.formal_log(),
            &a,
        )?),
        None => None,
    };
    let order = display_order(n);
    Ok(match format {
        Format::Text => {
            let mut out = String::new();
            for s in order {
                let c = coeffs[s.bits() as usize];
                let sign = if c > 0.0 { "C>0" } else { "C<=0" };
                let _ = writeln!(out, "{s} d={} {sign}", a.entry(s));
            }
            if let Some(x) = &pairing {
                let _ = writeln!(out, "pairing = {x}");
            }
            CommandOutput::ok(out)
        }
        Format::Json => {
            let entries: Vec<Value> = order
                .into_iter()
                .map(|s| json!({ "set": s.to_string(), "d": a.entry(s), "leading_positive": coeffs[s.bits() as usize] > 0.0 }))
                .collect();
            CommandOutput::json(
                json!({ "n": n, "entries": entries, "pairing": pairing.map(|x| x.to_string()) }),
                0,
            )
        }
    })
}

fn probe_output(r: &ProbeReport, format: Format) -> CommandOutput {
    match format {
        Format::Text => CommandOutput::ok(r.key_value_block()),
        Format::Json => {
            let mut v = serde_json::to_value(r).expect("report serializes");
            v["predicted"] = json!(r.predicted_behavior());
            CommandOutput::json(v, 0)
        }
    }
}

/// Slope of the ratio along `MᵀM + e·I`.
pub fn probe_family(
    ratio: &str,
    matrix_text: &str,
    grid: &EpsilonGrid,
    format: Format,
) -> Result<CommandOutput, CommandError> {
    let m = parse_matrix(matrix_text)?;
    let v = parse_ratio(ratio, Some(m.cols()))?.formal_log();
    Ok(probe_output(&eval_family_slope(&v, &m, grid)?, format))
}

/// Slope of the ratio along `P(e)ᵀP(e)`.
pub fn probe_poly(
    ratio: &str,
    poly_text: &str,
    grid: &EpsilonGrid,
    format: Format,
) -> Result<CommandOutput, CommandError> {
    let p = parse_poly_matrix(poly_text)?;
    let v = parse_ratio(ratio, Some(p.size()))?.formal_log();
    Ok(probe_output(&eval_poly_family_slope(&v, &p, grid)?, format))
}

/// Largest value of the ratio found by sampling and local ascent.
pub fn bound_search_cmd(
    ratio: &str,
    n: Option<usize>,
    seed: u64,
    samples: usize,
    format: Format,
) -> Result<CommandOutput, CommandError> {
    let v = parse_ratio(ratio, n)?.formal_log();
    let cfg = SamplerConfig::new(seed, samples, v.ground_size())?;
    let r = bound_search(&v, &cfg);
    let witness: Vec<Vec<f64>> = (0..r.witness.nrows())
        .map(|i| r.witness.row(i).iter().copied().collect())
        .collect();
    Ok(match format {
        Format::Text => {
            let mut out = format!(
                "max_ratio = {:.9}\nsample_max = {:.9}\nbest_sample = {}\nascent_sweeps = {}\ndivergent = {}\n",
                r.max_ratio, r.sample_max, r.best_sample, r.ascent_sweeps, r.divergent
            );
            if let Some(l) = &r.divergent_family {
                let _ = writeln!(out, "divergent_family = {l}");
            }
            out.push_str("witness =\n");
            for row in &witness {
                let cells: Vec<String> = row.iter().map(|x| format!("{x:.9}")).collect();
                let _ = writeln!(out, "  {}", cells.join(" "));
            }
            CommandOutput::ok(out)
        }
        Format::Json => CommandOutput::json(
            json!({
                "ratio": log_json(&v),
                "seed": seed,
                "samples": samples,
                "max_ratio": r.max_ratio,
                "sample_max": r.sample_max,
                "best_sample": r.best_sample,
                "ascent_sweeps": r.ascent_sweeps,
                "divergent": r.divergent,
                "divergent_family": r.divergent_family,
                "witness": witness,
            }),
            0,
        ),
    })
}

/// Fiedler residuals and corollary values over sampled matrices. Exit code
/// 1 if any check fails.
pub fn fiedler_cmd(
    n: usize,
    seed: u64,
    samples: usize,
    format: Format,
) -> Result<CommandOutput, CommandError> {
    if n < 3 {
        return Err(CommandError::Unsupported(format!(
            "fiedler needs n >= 3, got {n}"
        )));
    }
    let cfg = SamplerConfig::new(seed, samples, n)?;
    let results = sample_all(&cfg, |_, a| -> Result<(f64, f64), ProbeError> {
        let res = fiedler_check(a, CHECK_TOLERANCE)?.min_residual();
        let mut cor = f64::NEG_INFINITY;
        for i in 1..=n {
            cor = cor.max(corollary_check(a, i)?);
        }
        Ok((res, cor))
    });
    let mut min_residual = f64::INFINITY;
    let mut max_corollary = f64::NEG_INFINITY;
    let mut failures = 0usize;
    for r in results {
        match r {
            Ok((res, cor)) => {
                min_residual = min_residual.min(res);
                max_corollary = max_corollary.max(cor);
                failures += usize::from(res < -CHECK_TOLERANCE);
            }
            Err(ProbeError::CorollaryViolated { .. }) => failures += 1,
            Err(e) => return Err(e.into()),
        }
    }
    let bound = ((n - 1) * (n - 1)) as f64;
    let code = i32::from(failures > 0);
    Ok(match format {
        Format::Text => CommandOutput {
            text: format!(
                "n = {n}\nsamples = {samples}\nmin_residual = {min_residual:e}\nmax_corollary = {max_corollary:.9}\n\
                 corollary_bound = {bound}\nfailures = {failures}\n"
            ),
            exit_code: code,
        },
        Format::Json => CommandOutput::json(
            json!({
                "n": n, "seed": seed, "samples": samples, "min_residual": min_residual,
                "max_corollary": max_corollary, "corollary_bound": bound, "failures": failures,
            }),
            code,
        ),
    })
}

/// Runs every check. With `out`, writes `reproduction.txt` and
/// `reproduction.json` into that directory.
pub fn reproduce_cmd(
    cfg: &ReproduceConfig,
    out: Option<&Path>,
    format: Format,
) -> Result<CommandOutput, CommandError> {
    let report = run_reproduction(cfg);
    if let Some(dir) = out {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("reproduction.txt"), report.to_text())?;
        std::fs::write(dir.join("reproduction.json"), report.to_json() + "\n")?;
    }
    let code = if report.all_passed() { 0 } else { 1 };
    Ok(CommandOutput {
        text: match format {
            Format::Text => report.to_text(),
            Format::Json => report.to_json() + "\n",
        },
        exit_code: code,
    })
}

/// Named ratios accepted wherever a ratio string is expected.
pub fn resolve_ratio(text: &str) -> &str {
    match text {
        "R1" => known::R1,
        "R2" => known::R2,
        "R3" => known::R3,
        "Q" => known::Q5,
        "E4-not-D4" => known::E4_NOT_D4,
        other => other,
    }
}
