//! Command implementations. Output goes to the supplied writer.

use std::io::Write;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde_json::json;
use zeck_core::extremal::measure_tail_bound;
use zeck_core::{
    char_poly, derived_constants, extremes, generating_identity_check, measure_check, ListSpec,
    SpectralConstants, StarCandidate, SystemPair,
};

use crate::format::{fmt_float, json_float, json_int, ln_big};
use crate::{CliError, CliResult};

pub fn cmd_expand(list: &ListSpec, n: &BigUint, out: &mut dyn Write) -> CliResult<()> {
    let eps = zeck_core::encode_greedy(list, n).map_err(|e| CliError::Usage(e.to_string()))?;
    writeln!(out, "{eps}")?;
    Ok(())
}

pub fn cmd_count(
    pair: &SystemPair,
    x: &BigUint,
    brute: bool,
    json: bool,
    out: &mut dyn Write,
) -> CliResult<()> {
    if x.is_zero() {
        return Err(CliError::Usage("--x must be at least 1".into()));
    }
    let z = if brute {
        pair.brute_force_z(x)
    } else {
        pair.z_count(x)
    }
    .map_err(|e| CliError::Usage(e.to_string()))?;
    if json {
        let v = json!({
            "x": json_int(x),
            "z": json_int(&z),
            "method": if brute { "brute" } else { "duality" },
        });
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "{z}")?;
    }
    Ok(())
}

/// Sample points `from, from + step, ...` strictly below `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScanRange {
    pub from: BigUint,
    pub to: BigUint,
    pub step: BigUint,
}

impl ScanRange {
    pub fn new(from: BigUint, to: BigUint, step: BigUint) -> CliResult<Self> {
        if from.is_zero() {
            return Err(CliError::Usage("--from must be at least 1".into()));
        }
        if from >= to {
            return Err(CliError::Usage("--from must be below --to".into()));
        }
        if step.is_zero() {
            return Err(CliError::Usage("--step must be at least 1".into()));
        }
        Ok(Self { from, to, step })
    }

    pub fn iter(&self) -> impl Iterator<Item = BigUint> + '_ {
        std::iter::successors(Some(self.from.clone()), move |x| Some(x + &self.step))
            .take_while(move |x| x < &self.to)
    }
}

/// One sampled point of `z(x)/x^γ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanRow {
    pub x: BigUint,
    pub z: BigUint,
    pub ratio: f64,
}

/// Streams scan rows in increasing `x` to `f`.
pub fn for_each_row(
    pair: &SystemPair,
    range: &ScanRange,
    mut f: impl FnMut(ScanRow) -> CliResult<()>,
) -> CliResult<()> {
    let gamma = derived_constants(pair).gamma;
    for x in range.iter() {
        let z = pair.z_count(&x).map_err(|e| CliError::Usage(e.to_string()))?;
        let ratio = (ln_big(&z) - gamma * ln_big(&x)).exp();
        f(ScanRow { x, z, ratio })?;
    }
    Ok(())
}

/// Writes `x,z,ratio` CSV; returns the number of rows.
pub fn cmd_scan(
    pair: &SystemPair,
    range: &ScanRange,
    digits: usize,
    out: &mut dyn Write,
) -> CliResult<u64> {
    writeln!(out, "x,z,ratio")?;
    let mut rows = 0;
    for_each_row(pair, range, |row| {
        rows += 1;
        writeln!(out, "{},{},{}", row.x, row.z, fmt_float(row.ratio, digits))?;
        Ok(())
    })?;
    Ok(rows)
}

fn constant_fields(c: &SpectralConstants) -> Vec<(&'static str, f64)> {
    vec![
        ("phi", c.phi),
        ("phi_sup", c.phi_sup),
        ("omega", c.omega),
        ("omega_sup", c.omega_sup),
        ("gamma", c.gamma),
        ("alpha", c.alpha),
        ("alpha_sup", c.alpha_sup),
        ("rho", c.rho),
        ("p_star", c.p_star),
    ]
}

pub fn cmd_info(pair: &SystemPair, json: bool, digits: usize, out: &mut dyn Write) -> CliResult<()> {
    let c = derived_constants(pair);
    if json {
        let mut obj = serde_json::Map::new();
        obj.insert("sub".into(), pair.sub().to_string().into());
        obj.insert("super".into(), pair.sup().to_string().into());
        for (k, v) in constant_fields(&c) {
            obj.insert(k.into(), json_float(v, digits));
        }
        obj.insert("p".into(), c.p.into());
        obj.insert("p_dagger".into(), c.p_dagger.into());
        writeln!(out, "{}", serde_json::Value::Object(obj))?;
    } else {
        writeln!(out, "sub={}", pair.sub())?;
        writeln!(out, "super={}", pair.sup())?;
        for (k, v) in constant_fields(&c) {
            writeln!(out, "{k}={}", fmt_float(v, digits))?;
        }
        writeln!(out, "p={}", c.p)?;
        writeln!(out, "p_dagger={}", c.p_dagger)?;
    }
    Ok(())
}

/// Candidates with a tail come from the maximum search, finite ones from the minimum search.
fn search_of(cand: &StarCandidate) -> &'static str {
    if cand.tail.is_some() {
        "max"
    } else {
        "min"
    }
}

pub fn cmd_extremes(pair: &SystemPair, json: bool, digits: usize, out: &mut dyn Write) -> CliResult<()> {
    let r = extremes(pair);
    let scale = r.constants.scale();
    if json {
        let candidates: Vec<serde_json::Value> = r
            .all_candidates
            .iter()
            .map(|(c, d)| {
                json!({
                    "candidate": c.to_string(),
                    "search": search_of(c),
                    "delta_star": json_float(*d, digits),
                    "scaled": json_float(scale * d, digits),
                })
            })
            .collect();
        let v = json!({
            "sub": pair.sub().to_string(),
            "super": pair.sup().to_string(),
            "candidates": candidates,
            "max_candidate": r.max_candidate.to_string(),
            "min_candidate": r.min_candidate.to_string(),
            "delta_max": json_float(r.delta_max, digits),
            "delta_min": json_float(r.delta_min, digits),
            "limsup": json_float(r.limsup, digits),
            "liminf": json_float(r.liminf, digits),
        });
        writeln!(out, "{v}")?;
    } else {
        writeln!(out, "candidate,search,delta_star,scaled")?;
        for (c, d) in &r.all_candidates {
            writeln!(
                out,
                "{},{},{},{}",
                c,
                search_of(c),
                fmt_float(*d, digits),
                fmt_float(scale * d, digits)
            )?;
        }
        writeln!(out, "max_candidate={}", r.max_candidate)?;
        writeln!(out, "min_candidate={}", r.min_candidate)?;
        writeln!(out, "delta_max={}", fmt_float(r.delta_max, digits))?;
        writeln!(out, "delta_min={}", fmt_float(r.delta_min, digits))?;
        writeln!(out, "limsup={}", fmt_float(r.limsup, digits))?;
        writeln!(out, "liminf={}", fmt_float(r.liminf, digits))?;
    }
    Ok(())
}

/// Outcome of one verification check.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// Runs every cross-check for `x <= max_x`; the first counterexample of each
/// check is reported with its inputs.
pub fn verify_checks(pair: &SystemPair, max_x: u64, digits: usize) -> Vec<CheckResult> {
    let tag = format!("sub=({}) super=({})", pair.sub(), pair.sup());
    let mut checks = Vec::new();

    let duality = (|| {
        let table = match pair.brute_force_table(max_x) {
            Ok(t) => t,
            Err(e) => return (false, format!("{tag}: {e}")),
        };
        for x in 1..=max_x {
            let brute = table[x as usize - 1];
            match pair.z_count(&BigUint::from(x)) {
                Ok(z) if z == BigUint::from(brute) => {}
                Ok(z) => return (false, format!("{tag} x={x}: duality {z}, brute force {brute}")),
                Err(e) => return (false, format!("{tag} x={x}: {e}")),
            }
        }
        (true, format!("x = 1..={max_x}"))
    })();
    checks.push(CheckResult {
        name: "duality",
        pass: duality.0,
        detail: duality.1,
    });

    let round_trip = (|| {
        for (name, h) in [("sub", pair.h()), ("super", pair.h_sup())] {
            for n in 0..max_x {
                let n = BigUint::from(n);
                match h.encode(&n) {
                    Ok(e) if h.eval(&e) == n => {}
                    Ok(e) => return (false, format!("{tag} {name} n={n}: expansion {e} evaluates differently")),
                    Err(e) => return (false, format!("{tag} {name} n={n}: {e}")),
                }
            }
        }
        (true, format!("n < {max_x} on both lists"))
    })();
    checks.push(CheckResult {
        name: "round_trip",
        pass: round_trip.0,
        detail: round_trip.1,
    });

    let gen_ok = [pair.sub(), pair.sup()]
        .iter()
        .all(|l| generating_identity_check(l, 50));
    checks.push(CheckResult {
        name: "generating_identity",
        pass: gen_ok,
        detail: "degree 50 on both lists".into(),
    });

    let c = derived_constants(pair);
    let m = measure_check(pair, &c, 200) + measure_tail_bound(&c, 200);
    checks.push(CheckResult {
        name: "measure",
        pass: (m - 1.0).abs() < 1e-6,
        detail: format!("partial sum + tail = {}", fmt_float(m, digits)),
    });

    let mut norm_ok = true;
    let mut norm_detail = Vec::new();
    let mut root_ok = true;
    let mut root_detail = Vec::new();
    for (l, phi) in [(pair.sub(), c.phi), (pair.sup(), c.phi_sup)] {
        let w = 1.0 / phi;
        let n = l.len();
        let s: f64 = (1..=n).map(|k| f64::from(l.entry(k)) * w.powi(k as i32)).sum::<f64>()
            / (1.0 - w.powi(n as i32));
        norm_ok &= (s - 1.0).abs() < 1e-10;
        norm_detail.push(format!("({l}): {}", fmt_float(s, digits)));
        let residual = char_poly(l).eval(phi).abs();
        root_ok &= residual < 1e-10;
        root_detail.push(format!("({l}): {}", fmt_float(residual, 3)));
    }
    checks.push(CheckResult {
        name: "normalization",
        pass: norm_ok,
        detail: norm_detail.join(", "),
    });
    checks.push(CheckResult {
        name: "root_residual",
        pass: root_ok,
        detail: root_detail.join(", "),
    });
    checks
}

/// Prints one line per check; returns whether all passed.
pub fn cmd_verify(
    pair: &SystemPair,
    max_x: u64,
    json: bool,
    digits: usize,
    out: &mut dyn Write,
) -> CliResult<bool> {
    if max_x == 0 {
        return Err(CliError::Usage("--max-x must be at least 1".into()));
    }
    let checks = verify_checks(pair, max_x, digits);
    let all = checks.iter().all(|c| c.pass);
    if json {
        let list: Vec<serde_json::Value> = checks
            .iter()
            .map(|c| json!({"check": c.name, "pass": c.pass, "detail": c.detail}))
            .collect();
        writeln!(out, "{}", json!({"checks": list, "pass": all}))?;
    } else {
        for c in &checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            writeln!(out, "{status} {}: {}", c.name, c.detail)?;
        }
    }
    Ok(all)
}

/// Convenience for library users: the rows of a scan in memory.
pub fn scan_rows(pair: &SystemPair, range: &ScanRange) -> CliResult<Vec<ScanRow>> {
    let mut rows = Vec::new();
    for_each_row(pair, range, |r| {
        rows.push(r);
        Ok(())
    })?;
    Ok(rows)
}

/// `z(x)/x^γ` for a single `x`.
pub fn ratio_at(pair: &SystemPair, x: &BigUint) -> CliResult<f64> {
    let range = ScanRange::new(x.clone(), x + BigUint::one(), BigUint::one())?;
    let rows = scan_rows(pair, &range)?;
    Ok(rows[0].ratio)
}
