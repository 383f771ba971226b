use std::path::Path;

use num_rational::BigRational;
use serde_json::{json, Value};

use sdl_core::arith::decimal::{parse_rational, render_sig};
use sdl_core::cohomology::{solve_primitive, truncated_cohomology, COHOMOLOGY_CSV_HEADER};
use sdl_core::counterexample::{
    blowup_profile, build_family, closed_interval, solve_family, trajectory_rows, verify_smoothness, FamilySpec,
    TRAJECTORY_CSV_HEADER,
};
use sdl_core::diophantine::{cf_expand, convergents, estimate_exponent, find_witness_definition, gap, Slope, WitnessSearch};
use sdl_core::fourier::{integer_json, FourierSeries2D};
use sdl_core::kunneth::{kunneth_check, ProductFoliation};
use sdl_core::report::{exponent_json, gap_json, interval_json, witness_json};
use sdl_core::arith::RationalInterval;

use crate::args::{Command, CounterexampleOp, FamilySource, SlopeOp};
use crate::config::RunConfig;
use crate::emit::{Report, Table};
use crate::CliError;

const GAP_CSV_HEADER: [&str; 5] = ["radius", "gap_lo", "gap_hi", "argmin_m", "argmin_n"];
const CONVERGENT_CSV_HEADER: [&str; 5] = ["level", "m", "n", "error_lo", "error_hi"];
const SMOOTHNESS_CSV_HEADER: [&str; 6] = ["a", "j", "constant", "sampled_sup", "instantiated", "tail"];

/// A bare `liouville10` takes its cap from the run configuration.
fn parse_slope(literal: &str, cfg: &RunConfig) -> Result<Slope, CliError> {
    if literal.trim() == "liouville10" {
        return Ok(Slope::liouville(cfg.cap)?);
    }
    Ok(literal.parse()?)
}

fn parse_radii(raw: &str) -> Result<Vec<u64>, CliError> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::Usage(format!("--radius: not a nonnegative integer: {s:?}"))))
        .collect()
}

fn parse_interval(raw: &str) -> Result<RationalInterval, CliError> {
    let (lo, hi) = raw
        .split_once(',')
        .ok_or_else(|| CliError::Usage(format!("--interval: expected lo,hi, got {raw:?}")))?;
    Ok(closed_interval(parse_rational(lo)?, parse_rational(hi)?)?)
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, &e))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::Domain(sdl_core::Error::InvalidInput(format!("{}: {e}", path.display())))
    })
}

fn load_family(source: &FamilySource, cfg: &RunConfig) -> Result<(FamilySpec, Value), CliError> {
    match (&source.spec, &source.slope) {
        (Some(path), _) => {
            let spec = FamilySpec::from_json(&read_json(path)?)?;
            Ok((spec, json!({ "spec": path.display().to_string() })))
        }
        (None, Some(lit)) => {
            let slope = parse_slope(lit, cfg)?;
            let spec = build_family(&slope, source.pmax, cfg.depth)?;
            Ok((spec, json!({ "slope": slope.to_string(), "pmax": source.pmax })))
        }
        (None, None) => Err(CliError::Usage("one of --spec or --slope is required".into())),
    }
}

fn report(command: &str, arguments: Value, payload: Value) -> Report {
    Report {
        command: command.into(),
        arguments,
        payload,
        table: None,
        artifact: None,
    }
}

fn bounds(iv: &RationalInterval, digits: u32) -> (String, String) {
    let b = interval_json(iv, digits);
    (b["lo"].as_str().unwrap_or_default().into(), b["hi"].as_str().unwrap_or_default().into())
}

pub fn dispatch(command: &Command, cfg: &RunConfig) -> Result<Report, CliError> {
    let digits = cfg.precision;
    match command {
        Command::Slope { op } => slope_op(op, cfg),
        Command::Solve { slope, series } => {
            let s = parse_slope(slope, cfg)?;
            let f = FourierSeries2D::from_json(&read_json(series)?)?;
            let sol = solve_primitive(&f, &s)?;
            let mut r = report(
                "solve",
                json!({ "slope": s.to_string(), "series": series.display().to_string() }),
                sol.to_json(digits)?,
            );
            r.artifact = Some(sol.g.to_json(digits)?);
            Ok(r)
        }
        Command::Cohomology { slope, radius } => {
            let s = parse_slope(slope, cfg)?;
            let radii = parse_radii(radius)?;
            let mut table = Table::new(&COHOMOLOGY_CSV_HEADER);
            let mut reports = Vec::new();
            for &n in &radii {
                let c = truncated_cohomology(&s, n)?;
                table.rows.push(c.csv_record(digits));
                reports.push(c.to_json(digits));
            }
            let mut r = report(
                "cohomology",
                json!({ "slope": s.to_string(), "radius": radii }),
                json!({ "reports": reports }),
            );
            r.table = Some(table);
            Ok(r)
        }
        Command::Counterexample { op } => counterexample_op(op, cfg),
        Command::Kunneth { slope, radius } => {
            let factors = slope.iter().map(|l| parse_slope(l, cfg)).collect::<Result<Vec<_>, _>>()?;
            let names: Vec<String> = factors.iter().map(|s| s.to_string()).collect();
            let product = ProductFoliation::new(factors)?;
            let k = kunneth_check(&product, *radius)?;
            Ok(report("kunneth", json!({ "slopes": names, "radius": radius }), k.to_json(digits)))
        }
    }
}

fn slope_op(op: &SlopeOp, cfg: &RunConfig) -> Result<Report, CliError> {
    let digits = cfg.precision;
    match op {
        SlopeOp::Cf { slope } => {
            let s = parse_slope(slope, cfg)?;
            let q = cf_expand(&s, cfg.depth)?;
            Ok(report(
                "slope cf",
                json!({ "slope": s.to_string() }),
                json!({ "quotients": q.iter().map(integer_json).collect::<Vec<_>>() }),
            ))
        }
        SlopeOp::Convergents { slope } => {
            let s = parse_slope(slope, cfg)?;
            let convs = convergents(&s, cfg.depth)?;
            let mut table = Table::new(&CONVERGENT_CSV_HEADER);
            let mut items = Vec::new();
            for c in &convs {
                let (lo, hi) = bounds(&c.error, digits);
                table.rows.push(vec![c.level.to_string(), c.m.to_string(), c.n.to_string(), lo, hi]);
                items.push(json!({
                    "level": c.level,
                    "m": integer_json(&c.m),
                    "n": integer_json(&c.n),
                    "error": interval_json(&c.error, digits),
                }));
            }
            let mut r = report("slope convergents", json!({ "slope": s.to_string() }), json!({ "convergents": items }));
            r.table = Some(table);
            Ok(r)
        }
        SlopeOp::Witness { slope, pmax } => {
            let s = parse_slope(slope, cfg)?;
            let mut items = Vec::new();
            for p in 1..=*pmax {
                items.push(match find_witness_definition(&s, p, cfg.depth)? {
                    WitnessSearch::Found(w) => json!({ "p": p, "found": true, "witness": witness_json(&w, digits) }),
                    WitnessSearch::NotFound { depth_searched } => {
                        json!({ "p": p, "found": false, "depth_searched": depth_searched })
                    }
                });
            }
            Ok(report(
                "slope witness",
                json!({ "slope": s.to_string(), "pmax": pmax }),
                json!({ "witnesses": items }),
            ))
        }
        SlopeOp::Gap { slope, radius } => {
            let s = parse_slope(slope, cfg)?;
            let radii = parse_radii(radius)?;
            let mut table = Table::new(&GAP_CSV_HEADER);
            let mut items = Vec::new();
            for &n in &radii {
                let g = gap(&s, n)?;
                let (lo, hi) = bounds(&g.enclosure(), digits);
                table.rows.push(vec![n.to_string(), lo, hi, g.argmin.0.to_string(), g.argmin.1.to_string()]);
                items.push(gap_json(&g, digits));
            }
            let mut r = report("slope gap", json!({ "slope": s.to_string(), "radius": radii }), json!({ "gaps": items }));
            r.table = Some(table);
            Ok(r)
        }
        SlopeOp::Exponent { slope, radius } => {
            let s = parse_slope(slope, cfg)?;
            let radii = parse_radii(radius)?;
            let fit = estimate_exponent(&s, &radii)?;
            Ok(report(
                "slope exponent",
                json!({ "slope": s.to_string(), "radius": radii }),
                exponent_json(&fit, digits),
            ))
        }
    }
}

fn counterexample_op(op: &CounterexampleOp, cfg: &RunConfig) -> Result<Report, CliError> {
    let digits = cfg.precision;
    match op {
        CounterexampleOp::Build { slope, pmax } => {
            let s = parse_slope(slope, cfg)?;
            let spec = build_family(&s, *pmax, cfg.depth)?;
            let v = spec.to_json(digits);
            let mut r = report("counterexample build", json!({ "slope": s.to_string(), "pmax": pmax }), v.clone());
            r.artifact = Some(v);
            Ok(r)
        }
        CounterexampleOp::Verify {
            source,
            a_max,
            j_max,
            interval,
        } => {
            let (spec, mut args) = load_family(source, cfg)?;
            let iv = parse_interval(interval)?;
            let cert = verify_smoothness(&spec, *a_max, *j_max, &iv, cfg.samples)?;
            args["a_max"] = json!(a_max);
            args["j_max"] = json!(j_max);
            args["interval"] = json!([iv.lo().to_string(), iv.hi().to_string()]);
            let mut table = Table::new(&SMOOTHNESS_CSV_HEADER);
            let r = |q: &BigRational| render_sig(q, digits);
            for b in &cert.bounds {
                table.rows.push(vec![
                    b.a.to_string(),
                    b.j.to_string(),
                    r(&b.constant),
                    r(&b.sampled_sup),
                    r(&b.instantiated),
                    b.tail.as_ref().map(r).unwrap_or_default(),
                ]);
            }
            let mut rep = report("counterexample verify", args, cert.to_json(digits));
            rep.table = Some(table);
            Ok(rep)
        }
        CounterexampleOp::Solve { source, t } => {
            let (spec, mut args) = load_family(source, cfg)?;
            let t = parse_rational(t)?;
            args["t"] = json!(t.to_string());
            let sample = solve_family(&spec, &t)?;
            Ok(report("counterexample solve", args, sample.to_json(digits)?))
        }
        CounterexampleOp::Blowup { source, interval } => {
            let (spec, mut args) = load_family(source, cfg)?;
            let iv = parse_interval(interval)?;
            args["interval"] = json!([iv.lo().to_string(), iv.hi().to_string()]);
            let profile = blowup_profile(&spec, &iv, cfg.samples)?;
            let mut table = Table::new(&TRAJECTORY_CSV_HEADER);
            table.rows = trajectory_rows(&spec, &iv, cfg.samples, digits).into_iter().map(Vec::from).collect();
            let mut r = report("counterexample blowup", args, profile.to_json(digits));
            r.table = Some(table);
            Ok(r)
        }
    }
}
