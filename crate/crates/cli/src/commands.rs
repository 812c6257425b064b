//! One function per subcommand, each returning a status and a payload.

use std::thread;

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};
use symdyn_core::construction::{
    check_evp_x_0inf, lengths, tau, validate_certificate, verify_claim1, verify_corollary,
    verify_hitting_order, verify_one_part_remark, witness_not_eqp_y_fixed,
    witness_not_eqp_y_general, witness_not_evp_x_10inf, FixedTarget, WitnessCertificate,
};
use symdyn_core::dynamics::{
    check_pair, check_pair_at, classify, default_choosers, family_member,
    growing_zeros_eqp_refutation, hitting_times, periodic_scan, splitting_times, trivial_pair_scan,
    zero_membership_is_member_independent, EntourageDepth, PairKind, PairStatus,
};
use symdyn_core::interval_map::{
    check_witness, eventual_sensitivity_witness, example_es_map, format_rational, parse_rational,
    Rational,
};

use crate::args::{CheckCmd, Command, IntervalCmd, KindArg, ModelName, VerifyCmd, WitnessCmd};
use crate::parse::{build_model, parse_big, parse_cylinder, parse_point, parse_word};
use crate::report::{CliError, Status};

type Outcome = Result<(Status, Value), CliError>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report payload serializes")
}

/// Order-preserving map over `threads` scoped workers.
fn par_map<T: Sync, R: Send>(items: &[T], threads: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = threads.clamp(1, items.len().max(1));
    if threads == 1 {
        return items.iter().map(f).collect();
    }
    let chunk = items.len().div_ceil(threads);
    let f = &f;
    thread::scope(|s| {
        let handles: Vec<_> = items
            .chunks(chunk)
            .map(|c| s.spawn(move || c.iter().map(f).collect::<Vec<R>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}

fn all_hold(holds: impl IntoIterator<Item = bool>) -> Status {
    if holds.into_iter().all(|h| h) {
        Status::Verified
    } else {
        Status::Violated
    }
}

pub fn run(cmd: &Command, threads: usize) -> Outcome {
    match cmd {
        Command::Lengths { n } => {
            let rows: Vec<u32> = (0..=*n).collect();
            let rows = par_map(&rows, threads, |&k| lengths(k));
            Ok((Status::Verified, json!({ "rows": rows })))
        }
        Command::Verify(v) => verify(v, threads),
        Command::Tau {
            point,
            cylinder,
            horizon,
        } => {
            let p = parse_point(point, ModelName::Construction)?;
            let c = parse_cylinder(cylinder, ModelName::Construction)?;
            let h = parse_big(horizon)?;
            let t = tau(&p, &c, &h)?;
            let status = if t.is_some() {
                Status::Verified
            } else {
                Status::Inconclusive
            };
            let data = json!({
                "point": p.to_string(),
                "cylinder_length": c.len().to_string(),
                "horizon": h.to_string(),
                "tau": t.map(|t| t.to_string()),
            });
            Ok((status, data))
        }
        Command::Witness(w) => witness(w),
        Command::Check(c) => check(c),
        Command::Hitting {
            model,
            u,
            v,
            horizon,
            entourage,
            depth,
        } => {
            let m = build_model(*model, *depth)?;
            let (cu, cv) = (parse_cylinder(u, *model)?, parse_cylinder(v, *model)?);
            let report = match entourage {
                Some(k) => splitting_times(&m, &cu, &cv, EntourageDepth::new(*k)?, *horizon)?,
                None => hitting_times(&m, &cu, &cv, *horizon)?,
            };
            let data = json!({
                "set": if entourage.is_some() { "splitting" } else { "hitting" },
                "entourage": entourage,
                "classification": classify(&report),
                "report": report,
            });
            Ok((Status::Verified, data))
        }
        Command::PeriodicScan {
            model,
            max_period,
            horizon,
            depth,
        } => {
            let m = build_model(*model, *depth)?;
            let scan = periodic_scan(&m, *max_period, *horizon)?;
            Ok((
                Status::Verified,
                json!({ "scan": scan, "sampled": m.sample_info() }),
            ))
        }
        Command::Interval(i) => interval(i),
    }
}

fn verify(cmd: &VerifyCmd, threads: usize) -> Outcome {
    match cmd {
        VerifyCmd::Claim1 { n_max } => {
            let ns: Vec<u32> = (0..=*n_max).collect();
            let rows = par_map(&ns, threads, |&n| verify_claim1(n));
            Ok((
                all_hold(rows.iter().map(|r| r.holds)),
                json!({ "rows": rows }),
            ))
        }
        VerifyCmd::Corollary { n, k, sum_max } => {
            let pairs: Vec<(u32, u32)> = match sum_max {
                Some(s) => (0..=*s)
                    .flat_map(|n| (0..=s - n).map(move |k| (n, k)))
                    .collect(),
                None => vec![(*n, *k)],
            };
            let rows = par_map(&pairs, threads, |&(n, k)| verify_corollary(n, k));
            Ok((
                all_hold(rows.iter().map(|r| r.holds)),
                json!({ "rows": rows }),
            ))
        }
        VerifyCmd::OnePart { n_max } => {
            let ns: Vec<u32> = (0..=*n_max).collect();
            let rows = par_map(&ns, threads, |&n| verify_one_part_remark(n));
            Ok((
                all_hold(rows.iter().map(|r| r.holds)),
                json!({ "rows": rows }),
            ))
        }
        VerifyCmd::HittingOrder { n, k_max } => {
            let rows = verify_hitting_order(*n, *k_max)?;
            Ok((
                all_hold(rows.iter().map(|r| r.holds)),
                json!({ "n": n, "rows": rows }),
            ))
        }
    }
}

/// Every certificate is validated before it is reported; `--validate`
/// adds the per-fact results.
fn certificate(w: WitnessCertificate, show: bool) -> Outcome {
    let v = validate_certificate(&w);
    if !v.valid {
        return Err(CliError::Internal(format!(
            "certificate for {:?} failed validation: {:?}",
            w.claim, v.checked_facts
        )));
    }
    let mut data = json!({ "certificate": w, "valid": true });
    if show {
        data["validation"] = to_value(&v);
    }
    Ok((Status::Witness, data))
}

fn witness(cmd: &WitnessCmd) -> Outcome {
    match cmd {
        WitnessCmd::EvpX10inf { m, l, v } => {
            certificate(witness_not_evp_x_10inf(*m, *l)?, v.validate)
        }
        WitnessCmd::EqpYZero { n, v } => {
            certificate(witness_not_eqp_y_fixed(FixedTarget::Zero, *n)?, v.validate)
        }
        WitnessCmd::EqpYOne { n, v } => {
            certificate(witness_not_eqp_y_fixed(FixedTarget::One, *n)?, v.validate)
        }
        WitnessCmd::EqpYGeneral { prefix, n, v } => certificate(
            witness_not_eqp_y_general(&parse_word(prefix)?, *n)?,
            v.validate,
        ),
        WitnessCmd::EqpGrowingZeros {
            u_depth,
            v_depth,
            v,
        } => certificate(
            growing_zeros_eqp_refutation(*u_depth, *v_depth)?,
            v.validate,
        ),
    }
}

fn check(cmd: &CheckCmd) -> Outcome {
    match cmd {
        CheckCmd::Pair {
            kind,
            model,
            x,
            y,
            o_depth,
            uv_depth,
            u_depth,
            v_depth,
            horizon,
            depth,
        } => {
            let m = build_model(*model, *depth)?;
            let (px, py) = (parse_point(x, *model)?, parse_point(y, *model)?);
            let kind = match kind {
                KindArg::Eqp => PairKind::EqP,
                KindArg::Evp => PairKind::EvP,
            };
            if let (Some(du), Some(dv)) = (u_depth, v_depth) {
                let c = check_pair_at(&m, kind, &px, &py, *o_depth, *du, *dv, *horizon)?;
                let status = if c.satisfied {
                    Status::Satisfied
                } else {
                    Status::Violated
                };
                let data = json!({ "x": px.to_string(), "y": py.to_string(), "check": c, "sampled": m.sample_info() });
                return Ok((status, data));
            }
            let v = check_pair(&m, kind, &px, &py, *o_depth, *uv_depth, *horizon)?;
            let status = match &v.status {
                PairStatus::Satisfied { .. } => Status::Satisfied,
                PairStatus::ViolatedUpTo { .. } => Status::Violated,
                PairStatus::Inconclusive { .. } => Status::Inconclusive,
            };
            Ok((
                status,
                json!({ "x": px.to_string(), "y": py.to_string(), "verdict": v }),
            ))
        }
        CheckCmd::Trivial {
            model,
            x,
            y,
            prefix_depth,
            horizon,
            depth,
        } => {
            let m = build_model(*model, *depth)?;
            let (px, py) = (parse_point(x, *model)?, parse_point(y, *model)?);
            let scan = trivial_pair_scan(&m, &px, &py, *prefix_depth, *horizon)?;
            Ok((
                Status::Verified,
                json!({ "x": px.to_string(), "y": py.to_string(), "scan": scan }),
            ))
        }
        CheckCmd::EvpXZero { n, horizon, depth } => {
            let r = check_evp_x_0inf(*n, *horizon, *depth)?;
            let status = if r.violation_count == 0 {
                Status::Satisfied
            } else {
                Status::Violated
            };
            Ok((status, json!({ "evidence": r })))
        }
        CheckCmd::Members { n, count, horizon } => {
            let members = default_choosers(2, *count)
                .into_iter()
                .map(|c| family_member(2, c))
                .collect::<Result<Vec<_>, _>>()?;
            let same = zero_membership_is_member_independent(&members, *n, *horizon)?;
            let data = json!({
                "members": members.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "n": n,
                "horizon": horizon,
                "member_independent": same,
            });
            Ok((
                if same {
                    Status::Verified
                } else {
                    Status::Violated
                },
                data,
            ))
        }
    }
}

fn rational(text: &str) -> Result<Rational, CliError> {
    Ok(parse_rational(text)?)
}

fn interval(cmd: &IntervalCmd) -> Outcome {
    let f = example_es_map();
    match cmd {
        IntervalCmd::Eval { x } => {
            let x = rational(x)?;
            let y = f.eval(&x)?;
            Ok((
                Status::Verified,
                json!({ "x": format_rational(&x), "fx": format_rational(&y) }),
            ))
        }
        IntervalCmd::Orbit { x, steps } => {
            let orbit = f.orbit(&rational(x)?, *steps)?;
            let orbit: Vec<String> = orbit.iter().map(format_rational).collect();
            Ok((Status::Verified, json!({ "orbit": orbit })))
        }
        IntervalCmd::Constant { lo, hi } => {
            let c = f.constant_on(&rational(lo)?, &rational(hi)?);
            let status = if c.is_some() {
                Status::Verified
            } else {
                Status::Violated
            };
            Ok((
                status,
                json!({ "lo": lo, "hi": hi, "constant": c.as_ref().map(format_rational) }),
            ))
        }
        IntervalCmd::Invariant { lo, hi } => {
            let (a, b) = (rational(lo)?, rational(hi)?);
            let (ia, ib) = f.image(&a, &b)?;
            let inv = f.is_invariant(&a, &b)?;
            let data = json!({
                "lo": format_rational(&a),
                "hi": format_rational(&b),
                "image": [format_rational(&ia), format_rational(&ib)],
                "invariant": inv,
            });
            Ok((
                if inv {
                    Status::Verified
                } else {
                    Status::Violated
                },
                data,
            ))
        }
        IntervalCmd::Breakpoints => {
            let rows: Vec<Value> = f
                .breakpoint_values()
                .iter()
                .map(|(x, l, r)| {
                    json!({
                        "x": format_rational(x),
                        "left": format_rational(l),
                        "right": format_rational(r),
                        "continuous": l == r,
                    })
                })
                .collect();
            let ok = f.breakpoint_values().iter().all(|(_, l, r)| l == r);
            Ok((
                if ok {
                    Status::Verified
                } else {
                    Status::Violated
                },
                json!({ "breakpoints": rows }),
            ))
        }
        IntervalCmd::Eventual {
            x,
            eps,
            delta,
            n_max,
            k_max,
            grid,
        } => {
            let grid: BigUint = parse_big(grid)?;
            let w = eventual_sensitivity_witness(
                &f,
                &rational(x)?,
                &rational(eps)?,
                &rational(delta)?,
                *n_max,
                *k_max,
                &grid,
            )?;
            match w {
                Some(w) => {
                    if !check_witness(&f, &w)? {
                        return Err(CliError::Internal("witness failed its recheck".into()));
                    }
                    Ok((Status::Witness, json!({ "witness": w, "rechecked": true })))
                }
                None => Ok((Status::Inconclusive, json!({ "witness": null }))),
            }
        }
        IntervalCmd::Plot { samples } => {
            let pts = f.plot_samples(*samples)?;
            let mut csv = String::from("x,fx\n");
            for (x, y) in &pts {
                csv.push_str(&format!("{},{}\n", format_rational(x), format_rational(y)));
            }
            Ok((
                Status::Verified,
                json!({ "samples": pts.len(), "csv": csv }),
            ))
        }
    }
}
