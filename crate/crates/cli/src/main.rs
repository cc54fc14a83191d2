//! Command-line driver: loads a curve description, runs class-group, zeta,
//! modular-invariant, Drinfeld-module, torsion, and isogeny computations,
//! and emits deterministic text or JSON reports.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 input error,
//! 3 numeric/precision failure.

mod literal;

use clap::{Args, Parser, Subcommand};
use hayes_core::classgroup::class_group;
use hayes_core::curve::{CurveModel, CurveSpec};
use hayes_core::drinfeld::{
    exp_evaluate, sign_normalization_analysis, star_action, DrinfeldModule,
};
use hayes_core::error::Error;
use hayes_core::ideal::FracIdeal;
use hayes_core::laurent::LaurentSeries;
use hayes_core::sign::SignData;
use hayes_core::verify::{suite, Check, VerifyConfig};
use hayes_core::zeta::{j_table, separation_degrees, zeta_partial, JPoint};
use serde::Serialize;
use serde_json::{json, Value};
use std::path::PathBuf;
use std::time::Instant;

#[derive(Parser)]
#[command(name = "hayes", about = "rank-1 Drinfeld module computations over global function fields", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// Curve description file (JSON: p, m, model{kind, h, f}, label)
    #[arg(long)]
    curve: PathBuf,
    /// Certified uniformizer digits
    #[arg(long, default_value_t = 40)]
    prec: i64,
    /// Seed for randomized checks
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Output format
    #[arg(long, default_value = "text", value_parser = ["text", "json"])]
    out: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Class group structure and narrow class number
    Classgroup {
        #[command(flatten)]
        common: Common,
        /// Prime degree bound (default 2g + 2)
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Modular invariant of every ideal class, with separation data
    Jtable {
        #[command(flatten)]
        common: Common,
    },
    /// Exponential coefficients, module coefficients, functional equation,
    /// and sign-normalization analysis for a lattice ideal
    Drinfeld {
        #[command(flatten)]
        common: Common,
        /// Lattice ideal literal (default the unit ideal)
        #[arg(long, default_value = "1")]
        ideal: String,
        /// Optional torsion modulus literal
        #[arg(long)]
        modulus: Option<String>,
    },
    /// Torsion representatives and their exponential values
    Torsion {
        #[command(flatten)]
        common: Common,
        /// Lattice ideal literal
        #[arg(long, default_value = "1")]
        ideal: String,
        /// Modulus literal
        #[arg(long)]
        modulus: String,
    },
    /// Ideal action on a Drinfeld module: isogeny and image module
    Star {
        #[command(flatten)]
        common: Common,
        /// Acting integral ideal literal
        #[arg(long)]
        ideal: String,
        /// Base lattice ideal literal
        #[arg(long, default_value = "1")]
        lattice: String,
    },
    /// Run the named self-check suite
    Verify {
        #[command(flatten)]
        common: Common,
        /// all | zeta | ideal | ore | drinfeld
        #[arg(long, default_value = "all")]
        suite: String,
    },
}

#[derive(Serialize)]
struct Report {
    command: String,
    curve: String,
    label: String,
    prec: i64,
    seed: u64,
    results: Value,
    checks: Vec<Check>,
    timing_ms: u128,
}

fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::SingularCurve(_)
        | Error::SplitInfinity(_)
        | Error::UnsupportedCharacteristic(_)
        | Error::ZeroIdeal
        | Error::ZeroModulus
        | Error::FieldMismatch(_)
        | Error::DomainMismatch(_) => 2,
        _ => 3,
    }
}

fn series_value(s: &LaurentSeries) -> Value {
    json!({
        "series": s.repr(),
        "display": format!("{s}"),
    })
}

fn load_model(common: &Common) -> Result<CurveModel, (i32, String)> {
    if common.prec < 8 {
        return Err((2, format!("precision {} below the minimum of 8", common.prec)));
    }
    let text = std::fs::read_to_string(&common.curve)
        .map_err(|e| (2, format!("cannot read {}: {e}", common.curve.display())))?;
    let spec: CurveSpec =
        serde_json::from_str(&text).map_err(|e| (2, format!("invalid curve file: {e}")))?;
    CurveModel::from_spec(&spec).map_err(|e| (exit_code_for(&e), format!("invalid curve: {e}")))
}

fn run() -> Result<(Report, Common), (i32, String)> {
    let cli = Cli::parse();
    let (common, name) = match &cli.cmd {
        Cmd::Classgroup { common, .. } => (common.clone(), "classgroup"),
        Cmd::Jtable { common } => (common.clone(), "jtable"),
        Cmd::Drinfeld { common, .. } => (common.clone(), "drinfeld"),
        Cmd::Torsion { common, .. } => (common.clone(), "torsion"),
        Cmd::Star { common, .. } => (common.clone(), "star"),
        Cmd::Verify { common, .. } => (common.clone(), "verify"),
    };
    let model = load_model(&common)?;
    let started = Instant::now();
    let sign = SignData::standard(&model);
    let wrap = |e: Error| (exit_code_for(&e), format!("{e}"));
    let mut checks: Vec<Check> = vec![];

    let results: Value = match &cli.cmd {
        Cmd::Classgroup { bound, .. } => {
            let bound = bound.unwrap_or(2 * model.genus() + 2);
            let table = class_group(&model, bound).map_err(wrap)?;
            json!({
                "structure": table.structure_string(),
                "h": table.h(),
                "h_narrow": table.h_narrow(),
                "degree_bound": table.degree_bound(),
                "representatives": table.reps().iter().map(|r| format!("{r}")).collect::<Vec<_>>(),
            })
        }
        Cmd::Jtable { .. } => {
            let bound = 2 * model.genus() + 2;
            let table = class_group(&model, bound).map_err(wrap)?;
            let entries = j_table(&table, &sign, common.prec).map_err(wrap)?;
            let seps = separation_degrees(&entries);
            let mut distinct = true;
            for (_, _, s) in &seps {
                if s.is_none() && entries.len() > 1 {
                    distinct = false;
                }
            }
            if entries.len() > 1 {
                checks.push(Check {
                    name: "jtable/pairwise-distinct".into(),
                    passed: distinct,
                    detail: format!("{} pairs", seps.len()),
                });
            }
            // S-independence at reduced precision
            let s2 = sign.scaled(&[2]);
            let q = model.q() as i64;
            let mut s_indep = true;
            for rep in table.reps() {
                let a = zeta_partial(rep, &sign, q - 1, common.prec.min(20)).map_err(wrap)?;
                let b = zeta_partial(rep, &s2, q - 1, common.prec.min(20)).map_err(wrap)?;
                s_indep &= a.value.agrees_with(&b.value, common.prec.min(20));
            }
            checks.push(Check {
                name: "jtable/s-independence".into(),
                passed: s_indep,
                detail: "zeta(q-1) identical under a scaled representative set".into(),
            });
            json!({
                "entries": entries.iter().map(|e| {
                    let j = match &e.value.j {
                        JPoint::Finite(s) => series_value(s),
                        JPoint::Infinite { certified } =>
                            json!({"infinite": true, "certified_resolution": certified}),
                    };
                    json!({
                        "class": e.class_index,
                        "representative": format!("{}", table.rep(e.class_index)),
                        "J": series_value(&e.value.j_big),
                        "j": j,
                        "digits": e.value.digits,
                    })
                }).collect::<Vec<_>>(),
                "separations": seps.iter().map(|(i, j, s)| json!({
                    "pair": [i, j],
                    "separation_exponent": s,
                })).collect::<Vec<_>>(),
            })
        }
        Cmd::Drinfeld { ideal, modulus, .. } => {
            let lattice = literal::parse_ideal(&model, ideal).map_err(wrap)?;
            let module =
                DrinfeldModule::new(&lattice, &sign, 3, common.prec).map_err(wrap)?;
            let mut gens = vec![];
            for (a, rho) in module.gens() {
                let fe = module.verify_functional_equation(a, 3).map_err(wrap)?;
                checks.push(Check {
                    name: format!("drinfeld/functional-equation[{a}]"),
                    passed: fe.pass,
                    detail: format!("checked through z^(q^{})", 3),
                });
                gens.push(json!({
                    "generator": format!("{a}"),
                    "coefficients": rho.coeffs().iter().enumerate().map(|(i, c)| json!({
                        "tau_power": i,
                        "xi_weight": hayes_core::drinfeld::coefficient_weight(model.q(), i as u32),
                        "value": series_value(c),
                    })).collect::<Vec<_>>(),
                }));
            }
            let normalization = if model.d_inf() == 1 {
                let rep = sign_normalization_analysis(&module).map_err(wrap)?;
                checks.push(Check {
                    name: "drinfeld/sign-normalization".into(),
                    passed: rep.solvable && rep.consistent,
                    detail: rep
                        .obstruction
                        .clone()
                        .unwrap_or_else(|| "w solved in the completion".into()),
                });
                json!({
                    "solvable": rep.solvable,
                    "consistent": rep.consistent,
                    "w": rep.w.as_ref().map(series_value),
                    "obstruction": rep.obstruction,
                })
            } else {
                json!({"unsupported": "d_inf = 2 sign normalization is not determined"})
            };
            let torsion = match modulus {
                None => Value::Null,
                Some(m_lit) => {
                    let modulus = literal::parse_ideal(&model, m_lit).map_err(wrap)?;
                    torsion_results(&module, &lattice, &modulus, common.prec, &mut checks)
                        .map_err(wrap)?
                }
            };
            json!({
                "lattice": format!("{lattice}"),
                "exponential_coefficients": module.exp_coeffs().iter().enumerate().map(|(n, c)| json!({
                    "n": n,
                    "xi_weight": c.weight,
                    "value": series_value(&c.value),
                })).collect::<Vec<_>>(),
                "module_generators": gens,
                "normalization": normalization,
                "torsion": torsion,
            })
        }
        Cmd::Torsion { ideal, modulus, .. } => {
            let lattice = literal::parse_ideal(&model, ideal).map_err(wrap)?;
            let module =
                DrinfeldModule::new(&lattice, &sign, 3, common.prec.min(24)).map_err(wrap)?;
            let modulus = literal::parse_ideal(&model, modulus).map_err(wrap)?;
            torsion_results(&module, &lattice, &modulus, common.prec, &mut checks)
                .map_err(wrap)?
        }
        Cmd::Star { ideal, lattice, .. } => {
            let acting = literal::parse_ideal(&model, ideal).map_err(wrap)?;
            let base = literal::parse_ideal(&model, lattice).map_err(wrap)?;
            let module =
                DrinfeldModule::new(&base, &sign, 3, common.prec.min(24)).map_err(wrap)?;
            let act = star_action(&module, &acting).map_err(wrap)?;
            checks.push(Check {
                name: "star/intertwining".into(),
                passed: true,
                detail: format!(
                    "rho_b rho_a = psi_a rho_b certified to precision floor {}",
                    act.remainder_floor
                ),
            });
            checks.push(Check {
                name: "star/degree-law".into(),
                passed: act.iso.deg() == acting.norm_degree(),
                detail: format!(
                    "deg iso = {}, deg norm = {}",
                    act.iso.deg(),
                    acting.norm_degree()
                ),
            });
            let class_info = if model.is_rational() {
                Value::Null
            } else {
                let table = class_group(&model, 2 * model.genus() + 2).map_err(wrap)?;
                let base_class = table.class_of(&base);
                let image_ideal = acting.inverse().mul(&base);
                let image_class = table.class_of(&image_ideal);
                let expected = table.mul_class(base_class, table.inv_class(table.class_of(&acting)));
                checks.push(Check {
                    name: "star/class-permutation".into(),
                    passed: image_class == expected,
                    detail: format!(
                        "[b^-1 a] = class {image_class}, inverse-multiplication gives {expected}"
                    ),
                });
                json!({
                    "base_class": base_class,
                    "image_class": image_class,
                })
            };
            json!({
                "acting_ideal": format!("{acting}"),
                "base_lattice": format!("{base}"),
                "isogeny": act.iso.coeffs().iter().enumerate().map(|(i, c)| json!({
                    "tau_power": i,
                    "value": series_value(c),
                })).collect::<Vec<_>>(),
                "image_generators": act.image_gens.iter().map(|(a, psi)| json!({
                    "generator": format!("{a}"),
                    "coefficients": psi.coeffs().iter().enumerate().map(|(i, c)| json!({
                        "tau_power": i,
                        "value": series_value(c),
                    })).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "remainder_floor": act.remainder_floor,
                "classes": class_info,
            })
        }
        Cmd::Verify { suite: which, .. } => {
            let cfg = VerifyConfig {
                seed: common.seed,
                prec: common.prec,
            };
            let cs = suite(which, cfg).map_err(wrap)?;
            checks.extend(cs);
            json!({ "suite": which })
        }
    };

    let report = Report {
        command: name.into(),
        curve: format!("{model}"),
        label: model.label().to_string(),
        prec: common.prec,
        seed: common.seed,
        results,
        checks,
        timing_ms: started.elapsed().as_millis(),
    };
    Ok((report, common))
}

fn torsion_results(
    module: &DrinfeldModule,
    lattice: &FracIdeal,
    modulus: &FracIdeal,
    prec: i64,
    checks: &mut Vec<Check>,
) -> Result<Value, Error> {
    let reps = lattice.torsion_representatives(modulus)?;
    let gen = modulus
        .module_basis()
        .into_iter()
        .next()
        .expect("nonzero ideal");
    let rho_gen = module.rho(&gen)?;
    let mut rows = vec![];
    let mut annihilated = true;
    let mut kernel_exact = true;
    for t in &reps {
        let v = exp_evaluate(lattice, t, prec.min(24))?;
        if t.is_zero() || lattice.contains(t) {
            kernel_exact &= v.is_zero();
        } else {
            kernel_exact &= !v.is_zero();
            annihilated &= rho_gen.eval(&v).is_zero();
        }
        rows.push(json!({
            "representative": format!("{t}"),
            "value": series_value(&v),
        }));
    }
    checks.push(Check {
        name: "torsion/kernel-exact".into(),
        passed: kernel_exact,
        detail: "e vanishes exactly on lattice members".into(),
    });
    checks.push(Check {
        name: "torsion/annihilation".into(),
        passed: annihilated,
        detail: format!("rho at {gen} kills every torsion value to precision"),
    });
    Ok(json!({
        "modulus": format!("{modulus}"),
        "count": reps.len(),
        "values": rows,
    }))
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_value(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", render_scalar(val))),
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}- [{i}]\n"));
                        render_value(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", render_scalar(item))),
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", render_scalar(other))),
    }
}

fn render_scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn main() {
    match run() {
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(code);
        }
        Ok((report, common)) => {
            let any_failed = report.checks.iter().any(|c| !c.passed);
            if common.out == "json" {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report).expect("serializable report")
                );
            } else {
                let mut out = String::new();
                out.push_str(&format!(
                    "command: {}\ncurve: {} ({})\nprec: {}  seed: {}\n",
                    report.command, report.curve, report.label, report.prec, report.seed
                ));
                out.push_str("results:\n");
                render_value(&report.results, 1, &mut out);
                if !report.checks.is_empty() {
                    out.push_str("checks:\n");
                    for c in &report.checks {
                        out.push_str(&format!(
                            "  [{}] {} - {}\n",
                            if c.passed { "pass" } else { "FAIL" },
                            c.name,
                            c.detail
                        ));
                    }
                }
                out.push_str(&format!("timing: {} ms\n", report.timing_ms));
                print!("{out}");
            }
            std::process::exit(if any_failed { 1 } else { 0 });
        }
    }
}
