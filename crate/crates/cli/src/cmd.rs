//! Implementations of the subcommands: each returns the JSON payload
//! for stdout, a one-line summary for stderr, and the process exit code
//! (0 all checks pass, 1 a property violated with witnesses attached,
//! 2 input or format errors — the latter surfaced as `Err`).

use std::collections::HashSet;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};

use binop_core::action::{BinaryActionTable, OrdinaryActionTable};
use binop_core::affine::{
    self, check_action_axioms, check_singleton_invariance, check_translation_equivariance,
    demo_union_not_invariant, NumericReport, RealVector,
};
use binop_core::binop::{brute_enumerate_invertible, enumerate_h2, BinOpTable, Carrier};
use binop_core::group::{h2_group, Fingerprint};
use binop_core::json::{BinaryActionWire, BinOpTableWire, SubsetWire};
use binop_core::orbits::{
    self, check_diagonal_invariance, distributivity_witness, enumerate_invariant_subsets,
    g_xx_set, g_xy_set, is_distributive, is_invariant, orbit,
};

use crate::groups::{parse_group, SMALL_GROUP_CATALOG};

/// What a subcommand hands back to `main` for printing and exiting.
pub struct Outcome {
    pub payload: Value,
    pub summary: String,
    pub exit_code: i32,
}

impl Outcome {
    fn pass(payload: Value, summary: impl Into<String>) -> Self {
        Outcome {
            payload,
            summary: summary.into(),
            exit_code: 0,
        }
    }

    fn violation(payload: Value, summary: impl Into<String>) -> Self {
        Outcome {
            payload,
            summary: summary.into(),
            exit_code: 1,
        }
    }
}

fn to_value(value: impl Serialize) -> Value {
    serde_json::to_value(value).expect("payload types serialize")
}

/// `BINOP_MAX_N` may lower built-in capacity caps, never raise them.
fn effective_cap(builtin: usize) -> usize {
    match std::env::var("BINOP_MAX_N") {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(env_cap) => builtin.min(env_cap),
            Err(_) => builtin,
        },
        Err(_) => builtin,
    }
}

fn check_cap(what: &str, n: usize, builtin: usize) -> Result<()> {
    let cap = effective_cap(builtin);
    if n > cap {
        bail!("{what} supports n <= {cap}, got {n}");
    }
    Ok(())
}

fn load_action(path: &Path) -> Result<BinaryActionTable> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read {}", path.display()))?;
    let wire: BinaryActionWire = serde_json::from_str(&text)
        .with_context(|| format!("{} is not a binary-action JSON document", path.display()))?;
    wire.into_model()
        .with_context(|| format!("{} has inconsistent shape", path.display()))
}

pub enum EnumerateMode {
    Fast,
    Brute,
}

pub fn enumerate(n: usize, mode: EnumerateMode, list: bool, cross_check: bool) -> Result<Outcome> {
    let carrier = Carrier::new(n)?;
    let (mode_name, tables): (&str, Vec<BinOpTable>) = match mode {
        EnumerateMode::Fast => {
            check_cap("fast enumeration", n, binop_core::binop::ENUMERATE_MAX_N)?;
            ("fast", enumerate_h2(carrier)?.collect())
        }
        EnumerateMode::Brute => {
            check_cap("brute enumeration", n, binop_core::binop::BRUTE_MAX_N)?;
            ("brute", brute_enumerate_invertible(carrier)?.collect())
        }
    };

    let equal = if cross_check {
        check_cap("cross-check", n, binop_core::binop::BRUTE_MAX_N)?;
        let fast: HashSet<BinOpTable> = enumerate_h2(carrier)?.collect();
        let brute: HashSet<BinOpTable> = brute_enumerate_invertible(carrier)?.collect();
        Some(fast == brute)
    } else {
        None
    };

    let mut payload = json!({
        "n": n,
        "mode": mode_name,
        "count": tables.len(),
    });
    if let Some(equal) = equal {
        payload["equal"] = json!(equal);
    }
    if list {
        payload["tables"] = to_value(
            tables
                .iter()
                .map(BinOpTableWire::from_model)
                .collect::<Vec<_>>(),
        );
    }

    let mut summary = format!(
        "{} invertible tables on {n} point(s) ({mode_name})",
        tables.len()
    );
    if let Some(equal) = equal {
        summary.push_str(if equal {
            "; cross-check: enumerations agree"
        } else {
            "; cross-check: ENUMERATIONS DISAGREE"
        });
        if !equal {
            return Ok(Outcome::violation(payload, summary));
        }
    }
    Ok(Outcome::pass(payload, summary))
}

pub fn cayley(n: usize) -> Result<Outcome> {
    check_cap("Cayley table", n, binop_core::binop::ENUMERATE_MAX_N)?;
    let (group, _) = h2_group(Carrier::new(n)?)?;
    let csv = group
        .mul_rows()
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join("\n");
    let fingerprint = group.structure_fingerprint();
    let summary = format!(
        "Cayley table of the {} invertible tables on {n} point(s): {}",
        group.order(),
        describe_fingerprint(&fingerprint)
    );
    let payload = json!({
        "n": n,
        "order": group.order(),
        "fingerprint": to_value(&fingerprint),
        "csv": csv,
    });
    Ok(Outcome::pass(payload, summary))
}

fn describe_fingerprint(f: &Fingerprint) -> String {
    format!(
        "order {}, {}, element orders {:?}",
        f.order,
        if f.abelian { "abelian" } else { "non-abelian" },
        f.element_orders
    )
}

pub fn gen_conjugation(group_name: &str) -> Result<Outcome> {
    let group = parse_group(group_name)?;
    let order = group.order();
    let action = BinaryActionTable::conjugation(group);
    let payload = to_value(BinaryActionWire::from_model(&action));
    Ok(Outcome::pass(
        payload,
        format!("conjugation action of {group_name} on its {order} elements"),
    ))
}

pub enum EmbedKind {
    Trivial,
    Regular,
    Natural,
}

pub fn gen_embedding(group_name: &str, kind: EmbedKind, points: Option<usize>) -> Result<Outcome> {
    let group = parse_group(group_name)?;
    let (theta, description) = match kind {
        EmbedKind::Trivial => {
            let n = points.unwrap_or(group.order());
            (
                OrdinaryActionTable::trivial(group, Carrier::new(n)?),
                format!("trivial action of {group_name} on {n} point(s)"),
            )
        }
        EmbedKind::Regular => (
            OrdinaryActionTable::left_translation(group),
            format!("left translation of {group_name} on itself"),
        ),
        EmbedKind::Natural => {
            let letters = group_name
                .trim()
                .strip_prefix(['S', 's'])
                .and_then(|rest| rest.parse::<usize>().ok())
                .context("--action natural needs a symmetric group S<k>")?;
            (
                OrdinaryActionTable::symmetric_natural(letters)?,
                format!("natural action of {group_name} on {letters} letters"),
            )
        }
    };
    let action = BinaryActionTable::from_ordinary(&theta);
    let payload = to_value(BinaryActionWire::from_model(&action));
    Ok(Outcome::pass(
        payload,
        format!("{description}, embedded as a binary action"),
    ))
}

pub fn check_action(path: &Path) -> Result<Outcome> {
    let action = load_action(path)?;
    let mut witnesses: Vec<Value> = Vec::new();

    let violation = action.violation();
    if let Some(v) = violation {
        witnesses.push(to_value(v));
    }
    let homomorphism = action.is_homomorphism_into_h2();
    let mut induced_valid = true;
    for t in action.carrier().points() {
        if let Some(v) = action.induced(t)?.violation() {
            induced_valid = false;
            witnesses.push(json!({ "kind": "induced", "t": t, "violation": to_value(v) }));
        }
    }

    let valid = violation.is_none();
    let payload = json!({
        "binary_action": valid,
        "homomorphism": homomorphism,
        "induced_valid": induced_valid,
        "witnesses": witnesses,
    });
    if valid && homomorphism && induced_valid {
        Ok(Outcome::pass(
            payload,
            "binary action valid: axioms, homomorphism law, and all induced actions pass",
        ))
    } else {
        Ok(Outcome::violation(
            payload,
            "NOT a binary action: see witnesses",
        ))
    }
}

pub fn orbit_report(path: &Path, x: usize, y: Option<usize>) -> Result<Outcome> {
    let action = load_action(path)?;
    let orb = orbit(&action, x)?;
    let diag = g_xx_set(&action, x)?;
    let diag_invariant = is_invariant(&action, &diag)?;
    let distributive = is_distributive(&action);

    let mut payload = json!({
        "x": x,
        "orbit": to_value(SubsetWire::from_model(&orb)),
        "g_xx": to_value(SubsetWire::from_model(&diag)),
        "g_xx_invariant": diag_invariant,
        "distributive": distributive,
    });
    if let Some(y) = y {
        // The two-argument set: computed and reported, nothing asserted.
        let pair_set = g_xy_set(&action, x, y)?;
        payload["g_xy"] = json!({
            "y": y,
            "members": pair_set.members(),
            "invariant": is_invariant(&action, &pair_set)?,
        });
    }
    let summary = format!(
        "orbit of {x} has {} point(s); G(x,x) has {} and is{} invariant; action is{} distributive",
        orb.len(),
        diag.len(),
        if diag_invariant { "" } else { " not" },
        if distributive { "" } else { " not" },
    );
    Ok(Outcome::pass(payload, summary))
}

pub fn invariants_of_file(path: &Path) -> Result<Outcome> {
    let action = load_action(path)?;
    check_cap(
        "invariant-subset enumeration",
        action.carrier().n(),
        orbits::INVARIANT_ENUM_MAX_N,
    )?;
    let subsets = enumerate_invariant_subsets(&action)?;
    let payload = json!({
        "n": action.carrier().n(),
        "count": subsets.len(),
        "subsets": to_value(subsets.iter().map(SubsetWire::from_model).collect::<Vec<_>>()),
    });
    let summary = format!(
        "{} invariant subset(s) on {} point(s)",
        subsets.len(),
        action.carrier().n()
    );
    Ok(Outcome::pass(payload, summary))
}

/// Survey data over conjugation actions of all small groups: is the
/// union of invariant subsets invariant, and is every diagonal set
/// `G(x, x)` invariant? Observations only; nothing is asserted.
pub fn invariants_sweep(max_order: usize) -> Result<Outcome> {
    let mut entries = Vec::new();
    for name in SMALL_GROUP_CATALOG {
        let group = parse_group(name)?;
        if group.order() > max_order {
            continue;
        }
        let action = BinaryActionTable::conjugation(group);
        let invariant = enumerate_invariant_subsets(&action)?;

        let mut union_counterexample = None;
        'pairs: for a in &invariant {
            for b in &invariant {
                let join = a.union(b)?;
                if !is_invariant(&action, &join)? {
                    union_counterexample = Some(json!({
                        "a": a.members(),
                        "b": b.members(),
                        "union": join.members(),
                    }));
                    break 'pairs;
                }
            }
        }

        let diag_invariant_at: Vec<usize> = action
            .carrier()
            .points()
            .filter(|&x| {
                let diag = g_xx_set(&action, x).expect("x in carrier");
                is_invariant(&action, &diag).expect("same carrier")
            })
            .collect();

        entries.push(json!({
            "group": name,
            "order": action.group().order(),
            "distributive": is_distributive(&action),
            "invariant_subsets": invariant.len(),
            "unions_stay_invariant": union_counterexample.is_none(),
            "union_counterexample": union_counterexample,
            "g_xx_invariant_at": diag_invariant_at,
        }));
    }
    let summary = format!(
        "surveyed conjugation actions of {} group(s) of order <= {max_order}",
        entries.len()
    );
    Ok(Outcome::pass(json!({ "sweep": entries }), summary))
}

pub fn distributive_report(path: &Path) -> Result<Outcome> {
    let action = load_action(path)?;
    match distributivity_witness(&action) {
        Some((g, h, x, x1, x2)) => {
            let payload = json!({
                "distributive": false,
                "witness": { "g": g, "h": h, "x": x, "x1": x1, "x2": x2 },
            });
            Ok(Outcome::violation(
                payload,
                format!("not distributive: witness (g={g}, h={h}, x={x}, x'={x1}, x''={x2})"),
            ))
        }
        None => {
            let report = check_diagonal_invariance(&action)?;
            let passed = report.passed();
            let payload = json!({
                "distributive": true,
                "witness": Value::Null,
                "diagonal_invariance": to_value(&report),
            });
            if passed {
                Ok(Outcome::pass(
                    payload,
                    format!(
                        "distributive; G(x,x) invariant at all {} point(s)",
                        report.checked
                    ),
                ))
            } else {
                Ok(Outcome::violation(
                    payload,
                    "distributive, but a diagonal set failed invariance (see report)",
                ))
            }
        }
    }
}

fn parse_vector(raw: &str, dim: usize, name: &str) -> Result<RealVector> {
    let entries = raw
        .split(',')
        .map(|tok| tok.trim().parse::<f64>())
        .collect::<std::result::Result<Vec<f64>, _>>()
        .with_context(|| format!("--{name} must be comma-separated numbers, got {raw:?}"))?;
    if entries.len() != dim {
        bail!("--{name} has {} entries, expected {dim}", entries.len());
    }
    Ok(RealVector::new(entries)?)
}

fn numeric_outcome(kind: &str, report: NumericReport) -> Outcome {
    let summary = format!(
        "{kind}: {} check(s), max residual {:.3e} (tol {:.1e}), {} failure(s)",
        report.checks,
        report.max_residual,
        report.tol,
        report.failures.len()
    );
    let payload = to_value(&report);
    if report.passed() {
        Outcome::pass(payload, summary)
    } else {
        Outcome::violation(payload, summary)
    }
}

pub fn numeric_axioms(dim: usize, samples: usize, seed: u64, tol: f64) -> Result<Outcome> {
    Ok(numeric_outcome(
        "action axioms",
        check_action_axioms(samples, dim, seed, tol)?,
    ))
}

pub fn numeric_singleton(dim: usize, samples: usize, seed: u64, tol: f64) -> Result<Outcome> {
    Ok(numeric_outcome(
        "singleton invariance",
        check_singleton_invariance(samples, dim, seed, tol)?,
    ))
}

pub fn numeric_equivariance(
    dim: usize,
    samples: usize,
    seed: u64,
    tol: f64,
    base: Option<&str>,
) -> Result<Outcome> {
    let base = match base {
        Some(raw) => parse_vector(raw, dim, "base")?,
        None => {
            // No base given: draw one deterministically from the seed
            // (offset so it differs from the sample stream).
            affine::seeded_vector(dim, seed ^ 0x9e37_79b9_7f4a_7c15)
        }
    };
    Ok(numeric_outcome(
        "translation equivariance",
        check_translation_equivariance(&base, samples, seed, tol)?,
    ))
}

pub fn numeric_union_demo(dim: usize, x: Option<&str>, y: Option<&str>) -> Result<Outcome> {
    let x = match x {
        Some(raw) => parse_vector(raw, dim, "x")?,
        None => RealVector::zeros(dim)?,
    };
    let y = match y {
        Some(raw) => parse_vector(raw, dim, "y")?,
        None => {
            let mut entries = vec![0.0; dim];
            entries[0] = 1.0;
            RealVector::new(entries)?
        }
    };
    let report = demo_union_not_invariant(&x, &y)?;
    let found = report.found();
    let count = report.witnesses.len();
    let payload = to_value(&report);
    if found {
        Ok(Outcome::pass(
            payload,
            format!("two-point set is not invariant: {count} matrix witness(es) move it"),
        ))
    } else {
        Ok(Outcome::violation(
            payload,
            "no witness found (unexpected for distinct points)",
        ))
    }
}

/// Default tolerance for the residual checks.
pub const DEFAULT_TOL: f64 = affine::DEFAULT_TOL;
/// Stricter default for singleton invariance, which is nearly exact.
pub const SINGLETON_TOL: f64 = 1e-12;
/// Default seed recorded in every numeric report.
pub const DEFAULT_SEED: u64 = affine::DEFAULT_SEED;
