//! One function per CLI command. Every command renders either a JSON
//! document or a plain table; output is byte-deterministic for identical
//! inputs (keys sorted, orderings sorted by root).

use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use wittq_core::json::{to_json_string, ElementJson, MixedJson, PolarizationJson, QuatJson};
use wittq_core::mixed::MixedElement;
use wittq_core::numberfield::{NumberField, Ordering};
use wittq_core::parse::{
    format_rational, parse_form, parse_polynomial, parse_pure_quaternion, parse_quaternion,
    parse_symbol_slots,
};
use wittq_core::quat::QuaternionAlgebra;
use wittq_core::signpol::{
    find_reference_with_budget, partition_orderings, SignatureContext, DEFAULT_SEARCH_BUDGET,
};
use wittq_core::witt::{witt_equal_rational, QuadraticForm};

use crate::workspace::Workspace;
use crate::{CliError, OutputMode};

fn field_from_poly(poly: &str) -> Result<Arc<NumberField>, CliError> {
    Ok(NumberField::new(parse_polynomial(poly)?)?)
}

fn algebra_from_args(
    poly: &str,
    symbol: &str,
) -> Result<Arc<QuaternionAlgebra>, CliError> {
    let field = field_from_poly(poly)?;
    let (a, b) = parse_symbol_slots(symbol, &field)?;
    Ok(QuaternionAlgebra::new(&field, a, b)?)
}

fn ordering_value(p: &Ordering) -> Value {
    let (l, r) = p.interval();
    json!({
        "index": p.index(),
        "interval": [format_rational(l), format_rational(r)],
    })
}

fn ordering_cells(orderings: &[Ordering]) -> Vec<Value> {
    orderings.iter().map(ordering_value).collect()
}

fn emit(mode: OutputMode, value: &Value, table: String) {
    if mode.is_json() {
        println!("{}", to_json_string(value));
    } else {
        println!("{table}");
    }
}

pub fn orderings(poly: &str, mode: OutputMode) -> Result<(), CliError> {
    let field = field_from_poly(poly)?;
    let ords: Vec<Ordering> = field.real_orderings().iter().map(|p| p.refined(4)).collect();
    let value = json!({
        "poly": poly,
        "count": ords.len(),
        "orderings": ordering_cells(&ords),
    });
    let mut table = format!("{} orderings of Q[t]/({})\n", ords.len(), field.minimal_polynomial());
    for p in &ords {
        let (l, r) = p.interval();
        table.push_str(&format!(
            "  P{}: root in ({}, {})\n",
            p.index(),
            format_rational(l),
            format_rational(r)
        ));
    }
    emit(mode, &value, table.trim_end().to_string());
    Ok(())
}

pub fn partition(poly: &str, symbol: &str, mode: OutputMode) -> Result<(), CliError> {
    let algebra = algebra_from_args(poly, symbol)?;
    let part = partition_orderings(&algebra)?;
    let plus: Vec<usize> = part.x_plus().iter().map(|p| p.index()).collect();
    let minus: Vec<usize> = part.x_minus().iter().map(|p| p.index()).collect();
    let value = json!({
        "symbol": symbol,
        "x_plus": plus,
        "x_minus": minus,
    });
    let table = format!(
        "X_1 (split): {:?}\nX_-1 (nonsplit): {:?}",
        plus, minus
    );
    emit(mode, &value, table);
    Ok(())
}

pub fn witt_sig(poly: &str, form: &str, mode: OutputMode) -> Result<(), CliError> {
    let field = field_from_poly(poly)?;
    let q = parse_form(form, &field)?;
    let ords = field.real_orderings();
    let mut sigs = Vec::new();
    for p in &ords {
        sigs.push(q.signature(p)?);
    }
    let value = json!({
        "form": form,
        "orderings": ordering_cells(&ords),
        "signatures": sigs,
    });
    let cells: Vec<String> = sigs.iter().map(|s| s.to_string()).collect();
    emit(
        mode,
        &value,
        format!("sig <{}> = [{}]", form, cells.join(", ")),
    );
    Ok(())
}

pub fn witt_equal(form: &str, form2: &str, mode: OutputMode) -> Result<(), CliError> {
    let field = NumberField::rationals();
    let q1 = parse_form(form, &field)?;
    let q2 = parse_form(form2, &field)?;
    let equal = witt_equal_rational(&q1, &q2)?;
    let value = json!({ "equal": equal });
    emit(mode, &value, format!("equal: {equal}"));
    Ok(())
}

pub fn witt_pfister(poly: &str, slots: &str, mode: OutputMode) -> Result<(), CliError> {
    let field = field_from_poly(poly)?;
    let slot_elems = parse_form(slots, &field)?;
    let pf = QuadraticForm::pfister(&field, slot_elems.entries())?;
    let entries: Vec<String> = pf.entries().iter().map(|e| e.to_string()).collect();
    let value = json!({
        "slots": slots,
        "entries": pf.entries().iter().map(ElementJson::from_element).collect::<Vec<_>>(),
        "dim": pf.dim(),
    });
    emit(mode, &value, format!("<<{}>> = <{}>", slots, entries.join(", ")));
    Ok(())
}

pub fn quat_mul(
    poly: &str,
    symbol: &str,
    x: &str,
    y: &str,
    mode: OutputMode,
) -> Result<(), CliError> {
    let algebra = algebra_from_args(poly, symbol)?;
    let xq = parse_quaternion(x, &algebra)?;
    let yq = parse_quaternion(y, &algebra)?;
    let prod = xq.mul(&yq)?;
    let value = json!({
        "product": QuatJson::from_quaternion(&prod),
        "trd": ElementJson::from_element(&prod.trd()),
        "nrd": ElementJson::from_element(&prod.nrd()),
    });
    emit(mode, &value, format!("x*y = {prod:?}"));
    Ok(())
}

pub fn quat_slot(poly: &str, symbol: &str, z: &str, mode: OutputMode) -> Result<(), CliError> {
    let algebra = algebra_from_args(poly, symbol)?;
    let zq = parse_pure_quaternion(z, &algebra)?;
    let square = zq.square();
    let slot = zq.symbol_slot()?;
    let value = json!({
        "z_squared": ElementJson::from_element(&square),
        "slot": ElementJson::from_element(&slot),
    });
    emit(
        mode,
        &value,
        format!("z^2 = {square}, c = {slot}; (z^2, c) represents [Q]"),
    );
    Ok(())
}

pub fn mixed_mul(workspace: &Path, lhs: &str, rhs: &str, mode: OutputMode) -> Result<(), CliError> {
    let ws = Workspace::load(workspace)?;
    let x = ws.form(lhs)?;
    let y = ws.form(rhs)?;
    let prod = x.mul(y)?;
    let value = json!({
        "lhs": lhs,
        "rhs": rhs,
        "product": MixedJson::from_mixed(&prod),
        "rdim2": prod.rdim2(),
    });
    emit(mode, &value, format!("{lhs} * {rhs} = {prod:?}"));
    Ok(())
}

pub fn mixed_rdim2(workspace: &Path, form: &str, mode: OutputMode) -> Result<(), CliError> {
    let ws = Workspace::load(workspace)?;
    let x = ws.form(form)?;
    let value = json!({ "form": form, "rdim2": x.rdim2() });
    emit(mode, &value, format!("rdim2({form}) = {}", x.rdim2()));
    Ok(())
}

fn batched_pairs(
    ctx: &SignatureContext,
    elements: &[MixedElement],
) -> Result<Vec<Vec<wittq_core::signpol::SignaturePair>>, CliError> {
    #[cfg(feature = "parallel")]
    {
        Ok(wittq_core::batch::par_signature_table(ctx, elements)?)
    }
    #[cfg(not(feature = "parallel"))]
    {
        Ok(wittq_core::batch::signature_table(ctx, elements)?)
    }
}

pub fn sign_table(
    workspace: &Path,
    forms: &str,
    pol: &str,
    budget: Option<usize>,
    mode: OutputMode,
) -> Result<(), CliError> {
    let ws = Workspace::load(workspace)?;
    let algebra = ws.algebra()?;
    let names: Vec<&str> = forms.split(',').map(|s| s.trim()).collect();
    let elements: Vec<MixedElement> = names
        .iter()
        .map(|n| ws.form(n).cloned())
        .collect::<Result<_, _>>()?;
    let budget = budget.unwrap_or(DEFAULT_SEARCH_BUDGET);

    let mut ctx = SignatureContext::new(algebra)?;
    if let Some(refname) = pol.strip_prefix("ref:") {
        let reference = ws.form(refname)?;
        if reference.skew().is_empty() {
            return Err(CliError::Validation(format!(
                "reference form '{refname}' has an empty skew part"
            )));
        }
        ctx = ctx.with_reference(reference.skew().clone())?;
    } else if elements.iter().any(|x| !x.skew().is_empty()) {
        ctx.ensure_reference(budget)?;
    }
    let orderings = ordering_cells(ctx.orderings());

    let (rows_json, table) = if pol == "pair" {
        let table_pairs = batched_pairs(&ctx, &elements)?;
        let mut rows = Vec::new();
        let mut text = String::new();
        for (name, row) in names.iter().zip(&table_pairs) {
            let pairs: Vec<Value> = row.iter().map(|pr| json!([pr.plus, pr.minus])).collect();
            rows.push(json!({ "form": name, "pairs": pairs }));
            let cells: Vec<String> = row
                .iter()
                .map(|pr| format!("({},{})", pr.plus, pr.minus))
                .collect();
            text.push_str(&format!("{name}: {}\n", cells.join("  ")));
        }
        (rows, text)
    } else {
        let polarization = if let Some(refname) = pol.strip_prefix("ref:") {
            // the reference's own labels: +1 everywhere in the default
            // labeling it induces
            let _ = refname;
            wittq_core::signpol::PolarizationMap::constant(
                (0..ctx.orderings().len()).collect::<Vec<_>>(),
                1,
            )
        } else {
            ws.polarization(pol)?.clone()
        };
        let mut rows = Vec::new();
        let mut text = String::new();
        for (name, x) in names.iter().zip(&elements) {
            let tot = ctx.total_signature(x, &polarization)?;
            let values: Vec<i64> = tot.values().copied().collect();
            rows.push(json!({ "form": name, "values": values }));
            let cells: Vec<String> = values.iter().map(|v| v.to_string()).collect();
            text.push_str(&format!("{name}: {}\n", cells.join("  ")));
        }
        (rows, text)
    };
    let mut value = json!({
        "orderings": orderings,
        "polarization": pol,
        "rows": rows_json,
    });
    // single-form queries additionally expose the flat table atom
    let single = match value["rows"].as_array().unwrap().as_slice() {
        [row] => Some(row.clone()),
        _ => None,
    };
    if let Some(row) = single {
        for key in ["pairs", "values"] {
            if let Some(cells) = row.get(key) {
                value[key] = cells.clone();
            }
        }
    }
    emit(mode, &value, table.trim_end().to_string());
    Ok(())
}

pub fn reference_find(
    poly: &str,
    symbol: &str,
    budget: Option<usize>,
    mode: OutputMode,
) -> Result<(), CliError> {
    let algebra = algebra_from_args(poly, symbol)?;
    let budget = budget.unwrap_or(DEFAULT_SEARCH_BUDGET);
    let found = find_reference_with_budget(&algebra, budget)?;
    let value = json!({
        "entries": found
            .form
            .entries()
            .iter()
            .map(QuatJson::from_pure)
            .collect::<Vec<_>>(),
        "nonzero_set": found.nonzero_set.iter().collect::<Vec<_>>(),
    });
    let table = if found.form.is_empty() {
        "empty reference: no split orderings".to_string()
    } else {
        format!(
            "reference {:?} with square-signature 4 on {:?}",
            found.form, found.nonzero_set
        )
    };
    emit(mode, &value, table);
    Ok(())
}

pub fn polarize_principal(
    workspace: &Path,
    form: &str,
    budget: Option<usize>,
    mode: OutputMode,
) -> Result<(), CliError> {
    let ws = Workspace::load(workspace)?;
    let algebra = ws.algebra()?;
    let x = ws.form(form)?;
    let mut ctx = SignatureContext::new(algebra)?;
    ctx.ensure_reference(budget.unwrap_or(DEFAULT_SEARCH_BUDGET))?;
    let pol = ctx.principal_polarization(x)?;
    let value = json!({
        "form": form,
        "polarization": PolarizationJson::from_polarization(&pol),
    });
    let cells: Vec<String> = pol
        .labels()
        .iter()
        .map(|(i, v)| format!("P{i} -> {v:+}"))
        .collect();
    emit(mode, &value, format!("s_{form}: {}", cells.join(", ")));
    Ok(())
}

pub fn spectrum(workspace: &Path, primes: &str, mode: OutputMode) -> Result<(), CliError> {
    let ws = Workspace::load(workspace)?;
    let algebra = ws.algebra()?;
    let ctx = SignatureContext::new(algebra)?;
    let parsed: Vec<u64> = if primes.trim().is_empty() {
        Vec::new()
    } else {
        primes
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u64>()
                    .map_err(|_| CliError::Parse(format!("bad prime '{p}'")))
            })
            .collect::<Result<_, _>>()?
    };
    let report = ctx.spectrum_report(&parsed)?;
    let mut value = serde_json::to_value(&report)
        .map_err(|e| CliError::Validation(e.to_string()))?;
    let poly_text = ws.field.minimal_polynomial().to_string();
    value["field"] = Value::String(poly_text.clone());
    let table = format!(
        "spectrum of W~ over Q[t]/({}): {} labels over {} orderings; |Spec_0| = {} (double cover of X(K))\n{}",
        poly_text, report.label_count, report.ordering_count, report.spec0.size, report.topology
    );
    emit(mode, &value, table);
    Ok(())
}
