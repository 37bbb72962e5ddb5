use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use orbigerbe::exactalg::{CircleClass, TorsionClass, ZModule};
use orbigerbe::gerbe::{
    dd_class, enumerate_discrete_torsion, flat_class, flat_holonomy, transgress, verify_gerbe, verify_inner_local_system,
    GerbeCocycle,
};
use orbigerbe::groupoid::twisted_sectors;
use orbigerbe::nerve::{group_cohomology_table, orbifold_cohomology_table, Coefficients, DoubleComplex, Truncation};
use orbigerbe::{CircleValue, Presentation, Scalar};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::workspace::{cochain_values, CocycleDoc, Object, Workspace};

/// Output of a command in both renderings.
pub struct Report {
    pub json: Value,
    pub table: String,
}

fn records(groups: &[Presentation]) -> Value {
    groups
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let r = p.record(k);
            json!({
                "degree": r.degree,
                "free_rank": r.free_rank,
                "torsion": r.torsion,
                "divisible": r.divisible,
                "group": p.to_string(),
            })
        })
        .collect()
}

fn table_of(groups: &[Presentation]) -> String {
    groups.iter().enumerate().map(|(k, p)| format!("H^{k}  {p}\n")).collect()
}

pub fn cohomology(
    ws: &Workspace,
    name: &str,
    coefficients: Coefficients,
    max: usize,
    truncation: Option<Truncation>,
) -> CliResult<Report> {
    let groups = match ws.object(name)? {
        Object::Group(g) => {
            if truncation.is_some() {
                return Err(CliError::Invalid("--truncation applies to actions, not to groups".into()));
            }
            group_cohomology_table(&g, coefficients, max)?
        }
        Object::Action(a) => orbifold_cohomology_table(&a, coefficients, max, truncation)?,
    };
    Ok(Report { json: records(&groups), table: table_of(&groups) })
}

fn torsion_json<T: Scalar>(c: &TorsionClass<T>) -> Value {
    json!({
        "factors": c.factors.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "coords": c.coords.iter().map(ToString::to_string).collect::<Vec<_>>(),
    })
}

fn circle_json<T: Scalar>(c: &CircleClass<T>) -> Value {
    json!({ "torsion": torsion_json(&c.torsion), "divisible": c.divisible })
}

pub fn discrete_torsion(ws: &Workspace, name: &str, bound: usize) -> CliResult<Report> {
    let g = ws.group(name)?;
    let reps = enumerate_discrete_torsion(&g, bound)?;
    let mut table = format!("{name}: {} discrete torsion class(es)\n", reps.len());
    let mut out = Vec::new();
    for (i, t) in reps.iter().enumerate() {
        let class = t.class()?;
        let mut theta: BTreeMap<String, BTreeMap<String, CircleValue>> = BTreeMap::new();
        let _ = writeln!(table, "class {i}  coords {:?} mod {:?}", class.coords, class.factors);
        for a in 0..g.order() {
            for b in 0..g.order() {
                let v = t.value(a, b);
                if !v.is_zero() {
                    theta.entry(g.label(a).to_string()).or_default().insert(g.label(b).to_string(), v);
                    let _ = writeln!(table, "  theta({}, {}) = {v}", g.label(a), g.label(b));
                }
            }
        }
        out.push(json!({ "index": i, "class": class, "theta": theta }));
    }
    Ok(Report { json: json!({ "group": name, "order": g.order(), "classes": reps.len(), "representatives": out }), table })
}

pub fn inertia(ws: &Workspace, name: &str) -> CliResult<Report> {
    let sectors = twisted_sectors(&ws.acting(name)?);
    let mut table = format!("{name}: {} twisted sector(s)\n", sectors.len());
    for s in &sectors {
        let _ = writeln!(table, "  {:<12} objects {:>4}  arrows {:>5}  isotropy {}", s.label, s.objects, s.arrows, s.isotropy);
    }
    Ok(Report { json: json!({ "object": name, "count": sectors.len(), "sectors": sectors }), table })
}

pub fn transgress_cmd(ws: &Workspace, name: &str, index: usize, bound: usize) -> CliResult<Report> {
    let g = ws.group(name)?;
    let reps = enumerate_discrete_torsion(&g, bound)?;
    let theta = reps.get(index).ok_or_else(|| {
        CliError::Invalid(format!("class index {index} out of range: {name} has {} class(es)", reps.len()))
    })?;
    let l = transgress(theta);
    let verdict = verify_inner_local_system(&l);
    let mut table = format!("{name}, class {index}: {}\n", if verdict.valid { "valid" } else { "INVALID" });
    let mut sectors = Vec::new();
    for ch in l.characters() {
        let values: BTreeMap<String, CircleValue> = ch.values.iter().map(|(h, v)| (g.label(*h).to_string(), *v)).collect();
        let shown: Vec<String> = values.iter().map(|(h, v)| format!("{h}->{v}")).collect();
        let _ = writeln!(table, "  sector {:<8} {}", ch.label, shown.join("  "));
        sectors.push(json!({ "sector": ch.label, "values": values }));
    }
    Ok(Report {
        json: json!({ "group": name, "class_index": index, "verdict": verdict, "sectors": sectors }),
        table,
    })
}

/// First cell of degree `k + 1` on which the coboundary of `z` is nonzero.
fn first_violation<T: Scalar>(base: &DoubleComplex<T>, z: &[CircleValue], k: usize) -> CliResult<Option<String>> {
    if k == 2 {
        let g = GerbeCocycle::new(base, z.to_vec())?;
        return Ok(verify_gerbe(&g)?.violation);
    }
    let d = base.complex().differential(k);
    for r in 0..d.rows() {
        let mut s = CircleValue::ZERO;
        for (c, v) in d.row(r) {
            s = s + ZModule::<T>::scale(&z[*c], v)?;
        }
        if !s.is_zero() {
            let cell = base.cell(k + 1, r).expect("row is a cell");
            return Ok(Some(base.cell_id(&cell).to_string()));
        }
    }
    Ok(None)
}

fn with_cocycle<R>(
    ws: &Workspace,
    name: &str,
    top: usize,
    small: impl FnOnce(&DoubleComplex<i64>, &CocycleDoc) -> CliResult<R>,
    big: impl FnOnce(&DoubleComplex<BigInt>, &CocycleDoc) -> CliResult<R>,
) -> CliResult<R> {
    let doc = ws.cocycle_doc(name)?;
    let action = ws.acting(&doc.action)?;
    let top = top.max(doc.degree);
    let small_base = DoubleComplex::<i64>::new(&action, top);
    match small_base.map_err(CliError::from).and_then(|b| small(&b, doc)) {
        Err(CliError::Core(orbigerbe::Error::Overflow)) => big(&DoubleComplex::<BigInt>::new(&action, top)?, doc),
        other => other,
    }
}

fn verify_report<T: Scalar>(base: &DoubleComplex<T>, name: &str, doc: &CocycleDoc) -> CliResult<Report> {
    let z = cochain_values(base, name, doc)?;
    let violation = first_violation(base, &z, doc.degree)?;
    let json = json!({ "name": name, "kind": "cocycle", "degree": doc.degree, "valid": violation.is_none(), "violation": violation });
    match violation {
        None => Ok(Report { json, table: format!("{name}: cocycle of degree {}\n", doc.degree) }),
        Some(_) => Err(CliError::Rejected(json)),
    }
}

pub fn verify(ws: &Workspace, name: &str) -> CliResult<Report> {
    let mut kinds = Vec::new();
    if ws.groups.contains_key(name) {
        kinds.push("group");
    }
    if ws.complexes.contains_key(name) {
        kinds.push("complex");
    }
    if ws.actions.contains_key(name) {
        kinds.push("action");
    }
    if ws.loops.contains_key(name) {
        kinds.push("loop");
    }
    if ws.morphisms.contains_key(name) {
        kinds.push("morphism");
    }
    if ws.cocycles.contains_key(name) {
        return with_cocycle(ws, name, 0, |b, d| verify_report(b, name, d), |b, d| verify_report(b, name, d));
    }
    let kind = match kinds.as_slice() {
        [] => return Err(CliError::Unknown { kind: "object", name: name.into() }),
        [k] => *k,
        _ => return Err(CliError::Invalid(format!("{name:?} is ambiguous: {}", kinds.join(", ")))),
    };
    let mut json = json!({ "name": name, "kind": kind, "valid": true });
    if kind == "action" {
        let a = ws.action(name)?;
        json["order_preserving"] = json!(a.is_order_preserving());
        json["free"] = json!(a.is_free());
        json["singular_cells"] = json!(a.singular_cells().len());
    }
    Ok(Report { json, table: format!("{name}: valid {kind}\n") })
}

fn dd_report<T: Scalar>(base: &DoubleComplex<T>, name: &str, doc: &CocycleDoc) -> CliResult<Report> {
    if doc.degree != 2 {
        return Err(CliError::Invalid(format!("cocycle {name:?} has degree {}, gerbes have degree 2", doc.degree)));
    }
    let g = GerbeCocycle::new(base, cochain_values(base, name, doc)?)?;
    let verdict = verify_gerbe(&g)?;
    if !verdict.valid {
        return Err(CliError::Rejected(json!({ "name": name, "kind": "cocycle", "degree": 2, "valid": false, "violation": verdict.violation })));
    }
    let dd = dd_class(&g)?;
    let flat = flat_class(&g)?;
    let table = format!(
        "{name}\n  dd class    coords {:?} mod {:?}{}\n  flat class  torsion {:?} mod {:?}, divisible {:?}{}\n",
        dd.coords.iter().map(ToString::to_string).collect::<Vec<_>>(),
        dd.factors.iter().map(ToString::to_string).collect::<Vec<_>>(),
        if dd.is_zero() { "  (zero)" } else { "" },
        flat.torsion.coords.iter().map(ToString::to_string).collect::<Vec<_>>(),
        flat.torsion.factors.iter().map(ToString::to_string).collect::<Vec<_>>(),
        flat.divisible.iter().map(ToString::to_string).collect::<Vec<_>>(),
        if flat.is_zero() { "  (zero)" } else { "" },
    );
    let json = json!({
        "cocycle": name,
        "dd_class": torsion_json(&dd),
        "dd_zero": dd.is_zero(),
        "flat_class": circle_json(&flat),
        "flat_zero": flat.is_zero(),
    });
    Ok(Report { json, table })
}

pub fn dd(ws: &Workspace, name: &str) -> CliResult<Report> {
    with_cocycle(ws, name, 2, |b, d| dd_report(b, name, d), |b, d| dd_report(b, name, d))
}

fn holonomy_report<T: Scalar>(
    ws: &Workspace,
    base: &DoubleComplex<T>,
    name: &str,
    doc: &CocycleDoc,
    loop_name: &str,
) -> CliResult<Report> {
    if doc.degree != 1 {
        return Err(CliError::Invalid(format!("cocycle {name:?} has degree {}, connections have degree 1", doc.degree)));
    }
    let l = ws.loop_doc(loop_name)?;
    if l.action != doc.action {
        return Err(CliError::Invalid(format!(
            "loop {loop_name:?} lives on {:?} but cocycle {name:?} on {:?}",
            l.action, doc.action
        )));
    }
    let lambda = cochain_values(base, name, doc)?;
    let value = flat_holonomy(base, &lambda, &ws.path(loop_name)?)?;
    Ok(Report {
        json: json!({ "cocycle": name, "loop": loop_name, "holonomy": value }),
        table: format!("holonomy of {name} around {loop_name}: {value}\n"),
    })
}

pub fn holonomy(ws: &Workspace, name: &str, loop_name: &str) -> CliResult<Report> {
    with_cocycle(
        ws,
        name,
        1,
        |b, d| holonomy_report(ws, b, name, d, loop_name),
        |b, d| holonomy_report(ws, b, name, d, loop_name),
    )
}

pub fn morita_check(ws: &Workspace, name: &str, compare: Option<usize>) -> CliResult<Report> {
    let verdict = ws.with_morphism(name, |m| Ok(m.is_weak_equivalence()))?;
    let mut table = format!("{name}: {}\n", if verdict.equivalence { "weak equivalence" } else { "NOT a weak equivalence" });
    let mut json = json!({ "morphism": name, "verdict": verdict });
    let mut agree = true;
    if let Some(max) = compare {
        let doc = ws.morphism_doc(name)?;
        let (dom, cod) = (ws.acting(&doc.domain)?, ws.acting(&doc.codomain)?);
        let mut comparison = serde_json::Map::new();
        for coefficients in [Coefficients::Integer, Coefficients::Circle] {
            let a = orbifold_cohomology_table(&dom, coefficients, max, None)?;
            let b = orbifold_cohomology_table(&cod, coefficients, max, None)?;
            let same = a == b;
            agree &= same;
            let _ = writeln!(table, "  {coefficients} coefficients: {}", if same { "agree" } else { "DIFFER" });
            for (k, (x, y)) in a.iter().zip(&b).enumerate() {
                let _ = writeln!(table, "    H^{k}  {x:<12} {y}");
            }
            comparison.insert(
                coefficients.to_string(),
                json!({ "agree": same, "domain": records(&a), "codomain": records(&b) }),
            );
        }
        json["cohomology"] = Value::Object(comparison);
    }
    if verdict.equivalence && agree {
        Ok(Report { json, table })
    } else {
        Err(CliError::Rejected(json))
    }
}
