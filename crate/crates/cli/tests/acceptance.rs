//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::{BTreeSet, VecDeque};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::TorsionOracle;
use orbigerbe::exactalg::{bockstein, cohomology_integer, smith_normal_form, with_overflow_fallback, CircleReducer, IntegerMatrix};
use orbigerbe::fixtures;
use orbigerbe::gerbe::{
    dd_class, enumerate_discrete_torsion, flat_holonomy, torsion_to_gerbe, transgress, verify_gerbe, verify_inner_local_system,
    CombinatorialLoop, Step,
};
use orbigerbe::groupoid::{small_groups, Cells, FiniteGroup, FiniteGroupoid, SimplicialAction};
use orbigerbe::nerve::{
    group_cohomology_table, orbifold_cohomology, orbifold_cohomology_table, BarComplex, Coefficients, DoubleComplex, Nerve,
    TotalCell,
};
use orbigerbe::{BigInt, CircleValue};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> Result<(i32, Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_orbigerbe")).args(args).output().map_err(|e| e.to_string())?;
    let v = serde_json::from_slice(&out.stdout).map_err(|e| format!("{args:?}: {e}"))?;
    Ok((out.status.code().unwrap_or(-1), v))
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn klein() -> FiniteGroup {
    FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
}

fn discrete_torsion_counts() -> Check {
    let mut groups: Vec<(String, FiniteGroup, usize)> =
        (2..=6).map(|n| (format!("Z{n}"), FiniteGroup::cyclic(n), 1)).collect();
    groups.push(("Z2xZ2".into(), klein(), 2));
    let mut slowest = Duration::ZERO;
    for (name, g, expected) in &groups {
        let t = Instant::now();
        let (code, v) = cli(&["discrete-torsion", name])?;
        let elapsed = t.elapsed();
        slowest = slowest.max(elapsed);
        ensure(code == 0, || format!("{name}: exit {code}"))?;
        ensure(elapsed < Duration::from_secs(10), || format!("{name}: {elapsed:?}"))?;
        let oracle = TorsionOracle::new(g);
        let classes = v["classes"].as_u64().unwrap_or(0) as usize;
        ensure(classes == *expected && classes == oracle.class_count(), || {
            format!("{name}: reported {classes}, oracle {}, expected {expected}", oracle.class_count())
        })?;
        let n = g.order();
        let mut reps: Vec<Vec<u32>> = Vec::new();
        for rep in v["representatives"].as_array().ok_or("no representatives")? {
            let mut num = vec![0u32; n * n];
            if let Some(rows) = rep["theta"].as_object() {
                for (a, row) in rows {
                    for (b, val) in row.as_object().ok_or("bad theta row")? {
                        let x: CircleValue = val.as_str().ok_or("bad value")?.parse().map_err(err)?;
                        let (ga, gb) = (g.element(a).ok_or("label")?, g.element(b).ok_or("label")?);
                        num[ga * n + gb] = (x.numerator() * (n as i64 / x.denominator())) as u32;
                    }
                }
            }
            ensure(oracle.cocycles.contains(&num), || format!("{name}: representative is not a normalized cocycle"))?;
            ensure(reps.iter().all(|r| !oracle.cohomologous(r, &num)), || format!("{name}: two representatives coincide"))?;
            reps.push(num);
        }
    }
    Ok(format!("Z/2..Z/6 -> 1 class, Z/2xZ/2 -> 2 classes, oracle agrees; slowest {slowest:.2?}"))
}

fn bockstein_bijection() -> Check {
    let mut total = 0;
    for (name, g) in small_groups() {
        let bar = BarComplex::<i64>::new(&g, 3).map_err(err)?;
        let c = bar.complex();
        let reducer = CircleReducer::new(c, 2).map_err(err)?;
        ensure(reducer.divisible_rank() == 0, || format!("{name}: H^2(circle) is not finite"))?;
        let factors = reducer.factors();
        let h3 = cohomology_integer(c, 3).map_err(err)?;
        ensure(h3.free_rank() == 0, || format!("{name}: H^3 has a free part"))?;
        let order: i64 = factors.iter().product();
        ensure(h3.order() == Some(order), || format!("{name}: |H^2(circle)| = {order}, H^3(Z) = {h3}"))?;
        let mut coords = vec![0i64; factors.len()];
        let mut images = BTreeSet::new();
        loop {
            let z = reducer.representative(&coords, &[]).map_err(err)?;
            ensure(reducer.reduce(&z).map_err(err)?.torsion.coords == coords, || format!("{name}: reduce is not inverse"))?;
            let image = bockstein(c, &z, 2).map_err(err)?;
            images.insert(image.class.coords);
            let mut i = 0;
            while i < coords.len() {
                coords[i] += 1;
                if coords[i] < factors[i] {
                    break;
                }
                coords[i] = 0;
                i += 1;
            }
            if i == coords.len() {
                break;
            }
        }
        ensure(images.len() as i64 == order, || format!("{name}: {} images for {order} classes", images.len()))?;
        total += order;
    }
    Ok(format!("14 groups, {total} classes, all images distinct and onto H^3(G; Z)"))
}

fn morita_invariance() -> Check {
    let (code, v) = cli(&["morita-check", "pillowcase_inclusion", "--compare-cohomology", "--max-degree", "3"])?;
    ensure(code == 0, || format!("exit {code}: {v}"))?;
    ensure(v["verdict"]["equivalence"] == true, || "inclusion is not a weak equivalence".into())?;
    let show = |c: &str| -> String {
        v["cohomology"][c]["domain"]
            .as_array()
            .map(|a| a.iter().filter_map(|r| r["group"].as_str()).collect::<Vec<_>>().join(", "))
            .unwrap_or_default()
    };
    for c in ["integer", "circle"] {
        ensure(v["cohomology"][c]["agree"] == true, || format!("{c} cohomology differs"))?;
    }
    Ok(format!("weak equivalence certified; Z: [{}]; Q/Z: [{}]", show("integer"), show("circle")))
}

fn pipelines_agree() -> Check {
    for (name, g) in small_groups() {
        for c in [Coefficients::Integer, Coefficients::Circle] {
            let bar = group_cohomology_table(&g, c, 3).map_err(err)?;
            let point = orbifold_cohomology_table(&SimplicialAction::on_point(g.clone()), c, 3, None).map_err(err)?;
            ensure(bar == point, || format!("{name} {c}: bar {bar:?} vs point {point:?}"))?;
        }
    }
    Ok("14 groups x 2 coefficient rings x degrees 0..3".into())
}

fn local_system_axioms() -> Check {
    let mut systems = 0;
    for (name, g) in small_groups() {
        for (i, theta) in enumerate_discrete_torsion(&g, 8).map_err(err)?.iter().enumerate() {
            let l = transgress(theta);
            let verdict = verify_inner_local_system(&l);
            ensure(verdict.valid, || format!("{name} class {i}: {:?}", verdict.certificate))?;
            for ch in l.characters() {
                let v = ch.loop_arrow;
                let keys: BTreeSet<usize> = ch.values.iter().map(|(h, _)| *h).collect();
                let centralizer: BTreeSet<usize> = (0..g.order()).filter(|&h| g.mul(v, h) == g.mul(h, v)).collect();
                ensure(keys == centralizer, || format!("{name} class {i}: sector {} is not the centralizer", ch.label))?;
                let value = |h: usize| ch.values.iter().find(|(x, _)| *x == h).map(|(_, y)| *y).unwrap_or(CircleValue::ZERO);
                for &a in &centralizer {
                    for &b in &centralizer {
                        ensure(value(g.mul(a, b)) == value(a) + value(b), || {
                            format!("{name} class {i}: sector {} is not a character", ch.label)
                        })?;
                    }
                }
            }
            systems += 1;
        }
    }
    Ok(format!("{systems} class representatives over 14 groups"))
}

/// `Z/2 × Z/2` acting on the pillowcase torus through the first factor.
fn inflated_pillowcase() -> SimplicialAction {
    let p = fixtures::pillowcase();
    let maps = (0..4).map(|g| p.vertex_maps()[g / 2].clone()).collect();
    SimplicialAction::new(klein(), p.space().clone(), maps).expect("inflated action")
}

fn dd_classes(action: &SimplicialAction) -> Result<Vec<Vec<i64>>, String> {
    let base = DoubleComplex::<i64>::new(action, 2).map_err(err)?;
    let mut out = Vec::new();
    for theta in enumerate_discrete_torsion(&klein(), 8).map_err(err)? {
        let g = torsion_to_gerbe(&theta, &base).map_err(err)?;
        ensure(verify_gerbe(&g).map_err(err)?.valid, || "inflated gerbe is not a cocycle".into())?;
        out.push(dd_class(&g).map_err(err)?.coords);
    }
    Ok(out)
}

fn injectivity() -> Check {
    let point = dd_classes(&SimplicialAction::on_point(klein()))?;
    ensure(point[0] != point[1], || format!("[*/G]: classes {point:?} coincide"))?;
    let fixed = dd_classes(&inflated_pillowcase())?;
    let doubled_action = fixtures::doubled_pillowcase();
    let doubled = dd_classes(&doubled_action)?;
    let h3 = orbifold_cohomology(&doubled_action, Coefficients::Integer, 3, None).map_err(err)?;
    let context = format!(
        "[*/G] {point:?} distinct; torus with a G-fixed point {fixed:?} {}; doubled pillowcase {doubled:?} with H^3 = {h3}",
        if fixed[0] != fixed[1] { "distinct" } else { "coincide" }
    );
    ensure(doubled[0] != doubled[1], || format!("{context}: no injection is possible there"))?;
    Ok(context)
}

fn flat_beyond_torsion() -> Check {
    let (code, v) = cli(&["discrete-torsion", "trivial"])?;
    ensure(code == 0 && v["classes"] == 1, || format!("trivial group: {v}"))?;
    let (_, v) = cli(&["cohomology", "torus_trivial", "--coefficients", "circle", "--max-degree", "2"])?;
    let h2 = v[2]["group"].as_str().unwrap_or("?").to_string();
    ensure(v[2]["divisible"].as_u64().unwrap_or(0) > 0, || format!("H^2(torus; circle) = {h2}"))?;
    let (code, v) = cli(&["verify", "torus_flat"])?;
    ensure(code == 0 && v["valid"] == true, || format!("torus_flat is not a cocycle: {v}"))?;
    let (code, v) = cli(&["dd-class", "torus_flat"])?;
    ensure(code == 0 && v["flat_zero"] == false, || format!("torus_flat has zero class: {v}"))?;
    Ok(format!("1 torsion class; H^2(T^2; circle) = {h2}; torus_flat has coordinates {}", v["flat_class"]["divisible"]))
}

/// Random closed loop: a random walk closed up along a shortest path.
fn random_loop(a: &SimplicialAction, start: usize, len: usize, rng: &mut ChaCha8Rng) -> CombinatorialLoop {
    let space = a.space();
    let n = a.group().order();
    let mut moves: Vec<Vec<(Step, usize)>> = vec![Vec::new(); space.vertex_count()];
    for e in 0..space.count(1) {
        let s = space.simplex(1, e);
        moves[s[0]].push((Step::Edge { edge: e, forward: true }, s[1]));
        moves[s[1]].push((Step::Edge { edge: e, forward: false }, s[0]));
    }
    for v in 0..space.vertex_count() {
        for g in 0..n {
            moves[v].push((Step::Arrow { element: g, forward: true }, a.act_vertex(v, g)));
        }
    }
    let mut steps = Vec::new();
    let mut at = start;
    for _ in 0..len {
        let (s, to) = moves[at][rng.gen_range(0..moves[at].len())];
        steps.push(s);
        at = to;
    }
    let mut prev: Vec<Option<(usize, Step)>> = vec![None; space.vertex_count()];
    let mut seen = vec![false; space.vertex_count()];
    let mut queue = VecDeque::from([at]);
    seen[at] = true;
    while let Some(v) = queue.pop_front() {
        for &(s, to) in &moves[v] {
            if !seen[to] {
                seen[to] = true;
                prev[to] = Some((v, s));
                queue.push_back(to);
            }
        }
    }
    let mut back = Vec::new();
    let mut v = start;
    while v != at {
        let (u, s) = prev[v].expect("connected");
        back.push(s);
        v = u;
    }
    back.reverse();
    steps.extend(back);
    CombinatorialLoop { start, steps }
}

fn holonomy() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let z2 = SimplicialAction::on_point(FiniteGroup::cyclic(2));
    let base = DoubleComplex::<i64>::new(&z2, 1).map_err(err)?;
    let half = [CircleValue::new(1, 2).map_err(err)?];
    let once = CombinatorialLoop { start: 0, steps: vec![Step::Arrow { element: 1, forward: true }] };
    let twice = once.concat(&once).map_err(err)?;
    ensure(flat_holonomy(&base, &half, &once).map_err(err)? == half[0], || "single traversal is not 1/2".into())?;
    ensure(flat_holonomy(&base, &half, &twice).map_err(err)?.is_zero(), || "double traversal is not 0".into())?;

    let mut actions: Vec<SimplicialAction> = vec![fixtures::pillowcase(), fixtures::free_circle(), fixtures::trivial_sphere()];
    actions.extend(small_groups().into_iter().map(|(_, g)| SimplicialAction::on_point(g)));
    let (mut loops, mut nonzero) = (0, 0);
    for a in &actions {
        let base = DoubleComplex::<i64>::new(a, 2).map_err(err)?;
        let d0 = base.complex().differential(0);
        let reducer = CircleReducer::new(base.complex(), 1).map_err(err)?;
        for _ in 0..4 {
            let w: Vec<CircleValue> = (0..base.rank(0)).map(|_| CircleValue::new(rng.gen_range(0..12), 12).unwrap()).collect();
            let exact: Vec<CircleValue> =
                (0..d0.rows()).map(|r| d0.row(r).iter().map(|(c, v)| w[*c].mul_int(*v)).sum()).collect();
            let coords: Vec<i64> = reducer.factors().iter().map(|f| rng.gen_range(0..*f)).collect();
            let free: Vec<CircleValue> =
                (0..reducer.divisible_rank()).map(|_| CircleValue::new(rng.gen_range(0..30), 30).unwrap()).collect();
            let class = reducer.representative(&coords, &free).map_err(err)?;
            let generic: Vec<CircleValue> = class.iter().zip(&exact).map(|(x, y)| *x + *y).collect();
            let start = rng.gen_range(0..a.space().vertex_count());
            let la = random_loop(a, start, 12, &mut rng);
            let lb = random_loop(a, start, 12, &mut rng);
            let (ha, hb) = (flat_holonomy(&base, &generic, &la).map_err(err)?, flat_holonomy(&base, &generic, &lb).map_err(err)?);
            ensure(flat_holonomy(&base, &generic, &la.concat(&lb).map_err(err)?).map_err(err)? == ha + hb, || "not additive".into())?;
            ensure(flat_holonomy(&base, &generic, &la.reversed()).map_err(err)? == -ha, || "reversal is not negation".into())?;
            ensure(flat_holonomy(&base, &exact, &la).map_err(err)?.is_zero(), || "coboundary has holonomy".into())?;
            nonzero += usize::from(!ha.is_zero());
            // every 2-cell boundary, conjugated by a path from the basepoint
            for cell in base.cells(2).collect::<Vec<TotalCell>>() {
                let b = CombinatorialLoop::boundary(&base, &cell).map_err(err)?;
                ensure(flat_holonomy(&base, &generic, &b).map_err(err)?.is_zero(), || format!("boundary of {cell:?} has holonomy"))?;
                loops += 1;
            }
        }
    }
    Ok(format!("{loops} contractible loops vanish, coboundaries vanish, additive; {nonzero} random loops with nonzero holonomy"))
}

fn infrastructure() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for i in 0..1000 {
        let (r, c) = (rng.gen_range(1..=12), rng.gen_range(1..=12));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-9..=9)).collect()).collect();
        let ok = with_overflow_fallback(
            || {
                let a = IntegerMatrix::<i64>::from_i64_rows(&rows)?;
                smith_normal_form(&a)?.verify(&a)
            },
            || {
                let a: IntegerMatrix<BigInt> = IntegerMatrix::<i64>::from_i64_rows(&rows)?.convert()?;
                smith_normal_form(&a)?.verify(&a)
            },
        )
        .map_err(err)?;
        ensure(ok, || format!("matrix {i} ({r}x{c}) fails U·A·V = D or unimodularity"))?;
    }
    let mut actions: Vec<SimplicialAction> = vec![
        fixtures::pillowcase(),
        fixtures::doubled_pillowcase(),
        fixtures::trivial_torus(),
        fixtures::free_circle(),
        fixtures::trivial_sphere(),
    ];
    actions.extend(small_groups().into_iter().map(|(_, g)| SimplicialAction::on_point(g)));
    let mut checked = 0;
    for a in &actions {
        // construction verifies d∘d = 0 in every degree
        DoubleComplex::<i64>::new(a, 3).map_err(err)?;
        a.space().cochain_complex::<i64>().map_err(err)?;
        for cells in [Cells::Vertices, Cells::Simplices] {
            let g = FiniteGroupoid::translation(a, cells);
            g.audit().map_err(err)?;
            let q = if g.arrow_count() > 200 { 2 } else { 3 };
            for normalized in [false, true] {
                let n = Nerve::new(&g, q, normalized);
                n.check_simplicial_identities().map_err(err)?;
                n.cochain_complex::<i64>().map_err(err)?;
                checked += 1;
            }
        }
    }
    for (_, g) in small_groups() {
        BarComplex::<i64>::new(&g, 4).map_err(err)?;
    }
    Ok(format!("1000 random matrices; {checked} nerves and all double/bar complexes"))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Check); 9] = [
        ("discrete torsion counts", 60, discrete_torsion_counts),
        ("bockstein bijection", 60, bockstein_bijection),
        ("morita invariance", 120, morita_invariance),
        ("bar and point pipelines agree", 60, pipelines_agree),
        ("inner local system axioms", 60, local_system_axioms),
        ("injectivity of torsion into gerbes", 30, injectivity),
        ("flat gerbes beyond torsion", 30, flat_beyond_torsion),
        ("holonomy well-definedness", 10, holonomy),
        ("infrastructure properties", 60, infrastructure),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = t.elapsed();
        let result = match result {
            Ok(_) if elapsed > Duration::from_secs(*limit) => Err(format!("took {elapsed:.2?}, limit {limit} s")),
            r => r,
        };
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d.clone()),
            Err(e) => ("FAIL", e.clone()),
        };
        failed += usize::from(result.is_err());
        println!("criterion {} [{tag}] {name} ({elapsed:.2?}): {detail}", i + 1);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
