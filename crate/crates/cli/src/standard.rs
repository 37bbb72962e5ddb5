//! The built-in workspace: small groups, the sphere, both pillowcase
//! presentations, the free circle rotation, and sample cocycles and loops.

use orbigerbe::exactalg::CircleReducer;
use orbigerbe::fixtures;
use orbigerbe::gerbe::{enumerate_discrete_torsion, torsion_to_gerbe, CombinatorialLoop, GerbeCocycle, Step};
use orbigerbe::groupoid::{small_groups, SimplicialAction};
use orbigerbe::nerve::{DoubleComplex, TotalCell};
use orbigerbe::CircleValue;

use crate::workspace::{cochain_doc, ActionDoc, GroupDoc, LoopDoc, MorphismDoc, Workspace};

fn action_doc(group: &str, complex: &str, a: &SimplicialAction) -> ActionDoc {
    ActionDoc {
        group: group.into(),
        complex: complex.into(),
        vertex_maps: a.vertex_maps().to_vec(),
        subdivide: false,
    }
}

fn loop_doc(action: &str, l: CombinatorialLoop) -> LoopDoc {
    LoopDoc { action: action.into(), start: l.start, steps: l.steps }
}

fn half() -> CircleValue {
    CircleValue::new(1, 2).expect("1/2")
}

pub fn standard_workspace() -> Workspace {
    let mut ws = Workspace::empty();
    for (name, g) in small_groups() {
        ws.groups.insert(name, GroupDoc::from_group(&g));
    }

    let pillow = fixtures::pillowcase();
    let doubled = fixtures::doubled_pillowcase();
    let torus = fixtures::trivial_torus();
    ws.complexes.insert("sphere".into(), fixtures::sphere());
    ws.complexes.insert("torus".into(), pillow.space().clone());
    ws.complexes.insert("doubled_torus".into(), doubled.space().clone());
    ws.complexes.insert("square".into(), fixtures::cycle(4));

    ws.actions.insert("sphere_trivial".into(), action_doc("trivial", "sphere", &fixtures::trivial_sphere()));
    ws.actions.insert("pillowcase".into(), action_doc("Z2", "torus", &pillow));
    ws.actions.insert("doubled_pillowcase".into(), action_doc("Z2xZ2", "doubled_torus", &doubled));
    ws.actions.insert("torus_trivial".into(), action_doc("trivial", "torus", &torus));
    ws.actions.insert(
        "free_circle".into(),
        ActionDoc {
            group: "Z2".into(),
            complex: "square".into(),
            vertex_maps: vec![vec![0, 1, 2, 3], vec![2, 3, 0, 1]],
            subdivide: true,
        },
    );

    let (cells, hom) = fixtures::pillowcase_inclusion();
    ws.morphisms.insert(
        "pillowcase_inclusion".into(),
        MorphismDoc { domain: "pillowcase".into(), codomain: "doubled_pillowcase".into(), cell_map: cells, hom },
    );

    // discrete torsion on Z/2 × Z/2, on the point and inflated to the doubled pillowcase
    let klein = ws.group("Z2xZ2").expect("standard group");
    let theta = enumerate_discrete_torsion(&klein, 8).expect("Z2xZ2 torsion").remove(1);
    let point = SimplicialAction::on_point(klein);
    let base = DoubleComplex::<i64>::new(&point, 2).expect("point complex");
    let gerbe = torsion_to_gerbe(&theta, &base).expect("inflation");
    ws.cocycles.insert("klein_theta".into(), cochain_doc(&base, "Z2xZ2", 2, gerbe.values()));
    ws.cocycles.insert("klein_trivial".into(), cochain_doc(&base, "Z2xZ2", 2, GerbeCocycle::zero(&base).expect("zero").values()));
    let mut perturbed = gerbe.values().to_vec();
    perturbed[0] = perturbed[0] + CircleValue::new(1, 4).expect("1/4");
    ws.cocycles.insert("klein_perturbed".into(), cochain_doc(&base, "Z2xZ2", 2, &perturbed));

    let base = DoubleComplex::<i64>::new(&doubled, 2).expect("doubled complex");
    let gerbe = torsion_to_gerbe(&theta, &base).expect("inflation");
    ws.cocycles.insert("doubled_pillowcase_theta".into(), cochain_doc(&base, "doubled_pillowcase", 2, gerbe.values()));

    // flat gerbe on the torus that no discrete torsion produces
    let base = DoubleComplex::<i64>::new(&torus, 2).expect("torus complex");
    let reducer = CircleReducer::new(base.complex(), 2).expect("torus H2");
    let flat = reducer.representative(&[], &[half()]).expect("torus representative");
    ws.cocycles.insert("torus_flat".into(), cochain_doc(&base, "torus_trivial", 2, &flat));

    // connections and loops
    let z2 = SimplicialAction::on_point(ws.group("Z2").expect("standard group"));
    let base = DoubleComplex::<i64>::new(&z2, 1).expect("point complex");
    ws.cocycles.insert("Z2_lambda".into(), cochain_doc(&base, "Z2", 1, &[half()]));
    let generator = CombinatorialLoop { start: 0, steps: vec![Step::Arrow { element: 1, forward: true }] };
    ws.loops.insert("Z2_twice".into(), loop_doc("Z2", generator.concat(&generator).expect("closed")));
    ws.loops.insert("Z2_generator".into(), loop_doc("Z2", generator));

    let base = DoubleComplex::<i64>::new(&pillow, 2).expect("pillowcase complex");
    let w: Vec<CircleValue> = (0..base.rank(0)).map(|i| CircleValue::new(i as i64, 7).expect("sevenths")).collect();
    let d0 = base.complex().differential(0);
    let exact: Vec<CircleValue> =
        (0..d0.rows()).map(|r| d0.row(r).iter().map(|(c, v)| w[*c].mul_int(*v)).sum()).collect();
    ws.cocycles.insert("pillowcase_exact".into(), cochain_doc(&base, "pillowcase", 1, &exact));
    let triangle = TotalCell { p: 2, simplex: 0, string: vec![] };
    let square = TotalCell { p: 1, simplex: 0, string: vec![1] };
    for (name, cell) in [("pillowcase_triangle", triangle), ("pillowcase_square", square)] {
        let l = CombinatorialLoop::boundary(&base, &cell).expect("boundary loop");
        ws.loops.insert(name.into(), loop_doc("pillowcase", l));
    }
    ws
}
