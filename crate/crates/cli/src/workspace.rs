//! The versioned workspace document and its resolution into validated objects.

use std::collections::BTreeMap;
use std::path::Path;

use orbigerbe::gerbe::{CombinatorialLoop, Step};
use orbigerbe::groupoid::{Cells, FiniteGroup, FiniteGroupoid, GroupoidMorphism, SimplicialAction, SimplicialComplex};
use orbigerbe::nerve::{CellId, DoubleComplex};
use orbigerbe::CircleValue;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const VERSION: &str = "v1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Workspace {
    pub version: String,
    #[serde(default)]
    pub groups: BTreeMap<String, GroupDoc>,
    #[serde(default)]
    pub complexes: BTreeMap<String, SimplicialComplex>,
    #[serde(default)]
    pub actions: BTreeMap<String, ActionDoc>,
    #[serde(default)]
    pub cocycles: BTreeMap<String, CocycleDoc>,
    #[serde(default)]
    pub loops: BTreeMap<String, LoopDoc>,
    #[serde(default)]
    pub morphisms: BTreeMap<String, MorphismDoc>,
}

/// A group given either by its multiplication table or by permutation
/// generators of a given degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ActionDoc {
    pub group: String,
    pub complex: String,
    /// `vertex_maps[g][v]` is the image of vertex `v` under element `g`.
    pub vertex_maps: Vec<Vec<usize>>,
    /// Replace the action by its barycentric subdivision before use.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub subdivide: bool,
}

/// Circle-valued total cochain on an action; cells not listed carry `0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleDoc {
    pub action: String,
    pub degree: usize,
    pub values: BTreeMap<String, CircleValue>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LoopDoc {
    pub action: String,
    pub start: usize,
    pub steps: Vec<Step>,
}

/// Equivariant map: simplices per dimension plus a group homomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDoc {
    pub domain: String,
    pub codomain: String,
    pub cell_map: Vec<Vec<usize>>,
    pub hom: Vec<usize>,
}

/// Something cohomology can be computed for.
pub enum Object {
    Group(FiniteGroup),
    Action(SimplicialAction),
}

fn lookup<'a, V>(map: &'a BTreeMap<String, V>, kind: &'static str, name: &str) -> CliResult<&'a V> {
    map.get(name).ok_or_else(|| CliError::Unknown { kind, name: name.to_string() })
}

impl Workspace {
    pub fn empty() -> Self {
        Self {
            version: VERSION.to_string(),
            groups: BTreeMap::new(),
            complexes: BTreeMap::new(),
            actions: BTreeMap::new(),
            cocycles: BTreeMap::new(),
            loops: BTreeMap::new(),
            morphisms: BTreeMap::new(),
        }
    }

    pub fn parse(text: &str) -> CliResult<Self> {
        let ws: Workspace = serde_json::from_str(text)?;
        if ws.version != VERSION {
            return Err(CliError::Invalid(format!("unsupported workspace version {:?}, expected {VERSION:?}", ws.version)));
        }
        Ok(ws)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Canonical JSON: sorted keys, two-space indentation, trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("workspace serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn group(&self, name: &str) -> CliResult<FiniteGroup> {
        let doc = lookup(&self.groups, "group", name)?;
        let in_group = |e: orbigerbe::Error| CliError::Context { context: format!("group {name:?}"), source: e };
        let g = match (&doc.table, &doc.degree, &doc.generators) {
            (Some(table), None, None) => FiniteGroup::from_table(table.clone()).map_err(in_group)?,
            (None, Some(degree), Some(gens)) => FiniteGroup::from_permutations(*degree, gens).map_err(in_group)?,
            _ => {
                return Err(CliError::Invalid(format!(
                    "group {name:?} needs either \"table\" or \"degree\" with \"generators\""
                )))
            }
        };
        match &doc.labels {
            Some(labels) => g.with_labels(labels.clone()).map_err(in_group),
            None => Ok(g),
        }
    }

    pub fn complex(&self, name: &str) -> CliResult<SimplicialComplex> {
        Ok(lookup(&self.complexes, "complex", name)?.clone())
    }

    pub fn action(&self, name: &str) -> CliResult<SimplicialAction> {
        let doc = lookup(&self.actions, "action", name)?;
        let group = self.group(&doc.group)?;
        let space = self.complex(&doc.complex)?;
        let ctx = |e: orbigerbe::Error| CliError::Context { context: format!("action {name:?}"), source: e };
        let a = SimplicialAction::new(group, space, doc.vertex_maps.clone()).map_err(ctx)?;
        if doc.subdivide {
            a.barycentric_subdivision().map_err(ctx)
        } else {
            Ok(a)
        }
    }

    /// A group or an action of that name; groups act on a point.
    pub fn object(&self, name: &str) -> CliResult<Object> {
        match (self.groups.contains_key(name), self.actions.contains_key(name)) {
            (true, true) => Err(CliError::Invalid(format!("{name:?} names both a group and an action"))),
            (true, false) => Ok(Object::Group(self.group(name)?)),
            (false, true) => Ok(Object::Action(self.action(name)?)),
            (false, false) => Err(CliError::Unknown { kind: "group or action", name: name.to_string() }),
        }
    }

    /// The action an object lives on: actions as they are, groups on a point.
    pub fn acting(&self, name: &str) -> CliResult<SimplicialAction> {
        Ok(match self.object(name)? {
            Object::Group(g) => SimplicialAction::on_point(g),
            Object::Action(a) => a,
        })
    }

    pub fn cocycle_doc(&self, name: &str) -> CliResult<&CocycleDoc> {
        lookup(&self.cocycles, "cocycle", name)
    }

    pub fn loop_doc(&self, name: &str) -> CliResult<&LoopDoc> {
        lookup(&self.loops, "loop", name)
    }

    pub fn morphism_doc(&self, name: &str) -> CliResult<&MorphismDoc> {
        lookup(&self.morphisms, "morphism", name)
    }

    pub fn path(&self, name: &str) -> CliResult<CombinatorialLoop> {
        let doc = self.loop_doc(name)?;
        Ok(CombinatorialLoop { start: doc.start, steps: doc.steps.clone() })
    }

    /// Resolves every entry, so that malformed documents are rejected before
    /// any computation runs.
    pub fn validate(&self) -> CliResult<()> {
        for name in self.groups.keys() {
            self.group(name)?;
        }
        for name in self.actions.keys() {
            if self.groups.contains_key(name) {
                return Err(CliError::Invalid(format!("{name:?} names both a group and an action")));
            }
            self.action(name)?;
        }
        for (name, doc) in &self.cocycles {
            let action = self.acting(&doc.action)?;
            let base = DoubleComplex::<i64>::new(&action, doc.degree)?;
            cochain_values(&base, name, doc)?;
        }
        for (name, doc) in &self.loops {
            let action = self.acting(&doc.action)?;
            let n = action.space().vertex_count();
            if doc.start >= n {
                return Err(CliError::Invalid(format!("loop {name:?} starts at vertex {} of {n}", doc.start)));
            }
            for step in &doc.steps {
                let ok = match *step {
                    Step::Edge { edge, .. } => edge < action.space().count(1),
                    Step::Arrow { element, .. } => element < action.group().order(),
                };
                if !ok {
                    return Err(CliError::Invalid(format!("loop {name:?} references {step:?}, which does not exist")));
                }
            }
        }
        for name in self.morphisms.keys() {
            self.with_morphism(name, |_| Ok(()))?;
        }
        Ok(())
    }

    /// Builds the groupoid morphism of an equivariant map and hands it to `f`.
    pub fn with_morphism<R>(&self, name: &str, f: impl FnOnce(&GroupoidMorphism<'_>) -> CliResult<R>) -> CliResult<R> {
        let doc = self.morphism_doc(name)?;
        let (dom, cod) = (self.acting(&doc.domain)?, self.acting(&doc.codomain)?);
        let gd = FiniteGroupoid::translation(&dom, Cells::Simplices);
        let gc = FiniteGroupoid::translation(&cod, Cells::Simplices);
        let m = GroupoidMorphism::from_equivariant(&gd, &gc, &dom, &cod, &doc.cell_map, &doc.hom)
            .map_err(|e| CliError::Context { context: format!("morphism {name:?}"), source: e })?;
        f(&m)
    }
}

/// Dense cochain of the document's degree on `base`, resolving cell ids.
pub fn cochain_values<T: orbigerbe::Scalar>(
    base: &DoubleComplex<T>,
    name: &str,
    doc: &CocycleDoc,
) -> CliResult<Vec<CircleValue>> {
    let mut values = vec![CircleValue::ZERO; base.rank(doc.degree)];
    for (id, v) in &doc.values {
        let cell_id: CellId = id.parse()?;
        let cell = base
            .resolve(&cell_id)
            .filter(|c| c.degree() == doc.degree)
            .ok_or_else(|| CliError::Invalid(format!("cocycle {name:?}: {id:?} is not a cell of degree {}", doc.degree)))?;
        let i = base.index(&cell).expect("resolved cell has an index");
        values[i] = *v;
    }
    Ok(values)
}

/// Sparse document for a dense cochain, omitting zero values.
pub fn cochain_doc<T: orbigerbe::Scalar>(base: &DoubleComplex<T>, action: &str, degree: usize, values: &[CircleValue]) -> CocycleDoc {
    let values = values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(i, v)| {
            let cell = base.cell(degree, i).expect("cell in range");
            (base.cell_id(&cell).to_string(), *v)
        })
        .collect();
    CocycleDoc { action: action.to_string(), degree, values }
}

impl GroupDoc {
    pub fn from_group(g: &FiniteGroup) -> Self {
        let default: Vec<String> = (0..g.order()).map(|i| i.to_string()).collect();
        let labels = (g.labels() != default.as_slice()).then(|| g.labels().to_vec());
        Self { table: Some(g.table().to_vec()), labels, degree: None, generators: None }
    }
}
