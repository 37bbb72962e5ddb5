use std::collections::HashMap;

use serde::Serialize;

use super::action::SimplicialAction;
use super::groupoid::FiniteGroupoid;
use crate::error::{Error, Result};

/// Functor between finite groupoids, checked at construction.
#[derive(Clone, Debug)]
pub struct GroupoidMorphism<'a> {
    domain: &'a FiniteGroupoid,
    codomain: &'a FiniteGroupoid,
    object_map: Vec<usize>,
    arrow_map: Vec<usize>,
}

/// Why a morphism is not a weak equivalence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EquivalenceFailure {
    /// No arrow connects this codomain object to the image.
    ObjectNotHit { object: usize },
    /// The arrows `x → y` do not map bijectively onto `F(x) → F(y)`.
    ArrowMismatch { x: usize, y: usize, domain_arrows: usize, codomain_arrows: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceVerdict {
    pub equivalence: bool,
    pub certificate: Option<EquivalenceFailure>,
}

impl<'a> GroupoidMorphism<'a> {
    pub fn new(
        domain: &'a FiniteGroupoid,
        codomain: &'a FiniteGroupoid,
        object_map: Vec<usize>,
        arrow_map: Vec<usize>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::MorphismNotFunctorial(m));
        if object_map.len() != domain.object_count() || arrow_map.len() != domain.arrow_count() {
            return bad("object or arrow map has the wrong length".into());
        }
        if object_map.iter().any(|&x| x >= codomain.object_count()) || arrow_map.iter().any(|&a| a >= codomain.arrow_count()) {
            return bad("map leaves the codomain".into());
        }
        for a in 0..domain.arrow_count() {
            let fa = arrow_map[a];
            if codomain.source(fa) != object_map[domain.source(a)] {
                return bad(format!("source not preserved at arrow {a}"));
            }
            if codomain.target(fa) != object_map[domain.target(a)] {
                return bad(format!("target not preserved at arrow {a}"));
            }
        }
        for x in 0..domain.object_count() {
            if arrow_map[domain.identity(x)] != codomain.identity(object_map[x]) {
                return bad(format!("identity not preserved at object {x}"));
            }
        }
        for a in 0..domain.arrow_count() {
            for &b in domain.arrows_from(domain.target(a)) {
                let ab = domain.compose(a, b).expect("composable");
                if codomain.compose(arrow_map[a], arrow_map[b]) != Some(arrow_map[ab]) {
                    return bad(format!("composition not preserved on ({a}, {b})"));
                }
            }
        }
        Ok(Self { domain, codomain, object_map, arrow_map })
    }

    pub fn identity(g: &'a FiniteGroupoid) -> Self {
        Self::new(g, g, (0..g.object_count()).collect(), (0..g.arrow_count()).collect()).expect("identity functor")
    }

    /// Functor between translation groupoids on simplices induced by an
    /// equivariant cell map `f(σ·g) = f(σ)·φ(g)` and a homomorphism `φ`.
    ///
    /// `cell_map[d][i]` is the image of the `d`-simplex `i`.
    pub fn from_equivariant(
        domain: &'a FiniteGroupoid,
        codomain: &'a FiniteGroupoid,
        dom_action: &SimplicialAction,
        cod_action: &SimplicialAction,
        cell_map: &[Vec<usize>],
        hom: &[usize],
    ) -> Result<Self> {
        dom_action
            .group()
            .check_homomorphism(cod_action.group(), hom)
            .map_err(|e| Error::MorphismNotFunctorial(e.to_string()))?;
        let (ds, cs) = (dom_action.space(), cod_action.space());
        if cell_map.len() != ds.dim() + 1 || (0..=ds.dim()).any(|d| cell_map[d].len() != ds.count(d)) {
            return Err(Error::MorphismNotFunctorial("cell map has the wrong shape".into()));
        }
        let offsets = |s: &crate::groupoid::SimplicialComplex| -> Vec<usize> {
            (0..=s.dim() + 1).scan(0, |acc, d| {
                let o = *acc;
                *acc += s.count(d);
                Some(o)
            })
            .collect()
        };
        let cof = offsets(cs);
        let mut object_map = Vec::with_capacity(ds.cell_count());
        for d in 0..=ds.dim() {
            for i in 0..ds.count(d) {
                let j = cell_map[d][i];
                if d > cs.dim() || j >= cs.count(d) {
                    return Err(Error::MorphismNotFunctorial(format!("cell ({d}, {i}) maps outside the codomain")));
                }
                object_map.push(cof[d] + j);
            }
        }
        let (n, m) = (dom_action.group().order(), cod_action.group().order());
        let arrow_map = (0..domain.arrow_count()).map(|a| object_map[a / n] * m + hom[a % n]).collect();
        Self::new(domain, codomain, object_map, arrow_map)
    }

    pub fn domain(&self) -> &FiniteGroupoid {
        self.domain
    }

    pub fn codomain(&self) -> &FiniteGroupoid {
        self.codomain
    }

    pub fn object_map(&self) -> &[usize] {
        &self.object_map
    }

    pub fn arrow_map(&self) -> &[usize] {
        &self.arrow_map
    }

    /// Composite `self` then `next`.
    pub fn then(&self, next: &GroupoidMorphism<'a>) -> Result<GroupoidMorphism<'a>> {
        if !std::ptr::eq(self.codomain, next.domain) && self.codomain != next.domain {
            return Err(Error::MorphismNotFunctorial("composable morphisms must share a groupoid".into()));
        }
        let objects = self.object_map.iter().map(|&x| next.object_map[x]).collect();
        let arrows = self.arrow_map.iter().map(|&a| next.arrow_map[a]).collect();
        Self::new(self.domain, next.codomain, objects, arrows)
    }

    /// Fully faithful and essentially surjective.
    pub fn is_weak_equivalence(&self) -> EquivalenceVerdict {
        let fail = |f| EquivalenceVerdict { equivalence: false, certificate: Some(f) };
        let (dom, cod) = (self.domain, self.codomain);
        let mut hit = vec![false; cod.object_count()];
        for &y in &self.object_map {
            hit[y] = true;
        }
        for y in 0..cod.object_count() {
            if !hit[y] && !cod.arrows_from(y).iter().any(|&a| hit[cod.target(a)]) {
                return fail(EquivalenceFailure::ObjectNotHit { object: y });
            }
        }
        for x in 0..dom.object_count() {
            let mut by_target: HashMap<usize, Vec<usize>> = HashMap::new();
            for &a in dom.arrows_from(x) {
                by_target.entry(dom.target(a)).or_default().push(a);
            }
            for y in 0..dom.object_count() {
                let arrows = by_target.get(&y).map_or(&[][..], Vec::as_slice);
                let (fx, fy) = (self.object_map[x], self.object_map[y]);
                let cod_count = cod.arrows_from(fx).iter().filter(|&&a| cod.target(a) == fy).count();
                let mut images: Vec<usize> = arrows.iter().map(|&a| self.arrow_map[a]).collect();
                images.sort_unstable();
                images.dedup();
                if images.len() != arrows.len() || arrows.len() != cod_count {
                    return fail(EquivalenceFailure::ArrowMismatch {
                        x,
                        y,
                        domain_arrows: arrows.len(),
                        codomain_arrows: cod_count,
                    });
                }
            }
        }
        EquivalenceVerdict { equivalence: true, certificate: None }
    }
}
