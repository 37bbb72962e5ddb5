use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Finite group given by its full multiplication table.
///
/// Elements are `0..order`; `table[g][h]` is the product `gh`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupRepr", into = "GroupRepr")]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct GroupRepr {
    table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl TryFrom<GroupRepr> for FiniteGroup {
    type Error = Error;

    fn try_from(r: GroupRepr) -> Result<Self> {
        let g = FiniteGroup::from_table(r.table)?;
        match r.labels {
            Some(l) => g.with_labels(l),
            None => Ok(g),
        }
    }
}

impl From<FiniteGroup> for GroupRepr {
    fn from(g: FiniteGroup) -> Self {
        let default = (0..g.order()).map(|i| i.to_string()).collect::<Vec<_>>();
        let labels = (g.labels != default).then_some(g.labels);
        GroupRepr { table: g.table, labels }
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("order", &self.order()).field("labels", &self.labels).finish()
    }
}

impl FiniteGroup {
    /// Validates closure, associativity, identity and inverses exhaustively.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        for (g, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidGroup(format!("row {g} has length {}, expected {n}", row.len())));
            }
            if let Some(&x) = row.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidGroup(format!("entry {x} in row {g} out of range")));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::InvalidGroup("no identity element".into()))?;
        let mut inverses = vec![0; n];
        for g in 0..n {
            inverses[g] = (0..n)
                .find(|&h| table[g][h] == identity && table[h][g] == identity)
                .ok_or_else(|| Error::InvalidGroup(format!("element {g} has no inverse")))?;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::InvalidGroup(format!("associativity fails on ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let labels = (0..n).map(|i| i.to_string()).collect();
        Ok(Self { table, identity, inverses, labels })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.order() {
            return Err(Error::InvalidGroup(format!("{} labels for a group of order {}", labels.len(), self.order())));
        }
        if labels.iter().collect::<BTreeSet<_>>().len() != labels.len() {
            return Err(Error::InvalidGroup("duplicate element labels".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Group generated by permutations of `0..degree`, composed left to right:
    /// `(pq)(x) = q(p(x))`. Element 0 is the identity; the rest follow in
    /// breadth-first order over the generators.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for p in generators {
            let mut seen = vec![false; degree];
            if p.len() != degree || p.iter().any(|&x| x >= degree || std::mem::replace(&mut seen[x], true)) {
                return Err(Error::InvalidGroup(format!("{p:?} is not a permutation of {degree} points")));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(i) = queue.pop_front() {
            for s in generators {
                let p: Vec<usize> = elems[i].iter().map(|&x| s[x]).collect();
                if !index.contains_key(&p) {
                    index.insert(p.clone(), elems.len());
                    queue.push_back(elems.len());
                    elems.push(p);
                }
            }
        }
        let table = elems
            .iter()
            .map(|p| elems.iter().map(|q| index[&p.iter().map(|&x| q[x]).collect::<Vec<_>>()]).collect())
            .collect();
        Self::from_table(table)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(table).expect("cyclic table is a group")
    }

    /// Direct product; `(g, h)` has index `g * |H| + h` and label `(g,h)`.
    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let table = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb))
                    .collect()
            })
            .collect();
        let labels = (0..na * nb).map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb))).collect();
        Self::from_table(table).expect("product of groups").with_labels(labels).expect("distinct labels")
    }

    /// Symmetries of the regular `n`-gon, order `2n`.
    pub fn dihedral(n: usize) -> Self {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(n, &[rot, refl]).expect("dihedral generators")
    }

    pub fn symmetric3() -> Self {
        Self::from_permutations(3, &[vec![1, 0, 2], vec![0, 2, 1]]).expect("S3 generators")
    }

    /// Quaternion group via its regular representation on 8 points.
    pub fn quaternion() -> Self {
        // points 0..8 stand for 1, i, j, k, -1, -i, -j, -k; right multiplication by i and j
        let i = vec![1, 4, 7, 2, 5, 0, 3, 6];
        let j = vec![2, 3, 4, 5, 6, 7, 0, 1];
        Self::from_permutations(8, &[i, j]).expect("quaternion generators")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, g: usize, h: usize) -> usize {
        self.table[g][h]
    }

    pub fn inv(&self, g: usize) -> usize {
        self.inverses[g]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Non-identity elements in increasing index order.
    pub fn nontrivial(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(move |&g| g != self.identity)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `h⁻¹ g h`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    pub fn centralizer(&self, g: usize) -> Vec<usize> {
        (0..self.order()).filter(|&h| self.mul(g, h) == self.mul(h, g)).collect()
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut classes = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let class: BTreeSet<usize> = (0..self.order()).map(|h| self.conjugate(g, h)).collect();
            for &c in &class {
                seen[c] = true;
            }
            classes.push(class.into_iter().collect());
        }
        classes
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).map(|g| self.element_order(g)).fold(1, num_integer::lcm)
    }

    /// Checks that `map` is a homomorphism `self → target`.
    pub fn check_homomorphism(&self, target: &FiniteGroup, map: &[usize]) -> Result<()> {
        if map.len() != self.order() || map.iter().any(|&x| x >= target.order()) {
            return Err(Error::GroupMismatch("homomorphism table has the wrong shape".into()));
        }
        for a in 0..self.order() {
            for b in 0..self.order() {
                if map[self.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::GroupMismatch(format!("map fails to be multiplicative on ({a}, {b})")));
                }
            }
        }
        Ok(())
    }
}

/// All groups of order at most 8 up to isomorphism, with short names.
pub fn small_groups() -> Vec<(String, FiniteGroup)> {
    let z = FiniteGroup::cyclic;
    let mut out: Vec<(String, FiniteGroup)> = (1..=8).map(|n| (format!("Z{n}"), z(n))).collect();
    out[0].0 = "trivial".into();
    out.push(("Z2xZ2".into(), FiniteGroup::product(&z(2), &z(2))));
    out.push(("Z4xZ2".into(), FiniteGroup::product(&z(4), &z(2))));
    out.push(("Z2xZ2xZ2".into(), FiniteGroup::product(&FiniteGroup::product(&z(2), &z(2)), &z(2))));
    out.push(("S3".into(), FiniteGroup::symmetric3()));
    out.push(("D4".into(), FiniteGroup::dihedral(4)));
    out.push(("Q8".into(), FiniteGroup::quaternion()));
    out.sort_by_key(|(_, g)| g.order());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_groups_have_expected_shapes() {
        let gs = small_groups();
        assert_eq!(gs.len(), 14);
        let get = |n: &str| gs.iter().find(|(m, _)| m == n).unwrap().1.clone();
        assert_eq!(get("S3").order(), 6);
        assert!(!get("S3").is_abelian());
        assert_eq!(get("S3").conjugacy_classes().len(), 3);
        assert_eq!(get("D4").order(), 8);
        assert_eq!(get("D4").conjugacy_classes().len(), 5);
        assert_eq!(get("Q8").order(), 8);
        assert_eq!(get("Q8").conjugacy_classes().len(), 5);
        // Q8 has a unique element of order 2, D4 has five
        let involutions = |g: &FiniteGroup| (0..g.order()).filter(|&x| g.element_order(x) == 2).count();
        assert_eq!(involutions(&get("Q8")), 1);
        assert_eq!(involutions(&get("D4")), 5);
        assert_eq!(get("Z4xZ2").exponent(), 4);
    }

    #[test]
    fn rejects_non_groups() {
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FiniteGroup::from_table(vec![vec![0, 1]]).is_err());
        // a loop that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FiniteGroup::from_table(t), Err(Error::InvalidGroup(_))));
    }

    #[test]
    fn product_labels_and_serde() {
        let g = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        assert_eq!(g.element("(1,0)"), Some(2));
        let json = serde_json::to_string(&g).unwrap();
        let back: FiniteGroup = serde_json::from_str(&json).unwrap();
        assert_eq!(back, g);
        let plain: FiniteGroup = serde_json::from_str(r#"{"table":[[0,1],[1,0]]}"#).unwrap();
        assert_eq!(plain, FiniteGroup::cyclic(2));
    }

    #[test]
    fn centralizers() {
        let s3 = FiniteGroup::symmetric3();
        let sizes: Vec<usize> = s3.conjugacy_classes().iter().map(|c| s3.centralizer(c[0]).len()).collect();
        assert_eq!(sizes, vec![6, 2, 3]);
    }
}
