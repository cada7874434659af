//! Semilattice decomposition of a finite semigroup.
//!
//! The key object is the least congruence whose quotient is a commutative
//! band. Its classes induce the component subsemigroups and the quotient
//! is the meet table over class ids. Class ids are the minimal element
//! index in each class, so the whole decomposition is deterministic.

use crate::classify::check_basic;
use crate::error::{Error, Result};
use crate::table::{CayleyTable, Element};

struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Returns true when the call actually merged two classes.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        true
    }
}

/// An immutable partition of `0..n` into congruence classes.
///
/// The id of a class is the smallest element index it contains.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    class_of: Vec<usize>,
    class_count: usize,
}

impl Partition {
    fn from_union_find(mut uf: UnionFind) -> Self {
        let n = uf.parent.len();
        // Map every root to the minimal index in its class.
        let mut min_of_root = vec![usize::MAX; n];
        for x in 0..n {
            let r = uf.find(x);
            min_of_root[r] = min_of_root[r].min(x);
        }
        let class_of: Vec<usize> = (0..n).map(|x| min_of_root[uf.find(x)]).collect();
        let mut ids: Vec<usize> = class_of.clone();
        ids.sort_unstable();
        ids.dedup();
        Partition {
            class_of,
            class_count: ids.len(),
        }
    }

    pub fn size(&self) -> usize {
        self.class_of.len()
    }

    pub fn class_count(&self) -> usize {
        self.class_count
    }

    /// Class id (minimal member index) of `x`.
    pub fn class_of(&self, x: Element) -> usize {
        self.class_of[x.0]
    }

    pub fn same_class(&self, a: Element, b: Element) -> bool {
        self.class_of[a.0] == self.class_of[b.0]
    }

    /// Sorted class ids.
    pub fn class_ids(&self) -> Vec<usize> {
        let mut ids = self.class_of.clone();
        ids.sort_unstable();
        ids.dedup();
        ids
    }

    /// Classes as ascending element lists, ordered by class id.
    pub fn classes(&self) -> Vec<Vec<Element>> {
        self.class_ids()
            .iter()
            .map(|&id| {
                (0..self.class_of.len())
                    .filter(|&x| self.class_of[x] == id)
                    .map(Element)
                    .collect()
            })
            .collect()
    }
}

/// Smallest congruence on `s` containing the given pairs: the equivalence
/// closure of the pairs, repeatedly closed under left and right
/// translation until a full sweep makes no merge.
pub fn congruence_closure(s: &CayleyTable, pairs: &[(Element, Element)]) -> Result<Partition> {
    s.require_associative()?;
    let n = s.order();
    let mut uf = UnionFind::new(n);
    for &(a, b) in pairs {
        if a.0 >= n || b.0 >= n {
            return Err(Error::input(format!(
                "pair ({}, {}) out of range for order {n}",
                a.0, b.0
            )));
        }
        uf.union(a.0, b.0);
    }
    loop {
        let mut changed = false;
        for x in 0..n {
            for y in x + 1..n {
                if uf.find(x) != uf.find(y) {
                    continue;
                }
                for t in 0..n {
                    changed |= uf.union(s.at(t, x), s.at(t, y));
                    changed |= uf.union(s.at(x, t), s.at(y, t));
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok(Partition::from_union_find(uf))
}

/// Least congruence whose quotient is a semilattice: the closure of all
/// pairs `(x*x, x)` and `(x*y, y*x)`.
pub fn least_semilattice_congruence(s: &CayleyTable) -> Result<Partition> {
    s.require_associative()?;
    let n = s.order();
    let mut pairs = Vec::with_capacity(n * n);
    for x in 0..n {
        pairs.push((Element(s.at(x, x)), Element(x)));
        for y in x + 1..n {
            pairs.push((Element(s.at(x, y)), Element(s.at(y, x))));
        }
    }
    let partition = congruence_closure(s, &pairs)?;
    // The generators force these; a failure would be a closure bug.
    for x in 0..n {
        if !partition.same_class(Element(s.at(x, x)), Element(x)) {
            return Err(Error::invariant("quotient is not idempotent"));
        }
        for y in 0..n {
            if !partition.same_class(Element(s.at(x, y)), Element(s.at(y, x))) {
                return Err(Error::invariant("quotient is not commutative"));
            }
        }
    }
    Ok(partition)
}

/// One congruence class with its induced operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    /// Class id in the partition (minimal member index).
    pub class_id: usize,
    /// Members, ascending, as indices into the parent table.
    pub elements: Vec<Element>,
    /// Induced table; element `i` is `elements[i]` in the parent.
    pub table: CayleyTable,
}

/// Result of [`decompose_semilattice`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemilatticeDecomposition {
    pub partition: Partition,
    /// One component per class, ordered by class id.
    pub components: Vec<Component>,
    /// Meet table over classes; element `k` is the `k`-th smallest class id.
    pub quotient: CayleyTable,
}

impl SemilatticeDecomposition {
    /// Renders the quotient and each component as named `.sg` documents.
    pub fn sg_documents(&self, base: &str) -> Vec<(String, String)> {
        let mut docs = vec![(format!("{base}.quotient.sg"), self.quotient.to_sg())];
        for c in &self.components {
            docs.push((format!("{base}.class{}.sg", c.class_id), c.table.to_sg()));
        }
        docs
    }
}

/// Splits `s` along its least semilattice congruence.
///
/// Each component is verified closed under the operation and the
/// quotient is verified to be a semilattice; both are consequences of
/// the congruence construction, so failures are invariant failures.
pub fn decompose_semilattice(s: &CayleyTable) -> Result<SemilatticeDecomposition> {
    let partition = least_semilattice_congruence(s)?;
    let ids = partition.class_ids();
    let id_index = |id: usize| ids.binary_search(&id).expect("class id present");

    let mut components = Vec::with_capacity(ids.len());
    for (&id, members) in ids.iter().zip(partition.classes()) {
        let local = |x: usize| -> Result<usize> {
            members
                .binary_search(&Element(x))
                .map_err(|_| Error::invariant(format!("class {id} is not closed: product {x} escapes")))
        };
        let m = members.len();
        let mut entries = Vec::with_capacity(m * m);
        for &a in &members {
            for &b in &members {
                entries.push(local(s.at(a.0, b.0))?);
            }
        }
        let names: Vec<String> = members
            .iter()
            .map(|&e| format!("{}_{id}", s.name(e)))
            .collect();
        let table = CayleyTable::new(m, entries)?.with_names(names)?;
        components.push(Component {
            class_id: id,
            elements: members,
            table,
        });
    }

    let k = ids.len();
    let mut meet = vec![0usize; k * k];
    for (ai, &a_id) in ids.iter().enumerate() {
        for (bi, &b_id) in ids.iter().enumerate() {
            // Well-definedness across all representatives is the
            // congruence property; verify rather than trust.
            let mut value: Option<usize> = None;
            for a in components[ai].elements.iter() {
                for b in components[bi].elements.iter() {
                    let c = partition.class_of(Element(s.at(a.0, b.0)));
                    match value {
                        None => value = Some(c),
                        Some(v) if v != c => {
                            return Err(Error::invariant(format!(
                                "product of classes {a_id} and {b_id} is not well-defined"
                            )))
                        }
                        _ => {}
                    }
                }
            }
            meet[ai * k + bi] = id_index(value.expect("classes are nonempty"));
        }
    }
    let quotient = CayleyTable::new(k, meet)?
        .with_names(ids.iter().map(|id| format!("c{id}")).collect::<Vec<_>>())?;
    if !quotient.is_associative() {
        return Err(Error::invariant("quotient is not associative"));
    }
    for a in 0..k {
        if quotient.at(a, a) != a {
            return Err(Error::invariant("quotient is not idempotent"));
        }
        for b in 0..k {
            if quotient.at(a, b) != quotient.at(b, a) {
                return Err(Error::invariant("quotient is not commutative"));
            }
        }
    }

    Ok(SemilatticeDecomposition {
        partition,
        components,
        quotient,
    })
}

/// Agreement report between separativity and cancellativity of all
/// decomposition components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComponentCancellativityAudit {
    pub separative: bool,
    pub components_cancellative: bool,
    /// `separative == components_cancellative`.
    pub agree: bool,
}

/// Checks whether `s` is separative exactly when every component of its
/// semilattice decomposition is cancellative. Disagreement is reported,
/// not an error: the caller decides whether it is a finding.
pub fn audit_component_cancellativity(s: &CayleyTable) -> Result<ComponentCancellativityAudit> {
    let separative = check_basic(s)?.separative;
    let d = decompose_semilattice(s)?;
    let mut components_cancellative = true;
    for c in &d.components {
        components_cancellative &= check_basic(&c.table)?.cancellative;
    }
    Ok(ComponentCancellativityAudit {
        separative,
        components_cancellative,
        agree: separative == components_cancellative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{brandt_b2, cyclic_group, enumerate_semigroups, left_zero};
    use proptest::prelude::*;

    /// The monoid {1, x, x^2} with x^3 = x^2.
    fn pow_monoid() -> CayleyTable {
        CayleyTable::from_rows(&[vec![0, 1, 2], vec![1, 2, 2], vec![2, 2, 2]])
            .unwrap()
            .with_names(vec!["1", "x", "xx"])
            .unwrap()
    }

    #[test]
    fn empty_pair_set_gives_discrete_partition() {
        let b2 = brandt_b2();
        let p = congruence_closure(&b2, &[]).unwrap();
        assert_eq!(p.class_count(), 5);
        assert_eq!(p.class_ids(), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn identifying_a_with_zero_collapses_brandt_b2() {
        let b2 = brandt_b2();
        let p = congruence_closure(&b2, &[(Element(3), Element(0))]).unwrap();
        assert_eq!(p.class_count(), 1);
    }

    #[test]
    fn pow_monoid_splits_into_identity_and_power_chain() {
        let d = decompose_semilattice(&pow_monoid()).unwrap();
        assert_eq!(d.partition.class_count(), 2);
        assert_eq!(d.components[0].elements, vec![Element(0)]);
        assert_eq!(d.components[1].elements, vec![Element(1), Element(2)]);
        // Quotient is the two-element chain with the lower class absorbing.
        assert_eq!(d.quotient.entries(), &[0, 1, 1, 1]);
        // {x, x^2} is not cancellative: x * x = x * x^2.
        let audit = audit_component_cancellativity(&pow_monoid()).unwrap();
        assert!(!audit.separative && !audit.components_cancellative && audit.agree);
    }

    #[test]
    fn brandt_b2_is_semilattice_indecomposable() {
        let d = decompose_semilattice(&brandt_b2()).unwrap();
        assert_eq!(d.partition.class_count(), 1);
        assert_eq!(d.quotient.order(), 1);
        assert_eq!(d.components[0].table.order(), 5);
        let audit = audit_component_cancellativity(&brandt_b2()).unwrap();
        assert!(!audit.separative && !audit.components_cancellative && audit.agree);
    }

    #[test]
    fn groups_are_indecomposable_and_agree() {
        let z6 = cyclic_group(6).unwrap();
        let d = decompose_semilattice(&z6).unwrap();
        assert_eq!(d.partition.class_count(), 1);
        let audit = audit_component_cancellativity(&z6).unwrap();
        assert!(audit.separative && audit.components_cancellative && audit.agree);
    }

    #[test]
    fn semilattice_decomposes_into_singletons() {
        // A three-element chain semilattice: meet = min.
        let chain = CayleyTable::from_fn(3, |i, j| i.min(j)).unwrap();
        let d = decompose_semilattice(&chain).unwrap();
        assert_eq!(d.partition.class_count(), 3);
        assert!(d.components.iter().all(|c| c.table.order() == 1));
        assert_eq!(d.quotient.entries(), chain.entries());
    }

    #[test]
    fn class_products_respect_the_quotient() {
        for s in [pow_monoid(), brandt_b2(), left_zero(3).unwrap()] {
            let d = decompose_semilattice(&s).unwrap();
            let ids = d.partition.class_ids();
            for a in s.elements() {
                for b in s.elements() {
                    let ab = Element(s.at(a.0, b.0));
                    let ai = ids.binary_search(&d.partition.class_of(a)).unwrap();
                    let bi = ids.binary_search(&d.partition.class_of(b)).unwrap();
                    let expect = ids[d.quotient.at(ai, bi)];
                    assert_eq!(d.partition.class_of(ab), expect);
                }
            }
        }
    }

    #[test]
    fn separative_tables_have_cancellative_components_up_to_order_3() {
        for n in 1..=3 {
            for s in enumerate_semigroups(n).unwrap() {
                let audit = audit_component_cancellativity(&s).unwrap();
                if audit.separative {
                    assert!(audit.components_cancellative);
                }
            }
        }
    }

    #[test]
    fn sg_documents_name_components_by_class() {
        let d = decompose_semilattice(&pow_monoid()).unwrap();
        let docs = d.sg_documents("m");
        assert_eq!(docs[0].0, "m.quotient.sg");
        assert_eq!(docs[1].0, "m.class0.sg");
        assert!(docs[1].1.contains("names 1_0"));
        assert_eq!(docs[2].0, "m.class1.sg");
        assert!(docs[2].1.contains("names x_1 xx_1"));
    }

    proptest! {
        /// The closure is independent of the order pairs are presented in.
        #[test]
        fn closure_is_order_independent(
            raw in proptest::collection::vec((0usize..5, 0usize..5), 0..6),
            rotate in 0usize..6,
        ) {
            let b2 = brandt_b2();
            let pairs: Vec<(Element, Element)> =
                raw.iter().map(|&(a, b)| (Element(a), Element(b))).collect();
            let mut shuffled = pairs.clone();
            let window = shuffled.len().saturating_sub(1);
            shuffled.rotate_left(rotate.min(window));
            shuffled.reverse();
            let p1 = congruence_closure(&b2, &pairs).unwrap();
            let p2 = congruence_closure(&b2, &shuffled).unwrap();
            prop_assert_eq!(p1, p2);
        }
    }
}
