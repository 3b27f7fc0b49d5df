//! Brute-force congruence machinery over explicit multiplication tables.
//!
//! Nothing here knows about ranks, Green's relations or normal subgroups; a
//! monoid is a table and a congruence is a partition of its indices.

use std::collections::{BTreeSet, HashMap};
use std::hash::Hash;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the size of a table built by [`IndexedMonoid::build`].
pub const DEFAULT_TABLE_CAP: usize = 1000;
/// Default cap on the size of a table handed to [`all_congruences`].
pub const DEFAULT_LATTICE_CAP: usize = 150;
/// Tables up to this size are checked for associativity on construction.
pub const ASSOCIATIVITY_CHECK_LIMIT: usize = 300;

/// A finite monoid on `{0..size}` given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TableJson", into = "TableJson")]
pub struct FiniteMonoidTable {
    size: usize,
    identity: usize,
    table: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    size: usize,
    identity: usize,
    rows: Vec<Vec<u32>>,
}

impl TryFrom<TableJson> for FiniteMonoidTable {
    type Error = Error;

    fn try_from(json: TableJson) -> Result<Self> {
        if json.rows.len() != json.size || json.rows.iter().any(|r| r.len() != json.size) {
            return Err(Error::InvalidElement(format!(
                "table rows do not form a {0}x{0} square",
                json.size
            )));
        }
        FiniteMonoidTable::new(json.size, json.identity, json.rows.concat())
    }
}

impl From<FiniteMonoidTable> for TableJson {
    fn from(t: FiniteMonoidTable) -> Self {
        let rows = t.table.chunks(t.size.max(1)).map(<[u32]>::to_vec).collect();
        TableJson {
            size: t.size,
            identity: t.identity,
            rows,
        }
    }
}

impl FiniteMonoidTable {
    /// `table[a * size + b]` is the product `ab`.
    pub fn new(size: usize, identity: usize, table: Vec<u32>) -> Result<Self> {
        if table.len() != size * size {
            return Err(Error::InvalidElement(format!(
                "a table of size {size} needs {} entries, got {}",
                size * size,
                table.len()
            )));
        }
        if size > 0 && identity >= size {
            return Err(Error::InvalidElement(format!(
                "identity {identity} out of range"
            )));
        }
        if table.iter().any(|&x| x as usize >= size) {
            return Err(Error::InvalidElement("table entry out of range".into()));
        }
        let t = FiniteMonoidTable {
            size,
            identity,
            table,
        };
        for a in 0..size {
            if t.mul(identity, a) != a || t.mul(a, identity) != a {
                return Err(Error::InvalidElement(format!(
                    "{identity} is not a two-sided identity (fails at {a})"
                )));
            }
        }
        if size <= ASSOCIATIVITY_CHECK_LIMIT {
            if let Some((a, b, c)) = t.associativity_failure() {
                return Err(Error::InvalidElement(format!(
                    "table is not associative at ({a},{b},{c})"
                )));
            }
        }
        Ok(t)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b] as usize
    }

    fn associativity_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.size;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }
}

/// A table together with the elements it indexes.
#[derive(Debug, Clone)]
pub struct IndexedMonoid<T> {
    elements: Vec<T>,
    index: HashMap<T, usize>,
    table: FiniteMonoidTable,
}

impl<T: Clone + Eq + Hash> IndexedMonoid<T> {
    /// Tabulates `mul` over `elements`, which must be closed under it and
    /// contain `identity`.
    pub fn build(
        elements: Vec<T>,
        identity: &T,
        mul: impl Fn(&T, &T) -> T,
        cap: usize,
    ) -> Result<Self> {
        let n = elements.len();
        if n > cap {
            return Err(Error::CapExceeded {
                what: "monoid table".into(),
                size: n,
                cap,
            });
        }
        let index: HashMap<T, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        if index.len() != n {
            return Err(Error::InvalidElement("duplicate elements".into()));
        }
        let id = *index
            .get(identity)
            .ok_or_else(|| Error::InvalidElement("identity not among the elements".into()))?;
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                let ab = mul(a, b);
                let k = index
                    .get(&ab)
                    .ok_or_else(|| Error::InvalidElement("elements are not closed".into()))?;
                table.push(*k as u32);
            }
        }
        let table = FiniteMonoidTable::new(n, id, table)?;
        Ok(IndexedMonoid {
            elements,
            index,
            table,
        })
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn table(&self) -> &FiniteMonoidTable {
        &self.table
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.index.get(x).copied()
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    pub fn closure_of(&self, a: &T, b: &T) -> Result<CongruencePartition> {
        let ia = self
            .index_of(a)
            .ok_or_else(|| Error::InvalidElement("first generator not in the monoid".into()))?;
        let ib = self
            .index_of(b)
            .ok_or_else(|| Error::InvalidElement("second generator not in the monoid".into()))?;
        Ok(congruence_closure(&self.table, &[(ia, ib)]))
    }
}

/// A partition of `{0..n}` stored as canonical block labels: blocks are
/// numbered in order of their least element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CongruencePartition {
    labels: Vec<u32>,
}

impl CongruencePartition {
    pub fn identity(n: usize) -> Self {
        CongruencePartition {
            labels: (0..n as u32).collect(),
        }
    }

    pub fn universal(n: usize) -> Self {
        CongruencePartition { labels: vec![0; n] }
    }

    /// Relabels an arbitrary block assignment into canonical form.
    pub fn from_labels<L: Copy + Eq + Hash>(raw: &[L]) -> Self {
        let mut seen: HashMap<L, u32> = HashMap::new();
        let labels = raw
            .iter()
            .map(|l| {
                let next = seen.len() as u32;
                *seen.entry(*l).or_insert(next)
            })
            .collect();
        CongruencePartition { labels }
    }

    /// Partition from blocks covering `{0..n}` exactly once.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut raw = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            for &x in block {
                if x >= n || raw[x] != usize::MAX {
                    return Err(Error::InvalidElement(format!(
                        "blocks do not partition 0..{n} (element {x})"
                    )));
                }
                raw[x] = b;
            }
        }
        if raw.contains(&usize::MAX) {
            return Err(Error::InvalidElement(format!("blocks do not cover 0..{n}")));
        }
        Ok(Self::from_labels(&raw))
    }

    /// Partition induced by an equivalence relation given as a predicate.
    /// The predicate is only consulted against block representatives, so it
    /// must already be an equivalence.
    pub fn from_equivalence(n: usize, related: impl Fn(usize, usize) -> bool) -> Self {
        let mut reps: Vec<usize> = Vec::new();
        let mut labels = Vec::with_capacity(n);
        for x in 0..n {
            match reps.iter().position(|&r| related(r, x)) {
                Some(b) => labels.push(b as u32),
                None => {
                    labels.push(reps.len() as u32);
                    reps.push(x);
                }
            }
        }
        CongruencePartition { labels }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m as usize + 1)
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.block_count()];
        for (x, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(x);
        }
        out
    }

    /// Every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &CongruencePartition) -> bool {
        let mut image = vec![u32::MAX; self.block_count()];
        for (x, &l) in self.labels.iter().enumerate() {
            let o = other.labels[x];
            if image[l as usize] == u32::MAX {
                image[l as usize] = o;
            } else if image[l as usize] != o {
                return false;
            }
        }
        true
    }

    /// Generating pairs: each element paired with the least element of its block.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut first = vec![usize::MAX; self.block_count()];
        let mut out = Vec::new();
        for (x, &l) in self.labels.iter().enumerate() {
            let f = &mut first[l as usize];
            if *f == usize::MAX {
                *f = x;
            } else {
                out.push((*f, x));
            }
        }
        out
    }

    /// First pair `(a, b)` on which `related` disagrees with the partition.
    pub fn first_disagreement(
        &self,
        related: impl Fn(usize, usize) -> bool,
    ) -> Option<(usize, usize)> {
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                if related(a, b) != self.same_block(a, b) {
                    return Some((a, b));
                }
            }
        }
        None
    }
}

/// The least congruence containing `pairs`.
pub fn congruence_closure(
    table: &FiniteMonoidTable,
    pairs: &[(usize, usize)],
) -> CongruencePartition {
    let uf = UnionFind::new(table.size());
    close_from(table, uf, pairs.iter().copied())
}

/// The join of two congruences: the least congruence containing both.
pub fn join(
    table: &FiniteMonoidTable,
    a: &CongruencePartition,
    b: &CongruencePartition,
) -> CongruencePartition {
    let mut uf = UnionFind::new(table.size());
    for (x, y) in a.pairs() {
        uf.union(x, y);
    }
    close_from(table, uf, b.pairs())
}

// `uf` must already describe a congruence.
fn close_from(
    table: &FiniteMonoidTable,
    mut uf: UnionFind<usize>,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> CongruencePartition {
    let n = table.size();
    let mut pending: Vec<(usize, usize)> = pairs.into_iter().collect();
    pending.reverse();
    while let Some((a, b)) = pending.pop() {
        if !uf.union(a, b) {
            continue;
        }
        for s in 0..n {
            pending.push((table.mul(a, s), table.mul(b, s)));
            pending.push((table.mul(s, a), table.mul(s, b)));
        }
    }
    let raw: Vec<usize> = (0..n).map(|x| uf.find_mut(x)).collect();
    CongruencePartition::from_labels(&raw)
}

/// Checks directly that the partition is compatible with multiplication.
pub fn is_congruence(table: &FiniteMonoidTable, partition: &CongruencePartition) -> bool {
    let n = table.size();
    partition.pairs().into_iter().all(|(a, b)| {
        (0..n).all(|s| {
            partition.same_block(table.mul(a, s), table.mul(b, s))
                && partition.same_block(table.mul(s, a), table.mul(s, b))
        })
    })
}

/// All principal congruences, deduplicated, including the identity.
pub fn principal_congruences(table: &FiniteMonoidTable) -> BTreeSet<CongruencePartition> {
    let n = table.size();
    let mut out = BTreeSet::new();
    out.insert(CongruencePartition::identity(n));
    for a in 0..n {
        for b in a + 1..n {
            out.insert(congruence_closure(table, &[(a, b)]));
        }
    }
    out
}

/// The full congruence lattice, found by closing the principal congruences
/// under joins.
pub fn all_congruences(
    table: &FiniteMonoidTable,
    cap: usize,
) -> Result<BTreeSet<CongruencePartition>> {
    if table.size() > cap {
        return Err(Error::CapExceeded {
            what: "congruence lattice enumeration".into(),
            size: table.size(),
            cap,
        });
    }
    let principal: Vec<CongruencePartition> = principal_congruences(table).into_iter().collect();
    let mut all: BTreeSet<CongruencePartition> = principal.iter().cloned().collect();
    let mut frontier = principal.clone();
    while let Some(c) = frontier.pop() {
        for p in &principal {
            if p.refines(&c) {
                continue;
            }
            let j = join(table, &c, p);
            if all.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::{enumerate_elements, MonoidFamily, Transformation};

    fn indexed(fam: MonoidFamily) -> IndexedMonoid<Transformation> {
        IndexedMonoid::build(
            enumerate_elements(fam, 4).unwrap(),
            &fam.identity(),
            |a, b| a.compose_unchecked(b),
            DEFAULT_TABLE_CAP,
        )
        .unwrap()
    }

    #[test]
    fn table_sizes() {
        assert_eq!(indexed(MonoidFamily::t(2)).size(), 4);
        assert_eq!(indexed(MonoidFamily::i(3)).size(), 34);
    }

    #[test]
    fn closure_examples() {
        let m = indexed(MonoidFamily::t(2));
        let t = m.table();
        assert_eq!(congruence_closure(t, &[]), CongruencePartition::identity(4));
        assert_eq!(
            congruence_closure(t, &[(2, 2)]),
            CongruencePartition::identity(4)
        );
        let c1 = Transformation::parse(MonoidFamily::t(2), "[1,1]").unwrap();
        let c2 = Transformation::parse(MonoidFamily::t(2), "[2,2]").unwrap();
        let p = m.closure_of(&c1, &c2).unwrap();
        assert_eq!(p.block_count(), 3);
        assert!(p.same_block(m.index_of(&c1).unwrap(), m.index_of(&c2).unwrap()));
    }

    #[test]
    fn lattice_counts() {
        let count = |fam| {
            all_congruences(indexed(fam).table(), DEFAULT_LATTICE_CAP)
                .unwrap()
                .len()
        };
        assert_eq!(count(MonoidFamily::t(2)), 4);
        assert_eq!(count(MonoidFamily::t(3)), 7);
        let trivial = FiniteMonoidTable::new(1, 0, vec![0]).unwrap();
        assert_eq!(all_congruences(&trivial, 10).unwrap().len(), 1);
    }

    #[test]
    fn lattice_members_are_congruences() {
        let m = indexed(MonoidFamily::i(2));
        for c in all_congruences(m.table(), DEFAULT_LATTICE_CAP).unwrap() {
            assert!(is_congruence(m.table(), &c));
        }
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(FiniteMonoidTable::new(2, 0, vec![0, 1, 1]).is_err());
        assert!(FiniteMonoidTable::new(3, 0, vec![0, 1, 2, 1, 2, 0, 2, 1, 1]).is_err());
        let big = indexed(MonoidFamily::t(3));
        assert!(all_congruences(big.table(), 10).is_err());
    }

    #[test]
    fn table_json_round_trip() {
        let m = indexed(MonoidFamily::t(2));
        let json = serde_json::to_string(m.table()).unwrap();
        let back: FiniteMonoidTable = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, m.table());
    }

    #[test]
    fn partition_helpers() {
        let p = CongruencePartition::from_labels(&[5, 3, 5, 7]);
        assert_eq!(p.labels(), &[0, 1, 0, 2]);
        assert_eq!(p.blocks(), vec![vec![0, 2], vec![1], vec![3]]);
        assert!(p.refines(&CongruencePartition::universal(4)));
        assert!(CongruencePartition::identity(4).refines(&p));
        assert!(!p.refines(&CongruencePartition::identity(4)));
        let q = CongruencePartition::from_equivalence(4, |a, b| (a % 2) == (b % 2));
        assert_eq!(q.labels(), &[0, 1, 0, 1]);
        assert_eq!(
            CongruencePartition::from_blocks(3, &[vec![2], vec![0, 1]]).unwrap(),
            CongruencePartition::from_labels(&[1, 1, 0])
        );
    }
}
