//! Finite groups given by multiplication tables: conjugacy classes, subgroup
//! classes, cosets and the Sylow-cyclicity (meta-cyclic) test.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest group accepted by the constructors. Keeps tables small.
pub const MAX_GROUP_ORDER: usize = 1024;

/// Default bound for subgroup enumeration.
pub const DEFAULT_SUBGROUP_BOUND: usize = 48;

/// A finite group on element indices `0..order` with a full multiplication
/// table. `mul(a, b)` means "first `b`, then `a`" for permutation groups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    permutations: Option<Vec<Vec<usize>>>,
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

impl FiniteGroup {
    /// Closure of a list of permutations of `{0..m-1}` in image notation.
    ///
    /// Elements are numbered in breadth-first order from the identity
    /// (index 0), multiplying on the right by the generators in order.
    pub fn from_generators(perms: &[Vec<usize>]) -> Result<Self> {
        let degree = perms.first().map_or(0, Vec::len);
        for (index, p) in perms.iter().enumerate() {
            if p.len() != degree {
                return Err(Error::NonPermutation {
                    index,
                    reason: format!("length {} differs from {}", p.len(), degree),
                });
            }
            let mut seen = vec![false; degree];
            for &x in p {
                if x >= degree || std::mem::replace(&mut seen[x], true) {
                    return Err(Error::NonPermutation {
                        index,
                        reason: format!("image {x} is out of range or repeated"),
                    });
                }
            }
        }

        let id: Vec<usize> = (0..degree).collect();
        let mut elements = vec![id.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(id, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for s in perms {
                let y = compose(&elements[x], s);
                if !index.contains_key(&y) {
                    if elements.len() >= MAX_GROUP_ORDER {
                        return Err(Error::GroupTooLarge {
                            order: elements.len() + 1,
                            bound: MAX_GROUP_ORDER,
                        });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }

        let n = elements.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = index[&compose(&elements[a], &elements[b])];
            }
        }
        let generators = perms.iter().map(|p| index[p]).collect();
        let mut g = Self::from_parts(table, n, generators)?;
        g.permutations = Some(elements);
        Ok(g)
    }

    /// A group from an explicit Cayley table, validated for closure, the
    /// Latin property, identity and associativity. If no generators are
    /// given, a greedy generating set is chosen.
    pub fn from_table(rows: &[Vec<usize>], generators: Option<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > MAX_GROUP_ORDER / 4 {
            return Err(Error::GroupTooLarge {
                order: n,
                bound: MAX_GROUP_ORDER / 4,
            });
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has length {}", r.len())));
            }
            if let Some(&x) = r.iter().find(|&&x| x >= n) {
                return Err(Error::InvalidTable(format!("entry {x} out of range in row {i}")));
            }
            table.extend_from_slice(r);
        }
        let gens = match generators {
            Some(gs) => {
                if let Some(&x) = gs.iter().find(|&&x| x >= n) {
                    return Err(Error::InvalidTable(format!("generator {x} out of range")));
                }
                gs
            }
            None => Vec::new(),
        };
        let mut g = Self::from_parts(table, n, gens)?;
        if g.generators.is_empty() && n > 1 {
            let all: Vec<usize> = (0..n).collect();
            g.generators = g.greedy_generators(&all);
        }
        if g.generate(&g.generators).order() != n {
            return Err(Error::InvalidTable("listed generators do not generate the group".into()));
        }
        Ok(g)
    }

    fn from_parts(table: Vec<usize>, n: usize, generators: Vec<usize>) -> Result<Self> {
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                if std::mem::replace(&mut row[table[i * n + j]], true) {
                    return Err(Error::InvalidTable(format!("row {i} repeats an entry")));
                }
                if std::mem::replace(&mut col[table[j * n + i]], true) {
                    return Err(Error::InvalidTable(format!("column {i} repeats an entry")));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] == x && table[x * n + e] == x))
            .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::InvalidTable(format!("not associative at ({a}, {b}, {c})")));
                    }
                }
            }
        }
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a * n + b] == identity).expect("latin square has inverses"))
            .collect();
        Ok(FiniteGroup {
            order: n,
            table,
            identity,
            inverse,
            generators,
            permutations: None,
        })
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        Self::from_generators(&[]).expect("trivial group")
    }

    /// Cyclic group of order `n` as rotations of `n` points.
    pub fn cyclic(n: usize) -> Self {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_generators(&[rot]).expect("cyclic group")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn permutation(&self, a: usize) -> Option<&[usize]> {
        self.permutations.as_ref().map(|p| p[a].as_slice())
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn power(&self, a: usize, k: i64) -> usize {
        let n = self.element_order(a) as i64;
        (0..k.rem_euclid(n)).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Identity first, then the remaining elements in index order.
    fn element_scan(&self) -> impl Iterator<Item = usize> + '_ {
        std::iter::once(self.identity).chain((0..self.order).filter(move |&x| x != self.identity))
    }

    /// The subgroup generated by a set of elements.
    pub fn generate(&self, gens: &[usize]) -> Subgroup {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut elems = vec![self.identity];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        Subgroup::from_elements(elems)
    }

    /// A small generating set of the subgroup spanned by `elements`, picked
    /// greedily in the order given.
    pub fn greedy_generators(&self, elements: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut current = self.generate(&[]);
        for &x in elements {
            if !current.contains(x) {
                gens.push(x);
                current = self.generate(&gens);
            }
        }
        gens
    }

    pub fn is_subgroup(&self, elements: &[usize]) -> bool {
        let set: HashSet<usize> = elements.iter().copied().collect();
        set.contains(&self.identity)
            && elements.iter().all(|&a| elements.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// Conjugacy classes, each sorted, ordered by the identity class first
    /// and then by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order];
        let mut classes = Vec::new();
        for x in self.element_scan() {
            if assigned[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|g| self.conjugate(g, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                assigned[y] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// `class_index[g]` is the conjugacy class containing `g`.
    pub fn class_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.order];
        for (c, class) in self.conjugacy_classes().iter().enumerate() {
            for &x in class {
                idx[x] = c;
            }
        }
        idx
    }

    /// All subgroups up to conjugacy, by repeatedly adjoining one element to
    /// known subgroups starting from the cyclic ones. Classes are ordered by
    /// the canonical (order, sorted elements) key of their representative,
    /// which is the smallest member of the class under that key.
    pub fn subgroup_classes(&self, bound: usize) -> Result<Vec<SubgroupClass>> {
        if self.order > bound {
            return Err(Error::GroupTooLarge {
                order: self.order,
                bound,
            });
        }
        let mut found: HashSet<Vec<usize>> = HashSet::new();
        let mut list: Vec<Subgroup> = Vec::new();
        for x in 0..self.order {
            let s = self.generate(&[x]);
            if found.insert(s.elements.clone()) {
                list.push(s);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let base = list[i].clone();
            let mut gens = self.greedy_generators(&base.elements);
            for x in 0..self.order {
                if base.contains(x) {
                    continue;
                }
                gens.push(x);
                let s = self.generate(&gens);
                gens.pop();
                if found.insert(s.elements.clone()) {
                    list.push(s);
                }
            }
            i += 1;
        }
        list.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));

        let position: HashMap<&[usize], usize> =
            list.iter().enumerate().map(|(k, s)| (s.elements.as_slice(), k)).collect();
        let mut class_of = vec![usize::MAX; list.len()];
        let mut classes = Vec::new();
        for k in 0..list.len() {
            if class_of[k] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = HashSet::new();
            for g in 0..self.order {
                let conj = self.conjugate_subgroup(g, &list[k]);
                let pos = position[conj.elements.as_slice()];
                class_of[pos] = id;
                members.insert(pos);
            }
            let class_size = members.len();
            classes.push(SubgroupClass {
                id,
                representative: list[k].clone(),
                index: self.order / list[k].order(),
                class_size,
                normalizer_order: self.order / class_size,
            });
        }
        Ok(classes)
    }

    pub fn conjugate_subgroup(&self, g: usize, s: &Subgroup) -> Subgroup {
        Subgroup::from_elements(s.elements.iter().map(|&x| self.conjugate(g, x)).collect())
    }

    /// Index of the class in `classes` containing a conjugate of `s`.
    pub fn find_class(&self, classes: &[SubgroupClass], s: &Subgroup) -> Option<usize> {
        classes.iter().position(|c| {
            c.representative.order() == s.order()
                && (0..self.order).any(|g| self.conjugate_subgroup(g, &c.representative) == *s)
        })
    }

    /// Left cosets `gH`, each sorted, ordered by first appearance when
    /// scanning elements from the identity; the first coset is `H`.
    pub fn left_cosets(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut cosets = Vec::new();
        for g in self.element_scan() {
            if seen[g] {
                continue;
            }
            let mut c: Vec<usize> = h.elements.iter().map(|&x| self.mul(g, x)).collect();
            c.sort_unstable();
            for &y in &c {
                seen[y] = true;
            }
            cosets.push(c);
        }
        cosets
    }

    /// Meta-cyclic test: every Sylow subgroup is cyclic.
    ///
    /// A Sylow p-subgroup of order `p^a` is cyclic iff some element has
    /// order `p^a`, so no subgroup enumeration is needed.
    pub fn is_metacyclic(&self) -> bool {
        let orders: HashSet<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        prime_power_parts(self.order).into_iter().all(|(_, pa)| orders.contains(&pa))
    }

    /// One Sylow p-subgroup, found among enumerated subgroups.
    pub fn sylow_subgroup(&self, p: usize, bound: usize) -> Result<Subgroup> {
        let pa = prime_power_parts(self.order)
            .into_iter()
            .find(|&(q, _)| q == p)
            .map_or(1, |(_, pa)| pa);
        let classes = self.subgroup_classes(bound)?;
        Ok(classes
            .into_iter()
            .find(|c| c.representative.order() == pa)
            .expect("Sylow subgroups exist")
            .representative)
    }
}

/// `(p, p^a)` for each prime power exactly dividing `n`.
pub fn prime_power_parts(mut n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut pa = 1;
            while n.is_multiple_of(p) {
                n /= p;
                pa *= p;
            }
            out.push((p, pa));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

/// A subgroup as a sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn from_elements(mut elements: Vec<usize>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        Subgroup { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }
}

/// A conjugacy class of subgroups with its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupClass {
    pub id: usize,
    pub representative: Subgroup,
    pub index: usize,
    pub class_size: usize,
    pub normalizer_order: usize,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.representative.order()
    }
}

/// Small catalog of named groups used in tests and fixtures.
pub mod named {
    use super::FiniteGroup;

    pub fn symmetric3() -> FiniteGroup {
        FiniteGroup::from_generators(&[vec![1, 2, 0], vec![1, 0, 2]]).unwrap()
    }

    pub fn klein_four() -> FiniteGroup {
        FiniteGroup::from_generators(&[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap()
    }

    pub fn dihedral(n: usize) -> FiniteGroup {
        let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        FiniteGroup::from_generators(&[rot, refl]).unwrap()
    }

    pub fn alternating4() -> FiniteGroup {
        FiniteGroup::from_generators(&[vec![1, 2, 0, 3], vec![0, 2, 3, 1]]).unwrap()
    }

    /// Quaternion group as its regular representation on 8 points
    /// (1, i, j, k, -1, -i, -j, -k), generated by left multiplication by i and j.
    pub fn quaternion8() -> FiniteGroup {
        // index: 0=1 1=i 2=j 3=k 4=-1 5=-i 6=-j 7=-k
        let li = vec![1, 4, 3, 6, 5, 0, 7, 2];
        let lj = vec![2, 7, 4, 1, 6, 3, 0, 5];
        FiniteGroup::from_generators(&[li, lj]).unwrap()
    }

    pub fn cyclic_product(a: usize, b: usize) -> FiniteGroup {
        let ra: Vec<usize> = (0..a).map(|i| (i + 1) % a).chain(a..a + b).collect();
        let rb: Vec<usize> = (0..a).chain((0..b).map(|i| a + (i + 1) % b)).collect();
        FiniteGroup::from_generators(&[ra, rb]).unwrap()
    }
}
