//! Finite groups given by multiplication tables: the Galois quotients `Γ`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use thiserror::Error;

pub const DEFAULT_ORDER_BOUND: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("multiplication table is empty or not square")]
    NotSquare,
    #[error("not closed: {a} * {b} = {value} is not an element index")]
    NotClosed { a: usize, b: usize, value: usize },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no inverse")]
    NoInverse { element: usize },
    #[error("not associative: ({a} * {b}) * {c} != {a} * ({b} * {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("group order exceeds the bound {bound}")]
    OrderBoundExceeded { bound: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("generator index {0} is out of range")]
    InvalidGenerator(usize),
    #[error("elements {0:?} do not form a subgroup")]
    NotASubgroup(Vec<usize>),
    #[error("subgroup is not normal: {g} conjugates {n} outside it")]
    NotNormal { g: usize, n: usize },
    #[error("map is not a homomorphism at ({a}, {b})")]
    NotAHomomorphism { a: usize, b: usize },
}

/// A finite group by its multiplication table; elements are indices `0..order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    generators: Vec<usize>,
}

impl FinGroup {
    /// Validates a table (`table[i][j]` is the index of `gᵢ·gⱼ`); generators are
    /// chosen greedily in index order.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let mut g = Self::validate_table(table)?;
        g.generators = g.greedy_generators();
        Ok(g)
    }

    /// Like [`Self::from_table`] with caller-chosen generators; they must generate.
    pub fn from_table_with_generators(table: &[Vec<usize>], generators: Vec<usize>) -> Result<Self, GroupError> {
        let mut g = Self::validate_table(table)?;
        if let Some(&bad) = generators.iter().find(|&&x| x >= g.order) {
            return Err(GroupError::InvalidGenerator(bad));
        }
        if g.closure(&generators).len() != g.order {
            return Err(GroupError::NotASubgroup(generators));
        }
        g.generators = generators;
        Ok(g)
    }

    fn validate_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 || table.iter().any(|r| r.len() != n) {
            return Err(GroupError::NotSquare);
        }
        for (a, row) in table.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::NotClosed { a, b, value: v });
                }
            }
        }
        let flat: Vec<usize> = table.iter().flatten().copied().collect();
        let mul = |a: usize, b: usize| flat[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverses = Vec::with_capacity(n);
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| mul(x, y) == identity && mul(y, x) == identity)
                .ok_or(GroupError::NoInverse { element: x })?;
            inverses.push(inv);
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FinGroup { order: n, table: flat, identity, inverses, generators: Vec::new() })
    }

    /// Closure of permutations (0-based image vectors, common degree) under
    /// composition; `(g·h)(x) = g(h(x))`. The identity gets index 0 and the
    /// generators keep their given order.
    pub fn from_permutations(generators: &[Vec<usize>], bound: usize) -> Result<Self, GroupError> {
        let degree = generators.first().map_or(0, Vec::len);
        for p in generators {
            if p.len() != degree {
                return Err(GroupError::InvalidPermutation("generators have different degrees".into()));
            }
            let mut seen = vec![false; degree];
            for &x in p {
                if x >= degree || std::mem::replace(&mut seen[x], true) {
                    return Err(GroupError::InvalidPermutation(format!("{p:?} is not a bijection")));
                }
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for s in generators {
                let y: Vec<usize> = elements[x].iter().map(|&p| s[p]).collect();
                if !index.contains_key(&y) {
                    if elements.len() >= bound {
                        return Err(GroupError::OrderBoundExceeded { bound });
                    }
                    index.insert(y.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(y);
                }
            }
        }
        let n = elements.len();
        let mut table = vec![vec![0; n]; n];
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let ab: Vec<usize> = b.iter().map(|&p| a[p]).collect();
                table[i][j] = index[&ab];
            }
        }
        let gens = generators.iter().map(|p| index[p]).collect();
        Self::from_table_with_generators(&table, gens)
    }

    /// Permutations written as 1-based cycles, e.g. `[[1, 2, 3]]` for `(1 2 3)`.
    pub fn from_cycles(generators: &[Vec<Vec<usize>>], degree: Option<usize>, bound: usize) -> Result<Self, GroupError> {
        let deg = degree.unwrap_or_else(|| {
            generators.iter().flatten().flatten().copied().max().unwrap_or(0)
        });
        let perms = generators
            .iter()
            .map(|cycles| permutation_from_cycles(deg, cycles))
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_permutations(&perms, bound)
    }

    pub fn trivial() -> Self {
        Self::from_table(&[vec![0]]).unwrap()
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let gens = if n == 1 { vec![] } else { vec![1] };
        Self::from_table_with_generators(&table, gens).unwrap()
    }

    /// `a × b`, element `(x, y)` at index `x · |b| + y`.
    pub fn direct_product(a: &FinGroup, b: &FinGroup) -> Self {
        let (n, m) = (a.order, b.order);
        let table: Vec<Vec<usize>> = (0..n * m)
            .map(|p| (0..n * m).map(|q| a.mul(p / m, q / m) * m + b.mul(p % m, q % m)).collect())
            .collect();
        let mut gens: Vec<usize> = a.generators.iter().map(|&x| x * m + b.identity).collect();
        gens.extend(b.generators.iter().map(|&y| a.identity * m + y));
        Self::from_table_with_generators(&table, gens).unwrap()
    }

    /// Symmetric group on `n` points, generated by `(1 2)` and `(1 2 … n)`.
    pub fn symmetric(n: usize) -> Self {
        if n < 2 {
            return Self::trivial();
        }
        let mut transposition: Vec<usize> = (0..n).collect();
        transposition.swap(0, 1);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations(&[cycle, transposition], usize::MAX).unwrap()
    }

    /// Dihedral group of order `2n` acting on an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3);
        let rotation: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        let reflection: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
        Self::from_permutations(&[rotation, reflection], usize::MAX).unwrap()
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`, generated by `i` and `j`.
    pub fn quaternion() -> Self {
        // element index = 2·unit + sign, units 1, i, j, k
        let unit_mul = |a: usize, b: usize| -> (usize, bool) {
            const T: [[(usize, bool); 4]; 4] = [
                [(0, false), (1, false), (2, false), (3, false)],
                [(1, false), (0, true), (3, false), (2, true)],
                [(2, false), (3, true), (0, true), (1, false)],
                [(3, false), (2, false), (1, true), (0, true)],
            ];
            T[a][b]
        };
        let table: Vec<Vec<usize>> = (0..8)
            .map(|x| {
                (0..8)
                    .map(|y| {
                        let (u, neg) = unit_mul(x / 2, y / 2);
                        let sign = (x % 2) ^ (y % 2) ^ usize::from(neg);
                        2 * u + sign
                    })
                    .collect()
            })
            .collect();
        Self::from_table_with_generators(&table, vec![2, 4]).unwrap()
    }

    /// Dicyclic group of order `4n`: `⟨a, x | a^{2n}, x² = aⁿ, x a x⁻¹ = a⁻¹⟩`,
    /// element `aⁱxʲ` at index `2i + j`.
    pub fn dicyclic(n: usize) -> Self {
        assert!(n >= 2);
        let m = 2 * n;
        let table: Vec<Vec<usize>> = (0..2 * m)
            .map(|p| {
                (0..2 * m)
                    .map(|q| {
                        let (i, j, k, l) = (p / 2, p % 2, q / 2, q % 2);
                        if j == 0 {
                            2 * ((i + k) % m) + l
                        } else if l == 0 {
                            2 * ((i + m - k) % m) + 1
                        } else {
                            2 * ((i + m - k + n) % m)
                        }
                    })
                    .collect()
            })
            .collect();
        Self::from_table_with_generators(&table, vec![2, 1]).unwrap()
    }

    /// Alternating group on `n ≥ 3` points, generated by 3-cycles `(1 2 k)`.
    pub fn alternating(n: usize) -> Self {
        assert!(n >= 3);
        let gens: Vec<Vec<usize>> = (2..n)
            .map(|k| {
                let mut p: Vec<usize> = (0..n).collect();
                p[0] = 1;
                p[1] = k;
                p[k] = 0;
                p
            })
            .collect();
        Self::from_permutations(&gens, usize::MAX).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
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
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|a| self.element_order(a) == self.order)
    }

    /// Sorted elements of the subgroup generated by `elements`.
    pub fn closure(&self, elements: &[usize]) -> Vec<usize> {
        let mut seen = BTreeSet::from([self.identity]);
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in elements {
                let y = self.mul(x, s);
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn greedy_generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for x in 0..self.order {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.closure(&gens);
            }
        }
        gens
    }

    /// Every element as a word in the generators: `words[g]` lists generator
    /// positions whose left-to-right product is `g`. Breadth-first, so words are shortest.
    pub fn generator_words(&self) -> Vec<Vec<usize>> {
        let mut words: Vec<Option<Vec<usize>>> = vec![None; self.order];
        words[self.identity] = Some(Vec::new());
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (k, &s) in self.generators.iter().enumerate() {
                let y = self.mul(s, x);
                if words[y].is_none() {
                    let mut w = vec![k];
                    w.extend(words[x].as_ref().unwrap());
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words.into_iter().map(|w| w.expect("generators generate the group")).collect()
    }

    /// Checks that `map` (indexed by elements of `self`) is a homomorphism into `target`.
    pub fn check_homomorphism(&self, target: &FinGroup, map: &[usize]) -> Result<(), GroupError> {
        if map.len() != self.order || map.iter().any(|&x| x >= target.order) {
            return Err(GroupError::NotAHomomorphism { a: 0, b: 0 });
        }
        for a in 0..self.order {
            for b in 0..self.order {
                if map[self.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(GroupError::NotAHomomorphism { a, b });
                }
            }
        }
        Ok(())
    }
}

/// 0-based image vector of a product of 1-based cycles.
/// One group of each isomorphism type of order at most `max_order ≤ 12`,
/// with a short name.
pub fn small_groups(max_order: usize) -> Vec<(String, FinGroup)> {
    assert!(max_order <= 12, "catalogue stops at order 12");
    let c = FinGroup::cyclic;
    let x = |a: FinGroup, b: FinGroup| FinGroup::direct_product(&a, &b);
    let all: Vec<(&str, Box<dyn Fn() -> FinGroup>)> = vec![
        ("1", Box::new(FinGroup::trivial)),
        ("C2", Box::new(move || c(2))),
        ("C3", Box::new(move || c(3))),
        ("C4", Box::new(move || c(4))),
        ("C2xC2", Box::new(move || x(c(2), c(2)))),
        ("C5", Box::new(move || c(5))),
        ("C6", Box::new(move || c(6))),
        ("S3", Box::new(|| FinGroup::symmetric(3))),
        ("C7", Box::new(move || c(7))),
        ("C8", Box::new(move || c(8))),
        ("C2xC4", Box::new(move || x(c(2), c(4)))),
        ("C2xC2xC2", Box::new(move || x(c(2), x(c(2), c(2))))),
        ("D4", Box::new(|| FinGroup::dihedral(4))),
        ("Q8", Box::new(FinGroup::quaternion)),
        ("C9", Box::new(move || c(9))),
        ("C3xC3", Box::new(move || x(c(3), c(3)))),
        ("C10", Box::new(move || c(10))),
        ("D5", Box::new(|| FinGroup::dihedral(5))),
        ("C11", Box::new(move || c(11))),
        ("C12", Box::new(move || c(12))),
        ("C2xC6", Box::new(move || x(c(2), c(6)))),
        ("D6", Box::new(|| FinGroup::dihedral(6))),
        ("A4", Box::new(|| FinGroup::alternating(4))),
        ("Dic3", Box::new(|| FinGroup::dicyclic(3))),
    ];
    all.into_iter()
        .map(|(name, make)| (name.to_string(), make()))
        .filter(|(_, g)| g.order() <= max_order)
        .collect()
}

pub fn permutation_from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Vec<usize>, GroupError> {
    let mut perm: Vec<usize> = (0..degree).collect();
    for cycle in cycles.iter().rev() {
        let mut seen = BTreeSet::new();
        for &p in cycle {
            if p == 0 || p > degree || !seen.insert(p) {
                return Err(GroupError::InvalidPermutation(format!("bad cycle {cycle:?} for degree {degree}")));
            }
        }
        let mut step: Vec<usize> = (0..degree).collect();
        for (k, &p) in cycle.iter().enumerate() {
            step[p - 1] = cycle[(k + 1) % cycle.len()] - 1;
        }
        // apply the cycles right to left: perm <- step ∘ perm
        perm = perm.iter().map(|&x| step[x]).collect();
    }
    Ok(perm)
}

/// A subgroup, carried as its sorted element list in the parent together with
/// the induced group (element `i` of `group` is `elements[i]` of the parent).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    elements: Vec<usize>,
    group: FinGroup,
}

impl Subgroup {
    pub fn new(parent: &FinGroup, elements: &[usize]) -> Result<Self, GroupError> {
        let mut elems: Vec<usize> = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let not_sub = || GroupError::NotASubgroup(elems.clone());
        if elems.is_empty() || elems.iter().any(|&x| x >= parent.order()) {
            return Err(not_sub());
        }
        let pos = |x: usize| elems.binary_search(&x).ok();
        let mut table = vec![vec![0; elems.len()]; elems.len()];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                table[i][j] = pos(parent.mul(a, b)).ok_or_else(not_sub)?;
            }
        }
        let group = FinGroup::from_table(&table).map_err(|_| not_sub())?;
        Ok(Subgroup { elements: elems, group })
    }

    pub fn whole(parent: &FinGroup) -> Self {
        Self::new(parent, &(0..parent.order()).collect::<Vec<_>>()).unwrap()
    }

    pub fn trivial(parent: &FinGroup) -> Self {
        Self::new(parent, &[parent.identity()]).unwrap()
    }

    pub fn generated_by(parent: &FinGroup, generators: &[usize]) -> Self {
        Self::new(parent, &parent.closure(generators)).expect("closures are subgroups")
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn group(&self) -> &FinGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn conjugate_by(&self, parent: &FinGroup, g: usize) -> Vec<usize> {
        let mut c: Vec<usize> = self.elements.iter().map(|&x| parent.conjugate(g, x)).collect();
        c.sort_unstable();
        c
    }

    pub fn is_normal_in(&self, parent: &FinGroup) -> bool {
        (0..parent.order()).all(|g| self.elements.iter().all(|&n| self.contains(parent.conjugate(g, n))))
    }
}

/// Every cyclic subgroup, sorted by element list.
pub fn all_cyclic_subgroups(g: &FinGroup) -> Vec<Subgroup> {
    let sets: BTreeSet<Vec<usize>> = (0..g.order()).map(|x| g.closure(&[x])).collect();
    sets.into_iter().map(|s| Subgroup::new(g, &s).unwrap()).collect()
}

/// One representative per conjugacy class of maximal cyclic subgroups.
///
/// Restriction to a subgroup of a cyclic group factors through that cyclic
/// group, and conjugate subgroups give isomorphic restrictions, so kernels of
/// restriction over this list agree with kernels over all cyclic subgroups.
/// Every subgroup, sorted by element list; joins of cyclic subgroups are
/// taken until nothing new appears.
pub fn all_subgroups(g: &FinGroup) -> Vec<Subgroup> {
    let mut found: BTreeSet<Vec<usize>> = (0..g.order()).map(|x| g.closure(&[x])).collect();
    let mut frontier: Vec<Vec<usize>> = found.iter().cloned().collect();
    while let Some(h) = frontier.pop() {
        for x in 0..g.order() {
            if h.binary_search(&x).is_err() {
                let mut gens = h.clone();
                gens.push(x);
                let joined = g.closure(&gens);
                if found.insert(joined.clone()) {
                    frontier.push(joined);
                }
            }
        }
    }
    found.into_iter().map(|s| Subgroup::new(g, &s).unwrap()).collect()
}

pub fn cyclic_subgroups_up_to_conjugacy(g: &FinGroup) -> Vec<Subgroup> {
    let all = all_cyclic_subgroups(g);
    let maximal: Vec<&Subgroup> = all
        .iter()
        .filter(|c| !all.iter().any(|d| d.order() > c.order() && c.is_subgroup_of(d)))
        .collect();
    let mut reps: Vec<Subgroup> = Vec::new();
    for c in maximal {
        let conjugate_to_rep = reps
            .iter()
            .any(|r| r.order() == c.order() && (0..g.order()).any(|x| c.conjugate_by(g, x) == r.elements));
        if !conjugate_to_rep {
            reps.push(c.clone());
        }
    }
    reps
}

/// `G̃ → G̃/N`. Cosets are numbered by their smallest element.
pub fn quotient_map(g: &FinGroup, n: &Subgroup) -> Result<(FinGroup, Vec<usize>), GroupError> {
    for x in 0..g.order() {
        for &m in n.elements() {
            if !n.contains(g.conjugate(x, m)) {
                return Err(GroupError::NotNormal { g: x, n: m });
            }
        }
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset[x] == usize::MAX {
            for &m in n.elements() {
                coset[g.mul(x, m)] = reps.len();
            }
            reps.push(x);
        }
    }
    let table: Vec<Vec<usize>> =
        reps.iter().map(|&a| reps.iter().map(|&b| coset[g.mul(a, b)]).collect()).collect();
    let quotient = FinGroup::from_table(&table)?;
    Ok((quotient, coset))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_counts() {
        let count = |g: &FinGroup| all_subgroups(g).len();
        assert_eq!(count(&FinGroup::symmetric(3)), 6);
        assert_eq!(count(&FinGroup::quaternion()), 6);
        assert_eq!(count(&FinGroup::dihedral(4)), 10);
        assert_eq!(count(&FinGroup::alternating(4)), 10);
        assert_eq!(count(&FinGroup::cyclic(12)), 6);
        let c2 = FinGroup::cyclic(2);
        assert_eq!(count(&FinGroup::direct_product(&c2, &FinGroup::direct_product(&c2, &c2))), 16);
    }

    #[test]
    fn small_group_catalogue_is_irredundant() {
        let groups = small_groups(12);
        assert_eq!(groups.len(), 24);
        let signature = |g: &FinGroup| {
            let mut orders: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
            orders.sort_unstable();
            (g.order(), g.is_abelian(), orders)
        };
        let sigs: Vec<_> = groups.iter().map(|(_, g)| signature(g)).collect();
        for i in 0..sigs.len() {
            assert!(!sigs[..i].contains(&sigs[i]), "{} repeats", groups[i].0);
        }
        let dic = FinGroup::dicyclic(3);
        assert_eq!(dic.element_order(2), 6);
        assert_eq!(dic.element_order(1), 4);
        assert!(!dic.is_abelian());
        assert_eq!(signature(&FinGroup::dicyclic(2)), signature(&FinGroup::quaternion()));
        assert_eq!(FinGroup::alternating(4).order(), 12);
    }

    #[test]
    fn table_examples() {
        assert_eq!(FinGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap().order(), 2);
        let klein = vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]];
        let k = FinGroup::from_table(&klein).unwrap();
        assert_eq!(k.order(), 4);
        assert_eq!(k.generators(), &[1, 2]);
        assert_eq!(FinGroup::from_table(&[vec![0, 1], vec![1, 1]]), Err(GroupError::NoInverse { element: 1 }));
    }

    #[test]
    fn table_axiom_failures_name_witnesses() {
        assert!(matches!(
            FinGroup::from_table(&[vec![0, 2], vec![1, 0]]),
            Err(GroupError::NotClosed { a: 0, b: 1, value: 2 })
        ));
        assert_eq!(FinGroup::from_table(&[vec![1, 0], vec![0, 1]]).unwrap().identity(), 1);
        assert_eq!(FinGroup::from_table(&[vec![1, 1], vec![1, 1]]), Err(GroupError::NoIdentity));
        // a Latin square with identity 0 that is not associative
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(FinGroup::from_table(&t), Err(GroupError::NotAssociative { .. })));
    }

    #[test]
    fn permutation_examples() {
        let g = FinGroup::from_cycles(&[vec![vec![1, 2]]], None, DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(g.order(), 2);
        let k = FinGroup::from_cycles(&[vec![vec![1, 2]], vec![vec![3, 4]]], None, DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(k.order(), 4);
        assert!(k.is_abelian() && !k.is_cyclic());
        let s3 = FinGroup::from_cycles(&[vec![vec![1, 2, 3]], vec![vec![1, 2]]], None, DEFAULT_ORDER_BOUND).unwrap();
        assert_eq!(s3.order(), 6);
        assert!(!s3.is_abelian());
        assert_eq!(
            FinGroup::from_cycles(&[vec![vec![1, 2, 3, 4, 5]], vec![vec![1, 2]]], None, 100),
            Err(GroupError::OrderBoundExceeded { bound: 100 })
        );
    }

    #[test]
    fn cycle_composition_is_right_to_left() {
        // (1 2)(2 3) sends 3 -> 2 -> 1
        let p = permutation_from_cycles(3, &[vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(p[2], 0);
    }

    #[test]
    fn standard_groups() {
        assert_eq!(FinGroup::symmetric(3).order(), 6);
        let d4 = FinGroup::dihedral(4);
        assert_eq!(d4.order(), 8);
        assert!(!d4.is_abelian());
        let q8 = FinGroup::quaternion();
        assert_eq!(q8.order(), 8);
        assert!(!q8.is_abelian());
        // Q8 has a unique element of order 2
        assert_eq!((0..8).filter(|&x| q8.element_order(x) == 2).count(), 1);
        let k = FinGroup::direct_product(&FinGroup::cyclic(2), &FinGroup::cyclic(2));
        assert_eq!(k.generators().len(), 2);
    }

    #[test]
    fn cyclic_subgroup_examples() {
        let z4 = cyclic_subgroups_up_to_conjugacy(&FinGroup::cyclic(4));
        assert_eq!(z4.len(), 1);
        assert_eq!(z4[0].order(), 4);

        let klein = FinGroup::direct_product(&FinGroup::cyclic(2), &FinGroup::cyclic(2));
        let reps = cyclic_subgroups_up_to_conjugacy(&klein);
        assert_eq!(reps.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![2, 2, 2]);

        let s3 = FinGroup::symmetric(3);
        let mut orders: Vec<usize> = cyclic_subgroups_up_to_conjugacy(&s3).iter().map(Subgroup::order).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![2, 3]);
    }

    #[test]
    fn every_cyclic_subgroup_is_conjugate_into_a_representative() {
        for g in [
            FinGroup::symmetric(3),
            FinGroup::dihedral(4),
            FinGroup::quaternion(),
            FinGroup::symmetric(4),
            FinGroup::direct_product(&FinGroup::cyclic(2), &FinGroup::cyclic(6)),
        ] {
            let reps = cyclic_subgroups_up_to_conjugacy(&g);
            for c in all_cyclic_subgroups(&g) {
                let covered = reps.iter().any(|r| {
                    (0..g.order()).any(|x| c.conjugate_by(&g, x).iter().all(|y| r.contains(*y)))
                });
                assert!(covered, "cyclic subgroup {:?} not covered", c.elements());
            }
        }
    }

    #[test]
    fn quotient_examples() {
        let z4 = FinGroup::cyclic(4);
        let (q, proj) = quotient_map(&z4, &Subgroup::new(&z4, &[0, 2]).unwrap()).unwrap();
        assert_eq!(q.order(), 2);
        z4.check_homomorphism(&q, &proj).unwrap();

        let s3 = FinGroup::symmetric(3);
        let a3: Vec<usize> = (0..6).filter(|&x| s3.element_order(x) != 2).collect();
        let (q, proj) = quotient_map(&s3, &Subgroup::new(&s3, &a3).unwrap()).unwrap();
        assert_eq!(q.order(), 2);
        for &n in &a3 {
            assert_eq!(proj[n], q.identity());
        }

        let klein = FinGroup::direct_product(&FinGroup::cyclic(2), &FinGroup::cyclic(2));
        let factor = Subgroup::new(&klein, &[0, 1]).unwrap();
        let (q, proj) = quotient_map(&klein, &factor).unwrap();
        assert_eq!(q.order(), 2);
        assert!(factor.elements().iter().all(|&n| proj[n] == q.identity()));

        let order2 = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let t = Subgroup::generated_by(&s3, &[order2]);
        assert!(matches!(quotient_map(&s3, &t), Err(GroupError::NotNormal { .. })));
    }

    #[test]
    fn generator_words_multiply_back() {
        let g = FinGroup::dihedral(5);
        for (x, w) in g.generator_words().iter().enumerate() {
            let prod = w.iter().fold(g.identity(), |acc, &k| g.mul(acc, g.generators()[k]));
            assert_eq!(prod, x);
        }
    }
}
