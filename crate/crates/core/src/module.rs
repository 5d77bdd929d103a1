//! Finitely generated abelian groups with a `Γ`-action, presented as
//! `Z^m / im(R)`, and two-term complexes `[A → B]` of them.

use std::collections::VecDeque;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::group::{FinGroup, GroupError, Subgroup};
use crate::linalg::{smith_normal_form, AbelianGroupStructure, IntMatrix, LinearSolver};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error("expected {expected} action matrices (one per group generator), found {found}")]
    ActionCount { expected: usize, found: usize },
    #[error("action matrix for generator {generator} is {rows}x{cols}, expected {expected}x{expected}")]
    ActionShape { generator: usize, rows: usize, cols: usize, expected: usize },
    #[error("relation matrix has {rows} rows, expected the ambient rank {expected}")]
    RelationsShape { rows: usize, expected: usize },
    #[error("complex map is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MapShape { rows: usize, cols: usize, expected_rows: usize, expected_cols: usize },
    #[error("modules are defined over different groups")]
    GroupMismatch,
    #[error("permutation action is not a homomorphism at elements ({a}, {b})")]
    NotAHomomorphism { a: usize, b: usize },
    #[error("permutation for element {element} is not a bijection of {degree} points")]
    BadPermutation { element: usize, degree: usize },
    #[error("module is not finite")]
    NotFinite,
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// First failed axiom found by validation, with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleViolation {
    #[error("action of generator {generator} does not preserve relation column {column}")]
    RelationsNotPreserved { generator: usize, column: usize },
    #[error("action is not multiplicative: rho(g{generator}) rho({element}) != rho(g{generator} * {element}) on the module")]
    NotMultiplicative { generator: usize, element: usize },
    #[error("complex map sends relation column {column} of A outside the relations of B")]
    MapBreaksRelations { column: usize },
    #[error("complex map is not equivariant for generator {generator}")]
    NotEquivariant { generator: usize },
    #[error("in module {side}: {violation}")]
    InComplex { side: char, violation: Box<ModuleViolation> },
}

/// `M = Z^m / im(relations)` with `Γ` acting through integer lifts.
///
/// The action is given per group generator; the per-element matrices are
/// derived once by `ρ(s·x) = ρ(s)·ρ(x)` along a breadth-first traversal.
#[derive(Clone, Debug)]
pub struct GModule {
    group: Arc<FinGroup>,
    ambient_rank: usize,
    relations: IntMatrix,
    generator_action: Vec<IntMatrix>,
    element_action: Vec<IntMatrix>,
}

impl GModule {
    pub fn new(group: Arc<FinGroup>, relations: IntMatrix, action: Vec<IntMatrix>) -> Result<Self, ModuleError> {
        let m = relations.rows();
        if action.len() != group.generators().len() {
            return Err(ModuleError::ActionCount { expected: group.generators().len(), found: action.len() });
        }
        for (k, a) in action.iter().enumerate() {
            if a.rows() != m || a.cols() != m {
                return Err(ModuleError::ActionShape { generator: k, rows: a.rows(), cols: a.cols(), expected: m });
            }
        }
        let element_action = element_matrices(&group, &action, m);
        Ok(GModule { group, ambient_rank: m, relations, generator_action: action, element_action })
    }

    /// A lattice `Z^m` (no relations).
    pub fn lattice(group: Arc<FinGroup>, rank: usize, action: Vec<IntMatrix>) -> Result<Self, ModuleError> {
        Self::new(group, IntMatrix::zeros(rank, 0), action)
    }

    pub fn zero(group: Arc<FinGroup>) -> Self {
        let action = vec![IntMatrix::zeros(0, 0); group.generators().len()];
        Self::new(group, IntMatrix::zeros(0, 0), action).unwrap()
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.group
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn relations(&self) -> &IntMatrix {
        &self.relations
    }

    pub fn generator_action(&self) -> &[IntMatrix] {
        &self.generator_action
    }

    /// Integer lift of the action of group element `g`.
    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.element_action[g]
    }

    pub fn is_lattice(&self) -> bool {
        self.relations.is_zero()
    }

    pub fn structure(&self) -> AbelianGroupStructure {
        crate::linalg::cokernel_structure(&self.relations)
    }

    /// Checks that the lifts induce a well-defined action on `M`.
    pub fn validate(&self) -> Result<(), ModuleViolation> {
        let solver = LinearSolver::new(&self.relations);
        let in_relations = |v: &[BigInt]| v.iter().all(Zero::is_zero) || solver.contains(v);
        for (k, a) in self.generator_action.iter().enumerate() {
            let moved = a * &self.relations;
            for j in 0..moved.cols() {
                if !in_relations(&moved.column(j)) {
                    return Err(ModuleViolation::RelationsNotPreserved { generator: k, column: j });
                }
            }
        }
        for (k, &s) in self.group.generators().iter().enumerate() {
            for x in 0..self.group.order() {
                let defect = (&self.generator_action[k] * &self.element_action[x])
                    .sub(&self.element_action[self.group.mul(s, x)]);
                if (0..defect.cols()).any(|j| !in_relations(&defect.column(j))) {
                    return Err(ModuleViolation::NotMultiplicative { generator: k, element: x });
                }
            }
        }
        Ok(())
    }

    /// Same presentation with the action restricted to `h`, as a module over `h`'s own group.
    pub fn restrict(&self, h: &Subgroup) -> GModule {
        let sub = Arc::new(h.group().clone());
        let action =
            sub.generators().iter().map(|&k| self.element_action[h.elements()[k]].clone()).collect();
        GModule::new(sub, self.relations.clone(), action).expect("shapes are inherited")
    }

    /// The module over `big` acting through `projection: big → self.group`.
    pub fn inflate(&self, big: Arc<FinGroup>, projection: &[usize]) -> Result<GModule, ModuleError> {
        big.check_homomorphism(&self.group, projection)?;
        let action = big.generators().iter().map(|&g| self.element_action[projection[g]].clone()).collect();
        GModule::new(big, self.relations.clone(), action)
    }

    /// An isomorphic module `⊕ Z/dᵢ ⊕ Z^r` with diagonal relations and
    /// coordinate changes between the two presentations.
    pub fn canonicalize(&self) -> Canonical {
        let smith = smith_normal_form(&self.relations);
        let m = self.ambient_rank;
        let diag = smith.diagonal();
        let order_at = |i: usize| if i < smith.rank { diag[i].clone() } else { BigInt::zero() };
        let keep: Vec<usize> = (0..m).filter(|&i| !order_at(i).is_one()).collect();
        let projection = smith.u.select_rows(&keep);
        let lift = smith.u_inv.select_columns(&keep);
        let orders: Vec<BigInt> = keep.iter().map(|&i| order_at(i)).collect();
        let torsion: Vec<usize> = (0..keep.len()).filter(|&i| !orders[i].is_zero()).collect();
        let mut relations = IntMatrix::zeros(keep.len(), torsion.len());
        for (c, &i) in torsion.iter().enumerate() {
            relations[(i, c)] = orders[i].clone();
        }
        let action = self
            .generator_action
            .iter()
            .map(|a| reduce_mod_orders(&(&(&projection * a) * &lift), &orders))
            .collect();
        let module = GModule::new(self.group.clone(), relations, action).expect("shapes agree");
        Canonical { module, projection, lift, orders }
    }

    /// `Hom(M, Q/Z)` with `(g·φ)(m) = φ(g⁻¹·m)`, presented on the coordinate
    /// characters of the canonical decomposition.
    pub fn dual_of_finite(&self) -> Result<GModule, ModuleError> {
        let canon = self.canonicalize();
        if canon.orders.iter().any(Zero::is_zero) {
            return Err(ModuleError::NotFinite);
        }
        let d = &canon.orders;
        let k = d.len();
        let group = self.group.clone();
        let action = group
            .generators()
            .iter()
            .map(|&s| {
                let a = &(&canon.projection * &self.element_action[group.inv(s)]) * &canon.lift;
                IntMatrix::from_fn(k, k, |i, j| &a[(j, i)] * &d[i] / &d[j])
            })
            .collect();
        GModule::new(group, canon.module.relations.clone(), action)
    }

    pub fn direct_sum(&self, other: &GModule) -> Result<GModule, ModuleError> {
        if self.group != other.group {
            return Err(ModuleError::GroupMismatch);
        }
        let relations = IntMatrix::block_diagonal(&[&self.relations, &other.relations]);
        let action = self
            .generator_action
            .iter()
            .zip(&other.generator_action)
            .map(|(a, b)| IntMatrix::block_diagonal(&[a, b]))
            .collect();
        GModule::new(self.group.clone(), relations, action)
    }
}

/// Result of [`GModule::canonicalize`]: `projection` maps old ambient
/// coordinates to new ones, `lift` goes back, and `orders` lists the cyclic
/// orders of the new coordinates (`0` for free).
#[derive(Clone, Debug)]
pub struct Canonical {
    pub module: GModule,
    pub projection: IntMatrix,
    pub lift: IntMatrix,
    pub orders: Vec<BigInt>,
}

fn reduce_mod_orders(a: &IntMatrix, orders: &[BigInt]) -> IntMatrix {
    use num_integer::Integer;
    IntMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        if orders[i].is_zero() {
            a[(i, j)].clone()
        } else {
            a[(i, j)].mod_floor(&orders[i])
        }
    })
}

fn element_matrices(group: &FinGroup, action: &[IntMatrix], m: usize) -> Vec<IntMatrix> {
    let mut out: Vec<Option<IntMatrix>> = vec![None; group.order()];
    out[group.identity()] = Some(IntMatrix::identity(m));
    let mut queue = VecDeque::from([group.identity()]);
    while let Some(x) = queue.pop_front() {
        for (k, &s) in group.generators().iter().enumerate() {
            let y = group.mul(s, x);
            if out[y].is_none() {
                out[y] = Some(&action[k] * out[x].as_ref().unwrap());
                queue.push_back(y);
            }
        }
    }
    out.into_iter().map(|a| a.expect("group generators generate")).collect()
}

/// `Γ` acting trivially on `Z^r ⊕ ⊕ Z/dᵢ`.
pub fn trivial_module(group: Arc<FinGroup>, structure: &AbelianGroupStructure) -> GModule {
    let r = structure.free_rank();
    let factors = structure.invariant_factors();
    let m = r + factors.len();
    let mut relations = IntMatrix::zeros(m, factors.len());
    for (k, d) in factors.iter().enumerate() {
        relations[(r + k, k)] = d.clone();
    }
    let action = vec![IntMatrix::identity(m); group.generators().len()];
    GModule::new(group, relations, action).unwrap()
}

/// `Z[X]` for `perms[g]` the permutation of `X = {0..n}` by element `g`
/// (0-based images). Checked to be a homomorphism.
pub fn permutation_module(group: Arc<FinGroup>, perms: &[Vec<usize>]) -> Result<GModule, ModuleError> {
    let n = perms.first().map_or(0, Vec::len);
    if perms.len() != group.order() {
        return Err(ModuleError::NotAHomomorphism { a: 0, b: 0 });
    }
    for (g, p) in perms.iter().enumerate() {
        let mut seen = vec![false; n];
        if p.len() != n || p.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
            return Err(ModuleError::BadPermutation { element: g, degree: n });
        }
    }
    for a in 0..group.order() {
        for b in 0..group.order() {
            let ab = &perms[group.mul(a, b)];
            if (0..n).any(|x| ab[x] != perms[a][perms[b][x]]) {
                return Err(ModuleError::NotAHomomorphism { a, b });
            }
        }
    }
    let matrix = |p: &[usize]| IntMatrix::from_fn(n, n, |i, j| BigInt::from(u8::from(p[j] == i)));
    let action = group.generators().iter().map(|&s| matrix(&perms[s])).collect();
    GModule::lattice(group, n, action)
}

/// `Z[Γ]` with left multiplication.
pub fn regular_module(group: Arc<FinGroup>) -> GModule {
    let perms: Vec<Vec<usize>> =
        (0..group.order()).map(|g| (0..group.order()).map(|x| group.mul(g, x)).collect()).collect();
    permutation_module(group, &perms).unwrap()
}

/// `Z[Γ/Δ]` on the left cosets of `delta`, numbered by first appearance.
pub fn coset_module(group: Arc<FinGroup>, delta: &Subgroup) -> GModule {
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in 0..n {
        if coset_of[g] == usize::MAX {
            for &d in delta.elements() {
                coset_of[group.mul(g, d)] = reps.len();
            }
            reps.push(g);
        }
    }
    let perms: Vec<Vec<usize>> =
        (0..n).map(|g| reps.iter().map(|&r| coset_of[group.mul(g, r)]).collect()).collect();
    permutation_module(group, &perms).unwrap()
}

/// `J = Z[Γ] / (Σ g)`, presented canonically as a lattice of rank `|Γ| − 1`.
pub fn norm_quotient(group: Arc<FinGroup>) -> GModule {
    let regular = regular_module(group.clone());
    let n = group.order();
    let norm = IntMatrix::from_fn(n, 1, |_, _| BigInt::one());
    let presented = GModule::new(group, norm, regular.generator_action.clone()).unwrap();
    presented.canonicalize().module
}

/// `[A → B]` with `A` in degree −1 and `B` in degree 0.
#[derive(Clone, Debug)]
pub struct TwoTermComplex {
    a: GModule,
    b: GModule,
    map: IntMatrix,
}

impl TwoTermComplex {
    pub fn new(a: GModule, b: GModule, map: IntMatrix) -> Result<Self, ModuleError> {
        if a.group != b.group {
            return Err(ModuleError::GroupMismatch);
        }
        if map.rows() != b.ambient_rank || map.cols() != a.ambient_rank {
            return Err(ModuleError::MapShape {
                rows: map.rows(),
                cols: map.cols(),
                expected_rows: b.ambient_rank,
                expected_cols: a.ambient_rank,
            });
        }
        Ok(TwoTermComplex { a, b, map })
    }

    /// `[0 → M]`.
    pub fn concentrated_in_degree_zero(m: GModule) -> Self {
        let zero = GModule::zero(m.group.clone());
        let map = IntMatrix::zeros(m.ambient_rank, 0);
        TwoTermComplex { a: zero, b: m, map }
    }

    /// `[M → 0]`.
    pub fn concentrated_in_degree_minus_one(m: GModule) -> Self {
        let zero = GModule::zero(m.group.clone());
        let map = IntMatrix::zeros(0, m.ambient_rank);
        TwoTermComplex { a: m, b: zero, map }
    }

    pub fn a(&self) -> &GModule {
        &self.a
    }

    pub fn b(&self) -> &GModule {
        &self.b
    }

    pub fn map(&self) -> &IntMatrix {
        &self.map
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.a.group
    }

    pub fn validate(&self) -> Result<(), ModuleViolation> {
        let wrap = |side| move |v| ModuleViolation::InComplex { side, violation: Box::new(v) };
        self.a.validate().map_err(wrap('A'))?;
        self.b.validate().map_err(wrap('B'))?;
        let solver = LinearSolver::new(&self.b.relations);
        let in_relations = |v: &[BigInt]| v.iter().all(Zero::is_zero) || solver.contains(v);
        let moved = &self.map * &self.a.relations;
        for j in 0..moved.cols() {
            if !in_relations(&moved.column(j)) {
                return Err(ModuleViolation::MapBreaksRelations { column: j });
            }
        }
        for k in 0..self.a.generator_action.len() {
            let defect =
                (&self.map * &self.a.generator_action[k]).sub(&(&self.b.generator_action[k] * &self.map));
            if (0..defect.cols()).any(|j| !in_relations(&defect.column(j))) {
                return Err(ModuleViolation::NotEquivariant { generator: k });
            }
        }
        Ok(())
    }

    pub fn restrict(&self, h: &Subgroup) -> TwoTermComplex {
        TwoTermComplex { a: self.a.restrict(h), b: self.b.restrict(h), map: self.map.clone() }
    }

    pub fn inflate(&self, big: Arc<FinGroup>, projection: &[usize]) -> Result<TwoTermComplex, ModuleError> {
        Ok(TwoTermComplex {
            a: self.a.inflate(big.clone(), projection)?,
            b: self.b.inflate(big, projection)?,
            map: self.map.clone(),
        })
    }
}

/// Outcome of validating a module or complex, for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostics {
    pub violation: Option<ModuleViolation>,
}

impl Diagnostics {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.violation {
            None => write!(f, "valid"),
            Some(v) => write!(f, "invalid: {v}"),
        }
    }
}

pub fn validate_module(m: &GModule) -> Diagnostics {
    Diagnostics { violation: m.validate().err() }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    fn z2() -> Arc<FinGroup> {
        Arc::new(FinGroup::cyclic(2))
    }

    fn klein() -> Arc<FinGroup> {
        Arc::new(FinGroup::direct_product(&FinGroup::cyclic(2), &FinGroup::cyclic(2)))
    }

    fn structure(free: usize, factors: &[i64]) -> AbelianGroupStructure {
        AbelianGroupStructure::new(free, factors.iter().map(|&d| BigInt::from(d)).collect()).unwrap()
    }

    #[test]
    fn validation_examples() {
        let t = trivial_module(z2(), &structure(1, &[]));
        assert!(validate_module(&t).is_valid());

        let doubling = GModule::lattice(z2(), 1, vec![m(&[vec![2]])]).unwrap();
        assert!(matches!(doubling.validate(), Err(ModuleViolation::NotMultiplicative { .. })));

        let z4_sign = GModule::new(z2(), m(&[vec![4]]), vec![m(&[vec![-1]])]).unwrap();
        assert!(z4_sign.validate().is_ok());

        let z4_bad = GModule::new(z2(), m(&[vec![4]]), vec![m(&[vec![2]])]).unwrap();
        assert!(z4_bad.validate().is_err());
    }

    #[test]
    fn relations_must_be_preserved() {
        // Z^2 / (2,0) with the swap: the relation moves to (0,2)
        let g = GModule::new(z2(), m(&[vec![2], vec![0]]), vec![m(&[vec![0, 1], vec![1, 0]])]).unwrap();
        assert_eq!(g.validate(), Err(ModuleViolation::RelationsNotPreserved { generator: 0, column: 0 }));
    }

    #[test]
    fn trivial_module_shapes() {
        let g = trivial_module(z2(), &structure(2, &[3]));
        assert_eq!(g.ambient_rank(), 3);
        assert_eq!(g.relations(), &m(&[vec![0], vec![0], vec![3]]));
        let z2m = trivial_module(z2(), &structure(0, &[2]));
        assert_eq!(z2m.relations(), &m(&[vec![2]]));
        assert!(z2m.action(1).is_identity());
    }

    #[test]
    fn permutation_modules() {
        let swap = permutation_module(z2(), &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(swap.generator_action()[0], m(&[vec![0, 1], vec![1, 0]]));
        let s3 = Arc::new(FinGroup::symmetric(3));
        let point_stabilizer = (0..6).find(|&x| s3.element_order(x) == 2).unwrap();
        let natural = coset_module(s3.clone(), &Subgroup::generated_by(&s3, &[point_stabilizer]));
        assert_eq!(natural.ambient_rank(), 3);
        assert!(natural.validate().is_ok());
        assert!(matches!(
            permutation_module(z2(), &[vec![0, 1, 2], vec![1, 2, 0]]),
            Err(ModuleError::NotAHomomorphism { .. })
        ));
        let reg = regular_module(klein());
        assert_eq!(reg.ambient_rank(), 4);
        assert!(reg.validate().is_ok());
    }

    #[test]
    fn norm_quotient_examples() {
        let j = norm_quotient(z2());
        assert_eq!(j.ambient_rank(), 1);
        assert!(j.is_lattice());
        assert_eq!(j.generator_action()[0], m(&[vec![-1]]));
        assert_eq!(norm_quotient(Arc::new(FinGroup::trivial())).ambient_rank(), 0);
        let jk = norm_quotient(klein());
        assert_eq!(jk.ambient_rank(), 3);
        assert!(jk.is_lattice());
        assert!(jk.validate().is_ok());
    }

    #[test]
    fn restriction_examples() {
        let k = klein();
        let reg = regular_module(k.clone());
        let trivial = Subgroup::trivial(&k);
        let r = reg.restrict(&trivial);
        assert_eq!(r.group().order(), 1);
        assert_eq!(r.ambient_rank(), 4);
        let h = Subgroup::new(&k, &[0, 1]).unwrap();
        let rh = reg.restrict(&h);
        assert!(rh.validate().is_ok());
        // Z[Γ] restricted to an index-2 subgroup is two copies of Z[H]: no fixed basis vectors
        let a = rh.action(1);
        assert!((0..4).all(|i| a[(i, i)].is_zero()));
        let whole = reg.restrict(&Subgroup::whole(&k));
        for g in 0..4 {
            assert_eq!(whole.action(g), reg.action(g));
        }
    }

    #[test]
    fn dual_examples() {
        let z2m = trivial_module(z2(), &structure(0, &[2]));
        let d = z2m.dual_of_finite().unwrap();
        assert_eq!(d.structure(), structure(0, &[2]));
        assert!(d.action(1).is_identity());

        let z4_sign = GModule::new(z2(), m(&[vec![4]]), vec![m(&[vec![-1]])]).unwrap();
        let d = z4_sign.dual_of_finite().unwrap();
        assert_eq!(d.structure(), structure(0, &[4]));
        assert!(d.validate().is_ok());
        assert_eq!(d.generator_action()[0], m(&[vec![-1]]));

        let lattice = trivial_module(z2(), &structure(1, &[]));
        assert_eq!(lattice.dual_of_finite().unwrap_err(), ModuleError::NotFinite);
    }

    #[test]
    fn canonicalize_preserves_structure() {
        // Z^2 / (2, 2) with swap ~ Z ⊕ Z/2
        let g = GModule::new(z2(), m(&[vec![2], vec![2]]), vec![m(&[vec![0, 1], vec![1, 0]])]).unwrap();
        assert!(g.validate().is_ok());
        let c = g.canonicalize();
        assert_eq!(c.module.structure(), g.structure());
        assert!(c.module.validate().is_ok());
        assert!((&c.projection * &c.lift).is_identity());
    }

    #[test]
    fn complex_validation() {
        let b = trivial_module(z2(), &structure(0, &[2]));
        let a = trivial_module(z2(), &structure(1, &[]));
        let good = TwoTermComplex::new(a.clone(), b.clone(), m(&[vec![1]])).unwrap();
        assert!(good.validate().is_ok());
        let sign = GModule::lattice(z2(), 1, vec![m(&[vec![-1]])]).unwrap();
        let z3 = trivial_module(z2(), &structure(0, &[3]));
        let bad = TwoTermComplex::new(sign, z3, m(&[vec![1]])).unwrap();
        assert_eq!(bad.validate(), Err(ModuleViolation::NotEquivariant { generator: 0 }));
        // Z/2 -> Z/3 identity-on-lifts breaks relations
        let bad = TwoTermComplex::new(b, trivial_module(z2(), &structure(0, &[3])), m(&[vec![1]])).unwrap();
        assert_eq!(bad.validate(), Err(ModuleViolation::MapBreaksRelations { column: 0 }));
    }
}
