//! Cohomology `H^n(Γ, M)` for `n ≤ 2` and hypercohomology `H¹(Γ, [A → B])`,
//! with restriction, inflation and the five-term sequence.

mod bar;
mod maps;

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::group::FinGroup;
use crate::linalg::{
    kernel_basis, AbelianGroupStructure, Cokernel, IntMatrix, LinalgError, SparseMatrix, Subquotient,
};
use crate::module::{GModule, ModuleViolation, TwoTermComplex};

use bar::Model;
pub use maps::{
    five_term_sequence, inflation_map, pull_back_map, restriction_map, CohomologyMap, FiveTermSequence,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("degree {0} is not supported (only 0, 1, 2)")]
    DegreeUnsupported(usize),
    #[error("invalid input: {0}")]
    InvalidInput(#[from] ModuleViolation),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("cochain has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("internal consistency failure: {0}")]
    MembershipFailure(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// What a [`CohomologyGroup`] computes, kept for restriction and inflation.
#[derive(Clone, Debug)]
pub enum Coefficients {
    Module(GModule),
    Complex(TwoTermComplex),
}

impl Coefficients {
    pub fn group(&self) -> &Arc<FinGroup> {
        match self {
            Coefficients::Module(m) => m.group(),
            Coefficients::Complex(c) => c.group(),
        }
    }
}

#[derive(Debug)]
enum Classifier {
    /// torsion part of `coker D^{n−1}`; exact for finite `H^n`
    Torsion(Cokernel),
    /// `ker D^n / im D^{n−1}` computed densely
    Dense(Subquotient),
}

/// A computed cohomology group with cocycle representatives and a membership oracle.
///
/// Cocycles are handled through their lifts: a table `Γ^n → Z^m` of integer
/// vectors (for a complex, the `A`-part of degree `n + 1` followed by the
/// `B`-part of degree `n`), flattened with the first argument most significant.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    coefficients: Coefficients,
    degree: usize,
    model: Arc<Model>,
    classifier: Arc<Classifier>,
    structure: AbelianGroupStructure,
    orders: Vec<BigInt>,
    generators: Vec<Vec<BigInt>>,
}

/// `H^n(Γ, M)` for `n ∈ {0, 1, 2}`.
pub fn cohomology_group(m: &GModule, n: usize) -> Result<CohomologyGroup, CohomologyError> {
    if n > 2 {
        return Err(CohomologyError::DegreeUnsupported(n));
    }
    m.validate()?;
    let complex = TwoTermComplex::concentrated_in_degree_zero(m.clone());
    compute(Coefficients::Module(m.clone()), &complex, n, false)
}

/// `H¹(Γ, [A → B])` with `A` in degree −1.
pub fn hypercohomology_h1(c: &TwoTermComplex) -> Result<CohomologyGroup, CohomologyError> {
    c.validate()?;
    compute(Coefficients::Complex(c.clone()), c, 1, false)
}

/// Same groups as [`cohomology_group`], always through the dense kernel/image
/// computation; kept as an internal cross-check of the sparse path.
#[doc(hidden)]
pub fn cohomology_group_dense(m: &GModule, n: usize) -> Result<CohomologyGroup, CohomologyError> {
    if n > 2 {
        return Err(CohomologyError::DegreeUnsupported(n));
    }
    m.validate()?;
    let complex = TwoTermComplex::concentrated_in_degree_zero(m.clone());
    compute(Coefficients::Module(m.clone()), &complex, n, true)
}

fn model_for(complex: &TwoTermComplex) -> Result<Model, CohomologyError> {
    Model::new(complex).ok_or_else(|| {
        CohomologyError::MembershipFailure("validated input has no exact relation coordinates".into())
    })
}

fn compute(
    coefficients: Coefficients,
    complex: &TwoTermComplex,
    n: usize,
    dense: bool,
) -> Result<CohomologyGroup, CohomologyError> {
    let model = model_for(complex)?;
    let deg = n as i64;
    let incoming = model.differential(deg - 1);
    if deg >= 1 {
        let below = model.differential(deg - 2);
        if !incoming.compose(&below).is_zero() {
            return Err(CohomologyError::MembershipFailure("D∘D is not zero".into()));
        }
    }
    let (classifier, orders, full_generators) = if n >= 1 && !dense {
        let cok = Cokernel::new(&incoming);
        let positions = cok.torsion_positions();
        let gens = positions.iter().map(|(i, _)| cok.lift_dense_position(*i)).collect();
        let orders = positions.into_iter().map(|(_, d)| d).collect();
        (Classifier::Torsion(cok), orders, gens)
    } else {
        let outgoing = model.differential(deg).to_dense();
        let kernel = kernel_basis(&outgoing);
        let sq = Subquotient::new(&kernel, &incoming.to_dense())?;
        let orders = sq.generator_orders();
        let gens = sq.generators();
        (Classifier::Dense(sq), orders, gens)
    };
    let lift_len = model.layout(deg).lift_len();
    let generators = full_generators.into_iter().map(|mut g| {
        g.truncate(lift_len);
        g
    });
    let structure = AbelianGroupStructure::from_cyclic_orders(0, orders.iter().cloned());
    Ok(CohomologyGroup {
        coefficients,
        degree: n,
        model: Arc::new(model),
        classifier: Arc::new(classifier),
        structure,
        orders,
        generators: generators.collect(),
    })
}

impl CohomologyGroup {
    pub fn structure(&self) -> &AbelianGroupStructure {
        &self.structure
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coefficients(&self) -> &Coefficients {
        &self.coefficients
    }

    pub fn group(&self) -> &Arc<FinGroup> {
        &self.model.group
    }

    /// Order of each generator; `0` for infinite order.
    pub fn generator_orders(&self) -> &[BigInt] {
        &self.orders
    }

    /// Lifts of the generating cocycles.
    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    /// Length of a cocycle lift.
    pub fn lift_len(&self) -> usize {
        self.model.layout(self.degree as i64).lift_len()
    }

    /// Lengths of the `A`-part and `B`-part of a lift.
    pub fn lift_split(&self) -> (usize, usize) {
        let l = self.model.layout(self.degree as i64);
        (l.xa, l.xb)
    }

    /// Expresses the class of a cocycle in the generators (reduced modulo
    /// their orders), rejecting cochains that are not cocycles.
    pub fn coordinates(&self, lift: &[BigInt]) -> Result<Vec<BigInt>, CohomologyError> {
        if lift.len() != self.lift_len() {
            return Err(CohomologyError::WrongLength { expected: self.lift_len(), found: lift.len() });
        }
        let full = self.model.complete(self.degree as i64, lift).ok_or(CohomologyError::NotACocycle)?;
        let coords = match self.classifier.as_ref() {
            Classifier::Torsion(cok) => cok.torsion_coordinates(&full),
            Classifier::Dense(sq) => sq.coordinates(&full),
        };
        coords.ok_or(CohomologyError::NotACocycle)
    }

    pub fn is_coboundary(&self, lift: &[BigInt]) -> Result<bool, CohomologyError> {
        Ok(self.coordinates(lift)?.iter().all(Zero::is_zero))
    }

    /// The lift as a table: one vector per argument tuple, for a plain module.
    pub fn as_table(&self, lift: &[BigInt]) -> Vec<Vec<BigInt>> {
        let (xa, _) = self.lift_split();
        let m = self.model.b.m;
        if m == 0 {
            return Vec::new();
        }
        lift[xa..].chunks(m).map(<[BigInt]>::to_vec).collect()
    }

    /// The lift `x ∘ φ` over a group of order `target_order`, for `φ` given by
    /// the images of its elements.
    pub fn pull_back_lift(&self, lift: &[BigInt], target_order: usize, phi: &[usize]) -> Vec<BigInt> {
        bar::pull_back_lift(
            lift,
            self.degree as i64,
            self.group().order(),
            target_order,
            phi,
            self.model.a.m,
            self.model.b.m,
        )
    }
}

/// Checks `D^{k+1} ∘ D^k = 0` for `k` from `−1` to `top − 1`.
pub fn verify_square_zero(complex: &TwoTermComplex, top: i64) -> Result<bool, CohomologyError> {
    complex.validate()?;
    let model = model_for(complex)?;
    let mut prev: SparseMatrix = model.differential(-1);
    for k in 0..=top {
        let next = model.differential(k);
        if !next.compose(&prev).is_zero() {
            return Ok(false);
        }
        prev = next;
    }
    Ok(true)
}

/// The lifted relation matrix of a single degree, exposed for tests of the
/// correction term.
#[doc(hidden)]
pub fn differential_matrix(complex: &TwoTermComplex, n: i64) -> Result<IntMatrix, CohomologyError> {
    complex.validate()?;
    Ok(model_for(complex)?.differential(n).to_dense())
}

#[cfg(test)]
mod tests;
