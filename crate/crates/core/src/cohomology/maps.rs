use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::bar::pointwise_map;
use super::{cohomology_group, hypercohomology_h1, CohomologyError, CohomologyGroup, Coefficients};
use crate::group::{FinGroup, Subgroup};
use crate::linalg::{AbelianHom, IntMatrix};
use crate::module::TwoTermComplex;

/// A homomorphism between computed groups, as a matrix on their generators.
#[derive(Clone, Debug)]
pub struct CohomologyMap {
    pub source: CohomologyGroup,
    pub target: CohomologyGroup,
    pub matrix: IntMatrix,
}

impl CohomologyMap {
    /// Builds the matrix by sending each source generator through `on_lifts`
    /// and reading off target coordinates.
    pub fn from_lifts(
        source: CohomologyGroup,
        target: CohomologyGroup,
        on_lifts: impl Fn(&[BigInt]) -> Vec<BigInt>,
    ) -> Result<Self, CohomologyError> {
        let mut columns = Vec::with_capacity(source.generators().len());
        for (i, g) in source.generators().iter().enumerate() {
            let image = on_lifts(g);
            let coords = target.coordinates(&image).map_err(|e| {
                CohomologyError::MembershipFailure(format!("image of generator {i} rejected: {e}"))
            })?;
            columns.push(coords);
        }
        let matrix = IntMatrix::from_columns(target.generators().len(), &columns);
        Ok(CohomologyMap { source, target, matrix })
    }

    pub fn hom(&self) -> AbelianHom {
        AbelianHom::new(
            self.source.generator_orders().to_vec(),
            self.target.generator_orders().to_vec(),
            self.matrix.clone(),
        )
        .expect("cochain maps induce well-defined homomorphisms")
    }

    pub fn is_injective(&self) -> bool {
        self.hom().kernel().structure().is_trivial()
    }

    pub fn is_zero(&self) -> bool {
        let hom = self.hom();
        (0..self.matrix.cols()).all(|j| {
            self.matrix.column(j).iter().zip(hom.target()).all(|(x, d)| {
                if d.is_zero() {
                    x.is_zero()
                } else {
                    (x % d).is_zero()
                }
            })
        })
    }
}

fn recompute(coefficients: Coefficients, degree: usize) -> Result<CohomologyGroup, CohomologyError> {
    match coefficients {
        Coefficients::Module(m) => cohomology_group(&m, degree),
        Coefficients::Complex(c) => {
            debug_assert_eq!(degree, 1);
            hypercohomology_h1(&c)
        }
    }
}

/// The map induced by `phi: K → Γ` into an already computed group over `K`
/// whose coefficients are those of `source` pulled back along `phi`.
pub fn pull_back_map(
    source: &CohomologyGroup,
    target: CohomologyGroup,
    phi: &[usize],
) -> Result<CohomologyMap, CohomologyError> {
    let tgt_order = target.group().order();
    let phi = phi.to_vec();
    let src = source.clone();
    CohomologyMap::from_lifts(source.clone(), target, move |lift| src.pull_back_lift(lift, tgt_order, &phi))
}

/// `res: H^n(Γ, ·) → H^n(H, ·)`.
pub fn restriction_map(source: &CohomologyGroup, h: &Subgroup) -> Result<CohomologyMap, CohomologyError> {
    let restricted = match source.coefficients() {
        Coefficients::Module(m) => Coefficients::Module(m.restrict(h)),
        Coefficients::Complex(c) => Coefficients::Complex(c.restrict(h)),
    };
    let target = recompute(restricted, source.degree())?;
    pull_back_map(source, target, h.elements())
}

/// `inf: H^n(Γ, ·) → H^n(Γ̃, ·)` along a surjection `projection: Γ̃ → Γ`.
pub fn inflation_map(
    source: &CohomologyGroup,
    big: Arc<FinGroup>,
    projection: &[usize],
) -> Result<CohomologyMap, CohomologyError> {
    let inflated = match source.coefficients() {
        Coefficients::Module(m) => Coefficients::Module(
            m.inflate(big, projection).map_err(|e| CohomologyError::MembershipFailure(e.to_string()))?,
        ),
        Coefficients::Complex(c) => Coefficients::Complex(
            c.inflate(big, projection).map_err(|e| CohomologyError::MembershipFailure(e.to_string()))?,
        ),
    };
    let target = recompute(inflated, source.degree())?;
    pull_back_map(source, target, projection)
}

/// `H¹(A) → H¹(B) → H¹(Γ, [A → B]) → H²(A) → H²(B)`.
#[derive(Clone, Debug)]
pub struct FiveTermSequence {
    pub maps: [CohomologyMap; 4],
}

impl FiveTermSequence {
    pub fn groups(&self) -> [&CohomologyGroup; 5] {
        [
            &self.maps[0].source,
            &self.maps[1].source,
            &self.maps[2].source,
            &self.maps[3].source,
            &self.maps[3].target,
        ]
    }

    /// Exactness at `H¹(B)`, `H¹(C)` and `H²(A)`.
    pub fn exactness(&self) -> [bool; 3] {
        let homs: Vec<AbelianHom> = self.maps.iter().map(CohomologyMap::hom).collect();
        [homs[0].exact_with(&homs[1]), homs[1].exact_with(&homs[2]), homs[2].exact_with(&homs[3])]
    }

    pub fn is_exact(&self) -> bool {
        self.exactness().iter().all(|&b| b)
    }
}

pub fn five_term_sequence(c: &TwoTermComplex) -> Result<FiveTermSequence, CohomologyError> {
    c.validate()?;
    let order = c.group().order();
    let f = c.map().clone();
    let h1a = cohomology_group(c.a(), 1)?;
    let h1b = cohomology_group(c.b(), 1)?;
    let h1c = hypercohomology_h1(c)?;
    let h2a = cohomology_group(c.a(), 2)?;
    let h2b = cohomology_group(c.b(), 2)?;
    let (alpha_len, _) = h1c.lift_split();

    let fa = f.clone();
    let m1 = CohomologyMap::from_lifts(h1a, h1b.clone(), move |x| pointwise_map(x, order, &fa))?;
    let m2 = CohomologyMap::from_lifts(h1b, h1c.clone(), move |x| {
        let mut v = vec![BigInt::zero(); alpha_len];
        v.extend_from_slice(x);
        v
    })?;
    let m3 = CohomologyMap::from_lifts(h1c, h2a.clone(), move |x| x[..alpha_len].to_vec())?;
    let m4 = CohomologyMap::from_lifts(h2a, h2b, move |x| pointwise_map(x, order * order, &f))?;
    Ok(FiveTermSequence { maps: [m1, m2, m3, m4] })
}
