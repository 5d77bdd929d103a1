//! `Ш¹_ω,alg(Γ, [T̂ → Ŝ])`: classes of `H¹(Γ, C)` that vanish on every cyclic
//! subgroup, and its reading as a Brauer group.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::{
    cohomology_group, hypercohomology_h1, restriction_map, CohomologyError, CohomologyGroup, CohomologyMap,
};
use crate::group::{all_cyclic_subgroups, cyclic_subgroups_up_to_conjugacy, Subgroup};
use crate::linalg::{AbelianGroupStructure, AbelianHom, IntMatrix};
use crate::module::{GModule, ModuleError, TwoTermComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ShaError {
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("inconsistent hypotheses: {0}")]
    InconsistentHypotheses(String),
}

/// Which cyclic subgroups the kernel is taken over. Both give the same group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SubgroupSelection {
    #[default]
    MaximalUpToConjugacy,
    AllCyclic,
}

/// Restriction to one cyclic subgroup.
#[derive(Clone, Debug)]
pub struct SubgroupReport {
    /// elements of the subgroup, as indices into `Γ`
    pub elements: Vec<usize>,
    pub target: AbelianGroupStructure,
    /// columns: generators of `H¹(Γ, C)`; rows: generators of `H¹(Γ₁, C)`
    pub restriction: IntMatrix,
    pub kernel: AbelianGroupStructure,
}

#[derive(Clone, Debug)]
pub struct ShaResult {
    pub h1: CohomologyGroup,
    pub structure: AbelianGroupStructure,
    /// cocycle lifts in `H¹(Γ, C)`
    pub generators: Vec<Vec<BigInt>>,
    /// the same generators in coordinates of `h1`
    pub generator_coordinates: Vec<Vec<BigInt>>,
    pub generator_orders: Vec<BigInt>,
    pub per_subgroup: Vec<SubgroupReport>,
    pub restrictions: Vec<CohomologyMap>,
}

impl ShaResult {
    /// Checks that every generator restricts to zero on every listed subgroup,
    /// going through the membership oracle of each restricted group rather
    /// than the kernel computation.
    pub fn verify_vanishing(&self) -> Result<bool, CohomologyError> {
        for (map, report) in self.restrictions.iter().zip(&self.per_subgroup) {
            for g in &self.generators {
                let restricted = self.h1.pull_back_lift(g, map.target.group().order(), &report.elements);
                if !map.target.is_coboundary(&restricted)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn combine(generators: &[Vec<BigInt>], coeffs: &[BigInt], len: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); len];
    for (g, c) in generators.iter().zip(coeffs) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(g) {
            *o += c * x;
        }
    }
    out
}

/// Kernel of `H¹(Γ, C) → ⊕ H¹(Γ₁, C)` over cyclic subgroups `Γ₁`.
pub fn sha1_omega_alg(c: &TwoTermComplex, selection: SubgroupSelection) -> Result<ShaResult, ShaError> {
    let h1 = hypercohomology_h1(c)?;
    sha_of(h1, selection)
}

/// `Ш²_ω,alg(Γ, M)`: classes of `H²(Γ, M)` vanishing on every cyclic subgroup.
pub fn sha2_omega_alg(m: &GModule, selection: SubgroupSelection) -> Result<ShaResult, ShaError> {
    let h2 = cohomology_group(m, 2)?;
    sha_of(h2, selection)
}

fn sha_of(h: CohomologyGroup, selection: SubgroupSelection) -> Result<ShaResult, ShaError> {
    let group = h.group().clone();
    let subgroups: Vec<Subgroup> = match selection {
        SubgroupSelection::MaximalUpToConjugacy => cyclic_subgroups_up_to_conjugacy(&group),
        SubgroupSelection::AllCyclic => all_cyclic_subgroups(&group),
    };
    let orders = h.generator_orders().to_vec();
    let mut homs = Vec::with_capacity(subgroups.len());
    let mut per_subgroup = Vec::with_capacity(subgroups.len());
    let mut restrictions = Vec::with_capacity(subgroups.len());
    for sub in &subgroups {
        let map = restriction_map(&h, sub)?;
        let hom = map.hom();
        per_subgroup.push(SubgroupReport {
            elements: sub.elements().to_vec(),
            target: map.target.structure().clone(),
            restriction: map.matrix.clone(),
            kernel: hom.kernel().structure(),
        });
        homs.push(hom);
        restrictions.push(map);
    }
    let (structure, coords, kernel_orders) = if orders.is_empty() {
        (AbelianGroupStructure::trivial(), Vec::new(), Vec::new())
    } else {
        let refs: Vec<&AbelianHom> = homs.iter().collect();
        let kernel = AbelianHom::stack(orders, &refs).expect("restrictions share a source").kernel();
        (kernel.structure(), kernel.generators(), kernel.generator_orders())
    };
    let generators = coords.iter().map(|c| combine(h.generators(), c, h.lift_len())).collect();
    Ok(ShaResult {
        structure,
        generators,
        generator_coordinates: coords,
        generator_orders: kernel_orders,
        per_subgroup,
        restrictions,
        h1: h,
    })
}

/// Field over which the homogeneous space lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Char0,
    Global,
    Finite,
}

/// Geometric hypotheses asserted by the user; they are echoed, never checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub field: FieldKind,
    #[serde(default)]
    pub has_point: bool,
    #[serde(default)]
    pub pic_gbar_zero: bool,
    #[serde(default)]
    pub stabilizer_connected: bool,
    #[serde(default)]
    pub ssumult: bool,
    /// `H³(k, G_m) = 0`
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h3_gm_zero: Option<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Interpretation {
    Char0WithPointIsomorphism,
    Char0InjectionOnly,
    GlobalFieldIsomorphism,
    FiniteFieldZero,
}

/// Which Brauer quotient the computed group describes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BrauerTarget {
    /// `Br₁X^c / Br k`
    Algebraic,
    /// `Br X^c / Br k`
    Full,
    /// prime-to-`p` torsion of `Br X^c / Br k`
    FullPrimeToCharacteristic,
    /// `Br₁X^c` itself
    AlgebraicAbsolute,
}

/// How the finite-level group relates to the field-level one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Identification {
    /// equal, for the stated reason
    Established(String),
    /// the finite-level group only embeds (by inflation) into the field-level one
    EmbeddingOnly,
}

#[derive(Clone, Debug)]
pub struct BrauerReport {
    pub sha: ShaResult,
    pub interpretation: Interpretation,
    pub target: BrauerTarget,
    pub identification: Identification,
    pub hypotheses: Hypotheses,
    pub statement: String,
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Interpretation::Char0WithPointIsomorphism => "characteristic zero: isomorphism",
            Interpretation::Char0InjectionOnly => "characteristic zero: injection only",
            Interpretation::GlobalFieldIsomorphism => "global field: isomorphism",
            Interpretation::FiniteFieldZero => "finite field: zero",
        };
        f.write_str(s)
    }
}

fn torsion_free(m: &GModule) -> bool {
    m.structure().invariant_factors().is_empty()
}

/// Runs [`sha1_omega_alg`] on `[T̂ → Ŝ]` and reads the result through the
/// theorem that matches `hypotheses`.
pub fn brauer_group(
    t_hat: &GModule,
    s_hat: &GModule,
    f: &IntMatrix,
    hypotheses: &Hypotheses,
) -> Result<BrauerReport, ShaError> {
    let group = t_hat.group().clone();
    let h = hypotheses;
    let need = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(ShaError::InconsistentHypotheses(what.to_string()))
        }
    };
    match h.field {
        FieldKind::Char0 | FieldKind::Global => {
            need(h.pic_gbar_zero, "the theorem requires Pic of the geometric group to vanish")?;
            need(h.ssumult, "the theorem requires a stabilizer of type (ssumult)")?;
        }
        FieldKind::Finite => {
            need(group.is_cyclic(), "Galois groups of finite extensions of a finite field are cyclic")?;
            need(
                h.stabilizer_connected || (h.ssumult && h.pic_gbar_zero),
                "needs a connected stabilizer, or a stabilizer of type (ssumult) with Pic of the geometric group zero",
            )?;
        }
    }
    if !torsion_free(t_hat) {
        return Err(ShaError::InconsistentHypotheses("the character module of a torus is a lattice".into()));
    }
    let complex = TwoTermComplex::new(t_hat.clone(), s_hat.clone(), f.clone())?;
    let sha = sha1_omega_alg(&complex, SubgroupSelection::MaximalUpToConjugacy)?;

    let identification = if h.field == FieldKind::Finite || group.is_cyclic() {
        Identification::Established("the splitting group is cyclic".into())
    } else if torsion_free(s_hat) {
        Identification::Established("S is a torus".into())
    } else if sha2_omega_alg(t_hat, SubgroupSelection::MaximalUpToConjugacy)?.structure.is_trivial() {
        Identification::Established("the second Tate-Shafarevich group of the torus lattice vanishes".into())
    } else {
        Identification::EmbeddingOnly
    };

    let (interpretation, target, statement) = match h.field {
        FieldKind::Finite => {
            if !sha.structure.is_trivial() {
                return Err(ShaError::InconsistentHypotheses(
                    "nonzero group over a cyclic Galois group".into(),
                ));
            }
            (
                Interpretation::FiniteFieldZero,
                BrauerTarget::AlgebraicAbsolute,
                "Br1 X^c = 0 for a smooth compactification over a finite field".to_string(),
            )
        }
        FieldKind::Char0 => {
            let target = if h.stabilizer_connected { BrauerTarget::Full } else { BrauerTarget::Algebraic };
            let quotient = if h.stabilizer_connected { "Br X^c / Br k" } else { "Br1 X^c / Br k" };
            if h.has_point || h.h3_gm_zero == Some(true) {
                (
                    Interpretation::Char0WithPointIsomorphism,
                    target,
                    format!("{quotient} is isomorphic to Sha^1_omega,alg([T^ -> S^])"),
                )
            } else {
                (
                    Interpretation::Char0InjectionOnly,
                    target,
                    format!("{quotient} injects functorially into Sha^1_omega,alg([T^ -> S^])"),
                )
            }
        }
        FieldKind::Global => {
            let (target, quotient) = if h.stabilizer_connected {
                (BrauerTarget::FullPrimeToCharacteristic, "the prime-to-p part of Br X^c / Br K")
            } else {
                (BrauerTarget::Algebraic, "Br1 X^c / Br K")
            };
            (
                Interpretation::GlobalFieldIsomorphism,
                target,
                format!("{quotient} is isomorphic to Sha^1_omega([T^ -> S^]), which equals the algebraic version by Chebotarev"),
            )
        }
    };
    Ok(BrauerReport { sha, interpretation, target, identification, hypotheses: h.clone(), statement })
}
