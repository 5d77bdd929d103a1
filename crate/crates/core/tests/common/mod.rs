#![allow(dead_code)]

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use galcoh::group::{all_subgroups, FinGroup, Subgroup};
use galcoh::linalg::{AbelianGroupStructure, IntMatrix};
use galcoh::module::{coset_module, GModule, TwoTermComplex};

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

pub fn cyc(orders: &[i64]) -> AbelianGroupStructure {
    AbelianGroupStructure::from_cyclic_orders(0, orders.iter().map(|&d| big(d)))
}

pub fn klein() -> Arc<FinGroup> {
    Arc::new(FinGroup::direct_product(&FinGroup::cyclic(2), &FinGroup::cyclic(2)))
}

/// Homomorphisms `Γ → {±1}`, as values on every element.
pub fn characters(g: &FinGroup) -> Vec<Vec<i64>> {
    let k = g.generators().len();
    let words = g.generator_words();
    let mut out = Vec::new();
    for mask in 0..(1u32 << k) {
        let sign = |j: usize| if mask >> j & 1 == 1 { -1 } else { 1 };
        let values: Vec<i64> = words.iter().map(|w| w.iter().map(|&j| sign(j)).product()).collect();
        let hom = (0..g.order()).all(|x| (0..g.order()).all(|y| values[g.mul(x, y)] == values[x] * values[y]));
        if hom && !out.contains(&values) {
            out.push(values);
        }
    }
    out
}

/// `M ⊗ χ`.
pub fn twist(m: &GModule, chi: &[i64]) -> GModule {
    let group = m.group().clone();
    let action = group
        .generators()
        .iter()
        .zip(m.generator_action())
        .map(|(&s, a)| a.scale(&big(chi[s])))
        .collect();
    GModule::new(group, m.relations().clone(), action).unwrap()
}

/// A random unimodular matrix and its inverse.
pub fn unimodular(rng: &mut Rng8, n: usize) -> (IntMatrix, IntMatrix) {
    let mut u = IntMatrix::identity(n);
    let mut inv = IntMatrix::identity(n);
    if n < 2 {
        return (u, inv);
    }
    for _ in 0..n + 1 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = big(rng.gen_range(-2..=2));
        // u ← (I + c E_ij) u ; inv ← inv (I − c E_ij)
        let e = IntMatrix::from_fn(n, n, |r, s| {
            if r == s {
                BigInt::one()
            } else if r == i && s == j {
                c.clone()
            } else {
                BigInt::zero()
            }
        });
        let e_inv = IntMatrix::from_fn(n, n, |r, s| {
            if r == s {
                BigInt::one()
            } else if r == i && s == j {
                -c.clone()
            } else {
                BigInt::zero()
            }
        });
        u = &e * &u;
        inv = &inv * &e_inv;
    }
    (u, inv)
}

/// The same module in the basis `y = U x`.
pub fn change_basis(m: &GModule, u: &IntMatrix, inv: &IntMatrix) -> GModule {
    let action = m.generator_action().iter().map(|a| &(u * a) * inv).collect();
    GModule::new(m.group().clone(), u * m.relations(), action).unwrap()
}

/// `M / dM` for a lattice `M`; `d = 0` leaves it unchanged.
pub fn with_torsion(m: &GModule, d: i64) -> GModule {
    if d == 0 {
        return m.clone();
    }
    let n = m.ambient_rank();
    let rel = IntMatrix::identity(n).scale(&big(d));
    GModule::new(m.group().clone(), rel, m.generator_action().to_vec()).unwrap()
}

pub fn trivial_lattice(group: Arc<FinGroup>, rank: usize) -> GModule {
    let action = vec![IntMatrix::identity(rank); group.generators().len()];
    GModule::lattice(group, rank, action).unwrap()
}

/// `Z[Γ/Δ] / Z·N`, as a lattice.
pub fn coset_norm_quotient(group: Arc<FinGroup>, delta: &Subgroup) -> GModule {
    let p = coset_module(group.clone(), delta);
    let n = p.ambient_rank();
    let norm = IntMatrix::from_fn(n, 1, |_, _| BigInt::one());
    GModule::new(group, norm, p.generator_action().to_vec()).unwrap().canonicalize().module
}

/// A random lattice of rank at most `max_rank` built from trivial, sign,
/// permutation and norm-quotient pieces.
pub fn random_lattice_piece(rng: &mut Rng8, group: &Arc<FinGroup>, max_rank: usize) -> GModule {
    let subgroups: Vec<Subgroup> =
        all_subgroups(group).into_iter().filter(|s| group.order() / s.order() <= max_rank).collect();
    let chars = characters(group);
    let chi = chars.choose(rng).unwrap().clone();
    let piece = match rng.gen_range(0..3) {
        0 => trivial_lattice(group.clone(), 1),
        1 => coset_module(group.clone(), subgroups.choose(rng).unwrap()),
        _ => {
            let small: Vec<&Subgroup> = subgroups
                .iter()
                .filter(|s| {
                    let idx = group.order() / s.order();
                    idx >= 2 && idx - 1 <= max_rank
                })
                .collect();
            match small.choose(rng) {
                Some(s) => coset_norm_quotient(group.clone(), s),
                None => trivial_lattice(group.clone(), 1),
            }
        }
    };
    twist(&piece, &chi)
}

/// A random module: one or two pieces, each a lattice or reduced mod
/// `d ≤ max_torsion`, in a random basis.
pub fn random_module(rng: &mut Rng8, group: &Arc<FinGroup>, max_rank: usize, max_torsion: i64) -> GModule {
    let mut m = GModule::zero(group.clone());
    let pieces = rng.gen_range(1..=2);
    for _ in 0..pieces {
        let room = max_rank - m.ambient_rank();
        if room == 0 {
            break;
        }
        let piece = random_lattice_piece(rng, group, room);
        let d = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(2..=max_torsion) };
        m = m.direct_sum(&with_torsion(&piece, d)).unwrap();
    }
    let (u, inv) = unimodular(rng, m.ambient_rank());
    change_basis(&m, &u, &inv)
}

pub fn random_finite_module(rng: &mut Rng8, group: &Arc<FinGroup>, max_rank: usize, max_torsion: i64) -> GModule {
    let piece = random_lattice_piece(rng, group, max_rank);
    let d = rng.gen_range(2..=max_torsion);
    let m = with_torsion(&piece, d);
    let (u, inv) = unimodular(rng, m.ambient_rank());
    change_basis(&m, &u, &inv)
}

/// A random complex `[A → B]` with `A` a twisted permutation module (maybe
/// reduced mod `d`) and an equivariant map obtained from a `Δ`-semi-invariant
/// element of `B`.
pub fn random_complex(rng: &mut Rng8, group: &Arc<FinGroup>, max_rank: usize, max_torsion: i64) -> TwoTermComplex {
    let b = random_module(rng, group, max_rank, max_torsion);
    let subgroups: Vec<Subgroup> =
        all_subgroups(group).into_iter().filter(|s| group.order() / s.order() <= max_rank).collect();
    let delta = subgroups.choose(rng).unwrap().clone();
    let chars = characters(group);
    let chi = chars.choose(rng).unwrap().clone();
    let a_lattice = twist(&coset_module(group.clone(), &delta), &chi);
    let d_a = if rng.gen_bool(0.5) { 0 } else { rng.gen_range(2..=max_torsion) };
    let a = with_torsion(&a_lattice, d_a);

    let mb = b.ambient_rank();
    let x: Vec<BigInt> = (0..mb).map(|_| big(rng.gen_range(-2..=2))).collect();
    let mut seed = vec![BigInt::zero(); mb];
    for &dl in delta.elements() {
        let v = b.action(dl).mul_vec(&x);
        for (s, vi) in seed.iter_mut().zip(v) {
            *s += vi * chi[dl];
        }
    }
    let b_structure = b.structure();
    let scale = if d_a == 0 {
        BigInt::one()
    } else if b_structure.is_finite() {
        let e = b_structure.invariant_factors().last().cloned().unwrap_or_else(BigInt::one);
        let g = num_integer::Integer::gcd(&e, &big(d_a));
        e / g
    } else {
        BigInt::zero()
    };
    let seed: Vec<BigInt> = seed.into_iter().map(|s| s * &scale).collect();
    // basis of Z[Γ/Δ] is indexed by cosets in order of first appearance
    let mut reps: Vec<usize> = Vec::new();
    let mut seen = vec![false; group.order()];
    for g in 0..group.order() {
        if !seen[g] {
            for &dl in delta.elements() {
                seen[group.mul(g, dl)] = true;
            }
            reps.push(g);
        }
    }
    let columns: Vec<Vec<BigInt>> = reps
        .iter()
        .map(|&r| b.action(r).mul_vec(&seed).into_iter().map(|v| v * chi[r]).collect())
        .collect();
    let map = IntMatrix::from_columns(mb, &columns);
    let c = TwoTermComplex::new(a, b, map).unwrap();
    c.validate().expect("random complexes are valid by construction");
    c
}

pub fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = std::time::Instant::now();
    let out = f();
    (out, start.elapsed().as_secs_f64())
}
