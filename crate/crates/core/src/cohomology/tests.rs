use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::*;
use crate::group::{quotient_map, Subgroup};
use crate::module::{norm_quotient, regular_module, trivial_module};

fn m(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_rows(rows)
}

fn st(free: usize, factors: &[i64]) -> AbelianGroupStructure {
    AbelianGroupStructure::new(free, factors.iter().map(|&d| BigInt::from(d)).collect()).unwrap()
}

fn cyclic(n: usize) -> Arc<FinGroup> {
    Arc::new(FinGroup::cyclic(n))
}

fn klein() -> Arc<FinGroup> {
    Arc::new(FinGroup::direct_product(&FinGroup::cyclic(2), &FinGroup::cyclic(2)))
}

fn sign_module() -> GModule {
    GModule::lattice(cyclic(2), 1, vec![m(&[vec![-1]])]).unwrap()
}

#[test]
fn cyclic_with_integer_coefficients() {
    for n in 1..=6 {
        let z = trivial_module(cyclic(n), &st(1, &[]));
        assert_eq!(cohomology_group(&z, 0).unwrap().structure(), &st(1, &[]));
        assert!(cohomology_group(&z, 1).unwrap().structure().is_trivial());
        let expected = if n == 1 { st(0, &[]) } else { st(0, &[n as i64]) };
        assert_eq!(cohomology_group(&z, 2).unwrap().structure(), &expected);
    }
}

#[test]
fn sign_action() {
    let s = sign_module();
    assert_eq!(cohomology_group(&s, 1).unwrap().structure(), &st(0, &[2]));
    assert!(cohomology_group(&s, 0).unwrap().structure().is_trivial());
    assert!(cohomology_group(&s, 2).unwrap().structure().is_trivial());
}

#[test]
fn degree_three_is_rejected() {
    let z = trivial_module(cyclic(2), &st(1, &[]));
    assert!(matches!(cohomology_group(&z, 3), Err(CohomologyError::DegreeUnsupported(3))));
}

#[test]
fn torsion_coefficients() {
    // H^n(Z/2, Z/2) = Z/2 for all n
    let z2 = trivial_module(cyclic(2), &st(0, &[2]));
    for n in 0..=2 {
        assert_eq!(cohomology_group(&z2, n).unwrap().structure(), &st(0, &[2]));
    }
    // H^1(Klein, Z/2) = Hom(Klein, Z/2) = (Z/2)^2, H^2 = (Z/2)^3
    let k2 = trivial_module(klein(), &st(0, &[2]));
    assert_eq!(cohomology_group(&k2, 1).unwrap().structure(), &st(0, &[2, 2]));
    assert_eq!(cohomology_group(&k2, 2).unwrap().structure(), &st(0, &[2, 2, 2]));
}

/// `Z/4` over `Z/2` with the action lifted to `3`, which squares to `9 ≠ 1`.
fn z4_with_loose_lift() -> GModule {
    GModule::new(cyclic(2), m(&[vec![4]]), vec![m(&[vec![3]])]).unwrap()
}

#[test]
fn non_multiplicative_lifts() {
    let g = z4_with_loose_lift();
    let tight = GModule::new(cyclic(2), m(&[vec![4]]), vec![m(&[vec![-1]])]).unwrap();
    for n in 0..=2 {
        assert_eq!(
            cohomology_group(&g, n).unwrap().structure(),
            cohomology_group(&tight, n).unwrap().structure(),
            "degree {n}"
        );
    }
    assert!(verify_square_zero(&TwoTermComplex::concentrated_in_degree_zero(g), 2).unwrap());
}

#[test]
fn redundant_relations_are_harmless() {
    // Z^2 / <(2,0), (0,2), (2,2)> ≅ (Z/2)^2 with swap ~ Z/2[Z/2], which is induced
    let g = GModule::new(
        cyclic(2),
        m(&[vec![2, 0, 2], vec![0, 2, 2]]),
        vec![m(&[vec![0, 1], vec![1, 0]])],
    )
    .unwrap();
    assert!(cohomology_group(&g, 1).unwrap().structure().is_trivial());
    assert!(cohomology_group(&g, 2).unwrap().structure().is_trivial());
    assert_eq!(cohomology_group(&g, 0).unwrap().structure(), &st(0, &[2]));
}

fn sample_modules() -> Vec<GModule> {
    let s3 = Arc::new(FinGroup::symmetric(3));
    let z3_sign = {
        // S3 acting on Z/3 through the sign character
        let act: Vec<IntMatrix> = s3
            .generators()
            .iter()
            .map(|&g| {
                let odd = s3.element_order(g) == 2;
                m(&[vec![if odd { -1 } else { 1 }]])
            })
            .collect();
        GModule::new(s3.clone(), m(&[vec![3]]), act).unwrap()
    };
    vec![
        z4_with_loose_lift(),
        sign_module(),
        trivial_module(klein(), &st(1, &[2])),
        norm_quotient(klein()),
        regular_module(cyclic(3)),
        z3_sign,
        GModule::new(cyclic(4), m(&[vec![2, 0], vec![0, 2]]), vec![m(&[vec![1, 1], vec![0, 1]])]).unwrap(),
    ]
}

#[test]
fn sparse_and_dense_paths_agree() {
    for g in sample_modules() {
        for n in 1..=2 {
            let sparse = cohomology_group(&g, n).unwrap();
            let dense = cohomology_group_dense(&g, n).unwrap();
            assert_eq!(sparse.structure(), dense.structure(), "degree {n}");
            for gen in sparse.generators() {
                assert!(dense.coordinates(gen).is_ok());
            }
        }
    }
}

#[test]
fn square_zero_on_samples() {
    for g in sample_modules() {
        assert!(verify_square_zero(&TwoTermComplex::concentrated_in_degree_zero(g.clone()), 2).unwrap());
        assert!(verify_square_zero(&TwoTermComplex::concentrated_in_degree_minus_one(g), 1).unwrap());
    }
}

#[test]
fn generators_have_unit_coordinates() {
    for g in sample_modules() {
        for n in 0..=2 {
            let h = cohomology_group(&g, n).unwrap();
            for (i, gen) in h.generators().iter().enumerate() {
                let c = h.coordinates(gen).unwrap();
                for (j, x) in c.iter().enumerate() {
                    assert_eq!(x.is_one(), i == j);
                    assert!(i == j || x.is_zero());
                }
            }
        }
    }
}

#[test]
fn non_cocycles_are_rejected() {
    // for the sign module, x(e) = 0, x(s) = 1 is a cocycle, x(e) = 1 is not
    let h = cohomology_group(&sign_module(), 1).unwrap();
    let one = BigInt::one();
    assert!(h.coordinates(&[BigInt::zero(), one.clone()]).is_ok());
    assert_eq!(h.coordinates(&[one, BigInt::zero()]), Err(CohomologyError::NotACocycle));
    assert!(matches!(h.coordinates(&[]), Err(CohomologyError::WrongLength { .. })));
}

/// `D̃∘D̃ = Rel∘h` checked against a second application of the differential, on a hyper model with
/// loose lifts on both sides.
#[test]
fn correction_term_matches_solve() {
    let a = z4_with_loose_lift();
    let b = GModule::new(cyclic(2), m(&[vec![8]]), vec![m(&[vec![7]])]).unwrap();
    let c = TwoTermComplex::new(a, b, m(&[vec![2]])).unwrap();
    c.validate().unwrap();
    assert!(verify_square_zero(&c, 2).unwrap());
    let model = Model::new(&c).unwrap();
    for n in 0..=1i64 {
        let l = model.layout(n);
        for i in 0..l.lift_len() {
            let mut v = vec![BigInt::zero(); l.total()];
            v[i] = BigInt::one();
            let dv = model.apply(n, &v);
            let mut x_only = dv.clone();
            let l1 = model.layout(n + 1);
            for y in &mut x_only[l1.lift_len()..] {
                *y = BigInt::zero();
            }
            let ddx = model.apply(n + 1, &x_only);
            // X-part of D(D̃x, 0) is D̃D̃x, which must equal Rel·h(x) = −Rel·(Y-part of Dx)
            let l2 = model.layout(n + 2);
            let h = &dv[l1.lift_len()..];
            let rel_h: Vec<BigInt> = {
                let (ha, hb) = h.split_at(l1.ya);
                let mut out: Vec<BigInt> = ha
                    .chunks(model.a.r.max(1))
                    .take(if model.a.r == 0 { 0 } else { usize::MAX })
                    .flat_map(|c| model.a.rel.mul_vec(c))
                    .collect();
                out.extend(
                    hb.chunks(model.b.r.max(1))
                        .take(if model.b.r == 0 { 0 } else { usize::MAX })
                        .flat_map(|c| model.b.rel.mul_vec(c)),
                );
                out
            };
            let expected: Vec<BigInt> = rel_h.iter().map(|x| -x).collect();
            assert_eq!(&ddx[..l2.lift_len()], &expected[..], "basis {i} in degree {n}");
        }
    }
}

#[test]
fn hyper_degenerate_cases() {
    for g in sample_modules() {
        let h1 = cohomology_group(&g, 1).unwrap();
        let h2 = cohomology_group(&g, 2).unwrap();
        let b_only = hypercohomology_h1(&TwoTermComplex::concentrated_in_degree_zero(g.clone())).unwrap();
        let a_only = hypercohomology_h1(&TwoTermComplex::concentrated_in_degree_minus_one(g.clone())).unwrap();
        assert_eq!(b_only.structure(), h1.structure());
        assert_eq!(a_only.structure(), h2.structure());
        let zero_map = IntMatrix::zeros(g.ambient_rank(), g.ambient_rank());
        let split = hypercohomology_h1(&TwoTermComplex::new(g.clone(), g.clone(), zero_map).unwrap()).unwrap();
        assert_eq!(split.structure(), &h1.structure().direct_sum(h2.structure()));
    }
}

#[test]
fn five_term_examples() {
    for g in sample_modules() {
        let id = IntMatrix::identity(g.ambient_rank());
        let cone = TwoTermComplex::new(g.clone(), g.clone(), id).unwrap();
        let seq = five_term_sequence(&cone).unwrap();
        assert!(seq.groups()[2].structure().is_trivial());
        assert!(seq.is_exact());

        let b0 = TwoTermComplex::concentrated_in_degree_minus_one(g.clone());
        let seq = five_term_sequence(&b0).unwrap();
        assert!(seq.is_exact());
        let middle = seq.maps[2].hom();
        assert!(middle.kernel().structure().is_trivial());
        assert_eq!(middle.image().structure(), seq.groups()[3].structure().clone());
    }
    // Z -> Z/2 reduction over Klein: H¹(Z) = 0 → H¹(Z/2) → H¹(C) → H²(Z) → H²(Z/2)
    let k = klein();
    let c = TwoTermComplex::new(trivial_module(k.clone(), &st(1, &[])), trivial_module(k, &st(0, &[2])), m(&[vec![1]]))
        .unwrap();
    let seq = five_term_sequence(&c).unwrap();
    assert!(seq.is_exact());
}

#[test]
fn restriction_examples() {
    let k = klein();
    let z2 = trivial_module(k.clone(), &st(0, &[2]));
    let h1 = cohomology_group(&z2, 1).unwrap();
    let whole = restriction_map(&h1, &Subgroup::whole(&k)).unwrap();
    assert!(whole.hom().kernel().structure().is_trivial());
    assert_eq!(whole.hom().image().structure(), h1.structure().clone());
    let trivial = restriction_map(&h1, &Subgroup::trivial(&k)).unwrap();
    assert!(trivial.is_zero());
    // Hom(Γ, Z/2) → Hom(C, Z/2) is evaluation: for each cyclic C of order 2,
    // exactly the homomorphisms nonzero on C survive, so the image is Z/2.
    for x in 1..4 {
        let c = Subgroup::generated_by(&k, &[x]);
        let r = restriction_map(&h1, &c).unwrap();
        assert_eq!(r.hom().image().structure(), st(0, &[2]));
        for gen in h1.generators() {
            let value_on_x = gen[x].clone();
            let restricted = r.target.coordinates(&[gen[0].clone(), gen[x].clone()]).unwrap();
            assert_eq!(restricted[0].is_zero(), (value_on_x % BigInt::from(2)).is_zero());
        }
    }
    for n in 1..=2 {
        let h = cohomology_group(&norm_quotient(k.clone()), n).unwrap();
        assert!(restriction_map(&h, &Subgroup::trivial(&k)).unwrap().is_zero());
    }
}

#[test]
fn inflation_examples() {
    let k = klein();
    let factor = Subgroup::new(&k, &[0, 1]).unwrap();
    let (q, proj) = quotient_map(&k, &factor).unwrap();
    let q = Arc::new(q);
    let z2 = trivial_module(q.clone(), &st(0, &[2]));
    let h1 = cohomology_group(&z2, 1).unwrap();
    let inf = inflation_map(&h1, k.clone(), &proj).unwrap();
    assert!(inf.is_injective());

    let id: Vec<usize> = (0..k.order()).collect();
    let h = cohomology_group(&trivial_module(k.clone(), &st(0, &[2])), 2).unwrap();
    let same = inflation_map(&h, k.clone(), &id).unwrap();
    assert_eq!(same.matrix, IntMatrix::identity(h.generators().len()));
}
