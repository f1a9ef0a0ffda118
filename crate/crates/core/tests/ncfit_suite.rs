//! Integration checks for the noncommutative invariants over group rings:
//! integrality-ring and denominator-ideal certification, augmentation-kernel
//! invariants, annihilation, and the four-term duality identity.

use fittkit::exact::{rat, rat_int, Rat};
use fittkit::grp::builtins::*;
use fittkit::grpalg::{builtin_wedderburn, GaElem};
use fittkit::matlat::{LocalLattice, Mat, DEFAULT_MINOR_CAP};
use fittkit::ncfit::*;
use rand::{Rng, SeedableRng};

fn group_ring_ctx(g: &std::sync::Arc<fittkit::grp::FiniteGroup>, p: u64) -> OrderContext {
    OrderContext::new(OrderDescriptor::GroupRing {
        group: g.clone(),
        p,
    })
    .unwrap()
}

#[test]
fn integrality_ring_certification_s3() {
    let g = symmetric(3).unwrap();
    // at p = 3 the sampled reduced norms generate the centre of the maximal
    // order
    let ctx = group_ring_ctx(&g, 3);
    let sampler = Sampler {
        max_size: 2,
        coeff_bound: 2,
        count: 40,
        seed: 7,
    };
    let b = integrality_ring_bounds(&ctx, &sampler).unwrap();
    assert!(b.certified, "Z_(3)[S3] integrality ring must certify");
    assert!(b.lower.eq_local(ctx.centers().zeta_max()).unwrap());
    // at p = 5 the commutator criterion pins the ring to the centre
    let ctx5 = group_ring_ctx(&g, 5);
    let b5 = integrality_ring_bounds(&ctx5, &sampler).unwrap();
    assert!(b5.certified);
    assert!(b5.lower.eq_local(ctx5.centers().zeta_lambda()).unwrap());
}

#[test]
fn denominator_certification_s3() {
    let g = symmetric(3).unwrap();
    let ctx = group_ring_ctx(&g, 3);
    let sampler = Sampler {
        max_size: 2,
        coeff_bound: 2,
        count: 30,
        seed: 11,
    };
    let b = denominator_bounds(&ctx, &sampler).unwrap();
    assert!(b.lower.subset_of(&b.upper).unwrap());
    assert!(b.certified, "Z_(3)[S3] denominator ideal must certify");
    // the certified value is the central conductor
    let cond = central_conductor(&ctx).unwrap();
    assert!(b.upper.eq_local(&cond.aggregate).unwrap());
    // at p = 5 everything is the centre
    let ctx5 = group_ring_ctx(&g, 5);
    let b5 = denominator_bounds(&ctx5, &sampler).unwrap();
    assert!(b5.certified);
    assert!(b5.upper.eq_local(ctx5.centers().zeta_lambda()).unwrap());
    // ideal property spot check
    let checked = check_denominator_ideal_property(&ctx, &b, &sampler, 6).unwrap();
    assert!(checked > 0);
}

#[test]
fn zero_adjoint_blocks_one_when_p_divides_commutator() {
    // for any G with p | |G'| the upper bound excludes 1
    let g = symmetric(3).unwrap();
    let ctx = group_ring_ctx(&g, 3);
    let sampler = Sampler {
        max_size: 1,
        coeff_bound: 1,
        count: 4,
        seed: 3,
    };
    let b = denominator_bounds(&ctx, &sampler).unwrap();
    let data = builtin_wedderburn(&g).unwrap();
    let one = ctx.centers().central_to_coords(&data, &GaElem::one(&g));
    assert!(!b.upper.contains(&one), "1 is not in the denominator ideal");
}

/// Presentation of the augmentation kernel on the generators {g - 1}.
fn augmentation_kernel_presentation(
    ctx: &OrderContext,
    g: &std::sync::Arc<fittkit::grp::FiniteGroup>,
) -> PresentationNC {
    let gens: Vec<Vec<OrderElem>> = g
        .generators()
        .iter()
        .map(|&x| {
            vec![OrderElem::Ga(
                GaElem::from_group_elem(g, x).sub(&GaElem::one(g)),
            )]
        })
        .collect();
    presentation_of_submodule(ctx, &gens).unwrap()
}

#[test]
fn augmentation_kernel_invariant_s3_at_3() {
    let g = symmetric(3).unwrap();
    let ctx = group_ring_ctx(&g, 3);
    let pres = augmentation_kernel_presentation(&ctx, &g);
    // sanity: the augmentation of the presented module matches
    // |G/G'| Z_(3) after base change
    let aug = pres.augmented().unwrap();
    let fittkit::commfit::CommIdeal::Local(l) = aug.fitting_ideal(0, DEFAULT_MINOR_CAP).unwrap()
    else {
        panic!("local ideal expected")
    };
    assert!(l
        .eq_local(&LocalLattice::from_rat_rows(3, 1, &[vec![rat_int(2)]]))
        .unwrap());
    // the invariant equals (1/3) N_G Z_(3) in centre coordinates
    let sampler = Sampler {
        max_size: 2,
        coeff_bound: 2,
        count: 40,
        seed: 7,
    };
    let int_ring = integrality_ring_bounds(&ctx, &sampler).unwrap();
    assert!(int_ring.certified);
    let fitt = fitt_presentation(&ctx, &pres, Some(&int_ring.lower), DEFAULT_MINOR_CAP).unwrap();
    let data = builtin_wedderburn(&g).unwrap();
    let ng = GaElem::group_sum(&g).scale(&rat(1, 3));
    let expected_gen = ctx.centers().central_to_coords(&data, &ng);
    let expected = LocalLattice::from_rat_rows(3, 3, &[expected_gen]);
    assert!(
        fitt.lattice.eq_local(&expected).unwrap(),
        "augmentation kernel invariant: got {:?}, expected {:?}",
        fitt.lattice,
        expected
    );
}

#[test]
fn annihilation_over_s3() {
    // every element of (denominator lower bound) * Fitt annihilates the
    // cokernel, for random finite-cokernel presentations
    let g = symmetric(3).unwrap();
    let ctx = group_ring_ctx(&g, 3);
    let sampler = Sampler {
        max_size: 2,
        coeff_bound: 2,
        count: 20,
        seed: 19,
    };
    let denom = denominator_bounds(&ctx, &sampler).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(23);
    let mut done = 0;
    while done < 5 {
        let rows: Vec<Vec<OrderElem>> = (0..2)
            .map(|_| {
                (0..2)
                    .map(|_| {
                        OrderElem::Ga(GaElem::from_coeffs(
                            &g,
                            (0..6).map(|_| rat(rng.gen_range(-2..3), 1)).collect(),
                        ))
                    })
                    .collect()
            })
            .collect();
        let pres = PresentationNC::new(ctx.order().clone(), rows).unwrap();
        let fitt = fitt_presentation(&ctx, &pres, None, DEFAULT_MINOR_CAP).unwrap();
        if fitt.is_zero {
            continue;
        }
        let product = fitt
            .lattice
            .product(&denom.lower, ctx.centers().algebra())
            .unwrap();
        let Ok(ok_all) = (|| -> Result<bool, NcError> {
            for v in product.lattice().basis_rat() {
                if !verify_annihilation(&ctx, &pres, &v)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })() else {
            continue; // infinite cokernel, resample
        };
        assert!(ok_all, "denominator times invariant must annihilate");
        done += 1;
    }
}

#[test]
fn conductor_variant_index_for_two_power_dihedral() {
    // [variant : conductor] = 2^(a-2) for the dihedral group of order 2^a
    for (two_a, expect) in [(8usize, 2i64), (16, 4)] {
        let g = dihedral(two_a).unwrap();
        let ctx = group_ring_ctx(&g, 2);
        let cond = central_conductor(&ctx).unwrap().aggregate;
        let var = conductor_variant(&ctx).unwrap();
        assert!(cond.subset_of(&var).unwrap());
        let idx = cond.index_p_power(&var).unwrap();
        assert_eq!(idx, fittkit::exact::int(expect), "order {two_a}");
    }
}

#[test]
fn four_term_duality_identity() {
    // chains 0 -> M -> C -> C' -> M' -> 0 built from factorizations
    // q = A B, q' = B A over abelian group rings: the two lattice products
    // agree
    let mut rng = rand::rngs::StdRng::seed_from_u64(57);
    let mut done = 0;
    while done < 10 {
        let (g, p) = if done % 2 == 0 {
            (cyclic(3).unwrap(), 3u64)
        } else {
            (cyclic(4).unwrap(), 2u64)
        };
        let ctx = group_ring_ctx(&g, p);
        let data = builtin_wedderburn(&g).unwrap();
        let n = g.order();
        let mk = |rng: &mut rand::rngs::StdRng| {
            fittkit::grpalg::GaMat::from_fn(&g, 1, 1, |_, _| {
                GaElem::from_coeffs(&g, (0..n).map(|_| rat(rng.gen_range(-2..3), 1)).collect())
            })
        };
        let a = mk(&mut rng);
        let b = mk(&mut rng);
        let q = a.matmul(&b);
        let q_prime = b.matmul(&a);
        // all four modules must be finite: reduced norms nonzero
        let nq = fittkit::grpalg::nrd(&q, &data).unwrap();
        if nq.values().iter().any(|v| v.is_zero()) {
            continue;
        }
        // M = M' = coker(A); C = coker(q), C' = coker(q')
        let to_pres = |m: &fittkit::grpalg::GaMat| {
            PresentationNC::new(
                ctx.order().clone(),
                vec![vec![OrderElem::Ga(m.at(0, 0).clone())]],
            )
            .unwrap()
        };
        let fitt_of = |m: &fittkit::grpalg::GaMat| {
            fitt_presentation(&ctx, &to_pres(m), None, DEFAULT_MINOR_CAP)
                .unwrap()
                .lattice
        };
        let f_c = fitt_of(&q);
        let f_cp = fitt_of(&q_prime);
        let f_mp = fitt_of(&a);
        // Fitt(M dual)^sharp: compute the dual module invariant through the
        // transpose-sharp presentation, then apply the sharp transform
        let m_pres = to_pres(&a);
        let dual_pres = dual_presentation(&m_pres).unwrap();
        let f_m_dual = fitt_presentation(&ctx, &dual_pres, None, DEFAULT_MINOR_CAP)
            .unwrap()
            .lattice;
        let f_m_dual_sharp = sharp_lattice(&ctx, &f_m_dual).unwrap();
        let alg = ctx.centers().algebra();
        let lhs = f_m_dual_sharp.product(&f_cp, alg).unwrap();
        let rhs = f_mp.product(&f_c, alg).unwrap();
        assert!(
            lhs.eq_local(&rhs).unwrap(),
            "four-term identity fails: {lhs:?} vs {rhs:?}"
        );
        done += 1;
    }
}

#[test]
fn presentation_of_principal_submodule() {
    let g = symmetric(3).unwrap();
    let ctx = group_ring_ctx(&g, 3);
    // K = Lambda * 3 is free of rank one (x -> 3x is injective), so the
    // presentation has a single zero relation and the invariant vanishes
    let gens = vec![vec![OrderElem::Ga(GaElem::from_rat(&g, rat_int(3)))]];
    let pres = presentation_of_submodule(&ctx, &gens).unwrap();
    let fitt = fitt_presentation(&ctx, &pres, None, DEFAULT_MINOR_CAP).unwrap();
    assert!(fitt.is_zero, "free modules have vanishing invariant");
    // the corresponding quotient Lambda / Lambda 3 carries Nrd(3) instead
    let quot = PresentationNC::new(
        ctx.order().clone(),
        vec![vec![OrderElem::Ga(GaElem::from_rat(&g, rat_int(3)))]],
    )
    .unwrap();
    let fitt_q = fitt_presentation(&ctx, &quot, None, DEFAULT_MINOR_CAP).unwrap();
    let data = builtin_wedderburn(&g).unwrap();
    let three = fittkit::grpalg::nrd(
        &fittkit::grpalg::GaMat::identity(&g, 1).scale_central(&GaElem::from_rat(&g, rat_int(3))),
        &data,
    )
    .unwrap();
    let coords = ctx.centers().tuple_to_coords(&three);
    let expected = LocalLattice::from_rat_rows(3, 3, &[coords]);
    let expected_span = expected
        .product(ctx.centers().zeta_lambda(), ctx.centers().algebra())
        .unwrap();
    assert!(fitt_q.lattice.eq_local(&expected_span).unwrap());
    // K = Lambda is likewise free: zero invariant for the submodule, whole
    // ring for the quotient presented by the identity
    let gens = vec![vec![OrderElem::Ga(GaElem::one(&g))]];
    let pres = presentation_of_submodule(&ctx, &gens).unwrap();
    let fitt = fitt_presentation(&ctx, &pres, None, DEFAULT_MINOR_CAP).unwrap();
    assert!(fitt.is_zero);
    let id = PresentationNC::identity(ctx.order().clone(), 1);
    let fitt_id = fitt_presentation(&ctx, &id, None, DEFAULT_MINOR_CAP).unwrap();
    assert!(fitt_id
        .lattice
        .eq_local(ctx.centers().zeta_lambda())
        .unwrap());
}

#[test]
fn block_triangular_product_inclusion() {
    // Fitt(M1) Fitt(M3) ⊆ Fitt of the block-triangular presentation
    let g = dihedral(6).unwrap();
    let ctx = group_ring_ctx(&g, 3);
    let mut rng = rand::rngs::StdRng::seed_from_u64(67);
    for _ in 0..10 {
        let mk = |rng: &mut rand::rngs::StdRng| {
            OrderElem::Ga(GaElem::from_coeffs(
                &g,
                (0..6).map(|_| rat(rng.gen_range(-2..3), 1)).collect(),
            ))
        };
        let h1 = PresentationNC::new(ctx.order().clone(), vec![vec![mk(&mut rng)]]).unwrap();
        let h3 = PresentationNC::new(ctx.order().clone(), vec![vec![mk(&mut rng)]]).unwrap();
        let filler = mk(&mut rng);
        let tri = PresentationNC::new(
            ctx.order().clone(),
            vec![
                vec![h1.at(0, 0).clone(), filler],
                vec![ctx.order().zero_elem(), h3.at(0, 0).clone()],
            ],
        )
        .unwrap();
        let f1 = fitt_presentation(&ctx, &h1, None, DEFAULT_MINOR_CAP).unwrap();
        let f3 = fitt_presentation(&ctx, &h3, None, DEFAULT_MINOR_CAP).unwrap();
        let ft = fitt_presentation(&ctx, &tri, None, DEFAULT_MINOR_CAP).unwrap();
        let product = f1
            .lattice
            .product(&f3.lattice, ctx.centers().algebra())
            .unwrap();
        assert!(product.subset_of(&ft.lattice).unwrap());
    }
}

#[test]
fn join_monotonicity() {
    let g = dihedral(6).unwrap();
    let ctx = group_ring_ctx(&g, 3);
    let mut rng = rand::rngs::StdRng::seed_from_u64(97);
    for _ in 0..10 {
        let mk = |rng: &mut rand::rngs::StdRng, a: usize| {
            let rows: Vec<Vec<OrderElem>> = (0..a)
                .map(|_| {
                    vec![OrderElem::Ga(GaElem::from_coeffs(
                        &g,
                        (0..6).map(|_| rat(rng.gen_range(-2..3), 1)).collect(),
                    ))]
                })
                .collect();
            PresentationNC::new(ctx.order().clone(), rows).unwrap()
        };
        let p1 = mk(&mut rng, 1);
        let p2 = mk(&mut rng, 2);
        let joined = join_presentations(&p1, &p2).unwrap();
        let f1 = fitt_presentation(&ctx, &p1, None, DEFAULT_MINOR_CAP).unwrap();
        let f2 = fitt_presentation(&ctx, &p2, None, DEFAULT_MINOR_CAP).unwrap();
        let fj = fitt_presentation(&ctx, &joined, None, DEFAULT_MINOR_CAP).unwrap();
        let sum = f1.lattice.sum(&f2.lattice).unwrap();
        assert!(sum.subset_of(&fj.lattice).unwrap());
    }
}

#[test]
fn local_scalar_matrix_entries_accepted() {
    // denominators prime to p are legal order elements
    let g = cyclic(2).unwrap();
    let ctx = group_ring_ctx(&g, 3);
    let x = GaElem::from_coeffs(&g, vec![rat(1, 2), rat(5, 4)]);
    let pres = PresentationNC::new(ctx.order().clone(), vec![vec![OrderElem::Ga(x)]]);
    assert!(pres.is_ok());
    let y = GaElem::from_coeffs(&g, vec![rat(1, 3), rat_int(0)]);
    let pres = PresentationNC::new(ctx.order().clone(), vec![vec![OrderElem::Ga(y)]]);
    assert!(pres.is_err());
}

#[test]
fn fitting_matrix_entries_match_direct_dets() {
    // over the matrix order, reduced norms are plain determinants of the
    // flattened matrices
    let ctx = OrderContext::new(OrderDescriptor::MatrixRing { n: 2, p: 5 }).unwrap();
    let mut rng = rand::rngs::StdRng::seed_from_u64(3);
    for _ in 0..10 {
        let entries: Vec<Vec<Rat>> = (0..2)
            .map(|_| (0..2).map(|_| rat(rng.gen_range(-4..5), 1)).collect())
            .collect();
        let m = Mat::from_rows(entries);
        let det = m.det().unwrap();
        let pres = PresentationNC::new(ctx.order().clone(), vec![vec![OrderElem::Mat(m)]]).unwrap();
        let f = fitt_presentation(&ctx, &pres, None, DEFAULT_MINOR_CAP).unwrap();
        let expected = LocalLattice::from_rat_rows(5, 1, &[vec![det]]);
        assert!(f.lattice.eq_local(&expected).unwrap());
    }
}

#[test]
fn abelian_augmentation_kernel_is_group_sum() {
    // for abelian G the augmentation kernel has invariant N_G Z_(p)
    let g = cyclic(3).unwrap();
    let ctx = group_ring_ctx(&g, 3);
    let pres = augmentation_kernel_presentation(&ctx, &g);
    let fitt = fitt_presentation(&ctx, &pres, None, DEFAULT_MINOR_CAP).unwrap();
    let data = builtin_wedderburn(&g).unwrap();
    let ng = ctx
        .centers()
        .central_to_coords(&data, &GaElem::group_sum(&g));
    let expected = LocalLattice::from_rat_rows(3, 3, &[ng]);
    assert!(fitt.lattice.eq_local(&expected).unwrap());
}

#[test]
fn affine_p_certifications_at_p() {
    // Aff(3) at p = 3: p divides the commutator order, the integrality
    // ring certifies at the maximal-order centre and the denominator ideal
    // at the central conductor
    let g = affine(3).unwrap();
    let ctx = group_ring_ctx(&g, 3);
    let sampler = Sampler {
        max_size: 2,
        coeff_bound: 2,
        count: 40,
        seed: 13,
    };
    let ib = integrality_ring_bounds(&ctx, &sampler).unwrap();
    assert!(ib.certified);
    assert!(ib.lower.eq_local(ctx.centers().zeta_max()).unwrap());
    let db = denominator_bounds(&ctx, &sampler).unwrap();
    assert!(db.certified);
    let cond = central_conductor(&ctx).unwrap();
    assert!(db.upper.eq_local(&cond.aggregate).unwrap());
    // at a prime away from the commutator order everything is the centre
    let ctx5 = group_ring_ctx(&g, 5);
    let ib5 = integrality_ring_bounds(&ctx5, &sampler).unwrap();
    assert!(ib5.certified);
    assert!(ib5.lower.eq_local(ctx5.centers().zeta_lambda()).unwrap());
}

#[test]
fn join_family_saturation_flag() {
    let ctx = OrderContext::new(OrderDescriptor::MatrixRing { n: 2, p: 3 }).unwrap();
    let mk = |a: i64, b: i64| {
        OrderElem::Mat(fittkit::matlat::Mat::from_rows(vec![
            vec![rat_int(a), rat_int(b)],
            vec![rat_int(b), rat_int(a)],
        ]))
    };
    let two_rows =
        PresentationNC::new(ctx.order().clone(), vec![vec![mk(4, 1)], vec![mk(5, 1)]]).unwrap();
    let id = PresentationNC::identity(ctx.order().clone(), 1);
    // without the caller's assertion the flag stays down
    let f = fitt_join_family(&ctx, std::slice::from_ref(&two_rows), None, false, DEFAULT_MINOR_CAP)
        .unwrap();
    assert!(!f.max_certified);
    // with the assertion it is the caller's certificate
    let f = fitt_join_family(&ctx, &[two_rows, id], None, true, DEFAULT_MINOR_CAP).unwrap();
    assert!(f.max_certified);
    assert!(f.lattice.eq_local(&LocalLattice::standard(3, 1)).unwrap());
}

#[test]
fn shared_values_are_send_and_sync() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<fittkit::exact::Cyclo>();
    assert_send_sync::<fittkit::grpalg::GaElem>();
    assert_send_sync::<fittkit::matlat::LocalLattice>();
    assert_send_sync::<fittkit::ncfit::OrderContext>();
    assert_send_sync::<fittkit::morita::QuadIdeal>();
}
