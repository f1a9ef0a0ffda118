//! Property tests for the scalar and lattice layers.

use fittkit::exact::{p_valuation, rat, Cyclo, Valuation};
use fittkit::matlat::{snf, IntegerLattice, LocalLattice, Mat, StructureAlgebra};
use fittkit::Int;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn small_int() -> impl Strategy<Value = i64> {
    -6i64..7
}

proptest! {
    #[test]
    fn valuation_additive(n1 in 1i64..400, d1 in 1i64..400, n2 in 1i64..400, d2 in 1i64..400, pidx in 0usize..3) {
        let p = [2i64, 3, 5][pidx];
        let x = rat(n1, d1);
        let y = rat(n2, d2);
        let (Valuation::Finite(a), Valuation::Finite(b), Valuation::Finite(c)) = (
            p_valuation(&x, &Int::from(p)),
            p_valuation(&y, &Int::from(p)),
            p_valuation(&(x.clone() * y.clone()), &Int::from(p)),
        ) else { panic!("nonzero") };
        prop_assert_eq!(a + b, c);
    }

    #[test]
    fn hnf_stable_under_row_shuffle(rows in proptest::collection::vec(proptest::collection::vec(small_int(), 4), 1..5), seed in 0u64..1000) {
        let to_int = |rows: &Vec<Vec<i64>>| -> Vec<Vec<Int>> {
            rows.iter().map(|r| r.iter().map(|&x| Int::from(x)).collect()).collect()
        };
        let lat1 = IntegerLattice::from_int_rows(4, to_int(&rows));
        let mut shuffled = rows.clone();
        // deterministic shuffle from the seed
        let n = shuffled.len();
        for i in 0..n {
            let j = ((seed as usize) + i * 7) % n;
            shuffled.swap(i, j);
        }
        let lat2 = IntegerLattice::from_int_rows(4, to_int(&shuffled));
        prop_assert_eq!(lat1, lat2);
    }

    #[test]
    fn snf_diag_chain(entries in proptest::collection::vec(small_int(), 9)) {
        let m = Mat::from_fn(3, 3, |r, c| Int::from(entries[3 * r + c]));
        let s = snf(&m);
        for w in s.diag.windows(2) {
            if !w[0].is_zero() {
                prop_assert!((&w[1] % &w[0]).is_zero());
            } else {
                prop_assert!(w[1].is_zero());
            }
        }
        let prod: Int = s.diag.iter().fold(Int::from(1), |a, b| a * b);
        prop_assert_eq!(prod.abs(), m.det().unwrap().abs());
    }

    #[test]
    fn cyclo_galois_is_multiplicative(c0 in small_int(), c1 in small_int(), d0 in small_int(), d1 in small_int(), kidx in 0usize..4) {
        let m = 5u64;
        let units = [1u64, 2, 3, 4];
        let k = units[kidx];
        let x = Cyclo::from_coeffs(m, vec![rat(c0, 1), rat(c1, 1), rat(0, 1), rat(0, 1)]);
        let y = Cyclo::from_coeffs(m, vec![rat(d0, 1), rat(d1, 1), rat(0, 1), rat(0, 1)]);
        prop_assert_eq!(x.mul(&y).galois(k), x.galois(k).mul(&y.galois(k)));
    }
}

/// Lattice products are commutative and associative in a commutative
/// structure algebra.
#[test]
fn lattice_product_commutes_and_associates() {
    use rand::{Rng, SeedableRng};
    let alg = two_component_algebra();
    let mut rng = rand::rngs::StdRng::seed_from_u64(55);
    for _ in 0..40 {
        let mk = |rng: &mut rand::rngs::StdRng| {
            let rows: Vec<Vec<fittkit::Rat>> = (0..2)
                .map(|_| (0..2).map(|_| rat(rng.gen_range(-4..5), 1)).collect())
                .collect();
            LocalLattice::from_rat_rows(3, 2, &rows)
        };
        let a = mk(&mut rng);
        let b = mk(&mut rng);
        let c = mk(&mut rng);
        if a.is_zero() || b.is_zero() || c.is_zero() {
            continue;
        }
        let ab = a.product(&b, &alg).unwrap();
        let ba = b.product(&a, &alg).unwrap();
        assert!(ab.eq_local(&ba).unwrap());
        let ab_c = ab.product(&c, &alg).unwrap();
        let a_bc = a.product(&b.product(&c, &alg).unwrap(), &alg).unwrap();
        assert!(ab_c.eq_local(&a_bc).unwrap());
    }
}

fn two_component_algebra() -> StructureAlgebra {
    let e = |k: usize, v: i64| {
        let mut u = vec![rat(0, 1); 2];
        u[k] = rat(v, 1);
        u
    };
    StructureAlgebra::new(
        vec!["a".into(), "b".into()],
        vec![vec![e(0, 1), e(0, 0)], vec![e(0, 0), e(1, 1)]],
        None,
    )
    .unwrap()
}

/// Trace-form duals of unramified rings are themselves: the Gaussian
/// integers at 3.
#[test]
fn gaussian_integers_self_dual_at_three() {
    // Q(i) over the basis {1, i}: trace form [[2, 0], [0, -2]]
    let alg = StructureAlgebra::new(
        vec!["1".into(), "i".into()],
        vec![
            vec![vec![rat(1, 1), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]],
            vec![vec![rat(0, 1), rat(1, 1)], vec![rat(-1, 1), rat(0, 1)]],
        ],
        Some(Mat::from_rows(vec![
            vec![rat(2, 1), rat(0, 1)],
            vec![rat(0, 1), rat(-2, 1)],
        ])),
    )
    .unwrap();
    let lat = LocalLattice::standard(3, 2);
    let dual = lat.dual(&alg).unwrap();
    assert!(dual.eq_local(&lat).unwrap(), "unramified at 3: self-dual");
    // at 2 the dual strictly contains the ring (2 ramifies)
    let lat2 = LocalLattice::standard(2, 2);
    let dual2 = lat2.dual(&alg).unwrap();
    assert!(lat2.subset_of(&dual2).unwrap());
    assert!(!dual2.eq_local(&lat2).unwrap());
}
