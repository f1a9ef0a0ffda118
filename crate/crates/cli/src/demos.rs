//! Shipped demonstrations reproducing the worked examples: each demo runs an
//! exact computation and prints canonical lattices.

use crate::report::Report;
use fittkit::exact::{rat, rat_int};
use fittkit::grp::make_group;
use fittkit::grpalg::{builtin_wedderburn, generalized_adjoint, nrd, GaElem, GaMat};
use fittkit::matlat::{LocalLattice, Mat, DEFAULT_MINOR_CAP};
use fittkit::morita::{
    hom_quotient_presentation, is_principal, morita_fitt, quotient_by_ideal_presentation, EndOrder,
    QuadIdeal, QuadraticOrder,
};
use fittkit::ncfit::*;

/// Expand compact group names (`S3`, `D6`, `C4`, `Q8`, `Aff5`) to builtin specs.
fn group_spec(name: &str) -> String {
    let compact = name.trim();
    if let Some(rest) = compact.strip_prefix("Aff") {
        if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
            return format!("affine {rest}");
        }
    }
    if compact == "Q8" {
        return "quaternion8".into();
    }
    for (prefix, builtin) in [("S", "symmetric"), ("D", "dihedral"), ("C", "cyclic")] {
        if let Some(rest) = compact.strip_prefix(prefix) {
            if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
                return format!("{builtin} {rest}");
            }
        }
    }
    compact.to_string()
}

pub fn run_demo(name: &str, report: &mut Report) -> Result<(), String> {
    let words: Vec<&str> = name.split_whitespace().collect();
    match words.as_slice() {
        ["dependence_on_h"] => dependence_on_h(report),
        ["hereditary"] => hereditary(3, report),
        ["hereditary", p] => hereditary(p.parse().map_err(|_| "bad prime")?, report),
        ["delta-g", g, p] => delta_g(g, p.parse().map_err(|_| "bad prime")?, report),
        ["dihedral-nrd", p] => dihedral_nrd(p.parse().map_err(|_| "bad prime")?, report),
        ["zero-adjoint", g] => zero_adjoint(g, report),
        ["conductor-index", a] => conductor_index(a.parse().map_err(|_| "bad exponent")?, report),
        ["morita"] => morita_demo(report),
        ["s4-denom"] => s4_denom(report),
        _ => Err(format!(
            "unknown demo {name:?}; available: {}",
            DEMO_NAMES.join(", ")
        )),
    }
}

/// Two presentations of the zero module over M_2(Z_(3)) with different
/// invariants.
fn dependence_on_h(report: &mut Report) -> Result<(), String> {
    let ctx =
        OrderContext::new(OrderDescriptor::MatrixRing { n: 2, p: 3 }).map_err(|e| e.to_string())?;
    let id = PresentationNC::identity(ctx.order().clone(), 1);
    let f_id = fitt_presentation(&ctx, &id, None, DEFAULT_MINOR_CAP).map_err(|e| e.to_string())?;
    report.line("presentation 1: the identity map");
    report.lattice(
        "fitt-identity",
        &f_id.lattice,
        &[("max", f_id.max_certified)],
    );
    let mk = |a: i64, b: i64| {
        OrderElem::Mat(Mat::from_rows(vec![
            vec![rat_int(a), rat_int(b)],
            vec![rat_int(b), rat_int(a)],
        ]))
    };
    let pres = PresentationNC::new(ctx.order().clone(), vec![vec![mk(4, 1)], vec![mk(5, 1)]])
        .map_err(|e| e.to_string())?;
    let f = fitt_presentation(&ctx, &pres, None, DEFAULT_MINOR_CAP).map_err(|e| e.to_string())?;
    report.line("presentation 2: rows with determinants 15 and 24");
    report.lattice("fitt-two-rows", &f.lattice, &[("max", f.max_certified)]);
    let three = LocalLattice::from_rat_rows(3, 1, &[vec![rat_int(3)]]);
    report.kv(
        "two-row invariant equals 3 Z_(3)",
        &format!("{}", f.lattice.eq_local(&three).map_err(|e| e.to_string())?),
    );
    Ok(())
}

/// The hereditary congruence order is not Fitting-additive.
fn hereditary(p: u64, report: &mut Report) -> Result<(), String> {
    let ctx = OrderContext::new(OrderDescriptor::Hereditary { p }).map_err(|e| e.to_string())?;
    let pi = p as i64;
    let m = |e: [[i64; 2]; 2]| {
        OrderElem::Mat(Mat::from_rows(vec![
            vec![rat_int(e[0][0]), rat_int(e[0][1])],
            vec![rat_int(e[1][0]), rat_int(e[1][1])],
        ]))
    };
    let m_pres = PresentationNC::new(
        ctx.order().clone(),
        vec![vec![m([[pi, 0], [0, 1]])], vec![m([[0, pi], [1, 0]])]],
    )
    .map_err(|e| e.to_string())?;
    let n_pres = PresentationNC::new(
        ctx.order().clone(),
        vec![vec![m([[1, 0], [0, pi]])], vec![m([[0, pi], [1, 0]])]],
    )
    .map_err(|e| e.to_string())?;
    let sum_pres = PresentationNC::new(ctx.order().clone(), vec![vec![m([[0, pi], [1, 0]])]])
        .map_err(|e| e.to_string())?;
    let rep = additivity_compare(
        &ctx,
        &m_pres,
        &n_pres,
        Some(&sum_pres),
        None,
        DEFAULT_MINOR_CAP,
    )
    .map_err(|e| e.to_string())?;
    report.lattice("product", &rep.product, &[]);
    report.lattice("direct-sum", &rep.direct_sum, &[]);
    report.kv("product-contained", &rep.product_contained.to_string());
    report.kv("additive", &rep.equal.to_string());
    report.line(&format!(
        "strict inclusion p^2 Z_({p}) inside p Z_({p}): {}",
        rep.product_contained && !rep.equal
    ));
    Ok(())
}

/// The augmentation kernel invariant (1/|G'|) N_G Z_(p).
fn delta_g(gname: &str, p: u64, report: &mut Report) -> Result<(), String> {
    let g = make_group(&group_spec(gname)).map_err(|e| e.to_string())?;
    let ctx = OrderContext::new(OrderDescriptor::GroupRing {
        group: g.clone(),
        p,
    })
    .map_err(|e| e.to_string())?;
    let gens: Vec<Vec<OrderElem>> = g
        .generators()
        .iter()
        .map(|&x| {
            vec![OrderElem::Ga(
                GaElem::from_group_elem(&g, x).sub(&GaElem::one(&g)),
            )]
        })
        .collect();
    let pres = presentation_of_submodule(&ctx, &gens).map_err(|e| e.to_string())?;
    let sampler = Sampler {
        max_size: 2,
        coeff_bound: 2,
        count: 40,
        seed: 7,
    };
    let int_ring = integrality_ring_bounds(&ctx, &sampler).map_err(|e| e.to_string())?;
    let fitt = fitt_presentation(
        &ctx,
        &pres,
        if int_ring.certified {
            Some(&int_ring.lower)
        } else {
            None
        },
        DEFAULT_MINOR_CAP,
    )
    .map_err(|e| e.to_string())?;
    report.component_legend(ctx.centers());
    report.lattice("fitt-augmentation-kernel", &fitt.lattice, &[]);
    let commut = g.commutator_subgroup().len() as i64;
    let data = builtin_wedderburn(&g).map_err(|e| e.to_string())?;
    let expected_gen = ctx
        .centers()
        .central_to_coords(&data, &GaElem::group_sum(&g).scale(&rat(1, commut)));
    let expected = LocalLattice::from_rat_rows(p, ctx.centers().dim(), &[expected_gen]);
    report.kv(
        "equals (1/|G'|) N_G span",
        &fitt
            .lattice
            .eq_local(&expected)
            .map_err(|e| e.to_string())?
            .to_string(),
    );
    Ok(())
}

/// Nrd(sigma + tau) over the dihedral group of order 2p.
fn dihedral_nrd(p: u64, report: &mut Report) -> Result<(), String> {
    let g = make_group(&format!("dihedral {}", 2 * p)).map_err(|e| e.to_string())?;
    let data = builtin_wedderburn(&g).map_err(|e| e.to_string())?;
    let n = g.order();
    let mut coeffs = vec![rat_int(0); n];
    coeffs[1] = rat_int(1);
    coeffs[n / 2] = rat_int(1);
    let h = GaMat::from_rows(&g, vec![vec![GaElem::from_coeffs(&g, coeffs)]]);
    let t = nrd(&h, &data).map_err(|e| e.to_string())?;
    let vals: Vec<String> = t.values().iter().map(|v| format!("{v}")).collect();
    report.kv("nrd(sigma+tau)", &format!("({})", vals.join(", ")));
    report.kv(
        "equals 2 e_1",
        &(t.to_central(&data) == GaElem::group_sum(&g).scale(&rat(1, p as i64))).to_string(),
    );
    Ok(())
}

/// The generalized adjoint of the 1 x 1 zero matrix.
fn zero_adjoint(gname: &str, report: &mut Report) -> Result<(), String> {
    let g = make_group(&group_spec(gname)).map_err(|e| e.to_string())?;
    let data = builtin_wedderburn(&g).map_err(|e| e.to_string())?;
    let adj = generalized_adjoint(&GaMat::zero(&g, 1, 1), &data).map_err(|e| e.to_string())?;
    let entry = adj.at(0, 0);
    let parts: Vec<String> = entry
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(i, c)| format!("{i}:{c}"))
        .collect();
    report.kv("zero-adjoint", &parts.join(" "));
    let commut = g.commutator_subgroup();
    let mut expected = GaElem::zero(&g);
    for &c in &commut {
        expected =
            expected.add(&GaElem::from_group_elem(&g, c).scale(&rat(1, commut.len() as i64)));
    }
    report.kv(
        "equals averaged commutator sum",
        &(entry == &expected).to_string(),
    );
    Ok(())
}

/// [variant conductor : conductor] for the dihedral group of order 2^a.
fn conductor_index(a: u32, report: &mut Report) -> Result<(), String> {
    let g = make_group(&format!("dihedral {}", 1usize << a)).map_err(|e| e.to_string())?;
    let ctx = OrderContext::new(OrderDescriptor::GroupRing { group: g, p: 2 })
        .map_err(|e| e.to_string())?;
    let cond = central_conductor(&ctx)
        .map_err(|e| e.to_string())?
        .aggregate;
    let var = conductor_variant(&ctx).map_err(|e| e.to_string())?;
    report.lattice("conductor", &cond, &[]);
    report.lattice("variant", &var, &[]);
    let idx = cond.index_p_power(&var).map_err(|e| e.to_string())?;
    report.kv("index", &idx.to_string());
    Ok(())
}

/// The appendix example over Z[sqrt(-5)].
fn morita_demo(report: &mut Report) -> Result<(), String> {
    let r = QuadraticOrder::new(-5).map_err(|e| e.to_string())?;
    let a = QuadIdeal::from_elems(r, &[r.elem_int(2, 0), r.elem_int(1, 1)])
        .map_err(|e| e.to_string())?;
    let witness = is_principal(&a).map_err(|e| e.to_string())?;
    report.kv("(2, 1+sqrt(-5)) principal", &witness.is_some().to_string());
    let end = EndOrder::new(r, a).map_err(|e| e.to_string())?;
    let b = QuadIdeal::from_elems(r, &[r.elem_int(3, 0), r.elem_int(1, 1)])
        .map_err(|e| e.to_string())?;
    let lhs_pres = quotient_by_ideal_presentation(&end, &b).map_err(|e| e.to_string())?;
    let lhs = morita_fitt(&lhs_pres, DEFAULT_MINOR_CAP).map_err(|e| e.to_string())?;
    let rhs_pres = hom_quotient_presentation(&end, &b).map_err(|e| e.to_string())?;
    let rhs = rhs_pres
        .fitting_ideal(0, DEFAULT_MINOR_CAP)
        .map_err(|e| e.to_string())?;
    report.kv(
        "quotient-by-ideal equality",
        &lhs.eq_ideal(&rhs).to_string(),
    );
    let fittkit::commfit::CommIdeal::Quad(Some(l)) = &lhs else {
        return Err("unexpected ideal kind".into());
    };
    report.kv("equals b^2", &l.eq_ideal(&b.mul(&b)).to_string());
    Ok(())
}

/// Denominator bounds for `Z_(2)[S4]`: no exact value is computed here, so
/// the run reports valid bounds and exit code 2.
fn s4_denom(report: &mut Report) -> Result<(), String> {
    let g = make_group("symmetric 4").map_err(|e| e.to_string())?;
    let ctx = OrderContext::new(OrderDescriptor::GroupRing { group: g, p: 2 })
        .map_err(|e| e.to_string())?;
    let sampler = Sampler {
        max_size: 1,
        coeff_bound: 1,
        count: 12,
        seed: 5,
    };
    let b = denominator_bounds(&ctx, &sampler).map_err(|e| e.to_string())?;
    report.component_legend(ctx.centers());
    report.lattice("denominator-lower", &b.lower, &[]);
    report.lattice("denominator-upper", &b.upper, &[]);
    report.kv(
        "lower-contained-in-upper",
        &b.lower
            .subset_of(&b.upper)
            .map_err(|e| e.to_string())?
            .to_string(),
    );
    report.kv("certified", &b.certified.to_string());
    if !b.certified {
        report.uncertified = true;
    }
    Ok(())
}

pub const DEMO_NAMES: &[&str] = &[
    "dependence_on_h",
    "hereditary",
    "delta-g S3 3",
    "dihedral-nrd 3",
    "dihedral-nrd 5",
    "zero-adjoint S3",
    "conductor-index 3",
    "conductor-index 4",
    "morita",
    "s4-denom",
];
