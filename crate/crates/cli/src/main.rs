//! Command line front end: parse a problem file, dispatch to the kernel,
//! print canonical results. Exit codes: 0 success, 2 valid-but-uncertified
//! bounds, 1 errors.

mod demos;
mod problem;
mod report;

use fittkit::commfit::{CommIdeal, CommPresentation};
use fittkit::grpalg::{generalized_adjoint, nrd};
use fittkit::matlat::DEFAULT_MINOR_CAP;
use fittkit::morita::{morita_fitt, MoritaEntry, MoritaPresentation, MoritaRing, QuadraticOrder};
use fittkit::ncfit::*;
use num_traits::Zero;
use problem::{OrderSpec, ProblemFile, RingSpec};
use report::{input_hash, Format, Report};
use std::process::ExitCode;

const USAGE: &str = "usage: fittkit [--input FILE] [--command NAME] [--seed N] \
[--max-matrix-size N] [--coeff-bound N] [--format text|machine]
commands: fitt-comm fitt-nc nrd adjoint conductor conductor-variant intring \
denom dual additivity morita-fitt demo <name>
environment: FITTKIT_MINOR_CAP overrides the minor enumeration cap";

struct Args {
    input: Option<String>,
    command: Option<String>,
    seed: Option<u64>,
    max_size: Option<usize>,
    coeff_bound: Option<i64>,
    format: Format,
}

fn parse_args() -> Result<Args, String> {
    let mut args = Args {
        input: None,
        command: None,
        seed: None,
        max_size: None,
        coeff_bound: None,
        format: Format::Text,
    };
    let mut it = std::env::args().skip(1);
    while let Some(arg) = it.next() {
        let mut take = |name: &str| -> Result<String, String> {
            it.next().ok_or(format!("{name} needs a value"))
        };
        match arg.as_str() {
            "--input" => args.input = Some(take("--input")?),
            "--command" => args.command = Some(take("--command")?),
            "--seed" => {
                args.seed = Some(take("--seed")?.parse().map_err(|_| "bad --seed")?);
            }
            "--max-matrix-size" => {
                args.max_size = Some(
                    take("--max-matrix-size")?
                        .parse()
                        .map_err(|_| "bad --max-matrix-size")?,
                );
            }
            "--coeff-bound" => {
                args.coeff_bound = Some(
                    take("--coeff-bound")?
                        .parse()
                        .map_err(|_| "bad --coeff-bound")?,
                );
            }
            "--format" => {
                args.format = match take("--format")?.as_str() {
                    "text" => Format::Text,
                    "machine" => Format::Machine,
                    other => return Err(format!("unknown format {other:?}")),
                };
            }
            "--help" | "-h" => {
                println!("{USAGE}");
                std::process::exit(0);
            }
            other => return Err(format!("unknown argument {other:?}")),
        }
    }
    Ok(args)
}

/// Euler totient, used by the irrep coefficient-array layout.
pub(crate) fn phi(m: u64) -> usize {
    fittkit::exact::euler_phi(m) as usize
}

/// Build the order context, preferring user-supplied splitting data when
/// irrep sections are present.
fn make_ctx(pf: &ProblemFile) -> Result<OrderContext, String> {
    let order = pf.order_descriptor()?;
    if let OrderDescriptor::GroupRing { group, .. } = &order {
        if let Some(data) = pf.wedderburn_data(group)? {
            return OrderContext::with_data(order.clone(), Some(data)).map_err(|e| e.to_string());
        }
    }
    OrderContext::new(order).map_err(|e| e.to_string())
}

fn minor_cap() -> u128 {
    std::env::var("FITTKIT_MINOR_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MINOR_CAP)
}

fn main() -> ExitCode {
    let args = match parse_args() {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}\n{USAGE}");
            return ExitCode::from(1);
        }
    };
    match run(&args) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn run(args: &Args) -> Result<(String, i32), String> {
    let (problem, raw) = match &args.input {
        Some(path) => {
            let bytes = std::fs::read(path).map_err(|e| format!("cannot read {path}: {e}"))?;
            let text = String::from_utf8(bytes).map_err(|_| "input is not UTF-8".to_string())?;
            let pf = ProblemFile::parse(&text).map_err(|e| e.to_string())?;
            (Some(pf), text)
        }
        None => (None, String::new()),
    };
    let command = args
        .command
        .clone()
        .or_else(|| problem.as_ref().map(|p| p.command.clone()))
        .ok_or("no command: pass --command or a problem file")?;
    let hash_src = if raw.is_empty() {
        command.clone()
    } else {
        raw.clone()
    };
    let mut report = Report::new(args.format, &input_hash(hash_src.as_bytes()));
    let cap = minor_cap();

    // demo commands need no input file
    if let Some(rest) = command.strip_prefix("demo") {
        let name = rest.trim().to_string();
        let name = if name.is_empty() {
            problem
                .as_ref()
                .and_then(|p| p.demo.clone())
                .ok_or("demo needs a name")?
        } else {
            name
        };
        report.kv("demo", &name);
        demos::run_demo(&name, &mut report)?;
        return Ok(report.finish());
    }

    let pf = problem.ok_or("this command needs --input with a problem file")?;
    let sampler = {
        let mut s = pf.sampler.unwrap_or_default();
        if let Some(seed) = args.seed {
            s.seed = seed;
        }
        if let Some(sz) = args.max_size {
            s.max_size = sz;
        }
        if let Some(cb) = args.coeff_bound {
            s.coeff_bound = cb;
        }
        s
    };
    match command.as_str() {
        "fitt-comm" => {
            let pres = comm_presentation(&pf)?;
            let ideal = pres
                .fitting_ideal(pf.higher, cap)
                .map_err(|e| e.to_string())?;
            print_comm_ideal(&mut report, &ideal);
        }
        "fitt-nc" => {
            let ctx = make_ctx(&pf)?;
            let pres = pf.presentation(ctx.order(), 0)?;
            let int_ring = if pf.sampler.is_some() {
                let b = integrality_ring_bounds(&ctx, &sampler).map_err(|e| e.to_string())?;
                report.kv("integrality-certified", &b.certified.to_string());
                if b.certified {
                    Some(b.lower)
                } else {
                    None
                }
            } else {
                None
            };
            let fitt = fitt_presentation(&ctx, &pres, int_ring.as_ref(), cap)
                .map_err(|e| e.to_string())?;
            report.component_legend(ctx.centers());
            report.lattice(
                "fitt",
                &fitt.lattice,
                &[("zero", fitt.is_zero), ("max", fitt.max_certified)],
            );
        }
        "nrd" => {
            let ctx = make_ctx(&pf)?;
            let pres = pf.presentation(ctx.order(), 0)?;
            if pres.rows_a() != pres.cols_b() {
                return Err("nrd needs a square matrix".into());
            }
            match ctx.order() {
                OrderDescriptor::GroupRing { .. } => {
                    let data = ctx.data().unwrap();
                    let t = nrd(&pres.as_ga_mat().map_err(|e| e.to_string())?, data)
                        .map_err(|e| e.to_string())?;
                    let vals: Vec<String> = t.values().iter().map(|v| format!("{v}")).collect();
                    report.kv("nrd", &format!("({})", vals.join(", ")));
                    let coords = ctx.centers().tuple_to_coords(&t);
                    let strs: Vec<String> = coords.iter().map(|c| c.to_string()).collect();
                    report.kv("coords", &strs.join(" "));
                }
                _ => {
                    // split matrix orders: the reduced norm is the
                    // determinant of the presentation as one big matrix;
                    // reuse the invariant machinery on the square shape
                    let fitt =
                        fitt_presentation(&ctx, &pres, None, cap).map_err(|e| e.to_string())?;
                    let g = &fitt.generators[0];
                    report.kv("nrd", &g[0].to_string());
                }
            }
        }
        "adjoint" => {
            let ctx = make_ctx(&pf)?;
            let pres = pf.presentation(ctx.order(), 0)?;
            let data = ctx.data().ok_or("adjoint needs a group ring")?;
            let h = pres.as_ga_mat().map_err(|e| e.to_string())?;
            if h.rows() != h.cols() {
                return Err("adjoint needs a square matrix".into());
            }
            let adj = generalized_adjoint(&h, data).map_err(|e| e.to_string())?;
            for r in 0..adj.rows() {
                for c in 0..adj.cols() {
                    let parts: Vec<String> = adj
                        .at(r, c)
                        .coeffs()
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(i, v)| format!("{i}:{v}"))
                        .collect();
                    report.kv(&format!("adjoint {r} {c}"), &parts.join(" "));
                }
            }
        }
        "conductor" => {
            let ctx = make_ctx(&pf)?;
            let cond = central_conductor(&ctx).map_err(|e| e.to_string())?;
            report.component_legend(ctx.centers());
            for (i, f) in cond.factors.iter().enumerate() {
                report.kv(&format!("factor {i}"), &f.to_string());
            }
            report.lattice("conductor", &cond.aggregate, &[]);
        }
        "conductor-variant" => {
            let ctx = make_ctx(&pf)?;
            let var = conductor_variant(&ctx).map_err(|e| e.to_string())?;
            report.component_legend(ctx.centers());
            report.lattice("conductor-variant", &var, &[]);
        }
        "intring" => {
            let ctx = make_ctx(&pf)?;
            let b = integrality_ring_bounds(&ctx, &sampler).map_err(|e| e.to_string())?;
            report.component_legend(ctx.centers());
            report.lattice("integrality-lower", &b.lower, &[("certified", b.certified)]);
            if !b.certified {
                report.uncertified = true;
            }
        }
        "denom" => {
            let ctx = make_ctx(&pf)?;
            let b = denominator_bounds(&ctx, &sampler).map_err(|e| e.to_string())?;
            report.component_legend(ctx.centers());
            report.lattice("denominator-lower", &b.lower, &[]);
            report.lattice("denominator-upper", &b.upper, &[("certified", b.certified)]);
            report.kv(
                "lower-contained-in-upper",
                &b.lower
                    .subset_of(&b.upper)
                    .map_err(|e| e.to_string())?
                    .to_string(),
            );
            if !b.certified {
                report.uncertified = true;
            }
        }
        "dual" => {
            let ctx = make_ctx(&pf)?;
            let pres = pf.presentation(ctx.order(), 0)?;
            let dual = dual_presentation(&pres).map_err(|e| e.to_string())?;
            let data = ctx.data().unwrap();
            let t1 = nrd(&pres.as_ga_mat().map_err(|e| e.to_string())?, data)
                .map_err(|e| e.to_string())?;
            let t2 = nrd(&dual.as_ga_mat().map_err(|e| e.to_string())?, data)
                .map_err(|e| e.to_string())?;
            let show = |t: &fittkit::grpalg::CentralTuple| {
                let vals: Vec<String> = t.values().iter().map(|v| format!("{v}")).collect();
                format!("({})", vals.join(", "))
            };
            report.kv("nrd", &show(&t1));
            report.kv("nrd-dual", &show(&t2));
            report.kv(
                "sharp-transform-contract",
                &(t2 == t1.sharp_transform()).to_string(),
            );
        }
        "additivity" => {
            let ctx = make_ctx(&pf)?;
            let p1 = pf.presentation(ctx.order(), 0)?;
            let p2 = pf.presentation(ctx.order(), 1)?;
            let direct = if pf.matrices.len() > 2 {
                Some(pf.presentation(ctx.order(), 2)?)
            } else {
                None
            };
            let rep = additivity_compare(&ctx, &p1, &p2, direct.as_ref(), None, cap)
                .map_err(|e| e.to_string())?;
            report.lattice("product", &rep.product, &[]);
            report.lattice("direct-sum", &rep.direct_sum, &[]);
            report.kv("product-contained", &rep.product_contained.to_string());
            report.kv("additive", &rep.equal.to_string());
        }
        "morita-fitt" => {
            let ideal = morita_command(&pf, cap)?;
            print_comm_ideal(&mut report, &ideal);
        }
        "echo-problem" => {
            // canonical form; parsing it back yields an equal problem
            return Ok((pf.print(), 0));
        }
        other => return Err(format!("unknown command {other:?}\n{USAGE}")),
    }
    Ok(report.finish())
}

fn comm_presentation(pf: &ProblemFile) -> Result<CommPresentation, String> {
    match pf.ring.as_ref().ok_or("fitt-comm needs a ring line")? {
        RingSpec::Int => {
            let m = pf.rat_matrix(0)?;
            for r in 0..m.rows() {
                if m.row(r).iter().any(|x| !x.is_integer()) {
                    return Err("integer ring entries must be integers".into());
                }
            }
            Ok(CommPresentation::Int(m.map(|x| x.to_integer())))
        }
        RingSpec::Local(p) => Ok(CommPresentation::Local(*p, pf.rat_matrix(0)?)),
        RingSpec::Quad(d) => {
            let order = QuadraticOrder::new(*d).map_err(|e| e.to_string())?;
            Ok(CommPresentation::Quad(order, pf.quad_matrix(order, 0)?))
        }
    }
}

fn print_comm_ideal(report: &mut Report, ideal: &CommIdeal) {
    match ideal {
        CommIdeal::Int(g) => report.kv("ideal", &format!("({g}) in Z")),
        CommIdeal::Local(l) => report.lattice("ideal", l, &[]),
        CommIdeal::Quad(None) => report.kv("ideal", "(0)"),
        CommIdeal::Quad(Some(q)) => {
            let basis = q.basis();
            let strs: Vec<String> = basis.iter().map(|b| format!("{b:?}")).collect();
            report.kv("ideal", &format!("<{}>", strs.join(", ")));
            report.kv("norm", &q.norm().to_string());
        }
        CommIdeal::Mod { n, generator } => {
            report.kv("ideal", &format!("({generator}) in Z/{n}"));
        }
    }
}

fn morita_command(pf: &ProblemFile, cap: u128) -> Result<CommIdeal, String> {
    match pf.order.as_ref().ok_or("morita-fitt needs an order line")? {
        OrderSpec::MatrixInt(n) => {
            let spec = pf
                .matrices
                .first()
                .ok_or("morita-fitt needs a matrix section")?;
            let mut rows: Vec<Vec<MoritaEntry>> = (0..spec.rows)
                .map(|_| {
                    (0..spec.cols)
                        .map(|_| {
                            MoritaEntry::Int(fittkit::matlat::Mat::from_fn(*n, *n, |_, _| {
                                fittkit::Int::zero()
                            }))
                        })
                        .collect()
                })
                .collect();
            for (r, c, map) in &spec.entries {
                let mut m = fittkit::matlat::Mat::from_fn(*n, *n, |_, _| fittkit::Int::zero());
                for (i, v) in map {
                    if *i >= n * n {
                        return Err("basis index out of range".into());
                    }
                    if !v.is_integer() {
                        return Err("matrix-int entries must be integers".into());
                    }
                    m.set(i / n, i % n, v.to_integer());
                }
                rows[*r][*c] = MoritaEntry::Int(m);
            }
            let pres = MoritaPresentation::new(MoritaRing::MatrixInt { n: *n }, rows)
                .map_err(|e| e.to_string())?;
            morita_fitt(&pres, cap).map_err(|e| e.to_string())
        }
        OrderSpec::EndOrder { .. } => {
            let end = pf.end_order()?;
            let order = end.order();
            let spec = pf
                .matrices
                .first()
                .ok_or("morita-fitt needs a matrix section")?;
            // end-order entries: basis index 2 (2 r + c) + s addresses the
            // (r, c) slot of the 2x2 matrix, coordinate 1 or sqrt(d) for
            // s = 0, 1
            let mut rows: Vec<Vec<MoritaEntry>> = (0..spec.rows)
                .map(|_| {
                    (0..spec.cols)
                        .map(|_| {
                            MoritaEntry::Quad(fittkit::matlat::Mat::from_fn(2, 2, |_, _| {
                                order.zero()
                            }))
                        })
                        .collect()
                })
                .collect();
            for (r, c, map) in &spec.entries {
                let mut m = fittkit::matlat::Mat::from_fn(2, 2, |_, _| order.zero());
                for (i, v) in map {
                    if *i >= 8 {
                        return Err("end-order entries use basis indices 0..8".into());
                    }
                    let slot = i / 2;
                    let (sr, sc) = (slot / 2, slot % 2);
                    let cur = m.at(sr, sc).clone();
                    let add = if i % 2 == 0 {
                        order.elem(v.clone(), fittkit::Rat::zero())
                    } else {
                        order.elem(fittkit::Rat::zero(), v.clone())
                    };
                    m.set(sr, sc, fittkit::matlat::RingScalar::add(&cur, &add));
                }
                rows[*r][*c] = MoritaEntry::Quad(m);
            }
            let pres =
                MoritaPresentation::new(MoritaRing::End(end), rows).map_err(|e| e.to_string())?;
            morita_fitt(&pres, cap).map_err(|e| e.to_string())
        }
        _ => Err("morita-fitt needs `order matrix-int <n>` or `order end-order ...`".into()),
    }
}
