//! The line-oriented problem file format. Every number is an exact rational
//! string (`-3`, `5/7`); decimal literals are rejected. Files are
//! self-describing: a version line, a command, the ring or order data, and
//! the matrices as coefficient maps over the flat basis of the order.

use fittkit::exact::{Int, Rat};
use fittkit::grp::{make_group, FiniteGroup};
use fittkit::matlat::Mat;
use fittkit::morita::{EndOrder, QuadIdeal, QuadraticOrder};
use fittkit::ncfit::{OrderDescriptor, OrderElem, PresentationNC, Sampler};
use num_traits::Zero;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Exact rational literal: integer or numerator/denominator.
pub fn parse_rational(s: &str, line: usize) -> Result<Rat, ParseError> {
    if s.contains('.') {
        return err(
            line,
            format!("inexact numeric literal {s:?}; write a fraction like 1/10"),
        );
    }
    let parse_int = |t: &str| -> Result<Int, ParseError> {
        Int::from_str(t).map_err(|_| ParseError {
            line,
            message: format!("bad integer {t:?}"),
        })
    };
    match s.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den.is_zero() {
                return err(line, "zero denominator");
            }
            Ok(Rat::new(parse_int(n)?, den))
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RingSpec {
    Int,
    Local(u64),
    Quad(i64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum OrderSpec {
    GroupRing,
    MatrixRing(usize),
    Hereditary,
    MatrixInt(usize),
    EndOrder { d: i64, ideal_gens: Vec<(Rat, Rat)> },
}

#[derive(Debug, Clone, PartialEq)]
pub enum GroupSpec {
    Builtin(String),
    Table(Vec<Vec<usize>>),
}

/// Coefficient map over the flat basis of the ring or order.
pub type CoeffMap = Vec<(usize, Rat)>;

/// One matrix section: entries as (row, col, coefficient map).
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSpec {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, CoeffMap)>,
}

/// A user-supplied irreducible: conductor, dimension, and generator images
/// as coefficient arrays (row-major matrix entries, phi(m) rationals each).
#[derive(Debug, Clone, PartialEq)]
pub struct IrrepSpec {
    pub conductor: u64,
    pub dim: usize,
    pub images: Vec<(usize, Vec<Rat>)>,
}

/// A parsed problem file.
#[derive(Debug, Clone, PartialEq)]
pub struct ProblemFile {
    pub command: String,
    pub ring: Option<RingSpec>,
    pub order: Option<OrderSpec>,
    pub prime: Option<u64>,
    pub group: Option<GroupSpec>,
    pub matrices: Vec<MatrixSpec>,
    pub sampler: Option<Sampler>,
    pub higher: usize,
    pub demo: Option<String>,
    pub irreps: Vec<IrrepSpec>,
}

impl ProblemFile {
    pub fn parse(text: &str) -> Result<ProblemFile, ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let Some((ln, header)) = lines.next() else {
            return err(1, "empty problem file");
        };
        if header != "fittkit-problem v1" {
            return err(
                ln,
                format!("expected header `fittkit-problem v1`, found {header:?}"),
            );
        }
        let mut pf = ProblemFile {
            command: String::new(),
            ring: None,
            order: None,
            prime: None,
            group: None,
            matrices: Vec::new(),
            sampler: None,
            higher: 0,
            demo: None,
            irreps: Vec::new(),
        };
        let mut pending_table: Option<(usize, Vec<Vec<usize>>)> = None;
        for (ln, line) in lines {
            let mut words = line.split_whitespace();
            let key = words.next().unwrap();
            let rest: Vec<&str> = words.collect();
            let usize_arg = |idx: usize| -> Result<usize, ParseError> {
                rest.get(idx)
                    .and_then(|s| s.parse().ok())
                    .ok_or(ParseError {
                        line: ln,
                        message: format!("expected a number in argument {} of {key}", idx + 1),
                    })
            };
            if key != "row" {
                if let Some((n, table)) = pending_table.take() {
                    if table.len() != n {
                        return err(
                            ln,
                            format!("group table needs {n} rows, found {}", table.len()),
                        );
                    }
                    pf.group = Some(GroupSpec::Table(table));
                }
            }
            match key {
                "command" => {
                    pf.command = rest.join(" ");
                    if pf.command.is_empty() {
                        return err(ln, "command needs a name");
                    }
                }
                "demo" => pf.demo = Some(rest.join(" ")),
                "ring" => {
                    pf.ring = Some(match rest.as_slice() {
                        ["int"] => RingSpec::Int,
                        ["local", p] => RingSpec::Local(p.parse().map_err(|_| ParseError {
                            line: ln,
                            message: "bad prime".into(),
                        })?),
                        ["quad", d] => RingSpec::Quad(d.parse().map_err(|_| ParseError {
                            line: ln,
                            message: "bad discriminant parameter".into(),
                        })?),
                        _ => return err(ln, "ring must be `int`, `local <p>`, or `quad <d>`"),
                    });
                }
                "order" => {
                    pf.order = Some(match rest.as_slice() {
                        ["group-ring"] => OrderSpec::GroupRing,
                        ["matrix-ring", n] => {
                            OrderSpec::MatrixRing(n.parse().map_err(|_| ParseError {
                                line: ln,
                                message: "bad matrix size".into(),
                            })?)
                        }
                        ["hereditary"] => OrderSpec::Hereditary,
                        ["matrix-int", n] => {
                            OrderSpec::MatrixInt(n.parse().map_err(|_| ParseError {
                                line: ln,
                                message: "bad matrix size".into(),
                            })?)
                        }
                        ["end-order", d, gens @ ..] => {
                            let d: i64 = d.parse().map_err(|_| ParseError {
                                line: ln,
                                message: "bad discriminant parameter".into(),
                            })?;
                            if gens.is_empty() || gens.len() % 2 != 0 {
                                return err(ln, "end-order needs ideal generators as x y pairs");
                            }
                            let mut ideal_gens = Vec::new();
                            for pair in gens.chunks(2) {
                                ideal_gens.push((
                                    parse_rational(pair[0], ln)?,
                                    parse_rational(pair[1], ln)?,
                                ));
                            }
                            OrderSpec::EndOrder { d, ideal_gens }
                        }
                        _ => return err(ln, "unknown order descriptor"),
                    });
                }
                "prime" => pf.prime = Some(usize_arg(0)? as u64),
                "group" => {
                    if rest.first() == Some(&"table") {
                        let n = usize_arg(1)?;
                        pending_table = Some((n, Vec::new()));
                    } else {
                        pf.group = Some(GroupSpec::Builtin(rest.join(" ")));
                    }
                }
                "row" => {
                    let Some((n, table)) = pending_table.as_mut() else {
                        return err(ln, "row outside a group table");
                    };
                    let row: Result<Vec<usize>, _> =
                        rest.iter().map(|s| s.parse::<usize>()).collect();
                    let row = row.map_err(|_| ParseError {
                        line: ln,
                        message: "bad table row".into(),
                    })?;
                    if row.len() != *n {
                        return err(ln, format!("table row needs {n} entries"));
                    }
                    table.push(row);
                }
                "matrix" => {
                    let rows = usize_arg(0)?;
                    let cols = usize_arg(1)?;
                    if rows == 0 || cols == 0 {
                        return err(ln, "matrix dimensions must be positive");
                    }
                    pf.matrices.push(MatrixSpec {
                        rows,
                        cols,
                        entries: Vec::new(),
                    });
                }
                "entry" => {
                    let Some(mat) = pf.matrices.last_mut() else {
                        return err(ln, "entry before any matrix line");
                    };
                    let r = usize_arg(0)?;
                    let c = usize_arg(1)?;
                    if r >= mat.rows || c >= mat.cols {
                        return err(ln, "entry position out of range");
                    }
                    let mut map = Vec::new();
                    for tok in &rest[2..] {
                        let Some((idx, val)) = tok.split_once(':') else {
                            return err(ln, format!("entry token {tok:?} must be index:rational"));
                        };
                        let idx: usize = idx.parse().map_err(|_| ParseError {
                            line: ln,
                            message: "bad basis index".into(),
                        })?;
                        map.push((idx, parse_rational(val, ln)?));
                    }
                    map.sort_by_key(|(i, _)| *i);
                    mat.entries.push((r, c, map));
                }
                "sampler" => {
                    // sampler size S coeff C count N seed K
                    let mut s = Sampler::default();
                    let mut i = 0;
                    while i + 1 < rest.len() {
                        let v = rest[i + 1];
                        match rest[i] {
                            "size" => s.max_size = v.parse().unwrap_or(s.max_size),
                            "coeff" => s.coeff_bound = v.parse().unwrap_or(s.coeff_bound),
                            "count" => s.count = v.parse().unwrap_or(s.count),
                            "seed" => s.seed = v.parse().unwrap_or(s.seed),
                            other => return err(ln, format!("unknown sampler field {other:?}")),
                        }
                        i += 2;
                    }
                    pf.sampler = Some(s);
                }
                "higher" => pf.higher = usize_arg(0)?,
                "irrep" => {
                    let conductor = usize_arg(0)? as u64;
                    let dim = usize_arg(1)?;
                    if dim == 0 || conductor == 0 {
                        return err(ln, "irrep needs positive conductor and dimension");
                    }
                    pf.irreps.push(IrrepSpec {
                        conductor,
                        dim,
                        images: Vec::new(),
                    });
                }
                "image" => {
                    let Some(irrep) = pf.irreps.last_mut() else {
                        return err(ln, "image before any irrep line");
                    };
                    let gen = usize_arg(0)?;
                    let need = irrep.dim * irrep.dim * crate::phi(irrep.conductor);
                    if rest.len() != need + 1 {
                        return err(
                            ln,
                            format!("image needs {need} coefficients for this irrep"),
                        );
                    }
                    let mut coeffs = Vec::with_capacity(need);
                    for tok in &rest[1..] {
                        coeffs.push(parse_rational(tok, ln)?);
                    }
                    irrep.images.push((gen, coeffs));
                }
                other => return err(ln, format!("unknown directive {other:?}")),
            }
        }
        if let Some((n, table)) = pending_table.take() {
            if table.len() != n {
                return err(
                    0,
                    format!("group table needs {n} rows, found {}", table.len()),
                );
            }
            pf.group = Some(GroupSpec::Table(table));
        }
        if pf.command.is_empty() {
            return err(0, "missing command line");
        }
        Ok(pf)
    }

    /// Canonical text form; parsing it back yields an equal problem.
    pub fn print(&self) -> String {
        let mut out = String::from("fittkit-problem v1\n");
        let _ = writeln!(out, "command {}", self.command);
        if let Some(d) = &self.demo {
            let _ = writeln!(out, "demo {d}");
        }
        match &self.ring {
            Some(RingSpec::Int) => out.push_str("ring int\n"),
            Some(RingSpec::Local(p)) => {
                let _ = writeln!(out, "ring local {p}");
            }
            Some(RingSpec::Quad(d)) => {
                let _ = writeln!(out, "ring quad {d}");
            }
            None => {}
        }
        match &self.order {
            Some(OrderSpec::GroupRing) => out.push_str("order group-ring\n"),
            Some(OrderSpec::MatrixRing(n)) => {
                let _ = writeln!(out, "order matrix-ring {n}");
            }
            Some(OrderSpec::Hereditary) => out.push_str("order hereditary\n"),
            Some(OrderSpec::MatrixInt(n)) => {
                let _ = writeln!(out, "order matrix-int {n}");
            }
            Some(OrderSpec::EndOrder { d, ideal_gens }) => {
                let _ = write!(out, "order end-order {d}");
                for (x, y) in ideal_gens {
                    let _ = write!(out, " {x} {y}");
                }
                out.push('\n');
            }
            None => {}
        }
        if let Some(p) = self.prime {
            let _ = writeln!(out, "prime {p}");
        }
        match &self.group {
            Some(GroupSpec::Builtin(name)) => {
                let _ = writeln!(out, "group {name}");
            }
            Some(GroupSpec::Table(t)) => {
                let _ = writeln!(out, "group table {}", t.len());
                for row in t {
                    let strs: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(out, "row {}", strs.join(" "));
                }
            }
            None => {}
        }
        for m in &self.matrices {
            let _ = writeln!(out, "matrix {} {}", m.rows, m.cols);
            for (r, c, map) in &m.entries {
                let _ = write!(out, "entry {r} {c}");
                for (i, v) in map {
                    let _ = write!(out, " {i}:{v}");
                }
                out.push('\n');
            }
        }
        if let Some(s) = &self.sampler {
            let _ = writeln!(
                out,
                "sampler size {} coeff {} count {} seed {}",
                s.max_size, s.coeff_bound, s.count, s.seed
            );
        }
        if self.higher > 0 {
            let _ = writeln!(out, "higher {}", self.higher);
        }
        for ir in &self.irreps {
            let _ = writeln!(out, "irrep {} {}", ir.conductor, ir.dim);
            for (g, coeffs) in &ir.images {
                let strs: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
                let _ = writeln!(out, "image {g} {}", strs.join(" "));
            }
        }
        out
    }

    /// Build validated splitting data from the supplied irreducibles.
    pub fn wedderburn_data(
        &self,
        group: &Arc<FiniteGroup>,
    ) -> Result<Option<fittkit::grpalg::WedderburnData>, String> {
        if self.irreps.is_empty() {
            return Ok(None);
        }
        use fittkit::exact::Cyclo;
        use fittkit::grpalg::{Irrep, WedderburnData};
        let mut irreps = Vec::new();
        for spec in &self.irreps {
            let phi = crate::phi(spec.conductor);
            let gens: Vec<(usize, Mat<Cyclo>)> = spec
                .images
                .iter()
                .map(|(g, coeffs)| {
                    let m = Mat::from_fn(spec.dim, spec.dim, |r, c| {
                        let base = (r * spec.dim + c) * phi;
                        Cyclo::from_coeffs(spec.conductor, coeffs[base..base + phi].to_vec())
                    });
                    (*g, m)
                })
                .collect();
            irreps.push(
                Irrep::from_generator_images(group, spec.conductor, &gens)
                    .map_err(|e| e.to_string())?,
            );
        }
        WedderburnData::validate(group, irreps)
            .map(Some)
            .map_err(|e| e.to_string())
    }

    pub fn group_arc(&self) -> Result<Arc<FiniteGroup>, String> {
        match &self.group {
            Some(GroupSpec::Builtin(name)) => make_group(name).map_err(|e| e.to_string()),
            Some(GroupSpec::Table(t)) => {
                FiniteGroup::from_table("user", t.clone()).map_err(|e| e.to_string())
            }
            None => Err("problem needs a group".into()),
        }
    }

    pub fn order_descriptor(&self) -> Result<OrderDescriptor, String> {
        let p = self.prime.ok_or("problem needs a prime")?;
        match &self.order {
            Some(OrderSpec::GroupRing) => Ok(OrderDescriptor::GroupRing {
                group: self.group_arc()?,
                p,
            }),
            Some(OrderSpec::MatrixRing(n)) => Ok(OrderDescriptor::MatrixRing { n: *n, p }),
            Some(OrderSpec::Hereditary) => Ok(OrderDescriptor::Hereditary { p }),
            _ => Err("problem needs a noncommutative order descriptor".into()),
        }
    }

    /// Materialize matrix section `idx` over the given order.
    pub fn presentation(
        &self,
        order: &OrderDescriptor,
        idx: usize,
    ) -> Result<PresentationNC, String> {
        let spec = self
            .matrices
            .get(idx)
            .ok_or_else(|| format!("problem needs matrix section {}", idx + 1))?;
        let dim = order.flat_dim();
        let basis = order.basis_elems();
        let mut rows: Vec<Vec<OrderElem>> = (0..spec.rows)
            .map(|_| (0..spec.cols).map(|_| order.zero_elem()).collect())
            .collect();
        for (r, c, map) in &spec.entries {
            let mut acc = order.zero_elem();
            for (i, v) in map {
                if *i >= dim {
                    return Err(format!(
                        "basis index {i} out of range (order dimension {dim})"
                    ));
                }
                acc = acc.add(&basis[*i].scale(v));
            }
            rows[*r][*c] = acc;
        }
        PresentationNC::new(order.clone(), rows).map_err(|e| e.to_string())
    }

    /// Materialize matrix section `idx` as a rational matrix (commutative
    /// rings; basis index 0 only).
    pub fn rat_matrix(&self, idx: usize) -> Result<Mat<Rat>, String> {
        let spec = self
            .matrices
            .get(idx)
            .ok_or_else(|| format!("problem needs matrix section {}", idx + 1))?;
        let mut m = Mat::from_fn(spec.rows, spec.cols, |_, _| Rat::zero());
        for (r, c, map) in &spec.entries {
            let mut acc = Rat::zero();
            for (i, v) in map {
                if *i != 0 {
                    return Err("commutative entries use basis index 0 only".into());
                }
                acc += v;
            }
            m.set(*r, *c, acc);
        }
        Ok(m)
    }

    /// Quadratic-order matrix: indices 0 and 1 give the 1 and sqrt(d)
    /// coordinates.
    pub fn quad_matrix(
        &self,
        order: QuadraticOrder,
        idx: usize,
    ) -> Result<Mat<fittkit::morita::QuadElem>, String> {
        let spec = self
            .matrices
            .get(idx)
            .ok_or_else(|| format!("problem needs matrix section {}", idx + 1))?;
        let mut m = Mat::from_fn(spec.rows, spec.cols, |_, _| order.zero());
        for (r, c, map) in &spec.entries {
            let mut x = Rat::zero();
            let mut y = Rat::zero();
            for (i, v) in map {
                match i {
                    0 => x += v,
                    1 => y += v,
                    _ => return Err("quadratic entries use basis indices 0 and 1".into()),
                }
            }
            m.set(*r, *c, order.elem(x, y));
        }
        Ok(m)
    }

    pub fn end_order(&self) -> Result<EndOrder, String> {
        let Some(OrderSpec::EndOrder { d, ideal_gens }) = &self.order else {
            return Err("problem needs an end-order descriptor".into());
        };
        let order = QuadraticOrder::new(*d).map_err(|e| e.to_string())?;
        let gens: Vec<_> = ideal_gens
            .iter()
            .map(|(x, y)| order.elem(x.clone(), y.clone()))
            .collect();
        let ideal = QuadIdeal::from_elems(order, &gens).map_err(|e| e.to_string())?;
        EndOrder::new(order, ideal).map_err(|e| e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_literals() {
        assert_eq!(parse_rational("5", 1).unwrap(), Rat::from_integer(5.into()));
        assert_eq!(
            parse_rational("-3/6", 1).unwrap(),
            Rat::new((-1).into(), 2.into())
        );
        assert!(parse_rational("0.1", 1).is_err());
        assert!(parse_rational("1/0", 1).is_err());
    }

    #[test]
    fn parse_and_round_trip() {
        let text = "\
fittkit-problem v1
command fitt-nc
order matrix-ring 2
prime 3
matrix 2 1
entry 0 0 0:4 1:1 2:1 3:4
entry 1 0 0:5 1:1 2:1 3:5
";
        let pf = ProblemFile::parse(text).unwrap();
        assert_eq!(pf.command, "fitt-nc");
        assert_eq!(pf.order, Some(OrderSpec::MatrixRing(2)));
        let printed = pf.print();
        let again = ProblemFile::parse(&printed).unwrap();
        assert_eq!(pf, again);
    }

    #[test]
    fn schema_errors_carry_positions() {
        let e = ProblemFile::parse("").unwrap_err();
        assert_eq!(e.line, 1);
        let e = ProblemFile::parse("fittkit-problem v1\ncommand nrd\nentry 0 0 0:1\n").unwrap_err();
        assert_eq!(e.line, 3);
        let e =
            ProblemFile::parse("fittkit-problem v1\ncommand nrd\nmatrix 1 1\nentry 0 0 0:0.5\n")
                .unwrap_err();
        assert_eq!(e.line, 4);
    }
}
