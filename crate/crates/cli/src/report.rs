//! Deterministic result printing. Text format is human-oriented; machine
//! format emits one record per lattice with ambient dimension, denominator,
//! HNF rows and flags. Identical inputs produce byte-identical output.

use fittkit::matlat::LocalLattice;
use fittkit::ncfit::CenterCoords;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Machine,
}

pub struct Report {
    format: Format,
    out: String,
    /// exit code 2 marks valid but uncertified bounds
    pub uncertified: bool,
}

/// FNV-1a hash of the input bytes, echoed into every report.
pub fn input_hash(bytes: &[u8]) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    format!("{h:016x}")
}

impl Report {
    pub fn new(format: Format, hash: &str) -> Report {
        let mut r = Report {
            format,
            out: String::new(),
            uncertified: false,
        };
        match format {
            Format::Text => {
                let _ = writeln!(r.out, "input {hash}");
            }
            Format::Machine => {
                let _ = writeln!(r.out, "hash {hash}");
            }
        }
        r
    }

    pub fn line(&mut self, text: &str) {
        if self.format == Format::Text {
            let _ = writeln!(self.out, "{text}");
        }
    }

    pub fn kv(&mut self, key: &str, value: &str) {
        match self.format {
            Format::Text => {
                let _ = writeln!(self.out, "{key}: {value}");
            }
            Format::Machine => {
                let _ = writeln!(self.out, "{key} {value}");
            }
        }
    }

    pub fn lattice(&mut self, name: &str, lat: &LocalLattice, flags: &[(&str, bool)]) {
        let il = lat.lattice();
        let flag_str = flags
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(" ");
        match self.format {
            Format::Text => {
                let _ = writeln!(
                    self.out,
                    "{name}: lattice in Q^{} at p={}, denominator {}, rank {}{}",
                    lat.ambient(),
                    lat.prime(),
                    il.denom(),
                    lat.rank(),
                    if flag_str.is_empty() {
                        String::new()
                    } else {
                        format!(" [{flag_str}]")
                    }
                );
                for row in il.basis_int() {
                    let strs: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(self.out, "  [{}]", strs.join(", "));
                }
            }
            Format::Machine => {
                let _ = writeln!(
                    self.out,
                    "lattice {name} dim={} denom={} rows={}{}",
                    lat.ambient(),
                    il.denom(),
                    lat.rank(),
                    if flag_str.is_empty() {
                        String::new()
                    } else {
                        format!(" {flag_str}")
                    }
                );
                for row in il.basis_int() {
                    let strs: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                    let _ = writeln!(self.out, "{}", strs.join(" "));
                }
            }
        }
    }

    /// Per-component description of a lattice in centre coordinates.
    pub fn component_legend(&mut self, cc: &CenterCoords) {
        if self.format == Format::Text {
            let parts: Vec<String> = (0..cc.component_count())
                .map(|i| {
                    let (off, dim) = cc.component_range(i);
                    format!("component {i}: coords {off}..{}", off + dim)
                })
                .collect();
            let _ = writeln!(self.out, "centre coordinates: {}", parts.join("; "));
        }
    }

    pub fn finish(self) -> (String, i32) {
        let code = if self.uncertified { 2 } else { 0 };
        (self.out, code)
    }
}
