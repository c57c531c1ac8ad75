//! Polytope families named on the command line.

use std::fmt;
use std::str::FromStr;

use clap::ValueEnum;
use flagvec::families::{cyclic_f5, cyclic_f7, p7n};
use flagvec::lattice::{build_crosspolytope, build_cube, build_cyclic, build_polygon, build_simplex};
use flagvec::{Error, FVector, FaceLattice, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Simplex,
    Cube,
    Crosspolytope,
    Cyclic,
    Polygon,
    P7n,
    ConnectedSum,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.to_possible_value().expect("no skipped variants");
        f.write_str(name.get_name())
    }
}

fn need(value: Option<usize>, flag: &str, family: Family) -> Result<usize> {
    value.ok_or_else(|| Error::InvalidParams(format!("{family} needs {flag}")))
}

/// Face lattice of a lattice-backed family, optionally dualized.
pub fn lattice(family: Family, d: Option<usize>, n: Option<usize>, dual: bool) -> Result<FaceLattice> {
    let l = match family {
        Family::Simplex => build_simplex(need(d, "-d", family)?)?,
        Family::Cube => build_cube(need(d, "-d", family)?)?,
        Family::Crosspolytope => build_crosspolytope(need(d, "-d", family)?)?,
        Family::Cyclic => build_cyclic(need(d, "-d", family)?, need(n, "-n", family)?)?,
        Family::Polygon => build_polygon(need(n, "-n", family)?)?,
        Family::P7n | Family::ConnectedSum => {
            return Err(Error::InvalidParams(format!(
                "{family} is given by its f-vector only; no face lattice is built"
            )))
        }
    };
    Ok(if dual { l.dual() } else { l })
}

/// f-vector of a family member. Cyclic 5- and 7-polytopes and `P_7^n` use
/// their closed forms, everything else is enumerated.
pub fn f_vector(family: Family, d: Option<usize>, n: Option<usize>, dual: bool) -> Result<FVector> {
    let f = match (family, d) {
        (Family::P7n, _) => p7n(need(n, "-n", family)? as u64)?,
        (Family::Cyclic, Some(5)) => cyclic_f5(need(n, "-n", family)? as u64)?,
        (Family::Cyclic, Some(7)) => cyclic_f7(need(n, "-n", family)? as u64)?,
        _ => return Ok(lattice(family, d, n, dual)?.f_vector()),
    };
    Ok(if dual { f.reverse() } else { f })
}

/// One side of a connected sum: `simplex:3`, `cyclic:7:10`,
/// `cyclic-dual:7:10`, `cube:4`, `crosspolytope:4`, `polygon:5` or a raw
/// f-vector `v:4,6,4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Operand {
    pub f: FVector,
    /// `Some(true)` when the polytope is known to be simplicial.
    pub simplicial: Option<bool>,
    pub simple: Option<bool>,
    pub label: String,
}

/// Lattice named by `family[-dual]:params`, e.g. `cyclic:5:8`,
/// `cube-dual:3` or `polygon:6`.
pub fn lattice_spec(spec: &str) -> Result<FaceLattice> {
    let bad = || Error::Parse(format!("bad polytope spec {spec:?}"));
    let mut parts = spec.split(':');
    let head = parts.next().ok_or_else(bad)?;
    let nums = parts.map(|p| p.parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?;
    let (base, dual) = match head.strip_suffix("-dual") {
        Some(b) => (b, true),
        None => (head, false),
    };
    let family = Family::from_str(base, true).map_err(|_| bad())?;
    let (d, n) = match (family, nums.as_slice()) {
        (Family::Polygon, [n]) => (None, Some(*n)),
        (Family::Cyclic, [d, n]) => (Some(*d), Some(*n)),
        (Family::Simplex | Family::Cube | Family::Crosspolytope, [d]) => (Some(*d), None),
        _ => return Err(bad()),
    };
    lattice(family, d, n, dual)
}

impl FromStr for Operand {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        if let Some(raw) = spec.strip_prefix("v:") {
            return Ok(Operand { f: raw.parse()?, simplicial: None, simple: None, label: spec.into() });
        }
        let l = lattice_spec(spec)?;
        Ok(Operand {
            f: l.f_vector(),
            simplicial: Some(l.is_simplicial()),
            simple: Some(l.is_simple()),
            label: spec.into(),
        })
    }
}
