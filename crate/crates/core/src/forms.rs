//! Linear forms on flag vectors and their Kalai convolution.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::Rng;
use serde_json::{Map, Value};

use crate::families::{properties, PropertyReport};
use crate::flagalg::{complete_from_sparse, euler_check, reducer, FVector, FlagVector, SparseBasis};
use crate::flagset::{FlagSet, MAX_FORM_DIM};
use crate::lattice::FaceLattice;
use crate::scalar::{parse_rational, rational_to_string, Module, Scalar};
use crate::{Error, Rational, Result};

/// `Σ_S c_S f_S` on flag vectors of `d`-polytopes. Constants are multiples
/// of `f_∅`.
#[derive(Clone, PartialEq)]
pub struct FlagForm<T> {
    d: usize,
    coeffs: BTreeMap<FlagSet, T>,
}

impl<T: Scalar> FlagForm<T> {
    pub fn zero(d: usize) -> Self {
        FlagForm { d, coeffs: BTreeMap::new() }
    }

    /// The single term `c · f_S`.
    pub fn term(d: usize, s: FlagSet, c: T) -> Self {
        Self::from_terms(d, [(s, c)])
    }

    /// `c · f_∅`.
    pub fn constant(d: usize, c: T) -> Self {
        Self::term(d, FlagSet::EMPTY, c)
    }

    pub fn from_terms(d: usize, terms: impl IntoIterator<Item = (FlagSet, T)>) -> Self {
        let mut form = Self::zero(d);
        for (s, c) in terms {
            assert!(s.fits(d), "index set {s} does not fit dimension {d}");
            let slot = form.coeffs.entry(s).or_insert_with(T::zero);
            *slot = slot.clone() + c;
        }
        form.prune();
        form
    }

    fn prune(&mut self) {
        self.coeffs.retain(|_, c| !c.is_zero());
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn coeff(&self, s: FlagSet) -> T {
        self.coeffs.get(&s).cloned().unwrap_or_else(T::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (FlagSet, &T)> {
        self.coeffs.iter().map(|(s, c)| (*s, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, by: &T) -> Self {
        let mut out = FlagForm {
            d: self.d,
            coeffs: self.coeffs.iter().map(|(s, c)| (*s, c.clone() * by.clone())).collect(),
        };
        out.prune();
        out
    }

    fn combine(&self, other: &Self, sign: T) -> Self {
        assert_eq!(self.d, other.d, "adding forms of different dimensions");
        let mut out = self.clone();
        for (s, c) in &other.coeffs {
            let slot = out.coeffs.entry(*s).or_insert_with(T::zero);
            *slot = slot.clone() + c.clone() * sign.clone();
        }
        out.prune();
        out
    }

    /// The form rewritten in the sparse basis; two forms agree on every
    /// Eulerian flag vector iff their reductions are equal.
    pub fn reduce(&self) -> Self {
        let red = reducer(self.d);
        let mut out = Self::zero(self.d);
        for (s, c) in &self.coeffs {
            for (b, k) in red.get(*s) {
                let slot = out.coeffs.entry(*b).or_insert_with(T::zero);
                *slot = slot.clone() + c.clone() * T::from_bigint(k);
            }
        }
        out.prune();
        out
    }

    pub fn gds_equivalent(&self, other: &Self) -> bool {
        self.d == other.d && self.combine(other, -T::one()).reduce().is_zero()
    }

    pub fn is_sparse(&self) -> bool {
        self.coeffs.keys().all(|s| s.is_sparse(self.d))
    }

    /// The form `m*(P) = m(P^Δ)`: every index set reversed.
    pub fn dual(&self) -> Self {
        Self::from_terms(
            self.d,
            self.coeffs.iter().map(|(s, c)| (s.reverse(self.d), c.clone())),
        )
    }

    /// `Σ c_S f_S(v)`. Falls back to the sparse reduction when `v` only
    /// carries sparse-basis entries.
    pub fn evaluate(&self, v: &FlagVector) -> Result<T> {
        if v.dim() != self.d {
            return Err(Error::DimensionMismatch { expected: self.d, found: v.dim() });
        }
        let direct = self.coeffs.keys().all(|s| v.get(*s).is_some());
        let form = if direct { self.clone() } else { self.reduce() };
        let mut acc = T::zero();
        for (s, c) in &form.coeffs {
            acc = acc + c.clone() * T::from_bigint(v.entry(*s)?);
        }
        Ok(acc)
    }

    /// Kalai convolution: `f_S * f_T = f_{S ∪ {d1} ∪ (T + d1 + 1)}`,
    /// extended bilinearly, giving a form in dimension `d1 + d2 + 1`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        let d = self.d + other.d + 1;
        if d > MAX_FORM_DIM {
            return Err(Error::UnsupportedDimension(d));
        }
        let mut terms = Vec::with_capacity(self.coeffs.len() * other.coeffs.len());
        for (s, a) in &self.coeffs {
            for (t, b) in &other.coeffs {
                let idx = s.insert(self.d).union(t.shift(self.d + 1));
                terms.push((idx, a.clone() * b.clone()));
            }
        }
        Ok(Self::from_terms(d, terms))
    }

    /// Convert coefficients into another scalar type.
    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> FlagForm<U> {
        FlagForm::from_terms(self.d, self.coeffs.iter().map(|(s, c)| (*s, f(c))))
    }
}

impl<T: Scalar> Module<T> for FlagForm<T> {
    fn plus(&self, other: &Self) -> Self {
        self.combine(other, T::one())
    }

    fn scaled(&self, by: &T) -> Self {
        self.scale(by)
    }

    /// Literal zero. Callers comparing modulo GDS reduce first.
    fn vanishes(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<T: Scalar> Add for &FlagForm<T> {
    type Output = FlagForm<T>;
    fn add(self, rhs: Self) -> FlagForm<T> {
        self.combine(rhs, T::one())
    }
}

impl<T: Scalar> Sub for &FlagForm<T> {
    type Output = FlagForm<T>;
    fn sub(self, rhs: Self) -> FlagForm<T> {
        self.combine(rhs, -T::one())
    }
}

impl<T: Scalar> Neg for &FlagForm<T> {
    type Output = FlagForm<T>;
    fn neg(self) -> FlagForm<T> {
        self.scale(&-T::one())
    }
}

impl<T: Scalar> Mul<&FlagForm<T>> for &FlagForm<T> {
    type Output = FlagForm<T>;

    /// Convolution. Panics if the result would exceed the supported
    /// dimension; use [`FlagForm::convolve`] to get an error instead.
    fn mul(self, rhs: &FlagForm<T>) -> FlagForm<T> {
        self.convolve(rhs).expect("convolution dimension out of range")
    }
}

impl<T: Scalar> fmt::Display for FlagForm<T> {
    /// `9f_2 - 6f_1 - 6f_3` style, constant term last.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut terms: Vec<(&FlagSet, &T)> = self.coeffs.iter().filter(|(s, _)| !s.is_empty()).collect();
        if let Some(c) = self.coeffs.get(&FlagSet::EMPTY) {
            terms.push((&FlagSet::EMPTY, c));
        }
        for (i, (s, c)) in terms.into_iter().enumerate() {
            let negative = *c < T::zero();
            let magnitude = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if s.is_empty() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}")?;
                }
                write!(f, "f_{}", s.key())?;
            }
        }
        Ok(())
    }
}

impl<T: Scalar> fmt::Debug for FlagForm<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[d={}] {self}", self.d)
    }
}

impl FlagForm<Rational> {
    /// Parses `"f_0 - f_1 + f_2 - 21"`, `"3f_{02} - 1/2 f_13"` and the like.
    /// A bare number is a multiple of `f_∅`.
    pub fn parse(d: usize, text: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse(format!("{m} in form {text:?}"));
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() || cleaned == "0" {
            return Ok(Self::zero(d));
        }
        let mut pieces = Vec::new();
        let mut start = 0;
        for (i, ch) in cleaned.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                pieces.push(&cleaned[start..i]);
                start = i;
            }
        }
        pieces.push(&cleaned[start..]);
        let mut terms = Vec::new();
        for piece in pieces {
            let (sign, body) = match piece.strip_prefix('-') {
                Some(rest) => (-BigRational::one(), rest),
                None => (BigRational::one(), piece.strip_prefix('+').unwrap_or(piece)),
            };
            let (coef, set) = match body.find('f') {
                None => (parse_rational(body)?, FlagSet::EMPTY),
                Some(pos) => {
                    let coef = match body[..pos].trim_end_matches('*') {
                        "" => BigRational::one(),
                        c => parse_rational(c)?,
                    };
                    let idx = body[pos + 1..]
                        .strip_prefix('_')
                        .ok_or_else(|| bad("expected f_"))?
                        .trim_start_matches('{')
                        .trim_end_matches('}');
                    let set: FlagSet = if idx == "∅" || idx == "e" { FlagSet::EMPTY } else { idx.parse()? };
                    if !set.fits(d) {
                        return Err(bad("index set exceeds dimension"));
                    }
                    (coef, set)
                }
            };
            terms.push((set, sign * coef));
        }
        Ok(Self::from_terms(d, terms))
    }

    /// `{d, coeffs: {"02": "-3", …}}` with exact `"p/q"` strings.
    pub fn to_json(&self) -> Value {
        let coeffs: Map<String, Value> = self
            .coeffs
            .iter()
            .map(|(s, c)| (s.key(), Value::String(rational_to_string(c))))
            .collect();
        serde_json::json!({ "d": self.d, "coeffs": coeffs })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let d = value
            .get("d")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("form needs an integer \"d\"".into()))? as usize;
        if d > MAX_FORM_DIM {
            return Err(Error::UnsupportedDimension(d));
        }
        let coeffs = value
            .get("coeffs")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("form needs a \"coeffs\" object".into()))?;
        let mut terms = Vec::new();
        for (key, raw) in coeffs {
            let s: FlagSet = key.parse()?;
            if !s.fits(d) {
                return Err(Error::Parse(format!("index set {key:?} exceeds dimension {d}")));
            }
            let c = match raw {
                Value::String(t) => parse_rational(t)?,
                Value::Number(n) => parse_rational(&n.to_string())?,
                _ => return Err(Error::Parse(format!("coefficient of {key:?} is not a number"))),
            };
            terms.push((s, c));
        }
        Ok(Self::from_terms(d, terms))
    }
}

/// Toric `g_0^d = f_∅` and `g_1^d = f_0 - (d+1) f_∅` as flag forms.
pub fn g_forms<T: Scalar>(d: usize) -> (FlagForm<T>, FlagForm<T>) {
    let g0 = FlagForm::constant(d, T::one());
    let g1 = if d == 0 {
        FlagForm::zero(0)
    } else {
        FlagForm::from_terms(
            d,
            [(FlagSet::single(0), T::one()), (FlagSet::EMPTY, -T::from_int(d as i64 + 1))],
        )
    };
    (g0, g1)
}

/// A convolution product kept as a tree, so it can be evaluated either by
/// index shifting or by summing over faces and quotients of a lattice.
#[derive(Clone, Debug, PartialEq)]
pub enum ConvExpr<T: Scalar> {
    Form(FlagForm<T>),
    Conv(Box<ConvExpr<T>>, Box<ConvExpr<T>>),
}

impl<T: Scalar> ConvExpr<T> {
    pub fn form(m: FlagForm<T>) -> Self {
        ConvExpr::Form(m)
    }

    pub fn conv(self, rhs: ConvExpr<T>) -> Self {
        ConvExpr::Conv(Box::new(self), Box::new(rhs))
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvExpr::Form(m) => m.dim(),
            ConvExpr::Conv(a, b) => a.dim() + b.dim() + 1,
        }
    }

    /// The product as a single flag form.
    pub fn to_form(&self) -> Result<FlagForm<T>> {
        match self {
            ConvExpr::Form(m) => Ok(m.clone()),
            ConvExpr::Conv(a, b) => a.to_form()?.convolve(&b.to_form()?),
        }
    }

    /// `Σ_{F a d1-face} m1(F) · m2(P/F)`, recursing into nested products.
    pub fn eval_on_lattice(&self, lattice: &FaceLattice) -> Result<T> {
        if lattice.dim() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: lattice.dim() });
        }
        match self {
            ConvExpr::Form(m) => m.evaluate(&lattice.flag_vector()),
            ConvExpr::Conv(a, b) => {
                let mut acc = T::zero();
                for face in lattice.faces_of_rank(a.dim() as i32) {
                    let lower = a.eval_on_lattice(&lattice.lower(face)?)?;
                    if lower.is_zero() {
                        continue;
                    }
                    acc = acc + lower * b.eval_on_lattice(&lattice.quotient(face)?)?;
                }
                Ok(acc)
            }
        }
    }
}

/// `(m1 * m2)(P)` computed from faces and quotient lattices of `P`.
pub fn evaluate_by_face_sum<T: Scalar>(
    m1: &FlagForm<T>,
    m2: &FlagForm<T>,
    lattice: &FaceLattice,
) -> Result<T> {
    ConvExpr::form(m1.clone())
        .conv(ConvExpr::form(m2.clone()))
        .eval_on_lattice(lattice)
}

/// The three convolution products whose sum gives Kalai's inequality
/// `3f_2 >= 2f_1 + 2f_3` for 5-polytopes.
pub fn kalai_summands<T: Scalar>() -> [ConvExpr<T>; 3] {
    let (g0_0, _) = g_forms::<T>(0);
    let (g0_1, _) = g_forms::<T>(1);
    let (_, g1_2) = g_forms::<T>(2);
    let f = |m: &FlagForm<T>| ConvExpr::form(m.clone());
    [
        f(&g0_1).conv(f(&g1_2)).conv(f(&g0_0)),
        f(&g0_0).conv(f(&g1_2)).conv(f(&g0_1)),
        f(&g1_2).conv(f(&g1_2)),
    ]
}

#[derive(Clone, Debug, PartialEq)]
pub struct KalaiDerivation<T: Scalar> {
    /// Each summand reduced to the sparse basis.
    pub summands: [FlagForm<T>; 3],
    pub total: FlagForm<T>,
}

/// Builds `g0¹*g1²*g0⁰ + g0⁰*g1²*g0¹ + g1²*g1²` and reduces it modulo GDS.
/// The total is `9f_2 - 6f_1 - 6f_3`.
pub fn kalai_5d_form<T: Scalar>() -> KalaiDerivation<T> {
    let summands = kalai_summands::<T>().map(|e| {
        e.to_form()
            .expect("dimension 5 is within range")
            .reduce()
    });
    let total = summands.iter().fold(FlagForm::zero(5), |acc, m| &acc + m);
    debug_assert!(total.gds_equivalent(&FlagForm::from_terms(
        5,
        [
            (FlagSet::single(2), T::from_int(9)),
            (FlagSet::single(1), T::from_int(-6)),
            (FlagSet::single(3), T::from_int(-6)),
        ],
    )));
    KalaiDerivation { summands, total }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BatteryMember<T: Scalar> {
    pub name: String,
    pub form: FlagForm<T>,
    pub provenance: String,
}

/// Linear forms known to be nonnegative on every `d`-polytope.
#[derive(Clone, Debug, PartialEq)]
pub struct InequalityBattery<T: Scalar> {
    pub d: usize,
    pub members: Vec<BatteryMember<T>>,
}

fn fvec_form<T: Scalar>(d: usize, coeffs: &[(usize, i64)], constant: i64) -> FlagForm<T> {
    let mut terms: Vec<(FlagSet, T)> =
        coeffs.iter().map(|&(i, c)| (FlagSet::single(i), T::from_int(c))).collect();
    terms.push((FlagSet::EMPTY, T::from_int(constant)));
    FlagForm::from_terms(d, terms)
}

/// The inequality battery for `d ∈ {5, 6, 7}`, each form followed by its
/// dual when the dual differs.
pub fn battery<T: Scalar>(d: usize) -> Result<InequalityBattery<T>> {
    let base: Vec<(&str, FlagForm<T>, &str)> = match d {
        5 => vec![
            ("vertex-degree", fvec_form(5, &[(1, 2), (0, -5)], 0), "every vertex of a 5-polytope lies on at least 5 edges: 2f_1 - 5f_0 >= 0"),
            ("kalai", fvec_form(5, &[(2, 9), (1, -6), (3, -6)], 0), "sum of the convolutions g0^1*g1^2*g0^0, g0^0*g1^2*g0^1 and g1^2*g1^2"),
        ],
        6 => vec![
            ("vertex-degree", fvec_form(6, &[(1, 1), (0, -3)], 0), "every vertex of a 6-polytope lies on at least 6 edges: f_1 - 3f_0 >= 0"),
            ("cd-c2dc2", fvec_form(6, &[(0, 1), (1, -1), (2, 1)], -21), "nonnegativity of <c^2dc^2 - 19c^6 | Psi>"),
        ],
        7 => vec![
            ("vertex-degree", fvec_form(7, &[(1, 2), (0, -7)], 0), "every vertex of a 7-polytope lies on at least 7 edges: 2f_1 - 7f_0 >= 0"),
            ("cd-c2dc3", fvec_form(7, &[(0, 1), (1, -1), (2, 1)], -36), "nonnegativity of <c^2dc^3 - 34c^7 | Psi>"),
        ],
        _ => return Err(Error::UnsupportedDimension(d)),
    };
    let mut members = Vec::new();
    for (name, form, provenance) in base {
        let dual = form.dual();
        let self_dual = dual == form;
        members.push(BatteryMember { name: name.to_string(), form, provenance: provenance.to_string() });
        if !self_dual {
            members.push(BatteryMember {
                name: format!("{name}-dual"),
                form: dual,
                provenance: format!("dual of {name}"),
            });
        }
    }
    Ok(InequalityBattery { d, members })
}

impl<T: Scalar> InequalityBattery<T> {
    pub fn evaluate(&self, v: &FlagVector) -> Result<Vec<(String, T)>> {
        self.members
            .iter()
            .map(|m| Ok((m.name.clone(), m.form.evaluate(v)?)))
            .collect()
    }

    pub fn holds_on(&self, v: &FlagVector) -> Result<bool> {
        Ok(self.evaluate(v)?.iter().all(|(_, x)| *x >= T::zero()))
    }
}

/// `3 (f_0 - f_1 + f_2 - 21) + (f_1 - 3f_0)` for `d = 6` and
/// `7 (f_0 - f_1 + f_2 - 36) + (2f_1 - 7f_0)` for `d = 7`: the lower bound
/// on `f_2` in terms of `f_1` that the battery implies.
pub fn derived_f2_bound<T: Scalar>(d: usize) -> Result<FlagForm<T>> {
    let b = battery::<T>(d)?;
    let get = |name: &str| b.members.iter().find(|m| m.name == name).map(|m| m.form.clone());
    let degree = get("vertex-degree").expect("battery has vertex-degree");
    let (cd, k) = match d {
        6 => (get("cd-c2dc2"), 3),
        7 => (get("cd-c2dc3"), 7),
        _ => return Err(Error::UnsupportedDimension(d)),
    };
    Ok(&cd.expect("battery has cd form").scale(&T::from_int(k)) + &degree)
}

/// Unimodality-related inequalities the battery does not imply.
pub fn star_conditions(f: &FVector) -> Vec<(String, bool)> {
    let d = f.dim();
    let g = |i: usize| f.get(i);
    match d {
        6 => vec![
            ("f_1 <= f_2".to_string(), g(1) <= g(2)),
            ("f_3 >= f_4".to_string(), g(3) >= g(4)),
        ],
        7 => vec![
            ("f_3 >= f_0".to_string(), g(3) >= g(0)),
            ("f_3 >= f_6".to_string(), g(3) >= g(6)),
        ],
        _ => Vec::new(),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CandidateReport {
    pub d: usize,
    pub flag_vector: FlagVector,
    pub f_vector: FVector,
    pub euler: bool,
    pub gds: bool,
    pub battery: Vec<(String, Rational)>,
    pub battery_holds: bool,
    pub properties: PropertyReport,
    pub star: Vec<(String, bool)>,
}

/// Completes (if needed) and screens a candidate flag vector against the
/// battery of its dimension and the f-vector properties.
pub fn check_candidate(v: &FlagVector) -> Result<CandidateReport> {
    let full = if v.is_complete() { v.clone() } else { complete_from_sparse(v)? };
    let bat = battery::<Rational>(full.dim())?;
    let values = bat.evaluate(&full)?;
    let battery_holds = values.iter().all(|(_, x)| !x.is_negative());
    let f_vector = full.f_vector()?;
    Ok(CandidateReport {
        d: full.dim(),
        euler: euler_check(&f_vector),
        gds: full.satisfies_gds()?,
        battery: values,
        battery_holds,
        properties: properties(&f_vector),
        star: star_conditions(&f_vector),
        f_vector,
        flag_vector: full,
    })
}

/// Draws sparse values uniformly from the box `[0, (8d)^|S|]` per sparse
/// set, completes them, and keeps the first vector with a positive
/// f-vector on which the whole battery holds. `None` after `tries` misses.
/// Acceptance is high for `d = 5`, lower for `d = 6` and negligible for
/// `d = 7`.
pub fn sample_feasible<R: Rng + ?Sized>(d: usize, rng: &mut R, tries: usize) -> Result<Option<FlagVector>> {
    let bat = battery::<Rational>(d)?;
    let basis = SparseBasis::new(d);
    let base = BigInt::from(8 * d as u64);
    for _ in 0..tries {
        let entries = basis.sets().iter().map(|&s| {
            if s.is_empty() {
                return (s, BigInt::one());
            }
            let hi = num_traits::pow(base.clone(), s.len());
            let hi = u64::try_from(hi).unwrap_or(u64::MAX);
            (s, BigInt::from(rng.gen_range(0..=hi)))
        });
        let full = complete_from_sparse(&FlagVector::from_entries(d, entries))?;
        let f = full.f_vector()?;
        if f.components().iter().any(|x| !x.is_positive()) {
            continue;
        }
        if bat.holds_on(&full)? {
            return Ok(Some(full));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_cube, build_cyclic, build_polygon, build_simplex};

    fn form(d: usize, s: &str) -> FlagForm<Rational> {
        FlagForm::parse(d, s).unwrap()
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn parse_and_display() {
        let m = form(5, "9f_2 - 6f_1 - 6 f_{3}");
        assert_eq!(m.to_string(), "-6f_1 + 9f_2 - 6f_3");
        assert_eq!(form(6, "f_0 - f_1 + f_2 - 21").to_string(), "f_0 - f_1 + f_2 - 21");
        assert_eq!(form(6, "1/2 f_02").to_string(), "1/2f_02");
        assert!(FlagForm::parse(3, "f_5").is_err());
        assert!(FlagForm::parse(3, "g_1").is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = form(5, "f_023 - 3f_02 - 1/3 f_23 + 9f_2 - 7");
        assert_eq!(FlagForm::from_json(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn evaluate_examples() {
        let s5 = build_simplex(5).unwrap().flag_vector();
        assert_eq!(form(5, "f_0 - 6").evaluate(&s5).unwrap(), q(0));
        let c58 = build_cyclic(5, 8).unwrap().flag_vector();
        assert_eq!(form(5, "3f_2 - 2f_1 - 2f_3").evaluate(&c58).unwrap(), q(0));
        let s6 = build_simplex(6).unwrap().flag_vector();
        assert_eq!(form(6, "f_0 - f_1 + f_2 - 21").evaluate(&s6).unwrap(), q(0));
        assert!(matches!(
            form(4, "f_0").evaluate(&s5),
            Err(Error::DimensionMismatch { expected: 4, found: 5 })
        ));
    }

    #[test]
    fn evaluate_on_sparse_only_vector() {
        let full = build_cyclic(5, 9).unwrap().flag_vector();
        let sparse = full.restrict_to_sparse().unwrap();
        let m = form(5, "f_14 + f_0123");
        assert_eq!(m.evaluate(&sparse).unwrap(), m.evaluate(&full).unwrap());
    }

    #[test]
    fn convolution_examples() {
        let e0 = FlagForm::<Rational>::constant(0, q(1));
        assert_eq!(&e0 * &e0, form(1, "f_0"));
        let e1 = FlagForm::<Rational>::constant(1, q(1));
        assert_eq!(&e1 * &form(2, "f_0 - 3"), form(4, "f_12 - 3f_1"));
        let g = form(2, "f_0 - 3");
        assert_eq!(&g * &g, form(5, "f_023 - 3f_02 - 3f_23 + 9f_2"));
    }

    #[test]
    fn convolution_dimension_limit() {
        let a = FlagForm::<Rational>::constant(5, q(1));
        assert_eq!(a.convolve(&a), Err(Error::UnsupportedDimension(11)));
    }

    #[test]
    fn g_forms_vanish_on_simplices() {
        for d in 2..=7 {
            let (g0, g1) = g_forms::<Rational>(d);
            let v = build_simplex(d).unwrap().flag_vector();
            assert_eq!(g0.evaluate(&v).unwrap(), q(1));
            assert_eq!(g1.evaluate(&v).unwrap(), q(0));
        }
        let (_, g1) = g_forms::<Rational>(5);
        assert_eq!(g1.evaluate(&build_cyclic(5, 8).unwrap().flag_vector()).unwrap(), q(2));
        let (_, g1) = g_forms::<Rational>(2);
        assert_eq!(g1.evaluate(&build_polygon(9).unwrap().flag_vector()).unwrap(), q(6));
    }

    #[test]
    fn kalai_summands_reduce_as_displayed() {
        let k = kalai_5d_form::<Rational>();
        assert_eq!(k.summands[0], form(5, "-6f_1 + 3f_02 - f_13"));
        assert_eq!(k.summands[1], form(5, "2f_13 - 3f_03"));
        assert_eq!(k.summands[2], form(5, "9f_2 - 6f_3 - 3f_02 + 3f_03 - f_13"));
        assert_eq!(k.total, form(5, "9f_2 - 6f_1 - 6f_3"));
    }

    #[test]
    fn face_sum_matches_index_shift() {
        let l = build_cyclic(5, 8).unwrap();
        let v = l.flag_vector();
        for e in kalai_summands::<Rational>() {
            assert_eq!(e.eval_on_lattice(&l).unwrap(), e.to_form().unwrap().evaluate(&v).unwrap());
        }
        let (_, g1) = g_forms::<Rational>(2);
        assert_eq!(evaluate_by_face_sum(&g1, &g1, &build_simplex(5).unwrap()).unwrap(), q(0));
        let e = FlagForm::<Rational>::constant(0, q(1));
        assert_eq!(evaluate_by_face_sum(&e, &e, &build_cube(1).unwrap()).unwrap(), q(2));
        assert!(evaluate_by_face_sum(&e, &e, &l).is_err());
    }

    #[test]
    fn batteries() {
        let b = battery::<Rational>(6).unwrap();
        let names: Vec<&str> = b.members.iter().map(|m| m.name.as_str()).collect();
        assert_eq!(names, ["vertex-degree", "vertex-degree-dual", "cd-c2dc2", "cd-c2dc2-dual"]);
        assert_eq!(battery::<Rational>(5).unwrap().members.len(), 3);
        assert_eq!(battery::<Rational>(4), Err(Error::UnsupportedDimension(4)));
        for d in 5..=7 {
            let bat = battery::<Rational>(d).unwrap();
            for l in [build_simplex(d).unwrap(), build_cube(d).unwrap(), build_cyclic(d, d + 3).unwrap()] {
                assert!(bat.holds_on(&l.flag_vector()).unwrap());
            }
        }
    }

    #[test]
    fn derived_bounds() {
        assert_eq!(derived_f2_bound::<Rational>(6).unwrap(), form(6, "3f_2 - 2f_1 - 63"));
        assert_eq!(derived_f2_bound::<Rational>(7).unwrap(), form(7, "7f_2 - 5f_1 - 252"));
    }

    #[test]
    fn gds_equivalence() {
        assert!(form(5, "f_124").gds_equivalent(&form(5, "f_123")));
        assert!(form(5, "f_14").gds_equivalent(&form(5, "2f_1 - f_12 + f_13")));
        assert!(!form(5, "f_14").gds_equivalent(&form(5, "f_13")));
    }

    #[test]
    fn float_scalar_evaluates() {
        let m = form(6, "f_0 - f_1 + f_2 - 21").map(Scalar::to_f64);
        let v = build_cube(6).unwrap().flag_vector();
        assert_eq!(m.evaluate(&v).unwrap(), 91.0);
    }

    #[test]
    fn sampler_respects_battery() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let v = sample_feasible(5, &mut rng, 100_000).unwrap().expect("a feasible sample");
        assert!(battery::<Rational>(5).unwrap().holds_on(&v).unwrap());
        assert!(v.satisfies_gds().unwrap());
    }
}
