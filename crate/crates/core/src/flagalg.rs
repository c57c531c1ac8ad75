//! Linear algebra of flag vectors modulo the generalized Dehn–Sommerville
//! (GDS) relations.
//!
//! For an index set `S` and a gap `(i, k)` of `S ∪ {-1, d}` (consecutive
//! members with `k - i >= 2`), every Eulerian flag vector satisfies
//!
//! ```text
//! Σ_{j=i+1}^{k-1} (-1)^(j-i-1) f_{S∪{j}}  =  (1 - (-1)^(k-i-1)) f_S
//! ```
//!
//! The entries on sparse sets (no two consecutive indices, never `d-1`)
//! form a basis modulo these relations; [`reduce_index`] rewrites any
//! `f_S` in that basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::flagset::{FlagSet, MAX_FORM_DIM};
use crate::scalar::Scalar;
use crate::{Error, Result};

/// Face numbers `(f_0, …, f_{d-1})`; the dimension is the length.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FVector {
    f: Vec<BigInt>,
}

impl FVector {
    pub fn new(f: Vec<BigInt>) -> Self {
        FVector { f }
    }

    pub fn from_i64s(f: &[i64]) -> Self {
        FVector { f: f.iter().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.f.len()
    }

    pub fn components(&self) -> &[BigInt] {
        &self.f
    }

    pub fn get(&self, i: usize) -> &BigInt {
        &self.f[i]
    }

    /// The f-vector of the dual polytope.
    pub fn reverse(&self) -> FVector {
        FVector { f: self.f.iter().rev().cloned().collect() }
    }

    pub fn is_palindromic(&self) -> bool {
        *self == self.reverse()
    }

    /// `Σ (-1)^i f_i`.
    pub fn alternating_sum(&self) -> BigInt {
        self.f
            .iter()
            .enumerate()
            .map(|(i, x)| if i % 2 == 0 { x.clone() } else { -x })
            .sum()
    }

    pub fn to_csv(&self) -> String {
        self.f.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for FVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.f.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
    }
}

impl FromStr for FVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let f = s
            .trim()
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<BigInt>()
                    .map_err(|_| Error::Parse(format!("bad f-vector component {x:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FVector { f })
    }
}

/// Euler's relation `Σ (-1)^i f_i = 1 - (-1)^d`.
pub fn euler_check(f: &FVector) -> bool {
    let rhs = if f.dim().is_multiple_of(2) { 0 } else { 2 };
    f.alternating_sum() == BigInt::from(rhs)
}

/// Flag numbers `f_S` of a `d`-polytope, possibly only partially known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagVector {
    d: usize,
    entries: BTreeMap<FlagSet, BigInt>,
}

impl FlagVector {
    pub fn new(d: usize) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(FlagSet::EMPTY, BigInt::one());
        FlagVector { d, entries }
    }

    pub fn from_entries(d: usize, entries: impl IntoIterator<Item = (FlagSet, BigInt)>) -> Self {
        let mut v = FlagVector::new(d);
        v.entries.extend(entries);
        v
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, s: FlagSet) -> Option<&BigInt> {
        self.entries.get(&s)
    }

    pub fn entry(&self, s: FlagSet) -> Result<&BigInt> {
        self.entries.get(&s).ok_or(Error::MissingEntry(s))
    }

    pub fn set(&mut self, s: FlagSet, value: BigInt) {
        self.entries.insert(s, value);
    }

    pub fn entries(&self) -> impl Iterator<Item = (FlagSet, &BigInt)> {
        self.entries.iter().map(|(s, v)| (*s, v))
    }

    /// Every one of the `2^d` entries is present.
    pub fn is_complete(&self) -> bool {
        self.entries.len() == 1 << self.d && self.entries.keys().all(|s| s.fits(self.d))
    }

    pub fn f_vector(&self) -> Result<FVector> {
        (0..self.d)
            .map(|i| self.entry(FlagSet::single(i)).cloned())
            .collect::<Result<Vec<_>>>()
            .map(FVector::new)
    }

    /// Entries on the sparse basis only.
    pub fn restrict_to_sparse(&self) -> Result<FlagVector> {
        let entries = SparseBasis::new(self.d)
            .sets()
            .iter()
            .map(|&s| Ok((s, self.entry(s)?.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(FlagVector::from_entries(self.d, entries))
    }

    /// Flag vector of the dual polytope: `f*_S = f_{d-1-S}`.
    pub fn dual(&self) -> FlagVector {
        FlagVector {
            d: self.d,
            entries: self.entries.iter().map(|(s, v)| (s.reverse(self.d), v.clone())).collect(),
        }
    }

    /// Whether every GDS residual vanishes.
    pub fn satisfies_gds(&self) -> Result<bool> {
        Ok(gds_residuals(self)?.iter().all(|(_, r)| r.is_zero()))
    }

    /// JSON document `{d, entries: {"": "1", "0": "…", "02": "…"}}`.
    pub fn to_json(&self) -> Value {
        let entries: Map<String, Value> = self
            .entries
            .iter()
            .map(|(s, v)| (s.key(), Value::String(v.to_string())))
            .collect();
        serde_json::json!({ "d": self.d, "entries": entries })
    }

    /// Parses the document produced by [`FlagVector::to_json`]; entries may
    /// be JSON integers or decimal strings.
    pub fn from_json(value: &Value) -> Result<FlagVector> {
        let d = value
            .get("d")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("flag vector needs an integer \"d\"".into()))?
            as usize;
        if d > MAX_FORM_DIM {
            return Err(Error::UnsupportedDimension(d));
        }
        let entries = value
            .get("entries")
            .and_then(Value::as_object)
            .ok_or_else(|| Error::Parse("flag vector needs an \"entries\" object".into()))?;
        let mut v = FlagVector { d, entries: BTreeMap::new() };
        for (key, raw) in entries {
            let s: FlagSet = key.parse()?;
            if !s.fits(d) {
                return Err(Error::Parse(format!("index set {key:?} exceeds dimension {d}")));
            }
            let n = match raw {
                Value::Number(n) => n.to_string().parse::<BigInt>().ok(),
                Value::String(t) => t.trim().parse::<BigInt>().ok(),
                _ => None,
            }
            .ok_or_else(|| Error::Parse(format!("entry {key:?} is not an integer")))?;
            v.entries.insert(s, n);
        }
        v.entries.entry(FlagSet::EMPTY).or_insert_with(BigInt::one);
        Ok(v)
    }
}

/// Sparse index sets of `{0, …, d-2}`, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseBasis {
    d: usize,
    sets: Vec<FlagSet>,
}

impl SparseBasis {
    pub fn new(d: usize) -> Self {
        let sets = FlagSet::all(d).into_iter().filter(|s| s.is_sparse(d)).collect();
        SparseBasis { d, sets }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn sets(&self) -> &[FlagSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

/// One GDS relation `Σ_T coeff_T f_T = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GdsRelation {
    pub set: FlagSet,
    pub gap: (i32, i32),
    pub terms: Vec<(FlagSet, i64)>,
}

/// All GDS relations in dimension `d`, one per `(S, gap)` pair.
pub fn gds_relations(d: usize) -> Vec<GdsRelation> {
    let mut out = Vec::new();
    for s in FlagSet::all(d) {
        let mut bounds = vec![-1i32];
        bounds.extend(s.iter().map(|x| x as i32));
        bounds.push(d as i32);
        for w in bounds.windows(2) {
            let (i, k) = (w[0], w[1]);
            if k - i < 2 {
                continue;
            }
            let mut terms: Vec<(FlagSet, i64)> = (i + 1..k)
                .map(|j| {
                    let sign = if (j - i - 1) % 2 == 0 { 1 } else { -1 };
                    (s.insert(j as usize), sign)
                })
                .collect();
            // (1 - (-1)^(k-i-1)) is 2 when k-i is even, 0 otherwise
            if (k - i) % 2 == 0 {
                terms.push((s, -2));
            }
            out.push(GdsRelation { set: s, gap: (i, k), terms });
        }
    }
    out
}

/// Residual of every GDS relation on `v`; all zero iff `v` satisfies GDS.
pub fn gds_residuals(v: &FlagVector) -> Result<Vec<(GdsRelation, BigRational)>> {
    gds_relations(v.dim())
        .into_iter()
        .map(|rel| {
            let mut acc = BigInt::zero();
            for (t, c) in &rel.terms {
                acc += v.entry(*t)? * BigInt::from(*c);
            }
            Ok((rel, BigRational::from_integer(acc)))
        })
        .collect()
}

/// Integer combination of sparse-basis entries.
pub type Reduction = BTreeMap<FlagSet, BigInt>;

/// Eagerly computed reductions of every index set of one dimension.
#[derive(Debug)]
pub struct Reducer {
    d: usize,
    table: HashMap<FlagSet, Reduction>,
}

impl Reducer {
    fn build(d: usize) -> Self {
        let mut table = HashMap::new();
        for s in FlagSet::all(d) {
            reduce_into(s, d, &mut table);
        }
        Reducer { d, table }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, s: FlagSet) -> &Reduction {
        &self.table[&s]
    }
}

/// Smallest element `j` of `S` with `j + 1 ∈ S` or `j = d - 1`.
fn first_offending(s: FlagSet, d: usize) -> Option<usize> {
    s.iter().find(|&j| j + 1 == d || s.contains(j + 1))
}

/// Solves the GDS relation on `S \ {j}` over the gap `(i, j + 1)` for
/// `f_S`. Every other term either drops `j` or moves it strictly left, so
/// `(|S|, ΣS)` decreases lexicographically and the recursion terminates.
fn reduce_into(s: FlagSet, d: usize, table: &mut HashMap<FlagSet, Reduction>) {
    if table.contains_key(&s) {
        return;
    }
    let Some(j) = first_offending(s, d) else {
        table.insert(s, BTreeMap::from([(s, BigInt::one())]));
        return;
    };
    let rest = s.remove(j);
    let i = rest.iter().filter(|&x| x < j).max().map_or(-1, |x| x as i64);
    let j = j as i64;
    // f_S = sign * [ (1 - (-1)^(j-i)) f_rest - Σ_{m=i+1}^{j-1} (-1)^(m-i-1) f_{rest ∪ {m}} ]
    let sign: i64 = if (j - i - 1) % 2 == 0 { 1 } else { -1 };
    let mut terms: Vec<(FlagSet, i64)> = Vec::new();
    if (j - i) % 2 == 1 {
        terms.push((rest, 2 * sign));
    }
    for m in i + 1..j {
        let c = if (m - i - 1) % 2 == 0 { 1 } else { -1 };
        terms.push((rest.insert(m as usize), -c * sign));
    }
    let mut out: Reduction = BTreeMap::new();
    for (t, c) in terms {
        reduce_into(t, d, table);
        for (b, v) in &table[&t] {
            *out.entry(*b).or_insert_with(BigInt::zero) += v * BigInt::from(c);
        }
    }
    out.retain(|_, v| !v.is_zero());
    table.insert(s, out);
}

/// Shared reducer for dimension `d`, built on first use.
pub fn reducer(d: usize) -> Arc<Reducer> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Reducer>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(r) = cache.lock().expect("reducer cache poisoned").get(&d) {
        return Arc::clone(r);
    }
    let built = Arc::new(Reducer::build(d));
    let mut guard = cache.lock().expect("reducer cache poisoned");
    Arc::clone(guard.entry(d).or_insert(built))
}

/// `f_S` as a combination of sparse-basis entries, valid on every flag
/// vector satisfying GDS. The identity on sparse sets.
pub fn reduce_index<T: Scalar>(s: FlagSet, d: usize) -> BTreeMap<FlagSet, T> {
    reducer(d)
        .get(s)
        .iter()
        .map(|(b, c)| (*b, T::from_bigint(c)))
        .collect()
}

/// Completes sparse-basis values to a full flag vector satisfying GDS.
pub fn complete_from_sparse(values: &FlagVector) -> Result<FlagVector> {
    let d = values.dim();
    let basis = SparseBasis::new(d);
    for &s in basis.sets() {
        if values.get(s).is_none() {
            return Err(Error::IncompleteBasis(s));
        }
    }
    if !values.entry(FlagSet::EMPTY)?.is_one() {
        return Err(Error::InvalidParams("f_∅ must equal 1".into()));
    }
    let red = reducer(d);
    let entries = FlagSet::all(d).into_iter().map(|s| {
        let v: BigInt = red
            .get(s)
            .iter()
            .map(|(b, c)| c * values.get(*b).expect("basis entry checked above"))
            .sum();
        (s, v)
    });
    Ok(FlagVector::from_entries(d, entries))
}

/// `F(d+1)` with `F(1) = F(2) = 1`: the size of the sparse basis.
pub fn fibonacci_dim(d: usize) -> usize {
    let (mut a, mut b) = (1usize, 1usize);
    for _ in 0..d {
        (a, b) = (b, a + b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_cyclic, build_simplex};

    fn set(k: &str) -> FlagSet {
        k.parse().unwrap()
    }

    fn ints(r: &BTreeMap<FlagSet, BigRational>) -> Vec<(String, i64)> {
        r.iter()
            .map(|(s, c)| (s.key(), i64::try_from(c.to_integer()).unwrap()))
            .collect()
    }

    #[test]
    fn basis_sizes_are_fibonacci() {
        let sizes: Vec<usize> = (2..=7).map(|d| SparseBasis::new(d).len()).collect();
        assert_eq!(sizes, [2, 3, 5, 8, 13, 21]);
        assert_eq!(fibonacci_dim(6), 13);
        let keys: Vec<String> = SparseBasis::new(6).sets().iter().map(|s| s.key()).collect();
        assert_eq!(
            keys,
            ["", "0", "1", "2", "3", "4", "02", "03", "04", "13", "14", "24", "024"]
        );
    }

    #[test]
    fn euler_relation_is_the_empty_set_gap() {
        let rels = gds_relations(5);
        let euler = rels.iter().find(|r| r.set.is_empty()).unwrap();
        assert_eq!(euler.gap, (-1, 5));
        let keys: Vec<(String, i64)> = euler.terms.iter().map(|(s, c)| (s.key(), *c)).collect();
        assert_eq!(keys, [("0".into(), 1), ("1".into(), -1), ("2".into(), 1), ("3".into(), -1), ("4".into(), 1), ("".into(), -2)]);
    }

    #[test]
    fn relation_on_one_four_gap() {
        // f_12 - f_13 + f_14 - 2 f_1 = 0 in dimension 5
        let rel = gds_relations(5)
            .into_iter()
            .find(|r| r.set == set("1") && r.gap == (1, 5))
            .unwrap();
        let keys: Vec<(String, i64)> = rel.terms.iter().map(|(s, c)| (s.key(), *c)).collect();
        assert_eq!(keys, [("12".into(), 1), ("13".into(), -1), ("14".into(), 1), ("1".into(), -2)]);
    }

    #[test]
    fn lattice_flag_vectors_have_zero_residuals() {
        for l in [build_simplex(5).unwrap(), build_cyclic(5, 8).unwrap()] {
            assert!(l.flag_vector().satisfies_gds().unwrap());
        }
    }

    #[test]
    fn reduce_sparse_is_identity() {
        let r: BTreeMap<FlagSet, BigRational> = reduce_index(set("024"), 6);
        assert_eq!(ints(&r), [("024".into(), 1)]);
    }

    #[test]
    fn reduce_matches_lattice_values() {
        let ls = [build_simplex(5).unwrap(), build_cyclic(5, 8).unwrap(), build_cyclic(5, 10).unwrap()];
        for l in &ls {
            let v = l.flag_vector();
            for s in [set("14"), set("124"), set("123"), set("01234")] {
                let r: BTreeMap<FlagSet, BigRational> = reduce_index(s, 5);
                let value: BigRational = r
                    .iter()
                    .map(|(b, c)| c * BigRational::from_integer(v.get(*b).unwrap().clone()))
                    .sum();
                assert_eq!(value, BigRational::from_integer(v.get(s).unwrap().clone()));
            }
        }
        let a: BTreeMap<FlagSet, BigRational> = reduce_index(set("124"), 5);
        let b: BTreeMap<FlagSet, BigRational> = reduce_index(set("123"), 5);
        assert_eq!(a, b);
    }

    #[test]
    fn completion_of_simplex_sparse_values() {
        let full = build_simplex(7).unwrap().flag_vector();
        let completed = complete_from_sparse(&full.restrict_to_sparse().unwrap()).unwrap();
        assert_eq!(completed, full);
    }

    #[test]
    fn completion_errors() {
        let mut v = build_simplex(4).unwrap().flag_vector().restrict_to_sparse().unwrap();
        v.entries.remove(&set("02"));
        assert_eq!(complete_from_sparse(&v), Err(Error::IncompleteBasis(set("02"))));
        let mut v = build_simplex(4).unwrap().flag_vector().restrict_to_sparse().unwrap();
        v.set(FlagSet::EMPTY, BigInt::from(2));
        assert!(complete_from_sparse(&v).is_err());
    }

    #[test]
    fn euler_examples() {
        assert!(euler_check(&FVector::from_i64s(&[8, 28, 52, 50, 20])));
        assert!(euler_check(&FVector::from_i64s(&[22, 111, 110, 35, 21, 7])));
        assert!(!euler_check(&FVector::from_i64s(&[4, 7, 4])));
    }

    #[test]
    fn missing_entry_reported() {
        let v = FlagVector::from_entries(2, [(set("0"), BigInt::from(4))]);
        assert!(matches!(gds_residuals(&v), Err(Error::MissingEntry(_))));
    }

    #[test]
    fn json_accepts_numbers_and_strings() {
        let doc = serde_json::json!({"d": 2, "entries": {"": 1, "0": "5", "1": 5, "01": "10"}});
        let v = FlagVector::from_json(&doc).unwrap();
        assert!(v.is_complete());
        assert_eq!(FlagVector::from_json(&v.to_json()).unwrap(), v);
        let bad = serde_json::json!({"d": 2, "entries": {"03": 1}});
        assert!(FlagVector::from_json(&bad).is_err());
    }
}
