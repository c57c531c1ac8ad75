//! `ab`- and `cd`-indices, and the toric g-vector.
//!
//! The ab-index of a flag vector is `Σ_S h_S u_S`, where `u_S` is the
//! ab-word with `b` exactly at the positions in `S` and
//! `h_S = Σ_{T⊆S} (-1)^{|S∖T|} f_T`. For Eulerian input it can be written
//! uniquely in `c = a + b` and `d = ab + ba`. Conversion solves that linear
//! system exactly, with coefficients in any [`Module`], so the same code
//! yields numbers (for one polytope) or flag forms (symbolically).

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::flagalg::FlagVector;
use crate::flagset::{FlagSet, MAX_FORM_DIM};
use crate::forms::FlagForm;
use crate::lattice::FaceLattice;
use crate::scalar::{parse_rational, rational_to_string, Module, Scalar};
use crate::{Error, Rational, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CdLetter {
    C,
    D,
}

impl CdLetter {
    pub fn degree(self) -> usize {
        match self {
            CdLetter::C => 1,
            CdLetter::D => 2,
        }
    }
}

/// A monomial in the noncommuting variables `c` (degree 1) and `d`
/// (degree 2).
///
/// Words are ordered reverse-lexicographically: compared from the last
/// letter backwards with `c < d`, a proper suffix first. In degree 3 this
/// gives `c^3 < dc < cd`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CdWord(Vec<CdLetter>);

impl CdWord {
    pub fn new(letters: Vec<CdLetter>) -> Self {
        CdWord(letters)
    }

    pub fn letters(&self) -> &[CdLetter] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|l| l.degree()).sum()
    }

    /// `c^n`.
    pub fn c_power(n: usize) -> Self {
        CdWord(vec![CdLetter::C; n])
    }

    /// All words of the given degree, in canonical order. There are
    /// `F(degree + 1)` of them.
    pub fn all(degree: usize) -> Vec<CdWord> {
        fn go(rest: usize, prefix: &mut Vec<CdLetter>, out: &mut Vec<CdWord>) {
            if rest == 0 {
                out.push(CdWord(prefix.clone()));
                return;
            }
            prefix.push(CdLetter::C);
            go(rest - 1, prefix, out);
            prefix.pop();
            if rest >= 2 {
                prefix.push(CdLetter::D);
                go(rest - 2, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        go(degree, &mut Vec::new(), &mut out);
        out.sort();
        out
    }

    /// The ab-words (as sets of `b` positions) in the expansion of this
    /// word; each appears with coefficient one.
    pub fn expand(&self) -> Vec<FlagSet> {
        let mut words = vec![FlagSet::EMPTY];
        let mut pos = 0;
        for &l in &self.0 {
            words = match l {
                CdLetter::C => words.iter().flat_map(|w| [*w, w.insert(pos)]).collect(),
                CdLetter::D => words.iter().flat_map(|w| [w.insert(pos + 1), w.insert(pos)]).collect(),
            };
            pos += l.degree();
        }
        words
    }
}

impl Ord for CdWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for CdWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CdWord {
    /// Runs are written with exponents: `c^2dc^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let run = self.0[i..].iter().take_while(|&&x| x == l).count();
            let ch = if l == CdLetter::C { 'c' } else { 'd' };
            if run == 1 {
                write!(f, "{ch}")?;
            } else {
                write!(f, "{ch}^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl fmt::Debug for CdWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for CdWord {
    type Err = Error;

    /// Accepts `c^2dc^2`, `c2dc2`, `ccdcc` and `1` (the empty word).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(CdWord(Vec::new()));
        }
        let bad = || Error::Parse(format!("bad cd-word {s:?}"));
        let chars: Vec<char> = s.chars().collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let l = match chars[i] {
                'c' => CdLetter::C,
                'd' => CdLetter::D,
                _ => return Err(bad()),
            };
            i += 1;
            if i < chars.len() && chars[i] == '^' {
                i += 1;
            }
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let count = if start == i {
                if chars.get(i - 1) == Some(&'^') {
                    return Err(bad());
                }
                1
            } else {
                chars[start..i].iter().collect::<String>().parse::<usize>().map_err(|_| bad())?
            };
            letters.extend(std::iter::repeat_n(l, count));
        }
        if letters.is_empty() {
            return Err(bad());
        }
        Ok(CdWord(letters))
    }
}

/// Homogeneous polynomial in `a`, `b` of degree `d`; words are keyed by the
/// set of positions holding `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct AbPolynomial<R> {
    pub d: usize,
    pub terms: BTreeMap<FlagSet, R>,
}

impl<R: Clone> AbPolynomial<R> {
    pub fn coeff(&self, word: FlagSet) -> Option<&R> {
        self.terms.get(&word)
    }
}

/// `ab`-word spelled out, `b` at the positions in `word`.
pub fn ab_word_string(word: FlagSet, d: usize) -> String {
    (0..d).map(|i| if word.contains(i) { 'b' } else { 'a' }).collect()
}

/// Homogeneous `cd`-polynomial of (weighted) degree `degree`.
#[derive(Clone, PartialEq)]
pub struct CdPolynomial<R> {
    pub degree: usize,
    pub terms: BTreeMap<CdWord, R>,
}

impl<R: Clone> CdPolynomial<R> {
    pub fn coeff(&self, u: &CdWord) -> Option<&R> {
        self.terms.get(u)
    }
}

/// The flag `h` numbers `h_S = Σ_{T⊆S} (-1)^{|S∖T|} f_T`.
pub fn ab_index<T: Scalar>(v: &FlagVector) -> Result<AbPolynomial<T>> {
    let d = v.dim();
    let mut terms = BTreeMap::new();
    for s in FlagSet::all(d) {
        let mut h = T::zero();
        for t in s.subsets() {
            let f = T::from_bigint(v.entry(t)?);
            h = if (s.len() - t.len()) % 2 == 0 { h + f } else { h - f };
        }
        terms.insert(s, h);
    }
    Ok(AbPolynomial { d, terms })
}

/// The ab-index with flag-form coefficients, reduced to the sparse basis.
pub fn ab_index_symbolic<T: Scalar>(d: usize) -> AbPolynomial<FlagForm<T>> {
    let terms = FlagSet::all(d)
        .into_iter()
        .map(|s| {
            let h = FlagForm::from_terms(
                d,
                s.subsets().map(|t| {
                    let sign = if (s.len() - t.len()) % 2 == 0 { T::one() } else { -T::one() };
                    (t, sign)
                }),
            );
            (s, h.reduce())
        })
        .collect();
    AbPolynomial { d, terms }
}

/// Rewrites an ab-polynomial in `c` and `d`.
///
/// Gaussian elimination over `T` on the system "expansion of
/// `Σ x_u u` equals `p`", one unknown per cd-word. Rows left over after
/// elimination must have zero right-hand side, otherwise the input has no
/// cd-form and [`Error::NotEulerian`] is returned.
pub fn ab_to_cd<T: Scalar, R: Module<T>>(p: &AbPolynomial<R>) -> Result<CdPolynomial<R>> {
    let d = p.d;
    let words = CdWord::all(d);
    let col: HashMap<FlagSet, Vec<usize>> = words.iter().enumerate().fold(HashMap::new(), |mut acc, (j, w)| {
        for ab in w.expand() {
            acc.entry(ab).or_default().push(j);
        }
        acc
    });
    let zero_rhs = p
        .terms
        .values()
        .next()
        .map(|r| r.zero_like())
        .ok_or_else(|| Error::NotEulerian("empty ab-polynomial".into()))?;
    let mut rows: Vec<(Vec<T>, R)> = FlagSet::all(d)
        .into_iter()
        .map(|s| {
            let mut coeffs = vec![T::zero(); words.len()];
            for &j in col.get(&s).into_iter().flatten() {
                coeffs[j] = T::one();
            }
            let rhs = p.terms.get(&s).cloned().unwrap_or_else(|| zero_rhs.clone());
            (coeffs, rhs)
        })
        .collect();

    let mut pivot_rows = Vec::with_capacity(words.len());
    let mut next = 0;
    for j in 0..words.len() {
        let Some(r) = (next..rows.len()).find(|&r| !rows[r].0[j].is_zero()) else {
            return Err(Error::NotEulerian(format!("cd-word {} is undetermined", words[j])));
        };
        rows.swap(next, r);
        let inv = T::one() / rows[next].0[j].clone();
        let (row, rhs) = &mut rows[next];
        for x in row.iter_mut() {
            *x = x.clone() * inv.clone();
        }
        *rhs = rhs.scaled(&inv);
        let (pivot, pivot_rhs) = rows[next].clone();
        for (i, (row, rhs)) in rows.iter_mut().enumerate() {
            if i == next || row[j].is_zero() {
                continue;
            }
            let factor = row[j].clone();
            for (x, y) in row.iter_mut().zip(&pivot) {
                *x = x.clone() - factor.clone() * y.clone();
            }
            *rhs = rhs.minus(&pivot_rhs.scaled(&factor));
        }
        pivot_rows.push(next);
        next += 1;
    }
    if let Some((_, rhs)) = rows[next..].iter().find(|(_, rhs)| !rhs.vanishes()) {
        return Err(Error::NotEulerian(format!(
            "ab-index is not a cd-polynomial (residual {rhs:?})"
        )));
    }
    let terms = words
        .into_iter()
        .zip(pivot_rows)
        .map(|(w, r)| (w, rows[r].1.clone()))
        .filter(|(_, c)| !c.vanishes())
        .collect();
    Ok(CdPolynomial { degree: d, terms })
}

/// The cd-index of a flag vector with exact coefficients.
pub fn cd_index_of(v: &FlagVector) -> Result<CdPolynomial<Rational>> {
    ab_to_cd::<Rational, Rational>(&ab_index(v)?)
}

/// The cd-index of a lattice; refuses non-Eulerian lattices.
pub fn cd_index(lattice: &FaceLattice) -> Result<CdPolynomial<Rational>> {
    if !lattice.is_eulerian() {
        return Err(Error::NotEulerian("lattice fails the interval parity test".into()));
    }
    cd_index_of(&lattice.flag_vector())
}

/// `⟨u | Ψ⟩` for the polytope with flag vector `v`.
pub fn cd_coefficient(v: &FlagVector, u: &CdWord) -> Result<Rational> {
    if u.degree() != v.dim() {
        return Err(Error::DegreeMismatch { expected: v.dim(), found: u.degree() });
    }
    let psi = cd_index_of(v)?;
    Ok(psi.coeff(u).cloned().unwrap_or_else(Rational::zero))
}

/// cd-index whose coefficients are flag forms in the sparse basis, cached
/// per dimension.
pub fn cd_index_symbolic(d: usize) -> Result<Arc<CdPolynomial<FlagForm<Rational>>>> {
    type Cache = Mutex<HashMap<usize, Arc<CdPolynomial<FlagForm<Rational>>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    if d > MAX_FORM_DIM {
        return Err(Error::UnsupportedDimension(d));
    }
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().expect("cd cache poisoned").get(&d) {
        return Ok(Arc::clone(p));
    }
    let built = Arc::new(ab_to_cd::<Rational, FlagForm<Rational>>(&ab_index_symbolic(d))?);
    Ok(Arc::clone(cache.lock().expect("cd cache poisoned").entry(d).or_insert(built)))
}

/// A flag form (in the sparse basis) whose value on every Eulerian flag
/// vector is the coefficient of `u` in the cd-index.
pub fn cd_word_to_flag_form(u: &CdWord, d: usize) -> Result<FlagForm<Rational>> {
    if u.degree() != d {
        return Err(Error::DegreeMismatch { expected: d, found: u.degree() });
    }
    let psi = cd_index_symbolic(d)?;
    Ok(psi.coeff(u).cloned().unwrap_or_else(|| FlagForm::zero(d)))
}

/// Flag form of a cd-polynomial with rational coefficients.
pub fn cd_polynomial_to_flag_form(p: &CdPolynomial<Rational>) -> Result<FlagForm<Rational>> {
    let mut acc = FlagForm::zero(p.degree);
    for (u, c) in &p.terms {
        acc = &acc + &cd_word_to_flag_form(u, p.degree)?.scale(c);
    }
    Ok(acc)
}

/// Every cd coefficient is nonnegative.
pub fn stanley_nonneg_check(lattice: &FaceLattice) -> Result<bool> {
    Ok(cd_index(lattice)?.terms.values().all(|c| !c.is_negative()))
}

impl CdPolynomial<Rational> {
    pub fn zero(degree: usize) -> Self {
        CdPolynomial { degree, terms: BTreeMap::new() }
    }

    /// Parses the canonical rendering, e.g. `"c^3 + 2dc + 2cd"` or
    /// `"c^2dc^2 - 19c^6"`.
    pub fn parse(s: &str) -> Result<Self> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned == "0" {
            return Ok(Self::zero(0));
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
        let mut terms: BTreeMap<CdWord, Rational> = BTreeMap::new();
        let mut degree = None;
        for piece in pieces {
            let (neg, body) = match piece.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, piece.strip_prefix('+').unwrap_or(piece)),
            };
            let split = body
                .find(['c', 'd'])
                .ok_or_else(|| Error::Parse(format!("term {piece:?} has no cd-word")))?;
            let coef = match body[..split].trim_end_matches('*') {
                "" => Rational::one(),
                c => parse_rational(c)?,
            };
            let word: CdWord = body[split..].parse()?;
            if *degree.get_or_insert(word.degree()) != word.degree() {
                return Err(Error::Parse(format!("{s:?} is not homogeneous")));
            }
            let coef = if neg { -coef } else { coef };
            let slot = terms.entry(word).or_insert_with(Rational::zero);
            *slot += coef;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(CdPolynomial { degree: degree.unwrap_or(0), terms })
    }

    /// JSON object mapping canonical words to exact coefficients.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .terms
            .iter()
            .map(|(w, c)| (w.to_string(), serde_json::Value::String(rational_to_string(c))))
            .collect();
        serde_json::Value::Object(map)
    }
}

impl fmt::Display for CdPolynomial<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if !magnitude.is_one() {
                f.write_str(&rational_to_string(&magnitude))?;
            }
            write!(f, "{w}")?;
        }
        Ok(())
    }
}

impl<R: fmt::Debug> fmt::Debug for CdPolynomial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(w, c)| (w.to_string(), c))).finish()
    }
}

/// Toric h- and g-vectors of a polytope.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricGVector {
    pub d: usize,
    /// `g_0, …, g_{⌊d/2⌋}`.
    pub g: Vec<BigInt>,
    /// `h_0, …, h_d` of the toric h-polynomial.
    pub h: Vec<BigInt>,
}

impl ToricGVector {
    pub fn is_nonnegative(&self) -> bool {
        self.g.iter().all(|x| !x.is_negative())
    }

    pub fn h_is_palindromic(&self) -> bool {
        self.h.iter().eq(self.h.iter().rev())
    }
}

/// Coefficients of `(t - 1)^k`, lowest degree first.
fn t_minus_one_pow(k: usize) -> Vec<BigInt> {
    let mut p = vec![BigInt::one()];
    for _ in 0..k {
        let mut next = vec![BigInt::zero(); p.len() + 1];
        for (i, c) in p.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c;
        }
        p = next;
    }
    p
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// `h(F, t) = Σ_{G < F} g(G, t) (t - 1)^{dim F - 1 - dim G}` over proper
/// faces `G` of `F` (the empty face included, with `g = 1`), and
/// `g(F, t)` the truncation of `(1 - t) h(F, t)` to degree `⌊dim F / 2⌋`.
pub fn toric_g(lattice: &FaceLattice) -> Result<ToricGVector> {
    if !lattice.is_eulerian() {
        return Err(Error::NotEulerian("lattice fails the interval parity test".into()));
    }
    let powers: Vec<Vec<BigInt>> = (0..=lattice.dim() + 1).map(t_minus_one_pow).collect();
    // g-polynomials memoized per face; simplices short-circuit to 1
    let mut g: Vec<Vec<BigInt>> = Vec::with_capacity(lattice.len());
    let mut top_h = Vec::new();
    for id in 0..lattice.len() {
        let face = lattice.face(id);
        if face.rank < 0 || face.vertices.len() as i32 == face.rank + 1 && id != lattice.top() {
            g.push(vec![BigInt::one()]);
            continue;
        }
        let e = face.rank as usize;
        let mut h = vec![BigInt::zero(); e + 1];
        for &sub in lattice.below(id) {
            let k = (face.rank - 1 - lattice.face(sub).rank) as usize;
            for (i, c) in poly_mul(&g[sub], &powers[k]).into_iter().enumerate() {
                h[i] += c;
            }
        }
        let mut gf = vec![h[0].clone()];
        for i in 1..=e / 2 {
            gf.push(&h[i] - &h[i - 1]);
        }
        if id == lattice.top() {
            top_h = h;
        }
        g.push(gf);
    }
    Ok(ToricGVector { d: lattice.dim(), g: g[lattice.top()].clone(), h: top_h })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{build_cube, build_cyclic, build_polygon, build_simplex};

    fn w(s: &str) -> CdWord {
        s.parse().unwrap()
    }

    fn ints(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn word_parsing_and_order() {
        assert_eq!(w("c2dc2"), w("c^2dc^2"));
        assert_eq!(w("ccdcc"), w("c^2dc^2"));
        assert_eq!(w("c^2dc^2").degree(), 6);
        assert_eq!(w("c^2dc^2").to_string(), "c^2dc^2");
        assert!("cx".parse::<CdWord>().is_err());
        assert!("c^".parse::<CdWord>().is_err());
        let order: Vec<String> = CdWord::all(3).iter().map(ToString::to_string).collect();
        assert_eq!(order, ["c^3", "dc", "cd"]);
        let counts: Vec<usize> = (1..=8).map(|n| CdWord::all(n).len()).collect();
        assert_eq!(counts, [1, 2, 3, 5, 8, 13, 21, 34]);
    }

    #[test]
    fn ab_index_examples() {
        let sq = ab_index::<Rational>(&build_polygon(4).unwrap().flag_vector()).unwrap();
        let h: Vec<i64> = sq.terms.values().map(|x| i64::try_from(x.to_integer()).unwrap()).collect();
        // keys in order ∅, {0}, {1}, {0,1}
        assert_eq!(h, [1, 3, 3, 1]);
        let tet = ab_index::<Rational>(&build_simplex(3).unwrap().flag_vector()).unwrap();
        let h: Vec<i64> = tet.terms.values().map(|x| i64::try_from(x.to_integer()).unwrap()).collect();
        assert_eq!(h, [1, 3, 5, 3, 3, 5, 3, 1]);
        let seg = ab_index::<Rational>(&build_simplex(1).unwrap().flag_vector()).unwrap();
        assert_eq!(seg.terms.len(), 2);
        assert!(seg.terms.values().all(|x| x.is_one()));
        assert_eq!(ab_word_string("02".parse().unwrap(), 3), "bab");
    }

    #[test]
    fn cd_index_examples() {
        assert_eq!(cd_index(&build_polygon(4).unwrap()).unwrap().to_string(), "c^2 + 2d");
        assert_eq!(cd_index(&build_polygon(5).unwrap()).unwrap().to_string(), "c^2 + 3d");
        assert_eq!(cd_index(&build_simplex(3).unwrap()).unwrap().to_string(), "c^3 + 2dc + 2cd");
        assert_eq!(cd_index(&build_polygon(3).unwrap()).unwrap().to_string(), "c^2 + d");
    }

    #[test]
    fn broken_euler_is_not_eulerian() {
        let mut v = build_simplex(3).unwrap().flag_vector();
        v.set("1".parse().unwrap(), BigInt::from(7));
        assert!(matches!(cd_index_of(&v), Err(Error::NotEulerian(_))));
    }

    #[test]
    fn coefficients() {
        let s6 = build_simplex(6).unwrap().flag_vector();
        assert_eq!(cd_coefficient(&s6, &w("c^6")).unwrap(), Rational::one());
        assert_eq!(cd_coefficient(&s6, &w("c^2dc^2")).unwrap(), Rational::from_integer(19.into()));
        let c6 = build_cube(6).unwrap().flag_vector();
        assert_eq!(cd_coefficient(&c6, &w("c^6")).unwrap(), Rational::one());
        let p7 = build_polygon(7).unwrap().flag_vector();
        assert_eq!(cd_coefficient(&p7, &w("d")).unwrap(), Rational::from_integer(5.into()));
        assert!(matches!(
            cd_coefficient(&p7, &w("c^3")),
            Err(Error::DegreeMismatch { expected: 2, found: 3 })
        ));
    }

    #[test]
    fn symbolic_forms() {
        let expected6 = FlagForm::parse(6, "f_0 - f_1 + f_2 - 2").unwrap();
        assert!(cd_word_to_flag_form(&w("c^2dc^2"), 6).unwrap().gds_equivalent(&expected6));
        let expected7 = FlagForm::parse(7, "f_0 - f_1 + f_2 - 2").unwrap();
        assert!(cd_word_to_flag_form(&w("c^2dc^3"), 7).unwrap().gds_equivalent(&expected7));
        for d in 1..=7 {
            assert_eq!(
                cd_word_to_flag_form(&CdWord::c_power(d), d).unwrap(),
                FlagForm::constant(d, Rational::one())
            );
        }
        assert!(cd_word_to_flag_form(&w("cd"), 4).is_err());
        let p = CdPolynomial::parse("c^2dc^2 - 19c^6").unwrap();
        let m = cd_polynomial_to_flag_form(&p).unwrap();
        assert!(m.gds_equivalent(&FlagForm::parse(6, "f_0 - f_1 + f_2 - 21").unwrap()));
    }

    #[test]
    fn polynomial_text_round_trip() {
        for s in ["c^3 + 2dc + 2cd", "c^2dc^2 - 19c^6", "-1/2d^2 + 3c^4", "0"] {
            let p = CdPolynomial::parse(s).unwrap();
            assert_eq!(p.to_string(), CdPolynomial::parse(&p.to_string()).unwrap().to_string());
        }
        assert_eq!(CdPolynomial::parse("2cd + c^3 + 2dc").unwrap().to_string(), "c^3 + 2dc + 2cd");
        assert!(CdPolynomial::parse("c^2 + c").is_err());
    }

    #[test]
    fn toric_g_examples() {
        let s = toric_g(&build_simplex(4).unwrap()).unwrap();
        assert_eq!(ints(&s.g), [1, 0, 0]);
        let c = toric_g(&build_cyclic(5, 8).unwrap()).unwrap();
        assert_eq!(ints(&c.h), [1, 3, 6, 6, 3, 1]);
        assert_eq!(ints(&c.g), [1, 2, 3]);
        let cube = toric_g(&build_cube(3).unwrap()).unwrap();
        assert_eq!(ints(&cube.g), [1, 4]);
        assert!(cube.h_is_palindromic());
    }

    #[test]
    fn non_eulerian_lattice_rejected() {
        let tet = build_simplex(3).unwrap();
        let facet = tet.faces_of_rank(2).next().unwrap();
        let faces = tet
            .faces()
            .iter()
            .enumerate()
            .filter(|&(id, _)| id != facet)
            .map(|(_, f)| (f.rank, f.vertices.clone()))
            .collect();
        let broken = FaceLattice::from_faces(3, faces).unwrap();
        assert!(matches!(toric_g(&broken), Err(Error::NotEulerian(_))));
        assert!(matches!(stanley_nonneg_check(&broken), Err(Error::NotEulerian(_))));
    }
}
