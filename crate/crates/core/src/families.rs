//! Closed-form f-vectors, connected sums and the (C)/(L)/(U)/(B) predicates.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::flagalg::{FVector, FlagVector};
use crate::flagset::FlagSet;
use crate::scalar::Scalar;
use crate::{Error, Rational, Result};

/// Outcome of one property check; `witness` is the first violating index.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<usize>,
}

impl Verdict {
    fn from_witness(witness: Option<usize>) -> Self {
        Verdict { holds: witness.is_none(), witness }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    /// (C) `2 f_k >= f_{k-1} + f_{k+1}`.
    pub convex: Verdict,
    /// (L) `f_k^2 >= f_{k-1} f_{k+1}`.
    pub log_convex: Verdict,
    /// (U) weakly increasing, then weakly decreasing.
    pub unimodal: Verdict,
    /// (B) `f_k >= min(f_0, f_{d-1})`.
    pub barany: Verdict,
}

impl PropertyReport {
    /// `C ⇒ L ⇒ U ⇒ B`.
    pub fn implication_chain_holds(&self) -> bool {
        (!self.convex.holds || self.log_convex.holds)
            && (!self.log_convex.holds || self.unimodal.holds)
            && (!self.unimodal.holds || self.barany.holds)
    }
}

/// Checks the four properties. For (U) the witness is the valley: the
/// index where a descent is followed by a strict rise.
pub fn properties(f: &FVector) -> PropertyReport {
    let v = f.components();
    let n = v.len();
    let interior = || 1..n.saturating_sub(1);

    let convex = interior().find(|&k| BigInt::from(2) * &v[k] < &v[k - 1] + &v[k + 1]);
    let log_convex = interior().find(|&k| &v[k] * &v[k] < &v[k - 1] * &v[k + 1]);
    let unimodal = {
        let mut i = 0;
        while i + 1 < n && v[i] <= v[i + 1] {
            i += 1;
        }
        while i + 1 < n && v[i] >= v[i + 1] {
            i += 1;
        }
        (i + 1 < n).then_some(i)
    };
    let barany = if n == 0 {
        None
    } else {
        let floor = v[0].clone().min(v[n - 1].clone());
        interior().find(|&k| v[k] < floor)
    };
    let report = PropertyReport {
        convex: Verdict::from_witness(convex),
        log_convex: Verdict::from_witness(log_convex),
        unimodal: Verdict::from_witness(unimodal),
        barany: Verdict::from_witness(barany),
    };
    debug_assert!(
        v.iter().any(|x| !x.is_positive()) || report.implication_chain_holds(),
        "property implications violated on {f}"
    );
    report
}

/// First interior `k` with `f_k < min(f_{k-1}, f_{k+1})`.
pub fn strict_dip(f: &FVector) -> Option<usize> {
    let v = f.components();
    (1..v.len().saturating_sub(1)).find(|&k| v[k] < v[k - 1] && v[k] < v[k + 1])
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn exact(q: Rational) -> BigInt {
    assert!(q.is_integer(), "closed form produced a non-integer {q}");
    q.to_integer()
}

/// `f(C_5(n)) = (n, n(n-1)/2, 2(n²-6n+10), 5(n-3)(n-4)/2, (n-3)(n-4))`.
pub fn cyclic_f5(n: u64) -> Result<FVector> {
    if n < 6 {
        return Err(Error::InvalidParams(format!("C_5(n) needs n >= 6 (got {n})")));
    }
    let n = int(n as i64);
    let half = Rational::new(1.into(), 2.into());
    let f = vec![
        n.clone(),
        &n * (&n - int(1)) * &half,
        int(2) * (&n * &n - int(6) * &n + int(10)),
        int(5) * (&n - int(3)) * (&n - int(4)) * &half,
        (&n - int(3)) * (&n - int(4)),
    ];
    Ok(FVector::new(f.into_iter().map(exact).collect()))
}

/// The f-vector of the cyclic 7-polytope on `n` vertices.
pub fn cyclic_f7(n: u64) -> Result<FVector> {
    if n < 8 {
        return Err(Error::InvalidParams(format!("C_7(n) needs n >= 8 (got {n})")));
    }
    let n = int(n as i64);
    let m = |k: i64| &n - int(k);
    let f = vec![
        n.clone(),
        &n * m(1) / int(2),
        &n * m(1) * m(2) / int(6),
        int(5) * m(4) * (&n * &n - int(8) * &n + int(21)) / int(6),
        m(4) * (int(3) * &n * &n - int(31) * &n + int(84)) / int(2),
        int(7) * m(4) * m(5) * m(6) / int(6),
        m(4) * m(5) * m(6) / int(3),
    ];
    Ok(FVector::new(f.into_iter().map(exact).collect()))
}

/// f-vector of `P # Q` for simplicial `P` and simple `Q`: componentwise
/// sum, minus one at indices `0` and `d-1`. Only the dimensions are
/// validated.
pub fn connected_sum_f(p: &FVector, q: &FVector) -> Result<FVector> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch { expected: p.dim(), found: q.dim() });
    }
    let d = p.dim();
    if d < 3 {
        return Err(Error::InvalidParams(format!("connected sum needs d >= 3 (got {d})")));
    }
    let f = (0..d)
        .map(|i| {
            let s = p.get(i) + q.get(i);
            if i == 0 || i == d - 1 {
                s - 1
            } else {
                s
            }
        })
        .collect();
    Ok(FVector::new(f))
}

/// `f(C_7(n) # C_7(n)^Δ)` from its closed forms.
pub fn p7n(n: u64) -> Result<FVector> {
    if n < 8 {
        return Err(Error::InvalidParams(format!("P_7^n needs n >= 8 (got {n})")));
    }
    let [f0, f1, f2, f3] = p7n_half(&int(n as i64));
    let half = [f0, f1, f2, f3].map(exact);
    let f = vec![
        half[0].clone(),
        half[1].clone(),
        half[2].clone(),
        half[3].clone(),
        half[2].clone(),
        half[1].clone(),
        half[0].clone(),
    ];
    Ok(FVector::new(f))
}

fn p7n_half(n: &Rational) -> [Rational; 4] {
    let n2 = n * n;
    let n3 = &n2 * n;
    [
        (n - int(3)) * (&n2 - int(12) * n + int(41)) / int(3),
        (int(7) * &n3 - int(102) * &n2 + int(515) * n - int(840)) / int(6),
        (int(5) * &n3 - int(66) * &n2 + int(313) * n - int(504)) / int(3),
        int(5) * (n - int(4)) * (&n2 - int(8) * n + int(21)) / int(3),
    ]
}

/// `f_0 + f_2 - 2 f_1` for a 2-neighbourly polytope with `f_0` vertices,
/// `f_0 (f_0 - 2)(f_0 - 7) / 6`.
pub fn neighborly_gap(f0: &BigInt) -> Rational {
    let f0 = Rational::from_integer(f0.clone());
    &f0 * (&f0 - int(2)) * (&f0 - int(7)) / int(6)
}

/// The three log-convexity ratios of `P_7^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioTriple<T> {
    pub n: u64,
    /// `f_1² / (f_0 f_2)`
    pub r1: T,
    /// `f_2² / (f_1 f_3)`
    pub r2: T,
    /// `f_3² / (f_2 f_4)`
    pub r3: T,
}

impl<T: Scalar> RatioTriple<T> {
    pub fn all_above_one(&self) -> bool {
        self.r1 > T::one() && self.r2 > T::one() && self.r3 > T::one()
    }
}

/// Ratios computed from the f-vector of `P_7^n`.
pub fn ratio_triple<T: Scalar>(n: u64) -> Result<RatioTriple<T>> {
    let f = p7n(n)?;
    let g = |i: usize| T::from_bigint(f.get(i));
    Ok(RatioTriple {
        n,
        r1: g(1) * g(1) / (g(0) * g(2)),
        r2: g(2) * g(2) / (g(1) * g(3)),
        r3: g(3) * g(3) / (g(2) * g(4)),
    })
}

/// The ratios as the displayed rational functions of `n`, evaluated
/// exactly. Independent of [`p7n`] beyond sharing the polynomials.
pub fn ratio_closed_forms(n: u64) -> RatioTriple<Rational> {
    let x = int(n as i64);
    let x2 = &x * &x;
    let x3 = &x2 * &x;
    let a = int(7) * &x3 - int(102) * &x2 + int(515) * &x - int(840);
    let b = int(5) * &x3 - int(66) * &x2 + int(313) * &x - int(504);
    let c = &x2 - int(8) * &x + int(21);
    let e = &x2 - int(12) * &x + int(41);
    RatioTriple {
        n,
        r1: &a * &a / (int(4) * (&x - int(3)) * &e * &b),
        r2: int(2) * &b * &b / (int(5) * (&x - int(4)) * &c * &a),
        r3: int(25) * (&x - int(4)) * (&x - int(4)) * &c * &c / (&b * &b),
    }
}

/// Exact ratios for every `n` in `[n_min, n_max]`.
pub fn logconv_scan(n_min: u64, n_max: u64) -> Result<Vec<RatioTriple<Rational>>> {
    if n_min < 8 || n_min > n_max {
        return Err(Error::InvalidParams(format!(
            "scan needs 8 <= n_min <= n_max (got {n_min}..{n_max})"
        )));
    }
    (n_min..=n_max).map(ratio_triple).collect()
}

/// One row of the convexity scan over `C_5(n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexityRow {
    pub n: u64,
    pub f: FVector,
    /// `f_1 - (f_0 + f_2) / 2`; negative means (C) fails at `k = 1`.
    pub gap: Rational,
}

pub fn convexity5_scan(n_min: u64, n_max: u64) -> Result<Vec<ConvexityRow>> {
    if n_min < 6 || n_min > n_max {
        return Err(Error::InvalidParams(format!(
            "scan needs 6 <= n_min <= n_max (got {n_min}..{n_max})"
        )));
    }
    (n_min..=n_max)
        .map(|n| {
            let f = cyclic_f5(n)?;
            let q = |i: usize| Rational::from_integer(f.get(i).clone());
            let gap = q(1) - (q(0) + q(2)) / int(2);
            Ok(ConvexityRow { n, f, gap })
        })
        .collect()
}

fn sparse_vector(d: usize, entries: &[(&str, i64)]) -> FlagVector {
    FlagVector::from_entries(
        d,
        entries.iter().map(|&(k, v)| {
            let s: FlagSet = k.parse().expect("static key");
            (s, BigInt::from(v))
        }),
    )
}

/// Sparse flag data of the 6-dimensional family `f^(ℓ)`: every entry is
/// affine in `ℓ`.
pub fn candidate_6d(ell: u64) -> FlagVector {
    const BASE: [(&str, i64, i64); 12] = [
        ("0", 22, 1),
        ("1", 111, 3),
        ("2", 110, 2),
        ("3", 35, 4),
        ("4", 21, 6),
        ("02", 780, 15),
        ("03", 1340, 50),
        ("04", 1080, 51),
        ("13", 2010, 90),
        ("14", 2160, 132),
        ("24", 1260, 114),
        ("024", 6480, 396),
    ];
    let ell = ell as i64;
    let entries: Vec<(&str, i64)> = BASE.iter().map(|&(k, a, b)| (k, a + b * ell)).collect();
    sparse_vector(6, &entries)
}

/// Sparse flag data of the 7-dimensional candidate with `f_3 < f_0`.
pub fn candidate_7d() -> FlagVector {
    sparse_vector(
        7,
        &[
            ("0", 134),
            ("1", 469),
            ("2", 371),
            ("3", 70),
            ("4", 371),
            ("5", 469),
            ("02", 2814),
            ("03", 6580),
            ("04", 10360),
            ("05", 8484),
            ("13", 9870),
            ("14", 20720),
            ("15", 21210),
            ("24", 13790),
            ("25", 20720),
            ("35", 9870),
            ("024", 62160),
            ("025", 84840),
            ("035", 84840),
            ("135", 127260),
        ],
    )
}

/// `C(n, k)`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| (acc * BigInt::from(n - i)).div_floor(&BigInt::from(i + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::build_cyclic;

    fn fv(x: &[i64]) -> FVector {
        FVector::from_i64s(x)
    }

    fn q(a: i64, b: i64) -> Rational {
        Rational::new(a.into(), b.into())
    }

    #[test]
    fn cyclic_closed_forms() {
        assert_eq!(cyclic_f5(8).unwrap(), fv(&[8, 28, 52, 50, 20]));
        assert_eq!(cyclic_f7(8).unwrap(), fv(&[8, 28, 56, 70, 56, 28, 8]));
        assert_eq!(cyclic_f7(10).unwrap(), build_cyclic(7, 10).unwrap().f_vector());
        assert!(cyclic_f5(5).is_err());
        assert!(cyclic_f7(7).is_err());
    }

    #[test]
    fn connected_sums() {
        let t = fv(&[4, 6, 4]);
        assert_eq!(connected_sum_f(&t, &t).unwrap(), fv(&[7, 12, 7]));
        let c = cyclic_f7(8).unwrap();
        assert_eq!(connected_sum_f(&c, &c.reverse()).unwrap(), fv(&[15, 56, 112, 140, 112, 56, 15]));
        assert!(matches!(connected_sum_f(&t, &fv(&[5, 5])), Err(Error::DimensionMismatch { .. })));
        assert!(connected_sum_f(&fv(&[4, 4]), &fv(&[4, 4])).is_err());
    }

    #[test]
    fn p7n_values() {
        assert_eq!(p7n(8).unwrap(), fv(&[15, 56, 112, 140, 112, 56, 15]));
        assert_eq!(p7n(9).unwrap().get(0), &BigInt::from(28));
        assert!(p7n(7).is_err());
        for n in 8..=200 {
            assert_eq!(p7n(n).unwrap().alternating_sum(), BigInt::from(2));
        }
    }

    #[test]
    fn property_examples() {
        let r = properties(&fv(&[8, 28, 52, 50, 20]));
        assert_eq!(r.convex, Verdict { holds: false, witness: Some(1) });
        assert!(r.log_convex.holds && r.unimodal.holds && r.barany.holds);

        let r = properties(&fv(&[22, 111, 110, 35, 21, 7]));
        assert!(r.unimodal.holds, "peak at f_1, then weakly decreasing");
        assert!(!r.convex.holds);

        let r = properties(&fv(&[32, 141, 130, 75, 81, 27]));
        assert_eq!(r.unimodal, Verdict { holds: false, witness: Some(3) });

        let r = properties(&fv(&[8, 28, 56, 70, 56, 28, 8]));
        assert!(!r.convex.holds && r.log_convex.holds);

        let r = properties(&fv(&[134, 469, 371, 70, 371, 469, 134]));
        assert_eq!(r.barany, Verdict { holds: false, witness: Some(3) });
    }

    #[test]
    fn plateaus_are_unimodal() {
        assert!(properties(&fv(&[3, 5, 5, 5, 2])).unimodal.holds);
        assert!(properties(&fv(&[5])).unimodal.holds);
        assert_eq!(strict_dip(&fv(&[3, 5, 4, 6, 2])), Some(2));
        assert_eq!(strict_dip(&fv(&[3, 5, 5, 6, 2])), None);
    }

    #[test]
    fn neighborly_gap_values() {
        assert_eq!(neighborly_gap(&7.into()), q(0, 1));
        assert_eq!(neighborly_gap(&8.into()), q(8, 1));
        assert_eq!(neighborly_gap(&10.into()), q(40, 1));
        for f0 in 1..40u64 {
            let direct = BigInt::from(f0) + binomial(f0, 3) - BigInt::from(2) * binomial(f0, 2);
            assert_eq!(neighborly_gap(&f0.into()), Rational::from_integer(direct));
        }
    }

    #[test]
    fn ratios_at_eight() {
        let r = ratio_triple::<Rational>(8).unwrap();
        assert_eq!(r.r3, q(25, 16));
        assert_eq!(r.r1, q(28, 15));
        assert_eq!(ratio_closed_forms(8), r);
        assert!(logconv_scan(5, 7).is_err());
        let approx = ratio_triple::<f64>(8).unwrap();
        assert!((approx.r3 - 1.5625).abs() < 1e-12);
    }

    #[test]
    fn convexity_scan_turns_negative_at_eight() {
        let rows = convexity5_scan(6, 12).unwrap();
        let negative: Vec<u64> = rows.iter().filter(|r| r.gap.is_negative()).map(|r| r.n).collect();
        assert_eq!(negative, (8..=12).collect::<Vec<_>>());
    }

    #[test]
    fn candidate_listings() {
        assert_eq!(candidate_6d(0).get("024".parse().unwrap()), Some(&BigInt::from(6480)));
        assert_eq!(candidate_6d(2).get("4".parse().unwrap()), Some(&BigInt::from(33)));
        assert_eq!(candidate_7d().get("135".parse().unwrap()), Some(&BigInt::from(127260)));
    }
}
