//! The full reproduction suite: every identity, example and property the
//! library is expected to satisfy, run against closed forms and against
//! brute-force lattice enumeration, collected into one report.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cdindex::{cd_coefficient, cd_index, cd_word_to_flag_form, toric_g, CdWord};
use crate::families::{
    binomial, candidate_6d, candidate_7d, connected_sum_f, convexity5_scan, cyclic_f5, cyclic_f7,
    logconv_scan, neighborly_gap, p7n, properties, ratio_closed_forms, strict_dip,
};
use crate::flagalg::{complete_from_sparse, euler_check, gds_residuals, FVector, FlagVector, SparseBasis};
use crate::flagset::FlagSet;
use crate::forms::{battery, derived_f2_bound, kalai_5d_form, kalai_summands, sample_feasible, star_conditions, FlagForm};
use crate::lattice::{
    build_crosspolytope, build_cube, build_cyclic, build_polygon, build_simplex, FaceLattice,
};
use crate::scalar::rational_to_string;
use crate::{Rational, Result};

/// Default bound on the size of corpus lattices.
pub const CORPUS_FACE_LIMIT: usize = 100_000;

/// Default seed for the randomized checks.
pub const DEFAULT_SEED: u64 = 20_240_601;

/// One named check with exact expected and computed renderings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    /// Library operation exercised.
    pub operation: String,
    /// What in the paper the check reproduces.
    pub anchor: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

/// One cell of the property × dimension summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableCell {
    pub property: String,
    pub dims: String,
    /// `holds`, `fails` or `open`, as stated in the paper.
    pub stated: String,
    /// What the data says.
    pub evidence: String,
    /// `consistent`, `inconsistent` or `not-checked`.
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub seed: u64,
    pub checks: Vec<Check>,
    pub table: Vec<TableCell>,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass) && self.table.iter().all(|c| c.status != "inconsistent")
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
        for c in &self.checks {
            let status = if c.pass { "pass" } else { "FAIL" };
            writeln!(f, "{status}  {:width$}  {}", c.name, c.computed)?;
            if !c.pass {
                writeln!(f, "      {:width$}  expected {}", "", c.expected)?;
            }
        }
        writeln!(f)?;
        writeln!(f, "{:<4} {:<6} {:<7} {:<12} evidence", "prop", "dim", "stated", "status")?;
        for cell in &self.table {
            writeln!(
                f,
                "{:<4} {:<6} {:<7} {:<12} {}",
                cell.property, cell.dims, cell.stated, cell.status, cell.evidence
            )?;
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        write!(f, "\n{passed}/{} checks passed", self.checks.len())
    }
}

/// A named lattice with its flag vector.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub lattice: FaceLattice,
    pub flags: FlagVector,
    pub simplicial: bool,
}

/// Simplices, cubes and cross-polytopes up to `max_dim`, polygons with up
/// to 8 vertices, cyclic polytopes `C_d(n)` with `3 <= d <= max_dim`,
/// `n <= 12`, and their duals. Lattices above `face_limit` faces are
/// skipped.
pub fn corpus(max_dim: usize, face_limit: usize) -> Result<Vec<CorpusEntry>> {
    let mut raw: Vec<(String, FaceLattice, bool)> = Vec::new();
    for d in 1..=max_dim {
        raw.push((format!("simplex-{d}"), build_simplex(d)?, true));
    }
    for d in 2..=max_dim {
        raw.push((format!("cube-{d}"), build_cube(d)?, d == 2));
        raw.push((format!("crosspolytope-{d}"), build_crosspolytope(d)?, true));
    }
    for n in 3..=8 {
        raw.push((format!("polygon-{n}"), build_polygon(n)?, true));
    }
    for d in 3..=max_dim {
        for n in d + 2..=12 {
            let l = build_cyclic(d, n)?;
            let dual = l.dual();
            raw.push((format!("cyclic-{d}-{n}"), l, true));
            raw.push((format!("cyclic-{d}-{n}-dual"), dual, false));
        }
    }
    Ok(raw
        .into_iter()
        .filter(|(_, l, _)| l.len() <= face_limit)
        .map(|(name, lattice, simplicial)| {
            let flags = lattice.flag_vector();
            CorpusEntry { name, lattice, flags, simplicial }
        })
        .collect())
}

pub fn default_corpus() -> Result<Vec<CorpusEntry>> {
    corpus(7, CORPUS_FACE_LIMIT)
}

/// `f_{s_k} · Π_{j<k} C(s_{j+1}+1, s_j+1)` for a simplicial polytope.
pub fn simplicial_flag_number(f: &FVector, s: FlagSet) -> BigInt {
    let idx: Vec<usize> = s.iter().collect();
    let Some(&last) = idx.last() else {
        return BigInt::one();
    };
    idx.windows(2).fold(f.get(last).clone(), |acc, w| {
        acc * binomial(w[1] as u64 + 1, w[0] as u64 + 1)
    })
}

struct Suite {
    checks: Vec<Check>,
}

impl Suite {
    fn push(&mut self, name: &str, operation: &str, anchor: &str, expected: String, computed: String, pass: bool) {
        self.checks.push(Check {
            name: name.into(),
            operation: operation.into(),
            anchor: anchor.into(),
            expected,
            computed,
            pass,
        });
    }

    /// Passes iff the renderings coincide.
    fn eq(&mut self, name: &str, operation: &str, anchor: &str, expected: impl ToString, computed: impl ToString) {
        let (e, c) = (expected.to_string(), computed.to_string());
        let pass = e == c;
        self.push(name, operation, anchor, e, c, pass);
    }

    /// A check over many cases: passes iff `failures` is empty.
    fn all(&mut self, name: &str, operation: &str, anchor: &str, what: &str, cases: usize, failures: Vec<String>) {
        let computed = if failures.is_empty() {
            format!("{what} on all {cases} cases")
        } else {
            format!("{} of {cases} cases fail: {}", failures.len(), failures.join("; "))
        };
        let pass = failures.is_empty() && cases > 0;
        self.push(name, operation, anchor, format!("{what} on all cases"), computed, pass);
    }

    fn result<T: ToString>(&mut self, name: &str, operation: &str, anchor: &str, expected: impl ToString, r: Result<T>) {
        match r {
            Ok(v) => self.eq(name, operation, anchor, expected, v),
            Err(e) => self.push(name, operation, anchor, expected.to_string(), format!("error: {e}"), false),
        }
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn form(d: usize, text: &str) -> FlagForm<Rational> {
    FlagForm::parse(d, text).expect("static form")
}

fn word(s: &str) -> CdWord {
    s.parse().expect("static cd-word")
}

fn join<T: ToString>(xs: impl IntoIterator<Item = T>) -> String {
    xs.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

/// Runs every check. Deterministic for a fixed seed.
pub fn run(seed: u64) -> Result<VerificationReport> {
    let corpus = default_corpus()?;
    let mut s = Suite { checks: Vec::new() };
    cyclic_nonconvexity(&mut s)?;
    kalai_derivation(&mut s, &corpus)?;
    cd_forms(&mut s, &corpus)?;
    candidates(&mut s)?;
    log_convexity(&mut s)?;
    oracle_battery(&mut s, &corpus)?;
    theorem_one_on_data(&mut s, &corpus, seed)?;
    connected_sums(&mut s)?;
    let table = summary_table(&corpus)?;
    Ok(VerificationReport { seed, checks: s.checks, table })
}

fn cyclic_nonconvexity(s: &mut Suite) -> Result<()> {
    let anchor = "f-vector of the cyclic 5-polytope with 8 vertices is not convex";
    s.result("cyclic5-fvector-closed-form", "families::cyclic_f5", anchor, "(8, 28, 52, 50, 20)", cyclic_f5(8));
    let lattice = build_cyclic(5, 8)?;
    s.eq("cyclic5-fvector-lattice", "lattice::build_cyclic", anchor, "(8, 28, 52, 50, 20)", lattice.f_vector());

    let f = lattice.f_vector();
    let half = Rational::from_integer(f.get(0) + f.get(2)) / q(2);
    s.eq(
        "cyclic5-nonconvex",
        "families::properties",
        anchor,
        "f_1 = 28 < 30 = (f_0 + f_2)/2; C fails at k=1; L, U, B hold",
        {
            let p = properties(&f);
            let rel = if Rational::from_integer(f.get(1).clone()) < half { "<" } else { ">=" };
            format!(
                "f_1 = {} {rel} {} = (f_0 + f_2)/2; C fails at k={}; L, U, B {}",
                f.get(1),
                rational_to_string(&half),
                p.convex.witness.map_or("-".into(), |k| k.to_string()),
                if p.log_convex.holds && p.unimodal.holds && p.barany.holds { "hold" } else { "do not all hold" }
            )
        },
    );

    let mut bad = Vec::new();
    for n in 6..=12u64 {
        let closed = cyclic_f5(n)?;
        let enumerated = build_cyclic(5, n as usize)?.f_vector();
        if closed != enumerated {
            bad.push(format!("C_5({n}): {closed} vs {enumerated}"));
        }
    }
    for n in 8..=12u64 {
        let closed = cyclic_f7(n)?;
        let enumerated = build_cyclic(7, n as usize)?.f_vector();
        if closed != enumerated {
            bad.push(format!("C_7({n}): {closed} vs {enumerated}"));
        }
    }
    s.all(
        "cyclic-closed-forms-vs-lattice",
        "families::cyclic_f5, families::cyclic_f7",
        "closed-form f-vectors of cyclic 5- and 7-polytopes",
        "closed form equals enumeration",
        12,
        bad,
    );

    let rows = convexity5_scan(6, 12)?;
    s.eq(
        "convexity5-scan",
        "families::convexity5_scan",
        "f_1 < (f_0 + f_2)/2 for cyclic 5-polytopes with n >= 8",
        "gap negative for n = 8, 9, 10, 11, 12",
        format!("gap negative for n = {}", join(rows.iter().filter(|r| r.gap.is_negative()).map(|r| r.n))),
    );

    let mut bad = Vec::new();
    for f0 in 1..=40i64 {
        let x = BigInt::from(f0);
        let gap = neighborly_gap(&x);
        let direct = x.clone() + binomial(f0 as u64, 3) - BigInt::from(2) * binomial(f0 as u64, 2);
        if gap != Rational::from_integer(direct) || (f0 >= 2 && (f0 >= 8) != gap.is_positive()) {
            bad.push(format!("f_0 = {f0}: {gap}"));
        }
    }
    s.all(
        "neighborly-gap",
        "families::neighborly_gap",
        "f_0 + f_2 - 2f_1 = f_0 (f_0 - 2)(f_0 - 7)/6 for 2-neighbourly polytopes",
        "identity holds and, for f_0 >= 2, gap > 0 iff f_0 >= 8",
        40,
        bad,
    );

    let simplex7 = build_simplex(7)?.f_vector();
    let p = properties(&simplex7);
    s.eq(
        "simplex7-nonconvex",
        "families::properties",
        "the 7-simplex violates (C)",
        "(8, 28, 56, 70, 56, 28, 8): C fails at k=1, L holds",
        format!(
            "{simplex7}: C {} at k={}, L {}",
            if p.convex.holds { "holds" } else { "fails" },
            p.convex.witness.map_or("-".into(), |k| k.to_string()),
            if p.log_convex.holds { "holds" } else { "fails" }
        ),
    );
    Ok(())
}

fn kalai_derivation(s: &mut Suite, corpus: &[CorpusEntry]) -> Result<()> {
    let derivation = kalai_5d_form::<Rational>();
    let expected = [
        "-6f_1 + 3f_02 - f_13",
        "2f_13 - 3f_03",
        "9f_2 - 6f_3 - 3f_02 + 3f_03 - f_13",
    ];
    let anchor = "convolution summands in the proof of unimodality for 5-polytopes";
    for (i, (text, got)) in expected.iter().zip(&derivation.summands).enumerate() {
        let want = form(5, text);
        let pass = want.reduce() == *got;
        s.push(
            &format!("kalai-summand-{}", i + 1),
            "forms::kalai_5d_form",
            anchor,
            want.to_string(),
            got.to_string(),
            pass,
        );
    }
    let want = form(5, "-6f_1 + 9f_2 - 6f_3");
    let pass = derivation.total.gds_equivalent(&want);
    s.push(
        "kalai-form-reduction",
        "forms::kalai_5d_form",
        "sum of the three convolutions is -6f_1 + 9f_2 - 6f_3",
        want.to_string(),
        derivation.total.to_string(),
        pass,
    );

    let mut values = Vec::new();
    for n in 6..=12 {
        let v = build_cyclic(5, n)?.flag_vector();
        values.push(rational_to_string(&derivation.total.evaluate(&v)?));
    }
    s.eq(
        "kalai-tight-on-cyclic",
        "forms::evaluate",
        "cyclic 5-polytopes are tight for 3f_2 >= 2f_1 + 2f_3",
        "0, 0, 0, 0, 0, 0, 0",
        values.join(", "),
    );

    let c58 = corpus
        .iter()
        .find(|e| e.name == "cyclic-5-8")
        .map(|e| e.lattice.clone())
        .unwrap_or(build_cyclic(5, 8)?);
    let flags = c58.flag_vector();
    let mut rendered = Vec::new();
    let mut pass = true;
    for expr in kalai_summands::<Rational>() {
        let by_index = expr.to_form()?.evaluate(&flags)?;
        let by_faces = expr.eval_on_lattice(&c58)?;
        pass &= by_index == by_faces;
        rendered.push(format!("{} = {}", rational_to_string(&by_index), rational_to_string(&by_faces)));
    }
    s.push(
        "convolution-dual-path",
        "forms::ConvExpr::eval_on_lattice",
        "both definitions of convolution agree on C_5(8)",
        "index-shift value = face-sum value for each summand".into(),
        rendered.join("; "),
        pass,
    );
    Ok(())
}

fn cd_forms(s: &mut Suite, corpus: &[CorpusEntry]) -> Result<()> {
    let cases = [
        ("cd-c2dc2-form", "c^2dc^2", 6, "f_0 - f_1 + f_2 - 2"),
        ("cd-c2dc3-form", "c^2dc^3", 7, "f_0 - f_1 + f_2 - 2"),
        ("cd-c6-form", "c^6", 6, "1"),
        ("cd-c7-form", "c^7", 7, "1"),
    ];
    for (name, u, d, expected) in cases {
        let want = form(d, expected);
        match cd_word_to_flag_form(&word(u), d) {
            Ok(got) => {
                let pass = got.gds_equivalent(&want);
                s.push(
                    name,
                    "cdindex::cd_word_to_flag_form",
                    "flag forms of the cd-words c^2dc^2 and c^2dc^3",
                    want.to_string(),
                    got.to_string(),
                    pass,
                );
            }
            Err(e) => s.push(name, "cdindex::cd_word_to_flag_form", "", want.to_string(), format!("error: {e}"), false),
        }
    }

    let simplex6 = build_simplex(6)?.flag_vector();
    let simplex7 = build_simplex(7)?.flag_vector();
    s.result(
        "cd-c2dc2-simplex6",
        "cdindex::cd_coefficient",
        "<c^2dc^2 | Psi> = f_0 - f_1 + f_2 - 2 on the 6-simplex",
        "19",
        cd_coefficient(&simplex6, &word("c2dc2")).map(|x| rational_to_string(&x)),
    );
    let cube6 = build_cube(6)?.flag_vector();
    s.eq(
        "cd-c6-trivial",
        "cdindex::cd_coefficient",
        "the word c^6 translates into f_empty = 1",
        "1, 1",
        format!(
            "{}, {}",
            rational_to_string(&cd_coefficient(&simplex6, &word("c^6"))?),
            rational_to_string(&cd_coefficient(&cube6, &word("c^6"))?)
        ),
    );

    for (name, d, member, v) in [
        ("ineq2-tight-simplex6", 6, "cd-c2dc2", &simplex6),
        ("ineq4-tight-simplex7", 7, "cd-c2dc3", &simplex7),
    ] {
        let bat = battery::<Rational>(d)?;
        let m = bat.members.iter().find(|m| m.name == member).expect("battery member");
        s.result(
            name,
            "forms::battery",
            "f_0 - f_1 + f_2 - 21 (d = 6) and f_0 - f_1 + f_2 - 36 (d = 7) vanish on simplices",
            "0",
            m.form.evaluate(v).map(|x| rational_to_string(&x)),
        );
    }

    let bound6 = derived_f2_bound::<Rational>(6)?;
    let want = form(6, "3f_2 - 2f_1 - 63");
    s.push(
        "prop3-bound-form",
        "forms::derived_f2_bound",
        "3 times the c^2dc^2 inequality plus f_1 >= 3f_0 gives f_2 >= (2/3) f_1 + 21",
        want.to_string(),
        bound6.to_string(),
        bound6.gds_equivalent(&want),
    );
    let bound7 = derived_f2_bound::<Rational>(7)?;
    let want = form(7, "7f_2 - 5f_1 - 252");
    s.push(
        "prop5-bound-form",
        "forms::derived_f2_bound",
        "7 times the c^2dc^3 inequality plus 2f_1 >= 7f_0 gives f_2 >= (5/7) f_1 + 36",
        want.to_string(),
        bound7.to_string(),
        bound7.gds_equivalent(&want),
    );
    let slack: Vec<(String, Rational)> = corpus
        .iter()
        .filter(|e| e.lattice.dim() == 6)
        .map(|e| {
            let f = e.lattice.f_vector();
            let x = Rational::from_integer(f.get(2).clone())
                - Rational::new(BigInt::from(2), BigInt::from(3)) * Rational::from_integer(f.get(1).clone());
            (e.name.clone(), x)
        })
        .collect();
    let min = slack.iter().min_by(|a, b| a.1.cmp(&b.1));
    s.eq(
        "prop3-constant",
        "forms::derived_f2_bound",
        "the additive constant in the lower bound on f_2 for 6-polytopes",
        "min f_2 - (2/3) f_1 over 6-dimensional corpus = 21 (simplex-6)",
        match min {
            Some((name, x)) => format!(
                "min f_2 - (2/3) f_1 over 6-dimensional corpus = {} ({name})",
                rational_to_string(x)
            ),
            None => "no 6-dimensional lattices".into(),
        },
    );
    Ok(())
}

fn candidates(s: &mut Suite) -> Result<()> {
    let basis6: Vec<FlagSet> = SparseBasis::new(6).sets().to_vec();
    let keys6: Vec<FlagSet> = candidate_6d(0).entries().map(|(k, _)| k).collect();
    let basis7: Vec<FlagSet> = SparseBasis::new(7).sets().to_vec();
    let keys7: Vec<FlagSet> = candidate_7d().entries().map(|(k, _)| k).collect();
    let sorted = |mut v: Vec<FlagSet>| {
        v.sort();
        v
    };
    s.push(
        "sparse-basis-matches-listings",
        "flagalg::SparseBasis",
        "candidate listings are indexed by the sparse basis (13 and 21 sets)",
        "13 sets (d=6), 21 sets (d=7), equal to the listing keys".into(),
        format!("{} sets (d=6), {} sets (d=7)", basis6.len(), basis7.len()),
        sorted(basis6.clone()) == sorted(keys6) && sorted(basis7.clone()) == sorted(keys7),
    );

    let anchor6 = "6-dimensional candidate family satisfying the battery but not (*)";
    let mut f5 = Vec::new();
    let mut battery_fail = Vec::new();
    let mut star_pass = Vec::new();
    let mut non_unimodal = Vec::new();
    let mut euler_fail = Vec::new();
    let bat6 = battery::<Rational>(6)?;
    for ell in 0..=10u64 {
        let full = complete_from_sparse(&candidate_6d(ell))?;
        let f = full.f_vector()?;
        f5.push(f.get(5).to_string());
        if !bat6.holds_on(&full)? {
            battery_fail.push(ell);
        }
        if star_conditions(&f).iter().all(|(_, ok)| *ok) {
            star_pass.push(ell);
        }
        if !properties(&f).unimodal.holds {
            non_unimodal.push(ell);
        }
        if !euler_check(&f) || !full.satisfies_gds()? {
            euler_fail.push(ell);
        }
    }
    s.eq(
        "candidate-6d-f5",
        "flagalg::complete_from_sparse",
        "the number of facets is f_5 = 7 + 2l",
        join((0..=10).map(|l| 7 + 2 * l)),
        f5.join(", "),
    );
    s.all(
        "candidate-6d-battery",
        "forms::check_candidate",
        anchor6,
        "battery holds",
        11,
        battery_fail.iter().map(|l| format!("l = {l}")).collect(),
    );
    s.all(
        "candidate-6d-gds",
        "flagalg::complete_from_sparse",
        anchor6,
        "completion satisfies Euler and GDS",
        11,
        euler_fail.iter().map(|l| format!("l = {l}")).collect(),
    );
    s.all(
        "candidate-6d-star-fails",
        "forms::star_conditions",
        anchor6,
        "(*) violated",
        11,
        star_pass.iter().map(|l| format!("l = {l} satisfies (*)")).collect(),
    );
    s.eq(
        "candidate-6d-unimodality",
        "families::properties",
        anchor6,
        "U fails for l = 8, 9, 10",
        format!("U fails for l = {}", join(&non_unimodal)),
    );

    let full = complete_from_sparse(&candidate_7d())?;
    let f = full.f_vector()?;
    s.eq(
        "candidate-7d-f6",
        "flagalg::complete_from_sparse",
        "completing the 7-dimensional candidate gives f_6 = 134",
        "134",
        f.get(6),
    );
    let bat7 = battery::<Rational>(7)?;
    s.push(
        "candidate-7d-battery",
        "forms::check_candidate",
        "the 7-dimensional candidate satisfies the battery",
        "battery holds".into(),
        format!("battery {}", if bat7.holds_on(&full)? { "holds" } else { "fails" }),
        bat7.holds_on(&full)?,
    );
    let p = properties(&f);
    s.eq(
        "candidate-7d-barany",
        "families::properties",
        "the 7-dimensional candidate violates f_3 >= f_0 and f_3 >= f_6",
        "(134, 469, 371, 70, 371, 469, 134): B fails at k=3",
        format!(
            "{f}: B {} at k={}",
            if p.barany.holds { "holds" } else { "fails" },
            p.barany.witness.map_or("-".into(), |k| k.to_string())
        ),
    );
    Ok(())
}

fn log_convexity(s: &mut Suite) -> Result<()> {
    let anchor = "log-convexity of the f-vectors of P_7^n";
    s.result("p7n-n8", "families::p7n", anchor, "(15, 56, 112, 140, 112, 56, 15)", p7n(8));
    s.result("p7n-n9-f0", "families::p7n", anchor, "28", p7n(9).map(|f| f.get(0).clone()));

    let scan = logconv_scan(8, 200)?;
    let not_above: Vec<String> = scan.iter().filter(|r| !r.all_above_one()).map(|r| format!("n = {}", r.n)).collect();
    s.all("logconv-ratios-above-one", "families::logconv_scan", anchor, "r1, r2, r3 > 1", scan.len(), not_above);

    let mismatch: Vec<String> = scan
        .iter()
        .filter(|r| **r != ratio_closed_forms(r.n))
        .map(|r| format!("n = {}", r.n))
        .collect();
    s.all(
        "logconv-closed-forms",
        "families::ratio_closed_forms",
        anchor,
        "ratios from f-vectors equal the displayed rational functions",
        scan.len(),
        mismatch,
    );

    let r8 = &scan[0];
    s.eq(
        "logconv-n8",
        "families::logconv_scan",
        anchor,
        "r1 = 28/15, r3 = 25/16",
        format!("r1 = {}, r3 = {}", rational_to_string(&r8.r1), rational_to_string(&r8.r3)),
    );
    let rises: Vec<String> = scan
        .windows(2)
        .filter(|w| w[1].r3 >= w[0].r3)
        .map(|w| format!("n = {}", w[1].n))
        .collect();
    s.all("logconv-r3-decreasing", "families::logconv_scan", anchor, "r3 strictly decreasing", scan.len() - 1, rises);

    let far = ratio_closed_forms(10_000).r3 - Rational::one();
    let bound = Rational::new(BigInt::one(), BigInt::from(100));
    s.push(
        "logconv-r3-limit",
        "families::ratio_closed_forms",
        "the ratios tend to 1",
        "r3(10^4) - 1 < 1/100".into(),
        format!("r3(10^4) - 1 = {}", rational_to_string(&far)),
        far.is_positive() && far < bound,
    );
    Ok(())
}

fn oracle_battery(s: &mut Suite, corpus: &[CorpusEntry]) -> Result<()> {
    let n = corpus.len();
    let mut euler = Vec::new();
    let mut gds = Vec::new();
    let mut simplicial = Vec::new();
    let mut dual = Vec::new();
    let mut reduce = Vec::new();
    let mut toric = Vec::new();
    let mut cd = Vec::new();
    let mut triangle = Vec::new();
    let mut roundtrip = Vec::new();

    for e in corpus {
        let d = e.lattice.dim();
        let f = e.lattice.f_vector();
        if !euler_check(&f) || !e.lattice.is_eulerian() {
            euler.push(e.name.clone());
        }
        if gds_residuals(&e.flags)?.iter().any(|(_, r)| !r.is_zero()) {
            gds.push(e.name.clone());
        }
        if e.simplicial {
            if let Some(s) = FlagSet::all(d).into_iter().find(|&s| e.flags.get(s) != Some(&simplicial_flag_number(&f, s))) {
                simplicial.push(format!("{} at f_{}", e.name, s.key()));
            }
        }
        let dual_flags = e.lattice.dual().flag_vector();
        if FlagSet::all(d).into_iter().any(|s| dual_flags.get(s.reverse(d)) != e.flags.get(s)) {
            dual.push(e.name.clone());
        }
        for s in FlagSet::all(d) {
            let value = FlagForm::term(d, s, Rational::one()).reduce().evaluate(&e.flags)?;
            if value != Rational::from_integer(e.flags.entry(s)?.clone()) {
                reduce.push(format!("{} at f_{}", e.name, s.key()));
                break;
            }
        }
        match toric_g(&e.lattice) {
            Ok(g) => {
                let g1_ok = d == 0 || g.g.get(1).is_none_or(|g1| *g1 == f.get(0) - BigInt::from(d + 1));
                if !(g.g[0].is_one() && g1_ok && g.is_nonnegative() && g.h_is_palindromic()) {
                    toric.push(format!("{} g = ({})", e.name, join(&g.g)));
                }
            }
            Err(err) => toric.push(format!("{}: {err}", e.name)),
        }
        match cd_index(&e.lattice) {
            Ok(psi) => {
                if psi.terms.values().any(|c| c.is_negative()) {
                    cd.push(format!("{}: {psi}", e.name));
                }
                if crate::CdIndex::parse(&psi.to_string()).ok().as_ref() != Some(&psi) {
                    roundtrip.push(e.name.clone());
                }
                for u in CdWord::all(d) {
                    let symbolic = cd_word_to_flag_form(&u, d)?.evaluate(&e.flags)?;
                    let numeric = psi.coeff(&u).cloned().unwrap_or_else(Rational::zero);
                    if symbolic != numeric {
                        triangle.push(format!("{} at {u}", e.name));
                        break;
                    }
                }
            }
            Err(err) => cd.push(format!("{}: {err}", e.name)),
        }
    }

    let op = "lattice::flag_vector";
    s.all("corpus-euler", "flagalg::euler_check", "Euler relation and Eulerian posets", "Euler relation holds", n, euler);
    s.all("corpus-gds-residuals", "flagalg::gds_residuals", "generalized Dehn-Sommerville equations", "all residuals zero", n, gds);
    let simplicial_count = corpus.iter().filter(|e| e.simplicial).count();
    s.all(
        "corpus-simplicial-flags",
        op,
        "flag numbers of simplicial polytopes from the f-vector",
        "closed form equals chain count",
        simplicial_count,
        simplicial,
    );
    s.all("corpus-dual-flags", "lattice::dual", "duality reverses index sets", "f_S(dual) = f_{reversed S}", n, dual);
    s.all(
        "corpus-reduce-index",
        "flagalg::reduce_index",
        "reduction to the sparse basis modulo GDS",
        "reduced form reproduces every entry",
        n,
        reduce,
    );
    s.all(
        "corpus-toric-g",
        "cdindex::toric_g",
        "toric g-vector: g_0 = 1, g_1 = f_0 - (d+1), nonnegative",
        "g_0 = 1, g_1 = f_0 - (d+1), g >= 0, h palindromic",
        n,
        toric,
    );
    s.all("corpus-cd-nonnegative", "cdindex::stanley_nonneg_check", "cd-index coefficients are nonnegative", "cd-index exists with coefficients >= 0", n, cd);
    s.all(
        "corpus-cd-consistency",
        "cdindex::cd_word_to_flag_form",
        "coefficient <u | Psi> as a linear form on flag vectors",
        "symbolic form value equals numeric coefficient",
        n,
        triangle,
    );
    s.all("corpus-cd-roundtrip", "cdindex::CdPolynomial::parse", "cd-index notation", "printed cd-index parses back", n, roundtrip);

    let mut bat = Vec::new();
    let mut count = 0;
    for e in corpus.iter().filter(|e| (5..=7).contains(&e.lattice.dim())) {
        count += 1;
        let b = battery::<Rational>(e.lattice.dim())?;
        for (name, value) in b.evaluate(&e.flags)? {
            if value.is_negative() {
                bat.push(format!("{} {name} = {}", e.name, rational_to_string(&value)));
            }
        }
    }
    s.all("corpus-battery", "forms::battery", "inequalities valid for all 5-, 6- and 7-polytopes", "every member >= 0", count, bat);
    Ok(())
}

fn theorem_one_on_data(s: &mut Suite, corpus: &[CorpusEntry], seed: u64) -> Result<()> {
    let five: Vec<&CorpusEntry> = corpus.iter().filter(|e| e.lattice.dim() == 5).collect();
    let bad: Vec<String> = five
        .iter()
        .filter(|e| !properties(&e.lattice.f_vector()).unimodal.holds)
        .map(|e| e.name.clone())
        .collect();
    s.all(
        "theorem1-corpus",
        "families::properties",
        "f-vectors of 5-polytopes are unimodal",
        "unimodal",
        five.len(),
        bad,
    );

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut bad = Vec::new();
    let mut drawn = 0;
    for _ in 0..200 {
        if let Some(v) = sample_feasible(5, &mut rng, 200)? {
            drawn += 1;
            let f = v.f_vector()?;
            if strict_dip(&f).is_some() || !properties(&f).unimodal.holds {
                bad.push(f.to_string());
            }
        }
    }
    s.all(
        "theorem1-random",
        "forms::sample_feasible",
        "the battery for d = 5 forces unimodality",
        "battery-feasible flag vector is unimodal",
        drawn,
        bad,
    );

    let six: Vec<&CorpusEntry> = corpus.iter().filter(|e| e.lattice.dim() == 6).collect();
    let mut bad = Vec::new();
    for e in &six {
        let f = e.lattice.f_vector();
        let r = |i: usize| Rational::from_integer(f.get(i).clone());
        let mid = Rational::new(BigInt::from(2), BigInt::from(3)) * r(1) + q(21);
        let low = q(2) * r(0) + q(21);
        if !(r(2) >= mid && mid >= low && low > r(0) && properties(&f).barany.holds) {
            bad.push(e.name.clone());
        }
    }
    s.all(
        "corollary-barany-6d",
        "forms::derived_f2_bound",
        "f_2 >= (2/3) f_1 + 21 >= 2f_0 + 21 > f_0 for 6-polytopes",
        "chain holds and (B) holds",
        six.len(),
        bad,
    );

    let bad: Vec<String> = corpus
        .iter()
        .filter(|e| !properties(&e.lattice.f_vector()).implication_chain_holds())
        .map(|e| e.name.clone())
        .collect();
    s.all("implication-chain", "families::properties", "(C) => (L) => (U) => (B)", "implications hold", corpus.len(), bad);
    Ok(())
}

fn connected_sums(s: &mut Suite) -> Result<()> {
    let anchor = "f-vector of a connected sum";
    let tetra = FVector::from_i64s(&[4, 6, 4]);
    s.result("connected-sum-tetra", "families::connected_sum_f", anchor, "(7, 12, 7)", connected_sum_f(&tetra, &tetra));

    let mut bad = Vec::new();
    for n in 8..=50 {
        let c = cyclic_f7(n)?;
        let composed = connected_sum_f(&c, &c.reverse())?;
        let closed = p7n(n)?;
        if composed != closed || !closed.is_palindromic() {
            bad.push(format!("n = {n}"));
        }
    }
    s.all(
        "p7n-composition",
        "families::p7n",
        "P_7^n = C_7(n) # C_7(n)^dual has a symmetric f-vector",
        "closed form equals connected sum and is palindromic",
        43,
        bad,
    );

    let bad: Vec<String> = (8..=200)
        .filter(|&n| p7n(n).map(|f| f.alternating_sum() != BigInt::from(2)).unwrap_or(true))
        .map(|n| format!("n = {n}"))
        .collect();
    s.all("p7n-euler", "flagalg::euler_check", anchor, "alternating sum = 2", 193, bad);
    Ok(())
}

fn summary_table(corpus: &[CorpusEntry]) -> Result<Vec<TableCell>> {
    let by_dim = |pred: &dyn Fn(usize) -> bool| -> Vec<(String, FVector)> {
        corpus
            .iter()
            .filter(|e| pred(e.lattice.dim()))
            .map(|e| (e.name.clone(), e.lattice.f_vector()))
            .collect()
    };
    let low = by_dim(&|d| d <= 4);
    let eight = build_simplex(8)?.f_vector();
    let mut cells = Vec::new();
    let mut cell = |property: &str, dims: &str, stated: &str, evidence: String, status: &str| {
        cells.push(TableCell {
            property: property.into(),
            dims: dims.into(),
            stated: stated.into(),
            evidence,
            status: status.into(),
        });
    };

    type Pick = fn(&crate::families::PropertyReport) -> bool;
    let props: [(&str, Pick); 4] = [
        ("C", |p| p.convex.holds),
        ("L", |p| p.log_convex.holds),
        ("U", |p| p.unimodal.holds),
        ("B", |p| p.barany.holds),
    ];
    for (name, pick) in props {
        let holds_on = |vs: &[(String, FVector)]| vs.iter().all(|(_, f)| pick(&properties(f)));
        let counter = |vs: &[(String, FVector)]| vs.iter().find(|(_, f)| !pick(&properties(f))).map(|(n, _)| n.clone());
        let ok = holds_on(&low);
        cell(
            name,
            "<=4",
            "holds",
            format!("holds on {} corpus lattices", low.len()),
            if ok { "consistent" } else { "inconsistent" },
        );
        for d in 5..=7 {
            let vs = by_dim(&|x| x == d);
            let stated = match (name, d) {
                ("C", _) => "fails",
                ("U", 5) | ("B", 5) | ("B", 6) => "holds",
                _ => "open",
            };
            let (evidence, status) = match (stated, counter(&vs)) {
                ("fails", Some(w)) => (format!("counterexample {w}"), "consistent"),
                ("fails", None) => ("no counterexample in corpus".to_string(), "inconsistent"),
                ("holds", None) => (format!("holds on {} corpus lattices", vs.len()), "consistent"),
                ("holds", Some(w)) => (format!("counterexample {w}"), "inconsistent"),
                (_, None) => (format!("open; holds on {} corpus lattices", vs.len()), "consistent"),
                (_, Some(w)) => (format!("open; fails on {w}"), "consistent"),
            };
            cell(name, &d.to_string(), stated, evidence, status);
        }
        match name {
            "C" => {
                let fails = !properties(&eight).convex.holds;
                cell(
                    name,
                    ">=8",
                    "fails",
                    format!("simplex-8 {eight}"),
                    if fails { "consistent" } else { "inconsistent" },
                );
            }
            "B" => cell(name, ">=8", "open", "not machine-checkable".into(), "not-checked"),
            _ => cell(name, ">=8", "fails", "known counterexamples are not in the corpus".into(), "not-checked"),
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simplicial_formula_on_simplex() {
        let l = build_simplex(5).unwrap();
        let f = l.f_vector();
        for s in FlagSet::all(5) {
            assert_eq!(simplicial_flag_number(&f, s), l.flag_number(s));
        }
    }

    #[test]
    fn corpus_respects_limit() {
        let small = corpus(4, 50).unwrap();
        assert!(small.iter().all(|e| e.lattice.len() <= 50));
        assert!(small.iter().any(|e| e.name == "simplex-3"));
    }
}
