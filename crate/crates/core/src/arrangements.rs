//! Affine line arrangements in the plane: intersection combinatorics,
//! Orlik–Solomon algebras, Alexander polynomials and Hodge numbers of the
//! first Alexander module.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{cyclotomic, cyclotomic_factor, LaurentPoly};
use crate::localsys::{alexander_homology, presentation_complex, Epimorphism, GroupPresentation};
use crate::rational::{format_rational, int, Rational};
use crate::thicken::{BifilteredCdga, CdgaSpec, Coeff};

/// The line `a x + b y = c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl Line {
    pub fn new(a: Rational, b: Rational, c: Rational) -> Self {
        Line { a, b, c }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        Line { a: int(a), b: int(b), c: int(c) }
    }

    /// Scaled so the first nonzero of `(a, b)` is 1.
    fn normalized(&self) -> (Rational, Rational, Rational) {
        let lead = if self.a.is_zero() { &self.b } else { &self.a };
        (&self.a / lead, &self.b / lead, &self.c / lead)
    }

    fn direction(&self) -> (Rational, Rational) {
        let (a, b, _) = self.normalized();
        (a, b)
    }
}

/// JSON form `{lines: [[a, b, c], ...]}` with integer or `"num/den"` entries.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementSpec {
    pub lines: Vec<[Coeff; 3]>,
}

impl ArrangementSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn from_lines(lines: &[Line]) -> Self {
        ArrangementSpec {
            lines: lines
                .iter()
                .map(|l| [Coeff::from_rational(&l.a), Coeff::from_rational(&l.b), Coeff::from_rational(&l.c)])
                .collect(),
        }
    }

    pub fn arrangement(&self) -> Result<Arrangement> {
        let lines = self
            .lines
            .iter()
            .map(|[a, b, c]| Ok(Line::new(a.value()?, b.value()?, c.value()?)))
            .collect::<Result<Vec<_>>>()?;
        Arrangement::new(lines)
    }
}

/// A reduced arrangement of distinct lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    lines: Vec<Line>,
}

impl Arrangement {
    pub fn new(lines: Vec<Line>) -> Result<Self> {
        if lines.is_empty() {
            return Err(Error::Invalid("an arrangement needs at least one line".into()));
        }
        for (i, l) in lines.iter().enumerate() {
            if l.a.is_zero() && l.b.is_zero() {
                return Err(Error::Invalid(format!("line {} has a = b = 0", i + 1)));
            }
        }
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if lines[i].normalized() == lines[j].normalized() {
                    return Err(Error::DuplicateLine(i + 1, j + 1));
                }
            }
        }
        Ok(Arrangement { lines })
    }

    pub fn lines(&self) -> &[Line] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// `d` lines through the origin at slopes `0, 1, ..., d-1` and the
    /// vertical.
    pub fn central(d: usize) -> Result<Self> {
        let lines = (0..d).map(|k| if k == 0 { Line::from_ints(1, 0, 0) } else { Line::from_ints(k as i64 - 1, -1, 0) });
        Self::new(lines.collect())
    }

    /// `x (x - 1) y (y - 1) (x + y - 1)`.
    pub fn deleted() -> Self {
        Self::new(deleted_lines()).expect("fixture lines are distinct")
    }
}

fn deleted_lines() -> Vec<Line> {
    vec![Line::from_ints(1, 0, 0), Line::from_ints(1, 0, 1), Line::from_ints(0, 1, 0), Line::from_ints(0, 1, 1), Line::from_ints(1, 1, 1)]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionPoint {
    pub x: String,
    pub y: String,
    pub multiplicity: usize,
    /// 0-based indices of the incident lines, increasing.
    pub lines: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntersectionData {
    pub points: Vec<IntersectionPoint>,
    pub parallel_classes: Vec<Vec<usize>>,
    pub rank: usize,
}

fn choose2(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

impl IntersectionData {
    /// `Σ C(mult, 2) = C(d, 2) - Σ C(|class|, 2)`.
    pub fn pair_count_consistent(&self, d: usize) -> bool {
        let lhs: usize = self.points.iter().map(|p| choose2(p.multiplicity)).sum();
        let par: usize = self.parallel_classes.iter().map(|c| choose2(c.len())).sum();
        lhs == choose2(d) - par
    }

    pub fn max_multiplicity(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity).max().unwrap_or(0)
    }

    /// `b_2` of the complement: `Σ (mult - 1)` over points.
    pub fn b2(&self) -> usize {
        self.points.iter().map(|p| p.multiplicity - 1).sum()
    }
}

pub fn intersection_data(arr: &Arrangement) -> IntersectionData {
    let lines = arr.lines();
    let mut points: BTreeMap<(Rational, Rational), BTreeSet<usize>> = BTreeMap::new();
    let mut classes: BTreeMap<(Rational, Rational), Vec<usize>> = BTreeMap::new();
    for (i, l) in lines.iter().enumerate() {
        classes.entry(l.direction()).or_default().push(i);
        for (j, k) in lines.iter().enumerate().skip(i + 1) {
            let det = &l.a * &k.b - &k.a * &l.b;
            if det.is_zero() {
                continue;
            }
            let x = (&l.c * &k.b - &k.c * &l.b) / &det;
            let y = (&l.a * &k.c - &k.a * &l.c) / &det;
            points.entry((x, y)).or_default().extend([i, j]);
        }
    }
    let mut parallel_classes: Vec<Vec<usize>> = classes.into_values().collect();
    parallel_classes.sort();
    let rank = if parallel_classes.len() > 1 { 2 } else { 1 };
    let mut points: Vec<IntersectionPoint> = points
        .into_iter()
        .map(|((x, y), ls)| IntersectionPoint {
            x: format_rational(&x),
            y: format_rational(&y),
            multiplicity: ls.len(),
            lines: ls.into_iter().collect(),
        })
        .collect();
    points.sort_by(|p, q| p.lines.cmp(&q.lines));
    IntersectionData { points, parallel_classes, rank }
}

/// The Orlik–Solomon algebra with `w = f = degree` and zero differential.
///
/// Degree 2 has the no-broken-circuit basis `e_i e_j`, one per pair of lines
/// through a point with `i` the smallest line there.
pub fn os_algebra(arr: &Arrangement) -> Result<BifilteredCdga> {
    let data = intersection_data(arr);
    if data.rank < 2 {
        return Err(Error::NotEssential { rank: data.rank });
    }
    let d = arr.len();
    let mut deg2: Vec<(usize, usize)> = Vec::new();
    for p in &data.points {
        for &j in &p.lines[1..] {
            deg2.push((p.lines[0], j));
        }
    }
    let index2: BTreeMap<(usize, usize), usize> = deg2.iter().enumerate().map(|(k, &pr)| (pr, 1 + d + k)).collect();
    let mut products = Vec::new();
    for p in &data.points {
        let lo = p.lines[0];
        for (x, &a) in p.lines.iter().enumerate() {
            for &b in &p.lines[x + 1..] {
                if a == lo {
                    products.push((1 + a, 1 + b, index2[&(lo, b)], Coeff::Int(1)));
                } else {
                    // e_a e_b = e_lo e_b - e_lo e_a
                    products.push((1 + a, 1 + b, index2[&(lo, b)], Coeff::Int(1)));
                    products.push((1 + a, 1 + b, index2[&(lo, a)], Coeff::Int(-1)));
                }
            }
        }
    }
    let basis = vec![
        vec!["1".to_string()],
        (1..=d).map(|i| format!("e{i}")).collect(),
        deg2.iter().map(|(i, j)| format!("e{}e{}", i + 1, j + 1)).collect(),
    ];
    let degrees: Vec<i64> = std::iter::once(0).chain(std::iter::repeat_n(1, d)).chain(std::iter::repeat_n(2, deg2.len())).collect();
    BifilteredCdga::from_spec(&CdgaSpec {
        basis,
        products,
        differential: vec![],
        weights: degrees.clone(),
        hodge: Some(degrees),
    })
}

/// `(t^d - 1)^{d-2} (t - 1)`.
pub fn central_delta(d: usize) -> Result<LaurentPoly> {
    if d < 2 {
        return Err(Error::Invalid("central arrangements need d >= 2".into()));
    }
    let t1 = LaurentPoly::t_pow_minus_one(1);
    Ok((LaurentPoly::t_pow_minus_one(d as u64).pow(d as u32 - 2) * t1).normalize())
}

/// `Π (t - α β)` over `d`-th roots of unity `α, β ≠ 1`, assembled from the
/// number of pairs `(a, b)` in `1..d` with `a + b ≡ k (mod d)`.
pub fn central_delta_by_pair_count(d: usize) -> Result<LaurentPoly> {
    if d < 2 {
        return Err(Error::Invalid("central arrangements need d >= 2".into()));
    }
    let mut count = vec![0u32; d];
    for a in 1..d {
        for b in 1..d {
            count[(a + b) % d] += 1;
        }
    }
    let mut out = LaurentPoly::one();
    for e in 1..=d {
        if !d.is_multiple_of(e) {
            continue;
        }
        let orbit: Vec<u32> = (0..d).filter(|&k| d / num_integer::gcd(k, d) == e).map(|k| count[k]).collect();
        if orbit.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::OracleMismatch(format!("pair counts are not Galois-stable for order {e}")));
        }
        out = out * cyclotomic(e as u64).pow(orbit[0]);
    }
    Ok(out.normalize())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PurityReport {
    pub applies: bool,
    /// For each `m > 2` up to the largest multiplicity, a line without
    /// points of multiplicity divisible by `m` (0-based).
    pub witness: BTreeMap<usize, usize>,
    pub reason: Option<String>,
}

pub fn purity_criterion(arr: &Arrangement) -> Result<PurityReport> {
    let data = intersection_data(arr);
    if data.rank < 2 {
        return Err(Error::NotEssential { rank: data.rank });
    }
    let b: Vec<usize> = data.parallel_classes.iter().filter(|c| c.len() == 1).map(|c| c[0]).collect();
    if b.is_empty() {
        return Ok(PurityReport { applies: false, witness: BTreeMap::new(), reason: Some("every line has a parallel".into()) });
    }
    let mut witness = BTreeMap::new();
    for m in 3..=data.max_multiplicity() {
        let good = b.iter().find(|&&l| data.points.iter().all(|p| !p.lines.contains(&l) || p.multiplicity % m != 0));
        match good {
            Some(&l) => {
                witness.insert(m, l);
            }
            None => {
                return Ok(PurityReport {
                    applies: false,
                    witness,
                    reason: Some(format!("every non-parallel line meets a point of multiplicity divisible by {m}")),
                })
            }
        }
    }
    Ok(PurityReport { applies: true, witness, reason: None })
}

/// Where a `Δ_1` came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DeltaProvenance {
    ClosedForm,
    PresentationPipeline,
    UserSupplied,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeReport {
    pub d: usize,
    #[serde(serialize_with = "poly_string")]
    pub delta1: LaurentPoly,
    pub b1_torsion: usize,
    pub h11: usize,
    pub h10: usize,
    pub h01: usize,
    /// Multiplicity of each `Φ_n` in `Δ_1`.
    pub spectral: BTreeMap<u64, u32>,
    pub pure: bool,
    pub provenance: DeltaProvenance,
}

fn poly_string<S: serde::Serializer>(p: &LaurentPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

pub fn hodge_report(d: usize, delta1: &LaurentPoly, provenance: DeltaProvenance) -> Result<HodgeReport> {
    let f = cyclotomic_factor(delta1)?;
    if !f.is_cyclotomic() {
        return Err(Error::NotRootsOfUnity(f.remainder.to_string()));
    }
    let ones = f.multiplicity(1) as usize;
    if d == 0 || ones != d - 1 {
        return Err(Error::InconsistentFixedPart { found: ones, expected: d.saturating_sub(1) });
    }
    let delta1 = delta1.normalize();
    let deg = delta1.degree();
    let rest = deg - ones;
    if rest % 2 == 1 {
        return Err(Error::OddNonUnityPart(rest));
    }
    Ok(HodgeReport {
        d,
        b1_torsion: deg,
        h11: ones,
        h10: rest / 2,
        h01: rest / 2,
        spectral: f.factors.iter().copied().collect(),
        pure: rest == 0,
        provenance,
        delta1,
    })
}

fn commutator(a: i64, b: i64) -> Vec<i64> {
    vec![a, b, -a, -b]
}

/// `⟨x_1, ..., x_{d-1}, z | [x_i, z]⟩` with `z ↦ d`.
pub fn central_presentation(d: usize) -> (GroupPresentation, Epimorphism) {
    let z = d as i64;
    let relators = (1..z).map(|i| commutator(i, z)).collect();
    let mut images = vec![1; d - 1];
    images.push(z);
    (GroupPresentation { generators: d, relators }, Epimorphism { images })
}

/// Meridians `u, v, a, b, c` of `x = 0, x = 1, y = 0, y = 1, x + y = 1`.
///
/// Projection to `x` fibers the complement over `C - {0, 1}` with fiber `C`
/// minus three points; `u` and `v` act on `a, b, c` by full twists of the
/// pairs `(c, b)` and `(a, c)`.
pub fn deleted_presentation() -> (GroupPresentation, Epimorphism) {
    let (u, v, a, b, c) = (1, 2, 3, 4, 5);
    let relators = vec![
        vec![-u, a, u, -a],
        vec![-u, b, u, c, -b, -c],
        vec![-u, c, u, c, b, -c, -b, -c],
        vec![-v, b, v, -b],
        vec![-v, a, v, a, c, -a, -c, -a],
        vec![-v, c, v, a, -c, -a],
    ];
    (GroupPresentation { generators: 5, relators }, Epimorphism { images: vec![1; 5] })
}

fn is_generic(data: &IntersectionData) -> bool {
    data.parallel_classes.iter().all(|c| c.len() == 1) && data.points.iter().all(|p| p.multiplicity == 2)
}

fn is_central(data: &IntersectionData, d: usize) -> bool {
    data.points.len() == 1 && data.points[0].multiplicity == d
}

/// A presentation of `π_1` of the complement with the total linking map,
/// for central arrangements, generic arrangements of at most four lines, and
/// the deleted arrangement.
pub fn builtin_presentation(arr: &Arrangement) -> Result<(GroupPresentation, Epimorphism)> {
    let data = intersection_data(arr);
    let d = arr.len();
    if data.rank < 2 {
        return Err(Error::NotEssential { rank: data.rank });
    }
    if is_central(&data, d) {
        return Ok(central_presentation(d));
    }
    if is_generic(&data) && d <= 4 {
        let relators = (1..=d as i64).flat_map(|i| (i + 1..=d as i64).map(move |j| commutator(i, j))).collect();
        return Ok((GroupPresentation { generators: d, relators }, Epimorphism { images: vec![1; d] }));
    }
    let norm: BTreeSet<_> = arr.lines().iter().map(Line::normalized).collect();
    let fixture: BTreeSet<_> = deleted_lines().iter().map(Line::normalized).collect();
    if norm == fixture {
        // meridians in the fixture's line order; the linking map is the same
        return Ok(deleted_presentation());
    }
    Err(Error::NoPresentation(format!("{d} lines with {} intersection points", data.points.len())))
}

/// `Δ_1` as the order of the torsion of `H_1(U; L)` from a built-in
/// presentation.
pub fn delta_from_pipeline(arr: &Arrangement) -> Result<LaurentPoly> {
    let (p, e) = builtin_presentation(arr)?;
    Ok(alexander_homology(&presentation_complex(&p, &e)?, 1)?.order().normalize())
}

/// `Δ_1` without a presentation: the central formula, or `(t-1)^{d-1}` when
/// the purity criterion applies.
pub fn delta_closed_form(arr: &Arrangement) -> Result<LaurentPoly> {
    let data = intersection_data(arr);
    let d = arr.len();
    if data.rank < 2 {
        return Err(Error::NotEssential { rank: data.rank });
    }
    if is_central(&data, d) {
        return central_delta(d);
    }
    if purity_criterion(arr)?.applies {
        return Ok(LaurentPoly::t_pow_minus_one(1).pow(d as u32 - 1));
    }
    Err(Error::NoPresentation("no closed form for Δ_1 of this arrangement".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thicken::{torsion_of_thickening, Direction};
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn betti(a: &BifilteredCdga) -> Vec<usize> {
        (0..=a.top_degree()).map(|k| a.dim_in(k)).collect()
    }

    #[test]
    fn intersections() {
        let two = Arrangement::new(vec![Line::from_ints(1, 0, 0), Line::from_ints(0, 1, 0)]).unwrap();
        let data = intersection_data(&two);
        assert_eq!((data.points.len(), data.points[0].multiplicity, data.rank), (1, 2, 2));

        let data = intersection_data(&Arrangement::deleted());
        let mults: Vec<(String, String, usize)> = data.points.iter().map(|p| (p.x.clone(), p.y.clone(), p.multiplicity)).collect();
        assert_eq!(mults.len(), 4);
        assert!(mults.contains(&("0".into(), "1".into(), 3)));
        assert!(mults.contains(&("1".into(), "0".into(), 3)));
        assert!(mults.contains(&("0".into(), "0".into(), 2)));
        assert!(mults.contains(&("1".into(), "1".into(), 2)));
        assert_eq!(data.parallel_classes, vec![vec![0, 1], vec![2, 3], vec![4]]);
        assert!(data.pair_count_consistent(5));

        let par = Arrangement::new(vec![Line::from_ints(1, 0, 0), Line::from_ints(1, 0, 1)]).unwrap();
        let data = intersection_data(&par);
        assert_eq!((data.points.len(), data.rank), (0, 1));
        assert_eq!(
            Arrangement::new(vec![Line::from_ints(1, 1, 1), Line::from_ints(2, 2, 2)]).unwrap_err(),
            Error::DuplicateLine(1, 2)
        );
    }

    #[test]
    fn os_betti_numbers() {
        assert_eq!(betti(&os_algebra(&Arrangement::central(3).unwrap()).unwrap()), vec![1, 3, 2]);
        let triangle =
            Arrangement::new(vec![Line::from_ints(1, 0, 0), Line::from_ints(0, 1, 0), Line::from_ints(1, 1, 1)]).unwrap();
        assert_eq!(betti(&os_algebra(&triangle).unwrap()), vec![1, 3, 3]);
        assert_eq!(betti(&os_algebra(&Arrangement::deleted()).unwrap()), vec![1, 5, 6]);
        let par = Arrangement::new(vec![Line::from_ints(1, 0, 0), Line::from_ints(1, 0, 1)]).unwrap();
        assert_eq!(os_algebra(&par).unwrap_err(), Error::NotEssential { rank: 1 });
    }

    #[test]
    fn central_formulas() {
        assert_eq!(central_delta(3).unwrap(), p("t^4 - t^3 - t + 1"));
        assert_eq!(central_delta(2).unwrap(), p("t - 1"));
        assert_eq!(central_delta(5).unwrap(), (p("t^5 - 1").pow(3) * p("t - 1")).normalize());
        for d in 2..=12 {
            assert_eq!(central_delta(d).unwrap(), central_delta_by_pair_count(d).unwrap(), "d = {d}");
        }
    }

    #[test]
    fn purity() {
        let triangle =
            Arrangement::new(vec![Line::from_ints(1, 0, 0), Line::from_ints(0, 1, 0), Line::from_ints(1, 1, 1)]).unwrap();
        assert!(purity_criterion(&triangle).unwrap().applies);
        assert!(!purity_criterion(&Arrangement::deleted()).unwrap().applies);
        let par = Arrangement::new(vec![Line::from_ints(1, 0, 0), Line::from_ints(1, 0, 1)]).unwrap();
        assert_eq!(purity_criterion(&par).unwrap_err(), Error::NotEssential { rank: 1 });
    }

    #[test]
    fn hodge_numbers() {
        assert!(matches!(
            hodge_report(2, &(p("t - 1") * p("t - 2")), DeltaProvenance::UserSupplied),
            Err(Error::NotRootsOfUnity(_))
        ));
        let delta = (p("t - 1").pow(4) * p("t^2 + t + 1")).normalize();
        let r = hodge_report(5, &delta, DeltaProvenance::UserSupplied).unwrap();
        assert_eq!((r.h11, r.h10, r.h01, r.pure), (4, 1, 1, false));
        let r = hodge_report(3, &central_delta(3).unwrap(), DeltaProvenance::ClosedForm).unwrap();
        assert_eq!((r.h11, r.h10, r.h01), (2, 1, 1));
        let r = hodge_report(3, &p("t - 1").pow(2), DeltaProvenance::ClosedForm).unwrap();
        assert_eq!((r.h11, r.h10, r.pure), (2, 0, true));
        assert_eq!(
            hodge_report(4, &p("t - 1").pow(2), DeltaProvenance::UserSupplied).unwrap_err(),
            Error::InconsistentFixedPart { found: 2, expected: 3 }
        );
        assert_eq!(
            hodge_report(2, &(p("t - 1") * p("t + 1")), DeltaProvenance::UserSupplied).unwrap_err(),
            Error::OddNonUnityPart(1)
        );
    }

    #[test]
    fn deleted_pipeline() {
        let delta = delta_from_pipeline(&Arrangement::deleted()).unwrap();
        assert_eq!(delta, (p("t - 1").pow(4) * p("t^2 + t + 1")).normalize());
        assert!(matches!(delta_closed_form(&Arrangement::deleted()), Err(Error::NoPresentation(_))));
    }

    #[test]
    fn central_pipeline_and_thickening() {
        for d in 2..=5 {
            let arr = Arrangement::central(d).unwrap();
            assert_eq!(delta_from_pipeline(&arr).unwrap(), central_delta(d).unwrap());
            let os = os_algebra(&arr).unwrap();
            let tors = torsion_of_thickening(&os, &Direction::sum_of_basis(&os), 2).unwrap();
            assert_eq!(tors.torsion_dim(), d - 1);
        }
    }

    #[test]
    fn generic_pipeline() {
        let arr = Arrangement::new(vec![
            Line::from_ints(1, 0, 0),
            Line::from_ints(0, 1, 0),
            Line::from_ints(1, 1, 1),
            Line::from_ints(1, -1, 3),
        ])
        .unwrap();
        assert_eq!(delta_from_pipeline(&arr).unwrap(), p("t - 1").pow(3));
        assert_eq!(delta_closed_form(&arr).unwrap(), p("t - 1").pow(3));
    }

    proptest! {
        #[test]
        fn os_b2_matches_point_count(lines in proptest::collection::vec((-2i64..=2, -2i64..=2, -2i64..=2), 2..6)) {
            let lines: Vec<Line> = lines.into_iter().map(|(a, b, c)| Line::from_ints(a, b, c)).collect();
            prop_assume!(lines.iter().all(|l| !(l.a.is_zero() && l.b.is_zero())));
            let Ok(arr) = Arrangement::new(lines) else { return Ok(()) };
            let data = intersection_data(&arr);
            prop_assert!(data.pair_count_consistent(arr.len()));
            if data.rank == 2 {
                let os = os_algebra(&arr).unwrap();
                prop_assert_eq!(os.dim_in(2), data.b2());
            }
        }
    }
}
