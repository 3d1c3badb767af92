use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::TruncatedPoly;
use crate::qmat::{QMatrix, Subspace};
use crate::rational::{factorial, int, parse_rational, Rational};

use super::cdga::BifilteredCdga;

/// A degree-1 element `η`, as coordinates in the degree-1 basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    coeffs: Vec<Rational>,
}

impl Direction {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        Direction { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Direction { coeffs: coeffs.iter().map(|&c| int(c)).collect() }
    }

    /// Parses a comma-separated coefficient list such as `1,0,-1/2`.
    pub fn parse(s: &str) -> Result<Self> {
        let coeffs = s.split(',').map(|c| parse_rational(c.trim())).collect::<Result<Vec<_>>>()?;
        Ok(Direction { coeffs })
    }

    /// The sum of all degree-1 basis elements.
    pub fn sum_of_basis(a: &BifilteredCdga) -> Self {
        Direction { coeffs: vec![Rational::one(); a.dim_in(1)] }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn support(&self, a: &BifilteredCdga) -> impl Iterator<Item = usize> + '_ {
        let off = a.offset(1);
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, _)| off + i)
    }

    /// Checks `dη = 0`, `η ∈ W_1` and, when `a` carries Hodge indices,
    /// `η ∈ F^1`.
    pub fn validate(&self, a: &BifilteredCdga) -> Result<()> {
        if self.coeffs.len() != a.dim_in(1) {
            return Err(Error::Invalid(format!(
                "direction has {} coefficients but degree 1 has dimension {}",
                self.coeffs.len(),
                a.dim_in(1)
            )));
        }
        if !a.d_matrix(1).apply(&self.coeffs).iter().all(Zero::is_zero) {
            return Err(Error::NotClosed);
        }
        if self.support(a).any(|b| a.weight(b) > 1) {
            return Err(Error::NotW1);
        }
        if a.has_hodge() && self.support(a).any(|b| a.hodge(b).unwrap() < 1) {
            return Err(Error::NotF1);
        }
        Ok(())
    }
}

/// `A ⊗ Q[s]/(s^m)` with differential `d_η(ω ⊗ φ) = dω ⊗ φ + (η ∧ ω) ⊗ sφ`.
///
/// In degree `p` the basis element `b ⊗ s^j` has index `j * dim A^p + b`.
#[derive(Clone, Debug)]
pub struct ThickenedComplex {
    base: BifilteredCdga,
    eta: Direction,
    m: usize,
    differentials: Vec<QMatrix>,
    weight_index: Vec<Vec<i64>>,
    hodge_index: Option<Vec<Vec<i64>>>,
}

/// `s`-shift blocks: `kron(S^k, block)` where `S` sends `s^j` to `s^{j+1}`
/// and the block is `rows x cols`.
fn shifted_blocks(m_out: usize, m_in: usize, block: &QMatrix, shift: impl Fn(usize) -> Option<usize>) -> QMatrix {
    let (r, c) = (block.rows(), block.cols());
    let mut out = QMatrix::zeros(r * m_out, c * m_in);
    for j in 0..m_in {
        if let Some(k) = shift(j).filter(|&k| k < m_out) {
            for x in 0..r {
                for y in 0..c {
                    out[(k * r + x, j * c + y)] = block[(x, y)].clone();
                }
            }
        }
    }
    out
}

/// Multiplication by the truncated series `f(s)` on `A^p ⊗ R_m`, with `A^p`
/// of dimension `n`.
pub(crate) fn series_action(n: usize, f: &TruncatedPoly) -> QMatrix {
    let m = f.m();
    let mut out = QMatrix::zeros(n * m, n * m);
    for j in 0..m {
        for k in 0..m - j {
            let c = f.coeff(k);
            if c.is_zero() {
                continue;
            }
            for b in 0..n {
                out[((j + k) * n + b, j * n + b)] = c.clone();
            }
        }
    }
    out
}

/// `block ⊗ id` on `A^p ⊗ R_m`.
pub(crate) fn repeat_blocks(m: usize, block: &QMatrix) -> QMatrix {
    shifted_blocks(m, m, block, Some)
}

/// `ψ_{ij}: A^p ⊗ R_i -> A^p ⊗ R_{i+j}`, multiplication by `s^j`.
pub fn psi_matrix(n: usize, i: usize, j: usize) -> QMatrix {
    shifted_blocks(i + j, i, &QMatrix::identity(n), |k| Some(k + j))
}

/// `φ: A^p ⊗ R_{from} -> A^p ⊗ R_{to}`, truncation of coefficients.
pub fn phi_matrix(n: usize, from: usize, to: usize) -> QMatrix {
    shifted_blocks(to, from, &QMatrix::identity(n), Some)
}

pub fn thicken_cdga(a: &BifilteredCdga, eta: &Direction, m: usize) -> Result<ThickenedComplex> {
    eta.validate(a)?;
    if m == 0 {
        return Err(Error::Invalid("thickening order m must be positive".into()));
    }
    let top = a.top_degree();
    let differentials: Vec<QMatrix> = (0..=top)
        .map(|p| {
            let d = shifted_blocks(m, m, &a.d_matrix(p), Some);
            let wedge = a.left_mult_matrix(eta.coeffs(), 1, p);
            d.add(&shifted_blocks(m, m, &wedge, |j| Some(j + 1)))
        })
        .collect();
    for p in 1..=top {
        if !differentials[p].mul(&differentials[p - 1]).is_zero() {
            return Err(Error::Invalid("thickened differential does not square to zero".into()));
        }
    }
    let assemble = |f: &dyn Fn(usize, usize) -> i64| -> Vec<Vec<i64>> {
        (0..=top).map(|p| (0..m).flat_map(|j| a.range(p).map(move |b| (b, j))).map(|(b, j)| f(b, j)).collect()).collect()
    };
    let weight_index = assemble(&|b, j| a.weight(b) - 2 * j as i64);
    let hodge_index = a.has_hodge().then(|| assemble(&|b, j| a.hodge(b).unwrap() - j as i64));
    Ok(ThickenedComplex { base: a.clone(), eta: eta.clone(), m, differentials, weight_index, hodge_index })
}

impl ThickenedComplex {
    pub fn base(&self) -> &BifilteredCdga {
        &self.base
    }

    pub fn eta(&self) -> &Direction {
        &self.eta
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn top_degree(&self) -> usize {
        self.base.top_degree()
    }

    pub fn dim(&self, p: usize) -> usize {
        self.base.dim_in(p) * self.m
    }

    /// Index of `b ⊗ s^j` where `b` is the local index in degree `p`.
    pub fn index(&self, p: usize, b: usize, j: usize) -> usize {
        j * self.base.dim_in(p) + b
    }

    /// `d_η` from degree `p` to `p + 1`.
    pub fn differential(&self, p: usize) -> QMatrix {
        match self.differentials.get(p) {
            Some(d) => d.clone(),
            None => QMatrix::zeros(self.dim(p + 1), self.dim(p)),
        }
    }

    /// `d_η` into degree `p`.
    pub fn differential_into(&self, p: usize) -> QMatrix {
        if p == 0 {
            QMatrix::zeros(self.dim(0), 0)
        } else {
            self.differential(p - 1)
        }
    }

    pub fn cohomology_dim(&self, p: usize) -> usize {
        self.dim(p) - self.differential(p).rank() - self.differential_into(p).rank()
    }

    pub fn d_squared_is_zero(&self) -> bool {
        (1..self.differentials.len()).all(|p| self.differentials[p].mul(&self.differentials[p - 1]).is_zero())
    }

    /// Weight `w(b) - 2j` of each basis element `b ⊗ s^j` in degree `p`.
    pub fn weight_index(&self, p: usize) -> &[i64] {
        self.weight_index.get(p).map_or(&[], Vec::as_slice)
    }

    /// Hodge index `f(b) - j` of each basis element in degree `p`.
    pub fn hodge_index(&self, p: usize) -> Option<&[i64]> {
        self.hodge_index.as_ref().map(|h| h.get(p).map_or(&[][..], Vec::as_slice))
    }

    /// Overwrites the stored Hodge indices of one degree; for negative
    /// controls of the filtration checks.
    pub fn set_hodge_index_unchecked(&mut self, p: usize, index: Vec<i64>) {
        if let Some(h) = &mut self.hodge_index {
            h[p] = index;
        }
    }

    /// `W_n` in degree `p`.
    pub fn weight_filtration(&self, p: usize, n: i64) -> Subspace {
        let w = self.weight_index(p);
        Subspace::coordinate(w.len(), (0..w.len()).filter(|&k| w[k] <= n))
    }

    /// `F^q` in degree `p`; `None` without Hodge indices.
    pub fn hodge_filtration(&self, p: usize, q: i64) -> Option<Subspace> {
        self.hodge_index(p).map(|f| Subspace::coordinate(f.len(), (0..f.len()).filter(|&k| f[k] >= q)))
    }

    /// The range of weights occurring in any degree, widened by one.
    pub fn weight_range(&self) -> std::ops::RangeInclusive<i64> {
        let all = self.weight_index.iter().flatten();
        let lo = all.clone().min().copied().unwrap_or(0);
        let hi = all.max().copied().unwrap_or(0);
        lo - 1..=hi + 1
    }

    pub fn hodge_range(&self) -> Option<std::ops::RangeInclusive<i64>> {
        let h = self.hodge_index.as_ref()?;
        let lo = h.iter().flatten().min().copied().unwrap_or(0);
        let hi = h.iter().flatten().max().copied().unwrap_or(0);
        Some(lo - 1..=hi + 1)
    }

    /// `t` acting as `exp(s)` in degree `p`.
    pub fn t_action(&self, p: usize) -> QMatrix {
        series_action(self.base.dim_in(p), &TruncatedPoly::exp_of_multiple(self.m, &Rational::one()))
    }

    /// Multiplication by `s` in degree `p`.
    pub fn s_action(&self, p: usize) -> QMatrix {
        series_action(self.base.dim_in(p), &TruncatedPoly::s_pow(self.m, 1))
    }
}

/// `exp(a ⊗ s) ∧ -` as a map `A(η₁, m) -> A(η₂, m)`, one matrix per degree.
#[derive(Clone, Debug)]
pub struct GaugeMap {
    pub forward: Vec<QMatrix>,
    pub inverse: Vec<QMatrix>,
}

fn exp_wedge(a: &BifilteredCdga, x: &[Rational], m: usize) -> Vec<QMatrix> {
    // powers x^k / k! in degree 0
    let mut powers = Vec::with_capacity(m);
    let mut pow = a.global(0, &vec![Rational::zero(); a.dim_in(0)]);
    pow[0] = Rational::one();
    let gx = a.global(0, x);
    for k in 0..m {
        let local: Vec<Rational> = a.range(0).map(|i| &pow[i] / factorial(k as u64)).collect();
        powers.push(local);
        pow = a.multiply(&pow, &gx);
    }
    (0..=a.top_degree())
        .map(|p| {
            let mut out = QMatrix::zeros(a.dim_in(p) * m, a.dim_in(p) * m);
            for (k, xk) in powers.iter().enumerate() {
                let block = a.left_mult_matrix(xk, 0, p);
                out = out.add(&shifted_blocks(m, m, &block, |j| Some(j + k)));
            }
            out
        })
        .collect()
}

/// The gauge map for a witness `a ∈ A^0` with `da = η₁ - η₂`.
pub fn gauge_isomorphism(
    a: &BifilteredCdga,
    eta1: &Direction,
    eta2: &Direction,
    witness: &[Rational],
    m: usize,
) -> Result<GaugeMap> {
    if witness.len() != a.dim_in(0) || eta1.coeffs().len() != a.dim_in(1) || eta2.coeffs().len() != a.dim_in(1) {
        return Err(Error::Invalid("witness or direction has the wrong length".into()));
    }
    let da = a.d_matrix(0).apply(witness);
    let diff: Vec<Rational> = eta1.coeffs().iter().zip(eta2.coeffs()).map(|(x, y)| x - y).collect();
    if da != diff {
        return Err(Error::WitnessMismatch);
    }
    let neg: Vec<Rational> = witness.iter().map(|c| -c).collect();
    Ok(GaugeMap { forward: exp_wedge(a, witness, m), inverse: exp_wedge(a, &neg, m) })
}

/// A degree-preserving linear map between CDGAs, in global coordinates.
#[derive(Clone, Debug)]
pub struct CdgaMorphism {
    pub matrix: QMatrix,
}

impl CdgaMorphism {
    pub fn identity(a: &BifilteredCdga) -> Self {
        CdgaMorphism { matrix: QMatrix::identity(a.dim()) }
    }

    /// The component `A^p -> B^p`.
    pub fn block(&self, a: &BifilteredCdga, b: &BifilteredCdga, p: usize) -> QMatrix {
        let rows: Vec<usize> = b.range(p).collect();
        let cols: Vec<usize> = a.range(p).collect();
        self.matrix.select(&rows, &cols)
    }

    /// Checks degrees, unit, `F d = d F` and multiplicativity.
    pub fn validate(&self, a: &BifilteredCdga, b: &BifilteredCdga) -> Result<()> {
        let f = &self.matrix;
        if f.rows() != b.dim() || f.cols() != a.dim() {
            return Err(Error::Invalid("morphism matrix has the wrong shape".into()));
        }
        for x in 0..a.dim() {
            for y in 0..b.dim() {
                if !f[(y, x)].is_zero() && a.degree_of(x) != b.degree_of(y) {
                    return Err(Error::NotMorphism("does not preserve degree".into()));
                }
            }
        }
        let image = |v: &[Rational]| f.apply(v);
        let unit = |dim: usize| {
            let mut u = vec![Rational::zero(); dim];
            u[0] = Rational::one();
            u
        };
        if image(&unit(a.dim())) != unit(b.dim()) {
            return Err(Error::NotMorphism("does not send 1 to 1".into()));
        }
        let basis = |i: usize| {
            let mut v = vec![Rational::zero(); a.dim()];
            v[i] = Rational::one();
            v
        };
        for x in 0..a.dim() {
            let ex = basis(x);
            if image(&a.d(&ex)) != b.d(&image(&ex)) {
                return Err(Error::NotMorphism(format!("does not commute with d on {}", a.name(x))));
            }
            for y in 0..a.dim() {
                let ey = basis(y);
                if image(&a.multiply(&ex, &ey)) != b.multiply(&image(&ex), &image(&ey)) {
                    return Err(Error::NotMorphism(format!("not multiplicative on {} * {}", a.name(x), a.name(y))));
                }
            }
        }
        Ok(())
    }
}

/// Rank of the map induced on cohomology by a chain map `f` between degree
/// `p` cochains: `dim(f(Z) + B') - dim B'`.
pub(crate) fn cohomology_rank(f: &QMatrix, d_out_src: &QMatrix, d_in_tgt: &QMatrix) -> usize {
    let z = Subspace::span(d_out_src.cols(), &d_out_src.nullspace().columns());
    let b = d_in_tgt.column_space();
    z.image(f).sum(&b).dim() - b.dim()
}

#[derive(Clone, Debug)]
pub struct InducedMap {
    /// `F ⊗ id` in each degree.
    pub matrices: Vec<QMatrix>,
    /// Whether `F` is a quasi-isomorphism `A -> B`.
    pub quasi_isomorphism: bool,
    /// Whether the induced map on `H^*(A(η, m)) -> H^*(B(Fη, m))` is bijective.
    pub iso_on_thickened: bool,
}

/// `F ⊗ id: A(η, m) -> B(Fη, m)` with quasi-isomorphism checks by rank.
pub fn induced_map(a: &BifilteredCdga, b: &BifilteredCdga, f: &CdgaMorphism, eta: &Direction, m: usize) -> Result<InducedMap> {
    f.validate(a, b)?;
    let f_eta = Direction::new(f.block(a, b, 1).apply(eta.coeffs()));
    let ta = thicken_cdga(a, eta, m)?;
    let tb = thicken_cdga(b, &f_eta, m)?;
    let top = a.top_degree().max(b.top_degree());
    let mut matrices = Vec::new();
    let mut quasi = true;
    let mut iso = true;
    for p in 0..=top {
        let block = f.block(a, b, p);
        let da_in = if p == 0 { QMatrix::zeros(a.dim_in(0), 0) } else { a.d_matrix(p - 1) };
        let db_in = if p == 0 { QMatrix::zeros(b.dim_in(0), 0) } else { b.d_matrix(p - 1) };
        let ha = a.dim_in(p) - a.d_matrix(p).rank() - da_in.rank();
        let hb = b.dim_in(p) - b.d_matrix(p).rank() - db_in.rank();
        let r = cohomology_rank(&block, &a.d_matrix(p), &db_in);
        quasi &= r == ha && r == hb;

        let fm = shifted_blocks(m, m, &block, Some);
        let r = cohomology_rank(&fm, &ta.differential(p), &tb.differential_into(p));
        iso &= r == ta.cohomology_dim(p) && r == tb.cohomology_dim(p);
        matrices.push(fm);
    }
    Ok(InducedMap { matrices, quasi_isomorphism: quasi, iso_on_thickened: iso })
}

/// The maps relating thickenings of different orders, per degree.
#[derive(Clone, Debug)]
pub struct StructureMaps {
    /// Truncation `A(η, i + j) -> A(η, i)`.
    pub phi: Vec<QMatrix>,
    /// Inclusion `A(η, i) -> A(η, i + j)` by `s^j`.
    pub psi: Vec<QMatrix>,
    /// `S_i = ψ_{i-1,1} ∘ φ_{1,i-1}` on `A(η, i)`.
    pub s: Vec<QMatrix>,
}

pub fn structure_maps(a: &BifilteredCdga, i: usize, j: usize) -> Result<StructureMaps> {
    if i == 0 {
        return Err(Error::Invalid("structure maps need i >= 1".into()));
    }
    let mut maps = StructureMaps { phi: Vec::new(), psi: Vec::new(), s: Vec::new() };
    for p in 0..=a.top_degree() {
        let n = a.dim_in(p);
        maps.phi.push(phi_matrix(n, i + j, i));
        maps.psi.push(psi_matrix(n, i, j));
        maps.s.push(psi_matrix(n, i - 1, 1).mul(&phi_matrix(n, i, i - 1)));
    }
    Ok(maps)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exterior() -> BifilteredCdga {
        BifilteredCdga::exterior(1, 1)
    }

    #[test]
    fn circle_thickening() {
        let a = exterior();
        let eta = Direction::from_ints(&[1]);
        let t1 = thicken_cdga(&a, &eta, 1).unwrap();
        assert!(t1.differential(0).is_zero());
        assert_eq!((t1.cohomology_dim(0), t1.cohomology_dim(1)), (1, 1));
        let t2 = thicken_cdga(&a, &eta, 2).unwrap();
        assert_eq!((t2.cohomology_dim(0), t2.cohomology_dim(1)), (1, 1));
        // H^0 is spanned by 1 ⊗ s
        let z = t2.differential(0).nullspace();
        assert_eq!(z.columns(), vec![vec![int(0), int(1)]]);
    }

    #[test]
    fn direction_errors() {
        let h = BifilteredCdga::heisenberg(1, 1, 1).unwrap();
        assert_eq!(thicken_cdga(&h, &Direction::from_ints(&[0, 0, 1]), 2).unwrap_err(), Error::NotClosed);
        let e2 = BifilteredCdga::exterior(2, 1);
        assert_eq!(thicken_cdga(&e2, &Direction::from_ints(&[1]), 2).unwrap_err(), Error::NotW1);
        let e0 = BifilteredCdga::exterior(1, 0);
        assert_eq!(thicken_cdga(&e0, &Direction::from_ints(&[1]), 2).unwrap_err(), Error::NotF1);
        assert!(matches!(thicken_cdga(&e0, &Direction::from_ints(&[1, 1]), 2), Err(Error::Invalid(_))));
    }

    #[test]
    fn gauge_on_free_cdga() {
        // Q[x]/(x^2, x e) ⊗ Λ(e), dx = e; η₁ = e, η₂ = 0, a = x
        let a = BifilteredCdga::contractible(2, 1, 1, 0, 1).unwrap();
        let g = gauge_isomorphism(&a, &Direction::from_ints(&[1]), &Direction::from_ints(&[0]), &[int(0), int(1)], 2).unwrap();
        let t1 = thicken_cdga(&a, &Direction::from_ints(&[1]), 2).unwrap();
        let t0 = thicken_cdga(&a, &Direction::from_ints(&[0]), 2).unwrap();
        // degree 0 basis: 1, x, 1⊗s, x⊗s; exp(x s) = 1 + x s
        let expected = QMatrix::from_int_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 0, 0, 1]]);
        assert_eq!(g.forward[0], expected);
        assert_eq!(t0.differential(0).mul(&g.forward[0]), g.forward[1].mul(&t1.differential(0)));
        assert_eq!(g.forward[0].mul(&g.inverse[0]), QMatrix::identity(4));
        assert_eq!(
            gauge_isomorphism(&a, &Direction::from_ints(&[1]), &Direction::from_ints(&[1]), &[int(0), int(1)], 2)
                .unwrap_err(),
            Error::WitnessMismatch
        );
    }

    #[test]
    fn zero_gauge_is_identity() {
        let a = exterior();
        let eta = Direction::from_ints(&[1]);
        let g = gauge_isomorphism(&a, &eta, &eta, &[int(0)], 3).unwrap();
        assert_eq!(g.forward[1], QMatrix::identity(3));
    }

    #[test]
    fn structure_map_identities() {
        let a = exterior();
        let maps = structure_maps(&a, 1, 1).unwrap();
        // φ_{11} ∘ ψ_{11} = 0 on A(η, 1)
        assert!(maps.phi[1].mul(&maps.psi[1]).is_zero());
        let t2 = thicken_cdga(&a, &Direction::from_ints(&[1]), 2).unwrap();
        let maps2 = structure_maps(&a, 2, 1).unwrap();
        assert_eq!(maps2.s[1], t2.s_action(1));
        assert_eq!(psi_matrix(1, 1, 1).mul(&phi_matrix(1, 2, 1)), t2.s_action(1));
        let t3 = thicken_cdga(&a, &Direction::from_ints(&[1]), 3).unwrap();
        let s3 = structure_maps(&a, 3, 0).unwrap().s;
        assert_eq!(s3[0].mul(&s3[0]), series_action(1, &TruncatedPoly::s_pow(3, 2)));
        assert_eq!(t3.s_action(0), s3[0]);
        assert!(structure_maps(&a, 0, 1).is_err());
    }

    #[test]
    fn identity_and_quasi_iso_inclusions() {
        let h = BifilteredCdga::heisenberg(1, 1, 1).unwrap();
        let eta = Direction::from_ints(&[1, 0, 0]);
        let id = induced_map(&h, &h, &CdgaMorphism::identity(&h), &eta, 3).unwrap();
        assert!(id.quasi_isomorphism && id.iso_on_thickened);
        assert_eq!(id.matrices[1], QMatrix::identity(9));

        let c = BifilteredCdga::contractible(3, 1, 1, 1, 1).unwrap();
        let big = h.tensor(&c);
        let inc = CdgaMorphism { matrix: h.left_inclusion(&c) };
        let r = induced_map(&h, &big, &inc, &eta, 3).unwrap();
        assert!(r.quasi_isomorphism && r.iso_on_thickened);

        let zero = CdgaMorphism { matrix: QMatrix::zeros(h.dim(), h.dim()) };
        assert!(matches!(induced_map(&h, &h, &zero, &eta, 2), Err(Error::NotMorphism(_))));
    }
}
