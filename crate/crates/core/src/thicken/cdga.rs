use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qmat::QMatrix;
use crate::rational::{format_rational, int, parse_rational, Rational};

/// A rational coefficient in JSON: an integer or a `"num/den"` string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coeff {
    Int(i64),
    Text(String),
}

impl Coeff {
    pub fn value(&self) -> Result<Rational> {
        match self {
            Coeff::Int(n) => Ok(int(*n)),
            Coeff::Text(s) => parse_rational(s),
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        Coeff::Text(format_rational(q))
    }
}

/// JSON form of a bifiltered CDGA. Basis elements are numbered globally in
/// the order listed, degree by degree; element 0 is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CdgaSpec {
    pub basis: Vec<Vec<String>>,
    /// `[a, b, c, coeff]`: the product `a * b` has `coeff` on `c`.
    #[serde(default)]
    pub products: Vec<(usize, usize, usize, Coeff)>,
    /// `[from, to, coeff]`: `d(from)` has `coeff` on `to`.
    #[serde(default)]
    pub differential: Vec<(usize, usize, Coeff)>,
    pub weights: Vec<i64>,
    #[serde(default)]
    pub hodge: Option<Vec<i64>>,
}

type SparseVec = Vec<(usize, Rational)>;

/// A finite-dimensional commutative differential graded algebra over `Q`
/// with basis-aligned weight and Hodge filtrations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BifilteredCdga {
    names: Vec<String>,
    degree: Vec<usize>,
    /// First global index of each degree, plus the total at the end.
    offsets: Vec<usize>,
    mult: Vec<Vec<SparseVec>>,
    diff: Vec<SparseVec>,
    weights: Vec<i64>,
    hodge: Option<Vec<i64>>,
}

fn add_into(acc: &mut BTreeMap<usize, Rational>, k: usize, c: Rational) {
    let e = acc.entry(k).or_insert_with(Rational::zero);
    *e += c;
    if e.is_zero() {
        acc.remove(&k);
    }
}

fn sign(odd: bool) -> Rational {
    if odd {
        -Rational::one()
    } else {
        Rational::one()
    }
}

impl BifilteredCdga {
    pub fn from_spec(spec: &CdgaSpec) -> Result<Self> {
        let bad = |s: String| Err(Error::Invalid(s));
        let mut names = Vec::new();
        let mut degree = Vec::new();
        let mut offsets = Vec::new();
        for (p, names_p) in spec.basis.iter().enumerate() {
            offsets.push(names.len());
            for n in names_p {
                names.push(n.clone());
                degree.push(p);
            }
        }
        offsets.push(names.len());
        let dim = names.len();
        if spec.basis.first().is_none_or(Vec::is_empty) {
            return bad("degree 0 must contain the unit".into());
        }
        if spec.weights.len() != dim || spec.hodge.as_ref().is_some_and(|h| h.len() != dim) {
            return bad("weights and hodge indices need one entry per basis element".into());
        }
        let mut mult: Vec<Vec<BTreeMap<usize, Rational>>> = vec![vec![BTreeMap::new(); dim]; dim];
        let mut listed = vec![vec![false; dim]; dim];
        for x in 0..dim {
            mult[0][x].insert(x, Rational::one());
            mult[x][0].insert(x, Rational::one());
            listed[0][x] = true;
            listed[x][0] = true;
        }
        for (a, b, c, coeff) in &spec.products {
            let (a, b, c) = (*a, *b, *c);
            if a >= dim || b >= dim || c >= dim {
                return bad(format!("product [{a}, {b}, {c}] refers to a missing basis element"));
            }
            if a == 0 || b == 0 {
                return bad("products with the unit are implicit".into());
            }
            if degree[c] != degree[a] + degree[b] {
                return bad(format!("product [{a}, {b}, {c}] does not add degrees"));
            }
            add_into(&mut mult[a][b], c, coeff.value()?);
            listed[a][b] = true;
        }
        for a in 0..dim {
            for b in 0..dim {
                if listed[a][b] && !listed[b][a] {
                    let s = sign(degree[a] * degree[b] % 2 == 1);
                    let entries: Vec<(usize, Rational)> = mult[a][b].iter().map(|(k, v)| (*k, v * &s)).collect();
                    for (k, v) in entries {
                        add_into(&mut mult[b][a], k, v);
                    }
                    listed[b][a] = true;
                }
            }
        }
        let mut diff: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); dim];
        for (from, to, coeff) in &spec.differential {
            let (from, to) = (*from, *to);
            if from >= dim || to >= dim || degree[to] != degree[from] + 1 {
                return bad(format!("differential entry [{from}, {to}] must raise degree by one"));
            }
            add_into(&mut diff[from], to, coeff.value()?);
        }
        let cdga = BifilteredCdga {
            names,
            degree,
            offsets,
            mult: mult.into_iter().map(|row| row.into_iter().map(|m| m.into_iter().collect()).collect()).collect(),
            diff: diff.into_iter().map(|m| m.into_iter().collect()).collect(),
            weights: spec.weights.clone(),
            hodge: spec.hodge.clone(),
        };
        cdga.validate()?;
        Ok(cdga)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let spec: CdgaSpec = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_spec(&spec)
    }

    pub fn to_spec(&self) -> CdgaSpec {
        let top = self.top_degree();
        let basis = (0..=top).map(|p| self.range(p).map(|i| self.names[i].clone()).collect()).collect();
        let mut products = Vec::new();
        for a in 1..self.dim() {
            for b in 1..self.dim() {
                for (c, v) in &self.mult[a][b] {
                    products.push((a, b, *c, Coeff::from_rational(v)));
                }
            }
        }
        let differential = (0..self.dim())
            .flat_map(|a| self.diff[a].iter().map(move |(b, v)| (a, *b, Coeff::from_rational(v))))
            .collect();
        CdgaSpec { basis, products, differential, weights: self.weights.clone(), hodge: self.hodge.clone() }
    }

    fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::Invalid(s));
        let dim = self.dim();
        if !self.diff[0].is_empty() {
            return bad("d(1) must vanish".into());
        }
        for a in 0..dim {
            for b in 0..dim {
                // graded commutativity
                let s = sign(self.degree[a] * self.degree[b] % 2 == 1);
                let ab = self.product_basis(a, b);
                let ba: BTreeMap<usize, Rational> =
                    self.product_basis(b, a).into_iter().map(|(k, v)| (k, v * &s)).collect();
                if ab != ba {
                    return bad(format!("{} and {} do not graded-commute", self.names[a], self.names[b]));
                }
                // Leibniz
                let lhs = self.d_vec(&ab);
                let mut rhs = BTreeMap::new();
                for (x, v) in &self.diff[a] {
                    for (k, w) in self.product_basis(*x, b) {
                        add_into(&mut rhs, k, v * w);
                    }
                }
                let sa = sign(self.degree[a] % 2 == 1);
                for (y, v) in &self.diff[b] {
                    for (k, w) in self.product_basis(a, *y) {
                        add_into(&mut rhs, k, &sa * v * w);
                    }
                }
                if lhs != rhs {
                    return bad(format!("Leibniz rule fails on {} * {}", self.names[a], self.names[b]));
                }
                for (c, v) in &self.mult[a][b] {
                    if v.is_zero() {
                        continue;
                    }
                    if self.weights[*c] > self.weights[a] + self.weights[b] {
                        return bad("weight filtration is not multiplicative".into());
                    }
                    if let Some(f) = &self.hodge {
                        if f[*c] < f[a] + f[b] {
                            return bad("Hodge filtration is not multiplicative".into());
                        }
                    }
                }
                for c in 0..dim {
                    if self.degree[a] + self.degree[b] + self.degree[c] > self.top_degree() {
                        continue;
                    }
                    let mut left = BTreeMap::new();
                    for (k, v) in self.product_basis(a, b) {
                        for (l, w) in self.product_basis(k, c) {
                            add_into(&mut left, l, &v * w);
                        }
                    }
                    let mut right = BTreeMap::new();
                    for (k, v) in self.product_basis(b, c) {
                        for (l, w) in self.product_basis(a, k) {
                            add_into(&mut right, l, &v * w);
                        }
                    }
                    if left != right {
                        return bad("multiplication is not associative".into());
                    }
                }
            }
        }
        for a in 0..dim {
            let dd = self.d_vec(&self.diff[a].iter().cloned().collect());
            if !dd.is_empty() {
                return bad(format!("d^2 does not vanish on {}", self.names[a]));
            }
            for (b, v) in &self.diff[a] {
                if v.is_zero() {
                    continue;
                }
                if self.weights[*b] > self.weights[a] {
                    return bad("d does not preserve the weight filtration".into());
                }
                if let Some(f) = &self.hodge {
                    if f[*b] < f[a] {
                        return bad("d does not preserve the Hodge filtration".into());
                    }
                }
            }
        }
        Ok(())
    }

    fn product_basis(&self, a: usize, b: usize) -> BTreeMap<usize, Rational> {
        self.mult[a][b].iter().cloned().collect()
    }

    fn d_vec(&self, x: &BTreeMap<usize, Rational>) -> BTreeMap<usize, Rational> {
        let mut out = BTreeMap::new();
        for (a, v) in x {
            for (b, w) in &self.diff[*a] {
                add_into(&mut out, *b, v * w);
            }
        }
        out
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn top_degree(&self) -> usize {
        self.offsets.len() - 2
    }

    pub fn dim_in(&self, p: usize) -> usize {
        if p > self.top_degree() {
            0
        } else {
            self.offsets[p + 1] - self.offsets[p]
        }
    }

    /// Global indices of the degree-`p` basis.
    pub fn range(&self, p: usize) -> std::ops::Range<usize> {
        if p > self.top_degree() {
            return self.dim()..self.dim();
        }
        self.offsets[p]..self.offsets[p + 1]
    }

    pub fn offset(&self, p: usize) -> usize {
        self.range(p).start
    }

    pub fn degree_of(&self, b: usize) -> usize {
        self.degree[b]
    }

    pub fn name(&self, b: usize) -> &str {
        &self.names[b]
    }

    pub fn weight(&self, b: usize) -> i64 {
        self.weights[b]
    }

    pub fn hodge(&self, b: usize) -> Option<i64> {
        self.hodge.as_ref().map(|f| f[b])
    }

    pub fn has_hodge(&self) -> bool {
        self.hodge.is_some()
    }

    /// Replaces the Hodge indices without re-validating; for negative
    /// controls only.
    pub fn with_hodge_unchecked(&self, hodge: Vec<i64>) -> Self {
        BifilteredCdga { hodge: Some(hodge), ..self.clone() }
    }

    /// `d: A^p -> A^{p+1}` in the degree-wise bases.
    pub fn d_matrix(&self, p: usize) -> QMatrix {
        let mut out = QMatrix::zeros(self.dim_in(p + 1), self.dim_in(p));
        let off_to = self.offset(p + 1);
        for (j, a) in self.range(p).enumerate() {
            for (b, v) in &self.diff[a] {
                out[(b - off_to, j)] = v.clone();
            }
        }
        out
    }

    /// Left multiplication by a homogeneous element of degree `q`, given in
    /// the degree-`q` basis, as a map `A^p -> A^{p+q}`.
    pub fn left_mult_matrix(&self, x: &[Rational], q: usize, p: usize) -> QMatrix {
        let mut out = QMatrix::zeros(self.dim_in(p + q), self.dim_in(p));
        let off_q = self.offset(q);
        let off_to = self.offset(p + q);
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, b) in self.range(p).enumerate() {
                for (k, v) in &self.mult[off_q + i][b] {
                    out[(k - off_to, j)] += c * v;
                }
            }
        }
        out
    }

    /// Product of two elements given as global coordinate vectors.
    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (a, u) in x.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (b, v) in y.iter().enumerate() {
                if v.is_zero() {
                    continue;
                }
                for (k, w) in &self.mult[a][b] {
                    out[*k] += u * v * w;
                }
            }
        }
        out
    }

    /// `d` on a global coordinate vector.
    pub fn d(&self, x: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (a, u) in x.iter().enumerate() {
            if u.is_zero() {
                continue;
            }
            for (b, w) in &self.diff[a] {
                out[*b] += u * w;
            }
        }
        out
    }

    /// Embeds a degree-`p` coordinate vector into global coordinates.
    pub fn global(&self, p: usize, x: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim()];
        for (i, c) in x.iter().enumerate() {
            out[self.offset(p) + i] = c.clone();
        }
        out
    }

    /// Graded tensor product with additive weights and Hodge indices.
    pub fn tensor(&self, other: &BifilteredCdga) -> BifilteredCdga {
        let mut pairs: Vec<(usize, usize)> = (0..self.dim()).flat_map(|a| (0..other.dim()).map(move |b| (a, b))).collect();
        pairs.sort_by_key(|&(a, b)| (self.degree[a] + other.degree[b], a, b));
        let index: BTreeMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let top = self.top_degree() + other.top_degree();
        let mut basis = vec![Vec::new(); top + 1];
        for &(a, b) in &pairs {
            let name = match (a, b) {
                (0, 0) => "1".to_string(),
                (a, 0) => self.names[a].clone(),
                (0, b) => other.names[b].clone(),
                (a, b) => format!("{}*{}", self.names[a], other.names[b]),
            };
            basis[self.degree[a] + other.degree[b]].push(name);
        }
        let mut products = Vec::new();
        for &(a1, b1) in &pairs {
            for &(a2, b2) in &pairs {
                if (a1, b1) == (0, 0) || (a2, b2) == (0, 0) {
                    continue;
                }
                let s = sign(other.degree[b1] * self.degree[a2] % 2 == 1);
                for (c1, v1) in &self.mult[a1][a2] {
                    for (c2, v2) in &other.mult[b1][b2] {
                        let coeff = &s * v1 * v2;
                        products.push((index[&(a1, b1)], index[&(a2, b2)], index[&(*c1, *c2)], Coeff::from_rational(&coeff)));
                    }
                }
            }
        }
        let mut differential = Vec::new();
        for &(a, b) in &pairs {
            for (c, v) in &self.diff[a] {
                differential.push((index[&(a, b)], index[&(*c, b)], Coeff::from_rational(v)));
            }
            let s = sign(self.degree[a] % 2 == 1);
            for (c, v) in &other.diff[b] {
                differential.push((index[&(a, b)], index[&(a, *c)], Coeff::from_rational(&(&s * v))));
            }
        }
        let weights = pairs.iter().map(|&(a, b)| self.weights[a] + other.weights[b]).collect();
        let hodge = match (&self.hodge, &other.hodge) {
            (Some(f), Some(g)) => Some(pairs.iter().map(|&(a, b)| f[a] + g[b]).collect()),
            _ => None,
        };
        BifilteredCdga::from_spec(&CdgaSpec { basis, products, differential, weights, hodge })
            .expect("tensor product of valid cdgas is valid")
    }

    /// The inclusion `A -> A ⊗ B`, `a ↦ a ⊗ 1`, in global coordinates.
    pub fn left_inclusion(&self, other: &BifilteredCdga) -> QMatrix {
        let mut pairs: Vec<(usize, usize)> = (0..self.dim()).flat_map(|a| (0..other.dim()).map(move |b| (a, b))).collect();
        pairs.sort_by_key(|&(a, b)| (self.degree[a] + other.degree[b], a, b));
        let mut out = QMatrix::zeros(pairs.len(), self.dim());
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if b == 0 {
                out[(i, a)] = Rational::one();
            }
        }
        out
    }

    /// `Λ(e)` with `|e| = 1`, `d = 0`.
    pub fn exterior(weight: i64, hodge: i64) -> Self {
        Self::from_spec(&CdgaSpec {
            basis: vec![vec!["1".into()], vec!["e".into()]],
            products: vec![],
            differential: vec![],
            weights: vec![0, weight],
            hodge: Some(vec![0, hodge]),
        })
        .expect("exterior algebra is valid")
    }

    /// `Q[x]/(x^k, x^{k-1} e) ⊗ Λ(e)` with `|x| = 0`, `dx = e`; acyclic
    /// apart from the unit.
    pub fn contractible(k: usize, wx: i64, we: i64, fx: i64, fe: i64) -> Result<Self> {
        if k < 2 || we > wx || fe < fx {
            return Err(Error::Invalid("contractible block needs k >= 2, w(e) <= w(x), f(e) >= f(x)".into()));
        }
        // degree 0: x^0..x^{k-1}, degree 1: x^0 e .. x^{k-2} e
        let xpow = |j: usize| j;
        let xe = |j: usize| k + j;
        let mut basis = vec![vec![], vec![]];
        let mut weights = Vec::new();
        let mut hodge = Vec::new();
        for j in 0..k {
            basis[0].push(match j {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{j}"),
            });
            weights.push(j as i64 * wx);
            hodge.push(j as i64 * fx);
        }
        for j in 0..k - 1 {
            basis[1].push(match j {
                0 => "e".to_string(),
                1 => "x*e".to_string(),
                _ => format!("x^{j}*e"),
            });
            weights.push(j as i64 * wx + we);
            hodge.push(j as i64 * fx + fe);
        }
        let mut products = Vec::new();
        for i in 1..k {
            for j in 1..k {
                if i + j < k {
                    products.push((xpow(i), xpow(j), xpow(i + j), Coeff::Int(1)));
                }
            }
            for j in 0..k - 1 {
                if i + j < k - 1 {
                    products.push((xpow(i), xe(j), xe(i + j), Coeff::Int(1)));
                }
            }
        }
        let differential = (1..k).map(|j| (xpow(j), xe(j - 1), Coeff::Int(j as i64))).collect();
        Self::from_spec(&CdgaSpec { basis, products, differential, weights, hodge: Some(hodge) })
    }

    /// `Λ(a, b, c)` with `dc = ab`: the minimal model of the Heisenberg
    /// nilmanifold.
    pub fn heisenberg(fa: i64, fb: i64, fc: i64) -> Result<Self> {
        // 0:1 1:a 2:b 3:c 4:ab 5:ac 6:bc 7:abc
        let products = vec![
            (1, 2, 4, Coeff::Int(1)),
            (1, 3, 5, Coeff::Int(1)),
            (2, 3, 6, Coeff::Int(1)),
            (1, 6, 7, Coeff::Int(1)),
            (2, 5, 7, Coeff::Int(-1)),
            (3, 4, 7, Coeff::Int(1)),
        ];
        let differential = vec![(3, 4, Coeff::Int(1))];
        Self::from_spec(&CdgaSpec {
            basis: vec![
                vec!["1".into()],
                vec!["a".into(), "b".into(), "c".into()],
                vec!["ab".into(), "ac".into(), "bc".into()],
                vec!["abc".into()],
            ],
            products,
            differential,
            weights: vec![0, 1, 1, 2, 2, 3, 3, 4],
            hodge: Some(vec![0, fa, fb, fc, fa + fb, fa + fc, fb + fc, fa + fb + fc]),
        })
    }
}
