use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::error::Result;
use crate::laurent::LaurentPoly;
use crate::qmat::QMatrix;
use crate::rational::int;
use crate::rmodule::FgRModule;

use super::{alexander_homology, presentation_complex, Epimorphism, GroupPresentation, PresentationComplex};

/// Outcome of a check that may not apply to its input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Ok,
    Failed,
    NotApplicable,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Ok
        } else {
            Verdict::Failed
        }
    }
}

/// `dim H_1(U; Q)` of a presentation: generators minus the rank of the
/// exponent-sum matrix.
pub fn untwisted_b1(p: &GroupPresentation) -> usize {
    let g = p.generators;
    let rows: Vec<Vec<_>> = p
        .relators
        .iter()
        .map(|w| {
            let mut row = vec![0i64; g];
            for &l in w {
                row[l.unsigned_abs() as usize - 1] += l.signum();
            }
            row.into_iter().map(int).collect()
        })
        .collect();
    if rows.is_empty() {
        return g;
    }
    g - QMatrix::from_rows(rows).rank()
}

/// Dimension of `R/(d, g)` summed over the torsion factors, plus `N` per free
/// summand when `g = t^N - 1`.
fn dim_mod(m: &FgRModule, g: &LaurentPoly) -> usize {
    m.invariant_factors().iter().map(|d| LaurentPoly::gcd(d, g).degree()).sum::<usize>()
        + m.free_rank() * g.degree()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MilnorReport {
    /// `dim H_1(U^f)_1`: the coinvariants of `t` on the Alexander module.
    pub dim_h1_fixed: Option<usize>,
    pub dim_h1_untwisted: usize,
    pub free_part_present: bool,
    pub ok: Verdict,
}

/// Compares `dim H_1(U^f)/(t-1)` with `dim H_1(U;Q) - 1`, the count forced
/// by the Milnor sequence when `H_1(U; L)` is torsion.
pub fn milnor_split_check(pc: &PresentationComplex) -> Result<MilnorReport> {
    let h1 = alexander_homology(pc, 1)?;
    let b1 = untwisted_b1(&pc.presentation);
    if h1.free_rank() > 0 {
        return Ok(MilnorReport { dim_h1_fixed: None, dim_h1_untwisted: b1, free_part_present: true, ok: Verdict::NotApplicable });
    }
    let fixed = dim_mod(&h1, &LaurentPoly::t_pow_minus_one(1));
    Ok(MilnorReport {
        dim_h1_fixed: Some(fixed),
        dim_h1_untwisted: b1,
        free_part_present: false,
        ok: Verdict::from_bool(b1 >= 1 && fixed == b1 - 1),
    })
}

fn free_reduce(w: Vec<i64>) -> Vec<i64> {
    let mut out: Vec<i64> = Vec::with_capacity(w.len());
    for l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// Reidemeister–Schreier presentation of the kernel of `ε mod N`, with the
/// epimorphism `ε / N`.
pub fn cover_presentation(p: &GroupPresentation, e: &Epimorphism, n: u64) -> Result<(GroupPresentation, Epimorphism)> {
    presentation_complex(p, e)?;
    let n_i = n as i64;
    let g = p.generators;
    // BFS Schreier transversal: residue -> (image of T_r, tree edge used).
    let mut image: Vec<Option<i64>> = vec![None; n as usize];
    let mut tree: Vec<(usize, usize)> = Vec::new();
    image[0] = Some(0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(r) = queue.pop_front() {
        let base = image[r].unwrap();
        for j in 0..g {
            for sign in [1i64, -1] {
                let val = base + sign * e.images[j];
                let r2 = val.rem_euclid(n_i) as usize;
                if image[r2].is_none() {
                    image[r2] = Some(val);
                    // The Schreier generator made trivial is y_{r,j} for a
                    // forward edge and y_{r2,j} for a backward one.
                    tree.push(if sign == 1 { (r, j) } else { (r2, j) });
                    queue.push_back(r2);
                }
            }
        }
    }
    let image: Vec<i64> = image.into_iter().map(|x| x.expect("epimorphism reaches every residue")).collect();

    let mut index: BTreeMap<(usize, usize), i64> = BTreeMap::new();
    let mut images = Vec::new();
    for r in 0..n as usize {
        for j in 0..g {
            if tree.contains(&(r, j)) {
                continue;
            }
            let target = (r as i64 + e.images[j]).rem_euclid(n_i) as usize;
            let total = image[r] + e.images[j] - image[target];
            debug_assert_eq!(total % n_i, 0);
            index.insert((r, j), index.len() as i64 + 1);
            images.push(total / n_i);
        }
    }
    let mut relators = Vec::new();
    for w in &p.relators {
        for r0 in 0..n as usize {
            let mut c = r0 as i64;
            let mut out = Vec::new();
            for &l in w {
                let j = l.unsigned_abs() as usize - 1;
                if l > 0 {
                    if let Some(&y) = index.get(&(c.rem_euclid(n_i) as usize, j)) {
                        out.push(y);
                    }
                    c += e.images[j];
                } else {
                    c -= e.images[j];
                    if let Some(&y) = index.get(&(c.rem_euclid(n_i) as usize, j)) {
                        out.push(-y);
                    }
                }
            }
            let out = free_reduce(out);
            if !out.is_empty() {
                relators.push(out);
            }
        }
    }
    Ok((GroupPresentation { generators: images.len(), relators }, Epimorphism { images }))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverKernelReport {
    pub n: u64,
    pub predicted_b1: usize,
    pub actual_b1: usize,
    pub ok: bool,
}

/// `dim H_1(U_N; Q) = dim H_1(U;L)/(t^N - 1) + dim ker(t^N - 1 | H_0(U;L))`,
/// with the left side read off the Reidemeister–Schreier presentation.
pub fn cover_kernel_check(pc: &PresentationComplex, n: u64) -> Result<CoverKernelReport> {
    let g = LaurentPoly::t_pow_minus_one(n);
    let h1 = alexander_homology(pc, 1)?;
    let h0 = alexander_homology(pc, 0)?;
    let predicted = dim_mod(&h1, &g) + dim_mod(&crate::rmodule::torsion_part(&h0), &g);
    let (cp, _) = cover_presentation(&pc.presentation, &pc.epimorphism, n)?;
    let actual = if cp.generators == 0 { 0 } else { untwisted_b1(&cp) };
    Ok(CoverKernelReport { n, predicted_b1: predicted, actual_b1: actual, ok: predicted == actual })
}
