use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rational::Rational;
use crate::rmodule::{ComplexOverR, FgRModule, MatrixOverR};

/// A finite group presentation. Letters are signed 1-based generator
/// indices: `2` is `x_2`, `-2` is its inverse.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: usize,
    pub relators: Vec<Vec<i64>>,
}

/// Images of the generators under a homomorphism to `Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Epimorphism {
    pub images: Vec<i64>,
}

/// The JSON form `{generators, relators, epimorphism}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationSpec {
    pub generators: usize,
    pub relators: Vec<Vec<i64>>,
    pub epimorphism: Vec<i64>,
}

impl PresentationSpec {
    pub fn new(p: &GroupPresentation, e: &Epimorphism) -> Self {
        PresentationSpec { generators: p.generators, relators: p.relators.clone(), epimorphism: e.images.clone() }
    }

    pub fn split(&self) -> (GroupPresentation, Epimorphism) {
        (
            GroupPresentation { generators: self.generators, relators: self.relators.clone() },
            Epimorphism { images: self.epimorphism.clone() },
        )
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn complex(&self) -> Result<PresentationComplex> {
        let (p, e) = self.split();
        presentation_complex(&p, &e)
    }
}

impl GroupPresentation {
    pub fn validate(&self) -> Result<()> {
        if self.generators == 0 {
            return Err(Error::Invalid("a presentation needs at least one generator".into()));
        }
        for (k, r) in self.relators.iter().enumerate() {
            for &l in r {
                if l == 0 || l.unsigned_abs() as usize > self.generators {
                    return Err(Error::Invalid(format!("relator {} uses letter {l}", k + 1)));
                }
            }
        }
        Ok(())
    }
}

impl Epimorphism {
    /// Image of a word.
    pub fn word_image(&self, w: &[i64]) -> i64 {
        w.iter().map(|&l| l.signum() * self.images[l.unsigned_abs() as usize - 1]).sum()
    }
}

/// `C_2 -> C_1 -> C_0` of the presentation 2-complex with coefficients in the
/// local system defined by the epimorphism.
#[derive(Clone, Debug)]
pub struct PresentationComplex {
    pub presentation: GroupPresentation,
    pub epimorphism: Epimorphism,
    pub complex: ComplexOverR,
}

impl PresentationComplex {
    pub fn generator_count(&self) -> usize {
        self.presentation.generators
    }

    pub fn relator_count(&self) -> usize {
        self.presentation.relators.len()
    }

    /// `∂_1` as a `1 x g` matrix.
    pub fn d1(&self) -> MatrixOverR {
        self.complex.boundary(1)
    }

    /// `∂_2` as a `g x r` matrix (the transpose of the Fox Jacobian).
    pub fn d2(&self) -> MatrixOverR {
        self.complex.boundary(2)
    }
}

/// Fox derivative `∂w/∂x_gen` pushed to `R` by `x_j -> t^{ε_j}`.
pub fn fox_derivative(word: &[i64], gen: usize, e: &Epimorphism) -> LaurentPoly {
    let mut prefix = 0i64;
    let mut terms = Vec::new();
    for &l in word {
        let j = l.unsigned_abs() as usize;
        let ej = e.images[j - 1];
        if l > 0 {
            if j == gen {
                terms.push((prefix, Rational::one()));
            }
            prefix += ej;
        } else {
            prefix -= ej;
            if j == gen {
                terms.push((prefix, -Rational::one()));
            }
        }
    }
    LaurentPoly::from_terms(terms)
}

pub fn presentation_complex(p: &GroupPresentation, e: &Epimorphism) -> Result<PresentationComplex> {
    p.validate()?;
    if e.images.len() != p.generators {
        return Err(Error::Invalid(format!(
            "epimorphism has {} images for {} generators",
            e.images.len(),
            p.generators
        )));
    }
    let gcd = e.images.iter().fold(0i64, |g, &x| g.gcd(&x));
    if gcd != 1 {
        return Err(Error::NotEpimorphism { gcd });
    }
    for (k, r) in p.relators.iter().enumerate() {
        let image = e.word_image(r);
        if image != 0 {
            return Err(Error::RelatorNotInKernel { index: k + 1, image });
        }
    }
    let g = p.generators;
    let r = p.relators.len();
    let d1 = MatrixOverR::from_rows(vec![e.images.iter().map(|&x| LaurentPoly::t_pow(x) - LaurentPoly::one()).collect()]);
    let mut d2 = MatrixOverR::zeros(g, r);
    for (k, w) in p.relators.iter().enumerate() {
        for gen in 1..=g {
            d2[(gen - 1, k)] = fox_derivative(w, gen, e);
        }
    }
    let complex = ComplexOverR::new(0, vec![1, g, r], vec![d1, d2])
        .map_err(|_| Error::Invalid("Fox calculus produced a non-complex".into()))?;
    Ok(PresentationComplex { presentation: p.clone(), epimorphism: e.clone(), complex })
}

/// `H_i(U; L)` for `i` in `0..=2`.
pub fn alexander_homology(pc: &PresentationComplex, i: i64) -> Result<FgRModule> {
    pc.complex.homology(i)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn trefoil() -> PresentationComplex {
        let pres = GroupPresentation { generators: 2, relators: vec![vec![1, 2, 1, -2, -1, -2]] };
        presentation_complex(&pres, &Epimorphism { images: vec![1, 1] }).unwrap()
    }

    #[test]
    fn circle_and_free_group() {
        let pres = GroupPresentation { generators: 1, relators: vec![] };
        let pc = presentation_complex(&pres, &Epimorphism { images: vec![1] }).unwrap();
        assert_eq!(pc.d1(), MatrixOverR::from_strs(&[&["t - 1"]]));
        assert_eq!(alexander_homology(&pc, 0).unwrap(), FgRModule::from_cyclic_orders(0, &[p("t - 1")]));

        let pres = GroupPresentation { generators: 2, relators: vec![] };
        let pc = presentation_complex(&pres, &Epimorphism { images: vec![1, 1] }).unwrap();
        assert_eq!(alexander_homology(&pc, 1).unwrap(), FgRModule::free(1));
    }

    #[test]
    fn trefoil_module() {
        let pc = trefoil();
        assert_eq!(alexander_homology(&pc, 1).unwrap(), FgRModule::from_cyclic_orders(0, &[p("t^2 - t + 1")]));
        assert_eq!(alexander_homology(&pc, 0).unwrap(), FgRModule::from_cyclic_orders(0, &[p("t - 1")]));
    }

    #[test]
    fn central_four_lines() {
        // <x1, x2, x3, z | [x_i, z]>
        let rel = |i: i64| vec![i, 4, -i, -4];
        let pres = GroupPresentation { generators: 4, relators: vec![rel(1), rel(2), rel(3)] };
        let pc = presentation_complex(&pres, &Epimorphism { images: vec![1, 1, 1, 4] }).unwrap();
        assert_eq!(
            alexander_homology(&pc, 1).unwrap(),
            FgRModule::from_cyclic_orders(0, &[p("t^4 - 1"), p("t^4 - 1"), p("t - 1")])
        );
    }

    #[test]
    fn fox_of_inverse_letter() {
        let e = Epimorphism { images: vec![1] };
        assert_eq!(fox_derivative(&[-1], 1, &e), p("-t^-1"));
        assert_eq!(fox_derivative(&[1, 1], 1, &e), p("1 + t"));
    }

    #[test]
    fn precondition_errors() {
        let pres = GroupPresentation { generators: 2, relators: vec![] };
        assert_eq!(
            presentation_complex(&pres, &Epimorphism { images: vec![2, 4] }).unwrap_err(),
            Error::NotEpimorphism { gcd: 2 }
        );
        let pres = GroupPresentation { generators: 2, relators: vec![vec![1, 1, 2]] };
        assert_eq!(
            presentation_complex(&pres, &Epimorphism { images: vec![1, 0] }).unwrap_err(),
            Error::RelatorNotInKernel { index: 1, image: 2 }
        );
        let pres = GroupPresentation { generators: 1, relators: vec![vec![3]] };
        assert!(matches!(presentation_complex(&pres, &Epimorphism { images: vec![1] }), Err(Error::Invalid(_))));
    }

    #[test]
    fn json_shape() {
        let s = r#"{"generators": 2, "relators": [[1, 2, 1, -2, -1, -2]], "epimorphism": [1, 1]}"#;
        let spec = PresentationSpec::from_json(s).unwrap();
        assert_eq!(spec.complex().unwrap().relator_count(), 1);
        assert!(matches!(PresentationSpec::from_json("{"), Err(Error::Parse(_))));
    }
}
