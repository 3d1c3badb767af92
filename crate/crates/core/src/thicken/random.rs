//! Random small bifiltered CDGAs for property checks.

use num_traits::Zero;
use rand::Rng;

use crate::qmat::Subspace;
use crate::rational::{int, Rational};

use super::cdga::BifilteredCdga;
use super::thickening::Direction;

/// Upper bound on the total dimension of generated algebras.
pub const MAX_RANDOM_DIM: usize = 12;

fn random_block<R: Rng>(rng: &mut R) -> BifilteredCdga {
    match rng.gen_range(0..4) {
        0 | 1 => BifilteredCdga::exterior(rng.gen_range(0..=2), rng.gen_range(0..=2)),
        2 => {
            let k = rng.gen_range(2..=3);
            let wx = rng.gen_range(0..=1);
            let fx = rng.gen_range(0..=1);
            BifilteredCdga::contractible(k, wx, wx - rng.gen_range(0..=1), fx, fx + rng.gen_range(0..=1))
                .expect("parameters satisfy the filtration conditions")
        }
        _ => {
            let (fa, fb) = (rng.gen_range(0..=1), rng.gen_range(0..=1));
            BifilteredCdga::heisenberg(fa, fb, rng.gen_range(0..=fa + fb)).expect("f(c) <= f(a) + f(b)")
        }
    }
}

/// A tensor product of exterior, contractible and Heisenberg blocks with
/// total dimension at most [`MAX_RANDOM_DIM`].
pub fn random_cdga<R: Rng>(rng: &mut R) -> BifilteredCdga {
    let mut a = random_block(rng);
    for _ in 0..3 {
        let b = random_block(rng);
        if a.dim() * b.dim() <= MAX_RANDOM_DIM {
            a = a.tensor(&b);
        }
    }
    a
}

fn random_combination<R: Rng>(rng: &mut R, space: &Subspace) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); space.ambient()];
    for b in space.basis() {
        let c = int(rng.gen_range(-2..=2));
        for (x, y) in v.iter_mut().zip(&b) {
            *x += &c * y;
        }
    }
    v
}

/// A random closed direction in `W_1 ∩ F^1`.
pub fn random_direction<R: Rng>(rng: &mut R, a: &BifilteredCdga) -> Direction {
    let n = a.dim_in(1);
    let allowed = Subspace::coordinate(
        n,
        a.range(1).filter(|&b| a.weight(b) <= 1 && a.hodge(b).is_none_or(|f| f >= 1)).map(|b| b - a.offset(1)),
    );
    let closed = Subspace::span(n, &a.d_matrix(1).nullspace().columns());
    Direction::new(random_combination(rng, &closed.intersect(&allowed)))
}

/// A random degree-0 element of `W_1 ∩ F^1`, usable as a gauge witness.
pub fn random_witness<R: Rng>(rng: &mut R, a: &BifilteredCdga) -> Vec<Rational> {
    let allowed = Subspace::coordinate(
        a.dim_in(0),
        a.range(0).filter(|&b| a.weight(b) <= 1 && a.hodge(b).is_none_or(|f| f >= 1)).map(|b| b - a.offset(0)),
    );
    random_combination(rng, &allowed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generated_data_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let a = random_cdga(&mut rng);
            assert!(a.dim() <= MAX_RANDOM_DIM);
            let eta = random_direction(&mut rng, &a);
            eta.validate(&a).unwrap();
            let w = random_witness(&mut rng, &a);
            assert_eq!(w.len(), a.dim_in(0));
        }
    }
}
