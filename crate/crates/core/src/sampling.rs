//! Seeded random inputs for the property suites.
//!
//! All randomness flows from `ChaCha8Rng::seed_from_u64(seed)`, so a seed
//! fixes every sampled element on every platform.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeffalg::{BElement, CoeffAlgebra};
use crate::exactlin::{int, Rational};
use crate::toroidal::{canonical_kahler_term, AlgElement, BasisSymbol, Degree, Toroidal};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_degree(rng: &mut SampleRng, n: usize, lo: i64, hi: i64) -> Degree {
    Degree((0..n).map(|_| rng.gen_range(lo..=hi)).collect())
}

/// A nonzero rational with small numerator and denominator.
pub fn random_coeff(rng: &mut SampleRng) -> Rational {
    let mut num = 0;
    while num == 0 {
        num = rng.gen_range(-4..=4);
    }
    Rational::new(num.into(), rng.gen_range(1..=3i64).into())
}

/// A random basis symbol of degree `m` (Kähler symbols canonicalised, so possibly zero).
pub fn random_symbol(rng: &mut SampleRng, tau: &Toroidal, m: &Degree) -> AlgElement {
    let n = tau.n();
    match rng.gen_range(0..3) {
        0 => tau.loop_elem(rng.gen_range(0..tau.g().dim()), m),
        1 => canonical_kahler_term(rng.gen_range(0..n), m),
        _ => AlgElement::unit(BasisSymbol::Der(rng.gen_range(0..n), m.clone())),
    }
}

/// A nonzero homogeneous element with degree in `[lo, hi]^n`; when `ring` is
/// set the first degree coordinate is 0.
pub fn random_homogeneous(rng: &mut SampleRng, tau: &Toroidal, lo: i64, hi: i64, ring: bool) -> AlgElement {
    loop {
        let mut m = random_degree(rng, tau.n(), lo, hi);
        if ring {
            m.0[0] = 0;
        }
        let terms = rng.gen_range(1..=3);
        let mut x = AlgElement::new();
        for _ in 0..terms {
            let c = random_coeff(rng);
            x.add_scaled(&random_symbol(rng, tau, &m), &c);
        }
        if !x.is_zero() {
            return x;
        }
    }
}

/// A random element of `B` with small integer coordinates (possibly zero).
pub fn random_b(rng: &mut SampleRng, b: &CoeffAlgebra) -> BElement {
    BElement::from_pairs((0..b.dim()).map(|i| (i, int(rng.gen_range(-3..=3)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toroidal::{CocycleSpec, GAlgebra};

    #[test]
    fn same_seed_same_samples() {
        let tau = Toroidal::new(3, GAlgebra::sl2(), CocycleSpec::zero()).unwrap();
        let a: Vec<_> = {
            let mut r = rng(7);
            (0..20).map(|_| random_homogeneous(&mut r, &tau, -3, 3, false)).collect()
        };
        let b: Vec<_> = {
            let mut r = rng(7);
            (0..20).map(|_| random_homogeneous(&mut r, &tau, -3, 3, false)).collect()
        };
        assert_eq!(a, b);
        assert!(a.iter().all(|x| tau.degree(x).is_some()));
    }
}
