//! Property tests for the algebraic invariants of each layer.

use std::sync::Arc;

use num::{One, Zero};
use proptest::prelude::*;
use rand::Rng;

use toroidalkit::coeffalg::{parse_polynomial, CoeffAlgebra};
use toroidalkit::exactlin::{int, intmat, rank, rat, rref, span_contains, ExactMatrix, Rational, SparseVec};
use toroidalkit::maptoroidal::{MapElement, MapToroidal, TriangularData};
use toroidalkit::reps::{build_gln_rep, build_irrep_g, exterior_power, k_subsets, HighestWeight};
use toroidalkit::sampling::{random_b, random_homogeneous, rng, SampleRng};
use toroidalkit::tensormod::{DeRhamComplex, ModuleVector, WeightWindow};
use toroidalkit::toroidal::{canon_kahler, AlgElement, BasisSymbol, CocycleSpec, Degree, GAlgebra, Toroidal};

fn tau(mu1: i64, mu2: i64) -> Toroidal {
    Toroidal::new(3, GAlgebra::sl2(), CocycleSpec::from_ints(mu1, mu2)).unwrap()
}

fn cocycle() -> impl Strategy<Value = (i64, i64)> {
    prop_oneof![Just((0, 0)), Just((1, 0)), Just((0, 1)), Just((2, -3))]
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r))
}

fn rows_of(m: &[Vec<i64>]) -> Vec<SparseVec<usize>> {
    m.iter().map(|r| SparseVec::from_pairs(r.iter().enumerate().map(|(j, &x)| (j, int(x))))).collect()
}

/// A unimodular 3x3 matrix as a product of elementary moves.
fn unimodular(rng: &mut SampleRng) -> Vec<Vec<i64>> {
    let mut c = intmat::identity(3);
    for _ in 0..4 {
        let (i, j) = (rng.gen_range(0..3), rng.gen_range(0..3));
        if i == j {
            continue;
        }
        let f = rng.gen_range(-2..=2);
        for k in 0..3 {
            c[i][k] += f * c[j][k];
        }
    }
    c
}

fn random_kahler(rng: &mut SampleRng) -> AlgElement {
    let m = Degree((0..3).map(|_| rng.gen_range(-2..=2)).collect());
    let raw = AlgElement::from_pairs((0..3).map(|i| (BasisSymbol::Kahler(i, m.clone()), int(rng.gen_range(-3..=3)))));
    canon_kahler(&raw)
}

/// Weyl dimension formula for `sl_{r+1}` from the positive roots `e_i - e_j`.
fn weyl_dim(lam: &[i64]) -> usize {
    let mut q = Rational::one();
    for i in 0..lam.len() {
        for j in i + 1..=lam.len() {
            let s: i64 = (i..j).map(|k| lam[k] + 1).sum();
            q *= rat(s, (j - i) as i64);
        }
    }
    q.to_integer().try_into().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // -- exact linear algebra --

    #[test]
    fn rref_is_idempotent(m in small_matrix()) {
        let r = rref(&ExactMatrix::from_rows(rows_of(&m)));
        let again = rref(&ExactMatrix::from_rows(r.row_basis.clone()));
        prop_assert_eq!(&again.row_basis, &r.row_basis);
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in small_matrix()) {
        let rows = rows_of(&m);
        let cols: Vec<usize> = (0..m[0].len()).collect();
        let r = rref(&ExactMatrix::with_columns(cols.clone(), rows.clone()));
        prop_assert_eq!(r.rank + r.kernel_basis.len(), cols.len());
        for k in &r.kernel_basis {
            for row in &rows {
                prop_assert!(row.dot(k).is_zero());
            }
        }
    }

    #[test]
    fn rank_ignores_row_order(m in small_matrix(), shift in 0usize..6) {
        let rows = rows_of(&m);
        let mut rotated = rows.clone();
        rotated.rotate_left(shift % rows.len());
        rotated.reverse();
        prop_assert_eq!(rank(&rows), rank(&rotated));
    }

    // -- toroidal algebra --

    #[test]
    fn bracket_is_antisymmetric_and_graded(phi in cocycle(), seed in any::<u64>()) {
        let t = tau(phi.0, phi.1);
        let mut r = rng(seed);
        let x = random_homogeneous(&mut r, &t, -3, 3, false);
        let y = random_homogeneous(&mut r, &t, -3, 3, false);
        let xy = t.bracket(&x, &y).unwrap();
        prop_assert!(xy.add(&t.bracket(&y, &x).unwrap()).is_zero());
        if !xy.is_zero() {
            let want = t.degree(&x).unwrap().add(&t.degree(&y).unwrap());
            prop_assert_eq!(t.degree(&xy), Some(want));
        }
    }

    #[test]
    fn jacobi_holds(phi in cocycle(), seed in any::<u64>()) {
        let t = tau(phi.0, phi.1);
        let mut r = rng(seed);
        let x = random_homogeneous(&mut r, &t, -3, 3, false);
        let y = random_homogeneous(&mut r, &t, -3, 3, false);
        let z = random_homogeneous(&mut r, &t, -3, 3, false);
        prop_assert!(t.jacobi_defect(&x, &y, &z).unwrap().is_zero());
    }

    #[test]
    fn canon_kahler_is_idempotent_and_linear(seed in any::<u64>(), a in -3i64..=3, b in -3i64..=3) {
        let mut r = rng(seed);
        let m = Degree((0..3).map(|_| r.gen_range(-2..=2)).collect());
        let raw = |r: &mut SampleRng| AlgElement::from_pairs((0..3).map(|i| (BasisSymbol::Kahler(i, m.clone()), int(r.gen_range(-3..=3)))));
        let (p, q) = (raw(&mut r), raw(&mut r));
        let cp = canon_kahler(&p);
        prop_assert_eq!(canon_kahler(&cp), cp.clone());
        let mut comb = p.scaled(&int(a));
        comb.add_scaled(&q, &int(b));
        let mut want = cp.scaled(&int(a));
        want.add_scaled(&canon_kahler(&q), &int(b));
        prop_assert_eq!(canon_kahler(&comb), want);
    }

    #[test]
    fn coordinate_change_preserves_brackets(phi in cocycle(), seed in any::<u64>()) {
        let t = tau(phi.0, phi.1);
        let mut r = rng(seed);
        let c = unimodular(&mut r);
        let x = random_homogeneous(&mut r, &t, -2, 2, false);
        let y = random_homogeneous(&mut r, &t, -2, 2, false);
        let lhs = t.coordinate_change(&c, &t.bracket(&x, &y).unwrap()).unwrap();
        let rhs = t.bracket(&t.coordinate_change(&c, &x).unwrap(), &t.coordinate_change(&c, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_embed_preserves_brackets(seed in any::<u64>()) {
        let t = tau(0, 0);
        let mut r = rng(seed);
        let alphas = vec![Degree(vec![1, 1, 0]), Degree(vec![0, 1, 0]), Degree(vec![0, 0, 1])];
        let x = random_homogeneous(&mut r, &t, -2, 2, true);
        let y = random_homogeneous(&mut r, &t, -2, 2, true);
        let lhs = t.phi_embed(&alphas, &t.bracket(&x, &y).unwrap()).unwrap();
        let rhs = t.bracket(&t.phi_embed(&alphas, &x).unwrap(), &t.phi_embed(&alphas, &y).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn kahler_elements_are_central_for_loops_and_kahler(phi in cocycle(), seed in any::<u64>()) {
        let t = tau(phi.0, phi.1);
        let mut r = rng(seed);
        let k = random_kahler(&mut r);
        let m = Degree((0..3).map(|_| r.gen_range(-2..=2)).collect());
        let x = t.loop_elem(r.gen_range(0..3), &m);
        prop_assert!(t.bracket(&k, &x).unwrap().is_zero());
        prop_assert!(t.bracket(&k, &random_kahler(&mut r)).unwrap().is_zero());
    }

    // -- coefficient algebras --

    #[test]
    fn coefficient_product_is_commutative_and_associative(seed in any::<u64>()) {
        let b = CoeffAlgebra::univariate_quotient(&parse_polynomial("s^3 - s").unwrap()).unwrap();
        let mut r = rng(seed);
        let (x, y, z) = (random_b(&mut r, &b), random_b(&mut r, &b), random_b(&mut r, &b));
        prop_assert_eq!(b.mul(&x, &y), b.mul(&y, &x));
        prop_assert_eq!(b.mul(&b.mul(&x, &y), &z), b.mul(&x, &b.mul(&y, &z)));
    }

    #[test]
    fn points_are_multiplicative_and_kernels_are_ideals(seed in any::<u64>()) {
        let b = CoeffAlgebra::univariate_quotient(&parse_polynomial("s^3 - s").unwrap()).unwrap();
        let mut r = rng(seed);
        let (x, y) = (random_b(&mut r, &b), random_b(&mut r, &b));
        let points = b.points_of().unwrap();
        prop_assert_eq!(points.len(), 3);
        for p in &points {
            prop_assert_eq!(p.eval(&b.mul(&x, &y)), p.eval(&x) * p.eval(&y));
            let ideal = b.ideal_of_point(p);
            for m in &ideal {
                prop_assert!(span_contains(&ideal, &b.mul(&x, m)));
            }
        }
    }

    // -- map algebras --

    #[test]
    fn map_bracket_satisfies_jacobi_and_respects_the_splitting(seed in any::<u64>()) {
        let b = CoeffAlgebra::univariate_quotient(&parse_polynomial("s^2").unwrap()).unwrap();
        let mt = MapToroidal::new(tau(1, 1), b);
        let mut r = rng(seed);
        let el = |r: &mut SampleRng| {
            let x = random_homogeneous(r, mt.tau(), -2, 2, false);
            let c = random_b(r, mt.coeffs());
            mt.tensor(&x, &c)
        };
        let (x, y, z) = (el(&mut r), el(&mut r), el(&mut r));
        prop_assert!(mt.jacobi_defect(&x, &y, &z).unwrap().is_zero());
        let tri = TriangularData::new(Degree(vec![1, 1, 0]), vec![Degree(vec![0, 1, 0]), Degree(vec![0, 0, 1])]).unwrap();
        let (_, x0, xp) = tri.beta_split(&x);
        let (_, y0, yp) = tri.beta_split(&y);
        let pp = mt.bracket_map(&xp, &yp).unwrap();
        let (m1, z1, _) = tri.beta_split(&pp);
        prop_assert!(m1.is_zero() && z1.is_zero());
        let zz = mt.bracket_map(&x0, &y0).unwrap();
        let (m2, _, p2) = tri.beta_split(&zz);
        prop_assert!(m2.is_zero() && p2.is_zero());
    }

    #[test]
    fn central_elements_commute(seed in any::<u64>()) {
        let b = CoeffAlgebra::univariate_quotient(&parse_polynomial("s^2 - 3s + 2").unwrap()).unwrap();
        let mt = MapToroidal::new(tau(2, -3), b);
        let mut r = rng(seed);
        let c: MapElement = MapElement::from_pairs((0..3).map(|i| ((BasisSymbol::Kahler(i, Degree::zero(3)), r.gen_range(0..2)), int(r.gen_range(-2..=2)))));
        prop_assert!(mt.is_central(&c));
        for _ in 0..10 {
            let x = random_homogeneous(&mut r, mt.tau(), -2, 2, false);
            let y = mt.tensor(&x, &random_b(&mut r, mt.coeffs()));
            prop_assert!(mt.bracket_map(&c, &y).unwrap().is_zero());
        }
    }

    // -- de Rham --

    #[test]
    fn derham_square_vanishes_and_intertwines(a in (-5i64..=5, 1i64..=6), seed in any::<u64>()) {
        let t = tau(0, 0);
        let alpha = vec![rat(a.0, a.1), rat(1, 2), int(0)];
        let complex = DeRhamComplex::new(&t, alpha).unwrap();
        let mut r = rng(seed);
        let deg = Degree((0..3).map(|_| r.gen_range(-2..=2)).collect());
        for k in 0..3 {
            let src = complex.forms(k);
            let basis = src.fiber_basis(&deg);
            let v = ModuleVector::unit(basis[r.gen_range(0..basis.len())].clone());
            if k < 2 {
                prop_assert!(complex.d(k + 1, &complex.d(k, &v).unwrap()).unwrap().is_zero());
            }
            let m = Degree((0..3).map(|_| r.gen_range(-1..=1)).collect());
            let w = t.der(r.gen_range(0..3), &m);
            let lhs = complex.d(k, &src.act(&w, &v).unwrap()).unwrap();
            let rhs = complex.forms(k + 1).act(&w, &complex.d(k, &v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

// -- representations (exhaustive at these sizes) --

#[test]
fn irreps_match_weyl_dimensions_and_satisfy_the_axioms() {
    let sl2 = Arc::new(GAlgebra::sl2());
    let sl3 = Arc::new(GAlgebra::sl3());
    let cases: Vec<(Arc<GAlgebra>, Vec<i64>)> =
        (0..5).map(|a| (sl2.clone(), vec![a])).chain([[1, 0], [0, 1], [1, 1], [2, 0], [2, 1]].map(|l| (sl3.clone(), l.to_vec()))).collect();
    for (g, lam) in cases {
        let rep = build_irrep_g(g, &HighestWeight::new(lam.clone()).unwrap()).unwrap();
        assert_eq!(rep.dim(), weyl_dim(&lam), "{lam:?}");
        for x in 0..rep.generator_count() {
            for y in 0..rep.generator_count() {
                for v in 0..rep.dim() {
                    assert!(rep.rep_axiom_defect(x, y, &SparseVec::unit(v)).is_zero());
                }
            }
        }
    }
}

#[test]
fn identity_acts_by_c() {
    for (n, lam) in [(2, vec![1]), (3, vec![1, 0]), (3, vec![0, 2])] {
        let c = rat(-2, 5);
        let rep = build_gln_rep(n, &c, &HighestWeight::new(lam.clone()).unwrap()).unwrap();
        assert_eq!(rep.dim(), weyl_dim(&lam));
        for v in 0..rep.dim() {
            let mut sum = SparseVec::new();
            for i in 0..n {
                sum.add_scaled(&rep.e(i, i, &SparseVec::unit(v)), &Rational::one());
            }
            assert_eq!(sum, SparseVec::unit(v).scaled(&c));
        }
    }
}

#[test]
fn exterior_powers_have_subset_weights() {
    for n in 1..=4 {
        for k in 0..=n {
            let rep = exterior_power(n, k).unwrap();
            let subsets = k_subsets(n, k);
            let binom = (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1));
            assert_eq!(rep.dim(), binom);
            assert_eq!(subsets.len(), binom);
            for (b, s) in subsets.iter().enumerate() {
                let ind = |i: usize| i64::from(s.contains(&i));
                let want: Vec<i64> = (0..n - 1).map(|i| ind(i) - ind(i + 1)).collect();
                assert_eq!(rep.weight(b), want.as_slice(), "n = {n}, subset {s:?}");
            }
        }
    }
}

#[test]
fn derham_fiber_ranks_at_a_special_shift() {
    // α = 0: the fiber at r = 0 is killed, every other fiber is exact.
    let t = tau(0, 0);
    let complex = DeRhamComplex::new(&t, vec![int(0); 3]).unwrap();
    let w = WeightWindow::cube(3, -1, 1).unwrap();
    let f = toroidalkit::suites::derham_exactness(&complex, &w).unwrap();
    assert!(f.passed, "{f:?}");
    assert_eq!(toroidalkit::suites::derham_ranks(&complex, &Degree::zero(3)).unwrap(), vec![0, 0, 0]);
}

#[test]
fn coefficient_units() {
    let b = CoeffAlgebra::univariate_quotient(&parse_polynomial("s^2 - 3s + 2").unwrap()).unwrap();
    let mut r = rng(5);
    for _ in 0..20 {
        let x = random_b(&mut r, &b);
        assert_eq!(b.mul(&b.unit(), &x), x);
    }
}
