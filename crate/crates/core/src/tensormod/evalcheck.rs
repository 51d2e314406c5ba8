//! Checks that an evaluation module factors through its point `ψ`.

use rand::Rng;

use super::{ModuleVector, TensorModule, WeightWindow};
use crate::error::{Error, Result};
use crate::report::Finding;
use crate::sampling::{self, random_b, random_homogeneous};
use crate::toroidal::{canonical_kahler_term, AlgElement, Degree};

/// Kähler generators `t^m K_i` for `m ∈ {0, ±e_j}` (restricted to the acting subalgebra).
pub(crate) fn kahler_probes(m: &TensorModule) -> Vec<AlgElement> {
    let n = m.tau().n();
    let first = usize::from(m.is_ring());
    let mut degrees = vec![Degree::zero(n)];
    for j in first..n {
        degrees.push(Degree::unit(n, j));
        degrees.push(Degree::unit(n, j).neg());
    }
    let mut out = Vec::new();
    for d in &degrees {
        for i in 0..n {
            let k = canonical_kahler_term(i, d);
            if !k.is_zero() {
                out.push(k);
            }
        }
    }
    out
}

/// Verifies, for an evaluation module:
/// * `X(b) v = ψ(b) X v` on `samples` random `(X, b, v)`;
/// * `X(m) v = 0` for every `m` in a basis of `ker ψ`, every scan generator and
///   Kähler probe `X`, and every basis vector of every fiber in the window;
/// * `t^m K_i(b) v = 0` for every basis element `b`, Kähler probe and fiber vector.
pub fn evaluation_factorization_check(m: &TensorModule, window: &WeightWindow, samples: usize, seed: u64) -> Result<Finding> {
    let psi = m.spec().psi.clone().ok_or_else(|| Error::Config("module has no evaluation point".into()))?;
    let mt = m.map_algebra().ok_or_else(|| Error::Config("module has no coefficient algebra".into()))?;
    let b_alg = mt.coeffs();
    let tau = m.tau();
    let points = window.points();
    if window.dim() != m.lattice_rank() {
        return Err(Error::Dimension(format!("window needs {} coordinates", m.lattice_rank())));
    }

    let mut rng = sampling::rng(seed);
    for _ in 0..samples {
        let x = random_homogeneous(&mut rng, tau, -2, 2, m.is_ring());
        let b = random_b(&mut rng, b_alg);
        let r = &points[rng.gen_range(0..points.len())];
        let basis = m.fiber_basis(r);
        let v = ModuleVector::unit(basis[rng.gen_range(0..basis.len())].clone());
        let lhs = m.act_map(&mt.tensor(&x, &b), &v)?;
        let rhs = m.act(&x, &v)?.scaled(&psi.eval(&b));
        if lhs != rhs {
            return Ok(Finding::fail(
                "X(b) v differs from psi(b) X v",
                format!("X = {}, b = {}, v = {}", tau.render(&x), b_alg.render(&b), m.key_name(v.first_key().expect("unit"))),
            ));
        }
    }

    let ideal = b_alg.ideal_of_point(&psi);
    let mut probes = m.scan_generators();
    probes.extend(kahler_probes(m));
    let mut ideal_checks = 0usize;
    for r in &points {
        for key in m.fiber_basis(r) {
            let v = ModuleVector::unit(key.clone());
            for x in &probes {
                for mm in &ideal {
                    ideal_checks += 1;
                    let out = m.act_map(&mt.tensor(x, mm), &v)?;
                    if !out.is_zero() {
                        return Ok(Finding::fail(
                            "an element of tau(ker psi) acts nontrivially",
                            format!("X = {}, b = {}, v = {}", tau.render(x), b_alg.render(mm), m.key_name(&key)),
                        ));
                    }
                }
            }
        }
    }

    let kahler = kahler_probes(m);
    let mut central_checks = 0usize;
    for r in &points {
        for key in m.fiber_basis(r) {
            let v = ModuleVector::unit(key.clone());
            for k in &kahler {
                for j in 0..b_alg.dim() {
                    central_checks += 1;
                    let out = m.act_map(&mt.tensor(k, &b_alg.basis(j)), &v)?;
                    if !out.is_zero() {
                        return Ok(Finding::fail(
                            "a Kähler element acts nontrivially",
                            format!("X = {}, b = {}, v = {}", tau.render(k), b_alg.labels()[j], m.key_name(&key)),
                        ));
                    }
                }
            }
        }
    }
    Ok(Finding::pass(format!(
        "{samples} sampled factorizations, {} ideal actions over {} fibers ({} ideal basis elements), {central_checks} Kähler actions: all exact",
        ideal_checks,
        points.len(),
        ideal.len()
    )))
}
