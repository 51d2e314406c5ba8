//! Verification suites: seeded and exhaustive checks over the algebra, the
//! tensor modules, the de Rham complex and the Verma quotients.
//!
//! Every check returns a [`Finding`]; failures carry the offending inputs in
//! the same textual form the configuration parser accepts.

use num::Zero;
use rand::Rng;

use crate::error::Result;
use crate::exactlin::int;
use crate::report::Finding;
use crate::sampling::{self, random_b, random_homogeneous};
use crate::tensormod::{weight_name, DeRhamComplex, ModuleVector, TensorModule, WeightWindow};
use crate::toroidal::{canon_kahler, AlgElement, BasisSymbol, CentralTerm, Degree, Toroidal};
use crate::verma::VermaModule;

fn triple(tau: &Toroidal, x: &AlgElement, y: &AlgElement, z: &AlgElement) -> String {
    format!("x = {}; y = {}; z = {}", tau.render(x), tau.render(y), tau.render(z))
}

/// `[x,y] = -[y,x]` on seeded homogeneous pairs with degrees in `[lo,hi]^n`.
pub fn antisymmetry(tau: &Toroidal, samples: usize, seed: u64, lo: i64, hi: i64) -> Result<Finding> {
    let mut rng = sampling::rng(seed);
    for _ in 0..samples {
        let x = random_homogeneous(&mut rng, tau, lo, hi, false);
        let y = random_homogeneous(&mut rng, tau, lo, hi, false);
        let s = tau.bracket(&x, &y)?.add(&tau.bracket(&y, &x)?);
        if !s.is_zero() {
            return Ok(Finding::fail(
                format!("[x,y] + [y,x] = {}", tau.render(&s)),
                format!("x = {}; y = {}", tau.render(&x), tau.render(&y)),
            ));
        }
    }
    Ok(Finding::pass(format!("{samples} pairs with degrees in [{lo},{hi}]^{}", tau.n())))
}

/// Zero Jacobi defect on seeded homogeneous triples.
pub fn jacobi(tau: &Toroidal, samples: usize, seed: u64, lo: i64, hi: i64) -> Result<Finding> {
    let mut rng = sampling::rng(seed);
    for _ in 0..samples {
        let x = random_homogeneous(&mut rng, tau, lo, hi, false);
        let y = random_homogeneous(&mut rng, tau, lo, hi, false);
        let z = random_homogeneous(&mut rng, tau, lo, hi, false);
        let d = tau.jacobi_defect(&x, &y, &z)?;
        if !d.is_zero() {
            return Ok(Finding::fail(format!("Jacobi defect {}", tau.render(&d)), triple(tau, &x, &y, &z)));
        }
    }
    Ok(Finding::pass(format!("{samples} triples with degrees in [{lo},{hi}]^{}, defect exactly zero", tau.n())))
}

/// `[τ_m, τ_k] ⊆ τ_{m+k}` on seeded pairs.
pub fn grading(tau: &Toroidal, samples: usize, seed: u64, lo: i64, hi: i64) -> Result<Finding> {
    let mut rng = sampling::rng(seed);
    for _ in 0..samples {
        let x = random_homogeneous(&mut rng, tau, lo, hi, false);
        let y = random_homogeneous(&mut rng, tau, lo, hi, false);
        let b = tau.bracket(&x, &y)?;
        if b.is_zero() {
            continue;
        }
        let want = tau.degree(&x).expect("homogeneous").add(&tau.degree(&y).expect("homogeneous"));
        if tau.degree(&b) != Some(want.clone()) {
            return Ok(Finding::fail(
                format!("bracket is not homogeneous of degree {want}"),
                format!("x = {}; y = {}", tau.render(&x), tau.render(&y)),
            ));
        }
    }
    Ok(Finding::pass(format!("{samples} brackets land in the sum of degrees")))
}

/// `Σ m_i t^m K_i` reduces to zero for every `m` in `[lo,hi]^n`.
pub fn kahler_relation(tau: &Toroidal, lo: i64, hi: i64) -> Result<Finding> {
    let n = tau.n();
    let window = WeightWindow::cube(n, lo, hi)?;
    let points = window.points();
    for m in &points {
        let raw = AlgElement::from_pairs((0..n).map(|i| (BasisSymbol::Kahler(i, m.clone()), int(m.get(i)))));
        let c = canon_kahler(&raw);
        if !c.is_zero() {
            return Ok(Finding::fail(format!("Σ m_i t^m K_i reduces to {}", tau.render(&c)), format!("m = {m}")));
        }
    }
    Ok(Finding::pass(format!("{} degrees in [{lo},{hi}]^{n}", points.len())))
}

/// Dropping `⟨x,y⟩` from the central term must break Jacobi on the triple
/// `(h ⊗ t^{e1}, e ⊗ t^{-e1}, f)` built from the first simple root.
pub fn negative_control(tau: &Toroidal) -> Result<Finding> {
    let Some(s) = tau.g().simple().first().copied() else {
        return Ok(Finding::fail("no simple root to build the witness triple from", "g has no sl2-triple"));
    };
    let n = tau.n();
    let e1 = Degree::unit(n, 0);
    let x = tau.loop_elem(s.h, &e1);
    let y = tau.loop_elem(s.e, &e1.neg());
    let z = tau.loop_elem(s.f, &Degree::zero(n));
    let good = tau.clone().with_central_term(CentralTerm::WithForm);
    let bad = tau.clone().with_central_term(CentralTerm::WithoutForm);
    let ok = good.jacobi_defect(&x, &y, &z)?;
    let broken = bad.jacobi_defect(&x, &y, &z)?;
    if !ok.is_zero() {
        return Ok(Finding::fail(format!("correct bracket has defect {}", tau.render(&ok)), triple(tau, &x, &y, &z)));
    }
    if broken.is_zero() {
        return Ok(Finding::fail("bracket without the form factor still satisfies Jacobi on the witness", triple(tau, &x, &y, &z)));
    }
    Ok(Finding::pass(format!("without the form factor the witness has defect {}", tau.render(&broken))))
}

fn random_vector(rng: &mut sampling::SampleRng, m: &TensorModule, points: &[Degree]) -> ModuleVector {
    let r = &points[rng.gen_range(0..points.len())];
    let basis = m.fiber_basis(r);
    ModuleVector::unit(basis[rng.gen_range(0..basis.len())].clone())
}

/// `[x,y]v = x(yv) - y(xv)` on seeded `(x, y, v)`; over `τ(B)` when the
/// module has a coefficient algebra.
pub fn module_axiom(m: &TensorModule, window: &WeightWindow, samples: usize, seed: u64) -> Result<Finding> {
    let tau = m.tau();
    let points = window.points();
    let mut rng = sampling::rng(seed);
    let mt = m.map_algebra();
    for _ in 0..samples {
        let x = random_homogeneous(&mut rng, tau, -2, 2, m.is_ring());
        let y = random_homogeneous(&mut rng, tau, -2, 2, m.is_ring());
        let v = random_vector(&mut rng, m, &points);
        let (defect, inputs) = match &mt {
            Some(mt) => {
                let (a, b) = (random_b(&mut rng, mt.coeffs()), random_b(&mut rng, mt.coeffs()));
                let (xb, yb) = (mt.tensor(&x, &a), mt.tensor(&y, &b));
                (m.module_axiom_defect_map(&xb, &yb, &v)?, format!("x = {}; y = {}", mt.render(&xb), mt.render(&yb)))
            }
            None => (m.module_axiom_defect(&x, &y, &v)?, format!("x = {}; y = {}", tau.render(&x), tau.render(&y))),
        };
        if !defect.is_zero() {
            return Ok(Finding::fail(format!("module axiom defect {}", m.render(&defect)), format!("{inputs}; v = {}", m.render(&v))));
        }
    }
    Ok(Finding::pass(format!("{samples} triples, defect exactly zero")))
}

/// Every weight met in the window has multiplicity `dim V1 · dim V2`.
pub fn weight_table(m: &TensorModule, window: &WeightWindow) -> Result<Finding> {
    let table = m.weight_table(window)?;
    let expected = m.fiber_dim();
    if let Some((w, d)) = table.iter().find(|(_, &d)| d != expected) {
        return Ok(Finding::fail(format!("weight space of dimension {d}, expected {expected}"), format!("weight = {}", weight_name(w))));
    }
    Ok(Finding::pass(format!("{} weights, each of dimension {expected}", table.len())))
}

/// `d_{k+1} d_k = 0` on every basis vector of every fiber in the window.
pub fn derham_square(complex: &DeRhamComplex, window: &WeightWindow) -> Result<Finding> {
    let n = complex.n();
    let mut count = 0usize;
    for k in 0..n.saturating_sub(1) {
        let forms = complex.forms(k);
        for r in window.points() {
            for key in forms.fiber_basis(&r) {
                let v = ModuleVector::unit(key);
                let dd = complex.d(k + 1, &complex.d(k, &v)?)?;
                count += 1;
                if !dd.is_zero() {
                    return Ok(Finding::fail(format!("d_{} d_{k} is nonzero", k + 1), format!("k = {k}; v = {}", forms.render(&v))));
                }
            }
        }
    }
    Ok(Finding::pass(format!("{count} basis forms")))
}

/// The generators used for the intertwining check: the module scan family
/// plus `t^m d_j` for every `m` in `[-bound, bound]^n`.
fn witt_probes(tau: &Toroidal, forms: &TensorModule, bound: i64) -> Result<Vec<AlgElement>> {
    let mut out = forms.scan_generators();
    for m in WeightWindow::cube(tau.n(), -bound, bound)?.points() {
        for j in 0..tau.n() {
            out.push(tau.der(j, &m));
        }
    }
    Ok(out)
}

/// `d_k (X v) = X (d_k v)` for probe generators `X` and every basis form in the window.
pub fn derham_intertwines(tau: &Toroidal, complex: &DeRhamComplex, window: &WeightWindow, bound: i64) -> Result<Finding> {
    let n = complex.n();
    let mut count = 0usize;
    for k in 0..n {
        let (src, dst) = (complex.forms(k), complex.forms(k + 1));
        let probes = witt_probes(tau, src, bound)?;
        for r in window.points() {
            for key in src.fiber_basis(&r) {
                let v = ModuleVector::unit(key);
                let dv = complex.d(k, &v)?;
                for x in &probes {
                    let lhs = complex.d(k, &src.act(x, &v)?)?;
                    let rhs = dst.act(x, &dv)?;
                    count += 1;
                    if lhs != rhs {
                        return Ok(Finding::fail(
                            format!("d_{k} does not commute with the generator"),
                            format!("k = {k}; x = {}; v = {}", tau.render(x), src.render(&v)),
                        ));
                    }
                }
            }
        }
    }
    Ok(Finding::pass(format!("{count} commutations with generators of degree in [-{bound},{bound}]^{n}")))
}

/// Ranks of `d_0, …, d_{n-1}` on the fiber at `r`.
pub fn derham_ranks(complex: &DeRhamComplex, r: &Degree) -> Result<Vec<usize>> {
    (0..complex.n()).map(|k| Ok(complex.image_fiber(k, r)?.len())).collect()
}

/// Fiberwise exactness: `ker d_{k+1} = im d_k`, `d_0` injective and `d_{n-1}`
/// onto away from the fiber where `α + r = 0`, which is killed entirely.
/// Reports the rank tuple of the generic fibers.
pub fn derham_exactness(complex: &DeRhamComplex, window: &WeightWindow) -> Result<Finding> {
    let n = complex.n();
    let mut generic: Option<Vec<usize>> = None;
    for r in window.points() {
        let ranks = derham_ranks(complex, &r)?;
        let special = complex.alpha().iter().enumerate().all(|(i, a)| (a + int(r.get(i))).is_zero());
        if special {
            if ranks.iter().any(|&x| x != 0) {
                return Ok(Finding::fail(format!("d is nonzero on the fiber where α + r = 0, ranks {ranks:?}"), format!("r = {r}")));
            }
            continue;
        }
        let dims: Vec<usize> = (0..=n).map(|k| complex.forms(k).fiber_dim()).collect();
        if ranks[0] != dims[0] || ranks[n - 1] != dims[n] {
            return Ok(Finding::fail(format!("ends of the complex are not exact, ranks {ranks:?}"), format!("r = {r}")));
        }
        for k in 0..n - 1 {
            if dims[k + 1] - ranks[k + 1] != ranks[k] {
                return Ok(Finding::fail(format!("homology at degree {} is nonzero, ranks {ranks:?}", k + 1), format!("r = {r}")));
            }
        }
        match &generic {
            None => generic = Some(ranks),
            Some(g) if *g != ranks => {
                return Ok(Finding::fail(format!("rank tuple {ranks:?} differs from {g:?}"), format!("r = {r}")));
            }
            _ => {}
        }
    }
    let tuple = generic.map(|g| format!("({})", g.iter().map(usize::to_string).collect::<Vec<_>>().join(","))).unwrap_or_else(|| "none".into());
    Ok(Finding::pass(format!("every fiber exact, image ranks {tuple}")))
}

/// `X v = 0` for every raising generator and every level-0 basis vector.
pub fn verma_highest_weight(v: &VermaModule) -> Result<Finding> {
    let mut count = 0usize;
    for ((level, w), _) in v.quotient_dims() {
        if level != 0 {
            continue;
        }
        for key in v.basis_keys(0, &w) {
            count += 1;
            if !v.hw_vector_check(&key)? {
                return Ok(Finding::fail("a raising generator acts nontrivially on level 0", format!("v = {}", v.key_name(&key))));
            }
        }
    }
    Ok(Finding::pass(format!("{count} level-0 vectors killed by {}", v.raising_description())))
}

/// Quotient fiber dimensions, with level 0 equal to the inducing fibers.
pub fn verma_dims(v: &VermaModule) -> Finding {
    let dims = v.quotient_dims();
    let fiber = v.inducing_module().fiber_dim();
    if let Some(((_, w), d)) = dims.iter().find(|((l, _), d)| *l == 0 && **d != fiber) {
        return Finding::fail(format!("level-0 fiber of dimension {d}, expected {fiber}"), format!("w = {w}"));
    }
    let mut per_level: Vec<(usize, usize, usize)> = Vec::new();
    for ((l, _), d) in &dims {
        match per_level.last_mut() {
            Some((pl, lo, hi)) if pl == l => {
                *lo = (*lo).min(*d);
                *hi = (*hi).max(*d);
            }
            _ => per_level.push((*l, *d, *d)),
        }
    }
    let text: Vec<String> = per_level
        .iter()
        .map(|(l, lo, hi)| if lo == hi { format!("level {l}: {lo}") } else { format!("level {l}: {lo}..{hi}") })
        .collect();
    Finding::pass(format!("quotient fiber dimensions {}", text.join(", ")))
}

