//! Desk-scale cyclicity scans: does every vector regenerate the whole window?
//!
//! A scan starts from candidate vectors and closes them under a fixed set of
//! generators, discarding images that leave the window. If some candidate
//! fails to regenerate every fiber, the family it spans is reported as an
//! invariant family (within the window). Passing is evidence of
//! irreducibility, not a proof.
//!
//! Random candidates almost never lie in a proper submodule, so the scan
//! also tries eigenvectors of random combinations of "return" operators
//! `g2 g1` that leave the central fiber and come back: a proper invariant
//! family meets the central fiber in a subspace stable under all of them.

use std::collections::BTreeMap;

use num::complex::Complex64;
use num::{BigInt, One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{DeRhamComplex, ModKey, ModuleVector, TensorModule, WeightWindow};
use crate::error::{Error, Result};
use crate::exactlin::dense::{self, Mat};
use crate::exactlin::{int, rref, Echelon, ExactMatrix, Rational, SparseVec};
use crate::report::Finding;
use crate::toroidal::{AlgElement, Degree};

pub const EVIDENCE_NOTE: &str = "evidence within the window, not a proof of irreducibility";

/// What is being scanned: a whole module, or the image of `d_k` inside the `(k+1)`-forms.
#[derive(Clone, Copy)]
pub enum CyclicTarget<'a> {
    Module(&'a TensorModule),
    DeRhamImage { complex: &'a DeRhamComplex, k: usize },
}

impl CyclicTarget<'_> {
    pub fn ambient(&self) -> &TensorModule {
        match self {
            CyclicTarget::Module(m) => m,
            CyclicTarget::DeRhamImage { complex, k } => complex.forms(k + 1),
        }
    }

    fn fiber(&self, r: &Degree) -> Result<Vec<ModuleVector>> {
        match self {
            CyclicTarget::Module(m) => Ok(m.fiber_basis(r).into_iter().map(ModuleVector::unit).collect()),
            CyclicTarget::DeRhamImage { complex, k } => complex.image_fiber(*k, r),
        }
    }
}

#[derive(Clone, Debug)]
pub struct CyclicityReport {
    pub passed: bool,
    pub window: WeightWindow,
    pub random_candidates: usize,
    pub eigen_candidates: usize,
    pub target_dims: BTreeMap<Degree, usize>,
    /// First candidate that did not regenerate the window.
    pub witness: Option<ModuleVector>,
    /// Per-fiber basis of the family spanned from `witness`.
    pub invariant_family: Option<BTreeMap<Degree, Vec<ModuleVector>>>,
    /// Set when a generated vector left the target (the target itself is not invariant).
    pub escaped: Option<ModuleVector>,
}

impl CyclicityReport {
    pub fn finding(&self, module: &TensorModule) -> Finding {
        let scope = format!(
            "{} fibers, {} random + {} eigen candidates ({EVIDENCE_NOTE})",
            self.target_dims.len(),
            self.random_candidates,
            self.eigen_candidates
        );
        if let Some(v) = &self.escaped {
            return Finding::fail(format!("generated vector leaves the target; {scope}"), format!("v = {}", module.render(v)));
        }
        match (&self.witness, &self.invariant_family) {
            (Some(w), Some(fam)) => {
                let dims: Vec<String> = fam
                    .iter()
                    .filter(|(r, b)| b.len() < self.target_dims[*r])
                    .take(4)
                    .map(|(r, b)| format!("{r}: {} of {}", b.len(), self.target_dims[r]))
                    .collect();
                Finding::fail(
                    format!("proper invariant family found (fibers {}); {scope}", dims.join(", ")),
                    format!("v = {}", module.render(w)),
                )
            }
            _ => Finding::pass(format!("every candidate regenerates the window; {scope}")),
        }
    }
}

struct Generator {
    x: AlgElement,
    shift: Degree,
}

fn generators(m: &TensorModule) -> Vec<Generator> {
    m.scan_generators()
        .into_iter()
        .map(|x| {
            let deg = m.tau().degree(&x).expect("homogeneous generator");
            let shift = if m.is_ring() { Degree(deg.0[1..].to_vec()) } else { deg };
            Generator { x, shift }
        })
        .collect()
}

fn fiber_of(v: &ModuleVector) -> Option<Degree> {
    v.first_key().map(|k| k.0.clone())
}

/// Closure of `start` under the generators inside the window.
fn spin(
    m: &TensorModule,
    gens: &[Generator],
    window: &WeightWindow,
    start: &ModuleVector,
    target: &BTreeMap<Degree, Echelon<ModKey>>,
) -> Result<(BTreeMap<Degree, Vec<ModuleVector>>, Option<ModuleVector>)> {
    let mut spans: BTreeMap<Degree, Echelon<ModKey>> = BTreeMap::new();
    let mut kept: BTreeMap<Degree, Vec<ModuleVector>> = BTreeMap::new();
    let mut queue = vec![start.clone()];
    let r0 = fiber_of(start).expect("nonzero start");
    spans.entry(r0.clone()).or_default().insert(start.clone());
    kept.entry(r0).or_default().push(start.clone());
    while let Some(v) = queue.pop() {
        let r = fiber_of(&v).expect("nonzero");
        for g in gens {
            let rr = r.add(&g.shift);
            if !window.contains(&rr) {
                continue;
            }
            let w = m.act(&g.x, &v)?;
            if w.is_zero() {
                continue;
            }
            if !target[&rr].contains(&w) {
                return Ok((kept, Some(w)));
            }
            let ech = spans.entry(rr.clone()).or_default();
            if ech.rank() < target[&rr].rank() && ech.insert(w.clone()) {
                kept.entry(rr).or_default().push(w.clone());
                queue.push(w);
            }
        }
    }
    Ok((kept, None))
}

pub fn window_cyclicity_report(target: CyclicTarget<'_>, window: &WeightWindow, samples: usize, seed: u64) -> Result<CyclicityReport> {
    let m = target.ambient();
    if m.is_ring() {
        return Err(Error::Unsupported("cyclicity scans are implemented for modules over the full algebra".into()));
    }
    if window.dim() != m.lattice_rank() {
        return Err(Error::Dimension(format!("window needs {} coordinates", m.lattice_rank())));
    }
    let gens = generators(m);
    let points = window.points();
    let mut fibers: BTreeMap<Degree, Vec<ModuleVector>> = BTreeMap::new();
    let mut target_span: BTreeMap<Degree, Echelon<ModKey>> = BTreeMap::new();
    for r in &points {
        let basis = target.fiber(r)?;
        let mut ech = Echelon::new();
        for b in &basis {
            ech.insert(b.clone());
        }
        fibers.insert(r.clone(), basis);
        target_span.insert(r.clone(), ech);
    }
    let target_dims: BTreeMap<Degree, usize> = fibers.iter().map(|(r, b)| (r.clone(), b.len())).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut candidates: Vec<ModuleVector> = Vec::new();
    let nonempty: Vec<&Degree> = points.iter().filter(|r| !fibers[*r].is_empty()).collect();
    if !nonempty.is_empty() {
        for _ in 0..samples {
            let r = nonempty[rng.gen_range(0..nonempty.len())];
            let mut v = ModuleVector::new();
            while v.is_zero() {
                for b in &fibers[r] {
                    v.add_scaled(b, &int(rng.gen_range(-3..=3)));
                }
            }
            candidates.push(v);
        }
    }
    let random_candidates = candidates.len();
    let eigen = eigen_candidates(m, &gens, window, &fibers, &mut rng)?;
    let eigen_count = eigen.len();
    candidates.extend(eigen);

    let mut report = CyclicityReport {
        passed: true,
        window: window.clone(),
        random_candidates,
        eigen_candidates: eigen_count,
        target_dims: target_dims.clone(),
        witness: None,
        invariant_family: None,
        escaped: None,
    };
    for v in candidates {
        let (family, escaped) = spin(m, &gens, window, &v, &target_span)?;
        if escaped.is_some() {
            report.passed = false;
            report.escaped = escaped;
            report.witness = Some(v);
            return Ok(report);
        }
        let full = target_dims.iter().all(|(r, &d)| family.get(r).map_or(0, |b| b.len()) == d);
        if !full {
            let mut family = family;
            for r in &points {
                family.entry(r.clone()).or_default();
            }
            report.passed = false;
            report.witness = Some(v);
            report.invariant_family = Some(family);
            return Ok(report);
        }
    }
    Ok(report)
}

/// Eigenvectors with rational eigenvalues of random combinations of return operators on the central fiber.
fn eigen_candidates(
    m: &TensorModule,
    gens: &[Generator],
    window: &WeightWindow,
    fibers: &BTreeMap<Degree, Vec<ModuleVector>>,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<ModuleVector>> {
    let r0 = window.center();
    let basis = &fibers[&r0];
    let k = basis.len();
    if k == 0 {
        return Ok(Vec::new());
    }
    if k == 1 {
        return Ok(vec![basis[0].clone()]);
    }
    let mut coords: Echelon<ModKey> = Echelon::new();
    for b in basis {
        coords.insert(b.clone());
    }
    // matrices of the return operators in the fiber basis
    let mut ops: Vec<Mat> = Vec::new();
    for g1 in gens {
        let r1 = r0.add(&g1.shift);
        if !window.contains(&r1) {
            continue;
        }
        let images: Vec<ModuleVector> = basis.iter().map(|b| m.act(&g1.x, b)).collect::<Result<_>>()?;
        for g2 in gens.iter().filter(|g| g.shift == g1.shift.neg()) {
            let mut mat = dense::zeros(k, k);
            let mut ok = true;
            for (col, img) in images.iter().enumerate() {
                let back = m.act(&g2.x, img)?;
                match coords.coordinates(&back) {
                    Some(c) => {
                        for (row, x) in c.iter() {
                            mat[*row][col] = x.clone();
                        }
                    }
                    None => ok = false,
                }
            }
            if ok && !dense::is_zero(&mat) {
                ops.push(mat);
            }
        }
    }
    let mut out: Vec<ModuleVector> = Vec::new();
    for _ in 0..3 {
        let mut r = dense::zeros(k, k);
        for op in &ops {
            dense::add_scaled(&mut r, op, &int(rng.gen_range(1..=7)));
        }
        for lambda in rational_eigenvalues(&r) {
            let mut shifted = r.clone();
            dense::add_scaled(&mut shifted, &dense::identity(k), &-lambda);
            let rows: Vec<SparseVec<usize>> = shifted.iter().map(|row| SparseVec::from_pairs(row.iter().cloned().enumerate())).collect();
            let kernel = rref(&ExactMatrix::with_columns((0..k).collect(), rows)).kernel_basis;
            for kv in kernel {
                let mut v = ModuleVector::new();
                for (i, c) in kv.iter() {
                    v.add_scaled(&basis[*i], c);
                }
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
    }
    Ok(out)
}

/// Characteristic polynomial `det(xI - A)`, low degree first (Faddeev-LeVerrier).
pub fn char_poly(a: &Mat) -> Vec<Rational> {
    let n = a.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = dense::zeros(n, n);
    for k in 1..=n {
        let mut next = dense::mul(a, &mk);
        dense::add_scaled(&mut next, &dense::identity(n), &coeffs[n + 1 - k]);
        mk = next;
        coeffs[n - k] = -dense::trace(&dense::mul(a, &mk)) / int(k as i64);
    }
    coeffs
}

fn eval_poly(f: &[Rational], x: &Rational) -> Rational {
    f.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Continued-fraction convergents of `x` with denominators up to `max_den`.
fn convergents(x: f64, max_den: i64) -> Vec<Rational> {
    let mut out = Vec::new();
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut y = x;
    for _ in 0..40 {
        let a = y.floor();
        if !a.is_finite() || a.abs() > 1e12 {
            break;
        }
        let a = a as i64;
        let (h2, k2) = (a.saturating_mul(h1).saturating_add(h0), a.saturating_mul(k1).saturating_add(k0));
        if k2 > max_den || k2 <= 0 {
            break;
        }
        out.push(Rational::new(BigInt::from(h2), BigInt::from(k2)));
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
        let frac = y - a as f64;
        if frac.abs() < 1e-12 {
            break;
        }
        y = 1.0 / frac;
    }
    out
}

/// Rational eigenvalues of `a`, found numerically and confirmed exactly.
pub fn rational_eigenvalues(a: &Mat) -> Vec<Rational> {
    let f = char_poly(a);
    let deg = f.len() - 1;
    let fl: Vec<f64> = f.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
    let mut found: Vec<Rational> = Vec::new();
    let try_root = |q: Rational, found: &mut Vec<Rational>| {
        if !found.contains(&q) && eval_poly(&f, &q).is_zero() {
            found.push(q);
        }
    };
    try_root(Rational::zero(), &mut found);
    if deg == 0 || fl.iter().any(|x| !x.is_finite()) {
        return found;
    }
    // Durand-Kerner iteration on the monic polynomial
    let mut roots: Vec<Complex64> = (0..deg).map(|i| Complex64::new(0.4, 0.9).powu(i as u32)).collect();
    let p = |z: Complex64| fl.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c);
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    den *= roots[i] - roots[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-12, 0.0);
            }
            let step = p(roots[i]) / den;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    for z in roots {
        if z.im.abs() > 1e-6 * (1.0 + z.re.abs()) {
            continue;
        }
        for q in convergents(z.re, 1_000_000) {
            try_root(q, &mut found);
        }
    }
    found.sort();
    found
}
