//! Consistency checks on a computed quotient.

use rand::Rng;

use super::{degree_symbols, level_degree, m_part, IVec, QKey, QVector, VermaModule};
use crate::error::{Error, Result};
use crate::exactlin::Echelon;
use crate::maptoroidal::MapElement;
use crate::report::Finding;
use crate::sampling::{self, random_b};
use crate::toroidal::{BasisSymbol, Degree};

/// Outcome of one sampled `X(b) v = ψ(b) X v` comparison.
#[derive(Clone, Debug)]
pub struct EvaluationSample {
    pub element: String,
    pub vector: String,
    pub agrees: bool,
}

fn is_window_error(e: &Error) -> bool {
    matches!(e, Error::Window(_))
}

impl VermaModule {
    /// Degrees `(0, 0)` and `(0, ±e_i)` in standard coordinates.
    fn level_zero_degrees(&self) -> Vec<Degree> {
        let n = self.tau().n();
        let mut out = vec![Degree::zero(n)];
        for i in 1..n {
            out.push(Degree::unit(n, i));
            out.push(Degree::unit(n, i).neg());
        }
        out
    }

    /// Every candidate sits at the level and M-degree its parts predict, and
    /// every generator's image under `Φ` has the β-coordinate of its level.
    pub fn grading_check(&self) -> Finding {
        for (i, l) in self.levels.iter().enumerate() {
            let level = i as i64 + 1;
            for (w, f) in l {
                for &(y, q) in &f.candidates {
                    let (r, shift) = self.grading(y);
                    if r != q.0 as i64 - level || self.add(q.1, shift) != *w {
                        return Finding::fail("candidate placed in the wrong fiber", self.iname(y, &q));
                    }
                }
            }
        }
        let gens: Vec<BasisSymbol> = self.raising.iter().chain(self.lowering.iter().flatten()).map(|s| self.symbol(*s)).collect();
        for g in &gens {
            let img = self.to_actual.apply_symbol(g);
            for s in img.keys() {
                let (w, r) = self.tri.split_degree(s.degree());
                if r != g.degree().get(0) || w != m_part(g.degree()).0 {
                    return Finding::fail("generator degree does not match its splitting", self.tau().symbol_name(g));
                }
            }
        }
        Finding::pass(format!(
            "{} fibers over {} levels and {} generators graded consistently",
            self.levels.iter().map(|l| l.len()).sum::<usize>(),
            self.depth,
            gens.len()
        ))
    }

    /// `G · n ∈ N` for basis vectors `n` of `N` and level-preserving generators
    /// `G(b)` of M-degree `0, ±e_i` whose image fiber is in the window. At most
    /// `per_fiber` kernel vectors are tried in each fiber.
    pub fn n_invariance_check(&self, per_fiber: usize) -> Result<Finding> {
        let mut checked = 0usize;
        let mut skipped = 0usize;
        let dims = self.map.coeffs().dim() as u32;
        let probes: Vec<_> = self.level_zero_degrees().iter().flat_map(|m| degree_symbols(self.tau(), m)).map(|s| self.sym(&s)).collect();
        for (i, l) in self.levels.iter().enumerate() {
            let level = i + 1;
            let mut fibers: Vec<_> = l.iter().collect();
            fibers.sort_by_key(|(w, _)| self.degree_of(**w));
            for (w, f) in fibers {
                for kv in f.kernel.iter().take(per_fiber) {
                    for &g in &probes {
                        if !self.inside(self.add(*w, self.grading(g).1)) {
                            continue;
                        }
                        'coeff: for bi in 0..dims {
                            let mut out = IVec::new();
                            for (ci, c) in kv.iter() {
                                let (y, q) = f.candidates[*ci];
                                match self.product_i(g, bi, y, 0, q) {
                                    Ok(v) => out.add_scaled(&v, c),
                                    Err(e) if is_window_error(&e) => {
                                        skipped += 1;
                                        continue 'coeff;
                                    }
                                    Err(e) => return Err(e),
                                }
                            }
                            checked += 1;
                            if !out.is_zero() {
                                let n_name = kv.render_with(|ci| {
                                    let (y, q) = f.candidates[*ci];
                                    self.iname(y, &q)
                                });
                                return Ok(Finding::fail(
                                    format!("N is not stable at level {level}"),
                                    format!(
                                        "{}[{}] applied to {} gives {}",
                                        self.tau().symbol_name(&self.symbol(g)),
                                        self.map.coeffs().labels()[bi as usize],
                                        n_name,
                                        self.render(&self.qvec(&out))
                                    ),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(Finding::pass(format!("{checked} images of N under level-preserving generators vanish in the quotient ({skipped} left the window)")))
    }

    /// True when every recorded raising generator kills `k` in the quotient.
    pub fn hw_vector_check(&self, k: &QKey) -> Result<bool> {
        let ik = self.ikey(k);
        for &z in &self.raising {
            if k.0 >= 2 && !self.inside(self.add(ik.1, self.grading(z).1)) {
                continue;
            }
            for bi in 0..self.map.coeffs().dim() as u32 {
                if !self.act_i(z, bi, ik)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Level 0 is annihilated by `τ_m(B)` for every `m ≥ (k, …, k)`; checked for
    /// `m ∈ [k, k+1]^n` (original coordinates) on every level-0 fiber of the window.
    pub fn ghw_check(&self, k: i64) -> Result<Finding> {
        let n = self.tau().n();
        let mut degrees = vec![Vec::<i64>::new()];
        for _ in 0..n {
            degrees = degrees.into_iter().flat_map(|d| (k..=k + 1).map(move |x| [d.clone(), vec![x]].concat())).collect();
        }
        let mut count = 0usize;
        for w in self.window.points() {
            for key in self.basis_keys(0, &w) {
                let v = QVector::unit(key.clone());
                for m in &degrees {
                    let m = Degree(m.clone());
                    for s in degree_symbols(self.tau(), &m) {
                        for bi in 0..self.map.coeffs().dim() {
                            count += 1;
                            let x = MapElement::unit((s.clone(), bi));
                            let killed = match self.act_element(&x, &v) {
                                Ok(o) => o.is_zero(),
                                // the image left level 0 for a higher level, so it is not killed
                                Err(e) if is_window_error(&e) => false,
                                Err(e) => return Err(e),
                            };
                            if !killed {
                                return Ok(Finding::fail(
                                    format!("level 0 is not annihilated by all degrees >= ({k},...,{k})"),
                                    format!("{}[{}] . {}", self.tau().symbol_name(&s), self.map.coeffs().labels()[bi], self.key_name(&key)),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(Finding::pass(format!("{count} actions of degrees in [{k},{}]^{n} on level 0 vanish", k + 1)))
    }

    /// No nonzero quotient vector at level ≥ 1 is killed by the raising family:
    /// the signatures of each fiber's basis, recomputed, are independent.
    pub fn no_trivial_vector_check(&self) -> Result<Finding> {
        let mut vectors = 0usize;
        for (i, l) in self.levels.iter().enumerate() {
            let level = i + 1;
            let mut fibers: Vec<_> = l.iter().collect();
            fibers.sort_by_key(|(w, _)| self.degree_of(**w));
            for (w, f) in fibers {
                let mut ech = Echelon::new();
                for (bi, &ci) in f.basis.iter().enumerate() {
                    let (y, q) = f.candidates[ci];
                    vectors += 1;
                    if !ech.insert(self.signature_i(y, 0, q)?) {
                        return Ok(Finding::fail(
                            format!("a level {level} quotient vector is annihilated by the raising family"),
                            format!("combination involving {}", self.key_name(&(level, self.degree_of(*w), bi))),
                        ));
                    }
                }
            }
        }
        Ok(Finding::pass(format!("{vectors} quotient basis vectors at levels >= 1 have independent raising images")))
    }

    /// `X(b) v = ψ(b) X v` on `samples` random generators `X`, coefficients
    /// `b` and quotient basis vectors `v` (samples whose image leaves the
    /// computed region are redrawn), followed by `X(m) v = 0` for every `m` in
    /// a basis of `ker ψ`, every generator of β-degree `-1, 0, 1` and M-degree
    /// `0, ±e_i`, and every basis vector of the central fiber at each level.
    pub fn evaluation_property_check(&self, samples: usize, seed: u64) -> Result<Finding> {
        let mut rng = sampling::rng(seed);
        let b_alg = self.map.coeffs();
        let n = self.tau().n();
        let mut done = 0usize;
        let mut attempts = 0usize;
        let mut outside = 0usize;
        while done < samples {
            attempts += 1;
            if attempts > samples * 50 + 100 {
                return Err(Error::Window("too few samples land inside the computed region".into()));
            }
            let level = rng.gen_range(0..=self.depth);
            let pts = self.window.points();
            let w = pts[rng.gen_range(0..pts.len())].clone();
            let keys = self.basis_keys(level, &w);
            if keys.is_empty() {
                continue;
            }
            let key = keys[rng.gen_range(0..keys.len())].clone();
            let r = rng.gen_range(-1..=1i64);
            let target = level as i64 - r;
            if target < 0 || target as usize > self.depth {
                continue;
            }
            let dw = Degree((1..n).map(|_| rng.gen_range(-1..=1)).collect());
            if target >= 1 && !self.window.contains(&w.add(&dw)) {
                continue;
            }
            let syms = degree_symbols(self.tau(), &level_degree(r, &dw));
            let s = syms[rng.gen_range(0..syms.len())].clone();
            let actual = self.to_actual.apply_symbol(&s);
            let b = random_b(&mut rng, b_alg);
            let v = QVector::unit(key.clone());
            let both = self
                .act_element(&self.map.tensor(&actual, &b), &v)
                .and_then(|l| Ok((l, self.act_element(&self.map.lift(&actual), &v)?.scaled(&self.psi.eval(&b)))));
            let (lhs, rhs) = match both {
                Ok(p) => p,
                Err(e) if is_window_error(&e) => {
                    outside += 1;
                    continue;
                }
                Err(e) => return Err(e),
            };
            done += 1;
            if lhs != rhs {
                return Ok(Finding::fail(
                    "X(b) v differs from psi(b) X v",
                    format!("X = {}, b = {}, v = {}", self.tau().render(&actual), b_alg.render(&b), self.key_name(&key)),
                ));
            }
        }
        let ideal = b_alg.ideal_of_point(&self.psi);
        let center = self.window.center();
        let mut ideal_checks = 0usize;
        for level in 0..=self.depth {
            for key in self.basis_keys(level, &center) {
                let v = QVector::unit(key.clone());
                for r in -1..=1i64 {
                    let target = level as i64 - r;
                    if target < 0 || target as usize > self.depth {
                        continue;
                    }
                    for d in self.level_zero_degrees() {
                        let m = level_degree(r, &m_part(&d));
                        for s in degree_symbols(self.tau(), &m) {
                            let actual = self.to_actual.apply_symbol(&s);
                            for mm in &ideal {
                                let out = match self.act_element(&self.map.tensor(&actual, mm), &v) {
                                    Ok(o) => o,
                                    Err(e) if is_window_error(&e) => continue,
                                    Err(e) => return Err(e),
                                };
                                ideal_checks += 1;
                                if !out.is_zero() {
                                    return Ok(Finding::fail(
                                        "an element of tau(ker psi) acts nontrivially on the quotient",
                                        format!("X = {}, b = {}, v = {}", self.tau().render(&actual), b_alg.render(mm), self.key_name(&key)),
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(Finding::pass(format!(
            "{done} sampled factorizations ({outside} redrawn after leaving the window) and {ideal_checks} ideal actions on the central fibers: all exact"
        )))
    }

    /// The vector `ψ`-scaled comparison for a single element, for callers that
    /// want to inspect one case.
    pub fn evaluation_sample(&self, x: &crate::toroidal::AlgElement, b: &crate::coeffalg::BElement, v: &QKey) -> Result<EvaluationSample> {
        let vv = QVector::unit(v.clone());
        let lhs = self.act_element(&self.map.tensor(x, b), &vv)?;
        let rhs = self.act_element(&self.map.lift(x), &vv)?.scaled(&self.psi.eval(b));
        Ok(EvaluationSample { element: self.tau().render(x), vector: self.key_name(v), agrees: lhs == rhs })
    }

    /// Nonzero raising images of `k`, rendered (for counterexamples).
    pub fn raising_images(&self, k: &QKey) -> Result<Vec<String>> {
        let ik = self.ikey(k);
        let mut out = Vec::new();
        for &z in &self.raising {
            if k.0 >= 2 && !self.inside(self.add(ik.1, self.grading(z).1)) {
                continue;
            }
            let v = self.act_i(z, 0, ik)?;
            if !v.is_zero() {
                out.push(format!("{} -> {}", self.tau().symbol_name(&self.symbol(z)), self.render(&self.qvec(&v))));
            }
        }
        Ok(out)
    }
}
