//! Tensor modules `V1 ⊗ V2 ⊗ Laurent polynomials` and their evaluation twists.
//!
//! Three kinds share one implementation:
//! * `Tau`: a module over `τ` in `n` variables, basis `v1 ⊗ v2 ⊗ t^r`, `r ∈ Z^n`;
//! * `Eval`: the same space over `τ(B)`, with `X(b)` acting as `ψ(b) X`;
//! * `TauRing`: a module over the subalgebra of degrees `(0, m)`, with
//!   `r ∈ Z^{n-1}`, `t^m K_1` acting by `a` and `t^m d_1` by `b`.
//!
//! Actions are exact and unbounded; windows only bound enumeration.

pub mod cyclic;
pub mod derham;
pub mod evalcheck;

use std::collections::BTreeMap;
use std::sync::Arc;

use num::{One, Zero};

use crate::coeffalg::{CoeffAlgebra, EvaluationPoint};
use crate::error::{Error, Result};
use crate::exactlin::{fmt_rational, int, Rational, SparseVec};
use crate::maptoroidal::{MapElement, MapToroidal};
use crate::reps::{build_gln_rep, build_irrep_g, HighestWeight, RepModule};
use crate::toroidal::{AlgElement, BasisSymbol, Degree, Toroidal};

pub use cyclic::{window_cyclicity_report, CyclicTarget, CyclicityReport};
pub use derham::DeRhamComplex;
pub use evalcheck::evaluation_factorization_check;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Tau,
    TauRing { a: Rational, b: Rational },
    Eval,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorModuleSpec {
    pub kind: ModuleKind,
    pub c: Rational,
    pub lam1: HighestWeight,
    pub lam2: HighestWeight,
    /// Length `n` for `Tau`/`Eval`, `n - 1` for `TauRing`.
    pub alpha: Vec<Rational>,
    /// Required for `Eval`; optional for `TauRing` (used when inducing over `τ(B)`).
    pub psi: Option<EvaluationPoint>,
}

/// Basis key `(r, v1 index, v2 index)`; fiber-major order.
pub type ModKey = (Degree, usize, usize);
pub type ModuleVector = SparseVec<ModKey>;

/// A box `lo ≤ r ≤ hi` of degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightWindow {
    lo: Vec<i64>,
    hi: Vec<i64>,
}

impl WeightWindow {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::Validation(format!("invalid window {lo:?}..{hi:?}")));
        }
        Ok(WeightWindow { lo, hi })
    }

    pub fn cube(dim: usize, lo: i64, hi: i64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[i64] {
        &self.lo
    }

    pub fn hi(&self) -> &[i64] {
        &self.hi
    }

    pub fn contains(&self, r: &Degree) -> bool {
        r.len() == self.dim() && r.0.iter().enumerate().all(|(i, &x)| self.lo[i] <= x && x <= self.hi[i])
    }

    /// All points, lexicographic.
    pub fn points(&self) -> Vec<Degree> {
        let mut out = vec![Vec::new()];
        for (lo, hi) in self.lo.iter().zip(&self.hi) {
            out = out
                .into_iter()
                .flat_map(|p: Vec<i64>| {
                    (*lo..=*hi).map(move |x| {
                        let mut q = p.clone();
                        q.push(x);
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(Degree).collect()
    }

    /// Point closest to the middle of the box.
    pub fn center(&self) -> Degree {
        Degree(self.lo.iter().zip(&self.hi).map(|(a, b)| (a + b).div_euclid(2)).collect())
    }
}

impl std::fmt::Display for WeightWindow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", Degree(self.lo.clone()), Degree(self.hi.clone()))
    }
}

#[derive(Clone, Debug)]
pub struct TensorModule {
    spec: TensorModuleSpec,
    tau: Toroidal,
    coeffs: Option<Arc<CoeffAlgebra>>,
    v1: RepModule,
    v2: RepModule,
}

impl TensorModule {
    pub fn new(tau: &Toroidal, coeffs: Option<Arc<CoeffAlgebra>>, spec: TensorModuleSpec) -> Result<Self> {
        let n = tau.n();
        let gl = match spec.kind {
            ModuleKind::TauRing { .. } => n - 1,
            _ => n,
        };
        if spec.alpha.len() != gl {
            return Err(Error::Dimension(format!("alpha must have {gl} entries, got {}", spec.alpha.len())));
        }
        if spec.kind == ModuleKind::Eval && spec.psi.is_none() {
            return Err(Error::Config("evaluation module needs an evaluation point".into()));
        }
        if let Some(p) = &spec.psi {
            let b = coeffs.as_ref().ok_or_else(|| Error::Config("evaluation point given without a coefficient algebra".into()))?;
            if p.values().len() != b.dim() {
                return Err(Error::Config("evaluation point does not belong to the coefficient algebra".into()));
            }
        }
        let v1 = build_irrep_g(tau.g_shared(), &spec.lam1)?;
        let v2 = build_gln_rep(gl, &spec.c, &spec.lam2)?;
        Ok(TensorModule { spec, tau: tau.clone(), coeffs, v1, v2 })
    }

    pub fn spec(&self) -> &TensorModuleSpec {
        &self.spec
    }

    pub fn tau(&self) -> &Toroidal {
        &self.tau
    }

    pub fn coeffs(&self) -> Option<&Arc<CoeffAlgebra>> {
        self.coeffs.as_ref()
    }

    pub fn map_algebra(&self) -> Option<MapToroidal> {
        self.coeffs.as_ref().map(|b| MapToroidal::with_shared(self.tau.clone(), b.clone()))
    }

    pub fn v1(&self) -> &RepModule {
        &self.v1
    }

    pub fn v2(&self) -> &RepModule {
        &self.v2
    }

    /// Number of Laurent variables (`n`, or `n - 1` for `TauRing`).
    pub fn lattice_rank(&self) -> usize {
        self.spec.alpha.len()
    }

    pub fn is_ring(&self) -> bool {
        matches!(self.spec.kind, ModuleKind::TauRing { .. })
    }

    pub fn fiber_dim(&self) -> usize {
        self.v1.dim() * self.v2.dim()
    }

    pub fn fiber_basis(&self, r: &Degree) -> Vec<ModKey> {
        let mut out = Vec::with_capacity(self.fiber_dim());
        for a in 0..self.v1.dim() {
            for b in 0..self.v2.dim() {
                out.push((r.clone(), a, b));
            }
        }
        out
    }

    /// `d_i`-eigenvalues on the fiber `r`: `α + r`, or `(b, α + r)` for `TauRing`.
    pub fn weight_of(&self, r: &Degree) -> Vec<Rational> {
        let shifted = self.spec.alpha.iter().zip(&r.0).map(|(a, x)| a + int(*x));
        match &self.spec.kind {
            ModuleKind::TauRing { b, .. } => std::iter::once(b.clone()).chain(shifted).collect(),
            _ => shifted.collect(),
        }
    }

    /// Degree shift of a symbol on the Laurent part.
    fn lattice_shift(&self, m: &Degree) -> Result<Degree> {
        if self.is_ring() {
            if m.get(0) != 0 {
                return Err(Error::Dimension(format!("degree {m} is outside the subalgebra of degrees (0, *)")));
            }
            Ok(Degree(m.0[1..].to_vec()))
        } else {
            Ok(m.clone())
        }
    }

    /// Action of one basis symbol on one basis vector.
    pub fn act_symbol(&self, s: &BasisSymbol, key: &ModKey) -> Result<ModuleVector> {
        let (r, a, b) = key;
        let mut out = ModuleVector::new();
        match s {
            BasisSymbol::Loop(x, m) => {
                let rm = r.add(&self.lattice_shift(m)?);
                for (a2, c) in self.v1.act_basis(*x, *a).iter() {
                    out.add_term((rm.clone(), *a2, *b), c);
                }
            }
            BasisSymbol::Kahler(i, m) => {
                let shift = self.lattice_shift(m)?;
                if let ModuleKind::TauRing { a: ka, .. } = &self.spec.kind {
                    if *i == 0 {
                        out.add_term((r.add(&shift), *a, *b), ka);
                    }
                }
            }
            BasisSymbol::Der(i, m) => {
                let mm = self.lattice_shift(m)?;
                let rm = r.add(&mm);
                // index of the derivation within the Laurent variables
                let li = match &self.spec.kind {
                    ModuleKind::TauRing { b: kb, .. } => {
                        if *i == 0 {
                            out.add_term((rm, *a, *b), kb);
                            return Ok(out);
                        }
                        i - 1
                    }
                    _ => *i,
                };
                out.add_term((rm.clone(), *a, *b), &(&self.spec.alpha[li] + int(r.get(li))));
                for (j, &mj) in mm.0.iter().enumerate() {
                    if mj == 0 {
                        continue;
                    }
                    let idx = self.v2.gl_index(j, li);
                    for (b2, c) in self.v2.act_basis(idx, *b).iter() {
                        out.add_term((rm.clone(), *a, *b2), &(c * int(mj)));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Action of `x ∈ τ` (elements of `τ(B)` act through [`TensorModule::act_map`]).
    pub fn act(&self, x: &AlgElement, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::new();
        for (s, c) in x.iter() {
            for (k, d) in v.iter() {
                out.add_scaled(&self.act_symbol(s, k)?, &(c * d));
            }
        }
        Ok(out)
    }

    /// Action of `X(b)`: scaled by `ψ(b)` when the module has a point; otherwise
    /// only unit coefficients are accepted.
    pub fn act_map(&self, x: &MapElement, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::new();
        for ((s, j), c) in x.iter() {
            let scale = match &self.spec.psi {
                Some(p) => c * &p.values()[*j],
                None if *j == 0 => c.clone(),
                None => return Err(Error::Config("module has no evaluation point; coefficients must be the unit".into())),
            };
            if scale.is_zero() {
                continue;
            }
            for (k, d) in v.iter() {
                out.add_scaled(&self.act_symbol(s, k)?, &(&scale * d));
            }
        }
        Ok(out)
    }

    /// `[x,y]v - x(yv) + y(xv)`.
    pub fn module_axiom_defect(&self, x: &AlgElement, y: &AlgElement, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = self.act(&self.tau.bracket(x, y)?, v)?;
        out.add_scaled(&self.act(x, &self.act(y, v)?)?, &-Rational::one());
        out.add_scaled(&self.act(y, &self.act(x, v)?)?, &Rational::one());
        Ok(out)
    }

    /// The same defect over `τ(B)`.
    pub fn module_axiom_defect_map(&self, x: &MapElement, y: &MapElement, v: &ModuleVector) -> Result<ModuleVector> {
        let mt = self.map_algebra().ok_or_else(|| Error::Config("module has no coefficient algebra".into()))?;
        let mut out = self.act_map(&mt.bracket_map(x, y)?, v)?;
        out.add_scaled(&self.act_map(x, &self.act_map(y, v)?)?, &-Rational::one());
        out.add_scaled(&self.act_map(y, &self.act_map(x, v)?)?, &Rational::one());
        Ok(out)
    }

    /// Dimension of every weight space met in the window.
    pub fn weight_table(&self, window: &WeightWindow) -> Result<BTreeMap<Vec<Rational>, usize>> {
        if window.dim() != self.lattice_rank() {
            return Err(Error::Dimension(format!("window has {} coordinates, module needs {}", window.dim(), self.lattice_rank())));
        }
        let mut out = BTreeMap::new();
        for r in window.points() {
            *out.entry(self.weight_of(&r)).or_insert(0) += self.fiber_dim();
        }
        Ok(out)
    }

    /// Config-format name of a basis vector: `v0|e1@(0,0,0)`.
    pub fn key_name(&self, k: &ModKey) -> String {
        format!("{}|{}@{}", self.v1.labels()[k.1], self.v2.labels()[k.2], k.0)
    }

    pub fn render(&self, v: &ModuleVector) -> String {
        v.render_with(|k| self.key_name(k))
    }

    /// The generators used by desk-scale scans: `x ⊗ t^{0, ±e_i}` for the
    /// Chevalley generators `x`, `t^{±e_i} d_j` and `d_j`, restricted to the
    /// acting subalgebra for `TauRing`.
    pub fn scan_generators(&self) -> Vec<AlgElement> {
        let n = self.tau.n();
        let first = usize::from(self.is_ring());
        let mut degrees = vec![Degree::zero(n)];
        for i in first..n {
            degrees.push(Degree::unit(n, i));
            degrees.push(Degree::unit(n, i).neg());
        }
        let g = self.tau.g();
        let mut chev: Vec<usize> = g.simple().iter().flat_map(|t| [t.e, t.f]).collect();
        if chev.is_empty() {
            chev = (0..g.dim()).collect();
        }
        let mut out = Vec::new();
        for m in &degrees {
            for &x in &chev {
                out.push(self.tau.loop_elem(x, m));
            }
            for j in 0..n {
                out.push(self.tau.der(j, m));
            }
        }
        out
    }
}

/// Renders a weight as `(1/3,0,0)`.
pub fn weight_name(w: &[Rational]) -> String {
    format!("({})", w.iter().map(fmt_rational).collect::<Vec<_>>().join(","))
}
