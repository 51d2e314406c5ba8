//! Differential forms `L(k, 0, ω_k, α) = Λ^k W ⊗ Laurent polynomials` and
//! the exterior derivative `d(ω ⊗ t^r) = Σ_j (α_j + r_j) (e_j ∧ ω) ⊗ t^r`.

use std::collections::BTreeMap;

use num::Zero;

use super::{ModKey, ModuleKind, ModuleVector, TensorModule, TensorModuleSpec, WeightWindow};
use crate::error::{Error, Result};
use crate::exactlin::{int, Echelon, Rational};
use crate::reps::{k_subsets, wedge_front, HighestWeight};
use crate::toroidal::{Degree, Toroidal};

#[derive(Clone, Debug)]
pub struct DeRhamComplex {
    n: usize,
    alpha: Vec<Rational>,
    forms: Vec<TensorModule>,
    subsets: Vec<Vec<Vec<usize>>>,
}

impl DeRhamComplex {
    pub fn new(tau: &Toroidal, alpha: Vec<Rational>) -> Result<Self> {
        let n = tau.n();
        if alpha.len() != n {
            return Err(Error::Dimension(format!("alpha must have {n} entries")));
        }
        let mut forms = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let lam2 = if k == 0 || k == n { HighestWeight::zero(n - 1) } else { HighestWeight::fundamental(n - 1, k) };
            let spec = TensorModuleSpec {
                kind: ModuleKind::Tau,
                c: int(k as i64),
                lam1: HighestWeight::zero(tau.g().rank()),
                lam2,
                alpha: alpha.clone(),
                psi: None,
            };
            forms.push(TensorModule::new(tau, None, spec)?);
        }
        let subsets = (0..=n).map(|k| k_subsets(n, k)).collect();
        Ok(DeRhamComplex { n, alpha, forms, subsets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alpha(&self) -> &[Rational] {
        &self.alpha
    }

    /// `L(k, 0, ω_k, α)`.
    pub fn forms(&self, k: usize) -> &TensorModule {
        &self.forms[k]
    }

    fn check_k(&self, k: usize) -> Result<()> {
        if k >= self.n {
            return Err(Error::Validation(format!("d_k needs 0 <= k <= {}, got {k}", self.n - 1)));
        }
        Ok(())
    }

    fn d_key(&self, k: usize, key: &ModKey) -> ModuleVector {
        let (r, a, b) = key;
        let s = &self.subsets[k][*b];
        let mut out = ModuleVector::new();
        for j in 0..self.n {
            let coef = &self.alpha[j] + int(r.get(j));
            if coef.is_zero() {
                continue;
            }
            if let Some((sign, t)) = wedge_front(j, s) {
                let idx = self.subsets[k + 1].binary_search(&t).expect("subset present");
                out.add_term((r.clone(), *a, idx), &(coef * int(sign)));
            }
        }
        out
    }

    /// `d_k v` for `v` in `L(k, 0, ω_k, α)`.
    pub fn d(&self, k: usize, v: &ModuleVector) -> Result<ModuleVector> {
        self.check_k(k)?;
        let mut out = ModuleVector::new();
        for (key, c) in v.iter() {
            out.add_scaled(&self.d_key(k, key), c);
        }
        Ok(out)
    }

    /// Echelon basis of `d_k` applied to the fiber at `r`.
    pub fn image_fiber(&self, k: usize, r: &Degree) -> Result<Vec<ModuleVector>> {
        self.check_k(k)?;
        let mut ech = Echelon::new();
        let mut out = Vec::new();
        for key in self.forms[k].fiber_basis(r) {
            let img = self.d_key(k, &key);
            if ech.insert(img.clone()) {
                out.push(img);
            }
        }
        Ok(out)
    }

    /// Per-fiber bases of `d_k L(k, 0, ω_k, α)` over the window.
    pub fn image_basis(&self, k: usize, window: &WeightWindow) -> Result<BTreeMap<Degree, Vec<ModuleVector>>> {
        window.points().into_iter().map(|r| Ok((r.clone(), self.image_fiber(k, &r)?))).collect()
    }

    /// Dimension of the kernel of `d_k` on the fiber at `r`.
    pub fn kernel_dim(&self, k: usize, r: &Degree) -> Result<usize> {
        Ok(self.forms[k].fiber_dim() - self.image_fiber(k, r)?.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toroidal::{CocycleSpec, GAlgebra};

    fn complex() -> DeRhamComplex {
        let tau = Toroidal::new(3, GAlgebra::sl2(), CocycleSpec::zero()).unwrap();
        DeRhamComplex::new(&tau, vec![int(0); 3]).unwrap()
    }

    fn d(v: &[i64]) -> Degree {
        Degree(v.to_vec())
    }

    #[test]
    fn exterior_derivative_examples() {
        let c = complex();
        let f = ModuleVector::unit((d(&[1, 0, 0]), 0, 0));
        assert_eq!(c.d(0, &f).unwrap(), ModuleVector::unit((d(&[1, 0, 0]), 0, 0)));
        assert!(c.d(0, &ModuleVector::unit((d(&[0, 0, 0]), 0, 0))).unwrap().is_zero());
        // d(e1 ⊗ t^{e2}) = e2 ∧ e1 = -(e1 ∧ e2)
        let w = ModuleVector::unit((d(&[0, 1, 0]), 0, 0));
        assert_eq!(c.d(1, &w).unwrap(), ModuleVector::unit((d(&[0, 1, 0]), 0, 0)).scaled(&int(-1)));
        assert!(c.d(3, &w).is_err());
    }

    #[test]
    fn image_ranks() {
        let c = complex();
        assert_eq!(c.image_fiber(0, &d(&[1, 0, 0])).unwrap().len(), 1);
        assert_eq!(c.image_fiber(0, &d(&[0, 0, 0])).unwrap().len(), 0);
        assert_eq!(c.image_fiber(1, &d(&[1, 2, 3])).unwrap().len(), 2);
    }
}
