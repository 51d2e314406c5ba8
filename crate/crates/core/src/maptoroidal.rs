//! The map algebra `τ(B) = τ ⊗ B` and its triangular decompositions.

use std::sync::Arc;

use num::One;

use crate::coeffalg::{BElement, CoeffAlgebra};
use crate::error::{Error, Result};
use crate::exactlin::intmat::{self, IntMatrix};
use crate::exactlin::{Rational, SparseVec};
use crate::toroidal::{AlgElement, BasisSymbol, Degree, Toroidal};

/// Combination of pure tensors `symbol ⊗ b_j` keyed by (symbol, B-basis index).
pub type MapElement = SparseVec<(BasisSymbol, usize)>;

#[derive(Clone, Debug)]
pub struct MapToroidal {
    tau: Toroidal,
    b: Arc<CoeffAlgebra>,
}

impl MapToroidal {
    pub fn new(tau: Toroidal, b: CoeffAlgebra) -> Self {
        MapToroidal { tau, b: Arc::new(b) }
    }

    pub fn with_shared(tau: Toroidal, b: Arc<CoeffAlgebra>) -> Self {
        MapToroidal { tau, b }
    }

    pub fn tau(&self) -> &Toroidal {
        &self.tau
    }

    pub fn coeffs(&self) -> &CoeffAlgebra {
        &self.b
    }

    pub fn coeffs_shared(&self) -> Arc<CoeffAlgebra> {
        self.b.clone()
    }

    /// `X(b)` for `X ∈ τ` and `b ∈ B`.
    pub fn tensor(&self, x: &AlgElement, b: &BElement) -> MapElement {
        let mut out = MapElement::new();
        for (s, c) in x.iter() {
            for (j, d) in b.iter() {
                out.add_term((s.clone(), *j), &(c * d));
            }
        }
        out
    }

    /// `X(1)`.
    pub fn lift(&self, x: &AlgElement) -> MapElement {
        self.tensor(x, &self.b.unit())
    }

    pub fn check(&self, x: &MapElement) -> Result<()> {
        if let Some((_, j)) = x.keys().find(|(_, j)| *j >= self.b.dim()) {
            return Err(Error::Config(format!("coefficient index {j} outside B")));
        }
        for (s, _) in x.keys() {
            self.tau.check(&AlgElement::unit(s.clone()))?;
        }
        Ok(())
    }

    pub fn bracket_map(&self, x: &MapElement, y: &MapElement) -> Result<MapElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub fn bracket_unchecked(&self, x: &MapElement, y: &MapElement) -> MapElement {
        let mut out = MapElement::new();
        for ((s, i), c) in x.iter() {
            for ((t, j), d) in y.iter() {
                let br = self.tau.bracket_symbols(s, t);
                if br.is_zero() {
                    continue;
                }
                let prod = self.b.mul_basis(*i, *j);
                let cd = c * d;
                for (sym, e) in br.iter() {
                    for (k, f) in prod.iter() {
                        out.add_term((sym.clone(), *k), &(&cd * e * f));
                    }
                }
            }
        }
        out
    }

    pub fn jacobi_defect(&self, x: &MapElement, y: &MapElement, z: &MapElement) -> Result<MapElement> {
        let one = Rational::one();
        let mut out = self.bracket_map(x, &self.bracket_map(y, z)?)?;
        out.add_scaled(&self.bracket_map(y, &self.bracket_map(z, x)?)?, &one);
        out.add_scaled(&self.bracket_map(z, &self.bracket_map(x, y)?)?, &one);
        Ok(out)
    }

    /// True iff `x` lies in the span of the degree-zero `K_i(b)`.
    pub fn is_central(&self, x: &MapElement) -> bool {
        x.keys().all(|(s, _)| matches!(s, BasisSymbol::Kahler(_, m) if m.is_zero()))
    }

    pub fn symbol_name(&self, s: &BasisSymbol, j: usize) -> String {
        let b = &self.b.labels()[j];
        if j == 0 {
            self.tau.symbol_name(s)
        } else {
            format!("{}[{}]", self.tau.symbol_name(s), b)
        }
    }

    /// Renders `X(b)` terms as `symbol[b]`, omitting `[1]`.
    pub fn render(&self, x: &MapElement) -> String {
        x.render_with(|(s, j)| self.symbol_name(s, *j))
    }
}

/// A splitting `Z^n = M ⊕ Zβ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangularData {
    beta: Degree,
    m_basis: Vec<Degree>,
    /// Inverse of the matrix whose columns are `M_1, …, M_{n-1}, β`.
    coords: IntMatrix,
}

impl TriangularData {
    pub fn new(beta: Degree, m_basis: Vec<Degree>) -> Result<Self> {
        let n = beta.len();
        if m_basis.len() + 1 != n || m_basis.iter().any(|m| m.len() != n) {
            return Err(Error::Dimension(format!("need {} vectors of length {n} spanning M", n.saturating_sub(1))));
        }
        let rows: IntMatrix = m_basis.iter().chain(std::iter::once(&beta)).map(|d| d.0.clone()).collect();
        if !intmat::is_unimodular(&rows) {
            return Err(Error::Validation("M basis and beta do not form a Z-basis of Z^n".into()));
        }
        let coords = intmat::inverse(&intmat::transpose(&rows)).expect("unimodular");
        Ok(TriangularData { beta, m_basis, coords })
    }

    /// `β = e_1`, `M = ⟨e_2, …, e_n⟩`.
    pub fn standard(n: usize) -> Self {
        Self::new(Degree::unit(n, 0), (1..n).map(|i| Degree::unit(n, i)).collect()).expect("standard basis")
    }

    pub fn beta(&self) -> &Degree {
        &self.beta
    }

    pub fn m_basis(&self) -> &[Degree] {
        &self.m_basis
    }

    pub fn n(&self) -> usize {
        self.beta.len()
    }

    /// The `α`-basis `(β, M_1, …, M_{n-1})` identifying `Z^n` with `Zβ ⊕ M`.
    pub fn alpha_basis(&self) -> Vec<Degree> {
        std::iter::once(self.beta.clone()).chain(self.m_basis.iter().cloned()).collect()
    }

    /// Coordinates `(w, r)` with `m = Σ w_i M_i + r β`.
    pub fn split_degree(&self, m: &Degree) -> (Vec<i64>, i64) {
        let mut c = intmat::apply(&self.coords, &m.0);
        let r = c.pop().expect("n >= 1");
        (c, r)
    }

    pub fn beta_coordinate(&self, m: &Degree) -> i64 {
        self.split_degree(m).1
    }

    /// `Σ w_i M_i + r β`.
    pub fn compose(&self, w: &[i64], r: i64) -> Degree {
        let mut out: Vec<i64> = self.beta.0.iter().map(|b| b * r).collect();
        for (wi, mi) in w.iter().zip(&self.m_basis) {
            for (o, x) in out.iter_mut().zip(&mi.0) {
                *o += wi * x;
            }
        }
        Degree(out)
    }

    /// Routes each term of `x` by the sign of its β-coordinate: `(minus, zero, plus)`.
    pub fn beta_split(&self, x: &MapElement) -> (MapElement, MapElement, MapElement) {
        let (mut minus, mut zero, mut plus) = (MapElement::new(), MapElement::new(), MapElement::new());
        for (k, c) in x.iter() {
            let r = self.beta_coordinate(k.0.degree());
            let part = match r.signum() {
                -1 => &mut minus,
                0 => &mut zero,
                _ => &mut plus,
            };
            part.add_term(k.clone(), c);
        }
        (minus, zero, plus)
    }
}
