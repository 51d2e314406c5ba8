//! Finite-dimensional Lie algebras given by structure constants.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::dense::{self, Mat};
use crate::exactlin::{int, Echelon, Rational, SparseVec};

/// Indices of an sl2-triple `[e,f] = h`, `[h,e] = 2e`, `[h,f] = -2f` attached to a simple root.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimpleTriple {
    pub e: usize,
    pub f: usize,
    pub h: usize,
}

#[derive(Clone, Debug)]
pub struct GAlgebra {
    name: String,
    labels: Vec<String>,
    /// `table[i][j] = [x_i, x_j]` in basis coordinates.
    table: Vec<Vec<SparseVec<usize>>>,
    form: Vec<Vec<Rational>>,
    cartan: Vec<usize>,
    simple: Vec<SimpleTriple>,
    /// Defining matrices when the algebra was built as a matrix algebra.
    matrices: Option<Vec<Mat>>,
}

impl PartialEq for GAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.labels == other.labels && self.table == other.table && self.form == other.form
    }
}

impl GAlgebra {
    /// Builds an algebra from structure constants `(i, j, k, c)` meaning
    /// `[x_i, x_j] += c x_k`; the `(j, i)` entry is filled by antisymmetry.
    ///
    /// Entries given for both orders must agree. Jacobi and invariance of the
    /// form are checked on every basis triple.
    pub fn from_structure_constants(
        name: &str,
        labels: Vec<String>,
        constants: &[(usize, usize, usize, Rational)],
        form: Vec<Vec<Rational>>,
        cartan: Vec<usize>,
        simple: Vec<SimpleTriple>,
    ) -> Result<Self> {
        let d = labels.len();
        let mut given = vec![vec![SparseVec::new(); d]; d];
        for (i, j, k, c) in constants {
            if *i >= d || *j >= d || *k >= d {
                return Err(Error::Validation(format!("structure constant index out of range in ({i},{j},{k})")));
            }
            given[*i][*j].add_term(*k, c);
        }
        let mut table = vec![vec![SparseVec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let a = &given[i][j];
                let b = given[j][i].neg();
                if i == j {
                    if !a.is_zero() {
                        return Err(Error::Validation(format!("[{0},{0}] must vanish", labels[i])));
                    }
                    continue;
                }
                table[i][j] = match (a.is_zero(), b.is_zero()) {
                    (_, true) => a.clone(),
                    (true, false) => b,
                    (false, false) if *a == b => b,
                    _ => {
                        return Err(Error::Validation(format!(
                            "bracket table not antisymmetric at ({}, {})",
                            labels[i], labels[j]
                        )))
                    }
                };
            }
        }
        let g = GAlgebra { name: name.to_string(), labels, table, form, cartan, simple, matrices: None };
        g.validate()?;
        Ok(g)
    }

    /// Builds the Lie algebra spanned by the given linearly independent
    /// matrices, with the trace form of the defining representation.
    pub fn from_matrices(name: &str, labels: Vec<String>, mats: Vec<Mat>, cartan: Vec<usize>, simple: Vec<SimpleTriple>) -> Result<Self> {
        let d = mats.len();
        if labels.len() != d {
            return Err(Error::Dimension("one label per matrix required".into()));
        }
        let mut ech = Echelon::new();
        for m in &mats {
            if !ech.insert(dense::flatten(m)) {
                return Err(Error::Validation("matrices are linearly dependent".into()));
            }
        }
        let mut table = vec![vec![SparseVec::new(); d]; d];
        for i in 0..d {
            for j in 0..d {
                let c = dense::commutator(&mats[i], &mats[j]);
                table[i][j] = ech
                    .coordinates(&dense::flatten(&c))
                    .ok_or_else(|| Error::Validation(format!("[{}, {}] leaves the span", labels[i], labels[j])))?;
            }
        }
        let form = (0..d).map(|i| (0..d).map(|j| dense::trace(&dense::mul(&mats[i], &mats[j]))).collect()).collect();
        let g = GAlgebra { name: name.to_string(), labels, table, form, cartan, simple, matrices: Some(mats) };
        g.validate()?;
        Ok(g)
    }

    /// `sl_2` with basis `e, h, f`.
    pub fn sl2() -> Self {
        let e = dense::unit(2, 0, 1);
        let f = dense::unit(2, 1, 0);
        let mut h = dense::unit(2, 0, 0);
        h[1][1] = -Rational::one();
        GAlgebra::from_matrices(
            "sl2",
            vec!["e".into(), "h".into(), "f".into()],
            vec![e, h, f],
            vec![1],
            vec![SimpleTriple { e: 0, f: 2, h: 1 }],
        )
        .expect("sl2 table is valid")
    }

    /// `sl_3` in the Chevalley basis `e1 = E12, e2 = E23, e3 = E13, h1, h2, f1, f2, f3`.
    pub fn sl3() -> Self {
        let u = |i, j| dense::unit(3, i, j);
        let h = |i: usize| {
            let mut m = dense::unit(3, i, i);
            m[i + 1][i + 1] = -Rational::one();
            m
        };
        let labels = ["e1", "e2", "e3", "h1", "h2", "f1", "f2", "f3"].iter().map(|s| s.to_string()).collect();
        let mats = vec![u(0, 1), u(1, 2), u(0, 2), h(0), h(1), u(1, 0), u(2, 1), u(2, 0)];
        GAlgebra::from_matrices(
            "sl3",
            labels,
            mats,
            vec![3, 4],
            vec![SimpleTriple { e: 0, f: 5, h: 3 }, SimpleTriple { e: 1, f: 6, h: 4 }],
        )
        .expect("sl3 table is valid")
    }

    /// `sl_n` in the matrix-unit basis: `E{i}{j}` for `i != j` and `H{i} = E_ii - E_{i+1,i+1}`.
    ///
    /// For `n = 2, 3` the built-in Chevalley labelled algebras are returned.
    pub fn sl(n: usize) -> Self {
        match n {
            2 => return Self::sl2(),
            3 => return Self::sl3(),
            _ => {}
        }
        let mut labels = Vec::new();
        let mut mats = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    labels.push(format!("E{}{}", i + 1, j + 1));
                    mats.push(dense::unit(n, i, j));
                }
            }
        }
        let first_h = mats.len();
        for i in 0..n.saturating_sub(1) {
            labels.push(format!("H{}", i + 1));
            let mut m = dense::unit(n, i, i);
            m[i + 1][i + 1] = -Rational::one();
            mats.push(m);
        }
        let idx = |i: usize, j: usize| labels.iter().position(|l| *l == format!("E{}{}", i + 1, j + 1)).unwrap();
        let simple = (0..n.saturating_sub(1)).map(|i| SimpleTriple { e: idx(i, i + 1), f: idx(i + 1, i), h: first_h + i }).collect();
        let cartan = (first_h..mats.len()).collect();
        GAlgebra::from_matrices(&format!("sl{n}"), labels, mats, cartan, simple).expect("sl_n table is valid")
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "sl2" => Ok(Self::sl2()),
            "sl3" => Ok(Self::sl3()),
            other => Err(Error::Config(format!("unknown built-in algebra {other:?} (expected sl2 or sl3)"))),
        }
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        if self.form.len() != d || self.form.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension(format!("form must be {d}x{d}")));
        }
        for i in 0..d {
            for j in 0..d {
                if self.table[i][j] != self.table[j][i].neg() {
                    return Err(Error::Validation(format!("bracket not antisymmetric at ({}, {})", self.labels[i], self.labels[j])));
                }
                if self.form[i][j] != self.form[j][i] {
                    return Err(Error::Validation(format!("form not symmetric at ({}, {})", self.labels[i], self.labels[j])));
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let defect = self.jacobi(i, j, k);
                    if !defect.is_zero() {
                        return Err(Error::Validation(format!(
                            "Jacobi identity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                    // <[x,y],z> = <x,[y,z]>
                    let lhs = self.form_pair(&self.table[i][j], &SparseVec::unit(k));
                    let rhs = self.form_pair(&SparseVec::unit(i), &self.table[j][k]);
                    if lhs != rhs {
                        return Err(Error::Validation(format!(
                            "form not invariant on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        for &c in &self.cartan {
            if c >= d {
                return Err(Error::Validation("Cartan index out of range".into()));
            }
        }
        for t in &self.simple {
            if t.e >= d || t.f >= d || t.h >= d {
                return Err(Error::Validation("simple triple index out of range".into()));
            }
            let ok = self.table[t.e][t.f] == SparseVec::unit(t.h)
                && self.table[t.h][t.e] == SparseVec::unit(t.e).scaled(&int(2))
                && self.table[t.h][t.f] == SparseVec::unit(t.f).scaled(&int(-2));
            if !ok {
                return Err(Error::Validation(format!(
                    "({}, {}, {}) is not an sl2-triple",
                    self.labels[t.e], self.labels[t.f], self.labels[t.h]
                )));
            }
        }
        Ok(())
    }

    fn jacobi(&self, i: usize, j: usize, k: usize) -> SparseVec<usize> {
        let mut out = self.bracket(&SparseVec::unit(i), &self.table[j][k]);
        out.add_scaled(&self.bracket(&SparseVec::unit(j), &self.table[k][i]), &Rational::one());
        out.add_scaled(&self.bracket(&SparseVec::unit(k), &self.table[i][j]), &Rational::one());
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn cartan(&self) -> &[usize] {
        &self.cartan
    }

    pub fn simple(&self) -> &[SimpleTriple] {
        &self.simple
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn matrices(&self) -> Option<&[Mat]> {
        self.matrices.as_deref()
    }

    /// `[x_i, x_j]` on basis indices.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec<usize> {
        &self.table[i][j]
    }

    pub fn bracket(&self, x: &SparseVec<usize>, y: &SparseVec<usize>) -> SparseVec<usize> {
        let mut out = SparseVec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.add_scaled(&self.table[*i][*j], &(a * b));
            }
        }
        out
    }

    pub fn form_basis(&self, i: usize, j: usize) -> &Rational {
        &self.form[i][j]
    }

    pub fn form_pair(&self, x: &SparseVec<usize>, y: &SparseVec<usize>) -> Rational {
        let mut acc = Rational::zero();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc += a * b * &self.form[*i][*j];
            }
        }
        acc
    }

    /// Cartan matrix `a_{ij}` read off from `[h_i, e_j] = a_{ij} e_j`.
    pub fn cartan_matrix(&self) -> Result<Vec<Vec<i64>>> {
        let r = self.rank();
        let mut a = vec![vec![0i64; r]; r];
        for i in 0..r {
            for j in 0..r {
                let br = &self.table[self.simple[i].h][self.simple[j].e];
                let c = br.coeff(&self.simple[j].e);
                if br.len() > usize::from(!c.is_zero()) || !c.is_integer() {
                    return Err(Error::Validation("simple root vectors are not Cartan eigenvectors".into()));
                }
                a[i][j] = c.to_integer().try_into().map_err(|_| Error::Validation("Cartan entry too large".into()))?;
            }
        }
        Ok(a)
    }
}
