//! Finite-dimensional irreducible representations of `g` and of `gl_n`.
//!
//! `V(λ)` for `g` is built from a highest weight vector one lowering step at
//! a time. A candidate `f_i b` is kept only if its image under the raising
//! operators is independent of the images of the candidates already kept, so
//! the maximal submodule is never materialised: two lowering words with the
//! same raising images are the same vector of the irreducible quotient.

use std::sync::Arc;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::dense::{self, Mat};
use crate::exactlin::{int, Echelon, Rational, SparseVec};
use crate::toroidal::GAlgebra;

/// Coordinates of a dominant weight on the fundamental weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HighestWeight(Vec<i64>);

impl HighestWeight {
    pub fn new(coords: Vec<i64>) -> Result<Self> {
        if let Some(x) = coords.iter().find(|&&x| x < 0) {
            return Err(Error::Validation(format!("weight {coords:?} is not dominant (entry {x})")));
        }
        Ok(HighestWeight(coords))
    }

    pub fn zero(rank: usize) -> Self {
        HighestWeight(vec![0; rank])
    }

    /// `ω_k` (1-based `k`) for a rank `rank` algebra.
    pub fn fundamental(rank: usize, k: usize) -> Self {
        let mut v = vec![0; rank];
        v[k - 1] = 1;
        HighestWeight(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// `Some(k)` when this is the fundamental weight `ω_k`.
    pub fn as_fundamental(&self) -> Option<usize> {
        let mut nz = self.0.iter().enumerate().filter(|(_, &x)| x != 0);
        match (nz.next(), nz.next()) {
            (Some((k, 1)), None) => Some(k + 1),
            _ => None,
        }
    }
}

/// What the representation matrices are indexed by.
#[derive(Clone, Debug)]
pub enum Acting {
    /// The basis of `g`.
    G(Arc<GAlgebra>),
    /// `E_{j,i}` of `gl_n` at index `j * n + i` (0-based), with the identity acting by `c`.
    Gl { n: usize, c: Rational },
}

#[derive(Clone, Debug)]
pub struct RepModule {
    labels: Vec<String>,
    /// Weight tags: eigenvalues of the simple coroots.
    weights: Vec<Vec<i64>>,
    /// `cols[x][b]` = action of generator `x` on basis vector `b`.
    cols: Vec<Vec<SparseVec<usize>>>,
    acting: Acting,
}

impl RepModule {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weight(&self, b: usize) -> &[i64] {
        &self.weights[b]
    }

    pub fn acting(&self) -> &Acting {
        &self.acting
    }

    pub fn generator_count(&self) -> usize {
        self.cols.len()
    }

    /// Image of basis vector `b` under generator `x`.
    pub fn act_basis(&self, x: usize, b: usize) -> &SparseVec<usize> {
        &self.cols[x][b]
    }

    pub fn act(&self, x: usize, v: &SparseVec<usize>) -> SparseVec<usize> {
        let mut out = SparseVec::new();
        for (b, c) in v.iter() {
            out.add_scaled(&self.cols[x][*b], c);
        }
        out
    }

    /// Action of a combination of generators.
    pub fn act_combination(&self, x: &SparseVec<usize>, v: &SparseVec<usize>) -> SparseVec<usize> {
        let mut out = SparseVec::new();
        for (g, c) in x.iter() {
            out.add_scaled(&self.act(*g, v), c);
        }
        out
    }

    pub fn matrix(&self, x: usize) -> Mat {
        let d = self.dim();
        let mut m = dense::zeros(d, d);
        for (b, col) in self.cols[x].iter().enumerate() {
            for (a, c) in col.iter() {
                m[*a][b] = c.clone();
            }
        }
        m
    }

    /// Index of `E_{j,i}` (0-based) for `gl_n` modules.
    pub fn gl_index(&self, j: usize, i: usize) -> usize {
        match &self.acting {
            Acting::Gl { n, .. } => j * n + i,
            Acting::G(_) => panic!("gl_index on a g-module"),
        }
    }

    /// `E_{j,i} v` (0-based indices).
    pub fn e(&self, j: usize, i: usize, v: &SparseVec<usize>) -> SparseVec<usize> {
        self.act(self.gl_index(j, i), v)
    }

    /// The bracket of two generators in the acting algebra.
    pub fn generator_bracket(&self, x: usize, y: usize) -> SparseVec<usize> {
        match &self.acting {
            Acting::G(g) => g.bracket_basis(x, y).clone(),
            Acting::Gl { n, .. } => {
                // [E_ab, E_cd] = δ_bc E_ad - δ_da E_cb
                let (a, b, c, d) = (x / n, x % n, y / n, y % n);
                let mut out = SparseVec::new();
                if b == c {
                    out.add_term(a * n + d, &Rational::one());
                }
                if d == a {
                    out.add_term(c * n + b, &-Rational::one());
                }
                out
            }
        }
    }

    /// `ρ([x,y])v - ρ(x)ρ(y)v + ρ(y)ρ(x)v`.
    pub fn rep_axiom_defect(&self, x: usize, y: usize, v: &SparseVec<usize>) -> SparseVec<usize> {
        let mut out = self.act_combination(&self.generator_bracket(x, y), v);
        out.add_scaled(&self.act(x, &self.act(y, v)), &-Rational::one());
        out.add_scaled(&self.act(y, &self.act(x, v)), &Rational::one());
        out
    }

    fn check_axioms(&self) -> Result<()> {
        for x in 0..self.generator_count() {
            for y in 0..self.generator_count() {
                for b in 0..self.dim() {
                    if !self.rep_axiom_defect(x, y, &SparseVec::unit(b)).is_zero() {
                        return Err(Error::Validation(format!("representation axiom fails on generators ({x}, {y})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The one-dimensional module on which every generator acts by zero.
    pub fn trivial_g(g: Arc<GAlgebra>) -> Self {
        let rank = g.rank();
        let cols = vec![vec![SparseVec::new()]; g.dim()];
        RepModule { labels: vec!["v0".into()], weights: vec![vec![0; rank]], cols, acting: Acting::G(g) }
    }
}

/// The irreducible `g`-module of highest weight `lam`.
pub fn build_irrep_g(g: Arc<GAlgebra>, lam: &HighestWeight) -> Result<RepModule> {
    const MAX_DIM: usize = 20_000;
    let rank = g.rank();
    if lam.coords().len() != rank {
        return Err(Error::Dimension(format!("highest weight for {} needs {rank} coordinates", g.name())));
    }
    if lam.is_zero() {
        return Ok(RepModule::trivial_g(g));
    }
    let cartan = g.cartan_matrix()?;
    // simple root α_i in fundamental-weight coordinates: entry j is [h_j, e_i] = a_ji e_i
    let root = |i: usize| -> Vec<i64> { (0..rank).map(|j| cartan[j][i]).collect() };

    let mut weights: Vec<Vec<i64>> = vec![lam.coords().to_vec()];
    // raise[j][b] = e_j b, lower[i][b] = f_i b, filled as the basis grows
    let mut raise: Vec<Vec<SparseVec<usize>>> = vec![vec![SparseVec::new()]; rank];
    let mut lower: Vec<Vec<SparseVec<usize>>> = vec![Vec::new(); rank];
    let mut prev: Vec<usize> = vec![0];
    while !prev.is_empty() {
        let mut ech: Echelon<(usize, usize)> = Echelon::new();
        let mut kept: Vec<usize> = Vec::new();
        let mut pending: Vec<(usize, usize, SparseVec<usize>)> = Vec::new();
        let mut next = Vec::new();
        for &b in &prev {
            for i in 0..rank {
                // e_j f_i b = f_i e_j b + δ_ij h_i b
                let mut sig: SparseVec<(usize, usize)> = SparseVec::new();
                for j in 0..rank {
                    let mut comp = SparseVec::new();
                    for (c, x) in raise[j][b].iter() {
                        comp.add_scaled(&lower[i][*c], x);
                    }
                    if i == j {
                        comp.add_term(b, &int(weights[b][i]));
                    }
                    for (c, x) in comp.iter() {
                        sig.add_term((j, *c), x);
                    }
                }
                if sig.is_zero() {
                    pending.push((i, b, SparseVec::new()));
                    continue;
                }
                if ech.insert(sig.clone()) {
                    let idx = weights.len();
                    let w: Vec<i64> = weights[b].iter().zip(root(i)).map(|(a, r)| a - r).collect();
                    weights.push(w);
                    for (j, row) in raise.iter_mut().enumerate() {
                        row.push(SparseVec::from_pairs(sig.iter().filter(|((jj, _), _)| *jj == j).map(|((_, c), x)| (*c, x.clone()))));
                    }
                    kept.push(idx);
                    next.push(idx);
                    pending.push((i, b, SparseVec::unit(idx)));
                } else {
                    let coords = ech.coordinates(&sig).expect("dependent signature lies in the span");
                    pending.push((i, b, coords.map_keys(|&k| kept[k])));
                }
                if weights.len() > MAX_DIM {
                    return Err(Error::Unsupported(format!("irreducible module exceeds {MAX_DIM} dimensions")));
                }
            }
        }
        for row in lower.iter_mut() {
            row.resize(weights.len(), SparseVec::new());
        }
        for (i, b, v) in pending {
            lower[i][b] = v;
        }
        prev = next;
    }
    let dim = weights.len();
    for row in lower.iter_mut() {
        row.resize(dim, SparseVec::new());
    }

    // close the generator matrices under brackets until they span g
    let mut span: Echelon<usize> = Echelon::new();
    let mut elems: Vec<(SparseVec<usize>, Vec<SparseVec<usize>>)> = Vec::new();
    let push = |x: SparseVec<usize>, m: Vec<SparseVec<usize>>, span: &mut Echelon<usize>, elems: &mut Vec<_>| {
        if span.insert(x.clone()) {
            elems.push((x, m));
        }
    };
    for (i, t) in g.simple().iter().enumerate() {
        push(SparseVec::unit(t.e), raise[i].clone(), &mut span, &mut elems);
        push(SparseVec::unit(t.f), lower[i].clone(), &mut span, &mut elems);
        let h = (0..dim).map(|b| SparseVec::unit(b).scaled(&int(weights[b][i]))).collect();
        push(SparseVec::unit(t.h), h, &mut span, &mut elems);
    }
    let mut a = 0;
    while a < elems.len() && span.rank() < g.dim() {
        for b in 0..a {
            let x = g.bracket(&elems[b].0, &elems[a].0);
            if span.contains(&x) {
                continue;
            }
            let m = (0..dim)
                .map(|v| {
                    let mut out = apply_cols(&elems[b].1, &elems[a].1[v]);
                    out.add_scaled(&apply_cols(&elems[a].1, &elems[b].1[v]), &-Rational::one());
                    out
                })
                .collect();
            push(x, m, &mut span, &mut elems);
        }
        a += 1;
    }
    if span.rank() < g.dim() {
        return Err(Error::Unsupported(format!("simple generators of {} do not generate the algebra", g.name())));
    }
    let mut cols = Vec::with_capacity(g.dim());
    for x in 0..g.dim() {
        let coords = span.coordinates(&SparseVec::unit(x)).expect("spanning set");
        let col = (0..dim)
            .map(|v| {
                let mut out = SparseVec::new();
                for (k, c) in coords.iter() {
                    out.add_scaled(&elems[*k].1[v], c);
                }
                out
            })
            .collect();
        cols.push(col);
    }
    let labels = (0..dim).map(|b| format!("v{b}")).collect();
    let rep = RepModule { labels, weights, cols, acting: Acting::G(g) };
    rep.check_axioms()?;
    Ok(rep)
}

fn apply_cols(cols: &[SparseVec<usize>], v: &SparseVec<usize>) -> SparseVec<usize> {
    let mut out = SparseVec::new();
    for (b, c) in v.iter() {
        out.add_scaled(&cols[*b], c);
    }
    out
}

/// Sorted `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `e_j ∧ e_S` as `(sign, sorted set)`, or `None` when `j ∈ S`.
pub fn wedge_front(j: usize, s: &[usize]) -> Option<(i64, Vec<usize>)> {
    if s.contains(&j) {
        return None;
    }
    let before = s.iter().filter(|&&x| x < j).count();
    let mut t = s.to_vec();
    t.push(j);
    t.sort_unstable();
    Some((if before % 2 == 0 { 1 } else { -1 }, t))
}

/// Label `e1^e3` for a subset (1-based), `1` for the empty set.
pub fn wedge_label(s: &[usize]) -> String {
    if s.is_empty() {
        "1".into()
    } else {
        s.iter().map(|i| format!("e{}", i + 1)).collect::<Vec<_>>().join("^")
    }
}

/// `Λ^k W` for the standard `gl_n`-module `W`.
pub fn exterior_power(n: usize, k: usize) -> Result<RepModule> {
    if k > n {
        return Err(Error::Validation(format!("exterior power {k} exceeds {n}")));
    }
    let subsets = k_subsets(n, k);
    let index = |s: &[usize]| subsets.binary_search_by(|x| x.as_slice().cmp(s)).expect("sorted subset");
    let mut cols = vec![vec![SparseVec::new(); subsets.len()]; n * n];
    for (b, s) in subsets.iter().enumerate() {
        for j in 0..n {
            for i in 0..n {
                // E_{j,i} replaces e_i by e_j in each slot
                let Some(pos) = s.iter().position(|&x| x == i) else { continue };
                if i == j {
                    cols[j * n + i][b] = SparseVec::unit(b);
                    continue;
                }
                if s.contains(&j) {
                    continue;
                }
                let mut t = s.clone();
                t[pos] = j;
                // sort with permutation sign
                let mut sign = 1i64;
                let mut p = pos;
                while p > 0 && t[p - 1] > t[p] {
                    t.swap(p - 1, p);
                    sign = -sign;
                    p -= 1;
                }
                while p + 1 < t.len() && t[p] > t[p + 1] {
                    t.swap(p, p + 1);
                    sign = -sign;
                    p += 1;
                }
                cols[j * n + i][b] = SparseVec::unit(index(&t)).scaled(&int(sign));
            }
        }
    }
    let weights = subsets
        .iter()
        .map(|s| (0..n.saturating_sub(1)).map(|i| i64::from(s.contains(&i)) - i64::from(s.contains(&(i + 1)))).collect())
        .collect();
    let labels = subsets.iter().map(|s| wedge_label(s)).collect();
    let rep = RepModule { labels, weights, cols, acting: Acting::Gl { n, c: int(k as i64) } };
    rep.check_axioms()?;
    Ok(rep)
}

/// `V(c, λ2)`: the irreducible `sl_n`-module `V(λ2)` with the identity acting by `c`.
pub fn build_gln_rep(n: usize, c: &Rational, lam2: &HighestWeight) -> Result<RepModule> {
    if n == 0 {
        return Err(Error::Dimension("gl_0 is not supported".into()));
    }
    if lam2.coords().len() != n - 1 {
        return Err(Error::Dimension(format!("sl_{n} weight needs {} coordinates", n - 1)));
    }
    if n == 1 {
        let cols = vec![vec![SparseVec::unit(0).scaled(c)]];
        return Ok(RepModule { labels: vec!["v0".into()], weights: vec![vec![]], cols, acting: Acting::Gl { n, c: c.clone() } });
    }
    let fast_k = match lam2.as_fundamental() {
        Some(k) => Some(k),
        None if lam2.is_zero() && c.is_zero() => Some(0),
        None if lam2.is_zero() && *c == int(n as i64) => Some(n),
        None => None,
    };
    if let Some(k) = fast_k {
        if *c == int(k as i64) {
            return exterior_power(n, k);
        }
    }
    let g = Arc::new(GAlgebra::sl(n));
    let irrep = build_irrep_g(g.clone(), lam2)?;
    let mats = g.matrices().expect("sl_n is a matrix algebra");
    let mut span: Echelon<(usize, usize)> = Echelon::new();
    for m in mats {
        span.insert(dense::flatten(m));
    }
    let dim = irrep.dim();
    let shift = c / int(n as i64);
    let mut cols = vec![vec![SparseVec::new(); dim]; n * n];
    for j in 0..n {
        for i in 0..n {
            let mut m = dense::unit(n, j, i);
            if i == j {
                dense::add_scaled(&mut m, &dense::identity(n), &-(Rational::one() / int(n as i64)));
            }
            let coords = span.coordinates(&dense::flatten(&m)).expect("traceless matrix lies in sl_n");
            for (b, col) in cols[j * n + i].iter_mut().enumerate() {
                let v = SparseVec::unit(b);
                let mut out = irrep.act_combination(&coords, &v);
                if i == j {
                    out.add_scaled(&v, &shift);
                }
                *col = out;
            }
        }
    }
    let rep = RepModule { labels: irrep.labels.clone(), weights: irrep.weights.clone(), cols, acting: Acting::Gl { n, c: c.clone() } };
    rep.check_axioms()?;
    Ok(rep)
}

impl std::fmt::Display for HighestWeight {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
