//! Generalized Verma modules `𝕄(X) = U(τ(B)) ⊗ X` induced from a module `X`
//! over `τ(B)_M`, and their irreducible quotients `L(X) = 𝕄(X)/N`.
//!
//! Everything is computed in the standard splitting `β = e_1`,
//! `M = ⟨e_2, …, e_n⟩`; a general splitting is reached through the
//! automorphism `Φ` sending `(r, w)` to `rβ + Σ w_i M_i`, and elements given in
//! the original coordinates act through `Φ^{-1}`.
//!
//! The quotient is built level by level (level `ℓ` = β-degree `-ℓ`). A level
//! `L` fiber at `w ∈ M` is presented by candidates `Y · q` with `Y` a lowering
//! generator of β-degree `-s` (unit coefficient, M-degree in the window) and
//! `q` a basis vector of the level `L - s` quotient. A candidate's signature is
//! the list of its images under the raising family (β-degree `+1`, M-degree in
//! the window, every `B` basis coefficient), expressed in the level `L - 1`
//! quotient. `N` at level `L` is the kernel of the signature map; the quotient
//! basis is formed by the candidates whose signatures are independent.
//! Level 1 signatures land in `X` itself and use every raising generator; deeper
//! levels use those whose image fiber lies in the window.

mod checks;

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::rc::Rc;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::coeffalg::{CoeffAlgebra, EvaluationPoint};
use crate::error::{Error, Result};
use crate::exactlin::intmat::{self, IntMatrix};
use crate::exactlin::{Rational, SpanSolver, SparseVec};
use crate::maptoroidal::{MapElement, MapToroidal, TriangularData};
use crate::tensormod::{ModKey, ModuleKind, ModuleVector, TensorModule, TensorModuleSpec, WeightWindow};
use crate::toroidal::{BasisSymbol, CoordinateChange, Degree, Toroidal};

pub use checks::EvaluationSample;

/// A basis vector of the quotient: `(level, M-degree, index)`. At level 0 the
/// index enumerates the `X` fiber basis (`a · dim V2 + b`).
pub type QKey = (usize, Degree, usize);
pub type QVector = SparseVec<QKey>;

#[derive(Clone, Debug)]
pub struct VermaConfig {
    /// `X`; must be a `TauRing` module with an evaluation point.
    pub x: TensorModuleSpec,
    pub tri: TriangularData,
    pub depth: usize,
    /// Window on `M`-degrees, in the coordinates `(w_1, …, w_{n-1})` of `Σ w_i M_i`.
    pub window: WeightWindow,
}

// Internally symbols and M-degrees are interned, so keys are small and `Copy`.
type Sym = u32;
type Deg = u32;
/// (level, M-degree, index)
type IKey = (u32, Deg, u32);
type IVec = SparseVec<IKey>;
/// (raising generator position, `B` basis index, image key)
type ISig = (u32, u32, IKey);

#[derive(Default)]
struct Interner {
    syms: Vec<BasisSymbol>,
    sym_ids: FxHashMap<BasisSymbol, Sym>,
    sym_level: Vec<i64>,
    sym_shift: Vec<Deg>,
    degs: Vec<Degree>,
    deg_ids: FxHashMap<Degree, Deg>,
    in_window: Vec<bool>,
    sums: FxHashMap<(Deg, Deg), Deg>,
}

#[derive(Clone, Debug)]
struct LevelFiber {
    candidates: Vec<(Sym, IKey)>,
    basis: Vec<usize>,
    signatures: SpanSolver<ISig>,
    kernel: Vec<SparseVec<usize>>,
}

pub struct VermaModule {
    map: MapToroidal,
    x: TensorModule,
    psi: EvaluationPoint,
    tri: TriangularData,
    to_actual: CoordinateChange,
    to_standard: CoordinateChange,
    depth: usize,
    window: WeightWindow,
    raising: Vec<Sym>,
    lowering: Vec<Vec<Sym>>,
    levels: Vec<FxHashMap<Deg, LevelFiber>>,
    interner: RefCell<Interner>,
    act_memo: RefCell<FxHashMap<(Sym, u32, IKey), Rc<IVec>>>,
    bracket_memo: RefCell<FxHashMap<(Sym, Sym), Rc<Vec<(Sym, Rational)>>>>,
}

/// Basis symbols of degree `m` (Kähler symbols in canonical form).
pub fn degree_symbols(tau: &Toroidal, m: &Degree) -> Vec<BasisSymbol> {
    let n = tau.n();
    let pivot = m.pivot();
    let mut out: Vec<BasisSymbol> = (0..tau.g().dim()).map(|a| BasisSymbol::Loop(a, m.clone())).collect();
    out.extend((0..n).filter(|i| Some(*i) != pivot).map(|i| BasisSymbol::Kahler(i, m.clone())));
    out.extend((0..n).map(|i| BasisSymbol::Der(i, m.clone())));
    out
}

fn m_part(m: &Degree) -> Degree {
    Degree(m.0[1..].to_vec())
}

fn level_degree(r: i64, w: &Degree) -> Degree {
    Degree(std::iter::once(r).chain(w.0.iter().copied()).collect())
}

impl VermaModule {
    pub fn build(tau: &Toroidal, coeffs: Arc<CoeffAlgebra>, cfg: &VermaConfig) -> Result<Self> {
        let n = tau.n();
        if !matches!(cfg.x.kind, ModuleKind::TauRing { .. }) {
            return Err(Error::Config("the inducing module must be a TauRing module".into()));
        }
        let psi = cfg.x.psi.clone().ok_or_else(|| Error::Config("the inducing module needs an evaluation point".into()))?;
        if cfg.tri.n() != n {
            return Err(Error::Dimension(format!("triangular data has rank {}, algebra has {n}", cfg.tri.n())));
        }
        if cfg.window.dim() != n - 1 {
            return Err(Error::Dimension(format!("window needs {} coordinates", n - 1)));
        }
        let x = TensorModule::new(tau, Some(coeffs.clone()), cfg.x.clone())?;
        let a: IntMatrix = cfg.tri.alpha_basis().iter().map(|d| d.0.clone()).collect();
        let to_actual = CoordinateChange::new(&intmat::transpose(&a), n)?;
        let to_standard = to_actual.inverse();
        let mut v = VermaModule {
            map: MapToroidal::with_shared(tau.clone(), coeffs),
            x,
            psi,
            tri: cfg.tri.clone(),
            to_actual,
            to_standard,
            depth: cfg.depth,
            window: cfg.window.clone(),
            raising: Vec::new(),
            lowering: Vec::new(),
            levels: Vec::new(),
            interner: RefCell::new(Interner::default()),
            act_memo: RefCell::new(FxHashMap::default()),
            bracket_memo: RefCell::new(FxHashMap::default()),
        };
        let points = v.window.points();
        v.raising = points.iter().flat_map(|w| degree_symbols(tau, &level_degree(1, w))).map(|s| v.sym(&s)).collect();
        v.lowering = (1..=cfg.depth as i64)
            .map(|s| points.iter().flat_map(|w| degree_symbols(tau, &level_degree(-s, w))).map(|s| v.sym(&s)).collect())
            .collect();
        for level in 1..=cfg.depth {
            let built = v.build_level(level)?;
            v.levels.push(built);
        }
        Ok(v)
    }

    fn sym(&self, s: &BasisSymbol) -> Sym {
        if let Some(&i) = self.interner.borrow().sym_ids.get(s) {
            return i;
        }
        let shift = self.deg(&m_part(s.degree()));
        let mut t = self.interner.borrow_mut();
        let i = t.syms.len() as Sym;
        t.syms.push(s.clone());
        t.sym_ids.insert(s.clone(), i);
        t.sym_level.push(s.degree().get(0));
        t.sym_shift.push(shift);
        i
    }

    fn deg(&self, d: &Degree) -> Deg {
        if let Some(&i) = self.interner.borrow().deg_ids.get(d) {
            return i;
        }
        let inside = self.window.contains(d);
        let mut t = self.interner.borrow_mut();
        let i = t.degs.len() as Deg;
        t.degs.push(d.clone());
        t.deg_ids.insert(d.clone(), i);
        t.in_window.push(inside);
        i
    }

    fn symbol(&self, s: Sym) -> BasisSymbol {
        self.interner.borrow().syms[s as usize].clone()
    }

    fn degree_of(&self, d: Deg) -> Degree {
        self.interner.borrow().degs[d as usize].clone()
    }

    /// β-degree and M-degree of a symbol.
    fn grading(&self, s: Sym) -> (i64, Deg) {
        let t = self.interner.borrow();
        (t.sym_level[s as usize], t.sym_shift[s as usize])
    }

    fn inside(&self, d: Deg) -> bool {
        self.interner.borrow().in_window[d as usize]
    }

    fn add(&self, a: Deg, b: Deg) -> Deg {
        if let Some(&c) = self.interner.borrow().sums.get(&(a, b)) {
            return c;
        }
        let sum = self.degree_of(a).add(&self.degree_of(b));
        let c = self.deg(&sum);
        self.interner.borrow_mut().sums.insert((a, b), c);
        c
    }

    fn ikey(&self, k: &QKey) -> IKey {
        (k.0 as u32, self.deg(&k.1), k.2 as u32)
    }

    fn qkey(&self, k: &IKey) -> QKey {
        (k.0 as usize, self.degree_of(k.1), k.2 as usize)
    }

    fn qvec(&self, v: &IVec) -> QVector {
        v.map_keys(|k| self.qkey(k))
    }

    fn build_level(&self, level: usize) -> Result<FxHashMap<Deg, LevelFiber>> {
        let mut out = FxHashMap::default();
        for f in self.window.points() {
            let fd = self.deg(&f);
            let mut fiber = LevelFiber { candidates: Vec::new(), basis: Vec::new(), signatures: SpanSolver::new(), kernel: Vec::new() };
            for s in 1..=level {
                for &y in &self.lowering[s - 1] {
                    let src = f.sub(&m_part(self.symbol(y).degree()));
                    let src = self.deg(&src);
                    for q in self.basis_ikeys(level - s, src) {
                        fiber.candidates.push((y, q));
                    }
                }
            }
            for (i, &(y, q)) in fiber.candidates.iter().enumerate() {
                let sig = self.signature_i(y, 0, q)?;
                match fiber.signatures.insert(sig) {
                    Ok(_) => fiber.basis.push(i),
                    Err(c) => {
                        let mut k = SparseVec::unit(i);
                        for (j, x) in c.iter() {
                            k.add_term(fiber.basis[*j], &-x);
                        }
                        fiber.kernel.push(k);
                    }
                }
            }
            out.insert(fd, fiber);
        }
        Ok(out)
    }

    fn basis_ikeys(&self, level: usize, w: Deg) -> Vec<IKey> {
        if level == 0 {
            return (0..self.x.fiber_dim() as u32).map(|i| (0, w, i)).collect();
        }
        match self.levels.get(level - 1).and_then(|l| l.get(&w)) {
            Some(f) => (0..f.basis.len() as u32).map(|i| (level as u32, w, i)).collect(),
            None => Vec::new(),
        }
    }

    fn fiber_i(&self, level: usize, w: &Degree) -> Option<&LevelFiber> {
        if level == 0 {
            return None;
        }
        let d = self.deg(w);
        self.levels.get(level - 1).and_then(|l| l.get(&d))
    }

    /// Quotient basis keys of a fiber (empty outside the window for levels ≥ 1).
    pub fn basis_keys(&self, level: usize, w: &Degree) -> Vec<QKey> {
        self.basis_ikeys(level, self.deg(w)).iter().map(|k| self.qkey(k)).collect()
    }

    /// Candidates `(Y, q)`, standing for `Y · q`, presenting a fiber of level ≥ 1.
    pub fn candidates(&self, level: usize, w: &Degree) -> Vec<(BasisSymbol, QKey)> {
        match self.fiber_i(level, w) {
            Some(f) => f.candidates.iter().map(|(y, q)| (self.symbol(*y), self.qkey(q))).collect(),
            None => Vec::new(),
        }
    }

    /// Basis of `N` in a fiber, as combinations of [`VermaModule::candidates`].
    pub fn kernel(&self, level: usize, w: &Degree) -> Vec<SparseVec<usize>> {
        self.fiber_i(level, w).map(|f| f.kernel.clone()).unwrap_or_default()
    }

    /// Candidate indices forming the quotient basis of a fiber.
    pub fn basis_candidates(&self, level: usize, w: &Degree) -> Vec<usize> {
        self.fiber_i(level, w).map(|f| f.basis.clone()).unwrap_or_default()
    }

    pub fn map_algebra(&self) -> &MapToroidal {
        &self.map
    }

    pub fn tau(&self) -> &Toroidal {
        self.map.tau()
    }

    pub fn inducing_module(&self) -> &TensorModule {
        &self.x
    }

    pub fn psi(&self) -> &EvaluationPoint {
        &self.psi
    }

    pub fn triangular(&self) -> &TriangularData {
        &self.tri
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn window(&self) -> &WeightWindow {
        &self.window
    }

    pub fn raising_family(&self) -> Vec<BasisSymbol> {
        self.raising.iter().map(|s| self.symbol(*s)).collect()
    }

    /// One-line description of the recorded raising set.
    pub fn raising_description(&self) -> String {
        format!(
            "{} generators of beta-degree +1 with M-degree in {} (x {} coefficient basis elements)",
            self.raising.len(),
            self.window,
            self.map.coeffs().dim()
        )
    }

    /// Dimension of every computed quotient fiber, keyed by (level, M-degree).
    pub fn quotient_dims(&self) -> BTreeMap<(usize, Degree), usize> {
        let mut out = BTreeMap::new();
        for w in self.window.points() {
            out.insert((0, w), self.x.fiber_dim());
        }
        for (i, l) in self.levels.iter().enumerate() {
            for (w, f) in l {
                out.insert((i + 1, self.degree_of(*w)), f.basis.len());
            }
        }
        out
    }

    /// Per-level, per-fiber bases of the maximal submodule `N`, as
    /// combinations of the fiber's candidates.
    pub fn maximal_submodule(&self) -> BTreeMap<(usize, Degree), Vec<SparseVec<usize>>> {
        let mut out = BTreeMap::new();
        for (i, l) in self.levels.iter().enumerate() {
            for (w, f) in l {
                out.insert((i + 1, self.degree_of(*w)), f.kernel.clone());
            }
        }
        out
    }

    fn modkey(&self, k: &QKey) -> ModKey {
        let d2 = self.x.v2().dim();
        (k.1.clone(), k.2 / d2, k.2 % d2)
    }

    pub fn key_name(&self, k: &QKey) -> String {
        if k.0 == 0 {
            self.x.key_name(&self.modkey(k))
        } else {
            format!("L{}{}#{}", k.0, k.1, k.2)
        }
    }

    pub fn render(&self, v: &QVector) -> String {
        v.render_with(|k| self.key_name(k))
    }

    /// `Y · q` for a candidate.
    pub fn candidate_name(&self, c: &(BasisSymbol, QKey)) -> String {
        format!("{}.[{}]", self.tau().symbol_name(&c.0), self.key_name(&c.1))
    }

    fn iname(&self, y: Sym, q: &IKey) -> String {
        self.candidate_name(&(self.symbol(y), self.qkey(q)))
    }

    /// `G(b_j) · k` in the quotient, for a standard-coordinate symbol `G`.
    pub fn act(&self, g: &BasisSymbol, j: usize, k: &QKey) -> Result<QVector> {
        let v = self.act_i(self.sym(g), j as u32, self.ikey(k))?;
        Ok(self.qvec(&v))
    }

    fn act_i(&self, g: Sym, j: u32, k: IKey) -> Result<Rc<IVec>> {
        let (r, shift) = self.grading(g);
        let target = k.0 as i64 - r;
        if target < 0 || (k.0 == 0 && r > 0) {
            return Ok(Rc::new(IVec::new()));
        }
        if target as usize > self.depth {
            return Err(Error::Window(format!("level {target} is beyond the computed depth {}", self.depth)));
        }
        let memo = (g, j, k);
        if let Some(v) = self.act_memo.borrow().get(&memo) {
            return Ok(v.clone());
        }
        let out = if r < 0 {
            self.reduce_i(g, j, k, target as u32, self.add(k.1, shift))?
        } else if k.0 == 0 {
            let qk = self.qkey(&k);
            let v = self.x.act_map(&MapElement::unit((self.symbol(g), j as usize)), &ModuleVector::unit(self.modkey(&qk)))?;
            let d2 = self.x.v2().dim();
            v.map_keys(|(w, a, b)| (0, self.deg(w), (a * d2 + b) as u32))
        } else {
            let f = &self.levels[k.0 as usize - 1][&k.1];
            let (y, q) = f.candidates[f.basis[k.2 as usize]];
            self.product_i(g, j, y, 0, q)?
        };
        let out = Rc::new(out);
        self.act_memo.borrow_mut().insert(memo, out.clone());
        Ok(out)
    }

    /// `[g, y]` in `τ`, cached.
    fn bracket_i(&self, g: Sym, y: Sym) -> Rc<Vec<(Sym, Rational)>> {
        if let Some(v) = self.bracket_memo.borrow().get(&(g, y)) {
            return v.clone();
        }
        let br = self.tau().bracket_symbols(&self.symbol(g), &self.symbol(y));
        let v: Rc<Vec<(Sym, Rational)>> = Rc::new(br.iter().map(|(s, c)| (self.sym(s), c.clone())).collect());
        self.bracket_memo.borrow_mut().insert((g, y), v.clone());
        v
    }

    /// `G(b_i) · (Y(b_j) · q) = [G(b_i), Y(b_j)] · q + Y(b_j) · (G(b_i) · q)`.
    fn product_i(&self, g: Sym, i: u32, y: Sym, j: u32, q: IKey) -> Result<IVec> {
        let mut out = IVec::new();
        let br = self.bracket_i(g, y);
        let coeff = self.map.coeffs().mul_basis(i as usize, j as usize).clone();
        for (s, c) in br.iter() {
            for (b, d) in coeff.iter() {
                out.add_scaled(&*self.act_i(*s, *b as u32, q)?, &(c * d));
            }
        }
        for (k, c) in self.act_i(g, i, q)?.iter() {
            out.add_scaled(&*self.act_i(y, j, *k)?, c);
        }
        Ok(out)
    }

    /// Images of the candidate `Y(b_j) · q` under the raising family.
    fn signature_i(&self, y: Sym, j: u32, q: IKey) -> Result<SparseVec<ISig>> {
        let (r, shift) = self.grading(y);
        let level = q.0 as i64 - r;
        let w = self.add(q.1, shift);
        let mut terms = Vec::new();
        for (zi, &z) in self.raising.iter().enumerate() {
            if level >= 2 && !self.inside(self.add(w, self.grading(z).1)) {
                continue;
            }
            for bi in 0..self.map.coeffs().dim() as u32 {
                for (k, c) in self.product_i(z, bi, y, j, q)?.into_pairs() {
                    terms.push(((zi as u32, bi, k), c));
                }
            }
        }
        Ok(SparseVec::from_pairs(terms))
    }

    /// Expresses the lowering product `Y(b_j) · q` in the quotient basis.
    fn reduce_i(&self, y: Sym, j: u32, q: IKey, level: u32, w: Deg) -> Result<IVec> {
        if !self.inside(w) {
            return Err(Error::Window(format!(
                "M-degree {} at level {level} is outside the window {}",
                self.degree_of(w),
                self.window
            )));
        }
        let sig = self.signature_i(y, j, q)?;
        let fiber = &self.levels[level as usize - 1][&w];
        let coords = fiber.signatures.coordinates(&sig).ok_or_else(|| {
            Error::Window(format!("{} is not spanned by the lowering generators in the window; enlarge the window", self.iname(y, &q)))
        })?;
        Ok(coords.map_keys(|i| (level, w, *i as u32)))
    }

    /// Action of an element of `τ(B)` given in the original coordinates.
    pub fn act_element(&self, x: &MapElement, v: &QVector) -> Result<QVector> {
        let mut out = IVec::new();
        for ((s, j), c) in x.iter() {
            for (t, d) in self.to_standard.apply_symbol(s).iter() {
                let t = self.sym(t);
                for (k, e) in v.iter() {
                    out.add_scaled(&*self.act_i(t, *j as u32, self.ikey(k))?, &(c * d * e));
                }
            }
        }
        Ok(self.qvec(&out))
    }

    /// Standard-coordinate form of an original-coordinate degree: `(r, w)`.
    pub fn standard_degree(&self, m: &Degree) -> Degree {
        self.to_standard.map_degree(m)
    }

    /// Original-coordinate degree of a standard one.
    pub fn actual_degree(&self, m: &Degree) -> Degree {
        self.to_actual.map_degree(m)
    }
}
