//! The full toroidal Lie algebra `L(g) + K + W_n`.
//!
//! Basis symbols are `x ⊗ t^m` (loop), `t^m K_i` (Kähler) and `t^m d_i`
//! (derivation). Kähler symbols are always stored in canonical form: for
//! `m != 0` the component along the first index with `m_i != 0` is
//! eliminated using `Σ m_i t^m K_i = 0`.
//!
//! Indices are 0-based internally and 1-based in every rendered string.

pub mod galg;

use std::fmt;
use std::sync::Arc;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::intmat::{self, IntMatrix};
use crate::exactlin::{fmt_rational, int, parse_rational, Rational, SparseVec};

pub use galg::{GAlgebra, SimpleTriple};

/// A degree in `Z^n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Degree(pub Vec<i64>);

impl Degree {
    pub fn zero(n: usize) -> Self {
        Degree(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Degree(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Degree) -> Degree {
        Degree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Degree {
        Degree(self.0.iter().map(|a| -a).collect())
    }

    pub fn get(&self, i: usize) -> i64 {
        self.0[i]
    }

    /// First index with a nonzero entry.
    pub fn pivot(&self) -> Option<usize> {
        self.0.iter().position(|&x| x != 0)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

impl From<&[i64]> for Degree {
    fn from(v: &[i64]) -> Self {
        Degree(v.to_vec())
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum BasisSymbol {
    /// `x_a ⊗ t^m` for the g-basis index `a`.
    Loop(usize, Degree),
    /// `t^m K_i`.
    Kahler(usize, Degree),
    /// `t^m d_i`.
    Der(usize, Degree),
}

impl BasisSymbol {
    pub fn degree(&self) -> &Degree {
        match self {
            BasisSymbol::Loop(_, m) | BasisSymbol::Kahler(_, m) | BasisSymbol::Der(_, m) => m,
        }
    }

    pub fn with_degree(&self, m: Degree) -> BasisSymbol {
        match self {
            BasisSymbol::Loop(a, _) => BasisSymbol::Loop(*a, m),
            BasisSymbol::Kahler(i, _) => BasisSymbol::Kahler(*i, m),
            BasisSymbol::Der(i, _) => BasisSymbol::Der(*i, m),
        }
    }
}

/// Finite rational combination of basis symbols.
pub type AlgElement = SparseVec<BasisSymbol>;

/// `φ = mu1 φ1 + mu2 φ2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleSpec {
    pub mu1: Rational,
    pub mu2: Rational,
}

impl CocycleSpec {
    pub fn new(mu1: Rational, mu2: Rational) -> Self {
        CocycleSpec { mu1, mu2 }
    }

    pub fn zero() -> Self {
        CocycleSpec { mu1: Rational::zero(), mu2: Rational::zero() }
    }

    pub fn from_ints(mu1: i64, mu2: i64) -> Self {
        CocycleSpec { mu1: int(mu1), mu2: int(mu2) }
    }
}

/// Central term of the loop-loop bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CentralTerm {
    /// `⟨x,y⟩ Σ m_i t^{m+k} K_i`.
    WithForm,
    /// `Σ m_i t^{m+k} K_i` without the form factor. Not a Lie algebra; kept as a negative control.
    WithoutForm,
}

/// A full toroidal Lie algebra: rank `n`, finite-dimensional `g`, cocycle.
#[derive(Clone, Debug)]
pub struct Toroidal {
    n: usize,
    g: Arc<GAlgebra>,
    phi: CocycleSpec,
    central: CentralTerm,
}

impl PartialEq for Toroidal {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.phi == other.phi && self.central == other.central && *self.g == *other.g
    }
}

impl Toroidal {
    pub fn new(n: usize, g: GAlgebra, phi: CocycleSpec) -> Result<Self> {
        Self::with_shared(n, Arc::new(g), phi)
    }

    pub fn with_shared(n: usize, g: Arc<GAlgebra>, phi: CocycleSpec) -> Result<Self> {
        if n < 2 {
            return Err(Error::Config(format!("rank n must be at least 2, got {n}")));
        }
        Ok(Toroidal { n, g, phi, central: CentralTerm::WithForm })
    }

    pub fn with_central_term(mut self, central: CentralTerm) -> Self {
        self.central = central;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn g(&self) -> &GAlgebra {
        &self.g
    }

    pub fn g_shared(&self) -> Arc<GAlgebra> {
        self.g.clone()
    }

    pub fn phi(&self) -> &CocycleSpec {
        &self.phi
    }

    pub fn central_term(&self) -> CentralTerm {
        self.central
    }

    pub fn loop_elem(&self, a: usize, m: &Degree) -> AlgElement {
        AlgElement::unit(BasisSymbol::Loop(a, m.clone()))
    }

    /// `t^m K_i` in canonical form.
    pub fn kahler(&self, i: usize, m: &Degree) -> AlgElement {
        canonical_kahler_term(i, m)
    }

    pub fn der(&self, i: usize, m: &Degree) -> AlgElement {
        AlgElement::unit(BasisSymbol::Der(i, m.clone()))
    }

    /// Checks that every symbol of `x` belongs to this configuration.
    pub fn check(&self, x: &AlgElement) -> Result<()> {
        for s in x.keys() {
            if s.degree().len() != self.n {
                return Err(Error::Config(format!("degree {} has length {}, expected {}", s.degree(), s.degree().len(), self.n)));
            }
            let ok = match s {
                BasisSymbol::Loop(a, _) => *a < self.g.dim(),
                BasisSymbol::Kahler(i, m) => *i < self.n && is_canonical_kahler(*i, m),
                BasisSymbol::Der(i, _) => *i < self.n,
            };
            if !ok {
                return Err(Error::Config(format!("symbol {} does not belong to this algebra", self.symbol_name(s))));
            }
        }
        Ok(())
    }

    /// Degree of a homogeneous element (`None` for zero or mixed degrees).
    pub fn degree(&self, x: &AlgElement) -> Option<Degree> {
        let mut it = x.keys().map(|s| s.degree());
        let first = it.next()?.clone();
        it.all(|m| *m == first).then_some(first)
    }

    pub fn bracket(&self, x: &AlgElement, y: &AlgElement) -> Result<AlgElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub fn bracket_unchecked(&self, x: &AlgElement, y: &AlgElement) -> AlgElement {
        let mut out = AlgElement::new();
        for (a, ca) in x.iter() {
            for (b, cb) in y.iter() {
                out.add_scaled(&self.bracket_symbols(a, b), &(ca * cb));
            }
        }
        out
    }

    /// Bracket of two basis symbols, Kähler output canonical.
    pub fn bracket_symbols(&self, a: &BasisSymbol, b: &BasisSymbol) -> AlgElement {
        use BasisSymbol::*;
        match (a, b) {
            (Loop(x, m), Loop(y, k)) => {
                let mk = m.add(k);
                let mut out = self.g.bracket_basis(*x, *y).map_keys(|z| Loop(*z, mk.clone()));
                let factor = match self.central {
                    CentralTerm::WithForm => self.g.form_basis(*x, *y).clone(),
                    CentralTerm::WithoutForm => Rational::one(),
                };
                if !factor.is_zero() {
                    out.add_scaled(&kahler_combination(&m.0, &mk), &factor);
                }
                out
            }
            (Loop(..), Kahler(..)) | (Kahler(..), Loop(..)) | (Kahler(..), Kahler(..)) => AlgElement::new(),
            (Der(i, m), Loop(x, k)) => AlgElement::from_pairs([(Loop(*x, m.add(k)), int(k.get(*i)))]),
            (Loop(..), Der(..)) => self.bracket_symbols(b, a).neg(),
            (Der(i, m), Kahler(j, k)) => {
                let mk = m.add(k);
                let mut out = canonical_kahler_term(*j, &mk).scaled(&int(k.get(*i)));
                if i == j {
                    out.add_scaled(&kahler_combination(&m.0, &mk), &Rational::one());
                }
                out
            }
            (Kahler(..), Der(..)) => self.bracket_symbols(b, a).neg(),
            (Der(i, m), Der(j, k)) => {
                let mk = m.add(k);
                let mut out = AlgElement::new();
                out.add_term(Der(*j, mk.clone()), &int(k.get(*i)));
                out.add_term(Der(*i, mk.clone()), &int(-m.get(*j)));
                // φ1 = -k_i m_j Σ m_p t^{m+k} K_p,  φ2 = m_i k_j Σ m_p t^{m+k} K_p
                let c = &self.phi.mu1 * int(-k.get(*i) * m.get(*j)) + &self.phi.mu2 * int(m.get(*i) * k.get(*j));
                if !c.is_zero() {
                    out.add_scaled(&kahler_combination(&m.0, &mk), &c);
                }
                out
            }
        }
    }

    /// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]]`.
    pub fn jacobi_defect(&self, x: &AlgElement, y: &AlgElement, z: &AlgElement) -> Result<AlgElement> {
        let mut out = self.bracket(x, &self.bracket(y, z)?)?;
        out.add_scaled(&self.bracket(y, &self.bracket(z, x)?)?, &Rational::one());
        out.add_scaled(&self.bracket(z, &self.bracket(x, y)?)?, &Rational::one());
        Ok(out)
    }

    /// `D(p, m) = Σ p_i t^m d_i`.
    pub fn make_d(&self, p: &[Rational], m: &Degree) -> AlgElement {
        AlgElement::from_pairs(p.iter().enumerate().map(|(i, c)| (BasisSymbol::Der(i, m.clone()), c.clone())))
    }

    /// `K(p, m) = Σ p_i t^m K_i`, canonical.
    pub fn make_k(&self, p: &[Rational], m: &Degree) -> AlgElement {
        let mut out = AlgElement::new();
        for (i, c) in p.iter().enumerate() {
            out.add_scaled(&canonical_kahler_term(i, m), c);
        }
        out
    }

    /// Applies the automorphism induced by a unimodular `C` acting on degrees.
    pub fn coordinate_change(&self, c: &IntMatrix, x: &AlgElement) -> Result<AlgElement> {
        let ch = CoordinateChange::new(c, self.n)?;
        self.check(x)?;
        Ok(ch.apply(x))
    }

    /// The identification `x ⊗ t^m ↦ x ⊗ t^{Σ m_i α_i}`,
    /// `t^m K_i ↦ K(α_i, Σ m_i α_i)`, `t^m d_i ↦ D(β_i, Σ m_i α_i)` with
    /// `β` the dual basis, defined on elements whose degrees have first entry 0.
    pub fn phi_embed(&self, alpha_basis: &[Degree], x: &AlgElement) -> Result<AlgElement> {
        if alpha_basis.len() != self.n || alpha_basis.iter().any(|a| a.len() != self.n) {
            return Err(Error::Dimension(format!("alpha basis must consist of {} vectors of length {}", self.n, self.n)));
        }
        if let Some(s) = x.keys().find(|s| s.degree().get(0) != 0) {
            return Err(Error::Validation(format!("{} is outside the degree-(0,*) subalgebra", self.symbol_name(s))));
        }
        let rows: IntMatrix = alpha_basis.iter().map(|a| a.0.clone()).collect();
        self.coordinate_change(&intmat::transpose(&rows), x)
    }

    /// Config-format name of a symbol: `e@(1,0,0)`, `K1@(0,1,0)`, `d2@(0,0,0)`.
    pub fn symbol_name(&self, s: &BasisSymbol) -> String {
        match s {
            BasisSymbol::Loop(a, m) => format!("{}@{}", self.g.label(*a), m),
            BasisSymbol::Kahler(i, m) => format!("K{}@{}", i + 1, m),
            BasisSymbol::Der(i, m) => format!("d{}@{}", i + 1, m),
        }
    }

    pub fn render(&self, x: &AlgElement) -> String {
        x.render_with(|s| self.symbol_name(s))
    }

    /// Parses the format produced by [`Toroidal::render`], e.g. `h@(0,0,0) - 1/2*K2@(1,1,0)`.
    pub fn parse_element(&self, text: &str) -> Result<AlgElement> {
        let mut out = AlgElement::new();
        for (sign, term) in split_terms(text)? {
            let (coef, sym) = match term.rsplit_once('*') {
                Some((c, s)) => (parse_rational(c)?, s.trim()),
                None => (Rational::one(), term.trim()),
            };
            let coef = if sign { -coef } else { coef };
            let s = self.parse_symbol(sym)?;
            match s {
                BasisSymbol::Kahler(i, m) => out.add_scaled(&canonical_kahler_term(i, &m), &coef),
                s => out.add_term(s, &coef),
            }
        }
        self.check(&out)?;
        Ok(out)
    }

    fn parse_symbol(&self, sym: &str) -> Result<BasisSymbol> {
        let bad = || Error::Parse(format!("invalid basis symbol {sym:?}"));
        let (name, deg) = sym.split_once('@').ok_or_else(bad)?;
        let m = parse_degree(deg)?;
        if m.len() != self.n {
            return Err(Error::Parse(format!("degree {deg} should have {} entries", self.n)));
        }
        if let Some(a) = self.g.index_of(name) {
            return Ok(BasisSymbol::Loop(a, m));
        }
        let index = |rest: &str| -> Result<usize> {
            let i: usize = rest.parse().map_err(|_| bad())?;
            if i == 0 || i > self.n {
                return Err(bad());
            }
            Ok(i - 1)
        };
        if let Some(rest) = name.strip_prefix('K') {
            return Ok(BasisSymbol::Kahler(index(rest)?, m));
        }
        if let Some(rest) = name.strip_prefix('d') {
            return Ok(BasisSymbol::Der(index(rest)?, m));
        }
        Err(bad())
    }
}

/// Parses `(a,b,c)`.
pub fn parse_degree(text: &str) -> Result<Degree> {
    let t = text.trim();
    let inner = t
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| Error::Parse(format!("invalid degree {text:?}")))?;
    inner
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| Error::Parse(format!("invalid degree {text:?}"))))
        .collect::<Result<Vec<_>>>()
        .map(Degree)
}

/// Splits a signed sum at top-level `+`/`-`; yields `(negative, term)`.
fn split_terms(text: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut neg = false;
    for ch in text.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if cur.trim().is_empty() {
                    if ch == '-' {
                        neg = !neg;
                    }
                } else {
                    out.push((neg, std::mem::take(&mut cur)));
                    neg = ch == '-';
                }
            }
            _ => cur.push(ch),
        }
    }
    if cur.trim().is_empty() {
        return Err(Error::Parse(format!("incomplete expression {text:?}")));
    }
    out.push((neg, cur));
    if out.len() == 1 && out[0].1.trim() == "0" {
        out.clear();
    }
    Ok(out)
}

fn is_canonical_kahler(i: usize, m: &Degree) -> bool {
    m.pivot() != Some(i)
}

/// Canonical form of `t^m K_i`.
pub fn canonical_kahler_term(i: usize, m: &Degree) -> AlgElement {
    match m.pivot() {
        Some(p) if p == i => {
            let inv = -Rational::one() / int(m.get(p));
            AlgElement::from_pairs(
                m.0.iter()
                    .enumerate()
                    .filter(|&(j, &mj)| j != p && mj != 0)
                    .map(|(j, &mj)| (BasisSymbol::Kahler(j, m.clone()), &inv * int(mj))),
            )
        }
        _ => AlgElement::unit(BasisSymbol::Kahler(i, m.clone())),
    }
}

/// Canonical form of `Σ_i p_i t^{deg} K_i` for an integer vector `p`.
fn kahler_combination(p: &[i64], deg: &Degree) -> AlgElement {
    let mut out = AlgElement::new();
    for (i, &pi) in p.iter().enumerate() {
        if pi != 0 {
            out.add_scaled(&canonical_kahler_term(i, deg), &int(pi));
        }
    }
    out
}

/// Reduces every Kähler term of a formal sum to canonical form; other terms pass through.
pub fn canon_kahler(raw: &AlgElement) -> AlgElement {
    let mut out = AlgElement::new();
    for (s, c) in raw.iter() {
        match s {
            BasisSymbol::Kahler(i, m) => out.add_scaled(&canonical_kahler_term(*i, m), c),
            _ => out.add_term(s.clone(), c),
        }
    }
    out
}

/// A unimodular change of coordinates `m ↦ Cm` with its induced automorphism.
#[derive(Clone, Debug)]
pub struct CoordinateChange {
    c: IntMatrix,
    inv: IntMatrix,
}

impl CoordinateChange {
    pub fn new(c: &IntMatrix, n: usize) -> Result<Self> {
        if c.len() != n || c.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("coordinate change must be {n}x{n}")));
        }
        if !intmat::is_unimodular(c) {
            return Err(Error::Validation("coordinate change matrix is not unimodular".into()));
        }
        let inv = intmat::inverse(c).ok_or_else(|| Error::Validation("coordinate change matrix is not unimodular".into()))?;
        Ok(CoordinateChange { c: c.clone(), inv })
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.c
    }

    pub fn inverse(&self) -> CoordinateChange {
        CoordinateChange { c: self.inv.clone(), inv: self.c.clone() }
    }

    pub fn map_degree(&self, m: &Degree) -> Degree {
        Degree(intmat::apply(&self.c, &m.0))
    }

    pub fn apply_symbol(&self, s: &BasisSymbol) -> AlgElement {
        let cm = self.map_degree(s.degree());
        match s {
            BasisSymbol::Loop(a, _) => AlgElement::unit(BasisSymbol::Loop(*a, cm)),
            BasisSymbol::Kahler(i, _) => {
                let mut out = AlgElement::new();
                for (r, row) in self.c.iter().enumerate() {
                    if row[*i] != 0 {
                        out.add_scaled(&canonical_kahler_term(r, &cm), &int(row[*i]));
                    }
                }
                out
            }
            BasisSymbol::Der(i, _) => AlgElement::from_pairs(
                self.inv[*i].iter().enumerate().filter(|(_, &b)| b != 0).map(|(r, &b)| (BasisSymbol::Der(r, cm.clone()), int(b))),
            ),
        }
    }

    pub fn apply(&self, x: &AlgElement) -> AlgElement {
        let mut out = AlgElement::new();
        for (s, c) in x.iter() {
            out.add_scaled(&self.apply_symbol(s), c);
        }
        out
    }
}

impl fmt::Display for CocycleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_rational(&self.mu1), fmt_rational(&self.mu2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(v: &[i64]) -> Degree {
        Degree(v.to_vec())
    }

    fn tau(mu1: i64, mu2: i64) -> Toroidal {
        Toroidal::new(3, GAlgebra::sl2(), CocycleSpec::from_ints(mu1, mu2)).unwrap()
    }

    const E: usize = 0;
    const H: usize = 1;
    const F: usize = 2;

    #[test]
    fn kahler_relation_vanishes() {
        let t = tau(0, 0);
        let m = d(&[1, 2, 3]);
        let p: Vec<Rational> = m.0.iter().map(|&x| int(x)).collect();
        assert!(t.make_k(&p, &m).is_zero());
        assert!(t.kahler(0, &d(&[2, 0, 0])).is_zero());
        assert_eq!(t.kahler(0, &d(&[0, 0, 0])), AlgElement::unit(BasisSymbol::Kahler(0, d(&[0, 0, 0]))));
    }

    #[test]
    fn loop_bracket_with_central_term() {
        let t = tau(0, 0);
        let x = t.loop_elem(E, &d(&[1, 0, 0]));
        let y = t.loop_elem(F, &d(&[-1, 0, 0]));
        let mut want = t.loop_elem(H, &d(&[0, 0, 0]));
        want.add_scaled(&t.kahler(0, &d(&[0, 0, 0])), &int(1));
        assert_eq!(t.bracket(&x, &y).unwrap(), want);
    }

    #[test]
    fn derivation_on_loop() {
        let t = tau(0, 0);
        let r = t.bracket(&t.der(0, &d(&[0, 0, 0])), &t.loop_elem(E, &d(&[2, 0, 0]))).unwrap();
        assert_eq!(r, t.loop_elem(E, &d(&[2, 0, 0])).scaled(&int(2)));
    }

    #[test]
    fn witt_bracket_with_first_cocycle() {
        let t = tau(1, 0);
        let r = t.bracket(&t.der(1, &d(&[1, 0, 0])), &t.der(0, &d(&[0, 1, 0]))).unwrap();
        let m = d(&[1, 1, 0]);
        let want = AlgElement::from_pairs([
            (BasisSymbol::Der(0, m.clone()), int(1)),
            (BasisSymbol::Der(1, m.clone()), int(-1)),
            (BasisSymbol::Kahler(1, m.clone()), int(1)),
        ]);
        assert_eq!(r, want);
    }

    #[test]
    fn d_on_k_matches_closed_form() {
        let t = tau(0, 0);
        let p = [int(1), int(2), int(-1)];
        let q = [int(0), int(3), int(1)];
        let m = d(&[1, -1, 2]);
        let k = d(&[0, 2, 1]);
        let lhs = t.bracket(&t.make_d(&p, &m), &t.make_k(&q, &k)).unwrap();
        let dot = |a: &[Rational], b: &[i64]| a.iter().zip(b).fold(int(0), |acc, (x, y)| acc + x * int(*y));
        let pk = dot(&p, &k.0);
        let pq = p.iter().zip(&q).fold(int(0), |acc, (x, y)| acc + x * y);
        let z: Vec<Rational> = (0..3).map(|i| &pk * &q[i] + &pq * int(m.get(i))).collect();
        assert_eq!(lhs, t.make_k(&z, &m.add(&k)));
    }

    #[test]
    fn negative_control_breaks_jacobi() {
        let x = |t: &Toroidal| {
            (t.loop_elem(H, &d(&[1, 0, 0])), t.loop_elem(E, &d(&[-1, 0, 0])), t.loop_elem(F, &d(&[0, 0, 0])))
        };
        let good = tau(0, 0);
        let (a, b, c) = x(&good);
        assert!(good.jacobi_defect(&a, &b, &c).unwrap().is_zero());
        let bad = tau(0, 0).with_central_term(CentralTerm::WithoutForm);
        let defect = bad.jacobi_defect(&a, &b, &c).unwrap();
        assert_eq!(defect, bad.kahler(0, &d(&[0, 0, 0])).scaled(&int(-1)));
    }

    #[test]
    fn swap_permutes_derivations() {
        let t = tau(0, 0);
        let c = vec![vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]];
        assert_eq!(t.coordinate_change(&c, &t.der(0, &d(&[0, 0, 0]))).unwrap(), t.der(1, &d(&[0, 0, 0])));
        let id = intmat::identity(3);
        let x = t.loop_elem(E, &d(&[1, 2, 3]));
        assert_eq!(t.coordinate_change(&id, &x).unwrap(), x);
        assert!(t.coordinate_change(&vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], &x).is_err());
    }

    #[test]
    fn shear_preserves_bracket() {
        let t = tau(1, 1);
        let c = vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let x = t.der(0, &d(&[0, 0, 0]));
        let y = t.loop_elem(E, &d(&[1, 0, 0]));
        let lhs = t.coordinate_change(&c, &t.bracket(&x, &y).unwrap()).unwrap();
        let rhs = t.bracket(&t.coordinate_change(&c, &x).unwrap(), &t.coordinate_change(&c, &y).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_embed_maps_k1() {
        let t = tau(0, 0);
        let alphas = vec![d(&[1, 1, 0]), d(&[0, 1, 0]), d(&[0, 0, 1])];
        // t^{(0,2,1)} K_1 ↦ K(α_1, 2α_2 + α_3)
        let x = AlgElement::unit(BasisSymbol::Kahler(0, d(&[0, 2, 1])));
        let img = t.phi_embed(&alphas, &x).unwrap();
        let target = d(&[0, 2, 1]);
        assert_eq!(img, t.make_k(&[int(1), int(1), int(0)], &target));
        assert!(t.phi_embed(&alphas, &t.der(0, &d(&[1, 0, 0]))).is_err());
        let std: Vec<Degree> = (0..3).map(|i| Degree::unit(3, i)).collect();
        let y = t.der(1, &d(&[0, 1, -1]));
        assert_eq!(t.phi_embed(&std, &y).unwrap(), y);
    }

    #[test]
    fn render_parse_roundtrip() {
        let t = tau(0, 0);
        let mut x = t.loop_elem(H, &d(&[0, -1, 0]));
        x.add_scaled(&t.kahler(1, &d(&[1, 1, 0])), &int(-3));
        x.add_scaled(&t.der(2, &d(&[0, 0, -2])), &crate::exactlin::rat(1, 2));
        let s = t.render(&x);
        assert_eq!(t.parse_element(&s).unwrap(), x);
        assert!(t.parse_element("0").unwrap().is_zero());
        assert!(t.parse_element("q@(0,0,0)").is_err());
    }
}
