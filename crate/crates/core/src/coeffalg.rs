//! Finite-dimensional commutative unital coefficient algebras `B`.
//!
//! An algebra is a basis (index 0 is the unit) with a multiplication table.
//! Univariate quotients `Q[s]/(f)` keep their modulus so that rational points
//! can be enumerated from the roots of `f`.

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exactlin::{fmt_rational, int, parse_rational, rref, ExactMatrix, Rational, SparseVec};

/// Element of `B` in basis coordinates.
pub type BElement = SparseVec<usize>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    /// `Q[s]/(f)`, with the monic modulus stored low degree first.
    Univariate { modulus: Vec<Rational> },
    /// Explicit basis and table.
    Table,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffAlgebra {
    labels: Vec<String>,
    table: Vec<Vec<BElement>>,
    presentation: Presentation,
}

/// A homomorphism `ψ: B → Q`, stored by its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvaluationPoint {
    values: Vec<Rational>,
}

impl EvaluationPoint {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn eval(&self, b: &BElement) -> Rational {
        b.iter().fold(Rational::zero(), |acc, (i, c)| acc + c * &self.values[*i])
    }
}

impl CoeffAlgebra {
    /// `Q[s]/(f)` for a monic `f` given low degree first.
    pub fn univariate_quotient(f: &[Rational]) -> Result<Self> {
        let f = trim(f);
        let deg = f.len().checked_sub(1).filter(|&d| d >= 1).ok_or_else(|| Error::Validation("modulus must have degree at least 1".into()))?;
        if !f[deg].is_one() {
            return Err(Error::Validation(format!("modulus must be monic, leading coefficient is {}", fmt_rational(&f[deg]))));
        }
        let labels = (0..deg)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "s".to_string(),
                _ => format!("s^{i}"),
            })
            .collect();
        let mut table = vec![vec![BElement::new(); deg]; deg];
        for i in 0..deg {
            for j in 0..deg {
                let mut prod = vec![Rational::zero(); i + j + 1];
                prod[i + j] = Rational::one();
                table[i][j] = to_element(&poly_rem(&prod, &f));
            }
        }
        Ok(CoeffAlgebra { labels, table, presentation: Presentation::Univariate { modulus: f } })
    }

    /// Explicit table; `table[i][j]` is the product of basis elements `i` and `j`.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<BElement>>) -> Result<Self> {
        let b = CoeffAlgebra { labels, table, presentation: Presentation::Table };
        b.validate()?;
        Ok(b)
    }

    /// The one-dimensional algebra `Q`.
    pub fn rationals() -> Self {
        Self::univariate_quotient(&[int(0), int(1)]).expect("s is monic")
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim();
        if d == 0 {
            return Err(Error::Validation("coefficient algebra needs at least the unit".into()));
        }
        if self.table.len() != d || self.table.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension(format!("multiplication table must be {d}x{d}")));
        }
        if self.table.iter().flatten().any(|e| e.keys().any(|&k| k >= d)) {
            return Err(Error::Validation("multiplication table refers to an unknown basis element".into()));
        }
        for i in 0..d {
            if self.table[0][i] != BElement::unit(i) {
                return Err(Error::Validation(format!("basis element {} is not the unit", self.labels[0])));
            }
            for j in 0..d {
                if self.table[i][j] != self.table[j][i] {
                    return Err(Error::Validation(format!("not commutative at ({}, {})", self.labels[i], self.labels[j])));
                }
                for k in 0..d {
                    let lhs = self.mul(&self.table[i][j], &BElement::unit(k));
                    let rhs = self.mul(&BElement::unit(i), &self.table[j][k]);
                    if lhs != rhs {
                        return Err(Error::Validation(format!(
                            "not associative at ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn unit(&self) -> BElement {
        BElement::unit(0)
    }

    pub fn basis(&self, i: usize) -> BElement {
        BElement::unit(i)
    }

    pub fn mul(&self, a: &BElement, b: &BElement) -> BElement {
        let mut out = BElement::new();
        for (i, x) in a.iter() {
            for (j, y) in b.iter() {
                out.add_scaled(&self.table[*i][*j], &(x * y));
            }
        }
        out
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &BElement {
        &self.table[i][j]
    }

    pub fn render(&self, b: &BElement) -> String {
        b.render_with(|&i| self.labels[i].clone())
    }

    /// Validates `values` as a homomorphism.
    pub fn point(&self, values: Vec<Rational>) -> Result<EvaluationPoint> {
        if values.len() != self.dim() {
            return Err(Error::Dimension(format!("evaluation point needs {} values", self.dim())));
        }
        let p = EvaluationPoint { values };
        if !p.values[0].is_one() {
            return Err(Error::Validation("evaluation point must send the unit to 1".into()));
        }
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if p.eval(&self.table[i][j]) != &p.values[i] * &p.values[j] {
                    return Err(Error::Validation(format!(
                        "evaluation point is not multiplicative on ({}, {})",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        Ok(p)
    }

    /// For a univariate presentation, the point `s ↦ value`.
    pub fn point_at(&self, value: &Rational) -> Result<EvaluationPoint> {
        match &self.presentation {
            Presentation::Univariate { .. } => {
                let mut values = Vec::with_capacity(self.dim());
                let mut acc = Rational::one();
                for _ in 0..self.dim() {
                    values.push(acc.clone());
                    acc *= value;
                }
                self.point(values).map_err(|_| Error::Validation(format!("s = {} is not a root of the modulus", fmt_rational(value))))
            }
            Presentation::Table => Err(Error::Unsupported("point_at needs a univariate presentation".into())),
        }
    }

    /// All rational points, one per distinct root of the modulus.
    pub fn points_of(&self) -> Result<Vec<EvaluationPoint>> {
        if self.dim() == 1 {
            return Ok(vec![EvaluationPoint { values: vec![Rational::one()] }]);
        }
        let Presentation::Univariate { modulus } = &self.presentation else {
            return Err(Error::Unsupported("points can only be enumerated for univariate presentations".into()));
        };
        let roots = rational_roots(modulus)?;
        roots.iter().map(|r| self.point_at(r)).collect()
    }

    /// Basis of `ker ψ`.
    pub fn ideal_of_point(&self, p: &EvaluationPoint) -> Vec<BElement> {
        let row = SparseVec::from_pairs(p.values.iter().cloned().enumerate());
        let m = ExactMatrix::with_columns((0..self.dim()).collect(), vec![row]);
        rref(&m).kernel_basis
    }

    /// Parses an element: a polynomial in `s` for univariate presentations
    /// (reduced modulo `f`), otherwise a combination of basis labels.
    pub fn parse_element(&self, text: &str) -> Result<BElement> {
        match &self.presentation {
            Presentation::Univariate { modulus } => Ok(to_element(&poly_rem(&parse_polynomial(text)?, modulus))),
            Presentation::Table => {
                let mut out = BElement::new();
                for (neg, term) in split_signed(text)? {
                    let (c, name) = match term.rsplit_once('*') {
                        Some((c, l)) => (parse_rational(c)?, l.trim()),
                        None => match self.labels.iter().position(|l| l == term.trim()) {
                            Some(_) => (Rational::one(), term.trim()),
                            None => (parse_rational(&term)?, self.labels[0].as_str()),
                        },
                    };
                    let i = self
                        .labels
                        .iter()
                        .position(|l| l == name)
                        .ok_or_else(|| Error::Parse(format!("unknown basis label {name:?}")))?;
                    out.add_term(i, &if neg { -c } else { c });
                }
                Ok(out)
            }
        }
    }
}

fn trim(f: &[Rational]) -> Vec<Rational> {
    let mut v = f.to_vec();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn to_element(coeffs: &[Rational]) -> BElement {
    SparseVec::from_pairs(coeffs.iter().cloned().enumerate())
}

/// Remainder of `p` modulo the monic `f` (both low degree first).
fn poly_rem(p: &[Rational], f: &[Rational]) -> Vec<Rational> {
    let deg = f.len() - 1;
    let mut r = p.to_vec();
    while r.len() > deg {
        let lead = r.pop().expect("nonempty");
        let shift = r.len() - deg;
        for (i, c) in f[..deg].iter().enumerate() {
            r[shift + i] -= &lead * c;
        }
    }
    r
}

fn eval_poly(f: &[Rational], x: &Rational) -> Rational {
    f.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Synthetic division by `(s - root)`.
fn deflate(f: &[Rational], root: &Rational) -> Vec<Rational> {
    let n = f.len() - 1;
    let mut q = vec![Rational::zero(); n];
    let mut carry = Rational::zero();
    for i in (0..n).rev() {
        carry = &f[i + 1] + carry * root;
        q[i] = carry.clone();
    }
    q
}

fn divisors(n: &BigInt) -> Result<Vec<u64>> {
    let n = n.abs().to_u64().ok_or_else(|| Error::Unsupported("modulus coefficients too large for root search".into()))?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Distinct rational roots of a monic polynomial; errors if any root is not rational.
pub fn rational_roots(f: &[Rational]) -> Result<Vec<Rational>> {
    let mut f = trim(f);
    let mut roots: Vec<Rational> = Vec::new();
    let push = |roots: &mut Vec<Rational>, r: Rational| {
        if !roots.contains(&r) {
            roots.push(r);
        }
    };
    while f.len() > 1 && f[0].is_zero() {
        f.remove(0);
        push(&mut roots, Rational::zero());
    }
    while f.len() > 1 {
        // clear denominators to get an integer polynomial
        let lcm = f.iter().fold(BigInt::one(), |acc, c| acc.lcm(&c.denom()));
        let ints: Vec<BigInt> = f.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let mut found = None;
        'search: for p in divisors(&ints[0])? {
            for q in divisors(ints.last().expect("nonempty"))? {
                for sign in [1i64, -1] {
                    let cand = Rational::new(BigInt::from(p) * sign, BigInt::from(q));
                    if eval_poly(&f, &cand).is_zero() {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        let Some(r) = found else {
            return Err(Error::Unsupported("modulus has roots that are not rational".into()));
        };
        f = deflate(&f, &r);
        push(&mut roots, r);
    }
    roots.sort();
    Ok(roots)
}

fn split_signed(text: &str) -> Result<Vec<(bool, String)>> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    for ch in text.chars() {
        if (ch == '+' || ch == '-') && !cur.trim().is_empty() && !cur.trim_end().ends_with('^') {
            out.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && cur.trim().is_empty() {
            if ch == '-' {
                neg = !neg;
            }
        } else {
            cur.push(ch);
        }
    }
    if cur.trim().is_empty() {
        return Err(Error::Parse(format!("incomplete expression {text:?}")));
    }
    out.push((neg, cur));
    Ok(out)
}

/// Parses a polynomial in `s`, e.g. `"s^2 - 3s + 2"` or `"1/2*s^3 - s"`; low degree first.
pub fn parse_polynomial(text: &str) -> Result<Vec<Rational>> {
    let mut coeffs: Vec<Rational> = Vec::new();
    for (neg, term) in split_signed(text)? {
        let t: String = term.chars().filter(|c| !c.is_whitespace()).collect();
        let (c, e) = match t.split_once('s') {
            None => (parse_rational(&t)?, 0usize),
            Some((pre, post)) => {
                let pre = pre.trim_end_matches('*');
                let c = if pre.is_empty() { Rational::one() } else { parse_rational(pre)? };
                let e = if post.is_empty() {
                    1
                } else {
                    post.strip_prefix('^')
                        .and_then(|x| x.parse().ok())
                        .ok_or_else(|| Error::Parse(format!("invalid exponent in {term:?}")))?
                };
                (c, e)
            }
        };
        if coeffs.len() <= e {
            coeffs.resize(e + 1, Rational::zero());
        }
        coeffs[e] += if neg { -c } else { c };
    }
    Ok(trim(&coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b32() -> CoeffAlgebra {
        CoeffAlgebra::univariate_quotient(&parse_polynomial("s^2 - 3s + 2").unwrap()).unwrap()
    }

    #[test]
    fn reduction_mod_quadratic() {
        let b = b32();
        let s = b.basis(1);
        assert_eq!(b.mul(&s, &s), SparseVec::from_pairs([(0, int(-2)), (1, int(3))]));
        let sm1 = b.parse_element("s - 1").unwrap();
        let sm2 = b.parse_element("s - 2").unwrap();
        assert!(b.mul(&sm1, &sm2).is_zero());
        assert_eq!(b.mul(&b.unit(), &s), s);
    }

    #[test]
    fn point_algebras() {
        let b = CoeffAlgebra::univariate_quotient(&[int(-1), int(1)]).unwrap();
        assert_eq!(b.dim(), 1);
        assert!(b.ideal_of_point(&b.points_of().unwrap()[0]).is_empty());
        let nil = CoeffAlgebra::univariate_quotient(&[int(0), int(0), int(1)]).unwrap();
        assert!(nil.mul(&nil.basis(1), &nil.basis(1)).is_zero());
        assert!(CoeffAlgebra::univariate_quotient(&[int(1), int(2)]).is_err());
    }

    #[test]
    fn points_and_ideals() {
        let b = b32();
        let pts = b.points_of().unwrap();
        assert_eq!(pts.iter().map(|p| p.values()[1].clone()).collect::<Vec<_>>(), vec![int(1), int(2)]);
        let ideal = b.ideal_of_point(&pts[0]);
        assert_eq!(ideal.len(), 1);
        assert!(crate::exactlin::span_contains(&ideal, &b.parse_element("s - 1").unwrap()));
        let nil = CoeffAlgebra::univariate_quotient(&parse_polynomial("s^2").unwrap()).unwrap();
        let p = nil.points_of().unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(nil.ideal_of_point(&p[0]), vec![nil.basis(1)]);
        let lin = CoeffAlgebra::univariate_quotient(&parse_polynomial("s - 5").unwrap()).unwrap();
        assert_eq!(lin.points_of().unwrap().len(), 1);
        let irr = CoeffAlgebra::univariate_quotient(&parse_polynomial("s^2 - 2").unwrap()).unwrap();
        assert!(matches!(irr.points_of(), Err(Error::Unsupported(_))));
    }

    #[test]
    fn rational_root_search() {
        // (s - 1/2)(s + 3)^2 = s^3 + 11/2 s^2 + 6 s - 9/2
        let f = vec![parse_rational("-9/2").unwrap(), int(6), parse_rational("11/2").unwrap(), int(1)];
        assert_eq!(rational_roots(&f).unwrap(), vec![int(-3), parse_rational("1/2").unwrap()]);
    }

    #[test]
    fn table_presentation() {
        // dual numbers given explicitly
        let labels = vec!["1".to_string(), "eps".to_string()];
        let table = vec![vec![BElement::unit(0), BElement::unit(1)], vec![BElement::unit(1), BElement::new()]];
        let b = CoeffAlgebra::from_table(labels.clone(), table).unwrap();
        assert_eq!(b.parse_element("2 - 3*eps").unwrap(), SparseVec::from_pairs([(0, int(2)), (1, int(-3))]));
        let bad = vec![vec![BElement::unit(0), BElement::unit(1)], vec![BElement::unit(0), BElement::unit(0)]];
        assert!(CoeffAlgebra::from_table(labels, bad).is_err());
        assert!(b.point(vec![int(1), int(1)]).is_err());
    }
}
