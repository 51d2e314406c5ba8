//! Run configuration: a TOML document with nested blocks. Rationals are
//! strings such as `"1/3"`; unknown keys are rejected.
//!
//! ```toml
//! seed = 42
//! samples = 200
//! window = "-2..2"
//!
//! [algebra]
//! n = 3
//! g = "sl2"
//! mu1 = "0"
//! mu2 = "0"
//!
//! [coefficients]
//! modulus = "s^2 - 3s + 2"
//!
//! [[module]]
//! name = "cusp"
//! kind = "tau"
//! c = "1/2"
//! lam1 = [1]
//! lam2 = [1, 0]
//! alpha = ["1/3", "0", "0"]
//! ```

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Deserialize;

use crate::coeffalg::{parse_polynomial, BElement, CoeffAlgebra, EvaluationPoint};
use crate::error::{Error, Result};
use crate::exactlin::{parse_rational, Rational, SparseVec};
use crate::maptoroidal::TriangularData;
use crate::reps::HighestWeight;
use crate::tensormod::{DeRhamComplex, ModuleKind, TensorModule, TensorModuleSpec, WeightWindow};
use crate::toroidal::{CocycleSpec, Degree, GAlgebra, SimpleTriple, Toroidal};
use crate::verma::VermaConfig;

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    /// Degree window `"lo..hi"`, applied in every coordinate.
    pub window: Option<String>,
    /// Suites run by `all`; every suite when omitted.
    pub suites: Option<Vec<String>>,
    pub output: Option<PathBuf>,
    pub algebra: AlgebraBlock,
    pub coefficients: Option<CoeffBlock>,
    #[serde(default, rename = "module")]
    pub modules: Vec<ModuleBlock>,
    pub derham: Option<DeRhamBlock>,
    pub verma: Option<VermaBlock>,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraBlock {
    pub n: usize,
    pub g: GBlock,
    #[serde(default = "zero_string")]
    pub mu1: String,
    #[serde(default = "zero_string")]
    pub mu2: String,
}

fn zero_string() -> String {
    "0".into()
}

/// A built-in algebra by name, or inline structure constants.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum GBlock {
    Named(String),
    Inline(InlineG),
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct InlineG {
    pub name: String,
    pub labels: Vec<String>,
    /// Entries `[i, j, k, "c"]` meaning `[x_i, x_j] += c x_k`.
    pub constants: Vec<(usize, usize, usize, String)>,
    /// Invariant form, row by row.
    pub form: Vec<Vec<String>>,
    #[serde(default)]
    pub cartan: Vec<usize>,
    /// Simple root triples `[e, h, f]`.
    #[serde(default)]
    pub simple: Vec<[usize; 3]>,
}

/// `modulus = "<polynomial in s>"`, or `labels` plus a multiplication
/// table whose entries are coordinate vectors.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CoeffBlock {
    pub modulus: Option<String>,
    pub labels: Option<Vec<String>>,
    pub table: Option<Vec<Vec<Vec<String>>>>,
}

#[derive(Clone, Copy, Debug, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum KindName {
    Tau,
    TauRing,
    Eval,
}

/// An evaluation point: the value of `s` for a univariate presentation, or
/// the values on every basis element.
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum PsiBlock {
    Value(String),
    Values(Vec<String>),
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ModuleBlock {
    pub name: String,
    pub kind: KindName,
    #[serde(default = "zero_string")]
    pub c: String,
    /// Highest weight of `V1` in fundamental coordinates; zero when omitted.
    pub lam1: Option<Vec<i64>>,
    /// Highest weight of `V2`; zero when omitted.
    pub lam2: Option<Vec<i64>>,
    pub alpha: Vec<String>,
    pub a: Option<String>,
    pub b: Option<String>,
    pub psi: Option<PsiBlock>,
    /// Also run the window cyclicity scan in `verify-module`.
    #[serde(default)]
    pub cyclicity: bool,
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DeRhamBlock {
    pub alpha: Vec<String>,
    /// Generators `t^m d_j` with `m` in `[-bound, bound]^n` are tested for commuting with `d`.
    #[serde(default = "one")]
    pub bound: i64,
}

fn one() -> i64 {
    1
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct VermaBlock {
    /// Name of a `tau_ring` module with an evaluation point.
    pub module: String,
    pub beta: Vec<i64>,
    pub m_basis: Vec<Vec<i64>>,
    pub depth: usize,
    /// Window on M-coordinates; falls back to the top-level window.
    pub window: Option<String>,
    #[serde(default = "one")]
    pub ghw_k: i64,
}

/// Byte offset to 1-based line and column.
fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let msg = e.message().to_string();
            match e.span() {
                Some(span) => {
                    let (line, col) = line_col(text, span.start);
                    Error::Config(format!("line {line}, column {col}: {msg}"))
                }
                None => Error::Config(msg),
            }
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Config(m) => Error::Config(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn toroidal(&self) -> Result<Toroidal> {
        let a = &self.algebra;
        let g = match &a.g {
            GBlock::Named(name) => GAlgebra::by_name(name)?,
            GBlock::Inline(inline) => inline.build()?,
        };
        let phi = CocycleSpec::new(rational("algebra.mu1", &a.mu1)?, rational("algebra.mu2", &a.mu2)?);
        Toroidal::new(a.n, g, phi)
    }

    pub fn coeffs(&self) -> Result<Option<Arc<CoeffAlgebra>>> {
        let Some(block) = &self.coefficients else {
            return Ok(None);
        };
        let b = match (&block.modulus, &block.labels, &block.table) {
            (Some(f), None, None) => CoeffAlgebra::univariate_quotient(&parse_polynomial(f)?)?,
            (None, Some(labels), Some(table)) => {
                let rows = table
                    .iter()
                    .map(|row| row.iter().map(|entry| coords("coefficients.table", entry)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                CoeffAlgebra::from_table(labels.clone(), rows)?
            }
            _ => return Err(Error::Config("coefficients: give either modulus, or labels and table".into())),
        };
        Ok(Some(Arc::new(b)))
    }

    pub fn module_block(&self, name: &str) -> Result<&ModuleBlock> {
        self.modules.iter().find(|m| m.name == name).ok_or_else(|| Error::Config(format!("no module named {name:?}")))
    }

    pub fn module(&self, tau: &Toroidal, coeffs: &Option<Arc<CoeffAlgebra>>, block: &ModuleBlock) -> Result<TensorModule> {
        let spec = block.spec(tau, coeffs.as_deref())?;
        let with_b = spec.psi.is_some().then(|| coeffs.clone()).flatten();
        TensorModule::new(tau, with_b, spec).map_err(|e| Error::Config(format!("module {:?}: {e}", block.name)))
    }

    pub fn derham(&self, tau: &Toroidal) -> Result<Option<DeRhamComplex>> {
        let Some(block) = &self.derham else {
            return Ok(None);
        };
        let alpha = rationals("derham.alpha", &block.alpha)?;
        Ok(Some(DeRhamComplex::new(tau, alpha)?))
    }

    /// `cli_window` (from the command line) takes precedence over the block's
    /// window, which takes precedence over the top-level one.
    pub fn verma(&self, tau: &Toroidal, coeffs: &Option<Arc<CoeffAlgebra>>, cli_window: Option<(i64, i64)>) -> Result<Option<VermaConfig>> {
        let Some(block) = &self.verma else {
            return Ok(None);
        };
        let x = self.module_block(&block.module)?.spec(tau, coeffs.as_deref())?;
        let tri = TriangularData::new(Degree(block.beta.clone()), block.m_basis.iter().map(|r| Degree(r.clone())).collect())?;
        let (lo, hi) = match (cli_window, block.window.as_ref().or(self.window.as_ref())) {
            (Some(w), _) => w,
            (None, Some(w)) => parse_window(w)?,
            (None, None) => (-2, 2),
        };
        let window = WeightWindow::cube(tau.n() - 1, lo, hi)?;
        Ok(Some(VermaConfig { x, tri, depth: block.depth, window }))
    }

    pub fn ghw_k(&self) -> i64 {
        self.verma.as_ref().map_or(1, |v| v.ghw_k)
    }
}

impl InlineG {
    fn build(&self) -> Result<GAlgebra> {
        let constants = self
            .constants
            .iter()
            .map(|(i, j, k, c)| Ok((*i, *j, *k, rational("algebra.g.constants", c)?)))
            .collect::<Result<Vec<_>>>()?;
        let form = self.form.iter().map(|row| rationals("algebra.g.form", row)).collect::<Result<Vec<_>>>()?;
        let simple = self.simple.iter().map(|&[e, h, f]| SimpleTriple { e, f, h }).collect();
        GAlgebra::from_structure_constants(&self.name, self.labels.clone(), &constants, form, self.cartan.clone(), simple)
    }
}

impl ModuleBlock {
    pub fn spec(&self, tau: &Toroidal, coeffs: Option<&CoeffAlgebra>) -> Result<TensorModuleSpec> {
        let ctx = |field: &str| format!("module {:?}: {field}", self.name);
        let n = tau.n();
        let kind = match self.kind {
            KindName::Tau => ModuleKind::Tau,
            KindName::Eval => ModuleKind::Eval,
            KindName::TauRing => ModuleKind::TauRing {
                a: rational(&ctx("a"), self.a.as_deref().unwrap_or("0"))?,
                b: rational(&ctx("b"), self.b.as_deref().unwrap_or("0"))?,
            },
        };
        if self.kind != KindName::TauRing && (self.a.is_some() || self.b.is_some()) {
            return Err(Error::Config(format!("{}: a and b only apply to tau_ring modules", ctx("kind"))));
        }
        let gl = if self.kind == KindName::TauRing { n - 1 } else { n };
        let lam1 = match &self.lam1 {
            Some(v) => HighestWeight::new(v.clone())?,
            None => HighestWeight::zero(tau.g().rank()),
        };
        let lam2 = match &self.lam2 {
            Some(v) => HighestWeight::new(v.clone())?,
            None => HighestWeight::zero(gl.saturating_sub(1)),
        };
        let psi = match &self.psi {
            None => None,
            Some(p) => {
                let b = coeffs.ok_or_else(|| Error::Config(format!("{} needs a [coefficients] block", ctx("psi"))))?;
                Some(point(&ctx("psi"), b, p)?)
            }
        };
        Ok(TensorModuleSpec { kind, c: rational(&ctx("c"), &self.c)?, lam1, lam2, alpha: rationals(&ctx("alpha"), &self.alpha)?, psi })
    }
}

fn point(ctx: &str, b: &CoeffAlgebra, p: &PsiBlock) -> Result<EvaluationPoint> {
    match p {
        PsiBlock::Value(v) => b.point_at(&rational(ctx, v)?),
        PsiBlock::Values(vs) => b.point(rationals(ctx, vs)?),
    }
}

fn rational(ctx: &str, s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| Error::Config(format!("{ctx}: {e}")))
}

fn rationals(ctx: &str, xs: &[String]) -> Result<Vec<Rational>> {
    xs.iter().map(|s| rational(ctx, s)).collect()
}

fn coords(ctx: &str, xs: &[String]) -> Result<BElement> {
    Ok(SparseVec::from_pairs(rationals(ctx, xs)?.into_iter().enumerate()))
}

/// Parses `"lo..hi"`.
pub fn parse_window(text: &str) -> Result<(i64, i64)> {
    let bad = || Error::Config(format!("window {text:?} is not of the form lo..hi"));
    let (lo, hi) = text.trim().split_once("..").ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(Error::Config(format!("window {text:?} is empty")));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = r#"
seed = 7

[algebra]
n = 3
g = "sl2"

[coefficients]
modulus = "s^2 - 3s + 2"

[[module]]
name = "x"
kind = "tau_ring"
a = "1"
b = "-1/2"
alpha = ["0", "0"]
psi = "2"
"#;

    #[test]
    fn parses_basic_config() {
        let c = RunConfig::parse(BASIC).unwrap();
        assert_eq!(c.seed, Some(7));
        let tau = c.toroidal().unwrap();
        let b = c.coeffs().unwrap();
        let m = c.module(&tau, &b, &c.modules[0]).unwrap();
        assert!(m.is_ring());
        assert_eq!(m.spec().kind, ModuleKind::TauRing { a: Rational::from(1), b: crate::exactlin::rat(-1, 2) });
    }

    #[test]
    fn unknown_key_reports_position() {
        let text = BASIC.replace("seed = 7", "seed = 7\ncolour = 3");
        let err = RunConfig::parse(&text).unwrap_err().to_string();
        assert!(err.contains("line 3, column 1"), "{err}");
        assert!(err.contains("colour"), "{err}");
    }

    #[test]
    fn bad_rational_is_a_config_error() {
        let text = BASIC.replace("b = \"-1/2\"", "b = \"-1/0\"");
        let c = RunConfig::parse(&text).unwrap();
        let tau = c.toroidal().unwrap();
        assert!(matches!(c.module(&tau, &None, &c.modules[0]), Err(Error::Config(_))));
    }

    #[test]
    fn windows() {
        assert_eq!(parse_window("-2..2").unwrap(), (-2, 2));
        assert_eq!(parse_window(" 0 .. 3 ").unwrap(), (0, 3));
        assert!(parse_window("3..1").is_err());
        assert!(parse_window("-2,2").is_err());
    }

    #[test]
    fn inline_algebra_matches_builtin() {
        let text = r#"
[algebra]
n = 2
g = { name = "sl2", labels = ["e", "h", "f"], constants = [[0, 2, 1, "1"], [1, 0, 0, "2"], [1, 2, 2, "-2"]], form = [["0", "0", "1"], ["0", "2", "0"], ["1", "0", "0"]], cartan = [1], simple = [[0, 1, 2]] }
"#;
        let c = RunConfig::parse(text).unwrap();
        let tau = c.toroidal().unwrap();
        let sl2 = GAlgebra::sl2();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(tau.g().bracket_basis(i, j), sl2.bracket_basis(i, j));
            }
        }
    }
}
