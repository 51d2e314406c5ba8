//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 2 when any check fails, 1 on a
//! configuration or I/O error.

pub mod config;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::coeffalg::CoeffAlgebra;
use crate::error::{Error, Result};
use crate::report::{CheckRecord, Finding, Report};
use crate::suites;
use crate::tensormod::{evaluation_factorization_check, window_cyclicity_report, CyclicTarget, DeRhamComplex, TensorModule, WeightWindow};
use crate::toroidal::Toroidal;
use crate::verma::{VermaConfig, VermaModule};

pub use config::{parse_window, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "toroidalkit", version, about = "Exact verification suites for full toroidal Lie algebras and their modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Options,
}

#[derive(Debug, Clone, clap::Args)]
pub struct Options {
    /// Configuration file (TOML).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Seed for every sampled input; overrides the config.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Samples per randomised check; overrides the config.
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Degree window "lo..hi"; overrides the config.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub window: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record every wall time as 0 so reports compare byte for byte.
    #[arg(long, global = true)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Antisymmetry, Jacobi, grading and the Kähler relation.
    VerifyAlgebra,
    /// Module axiom on every configured module.
    VerifyModule,
    /// Weight multiplicities of every configured module over the window.
    Weights,
    /// The de Rham complex of the [derham] block.
    Derham,
    /// Evaluation factorisation for every module with an evaluation point.
    EvalCheck,
    /// Generalised Verma module of the [verma] block.
    Verma,
    /// Every suite the configuration supports.
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::VerifyAlgebra => "verify-algebra",
            Command::VerifyModule => "verify-module",
            Command::Weights => "weights",
            Command::Derham => "derham",
            Command::EvalCheck => "eval-check",
            Command::Verma => "verma",
            Command::All => "all",
        }
    }

    const SUITES: [Command; 6] =
        [Command::VerifyAlgebra, Command::VerifyModule, Command::Weights, Command::Derham, Command::EvalCheck, Command::Verma];

    fn by_name(name: &str) -> Result<Command> {
        Self::SUITES
            .into_iter()
            .find(|c| c.name() == name)
            .ok_or_else(|| Error::Config(format!("unknown suite {name:?}")))
    }
}

/// Everything the suites need, built once from the configuration.
pub struct Context {
    pub config: RunConfig,
    pub tau: Toroidal,
    pub coeffs: Option<Arc<CoeffAlgebra>>,
    pub modules: Vec<(String, TensorModule)>,
    pub derham: Option<DeRhamComplex>,
    pub verma: Option<VermaConfig>,
    pub seed: u64,
    pub samples: usize,
    pub window: Option<(i64, i64)>,
    pub timing: bool,
}

impl Context {
    pub fn new(config: RunConfig, opts: &Options) -> Result<Self> {
        let tau = config.toroidal()?;
        let coeffs = config.coeffs()?;
        let modules = config
            .modules
            .iter()
            .map(|b| Ok((b.name.clone(), config.module(&tau, &coeffs, b)?)))
            .collect::<Result<Vec<_>>>()?;
        let cli_window = opts.window.as_deref().map(parse_window).transpose()?;
        let window = match cli_window {
            Some(w) => Some(w),
            None => config.window.as_deref().map(parse_window).transpose()?,
        };
        let derham = config.derham(&tau)?;
        let verma = config.verma(&tau, &coeffs, cli_window)?;
        Ok(Context {
            seed: opts.seed.or(config.seed).unwrap_or(0),
            samples: opts.samples.or(config.samples).unwrap_or(100),
            config,
            tau,
            coeffs,
            modules,
            derham,
            verma,
            window,
            timing: !opts.no_timing,
        })
    }

    fn module_window(&self, m: &TensorModule) -> Result<WeightWindow> {
        let (lo, hi) = self.window.unwrap_or((-2, 2));
        WeightWindow::cube(m.lattice_rank(), lo, hi)
    }

    /// Runs one check and wraps its outcome; an error inside the check is a failure.
    fn record(&self, name: &str, anchor: &str, inputs: &str, check: impl FnOnce() -> Result<Finding>) -> CheckRecord {
        let start = Instant::now();
        let finding = check().unwrap_or_else(|e| Finding::fail(format!("check aborted: {e}"), e.to_string()));
        let ms = if self.timing { start.elapsed().as_millis() as u64 } else { 0 };
        CheckRecord::new(name, anchor, &format!("seed={} samples={} {inputs}", self.seed, self.samples), finding, ms)
    }

    fn algebra_inputs(&self) -> String {
        format!("{:?}", self.config.algebra)
    }

    fn module_inputs(&self, name: &str) -> String {
        let block = self.config.module_block(name).map(|b| format!("{b:?}")).unwrap_or_default();
        format!("{} {:?} {block} window={:?}", self.algebra_inputs(), self.config.coefficients, self.window)
    }

    fn verify_algebra(&self) -> Vec<CheckRecord> {
        let (lo, hi) = self.window.unwrap_or((-3, 3));
        let tau = &self.tau;
        let (s, seed) = (self.samples, self.seed);
        let inputs = format!("{} degrees={lo}..{hi}", self.algebra_inputs());
        vec![
            self.record("algebra.antisymmetry", "[x,y] = -[y,x]", &inputs, || suites::antisymmetry(tau, s, seed, lo, hi)),
            self.record("algebra.jacobi", "Jacobi identity for the toroidal bracket", &inputs, || suites::jacobi(tau, s, seed, lo, hi)),
            self.record("algebra.grading", "[τ_m, τ_k] ⊆ τ_{m+k}", &inputs, || suites::grading(tau, s, seed, lo, hi)),
            self.record("algebra.kahler_relation", "Σ m_i t^m K_i = 0", &inputs, || suites::kahler_relation(tau, lo, hi)),
            self.record("algebra.negative_control", "the form factor ⟨x,y⟩ is needed in the central term", &inputs, || {
                suites::negative_control(tau)
            }),
        ]
    }

    fn verify_module(&self) -> Vec<CheckRecord> {
        let mut out: Vec<CheckRecord> = self
            .modules
            .par_iter()
            .map(|(name, m)| {
                let inputs = self.module_inputs(name);
                self.record(&format!("module.{name}.axiom"), "[x,y]v = x(yv) - y(xv)", &inputs, || {
                    suites::module_axiom(m, &self.module_window(m)?, self.samples, self.seed)
                })
            })
            .collect();
        for (name, m) in &self.modules {
            let block = self.config.module_block(name).expect("module exists");
            if block.cyclicity {
                out.push(self.record(&format!("module.{name}.cyclicity"), "every vector generates the window", &self.module_inputs(name), || {
                    let rep = window_cyclicity_report(CyclicTarget::Module(m), &self.module_window(m)?, 4, self.seed)?;
                    Ok(rep.finding(m))
                }));
            }
        }
        out
    }

    fn weights(&self) -> Vec<CheckRecord> {
        self.modules
            .iter()
            .map(|(name, m)| {
                self.record(&format!("weights.{name}"), "weight spaces of dimension dim V1 · dim V2", &self.module_inputs(name), || {
                    suites::weight_table(m, &self.module_window(m)?)
                })
            })
            .collect()
    }

    fn derham_suite(&self) -> Result<Vec<CheckRecord>> {
        let complex = self.derham.as_ref().ok_or_else(|| Error::Config("the derham suite needs a [derham] block".into()))?;
        let bound = self.config.derham.as_ref().map_or(1, |b| b.bound);
        let (lo, hi) = self.window.unwrap_or((-2, 2));
        let window = WeightWindow::cube(self.tau.n(), lo, hi)?;
        let inputs = format!("{} {:?} window={lo}..{hi}", self.algebra_inputs(), self.config.derham);
        Ok(vec![
            self.record("derham.square", "d_{k+1} d_k = 0", &inputs, || suites::derham_square(complex, &window)),
            self.record("derham.intertwines", "d_k is a module map", &inputs, || suites::derham_intertwines(&self.tau, complex, &window, bound)),
            self.record("derham.exactness", "the de Rham complex is exact fiberwise", &inputs, || suites::derham_exactness(complex, &window)),
        ])
    }

    fn eval_check(&self) -> Vec<CheckRecord> {
        self.modules
            .par_iter()
            .filter(|(_, m)| m.spec().psi.is_some())
            .map(|(name, m)| {
                self.record(&format!("eval.{name}"), "τ(B) acts through the point ψ", &self.module_inputs(name), || {
                    evaluation_factorization_check(m, &self.module_window(m)?, self.samples, self.seed)
                })
            })
            .collect()
    }

    fn verma_suite(&self) -> Result<Vec<CheckRecord>> {
        let cfg = self.verma.as_ref().ok_or_else(|| Error::Config("the verma suite needs a [verma] block".into()))?;
        let coeffs = self.coeffs.clone().ok_or_else(|| Error::Config("the verma suite needs a [coefficients] block".into()))?;
        let v = VermaModule::build(&self.tau, coeffs, cfg).map_err(|e| Error::Config(format!("verma: {e}")))?;
        let k = self.config.ghw_k();
        let inputs = format!(
            "{} {:?} {:?} {:?} window={:?}",
            self.algebra_inputs(),
            self.config.coefficients,
            self.config.verma,
            self.config.module_block(&self.config.verma.as_ref().expect("block").module).ok(),
            cfg.window
        );
        let raising = v.raising_description();
        Ok(vec![
            self.record("verma.dims", "quotient fibers are finite and level 0 is X", &inputs, || Ok(suites::verma_dims(&v))),
            self.record("verma.grading", "generators shift levels by their β-degree", &inputs, || Ok(v.grading_check())),
            self.record("verma.n_invariance", "N is a submodule", &inputs, || v.n_invariance_check(4)),
            self.record("verma.highest_weight", &format!("τ(B)^+ X = 0 for {raising}"), &inputs, || suites::verma_highest_weight(&v)),
            self.record("verma.ghw", &format!("τ_m(B) v = 0 for m ≥ ({k},…,{k})"), &inputs, || v.ghw_check(k)),
            self.record("verma.irreducible_quotient", "no nonzero quotient vector above level 0 is killed by raising", &inputs, || {
                v.no_trivial_vector_check()
            }),
            self.record("verma.evaluation", "X(b)v = ψ(b) X v at every level", &inputs, || v.evaluation_property_check(self.samples, self.seed)),
        ])
    }

    fn suite(&self, c: Command) -> Result<Vec<CheckRecord>> {
        match c {
            Command::VerifyAlgebra => Ok(self.verify_algebra()),
            Command::VerifyModule => Ok(self.verify_module()),
            Command::Weights => Ok(self.weights()),
            Command::Derham => self.derham_suite(),
            Command::EvalCheck => Ok(self.eval_check()),
            Command::Verma => self.verma_suite(),
            Command::All => {
                let chosen = match &self.config.suites {
                    Some(names) => names.iter().map(|n| Command::by_name(n)).collect::<Result<Vec<_>>>()?,
                    None => Command::SUITES
                        .into_iter()
                        .filter(|c| match c {
                            Command::Derham => self.derham.is_some(),
                            Command::Verma => self.verma.is_some(),
                            _ => true,
                        })
                        .collect(),
                };
                let parts = chosen.par_iter().map(|&c| self.suite(c)).collect::<Result<Vec<_>>>()?;
                Ok(parts.into_iter().flatten().collect())
            }
        }
    }

    pub fn run(&self, c: Command) -> Result<Report> {
        Ok(Report::new(c.name(), self.seed, self.suite(c)?))
    }
}

/// Worker threads from `TOROIDALKIT_THREADS`; 0 or unset lets rayon decide.
fn thread_count() -> usize {
    std::env::var("TOROIDALKIT_THREADS").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(0)
}

/// Parses the command line, runs the suite and writes the report; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                return 1;
            }
            let _ = write!(stdout, "{e}");
            return 0;
        }
    };
    match execute(&cli, stdout) {
        Ok(report) => {
            if report.passed() {
                0
            } else {
                2
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "toroidalkit: {e}");
            1
        }
    }
}

fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<Report> {
    let path = cli.opts.config.as_ref().ok_or_else(|| Error::Config("--config is required".into()))?;
    let config = RunConfig::load(path)?;
    let out_path = cli.opts.out.clone().or_else(|| config.output.clone());
    let ctx = Context::new(config, &cli.opts)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(thread_count()).build().map_err(|e| Error::Io(e.to_string()))?;
    let report = pool.install(|| ctx.run(cli.command))?;
    let text = match cli.opts.format {
        Format::Json => report.to_json(),
        Format::Table => report.to_table(),
    };
    match out_path {
        Some(p) => std::fs::write(&p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
        None => stdout.write_all(text.as_bytes()).map_err(|e| Error::Io(e.to_string()))?,
    }
    Ok(report)
}
