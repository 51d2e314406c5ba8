//! Acceptance criteria. Each criterion prints one `PASS`/`FAIL` line with
//! its wall time; the test fails if any criterion fails or overruns.

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use num::One;
use toroidalkit::coeffalg::{parse_polynomial, CoeffAlgebra};
use toroidalkit::exactlin::{int, rat, span_contains, Rational};
use toroidalkit::maptoroidal::TriangularData;
use toroidalkit::reps::HighestWeight;
use toroidalkit::suites;
use toroidalkit::tensormod::{
    evaluation_factorization_check, window_cyclicity_report, CyclicTarget, DeRhamComplex, ModuleKind, ModuleVector, TensorModule,
    TensorModuleSpec, WeightWindow,
};
use toroidalkit::toroidal::{AlgElement, BasisSymbol, CentralTerm, CocycleSpec, Degree, GAlgebra, Toroidal};
use toroidalkit::verma::{QVector, VermaConfig, VermaModule};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn tau(mu1: i64, mu2: i64) -> Toroidal {
    Toroidal::new(3, GAlgebra::sl2(), CocycleSpec::from_ints(mu1, mu2)).unwrap()
}

fn b_split() -> Arc<CoeffAlgebra> {
    Arc::new(CoeffAlgebra::univariate_quotient(&parse_polynomial("s^2 - 3s + 2").unwrap()).unwrap())
}

fn spec(kind: ModuleKind, c: Rational, lam1: HighestWeight, lam2: HighestWeight, alpha: Vec<Rational>) -> TensorModuleSpec {
    TensorModuleSpec { kind, c, lam1, lam2, alpha, psi: None }
}

fn omega1(rank: usize) -> HighestWeight {
    HighestWeight::fundamental(rank, 1)
}

fn alpha3() -> Vec<Rational> {
    vec![rat(1, 3), int(0), int(0)]
}

// ---------------------------------------------------------------------------
// 1. Lie axioms

fn lie_axioms() -> Outcome {
    let mut nonzero = 0usize;
    for (mu1, mu2) in [(0, 0), (1, 0), (0, 1), (2, -3)] {
        let t = tau(mu1, mu2);
        let a = suites::antisymmetry(&t, 1000, 11, -3, 3).map_err(|e| e.to_string())?;
        ensure(a.passed, format!("phi = ({mu1},{mu2}): {:?}", a))?;
        let j = suites::jacobi(&t, 1000, 11, -3, 3).map_err(|e| e.to_string())?;
        ensure(j.passed, format!("phi = ({mu1},{mu2}): {:?}", j))?;
        // The samples must exercise the bracket, not just zeros.
        let mut rng = toroidalkit::sampling::rng(11);
        for _ in 0..50 {
            let x = toroidalkit::sampling::random_homogeneous(&mut rng, &t, -3, 3, false);
            let y = toroidalkit::sampling::random_homogeneous(&mut rng, &t, -3, 3, false);
            nonzero += usize::from(!t.bracket(&x, &y).unwrap().is_zero());
        }
    }
    ensure(nonzero > 100, format!("only {nonzero} of 200 probe brackets are nonzero"))?;
    Ok("antisymmetry and Jacobi exact on 1000 triples for each of 4 cocycles".into())
}

// ---------------------------------------------------------------------------
// 2. Negative control, against an independent 2x2-matrix model of the loop part.

type M2 = [[i64; 2]; 2];

fn mmul(a: &M2, b: &M2) -> M2 {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn comm(a: &M2, b: &M2) -> M2 {
    let (p, q) = (mmul(a, b), mmul(b, a));
    [[p[0][0] - q[0][0], p[0][1] - q[0][1]], [p[1][0] - q[1][0], p[1][1] - q[1][1]]]
}

/// An element `A t^m + Σ p_i t^m K_i` of a single degree `m`.
#[derive(Clone, Debug)]
struct Homog {
    deg: [i64; 3],
    mat: M2,
    k: [i64; 3],
}

/// Sum of the coordinates of `A` in the basis `e, h, f`.
fn coord_sum(a: &M2) -> i64 {
    a[0][1] + a[0][0] + a[1][0]
}

/// Loop bracket with central term `f(A,B) Σ m_i t^{m+k} K_i`; `f` is the
/// trace form, or without the form the bilinear extension of 1 on basis
/// pairs. Kähler terms are central.
fn oracle_bracket(x: &Homog, y: &Homog, with_form: bool) -> Homog {
    let deg = [x.deg[0] + y.deg[0], x.deg[1] + y.deg[1], x.deg[2] + y.deg[2]];
    let f = if with_form {
        let p = mmul(&x.mat, &y.mat);
        p[0][0] + p[1][1]
    } else {
        coord_sum(&x.mat) * coord_sum(&y.mat)
    };
    let loop_part = x.mat != [[0; 2]; 2] && y.mat != [[0; 2]; 2];
    let k = if loop_part { [f * x.deg[0], f * x.deg[1], f * x.deg[2]] } else { [0; 3] };
    Homog { deg, mat: comm(&x.mat, &y.mat), k }
}

fn negative_control() -> Outcome {
    let (e, h, f): (M2, M2, M2) = ([[0, 1], [0, 0]], [[1, 0], [0, -1]], [[0, 0], [1, 0]]);
    // The inner brackets land in degree -e1 or e1, where the central term
    // m_1 t^{±e1} K_1 vanishes by the Kähler relation, so the oracle drops them.
    let strip = |mut h: Homog| {
        if h.deg != [0, 0, 0] {
            h.k = [0; 3];
        }
        h
    };
    let x = Homog { deg: [1, 0, 0], mat: h, k: [0; 3] };
    let y = Homog { deg: [-1, 0, 0], mat: e, k: [0; 3] };
    let z = Homog { deg: [0, 0, 0], mat: f, k: [0; 3] };
    let oracle = |with_form: bool| {
        let inner = [strip(oracle_bracket(&y, &z, with_form)), strip(oracle_bracket(&z, &x, with_form)), strip(oracle_bracket(&x, &y, with_form))];
        let outer = [
            oracle_bracket(&x, &inner[0], with_form),
            oracle_bracket(&y, &inner[1], with_form),
            oracle_bracket(&z, &inner[2], with_form),
        ];
        let mut k = [0i64; 3];
        let mut mat = [[0i64; 2]; 2];
        for t in &outer {
            for i in 0..3 {
                k[i] += t.k[i];
            }
            for i in 0..2 {
                for j in 0..2 {
                    mat[i][j] += t.mat[i][j];
                }
            }
        }
        (mat, k)
    };
    let (good_mat, good_k) = oracle(true);
    let (bad_mat, bad_k) = oracle(false);
    ensure(good_mat == [[0; 2]; 2] && good_k == [0; 3], "oracle: the correct bracket should satisfy Jacobi")?;
    ensure(bad_mat == [[0; 2]; 2], "oracle: loop part should cancel")?;

    let t = tau(0, 0);
    let (ix, iy, iz) = (t.loop_elem(1, &Degree(vec![1, 0, 0])), t.loop_elem(0, &Degree(vec![-1, 0, 0])), t.loop_elem(2, &Degree::zero(3)));
    let bad = t.clone().with_central_term(CentralTerm::WithoutForm);
    let start = Instant::now();
    let defect = bad.jacobi_defect(&ix, &iy, &iz).map_err(|e| e.to_string())?;
    let good = t.jacobi_defect(&ix, &iy, &iz).map_err(|e| e.to_string())?;
    ensure(start.elapsed() < Duration::from_secs(1), "over 1 s")?;
    let want = AlgElement::from_pairs((0..3).map(|i| (BasisSymbol::Kahler(i, Degree::zero(3)), int(bad_k[i]))));
    ensure(!want.is_zero(), "oracle: defect should be nonzero")?;
    ensure(good.is_zero(), format!("correct bracket has defect {}", t.render(&good)))?;
    ensure(defect == want, format!("engine defect {} differs from oracle {}", t.render(&defect), t.render(&want)))?;
    let suite = suites::negative_control(&t).map_err(|e| e.to_string())?;
    ensure(suite.passed, format!("{suite:?}"))?;
    Ok(format!("witness (h t^e1, e t^-e1, f) has defect {} without the form factor", t.render(&defect)))
}

// ---------------------------------------------------------------------------
// 3. Kähler quotient

fn kahler_quotient() -> Outcome {
    let t = tau(0, 0);
    let f = suites::kahler_relation(&t, -3, 3).map_err(|e| e.to_string())?;
    ensure(f.passed, format!("{f:?}"))?;
    // Reduction must not collapse everything: t^m K_j for a non-pivot j survives.
    for m in WeightWindow::cube(3, -3, 3).unwrap().points() {
        for j in 0..3 {
            if m.pivot() != Some(j) {
                let x = toroidalkit::toroidal::canonical_kahler_term(j, &m);
                ensure(!x.is_zero(), format!("t^{m} K_{} reduced to zero", j + 1))?;
            }
        }
    }
    Ok("Σ m_i t^m K_i = 0 for all 343 degrees in [-3,3]^3; non-pivot terms survive".into())
}

// ---------------------------------------------------------------------------
// 4. Module axiom

fn module_axiom() -> Outcome {
    let t = tau(0, 0);
    let b = b_split();
    let cusp = spec(ModuleKind::Tau, rat(1, 2), omega1(1), omega1(2), alpha3());
    let mut eval = spec(ModuleKind::Eval, rat(1, 2), omega1(1), omega1(2), alpha3());
    eval.psi = Some(b.point_at(&int(2)).unwrap());
    let ring = spec(ModuleKind::TauRing { a: int(1), b: rat(-1, 2) }, int(0), HighestWeight::zero(1), HighestWeight::zero(1), vec![int(0); 2]);
    let modules = [
        ("cuspidal", TensorModule::new(&t, None, cusp).unwrap()),
        ("evaluation", TensorModule::new(&t, Some(b.clone()), eval).unwrap()),
        ("ring", TensorModule::new(&t, None, ring).unwrap()),
    ];
    for (name, m) in &modules {
        let w = WeightWindow::cube(m.lattice_rank(), -2, 2).unwrap();
        let f = suites::module_axiom(m, &w, 500, 4).map_err(|e| e.to_string())?;
        ensure(f.passed, format!("{name}: {f:?}"))?;
    }
    Ok("defect exactly zero on 500 triples for the cuspidal, evaluation and ring modules".into())
}

// ---------------------------------------------------------------------------
// 5. Cuspidality

/// Weyl dimension formula for `sl_{r+1}`: `Π_{i<j} (Σ_{i≤k<j} (λ_k + 1)) / (j - i)`.
fn weyl_dim_sl(lam: &[i64]) -> i64 {
    let r = lam.len();
    let mut num = Rational::one();
    for i in 0..r {
        for j in i + 1..=r {
            let s: i64 = (i..j).map(|k| lam[k] + 1).sum();
            num *= rat(s, (j - i) as i64);
        }
    }
    assert!(num.is_integer());
    num.to_integer().try_into().unwrap()
}

fn cuspidality() -> Outcome {
    let t = tau(0, 0);
    let m = TensorModule::new(&t, None, spec(ModuleKind::Tau, int(1), omega1(1), omega1(2), alpha3())).unwrap();
    let expected = weyl_dim_sl(&[1]) * weyl_dim_sl(&[1, 0]);
    ensure(expected == 6, format!("oracle gives {expected}"))?;
    let table = m.weight_table(&WeightWindow::cube(3, -3, 3).unwrap()).map_err(|e| e.to_string())?;
    ensure(table.len() == 343, format!("{} distinct weights", table.len()))?;
    ensure(table.values().all(|&d| d as i64 == expected), "weight table is not constant 6")?;
    Ok(format!("343 weights on [-3,3]^3, each of dimension {expected}"))
}

// ---------------------------------------------------------------------------
// 6. De Rham

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn de_rham() -> Outcome {
    let t = tau(0, 0);
    let complex = DeRhamComplex::new(&t, vec![rat(1, 3), rat(1, 5), rat(1, 7)]).unwrap();
    let w = WeightWindow::cube(3, -2, 2).unwrap();
    let sq = suites::derham_square(&complex, &w).map_err(|e| e.to_string())?;
    ensure(sq.passed, format!("{sq:?}"))?;
    let comm = suites::derham_intertwines(&t, &complex, &w, 1).map_err(|e| e.to_string())?;
    ensure(comm.passed, format!("{comm:?}"))?;
    let ex = suites::derham_exactness(&complex, &w).map_err(|e| e.to_string())?;
    ensure(ex.passed, format!("{ex:?}"))?;
    // rank d_k = dim of the image of k-forms in an exact complex of Λ^• Q^3: C(2, k).
    let expected: Vec<usize> = (0..3).map(|k| binomial(2, k)).collect();
    ensure(expected == vec![1, 2, 1], "oracle ranks")?;
    for r in w.points() {
        let ranks = suites::derham_ranks(&complex, &r).map_err(|e| e.to_string())?;
        ensure(ranks == expected, format!("fiber {r}: ranks {ranks:?}"))?;
        for k in 0..3 {
            ensure(complex.forms(k).fiber_dim() == binomial(3, k), format!("dim of {k}-forms"))?;
        }
    }
    Ok(format!("d∘d = 0 on 125 fibers; {}; image ranks (1,2,1) in every fiber", comm.summary))
}

// ---------------------------------------------------------------------------
// 7. Classification witness

fn classification_witness() -> Outcome {
    let t = tau(0, 0);
    let m = TensorModule::new(&t, None, spec(ModuleKind::Tau, int(1), HighestWeight::zero(1), omega1(2), alpha3())).unwrap();
    let w = WeightWindow::cube(3, -2, 2).unwrap();
    let rep = window_cyclicity_report(CyclicTarget::Module(&m), &w, 4, 1).map_err(|e| e.to_string())?;
    ensure(!rep.passed, "cyclicity scan passes on the 1-forms")?;
    let complex = DeRhamComplex::new(&t, alpha3()).unwrap();
    let fam = rep.invariant_family.ok_or("no invariant family reported")?;
    let mut fibers = 0;
    for (r, basis) in &fam {
        let img = complex.image_fiber(0, r).map_err(|e| e.to_string())?;
        ensure(basis.len() == img.len(), format!("fiber {r}: family of dim {} vs image of dim {}", basis.len(), img.len()))?;
        for v in basis {
            ensure(span_contains(&img, v), format!("fiber {r}: family vector outside d_0"))?;
        }
        fibers += 1;
    }
    let img = window_cyclicity_report(CyclicTarget::DeRhamImage { complex: &complex, k: 0 }, &w, 4, 1).map_err(|e| e.to_string())?;
    ensure(img.passed, "cyclicity scan fails on the image of d_0")?;
    Ok(format!("1-forms FAIL with the image of d_0 as invariant family on {fibers} fibers; d_0 image PASSES"))
}

// ---------------------------------------------------------------------------
// 8. Evaluation factorisation

fn evaluation_factorization() -> Outcome {
    let t = tau(0, 0);
    let b = b_split();
    let mut s = spec(ModuleKind::Eval, rat(1, 2), omega1(1), omega1(2), alpha3());
    s.psi = Some(b.point_at(&int(2)).unwrap());
    let m = TensorModule::new(&t, Some(b.clone()), s).unwrap();
    let w = WeightWindow::cube(3, -1, 1).unwrap();
    let f = evaluation_factorization_check(&m, &w, 500, 8).map_err(|e| e.to_string())?;
    ensure(f.passed, format!("{f:?}"))?;
    // ψ(s) = 2 and s acts as 2: ker ψ is spanned by s - 2.
    let ideal = b.ideal_of_point(m.spec().psi.as_ref().unwrap());
    ensure(ideal.len() == 1, "ker psi should be one-dimensional")?;
    let s_minus_2 = b.parse_element("s - 2").unwrap();
    ensure(toroidalkit::exactlin::rank(&[ideal[0].clone(), s_minus_2]) == 1, "ker psi is not spanned by s - 2")?;
    Ok(f.summary)
}

// ---------------------------------------------------------------------------
// 9. Nilpotent coefficients

fn nilpotent_case() -> Outcome {
    let t = tau(0, 0);
    let b = Arc::new(CoeffAlgebra::univariate_quotient(&parse_polynomial("s^2").unwrap()).unwrap());
    let psi = b.point_at(&int(0)).unwrap();
    let s_elem = b.parse_element("s").unwrap();
    ensure(b.mul(&s_elem, &s_elem).is_zero(), "s^2 should vanish, so τ(ℳ²) = 0")?;
    let mut sp = spec(ModuleKind::Eval, rat(1, 2), omega1(1), omega1(2), alpha3());
    sp.psi = Some(psi);
    let m = TensorModule::new(&t, Some(b.clone()), sp).unwrap();
    let mt = m.map_algebra().unwrap();
    let w = WeightWindow::cube(3, -1, 1).unwrap();
    let f = evaluation_factorization_check(&m, &w, 200, 9).map_err(|e| e.to_string())?;
    ensure(f.passed, format!("{f:?}"))?;
    // Every generator tensored with s acts by zero, while the same generators
    // tensored with 1 act nontrivially somewhere.
    let mut nontrivial = 0usize;
    for r in w.points() {
        for key in m.fiber_basis(&r) {
            let v = ModuleVector::unit(key);
            for x in m.scan_generators() {
                let out = m.act_map(&mt.tensor(&x, &s_elem), &v).map_err(|e| e.to_string())?;
                ensure(out.is_zero(), format!("{} acts nontrivially", mt.render(&mt.tensor(&x, &s_elem))))?;
                nontrivial += usize::from(!m.act(&x, &v).unwrap().is_zero());
            }
        }
    }
    ensure(nontrivial > 0, "unit coefficients act trivially too")?;
    Ok(format!("τ(ℳ) kills every fiber while τ(ℳ²) = 0; {nontrivial} nonzero unit actions"))
}

// ---------------------------------------------------------------------------
// 10. Verma suite

const VERMA_CONFIG: &str = r#"
seed = 10
samples = 300

[algebra]
n = 3
g = "sl2"

[coefficients]
modulus = "s^2 - 3s + 2"

[[module]]
name = "x"
kind = "tau_ring"
a = "1"
b = "0"
alpha = ["0", "0"]
psi = "2"

[verma]
module = "x"
beta = [1, 0, 0]
m_basis = [[0, 1, 0], [0, 0, 1]]
depth = 2
window = "-2..2"
ghw_k = 1
"#;

fn run_cli(path: &std::path::Path) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = ["toroidalkit", "verma", "--config", path.to_str().unwrap(), "--format", "json", "--no-timing"];
    let code = toroidalkit::cli::run(args, &mut out, &mut err);
    assert!(err.is_empty(), "{}", String::from_utf8_lossy(&err));
    (code, out)
}

fn verma_suite() -> Outcome {
    let t = tau(0, 0);
    let b = b_split();
    let x = TensorModuleSpec {
        kind: ModuleKind::TauRing { a: int(1), b: int(0) },
        c: int(0),
        lam1: HighestWeight::zero(1),
        lam2: HighestWeight::zero(1),
        alpha: vec![int(0); 2],
        psi: Some(b.point_at(&int(2)).unwrap()),
    };
    let cfg = VermaConfig { x, tri: TriangularData::standard(3), depth: 2, window: WeightWindow::cube(2, -2, 2).unwrap() };
    let v = VermaModule::build(&t, b.clone(), &cfg).map_err(|e| e.to_string())?;

    let g = v.grading_check();
    ensure(g.passed, format!("grading: {g:?}"))?;
    let n = v.n_invariance_check(4).map_err(|e| e.to_string())?;
    ensure(n.passed, format!("N-invariance: {n:?}"))?;
    let hw = suites::verma_highest_weight(&v).map_err(|e| e.to_string())?;
    ensure(hw.passed, format!("highest weight: {hw:?}"))?;
    let ghw = v.ghw_check(1).map_err(|e| e.to_string())?;
    ensure(ghw.passed, format!("GHW k = 1: {ghw:?}"))?;
    let ev = v.evaluation_property_check(300, 10).map_err(|e| e.to_string())?;
    ensure(ev.passed, format!("evaluation: {ev:?}"))?;

    // d_1 ⊗ (s - 2) kills a basis vector of the central fiber at every level.
    let s_minus_2 = b.parse_element("s - 2").unwrap();
    let d1 = t.der(0, &Degree::zero(3));
    let x = v.map_algebra().tensor(&d1, &s_minus_2);
    for level in 0..=2 {
        let keys = v.basis_keys(level, &Degree(vec![0, 0]));
        ensure(!keys.is_empty(), format!("level {level} central fiber is empty"))?;
        for k in keys {
            let out = v.act_element(&x, &QVector::unit(k.clone())).map_err(|e| e.to_string())?;
            ensure(out.is_zero(), format!("d_1(s-2) acts nontrivially on {}", v.key_name(&k)))?;
        }
    }

    let path = std::env::temp_dir().join(format!("toroidalkit-acceptance-{}.toml", std::process::id()));
    std::fs::write(&path, VERMA_CONFIG).map_err(|e| e.to_string())?;
    let (c1, r1) = run_cli(&path);
    let (c2, r2) = run_cli(&path);
    let _ = std::fs::remove_file(&path);
    ensure(c1 == 0 && c2 == 0, format!("exit codes {c1}, {c2}"))?;
    ensure(r1 == r2, "reports differ between runs")?;
    let json: serde_json::Value = serde_json::from_slice(&r1).map_err(|e| e.to_string())?;
    let checks = json["checks"].as_array().ok_or("report has no checks")?;
    ensure(checks.len() == 7, format!("{} checks in the report", checks.len()))?;
    ensure(checks.iter().all(|c| c["verdict"] == "PASS"), "a report check failed")?;
    Ok(format!("all checks pass at depth 2 over [-2,2]^2; two runs give identical {}-byte reports", r1.len()))
}

// ---------------------------------------------------------------------------

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome, u64); 10] = [
        ("Lie axioms", lie_axioms, 30),
        ("negative control", negative_control, 1),
        ("Kähler quotient", kahler_quotient, 5),
        ("module axiom", module_axiom, 60),
        ("cuspidality", cuspidality, 10),
        ("de Rham", de_rham, 60),
        ("classification witness", classification_witness, 120),
        ("evaluation factorization", evaluation_factorization, 60),
        ("nilpotent coefficients", nilpotent_case, 30),
        ("Verma suite", verma_suite, 300),
    ];
    let mut failed = Vec::new();
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let secs = start.elapsed().as_secs_f64();
        let outcome = match outcome {
            Ok(_) if secs > *budget as f64 => Err(format!("took {secs:.1} s, budget {budget} s")),
            o => o,
        };
        let line = match &outcome {
            Ok(detail) => format!("PASS  criterion {:>2} ({name}, {secs:.2} s): {detail}\n", i + 1),
            Err(why) => format!("FAIL  criterion {:>2} ({name}, {secs:.2} s): {why}\n", i + 1),
        };
        // Written past the test harness's capture so the lines always show.
        let _ = std::io::stdout().lock().write_all(line.as_bytes());
        if outcome.is_err() {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

#[test]
fn weyl_oracle_small_cases() {
    assert_eq!(weyl_dim_sl(&[0]), 1);
    assert_eq!(weyl_dim_sl(&[3]), 4);
    assert_eq!(weyl_dim_sl(&[1, 1]), 8);
    assert_eq!(weyl_dim_sl(&[0, 1]), 3);
    assert_eq!(weyl_dim_sl(&[1, 0, 0]), 4);
}
