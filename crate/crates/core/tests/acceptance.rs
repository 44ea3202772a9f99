//! Acceptance gate: ten criteria, one status line each. Runs without the
//! libtest harness so the report is never captured.
//!
//! Everything is exact; the only pinned tolerance is equality. Time budgets
//! are reported next to each line but do not decide pass/fail, since the
//! suite also runs under unoptimized test profiles.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use syang_core::exactmath::rational::{q, qf, sign};
use syang_core::exactmath::{DenseMatrix, Polynomial, RatFun, Rational, SparseMatrix, Vector};
use syang_core::glmn::{cyclic_subquotient, gl_highest_weight_vectors, one_dim_rep, tensor, vector_rep, GlModule};
use syang_core::superalgebra::hopf::{check_antipode_laws, check_coassociativity, check_counit_laws};
use syang_core::superalgebra::{AlgebraElement, Gen, GradingContext, Rewriter, Word};
use syang_core::weights::{
    check_finite_dim, factor_into_fundamentals, star_all, star_product, twist, twist_series, FdVerdict, HighestWeight,
};
use syang_core::yangian::{
    cyclic_span, evaluation_rep, highest_weight_of, induced_module_truncated, irreducible_quotient,
    maximal_space_dim, shifted_tensor, submodule, verify_defining_relations, AuxData, YModule,
};

const SEED: u64 = 0x5EED_0001;
/// Allowed absolute deviation on every rational comparison: none.
const TOLERANCE: i64 = 0;
const RELATION_LEVEL: usize = 4;
/// Mode levels used by the brute-force closure oracle.
const ORACLE_LEVELS: usize = 6;
const INDUCED_MAX_D: usize = 6;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Status {
    Pass,
    Fail,
    Experimental,
}

struct Line {
    n: usize,
    status: Status,
    name: &'static str,
    elapsed: Duration,
    budget: u64,
    detail: String,
}

fn run(n: usize, name: &'static str, budget: u64, f: impl FnOnce() -> (Status, String)) -> Line {
    let start = Instant::now();
    let (status, detail) = match catch_unwind(AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(e) => {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (Status::Fail, msg)
        }
    };
    let line = Line {
        n,
        status,
        name,
        elapsed: start.elapsed(),
        budget,
        detail,
    };
    println!(
        "criterion {:>2} {:<12} {} [{:.1}s, target {}s] {}",
        line.n,
        format!("{:?}", line.status).to_uppercase(),
        line.name,
        line.elapsed.as_secs_f64(),
        line.budget,
        line.detail
    );
    line
}

fn verdict(ok: bool, detail: String) -> (Status, String) {
    (if ok { Status::Pass } else { Status::Fail }, detail)
}

fn ctx(m: usize, n: usize) -> GradingContext {
    GradingContext::new(m, n).unwrap()
}

fn grade(c: &GradingContext, a: usize) -> u8 {
    u8::from(a > c.m())
}

fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![q(0); n];
    v[i] = q(1);
    v
}

// ---------------------------------------------------------------- oracles

/// Right-hand side of the mode relation written out independently:
/// `(−1)^η Σ_{r<min(m,n)} (t^{a2}_{b1}[r] t^{a1}_{b2}[m+n−1−r] − t^{a2}_{b1}[m+n−1−r] t^{a1}_{b2}[r])`,
/// `t[0] = (−1)^{[b]} δ`.
fn relation_rhs(c: &GradingContext, rw: &mut Rewriter, x: Gen, y: Gen) -> AlgebraElement {
    let (a1, b1, m, a2, b2, n) = (x.a, x.b, x.n, y.a, y.b, y.n);
    let g = |i| grade(c, i);
    let eta = (g(a1) * g(a2) + g(b1) * (g(a1) + g(a2))) % 2;
    let mode = |a: usize, b: usize, k: usize| -> AlgebraElement {
        if k > 0 {
            AlgebraElement::generator(Gen::new(a, b, k))
        } else if a == b {
            AlgebraElement::scalar(sign(g(b)))
        } else {
            AlgebraElement::zero()
        }
    };
    let mut out = AlgebraElement::zero();
    let top = m + n - 1;
    for r in 0..m.min(n) {
        let p = rw.multiply(&mode(a2, b1, r), &mode(a1, b2, top - r));
        let s = rw.multiply(&mode(a2, b1, top - r), &mode(a1, b2, r));
        out = out.add(&p.sub(&s));
    }
    out.scaled(&sign(eta))
}

fn random_word(rng: &mut ChaCha8Rng, c: &GradingContext, max_len: usize) -> Word {
    (0..rng.gen_range(1..=max_len))
        .map(|_| Gen::new(rng.gen_range(1..=c.size()), rng.gen_range(1..=c.size()), rng.gen_range(1..=3)))
        .collect()
}

/// Hand-built `V(0) ⊗ V(α)` for the `gl(1|1)` vector module: on `V(α)`,
/// `t^a_b[n] = (−α)^{n−1} E^a_b`; on the tensor,
/// `t^a_b[n] = Σ_c Σ_{p+q=n} (−1)^{[c] + ([b]+[c])([c]+[a])} t^c_b[p] ⊗ t^a_c[q]`
/// with `(x ⊗ y)(v ⊗ w) = (−1)^{[y][v]} xv ⊗ yw`.
struct TwoFactorOracle {
    modes: Vec<((usize, usize, usize), DenseMatrix)>,
}

impl TwoFactorOracle {
    fn new(alpha: &Rational) -> Self {
        let c = ctx(1, 1);
        let par = [0u8, 1u8];
        let e = |a: usize, b: usize| {
            let mut m = DenseMatrix::zeros(2, 2);
            m[(a - 1, b - 1)] = q(1);
            m
        };
        let single = |shift: &Rational, a: usize, b: usize, n: usize| -> DenseMatrix {
            if n == 0 {
                return if a == b { DenseMatrix::identity(2).scale(&sign(grade(&c, b))) } else { DenseMatrix::zeros(2, 2) };
            }
            let mut coef = q(1);
            for _ in 1..n {
                coef *= -shift.clone();
            }
            e(a, b).scale(&coef)
        };
        let pmat = DenseMatrix::from_rows(&[vec![q(1), q(0)], vec![q(0), q(-1)]]);
        let kron = |x: &DenseMatrix, y: &DenseMatrix| {
            let mut out = DenseMatrix::zeros(4, 4);
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        for l in 0..2 {
                            out[(2 * i + k, 2 * j + l)] = &x[(i, j)] * &y[(k, l)];
                        }
                    }
                }
            }
            out
        };
        let mut modes = Vec::new();
        for a in 1..=2 {
            for b in 1..=2 {
                for n in 1..=ORACLE_LEVELS {
                    let mut acc = DenseMatrix::zeros(4, 4);
                    for cc in 1..=2 {
                        let (ga, gb, gc) = (par[a - 1], par[b - 1], par[cc - 1]);
                        let s = sign((gc + ((ga + gc) % 2) * ((gc + gb) % 2)) % 2);
                        let y_par = (ga + gc) % 2;
                        for p in 0..=n {
                            let x = single(&q(0), cc, b, p);
                            let y = single(alpha, a, cc, n - p);
                            let x = if y_par == 1 { x.mul(&pmat) } else { x };
                            acc = acc.add(&kron(&x, &y).scale(&s));
                        }
                    }
                    modes.push(((a, b, n), acc));
                }
            }
        }
        TwoFactorOracle { modes }
    }

    fn mats(&self) -> Vec<DenseMatrix> {
        self.modes.iter().map(|(_, m)| m.clone()).collect()
    }

    /// Dimension of `U·e_0` by brute closure.
    fn span_dim(&self) -> usize {
        let mats = self.mats();
        let mut basis: Vec<Vector> = vec![unit_vector(4, 0)];
        let mut frontier = basis.clone();
        while let Some(v) = frontier.pop() {
            for m in &mats {
                let w = m.apply(&v);
                let mut trial = basis.clone();
                trial.push(w.clone());
                if DenseMatrix::from_rows(&trial).rank() > basis.len() {
                    basis.push(w.clone());
                    frontier.push(w);
                }
            }
        }
        basis.len()
    }

    /// Rank of the functionals `e_0^T X`, `X` ranging over mode products:
    /// the dimension of `W / M_W`, `M_W` the largest submodule avoiding `e_0`.
    fn top_quotient_dim(&self) -> usize {
        let mats: Vec<DenseMatrix> = self.mats().iter().map(DenseMatrix::transpose).collect();
        let mut rows: Vec<Vector> = vec![unit_vector(4, 0)];
        let mut frontier = rows.clone();
        while let Some(f) = frontier.pop() {
            for m in &mats {
                let g = m.apply(&f);
                let mut trial = rows.clone();
                trial.push(g.clone());
                if DenseMatrix::from_rows(&trial).rank() > rows.len() {
                    rows.push(g.clone());
                    frontier.push(g);
                }
            }
        }
        rows.len()
    }

    /// `M_W` as the common kernel of the functionals; it must be a proper
    /// submodule avoiding `e_0`.
    fn top_submodule_dim(&self) -> usize {
        let mats = self.mats();
        let tmats: Vec<DenseMatrix> = mats.iter().map(DenseMatrix::transpose).collect();
        let mut funcs: Vec<Vector> = vec![unit_vector(4, 0)];
        let mut frontier = funcs.clone();
        while let Some(f) = frontier.pop() {
            for m in &tmats {
                let g = m.apply(&f);
                let mut trial = funcs.clone();
                trial.push(g.clone());
                if DenseMatrix::from_rows(&trial).rank() > funcs.len() {
                    funcs.push(g.clone());
                    frontier.push(g);
                }
            }
        }
        let f = DenseMatrix::from_rows(&funcs);
        let kernel = f.nullspace();
        for v in &kernel {
            for m in &mats {
                assert!(f.apply(&m.apply(v)).iter().all(|x| *x == q(0)), "M_W is not invariant");
            }
        }
        let mut with_top = kernel.clone();
        with_top.push(unit_vector(4, 0));
        assert_eq!(DenseMatrix::from_rows(&with_top).rank(), kernel.len() + 1, "M_W contains the top vector");
        kernel.len()
    }

    /// `C / (C ∩ M_W)` for `C = U·e_0`.
    fn cyclic_quotient_dim(&self) -> usize {
        let mats = self.mats();
        let mut span: Vec<Vector> = vec![unit_vector(4, 0)];
        let mut frontier = span.clone();
        while let Some(v) = frontier.pop() {
            for m in &mats {
                let w = m.apply(&v);
                let mut trial = span.clone();
                trial.push(w.clone());
                if DenseMatrix::from_rows(&trial).rank() > span.len() {
                    span.push(w.clone());
                    frontier.push(w);
                }
            }
        }
        let tmats: Vec<DenseMatrix> = mats.iter().map(DenseMatrix::transpose).collect();
        let mut funcs: Vec<Vector> = vec![unit_vector(4, 0)];
        let mut frontier = funcs.clone();
        while let Some(f) = frontier.pop() {
            for m in &tmats {
                let g = m.apply(&f);
                let mut trial = funcs.clone();
                trial.push(g.clone());
                if DenseMatrix::from_rows(&trial).rank() > funcs.len() {
                    funcs.push(g.clone());
                    frontier.push(g);
                }
            }
        }
        DenseMatrix::from_rows(&funcs).mul(&DenseMatrix::from_columns(4, &span)).rank()
    }

    fn agrees_with(&self, w: &YModule) -> bool {
        self.modes.iter().all(|((a, b, n), m)| w.action_mode(*a, *b, *n).unwrap().to_dense() == *m)
    }
}

fn two_factor(alpha: &Rational) -> YModule {
    let v = evaluation_rep(&vector_rep(&ctx(1, 1)));
    shifted_tensor(&[v.clone(), v], &[q(0), alpha.clone()]).unwrap()
}

fn small_shifts() -> Vec<Rational> {
    let s: BTreeSet<Rational> = (-4..=4)
        .flat_map(|p| (-4..=4i64).filter(|&d| d != 0).map(move |d| qf(p, d)))
        .collect();
    s.into_iter().collect()
}

/// Degenerate shifts found by the oracle: a proper submodule exists iff
/// `e_0` does not generate everything or `M_W ≠ 0`.
fn oracle_degenerate() -> Vec<Rational> {
    small_shifts()
        .into_iter()
        .filter(|a| {
            let o = TwoFactorOracle::new(a);
            o.span_dim() < 4 || o.top_quotient_dim() < 4
        })
        .collect()
}

/// Evaluation weight `(−1)^{[a]} + μ_a x^{−1}`, built by hand.
fn eval_weight(c: &GradingContext, mu: &[Rational]) -> Vec<RatFun> {
    (1..=c.size())
        .map(|a| RatFun::affine_inverse(sign(grade(c, a)), mu[a - 1].clone()))
        .collect()
}

// ---------------------------------------------------------------- criteria

fn criterion_pbw() -> (Status, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases = 0;
    for c in [ctx(1, 1), ctx(2, 1)] {
        let mut rw = Rewriter::new(c);
        for _ in 0..500 {
            let w = random_word(&mut rng, &c, 4);
            let e = rw.normal_word(&w);
            assert!(e.all_ordered(&c), "unordered output for {w:?}");
            assert_eq!(rw.renormalize(&e), e, "straighten not idempotent on {w:?}");
            cases += 1;
        }
        for _ in 0..500 {
            let [x, y, z]: [AlgebraElement; 3] = std::array::from_fn(|_| {
                let w = random_word(&mut rng, &c, 2);
                rw.normal_word(&w)
            });
            let xy = rw.multiply(&x, &y);
            let yz = rw.multiply(&y, &z);
            assert_eq!(rw.multiply(&xy, &z), rw.multiply(&x, &yz), "associativity diamond");
            cases += 1;
        }
        let gens: Vec<Gen> = c
            .pairs()
            .flat_map(|(a, b)| (1..=3).map(move |n| Gen::new(a, b, n)))
            .collect();
        for &x in &gens {
            for &y in &gens {
                let s = sign(((grade(&c, x.a) + grade(&c, x.b)) * (grade(&c, y.a) + grade(&c, y.b))) % 2);
                let lhs = rw.normal_word(&[x, y]).sub(&rw.normal_word(&[y, x]).scaled(&s));
                let rhs = relation_rhs(&c, &mut rw, x, y);
                assert_eq!(lhs, rhs, "relation closure at {x}, {y}");
                cases += 1;
            }
        }
    }
    verdict(true, format!("{cases} exact checks over gl(1|1), gl(2|1)"))
}

fn standard_modules(c: &GradingContext) -> Vec<(String, YModule)> {
    let v = vector_rep(c);
    let mut out = vec![("V".to_string(), evaluation_rep(&v))];
    let vv = tensor(&v, &v).unwrap();
    for (w, hv) in gl_highest_weight_vectors(&vv) {
        let sub = cyclic_subquotient(&vv, &hv).unwrap();
        out.push((format!("V⊗V{:?}/dim{}", w.iter().map(|x| x.to_string()).collect::<Vec<_>>(), sub.dim()), evaluation_rep(&sub)));
    }
    out
}

fn criterion_module_relations() -> (Status, String) {
    let mut names = Vec::new();
    for c in [ctx(1, 1), ctx(2, 1)] {
        for (name, w) in standard_modules(&c) {
            let rep = verify_defining_relations(&w, RELATION_LEVEL);
            assert!(rep.passed(), "{name}: {:?}", rep.counterexample);
            names.push(format!("gl({}|{}) {name}", c.m(), c.n()));
        }
    }
    // negative control: the checker must see a corrupted entry
    let w = evaluation_rep(&tensor(&vector_rep(&ctx(1, 1)), &vector_rep(&ctx(1, 1))).unwrap());
    let mut bad = w.action(1, 2).clone();
    let (&(i, j), f) = bad.iter().next().map(|(k, f)| (k, f.clone())).unwrap();
    bad.set(i, j, f.scale(&q(3)));
    assert!(!verify_defining_relations(&w.with_action_unchecked(1, 2, bad), 2).passed());
    verdict(true, format!("{} modules at level {RELATION_LEVEL}; corrupted control rejected", names.len()))
}

fn generic_shifts(bad: &[Rational]) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 3);
    let mut out = Vec::new();
    while out.len() < 10 {
        let a = qf(rng.gen_range(-97..=97), rng.gen_range(5..=13));
        if !a.is_integer() && !bad.contains(&a) && !out.contains(&a) {
            out.push(a);
        }
    }
    out
}

fn criterion_generic_quotient() -> (Status, String) {
    let bad = oracle_degenerate();
    let mut dims = BTreeSet::new();
    for a in generic_shifts(&bad) {
        let oracle = TwoFactorOracle::new(&a);
        let expected = oracle.cyclic_quotient_dim();
        let w = two_factor(&a);
        assert!(oracle.agrees_with(&w), "library tensor disagrees with the hand-built one at α = {a}");
        let top = unit_vector(4, 0);
        let cyc = submodule(&w, &cyclic_span(&w, &top).unwrap()).unwrap();
        assert_eq!(maximal_space_dim(&cyc).unwrap(), 1, "maximal vectors at α = {a}");
        let qr = irreducible_quotient(&w, &top).unwrap();
        assert_eq!(qr.module.dim(), expected, "quotient dimension at α = {a}");
        assert_eq!(maximal_space_dim(&qr.module).unwrap(), 1);
        dims.insert(expected);
    }
    verdict(dims == BTreeSet::from([4]), format!("10 generic shifts; oracle quotient dims {dims:?}"))
}

fn criterion_star() -> (Status, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 4);
    for case in 0..20 {
        let c = if case % 2 == 0 { ctx(1, 1) } else { ctx(2, 1) };
        let factor = |rng: &mut ChaCha8Rng| -> GlModule {
            let v = vector_rep(&c);
            match rng.gen_range(0..3) {
                0 => v,
                1 => tensor(&one_dim_rep(&c, &qf(rng.gen_range(-6..=6), rng.gen_range(1..=3))), &v).unwrap(),
                _ => {
                    let vv = tensor(&v, &v).unwrap();
                    cyclic_subquotient(&vv, &unit_vector(vv.dim(), 0)).unwrap()
                }
            }
        };
        let (ga, gb) = (factor(&mut rng), factor(&mut rng));
        let alpha = qf(rng.gen_range(-30..=30), rng.gen_range(1..=5));
        let w = shifted_tensor(&[evaluation_rep(&ga), evaluation_rep(&gb)], &[q(0), alpha.clone()]).unwrap();
        let got = highest_weight_of(&w, &unit_vector(w.dim(), 0)).unwrap();
        let (la, lb) = (eval_weight(&c, &ga.weights()[0]), eval_weight(&c, &gb.weights()[0]));
        let want: Vec<RatFun> = (1..=c.size())
            .map(|a| (&la[a - 1] * &lb[a - 1].shift(&alpha)).scale(&sign(grade(&c, a))))
            .collect();
        assert_eq!(got.components(), &want[..], "case {case}");
        let lib = star_product(
            &HighestWeight::new(c, la).unwrap(),
            &HighestWeight::new(c, lb).unwrap().shift(&alpha),
        )
        .unwrap();
        assert_eq!(lib, got, "star_product, case {case}");
    }
    verdict(true, "20 cases, exact RatFun equality".into())
}

/// Seeded evaluation weights: dominant ones have `μ_a − μ_{a+1} ∈ Z_+` for
/// every `a ≠ M`; each non-dominant one breaks exactly one such gap.
type Cases = Vec<(GradingContext, Vec<Rational>)>;

fn drinfeld_cases() -> (Cases, Cases) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 5);
    let ctxs = [ctx(1, 1), ctx(2, 1), ctx(1, 2), ctx(2, 2)];
    let block = |rng: &mut ChaCha8Rng, len: usize| -> Vec<Rational> {
        let mut top = qf(rng.gen_range(-6..=6), rng.gen_range(1..=3)) + q(rng.gen_range(0..=3));
        let mut out = Vec::new();
        for _ in 0..len {
            out.push(top.clone());
            top -= q(rng.gen_range(0..=2));
        }
        out
    };
    let within = |mu: &[Rational]| mu.iter().all(|x| *x >= q(-5) && *x <= q(5));
    let mut good = Vec::new();
    while good.len() < 20 {
        let c = ctxs[good.len() % 4];
        let mut mu = block(&mut rng, c.m());
        mu.extend(block(&mut rng, c.n()));
        if within(&mu) {
            good.push((c, mu));
        }
    }
    let mut bad = Vec::new();
    while bad.len() < 20 {
        // gl(1|1) has no even gap to break
        let c = ctxs[1 + bad.len() % 3];
        let gaps: Vec<usize> = (1..c.size()).filter(|&a| a != c.m()).collect();
        let mut mu: Vec<Rational> = (0..c.size()).map(|_| qf(rng.gen_range(-10..=10), 2)).collect();
        let a = gaps[rng.gen_range(0..gaps.len())];
        // break one gap: negative integer or non-integer
        mu[a] = if rng.gen_bool(0.5) { &mu[a - 1] + q(rng.gen_range(1..=3)) } else { &mu[a - 1] - qf(1, 2) };
        if within(&mu) {
            bad.push((c, mu));
        }
    }
    (good, bad)
}

fn accepted_weights() -> Vec<HighestWeight> {
    drinfeld_cases()
        .0
        .iter()
        .map(|(c, mu)| HighestWeight::new(*c, eval_weight(c, mu)).unwrap())
        .collect()
}

fn criterion_drinfeld() -> (Status, String) {
    let (good, bad) = drinfeld_cases();
    for (c, mu) in &good {
        let l = HighestWeight::new(*c, eval_weight(c, mu)).unwrap();
        let lam = eval_weight(c, mu);
        let FdVerdict::FiniteDimensional(d) = check_finite_dim(&l) else {
            panic!("dominant μ = {mu:?} rejected");
        };
        for a in 1..c.size() {
            let ratio = &lam[a - 1] / &lam[a];
            if a == c.m() {
                let rho = RatFun::normalize(d.qtilde_m.clone(), d.q_m.clone()).unwrap();
                assert_eq!(rho, ratio, "Q̃_M / Q_M for μ = {mu:?}");
                continue;
            }
            let p = &d.p[&a];
            let shifted = p.shift(&sign(grade(c, a)));
            // exact division: P(x ± 1) den = num P(x)
            assert_eq!(&shifted * ratio.den(), ratio.num() * p, "P_{a} for μ = {mu:?}");
        }
    }
    for (c, mu) in &bad {
        let l = HighestWeight::new(*c, eval_weight(c, mu)).unwrap();
        assert!(
            matches!(check_finite_dim(&l), FdVerdict::NotFiniteDimensional { .. }),
            "non-dominant μ = {mu:?} accepted"
        );
    }
    verdict(true, format!("{} dominant accepted, {} non-dominant rejected", good.len(), bad.len()))
}

fn criterion_factorization() -> (Status, String) {
    let ws = accepted_weights();
    for l in &ws {
        let d = check_finite_dim(l).data().cloned().expect("accepted");
        let (f, factors) = factor_into_fundamentals(l, &d).unwrap();
        let prod = star_all(l.ctx(), &factors.iter().map(|x| x.weight.clone()).collect::<Vec<_>>()).unwrap();
        assert_eq!(&twist(&f, &prod).unwrap(), l);
    }
    verdict(true, format!("{} weights reproduced exactly", ws.len()))
}

fn criterion_twist() -> (Status, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 7);
    let (good, bad) = drinfeld_cases();
    let weights: Vec<HighestWeight> = good
        .iter()
        .chain(&bad)
        .map(|(c, mu)| HighestWeight::new(*c, eval_weight(c, mu)).unwrap())
        .collect();
    for _ in 0..10 {
        let deg = rng.gen_range(0..=3);
        let coeffs: Vec<Rational> = (0..deg).map(|_| qf(rng.gen_range(-9..=9), rng.gen_range(1..=4))).collect();
        let f = twist_series(&coeffs);
        for l in &weights {
            let (v0, v1) = (check_finite_dim(l), check_finite_dim(&twist(&f, l).unwrap()));
            match (&v0, &v1) {
                (FdVerdict::FiniteDimensional(d0), FdVerdict::FiniteDimensional(d1)) => assert_eq!(d0, d1),
                _ => assert_eq!(v0.status(), v1.status(), "twist by {f} changed the verdict"),
            }
        }
    }
    verdict(true, format!("10 twists × {} weights", weights.len()))
}

fn criterion_degeneracy() -> (Status, String) {
    let found = oracle_degenerate();
    let lib: Vec<Rational> = small_shifts()
        .into_iter()
        .filter(|a| {
            let qr = irreducible_quotient(&two_factor(a), &unit_vector(4, 0)).unwrap();
            qr.span_dim < 4 || qr.maximal_dim > 0
        })
        .collect();
    assert_eq!(lib, found, "library and oracle disagree on degenerate shifts");
    let mut notes = Vec::new();
    for a in &found {
        let oracle = TwoFactorOracle::new(a);
        let w = two_factor(a);
        let qr = irreducible_quotient(&w, &unit_vector(4, 0)).unwrap();
        let quotient = oracle.top_quotient_dim();
        let maximal = oracle.top_submodule_dim();
        assert_eq!(quotient + maximal, 4, "additivity at α = {a}");
        // the library quotient lives on C = U·e_0, whose top-avoiding
        // submodule is C ∩ M_W
        assert_eq!(qr.module.dim(), oracle.cyclic_quotient_dim(), "quotient dimension at α = {a}");
        assert_eq!(qr.span_dim, oracle.span_dim());
        assert_eq!(qr.module.dim() + qr.maximal_dim, qr.span_dim);
        assert!(verify_defining_relations(&qr.module, RELATION_LEVEL).passed());
        notes.push(format!(
            "α={a}: W/M_W {quotient} + M_W {maximal}; C = U·e_0 dim {} = irreducible {} + maximal {}",
            qr.span_dim,
            qr.module.dim(),
            qr.maximal_dim
        ));
    }
    verdict(!found.is_empty(), format!("{} of {} shifts degenerate; {}", found.len(), small_shifts().len(), notes.join("; ")))
}

fn criterion_hopf() -> (Status, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut checks = 0;
    for c in [ctx(1, 1), ctx(2, 1)] {
        let a2 = qf(rng.gen_range(-20..=20), rng.gen_range(1..=5));
        let a3 = qf(rng.gen_range(-20..=20), rng.gen_range(1..=5));
        for (a, b) in c.pairs() {
            assert_eq!(check_coassociativity(&c, a, b, 3, &a2, &a3).unwrap(), None);
            assert_eq!(check_counit_laws(&c, a, b, 3, &a2).unwrap(), None);
            checks += 2;
        }
        assert_eq!(check_antipode_laws(&c, 2).unwrap(), None);
        checks += 1;
    }
    verdict(true, format!("{checks} exact series identities"))
}

fn criterion_induced() -> (Status, String) {
    let alpha = qf(1, 3);
    let w = two_factor(&alpha);
    let tensor_q = irreducible_quotient(&w, &unit_vector(4, 0)).unwrap();
    let target = highest_weight_of(&w, &unit_vector(4, 0)).unwrap();
    let aux = AuxData::scalar(&target).unwrap();
    let mut trail = Vec::new();
    for d in 1..=INDUCED_MAX_D {
        let ind = induced_module_truncated(&aux, d + 1).unwrap();
        trail.push(format!("D={d}:{}", ind.previous_dim));
        if !ind.stabilized {
            continue;
        }
        let module = ind.module.as_ref().unwrap();
        let weights_match = ind.highest_weight.as_ref() == Some(&target);
        let dims_match = ind.quotient_dim == tensor_q.module.dim();
        let chars = |m: &YModule| {
            let mut ws: Vec<Vec<Rational>> = m.gl_weights().unwrap();
            ws.sort();
            ws
        };
        let chars_match = chars(module) == chars(&tensor_q.module);
        let rel = verify_defining_relations(module, 3).passed();
        return verdict(
            weights_match && dims_match && chars_match && rel,
            format!(
                "stabilized between D={d} and D={} at dim {} (tensor quotient {}); weight {}, gl character {}, relations {}",
                d + 1,
                ind.quotient_dim,
                tensor_q.module.dim(),
                weights_match,
                chars_match,
                rel
            ),
        );
    }
    (Status::Experimental, format!("no stabilization by D={INDUCED_MAX_D}: {}", trail.join(" ")))
}

fn main() {
    sparse_helpers_are_consistent();
    assert_eq!(TOLERANCE, 0, "all comparisons are exact");
    let lines = vec![
        run(1, "PBW straightening, associativity, relation closure", 60, criterion_pbw),
        run(2, "module relations at level 4", 60, criterion_module_relations),
        run(3, "one-dimensional maximal vectors, generic quotient dim", 60, criterion_generic_quotient),
        run(4, "⋆-product consistency", 60, criterion_star),
        run(5, "Drinfeld round trip", 30, criterion_drinfeld),
        run(6, "fundamental factorization round trip", 30, criterion_factorization),
        run(7, "twist invariance", 30, criterion_twist),
        run(8, "degeneracy detection", 60, criterion_degeneracy),
        run(9, "Hopf suite", 60, criterion_hopf),
        run(10, "induced cross-construction", 120, criterion_induced),
    ];
    let failed: Vec<usize> = lines.iter().filter(|l| l.status == Status::Fail).map(|l| l.n).collect();
    let total: f64 = lines.iter().map(|l| l.elapsed.as_secs_f64()).sum();
    println!("acceptance: {} criteria, failed {failed:?}, total {total:.1}s", lines.len());
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

fn sparse_helpers_are_consistent() {
    // guards the oracle's use of dense conversions
    let mut m = SparseMatrix::new(2, 2);
    m.set(0, 1, qf(1, 2));
    assert_eq!(SparseMatrix::from_dense(&m.to_dense()), m);
    assert_eq!(Polynomial::linear(q(1)).shift(&q(1)), Polynomial::linear(q(2)));
}
