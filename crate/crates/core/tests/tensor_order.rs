//! Does the order of shifted tensor factors matter?
//!
//! `V(α) ⊗ V(0)` is the global shift by `α` of `V(0) ⊗ V(−α)`, so we compare
//! `W(α) = V(0) ⊗ V(α)` with `W(−α)` shifted back. For generic `α` both are
//! irreducible with the same highest weight, hence isomorphic. At `α = ±1`
//! the top vector of one order is cyclic and of the other is not, so the two
//! orders are not isomorphic there.

use syang_core::exactmath::{q, qf, Rational};
use syang_core::glmn::vector_rep;
use syang_core::superalgebra::GradingContext;
use syang_core::yangian::{evaluation_rep, highest_weight_of, irreducible_quotient, shifted_tensor, YModule};

fn pair(c: &GradingContext, alpha: &Rational) -> YModule {
    let v = evaluation_rep(&vector_rep(c));
    shifted_tensor(&[v.clone(), v], &[q(0), alpha.clone()]).unwrap()
}

fn top(dim: usize) -> Vec<Rational> {
    let mut v = vec![q(0); dim];
    v[0] = q(1);
    v
}

#[test]
fn generic_orders_agree() {
    for (m, n) in [(1, 1), (2, 1)] {
        let c = GradingContext::new(m, n).unwrap();
        for alpha in [qf(1, 3), qf(-5, 7), qf(9, 2)] {
            let (w, r) = (pair(&c, &alpha), pair(&c, &-alpha.clone()));
            let (qw, qr) = (irreducible_quotient(&w, &top(w.dim())).unwrap(), irreducible_quotient(&r, &top(r.dim())).unwrap());
            assert_eq!(qw.module.dim(), qr.module.dim());
            let lw = highest_weight_of(&w, &top(w.dim())).unwrap();
            let lr = highest_weight_of(&r, &top(r.dim())).unwrap().shift(&alpha);
            assert_eq!(lw, lr);
            if (m, n) == (1, 1) {
                assert_eq!((qw.span_dim, qw.maximal_dim), (4, 0));
                assert_eq!((qr.span_dim, qr.maximal_dim), (4, 0));
            }
        }
    }
}

#[test]
fn orders_differ_at_the_degenerate_shifts() {
    let c = GradingContext::new(1, 1).unwrap();
    let (w, r) = (pair(&c, &q(1)), pair(&c, &q(-1)));
    let qw = irreducible_quotient(&w, &top(4)).unwrap();
    let qr = irreducible_quotient(&r, &top(4)).unwrap();
    // same irreducible top, different submodule structure
    assert_eq!(qw.module.dim(), qr.module.dim());
    assert_eq!((qw.span_dim, qw.maximal_dim), (2, 0));
    assert_eq!((qr.span_dim, qr.maximal_dim), (4, 2));
}
