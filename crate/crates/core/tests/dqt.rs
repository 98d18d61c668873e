mod common;

use braidkit_core::scalar::Scalar;
use braidkit_core::structuremap::induced_action;
use braidkit_core::verify::{verify_dqt, verify_hopf, Bounds};
use common::*;

fn q(n: i32) -> Scalar {
    Scalar::q_pow(n)
}

#[test]
fn generator_table_matches_standard_matrix_scaled_by_q() {
    let h = gl();
    let p = h.presentation();
    let g = |n: &str| p.generator(n).unwrap();
    let expected = [
        ("alpha", "alpha", q(2)),
        ("delta", "delta", q(2)),
        ("alpha", "delta", q(1)),
        ("delta", "alpha", q(1)),
        ("beta", "gamma", &q(2) - &Scalar::one()),
        ("alpha", "beta", Scalar::zero()),
        ("gamma", "beta", Scalar::zero()),
        ("alpha", "gamma", Scalar::zero()),
        ("gamma", "gamma", Scalar::zero()),
    ];
    for (a, b, v) in expected {
        assert_eq!(h.table_entry(g(a), g(b)), v, "R({a},{b})");
    }
}

#[test]
fn determinant_normalisation() {
    let h = gl();
    let p = h.presentation();
    let c = word(p, "C");
    let ci = word(p, "Cinv");
    assert_eq!(h.eval_r_words(&c, &c).unwrap(), q(6));
    assert_eq!(h.eval_r_inverse_words(&c, &c).unwrap(), q(-6));
    assert_eq!(h.eval_r_words(&c, &ci).unwrap(), q(-6));
    assert_eq!(h.eval_r_words(&ci, &ci).unwrap(), q(6));
    assert_eq!(q(6).inv().unwrap(), q(-6));
}

#[test]
fn determinant_pairs_through_its_expansion() {
    // C = αδ - q^-1 βγ, paired letter by letter
    let h = gl();
    let p = h.presentation();
    let a = word(p, "alpha");
    let lhs = h.eval_r_words(&a, &word(p, "C")).unwrap();
    let rhs = &h.eval_r_words(&a, &word(p, "alpha*delta")).unwrap()
        - &(&q(-1) * &h.eval_r_words(&a, &word(p, "beta*gamma")).unwrap());
    assert_eq!(lhs, rhs);
    assert_eq!(lhs, q(3));
}

#[test]
fn r_of_unit_is_counit() {
    let h = gl();
    let p = h.presentation();
    let one = braidkit_core::ncpoly::Word::empty();
    for g in ["alpha", "beta", "C"] {
        let w = word(p, g);
        assert_eq!(h.eval_r_words(&one, &w).unwrap(), h.counit_word(&w));
        assert_eq!(h.eval_r_words(&w, &one).unwrap(), h.counit_word(&w));
    }
}

#[test]
fn inverse_pairing_sums_to_counit_on_alpha() {
    let h = gl();
    let p = h.presentation();
    let a = el("alpha", &[p]);
    let d = h.coproduct(&a).unwrap();
    let mut acc = Scalar::zero();
    for (l, c) in d.terms() {
        for (r, e) in d.terms() {
            let first = h.eval_r_inverse_words(l.slot(0), r.slot(0)).unwrap();
            let second = h.eval_r_words(l.slot(1), r.slot(1)).unwrap();
            acc += &(&(c * e) * &(&first * &second));
        }
    }
    assert_eq!(acc, Scalar::one());
}

#[test]
fn induced_action_on_the_plane() {
    let b = braided("aq2");
    let p = b.comodule.presentation();
    let h = b.comodule.hopf_rc().clone();
    let hp = h.presentation();
    let x = el("x", &[p]);
    let act = |g: &str| induced_action(&*b.comodule, &x, &el(g, &[hp])).unwrap();
    assert_eq!(act("alpha"), el("q^2*x", &[p]));
    assert!(act("gamma").is_zero());
    assert_eq!(act("1"), x);
    assert_eq!(induced_action(&*b.comodule, &el("y", &[p]), &el("1", &[hp])).unwrap(), el("y", &[p]));
}

#[test]
fn glq2_passes_dqt_and_hopf_suites() {
    let h = gl();
    let dqt = verify_dqt(&h, Bounds::default());
    assert!(dqt.passed(), "{}", dqt.render());
    assert!(dqt.checks.len() > 1000);
    for law in ["law1", "law2", "law3", "r-kills", "convolution-inverse"] {
        assert!(dqt.select("dqt", law).count() > 0, "{law}");
    }
    assert!(verify_hopf(&h, Bounds::default()).passed());
}

#[test]
fn trivial_pairing_on_commutative_line_passes() {
    let h = braidkit_core::catalog::load("zgrade").unwrap().bundle.hopf().clone();
    let p = h.presentation();
    let g = p.generator("g").unwrap();
    let trivial = h.with_base_entry(g, g, Scalar::one()).unwrap();
    assert!(verify_dqt(&trivial, Bounds::default()).passed());
}

#[test]
fn corrupted_r_entry_breaks_third_law() {
    let h = gl();
    let p = h.presentation();
    let a = p.generator("alpha").unwrap();
    let bad = h.with_base_entry(a, a, q(3)).unwrap();
    let rep = verify_dqt(&bad, Bounds::default());
    assert!(rep.select("dqt", "law3").any(|c| c.status != braidkit_core::verify::Status::Pass));
}

#[test]
fn corrupted_antipode_is_caught_at_alpha() {
    let h = gl();
    let p = h.presentation();
    let a = p.generator("alpha").unwrap();
    let bad = h.with_antipode_entry(a, el("delta*Cinv + beta", &[p])).unwrap();
    let rep = verify_hopf(&bad, Bounds::default());
    let failed: Vec<_> = rep.failures().map(|c| c.id.clone()).collect();
    assert!(failed.iter().any(|id| id == "antipode-left:alpha" || id == "antipode-right:alpha"), "{failed:?}");
}

