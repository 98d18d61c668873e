mod common;

use braidkit_core::structuremap::{braiding, coact};
use braidkit_core::verify::{verify_braided_hopf, Bounds, Status};
use common::*;

#[test]
fn quantum_plane_braiding() {
    let b = braided("aq2");
    let p = b.comodule.presentation();
    let cases = [
        ("x(x)x", "q^2*x(x)x"),
        ("x(x)y", "q*y(x)x"),
        ("y(x)y", "q^2*y(x)y"),
        ("y(x)x", "q*x(x)y + (q^2 - 1)*y(x)x"),
        ("1(x)x", "x(x)1"),
    ];
    for (input, expected) in cases {
        let out = braiding(&*b.comodule, &*b.comodule, &el(input, &[p, p])).unwrap();
        assert_eq!(out, el(expected, &[p, p]), "{input}");
    }
}

#[test]
fn matrix_generators_past_the_plane() {
    let m = braided("bglq2");
    let a = braided("aq2");
    let (mp, ap) = (m.comodule.presentation(), a.comodule.presentation());
    let cases = [
        ("a(x)x", "x(x)a + (1 - q^2)*y(x)c"),
        ("b(x)x", "q^-1*x(x)b + (q - q^-1)*y(x)a - (q - q^-1)*y(x)d"),
        ("c(x)x", "q*x(x)c"),
        ("d(x)x", "x(x)d + (1 - q^-2)*y(x)c"),
        ("a(x)y", "y(x)a"),
        ("b(x)y", "q*y(x)b"),
        ("c(x)y", "q^-1*y(x)c"),
        ("d(x)y", "y(x)d"),
    ];
    for (input, expected) in cases {
        let out = braiding(&*m.comodule, &*a.comodule, &el(input, &[mp, ap])).unwrap();
        assert_eq!(out, el(expected, &[ap, mp]), "{input}");
    }
}

#[test]
fn coaction_is_multiplicative() {
    let b = braided("aq2");
    let p = b.comodule.presentation();
    let h = b.comodule.hopf_rc().clone();
    let hp = h.presentation();
    let got = coact(&*b.comodule, &el("x*y", &[p])).unwrap();
    let expanded = el(
        "x*x(x)alpha*beta + x*y(x)alpha*delta + y*x(x)gamma*beta + y*y(x)gamma*delta",
        &[p, hp],
    );
    assert_same(&got, &expanded, &[p, hp]);
    assert_eq!(coact(&*b.comodule, &el("x", &[p])).unwrap(), el("x(x)alpha + y(x)gamma", &[p, hp]));
    assert_eq!(coact(&*b.comodule, &el("1", &[p])).unwrap(), el("1(x)1", &[p, hp]));
}

#[test]
fn coaddition() {
    let b = braided("aq2");
    let p = b.comodule.presentation();
    let bh = &b.braided;
    assert_eq!(bh.coproduct(&el("x", &[p])).unwrap(), el("x(x)1 + 1(x)x", &[p, p]));
    assert_eq!(
        bh.coproduct(&el("x^2", &[p])).unwrap(),
        el("x^2(x)1 + (1 + q^2)*x(x)x + 1(x)x^2", &[p, p])
    );
    assert_eq!(bh.antipode(&el("x", &[p])).unwrap(), el("-x", &[p]));
    assert_eq!(bh.antipode(&el("x*y", &[p])).unwrap(), el("q^2*x*y", &[p]));
    let rel = el("y*x - q*x*y", &[p]);
    assert!(bh.coproduct(&rel).unwrap().is_zero());
    assert!(bh.counit(&rel).unwrap().is_zero());
    assert!(bh.antipode(&rel).unwrap().is_zero());
}

#[test]
fn plane_and_matrix_pass_braided_suite() {
    for name in ["aq2", "bglq2"] {
        let b = braided(name);
        let rep = verify_braided_hopf(&b.braided, Bounds::default());
        assert!(rep.passed(), "{name}\n{}", rep.render());
        assert!(rep.select("braided", "antipode-product-law").count() > 0);
        assert!(rep.select("braided", "antipode-left").count() > 0);
    }
}

#[test]
fn super_line() {
    let b = braided("superline");
    let p = b.comodule.presentation();
    let t = el("theta(x)theta", &[p, p]);
    assert_eq!(braiding(&*b.comodule, &*b.comodule, &t).unwrap(), t.neg());
    assert!(verify_braided_hopf(&b.braided, Bounds::default()).passed());
    let line = braided("braidedline");
    assert!(verify_braided_hopf(&line.braided, Bounds::default()).passed());
}

#[test]
fn corrupted_braided_antipode_is_caught() {
    let b = braided("aq2");
    let p = b.comodule.presentation();
    let x = p.generator("x").unwrap();
    let bad = b.braided.with_antipode_entry(x, el("x", &[p])).unwrap();
    let rep = verify_braided_hopf(&bad, Bounds::default());
    assert!(rep.select("braided", "antipode-left:x").any(|c| c.status == Status::Fail));
}

#[test]
fn non_covariant_coproduct_is_caught() {
    let b = braided("aq2");
    let p = b.comodule.presentation();
    let x = p.generator("x").unwrap();
    let bad = b.braided.with_coproduct_entry(x, el("x(x)1 + 1(x)x + y(x)1", &[p, p])).unwrap();
    let rep = verify_braided_hopf(&bad, Bounds::default());
    assert!(!rep.passed());
}
