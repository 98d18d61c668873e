mod common;

use braidkit_core::braided::solve_antipode;
use braidkit_core::catalog::{identification, load, NAMES};
use braidkit_core::constructions::TransmutedAlgebra;
use braidkit_core::ncpoly::{NcElement, Signature, TensorWord, Word};
use braidkit_core::rewrite::normalize;
use common::*;
use std::path::PathBuf;

#[test]
fn every_entry_loads() {
    for name in NAMES.iter().chain(["zgrade"].iter()) {
        let l = load(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(l.definition.name, *name);
    }
    assert!(load("nosuch").is_err());
}

#[test]
fn presentations_of_the_matrix_algebras() {
    let g = load("glq2").unwrap();
    let p = g.bundle.presentation();
    assert_eq!(p.relations().len(), 7);
    assert_eq!(p.relation_elements().len(), 9);
    assert!(p.is_zero(&el("C*Cinv - 1", &[p])).unwrap());
    let b = load("bglq2").unwrap();
    let bp = b.bundle.presentation();
    assert_eq!(bp.normal_form(&el("b*a", &[bp])).unwrap(), el("q^2*a*b", &[bp]));
    assert_eq!(bp.normal_form(&el("d*b", &[bp])).unwrap(), el("b*d + (1 - q^-2)*a*b", &[bp]));
    let a = load("aq2").unwrap();
    let ap = a.bundle.presentation();
    assert!(ap.is_zero(&el("y*x - q*x*y", &[ap])).unwrap());
}

/// The matrix coaction is the adjoint coaction of GL_q(2) read through the
/// letter identification.
#[test]
fn matrix_coaction_is_the_adjoint_coaction() {
    let h = gl();
    let hp = h.presentation();
    let tr = TransmutedAlgebra::new(h.clone());
    let b = braided("bglq2");
    let bp = b.comodule.presentation();
    let map = identification(bp, hp).unwrap();
    for g in bp.generators() {
        let ad = tr.adjoint_coaction(&NcElement::generator(hp.tag(), map[g as usize])).unwrap();
        let mut renamed = NcElement::zero(Signature::pair(bp.tag(), hp.tag()));
        for (tw, c) in ad.terms() {
            let letters = tw.slot(0).letters().iter().map(|l| map.iter().position(|m| m == l).unwrap() as u32);
            let left = Word::from_letters(letters.map(|x| x as _).collect());
            renamed.add_term(TensorWord::new(vec![left, tw.slot(1).clone()]), c);
        }
        let renamed = normalize(&renamed, &[bp, hp]).unwrap();
        assert_eq!(renamed, b.comodule.coaction_table()[g as usize], "{}", bp.name(g));
    }
}

#[test]
fn matrix_antipode_is_the_unique_solution() {
    let b = braided("bglq2");
    let bh = &b.braided;
    let (sol, unique) = solve_antipode(&*b.comodule, bh.coproduct_table(), bh.counit_table(), 2).unwrap();
    assert!(unique);
    for (g, s) in sol.iter().enumerate() {
        assert_eq!(&b.comodule.normal_form(s).unwrap(), &bh.antipode_table()[g]);
    }
    let p = b.comodule.presentation();
    assert_eq!(bh.antipode(&el("a", &[p])).unwrap(), el("(1 - q^2)*a*Dinv + q^2*d*Dinv", &[p]));
}

#[test]
fn plane_antipode_is_the_unique_solution() {
    let b = braided("aq2");
    let (sol, unique) = solve_antipode(&*b.comodule, b.braided.coproduct_table(), b.braided.counit_table(), 3).unwrap();
    assert!(unique);
    assert_eq!(sol, b.braided.antipode_table());
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

#[test]
fn confluence_reports_match_golden_files() {
    for name in ["glq2", "bglq2", "aq2"] {
        let l = load(name).unwrap();
        let report = l.reports.last().unwrap();
        assert_eq!(report.unresolved(), 0, "{name}");
        assert_eq!(report.degree_bound, 4);
        let text = report.render(l.bundle.presentation());
        let again = load(name).unwrap().reports.last().unwrap().render(l.bundle.presentation());
        assert_eq!(text, again);
        let path = golden_dir().join(format!("{name}.confluence"));
        if std::env::var_os("BRAIDKIT_BLESS").is_some() {
            std::fs::create_dir_all(golden_dir()).unwrap();
            std::fs::write(&path, &text).unwrap();
        }
        let golden = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert_eq!(text, golden, "{name}");
    }
}
