#![allow(dead_code)]

use braidkit_core::catalog::{load, BraidedBundle};
use braidkit_core::ncpoly::{NcElement, Word};
use braidkit_core::rewrite::Presentation;
use braidkit_core::structuremap::DqtHopf;
use braidkit_core::syntax::{format_element, parse_element, Alphabet};
use std::rc::Rc;

pub fn gl() -> Rc<DqtHopf> {
    load("glq2").unwrap().bundle.hopf().clone()
}

pub fn braided(name: &str) -> BraidedBundle {
    load(name).unwrap().bundle.braided().unwrap().clone()
}

pub fn el(text: &str, slots: &[&Presentation]) -> NcElement {
    let a: Vec<&dyn Alphabet> = slots.iter().map(|p| *p as &dyn Alphabet).collect();
    parse_element(text, &a).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn show(u: &NcElement, slots: &[&Presentation]) -> String {
    let a: Vec<&dyn Alphabet> = slots.iter().map(|p| *p as &dyn Alphabet).collect();
    format_element(u, &a)
}

pub fn word(p: &Presentation, text: &str) -> Word {
    let letters = text.split('*').map(|n| p.generator(n.trim()).unwrap()).collect();
    Word::from_letters(letters)
}

/// `u - v` normalized in the given presentations is zero.
pub fn assert_same(u: &NcElement, v: &NcElement, slots: &[&Presentation]) {
    let d = braidkit_core::rewrite::normalize(&u.sub(v).unwrap(), slots).unwrap();
    assert!(d.is_zero(), "{} != {}", show(u, slots), show(v, slots));
}
