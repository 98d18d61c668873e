use braidkit_core::catalog::load;
use braidkit_core::ncpoly::{NcElement, Signature, TensorWord, Word};
use braidkit_core::rewrite::{Presentation, Strategy as Reduction};
use braidkit_core::scalar::Scalar;
use braidkit_core::syntax::{format_element, parse_element, Alphabet};
use num_rational::BigRational;
use proptest::prelude::*;
use std::sync::OnceLock;

fn scalar() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-6i32..=6, -9i64..=9, 1i64..=4), 0..5).prop_map(|terms| {
        let mut s = Scalar::zero();
        for (e, n, d) in terms {
            s += &Scalar::monomial(BigRational::new(n.into(), d.into()), e);
        }
        s
    })
}

// Presentations are rebuilt per thread: bundles hold Rc and RefCell.
fn gl() -> Presentation {
    load("glq2").unwrap().bundle.presentation().clone()
}

fn plane() -> &'static Presentation {
    static P: OnceLock<Presentation> = OnceLock::new();
    P.get_or_init(|| load("aq2").unwrap().bundle.presentation().clone())
}

fn word(ngen: u32, max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0..ngen, 0..=max).prop_map(|l| Word::from_letters(l.into_iter().map(|g| g as _).collect()))
}

fn element(sig: Signature, ngen: u32, max: usize) -> impl Strategy<Value = NcElement> {
    let slots = sig.degree();
    prop::collection::vec((prop::collection::vec(word(ngen, max), slots), scalar()), 0..4).prop_map(move |terms| {
        let mut u = NcElement::zero(sig.clone());
        for (ws, c) in terms {
            u.add_term(TensorWord::new(ws), &c);
        }
        u
    })
}

fn plane_pair() -> impl Strategy<Value = NcElement> {
    element(Signature::pair(plane().tag(), plane().tag()), 2, 2)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn scalar_multiplication_distributes(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
    }

    #[test]
    fn scalar_ring_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a + &(-&a), Scalar::zero());
        prop_assert_eq!(&a * &Scalar::one(), a.clone());
    }

    #[test]
    fn monomials_are_units(n in -9i64..=9, e in -6i32..=6) {
        prop_assume!(n != 0);
        let m = Scalar::monomial(BigRational::from_integer(n.into()), e);
        prop_assert_eq!(&m * &m.inv().unwrap(), Scalar::one());
    }

    #[test]
    fn scalars_print_and_parse(a in scalar()) {
        prop_assert_eq!(braidkit_core::syntax::parse_scalar(&a.to_string()).unwrap(), a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn tensor_mul_is_associative_and_unital(u in plane_pair(), v in plane_pair(), w in plane_pair()) {
        let l = u.tensor_mul(&v).unwrap().tensor_mul(&w).unwrap();
        let r = u.tensor_mul(&v.tensor_mul(&w).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        let one = NcElement::one(u.signature().clone());
        prop_assert_eq!(u.tensor_mul(&one).unwrap(), u.clone());
        prop_assert_eq!(one.tensor_mul(&u).unwrap(), u);
    }

    #[test]
    fn split_then_flatten_is_identity(u in plane_pair()) {
        let mut back = NcElement::zero(u.signature().clone());
        for (c, blocks) in u.split(&[1, 1]).unwrap() {
            back.add_scaled(&NcElement::flatten(&blocks), &c).unwrap();
        }
        prop_assert_eq!(back, u);
    }

    #[test]
    fn embed_then_permute_back(u in plane_pair()) {
        let sig = Signature::new(vec![plane().tag().clone(); 3]);
        let e = u.embed(&sig, &[2, 0]).unwrap();
        let mut back = NcElement::zero(u.signature().clone());
        for (c, blocks) in e.permute(&[2, 0, 1]).unwrap().split(&[2, 1]).unwrap() {
            prop_assert!(blocks[1].terms().all(|(t, _)| t.slot(0).is_empty()));
            back.add_scaled(&blocks[0], &c).unwrap();
        }
        prop_assert_eq!(back, u);
    }

    #[test]
    fn printed_elements_reparse(u in plane_pair()) {
        let a: &dyn Alphabet = plane();
        let text = format_element(&u, &[a, a]);
        prop_assert_eq!(parse_element(&text, &[a, a]).unwrap(), u);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_is_strategy_independent_and_idempotent(
        a in prop::collection::vec((word(6, 3), scalar()), 1..3),
        b in prop::collection::vec((word(6, 3), scalar()), 1..3),
    ) {
        thread_local!(static GL: Presentation = gl());
        GL.with(|p| {
            let build = |terms: &[(Word, Scalar)]| {
                let mut e = NcElement::zero(Signature::single(p.tag()));
                for (w, c) in terms {
                    e.add_term(TensorWord::new(vec![w.clone()]), c);
                }
                e
            };
            let (a, b) = (build(&a), build(&b));
            let prod = a.tensor_mul(&b).unwrap();
            let left = p.normal_form_with(&prod, Reduction::Leftmost).unwrap();
            let right = p.normal_form_with(&prod, Reduction::Rightmost).unwrap();
            prop_assert_eq!(&left, &right);
            prop_assert_eq!(p.normal_form(&left).unwrap(), left.clone());
            prop_assert!(left.terms().all(|(t, _)| p.is_irreducible(t.slot(0))));
            Ok(())
        })?;
    }
}
