use braidkit::format::{export, parse_definition};
use braidkit::load;
use braidkit_core::catalog::{self, NAMES};
use braidkit_core::ncpoly::Word;
use braidkit_core::Error;

#[test]
fn export_parse_export_is_stable() {
    for name in NAMES.iter().copied().chain(["zgrade"]) {
        let def = catalog::definition(name).unwrap();
        let text = export(&def);
        let back = parse_definition(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(export(&back), text, "{name}");
        assert_eq!(back.generators.len(), def.generators.len());
        assert_eq!(back.relations.len(), def.relations.len());
    }
}

#[test]
fn exported_files_load_to_the_same_normal_forms() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["glq2", "bglq2"] {
        std::fs::write(dir.path().join(format!("{name}.bk")), export(&catalog::definition(name).unwrap())).unwrap();
    }
    let file = load::load(dir.path().join("bglq2.bk").to_str().unwrap()).unwrap();
    let shipped = catalog::load("bglq2").unwrap();
    let (a, b) = (file.bundle.presentation(), shipped.bundle.presentation());
    assert_eq!(a.rules(), b.rules());
}

const PLANE: &str = "\
# a plane
name = plane
kind = braided_hopf

[generators]
x, y

[relations]
y*x = q*x*y

[coaction over=glq2]
x = x(x)alpha + y(x)gamma
y = x(x)beta + y(x)delta

[coproduct]
x = x(x)1 + 1(x)x
y = y(x)1 + 1(x)y

[counit]
x = 0
y = 0

[antipode]
x = -x
y = -y
";

#[test]
fn user_file_relation_becomes_a_rule() {
    let src = "name = m\nkind = dqt_hopf\n\n[generators]\na, b\n\n[relations]\nb*a = q^2*a*b\n\n\
               [coproduct]\na = a(x)a\nb = b(x)b\n\n[counit]\na = 1\nb = 1\n";
    let def = parse_definition(src).unwrap();
    let (p, report) = def.presentation().unwrap();
    assert_eq!(report.unresolved(), 0);
    assert_eq!(p.rules().len(), 1);
    let rule = &p.rules()[0];
    let (a, b) = (p.generator("a").unwrap(), p.generator("b").unwrap());
    assert_eq!(rule.lhs, Word::from_letters(vec![b, a]));
    assert_eq!(p.poly_text(&rule.rhs), "q^2*a*b");
}

#[test]
fn undeclared_generator_is_located() {
    let src = PLANE.replace("y*x = q*x*y", "y*x = q*x*z");
    let def = parse_definition(&src).unwrap();
    let err = catalog::build(&def, &mut |n| catalog::load(n)).unwrap_err();
    let Error::Located { line, .. } = &err else { panic!("{err}") };
    assert_eq!(*line, 9);
    assert!(matches!(err.root(), Error::UnknownGenerator { name, .. } if name == "z"));
}

#[test]
fn syntax_errors_carry_positions() {
    let err = parse_definition("name = m\nkind = lie\n").unwrap_err();
    assert!(matches!(err, Error::Located { line: 2, column: 8, .. }), "{err}");
    let err = parse_definition("name = m\nkind = dqt_hopf\n[gens]\n").unwrap_err();
    assert!(matches!(err, Error::Located { line: 3, .. }), "{err}");
    let err = parse_definition("name = m\nkind = dqt_hopf\n[counit]\na 1\n").unwrap_err();
    assert!(matches!(err, Error::Located { line: 4, .. }), "{err}");
    assert!(matches!(parse_definition("kind = dqt_hopf\n"), Err(Error::MissingEntry(_))));
    assert!(parse_definition("name = b\nkind = braided_hopf\n[generators]\nx\n").is_err());
}

#[test]
fn leading_comments_are_notes() {
    let def = parse_definition(PLANE).unwrap();
    assert_eq!(def.notes, vec!["a plane".to_string()]);
    assert_eq!(def.over.as_deref(), Some("glq2"));
    assert_eq!(def.generators[1].column, 4);
}

#[test]
fn over_resolves_to_a_sibling_file_first() {
    let dir = tempfile::tempdir().unwrap();
    // a sibling glq2.bk shadows the catalog entry
    std::fs::write(dir.path().join("glq2.bk"), export(&catalog::definition("glq2").unwrap())).unwrap();
    let path = dir.path().join("plane.bk");
    std::fs::write(&path, PLANE).unwrap();
    let l = load::load(path.to_str().unwrap()).unwrap();
    assert!(l.bundle.braided().is_some());

    std::fs::write(dir.path().join("glq2.bk"), "name = glq2\nkind = dqt_hopf\n[generators]\nalpha, alpha\n").unwrap();
    assert!(load::load(path.to_str().unwrap()).is_err());

    // without the sibling the catalog entry is used
    std::fs::remove_file(dir.path().join("glq2.bk")).unwrap();
    assert!(load::load(path.to_str().unwrap()).is_ok());
}
