use std::collections::BTreeSet;

use lpf::embedding::{
    ax_set, check_correspondence, hat, star_structure, translate_formula, translate_sequent,
    TranslationKind, FF, TT,
};
use lpf::metalab::Family;
use lpf::proofsys::Sequent;
use lpf::semantics::{
    check_consequence, eval_formula, holds, Element, ModelSpace, SearchConfig, Structure,
    Vocabulary,
};
use lpf::syntax::{parse_formula_declaring, Formula, Signature};

fn setup(atoms: &[&str]) -> (Signature, Vec<Formula>, ModelSpace) {
    let mut sig = Signature::parse("fun c/0\npred P/1").unwrap();
    let atoms: Vec<Formula> = atoms
        .iter()
        .map(|t| parse_formula_declaring(t, &mut sig).unwrap())
        .collect();
    let vocab = Vocabulary::of_signature(&sig, true);
    let vars: BTreeSet<String> = ["x".to_string()].into();
    let space = ModelSpace::enumerate(&vocab, &vars, &SearchConfig::with_max_domain(2));
    (sig, atoms, space)
}

const ALL_ATOMS: [&str; 7] = ["P(c)", "P(x)", "c = c", "x = x", "x = c", "c = x", "F"];

#[test]
fn correspondence_all_atoms_depth_two() {
    let (sig, atoms, space) = setup(&ALL_ATOMS);
    let family = Family::build(&space, &atoms, &["x"], 2).unwrap();
    let report = check_correspondence(&space, &sig, &family.all(), 5).unwrap();
    assert!(report.holds(), "{}", report.mismatches[0]);
    assert_eq!(report.formulas, family.len());
}

#[test]
fn correspondence_without_equality_depth_three() {
    let (sig, atoms, space) = setup(&["P(c)", "P(x)", "F"]);
    let space = space.restrict(|s| s.equality_table().iter().all(|v| v.is_classical()));
    let family = Family::build(&space, &atoms, &["x"], 3).unwrap();
    assert!(family.len() > 2000);
    let report = check_correspondence(&space, &sig, &family.all(), 5).unwrap();
    assert!(report.holds(), "{}", report.mismatches[0]);
}

#[test]
fn exactly_one_translation_holds() {
    let (_, atoms, space) = setup(&ALL_ATOMS);
    let family = Family::build(&space, &atoms, &["x"], 1).unwrap();
    for f in family.all() {
        let ts = TranslationKind::ALL.map(|k| translate_formula(&f, k));
        for i in 0..space.len() {
            let (s, a) = space.point(i);
            let star = star_structure(s);
            let n = ts.iter().filter(|t| holds(t, &star, a).unwrap()).count();
            assert_eq!(n, 1, "{f} at point {i}");
        }
    }
}

#[test]
fn star_structures_are_classical_and_satisfy_axioms() {
    let (sig, atoms, space) = setup(&ALL_ATOMS);
    let axioms = ax_set(&sig, &atoms);
    for i in 0..space.len() {
        let (s, a) = space.point(i);
        let star = star_structure(s);
        assert!(star.is_classical());
        for ax in &axioms {
            assert!(holds(ax, &star, a).unwrap(), "{ax}");
        }
    }
}

#[test]
fn counter_models_transfer() {
    let mut sig = Signature::new();
    let cases = [
        ("p; ~p |- q", 1),
        ("exists x. P(x) |- forall x. P(x)", 2),
        ("P(c) -> q |- ~q -> ~P(c)", 1),
    ];
    for (text, size) in cases {
        let seq = Sequent::parse(text, &mut sig).unwrap();
        let w = check_consequence(
            seq.hypotheses(),
            seq.conclusion(),
            &SearchConfig::default(),
        )
        .unwrap()
        .counter_model()
        .cloned()
        .unwrap_or_else(|| panic!("{text} has a counter-model"));
        assert_eq!(w.structure.size(), size, "{text}");
        let star = star_structure(&w.structure);
        let classical = translate_sequent(&seq);
        for h in classical.hypotheses() {
            assert!(holds(h, &star, &w.assignment).unwrap(), "{text}: {h}");
        }
        assert!(!holds(classical.conclusion(), &star, &w.assignment).unwrap());
    }
}

/// Values on token arguments are never observed by translated formulas.
#[test]
fn totalization_is_irrelevant() {
    let (_, atoms, space) = setup(&ALL_ATOMS);
    let family = Family::build(&space, &atoms, &["x"], 2).unwrap();
    let retotalize = |s: &Structure| -> Structure {
        let mut star = star_structure(s);
        let n = s.size();
        let m = star.size();
        let ff = star.element(FF).unwrap();
        let tt = star.element(TT).unwrap();
        let hatted: Vec<Element> = (0..m)
            .map(|i| {
                if i < n {
                    star.function(&hat("P")).unwrap().get(m, &[Element(i)])
                } else {
                    ff
                }
            })
            .collect();
        star.set_function(&hat("P"), 1, hatted).unwrap();
        let eqf: Vec<Element> = (0..m * m)
            .map(|i| {
                let (a, b) = (i / m, i % m);
                if a < n && b < n {
                    star.function("__eqF").unwrap().get(m, &[Element(a), Element(b)])
                } else if a == b {
                    tt
                } else {
                    ff
                }
            })
            .collect();
        star.set_function("__eqF", 2, eqf).unwrap();
        star
    };
    for i in 0..space.len() {
        let (s, a) = space.point(i);
        let (star, other) = (star_structure(s), retotalize(s));
        assert_ne!(star, other);
        for f in family.up_to(2) {
            let value = eval_formula(&f, s, a).unwrap();
            for k in TranslationKind::ALL {
                let t = translate_formula(&f, k);
                let (x, y) = (holds(&t, &star, a).unwrap(), holds(&t, &other, a).unwrap());
                assert_eq!(x, y, "{f} {k:?}");
                assert_eq!(x, value == k.value());
            }
        }
    }
}
