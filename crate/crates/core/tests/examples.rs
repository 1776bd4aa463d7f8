//! Worked values across the public API.

use std::sync::Arc;

use heckecat_core::oracle::{bruhat_by_subword, kl_by_bar_solve, reduced_words};
use heckecat_core::{
    BasisTag, CharacterVector, CoxeterGroup, Element, Error, Functors, HeckeElement, KLCache, LaurentPoly, Side,
    Transport,
};

fn kl(t: &str) -> KLCache {
    KLCache::new(Arc::new(CoxeterGroup::build(t.parse().unwrap()).unwrap())).unwrap()
}

fn v(k: i32) -> LaurentPoly {
    LaurentPoly::v_pow(k)
}

#[test]
fn group_basics() {
    let cache = kl("A2");
    let g = cache.group();
    let (s1, s2) = (g.generator(1), g.generator(2));
    assert_eq!(g.mul(s1, s1), Element::IDENTITY);
    assert_eq!(g.display(g.mul(s1, s2)), "12");
    assert_eq!(g.mul(g.from_word(&[1, 2, 1]).unwrap(), g.from_word(&[2, 1, 2]).unwrap()), Element::IDENTITY);
    assert_eq!(g.inverse(g.mul(s1, s2)), g.mul(s2, s1));
    assert_eq!(g.length(g.longest()), 3);
    assert_eq!(g.descents(g.mul(s1, s2), Side::Left), vec![1]);
    assert_eq!(g.descents(g.longest(), Side::Right), vec![1, 2]);
    assert!(g.descents(Element::IDENTITY, Side::Left).is_empty());
    assert!(g.bruhat_leq(s1, g.mul(s2, s1)));
    assert!(!g.bruhat_leq(s1, s2));
    assert_eq!(g.word(g.longest()), &[1, 2, 1]);
    assert_eq!(reduced_words(g, g.longest()).len(), 2);
    assert!(bruhat_by_subword(g, s1, g.longest()).unwrap());
    assert!(!bruhat_by_subword(g, s1, s2).unwrap());

    let b2 = CoxeterGroup::build("B2".parse().unwrap()).unwrap();
    assert_eq!((b2.order(), b2.length(b2.longest())), (8, 4));
    assert!(matches!("Z9".parse::<heckecat_core::CartanType>(), Err(Error::UnsupportedType(_))));
}

#[test]
fn laurent_arithmetic() {
    let q = LaurentPoly::quadratic_coeff();
    assert_eq!(v(1).checked_add(&v(-1)).unwrap().to_string(), "v^-1 + v");
    assert_eq!(q.checked_mul(&q).unwrap().to_string(), "v^-2 - 2 + v^2");
    assert_eq!(q.bar().to_string(), "-v^-1 + v");
    assert_eq!(LaurentPoly::constant(3).bar(), LaurentPoly::constant(3));
    assert_eq!(q.eval_at_one().unwrap(), 0);
    let one_plus_q = LaurentPoly::from_terms([(0, 1), (1, 1)]);
    assert_eq!(one_plus_q.subst_q(heckecat_core::QSubst::VSquared).unwrap().to_string(), "1 + v^2");
    assert_eq!(one_plus_q.subst_q(heckecat_core::QSubst::VInverseSquared).unwrap().to_string(), "v^-2 + 1");
    assert_eq!(one_plus_q.in_variable("q").to_string(), "1 + q");
    assert_eq!("v^-1 - 2 + 3v^2".parse::<LaurentPoly>().unwrap(), LaurentPoly::from_terms([(-1, 1), (0, -2), (2, 3)]));
    assert_eq!(LaurentPoly::constant(i64::MAX).checked_add(&LaurentPoly::one()), Err(Error::CoefficientOverflow));
}

#[test]
fn hecke_products_and_kl_bases() {
    let cache = kl("A2");
    let g = cache.group();
    let (e, s1, s2) = (Element::IDENTITY, g.generator(1), g.generator(2));
    let hs = HeckeElement::standard(g, s1);
    assert_eq!(hs.mul(&hs, g).unwrap().display(g), "(v^-1 - v)\u{b7}H[1] + H[e]");
    assert_eq!(hs.mul(&HeckeElement::standard(g, s2), g).unwrap(), HeckeElement::standard(g, g.mul(s1, s2)));
    assert_eq!(HeckeElement::inv_std(g, s1).unwrap().display(g), "H[1] + (-v^-1 + v)\u{b7}H[e]");
    assert_eq!(HeckeElement::monomial(g, e, v(1)).bar(g).unwrap(), HeckeElement::monomial(g, e, v(-1)));
    assert_eq!(HeckeElement::standard(g, g.mul(s1, s2)).star(g), HeckeElement::standard(g, g.mul(s2, s1)));
    assert_eq!(HeckeElement::standard(g, e).tau(), LaurentPoly::one());
    assert!(HeckeElement::standard(g, s1).tau().is_zero());

    assert_eq!(cache.kl_basis(s1).display(g), "H[1] + v\u{b7}H[e]");
    assert_eq!(cache.twisted_kl_basis(s1).display(g), "H[1] - v^-1\u{b7}H[e]");
    let sq = cache.kl_basis(s1).mul(cache.kl_basis(s1), g).unwrap();
    assert_eq!(sq, cache.kl_basis(s1).scale(&v(1).checked_add(&v(-1)).unwrap()).unwrap());
    assert_eq!(
        cache.kl_basis(g.longest()).display(g),
        "H[121] + v\u{b7}H[21] + v\u{b7}H[12] + v^2\u{b7}H[2] + v^2\u{b7}H[1] + v^3\u{b7}H[e]"
    );
    assert_eq!(*cache.dual_kl_basis(g.longest()).unwrap(), HeckeElement::standard(g, g.longest()));
    assert_eq!(*cache.dual_twisted_kl_basis(g.longest()).unwrap(), HeckeElement::standard(g, g.longest()));
    assert_eq!(cache.dual_kl_basis(g.mul(s1, s2)).unwrap().display(g), "-v\u{b7}H[121] + H[12]");
    let pair = cache.kl_basis(s1).mul(cache.dual_kl_basis(s1).unwrap(), g).unwrap();
    assert_eq!(pair.tau(), LaurentPoly::one());
    for w in g.elements() {
        assert_eq!(kl_by_bar_solve(g, w).unwrap(), *cache.kl_basis(w));
    }
}

#[test]
fn classical_kl_polynomial_in_a3() {
    let cache = kl("A3");
    let g = cache.group();
    let x = g.generator(2);
    let y = g.from_word(&[2, 1, 3, 2]).unwrap();
    assert_eq!(cache.kl_poly(x, y).in_variable("q").to_string(), "1 + q");
    assert_eq!(cache.mu(x, y), 1);
    for y in g.elements() {
        assert!(cache.kl_poly(y, y).is_one());
        for (x, p) in cache.kl_column(y) {
            if g.length(y) == g.length(x) + 1 {
                assert!(p.is_one());
                assert_eq!(cache.mu(x, y), 1);
            }
        }
    }
}

#[test]
fn grothendieck_group_classes() {
    let cache = kl("A2");
    let kg = heckecat_core::KGroup::new(&cache);
    let g = cache.group();
    let (e, s1, w0) = (Element::IDENTITY, g.generator(1), g.longest());
    let nabla = |x| CharacterVector::basis_vector(g, BasisTag::DualVerma, x);
    assert_eq!(kg.class_in(BasisTag::Simple, w0, BasisTag::DualVerma).unwrap(), nabla(w0));
    assert_eq!(
        kg.class_in(BasisTag::Simple, s1, BasisTag::DualVerma).unwrap().display(g),
        "v^-2\u{b7}[\u{2207}(121)] - v^-1\u{b7}[\u{2207}(21)] - v^-1\u{b7}[\u{2207}(12)] + [\u{2207}(1)]"
    );
    assert_eq!(kg.class_in(BasisTag::Projective, s1, BasisTag::Verma).unwrap().display(g), "[\u{394}(1)] + v\u{b7}[\u{394}(e)]");
    assert_eq!(kg.verma_in_nabla(w0).unwrap(), nabla(w0));

    let shifted = nabla(s1).shift(2);
    assert_eq!(
        kg.to_hecke(Transport::RhoTwist, &shifted).unwrap(),
        HeckeElement::monomial(g, g.mul(w0, s1), v(2))
    );
    let l = CharacterVector::basis_vector(g, BasisTag::Simple, s1);
    assert_eq!(kg.to_hecke(Transport::RhoTwist, &l).unwrap(), *cache.twisted_kl_basis(g.mul(w0, s1)));
    let phi = kg.from_hecke(Transport::Phi, cache.dual_kl_basis(w0).unwrap()).unwrap();
    assert_eq!(kg.change_basis(&phi, BasisTag::Simple).unwrap(), CharacterVector::basis_vector(g, BasisTag::Simple, w0));

    let delta_e = CharacterVector::basis_vector(g, BasisTag::Verma, e);
    assert_eq!(kg.ringel_dual(&delta_e).unwrap(), nabla(w0));
    let p = kg.class_in(BasisTag::Projective, s1, BasisTag::Verma).unwrap();
    let tilt = kg.class_in(BasisTag::Tilting, g.mul(w0, s1), BasisTag::DualVerma).unwrap();
    assert_eq!(kg.ringel_dual(&p).unwrap(), tilt);
    assert!(matches!(kg.ringel_dual(&nabla(e)), Err(Error::WrongBasis { .. })));
}

#[test]
fn functor_values() {
    let cache = kl("A2");
    let f = Functors::new(&cache);
    let g = cache.group();
    let (e, s1, s2, w0) = (Element::IDENTITY, g.generator(1), g.generator(2), g.longest());
    let nabla = |x| CharacterVector::basis_vector(g, BasisTag::DualVerma, x);

    // T_s on ∇(x): down steps are plain, up steps pick up v^-1 - v
    let down = f.apply_derived_twist(&nabla(s1), s1).unwrap();
    assert_eq!(down, nabla(e));
    let up = f.apply_derived_twist(&nabla(e), s1).unwrap();
    let mut expect = nabla(s1);
    expect.add_scaled(&nabla(e), &LaurentPoly::quadratic_coeff()).unwrap();
    assert_eq!(up, expect);
    assert_eq!(f.apply_derived_shuffle(&nabla(g.mul(s2, s1)), s1).unwrap(), nabla(s2));

    let ts = f.ts_simple(1, w0).unwrap();
    assert_eq!(ts.character.display(g), "v^-1\u{b7}[L(121)] + [L(21)]");
    assert_eq!(ts.head, (w0, -1));
    assert!(matches!(f.ts_simple(1, e), Err(Error::SFinite { .. })));
    assert!(matches!(f.cs_simple(1, g.mul(s1, s2)), Err(Error::NotRightDescent { .. })));

    let simple = |x| CharacterVector::basis_vector(g, BasisTag::Simple, x);
    assert_eq!(f.zuckerman_l2_simple(1, e).unwrap(), simple(e).shift(1));
    assert!(f.zuckerman_l2_simple(1, s1).unwrap().is_zero());
    assert!(f.zuckerman_l1_simple(1, e).unwrap().is_zero());
    assert_eq!(f.zuckerman_l1_simple(1, w0).unwrap(), simple(g.mul(s2, s1)).shift(1));
    assert_eq!(f.zuckerman_l1_simple(1, g.mul(s1, s2)).unwrap(), simple(s2).shift(1));

    let mut input = simple(w0);
    input.add_term(s2, &v(1)).unwrap();
    let mut expect = f.ts_simple(1, w0).unwrap().character;
    expect.add_term(s2, &LaurentPoly::monomial(-1, 2)).unwrap();
    assert_eq!(f.ts_general(1, &input).unwrap(), expect);

    let vt = f.twist_verma(1, e).unwrap();
    assert_eq!(vt.of_x, CharacterVector::basis_vector(g, BasisTag::Verma, s1));
    assert_eq!(vt.of_sx.display(g), "(v^-1 - v)\u{b7}[\u{394}(1)] + [\u{394}(e)]");

    let delta_e = CharacterVector::basis_vector(g, BasisTag::Verma, e);
    assert_eq!(f.apply_theta(&delta_e, s1).unwrap().display(g), "[\u{394}(1)] + v\u{b7}[\u{394}(e)]");
}
