use std::sync::{Arc, OnceLock};

use heckecat_core::{BasisTag, CharacterVector, CoxeterGroup, Element, HeckeElement, KGroup, KLCache, LaurentPoly};
use proptest::prelude::*;

fn b2() -> &'static KLCache {
    static CACHE: OnceLock<KLCache> = OnceLock::new();
    CACHE.get_or_init(|| KLCache::new(Arc::new(CoxeterGroup::build("B2".parse().unwrap()).unwrap())).unwrap())
}

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i32..=4, -5i64..=5), 0..4).prop_map(LaurentPoly::from_terms)
}

fn hecke() -> impl Strategy<Value = HeckeElement> {
    prop::collection::vec((0usize..8, poly()), 0..4).prop_map(|terms| {
        let g = b2().group();
        HeckeElement::from_terms(g, terms.into_iter().map(|(i, c)| (Element::from_index(i), c))).unwrap()
    })
}

fn basis() -> impl Strategy<Value = BasisTag> {
    prop::sample::select(BasisTag::ALL.to_vec())
}

fn class() -> impl Strategy<Value = CharacterVector> {
    (basis(), prop::collection::vec((0usize..8, poly()), 0..3)).prop_map(|(b, terms)| {
        let g = b2().group();
        CharacterVector::from_terms(g, b, terms.into_iter().map(|(i, c)| (Element::from_index(i), c))).unwrap()
    })
}

proptest! {
    #[test]
    fn laurent_ring_laws(a in poly(), b in poly(), c in poly()) {
        let ab = a.checked_mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.checked_mul(&a).unwrap());
        prop_assert_eq!(ab.checked_mul(&c).unwrap(), a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap());
        let distributed = ab.checked_add(&a.checked_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(a.checked_mul(&b.checked_add(&c).unwrap()).unwrap(), distributed);
        prop_assert_eq!(ab.bar(), a.bar().checked_mul(&b.bar()).unwrap());
        prop_assert!(a.checked_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn laurent_text_round_trip(a in poly()) {
        prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
    }

    #[test]
    fn bar_is_a_ring_involution(a in hecke(), b in hecke()) {
        let kl = b2();
        let g = kl.group();
        prop_assert_eq!(&kl.bar(&kl.bar(&a).unwrap()).unwrap(), &a);
        let ab = a.mul(&b, g).unwrap();
        prop_assert_eq!(kl.bar(&ab).unwrap(), kl.bar(&a).unwrap().mul(&kl.bar(&b).unwrap(), g).unwrap());
        prop_assert_eq!(kl.bar(&a).unwrap(), a.bar(g).unwrap());
    }

    #[test]
    fn hecke_multiplication_is_associative(a in hecke(), b in hecke(), c in hecke()) {
        let g = b2().group();
        let left = a.mul(&b, g).unwrap().mul(&c, g).unwrap();
        prop_assert_eq!(left, a.mul(&b.mul(&c, g).unwrap(), g).unwrap());
    }

    #[test]
    fn star_reverses_products(a in hecke(), b in hecke()) {
        let g = b2().group();
        let lhs = a.mul(&b, g).unwrap().star(g);
        prop_assert_eq!(lhs, b.star(g).mul(&a.star(g), g).unwrap());
    }

    #[test]
    fn basis_changes_round_trip(v in class(), target in basis()) {
        let kg = KGroup::new(b2());
        let moved = kg.change_basis(&v, target).unwrap();
        prop_assert_eq!(moved.basis(), target);
        prop_assert_eq!(kg.change_basis(&moved, v.basis()).unwrap(), v);
    }
}
