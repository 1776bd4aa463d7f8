//! Finite Weyl groups: enumeration, multiplication tables, lengths,
//! descents and Bruhat order.
//!
//! Elements are discovered by breadth-first search on the integer
//! reflection representation on simple-root coordinates. Once every element
//! is known the matrices are dropped and only dense generator tables remain.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

/// Default refusal threshold for [`CoxeterGroup::build`].
pub const DEFAULT_ELEMENT_CAP: usize = 50_000;

/// Groups up to this order get an eagerly filled Bruhat bitset.
const BRUHAT_TABLE_LIMIT: usize = 8192;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A finite crystallographic Cartan type such as `A3` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanType {
    family: Family,
    rank: u8,
}

impl CartanType {
    pub fn new(family: Family, rank: u8) -> Result<Self> {
        let ok = match family {
            Family::A => (1..=9).contains(&rank),
            Family::B | Family::C => (2..=9).contains(&rank),
            Family::D => (4..=9).contains(&rank),
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok {
            Ok(Self { family, rank })
        } else {
            Err(Error::UnsupportedType(alloc::format!("{family:?}{rank}")))
        }
    }

    pub fn family(self) -> Family {
        self.family
    }

    pub fn rank(self) -> usize {
        self.rank as usize
    }

    /// `|W|` from the classical formulas.
    pub fn order(self) -> u64 {
        let n = self.rank as u64;
        let fact = |k: u64| (1..=k).product::<u64>();
        match self.family {
            Family::A => fact(n + 1),
            Family::B | Family::C => (1u64 << n) * fact(n),
            Family::D => (1u64 << (n - 1)) * fact(n),
            Family::E => match n {
                6 => 51_840,
                7 => 2_903_040,
                _ => 696_729_600,
            },
            Family::F => 1152,
            Family::G => 12,
        }
    }

    /// Number of positive roots, which is also `l(w0)`.
    pub fn positive_roots(self) -> usize {
        let n = self.rank as usize;
        match self.family {
            Family::A => n * (n + 1) / 2,
            Family::B | Family::C => n * n,
            Family::D => n * (n - 1),
            Family::E => match n {
                6 => 36,
                7 => 63,
                _ => 120,
            },
            Family::F => 24,
            Family::G => 6,
        }
    }

    /// Cartan matrix entries `a[i][j] = <alpha_i^vee, alpha_j>`, row-major.
    pub fn cartan_matrix(self) -> Vec<i32> {
        let n = self.rank as usize;
        let mut a = vec![0i32; n * n];
        for i in 0..n {
            a[i * n + i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i32, aji: i32| {
            a[i * n + j] = aij;
            a[j * n + i] = aji;
        };
        match self.family {
            Family::A => (0..n - 1).for_each(|i| link(i, i + 1, -1, -1)),
            Family::B | Family::C => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 2, n - 1, -2, -1);
            }
            Family::D => {
                (0..n - 2).for_each(|i| link(i, i + 1, -1, -1));
                link(n - 3, n - 1, -1, -1);
            }
            Family::E => {
                // Bourbaki labelling: 1-3-4-5-..., 2 attached to 4.
                link(0, 2, -1, -1);
                link(1, 3, -1, -1);
                (2..n - 1).for_each(|i| link(i, i + 1, -1, -1));
            }
            Family::F => {
                link(0, 1, -1, -1);
                link(1, 2, -2, -1);
                link(2, 3, -1, -1);
            }
            Family::G => link(0, 1, -1, -3),
        }
        a
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::UnsupportedType(String::from(s));
        let mut chars = t.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: u8 = chars.as_str().parse().map_err(|_| bad())?;
        Self::new(family, rank).map_err(|_| bad())
    }
}

/// Index of an element in its group's table. The identity is always `0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(u32);

impl Element {
    pub const IDENTITY: Element = Element(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Self {
        Element(i as u32)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A finite Weyl group with its full element table.
///
/// Immutable after construction, so it can be shared freely between threads.
#[derive(Clone)]
pub struct CoxeterGroup {
    cartan: CartanType,
    rank: usize,
    words: Vec<Vec<u8>>,
    lengths: Vec<u16>,
    right: Vec<u32>,
    left: Vec<u32>,
    inverses: Vec<u32>,
    longest: Element,
    braid: Vec<u8>,
    bruhat: Option<Vec<u64>>,
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoxeterGroup")
            .field("cartan", &self.cartan)
            .field("order", &self.order())
            .finish()
    }
}

fn mat_mul(a: &[i32], b: &[i32], n: usize) -> Vec<i32> {
    let mut out = vec![0i32; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

impl CoxeterGroup {
    pub fn build(cartan: CartanType) -> Result<Self> {
        Self::build_with_cap(cartan, DEFAULT_ELEMENT_CAP)
    }

    pub fn build_with_cap(cartan: CartanType, cap: usize) -> Result<Self> {
        let order = cartan.order();
        if order > cap as u64 {
            return Err(Error::GroupTooLarge { order, cap });
        }
        let n = cartan.rank();
        let a = cartan.cartan_matrix();

        // s_i(alpha_j) = alpha_j - a_ij alpha_i; column j holds the image of alpha_j.
        let gens: Vec<Vec<i32>> = (0..n)
            .map(|i| {
                let mut m = vec![0i32; n * n];
                for j in 0..n {
                    m[j * n + j] = 1;
                    m[i * n + j] -= a[i * n + j];
                }
                m
            })
            .collect();

        let mut identity = vec![0i32; n * n];
        for i in 0..n {
            identity[i * n + i] = 1;
        }

        let mut index: BTreeMap<Vec<i32>, u32> = BTreeMap::new();
        let mut mats: Vec<Vec<i32>> = vec![identity.clone()];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        index.insert(identity, 0);

        // Parents are visited in ShortLex order and generators ascending, so
        // the first word that reaches an element is its ShortLex-least one.
        let mut head = 0;
        while head < mats.len() {
            for (i, gen) in gens.iter().enumerate() {
                let m = mat_mul(&mats[head], gen, n);
                if !index.contains_key(&m) {
                    let id = mats.len() as u32;
                    if mats.len() >= cap {
                        return Err(Error::GroupTooLarge { order, cap });
                    }
                    let mut w = words[head].clone();
                    w.push(i as u8 + 1);
                    index.insert(m.clone(), id);
                    mats.push(m);
                    words.push(w);
                }
            }
            head += 1;
        }
        if mats.len() as u64 != order {
            return Err(Error::Inconsistency(alloc::format!(
                "enumerated {} elements for {cartan}, expected {order}",
                mats.len()
            )));
        }

        let size = mats.len();
        let mut right = vec![0u32; size * n];
        let mut left = vec![0u32; size * n];
        for (w, m) in mats.iter().enumerate() {
            for i in 0..n {
                right[w * n + i] = index[&mat_mul(m, &gens[i], n)];
                left[w * n + i] = index[&mat_mul(&gens[i], m, n)];
            }
        }
        drop(index);
        drop(mats);

        let lengths: Vec<u16> = words.iter().map(|w| w.len() as u16).collect();
        let inverses: Vec<u32> = words
            .iter()
            .map(|w| {
                w.iter().rev().fold(0u32, |acc, &s| right[acc as usize * n + (s as usize - 1)])
            })
            .collect();
        let longest = Element((size - 1) as u32);

        let mut braid = vec![1u8; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    braid[i * n + j] = match a[i * n + j] * a[j * n + i] {
                        0 => 2,
                        1 => 3,
                        2 => 4,
                        _ => 6,
                    };
                }
            }
        }

        let mut g = CoxeterGroup {
            cartan,
            rank: n,
            words,
            lengths,
            right,
            left,
            inverses,
            longest,
            braid,
            bruhat: None,
        };
        if size <= BRUHAT_TABLE_LIMIT {
            g.bruhat = Some(g.fill_bruhat());
        }
        Ok(g)
    }

    fn fill_bruhat(&self) -> Vec<u64> {
        let size = self.order();
        let stride = size.div_ceil(64);
        let mut bits = vec![0u64; size * stride];
        bits[0] = 1;
        for b in 1..size {
            let be = Element(b as u32);
            let s = self.first_left_descent(be).expect("non-identity has a descent");
            let sb = self.left_mul_gen(s, be).index();
            for a in 0..size {
                let ae = Element(a as u32);
                let sa = self.left_mul_gen(s, ae);
                let m = if self.length(sa) < self.length(ae) { sa } else { ae };
                if bits[sb * stride + m.index() / 64] >> (m.index() % 64) & 1 == 1 {
                    bits[b * stride + a / 64] |= 1 << (a % 64);
                }
            }
        }
        bits
    }

    pub fn cartan(&self) -> CartanType {
        self.cartan
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> usize {
        self.words.len()
    }

    /// All elements in length-then-ShortLex order.
    pub fn elements(&self) -> impl DoubleEndedIterator<Item = Element> + ExactSizeIterator {
        (0..self.words.len() as u32).map(Element)
    }

    /// Generator indices `1..=rank`.
    pub fn generators(&self) -> core::ops::RangeInclusive<usize> {
        1..=self.rank
    }

    pub fn identity(&self) -> Element {
        Element::IDENTITY
    }

    pub fn longest(&self) -> Element {
        self.longest
    }

    pub fn contains(&self, w: Element) -> bool {
        w.index() < self.order()
    }

    fn check_gen(&self, s: usize) -> Result<usize> {
        if (1..=self.rank).contains(&s) {
            Ok(s - 1)
        } else {
            Err(Error::BadGeneratorIndex { index: s, rank: self.rank })
        }
    }

    /// The simple reflection `s_i` as an element.
    pub fn generator(&self, s: usize) -> Element {
        self.right_mul_gen(Element::IDENTITY, s)
    }

    /// `w s`. Panics if `s` is not in `1..=rank`.
    pub fn right_mul_gen(&self, w: Element, s: usize) -> Element {
        Element(self.right[w.index() * self.rank + (s - 1)])
    }

    /// `s w`. Panics if `s` is not in `1..=rank`.
    pub fn left_mul_gen(&self, s: usize, w: Element) -> Element {
        Element(self.left[w.index() * self.rank + (s - 1)])
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.word(b).iter().fold(a, |acc, &s| self.right_mul_gen(acc, s as usize))
    }

    pub fn inverse(&self, w: Element) -> Element {
        Element(self.inverses[w.index()])
    }

    pub fn length(&self, w: Element) -> usize {
        self.lengths[w.index()] as usize
    }

    /// Canonical (ShortLex-least) reduced word, generators numbered from 1.
    pub fn word(&self, w: Element) -> &[u8] {
        &self.words[w.index()]
    }

    pub fn from_word(&self, word: &[usize]) -> Result<Element> {
        let mut w = Element::IDENTITY;
        for &s in word {
            self.check_gen(s)?;
            w = self.right_mul_gen(w, s);
        }
        Ok(w)
    }

    /// `m(s, t)`, the order of `st`.
    pub fn braid_order(&self, s: usize, t: usize) -> usize {
        self.braid[(s - 1) * self.rank + (t - 1)] as usize
    }

    pub fn is_right_descent(&self, w: Element, s: usize) -> bool {
        self.length(self.right_mul_gen(w, s)) < self.length(w)
    }

    pub fn is_left_descent(&self, s: usize, w: Element) -> bool {
        self.length(self.left_mul_gen(s, w)) < self.length(w)
    }

    fn first_left_descent(&self, w: Element) -> Option<usize> {
        self.generators().find(|&s| self.is_left_descent(s, w))
    }

    pub fn descents(&self, w: Element, side: Side) -> Vec<usize> {
        self.generators()
            .filter(|&s| match side {
                Side::Left => self.is_left_descent(s, w),
                Side::Right => self.is_right_descent(w, s),
            })
            .collect()
    }

    /// Bruhat order `a <= b`.
    pub fn bruhat_leq(&self, a: Element, b: Element) -> bool {
        if let Some(bits) = &self.bruhat {
            let stride = self.order().div_ceil(64);
            return bits[b.index() * stride + a.index() / 64] >> (a.index() % 64) & 1 == 1;
        }
        // For a left descent s of b: a <= b iff min(a, sa) <= sb.
        let (mut a, mut b) = (a, b);
        loop {
            if self.length(a) > self.length(b) {
                return false;
            }
            if a == b {
                return true;
            }
            let s = self.first_left_descent(b).expect("b is not the identity here");
            let sa = self.left_mul_gen(s, a);
            if self.length(sa) < self.length(a) {
                a = sa;
            }
            b = self.left_mul_gen(s, b);
        }
    }

    pub fn bruhat_lt(&self, a: Element, b: Element) -> bool {
        a != b && self.bruhat_leq(a, b)
    }

    pub fn is_involution(&self, w: Element) -> bool {
        self.inverse(w) == w
    }

    /// Renders an element as its generator word, `e` for the identity.
    pub fn display(&self, w: Element) -> String {
        let word = self.word(w);
        if word.is_empty() {
            return String::from("e");
        }
        word.iter().map(|s| s.to_string()).collect()
    }

    /// Parses `e`, `w0`, or a generator-index word such as `121`.
    pub fn parse_element(&self, s: &str) -> Result<Element> {
        let t = s.trim();
        match t {
            "e" | "" => return Ok(Element::IDENTITY),
            "w0" | "W0" => return Ok(self.longest),
            _ => {}
        }
        let digits: Option<Vec<usize>> = t.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect();
        let digits = digits.ok_or_else(|| Error::BadElement(String::from(s)))?;
        self.from_word(&digits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> CoxeterGroup {
        CoxeterGroup::build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(group("A1").order(), 2);
        assert_eq!(group("A2").order(), 6);
        assert_eq!(group("B2").order(), 8);
        assert_eq!(group("c2").order(), 8);
        assert_eq!(group("G2").order(), 12);
        assert_eq!(group("A3").order(), 24);
        assert_eq!(group("B3").order(), 48);
        assert_eq!(group("D4").order(), 192);
        assert_eq!(group("F4").order(), 1152);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("Z9".parse::<CartanType>(), Err(Error::UnsupportedType(_))));
        assert!(matches!("H3".parse::<CartanType>(), Err(Error::UnsupportedType(_))));
        assert!(matches!("B1".parse::<CartanType>(), Err(Error::UnsupportedType(_))));
        assert!(matches!("A".parse::<CartanType>(), Err(Error::UnsupportedType(_))));
        assert!(matches!(
            CoxeterGroup::build("E6".parse().unwrap()),
            Err(Error::GroupTooLarge { order: 51_840, cap: 50_000 })
        ));
        assert!(matches!(
            CoxeterGroup::build_with_cap("A3".parse().unwrap(), 10),
            Err(Error::GroupTooLarge { .. })
        ));
    }

    #[test]
    fn a2_products() {
        let g = group("A2");
        let s1 = g.generator(1);
        let s2 = g.generator(2);
        assert_eq!(g.mul(s1, s1), Element::IDENTITY);
        assert_eq!(g.word(g.mul(s1, s2)), &[1, 2]);
        let a = g.from_word(&[1, 2, 1]).unwrap();
        let b = g.from_word(&[2, 1, 2]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, g.longest());
        assert_eq!(g.mul(a, b), Element::IDENTITY);
        assert_eq!(g.word(g.longest()), &[1, 2, 1]);
        assert_eq!(g.from_word(&[]).unwrap(), Element::IDENTITY);
        assert_eq!(g.from_word(&[3]), Err(Error::BadGeneratorIndex { index: 3, rank: 2 }));
    }

    #[test]
    fn inverses_and_lengths() {
        let g = group("A2");
        let s12 = g.from_word(&[1, 2]).unwrap();
        assert_eq!(g.word(g.inverse(s12)), &[2, 1]);
        assert_eq!(g.length(g.longest()), 3);
        assert_eq!(group("B2").length(group("B2").longest()), 4);
        assert_eq!(group("G2").length(group("G2").longest()), 6);
    }

    #[test]
    fn descent_sets() {
        let g = group("A2");
        assert!(g.descents(Element::IDENTITY, Side::Left).is_empty());
        let s12 = g.from_word(&[1, 2]).unwrap();
        assert_eq!(g.descents(s12, Side::Left), vec![1]);
        assert_eq!(g.descents(s12, Side::Right), vec![2]);
        assert_eq!(g.descents(g.longest(), Side::Right), vec![1, 2]);
    }

    #[test]
    fn bruhat_examples() {
        let g = group("A2");
        let s1 = g.generator(1);
        let s2 = g.generator(2);
        let s21 = g.from_word(&[2, 1]).unwrap();
        assert!(g.elements().all(|w| g.bruhat_leq(Element::IDENTITY, w)));
        assert!(g.bruhat_leq(s1, s21));
        assert!(!g.bruhat_leq(s1, s2));
    }

    #[test]
    fn bruhat_chain_matches_table() {
        let mut g = group("B3");
        let table: Vec<bool> = g
            .elements()
            .flat_map(|a| g.elements().map(move |b| (a, b)))
            .map(|(a, b)| g.bruhat_leq(a, b))
            .collect();
        g.bruhat = None;
        let chain: Vec<bool> = g
            .elements()
            .flat_map(|a| g.elements().map(move |b| (a, b)))
            .map(|(a, b)| g.bruhat_leq(a, b))
            .collect();
        assert_eq!(table, chain);
    }

    #[test]
    fn rendering_and_parsing() {
        let g = group("A2");
        assert_eq!(g.display(Element::IDENTITY), "e");
        assert_eq!(g.display(g.longest()), "121");
        assert_eq!(g.parse_element("212").unwrap(), g.longest());
        assert_eq!(g.parse_element("w0").unwrap(), g.longest());
        assert_eq!(g.parse_element("e").unwrap(), Element::IDENTITY);
        assert!(matches!(g.parse_element("1x"), Err(Error::BadElement(_))));
    }

    #[test]
    fn braid_orders() {
        assert_eq!(group("A3").braid_order(1, 2), 3);
        assert_eq!(group("A3").braid_order(1, 3), 2);
        assert_eq!(group("B2").braid_order(1, 2), 4);
        assert_eq!(group("G2").braid_order(2, 1), 6);
    }
}
