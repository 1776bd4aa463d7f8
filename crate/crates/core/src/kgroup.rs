//! The graded Grothendieck group of the principal block as a free
//! `Z[v, v^-1]`-module, its six standard bases, and the maps to and from the
//! Hecke algebra.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use once_cell::race::OnceBox;

use crate::coxeter::{CartanType, CoxeterGroup, Element};
use crate::error::{Error, Result};
use crate::hecke::{HeckeElement, KLCache};
use crate::laurent::{render_combination, LaurentPoly, QSubst};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisTag {
    /// Verma classes `[Δ(x)]`.
    Verma,
    /// Dual Verma classes `[∇(x)]`.
    DualVerma,
    /// Simple classes `[L(x)]`.
    Simple,
    /// Indecomposable projectives `[P(x)]`.
    Projective,
    /// Indecomposable tiltings `[T(x)]`.
    Tilting,
    /// Indecomposable injectives `[I(x)]`.
    Injective,
}

impl BasisTag {
    pub const ALL: [BasisTag; 6] = [
        BasisTag::Verma,
        BasisTag::DualVerma,
        BasisTag::Simple,
        BasisTag::Projective,
        BasisTag::Tilting,
        BasisTag::Injective,
    ];

    /// Name used in JSON output.
    pub fn name(self) -> &'static str {
        match self {
            BasisTag::Verma => "Delta",
            BasisTag::DualVerma => "Nabla",
            BasisTag::Simple => "L",
            BasisTag::Projective => "P",
            BasisTag::Tilting => "T",
            BasisTag::Injective => "I",
        }
    }

    /// Symbol used in text output.
    pub fn symbol(self) -> &'static str {
        match self {
            BasisTag::Verma => "\u{394}",
            BasisTag::DualVerma => "\u{2207}",
            BasisTag::Simple => "L",
            BasisTag::Projective => "P",
            BasisTag::Tilting => "T",
            BasisTag::Injective => "I",
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for BasisTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "Delta" | "delta" | "Verma" | "verma" | "\u{394}" => BasisTag::Verma,
            "Nabla" | "nabla" | "DualVerma" | "dualverma" | "\u{2207}" => BasisTag::DualVerma,
            "L" | "l" | "Simple" | "simple" => BasisTag::Simple,
            "P" | "p" | "Projective" | "projective" => BasisTag::Projective,
            "T" | "t" | "Tilting" | "tilting" => BasisTag::Tilting,
            "I" | "i" | "Injective" | "injective" => BasisTag::Injective,
            other => return Err(Error::BadElement(alloc::format!("unknown basis {other}"))),
        })
    }
}

/// A class in the Grothendieck group, written in one of the six bases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CharacterVector {
    cartan: CartanType,
    basis: BasisTag,
    coords: BTreeMap<Element, LaurentPoly>,
}

impl fmt::Debug for CharacterVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.basis.name())?;
        f.debug_map()
            .entries(self.coords.iter().map(|(w, c)| (w.index(), c)))
            .finish()
    }
}

impl CharacterVector {
    pub fn zero(g: &CoxeterGroup, basis: BasisTag) -> Self {
        Self { cartan: g.cartan(), basis, coords: BTreeMap::new() }
    }

    /// The class of a single basis module, e.g. `[L(x)]`.
    pub fn basis_vector(g: &CoxeterGroup, basis: BasisTag, x: Element) -> Self {
        Self::monomial(g, basis, x, LaurentPoly::one())
    }

    pub fn monomial(g: &CoxeterGroup, basis: BasisTag, x: Element, c: LaurentPoly) -> Self {
        let mut out = Self::zero(g, basis);
        if !c.is_zero() {
            out.coords.insert(x, c);
        }
        out
    }

    pub fn from_terms<I>(g: &CoxeterGroup, basis: BasisTag, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Element, LaurentPoly)>,
    {
        let mut out = Self::zero(g, basis);
        for (w, c) in terms {
            if !g.contains(w) {
                return Err(Error::BadElement(alloc::format!("index {}", w.index())));
            }
            out.add_term(w, &c)?;
        }
        Ok(out)
    }

    pub fn cartan(&self) -> CartanType {
        self.cartan
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coeff(&self, w: Element) -> LaurentPoly {
        self.coords.get(&w).cloned().unwrap_or_default()
    }

    /// Terms in increasing element index.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Element, &LaurentPoly)> {
        self.coords.iter().map(|(w, c)| (*w, c))
    }

    pub fn add_term(&mut self, w: Element, c: &LaurentPoly) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let slot = self.coords.entry(w).or_default();
        slot.add_assign_checked(c)?;
        if slot.is_zero() {
            self.coords.remove(&w);
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.cartan != other.cartan {
            return Err(Error::GroupMismatch(self.cartan.to_string(), other.cartan.to_string()));
        }
        if self.basis != other.basis {
            return Err(Error::WrongBasis { expected: self.basis.name(), found: other.basis.name() });
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &Self, c: &LaurentPoly) -> Result<()> {
        self.check_compatible(other)?;
        for (w, d) in other.terms() {
            self.add_term(w, &c.checked_mul(d)?)?;
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &LaurentPoly::one())?;
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        out.add_scaled(other, &LaurentPoly::constant(-1))?;
        Ok(out)
    }

    pub fn scale(&self, c: &LaurentPoly) -> Result<Self> {
        let mut out = Self { cartan: self.cartan, basis: self.basis, coords: BTreeMap::new() };
        for (w, d) in self.terms() {
            out.add_term(w, &c.checked_mul(d)?)?;
        }
        Ok(out)
    }

    /// Grading shift `⟨k⟩`, which multiplies every coordinate by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        let coords = self.coords.iter().map(|(w, c)| (*w, c.shift(k))).collect();
        Self { cartan: self.cartan, basis: self.basis, coords }
    }

    /// Same coordinates relabelled as another basis.
    pub fn relabel(&self, basis: BasisTag) -> Self {
        Self { cartan: self.cartan, basis, coords: self.coords.clone() }
    }

    pub fn require_basis(&self, basis: BasisTag) -> Result<()> {
        if self.basis == basis {
            Ok(())
        } else {
            Err(Error::WrongBasis { expected: basis.name(), found: self.basis.name() })
        }
    }

    /// Every coordinate lies in `N[v, v^-1]`.
    pub fn is_nonnegative(&self) -> bool {
        self.coords.values().all(LaurentPoly::is_nonnegative)
    }

    /// Coordinates at `v = 1`.
    pub fn eval_at_one(&self) -> Result<BTreeMap<Element, i64>> {
        let mut out = BTreeMap::new();
        for (w, c) in self.terms() {
            let n = c.eval_at_one()?;
            if n != 0 {
                out.insert(w, n);
            }
        }
        Ok(out)
    }

    /// Text form such as `v^-1·[∇(121)] + [∇(12)]`, longest elements first.
    pub fn display(&self, g: &CoxeterGroup) -> String {
        let sym = self.basis.symbol();
        render_combination(
            self.coords
                .iter()
                .rev()
                .map(|(w, c)| (c, alloc::format!("[{sym}({})]", g.display(*w)))),
        )
    }
}

/// The four isomorphisms between the Grothendieck group and the Hecke algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Transport {
    /// `H_w -> [Δ(w)]`.
    Phi,
    /// `H_w -> [∇(w0 w)]`.
    Psi,
    /// `[∇(x)] -> H_{w0 x^-1}`, intertwining derived twisting.
    RhoTwist,
    /// `[∇(x)] -> H_{w0 x}`, intertwining derived shuffling.
    RhoShuffle,
}

impl FromStr for Transport {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "phi" => Transport::Phi,
            "psi" => Transport::Psi,
            "rho" | "rho_twist" => Transport::RhoTwist,
            "rho'" | "rho_shuffle" => Transport::RhoShuffle,
            other => return Err(Error::BadElement(alloc::format!("unknown map {other}"))),
        })
    }
}

/// Expansion of each basis vector in a parent basis, unitriangular for the
/// Bruhat order.
struct Transition {
    parent: BasisTag,
    /// Support of column `x` lies in `{y >= x}` if true, `{y <= x}` otherwise.
    upward: bool,
    columns: Vec<CharacterVector>,
}

/// Basis-change machinery for one group, caching each transition on first use.
pub struct KGroup<'a> {
    kl: &'a KLCache,
    transitions: [OnceBox<Transition>; 6],
}

impl fmt::Debug for KGroup<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KGroup").field("cartan", &self.kl.group().cartan()).finish()
    }
}

impl<'a> KGroup<'a> {
    pub fn new(kl: &'a KLCache) -> Self {
        Self { kl, transitions: Default::default() }
    }

    pub fn kl(&self) -> &'a KLCache {
        self.kl
    }

    pub fn group(&self) -> &'a CoxeterGroup {
        self.kl.group()
    }

    fn check_vec(&self, vec: &CharacterVector) -> Result<()> {
        let c = self.group().cartan();
        if vec.cartan() != c {
            return Err(Error::GroupMismatch(c.to_string(), vec.cartan().to_string()));
        }
        Ok(())
    }

    /// `[Δ(x)]` in the ∇-basis, read off `H_{(w0 x)^-1}^{-1}`.
    pub fn verma_in_nabla(&self, x: Element) -> Result<CharacterVector> {
        let g = self.group();
        let w0 = g.longest();
        let inv = self.kl.inv_std(g.inverse(g.mul(w0, x)))?;
        let mut out = CharacterVector::zero(g, BasisTag::DualVerma);
        for (z, c) in inv.terms() {
            out.add_term(g.mul(w0, z), c)?;
        }
        Ok(out)
    }

    /// The coefficient `r_{y,x}` of `[∇(y)]` in `[Δ(x)]`.
    pub fn r_coefficient(&self, y: Element, x: Element) -> Result<LaurentPoly> {
        let g = self.group();
        let w0 = g.longest();
        Ok(self.kl.inv_std(g.inverse(g.mul(w0, x)))?.coeff(g.mul(w0, y)))
    }

    /// `[L(x)]` in the ∇-basis, from `P_{w0 y, w0 x}(v^2)`.
    fn simple_in_nabla(&self, x: Element) -> Result<CharacterVector> {
        let g = self.group();
        let w0 = g.longest();
        let top = g.mul(w0, x);
        let mut out = CharacterVector::zero(g, BasisTag::DualVerma);
        for (z, p) in self.kl.kl_column(top) {
            let y = g.mul(w0, z);
            let d = g.length(y) - g.length(x);
            let mut c = p.subst_q(QSubst::VSquared)?.shift(-(d as i32));
            if d % 2 == 1 {
                c = c.checked_neg()?;
            }
            out.add_term(y, &c)?;
        }
        Ok(out)
    }

    /// `[Δ(x)]` in the L-basis, from graded Verma multiplicities.
    pub fn verma_in_simple(&self, x: Element) -> Result<CharacterVector> {
        let g = self.group();
        let mut out = CharacterVector::zero(g, BasisTag::Simple);
        for z in g.elements() {
            let p = self.kl.kl_poly(x, z);
            if !p.is_zero() {
                let d = g.length(z) - g.length(x);
                out.add_term(z, &p.subst_q(QSubst::VInverseSquared)?.shift(d as i32))?;
            }
        }
        Ok(out)
    }

    fn build(&self, basis: BasisTag) -> Result<Transition> {
        let g = self.group();
        let w0 = g.longest();
        let mut columns = Vec::with_capacity(g.order());
        let (parent, upward) = match basis {
            BasisTag::DualVerma => (BasisTag::DualVerma, true),
            BasisTag::Verma | BasisTag::Simple | BasisTag::Tilting => (BasisTag::DualVerma, true),
            BasisTag::Projective => (BasisTag::Verma, false),
            BasisTag::Injective => (BasisTag::DualVerma, false),
        };
        for x in g.elements() {
            let col = match basis {
                BasisTag::DualVerma => CharacterVector::basis_vector(g, parent, x),
                BasisTag::Verma => self.verma_in_nabla(x)?,
                BasisTag::Simple => self.simple_in_nabla(x)?,
                BasisTag::Projective => self.from_hecke(Transport::Phi, self.kl.kl_basis(x))?,
                BasisTag::Tilting => {
                    self.from_hecke(Transport::Psi, self.kl.kl_basis(g.mul(w0, x)))?
                }
                BasisTag::Injective => self.from_hecke(
                    Transport::Psi,
                    self.kl.dual_twisted_kl_basis(g.mul(w0, x))?,
                )?,
            };
            let violation = || Error::TriangularityViolation { basis: basis.name(), element: g.display(x) };
            if !col.coeff(x).is_one() {
                return Err(violation());
            }
            for (y, _) in col.terms() {
                let ok = if upward { g.bruhat_leq(x, y) } else { g.bruhat_leq(y, x) };
                if !ok {
                    return Err(violation());
                }
            }
            columns.push(col);
        }
        Ok(Transition { parent, upward, columns })
    }

    fn transition(&self, basis: BasisTag) -> Result<&Transition> {
        self.transitions[basis.slot()].get_or_try_init(|| self.build(basis).map(Box::new))
    }

    /// Expresses `vec` in the parent basis of its own basis.
    fn to_parent(&self, vec: &CharacterVector) -> Result<CharacterVector> {
        let t = self.transition(vec.basis())?;
        let mut out = CharacterVector::zero(self.group(), t.parent);
        for (x, c) in vec.terms() {
            out.add_scaled(&t.columns[x.index()], c)?;
        }
        Ok(out)
    }

    /// Solves `vec = sum c_x B(x)` with `vec` given in the parent basis of `B`.
    fn solve_in_parent(&self, vec: &CharacterVector, basis: BasisTag) -> Result<CharacterVector> {
        let t = self.transition(basis)?;
        vec.require_basis(t.parent)?;
        let g = self.group();
        let mut rest = vec.clone();
        let mut out = CharacterVector::zero(g, basis);
        // Length order extends Bruhat order, so the extreme remaining index is always pivotal.
        loop {
            let next = if t.upward { rest.terms().next() } else { rest.terms().next_back() };
            let Some((x, c)) = next else { break };
            let c = c.clone();
            rest.add_scaled(&t.columns[x.index()], &c.checked_neg()?)?;
            out.add_term(x, &c)?;
        }
        Ok(out)
    }

    fn chain(basis: BasisTag) -> &'static [BasisTag] {
        match basis {
            BasisTag::DualVerma => &[],
            BasisTag::Verma => &[BasisTag::Verma],
            BasisTag::Simple => &[BasisTag::Simple],
            BasisTag::Projective => &[BasisTag::Verma, BasisTag::Projective],
            BasisTag::Tilting => &[BasisTag::Tilting],
            BasisTag::Injective => &[BasisTag::Injective],
        }
    }

    /// Exact change of basis.
    pub fn change_basis(&self, vec: &CharacterVector, target: BasisTag) -> Result<CharacterVector> {
        self.check_vec(vec)?;
        if vec.basis() == target {
            return Ok(vec.clone());
        }
        let mut cur = vec.clone();
        while cur.basis() != BasisTag::DualVerma {
            cur = self.to_parent(&cur)?;
        }
        for &b in Self::chain(target) {
            cur = self.solve_in_parent(&cur, b)?;
        }
        Ok(cur)
    }

    /// The class of the basis module `B(x)` written in `target`.
    pub fn class_in(&self, basis: BasisTag, x: Element, target: BasisTag) -> Result<CharacterVector> {
        self.change_basis(&CharacterVector::basis_vector(self.group(), basis, x), target)
    }

    /// Hecke algebra to Grothendieck group.
    pub fn from_hecke(&self, map: Transport, h: &HeckeElement) -> Result<CharacterVector> {
        let g = self.group();
        if h.cartan() != g.cartan() {
            return Err(Error::GroupMismatch(g.cartan().to_string(), h.cartan().to_string()));
        }
        let w0 = g.longest();
        let (basis, relabel): (BasisTag, &dyn Fn(Element) -> Element) = match map {
            Transport::Phi => (BasisTag::Verma, &|w| w),
            Transport::Psi | Transport::RhoShuffle => (BasisTag::DualVerma, &|w| g.mul(w0, w)),
            Transport::RhoTwist => (BasisTag::DualVerma, &|w| g.mul(g.inverse(w), w0)),
        };
        let mut out = CharacterVector::zero(g, basis);
        for (w, c) in h.terms() {
            out.add_term(relabel(w), c)?;
        }
        Ok(out)
    }

    /// Grothendieck group to Hecke algebra; inverse of [`KGroup::from_hecke`].
    pub fn to_hecke(&self, map: Transport, vec: &CharacterVector) -> Result<HeckeElement> {
        let g = self.group();
        let w0 = g.longest();
        let (basis, relabel): (BasisTag, &dyn Fn(Element) -> Element) = match map {
            Transport::Phi => (BasisTag::Verma, &|x| x),
            Transport::Psi | Transport::RhoShuffle => (BasisTag::DualVerma, &|x| g.mul(w0, x)),
            Transport::RhoTwist => (BasisTag::DualVerma, &|x| g.mul(w0, g.inverse(x))),
        };
        let v = self.change_basis(vec, basis)?;
        let mut out = HeckeElement::zero(g);
        for (x, c) in v.terms() {
            out.add_term(relabel(x), c)?;
        }
        Ok(out)
    }

    /// Relabels `[Δ(w)]` as `[∇(w0 w)]`.
    pub fn ringel_dual(&self, vec: &CharacterVector) -> Result<CharacterVector> {
        self.check_vec(vec)?;
        vec.require_basis(BasisTag::Verma)?;
        let g = self.group();
        let w0 = g.longest();
        let mut out = CharacterVector::zero(g, BasisTag::DualVerma);
        for (w, c) in vec.terms() {
            out.add_term(g.mul(w0, w), c)?;
        }
        Ok(out)
    }

    /// Compares the Verma expansions obtained from the r-coefficients and from
    /// graded multiplicities; returns the first disagreeing element.
    pub fn verma_routes_agree(&self) -> Result<Option<Element>> {
        for x in self.group().elements() {
            let via_simple = self.change_basis(&self.verma_in_simple(x)?, BasisTag::DualVerma)?;
            if via_simple != self.verma_in_nabla(x)? {
                return Ok(Some(x));
            }
        }
        Ok(None)
    }

    /// Compares `[T(w)]` from `ψ(uH_{w0 w})` with `φ(hucH_w)`.
    pub fn tilting_routes_agree(&self) -> Result<Option<Element>> {
        let g = self.group();
        for w in g.elements() {
            let via_phi = self.from_hecke(Transport::Phi, self.kl.dual_twisted_kl_basis(w)?)?;
            let via_psi = self.class_in(BasisTag::Tilting, w, BasisTag::Verma)?;
            if via_phi != via_psi {
                return Ok(Some(w));
            }
        }
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::sync::Arc;

    fn cache(t: &str) -> KLCache {
        KLCache::new(Arc::new(CoxeterGroup::build(t.parse().unwrap()).unwrap())).unwrap()
    }

    #[test]
    fn simple_in_nabla_examples() {
        let k = cache("A2");
        let kg = KGroup::new(&k);
        let g = k.group();
        let top = kg.class_in(BasisTag::Simple, g.longest(), BasisTag::DualVerma).unwrap();
        assert_eq!(top, CharacterVector::basis_vector(g, BasisTag::DualVerma, g.longest()));
        let l1 = kg.class_in(BasisTag::Simple, g.generator(1), BasisTag::DualVerma).unwrap();
        assert_eq!(
            l1.display(g),
            "v^-2\u{b7}[\u{2207}(121)] - v^-1\u{b7}[\u{2207}(21)] - v^-1\u{b7}[\u{2207}(12)] + [\u{2207}(1)]"
        );
    }

    #[test]
    fn projective_in_verma() {
        let k = cache("A2");
        let kg = KGroup::new(&k);
        let g = k.group();
        let p1 = kg.class_in(BasisTag::Projective, g.generator(1), BasisTag::Verma).unwrap();
        assert_eq!(p1.display(g), "[\u{394}(1)] + v\u{b7}[\u{394}(e)]");
    }

    #[test]
    fn round_trips() {
        let k = cache("B2");
        let kg = KGroup::new(&k);
        let g = k.group();
        for from in BasisTag::ALL {
            for to in BasisTag::ALL {
                for x in g.elements() {
                    let v = CharacterVector::basis_vector(g, from, x).shift(2);
                    let back = kg.change_basis(&kg.change_basis(&v, to).unwrap(), from).unwrap();
                    assert_eq!(back, v);
                }
            }
        }
        assert_eq!(kg.verma_routes_agree().unwrap(), None);
        assert_eq!(kg.tilting_routes_agree().unwrap(), None);
    }

    #[test]
    fn verma_top() {
        let k = cache("A2");
        let kg = KGroup::new(&k);
        let g = k.group();
        let w0 = g.longest();
        assert_eq!(
            kg.verma_in_nabla(w0).unwrap(),
            CharacterVector::basis_vector(g, BasisTag::DualVerma, w0)
        );
    }

    #[test]
    fn transports() {
        let k = cache("A2");
        let kg = KGroup::new(&k);
        let g = k.group();
        let x = g.from_word(&[1, 2]).unwrap();
        let nab = CharacterVector::basis_vector(g, BasisTag::DualVerma, x).shift(3);
        let h = kg.to_hecke(Transport::RhoTwist, &nab).unwrap();
        let target = g.mul(g.longest(), g.inverse(x));
        assert_eq!(h, HeckeElement::monomial(g, target, LaurentPoly::v_pow(3)));
        for map in [Transport::Phi, Transport::Psi, Transport::RhoTwist, Transport::RhoShuffle] {
            let back = kg.from_hecke(map, &kg.to_hecke(map, &nab).unwrap()).unwrap();
            assert_eq!(kg.change_basis(&back, BasisTag::DualVerma).unwrap(), nab);
        }
        let l = CharacterVector::basis_vector(g, BasisTag::Simple, x);
        assert_eq!(
            &kg.to_hecke(Transport::RhoTwist, &l).unwrap(),
            k.twisted_kl_basis(g.mul(g.longest(), g.inverse(x)))
        );
        let top = kg.from_hecke(Transport::Phi, k.dual_kl_basis(g.longest()).unwrap()).unwrap();
        assert_eq!(
            kg.change_basis(&top, BasisTag::Simple).unwrap(),
            CharacterVector::basis_vector(g, BasisTag::Simple, g.longest())
        );
    }

    #[test]
    fn ringel() {
        let k = cache("A2");
        let kg = KGroup::new(&k);
        let g = k.group();
        let d = CharacterVector::basis_vector(g, BasisTag::Verma, Element::IDENTITY);
        assert_eq!(
            kg.ringel_dual(&d).unwrap(),
            CharacterVector::basis_vector(g, BasisTag::DualVerma, g.longest())
        );
        let n = CharacterVector::basis_vector(g, BasisTag::DualVerma, Element::IDENTITY);
        assert!(matches!(kg.ringel_dual(&n), Err(Error::WrongBasis { .. })));
        let p = kg.class_in(BasisTag::Projective, g.generator(1), BasisTag::Verma).unwrap();
        let t = kg.from_hecke(Transport::Psi, k.kl_basis(g.generator(1))).unwrap();
        assert_eq!(kg.ringel_dual(&p).unwrap(), t);
        assert_eq!(
            kg.change_basis(&t, BasisTag::Tilting).unwrap(),
            CharacterVector::basis_vector(g, BasisTag::Tilting, g.mul(g.longest(), g.generator(1)))
        );
    }
}
