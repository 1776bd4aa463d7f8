//! The Iwahori-Hecke algebra in its standard basis, and the Kazhdan-Lusztig
//! bases with their polynomials.

use alloc::boxed::Box;
use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use once_cell::race::OnceBox;

use crate::coxeter::{CartanType, CoxeterGroup, Element};
use crate::error::{Error, Result};
use crate::laurent::{render_combination, LaurentPoly, QSubst};

/// A finite sum `sum_w c_w H_w`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HeckeElement {
    cartan: CartanType,
    terms: BTreeMap<Element, LaurentPoly>,
}

impl fmt::Debug for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(w, c)| (w.index(), c)))
            .finish()
    }
}

fn check_same(a: CartanType, b: CartanType) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::GroupMismatch(a.to_string(), b.to_string()))
    }
}

impl HeckeElement {
    pub fn zero(g: &CoxeterGroup) -> Self {
        Self { cartan: g.cartan(), terms: BTreeMap::new() }
    }

    /// `H_w`.
    pub fn standard(g: &CoxeterGroup, w: Element) -> Self {
        Self::monomial(g, w, LaurentPoly::one())
    }

    /// `c H_w`.
    pub fn monomial(g: &CoxeterGroup, w: Element, c: LaurentPoly) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Self { cartan: g.cartan(), terms }
    }

    pub fn from_terms<I>(g: &CoxeterGroup, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Element, LaurentPoly)>,
    {
        let mut out = Self::zero(g);
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

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: Element) -> LaurentPoly {
        self.terms.get(&w).cloned().unwrap_or_default()
    }

    /// Terms in increasing element index.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Element, &LaurentPoly)> {
        self.terms.iter().map(|(w, c)| (*w, c))
    }

    pub fn add_term(&mut self, w: Element, c: &LaurentPoly) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(w).or_default();
        slot.add_assign_checked(c)?;
        if slot.is_zero() {
            self.terms.remove(&w);
        }
        Ok(())
    }

    pub fn add_scaled(&mut self, other: &Self, c: &LaurentPoly) -> Result<()> {
        check_same(self.cartan, other.cartan)?;
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
        let mut out = Self { cartan: self.cartan, terms: BTreeMap::new() };
        for (w, d) in self.terms() {
            out.add_term(w, &c.checked_mul(d)?)?;
        }
        Ok(out)
    }

    fn check_group(&self, g: &CoxeterGroup) -> Result<()> {
        check_same(g.cartan(), self.cartan)
    }

    /// `self * H_s`.
    pub fn mul_gen_right(&self, g: &CoxeterGroup, s: usize) -> Result<Self> {
        self.check_group(g)?;
        let q = LaurentPoly::quadratic_coeff();
        let mut out = Self::zero(g);
        for (x, c) in self.terms() {
            let xs = g.right_mul_gen(x, s);
            out.add_term(xs, c)?;
            if g.length(xs) < g.length(x) {
                out.add_term(x, &c.checked_mul(&q)?)?;
            }
        }
        Ok(out)
    }

    /// `H_s * self`.
    pub fn mul_gen_left(&self, g: &CoxeterGroup, s: usize) -> Result<Self> {
        self.check_group(g)?;
        let q = LaurentPoly::quadratic_coeff();
        let mut out = Self::zero(g);
        for (x, c) in self.terms() {
            let sx = g.left_mul_gen(s, x);
            out.add_term(sx, c)?;
            if g.length(sx) < g.length(x) {
                out.add_term(x, &c.checked_mul(&q)?)?;
            }
        }
        Ok(out)
    }

    /// `self * H_w`.
    pub fn mul_standard_right(&self, g: &CoxeterGroup, w: Element) -> Result<Self> {
        let mut out = self.clone();
        for &s in g.word(w) {
            out = out.mul_gen_right(g, s as usize)?;
        }
        Ok(out)
    }

    /// `H_w * self`.
    pub fn mul_standard_left(&self, g: &CoxeterGroup, w: Element) -> Result<Self> {
        let mut out = self.clone();
        for &s in g.word(w).iter().rev() {
            out = out.mul_gen_left(g, s as usize)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self, g: &CoxeterGroup) -> Result<Self> {
        self.check_group(g)?;
        other.check_group(g)?;
        let mut out = Self::zero(g);
        for (y, c) in other.terms() {
            out.add_scaled(&self.mul_standard_right(g, y)?, c)?;
        }
        Ok(out)
    }

    /// Standard-basis expansion of `H_w^{-1}`.
    pub fn inv_std(g: &CoxeterGroup, w: Element) -> Result<Self> {
        let shift = LaurentPoly::quadratic_coeff().bar();
        let mut out = Self::standard(g, Element::IDENTITY);
        // H_w^{-1} = H_{s_k}^{-1} ... H_{s_1}^{-1} with H_s^{-1} = H_s + (v - v^-1).
        for &s in g.word(w).iter().rev() {
            let mut next = out.mul_gen_right(g, s as usize)?;
            next.add_scaled(&out, &shift)?;
            out = next;
        }
        Ok(out)
    }

    /// Bar involution, recomputing each standard-basis inverse.
    pub fn bar(&self, g: &CoxeterGroup) -> Result<Self> {
        self.check_group(g)?;
        let mut out = Self::zero(g);
        for (w, c) in self.terms() {
            out.add_scaled(&Self::inv_std(g, g.inverse(w))?, &c.bar())?;
        }
        Ok(out)
    }

    /// The anti-involution `H_w -> H_{w^-1}`.
    pub fn star(&self, g: &CoxeterGroup) -> Self {
        let terms = self.terms().map(|(w, c)| (g.inverse(w), c.clone())).collect();
        Self { cartan: self.cartan, terms }
    }

    /// The `H_e` coordinate.
    pub fn tau(&self) -> LaurentPoly {
        self.coeff(Element::IDENTITY)
    }

    /// Applies `f` to every coefficient, keeping the element labels.
    pub fn map_coeffs<F>(&self, mut f: F) -> Result<Self>
    where
        F: FnMut(&LaurentPoly) -> Result<LaurentPoly>,
    {
        let mut out = Self { cartan: self.cartan, terms: BTreeMap::new() };
        for (w, c) in self.terms() {
            out.add_term(w, &f(c)?)?;
        }
        Ok(out)
    }

    /// Text form such as `H[121] + v·H[12]`, longest elements first.
    pub fn display(&self, g: &CoxeterGroup) -> String {
        render_combination(
            self.terms.iter().rev().map(|(w, c)| (c, alloc::format!("H[{}]", g.display(*w)))),
        )
    }
}

/// Builds the `v^d P(v^-2)` coordinate from a polynomial in `q`.
fn kl_coordinate(p: &LaurentPoly, d: usize) -> Result<LaurentPoly> {
    Ok(p.subst_q(QSubst::VInverseSquared)?.shift(d as i32))
}

/// Builds the `(-v)^{-d} P(v^2)` coordinate from a polynomial in `q`.
fn twisted_coordinate(p: &LaurentPoly, d: usize) -> Result<LaurentPoly> {
    let c = p.subst_q(QSubst::VSquared)?.shift(-(d as i32));
    if d % 2 == 1 {
        c.checked_neg()
    } else {
        Ok(c)
    }
}

/// Recovers `P(q)` from a coordinate `v^d P(v^-2)`; `None` if the shape is wrong.
fn p_from_coordinate(c: &LaurentPoly, d: usize, diagonal: bool) -> Option<LaurentPoly> {
    let d = d as i32;
    let mut p = LaurentPoly::zero();
    for (k, a) in c.terms() {
        if (d - k) < 0 || (d - k) % 2 != 0 || (!diagonal && k < 1) {
            return None;
        }
        p.add_term((d - k) / 2, a).ok()?;
    }
    Some(p)
}

/// Memoized Kazhdan-Lusztig data for one group.
pub struct KLCache {
    group: Arc<CoxeterGroup>,
    /// `p[y]` maps `x <= y` to `P_{x,y}` as a polynomial in `q`.
    p: Vec<BTreeMap<Element, LaurentPoly>>,
    /// Nonzero `mu(x, y)` for `x < y`, stored under `y`.
    mu_below: Vec<Vec<(Element, i64)>>,
    kl: Vec<HeckeElement>,
    twisted: Vec<HeckeElement>,
    inverses: Vec<OnceBox<HeckeElement>>,
    dual: Vec<OnceBox<HeckeElement>>,
    dual_twisted: Vec<OnceBox<HeckeElement>>,
}

impl fmt::Debug for KLCache {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KLCache").field("cartan", &self.group.cartan()).finish()
    }
}

fn lazy_slots(n: usize) -> Vec<OnceBox<HeckeElement>> {
    (0..n).map(|_| OnceBox::new()).collect()
}

impl KLCache {
    /// Runs the KL recursion over the whole group.
    pub fn new(group: Arc<CoxeterGroup>) -> Result<Self> {
        let g = &*group;
        let n = g.order();
        let mut cache = Self {
            p: Vec::with_capacity(n),
            mu_below: Vec::with_capacity(n),
            kl: Vec::with_capacity(n),
            twisted: Vec::with_capacity(n),
            inverses: lazy_slots(n),
            dual: lazy_slots(n),
            dual_twisted: lazy_slots(n),
            group: group.clone(),
        };
        let v = LaurentPoly::v_pow(1);
        let minus_vinv = LaurentPoly::monomial(-1, -1);
        for w in g.elements() {
            let (kl, tw) = if w == Element::IDENTITY {
                let e = HeckeElement::standard(g, w);
                (e.clone(), e)
            } else {
                let s = *g.word(w).last().unwrap() as usize;
                let prev = g.right_mul_gen(w, s);
                let mut kl = cache.kl[prev.index()].mul_gen_right(g, s)?;
                kl.add_scaled(&cache.kl[prev.index()], &v)?;
                let mut tw = cache.twisted[prev.index()].mul_gen_right(g, s)?;
                tw.add_scaled(&cache.twisted[prev.index()], &minus_vinv)?;
                for &(y, m) in &cache.mu_below[prev.index()] {
                    if g.length(g.right_mul_gen(y, s)) < g.length(y) {
                        let c = LaurentPoly::constant(-m);
                        kl.add_scaled(&cache.kl[y.index()], &c)?;
                        tw.add_scaled(&cache.twisted[y.index()], &c)?;
                    }
                }
                (kl, tw)
            };
            let mut column = BTreeMap::new();
            let mut mus = Vec::new();
            for (x, c) in kl.terms() {
                let d = g.length(w) as isize - g.length(x) as isize;
                let violation = || Error::TriangularityViolation {
                    basis: "KL",
                    element: g.display(w),
                };
                if d < 0 || !g.bruhat_leq(x, w) {
                    return Err(violation());
                }
                let p = p_from_coordinate(c, d as usize, x == w).ok_or_else(violation)?;
                if x == w && !p.is_one() {
                    return Err(violation());
                }
                if d % 2 == 1 {
                    let m = p.coeff(((d - 1) / 2) as i32);
                    if m != 0 {
                        mus.push((x, m));
                    }
                }
                column.insert(x, p);
            }
            cache.p.push(column);
            cache.mu_below.push(mus);
            let expected = cache.twisted_from_p(w)?;
            if expected != tw {
                return Err(Error::Inconsistency(alloc::format!(
                    "twisted KL recursion disagrees with the P expansion at {}",
                    g.display(w)
                )));
            }
            cache.kl.push(kl);
            cache.twisted.push(tw);
        }
        Ok(cache)
    }

    /// Rebuilds a cache from stored `P` and `mu` tables. Pairs `(x, y)` with
    /// `x < y` only; the diagonal is implied.
    pub fn from_tables(
        group: Arc<CoxeterGroup>,
        p_entries: &[(Element, Element, LaurentPoly)],
        mu_entries: &[(Element, Element, i64)],
    ) -> Result<Self> {
        let g = &*group;
        let n = g.order();
        let mut p: Vec<BTreeMap<Element, LaurentPoly>> = (0..n)
            .map(|i| {
                let mut m = BTreeMap::new();
                m.insert(Element::from_index(i), LaurentPoly::one());
                m
            })
            .collect();
        for (x, y, poly) in p_entries {
            if !g.contains(*x) || !g.contains(*y) || !g.bruhat_lt(*x, *y) {
                return Err(Error::Inconsistency(alloc::format!(
                    "stored P entry outside the Bruhat order: ({}, {})",
                    x.index(),
                    y.index()
                )));
            }
            p[y.index()].insert(*x, poly.clone());
        }
        let mut mu_below: Vec<Vec<(Element, i64)>> = (0..n).map(|_| Vec::new()).collect();
        for (x, y, m) in mu_entries {
            if !g.contains(*x) || !g.contains(*y) {
                return Err(Error::BadElement(alloc::format!("index {}", y.index())));
            }
            mu_below[y.index()].push((*x, *m));
        }
        let mut cache = Self {
            p,
            mu_below,
            kl: Vec::with_capacity(n),
            twisted: Vec::with_capacity(n),
            inverses: lazy_slots(n),
            dual: lazy_slots(n),
            dual_twisted: lazy_slots(n),
            group: group.clone(),
        };
        for y in g.elements() {
            for (x, poly) in &cache.p[y.index()] {
                let d = g.length(y) - g.length(*x);
                let lead = if d % 2 == 1 { poly.coeff(((d - 1) / 2) as i32) } else { 0 };
                let stored = cache.mu_below[y.index()]
                    .iter()
                    .find(|(z, _)| z == x)
                    .map_or(0, |(_, m)| *m);
                if lead != stored {
                    return Err(Error::Inconsistency(alloc::format!(
                        "stored mu({}, {}) does not match P",
                        g.display(*x),
                        g.display(y)
                    )));
                }
            }
            cache.mu_below[y.index()].sort();
            let kl = cache.kl_from_p(y)?;
            let tw = cache.twisted_from_p(y)?;
            cache.kl.push(kl);
            cache.twisted.push(tw);
        }
        Ok(cache)
    }

    fn kl_from_p(&self, w: Element) -> Result<HeckeElement> {
        let g = &*self.group;
        let mut out = HeckeElement::zero(g);
        for (x, p) in &self.p[w.index()] {
            out.add_term(*x, &kl_coordinate(p, g.length(w) - g.length(*x))?)?;
        }
        Ok(out)
    }

    fn twisted_from_p(&self, w: Element) -> Result<HeckeElement> {
        let g = &*self.group;
        let mut out = HeckeElement::zero(g);
        for (x, p) in &self.p[w.index()] {
            out.add_term(*x, &twisted_coordinate(p, g.length(w) - g.length(*x))?)?;
        }
        Ok(out)
    }

    pub fn group(&self) -> &CoxeterGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    /// `uH_w`, the bar-invariant basis element with coefficients in `vZ[v]` below the top.
    pub fn kl_basis(&self, w: Element) -> &HeckeElement {
        &self.kl[w.index()]
    }

    /// `ucH_w`, the bar-invariant basis element with coefficients in `v^-1 Z[v^-1]` below the top.
    pub fn twisted_kl_basis(&self, w: Element) -> &HeckeElement {
        &self.twisted[w.index()]
    }

    /// `P_{x,y}` as a polynomial in `q`; zero unless `x <= y`.
    pub fn kl_poly(&self, x: Element, y: Element) -> LaurentPoly {
        self.p[y.index()].get(&x).cloned().unwrap_or_default()
    }

    /// All `(x, P_{x,y})` with `x <= y`.
    pub fn kl_column(&self, y: Element) -> impl Iterator<Item = (Element, &LaurentPoly)> {
        self.p[y.index()].iter().map(|(x, p)| (*x, p))
    }

    /// Leading coefficient `mu(x, y)`, symmetric in its arguments.
    pub fn mu(&self, x: Element, y: Element) -> i64 {
        let (lo, hi) = if self.group.length(x) <= self.group.length(y) { (x, y) } else { (y, x) };
        self.mu_below[hi.index()].iter().find(|(z, _)| *z == lo).map_or(0, |(_, m)| *m)
    }

    /// Nonzero `mu(x, y)` with `x < y`.
    pub fn mu_below(&self, y: Element) -> &[(Element, i64)] {
        &self.mu_below[y.index()]
    }

    /// Every stored `(x, y, P_{x,y})` with `x < y`.
    pub fn p_entries(&self) -> Vec<(Element, Element, LaurentPoly)> {
        let mut out = Vec::new();
        for y in self.group.elements() {
            for (x, p) in &self.p[y.index()] {
                if *x != y {
                    out.push((*x, y, p.clone()));
                }
            }
        }
        out
    }

    /// Every nonzero `(x, y, mu(x, y))` with `x < y`.
    pub fn mu_entries(&self) -> Vec<(Element, Element, i64)> {
        let mut out = Vec::new();
        for y in self.group.elements() {
            for &(x, m) in &self.mu_below[y.index()] {
                out.push((x, y, m));
            }
        }
        out
    }

    /// Cached `H_w^{-1}`.
    pub fn inv_std(&self, w: Element) -> Result<&HeckeElement> {
        self.inverses[w.index()]
            .get_or_try_init(|| HeckeElement::inv_std(&self.group, w).map(Box::new))
    }

    /// Bar involution using the cached inverses.
    pub fn bar(&self, a: &HeckeElement) -> Result<HeckeElement> {
        let g = &*self.group;
        check_same(g.cartan(), a.cartan())?;
        let mut out = HeckeElement::zero(g);
        for (w, c) in a.terms() {
            out.add_scaled(self.inv_std(g.inverse(w))?, &c.bar())?;
        }
        Ok(out)
    }

    /// `huH_w`, checked against `ucH_{w w0} H_{w0}` and `H_{w0} ucH_{w0 w}`.
    pub fn dual_kl_basis(&self, w: Element) -> Result<&HeckeElement> {
        self.dual[w.index()].get_or_try_init(|| {
            let g = &*self.group;
            let w0 = g.longest();
            let top = g.mul(w0, w);
            let mut out = HeckeElement::zero(g);
            for (z, q) in self.kl_column(top) {
                // z = w0 y ranges over the elements below w0 w, i.e. y >= w.
                let y = g.mul(w0, z);
                let d = g.length(y) - g.length(w);
                let mut c = q.subst_q(QSubst::VInverseSquared)?.shift(d as i32);
                if d % 2 == 1 {
                    c = c.checked_neg()?;
                }
                out.add_term(y, &c)?;
            }
            let right = self.twisted_kl_basis(g.mul(w, w0)).mul_standard_right(g, w0)?;
            let left = self.twisted_kl_basis(top).mul_standard_left(g, w0)?;
            if out != right || out != left {
                return Err(Error::Inconsistency(alloc::format!(
                    "dual KL basis at {} disagrees with the product formulas",
                    g.display(w)
                )));
            }
            Ok(Box::new(out))
        })
    }

    /// `hucH_w`, checked against `uH_{w w0} H_{w0}`.
    pub fn dual_twisted_kl_basis(&self, w: Element) -> Result<&HeckeElement> {
        self.dual_twisted[w.index()].get_or_try_init(|| {
            let g = &*self.group;
            let w0 = g.longest();
            let top = g.mul(w0, w);
            let mut out = HeckeElement::zero(g);
            for (z, q) in self.kl_column(top) {
                let y = g.mul(w0, z);
                let d = g.length(y) - g.length(w);
                out.add_term(y, &q.subst_q(QSubst::VSquared)?.shift(-(d as i32)))?;
            }
            let product = self.kl_basis(g.mul(w, w0)).mul_standard_right(g, w0)?;
            if out != product {
                return Err(Error::Inconsistency(alloc::format!(
                    "dual twisted KL basis at {} disagrees with the product formula",
                    g.display(w)
                )));
            }
            Ok(Box::new(out))
        })
    }

    /// True if every stored `P_{x,y}` has nonnegative coefficients.
    pub fn all_p_nonnegative(&self) -> bool {
        self.p.iter().all(|col| col.values().all(LaurentPoly::is_nonnegative))
    }
}
