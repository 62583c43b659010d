//! Finite commutative rings given by structure constants.
//!
//! The additive group is `⊕ Z/d_i` with generators `e_i`; multiplication is
//! the bilinear extension of the products `e_i·e_j`. Elements are stored as a
//! mixed-radix index into the coefficient vectors, so the numeric order of
//! [`Elem`] is the lexicographic order of coefficient vectors.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::caps::Caps;
use crate::error::{check_cap, Error, Result};

/// Rings at most this large get precomputed addition and multiplication tables.
const TABLE_LIMIT: usize = 256;

pub type RingRef = Arc<FiniteRing>;

/// A ring element: index of its coefficient vector in mixed radix, first
/// coordinate most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// How a ring is described before validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    Zmod {
        n: u64,
    },
    /// `base[x_1..x_vars] / (x_1..x_vars)^degree`
    TruncatedPoly {
        base: Box<RingSpec>,
        vars: usize,
        degree: usize,
    },
    Table {
        orders: Vec<u64>,
        one: Vec<i64>,
        mul: Vec<Vec<Vec<i64>>>,
    },
    Quotient {
        of: Box<RingSpec>,
        ideal: Vec<Vec<i64>>,
    },
}

impl RingSpec {
    pub fn zmod(n: u64) -> Self {
        RingSpec::Zmod { n }
    }

    pub fn truncated_poly(base: RingSpec, vars: usize, degree: usize) -> Self {
        RingSpec::TruncatedPoly { base: Box::new(base), vars, degree }
    }

    pub fn quotient(of: RingSpec, ideal: Vec<Vec<i64>>) -> Self {
        RingSpec::Quotient { of: Box::new(of), ideal }
    }

    /// `F_4 = F_2[t]/(t² + t + 1)` on the basis `{1, t}`.
    pub fn f4() -> Self {
        RingSpec::Table { orders: vec![2, 2], one: vec![1, 0], mul: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]] }
    }
}

/// Build and validate a ring.
pub fn build_ring(spec: &RingSpec, caps: &Caps) -> Result<RingRef> {
    match spec {
        RingSpec::Zmod { n } => {
            if *n == 0 {
                return Err(Error::Malformed("zmod needs n >= 1".into()));
            }
            check_cap("ring order", u128::from(*n), caps.ring)?;
            let orders = if *n == 1 { vec![] } else { vec![*n] };
            let one = if *n == 1 { vec![] } else { vec![1] };
            let mul = if *n == 1 { vec![] } else { vec![vec![vec![1]]] };
            FiniteRing::new(orders, one, mul, Some(format!("Z/{n}")), caps).map(Arc::new)
        }
        RingSpec::TruncatedPoly { base, vars, degree } => {
            let base = build_ring(base, caps)?;
            truncated_poly(&base, *vars, *degree, caps).map(Arc::new)
        }
        RingSpec::Table { orders, one, mul } => {
            if orders.contains(&0) {
                return Err(Error::Malformed("additive orders must be positive".into()));
            }
            let k = orders.len();
            if one.len() != k || mul.len() != k || mul.iter().any(|row| row.len() != k || row.iter().any(|c| c.len() != k)) {
                return Err(Error::Malformed(format!("table dimensions do not match {k} generators")));
            }
            let reduce = |v: &[i64]| -> Vec<u64> { v.iter().zip(orders).map(|(&c, &d)| c.rem_euclid(d as i64) as u64).collect() };
            let one = reduce(one);
            let mul = mul.iter().map(|row| row.iter().map(|c| reduce(c)).collect()).collect();
            FiniteRing::new(orders.clone(), one, mul, None, caps).map(Arc::new)
        }
        RingSpec::Quotient { of, ideal } => {
            let base = build_ring(of, caps)?;
            let gens = ideal.iter().map(|c| base.elem_from_coeffs(c)).collect::<Result<Vec<_>>>()?;
            let j = crate::ideal::Ideal::closure(&base, gens);
            Ok(crate::ideal::quotient_ring(&j)?.0)
        }
    }
}

fn truncated_poly(base: &FiniteRing, vars: usize, degree: usize, caps: &Caps) -> Result<FiniteRing> {
    // monomials of total degree < degree, graded, x_1 before x_2 within a degree
    let mut monomials: Vec<Vec<usize>> = Vec::new();
    for d in 0..degree {
        let mut layer = Vec::new();
        exponents_of_degree(vars, d, &mut Vec::new(), &mut layer);
        monomials.extend(layer);
    }
    let count = (monomials.len() as u128).saturating_mul(base.generator_count() as u128);
    let order = (base.order() as u128).checked_pow(monomials.len() as u32).unwrap_or(u128::MAX);
    check_cap("ring order", order, caps.ring)?;
    let kb = base.generator_count();
    let k = count as usize;
    let orders: Vec<u64> = monomials.iter().flat_map(|_| base.orders.iter().copied()).collect();
    let mut one = vec![0u64; k];
    if !monomials.is_empty() {
        one[..kb].copy_from_slice(&base.one);
    }
    let mut mul = vec![vec![vec![0u64; k]; k]; k];
    for (a, ma) in monomials.iter().enumerate() {
        for (b, mb) in monomials.iter().enumerate() {
            let prod: Vec<usize> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            let Some(c) = monomials.iter().position(|m| *m == prod) else { continue };
            for i in 0..kb {
                for j in 0..kb {
                    let gi = a * kb + i;
                    let gj = b * kb + j;
                    mul[gi][gj][c * kb..(c + 1) * kb].copy_from_slice(&base.mul[i][j]);
                }
            }
        }
    }
    let label = base.label.as_ref().map(|l| {
        let names: Vec<String> = (1..=vars).map(|i| format!("x{i}")).collect();
        format!("{l}[{}]/(deg {degree})", names.join(","))
    });
    FiniteRing::new(orders, one, mul, label, caps)
}

fn exponents_of_degree(vars: usize, d: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if prefix.len() + 1 == vars {
        prefix.push(d);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    if vars == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return;
    }
    for first in (0..=d).rev() {
        prefix.push(first);
        exponents_of_degree(vars, d - first, prefix, out);
        prefix.pop();
    }
}

#[derive(Debug, Clone)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

/// A validated finite commutative unital ring.
#[derive(Clone)]
pub struct FiniteRing {
    orders: Vec<u64>,
    one: Vec<u64>,
    mul: Vec<Vec<Vec<u64>>>,
    label: Option<String>,
    place: Vec<u64>,
    size: usize,
    tables: Option<Tables>,
}

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteRing")
            .field("label", &self.label)
            .field("orders", &self.orders)
            .field("one", &self.one)
            .finish_non_exhaustive()
    }
}

/// Structural equality: same additive orders, identity, and structure constants.
impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        self.orders == other.orders && self.one == other.one && self.mul == other.mul
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    /// Validates the axioms on generators; coefficients must already be reduced.
    pub fn new(orders: Vec<u64>, one: Vec<u64>, mul: Vec<Vec<Vec<u64>>>, label: Option<String>, caps: &Caps) -> Result<Self> {
        let k = orders.len();
        let size = orders.iter().try_fold(1u128, |acc, &d| acc.checked_mul(u128::from(d))).unwrap_or(u128::MAX);
        check_cap("ring order", size, caps.ring)?;
        let size = size as usize;
        let mut place = vec![1u64; k];
        for i in (0..k.saturating_sub(1)).rev() {
            place[i] = place[i + 1] * orders[i + 1];
        }
        let mut ring = FiniteRing { orders, one, mul, label, place, size, tables: None };
        ring.validate()?;
        if size <= TABLE_LIMIT {
            ring.tables = Some(ring.build_tables());
        }
        Ok(ring)
    }

    fn validate(&self) -> Result<()> {
        let k = self.orders.len();
        let gen = |i: usize| -> Vec<u64> {
            let mut v = vec![0; k];
            v[i] = 1 % self.orders[i];
            v
        };
        for i in 0..k {
            for j in 0..k {
                let p = &self.mul[i][j];
                if p.iter().zip(&self.orders).any(|(&c, &d)| !(c as u128 * self.orders[i] as u128).is_multiple_of(d as u128)) {
                    return Err(Error::Axiom { law: "additive order compatibility d_i·(e_i·e_j) = 0", at: (i, j, j) });
                }
                if *p != self.mul[j][i] {
                    return Err(Error::Axiom { law: "commutativity e_i·e_j = e_j·e_i", at: (i, j, j) });
                }
            }
        }
        for i in 0..k {
            if self.mul_coeffs(&self.one, &gen(i)) != gen(i) {
                return Err(Error::Axiom { law: "identity 1·e_i = e_i", at: (i, i, i) });
            }
        }
        for i in 0..k {
            for j in 0..k {
                for l in 0..k {
                    let left = self.mul_coeffs(&self.mul[i][j], &gen(l));
                    let right = self.mul_coeffs(&gen(i), &self.mul[j][l]);
                    if left != right {
                        return Err(Error::Axiom { law: "associativity (e_i·e_j)·e_k = e_i·(e_j·e_k)", at: (i, j, l) });
                    }
                }
            }
        }
        Ok(())
    }

    fn build_tables(&self) -> Tables {
        let n = self.size;
        let coeffs: Vec<Vec<u64>> = (0..n).map(|i| self.coeffs(Elem(i as u32))).collect();
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        let mut neg = vec![0u32; n];
        for a in 0..n {
            neg[a] = self.encode(&self.neg_coeffs(&coeffs[a])).0;
            for b in a..n {
                let s = self.encode(&self.add_coeffs(&coeffs[a], &coeffs[b])).0;
                let p = self.encode(&self.mul_coeffs(&coeffs[a], &coeffs[b])).0;
                add[a * n + b] = s;
                add[b * n + a] = s;
                mul[a * n + b] = p;
                mul[b * n + a] = p;
            }
        }
        Tables { add, mul, neg }
    }

    pub fn order(&self) -> usize {
        self.size
    }

    pub fn generator_count(&self) -> usize {
        self.orders.len()
    }

    pub fn additive_orders(&self) -> &[u64] {
        &self.orders
    }

    pub fn one_coeffs(&self) -> &[u64] {
        &self.one
    }

    /// Structure constants: `structure()[i][j]` is the coefficient vector of `e_i·e_j`.
    pub fn structure(&self) -> &[Vec<Vec<u64>>] {
        &self.mul
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn is_zero_ring(&self) -> bool {
        self.size == 1
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        self.encode(&self.one)
    }

    /// The additive generator `e_i`.
    pub fn generator(&self, i: usize) -> Elem {
        let mut v = vec![0; self.orders.len()];
        v[i] = 1 % self.orders[i];
        self.encode(&v)
    }

    /// All elements in increasing (lexicographic) order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.size as u32).map(Elem)
    }

    pub fn coeffs(&self, x: Elem) -> Vec<u64> {
        let mut rest = x.0 as u64;
        self.place
            .iter()
            .zip(&self.orders)
            .map(|(&p, &d)| {
                let c = rest / p;
                rest %= p;
                c % d
            })
            .collect()
    }

    fn encode(&self, coeffs: &[u64]) -> Elem {
        Elem(coeffs.iter().zip(&self.place).map(|(&c, &p)| c * p).sum::<u64>() as u32)
    }

    /// Parse a coefficient vector, reducing each entry into `[0, d_i)`.
    pub fn elem_from_coeffs(&self, coeffs: &[i64]) -> Result<Elem> {
        if coeffs.len() != self.orders.len() {
            return Err(Error::Malformed(format!("element has {} coefficients, ring has {} generators", coeffs.len(), self.orders.len())));
        }
        let reduced: Vec<u64> = coeffs.iter().zip(&self.orders).map(|(&c, &d)| c.rem_euclid(d as i64) as u64).collect();
        Ok(self.encode(&reduced))
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.index() < self.size
    }

    fn add_coeffs(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.orders).map(|((x, y), d)| (x + y) % d).collect()
    }

    fn neg_coeffs(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.orders).map(|(x, d)| (d - x) % d).collect()
    }

    fn mul_coeffs(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let k = self.orders.len();
        let mut acc = vec![0u128; k];
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let s = ai as u128 * bj as u128;
                for (c, &m) in acc.iter_mut().zip(&self.mul[i][j]) {
                    *c += s * m as u128;
                }
            }
        }
        acc.iter().zip(&self.orders).map(|(&c, &d)| (c % d as u128) as u64).collect()
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.add[a.index() * self.size + b.index()]),
            None => self.encode(&self.add_coeffs(&self.coeffs(a), &self.coeffs(b))),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.neg[a.index()]),
            None => self.encode(&self.neg_coeffs(&self.coeffs(a))),
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.tables {
            Some(t) => Elem(t.mul[a.index() * self.size + b.index()]),
            None => self.encode(&self.mul_coeffs(&self.coeffs(a), &self.coeffs(b))),
        }
    }

    /// `n·a` for an integer `n`.
    pub fn int_mul(&self, a: Elem, n: i64) -> Elem {
        let c = self.coeffs(a);
        let v: Vec<u64> = c.iter().zip(&self.orders).map(|(&x, &d)| ((x as i128 * n as i128).rem_euclid(d as i128)) as u64).collect();
        self.encode(&v)
    }

    /// The image of the integer `n` under `Z → R`.
    pub fn from_int(&self, n: i64) -> Elem {
        self.int_mul(self.one(), n)
    }

    pub fn pow(&self, a: Elem, e: usize) -> Elem {
        (0..e).fold(self.one(), |acc, _| self.mul(acc, a))
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(Elem::ZERO, |acc, x| self.add(acc, x))
    }

    /// The lexicographically first `x` with `a·x = 1`, if any.
    pub fn inverse(&self, a: Elem) -> Option<Elem> {
        let one = self.one();
        self.elements().find(|&x| self.mul(a, x) == one)
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        self.inverse(a).is_some()
    }

    /// Every unit paired with its (lexicographically first) inverse.
    pub fn units(&self) -> Vec<(Elem, Elem)> {
        self.elements().filter_map(|a| self.inverse(a).map(|inv| (a, inv))).collect()
    }

    /// Display an element as its coefficient vector.
    pub fn fmt_elem(&self, x: Elem) -> String {
        format!("{:?}", self.coeffs(x))
    }
}

/// Whether two ring handles denote the same ring.
pub fn same_ring(a: &FiniteRing, b: &FiniteRing) -> bool {
    core::ptr::eq(a, b) || a == b
}

/// A unital ring homomorphism, determined by the images of additive generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingHom {
    source: RingRef,
    target: RingRef,
    images: Vec<Elem>,
}

impl RingHom {
    pub fn new(source: RingRef, target: RingRef, images: Vec<Elem>) -> Result<Self> {
        if images.len() != source.generator_count() {
            return Err(Error::Malformed(format!("hom needs {} generator images, got {}", source.generator_count(), images.len())));
        }
        if images.iter().any(|&x| !target.contains(x)) {
            return Err(Error::Malformed("hom image outside target ring".into()));
        }
        let hom = RingHom { source, target, images };
        hom.validate()?;
        Ok(hom)
    }

    fn validate(&self) -> Result<()> {
        let (s, t) = (&*self.source, &*self.target);
        for (i, (&img, &d)) in self.images.iter().zip(s.additive_orders()).enumerate() {
            if t.int_mul(img, d as i64) != Elem::ZERO {
                return Err(Error::Axiom { law: "hom respects additive orders", at: (i, i, i) });
            }
        }
        if self.apply(s.one()) != t.one() {
            return Err(Error::Axiom { law: "hom preserves one", at: (0, 0, 0) });
        }
        for i in 0..s.generator_count() {
            for j in 0..s.generator_count() {
                let lhs = self.apply(s.mul(s.generator(i), s.generator(j)));
                let rhs = t.mul(self.images[i], self.images[j]);
                if lhs != rhs {
                    return Err(Error::Axiom { law: "hom preserves products", at: (i, j, j) });
                }
            }
        }
        Ok(())
    }

    pub fn identity(ring: &RingRef) -> Self {
        let images = (0..ring.generator_count()).map(|i| ring.generator(i)).collect();
        RingHom { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &RingRef {
        &self.source
    }

    pub fn target(&self) -> &RingRef {
        &self.target
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn apply(&self, x: Elem) -> Elem {
        let t = &*self.target;
        self.source.coeffs(x).iter().zip(&self.images).fold(Elem::ZERO, |acc, (&c, &img)| t.add(acc, t.int_mul(img, c as i64)))
    }

    /// `other ∘ self`
    pub fn then(&self, other: &RingHom) -> Result<RingHom> {
        if !same_ring(&self.target, &other.source) {
            return Err(Error::MismatchedRings);
        }
        let images = self.images.iter().map(|&x| other.apply(x)).collect();
        Ok(RingHom { source: self.source.clone(), target: other.target.clone(), images })
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.order() != self.target.order() {
            return false;
        }
        let mut seen = vec![false; self.target.order()];
        self.source.elements().all(|x| !core::mem::replace(&mut seen[self.apply(x).index()], true))
    }
}

/// Every ring homomorphism `source → target`, by brute force over generator images.
pub fn ring_homs(source: &RingRef, target: &RingRef, caps: &Caps) -> Result<Vec<RingHom>> {
    let k = source.generator_count();
    let n = target.order() as u128;
    check_cap("ring hom candidates", n.checked_pow(k as u32).unwrap_or(u128::MAX), caps.module_enum)?;
    let mut out = Vec::new();
    let mut images = vec![Elem::ZERO; k];
    loop {
        if let Ok(h) = RingHom::new(source.clone(), target.clone(), images.clone()) {
            out.push(h);
        }
        // odometer, last coordinate fastest
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            images[i] = Elem(images[i].0 + 1);
            if images[i].index() < target.order() {
                break;
            }
            images[i] = Elem::ZERO;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(spec: RingSpec) -> RingRef {
        build_ring(&spec, &Caps::default()).unwrap()
    }

    #[test]
    fn zmod_four() {
        let r = ring(RingSpec::zmod(4));
        assert_eq!(r.order(), 4);
        assert_eq!(r.coeffs(r.one()), vec![1]);
    }

    #[test]
    fn bad_identity_is_rejected() {
        let bad =
            RingSpec::Table { orders: vec![2, 2], one: vec![0, 0], mul: vec![vec![vec![0, 1], vec![0, 0]], vec![vec![0, 0], vec![0, 0]]] };
        assert!(matches!(build_ring(&bad, &Caps::default()), Err(Error::Axiom { law, .. }) if law.starts_with("identity")));
    }

    #[test]
    fn associativity_failure_names_the_triple() {
        // e0 = 1, e1² = e2, e1·e2 = e1, e2² = 0: (e1·e2)·e2 = e1 but e1·(e2·e2) = 0
        let spec = RingSpec::Table {
            orders: vec![3, 3, 3],
            one: vec![1, 0, 0],
            mul: vec![
                vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
                vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 1, 0]],
                vec![vec![0, 0, 1], vec![0, 1, 0], vec![0, 0, 0]],
            ],
        };
        let err = build_ring(&spec, &Caps::default()).unwrap_err();
        assert!(matches!(err, Error::Axiom { law, at: (1, _, _) } if law.starts_with("associativity")), "{err:?}");
    }

    #[test]
    fn single_generator_nonassociative_table() {
        // orders [4], e·e = 2e while one = e: identity check fires before associativity
        let spec = RingSpec::Table { orders: vec![4], one: vec![1], mul: vec![vec![vec![2]]] };
        assert!(build_ring(&spec, &Caps::default()).is_err());
    }

    #[test]
    fn truncated_poly_two_vars() {
        let r = ring(RingSpec::truncated_poly(RingSpec::zmod(2), 2, 2));
        assert_eq!(r.order(), 8);
        assert_eq!(r.generator_count(), 3);
        let (x, y) = (r.generator(1), r.generator(2));
        assert_eq!(r.mul(x, x), Elem::ZERO);
        assert_eq!(r.mul(x, y), Elem::ZERO);
        assert_eq!(r.mul(y, y), Elem::ZERO);
        assert_eq!(r.coeffs(r.one()), vec![1, 0, 0]);
    }

    #[test]
    fn truncated_poly_keeps_higher_degree_products() {
        let r = ring(RingSpec::truncated_poly(RingSpec::zmod(2), 1, 3));
        let x = r.generator(1);
        assert_eq!(r.mul(x, x), r.generator(2));
        assert_eq!(r.mul(r.mul(x, x), x), Elem::ZERO);
    }

    #[test]
    fn units_of_small_rings() {
        let z4 = ring(RingSpec::zmod(4));
        let u: Vec<Elem> = z4.units().into_iter().map(|(u, _)| u).collect();
        assert_eq!(u, vec![Elem(1), Elem(3)]);

        let f4 = ring(RingSpec::f4());
        assert_eq!(f4.units().len(), 3);

        let dual = ring(RingSpec::truncated_poly(RingSpec::zmod(2), 1, 2));
        let u: Vec<Vec<u64>> = dual.units().into_iter().map(|(u, _)| dual.coeffs(u)).collect();
        assert_eq!(u, vec![vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn order_cap_is_enforced() {
        let caps = Caps { ring: 8, ..Caps::default() };
        assert!(matches!(build_ring(&RingSpec::zmod(16), &caps), Err(Error::CapExceeded { .. })));
        assert!(build_ring(&RingSpec::zmod(8), &caps).is_ok());
    }

    #[test]
    fn homs_from_z4() {
        let z4 = ring(RingSpec::zmod(4));
        let f2 = ring(RingSpec::zmod(2));
        assert_eq!(ring_homs(&z4, &f2, &Caps::default()).unwrap().len(), 1);
        assert_eq!(ring_homs(&f2, &z4, &Caps::default()).unwrap().len(), 0);
        assert_eq!(ring_homs(&z4, &z4, &Caps::default()).unwrap().len(), 1);
    }

    #[test]
    fn table_and_coefficient_arithmetic_agree() {
        // Z/4[e]/(e², 2e) has order 8, under the table limit; compare against the slow path.
        let spec =
            RingSpec::Table { orders: vec![4, 2], one: vec![1, 0], mul: vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![0, 0]]] };
        let r = ring(spec);
        for a in r.elements() {
            for b in r.elements() {
                let slow = r.encode(&r.mul_coeffs(&r.coeffs(a), &r.coeffs(b)));
                assert_eq!(r.mul(a, b), slow);
                let slow = r.encode(&r.add_coeffs(&r.coeffs(a), &r.coeffs(b)));
                assert_eq!(r.add(a, b), slow);
            }
        }
    }
}
