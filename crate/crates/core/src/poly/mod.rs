//! Sparse multivariate polynomials over a [`Field`].
//!
//! Monomials are dense exponent vectors of fixed capacity [`MAX_VARS`]; unused
//! slots stay zero so that comparisons never need the ring's arity. A
//! [`Polynomial`] is a term list sorted strictly decreasing under *some*
//! monomial order: the ring's default order for values handed out by
//! [`PolyRing`], or the basis order for elements of a Gröbner basis.

mod parse;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeffs::{Field, FieldElement};
use crate::error::{usage, Error, Result};

pub use parse::{parse_rational, Bindings};

/// Capacity of a monomial's exponent vector.
pub const MAX_VARS: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Monomial([u16; MAX_VARS]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; MAX_VARS]);

    pub fn from_exponents(exps: &[u16]) -> Monomial {
        assert!(exps.len() <= MAX_VARS, "too many variables");
        let mut m = [0; MAX_VARS];
        m[..exps.len()].copy_from_slice(exps);
        Monomial(m)
    }

    pub fn var(i: usize, power: u16) -> Monomial {
        let mut m = [0; MAX_VARS];
        m[i] = power;
        Monomial(m)
    }

    #[inline]
    pub fn exponents(&self) -> &[u16; MAX_VARS] {
        &self.0
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u16 {
        self.0[i]
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn partial_degree(&self, vars: std::ops::Range<usize>) -> u32 {
        self.0[vars].iter().map(|&e| e as u32).sum()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// `self | other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = a.checked_add(*b).expect("exponent overflow");
        }
        Monomial(m)
    }

    /// `self / other`; caller guarantees divisibility.
    #[inline]
    pub fn div(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            debug_assert!(*a >= *b);
            *a -= *b;
        }
        Monomial(m)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = (*a).max(*b);
        }
        Monomial(m)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = (*a).min(*b);
        }
        Monomial(m)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Bit `i` set iff variable `i` occurs; a cheap divisibility pre-filter.
    #[inline]
    pub fn support_mask(&self) -> u16 {
        let mut mask = 0u16;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    /// Moves exponent `i` to slot `map[i]`; exponents sharing a slot add up.
    pub fn permute(&self, map: &[usize]) -> Monomial {
        let mut m = [0; MAX_VARS];
        for (i, &target) in map.iter().enumerate() {
            m[target] += self.0[i];
        }
        Monomial(m)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.0.iter().rposition(|&e| e != 0).map_or(0, |i| i + 1);
        write!(f, "{:?}", &self.0[..last])
    }
}

/// A total, multiplicative order on monomials. Orders are always passed
/// explicitly; nothing in the crate keeps a global "current order".
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// Grevlex on the first `front` variables, ties broken by grevlex on the
    /// remaining ones. Eliminates the front block.
    BlockElimination {
        front: usize,
    },
    /// Weighted degree first (missing weights are zero), ties by grevlex.
    GradedThenGrevlex {
        weights: Vec<u32>,
    },
    /// Total degree in the first `front` variables, then weighted degree,
    /// then grevlex. Eliminates the front block while keeping the weighted
    /// grading visible to the order.
    EliminationThenGraded {
        front: usize,
        weights: Vec<u32>,
    },
}

#[inline]
fn grevlex_range(a: &Monomial, b: &Monomial, range: std::ops::Range<usize>) -> Ordering {
    let da = a.partial_degree(range.clone());
    let db = b.partial_degree(range.clone());
    if da != db {
        return da.cmp(&db);
    }
    for i in range.rev() {
        let (x, y) = (a.0[i], b.0[i]);
        if x != y {
            return y.cmp(&x);
        }
    }
    Ordering::Equal
}

#[inline]
fn weighted_degree(m: &Monomial, weights: &[u32]) -> u64 {
    weights
        .iter()
        .zip(m.0.iter())
        .map(|(&w, &e)| w as u64 * e as u64)
        .sum()
}

impl MonomialOrder {
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Grevlex => grevlex_range(a, b, 0..MAX_VARS),
            MonomialOrder::BlockElimination { front } => {
                grevlex_range(a, b, 0..*front).then_with(|| grevlex_range(a, b, *front..MAX_VARS))
            }
            MonomialOrder::GradedThenGrevlex { weights } => weighted_degree(a, weights)
                .cmp(&weighted_degree(b, weights))
                .then_with(|| grevlex_range(a, b, 0..MAX_VARS)),
            MonomialOrder::EliminationThenGraded { front, weights } => a
                .partial_degree(0..*front)
                .cmp(&b.partial_degree(0..*front))
                .then_with(|| weighted_degree(a, weights).cmp(&weighted_degree(b, weights)))
                .then_with(|| grevlex_range(a, b, 0..MAX_VARS)),
        }
    }

    /// Whether every monomial involving one of the first `k` variables is
    /// larger than every monomial free of them.
    pub fn eliminates_front(&self, k: usize) -> bool {
        match self {
            MonomialOrder::Lex => true,
            MonomialOrder::BlockElimination { front }
            | MonomialOrder::EliminationThenGraded { front, .. } => *front >= k,
            _ => k == 0,
        }
    }
}

/// Sparse polynomial: terms sorted strictly decreasing, no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial<E> {
    terms: Vec<(Monomial, E)>,
}

impl<E: fmt::Debug> fmt::Debug for Polynomial<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.terms.iter()).finish()
    }
}

impl<E: Clone> Polynomial<E> {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    /// Trusts the caller that `terms` is already canonical for some order.
    pub(crate) fn from_sorted_terms(terms: Vec<(Monomial, E)>) -> Self {
        Polynomial { terms }
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

    pub fn terms(&self) -> &[(Monomial, E)] {
        &self.terms
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&E> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Coefficient of the constant monomial (the minimum of every order).
    pub fn constant_coefficient(&self) -> Option<&E> {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => Some(c),
            _ => None,
        }
    }

    /// Merge-subtract-in-place helpers need the leading term removed cheaply.
    pub(crate) fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|(m, _)| m)
    }
}

// ---------------------------------------------------------------------------
// Kernel operations parameterized by field and order. The ring API and the
// Gröbner engine are both built on these.

pub(crate) fn normalize<F: Field>(
    field: &F,
    order: &MonomialOrder,
    mut terms: Vec<(Monomial, F::Elem)>,
) -> Polynomial<F::Elem> {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let mut out: Vec<(Monomial, F::Elem)> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
            _ => {
                if let Some((_, lc)) = out.last() {
                    if field.is_zero(lc) {
                        out.pop();
                    }
                }
                out.push((m, c));
            }
        }
    }
    if let Some((_, lc)) = out.last() {
        if field.is_zero(lc) {
            out.pop();
        }
    }
    out.retain(|(_, c)| !field.is_zero(c));
    Polynomial { terms: out }
}

pub(crate) fn add<F: Field>(
    field: &F,
    order: &MonomialOrder,
    a: &Polynomial<F::Elem>,
    b: &Polynomial<F::Elem>,
) -> Polynomial<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() && j < b.terms.len() {
        let (ma, ca) = &a.terms[i];
        let (mb, cb) = &b.terms[j];
        match order.cmp(ma, mb) {
            Ordering::Greater => {
                out.push((*ma, ca.clone()));
                i += 1;
            }
            Ordering::Less => {
                out.push((*mb, cb.clone()));
                j += 1;
            }
            Ordering::Equal => {
                let s = field.add(ca, cb);
                if !field.is_zero(&s) {
                    out.push((*ma, s));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a.terms[i..]);
    out.extend_from_slice(&b.terms[j..]);
    Polynomial { terms: out }
}

pub(crate) fn neg<F: Field>(field: &F, a: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
    Polynomial {
        terms: a.terms.iter().map(|(m, c)| (*m, field.neg(c))).collect(),
    }
}

pub(crate) fn scale<F: Field>(
    field: &F,
    a: &Polynomial<F::Elem>,
    c: &F::Elem,
) -> Polynomial<F::Elem> {
    if field.is_zero(c) {
        return Polynomial::zero();
    }
    Polynomial {
        terms: a.terms.iter().map(|(m, x)| (*m, field.mul(x, c))).collect(),
    }
}

/// `c * m * a`; multiplicativity of the order keeps the result sorted.
pub(crate) fn mul_term<F: Field>(
    field: &F,
    a: &Polynomial<F::Elem>,
    m: &Monomial,
    c: &F::Elem,
) -> Polynomial<F::Elem> {
    if field.is_zero(c) {
        return Polynomial::zero();
    }
    Polynomial {
        terms: a
            .terms
            .iter()
            .map(|(am, ac)| (am.mul(m), field.mul(ac, c)))
            .collect(),
    }
}

/// `p - c * m * g`, by a single merge pass.
pub(crate) fn sub_mul_term<F: Field>(
    field: &F,
    order: &MonomialOrder,
    p: &[(Monomial, F::Elem)],
    c: &F::Elem,
    m: &Monomial,
    g: &[(Monomial, F::Elem)],
) -> Vec<(Monomial, F::Elem)> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    while i < p.len() && j < g.len() {
        let gm = g[j].0.mul(m);
        match order.cmp(&p[i].0, &gm) {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push((gm, field.neg(&field.mul(c, &g[j].1))));
                j += 1;
            }
            Ordering::Equal => {
                let mut v = p[i].1.clone();
                field.sub_mul_assign(&mut v, c, &g[j].1);
                if !field.is_zero(&v) {
                    out.push((gm, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&p[i..]);
    for (gm, gc) in &g[j..] {
        out.push((gm.mul(m), field.neg(&field.mul(c, gc))));
    }
    out
}

pub(crate) fn mul<F: Field>(
    field: &F,
    order: &MonomialOrder,
    a: &Polynomial<F::Elem>,
    b: &Polynomial<F::Elem>,
) -> Polynomial<F::Elem> {
    if a.is_zero() || b.is_zero() {
        return Polynomial::zero();
    }
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    if small.len() == 1 {
        let (m, c) = &small.terms[0];
        return mul_term(field, large, m, c);
    }
    let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(a.len() * b.len());
    for (ma, ca) in &small.terms {
        for (mb, cb) in &large.terms {
            let prod = field.mul(ca, cb);
            acc.entry(ma.mul(mb))
                .and_modify(|v| *v = field.add(v, &prod))
                .or_insert(prod);
        }
    }
    normalize(field, order, acc.into_iter().collect())
}

/// Re-sorts `p` for a different order.
pub(crate) fn reorder<E: Clone>(p: &Polynomial<E>, order: &MonomialOrder) -> Polynomial<E> {
    let mut terms = p.terms.clone();
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    Polynomial { terms }
}

pub(crate) fn is_sorted_for<E>(p: &Polynomial<E>, order: &MonomialOrder) -> bool {
    p.terms
        .windows(2)
        .all(|w| order.cmp(&w[0].0, &w[1].0) == Ordering::Greater)
}

pub(crate) fn make_monic<F: Field>(field: &F, p: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
    match p.leading_coefficient() {
        None => Polynomial::zero(),
        Some(lc) if field.is_one(lc) => p.clone(),
        Some(lc) => scale(
            field,
            p,
            &field.inv(lc).expect("nonzero leading coefficient"),
        ),
    }
}

/// Exact division `a / b`, `None` if `b` does not divide `a`.
pub(crate) fn divide_exact<F: Field>(
    field: &F,
    order: &MonomialOrder,
    a: &Polynomial<F::Elem>,
    b: &Polynomial<F::Elem>,
) -> Option<Polynomial<F::Elem>> {
    let (bm, bc) = b.terms.first()?;
    let bc_inv = field.inv(bc).ok()?;
    let mut rest = a.terms.clone();
    let mut quotient = Vec::new();
    while let Some((m, c)) = rest.first().cloned() {
        if !bm.divides(&m) {
            return None;
        }
        let qm = m.div(bm);
        let qc = field.mul(&c, &bc_inv);
        rest = sub_mul_term(field, order, &rest, &qc, &qm, &b.terms);
        quotient.push((qm, qc));
    }
    Some(Polynomial { terms: quotient })
}

// ---------------------------------------------------------------------------

/// Variables, coefficient field and default order of a polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing<F: Field> {
    field: F,
    names: Vec<String>,
    order: MonomialOrder,
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl<F: Field> PolyRing<F> {
    pub fn new<S: AsRef<str>>(field: F, names: &[S], order: MonomialOrder) -> Result<Self> {
        if names.is_empty() {
            return Err(usage("a polynomial ring needs at least one variable"));
        }
        if names.len() > MAX_VARS {
            return Err(usage(format!(
                "{} variables requested, at most {MAX_VARS} supported",
                names.len()
            )));
        }
        let names: Vec<String> = names
            .iter()
            .map(|s| s.as_ref().trim().to_string())
            .collect();
        for (i, n) in names.iter().enumerate() {
            if !valid_identifier(n) {
                return Err(usage(format!("invalid variable name `{n}`")));
            }
            if names[..i].contains(n) {
                return Err(usage(format!("duplicate variable `{n}`")));
            }
        }
        Ok(PolyRing {
            field,
            names,
            order,
        })
    }

    /// Grevlex ring, the default for every analysis.
    pub fn grevlex<S: AsRef<str>>(field: F, names: &[S]) -> Result<Self> {
        Self::new(field, names, MonomialOrder::Grevlex)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same variables and field, different default order.
    pub fn with_order(&self, order: MonomialOrder) -> Self {
        PolyRing {
            field: self.field.clone(),
            names: self.names.clone(),
            order,
        }
    }

    pub fn zero(&self) -> Polynomial<F::Elem> {
        Polynomial::zero()
    }

    pub fn one(&self) -> Polynomial<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: F::Elem) -> Polynomial<F::Elem> {
        self.monomial(Monomial::ONE, c)
    }

    pub fn from_i64(&self, n: i64) -> Polynomial<F::Elem> {
        self.constant(self.field.from_i64(n))
    }

    pub fn monomial(&self, m: Monomial, c: F::Elem) -> Polynomial<F::Elem> {
        if self.field.is_zero(&c) {
            Polynomial::zero()
        } else {
            Polynomial {
                terms: vec![(m, c)],
            }
        }
    }

    pub fn var(&self, i: usize) -> Polynomial<F::Elem> {
        assert!(i < self.nvars(), "variable index out of range");
        self.monomial(Monomial::var(i, 1), self.field.one())
    }

    pub fn from_terms(&self, terms: Vec<(Monomial, F::Elem)>) -> Polynomial<F::Elem> {
        normalize(&self.field, &self.order, terms)
    }

    pub fn add(&self, a: &Polynomial<F::Elem>, b: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        add(&self.field, &self.order, a, b)
    }

    pub fn sub(&self, a: &Polynomial<F::Elem>, b: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        add(&self.field, &self.order, a, &neg(&self.field, b))
    }

    pub fn neg(&self, a: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        neg(&self.field, a)
    }

    pub fn scale(&self, a: &Polynomial<F::Elem>, c: &F::Elem) -> Polynomial<F::Elem> {
        scale(&self.field, a, c)
    }

    pub fn mul(&self, a: &Polynomial<F::Elem>, b: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        mul(&self.field, &self.order, a, b)
    }

    pub fn mul_monomial(
        &self,
        a: &Polynomial<F::Elem>,
        m: &Monomial,
        c: &F::Elem,
    ) -> Polynomial<F::Elem> {
        mul_term(&self.field, a, m, c)
    }

    /// Square-and-multiply; `pow(p, 0) = 1` for every `p`.
    pub fn pow(&self, p: &Polynomial<F::Elem>, k: u32) -> Polynomial<F::Elem> {
        let mut result = self.one();
        let mut base = p.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(&result, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    pub fn product<'a, I>(&self, factors: I) -> Polynomial<F::Elem>
    where
        I: IntoIterator<Item = &'a Polynomial<F::Elem>>,
        F::Elem: 'a,
    {
        factors
            .into_iter()
            .fold(self.one(), |acc, p| self.mul(&acc, p))
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, p: &Polynomial<F::Elem>, i: usize) -> Polynomial<F::Elem> {
        assert!(i < self.nvars(), "variable index out of range");
        let terms = p
            .terms
            .iter()
            .filter(|(m, _)| m.exponent(i) > 0)
            .map(|(m, c)| {
                let e = m.exponent(i);
                let mut exps = *m.exponents();
                exps[i] -= 1;
                (
                    Monomial(exps),
                    self.field.mul(c, &self.field.from_i64(e as i64)),
                )
            })
            .filter(|(_, c)| !self.field.is_zero(c))
            .collect();
        // lowering one exponent can reorder terms under non-lex orders
        self.from_terms(terms)
    }

    pub fn evaluate_at_origin(&self, p: &Polynomial<F::Elem>) -> F::Elem {
        p.constant_coefficient()
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Whether `p` is a unit of the local ring at the origin.
    pub fn is_local_unit(&self, p: &Polynomial<F::Elem>) -> bool {
        !self.field.is_zero(&self.evaluate_at_origin(p))
    }

    pub fn monic(&self, p: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        make_monic(&self.field, p)
    }

    /// Exact quotient `a / b`; `None` when the division leaves a remainder.
    pub fn divide_exact(
        &self,
        a: &Polynomial<F::Elem>,
        b: &Polynomial<F::Elem>,
    ) -> Option<Polynomial<F::Elem>> {
        divide_exact(&self.field, &self.order, a, b)
    }

    /// Brings a polynomial sorted for another order into this ring's order.
    pub fn canonical(&self, p: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        if is_sorted_for(p, &self.order) {
            p.clone()
        } else {
            reorder(p, &self.order)
        }
    }

    /// Renames variables through `map(old index) = new index` into `target`.
    pub fn map_variables(
        &self,
        p: &Polynomial<F::Elem>,
        map: &[usize],
        target: &PolyRing<F>,
    ) -> Polynomial<F::Elem> {
        debug_assert_eq!(map.len(), self.nvars());
        let terms = p
            .terms
            .iter()
            .map(|(m, c)| (m.permute(map), c.clone()))
            .collect();
        target.from_terms(terms)
    }

    /// Substitutes `images[i]` (elements of `target`) for variable `i`.
    pub fn compose(
        &self,
        p: &Polynomial<F::Elem>,
        images: &[Polynomial<F::Elem>],
        target: &PolyRing<F>,
    ) -> Polynomial<F::Elem> {
        assert_eq!(images.len(), self.nvars());
        let mut powers: Vec<Vec<Polynomial<F::Elem>>> = vec![vec![target.one()]; self.nvars()];
        let mut acc = target.zero();
        for (m, c) in &p.terms {
            let mut term = target.constant(c.clone());
            for (i, image) in images.iter().enumerate() {
                let e = m.exponent(i) as usize;
                while powers[i].len() <= e {
                    let next = target.mul(powers[i].last().unwrap(), image);
                    powers[i].push(next);
                }
                if e > 0 {
                    term = target.mul(&term, &powers[i][e]);
                }
            }
            acc = target.add(&acc, &term);
        }
        acc
    }

    /// Whether every term has the same weighted degree.
    pub fn is_homogeneous(&self, p: &Polynomial<F::Elem>, weights: &[u32]) -> bool {
        let mut degrees = p.terms.iter().map(|(m, _)| weighted_degree(m, weights));
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    pub fn weighted_degree(&self, m: &Monomial, weights: &[u32]) -> u64 {
        weighted_degree(m, weights)
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial<F::Elem>> {
        parse::parse(self, text, &Bindings::new())
    }

    /// Parses with extra identifiers bound to constants (family parameters).
    pub fn parse_with(&self, text: &str, bindings: &Bindings) -> Result<Polynomial<F::Elem>> {
        parse::parse(self, text, bindings)
    }

    pub fn coefficient_from_dynamic(&self, c: &FieldElement) -> Result<F::Elem> {
        crate::coeffs::from_dynamic(&self.field, c)
    }

    pub fn render_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, name) in self.names.iter().enumerate() {
            match m.exponent(i) {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }

    /// Text form accepted back by [`PolyRing::parse`].
    pub fn render(&self, p: &Polynomial<F::Elem>) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (m, c)) in p.terms.iter().enumerate() {
            let text = self.field.render(c);
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&magnitude);
            } else if magnitude == "1" {
                out.push_str(&self.render_monomial(m));
            } else {
                out.push_str(&magnitude);
                out.push('*');
                out.push_str(&self.render_monomial(m));
            }
        }
        out
    }

    pub(crate) fn check_same_ring(&self, other: &PolyRing<F>) -> Result<()> {
        if self.names != other.names || self.field.spec() != other.field.spec() {
            return Err(Error::Usage("operands live in different rings".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{PrimeField, Rationals};
    use proptest::prelude::*;

    fn qring() -> PolyRing<Rationals> {
        PolyRing::grevlex(Rationals, &["x", "y"]).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = qring();
        let x = r.var(0);
        let y = r.var(1);
        let lhs = r.mul(&r.add(&x, &y), &r.sub(&x, &y));
        assert_eq!(lhs, r.parse("x^2 - y^2").unwrap());
        let f = r.parse("x^2 - y").unwrap();
        assert_eq!(r.pow(&f, 0), r.one());
        assert!(r.mul(&f, &r.zero()).is_zero());
    }

    #[test]
    fn derivative_examples() {
        let r = qring();
        let f = r.parse("x^4 + y^5 + x*y^4").unwrap();
        assert_eq!(r.partial_derivative(&f, 0), r.parse("4*x^3 + y^4").unwrap());
        for (a, b) in [(2u16, 3u16), (3, 5), (4, 4)] {
            let g = r.monomial(Monomial::from_exponents(&[a, b]), r.field().one());
            let expected = r.monomial(
                Monomial::from_exponents(&[a, b - 1]),
                r.field().from_i64(b as i64),
            );
            assert_eq!(r.partial_derivative(&g, 1), expected);
        }
        assert!(r.partial_derivative(&r.from_i64(7), 0).is_zero());
    }

    #[test]
    fn evaluate_at_origin_examples() {
        let r = qring();
        assert_eq!(
            r.evaluate_at_origin(&r.parse("1 + x").unwrap()),
            r.field().one()
        );
        assert_eq!(
            r.evaluate_at_origin(&r.parse("x^2*y").unwrap()),
            r.field().zero()
        );
        let c = r.parse("3/4").unwrap();
        assert_eq!(
            r.evaluate_at_origin(&c),
            r.field().from_ratio(&3.into(), &4.into()).unwrap()
        );
    }

    #[test]
    fn orders_agree_on_textbook_cases() {
        let a = Monomial::from_exponents(&[1, 0, 2]);
        let b = Monomial::from_exponents(&[0, 3, 0]);
        assert_eq!(MonomialOrder::Lex.cmp(&a, &b), Ordering::Greater);
        assert_eq!(MonomialOrder::Grevlex.cmp(&a, &b), Ordering::Less);
        // x*z vs y^2 in grevlex: equal degree, the last variable decides
        let xz = Monomial::from_exponents(&[1, 0, 1]);
        let yy = Monomial::from_exponents(&[0, 2, 0]);
        assert_eq!(MonomialOrder::Grevlex.cmp(&xz, &yy), Ordering::Less);
        let elim = MonomialOrder::BlockElimination { front: 1 };
        let t = Monomial::from_exponents(&[1, 0, 0]);
        let big = Monomial::from_exponents(&[0, 9, 9]);
        assert_eq!(elim.cmp(&t, &big), Ordering::Greater);
        let weighted = MonomialOrder::GradedThenGrevlex {
            weights: vec![0, 0, 1],
        };
        assert_eq!(weighted.cmp(&Monomial::var(2, 1), &big), Ordering::Less);
    }

    #[test]
    fn exact_division() {
        let r = qring();
        let a = r.parse("x^3 - y^3").unwrap();
        let b = r.parse("x - y").unwrap();
        assert_eq!(
            r.divide_exact(&a, &b).unwrap(),
            r.parse("x^2 + x*y + y^2").unwrap()
        );
        assert!(r.divide_exact(&r.parse("x^2 + 1").unwrap(), &b).is_none());
    }

    #[test]
    fn constructor_errors() {
        assert!(PolyRing::grevlex(Rationals, &["x", "x"]).is_err());
        assert!(PolyRing::grevlex(Rationals, &[] as &[&str]).is_err());
        assert!(PolyRing::grevlex(Rationals, &["1x"]).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial<num_rational::BigRational>> {
        proptest::collection::vec(((0u16..4, 0u16..4, 0u16..3), -5i64..6), 0..7).prop_map(|ts| {
            let r = PolyRing::grevlex(Rationals, &["x", "y", "z"]).unwrap();
            let terms = ts
                .into_iter()
                .map(|((a, b, c), k)| (Monomial::from_exponents(&[a, b, c]), r.field().from_i64(k)))
                .collect();
            r.from_terms(terms)
        })
    }

    fn ring3() -> PolyRing<Rationals> {
        PolyRing::grevlex(Rationals, &["x", "y", "z"]).unwrap()
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(p in arb_poly()) {
            let r = ring3();
            prop_assert_eq!(r.parse(&r.render(&p)).unwrap(), p);
        }

        #[test]
        fn render_parse_round_trip_mod_p(p in arb_poly()) {
            let r = PolyRing::grevlex(PrimeField::new(32003).unwrap(), &["x", "y", "z"]).unwrap();
            let q = r.parse(&ring3().render(&p)).unwrap();
            prop_assert_eq!(r.parse(&r.render(&q)).unwrap(), q);
        }

        #[test]
        fn product_rule(p in arb_poly(), q in arb_poly(), i in 0usize..3) {
            let r = ring3();
            let lhs = r.partial_derivative(&r.mul(&p, &q), i);
            let rhs = r.add(
                &r.mul(&p, &r.partial_derivative(&q, i)),
                &r.mul(&q, &r.partial_derivative(&p, i)),
            );
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn pow_matches_repeated_mul(p in arb_poly(), k in 0u32..6) {
            let r = ring3();
            let mut expected = r.one();
            for _ in 0..k {
                expected = r.mul(&expected, &p);
            }
            prop_assert_eq!(r.pow(&p, k), expected);
        }

        #[test]
        fn orders_are_multiplicative(
            a in (0u16..5, 0u16..5, 0u16..5),
            b in (0u16..5, 0u16..5, 0u16..5),
            w in (0u16..3, 0u16..3, 0u16..3),
        ) {
            let a = Monomial::from_exponents(&[a.0, a.1, a.2]);
            let b = Monomial::from_exponents(&[b.0, b.1, b.2]);
            let w = Monomial::from_exponents(&[w.0, w.1, w.2]);
            for order in [
                MonomialOrder::Lex,
                MonomialOrder::Grevlex,
                MonomialOrder::BlockElimination { front: 1 },
                MonomialOrder::GradedThenGrevlex { weights: vec![0, 1, 1] },
                MonomialOrder::EliminationThenGraded { front: 1, weights: vec![0, 0, 1] },
            ] {
                prop_assert_eq!(order.cmp(&a, &b), order.cmp(&a.mul(&w), &b.mul(&w)));
                if a != b {
                    prop_assert_ne!(order.cmp(&a, &b), Ordering::Equal);
                }
            }
        }
    }
}
