//! Ideal arithmetic and membership in the local ring at the origin.
//!
//! Localization is handled without power series: `g ∈ I·R_m` iff the colon
//! `(I : g)` contains a polynomial with nonzero constant term, and such a
//! polynomial `u` is returned as a [`LocalWitness`] (`u·g ∈ I` globally).

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::coeffs::Field;
use crate::error::{usage, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

/// Whether membership and containment are read in the local ring at the
/// origin, or in the polynomial ring itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Semantics {
    #[default]
    Local,
    Global,
}

/// `unit · target ∈ ideal` with `unit(0) ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalWitness<E> {
    pub unit: Polynomial<E>,
    pub target: Polynomial<E>,
}

impl<E: Clone + PartialEq> LocalWitness<E> {
    pub fn is_trivial<F: Field<Elem = E>>(&self, ring: &PolyRing<F>) -> bool {
        self.unit == ring.one()
    }

    /// Re-checks the witness against `ideal` by a global normal form.
    pub fn verify<F: Field<Elem = E>>(&self, ideal: &Ideal<F>) -> bool {
        let ring = ideal.ring();
        ring.is_local_unit(&self.unit) && ideal.contains(&ring.mul(&self.unit, &self.target))
    }
}

pub struct Ideal<F: Field> {
    ring: PolyRing<F>,
    generators: Vec<Polynomial<F::Elem>>,
    bases: RwLock<HashMap<MonomialOrder, Arc<GroebnerBasis<F>>>>,
    /// Local units that already served as witnesses; tried before a colon.
    units: RwLock<Vec<Polynomial<F::Elem>>>,
}

impl<F: Field> Clone for Ideal<F> {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            bases: RwLock::new(self.bases.read().unwrap().clone()),
            units: RwLock::new(self.units.read().unwrap().clone()),
        }
    }
}

impl<F: Field> std::fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|g| self.ring.render(g))
            .collect();
        write!(f, "Ideal({})", gens.join(", "))
    }
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped and duplicates (up to scaling) removed.
    pub fn new(ring: &PolyRing<F>, generators: Vec<Polynomial<F::Elem>>) -> Self {
        let mut gens: Vec<Polynomial<F::Elem>> = Vec::with_capacity(generators.len());
        let mut seen = HashSet::new();
        for g in generators {
            if g.is_zero() {
                continue;
            }
            let g = ring.canonical(&g);
            if seen.insert(ring.monic(&g)) {
                gens.push(g);
            }
        }
        Ideal {
            ring: ring.clone(),
            generators: gens,
            bases: RwLock::new(HashMap::new()),
            units: RwLock::new(Vec::new()),
        }
    }

    pub fn parse(ring: &PolyRing<F>, texts: &[&str]) -> Result<Self> {
        let gens = texts
            .iter()
            .map(|t| ring.parse(t))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(ring, gens))
    }

    pub fn unit(ring: &PolyRing<F>) -> Self {
        Self::new(ring, vec![ring.one()])
    }

    pub fn zero(ring: &PolyRing<F>) -> Self {
        Self::new(ring, Vec::new())
    }

    pub fn principal(ring: &PolyRing<F>, g: Polynomial<F::Elem>) -> Self {
        Self::new(ring, vec![g])
    }

    /// The maximal ideal of the origin.
    pub fn maximal(ring: &PolyRing<F>) -> Self {
        Self::new(ring, (0..ring.nvars()).map(|i| ring.var(i)).collect())
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F::Elem>] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Reduced basis under the ring's order, computed once.
    pub fn groebner_basis(&self) -> Arc<GroebnerBasis<F>> {
        self.groebner_basis_for(self.ring.order())
    }

    pub fn groebner_basis_for(&self, order: &MonomialOrder) -> Arc<GroebnerBasis<F>> {
        if let Some(gb) = self.bases.read().unwrap().get(order) {
            return gb.clone();
        }
        let ring = self.ring.with_order(order.clone());
        let gb = Arc::new(buchberger(&ring, &self.generators));
        self.bases
            .write()
            .unwrap()
            .entry(order.clone())
            .or_insert(gb)
            .clone()
    }

    fn seed_basis(&self, gb: GroebnerBasis<F>) {
        self.bases
            .write()
            .unwrap()
            .insert(gb.order().clone(), Arc::new(gb));
    }

    /// A cached reduced basis when it is shorter than the generator list.
    fn compact_generators(&self) -> Vec<Polynomial<F::Elem>> {
        let bases = self.bases.read().unwrap();
        let best = bases
            .get(self.ring.order())
            .or_else(|| bases.values().min_by_key(|gb| gb.elements().len()));
        match best {
            Some(gb) if gb.elements().len() < self.generators.len() => gb
                .elements()
                .iter()
                .map(|g| self.ring.canonical(g))
                .collect(),
            _ => self.generators.clone(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.generators
            .iter()
            .any(|g| g.len() == 1 && g.leading_monomial() == Some(&Monomial::ONE))
            || self.groebner_basis().is_unit()
    }

    pub fn normal_form(&self, p: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        self.groebner_basis().normal_form(p)
    }

    pub fn contains(&self, p: &Polynomial<F::Elem>) -> bool {
        p.is_zero() || (!self.is_zero() && self.normal_form(p).is_zero())
    }

    pub fn is_subset(&self, other: &Ideal<F>) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn equals(&self, other: &Ideal<F>) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }

    fn check_ring(&self, other: &Ideal<F>) -> Result<()> {
        self.ring.check_same_ring(&other.ring)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ring(other)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ok(Ideal::new(&self.ring, gens))
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ring(other)?;
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                gens.push(self.ring.mul(a, b));
            }
        }
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `I^k` generated by all k-fold products of generators; `I^0 = (1)`.
    pub fn power(&self, k: u32) -> Ideal<F> {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..k {
            acc = self.product(&acc).expect("same ring");
        }
        acc
    }

    /// Elements free of the first `k` variables, as an ideal of the ring on
    /// the remaining variables. The result carries its reduced basis.
    pub fn eliminate_front(&self, k: usize) -> Result<Ideal<F>> {
        if k == 0 {
            return Ok(self.clone());
        }
        if k >= self.ring.nvars() {
            return Err(usage("cannot eliminate every variable"));
        }
        let elim = MonomialOrder::BlockElimination { front: k };
        let gb = self.groebner_basis_for(&elim);
        let names = &self.ring.names()[k..];
        let target = PolyRing::new(self.ring.field().clone(), names, MonomialOrder::Grevlex)?;
        let map = shift_down_map(self.ring.nvars(), k);
        let kept: Vec<Polynomial<F::Elem>> = gb
            .elements()
            .iter()
            .filter(|g| g.monomials().all(|m| (0..k).all(|i| m.exponent(i) == 0)))
            .map(|g| self.ring.map_variables(g, &map, &target))
            .collect();
        let result = Ideal::new(&target, kept.clone());
        result.seed_basis(GroebnerBasis::from_reduced(target, kept));
        Ok(result)
    }

    /// Eliminates an arbitrary set of variables by moving them to the front.
    pub fn eliminate(&self, vars: &[usize]) -> Result<Ideal<F>> {
        if vars.is_empty() {
            return Ok(self.clone());
        }
        let n = self.ring.nvars();
        let mut perm: Vec<usize> = vec![0; n];
        let mut next = 0;
        for &v in vars {
            perm[v] = next;
            next += 1;
        }
        for (i, slot) in perm.iter_mut().enumerate() {
            if !vars.contains(&i) {
                *slot = next;
                next += 1;
            }
        }
        let mut names = vec![String::new(); n];
        for i in 0..n {
            names[perm[i]] = self.ring.names()[i].clone();
        }
        let front_ring = PolyRing::new(self.ring.field().clone(), &names, MonomialOrder::Grevlex)?;
        let moved = Ideal::new(
            &front_ring,
            self.generators
                .iter()
                .map(|g| self.ring.map_variables(g, &perm, &front_ring))
                .collect(),
        );
        moved.eliminate_front(vars.len())
    }

    /// Rewrites this ideal with a different default order on the same ring.
    pub fn reorder(self, order: MonomialOrder) -> Ideal<F> {
        if &order == self.ring.order() {
            return self;
        }
        let ring = self.ring.with_order(order);
        let gens = self.generators.iter().map(|g| ring.canonical(g)).collect();
        Ideal {
            ring,
            generators: gens,
            bases: self.bases,
            units: self.units,
        }
    }

    /// `I ∩ K` as the `t`-free part of `t·I + (1 − t)·K`.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        let (ext, map) = extend_front(&self.ring, "t_")?;
        let t = ext.var(0);
        let one_minus_t = ext.sub(&ext.one(), &t);
        let mut gens = Vec::with_capacity(self.generators.len() + other.generators.len());
        for g in &self.compact_generators() {
            gens.push(ext.mul(&t, &self.ring.map_variables(g, &map, &ext)));
        }
        for g in &other.compact_generators() {
            gens.push(ext.mul(&one_minus_t, &self.ring.map_variables(g, &map, &ext)));
        }
        let gb = buchberger(&ext, &gens);
        let back = shift_down_map(ext.nvars(), 1);
        let elim_rest = self.ring.with_order(MonomialOrder::Grevlex);
        let kept: Vec<Polynomial<F::Elem>> = gb
            .elements()
            .iter()
            .filter(|g| g.monomials().all(|m| m.exponent(0) == 0))
            .map(|g| ext.map_variables(g, &back, &elim_rest))
            .collect();
        let result = Ideal::new(&elim_rest, kept.clone());
        result.seed_basis(GroebnerBasis::from_reduced(elim_rest, kept));
        Ok(result.reorder(self.ring.order().clone()))
    }

    /// `(I : g) = (I ∩ (g)) / g`; the unit ideal when `g = 0`.
    pub fn colon(&self, g: &Polynomial<F::Elem>) -> Ideal<F> {
        let ring = &self.ring;
        if g.is_zero() || self.contains(g) {
            return Ideal::unit(ring);
        }
        if g.len() == 1 && g.leading_monomial() == Some(&Monomial::ONE) {
            return self.clone();
        }
        let principal = Ideal::principal(ring, g.clone());
        let inter = self.intersect(&principal).expect("same ring");
        let quotients = inter
            .generators
            .iter()
            .map(|h| {
                ring.divide_exact(h, g)
                    .expect("intersection with (g) is divisible by g")
            })
            .collect();
        Ideal::new(ring, quotients)
    }

    /// `(I : g^k)` as `k` successive colons by `g`, which keeps every
    /// intersection at the degree of `g`.
    pub fn colon_power(&self, g: &Polynomial<F::Elem>, k: u32) -> Ideal<F> {
        let mut acc = self.clone();
        for _ in 0..k {
            if acc.is_unit() {
                break;
            }
            acc = acc.colon(g);
        }
        acc
    }

    /// `(I : K) = ∩ (I : k_j)` over the generators of `K`.
    pub fn colon_ideal(&self, other: &Ideal<F>) -> Result<Ideal<F>> {
        self.check_ring(other)?;
        let mut acc = Ideal::unit(&self.ring);
        for g in &other.generators {
            let c = self.colon(g);
            acc = if acc.is_unit() { c } else { acc.intersect(&c)? };
        }
        Ok(acc)
    }

    /// Membership in `I·R_m`, with a witness that re-verifies globally.
    pub fn member_local(&self, g: &Polynomial<F::Elem>) -> Option<LocalWitness<F::Elem>> {
        let ring = &self.ring;
        if self.contains(g) {
            return Some(LocalWitness {
                unit: ring.one(),
                target: g.clone(),
            });
        }
        if self.is_zero() {
            return None;
        }
        let cached: Vec<Polynomial<F::Elem>> = self.units.read().unwrap().clone();
        for u in cached {
            if self.contains(&ring.mul(&u, g)) {
                return Some(LocalWitness {
                    unit: u,
                    target: g.clone(),
                });
            }
        }
        let colon = self.colon(g);
        let unit = colon
            .generators
            .iter()
            .filter(|u| ring.is_local_unit(u))
            .min_by_key(|u| u.len())?
            .clone();
        let witness = LocalWitness {
            unit,
            target: g.clone(),
        };
        debug_assert!(witness.verify(self));
        self.units.write().unwrap().push(witness.unit.clone());
        Some(witness)
    }

    pub fn is_member_local(&self, g: &Polynomial<F::Elem>) -> bool {
        self.member_local(g).is_some()
    }

    pub fn is_member(&self, g: &Polynomial<F::Elem>, semantics: Semantics) -> bool {
        match semantics {
            Semantics::Local => self.is_member_local(g),
            Semantics::Global => self.contains(g),
        }
    }

    /// Generators of `self` not already in `other` globally.
    fn residual_generators(&self, other: &Ideal<F>) -> Vec<Polynomial<F::Elem>> {
        let mut out: Vec<Polynomial<F::Elem>> = Vec::new();
        for g in &self.generators {
            let r = other.normal_form(g);
            if r.is_zero() {
                continue;
            }
            let r = self.ring.monic(&r);
            if !out.contains(&r) {
                out.push(r);
            }
        }
        // cheapest targets first
        out.sort_by_key(|p| p.len());
        out
    }

    pub fn is_subset_local(&self, other: &Ideal<F>) -> bool {
        if other.is_zero() {
            return self.is_zero();
        }
        self.residual_generators(other)
            .iter()
            .all(|r| other.is_member_local(r))
    }

    pub fn is_subset_with(&self, other: &Ideal<F>, semantics: Semantics) -> bool {
        match semantics {
            Semantics::Local => self.is_subset_local(other),
            Semantics::Global => self.is_subset(other),
        }
    }

    pub fn equals_local(&self, other: &Ideal<F>) -> bool {
        self.is_subset_local(other) && other.is_subset_local(self)
    }

    /// Whether the ideal is the whole local ring, i.e. not inside `m`.
    pub fn is_unit_local(&self) -> bool {
        self.generators.iter().any(|g| self.ring.is_local_unit(g)) || self.is_unit()
    }
}

/// Ring with a fresh variable in slot 0, and the map from old slots.
pub(crate) fn extend_front<F: Field>(
    ring: &PolyRing<F>,
    name: &str,
) -> Result<(PolyRing<F>, Vec<usize>)> {
    let mut fresh = name.to_string();
    while ring.var_index(&fresh).is_some() {
        fresh.push('_');
    }
    let mut names = vec![fresh];
    names.extend(ring.names().iter().cloned());
    let ext = PolyRing::new(
        ring.field().clone(),
        &names,
        MonomialOrder::BlockElimination { front: 1 },
    )?;
    Ok((ext, (1..=ring.nvars()).collect()))
}

/// Map for dropping the first `k` slots of an `n`-variable ring. Slots below
/// `k` must be zero in every mapped monomial.
pub(crate) fn shift_down_map(n: usize, k: usize) -> Vec<usize> {
    (0..n).map(|i| i.saturating_sub(k)).collect()
}
