//! Buchberger's algorithm with the Gebauer–Möller criteria, full normal
//! forms, and optional cofactor tracking back to the input generators.
//!
//! The engine runs over the field's division-free domain (integers for `Q`),
//! keeping every polynomial primitive; results are converted to monic form.

use crate::coeffs::{DomainElem, EngineDomain, Field};
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

type Terms<E> = Vec<(Monomial, E)>;

/// Reduced Gröbner basis: monic, inter-reduced, sorted by increasing
/// leading monomial. The ring's order is the basis order.
#[derive(Debug, Clone)]
pub struct GroebnerBasis<F: Field> {
    ring: PolyRing<F>,
    elements: Vec<Polynomial<F::Elem>>,
    /// `elements` as primitive polynomials over the engine domain.
    work: Vec<Terms<DomainElem<F>>>,
    /// `cofactors[k][j]`: coefficient of input generator `j` in `elements[k]`.
    cofactors: Option<Vec<Vec<Polynomial<F::Elem>>>>,
    generator_count: usize,
}

/// Cofactors expressing `target = Σ cofactors[j] · generators[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate<E> {
    pub cofactors: Vec<Polynomial<E>>,
}

impl<E: Clone> Certificate<E> {
    pub fn expand<F: Field<Elem = E>>(
        &self,
        ring: &PolyRing<F>,
        generators: &[Polynomial<E>],
    ) -> Polynomial<E> {
        assert_eq!(self.cofactors.len(), generators.len());
        self.cofactors
            .iter()
            .zip(generators)
            .fold(ring.zero(), |acc, (c, g)| {
                ring.add(&acc, &ring.mul(c, &ring.canonical(g)))
            })
    }
}

/// `a·p − b·m·g`, dropping cancelled terms. Both inputs sorted for `order`.
fn combine<D: EngineDomain>(
    dom: &D,
    order: &MonomialOrder,
    a: &D::C,
    p: &[(Monomial, D::C)],
    b: &D::C,
    m: &Monomial,
    g: &[(Monomial, D::C)],
) -> Terms<D::C> {
    let a_one = dom.is_one(a);
    let mut out = Vec::with_capacity(p.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let zero = dom.zero();
    while i < p.len() || j < g.len() {
        let gm = g.get(j).map(|(gm, _)| gm.mul(m));
        let ord = match (p.get(i), gm.as_ref()) {
            (Some((pm, _)), Some(gm)) => order.cmp(pm, gm),
            (Some(_), None) => std::cmp::Ordering::Greater,
            (None, _) => std::cmp::Ordering::Less,
        };
        match ord {
            std::cmp::Ordering::Greater => {
                let (pm, pc) = &p[i];
                out.push((*pm, if a_one { pc.clone() } else { dom.mul(a, pc) }));
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((gm.unwrap(), dom.mul_sub(a, &zero, b, &g[j].1)));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = dom.mul_sub(a, &p[i].1, b, &g[j].1);
                if !dom.is_zero(&c) {
                    out.push((p[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

struct Element<F: Field> {
    poly: Terms<DomainElem<F>>,
    lm: Monomial,
    mask: u16,
    active: bool,
    /// `poly` (read in the field) as a combination of the inputs.
    cof: Option<Vec<Polynomial<F::Elem>>>,
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine<'a, F: Field> {
    ring: &'a PolyRing<F>,
    dom: F::Domain,
    track: bool,
    /// Coefficient size bound in bits.
    limit: u64,
    basis: Vec<Element<F>>,
    pairs: Vec<Pair>,
}

struct Reducer<'b, F: Field> {
    id: usize,
    lm: Monomial,
    mask: u16,
    terms: &'b [(Monomial, DomainElem<F>)],
    cof: Option<&'b [Polynomial<F::Elem>]>,
}

/// Shortest reducer whose leading monomial divides `m`, lowest id on ties.
fn find_reducer<'r, 'b, F: Field>(
    reducers: &'r [Reducer<'b, F>],
    m: &Monomial,
) -> Option<&'r Reducer<'b, F>> {
    let mask = m.support_mask();
    let mut best: Option<&Reducer<'b, F>> = None;
    for r in reducers {
        if r.mask & !mask != 0 || !r.lm.divides(m) {
            continue;
        }
        if best.is_none_or(|b| r.terms.len() < b.terms.len()) {
            best = Some(r);
        }
    }
    best
}

/// Side information carried through a reduction `p → s·p − Σ …`.
enum Track<E> {
    Off,
    /// The scale `s` only.
    Scale(E),
    /// The scale and quotient terms per reducer id.
    Quotients(E, Vec<Terms<E>>),
    /// The current polynomial as a combination of the inputs.
    Cofactors(Vec<Polynomial<E>>),
}

impl<E: Clone> Track<E> {
    fn step<F: Field<Elem = E>>(
        &mut self,
        ring: &PolyRing<F>,
        a: &E,
        b: &E,
        m: &Monomial,
        r: &Reducer<'_, F>,
    ) {
        let field = ring.field();
        let a_one = field.is_one(a);
        match self {
            Track::Off => {}
            Track::Scale(s) => {
                if !a_one {
                    *s = field.mul(s, a);
                }
            }
            Track::Quotients(s, q) => {
                if !a_one {
                    *s = field.mul(s, a);
                    for t in q.iter_mut().flatten() {
                        t.1 = field.mul(&t.1, a);
                    }
                }
                q[r.id].push((*m, b.clone()));
            }
            Track::Cofactors(cof) => {
                let rc = r.cof.expect("reducer carries cofactors");
                for (c, g) in cof.iter_mut().zip(rc) {
                    let scaled = if a_one { c.clone() } else { ring.scale(c, a) };
                    *c = if g.is_zero() {
                        scaled
                    } else {
                        ring.sub(&scaled, &ring.mul_monomial(g, m, b))
                    };
                }
            }
        }
    }

    fn divide<F: Field<Elem = E>>(&mut self, ring: &PolyRing<F>, d: &E) {
        let field = ring.field();
        if field.is_one(d) {
            return;
        }
        let inv = field.inv(d).expect("nonzero content");
        match self {
            Track::Off => {}
            Track::Scale(s) => *s = field.mul(s, &inv),
            Track::Quotients(s, q) => {
                *s = field.mul(s, &inv);
                for t in q.iter_mut().flatten() {
                    t.1 = field.mul(&t.1, &inv);
                }
            }
            Track::Cofactors(cof) => {
                for c in cof.iter_mut() {
                    *c = ring.scale(c, &inv);
                }
            }
        }
    }
}

/// Content is removed every this many non-trivially scaled steps.
const CONTENT_PERIOD: usize = 8;

/// Reduction of `p` past its first `start` terms, which are kept (and
/// rescaled with the rest). With `full` unset only the leading term is made
/// irreducible. The result is not normalized.
#[allow(clippy::too_many_arguments)]
fn reduce_by<F: Field>(
    ring: &PolyRing<F>,
    dom: &F::Domain,
    reducers: &[Reducer<'_, F>],
    mut p: Terms<DomainElem<F>>,
    start: usize,
    full: bool,
    limit: u64,
    track: &mut Track<F::Elem>,
) -> Option<Terms<DomainElem<F>>> {
    let field = ring.field();
    let order = ring.order();
    let mut rem: Terms<DomainElem<F>> = p.drain(..start.min(p.len())).collect();
    let mut scaled_steps = 0;
    let mut k = 0;
    while k < p.len() {
        let m = p[k].0;
        match find_reducer(reducers, &m) {
            Some(r) => {
                let (a, b) = dom.multipliers(&p[k].1, &r.terms[0].1);
                let qm = m.div(&r.lm);
                let a_one = dom.is_one(&a);
                if !a_one {
                    for t in rem.iter_mut() {
                        t.1 = dom.mul(&a, &t.1);
                    }
                }
                p = combine(dom, order, &a, &p[k..], &b, &qm, r.terms);
                k = 0;
                if !matches!(track, Track::Off) {
                    track.step(ring, &field.from_domain(&a), &field.from_domain(&b), &qm, r);
                }
                if !a_one {
                    scaled_steps += 1;
                    if scaled_steps % CONTENT_PERIOD == 0 {
                        let mut refs: Vec<&mut DomainElem<F>> = rem
                            .iter_mut()
                            .chain(p.iter_mut())
                            .map(|t| &mut t.1)
                            .collect();
                        let d = dom.normalize(&mut refs);
                        track.divide(ring, &field.from_domain(&d));
                        if p.first().is_some_and(|t| dom.bits(&t.1) > limit) {
                            return None;
                        }
                    }
                }
            }
            None => {
                if !full {
                    rem.extend(p.drain(k..));
                    return Some(rem);
                }
                k += 1;
                rem.push(p[k - 1].clone());
            }
        }
    }
    Some(rem)
}

/// Divides out the content, leading coefficient first.
fn normalize_terms<F: Field>(
    ring: &PolyRing<F>,
    dom: &F::Domain,
    p: &mut Terms<DomainElem<F>>,
    track: &mut Track<F::Elem>,
) {
    let mut refs: Vec<&mut DomainElem<F>> = p.iter_mut().map(|t| &mut t.1).collect();
    let d = dom.normalize(&mut refs);
    track.divide(ring, &ring.field().from_domain(&d));
}

/// The field polynomial `w / lc(w)`.
fn monic_from_domain<F: Field>(
    ring: &PolyRing<F>,
    w: &[(Monomial, DomainElem<F>)],
) -> Polynomial<F::Elem> {
    let field = ring.field();
    let lc = field.from_domain(&w[0].1);
    let inv = field.inv(&lc).expect("nonzero leading coefficient");
    let terms = w
        .iter()
        .map(|(m, c)| {
            let c = field.from_domain(c);
            (
                *m,
                if field.is_one(&inv) {
                    c
                } else {
                    field.mul(&c, &inv)
                },
            )
        })
        .collect();
    Polynomial::from_sorted_terms(terms)
}

/// `p` sorted for the ring, converted to the domain, with its scale.
fn to_work<F: Field>(
    ring: &PolyRing<F>,
    p: &Polynomial<F::Elem>,
) -> (Terms<DomainElem<F>>, F::Elem) {
    let p = ring.canonical(p);
    let coeffs: Vec<F::Elem> = p.terms().iter().map(|t| t.1.clone()).collect();
    let (scaled, s) = ring.field().to_domain(&coeffs);
    let terms = p.terms().iter().map(|t| t.0).zip(scaled).collect();
    (terms, s)
}

impl<'a, F: Field> Engine<'a, F> {
    fn reducers(&self, skip: Option<usize>) -> Vec<Reducer<'_, F>> {
        self.basis
            .iter()
            .enumerate()
            .filter(|(k, e)| e.active && Some(*k) != skip)
            .map(|(k, e)| Reducer {
                id: k,
                lm: e.lm,
                mask: e.mask,
                terms: &e.poly,
                cof: e.cof.as_deref(),
            })
            .collect()
    }

    fn track_for(&self, cof: Option<Vec<Polynomial<F::Elem>>>) -> Track<F::Elem> {
        match cof {
            Some(c) => Track::Cofactors(c),
            None => Track::Off,
        }
    }

    fn untrack(track: Track<F::Elem>) -> Option<Vec<Polynomial<F::Elem>>> {
        match track {
            Track::Cofactors(c) => Some(c),
            _ => None,
        }
    }

    /// Reduces and normalizes; `Ok(None)` when `p` reduces to zero and
    /// `Err(Oversize)` once coefficients outgrow the limit.
    #[allow(clippy::type_complexity)]
    fn reduce_new(
        &self,
        p: Terms<DomainElem<F>>,
        cof: Option<Vec<Polynomial<F::Elem>>>,
    ) -> Result<Option<(Terms<DomainElem<F>>, Option<Vec<Polynomial<F::Elem>>>)>, Oversize> {
        let mut track = self.track_for(cof);
        let reducers = self.reducers(None);
        let mut r = reduce_by(
            self.ring, &self.dom, &reducers, p, 0, false, self.limit, &mut track,
        )
        .ok_or(Oversize)?;
        if r.is_empty() {
            return Ok(None);
        }
        normalize_terms(self.ring, &self.dom, &mut r, &mut track);
        if r.iter().any(|t| self.dom.bits(&t.1) > self.limit) {
            return Err(Oversize);
        }
        Ok(Some((r, Self::untrack(track))))
    }

    /// Inserts a normalized, reduced element and applies the Gebauer–Möller update.
    fn insert(&mut self, poly: Terms<DomainElem<F>>, cof: Option<Vec<Polynomial<F::Elem>>>) {
        let lm = poly[0].0;
        let h = self.basis.len();

        // chain criterion on existing pairs
        self.pairs.retain(|p| {
            !(lm.divides(&p.lcm)
                && self.basis[p.i].lm.lcm(&lm) != p.lcm
                && self.basis[p.j].lm.lcm(&lm) != p.lcm)
        });

        let mut candidates: Vec<(usize, Monomial, bool)> = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, e)| e.active)
            .map(|(g, e)| (g, e.lm.lcm(&lm), e.lm.is_coprime(&lm)))
            .collect();

        // drop (h, g) when another new pair's lcm properly divides its lcm
        let lcms: Vec<Monomial> = candidates.iter().map(|c| c.1).collect();
        candidates.retain(|(_, l, _)| !lcms.iter().any(|o| o != l && o.divides(l)));

        // among equal lcms keep one, none if any of them is coprime
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        let mut seen: Vec<Monomial> = Vec::new();
        for (g, l, _) in &candidates {
            if seen.contains(l) {
                continue;
            }
            seen.push(*l);
            let group_coprime = candidates.iter().any(|(_, l2, cp)| l2 == l && *cp);
            if !group_coprime {
                kept.push((*g, *l));
            }
        }

        for e in self.basis.iter_mut() {
            if e.active && lm.divides(&e.lm) {
                e.active = false;
            }
        }
        for (g, l) in kept {
            self.pairs.push(Pair { i: g, j: h, lcm: l });
        }
        self.basis.push(Element {
            mask: lm.support_mask(),
            lm,
            poly,
            active: true,
            cof,
        });
    }

    fn select_pair(&mut self) -> Option<Pair> {
        let order = self.ring.order();
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let ord = order
                .cmp(&a.lcm, &b.lcm)
                .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)));
            if ord == std::cmp::Ordering::Less {
                best = k;
            }
        }
        if self.pairs.is_empty() {
            None
        } else {
            Some(self.pairs.swap_remove(best))
        }
    }

    fn s_polynomial(
        &self,
        pair: &Pair,
    ) -> (Terms<DomainElem<F>>, Option<Vec<Polynomial<F::Elem>>>) {
        let dom = &self.dom;
        let field = self.ring.field();
        let (gi, gj) = (&self.basis[pair.i], &self.basis[pair.j]);
        let mi = pair.lcm.div(&gi.lm);
        let mj = pair.lcm.div(&gj.lm);
        let (a, b) = dom.multipliers(&gi.poly[0].1, &gj.poly[0].1);
        let left: Terms<DomainElem<F>> = gi
            .poly
            .iter()
            .map(|(m, c)| (m.mul(&mi), c.clone()))
            .collect();
        let s = combine(dom, self.ring.order(), &a, &left, &b, &mj, &gj.poly);
        let cof = if self.track {
            let ring = self.ring;
            let (fa, fb) = (field.from_domain(&a), field.from_domain(&b));
            let ci = gi.cof.as_ref().unwrap();
            let cj = gj.cof.as_ref().unwrap();
            Some(
                ci.iter()
                    .zip(cj)
                    .map(|(x, y)| {
                        ring.sub(
                            &ring.mul_monomial(x, &mi, &fa),
                            &ring.mul_monomial(y, &mj, &fb),
                        )
                    })
                    .collect(),
            )
        } else {
            None
        };
        (s, cof)
    }

    fn run(&mut self) -> Result<(), Oversize> {
        while let Some(pair) = self.select_pair() {
            let (s, cof) = self.s_polynomial(&pair);
            if s.is_empty() {
                continue;
            }
            if let Some((r, cof)) = self.reduce_new(s, cof)? {
                self.insert(r, cof);
            }
        }
        Ok(())
    }

    /// Minimal basis, then each element tail-reduced against the others.
    fn finish(
        mut self,
    ) -> (
        Vec<Polynomial<F::Elem>>,
        Vec<Terms<DomainElem<F>>>,
        Option<Vec<Vec<Polynomial<F::Elem>>>>,
    ) {
        let order = self.ring.order().clone();
        let mut idx: Vec<usize> = (0..self.basis.len())
            .filter(|&k| self.basis[k].active)
            .collect();
        idx.sort_by(|&a, &b| order.cmp(&self.basis[a].lm, &self.basis[b].lm));
        // an active set has pairwise non-dividing leading monomials, but unit
        // inputs or equal leading monomials may still slip in
        let mut minimal: Vec<usize> = Vec::new();
        for &k in &idx {
            if !minimal
                .iter()
                .any(|&j| self.basis[j].lm.divides(&self.basis[k].lm))
            {
                minimal.push(k);
            }
        }
        for e in self.basis.iter_mut() {
            e.active = false;
        }
        for &k in &minimal {
            self.basis[k].active = true;
        }
        let ring = self.ring;
        let field = ring.field();
        let mut elements = Vec::with_capacity(minimal.len());
        let mut work = Vec::with_capacity(minimal.len());
        let mut cofactors = if self.track { Some(Vec::new()) } else { None };
        for &k in &minimal {
            let mut track = self.track_for(self.basis[k].cof.clone());
            let mut w = reduce_by(
                ring,
                &self.dom,
                &self.reducers(Some(k)),
                self.basis[k].poly.clone(),
                1,
                true,
                u64::MAX,
                &mut track,
            )
            .expect("no size limit");
            normalize_terms(ring, &self.dom, &mut w, &mut track);
            elements.push(monic_from_domain(ring, &w));
            if let (Some(all), Track::Cofactors(c)) = (cofactors.as_mut(), track) {
                let inv = field
                    .inv(&field.from_domain(&w[0].1))
                    .expect("nonzero leading coefficient");
                all.push(c.iter().map(|x| ring.scale(x, &inv)).collect());
            }
            work.push(w);
        }
        (elements, work, cofactors)
    }
}

/// Raised when coefficients outgrow the engine's size limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Oversize;

fn seed<'a, F: Field>(
    ring: &'a PolyRing<F>,
    gens: &[Polynomial<F::Elem>],
    track: bool,
    limit: u64,
) -> Result<Engine<'a, F>, Oversize> {
    let mut engine = Engine {
        ring,
        dom: ring.field().domain(),
        track,
        limit,
        basis: Vec::new(),
        pairs: Vec::new(),
    };
    let m = gens.len();
    let mut order_idx: Vec<usize> = (0..m).filter(|&j| !gens[j].is_zero()).collect();
    let canon: Vec<Polynomial<F::Elem>> = gens.iter().map(|g| ring.canonical(g)).collect();
    order_idx.sort_by(|&a, &b| {
        ring.order()
            .cmp(
                canon[a].leading_monomial().unwrap(),
                canon[b].leading_monomial().unwrap(),
            )
            .then(a.cmp(&b))
    });
    for j in order_idx {
        let (w, s) = to_work(ring, &canon[j]);
        let cof = track.then(|| {
            let mut v = vec![ring.zero(); m];
            v[j] = ring.constant(s);
            v
        });
        if let Some((r, cof)) = engine.reduce_new(w, cof)? {
            engine.insert(r, cof);
        }
    }
    Ok(engine)
}

/// Reduced Gröbner basis of `gens` under `ring.order()`.
pub fn buchberger<F: Field>(ring: &PolyRing<F>, gens: &[Polynomial<F::Elem>]) -> GroebnerBasis<F> {
    if F::HAS_MODULAR_ROUTE {
        if let Ok(gb) = compute(ring, gens, false, DIRECT_LIMIT_BITS) {
            return gb;
        }
        if let Some(gb) = F::modular_basis(ring, gens) {
            return gb;
        }
    }
    compute(ring, gens, false, u64::MAX).expect("no size limit")
}

/// Runs the engine directly, never switching to modular images.
pub fn buchberger_direct<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Polynomial<F::Elem>],
) -> GroebnerBasis<F> {
    compute(ring, gens, false, u64::MAX).expect("no size limit")
}

/// As [`buchberger`], also expressing every basis element in the inputs.
pub fn buchberger_with_certificates<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Polynomial<F::Elem>],
) -> GroebnerBasis<F> {
    compute(ring, gens, true, u64::MAX).expect("no size limit")
}

/// Coefficient size at which exact computations over `Q` switch to
/// modular images.
const DIRECT_LIMIT_BITS: u64 = 2048;

fn compute<F: Field>(
    ring: &PolyRing<F>,
    gens: &[Polynomial<F::Elem>],
    track: bool,
    limit: u64,
) -> Result<GroebnerBasis<F>, Oversize> {
    let mut engine = seed(ring, gens, track, limit)?;
    engine.run()?;
    let (elements, work, cofactors) = engine.finish();
    Ok(GroebnerBasis {
        ring: ring.clone(),
        elements,
        work,
        cofactors,
        generator_count: gens.len(),
    })
}

/// `p = Σ cofactor_j · gens_j + r` with `r` the normal form of `p`.
pub fn normal_form_with_certificate<F: Field>(
    ring: &PolyRing<F>,
    p: &Polynomial<F::Elem>,
    gens: &[Polynomial<F::Elem>],
) -> (Polynomial<F::Elem>, Certificate<F::Elem>) {
    buchberger_with_certificates(ring, gens).reduce_with_certificate(p)
}

/// The S-polynomial of two monic-or-not polynomials, sorted for `ring.order()`.
pub fn s_polynomial<F: Field>(
    ring: &PolyRing<F>,
    a: &Polynomial<F::Elem>,
    b: &Polynomial<F::Elem>,
) -> Polynomial<F::Elem> {
    let a = ring.monic(&ring.canonical(a));
    let b = ring.monic(&ring.canonical(b));
    let (Some(la), Some(lb)) = (a.leading_monomial(), b.leading_monomial()) else {
        return ring.zero();
    };
    let l = la.lcm(lb);
    let one = ring.field().one();
    ring.sub(
        &ring.mul_monomial(&a, &l.div(la), &one),
        &ring.mul_monomial(&b, &l.div(lb), &one),
    )
}

/// Exhaustive division of `p` by an arbitrary list, in list order.
pub fn divide<F: Field>(
    ring: &PolyRing<F>,
    p: &Polynomial<F::Elem>,
    divisors: &[Polynomial<F::Elem>],
) -> (Vec<Polynomial<F::Elem>>, Polynomial<F::Elem>) {
    let field = ring.field();
    let divisors: Vec<Polynomial<F::Elem>> = divisors.iter().map(|d| ring.canonical(d)).collect();
    let mut quotients = vec![ring.zero(); divisors.len()];
    let mut rem = ring.zero();
    let mut p = ring.canonical(p);
    while let Some((m, c)) = p.terms().first().cloned() {
        let hit = divisors
            .iter()
            .position(|d| d.leading_monomial().is_some_and(|lm| lm.divides(&m)));
        match hit {
            Some(k) => {
                let d = &divisors[k];
                let q = field.div(&c, d.leading_coefficient().unwrap()).unwrap();
                let qm = m.div(d.leading_monomial().unwrap());
                let term = ring.monomial(qm, q);
                quotients[k] = ring.add(&quotients[k], &term);
                p = ring.sub(&p, &ring.mul(&term, d));
            }
            None => {
                let lead = ring.monomial(m, c);
                rem = ring.add(&rem, &lead);
                p = ring.sub(&p, &lead);
            }
        }
    }
    (quotients, rem)
}

/// Whether every S-polynomial of `basis` reduces to zero modulo `basis`.
pub fn satisfies_buchberger_criterion<F: Field>(
    ring: &PolyRing<F>,
    basis: &[Polynomial<F::Elem>],
) -> bool {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(ring, &basis[i], &basis[j]);
            if !divide(ring, &s, basis).1.is_zero() {
                return false;
            }
        }
    }
    true
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial<F::Elem>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        true
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].leading_monomial() == Some(&Monomial::ONE)
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.elements.is_empty()
    }

    fn reducers(&self) -> Vec<Reducer<'_, F>> {
        self.work
            .iter()
            .enumerate()
            .map(|(k, w)| {
                let lm = w[0].0;
                Reducer {
                    id: k,
                    lm,
                    mask: lm.support_mask(),
                    terms: w,
                    cof: None,
                }
            })
            .collect()
    }

    /// Reduces `p`, returning the domain remainder `r` and the tracker, whose
    /// scale `s` satisfies `r ≡ s·p`.
    fn reduce_terms(
        &self,
        p: &Polynomial<F::Elem>,
        full: bool,
        track: Track<F::Elem>,
    ) -> (Terms<DomainElem<F>>, Track<F::Elem>) {
        let field = self.ring.field();
        let (w, s0) = to_work(&self.ring, p);
        let mut track = match track {
            Track::Scale(_) => Track::Scale(s0),
            Track::Quotients(_, q) => Track::Quotients(s0, q),
            t => t,
        };
        let dom = field.domain();
        let r = reduce_by(
            &self.ring,
            &dom,
            &self.reducers(),
            w,
            0,
            full,
            u64::MAX,
            &mut track,
        )
        .expect("no size limit");
        (r, track)
    }

    fn unscale(&self, r: &[(Monomial, DomainElem<F>)], s: &F::Elem) -> Polynomial<F::Elem> {
        let field = self.ring.field();
        let inv = field.inv(s).expect("nonzero scale");
        Polynomial::from_sorted_terms(
            r.iter()
                .map(|(m, c)| (*m, field.mul(&field.from_domain(c), &inv)))
                .collect(),
        )
    }

    /// Normal form; `p` may be sorted for any order.
    pub fn normal_form(&self, p: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        let (r, track) = self.reduce_terms(p, true, Track::Scale(self.ring.field().one()));
        let Track::Scale(s) = track else {
            unreachable!()
        };
        self.unscale(&r, &s)
    }

    pub fn contains(&self, p: &Polynomial<F::Elem>) -> bool {
        if p.is_zero() {
            return true;
        }
        self.reduce_terms(p, false, Track::Off).0.is_empty()
    }

    /// Normal form plus quotients: `p = Σ q_k · elements[k] + r`.
    pub fn reduce_with_quotients(
        &self,
        p: &Polynomial<F::Elem>,
    ) -> (Polynomial<F::Elem>, Vec<Polynomial<F::Elem>>) {
        let field = self.ring.field();
        let slots = vec![Vec::new(); self.work.len()];
        let (r, track) = self.reduce_terms(p, true, Track::Quotients(field.one(), slots));
        let Track::Quotients(s, q) = track else {
            unreachable!()
        };
        let inv = field.inv(&s).expect("nonzero scale");
        // s·p = Σ q_k w_k + r with w_k = lc(w_k)·elements[k]
        let q = q
            .into_iter()
            .zip(&self.work)
            .map(|(t, w)| {
                let factor = field.mul(&field.from_domain(&w[0].1), &inv);
                self.ring.scale(&self.ring.from_terms(t), &factor)
            })
            .collect();
        (self.unscale(&r, &s), q)
    }

    /// Normal form with cofactors over the original generators.
    ///
    /// # Panics
    /// If the basis was computed without certificate tracking.
    pub fn reduce_with_certificate(
        &self,
        p: &Polynomial<F::Elem>,
    ) -> (Polynomial<F::Elem>, Certificate<F::Elem>) {
        let basis_cof = self
            .cofactors
            .as_ref()
            .expect("basis computed without certificate tracking");
        let (r, q) = self.reduce_with_quotients(p);
        let mut cof = vec![self.ring.zero(); self.generator_count];
        for (qk, bk) in q.iter().zip(basis_cof) {
            if qk.is_zero() {
                continue;
            }
            for (c, b) in cof.iter_mut().zip(bk) {
                *c = self.ring.add(c, &self.ring.mul(qk, b));
            }
        }
        (r, Certificate { cofactors: cof })
    }

    /// Cofactors of `elements[k]` over the inputs, when tracked.
    pub fn element_certificate(&self, k: usize) -> Option<Certificate<F::Elem>> {
        self.cofactors.as_ref().map(|c| Certificate {
            cofactors: c[k].clone(),
        })
    }

    /// Leading monomials in basis order.
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|e| *e.leading_monomial().unwrap())
            .collect()
    }

    /// Wraps elements already known to form a reduced basis for `ring`'s order.
    pub(crate) fn from_reduced(ring: PolyRing<F>, mut elements: Vec<Polynomial<F::Elem>>) -> Self {
        let order = ring.order().clone();
        elements.sort_by(|a, b| {
            order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
        });
        let work = elements
            .iter()
            .map(|e| {
                let (mut w, _) = to_work(&ring, e);
                normalize_terms(&ring, &ring.field().domain(), &mut w, &mut Track::Off);
                w
            })
            .collect();
        GroebnerBasis {
            ring,
            generator_count: elements.len(),
            elements,
            work,
            cofactors: None,
        }
    }
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.order() == other.ring.order() && self.elements == other.elements
    }
}
