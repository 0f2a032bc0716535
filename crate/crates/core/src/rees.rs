//! Presentation of the Rees algebra `R[g_1 t, …, g_m t]` as `R[ξ]/Q`, its
//! relation type over the local ring, and the top-degree equation.

use std::collections::BTreeMap;

use crate::coeffs::Field;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, normal_form_with_certificate, GroebnerBasis};
use crate::ideal::{Ideal, LocalWitness};
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial};

/// `Q = ker(R[ξ_1..ξ_m] → R[t], ξ_j ↦ g_j t)` with its reduced basis.
#[derive(Debug, Clone)]
pub struct ReesPresentation<F: Field> {
    base: PolyRing<F>,
    ring: PolyRing<F>,
    generators: Vec<Polynomial<F::Elem>>,
    basis: GroebnerBasis<F>,
}

/// Per-degree outcome of the local minimality test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeEvidence<E> {
    pub degree: u32,
    /// Basis elements of this degree.
    pub elements: usize,
    /// Degree-`d` basis elements not in `Q⟨d−1⟩` even locally.
    pub survivors: Vec<Polynomial<E>>,
    /// Degree-`d` elements outside `Q⟨d−1⟩` globally but inside it locally.
    pub local_only: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationType<E> {
    pub rt: u32,
    pub evidence: Vec<DegreeEvidence<E>>,
}

/// Monic-in-`s` relation `u·s^L + Σ p_k(ξ) s^{L−k}` lying in `Q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopEquation<E> {
    pub degree: u32,
    pub equation: Polynomial<E>,
    /// Leading coefficient in `s`, a unit of the local ring.
    pub unit: Polynomial<E>,
}

fn default_names(m: usize, last_is_s: bool) -> Vec<String> {
    (0..m)
        .map(|j| {
            if last_is_s && j + 1 == m {
                "s".to_string()
            } else {
                format!("u{}", j + 1)
            }
        })
        .collect()
}

impl<F: Field> ReesPresentation<F> {
    /// `names` label the presentation variables; the default is `u1..um`.
    pub fn new(
        base: &PolyRing<F>,
        generators: &[Polynomial<F::Elem>],
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        let gens: Vec<Polynomial<F::Elem>> = generators.iter().map(|g| base.canonical(g)).collect();
        if gens.is_empty() || gens.iter().any(|g| g.is_zero()) {
            return Err(Error::Usage("Rees algebra needs nonzero generators".into()));
        }
        let n = base.nvars();
        let m = gens.len();
        let names = names.unwrap_or_else(|| default_names(m, false));
        if names.len() != m {
            return Err(Error::Usage("one presentation name per generator".into()));
        }
        let mut s_names: Vec<String> = base.names().to_vec();
        s_names.extend(names.iter().cloned());
        let mut weights = vec![0u32; n];
        weights.extend(std::iter::repeat_n(1, m));
        let ring = PolyRing::new(
            base.field().clone(),
            &s_names,
            MonomialOrder::GradedThenGrevlex {
                weights: weights.clone(),
            },
        )?;

        let mut t_names = vec!["t_".to_string()];
        t_names.extend(s_names.iter().cloned());
        let mut t_weights = vec![1u32];
        t_weights.extend(weights.iter().copied());
        let ext = PolyRing::new(
            base.field().clone(),
            &t_names,
            MonomialOrder::EliminationThenGraded {
                front: 1,
                weights: t_weights,
            },
        )?;
        let embed: Vec<usize> = (1..=n).collect();
        let t = ext.var(0);
        let elim_gens: Vec<Polynomial<F::Elem>> = gens
            .iter()
            .enumerate()
            .map(|(j, g)| {
                let g = base.map_variables(g, &embed, &ext);
                ext.sub(&ext.var(1 + n + j), &ext.mul(&g, &t))
            })
            .collect();
        let gb = buchberger(&ext, &elim_gens);
        let back: Vec<usize> = (0..=n + m).map(|i| i.saturating_sub(1)).collect();
        let elements: Vec<Polynomial<F::Elem>> = gb
            .elements()
            .iter()
            .filter(|g| g.monomials().all(|mono| mono.exponent(0) == 0))
            .map(|g| ext.map_variables(g, &back, &ring))
            .collect();
        let basis = GroebnerBasis::from_reduced(ring.clone(), elements);
        Ok(ReesPresentation {
            base: base.clone(),
            ring,
            generators: gens,
            basis,
        })
    }

    /// Jacobian-style presentation: names `u1..u(m-1), s`.
    pub fn with_s_last(base: &PolyRing<F>, generators: &[Polynomial<F::Elem>]) -> Result<Self> {
        let names = default_names(generators.len(), true);
        Self::new(base, generators, Some(names))
    }

    pub fn base(&self) -> &PolyRing<F> {
        &self.base
    }

    /// `R[ξ]`, with the presentation variables after the base variables.
    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F::Elem>] {
        &self.generators
    }

    pub fn basis(&self) -> &GroebnerBasis<F> {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn weights(&self) -> Vec<u32> {
        let n = self.base.nvars();
        (0..self.ring.nvars()).map(|i| u32::from(i >= n)).collect()
    }

    /// `(ξ,s)`-degree of a homogeneous element.
    pub fn degree(&self, p: &Polynomial<F::Elem>) -> u32 {
        let w = self.weights();
        p.leading_monomial()
            .map_or(0, |m| self.ring.weighted_degree(m, &w) as u32)
    }

    pub fn is_homogeneous(&self, p: &Polynomial<F::Elem>) -> bool {
        self.ring.is_homogeneous(p, &self.weights())
    }

    /// Number of basis elements per degree.
    pub fn degree_histogram(&self) -> BTreeMap<u32, usize> {
        let mut h = BTreeMap::new();
        for g in self.basis.elements() {
            *h.entry(self.degree(g)).or_insert(0) += 1;
        }
        h
    }

    /// Image of `p` under `ξ_j ↦ g_j t`, in `R[t]` with `t` last.
    pub fn substitute(&self, p: &Polynomial<F::Elem>) -> Result<Polynomial<F::Elem>> {
        let n = self.base.nvars();
        let mut names = self.base.names().to_vec();
        let mut fresh = "t".to_string();
        while names.contains(&fresh) {
            fresh.push('_');
        }
        names.push(fresh);
        let target = PolyRing::grevlex(self.base.field().clone(), &names)?;
        let embed: Vec<usize> = (0..n).collect();
        let t = target.var(n);
        let mut images: Vec<Polynomial<F::Elem>> = (0..n).map(|i| target.var(i)).collect();
        for g in &self.generators {
            images.push(target.mul(&self.base.map_variables(g, &embed, &target), &t));
        }
        Ok(self.ring.compose(p, &images, &target))
    }

    /// Whether every basis element maps to zero.
    pub fn substitution_sound(&self) -> bool {
        self.basis
            .elements()
            .iter()
            .all(|g| self.substitute(g).map(|p| p.is_zero()).unwrap_or(false))
    }

    /// Lifts a polynomial of the base ring into `R[ξ]`.
    pub fn lift(&self, p: &Polynomial<F::Elem>) -> Polynomial<F::Elem> {
        let embed: Vec<usize> = (0..self.base.nvars()).collect();
        self.base.map_variables(p, &embed, &self.ring)
    }

    /// `R`-ideal `(K : g) ∩ R` read off the degree-`deg g` part of `K ∩ (g)`.
    fn contracted_colon(
        &self,
        lower: &Ideal<F>,
        g: &Polynomial<F::Elem>,
    ) -> Vec<Polynomial<F::Elem>> {
        let d = self.degree(g);
        let principal = Ideal::principal(&self.ring, g.clone());
        let inter = lower.intersect(&principal).expect("same ring");
        let n = self.base.nvars();
        let back: Vec<usize> = (0..self.ring.nvars()).map(|i| i.min(n - 1)).collect();
        inter
            .generators()
            .iter()
            .filter(|h| self.degree(h) == d)
            .map(|h| {
                let q = self.ring.divide_exact(h, g).expect("multiple of g");
                debug_assert!(q
                    .monomials()
                    .all(|m| (n..self.ring.nvars()).all(|i| m.exponent(i) == 0)));
                self.ring.map_variables(&q, &back, &self.base)
            })
            .collect()
    }

    /// The same contraction computed by eliminating the presentation
    /// variables from `(K : g)`.
    pub fn contracted_colon_by_elimination(
        &self,
        lower: &Ideal<F>,
        g: &Polynomial<F::Elem>,
    ) -> Result<Ideal<F>> {
        let colon = lower.colon(g);
        let n = self.base.nvars();
        let vars: Vec<usize> = (n..self.ring.nvars()).collect();
        let moved = colon.eliminate(&vars)?;
        let base = self.base.with_order(MonomialOrder::Grevlex);
        let gens = moved
            .generators()
            .iter()
            .map(|h| {
                let map: Vec<usize> = (0..n).collect();
                moved.ring().map_variables(h, &map, &base)
            })
            .collect();
        Ok(Ideal::new(&base, gens))
    }

    /// `Q⟨d⟩`: the ideal generated by basis elements of degree `≤ d`.
    pub fn truncation(&self, d: u32) -> Ideal<F> {
        let gens = self
            .basis
            .elements()
            .iter()
            .filter(|g| self.degree(g) <= d)
            .cloned()
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// Whether the degree-`d` element `g` lies in `Q⟨d−1⟩` after localizing
    /// the base ring at the origin.
    pub fn in_lower_locally(&self, lower: &Ideal<F>, g: &Polynomial<F::Elem>) -> bool {
        if lower.is_zero() {
            return false;
        }
        self.contracted_colon(lower, g)
            .iter()
            .any(|u| self.base.is_local_unit(u))
    }

    /// Largest degree carrying a minimal generator of `Q` over the local ring.
    pub fn relation_type_local(&self) -> RelationType<F::Elem> {
        let histogram = self.degree_histogram();
        let top = histogram.keys().copied().max().unwrap_or(1);
        let mut rt = 1;
        let mut evidence = Vec::new();
        for d in 2..=top {
            let elements: Vec<&Polynomial<F::Elem>> = self
                .basis
                .elements()
                .iter()
                .filter(|g| self.degree(g) == d)
                .collect();
            if elements.is_empty() {
                continue;
            }
            let lower = self.truncation(d - 1);
            let mut survivors = Vec::new();
            let mut local_only = 0;
            for g in &elements {
                if lower.contains(g) {
                    continue;
                }
                if self.in_lower_locally(&lower, g) {
                    local_only += 1;
                } else {
                    survivors.push((*g).clone());
                }
            }
            if !survivors.is_empty() {
                rt = d;
            }
            evidence.push(DegreeEvidence {
                degree: d,
                elements: elements.len(),
                survivors,
                local_only,
            });
        }
        RelationType { rt, evidence }
    }

    /// `u·f^L ∈ J·I^{L−1}` turned into a relation `u·s^L − Σ c ξ_j ξ^α` of
    /// `Q`, where the last generator plays the role of `f` and the others
    /// generate `J`.
    ///
    /// `witness` must certify `f^L ∈ (J·I^{L−1})·R_m`; see
    /// [`Ideal::member_local`].
    pub fn top_equation(
        &self,
        degree: u32,
        witness: &LocalWitness<F::Elem>,
    ) -> Result<TopEquation<F::Elem>> {
        let base = &self.base;
        let m = self.generators.len();
        if m < 2 || degree == 0 {
            return Err(Error::Precondition(
                "top equation needs J generators, f, and L ≥ 1".into(),
            ));
        }
        let f = &self.generators[m - 1];
        if witness.target != base.pow(f, degree) || !base.is_local_unit(&witness.unit) {
            return Err(Error::Precondition("witness does not certify f^L".into()));
        }
        let target = base.mul(&witness.unit, &witness.target);
        // labeled generators f_j · g^α with |α| = L − 1
        let alphas = exponent_vectors(m, degree - 1);
        let mut labels = Vec::new();
        let mut labeled = Vec::new();
        for j in 0..m - 1 {
            for alpha in &alphas {
                let mut h = self.generators[j].clone();
                for (k, &e) in alpha.iter().enumerate() {
                    if e > 0 {
                        h = base.mul(&h, &base.pow(&self.generators[k], e as u32));
                    }
                }
                labels.push((j, alpha.clone()));
                labeled.push(h);
            }
        }
        let (rem, cert) = normal_form_with_certificate(base, &target, &labeled);
        if !rem.is_zero() {
            return Err(Error::Precondition(format!(
                "u·f^{degree} is not in J·I^{} globally",
                degree - 1
            )));
        }
        let n = base.nvars();
        let ring = &self.ring;
        let one = base.field().one();
        let mut equation = ring.mul_monomial(
            &self.lift(&witness.unit),
            &Monomial::var(n + m - 1, degree as u16),
            &one,
        );
        for ((j, alpha), c) in labels.iter().zip(&cert.cofactors) {
            if c.is_zero() {
                continue;
            }
            let mut exps = vec![0u16; n + m];
            exps[n + j] += 1;
            for (k, &e) in alpha.iter().enumerate() {
                exps[n + k] += e;
            }
            let term = ring.mul_monomial(&self.lift(c), &Monomial::from_exponents(&exps), &one);
            equation = ring.sub(&equation, &term);
        }
        Ok(TopEquation {
            degree,
            equation,
            unit: witness.unit.clone(),
        })
    }

    /// Checks a top equation: homogeneous, correct `s`-leading coefficient,
    /// killed by substitution and reducing to zero modulo `Q`.
    pub fn verify_top_equation(&self, top: &TopEquation<F::Elem>) -> bool {
        let n = self.base.nvars();
        let m = self.generators.len();
        let s = n + m - 1;
        let lead: Vec<(Monomial, F::Elem)> = top
            .equation
            .terms()
            .iter()
            .filter(|(mono, _)| mono.exponent(s) == top.degree as u16)
            .map(|(mono, c)| (mono.div(&Monomial::var(s, top.degree as u16)), c.clone()))
            .collect();
        let lead = self.ring.from_terms(lead);
        let no_higher = top
            .equation
            .monomials()
            .all(|mono| mono.exponent(s) <= top.degree as u16);
        self.is_homogeneous(&top.equation)
            && self.degree(&top.equation) == top.degree
            && no_higher
            && lead == self.lift(&top.unit)
            && self
                .substitute(&top.equation)
                .map(|p| p.is_zero())
                .unwrap_or(false)
            && self.basis.contains(&top.equation)
    }
}

/// All exponent vectors of length `m` summing to `k`, in lex order.
pub fn exponent_vectors(m: usize, k: u32) -> Vec<Vec<u16>> {
    fn go(m: usize, k: u32, prefix: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if prefix.len() + 1 == m {
            prefix.push(k as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=k).rev() {
            prefix.push(e as u16);
            go(m, k - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        go(m, k, &mut Vec::new(), &mut out);
    }
    out
}
