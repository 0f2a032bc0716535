//! Colon tests, reduction numbers and relation-type verdicts for the
//! gradient ideal `J = (f_1, …, f_n)` and Jacobian ideal `I = J + (f)`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::coeffs::Field;
use crate::error::{usage, Error, Result};
use crate::ideal::{Ideal, LocalWitness, Semantics};
use crate::poly::{PolyRing, Polynomial};
use crate::rees::{ReesPresentation, RelationType, TopEquation};

pub const DEFAULT_MAX_R: u32 = 50;
pub const MIN_DMAX: u32 = 8;

/// A germ `f` at the origin with its partial derivatives and the ideal
/// chain `J_0 = 0 ⊂ J_1 ⊂ … ⊂ J_n = J ⊂ I`.
pub struct DivisorData<F: Field> {
    ring: PolyRing<F>,
    f: Polynomial<F::Elem>,
    /// `f_1, …, f_n, f`: the last entry is `f` itself (`f_{n+1}`).
    chain_gens: Vec<Polynomial<F::Elem>>,
    chain: Vec<Arc<Ideal<F>>>,
    jacobian: Arc<Ideal<F>>,
    semantics: Semantics,
    powers: RwLock<Vec<Arc<Ideal<F>>>>,
    products: RwLock<HashMap<(usize, u32), Arc<Ideal<F>>>>,
}

impl<F: Field> DivisorData<F> {
    pub fn new(ring: &PolyRing<F>, f: Polynomial<F::Elem>) -> Result<Self> {
        let f = ring.canonical(&f);
        if f.is_zero() {
            return Err(usage("f = 0 does not define a hypersurface"));
        }
        if ring.is_local_unit(&f) {
            return Err(usage("not a germ through the origin: f(0) ≠ 0"));
        }
        let p = ring.field().spec().characteristic();
        let deg = f.total_degree().unwrap_or(0);
        if p != 0 && p <= deg {
            return Err(usage(format!(
                "characteristic {p} ≤ deg f = {deg}: derivatives degenerate"
            )));
        }
        let n = ring.nvars();
        let mut chain_gens: Vec<_> = (0..n).map(|i| ring.partial_derivative(&f, i)).collect();
        chain_gens.push(f.clone());
        let chain = (0..=n)
            .map(|i| Arc::new(Ideal::new(ring, chain_gens[..i].to_vec())))
            .collect();
        let jacobian = Arc::new(Ideal::new(ring, chain_gens.clone()));
        Ok(DivisorData {
            ring: ring.clone(),
            f,
            chain_gens,
            chain,
            jacobian,
            semantics: Semantics::Local,
            powers: RwLock::new(vec![Arc::new(Ideal::unit(ring))]),
            products: RwLock::new(HashMap::new()),
        })
    }

    pub fn parse(ring: &PolyRing<F>, text: &str) -> Result<Self> {
        Self::new(ring, ring.parse(text)?)
    }

    /// Switches every membership test to global semantics (debugging only).
    pub fn with_semantics(mut self, semantics: Semantics) -> Self {
        self.semantics = semantics;
        self
    }

    pub fn semantics(&self) -> Semantics {
        self.semantics
    }

    pub fn ring(&self) -> &PolyRing<F> {
        &self.ring
    }

    pub fn f(&self) -> &Polynomial<F::Elem> {
        &self.f
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn partials(&self) -> &[Polynomial<F::Elem>] {
        &self.chain_gens[..self.nvars()]
    }

    /// `f_i` for `1 ≤ i ≤ n+1`, with `f_{n+1} = f`.
    pub fn chain_generator(&self, i: usize) -> &Polynomial<F::Elem> {
        &self.chain_gens[i - 1]
    }

    /// `J_i = (f_1, …, f_i)`, `0 ≤ i ≤ n`.
    pub fn partial_chain(&self, i: usize) -> &Ideal<F> {
        &self.chain[i]
    }

    pub fn gradient(&self) -> &Ideal<F> {
        &self.chain[self.nvars()]
    }

    pub fn jacobian(&self) -> &Ideal<F> {
        &self.jacobian
    }

    /// `f ∈ m \ m²`: some partial derivative is a unit at the origin.
    pub fn is_smooth(&self) -> bool {
        self.partials().iter().any(|p| self.ring.is_local_unit(p))
    }

    /// `I^k`, cached.
    pub fn jacobian_power(&self, k: u32) -> Arc<Ideal<F>> {
        let k = k as usize;
        if let Some(p) = self.powers.read().unwrap().get(k) {
            return p.clone();
        }
        let mut powers = self.powers.write().unwrap();
        while powers.len() <= k {
            let next = self
                .jacobian
                .product(powers.last().unwrap())
                .expect("same ring");
            powers.push(Arc::new(next));
        }
        powers[k].clone()
    }

    /// `J_i · I^k`, cached, with `J_0 · I^k = 0`.
    pub fn chain_product(&self, i: usize, k: u32) -> Arc<Ideal<F>> {
        if let Some(p) = self.products.read().unwrap().get(&(i, k)) {
            return p.clone();
        }
        let ideal = Arc::new(
            self.chain[i]
                .product(&self.jacobian_power(k))
                .expect("same ring"),
        );
        self.products
            .write()
            .unwrap()
            .entry((i, k))
            .or_insert(ideal)
            .clone()
    }

    fn member(&self, g: &Polynomial<F::Elem>, ideal: &Ideal<F>) -> Option<LocalWitness<F::Elem>> {
        match self.semantics {
            Semantics::Local => ideal.member_local(g),
            Semantics::Global => ideal.contains(g).then(|| LocalWitness {
                unit: self.ring.one(),
                target: g.clone(),
            }),
        }
    }

    fn subset(&self, a: &Ideal<F>, b: &Ideal<F>) -> bool {
        a.is_subset_with(b, self.semantics)
    }
}

/// Outcome of one `T_{i,d}` test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TTest<E> {
    pub i: usize,
    pub d: u32,
    pub vanishes: bool,
    /// A generator of the numerator outside the denominator, if any.
    pub obstruction: Option<Polynomial<E>>,
}

/// `N = (A : g) ∩ B`, skipping the intersection when `A : g ⊆ B`.
pub fn colon_intersection<F: Field>(
    a: &Ideal<F>,
    g: &Polynomial<F::Elem>,
    b: &Ideal<F>,
) -> Ideal<F> {
    let c = a.colon(g);
    if c.is_subset(b) {
        c
    } else {
        c.intersect(b).expect("same ring")
    }
}

/// The same ideal as `(A ∩ g·B) / g` for `g ≠ 0`, for cross-checks.
pub fn colon_intersection_via_multiple<F: Field>(
    a: &Ideal<F>,
    g: &Polynomial<F::Elem>,
    b: &Ideal<F>,
) -> Ideal<F> {
    let ring = a.ring();
    let gb = Ideal::new(
        ring,
        b.generators().iter().map(|h| ring.mul(g, h)).collect(),
    );
    let inter = a.intersect(&gb).expect("same ring");
    let quotients = inter
        .generators()
        .iter()
        .map(|h| ring.divide_exact(h, g).expect("element of g·B"))
        .collect();
    Ideal::new(ring, quotients)
}

fn first_obstruction<F: Field>(
    data: &DivisorData<F>,
    numerator: &Ideal<F>,
    denominator: &Ideal<F>,
) -> Option<Polynomial<F::Elem>> {
    for g in numerator.generators() {
        if denominator.contains(g) {
            continue;
        }
        if data.member(g, denominator).is_none() {
            return Some(g.clone());
        }
    }
    None
}

/// Whether `T_{i,d}` vanishes; `T_{i,1} = (J_{i−1} : f_i) / J_{i−1}`.
pub fn t_test<F: Field>(data: &DivisorData<F>, i: usize, d: u32) -> Result<TTest<F::Elem>> {
    let n = data.nvars();
    if !(1..=n + 1).contains(&i) || d == 0 {
        return Err(usage(format!(
            "T_{{{i},{d}}} needs 1 ≤ i ≤ {} and d ≥ 1",
            n + 1
        )));
    }
    let ring = data.ring();
    let g = data.chain_generator(i);
    let done = |obstruction: Option<Polynomial<F::Elem>>| TTest {
        i,
        d,
        vanishes: obstruction.is_none(),
        obstruction,
    };
    let (numerator, denominator) = if d == 1 {
        let prev = data.partial_chain(i - 1);
        (prev.colon(g), Arc::new(prev.clone()))
    } else {
        let a = data.chain_product(i - 1, d - 1);
        let b = data.jacobian_power(d - 1);
        let denominator = data.chain_product(i - 1, d - 2);
        if g.is_zero() {
            // (A : 0) = R
            (b.as_ref().clone(), denominator)
        } else if a.is_zero() {
            // R is a domain: (0 : g) = 0
            return Ok(done(None));
        } else if b.is_subset(&denominator) {
            return Ok(done(None));
        } else {
            // N ⊆ A : g, so a colon inside the denominator settles it
            let c = a.colon(g);
            let Some(witness) = first_obstruction(data, &c, &denominator) else {
                return Ok(done(None));
            };
            if c.is_subset(&b) {
                return Ok(done(Some(witness)));
            }
            (c.intersect(&b).expect("same ring"), denominator)
        }
    };
    if numerator.is_zero() {
        return Ok(done(None));
    }
    if denominator.is_zero() {
        return Ok(done(
            numerator
                .generators()
                .first()
                .cloned()
                .map(|p| ring.monic(&p)),
        ));
    }
    Ok(done(first_obstruction(data, &numerator, &denominator)))
}

pub fn t_vanishes<F: Field>(data: &DivisorData<F>, i: usize, d: u32) -> Result<bool> {
    Ok(t_test(data, i, d)?.vanishes)
}

/// `f_1, …, f_n` regular: `T_{i,1} = 0` for `i ≤ n`.
pub fn regular_sequence_check<F: Field>(data: &DivisorData<F>) -> Result<bool> {
    for i in 1..=data.nvars() {
        if !t_vanishes(data, i, 1)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `f ∈ J` locally.
pub fn euler_check<F: Field>(data: &DivisorData<F>) -> bool {
    data.member(data.f(), data.gradient()).is_some()
}

fn search(
    what: &'static str,
    start: u32,
    max_r: u32,
    mut test: impl FnMut(u32) -> bool,
) -> Result<u32> {
    for r in start..=max_r {
        if test(r) {
            return Ok(r);
        }
    }
    Err(Error::BoundExceeded {
        what,
        bound: max_r as usize,
    })
}

/// `r(f) = min { r ≥ 1 : f^r ∈ J }`.
pub fn r_of_f<F: Field>(data: &DivisorData<F>, max_r: u32) -> Result<u32> {
    let ring = data.ring();
    search("r(f)", 1, max_r, |r| {
        data.member(&ring.pow(data.f(), r), data.gradient())
            .is_some()
    })
}

/// `id(f) = min { r ≥ 1 : f^r ∈ J·I^{r−1} }`.
pub fn id_of_f<F: Field>(data: &DivisorData<F>, max_r: u32) -> Result<u32> {
    let ring = data.ring();
    let n = data.nvars();
    search("id(f)", 1, max_r, |r| {
        data.member(&ring.pow(data.f(), r), &data.chain_product(n, r - 1))
            .is_some()
    })
}

/// Witness for `f^L ∈ J·I^{L−1}`, when it holds.
pub fn top_witness<F: Field>(data: &DivisorData<F>, l: u32) -> Option<LocalWitness<F::Elem>> {
    let target = data.ring().pow(data.f(), l);
    data.member(
        &target,
        &data.chain_product(data.nvars(), l.checked_sub(1)?),
    )
}

/// Smallest `r ≥ 0` with `I^{r+1} = J·I^r` locally.
pub fn reduction_number<F: Field>(data: &DivisorData<F>, max_r: u32) -> Result<u32> {
    let n = data.nvars();
    search("rn_J(I)", 0, max_r, |r| {
        let lhs = data.jacobian_power(r + 1);
        let rhs = data.chain_product(n, r);
        data.subset(&lhs, &rhs) && data.subset(&rhs, &lhs)
    })
}

/// `(J I^{d−1} : f^d) ⊆ (J I^{d−2} : f^{d−1})` locally, `d ≥ 2`.
pub fn effective_quotient_vanishes<F: Field>(data: &DivisorData<F>, d: u32) -> Result<bool> {
    if d < 2 {
        return Err(usage("effective quotient needs d ≥ 2"));
    }
    let (upper, lower) = effective_quotient_ideals(data, d);
    Ok(data.subset(&upper, &lower))
}

/// `(J I^{d−1} : f^d)` and `(J I^{d−2} : f^{d−1})`.
pub fn effective_quotient_ideals<F: Field>(data: &DivisorData<F>, d: u32) -> (Ideal<F>, Ideal<F>) {
    let n = data.nvars();
    let upper = data.chain_product(n, d - 1).colon_power(data.f(), d);
    let lower = data.chain_product(n, d - 2).colon_power(data.f(), d - 1);
    (upper, lower)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    LinearJacobianType,
    ExpectedJacobianType,
    Neither,
}

impl Verdict {
    pub fn is_expected(self) -> bool {
        matches!(
            self,
            Verdict::LinearJacobianType | Verdict::ExpectedJacobianType
        )
    }
}

/// `T_{i,d}` outcomes over a verified range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TTable<E> {
    pub dmax: u32,
    pub rows: Vec<usize>,
    pub entries: Vec<TTest<E>>,
}

impl<E> TTable<E> {
    pub fn get(&self, i: usize, d: u32) -> Option<bool> {
        self.entries
            .iter()
            .find(|e| e.i == i && e.d == d)
            .map(|e| e.vanishes)
    }

    /// Whether every entry of row `i` with `lo ≤ d ≤ hi` is present and zero.
    pub fn row_vanishes(&self, i: usize, lo: u32, hi: u32) -> Option<bool> {
        let mut all = true;
        for d in lo..=hi {
            all &= self.get(i, d)?;
        }
        Some(all)
    }
}

/// Computes `T_{i,d}` for the given rows and `1 ≤ d ≤ dmax`, in parallel.
pub fn t_table<F: Field>(
    data: &DivisorData<F>,
    rows: &[usize],
    dmax: u32,
) -> Result<TTable<F::Elem>> {
    let cells: Vec<(usize, u32)> = rows
        .iter()
        .flat_map(|&i| (1..=dmax).map(move |d| (i, d)))
        .collect();
    // warm the shared power caches so workers do not race to build them
    for k in 0..dmax {
        data.jacobian_power(k);
    }
    let entries = cells
        .par_iter()
        .map(|&(i, d)| t_test(data, i, d))
        .collect::<Result<Vec<_>>>()?;
    Ok(TTable {
        dmax,
        rows: rows.to_vec(),
        entries,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub max_r: u32,
    /// `None`: `max(8, rt + 3)`.
    pub dmax: Option<u32>,
    /// `None`: every row `1..=n+1`.
    pub t_rows: Option<Vec<usize>>,
    pub effective_quotients: bool,
    pub top_equation: bool,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            max_r: DEFAULT_MAX_R,
            dmax: None,
            t_rows: None,
            effective_quotients: true,
            top_equation: true,
        }
    }
}

/// Everything [`classify`] computes for one germ.
#[derive(Debug, Clone)]
pub struct AnalysisReport<F: Field> {
    pub smooth: bool,
    pub semantics: Semantics,
    pub r_of_f: u32,
    pub id_of_f: u32,
    pub rn: u32,
    pub rt: u32,
    pub rt_gradient: u32,
    pub verdict: Verdict,
    pub euler_homogeneous: bool,
    pub regular_sequence: bool,
    pub t_table: TTable<F::Elem>,
    /// `(d, vanishes)` for the effective quotients, `2 ≤ d ≤ dmax`.
    pub effective_quotients: Vec<(u32, bool)>,
    pub relation_type: Option<RelationType<F::Elem>>,
    pub gradient_relation_type: Option<RelationType<F::Elem>>,
    pub rees_histogram: Vec<(u32, usize)>,
    pub top_equation: Option<TopEquation<F::Elem>>,
    /// Witness for `f ∈ J` when Euler homogeneous.
    pub euler_witness: Option<LocalWitness<F::Elem>>,
    /// Stage name and wall-clock seconds.
    pub timings: Vec<(&'static str, f64)>,
}

fn timed<T>(
    timings: &mut Vec<(&'static str, f64)>,
    stage: &'static str,
    f: impl FnOnce() -> T,
) -> T {
    let start = std::time::Instant::now();
    let out = f();
    timings.push((stage, start.elapsed().as_secs_f64()));
    out
}

pub fn verdict_for(rt: u32, rn: u32, rt_gradient: u32) -> Verdict {
    if rt == 1 {
        Verdict::LinearJacobianType
    } else if rt_gradient == 1 && rt == rn + 1 {
        Verdict::ExpectedJacobianType
    } else {
        Verdict::Neither
    }
}

/// Runs the full pipeline on `data`.
pub fn classify<F: Field>(
    data: &DivisorData<F>,
    opts: &AnalysisOptions,
) -> Result<AnalysisReport<F>> {
    let ring = data.ring();
    let n = data.nvars();
    let mut timings = Vec::new();
    if data.is_smooth() {
        return Ok(AnalysisReport {
            smooth: true,
            semantics: data.semantics(),
            r_of_f: 1,
            id_of_f: 1,
            rn: 0,
            rt: 1,
            rt_gradient: 1,
            verdict: Verdict::LinearJacobianType,
            euler_homogeneous: true,
            regular_sequence: true,
            t_table: TTable {
                dmax: 0,
                rows: Vec::new(),
                entries: Vec::new(),
            },
            effective_quotients: Vec::new(),
            relation_type: None,
            gradient_relation_type: None,
            rees_histogram: Vec::new(),
            top_equation: None,
            euler_witness: None,
            timings,
        });
    }
    let euler_witness = timed(&mut timings, "euler", || {
        data.member(data.f(), data.gradient())
    });
    let regular_sequence = timed(&mut timings, "regular_sequence", || {
        regular_sequence_check(data)
    })?;
    let r = timed(&mut timings, "r_of_f", || r_of_f(data, opts.max_r))?;
    let id = timed(&mut timings, "id_of_f", || id_of_f(data, opts.max_r))?;
    let rn = timed(&mut timings, "reduction_number", || {
        reduction_number(data, opts.max_r)
    })?;

    let (pres, relation_type) = timed(&mut timings, "rees_jacobian", || -> Result<_> {
        let gens: Vec<_> = data.chain_gens.clone();
        let pres = ReesPresentation::with_s_last(ring, &gens)?;
        let rt = match data.semantics() {
            Semantics::Local => pres.relation_type_local(),
            Semantics::Global => global_relation_type(&pres),
        };
        Ok((pres, rt))
    })?;
    let gradient_relation_type = timed(&mut timings, "rees_gradient", || -> Result<_> {
        let gens: Vec<_> = data
            .partials()
            .iter()
            .filter(|p| !p.is_zero())
            .cloned()
            .collect();
        if gens.is_empty() {
            return Ok(None);
        }
        let pres = ReesPresentation::new(ring, &gens, None)?;
        Ok(Some(match data.semantics() {
            Semantics::Local => pres.relation_type_local(),
            Semantics::Global => global_relation_type(&pres),
        }))
    })?;
    let rt = relation_type.rt;
    let rt_gradient = gradient_relation_type.as_ref().map_or(1, |r| r.rt);

    let dmax = opts.dmax.unwrap_or(MIN_DMAX.max(rt + 3));
    let rows: Vec<usize> = opts.t_rows.clone().unwrap_or_else(|| (1..=n + 1).collect());
    let t_table = timed(&mut timings, "t_table", || t_table(data, &rows, dmax))?;

    let effective_quotients = if opts.effective_quotients {
        timed(&mut timings, "effective_quotients", || {
            (2..=dmax)
                .into_par_iter()
                .map(|d| effective_quotient_vanishes(data, d).map(|v| (d, v)))
                .collect::<Result<Vec<_>>>()
        })?
    } else {
        Vec::new()
    };

    let top_equation = if opts.top_equation {
        timed(&mut timings, "top_equation", || -> Result<_> {
            let w = top_witness(data, id)
                .ok_or_else(|| Error::Precondition("f^id not in J·I^(id−1)".into()))?;
            pres.top_equation(id, &w).map(Some)
        })?
    } else {
        None
    };

    Ok(AnalysisReport {
        smooth: false,
        semantics: data.semantics(),
        r_of_f: r,
        id_of_f: id,
        rn,
        rt,
        rt_gradient,
        verdict: verdict_for(rt, rn, rt_gradient),
        euler_homogeneous: euler_witness.is_some(),
        regular_sequence,
        t_table,
        effective_quotients,
        rees_histogram: pres.degree_histogram().into_iter().collect(),
        relation_type: Some(relation_type),
        gradient_relation_type,
        top_equation,
        euler_witness,
        timings,
    })
}

/// Relation type of `Q` over the polynomial ring: the largest degree with
/// a basis element outside `Q⟨d−1⟩`.
fn global_relation_type<F: Field>(pres: &ReesPresentation<F>) -> RelationType<F::Elem> {
    let top = pres.degree_histogram().keys().copied().max().unwrap_or(1);
    let mut rt = 1;
    let mut evidence = Vec::new();
    for d in 2..=top {
        let lower = pres.truncation(d - 1);
        let elements: Vec<_> = pres
            .basis()
            .elements()
            .iter()
            .filter(|g| pres.degree(g) == d)
            .collect();
        if elements.is_empty() {
            continue;
        }
        let survivors: Vec<_> = elements
            .iter()
            .filter(|g| !lower.contains(g))
            .map(|g| (*g).clone())
            .collect();
        if !survivors.is_empty() {
            rt = d;
        }
        evidence.push(crate::rees::DegreeEvidence {
            degree: d,
            elements: elements.len(),
            survivors,
            local_only: 0,
        });
    }
    RelationType { rt, evidence }
}

/// One theorem-backed consistency check on a finished report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub statement: String,
    /// `false` when the hypotheses do not hold on this instance.
    pub applicable: bool,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, statement: &str, applicable: bool, passed: bool, detail: String) -> Self {
        CheckResult {
            name: name.into(),
            statement: statement.into(),
            applicable,
            passed: !applicable || passed,
            detail,
        }
    }
}

/// Published or otherwise known bounds carried into the checks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnownBounds {
    /// The Bernstein–Sato based bound `L(f)` when known.
    pub l_of_f: Option<u32>,
}

/// Verifies the consequences of the theory on one analyzed instance.
pub fn cross_validate<F: Field>(
    data: &DivisorData<F>,
    report: &AnalysisReport<F>,
    known: &KnownBounds,
) -> Result<Vec<CheckResult>> {
    let n = data.nvars();
    let mut out = Vec::new();
    let (r, id, rn, rt) = (report.r_of_f, report.id_of_f, report.rn, report.rt);
    out.push(CheckResult::new(
        "reduction_bound",
        "rn + 1 <= rt",
        true,
        rn + 1 <= rt,
        format!("rn = {rn}, rt = {rt}"),
    ));
    out.push(CheckResult::new(
        "id_equals_rn_plus_one",
        "id(f) = rn + 1",
        true,
        id == rn + 1,
        format!("id = {id}, rn = {rn}"),
    ));
    out.push(CheckResult::new(
        "r_at_most_id",
        "r(f) <= id(f)",
        true,
        r <= id,
        format!("r = {r}, id = {id}"),
    ));
    if !report.smooth {
        // the loops stop at the first hit; one step further must still hold
        let ring = data.ring();
        let f = data.f();
        let id_next = data
            .member(&ring.pow(f, id + 1), &data.chain_product(n, id))
            .is_some();
        let r_next = data.member(&ring.pow(f, r + 1), data.gradient()).is_some();
        out.push(CheckResult::new(
            "loop_exits_monotone",
            "f^(id+1) in J I^id and f^(r+1) in J",
            true,
            id_next && r_next,
            format!(
                "at id + 1 = {}: {id_next}; at r + 1 = {}: {r_next}",
                id + 1,
                r + 1
            ),
        ));
    }
    let verdict_ok = match report.verdict {
        Verdict::LinearJacobianType => rt == 1 && rn == 0,
        Verdict::ExpectedJacobianType => rt == rn + 1 && report.rt_gradient == 1,
        Verdict::Neither => !(rt == rn + 1 && report.rt_gradient == 1),
    };
    out.push(CheckResult::new(
        "verdict_logic",
        "linear => expected; expected <=> (rt(J) = 1 and rt = rn + 1)",
        true,
        verdict_ok,
        format!("{:?}, rt(J) = {}", report.verdict, report.rt_gradient),
    ));
    if let Some(l) = known.l_of_f {
        out.push(CheckResult::new(
            "bernstein_sato_bound",
            "rt <= L(f) and r(f) <= id(f) <= L(f)",
            true,
            rt <= l && r <= id && id <= l,
            format!("L(f) = {l}"),
        ));
    }
    if report.smooth {
        return Ok(out);
    }
    let table = &report.t_table;

    let first_row: Vec<_> = table.entries.iter().filter(|e| e.i == 1).collect();
    let f1_nonzero = !data.chain_generator(1).is_zero();
    out.push(CheckResult::new(
        "first_row_vanishes",
        "T_{1,d} = 0 for all computed d",
        f1_nonzero && !first_row.is_empty(),
        first_row.iter().all(|e| e.vanishes),
        format!("{} entries", first_row.len()),
    ));

    // T_{i,d} = 0 for i ≤ n, 2 ≤ d ≤ dmax with dmax ≥ rt + 1
    let below: Option<bool> = (1..=n)
        .map(|i| table.row_vanishes(i, 2, table.dmax))
        .collect::<Option<Vec<bool>>>()
        .map(|v| v.into_iter().all(|b| b));
    let applicable = table.dmax >= rt + 1 && below == Some(true);
    out.push(CheckResult::new(
        "vanishing_implies_expected",
        "T_{i,d} = 0 for i <= n and 2 <= d <= dmax (dmax >= rt + 1) => rt = rn + 1",
        applicable,
        rt == rn + 1,
        format!("dmax = {}, rows below n+1 vanish: {:?}", table.dmax, below),
    ));

    // T_{n+1,d} is the effective quotient in degree d
    let mut agree = true;
    let mut compared = 0;
    for &(d, eq) in &report.effective_quotients {
        if let Some(t) = table.get(n + 1, d) {
            compared += 1;
            agree &= t == eq;
        }
    }
    out.push(CheckResult::new(
        "last_row_is_effective_quotient",
        "T_{n+1,d} = 0 <=> (J I^{d-1} : f^d) = (J I^{d-2} : f^{d-1})",
        compared > 0,
        agree,
        format!("{compared} degrees compared"),
    ));

    // E_d = 0 from the Rees side, per degree
    if let Some(rel) = &report.relation_type {
        let rees_zero = |d: u32| {
            rel.evidence
                .iter()
                .find(|e| e.degree == d)
                .is_none_or(|e| e.survivors.is_empty())
        };
        // E_d = 0 implies the effective quotient vanishes
        let mut ok = true;
        let mut cases = 0;
        for &(d, eq) in &report.effective_quotients {
            if rees_zero(d) {
                cases += 1;
                ok &= eq;
            }
        }
        out.push(CheckResult::new(
            "equations_vanish_implies_quotient",
            "E_d = 0 => (J I^{d-1} : f^d) = (J I^{d-2} : f^{d-1})",
            cases > 0,
            ok,
            format!("{cases} degrees with E_d = 0"),
        ));

        // all T_{i,d} = 0 for i ≤ n+1 force E_d = 0
        let mut ok = true;
        let mut cases = 0;
        for d in 2..=table.dmax {
            if (1..=n + 1).all(|i| table.get(i, d) == Some(true)) {
                cases += 1;
                ok &= rees_zero(d);
            }
        }
        out.push(CheckResult::new(
            "cycles_vanish_implies_equations",
            "T_{i,d} = 0 for all i <= n+1 => E_d = 0",
            cases > 0,
            ok,
            format!("{cases} degrees with a vanishing column"),
        ));

        // plane curves: (f_1 : f_2) ⊆ (f_1 : f) and, in degree d,
        // T_{2,d} = 0 gives E_d = 0 <=> effective quotient vanishes
        if n == 2 && f1_nonzero {
            let j1 = data.partial_chain(1);
            let hypothesis = data.subset(&j1.colon(data.chain_generator(2)), &j1.colon(data.f()));
            let mut ok = true;
            let mut cases = 0;
            if hypothesis {
                for &(d, eq) in &report.effective_quotients {
                    if table.get(2, d) == Some(true) {
                        cases += 1;
                        ok &= rees_zero(d) == eq;
                    }
                }
            }
            out.push(CheckResult::new(
                "plane_curve_equivalence",
                "(f_1 : f_2) ⊆ (f_1 : f) and T_{2,d} = 0 => (E_d = 0 <=> effective quotient vanishes)",
                hypothesis && cases > 0,
                ok,
                format!("hypothesis holds: {hypothesis}; {cases} degrees"),
            ));
        }
    }

    if let (Some(top), Some(_)) = (&report.top_equation, &report.relation_type) {
        let pres = ReesPresentation::with_s_last(data.ring(), &data.chain_gens)?;
        out.push(CheckResult::new(
            "top_equation",
            "top equation is monic of degree id(f) in s and lies in Q",
            true,
            top.degree == id && pres.verify_top_equation(top),
            format!("degree {}", top.degree),
        ));
    }
    Ok(out)
}
