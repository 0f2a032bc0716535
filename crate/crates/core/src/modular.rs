//! Gröbner bases over `Q` from images modulo primes.
//!
//! Inputs are homogenized with a trailing variable. Reduced bases of the
//! images are combined by Chinese remaindering and rational reconstruction.
//! A candidate `G` is accepted once, over `Q`, every S-polynomial of `G`
//! reduces to zero, every homogenized input lies in `(G)`, and the leading
//! monomials of `G` are those of a computed image. For a homogeneous ideal the
//! Hilbert function can only grow modulo a prime, so these checks force `(G)`
//! to be the homogenized input ideal; setting the new variable to one then
//! gives a basis of the original ideal.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::coeffs::{Field, PrimeField, Rationals};
use crate::groebner::{buchberger_direct, s_polynomial, GroebnerBasis};
use crate::poly::{Monomial, MonomialOrder, PolyRing, Polynomial, MAX_VARS};

/// Images tried before giving up on the modular route.
const MAX_PRIMES: usize = 400;

type IntTerms = Vec<(Monomial, BigInt)>;

/// Primes below `2^31`, largest first.
struct Primes {
    next: u32,
}

impl Iterator for Primes {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        while self.next > 3 {
            let p = self.next;
            self.next -= 2;
            if let Ok(f) = PrimeField::new(p) {
                return Some(f.modulus());
            }
        }
        None
    }
}

/// Reduced basis modulo one prime, elements in increasing leading monomial.
struct Image {
    prime: u32,
    lms: Vec<Monomial>,
    elements: Vec<Vec<(Monomial, u32)>>,
}

/// Images sharing one leading monomial set, combined modulo their product.
struct Class {
    lms: Vec<Monomial>,
    modulus: BigInt,
    primes: usize,
    coeffs: Vec<HashMap<Monomial, BigInt>>,
}

impl Class {
    fn new(image: &Image) -> Self {
        let coeffs = image
            .elements
            .iter()
            .map(|e| e.iter().map(|(m, c)| (*m, BigInt::from(*c))).collect())
            .collect();
        Class {
            lms: image.lms.clone(),
            modulus: BigInt::from(image.prime),
            primes: 1,
            coeffs,
        }
    }

    fn absorb(&mut self, image: &Image) {
        let p = image.prime as u64;
        let field = PrimeField::new(image.prime).expect("prime");
        let m_mod = self
            .modulus
            .mod_floor(&BigInt::from(p))
            .to_u32()
            .expect("residue");
        let m_inv = field.inv(&m_mod).expect("distinct primes");
        for (acc, elem) in self.coeffs.iter_mut().zip(&image.elements) {
            let residues: HashMap<Monomial, u32> = elem.iter().cloned().collect();
            for m in residues.keys() {
                acc.entry(*m).or_insert_with(BigInt::zero);
            }
            for (m, x) in acc.iter_mut() {
                let r = residues.get(m).copied().unwrap_or(0);
                let x_mod = x.mod_floor(&BigInt::from(p)).to_u32().expect("residue");
                let delta = field.mul(&field.sub(&r, &x_mod), &m_inv);
                *x += &self.modulus * BigInt::from(delta);
            }
        }
        self.modulus *= BigInt::from(p);
        self.primes += 1;
    }

    /// Monic candidate over `Q`, if every coefficient reconstructs.
    fn reconstruct(&self, ring: &PolyRing<Rationals>) -> Option<Vec<Polynomial<BigRational>>> {
        let bound = (&self.modulus >> 1u32).sqrt();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for acc in &self.coeffs {
            let mut terms = Vec::with_capacity(acc.len());
            for (m, x) in acc {
                if x.is_zero() {
                    continue;
                }
                terms.push((*m, rational_reconstruction(x, &self.modulus, &bound)?));
            }
            out.push(ring.from_terms(terms));
        }
        Some(out)
    }
}

/// `r/s ≡ a (mod m)` with `|r|, |s| ≤ bound`, when it exists.
pub(crate) fn rational_reconstruction(
    a: &BigInt,
    m: &BigInt,
    bound: &BigInt,
) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while &r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > *bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

/// Whether appending a last variable keeps leading terms of homogeneous
/// polynomials compatible with setting it to one.
fn homogenizable(order: &MonomialOrder) -> bool {
    matches!(
        order,
        MonomialOrder::Grevlex | MonomialOrder::Lex | MonomialOrder::BlockElimination { .. }
    )
}

fn homogenize(p: &[(Monomial, BigInt)], slot: usize) -> IntTerms {
    let d = p.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
    p.iter()
        .map(|(m, c)| {
            let mut e: Vec<u16> = (0..MAX_VARS).map(|i| m.exponent(i)).collect();
            e[slot] = (d - m.degree()) as u16;
            (Monomial::from_exponents(&e), c.clone())
        })
        .collect()
}

fn image(
    prime: u32,
    names: &[String],
    order: &MonomialOrder,
    inputs: &[IntTerms],
) -> Option<Image> {
    let field = PrimeField::new(prime).ok()?;
    let ring = PolyRing::new(field, names, order.clone()).ok()?;
    let p = BigInt::from(prime);
    let mut gens = Vec::with_capacity(inputs.len());
    for f in inputs {
        let terms: Vec<(Monomial, u32)> = f
            .iter()
            .map(|(m, c)| (*m, c.mod_floor(&p).to_u32().expect("residue")))
            .collect();
        let g = ring.from_terms(terms);
        // a vanishing leading coefficient changes the shape of the input
        if g.leading_monomial() != f.first().map(|t| &t.0) {
            return None;
        }
        gens.push(g);
    }
    let gb = buchberger_direct(&ring, &gens);
    Some(Image {
        prime,
        lms: gb.leading_monomials(),
        elements: gb.elements().iter().map(|e| e.terms().to_vec()).collect(),
    })
}

/// The candidate reduced modulo `prime` equals the computed image.
fn matches_image(candidate: &[Polynomial<BigRational>], image: &Image) -> bool {
    let field = PrimeField::new(image.prime).expect("prime");
    let p = BigInt::from(image.prime);
    candidate.len() == image.elements.len()
        && candidate.iter().zip(&image.elements).all(|(c, e)| {
            let mut reduced = Vec::with_capacity(c.len());
            for (m, q) in c.terms() {
                let num = q.numer().mod_floor(&p).to_u32().expect("residue");
                let den = q.denom().mod_floor(&p).to_u32().expect("residue");
                if den == 0 {
                    return false;
                }
                let v = field.mul(&num, &field.inv(&den).expect("nonzero"));
                if v != 0 {
                    reduced.push((*m, v));
                }
            }
            reduced == *e
        })
}

/// Exact check that `candidate` is a Gröbner basis containing `inputs`.
fn verify(
    ring: &PolyRing<Rationals>,
    candidate: &[Polynomial<BigRational>],
    inputs: &[Polynomial<BigRational>],
) -> bool {
    let gb = GroebnerBasis::from_reduced(ring.clone(), candidate.to_vec());
    if !inputs.iter().all(|f| gb.contains(f)) {
        return false;
    }
    let elems = gb.elements();
    let lms = gb.leading_monomials();
    for i in 0..elems.len() {
        for j in i + 1..elems.len() {
            if lms[i].is_coprime(&lms[j]) {
                continue;
            }
            let l = lms[i].lcm(&lms[j]);
            // pairs through `k` with strictly smaller lcms cover (i, j)
            let covered = (0..elems.len()).any(|k| {
                if k == i || k == j {
                    return false;
                }
                let (a, b) = (lms[i].lcm(&lms[k]), lms[j].lcm(&lms[k]));
                a != l && b != l && a.divides(&l) && b.divides(&l)
            });
            if covered {
                continue;
            }
            if !gb.contains(&s_polynomial(ring, &elems[i], &elems[j])) {
                return false;
            }
        }
    }
    true
}

/// Reduced basis of `gens` over `Q` by the modular route.
pub(crate) fn rational_basis(
    ring: &PolyRing<Rationals>,
    gens: &[Polynomial<BigRational>],
) -> Option<GroebnerBasis<Rationals>> {
    let order = ring.order().clone();
    let n = ring.nvars();
    if !homogenizable(&order) || n + 1 > MAX_VARS {
        return None;
    }
    let mut names: Vec<String> = ring.names().to_vec();
    let mut h = String::from("h_");
    while ring.var_index(&h).is_some() {
        h.push('_');
    }
    names.push(h);
    let hring = PolyRing::new(Rationals, &names, order.clone()).ok()?;

    let mut inputs: Vec<IntTerms> = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let g = ring.canonical(g);
        let coeffs: Vec<BigRational> = g.terms().iter().map(|t| t.1.clone()).collect();
        let (ints, _) = Rationals.to_domain(&coeffs);
        let terms: IntTerms = g.terms().iter().map(|t| t.0).zip(ints).collect();
        let mut hom = homogenize(&terms, n);
        hom.sort_by(|a, b| order.cmp(&b.0, &a.0));
        inputs.push(hom);
    }
    if inputs.is_empty() {
        return Some(GroebnerBasis::from_reduced(ring.clone(), Vec::new()));
    }
    let hinputs: Vec<Polynomial<BigRational>> = inputs
        .iter()
        .map(|f| {
            hring.from_terms(
                f.iter()
                    .map(|(m, c)| (*m, BigRational::from_integer(c.clone())))
                    .collect(),
            )
        })
        .collect();

    let mut primes = Primes {
        next: (1 << 31) - 1,
    };
    let mut classes: Vec<Class> = Vec::new();
    let mut next_attempt = 1;
    let mut verified: Option<Vec<Polynomial<BigRational>>> = None;
    for _ in 0..MAX_PRIMES {
        let prime = primes.next()?;
        let Some(img) = image(prime, &names, &order, &inputs) else {
            continue;
        };
        let k = match classes.iter().position(|c| c.lms == img.lms) {
            Some(k) => {
                classes[k].absorb(&img);
                k
            }
            None => {
                classes.push(Class::new(&img));
                classes.len() - 1
            }
        };
        let best = (0..classes.len())
            .max_by_key(|&c| classes[c].primes)
            .expect("nonempty");
        if best != k || classes[k].primes < next_attempt {
            continue;
        }
        next_attempt = classes[k].primes + 1 + classes[k].primes / 2;
        let Some(candidate) = classes[k].reconstruct(&hring) else {
            continue;
        };
        // one more image as a cheap filter before the exact check
        let check = loop {
            let q = primes.next()?;
            if let Some(img) = image(q, &names, &order, &inputs) {
                break img;
            }
        };
        let agrees = check.lms == classes[k].lms && matches_image(&candidate, &check);
        if check.lms == classes[k].lms {
            classes[k].absorb(&check);
        }
        if agrees && verify(&hring, &candidate, &hinputs) {
            verified = Some(candidate);
            break;
        }
    }
    let hbasis = verified?;

    // set the homogenizing variable to one, then minimalize and tail-reduce
    let mut images: Vec<Polynomial<BigRational>> = (0..n).map(|i| ring.var(i)).collect();
    images.push(ring.one());
    let mut affine: Vec<Polynomial<BigRational>> = hbasis
        .iter()
        .map(|g| ring.monic(&hring.compose(g, &images, ring)))
        .collect();
    affine.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Polynomial<BigRational>> = Vec::new();
    for g in affine {
        let lm = *g.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|m| m.leading_monomial().unwrap().divides(&lm))
        {
            minimal.push(g);
        }
    }
    let basis = GroebnerBasis::from_reduced(ring.clone(), minimal.clone());
    let reduced = minimal
        .iter()
        .map(|g| {
            let (lead, tail) = g.terms().split_first().expect("nonzero");
            let tail = basis.normal_form(&Polynomial::from_sorted_terms(tail.to_vec()));
            let mut terms = vec![lead.clone()];
            terms.extend(tail.terms().iter().cloned());
            Polynomial::from_sorted_terms(terms)
        })
        .collect();
    Some(GroebnerBasis::from_reduced(ring.clone(), reduced))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::satisfies_buchberger_criterion;

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let m = BigInt::from(1_000_003u64) * BigInt::from(998_244_353u64);
        let bound = (&m >> 1u32).sqrt();
        let q = BigRational::new(BigInt::from(-37), BigInt::from(91));
        let g = BigInt::from(91).extended_gcd(&m);
        let a = (BigInt::from(-37) * g.x).mod_floor(&m);
        assert_eq!(rational_reconstruction(&a, &m, &bound), Some(q));
    }

    #[test]
    fn modular_route_matches_direct() {
        let r = PolyRing::grevlex(Rationals, &["x", "y"]).unwrap();
        let gens: Vec<_> = ["4*x^3 + y^4", "5*y^4 + 4*x*y^3", "x^4 + y^5 + x*y^4"]
            .iter()
            .map(|t| r.parse(t).unwrap())
            .collect();
        let sq: Vec<_> = gens
            .iter()
            .flat_map(|a| gens.iter().map(|b| r.mul(a, b)))
            .collect();
        let modular = rational_basis(&r, &sq).expect("modular basis");
        assert_eq!(modular, buchberger_direct(&r, &sq));
        assert!(satisfies_buchberger_criterion(&r, modular.elements()));
    }

    #[test]
    fn modular_route_on_elimination_order() {
        let r = PolyRing::new(
            Rationals,
            &["t", "x", "y"],
            MonomialOrder::BlockElimination { front: 1 },
        )
        .unwrap();
        let gens: Vec<_> = ["t*x^2 - 3/2*y", "(1 - t)*(x*y - 7)", "x^3 - 2*y^2 + 1"]
            .iter()
            .map(|t| r.parse(t).unwrap())
            .collect();
        let modular = rational_basis(&r, &gens).expect("modular basis");
        assert_eq!(modular, buchberger_direct(&r, &gens));
    }

    #[test]
    fn unsupported_orders_decline() {
        let r = PolyRing::new(
            Rationals,
            &["x", "y"],
            MonomialOrder::GradedThenGrevlex {
                weights: vec![2, 3],
            },
        )
        .unwrap();
        assert!(rational_basis(&r, &[r.var(0)]).is_none());
    }
}
