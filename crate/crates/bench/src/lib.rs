//! Shared fixtures for the benchmarks.

use jactype::{DivisorData, PolyRing, PrimeField, Rationals};

pub const REIFFEN_45: &str = "x^4 + y^5 + x*y^4";
pub const KATO_T43: &str = "x^7 + y^5 - x^4*y^3";

pub fn gf_germ(f: &str) -> DivisorData<PrimeField> {
    let ring = PolyRing::grevlex(PrimeField::new(32003).unwrap(), &["x", "y"]).unwrap();
    DivisorData::parse(&ring, f).unwrap()
}

pub fn q_germ(f: &str) -> DivisorData<Rationals> {
    let ring = PolyRing::grevlex(Rationals, &["x", "y"]).unwrap();
    DivisorData::parse(&ring, f).unwrap()
}
