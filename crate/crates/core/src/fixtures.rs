//! Bundled knowledge bases.
//!
//! - `car`: the five-constraint car configuration KB.
//! - `car_prime`: `car` plus the entailed constraint `ca` placed first.
//! - `car_requirements`: customer requirements `c6`..`c10` for `car`.
//! - `bike30`: a synthetic 30-constraint bicycle KB without redundancy.
//! - `bike33_injected`: `bike30` with three entailed constraints `r1`..`r3`
//!   mixed in.

use crate::format::{parse_kb, parse_requirements};
use crate::model::{Constraint, KnowledgeBase};

pub const CAR: &str = include_str!("../data/car.kb");
pub const CAR_PRIME: &str = include_str!("../data/car_prime.kb");
pub const CAR_REQUIREMENTS: &str = include_str!("../data/car_req.kb");
pub const BIKE30: &str = include_str!("../data/bike30.kb");
pub const BIKE33_INJECTED: &str = include_str!("../data/bike33_injected.kb");

fn load(text: &str) -> KnowledgeBase {
    parse_kb(text).expect("bundled fixture parses")
}

pub fn car() -> KnowledgeBase {
    load(CAR)
}

pub fn car_prime() -> KnowledgeBase {
    load(CAR_PRIME)
}

pub fn car_requirements() -> Vec<Constraint> {
    parse_requirements(CAR_REQUIREMENTS, &car())
        .expect("bundled fixture parses")
        .constraints()
        .to_vec()
}

pub fn bike30() -> KnowledgeBase {
    load(BIKE30)
}

pub fn bike33_injected() -> KnowledgeBase {
    load(BIKE33_INJECTED)
}

/// Every bundled KB with its name.
pub fn all() -> Vec<(String, KnowledgeBase)> {
    vec![
        ("car".into(), car()),
        ("car_prime".into(), car_prime()),
        ("bike30".into(), bike30()),
        ("bike33_injected".into(), bike33_injected()),
    ]
}
