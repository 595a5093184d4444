//! Shipped root data.

use std::path::Path;

use super::{parse_datum, q, LatticeError, Root, RootDatum, RootKind, WeightVector};

pub const SL2: &str = include_str!("../../fixtures/sl2.rd");
pub const GROUP: &str = include_str!("../../fixtures/group.rd");
pub const RANK1_M3: &str = include_str!("../../fixtures/rank1_m3.rd");
pub const SU21: &str = include_str!("../../fixtures/su21.rd");

pub fn sl2() -> RootDatum {
    parse_datum(SL2, "sl2.rd").expect("shipped fixture is valid")
}

/// Rank one, multiplicity 2.
pub fn group_case() -> RootDatum {
    parse_datum(GROUP, "group.rd").expect("shipped fixture is valid")
}

pub fn su21() -> RootDatum {
    parse_datum(SU21, "su21.rd").expect("shipped fixture is valid")
}

/// The rank-one datum `{+-alpha}` with `<alpha, alpha> = 1` and multiplicity
/// `m`. Only `m = 1` is equal rank, so only then is `Sigma^+` attached.
pub fn rank_one(multiplicity: u32) -> Result<RootDatum, LatticeError> {
    let root = |sign: i64, positive| Root {
        coords: WeightVector(vec![q(sign, 1)]),
        kind: RootKind::Noncompact,
        multiplicity,
        positive,
    };
    let sigma = (multiplicity == 1).then(|| vec![WeightVector(vec![q(1, 1)])]);
    RootDatum::new(
        format!("rank1-m{multiplicity}"),
        vec![vec![q(1, 1)]],
        vec![root(1, true), root(-1, false)],
        vec![0],
        sigma,
    )
}

/// Every shipped datum, keyed by name.
pub fn all() -> Vec<RootDatum> {
    vec![
        sl2(),
        group_case(),
        rank_one(1).expect("valid"),
        rank_one(2).expect("valid"),
        rank_one(3).expect("valid"),
        su21(),
    ]
}

pub fn load_datum(path: impl AsRef<Path>) -> Result<RootDatum, LatticeError> {
    let path = path.as_ref();
    let label = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| LatticeError::Io {
        path: label.clone(),
        message: e.to_string(),
    })?;
    parse_datum(&text, &label)
}
