//! Decision procedures for the ten partial orders.
//!
//! Each order is evaluated through every equivalent characterization known
//! for it. [`check_real_order`] and [`check_dual_order`] require all routes to
//! agree and report a [`Error::CharacterizationMismatch`] otherwise;
//! [`characterization_routes`] returns the raw per-route verdicts.

mod routes;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dual::{dmpgi_exists, dual_index_one, dual_rank, DualMatrix, DualRankValue};
use crate::error::{Error, Result};
use crate::kernel::{matrix_index, rank, RealMatrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderKind {
    Minus,
    Star,
    Sharp,
    DStar,
    PStar,
    DSharp,
    GSharp,
    DualMinus,
    DMSharp,
    DMStar,
}

impl OrderKind {
    pub const ALL: [OrderKind; 10] = [
        OrderKind::Minus,
        OrderKind::Star,
        OrderKind::Sharp,
        OrderKind::DStar,
        OrderKind::PStar,
        OrderKind::DSharp,
        OrderKind::GSharp,
        OrderKind::DualMinus,
        OrderKind::DMSharp,
        OrderKind::DMStar,
    ];

    pub const DUAL: [OrderKind; 7] = [
        OrderKind::DStar,
        OrderKind::PStar,
        OrderKind::DSharp,
        OrderKind::GSharp,
        OrderKind::DualMinus,
        OrderKind::DMSharp,
        OrderKind::DMStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OrderKind::Minus => "minus",
            OrderKind::Star => "star",
            OrderKind::Sharp => "sharp",
            OrderKind::DStar => "d-star",
            OrderKind::PStar => "p-star",
            OrderKind::DSharp => "d-sharp",
            OrderKind::GSharp => "g-sharp",
            OrderKind::DualMinus => "dual-minus",
            OrderKind::DMSharp => "dm-sharp",
            OrderKind::DMStar => "dm-star",
        }
    }

    /// Minus, star and sharp compare real matrices; the rest compare dual
    /// matrices.
    pub fn is_real(self) -> bool {
        matches!(self, OrderKind::Minus | OrderKind::Star | OrderKind::Sharp)
    }

    /// Orders defined only for square inputs of (dual) index one.
    pub fn needs_index_one(self) -> bool {
        matches!(
            self,
            OrderKind::Sharp | OrderKind::DSharp | OrderKind::GSharp | OrderKind::DMSharp
        )
    }

    /// The real order obtained by dropping dual parts, for the dual orders
    /// that reduce to one.
    pub fn standard_part(self) -> Option<OrderKind> {
        match self {
            OrderKind::DualMinus => Some(OrderKind::Minus),
            OrderKind::DMSharp => Some(OrderKind::Sharp),
            OrderKind::DMStar => Some(OrderKind::Star),
            _ => None,
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OrderKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        OrderKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = OrderKind::ALL.iter().map(|k| k.name()).collect();
                format!("unknown order '{s}', expected one of {}", names.join(", "))
            })
    }
}

impl Serialize for OrderKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// One side of a violated equation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum WitnessValue {
    Integer(i64),
    Real(RealMatrix),
    Dual(DualMatrix),
}

impl fmt::Display for WitnessValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessValue::Integer(v) => write!(f, "{v}"),
            WitnessValue::Real(m) => write!(f, "{m}"),
            WitnessValue::Dual(m) => write!(f, "{m}"),
        }
    }
}

/// A violated equation `lhs = rhs` with both sides evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub equation: String,
    pub lhs: WitnessValue,
    pub rhs: WitnessValue,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RouteResult {
    pub name: &'static str,
    pub verdict: bool,
    /// Every equation of the route that fails, in evaluation order.
    pub witnesses: Vec<Witness>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DualRanks {
    pub e: DualRankValue,
    pub f: DualRankValue,
    pub difference: DualRankValue,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RankData {
    pub r_e: usize,
    pub r_f: usize,
    /// `rk(F - E)`
    pub r_diff: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dual: Option<DualRanks>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderReport {
    pub kind: OrderKind,
    pub verdict: bool,
    pub routes: Vec<RouteResult>,
    pub rank_data: RankData,
}

impl OrderReport {
    /// Witnesses of the first failing route, or nothing if the pair is related.
    pub fn witnesses(&self) -> &[Witness] {
        self.routes
            .iter()
            .find(|r| !r.verdict)
            .map_or(&[], |r| &r.witnesses)
    }

    /// All witnesses across routes.
    pub fn all_witnesses(&self) -> impl Iterator<Item = &Witness> {
        self.routes.iter().flat_map(|r| r.witnesses.iter())
    }
}

fn check_shapes(op: &'static str, left: (usize, usize), right: (usize, usize)) -> Result<()> {
    if left != right {
        return Err(Error::ShapeMismatch { op, left, right });
    }
    Ok(())
}

fn real_rank_data(e: &RealMatrix, f: &RealMatrix) -> RankData {
    RankData {
        r_e: rank(e),
        r_f: rank(f),
        r_diff: rank(&(f - e)),
        dual: None,
    }
}

fn assemble(kind: OrderKind, routes: Vec<RouteResult>, rank_data: RankData) -> Result<OrderReport> {
    let verdict = routes.first().is_some_and(|r| r.verdict);
    if routes.iter().any(|r| r.verdict != verdict) {
        let detail = routes
            .iter()
            .map(|r| format!("{} = {}", r.name, r.verdict))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::CharacterizationMismatch {
            context: format!("{kind} order"),
            detail,
        });
    }
    Ok(OrderReport {
        kind,
        verdict,
        routes,
        rank_data,
    })
}

fn real_sharp_precondition(e: &RealMatrix, f: &RealMatrix) -> Result<()> {
    for m in [e, f] {
        let index = matrix_index(m)?;
        if index > 1 {
            let r = rank(m);
            return Err(Error::IndexNotOne {
                index,
                rank: r,
                rank_sq: rank(&(m * m)),
            });
        }
    }
    Ok(())
}

/// Route verdicts for a real order, without the agreement check.
pub fn real_routes(kind: OrderKind, e: &RealMatrix, f: &RealMatrix) -> Result<Vec<RouteResult>> {
    check_shapes("check_real_order", e.shape(), f.shape())?;
    match kind {
        OrderKind::Minus => Ok(vec![routes::minus_rank(e, f)]),
        OrderKind::Star => Ok(vec![
            routes::star_transpose(e, f),
            routes::star_moore_penrose(e, f)?,
            routes::star_minus(e, f),
        ]),
        OrderKind::Sharp => {
            real_sharp_precondition(e, f)?;
            Ok(vec![
                routes::sharp_group_inverse(e, f)?,
                routes::sharp_commuting_square(e, f),
                routes::sharp_minus(e, f),
            ])
        }
        _ => Err(Error::InvalidParams(format!(
            "{kind} compares dual matrices, not real ones"
        ))),
    }
}

/// Decides a real order (minus, star or sharp).
pub fn check_real_order(kind: OrderKind, e: &RealMatrix, f: &RealMatrix) -> Result<OrderReport> {
    let routes = real_routes(kind, e, f)?;
    assemble(kind, routes, real_rank_data(e, f))
}

/// The precondition a dual order places on both inputs, if it fails.
pub fn dual_precondition(kind: OrderKind, e: &DualMatrix, f: &DualMatrix) -> Result<Option<String>> {
    check_shapes("check_dual_order", e.shape(), f.shape())?;
    for (name, x) in [("E", e), ("F", f)] {
        if kind.needs_index_one() {
            if !x.is_square() {
                let (r, c) = x.shape();
                return Ok(Some(format!("{name} must be square, got {r}x{c}")));
            }
            if !dual_index_one(x)? {
                return Ok(Some(format!("{name} does not have dual index one")));
            }
        } else {
            let (exists, ranks) = dmpgi_exists(x)?;
            if !exists {
                return Ok(Some(format!(
                    "the DMPGI of {name} does not exist (rk[[E0,E],[E,O]] = {} but 2rk(E) = {})",
                    ranks.block_rank,
                    2 * ranks.std_rank
                )));
            }
        }
    }
    Ok(None)
}

/// Evaluates every characterization route of a dual order and returns the
/// per-route verdicts, without checking that they agree.
pub fn characterization_routes(
    kind: OrderKind,
    e: &DualMatrix,
    f: &DualMatrix,
) -> Result<Vec<RouteResult>> {
    if kind.is_real() {
        return real_routes(kind, e.std(), f.std());
    }
    if let Some(reason) = dual_precondition(kind, e, f)? {
        return Err(Error::PreconditionUnmet(format!("{kind} order: {reason}")));
    }
    routes::DualPair::new(e, f).routes(kind)
}

/// Decides a dual order. Fails with [`Error::PreconditionUnmet`] when the
/// order is not defined on the inputs.
pub fn check_dual_order(kind: OrderKind, e: &DualMatrix, f: &DualMatrix) -> Result<OrderReport> {
    if kind.is_real() {
        return Err(Error::InvalidParams(format!(
            "{kind} compares real matrices, not dual ones"
        )));
    }
    let routes = characterization_routes(kind, e, f)?;
    let diff = f - e;
    let mut data = real_rank_data(e.std(), f.std());
    data.dual = Some(DualRanks {
        e: dual_rank(e),
        f: dual_rank(f),
        difference: dual_rank(&diff),
    });
    assemble(kind, routes, data)
}

/// Checks any order on a dual pair; real orders look only at the standard
/// parts.
pub fn check_order(kind: OrderKind, e: &DualMatrix, f: &DualMatrix) -> Result<OrderReport> {
    if kind.is_real() {
        check_real_order(kind, e.std(), f.std())
    } else {
        check_dual_order(kind, e, f)
    }
}

/// Verdict of one order on one pair, or the reason it is undefined there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Verdict(bool),
    PreconditionUnmet(String),
}

impl Outcome {
    pub fn verdict(&self) -> Option<bool> {
        match self {
            Outcome::Verdict(v) => Some(*v),
            Outcome::PreconditionUnmet(_) => None,
        }
    }
}

/// Decides `kind`, folding precondition failures into [`Outcome`].
pub fn outcome(kind: OrderKind, e: &DualMatrix, f: &DualMatrix) -> Result<Outcome> {
    match check_order(kind, e, f) {
        Ok(report) => Ok(Outcome::Verdict(report.verdict)),
        Err(Error::PreconditionUnmet(reason)) => Ok(Outcome::PreconditionUnmet(reason)),
        Err(err @ Error::IndexNotOne { .. }) => Ok(Outcome::PreconditionUnmet(err.to_string())),
        Err(err @ Error::NotSquare { .. }) if kind == OrderKind::Sharp => {
            Ok(Outcome::PreconditionUnmet(err.to_string()))
        }
        Err(err) => Err(err),
    }
}

/// Direct implications between the orders.
pub const IMPLICATION_EDGES: [(OrderKind, OrderKind); 9] = [
    (OrderKind::DSharp, OrderKind::DMSharp),
    (OrderKind::GSharp, OrderKind::DMSharp),
    (OrderKind::DMSharp, OrderKind::DualMinus),
    (OrderKind::DStar, OrderKind::DMStar),
    (OrderKind::PStar, OrderKind::DMStar),
    (OrderKind::DMStar, OrderKind::DualMinus),
    (OrderKind::DualMinus, OrderKind::Minus),
    (OrderKind::DMSharp, OrderKind::Sharp),
    (OrderKind::DMStar, OrderKind::Star),
];

/// Transitive closure of [`IMPLICATION_EDGES`].
pub fn implication_closure() -> Vec<(OrderKind, OrderKind)> {
    let mut edges: Vec<(OrderKind, OrderKind)> = IMPLICATION_EDGES.to_vec();
    loop {
        let mut added = false;
        for i in 0..edges.len() {
            for j in 0..edges.len() {
                let (a, b) = edges[i];
                let (c, d) = edges[j];
                if b == c && !edges.contains(&(a, d)) {
                    edges.push((a, d));
                    added = true;
                }
            }
        }
        if !added {
            break;
        }
    }
    edges.sort();
    edges
}

pub type ImplicationMatrix = BTreeMap<OrderKind, Outcome>;

/// Evaluates all ten orders on the pair, real ones on the standard parts.
pub fn evaluate_all(e: &DualMatrix, f: &DualMatrix) -> Result<ImplicationMatrix> {
    OrderKind::ALL
        .into_iter()
        .map(|k| Ok((k, outcome(k, e, f)?)))
        .collect()
}

/// Implications of the closure whose premise holds and whose conclusion is
/// decided false.
pub fn implication_violations(m: &ImplicationMatrix) -> Vec<(OrderKind, OrderKind)> {
    implication_closure()
        .into_iter()
        .filter(|(a, b)| {
            m.get(a).and_then(Outcome::verdict) == Some(true)
                && m.get(b).and_then(Outcome::verdict) == Some(false)
        })
        .collect()
}

/// Evaluates all orders and checks every implication between them.
pub fn implication_matrix(e: &DualMatrix, f: &DualMatrix) -> Result<ImplicationMatrix> {
    let m = evaluate_all(e, f)?;
    let violated = implication_violations(&m);
    if !violated.is_empty() {
        let detail = violated
            .iter()
            .map(|(a, b)| format!("{a} => {b}"))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::TheoremViolation(detail));
    }
    Ok(m)
}
