use serde::Serialize;

use super::DualMatrix;
use crate::error::{Error, Result};
use crate::kernel::{group_inverse, matrix_index, moore_penrose, rank, RealMatrix};

/// Rank data of `[[E0, E], [E, O]]`. The dual rank is `block_rank - std_rank`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DualRankValue {
    pub block_rank: usize,
    pub std_rank: usize,
    pub dual_rank: usize,
}

/// Verdicts of the three DMPGI existence tests, kept separate so that
/// callers can cross-check them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExistenceRoutes {
    /// `rk[[E0, E], [E, O]] = 2 rk(E)`
    pub block_rank: bool,
    /// `(I - E E^+) E0 (I - E^+ E) = 0`
    pub projector: bool,
    /// dual rank equals `rk(E)`
    pub dual_rank: bool,
    pub ranks: DualRankValue,
}

impl ExistenceRoutes {
    pub fn agree(&self) -> bool {
        self.block_rank == self.projector && self.projector == self.dual_rank
    }
}

fn block_matrix(e: &DualMatrix) -> RealMatrix {
    let (m, n) = e.shape();
    RealMatrix::compose2(e.dual(), e.std(), e.std(), &RealMatrix::zeros(m, n))
        .expect("blocks of a dual matrix always fit")
}

pub fn dual_rank(e: &DualMatrix) -> DualRankValue {
    let block_rank = rank(&block_matrix(e));
    let std_rank = rank(e.std());
    DualRankValue {
        block_rank,
        std_rank,
        dual_rank: block_rank - std_rank,
    }
}

pub fn dmpgi_existence_routes(e: &DualMatrix) -> ExistenceRoutes {
    let (m, n) = e.shape();
    let ranks = dual_rank(e);
    let pinv = moore_penrose(e.std()).expect("Moore-Penrose inverse always exists");
    let left = &RealMatrix::identity(m) - &(e.std() * &pinv);
    let right = &RealMatrix::identity(n) - &(&pinv * e.std());
    ExistenceRoutes {
        block_rank: ranks.block_rank == 2 * ranks.std_rank,
        projector: (&(&left * e.dual()) * &right).is_zero(),
        dual_rank: ranks.dual_rank == ranks.std_rank,
        ranks,
    }
}

/// Whether the DMPGI exists, decided by the block-rank, projector and
/// dual-rank tests. Disagreement between them is reported as an error.
pub fn dmpgi_exists(e: &DualMatrix) -> Result<(bool, DualRankValue)> {
    let routes = dmpgi_existence_routes(e);
    if !routes.agree() {
        return Err(Error::CharacterizationMismatch {
            context: "DMPGI existence".into(),
            detail: format!(
                "block-rank {}, projector {}, dual-rank {}",
                routes.block_rank, routes.projector, routes.dual_rank
            ),
        });
    }
    Ok((routes.block_rank, routes.ranks))
}

/// `E^+ - eps E^+ E0 E^+`, defined for every dual matrix.
pub fn mpdgi(e: &DualMatrix) -> DualMatrix {
    let p = moore_penrose(e.std()).expect("Moore-Penrose inverse always exists");
    let dual = -&(&(&p * e.dual()) * &p);
    DualMatrix::new(p, dual).expect("E^+ and E^+ E0 E^+ share a shape")
}

/// Names of the dual Penrose equations that `x` fails for `e`.
pub fn dual_penrose_failures(e: &DualMatrix, x: &DualMatrix) -> Vec<&'static str> {
    let ex = e * x;
    let xe = x * e;
    let mut failed = Vec::new();
    if &(&ex * e) != e {
        failed.push("E X E = E");
    }
    if &(&xe * x) != x {
        failed.push("X E X = X");
    }
    if ex.transpose() != ex {
        failed.push("(E X)^T = E X");
    }
    if xe.transpose() != xe {
        failed.push("(X E)^T = X E");
    }
    failed
}

/// Names of the dual group-inverse equations that `x` fails for `e`.
pub fn dual_group_failures(e: &DualMatrix, x: &DualMatrix) -> Vec<&'static str> {
    let ex = e * x;
    let xe = x * e;
    let mut failed = Vec::new();
    if &(&ex * e) != e {
        failed.push("E X E = E");
    }
    if &(&xe * x) != x {
        failed.push("X E X = X");
    }
    if ex != xe {
        failed.push("E X = X E");
    }
    failed
}

/// The dual Moore-Penrose generalized inverse: the unique `X` satisfying the
/// four Penrose equations over the dual numbers. Its standard part is `E^+`
/// and its dual part is
/// `-E^+ E0 E^+ + E^+ E^+^T E0^T (I - E E^+) + (I - E^+ E) E0^T E^+^T E^+`.
pub fn dmpgi(e: &DualMatrix) -> Result<DualMatrix> {
    let (exists, ranks) = dmpgi_exists(e)?;
    if !exists {
        return Err(Error::DmpgiDoesNotExist {
            block_rank: ranks.block_rank,
            twice_std_rank: 2 * ranks.std_rank,
        });
    }
    let (m, n) = e.shape();
    let p = moore_penrose(e.std())?;
    let pt = p.transpose();
    let e0t = e.dual().transpose();
    let left = &RealMatrix::identity(m) - &(e.std() * &p);
    let right = &RealMatrix::identity(n) - &(&p * e.std());
    let dual = &(&-&(&(&p * e.dual()) * &p) + &(&(&(&p * &pt) * &e0t) * &left))
        + &(&(&right * &e0t) * &(&pt * &p));
    let x = DualMatrix::new(p, dual)?;
    let failed = dual_penrose_failures(e, &x);
    if !failed.is_empty() {
        return Err(Error::InternalVerificationFailure(format!(
            "DMPGI fails {}",
            failed.join(", ")
        )));
    }
    Ok(x)
}

/// Membership in the dual index-one class: `E` has index at most one and
/// `(I - E E^#) E0 (I - E^# E) = 0`.
pub fn dual_index_one(e: &DualMatrix) -> Result<bool> {
    Ok(dual_index_one_reason(e)?.is_none())
}

fn dual_index_one_reason(e: &DualMatrix) -> Result<Option<String>> {
    if !e.is_square() {
        let (rows, cols) = e.shape();
        return Err(Error::NotSquare {
            op: "dual_index_one",
            rows,
            cols,
        });
    }
    let index = matrix_index(e.std())?;
    if index > 1 {
        return Ok(Some(format!("index of E is {index}")));
    }
    let g = group_inverse(e.std())?;
    let proj = &RealMatrix::identity(e.shape().0) - &(e.std() * &g);
    if !(&(&proj * e.dual()) * &proj).is_zero() {
        return Ok(Some("(I - E E^#) E0 (I - E^# E) is nonzero".into()));
    }
    Ok(None)
}

/// The dual group generalized inverse: the unique `X` with `EXE = E`,
/// `XEX = X` and `EX = XE` over the dual numbers. Its standard part is
/// `E^#` and its dual part is
/// `-E^# E0 E^# + (E^#)^2 E0 (I - E E^#) + (I - E E^#) E0 (E^#)^2`.
pub fn dggi(e: &DualMatrix) -> Result<DualMatrix> {
    if let Some(reason) = dual_index_one_reason(e)? {
        return Err(Error::DggiDoesNotExist { reason });
    }
    let g = group_inverse(e.std())?;
    let g2 = &g * &g;
    let proj = &RealMatrix::identity(e.shape().0) - &(e.std() * &g);
    let dual = &(&-&(&(&g * e.dual()) * &g) + &(&(&g2 * e.dual()) * &proj))
        + &(&(&proj * e.dual()) * &g2);
    let x = DualMatrix::new(g, dual)?;
    let failed = dual_group_failures(e, &x);
    if !failed.is_empty() {
        return Err(Error::InternalVerificationFailure(format!(
            "DGGI fails {}",
            failed.join(", ")
        )));
    }
    Ok(x)
}

/// `E^# - eps E^# E0 E^#`, defined whenever `E` has index at most one.
pub fn gdgi(e: &DualMatrix) -> Result<DualMatrix> {
    let g = group_inverse(e.std())?;
    let dual = -&(&(&g * e.dual()) * &g);
    DualMatrix::new(g, dual)
}
