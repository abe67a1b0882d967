//! Direct solution of the defining equations of the dual generalized
//! inverses, used as an oracle independent of the closed forms.

use crate::dual::DualMatrix;
use crate::error::Result;
use crate::kernel::{group_inverse, moore_penrose, solve, RealMatrix};

/// Which set of defining equations to solve.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverseSystem {
    /// The four dual Penrose equations.
    Penrose,
    /// `E X E = E`, `X E X = X`, `E X = X E` over dual matrices.
    Group,
}

/// Solution set of the dual-part equations: one point plus the dimension
/// of the directions along which it can move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPartSolutions {
    pub particular: RealMatrix,
    pub nullity: usize,
}

fn residuals(system: InverseSystem, e: &DualMatrix, x: &DualMatrix) -> Vec<DualMatrix> {
    let ex = e * x;
    let xe = x * e;
    let mut out = vec![&(&ex * e) - e, &(&xe * x) - x];
    match system {
        InverseSystem::Penrose => {
            out.push(&ex.transpose() - &ex);
            out.push(&xe.transpose() - &xe);
        }
        InverseSystem::Group => out.push(&ex - &xe),
    }
    out
}

fn dual_parts(rs: &[DualMatrix]) -> RealMatrix {
    let entries: Vec<_> = rs.iter().flat_map(|r| r.dual().entries().iter().cloned()).collect();
    let len = entries.len();
    RealMatrix::new(len, 1, entries).expect("length matches")
}

/// Fixes the standard part of the unknown at `E^+` (or `E^#`), which the
/// standard parts of the equations force, and solves the remaining linear
/// system for the dual part. `Ok(None)` means no dual part works; a group
/// system on a matrix of index above one fails with
/// [`crate::Error::IndexNotOne`].
pub fn dual_part_solutions(e: &DualMatrix, system: InverseSystem) -> Result<Option<DualPartSolutions>> {
    let std = match system {
        InverseSystem::Penrose => moore_penrose(e.std())?,
        InverseSystem::Group => group_inverse(e.std())?,
    };
    let (rows, cols) = std.shape();
    let at = |dual: RealMatrix| {
        let x = DualMatrix::new(std.clone(), dual).expect("shapes match");
        let rs = residuals(system, e, &x);
        debug_assert!(rs.iter().all(|r| r.std().is_zero()));
        dual_parts(&rs)
    };
    let offset = at(RealMatrix::zeros(rows, cols));
    let mut columns = Vec::with_capacity(rows * cols);
    for i in 0..rows {
        for j in 0..cols {
            let mut unit = RealMatrix::zeros(rows, cols);
            unit[(i, j)] = crate::kernel::int(1);
            columns.push(&at(unit) - &offset);
        }
    }
    let grid = vec![columns.iter().collect::<Vec<_>>()];
    let a = RealMatrix::compose(&grid)?;
    let Some(solution) = solve(&a, &-&offset)? else {
        return Ok(None);
    };
    let particular = RealMatrix::new(rows, cols, solution.particular.entries().to_vec())?;
    Ok(Some(DualPartSolutions {
        particular,
        nullity: solution.nullspace.len(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dual(std: &[&[i64]], dual: &[&[i64]]) -> DualMatrix {
        DualMatrix::from_rows(std, dual).unwrap()
    }

    #[test]
    fn swap_dual_part_has_a_unique_solution() {
        let e = dual(&[&[1, 0], &[0, 0]], &[&[0, 1], &[1, 0]]);
        let s = dual_part_solutions(&e, InverseSystem::Penrose).unwrap().unwrap();
        assert_eq!(s.nullity, 0);
        assert_eq!(s.particular, RealMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap());
    }

    #[test]
    fn real_input_gives_zero_dual_part() {
        let e = DualMatrix::real(RealMatrix::from_rows(&[[1, 2], [2, 4]]).unwrap());
        let s = dual_part_solutions(&e, InverseSystem::Penrose).unwrap().unwrap();
        assert_eq!(s.nullity, 0);
        assert!(s.particular.is_zero());
        let g = dual_part_solutions(&e, InverseSystem::Group).unwrap().unwrap();
        assert!(g.particular.is_zero());
    }

    #[test]
    fn blocked_dual_part_has_no_solution() {
        let e = dual(&[&[0, 0], &[0, 0]], &[&[1, 0], &[0, 0]]);
        assert_eq!(dual_part_solutions(&e, InverseSystem::Penrose).unwrap(), None);
        assert_eq!(dual_part_solutions(&e, InverseSystem::Group).unwrap(), None);
    }

    #[test]
    fn group_system_on_nilpotent_fails() {
        let e = DualMatrix::real(RealMatrix::from_rows(&[[0, 1], [0, 0]]).unwrap());
        assert!(dual_part_solutions(&e, InverseSystem::Group).is_err());
    }
}
