use super::{check_style, BaseBlocks, ChainParams, FactorPair, GeneratorParams, StepBlocks};
use crate::dual::DualMatrix;
use crate::error::{Error, Result};
use crate::kernel::{inverse, RealMatrix};
use crate::orders::{check_order, OrderKind};

/// A generated pair together with the data that produced it.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GeneratedPair {
    pub kind: OrderKind,
    pub e: DualMatrix,
    pub f: DualMatrix,
    pub r_e: usize,
    pub r_f: usize,
    pub factors: FactorPair,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct GeneratedChain {
    pub kind: OrderKind,
    pub e: DualMatrix,
    pub f: DualMatrix,
    pub g: DualMatrix,
    pub ranks: [usize; 3],
    pub factors: FactorPair,
}

fn expect_shape(name: &'static str, m: &RealMatrix, shape: (usize, usize)) -> Result<()> {
    if m.shape() != shape {
        return Err(Error::ShapeMismatch {
            op: name,
            left: m.shape(),
            right: shape,
        });
    }
    Ok(())
}

/// `E` in canonical coordinates.
fn base_coords(rows: usize, cols: usize, r_e: usize, r_f: usize, b: &BaseBlocks) -> Result<(RealMatrix, RealMatrix)> {
    let k = r_f - r_e;
    expect_shape("D1", &b.d1, (r_e, r_e))?;
    expect_shape("E1", &b.e1, (r_e, r_e))?;
    expect_shape("E2", &b.e2, (r_e, k))?;
    expect_shape("E3", &b.e3, (r_e, cols - r_f))?;
    expect_shape("E4", &b.e4, (k, r_e))?;
    expect_shape("E7", &b.e7, (rows - r_f, r_e))?;
    if inverse(&b.d1).is_err() {
        return Err(Error::NonInvertibleBlock("D1"));
    }
    let mut std = RealMatrix::zeros(rows, cols);
    std.set_block(0, 0, &b.d1);
    let mut dual = RealMatrix::zeros(rows, cols);
    dual.set_block(0, 0, &b.e1);
    dual.set_block(0, r_e, &b.e2);
    dual.set_block(0, r_f, &b.e3);
    dual.set_block(r_e, 0, &b.e4);
    dual.set_block(r_f, 0, &b.e7);
    Ok((std, dual))
}

/// Imposes the constraints of `kind` on the step blocks, given the standard
/// block `D1` and the dual blocks `E2`, `E4` of the base.
///
/// Minus-type kinds keep `R`, `S`, `M` and `N`. The others set `R = S = O`;
/// on top of that p-star and g-sharp set `M = N = O`, d-star sets
/// `M = -D2 E2^T D1^-1`, `N = -D1^-1 E4^T D2`, and d-sharp sets
/// `M = -D2 E4 D1^-1`, `N = -D1^-1 E2 D2`. Real kinds drop every dual block.
pub fn specialize(
    kind: OrderKind,
    d1: &RealMatrix,
    e2: &RealMatrix,
    e4: &RealMatrix,
    step: &StepBlocks,
) -> Result<StepBlocks> {
    let mut s = step.clone();
    let zero = |m: &RealMatrix| RealMatrix::zeros(m.rows(), m.cols());
    if !matches!(kind, OrderKind::Minus | OrderKind::DualMinus) {
        s.r = zero(&s.r);
        s.s = zero(&s.s);
    }
    let d1_inv = inverse(d1).map_err(|_| Error::NonInvertibleBlock("D1"))?;
    match kind {
        OrderKind::PStar | OrderKind::GSharp => {
            s.m = zero(&s.m);
            s.n = zero(&s.n);
        }
        OrderKind::DStar => {
            // the coupled blocks solve the defining equations only for a
            // symmetric D1; otherwise D1^-T would be needed in place of D1^-1
            if !d1.is_symmetric() {
                return Err(Error::InvalidParams("d-star forms need a symmetric D1".into()));
            }
            s.m = -&(&(&s.d2 * &e2.transpose()) * &d1_inv);
            s.n = -&(&(&d1_inv * &e4.transpose()) * &s.d2);
        }
        OrderKind::DSharp => {
            s.m = -&(&(&s.d2 * e4) * &d1_inv);
            s.n = -&(&(&d1_inv * e2) * &s.d2);
        }
        _ => {}
    }
    if kind.is_real() {
        for b in [&mut s.m, &mut s.n, &mut s.f5, &mut s.f6, &mut s.f8] {
            *b = zero(b);
        }
    }
    Ok(s)
}

/// Extends `E`, given in canonical coordinates whose leading `r_e x r_e`
/// standard block is invertible, to `F` of rank `r_f`:
///
/// ```text
/// F  = [[D1 + R D2 S, R D2, O], [D2 S, D2, O], [O, O, O]]
/// F0 = [[E1 + R M + N S - R F5 S, E2 + N, E3 + R F6],
///       [E4 + M, F5, F6],
///       [E7 + F8 S, F8, O]]
/// ```
fn extend(
    kind: OrderKind,
    e_std: &RealMatrix,
    e_dual: &RealMatrix,
    r_e: usize,
    r_f: usize,
    step: &StepBlocks,
) -> Result<(RealMatrix, RealMatrix)> {
    let (rows, cols) = e_std.shape();
    let k = r_f - r_e;
    let d1 = e_std.block(0, 0, r_e, r_e);
    let e1 = e_dual.block(0, 0, r_e, r_e);
    let e2 = e_dual.block(0, r_e, r_e, k);
    let e3 = e_dual.block(0, r_f, r_e, cols - r_f);
    let e4 = e_dual.block(r_e, 0, k, r_e);
    let e7 = e_dual.block(r_f, 0, rows - r_f, r_e);

    expect_shape("D2", &step.d2, (k, k))?;
    expect_shape("R", &step.r, (r_e, k))?;
    expect_shape("S", &step.s, (k, r_e))?;
    expect_shape("M", &step.m, (k, r_e))?;
    expect_shape("N", &step.n, (r_e, k))?;
    expect_shape("F5", &step.f5, (k, k))?;
    expect_shape("F6", &step.f6, (k, cols - r_f))?;
    expect_shape("F8", &step.f8, (rows - r_f, k))?;
    if inverse(&step.d2).is_err() {
        return Err(Error::NonInvertibleBlock("D2"));
    }
    let StepBlocks { d2, r, s, m, n, f5, f6, f8 } = specialize(kind, &d1, &e2, &e4, step)?;

    let rd2 = &r * &d2;
    let mut f_std = RealMatrix::zeros(rows, cols);
    f_std.set_block(0, 0, &(&d1 + &(&rd2 * &s)));
    f_std.set_block(0, r_e, &rd2);
    f_std.set_block(r_e, 0, &(&d2 * &s));
    f_std.set_block(r_e, r_e, &d2);

    let mut f_dual = RealMatrix::zeros(rows, cols);
    let top_left = &(&(&e1 + &(&r * &m)) + &(&n * &s)) - &(&(&r * &f5) * &s);
    f_dual.set_block(0, 0, &top_left);
    f_dual.set_block(0, r_e, &(&e2 + &n));
    f_dual.set_block(0, r_f, &(&e3 + &(&r * &f6)));
    f_dual.set_block(r_e, 0, &(&e4 + &m));
    f_dual.set_block(r_e, r_e, &f5);
    f_dual.set_block(r_e, r_f, &f6);
    f_dual.set_block(r_f, 0, &(&e7 + &(&f8 * &s)));
    f_dual.set_block(r_f, r_e, &f8);
    Ok((f_std, f_dual))
}

fn map_out(factors: &FactorPair, std: &RealMatrix, dual: &RealMatrix) -> DualMatrix {
    DualMatrix::new(factors.apply(std), factors.apply(dual)).expect("factors preserve the shape")
}

fn real_base(kind: OrderKind, base: &BaseBlocks) -> BaseBlocks {
    let mut b = base.clone();
    if kind.is_real() {
        for m in [&mut b.e1, &mut b.e2, &mut b.e3, &mut b.e4, &mut b.e7] {
            *m = RealMatrix::zeros(m.rows(), m.cols());
        }
    }
    b
}

fn check_factors(kind: OrderKind, factors: &FactorPair, rows: usize, cols: usize) -> Result<()> {
    check_style(kind, factors.style, rows, cols)?;
    if factors.left.shape() != (rows, rows) || factors.right.shape() != (cols, cols) {
        return Err(Error::ShapeMismatch {
            op: "factors",
            left: factors.left.shape(),
            right: factors.right.shape(),
        });
    }
    if !factors.is_exact() {
        return Err(Error::InvalidParams("factors are not orthogonal or not mutually inverse".into()));
    }
    Ok(())
}

/// Assembles the canonical pair for `kind` without checking the order.
pub fn build_pair(kind: OrderKind, p: &GeneratorParams) -> Result<GeneratedPair> {
    if p.r_e > p.r_f || p.r_f > p.rows.min(p.cols) {
        return Err(Error::InvalidParams(format!(
            "ranks r_e = {}, r_f = {} do not fit a {}x{} matrix",
            p.r_e, p.r_f, p.rows, p.cols
        )));
    }
    check_factors(kind, &p.factors, p.rows, p.cols)?;
    let base = real_base(kind, &p.base);
    let (e_std, e_dual) = base_coords(p.rows, p.cols, p.r_e, p.r_f, &base)?;
    let (f_std, f_dual) = extend(kind, &e_std, &e_dual, p.r_e, p.r_f, &p.step)?;
    Ok(GeneratedPair {
        kind,
        e: map_out(&p.factors, &e_std, &e_dual),
        f: map_out(&p.factors, &f_std, &f_dual),
        r_e: p.r_e,
        r_f: p.r_f,
        factors: p.factors.clone(),
    })
}

fn require(kind: OrderKind, e: &DualMatrix, f: &DualMatrix, what: &str) -> Result<()> {
    let report = check_order(kind, e, f)?;
    if !report.verdict {
        return Err(Error::TheoremViolation(format!(
            "generated {what} is not related under the {kind} order"
        )));
    }
    Ok(())
}

/// Builds the canonical pair for `kind` and confirms that it is related.
pub fn gen_pair(kind: OrderKind, p: &GeneratorParams) -> Result<GeneratedPair> {
    let pair = build_pair(kind, p)?;
    require(kind, &pair.e, &pair.f, "pair")?;
    Ok(pair)
}

/// Assembles a chain by applying the canonical step twice in canonical
/// coordinates, without checking the order.
pub fn build_chain(kind: OrderKind, p: &ChainParams) -> Result<GeneratedChain> {
    let [r_e, r_f, r_g] = p.ranks;
    if r_e > r_f || r_f > r_g || r_g > p.rows.min(p.cols) {
        return Err(Error::InvalidParams(format!(
            "ranks {:?} do not fit a {}x{} matrix",
            p.ranks, p.rows, p.cols
        )));
    }
    check_factors(kind, &p.factors, p.rows, p.cols)?;
    let base = real_base(kind, &p.base);
    let (e_std, e_dual) = base_coords(p.rows, p.cols, r_e, r_f, &base)?;
    let (f_std, f_dual) = extend(kind, &e_std, &e_dual, r_e, r_f, &p.first)?;
    let (g_std, g_dual) = extend(kind, &f_std, &f_dual, r_f, r_g, &p.second)?;
    Ok(GeneratedChain {
        kind,
        e: map_out(&p.factors, &e_std, &e_dual),
        f: map_out(&p.factors, &f_std, &f_dual),
        g: map_out(&p.factors, &g_std, &g_dual),
        ranks: p.ranks,
        factors: p.factors.clone(),
    })
}

/// Builds a chain and confirms all three relations.
pub fn gen_chain(kind: OrderKind, p: &ChainParams) -> Result<GeneratedChain> {
    let c = build_chain(kind, p)?;
    require(kind, &c.e, &c.f, "chain (E, F)")?;
    require(kind, &c.f, &c.g, "chain (F, G)")?;
    require(kind, &c.e, &c.g, "chain (E, G)")?;
    Ok(c)
}
