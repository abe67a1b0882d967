use std::cell::OnceCell;

use super::{OrderKind, RouteResult, Witness, WitnessValue};
use crate::dual::{dggi, dmpgi, dual_rank, gdgi, mpdgi, DualMatrix};
use crate::error::Result;
use crate::kernel::{group_inverse, moore_penrose, rank, RealMatrix};

/// Accumulates the equations of one route.
struct Recorder {
    ok: bool,
    witnesses: Vec<Witness>,
}

impl Recorder {
    fn new() -> Self {
        Self {
            ok: true,
            witnesses: Vec::new(),
        }
    }

    fn push(&mut self, equation: &str, lhs: WitnessValue, rhs: WitnessValue) {
        self.ok = false;
        self.witnesses.push(Witness {
            equation: equation.to_owned(),
            lhs,
            rhs,
        });
    }

    fn real(&mut self, equation: &str, lhs: RealMatrix, rhs: RealMatrix) {
        if lhs != rhs {
            self.push(equation, WitnessValue::Real(lhs), WitnessValue::Real(rhs));
        }
    }

    fn dual(&mut self, equation: &str, lhs: DualMatrix, rhs: DualMatrix) {
        if lhs != rhs {
            self.push(equation, WitnessValue::Dual(lhs), WitnessValue::Dual(rhs));
        }
    }

    fn count(&mut self, equation: &str, lhs: i64, rhs: i64) {
        if lhs != rhs {
            self.push(equation, WitnessValue::Integer(lhs), WitnessValue::Integer(rhs));
        }
    }

    /// Folds in a sub-order's verdict, prefixing its witnesses.
    fn order(&mut self, label: &str, sub: Recorder) {
        if !sub.ok {
            self.ok = false;
            self.witnesses.extend(sub.witnesses.into_iter().map(|mut w| {
                w.equation = format!("{label}: {}", w.equation);
                w
            }));
        }
    }

    fn finish(self, name: &'static str) -> RouteResult {
        RouteResult {
            name,
            verdict: self.ok,
            witnesses: self.witnesses,
        }
    }
}

fn rk(m: &RealMatrix) -> i64 {
    rank(m) as i64
}

fn minus(e: &RealMatrix, f: &RealMatrix) -> Recorder {
    let mut r = Recorder::new();
    r.count("rk(F - E) = rk(F) - rk(E)", rk(&(f - e)), rk(f) - rk(e));
    r
}

pub(super) fn minus_rank(e: &RealMatrix, f: &RealMatrix) -> RouteResult {
    minus(e, f).finish("rank-subtractivity")
}

fn star_symmetry(r: &mut Recorder, e: &RealMatrix, f: &RealMatrix) {
    r.real("E F^T = F E^T", e * &f.transpose(), f * &e.transpose());
    r.real("F^T E = E^T F", &f.transpose() * e, &e.transpose() * f);
}

fn star(e: &RealMatrix, f: &RealMatrix) -> Recorder {
    let et = e.transpose();
    let mut r = Recorder::new();
    r.real("E^T E = E^T F", &et * e, &et * f);
    r.real("E E^T = F E^T", e * &et, f * &et);
    r
}

pub(super) fn star_transpose(e: &RealMatrix, f: &RealMatrix) -> RouteResult {
    star(e, f).finish("transpose")
}

pub(super) fn star_moore_penrose(e: &RealMatrix, f: &RealMatrix) -> Result<RouteResult> {
    let p = moore_penrose(e)?;
    let mut r = Recorder::new();
    r.real("E^+ E = E^+ F", &p * e, &p * f);
    r.real("E E^+ = F E^+", e * &p, f * &p);
    Ok(r.finish("moore-penrose"))
}

pub(super) fn star_minus(e: &RealMatrix, f: &RealMatrix) -> RouteResult {
    let mut r = Recorder::new();
    r.order("minus", minus(e, f));
    star_symmetry(&mut r, e, f);
    r.finish("minus-with-symmetry")
}

fn sharp(e: &RealMatrix, f: &RealMatrix) -> Recorder {
    let e2 = e * e;
    let mut r = Recorder::new();
    r.real("E F = E^2", e * f, e2.clone());
    r.real("E^2 = F E", e2, f * e);
    r
}

fn sharp_group(e: &RealMatrix, g: &RealMatrix, f: &RealMatrix) -> Recorder {
    let mut r = Recorder::new();
    r.real("E^# E = E^# F", g * e, g * f);
    r.real("E E^# = F E^#", e * g, f * g);
    r
}

pub(super) fn sharp_group_inverse(e: &RealMatrix, f: &RealMatrix) -> Result<RouteResult> {
    Ok(sharp_group(e, &group_inverse(e)?, f).finish("group-inverse"))
}

pub(super) fn sharp_commuting_square(e: &RealMatrix, f: &RealMatrix) -> RouteResult {
    sharp(e, f).finish("commuting-square")
}

pub(super) fn sharp_minus(e: &RealMatrix, f: &RealMatrix) -> RouteResult {
    let mut r = Recorder::new();
    r.order("minus", minus(e, f));
    r.real("E F = F E", e * f, f * e);
    r.finish("minus-with-commuting")
}

/// A dual pair with lazily computed shared quantities.
pub(super) struct DualPair<'a> {
    e: &'a DualMatrix,
    f: &'a DualMatrix,
    diff: DualMatrix,
    pinv: OnceCell<RealMatrix>,
    group: OnceCell<RealMatrix>,
}

impl<'a> DualPair<'a> {
    pub(super) fn new(e: &'a DualMatrix, f: &'a DualMatrix) -> Self {
        Self {
            e,
            f,
            diff: f - e,
            pinv: OnceCell::new(),
            group: OnceCell::new(),
        }
    }

    fn std_e(&self) -> &RealMatrix {
        self.e.std()
    }

    fn std_f(&self) -> &RealMatrix {
        self.f.std()
    }

    /// `E^+`
    fn pinv(&self) -> &RealMatrix {
        self.pinv
            .get_or_init(|| moore_penrose(self.e.std()).expect("Moore-Penrose inverse always exists"))
    }

    /// `E^#`; only called once dual index one has been established.
    fn group(&self) -> Result<&RealMatrix> {
        if let Some(g) = self.group.get() {
            return Ok(g);
        }
        let g = group_inverse(self.e.std())?;
        Ok(self.group.get_or_init(|| g))
    }

    pub(super) fn routes(&self, kind: OrderKind) -> Result<Vec<RouteResult>> {
        Ok(match kind {
            OrderKind::DualMinus => vec![
                self.dual_minus().finish("definition"),
                self.dual_minus_rank(),
                self.dual_minus_block(),
            ],
            OrderKind::DMSharp => vec![
                self.dm_sharp()?.finish("definition"),
                self.dm_sharp_via_dual_minus().finish("dual-minus-with-commuting"),
            ],
            OrderKind::DMStar => vec![
                self.dm_star().finish("definition"),
                self.dm_star_via_dual_minus().finish("dual-minus-with-symmetry"),
            ],
            OrderKind::DStar => vec![
                self.d_star_transpose(),
                self.d_star_dmpgi()?,
                self.d_star_over(self.dm_star_via_dual_minus(), "dual-minus")
                    .finish("dual-minus-with-coupling"),
                self.d_star_over(self.dm_star(), "dm-star").finish("dm-star-with-coupling"),
            ],
            OrderKind::PStar => vec![
                self.p_star_split(),
                self.p_star_mpdgi(),
                self.p_star_over(self.dm_star_via_dual_minus(), "dual-minus")
                    .finish("dual-minus-with-annihilation"),
                self.p_star_over(self.dm_star(), "dm-star").finish("dm-star-with-annihilation"),
            ],
            OrderKind::DSharp => vec![
                self.d_sharp_split(),
                self.d_sharp_dggi()?,
                self.d_sharp_over(self.dm_sharp_via_dual_minus(), "dual-minus")?
                    .finish("dual-minus-with-coupling"),
                self.d_sharp_over(self.dm_sharp()?, "dm-sharp")?
                    .finish("dm-sharp-with-coupling"),
            ],
            OrderKind::GSharp => vec![
                self.g_sharp_split(),
                self.g_sharp_gdgi()?,
                self.g_sharp_over(self.dm_sharp_via_dual_minus(), "dual-minus")?
                    .finish("dual-minus-with-annihilation"),
                self.g_sharp_over(self.dm_sharp()?, "dm-sharp")?
                    .finish("dm-sharp-with-annihilation"),
            ],
            OrderKind::Minus | OrderKind::Star | OrderKind::Sharp => {
                unreachable!("real orders are dispatched before dual routes")
            }
        })
    }

    /// Records that the DMPGI of `F - E` exists.
    fn difference_has_dmpgi(&self, r: &mut Recorder) {
        let ranks = dual_rank(&self.diff);
        r.count(
            "rk[[F0-E0, F-E], [F-E, O]] = 2rk(F - E)",
            ranks.block_rank as i64,
            2 * ranks.std_rank as i64,
        );
    }

    /// Minus order on the standard parts plus existence of the DMPGI of the
    /// difference.
    fn dual_minus(&self) -> Recorder {
        let mut r = Recorder::new();
        r.order("minus", minus(self.std_e(), self.std_f()));
        self.difference_has_dmpgi(&mut r);
        r
    }

    fn dual_minus_rank(&self) -> RouteResult {
        let (e, f, d) = (dual_rank(self.e), dual_rank(self.f), dual_rank(&self.diff));
        let mut r = Recorder::new();
        r.count(
            "rk(F^ - E^) = rk(F^) - rk(E^)",
            d.dual_rank as i64,
            f.dual_rank as i64 - e.dual_rank as i64,
        );
        r.finish("dual-rank-subtractivity")
    }

    fn dual_minus_block(&self) -> RouteResult {
        let block = |x: &DualMatrix| {
            let (m, n) = x.shape();
            RealMatrix::compose2(x.dual(), x.std(), x.std(), &RealMatrix::zeros(m, n))
                .expect("blocks of a dual matrix always fit")
        };
        let mut r = Recorder::new();
        r.order("block minus", minus(&block(self.e), &block(self.f)));
        r.finish("block-minus")
    }

    fn dm_sharp(&self) -> Result<Recorder> {
        let mut r = Recorder::new();
        r.order("sharp", sharp_group(self.std_e(), self.group()?, self.std_f()));
        self.difference_has_dmpgi(&mut r);
        Ok(r)
    }

    fn dm_sharp_via_dual_minus(&self) -> Recorder {
        let (e, f) = (self.std_e(), self.std_f());
        let mut r = Recorder::new();
        r.order("dual-minus", self.dual_minus());
        r.real("E F = F E", e * f, f * e);
        r
    }

    fn dm_star(&self) -> Recorder {
        let mut r = Recorder::new();
        r.order("star", star(self.std_e(), self.std_f()));
        self.difference_has_dmpgi(&mut r);
        r
    }

    fn dm_star_via_dual_minus(&self) -> Recorder {
        let mut r = Recorder::new();
        r.order("dual-minus", self.dual_minus());
        star_symmetry(&mut r, self.std_e(), self.std_f());
        r
    }

    fn d_star_transpose(&self) -> RouteResult {
        let (e, f) = (self.e, self.f);
        let et = e.transpose();
        let mut r = Recorder::new();
        r.dual("E^T E = E^T F (dual)", &et * e, &et * f);
        r.dual("E E^T = F E^T (dual)", e * &et, f * &et);
        r.finish("dual-transpose")
    }

    fn d_star_dmpgi(&self) -> Result<RouteResult> {
        let (e, f) = (self.e, self.f);
        let x = dmpgi(e)?;
        let mut r = Recorder::new();
        r.dual("E^+ E = E^+ F (DMPGI)", &x * e, &x * f);
        r.dual("E E^+ = F E^+ (DMPGI)", e * &x, f * &x);
        Ok(r.finish("dmpgi"))
    }

    /// `E E^+ (F0 - E0) = (E^T)^+ E0^T (E - F)` and
    /// `(F0 - E0) E^+ E = (E - F) E0^T (E^T)^+` on top of a base order.
    fn d_star_over(&self, base: Recorder, label: &str) -> Recorder {
        let (e, e0) = (self.std_e(), self.e.dual());
        let p = self.pinv();
        let pt = p.transpose();
        let e0t = e0.transpose();
        let d0 = self.diff.dual();
        let minus_d = -self.diff.std();
        let mut r = Recorder::new();
        r.order(label, base);
        r.real(
            "E E^+ (F0 - E0) = (E^T)^+ E0^T (E - F)",
            &(e * p) * d0,
            &(&pt * &e0t) * &minus_d,
        );
        r.real(
            "(F0 - E0) E^+ E = (E - F) E0^T (E^T)^+",
            &(d0 * p) * e,
            &(&minus_d * &e0t) * &pt,
        );
        r
    }

    fn p_star_split(&self) -> RouteResult {
        let (e, f, e0, f0) = (self.std_e(), self.std_f(), self.e.dual(), self.f.dual());
        let et = e.transpose();
        let mut r = Recorder::new();
        r.real("E^T E = E^T F", &et * e, &et * f);
        r.real("E E^T = F E^T", e * &et, f * &et);
        r.real("E^T E0 = E^T F0", &et * e0, &et * f0);
        r.real("E0 E^T = F0 E^T", e0 * &et, f0 * &et);
        r.finish("split-equations")
    }

    fn p_star_mpdgi(&self) -> RouteResult {
        let (e, f) = (self.e, self.f);
        let x = mpdgi(e);
        let mut r = Recorder::new();
        r.dual("E^p E = E^p F (MPDGI)", &x * e, &x * f);
        r.dual("E E^p = F E^p (MPDGI)", e * &x, f * &x);
        r.finish("mpdgi")
    }

    /// `E E^+ (F0 - E0) = O` and `(F0 - E0) E^+ E = O` on top of a base order.
    fn p_star_over(&self, base: Recorder, label: &str) -> Recorder {
        let e = self.std_e();
        let p = self.pinv();
        let d0 = self.diff.dual();
        let zero = RealMatrix::zeros(d0.rows(), d0.cols());
        let mut r = Recorder::new();
        r.order(label, base);
        r.real("E E^+ (F0 - E0) = O", &(e * p) * d0, zero.clone());
        r.real("(F0 - E0) E^+ E = O", &(d0 * p) * e, zero);
        r
    }

    fn d_sharp_split(&self) -> RouteResult {
        let (e, f, e0, f0) = (self.std_e(), self.std_f(), self.e.dual(), self.f.dual());
        let mut r = sharp(e, f);
        let mid = &(e0 * e) + &(e * e0);
        r.real("E F0 + E0 F = E0 E + E E0", &(e * f0) + &(e0 * f), mid.clone());
        r.real("E0 E + E E0 = F E0 + F0 E", mid, &(f * e0) + &(f0 * e));
        r.finish("split-equations")
    }

    fn d_sharp_dggi(&self) -> Result<RouteResult> {
        let (e, f) = (self.e, self.f);
        let x = dggi(e)?;
        let mut r = Recorder::new();
        r.dual("E^# E = E^# F (DGGI)", &x * e, &x * f);
        r.dual("E E^# = F E^# (DGGI)", e * &x, f * &x);
        Ok(r.finish("dggi"))
    }

    /// `(F0 - E0) E E^# = (E - F) E0 E^#` and `E E^# (F0 - E0) = E^# E0 (E - F)`
    /// on top of a base order.
    fn d_sharp_over(&self, base: Recorder, label: &str) -> Result<Recorder> {
        let (e, e0) = (self.std_e(), self.e.dual());
        let g = self.group()?;
        let d0 = self.diff.dual();
        let minus_d = -self.diff.std();
        let mut r = Recorder::new();
        r.order(label, base);
        r.real(
            "(F0 - E0) E E^# = (E - F) E0 E^#",
            &(d0 * e) * g,
            &(&minus_d * e0) * g,
        );
        r.real(
            "E E^# (F0 - E0) = E^# E0 (E - F)",
            &(e * g) * d0,
            &(g * e0) * &minus_d,
        );
        Ok(r)
    }

    fn g_sharp_split(&self) -> RouteResult {
        let (e, f, e0, f0) = (self.std_e(), self.std_f(), self.e.dual(), self.f.dual());
        let mut r = sharp(e, f);
        r.real("E E0 = E F0", e * e0, e * f0);
        r.real("E0 E = F0 E", e0 * e, f0 * e);
        r.finish("split-equations")
    }

    fn g_sharp_gdgi(&self) -> Result<RouteResult> {
        let (e, f) = (self.e, self.f);
        let x = gdgi(e)?;
        let mut r = Recorder::new();
        r.dual("E^g E = E^g F (GDGI)", &x * e, &x * f);
        r.dual("E E^g = F E^g (GDGI)", e * &x, f * &x);
        Ok(r.finish("gdgi"))
    }

    /// `(F0 - E0) E E^# = O` and `E E^# (F0 - E0) = O` on top of a base order.
    fn g_sharp_over(&self, base: Recorder, label: &str) -> Result<Recorder> {
        let e = self.std_e();
        let g = self.group()?;
        let d0 = self.diff.dual();
        let zero = RealMatrix::zeros(d0.rows(), d0.cols());
        let mut r = Recorder::new();
        r.order(label, base);
        r.real("(F0 - E0) E E^# = O", &(d0 * e) * g, zero.clone());
        r.real("E E^# (F0 - E0) = O", &(e * g) * d0, zero);
        Ok(r)
    }
}
