//! The q-deformed Witt superalgebra on the finite window `|n| <= N`.
//!
//! Basis `L_n` (even) and `G_n` (odd) with
//! `[L_n, L_m] = ({m} - {n}) L_{n+m}`, `[L_n, G_m] = ({m+1} - {n}) G_{n+m}`,
//! `[G_n, G_m] = 0`, and twist `alpha(L_n) = (1 + q^n) L_n`,
//! `alpha(G_n) = (1 + q^{n+1}) G_n`, where `{n} = (1 - q^n)/(1 - q)`.
//! Equations are only assembled where every index involved stays in the window.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::cohomology::SignConvention;
use crate::error::{Error, Result};
use crate::homlie::{AlgebraBuilder, CheckReport, SuperAlgebra, SuperBasis};
use crate::linalg::{kernel_of_rows, row_space, SparseVec, Subspace};
use crate::parity::{sign, Parity};
use crate::scalars::{FieldMode, FieldSpec, Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    L,
    G,
}

impl Kind {
    pub fn parity(self) -> Parity {
        match self {
            Kind::L => Parity::Even,
            Kind::G => Parity::Odd,
        }
    }

    fn shifted(self, parity: Parity) -> Kind {
        match (self, parity) {
            (k, Parity::Even) => k,
            (Kind::L, Parity::Odd) => Kind::G,
            (Kind::G, Parity::Odd) => Kind::L,
        }
    }
}

/// `L_n` or `G_n`, written `L:n` / `G:n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WittIndex {
    pub kind: Kind,
    pub n: i64,
}

impl WittIndex {
    pub fn l(n: i64) -> Self {
        WittIndex { kind: Kind::L, n }
    }

    pub fn g(n: i64) -> Self {
        WittIndex { kind: Kind::G, n }
    }

    pub fn parity(self) -> Parity {
        self.kind.parity()
    }
}

impl fmt::Display for WittIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.kind {
            Kind::L => "L",
            Kind::G => "G",
        };
        write!(f, "{k}:{}", self.n)
    }
}

impl FromStr for WittIndex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Input(format!("bad index {s:?}, expected L:n or G:n"));
        let (k, n) = s.split_once(':').ok_or_else(bad)?;
        let n: i64 = n.parse().map_err(|_| bad())?;
        match k {
            "L" => Ok(WittIndex::l(n)),
            "G" => Ok(WittIndex::g(n)),
            _ => Err(bad()),
        }
    }
}

/// The algebra on `|n| <= N` with cached q-numbers.
#[derive(Clone, Debug)]
pub struct Window {
    n_max: i64,
    field: FieldSpec,
    qnums: Vec<Scalar>,
    qpows: Vec<Scalar>,
}

impl Window {
    /// Validates the window radius and the specialization of `q`.
    pub fn new(n_max: i64, field: FieldSpec) -> Result<Self> {
        if n_max < 2 {
            return Err(Error::Window(format!(
                "the window radius must be at least 2, got {n_max}"
            )));
        }
        if field.mode == FieldMode::Rational {
            let q0 = field
                .q
                .clone()
                .ok_or_else(|| Error::Input("a rational window needs a value for q".into()))?;
            for j in (1..=2 * n_max + 2).flat_map(|j| [j, -j]) {
                if q0.is_zero() {
                    return Err(Error::Pole {
                        at: q0.to_string(),
                        factor: "(q)".into(),
                    });
                }
                let p = q0.pow(j)?;
                if (&Rational::one() - &p).is_zero() {
                    return Err(Error::Pole {
                        at: q0.to_string(),
                        factor: format!("(1-q^{j})"),
                    });
                }
                if (&Rational::one() + &p).is_zero() {
                    return Err(Error::Pole {
                        at: q0.to_string(),
                        factor: format!("(1+q^{j})"),
                    });
                }
            }
        }
        let r = 2 * n_max + 6;
        let qnums = (-r..=r).map(|n| field.qnum(n)).collect::<Result<_>>()?;
        let qpows = (-r..=r).map(|n| field.q_pow(n)).collect::<Result<_>>()?;
        Ok(Window {
            n_max,
            field,
            qnums,
            qpows,
        })
    }

    pub fn n_max(&self) -> i64 {
        self.n_max
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn mode(&self) -> FieldMode {
        self.field.mode
    }

    fn offset(&self) -> i64 {
        2 * self.n_max + 6
    }

    /// `{n}`.
    pub fn qnum(&self, n: i64) -> Scalar {
        let i = n + self.offset();
        match usize::try_from(i).ok().and_then(|i| self.qnums.get(i)) {
            Some(v) => v.clone(),
            None => self
                .field
                .qnum(n)
                .expect("q-numbers exist for a valid window"),
        }
    }

    /// `q^n`.
    pub fn qpow(&self, n: i64) -> Scalar {
        let i = n + self.offset();
        match usize::try_from(i).ok().and_then(|i| self.qpows.get(i)) {
            Some(v) => v.clone(),
            None => self
                .field
                .q_pow(n)
                .expect("powers of q exist for a valid window"),
        }
    }

    pub fn in_range(&self, n: i64) -> bool {
        n.abs() <= self.n_max
    }

    pub fn contains(&self, w: WittIndex) -> bool {
        self.in_range(w.n)
    }

    /// `L_{-N}, ..., L_N, G_{-N}, ..., G_N`.
    pub fn basis(&self) -> Vec<WittIndex> {
        let r = -self.n_max..=self.n_max;
        r.clone()
            .map(WittIndex::l)
            .chain(r.map(WittIndex::g))
            .collect()
    }

    pub fn index(&self, w: WittIndex) -> Option<usize> {
        if !self.contains(w) {
            return None;
        }
        let base = usize::try_from(w.n + self.n_max).expect("in range");
        Some(match w.kind {
            Kind::L => base,
            Kind::G => base + (2 * self.n_max + 1) as usize,
        })
    }

    /// Eigenvalue of `alpha` on a basis element.
    pub fn alpha(&self, w: WittIndex) -> Scalar {
        let one = self.field.one();
        match w.kind {
            Kind::L => &one + &self.qpow(w.n),
            Kind::G => &one + &self.qpow(w.n + 1),
        }
    }

    fn alpha_pow(&self, w: WittIndex, k: u32) -> Scalar {
        let a = self.alpha(w);
        (0..k).fold(self.field.one(), |acc, _| &acc * &a)
    }

    /// The bracket of two basis elements, regardless of the window.
    pub fn bracket(&self, a: WittIndex, b: WittIndex) -> Option<(WittIndex, Scalar)> {
        let n = a.n + b.n;
        let (target, c) = match (a.kind, b.kind) {
            (Kind::L, Kind::L) => (WittIndex::l(n), &self.qnum(b.n) - &self.qnum(a.n)),
            (Kind::L, Kind::G) => (WittIndex::g(n), &self.qnum(b.n + 1) - &self.qnum(a.n)),
            (Kind::G, Kind::L) => (WittIndex::g(n), &self.qnum(b.n) - &self.qnum(a.n + 1)),
            (Kind::G, Kind::G) => return None,
        };
        (!c.is_zero()).then_some((target, c))
    }

    /// Super skew-symmetry and Hom-Jacobi on every triple whose partial sums,
    /// pairwise and total, stay in the window.
    pub fn check_hom_jacobi(&self) -> CheckReport {
        let basis = self.basis();
        let labels: Vec<String> = basis.iter().map(ToString::to_string).collect();
        let mode = self.mode();
        let mut report = CheckReport::new(&["super-skew-symmetry", "hom-jacobi"]);
        let as_vec = |t: Option<(WittIndex, Scalar)>| match t {
            Some((w, c)) => SparseVec::from_pairs(vec![(self.index(w).expect("in window"), c)]),
            None => SparseVec::new(),
        };
        for &x in &basis {
            for &y in &basis {
                if !self.in_range(x.n + y.n) {
                    continue;
                }
                let s = sign(mode, Parity::both_odd(x.parity(), y.parity()));
                let d = as_vec(self.bracket(x, y)).add_scaled(&s, &as_vec(self.bracket(y, x)));
                report.record(
                    "super-skew-symmetry",
                    vec![labels_of(x), labels_of(y)],
                    &d,
                    &labels,
                );
            }
        }
        for &x in &basis {
            for &y in &basis {
                for &z in &basis {
                    let safe = [x.n + y.n, y.n + z.n, x.n + z.n, x.n + y.n + z.n]
                        .iter()
                        .all(|&n| self.in_range(n));
                    if !safe {
                        continue;
                    }
                    let mut acc = SparseVec::new();
                    for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                        if let Some((w, k)) = self.bracket(b, c) {
                            let coeff = &k * &self.alpha(a);
                            let s = sign(mode, Parity::both_odd(a.parity(), c.parity()));
                            acc = acc.add_scaled(&(&s * &coeff), &as_vec(self.bracket(a, w)));
                        }
                    }
                    report.record(
                        "hom-jacobi",
                        vec![labels_of(x), labels_of(y), labels_of(z)],
                        &acc,
                        &labels,
                    );
                }
            }
        }
        report
    }

    /// The window as a finite algebra, dropping bracket components that leave it.
    /// Returns the algebra; the dropped components are listed by [`Window::overflow`].
    pub fn truncated_algebra(&self) -> Result<SuperAlgebra> {
        let basis = self.basis();
        let sb = SuperBasis::new(basis.iter().map(|w| (w.to_string(), w.parity())).collect())?;
        let mut b = AlgebraBuilder::new(self.field.clone(), sb);
        for (i, &x) in basis.iter().enumerate() {
            for (j, &y) in basis.iter().enumerate().skip(i) {
                if let Some((w, c)) = self.bracket(x, y) {
                    if let Some(k) = self.index(w) {
                        b.set_bracket(i, j, SparseVec::from_pairs(vec![(k, c)]))?;
                    }
                }
            }
        }
        let mut alpha = crate::linalg::Matrix::zeros(self.mode(), basis.len(), basis.len());
        for (i, &w) in basis.iter().enumerate() {
            alpha.set(i, i, self.alpha(w));
        }
        b.set_alpha(alpha);
        b.build()
    }

    /// Pairs whose nonzero bracket leaves the window.
    pub fn overflow(&self) -> Vec<(WittIndex, WittIndex)> {
        let basis = self.basis();
        let mut out = Vec::new();
        for &x in &basis {
            for &y in &basis {
                if let Some((w, _)) = self.bracket(x, y) {
                    if !self.contains(w) {
                        out.push((x, y));
                    }
                }
            }
        }
        out
    }
}

fn labels_of(w: WittIndex) -> String {
    w.to_string()
}

/// Builds a window and verifies Hom-Jacobi on all safe triples.
pub fn build_window(n_max: i64, field: FieldSpec) -> Result<Window> {
    let w = Window::new(n_max, field)?;
    if let Some(v) = w.check_hom_jacobi().first() {
        return Err(Error::InvalidAlgebra(format!(
            "window fails an identity: {v}"
        )));
    }
    Ok(w)
}

/// Which equations a graded map must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BandRule {
    /// `D[x, y] = [D x, alpha^k y] + (-1)^{|x||D|} [alpha^k x, D y]` and `alpha D = D alpha`.
    AlphaDerivation(u32),
    /// `phi[x, y] = c ([phi x, alpha y] + e [alpha x, phi y])` with `c = 1/(1+q^s)`, `e = 1`
    /// for even maps and `c = 1/(1+q^{s+1})`, `e = (-1)^{|x|}` for odd maps.
    QDerivation,
}

/// Solution space of a graded map ansatz restricted to the interior of the window.
#[derive(Clone, Debug)]
pub struct BandSolution {
    pub parity: Parity,
    pub s: i64,
    pub rule: BandRule,
    pub n_max: i64,
    pub margin: i64,
    /// Source basis elements of the interior coordinates, in order.
    pub interior: Vec<WittIndex>,
    /// Kernel dimension before projecting to the interior.
    pub window_dim: usize,
    pub space: Subspace,
}

impl BandSolution {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Image of `x` under the ansatz.
    pub fn target(&self, x: WittIndex) -> WittIndex {
        WittIndex {
            kind: x.kind.shifted(self.parity),
            n: x.n + self.s,
        }
    }

    /// Each basis vector as a table `source -> coefficient`.
    pub fn tables(&self) -> Vec<BTreeMap<String, Scalar>> {
        self.space
            .basis()
            .iter()
            .map(|v| {
                v.iter()
                    .map(|(i, c)| (self.interior[i].to_string(), c.clone()))
                    .collect()
            })
            .collect()
    }

    /// Interior coordinates of a map given by its coefficient on each source.
    pub fn vector_of(&self, coeff: impl Fn(WittIndex) -> Scalar) -> SparseVec {
        SparseVec::from_pairs(
            self.interior
                .iter()
                .enumerate()
                .map(|(i, &w)| (i, coeff(w)))
                .collect(),
        )
    }

    /// Whether the solution space is exactly the line through the given map.
    pub fn is_line_through(&self, coeff: impl Fn(WittIndex) -> Scalar) -> bool {
        let v = self.vector_of(coeff);
        !v.is_zero() && self.space == Subspace::span(self.interior.len(), self.space.mode(), [v])
    }
}

fn band_unknowns(w: &Window, s: i64) -> Vec<WittIndex> {
    w.basis()
        .into_iter()
        .filter(|x| w.in_range(x.n + s))
        .collect()
}

/// Equations of one band, as sparse rows over the unknowns.
fn band_rows(
    w: &Window,
    parity: Parity,
    s: i64,
    rule: BandRule,
    unknowns: &[WittIndex],
) -> Result<Vec<SparseVec>> {
    let mode = w.mode();
    let pos: BTreeMap<WittIndex, usize> =
        unknowns.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let target = |x: WittIndex| WittIndex {
        kind: x.kind.shifted(parity),
        n: x.n + s,
    };
    let one = w.field.one();
    let (norm, odd_sign) = match rule {
        BandRule::AlphaDerivation(_) => (one.clone(), true),
        BandRule::QDerivation => {
            let e = if parity.is_odd() { s + 1 } else { s };
            let d = &one + &w.qpow(e);
            if d.is_zero() {
                return Err(Error::Pole {
                    at: format!("{}", w.field),
                    factor: format!("(1+q^{e})"),
                });
            }
            (d.inv()?, false)
        }
    };
    let basis = w.basis();
    let mut rows = Vec::new();
    for &x in &basis {
        for &y in &basis {
            let safe = [x.n + y.n, x.n + s, y.n + s, x.n + y.n + s]
                .iter()
                .all(|&n| w.in_range(n));
            if !safe {
                continue;
            }
            let mut acc: BTreeMap<WittIndex, Vec<(usize, Scalar)>> = BTreeMap::new();
            if let Some((z, c)) = w.bracket(x, y) {
                acc.entry(target(z)).or_default().push((pos[&z], c));
            }
            let (ax, ay) = match rule {
                BandRule::AlphaDerivation(k) => (w.alpha_pow(x, k), w.alpha_pow(y, k)),
                BandRule::QDerivation => (w.alpha(x), w.alpha(y)),
            };
            if let Some((z, c)) = w.bracket(target(x), y) {
                acc.entry(z)
                    .or_default()
                    .push((pos[&x], -(&(&c * &ay) * &norm)));
            }
            let e = if odd_sign {
                sign(mode, Parity::both_odd(x.parity(), parity))
            } else {
                sign(mode, x.parity().is_odd() && parity.is_odd())
            };
            if let Some((z, c)) = w.bracket(x, target(y)) {
                acc.entry(z)
                    .or_default()
                    .push((pos[&y], -(&(&(&c * &ax) * &norm) * &e)));
            }
            rows.extend(acc.into_values().map(SparseVec::from_pairs));
        }
    }
    if let BandRule::AlphaDerivation(_) = rule {
        for (i, &x) in unknowns.iter().enumerate() {
            let d = &w.alpha(target(x)) - &w.alpha(x);
            rows.push(SparseVec::from_pairs(vec![(i, d)]));
        }
    }
    Ok(rows)
}

fn require_band_window(w: &Window, s: i64) -> Result<()> {
    if w.n_max < s.abs() + 6 {
        return Err(Error::Window(format!(
            "degree {s} needs a window radius of at least {}, got {}",
            s.abs() + 6,
            w.n_max
        )));
    }
    Ok(())
}

fn solve_band(w: &Window, parity: Parity, s: i64, rule: BandRule) -> Result<BandSolution> {
    require_band_window(w, s)?;
    let unknowns = band_unknowns(w, s);
    let rows = band_rows(w, parity, s, rule, &unknowns)?;
    let kernel = kernel_of_rows(unknowns.len(), w.mode(), rows);
    let margin = s.abs() + 2;
    let coords: Vec<usize> = (0..unknowns.len())
        .filter(|&i| unknowns[i].n.abs() <= w.n_max - margin)
        .collect();
    let interior = coords.iter().map(|&i| unknowns[i]).collect();
    Ok(BandSolution {
        parity,
        s,
        rule,
        n_max: w.n_max,
        margin,
        interior,
        window_dim: kernel.dim(),
        space: kernel.project(&coords),
    })
}

/// Homogeneous `alpha^k`-derivations of degree `s` (`k` in `{0, 1}`), on the
/// interior `|n| <= N - |s| - 2`.
pub fn graded_derivation_solve(w: &Window, k: u32, parity: Parity, s: i64) -> Result<BandSolution> {
    if k > 1 {
        return Err(Error::Input(format!("k must be 0 or 1, got {k}")));
    }
    solve_band(w, parity, s, BandRule::AlphaDerivation(k))
}

/// Homogeneous q-derivations of degree `s`, on the interior `|n| <= N - |s| - 2`.
pub fn q_derivation_solve(w: &Window, parity: Parity, s: i64) -> Result<BandSolution> {
    solve_band(w, parity, s, BandRule::QDerivation)
}

/// Coefficients of `ad_{L_s}` (even) or `ad_{G_s}` (odd) on a source element.
pub fn inner_coefficient(w: &Window, parity: Parity, s: i64, x: WittIndex) -> Scalar {
    let a = if parity.is_odd() {
        WittIndex::g(s)
    } else {
        WittIndex::l(s)
    };
    w.bracket(a, x)
        .map(|(_, c)| c)
        .unwrap_or_else(|| w.field.zero())
}

/// All bands `smin..=smax` solved as one system with an unrestricted ansatz.
#[derive(Clone, Debug)]
pub struct GeneralSolve {
    pub parity: Parity,
    pub k: u32,
    pub smin: i64,
    pub smax: i64,
    pub margin: i64,
    /// Dimension of the joint solution space on the common interior.
    pub dim: usize,
    /// Dimension of each band's component of the joint solution space.
    pub band_dims: Vec<(i64, usize)>,
}

impl GeneralSolve {
    /// The joint solution space splits into its band components.
    pub fn is_band_diagonal(&self) -> bool {
        self.dim == self.band_dims.iter().map(|(_, d)| d).sum::<usize>()
    }
}

/// Cross-check of the single-band ansatz: unknowns for every band in
/// `smin..=smax` at once, equations assembled where all bands stay in the window.
pub fn general_derivation_solve(
    w: &Window,
    k: u32,
    parity: Parity,
    smin: i64,
    smax: i64,
) -> Result<GeneralSolve> {
    if smin > smax {
        return Err(Error::Input("empty degree range".into()));
    }
    let reach = smin.abs().max(smax.abs());
    require_band_window(w, reach)?;
    let bands: Vec<i64> = (smin..=smax).collect();
    let mut unknowns: Vec<(i64, WittIndex)> = Vec::new();
    let mut offsets = Vec::new();
    let mut per_band = Vec::new();
    for &s in &bands {
        let u = band_unknowns(w, s);
        offsets.push(unknowns.len());
        unknowns.extend(u.iter().map(|&x| (s, x)));
        per_band.push(u);
    }
    let mut rows = Vec::new();
    for (b, &s) in bands.iter().enumerate() {
        let sub_rows = band_rows(w, parity, s, BandRule::AlphaDerivation(k), &per_band[b])?;
        rows.extend(sub_rows.into_iter().map(|r| r.reindex(|i| offsets[b] + i)));
    }
    let kernel = kernel_of_rows(unknowns.len(), w.mode(), rows);
    let margin = reach + 2;
    let coords: Vec<usize> = (0..unknowns.len())
        .filter(|&i| unknowns[i].1.n.abs() <= w.n_max - margin)
        .collect();
    let joint = kernel.project(&coords);
    let band_dims = bands
        .iter()
        .map(|&s| {
            let idx: Vec<usize> = coords
                .iter()
                .enumerate()
                .filter(|(_, &c)| unknowns[c].0 == s)
                .map(|(j, _)| j)
                .collect();
            (s, joint.project(&idx).dim())
        })
        .collect();
    Ok(GeneralSolve {
        parity,
        k,
        smin,
        smax,
        margin,
        dim: joint.dim(),
        band_dims,
    })
}

/// `b_n = q^{-(n-2)} (1+q^2)/(1+q^n) (1-q^{n+1})(1-q^n)(1-q^{n-1}) / ((1-q^3)(1-q^2)(1-q))`.
pub fn b_coefficient(field: &FieldSpec, n: i64) -> Result<Scalar> {
    let one = field.one();
    let qp = |e: i64| field.q_pow(e);
    let den = &(&(&one - &qp(3)?) * &(&one - &qp(2)?)) * &(&one - &field.q()?);
    let den = &den * &(&one + &qp(n)?);
    if den.is_zero() {
        return Err(Error::Pole {
            at: field.q.as_ref().map_or_else(|| "q".into(), |q| q.to_string()),
            factor: format!("(1+q^{n})(1-q^3)(1-q^2)(1-q)"),
        });
    }
    let num = &(&(&one - &qp(n + 1)?) * &(&one - &qp(n)?)) * &(&one - &qp(n - 1)?);
    let num = &(&num * &(&one + &qp(2)?)) * &qp(2 - n)?;
    num.checked_div(&den)
}

/// Coordinates for scalar 2-cochains on the window: canonical pairs `(x, y)`
/// with `x <= y` in basis order (equal only for odd elements) and `x + y` in the window.
struct PairSpace {
    pairs: Vec<(WittIndex, WittIndex)>,
    index: BTreeMap<(WittIndex, WittIndex), usize>,
}

impl PairSpace {
    fn new(w: &Window) -> Self {
        let basis = w.basis();
        let mut pairs = Vec::new();
        for (i, &x) in basis.iter().enumerate() {
            for &y in &basis[i..] {
                if (x != y || x.kind == Kind::G) && w.in_range(x.n + y.n) {
                    pairs.push((x, y));
                }
            }
        }
        let index = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        PairSpace { pairs, index }
    }

    /// Coordinate and sign for `f(x, y)` in any order, `None` when forced zero.
    fn locate(&self, w: &Window, x: WittIndex, y: WittIndex) -> Option<(usize, bool)> {
        let (ix, iy) = (w.index(x)?, w.index(y)?);
        if ix == iy && x.kind == Kind::L {
            return None;
        }
        if ix <= iy {
            self.index.get(&(x, y)).map(|&k| (k, false))
        } else {
            let negative = !Parity::both_odd(x.parity(), y.parity());
            self.index.get(&(y, x)).map(|&k| (k, negative))
        }
    }
}

/// Scalar second cohomology of the window.
#[derive(Clone, Debug)]
pub struct TwoCocycles {
    pub n_max: i64,
    pub margin: i64,
    pub convention: SignConvention,
    pub dim_z: usize,
    pub dim_b: usize,
    /// `dim Z - dim B` on the full window.
    pub window_dim: usize,
    /// Dimension of the cohomology seen on interior pairs.
    pub dim: usize,
    /// Whether every coboundary satisfies the cocycle equations.
    pub coboundaries_are_cocycles: bool,
    /// Gauge-fixed representatives on interior pairs, normalized when possible so
    /// that the first has value 1 at `(L_2, L_-2)` and the second at `(L_2, G_-3)`.
    pub representatives: Vec<BTreeMap<(WittIndex, WittIndex), Scalar>>,
    /// Whether every representative vanishes on pairs `(G_n, G_p)`.
    pub gg_vanishes: bool,
}

impl TwoCocycles {
    /// Value of representative `r` at `(x, y)` with the super-alternating sign.
    pub fn value(&self, r: usize, x: WittIndex, y: WittIndex) -> Option<Scalar> {
        let rep = &self.representatives[r];
        if let Some(v) = rep.get(&(x, y)) {
            return Some(v.clone());
        }
        rep.get(&(y, x)).map(|v| {
            if Parity::both_odd(x.parity(), y.parity()) {
                v.clone()
            } else {
                -v
            }
        })
    }
}

/// Solves the scalar 2-cocycle condition on all safe triples and quotients by
/// the coboundaries `-g([x, y])`, fixing the gauge `f(L_0, L_n) = 0` (n != 0),
/// `f(L_1, L_-1) = 0`, `f(L_0, G_n) = 0` (n != -1), `f(L_1, G_-2) = 0`.
pub fn scalar_two_cocycles(w: &Window, convention: SignConvention) -> Result<TwoCocycles> {
    if w.n_max < 8 {
        return Err(Error::Window(format!(
            "the cocycle solver needs N >= 8, got {}",
            w.n_max
        )));
    }
    let mode = w.mode();
    let ps = PairSpace::new(w);
    let dim = ps.pairs.len();
    let basis = w.basis();
    let mut z_rows = Vec::new();
    for (i, &x0) in basis.iter().enumerate() {
        for (j, &x1) in basis.iter().enumerate().skip(i) {
            for &x2 in &basis[j..] {
                let safe = [x0.n + x1.n, x0.n + x2.n, x1.n + x2.n, x0.n + x1.n + x2.n]
                    .iter()
                    .all(|&n| w.in_range(n));
                if safe {
                    let row = cocycle_row(w, &ps, [x0, x1, x2], convention);
                    if !row.is_zero() {
                        z_rows.push(row);
                    }
                }
            }
        }
    }
    let mut reducer = crate::linalg::RowReducer::new(dim, mode);
    for r in &z_rows {
        reducer.insert(r.clone());
    }
    let z = reducer.kernel();
    // coboundaries of the unit functionals g = e_v^*
    let mut cob: Vec<(WittIndex, SparseVec)> = Vec::new();
    for &v in &basis {
        let mut pairs = Vec::new();
        for (k, &(x, y)) in ps.pairs.iter().enumerate() {
            if let Some((t, c)) = w.bracket(x, y) {
                if t == v {
                    let extra = convention == SignConvention::CochainParity
                        && v.parity().is_odd()
                        && y.parity().is_odd();
                    pairs.push((k, if extra { c } else { -c }));
                }
            }
        }
        cob.push((v, SparseVec::from_pairs(pairs)));
    }
    let b = row_space(dim, mode, cob.iter().map(|(_, v)| v.clone()));
    let coboundaries_are_cocycles = b.is_subspace_of(&z);
    // gauge coordinates, one per functional
    let gauge = |v: WittIndex| -> (WittIndex, WittIndex) {
        match (v.kind, v.n) {
            (Kind::L, 0) => (WittIndex::l(-1), WittIndex::l(1)),
            (Kind::L, n) => (WittIndex::l(0), WittIndex::l(n)),
            (Kind::G, -1) => (WittIndex::l(1), WittIndex::g(-2)),
            (Kind::G, n) => (WittIndex::l(0), WittIndex::g(n)),
        }
    };
    let mut gauge_data = Vec::new();
    for (v, vec) in &cob {
        let (x, y) = gauge(*v);
        let (k, neg) = ps
            .locate(w, x, y)
            .ok_or_else(|| Error::Window("gauge pair outside the window".into()))?;
        debug_assert!(!neg || k < dim);
        let pivot = vec
            .get(k)
            .cloned()
            .ok_or_else(|| Error::Precondition("gauge pivot vanishes".into()))?;
        gauge_data.push((k, pivot, vec.clone()));
    }
    for (a, (k, _, _)) in gauge_data.iter().enumerate() {
        for (bi, (_, _, v)) in gauge_data.iter().enumerate() {
            if a != bi && v.get(*k).is_some() {
                return Err(Error::Precondition(
                    "gauge coordinates are not independent".into(),
                ));
            }
        }
    }
    let fixed: Vec<SparseVec> = z
        .basis()
        .iter()
        .map(|zv| {
            gauge_data
                .iter()
                .fold(zv.clone(), |acc, (k, pivot, v)| match zv.get(*k) {
                    Some(c) => acc.add_scaled(&-&(c * &pivot.inv().expect("nonzero pivot")), v),
                    None => acc,
                })
        })
        .collect();
    let fixed = row_space(dim, mode, fixed);
    let margin = 2;
    let inner: Vec<usize> = (0..dim)
        .filter(|&k| {
            let (x, y) = ps.pairs[k];
            x.n.abs() <= w.n_max - margin && y.n.abs() <= w.n_max - margin
        })
        .collect();
    let interior_dim = fixed.project(&inner).dim();
    let mut reps: Vec<SparseVec> = fixed.basis().to_vec();
    let anchors = [
        (WittIndex::l(2), WittIndex::l(-2)),
        (WittIndex::l(2), WittIndex::g(-3)),
    ];
    if reps.len() == 2 {
        let eval = |v: &SparseVec, (x, y): (WittIndex, WittIndex)| -> Scalar {
            match ps.locate(w, x, y) {
                Some((k, neg)) => {
                    let c = v.get(k).cloned().unwrap_or_else(|| w.field.zero());
                    if neg {
                        -c
                    } else {
                        c
                    }
                }
                None => w.field.zero(),
            }
        };
        let m = crate::linalg::Matrix::from_rows(
            mode,
            anchors
                .iter()
                .map(|&a| reps.iter().map(|r| eval(r, a)).collect())
                .collect(),
        )?;
        if let Some(inv) = m.inverse()? {
            reps = (0..2)
                .map(|c| {
                    (0..2).fold(SparseVec::new(), |acc, j| {
                        acc.add_scaled(inv.get(j, c), &reps[j])
                    })
                })
                .collect();
        }
    }
    let representatives: Vec<BTreeMap<(WittIndex, WittIndex), Scalar>> = reps
        .iter()
        .map(|v| {
            v.iter()
                .filter(|(k, _)| inner.binary_search(k).is_ok())
                .map(|(k, c)| (ps.pairs[k], c.clone()))
                .collect()
        })
        .collect();
    let gg_vanishes = reps
        .iter()
        .all(|v| v.iter().all(|(k, _)| ps.pairs[k].0.kind == Kind::L));
    Ok(TwoCocycles {
        n_max: w.n_max,
        margin,
        convention,
        dim_z: z.dim(),
        dim_b: b.dim(),
        window_dim: z.dim() - b.dim().min(z.dim()),
        dim: interior_dim,
        coboundaries_are_cocycles,
        representatives,
        gg_vanishes,
    })
}

/// The cocycle equation at a triple of basis elements as a row over pair coordinates:
/// `-f([x0,x1], a x2) + (-1)^{|x2||x1|} f([x0,x2], a x1) + f(a x0, [x1,x2])`,
/// with the extra `|x_t||f|` sign applied to odd cochains under
/// [`SignConvention::CochainParity`].
fn cocycle_row(
    w: &Window,
    ps: &PairSpace,
    x: [WittIndex; 3],
    convention: SignConvention,
) -> SparseVec {
    // an odd scalar cochain only sees odd total degree
    let f_odd = Parity::sum(x.iter().map(|v| v.parity())).is_odd();
    let extra =
        |t: WittIndex| convention == SignConvention::CochainParity && f_odd && t.parity().is_odd();
    let mut pairs = Vec::new();
    let mut push = |neg: bool, a: Option<(WittIndex, Scalar)>, b: WittIndex, coeff: Scalar| {
        if let Some((u, c)) = a {
            if let Some((k, flip)) = ps.locate(w, u, b) {
                let v = &c * &coeff;
                pairs.push((k, if neg ^ flip { -v } else { v }));
            }
        }
    };
    push(!extra(x[1]), w.bracket(x[0], x[1]), x[2], w.alpha(x[2]));
    push(
        Parity::both_odd(x[2].parity(), x[1].parity()) ^ extra(x[2]),
        w.bracket(x[0], x[2]),
        x[1],
        w.alpha(x[1]),
    );
    if let Some((u, c)) = w.bracket(x[1], x[2]) {
        if let Some((k, flip)) = ps.locate(w, x[0], u) {
            let v = &c * &w.alpha(x[0]);
            let neg = flip ^ extra(x[2]);
            pairs.push((k, if neg { -v } else { v }));
        }
    }
    SparseVec::from_pairs(pairs)
}

/// The two cocycles built from `b_n`:
/// `phi1(L_n, L_p) = b_n [n + p = 0]`, `phi2(L_n, G_k) = b_n [n + k = -1]`.
pub fn phi_value(w: &Window, which: u8, x: WittIndex, y: WittIndex) -> Result<Scalar> {
    let zero = w.field.zero();
    Ok(match (which, x.kind, y.kind) {
        (1, Kind::L, Kind::L) if x.n + y.n == 0 => b_coefficient(&w.field, x.n)?,
        (2, Kind::L, Kind::G) if x.n + y.n == -1 => b_coefficient(&w.field, x.n)?,
        (2, Kind::G, Kind::L) if x.n + y.n == -1 => -b_coefficient(&w.field, y.n)?,
        _ => zero,
    })
}

/// Substitutes the two `b_n` cocycles (optionally with `b_2` shifted by
/// `perturb_b2`) into the cocycle equation on all safe triples, and checks the
/// recurrence `b_{n+1} = q^{-1} (1+q^{n})/(1+q^{n+1}) (1-q^{n+2})/(1-q^{n-1}) b_n`
/// for `3 <= n <= N - 2`.
pub fn verify_phi_pair(w: &Window, perturb_b2: Option<&Scalar>) -> Result<CheckReport> {
    if w.n_max < 8 {
        return Err(Error::Window(format!("needs N >= 8, got {}", w.n_max)));
    }
    let ps = PairSpace::new(w);
    let mut values: Vec<Vec<Scalar>> = vec![vec![w.field.zero(); ps.pairs.len()]; 2];
    for (k, &(x, y)) in ps.pairs.iter().enumerate() {
        for which in [1u8, 2] {
            let mut v = phi_value(w, which, x, y)?;
            if let Some(p) = perturb_b2 {
                if which == 1
                    && x.kind == Kind::L
                    && y.kind == Kind::L
                    && x.n.abs() == 2
                    && x.n + y.n == 0
                {
                    v = if x.n == 2 { &v + p } else { &v - p };
                }
            }
            values[usize::from(which - 1)][k] = v;
        }
    }
    let labels = vec!["phi1".to_string(), "phi2".to_string()];
    let mut report = CheckReport::new(&["cocycle", "b-recurrence"]);
    let basis = w.basis();
    for (i, &x0) in basis.iter().enumerate() {
        for (j, &x1) in basis.iter().enumerate().skip(i) {
            for &x2 in &basis[j..] {
                let safe = [x0.n + x1.n, x0.n + x2.n, x1.n + x2.n, x0.n + x1.n + x2.n]
                    .iter()
                    .all(|&n| w.in_range(n));
                if !safe {
                    continue;
                }
                let row = cocycle_row(w, &ps, [x0, x1, x2], SignConvention::Standard);
                let res: Vec<(usize, Scalar)> = (0..2)
                    .map(|f| {
                        let v = row
                            .iter()
                            .fold(w.field.zero(), |acc, (k, c)| &acc + &(c * &values[f][k]));
                        (f, v)
                    })
                    .collect();
                report.record(
                    "cocycle",
                    vec![x0.to_string(), x1.to_string(), x2.to_string()],
                    &SparseVec::from_pairs(res),
                    &labels,
                );
            }
        }
    }
    let one = w.field.one();
    let b = |n: i64| -> Result<Scalar> {
        let v = b_coefficient(&w.field, n)?;
        Ok(match perturb_b2 {
            Some(p) if n == 2 => &v + p,
            _ => v,
        })
    };
    for n in 3..=w.n_max - 2 {
        let factor = (&(&one + &w.qpow(n)) * &(&one - &w.qpow(n + 2)))
            .checked_div(&(&(&w.qpow(1) * &(&one + &w.qpow(n + 1))) * &(&one - &w.qpow(n - 1))))?;
        let d = &b(n + 1)? - &(&factor * &b(n)?);
        report.record(
            "b-recurrence",
            vec![format!("n={n}")],
            &SparseVec::from_pairs(vec![(0, d)]),
            &labels,
        );
    }
    Ok(report)
}
