//! Representations of Hom-Lie superalgebras.

use crate::error::{Error, Result};
use crate::homlie::{CheckReport, SuperAlgebra, SuperBasis};
use crate::linalg::{Matrix, SparseVec};
use crate::parity::{sign, Parity};
use crate::scalars::{FieldMode, Scalar};

/// How the action is produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ActionKind {
    /// A fixed multiplication table.
    Table,
    /// The adjoint action `[alpha^s(x), v]`, with `alpha^{-1} = 0`. Twisted
    /// actions `[alpha^p(x), v]` then compose to `[alpha^{s+p}(x), v]`.
    Adjoint { shift: i64 },
}

/// A representation `(V, [ , ]_V, beta)`; `action[i * dim V + u]` holds `[e_i, v_u]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    algebra: SuperAlgebra,
    space: SuperBasis,
    beta: Matrix,
    action: Vec<SparseVec>,
    kind: ActionKind,
}

impl Representation {
    /// Validates shapes, field modes and that the action and `beta` are even.
    pub fn new(
        algebra: SuperAlgebra,
        space: SuperBasis,
        beta: Matrix,
        action: Vec<SparseVec>,
    ) -> Result<Self> {
        let (n, m) = (algebra.dim(), space.dim());
        if beta.rows() != m || beta.cols() != m {
            return Err(Error::Dimension(format!(
                "beta is {}x{}, expected {m}x{m}",
                beta.rows(),
                beta.cols()
            )));
        }
        if beta.mode() != algebra.mode() {
            return Err(Error::ModeMismatch(
                algebra.mode().to_string(),
                beta.mode().to_string(),
            ));
        }
        if !space.map_has_parity(&space, &beta, Parity::Even) {
            return Err(Error::InvalidRepresentation("beta is not even".into()));
        }
        if action.len() != n * m {
            return Err(Error::Dimension(format!(
                "action table has {} entries, expected {}",
                action.len(),
                n * m
            )));
        }
        for i in 0..n {
            for u in 0..m {
                for (w, c) in action[i * m + u].iter() {
                    if w >= m {
                        return Err(Error::Dimension(format!(
                            "action component {w} out of range"
                        )));
                    }
                    if c.mode() != algebra.mode() {
                        return Err(Error::ModeMismatch(
                            algebra.mode().to_string(),
                            c.mode().to_string(),
                        ));
                    }
                    if space.parity(w) != algebra.parity(i) + space.parity(u) {
                        return Err(Error::InvalidRepresentation(format!(
                            "[{}, {}] has a component of the wrong parity",
                            algebra.basis().label(i),
                            space.label(u)
                        )));
                    }
                }
            }
        }
        Ok(Representation {
            algebra,
            space,
            beta,
            action,
            kind: ActionKind::Table,
        })
    }

    /// Zero action on `space` with the given twist.
    pub fn trivial(algebra: &SuperAlgebra, space: SuperBasis, beta: Matrix) -> Result<Self> {
        let len = algebra.dim() * space.dim();
        Representation::new(algebra.clone(), space, beta, vec![SparseVec::new(); len])
    }

    /// The one-dimensional even trivial module with `beta = id`.
    pub fn trivial_scalar(algebra: &SuperAlgebra) -> Self {
        let space = SuperBasis::new(vec![("1".into(), Parity::Even)]).expect("valid basis");
        Representation::trivial(algebra, space, Matrix::identity(algebra.mode(), 1))
            .expect("valid trivial module")
    }

    /// The `alpha^s`-adjoint representation on the algebra itself, `s >= -1`.
    pub fn adjoint(algebra: &SuperAlgebra, s: i64) -> Result<Self> {
        if s < -1 {
            return Err(Error::Input(format!(
                "adjoint shift must be at least -1, got {s}"
            )));
        }
        if let Some(v) = algebra.check_multiplicative().first() {
            return Err(Error::Precondition(format!(
                "adjoint representations need multiplicativity; {v}"
            )));
        }
        let n = algebra.dim();
        let images = algebra.alpha_power_images(s);
        let mut action = Vec::with_capacity(n * n);
        for img in &images {
            for u in 0..n {
                action.push(algebra.bracket(img, &algebra.unit(u)));
            }
        }
        let mut rep = Representation::new(
            algebra.clone(),
            algebra.basis().clone(),
            algebra.alpha().clone(),
            action,
        )?;
        rep.kind = ActionKind::Adjoint { shift: s };
        Ok(rep)
    }

    pub fn algebra(&self) -> &SuperAlgebra {
        &self.algebra
    }

    pub fn space(&self) -> &SuperBasis {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    pub fn kind(&self) -> ActionKind {
        self.kind
    }

    pub fn mode(&self) -> FieldMode {
        self.algebra.mode()
    }

    pub fn action_table(&self) -> &[SparseVec] {
        &self.action
    }

    pub fn is_zero_action(&self) -> bool {
        self.action.iter().all(SparseVec::is_zero)
    }

    /// `[x, v]_V` for vectors `x` of the algebra and `v` of the module.
    pub fn act(&self, x: &SparseVec, v: &SparseVec) -> SparseVec {
        act_with(&self.action, self.dim(), x, v)
    }

    /// Table of `[alpha^p(e_i), v_u]` in the sense of [`ActionKind`].
    pub fn twisted_action(&self, p: u32) -> Vec<SparseVec> {
        let (n, m) = (self.algebra.dim(), self.dim());
        match self.kind {
            ActionKind::Table => {
                let images = self.algebra.alpha_power_images(i64::from(p));
                let mut out = Vec::with_capacity(n * m);
                for img in &images {
                    for u in 0..m {
                        out.push(self.act(img, &SparseVec::unit(u, self.mode())));
                    }
                }
                out
            }
            ActionKind::Adjoint { shift } => {
                let images = self.algebra.alpha_power_images(shift + i64::from(p));
                let mut out = Vec::with_capacity(n * m);
                for img in &images {
                    for u in 0..m {
                        out.push(self.algebra.bracket(img, &self.algebra.unit(u)));
                    }
                }
                out
            }
        }
    }

    fn witness(&self, algebra_idx: &[usize], module_idx: usize) -> Vec<String> {
        let mut w: Vec<String> = algebra_idx
            .iter()
            .map(|&i| self.algebra.basis().label(i).to_string())
            .collect();
        w.push(self.space.label(module_idx).to_string());
        w
    }

    /// `[alpha(x), beta(v)] = beta([x, v])` and
    /// `[[x, y], beta(v)] = [alpha(x), [y, v]] - (-1)^{|x||y|} [alpha(y), [x, v]]`.
    pub fn check(&self) -> CheckReport {
        let (n, m) = (self.algebra.dim(), self.dim());
        let mode = self.mode();
        let labels = self.space.labels().to_vec();
        let alpha_img = self.algebra.alpha_power_images(1);
        let beta_img: Vec<SparseVec> = (0..m).map(|u| self.beta.column(u)).collect();
        let mut report = CheckReport::new(&["twist-compatibility", "hom-module"]);
        for x in 0..n {
            for u in 0..m {
                let lhs = self.act(&alpha_img[x], &beta_img[u]);
                let rhs = self.beta.apply(&self.action[x * m + u]);
                report.record(
                    "twist-compatibility",
                    self.witness(&[x], u),
                    &lhs.sub(&rhs, mode),
                    &labels,
                );
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = self.algebra.bracket_basis(x, y);
                let s = sign(
                    mode,
                    Parity::both_odd(self.algebra.parity(x), self.algebra.parity(y)),
                );
                for u in 0..m {
                    let lhs = self.act(xy, &beta_img[u]);
                    let t1 = self.act(&alpha_img[x], &self.action[y * m + u]);
                    let t2 = self.act(&alpha_img[y], &self.action[x * m + u]);
                    let defect = lhs.sub(&t1, mode).add_scaled(&s, &t2);
                    report.record("hom-module", self.witness(&[x, y], u), &defect, &labels);
                }
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.check().passed()
    }

    /// The algebra on `G + V` with bracket `([x, y], [x, v] - (-1)^{|x||y|} [y, u])`
    /// and twist `alpha + beta`. Module labels that clash get a `V:` prefix.
    pub fn semidirect_product(&self) -> Result<SuperAlgebra> {
        if let Some(v) = self.check().first() {
            return Err(Error::Precondition(format!("not a representation; {v}")));
        }
        let g = self.algebra.basis();
        let (n, m) = (g.dim(), self.dim());
        let mut entries: Vec<(String, Parity)> = (0..n)
            .map(|i| (g.label(i).to_string(), g.parity(i)))
            .collect();
        for u in 0..m {
            let l = self.space.label(u);
            let l = if g.index_of(l).is_some() {
                format!("V:{l}")
            } else {
                l.to_string()
            };
            entries.push((l, self.space.parity(u)));
        }
        let (basis, pos) = SuperBasis::sorted(entries)?;
        let gi = |i: usize| pos[i];
        let vi = |u: usize| pos[n + u];
        let d = n + m;
        let mode = self.mode();
        let mut table = vec![SparseVec::new(); d * d];
        for i in 0..n {
            for j in 0..n {
                table[gi(i) * d + gi(j)] = self.algebra.bracket_basis(i, j).reindex(gi);
            }
            for u in 0..m {
                let xv = self.action[i * m + u].reindex(vi);
                let s = sign(mode, !Parity::both_odd(g.parity(i), self.space.parity(u)));
                table[vi(u) * d + gi(i)] = xv.scale(&s);
                table[gi(i) * d + vi(u)] = xv;
            }
        }
        let mut alpha = Matrix::zeros(mode, d, d);
        for i in 0..n {
            for j in 0..n {
                alpha.set(gi(i), gi(j), self.algebra.alpha().get(i, j).clone());
            }
        }
        for u in 0..m {
            for w in 0..m {
                alpha.set(vi(u), vi(w), self.beta.get(u, w).clone());
            }
        }
        SuperAlgebra::new(self.algebra.field().clone(), basis, table, alpha)
    }

    /// Tests `[[x, y], beta(v)] = (-1)^{|x||y|} [x, [alpha(y), v]] - [y, [alpha(x), v]]`
    /// and, when it holds, builds the dual module `[x, f](v) = -f([x, v])` with the
    /// transposed twist and re-checks it.
    pub fn coadjoint(&self) -> CoadjointOutcome {
        let (n, m) = (self.algebra.dim(), self.dim());
        let mode = self.mode();
        let labels = self.space.labels().to_vec();
        let alpha_img = self.algebra.alpha_power_images(1);
        let beta_img: Vec<SparseVec> = (0..m).map(|u| self.beta.column(u)).collect();
        let mut admissibility = CheckReport::new(&["coadjoint-admissibility"]);
        for x in 0..n {
            for y in 0..n {
                let s = sign(
                    mode,
                    Parity::both_odd(self.algebra.parity(x), self.algebra.parity(y)),
                );
                for u in 0..m {
                    let lhs = self.act(self.algebra.bracket_basis(x, y), &beta_img[u]);
                    let t1 = self.act(
                        &self.algebra.unit(x),
                        &self.act(&alpha_img[y], &SparseVec::unit(u, mode)),
                    );
                    let t2 = self.act(
                        &self.algebra.unit(y),
                        &self.act(&alpha_img[x], &SparseVec::unit(u, mode)),
                    );
                    let defect = lhs
                        .add_scaled(&-&s, &t1)
                        .add_scaled(&Scalar::one(mode), &t2);
                    admissibility.record(
                        "coadjoint-admissibility",
                        self.witness(&[x, y], u),
                        &defect,
                        &labels,
                    );
                }
            }
        }
        if !admissibility.passed() {
            return CoadjointOutcome {
                admissibility,
                dual: None,
                dual_check: None,
            };
        }
        let dual_space = SuperBasis::new(
            (0..m)
                .map(|u| (format!("{}*", self.space.label(u)), self.space.parity(u)))
                .collect(),
        )
        .expect("dual labels are distinct");
        let mut action = vec![SparseVec::new(); n * m];
        for x in 0..n {
            for u in 0..m {
                let pairs = (0..m)
                    .filter_map(|w| self.action[x * m + w].get(u).map(|c| (w, -c)))
                    .collect();
                action[x * m + u] = SparseVec::from_pairs(pairs);
            }
        }
        let dual = Representation::new(
            self.algebra.clone(),
            dual_space,
            self.beta.transpose(),
            action,
        )
        .expect("dual of a valid module is well formed");
        let dual_check = dual.check();
        CoadjointOutcome {
            admissibility,
            dual: Some(dual),
            dual_check: Some(dual_check),
        }
    }
}

/// Result of [`Representation::coadjoint`].
#[derive(Clone, Debug)]
pub struct CoadjointOutcome {
    pub admissibility: CheckReport,
    pub dual: Option<Representation>,
    pub dual_check: Option<CheckReport>,
}

pub(crate) fn act_with(table: &[SparseVec], m: usize, x: &SparseVec, v: &SparseVec) -> SparseVec {
    let mut pairs = Vec::new();
    for (i, a) in x.iter() {
        for (u, b) in v.iter() {
            let ab = a * b;
            for (w, c) in table[i * m + u].iter() {
                pairs.push((w, &ab * c));
            }
        }
    }
    SparseVec::from_pairs(pairs)
}
