//! Hom-Lie superalgebras given by structure constants, their defining
//! identities, and the standard constructions on them.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{kernel_of_rows, Matrix, SparseVec, Subspace};
use crate::parity::{sign, Parity};
use crate::scalars::{FieldMode, FieldSpec, Scalar};

/// Labelled homogeneous basis with all even elements before all odd ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SuperBasis {
    labels: Vec<String>,
    parities: Vec<Parity>,
}

impl SuperBasis {
    /// Builds a basis, moving even elements first while keeping relative order.
    /// Returns the basis and, for each input position, its new index.
    pub fn sorted(entries: Vec<(String, Parity)>) -> Result<(SuperBasis, Vec<usize>)> {
        let mut seen = HashSet::new();
        for (label, _) in &entries {
            if label.is_empty() {
                return Err(Error::Input("empty basis label".into()));
            }
            if !seen.insert(label.clone()) {
                return Err(Error::Input(format!("duplicate basis label {label:?}")));
            }
        }
        let mut order: Vec<usize> = (0..entries.len()).collect();
        order.sort_by_key(|&i| entries[i].1);
        let mut position = vec![0; entries.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let basis = SuperBasis {
            labels: order.iter().map(|&i| entries[i].0.clone()).collect(),
            parities: order.iter().map(|&i| entries[i].1).collect(),
        };
        Ok((basis, position))
    }

    /// Builds a basis that must already list even elements first.
    pub fn new(entries: Vec<(String, Parity)>) -> Result<SuperBasis> {
        let (basis, position) = SuperBasis::sorted(entries)?;
        if position.iter().enumerate().any(|(i, &p)| i != p) {
            return Err(Error::Input(
                "basis must list even elements before odd ones".into(),
            ));
        }
        Ok(basis)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parities
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.parities[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn even_dim(&self) -> usize {
        self.parities.iter().filter(|p| !p.is_odd()).count()
    }

    /// Parity of a vector if it is homogeneous; the zero vector counts as even.
    pub fn parity_of(&self, v: &SparseVec) -> Option<Parity> {
        let mut it = v.iter().map(|(i, _)| self.parities[i]);
        let first = it.next().unwrap_or(Parity::Even);
        it.all(|p| p == first).then_some(first)
    }

    /// Whether the matrix, as a map between these bases, shifts degrees by `p`.
    pub fn map_has_parity(&self, target: &SuperBasis, m: &Matrix, p: Parity) -> bool {
        (0..m.rows()).all(|i| {
            (0..m.cols()).all(|j| m.get(i, j).is_zero() || target.parity(i) == self.parity(j) + p)
        })
    }

    /// Readable form of a vector, e.g. `2*e1 - e3`.
    pub fn format_vec(&self, v: &SparseVec) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.iter()
            .map(|(i, c)| format!("({c})*{}", self.labels[i]))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// One failure of an identity on specific basis elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub identity: String,
    pub witness: Vec<String>,
    /// Nonzero components of the defect, by basis label.
    pub residual: Vec<(String, Scalar)>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let res: Vec<String> = self
            .residual
            .iter()
            .map(|(l, c)| format!("{l}: {c}"))
            .collect();
        write!(
            f,
            "{} fails at ({}): {{{}}}",
            self.identity,
            self.witness.join(", "),
            res.join(", ")
        )
    }
}

/// Outcome of checking identities over basis tuples. Violations are listed in
/// lexicographic order of their witnesses.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct CheckReport {
    pub identities: Vec<String>,
    pub evaluated: usize,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    pub fn new(identities: &[&str]) -> Self {
        CheckReport {
            identities: identities.iter().map(|s| s.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }

    /// Records one evaluation of `identity` and a violation if `defect` is nonzero.
    pub fn record(
        &mut self,
        identity: &str,
        witness: Vec<String>,
        defect: &SparseVec,
        labels: &[String],
    ) {
        self.evaluated += 1;
        if !defect.is_zero() {
            self.violations.push(Violation {
                identity: identity.into(),
                witness,
                residual: defect
                    .iter()
                    .map(|(i, c)| (labels[i].clone(), c.clone()))
                    .collect(),
            });
        }
    }

    pub fn merge(mut self, other: CheckReport) -> CheckReport {
        self.identities.extend(other.identities);
        self.evaluated += other.evaluated;
        self.violations.extend(other.violations);
        self
    }
}

/// A finite-dimensional superalgebra with an even linear map `alpha`.
/// `table[i * dim + j]` holds `[e_i, e_j]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperAlgebra {
    field: FieldSpec,
    basis: SuperBasis,
    table: Vec<SparseVec>,
    alpha: Matrix,
}

impl SuperAlgebra {
    /// Validates dimensions, field modes, homogeneity of the bracket and of
    /// `alpha`, and super skew-symmetry of the table.
    pub fn new(
        field: FieldSpec,
        basis: SuperBasis,
        table: Vec<SparseVec>,
        alpha: Matrix,
    ) -> Result<Self> {
        let n = basis.dim();
        if table.len() != n * n {
            return Err(Error::Dimension(format!(
                "bracket table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if alpha.rows() != n || alpha.cols() != n {
            return Err(Error::Dimension(format!(
                "alpha is {}x{}, expected {n}x{n}",
                alpha.rows(),
                alpha.cols()
            )));
        }
        if alpha.mode() != field.mode {
            return Err(Error::ModeMismatch(
                field.mode.to_string(),
                alpha.mode().to_string(),
            ));
        }
        if !basis.map_has_parity(&basis, &alpha, Parity::Even) {
            return Err(Error::InvalidAlgebra("alpha is not even".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let v = &table[i * n + j];
                for (k, c) in v.iter() {
                    if k >= n {
                        return Err(Error::Dimension(format!(
                            "bracket component {k} out of range"
                        )));
                    }
                    if c.mode() != field.mode {
                        return Err(Error::ModeMismatch(
                            field.mode.to_string(),
                            c.mode().to_string(),
                        ));
                    }
                    if basis.parity(k) != basis.parity(i) + basis.parity(j) {
                        return Err(Error::InvalidAlgebra(format!(
                            "[{}, {}] has a component of the wrong parity along {}",
                            basis.label(i),
                            basis.label(j),
                            basis.label(k)
                        )));
                    }
                }
                let s = sign(
                    field.mode,
                    !Parity::both_odd(basis.parity(i), basis.parity(j)),
                );
                if table[j * n + i] != v.scale(&s) {
                    return Err(Error::InvalidAlgebra(format!(
                        "bracket is not super skew-symmetric on ({}, {})",
                        basis.label(i),
                        basis.label(j)
                    )));
                }
            }
        }
        Ok(SuperAlgebra {
            field,
            basis,
            table,
            alpha,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn mode(&self) -> FieldMode {
        self.field.mode
    }

    pub fn basis(&self) -> &SuperBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn table(&self) -> &[SparseVec] {
        &self.table
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.basis.parity(i)
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim() + j]
    }

    pub fn bracket(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a * b;
                for (k, c) in self.bracket_basis(i, j).iter() {
                    pairs.push((k, &ab * c));
                }
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn apply_alpha(&self, v: &SparseVec) -> SparseVec {
        self.alpha.apply(v)
    }

    pub fn unit(&self, i: usize) -> SparseVec {
        SparseVec::unit(i, self.mode())
    }

    /// `alpha^k` with the convention that negative powers are zero.
    pub fn alpha_power(&self, k: i64) -> Matrix {
        if k < 0 {
            return Matrix::zeros(self.mode(), self.dim(), self.dim());
        }
        let k = u32::try_from(k).expect("alpha power fits in u32");
        self.alpha.pow(k).expect("alpha is square")
    }

    /// Images `alpha^k(e_i)` for every basis vector.
    pub fn alpha_power_images(&self, k: i64) -> Vec<SparseVec> {
        let m = self.alpha_power(k);
        (0..self.dim()).map(|j| m.column(j)).collect()
    }

    fn labels_of(&self, idx: &[usize]) -> Vec<String> {
        idx.iter()
            .map(|&i| self.basis.label(i).to_string())
            .collect()
    }

    /// Super skew-symmetry on all ordered pairs and the super Hom-Jacobi
    /// identity on all ordered triples of basis elements.
    pub fn check_hom_lie(&self) -> CheckReport {
        let n = self.dim();
        let mode = self.mode();
        let labels = self.basis.labels().to_vec();
        let mut report = CheckReport::new(&["super-skew-symmetry", "hom-jacobi"]);
        for i in 0..n {
            for j in 0..n {
                let s = sign(mode, Parity::both_odd(self.parity(i), self.parity(j)));
                let defect = self
                    .bracket_basis(i, j)
                    .add_scaled(&s, self.bracket_basis(j, i));
                report.record(
                    "super-skew-symmetry",
                    self.labels_of(&[i, j]),
                    &defect,
                    &labels,
                );
            }
        }
        let alpha_img = self.alpha_power_images(1);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let defect = self.jacobiator(&alpha_img, x, y, z);
                    report.record("hom-jacobi", self.labels_of(&[x, y, z]), &defect, &labels);
                }
            }
        }
        report
    }

    /// Cyclic sum of `(-1)^{|x||z|} [alpha(x), [y, z]]`.
    fn jacobiator(&self, alpha_img: &[SparseVec], x: usize, y: usize, z: usize) -> SparseVec {
        let mode = self.mode();
        let mut acc = SparseVec::new();
        for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
            let s = sign(mode, Parity::both_odd(self.parity(a), self.parity(c)));
            let term = self.bracket(&alpha_img[a], self.bracket_basis(b, c));
            acc = acc.add_scaled(&s, &term);
        }
        acc
    }

    /// `alpha([x, y]) = [alpha(x), alpha(y)]` on all basis pairs.
    pub fn check_multiplicative(&self) -> CheckReport {
        let n = self.dim();
        let labels = self.basis.labels().to_vec();
        let alpha_img = self.alpha_power_images(1);
        let mut report = CheckReport::new(&["multiplicativity"]);
        for i in 0..n {
            for j in 0..n {
                let lhs = self.apply_alpha(self.bracket_basis(i, j));
                let rhs = self.bracket(&alpha_img[i], &alpha_img[j]);
                report.record(
                    "multiplicativity",
                    self.labels_of(&[i, j]),
                    &lhs.sub(&rhs, self.mode()),
                    &labels,
                );
            }
        }
        report
    }

    pub fn is_hom_lie(&self) -> bool {
        self.check_hom_lie().passed()
    }

    pub fn is_multiplicative(&self) -> bool {
        self.check_multiplicative().passed()
    }

    fn require_hom_lie(&self, what: &str) -> Result<()> {
        match self.check_hom_lie().first() {
            None => Ok(()),
            Some(v) => Err(Error::Precondition(format!(
                "{what} requires a Hom-Lie superalgebra; {v}"
            ))),
        }
    }

    fn require_multiplicative(&self, what: &str) -> Result<()> {
        match self.check_multiplicative().first() {
            None => Ok(()),
            Some(v) => Err(Error::Precondition(format!(
                "{what} requires a multiplicative algebra; {v}"
            ))),
        }
    }

    /// `{x : [x, y] = 0 for all y}`.
    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n * n];
        for i in 0..n {
            for j in 0..n {
                for (k, c) in self.bracket_basis(i, j).iter() {
                    rows[j * n + k].push((i, c.clone()));
                }
            }
        }
        kernel_of_rows(n, self.mode(), rows.into_iter().map(SparseVec::from_pairs))
    }

    /// Replaces bracket and twist by `beta . [ , ]` and `beta . alpha`, where
    /// `beta` must be an even endomorphism of the bracket.
    pub fn twist(&self, beta: &Matrix) -> Result<SuperAlgebra> {
        self.check_operator(beta)?;
        self.require_hom_lie("twisting")?;
        let images: Vec<SparseVec> = (0..self.dim()).map(|j| beta.column(j)).collect();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let lhs = beta.apply(self.bracket_basis(i, j));
                if lhs != self.bracket(&images[i], &images[j]) {
                    return Err(Error::Precondition(format!(
                        "beta does not preserve the bracket on ({}, {})",
                        self.basis.label(i),
                        self.basis.label(j)
                    )));
                }
            }
        }
        let table = self.table.iter().map(|v| beta.apply(v)).collect();
        SuperAlgebra::new(
            self.field.clone(),
            self.basis.clone(),
            table,
            beta.mul(&self.alpha)?,
        )
    }

    fn check_operator(&self, m: &Matrix) -> Result<()> {
        if m.rows() != self.dim() || m.cols() != self.dim() {
            return Err(Error::Dimension(format!(
                "expected a {0}x{0} matrix",
                self.dim()
            )));
        }
        if m.mode() != self.mode() {
            return Err(Error::ModeMismatch(
                self.mode().to_string(),
                m.mode().to_string(),
            ));
        }
        if !self.basis.map_has_parity(&self.basis, m, Parity::Even) {
            return Err(Error::Precondition("the map is not even".into()));
        }
        Ok(())
    }

    /// Even maps `theta` with `theta([x, y]) = [theta(x), y]`, as a subspace of
    /// row-major flattened matrices. Requires `alpha = id` and the Jacobi identity.
    pub fn centroid(&self) -> Result<Subspace> {
        if !self.alpha.is_identity() {
            return Err(Error::Precondition(
                "the centroid is computed for Lie superalgebras (alpha = id)".into(),
            ));
        }
        self.require_hom_lie("the centroid")?;
        let n = self.dim();
        let mode = self.mode();
        let mut rows: Vec<SparseVec> = Vec::new();
        for u in 0..n {
            for i in 0..n {
                if self.parity(u) != self.parity(i) {
                    rows.push(SparseVec::unit(u * n + i, mode));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let mut eq: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); n];
                for (m, c) in self.bracket_basis(i, j).iter() {
                    for (k, row) in eq.iter_mut().enumerate() {
                        row.push((k * n + m, c.clone()));
                    }
                }
                for u in 0..n {
                    for (k, c) in self.bracket_basis(u, j).iter() {
                        eq[k].push((u * n + i, -c));
                    }
                }
                rows.extend(eq.into_iter().map(SparseVec::from_pairs));
            }
        }
        Ok(kernel_of_rows(n * n, mode, rows))
    }

    /// `(theta . [ , ], theta)` for a centroid element `theta`.
    pub fn centroid_twist(&self, theta: &Matrix) -> Result<SuperAlgebra> {
        self.check_operator(theta)?;
        let flat = crate::linalg::flatten(theta);
        if !self.centroid()?.contains(&flat) {
            return Err(Error::Precondition("theta is not in the centroid".into()));
        }
        let table = self.table.iter().map(|v| theta.apply(v)).collect();
        SuperAlgebra::new(self.field.clone(), self.basis.clone(), table, theta.clone())
    }

    /// Adjoins an even element `d` acting by the even map `dmap`:
    /// `[d, h] = D(h)`, `[g, d] = -D(g)`, `[d, d] = 0`, and `alpha(d) = d`.
    pub fn derivation_extension(&self, dmap: &Matrix, label: &str) -> Result<SuperAlgebra> {
        self.check_operator(dmap).map_err(|_| {
            Error::Precondition("the adjoined map must be an even square matrix".into())
        })?;
        if self.basis.index_of(label).is_some() {
            return Err(Error::Input(format!("label {label:?} already in use")));
        }
        let n = self.dim();
        let ev = self.basis.even_dim();
        let new_index = |i: usize| if i < ev { i } else { i + 1 };
        let mut entries: Vec<(String, Parity)> = (0..ev)
            .map(|i| (self.basis.label(i).to_string(), Parity::Even))
            .collect();
        entries.push((label.to_string(), Parity::Even));
        entries.extend((ev..n).map(|i| (self.basis.label(i).to_string(), Parity::Odd)));
        let basis = SuperBasis::new(entries)?;
        let m = n + 1;
        let mode = self.mode();
        let mut table = vec![SparseVec::new(); m * m];
        for i in 0..n {
            for j in 0..n {
                table[new_index(i) * m + new_index(j)] =
                    self.bracket_basis(i, j).reindex(new_index);
            }
            let dv = dmap.column(i).reindex(new_index);
            table[ev * m + new_index(i)] = dv.clone();
            table[new_index(i) * m + ev] = dv.scale(&Scalar::from_int(mode, -1));
        }
        let mut alpha = Matrix::zeros(mode, m, m);
        for i in 0..n {
            for j in 0..n {
                alpha.set(new_index(i), new_index(j), self.alpha.get(i, j).clone());
            }
        }
        alpha.set(ev, ev, Scalar::one(mode));
        SuperAlgebra::new(self.field.clone(), basis, table, alpha)
    }

    /// `(alpha^{-1} . [ , ], id)` for a multiplicative algebra with invertible `alpha`.
    pub fn untwist_regular(&self) -> Result<SuperAlgebra> {
        let inv = self
            .alpha
            .inverse()?
            .ok_or_else(|| Error::Precondition("alpha is not invertible".into()))?;
        self.require_multiplicative("untwisting")?;
        let table = self.table.iter().map(|v| inv.apply(v)).collect();
        SuperAlgebra::new(
            self.field.clone(),
            self.basis.clone(),
            table,
            Matrix::identity(self.mode(), self.dim()),
        )
    }
}

/// Incremental construction of a bracket table; setting `[e_i, e_j]` also sets
/// `[e_j, e_i]` by super skew-symmetry.
#[derive(Clone, Debug)]
pub struct AlgebraBuilder {
    field: FieldSpec,
    basis: SuperBasis,
    table: Vec<SparseVec>,
    alpha: Matrix,
}

impl AlgebraBuilder {
    pub fn new(field: FieldSpec, basis: SuperBasis) -> Self {
        let n = basis.dim();
        let alpha = Matrix::identity(field.mode, n);
        AlgebraBuilder {
            field,
            basis,
            table: vec![SparseVec::new(); n * n],
            alpha,
        }
    }

    pub fn basis(&self) -> &SuperBasis {
        &self.basis
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    fn index(&self, label: &str) -> Result<usize> {
        self.basis
            .index_of(label)
            .ok_or_else(|| Error::Input(format!("unknown basis label {label:?}")))
    }

    /// Sets `[left, right]` from `(label, coefficient)` pairs.
    pub fn bracket(
        &mut self,
        left: &str,
        right: &str,
        value: &[(&str, Scalar)],
    ) -> Result<&mut Self> {
        let (i, j) = (self.index(left)?, self.index(right)?);
        let mut pairs = Vec::new();
        for (l, c) in value {
            pairs.push((self.index(l)?, c.clone()));
        }
        self.set_bracket(i, j, SparseVec::from_pairs(pairs))?;
        Ok(self)
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, v: SparseVec) -> Result<()> {
        let n = self.basis.dim();
        let s = sign(
            self.field.mode,
            !Parity::both_odd(self.basis.parity(i), self.basis.parity(j)),
        );
        let mirrored = v.scale(&s);
        if i == j && mirrored != v {
            return Err(Error::InvalidAlgebra(format!(
                "[{0}, {0}] must vanish for an even element",
                self.basis.label(i)
            )));
        }
        self.table[i * n + j] = v;
        self.table[j * n + i] = mirrored;
        Ok(())
    }

    /// Sets `alpha(label) = value`.
    pub fn alpha(&mut self, label: &str, value: &[(&str, Scalar)]) -> Result<&mut Self> {
        let j = self.index(label)?;
        for i in 0..self.basis.dim() {
            self.alpha.set(i, j, Scalar::zero(self.field.mode));
        }
        for (l, c) in value {
            let i = self.index(l)?;
            self.alpha.set(i, j, c.clone());
        }
        Ok(self)
    }

    pub fn set_alpha(&mut self, alpha: Matrix) -> &mut Self {
        self.alpha = alpha;
        self
    }

    pub fn build(&self) -> Result<SuperAlgebra> {
        SuperAlgebra::new(
            self.field.clone(),
            self.basis.clone(),
            self.table.clone(),
            self.alpha.clone(),
        )
    }
}
