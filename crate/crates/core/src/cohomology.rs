//! Super-alternating cochains, the twisted coboundary and the cohomology
//! spaces it defines, together with extensions and deformations.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::homlie::{CheckReport, SuperAlgebra, SuperBasis};
use crate::linalg::{
    kernel_of_columns, quotient_data, row_space, solve, Matrix, SparseVec, Subspace,
};
use crate::parity::{sign, Parity};
use crate::repr::{act_with, Representation};
use crate::scalars::{FieldMode, Scalar};

/// Sign rule for the bracket terms of the coboundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum SignConvention {
    /// Bracket term sign `(-1)^{t + |x_t|(|x_{s+1}| + ... + |x_{t-1}|)}`.
    #[default]
    Standard,
    /// As [`SignConvention::Standard`] with an extra `|x_t||f|` in the exponent.
    CochainParity,
}

impl SignConvention {
    pub const ENV_VAR: &'static str = "HOMLIE_SIGN_CONVENTION";

    pub fn name(self) -> &'static str {
        match self {
            SignConvention::Standard => "standard",
            SignConvention::CochainParity => "cochain-parity",
        }
    }
}

impl FromStr for SignConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(SignConvention::Standard),
            "cochain-parity" => Ok(SignConvention::CochainParity),
            _ => Err(Error::Input(format!(
                "unknown sign convention {s:?} (expected standard or cochain-parity)"
            ))),
        }
    }
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Nondecreasing index tuples of length `k` in which only odd indices repeat.
pub fn canonical_tuples(parities: &[Parity], k: usize) -> Vec<Vec<usize>> {
    fn extend(parities: &[Parity], k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let start = match cur.last() {
            None => 0,
            Some(&l) if parities[l].is_odd() => l,
            Some(&l) => l + 1,
        };
        for i in start..parities.len() {
            cur.push(i);
            extend(parities, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(parities, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Sorts a tuple, tracking the Koszul sign of super-alternation. Returns the
/// sorted tuple and whether the sign is negative, or `None` when an even
/// index repeats (the value is then zero).
pub fn canonicalize(tuple: &[usize], parities: &[Parity]) -> Option<(Vec<usize>, bool)> {
    let mut t = tuple.to_vec();
    let mut negative = false;
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            // swapping a, b contributes -(-1)^{|a||b|}
            if !Parity::both_odd(parities[t[j - 1]], parities[t[j]]) {
                negative = !negative;
            }
            t.swap(j - 1, j);
            j -= 1;
        }
    }
    if t.windows(2)
        .any(|w| w[0] == w[1] && !parities[w[0]].is_odd())
    {
        return None;
    }
    Some((t, negative))
}

/// A homogeneous super-alternating `k`-cochain, stored on canonical tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    parity: Parity,
    mode: FieldMode,
    domain: Vec<Parity>,
    codomain: Vec<Parity>,
    values: BTreeMap<Vec<usize>, SparseVec>,
}

impl Cochain {
    pub fn zero(
        mode: FieldMode,
        domain: &[Parity],
        codomain: &[Parity],
        degree: usize,
        parity: Parity,
    ) -> Self {
        Cochain {
            degree,
            parity,
            mode,
            domain: domain.to_vec(),
            codomain: codomain.to_vec(),
            values: BTreeMap::new(),
        }
    }

    /// The zero cochain on `alg` with values in `rep`.
    pub fn zero_for(
        alg: &SuperAlgebra,
        rep: &Representation,
        degree: usize,
        parity: Parity,
    ) -> Self {
        Cochain::zero(
            alg.mode(),
            alg.basis().parities(),
            rep.space().parities(),
            degree,
            parity,
        )
    }

    /// The bracket of `alg`, as an even 2-cochain with values in the algebra.
    pub fn from_bracket(alg: &SuperAlgebra) -> Self {
        let p = alg.basis().parities();
        let mut c = Cochain::zero(alg.mode(), p, p, 2, Parity::Even);
        for t in canonical_tuples(p, 2) {
            c.values
                .insert(t.clone(), alg.bracket_basis(t[0], t[1]).clone());
        }
        c.values.retain(|_, v| !v.is_zero());
        c
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn mode(&self) -> FieldMode {
        self.mode
    }

    pub fn domain(&self) -> &[Parity] {
        &self.domain
    }

    pub fn codomain(&self) -> &[Parity] {
        &self.codomain
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Nonzero values on canonical tuples.
    pub fn values(&self) -> impl Iterator<Item = (&Vec<usize>, &SparseVec)> {
        self.values.iter()
    }

    /// Sets the value on an arbitrary tuple; the canonical entry is adjusted by
    /// the Koszul sign. Checks homogeneity of the value.
    pub fn set(&mut self, tuple: &[usize], value: SparseVec) -> Result<()> {
        if tuple.len() != self.degree {
            return Err(Error::Dimension(format!(
                "expected {} arguments, got {}",
                self.degree,
                tuple.len()
            )));
        }
        if let Some(&i) = tuple.iter().find(|&&i| i >= self.domain.len()) {
            return Err(Error::Dimension(format!("argument index {i} out of range")));
        }
        let Some((t, negative)) = canonicalize(tuple, &self.domain) else {
            if value.is_zero() {
                return Ok(());
            }
            return Err(Error::Input(
                "a repeated even argument forces the value zero".into(),
            ));
        };
        let tp = Parity::sum(t.iter().map(|&i| self.domain[i])) + self.parity;
        if let Some((u, _)) = value
            .iter()
            .find(|(u, _)| *u >= self.codomain.len() || self.codomain[*u] != tp)
        {
            return Err(Error::Input(format!(
                "value component {u} has the wrong parity for this cochain"
            )));
        }
        let value = if negative {
            value.scale(&Scalar::from_int(self.mode, -1))
        } else {
            value
        };
        if value.is_zero() {
            self.values.remove(&t);
        } else {
            self.values.insert(t, value);
        }
        Ok(())
    }

    /// Value on basis elements in any order.
    pub fn value_at(&self, tuple: &[usize]) -> SparseVec {
        match canonicalize(tuple, &self.domain) {
            None => SparseVec::new(),
            Some((t, negative)) => match self.values.get(&t) {
                None => SparseVec::new(),
                Some(v) if negative => v.scale(&Scalar::from_int(self.mode, -1)),
                Some(v) => v.clone(),
            },
        }
    }

    /// Multilinear evaluation on arbitrary vectors.
    pub fn eval(&self, args: &[SparseVec]) -> SparseVec {
        debug_assert_eq!(args.len(), self.degree);
        let mut partial: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), Scalar::one(self.mode))];
        for a in args {
            if a.is_zero() {
                return SparseVec::new();
            }
            let mut next = Vec::with_capacity(partial.len() * a.nnz());
            for (t, c) in &partial {
                for (i, x) in a.iter() {
                    let mut t2 = t.clone();
                    t2.push(i);
                    next.push((t2, c * x));
                }
            }
            partial = next;
        }
        let mut acc: BTreeMap<Vec<usize>, Scalar> = BTreeMap::new();
        for (t, c) in partial {
            if let Some((t, negative)) = canonicalize(&t, &self.domain) {
                let c = if negative { -c } else { c };
                let e = acc.entry(t).or_insert_with(|| Scalar::zero(self.mode));
                *e = &*e + &c;
            }
        }
        let mut out = SparseVec::new();
        for (t, c) in acc {
            if let Some(v) = self.values.get(&t) {
                out = out.add_scaled(&c, v);
            }
        }
        out
    }

    fn same_shape(&self, other: &Cochain) -> Result<()> {
        if self.degree != other.degree
            || self.parity != other.parity
            || self.domain != other.domain
            || self.codomain != other.codomain
        {
            return Err(Error::Dimension("cochains of different shapes".into()));
        }
        Ok(())
    }

    /// `self + c * other`.
    pub fn add_scaled(&self, c: &Scalar, other: &Cochain) -> Result<Cochain> {
        self.same_shape(other)?;
        let mut out = self.clone();
        for (t, v) in &other.values {
            let cur = out.values.remove(t).unwrap_or_default().add_scaled(c, v);
            if !cur.is_zero() {
                out.values.insert(t.clone(), cur);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain> {
        self.add_scaled(&Scalar::from_int(self.mode, -1), other)
    }

    /// `alpha`/`beta` compatibility defect `beta . f - f . alpha` on every canonical tuple.
    pub fn compatibility_defect(&self, alg: &SuperAlgebra, beta: &Matrix) -> Cochain {
        let alpha_img = alg.alpha_power_images(1);
        let mut out = Cochain {
            values: BTreeMap::new(),
            ..self.clone()
        };
        for t in canonical_tuples(&self.domain, self.degree) {
            let args: Vec<SparseVec> = t.iter().map(|&i| alpha_img[i].clone()).collect();
            let d = beta
                .apply(&self.value_at(&t))
                .sub(&self.eval(&args), self.mode);
            if !d.is_zero() {
                out.values.insert(t, d);
            }
        }
        out
    }

    /// Readable listing of the nonzero values.
    pub fn describe(
        &self,
        domain: &SuperBasis,
        codomain: &SuperBasis,
    ) -> Vec<(Vec<String>, Vec<(String, Scalar)>)> {
        self.values
            .iter()
            .map(|(t, v)| {
                (
                    t.iter().map(|&i| domain.label(i).to_string()).collect(),
                    v.iter()
                        .map(|(u, c)| (codomain.label(u).to_string(), c.clone()))
                        .collect(),
                )
            })
            .collect()
    }
}

/// Coordinates for homogeneous `k`-cochains of fixed parity: one coordinate per
/// canonical tuple and admissible value component.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    degree: usize,
    parity: Parity,
    mode: FieldMode,
    domain: Vec<Parity>,
    codomain: Vec<Parity>,
    coords: Vec<(Vec<usize>, usize)>,
    index: HashMap<(Vec<usize>, usize), usize>,
}

impl CochainSpace {
    pub fn new(
        mode: FieldMode,
        domain: &[Parity],
        codomain: &[Parity],
        degree: usize,
        parity: Parity,
    ) -> Self {
        let mut coords = Vec::new();
        for t in canonical_tuples(domain, degree) {
            let tp = Parity::sum(t.iter().map(|&i| domain[i])) + parity;
            for (u, &pu) in codomain.iter().enumerate() {
                if pu == tp {
                    coords.push((t.clone(), u));
                }
            }
        }
        let index = coords
            .iter()
            .cloned()
            .enumerate()
            .map(|(k, c)| (c, k))
            .collect();
        CochainSpace {
            degree,
            parity,
            mode,
            domain: domain.to_vec(),
            codomain: codomain.to_vec(),
            coords,
            index,
        }
    }

    pub fn for_module(
        alg: &SuperAlgebra,
        rep: &Representation,
        degree: usize,
        parity: Parity,
    ) -> Self {
        CochainSpace::new(
            alg.mode(),
            alg.basis().parities(),
            rep.space().parities(),
            degree,
            parity,
        )
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    pub fn coords(&self) -> &[(Vec<usize>, usize)] {
        &self.coords
    }

    pub fn coordinate(&self, tuple: &[usize], u: usize) -> Option<usize> {
        self.index.get(&(tuple.to_vec(), u)).copied()
    }

    pub fn to_vector(&self, f: &Cochain) -> SparseVec {
        let mut pairs = Vec::new();
        for (t, v) in &f.values {
            for (u, c) in v.iter() {
                let k = self
                    .index
                    .get(&(t.clone(), u))
                    .expect("cochain lies in this coordinate space");
                pairs.push((*k, c.clone()));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn to_cochain(&self, v: &SparseVec) -> Cochain {
        let mut values: BTreeMap<Vec<usize>, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (k, c) in v.iter() {
            let (t, u) = &self.coords[k];
            values.entry(t.clone()).or_default().push((*u, c.clone()));
        }
        Cochain {
            degree: self.degree,
            parity: self.parity,
            mode: self.mode,
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            values: values
                .into_iter()
                .map(|(t, p)| (t, SparseVec::from_pairs(p)))
                .collect(),
        }
    }

    pub fn unit(&self, k: usize) -> Cochain {
        self.to_cochain(&SparseVec::unit(k, self.mode))
    }
}

/// `C^k_{alpha,beta}`: cochains with `beta . f = f . alpha`, as a subspace of
/// the coordinate space.
pub fn hom_cochain_space(
    alg: &SuperAlgebra,
    rep: &Representation,
    k: usize,
    parity: Parity,
) -> (CochainSpace, Subspace) {
    let space = CochainSpace::for_module(alg, rep, k, parity);
    let columns: Vec<SparseVec> = (0..space.dim())
        .map(|c| space.to_vector(&space.unit(c).compatibility_defect(alg, rep.beta())))
        .collect();
    let sub = kernel_of_columns(space.dim(), alg.mode(), &columns);
    (space, sub)
}

/// The coboundary `delta^k_r` for a fixed algebra, module, twist exponent `r`
/// and sign convention.
pub struct Coboundary<'a> {
    alg: &'a SuperAlgebra,
    rep: &'a Representation,
    r: u32,
    convention: SignConvention,
    alpha_img: Vec<SparseVec>,
    actions: RefCell<HashMap<u32, std::rc::Rc<Vec<SparseVec>>>>,
}

impl<'a> Coboundary<'a> {
    pub fn new(
        alg: &'a SuperAlgebra,
        rep: &'a Representation,
        r: u32,
        convention: SignConvention,
    ) -> Result<Self> {
        if r == 0 {
            return Err(Error::Input(
                "the twist exponent r must be at least 1".into(),
            ));
        }
        if rep.algebra() != alg {
            return Err(Error::Input(
                "the module is over a different algebra".into(),
            ));
        }
        Ok(Coboundary {
            alg,
            rep,
            r,
            convention,
            alpha_img: alg.alpha_power_images(1),
            actions: RefCell::default(),
        })
    }

    fn action(&self, p: u32) -> std::rc::Rc<Vec<SparseVec>> {
        self.actions
            .borrow_mut()
            .entry(p)
            .or_insert_with(|| std::rc::Rc::new(self.rep.twisted_action(p)))
            .clone()
    }

    /// `delta f` without checking that `f` is compatible with the twists.
    pub fn apply(&self, f: &Cochain) -> Cochain {
        let k = f.degree;
        let mode = self.alg.mode();
        let par = self.alg.basis().parities();
        let action = self.action(k as u32 + self.r - 1);
        let m = self.rep.dim();
        let fodd = f.parity.is_odd();
        let mut out = Cochain {
            degree: k + 1,
            values: BTreeMap::new(),
            ..f.clone()
        };
        for x in canonical_tuples(par, k + 1) {
            let mut acc = SparseVec::new();
            for t in 1..=k {
                for s in 0..t {
                    let between = Parity::sum(x[s + 1..t].iter().map(|&i| par[i]));
                    let mut neg = (t % 2 == 1) ^ Parity::both_odd(par[x[t]], between);
                    if self.convention == SignConvention::CochainParity {
                        neg ^= par[x[t]].is_odd() && fodd;
                    }
                    let args: Vec<SparseVec> = (0..=k)
                        .filter(|&j| j != t)
                        .map(|j| {
                            if j == s {
                                self.alg.bracket_basis(x[s], x[t]).clone()
                            } else {
                                self.alpha_img[x[j]].clone()
                            }
                        })
                        .collect();
                    let val = f.eval(&args);
                    acc = acc.add_scaled(&sign(mode, neg), &val);
                }
            }
            for s in 0..=k {
                let before = Parity::sum(x[..s].iter().map(|&i| par[i])) + f.parity;
                let neg = (s % 2 == 1) ^ Parity::both_odd(par[x[s]], before);
                let rest: Vec<usize> = (0..=k).filter(|&j| j != s).map(|j| x[j]).collect();
                let v = f.value_at(&rest);
                if v.is_zero() {
                    continue;
                }
                let term = act_with(&action, m, &self.alg.unit(x[s]), &v);
                acc = acc.add_scaled(&sign(mode, neg), &term);
            }
            if !acc.is_zero() {
                out.values.insert(x, acc);
            }
        }
        out
    }

    /// `delta f`, rejecting cochains outside `C^k_{alpha,beta}`.
    pub fn apply_checked(&self, f: &Cochain) -> Result<Cochain> {
        if !f.compatibility_defect(self.alg, self.rep.beta()).is_zero() {
            return Err(Error::Precondition(
                "the cochain does not satisfy beta . f = f . alpha".into(),
            ));
        }
        let out = self.apply(f);
        debug_assert!(
            !self.alg.is_multiplicative()
                || out
                    .compatibility_defect(self.alg, self.rep.beta())
                    .is_zero(),
            "coboundary left the compatible cochains"
        );
        Ok(out)
    }

    /// Images of the basis of `C^k_{alpha,beta}` in the coordinates of degree `k + 1`.
    fn images(&self, k: usize, parity: Parity) -> (Vec<SparseVec>, Subspace, CochainSpace) {
        let (space, sub) = hom_cochain_space(self.alg, self.rep, k, parity);
        let target = CochainSpace::for_module(self.alg, self.rep, k + 1, parity);
        let images = sub
            .basis()
            .iter()
            .map(|b| target.to_vector(&self.apply(&space.to_cochain(b))))
            .collect();
        (images, sub, space)
    }
}

/// `delta f` for a compatible cochain.
pub fn coboundary(
    f: &Cochain,
    alg: &SuperAlgebra,
    rep: &Representation,
    r: u32,
    convention: SignConvention,
) -> Result<Cochain> {
    Coboundary::new(alg, rep, r, convention)?.apply_checked(f)
}

/// Applies the coboundary twice to every basis element of `C^k_{alpha,beta}`
/// for `k <= kmax` and both parities.
pub fn verify_complex(
    alg: &SuperAlgebra,
    rep: &Representation,
    r: u32,
    kmax: usize,
    convention: SignConvention,
) -> Result<CheckReport> {
    let d = Coboundary::new(alg, rep, r, convention)?;
    let labels = rep.space().labels().to_vec();
    let mut report = CheckReport::new(&["coboundary-squared"]);
    for k in 0..=kmax {
        for parity in Parity::BOTH {
            let (space, sub) = hom_cochain_space(alg, rep, k, parity);
            for (idx, b) in sub.basis().iter().enumerate() {
                let dd = d.apply(&d.apply(&space.to_cochain(b)));
                let (witness, residual) = match dd.values.iter().next() {
                    None => (vec![], SparseVec::new()),
                    Some((t, v)) => {
                        let mut w = vec![
                            format!("k={k}"),
                            format!("parity={parity}"),
                            format!("basis={idx}"),
                        ];
                        w.extend(t.iter().map(|&i| alg.basis().label(i).to_string()));
                        (w, v.clone())
                    }
                };
                report.record("coboundary-squared", witness, &residual, &labels);
            }
        }
    }
    Ok(report)
}

/// Cocycles, coboundaries and cohomology in one degree and parity.
#[derive(Clone, Debug)]
pub struct CohomologyData {
    pub k: usize,
    pub r: u32,
    pub parity: Parity,
    pub space: CochainSpace,
    pub z: Subspace,
    pub b: Subspace,
    pub representatives: Vec<Cochain>,
}

impl CohomologyData {
    pub fn dim_z(&self) -> usize {
        self.z.dim()
    }

    pub fn dim_b(&self) -> usize {
        self.b.dim()
    }

    pub fn dim_h(&self) -> usize {
        self.representatives.len()
    }
}

/// `Z^k`, `B^k` and `H^k = Z^k / B^k` of the complex of compatible cochains.
pub fn cohomology(
    alg: &SuperAlgebra,
    rep: &Representation,
    k: usize,
    r: u32,
    parity: Parity,
    convention: SignConvention,
) -> Result<CohomologyData> {
    let d = Coboundary::new(alg, rep, r, convention)?;
    let mode = alg.mode();
    let (images, sub, space) = d.images(k, parity);
    let target_dim = CochainSpace::for_module(alg, rep, k + 1, parity).dim();
    let coeffs = kernel_of_columns(target_dim, mode, &images);
    let z = row_space(
        space.dim(),
        mode,
        coeffs.basis().iter().map(|c| {
            c.iter().fold(SparseVec::new(), |acc, (i, x)| {
                acc.add_scaled(x, &sub.basis()[i])
            })
        }),
    );
    let b = if k == 0 {
        Subspace::zero(space.dim(), mode)
    } else {
        let (prev, _, _) = d.images(k - 1, parity);
        row_space(space.dim(), mode, prev)
    };
    let q = quotient_data(&z, &b).map_err(|_| {
        Error::Precondition("coboundaries are not all cocycles; the complex fails here".into())
    })?;
    let representatives = q
        .representatives
        .iter()
        .map(|v| space.to_cochain(v))
        .collect();
    Ok(CohomologyData {
        k,
        r,
        parity,
        space,
        z,
        b,
        representatives,
    })
}

/// Whether every cochain in the coordinate subspace is cohomologous to zero,
/// reporting the coboundary preimage of `f` when it exists.
pub fn coboundary_preimage(
    f: &Cochain,
    alg: &SuperAlgebra,
    rep: &Representation,
    r: u32,
    convention: SignConvention,
) -> Result<Option<Cochain>> {
    let k = f.degree;
    if k == 0 {
        return Ok(f.is_zero().then(|| f.clone()));
    }
    let d = Coboundary::new(alg, rep, r, convention)?;
    let (images, sub, space) = d.images(k - 1, f.parity);
    let target = CochainSpace::for_module(alg, rep, k, f.parity);
    let m = Matrix::from_columns(alg.mode(), target.dim(), &images);
    Ok(solve(&m, &target.to_vector(f)).map(|c| {
        let v = c.iter().fold(SparseVec::new(), |acc, (i, x)| {
            acc.add_scaled(x, &sub.basis()[i])
        });
        space.to_cochain(&v)
    }))
}

/// The algebra `G + V` with bracket `([x, y], f(x, y))`, `V` central and twist
/// `alpha + beta`, for an even 2-cochain `f` with values in a module with zero action.
pub fn abelian_extension(
    alg: &SuperAlgebra,
    module: &Representation,
    f: &Cochain,
) -> Result<SuperAlgebra> {
    if !module.is_zero_action() {
        return Err(Error::Precondition(
            "the coefficient module must have zero action".into(),
        ));
    }
    if f.degree != 2 || f.parity != Parity::Even {
        return Err(Error::Input("an even 2-cochain is required".into()));
    }
    if f.domain != alg.basis().parities() || f.codomain != module.space().parities() {
        return Err(Error::Dimension(
            "cochain does not match the algebra and module".into(),
        ));
    }
    if !f.compatibility_defect(alg, module.beta()).is_zero() {
        return Err(Error::Precondition(
            "the cochain does not satisfy beta . f = f . alpha".into(),
        ));
    }
    let g = alg.basis();
    let v = module.space();
    let (n, m) = (g.dim(), v.dim());
    let mut entries: Vec<(String, Parity)> = (0..n)
        .map(|i| (g.label(i).to_string(), g.parity(i)))
        .collect();
    for u in 0..m {
        let l = v.label(u);
        let l = if g.index_of(l).is_some() {
            format!("V:{l}")
        } else {
            l.to_string()
        };
        entries.push((l, v.parity(u)));
    }
    let (basis, pos) = SuperBasis::sorted(entries)?;
    let d = n + m;
    let mut table = vec![SparseVec::new(); d * d];
    for i in 0..n {
        for j in 0..n {
            let val = alg.bracket_basis(i, j).reindex(|k| pos[k]);
            let central = f.value_at(&[i, j]).reindex(|u| pos[n + u]);
            table[pos[i] * d + pos[j]] = val.add_scaled(&Scalar::one(alg.mode()), &central);
        }
    }
    let mut alpha = Matrix::zeros(alg.mode(), d, d);
    for i in 0..n {
        for j in 0..n {
            alpha.set(pos[i], pos[j], alg.alpha().get(i, j).clone());
        }
    }
    for u in 0..m {
        for w in 0..m {
            alpha.set(pos[n + u], pos[n + w], module.beta().get(u, w).clone());
        }
    }
    SuperAlgebra::new(alg.field().clone(), basis, table, alpha)
}

/// One-dimensional central extension by a scalar 2-cochain, with new element `c`.
pub fn central_extension(alg: &SuperAlgebra, theta: &Cochain) -> Result<SuperAlgebra> {
    let module = Representation::trivial_scalar(alg);
    let label = ["c", "z", "c'"]
        .into_iter()
        .find(|l| alg.basis().index_of(l).is_none())
        .unwrap_or("c''");
    let module = Representation::trivial(
        alg,
        SuperBasis::new(vec![(label.to_string(), Parity::Even)])?,
        module.beta().clone(),
    )?;
    abelian_extension(alg, &module, theta)
}

/// An extension `0 -> V -> E -> G -> 0` with a chosen linear section.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    pub base: SuperAlgebra,
    pub extended: SuperAlgebra,
    /// Coefficients of the extension: `V` with zero action and its twist.
    pub module: Representation,
    /// `dim E x dim V`.
    pub injection: Matrix,
    /// `dim G x dim E`.
    pub projection: Matrix,
    /// `dim E x dim G`, with `projection . section = id`.
    pub section: Matrix,
}

/// [`abelian_extension`] together with its canonical injection, projection and
/// section `x -> (x, 0)`.
pub fn abelian_extension_data(
    alg: &SuperAlgebra,
    module: &Representation,
    f: &Cochain,
) -> Result<ExtensionData> {
    let extended = abelian_extension(alg, module, f)?;
    let (n, m, d) = (alg.dim(), module.dim(), extended.dim());
    let mode = alg.mode();
    let eb = extended.basis();
    let gpos: Vec<usize> = (0..n)
        .map(|i| eb.index_of(alg.basis().label(i)).expect("base label kept"))
        .collect();
    let vpos: Vec<usize> = (0..m)
        .map(|u| {
            let l = module.space().label(u);
            if alg.basis().index_of(l).is_some() {
                eb.index_of(&format!("V:{l}"))
                    .expect("prefixed module label")
            } else {
                eb.index_of(l).expect("module label kept")
            }
        })
        .collect();
    let mut injection = Matrix::zeros(mode, d, m);
    for (u, &p) in vpos.iter().enumerate() {
        injection.set(p, u, Scalar::one(mode));
    }
    let mut projection = Matrix::zeros(mode, n, d);
    let mut section = Matrix::zeros(mode, d, n);
    for (i, &p) in gpos.iter().enumerate() {
        projection.set(i, p, Scalar::one(mode));
        section.set(p, i, Scalar::one(mode));
    }
    Ok(ExtensionData {
        base: alg.clone(),
        extended,
        module: module.clone(),
        injection,
        projection,
        section,
    })
}

/// [`central_extension`] with its canonical maps; the module is the trivial scalar one.
pub fn central_extension_data(alg: &SuperAlgebra, theta: &Cochain) -> Result<ExtensionData> {
    let module = Representation::trivial_scalar(alg);
    let label = ["c", "z", "c'"]
        .into_iter()
        .find(|l| alg.basis().index_of(l).is_none())
        .unwrap_or("c''");
    let module = Representation::trivial(
        alg,
        SuperBasis::new(vec![(label.to_string(), Parity::Even)])?,
        module.beta().clone(),
    )?;
    abelian_extension_data(alg, &module, theta)
}

/// The 2-cochain `F(x, y) = i^{-1}([s(x), s(y)] - s([x, y]))` of an extension.
#[derive(Clone, Debug)]
pub struct ExtensionCocycle {
    pub cocycle: Cochain,
    pub is_cocycle: bool,
}

pub fn extension_to_cocycle(e: &ExtensionData) -> Result<ExtensionCocycle> {
    let g = &e.base;
    let mode = g.mode();
    let (n, m) = (g.dim(), e.module.dim());
    if e.module.algebra() != g || !e.module.is_zero_action() {
        return Err(Error::Precondition(
            "the coefficient module must be a zero-action module over the base".into(),
        ));
    }
    if !e.projection.mul(&e.section)?.is_identity() {
        return Err(Error::Precondition(
            "projection . section is not the identity".into(),
        ));
    }
    if !e.projection.mul(&e.injection)?.is_zero() {
        return Err(Error::Precondition(
            "projection . injection is not zero".into(),
        ));
    }
    if e.injection.rank() != m {
        return Err(Error::Precondition("the injection is not injective".into()));
    }
    let sec: Vec<SparseVec> = (0..n).map(|j| e.section.column(j)).collect();
    let mut f = Cochain::zero_for(g, &e.module, 2, Parity::Even);
    for t in canonical_tuples(g.basis().parities(), 2) {
        let (x, y) = (t[0], t[1]);
        let w = e
            .extended
            .bracket(&sec[x], &sec[y])
            .sub(&e.section.apply(g.bracket_basis(x, y)), mode);
        let l = solve(&e.injection, &w).ok_or_else(|| {
            Error::Precondition("the bracket defect of the section leaves the kernel".into())
        })?;
        f.set(&t, l)?;
    }
    let d = Coboundary::new(g, &e.module, 1, SignConvention::Standard)?;
    let is_cocycle = d.apply(&f).is_zero();
    Ok(ExtensionCocycle {
        cocycle: f,
        is_cocycle,
    })
}

/// Result of comparing the extensions defined by two 2-cocycles.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub equivalent: bool,
    /// `h` with `f - g = delta h`.
    pub h: Option<Cochain>,
    /// `Phi(x, v) = (x, v + h(x))` from the extension by `f` to the one by `g`.
    pub phi: Option<Matrix>,
    pub phi_is_isomorphism: Option<bool>,
}

pub fn extensions_equivalent(
    alg: &SuperAlgebra,
    module: &Representation,
    f: &Cochain,
    g: &Cochain,
    convention: SignConvention,
) -> Result<Equivalence> {
    let diff = f.sub(g)?;
    let Some(h) = coboundary_preimage(&diff, alg, module, 1, convention)? else {
        return Ok(Equivalence {
            equivalent: false,
            h: None,
            phi: None,
            phi_is_isomorphism: None,
        });
    };
    let ef = abelian_extension(alg, module, f)?;
    let eg = abelian_extension(alg, module, g)?;
    let (n, m) = (alg.dim(), module.dim());
    let mode = alg.mode();
    // positions of G and V inside the extension bases
    let pos = |l: &str| ef.basis().index_of(l).expect("label present");
    let gpos: Vec<usize> = (0..n).map(|i| pos(alg.basis().label(i))).collect();
    let vpos: Vec<usize> = (0..m)
        .map(|u| {
            let l = module.space().label(u);
            ef.basis()
                .index_of(l)
                .unwrap_or_else(|| pos(&format!("V:{l}")))
        })
        .collect();
    let d = n + m;
    let mut phi = Matrix::identity(mode, d);
    for i in 0..n {
        for (u, c) in h.value_at(&[i]).iter() {
            phi.set(vpos[u], gpos[i], c.clone());
        }
    }
    let mut ok = phi.inverse()?.is_some();
    ok &= phi.mul(ef.alpha())? == eg.alpha().mul(&phi)?;
    let cols: Vec<SparseVec> = (0..d).map(|j| phi.column(j)).collect();
    for a in 0..d {
        for b in 0..d {
            ok &= phi.apply(ef.bracket_basis(a, b)) == eg.bracket(&cols[a], &cols[b]);
        }
    }
    Ok(Equivalence {
        equivalent: true,
        h: Some(h),
        phi: Some(phi),
        phi_is_isomorphism: Some(ok),
    })
}

/// First-order and integrability conditions for the deformation `[x, y] + t omega(x, y)`.
#[derive(Clone, Debug)]
pub struct DeformationReport {
    /// Cyclic sum of `(-1)^{|x||z|}(omega(alpha x, [y, z]) + [alpha x, omega(y, z)])`.
    pub first_order: CheckReport,
    /// Cyclic sum of `(-1)^{|x||z|} omega(alpha x, omega(y, z))`.
    pub integrability: CheckReport,
}

pub fn deformation_check(alg: &SuperAlgebra, omega: &Cochain) -> Result<DeformationReport> {
    let par = alg.basis().parities();
    if omega.degree != 2
        || omega.parity != Parity::Even
        || omega.domain != par
        || omega.codomain != par
    {
        return Err(Error::Input(
            "omega must be an even 2-cochain with values in the algebra".into(),
        ));
    }
    if !omega.compatibility_defect(alg, alg.alpha()).is_zero() {
        return Err(Error::Precondition(
            "omega does not commute with alpha".into(),
        ));
    }
    let n = alg.dim();
    let mode = alg.mode();
    let labels = alg.basis().labels().to_vec();
    let alpha_img = alg.alpha_power_images(1);
    let mut first_order = CheckReport::new(&["deformation-first-order"]);
    let mut integrability = CheckReport::new(&["deformation-integrability"]);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let mut d1 = SparseVec::new();
                let mut d2 = SparseVec::new();
                for (a, b, c) in [(x, y, z), (y, z, x), (z, x, y)] {
                    let s = sign(mode, Parity::both_odd(par[a], par[c]));
                    let t1 = omega.eval(&[alpha_img[a].clone(), alg.bracket_basis(b, c).clone()]);
                    let t2 = alg.bracket(&alpha_img[a], &omega.value_at(&[b, c]));
                    let t3 = omega.eval(&[alpha_img[a].clone(), omega.value_at(&[b, c])]);
                    d1 = d1.add_scaled(&s, &t1).add_scaled(&s, &t2);
                    d2 = d2.add_scaled(&s, &t3);
                }
                let w: Vec<String> = [x, y, z].iter().map(|&i| labels[i].clone()).collect();
                first_order.record("deformation-first-order", w.clone(), &d1, &labels);
                integrability.record("deformation-integrability", w, &d2, &labels);
            }
        }
    }
    Ok(DeformationReport {
        first_order,
        integrability,
    })
}
