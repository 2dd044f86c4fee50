//! `alpha^k`-derivations, inner derivations, and their commutators.
//!
//! Maps are stored as row-major flattened matrices: `D(e_i) = sum_u D[u][i] e_u`
//! sits at coordinate `u * dim + i`.

use crate::error::{Error, Result};
use crate::homlie::{SuperAlgebra, SuperBasis};
use crate::linalg::{
    flatten, kernel_of_columns, row_space, unflatten, Matrix, SparseVec, Subspace,
};
use crate::parity::{sign, Parity};
use crate::scalars::Scalar;

/// A homogeneous space of derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationSpace {
    pub k: i64,
    pub parity: Parity,
    pub dim_algebra: usize,
    pub space: Subspace,
}

impl DerivationSpace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis_maps(&self) -> Vec<Matrix> {
        let n = self.dim_algebra;
        self.space
            .basis()
            .iter()
            .map(|v| unflatten(v, n, n, self.space.mode()))
            .collect()
    }

    pub fn contains(&self, d: &Matrix) -> bool {
        self.space.contains(&flatten(d))
    }
}

/// Parity of a nonzero homogeneous map, `None` if the map mixes parities.
pub fn map_parity(basis: &SuperBasis, d: &Matrix) -> Option<Parity> {
    Parity::BOTH
        .into_iter()
        .find(|&p| basis.map_has_parity(basis, d, p))
}

/// Defect of the `alpha^k`-Leibniz rule
/// `D[x, y] - [D x, alpha^k y] - (-1)^{|x||D|} [alpha^k x, D y]` over all basis pairs,
/// indexed by `(x * dim + y) * dim + component`.
pub fn leibniz_defect(alg: &SuperAlgebra, d: &Matrix, k: i64, parity: Parity) -> SparseVec {
    let n = alg.dim();
    let mode = alg.mode();
    let ak = alg.alpha_power_images(k);
    let dcol: Vec<SparseVec> = (0..n).map(|j| d.column(j)).collect();
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let lhs = d.apply(alg.bracket_basis(x, y));
            let t1 = alg.bracket(&dcol[x], &ak[y]);
            let t2 = alg.bracket(&ak[x], &dcol[y]);
            let s = sign(mode, Parity::both_odd(alg.parity(x), parity));
            let defect = lhs.sub(&t1, mode).add_scaled(&-&s, &t2);
            pairs.extend(defect.iter().map(|(c, v)| ((x * n + y) * n + c, v.clone())));
        }
    }
    SparseVec::from_pairs(pairs)
}

/// `alpha . D - D . alpha`, flattened.
pub fn alpha_commutator(alg: &SuperAlgebra, d: &Matrix) -> SparseVec {
    let a = alg.alpha();
    flatten(
        &a.mul(d)
            .expect("square")
            .sub(&d.mul(a).expect("square"))
            .expect("same shape"),
    )
}

/// Whether `d` is a homogeneous `alpha^k`-derivation of the given parity.
pub fn is_alpha_derivation(alg: &SuperAlgebra, d: &Matrix, k: i64, parity: Parity) -> bool {
    alg.basis().map_has_parity(alg.basis(), d, parity)
        && leibniz_defect(alg, d, k, parity).is_zero()
        && alpha_commutator(alg, d).is_zero()
}

/// `Der_{alpha^k}` in one parity, for `k >= -1` with `alpha^{-1} = 0`.
pub fn alphak_derivations(alg: &SuperAlgebra, k: i64, parity: Parity) -> Result<DerivationSpace> {
    if k < -1 {
        return Err(Error::Input(format!("k must be at least -1, got {k}")));
    }
    let n = alg.dim();
    let mode = alg.mode();
    let unknowns: Vec<usize> = (0..n)
        .flat_map(|u| (0..n).map(move |i| (u, i)))
        .filter(|&(u, i)| alg.parity(u) == alg.parity(i) + parity)
        .map(|(u, i)| u * n + i)
        .collect();
    let offset = n * n * n;
    let columns: Vec<SparseVec> = unknowns
        .iter()
        .map(|&c| {
            let d = unflatten(&SparseVec::unit(c, mode), n, n, mode);
            let l = leibniz_defect(alg, &d, k, parity);
            let a = alpha_commutator(alg, &d).reindex(|i| offset + i);
            l.add_scaled(&Scalar::one(mode), &a)
        })
        .collect();
    let coeffs = kernel_of_columns(offset + n * n, mode, &columns);
    let space = row_space(
        n * n,
        mode,
        coeffs.basis().iter().map(|v| v.reindex(|j| unknowns[j])),
    );
    Ok(DerivationSpace {
        k,
        parity,
        dim_algebra: n,
        space,
    })
}

/// `Inn_{alpha^k}` in one parity: the span of `[a, alpha^{k-1}(.)]` over
/// homogeneous `a` with `alpha(a) = a`. Requires multiplicativity.
pub fn inner_derivations(alg: &SuperAlgebra, k: i64, parity: Parity) -> Result<DerivationSpace> {
    if k < 0 {
        return Err(Error::Input(format!("k must be non-negative, got {k}")));
    }
    if let Some(v) = alg.check_multiplicative().first() {
        return Err(Error::Precondition(format!(
            "inner derivations need multiplicativity; {v}"
        )));
    }
    let n = alg.dim();
    let mode = alg.mode();
    let fixed = crate::linalg::kernel_basis(&alg.alpha().sub(&Matrix::identity(mode, n))?);
    let sector: Vec<usize> = (0..n).filter(|&i| alg.parity(i) == parity).collect();
    let fixed_sector = fixed.project(&sector);
    let ak = alg.alpha_power_images(k - 1);
    let mut generators = Vec::new();
    for v in fixed_sector.basis() {
        let a = v.reindex(|j| sector[j]);
        debug_assert!(fixed.contains(&a));
        let cols: Vec<SparseVec> = (0..n).map(|x| alg.bracket(&a, &ak[x])).collect();
        let d = Matrix::from_columns(mode, n, &cols);
        if !is_alpha_derivation(alg, &d, k, parity) {
            return Err(Error::Precondition(
                "an inner map failed the derivation check".into(),
            ));
        }
        generators.push(flatten(&d));
    }
    Ok(DerivationSpace {
        k,
        parity,
        dim_algebra: n,
        space: row_space(n * n, mode, generators),
    })
}

/// `[D, D'] = D D' - (-1)^{|D||D'|} D' D` for `D` in `Der_{alpha^k}` and `D'` in
/// `Der_{alpha^s}`, checked to lie in `Der_{alpha^{k+s}}`. Both exponents must be
/// non-negative, except that one may be `-1` when the other is `0`.
pub fn derivation_commutator(
    alg: &SuperAlgebra,
    d: &Matrix,
    k: i64,
    e: &Matrix,
    s: i64,
) -> Result<Matrix> {
    let valid = (k >= 0 && s >= 0) || (k == -1 && s == 0) || (k == 0 && s == -1);
    if !valid {
        return Err(Error::Input(format!(
            "unsupported exponent pair ({k}, {s})"
        )));
    }
    let basis = alg.basis();
    let pd =
        map_parity(basis, d).ok_or_else(|| Error::Input("first map is not homogeneous".into()))?;
    let pe =
        map_parity(basis, e).ok_or_else(|| Error::Input("second map is not homogeneous".into()))?;
    if !is_alpha_derivation(alg, d, k, pd) || !is_alpha_derivation(alg, e, s, pe) {
        return Err(Error::Precondition(
            "inputs are not derivations of the stated kinds".into(),
        ));
    }
    let mode = alg.mode();
    let de = d.mul(e)?;
    let ed = e.mul(d)?;
    let c = de.sub(&ed.scale(&sign(mode, Parity::both_odd(pd, pe))))?;
    if !is_alpha_derivation(alg, &c, k + s, pd + pe) {
        return Err(Error::Precondition(
            "the commutator is not a derivation of the expected kind".into(),
        ));
    }
    Ok(c)
}

/// `Z^1` with `ad_s` coefficients next to `Der_{alpha^{s+1}}`, as flattened maps.
#[derive(Clone, Debug)]
pub struct CocycleDerivationComparison {
    pub s: i64,
    pub parity: Parity,
    pub cocycles: Subspace,
    pub derivations: Subspace,
}

impl CocycleDerivationComparison {
    pub fn equal(&self) -> bool {
        self.cocycles == self.derivations
    }
}

/// Computes `Z^1(ad_s)` through the coboundary (with `r = 1`) and
/// `Der_{alpha^{s+1}}` through the Leibniz system. Requires multiplicativity.
pub fn z1_equals_der(
    alg: &SuperAlgebra,
    s: i64,
    parity: Parity,
    convention: crate::cohomology::SignConvention,
) -> Result<CocycleDerivationComparison> {
    let rep = crate::repr::Representation::adjoint(alg, s)?;
    let c = crate::cohomology::cohomology(alg, &rep, 1, 1, parity, convention)?;
    let n = alg.dim();
    let coords = c.space.coords().to_vec();
    let maps = c.z.basis().iter().map(|v| {
        SparseVec::from_pairs(
            v.iter()
                .map(|(j, x)| {
                    let (tuple, u) = &coords[j];
                    (u * n + tuple[0], x.clone())
                })
                .collect(),
        )
    });
    let cocycles = row_space(n * n, alg.mode(), maps);
    let derivations = alphak_derivations(alg, s + 1, parity)?.space;
    Ok(CocycleDerivationComparison {
        s,
        parity,
        cocycles,
        derivations,
    })
}
