//! Exact rational matrices, `GL_n(Q)`, and the subspace computations used
//! to analyse block conjugation in the stable general linear group.
//!
//! Matrices act on column vectors. `GL(Q)` is the directed union of the
//! `GL_n(Q)`: a matrix embeds into a larger size by padding with an
//! identity block ([`RationalMatrix::embed`]).

use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::checkers::{Witness, WitnessCertificate};
use crate::error::{mismatch, Error, Result};
use crate::group::{pow, FgSubgroup, Group};
use crate::rational::{format_q, parse_q, qi, Q};
use crate::report::{Failure, FailureKind, PropertyReport};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    n: usize,
    entries: Vec<Q>,
}

impl RationalMatrix {
    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = Q::one();
        }
        m
    }

    pub fn zero(n: usize) -> Self {
        RationalMatrix {
            n,
            entries: vec![Q::zero(); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Malformed("matrix rows must form a square".into()));
        }
        Ok(RationalMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        RationalMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
    }

    pub fn parse_rows(rows: &[Vec<String>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_q(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        RationalMatrix::from_rows(rows)
    }

    pub fn diag(values: &[Q]) -> Self {
        let n = values.len();
        let mut m = RationalMatrix::zero(n);
        for (i, v) in values.iter().enumerate() {
            m.entries[i * n + i] = v.clone();
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Q) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<Q>> {
        self.entries.chunks(self.n).map(<[Q]>::to_vec).collect()
    }

    pub fn mul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.n, other.n, "matrix size mismatch");
        let n = self.n;
        let mut out = RationalMatrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * n + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(v.len(), self.n);
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn determinant(&self) -> Q {
        let mut rows = self.rows();
        let n = self.n;
        let mut det = Q::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !rows[r][col].is_zero()) else {
                return Q::zero();
            };
            if piv != col {
                rows.swap(piv, col);
                det = -det;
            }
            let p = rows[col][col].clone();
            det *= &p;
            for r in col + 1..n {
                if rows[r][col].is_zero() {
                    continue;
                }
                let factor = &rows[r][col] / &p;
                for c in col..n {
                    let sub = &factor * &rows[col][c];
                    rows[r][c] -= sub;
                }
            }
        }
        det
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<RationalMatrix> {
        let n = self.n;
        let mut aug: Vec<Vec<Q>> = self
            .rows()
            .into_iter()
            .enumerate()
            .map(|(i, mut r)| {
                r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
                r
            })
            .collect();
        let pivots = rref(&mut aug, n);
        if pivots.len() < n {
            return Err(Error::Singular);
        }
        Ok(RationalMatrix {
            n,
            entries: aug.into_iter().flat_map(|r| r.into_iter().skip(n)).collect(),
        })
    }

    /// Pads with an identity block up to size `m`.
    pub fn embed(&self, m: usize) -> RationalMatrix {
        assert!(m >= self.n);
        let mut out = RationalMatrix::identity(m);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn direct_sum(&self, other: &RationalMatrix) -> RationalMatrix {
        let n = self.n + other.n;
        let mut out = RationalMatrix::zero(n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                out.set(self.n + i, self.n + j, other.get(i, j).clone());
            }
        }
        out
    }

    /// Rectangular sub-block `rows x cols`, returned as row vectors.
    pub fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Vec<Vec<Q>> {
        rows.map(|i| cols.clone().map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    /// Row-major vectorization, as used by [`centralizer_space`].
    pub fn to_vector(&self) -> Vec<Q> {
        self.entries.clone()
    }

    pub fn from_vector(n: usize, v: Vec<Q>) -> Result<Self> {
        if v.len() != n * n {
            return Err(Error::Malformed(format!("vector of length {} is not {n}x{n}", v.len())));
        }
        Ok(RationalMatrix { n, entries: v })
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, row) in self.entries.chunks(self.n.max(1)).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for RationalMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> = self
            .entries
            .chunks(self.n.max(1))
            .map(|r| r.iter().map(format_q).collect())
            .collect();
        rows.serialize(s)
    }
}

/// `GL_n(Q)`. Elements are assumed invertible; constructors that can
/// produce singular matrices check it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneralLinear {
    pub n: usize,
}

impl GeneralLinear {
    pub fn new(n: usize) -> Self {
        GeneralLinear { n }
    }

    /// Checks size and invertibility.
    pub fn element(&self, m: RationalMatrix) -> Result<RationalMatrix> {
        self.check(&m)?;
        if m.determinant().is_zero() {
            return Err(Error::Singular);
        }
        Ok(m)
    }
}

impl Group for GeneralLinear {
    type Elem = RationalMatrix;

    fn describe(&self) -> String {
        format!("GL_{}(Q)", self.n)
    }

    fn identity(&self) -> RationalMatrix {
        RationalMatrix::identity(self.n)
    }

    fn check(&self, a: &RationalMatrix) -> Result<()> {
        if a.n != self.n {
            return Err(mismatch(self.describe(), format!("{0}x{0} matrix", a.n)));
        }
        Ok(())
    }

    fn op(&self, a: &RationalMatrix, b: &RationalMatrix) -> RationalMatrix {
        a.mul(b)
    }

    fn inverse(&self, a: &RationalMatrix) -> RationalMatrix {
        a.inverse().expect("GL elements are invertible")
    }
}

/// Reduces `rows` in place to reduced row-echelon form, considering only
/// the first `ncols` columns for pivots. Returns the pivot columns.
pub fn rref(rows: &mut [Vec<Q>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Q::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{x : A x = 0}` for `A` given by rows of length `ncols`.
pub fn nullspace(rows: &[Vec<Q>], ncols: usize) -> Vec<Vec<Q>> {
    let mut a = rows.to_vec();
    let pivots = rref(&mut a, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Q::zero(); ncols];
            v[f] = Q::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// A linear subspace of `Q^n`, held by its reduced row-echelon basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalSubspace {
    ambient: usize,
    basis: Vec<Vec<Q>>,
}

impl RationalSubspace {
    pub fn span(ambient: usize, vectors: &[Vec<Q>]) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient) {
            return Err(mismatch(format!("Q^{ambient}"), format!("vector of length {}", v.len())));
        }
        let mut rows = vectors.to_vec();
        let rank = rref(&mut rows, ambient).len();
        rows.truncate(rank);
        Ok(RationalSubspace {
            ambient,
            basis: rows,
        })
    }

    pub fn zero(ambient: usize) -> Self {
        RationalSubspace {
            ambient,
            basis: Vec::new(),
        }
    }

    /// Span of the standard basis vectors `e_i` for the given 1-based indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > ambient) {
            return Err(Error::Precondition(format!(
                "coordinate index {bad} outside 1..={ambient}"
            )));
        }
        let vectors: Vec<Vec<Q>> = indices.iter().map(|&i| unit(ambient, i - 1)).collect();
        RationalSubspace::span(ambient, &vectors)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref(&mut rows, self.ambient).len() == self.dim()
    }

    pub fn sum(&self, other: &RationalSubspace) -> Result<RationalSubspace> {
        self.same_ambient(other)?;
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        RationalSubspace::span(self.ambient, &all)
    }

    /// Image under a matrix of the same ambient size.
    pub fn image(&self, m: &RationalMatrix) -> Result<RationalSubspace> {
        if m.size() != self.ambient {
            return Err(mismatch(format!("Q^{}", self.ambient), format!("{0}x{0} matrix", m.size())));
        }
        let vs: Vec<Vec<Q>> = self.basis.iter().map(|v| m.apply(v)).collect();
        RationalSubspace::span(self.ambient, &vs)
    }

    fn same_ambient(&self, other: &RationalSubspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(mismatch(format!("Q^{}", self.ambient), format!("Q^{}", other.ambient)));
        }
        Ok(())
    }
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

/// `U ∩ V`, from the nullspace of the system `Σ a_i u_i - Σ b_j v_j = 0`.
pub fn subspace_intersection(u: &RationalSubspace, v: &RationalSubspace) -> Result<RationalSubspace> {
    u.same_ambient(v)?;
    let n = u.ambient;
    let (a, b) = (u.dim(), v.dim());
    let rows: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            u.basis
                .iter()
                .map(|x| x[i].clone())
                .chain(v.basis.iter().map(|y| -y[i].clone()))
                .collect()
        })
        .collect();
    let kernel = nullspace(&rows, a + b);
    let vectors: Vec<Vec<Q>> = kernel
        .iter()
        .map(|coeffs| {
            (0..n)
                .map(|i| (0..a).map(|k| &coeffs[k] * &u.basis[k][i]).sum())
                .collect()
        })
        .collect();
    RationalSubspace::span(n, &vectors)
}

/// `(X ⊕ I) g (X^-1 ⊕ I)` computed blockwise: with `g = [[A, B], [C, D]]`
/// the result is `[[X A X^-1, X B], [C X^-1, D]]`.
pub fn block_conjugate(x: &RationalMatrix, g: &RationalMatrix) -> Result<RationalMatrix> {
    if x.size() != 2 {
        return Err(Error::Precondition(format!("X must be 2x2, got {0}x{0}", x.size())));
    }
    let n = g.size();
    if n < 2 {
        return Err(Error::Precondition("g must have size at least 2".into()));
    }
    let xi = x.inverse()?;
    let mut out = g.clone();
    for i in 0..2 {
        for j in 0..n {
            match j {
                // X A X^-1
                0 | 1 => {
                    let v: Q = (0..2)
                        .flat_map(|k| (0..2).map(move |l| (k, l)))
                        .map(|(k, l)| x.get(i, k) * g.get(k, l) * xi.get(l, j))
                        .sum();
                    out.set(i, j, v);
                }
                // X B
                _ => {
                    let v: Q = (0..2).map(|k| x.get(i, k) * g.get(k, j)).sum();
                    out.set(i, j, v);
                }
            }
        }
    }
    // C X^-1
    for i in 2..n {
        for j in 0..2 {
            let v: Q = (0..2).map(|k| g.get(i, k) * xi.get(k, j)).sum();
            out.set(i, j, v);
        }
    }
    Ok(out)
}

/// The linear space `{M : M g = g M for all g}` inside `M_n(Q)`, as a
/// subspace of `Q^(n^2)` under row-major vectorization.
pub fn centralizer_space(gens: &[RationalMatrix]) -> Result<RationalSubspace> {
    let Some(first) = gens.first() else {
        return Err(Error::Precondition("centralizer of an empty list".into()));
    };
    let n = first.size();
    if let Some(g) = gens.iter().find(|g| g.size() != n) {
        return Err(mismatch(format!("{n}x{n} matrices"), format!("{0}x{0}", g.size())));
    }
    let vars = n * n;
    let mut rows = Vec::with_capacity(gens.len() * vars);
    for g in gens {
        for i in 0..n {
            for j in 0..n {
                // (M g - g M)_{ij}
                let mut row = vec![Q::zero(); vars];
                for k in 0..n {
                    row[i * n + k] += g.get(k, j);
                    row[k * n + j] -= g.get(i, k);
                }
                rows.push(row);
            }
        }
    }
    RationalSubspace::span(vars, &nullspace(&rows, vars))
}

/// The fixed generator list standing in for `GL_2(Z)`: the three test
/// matrices `diag(-1, 1)`, `diag(1, -1)`, the lower unitriangular matrix,
/// and the coordinate swap.
pub fn gl2z_generators() -> Vec<RationalMatrix> {
    vec![
        RationalMatrix::from_ints(&[&[-1, 0], &[0, 1]]).unwrap(),
        RationalMatrix::from_ints(&[&[1, 0], &[0, -1]]).unwrap(),
        RationalMatrix::from_ints(&[&[1, 0], &[1, 1]]).unwrap(),
        RationalMatrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap(),
    ]
}

/// The first three of [`gl2z_generators`].
pub fn centralizer_test_matrices() -> Vec<RationalMatrix> {
    gl2z_generators().into_iter().take(3).collect()
}

/// Outcome of [`scalar_action_check`]: one scalar per generator, `None`
/// where the generator acts non-scalarly.
#[derive(Debug, Clone)]
pub struct ScalarAction {
    pub report: PropertyReport<RationalMatrix>,
    pub scalars: Vec<Option<Q>>,
}

/// Checks that every generator of `h` acts on the invariant subspace `v`
/// by a scalar. Errors if `v` is not invariant.
pub fn scalar_action_check(
    h: &FgSubgroup<RationalMatrix>,
    v: &RationalSubspace,
) -> Result<ScalarAction> {
    let group = GeneralLinear::new(v.ambient());
    h.check_in(&group)?;
    let mut report = PropertyReport::new("scalar-action", h.label.clone());
    let mut scalars = Vec::new();
    for g in h.generators() {
        let images: Vec<Vec<Q>> = v.basis().iter().map(|b| g.apply(b)).collect();
        if let Some(bad) = images.iter().position(|w| !v.contains(w)) {
            return Err(Error::Precondition(format!(
                "subspace not invariant under {g}: basis vector {bad} leaves it"
            )));
        }
        let scalar = common_scalar(v.basis(), &images);
        match &scalar {
            Some(l) => report.record(format!("{g} acts as {l}")),
            None => {
                if report.failure.is_none() {
                    report.fail(Failure::new(
                        FailureKind::NotScalar,
                        format!("{g} acts non-scalarly"),
                    ));
                }
                report.record(format!("{g} acts non-scalarly"));
            }
        }
        scalars.push(scalar);
    }
    if v.dim() == 0 {
        report.note("zero subspace: every generator acts as any scalar");
    }
    Ok(ScalarAction { report, scalars })
}

fn common_scalar(basis: &[Vec<Q>], images: &[Vec<Q>]) -> Option<Q> {
    let mut lambda: Option<Q> = None;
    for (b, w) in basis.iter().zip(images) {
        // b is nonzero (a basis vector)
        let k = b.iter().position(|x| !x.is_zero())?;
        let l = &w[k] / &b[k];
        if b.iter().zip(w).any(|(x, y)| &(x * &l) != y) {
            return None;
        }
        match &lambda {
            Some(prev) if *prev != l => return None,
            _ => lambda = Some(l),
        }
    }
    Some(lambda.unwrap_or_else(Q::one))
}

/// Result of [`gl_block_swap_witness`].
#[derive(Debug, Clone)]
pub struct BlockSwapWitness {
    pub group: GeneralLinear,
    pub certificate: WitnessCertificate<RationalMatrix>,
    pub report: PropertyReport<RationalMatrix>,
}

/// For `H <= GL_n`, the block swap `t = [[0, I], [I, 0]]` in `GL_2n` with
/// `H` embedded in the top-left block: `t^2 = 1` and `^t H` lives in the
/// bottom-right block, so it is a commuting `Z/2`-conjugates witness.
pub fn gl_block_swap_witness(h: &FgSubgroup<RationalMatrix>) -> Result<BlockSwapWitness> {
    let n = h.generators().first().map(RationalMatrix::size).unwrap_or(1);
    h.check_in(&GeneralLinear::new(n))?;
    let group = GeneralLinear::new(2 * n);
    let mut t = RationalMatrix::zero(2 * n);
    for i in 0..n {
        t.set(i, n + i, Q::one());
        t.set(n + i, i, Q::one());
    }
    let embedded = h.map(&group, h.label.clone(), |g| g.embed(2 * n))?;
    let certificate = WitnessCertificate::new(embedded, Witness::Cznc { t, n: 2 });
    let report = certificate.verify(&group)?;
    Ok(BlockSwapWitness {
        group,
        certificate,
        report,
    })
}

/// Per-power data behind the argument that no `t` in `GL(Q)` is a
/// commuting `Z`-conjugates witness for `GL_2(Z)` on `<e1, e2>`.
#[derive(Debug, Clone, Serialize)]
pub struct PowerProfile {
    pub power: u64,
    pub commutes: bool,
    pub intersection_dim: usize,
}

/// For each `1 <= p <= p_max`: whether `[H, ^(t^p) H] = 1` and
/// `dim(<e1, e2> ∩ t^p <e1, e2>)`.
pub fn gl_displacement_profile(
    h: &FgSubgroup<RationalMatrix>,
    t: &RationalMatrix,
    p_max: u64,
) -> Result<Vec<PowerProfile>> {
    let group = GeneralLinear::new(t.size());
    group.check(t)?;
    h.check_in(&group)?;
    let plane = RationalSubspace::coordinate(t.size(), &[1, 2])?;
    (1..=p_max)
        .map(|p| {
            let tp = pow(&group, t, p as i64);
            let conj_h = h.conjugate(&group, &tp)?;
            let commutes = crate::group::subgroups_commute(&group, h, &conj_h)?.is_success();
            let inter = subspace_intersection(&plane, &plane.image(&tp)?)?;
            Ok(PowerProfile {
                power: p,
                commutes,
                intersection_dim: inter.dim(),
            })
        })
        .collect()
}
