//! Similarity over `F_p`: invariant factors, rational canonical form with a
//! verified change of basis, similarity witnesses, and unipotent partitions.

use alloc::vec;
use alloc::vec::Vec;

use crate::echelon::{self, nullspace, rank};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Polynomial;

/// Monic invariant factors `f_1 | f_2 | ... | f_k` of a square matrix over `F_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InvariantFactorList {
    factors: Vec<Polynomial>,
}

impl InvariantFactorList {
    pub fn factors(&self) -> &[Polynomial] {
        &self.factors
    }

    /// The last factor, which is the minimal polynomial.
    pub fn minimal_polynomial(&self) -> Option<&Polynomial> {
        self.factors.last()
    }

    pub fn product(&self) -> Option<Polynomial> {
        let first = self.factors.first()?;
        Some(self.factors.iter().skip(1).fold(first.clone(), |acc, f| acc.mul(f)))
    }

    /// Block-diagonal companion matrix, blocks in ascending order.
    pub fn companion_form(&self) -> Result<Matrix> {
        let blocks = self.factors.iter().map(Polynomial::companion).collect::<Result<Vec<_>>>()?;
        Matrix::direct_sum(&blocks)
    }
}

fn require_square_field(a: &Matrix) -> Result<()> {
    if !a.is_square() {
        return Err(Error::NotSquare);
    }
    if !a.ring().is_field() {
        return Err(Error::NotField);
    }
    Ok(())
}

/// Invariant factors by the kernel-dimension method: for every irreducible `q`
/// of degree `d` dividing the characteristic polynomial, `dim ker q(a)^j / d`
/// counts the elementary divisors `q^i` weighted by `min(i, j)`.
pub fn invariant_factors(a: &Matrix) -> Result<InvariantFactorList> {
    require_square_field(a)?;
    let n = a.rows();
    let ring = a.ring();
    let chi = a.charpoly()?;
    let mut exponents: Vec<(Polynomial, Vec<u32>)> = Vec::new();
    for (q, mult) in chi.factor()? {
        let d = q.degree().expect("nonconstant");
        let qa = q.eval_matrix(a)?;
        let mut power = qa.clone();
        // at_least[j] = number of elementary divisors q^i with i >= j
        let mut kernel_blocks = vec![0usize];
        for j in 1..=mult {
            if j > 1 {
                power = power.mul_unchecked(&qa);
            }
            let dim = n - rank(&power)?;
            kernel_blocks.push(dim / d);
        }
        if kernel_blocks[mult as usize] * d != mult as usize * d {
            return Err(Error::Internal("primary component has the wrong dimension".into()));
        }
        let mut at_least: Vec<usize> = (1..=mult as usize).map(|j| kernel_blocks[j] - kernel_blocks[j - 1]).collect();
        at_least.push(0);
        let mut exps = Vec::new();
        for j in (1..=mult as usize).rev() {
            for _ in 0..at_least[j - 1] - at_least[j] {
                exps.push(j as u32);
            }
        }
        exponents.push((q, exps));
    }
    let k = exponents.iter().map(|(_, e)| e.len()).max().unwrap_or(0);
    let mut factors = Vec::with_capacity(k);
    for t in 0..k {
        let mut f = Polynomial::one(ring);
        for (q, exps) in &exponents {
            if let Some(&e) = exps.get(t) {
                f = f.mul(&q.pow(e));
            }
        }
        factors.push(f);
    }
    factors.reverse();
    Ok(InvariantFactorList { factors })
}

/// A cyclic summand `F_p[a]·v` with annihilator `f`.
#[derive(Clone, Debug)]
pub struct CyclicBlock {
    pub annihilator: Polynomial,
    pub generator: Vec<u64>,
}

/// Decomposes `F_p^n` into cyclic `a`-submodules with annihilators forming the
/// invariant-factor chain, largest first.
///
/// Each step takes a vector whose local minimal polynomial is the minimal
/// polynomial of the current operator, and splits off its Krylov space with the
/// invariant complement `{w : φ(a^i w) = 0, i < k}` for a functional `φ` dual
/// to the last Krylov vector.
pub fn cyclic_decomposition(a: &Matrix) -> Result<Vec<CyclicBlock>> {
    require_square_field(a)?;
    let ring = a.ring();
    let n = a.rows();
    let mut blocks = Vec::new();
    // columns of `embed` span the current invariant subspace in ambient coordinates
    let mut embed = Matrix::identity(ring, n);
    let mut op = a.clone();
    loop {
        let r = op.rows();
        let m = op.minpoly()?;
        let k = m.degree().expect("nonzero");
        let v = maximal_vector(&op, &m)?;
        blocks.push(CyclicBlock { annihilator: m, generator: embed.mul_vec_unchecked(&v) });
        if k == r {
            break;
        }
        let mut krylov = Vec::with_capacity(k);
        let mut w = v;
        for _ in 0..k {
            let next = op.mul_vec_unchecked(&w);
            krylov.push(w);
            w = next;
        }
        // extend the Krylov basis to a basis of F_p^r with standard vectors
        let mut basis = krylov.clone();
        for j in 0..r {
            let mut e = vec![0u64; r];
            e[j] = 1;
            basis.push(e);
            if rank(&Matrix::from_columns(ring, r, &basis)?)? < basis.len() {
                basis.pop();
            }
            if basis.len() == r {
                break;
            }
        }
        let t_inv = Matrix::from_columns(ring, r, &basis)?.inverse()?;
        // φ = row k-1 of T^{-1}: φ(a^i v) = δ_{i,k-1}, zero on the extension
        let mut phi = Matrix::new(ring, 1, r, t_inv.row(k - 1).to_vec())?;
        let mut rows = Vec::with_capacity(k * r);
        for _ in 0..k {
            rows.extend_from_slice(phi.entries());
            phi = phi.mul_unchecked(&op);
        }
        let constraints = Matrix::new(ring, k, r, rows)?;
        let complement = nullspace(&constraints)?;
        if complement.len() != r - k {
            return Err(Error::Internal("invariant complement has the wrong dimension".into()));
        }
        op = restriction(&op, &complement)?;
        embed = embed.mul_unchecked(&Matrix::from_columns(ring, r, &complement)?);
    }
    Ok(blocks)
}

/// A vector whose `a`-annihilator is the minimal polynomial `m` of `a`.
fn maximal_vector(a: &Matrix, m: &Polynomial) -> Result<Vec<u64>> {
    let ring = a.ring();
    let n = a.rows();
    let mut v = vec![0u64; n];
    for (q, e) in m.factor()? {
        let qe = q.pow(e);
        let cofactor = m.div_exact(&qe)?;
        // (m/q)(a) != 0 because m is minimal; any column where it is nonzero works
        let probe = m.div_exact(&q)?.eval_matrix(a)?;
        let col = (0..n)
            .find(|&c| (0..n).any(|r| probe.get(r, c) != 0))
            .ok_or_else(|| Error::Internal("minimal polynomial is not minimal".into()))?;
        let part = cofactor.eval_matrix(a)?.column(col);
        for (x, y) in v.iter_mut().zip(part) {
            *x = ring.add(*x, y);
        }
    }
    Ok(v)
}

/// Rational canonical form `C` of `a` together with an invertible `X` such
/// that `X·a·X⁻¹ = C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalForm {
    pub invariant_factors: InvariantFactorList,
    pub form: Matrix,
    pub transform: Matrix,
}

pub fn rcf(a: &Matrix) -> Result<RationalForm> {
    let invariant_factors = invariant_factors(a)?;
    let form = invariant_factors.companion_form()?;
    let blocks = cyclic_decomposition(a)?;
    let ring = a.ring();
    let n = a.rows();
    let mut columns = Vec::with_capacity(n);
    for block in blocks.iter().rev() {
        let d = block.annihilator.degree().expect("nonzero");
        let mut w = block.generator.clone();
        for _ in 0..d {
            let next = a.mul_vec_unchecked(&w);
            columns.push(w);
            w = next;
        }
    }
    let basis = Matrix::from_columns(ring, n, &columns)?;
    let transform = basis.inverse().map_err(|_| Error::Internal("cyclic bases are dependent".into()))?;
    if transform.mul_unchecked(a).mul_unchecked(&basis) != form {
        return Err(Error::Internal("rational form witness failed verification".into()));
    }
    Ok(RationalForm { invariant_factors, form, transform })
}

/// Same invariant factors. Matrices of different sizes are never similar.
pub fn is_similar(a: &Matrix, b: &Matrix) -> Result<bool> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    require_square_field(a)?;
    require_square_field(b)?;
    if a.rows() != b.rows() {
        return Ok(false);
    }
    Ok(invariant_factors(a)? == invariant_factors(b)?)
}

/// Invertible `X` with `X·a·X⁻¹ = b`, composed from the two canonical-form witnesses.
pub fn similarity_witness(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    require_square_field(a)?;
    require_square_field(b)?;
    if a.rows() != b.rows() {
        return Err(Error::NotSimilar);
    }
    let ra = rcf(a)?;
    let rb = rcf(b)?;
    if ra.form != rb.form {
        return Err(Error::NotSimilar);
    }
    let x = rb.transform.inverse()?.mul_unchecked(&ra.transform);
    if x.mul_unchecked(a) != b.mul_unchecked(&x) {
        return Err(Error::Internal("similarity witness failed verification".into()));
    }
    Ok(x)
}

/// `p ∤ o(a)`, decided through square-freeness of the minimal polynomial.
pub fn is_p_regular(a: &Matrix) -> Result<bool> {
    require_square_field(a)?;
    if !a.is_invertible() {
        return Err(Error::NotInvertible);
    }
    a.minpoly()?.is_squarefree()
}

/// Whether `a` is similar to `a^p`.
pub fn frobenius_power_similar(a: &Matrix) -> Result<bool> {
    require_square_field(a)?;
    if !a.is_invertible() {
        return Err(Error::NotInvertible);
    }
    is_similar(a, &a.pow(a.ring().p())?)
}

/// Matrix of `a` restricted to the invariant subspace with the given basis,
/// in that basis: the `k×k` matrix `M` with `a·B = B·M`.
pub fn restriction(a: &Matrix, basis: &[Vec<u64>]) -> Result<Matrix> {
    require_square_field(a)?;
    let ring = a.ring();
    let n = a.rows();
    if basis.is_empty() {
        return Err(Error::EmptyInput);
    }
    let b = Matrix::from_columns(ring, n, basis)?;
    if rank(&b)? != basis.len() {
        return Err(Error::NotIndependent);
    }
    let mut cols = Vec::with_capacity(basis.len());
    for v in basis {
        let image = a.mul_vec_unchecked(v);
        cols.push(echelon::solve(&b, &image)?.ok_or(Error::NotInvariant)?);
    }
    Matrix::from_columns(ring, basis.len(), &cols)
}

/// Basis of the image `f(a)·F_p^n`.
pub fn image_basis(m: &Matrix) -> Result<Vec<Vec<u64>>> {
    echelon::column_space(m)
}

/// Jordan-block multiplicities `(e_1, ..., e_m)` of a unipotent matrix:
/// `e_i` blocks of size `i`, `e_m > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct UnipotentPartition {
    multiplicities: Vec<usize>,
}

impl UnipotentPartition {
    pub fn new(multiplicities: Vec<usize>) -> Result<Self> {
        if multiplicities.last().map_or(true, |&e| e == 0) {
            return Err(Error::Internal("partition must end with a nonzero multiplicity".into()));
        }
        Ok(UnipotentPartition { multiplicities })
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Size of the largest block, i.e. the nilpotency index of `a - 1`.
    pub fn largest_block(&self) -> usize {
        self.multiplicities.len()
    }

    /// `sum i·e_i`
    pub fn dimension(&self) -> usize {
        self.multiplicities.iter().enumerate().map(|(i, &e)| (i + 1) * e).sum()
    }

    /// Direct sum of upper-triangular Jordan blocks with eigenvalue 1, small blocks first.
    pub fn jordan_matrix(&self, ring: crate::RingSpec) -> Result<Matrix> {
        let mut blocks = Vec::new();
        for (i, &e) in self.multiplicities.iter().enumerate() {
            for _ in 0..e {
                blocks.push(Matrix::jordan_block(ring, i + 1, 1));
            }
        }
        Matrix::direct_sum(&blocks)
    }
}

/// Recovers the Jordan partition from `d_i = dim (a-1)^i V` by back-substitution
/// in the triangular system `d_i = sum_{j>i} (j-i)·e_j`.
pub fn unipotent_partition(a: &Matrix) -> Result<UnipotentPartition> {
    require_square_field(a)?;
    let n = a.rows();
    let nil = a.minus_identity()?;
    if !nil.pow(n as u64)?.is_zero() {
        return Err(Error::NotUnipotent);
    }
    let mut dims = vec![n];
    let mut power = Matrix::identity(a.ring(), n);
    while *dims.last().unwrap() > 0 {
        power = power.mul_unchecked(&nil);
        dims.push(rank(&power)?);
    }
    let m = dims.len() - 1;
    let mut e = vec![0i64; m + 1]; // e[j] for j in 1..=m
    for i in (0..m).rev() {
        let known: i64 = (i + 2..=m).map(|j| (j - i) as i64 * e[j]).sum();
        e[i + 1] = dims[i] as i64 - known;
        if e[i + 1] < 0 {
            return Err(Error::Internal("negative Jordan multiplicity".into()));
        }
    }
    UnipotentPartition::new(e[1..].iter().map(|&x| x as usize).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RingSpec;

    fn f2() -> RingSpec {
        RingSpec::field(2).unwrap()
    }

    fn poly(r: RingSpec, c: &[i64]) -> Polynomial {
        Polynomial::from_i64(r, c).unwrap()
    }

    #[test]
    fn identity_has_repeated_linear_factors() {
        let r = f2();
        let inv = invariant_factors(&Matrix::identity(r, 3)).unwrap();
        assert_eq!(inv.factors(), &[poly(r, &[1, 1]), poly(r, &[1, 1]), poly(r, &[1, 1])]);
    }

    #[test]
    fn jordan_type_chain() {
        let r = f2();
        let a = Matrix::direct_sum(&[Matrix::jordan_block(r, 2, 1), Matrix::identity(r, 1)]).unwrap();
        let inv = invariant_factors(&a).unwrap();
        assert_eq!(inv.factors(), &[poly(r, &[1, 1]), poly(r, &[1, 0, 1])]);
    }

    #[test]
    fn companion_is_its_own_form() {
        let r = f2();
        let c = poly(r, &[1, 1, 1]).companion().unwrap();
        let f = rcf(&c).unwrap();
        assert_eq!(f.form, c);
        assert_eq!(f.transform.mul(&c).unwrap(), c.mul(&f.transform).unwrap());
    }

    #[test]
    fn jordan_not_similar_to_identity() {
        let r = f2();
        let j = Matrix::jordan_block(r, 2, 1);
        let id = Matrix::identity(r, 2);
        assert!(!is_similar(&j, &id).unwrap());
        assert_eq!(similarity_witness(&j, &id), Err(Error::NotSimilar));
        assert!(!frobenius_power_similar(&j).unwrap());
    }

    #[test]
    fn size_mismatch_is_not_similar() {
        let r = f2();
        assert!(!is_similar(&Matrix::identity(r, 2), &Matrix::identity(r, 3)).unwrap());
    }

    #[test]
    fn partitions_of_small_cases() {
        let r = f2();
        assert_eq!(unipotent_partition(&Matrix::identity(r, 4)).unwrap().multiplicities(), &[4]);
        let a = Matrix::direct_sum(&[Matrix::jordan_block(r, 3, 1), Matrix::identity(r, 1)]).unwrap();
        let part = unipotent_partition(&a).unwrap();
        assert_eq!(part.multiplicities(), &[1, 0, 1]);
        assert_eq!(part.dimension(), 4);
        let c = poly(r, &[1, 1, 1]).companion().unwrap();
        assert_eq!(unipotent_partition(&c), Err(Error::NotUnipotent));
    }

    #[test]
    fn restriction_examples() {
        let r = f2();
        let j3 = Matrix::jordan_block(r, 3, 1);
        let line = restriction(&j3, &[vec![1, 0, 0]]).unwrap();
        assert_eq!(line, Matrix::identity(r, 1));
        let full: Vec<Vec<u64>> = Matrix::identity(r, 3).columns();
        assert_eq!(restriction(&j3, &full).unwrap(), j3);
        assert_eq!(restriction(&j3, &[vec![0, 0, 1]]), Err(Error::NotInvariant));
        assert_eq!(restriction(&j3, &[vec![1, 0, 0], vec![1, 0, 0]]), Err(Error::NotIndependent));
    }
}
