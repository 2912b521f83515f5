//! Conjugacy of cyclic subgroups `⟨a⟩`, `⟨b⟩` of `GL_n`.
//!
//! Over `F_p` this is exact: `⟨a⟩ ~ ⟨b⟩` iff `a` is similar to `b^i` for some
//! `i` coprime to `o(b)`, and that in turn decides whether the holomorphs
//! `F_p^n ⋊ ⟨a⟩` and `F_p^n ⋊ ⟨b⟩` are isomorphic. Over `Z/p^mZ` the decision is
//! three-valued and every answer carries a checkable certificate.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::echelon;
use crate::error::{Error, Result};
use crate::matrix::{Matrix, DEFAULT_ORDER_CAP};
use crate::normal_forms::{is_similar, similarity_witness};
use crate::ring::gcd;
use crate::span::kernel;

/// Default number of candidate conjugators tried by the ring search.
pub const DEFAULT_BUDGET: u64 = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Verdict {
    Conjugate,
    NotConjugate,
    Unknown,
}

/// `X·a·X⁻¹ = b^exponent` with `gcd(exponent, o(b)) = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Witness {
    pub exponent: u64,
    pub conjugator: Matrix,
}

/// Why a particular exponent `i` cannot work.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ExponentObstruction {
    Determinant { det_power: u64 },
    Trace { k: u64, trace_a: u64, trace_power: u64 },
    /// The reductions mod `p` are not similar.
    Reduction,
    /// Every solution of `X·a = b^i·X` is singular (checked exhaustively mod `p`).
    NoInvertibleSolution { dimension: usize },
}

/// Certificate for a negative answer; each variant can be recomputed from `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SeparatingInvariant {
    OrdersDiffer { order_a: u64, order_b: u64 },
    NoCoprimePowerSimilar { order: u64 },
    /// `det(b^i)` never equals `det(a)` for coprime `i`.
    Determinant { det_a: u64, det_powers: Vec<u64> },
    PerExponent(Vec<(u64, ExponentObstruction)>),
}

impl core::fmt::Display for SeparatingInvariant {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SeparatingInvariant::OrdersDiffer { order_a, order_b } => {
                write!(f, "orders differ: o(a) = {order_a}, o(b) = {order_b}")
            }
            SeparatingInvariant::NoCoprimePowerSimilar { order } => {
                write!(f, "no power b^i with gcd(i, {order}) = 1 is similar to a")
            }
            SeparatingInvariant::Determinant { det_a, det_powers } => {
                write!(f, "determinant: det a = {det_a}, det(b^i) in {det_powers:?} for all coprime i")
            }
            SeparatingInvariant::PerExponent(list) => {
                write!(f, "every coprime exponent obstructed ({} exponents)", list.len())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ConjugacyDecision {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
    pub separating_invariant: Option<SeparatingInvariant>,
    pub budget_note: Option<String>,
}

impl ConjugacyDecision {
    fn conjugate(exponent: u64, conjugator: Matrix) -> Self {
        ConjugacyDecision {
            verdict: Verdict::Conjugate,
            witness: Some(Witness { exponent, conjugator }),
            separating_invariant: None,
            budget_note: None,
        }
    }

    fn not_conjugate(inv: SeparatingInvariant) -> Self {
        ConjugacyDecision { verdict: Verdict::NotConjugate, witness: None, separating_invariant: Some(inv), budget_note: None }
    }
}

fn check_pair(a: &Matrix, b: &Matrix) -> Result<()> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    if !a.is_square() || !b.is_square() {
        return Err(Error::NotSquare);
    }
    if a.rows() != b.rows() {
        return Err(Error::SizeMismatch);
    }
    if !a.is_invertible() || !b.is_invertible() {
        return Err(Error::NotInvertible);
    }
    Ok(())
}

/// Exponents `1 <= i < max(o, 2)` coprime to `o`, ascending.
pub fn coprime_exponents(o: u64) -> Vec<u64> {
    (1..o.max(2)).filter(|&i| gcd(i, o) == 1).collect()
}

/// Whether `X·a·X⁻¹ = b^i` holds with `X` invertible and `i` coprime to `o(b)`.
pub fn verify_witness(a: &Matrix, b: &Matrix, w: &Witness) -> Result<bool> {
    let ob = b.order(DEFAULT_ORDER_CAP)?;
    if gcd(w.exponent, ob) != 1 || !w.conjugator.is_invertible() {
        return Ok(false);
    }
    let bi = b.pow(w.exponent)?;
    Ok(w.conjugator.mul(a)? == bi.mul(&w.conjugator)?)
}

/// Exact decision over `F_p`; never `Unknown`. The smallest working exponent wins.
pub fn cyclic_conjugate_field(a: &Matrix, b: &Matrix) -> Result<ConjugacyDecision> {
    if !a.ring().is_field() || !b.ring().is_field() {
        return Err(Error::NotField);
    }
    check_pair(a, b)?;
    let oa = a.order(DEFAULT_ORDER_CAP)?;
    let ob = b.order(DEFAULT_ORDER_CAP)?;
    if oa != ob {
        return Ok(ConjugacyDecision::not_conjugate(SeparatingInvariant::OrdersDiffer { order_a: oa, order_b: ob }));
    }
    for i in coprime_exponents(ob) {
        let bi = b.pow(i)?;
        if is_similar(a, &bi)? {
            let x = similarity_witness(a, &bi)?;
            return Ok(ConjugacyDecision::conjugate(i, x));
        }
    }
    Ok(ConjugacyDecision::not_conjugate(SeparatingInvariant::NoCoprimePowerSimilar { order: ob }))
}

/// `F_p^n ⋊ ⟨a⟩ ≅ F_p^n ⋊ ⟨b⟩`, decided by conjugacy of `⟨a⟩` and `⟨b⟩`.
pub fn holomorph_isomorphic(a: &Matrix, b: &Matrix) -> Result<bool> {
    Ok(cyclic_conjugate_field(a, b)?.verdict == Verdict::Conjugate)
}

/// Options for [`cyclic_conjugate_ring`].
#[derive(Clone, Debug)]
pub struct RingSearch {
    /// Candidate conjugators tried across all exponents.
    pub budget: u64,
    pub seed: u64,
    /// Externally supplied witness, accepted after verification.
    pub witness: Option<Witness>,
}

impl Default for RingSearch {
    fn default() -> Self {
        RingSearch { budget: DEFAULT_BUDGET, seed: 0, witness: None }
    }
}

/// Sound three-valued decision over `Z/p^mZ` (also valid for `m = 1`).
///
/// Refutation runs through orders, determinants, trace sequences and
/// similarity of reductions. Confirmation solves the linear system
/// `X·a = b^i·X` exactly; a solution is invertible iff its reduction is, so the
/// reduced solution space is searched for a unit, exhaustively when it has at
/// most `budget` elements and by seeded sampling otherwise.
pub fn cyclic_conjugate_ring(a: &Matrix, b: &Matrix, opts: &RingSearch) -> Result<ConjugacyDecision> {
    check_pair(a, b)?;
    let ring = a.ring();
    let oa = a.order(DEFAULT_ORDER_CAP)?;
    let ob = b.order(DEFAULT_ORDER_CAP)?;

    if let Some(w) = &opts.witness {
        if verify_witness(a, b, w)? {
            return Ok(ConjugacyDecision::conjugate(w.exponent, w.conjugator.clone()));
        }
    }
    if oa != ob {
        return Ok(ConjugacyDecision::not_conjugate(SeparatingInvariant::OrdersDiffer { order_a: oa, order_b: ob }));
    }
    let exponents = coprime_exponents(ob);
    let det_a = a.det()?;
    let mut det_powers: Vec<u64> = Vec::new();
    for &i in &exponents {
        let d = ring.pow(b.det()?, i);
        if !det_powers.contains(&d) {
            det_powers.push(d);
        }
    }
    det_powers.sort_unstable();
    if !det_powers.contains(&det_a) {
        return Ok(ConjugacyDecision::not_conjugate(SeparatingInvariant::Determinant { det_a, det_powers }));
    }

    let a_bar = a.reduce_mod_p();
    let traces_a: Vec<u64> = (1..=oa).map(|k| a.pow(k).and_then(|m| m.trace())).collect::<Result<_>>()?;
    let mut obstructions = Vec::new();
    let mut open = Vec::new();
    for &i in &exponents {
        let bi = b.pow(i)?;
        let d = bi.det()?;
        if d != det_a {
            obstructions.push((i, ExponentObstruction::Determinant { det_power: d }));
            continue;
        }
        let mut trace_clash = None;
        let mut power = Matrix::identity(ring, a.rows());
        for k in 1..=oa {
            power = power.mul(&bi)?;
            let t = power.trace()?;
            if t != traces_a[(k - 1) as usize] {
                trace_clash = Some(ExponentObstruction::Trace { k, trace_a: traces_a[(k - 1) as usize], trace_power: t });
                break;
            }
        }
        if let Some(o) = trace_clash {
            obstructions.push((i, o));
            continue;
        }
        if !is_similar(&a_bar, &bi.reduce_mod_p())? {
            obstructions.push((i, ExponentObstruction::Reduction));
            continue;
        }
        open.push((i, bi));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut spent = 0u64;
    let mut unresolved = Vec::new();
    for (i, bi) in open {
        match search_conjugator(a, &bi, opts.budget.saturating_sub(spent), &mut rng, &mut spent)? {
            Search::Found(x) => return Ok(ConjugacyDecision::conjugate(i, x)),
            Search::Empty(dimension) => obstructions.push((i, ExponentObstruction::NoInvertibleSolution { dimension })),
            Search::Exhausted => unresolved.push(i),
        }
    }
    if unresolved.is_empty() {
        obstructions.sort_by_key(|(i, _)| *i);
        return Ok(ConjugacyDecision::not_conjugate(SeparatingInvariant::PerExponent(obstructions)));
    }
    Ok(ConjugacyDecision {
        verdict: Verdict::Unknown,
        witness: None,
        separating_invariant: None,
        budget_note: Some(format!(
            "budget of {} candidates exhausted; exponents {:?} neither refuted nor confirmed",
            opts.budget, unresolved
        )),
    })
}

enum Search {
    Found(Matrix),
    /// The reduced solution space of this dimension contains no unit.
    Empty(usize),
    Exhausted,
}

/// Linear map `X ↦ X·a - c·X` on `M_n(R)` in row-major coordinates.
fn intertwiner_system(a: &Matrix, c: &Matrix) -> Matrix {
    let ring = a.ring();
    let n = a.rows();
    let mut rows = vec![0u64; n * n * n * n];
    for i in 0..n {
        for j in 0..n {
            let eq = i * n + j;
            let row = &mut rows[eq * n * n..(eq + 1) * n * n];
            for k in 0..n {
                row[i * n + k] = ring.add(row[i * n + k], a.get(k, j));
                row[k * n + j] = ring.sub(row[k * n + j], c.get(i, k));
            }
        }
    }
    Matrix::new(ring, n * n, n * n, rows).expect("square system")
}

fn search_conjugator(a: &Matrix, c: &Matrix, budget: u64, rng: &mut ChaCha8Rng, spent: &mut u64) -> Result<Search> {
    let ring = a.ring();
    let field = ring.residue_field();
    let n = a.rows();
    let gens = kernel(&intertwiner_system(a, c));
    // pick generators whose reductions form a basis of the reduced solution space
    let mut chosen: Vec<Vec<u64>> = Vec::new();
    let mut reduced: Vec<Vec<u64>> = Vec::new();
    for g in gens {
        let r: Vec<u64> = g.iter().map(|&x| x % ring.p()).collect();
        let mut trial = reduced.clone();
        trial.push(r.clone());
        if echelon::independent_subset(field, &trial)?.len() == trial.len() {
            reduced.push(r);
            chosen.push(g);
        }
    }
    let d = chosen.len();
    if d == 0 {
        return Ok(Search::Empty(0));
    }
    let p = ring.p();
    let total = p.checked_pow(d as u32);
    let build = |coeffs: &[u64]| {
        let mut entries = vec![0u64; n * n];
        for (cf, g) in coeffs.iter().zip(&chosen) {
            if *cf == 0 {
                continue;
            }
            for (e, &x) in entries.iter_mut().zip(g) {
                *e = ring.add(*e, ring.mul(*cf, x));
            }
        }
        Matrix::new(ring, n, n, entries).expect("n×n")
    };
    let finish = |x: Matrix| -> Result<Search> {
        if x.mul(a)? != c.mul(&x)? {
            return Err(Error::Internal("intertwiner failed verification".into()));
        }
        Ok(Search::Found(x))
    };
    match total {
        Some(t) if t <= budget => {
            // exhaustive over F_p-coefficient vectors: complete for invertibility
            let mut coeffs = vec![0u64; d];
            for _ in 0..t {
                *spent += 1;
                let x = build(&coeffs);
                if x.is_invertible() {
                    return finish(x);
                }
                for slot in coeffs.iter_mut() {
                    *slot += 1;
                    if *slot < p {
                        break;
                    }
                    *slot = 0;
                }
            }
            Ok(Search::Empty(d))
        }
        _ => {
            for _ in 0..budget {
                *spent += 1;
                let coeffs: Vec<u64> = (0..d).map(|_| rng.gen_range(0..p)).collect();
                let x = build(&coeffs);
                if x.is_invertible() {
                    return finish(x);
                }
            }
            Ok(Search::Exhausted)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RingSpec;

    fn f2() -> RingSpec {
        RingSpec::field(2).unwrap()
    }

    #[test]
    fn transposed_jordan_blocks_are_conjugate() {
        let j = Matrix::jordan_block(f2(), 2, 1);
        let jt = j.transpose();
        let d = cyclic_conjugate_field(&j, &jt).unwrap();
        assert_eq!(d.verdict, Verdict::Conjugate);
        assert!(verify_witness(&j, &jt, d.witness.as_ref().unwrap()).unwrap());
        let i2 = Matrix::identity(f2(), 2);
        let d = cyclic_conjugate_field(&j, &i2).unwrap();
        assert_eq!(d.separating_invariant, Some(SeparatingInvariant::OrdersDiffer { order_a: 2, order_b: 1 }));
    }

    #[test]
    fn self_conjugacy_uses_exponent_one() {
        let r = RingSpec::new(2, 2).unwrap();
        let a = Matrix::from_rows(r, &[[1, 1], [0, 3]]).unwrap();
        let d = cyclic_conjugate_ring(&a, &a, &RingSearch::default()).unwrap();
        assert_eq!(d.verdict, Verdict::Conjugate);
        assert_eq!(d.witness.unwrap().exponent, 1);
    }

    #[test]
    fn size_mismatch_is_an_error() {
        let a = Matrix::identity(f2(), 2);
        let b = Matrix::identity(f2(), 3);
        assert_eq!(cyclic_conjugate_field(&a, &b), Err(Error::SizeMismatch));
    }

    #[test]
    fn coprime_exponent_lists() {
        assert_eq!(coprime_exponents(1), vec![1]);
        assert_eq!(coprime_exponents(6), vec![1, 5]);
        assert_eq!(coprime_exponents(24), vec![1, 5, 7, 11, 13, 17, 19, 23]);
    }
}
