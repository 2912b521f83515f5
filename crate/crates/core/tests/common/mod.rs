#![allow(dead_code)]

use holoforge_core::{Matrix, RingSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn z8() -> RingSpec {
    RingSpec::new(2, 3).unwrap()
}

pub fn field(p: u64) -> RingSpec {
    RingSpec::field(p).unwrap()
}

/// The order-24 automorphism `A` of `(Z/8Z)^4`.
pub fn matrix_a() -> Matrix {
    Matrix::from_rows(z8(), &[[3, -1, 1, -2], [0, 3, -3, 1], [0, 3, 4, 3], [2, 0, -2, 3]]).unwrap()
}

/// The re-based generator `B` with `Hol(U,A) ≅ Hol(U,B)`.
pub fn matrix_b() -> Matrix {
    Matrix::from_rows(z8(), &[[-1, -2, 2, 4], [0, 3, -3, 1], [0, 3, 4, 3], [1, 0, -2, 3]]).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_matrix(r: RingSpec, n: usize, rng: &mut impl Rng) -> Matrix {
    let data = (0..n * n).map(|_| rng.gen_range(0..r.modulus())).collect();
    Matrix::new(r, n, n, data).unwrap()
}

pub fn random_invertible(r: RingSpec, n: usize, rng: &mut impl Rng) -> Matrix {
    loop {
        let m = random_matrix(r, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// Every matrix of size `n` over `r`, in lexicographic order of entries.
pub fn all_matrices(r: RingSpec, n: usize) -> Vec<Matrix> {
    let q = r.modulus();
    let count = q.pow((n * n) as u32);
    (0..count)
        .map(|mut k| {
            let data = (0..n * n)
                .map(|_| {
                    let d = k % q;
                    k /= q;
                    d
                })
                .collect();
            Matrix::new(r, n, n, data).unwrap()
        })
        .collect()
}

pub fn general_linear(r: RingSpec, n: usize) -> Vec<Matrix> {
    all_matrices(r, n).into_iter().filter(|m| m.is_invertible()).collect()
}

/// Leibniz-formula determinant over the integers, reduced at the end.
pub fn leibniz_det(m: &Matrix) -> u64 {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total: i128 = 0;
    permute(&mut perm, 0, &mut |p| {
        let sign = if inversions(p) % 2 == 0 { 1 } else { -1 };
        let prod: i128 = (0..n).map(|i| m.get(i, p[i]) as i128).product();
        total += sign * prod;
    });
    total.rem_euclid(m.ring().modulus() as i128) as u64
}

fn inversions(p: &[usize]) -> usize {
    let mut c = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                c += 1;
            }
        }
    }
    c
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Similarity by exhaustive search for a conjugator in the given group.
pub fn brute_similar(a: &Matrix, b: &Matrix, gl: &[Matrix]) -> bool {
    gl.iter().any(|x| x.mul(a).unwrap() == b.mul(x).unwrap())
}
