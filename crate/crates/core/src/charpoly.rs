//! Exact characteristic polynomials `det(uI - A)` of integer matrices.
//!
//! Two independent engines: Berkowitz's division-free recurrence over big
//! integers, and Hessenberg reduction modulo a handful of 62-bit primes glued
//! together by Chinese remaindering. The first is simple and slow (quartic),
//! the second cubic per prime; [`char_poly`] picks by dimension.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::matrix::IntMatrix;
use crate::poly::IntPoly;

/// Largest dimension [`char_poly`] hands to the Berkowitz engine.
pub const BERKOWITZ_MAX_DIM: usize = 24;

pub fn char_poly(a: &IntMatrix) -> IntPoly {
    assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
    if a.rows() <= BERKOWITZ_MAX_DIM {
        char_poly_berkowitz(a)
    } else {
        char_poly_modular(a)
    }
}

pub fn char_poly_berkowitz(a: &IntMatrix) -> IntPoly {
    assert!(a.is_square());
    let n = a.rows();
    if n == 0 {
        return IntPoly::one();
    }
    let big = |i: usize, j: usize| BigInt::from(a[(i, j)]);
    // vec holds det(uI - S) for the trailing principal submatrix S, highest power first.
    let mut vec = vec![BigInt::one(), -big(n - 1, n - 1)];
    for k in (0..n - 1).rev() {
        let s = n - k;
        let rest: Vec<usize> = (k + 1..n).collect();
        let mut col: Vec<BigInt> = rest.iter().map(|&i| big(i, k)).collect();
        let mut diag = vec![BigInt::one(), -big(k, k)];
        for step in 0..s - 1 {
            let dot: BigInt = rest.iter().zip(&col).map(|(&j, c)| big(k, j) * c).sum();
            diag.push(-dot);
            if step + 1 < s - 1 {
                col = rest.iter().map(|&i| rest.iter().zip(&col).map(|(&j, c)| big(i, j) * c).sum()).collect();
            }
        }
        // Lower-triangular Toeplitz (s+1) x s times the previous vector.
        let next = (0..=s).map(|i| (0..s.min(i + 1)).map(|j| &diag[i - j] * &vec[j]).sum()).collect();
        vec = next;
    }
    vec.reverse();
    IntPoly::new(vec)
}

pub fn char_poly_modular(a: &IntMatrix) -> IntPoly {
    assert!(a.is_square());
    let n = a.rows();
    if n == 0 {
        return IntPoly::one();
    }
    // Every coefficient is a signed sum of principal minors, bounded in
    // absolute value by prod(1 + |row_i|_2) via Hadamard.
    let log_bound: f64 = (0..n)
        .map(|i| {
            let norm2: f64 = a.row(i).iter().map(|&x| (x as f64) * (x as f64)).sum();
            (1.0 + norm2.sqrt()).log2()
        })
        .sum();
    let needed_bits = log_bound.ceil() as u64 + 2;

    let mut modulus = BigInt::one();
    let mut residue: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    let mut bits = 0u64;
    for p in primes_below(1 << 62) {
        let cp = char_poly_mod_p(a, p);
        crt_step(&mut residue, &mut modulus, &cp, p);
        bits += 61;
        if bits >= needed_bits {
            break;
        }
    }
    let half = &modulus >> 1;
    let coeffs = residue.into_iter().map(|r| if r > half { r - &modulus } else { r }).collect();
    IntPoly::new(coeffs)
}

/// Merges residues mod `p` into residues mod `modulus`, in place.
fn crt_step(residue: &mut [BigInt], modulus: &mut BigInt, cp: &[u64], p: u64) {
    let bp = BigInt::from(p);
    let m_mod_p = u64::try_from(&(&*modulus % &bp)).unwrap();
    let inv = pow_mod(m_mod_p, p - 2, p);
    for (r, &c) in residue.iter_mut().zip(cp) {
        let r_mod_p = u64::try_from(&(&*r % &bp)).unwrap();
        let delta = mul_mod(sub_mod(c, r_mod_p, p), inv, p);
        *r += &*modulus * BigInt::from(delta);
    }
    *modulus *= bp;
}

/// Ascending coefficients of `det(uI - A) mod p`.
fn char_poly_mod_p(a: &IntMatrix, p: u64) -> Vec<u64> {
    let n = a.rows();
    let to_mod = |x: i64| (x as i128).rem_euclid(p as i128) as u64;
    let mut h: Vec<Vec<u64>> = (0..n).map(|i| a.row(i).iter().map(|&x| to_mod(x)).collect()).collect();

    // Similarity reduction to upper Hessenberg form.
    for m in 1..n.saturating_sub(1) {
        let Some(piv) = (m..n).find(|&i| h[i][m - 1] != 0) else {
            continue;
        };
        if piv != m {
            h.swap(piv, m);
            for row in h.iter_mut() {
                row.swap(piv, m);
            }
        }
        let inv = pow_mod(h[m][m - 1], p - 2, p);
        for i in m + 1..n {
            let u = mul_mod(h[i][m - 1], inv, p);
            if u == 0 {
                continue;
            }
            for j in 0..n {
                let t = mul_mod(u, h[m][j], p);
                h[i][j] = sub_mod(h[i][j], t, p);
            }
            for row in h.iter_mut() {
                let t = mul_mod(u, row[i], p);
                row[m] = add_mod(row[m], t, p);
            }
        }
    }

    // polys[k] = det(uI - H[..k, ..k]), ascending coefficients.
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 1..=n {
        let hk = k - 1;
        let prev = &polys[k - 1];
        let mut next = vec![0u64; k + 1];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = add_mod(next[d + 1], c, p);
            next[d] = sub_mod(next[d], mul_mod(h[hk][hk], c, p), p);
        }
        let mut t = 1u64;
        for i in (0..hk).rev() {
            t = mul_mod(t, h[i + 1][i], p);
            let coef = mul_mod(t, h[i][hk], p);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = sub_mod(next[d], mul_mod(coef, c, p), p);
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; these witnesses are exact for all 64-bit inputs.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'outer: for &w in &WITNESSES {
        let mut x = pow_mod(w, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Primes descending from just below `limit`.
fn primes_below(limit: u64) -> impl Iterator<Item = u64> {
    (1..limit).rev().step_by(2).filter(|&k| is_prime(k))
}
