#![allow(dead_code)]

use brieskorn_core::{BasisLabel, ExponentTuple, GradedAlgebraF2};
use rand::Rng;

pub fn tuple(v: &[i64]) -> ExponentTuple {
    ExponentTuple::new(v.to_vec()).unwrap()
}

/// (2, 2, 2, 18, …, 18) with nine 18's.
pub fn flagship() -> ExponentTuple {
    let mut a = vec![2, 2, 2];
    a.extend([18; 9]);
    tuple(&a)
}

/// Robbin–Salamon index of `t ↦ e^{2πi y t}`, `t ∈ [0, 1]`, by summing crossing
/// forms: the crossing form of a complex rotation has signature `2·sign(y)`, each
/// interior crossing `t = k/y` counts fully and each endpoint crossing half.
/// `y = num/den` with `den > 0`.
pub fn crossing_index(num: i64, den: i64) -> i64 {
    assert!(den > 0);
    if num == 0 {
        return 0;
    }
    let sign = num.signum();
    let m = num.abs();
    // interior crossings: integers k with 0 < k < m/den
    let mut interior = 0;
    let mut k = 1;
    while k * den < m {
        interior += 1;
        k += 1;
    }
    let end = if m % den == 0 { 1 } else { 0 };
    sign * (1 + 2 * interior + end)
}

/// Crossing-count evaluation of the Brieskorn index at `x = num/den`: the
/// diagonal flow on C^{n+1} minus the normal rotation.
pub fn cz_oracle(a: &[i64], num: i64, den: i64) -> i64 {
    let tangential: i64 = a.iter().map(|&ak| crossing_index(num, den * ak)).sum();
    tangential - crossing_index(num, den)
}

/// Bilinear-product brute force of |I(R)|: counts `x` with `x·x + x ∈ {0, 1}`.
pub fn idempotent_count_oracle(alg: &GradedAlgebraF2) -> u64 {
    let unit = alg.unit();
    (0u32..1 << alg.dim())
        .filter(|&x| {
            let v = alg.mul(x, x) ^ x;
            v == 0 || v == unit
        })
        .count() as u64
}

/// ℤ₂[x]/(f) for a monic `f` given by its coefficient bits (bit i = coefficient
/// of x^i, bit `deg` set). Basis 1, x, …, x^{deg−1}, all in degree 0.
pub fn quotient_algebra(f: u32) -> GradedAlgebraF2 {
    let deg = 31 - f.leading_zeros() as usize;
    assert!(deg >= 1);
    let reduce = |mut v: u64| -> u32 {
        for bit in (deg..64).rev() {
            if v >> bit & 1 == 1 {
                v ^= (f as u64) << (bit - deg);
            }
        }
        v as u32
    };
    let table = (0..deg)
        .map(|i| (0..deg).map(|j| reduce(1u64 << (i + j))).collect())
        .collect();
    let labels = (0..deg)
        .map(|i| BasisLabel::new(format!("x{i}"), 0))
        .collect();
    GradedAlgebraF2::new(labels, 1, table).unwrap()
}

/// ℤ₂[x]/(x^d) with x in degree `deg_x` and H1 class `class_x`.
pub fn truncated_polynomial(d: usize, deg_x: i64, class_x: i64) -> GradedAlgebraF2 {
    let table = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i + j < d { 1u32 << (i + j) } else { 0 })
                .collect()
        })
        .collect();
    let labels = (0..d)
        .map(|i| {
            BasisLabel::new(format!("x{i}"), deg_x * i as i64).with_h1(vec![class_x * i as i64])
        })
        .collect();
    GradedAlgebraF2::new(labels, 1, table).unwrap()
}

/// Degrees of the distinct irreducible factors of `f` over ℤ₂, by trial division.
pub fn irreducible_factor_degrees(mut f: u32) -> Vec<i32> {
    let deg = |g: u32| 31 - g.leading_zeros() as i32;
    let rem = |mut a: u32, b: u32| {
        while a != 0 && deg(a) >= deg(b) {
            a ^= b << (deg(a) - deg(b));
        }
        a
    };
    let div = |mut a: u32, b: u32| {
        let mut q = 0;
        while a != 0 && deg(a) >= deg(b) {
            let s = deg(a) - deg(b);
            q |= 1 << s;
            a ^= b << s;
        }
        q
    };
    let mut found = Vec::new();
    let mut g = 2u32; // x
    while deg(f) >= 1 {
        if deg(g) > deg(f) {
            break;
        }
        if rem(f, g) == 0 {
            found.push(deg(g));
            while rem(f, g) == 0 {
                f = div(f, g);
            }
        }
        g += 1;
    }
    found
}

/// A random validated commutative algebra of dimension ≤ `max_dim`: a product of
/// one or two polynomial quotients and truncated polynomial rings.
pub fn random_algebra<R: Rng>(rng: &mut R, max_dim: usize) -> GradedAlgebraF2 {
    let first_dim = rng.gen_range(1..=max_dim);
    let mut alg = random_factor(rng, first_dim);
    let room = max_dim - first_dim;
    if room > 0 && rng.gen_bool(0.5) {
        let second_dim = rng.gen_range(1..=room);
        let second = random_factor(rng, second_dim);
        alg = alg.product_ring(&second).unwrap();
    }
    alg
}

fn random_factor<R: Rng>(rng: &mut R, dim: usize) -> GradedAlgebraF2 {
    if rng.gen_bool(0.25) {
        truncated_polynomial(dim, 0, rng.gen_range(0..3))
    } else {
        let low: u32 = rng.gen_range(0..1u32 << dim);
        quotient_algebra(1 << dim | low)
    }
}
