//! Reference implementations written directly from definitions, used to
//! cross-check the library.

#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;

/// One synchronous update of an elementary rule on a ring: bit `4a+2b+c`
/// of the rule number, with `(a, b, c)` the left, own and right cells.
pub fn elementary_step(cells: &[u8], number: u32) -> Vec<u8> {
    let l = cells.len();
    (0..l)
        .map(|i| {
            let a = cells[(i + l - 1) % l] as u32;
            let b = cells[i] as u32;
            let c = cells[(i + 1) % l] as u32;
            ((number >> (4 * a + 2 * b + c)) & 1) as u8
        })
        .collect()
}

/// Conway's rule on a torus, counting the eight surrounding cells.
pub fn life_step(cells: &[u8], rows: usize, cols: usize) -> Vec<u8> {
    let mut out = vec![0; rows * cols];
    for r in 0..rows {
        for c in 0..cols {
            let mut n = 0;
            for dr in [rows - 1, 0, 1] {
                for dc in [cols - 1, 0, 1] {
                    if dr == 0 && dc == 0 {
                        continue;
                    }
                    n += cells[((r + dr) % rows) * cols + (c + dc) % cols];
                }
            }
            let alive = cells[r * cols + c] == 1;
            out[r * cols + c] = u8::from(n == 3 || (alive && n == 2));
        }
    }
    out
}

/// Binary cells from an index, cell 0 most significant.
pub fn bits_of(index: usize, l: usize) -> Vec<u8> {
    (0..l).map(|i| ((index >> (l - 1 - i)) & 1) as u8).collect()
}

pub fn index_of_bits(bits: &[u8]) -> usize {
    bits.iter().fold(0, |acc, &b| acc * 2 + b as usize)
}

pub fn xor(a: &[u8], b: &[u8]) -> Vec<u8> {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

/// Left rotation of a ring: cell `i` takes the value of cell `i + 1`.
pub fn rotate_left(cells: &[u8]) -> Vec<u8> {
    let mut v = cells.to_vec();
    v.rotate_left(1);
    v
}

pub fn rotate_right(cells: &[u8]) -> Vec<u8> {
    let mut v = cells.to_vec();
    v.rotate_right(1);
    v
}

/// Determinant by cofactor expansion along the first row.
pub fn det(m: &[Vec<Complex64>]) -> Complex64 {
    let n = m.len();
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..n {
        let minor: Vec<Vec<Complex64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += m[0][j] * det(&minor) * sign;
    }
    acc
}

/// Coefficient of the ascending wedge of `modes` in `ψ₁ ∧ … ∧ ψ_n`:
/// `det[ψ_a(modes_b)]`.
pub fn wedge_coefficient(psis: &[Vec<Complex64>], modes: &[usize]) -> Complex64 {
    let m: Vec<Vec<Complex64>> = psis.iter().map(|p| modes.iter().map(|&k| p[k]).collect()).collect();
    det(&m)
}

pub fn binomial(n: u128, k: u128) -> u128 {
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![1u128; row.len() + 1];
        for i in 1..row.len() {
            next[i] = row[i - 1] + row[i];
        }
        row = next;
    }
    row.get(k as usize).copied().unwrap_or(0)
}

pub fn kron_all(factors: &[DMatrix<Complex64>]) -> DMatrix<Complex64> {
    factors
        .iter()
        .skip(1)
        .fold(factors[0].clone(), |acc, f| acc.kronecker(f))
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
