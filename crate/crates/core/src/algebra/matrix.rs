use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use super::modp::{rational_reconstruct, CrtAccumulator, Fp, PrimeStream};
use super::zpoly::z_content;

/// Dense row-major matrix over Q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows*cols");
        QMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix::new(rows, cols, vec![Rational::zero(); rows * cols])
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            entries.extend(r);
        }
        QMatrix::new(n, cols, entries)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (j, vj) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !vj.is_zero() {
                        acc += a * vj;
                    }
                }
                acc
            })
            .collect()
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = &self.entries[i * self.cols..(i + 1) * self.cols];
                let mut l = BigInt::one();
                for c in row {
                    l = l.lcm(c.denom());
                }
                row.iter().map(|c| c.numer() * (&l / c.denom())).collect()
            })
            .filter(|r: &Vec<BigInt>| r.iter().any(|c| !c.is_zero()))
            .collect()
    }

    /// Fraction-free reduced echelon form: integer rows with content removed,
    /// each pivot column zero outside its pivot row. Returns the rows and the
    /// pivot column of each row.
    fn echelon(&self) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let mut rows = self.integer_rows();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..self.cols {
            if prow == rows.len() {
                break;
            }
            // deterministic pivot: smallest row index with a nonzero entry
            let Some(sel) = (prow..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(prow, sel);
            let pivot_row = rows[prow].clone();
            let pv = pivot_row[col].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == prow || row[col].is_zero() {
                    continue;
                }
                let g = pv.gcd(&row[col]);
                let a = &pv / &g;
                let b = &row[col] / &g;
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = &*x * &a - y * &b;
                }
                normalize_row(row);
            }
            normalize_row(&mut rows[prow]);
            pivots.push(col);
            prow += 1;
        }
        rows.truncate(prow);
        (rows, pivots)
    }

    pub fn rank(&self) -> usize {
        self.cols - self.nullspace().len()
    }

    /// Basis of the right kernel: one vector per non-pivot column of the
    /// reduced echelon form, with a 1 in that column. Computed modulo primes
    /// and accepted only once the reconstructed vectors annihilate the
    /// matrix exactly.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let rows = self.integer_rows();
        let n = self.cols;
        if rows.is_empty() {
            return QMatrix::identity(n).rows_as_vecs();
        }
        let mut best: Option<(Vec<usize>, CrtAccumulator)> = None;
        let mut used = 0usize;
        for p in PrimeStream::with_offset(11) {
            let (piv, ker) = kernel_mod(&rows, n, p);
            if piv.len() == n {
                // full rank mod p implies full rank over Q
                return Vec::new();
            }
            let replace = match &best {
                None => true,
                Some((bp, _)) => piv.len() > bp.len() || (piv.len() == bp.len() && piv < *bp),
            };
            if replace {
                let len = ker.len() * n;
                best = Some((piv.clone(), CrtAccumulator::new(len)));
                used = 0;
            } else if best.as_ref().is_some_and(|(bp, _)| *bp != piv) {
                continue;
            }
            let (_, acc) = best.as_mut().unwrap();
            let flat: Vec<u64> = ker.into_iter().flatten().collect();
            acc.push(p, &flat);
            used += 1;
            if !used.is_power_of_two() {
                continue;
            }
            if let Some(basis) = reconstruct(acc, n) {
                if basis.iter().all(|v| annihilates(&rows, v)) {
                    return basis;
                }
            }
        }
        unreachable!("prime stream is infinite")
    }

    fn rows_as_vecs(&self) -> Vec<Vec<Rational>> {
        self.entries.chunks(self.cols).map(|c| c.to_vec()).collect()
    }

    /// Pivot columns of the echelon form (the lexicographically first
    /// maximal independent set of columns).
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.echelon().1
    }
}

/// Reduced echelon form mod `p`: pivot columns and plain residues of the
/// kernel basis, one vector per free column.
fn kernel_mod(rows: &[Vec<BigInt>], cols: usize, p: u64) -> (Vec<usize>, Vec<Vec<u64>>) {
    let f = Fp::new(p);
    let mut m: Vec<Vec<u64>> = rows.iter().map(|r| r.iter().map(|x| f.from_bigint(x)).collect()).collect();
    let mut pivots = Vec::new();
    let mut prow = 0;
    for col in 0..cols {
        if prow == m.len() {
            break;
        }
        let Some(sel) = (prow..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(prow, sel);
        let inv = f.inv(m[prow][col]);
        for x in m[prow].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pr = m[prow].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == prow || row[col] == 0 {
                continue;
            }
            let c = row[col];
            for (x, y) in row.iter_mut().zip(&pr).skip(col) {
                *x = f.sub(*x, f.mul(c, *y));
            }
        }
        pivots.push(col);
        prow += 1;
    }
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut ker = Vec::new();
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = f.to_u64(f.neg(m[k][free]));
        }
        ker.push(v);
    }
    (pivots, ker)
}

fn reconstruct(acc: &CrtAccumulator, n: usize) -> Option<Vec<Vec<Rational>>> {
    let mut out = Vec::new();
    for chunk in acc.values.chunks(n) {
        let mut v = Vec::with_capacity(n);
        for u in chunk {
            let (a, b) = rational_reconstruct(u, &acc.modulus)?;
            v.push(Rational::new(a, b));
        }
        out.push(v);
    }
    Some(out)
}

fn annihilates(rows: &[Vec<BigInt>], v: &[Rational]) -> bool {
    let mut l = BigInt::one();
    for c in v {
        l = l.lcm(c.denom());
    }
    let w: Vec<BigInt> = v.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    rows.iter().all(|r| {
        let mut acc = BigInt::zero();
        for (a, b) in r.iter().zip(&w) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc.is_zero()
    })
}

fn normalize_row(row: &mut [BigInt]) {
    let g = z_content(&row.to_vec());
    if g.is_zero() || g.is_one() {
        return;
    }
    let g = g.abs();
    for x in row.iter_mut() {
        *x = &*x / &g;
    }
}
