//! Exact sparse linear algebra over the rationals.
//!
//! Rows are stored as primitive integer vectors and eliminated fraction-free:
//! `row ← p·row − a·pivot`, followed by division by the row content. Pivots
//! are the first non-zero column of each row, so the echelon form depends
//! only on the column order.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Rational;

type Row = Vec<(usize, BigInt)>;

/// Sparse matrix with exact rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, Rational)>>,
}

impl ExactMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        ExactMatrix {
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Self {
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), ncols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), ncols, "ragged matrix");
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Builds a matrix from columns given as sparse `(row, value)` lists.
    pub fn from_columns(nrows: usize, columns: &[Vec<(usize, Rational)>]) -> Self {
        let mut m = Self::zeros(nrows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        assert!(i < self.nrows && j < self.ncols);
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => {
                if v.is_zero() {
                    row.remove(pos);
                } else {
                    row[pos].1 = v;
                }
            }
            Err(pos) => {
                if !v.is_zero() {
                    row.insert(pos, (j, v));
                }
            }
        }
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        let row = &self.rows[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => row[pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.nrows)
            .map(|i| (0..self.ncols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.ncols);
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .fold(Rational::zero(), |acc, (j, a)| acc + a * &v[*j])
            })
            .collect()
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    fn integer_rows(&self) -> Vec<Row> {
        self.rows.iter().map(|r| primitive_row(r)).collect()
    }

    /// Row echelon form (not reduced). Returns pivot rows keyed by pivot column.
    fn echelon(&self) -> BTreeMap<usize, Row> {
        let mut pivots: BTreeMap<usize, Row> = BTreeMap::new();
        for mut row in self.integer_rows() {
            while let Some(&(lead, _)) = row.first() {
                match pivots.get(&lead) {
                    Some(piv) => row = eliminate(&row, piv, lead),
                    None => {
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.echelon().len()
    }

    /// Reduced row echelon form: pivot column ↦ primitive integer row whose
    /// entries vanish in every other pivot column.
    fn reduced(&self) -> BTreeMap<usize, Row> {
        let mut pivots = self.echelon();
        let cols: Vec<usize> = pivots.keys().copied().collect();
        for (idx, &c) in cols.iter().enumerate().rev() {
            let piv = pivots[&c].clone();
            for &other in &cols[..idx] {
                let row = pivots.get_mut(&other).expect("pivot");
                if row.iter().any(|(j, _)| *j == c) {
                    *row = eliminate(row, &piv, c);
                }
            }
        }
        pivots
    }

    /// Kernel basis normalized to integer vectors with content 1. There is
    /// one vector per non-pivot column `f`: its coordinates vanish at every
    /// other non-pivot column and are positive at `f`.
    pub fn kernel(&self) -> Vec<Vec<BigInt>> {
        let rref = self.reduced();
        let free: Vec<usize> = (0..self.ncols).filter(|j| !rref.contains_key(j)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.ncols];
                v[f] = Rational::one();
                for (&c, row) in &rref {
                    let d = &row[0].1;
                    if let Ok(pos) = row.binary_search_by_key(&f, |(j, _)| *j) {
                        v[c] = -Rational::new(row[pos].1.clone(), d.clone());
                    }
                }
                integral_primitive(&v)
            })
            .collect()
    }

    /// Solves `A x = b`. When the system is underdetermined, free variables
    /// are set to zero. Fails when `b` is not in the column space.
    pub fn solve(&self, b: &[Rational]) -> Result<Vec<Rational>> {
        assert_eq!(b.len(), self.nrows);
        let mut aug = self.clone();
        aug.ncols += 1;
        for (i, v) in b.iter().enumerate() {
            aug.set(i, self.ncols, v.clone());
        }
        let rref = aug.reduced();
        if rref.contains_key(&self.ncols) {
            return Err(Error::InconsistentSystem("right-hand side outside the column space".into()));
        }
        let mut x = vec![Rational::zero(); self.ncols];
        for (&c, row) in &rref {
            let d = &row[0].1;
            if let Some((_, v)) = row.last().filter(|(j, _)| *j == self.ncols) {
                x[c] = Rational::new(v.clone(), d.clone());
            }
        }
        Ok(x)
    }

    /// Rank modulo the prime `2^61 − 1`. A lower bound for the rational rank,
    /// and equal to it whenever it reaches `min(nrows, ncols)`.
    pub fn rank_mod_p(&self) -> usize {
        let mut pivots: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
        for r in &self.rows {
            let mut row: Vec<(usize, u64)> = r
                .iter()
                .map(|(j, v)| (*j, modp_rational(v)))
                .filter(|(_, v)| *v != 0)
                .collect();
            while let Some(&(lead, a)) = row.first() {
                match pivots.get(&lead) {
                    Some(piv) => {
                        // row ← row − (a / piv_lead) · piv; pivot rows are monic.
                        row = axpy_mod(&row, piv, MODP - a);
                    }
                    None => {
                        let inv = inv_mod(a);
                        let monic = row.iter().map(|(j, v)| (*j, mul_mod(*v, inv))).collect();
                        pivots.insert(lead, monic);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }

    /// Exact rank, using the modular rank as a certificate when it is full.
    pub fn rank_certified(&self) -> usize {
        let full = self.nrows.min(self.ncols);
        let r = self.rank_mod_p();
        if r == full {
            r
        } else {
            self.rank()
        }
    }
}

/// Clears denominators and divides by the gcd; the leading entry is positive.
fn primitive_row(r: &[(usize, Rational)]) -> Row {
    if r.is_empty() {
        return Vec::new();
    }
    let lcm = r
        .iter()
        .fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
    let mut row: Row = r
        .iter()
        .map(|(j, v)| (*j, v.numer() * (&lcm / v.denom())))
        .collect();
    normalize(&mut row);
    row
}

fn normalize(row: &mut Row) {
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    if g.is_zero() {
        row.clear();
        return;
    }
    let neg = row[0].1.is_negative();
    for (_, v) in row.iter_mut() {
        *v = &*v / &g;
        if neg {
            *v = -&*v;
        }
    }
}

/// Removes column `col` from `row` using `piv`, fraction-free.
fn eliminate(row: &Row, piv: &Row, col: usize) -> Row {
    let a = match row.binary_search_by_key(&col, |(j, _)| *j) {
        Ok(pos) => row[pos].1.clone(),
        Err(_) => return row.clone(),
    };
    let p = &piv[piv.binary_search_by_key(&col, |(j, _)| *j).expect("pivot column")].1;
    let g = a.gcd(p);
    let fr = p / &g;
    let fp = &a / &g;
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut k) = (0, 0);
    while i < row.len() || k < piv.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let ck = piv.get(k).map_or(usize::MAX, |e| e.0);
        let (j, v) = if ci < ck {
            i += 1;
            (ci, &row[i - 1].1 * &fr)
        } else if ck < ci {
            k += 1;
            (ck, -(&piv[k - 1].1 * &fp))
        } else {
            i += 1;
            k += 1;
            (ci, &row[i - 1].1 * &fr - &piv[k - 1].1 * &fp)
        };
        if !v.is_zero() {
            out.push((j, v));
        }
    }
    normalize(&mut out);
    out
}

fn integral_primitive(v: &[Rational]) -> Vec<BigInt> {
    let sparse: Vec<(usize, Rational)> = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(j, x)| (j, x.clone()))
        .collect();
    let lcm = sparse
        .iter()
        .fold(BigInt::one(), |acc, (_, x)| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Whether `v` lies in the span of `vectors` (exact).
pub fn in_span(vectors: &[Vec<Rational>], v: &[Rational]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    if vectors.is_empty() {
        return false;
    }
    let base = ExactMatrix::from_dense(vectors).rank();
    let mut all = vectors.to_vec();
    all.push(v.to_vec());
    ExactMatrix::from_dense(&all).rank() == base
}

/// Whether two families span the same subspace (mutual containment).
pub fn same_span(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    a.iter().all(|v| in_span(b, v)) && b.iter().all(|v| in_span(a, v))
}

/// Dense square solve that reports the first column without a pivot.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> std::result::Result<Vec<Rational>, usize> {
    let rhs: Vec<Vec<Rational>> = b.iter().map(|v| vec![v.clone()]).collect();
    Ok(gauss_jordan(a, rhs)?.into_iter().map(|mut r| r.pop().expect("one column")).collect())
}

/// Exact inverse, or the first column without a pivot.
pub fn invert_square(a: &[Vec<Rational>]) -> std::result::Result<Vec<Vec<Rational>>, usize> {
    let n = a.len();
    let identity = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    gauss_jordan(a, identity)
}

/// Reduces `[a | rhs]` to `[I | a⁻¹ rhs]` and returns the right block.
fn gauss_jordan(a: &[Vec<Rational>], rhs: Vec<Vec<Rational>>) -> std::result::Result<Vec<Vec<Rational>>, usize> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(rhs)
        .map(|(r, extra)| {
            assert_eq!(r.len(), n, "matrix must be square");
            let mut row = r.clone();
            row.extend(extra);
            row
        })
        .collect();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Err(col);
        };
        m.swap(col, p);
        let inv = m[col][col].recip();
        for v in m[col].iter_mut().filter(|v| !v.is_zero()) {
            *v = &*v * &inv;
        }
        let pivot: Vec<(usize, Rational)> = m[col]
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(j, v)| (j, v.clone()))
            .collect();
        for (i, row) in m.iter_mut().enumerate() {
            if i == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (j, p) in &pivot {
                row[*j] -= &f * p;
            }
        }
    }
    Ok(m.into_iter().map(|mut r| r.split_off(n)).collect())
}

/// Exact determinant by fraction-free Bareiss elimination.
pub fn determinant(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    if n == 0 {
        return Rational::one();
    }
    let mut m: Vec<Vec<Rational>> = a.to_vec();
    let mut sign = Rational::one();
    let mut prev = Rational::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    sign = -sign;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

const MODP: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % MODP as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a);
        }
        a = mul_mod(a, a);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, MODP - 2)
}

fn modp_bigint(v: &BigInt) -> u64 {
    let m = BigInt::from(MODP);
    v.mod_floor(&m).to_u64().expect("reduced")
}

fn modp_rational(v: &Rational) -> u64 {
    let d = modp_bigint(v.denom());
    assert!(d != 0, "denominator divisible by the modulus");
    mul_mod(modp_bigint(v.numer()), inv_mod(d))
}

/// `row + f·piv` modulo p, sparse merge.
fn axpy_mod(row: &[(usize, u64)], piv: &[(usize, u64)], f: u64) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(row.len() + piv.len());
    let (mut i, mut k) = (0, 0);
    while i < row.len() || k < piv.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let ck = piv.get(k).map_or(usize::MAX, |e| e.0);
        let (j, v) = if ci < ck {
            i += 1;
            (ci, row[i - 1].1)
        } else if ck < ci {
            k += 1;
            (ck, mul_mod(piv[k - 1].1, f))
        } else {
            i += 1;
            k += 1;
            (ci, (row[i - 1].1 + mul_mod(piv[k - 1].1, f)) % MODP)
        };
        if v != 0 {
            out.push((j, v));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_dense(
            &rows
                .iter()
                .map(|r| r.iter().map(|&v| int(v)).collect())
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn kernel_of_single_row() {
        // Δ on (x², xy, y², t): [2, 0, 2, 0].
        let a = m(&[&[2, 0, 2, 0]]);
        assert_eq!(a.rank(), 1);
        let k = a.kernel();
        let as_i64: Vec<Vec<i64>> = k
            .iter()
            .map(|v| v.iter().map(|x| x.to_i64().unwrap()).collect())
            .collect();
        assert_eq!(as_i64, vec![vec![0, 1, 0, 0], vec![-1, 0, 1, 0], vec![0, 0, 0, 1]]);
    }

    #[test]
    fn solve_and_determinant() {
        let a = m(&[&[-8, 16], &[-16, -8]]);
        assert_eq!(determinant(&a.to_dense()), int(320));
        let x = a.solve(&[int(8), int(16)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![int(8), int(16)]);
        let sq = solve_square(&a.to_dense(), &[int(8), int(16)]).unwrap();
        assert_eq!(sq, x);
        let singular = m(&[&[1, 2], &[2, 4]]);
        assert_eq!(solve_square(&singular.to_dense(), &[int(1), int(1)]), Err(1));
        assert!(singular.solve(&[int(1), int(1)]).is_err());
        assert_eq!(singular.solve(&[int(1), int(2)]).unwrap(), vec![int(1), int(0)]);
        let inv = invert_square(&a.to_dense()).unwrap();
        assert_eq!(inv, vec![vec![rat(-1, 40), rat(-1, 20)], vec![rat(1, 20), rat(-1, 40)]]);
        assert_eq!(invert_square(&singular.to_dense()), Err(1));
    }

    #[test]
    fn span_checks() {
        let a = vec![vec![int(1), int(1), int(0)], vec![int(0), int(1), int(1)]];
        let b = vec![vec![int(1), int(2), int(1)], vec![int(1), int(0), int(-1)]];
        assert!(same_span(&a, &b));
        assert!(!in_span(&a, &[int(0), int(0), int(1)]));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..4, c), r)
        })
    }

    proptest! {
        #[test]
        fn kernel_is_annihilated_and_complete(rows in small_matrix()) {
            let a = ExactMatrix::from_dense(&rows.iter().map(|r| r.iter().map(|&v| int(v)).collect()).collect::<Vec<_>>());
            let k = a.kernel();
            prop_assert_eq!(k.len() + a.rank(), a.ncols());
            for v in &k {
                let vr: Vec<Rational> = v.iter().map(|x| Rational::from_integer(x.clone())).collect();
                prop_assert!(a.mul_vec(&vr).iter().all(Zero::is_zero));
            }
            prop_assert_eq!(a.rank_mod_p(), a.rank());
        }

        #[test]
        fn determinant_matches_elimination(rows in prop::collection::vec(prop::collection::vec(-4i64..5, 4), 4)) {
            let dense: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&v| rat(v, 1)).collect()).collect();
            let det = determinant(&dense);
            let rank = ExactMatrix::from_dense(&dense).rank();
            prop_assert_eq!(det.is_zero(), rank < 4);
        }
    }
}
