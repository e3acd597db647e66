//! Dense linear algebra over `GF(p^m)`: matrices, Krylov minimal
//! polynomials, and null spaces.

use super::gf::{FieldElement, FieldSpec};
use super::poly::Poly;
use crate::error::{Error, Result};

pub type Vector = Vec<FieldElement>;

/// Row-major square or rectangular matrix; acts on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, f: &FieldSpec) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, f: &FieldSpec) -> Self {
        let mut m = Matrix::zero(n, n, f);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vector>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Invalid("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Columns given as the images of the standard basis vectors.
    pub fn from_columns(cols: Vec<Vector>, f: &FieldSpec) -> Result<Self> {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        let mut m = Matrix::zero(r, c, f);
        for (j, col) in cols.into_iter().enumerate() {
            if col.len() != r {
                return Err(Error::Invalid("ragged matrix columns".into()));
            }
            for (i, x) in col.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn apply(&self, v: &[FieldElement], f: &FieldSpec) -> Vector {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix, f: &FieldSpec) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Invalid("matrix shapes do not compose".into()));
        }
        let mut out = Matrix::zero(self.rows, other.cols, f);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), &f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Minimal polynomial: lcm of the Krylov minimal polynomials of the
    /// standard basis vectors.
    pub fn min_poly(&self, f: &FieldSpec) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(Error::Invalid("minimal polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut acc = Poly::one(f);
        for i in 0..n {
            let mut e = vec![f.zero(); n];
            e[i] = f.one();
            let mp = krylov_min_poly(|v| self.apply(v, f), &e, f)?;
            acc = poly_lcm(&acc, &mp, f)?;
        }
        Ok(acc)
    }

    /// Basis of `{v : self·v = 0}`.
    pub fn nullspace(&self, f: &FieldSpec) -> Result<Vec<Vector>> {
        let mut rows: Vec<Vector> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let pivots = rref(&mut rows, self.cols, f)?;
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&rows[r][free]);
            }
            basis.push(v);
        }
        Ok(basis)
    }

    pub fn rank(&self, f: &FieldSpec) -> Result<usize> {
        let mut rows: Vec<Vector> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        Ok(rref(&mut rows, self.cols, f)?.len())
    }
}

/// Reduced row echelon form in place; returns pivot columns (row `r` has its
/// pivot at `pivots[r]`; rows past the pivots are zero).
pub fn rref(rows: &mut [Vector], cols: usize, f: &FieldSpec) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let inv = f.inv(&rows[r][c])?;
        for x in rows[r].iter_mut() {
            *x = f.mul(x, &inv);
        }
        for k in 0..rows.len() {
            if k != r && !rows[k][c].is_zero() {
                let factor = rows[k][c].clone();
                for j in 0..cols {
                    let v = f.sub(&rows[k][j], &f.mul(&factor, &rows[r][j]));
                    rows[k][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    Ok(pivots)
}

pub fn poly_lcm(a: &Poly, b: &Poly, f: &FieldSpec) -> Result<Poly> {
    let g = a.gcd(b, f)?;
    a.mul(b, f).divrem(&g, f)?.0.monic(f)
}

/// Minimal polynomial of `v` under the linear operator `apply`: the monic
/// `μ` of least degree with `μ(A)·v = 0`, found when `A^k v` first falls in
/// the span of `v, …, A^{k−1} v`.
pub fn krylov_min_poly<A>(apply: A, v: &[FieldElement], f: &FieldSpec) -> Result<Poly>
where
    A: Fn(&[FieldElement]) -> Vector,
{
    let n = v.len();
    // echelon rows: (pivot, reduced vector, combination of Krylov vectors)
    let mut basis: Vec<(usize, Vector, Vector)> = Vec::new();
    let mut w = v.to_vec();
    for k in 0..=n {
        let mut vec = w.clone();
        let mut comb = vec![f.zero(); k + 1];
        comb[k] = f.one();
        for (pivot, row, rc) in &basis {
            let c = vec[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                vec[j] = f.sub(&vec[j], &f.mul(&c, &row[j]));
            }
            for (j, x) in rc.iter().enumerate() {
                comb[j] = f.sub(&comb[j], &f.mul(&c, x));
            }
        }
        match vec.iter().position(|x| !x.is_zero()) {
            None => return Poly::new(comb).monic(f),
            Some(pivot) => {
                let inv = f.inv(&vec[pivot])?;
                let vec: Vector = vec.iter().map(|x| f.mul(x, &inv)).collect();
                let comb: Vector = comb.iter().map(|x| f.mul(x, &inv)).collect();
                basis.push((pivot, vec, comb));
            }
        }
        w = apply(&w);
    }
    Err(Error::Invalid("Krylov sequence failed to close".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(f: &FieldSpec, rows: &[&[i64]]) -> Matrix {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&c| f.from_int(c)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn min_poly_small_cases() {
        let f = FieldSpec::prime(3).unwrap();
        assert_eq!(Matrix::zero(3, 3, &f).min_poly(&f).unwrap(), Poly::x(&f));
        assert_eq!(
            Matrix::identity(3, &f).min_poly(&f).unwrap(),
            Poly::from_ints(&f, &[-1, 1])
        );
        let jordan = ints(&f, &[&[0, 1], &[0, 0]]);
        assert_eq!(jordan.min_poly(&f).unwrap(), Poly::from_ints(&f, &[0, 0, 1]));
    }

    #[test]
    fn min_poly_annihilates_and_divides_charpoly_degree() {
        let f = FieldSpec::prime(5).unwrap();
        let a = ints(&f, &[&[1, 2, 0], &[0, 1, 0], &[0, 0, 3]]);
        let mp = a.min_poly(&f).unwrap();
        // (t-1)^2 (t-3)
        let expect = Poly::from_ints(&f, &[-1, 1])
            .pow(2, &f)
            .mul(&Poly::from_ints(&f, &[-3, 1]), &f);
        assert_eq!(mp, expect);
        // evaluate mp(A) = 0
        let mut acc = Matrix::zero(3, 3, &f);
        let mut power = Matrix::identity(3, &f);
        for c in mp.coeffs() {
            for i in 0..3 {
                for j in 0..3 {
                    let v = f.add(acc.get(i, j), &f.mul(c, power.get(i, j)));
                    acc.set(i, j, v);
                }
            }
            power = power.mul(&a, &f).unwrap();
        }
        assert_eq!(acc, Matrix::zero(3, 3, &f));
    }

    #[test]
    fn nullspace_and_rank() {
        let f = FieldSpec::prime(2).unwrap();
        let a = ints(&f, &[&[1, 1, 0], &[0, 1, 1]]);
        assert_eq!(a.rank(&f).unwrap(), 2);
        let ns = a.nullspace(&f).unwrap();
        assert_eq!(ns.len(), 1);
        assert!(a.apply(&ns[0], &f).iter().all(FieldElement::is_zero));
        assert_eq!(ns[0], vec![f.one(), f.one(), f.one()]);
    }
}
