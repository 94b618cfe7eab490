//! Rectangular matrices of exact scalars, with the elimination routines that
//! stay sound over a noncommutative division ring.
//!
//! Convention: a matrix represents a linear map of right D-spaces acting on
//! column vectors from the left; scalars multiply vectors on the right. Row
//! operations therefore multiply on the left, and column operations on the
//! right. Row rank and column rank agree over a division ring; `rank` computes
//! both and asserts it.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{RingDescriptor, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    descriptor: RingDescriptor,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(
        descriptor: RingDescriptor,
        rows: usize,
        cols: usize,
        entries: Vec<Scalar>,
    ) -> Result<Matrix> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.descriptor() != descriptor) {
            return Err(Error::DescriptorMismatch);
        }
        Ok(Matrix {
            descriptor,
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(descriptor: RingDescriptor, rows: usize, cols: usize) -> Matrix {
        Matrix {
            descriptor,
            rows,
            cols,
            entries: vec![Scalar::zero(descriptor); rows * cols],
        }
    }

    pub fn identity(descriptor: RingDescriptor, n: usize) -> Matrix {
        let mut m = Matrix::zeros(descriptor, n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one(descriptor));
        }
        m
    }

    /// Convenience constructor from integer rows, mostly for tests.
    pub fn from_rows(descriptor: RingDescriptor, rows: &[&[i64]]) -> Matrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let entries = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c, "ragged rows");
                row.iter().map(|v| Scalar::from_integer(descriptor, *v))
            })
            .collect();
        Matrix::new(descriptor, r, c, entries).unwrap()
    }

    pub fn descriptor(&self) -> RingDescriptor {
        self.descriptor
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.descriptor(), self.descriptor);
        self.entries[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn check_same_shape(&self, other: &Matrix) -> Result<()> {
        if self.descriptor != other.descriptor {
            return Err(Error::DescriptorMismatch);
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_shape(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Matrix::new(self.descriptor, self.rows, self.cols, entries)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Matrix {
        let entries = self.entries.iter().map(Scalar::neg).collect();
        Matrix::new(self.descriptor, self.rows, self.cols, entries).unwrap()
    }

    /// Entrywise `c * a_ij`.
    pub fn scale_left(&self, c: &Scalar) -> Matrix {
        let entries = self.entries.iter().map(|a| c.mul(a)).collect();
        Matrix::new(self.descriptor, self.rows, self.cols, entries).unwrap()
    }

    /// Entrywise `a_ij * c`.
    pub fn scale_right(&self, c: &Scalar) -> Matrix {
        let entries = self.entries.iter().map(|a| a.mul(c)).collect();
        Matrix::new(self.descriptor, self.rows, self.cols, entries).unwrap()
    }

    /// Product with the noncommutative factor order preserved:
    /// entry `(i,j) = sum_t a[i][t] * b[t][j]`.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.descriptor != other.descriptor {
            return Err(Error::DescriptorMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.descriptor, self.rows, other.cols);
        for i in 0..self.rows {
            for t in 0..self.cols {
                let a = self.get(i, t);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(t, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Matrix {
        let mut out = Matrix::zeros(self.descriptor, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.descriptor != other.descriptor {
            return Err(Error::DescriptorMismatch);
        }
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("vstack column mismatch".into()));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Matrix::new(self.descriptor, self.rows + other.rows, self.cols, entries)
    }

    /// Places `self` to the left of `other`.
    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.descriptor != other.descriptor {
            return Err(Error::DescriptorMismatch);
        }
        if self.rows != other.rows {
            return Err(Error::ShapeMismatch("hstack row mismatch".into()));
        }
        let mut entries = Vec::with_capacity((self.cols + other.cols) * self.rows);
        for i in 0..self.rows {
            entries.extend(self.entries[i * self.cols..(i + 1) * self.cols].iter().cloned());
            entries.extend(
                other.entries[i * other.cols..(i + 1) * other.cols]
                    .iter()
                    .cloned(),
            );
        }
        Matrix::new(self.descriptor, self.rows, self.cols + other.cols, entries)
    }

    /// Row rank by left elimination, cross-checked against the column rank by
    /// right elimination; the two agree over a division ring.
    pub fn rank(&self) -> usize {
        let row_rank = echelon_rank(self.to_grid(), MulOrder::Normal);
        let col_rank = echelon_rank(self.transpose().to_grid(), MulOrder::Reversed);
        assert_eq!(row_rank, col_rank, "row rank != column rank");
        row_rank
    }

    /// Two-sided inverse via Gauss-Jordan with left row operations only.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.to_grid();
        let mut inv = Matrix::identity(self.descriptor, n).to_grid();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let pinv = a[col][col].inverse().expect("nonzero pivot");
            for j in 0..n {
                a[col][j] = pinv.mul(&a[col][j]);
                inv[col][j] = pinv.mul(&inv[col][j]);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    a[r][j] = a[r][j].sub(&f.mul(&a[col][j]));
                    inv[r][j] = inv[r][j].sub(&f.mul(&inv[col][j]));
                }
            }
        }
        Ok(Matrix::from_grid(self.descriptor, inv))
    }

    /// Basis of `{d : M d = 0}` with the coefficient column multiplying the
    /// entries on the right.
    pub fn right_null_space(&self) -> Vec<Vec<Scalar>> {
        null_space(self.to_grid(), self.descriptor, MulOrder::Normal)
    }

    /// Basis of `{d : d M = 0}` with row coefficients multiplying on the left.
    pub fn left_null_space(&self) -> Vec<Vec<Scalar>> {
        null_space(self.transpose().to_grid(), self.descriptor, MulOrder::Reversed)
    }

    fn to_grid(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows)
            .map(|i| self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
            .collect()
    }

    fn from_grid(descriptor: RingDescriptor, grid: Vec<Vec<Scalar>>) -> Matrix {
        let rows = grid.len();
        let cols = grid.first().map_or(0, Vec::len);
        Matrix::new(descriptor, rows, cols, grid.into_iter().flatten().collect()).unwrap()
    }
}

/// Whether scalar products in the elimination are taken as written or in the
/// opposite ring. Running the standard left-elimination on the transpose with
/// reversed products is exactly right-elimination on the original matrix.
#[derive(Clone, Copy)]
enum MulOrder {
    Normal,
    Reversed,
}

impl MulOrder {
    fn mul(self, a: &Scalar, b: &Scalar) -> Scalar {
        match self {
            MulOrder::Normal => a.mul(b),
            MulOrder::Reversed => b.mul(a),
        }
    }
}

fn echelon_rank(mut grid: Vec<Vec<Scalar>>, order: MulOrder) -> usize {
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !grid[r][col].is_zero()) else {
            continue;
        };
        grid.swap(rank, pivot);
        let pinv = grid[rank][col].inverse().expect("nonzero pivot");
        for j in col..cols {
            grid[rank][j] = order.mul(&pinv, &grid[rank][j]);
        }
        for r in rank + 1..rows {
            if grid[r][col].is_zero() {
                continue;
            }
            let f = grid[r][col].clone();
            for j in col..cols {
                let s = order.mul(&f, &grid[rank][j]);
                grid[r][j] = grid[r][j].sub(&s);
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced row echelon with left operations under the given order, then reads
/// the null space off the free columns: one basis vector per free column, the
/// free coordinate set to one.
fn null_space(mut grid: Vec<Vec<Scalar>>, d: RingDescriptor, order: MulOrder) -> Vec<Vec<Scalar>> {
    let rows = grid.len();
    let cols = grid.first().map_or(0, Vec::len);
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !grid[r][col].is_zero()) else {
            continue;
        };
        grid.swap(rank, pivot);
        let pinv = grid[rank][col].inverse().expect("nonzero pivot");
        for j in 0..cols {
            grid[rank][j] = order.mul(&pinv, &grid[rank][j]);
        }
        for r in 0..rows {
            if r == rank || grid[r][col].is_zero() {
                continue;
            }
            let f = grid[r][col].clone();
            for j in 0..cols {
                let s = order.mul(&f, &grid[rank][j]);
                grid[r][j] = grid[r][j].sub(&s);
            }
        }
        pivots.push((rank, col));
        rank += 1;
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![Scalar::zero(d); cols];
        v[free] = Scalar::one(d);
        for &(r, c) in &pivots {
            v[c] = grid[r][free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Searches for right coefficients `d_i`, not all zero, with
/// `sum_i M_i d_i = 0` entrywise. `None` means the family is independent.
pub fn right_dependency(family: &[Matrix]) -> Result<Option<Vec<Scalar>>> {
    let stacked = stack_flattened(family, true)?;
    Ok(stacked.right_null_space().into_iter().next())
}

/// Same with left coefficients: `sum_i d_i M_i = 0`.
pub fn left_dependency(family: &[Matrix]) -> Result<Option<Vec<Scalar>>> {
    let stacked = stack_flattened(family, false)?;
    Ok(stacked.left_null_space().into_iter().next())
}

/// Flattens each family member; as columns of the result when `as_columns`,
/// as rows otherwise.
fn stack_flattened(family: &[Matrix], as_columns: bool) -> Result<Matrix> {
    let first = family.first().ok_or(Error::EmptyFamily)?;
    for m in family {
        first.check_same_shape(m)?;
    }
    let d = first.descriptor();
    let len = first.rows() * first.cols();
    let t = family.len();
    let mut out = if as_columns {
        Matrix::zeros(d, len, t)
    } else {
        Matrix::zeros(d, t, len)
    };
    for (i, m) in family.iter().enumerate() {
        for (pos, e) in m.entries().iter().enumerate() {
            if as_columns {
                out.set(pos, i, e.clone());
            } else {
                out.set(i, pos, e.clone());
            }
        }
    }
    Ok(out)
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn f2() -> RingDescriptor {
        RingDescriptor::prime_field(2).unwrap()
    }

    fn quat_1x1(w: i64, x: i64, y: i64, z: i64) -> Matrix {
        Matrix::new(
            RingDescriptor::RationalQuaternions,
            1,
            1,
            vec![Scalar::quaternion_units(w, x, y, z)],
        )
        .unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let a = Matrix::from_rows(RingDescriptor::Rationals, &[&[1, 2], &[3, 4], &[5, 6]]);
        let i3 = Matrix::identity(RingDescriptor::Rationals, 3);
        let i2 = Matrix::identity(RingDescriptor::Rationals, 2);
        assert_eq!(i3.mul(&a).unwrap(), a);
        assert_eq!(a.mul(&i2).unwrap(), a);
    }

    #[test]
    fn quaternion_product_order_is_preserved() {
        let i = quat_1x1(0, 1, 0, 0);
        let j = quat_1x1(0, 0, 1, 0);
        let k = quat_1x1(0, 0, 0, 1);
        assert_eq!(i.mul(&j).unwrap(), k);
        assert_eq!(j.mul(&i).unwrap(), k.neg());
    }

    #[test]
    fn f2_product() {
        let a = Matrix::from_rows(f2(), &[&[1, 1], &[0, 1]]);
        assert_eq!(a.mul(&a).unwrap(), Matrix::identity(f2(), 2));
    }

    #[test]
    fn product_shape_and_descriptor_errors() {
        let a = Matrix::from_rows(RingDescriptor::Rationals, &[&[1, 2]]);
        let b = Matrix::from_rows(RingDescriptor::Rationals, &[&[1, 2]]);
        assert!(matches!(a.mul(&b), Err(Error::ShapeMismatch(_))));
        let c = Matrix::from_rows(f2(), &[&[1], &[0]]);
        assert!(matches!(a.mul(&c), Err(Error::DescriptorMismatch)));
    }

    #[test]
    fn inverse_examples() {
        let i2 = Matrix::identity(RingDescriptor::Rationals, 2);
        assert_eq!(i2.inverse().unwrap(), i2);

        let a = Matrix::from_rows(f2(), &[&[1, 1], &[0, 1]]);
        let ainv = a.inverse().unwrap();
        assert_eq!(ainv, a); // self-inverse mod 2
        assert_eq!(a.mul(&ainv).unwrap(), Matrix::identity(f2(), 2));

        let qi = quat_1x1(0, 1, 0, 0);
        assert_eq!(qi.inverse().unwrap(), quat_1x1(0, -1, 0, 0));
    }

    #[test]
    fn singular_matrix_has_no_inverse() {
        let a = Matrix::from_rows(RingDescriptor::Rationals, &[&[1, 2], &[2, 4]]);
        assert!(matches!(a.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::zeros(RingDescriptor::Rationals, 2, 3).rank(), 0);
        assert_eq!(
            Matrix::from_rows(RingDescriptor::Rationals, &[&[1, 0]]).rank(),
            1
        );
        // j * (1, i) = (j, -k), so [[1, i], [j, -k]] has rank 1 while
        // [[1, i], [j, k]] has rank 2.
        let d = RingDescriptor::RationalQuaternions;
        let mk = |z: i64| {
            Matrix::new(
                d,
                2,
                2,
                vec![
                    Scalar::quaternion_units(1, 0, 0, 0),
                    Scalar::quaternion_units(0, 1, 0, 0),
                    Scalar::quaternion_units(0, 0, 1, 0),
                    Scalar::quaternion_units(0, 0, 0, z),
                ],
            )
            .unwrap()
        };
        assert_eq!(mk(-1).rank(), 1);
        assert_eq!(mk(1).rank(), 2);
    }

    #[test]
    fn rank_matches_on_random_matrices() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for d in [
            RingDescriptor::Rationals,
            f2(),
            RingDescriptor::RationalQuaternions,
        ] {
            for _ in 0..200 {
                let rows = rng.gen_range(1..=4);
                let cols = rng.gen_range(1..=4);
                let entries = (0..rows * cols)
                    .map(|_| match d {
                        RingDescriptor::PrimeField(p) => {
                            Scalar::from_integer(d, rng.gen_range(0..p) as i64)
                        }
                        RingDescriptor::Rationals => Scalar::from_integer(d, rng.gen_range(-3..=3)),
                        RingDescriptor::RationalQuaternions => Scalar::quaternion_units(
                            rng.gen_range(-1..=1),
                            rng.gen_range(-1..=1),
                            rng.gen_range(-1..=1),
                            rng.gen_range(-1..=1),
                        ),
                    })
                    .collect();
                let m = Matrix::new(d, rows, cols, entries).unwrap();
                m.rank(); // asserts row rank == column rank internally
            }
        }
    }

    #[test]
    fn duplicate_entries_are_dependent() {
        let a = Matrix::from_rows(RingDescriptor::Rationals, &[&[1, 2], &[3, 4]]);
        let dep = right_dependency(&[a.clone(), a.clone()]).unwrap().unwrap();
        assert!(!dep.iter().all(Scalar::is_zero));
        // verify sum A_i d_i = 0
        let sum = a.scale_right(&dep[0]).add(&a.scale_right(&dep[1])).unwrap();
        assert!(sum.is_zero());
        let depl = left_dependency(&[a.clone(), a.clone()]).unwrap().unwrap();
        let sum = a.scale_left(&depl[0]).add(&a.scale_left(&depl[1])).unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn singleton_identity_is_independent() {
        let i2 = Matrix::identity(RingDescriptor::Rationals, 2);
        assert!(right_dependency(&[i2.clone()]).unwrap().is_none());
        assert!(left_dependency(&[i2]).unwrap().is_none());
    }

    #[test]
    fn singleton_zero_is_dependent() {
        let z = Matrix::zeros(RingDescriptor::Rationals, 2, 2);
        let dep = left_dependency(&[z]).unwrap().unwrap();
        assert_eq!(dep.len(), 1);
        assert!(!dep[0].is_zero());
    }

    #[test]
    fn empty_family_is_rejected() {
        assert!(matches!(right_dependency(&[]), Err(Error::EmptyFamily)));
        assert!(matches!(left_dependency(&[]), Err(Error::EmptyFamily)));
    }

    #[test]
    fn quaternion_one_dim_dependencies() {
        // [i] * j = [ij], witnessing a right dependency of {[i], [ij]}.
        let i = quat_1x1(0, 1, 0, 0);
        let ij = quat_1x1(0, 0, 0, 1); // i*j = k
        let dep = right_dependency(&[i.clone(), ij.clone()]).unwrap().unwrap();
        let sum = i
            .scale_right(&dep[0])
            .add(&ij.scale_right(&dep[1]))
            .unwrap();
        assert!(sum.is_zero());

        // j * [i] = [ji], witnessing a left dependency of {[i], [ji]}.
        let ji = quat_1x1(0, 0, 0, -1);
        let dep = left_dependency(&[i.clone(), ji.clone()]).unwrap().unwrap();
        let sum = i.scale_left(&dep[0]).add(&ji.scale_left(&dep[1])).unwrap();
        assert!(sum.is_zero());
    }

    #[test]
    fn left_and_right_dependencies_differ_only_over_quaternions() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
        for d in [RingDescriptor::Rationals, f2()] {
            for _ in 0..100 {
                let t = rng.gen_range(1..=3);
                let family: Vec<Matrix> = (0..t)
                    .map(|_| {
                        let entries = (0..4)
                            .map(|_| match d {
                                RingDescriptor::PrimeField(p) => {
                                    Scalar::from_integer(d, rng.gen_range(0..p) as i64)
                                }
                                _ => Scalar::from_integer(d, rng.gen_range(-3..=3)),
                            })
                            .collect();
                        Matrix::new(d, 2, 2, entries).unwrap()
                    })
                    .collect();
                let r = right_dependency(&family).unwrap();
                let l = left_dependency(&family).unwrap();
                assert_eq!(r.is_some(), l.is_some());
            }
        }
    }

    #[test]
    fn null_vectors_annihilate() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let d = RingDescriptor::RationalQuaternions;
        for _ in 0..100 {
            let rows = rng.gen_range(1..=3);
            let cols = rng.gen_range(1..=4);
            let entries = (0..rows * cols)
                .map(|_| {
                    Scalar::quaternion_units(
                        rng.gen_range(-1..=1),
                        rng.gen_range(-1..=1),
                        rng.gen_range(-1..=1),
                        rng.gen_range(-1..=1),
                    )
                })
                .collect();
            let m = Matrix::new(d, rows, cols, entries).unwrap();
            for v in m.right_null_space() {
                for i in 0..rows {
                    let mut acc = Scalar::zero(d);
                    for j in 0..cols {
                        acc = acc.add(&m.get(i, j).mul(&v[j]));
                    }
                    assert!(acc.is_zero());
                }
            }
            for v in m.left_null_space() {
                for j in 0..cols {
                    let mut acc = Scalar::zero(d);
                    for i in 0..rows {
                        acc = acc.add(&v[i].mul(m.get(i, j)));
                    }
                    assert!(acc.is_zero());
                }
            }
        }
    }

    #[test]
    fn matmul_associativity_randomized() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let d = RingDescriptor::RationalQuaternions;
        for _ in 0..100 {
            let (p, q, r, s) = (
                rng.gen_range(1..=3),
                rng.gen_range(1..=3),
                rng.gen_range(1..=3),
                rng.gen_range(1..=3),
            );
            let rnd = |rng: &mut rand_chacha::ChaCha8Rng, rows: usize, cols: usize| {
                let entries = (0..rows * cols)
                    .map(|_| {
                        Scalar::quaternion_units(
                            rng.gen_range(-1..=1),
                            rng.gen_range(-1..=1),
                            rng.gen_range(-1..=1),
                            rng.gen_range(-1..=1),
                        )
                    })
                    .collect();
                Matrix::new(d, rows, cols, entries).unwrap()
            };
            let a = rnd(&mut rng, p, q);
            let b = rnd(&mut rng, q, r);
            let c = rnd(&mut rng, r, s);
            assert_eq!(
                a.mul(&b).unwrap().mul(&c).unwrap(),
                a.mul(&b.mul(&c).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn display_is_bracketed_rows() {
        let a = Matrix::from_rows(RingDescriptor::Rationals, &[&[1, 0], &[0, 1]]);
        assert_eq!(a.to_string(), "[[1, 0], [0, 1]]");
    }
}
