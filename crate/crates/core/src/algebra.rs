//! Exact linear algebra over the rationals: the general-position matrix `M`,
//! its row dependencies, determinants, rank, and an incremental span tracker.
//!
//! Elimination is fraction-free. Rational rows are first scaled to integer
//! rows, then reduced with Bareiss' exact-division update so intermediate
//! values stay integral.

use std::fmt;
use std::ops::Index;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("need 2 <= t <= n, got n={n}, t={t}")]
    BadShape { n: usize, t: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },
    #[error("row set must have {expected} distinct sorted indices in 1..={rows}, got {got:?}")]
    BadRowSet {
        expected: usize,
        rows: usize,
        got: Vec<usize>,
    },
    #[error("dependency coefficient for row {row} vanished; matrix is not in general position")]
    ZeroCoefficient { row: usize },
}

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalVector {
    entries: Vec<Rational>,
}

impl RationalVector {
    pub fn zeros(len: usize) -> Self {
        RationalVector {
            entries: vec![Rational::zero(); len],
        }
    }

    pub fn from_integers(xs: &[i64]) -> Self {
        xs.iter().map(|&x| rational(x)).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [Rational] {
        &mut self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Indices of the non-zero entries.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| i)
    }

    /// `self += scale * other`
    pub fn add_scaled(
        &mut self,
        scale: &Rational,
        other: &RationalVector,
    ) -> Result<(), AlgebraError> {
        if other.len() != self.len() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.len(),
                got: other.len(),
            });
        }
        if scale.is_zero() {
            return Ok(());
        }
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            if !b.is_zero() {
                *a += scale * b;
            }
        }
        Ok(())
    }

    /// Rational strings (`"p/q"`, or `"p"` for integers).
    pub fn to_strings(&self) -> Vec<String> {
        self.entries.iter().map(|x| x.to_string()).collect()
    }
}

impl FromIterator<Rational> for RationalVector {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        RationalVector {
            entries: iter.into_iter().collect(),
        }
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.entries[i]
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<RationalVector>, cols: usize) -> Result<Self, AlgebraError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            if row.len() != cols {
                return Err(AlgebraError::DimensionMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            data.extend(row.entries);
        }
        Ok(RationalMatrix {
            rows: n,
            cols,
            data,
        })
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self, AlgebraError> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows(
            rows.iter()
                .map(|r| RationalVector::from_integers(r))
                .collect(),
            cols,
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vector(&self, i: usize) -> RationalVector {
        self.row(i).iter().cloned().collect()
    }

    /// Submatrix on the given 0-based rows.
    pub fn select_rows(&self, rows: &[usize]) -> RationalMatrix {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend_from_slice(self.row(i));
        }
        RationalMatrix {
            rows: rows.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integer())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.data.iter().all(|x| !x.is_negative())
    }

    /// Rows as strings, integers printed bare.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.to_string()).collect())
            .collect()
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| integer_row(self.row(i)).0).collect()
    }

    pub fn rank(&self) -> usize {
        bareiss(self.integer_rows(), self.cols).rank
    }

    pub fn determinant(&self) -> Result<Rational, AlgebraError> {
        if self.rows != self.cols {
            return Err(AlgebraError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        let mut scale = BigInt::one();
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let (row, den) = integer_row(self.row(i));
            scale *= den;
            rows.push(row);
        }
        let reduced = bareiss(rows, self.cols);
        if reduced.rank < self.rows {
            return Ok(Rational::zero());
        }
        let mut det = reduced.last_pivot;
        if reduced.swaps % 2 == 1 {
            det = -det;
        }
        Ok(Rational::new(det, scale))
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_string_rows() {
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Scale a rational row by the lcm of its denominators. Returns the integer
/// row and the multiplier.
fn integer_row(row: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints = row.iter().map(|x| x.numer() * (&den / x.denom())).collect();
    (ints, den)
}

struct Reduced {
    rank: usize,
    last_pivot: BigInt,
    swaps: usize,
}

/// Bareiss fraction-free elimination with row pivoting. Every division is
/// exact because each entry is a minor of the input.
fn bareiss(mut a: Vec<Vec<BigInt>>, cols: usize) -> Reduced {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut swaps = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            swaps += 1;
        }
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let pivot = &pivot_row[col];
        for row in rest.iter_mut() {
            let lead = row[col].clone();
            for j in col + 1..cols {
                let v = &row[j] * pivot - &lead * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = pivot.clone();
        rank += 1;
    }
    Reduced {
        rank,
        last_pivot: prev,
        swaps,
    }
}

/// The `n x (t-1)` matrix with the identity in rows `1..t-1` and
/// `(i^0, i^1, ..., i^(t-2))` in every row `i >= t`. Rows indexed 1-based by
/// grid value.
pub fn build_general_position_matrix(n: usize, t: usize) -> Result<RationalMatrix, AlgebraError> {
    if t < 2 || t > n {
        return Err(AlgebraError::BadShape { n, t });
    }
    let cols = t - 1;
    let mut m = RationalMatrix::zeros(n, cols);
    for i in 1..=n {
        if i < t {
            m.set(i - 1, i - 1, Rational::one());
        } else {
            let base = BigInt::from(i);
            let mut power = BigInt::one();
            for j in 0..cols {
                m.set(i - 1, j, Rational::from_integer(power.clone()));
                power *= &base;
            }
        }
    }
    Ok(m)
}

/// True iff every `t - 1` rows of `m` are linearly independent. Exhaustive
/// over all `C(rows, t - 1)` row subsets.
pub fn verify_general_position(m: &RationalMatrix, t: usize) -> Result<bool, AlgebraError> {
    if t < 2 || m.cols() != t - 1 {
        return Err(AlgebraError::DimensionMismatch {
            expected: t.saturating_sub(1),
            got: m.cols(),
        });
    }
    let k = t - 1;
    if m.rows() < k {
        return Ok(false);
    }
    let mut sel: Vec<usize> = (0..k).collect();
    loop {
        if m.select_rows(&sel).determinant()?.is_zero() {
            return Ok(false);
        }
        if !crate::grid::next_combination(&mut sel, m.rows() - 1) {
            return Ok(true);
        }
    }
}

/// Cofactor dependency among the rows of `m` indexed by `rows` (1-based,
/// sorted, `cols + 1` of them): entry `j` (1-based) is
/// `(-1)^j * det(m[rows without the j-th])`.
///
/// Errors if any coefficient is zero, which happens exactly when some
/// `cols` of the selected rows are dependent.
pub fn dependency_coeffs(
    m: &RationalMatrix,
    rows: &[usize],
) -> Result<RationalVector, AlgebraError> {
    let t = m.cols() + 1;
    let sorted = rows.windows(2).all(|w| w[0] < w[1]);
    let in_range = rows.iter().all(|&i| i >= 1 && i <= m.rows());
    if rows.len() != t || !sorted || !in_range {
        return Err(AlgebraError::BadRowSet {
            expected: t,
            rows: m.rows(),
            got: rows.to_vec(),
        });
    }
    let zero_based: Vec<usize> = rows.iter().map(|&i| i - 1).collect();
    let mut out = Vec::with_capacity(t);
    for (j, &row) in rows.iter().enumerate() {
        let minor_rows: Vec<usize> = zero_based
            .iter()
            .enumerate()
            .filter(|&(pos, _)| pos != j)
            .map(|(_, &i)| i)
            .collect();
        let det = m.select_rows(&minor_rows).determinant()?;
        if det.is_zero() {
            return Err(AlgebraError::ZeroCoefficient { row });
        }
        // j is 0-based here, so (-1)^(j+1)
        out.push(if j % 2 == 0 { -det } else { det });
    }
    Ok(RationalVector { entries: out })
}

/// Echelon basis grown one vector at a time. Stored rows are primitive
/// integer vectors ordered by strictly increasing pivot column, each zero
/// before its pivot.
#[derive(Debug, Clone)]
pub struct EliminationBasis {
    dim: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl EliminationBasis {
    pub fn new(dim: usize) -> Self {
        EliminationBasis {
            dim,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|(p, _)| *p).collect()
    }

    fn reduce(&self, v: &RationalVector) -> Result<Vec<BigInt>, AlgebraError> {
        if v.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: v.len(),
            });
        }
        let (mut w, _) = integer_row(v.entries());
        for (pivot, b) in &self.rows {
            if w[*pivot].is_zero() {
                continue;
            }
            let lead = w[*pivot].clone();
            let bp = &b[*pivot];
            for (x, y) in w.iter_mut().zip(b) {
                *x = &*x * bp - &lead * y;
            }
            make_primitive(&mut w);
        }
        Ok(w)
    }

    /// True iff `v` lies in the current span.
    pub fn contains(&self, v: &RationalVector) -> Result<bool, AlgebraError> {
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }

    /// Adds `v` if it is independent of the current span. Returns whether the
    /// rank grew; the state is untouched otherwise.
    pub fn insert(&mut self, v: &RationalVector) -> Result<bool, AlgebraError> {
        let w = self.reduce(v)?;
        let Some(pivot) = w.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let at = self.rows.partition_point(|(p, _)| *p < pivot);
        self.rows.insert(at, (pivot, w));
        Ok(true)
    }
}

fn make_primitive(w: &mut [BigInt]) {
    let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in w.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Rank of a list of equal-length vectors.
pub fn rank_of(vectors: &[RationalVector], dim: usize) -> Result<usize, AlgebraError> {
    let mut rows = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.len() != dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
        rows.push(integer_row(v.entries()).0);
    }
    Ok(bareiss(rows, dim).rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn int_matrix(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_integer_rows(rows).unwrap()
    }

    /// Textbook Gauss-Jordan over the rationals, no fraction-free tricks.
    fn naive_rank(m: &RationalMatrix) -> usize {
        let mut a: Vec<Vec<Rational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        let mut rank = 0;
        for col in 0..m.cols() {
            let Some(p) = (rank..a.len()).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(p, rank);
            let pivot = a[rank][col].clone();
            for i in 0..a.len() {
                if i != rank {
                    let f = &a[i][col] / &pivot;
                    let pivot_row = a[rank].clone();
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= y * &f;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Laplace expansion along the first row.
    fn laplace_det(m: &RationalMatrix) -> Rational {
        let n = m.rows();
        if n == 0 {
            return Rational::one();
        }
        let mut acc = Rational::zero();
        for j in 0..n {
            let mut minor = RationalMatrix::zeros(n - 1, n - 1);
            for i in 1..n {
                let mut c = 0;
                for k in 0..n {
                    if k != j {
                        minor.set(i - 1, c, m.get(i, k).clone());
                        c += 1;
                    }
                }
            }
            let term = m.get(0, j) * laplace_det(&minor);
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn general_position_matrix_examples() {
        let m = build_general_position_matrix(3, 2).unwrap();
        assert_eq!(m, int_matrix(&[vec![1], vec![1], vec![1]]));
        let m = build_general_position_matrix(4, 3).unwrap();
        assert_eq!(
            m,
            int_matrix(&[vec![1, 0], vec![0, 1], vec![1, 3], vec![1, 4]])
        );
        let m = build_general_position_matrix(5, 5).unwrap();
        assert_eq!(
            m,
            int_matrix(&[
                vec![1, 0, 0, 0],
                vec![0, 1, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 0, 0, 1],
                vec![1, 5, 25, 125],
            ])
        );
        assert!(m.is_nonnegative() && m.is_integral());
    }

    #[test]
    fn general_position_matrix_rejects_bad_shapes() {
        assert_eq!(
            build_general_position_matrix(3, 4),
            Err(AlgebraError::BadShape { n: 3, t: 4 })
        );
        assert!(build_general_position_matrix(3, 1).is_err());
    }

    #[test]
    fn general_position_checks() {
        let m = build_general_position_matrix(3, 2).unwrap();
        assert!(verify_general_position(&m, 2).unwrap());
        let dup = int_matrix(&[vec![1, 0], vec![0, 1], vec![1, 2], vec![1, 2]]);
        assert!(!verify_general_position(&dup, 3).unwrap());
        assert!(verify_general_position(&build_general_position_matrix(8, 4).unwrap(), 4).unwrap());
        assert!(matches!(
            verify_general_position(&dup, 4),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn all_desk_scale_matrices_in_general_position() {
        for n in 2..=8 {
            for t in 2..=n.min(5) {
                let m = build_general_position_matrix(n, t).unwrap();
                assert!(verify_general_position(&m, t).unwrap(), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn dependency_examples() {
        let m = build_general_position_matrix(3, 2).unwrap();
        assert_eq!(
            dependency_coeffs(&m, &[1, 3]).unwrap(),
            RationalVector::from_integers(&[-1, 1])
        );
        let m = build_general_position_matrix(4, 3).unwrap();
        assert_eq!(
            dependency_coeffs(&m, &[1, 2, 3]).unwrap(),
            RationalVector::from_integers(&[1, 3, -1])
        );
        let lambda = dependency_coeffs(&m, &[2, 3, 4]).unwrap();
        assert!(lambda.entries().iter().all(|x| !x.is_zero()));
        assert_dependency(&m, &[2, 3, 4], &lambda);
    }

    #[test]
    fn dependency_errors() {
        let m = build_general_position_matrix(4, 3).unwrap();
        assert!(matches!(
            dependency_coeffs(&m, &[1, 2]),
            Err(AlgebraError::BadRowSet { .. })
        ));
        assert!(matches!(
            dependency_coeffs(&m, &[3, 2, 1]),
            Err(AlgebraError::BadRowSet { .. })
        ));
        assert!(matches!(
            dependency_coeffs(&m, &[1, 2, 5]),
            Err(AlgebraError::BadRowSet { .. })
        ));
        let degenerate = int_matrix(&[vec![1, 0], vec![2, 0], vec![0, 1]]);
        assert!(matches!(
            dependency_coeffs(&degenerate, &[1, 2, 3]),
            Err(AlgebraError::ZeroCoefficient { .. })
        ));
    }

    fn assert_dependency(m: &RationalMatrix, rows: &[usize], lambda: &RationalVector) {
        for j in 0..m.cols() {
            let sum: Rational = rows
                .iter()
                .zip(lambda.entries())
                .map(|(&i, l)| l * m.get(i - 1, j))
                .sum();
            assert!(sum.is_zero(), "column {j} residual {sum}");
        }
    }

    #[test]
    fn every_dependency_annihilates_the_columns() {
        for n in 2..=7 {
            for t in 2..=n.min(5) {
                let m = build_general_position_matrix(n, t).unwrap();
                let mut sel: Vec<usize> = (1..=t).collect();
                loop {
                    let lambda = dependency_coeffs(&m, &sel).unwrap();
                    assert_dependency(&m, &sel, &lambda);
                    assert!(lambda
                        .entries()
                        .iter()
                        .all(|x| x.is_integer() && !x.is_zero()));
                    if t == 2 {
                        assert_eq!(lambda.entries()[0], -lambda.entries()[1].clone());
                        assert_eq!(lambda.entries()[1], rational(1));
                    }
                    if !crate::grid::next_combination(&mut sel, n) {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn rank_examples() {
        assert_eq!(
            int_matrix(&[vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]).rank(),
            3
        );
        assert_eq!(int_matrix(&[vec![1, 2], vec![2, 4]]).rank(), 1);
        assert_eq!(RationalMatrix::zeros(3, 4).rank(), 0);
    }

    #[test]
    fn determinant_with_fractions() {
        let mut m = RationalMatrix::zeros(2, 2);
        m.set(0, 0, Rational::new(1.into(), 2.into()));
        m.set(0, 1, Rational::new(1.into(), 3.into()));
        m.set(1, 0, rational(3));
        m.set(1, 1, rational(4));
        // 1/2*4 - 1/3*3 = 1
        assert_eq!(m.determinant().unwrap(), rational(1));
        assert!(matches!(
            RationalMatrix::zeros(2, 3).determinant(),
            Err(AlgebraError::NotSquare { .. })
        ));
    }

    #[test]
    fn basis_tracks_span() {
        let mut basis = EliminationBasis::new(3);
        assert!(basis
            .insert(&RationalVector::from_integers(&[0, 2, 4]))
            .unwrap());
        assert!(basis
            .insert(&RationalVector::from_integers(&[1, 1, 1]))
            .unwrap());
        assert!(!basis
            .insert(&RationalVector::from_integers(&[2, 4, 6]))
            .unwrap());
        assert_eq!(basis.rank(), 2);
        assert_eq!(basis.pivots(), vec![0, 1]);
        assert!(basis
            .contains(&RationalVector::from_integers(&[1, 0, -1]))
            .unwrap());
        assert!(!basis
            .contains(&RationalVector::from_integers(&[0, 0, 1]))
            .unwrap());
        assert!(matches!(
            basis.insert(&RationalVector::zeros(2)),
            Err(AlgebraError::DimensionMismatch { .. })
        ));
    }

    fn small_matrix() -> impl Strategy<Value = RationalMatrix> {
        (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(prop::collection::vec(-3i64..4, c), r)
                .prop_map(|rows| RationalMatrix::from_integer_rows(&rows).unwrap())
        })
    }

    fn small_square() -> impl Strategy<Value = RationalMatrix> {
        (1usize..5).prop_flat_map(|n| {
            prop::collection::vec(prop::collection::vec(-4i64..5, n), n)
                .prop_map(|rows| RationalMatrix::from_integer_rows(&rows).unwrap())
        })
    }

    proptest! {
        #[test]
        fn rank_agrees_with_naive_reduction(m in small_matrix()) {
            prop_assert_eq!(m.rank(), naive_rank(&m));
        }

        #[test]
        fn determinant_agrees_with_laplace(m in small_square()) {
            prop_assert_eq!(m.determinant().unwrap(), laplace_det(&m));
        }

        #[test]
        fn basis_rank_matches_matrix_rank(m in small_matrix()) {
            let mut basis = EliminationBasis::new(m.cols());
            for i in 0..m.rows() {
                let before = basis.clone();
                let grew = basis.insert(&m.row_vector(i)).unwrap();
                if !grew {
                    prop_assert_eq!(before.rows.clone(), basis.rows.clone());
                }
                let pivots = basis.pivots();
                prop_assert!(pivots.windows(2).all(|w| w[0] < w[1]));
            }
            prop_assert_eq!(basis.rank(), naive_rank(&m));
        }

        #[test]
        fn scaled_dependency_still_annihilates(n in 3usize..7, scale in 1i64..50) {
            let t = 3;
            let m = build_general_position_matrix(n, t).unwrap();
            let rows: Vec<usize> = (n - 2..=n).collect();
            let lambda = dependency_coeffs(&m, &rows).unwrap();
            let scaled: RationalVector = lambda.entries().iter().map(|x| x * rational(-scale)).collect();
            assert_dependency(&m, &rows, &scaled);
        }
    }
}
