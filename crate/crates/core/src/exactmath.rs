//! Exact integer and rational linear algebra.
//!
//! Everything here works over [`BigInt`] / [`BigRational`]; ranks are computed
//! with fraction-free (Bareiss) elimination so intermediate values stay integral.
//! Pivoting is deterministic: the first nonzero entry in column order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::error::{Error, Result};

/// Integer matrix with fixed, unique column labels.
///
/// Rows of hyperplane matrices are labeled by the nonzero residues `1..m`,
/// presentation matrices by the atoms of a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    labels: Vec<usize>,
    rows: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    /// An empty (zero-row) matrix with the given column labels.
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        let mut seen = labels.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != labels.len() {
            return Err(Error::InvalidInput("column labels must be unique".into()));
        }
        Ok(Self {
            labels,
            rows: Vec::new(),
        })
    }

    /// Columns labeled `0..cols`.
    pub fn with_cols(cols: usize) -> Self {
        Self {
            labels: (0..cols).collect(),
            rows: Vec::new(),
        }
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(labels: Vec<usize>, rows: &[Vec<T>]) -> Result<Self> {
        let mut matrix = Self::new(labels)?;
        for row in rows {
            matrix.push_row(row.iter().map(|&x| x.into()).collect())?;
        }
        Ok(matrix)
    }

    pub fn identity(n: usize) -> Self {
        let mut matrix = Self::with_cols(n);
        for i in 0..n {
            let mut row = vec![BigInt::zero(); n];
            row[i] = BigInt::one();
            matrix.rows.push(row);
        }
        matrix
    }

    pub fn push_row(&mut self, row: Vec<BigInt>) -> Result<()> {
        if row.len() != self.labels.len() {
            return Err(Error::DimensionMismatch {
                expected: self.labels.len(),
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.rows[i]
    }

    pub fn column_of(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Entry at `(row, column label)`.
    pub fn get(&self, row: usize, label: usize) -> Option<&BigInt> {
        self.column_of(label).map(|c| &self.rows[row][c])
    }

    /// Rows converted to `i64`, for serialization. Panics if an entry overflows.
    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| i64::try_from(x).expect("matrix entry exceeds i64"))
                    .collect()
            })
            .collect()
    }
}

/// Entries fitting in `i64` serialize as JSON numbers, larger ones as
/// decimal strings.
impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(serde::Serialize)]
        #[serde(untagged)]
        enum Entry {
            Small(i64),
            Big(String),
        }
        let rows: Vec<Vec<Entry>> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| i64::try_from(x).map_or_else(|_| Entry::Big(x.to_string()), Entry::Small))
                    .collect()
            })
            .collect();
        let mut st = serializer.serialize_struct("IntMatrix", 2)?;
        st.serialize_field("labels", &self.labels)?;
        st.serialize_field("rows", &rows)?;
        st.end()
    }
}

/// Vector of exact rationals, always in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalVector(Vec<BigRational>);

impl RationalVector {
    pub fn new(entries: Vec<BigRational>) -> Self {
        // BigRational::new reduces on construction; nothing else to normalize.
        Self(entries)
    }

    pub fn entries(&self) -> &[BigRational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Smallest positive multiple with all-integer entries.
    pub fn clear_denominators(&self) -> Vec<BigInt> {
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        self.0
            .iter()
            .map(|q| (q * BigRational::from_integer(lcm.clone())).to_integer())
            .collect()
    }
}

/// Fraction-free row echelon form. Returns the reduced matrix and pivot columns.
fn bareiss_echelon(rows: &[Vec<BigInt>], ncols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let nrows = a.len();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in (r + 1)..nrows {
            for j in (c + 1)..ncols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                // Exact by Sylvester's identity.
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &IntMatrix) -> usize {
    bareiss_echelon(&m.rows, m.ncols()).1.len()
}

/// Reduced row echelon form over the rationals, cached for repeated membership
/// queries against the same row space.
#[derive(Clone, Debug)]
pub struct RowSpace {
    ncols: usize,
    rref: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(m: &IntMatrix) -> Self {
        let (ech, pivots) = bareiss_echelon(&m.rows, m.ncols());
        let mut rref: Vec<Vec<BigRational>> = ech
            .into_iter()
            .take(pivots.len())
            .map(|row| row.into_iter().map(BigRational::from_integer).collect())
            .collect();
        for (r, &c) in pivots.iter().enumerate() {
            let inv = rref[r][c].recip();
            for x in rref[r].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = rref[r].clone();
            for (i, row) in rref.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        *x -= &f * y;
                    }
                }
            }
        }
        Self {
            ncols: m.ncols(),
            rref,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coefficients of `v` in the reduced basis, or `None` if `v` is outside the span.
    pub fn coordinates(&self, v: &[BigInt]) -> Result<Option<RationalVector>> {
        if v.len() != self.ncols {
            return Err(Error::DimensionMismatch {
                expected: self.ncols,
                found: v.len(),
            });
        }
        let mut rest: Vec<BigRational> = v.iter().cloned().map(BigRational::from_integer).collect();
        let mut coeffs = Vec::with_capacity(self.rank());
        for (r, &c) in self.pivots.iter().enumerate() {
            let f = rest[c].clone();
            if !f.is_zero() {
                for (x, y) in rest.iter_mut().zip(&self.rref[r]) {
                    *x -= &f * y;
                }
            }
            coeffs.push(f);
        }
        if rest.iter().all(Zero::is_zero) {
            Ok(Some(RationalVector::new(coeffs)))
        } else {
            Ok(None)
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// Same as [`RowSpace::contains`] for small integer vectors.
    pub fn contains_i64(&self, v: &[i64]) -> Result<bool> {
        let big: Vec<BigInt> = v.iter().map(|&x| BigInt::from(x)).collect();
        self.contains(&big)
    }

    /// Primitive integral basis of the null space, one vector per free column
    /// in increasing column order.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let free = (0..self.ncols).filter(|c| !self.pivots.contains(c));
        free.map(|f| {
            let mut v = vec![BigRational::zero(); self.ncols];
            v[f] = BigRational::one();
            for (r, &c) in self.pivots.iter().enumerate() {
                v[c] = -self.rref[r][f].clone();
            }
            primitive(RationalVector::new(v).clear_denominators())
        })
        .collect()
    }
}

/// Divide out the gcd of the entries.
pub fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

pub fn rowspan_contains(m: &IntMatrix, v: &[BigInt]) -> Result<bool> {
    RowSpace::new(m).contains(v)
}

pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    RowSpace::new(m).kernel_basis()
}

/// All integer solutions of `A w = b`: a particular solution plus a Z-basis of
/// the integer kernel lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSolution {
    pub particular: Vec<BigInt>,
    pub lattice: Vec<Vec<BigInt>>,
}

/// Extended gcd with `g >= 0`: returns `(g, s, t)` with `s*x + t*y = g`.
fn ext_gcd(x: &BigInt, y: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = x.extended_gcd(y);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Solve `A w = b` over the integers by unimodular column reduction of `A`
/// to lower echelon form (`A U = [T | 0]`).
pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Result<Option<IntegerSolution>> {
    if b.len() != a.nrows() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            found: b.len(),
        });
    }
    let n = a.ncols();
    let mut t: Vec<Vec<BigInt>> = a.rows.clone();
    let mut u: Vec<Vec<BigInt>> = IntMatrix::identity(n).rows;

    // Column operation helper: (col_p, col_q) <- (s*col_p + t*col_q, -y*col_p + x*col_q).
    fn combine(
        mat: &mut [Vec<BigInt>],
        p: usize,
        q: usize,
        coeffs: (&BigInt, &BigInt, &BigInt, &BigInt),
    ) {
        let (s, tt, x, y) = coeffs;
        for row in mat.iter_mut() {
            let cp = row[p].clone();
            let cq = row[q].clone();
            row[p] = s * &cp + tt * &cq;
            row[q] = x * &cq - y * &cp;
        }
    }

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut col = 0;
    for r in 0..t.len() {
        if col == n {
            break;
        }
        for j in (col + 1)..n {
            if t[r][j].is_zero() {
                continue;
            }
            if t[r][col].is_zero() {
                for row in t.iter_mut().chain(u.iter_mut()) {
                    row.swap(col, j);
                }
                continue;
            }
            let (g, s, tt) = ext_gcd(&t[r][col], &t[r][j]);
            let x = &t[r][col] / &g;
            let y = &t[r][j] / &g;
            combine(&mut t, col, j, (&s, &tt, &x, &y));
            combine(&mut u, col, j, (&s, &tt, &x, &y));
        }
        if !t[r][col].is_zero() {
            pivots.push((r, col));
            col += 1;
        }
    }

    let rank = pivots.len();
    let mut y = vec![BigInt::zero(); rank];
    let mut pivot_iter = pivots.iter().peekable();
    for (r, rhs) in b.iter().enumerate() {
        let known: BigInt = (0..rank).map(|c| &t[r][c] * &y[c]).sum();
        match pivot_iter.peek() {
            Some(&&(pr, pc)) if pr == r => {
                let rem = rhs - known;
                if !(&rem % &t[r][pc]).is_zero() {
                    return Ok(None);
                }
                y[pc] = rem / &t[r][pc];
                pivot_iter.next();
            }
            _ => {
                if &known != rhs {
                    return Ok(None);
                }
            }
        }
    }
    let particular = (0..n)
        .map(|i| (0..rank).map(|c| &u[i][c] * &y[c]).sum())
        .collect();
    let lattice = (rank..n)
        .map(|c| (0..n).map(|i| u[i][c].clone()).collect())
        .collect();
    Ok(Some(IntegerSolution {
        particular,
        lattice,
    }))
}

/// Dot product of an integer row with a small integer vector.
pub fn dot_i64(row: &[BigInt], v: &[i64]) -> BigInt {
    row.iter().zip(v).map(|(a, &b)| a * BigInt::from(b)).sum()
}
