//! Faces of the group cone given by hyperplane matrices: the face of a
//! semigroup, position of a point relative to a face, and a bounded search
//! for numerical semigroups on a face.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{solve_integer, IntMatrix, RowSpace};
use crate::kunzposet::{facet_row, KunzPoset};
use crate::semigroup::{AperyTuple, KunzTuple, NumericalSemigroup};

/// A face of `C(Z_m)`, cut out by homogeneous equalities in Apéry
/// coordinates. Columns are labeled `1..m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    m: usize,
    equalities: IntMatrix,
}

impl Face {
    pub fn new(m: usize, equalities: IntMatrix) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput("m must be at least 2".into()));
        }
        if equalities.labels() != (1..m).collect::<Vec<_>>().as_slice() {
            return Err(Error::DimensionMismatch {
                expected: m - 1,
                found: equalities.ncols(),
            });
        }
        Ok(Self { m, equalities })
    }

    pub fn from_rows(m: usize, rows: &[Vec<i64>]) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput("m must be at least 2".into()));
        }
        Self::new(m, IntMatrix::from_rows((1..m).collect(), rows)?)
    }

    /// The face whose relative interior contains `a`: one row per pair
    /// `i <= j`, `i + j ≢ 0`, with `a_i + a_j = a_{i+j}`, in `(i, j)` order.
    pub fn of_apery(a: &AperyTuple) -> Self {
        let m = a.m();
        let mut equalities = IntMatrix::new((1..m).collect()).expect("distinct labels");
        for (i, j) in facet_pairs(m) {
            if a.get(i) + a.get(j) == a.get((i + j) % m) {
                equalities.push_row(facet_row(m, i, j)).expect("row length m - 1");
            }
        }
        Self { m, equalities }
    }

    pub fn of_semigroup(s: &NumericalSemigroup) -> Self {
        Self::of_apery(&s.apery())
    }

    /// The face read off a poset with trivial subgroup: one row per pair
    /// `i <= j` with `i ⪯ i + j`.
    pub fn of_poset(p: &KunzPoset) -> Result<Self> {
        p.require_trivial_subgroup()?;
        let m = p.m();
        let mut equalities = IntMatrix::new((1..m).collect())?;
        for (i, j) in facet_pairs(m) {
            if p.leq(i, (i + j) % m) {
                equalities.push_row(facet_row(m, i, j))?;
            }
        }
        Ok(Self { m, equalities })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn equalities(&self) -> &IntMatrix {
        &self.equalities
    }

    pub fn poset(&self) -> Result<KunzPoset> {
        KunzPoset::from_face(self.m, &self.equalities)
    }

    /// Same linear span of equalities, hence the same face.
    pub fn same_face(&self, other: &Face) -> Result<bool> {
        if self.m != other.m {
            return Ok(false);
        }
        let (a, b) = (RowSpace::new(&self.equalities), RowSpace::new(&other.equalities));
        if a.rank() != b.rank() {
            return Ok(false);
        }
        for row in other.equalities.rows() {
            if !a.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Pairs `(i, j)` with `1 <= i <= j < m` and `i + j ≢ 0 (mod m)`.
fn facet_pairs(m: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..m).flat_map(move |i| (i..m).filter(move |&j| (i + j) % m != 0).map(move |j| (i, j)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Position {
    Interior,
    Boundary,
    Off,
}

/// Position of the Apéry-coordinate point `a` (length `m - 1`) relative to
/// the face.
pub fn on_face(face: &Face, a: &[u64]) -> Result<Position> {
    let m = face.m;
    if a.len() != m - 1 {
        return Err(Error::DimensionMismatch {
            expected: m - 1,
            found: a.len(),
        });
    }
    let at = |r: usize| BigInt::from(a[r - 1]);
    for row in face.equalities.rows() {
        let value: BigInt = row.iter().zip(a).map(|(c, &x)| c * BigInt::from(x)).sum();
        if !value.is_zero() {
            return Ok(Position::Off);
        }
    }
    let span = RowSpace::new(&face.equalities);
    let mut extra_tight = false;
    for (i, j) in facet_pairs(m) {
        let slack = at(i) + at(j) - at((i + j) % m);
        if slack.is_negative() {
            return Ok(Position::Off);
        }
        if slack.is_zero() && !span.contains(&facet_row(m, i, j))? {
            extra_tight = true;
        }
    }
    Ok(if extra_tight {
        Position::Boundary
    } else {
        Position::Interior
    })
}

pub fn on_face_kunz(face: &Face, x: &KunzTuple) -> Result<Position> {
    on_face(face, x.to_apery().values())
}

/// Reason no numerical semigroup lies on a face.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Obstruction {
    /// `e_h` is in the span: `a_h = 0`, so the Kunz subgroup is nontrivial.
    NontrivialSubgroup { element: usize, witness: Vec<i64> },
    /// `e_i - e_j` is in the span: `a_i = a_j` despite distinct residues.
    ForcedEquality { i: usize, j: usize, witness: Vec<i64> },
    /// No integer Kunz point satisfies the equalities.
    NoIntegerPoint,
}

impl Obstruction {
    pub fn witness(&self) -> Option<&[i64]> {
        match self {
            Self::NontrivialSubgroup { witness, .. } | Self::ForcedEquality { witness, .. } => Some(witness),
            Self::NoIntegerPoint => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceSearch {
    Found(NumericalSemigroup),
    ProvablyNone(Obstruction),
    NoneWithinBound,
}

/// Looks for a numerical semigroup whose Apéry tuple lies in the relative
/// interior of `face`.
///
/// Kunz points on the face are `x0 + Σ c_j L_j` for an integer solution `x0`
/// of `H x = -H ι / m` and a basis `L` of the integer kernel of `H`. Shells
/// `max |c_j| = 0, 1, ..., bound` are scanned in lexicographic order of `c`.
pub fn find_semigroup_on_face(face: &Face, bound: u32) -> Result<FaceSearch> {
    let m = face.m;
    let h = &face.equalities;
    let span = RowSpace::new(h);
    let unit = |terms: &[(usize, i64)]| {
        let mut v = vec![0i64; m - 1];
        for &(r, c) in terms {
            v[r - 1] += c;
        }
        v
    };
    for e in 1..m {
        let witness = unit(&[(e, 1)]);
        if span.contains_i64(&witness)? {
            return Ok(FaceSearch::ProvablyNone(Obstruction::NontrivialSubgroup { element: e, witness }));
        }
    }
    // Pairs i < j, larger index descending.
    for j in (1..m).rev() {
        for i in 1..j {
            let witness = unit(&[(i, 1), (j, -1)]);
            if span.contains_i64(&witness)? {
                return Ok(FaceSearch::ProvablyNone(Obstruction::ForcedEquality { i, j, witness }));
            }
        }
    }

    // a = m x + ι, so H a = 0 becomes H x = -H ι / m.
    let mb = BigInt::from(m);
    let mut rhs = Vec::with_capacity(h.nrows());
    for row in h.rows() {
        let hi: BigInt = row.iter().enumerate().map(|(c, v)| v * BigInt::from(c + 1)).sum();
        let (q, r) = (-hi).div_rem(&mb);
        if !r.is_zero() {
            return Ok(FaceSearch::ProvablyNone(Obstruction::NoIntegerPoint));
        }
        rhs.push(q);
    }
    let Some(sol) = solve_integer(h, &rhs)? else {
        return Ok(FaceSearch::ProvablyNone(Obstruction::NoIntegerPoint));
    };
    let (x0, basis) = reduce(sol.particular, sol.lattice);

    let d = basis.len();
    let mut coeffs = vec![0i64; d];
    for radius in 0..=i64::from(bound) {
        // Odometer over [-radius, radius]^d, keeping only the outer shell.
        coeffs.iter_mut().for_each(|c| *c = -radius);
        loop {
            if coeffs.iter().map(|c| c.abs()).max().unwrap_or(0) == radius {
                if let Some(s) = candidate(face, &x0, &basis, &coeffs)? {
                    return Ok(FaceSearch::Found(s));
                }
            }
            if !advance(&mut coeffs, radius) {
                break;
            }
        }
    }
    Ok(FaceSearch::NoneWithinBound)
}

/// Next vector of `[-radius, radius]^d` in lexicographic order.
fn advance(coeffs: &mut [i64], radius: i64) -> bool {
    for pos in (0..coeffs.len()).rev() {
        if coeffs[pos] < radius {
            coeffs[pos] += 1;
            coeffs[pos + 1..].iter_mut().for_each(|c| *c = -radius);
            return true;
        }
    }
    false
}

fn candidate(face: &Face, x0: &[BigInt], basis: &[Vec<BigInt>], coeffs: &[i64]) -> Result<Option<NumericalSemigroup>> {
    let mut x = x0.to_vec();
    for (b, &c) in basis.iter().zip(coeffs) {
        if c != 0 {
            let c = BigInt::from(c);
            for (xi, bi) in x.iter_mut().zip(b) {
                *xi += &c * bi;
            }
        }
    }
    let mut values = Vec::with_capacity(x.len());
    for xi in &x {
        match xi.to_u64() {
            Some(v) if v >= 1 => values.push(v),
            _ => return Ok(None),
        }
    }
    let Ok(kunz) = KunzTuple::new(face.m, values) else {
        return Ok(None);
    };
    if on_face_kunz(face, &kunz)? != Position::Interior {
        return Ok(None);
    }
    Ok(Some(kunz.to_semigroup()?))
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Nearest integer to `num / den` for `den > 0`.
fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    let twice: BigInt = num * 2 + den;
    twice.div_floor(&(den * 2))
}

/// Pairwise size reduction of the lattice basis, then of the base point
/// against it, so small coefficients reach points near the origin.
fn reduce(mut x0: Vec<BigInt>, mut basis: Vec<Vec<BigInt>>) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
    let shrink = |v: &mut Vec<BigInt>, b: &[BigInt]| -> bool {
        let bb = dot(b, b);
        let vb = dot(v, b);
        if bb.is_zero() || BigInt::from(2) * vb.abs() <= bb {
            return false;
        }
        let q = round_div(&vb, &bb);
        for (vi, bi) in v.iter_mut().zip(b) {
            *vi -= &q * bi;
        }
        true
    };
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..basis.len() {
            for j in 0..basis.len() {
                if i != j {
                    let bj = basis[j].clone();
                    changed |= shrink(&mut basis[i], &bj);
                }
            }
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for b in &basis {
            changed |= shrink(&mut x0, b);
        }
    }
    (x0, basis)
}
