//! Kunz posets and their nilsemigroup structure.
//!
//! A [`KunzPoset`] lives on the quotient `Z_m / H` of a cyclic group by the
//! Kunz subgroup `H`; elements are represented by the smallest non-negative
//! residue in their coset. Adding the nil element [`NilElem::Infinity`] turns
//! the poset into the Kunz nilsemigroup, whose operation is
//! [`KunzPoset::nil_add`].

use std::collections::BTreeSet;
use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{IntMatrix, RowSpace};
use crate::factorization::Factorization;
use crate::semigroup::AperyTuple;

/// A poset element or the nil `∞`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NilElem {
    Class(usize),
    Infinity,
}

impl NilElem {
    pub fn is_infinity(self) -> bool {
        matches!(self, NilElem::Infinity)
    }

    pub fn class(self) -> Option<usize> {
        match self {
            NilElem::Class(c) => Some(c),
            NilElem::Infinity => None,
        }
    }
}

impl fmt::Display for NilElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NilElem::Class(c) => write!(f, "{c}"),
            NilElem::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for NilElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NilElem::Class(c) => s.serialize_u64(*c as u64),
            NilElem::Infinity => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KunzPoset {
    m: usize,
    subgroup: Vec<usize>,
    /// residue -> coset representative
    class_of: Vec<usize>,
    ground: Vec<usize>,
    /// `leq[a * m + b]`, meaningful for representatives only
    leq: Vec<bool>,
    atoms: Vec<usize>,
    /// factorizations per representative, lexicographically descending
    facts: Vec<Vec<Factorization>>,
}

/// Coset representatives for the subgroup `h` of `Z_m`.
fn coset_classes(m: usize, subgroup: &[usize]) -> Vec<usize> {
    (0..m)
        .map(|r| subgroup.iter().map(|&h| (r + h) % m).min().expect("0 in subgroup"))
        .collect()
}

fn is_subgroup(m: usize, h: &[usize]) -> bool {
    h.contains(&0) && h.iter().all(|&a| h.iter().all(|&b| h.contains(&((a + b) % m))))
}

impl KunzPoset {
    /// Shared construction: `rel(a, b)` decides `a ⪯ b` for distinct nonzero
    /// representatives. The result is checked against the poset axioms and
    /// the atom-labeling property of Kunz posets; violations are reported as
    /// plain strings for the caller to wrap.
    fn build(
        m: usize,
        subgroup: Vec<usize>,
        mut rel: impl FnMut(usize, usize) -> bool,
    ) -> std::result::Result<Self, String> {
        let class_of = coset_classes(m, &subgroup);
        let ground: Vec<usize> = (0..m).filter(|&r| class_of[r] == r).collect();
        let mut leq = vec![false; m * m];
        for &a in &ground {
            leq[a * m + a] = true;
            leq[a] = true;
            for &b in &ground {
                if a != 0 && b != 0 && a != b && rel(a, b) {
                    leq[a * m + b] = true;
                }
            }
        }
        let mut poset = Self {
            m,
            subgroup,
            class_of,
            ground,
            leq,
            atoms: Vec::new(),
            facts: Vec::new(),
        };
        poset.validate()?;
        poset.atoms = poset
            .ground
            .iter()
            .copied()
            .filter(|&b| b != 0 && poset.covers_pair(0, b))
            .collect();
        poset.validate_cover_labels()?;
        poset.fill_factorizations();
        Ok(poset)
    }

    fn validate(&self) -> std::result::Result<(), String> {
        let g = &self.ground;
        for &a in g {
            for &b in g {
                if a != b && self.le(a, b) && self.le(b, a) {
                    return Err(format!("{a} ⪯ {b} and {b} ⪯ {a} (antisymmetry fails)"));
                }
                if !self.le(a, b) {
                    continue;
                }
                for &c in g {
                    if self.le(b, c) && !self.le(a, c) {
                        return Err(format!("{a} ⪯ {b} ⪯ {c} but not {a} ⪯ {c} (transitivity fails)"));
                    }
                }
                // a ⪯ b encodes x_a + x_{b-a} = x_b, which is symmetric in a and b - a.
                let d = self.sub(b, a);
                if !self.le(d, b) {
                    return Err(format!("{a} ⪯ {b} but not {d} ⪯ {b}"));
                }
            }
        }
        Ok(())
    }

    fn validate_cover_labels(&self) -> std::result::Result<(), String> {
        for &a in &self.ground {
            for &b in &self.ground {
                if a == b || !self.le(a, b) {
                    continue;
                }
                let is_cover = self.covers_pair(a, b);
                let is_atom = self.atoms.contains(&self.sub(b, a));
                if is_cover != is_atom {
                    return Err(format!(
                        "{a} ⪯ {b}: cover relation {is_cover} but difference is atom {is_atom}"
                    ));
                }
            }
        }
        Ok(())
    }

    fn fill_factorizations(&mut self) {
        let k = self.atoms.len();
        let mut facts: Vec<Vec<Factorization>> = vec![Vec::new(); self.m];
        facts[0] = vec![Factorization::zero(k)];
        for p in self.linear_extension() {
            if p == 0 {
                continue;
            }
            let mut set = BTreeSet::new();
            for (i, &atom) in self.atoms.iter().enumerate() {
                let q = self.sub(p, atom);
                if q != p && self.le(q, p) {
                    for z in &facts[q] {
                        set.insert(z.plus_unit(i));
                    }
                }
            }
            facts[p] = set.into_iter().rev().collect();
        }
        self.facts = facts;
    }

    /// Kunz poset of a numerical semigroup: `i ⪯ j` iff `a_i + a_{j-i} = a_j`.
    pub fn from_apery(a: &AperyTuple) -> Self {
        let m = a.m();
        Self::build(m, vec![0], |i, j| a.get(i) + a.get((j + m - i) % m) == a.get(j))
            .expect("Apéry tuples always give Kunz posets")
    }

    /// Kunz poset of the face cut out by the rows of `h`, homogeneous
    /// equalities in group-cone coordinates with columns labeled `1..m`.
    pub fn from_face(m: usize, h: &IntMatrix) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput("m must be at least 2".into()));
        }
        if h.labels() != (1..m).collect::<Vec<_>>().as_slice() {
            return Err(Error::DimensionMismatch {
                expected: m - 1,
                found: h.ncols(),
            });
        }
        let span = RowSpace::new(h);
        let unit = |terms: &[(usize, i64)]| -> Vec<BigInt> {
            let mut v = vec![BigInt::zero(); m - 1];
            for &(r, c) in terms {
                v[r - 1] += BigInt::from(c);
            }
            v
        };
        let mut subgroup = vec![0];
        for r in 1..m {
            if span.contains(&unit(&[(r, 1)]))? {
                subgroup.push(r);
            }
        }
        if !is_subgroup(m, &subgroup) {
            return Err(Error::NotAFace(format!(
                "coordinates forced to zero {subgroup:?} do not form a subgroup"
            )));
        }
        let mut failure = None;
        let poset = Self::build(m, subgroup, |a, b| {
            let d = (b + m - a) % m;
            match span.contains(&unit(&[(a, 1), (d, 1), (b, -1)])) {
                Ok(c) => c,
                Err(e) => {
                    failure = Some(e);
                    false
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        poset.map_err(Error::NotAFace)
    }

    /// Poset given by its cover relations `(a, b)` meaning `b` covers `a`,
    /// optionally on a quotient by `subgroup`.
    pub fn from_covers(m: usize, covers: &[(usize, usize)], subgroup: Option<Vec<usize>>) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidInput("m must be at least 2".into()));
        }
        let mut subgroup = subgroup.unwrap_or_else(|| vec![0]);
        subgroup.sort_unstable();
        subgroup.dedup();
        if subgroup.iter().any(|&h| h >= m) || !is_subgroup(m, &subgroup) {
            return Err(Error::InvalidCovers(format!("{subgroup:?} is not a subgroup of Z_{m}")));
        }
        let class_of = coset_classes(m, &subgroup);
        for &(a, b) in covers {
            if a >= m || b >= m || class_of[a] != a || class_of[b] != b || a == b {
                return Err(Error::InvalidCovers(format!(
                    "({a}, {b}) is not a pair of distinct coset representatives"
                )));
            }
        }
        // Transitive closure over the given covers.
        let mut reach = vec![false; m * m];
        for &(a, b) in covers {
            reach[a * m + b] = true;
        }
        for k in 0..m {
            for i in 0..m {
                if reach[i * m + k] {
                    for j in 0..m {
                        if reach[k * m + j] {
                            reach[i * m + j] = true;
                        }
                    }
                }
            }
        }
        let poset = Self::build(m, subgroup, |a, b| reach[a * m + b]).map_err(Error::InvalidCovers)?;
        for &(a, b) in covers {
            if !poset.covers_pair(a, b) {
                return Err(Error::InvalidCovers(format!("{b} does not cover {a}")));
            }
        }
        Ok(poset)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    pub fn has_trivial_subgroup(&self) -> bool {
        self.subgroup.len() == 1
    }

    pub fn ground(&self) -> &[usize] {
        &self.ground
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    /// Number of atoms `k`.
    pub fn k(&self) -> usize {
        self.atoms.len()
    }

    pub fn class(&self, residue: usize) -> usize {
        self.class_of[residue % self.m]
    }

    fn le(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.m + b]
    }

    fn sub(&self, b: usize, a: usize) -> usize {
        self.class_of[(b + self.m - a) % self.m]
    }

    /// `a ⪯ b` for arbitrary residues.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.le(self.class(a), self.class(b))
    }

    fn covers_pair(&self, a: usize, b: usize) -> bool {
        a != b
            && self.le(a, b)
            && !self
                .ground
                .iter()
                .any(|&c| c != a && c != b && self.le(a, c) && self.le(c, b))
    }

    /// Cover relations `(a, b, b - a)` with `b` covering `a`.
    pub fn covers(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for &a in &self.ground {
            for &b in &self.ground {
                if self.covers_pair(a, b) {
                    out.push((a, b, self.sub(b, a)));
                }
            }
        }
        out
    }

    /// Ground elements ordered by the size of their down-set, ties by value.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order = self.ground.clone();
        order.sort_by_key(|&p| (self.ground.iter().filter(|&&q| self.le(q, p)).count(), p));
        order
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        self.ground
            .iter()
            .copied()
            .filter(|&a| !self.ground.iter().any(|&b| b != a && self.le(a, b)))
            .collect()
    }

    /// `a ⊕ b`: the group sum when it stays above both summands, else `∞`.
    pub fn nil_add(&self, a: NilElem, b: NilElem) -> NilElem {
        match (a, b) {
            (NilElem::Class(a), NilElem::Class(b)) => {
                let (a, b) = (self.class(a), self.class(b));
                let s = self.class(a + b);
                if self.le(a, s) && self.le(b, s) {
                    NilElem::Class(s)
                } else {
                    NilElem::Infinity
                }
            }
            _ => NilElem::Infinity,
        }
    }

    /// `φ(z) = z_1 p_1 ⊕ ... ⊕ z_k p_k`.
    pub fn evaluate(&self, z: &Factorization) -> Result<NilElem> {
        if z.len() != self.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                found: z.len(),
            });
        }
        let mut acc = NilElem::Class(0);
        for (i, &e) in z.as_slice().iter().enumerate() {
            for _ in 0..e {
                acc = self.nil_add(acc, NilElem::Class(self.atoms[i]));
                if acc.is_infinity() {
                    return Ok(acc);
                }
            }
        }
        Ok(acc)
    }

    /// `Z_P(p)`, sorted lexicographically descending.
    pub fn factorizations(&self, p: usize) -> Result<&[Factorization]> {
        if p >= self.m {
            return Err(Error::NotInGround(p));
        }
        Ok(&self.facts[self.class(p)])
    }

    /// The group element `z̄ = Σ z_i p_i`, defined even when `φ(z) = ∞`.
    pub fn group_value(&self, z: &Factorization) -> usize {
        let s = z
            .as_slice()
            .iter()
            .zip(&self.atoms)
            .map(|(&e, &p)| e as usize * p)
            .sum::<usize>();
        self.class(s)
    }

    /// Atoms plus the multiplicity.
    pub fn embedding_dimension(&self) -> Result<usize> {
        self.require_trivial_subgroup()?;
        Ok(self.k() + 1)
    }

    /// Number of maximal elements (the type of every semigroup on the face).
    pub fn type_count(&self) -> Result<usize> {
        self.require_trivial_subgroup()?;
        Ok(self.maximal_elements().len())
    }

    pub(crate) fn require_trivial_subgroup(&self) -> Result<()> {
        if self.has_trivial_subgroup() {
            Ok(())
        } else {
            Err(Error::NotSemigroupFace {
                subgroup: self.subgroup.clone(),
            })
        }
    }

    /// Hasse diagram in DOT, one edge per cover labeled by its atom.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph kunz_poset {\n  rankdir=BT;\n");
        for &g in &self.ground {
            let _ = writeln!(out, "  {g} [label=\"{g}\"];");
        }
        for (a, b, label) in self.covers() {
            let _ = writeln!(out, "  {a} -> {b} [label=\"+{label}\"];");
        }
        out.push_str("}\n");
        out
    }
}

/// Convenience for building the `i`-th unit row of a hyperplane matrix.
pub(crate) fn facet_row(m: usize, i: usize, j: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::zero(); m - 1];
    row[i - 1] += BigInt::one();
    row[j - 1] += BigInt::one();
    let s = (i + j) % m;
    row[s - 1] -= BigInt::one();
    row
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semigroup::NumericalSemigroup;

    fn f(v: &[u32]) -> Factorization {
        Factorization(v.to_vec())
    }

    fn poset_of(g: &[u64]) -> KunzPoset {
        KunzPoset::from_apery(&NumericalSemigroup::new(g).unwrap().apery())
    }

    fn figure_b() -> KunzPoset {
        let h = IntMatrix::from_rows(
            (1..8).collect(),
            &[
                vec![0i64, 0, 2, 0, 0, -1, 0],
                vec![0, -1, 1, 0, 0, 0, 1],
                vec![-1, 0, 0, 1, 1, 0, 0],
                vec![0, 0, 0, 0, 0, -1, 2],
                vec![-1, 0, 1, 0, 0, 1, 0],
                vec![-1, 1, 0, 0, 0, 0, 1],
            ],
        )
        .unwrap();
        KunzPoset::from_face(8, &h).unwrap()
    }

    #[test]
    fn poset_of_6789() {
        let p = poset_of(&[6, 7, 8, 9]);
        assert_eq!(p.atoms(), &[1, 2, 3]);
        let mut rel = Vec::new();
        for a in 1..6 {
            for b in 1..6 {
                if a != b && p.leq(a, b) {
                    rel.push((a, b));
                }
            }
        }
        assert_eq!(rel, vec![(1, 4), (2, 4), (2, 5), (3, 4), (3, 5)]);
        assert_eq!(p, poset_of(&[6, 19, 26, 33]));
    }

    #[test]
    fn med_poset_is_antichain() {
        let p = poset_of(&[5, 6, 7, 8, 9]);
        assert_eq!(p.atoms(), &[1, 2, 3, 4]);
        assert_eq!(p.maximal_elements(), vec![1, 2, 3, 4]);
        assert_eq!(p.covers().len(), 4);
    }

    #[test]
    fn face_poset_figure_b() {
        let p = figure_b();
        assert!(p.has_trivial_subgroup());
        assert_eq!(p.atoms(), &[3, 4, 5, 7]);
        assert_eq!(p.factorizations(1).unwrap(), &[f(&[3, 0, 0, 0]), f(&[1, 0, 0, 2]), f(&[0, 1, 1, 0])]);
        assert_eq!(p.factorizations(6).unwrap(), &[f(&[2, 0, 0, 0]), f(&[0, 0, 0, 2])]);
        assert_eq!(p.factorizations(2).unwrap(), &[f(&[1, 0, 0, 1])]);
        assert_eq!(p.evaluate(&f(&[0, 1, 1, 0])).unwrap(), NilElem::Class(1));
        assert_eq!(p.evaluate(&f(&[1, 1, 0, 0])).unwrap(), NilElem::Infinity);
        assert_eq!(p.evaluate(&f(&[0, 0, 0, 0])).unwrap(), NilElem::Class(0));
    }

    #[test]
    fn face_poset_matches_semigroup_poset() {
        let h = IntMatrix::from_rows(
            (1..6).collect(),
            &[vec![0i64, 1, 1, 0, -1], vec![1, 0, 1, -1, 0], vec![0, 2, 0, -1, 0]],
        )
        .unwrap();
        assert_eq!(KunzPoset::from_face(6, &h).unwrap(), poset_of(&[6, 7, 8, 9]));
    }

    #[test]
    fn face_with_nontrivial_subgroup() {
        // x_1 + x_2 = x_3 and x_2 + x_3 = x_1 force x_2 = 0 and x_1 = x_3.
        let h = IntMatrix::from_rows((1..4).collect(), &[vec![1i64, 1, -1], vec![-1, 1, 1]]).unwrap();
        let p = KunzPoset::from_face(4, &h).unwrap();
        assert_eq!(p.subgroup(), &[0, 2]);
        assert_eq!(p.ground(), &[0, 1]);
        assert_eq!(p.atoms(), &[1]);
        assert_eq!(p.class(3), 1);
        assert!(matches!(p.type_count(), Err(Error::NotSemigroupFace { .. })));

        // Adding 2x_1 = x_2 and 2x_3 = x_2 collapses everything to the apex.
        let apex = IntMatrix::from_rows(
            (1..4).collect(),
            &[vec![2i64, -1, 0], vec![0, -1, 2], vec![1, 1, -1], vec![-1, 1, 1]],
        )
        .unwrap();
        let p = KunzPoset::from_face(4, &apex).unwrap();
        assert_eq!(p.subgroup(), &[0, 1, 2, 3]);
        assert_eq!(p.ground(), &[0]);
    }

    #[test]
    fn non_face_rejected() {
        // 2x_1 = x_2 and 2x_2 = x_4 without x_1 + x_3 = x_4: 1 ⪯ 2 ⪯ 4 but not 1 ⪯ 4.
        let h = IntMatrix::from_rows((1..5).collect(), &[vec![2i64, -1, 0, 0], vec![0, 2, 0, -1]]).unwrap();
        assert!(matches!(KunzPoset::from_face(5, &h), Err(Error::NotAFace(_))));
    }

    #[test]
    fn nil_add_examples() {
        let p = poset_of(&[6, 7, 8, 9]);
        let c = NilElem::Class;
        assert_eq!(p.nil_add(c(2), c(3)), c(5));
        assert_eq!(p.nil_add(c(1), c(2)), NilElem::Infinity);
        for a in 0..6 {
            assert_eq!(p.nil_add(c(0), c(a)), c(a));
            assert_eq!(p.nil_add(c(a), NilElem::Infinity), NilElem::Infinity);
        }
    }

    #[test]
    fn factorization_examples() {
        let p = poset_of(&[6, 7, 8, 9]);
        assert_eq!(p.factorizations(4).unwrap(), &[f(&[1, 0, 1]), f(&[0, 2, 0])]);
        assert_eq!(p.factorizations(0).unwrap(), &[f(&[0, 0, 0])]);
        assert_eq!(p.factorizations(6), Err(Error::NotInGround(6)));
    }

    #[test]
    fn embedding_dimension_and_type() {
        let p = poset_of(&[6, 7, 8, 9]);
        assert_eq!(p.embedding_dimension().unwrap(), 4);
        assert_eq!(p.type_count().unwrap(), 2);
        assert_eq!(p.maximal_elements(), vec![4, 5]);

        let c = poset_of(&[8, 9, 11, 12, 15]);
        assert_eq!(c.embedding_dimension().unwrap(), 5);
        // 7 is an atom with nothing above it.
        assert_eq!(c.maximal_elements(), vec![2, 5, 6, 7]);
        assert_eq!(c.type_count().unwrap(), 4);

        let med = poset_of(&[4, 5, 6, 7]);
        assert_eq!(med.embedding_dimension().unwrap(), 4);
        assert_eq!(med.type_count().unwrap(), 3);
    }

    #[test]
    fn covers_round_trip() {
        let p = figure_b();
        let covers: Vec<(usize, usize)> = p.covers().iter().map(|&(a, b, _)| (a, b)).collect();
        assert_eq!(KunzPoset::from_covers(8, &covers, None).unwrap(), p);
        for (a, b, label) in p.covers() {
            assert!(p.atoms().contains(&label));
            assert_eq!((a + label) % 8, b);
        }
    }

    #[test]
    fn bad_covers_rejected() {
        // (0, 2) is implied by 0 < 1 < 2, so it is not a cover.
        assert!(KunzPoset::from_covers(3, &[(0, 1), (1, 2), (0, 2)], None).is_err());
        assert!(KunzPoset::from_covers(4, &[(0, 5)], None).is_err());
    }

    #[test]
    fn dot_output_labels_edges() {
        let dot = poset_of(&[6, 7, 8, 9]).to_dot();
        assert!(dot.contains("2 -> 5 [label=\"+3\"]"));
        assert!(dot.contains("0 -> 1 [label=\"+1\"]"));
    }
}
