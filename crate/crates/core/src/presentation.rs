//! Minimal presentations of Kunz posets, outer Betti elements, face
//! dimension, and the m-centric minimal presentation of a numerical semigroup.
//!
//! Whenever a choice between factorizations is allowed, the lexicographically
//! largest one is taken. Poset trades therefore have the lex-larger side on
//! the left, and semigroup trades carry their multiplicity coordinate on the
//! left.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{rank, IntMatrix};
use crate::facetools::{on_face, Face, Position};
use crate::factorization::{Factorization, Trade};
use crate::kunzposet::{KunzPoset, NilElem};
use crate::semigroup::{KunzTuple, NumericalSemigroup};

/// A connected set of factorizations of `∞` whose every one-step predecessor
/// set is the full factorization set of a single poset element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OuterBetti {
    /// Members, lexicographically descending.
    pub members: Vec<Factorization>,
    /// The common group value `z̄` of every member.
    pub class: usize,
}

/// Rows `left - right` of a poset presentation, columns labeled by atoms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationMatrix {
    pub matrix: IntMatrix,
}

impl PresentationMatrix {
    pub fn rank(&self) -> usize {
        rank(&self.matrix)
    }
}

/// A trade whose multiplicity coordinate is an affine function
/// `ℓ(x) = Σ ell_coeffs[i] * x_{p_i} + ell_const` of the Kunz coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParametricTrade {
    /// Group value of both sides.
    pub class: usize,
    /// One coefficient per atom.
    pub ell_coeffs: Vec<i64>,
    pub ell_const: BigRational,
    /// Poset factorization paired with `ℓ(x)` copies of the multiplicity.
    pub left: Factorization,
    /// Multiplicity-free side.
    pub right: Factorization,
}

impl ParametricTrade {
    pub fn is_constant(&self) -> bool {
        self.ell_coeffs.iter().all(|&c| c == 0) && self.ell_const.is_zero()
    }
}

/// Components of the shared-support graph on `facts`, each sorted descending,
/// ordered by their largest member descending.
fn components(facts: &[Factorization]) -> Vec<Vec<Factorization>> {
    let mut comps: Vec<Vec<Factorization>> = Vec::new();
    let mut sorted: Vec<&Factorization> = facts.iter().collect();
    sorted.sort_by(|a, b| b.cmp(a));
    for z in sorted {
        let touching: Vec<usize> = comps
            .iter()
            .enumerate()
            .filter(|(_, c)| c.iter().any(|w| w.shares_support(z)))
            .map(|(i, _)| i)
            .collect();
        let mut merged = vec![z.clone()];
        for &i in touching.iter().rev() {
            merged.extend(comps.remove(i));
        }
        merged.sort_by(|a, b| b.cmp(a));
        comps.push(merged);
    }
    comps.sort_by(|a, b| b[0].cmp(&a[0]));
    comps
}

/// Minimal presentation of the poset: at each element whose factorization
/// graph has `c > 1` components, `c - 1` trades joining the first component
/// to each of the others.
pub fn min_pres_poset(p: &KunzPoset) -> Vec<Trade> {
    let mut trades = Vec::new();
    for &q in p.ground() {
        let comps = components(p.factorizations(q).expect("ground element"));
        for other in comps.iter().skip(1) {
            trades.push(Trade {
                at: q as u64,
                left: comps[0][0].clone(),
                right: other[0].clone(),
            });
        }
    }
    trades.sort();
    trades
}

/// Outer Betti elements: connected components of the candidate graph on
/// minimal factorizations of `∞` that satisfy the predecessor condition.
pub fn outer_betti(p: &KunzPoset) -> Vec<OuterBetti> {
    let k = p.k();
    let eval = |z: &Factorization| p.evaluate(z).expect("length k");

    // Candidates: factorizations of ∞ all of whose predecessors are finite.
    let mut candidates = BTreeSet::new();
    for &q in p.ground() {
        for z in p.factorizations(q).expect("ground element") {
            for i in 0..k {
                let c = z.plus_unit(i);
                if candidates.contains(&c) || !eval(&c).is_infinity() {
                    continue;
                }
                let minimal = c
                    .support()
                    .all(|j| !eval(&c.minus_unit(j).expect("in support")).is_infinity());
                if minimal {
                    candidates.insert(c);
                }
            }
        }
    }
    let vertices: Vec<Factorization> = candidates.into_iter().collect();

    // z ~ z' when z - e_i and z' - e_i factor the same element.
    let mut parent: Vec<usize> = (0..vertices.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut first_in_group: HashMap<(usize, NilElem), usize> = HashMap::new();
    for (v, z) in vertices.iter().enumerate() {
        for i in z.support() {
            let below = eval(&z.minus_unit(i).expect("in support"));
            match first_in_group.get(&(i, below)) {
                Some(&u) => {
                    let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                    parent[a] = b;
                }
                None => {
                    first_in_group.insert((i, below), v);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Factorization>> = BTreeMap::new();
    for (v, z) in vertices.iter().enumerate() {
        let r = find(&mut parent, v);
        groups.entry(r).or_default().push(z.clone());
    }

    let mut out = Vec::new();
    for (_, mut members) in groups {
        members.sort_by(|a, b| b.cmp(a));
        if satisfies_predecessor_condition(p, &members) {
            out.push(OuterBetti {
                class: p.group_value(&members[0]),
                members,
            });
        }
    }
    out.sort_by_key(|b| (b.class, Reverse(b.members[0].clone())));
    out
}

/// For each `i` in the support of `members`: `members - e_i` equals `Z_P(q)`
/// for a single element `q`.
fn satisfies_predecessor_condition(p: &KunzPoset, members: &[Factorization]) -> bool {
    let support: BTreeSet<usize> = members.iter().flat_map(|z| z.support()).collect();
    support.into_iter().all(|i| {
        let shifted: BTreeSet<Factorization> = members.iter().filter_map(|z| z.minus_unit(i)).collect();
        let targets: BTreeSet<NilElem> = shifted
            .iter()
            .map(|z| p.evaluate(z).expect("length k"))
            .collect();
        let Some(&NilElem::Class(q)) = targets.iter().next() else {
            return false;
        };
        if targets.len() != 1 {
            return false;
        }
        let full: BTreeSet<Factorization> =
            p.factorizations(q).expect("ground element").iter().cloned().collect();
        full == shifted
    })
}

pub fn betti_matrix(p: &KunzPoset) -> PresentationMatrix {
    let mut matrix = IntMatrix::new(p.atoms().to_vec()).expect("atoms are distinct");
    for t in min_pres_poset(p) {
        matrix
            .push_row(t.row().into_iter().map(BigInt::from).collect())
            .expect("row length k");
    }
    PresentationMatrix { matrix }
}

/// Dimension of the face of the Kunz polyhedron with this poset:
/// `k - rank(M_ρ)`.
pub fn dimension(p: &KunzPoset) -> usize {
    p.k() - betti_matrix(p).rank()
}

/// `|min_pres_poset| + |outer_betti|`, the size of a minimal presentation of
/// every numerical semigroup on the face.
pub fn presentation_cardinality(p: &KunzPoset) -> usize {
    min_pres_poset(p).len() + outer_betti(p).len()
}

/// Number of distinct m-centric minimal presentations the construction can
/// produce: spanning choices inside each disconnected `Z_P(q)` times one
/// factorization of each outer Betti element and of its class.
pub fn count_m_centric_presentations(p: &KunzPoset) -> Result<u128> {
    let overflow = || Error::Overflow("counting presentations");
    let mut total: u128 = 1;
    for &q in p.ground() {
        let comps = components(p.factorizations(q)?);
        if comps.len() < 2 {
            continue;
        }
        // Spanning trees on the components, edge (i, j) weighted s_i s_j.
        let n: u128 = comps.iter().map(|c| c.len() as u128).sum();
        let mut ways = n.checked_pow(comps.len() as u32 - 2).ok_or_else(overflow)?;
        for c in &comps {
            ways = ways.checked_mul(c.len() as u128).ok_or_else(overflow)?;
        }
        total = total.checked_mul(ways).ok_or_else(overflow)?;
    }
    for b in outer_betti(p) {
        let ways = (b.members.len() * p.factorizations(b.class)?.len()) as u128;
        total = total.checked_mul(ways).ok_or_else(overflow)?;
    }
    Ok(total)
}

/// For each atom, the index of the generator with that residue.
fn atom_generator_index(p: &KunzPoset, gens: &[u64]) -> Vec<usize> {
    let m = gens[0];
    p.atoms()
        .iter()
        .map(|&a| {
            gens.iter()
                .position(|&g| g % m == a as u64 && g != m)
                .expect("atoms are residues of minimal generators")
        })
        .collect()
}

fn to_generator_order(z: &Factorization, first: u32, map: &[usize], len: usize) -> Factorization {
    let mut out = vec![0u32; len];
    out[0] = first;
    for (i, &e) in z.as_slice().iter().enumerate() {
        out[map[i]] = e;
    }
    Factorization(out)
}

fn value(z: &Factorization, weights: &[u64]) -> u64 {
    z.as_slice().iter().zip(weights).map(|(&e, &w)| u64::from(e) * w).sum()
}

/// m-centric minimal presentation of `s`, trades sorted by `(at, left)`.
pub fn m_centric_presentation(s: &NumericalSemigroup) -> Vec<Trade> {
    let p = KunzPoset::from_apery(&s.apery());
    let gens = s.generators();
    let m = s.multiplicity();
    let map = atom_generator_index(&p, gens);
    let atom_gens: Vec<u64> = map.iter().map(|&j| gens[j]).collect();

    let mut trades: Vec<Trade> = min_pres_poset(&p)
        .into_iter()
        .map(|t| Trade {
            at: s.apery_set()[t.at as usize],
            left: to_generator_order(&t.left, 0, &map, gens.len()),
            right: to_generator_order(&t.right, 0, &map, gens.len()),
        })
        .collect();
    for b in outer_betti(&p) {
        let z_prime = &b.members[0];
        let z = &p.factorizations(b.class).expect("ground element")[0];
        let at = value(z_prime, &atom_gens);
        let c = (at - value(z, &atom_gens)) / m;
        trades.push(Trade {
            at,
            left: to_generator_order(z, c as u32, &map, gens.len()),
            right: to_generator_order(z_prime, 0, &map, gens.len()),
        });
    }
    trades.sort();
    trades
}

/// Trades valid simultaneously for every numerical semigroup on the face of
/// `p`: constant trades from the poset presentation, plus one trade per outer
/// Betti element whose multiplicity count is affine in the Kunz coordinates.
pub fn parametric_presentation(p: &KunzPoset) -> Result<Vec<ParametricTrade>> {
    p.require_trivial_subgroup()?;
    let k = p.k();
    let m = BigInt::from(p.m());
    let mut out: Vec<ParametricTrade> = min_pres_poset(p)
        .into_iter()
        .map(|t| ParametricTrade {
            class: t.at as usize,
            ell_coeffs: vec![0; k],
            ell_const: BigRational::zero(),
            left: t.left,
            right: t.right,
        })
        .collect();
    for b in outer_betti(p) {
        let right = b.members[0].clone();
        let left = p.factorizations(b.class)?[0].clone();
        let ell_coeffs = right.difference(&left);
        let shift: i64 = ell_coeffs
            .iter()
            .zip(p.atoms())
            .map(|(&c, &a)| c * a as i64)
            .sum();
        out.push(ParametricTrade {
            class: b.class,
            ell_coeffs,
            ell_const: BigRational::new(BigInt::from(shift), m.clone()),
            left,
            right,
        });
    }
    Ok(out)
}

/// Specializes parametric trades at the Kunz tuple of a semigroup on the face,
/// producing semigroup trades in generator order.
pub fn evaluate_parametric(p: &KunzPoset, trades: &[ParametricTrade], x: &KunzTuple) -> Result<Vec<Trade>> {
    p.require_trivial_subgroup()?;
    if x.m() != p.m() {
        return Err(Error::DimensionMismatch {
            expected: p.m() - 1,
            found: x.values().len(),
        });
    }
    if !x.has_full_multiplicity() {
        return Err(Error::NotOnFace("a Kunz coordinate is 0, so m is not the multiplicity".into()));
    }
    let face = Face::of_poset(p)?;
    match on_face(&face, x.to_apery().values())? {
        Position::Interior => {}
        other => {
            return Err(Error::NotOnFace(format!(
                "tuple {:?} is {other:?} with respect to the face",
                x.values()
            )))
        }
    }

    let m = p.m() as u64;
    let atom_gens: Vec<u64> = p.atoms().iter().map(|&a| m * x.get(a) + a as u64).collect();
    let mut gens: Vec<u64> = std::iter::once(m).chain(atom_gens.iter().copied()).collect();
    gens.sort_unstable();
    let map: Vec<usize> = atom_gens
        .iter()
        .map(|g| gens.iter().position(|h| h == g).expect("present"))
        .collect();

    let mut out = Vec::with_capacity(trades.len());
    for t in trades {
        let mut ell = t.ell_const.clone();
        for (&c, &a) in t.ell_coeffs.iter().zip(p.atoms()) {
            ell += BigRational::from_integer(BigInt::from(c) * BigInt::from(x.get(a)));
        }
        if !ell.is_integer() || ell < BigRational::zero() {
            return Err(Error::NotOnFace(format!("multiplicity count {ell} is not a natural number")));
        }
        let ell = ell
            .to_integer()
            .to_u32()
            .ok_or(Error::Overflow("evaluating a parametric trade"))?;
        out.push(Trade {
            at: value(&t.right, &atom_gens),
            left: to_generator_order(&t.left, ell, &map, gens.len()),
            right: to_generator_order(&t.right, 0, &map, gens.len()),
        });
    }
    out.sort();
    Ok(out)
}

/// Set of presentation cardinalities over all faces met by Kunz tuples in
/// the box `1 <= x_i <= max_coord`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CardinalitySpectrum {
    pub m: usize,
    pub max_coord: u64,
    pub cardinalities: BTreeSet<usize>,
    pub faces: usize,
    pub points: usize,
}

pub fn enumerate_cardinalities(m: usize, max_coord: u64) -> Result<CardinalitySpectrum> {
    if m < 2 {
        return Err(Error::InvalidInput("m must be at least 2".into()));
    }
    if max_coord < 1 {
        return Err(Error::InvalidInput("max-coord must be at least 1".into()));
    }
    let mut x = vec![1u64; m - 1];
    let mut seen: BTreeSet<Vec<Vec<i64>>> = BTreeSet::new();
    let mut cardinalities = BTreeSet::new();
    let mut points = 0;
    loop {
        if let Ok(kunz) = KunzTuple::new(m, x.clone()) {
            points += 1;
            let apery = kunz.to_apery();
            let face = Face::of_apery(&apery);
            if seen.insert(face.equalities().to_i64_rows()) {
                cardinalities.insert(presentation_cardinality(&KunzPoset::from_apery(&apery)));
            }
        }
        // Odometer step over the box.
        let mut i = 0;
        loop {
            if i == x.len() {
                return Ok(CardinalitySpectrum {
                    m,
                    max_coord,
                    cardinalities,
                    faces: seen.len(),
                    points,
                });
            }
            if x[i] < max_coord {
                x[i] += 1;
                break;
            }
            x[i] = 1;
            i += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: &[u32]) -> Factorization {
        Factorization(v.to_vec())
    }

    fn poset_of(g: &[u64]) -> KunzPoset {
        KunzPoset::from_apery(&NumericalSemigroup::new(g).unwrap().apery())
    }

    fn members(p: &KunzPoset) -> BTreeSet<BTreeSet<Factorization>> {
        outer_betti(p)
            .into_iter()
            .map(|b| b.members.into_iter().collect())
            .collect()
    }

    fn set(items: &[&[u32]]) -> BTreeSet<Factorization> {
        items.iter().map(|v| f(v)).collect()
    }

    #[test]
    fn poset_presentation_6789() {
        let p = poset_of(&[6, 7, 8, 9]);
        assert_eq!(
            min_pres_poset(&p),
            vec![Trade {
                at: 4,
                left: f(&[1, 0, 1]),
                right: f(&[0, 2, 0])
            }]
        );
    }

    #[test]
    fn poset_presentation_figure_c_is_empty() {
        let p = poset_of(&[8, 9, 11, 12, 15]);
        assert!(min_pres_poset(&p).is_empty());
        assert_eq!(dimension(&p), 4);
        assert_eq!(betti_matrix(&p).matrix.nrows(), 0);
    }

    #[test]
    fn outer_betti_6789() {
        let p = poset_of(&[6, 7, 8, 9]);
        let expected: BTreeSet<_> = [set(&[&[2, 0, 0]]), set(&[&[1, 1, 0]]), set(&[&[0, 0, 2]])].into();
        assert_eq!(members(&p), expected);
    }

    #[test]
    fn outer_betti_9_20_30_35() {
        let p = poset_of(&[9, 20, 30, 35]);
        let expected: BTreeSet<_> = [
            set(&[&[0, 1, 1]]),
            set(&[&[2, 0, 1]]),
            set(&[&[1, 2, 0], &[4, 0, 0]]),
            set(&[&[3, 1, 0], &[1, 0, 2], &[0, 3, 0]]),
        ]
        .into();
        assert_eq!(members(&p), expected);
        for b in outer_betti(&p) {
            for z in &b.members {
                assert_eq!(p.group_value(z), b.class);
                assert!(p.evaluate(z).unwrap().is_infinity());
            }
        }
        assert_eq!(presentation_cardinality(&p), 6);
        assert_eq!(count_m_centric_presentations(&p).unwrap(), 6);
    }

    #[test]
    fn outer_betti_rejects_partial_component() {
        let p = poset_of(&[11, 60, 72, 84, 96, 108]);
        assert!(outer_betti(&p)
            .iter()
            .all(|b| !b.members.contains(&f(&[2, 0, 1, 0, 0]))));
        assert_eq!(p.factorizations(1).unwrap(), &[f(&[1, 0, 1, 0, 0]), f(&[0, 2, 0, 0, 0])]);
    }

    #[test]
    fn med_poset_cardinality() {
        let p = poset_of(&[4, 5, 6, 7]);
        assert_eq!(min_pres_poset(&p).len(), 0);
        assert_eq!(outer_betti(&p).len(), 6);
        assert_eq!(presentation_cardinality(&p), 6);
        assert_eq!(dimension(&p), 3);
    }

    #[test]
    fn m_centric_9_20_30_35() {
        let rho = m_centric_presentation(&NumericalSemigroup::new(&[9, 20, 30, 35]).unwrap());
        assert_eq!(rho.len(), 6);
        let has = |l: &[u32], r: &[u32]| rho.iter().any(|t| t.left == f(l) && t.right == f(r));
        assert!(has(&[5, 1, 0, 0], &[0, 0, 1, 1]));
        assert!(has(&[10, 0, 0, 0], &[0, 3, 1, 0]));
        assert!(has(&[0, 3, 0, 0], &[0, 0, 2, 0]));
        for t in &rho {
            assert_eq!(t.right.as_slice()[0], 0);
        }
    }

    #[test]
    fn m_centric_small_cases() {
        let rho = m_centric_presentation(&NumericalSemigroup::new(&[2, 3]).unwrap());
        assert_eq!(
            rho,
            vec![Trade {
                at: 6,
                left: f(&[3, 0]),
                right: f(&[0, 2])
            }]
        );
        let rho = m_centric_presentation(&NumericalSemigroup::new(&[6, 7, 8, 9]).unwrap());
        assert_eq!(rho.len(), 4);
        assert!(rho
            .iter()
            .any(|t| t.at == 16 && t.left == f(&[0, 1, 0, 1]) && t.right == f(&[0, 0, 2, 0])));
    }

    #[test]
    fn m_centric_reorders_generators_by_residue() {
        // Residues of 7 and 11 mod 5 are 2 and 1: atom order differs from generator order.
        let s = NumericalSemigroup::new(&[5, 7, 11]).unwrap();
        let rho = m_centric_presentation(&s);
        let weights = s.generators();
        for t in &rho {
            assert_eq!(value(&t.left, weights), t.at);
            assert_eq!(value(&t.right, weights), t.at);
        }
        assert_eq!(rho.len(), s.minimal_presentation_classic().len());
    }

    #[test]
    fn parametric_example() {
        let s = NumericalSemigroup::new(&[9, 20, 30, 35]).unwrap();
        let p = KunzPoset::from_apery(&s.apery());
        let trades = parametric_presentation(&p).unwrap();
        let x = s.kunz_tuple();
        assert_eq!(x.values(), &[6, 2, 3, 4, 5, 6, 7, 3]);
        let b1 = trades.iter().find(|t| t.right == f(&[0, 1, 1])).unwrap();
        assert_eq!(b1.ell_coeffs, vec![-1, 1, 1]);
        assert_eq!(b1.ell_const, BigRational::new(9.into(), 9.into()));
        assert_eq!(evaluate_parametric(&p, &trades, &x).unwrap(), m_centric_presentation(&s));
        let evaluated = evaluate_parametric(&p, &trades, &x).unwrap();
        assert!(evaluated
            .iter()
            .any(|t| t.left == f(&[5, 1, 0, 0]) && t.right == f(&[0, 0, 1, 1])));
    }

    #[test]
    fn parametric_rejects_points_off_the_face() {
        let p = poset_of(&[6, 7, 8, 9]);
        let trades = parametric_presentation(&p).unwrap();
        // <6,7,8,9,10,11> lies in the interior, not on this face.
        let med = KunzTuple::new(6, vec![1, 1, 1, 1, 1]).unwrap();
        assert!(matches!(evaluate_parametric(&p, &trades, &med), Err(Error::NotOnFace(_))));
    }

    #[test]
    fn spectrum_small() {
        let s = enumerate_cardinalities(3, 4).unwrap();
        // m = 3: <3,4,5> has 3 relations, <3,a> has 1, <3,a,b> otherwise 3.
        assert!(s.cardinalities.is_subset(&[1, 3].into()));
    }
}
