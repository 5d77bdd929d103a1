//! Sparse integer vectors and cokernels of large sparse relation matrices.
//!
//! The bar-resolution differentials are tall, sparse, and full of `±1`
//! entries. [`Cokernel`] first eliminates generators against unit
//! coefficients (an abelian Tietze reduction), then finishes the small dense
//! remainder with a Smith decomposition. The elimination log doubles as the
//! coordinate map used to identify classes in the cokernel.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{smith_normal_form, AbelianGroupStructure, IntMatrix, Smith};

/// Sparse integer vector: strictly increasing indices, no stored zeros.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SparseVec {
    entries: Vec<(usize, BigInt)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Builds from unordered `(index, value)` pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, BigInt)>) -> Self {
        pairs.sort_by_key(|p| p.0);
        let mut entries: Vec<(usize, BigInt)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += v,
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn from_dense(v: &[BigInt]) -> Self {
        SparseVec {
            entries: v
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, BigInt)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&BigInt> {
        self.entries
            .binary_search_by_key(&index, |p| p.0)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// `self + c · other`
    pub fn add_scaled(&self, c: &BigInt, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, c * y));
                        b.next();
                    } else {
                        let s = x + c * y;
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, c * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn scaled(&self, c: &BigInt) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect() }
    }
}

/// Column-major sparse matrix.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    rows: usize,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.entries.last().map_or(true, |e| e.0 < rows)));
        SparseMatrix { rows, columns }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[SparseVec] {
        &self.columns
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.columns.len());
        let mut out = vec![BigInt::zero(); self.rows];
        for (c, x) in self.columns.iter().zip(v) {
            if x.is_zero() {
                continue;
            }
            for (i, a) in &c.entries {
                out[*i] += a * x;
            }
        }
        out
    }

    pub fn mul_sparse(&self, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::new();
        for (j, x) in &v.entries {
            acc = acc.add_scaled(x, &self.columns[*j]);
        }
        acc
    }

    /// `self · other`, column by column.
    pub fn compose(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols(), other.rows);
        SparseMatrix {
            rows: self.rows,
            columns: other.columns.iter().map(|c| self.mul_sparse(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(SparseVec::is_empty)
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.columns.len());
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in &c.entries {
                m[(*i, j)] = v.clone();
            }
        }
        m
    }

    pub fn from_dense(m: &IntMatrix) -> Self {
        SparseMatrix {
            rows: m.rows(),
            columns: (0..m.cols()).map(|j| SparseVec::from_dense(&m.column(j))).collect(),
        }
    }
}

/// `e_pivot ≡ Σ cₖ eₖ` in the cokernel.
#[derive(Clone, Debug)]
struct Substitution {
    pivot: usize,
    combination: Vec<(usize, BigInt)>,
}

/// The cokernel `Z^ambient / im(relations)` of a sparse relation matrix,
/// with a coordinate map into its Smith decomposition.
#[derive(Clone, Debug)]
pub struct Cokernel {
    ambient: usize,
    substitutions: Vec<Substitution>,
    /// surviving generators that still occur in some relation (dense part)
    involved: Vec<usize>,
    /// surviving generators untouched by every remaining relation
    untouched: Vec<usize>,
    smith: Smith,
}

/// Class of a vector in a [`Cokernel`], split along its Smith decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelCoordinates {
    /// one entry per dense position, reduced modulo its factor when that is positive
    pub dense: Vec<BigInt>,
    /// values on generators that no relation touches (free summands)
    pub untouched: Vec<BigInt>,
}

impl Cokernel {
    pub fn new(relations: &SparseMatrix) -> Self {
        let ambient = relations.rows();
        let mut rels: Vec<Option<SparseVec>> =
            relations.columns().iter().map(|c| Some(c.clone())).collect();
        let mut occurs: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ambient];
        for (r, rel) in rels.iter().enumerate() {
            for (g, _) in rel.as_ref().unwrap().entries() {
                occurs[*g].insert(r);
            }
        }
        let mut alive = vec![true; ambient];
        let mut substitutions = Vec::new();

        loop {
            let mut order: Vec<(usize, usize)> = rels
                .iter()
                .enumerate()
                .filter_map(|(r, rel)| rel.as_ref().filter(|v| !v.is_empty()).map(|v| (v.len(), r)))
                .collect();
            order.sort_unstable();
            let mut progressed = false;
            for (_, r) in order {
                let Some(rel) = rels[r].as_ref() else { continue };
                let pivot = rel
                    .entries()
                    .iter()
                    .filter(|(_, c)| c.abs().is_one())
                    .min_by_key(|(g, _)| (occurs[*g].len(), *g))
                    .map(|(g, _)| *g);
                let Some(pivot) = pivot else { continue };
                let rel = rels[r].take().unwrap();
                let unit = rel.get(pivot).unwrap().clone();
                for (g, _) in rel.entries() {
                    occurs[*g].remove(&r);
                }
                let others: Vec<usize> = occurs[pivot].iter().copied().collect();
                for s in others {
                    let target = rels[s].as_ref().unwrap();
                    let coeff = target.get(pivot).unwrap() * &unit;
                    let updated = target.add_scaled(&-coeff, &rel);
                    for (g, _) in target.entries() {
                        if updated.get(*g).is_none() {
                            occurs[*g].remove(&s);
                        }
                    }
                    for (g, _) in updated.entries() {
                        occurs[*g].insert(s);
                    }
                    rels[s] = if updated.is_empty() { None } else { Some(updated) };
                }
                debug_assert!(occurs[pivot].is_empty());
                alive[pivot] = false;
                let neg_unit = -&unit;
                substitutions.push(Substitution {
                    pivot,
                    combination: rel
                        .entries()
                        .iter()
                        .filter(|(g, _)| *g != pivot)
                        .map(|(g, c)| (*g, c * &neg_unit))
                        .collect(),
                });
                progressed = true;
            }
            if !progressed {
                break;
            }
        }

        let remaining: Vec<SparseVec> = rels.into_iter().flatten().filter(|v| !v.is_empty()).collect();
        let mut involved_set = BTreeSet::new();
        for rel in &remaining {
            for (g, _) in rel.entries() {
                involved_set.insert(*g);
            }
        }
        let involved: Vec<usize> = involved_set.into_iter().collect();
        let untouched: Vec<usize> =
            (0..ambient).filter(|g| alive[*g] && involved.binary_search(g).is_err()).collect();
        let mut dense = IntMatrix::zeros(involved.len(), remaining.len());
        for (j, rel) in remaining.iter().enumerate() {
            for (g, c) in rel.entries() {
                let i = involved.binary_search(g).unwrap();
                dense[(i, j)] = c.clone();
            }
        }
        let smith = smith_normal_form(&dense);
        Cokernel { ambient, substitutions, involved, untouched, smith }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Factor at each dense position (`0` marks a free position).
    pub fn dense_factors(&self) -> Vec<BigInt> {
        (0..self.involved.len())
            .map(|i| if i < self.smith.rank { self.smith.d[(i, i)].clone() } else { BigInt::zero() })
            .collect()
    }

    pub fn structure(&self) -> AbelianGroupStructure {
        let factors = self.dense_factors();
        AbelianGroupStructure::from_cyclic_orders(self.untouched.len(), factors)
    }

    /// Dense positions carrying a factor greater than one, with that factor.
    pub fn torsion_positions(&self) -> Vec<(usize, BigInt)> {
        self.dense_factors()
            .into_iter()
            .enumerate()
            .filter(|(_, d)| !d.is_zero() && !d.is_one())
            .collect()
    }

    pub fn coordinates(&self, z: &[BigInt]) -> CokernelCoordinates {
        assert_eq!(z.len(), self.ambient, "vector length mismatch");
        let mut z = z.to_vec();
        for s in &self.substitutions {
            if z[s.pivot].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut z[s.pivot]);
            for (g, a) in &s.combination {
                z[*g] += &c * a;
            }
        }
        let w: Vec<BigInt> = self.involved.iter().map(|g| z[*g].clone()).collect();
        let mut dense = self.smith.u.mul_vec(&w);
        for (i, d) in self.dense_factors().iter().enumerate() {
            if !d.is_zero() {
                dense[i] = dense[i].mod_floor(d);
            }
        }
        CokernelCoordinates { dense, untouched: self.untouched.iter().map(|g| z[*g].clone()).collect() }
    }

    /// Coordinates on the torsion positions, or `None` when the class has a
    /// nonzero free component.
    pub fn torsion_coordinates(&self, z: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = self.coordinates(z);
        if c.untouched.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let factors = self.dense_factors();
        if factors.iter().zip(&c.dense).any(|(d, x)| d.is_zero() && !x.is_zero()) {
            return None;
        }
        Some(self.torsion_positions().iter().map(|(i, _)| c.dense[*i].clone()).collect())
    }

    /// A vector of `Z^ambient` whose class is the unit vector at a dense position.
    pub fn lift_dense_position(&self, i: usize) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.ambient];
        for (k, g) in self.involved.iter().enumerate() {
            out[*g] = self.smith.u_inv[(k, i)].clone();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::cokernel_structure;

    fn sv(pairs: &[(usize, i64)]) -> SparseVec {
        SparseVec::from_pairs(pairs.iter().map(|&(i, v)| (i, BigInt::from(v))).collect())
    }

    #[test]
    fn add_scaled_merges() {
        let a = sv(&[(0, 1), (2, 3)]);
        let b = sv(&[(1, 1), (2, 1)]);
        assert_eq!(a.add_scaled(&BigInt::from(-3), &b), sv(&[(0, 1), (1, -3)]));
    }

    #[test]
    fn matches_dense_cokernel() {
        // e0 + e1, 2 e1 - e2, 4 e2, e3 - e0
        let m = SparseMatrix::new(
            5,
            vec![sv(&[(0, 1), (1, 1)]), sv(&[(1, 2), (2, -1)]), sv(&[(2, 4)]), sv(&[(3, 1), (0, -1)])],
        );
        let ck = Cokernel::new(&m);
        assert_eq!(ck.structure(), cokernel_structure(&m.to_dense()));
        let tors = ck.torsion_positions();
        assert_eq!(tors.len(), 1);
        assert_eq!(tors[0].1, BigInt::from(8));
        let lift = ck.lift_dense_position(tors[0].0);
        let coords = ck.torsion_coordinates(&lift).unwrap();
        assert_eq!(coords, vec![BigInt::one()]);
        // e4 is free, so it is not torsion
        let mut e4 = vec![BigInt::zero(); 5];
        e4[4] = BigInt::one();
        assert!(ck.torsion_coordinates(&e4).is_none());
    }
}
