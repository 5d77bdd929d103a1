//! Independent checks for [`crate::cohomology`].
//!
//! Two paths, neither of which touches the bar-complex engine:
//!
//! * [`brute_force_cohomology`] works in small-integer tables. It enumerates
//!   normalized cocycles by depth-first search with propagation (values forced
//!   by the cocycle identity are solved for rather than branched on), enumerates coboundaries
//!   from normalized cochains one degree down, and reads off the invariant
//!   factors from the counts `|{z : pʲz ∈ B}|`.
//! * [`dimension_shift_cohomology`] embeds a lattice `M` into the coinduced
//!   module `Maps(Γ, M)`, which is acyclic, and uses
//!   `H¹(M) = coker(Coind^Γ → Q^Γ)` and `Hⁿ(M) = H^{n−1}(Q)` with `Q = Coind/M`.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::group::FinGroup;
use crate::linalg::{
    kernel_basis, smith_normal_form, AbelianGroupStructure, IntMatrix, LinalgError, Subquotient,
};
use crate::module::{GModule, ModuleViolation, TwoTermComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    /// cap on search nodes plus enumerated cochains (brute force) or on
    /// matrix entries (dimension shift)
    pub max_enumeration: u64,
    pub max_group_order: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_enumeration: 10_000_000, max_group_order: 12 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle budget exceeded: {what} (limit {limit})")]
    BudgetExceeded { what: String, limit: u64 },
    #[error("brute force needs a finite module")]
    NotFinite,
    #[error("dimension shifting needs a torsion-free module")]
    NotLattice,
    #[error("degree {0} is not supported by the oracle")]
    DegreeUnsupported(usize),
    #[error("no oracle for this input: {0}")]
    Unsupported(String),
    #[error("invalid module: {0}")]
    InvalidModule(#[from] ModuleViolation),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn exceeded(what: impl Into<String>, limit: u64) -> OracleError {
    OracleError::BudgetExceeded { what: what.into(), limit }
}

/// `M` rewritten as `Z^m / im R` in Smith coordinates: the surviving
/// coordinates, their orders (0 for free) and the action on them.
struct Reduced {
    orders: Vec<BigInt>,
    action: Vec<IntMatrix>,
}

fn reduce(m: &GModule) -> Reduced {
    let rank = m.ambient_rank();
    let s = smith_normal_form(m.relations());
    let diag = s.diagonal();
    let order_of = |i: usize| if i < diag.len() { diag[i].clone() } else { BigInt::zero() };
    let keep: Vec<usize> = (0..rank).filter(|&i| !order_of(i).is_one()).collect();
    let orders = keep.iter().map(|&i| order_of(i)).collect();
    let action = (0..m.group().order())
        .map(|g| {
            let full = &(&s.u * m.action(g)) * &s.u_inv;
            IntMatrix::from_fn(keep.len(), keep.len(), |i, j| {
                let x = full[(keep[i], keep[j])].clone();
                let d = order_of(keep[i]);
                if d.is_zero() {
                    x
                } else {
                    ((x % &d) + &d) % &d
                }
            })
        })
        .collect();
    Reduced { orders, action }
}

/// A finite module as lookup tables on element indices.
struct Tables {
    size: usize,
    zero: u32,
    add: Vec<u32>,
    neg: Vec<u32>,
    /// `act[g · size + a]`
    act: Vec<u32>,
    orders: Vec<u64>,
}

impl Tables {
    fn new(r: &Reduced, budget: &OracleBudget) -> Result<Self, OracleError> {
        let orders: Vec<u64> = r
            .orders
            .iter()
            .map(|d| d.to_u64().filter(|&d| d > 0).ok_or(OracleError::NotFinite))
            .collect::<Result<_, _>>()?;
        let size = orders.iter().try_fold(1u64, |acc, &d| acc.checked_mul(d)).unwrap_or(u64::MAX);
        if size.saturating_mul(size) > budget.max_enumeration || size > u32::MAX as u64 {
            return Err(exceeded(format!("module of order {size} is too large for addition tables"), budget.max_enumeration));
        }
        let size = size as usize;
        let k = orders.len();
        let decode = |mut a: usize| {
            let mut v = vec![0u64; k];
            for i in (0..k).rev() {
                v[i] = a as u64 % orders[i];
                a /= orders[i] as usize;
            }
            v
        };
        let encode = |v: &[u64]| v.iter().zip(&orders).fold(0usize, |acc, (&x, &d)| acc * d as usize + x as usize);
        let digits: Vec<Vec<u64>> = (0..size).map(decode).collect();
        let mut add = vec![0u32; size * size];
        for a in 0..size {
            for b in 0..size {
                let v: Vec<u64> = (0..k).map(|i| (digits[a][i] + digits[b][i]) % orders[i]).collect();
                add[a * size + b] = encode(&v) as u32;
            }
        }
        let neg = (0..size)
            .map(|a| {
                let v: Vec<u64> = (0..k).map(|i| (orders[i] - digits[a][i]) % orders[i]).collect();
                encode(&v) as u32
            })
            .collect();
        let mut act = Vec::with_capacity(r.action.len() * size);
        for mat in &r.action {
            let small: Vec<Vec<u64>> = (0..k)
                .map(|i| (0..k).map(|j| mat[(i, j)].to_u64().expect("reduced entries are small")).collect())
                .collect();
            for v in &digits {
                let w: Vec<u64> = (0..k)
                    .map(|i| (0..k).fold(0u64, |acc, j| (acc + small[i][j] * v[j]) % orders[i]))
                    .collect();
                act.push(encode(&w) as u32);
            }
        }
        Ok(Tables { size, zero: 0, add, neg, act, orders })
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        self.add[a as usize * self.size + b as usize]
    }

    fn act(&self, g: usize, a: u32) -> u32 {
        self.act[g * self.size + a as usize]
    }

    fn scale(&self, a: u32, k: u64) -> u32 {
        (0..k).fold(self.zero, |acc, _| self.add(acc, a))
    }

    fn exponent(&self) -> u64 {
        self.orders.iter().fold(1u64, |l, &d| num_integer::lcm(l, d))
    }
}

/// Normalized `n`-cochains: tables on `n`-tuples of non-identity elements.
struct Tuples<'a> {
    group: &'a FinGroup,
    nonid: Vec<usize>,
    pos: Vec<usize>,
}

impl<'a> Tuples<'a> {
    fn new(group: &'a FinGroup) -> Self {
        let nonid: Vec<usize> = (0..group.order()).filter(|&g| g != group.identity()).collect();
        let mut pos = vec![usize::MAX; group.order()];
        for (i, &g) in nonid.iter().enumerate() {
            pos[g] = i;
        }
        Tuples { group, nonid, pos }
    }

    fn count(&self, n: usize) -> usize {
        self.nonid.len().pow(n as u32)
    }

    /// Index of a tuple, or `None` if it contains the identity.
    fn index(&self, tuple: &[usize]) -> Option<usize> {
        tuple.iter().try_fold(0usize, |acc, &g| {
            (g != self.group.identity()).then(|| acc * self.nonid.len() + self.pos[g])
        })
    }

    fn tuple(&self, mut index: usize, n: usize) -> Vec<usize> {
        let b = self.nonid.len();
        let mut t = vec![0; n];
        for slot in t.iter_mut().rev() {
            *slot = self.nonid[index % b];
            index /= b;
        }
        t
    }

    /// Terms of `(δc)(g₁, …, g_{n+1})` as (entry, acting element, negated).
    fn coboundary_terms(&self, g: &[usize]) -> Vec<(usize, usize, bool)> {
        let n = g.len() - 1;
        let e = self.group.identity();
        let mut terms = Vec::with_capacity(n + 2);
        if let Some(i) = self.index(&g[1..]) {
            terms.push((i, g[0], false));
        }
        for i in 0..n {
            let mut merged: Vec<usize> = g[..i].to_vec();
            merged.push(self.group.mul(g[i], g[i + 1]));
            merged.extend_from_slice(&g[i + 2..]);
            if let Some(k) = self.index(&merged) {
                terms.push((k, e, i % 2 == 0));
            }
        }
        if let Some(i) = self.index(&g[..n]) {
            terms.push((i, e, n % 2 == 0));
        }
        terms
    }
}

struct Constraint {
    terms: Vec<(usize, usize, bool)>,
    /// distinct entries occurring in `terms`
    entries: Vec<usize>,
}

/// Depth-first search over cochain tables with propagation: whenever a
/// constraint has a single unknown entry occurring in one term, that entry is
/// solved for instead of branched on.
struct Search<'a> {
    t: &'a Tables,
    inv: Vec<usize>,
    constraints: Vec<Constraint>,
    by_entry: Vec<Vec<usize>>,
    unknown: Vec<usize>,
    assigned: Vec<bool>,
    values: Vec<u32>,
    trail: Vec<usize>,
    nodes: u64,
    limit: u64,
}

impl<'a> Search<'a> {
    fn new(t: &'a Tables, inv: Vec<usize>, entries: usize, constraints: Vec<Constraint>, limit: u64) -> Self {
        let mut by_entry = vec![Vec::new(); entries];
        for (k, c) in constraints.iter().enumerate() {
            for &e in &c.entries {
                by_entry[e].push(k);
            }
        }
        let unknown = constraints.iter().map(|c| c.entries.len()).collect();
        Search {
            t,
            inv,
            constraints,
            by_entry,
            unknown,
            assigned: vec![false; entries],
            values: vec![t.zero; entries],
            trail: Vec::new(),
            nodes: 0,
            limit,
        }
    }

    fn term(&self, (entry, g, neg): (usize, usize, bool)) -> u32 {
        let v = self.t.act(g, self.values[entry]);
        if neg {
            self.t.neg[v as usize]
        } else {
            v
        }
    }

    fn holds(&self, c: &Constraint) -> bool {
        c.terms.iter().fold(self.t.zero, |acc, &term| self.t.add(acc, self.term(term))) == self.t.zero
    }

    /// Value of the one unknown entry `x` of `c`, if it occurs in a single term.
    fn solve(&self, c: &Constraint, x: usize) -> Option<u32> {
        let mut own = c.terms.iter().filter(|t| t.0 == x);
        let &(_, g, neg) = own.next()?;
        if own.next().is_some() {
            return None;
        }
        let rest =
            c.terms.iter().filter(|t| t.0 != x).fold(self.t.zero, |acc, &term| self.t.add(acc, self.term(term)));
        // ±g·x + rest = 0
        let gx = if neg { rest } else { self.t.neg[rest as usize] };
        Some(self.t.act(self.inv[g], gx))
    }

    /// Assigns `entry = value` and everything it forces; `false` on conflict.
    fn propagate(&mut self, entry: usize, value: u32) -> bool {
        let mut pending = vec![(entry, value)];
        while let Some((x, v)) = pending.pop() {
            if self.assigned[x] {
                if self.values[x] != v {
                    return false;
                }
                continue;
            }
            self.assigned[x] = true;
            self.values[x] = v;
            self.trail.push(x);
            for &k in &self.by_entry[x] {
                self.unknown[k] -= 1;
            }
            for &k in &self.by_entry[x] {
                let c = &self.constraints[k];
                match self.unknown[k] {
                    0 => {
                        if !self.holds(c) {
                            return false;
                        }
                    }
                    1 => {
                        let y = *c.entries.iter().find(|&&y| !self.assigned[y]).unwrap();
                        if let Some(w) = self.solve(c, y) {
                            pending.push((y, w));
                        }
                    }
                    _ => {}
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            self.assigned[x] = false;
            for &k in &self.by_entry[x] {
                self.unknown[k] += 1;
            }
        }
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[u32])) -> Result<(), OracleError> {
        let Some(entry) = self.assigned.iter().position(|&a| !a) else {
            visit(&self.values);
            return Ok(());
        };
        for v in 0..self.t.size as u32 {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(exceeded("cocycle search nodes", self.limit));
            }
            let mark = self.trail.len();
            if self.propagate(entry, v) {
                self.run(visit)?;
            }
            self.undo(mark);
        }
        Ok(())
    }
}

/// `Hⁿ(Γ, M)` for finite `M` by enumerating cocycles and coboundaries.
pub fn brute_force_cohomology(
    m: &GModule,
    n: usize,
    budget: &OracleBudget,
) -> Result<AbelianGroupStructure, OracleError> {
    if n > 2 {
        return Err(OracleError::DegreeUnsupported(n));
    }
    m.validate()?;
    let group = m.group();
    if group.order() > budget.max_group_order {
        return Err(exceeded(format!("group of order {}", group.order()), budget.max_group_order as u64));
    }
    let t = Tables::new(&reduce(m), budget)?;
    if t.size == 1 {
        return Ok(AbelianGroupStructure::trivial());
    }
    let tuples = Tuples::new(group);
    let entries = tuples.count(n);
    let mut spent = 0u64;

    // coboundaries from all normalized (n−1)-cochains
    let mut boundaries: HashSet<Vec<u32>> = HashSet::new();
    if n == 0 {
        boundaries.insert(vec![t.zero]);
    } else {
        let below = tuples.count(n - 1);
        let total = (t.size as u64).checked_pow(below as u32).unwrap_or(u64::MAX);
        if total > budget.max_enumeration {
            return Err(exceeded(format!("{total} cochains in degree {}", n - 1), budget.max_enumeration));
        }
        spent += total;
        let terms: Vec<Vec<(usize, usize, bool)>> =
            (0..entries).map(|i| tuples.coboundary_terms(&tuples.tuple(i, n))).collect();
        let mut f = vec![0u32; below];
        for mut code in 0..total {
            for slot in f.iter_mut() {
                *slot = (code % t.size as u64) as u32;
                code /= t.size as u64;
            }
            let b: Vec<u32> = terms
                .iter()
                .map(|ts| {
                    ts.iter().fold(t.zero, |acc, &(i, g, neg)| {
                        let v = t.act(g, f[i]);
                        t.add(acc, if neg { t.neg[v as usize] } else { v })
                    })
                })
                .collect();
            boundaries.insert(b);
        }
    }

    // cocycles by search
    let mut constraints = Vec::new();
    let higher = tuples.count(n + 1);
    for i in 0..higher {
        let mut terms = tuples.coboundary_terms(&tuples.tuple(i, n + 1));
        // cancel equal terms of opposite sign
        let mut k = 0;
        while k < terms.len() {
            let (e, g, neg) = terms[k];
            if let Some(j) = terms.iter().position(|&(e2, g2, neg2)| e2 == e && g2 == g && neg2 != neg) {
                terms.remove(j.max(k));
                terms.remove(j.min(k));
                k = 0;
            } else {
                k += 1;
            }
        }
        let mut entries: Vec<usize> = terms.iter().map(|t| t.0).collect();
        entries.sort_unstable();
        entries.dedup();
        if !entries.is_empty() {
            constraints.push(Constraint { terms, entries });
        }
    }
    let inv = (0..group.order()).map(|g| group.inv(g)).collect();
    let mut search = Search::new(&t, inv, entries, constraints, budget.max_enumeration.saturating_sub(spent));

    let exponent = t.exponent();
    let primes = prime_factors(exponent);
    let depth: Vec<u32> = primes.iter().map(|&p| multiplicity(exponent, p)).collect();
    // counts[p][j] = #{z : pʲ z ∈ B}
    let mut counts: Vec<Vec<u64>> = depth.iter().map(|&e| vec![0; e as usize + 1]).collect();
    let mut cocycles = 0u64;
    search.run(&mut |z| {
        cocycles += 1;
        for (pi, &p) in primes.iter().enumerate() {
            let mut w = z.to_vec();
            for j in 0..=depth[pi] as usize {
                if boundaries.contains(&w) {
                    counts[pi][j] += 1;
                }
                w.iter_mut().for_each(|x| *x = t.scale(*x, p));
            }
        }
    })?;

    let b = boundaries.len() as u64;
    let mut orders = Vec::new();
    for (pi, &p) in primes.iter().enumerate() {
        let c = &counts[pi];
        debug_assert_eq!(c[0], b);
        // r[j] = number of cyclic factors of order ≥ pʲ
        let r: Vec<u32> = (1..c.len()).map(|j| log_exact(c[j] / c[j - 1], p)).collect();
        for (j, &rj) in r.iter().enumerate() {
            let next = r.get(j + 1).copied().unwrap_or(0);
            for _ in next..rj {
                orders.push(BigInt::from(p).pow(j as u32 + 1));
            }
        }
    }
    // the primary parts account for all of Z/B
    let primary: u64 = primes.iter().enumerate().map(|(pi, _)| counts[pi].last().unwrap() / b).product();
    assert_eq!(primary, cocycles / b, "cocycle and coboundary counts are inconsistent");
    Ok(AbelianGroupStructure::from_cyclic_orders(0, orders))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn multiplicity(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    k
}

fn log_exact(mut n: u64, p: u64) -> u32 {
    let mut k = 0;
    while n > 1 {
        assert_eq!(n % p, 0, "subgroup counts are powers of p");
        n /= p;
        k += 1;
    }
    k
}

/// `Hⁿ(Γ, M)` for a torsion-free `M` by dimension shifting.
pub fn dimension_shift_cohomology(
    m: &GModule,
    n: usize,
    budget: &OracleBudget,
) -> Result<AbelianGroupStructure, OracleError> {
    if n > 2 {
        return Err(OracleError::DegreeUnsupported(n));
    }
    m.validate()?;
    let group = m.group().clone();
    if group.order() > budget.max_group_order {
        return Err(exceeded(format!("group of order {}", group.order()), budget.max_group_order as u64));
    }
    let r = reduce(m);
    if r.orders.iter().any(|d| !d.is_zero()) {
        return Err(OracleError::NotLattice);
    }
    shifted(&group, r.action, n, budget)
}

fn shifted(
    group: &FinGroup,
    action: Vec<IntMatrix>,
    n: usize,
    budget: &OracleBudget,
) -> Result<AbelianGroupStructure, OracleError> {
    let rank = action[0].rows();
    let fixed_equations = group
        .generators()
        .iter()
        .fold(IntMatrix::zeros(0, rank), |acc, &s| acc.vstack(&action[s].sub(&IntMatrix::identity(rank))));
    if n == 0 {
        return Ok(AbelianGroupStructure::free(kernel_basis(&fixed_equations).cols()));
    }
    let order = group.order();
    let q_rank = (order - 1) * rank;
    let entries = (q_rank as u64).pow(2) * group.generators().len().max(1) as u64;
    if entries > budget.max_enumeration {
        return Err(exceeded(format!("shift matrices with {entries} entries"), budget.max_enumeration));
    }
    let e = group.identity();
    // Q ≅ Z^{(N−1)m} through φ ↦ (φ(x) − ρ(x)φ(1))_{x ≠ 1}
    let others: Vec<usize> = (0..order).filter(|&x| x != e).collect();
    let block = |x: usize| x * rank;
    let project = |phi: &[BigInt]| -> Vec<BigInt> {
        let base = &phi[block(e)..block(e) + rank];
        others
            .iter()
            .flat_map(|&x| {
                let rho_base = action[x].mul_vec(base);
                (0..rank).map(move |i| &phi[block(x) + i] - &rho_base[i]).collect::<Vec<_>>()
            })
            .collect()
    };
    let section = |q: &[BigInt]| -> Vec<BigInt> {
        let mut phi = vec![BigInt::zero(); order * rank];
        for (k, &x) in others.iter().enumerate() {
            phi[block(x)..block(x) + rank].clone_from_slice(&q[k * rank..(k + 1) * rank]);
        }
        phi
    };
    // (sφ)(x) = φ(xs)
    let translate = |s: usize, phi: &[BigInt]| -> Vec<BigInt> {
        (0..order).flat_map(|x| phi[block(group.mul(x, s))..block(group.mul(x, s)) + rank].to_vec()).collect()
    };
    let q_action_of = |s: usize| -> IntMatrix {
        let columns: Vec<Vec<BigInt>> = (0..q_rank)
            .map(|j| {
                let mut unit = vec![BigInt::zero(); q_rank];
                unit[j] = BigInt::one();
                project(&translate(s, &section(&unit)))
            })
            .collect();
        IntMatrix::from_columns(q_rank, &columns)
    };
    if n == 1 {
        let equations = group.generators().iter().fold(IntMatrix::zeros(0, q_rank), |acc, &s| {
            acc.vstack(&q_action_of(s).sub(&IntMatrix::identity(q_rank)))
        });
        let invariants = kernel_basis(&equations);
        let constants: Vec<Vec<BigInt>> = (0..rank)
            .map(|i| {
                let mut phi = vec![BigInt::zero(); order * rank];
                for x in 0..order {
                    phi[block(x) + i] = BigInt::one();
                }
                project(&phi)
            })
            .collect();
        let image = IntMatrix::from_columns(q_rank, &constants);
        return Ok(Subquotient::new(&invariants, &image)?.structure());
    }
    // element actions on Q, built from the generators
    let words = group.generator_words();
    let gen_actions: Vec<(usize, IntMatrix)> = group.generators().iter().map(|&s| (s, q_action_of(s))).collect();
    let q_elements: Vec<IntMatrix> = words
        .iter()
        .map(|w| {
            w.iter().fold(IntMatrix::identity(q_rank), |acc, &k| {
                let mat = &gen_actions.iter().find(|(s, _)| *s == group.generators()[k]).unwrap().1;
                &acc * mat
            })
        })
        .collect();
    shifted(group, q_elements, n - 1, budget)
}

/// `Hⁿ(Γ, M)` by whichever oracle applies.
pub fn oracle_cohomology(
    m: &GModule,
    n: usize,
    budget: &OracleBudget,
) -> Result<AbelianGroupStructure, OracleError> {
    let s = m.structure();
    if s.is_finite() {
        brute_force_cohomology(m, n, budget)
    } else if s.invariant_factors().is_empty() {
        dimension_shift_cohomology(m, n, budget)
    } else {
        Err(OracleError::Unsupported("module with both free and torsion parts".into()))
    }
}

/// `H¹(Γ, [A → B])` when `A = 0` (giving `H¹(B)`) or `B = 0` (giving `H²(A)`).
pub fn oracle_hypercohomology_h1(
    c: &TwoTermComplex,
    budget: &OracleBudget,
) -> Result<AbelianGroupStructure, OracleError> {
    if c.a().structure().is_trivial() {
        oracle_cohomology(c.b(), 1, budget)
    } else if c.b().structure().is_trivial() {
        oracle_cohomology(c.a(), 2, budget)
    } else {
        Err(OracleError::Unsupported("only complexes with A = 0 or B = 0 have an oracle".into()))
    }
}

/// Invariant factor lists `d₁ | d₂ | …` (all `> 1`) of abelian groups of order `≤ max_size`.
pub fn finite_abelian_groups(max_size: u64) -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, product: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        out.push(prefix.clone());
        let last = prefix.last().copied();
        // factors are listed largest last, so the next one is a multiple of the previous
        let start = last.unwrap_or(2);
        let mut d = start;
        while product * d <= max {
            if last.is_none_or(|l| d % l == 0) {
                prefix.push(d);
                extend(prefix, product * d, max, out);
                prefix.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_size, &mut out);
    out.sort_by_key(|f| (f.iter().product::<u64>(), f.len()));
    out
}

/// Automorphisms of `⊕ Z/dᵢ` as column lists of digit vectors.
fn automorphisms(orders: &[u64]) -> Vec<Vec<Vec<u64>>> {
    let k = orders.len();
    let size: u64 = orders.iter().product();
    let digits = |mut a: u64| {
        let mut v = vec![0u64; k];
        for i in (0..k).rev() {
            v[i] = a % orders[i];
            a /= orders[i];
        }
        v
    };
    let elements: Vec<Vec<u64>> = (0..size).map(digits).collect();
    // column j must be killed by d_j
    let choices: Vec<Vec<&Vec<u64>>> = (0..k)
        .map(|j| elements.iter().filter(|v| (0..k).all(|i| (v[i] * orders[j]) % orders[i] == 0)).collect())
        .collect();
    let apply = |cols: &[&Vec<u64>], x: &[u64]| -> Vec<u64> {
        (0..k).map(|i| (0..k).fold(0, |acc, j| (acc + cols[j][i] * x[j]) % orders[i])).collect()
    };
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    'outer: loop {
        let cols: Vec<&Vec<u64>> = (0..k).map(|j| choices[j][idx[j]]).collect();
        if elements.iter().skip(1).all(|x| apply(&cols, x).iter().any(|&c| c != 0)) {
            out.push(cols.into_iter().cloned().collect());
        }
        for j in 0..k {
            idx[j] += 1;
            if idx[j] < choices[j].len() {
                continue 'outer;
            }
            idx[j] = 0;
        }
        break;
    }
    out
}

/// Every finite `Γ`-module of order `≤ max_size`: each abelian group
/// `⊕ Z/dᵢ`, with every homomorphism `Γ → Aut`.
pub fn finite_module_grid(group: &Arc<FinGroup>, max_size: u64) -> Vec<GModule> {
    let gens = group.generators().to_vec();
    let words = group.generator_words();
    let mut out = Vec::new();
    for orders in finite_abelian_groups(max_size) {
        let k = orders.len();
        let relations = IntMatrix::diagonal(k, k, &orders.iter().map(|&d| BigInt::from(d)).collect::<Vec<_>>());
        if k == 0 {
            out.push(GModule::zero(group.clone()));
            continue;
        }
        let auts = automorphisms(&orders);
        let compose = |a: &Vec<Vec<u64>>, b: &Vec<Vec<u64>>| -> Vec<Vec<u64>> {
            // columns of a ∘ b
            b.iter()
                .map(|col| (0..k).map(|i| (0..k).fold(0, |acc, j| (acc + a[j][i] * col[j]) % orders[i])).collect())
                .collect()
        };
        let identity: Vec<Vec<u64>> =
            (0..k).map(|j| (0..k).map(|i| u64::from(i == j)).collect()).collect();
        let mut choice = vec![0usize; gens.len()];
        'outer: loop {
            let elem: Vec<Vec<Vec<u64>>> = words
                .iter()
                .map(|w| w.iter().fold(identity.clone(), |acc, &g| compose(&acc, &auts[choice[g]])))
                .collect();
            let hom = (0..group.order())
                .all(|x| (0..group.order()).all(|y| elem[group.mul(x, y)] == compose(&elem[x], &elem[y])));
            if hom {
                let action = choice
                    .iter()
                    .map(|&c| IntMatrix::from_fn(k, k, |i, j| BigInt::from(auts[c][j][i])))
                    .collect();
                out.push(GModule::new(group.clone(), relations.clone(), action).expect("shapes match"));
            }
            for c in choice.iter_mut() {
                *c += 1;
                if *c < auts.len() {
                    continue 'outer;
                }
                *c = 0;
            }
            break;
        }
    }
    out
}
