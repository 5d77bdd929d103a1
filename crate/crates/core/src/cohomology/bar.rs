//! Total complex computing `H^n(Γ, [A → B])` for presented modules.
//!
//! A module `M = Z^m / im R` (with `R` injective) is replaced by the pair
//! `[Z^r → Z^m]`; the action only exists on integer lifts `ρ̃(g)`, which need
//! not compose exactly. Degree `n` of the total complex is
//!
//! ```text
//! X^n ⊕ Y^{n+1} = C^{n+1}(Z^{m_A}) ⊕ C^n(Z^{m_B}) ⊕ C^{n+2}(Z^{r_A}) ⊕ C^{n+1}(Z^{r_B})
//! ```
//!
//! with `D(x, y) = (D̃x + Rel·y, −h·x − d_r·y)`. Here `D̃(α, β) = (d̃_A α, fα − d̃_B β)`
//! is the lifted cone differential, `Rel·d_r = D̃·Rel` and `Rel·h = D̃·D̃`. These
//! two identities give `D² = 0`, and `(x, y) ↦ x mod Rel` is a
//! quasi-isomorphism onto the cone of cochains with values in `A` and `B`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::group::FinGroup;
use crate::linalg::{image_basis, IntMatrix, LinearSolver, SparseMatrix, SparseVec};
use crate::module::{GModule, TwoTermComplex};

/// Solves `rel · X = b` column by column.
fn solve_columns(solver: &LinearSolver, b: &IntMatrix) -> Option<IntMatrix> {
    let cols: Option<Vec<Vec<BigInt>>> = (0..b.cols())
        .map(|j| {
            let c = b.column(j);
            if c.iter().all(Zero::is_zero) {
                Some(vec![BigInt::zero(); solver.cols()])
            } else {
                solver.solve(&c).ok().flatten()
            }
        })
        .collect();
    Some(IntMatrix::from_columns(solver.cols(), &cols?))
}

/// One module of the complex with the data the differential needs.
#[derive(Debug)]
pub(crate) struct Part {
    pub m: usize,
    pub r: usize,
    pub rel: IntMatrix,
    pub rel_solver: LinearSolver,
    /// `ρ̃(g)`
    pub lift: Vec<IntMatrix>,
    /// `ρ_r(g) = R⁻¹ ρ̃(g) R`
    pub rel_action: Vec<IntMatrix>,
    /// `E(g₁, g₂) = R⁻¹(ρ̃(g₁)ρ̃(g₂) − ρ̃(g₁g₂))` at index `g₁·N + g₂`; empty when `r = 0`
    pub defect: Vec<IntMatrix>,
}

impl Part {
    fn new(module: &GModule) -> Option<Part> {
        let group = module.group();
        let n = group.order();
        let m = module.ambient_rank();
        let rel = image_basis(module.relations());
        let r = rel.cols();
        let rel_solver = LinearSolver::new(&rel);
        let lift: Vec<IntMatrix> = (0..n).map(|g| module.action(g).clone()).collect();
        let mut rel_action = Vec::with_capacity(n);
        for a in &lift {
            rel_action.push(solve_columns(&rel_solver, &(a * &rel))?);
        }
        let mut defect = Vec::new();
        if r > 0 {
            for g1 in 0..n {
                for g2 in 0..n {
                    let diff = (&lift[g1] * &lift[g2]).sub(&lift[group.mul(g1, g2)]);
                    defect.push(solve_columns(&rel_solver, &diff)?);
                }
            }
        }
        Some(Part { m, r, rel, rel_solver, lift, rel_action, defect })
    }
}

/// The lifted data of `[A → B]` over `Γ`.
#[derive(Debug)]
pub(crate) struct Model {
    pub group: Arc<FinGroup>,
    pub a: Part,
    pub b: Part,
    pub f: IntMatrix,
    /// `f·R_A = R_B·f_r`
    pub f_rel: IntMatrix,
    /// `F(g) = R_B⁻¹(f ρ̃_A(g) − ρ̃_B(g) f)`
    pub link: Vec<IntMatrix>,
}

/// Block offsets of one total degree.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Layout {
    pub xa: usize,
    pub xb: usize,
    pub ya: usize,
    pub yb: usize,
}

impl Layout {
    pub fn lift_len(&self) -> usize {
        self.xa + self.xb
    }

    pub fn total(&self) -> usize {
        self.xa + self.xb + self.ya + self.yb
    }
}

impl Model {
    /// `None` when the lifts do not define modules and an equivariant map.
    pub fn new(complex: &TwoTermComplex) -> Option<Model> {
        let group = complex.group().clone();
        let a = Part::new(complex.a())?;
        let b = Part::new(complex.b())?;
        let f = complex.map().clone();
        let f_rel = solve_columns(&b.rel_solver, &(&f * &a.rel))?;
        let mut link = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            let diff = (&f * &a.lift[g]).sub(&(&b.lift[g] * &f));
            link.push(solve_columns(&b.rel_solver, &diff)?);
        }
        Some(Model { group, a, b, f, f_rel, link })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Dimension of `C^k(Γ, Z^p)`.
    pub fn cochain_dim(&self, k: i64, p: usize) -> usize {
        if k < 0 {
            0
        } else {
            self.order().pow(k as u32) * p
        }
    }

    pub fn layout(&self, n: i64) -> Layout {
        Layout {
            xa: self.cochain_dim(n + 1, self.a.m),
            xb: self.cochain_dim(n, self.b.m),
            ya: self.cochain_dim(n + 2, self.a.r),
            yb: self.cochain_dim(n + 1, self.b.r),
        }
    }

    /// `D^n : Tot^n → Tot^{n+1}` as a sparse matrix.
    pub fn differential(&self, n: i64) -> SparseMatrix {
        let src = self.layout(n);
        let columns = (0..src.total()).map(|i| self.column(n, i)).collect();
        SparseMatrix::new(self.layout(n + 1).total(), columns)
    }

    /// `D^n` applied to a vector of `Tot^n`.
    pub fn apply(&self, n: i64, v: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.layout(n + 1).total()];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, x) in self.column(n, i).entries() {
                out[*j] += c * x;
            }
        }
        out
    }

    /// Extends a lift `x ∈ X^n` to a cocycle `(x, y)` of `Tot^n`, or `None`
    /// when `D̃x` is not a relation (so `x` is not a cocycle modulo relations).
    pub fn complete(&self, n: i64, lift: &[BigInt]) -> Option<Vec<BigInt>> {
        let l = self.layout(n);
        let next = self.layout(n + 1);
        assert_eq!(lift.len(), l.lift_len(), "lift has the wrong length");
        let mut v = lift.to_vec();
        v.resize(l.total(), BigInt::zero());
        let image = self.apply(n, &v);
        let solve_blocks = |part: &Part, block: &[BigInt]| -> Option<Vec<BigInt>> {
            let mut y = Vec::with_capacity(block.len() / part.m.max(1) * part.r);
            for chunk in block.chunks(part.m.max(1)) {
                if part.m == 0 {
                    break;
                }
                if chunk.iter().all(Zero::is_zero) {
                    y.extend(std::iter::repeat(BigInt::zero()).take(part.r));
                    continue;
                }
                let neg: Vec<BigInt> = chunk.iter().map(|x| -x).collect();
                y.extend(part.rel_solver.solve(&neg).ok()??);
            }
            Some(y)
        };
        let ya = solve_blocks(&self.a, &image[..next.xa])?;
        let yb = solve_blocks(&self.b, &image[next.xa..next.xa + next.xb])?;
        debug_assert_eq!(ya.len(), l.ya);
        debug_assert_eq!(yb.len(), l.yb);
        v.truncate(l.lift_len());
        v.extend(ya);
        v.extend(yb);
        Some(v)
    }

    fn column(&self, n: i64, index: usize) -> SparseVec {
        let src = self.layout(n);
        let dst = self.layout(n + 1);
        let (oxa, oxb, oya, oyb) = (0, dst.xa, dst.xa + dst.xb, dst.xa + dst.xb + dst.ya);
        let mut out = Vec::new();
        let mut i = index;
        let mut ops = Ops { group: &self.group, out: &mut out };
        if i < src.xa {
            let (k, t, c) = (n + 1, i / self.a.m, i % self.a.m);
            ops.bar(oxa, k, t, c, self.a.m, &self.a.lift, 1);
            ops.pointwise(oxb, t, c, &self.f, 1);
            ops.defect(oya, k, t, c, &self.a.defect, -1);
            ops.first(oyb, k, t, c, &self.link, -1);
            return SparseVec::from_pairs(out);
        }
        i -= src.xa;
        if i < src.xb {
            let (k, t, c) = (n, i / self.b.m, i % self.b.m);
            ops.bar(oxb, k, t, c, self.b.m, &self.b.lift, -1);
            ops.defect(oyb, k, t, c, &self.b.defect, -1);
            return SparseVec::from_pairs(out);
        }
        i -= src.xb;
        if i < src.ya {
            let (k, t, c) = (n + 2, i / self.a.r, i % self.a.r);
            ops.pointwise(oxa, t, c, &self.a.rel, 1);
            ops.bar(oya, k, t, c, self.a.r, &self.a.rel_action, -1);
            ops.pointwise(oyb, t, c, &self.f_rel, -1);
            return SparseVec::from_pairs(out);
        }
        i -= src.ya;
        assert!(i < src.yb, "basis index out of range");
        let (k, t, c) = (n + 1, i / self.b.r, i % self.b.r);
        ops.pointwise(oxb, t, c, &self.b.rel, 1);
        ops.bar(oyb, k, t, c, self.b.r, &self.b.rel_action, 1);
        SparseVec::from_pairs(out)
    }
}

/// Images of a basis cochain `e_{t,c}` (tuple `t` of length `k`, component
/// `c`) under the building blocks of the differential.
struct Ops<'a> {
    group: &'a FinGroup,
    out: &'a mut Vec<(usize, BigInt)>,
}

impl Ops<'_> {
    fn push_column(&mut self, offset: usize, tuple: usize, mat: &IntMatrix, c: usize, sign: i64) {
        let q = mat.rows();
        for row in 0..q {
            let v = &mat[(row, c)];
            if !v.is_zero() {
                self.out.push((offset + tuple * q + row, v * sign));
            }
        }
    }

    /// `(Pc)(g…) = P·c(g…)`
    fn pointwise(&mut self, offset: usize, t: usize, c: usize, p: &IntMatrix, sign: i64) {
        self.push_column(offset, t, p, c, sign);
    }

    /// `(Lc)(g₁, g₂…) = L(g₁)·c(g₂…)`
    fn first(&mut self, offset: usize, k: i64, t: usize, c: usize, mats: &[IntMatrix], sign: i64) {
        let n = self.group.order();
        let span = n.pow(k as u32);
        for (g1, mat) in mats.iter().enumerate() {
            self.push_column(offset, g1 * span + t, mat, c, sign);
        }
    }

    /// `(Ec)(g₁, g₂, g₃…) = E(g₁, g₂)·c(g₃…)`
    fn defect(&mut self, offset: usize, k: i64, t: usize, c: usize, mats: &[IntMatrix], sign: i64) {
        let n = self.group.order();
        let span = n.pow(k as u32);
        for (pair, mat) in mats.iter().enumerate() {
            self.push_column(offset, pair * span + t, mat, c, sign);
        }
    }

    /// Bar differential with first-term action `rho`, on a space of `p` components.
    fn bar(&mut self, offset: usize, k: i64, t: usize, c: usize, p: usize, rho: &[IntMatrix], sign: i64) {
        if p == 0 {
            return;
        }
        self.first(offset, k, t, c, rho, sign);
        let n = self.group.order();
        let k = k as usize;
        let digits: Vec<usize> = (0..k).map(|i| (t / n.pow((k - 1 - i) as u32)) % n).collect();
        let encode = |d: &[usize]| d.iter().fold(0, |acc, &x| acc * n + x);
        let mut face_sign = sign;
        let mut tuple = vec![0; k + 1];
        for i in 0..k {
            // (g_i·g_{i+1}) collapses onto digit i
            face_sign = -face_sign;
            let h = digits[i];
            tuple[..i].copy_from_slice(&digits[..i]);
            tuple[i + 2..].copy_from_slice(&digits[i + 1..]);
            for gi in 0..n {
                tuple[i] = gi;
                tuple[i + 1] = self.group.mul(self.group.inv(gi), h);
                self.out.push((offset + encode(&tuple) * p + c, BigInt::from(face_sign)));
            }
        }
        face_sign = -face_sign;
        for g in 0..n {
            self.out.push((offset + (t * n + g) * p + c, BigInt::from(face_sign)));
        }
    }
}

/// Pulls a lift back along `phi: K → Γ`: `x'(k₁…k_j) = x(φ(k₁)…φ(φ_j))`,
/// blockwise for the `A` part (degree `n + 1`) and the `B` part (degree `n`).
pub(crate) fn pull_back_lift(
    lift: &[BigInt],
    n: i64,
    source_order: usize,
    target_order: usize,
    phi: &[usize],
    m_a: usize,
    m_b: usize,
) -> Vec<BigInt> {
    let dim = |order: usize, k: i64, p: usize| if k < 0 { 0 } else { order.pow(k as u32) * p };
    let xa = dim(source_order, n + 1, m_a);
    let mut out = pull_back_block(&lift[..xa], n + 1, source_order, target_order, phi, m_a);
    out.extend(pull_back_block(&lift[xa..], n, source_order, target_order, phi, m_b));
    out
}

fn pull_back_block(block: &[BigInt], k: i64, n_src: usize, n_tgt: usize, phi: &[usize], p: usize) -> Vec<BigInt> {
    if k < 0 || p == 0 {
        return Vec::new();
    }
    let k = k as usize;
    let count = n_tgt.pow(k as u32);
    let mut out = Vec::with_capacity(count * p);
    for t in 0..count {
        let mut src = 0;
        for i in 0..k {
            let digit = (t / n_tgt.pow((k - 1 - i) as u32)) % n_tgt;
            src = src * n_src + phi[digit];
        }
        out.extend_from_slice(&block[src * p..(src + 1) * p]);
    }
    out
}

/// Applies `mat` to each of the `tuples` values of a cochain.
pub(crate) fn pointwise_map(block: &[BigInt], tuples: usize, mat: &IntMatrix) -> Vec<BigInt> {
    let p = mat.cols();
    (0..tuples).flat_map(|t| mat.mul_vec(&block[t * p..(t + 1) * p])).collect()
}
