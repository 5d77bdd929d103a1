use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{
    image_basis, kernel_basis, smith_normal_form, AbelianGroupStructure, IntMatrix, LinalgError,
    LinearSolver, Smith,
};

/// `L / N` for lattices `N ⊆ L ⊆ Z^a`, given by generating columns.
#[derive(Clone, Debug)]
pub struct Subquotient {
    basis: IntMatrix,
    basis_solver: LinearSolver,
    smith: Smith,
    factors: Vec<BigInt>,
    /// positions whose factor is not one, in order
    positions: Vec<usize>,
}

impl Subquotient {
    pub fn new(l_generators: &IntMatrix, n_generators: &IntMatrix) -> Result<Self, LinalgError> {
        if l_generators.rows() != n_generators.rows() {
            return Err(LinalgError::DimensionMismatch {
                left: (l_generators.rows(), l_generators.cols()),
                right: (n_generators.rows(), n_generators.cols()),
            });
        }
        let basis = image_basis(l_generators);
        let basis_solver = LinearSolver::new(&basis);
        let mut coords = IntMatrix::zeros(basis.cols(), n_generators.cols());
        for j in 0..n_generators.cols() {
            let y = basis_solver
                .solve(&n_generators.column(j))?
                .ok_or(LinalgError::NotASubmodule { column: j })?;
            for (i, v) in y.into_iter().enumerate() {
                coords[(i, j)] = v;
            }
        }
        let smith = smith_normal_form(&coords);
        let factors: Vec<BigInt> = (0..basis.cols())
            .map(|i| if i < smith.rank { smith.d[(i, i)].clone() } else { BigInt::zero() })
            .collect();
        let positions = (0..factors.len()).filter(|&i| !factors[i].is_one()).collect();
        Ok(Subquotient { basis, basis_solver, smith, factors, positions })
    }

    pub fn structure(&self) -> AbelianGroupStructure {
        AbelianGroupStructure::from_cyclic_orders(0, self.positions.iter().map(|&i| self.factors[i].clone()))
    }

    /// Order of each generator (`0` for infinite order), aligned with [`Self::generators`].
    pub fn generator_orders(&self) -> Vec<BigInt> {
        self.positions.iter().map(|&i| self.factors[i].clone()).collect()
    }

    /// Representatives in `Z^a` of the cyclic summands.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.positions
            .iter()
            .map(|&i| self.basis.mul_vec(&self.smith.u_inv.column(i)))
            .collect()
    }

    /// Coordinates of `x` along [`Self::generators`], reduced modulo finite orders;
    /// `None` when `x ∉ L`.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let y = self.basis_solver.solve(x).ok()??;
        let c = self.smith.u.mul_vec(&y);
        Some(
            self.positions
                .iter()
                .map(|&i| {
                    let d = &self.factors[i];
                    if d.is_zero() {
                        c[i].clone()
                    } else {
                        c[i].mod_floor(d)
                    }
                })
                .collect(),
        )
    }
}

/// Homomorphism `⊕ Z/sᵢ → ⊕ Z/tⱼ` (order `0` meaning `Z`) given on generators.
#[derive(Clone, Debug)]
pub struct AbelianHom {
    source: Vec<BigInt>,
    target: Vec<BigInt>,
    matrix: IntMatrix,
}

impl AbelianHom {
    pub fn new(source: Vec<BigInt>, target: Vec<BigInt>, matrix: IntMatrix) -> Result<Self, LinalgError> {
        if matrix.rows() != target.len() || matrix.cols() != source.len() {
            return Err(LinalgError::DimensionMismatch {
                left: (target.len(), source.len()),
                right: (matrix.rows(), matrix.cols()),
            });
        }
        let hom = AbelianHom { source, target, matrix };
        for j in 0..hom.source.len() {
            let image: Vec<BigInt> = hom.matrix.column(j).iter().map(|x| x * &hom.source[j]).collect();
            if !hom.target_relations_solver().contains(&image) {
                return Err(LinalgError::NotWellDefined { generator: j });
            }
        }
        Ok(hom)
    }

    pub fn source(&self) -> &[BigInt] {
        &self.source
    }

    pub fn target(&self) -> &[BigInt] {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    fn target_relations(&self) -> IntMatrix {
        IntMatrix::diagonal(self.target.len(), self.target.len(), &self.target)
    }

    fn target_relations_solver(&self) -> LinearSolver {
        LinearSolver::new(&self.target_relations())
    }

    fn source_relations(&self) -> IntMatrix {
        IntMatrix::diagonal(self.source.len(), self.source.len(), &self.source)
    }

    /// Basis of `{x ∈ Z^s : M·x ∈ ⊕ tⱼ Z}`.
    pub fn kernel_lattice(&self) -> IntMatrix {
        let s = self.source.len();
        let stacked = self.matrix.hstack(&self.target_relations().scale(&BigInt::from(-1)));
        let k = kernel_basis(&stacked);
        let top: Vec<usize> = (0..s).collect();
        image_basis(&k.select_rows(&top))
    }

    /// Basis of `im M + ⊕ tⱼ Z` in `Z^t`.
    pub fn image_lattice(&self) -> IntMatrix {
        image_basis(&self.matrix.hstack(&self.target_relations()))
    }

    /// The kernel as a subquotient of `Z^s`, generators expressed on source generators.
    pub fn kernel(&self) -> Subquotient {
        Subquotient::new(&self.kernel_lattice(), &self.source_relations())
            .expect("source relations lie in the kernel of a well-defined hom")
    }

    pub fn image(&self) -> Subquotient {
        Subquotient::new(&self.image_lattice(), &self.target_relations())
            .expect("target relations lie in the image lattice")
    }

    /// Whether `ker(next) = im(self)` in the middle group.
    pub fn exact_with(&self, next: &AbelianHom) -> bool {
        assert_eq!(self.target, next.source, "middle groups differ");
        lattices_equal(&self.image_lattice(), &next.kernel_lattice())
    }

    /// `⊕ hᵢ : G → ⊕ Hᵢ` for homs with a common source.
    pub fn stack(source: Vec<BigInt>, homs: &[&AbelianHom]) -> Result<AbelianHom, LinalgError> {
        let mut target = Vec::new();
        let mut matrix = IntMatrix::zeros(0, source.len());
        for h in homs {
            assert_eq!(h.source, source, "stacked homs need a common source");
            target.extend(h.target.iter().cloned());
            matrix = matrix.vstack(&h.matrix);
        }
        AbelianHom::new(source, target, matrix)
    }
}

/// Equality of the lattices spanned by the columns of `a` and `b`.
pub fn lattices_equal(a: &IntMatrix, b: &IntMatrix) -> bool {
    if a.rows() != b.rows() {
        return false;
    }
    let (sa, sb) = (LinearSolver::new(a), LinearSolver::new(b));
    (0..b.cols()).all(|j| sa.contains(&b.column(j))) && (0..a.cols()).all(|j| sb.contains(&a.column(j)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn subquotient_of_z_by_six() {
        let l = IntMatrix::from_rows(&[vec![2]]);
        let n = IntMatrix::from_rows(&[vec![12]]);
        let q = Subquotient::new(&l, &n).unwrap();
        assert_eq!(q.structure().invariant_factors(), &b(&[6])[..]);
        assert_eq!(q.coordinates(&b(&[3])), None);
        let g = &q.generators()[0];
        assert_eq!(q.coordinates(g), Some(b(&[1])));
        assert_eq!(q.coordinates(&b(&[14])).unwrap().len(), 1);
    }

    #[test]
    fn not_a_submodule() {
        let l = IntMatrix::from_rows(&[vec![2]]);
        let n = IntMatrix::from_rows(&[vec![3]]);
        assert!(matches!(Subquotient::new(&l, &n), Err(LinalgError::NotASubmodule { .. })));
    }

    #[test]
    fn hom_kernel_and_exactness() {
        // Z/4 --x2--> Z/4 --x2--> Z/4 is exact in the middle
        let h = AbelianHom::new(b(&[4]), b(&[4]), IntMatrix::from_rows(&[vec![2]])).unwrap();
        assert!(h.exact_with(&h));
        assert_eq!(h.kernel().structure().invariant_factors(), &b(&[2])[..]);
        // Z/2 -> Z/4, 1 -> 1 is not well defined
        let bad = AbelianHom::new(b(&[2]), b(&[4]), IntMatrix::from_rows(&[vec![1]]));
        assert!(matches!(bad, Err(LinalgError::NotWellDefined { generator: 0 })));
    }
}
