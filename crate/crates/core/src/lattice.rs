//! G-lattices: free Z-modules of finite rank with a unimodular action of a
//! finite group, stored as one matrix per group element.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{
    cokernel_structure, kernel_basis_hnf, left_inverse, smith_normal_form, solve_integer, FinAbGroup,
    IntMatrix,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};

#[derive(Clone, Debug)]
pub struct GLattice {
    group: Arc<FiniteGroup>,
    rank: usize,
    action: Vec<IntMatrix>,
}

impl PartialEq for GLattice {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.group, &other.group) || self.group == other.group)
            && self.rank == other.rank
            && self.action == other.action
    }
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> Option<IntMatrix> {
    if !m.is_unimodular() {
        return None;
    }
    solve_integer(m, &IntMatrix::identity(m.rows()))
}

impl GLattice {
    /// Expands one matrix per group generator to the whole group and
    /// validates the result.
    pub fn from_generator_matrices(group: Arc<FiniteGroup>, rank: usize, mats: &[IntMatrix]) -> Result<Self> {
        let gens = group.generators().to_vec();
        if mats.len() != gens.len() {
            return Err(Error::ShapeMismatch(format!(
                "{} generator matrices given for {} generators",
                mats.len(),
                gens.len()
            )));
        }
        for (k, m) in mats.iter().enumerate() {
            if m.shape() != (rank, rank) {
                return Err(Error::ShapeMismatch(format!(
                    "matrix for generator {k} is {}x{}, expected {rank}x{rank}",
                    m.rows(),
                    m.cols()
                )));
            }
            if !m.is_unimodular() {
                return Err(Error::NotUnimodular { element: gens[k] });
            }
        }
        let n = group.order();
        let mut action: Vec<Option<IntMatrix>> = vec![None; n];
        action[group.identity()] = Some(IntMatrix::identity(rank));
        let mut queue = vec![group.identity()];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            let ax = action[x].clone().expect("visited");
            for (k, &s) in gens.iter().enumerate() {
                let y = group.mul(x, s);
                let ay = &ax * &mats[k];
                match &action[y] {
                    Some(existing) if *existing != ay => return Err(Error::NotHomomorphism { g: x, h: s }),
                    Some(_) => {}
                    None => {
                        action[y] = Some(ay);
                        queue.push(y);
                    }
                }
            }
            i += 1;
        }
        let action: Vec<IntMatrix> = action
            .into_iter()
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Internal("generators do not reach every element".into()))?;
        let lattice = GLattice { group, rank, action };
        lattice.validate()?;
        Ok(lattice)
    }

    /// Builds from a full per-element action without checks; call
    /// [`GLattice::validate`] before trusting it.
    pub fn from_action_unchecked(group: Arc<FiniteGroup>, rank: usize, action: Vec<IntMatrix>) -> Self {
        GLattice { group, rank, action }
    }

    /// Checks unimodularity, the identity and the homomorphism property on
    /// every pair of elements.
    pub fn validate(&self) -> Result<()> {
        let g = &self.group;
        if self.action.len() != g.order() {
            return Err(Error::ShapeMismatch("one matrix per element required".into()));
        }
        for (e, m) in self.action.iter().enumerate() {
            if m.shape() != (self.rank, self.rank) {
                return Err(Error::ShapeMismatch(format!("action of {e} has wrong shape")));
            }
            if !m.is_unimodular() {
                return Err(Error::NotUnimodular { element: e });
            }
        }
        if !self.action[g.identity()].is_identity() {
            return Err(Error::NotHomomorphism {
                g: g.identity(),
                h: g.identity(),
            });
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if &self.action[a] * &self.action[b] != self.action[g.mul(a, b)] {
                    return Err(Error::NotHomomorphism { g: a, h: b });
                }
            }
        }
        Ok(())
    }

    pub fn trivial(group: Arc<FiniteGroup>, rank: usize) -> Self {
        let action = vec![IntMatrix::identity(rank); group.order()];
        GLattice { group, rank, action }
    }

    /// Rank-one lattice where `g` acts by `signs[g]` (each +-1).
    pub fn rank_one(group: Arc<FiniteGroup>, signs: &[i64]) -> Result<Self> {
        let action = signs.iter().map(|&s| IntMatrix::from_rows(&[[s]])).collect();
        let l = GLattice { group, rank: 1, action };
        l.validate()?;
        Ok(l)
    }

    /// `Z[G/H]` with `G` permuting the left cosets listed by
    /// [`FiniteGroup::left_cosets`].
    pub fn permutation_lattice(group: Arc<FiniteGroup>, h: &Subgroup) -> Self {
        let cosets = group.left_cosets(h);
        let r = cosets.len();
        let mut coset_of = vec![0; group.order()];
        for (c, els) in cosets.iter().enumerate() {
            for &x in els {
                coset_of[x] = c;
            }
        }
        let action = (0..group.order())
            .map(|g| {
                let mut m = IntMatrix::zeros(r, r);
                for (c, els) in cosets.iter().enumerate() {
                    m[(coset_of[group.mul(g, els[0])], c)] = BigInt::one();
                }
                m
            })
            .collect();
        GLattice { group, rank: r, action }
    }

    /// Kernel of the augmentation `Z[G/H] -> Z`.
    pub fn augmentation_kernel(group: Arc<FiniteGroup>, h: &Subgroup) -> Self {
        let p = Self::permutation_lattice(group, h);
        let ones = IntMatrix::from_vec(1, p.rank, vec![BigInt::one(); p.rank]);
        p.sublattice(&kernel_basis_hnf(&ones)).expect("augmentation kernel is G-stable")
    }

    /// Quotient of `Z[G/H]` by the line spanned by the sum of all cosets.
    pub fn norm_quotient(group: Arc<FiniteGroup>, h: &Subgroup) -> Self {
        let p = Self::permutation_lattice(group, h);
        let norm = IntMatrix::from_vec(p.rank, 1, vec![BigInt::one(); p.rank]);
        p.quotient_by(&norm).expect("norm line is G-stable").0
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn action(&self, g: usize) -> &IntMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[IntMatrix] {
        &self.action
    }

    /// Matrices of the group generators, in generator order.
    pub fn generator_matrices(&self) -> Vec<IntMatrix> {
        self.group.generators().iter().map(|&g| self.action[g].clone()).collect()
    }

    pub fn is_permutation_basis(&self) -> bool {
        self.action.iter().all(IntMatrix::is_permutation)
    }

    fn same_group(&self, other: &GLattice) -> bool {
        Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group
    }

    pub fn direct_sum(&self, other: &GLattice) -> Result<Self> {
        if !self.same_group(other) {
            return Err(Error::GroupMismatch);
        }
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| IntMatrix::block_diag(&[a, b]))
            .collect();
        Ok(GLattice {
            group: self.group.clone(),
            rank: self.rank + other.rank,
            action,
        })
    }

    pub fn direct_sum_all(group: Arc<FiniteGroup>, parts: &[GLattice]) -> Result<Self> {
        parts
            .iter()
            .try_fold(GLattice::trivial(group, 0), |acc, p| acc.direct_sum(p))
    }

    /// `Hom(X, Z)` with `g` acting by the transpose of `rho(g^-1)`.
    pub fn dual(&self) -> Self {
        let action = (0..self.group.order())
            .map(|g| self.action[self.group.inv(g)].transpose())
            .collect();
        GLattice {
            group: self.group.clone(),
            rank: self.rank,
            action,
        }
    }

    /// Same lattice seen as a lattice over the subgroup `h`, which becomes a
    /// group in its own right with elements renumbered `0..|h|` in sorted
    /// order of the original indices.
    pub fn restrict(&self, h: &Subgroup) -> Result<Self> {
        let els = h.elements();
        if !self.group.is_subgroup(els) {
            return Err(Error::NotSubgroup(format!("{els:?}")));
        }
        let pos = |x: usize| els.binary_search(&x).expect("closed under multiplication");
        let rows: Vec<Vec<usize>> = els
            .iter()
            .map(|&a| els.iter().map(|&b| pos(self.group.mul(a, b))).collect())
            .collect();
        let gens = self.group.greedy_generators(els).into_iter().map(pos).collect();
        let sub = FiniteGroup::from_table(&rows, Some(gens))?;
        let action = els.iter().map(|&x| self.action[x].clone()).collect();
        Ok(GLattice {
            group: Arc::new(sub),
            rank: self.rank,
            action,
        })
    }

    /// Change of basis: the new action is `p^-1 rho(g) p`.
    pub fn change_basis(&self, p: &IntMatrix) -> Result<Self> {
        let pinv = unimodular_inverse(p).ok_or_else(|| Error::ShapeMismatch("basis change is not unimodular".into()))?;
        let action = self.action.iter().map(|m| &(&pinv * m) * p).collect();
        Ok(GLattice {
            group: self.group.clone(),
            rank: self.rank,
            action,
        })
    }

    /// The G-stable saturated sublattice spanned by the columns of `basis`.
    pub fn sublattice(&self, basis: &IntMatrix) -> Result<Self> {
        if basis.rows() != self.rank {
            return Err(Error::ShapeMismatch("sublattice basis has wrong row count".into()));
        }
        let k = basis.cols();
        if k == 0 {
            return Ok(GLattice::trivial(self.group.clone(), 0));
        }
        let linv = left_inverse(basis).ok_or_else(|| Error::ShapeMismatch("sublattice basis is not saturated".into()))?;
        let mut action = Vec::with_capacity(self.group.order());
        for m in &self.action {
            let img = m * basis;
            let sub = &linv * &img;
            if (basis * &sub) != img {
                return Err(Error::Internal("span is not G-stable".into()));
            }
            action.push(sub);
        }
        Ok(GLattice {
            group: self.group.clone(),
            rank: k,
            action,
        })
    }

    /// Quotient by the G-stable saturated span of `basis`. Also returns the
    /// projection matrix onto the quotient coordinates.
    pub fn quotient_by(&self, basis: &IntMatrix) -> Result<(Self, IntMatrix)> {
        let k = basis.cols();
        let s = smith_normal_form(basis);
        if s.rank != k || s.invariants().iter().any(|d| !d.is_one()) {
            return Err(Error::ShapeMismatch("quotient basis is not saturated".into()));
        }
        let u = &s.u;
        let w = unimodular_inverse(u).expect("SNF transform is unimodular");
        let n = self.rank;
        let rest: Vec<usize> = (k..n).collect();
        let proj = u.transpose().select_columns(&rest).transpose();
        let mut action = Vec::with_capacity(self.group.order());
        for m in &self.action {
            let full = &(u * m) * &w;
            // the span of the first k coordinates must be stable
            for i in k..n {
                for j in 0..k {
                    if !full[(i, j)].is_zero() {
                        return Err(Error::Internal("quotiented span is not G-stable".into()));
                    }
                }
            }
            let mut q = IntMatrix::zeros(n - k, n - k);
            for i in k..n {
                for j in k..n {
                    q[(i - k, j - k)] = full[(i, j)].clone();
                }
            }
            action.push(q);
        }
        Ok((
            GLattice {
                group: self.group.clone(),
                rank: n - k,
                action,
            },
            proj,
        ))
    }

    /// `sum_{h in H} (rho(h) - I)` stacked vertically over generators of `h`.
    fn stacked_differences(&self, h: &Subgroup, vertical: bool) -> IntMatrix {
        let gens = self.group.greedy_generators(h.elements());
        let id = IntMatrix::identity(self.rank);
        let parts: Vec<IntMatrix> = gens.iter().map(|&g| self.action[g].sub(&id)).collect();
        if vertical {
            IntMatrix::vstack(self.rank, &parts)
        } else {
            IntMatrix::hstack(self.rank, &parts)
        }
    }

    /// Basis (columns, Hermite form) of the fixed sublattice `X^H`.
    pub fn invariants(&self, h: &Subgroup) -> IntMatrix {
        kernel_basis_hnf(&self.stacked_differences(h, true))
    }

    /// The coinvariants `X_H = X / sum_h (h - 1) X`.
    pub fn coinvariants(&self, h: &Subgroup) -> FinAbGroup {
        cokernel_structure(&self.stacked_differences(h, false))
    }

    /// Norm map `N_H = sum_{h in H} rho(h)`.
    pub fn norm_matrix(&self, h: &Subgroup) -> IntMatrix {
        h.elements()
            .iter()
            .fold(IntMatrix::zeros(self.rank, self.rank), |acc, &x| acc.add(&self.action[x]))
    }

    /// Trace of the action of each element.
    pub fn traces(&self) -> Vec<BigInt> {
        self.action.iter().map(IntMatrix::trace).collect()
    }

    /// The G-map `Z[G/H] -> X` sending the coset `H` to `x` (which must be
    /// fixed by `H`), in the coset basis of [`GLattice::permutation_lattice`].
    pub fn map_from_permutation(&self, h: &Subgroup, x: &[BigInt]) -> Result<IntMatrix> {
        for &y in h.elements() {
            if self.action[y].mul_vec(x) != x {
                return Err(Error::ShapeMismatch("image of the base coset is not H-fixed".into()));
            }
        }
        let cosets = self.group.left_cosets(h);
        let cols: Vec<Vec<BigInt>> = cosets.iter().map(|c| self.action[c[0]].mul_vec(x)).collect();
        Ok(IntMatrix::from_columns(self.rank, &cols))
    }

    /// Whether `f` (rows = target rank) intertwines `self -> target`.
    pub fn is_equivariant_map(&self, target: &GLattice, f: &IntMatrix) -> bool {
        f.shape() == (target.rank, self.rank)
            && self
                .group
                .generators()
                .iter()
                .all(|&g| (f * &self.action[g]) == (&target.action[g] * f))
    }
}

/// Kernel of an equivariant map as a G-lattice, with its inclusion matrix.
pub fn kernel_lattice(source: &GLattice, map: &IntMatrix) -> Result<(GLattice, IntMatrix)> {
    let basis = kernel_basis_hnf(map);
    let basis = if basis.cols() == 0 {
        IntMatrix::zeros(source.rank(), 0)
    } else {
        basis
    };
    Ok((source.sublattice(&basis)?, basis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::*;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    #[test]
    fn validation_examples() {
        let g = Arc::new(symmetric3());
        assert!(GLattice::trivial(g, 1).validate().is_ok());
        assert!(matches!(
            GLattice::from_generator_matrices(c2(), 1, &[IntMatrix::from_rows(&[[2]])]),
            Err(Error::NotUnimodular { .. })
        ));
        assert!(GLattice::from_generator_matrices(c2(), 1, &[IntMatrix::from_rows(&[[-1]])]).is_ok());
        // an order-3 matrix cannot represent the generator of C2
        let bad = IntMatrix::from_rows(&[[0, -1], [1, -1]]);
        assert!(matches!(
            GLattice::from_generator_matrices(c2(), 2, &[bad]),
            Err(Error::NotHomomorphism { .. })
        ));
    }

    #[test]
    fn permutation_lattices() {
        let g = c2();
        let classes = g.subgroup_classes(48).unwrap();
        let reg = GLattice::permutation_lattice(g.clone(), &classes[0].representative);
        assert_eq!(reg.rank(), 2);
        assert!(reg.action(1).is_permutation() && !reg.action(1).is_identity());
        let triv = GLattice::permutation_lattice(g.clone(), &classes[1].representative);
        assert_eq!(triv, GLattice::trivial(g, 1));

        let s3 = Arc::new(symmetric3());
        let classes = s3.subgroup_classes(48).unwrap();
        let x = GLattice::permutation_lattice(s3.clone(), &classes[1].representative);
        x.validate().unwrap();
        let mut traces: Vec<i64> = s3
            .conjugacy_classes()
            .iter()
            .map(|c| i64::try_from(x.action(c[0]).trace()).unwrap())
            .collect();
        assert_eq!(traces[0], 3);
        traces.sort();
        assert_eq!(traces, vec![0, 1, 3]);
    }

    #[test]
    fn sums_and_duals() {
        let g = c2();
        let z = GLattice::trivial(g.clone(), 1);
        let zm = GLattice::rank_one(g.clone(), &[1, -1]).unwrap();
        let s = z.direct_sum(&zm).unwrap();
        assert_eq!(s.action(1), &IntMatrix::from_rows(&[[1, 0], [0, -1]]));
        assert_eq!(z.direct_sum(&GLattice::trivial(g.clone(), 0)).unwrap(), z);
        assert_eq!(zm.dual(), zm);
        let v4 = Arc::new(klein_four());
        let j = GLattice::norm_quotient(v4.clone(), &Subgroup::from_elements(vec![0]));
        j.validate().unwrap();
        assert_eq!(j.dual().dual(), j);
        assert!(matches!(z.direct_sum(&GLattice::trivial(v4, 1)), Err(Error::GroupMismatch)));
    }

    #[test]
    fn restriction_to_c3_is_regular() {
        let s3 = Arc::new(symmetric3());
        let classes = s3.subgroup_classes(48).unwrap();
        let x = GLattice::permutation_lattice(s3.clone(), &classes[1].representative);
        let c3 = &classes[2].representative;
        let r = x.restrict(c3).unwrap();
        r.validate().unwrap();
        assert_eq!(r.group().order(), 3);
        // regular: every non-identity element is fixed-point free
        for e in 0..3 {
            if e != r.group().identity() {
                assert!(r.action(e).trace().is_zero());
            }
        }
        let whole = x.restrict(&Subgroup::from_elements((0..6).collect())).unwrap();
        assert_eq!(whole.actions(), x.actions());
    }

    #[test]
    fn invariants_and_coinvariants() {
        let g = c2();
        let all = Subgroup::from_elements(vec![0, 1]);
        let zm = GLattice::rank_one(g.clone(), &[1, -1]).unwrap();
        assert_eq!(zm.invariants(&all).cols(), 0);
        assert_eq!(zm.coinvariants(&all), FinAbGroup::cyclic(2));
        let reg = GLattice::permutation_lattice(g.clone(), &Subgroup::from_elements(vec![0]));
        assert_eq!(reg.invariants(&all), IntMatrix::from_rows(&[[1], [1]]));
        assert_eq!(reg.coinvariants(&all), FinAbGroup::new(vec![], 1));
        let z = GLattice::trivial(g, 1);
        assert_eq!(z.invariants(&all), IntMatrix::identity(1));
        assert_eq!(z.coinvariants(&all), FinAbGroup::new(vec![], 1));
    }

    #[test]
    fn quotient_and_kernel_constructors() {
        let v4 = Arc::new(klein_four());
        let one = Subgroup::from_elements(vec![0]);
        let i = GLattice::augmentation_kernel(v4.clone(), &one);
        let j = GLattice::norm_quotient(v4.clone(), &one);
        assert_eq!((i.rank(), j.rank()), (3, 3));
        i.validate().unwrap();
        // traces: rank 3 at identity, -1 elsewhere
        for e in 1..4 {
            assert_eq!(i.action(e).trace(), BigInt::from(-1));
            assert_eq!(j.action(e).trace(), BigInt::from(-1));
        }
    }
}
