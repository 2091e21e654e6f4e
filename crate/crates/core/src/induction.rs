//! Rational class functions, Artin induction of lattice characters and the
//! Ono decomposition `m X + P ~ Q` into permutation lattices.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, SubgroupClass};
use crate::lattice::GLattice;

/// A class function with rational values, one per conjugacy class in the
/// order of [`FiniteGroup::conjugacy_classes`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassFunction {
    group: Arc<FiniteGroup>,
    values: Vec<BigRational>,
}

impl ClassFunction {
    pub fn new(group: Arc<FiniteGroup>, values: Vec<BigRational>) -> Result<Self> {
        let classes = group.conjugacy_classes().len();
        if values.len() != classes {
            return Err(Error::ShapeMismatch(format!(
                "class function has {} values for {classes} classes",
                values.len()
            )));
        }
        Ok(ClassFunction { group, values })
    }

    pub fn from_integers(group: Arc<FiniteGroup>, values: &[i64]) -> Result<Self> {
        Self::new(group, values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    /// Value at a group element.
    pub fn at(&self, g: usize) -> &BigRational {
        &self.values[self.group.class_index()[g]]
    }

    pub fn add(&self, other: &ClassFunction) -> ClassFunction {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> ClassFunction {
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|a| a * k).collect(),
        }
    }

    pub fn is_integral(&self) -> bool {
        self.values.iter().all(|v| v.is_integer())
    }
}

/// Character of `X (x) C`: traces of class representatives.
pub fn lattice_character(x: &GLattice) -> ClassFunction {
    let g = x.group().clone();
    let values = g
        .conjugacy_classes()
        .iter()
        .map(|c| BigRational::from_integer(x.action(c[0]).trace()))
        .collect();
    ClassFunction { group: g, values }
}

/// Character of `Z[G/H]`: the number of cosets fixed by each element.
pub fn permutation_character(group: &Arc<FiniteGroup>, h: &Subgroup) -> ClassFunction {
    let cosets = group.left_cosets(h);
    let values = group
        .conjugacy_classes()
        .iter()
        .map(|c| {
            let g = c[0];
            let fixed = cosets
                .iter()
                .filter(|coset| {
                    let r = coset[0];
                    h.contains(group.mul(group.inv(r), group.mul(g, r)))
                })
                .count();
            BigRational::from_integer(fixed.into())
        })
        .collect();
    ClassFunction {
        group: group.clone(),
        values,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductionTerm {
    pub class_id: usize,
    pub subgroup: Subgroup,
    #[serde(with = "crate::arith::int_json")]
    pub coefficient: BigInt,
}

/// `m chi = sum_H a_H chi_{Z[G/H]}` with only nonzero terms kept.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InductionDecomposition {
    #[serde(with = "crate::arith::int_json")]
    pub m: BigInt,
    pub terms: Vec<InductionTerm>,
}

impl InductionDecomposition {
    /// Checks the identity on every conjugacy class.
    pub fn verify(&self, chi: &ClassFunction) -> bool {
        let g = chi.group();
        let mut rhs = ClassFunction {
            group: g.clone(),
            values: vec![BigRational::zero(); chi.values.len()],
        };
        for t in &self.terms {
            rhs = rhs.add(&permutation_character(g, &t.subgroup).scale(&BigRational::from_integer(t.coefficient.clone())));
        }
        chi.scale(&BigRational::from_integer(self.m.clone())) == rhs
    }
}

/// Subgroup classes ordered for pivoting: larger subgroups first.
fn pivot_order(classes: &[SubgroupClass]) -> Vec<&SubgroupClass> {
    let mut v: Vec<&SubgroupClass> = classes.iter().collect();
    v.sort_by(|a, b| b.order().cmp(&a.order()).then(a.id.cmp(&b.id)));
    v
}

/// Gauss-Jordan solution of `sum_j x_j cols[j] = rhs` with free variables
/// set to zero. Returns the solution and whether the columns are independent.
fn solve_rational(cols: &[&ClassFunction], rhs: &ClassFunction) -> Option<(Vec<BigRational>, bool)> {
    let n_rows = rhs.values.len();
    let n_cols = cols.len();
    let mut a: Vec<Vec<BigRational>> = (0..n_rows)
        .map(|i| {
            let mut row: Vec<BigRational> = cols.iter().map(|c| c.values[i].clone()).collect();
            row.push(rhs.values[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n_cols {
        if r == n_rows {
            break;
        }
        let Some(p) = (r..n_rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for v in a[r].iter_mut() {
            *v *= &inv;
        }
        for i in 0..n_rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= y * &f;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[n_cols].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); n_cols];
    for (i, &c) in pivots.iter().enumerate() {
        sol[c] = a[i][n_cols].clone();
    }
    Some((sol, pivots.len() == n_cols))
}

/// Largest number of column subsets tried in the minimal-support search.
const SUPPORT_SEARCH_LIMIT: usize = 20_000;

/// Solves `m chi = sum a_H chi_{Z[G/H]}` over the given subgroup classes.
///
/// The permutation characters are usually dependent, so the solution is
/// canonicalized: smallest support first, ties broken lexicographically
/// with larger subgroups ordered first. If the subset search exceeds its
/// limit, Gauss-Jordan elimination over all columns in that order (free
/// variables zero) is used instead.
pub fn artin_induction(chi: &ClassFunction, classes: &[SubgroupClass]) -> Result<InductionDecomposition> {
    let g = chi.group();
    let cols = pivot_order(classes);
    let chars: Vec<ClassFunction> = cols.iter().map(|c| permutation_character(g, &c.representative)).collect();
    let all: Vec<&ClassFunction> = chars.iter().collect();
    let (full, _) = solve_rational(&all, chi).ok_or(Error::NoSolution)?;

    let mut sol = full;
    if chi.values.iter().all(Zero::is_zero) {
        sol = vec![BigRational::zero(); cols.len()];
    } else if let Some(best) = minimal_support(&chars, chi) {
        sol = best;
    }

    let m = sol.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let terms = cols
        .iter()
        .zip(&sol)
        .filter(|(_, q)| !q.is_zero())
        .map(|(c, q)| InductionTerm {
            class_id: c.id,
            subgroup: c.representative.clone(),
            coefficient: (q * BigRational::from_integer(m.clone())).to_integer(),
        })
        .collect();
    let dec = InductionDecomposition { m, terms };
    if !dec.verify(chi) {
        return Err(Error::Internal("induction identity does not hold".into()));
    }
    Ok(dec)
}

fn minimal_support(chars: &[ClassFunction], chi: &ClassFunction) -> Option<Vec<BigRational>> {
    let n = chars.len();
    let mut budget = SUPPORT_SEARCH_LIMIT;
    for size in 1..=n.min(chi.values.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            if budget == 0 {
                return None;
            }
            budget -= 1;
            let sub: Vec<&ClassFunction> = idx.iter().map(|&i| &chars[i]).collect();
            if let Some((x, true)) = solve_rational(&sub, chi) {
                if x.iter().all(|v| !v.is_zero()) {
                    let mut out = vec![BigRational::zero(); n];
                    for (&i, v) in idx.iter().zip(x) {
                        out[i] = v;
                    }
                    return Some(out);
                }
            }
            // next combination in lexicographic order
            let mut k = size;
            while k > 0 && idx[k - 1] == n - size + k - 1 {
                k -= 1;
            }
            if k == 0 {
                break;
            }
            idx[k - 1] += 1;
            for j in k..size {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecEntry {
    pub class_id: usize,
    pub subgroup: Subgroup,
    #[serde(with = "crate::arith::int_json")]
    pub multiplicity: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OnoFactor {
    pub subgroup_id: usize,
    #[serde(with = "crate::arith::int_json")]
    pub exponent: BigInt,
}

/// `m chi_X + chi_P = chi_Q` with `P`, `Q` permutation lattices, and the
/// matching identity `L(X, -1)^m = prod_H zeta_{M_H}(-1)^{a_H}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OnoDecomposition {
    #[serde(with = "crate::arith::int_json")]
    pub m: BigInt,
    pub p_spec: Vec<SpecEntry>,
    pub q_spec: Vec<SpecEntry>,
    pub factors: Vec<OnoFactor>,
    pub identity: String,
}

pub fn ono_decomposition(x: &GLattice, classes: &[SubgroupClass]) -> Result<OnoDecomposition> {
    let chi = lattice_character(x);
    let dec = artin_induction(&chi, classes)?;
    let entry = |t: &InductionTerm| SpecEntry {
        class_id: t.class_id,
        subgroup: t.subgroup.clone(),
        multiplicity: t.coefficient.abs(),
    };
    let p_spec = dec.terms.iter().filter(|t| t.coefficient.is_negative()).map(entry).collect();
    let q_spec = dec.terms.iter().filter(|t| t.coefficient.is_positive()).map(entry).collect();
    let factors: Vec<OnoFactor> = dec
        .terms
        .iter()
        .map(|t| OnoFactor {
            subgroup_id: t.class_id,
            exponent: t.coefficient.clone(),
        })
        .collect();
    let rhs = if factors.is_empty() {
        "1".to_string()
    } else {
        factors
            .iter()
            .map(|f| format!("zeta_M{}(-1)^{}", f.subgroup_id, f.exponent))
            .collect::<Vec<_>>()
            .join(" * ")
    };
    let identity = format!("L(X,-1)^{} = {}", dec.m, rhs);
    Ok(OnoDecomposition {
        m: dec.m,
        p_spec,
        q_spec,
        factors,
        identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::symmetric3;

    fn coeffs(dec: &InductionDecomposition, classes: &[SubgroupClass]) -> Vec<(usize, i64)> {
        dec.terms
            .iter()
            .map(|t| (classes[t.class_id].order(), i64::try_from(&t.coefficient).unwrap()))
            .collect()
    }

    #[test]
    fn sign_character_over_c2() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let classes = g.subgroup_classes(48).unwrap();
        let chi = ClassFunction::from_integers(g.clone(), &[1, -1]).unwrap();
        let dec = artin_induction(&chi, &classes).unwrap();
        assert_eq!(dec.m, BigInt::one());
        let mut c = coeffs(&dec, &classes);
        c.sort();
        assert_eq!(c, vec![(1, 1), (2, -1)]);
    }

    #[test]
    fn permutation_characters_decompose_to_themselves() {
        let g = Arc::new(symmetric3());
        let classes = g.subgroup_classes(48).unwrap();
        for c in &classes {
            let chi = permutation_character(&g, &c.representative);
            let dec = artin_induction(&chi, &classes).unwrap();
            assert_eq!(dec.m, BigInt::one());
            assert_eq!(dec.terms.len(), 1);
            assert_eq!(dec.terms[0].class_id, c.id);
            assert_eq!(dec.terms[0].coefficient, BigInt::one());
        }
    }

    #[test]
    fn standard_character_of_s3() {
        let g = Arc::new(symmetric3());
        let classes = g.subgroup_classes(48).unwrap();
        // identity, transpositions, 3-cycles
        let reps: Vec<usize> = g.conjugacy_classes().iter().map(|c| g.element_order(c[0])).collect();
        let values: Vec<i64> = reps.iter().map(|&o| [0, 2, 0, -1][o]).collect();
        let chi = ClassFunction::from_integers(g.clone(), &values).unwrap();
        let dec = artin_induction(&chi, &classes).unwrap();
        assert!(dec.verify(&chi));
        let mut c = coeffs(&dec, &classes);
        c.sort();
        assert_eq!(c, vec![(2, 1), (6, -1)]);
    }

    #[test]
    fn non_character_without_solution() {
        // not a rational combination of permutation characters: nonconstant on a class pair
        let g = Arc::new(FiniteGroup::cyclic(4));
        let classes = g.subgroup_classes(48).unwrap();
        // value at the two generators of C4 differ -> not in the span of permutation characters
        let chi = ClassFunction::from_integers(g.clone(), &[1, 1, 0, 0]).unwrap();
        assert_eq!(artin_induction(&chi, &classes), Err(Error::NoSolution));
    }

    #[test]
    fn ono_examples() {
        let g = Arc::new(FiniteGroup::cyclic(2));
        let classes = g.subgroup_classes(48).unwrap();
        let z = GLattice::trivial(g.clone(), 1);
        let o = ono_decomposition(&z, &classes).unwrap();
        assert!(o.p_spec.is_empty());
        assert_eq!(o.q_spec.len(), 1);
        assert_eq!(o.q_spec[0].subgroup.order(), 2);

        let zm = GLattice::rank_one(g.clone(), &[1, -1]).unwrap();
        let o = ono_decomposition(&zm, &classes).unwrap();
        assert_eq!(o.m, BigInt::one());
        assert_eq!(o.p_spec.len(), 1);
        assert_eq!(o.p_spec[0].subgroup.order(), 2);
        assert_eq!(o.q_spec.len(), 1);
        assert_eq!(o.q_spec[0].subgroup.order(), 1);

        let reg = GLattice::permutation_lattice(g.clone(), &Subgroup::from_elements(vec![0]));
        let o = ono_decomposition(&reg, &classes).unwrap();
        assert!(o.p_spec.is_empty());
        assert_eq!(o.q_spec[0].subgroup.order(), 1);
    }
}
