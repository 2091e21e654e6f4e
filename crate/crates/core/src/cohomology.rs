//! Cohomology of finite groups with lattice coefficients, flasque
//! resolutions, invertibility certificates and the decomposition of
//! lattices over the group of order two attached to a real place.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::arith::{
    cokernel_structure, in_column_span, kernel_basis, left_inverse, solve_integer, FinAbGroup, IntMatrix,
};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, SubgroupClass};
use crate::lattice::{kernel_lattice, GLattice};

/// `H^1(H, X)` as crossed homomorphisms modulo principal ones.
///
/// A cocycle is determined by its values on a generating set of `H`; it
/// extends along the Cayley graph, and consistency on every edge is both
/// necessary and sufficient for the cocycle identity.
pub fn h1(x: &GLattice, h: &Subgroup) -> FinAbGroup {
    let g = x.group();
    let gens = g.greedy_generators(h.elements());
    let r = x.rank();
    let k = gens.len();
    if r == 0 || k == 0 {
        return FinAbGroup::trivial();
    }
    let width = k * r;

    // f(y) = forms[y] * (f(s_1), ..., f(s_k))
    let mut forms: Vec<Option<IntMatrix>> = vec![None; g.order()];
    forms[g.identity()] = Some(IntMatrix::zeros(r, width));
    let mut order = vec![g.identity()];
    let mut i = 0;
    while i < order.len() {
        let y = order[i];
        let fy = forms[y].clone().expect("visited");
        for (j, &s) in gens.iter().enumerate() {
            let z = g.mul(y, s);
            if forms[z].is_none() {
                forms[z] = Some(step_form(&fy, x.action(y), j, r));
                order.push(z);
            }
        }
        i += 1;
    }

    let mut blocks = Vec::new();
    for &y in &order {
        let fy = forms[y].as_ref().expect("visited");
        for (j, &s) in gens.iter().enumerate() {
            let z = g.mul(y, s);
            let diff = step_form(fy, x.action(y), j, r).sub(forms[z].as_ref().expect("visited"));
            if !diff.is_zero() {
                blocks.push(diff);
            }
        }
    }
    let cocycles = if blocks.is_empty() {
        IntMatrix::identity(width)
    } else {
        kernel_basis(&IntMatrix::vstack(width, &blocks))
    };
    if cocycles.cols() == 0 {
        return FinAbGroup::trivial();
    }
    let id = IntMatrix::identity(r);
    let cob: Vec<IntMatrix> = gens.iter().map(|&s| x.action(s).sub(&id)).collect();
    let coboundaries = IntMatrix::vstack(r, &cob);
    quotient_of_sublattices(&cocycles, &coboundaries)
}

fn step_form(fy: &IntMatrix, rho_y: &IntMatrix, j: usize, r: usize) -> IntMatrix {
    let mut out = fy.clone();
    for a in 0..r {
        for b in 0..r {
            out[(a, j * r + b)] += &rho_y[(a, b)];
        }
    }
    out
}

/// `span(big) / span(small)` where `span(small)` lies in the saturated
/// lattice spanned by the columns of `big`.
fn quotient_of_sublattices(big: &IntMatrix, small: &IntMatrix) -> FinAbGroup {
    let linv = left_inverse(big).expect("kernel bases are saturated");
    let coords = &linv * small;
    debug_assert_eq!(&(big * &coords), small, "sublattice not contained");
    cokernel_structure(&coords)
}

/// Tate cohomology `H^0(H, X) = X^H / N_H X`.
pub fn tate_h0(x: &GLattice, h: &Subgroup) -> FinAbGroup {
    let fixed = x.invariants(h);
    if fixed.cols() == 0 {
        return FinAbGroup::trivial();
    }
    quotient_of_sublattices(&fixed, &x.norm_matrix(h))
}

#[derive(Clone, Debug, Serialize)]
pub struct H1Witness {
    pub class_id: usize,
    pub subgroup: Subgroup,
    pub h1: FinAbGroup,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlasqueCheck {
    pub flasque: bool,
    pub witnesses: Vec<H1Witness>,
}

/// Flasque test: `H^1(H, X) = 0` for every subgroup class.
pub fn is_flasque(x: &GLattice, bound: usize) -> Result<FlasqueCheck> {
    let classes = x.group().subgroup_classes(bound)?;
    Ok(flasque_check_with(x, &classes))
}

fn flasque_check_with(x: &GLattice, classes: &[SubgroupClass]) -> FlasqueCheck {
    let witnesses: Vec<H1Witness> = classes
        .iter()
        .filter_map(|c| {
            let group = h1(x, &c.representative);
            (!group.is_trivial()).then(|| H1Witness {
                class_id: c.id,
                subgroup: c.representative.clone(),
                h1: group,
            })
        })
        .collect();
    FlasqueCheck {
        flasque: witnesses.is_empty(),
        witnesses,
    }
}

/// One summand `Z[G/H]` of a permutation lattice together with the image
/// of its base coset under a map to some lattice.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PermSummand {
    pub class_id: usize,
    pub subgroup: Subgroup,
    #[serde(serialize_with = "serialize_vec")]
    pub image: Vec<BigInt>,
}

fn serialize_vec<S: serde::Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        seq.serialize_element(&crate::arith::int_to_json(x))?;
    }
    seq.end()
}

/// A permutation lattice `P = (+) Z[G/H_i]` with an equivariant map to `X`.
fn permutation_presentation(x: &GLattice, summands: &[PermSummand]) -> Result<(GLattice, IntMatrix)> {
    let group = x.group().clone();
    let mut parts = Vec::with_capacity(summands.len());
    let mut maps = Vec::with_capacity(summands.len());
    for s in summands {
        parts.push(GLattice::permutation_lattice(group.clone(), &s.subgroup));
        maps.push(x.map_from_permutation(&s.subgroup, &s.image)?);
    }
    let p = GLattice::direct_sum_all(group, &parts)?;
    let map = IntMatrix::hstack(x.rank(), &maps);
    Ok((p, map))
}

/// `0 -> Q -> P -> X -> 0` with `P` a permutation lattice and `Q` flasque.
#[derive(Clone, Debug, Serialize)]
pub struct FlasqueResolution {
    pub p_summands: Vec<PermSummand>,
    #[serde(skip)]
    pub p: GLattice,
    pub surjection: IntMatrix,
    #[serde(serialize_with = "serialize_lattice")]
    pub q: GLattice,
    pub inclusion: IntMatrix,
}

pub(crate) fn serialize_lattice<S: serde::Serializer>(l: &GLattice, s: S) -> std::result::Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Repr {
        rank: usize,
        generator_matrices: Vec<IntMatrix>,
    }
    Repr {
        rank: l.rank(),
        generator_matrices: l.generator_matrices(),
    }
    .serialize(s)
}

/// Orbit decomposition of a lattice whose action is by permutation matrices.
fn permutation_orbits(x: &GLattice, classes: &[SubgroupClass]) -> Option<Vec<PermSummand>> {
    if !x.is_permutation_basis() {
        return None;
    }
    let g = x.group();
    let r = x.rank();
    let image_of = |e: usize, i: usize| -> usize {
        (0..r).find(|&k| x.action(e)[(k, i)].is_one()).expect("permutation matrix")
    };
    let mut seen = vec![false; r];
    let mut summands = Vec::new();
    for start in 0..r {
        if seen[start] {
            continue;
        }
        let mut orbit: Vec<usize> = (0..g.order()).map(|e| image_of(e, start)).collect();
        orbit.sort_unstable();
        orbit.dedup();
        for &i in &orbit {
            seen[i] = true;
        }
        // pick an orbit point whose stabilizer is a class representative
        let found = orbit.iter().find_map(|&pt| {
            let stab = Subgroup::from_elements((0..g.order()).filter(|&e| image_of(e, pt) == pt).collect());
            classes
                .iter()
                .find(|c| c.representative == stab)
                .map(|c| (pt, c))
        })?;
        let (pt, class) = found;
        let mut image = vec![BigInt::zero(); r];
        image[pt] = BigInt::one();
        summands.push(PermSummand {
            class_id: class.id,
            subgroup: class.representative.clone(),
            image,
        });
    }
    Some(summands)
}

/// Images of the `H`-fixed elements of `P` (orbit sums of cosets) under
/// the presentation `summands -> X`.
fn fixed_part_image(x: &GLattice, summands: &[PermSummand], h: &Subgroup) -> Vec<Vec<BigInt>> {
    let g = x.group();
    let mut out = Vec::new();
    for s in summands {
        let cosets = g.left_cosets(&s.subgroup);
        let mut coset_of = vec![0; g.order()];
        for (c, els) in cosets.iter().enumerate() {
            for &e in els {
                coset_of[e] = c;
            }
        }
        let mut seen = vec![false; cosets.len()];
        for c in 0..cosets.len() {
            if seen[c] {
                continue;
            }
            let mut acc = vec![BigInt::zero(); x.rank()];
            let mut orbit: Vec<usize> = h.elements().iter().map(|&y| coset_of[g.mul(y, cosets[c][0])]).collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &d in &orbit {
                seen[d] = true;
                let v = x.action(cosets[d][0]).mul_vec(&s.image);
                for (a, b) in acc.iter_mut().zip(v) {
                    *a += b;
                }
            }
            out.push(acc);
        }
    }
    out
}

/// Constructs a flasque resolution of `x`.
///
/// Permutation input (action by permutation matrices) yields the identity
/// resolution `P = X`, `Q = 0`. Otherwise subgroup classes are visited
/// from largest to smallest and, for each, Hermite-basis vectors of `X^H`
/// not already reached by `P^H` are added as `Z[G/H]` summands. This makes
/// `P^H -> X^H` onto for all `H`, hence `H^1(H, Q) = 0`.
pub fn flasque_resolution(x: &GLattice, bound: usize) -> Result<FlasqueResolution> {
    let classes = x.group().subgroup_classes(bound)?;
    flasque_resolution_with(x, &classes)
}

pub(crate) fn flasque_resolution_with(x: &GLattice, classes: &[SubgroupClass]) -> Result<FlasqueResolution> {
    let summands = match permutation_orbits(x, classes) {
        Some(s) => s,
        None => {
            let mut summands: Vec<PermSummand> = Vec::new();
            for class in classes.iter().rev() {
                let h = &class.representative;
                let fixed = x.invariants(h);
                for j in 0..fixed.cols() {
                    let v = fixed.column(j);
                    let reached = fixed_part_image(x, &summands, h);
                    let span = IntMatrix::from_columns(x.rank(), &reached);
                    if !in_column_span(&span, &v) {
                        summands.push(PermSummand {
                            class_id: class.id,
                            subgroup: h.clone(),
                            image: v,
                        });
                    }
                }
            }
            summands
        }
    };
    let (p, surjection) = permutation_presentation(x, &summands)?;
    if !cokernel_structure(&surjection).is_trivial() {
        return Err(Error::Internal("resolution map is not onto".into()));
    }
    let (q, inclusion) = kernel_lattice(&p, &surjection)?;
    let res = FlasqueResolution {
        p_summands: summands,
        p,
        surjection,
        q,
        inclusion,
    };
    res.check_exact(x)?;
    if !flasque_check_with(&res.q, classes).flasque {
        return Err(Error::Internal("kernel of the resolution is not flasque".into()));
    }
    Ok(res)
}

impl FlasqueResolution {
    /// Exactness and equivariance of `0 -> Q -> P -> X -> 0`.
    pub fn check_exact(&self, x: &GLattice) -> Result<()> {
        let ok = self.p.rank() == self.q.rank() + x.rank()
            && (&self.surjection * &self.inclusion).is_zero()
            && cokernel_structure(&self.surjection).is_trivial()
            && self.p.is_equivariant_map(x, &self.surjection)
            && self.q.is_equivariant_map(&self.p, &self.inclusion)
            && (self.q.rank() == 0 || left_inverse(&self.inclusion).is_some());
        if ok {
            Ok(())
        } else {
            Err(Error::Internal("flasque resolution is not exact".into()))
        }
    }
}

/// Data exhibiting `Q (+) I'` as isomorphic to a permutation lattice.
#[derive(Clone, Debug, Serialize)]
pub struct InvertibilityCertificate {
    #[serde(serialize_with = "serialize_lattice")]
    pub complement: GLattice,
    /// Matrix of the isomorphism `Q (+) I' -> (+) Z[G/H_i]`.
    pub iso: IntMatrix,
    pub target: Vec<Subgroup>,
}

/// Checks that `cert.iso` is unimodular and intertwines the actions of
/// `Q (+) I'` and the target permutation lattice.
pub fn verify_invertibility(q: &GLattice, cert: &InvertibilityCertificate) -> Result<bool> {
    let group = q.group().clone();
    if cert.complement.group().as_ref() != group.as_ref() {
        return Err(Error::ShapeMismatch("complement is over a different group".into()));
    }
    for h in &cert.target {
        if !group.is_subgroup(h.elements()) {
            return Err(Error::ShapeMismatch(format!("target entry {:?} is not a subgroup", h.elements())));
        }
    }
    let parts: Vec<GLattice> = cert
        .target
        .iter()
        .map(|h| GLattice::permutation_lattice(group.clone(), h))
        .collect();
    let target = GLattice::direct_sum_all(group, &parts)?;
    let source = q.direct_sum(&cert.complement)?;
    if cert.iso.shape() != (target.rank(), source.rank()) {
        return Err(Error::ShapeMismatch(format!(
            "iso is {}x{}, expected {}x{}",
            cert.iso.rows(),
            cert.iso.cols(),
            target.rank(),
            source.rank()
        )));
    }
    Ok(cert.iso.is_unimodular() && source.is_equivariant_map(&target, &cert.iso))
}

/// Limits for the automatic certificate search.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SearchBudget {
    /// Largest `rank(target) - rank(Q)` tried.
    pub extra_rank: usize,
    /// Coefficients of the retraction range over `-coeff..=coeff`.
    pub coeff: i64,
    pub max_targets: usize,
    pub max_solves: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            extra_rank: 4,
            coeff: 2,
            max_targets: 400,
            max_solves: 20_000,
        }
    }
}

/// Multisets of class ids (non-decreasing) whose indices sum to `total`.
fn target_specs(classes: &[SubgroupClass], total: usize, limit: usize) -> Vec<Vec<usize>> {
    fn rec(classes: &[SubgroupClass], start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>, limit: usize) {
        if out.len() >= limit {
            return;
        }
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for k in start..classes.len() {
            if classes[k].index <= left {
                cur.push(k);
                rec(classes, k, left - classes[k].index, cur, out, limit);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(classes, 0, total, &mut Vec::new(), &mut out, limit);
    out
}

/// Equivariant maps `Z[G/H] -> Q` correspond to `Q^H`; maps `Q -> Z[G/H]`
/// to `H`-fixed linear forms on `Q`.
fn hom_bases(q: &GLattice, targets: &[Subgroup]) -> (Vec<IntMatrix>, Vec<IntMatrix>) {
    let g = q.group();
    let r = q.rank();
    let dual = q.dual();
    let ranks: Vec<usize> = targets.iter().map(|h| g.order() / h.order()).collect();
    let total: usize = ranks.iter().sum();
    let mut into_q = Vec::new();
    let mut from_q = Vec::new();
    let mut off = 0;
    for (h, &n) in targets.iter().zip(&ranks) {
        let cosets = g.left_cosets(h);
        let fixed = q.invariants(h);
        for j in 0..fixed.cols() {
            let block = q.map_from_permutation(h, &fixed.column(j)).expect("fixed vector");
            let mut m = IntMatrix::zeros(r, total);
            for a in 0..r {
                for c in 0..n {
                    m[(a, off + c)] = block[(a, c)].clone();
                }
            }
            into_q.push(m);
        }
        let forms = dual.invariants(h);
        for j in 0..forms.cols() {
            let phi = forms.column(j);
            let mut m = IntMatrix::zeros(total, r);
            for (c, els) in cosets.iter().enumerate() {
                let row = q.action(g.inv(els[0])).transpose().mul_vec(&phi);
                for (a, v) in row.into_iter().enumerate() {
                    m[(off + c, a)] = v;
                }
            }
            from_q.push(m);
        }
        off += n;
    }
    (into_q, from_q)
}

fn vec_of(m: &IntMatrix) -> Vec<BigInt> {
    m.entries().to_vec()
}

/// Bounded search for a certificate that `q` is invertible: look for a
/// permutation lattice `T` and maps `f: Q -> T`, `g: T -> Q` with
/// `g f = id`. Then `T = f(Q) (+) ker g`.
pub fn search_invertibility_certificate(
    q: &GLattice,
    classes: &[SubgroupClass],
    budget: SearchBudget,
) -> Option<InvertibilityCertificate> {
    let group = q.group().clone();
    if q.rank() == 0 {
        return Some(InvertibilityCertificate {
            complement: GLattice::trivial(group, 0),
            iso: IntMatrix::zeros(0, 0),
            target: Vec::new(),
        });
    }
    if let Some(summands) = permutation_orbits(q, classes) {
        let (_, map) = permutation_presentation(q, &summands).ok()?;
        let iso = crate::lattice::unimodular_inverse(&map)?;
        let cert = InvertibilityCertificate {
            complement: GLattice::trivial(group, 0),
            iso,
            target: summands.into_iter().map(|s| s.subgroup).collect(),
        };
        return verify_invertibility(q, &cert).ok()?.then_some(cert);
    }

    let r = q.rank();
    let ident = IntMatrix::from_vec(r * r, 1, vec_of(&IntMatrix::identity(r)));
    let mut solves = 0;
    let mut targets_tried = 0;
    for extra in 0..=budget.extra_rank {
        for spec in target_specs(classes, r + extra, budget.max_targets) {
            targets_tried += 1;
            if targets_tried > budget.max_targets {
                return None;
            }
            let target: Vec<Subgroup> = spec.iter().map(|&k| classes[k].representative.clone()).collect();
            let (into_q, from_q) = hom_bases(q, &target);
            if into_q.is_empty() || from_q.is_empty() {
                continue;
            }
            let coeff = if into_q.len() <= 4 { budget.coeff } else { 1 };
            if into_q.len() > 6 {
                continue;
            }
            // products[j][i] = G_j F_i
            let products: Vec<Vec<IntMatrix>> =
                into_q.iter().map(|gj| from_q.iter().map(|fi| gj * fi).collect()).collect();
            let mut c = vec![-coeff; into_q.len()];
            loop {
                if c.iter().any(|&v| v != 0) {
                    solves += 1;
                    if solves > budget.max_solves {
                        return None;
                    }
                    let cols: Vec<Vec<BigInt>> = (0..from_q.len())
                        .map(|i| {
                            let mut acc = IntMatrix::zeros(r, r);
                            for (j, &cj) in c.iter().enumerate() {
                                if cj != 0 {
                                    acc = acc.add(&products[j][i].scale(&BigInt::from(cj)));
                                }
                            }
                            vec_of(&acc)
                        })
                        .collect();
                    let system = IntMatrix::from_columns(r * r, &cols);
                    if let Some(sol) = solve_integer(&system, &ident) {
                        let f = from_q.iter().enumerate().fold(
                            IntMatrix::zeros(from_q[0].rows(), r),
                            |acc, (i, fi)| acc.add(&fi.scale(&sol[(i, 0)])),
                        );
                        let g = into_q.iter().zip(&c).fold(IntMatrix::zeros(r, f.rows()), |acc, (gj, &cj)| {
                            acc.add(&gj.scale(&BigInt::from(cj)))
                        });
                        if let Some(cert) = certificate_from_retraction(q, &target, &f, &g) {
                            return Some(cert);
                        }
                    }
                }
                // odometer over coefficient vectors
                let mut k = 0;
                while k < c.len() && c[k] == coeff {
                    c[k] = -coeff;
                    k += 1;
                }
                if k == c.len() {
                    break;
                }
                c[k] += 1;
            }
        }
    }
    None
}

fn certificate_from_retraction(
    q: &GLattice,
    target: &[Subgroup],
    f: &IntMatrix,
    g: &IntMatrix,
) -> Option<InvertibilityCertificate> {
    let group = q.group().clone();
    let parts: Vec<GLattice> = target
        .iter()
        .map(|h| GLattice::permutation_lattice(group.clone(), h))
        .collect();
    let t = GLattice::direct_sum_all(group.clone(), &parts).ok()?;
    let (complement, k) = kernel_lattice(&t, g).ok()?;
    let iso = IntMatrix::hstack(t.rank(), &[f.clone(), k]);
    let cert = InvertibilityCertificate {
        complement,
        iso,
        target: target.to_vec(),
    };
    verify_invertibility(q, &cert).ok()?.then_some(cert)
}

/// Lifts the base coset generator of each summand of `onto` (a map
/// `P_onto -> X`) through `through: P_through -> X`, adjusting by the
/// kernel `Q_through` so the lift is fixed by the summand's subgroup.
/// Returns the columns of the induced section in `P_through` coordinates.
fn lift_summands(
    group: &Arc<FiniteGroup>,
    onto: &[PermSummand],
    through_p: &GLattice,
    through_map: &IntMatrix,
    through_q: &GLattice,
    through_incl: &IntMatrix,
) -> Result<Vec<Vec<Vec<BigInt>>>> {
    let mut out = Vec::with_capacity(onto.len());
    for s in onto {
        let rhs = IntMatrix::from_columns(s.image.len(), std::slice::from_ref(&s.image));
        let p0 = solve_integer(through_map, &rhs).ok_or_else(|| Error::Internal("lift does not exist".into()))?;
        let mut p = p0.column(0);
        let gens = group.greedy_generators(s.subgroup.elements());
        if !gens.is_empty() && through_q.rank() > 0 {
            let rp = through_p.rank();
            let id_p = IntMatrix::identity(rp);
            let id_q = IntMatrix::identity(through_q.rank());
            let lhs: Vec<IntMatrix> = gens
                .iter()
                .map(|&h| through_incl * &through_q.action(h).sub(&id_q))
                .collect();
            let rhs: Vec<IntMatrix> = gens
                .iter()
                .map(|&h| (&through_p.action(h).sub(&id_p) * &p0).neg())
                .collect();
            let a = solve_integer(
                &IntMatrix::vstack(through_q.rank(), &lhs),
                &IntMatrix::vstack(1, &rhs),
            )
            .ok_or_else(|| Error::Internal("no fixed lift: kernel is not flasque".into()))?;
            let shift = through_incl.mul_vec(&a.column(0));
            for (x, y) in p.iter_mut().zip(shift) {
                *x += y;
            }
        }
        for &h in s.subgroup.elements() {
            if through_p.action(h).mul_vec(&p) != p {
                return Err(Error::Internal("lift is not fixed".into()));
            }
        }
        let cosets = group.left_cosets(&s.subgroup);
        out.push(cosets.iter().map(|c| through_p.action(c[0]).mul_vec(&p)).collect());
    }
    Ok(out)
}

/// A certificate for the kernel `Q1` of `resolution`, built by comparing it
/// with a second presentation `reference: P2 -> X` whose kernel `Q2` is
/// itself certified invertible. The fibre product `E` of `P1` and `P2`
/// over `X` splits both ways, so `Q1 (+) P2 = E = Q2 (+) P1`.
pub fn certificate_from_reference(
    x: &GLattice,
    resolution: &FlasqueResolution,
    reference: &[PermSummand],
    classes: &[SubgroupClass],
    budget: SearchBudget,
) -> Result<Option<InvertibilityCertificate>> {
    let group = x.group().clone();
    let (p2, s2) = permutation_presentation(x, reference)?;
    if !cokernel_structure(&s2).is_trivial() {
        return Err(Error::ShapeMismatch("reference presentation is not onto".into()));
    }
    let (q2, i2) = kernel_lattice(&p2, &s2)?;
    let Some(cert2) = search_invertibility_certificate(&q2, classes, budget) else {
        return Ok(None);
    };
    let (p1, s1, q1, i1) = (&resolution.p, &resolution.surjection, &resolution.q, &resolution.inclusion);
    let (r1, r2) = (p1.rank(), p2.rank());
    let (k1, k2) = (q1.rank(), q2.rank());
    let amb = r1 + r2;

    // phi: Q1 (+) P2 -> P1 (+) P2
    let mut phi_cols: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..k1 {
        let mut v = i1.column(j);
        v.extend(std::iter::repeat_n(BigInt::zero(), r2));
        phi_cols.push(v);
    }
    let lifts = lift_summands(&group, reference, p1, s1, q1, i1)?;
    let mut off = 0;
    for cols in &lifts {
        for (c, p) in cols.iter().enumerate() {
            let mut v = p.clone();
            let mut e = vec![BigInt::zero(); r2];
            e[off + c] = BigInt::one();
            v.extend(e);
            phi_cols.push(v);
        }
        off += cols.len();
    }

    // psi: Q2 (+) P1 -> P1 (+) P2
    let mut psi_cols: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..k2 {
        let mut v = vec![BigInt::zero(); r1];
        v.extend(i2.column(j));
        psi_cols.push(v);
    }
    let lifts = lift_summands(&group, &resolution.p_summands, &p2, &s2, &q2, &i2)?;
    let mut off = 0;
    for cols in &lifts {
        for (c, p) in cols.iter().enumerate() {
            let mut v = vec![BigInt::zero(); r1];
            v[off + c] = BigInt::one();
            v.extend(p.iter().cloned());
            psi_cols.push(v);
        }
        off += cols.len();
    }

    let phi = IntMatrix::from_columns(amb, &phi_cols);
    let psi = IntMatrix::from_columns(amb, &psi_cols);
    let m = solve_integer(&psi, &phi).ok_or_else(|| Error::Internal("fibre product bases disagree".into()))?;
    if !m.is_unimodular() {
        return Err(Error::Internal("comparison map is not invertible".into()));
    }

    // Q1 (+) P2 (+) I2'  --M (+) id-->  Q2 (+) P1 (+) I2'  --swap-->  Q2 (+) I2' (+) P1  --iso2 (+) id-->  T2 (+) P1
    let ci = cert2.complement.rank();
    let step_a = IntMatrix::block_diag(&[&m, &IntMatrix::identity(ci)]);
    let n = k2 + r1 + ci;
    let mut step_b = IntMatrix::zeros(n, n);
    for a in 0..k2 {
        step_b[(a, a)] = BigInt::one();
    }
    for a in 0..ci {
        step_b[(k2 + a, k2 + r1 + a)] = BigInt::one();
    }
    for a in 0..r1 {
        step_b[(k2 + ci + a, k2 + a)] = BigInt::one();
    }
    let step_c = IntMatrix::block_diag(&[&cert2.iso, &IntMatrix::identity(r1)]);
    let iso = &(&step_c * &step_b) * &step_a;

    let complement = p2.direct_sum(&cert2.complement)?;
    let mut target = cert2.target.clone();
    target.extend(resolution.p_summands.iter().map(|s| s.subgroup.clone()));
    let cert = InvertibilityCertificate {
        complement,
        iso,
        target,
    };
    if !verify_invertibility(q1, &cert)? {
        return Err(Error::Internal("constructed certificate does not verify".into()));
    }
    Ok(Some(cert))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MotivicVerdict {
    YesMetaCyclic,
    YesInvertibleCertificate,
    Unknown,
}

#[derive(Clone, Debug, Default)]
pub struct MotivicOptions {
    pub certificate: Option<InvertibilityCertificate>,
    /// A second permutation presentation of `X` used to derive a certificate.
    pub reference: Option<Vec<PermSummand>>,
    pub subgroup_bound: Option<usize>,
    pub budget: SearchBudget,
}

#[derive(Clone, Debug, Serialize)]
pub struct MotivicReport {
    pub verdict: MotivicVerdict,
    pub certificate_source: Option<&'static str>,
    pub certificate: Option<InvertibilityCertificate>,
    pub q_rank: Option<usize>,
}

/// Sufficient conditions only: meta-cyclic splitting group, or a verified
/// invertibility certificate for the flasque kernel. Never answers "no".
pub fn check_motivic_interpretation(x: &GLattice, opts: &MotivicOptions) -> Result<MotivicReport> {
    if x.group().is_metacyclic() {
        return Ok(MotivicReport {
            verdict: MotivicVerdict::YesMetaCyclic,
            certificate_source: None,
            certificate: None,
            q_rank: None,
        });
    }
    let bound = opts.subgroup_bound.unwrap_or(crate::group::DEFAULT_SUBGROUP_BOUND);
    let classes = x.group().subgroup_classes(bound)?;
    let res = flasque_resolution_with(x, &classes)?;
    let yes = |source, cert| MotivicReport {
        verdict: MotivicVerdict::YesInvertibleCertificate,
        certificate_source: Some(source),
        certificate: Some(cert),
        q_rank: Some(res.q.rank()),
    };
    if let Some(cert) = &opts.certificate {
        if verify_invertibility(&res.q, cert)? {
            return Ok(yes("supplied", cert.clone()));
        }
    }
    if let Some(reference) = &opts.reference {
        if let Some(cert) = certificate_from_reference(x, &res, reference, &classes, opts.budget)? {
            return Ok(yes("reference-resolution", cert));
        }
    }
    if let Some(cert) = search_invertibility_certificate(&res.q, &classes, opts.budget) {
        return Ok(yes("search", cert));
    }
    Ok(MotivicReport {
        verdict: MotivicVerdict::Unknown,
        certificate_source: None,
        certificate: None,
        q_rank: Some(res.q.rank()),
    })
}

/// Multiplicities of the indecomposable lattices over a group of order two
/// (`a` trivial, `b` sign, `c` regular) together with the torsion of
/// `K^T(R)`, which is `(Z/2)^a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealDecomposition {
    pub trivial: usize,
    pub sign: usize,
    pub regular: usize,
    pub kt_real_torsion: FinAbGroup,
}

/// Decomposition for the involution `s` (the action of complex conjugation).
pub fn real_decomposition_matrix(s: &IntMatrix) -> Result<RealDecomposition> {
    let r = s.rows();
    let id = IntMatrix::identity(r);
    if !s.is_square() || !(s * s).is_identity() {
        return Err(Error::ShapeMismatch("conjugation must act as an involution".into()));
    }
    let plus = s.add(&id);
    let minus = s.sub(&id);
    let quotient = |ker_of: &IntMatrix, image: &IntMatrix| -> FinAbGroup {
        let k = kernel_basis(ker_of);
        if k.cols() == 0 {
            FinAbGroup::trivial()
        } else {
            quotient_of_sublattices(&k, image)
        }
    };
    let h0 = quotient(&minus, &plus);
    let h1 = quotient(&plus, &minus);
    let two = BigInt::from(2);
    for g in [&h0, &h1] {
        if !g.is_finite() || g.invariant_factors().iter().any(|d| *d != two) {
            return Err(Error::Internal(format!("C2 cohomology {g} is not elementary abelian")));
        }
    }
    let a = h0.invariant_factors().len();
    let b = h1.invariant_factors().len();
    let rest = r.checked_sub(a + b).ok_or(Error::InconsistentRank(0))?;
    if rest % 2 != 0 {
        return Err(Error::InconsistentRank(rest));
    }
    Ok(RealDecomposition {
        trivial: a,
        sign: b,
        regular: rest / 2,
        kt_real_torsion: FinAbGroup::from_cyclic_orders(&vec![two; a]),
    })
}

/// Decomposition of `x` restricted to the subgroup generated by `conj`.
pub fn real_decomposition(x: &GLattice, conj: usize) -> Result<RealDecomposition> {
    let g = x.group();
    if conj >= g.order() || g.mul(conj, conj) != g.identity() {
        return Err(Error::ShapeMismatch("conjugation element must have order at most 2".into()));
    }
    real_decomposition_matrix(x.action(conj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::*;

    fn c2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2))
    }

    fn whole(g: &FiniteGroup) -> Subgroup {
        Subgroup::from_elements((0..g.order()).collect())
    }

    #[test]
    fn h1_examples() {
        let g = c2();
        let zm = GLattice::rank_one(g.clone(), &[1, -1]).unwrap();
        assert_eq!(h1(&zm, &whole(&g)), FinAbGroup::cyclic(2));
        assert!(h1(&GLattice::trivial(g.clone(), 1), &whole(&g)).is_trivial());
        let s3 = Arc::new(symmetric3());
        for c in s3.subgroup_classes(48).unwrap() {
            let p = GLattice::permutation_lattice(s3.clone(), &c.representative);
            assert!(is_flasque(&p, 48).unwrap().flasque);
        }
    }

    #[test]
    fn h1_of_augmentation_ideal_is_cyclic_of_group_order() {
        // H^1(G, I_G) = Z/|G| for cyclic G
        for n in [2, 3, 4, 6] {
            let g = Arc::new(FiniteGroup::cyclic(n));
            let i = GLattice::augmentation_kernel(g.clone(), &Subgroup::from_elements(vec![0]));
            assert_eq!(h1(&i, &whole(&g)), FinAbGroup::cyclic(n as u64));
        }
    }

    #[test]
    fn tate_examples() {
        let g = c2();
        let all = whole(&g);
        assert_eq!(tate_h0(&GLattice::trivial(g.clone(), 1), &all), FinAbGroup::cyclic(2));
        let zm = GLattice::rank_one(g.clone(), &[1, -1]).unwrap();
        assert!(tate_h0(&zm, &all).is_trivial());
        let reg = GLattice::permutation_lattice(g.clone(), &Subgroup::from_elements(vec![0]));
        assert!(tate_h0(&reg, &all).is_trivial());
    }

    #[test]
    fn flasque_examples() {
        let g = c2();
        let zm = GLattice::rank_one(g.clone(), &[1, -1]).unwrap();
        let chk = is_flasque(&zm, 48).unwrap();
        assert!(!chk.flasque);
        assert_eq!(chk.witnesses.len(), 1);
        assert_eq!(chk.witnesses[0].subgroup.order(), 2);
        assert_eq!(chk.witnesses[0].h1, FinAbGroup::cyclic(2));
        assert!(is_flasque(&GLattice::trivial(Arc::new(symmetric3()), 1), 48).unwrap().flasque);
    }

    #[test]
    fn resolution_of_sign_lattice() {
        let g = c2();
        let zm = GLattice::rank_one(g.clone(), &[1, -1]).unwrap();
        let res = flasque_resolution(&zm, 48).unwrap();
        assert_eq!(res.p.rank(), 2);
        assert_eq!(res.p_summands.len(), 1);
        assert_eq!(res.p_summands[0].subgroup.order(), 1);
        assert_eq!(res.q.rank(), 1);
        assert!(res.q.action(1).is_identity());
        assert_eq!(res.inclusion, IntMatrix::from_rows(&[[1], [1]]));
    }

    #[test]
    fn identity_resolution_for_permutation_input() {
        let s3 = Arc::new(symmetric3());
        let classes = s3.subgroup_classes(48).unwrap();
        let x = GLattice::permutation_lattice(s3, &classes[1].representative);
        let res = flasque_resolution(&x, 48).unwrap();
        assert_eq!(res.q.rank(), 0);
        assert_eq!(res.p.rank(), 3);
    }

    #[test]
    fn resolution_of_dual_norm_one_v4() {
        let v4 = Arc::new(klein_four());
        let j = GLattice::norm_quotient(v4, &Subgroup::from_elements(vec![0]));
        let res = flasque_resolution(&j, 48).unwrap();
        res.check_exact(&j).unwrap();
        assert!(is_flasque(&res.q, 48).unwrap().flasque);
    }

    #[test]
    fn invertibility_verification() {
        let g = c2();
        let empty = InvertibilityCertificate {
            complement: GLattice::trivial(g.clone(), 0),
            iso: IntMatrix::zeros(0, 0),
            target: vec![],
        };
        assert!(verify_invertibility(&GLattice::trivial(g.clone(), 0), &empty).unwrap());
        let triv = InvertibilityCertificate {
            complement: GLattice::trivial(g.clone(), 0),
            iso: IntMatrix::identity(1),
            target: vec![whole(&g)],
        };
        assert!(verify_invertibility(&GLattice::trivial(g.clone(), 1), &triv).unwrap());
        let bad_shape = InvertibilityCertificate {
            complement: GLattice::trivial(g.clone(), 0),
            iso: IntMatrix::identity(2),
            target: vec![whole(&g)],
        };
        assert!(matches!(
            verify_invertibility(&GLattice::trivial(g, 1), &bad_shape),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn sign_lattice_admits_no_small_certificate() {
        // exhaustive over rank-1 complements and 2x2 isos with entries in {-1, 0, 1}
        let g = c2();
        let zm = GLattice::rank_one(g.clone(), &[1, -1]).unwrap();
        let complements = [GLattice::trivial(g.clone(), 1), zm.clone()];
        let targets = [
            vec![Subgroup::from_elements(vec![0])],
            vec![whole(&g), whole(&g)],
        ];
        for comp in &complements {
            for target in &targets {
                for code in 0..81u32 {
                    let mut e = [0i64; 4];
                    let mut c = code;
                    for v in &mut e {
                        *v = (c % 3) as i64 - 1;
                        c /= 3;
                    }
                    let cert = InvertibilityCertificate {
                        complement: comp.clone(),
                        iso: IntMatrix::from_rows(&[[e[0], e[1]], [e[2], e[3]]]),
                        target: target.clone(),
                    };
                    assert!(!verify_invertibility(&zm, &cert).unwrap());
                }
            }
        }
    }

    #[test]
    fn motivic_verdicts() {
        let c6 = Arc::new(FiniteGroup::cyclic(6));
        let x = GLattice::augmentation_kernel(c6, &Subgroup::from_elements(vec![0]));
        let rep = check_motivic_interpretation(&x, &MotivicOptions::default()).unwrap();
        assert_eq!(rep.verdict, MotivicVerdict::YesMetaCyclic);

        let v4 = Arc::new(klein_four());
        let i = GLattice::augmentation_kernel(v4.clone(), &Subgroup::from_elements(vec![0]));
        let rep = check_motivic_interpretation(&i, &MotivicOptions::default()).unwrap();
        assert_eq!(rep.verdict, MotivicVerdict::Unknown);
    }

    #[test]
    fn reference_resolution_yields_certificate() {
        let v4 = Arc::new(klein_four());
        let base = Subgroup::from_elements(vec![0]);
        let p = GLattice::permutation_lattice(v4.clone(), &base);
        let ones = IntMatrix::from_vec(4, 1, vec![BigInt::one(); 4]);
        let (j, proj) = p.quotient_by(&ones).unwrap();
        let classes = v4.subgroup_classes(48).unwrap();
        let opts = MotivicOptions {
            reference: Some(vec![PermSummand {
                class_id: classes[0].id,
                subgroup: base,
                image: proj.column(0),
            }]),
            ..MotivicOptions::default()
        };
        let rep = check_motivic_interpretation(&j, &opts).unwrap();
        assert_eq!(rep.verdict, MotivicVerdict::YesInvertibleCertificate);
        assert_eq!(rep.certificate_source, Some("reference-resolution"));
        let res = flasque_resolution(&j, 48).unwrap();
        assert!(verify_invertibility(&res.q, rep.certificate.as_ref().unwrap()).unwrap());
    }

    #[test]
    fn search_finds_trivial_and_permutation_certificates() {
        let v4 = Arc::new(klein_four());
        let classes = v4.subgroup_classes(48).unwrap();
        let z = GLattice::trivial(v4.clone(), 1);
        // trivial Z is a permutation lattice in its basis
        assert!(search_invertibility_certificate(&z, &classes, SearchBudget::default()).is_some());
        // a twisted basis of Z[V4/C2] (+) Z is no longer a permutation basis
        let p = GLattice::permutation_lattice(v4.clone(), &classes[1].representative)
            .direct_sum(&z)
            .unwrap();
        let twisted = p.change_basis(&IntMatrix::from_rows(&[[1, 1, 0], [0, 1, 0], [0, 1, 1]])).unwrap();
        assert!(!twisted.is_permutation_basis());
        let cert = search_invertibility_certificate(&twisted, &classes, SearchBudget::default()).unwrap();
        assert!(verify_invertibility(&twisted, &cert).unwrap());
    }

    #[test]
    fn real_tables() {
        let one = real_decomposition_matrix(&IntMatrix::identity(1)).unwrap();
        assert_eq!((one.trivial, one.sign, one.regular), (1, 0, 0));
        assert_eq!(one.kt_real_torsion, FinAbGroup::cyclic(2));
        let sign = real_decomposition_matrix(&IntMatrix::from_rows(&[[-1]])).unwrap();
        assert_eq!((sign.trivial, sign.sign, sign.regular), (0, 1, 0));
        assert!(sign.kt_real_torsion.is_trivial());
        let reg = real_decomposition_matrix(&IntMatrix::from_rows(&[[0, 1], [1, 0]])).unwrap();
        assert_eq!((reg.trivial, reg.sign, reg.regular), (0, 0, 1));
        assert!(reg.kt_real_torsion.is_trivial());
        assert!(real_decomposition_matrix(&IntMatrix::from_rows(&[[0, -1], [1, 0]])).is_err());
    }
}
