#![allow(dead_code)]

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use torusbt::arith::{cokernel_structure, kernel_basis, solve_integer, BigInt, FinAbGroup, IntMatrix};
use torusbt::catalog::FIXTURES;
use torusbt::galois::AbelianRealization;
use torusbt::group::named::*;
use torusbt::group::{FiniteGroup, Subgroup, DEFAULT_SUBGROUP_BOUND};
use torusbt::lattice::GLattice;
use torusbt::manifest::{Context, Manifest};

pub fn fixture(name: &str) -> Context {
    let src = FIXTURES.iter().find(|(n, _)| *n == name).unwrap().1;
    Manifest::parse(src).unwrap().build().unwrap()
}

pub fn realization(ctx: &Context) -> AbelianRealization {
    ctx.realization().unwrap().clone()
}

/// All fixture contexts, by name.
pub fn catalog() -> Vec<(&'static str, Context)> {
    FIXTURES.iter().map(|(n, _)| (*n, fixture(n))).collect()
}

pub fn small_groups() -> Vec<Arc<FiniteGroup>> {
    vec![
        Arc::new(FiniteGroup::trivial()),
        Arc::new(FiniteGroup::cyclic(2)),
        Arc::new(FiniteGroup::cyclic(3)),
        Arc::new(FiniteGroup::cyclic(4)),
        Arc::new(FiniteGroup::cyclic(6)),
        Arc::new(klein_four()),
        Arc::new(symmetric3()),
        Arc::new(dihedral(4)),
    ]
}

/// Cyclic subgroups, one per element.
pub fn cyclic_subgroups(g: &FiniteGroup) -> Vec<(usize, Subgroup)> {
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for a in 0..g.order() {
        let h = g.generate(&[a]);
        if !seen.contains(&h) {
            seen.push(h.clone());
            out.push((a, h));
        }
    }
    out
}

/// `ker(N) / im(s - 1)` for the cyclic group generated by `s`, computed
/// straight from the two matrices.
pub fn cyclic_h1_oracle(x: &GLattice, s: usize) -> FinAbGroup {
    let g = x.group();
    let r = x.rank();
    let id = IntMatrix::identity(r);
    let mut norm = IntMatrix::zeros(r, r);
    let mut p = g.identity();
    loop {
        norm = norm.add(x.action(p));
        p = g.mul(p, s);
        if p == g.identity() {
            break;
        }
    }
    let k = kernel_basis(&norm);
    if k.cols() == 0 {
        return FinAbGroup::trivial();
    }
    let coords = solve_integer(&k, &x.action(s).sub(&id)).expect("image of s - 1 lies in ker N");
    cokernel_structure(&coords)
}

pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..2 * n {
        let i = rng.gen_range(0..n);
        let j = (i + rng.gen_range(1..n)) % n;
        let k = BigInt::from(rng.gen_range(-2i64..=2));
        m.add_col_multiple(j, i, &k);
    }
    m
}

/// A random lattice of rank `1..=max_rank`: a direct sum of trivial,
/// permutation, augmentation-kernel and norm-quotient pieces, in a random
/// basis.
pub fn random_lattice<R: Rng>(rng: &mut R, g: &Arc<FiniteGroup>, max_rank: usize) -> GLattice {
    let classes = g.subgroup_classes(DEFAULT_SUBGROUP_BOUND).unwrap();
    let mut parts = Vec::new();
    let mut rank = 0;
    let target = rng.gen_range(1..=max_rank);
    let mut tries = 0;
    while rank < target && tries < 50 {
        tries += 1;
        let h = &classes.choose(rng).unwrap().representative;
        let piece = match rng.gen_range(0..4) {
            0 => GLattice::trivial(g.clone(), 1),
            1 => GLattice::permutation_lattice(g.clone(), h),
            2 => GLattice::augmentation_kernel(g.clone(), h),
            _ => GLattice::norm_quotient(g.clone(), h),
        };
        if piece.rank() == 0 || rank + piece.rank() > max_rank {
            continue;
        }
        rank += piece.rank();
        parts.push(piece);
    }
    if parts.is_empty() {
        parts.push(GLattice::trivial(g.clone(), 1));
    }
    let x = GLattice::direct_sum_all(g.clone(), &parts).unwrap();
    let p = random_unimodular(rng, x.rank());
    x.change_basis(&p).unwrap()
}
