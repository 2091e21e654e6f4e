//! Abelian arithmetic realizations `(Z/f)^* -> G` and the Galois-twisted
//! invariant computations: `|W^T(Q)|`, the coinvariants order of
//! `X(1)`, and point counts at primes of good reduction.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{crt_embed, factorize, is_prime, prime_power_unit_generators, primes, smith_normal_form, IntMatrix};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::lattice::GLattice;

/// A surjection `pi: (Z/f)^* -> G`, given by the images of a generating
/// set of units and extended multiplicatively.
#[derive(Clone, Debug)]
pub struct AbelianRealization {
    group: Arc<FiniteGroup>,
    modulus: u64,
    images: Vec<(u64, usize)>,
    /// `pi[a]` for each residue `a` modulo `f`, `None` on non-units.
    pi: Vec<Option<usize>>,
}

/// Largest conductor accepted; unit groups are enumerated explicitly.
pub const MAX_MODULUS: u64 = 100_000;

impl AbelianRealization {
    /// Builds and validates the map (homomorphism, generation, surjectivity).
    /// Total reality is not required here; see [`validate_realization`].
    pub fn new(group: Arc<FiniteGroup>, modulus: u64, images: &[(u64, usize)]) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::UnitsDoNotGenerate { modulus });
        }
        if modulus > MAX_MODULUS {
            return Err(Error::ModulusTooLarge { modulus, bound: MAX_MODULUS });
        }
        if !group.is_abelian() {
            return Err(Error::NonAbelianRealization);
        }
        let f = modulus;
        let size = f as usize;
        let mut gens = Vec::with_capacity(images.len());
        for &(u, g) in images {
            if g >= group.order() {
                return Err(Error::ShapeMismatch(format!("element index {g} out of range")));
            }
            if u.gcd(&f) != 1 {
                return Err(Error::NotAUnit { value: u, modulus: f });
            }
            gens.push(((u % f) as usize, g, u));
        }
        let mut pi: Vec<Option<usize>> = vec![None; size];
        let one = (1 % f) as usize;
        pi[one] = Some(group.identity());
        let mut queue = vec![one];
        let mut i = 0;
        while i < queue.len() {
            let a = queue[i];
            let pa = pi[a].expect("visited");
            for &(u, g, raw) in &gens {
                let b = (a as u128 * u as u128 % f as u128) as usize;
                let pb = group.mul(pa, g);
                match pi[b] {
                    None => {
                        pi[b] = Some(pb);
                        queue.push(b);
                    }
                    Some(existing) if existing != pb => {
                        return Err(Error::RealizationNotHomomorphism { unit: raw });
                    }
                    Some(_) => {}
                }
            }
            i += 1;
        }
        let units = (0..f).filter(|a| a.gcd(&f) == 1).count();
        if queue.len() != units {
            return Err(Error::UnitsDoNotGenerate { modulus: f });
        }
        let hit: BTreeSet<usize> = pi.iter().flatten().copied().collect();
        if hit.len() != group.order() {
            return Err(Error::NotSurjective);
        }
        Ok(AbelianRealization {
            group,
            modulus,
            images: images.to_vec(),
            pi,
        })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn images(&self) -> &[(u64, usize)] {
        &self.images
    }

    /// `pi(a mod f)`, or `None` when `a` is not a unit modulo `f`.
    pub fn image(&self, a: u64) -> Option<usize> {
        self.pi[(a % self.modulus) as usize]
    }

    /// Units modulo `f` (the residue `0` when `f = 1`).
    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.modulus).filter(|&a| self.pi[a as usize].is_some())
    }

    /// `pi(-1)`, the complex conjugation of the splitting field.
    pub fn conjugation(&self) -> usize {
        self.image(self.modulus - 1).expect("-1 is a unit")
    }

    pub fn is_totally_real(&self) -> bool {
        self.conjugation() == self.group.identity()
    }

    /// Units mapping into `h`: the subgroup cutting out the fixed field of `h`.
    pub fn preimage(&self, h: &Subgroup) -> Vec<u64> {
        self.units().filter(|&a| h.contains(self.image(a).expect("unit"))).collect()
    }
}

/// The splitting-field hypothesis of the conjecture: `pi(-1) = e`.
pub fn validate_realization(r: &AbelianRealization) -> Result<()> {
    if r.is_totally_real() {
        Ok(())
    } else {
        Err(Error::NotTotallyReal)
    }
}

/// Options for the per-prime stabilization loops.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct StabilizationOptions {
    pub cap: u32,
    /// Also check `k + 2` and three primes outside the candidate set.
    pub debug: bool,
}

impl Default for StabilizationOptions {
    fn default() -> Self {
        StabilizationOptions { cap: 30, debug: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimePart {
    pub prime: u64,
    #[serde(with = "crate::arith::int_json")]
    pub part: BigInt,
    pub depth: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WGroupResult {
    #[serde(with = "crate::arith::int_json")]
    pub total: BigInt,
    pub parts: Vec<PrimePart>,
    /// Primes outside the candidate set verified to contribute nothing.
    pub extra_primes_checked: Vec<u64>,
}

impl WGroupResult {
    pub fn part(&self, p: u64) -> Option<&BigInt> {
        self.parts.iter().find(|x| x.prime == p).map(|x| &x.part)
    }
}

/// Generators of `(Z/(f p^k))^*` recorded as residues modulo `f` and
/// modulo `p^k`, built by CRT from generators of the prime-power factors.
fn unit_generator_pairs(f: u64, p: u64, k: u32) -> Vec<(u64, BigInt)> {
    let mut parts: Vec<(u64, u32)> = factorize(f);
    if !parts.iter().any(|&(q, _)| q == p) {
        parts.push((p, 0));
        parts.sort_unstable();
    }
    let pk = BigInt::from(p).pow(k);
    let mut out = Vec::new();
    for (q, ef) in parts {
        let e = ef + if q == p { k } else { 0 };
        let qf = q.pow(ef);
        for (g, _) in prime_power_unit_generators(q, e) {
            let a_f = crt_embed(f, qf, g);
            let a_pk = if q == p {
                BigInt::from(g).mod_floor(&pk)
            } else {
                BigInt::one()
            };
            out.push((a_f, a_pk));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Invariants,
    Coinvariants,
}

/// Order of the invariants (or coinvariants) of `X (x) Z/p^k` under the
/// units modulo `f p^k`, `a` acting by `a^twist rho(pi(a))`.
fn twisted_order(x: &GLattice, r: &AbelianRealization, p: u64, k: u32, twist: u32, side: Side) -> BigInt {
    let rank = x.rank();
    let m = BigInt::from(p).pow(k);
    if rank == 0 {
        return BigInt::one();
    }
    let id = IntMatrix::identity(rank);
    let blocks: Vec<IntMatrix> = unit_generator_pairs(r.modulus(), p, k)
        .into_iter()
        .map(|(a_f, a_pk)| {
            let s = a_pk.modpow(&BigInt::from(twist), &m);
            let rho = x.action(r.image(a_f).expect("generator is a unit"));
            let mut d = rho.scale(&s).sub(&id);
            for i in 0..rank {
                for j in 0..rank {
                    d[(i, j)] = d[(i, j)].mod_floor(&m);
                }
            }
            d
        })
        .collect();
    if blocks.is_empty() {
        return m.pow(rank as u32);
    }
    let stacked = match side {
        Side::Invariants => IntMatrix::vstack(rank, &blocks),
        Side::Coinvariants => IntMatrix::hstack(rank, &blocks),
    };
    let s = smith_normal_form(&stacked);
    (0..rank).fold(BigInt::one(), |acc, i| {
        let d = if i < s.rank { s.d[(i, i)].clone() } else { BigInt::zero() };
        acc * d.gcd(&m)
    })
}

fn stabilize(
    x: &GLattice,
    r: &AbelianRealization,
    p: u64,
    twist: u32,
    side: Side,
    opts: StabilizationOptions,
) -> Result<PrimePart> {
    let mut prev = twisted_order(x, r, p, 1, twist, side);
    for k in 1..opts.cap {
        let next = twisted_order(x, r, p, k + 1, twist, side);
        if next == prev {
            if opts.debug && twisted_order(x, r, p, k + 2, twist, side) != prev {
                return Err(Error::StabilizationUnsound { prime: p, depth: k });
            }
            return Ok(PrimePart {
                prime: p,
                part: prev,
                depth: k,
            });
        }
        prev = next;
    }
    Err(Error::StabilizationBoundExceeded { prime: p, cap: opts.cap })
}

fn candidate_primes(f: u64, base: &[u64]) -> Vec<u64> {
    let mut set: BTreeSet<u64> = base.iter().copied().collect();
    set.extend(factorize(f).into_iter().map(|(p, _)| p));
    set.into_iter().collect()
}

fn per_prime(
    x: &GLattice,
    r: &AbelianRealization,
    base: &[u64],
    twist: u32,
    side: Side,
    opts: StabilizationOptions,
) -> Result<WGroupResult> {
    if x.group().as_ref() != r.group().as_ref() {
        return Err(Error::GroupMismatch);
    }
    let candidates = candidate_primes(r.modulus(), base);
    let parts = candidates
        .iter()
        .map(|&p| stabilize(x, r, p, twist, side, opts))
        .collect::<Result<Vec<_>>>()?;
    let mut extra = Vec::new();
    if opts.debug {
        for p in primes().filter(|p| !candidates.contains(p)).take(3) {
            if !twisted_order(x, r, p, 1, twist, side).is_one() {
                return Err(Error::CandidatePrimeIncomplete { prime: p });
            }
            extra.push(p);
        }
    }
    let total = parts.iter().map(|p| &p.part).product();
    Ok(WGroupResult {
        total,
        parts,
        extra_primes_checked: extra,
    })
}

/// `|W^T(Q)| = |H^0(Q, X (x) Q/Z(2))|`, one stabilized p-part per candidate
/// prime `p in {2, 3} u {p | f}`.
pub fn w_group_order(x: &GLattice, r: &AbelianRealization, opts: StabilizationOptions) -> Result<WGroupResult> {
    per_prime(x, r, &[2, 3], 2, Side::Invariants, opts)
}

/// Order of the coinvariants of `X(1)` over the absolute Galois group of
/// `Q`; candidate primes `{2} u {p | f}`.
pub fn global_coinvariants_order(
    x: &GLattice,
    r: &AbelianRealization,
    opts: StabilizationOptions,
) -> Result<WGroupResult> {
    per_prime(x, r, &[2], 1, Side::Coinvariants, opts)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalCount {
    pub ell: u64,
    #[serde(with = "crate::arith::int_json")]
    pub count: BigInt,
}

/// `#T(F_ell) = |det(ell rho(Frob_ell) - I)|` for `ell` not dividing `f`.
pub fn local_point_count(x: &GLattice, r: &AbelianRealization, ell: u64) -> Result<BigInt> {
    if !is_prime(ell) {
        return Err(Error::NotPrime(ell));
    }
    if r.modulus().is_multiple_of(ell) {
        return Err(Error::BadReduction { ell });
    }
    let frob = r.image(ell).expect("ell is a unit");
    let m = x.action(frob).scale(&BigInt::from(ell)).sub(&IntMatrix::identity(x.rank()));
    Ok(m.determinant().abs())
}

/// Point counts for the primes `<= bound` of good reduction.
pub fn local_table(x: &GLattice, r: &AbelianRealization, bound: u64) -> Result<Vec<LocalCount>> {
    primes()
        .take_while(|&p| p <= bound)
        .filter(|p| !r.modulus().is_multiple_of(*p))
        .map(|ell| Ok(LocalCount { ell, count: local_point_count(x, r, ell)? }))
        .collect()
}

/// `w_2` of the fixed field of `h`, straight from the definition: for each
/// candidate prime the largest `p^k` dividing `a^2 - 1` for every unit `a`
/// modulo `f p^k` that maps into `h`. Enumerates units, so it is meant as an
/// independent check on [`w_group_order`] for small moduli.
pub fn classical_w2(r: &AbelianRealization, h: &Subgroup, cap: u32) -> Result<BigInt> {
    let f = r.modulus();
    let mut total = BigInt::one();
    for p in candidate_primes(f, &[2, 3]) {
        let level = |k: u32| -> BigInt {
            let pk = p.pow(k);
            let n = f * pk;
            let mut g = BigInt::from(pk);
            for a in 1..=n {
                if a.gcd(&n) != 1 || !h.contains(r.image(a).expect("unit")) {
                    continue;
                }
                let v = (BigInt::from(a) * a - 1u32).mod_floor(&BigInt::from(pk));
                g = g.gcd(&v);
                if g.is_one() {
                    break;
                }
            }
            g
        };
        let mut prev = level(1);
        let mut k = 1;
        loop {
            if k >= cap {
                return Err(Error::StabilizationBoundExceeded { prime: p, cap });
            }
            let next = level(k + 1);
            if next == prev {
                break;
            }
            prev = next;
            k += 1;
        }
        total *= prev;
    }
    Ok(total)
}
