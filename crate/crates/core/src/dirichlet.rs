//! Dirichlet characters, generalized Bernoulli numbers `B_{2,chi}`, and
//! exact values at `s = -1` of Dedekind zeta functions of abelian fields
//! and of Artin L-functions of lattices.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{crt_embed, factorize, format_rational, prime_power_unit_generators, rational_nth_root, CyclotomicNumber};
use crate::error::{Error, Result};
use crate::galois::AbelianRealization;
use crate::group::{Subgroup, SubgroupClass};
use crate::induction::{ono_decomposition, OnoDecomposition};
use crate::lattice::GLattice;

/// CRT generators of `(Z/f)^*` (ordered by prime) with their orders, and a
/// discrete-logarithm table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroupStructure {
    modulus: u64,
    generators: Vec<u64>,
    orders: Vec<u64>,
    /// Exponent vector of each unit residue; `None` for non-units.
    logs: Vec<Option<Vec<u64>>>,
}

impl UnitGroupStructure {
    pub fn new(f: u64) -> Self {
        assert!(f >= 1, "modulus must be positive");
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (q, e) in factorize(f) {
            for (g, ord) in prime_power_unit_generators(q, e) {
                generators.push(crt_embed(f, q.pow(e), g));
                orders.push(ord);
            }
        }
        let mut logs: Vec<Option<Vec<u64>>> = vec![None; f as usize];
        let mut exps = vec![0u64; generators.len()];
        let mut value = 1 % f;
        // odometer over exponent vectors, tracking the product incrementally
        loop {
            logs[value as usize] = Some(exps.clone());
            let mut i = 0;
            loop {
                if i == exps.len() {
                    return UnitGroupStructure {
                        modulus: f,
                        generators,
                        orders,
                        logs,
                    };
                }
                exps[i] += 1;
                value = (value as u128 * generators[i] as u128 % f as u128) as u64;
                if exps[i] < orders[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// `phi(f)`.
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Exponent of the group (lcm of generator orders).
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, b| a.lcm(b))
    }

    pub fn log(&self, a: u64) -> Option<&[u64]> {
        self.logs[(a % self.modulus) as usize].as_deref()
    }

    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.modulus).filter(|&a| self.logs[a as usize].is_some())
    }
}

/// A character of `(Z/f)^*`: generator `i` goes to `zeta_{ord_i}^{e_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DirichletCharacter {
    structure: Arc<UnitGroupStructure>,
    exponents: Vec<u64>,
}

impl DirichletCharacter {
    pub fn new(structure: Arc<UnitGroupStructure>, exponents: Vec<u64>) -> Result<Self> {
        if exponents.len() != structure.orders.len() || exponents.iter().zip(&structure.orders).any(|(e, o)| e >= o) {
            return Err(Error::ShapeMismatch("character exponents do not match the generators".into()));
        }
        Ok(DirichletCharacter { structure, exponents })
    }

    pub fn trivial(f: u64) -> Self {
        let s = Arc::new(UnitGroupStructure::new(f));
        let n = s.orders.len();
        DirichletCharacter {
            structure: s,
            exponents: vec![0; n],
        }
    }

    pub fn modulus(&self) -> u64 {
        self.structure.modulus
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn structure(&self) -> &Arc<UnitGroupStructure> {
        &self.structure
    }

    pub fn order(&self) -> u64 {
        self.exponents
            .iter()
            .zip(&self.structure.orders)
            .fold(1, |acc, (&e, &o)| acc.lcm(&(o / e.gcd(&o))))
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }

    /// `chi(a) = zeta_n^k` with `n = ` [`Self::order`]; `None` off units.
    pub fn value_exponent(&self, a: u64) -> Option<u64> {
        let n = self.order();
        let log = self.structure.log(a)?;
        let k = log
            .iter()
            .zip(&self.exponents)
            .zip(&self.structure.orders)
            .fold(0u128, |acc, ((&l, &e), &o)| (acc + l as u128 * (e as u128 * n as u128 / o as u128)) % n as u128);
        Some(k as u64)
    }

    pub fn value(&self, a: u64) -> Option<CyclotomicNumber> {
        let n = self.order();
        self.value_exponent(a).map(|k| CyclotomicNumber::zeta_power(n, k as i64))
    }

    pub fn is_even(&self) -> bool {
        self.value_exponent(self.modulus().wrapping_sub(1) % self.modulus().max(1)) == Some(0)
    }

    /// `chi^j`.
    pub fn power(&self, j: u64) -> DirichletCharacter {
        DirichletCharacter {
            structure: self.structure.clone(),
            exponents: self
                .exponents
                .iter()
                .zip(&self.structure.orders)
                .map(|(&e, &o)| (e as u128 * j as u128 % o as u128) as u64)
                .collect(),
        }
    }

    /// The Galois orbit `{chi^j : gcd(j, ord chi) = 1}`, sorted by exponents.
    pub fn galois_orbit(&self) -> Vec<DirichletCharacter> {
        let n = self.order();
        let mut orbit: Vec<DirichletCharacter> = (1..=n).filter(|j| j.gcd(&n) == 1).map(|j| self.power(j)).collect();
        orbit.sort_by(|a, b| a.exponents.cmp(&b.exponents));
        orbit.dedup();
        orbit
    }
}

/// All `phi(f)` characters modulo `f`, in lexicographic order of exponents.
pub fn characters_mod(f: u64) -> Vec<DirichletCharacter> {
    let s = Arc::new(UnitGroupStructure::new(f));
    let mut out = Vec::with_capacity(s.order() as usize);
    let mut exps = vec![0u64; s.orders.len()];
    loop {
        out.push(DirichletCharacter {
            structure: s.clone(),
            exponents: exps.clone(),
        });
        // last coordinate varies fastest
        let mut i = exps.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            exps[i] += 1;
            if exps[i] < s.orders[i] {
                break;
            }
            exps[i] = 0;
        }
    }
}

/// The conductor `f_chi` and the primitive character modulo `f_chi`
/// inducing `chi`.
pub fn conductor_primitive(chi: &DirichletCharacter) -> (u64, DirichletCharacter) {
    let f = chi.modulus();
    let divisors: Vec<u64> = (1..=f).filter(|d| f.is_multiple_of(*d)).collect();
    for d in divisors {
        let factors_through = chi
            .structure
            .units()
            .filter(|a| a % d == 1 % d)
            .all(|a| chi.value_exponent(a) == Some(0));
        if !factors_through {
            continue;
        }
        let sd = Arc::new(UnitGroupStructure::new(d));
        let n = chi.order();
        let exponents = sd
            .generators
            .iter()
            .zip(&sd.orders)
            .map(|(&g, &o)| {
                let lift = (0..f)
                    .map(|j| g + j * d)
                    .find(|a| a.gcd(&f) == 1)
                    .expect("every unit modulo d lifts to a unit modulo f");
                let k = chi.value_exponent(lift).expect("unit");
                k * o / n
            })
            .collect();
        let prim = DirichletCharacter {
            structure: sd,
            exponents,
        };
        return (d, prim);
    }
    unreachable!("f itself is always a period")
}

/// `B_{2,chi} = f sum_{a=1}^{f} chi(a) B_2(a/f)` with `B_2(x) = x^2 - x + 1/6`,
/// for primitive `chi` of conductor `f`.
pub fn bernoulli2_chi(chi: &DirichletCharacter) -> CyclotomicNumber {
    let f = chi.modulus();
    let n = chi.order();
    let ff = BigRational::from_integer(f.into());
    let sixth = BigRational::new(1.into(), 6.into());
    let mut coeffs = vec![BigRational::zero(); n as usize];
    for a in 1..=f {
        if let Some(k) = chi.value_exponent(a) {
            let a = BigRational::from_integer(a.into());
            // f * B_2(a/f) = a^2/f - a + f/6
            coeffs[k as usize] += &a * &a / &ff - &a + &ff * &sixth;
        }
    }
    CyclotomicNumber::reduce_from(n, coeffs)
}

/// `L(chi, -1) = -B_{2,chi} / 2` for primitive `chi`.
#[allow(non_snake_case)]
pub fn L_minus_one(chi: &DirichletCharacter) -> CyclotomicNumber {
    bernoulli2_chi(chi).scale(&BigRational::new((-1).into(), 2.into()))
}

/// Characters modulo `f` trivial on `pi^{-1}(h)`: the characters of
/// `G / h` pulled back along the realization.
pub fn characters_trivial_on(r: &AbelianRealization, h: &Subgroup) -> Vec<DirichletCharacter> {
    let kernel = r.preimage(h);
    characters_mod(r.modulus())
        .into_iter()
        .filter(|chi| kernel.iter().all(|&a| chi.value_exponent(a) == Some(0)))
        .collect()
}

/// Memoized `L(chi*, -1)` keyed by the exponent vector modulo `f`.
#[derive(Default)]
struct LCache(BTreeMap<Vec<u64>, CyclotomicNumber>);

impl LCache {
    fn get(&mut self, chi: &DirichletCharacter) -> CyclotomicNumber {
        self.0
            .entry(chi.exponents.clone())
            .or_insert_with(|| {
                let (_, prim) = conductor_primitive(chi);
                L_minus_one(&prim).lift(chi.order())
            })
            .clone()
    }
}

/// Groups characters into Galois orbits (in order of first appearance).
fn orbits(chars: &[DirichletCharacter]) -> Vec<Vec<DirichletCharacter>> {
    let mut seen = BTreeMap::new();
    let mut out: Vec<Vec<DirichletCharacter>> = Vec::new();
    for chi in chars {
        if seen.contains_key(&chi.exponents) {
            continue;
        }
        let orbit = chi.galois_orbit();
        for c in &orbit {
            seen.insert(c.exponents.clone(), out.len());
        }
        out.push(orbit);
    }
    out
}

fn orbit_product(orbit: &[DirichletCharacter], cache: &mut LCache) -> Result<BigRational> {
    let n = orbit[0].order();
    let mut acc = CyclotomicNumber::one(n);
    for chi in orbit {
        acc = acc.mul(&cache.get(chi));
    }
    acc.to_rational()
        .ok_or_else(|| Error::NotRational(format!("orbit product {acc} of order-{n} characters")))
}

/// `zeta_M(-1)` for the fixed field `M` of `h`, as the product of
/// `L(chi, -1)` over characters of `G` trivial on `h`.
pub fn zeta_minus_one(h: &Subgroup, r: &AbelianRealization) -> Result<BigRational> {
    let chars = characters_trivial_on(r, h);
    let mut cache = LCache::default();
    let mut acc = BigRational::one();
    for orbit in orbits(&chars) {
        acc *= orbit_product(&orbit, &mut cache)?;
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterRow {
    pub conductor: u64,
    pub order: u64,
    pub exponents: Vec<u64>,
    pub multiplicity: u64,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct OnoCrossCheck {
    pub decomposition: OnoDecomposition,
    /// `prod_H |zeta_{M_H}(-1)|^{a_H}`.
    #[serde(with = "crate::arith::rational_string")]
    pub product: BigRational,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArtinLValue {
    #[serde(with = "crate::arith::rational_string")]
    pub value: BigRational,
    #[serde(with = "crate::arith::rational_string")]
    pub abs: BigRational,
    pub characters: Vec<CharacterRow>,
    pub ono: OnoCrossCheck,
}

/// `L(X, -1) = prod_chi L(chi*, -1)^{m_chi}` for a totally real abelian
/// realization, with the Ono-route cross-check.
#[allow(non_snake_case)]
pub fn artin_L_minus_one(x: &GLattice, r: &AbelianRealization, classes: &[SubgroupClass]) -> Result<ArtinLValue> {
    let g = x.group();
    if g.as_ref() != r.group().as_ref() {
        return Err(Error::GroupMismatch);
    }
    if !g.is_abelian() {
        return Err(Error::NonAbelianRealization);
    }
    if !r.is_totally_real() {
        return Err(Error::NotTotallyReal);
    }
    // one unit above each group element
    let mut rep = vec![None; g.order()];
    for a in r.units() {
        let e = r.image(a).expect("unit");
        rep[e].get_or_insert(a);
    }
    let traces = x.traces();
    let trivial = Subgroup::from_elements(vec![g.identity()]);
    let chars = characters_trivial_on(r, &trivial);
    let order = BigRational::from_integer(g.order().into());

    let mut cache = LCache::default();
    let mut value = BigRational::one();
    let mut rows = Vec::new();
    let mut rank_check = 0u64;
    for orbit in orbits(&chars) {
        let mut mults = Vec::with_capacity(orbit.len());
        for chi in &orbit {
            let n = chi.order();
            let mut acc = CyclotomicNumber::zero(n);
            for (e, a) in rep.iter().enumerate() {
                let a = a.expect("realization is surjective");
                let t = BigRational::from_integer(traces[e].clone());
                acc = acc.add(&chi.value(a).expect("unit").conjugate().scale(&t));
            }
            let m = acc
                .scale(&order.recip())
                .to_rational()
                .filter(|q| q.is_integer() && !q.is_negative())
                .ok_or_else(|| Error::MultiplicityNotInteger(acc.scale(&order.recip()).to_string()))?;
            let m: u64 = m.to_integer().try_into().map_err(|_| Error::MultiplicityNotInteger(m.to_string()))?;
            mults.push(m);
        }
        if mults.iter().any(|&m| m != mults[0]) {
            return Err(Error::MultiplicityNotInteger("multiplicity varies along a Galois orbit".into()));
        }
        let m = mults[0];
        rank_check += m * orbit.len() as u64;
        if m > 0 {
            let p = orbit_product(&orbit, &mut cache)?;
            value *= num_traits::pow(p, m as usize);
        }
        for chi in &orbit {
            let (conductor, _) = conductor_primitive(chi);
            rows.push(CharacterRow {
                conductor,
                order: chi.order(),
                exponents: chi.exponents.clone(),
                multiplicity: m,
                value: cache.get(chi).to_string(),
            });
        }
    }
    if rank_check != x.rank() as u64 {
        return Err(Error::Internal(format!(
            "character multiplicities sum to {rank_check}, rank is {}",
            x.rank()
        )));
    }
    if value.is_zero() {
        return Err(Error::Internal("L(X, -1) vanishes for a totally real realization".into()));
    }

    let decomposition = ono_decomposition(x, classes)?;
    let mut product = BigRational::one();
    for f in &decomposition.factors {
        let h = &classes[f.subgroup_id].representative;
        let z = zeta_minus_one(h, r)?.abs();
        let e: i32 = (&f.exponent)
            .try_into()
            .map_err(|_| Error::Internal("Ono exponent out of range".into()))?;
        product *= num_traits::Pow::pow(z, e);
    }
    let m: u32 = (&decomposition.m)
        .try_into()
        .map_err(|_| Error::Internal("Ono multiplier out of range".into()))?;
    let abs = value.abs();
    let matches = rational_nth_root(&product, m).as_ref() == Some(&abs);
    if !matches {
        return Err(Error::Internal(format!(
            "Ono cross-check failed: {}-th root of {} vs {}",
            m,
            format_rational(&product),
            format_rational(&abs)
        )));
    }
    Ok(ArtinLValue {
        value,
        abs,
        characters: rows,
        ono: OnoCrossCheck {
            decomposition,
            product,
            matches,
        },
    })
}

/// `B_2 = 1/6` from the recurrence `sum_{k<=n} C(n+1, k) B_k = 0`; used by
/// tests as an independent oracle for the trivial character.
pub fn bernoulli_numbers(n: usize) -> Vec<BigRational> {
    let mut b = vec![BigRational::one()];
    for m in 1..=n {
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            acc += bk * BigRational::from_integer(binom.clone());
            binom = binom * (m + 1 - k) / (k + 1);
        }
        b.push(-acc / BigRational::from_integer((m + 1).into()));
    }
    b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::parse_rational;
    use crate::group::FiniteGroup;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    fn quadratic(f: u64) -> DirichletCharacter {
        characters_mod(f)
            .into_iter()
            .find(|c| c.order() == 2 && conductor_primitive(c).0 == f)
            .unwrap()
    }

    #[test]
    fn enumeration() {
        assert_eq!(characters_mod(1).len(), 1);
        let orders: Vec<u64> = characters_mod(5).iter().map(DirichletCharacter::order).collect();
        assert_eq!(orders, vec![1, 4, 2, 4]);
        let c8 = characters_mod(8);
        assert_eq!(c8.len(), 4);
        assert!(c8.iter().all(|c| c.order() <= 2));
        for f in 1..60 {
            assert_eq!(characters_mod(f).len() as u64, crate::arith::euler_phi(f));
        }
    }

    #[test]
    fn multiplicativity() {
        for f in [7u64, 12, 15, 16, 40] {
            let s = UnitGroupStructure::new(f);
            for chi in characters_mod(f) {
                let n = chi.order();
                for a in s.units() {
                    for b in s.units() {
                        let ab = (a * b) % f;
                        let lhs = chi.value_exponent(ab).unwrap();
                        let rhs = (chi.value_exponent(a).unwrap() + chi.value_exponent(b).unwrap()) % n;
                        assert_eq!(lhs, rhs);
                    }
                }
                assert_eq!(chi.value_exponent(0), if f == 1 { Some(0) } else { None });
            }
        }
    }

    #[test]
    fn conductors() {
        let (d, p) = conductor_primitive(&DirichletCharacter::trivial(12));
        assert_eq!(d, 1);
        assert!(p.is_trivial());
        let chi5 = quadratic(5);
        assert_eq!(conductor_primitive(&chi5).0, 5);
        let induced = characters_mod(15)
            .into_iter()
            .find(|c| {
                let (d, p) = conductor_primitive(c);
                d == 5 && p.order() == 2
            })
            .unwrap();
        let (d, p) = conductor_primitive(&induced);
        assert_eq!(d, 5);
        for a in 1..15u64 {
            if a.gcd(&15) == 1 {
                assert_eq!(p.value(a % 5), induced.value(a));
            }
        }
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli_numbers(2)[2], q("1/6"));
        assert_eq!(bernoulli2_chi(&DirichletCharacter::trivial(1)).to_rational(), Some(q("1/6")));
        assert_eq!(bernoulli2_chi(&quadratic(5)).to_rational(), Some(q("4/5")));
        assert_eq!(bernoulli2_chi(&quadratic(8)).to_rational(), Some(q("2")));
        assert_eq!(L_minus_one(&DirichletCharacter::trivial(1)).to_rational(), Some(q("-1/12")));
        assert_eq!(L_minus_one(&quadratic(5)).to_rational(), Some(q("-2/5")));
        assert_eq!(L_minus_one(&quadratic(8)).to_rational(), Some(q("-1")));
    }

    #[test]
    fn vanishing_exactly_at_odd_characters() {
        for f in 1..=40u64 {
            for chi in characters_mod(f) {
                let (_, prim) = conductor_primitive(&chi);
                let odd_nontrivial = !prim.is_trivial() && !prim.is_even();
                assert_eq!(L_minus_one(&prim).is_zero(), odd_nontrivial, "f = {f}, {:?}", chi.exponents());
            }
        }
    }

    #[test]
    fn dedekind_values() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let r5 = AbelianRealization::new(c2.clone(), 5, &[(2, 1)]).unwrap();
        let all = Subgroup::from_elements(vec![0, 1]);
        let one = Subgroup::from_elements(vec![0]);
        assert_eq!(zeta_minus_one(&all, &r5).unwrap(), q("-1/12"));
        assert_eq!(zeta_minus_one(&one, &r5).unwrap(), q("1/30"));
        let r8 = AbelianRealization::new(c2, 8, &[(7, 0), (5, 1)]).unwrap();
        assert_eq!(zeta_minus_one(&one, &r8).unwrap(), q("1/12"));
    }

    #[test]
    fn artin_values() {
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let classes = c2.subgroup_classes(48).unwrap();
        let r5 = AbelianRealization::new(c2.clone(), 5, &[(2, 1)]).unwrap();
        let z = GLattice::trivial(c2.clone(), 1);
        assert_eq!(artin_L_minus_one(&z, &r5, &classes).unwrap().value, q("-1/12"));
        let reg = GLattice::permutation_lattice(c2.clone(), &Subgroup::from_elements(vec![0]));
        assert_eq!(artin_L_minus_one(&reg, &r5, &classes).unwrap().value, q("1/30"));
        let zm = GLattice::rank_one(c2.clone(), &[1, -1]).unwrap();
        let l = artin_L_minus_one(&zm, &r5, &classes).unwrap();
        assert_eq!(l.value, q("-2/5"));
        assert_eq!(l.characters.iter().map(|c| c.multiplicity).sum::<u64>(), 1);
        assert!(l.ono.matches);
    }

    #[test]
    fn zeta_of_a_cm_field_vanishes() {
        // Q(zeta_5) has odd characters, each vanishing at -1.
        let c4 = Arc::new(FiniteGroup::cyclic(4));
        let r = AbelianRealization::new(c4, 5, &[(2, 1)]).unwrap();
        let one = Subgroup::from_elements(vec![0]);
        assert_eq!(zeta_minus_one(&one, &r).unwrap(), BigRational::zero());
    }
}
