use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{int_to_json, snf, IntMatrix};

/// Finitely generated abelian group `Z/d_1 x ... x Z/d_r x Z^free_rank`
/// with `d_1 | d_2 | ... | d_r` and every `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinAbGroup {
    invariant_factors: Vec<BigInt>,
    free_rank: usize,
}

impl FinAbGroup {
    /// Panics unless the list is a divisibility chain of integers `>= 2`.
    pub fn new(invariant_factors: Vec<BigInt>, free_rank: usize) -> Self {
        let two = BigInt::from(2);
        assert!(invariant_factors.iter().all(|d| *d >= two), "invariant factors must be >= 2");
        assert!(
            invariant_factors.windows(2).all(|w| w[1].is_multiple_of(&w[0])),
            "invariant factors must form a divisibility chain"
        );
        FinAbGroup {
            invariant_factors,
            free_rank,
        }
    }

    pub fn trivial() -> Self {
        FinAbGroup {
            invariant_factors: Vec::new(),
            free_rank: 0,
        }
    }

    pub fn cyclic(n: u64) -> Self {
        match n {
            0 => FinAbGroup::new(vec![], 1),
            1 => FinAbGroup::trivial(),
            n => FinAbGroup::new(vec![BigInt::from(n)], 0),
        }
    }

    /// From an SNF diagonal (units dropped) plus extra free rank.
    pub(crate) fn from_smith_diagonal(diag: &[BigInt], extra_free: usize) -> Self {
        let invariant_factors: Vec<BigInt> = diag.iter().filter(|d| !d.is_one()).cloned().collect();
        FinAbGroup::new(invariant_factors, extra_free)
    }

    /// Normalizes an arbitrary product of cyclic groups `Z/n_i` (0 meaning Z).
    pub fn from_cyclic_orders(orders: &[BigInt]) -> Self {
        let n = orders.len();
        let mut m = IntMatrix::zeros(n, n);
        for (i, o) in orders.iter().enumerate() {
            m[(i, i)] = o.clone();
        }
        snf::cokernel_structure(&m)
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Order of a finite group; `None` when the free rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        self.is_finite().then(|| self.invariant_factors.iter().product())
    }

    /// Number of cyclic factors of the torsion subgroup whose order is even,
    /// i.e. `dim_F2` of the 2-torsion.
    pub fn two_rank(&self) -> usize {
        self.invariant_factors.iter().filter(|d| d.is_even()).count()
    }

    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut orders: Vec<BigInt> = self.invariant_factors.clone();
        orders.extend(other.invariant_factors.iter().cloned());
        orders.extend(std::iter::repeat_n(BigInt::zero(), self.free_rank + other.free_rank));
        FinAbGroup::from_cyclic_orders(&orders)
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" x "))
    }
}

impl Serialize for FinAbGroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            invariant_factors: Vec<serde_json::Value>,
            free_rank: usize,
            display: String,
        }
        Repr {
            invariant_factors: self.invariant_factors.iter().map(int_to_json).collect(),
            free_rank: self.free_rank,
            display: self.to_string(),
        }
        .serialize(serializer)
    }
}
