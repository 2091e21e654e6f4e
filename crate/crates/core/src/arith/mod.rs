//! Exact integer, rational and cyclotomic arithmetic, and integer matrix
//! normal forms.

mod cyclotomic;
mod finab;
mod matrix;
mod ntheory;
mod rational;
mod snf;

pub use cyclotomic::{cyclotomic_polynomial, euler_phi, CyclotomicNumber};
pub use finab::FinAbGroup;
pub use matrix::IntMatrix;
pub use ntheory::{crt_embed, factorize, is_prime, mod_inv, mod_pow, prime_power_unit_generators, primes, primitive_root_odd};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
pub use rational::{format_rational, odd_part, parse_rational, rational_nth_root, two_power_exponent};
pub use snf::{
    cokernel_structure, hermite_columns, hermite_rows, in_column_span, kernel_basis, kernel_basis_hnf,
    left_inverse, smith_normal_form, solve_integer, Smith,
};

/// JSON number when the integer fits in 64 bits, decimal string otherwise.
pub(crate) fn int_to_json(x: &BigInt) -> serde_json::Value {
    use num_traits::ToPrimitive;
    match x.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(x.to_string()),
    }
}

/// Serde helper: rationals as `"num/den"` strings.
pub mod rational_string {
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::format_rational(q))
    }

    pub mod option {
        use num_rational::BigRational;
        use serde::Serializer;

        pub fn serialize<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
            match q {
                Some(q) => s.serialize_str(&super::super::format_rational(q)),
                None => s.serialize_none(),
            }
        }
    }
}

/// Serde helper: big integers as JSON numbers when they fit.
pub mod int_json {
    use num_bigint::BigInt;
    use serde::{Serialize, Serializer};

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        super::int_to_json(x).serialize(s)
    }
}
