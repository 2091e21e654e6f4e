//! Both sides of the Birch-Tate formula for a torus, and the consistency
//! checks built from them (isogeny invariance, Weil restriction).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::arith::{odd_part, two_power_exponent};
use crate::cohomology::{check_motivic_interpretation, real_decomposition, MotivicOptions, MotivicReport, RealDecomposition};
use crate::dirichlet::{artin_L_minus_one, zeta_minus_one, CharacterRow};
use crate::error::{Error, Result};
use crate::galois::{classical_w2, w_group_order, AbelianRealization, StabilizationOptions, WGroupResult};
use crate::group::{Subgroup, SubgroupClass, DEFAULT_SUBGROUP_BOUND};
use crate::induction::{lattice_character, ono_decomposition, OnoDecomposition};
use crate::lattice::GLattice;

#[derive(Clone, Debug, Default)]
pub struct EngineOptions {
    pub subgroup_bound: Option<usize>,
    pub stabilization: StabilizationOptions,
    pub motivic: MotivicOptions,
    /// Skip the flasque-resolution based motivic check.
    pub skip_motivic: bool,
}

impl EngineOptions {
    fn bound(&self) -> usize {
        self.subgroup_bound.unwrap_or(DEFAULT_SUBGROUP_BOUND)
    }
}

/// `|L(X, -1)| * |W^T|`, its odd part, and the two factors.
#[derive(Clone, Debug, Serialize)]
pub struct Prediction {
    #[serde(with = "crate::arith::rational_string")]
    pub l_value: BigRational,
    #[serde(with = "crate::arith::rational_string")]
    pub l_value_abs: BigRational,
    pub w: WGroupResult,
    #[serde(with = "crate::arith::rational_string")]
    pub predicted_kt_order: BigRational,
    #[serde(with = "crate::arith::rational_string")]
    pub predicted_odd_part: BigRational,
    pub integral: bool,
    pub characters: Vec<CharacterRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoDefect {
    /// Number of trivial summands of `X` restricted to complex conjugation.
    pub rank_bound: usize,
    pub real_place: RealDecomposition,
    pub statement: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BTCReport {
    pub rank: usize,
    pub group_order: usize,
    pub modulus: Option<u64>,
    pub totally_real: Option<bool>,
    pub prediction: Option<Prediction>,
    pub two_defect: Option<TwoDefect>,
    pub motivic: Option<MotivicReport>,
    pub ono: OnoDecomposition,
    pub warnings: Vec<String>,
}

fn classes_for(x: &GLattice, opts: &EngineOptions) -> Result<Vec<SubgroupClass>> {
    x.group().subgroup_classes(opts.bound())
}

/// The two sides of the conjectured formula, without the motivic check.
pub fn predict_values(x: &GLattice, r: &AbelianRealization, opts: &EngineOptions) -> Result<Prediction> {
    let classes = classes_for(x, opts)?;
    let l = artin_L_minus_one(x, r, &classes)?;
    let w = w_group_order(x, r, opts.stabilization)?;
    let predicted = &l.abs * BigRational::from_integer(w.total.clone());
    Ok(Prediction {
        l_value: l.value,
        l_value_abs: l.abs,
        predicted_odd_part: odd_part(&predicted),
        integral: predicted.is_integer(),
        predicted_kt_order: predicted,
        w,
        characters: l.characters,
    })
}

/// Full report for a lattice with an abelian realization. A realization
/// that is not totally real yields a report without a prediction.
pub fn btc_predict(x: &GLattice, r: &AbelianRealization, opts: &EngineOptions) -> Result<BTCReport> {
    if x.group().as_ref() != r.group().as_ref() {
        return Err(Error::GroupMismatch);
    }
    let mut report = btc_symbolic(x, opts)?;
    report.modulus = Some(r.modulus());
    report.totally_real = Some(r.is_totally_real());
    report.warnings.retain(|w| !w.starts_with("no abelian realization"));
    if !r.is_totally_real() {
        report
            .warnings
            .push(format!("{}; the conjecture's hypothesis is not met, no prediction made", Error::NotTotallyReal));
        return Ok(report);
    }
    let prediction = predict_values(x, r, opts)?;
    if !prediction.integral {
        report.warnings.push(format!(
            "predicted order {} is not an integer",
            crate::arith::format_rational(&prediction.predicted_kt_order)
        ));
    }
    let real = real_decomposition(x, r.conjugation())?;
    report.two_defect = Some(TwoDefect {
        rank_bound: real.trivial,
        statement: format!(
            "equality asserted up to a power of 2 bounded by 2^{} (odd part exact)",
            real.trivial
        ),
        real_place: real,
    });
    report.prediction = Some(prediction);
    Ok(report)
}

/// Report carrying only the symbolic identity and the motivic verdict; used
/// when no abelian realization is available.
pub fn btc_symbolic(x: &GLattice, opts: &EngineOptions) -> Result<BTCReport> {
    let classes = classes_for(x, opts)?;
    let ono = ono_decomposition(x, &classes)?;
    let motivic = if opts.skip_motivic {
        None
    } else {
        let mut m = opts.motivic.clone();
        m.subgroup_bound = Some(opts.bound());
        Some(check_motivic_interpretation(x, &m)?)
    };
    Ok(BTCReport {
        rank: x.rank(),
        group_order: x.group().order(),
        modulus: None,
        totally_real: None,
        prediction: None,
        two_defect: None,
        motivic,
        ono,
        warnings: vec!["no abelian realization: only the symbolic L-value identity is available".into()],
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct IsogenyVerdict {
    #[serde(with = "crate::arith::rational_string")]
    pub predicted_first: BigRational,
    #[serde(with = "crate::arith::rational_string")]
    pub predicted_second: BigRational,
    #[serde(with = "crate::arith::rational_string")]
    pub ratio: BigRational,
    /// `k` with `ratio = 2^k`, when the ratio is a power of two.
    pub two_power: Option<i64>,
    pub odd_parts_equal: bool,
    pub pass: bool,
}

/// Isogenous tori (equal lattice characters) have predictions differing by
/// a power of two.
pub fn isogeny_invariance_check(
    x1: &GLattice,
    x2: &GLattice,
    r: &AbelianRealization,
    opts: &EngineOptions,
) -> Result<IsogenyVerdict> {
    if x1.group().as_ref() != x2.group().as_ref() {
        return Err(Error::GroupMismatch);
    }
    if lattice_character(x1) != lattice_character(x2) {
        return Err(Error::CharacterMismatch);
    }
    let p1 = predict_values(x1, r, opts)?.predicted_kt_order;
    let p2 = predict_values(x2, r, opts)?.predicted_kt_order;
    let ratio = &p1 / &p2;
    let two_power = two_power_exponent(&ratio);
    Ok(IsogenyVerdict {
        odd_parts_equal: odd_part(&p1) == odd_part(&p2),
        pass: two_power.is_some(),
        two_power,
        ratio,
        predicted_first: p1,
        predicted_second: p2,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapiroVerdict {
    pub subgroup: Subgroup,
    #[serde(with = "crate::arith::rational_string")]
    pub lattice_route: BigRational,
    #[serde(with = "crate::arith::rational_string")]
    pub zeta_m: BigRational,
    #[serde(with = "crate::arith::int_json")]
    pub w2_m: BigInt,
    #[serde(with = "crate::arith::rational_string")]
    pub classical_route: BigRational,
    pub pass: bool,
}

/// Compares the prediction for `Z[G/H]` with the classical Birch-Tate
/// value `|zeta_M(-1)| w_2(M)` of the fixed field `M` of `h`. The latter
/// uses `w_2(M)` computed by direct enumeration of units.
pub fn weil_restriction_check(h: &Subgroup, r: &AbelianRealization, opts: &EngineOptions) -> Result<ShapiroVerdict> {
    let g = r.group().clone();
    if !g.is_subgroup(h.elements()) {
        return Err(Error::NotSubgroup(format!("{:?}", h.elements())));
    }
    let x = GLattice::permutation_lattice(g, h);
    let lattice_route = predict_values(&x, r, opts)?.predicted_kt_order;
    let zeta_m = zeta_minus_one(h, r)?;
    let w2_m = classical_w2(r, h, opts.stabilization.cap)?;
    let classical_route = zeta_m.abs() * BigRational::from_integer(w2_m.clone());
    Ok(ShapiroVerdict {
        subgroup: h.clone(),
        pass: lattice_route == classical_route,
        lattice_route,
        zeta_m,
        w2_m,
        classical_route,
    })
}
