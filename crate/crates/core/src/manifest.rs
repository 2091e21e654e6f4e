//! The TOML manifest: group, lattice, realization, requested commands and
//! options. Parsing checks structure and syntax only; mathematical
//! validation happens in [`Manifest::build`] so that failures can be
//! reported per command.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::arith::IntMatrix;
use crate::cohomology::{InvertibilityCertificate, PermSummand};
use crate::error::{Error, ManifestError, Result};
use crate::galois::AbelianRealization;
use crate::group::{FiniteGroup, Subgroup, DEFAULT_SUBGROUP_BOUND};
use crate::lattice::GLattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Command {
    Predict,
    LValue,
    WGroup,
    Resolve,
    Motivic,
    RealDecompose,
    LocalTable,
    CheckIsogeny,
    CheckShapiro,
}

impl Command {
    pub const ALL: [Command; 9] = [
        Command::Predict,
        Command::LValue,
        Command::WGroup,
        Command::Resolve,
        Command::Motivic,
        Command::RealDecompose,
        Command::LocalTable,
        Command::CheckIsogeny,
        Command::CheckShapiro,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Predict => "predict",
            Command::LValue => "lvalue",
            Command::WGroup => "wgroup",
            Command::Resolve => "resolve",
            Command::Motivic => "motivic",
            Command::RealDecompose => "real-decompose",
            Command::LocalTable => "local-table",
            Command::CheckIsogeny => "check-isogeny",
            Command::CheckShapiro => "check-shapiro",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command {s:?}"))
    }
}

/// A group element written as a word in the generators (`e`, `g0`,
/// `g1^-1*g0^2`) or as a raw element index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElementRef {
    Index(usize),
    Word(String),
}

/// Parsed word: `(generator index, exponent)` factors, applied left to right.
pub type Word = Vec<(usize, i64)>;

/// Parses `e`, `1`, or `g<i>[^<k>]` factors joined by `*`.
pub fn parse_word(s: &str) -> std::result::Result<Word, String> {
    let s = s.trim();
    if s == "e" || s == "1" {
        return Ok(Vec::new());
    }
    if s.is_empty() {
        return Err("empty word".into());
    }
    s.split('*')
        .map(|factor| {
            let factor = factor.trim();
            let (base, exp) = match factor.split_once('^') {
                Some((b, e)) => (b.trim(), Some(e.trim())),
                None => (factor, None),
            };
            let idx = base
                .strip_prefix('g')
                .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                .ok_or_else(|| format!("bad generator {base:?}"))?
                .parse::<usize>()
                .map_err(|_| format!("generator index too large in {base:?}"))?;
            let exp = match exp {
                None => 1,
                Some(e) => e.parse::<i64>().map_err(|_| format!("bad exponent {e:?}"))?,
            };
            Ok((idx, exp))
        })
        .collect()
}

fn eval_ref(g: &FiniteGroup, r: &ElementRef, field: &str) -> Result<usize> {
    match r {
        ElementRef::Index(i) if *i < g.order() => Ok(*i),
        ElementRef::Index(i) => Err(ManifestError::field(field, format!("element index {i} out of range")).into()),
        ElementRef::Word(w) => {
            let word = parse_word(w).map_err(|m| ManifestError::field(field, m))?;
            let mut acc = g.identity();
            for (i, k) in word {
                let gen = *g
                    .generators()
                    .get(i)
                    .ok_or_else(|| ManifestError::field(field, format!("no generator g{i}")))?;
                acc = g.mul(acc, g.power(gen, k));
            }
            Ok(acc)
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    /// Element indices used as `g0, g1, ...` with `table`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_generators: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub rank: usize,
    /// Matrix of each generator, keyed `g0, g1, ...`.
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RealizationSpec {
    pub modulus: u64,
    /// Unit (as a decimal key) to group element.
    #[serde(default)]
    pub images: BTreeMap<String, ElementRef>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubgroupSpec {
    pub generators: Vec<ElementRef>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SummandSpec {
    /// Generators of the stabilizer subgroup `H` of the summand `Z[G/H]`.
    pub subgroup: Vec<ElementRef>,
    /// Image of the base coset in the lattice.
    pub image: Vec<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReferenceSpec {
    pub summands: Vec<SummandSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateSpec {
    pub complement: LatticeSpec,
    pub iso: Vec<Vec<i64>>,
    /// Generators of each target subgroup `H_i`.
    pub target: Vec<Vec<ElementRef>>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsSpec {
    /// Largest prime in the local table.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime_cap: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stab_cap: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cache_dir: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub debug_oracles: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup_bound: Option<usize>,
    /// Element acting as complex conjugation for `real-decompose`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugation: Option<ElementRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skip_motivic: Option<bool>,
}

impl OptionsSpec {
    pub fn prime_cap(&self) -> u64 {
        self.prime_cap.unwrap_or(50)
    }

    pub fn stab_cap(&self) -> u32 {
        self.stab_cap.unwrap_or(30)
    }

    pub fn debug_oracles(&self) -> bool {
        self.debug_oracles.unwrap_or(false)
    }

    pub fn subgroup_bound(&self) -> usize {
        self.subgroup_bound.unwrap_or(DEFAULT_SUBGROUP_BOUND)
    }
}

/// The manifest document as written (after merging a named fixture).
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixture: Option<String>,
    #[serde(default)]
    pub commands: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<LatticeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice2: Option<LatticeSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub realization: Option<RealizationSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subgroup: Option<SubgroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference_resolution: Option<ReferenceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateSpec>,
    #[serde(default)]
    pub options: OptionsSpec,
}

fn line_of_offset(src: &str, offset: usize) -> usize {
    src[..offset.min(src.len())].bytes().filter(|&b| b == b'\n').count() + 1
}

/// First line mentioning `needle`, for locating semantic errors.
fn line_of(src: &str, needle: &str) -> Option<usize> {
    src.lines().position(|l| l.contains(needle)).map(|i| i + 1)
}

impl Manifest {
    /// Parses manifest text, merges a named fixture if requested, and checks
    /// structure: required sections, command names, word syntax, shapes.
    pub fn parse(src: &str) -> std::result::Result<Manifest, ManifestError> {
        let mut doc: Manifest = toml::from_str(src).map_err(|e| ManifestError {
            line: e.span().map(|s| line_of_offset(src, s.start)),
            field: String::new(),
            message: e.message().to_string(),
        })?;
        if let Some(name) = doc.fixture.clone() {
            let base_src = crate::catalog::fixture_source(&name).ok_or_else(|| ManifestError {
                line: line_of(src, "fixture"),
                field: "fixture".into(),
                message: format!("unknown fixture {name:?}"),
            })?;
            let base: Manifest = toml::from_str(base_src).expect("built-in fixtures parse");
            doc = base.overlay(doc);
        }
        doc.check().map_err(|mut e| {
            if e.line.is_none() {
                let key = e.field.rsplit('.').next().unwrap_or("").to_string();
                let key = key.split('[').next().unwrap_or("").to_string();
                if !key.is_empty() {
                    e.line = line_of(src, &key);
                }
            }
            e
        })?;
        Ok(doc)
    }

    /// `self` with every section present in `top` replaced by it.
    fn overlay(self, top: Manifest) -> Manifest {
        Manifest {
            fixture: top.fixture,
            commands: if top.commands.is_empty() { self.commands } else { top.commands },
            group: top.group.or(self.group),
            lattice: top.lattice.or(self.lattice),
            lattice2: top.lattice2.or(self.lattice2),
            realization: top.realization.or(self.realization),
            subgroup: top.subgroup.or(self.subgroup),
            reference_resolution: top.reference_resolution.or(self.reference_resolution),
            certificate: top.certificate.or(self.certificate),
            options: OptionsSpec {
                prime_cap: top.options.prime_cap.or(self.options.prime_cap),
                stab_cap: top.options.stab_cap.or(self.options.stab_cap),
                cache_dir: top.options.cache_dir.or(self.options.cache_dir),
                debug_oracles: top.options.debug_oracles.or(self.options.debug_oracles),
                subgroup_bound: top.options.subgroup_bound.or(self.options.subgroup_bound),
                conjugation: top.options.conjugation.or(self.options.conjugation),
                skip_motivic: top.options.skip_motivic.or(self.options.skip_motivic),
            },
        }
    }

    fn check(&self) -> std::result::Result<(), ManifestError> {
        for (i, c) in self.commands.iter().enumerate() {
            c.parse::<Command>()
                .map_err(|m| ManifestError::field(format!("commands[{i}]"), m))?;
        }
        let group = self
            .group
            .as_ref()
            .ok_or_else(|| ManifestError::field("group", "missing [group] section"))?;
        let n_gens = match (&group.generators, &group.table) {
            (Some(g), None) => g.len(),
            (None, Some(_)) => group.table_generators.as_ref().map_or(0, Vec::len),
            (Some(_), Some(_)) => {
                return Err(ManifestError::field("group", "give either `generators` or `table`, not both"))
            }
            (None, None) => return Err(ManifestError::field("group", "needs `generators` or `table`")),
        };
        let lattice = self
            .lattice
            .as_ref()
            .ok_or_else(|| ManifestError::field("lattice", "missing [lattice] section"))?;
        check_lattice_spec(lattice, n_gens, "lattice", group.table.is_some())?;
        if let Some(l2) = &self.lattice2 {
            check_lattice_spec(l2, n_gens, "lattice2", group.table.is_some())?;
        }
        if let Some(r) = &self.realization {
            for (unit, el) in &r.images {
                unit.parse::<u64>()
                    .map_err(|_| ManifestError::field(format!("realization.images.{unit}"), "unit must be a decimal integer"))?;
                check_ref(el, &format!("realization.images.{unit}"))?;
            }
        }
        if let Some(s) = &self.subgroup {
            for (i, el) in s.generators.iter().enumerate() {
                check_ref(el, &format!("subgroup.generators[{i}]"))?;
            }
        }
        if let Some(refs) = &self.reference_resolution {
            for (i, s) in refs.summands.iter().enumerate() {
                for el in &s.subgroup {
                    check_ref(el, &format!("reference_resolution.summands[{i}].subgroup"))?;
                }
                if s.image.len() != lattice.rank {
                    return Err(ManifestError::field(
                        format!("reference_resolution.summands[{i}].image"),
                        format!("expected {} entries", lattice.rank),
                    ));
                }
            }
        }
        if let Some(c) = &self.certificate {
            check_lattice_spec(&c.complement, n_gens, "certificate.complement", group.table.is_some())?;
            for (i, t) in c.target.iter().enumerate() {
                for el in t {
                    check_ref(el, &format!("certificate.target[{i}]"))?;
                }
            }
            check_rect(&c.iso, None, "certificate.iso")?;
        }
        if let Some(el) = &self.options.conjugation {
            check_ref(el, "options.conjugation")?;
        }
        Ok(())
    }

    pub fn parsed_commands(&self) -> Vec<Command> {
        self.commands.iter().filter_map(|c| c.parse().ok()).collect()
    }

    /// Builds the mathematical objects; errors here are reported per command.
    pub fn build(&self) -> Result<Context> {
        let spec = self.group.as_ref().ok_or_else(|| ManifestError::field("group", "missing"))?;
        let group = Arc::new(match (&spec.generators, &spec.table) {
            (Some(gens), _) => FiniteGroup::from_generators(gens)?,
            (None, Some(rows)) => FiniteGroup::from_table(rows, spec.table_generators.clone())?,
            (None, None) => return Err(ManifestError::field("group", "empty").into()),
        });
        let lattice = build_lattice(&group, self.lattice.as_ref().expect("checked"), "lattice")?;
        let lattice2 = self
            .lattice2
            .as_ref()
            .map(|l| build_lattice(&group, l, "lattice2"))
            .transpose()?;
        let realization = match &self.realization {
            None => None,
            Some(r) => {
                let mut images = Vec::with_capacity(r.images.len());
                for (unit, el) in &r.images {
                    let u: u64 = unit.parse().expect("checked");
                    images.push((u, eval_ref(&group, el, &format!("realization.images.{unit}"))?));
                }
                Some(AbelianRealization::new(group.clone(), r.modulus, &images))
            }
        };
        let subgroup = self
            .subgroup
            .as_ref()
            .map(|s| subgroup_from(&group, &s.generators, "subgroup.generators"))
            .transpose()?;
        let reference = match &self.reference_resolution {
            None => None,
            Some(spec) => {
                let classes = group.subgroup_classes(self.options.subgroup_bound())?;
                let mut out = Vec::new();
                for (i, s) in spec.summands.iter().enumerate() {
                    let field = format!("reference_resolution.summands[{i}]");
                    let h = subgroup_from(&group, &s.subgroup, &field)?;
                    let class_id = group
                        .find_class(&classes, &h)
                        .ok_or_else(|| ManifestError::field(&field, "subgroup not found"))?;
                    out.push(PermSummand {
                        class_id,
                        subgroup: h,
                        image: s.image.iter().map(|&v| BigInt::from(v)).collect(),
                    });
                }
                Some(out)
            }
        };
        let certificate = match &self.certificate {
            None => None,
            Some(c) => {
                let complement = build_lattice(&group, &c.complement, "certificate.complement")?;
                let target = c
                    .target
                    .iter()
                    .enumerate()
                    .map(|(i, t)| subgroup_from(&group, t, &format!("certificate.target[{i}]")))
                    .collect::<Result<Vec<_>>>()?;
                let iso = if c.iso.is_empty() {
                    IntMatrix::zeros(0, 0)
                } else {
                    IntMatrix::from_rows(&c.iso)
                };
                Some(InvertibilityCertificate { complement, iso, target })
            }
        };
        let conjugation = self
            .options
            .conjugation
            .as_ref()
            .map(|c| eval_ref(&group, c, "options.conjugation"))
            .transpose()?;
        Ok(Context {
            group,
            lattice,
            lattice2,
            realization,
            subgroup,
            reference,
            certificate,
            conjugation,
        })
    }
}

fn check_ref(r: &ElementRef, field: &str) -> std::result::Result<(), ManifestError> {
    match r {
        ElementRef::Index(_) => Ok(()),
        ElementRef::Word(w) => parse_word(w).map(|_| ()).map_err(|m| ManifestError::field(field, m)),
    }
}

fn check_rect(rows: &[Vec<i64>], n: Option<usize>, field: &str) -> std::result::Result<(), ManifestError> {
    let width = n.or_else(|| rows.first().map(Vec::len)).unwrap_or(0);
    if let Some(n) = n {
        if rows.len() != n {
            return Err(ManifestError::field(field, format!("expected {n} rows, found {}", rows.len())));
        }
    }
    if rows.iter().any(|r| r.len() != width) {
        return Err(ManifestError::field(field, format!("rows must all have length {width}")));
    }
    Ok(())
}

fn check_lattice_spec(
    spec: &LatticeSpec,
    n_gens: usize,
    field: &str,
    table: bool,
) -> std::result::Result<(), ManifestError> {
    for (key, m) in &spec.action {
        let idx = key
            .strip_prefix('g')
            .and_then(|d| d.parse::<usize>().ok())
            .ok_or_else(|| ManifestError::field(format!("{field}.action.{key}"), "keys must be g0, g1, ..."))?;
        if idx >= n_gens && !table {
            return Err(ManifestError::field(
                format!("{field}.action.{key}"),
                format!("the group has {n_gens} generators"),
            ));
        }
        check_rect(m, Some(spec.rank), &format!("{field}.action.{key}"))?;
    }
    Ok(())
}

fn subgroup_from(g: &FiniteGroup, gens: &[ElementRef], field: &str) -> Result<Subgroup> {
    let els = gens
        .iter()
        .map(|r| eval_ref(g, r, field))
        .collect::<Result<Vec<_>>>()?;
    Ok(g.generate(&els))
}

fn build_lattice(group: &Arc<FiniteGroup>, spec: &LatticeSpec, field: &str) -> Result<GLattice> {
    let n = group.generators().len();
    let mut mats = Vec::with_capacity(n);
    for i in 0..n {
        let key = format!("g{i}");
        let m = match spec.action.get(&key) {
            Some(rows) if spec.rank > 0 => IntMatrix::from_rows(rows),
            Some(_) => IntMatrix::zeros(0, 0),
            None if spec.rank == 0 => IntMatrix::zeros(0, 0),
            None => {
                return Err(ManifestError::field(format!("{field}.action"), format!("missing matrix for {key}")).into())
            }
        };
        mats.push(m);
    }
    if let Some(extra) = spec.action.keys().find(|k| k[1..].parse::<usize>().map_or(true, |i| i >= n)) {
        return Err(ManifestError::field(format!("{field}.action.{extra}"), format!("the group has {n} generators")).into());
    }
    GLattice::from_generator_matrices(group.clone(), spec.rank, &mats)
}

/// Objects built from a manifest.
#[derive(Clone, Debug)]
pub struct Context {
    pub group: Arc<FiniteGroup>,
    pub lattice: GLattice,
    pub lattice2: Option<GLattice>,
    /// Realization errors are kept so that commands not needing the
    /// realization still run.
    pub realization: Option<Result<AbelianRealization>>,
    pub subgroup: Option<Subgroup>,
    pub reference: Option<Vec<PermSummand>>,
    pub certificate: Option<InvertibilityCertificate>,
    pub conjugation: Option<usize>,
}

impl Context {
    pub fn realization(&self) -> Result<&AbelianRealization> {
        match &self.realization {
            Some(Ok(r)) => Ok(r),
            Some(Err(e)) => Err(e.clone()),
            None if !self.group.is_abelian() => Err(Error::NonAbelianRealization),
            None => Err(ManifestError::field("realization", "this command needs a [realization] section").into()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQRT5: &str = r#"
commands = ["predict"]

[group]
generators = [[1, 0]]

[lattice]
rank = 2
action.g0 = [[0, 1], [1, 0]]

[realization]
modulus = 5
images = { 2 = "g0" }
"#;

    #[test]
    fn parses_and_builds() {
        let m = Manifest::parse(SQRT5).unwrap();
        assert_eq!(m.parsed_commands(), vec![Command::Predict]);
        let ctx = m.build().unwrap();
        assert_eq!(ctx.lattice.rank(), 2);
        assert!(ctx.realization().unwrap().is_totally_real());
    }

    #[test]
    fn words() {
        assert_eq!(parse_word("e").unwrap(), vec![]);
        assert_eq!(parse_word("g0*g1^-2").unwrap(), vec![(0, 1), (1, -2)]);
        assert!(parse_word("h0").is_err());
        assert!(parse_word("g").is_err());
        assert!(parse_word("g0^x").is_err());
        assert!(parse_word("").is_err());
        let g = FiniteGroup::cyclic(4);
        let gen = g.generators()[0];
        assert_eq!(eval_ref(&g, &ElementRef::Word("g0^3*g0".into()), "x").unwrap(), g.identity());
        assert_eq!(eval_ref(&g, &ElementRef::Word("g0^-1".into()), "x").unwrap(), g.inv(gen));
    }

    #[test]
    fn unknown_command_is_a_parse_error() {
        let src = SQRT5.replace("\"predict\"", "\"predcit\"");
        let e = Manifest::parse(&src).unwrap_err();
        assert_eq!(e.field, "commands[0]");
        assert_eq!(e.line, Some(2));
    }

    #[test]
    fn toml_errors_carry_lines() {
        let src = SQRT5.replace("rank = 2", "rank = ");
        let e = Manifest::parse(&src).unwrap_err();
        assert_eq!(e.line, Some(8));
        let src = SQRT5.replace("rank = 2", "rank = 2\ncolour = 1");
        assert!(Manifest::parse(&src).is_err());
    }

    #[test]
    fn shape_errors() {
        let src = SQRT5.replace("[[0, 1], [1, 0]]", "[[0, 1]]");
        let e = Manifest::parse(&src).unwrap_err();
        assert_eq!(e.field, "lattice.action.g0");
        let src = SQRT5.replace("action.g0", "action.g1");
        assert!(Manifest::parse(&src).is_err());
    }

    #[test]
    fn mathematical_errors_surface_at_build() {
        let src = SQRT5.replace("[[0, 1], [1, 0]]", "[[2, 0], [0, 1]]");
        let m = Manifest::parse(&src).unwrap();
        assert!(matches!(m.build(), Err(Error::NotUnimodular { .. })));
        let src = SQRT5.replace("2 = \"g0\"", "2 = \"e\"");
        let ctx = Manifest::parse(&src).unwrap().build().unwrap();
        assert_eq!(ctx.realization().unwrap_err(), Error::NotSurjective);
    }

    #[test]
    fn fixture_overlay() {
        let m = Manifest::parse("fixture = \"normone_5\"\ncommands = [\"wgroup\"]\n").unwrap();
        assert_eq!(m.parsed_commands(), vec![Command::WGroup]);
        assert_eq!(m.lattice.as_ref().unwrap().rank, 1);
        assert!(Manifest::parse("fixture = \"nope\"").is_err());
    }
}
