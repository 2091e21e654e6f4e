use serde_json::Value;
use torusbt::manifest::{Command, Manifest};
use torusbt::runner::{run_manifest, write_report, Report};

fn run(src: &str) -> Report {
    run_manifest(&Manifest::parse(src).unwrap()).0
}

fn result(r: &Report, c: Command) -> &Value {
    let res = r.result(c).unwrap();
    assert!(res.ok, "{c}: {:?}", res.error);
    res.result.as_ref().unwrap()
}

const SQRT5_TABLE: &str = r#"
commands = ["predict", "wgroup", "local-table", "real-decompose"]

[group]
table = [[0, 1], [1, 0]]
table_generators = [1]

[lattice]
rank = 2
action.g0 = [[0, 1], [1, 0]]

[realization]
modulus = 5
images = { 2 = 1, 3 = "g0", 4 = "e" }

[options]
prime_cap = 13
"#;

#[test]
fn multiplication_table_manifest() {
    let r = run(SQRT5_TABLE);
    assert!(r.all_ok());
    assert_eq!(result(&r, Command::Predict)["prediction"]["predicted_kt_order"], "4");
    let w = result(&r, Command::WGroup);
    assert_eq!(w["w"]["total"], 120);
    let counts: Vec<(u64, i64)> = result(&r, Command::LocalTable)["counts"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["ell"].as_u64().unwrap(), c["count"].as_i64().unwrap()))
        .collect();
    // Split primes give (ell - 1)^2, inert ones ell^2 - 1.
    assert_eq!(counts, vec![(2, 3), (3, 8), (7, 48), (11, 100), (13, 168)]);
    let d = &result(&r, Command::RealDecompose)["decomposition"];
    assert_eq!((d["trivial"].as_u64(), d["regular"].as_u64()), (Some(2), Some(0)));
}

#[test]
fn report_echoes_inputs_and_schema() {
    let r = run("fixture = \"gm_q\"");
    let v: Value = serde_json::from_str(&r.to_json_pretty()).unwrap();
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["inputs"]["realization"]["modulus"], 1);
    assert_eq!(v["results"][0]["command"], "predict");
    assert!(v["generated_at"].as_str().unwrap().ends_with('Z'));
    let back: Report = serde_json::from_value(v).unwrap();
    assert_eq!(back, r);
}

#[test]
fn sibling_commands_survive_errors() {
    let src = SQRT5_TABLE.replace("2 = 1, 3 = \"g0\", 4 = \"e\"", "2 = 1, 3 = \"g0\", 4 = \"g0\"");
    let r = run(&src.replace("real-decompose\"", "real-decompose\", \"resolve\""));
    let pred = r.result(Command::Predict).unwrap();
    assert_eq!(pred.error.as_ref().unwrap().kind, "NotHomomorphism");
    assert!(r.result(Command::Resolve).unwrap().ok);
}

#[test]
fn non_totally_real_realization() {
    let src = r#"
fixture = "res_sqrt5"
commands = ["predict", "lvalue", "wgroup"]

[realization]
modulus = 4
images = { 3 = "g0" }
"#;
    let r = run(src);
    let p = result(&r, Command::Predict);
    assert!(p["prediction"].is_null());
    assert!(r.warnings.iter().any(|w| w.contains("not totally real")));
    assert_eq!(r.result(Command::LValue).unwrap().error.as_ref().unwrap().kind, "NotTotallyReal");
    assert!(r.result(Command::WGroup).unwrap().ok);
}

#[test]
fn parse_errors() {
    for (src, field) in [
        ("fixture = \"gm_q\"\ncommands = [\"predict\", \"frobnicate\"]", "commands[1]"),
        ("[group]\ngenerators = [[0]]", "lattice"),
        ("fixture = \"gm_q\"\n[options]\nconjugation = \"g0^\"", "options.conjugation"),
        ("fixture = \"gm_q\"\n[subgroup]\ngenerators = [\"x1\"]", "subgroup.generators[0]"),
    ] {
        let e = Manifest::parse(src).unwrap_err();
        assert_eq!(e.field, field, "{src}");
    }
    let e = Manifest::parse("fixture = \"gm_q\"\n\ncommands = [\"predict\", \"frobnicate\"]").unwrap_err();
    assert_eq!(e.line, Some(3));
    let e = Manifest::parse("fixture = \"gm_q\"\n[options]\nprime_cap = \"ten\"").unwrap_err();
    assert_eq!(e.line, Some(3));
}

#[test]
fn isogeny_and_shapiro_commands() {
    let src = r#"
fixture = "normone_5"
commands = ["check-isogeny", "check-shapiro"]

[lattice]
rank = 2
action.g0 = [[-1, 0], [0, 1]]

[lattice2]
rank = 2
action.g0 = [[0, 1], [1, 0]]

[subgroup]
generators = []
"#;
    let r = run(src);
    let iso = result(&r, Command::CheckIsogeny);
    assert_eq!(iso["ratio"], "2");
    assert_eq!(iso["odd_parts_equal"], true);
    let sh = result(&r, Command::CheckShapiro);
    assert_eq!(sh["checks"].as_array().unwrap().len(), 1);
    assert_eq!(sh["checks"][0]["classical_route"], "4");

    let r = run("fixture = \"normone_5\"\ncommands = [\"check-isogeny\"]");
    assert_eq!(r.results[0].error.as_ref().unwrap().kind, "ParseError");
}

#[test]
fn cache_serves_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let src = format!(
        "fixture = \"dual_normone_v4\"\ncommands = [\"predict\", \"resolve\", \"wgroup\"]\n[options]\ncache_dir = {:?}\n",
        dir.path().display().to_string()
    );
    let m = Manifest::parse(&src).unwrap();
    let (mut a, s1) = run_manifest(&m);
    let (mut b, s2) = run_manifest(&m);
    assert_eq!((s1.cache_hits, s1.cache_writes), (0, 3));
    assert_eq!((s2.cache_hits, s2.cache_writes), (3, 0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 3);
    a.generated_at.clear();
    b.generated_at.clear();
    assert_eq!(a.to_json_pretty(), b.to_json_pretty());

    let out = dir.path().join("report.json");
    write_report(&a, &out).unwrap();
    let back: Report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(back, a);
}

/// A certificate produced by the search, fed back in as user input.
#[test]
fn supplied_certificate_round_trip() {
    let r = run("fixture = \"dual_normone_v4\"\ncommands = [\"motivic\"]");
    let cert = &result(&r, Command::Motivic)["certificate"];
    let mats = cert["complement"]["generator_matrices"].as_array().unwrap();
    let mut src = String::from(
        "commands = [\"motivic\"]\n[group]\ngenerators = [[1, 0, 3, 2], [2, 3, 0, 1]]\n\
         [lattice]\nrank = 3\naction.g0 = [[0, 1, -1], [1, 0, -1], [0, 0, -1]]\n\
         action.g1 = [[0, -1, 1], [0, -1, 0], [1, -1, 0]]\n[certificate]\n",
    );
    src += &format!("iso = {}\ntarget = {}\n", cert["iso"], cert["target"]);
    src += &format!("[certificate.complement]\nrank = {}\n", cert["complement"]["rank"]);
    for (i, m) in mats.iter().enumerate() {
        src += &format!("action.g{i} = {m}\n");
    }
    let r = run(&src);
    let m = result(&r, Command::Motivic);
    assert_eq!(m["verdict"], "YesInvertibleCertificate");
    assert_eq!(m["certificate_source"], "supplied");

    let broken = src.replacen("iso = [[0,-1", "iso = [[1,-1", 1);
    assert_ne!(broken, src);
    let r = run(&broken);
    assert_ne!(result(&r, Command::Motivic)["certificate_source"], "supplied");
}

#[test]
fn hostile_inputs_error_cleanly() {
    let cases = [
        "fixture = \"res_sqrt5\"\n[realization]\nmodulus = 0\n",
        "fixture = \"res_sqrt5\"\n[realization]\nmodulus = 5\nimages = { 0 = \"g0\" }\n",
        "fixture = \"res_sqrt5\"\n[realization]\nmodulus = 5\nimages = { 2 = 7 }\n",
        "fixture = \"res_sqrt5\"\n[realization]\nmodulus = 5\nimages = { 2 = \"g9\" }\n",
        "fixture = \"res_sqrt5\"\n[realization]\nmodulus = 18446744073709551615\nimages = { 2 = \"g0\" }\n",
        "[group]\ntable = [[0, 1], [1, 0]]\ntable_generators = [5]\n[lattice]\nrank = 1\naction.g0 = [[1]]\n",
        "[group]\ntable = [[0, 1], [0, 0]]\n[lattice]\nrank = 0\n",
        "[group]\ngenerators = [[0, 0]]\n[lattice]\nrank = 0\n",
        "[group]\ngenerators = [[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 0], [1, 0, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]]\n[lattice]\nrank = 0\n",
        "fixture = \"gm_q\"\n[options]\nconjugation = 3\n",
        "fixture = \"gm_q\"\n[subgroup]\ngenerators = [\"g0^-9223372036854775808\"]\n",
        "fixture = \"res_sqrt5\"\n[options]\nconjugation = \"g0\"\n",
        "fixture = \"dual_normone_v4\"\n[reference_resolution]\nsummands = [{ subgroup = [\"g0\"], image = [5, 0, 0] }]\n",
    ];
    let all: Vec<&str> = torusbt::manifest::Command::ALL.iter().map(|c| c.name()).collect();
    for src in cases {
        let src = format!("commands = {all:?}\n{src}");
        if let Ok(m) = Manifest::parse(&src) {
            let (report, _) = run_manifest(&m);
            assert_eq!(report.results.len(), all.len());
        }
    }
}
