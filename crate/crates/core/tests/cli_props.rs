mod common;

use common::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use shapecalc::cli::{run_command, sha256_hex, Outcome, EXIT_BUDGET, EXIT_OK, EXIT_REJECTED, EXIT_USAGE};
use shapecalc::cubical::{cube, cube_boundary, cube_horn, tensor};
use shapecalc::error::Budget;
use shapecalc::format::{parse_input, serialize, Document, InputDocument};

fn round_trip(doc: InputDocument) -> Result<(), TestCaseError> {
    let text = serialize(&doc);
    let back = parse_input(&text).map_err(|e| TestCaseError::fail(format!("{e}\n{text}")))?;
    prop_assert_eq!(&back, &doc);
    prop_assert_eq!(serialize(&back), text);
    Ok(())
}

fn run(args: &[&str]) -> Outcome {
    run_command(std::iter::once("shapecalc").chain(args.iter().copied()))
}

fn scratch(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("shapecalc-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

proptest! {
    #![proptest_config(config(64))]

    #[test]
    fn simplicial_documents_round_trip(s in any::<u64>()) {
        let x = random_simplicial_set(&mut ChaCha8Rng::seed_from_u64(s), 3, 10);
        let mut doc = InputDocument::new(Document::Simplicial(x));
        doc.name = Some(format!("x{}", s % 100));
        round_trip(doc)?;
    }

    #[test]
    fn presheaf_and_category_documents_round_trip(s in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let cats = small_categories(&mut rng, 2);
        let c = cats[rng.gen_range(0..cats.len())].clone();
        round_trip(InputDocument::new(Document::Category((*c).clone())))?;
        round_trip(InputDocument::new(Document::Presheaf(random_presheaf(&mut rng, &c))))?;
    }

    #[test]
    fn cubical_documents_round_trip(a in 0usize..3, b in 0usize..3) {
        let pick = |k: usize| match k {
            0 => cube(1),
            1 => cube_boundary(2),
            _ => cube_horn(2, 2, true).unwrap(),
        };
        let t = tensor(&pick(a), &pick(b), 4, &Budget::new("test", 1_000_000)).unwrap().complex;
        round_trip(InputDocument::new(Document::Cubical(t)))?;
    }
}

#[test]
fn fixtures_round_trip() {
    for name in std::fs::read_dir(fixture_path("")).unwrap() {
        let name = name.unwrap().file_name().into_string().unwrap();
        let doc = parse_input(&fixture(&name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        let text = serialize(&doc);
        assert_eq!(parse_input(&text).unwrap(), doc, "{name}");
        assert_eq!(serialize(&parse_input(&text).unwrap()), text, "{name}");
    }
}

#[test]
fn homology_of_the_triangle_boundary() {
    let o = run(&["homology", "--in", &fixture_path("boundary2.sx")]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let r = o.report.unwrap();
    let Document::Simplicial(x) = parse_input(&fixture("boundary2.sx")).unwrap().body else { panic!() };
    let want = betti_oracle(&x, 2);
    assert_eq!(want, vec![1, 1, 0]);
    assert_eq!(r.field("betti"), Some("1 1"));
    assert!(r.bounds.iter().any(|b| b.contains("2")), "{:?}", r.bounds);
    assert_eq!(r.inputs[0].1, sha256_hex(fixture("boundary2.sx").as_bytes()));
}

#[test]
fn report_ends_with_a_digest_of_its_body() {
    let o = run(&["homology", "--in", &fixture_path("rp2.sx")]);
    assert_eq!(o.code, EXIT_OK);
    let (body, last) = o.stdout.trim_end().rsplit_once('\n').unwrap();
    assert_eq!(last, format!("digest sha256 {}", sha256_hex(format!("{body}\n").as_bytes())));
    assert!(o.stdout.contains("torsion 1 2"), "{}", o.stdout);
}

#[test]
fn cube_verification_holds() {
    let o = run(&["cube-verify", "--m", "1", "--n", "1", "--case", "boundary"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    assert_eq!(o.report.unwrap().field("verdict"), Some("true"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(run(&["homology", "--dmax", "nope"]).code, EXIT_USAGE);
    assert_eq!(run(&["--help"]).code, EXIT_OK);
    let wrong_kind = run(&["homology", "--in", &fixture_path("arrow.cat")]);
    assert_eq!(wrong_kind.code, EXIT_REJECTED);
    assert!(wrong_kind.stdout.contains("status rejected"), "{}", wrong_kind.stdout);
    let missing = run(&["homology", "--in", "/nonexistent/input.sx"]);
    assert_eq!(missing.code, EXIT_REJECTED);
    let starved = run(&["cech", "--in", &fixture_path("circle-three.cover"), "--budget", "10"]);
    assert_eq!(starved.code, EXIT_BUDGET, "{}", starved.stdout);
    assert!(starved.stdout.contains("status budget-exhausted"));
    assert!(starved.stdout.contains("budget-used"));
}

#[test]
fn out_and_emit_write_files() {
    let out = scratch("report.txt");
    let emit = scratch("diagonal.sx");
    let o = run(&[
        "cech",
        "--in",
        &fixture_path("circle-arcs.cover"),
        "--out",
        out.to_str().unwrap(),
        "--emit",
        emit.to_str().unwrap(),
    ]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let written = std::fs::read_to_string(&out).unwrap();
    assert!(written.contains("descent true"), "{written}");
    assert!(written.contains("bound diagonal dimension <= 3"), "{written}");
    let Document::Simplicial(d) = parse_input(&std::fs::read_to_string(&emit).unwrap()).unwrap().body else {
        panic!("emitted document is not simplicial")
    };
    assert_eq!(betti_oracle(&d, 2), vec![1, 1, 0]);
    let again = run(&["homology", "--in", emit.to_str().unwrap()]);
    assert_eq!(again.report.unwrap().field("betti"), Some("1 1"));
}

#[test]
fn boxslash_reports_a_witness() {
    let o = run(&["boxslash", "--in", &fixture_path("edge-vs-point.lift"), "--left", "i", "--right", "p"]);
    assert_eq!(o.code, EXIT_OK, "{}", o.stderr);
    let r = o.report.unwrap();
    assert_eq!(r.field("holds"), Some("false"));
    assert!(r.field("witness-top").is_some());
}
