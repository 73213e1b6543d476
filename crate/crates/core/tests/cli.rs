use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;

use schwinger::cli::{
    resolve_cache_dir, run, CheckReport, InvolutionListing, Outcome, Status, TableComparison,
    EXIT_FAILED, EXIT_INTERNAL, EXIT_OK, EXIT_USAGE,
};
use schwinger::level_table::{level_content_closed_form, LevelTable};
use schwinger::partitions::{CharacterTable, CharacterVector, Partition};
use schwinger::representation::{rep_character, DecompositionReport};
use tempfile::TempDir;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("schwinger").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let out = cli(args);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    out.stdout
}

fn p(s: &str) -> Partition {
    s.parse().unwrap()
}

fn set(items: &[&str]) -> BTreeSet<Partition> {
    items.iter().map(|s| p(s)).collect()
}

fn roundtrip<T>(json: &str) -> T
where
    T: serde::de::DeserializeOwned + serde::Serialize + PartialEq + std::fmt::Debug,
{
    let value: T = serde_json::from_str(json).unwrap();
    let again: T = serde_json::from_str(&serde_json::to_string_pretty(&value).unwrap()).unwrap();
    assert_eq!(value, again);
    assert_eq!(serde_json::to_string_pretty(&value).unwrap() + "\n", json);
    value
}

#[test]
fn involutions_s4() {
    let text = ok(&["involutions", "--n", "4"]);
    assert!(text.contains("X_1 (6 elements)"));
    assert!(text.contains("  (1 3)(2 4)\n"));
    assert!(text.contains("|X| = 10, sum of irreducible dimensions = 10 (holds)"));

    let json = ok(&["involutions", "--n", "4", "--format", "json"]);
    let listing: InvolutionListing = roundtrip(&json);
    let counts: Vec<usize> = listing.levels.iter().map(|l| l.count).collect();
    assert_eq!(counts, [1, 6, 3]);
    assert_eq!(listing.total, 10u32.into());
    assert!(listing.identity_holds);
}

#[test]
fn involutions_small_and_single_level() {
    let one: InvolutionListing = roundtrip(&ok(&["involutions", "--n", "1", "--format", "json"]));
    assert_eq!(one.levels.len(), 1);
    assert_eq!(one.levels[0].elements, ["e"]);

    let five: InvolutionListing = roundtrip(&ok(&["involutions", "--n", "5", "--format", "json"]));
    assert_eq!(five.total, 26u32.into());

    let level: InvolutionListing = roundtrip(&ok(&[
        "involutions",
        "--n",
        "5",
        "--m",
        "2",
        "--format",
        "json",
    ]));
    assert_eq!(level.levels.len(), 1);
    assert_eq!(level.levels[0].count, 15);
}

#[test]
fn decompose_levels() {
    let r: DecompositionReport = roundtrip(&ok(&[
        "decompose",
        "--n",
        "4",
        "--m",
        "1",
        "--format",
        "json",
        "--no-cache",
    ]));
    assert_eq!(r.support(), set(&["(3,1)", "(2,1,1)"]));
    assert!(r.multiplicity_free && r.disjoint_from_lower_levels);

    let r: DecompositionReport = roundtrip(&ok(&[
        "decompose",
        "--n",
        "4",
        "--m",
        "0",
        "--format",
        "json",
        "--no-cache",
    ]));
    assert_eq!(r.support(), set(&["(4)"]));

    let r: DecompositionReport = roundtrip(&ok(&[
        "decompose",
        "--n",
        "6",
        "--m",
        "3",
        "--format",
        "json",
        "--no-cache",
    ]));
    assert_eq!(r.support(), level_content_closed_form(6, 3).unwrap());

    let all: Vec<DecompositionReport> = roundtrip(&ok(&[
        "decompose",
        "--n",
        "5",
        "--format",
        "json",
        "--no-cache",
    ]));
    assert_eq!(all.iter().map(|r| r.m).collect::<Vec<_>>(), [0, 1, 2]);

    let text = ok(&["decompose", "--n", "4", "--m", "1", "--no-cache"]);
    assert!(text.contains("(3,1)") && text.contains("multiplicity-free: yes"));
}

#[test]
fn character_outputs() {
    let table: CharacterTable = roundtrip(&ok(&[
        "character",
        "--n",
        "5",
        "--format",
        "json",
        "--no-cache",
    ]));
    assert_eq!(table, CharacterTable::compute(5).unwrap());

    let chi: CharacterVector = roundtrip(&ok(&[
        "character",
        "--n",
        "5",
        "--m",
        "2",
        "--format",
        "json",
    ]));
    assert_eq!(chi, rep_character(5, 2).unwrap());

    let text = ok(&["character", "--n", "3", "--no-cache"]);
    assert_eq!(
        text,
        "irrep \\ class  (3)  (2,1)  (1,1,1)\n\
         (3)              1      1        1\n\
         (2,1)           -1      0        2\n\
         (1,1,1)          1     -1        1\n"
    );
}

#[test]
fn verify_passes() {
    for n in ["2", "4", "6"] {
        let json = ok(&["verify", "--n", n, "--format", "json", "--no-cache"]);
        let report: CheckReport = roundtrip(&json);
        assert!(report.passed);
        assert!(
            report.checks.iter().all(|c| c.status == Status::Pass),
            "{report:?}"
        );
        assert_eq!(report.checks.len(), 6);
    }
    let text = ok(&["verify", "--n", "4", "--no-cache"]);
    assert!(text.ends_with("result: PASS\n"));
}

#[test]
fn carrier_checks() {
    let m: CheckReport = roundtrip(&ok(&["monomial-check", "--n", "5", "--format", "json"]));
    assert!(m.passed);
    let f: CheckReport = roundtrip(&ok(&["fock-check", "--n", "5", "--format", "json"]));
    assert!(f.passed);

    let skipped: CheckReport = roundtrip(&ok(&[
        "fock-check",
        "--n",
        "5",
        "--basis-limit",
        "10",
        "--format",
        "json",
    ]));
    assert_eq!(skipped.checks[0].status, Status::Skip);
    assert!(skipped.passed);
}

#[test]
fn table_outputs() {
    let cmp: TableComparison = roundtrip(&ok(&[
        "table", "--n", "10", "--max-m", "4", "--format", "json",
    ]));
    assert!(cmp.diff.is_empty());
    assert_eq!(cmp.recipe, cmp.closed_form);
    let level4 = cmp.recipe.level(4).unwrap();
    assert!(level4.contains(&p("(2,2,2,2,2)")));
    assert!(level4.contains(&p("(4,2,1,1,1,1)")));

    let small: TableComparison = roundtrip(&ok(&[
        "table", "--n", "2", "--max-m", "1", "--format", "json",
    ]));
    assert_eq!(small.recipe.levels.len(), 2);

    let eight: TableComparison = roundtrip(&ok(&[
        "table", "--n", "8", "--max-m", "4", "--format", "json",
    ]));
    assert!(eight.diff.is_empty());

    let text = ok(&["table", "--n", "10", "--max-m", "4"]);
    assert!(text.contains("(n-5,2,1^3)"));
    assert!(text.contains("(n-8,2^4)"));
    assert!(text.ends_with("diff: none\n"));

    let json = serde_json::to_value(&cmp.recipe).unwrap();
    let back: LevelTable = serde_json::from_value(json).unwrap();
    assert_eq!(back, cmp.recipe);
}

#[test]
fn usage_errors() {
    for args in [
        &["involutions", "--n", "0"][..],
        &["involutions", "--n", "31"],
        &["involutions", "--n", "6", "--max-n", "5"],
        &["involutions", "--n", "4", "--m", "3"],
        &["decompose", "--n", "4", "--m", "3", "--no-cache"],
        &["table", "--n", "7", "--max-m", "4"],
        &["involutions", "--n", "4", "--format", "xml"],
        &["involutions"],
        &["frobnicate", "--n", "4"],
        &["involutions", "--n", "4", "--max-n", "40"],
        &["involutions", "--n", "20"],
    ] {
        let out = cli(args);
        assert_eq!(out.code, EXIT_USAGE, "{args:?}");
        assert!(out.stdout.is_empty());
        assert!(!out.stderr.is_empty());
    }
    let help = cli(&["--help"]);
    assert_eq!(help.code, EXIT_OK);
    assert!(help.stdout.contains("monomial-check"));
}

#[test]
fn deterministic_output() {
    for args in [
        &["verify", "--n", "5", "--seed", "7", "--no-cache"][..],
        &[
            "verify",
            "--n",
            "5",
            "--seed",
            "7",
            "--no-cache",
            "--format",
            "json",
        ],
        &["monomial-check", "--n", "4", "--seed", "3"],
        &["table", "--n", "9"],
        &["decompose", "--n", "6", "--no-cache", "--format", "json"],
    ] {
        assert_eq!(cli(args), cli(args), "{args:?}");
    }
}

#[test]
fn cache_directory_precedence() {
    let flag = Path::new("/flag/dir");
    assert_eq!(resolve_cache_dir(Some(flag), Some("/env/dir".into())), flag);
    assert_eq!(
        resolve_cache_dir(None, Some("/env/dir".into())),
        Path::new("/env/dir")
    );
    let fallback = resolve_cache_dir(None, None);
    assert_eq!(resolve_cache_dir(None, Some("".into())), fallback);
    assert!(fallback.ends_with("schwinger"));
}

#[test]
fn cache_flag_writes_table() {
    let dir = TempDir::new().unwrap();
    let d = dir.path().to_str().unwrap();
    let first = ok(&["decompose", "--n", "5", "--cache-dir", d]);
    let file = dir.path().join("chartab_5.json");
    assert!(file.exists());
    let cached: CharacterTable =
        serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    assert_eq!(cached, CharacterTable::compute(5).unwrap());
    assert_eq!(ok(&["decompose", "--n", "5", "--cache-dir", d]), first);
}

#[test]
fn binary_honours_environment_and_flag() {
    let env_dir = TempDir::new().unwrap();
    let flag_dir = TempDir::new().unwrap();
    let bin = env!("CARGO_BIN_EXE_schwinger");

    let out = Command::new(bin)
        .args(["decompose", "--n", "4", "--m", "1"])
        .env("SCHWINGER_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(String::from_utf8(out.stdout).unwrap().contains("(2,1,1)"));
    assert!(env_dir.path().join("chartab_4.json").exists());

    let out = Command::new(bin)
        .args(["decompose", "--n", "3", "--cache-dir"])
        .arg(flag_dir.path())
        .env("SCHWINGER_CACHE_DIR", env_dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_OK));
    assert!(flag_dir.path().join("chartab_3.json").exists());
    assert!(!env_dir.path().join("chartab_3.json").exists());

    let out = Command::new(bin)
        .args(["involutions", "--n", "0"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(EXIT_USAGE));
    assert!(String::from_utf8(out.stderr).unwrap().starts_with("error:"));
}

#[test]
fn corrupt_cache_is_an_internal_error() {
    let dir = TempDir::new().unwrap();
    std::fs::write(dir.path().join("chartab_4.json"), "{\"n\":4,\"classes\":[]").unwrap();
    let out = cli(&[
        "decompose",
        "--n",
        "4",
        "--cache-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_INTERNAL);
    assert!(out.stderr.contains("chartab_4.json"));
}

/// A well-formed but wrong cached table makes verification fail with a
/// counterexample instead of crashing.
#[test]
fn wrong_cached_table_fails_verification() {
    let dir = TempDir::new().unwrap();
    let mut table = CharacterTable::compute(4).unwrap();
    // (4) + (2,2) has degree 3 but is not irreducible
    let fake: Vec<_> = table.table[0]
        .iter()
        .zip(&table.table[2])
        .map(|(a, b)| a + b)
        .collect();
    table.table[1] = fake;
    std::fs::write(
        dir.path().join("chartab_4.json"),
        serde_json::to_string(&table).unwrap(),
    )
    .unwrap();

    let out = cli(&[
        "verify",
        "--n",
        "4",
        "--format",
        "json",
        "--cache-dir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(out.code, EXIT_FAILED, "{}", out.stderr);
    let report: CheckReport = serde_json::from_str(&out.stdout).unwrap();
    assert!(!report.passed);
    let model = &report.checks[0];
    assert_eq!(model.status, Status::Fail);
    assert!(!model.counterexamples.is_empty());
}
