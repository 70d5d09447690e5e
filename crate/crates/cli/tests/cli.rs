use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn brieskorn(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_brieskorn"));
    cmd.args(args)
        .env_remove("BRIESKORN_CACHE_DIR")
        .env("RUST_LOG", "debug");
    if let Some(dir) = cache {
        cmd.env("BRIESKORN_CACHE_DIR", dir);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn spectrum_rows() {
    let o = brieskorn(
        &[
            "spectrum",
            "--tuple",
            "2,2,2,18x9",
            "--pmax",
            "20",
            "--format",
            "tsv",
        ],
        None,
    );
    assert!(o.status.success());
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    let periods: Vec<&str> = rows.iter().map(|r| r.split('\t').next().unwrap()).collect();
    assert_eq!(
        periods,
        ["2", "4", "6", "8", "10", "12", "14", "16", "18", "20"]
    );
    assert!(rows.contains(&"18\t2,2,2,18x9\t21\t36\t26"));

    let o = brieskorn(
        &[
            "spectrum", "--tuple", "2,2,2", "--pmax", "4", "--format", "records",
        ],
        None,
    );
    assert_eq!(
        stdout(&o),
        "p=2\tsubtuple=2,2,2\tdim=3\tf_a=2\tdelta=1\np=4\tsubtuple=2,2,2\tdim=3\tf_a=4\tdelta=3\n"
    );
}

#[test]
fn tuple_parse_errors_exit_two() {
    for bad in ["1,2", "2,3,0x4", "2,,3", "2,abc"] {
        let o = brieskorn(&["spectrum", "--tuple", bad], None);
        assert_eq!(o.status.code(), Some(2), "{bad}");
        assert!(stderr(&o).contains("column"), "{bad}: {}", stderr(&o));
    }
}

#[test]
fn adc_verdicts() {
    let o = brieskorn(&["adc", "--tuple", "2,2,2,18x9", "--format", "tsv"], None);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o).lines().nth(1).unwrap(),
        "2,2,2,18x9\t9\t3/2\t11\t15/2\tPASS\t"
    );

    let o = brieskorn(&["adc", "--tuple", "2,2,2", "--format", "tsv"], None);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("\t-3/2\tFAIL\t"));

    let o = brieskorn(&["adc", "--tuple", "5,5"], None);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("FAIL") && stdout(&o).contains("2/5 < 1"));
}

#[test]
fn sh_bounds_examples() {
    let o = brieskorn(
        &[
            "sh-bounds",
            "--tuple",
            "2,2,2,18x9",
            "--degree",
            "11",
            "--format",
            "tsv",
        ],
        None,
    );
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("degree\tlower\tupper\tcertified\n11\t1\t2\tyes\n\n"));

    let o = brieskorn(
        &[
            "sh-bounds",
            "--tuple",
            "2,2,2,18x9",
            "--degree",
            "0",
            "--format",
            "tsv",
        ],
        None,
    );
    assert!(stdout(&o).starts_with("degree\tlower\tupper\tcertified\n0\t0\t0\tyes\n"));

    let o = brieskorn(
        &[
            "sh-bounds",
            "--tuple",
            "2,2,2,18x9",
            "--window",
            "-5:20",
            "--format",
            "records",
        ],
        None,
    );
    assert!(o.status.success());
    assert!(stdout(&o).contains("degree=11\tlower=1\tupper=2\tcertified=yes"));
}

#[test]
fn zero_column_file_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let zc = write(
        dir.path(),
        "zero.txt",
        "# relative homology\nshift 0\n11 3\n",
    );
    let o = brieskorn(
        &[
            "sh-bounds",
            "--tuple",
            "2,2,2,18x9",
            "--degree",
            "11",
            "--zero-column",
            &zc,
            "--format",
            "tsv",
        ],
        None,
    );
    assert!(stdout(&o).contains("11\t1\t5\tyes"), "{}", stdout(&o));
    let bad = write(dir.path(), "bad.txt", "shift x\n");
    let o = brieskorn(
        &[
            "sh-bounds",
            "--tuple",
            "2,2,2,18x9",
            "--degree",
            "11",
            "--zero-column",
            &bad,
        ],
        None,
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1"));
}

#[test]
fn catalog_gap_exits_four_and_names_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "sh-bounds",
        "--tuple",
        "2,2,3,3,25,25,25",
        "--window",
        "0:40",
    ];
    let o = brieskorn(&args, None);
    assert_eq!(o.status.code(), Some(4));
    assert!(stderr(&o).contains("(2,2,3,3)"));

    let cat = write(
        dir.path(),
        "extra.cat",
        "# test data\n2,2,3,3: 1 0 0 0 0 1\n",
    );
    let mut with_cat = args.to_vec();
    with_cat.extend(["--catalog", &cat]);
    let o = brieskorn(&with_cat, None);
    let err = stderr(&o);
    // (2,2,3,3) is now known; the next gap is reported against the given file.
    assert!(!err.contains("sub-tuple (2,2,3,3) "), "{err}");
    if o.status.code() == Some(4) {
        assert!(err.contains("extra.cat"), "{err}");
    }
}

#[test]
fn idempotent_reports() {
    let dir = tempfile::tempdir().unwrap();
    let triv = write(
        dir.path(),
        "triv.alg",
        "dim 1; unit 1; degrees 0\n0 0 : 1\n",
    );
    let o = brieskorn(
        &["idempotents", "--algebra", &triv, "--format", "tsv"],
        None,
    );
    assert_eq!(stdout(&o), "dim\tsize\tindex\n1\t2\t1\n\nelement\n0\n1\n");

    let o = brieskorn(
        &[
            "idempotents",
            "--algebra",
            &triv,
            "--power",
            "3",
            "--format",
            "tsv",
        ],
        None,
    );
    assert_eq!(
        stdout(&o),
        "i\tdim\tsize\tindex\n1\t1\t2\t1\n2\t2\t4\t2\n3\t3\t8\t4\n"
    );

    let bad = write(
        dir.path(),
        "bad.alg",
        "dim 2; unit 10; degrees 0 0\n0 0 : 10\n0 1 : 0x\n",
    );
    let o = brieskorn(&["idempotents", "--algebra", &bad], None);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 3"), "{}", stderr(&o));

    let o = brieskorn(&["idempotents", "--algebra", "/nonexistent/file"], None);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_modes() {
    let o = brieskorn(
        &["search", "--k", "9", "--bound", "18", "--format", "tsv"],
        None,
    );
    assert_eq!(stdout(&o), "k\ttuple\n9\t2,2,2,18x9\n");
    let o = brieskorn(
        &["search", "--minimal-k", "--bound", "200", "--format", "tsv"],
        None,
    );
    assert!(stdout(&o).starts_with("k\ttuple\n9\t"));
    assert!(stdout(&o).lines().skip(1).all(|l| l.starts_with("9\t")));
    let o = brieskorn(
        &["search", "--k", "3", "--bound", "10000", "--format", "tsv"],
        None,
    );
    assert_eq!(stdout(&o), "k\ttuple\n");
}

#[test]
fn output_is_deterministic() {
    let args = [
        "sh-bounds",
        "--tuple",
        "2,2,2,18x9",
        "--window",
        "0:25",
        "--format",
        "records",
    ];
    let first = brieskorn(&args, None).stdout;
    for _ in 0..3 {
        assert_eq!(brieskorn(&args, None).stdout, first);
    }
}

fn single_entry(dir: &Path) -> std::path::PathBuf {
    let entries: Vec<_> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "entry"))
        .collect();
    assert_eq!(entries.len(), 1, "{entries:?}");
    entries[0].clone()
}

#[test]
fn cache_hits_match_cold_runs_and_corruption_recomputes() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["spectrum", "--tuple", "18x9,2,2,2", "--pmax", "20"];
    let cold = brieskorn(&args, None);
    let first = brieskorn(&args, Some(dir.path()));
    assert_eq!(first.stdout, cold.stdout);
    assert!(!stderr(&first).contains("cache hit"));
    let entry = single_entry(dir.path());

    // Equivalent tuple spelling hits the same entry.
    let hit = brieskorn(
        &["spectrum", "--tuple", "2,2,2,18x9", "--pmax", "20"],
        Some(dir.path()),
    );
    assert!(stderr(&hit).contains("cache hit"), "{}", stderr(&hit));
    assert_eq!(hit.stdout, cold.stdout);

    // Flip a payload byte: checksum mismatch, recompute, entry repaired.
    let mut bytes = fs::read(&entry).unwrap();
    let last = bytes.len() - 2;
    bytes[last] ^= 0x01;
    fs::write(&entry, &bytes).unwrap();
    let again = brieskorn(&args, Some(dir.path()));
    assert!(!stderr(&again).contains("cache hit"));
    assert!(stderr(&again).contains("invalid cache entry"));
    assert_eq!(again.stdout, cold.stdout);
    let repaired = brieskorn(&args, Some(dir.path()));
    assert!(stderr(&repaired).contains("cache hit"));
    assert_eq!(repaired.stdout, cold.stdout);

    // A stale version stamp is a miss as well.
    let text = fs::read_to_string(&entry).unwrap();
    fs::write(&entry, text.replacen("version ", "version 0.0.0-old", 1)).unwrap();
    let stale = brieskorn(&args, Some(dir.path()));
    assert!(!stderr(&stale).contains("cache hit"));
    assert_eq!(stale.stdout, cold.stdout);
}

#[test]
fn cache_keeps_verdict_exit_codes_and_respects_no_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let args = ["adc", "--tuple", "2,2,2", "--cache", d];
    assert_eq!(brieskorn(&args, None).status.code(), Some(3));
    let hit = brieskorn(&args, None);
    assert!(stderr(&hit).contains("cache hit"));
    assert_eq!(hit.status.code(), Some(3));

    let other = tempfile::tempdir().unwrap();
    let o = brieskorn(
        &["adc", "--tuple", "2,2,2", "--no-cache"],
        Some(other.path()),
    );
    assert_eq!(o.status.code(), Some(3));
    assert_eq!(fs::read_dir(other.path()).unwrap().count(), 0);
}

#[test]
fn changed_input_files_change_the_key() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("cache");
    let alg = write(dir.path(), "r.alg", "dim 1; unit 1; degrees 0\n0 0 : 1\n");
    let a = brieskorn(&["idempotents", "--algebra", &alg], Some(&cache));
    write(
        dir.path(),
        "r.alg",
        "dim 2; unit 10; degrees 0 0\n0 0 : 10\n0 1 : 01\n1 1 : 01\n",
    );
    let b = brieskorn(&["idempotents", "--algebra", &alg], Some(&cache));
    assert!(!stderr(&b).contains("cache hit"));
    assert_ne!(a.stdout, b.stdout);
}
