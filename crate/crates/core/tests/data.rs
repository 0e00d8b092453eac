use std::io::Write;

use sha2::{Digest, Sha256};
use tlg_core::data::{bank_waiting_times, ingest_csv, parse_csv, BANK_WAITING_TIMES_CSV};
use tlg_core::Error;

const FIXTURE_SHA256: &str = "64f4b27be88e6291b6ed528c0d247a48a9f613b69f578066c65cbc63c53282f5";

#[test]
fn fixture_checksum() {
    let digest = Sha256::digest(BANK_WAITING_TIMES_CSV.as_bytes());
    let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
    assert_eq!(hex, FIXTURE_SHA256);
}

#[test]
fn fixture_summary() {
    let d = bank_waiting_times();
    assert_eq!(d.n(), 100);
    assert_eq!(d.min(), 0.8);
    assert_eq!(d.max(), 38.5);
    // independently summed: 987.7
    assert!((d.mean() - 9.877).abs() < 1e-12);
    assert!(d.values().windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn fixture_file_on_disk_matches_bundled_copy() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/bank_waiting_times.csv");
    assert_eq!(ingest_csv(path).unwrap(), bank_waiting_times());
}

fn write_temp(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

#[test]
fn parse_error_cites_line() {
    let f = write_temp("value\n1.5\nabc\n2.0\n");
    match ingest_csv(f.path()) {
        Err(Error::Parse { line, .. }) => assert_eq!(line, 3),
        other => panic!("expected parse error, got {other:?}"),
    }
    assert!(matches!(parse_csv("1.0\n2.0\nabc\n"), Err(Error::Parse { line: 3, .. })));
}

#[test]
fn invalid_values() {
    assert!(matches!(parse_csv("1.0\n0\n"), Err(Error::Data(_))));
    assert!(matches!(parse_csv("1.0\n-2\n"), Err(Error::Data(_))));
    assert!(matches!(parse_csv("1.0\ninf\n"), Err(Error::Data(_))));
    assert!(matches!(parse_csv(""), Err(Error::Data(_))));
    assert!(matches!(parse_csv("header\n\n"), Err(Error::Data(_))));
    assert!(ingest_csv("/nonexistent/file.csv").is_err());
}

#[test]
fn comma_separated_rows() {
    let d = parse_csv("3.0, 1.0,2.0\n\n4.5\n").unwrap();
    assert_eq!(d.values(), &[1.0, 2.0, 3.0, 4.5]);
}
