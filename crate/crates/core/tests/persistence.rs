use std::path::PathBuf;

use qpi_core::{Error, FactorRef, Index};

fn scratch(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("qpi-{}-{name}", std::process::id()))
}

#[test]
fn file_round_trip_gives_identical_answers() {
    let s: Vec<u8> = (0..700u32)
        .map(|x| if (x * x + 3 * x) % 7 < 3 { b'a' } else { b'b' })
        .collect();
    let idx = Index::build(s).unwrap();
    let path = scratch("round-trip.qpi");
    idx.save(&path).unwrap();
    let back = Index::load(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    for i in (1..=700).step_by(13) {
        for j in (i..=700).step_by(17) {
            let f = FactorRef::new(i, j);
            assert_eq!(back.min_cover(f).unwrap(), idx.min_cover(f).unwrap());
            assert_eq!(back.all_covers(f).unwrap(), idx.all_covers(f).unwrap());
            assert_eq!(back.borders(f).unwrap(), idx.borders(f).unwrap());
        }
    }
    assert_eq!(back.runs().records(), idx.runs().records());
}

#[test]
fn missing_file_is_an_io_error() {
    let err = Index::load(scratch("does-not-exist")).unwrap_err();
    assert!(matches!(err, Error::Io(_)));
}

#[test]
fn non_index_file_is_rejected() {
    let path = scratch("garbage.qpi");
    std::fs::write(&path, b"not an index at all").unwrap();
    let err = Index::load(&path).unwrap_err();
    std::fs::remove_file(&path).unwrap();
    assert!(matches!(err, Error::Format(_)));
}
