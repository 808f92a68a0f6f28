//! Family scan invariants.

use quatlat::analyze::{root_components, Classification};
use quatlat::lattice::construct_quartic;
use quatlat::scan::{scan_quadratic, scan_quartic, CatalogEntry, ScanItem, ScanOptions, SkipReason};

fn entries(items: &[ScanItem]) -> Vec<&CatalogEntry> {
    items
        .iter()
        .filter_map(|i| match i {
            ScanItem::Entry(e) => Some(e),
            ScanItem::Skipped(_) => None,
        })
        .collect()
}

fn untimed(jobs: usize) -> ScanOptions {
    ScanOptions { jobs, timing: false, ..ScanOptions::default() }
}

#[test]
fn emitted_entries_meet_their_class() {
    let quad = scan_quadratic(25, true, &untimed(0)).unwrap();
    let quart = scan_quartic(40, &untimed(0)).unwrap();
    for e in entries(&quad).into_iter().chain(entries(&quart)) {
        match e.classification {
            Classification::E8 => {
                assert_eq!((e.det.as_str(), e.even, e.min_norm, e.kissing), ("1", true, Some(2), Some(240)))
            }
            Classification::BarnesWall16 => {
                assert_eq!((e.det.as_str(), e.min_norm, e.kissing), ("256", Some(4), Some(4320)))
            }
            Classification::E8xE8 => {
                let g = construct_quartic(e.parameter).unwrap().lattice.gram();
                let comps = root_components(&g).unwrap();
                assert_eq!(comps.iter().map(|c| c.rank).collect::<Vec<_>>(), vec![8, 8], "m = {}", e.parameter);
            }
            other => panic!("unexpected class {other:?}"),
        }
    }
}

#[test]
fn scans_do_not_depend_on_parallelism() {
    assert_eq!(scan_quadratic(31, true, &untimed(1)).unwrap(), scan_quadratic(31, true, &untimed(3)).unwrap());
    assert_eq!(scan_quartic(40, &untimed(1)).unwrap(), scan_quartic(40, &untimed(4)).unwrap());
}

#[test]
fn items_are_in_parameter_order() {
    let items = scan_quartic(40, &untimed(0)).unwrap();
    let params: Vec<u64> = items
        .iter()
        .map(|i| match i {
            ScanItem::Entry(e) => e.parameter,
            ScanItem::Skipped(s) => s.parameter,
        })
        .collect();
    assert_eq!(params, (1..=40).collect::<Vec<_>>());
}

#[test]
fn no_twist_search_failures_up_to_40() {
    let items = scan_quartic(40, &untimed(0)).unwrap();
    for i in &items {
        if let ScanItem::Skipped(s) = i {
            assert!(
                !matches!(s.reason, SkipReason::TwistSearchFailed { .. } | SkipReason::VerificationFailed { .. }),
                "{s:?}"
            );
        }
    }
}
