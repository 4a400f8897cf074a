use std::path::PathBuf;

use sigma_core::corpus::{file_stem, load_dir, table1};
use sigma_core::spec_file::GroupSpec;
use sigma_core::Caps;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/corpus")
}

#[test]
fn files_round_trip() {
    let specs = load_dir(dir()).unwrap();
    assert!(specs.len() >= 97);
    for s in &specs {
        let again = GroupSpec::parse(&s.to_string()).unwrap();
        assert_eq!(&again, s, "{}", s.name);
    }
}

#[test]
fn shipped_table_matches_builders() {
    let caps = Caps::default();
    let shipped = load_dir(dir()).unwrap();
    for want in table1().unwrap() {
        let got = shipped
            .iter()
            .find(|s| file_stem(&s.name) == file_stem(&want.name))
            .unwrap_or_else(|| panic!("{} missing", want.name));
        assert_eq!(got.generators, want.generators, "{}", want.name);
        assert_eq!(got.expected_sigma, want.expected_sigma, "{}", want.name);
        let g = got.build(&caps).unwrap();
        assert_eq!(g.order(), want.build(&caps).unwrap().order());
    }
}

#[test]
fn m11_maximal_class_sizes() {
    let caps = Caps::default();
    let s = load_dir(dir())
        .unwrap()
        .into_iter()
        .find(|s| s.name == "M11")
        .unwrap();
    let g = s.build(&caps).unwrap();
    assert_eq!(g.order(), 7920);
    let ms: Vec<_> = s
        .maximal_subgroups
        .as_ref()
        .unwrap()
        .iter()
        .map(|gens| g.subgroup_from_perms(gens).unwrap())
        .collect();
    let mut orders: Vec<usize> = ms.iter().map(|m| m.order).collect();
    orders.sort_unstable();
    orders.dedup();
    assert_eq!(orders, vec![48, 120, 144, 660, 720]);
    let count = |o: usize| ms.iter().filter(|m| m.order == o).count();
    assert_eq!(
        [count(720), count(660), count(144), count(120), count(48)],
        [11, 12, 55, 66, 165]
    );
    for (i, a) in ms.iter().enumerate() {
        for b in &ms[i + 1..] {
            assert_ne!(a.members, b.members);
        }
    }
}
