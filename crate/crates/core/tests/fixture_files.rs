//! The JSON files under `fixtures/` are exactly what the constructors emit.
//! Set `SUPERTRIPLE_WRITE_FIXTURES=1` to regenerate them.

use std::path::PathBuf;

use supertriple::cohomology::{adjoint_representation, coboundary, cochain_space, cohomology_degree, Cochain};
use supertriple::fixtures::{abelian, broken, l2, l2_current, l2_semidirect, s11};
use supertriple::io::{
    load_deformation, load_nijenhuis, load_system, representation_to_json, system_to_json, trilinear_to_json,
    DeformationFile, DeformationTerm, NijenhuisFile, SystemRef,
};
use supertriple::linalg::rational::int;
use supertriple::{Delta, HomMap, Matrix, MultiLinearMap, TripleSystem};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn deformation_json(system: &str, terms: &[MultiLinearMap]) -> String {
    let file = DeformationFile {
        system: SystemRef::Path(system.into()),
        terms: terms
            .iter()
            .enumerate()
            .map(|(i, f)| DeformationTerm { order: i + 1, values: supertriple::io::trilinear_entries(f) })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).unwrap();
    s.push('\n');
    s
}

/// `(relative path, contents)` of every bundled file.
fn expected() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = Vec::new();
    let mut sys = |path: &str, t: &TripleSystem| out.push((path.into(), system_to_json(t)));
    sys("abelian1.json", &abelian(&[0], Delta::Plus));
    sys("abelian2.json", &abelian(&[0, 1], Delta::Plus));
    sys("abelian3.json", &abelian(&[0, 1, 1], Delta::Minus).with_name("abelian3"));
    sys("l2.json", &l2());
    sys("s11.json", &s11());
    sys("l2_current1.json", &l2_current());
    sys("l2_semidirect.json", &l2_semidirect());
    for (t, _) in broken() {
        sys(&format!("broken/{}.json", t.name()), &t);
    }

    let t = l2();
    let rep = adjoint_representation(&t);
    out.push(("l2_adjoint_rep.json".into(), representation_to_json(&rep)));

    // x ↦ y, y ↦ 0
    let n = HomMap::new(t.space(), Matrix::from_i64(&[&[0, 0], &[1, 0]]), 0).unwrap();
    let file = NijenhuisFile {
        system: SystemRef::Path("l2.json".into()),
        n: n.matrix().iter_rows().map(|r| supertriple::io::rationals_to_strings(r)).collect(),
    };
    out.push(("l2_nijenhuis.json".into(), serde_json::to_string_pretty(&file).unwrap() + "\n"));

    let zero = MultiLinearMap::zeros(3, 2, 2);
    out.push(("l2_null_deformation.json".into(), deformation_json("l2.json", &[zero.clone(), zero.clone()])));
    let bad = non_cocycle(&t);
    out.push(("l2_bad_deformation.json".into(), deformation_json("l2.json", &[bad])));

    // A cocycle outside B³, and the same class shifted by d¹φ.
    let h = cohomology_degree(&t, &rep, 3, 0).unwrap();
    let r = h.representatives[0].clone();
    let phi = Cochain::from_hom(&HomMap::new(t.space(), Matrix::from_i64(&[&[1, 2], &[0, -1]]), 0).unwrap());
    let shifted = r.sub(&coboundary(&t, &rep, &phi).unwrap()).unwrap();
    out.push(("l2_f1.json".into(), trilinear_to_json(&r)));
    out.push(("l2_f1_shifted.json".into(), trilinear_to_json(&shifted)));
    out.push(("l2_f1_zero.json".into(), trilinear_to_json(&zero)));

    let a = abelian(&[0, 1], Delta::Plus);
    let ha = cohomology_degree(&a, &adjoint_representation(&a), 3, 0).unwrap();
    out.push(("abelian2_f1.json".into(), trilinear_to_json(&ha.representatives[0])));
    out.push(("abelian2_f1_zero.json".into(), trilinear_to_json(&MultiLinearMap::zeros(3, 2, 2))));
    out
}

/// An even 3-cochain whose coboundary is nonzero.
fn non_cocycle(t: &TripleSystem) -> MultiLinearMap {
    let rep = adjoint_representation(t);
    cochain_space(t, t.space(), 3, 0)
        .unwrap()
        .basis_cochains()
        .into_iter()
        .find(|f| !coboundary(t, &rep, f).unwrap().is_zero())
        .expect("L2 has non-cocycles")
        .map
}

#[test]
fn fixture_files_match_constructors() {
    let write = std::env::var_os("SUPERTRIPLE_WRITE_FIXTURES").is_some();
    for (rel, contents) in expected() {
        let path = root().join(&rel);
        if write {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &contents).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{rel}: {e}"));
        assert_eq!(on_disk, contents, "{rel} is stale; regenerate with SUPERTRIPLE_WRITE_FIXTURES=1");
    }
}

#[test]
fn bundled_files_load() {
    assert_eq!(load_system(root().join("abelian2.json")).unwrap().dim(), 2);
    assert!(load_system(root().join("abelian2.json")).unwrap().is_abelian());
    assert_eq!(load_system(root().join("l2.json")).unwrap(), l2());
    let (t, n) = load_nijenhuis(root().join("l2_nijenhuis.json")).unwrap();
    assert_eq!(t, l2());
    assert_eq!(n.matrix()[(1, 0)], int(1));
    let fd = load_deformation(root().join("l2_null_deformation.json")).unwrap();
    assert_eq!(fd.order(), 2);
}
