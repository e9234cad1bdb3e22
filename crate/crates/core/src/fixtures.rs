//! Named example systems used by tests, benches and the CLI self-test.

use crate::axioms::Axiom;
use crate::cohomology::{adjoint_representation, semidirect_sum};
use crate::construct::{current_extension, from_superalgebra, Superalgebra};
use crate::linalg::rational::int;
use crate::system::{Delta, TripleSystem};

/// Abelian system with the given parities.
pub fn abelian(parity: &[u8], delta: Delta) -> TripleSystem {
    let name = format!("abelian{}", parity.len());
    TripleSystem::abelian(name, parity.to_vec(), delta).expect("parities are 0/1")
}

/// From the two-dimensional Lie algebra `[x, y] = y`, both even, `δ = 1`.
pub fn l2() -> TripleSystem {
    let alg = Superalgebra::from_generators(vec![0, 0], Delta::Plus, &[((0, 1), vec![(1, int(1))])])
        .expect("valid generator table");
    from_superalgebra("L2", &alg)
        .expect("shapes agree")
        .with_basis_names(vec!["x".into(), "y".into()])
        .expect("two names")
}

/// From the superalgebra on `e` (even), `f` (odd) with `[e, f] = f`, `δ = 1`.
pub fn s11() -> TripleSystem {
    let alg = Superalgebra::from_generators(vec![0, 1], Delta::Plus, &[((0, 1), vec![(1, int(1))])])
        .expect("valid generator table");
    from_superalgebra("S11", &alg)
        .expect("shapes agree")
        .with_basis_names(vec!["e".into(), "f".into()])
        .expect("two names")
}

/// Abelian systems of dimension 1 to 3 with mixed parities and both signs.
pub fn abelian_family() -> Vec<TripleSystem> {
    let parities: [&[u8]; 6] = [&[0], &[1], &[0, 1], &[1, 1], &[0, 0, 1], &[0, 1, 1]];
    let mut out = Vec::new();
    for p in parities {
        for d in [Delta::Plus, Delta::Minus] {
            let tag: String = p.iter().map(|x| x.to_string()).collect();
            out.push(abelian(p, d).with_name(format!("abelian{}_{tag}_{}", p.len(), if d.is_minus() { "dminus" } else { "dplus" })));
        }
    }
    out
}

/// `L2 ⊗ k[t]/(t²)`.
pub fn l2_current() -> TripleSystem {
    current_extension(&l2(), 1).with_name("L2_current1")
}

/// `L2` extended by its adjoint module.
pub fn l2_semidirect() -> TripleSystem {
    let t = l2();
    semidirect_sum(&t, &adjoint_representation(&t)).expect("adjoint is a representation").with_name("L2_semidirect_adjoint")
}

/// Every bundled valid system.
pub fn bundled() -> Vec<TripleSystem> {
    let mut out = abelian_family();
    out.extend([l2(), s11(), l2_current(), l2_semidirect()]);
    out
}

fn entries(name: &str, parity: Vec<u8>, delta: Delta, list: &[([usize; 3], usize, i64)]) -> TripleSystem {
    let e: Vec<_> = list.iter().map(|(a, l, c)| (*a, *l, int(*c))).collect();
    TripleSystem::from_entries(name, parity, delta, &e).expect("fixture indices in range")
}

/// Systems that each violate a specific identity, paired with the first
/// identity expected to fail.
pub fn broken() -> Vec<(TripleSystem, Axiom)> {
    vec![
        // [y,x,x] overwritten from y to −y.
        (entries("l2_skew_broken", vec![0, 0], Delta::Plus, &[([0, 1, 0], 1, -1), ([1, 0, 0], 1, -1)]), Axiom::SuperSkew),
        (l2().with_delta(Delta::Minus).with_name("l2_delta_flipped"), Axiom::SuperSkew),
        // [e,f,e] picks up an even component.
        (
            entries(
                "s11_grading_broken",
                vec![0, 1],
                Delta::Plus,
                &[([0, 1, 0], 1, -1), ([1, 0, 0], 1, 1), ([0, 1, 0], 0, 1), ([1, 0, 0], 0, -1)],
            ),
            Axiom::Grading,
        ),
        // [f,f,e] = f has degree 0 but lands in the odd part.
        (entries("odd_pair_grading", vec![0, 1], Delta::Plus, &[([1, 1, 0], 1, 1)]), Axiom::Grading),
        (entries("dim1_cyclic", vec![0], Delta::Minus, &[([0, 0, 0], 0, 1)]), Axiom::Cyclic),
        (entries("dim3_cyclic", vec![0, 0, 0], Delta::Plus, &[([0, 1, 2], 0, 1), ([1, 0, 2], 0, -1)]), Axiom::Cyclic),
        (entries("odd_cyclic", vec![1], Delta::Plus, &[([0, 0, 0], 0, 1)]), Axiom::Cyclic),
        (entries("dim2_fundamental", vec![0, 0], Delta::Plus, &[([0, 1, 0], 0, 1), ([1, 0, 0], 0, -1)]), Axiom::Fundamental),
    ]
}
