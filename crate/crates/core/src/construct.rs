//! New systems from old: superalgebras and truncated current extensions.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg::rational::{self, Rational};
use crate::system::{Delta, SuperSpace, TripleSystem};
use crate::tensor::MultiLinearMap;

/// A binary superalgebra by structure constants: the value of `product`
/// on `(i, j)` is the coordinate vector of `[eᵢ, eⱼ]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Superalgebra {
    pub space: SuperSpace,
    pub delta: Delta,
    pub product: MultiLinearMap,
}

impl Superalgebra {
    pub fn new(parity: Vec<u8>, delta: Delta, product: MultiLinearMap) -> Result<Self> {
        let space = SuperSpace::new(parity)?;
        let n = space.dim();
        if product.arity() != 2 || product.in_dim() != n || product.out_dim() != n {
            return Err(Error::DimensionMismatch { expected: n.pow(3), found: product.coords().len() });
        }
        Ok(Self { space, delta, product })
    }

    /// Builds the full table from products `[eᵢ, eⱼ]` given for some
    /// ordered pairs, filling `[eⱼ, eᵢ] = −δ(−1)^{|eᵢ||eⱼ|}[eᵢ, eⱼ]`.
    /// Listing both orders of a pair is an error.
    pub fn from_generators(parity: Vec<u8>, delta: Delta, products: &[((usize, usize), Vec<(usize, Rational)>)]) -> Result<Self> {
        let space = SuperSpace::new(parity)?;
        let n = space.dim();
        let mut product = MultiLinearMap::zeros(2, n, n);
        let mut seen = std::collections::BTreeSet::new();
        for ((i, j), value) in products {
            let (i, j) = (*i, *j);
            for &x in [i, j].iter().chain(value.iter().map(|(l, _)| l)) {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, dim: n });
                }
            }
            if !seen.insert((i.min(j), i.max(j))) {
                return Err(Error::DuplicateEntry(format!("product ({i}, {j})")));
            }
            let neg_swap = !delta.is_minus() ^ rational::odd(space.parity(i) * space.parity(j));
            for (l, c) in value {
                product.value_mut(&[i, j])[*l] += c;
                if i != j {
                    let v = if neg_swap { -c } else { c.clone() };
                    product.value_mut(&[j, i])[*l] += v;
                }
            }
        }
        Ok(Self { space, delta, product })
    }
}

/// The triple product `[a, b, c] = [[a, b], c]` of a binary superalgebra.
///
/// The caller is responsible for the input being a δ-Jordan Lie
/// superalgebra; [`crate::axioms::verify_axioms`] certifies the output.
pub fn from_superalgebra(name: impl Into<String>, alg: &Superalgebra) -> Result<TripleSystem> {
    let n = alg.space.dim();
    let p = &alg.product;
    let mut bracket = MultiLinearMap::zeros(3, n, n);
    for i in 0..n {
        for j in 0..n {
            let ij = p.value(&[i, j]).to_vec();
            if rational::is_zero_vec(&ij) {
                continue;
            }
            for k in 0..n {
                let mut out = vec![Rational::zero(); n];
                let mut args = [0, k];
                p.accumulate_with_slot(&mut out, false, &mut args, 0, &ij);
                bracket.value_mut(&[i, j, k]).clone_from_slice(&out);
            }
        }
    }
    TripleSystem::new(name, alg.space.clone(), alg.delta, bracket)
}

/// `T ⊗ k[t] / (t^{maxdeg+1})`: basis `eₐ ⊗ tⁱ` for `0 ≤ i ≤ maxdeg`,
/// indexed `i·dim + a`, with `[a⊗tⁱ, b⊗tʲ, c⊗tᵏ] = [a,b,c]⊗t^{i+j+k}`
/// and brackets past the top degree set to zero.
pub fn current_extension(t: &TripleSystem, maxdeg: usize) -> TripleSystem {
    let n = t.dim();
    let levels = maxdeg + 1;
    let big = n * levels;
    let mut parity = Vec::with_capacity(big);
    for _ in 0..levels {
        parity.extend_from_slice(t.space().parities());
    }
    let space = SuperSpace::new(parity).expect("parities copied from a valid space");
    let mut bracket = MultiLinearMap::zeros(3, big, big);
    for (i, j, k) in (0..levels).flat_map(|i| (0..levels).flat_map(move |j| (0..levels).map(move |k| (i, j, k)))) {
        let target = i + j + k;
        if target > maxdeg {
            continue;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let v = t.bracket_basis(a, b, c);
                    if rational::is_zero_vec(v) {
                        continue;
                    }
                    let out = bracket.value_mut(&[i * n + a, j * n + b, k * n + c]);
                    for (l, x) in v.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                        out[target * n + l] = x.clone();
                    }
                }
            }
        }
    }
    let mut ext = TripleSystem::new(format!("{}[t]/t^{}", t.name(), levels), space, t.delta(), bracket)
        .expect("shape is consistent by construction");
    if let Some(names) = t.basis_names() {
        let names = (0..levels)
            .flat_map(|i| names.iter().map(move |s| if i == 0 { s.clone() } else { format!("{s}t{i}") }))
            .collect();
        ext = ext.with_basis_names(names).expect("one name per basis vector");
    }
    ext
}
