//! Duality through the arity-3 pairing.
//!
//! The dual alphabet flips `sym` and `antisym` (the generating space is
//! dualized and twisted by the sign character) and keeps `plain` generators
//! plain.  Both alphabets then enumerate structurally identical monomial
//! bases, and the pairing is diagonal in that shared indexing: a monomial
//! pairs only with its namesake, with a sign depending on the tree shape and
//! on whether the vertex symbols are transposes.  The sign table is pinned by
//! the equivariance law checked in the tests: relabeling both sides by a
//! permutation scales the pairing by the permutation's sign.

use num_traits::Zero;

use crate::error::Result;
use crate::linalg::{Rational, SparseRow, Subspace};
use crate::presentations::Presentation;
use crate::series::{inversion_defect, Egf};
use crate::trees::{Alphabet, FreeComponent, Generator, Symmetry, Tree};

pub fn dual_name(name: &str) -> String {
    name.strip_suffix('!').map(str::to_string).unwrap_or_else(|| format!("{name}!"))
}

pub fn dual_alphabet(alph: &Alphabet) -> Result<Alphabet> {
    Alphabet::new(
        alph.generators()
            .iter()
            .map(|g| Generator {
                name: dual_name(&g.name),
                symmetry: match g.symmetry {
                    Symmetry::Sym => Symmetry::Antisym,
                    Symmetry::Antisym => Symmetry::Sym,
                    Symmetry::Plain => Symmetry::Plain,
                },
            })
            .collect(),
    )
}

/// +1 for the shape `(x1 x2) x3`, -1 for `(x1 x3) x2` and `x1 (x2 x3)`.
fn shape_sign(t: &Tree) -> i8 {
    match t {
        Tree::Node(_, l, r) => match (&**l, &**r) {
            (Tree::Node(..), Tree::Leaf(3)) => 1,
            (Tree::Node(..), Tree::Leaf(2)) => -1,
            (Tree::Leaf(1), Tree::Node(..)) => -1,
            _ => panic!("not a canonical arity-3 monomial"),
        },
        Tree::Leaf(_) => panic!("not a canonical arity-3 monomial"),
    }
}

/// Diagonal of the pairing matrix in the canonical basis: the dual monomial
/// with the same index pairs to this sign; all cross terms vanish.
pub fn pairing_diagonal(alph: &Alphabet, comp: &FreeComponent) -> Vec<i8> {
    (0..comp.dim())
        .map(|k| {
            let t = comp.monomial(k);
            let Tree::Node(root, l, r) = t else { unreachable!() };
            let inner = match (&**l, &**r) {
                (Tree::Node(s, ..), _) => *s,
                (_, Tree::Node(s, ..)) => *s,
                _ => panic!("not a canonical arity-3 monomial"),
            };
            let mut sign = shape_sign(t);
            if !alph.symbol(*root).is_primary {
                sign = -sign;
            }
            if !alph.symbol(inner).is_primary {
                sign = -sign;
            }
            sign
        })
        .collect()
}

/// Evaluates the pairing of a dual-side row against a primal-side row.
pub fn pair_rows(diag: &[i8], dual_row: &SparseRow, primal_row: &SparseRow) -> Rational {
    let mut acc = Rational::zero();
    let (mut i, mut j) = (0usize, 0usize);
    while i < dual_row.len() && j < primal_row.len() {
        let (a, b) = (dual_row[i].0, primal_row[j].0);
        if a == b {
            let d = Rational::from_integer(diag[a as usize].into());
            acc += &dual_row[i].1 * &primal_row[j].1 * d;
            i += 1;
            j += 1;
        } else if a < b {
            i += 1;
        } else {
            j += 1;
        }
    }
    acc
}

/// The dual presentation: relations are the annihilator of the primal
/// relations under the pairing.
pub fn dual(p: &Presentation) -> Result<Presentation> {
    let dalph = dual_alphabet(&p.alphabet)?;
    let comp = FreeComponent::enumerate(&p.alphabet, 3);
    debug_assert_eq!(comp.dim(), FreeComponent::enumerate(&dalph, 3).dim());
    let diag = pairing_diagonal(&p.alphabet, &comp);
    let scaled: Vec<SparseRow> = p
        .relations
        .basis()
        .iter()
        .map(|r| {
            r.iter()
                .map(|(k, c)| (*k, c * Rational::from_integer(diag[*k as usize].into())))
                .collect()
        })
        .collect();
    let relations = Subspace::from_sparse_rows(comp.dim(), scaled).complement();
    Ok(Presentation::from_relation_space(dual_name(&p.name), dalph, relations))
}

/// Side-by-side dimension growth of a presentation and its dual.
pub struct EvidenceReport {
    pub name: String,
    pub dual_name: String,
    pub primal_dims: Vec<usize>,
    pub dual_dims: Vec<usize>,
    /// First arity where the two dimension series fail the inversion
    /// identity, if any.  Orders up to 3 hold for every dual pair by
    /// construction, so a defect is always at arity 4 or beyond.
    pub first_defect: Option<usize>,
}

impl EvidenceReport {
    pub fn pass(&self) -> bool {
        self.first_defect.is_none()
    }
}

/// Deepest arity the evidence run saturates by default; the growth of the
/// free components makes one extra arity a factor of roughly 2d more work.
pub fn evidence_ceiling(symbol_dim: usize) -> usize {
    if symbol_dim <= 2 {
        5
    } else {
        4
    }
}

/// Saturates a presentation and its dual through arity n_max and tests the
/// series inversion identity between the two dimension tables.  Passing is
/// necessary for the pair to be a dual pair of quotients with the expected
/// homological behavior; it is evidence, not a proof.
pub fn koszul_evidence(p: &Presentation, n_max: usize) -> Result<EvidenceReport> {
    let d = dual(p)?;
    let primal_dims = crate::expansion::quotient_dims(p, n_max)?;
    let dual_dims = crate::expansion::quotient_dims(&d, n_max)?;
    let f = Egf::from_dims(&primal_dims.iter().map(|&x| x as u64).collect::<Vec<_>>());
    let g = Egf::from_dims(&dual_dims.iter().map(|&x| x as u64).collect::<Vec<_>>());
    Ok(EvidenceReport {
        name: p.name.clone(),
        dual_name: d.name.clone(),
        primal_dims,
        dual_dims,
        first_defect: inversion_defect(&f, &g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentations::{catalog, catalog_get, match_catalog};
    use crate::trees::{all_permutations, perm_sign};

    #[test]
    fn dual_names_toggle() {
        assert_eq!(dual_name("sLeib"), "sLeib!");
        assert_eq!(dual_name("sLeib!"), "sLeib");
    }

    #[test]
    fn pairing_is_equivariant_with_sign() {
        let alph = Alphabet::new(vec![
            Generator { name: "b".into(), symmetry: Symmetry::Antisym },
            Generator { name: "s".into(), symmetry: Symmetry::Sym },
            Generator { name: "m".into(), symmetry: Symmetry::Plain },
        ])
        .unwrap();
        let dalph = dual_alphabet(&alph).unwrap();
        let comp = FreeComponent::enumerate(&alph, 3);
        let dcomp = FreeComponent::enumerate(&dalph, 3);
        assert_eq!(comp.dim(), dcomp.dim());
        let diag = pairing_diagonal(&alph, &comp);
        let one = Rational::from_integer(1.into());
        for sigma in &all_permutations(3) {
            let sgn = Rational::from_integer(perm_sign(sigma).into());
            for i in 0..dcomp.dim() {
                let ei: SparseRow = vec![(i as u32, one.clone())];
                let moved_dual = dcomp.act_row(&dalph, sigma, &ei);
                for j in 0..comp.dim() {
                    let ej: SparseRow = vec![(j as u32, one.clone())];
                    let moved_primal = comp.act_row(&alph, sigma, &ej);
                    let lhs = pair_rows(&diag, &moved_dual, &moved_primal);
                    let rhs = if i == j {
                        &sgn * Rational::from_integer(diag[i].into())
                    } else {
                        Rational::zero()
                    };
                    assert_eq!(lhs, rhs, "sigma={sigma:?} i={i} j={j}");
                }
            }
        }
    }

    #[test]
    fn duality_table() {
        let pairs = [
            ("Lie", "Com"),
            ("Com", "Lie"),
            ("Ass", "Ass"),
            ("lLeib", "lZinb"),
            ("rLeib", "rZinb"),
            ("sLeib", "ComAdm"),
            ("ComAdm", "sLeib"),
            ("sDiAss", "AssAdm"),
            ("sPerm", "LieAdm"),
            ("PreLie", "lPerm"),
            ("lPerm", "PreLie"),
            ("DiAss", "Dend"),
        ];
        for (a, b) in pairs {
            let d = dual(catalog_get(a).unwrap()).unwrap();
            let expect = catalog_get(b).unwrap();
            assert!(d.structure_eq(expect), "dual of {a} should be {b}");
            assert_eq!(match_catalog(&d).map(|p| p.name.as_str()), Some(b), "{a}");
        }
    }

    #[test]
    fn dual_is_an_involution_on_the_whole_catalog() {
        for p in catalog() {
            let dd = dual(&dual(p).unwrap()).unwrap();
            assert!(dd.structure_eq(p), "double dual of {}", p.name);
            assert_eq!(dd.name, p.name);
        }
    }

    #[test]
    fn evidence_passes_where_duality_is_established() {
        for name in ["Lie", "Com", "Ass", "sLeib", "sPerm", "lLeib", "lPerm"] {
            let p = catalog_get(name).unwrap();
            let rep = koszul_evidence(p, evidence_ceiling(p.alphabet.dim())).unwrap();
            assert!(rep.pass(), "{name}: defect at {:?}", rep.first_defect);
        }
        for name in ["sDiAss", "DiAss"] {
            let p = catalog_get(name).unwrap();
            let rep = koszul_evidence(p, evidence_ceiling(p.alphabet.dim())).unwrap();
            assert_eq!(rep.primal_dims.len(), 4);
            assert!(rep.pass(), "{name}: defect at {:?}", rep.first_defect);
        }
    }

    #[test]
    fn evidence_rejects_a_damaged_presentation() {
        // Dropping one of the ten relation rows leaves quotients growing as
        // 1,2,3,8,27 against a dual growing as 1,2,9,68,663.  Arities up to 3
        // satisfy the inversion identity automatically, order 4 happens to
        // balance for this particular damage, and order 5 breaks.
        let sleib = catalog_get("sLeib").unwrap();
        let rows: Vec<_> = sleib.relations.basis()[..9].to_vec();
        let damaged = Presentation::from_relation_space(
            "sLeib-damaged".to_string(),
            sleib.alphabet.clone(),
            Subspace::from_sparse_rows(sleib.ambient_dim3(), rows),
        );
        assert_eq!(damaged.relations.dim(), 9);
        let rep = koszul_evidence(&damaged, 5).unwrap();
        assert_eq!(rep.primal_dims, [1, 2, 3, 8, 27]);
        assert_eq!(rep.first_defect, Some(5));
    }
}
