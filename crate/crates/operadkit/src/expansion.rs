//! Arity-by-arity growth of the ideal generated by the arity-3 relations.
//!
//! The component of the ideal in arity n is spanned by two kinds of grafts of
//! the component in arity n-1: putting a fresh generator at the root with the
//! spare input on either side, and expanding one input of an old element into
//! a generator applied to two fresh inputs.  Growing one arity at a time keeps
//! every intermediate inside the span we already know, so each step is a pass
//! of sparse eliminations rather than a search.
//!
//! Saturation results are memoized process-wide, keyed by the structural
//! fingerprint of the presentation, so repeated queries (series checks,
//! duality evidence, quotient tables) pay for each component once.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{EchelonBuilder, SparseRow, Subspace};
use crate::presentations::Presentation;
use crate::trees::{FreeComponent, Tree};

/// Largest arity saturated without an explicit override.  Components grow as
/// (2n-3)!! * d^(n-1), so the default ceiling backs off for larger alphabets.
/// The OPERADKIT_MAX_ARITY environment variable replaces both defaults.
pub fn arity_ceiling(symbol_dim: usize) -> usize {
    if let Ok(s) = std::env::var("OPERADKIT_MAX_ARITY") {
        if let Ok(n) = s.trim().parse::<usize>() {
            return n.max(3);
        }
    }
    if symbol_dim <= 2 {
        6
    } else {
        5
    }
}

type CacheKey = (u64, usize);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<Subspace>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<Subspace>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Permutation sending the spare leaf n to position k, keeping the others in
/// order: used to move a root graft's fresh input into every slot.
fn spare_to_slot(n: usize, k: usize) -> Vec<u8> {
    let mut p = Vec::with_capacity(n);
    for i in 1..n {
        p.push(if i < k { i as u8 } else { (i + 1) as u8 });
    }
    p.push(k as u8);
    p
}

/// Permutation spreading a leaf pair {1,2} onto {j,k} (j < k) with the
/// remaining leaves order-preserving on the complement.
fn pair_to_slots(n: usize, j: usize, k: usize) -> Vec<u8> {
    let mut p = vec![j as u8, k as u8];
    for i in 1..=n {
        if i != j && i != k {
            p.push(i as u8);
        }
    }
    p
}

fn saturate_step(p: &Presentation, prev: &Subspace, n: usize) -> Subspace {
    let alph = &p.alphabet;
    let prev_comp = FreeComponent::enumerate(alph, n - 1);
    let comp = FreeComponent::enumerate(alph, n);
    let mut builder = EchelonBuilder::new(comp.dim());

    let top_perms: Vec<Vec<u8>> = (1..=n).map(|k| spare_to_slot(n, k)).collect();
    let mut bottom_perms = Vec::new();
    for j in 1..=n {
        for k in (j + 1)..=n {
            bottom_perms.push(pair_to_slots(n, j, k));
        }
    }

    for v in prev.basis() {
        for s in 0..alph.dim() as u16 {
            let pair = Tree::node(s, Tree::leaf(1), Tree::leaf(2));

            // Root graft: g(v, x_n), then walk the spare input over every slot.
            let rooted: Vec<_> = v
                .iter()
                .map(|(i, c)| {
                    let (sign, t) = alph.graft(&pair, 1, prev_comp.monomial(*i as usize));
                    (c * crate::linalg::rat_int(sign as i64), t)
                })
                .collect();
            let rooted = comp.row_from_terms(&rooted);
            for perm in &top_perms {
                builder.insert(comp.act_row(alph, perm, &rooted));
            }

            // Leaf expansion: replace input 1 of v by g(x_1, x_2), then spread
            // the pair over every two-element slot set.
            let expanded: Vec<_> = v
                .iter()
                .map(|(i, c)| {
                    let (sign, t) = alph.graft(prev_comp.monomial(*i as usize), 1, &pair);
                    (c * crate::linalg::rat_int(sign as i64), t)
                })
                .collect();
            let expanded = comp.row_from_terms(&expanded);
            for perm in &bottom_perms {
                builder.insert(comp.act_row(alph, perm, &expanded));
            }
        }
    }

    Subspace::from_echelon(builder)
}

/// The arity-n component of the ideal generated by the relations (n >= 3).
pub fn ideal(p: &Presentation, n: usize) -> Result<Arc<Subspace>> {
    if n < 3 {
        return Err(Error::DimensionMismatch(format!(
            "the relation ideal starts at arity 3, not {n}"
        )));
    }
    let ceiling = arity_ceiling(p.alphabet.dim());
    if n > ceiling {
        return Err(Error::Capacity {
            requested: n,
            ceiling,
            context: p.name.clone(),
        });
    }
    let key = (p.fingerprint(), n);
    if let Some(hit) = cache().lock().unwrap().get(&key) {
        return Ok(Arc::clone(hit));
    }
    let result = if n == 3 {
        Arc::new(p.relations.clone())
    } else {
        let prev = ideal(p, n - 1)?;
        Arc::new(saturate_step(p, &prev, n))
    };
    cache().lock().unwrap().insert(key, Arc::clone(&result));
    Ok(result)
}

/// Dimension of the quotient operad's arity-n component.
pub fn quotient_dim(p: &Presentation, n: usize) -> Result<usize> {
    match n {
        0 => Ok(0),
        1 => Ok(1),
        2 => Ok(p.alphabet.dim()),
        _ => {
            let ambient = FreeComponent::enumerate(&p.alphabet, n).dim();
            Ok(ambient - ideal(p, n)?.dim())
        }
    }
}

/// Quotient dimensions for arities 1..=n_max.
pub fn quotient_dims(p: &Presentation, n_max: usize) -> Result<Vec<usize>> {
    (1..=n_max).map(|n| quotient_dim(p, n)).collect()
}

/// Pointwise products of two quotients' dimensions, arities 1..=n_max.  The
/// arity-wise tensor of two operads has exactly these dimensions, so matching
/// them against a third presentation is the numerical shadow of exhibiting it
/// as such a tensor.
pub fn hadamard_dims(p: &Presentation, q: &Presentation, n_max: usize) -> Result<Vec<usize>> {
    let a = quotient_dims(p, n_max)?;
    let b = quotient_dims(q, n_max)?;
    Ok(a.iter().zip(&b).map(|(x, y)| x * y).collect())
}

/// Rank summary for one planar shape under the basis test below.
pub struct ShapeRank {
    pub shape: String,
    pub rank: usize,
}

pub struct ShapeBasisReport {
    pub arity: usize,
    pub quotient_dim: usize,
    pub shapes: Vec<ShapeRank>,
    pub pass: bool,
}

/// All planar binary trees over the consecutive labels lo..=hi.  Consecutive
/// blocks keep every subtree's minimum on the left, so the trees are already
/// in canonical form whatever the alphabet.
fn planar_shapes(lo: u8, hi: u8) -> Vec<Tree> {
    if lo == hi {
        return vec![Tree::leaf(lo)];
    }
    let mut out = Vec::new();
    for split in lo..hi {
        for l in planar_shapes(lo, split) {
            for r in planar_shapes(split + 1, hi) {
                out.push(Tree::node(0, l.clone(), r.clone()));
            }
        }
    }
    out
}

fn shape_label(t: &Tree) -> String {
    match t {
        Tree::Leaf(i) => format!("x{i}"),
        Tree::Node(_, l, r) => format!("({} {})", shape_label(l), shape_label(r)),
    }
}

/// Every way of writing generator symbols on the internal vertices of a shape.
fn decorations(t: &Tree, symbols: u16) -> Vec<Tree> {
    match t {
        Tree::Leaf(i) => vec![Tree::leaf(*i)],
        Tree::Node(_, l, r) => {
            let ls = decorations(l, symbols);
            let rs = decorations(r, symbols);
            let mut out = Vec::with_capacity(ls.len() * rs.len() * symbols as usize);
            for s in 0..symbols {
                for dl in &ls {
                    for dr in &rs {
                        out.push(Tree::node(s, dl.clone(), dr.clone()));
                    }
                }
            }
            out
        }
    }
}

/// For each planar shape of arity n, take the monomials carrying that shape
/// with identity leaf labels and measure the rank of their images in the
/// quotient.  A basis-sized rank for every shape is the combinatorial
/// footprint of the quotient being spanned shape by shape.
pub fn shape_basis_report(p: &Presentation, n: usize) -> Result<ShapeBasisReport> {
    let ideal = ideal(p, n)?;
    let comp = FreeComponent::enumerate(&p.alphabet, n);
    let quotient_dim = comp.dim() - ideal.dim();
    let symbols = p.alphabet.dim() as u16;

    let mut shapes = Vec::new();
    for shape in planar_shapes(1, n as u8) {
        let mut builder = EchelonBuilder::new(comp.dim());
        for t in decorations(&shape, symbols) {
            let idx = comp
                .index_of(&t)
                .expect("planar trees over consecutive labels are canonical");
            let unit: SparseRow = vec![(idx as u32, crate::linalg::rat_int(1))];
            builder.insert(ideal.residue(unit));
        }
        shapes.push(ShapeRank {
            shape: shape_label(&shape),
            rank: builder.rank(),
        });
    }

    let pass = shapes.iter().all(|s| s.rank == quotient_dim);
    Ok(ShapeBasisReport {
        arity: n,
        quotient_dim,
        shapes,
        pass,
    })
}
