//! Canonical tree monomials spanning the free binary operad.
//!
//! A generator with symmetry `Sym` or `Antisym` contributes one symbol to the
//! alphabet; a `Plain` generator contributes two, the symbol and its
//! transpose.  A monomial is a full binary tree whose internal vertices carry
//! symbols and whose leaves carry the labels `1..=n`, each once, normalized
//! so that at every vertex the child containing the smaller leaf sits on the
//! left.  Normalizing a swap costs a sign at an antisymmetric vertex and
//! toggles the symbol at a plain one.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{Rational, SparseRow};
use num_traits::Zero;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum Symmetry {
    Sym,
    Antisym,
    Plain,
}

impl Symmetry {
    pub fn keyword(self) -> &'static str {
        match self {
            Symmetry::Sym => "sym",
            Symmetry::Antisym => "antisym",
            Symmetry::Plain => "plain",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Generator {
    pub name: String,
    pub symmetry: Symmetry,
}

#[derive(Clone, Debug)]
pub struct SymbolInfo {
    pub generator: usize,
    pub transpose: u16,
    pub swap_sign: i8,
    pub is_primary: bool,
}

/// The symbol set generated by a list of binary generators.
#[derive(Clone, Debug)]
pub struct Alphabet {
    generators: Vec<Generator>,
    symbols: Vec<SymbolInfo>,
    primary_of_gen: Vec<u16>,
}

impl Alphabet {
    // Per-arity component sizes grow with the square of the symbol count, so
    // unboundedly many generators would make even arity 3 allocate wildly.
    const MAX_GENERATORS: usize = 12;

    pub fn new(generators: Vec<Generator>) -> Result<Alphabet> {
        if generators.len() > Self::MAX_GENERATORS {
            return Err(Error::Capacity {
                requested: generators.len(),
                ceiling: Self::MAX_GENERATORS,
                context: "alphabet generators".into(),
            });
        }
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Template(format!("generator {} declared twice", g.name)));
            }
        }
        let mut symbols = Vec::new();
        let mut primary_of_gen = Vec::new();
        for (gi, g) in generators.iter().enumerate() {
            let id = symbols.len() as u16;
            primary_of_gen.push(id);
            match g.symmetry {
                Symmetry::Sym => symbols.push(SymbolInfo {
                    generator: gi,
                    transpose: id,
                    swap_sign: 1,
                    is_primary: true,
                }),
                Symmetry::Antisym => symbols.push(SymbolInfo {
                    generator: gi,
                    transpose: id,
                    swap_sign: -1,
                    is_primary: true,
                }),
                Symmetry::Plain => {
                    symbols.push(SymbolInfo {
                        generator: gi,
                        transpose: id + 1,
                        swap_sign: 1,
                        is_primary: true,
                    });
                    symbols.push(SymbolInfo {
                        generator: gi,
                        transpose: id,
                        swap_sign: 1,
                        is_primary: false,
                    });
                }
            }
        }
        Ok(Alphabet { generators, symbols, primary_of_gen })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Number of symbols; equals the dimension of the generating space.
    pub fn dim(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbol(&self, s: u16) -> &SymbolInfo {
        &self.symbols[s as usize]
    }

    pub fn primary_symbol(&self, gen: usize) -> u16 {
        self.primary_of_gen[gen]
    }

    pub fn symbol_label(&self, s: u16) -> String {
        let info = &self.symbols[s as usize];
        let name = &self.generators[info.generator].name;
        if info.is_primary {
            name.clone()
        } else {
            format!("{name}'")
        }
    }

    /// Resolves the transpose of a generator's primary symbol as a signed
    /// symbol: identical for `sym`, negated for `antisym`, the partner symbol
    /// for `plain`.
    pub fn transposed_symbol(&self, gen: usize) -> (u16, i8) {
        let s = self.primary_of_gen[gen];
        let info = &self.symbols[s as usize];
        (info.transpose, info.swap_sign)
    }

    pub fn symmetry_signature(&self) -> Vec<(String, Symmetry)> {
        self.generators.iter().map(|g| (g.name.clone(), g.symmetry)).collect()
    }

    pub fn canonicalize(&self, t: &Tree) -> (i8, Tree) {
        match t {
            Tree::Leaf(_) => (1, t.clone()),
            Tree::Node(s, l, r) => {
                let (sl, cl) = self.canonicalize(l);
                let (sr, cr) = self.canonicalize(r);
                let mut sign = sl * sr;
                let (sym, a, b) = if cl.min_leaf() < cr.min_leaf() {
                    (*s, cl, cr)
                } else {
                    let info = &self.symbols[*s as usize];
                    sign *= info.swap_sign;
                    (info.transpose, cr, cl)
                };
                (sign, Tree::Node(sym, Box::new(a), Box::new(b)))
            }
        }
    }

    /// Relabels leaf `i` to `perm[i-1]` and renormalizes.  This is a left
    /// action: acting by `sigma` after `tau` equals acting by
    /// `compose(sigma, tau)`.
    pub fn act(&self, perm: &[u8], t: &Tree) -> (i8, Tree) {
        let relabeled = t.relabel(|i| perm[(i - 1) as usize]);
        self.canonicalize(&relabeled)
    }

    /// Partial composition: plugs `inner` into leaf `slot` of `outer`.
    /// Inner leaves shift onto `slot..slot+m-1`; outer leaves past `slot`
    /// shift up by `m - 1`.
    pub fn graft(&self, outer: &Tree, slot: u8, inner: &Tree) -> (i8, Tree) {
        let m = inner.arity() as u8;
        let shifted = inner.relabel(|k| k + slot - 1);
        let planted = outer.substitute(slot, &shifted, m);
        self.canonicalize(&planted)
    }

    pub fn render_tree(&self, t: &Tree) -> String {
        match t {
            Tree::Leaf(i) => format!("x{i}"),
            Tree::Node(s, l, r) => {
                let info = &self.symbols[*s as usize];
                let name = &self.generators[info.generator].name;
                if info.is_primary {
                    format!("{}({},{})", name, self.render_tree(l), self.render_tree(r))
                } else {
                    format!("{}({},{})", name, self.render_tree(r), self.render_tree(l))
                }
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Tree {
    Leaf(u8),
    Node(u16, Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn leaf(i: u8) -> Tree {
        Tree::Leaf(i)
    }

    pub fn node(s: u16, l: Tree, r: Tree) -> Tree {
        Tree::Node(s, Box::new(l), Box::new(r))
    }

    pub fn min_leaf(&self) -> u8 {
        match self {
            Tree::Leaf(i) => *i,
            Tree::Node(_, l, r) => l.min_leaf().min(r.min_leaf()),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Tree::Leaf(_) => 1,
            Tree::Node(_, l, r) => l.arity() + r.arity(),
        }
    }

    fn relabel(&self, f: impl Fn(u8) -> u8 + Copy) -> Tree {
        match self {
            Tree::Leaf(i) => Tree::Leaf(f(*i)),
            Tree::Node(s, l, r) => Tree::node(*s, l.relabel(f), r.relabel(f)),
        }
    }

    /// Replaces leaf `slot` with `inner` (already shifted) and bumps leaves
    /// past `slot` by `m - 1`.
    fn substitute(&self, slot: u8, inner: &Tree, m: u8) -> Tree {
        match self {
            Tree::Leaf(i) if *i == slot => inner.clone(),
            Tree::Leaf(i) if *i > slot => Tree::Leaf(i + m - 1),
            Tree::Leaf(i) => Tree::Leaf(*i),
            Tree::Node(s, l, r) => {
                Tree::node(*s, l.substitute(slot, inner, m), r.substitute(slot, inner, m))
            }
        }
    }
}

/// The arity-`n` component of the free operad: an indexed basis of canonical
/// tree monomials.
pub struct FreeComponent {
    arity: usize,
    basis: Vec<Tree>,
    index: HashMap<Tree, usize>,
}

impl FreeComponent {
    pub fn enumerate(alph: &Alphabet, arity: usize) -> FreeComponent {
        let labels: Vec<u8> = (1..=arity as u8).collect();
        let mut basis = trees_over(alph, &labels);
        basis.sort();
        let index = basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        FreeComponent { arity, basis, index }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn monomial(&self, i: usize) -> &Tree {
        &self.basis[i]
    }

    pub fn index_of(&self, t: &Tree) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Collapses a signed-term list into a sparse coordinate row.
    pub fn row_from_terms(&self, terms: &[(Rational, Tree)]) -> SparseRow {
        let mut entries: Vec<(u32, Rational)> = Vec::with_capacity(terms.len());
        for (c, t) in terms {
            let i = self
                .index_of(t)
                .unwrap_or_else(|| panic!("monomial outside component of arity {}", self.arity));
            entries.push((i as u32, c.clone()));
        }
        entries.sort_by_key(|e| e.0);
        let mut out: SparseRow = Vec::with_capacity(entries.len());
        for (i, c) in entries {
            match out.last_mut() {
                Some((j, v)) if *j == i => *v += c,
                _ => out.push((i, c)),
            }
        }
        out.retain(|(_, v)| !v.is_zero());
        out
    }

    /// Applies the leaf-relabeling action to a coordinate row.
    pub fn act_row(&self, alph: &Alphabet, perm: &[u8], row: &SparseRow) -> SparseRow {
        let terms: Vec<(Rational, Tree)> = row
            .iter()
            .map(|(i, c)| {
                let (sign, t) = alph.act(perm, &self.basis[*i as usize]);
                (c * Rational::from_integer(sign.into()), t)
            })
            .collect();
        self.row_from_terms(&terms)
    }
}

fn trees_over(alph: &Alphabet, labels: &[u8]) -> Vec<Tree> {
    if labels.len() == 1 {
        return vec![Tree::Leaf(labels[0])];
    }
    let first = labels[0];
    let rest = &labels[1..];
    let mut out = Vec::new();
    // the left child keeps the smallest label; the right child is nonempty
    for mask in 0..(1u32 << rest.len()) - 1 {
        let mut left = vec![first];
        let mut right = Vec::new();
        for (i, &lab) in rest.iter().enumerate() {
            if mask & (1 << i) != 0 {
                left.push(lab);
            } else {
                right.push(lab);
            }
        }
        let lt = trees_over(alph, &left);
        let rt = trees_over(alph, &right);
        for s in 0..alph.dim() as u16 {
            for l in &lt {
                for r in &rt {
                    out.push(Tree::node(s, l.clone(), r.clone()));
                }
            }
        }
    }
    out
}

/// All permutations of `1..=n` in lexicographic order, as image tables.
pub fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut cur: Vec<u8> = (1..=n as u8).collect();
    let mut out = vec![cur.clone()];
    while next_permutation(&mut cur) {
        out.push(cur.clone());
    }
    out
}

fn next_permutation(p: &mut [u8]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

pub fn perm_sign(p: &[u8]) -> i8 {
    let mut inversions = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(sigma tau)(i) = sigma(tau(i))`.
pub fn compose(sigma: &[u8], tau: &[u8]) -> Vec<u8> {
    tau.iter().map(|&i| sigma[(i - 1) as usize]).collect()
}
