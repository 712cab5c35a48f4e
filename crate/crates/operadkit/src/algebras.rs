//! Finite-dimensional algebras with exact rational structure constants.
//!
//! An algebra here is a basis plus one multiplication table per named binary
//! operation.  Tables are stored sparsely; the interchange format is JSON
//! with every coefficient written as an exact rational string.  On top of the
//! raw tables sit identity checking against a presentation, free
//! constructions truncated by degree, derived operations, and quotients by
//! operation-generated ideals.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{
    dense_to_sparse, format_rational, invert, parse_rational, rat, rat_int, EchelonBuilder,
    MatrixQ, Rational, SparseRow, Subspace,
};
use crate::presentations::Presentation;
use crate::trees::{FreeComponent, Tree};

/// Operation names bound to the generator names of a presentation.  Missing
/// entries default to the generator name itself.
pub type Binding = BTreeMap<String, String>;

#[derive(Clone)]
pub struct Algebra {
    pub dim: usize,
    pub basis: Vec<String>,
    /// ops[name][i][j] = coordinates of e_i * e_j, sparse over the basis.
    pub ops: BTreeMap<String, Vec<Vec<SparseRow>>>,
}

fn zero_table(dim: usize) -> Vec<Vec<SparseRow>> {
    vec![vec![Vec::new(); dim]; dim]
}

impl Algebra {
    pub fn new(dim: usize, basis: Vec<String>) -> Algebra {
        Algebra {
            dim,
            basis,
            ops: BTreeMap::new(),
        }
    }

    pub fn with_default_basis(dim: usize) -> Algebra {
        Algebra::new(dim, (0..dim).map(|i| format!("e{i}")).collect())
    }

    pub fn op(&self, name: &str) -> Result<&Vec<Vec<SparseRow>>> {
        self.ops
            .get(name)
            .ok_or_else(|| Error::MissingOperation(name.to_string()))
    }

    pub fn set_entry(&mut self, op: &str, i: usize, j: usize, value: SparseRow) {
        self.ops
            .entry(op.to_string())
            .or_insert_with(|| zero_table(self.dim))
            [i][j] = value;
    }

    /// e_i * e_j under the named operation, as a dense vector.
    pub fn product_of_basis(&self, op: &str, i: usize, j: usize) -> Result<Vec<Rational>> {
        let table = self.op(op)?;
        let mut out = vec![Rational::zero(); self.dim];
        for (k, c) in &table[i][j] {
            out[*k as usize] = c.clone();
        }
        Ok(out)
    }

    /// Bilinear extension of the named operation to sparse vectors.
    pub fn multiply_sparse(&self, op: &str, u: &SparseRow, v: &SparseRow) -> Result<SparseRow> {
        let table = self.op(op)?;
        let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
        for (i, ci) in u {
            for (j, cj) in v {
                let scale = ci * cj;
                for (k, ck) in &table[*i as usize][*j as usize] {
                    *acc.entry(*k).or_insert_with(Rational::zero) += &scale * ck;
                }
            }
        }
        Ok(acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    /// Bilinear extension of the named operation to dense vectors.
    pub fn multiply(&self, op: &str, u: &[Rational], v: &[Rational]) -> Result<Vec<Rational>> {
        let table = self.op(op)?;
        let mut out = vec![Rational::zero(); self.dim];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                let scale = ui * vj;
                for (k, c) in &table[i][j] {
                    out[*k as usize] += &scale * c;
                }
            }
        }
        Ok(out)
    }

    pub fn unit_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = rat_int(1);
        v
    }
}

/// Parses the JSON interchange format:
/// {"dim": n, "basis": [names], "ops": {"mul": [[[coeffs]]]}} where each
/// coefficient is a rational string like "-3/2" or a plain integer.  The
/// basis is optional; tables must be dim x dim x dim.
pub fn parse_algebra(src: &str) -> Result<Algebra> {
    let v: Value = serde_json::from_str(src)
        .map_err(|e| Error::AlgebraFormat(format!("invalid JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::AlgebraFormat("top level must be an object".into()))?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::AlgebraFormat("missing or bad \"dim\"".into()))? as usize;
    if dim > 4096 {
        return Err(Error::AlgebraFormat(format!("dimension {dim} is too large")));
    }
    let basis = match obj.get("basis") {
        None => (0..dim).map(|i| format!("e{i}")).collect(),
        Some(Value::Array(items)) => {
            if items.len() != dim {
                return Err(Error::AlgebraFormat(format!(
                    "basis lists {} names for dimension {dim}",
                    items.len()
                )));
            }
            items
                .iter()
                .map(|x| {
                    x.as_str()
                        .map(str::to_string)
                        .ok_or_else(|| Error::AlgebraFormat("basis names must be strings".into()))
                })
                .collect::<Result<Vec<_>>>()?
        }
        Some(_) => return Err(Error::AlgebraFormat("\"basis\" must be an array".into())),
    };
    let mut alg = Algebra::new(dim, basis);
    let ops = obj
        .get("ops")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::AlgebraFormat("missing \"ops\" object".into()))?;
    for (name, table) in ops {
        let rows = table
            .as_array()
            .filter(|r| r.len() == dim)
            .ok_or_else(|| {
                Error::AlgebraFormat(format!("operation {name} is not a {dim}-row array"))
            })?;
        // rows are validated before their cells are allocated, so memory
        // stays proportional to the input text
        let mut parsed = Vec::with_capacity(dim);
        for (i, row) in rows.iter().enumerate() {
            let cells = row.as_array().filter(|r| r.len() == dim).ok_or_else(|| {
                Error::AlgebraFormat(format!("operation {name} row {i} is not {dim} cells"))
            })?;
            let mut parsed_row = Vec::with_capacity(dim);
            for (j, cell) in cells.iter().enumerate() {
                let coords = cell.as_array().filter(|r| r.len() == dim).ok_or_else(|| {
                    Error::AlgebraFormat(format!(
                        "operation {name} entry ({i},{j}) is not a {dim}-vector"
                    ))
                })?;
                let mut sparse = Vec::new();
                for (k, c) in coords.iter().enumerate() {
                    let r = json_rational(c)?;
                    if !r.is_zero() {
                        sparse.push((k as u32, r));
                    }
                }
                parsed_row.push(sparse);
            }
            parsed.push(parsed_row);
        }
        alg.ops.insert(name.clone(), parsed);
    }
    Ok(alg)
}

fn json_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => n
            .as_i64()
            .map(rat_int)
            .ok_or_else(|| Error::BadNumber(n.to_string())),
        other => Err(Error::AlgebraFormat(format!(
            "coefficients must be rational strings or integers, got {other}"
        ))),
    }
}

pub fn algebra_to_json(alg: &Algebra) -> String {
    let mut ops = Map::new();
    for (name, table) in &alg.ops {
        let rows: Vec<Value> = (0..alg.dim)
            .map(|i| {
                let cells: Vec<Value> = (0..alg.dim)
                    .map(|j| {
                        let mut dense = vec!["0".to_string(); alg.dim];
                        for (k, c) in &table[i][j] {
                            dense[*k as usize] = format_rational(c);
                        }
                        Value::Array(dense.into_iter().map(Value::String).collect())
                    })
                    .collect();
                Value::Array(cells)
            })
            .collect();
        ops.insert(name.clone(), Value::Array(rows));
    }
    let doc = json!({
        "dim": alg.dim,
        "basis": alg.basis,
        "ops": Value::Object(ops),
    });
    serde_json::to_string_pretty(&doc).expect("serializing an algebra cannot fail")
}

/// Evaluates a tree monomial on argument vectors, leaf i taking args[i-1].
/// A non-primary symbol applies its generator's operation with the arguments
/// swapped.
pub fn eval_tree(
    alg: &Algebra,
    p: &Presentation,
    bind: &Binding,
    t: &Tree,
    args: &[SparseRow],
) -> Result<SparseRow> {
    match t {
        Tree::Leaf(i) => Ok(args[*i as usize - 1].clone()),
        Tree::Node(s, l, r) => {
            let lv = eval_tree(alg, p, bind, l, args)?;
            let rv = eval_tree(alg, p, bind, r, args)?;
            let info = p.alphabet.symbol(*s);
            let gen = &p.alphabet.generators()[info.generator].name;
            let op = bind.get(gen).map(String::as_str).unwrap_or(gen);
            if info.is_primary {
                alg.multiply_sparse(op, &lv, &rv)
            } else {
                alg.multiply_sparse(op, &rv, &lv)
            }
        }
    }
}

pub struct IdentityReport {
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Checks that every bound operation has the symmetry its generator declares
/// and that every relation vanishes on all basis triples.
pub fn check_identities(
    alg: &Algebra,
    p: &Presentation,
    bind: &Binding,
) -> Result<IdentityReport> {
    let mut failures = Vec::new();
    for gen in p.alphabet.generators() {
        let op = bind.get(&gen.name).map(String::as_str).unwrap_or(&gen.name);
        let table = alg.op(op)?;
        let sign = match gen.symmetry {
            crate::trees::Symmetry::Sym => 1,
            crate::trees::Symmetry::Antisym => -1,
            crate::trees::Symmetry::Plain => 0,
        };
        if sign != 0 {
            'sym: for i in 0..alg.dim {
                for j in 0..alg.dim {
                    let forward = &table[i][j];
                    let mut backward: SparseRow = table[j][i]
                        .iter()
                        .map(|(k, c)| (*k, c * rat_int(sign)))
                        .collect();
                    backward.retain(|(_, c)| !c.is_zero());
                    if *forward != backward {
                        failures.push(format!(
                            "operation {op} is not {} at ({}, {})",
                            if sign == 1 { "symmetric" } else { "antisymmetric" },
                            alg.basis[i],
                            alg.basis[j],
                        ));
                        break 'sym;
                    }
                }
            }
        }
    }

    let comp = FreeComponent::enumerate(&p.alphabet, 3);
    let rows = p.relations.basis();
    if !rows.is_empty() && alg.dim > 0 {
        'triples: for i in 0..alg.dim {
            for j in 0..alg.dim {
                for k in 0..alg.dim {
                    let args = [
                        vec![(i as u32, rat_int(1))],
                        vec![(j as u32, rat_int(1))],
                        vec![(k as u32, rat_int(1))],
                    ];
                    let mut values: HashMapLite = HashMapLite::new(comp.dim());
                    for row in rows {
                        let mut acc: BTreeMap<u32, Rational> = BTreeMap::new();
                        for (idx, c) in row {
                            let val =
                                values.get_or_compute(*idx as usize, || {
                                    eval_tree(alg, p, bind, comp.monomial(*idx as usize), &args)
                                })?;
                            for (slot, x) in val {
                                *acc.entry(*slot).or_insert_with(Rational::zero) += c * x;
                            }
                        }
                        if acc.values().any(|x| !x.is_zero()) {
                            failures.push(format!(
                                "a relation fails on ({}, {}, {})",
                                alg.basis[i], alg.basis[j], alg.basis[k]
                            ));
                            if failures.len() >= 5 {
                                break 'triples;
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(IdentityReport {
        ok: failures.is_empty(),
        failures,
    })
}

/// Per-triple memo of evaluated monomials, plain vector indexed by monomial.
struct HashMapLite {
    slots: Vec<Option<SparseRow>>,
}

impl HashMapLite {
    fn new(n: usize) -> Self {
        HashMapLite {
            slots: vec![None; n],
        }
    }

    fn get_or_compute(
        &mut self,
        idx: usize,
        f: impl FnOnce() -> Result<SparseRow>,
    ) -> Result<&SparseRow> {
        if self.slots[idx].is_none() {
            self.slots[idx] = Some(f()?);
        }
        Ok(self.slots[idx].as_ref().unwrap())
    }
}

/// Single-operation presentations used by the type checker where the catalog
/// form is polarized into a pair of generators.
const SINGLE_OP_SRC: &str = r#"
operad sLeib {
  gen mul plain
  rel mul(x1,mul(x2,x3)) - mul(mul(x1,x2),x3) - mul(x2,mul(x1,x3))
  rel mul(mul(x1,x2),x3) - mul(x1,mul(x2,x3)) - mul(mul(x1,x3),x2)
}

operad ComAdm {
  gen mul plain
  rel mul(mul(x1,x2),x3) + mul(mul(x2,x1),x3) + mul(x3,mul(x1,x2)) + mul(x3,mul(x2,x1)) - mul(x1,mul(x2,x3)) - mul(x1,mul(x3,x2)) - mul(mul(x2,x3),x1) - mul(mul(x3,x2),x1)
}
"#;

fn single_op_types() -> &'static [Presentation] {
    use std::sync::OnceLock;
    static TYPES: OnceLock<Vec<Presentation>> = OnceLock::new();
    TYPES.get_or_init(|| {
        crate::dsl::parse_operads(SINGLE_OP_SRC)
            .expect("built-in type sources parse")
            .into_iter()
            .map(|p| Presentation::from_parsed(p).expect("built-in types are well-formed"))
            .collect()
    })
}

/// Resolves a type name for identity checking.  sLeib and ComAdm mean the
/// single-operation laws; the polarized two-generator catalog forms are
/// reachable as sLeibPolar and ComAdmPolar.
pub fn check_type(name: &str) -> Result<&'static Presentation> {
    match name {
        "sLeib" | "ComAdm" => Ok(single_op_types()
            .iter()
            .find(|p| p.name == name)
            .expect("single-op types exist")),
        "sLeibPolar" => crate::presentations::catalog_get("sLeib"),
        "ComAdmPolar" => crate::presentations::catalog_get("ComAdm"),
        other => crate::presentations::catalog_get(other),
    }
}

/// Parses "gen=op,gen=op" binding syntax.
pub fn parse_binding(s: &str) -> Result<Binding> {
    let mut bind = Binding::new();
    for piece in s.split(',').filter(|p| !p.trim().is_empty()) {
        let (gen, op) = piece.split_once('=').ok_or_else(|| Error::AlgebraFormat(
            format!("binding {piece:?} is not gen=op"),
        ))?;
        bind.insert(gen.trim().to_string(), op.trim().to_string());
    }
    Ok(bind)
}

// ---------------------------------------------------------------------------
// Free constructions, truncated by total degree.

pub struct FreeAlgebra {
    pub algebra: Algebra,
    /// Basis indices of the degree-one generators.
    pub generators: Vec<usize>,
}

fn gen_name(i: usize) -> String {
    // a, b, ..., z, g26, g27, ...
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("g{i}")
    }
}

fn guard_free(k: usize, degree: usize, dim: usize) -> Result<()> {
    if k == 0 || degree == 0 {
        return Err(Error::DimensionMismatch(
            "free algebras need at least one generator and degree one".into(),
        ));
    }
    if dim > 4096 {
        return Err(Error::Capacity {
            requested: dim,
            ceiling: 4096,
            context: format!("free algebra on {k} generators through degree {degree}"),
        });
    }
    Ok(())
}

type Word = Vec<u8>;

/// Tensor-algebra element: words with rational coefficients, lex-ordered.
type TensorElt = BTreeMap<Word, Rational>;

fn is_lyndon(w: &[u8]) -> bool {
    // strictly smaller than all proper rotations
    (1..w.len()).all(|i| {
        let rotated = w[i..].iter().chain(&w[..i]);
        w.iter().lt(rotated)
    })
}

fn lyndon_words(k: usize, max_len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    // Duval's generation in lex order
    let mut w: Word = vec![0];
    loop {
        if w.len() <= max_len {
            out.push(w.clone());
        }
        let n = w.len();
        let mut t = Vec::with_capacity(max_len);
        while t.len() < max_len {
            t.push(w[t.len() % n]);
        }
        w = t;
        while let Some(&last) = w.last() {
            if last as usize == k - 1 {
                w.pop();
            } else {
                break;
            }
        }
        match w.last_mut() {
            None => break,
            Some(last) => *last += 1,
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Standard factorization bracketing of a Lyndon word, expanded in the
/// tensor algebra.
fn lyndon_expansion(w: &[u8], memo: &mut BTreeMap<Word, TensorElt>) -> TensorElt {
    if let Some(hit) = memo.get(w) {
        return hit.clone();
    }
    let elt = if w.len() == 1 {
        let mut m = TensorElt::new();
        m.insert(w.to_vec(), rat_int(1));
        m
    } else {
        // longest proper Lyndon suffix gives the standard factorization
        let split = (1..w.len())
            .find(|&i| is_lyndon(&w[i..]))
            .expect("every Lyndon word of length > 1 factors");
        let left = lyndon_expansion(&w[..split], memo);
        let right = lyndon_expansion(&w[split..], memo);
        tensor_commutator(&left, &right)
    };
    memo.insert(w.to_vec(), elt.clone());
    elt
}

fn tensor_concat(a: &TensorElt, b: &TensorElt) -> TensorElt {
    let mut out = TensorElt::new();
    for (u, cu) in a {
        for (v, cv) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            let e = out.entry(w).or_insert_with(Rational::zero);
            *e += cu * cv;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn tensor_commutator(a: &TensorElt, b: &TensorElt) -> TensorElt {
    let mut out = tensor_concat(a, b);
    for (w, c) in tensor_concat(b, a) {
        let e = out.entry(w).or_insert_with(Rational::zero);
        *e -= c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Rewrites a Lie element of the tensor algebra in the Lyndon basis by
/// repeatedly stripping the lex-least word, which is always Lyndon.
fn decompose_in_lyndon(
    mut elt: TensorElt,
    memo: &mut BTreeMap<Word, TensorElt>,
    index: &BTreeMap<Word, usize>,
) -> SparseRow {
    let mut out: Vec<(u32, Rational)> = Vec::new();
    while let Some((w, _)) = elt.iter().next() {
        let w = w.clone();
        assert!(
            is_lyndon(&w),
            "leading word of a Lie element must be Lyndon"
        );
        let c = elt.get(&w).unwrap().clone();
        let exp = lyndon_expansion(&w, memo);
        for (u, cu) in &exp {
            let e = elt.entry(u.clone()).or_insert_with(Rational::zero);
            *e -= &c * cu;
        }
        elt.retain(|_, x| !x.is_zero());
        out.push((index[&w] as u32, c));
    }
    out.sort_by_key(|(i, _)| *i);
    out
}

/// Free Lie algebra on k generators, truncated above the given degree.
/// Basis: Lyndon words; bracket computed in the tensor algebra and rewritten.
pub fn free_lie(k: usize, degree: usize) -> Result<FreeAlgebra> {
    let words = lyndon_words(k, degree);
    guard_free(k, degree, words.len())?;
    let index: BTreeMap<Word, usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let names: Vec<String> = words
        .iter()
        .map(|w| {
            if w.len() == 1 {
                gen_name(w[0] as usize)
            } else {
                format!(
                    "[{}]",
                    w.iter().map(|&c| gen_name(c as usize)).collect::<String>()
                )
            }
        })
        .collect();
    let mut alg = Algebra::new(words.len(), names);
    let mut memo = BTreeMap::new();
    let expansions: Vec<TensorElt> = words
        .iter()
        .map(|w| lyndon_expansion(w, &mut memo))
        .collect();
    let mut table = zero_table(alg.dim);
    for i in 0..words.len() {
        for j in 0..words.len() {
            if words[i].len() + words[j].len() > degree {
                continue;
            }
            let prod = tensor_commutator(&expansions[i], &expansions[j]);
            table[i][j] = decompose_in_lyndon(prod, &mut memo, &index);
        }
    }
    alg.ops.insert("br".to_string(), table);
    Ok(FreeAlgebra {
        generators: (0..k).collect(),
        algebra: alg,
    })
}

/// Free symmetric Leibniz algebra: the free Lie algebra plus one extra copy
/// of the symmetric square of the generators, annihilated by everything.
/// The single operation is bracket plus, on two generators, the symmetric
/// component.
pub fn free_sleib(k: usize, degree: usize) -> Result<FreeAlgebra> {
    let lie = free_lie(k, degree)?;
    let ldim = lie.algebra.dim;
    let mut squares = Vec::new();
    if degree >= 2 {
        for i in 0..k {
            for j in i..k {
                squares.push((i, j));
            }
        }
    }
    let dim = ldim + squares.len();
    guard_free(k, degree, dim)?;
    let mut names = lie.algebra.basis.clone();
    for (i, j) in &squares {
        names.push(format!("({}{})", gen_name(*i), gen_name(*j)));
    }
    let mut alg = Algebra::new(dim, names);
    let lie_table = lie.algebra.op("br")?;
    let mut table = zero_table(dim);
    for i in 0..ldim {
        for j in 0..ldim {
            table[i][j] = lie_table[i][j].clone();
        }
    }
    for (pos, (a, b)) in squares.iter().enumerate() {
        // mul(g_a, g_b) and mul(g_b, g_a) both pick up the symmetric square
        let slot = (ldim + pos) as u32;
        let cells: &[(usize, usize)] = if a == b { &[(*a, *b)] } else { &[(*a, *b), (*b, *a)] };
        for (x, y) in cells {
            let row = &mut table[*x][*y];
            row.push((slot, rat_int(1)));
            row.sort_by_key(|(i, _)| *i);
        }
    }
    alg.ops.insert("mul".to_string(), table);
    Ok(FreeAlgebra {
        generators: lie.generators,
        algebra: alg,
    })
}

/// Free symmetric Perm algebra: the truncated polynomial algebra on the
/// generators plus an antisymmetric square annihilated by everything.
pub fn free_sperm(k: usize, degree: usize) -> Result<FreeAlgebra> {
    // monomials as sorted exponent-free generator lists (multisets)
    let mut monomials: Vec<Word> = Vec::new();
    let mut layer: Vec<Word> = (0..k as u8).map(|i| vec![i]).collect();
    monomials.extend(layer.iter().cloned());
    for _ in 2..=degree {
        let mut next = Vec::new();
        for m in &layer {
            for g in *m.last().unwrap()..k as u8 {
                let mut w = m.clone();
                w.push(g);
                next.push(w);
            }
        }
        monomials.extend(next.iter().cloned());
        layer = next;
    }
    let mut wedges = Vec::new();
    if degree >= 2 {
        for i in 0..k {
            for j in (i + 1)..k {
                wedges.push((i, j));
            }
        }
    }
    let dim = monomials.len() + wedges.len();
    guard_free(k, degree, dim)?;
    let index: BTreeMap<Word, usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let mut names: Vec<String> = monomials
        .iter()
        .map(|m| m.iter().map(|&c| gen_name(c as usize)).collect())
        .collect();
    for (i, j) in &wedges {
        names.push(format!("({}^{})", gen_name(*i), gen_name(*j)));
    }
    let mut alg = Algebra::new(dim, names);
    let mut table = zero_table(dim);
    for (i, u) in monomials.iter().enumerate() {
        for (j, v) in monomials.iter().enumerate() {
            if u.len() + v.len() > degree {
                continue;
            }
            let mut w: Word = u.iter().chain(v.iter()).copied().collect();
            w.sort_unstable();
            table[i][j].push((index[&w] as u32, rat_int(1)));
            if u.len() == 1 && v.len() == 1 && u[0] != v[0] {
                let (a, b) = (u[0].min(v[0]) as usize, u[0].max(v[0]) as usize);
                let slot = monomials.len() + wedges.iter().position(|x| x == &(a, b)).unwrap();
                let sign = if u[0] < v[0] { 1 } else { -1 };
                table[i][j].push((slot as u32, rat_int(sign)));
                table[i][j].sort_by_key(|(s, _)| *s);
            }
        }
    }
    alg.ops.insert("m".to_string(), table);
    Ok(FreeAlgebra {
        generators: (0..k).collect(),
        algebra: alg,
    })
}

/// Free symmetric dialgebra: one basis element per word from degree three on,
/// two per word in degree two.  Both operations concatenate underlying
/// words; they differ only on a pair of generators.
pub fn free_sdiass(k: usize, degree: usize) -> Result<FreeAlgebra> {
    let mut words: Vec<Word> = Vec::new();
    let mut layer: Vec<Word> = (0..k as u8).map(|i| vec![i]).collect();
    for len in 1..=degree {
        if len != 2 {
            words.extend(layer.iter().cloned());
        }
        if len < degree {
            layer = layer
                .iter()
                .flat_map(|w| {
                    (0..k as u8).map(move |g| {
                        let mut x = w.clone();
                        x.push(g);
                        x
                    })
                })
                .collect();
        } else {
            layer.clear();
        }
    }
    let pairs: Vec<Word> = if degree >= 2 {
        (0..k as u8)
            .flat_map(|i| (0..k as u8).map(move |j| vec![i, j]))
            .collect()
    } else {
        Vec::new()
    };
    // layout: singletons, then p/q pairs, then longer words
    let dim = words.len() + 2 * pairs.len();
    guard_free(k, degree, dim)?;
    let word_str = |w: &Word| -> String { w.iter().map(|&c| gen_name(c as usize)).collect() };
    let mut names = Vec::with_capacity(dim);
    let mut long_index: BTreeMap<Word, usize> = BTreeMap::new();
    let mut singleton_index = vec![0usize; k];
    let mut cursor = 0;
    for w in &words {
        if w.len() == 1 {
            singleton_index[w[0] as usize] = cursor;
            names.push(word_str(w));
        } else {
            long_index.insert(w.clone(), cursor);
            names.push(format!("t:{}", word_str(w)));
        }
        cursor += 1;
    }
    let mut pair_index: BTreeMap<Word, (usize, usize)> = BTreeMap::new();
    for w in &pairs {
        pair_index.insert(w.clone(), (cursor, cursor + 1));
        names.push(format!("p:{}", word_str(w)));
        names.push(format!("q:{}", word_str(w)));
        cursor += 2;
    }
    // underlying word of each basis element
    let mut word_of: Vec<Word> = vec![Vec::new(); dim];
    for w in &words {
        let idx = if w.len() == 1 {
            singleton_index[w[0] as usize]
        } else {
            long_index[w]
        };
        word_of[idx] = w.clone();
    }
    for w in &pairs {
        let (p, q) = pair_index[w];
        word_of[p] = w.clone();
        word_of[q] = w.clone();
    }
    let mut alg = Algebra::new(dim, names);
    for opname in ["vd", "dv"] {
        let mut table = zero_table(dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut w = word_of[i].clone();
                w.extend_from_slice(&word_of[j]);
                if w.len() > degree {
                    continue;
                }
                let target = if w.len() == 2 {
                    let (p, q) = pair_index[&w];
                    if opname == "vd" {
                        p
                    } else {
                        q
                    }
                } else {
                    long_index[&w]
                };
                table[i][j].push((target as u32, rat_int(1)));
            }
        }
        alg.ops.insert(opname.to_string(), table);
    }
    Ok(FreeAlgebra {
        generators: (0..k).map(|i| singleton_index[i]).collect(),
        algebra: alg,
    })
}

// ---------------------------------------------------------------------------
// Derived operations.

/// Named packages of derived operations.  Each term is
/// (numerator, denominator, source op, swap): the derived operation is the
/// signed combination of the sources, applied to (a, b) or (b, a).
pub const FUNCTORS: &[(&str, &[(&str, &[(i64, i64, &str, bool)])])] = &[
    ("commutator", &[("br", &[(1, 1, "m", false), (-1, 1, "m", true)])]),
    ("anticommutator", &[("di", &[(1, 1, "m", false), (1, 1, "m", true)])]),
    (
        "dialg_to_leibniz",
        &[("mul", &[(1, 1, "vd", false), (-1, 1, "dv", true)])],
    ),
    (
        "polarize_dialgebra",
        &[
            (
                "br",
                &[
                    (1, 1, "vd", false),
                    (1, 1, "dv", false),
                    (-1, 1, "vd", true),
                    (-1, 1, "dv", true),
                ],
            ),
            (
                "di",
                &[
                    (1, 1, "vd", false),
                    (1, 1, "vd", true),
                    (-1, 1, "dv", false),
                    (-1, 1, "dv", true),
                ],
            ),
        ],
    ),
    (
        "star_wedge",
        &[
            ("star", &[(1, 1, "vd", false), (1, 1, "dv", false)]),
            ("wedge", &[(1, 1, "vd", false), (-1, 1, "dv", false)]),
        ],
    ),
    (
        "dend_to_prelie",
        &[("circ", &[(1, 1, "succ", false), (-1, 1, "prec", true)])],
    ),
    (
        "dend_to_assoc",
        &[("mul", &[(1, 1, "succ", false), (1, 1, "prec", false)])],
    ),
    (
        "zinbiel_symmetrize",
        &[("star", &[(1, 1, "m", false), (1, 1, "m", true)])],
    ),
    (
        "assadm_to_lieadm",
        &[("circ", &[(1, 1, "succ", false), (-1, 1, "prec", true)])],
    ),
    (
        "comadm_to_assadm",
        &[
            ("succ", &[(1, 2, "di", false), (1, 2, "br", false)]),
            ("prec", &[(1, 2, "di", false), (-1, 2, "br", false)]),
        ],
    ),
    (
        "split_associative",
        &[
            ("succ", &[(1, 2, "m", false)]),
            ("prec", &[(1, 2, "m", false)]),
        ],
    ),
];

pub fn functor_names() -> Vec<&'static str> {
    FUNCTORS.iter().map(|(n, _)| *n).collect()
}

/// Extends an algebra with the derived operations of a named functor.  The
/// binding renames the source operations the formulas refer to; derived
/// names must not collide with existing operations.
pub fn apply_functor(alg: &Algebra, name: &str, bind: &Binding) -> Result<Algebra> {
    let (_, derived) = FUNCTORS
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::UnknownCatalog {
            name: name.to_string(),
            available: functor_names().join(", "),
        })?;
    let mut out = alg.clone();
    for (new_op, terms) in *derived {
        if out.ops.contains_key(*new_op) {
            return Err(Error::AlgebraFormat(format!(
                "derived operation {new_op} collides with an existing operation"
            )));
        }
        let mut table = zero_table(alg.dim);
        for (num, den, src, swap) in *terms {
            let src_op = bind.get(*src).map(String::as_str).unwrap_or(src);
            let src_table = alg.op(src_op)?;
            let c = rat(*num, *den);
            for i in 0..alg.dim {
                for j in 0..alg.dim {
                    let from = if *swap { &src_table[j][i] } else { &src_table[i][j] };
                    if from.is_empty() {
                        continue;
                    }
                    let merged = merge_scaled(&table[i][j], from, &c);
                    table[i][j] = merged;
                }
            }
        }
        out.ops.insert(new_op.to_string(), table);
    }
    Ok(out)
}

fn merge_scaled(a: &SparseRow, b: &SparseRow, c: &Rational) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut x, mut y) = (0, 0);
    while x < a.len() || y < b.len() {
        if y >= b.len() || (x < a.len() && a[x].0 < b[y].0) {
            out.push(a[x].clone());
            x += 1;
        } else if x >= a.len() || b[y].0 < a[x].0 {
            out.push((b[y].0, c * &b[y].1));
            y += 1;
        } else {
            let v = &a[x].1 + c * &b[y].1;
            if !v.is_zero() {
                out.push((a[x].0, v));
            }
            x += 1;
            y += 1;
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Quotients by operation-generated ideals.

pub struct QuotientResult {
    pub algebra: Algebra,
    pub ideal_dim: usize,
    /// Coordinates of each old basis element in the quotient basis.
    pub old_to_new: Vec<Vec<Rational>>,
}

pub const QUOTIENT_CONSTRUCTIONS: &[&str] =
    &["abelianize", "squares", "leibniz-defect", "diperm"];

/// Closes a seed span into a two-sided ideal under every operation.
fn ideal_closure(alg: &Algebra, seeds: Vec<Vec<Rational>>) -> Result<Subspace> {
    let mut builder = EchelonBuilder::new(alg.dim);
    let mut fresh: Vec<Vec<Rational>> = Vec::new();
    for s in seeds {
        if builder.insert_dense(&s) {
            fresh.push(s);
        }
    }
    while let Some(v) = fresh.pop() {
        for op in alg.ops.keys() {
            for b in 0..alg.dim {
                let unit = alg.unit_vector(b);
                for w in [alg.multiply(op, &v, &unit)?, alg.multiply(op, &unit, &v)?] {
                    if builder.insert_dense(&w) {
                        fresh.push(w);
                    }
                }
            }
        }
    }
    Ok(Subspace::from_echelon(builder))
}

fn defect_seeds(
    alg: &Algebra,
    op: &str,
    terms: &[(i64, [usize; 3], bool)],
) -> Result<Vec<Vec<Rational>>> {
    // terms: (sign, argument order, left-nested) where left-nested means
    // (x.y).z and otherwise x.(y.z), over the argument order given.
    let mut out = Vec::new();
    for i in 0..alg.dim {
        for j in 0..alg.dim {
            for k in 0..alg.dim {
                let args = [i, j, k];
                let mut acc = vec![Rational::zero(); alg.dim];
                for (sign, order, left) in terms {
                    let (a, b, c) = (args[order[0]], args[order[1]], args[order[2]]);
                    let inner;
                    let v = if *left {
                        inner = alg.product_of_basis(op, a, b)?;
                        alg.multiply(op, &inner, &alg.unit_vector(c))?
                    } else {
                        inner = alg.product_of_basis(op, b, c)?;
                        alg.multiply(op, &alg.unit_vector(a), &inner)?
                    };
                    for (slot, x) in v.iter().enumerate() {
                        if !x.is_zero() {
                            acc[slot] += rat_int(*sign) * x;
                        }
                    }
                }
                if acc.iter().any(|x| !x.is_zero()) {
                    out.push(acc);
                }
            }
        }
    }
    Ok(out)
}

/// Quotients an algebra by the ideal a named construction generates.
///
/// abelianize: commutators of `mul`; squares: squares of `mul`;
/// leibniz-defect: both Leibniz defects of `mul`; diperm: vd(a,b) - dv(b,a),
/// after which the surviving operation is renamed m.
pub fn quotient_construction(
    alg: &Algebra,
    construction: &str,
    bind: &Binding,
) -> Result<QuotientResult> {
    let op_of = |gen: &str| -> String {
        bind.get(gen).cloned().unwrap_or_else(|| gen.to_string())
    };
    let seeds = match construction {
        "abelianize" => {
            let op = op_of("mul");
            let mut seeds = Vec::new();
            for i in 0..alg.dim {
                for j in 0..alg.dim {
                    let forward = alg.product_of_basis(&op, i, j)?;
                    let back = alg.product_of_basis(&op, j, i)?;
                    let diff: Vec<Rational> =
                        forward.iter().zip(&back).map(|(a, b)| a - b).collect();
                    seeds.push(diff);
                }
            }
            seeds
        }
        "squares" => {
            let op = op_of("mul");
            let mut seeds = Vec::new();
            for i in 0..alg.dim {
                seeds.push(alg.product_of_basis(&op, i, i)?);
                for j in (i + 1)..alg.dim {
                    let forward = alg.product_of_basis(&op, i, j)?;
                    let back = alg.product_of_basis(&op, j, i)?;
                    let sum: Vec<Rational> =
                        forward.iter().zip(&back).map(|(a, b)| a + b).collect();
                    seeds.push(sum);
                }
            }
            seeds
        }
        "leibniz-defect" => {
            let op = op_of("mul");
            // a(bc) - (ab)c - b(ac)  and  (ab)c - a(bc) - (ac)b
            let mut seeds = defect_seeds(
                alg,
                &op,
                &[
                    (1, [0, 1, 2], false),
                    (-1, [0, 1, 2], true),
                    (-1, [1, 0, 2], false),
                ],
            )?;
            seeds.extend(defect_seeds(
                alg,
                &op,
                &[
                    (1, [0, 1, 2], true),
                    (-1, [0, 1, 2], false),
                    (-1, [0, 2, 1], true),
                ],
            )?);
            seeds
        }
        "diperm" => {
            let (vd, dv) = (op_of("vd"), op_of("dv"));
            let mut seeds = Vec::new();
            for i in 0..alg.dim {
                for j in 0..alg.dim {
                    let forward = alg.product_of_basis(&vd, i, j)?;
                    let back = alg.product_of_basis(&dv, j, i)?;
                    let diff: Vec<Rational> =
                        forward.iter().zip(&back).map(|(a, b)| a - b).collect();
                    seeds.push(diff);
                }
            }
            seeds
        }
        other => {
            return Err(Error::UnknownCatalog {
                name: other.to_string(),
                available: QUOTIENT_CONSTRUCTIONS.join(", "),
            })
        }
    };
    let ideal = ideal_closure(alg, seeds)?;
    let free = ideal.free_columns();
    let new_dim = free.len();
    let names = free
        .iter()
        .map(|&c| alg.basis[c as usize].clone())
        .collect();
    let mut quot = Algebra::new(new_dim, names);
    let compress = |v: Vec<Rational>| -> Vec<Rational> {
        let residue = ideal.residue(dense_to_sparse(&v));
        let mut out = vec![Rational::zero(); new_dim];
        for (col, c) in residue {
            let slot = free.binary_search(&col).expect("residues live on free columns");
            out[slot] = c;
        }
        out
    };
    let keep: Vec<String> = match construction {
        "diperm" => vec![op_of("vd")],
        _ => vec![op_of("mul")],
    };
    for src in keep {
        let out_name = if construction == "diperm" { "m" } else { "mul" };
        let mut table = zero_table(new_dim);
        for (a, &ca) in free.iter().enumerate() {
            for (b, &cb) in free.iter().enumerate() {
                let prod = alg.product_of_basis(&src, ca as usize, cb as usize)?;
                table[a][b] = dense_to_sparse(&compress(prod));
            }
        }
        quot.ops.insert(out_name.to_string(), table);
    }
    let old_to_new = (0..alg.dim)
        .map(|i| compress(alg.unit_vector(i)))
        .collect();
    Ok(QuotientResult {
        algebra: quot,
        ideal_dim: ideal.dim(),
        old_to_new,
    })
}

/// Rank of the multilinear arity-n component: every canonical monomial of
/// the presentation's free component, evaluated on the given generator
/// vectors, collected into one span.  For a free algebra this must equal the
/// quotient operad's arity-n dimension.
pub fn multilinear_rank(
    alg: &Algebra,
    p: &Presentation,
    bind: &Binding,
    gens: &[Vec<Rational>],
) -> Result<usize> {
    let n = gens.len();
    let sparse: Vec<SparseRow> = gens.iter().map(|g| dense_to_sparse(g)).collect();
    let comp = FreeComponent::enumerate(&p.alphabet, n);
    let mut builder = EchelonBuilder::new(alg.dim);
    for idx in 0..comp.dim() {
        let v = eval_tree(alg, p, bind, comp.monomial(idx), &sparse)?;
        builder.insert(v);
    }
    Ok(builder.rank())
}

/// Conjugates every operation by a seeded unitriangular change of basis.
/// The result satisfies exactly the identities the input does, which makes
/// scrambles a cheap corpus of structurally distinct test tables.
pub fn scramble(alg: &Algebra, seed: u64) -> Algebra {
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15) | 1;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let n = alg.dim;
    let mut t = MatrixQ::identity(n);
    for i in 0..n {
        for j in (i + 1)..n {
            let v = (next() % 5) as i64 - 2;
            t.set(i, j, rat_int(v));
        }
    }
    let tinv = invert(&t).expect("unitriangular matrices invert");
    let col = |m: &MatrixQ, j: usize| -> Vec<Rational> {
        (0..n).map(|i| m.at(i, j).clone()).collect()
    };
    let mut out = Algebra::new(n, alg.basis.iter().map(|b| format!("{b}~")).collect());
    for (name, _) in &alg.ops {
        let mut table = zero_table(n);
        for i in 0..n {
            for j in 0..n {
                let prod = alg
                    .multiply(name, &col(&t, i), &col(&t, j))
                    .expect("operation exists");
                let back = tinv.mul_vec(&prod).expect("dimensions agree");
                table[i][j] = dense_to_sparse(&back);
            }
        }
        out.ops.insert(name.clone(), table);
    }
    out
}

/// A deterministic corpus of scrambled copies.
pub fn scrambles(alg: &Algebra, count: usize, seed: u64) -> Vec<Algebra> {
    (0..count as u64)
        .map(|i| scramble(alg, seed.wrapping_add(i.wrapping_mul(0x2545f4914f6cdd1d))))
        .collect()
}

// ---------------------------------------------------------------------------
// Sample algebras.

pub mod samples {
    use super::*;

    /// Two-dimensional left Leibniz algebra: y.y = x, y.x = x, x annihilates.
    pub fn cyclic_leibniz() -> Algebra {
        let mut alg = Algebra::new(2, vec!["x".into(), "y".into()]);
        let mut table = zero_table(2);
        table[1][1] = vec![(0, rat_int(1))];
        table[1][0] = vec![(0, rat_int(1))];
        alg.ops.insert("mul".to_string(), table);
        alg
    }

    /// Heisenberg Lie algebra: [x, y] = z central.
    pub fn heisenberg() -> Algebra {
        let mut alg = Algebra::new(3, vec!["x".into(), "y".into(), "z".into()]);
        let mut table = zero_table(3);
        table[0][1] = vec![(2, rat_int(1))];
        table[1][0] = vec![(2, rat_int(-1))];
        alg.ops.insert("br".to_string(), table);
        alg
    }

    /// Full 2x2 matrix algebra under multiplication, basis e11, e12, e21, e22.
    pub fn matrix2() -> Algebra {
        let mut alg = Algebra::new(
            4,
            vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()],
        );
        let pos = |r: usize, c: usize| (2 * r + c) as u32;
        let mut table = zero_table(4);
        for (r1, c1) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            for (r2, c2) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
                if c1 == r2 {
                    table[pos(r1, c1) as usize][pos(r2, c2) as usize] =
                        vec![(pos(r1, c2), rat_int(1))];
                }
            }
        }
        alg.ops.insert("m".to_string(), table);
        alg
    }

    /// Upper-triangular 2x2 matrices: e11, e12, e22.
    pub fn upper_tri2() -> Algebra {
        let mut alg = Algebra::new(3, vec!["e11".into(), "e12".into(), "e22".into()]);
        let mut table = zero_table(3);
        table[0][0] = vec![(0, rat_int(1))];
        table[0][1] = vec![(1, rat_int(1))];
        table[1][2] = vec![(1, rat_int(1))];
        table[2][2] = vec![(2, rat_int(1))];
        alg.ops.insert("m".to_string(), table);
        alg
    }

    /// Truncated polynomials t, t^2, ..., t^d with t^(d+1) = 0.
    pub fn trunc_poly(d: usize) -> Algebra {
        let mut alg =
            Algebra::new(d, (1..=d).map(|i| format!("t{i}")).collect());
        let mut table = zero_table(d);
        for i in 1..=d {
            for j in 1..=d {
                if i + j <= d {
                    table[i - 1][j - 1] = vec![((i + j - 1) as u32, rat_int(1))];
                }
            }
        }
        alg.ops.insert("m".to_string(), table);
        alg
    }

    /// Integration pairing on truncated polynomials:
    /// t^i . t^j = i/(i+j) t^(i+j).
    pub fn zinbiel_integration(d: usize) -> Algebra {
        let mut alg =
            Algebra::new(d, (1..=d).map(|i| format!("t{i}")).collect());
        let mut table = zero_table(d);
        for i in 1..=d {
            for j in 1..=d {
                if i + j <= d {
                    table[i - 1][j - 1] =
                        vec![((i + j - 1) as u32, rat(i as i64, (i + j) as i64))];
                }
            }
        }
        alg.ops.insert("m".to_string(), table);
        alg
    }

    /// Free Zinbiel algebra on words: u.v shuffles v into the tail of u,
    /// keeping u's first letter in front.
    pub fn free_zinbiel(k: usize, degree: usize) -> Result<FreeAlgebra> {
        let mut words: Vec<Word> = Vec::new();
        let mut layer: Vec<Word> = (0..k as u8).map(|i| vec![i]).collect();
        for len in 1..=degree {
            words.extend(layer.iter().cloned());
            if len < degree {
                layer = layer
                    .iter()
                    .flat_map(|w| {
                        (0..k as u8).map(move |g| {
                            let mut x = w.clone();
                            x.push(g);
                            x
                        })
                    })
                    .collect();
            }
        }
        guard_free(k, degree, words.len())?;
        let index: BTreeMap<Word, usize> = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let names = words
            .iter()
            .map(|w| w.iter().map(|&c| gen_name(c as usize)).collect())
            .collect();
        let mut alg = Algebra::new(words.len(), names);
        let mut table = zero_table(alg.dim);
        for (i, u) in words.iter().enumerate() {
            for (j, v) in words.iter().enumerate() {
                if u.len() + v.len() > degree {
                    continue;
                }
                let mut acc: BTreeMap<Word, Rational> = BTreeMap::new();
                for s in shuffles(&u[1..], v) {
                    let mut w = vec![u[0]];
                    w.extend(s);
                    *acc.entry(w).or_insert_with(Rational::zero) += rat_int(1);
                }
                table[i][j] = acc
                    .into_iter()
                    .map(|(w, c)| (index[&w] as u32, c))
                    .collect();
                table[i][j].sort_by_key(|(s, _)| *s);
            }
        }
        alg.ops.insert("m".to_string(), table);
        Ok(FreeAlgebra {
            generators: (0..k).collect(),
            algebra: alg,
        })
    }

    fn shuffles(a: &[u8], b: &[u8]) -> Vec<Word> {
        if a.is_empty() {
            return vec![b.to_vec()];
        }
        if b.is_empty() {
            return vec![a.to_vec()];
        }
        let mut out = Vec::new();
        for mut s in shuffles(&a[1..], b) {
            s.insert(0, a[0]);
            out.push(s);
        }
        for mut s in shuffles(a, &b[1..]) {
            s.insert(0, b[0]);
            out.push(s);
        }
        out
    }

    /// Free dialgebra on marked words: vd keeps the right factor's mark,
    /// dv keeps the left one.
    pub fn free_diass(k: usize, degree: usize) -> Result<FreeAlgebra> {
        let mut basis: Vec<(Word, usize)> = Vec::new();
        let mut layer: Vec<Word> = (0..k as u8).map(|i| vec![i]).collect();
        for len in 1..=degree {
            for w in &layer {
                for mark in 0..len {
                    basis.push((w.clone(), mark));
                }
            }
            if len < degree {
                layer = layer
                    .iter()
                    .flat_map(|w| {
                        (0..k as u8).map(move |g| {
                            let mut x = w.clone();
                            x.push(g);
                            x
                        })
                    })
                    .collect();
            }
        }
        guard_free(k, degree, basis.len())?;
        let index: BTreeMap<(Word, usize), usize> = basis
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        let names = basis
            .iter()
            .map(|(w, m)| {
                w.iter()
                    .enumerate()
                    .map(|(pos, &c)| {
                        let g = gen_name(c as usize);
                        if pos == *m {
                            g.to_uppercase()
                        } else {
                            g
                        }
                    })
                    .collect()
            })
            .collect();
        let mut alg = Algebra::new(basis.len(), names);
        for opname in ["vd", "dv"] {
            let mut table = zero_table(alg.dim);
            for (i, (u, mu)) in basis.iter().enumerate() {
                for (j, (v, mv)) in basis.iter().enumerate() {
                    if u.len() + v.len() > degree {
                        continue;
                    }
                    let mut w = u.clone();
                    w.extend_from_slice(v);
                    let mark = if opname == "vd" { u.len() + mv } else { *mu };
                    table[i][j] = vec![(index[&(w, mark)] as u32, rat_int(1))];
                }
            }
            alg.ops.insert(opname.to_string(), table);
        }
        Ok(FreeAlgebra {
            generators: (0..k).map(|i| index[&(vec![i as u8], 0)]).collect(),
            algebra: alg,
        })
    }

    /// Truncated polynomial product together with a derivation-style
    /// bracket: di associative symmetric, br antisymmetric.
    pub fn witt_comadm(d: usize) -> Algebra {
        let mut alg =
            Algebra::new(d, (1..=d).map(|i| format!("t{i}")).collect());
        let mut di = zero_table(d);
        let mut br = zero_table(d);
        for i in 1..=d {
            for j in 1..=d {
                if i + j <= d {
                    di[i - 1][j - 1] = vec![((i + j - 1) as u32, rat_int(1))];
                    if i != j {
                        br[i - 1][j - 1] =
                            vec![((i + j - 1) as u32, rat_int(j as i64 - i as i64))];
                    }
                }
            }
        }
        alg.ops.insert("di".to_string(), di);
        alg.ops.insert("br".to_string(), br);
        alg
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_bind() -> Binding {
        Binding::new()
    }

    fn assert_type(alg: &Algebra, ty: &str, bind: &Binding) {
        let p = check_type(ty).unwrap();
        let rep = check_identities(alg, p, bind).unwrap();
        assert!(rep.ok, "{ty}: {:?}", rep.failures);
    }

    fn assert_not_type(alg: &Algebra, ty: &str, bind: &Binding) {
        let p = check_type(ty).unwrap();
        let rep = check_identities(alg, p, bind).unwrap();
        assert!(!rep.ok, "{ty} unexpectedly holds");
    }

    #[test]
    fn json_round_trip_and_errors() {
        let alg = samples::heisenberg();
        let text = algebra_to_json(&alg);
        let back = parse_algebra(&text).unwrap();
        assert_eq!(back.dim, 3);
        assert_eq!(back.basis, alg.basis);
        assert_eq!(back.ops["br"], alg.ops["br"]);

        assert!(parse_algebra("{").is_err());
        assert!(parse_algebra("[]").is_err());
        assert!(parse_algebra("{\"dim\": 1}").is_err());
        assert!(parse_algebra("{\"dim\": 1, \"ops\": {\"m\": [[[\"1/0\"]]]}}").is_err());
        assert!(parse_algebra("{\"dim\": 1, \"ops\": {\"m\": [[[1.5]]]}}").is_err());
        let ok = parse_algebra("{\"dim\": 1, \"ops\": {\"m\": [[[\"2/4\"]]]}}").unwrap();
        assert_eq!(ok.ops["m"][0][0], vec![(0, rat(1, 2))]);
    }

    #[test]
    fn samples_satisfy_their_laws() {
        assert_type(&samples::heisenberg(), "Lie", &no_bind());
        assert_type(&samples::matrix2(), "Ass", &no_bind());
        assert_type(&samples::upper_tri2(), "Ass", &no_bind());
        assert_type(&samples::trunc_poly(5), "Com", &no_bind());

        let bind = parse_binding("m=mul").unwrap();
        assert_type(&samples::cyclic_leibniz(), "lLeib", &bind);
        assert_not_type(&samples::cyclic_leibniz(), "rLeib", &bind);
        assert_not_type(&samples::cyclic_leibniz(), "sLeib", &no_bind());

        assert_type(&samples::zinbiel_integration(6), "rZinb", &no_bind());
        assert_not_type(&samples::zinbiel_integration(6), "lZinb", &no_bind());
        assert_type(&samples::free_zinbiel(2, 4).unwrap().algebra, "rZinb", &no_bind());
        assert_type(&samples::free_diass(2, 3).unwrap().algebra, "DiAss", &no_bind());
        assert_type(&samples::witt_comadm(5), "ComAdmPolar", &no_bind());
    }

    #[test]
    fn free_lie_matches_the_witt_dimensions() {
        let free = free_lie(2, 6).unwrap();
        let mut by_degree = vec![0usize; 7];
        for name in &free.algebra.basis {
            let len = name.trim_matches(['[', ']']).chars().count();
            by_degree[len] += 1;
        }
        assert_eq!(&by_degree[1..], &[2, 1, 2, 3, 6, 9]);
        assert_type(&free.algebra, "Lie", &no_bind());
    }

    #[test]
    fn free_constructions_satisfy_their_laws() {
        let sleib = free_sleib(2, 3).unwrap();
        assert_eq!(sleib.algebra.dim, 2 + 1 + 3 + 2);
        assert_type(&sleib.algebra, "sLeib", &no_bind());

        let sperm = free_sperm(2, 3).unwrap();
        assert_eq!(sperm.algebra.dim, 2 + 3 + 4 + 1);
        assert_type(&sperm.algebra, "sPerm", &no_bind());

        let sdiass = free_sdiass(2, 3).unwrap();
        assert_eq!(sdiass.algebra.dim, 2 + 8 + 8);
        assert_type(&sdiass.algebra, "sDiAss", &no_bind());
    }

    #[test]
    fn multilinear_components_match_quotient_dimensions() {
        let cases: [(&str, FreeAlgebra, &str, &[usize]); 4] = [
            ("Lie", free_lie(4, 4).unwrap(), "Lie", &[1, 1, 2, 6]),
            ("sLeib", free_sleib(4, 4).unwrap(), "sLeib", &[1, 2, 2, 6]),
            ("sPerm", free_sperm(4, 4).unwrap(), "sPerm", &[1, 2, 1, 1]),
            ("sDiAss", free_sdiass(4, 4).unwrap(), "sDiAss", &[1, 4, 6, 24]),
        ];
        for (label, free, ty, dims) in cases {
            let p = check_type(ty).unwrap();
            for n in 1..=4usize {
                let gens: Vec<_> = free.generators[..n]
                    .iter()
                    .map(|&g| free.algebra.unit_vector(g))
                    .collect();
                let rank = multilinear_rank(&free.algebra, p, &no_bind(), &gens).unwrap();
                assert_eq!(rank, dims[n - 1], "{label} arity {n}");
            }
        }
    }

    #[test]
    fn functors_produce_the_expected_types() {
        let bind = parse_binding("").unwrap();
        let lie = apply_functor(&samples::matrix2(), "commutator", &bind).unwrap();
        assert_type(&lie, "Lie", &no_bind());
        assert!(apply_functor(&lie, "commutator", &bind).is_err());

        let jordan = apply_functor(&samples::matrix2(), "anticommutator", &bind).unwrap();
        assert!(jordan.ops.contains_key("di"));

        let sdiass = free_sdiass(2, 3).unwrap().algebra;
        let leib = apply_functor(&sdiass, "dialg_to_leibniz", &bind).unwrap();
        assert_type(&leib, "sLeib", &no_bind());

        let polar = apply_functor(&sdiass, "polarize_dialgebra", &bind).unwrap();
        assert_type(&polar, "sLeibPolar", &no_bind());

        let com = apply_functor(&samples::zinbiel_integration(5), "zinbiel_symmetrize", &bind)
            .unwrap();
        assert_type(&com, "Com", &parse_binding("m=star").unwrap());

        let assadm =
            apply_functor(&samples::witt_comadm(5), "comadm_to_assadm", &bind).unwrap();
        assert_type(&assadm, "AssAdm", &no_bind());

        // a noncommutative source keeps the induced circ operation nonzero
        let split = apply_functor(&samples::matrix2(), "split_associative", &bind).unwrap();
        assert_type(&split, "AssAdm", &no_bind());
        let lieadm = apply_functor(&split, "assadm_to_lieadm", &bind).unwrap();
        assert_type(&lieadm, "LieAdm", &no_bind());
        assert!(lieadm.ops["circ"].iter().flatten().any(|row| !row.is_empty()));

        let diass = samples::free_diass(2, 3).unwrap().algebra;
        let lleib = apply_functor(&diass, "dialg_to_leibniz", &bind).unwrap();
        assert_type(&lleib, "lLeib", &parse_binding("m=mul").unwrap());
    }

    #[test]
    fn quotient_constructions_land_where_stated() {
        let sleib = free_sleib(2, 3).unwrap().algebra;
        let lie = quotient_construction(&sleib, "squares", &no_bind()).unwrap();
        assert_eq!(lie.ideal_dim, 3);
        assert_eq!(lie.algebra.dim, 5);
        assert_type(&lie.algebra, "Lie", &parse_binding("br=mul").unwrap());

        let leib = samples::cyclic_leibniz();
        let fixed = quotient_construction(&leib, "leibniz-defect", &no_bind()).unwrap();
        assert_eq!(fixed.algebra.dim, 1);
        assert_type(&fixed.algebra, "sLeib", &no_bind());

        let diass = samples::free_diass(2, 3).unwrap().algebra;
        let perm = quotient_construction(&diass, "diperm", &no_bind()).unwrap();
        assert_eq!(perm.algebra.dim, 2 + 4 + 6);
        assert_type(&perm.algebra, "lPerm", &no_bind());

        let tri = samples::upper_tri2();
        let com = quotient_construction(&tri, "abelianize", &parse_binding("mul=m").unwrap())
            .unwrap();
        assert_eq!(com.algebra.dim, 2);
        assert_type(&com.algebra, "Com", &parse_binding("m=mul").unwrap());

        let m2 = samples::matrix2();
        let zero = quotient_construction(&m2, "abelianize", &parse_binding("mul=m").unwrap())
            .unwrap();
        assert_eq!(zero.algebra.dim, 0);
    }

    #[test]
    fn scrambles_preserve_identities() {
        for (i, alg) in scrambles(&samples::cyclic_leibniz(), 5, 11).iter().enumerate() {
            let bind = parse_binding("m=mul").unwrap();
            let p = check_type("lLeib").unwrap();
            let rep = check_identities(alg, p, &bind).unwrap();
            assert!(rep.ok, "scramble {i}: {:?}", rep.failures);
        }
        let sperm = free_sperm(2, 3).unwrap().algebra;
        for alg in scrambles(&sperm, 5, 7) {
            let rep = check_identities(&alg, check_type("sPerm").unwrap(), &no_bind()).unwrap();
            assert!(rep.ok, "{:?}", rep.failures);
        }
        let sleib = free_sleib(2, 3).unwrap().algebra;
        for alg in scrambles(&sleib, 5, 23) {
            let rep = check_identities(&alg, check_type("sLeib").unwrap(), &no_bind()).unwrap();
            assert!(rep.ok, "{:?}", rep.failures);
        }
    }

    #[test]
    fn symmetry_validation_reports_offenders() {
        let mut alg = samples::heisenberg();
        // break antisymmetry
        alg.set_entry("br", 1, 0, vec![(2, rat_int(1))]);
        let rep = check_identities(&alg, check_type("Lie").unwrap(), &no_bind()).unwrap();
        assert!(!rep.ok);
        assert!(rep.failures[0].contains("antisymmetric"));
    }
}
