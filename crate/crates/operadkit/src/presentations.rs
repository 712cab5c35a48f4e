//! Binary quadratic presentations and maps between them.
//!
//! A presentation is an alphabet of binary generators plus a list of arity-3
//! relation templates.  The relations span an S3-stable subspace of the
//! arity-3 component of the free operad; everything downstream (growth of the
//! ideal, duality, morphism checks) works with that subspace.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::dsl::{self, GenTerm, ParsedGenMap, ParsedOperad};
use crate::error::{Error, Result};
use crate::linalg::{MatrixQ, Rational, SparseRow, Subspace};
use crate::trees::{all_permutations, Alphabet, FreeComponent, Symmetry, Tree};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Var(u8),
    App(String, Box<Expr>, Box<Expr>),
}

/// A multilinear identity: a signed sum of generator words in `x1..xn`.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityTemplate {
    pub terms: Vec<(Rational, Expr)>,
}

fn collect_vars(e: &Expr, seen: &mut Vec<u8>) -> Result<()> {
    match e {
        Expr::Var(v) => {
            if seen.contains(v) {
                return Err(Error::Template(format!("variable x{v} used twice in one term")));
            }
            seen.push(*v);
            Ok(())
        }
        Expr::App(_, a, b) => {
            collect_vars(a, seen)?;
            collect_vars(b, seen)
        }
    }
}

impl IdentityTemplate {
    /// Validates multilinearity and returns the common arity: every term must
    /// use each of `x1..xn` exactly once.
    pub fn arity(&self) -> Result<usize> {
        let mut arity: Option<usize> = None;
        for (_, e) in &self.terms {
            let mut seen = Vec::new();
            collect_vars(e, &mut seen)?;
            seen.sort_unstable();
            let n = seen.len();
            let expect: Vec<u8> = (1..=n as u8).collect();
            if seen != expect {
                return Err(Error::Template(
                    "each term must use the variables x1..xn exactly once".into(),
                ));
            }
            match arity {
                None => arity = Some(n),
                Some(m) if m == n => {}
                Some(m) => {
                    return Err(Error::Template(format!(
                        "terms mix arities {m} and {n}"
                    )))
                }
            }
        }
        arity.ok_or_else(|| Error::Template("empty relation".into()))
    }
}

pub fn expr_to_tree(e: &Expr, alph: &Alphabet) -> Result<Tree> {
    match e {
        Expr::Var(v) => Ok(Tree::Leaf(*v)),
        Expr::App(name, a, b) => {
            let gi = alph.generator_index(name).ok_or_else(|| Error::UnknownGenerator {
                name: name.clone(),
                context: "relation term".into(),
            })?;
            Ok(Tree::node(
                alph.primary_symbol(gi),
                expr_to_tree(a, alph)?,
                expr_to_tree(b, alph)?,
            ))
        }
    }
}

/// Coordinates of a template in the given component.
pub fn template_row(
    t: &IdentityTemplate,
    alph: &Alphabet,
    comp: &FreeComponent,
) -> Result<SparseRow> {
    let mut terms = Vec::with_capacity(t.terms.len());
    for (coeff, e) in &t.terms {
        let raw = expr_to_tree(e, alph)?;
        let (sign, canon) = alph.canonicalize(&raw);
        terms.push((coeff * Rational::from_integer(sign.into()), canon));
    }
    Ok(comp.row_from_terms(&terms))
}

/// The S3-stable span of the given arity-3 templates.
pub fn relation_space(alph: &Alphabet, templates: &[IdentityTemplate]) -> Result<Subspace> {
    let comp = FreeComponent::enumerate(alph, 3);
    let mut b = crate::linalg::EchelonBuilder::new(comp.dim());
    let perms = all_permutations(3);
    for t in templates {
        let arity = t.arity()?;
        if arity != 3 {
            return Err(Error::Template(format!(
                "relations must have arity 3, found arity {arity}"
            )));
        }
        let base = template_row(t, alph, &comp)?;
        for p in &perms {
            b.insert(comp.act_row(alph, p, &base));
        }
    }
    Ok(Subspace::from_echelon(b))
}

#[derive(Clone)]
pub struct Presentation {
    pub name: String,
    pub alphabet: Alphabet,
    pub templates: Vec<IdentityTemplate>,
    pub relations: Subspace,
}

impl Presentation {
    pub fn new(name: String, alphabet: Alphabet, templates: Vec<IdentityTemplate>) -> Result<Self> {
        let relations = relation_space(&alphabet, &templates)?;
        Ok(Presentation { name, alphabet, templates, relations })
    }

    pub fn from_parsed(p: ParsedOperad) -> Result<Self> {
        let alphabet = Alphabet::new(p.generators)?;
        Presentation::new(p.name, alphabet, p.relations)
    }

    /// Wraps an already-computed relation subspace (dualizing and generator
    /// changes produce these; no templates are attached).
    pub fn from_relation_space(name: String, alphabet: Alphabet, relations: Subspace) -> Self {
        Presentation { name, alphabet, templates: Vec::new(), relations }
    }

    pub fn ambient_dim3(&self) -> usize {
        FreeComponent::enumerate(&self.alphabet, 3).dim()
    }

    pub fn quotient_dim3(&self) -> usize {
        self.ambient_dim3() - self.relations.dim()
    }

    /// Structural identity: same generator symmetries in order and the same
    /// relation span under the positional symbol matching.  Names play no
    /// part.
    pub fn structure_eq(&self, other: &Presentation) -> bool {
        let a: Vec<Symmetry> =
            self.alphabet.generators().iter().map(|g| g.symmetry).collect();
        let b: Vec<Symmetry> =
            other.alphabet.generators().iter().map(|g| g.symmetry).collect();
        a == b && self.relations == other.relations
    }

    /// Content hash of the mathematical data (symmetries plus canonical
    /// relation rows), used to key caches.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        for g in self.alphabet.generators() {
            g.symmetry.hash(&mut h);
        }
        self.relations.ambient().hash(&mut h);
        for row in self.relations.basis() {
            for (c, v) in row {
                c.hash(&mut h);
                v.numer().to_string().hash(&mut h);
                v.denom().to_string().hash(&mut h);
            }
            u32::MAX.hash(&mut h);
        }
        h.finish()
    }
}

impl std::fmt::Debug for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Presentation({}, {} gens, {} relations)",
            self.name,
            self.alphabet.generators().len(),
            self.relations.dim()
        )
    }
}

/// A map sending each source generator to a combination of target generators
/// and their transposes, extended to trees by substitution.
#[derive(Clone)]
pub struct GenMap {
    pub source: String,
    pub target: String,
    src_alph: Alphabet,
    tgt_alph: Alphabet,
    /// Image of every source symbol as a sorted combination of target symbols.
    images_by_symbol: Vec<Vec<(u16, Rational)>>,
}

fn merge_combo(mut terms: Vec<(u16, Rational)>) -> Vec<(u16, Rational)> {
    terms.sort_by_key(|e| e.0);
    let mut out: Vec<(u16, Rational)> = Vec::with_capacity(terms.len());
    for (s, c) in terms {
        match out.last_mut() {
            Some((t, v)) if *t == s => *v += c,
            _ => out.push((s, c)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

fn transpose_combo(alph: &Alphabet, combo: &[(u16, Rational)]) -> Vec<(u16, Rational)> {
    merge_combo(
        combo
            .iter()
            .map(|(s, c)| {
                let info = alph.symbol(*s);
                (info.transpose, c * Rational::from_integer(info.swap_sign.into()))
            })
            .collect(),
    )
}

fn negate_combo(combo: &[(u16, Rational)]) -> Vec<(u16, Rational)> {
    combo.iter().map(|(s, c)| (*s, -c.clone())).collect()
}

impl GenMap {
    pub fn new(
        src: &Presentation,
        tgt: &Presentation,
        images: &[(String, Vec<GenTerm>)],
    ) -> Result<GenMap> {
        GenMap::with_alphabets(
            src.alphabet.clone(),
            tgt.alphabet.clone(),
            src.name.clone(),
            tgt.name.clone(),
            images,
        )
    }

    pub fn with_alphabets(
        src_alph: Alphabet,
        tgt_alph: Alphabet,
        source: String,
        target: String,
        images: &[(String, Vec<GenTerm>)],
    ) -> Result<GenMap> {
        let gen_count = src_alph.generators().len();
        let mut by_gen: Vec<Option<Vec<(u16, Rational)>>> = vec![None; gen_count];
        for (name, combo) in images {
            let gi = src_alph.generator_index(name).ok_or_else(|| Error::UnknownGenerator {
                name: name.clone(),
                context: format!("source presentation {source}"),
            })?;
            if by_gen[gi].is_some() {
                return Err(Error::Template(format!("generator {name} mapped twice")));
            }
            let mut acc = Vec::with_capacity(combo.len());
            for term in combo {
                let tg = tgt_alph.generator_index(&term.symbol).ok_or_else(|| {
                    Error::UnknownGenerator {
                        name: term.symbol.clone(),
                        context: format!("target presentation {target}"),
                    }
                })?;
                let (sym, sign) = if term.transposed {
                    tgt_alph.transposed_symbol(tg)
                } else {
                    (tgt_alph.primary_symbol(tg), 1)
                };
                acc.push((sym, &term.coeff * Rational::from_integer(sign.into())));
            }
            by_gen[gi] = Some(merge_combo(acc));
        }
        let by_gen: Vec<Vec<(u16, Rational)>> = by_gen
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| {
                    Error::Template(format!(
                        "no image given for generator {}",
                        src_alph.generators()[i].name
                    ))
                })
            })
            .collect::<Result<_>>()?;

        for (gi, g) in src_alph.generators().iter().enumerate() {
            let img = &by_gen[gi];
            let flipped = transpose_combo(&tgt_alph, img);
            let ok = match g.symmetry {
                Symmetry::Sym => flipped == *img,
                Symmetry::Antisym => flipped == negate_combo(img),
                Symmetry::Plain => true,
            };
            if !ok {
                return Err(Error::SymmetryMismatch(format!(
                    "image of {} generator {} is not {}-compatible",
                    g.symmetry.keyword(),
                    g.name,
                    g.symmetry.keyword()
                )));
            }
        }

        let mut images_by_symbol = vec![Vec::new(); src_alph.dim()];
        for (gi, g) in src_alph.generators().iter().enumerate() {
            let s = src_alph.primary_symbol(gi) as usize;
            images_by_symbol[s] = by_gen[gi].clone();
            if g.symmetry == Symmetry::Plain {
                images_by_symbol[s + 1] = transpose_combo(&tgt_alph, &by_gen[gi]);
            }
        }
        Ok(GenMap { source, target, src_alph, tgt_alph, images_by_symbol })
    }

    pub fn from_parsed(p: &ParsedGenMap, src: &Presentation, tgt: &Presentation) -> Result<GenMap> {
        GenMap::new(src, tgt, &p.images)
    }

    pub fn identity(p: &Presentation) -> GenMap {
        let images_by_symbol =
            (0..p.alphabet.dim() as u16).map(|s| vec![(s, Rational::one())]).collect();
        GenMap {
            source: p.name.clone(),
            target: p.name.clone(),
            src_alph: p.alphabet.clone(),
            tgt_alph: p.alphabet.clone(),
            images_by_symbol,
        }
    }

    pub fn source_alphabet(&self) -> &Alphabet {
        &self.src_alph
    }

    pub fn target_alphabet(&self) -> &Alphabet {
        &self.tgt_alph
    }

    /// Matrix of the induced map on generating spaces: one column per source
    /// symbol, expressed in target symbols.
    pub fn symbol_matrix(&self) -> MatrixQ {
        let mut m = MatrixQ::zeros(self.tgt_alph.dim(), self.src_alph.dim());
        for (j, combo) in self.images_by_symbol.iter().enumerate() {
            for (s, c) in combo {
                m.set(*s as usize, j, c.clone());
            }
        }
        m
    }

    /// Substitutes images vertex by vertex.  The results stay canonical
    /// because normalization depends only on leaf labels.
    pub fn map_tree(&self, t: &Tree) -> Vec<(Rational, Tree)> {
        match t {
            Tree::Leaf(i) => vec![(Rational::one(), Tree::Leaf(*i))],
            Tree::Node(s, l, r) => {
                let ls = self.map_tree(l);
                let rs = self.map_tree(r);
                let mut out = Vec::with_capacity(ls.len() * rs.len());
                for (sym, sc) in &self.images_by_symbol[*s as usize] {
                    for (lc, lt) in &ls {
                        for (rc, rt) in &rs {
                            out.push((sc * lc * rc, Tree::node(*sym, lt.clone(), rt.clone())));
                        }
                    }
                }
                out
            }
        }
    }

    pub fn map_row(
        &self,
        src_comp: &FreeComponent,
        tgt_comp: &FreeComponent,
        row: &SparseRow,
    ) -> SparseRow {
        let mut terms = Vec::new();
        for (i, c) in row {
            for (mc, mt) in self.map_tree(src_comp.monomial(*i as usize)) {
                terms.push((c * &mc, mt));
            }
        }
        tgt_comp.row_from_terms(&terms)
    }

    /// Composition: `self` followed by `next`.
    pub fn then(&self, next: &GenMap) -> Result<GenMap> {
        if self.tgt_alph.symmetry_signature() != next.src_alph.symmetry_signature() {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose map into {} with map out of {}",
                self.target, next.source
            )));
        }
        let images_by_symbol = self
            .images_by_symbol
            .iter()
            .map(|combo| {
                merge_combo(
                    combo
                        .iter()
                        .flat_map(|(s, c)| {
                            next.images_by_symbol[*s as usize]
                                .iter()
                                .map(move |(t, d)| (*t, c * d))
                        })
                        .collect(),
                )
            })
            .collect();
        Ok(GenMap {
            source: self.source.clone(),
            target: next.target.clone(),
            src_alph: self.src_alph.clone(),
            tgt_alph: next.tgt_alph.clone(),
            images_by_symbol,
        })
    }

    pub fn same_mapping(&self, other: &GenMap) -> bool {
        self.src_alph.symmetry_signature() == other.src_alph.symmetry_signature()
            && self.tgt_alph.symmetry_signature() == other.tgt_alph.symmetry_signature()
            && self.images_by_symbol == other.images_by_symbol
    }

    /// One line per source generator, in the map-file syntax.
    pub fn describe(&self) -> String {
        let mut out = String::new();
        for (gi, g) in self.src_alph.generators().iter().enumerate() {
            let combo = &self.images_by_symbol[self.src_alph.primary_symbol(gi) as usize];
            let rendered = if combo.is_empty() {
                "0".to_string()
            } else {
                let terms: Vec<(Rational, String)> = combo
                    .iter()
                    .map(|(s, c)| (c.clone(), self.tgt_alph.symbol_label(*s)))
                    .collect();
                dsl::render_signed_terms(&terms)
            };
            out.push_str(&format!("{} -> {}\n", g.name, rendered));
        }
        out
    }
}

pub struct MorphismReport {
    pub ok: bool,
    pub witness: Option<String>,
}

/// Checks that the map carries every source relation into the target
/// relation span; on failure reports the first offending relation.
pub fn morphism_check(map: &GenMap, src: &Presentation, tgt: &Presentation) -> MorphismReport {
    let src_comp = FreeComponent::enumerate(&src.alphabet, 3);
    let tgt_comp = FreeComponent::enumerate(&tgt.alphabet, 3);
    for row in src.relations.basis() {
        let image = map.map_row(&src_comp, &tgt_comp, row);
        if !tgt.relations.contains_sparse(image.clone()) {
            let witness = format!(
                "relation {} maps to {}, which is outside the relation span of {}",
                dsl::render_row(&src.alphabet, &src_comp, row),
                dsl::render_row(&tgt.alphabet, &tgt_comp, &image),
                tgt.name
            );
            return MorphismReport { ok: false, witness: Some(witness) };
        }
    }
    MorphismReport { ok: true, witness: None }
}

/// Rewrites a presentation over a new generating alphabet along an invertible
/// substitution.
pub fn change_generators(
    p: &Presentation,
    tgt_alphabet: Alphabet,
    images: &[(String, Vec<GenTerm>)],
    new_name: &str,
) -> Result<Presentation> {
    let map = GenMap::with_alphabets(
        p.alphabet.clone(),
        tgt_alphabet.clone(),
        p.name.clone(),
        new_name.to_string(),
        images,
    )?;
    let m = map.symbol_matrix();
    if m.nrows() != m.ncols() {
        return Err(Error::NotInvertible(format!(
            "substitution changes the generating dimension from {} to {}",
            m.ncols(),
            m.nrows()
        )));
    }
    crate::linalg::invert(&m)?;
    let src_comp = FreeComponent::enumerate(&p.alphabet, 3);
    let tgt_comp = FreeComponent::enumerate(&tgt_alphabet, 3);
    let rows: Vec<SparseRow> = p
        .relations
        .basis()
        .iter()
        .map(|r| map.map_row(&src_comp, &tgt_comp, r))
        .collect();
    let relations = Subspace::from_sparse_rows(tgt_comp.dim(), rows);
    Ok(Presentation::from_relation_space(new_name.to_string(), tgt_alphabet, relations))
}

const CATALOG_SRC: &str = r#"
operad Lie {
  gen br antisym
  rel br(br(x1,x2),x3) - br(br(x1,x3),x2) - br(x1,br(x2,x3))
}

operad Com {
  gen m sym
  rel m(m(x1,x2),x3) - m(x1,m(x2,x3))
}

operad Ass {
  gen m plain
  rel m(m(x1,x2),x3) - m(x1,m(x2,x3))
}

operad ComMag {
  gen m sym
}

operad lLeib {
  gen m plain
  rel m(x1,m(x2,x3)) - m(m(x1,x2),x3) - m(x2,m(x1,x3))
}

operad rLeib {
  gen m plain
  rel m(m(x1,x2),x3) - m(x1,m(x2,x3)) - m(m(x1,x3),x2)
}

operad sLeib {
  gen br antisym
  gen di sym
  rel br(br(x1,x2),x3) - br(br(x1,x3),x2) - br(x1,br(x2,x3))
  rel di(di(x1,x2),x3)
  rel di(br(x1,x2),x3)
  rel br(di(x1,x2),x3)
}

operad lZinb {
  gen m plain
  rel m(x1,m(x2,x3)) - m(m(x1,x2),x3) - m(m(x2,x1),x3)
}

operad rZinb {
  gen m plain
  rel m(m(x1,x2),x3) - m(x1,m(x2,x3)) - m(x1,m(x3,x2))
}

operad lPerm {
  gen m plain
  rel m(m(x1,x2),x3) - m(x1,m(x2,x3))
  rel m(m(x1,x2),x3) - m(m(x2,x1),x3)
}

operad sPerm {
  gen m plain
  rel m(m(x1,x2),x3) - m(x1,m(x2,x3))
  rel m(m(x1,x2),x3) - m(m(x2,x1),x3)
  rel m(x1,m(x2,x3)) - m(x1,m(x3,x2))
}

operad DiAss {
  gen vd plain
  gen dv plain
  rel dv(dv(x1,x2),x3) - dv(x1,dv(x2,x3))
  rel dv(x1,vd(x2,x3)) - dv(x1,dv(x2,x3))
  rel dv(vd(x1,x2),x3) - vd(x1,dv(x2,x3))
  rel vd(dv(x1,x2),x3) - vd(vd(x1,x2),x3)
  rel vd(vd(x1,x2),x3) - vd(x1,vd(x2,x3))
}

operad sDiAss {
  gen vd plain
  gen dv plain
  rel vd(vd(x1,x2),x3) - vd(dv(x1,x2),x3)
  rel vd(vd(x1,x2),x3) - dv(vd(x1,x2),x3)
  rel vd(vd(x1,x2),x3) - dv(dv(x1,x2),x3)
  rel vd(vd(x1,x2),x3) - vd(x1,vd(x2,x3))
  rel vd(vd(x1,x2),x3) - dv(x1,vd(x2,x3))
  rel vd(vd(x1,x2),x3) - vd(x1,dv(x2,x3))
  rel vd(vd(x1,x2),x3) - dv(x1,dv(x2,x3))
}

operad PreLie {
  gen circ plain
  rel circ(circ(x1,x2),x3) - circ(x1,circ(x2,x3)) - circ(circ(x2,x1),x3) + circ(x2,circ(x1,x3))
}

operad Dend {
  gen succ plain
  gen prec plain
  rel prec(prec(x1,x2),x3) - prec(x1,prec(x2,x3)) - prec(x1,succ(x2,x3))
  rel prec(succ(x1,x2),x3) - succ(x1,prec(x2,x3))
  rel succ(prec(x1,x2),x3) + succ(succ(x1,x2),x3) - succ(x1,succ(x2,x3))
}

operad LieAdm {
  gen circ plain
  rel circ(circ(x1,x2),x3) - circ(circ(x2,x1),x3) - circ(x3,circ(x1,x2)) + circ(x3,circ(x2,x1)) + circ(circ(x2,x3),x1) - circ(circ(x3,x2),x1) - circ(x1,circ(x2,x3)) + circ(x1,circ(x3,x2)) + circ(circ(x3,x1),x2) - circ(circ(x1,x3),x2) - circ(x2,circ(x3,x1)) + circ(x2,circ(x1,x3))
}

operad ComAdm {
  gen di sym
  gen br antisym
  rel di(di(x1,x2),x3) - di(x1,di(x2,x3))
}

operad AssAdm {
  gen succ plain
  gen prec plain
  rel succ(succ(x1,x2),x3) + succ(prec(x1,x2),x3) + prec(succ(x1,x2),x3) + prec(prec(x1,x2),x3) - succ(x1,succ(x2,x3)) - succ(x1,prec(x2,x3)) - prec(x1,succ(x2,x3)) - prec(x1,prec(x2,x3))
}
"#;

static CATALOG: OnceLock<Vec<Presentation>> = OnceLock::new();

pub fn catalog() -> &'static [Presentation] {
    CATALOG.get_or_init(|| {
        dsl::parse_operads(CATALOG_SRC)
            .expect("embedded catalog parses")
            .into_iter()
            .map(|p| Presentation::from_parsed(p).expect("embedded catalog compiles"))
            .collect()
    })
}

/// Well-known shorthands.
fn resolve_alias(name: &str) -> &str {
    match name {
        "Zinb" => "lZinb",
        "Leib" => "lLeib",
        "Perm" => "lPerm",
        other => other,
    }
}

pub fn catalog_get(name: &str) -> Result<&'static Presentation> {
    let resolved = resolve_alias(name);
    catalog().iter().find(|p| p.name == resolved).ok_or_else(|| Error::UnknownCatalog {
        name: name.to_string(),
        available: catalog().iter().map(|p| p.name.as_str()).collect::<Vec<_>>().join(", "),
    })
}

/// Finds a catalog entry with the same structure, if any.
pub fn match_catalog(p: &Presentation) -> Option<&'static Presentation> {
    catalog().iter().find(|c| c.structure_eq(p))
}

/// The arrows of the morphism grid: columns run Leibniz-flavored, dialgebra,
/// and commutative-flavored; rows run from the two-product level down to the
/// pre-Lie level.  Bodies are in the map-file syntax.
pub const DIAGRAM_ARROWS: &[(&str, &str, &str)] = &[
    ("lLeib", "DiAss", "m -> vd - dv'"),
    ("DiAss", "lPerm", "vd -> m\ndv -> m'"),
    ("sLeib", "sDiAss", "br -> vd + dv - vd' - dv'\ndi -> vd - dv' + vd' - dv"),
    ("sDiAss", "sPerm", "vd -> m\ndv -> m'"),
    ("Lie", "Ass", "br -> m - m'"),
    ("Ass", "Com", "m -> m"),
    ("LieAdm", "AssAdm", "circ -> succ - prec'"),
    ("AssAdm", "ComAdm", "succ -> 1/2 di + 1/2 br\nprec -> 1/2 di - 1/2 br"),
    ("PreLie", "Dend", "circ -> succ - prec'"),
    ("Dend", "lZinb", "succ -> m\nprec -> m'"),
    ("lLeib", "sLeib", "m -> 1/2 br + 1/2 di"),
    ("sLeib", "Lie", "br -> 2 br\ndi -> 0"),
    ("Lie", "LieAdm", "br -> circ - circ'"),
    ("LieAdm", "PreLie", "circ -> circ"),
    ("DiAss", "sDiAss", "vd -> vd\ndv -> dv"),
    ("sDiAss", "Ass", "vd -> m\ndv -> m"),
    ("Ass", "AssAdm", "m -> succ + prec"),
    ("AssAdm", "Dend", "succ -> succ\nprec -> prec"),
    ("lPerm", "sPerm", "m -> m"),
    ("sPerm", "Com", "m -> m"),
    ("Com", "ComAdm", "m -> di"),
    ("ComAdm", "lZinb", "di -> m + m'\nbr -> m - m'"),
];

/// Commuting faces of the grid: `(a, b, c, d)` asserts that a -> b -> d and
/// a -> c -> d agree on generators.
pub const DIAGRAM_SQUARES: &[(&str, &str, &str, &str)] = &[
    ("lLeib", "DiAss", "sLeib", "sDiAss"),
    ("DiAss", "lPerm", "sDiAss", "sPerm"),
    ("sLeib", "sDiAss", "Lie", "Ass"),
    ("sDiAss", "sPerm", "Ass", "Com"),
    ("Lie", "Ass", "LieAdm", "AssAdm"),
    ("Ass", "Com", "AssAdm", "ComAdm"),
    ("LieAdm", "AssAdm", "PreLie", "Dend"),
    ("AssAdm", "ComAdm", "Dend", "lZinb"),
];

pub fn diagram_arrow(src: &str, tgt: &str) -> Result<GenMap> {
    let (s, t, body) = DIAGRAM_ARROWS
        .iter()
        .find(|(a, b, _)| *a == src && *b == tgt)
        .ok_or_else(|| Error::UnknownCatalog {
            name: format!("{src} -> {tgt}"),
            available: DIAGRAM_ARROWS
                .iter()
                .map(|(a, b, _)| format!("{a} -> {b}"))
                .collect::<Vec<_>>()
                .join(", "),
        })?;
    let text = format!("source {s}\ntarget {t}\n{body}");
    let parsed = dsl::parse_genmap(&text)?;
    GenMap::from_parsed(&parsed, catalog_get(s)?, catalog_get(t)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_loads_and_counts() {
        assert_eq!(catalog().len(), 18);
        assert!(catalog_get("sLeib").is_ok());
        assert_eq!(catalog_get("Zinb").unwrap().name, "lZinb");
        let err = catalog_get("nope").unwrap_err().to_string();
        assert!(err.contains("sDiAss"), "{err}");
    }

    #[test]
    fn arity3_relation_and_quotient_dims() {
        let expect: &[(&str, usize, usize)] = &[
            ("Lie", 1, 2),
            ("Com", 2, 1),
            ("Ass", 6, 6),
            ("ComMag", 0, 3),
            ("lLeib", 6, 6),
            ("rLeib", 6, 6),
            ("sLeib", 10, 2),
            ("lZinb", 6, 6),
            ("rZinb", 6, 6),
            ("lPerm", 9, 3),
            ("sPerm", 11, 1),
            ("DiAss", 30, 18),
            ("sDiAss", 42, 6),
            ("PreLie", 3, 9),
            ("Dend", 18, 30),
            ("LieAdm", 1, 11),
            ("ComAdm", 2, 10),
            ("AssAdm", 6, 42),
        ];
        for (name, rel, quot) in expect {
            let p = catalog_get(name).unwrap();
            assert_eq!(p.relations.dim(), *rel, "relation dim of {name}");
            assert_eq!(p.quotient_dim3(), *quot, "quotient dim of {name}");
        }
    }

    #[test]
    fn template_validation_errors() {
        let bad = dsl::parse_operads("operad X { gen m plain rel m(x1,x1) }").unwrap();
        assert!(Presentation::from_parsed(bad.into_iter().next().unwrap()).is_err());
        let bad = dsl::parse_operads("operad X { gen m plain rel m(x1,x3) }").unwrap();
        assert!(Presentation::from_parsed(bad.into_iter().next().unwrap()).is_err());
        let bad = dsl::parse_operads("operad X { gen m plain rel m(x1,x2) }").unwrap();
        assert!(Presentation::from_parsed(bad.into_iter().next().unwrap()).is_err());
        let bad = dsl::parse_operads("operad X { gen m plain rel q(x1,m(x2,x3)) }").unwrap();
        assert!(Presentation::from_parsed(bad.into_iter().next().unwrap()).is_err());
    }

    #[test]
    fn genmap_symmetry_validation() {
        let lie = catalog_get("Lie").unwrap();
        let ass = catalog_get("Ass").unwrap();
        // br is antisymmetric, so its image must be transpose-negated
        let bad = dsl::parse_genmap("source Lie\ntarget Ass\nbr -> m").unwrap();
        assert!(matches!(
            GenMap::from_parsed(&bad, lie, ass),
            Err(Error::SymmetryMismatch(_))
        ));
        let good = dsl::parse_genmap("source Lie\ntarget Ass\nbr -> m - m'").unwrap();
        assert!(GenMap::from_parsed(&good, lie, ass).is_ok());
    }

    #[test]
    fn commutator_embedding_is_a_morphism_and_naive_map_is_not() {
        let lie = catalog_get("Lie").unwrap();
        let ass = catalog_get("Ass").unwrap();
        let map = diagram_arrow("Lie", "Ass").unwrap();
        let report = morphism_check(&map, lie, ass);
        assert!(report.ok);

        let lleib = catalog_get("lLeib").unwrap();
        let diass = catalog_get("DiAss").unwrap();
        let naive = dsl::parse_genmap("source lLeib\ntarget DiAss\nm -> vd").unwrap();
        let naive = GenMap::from_parsed(&naive, lleib, diass).unwrap();
        let report = morphism_check(&naive, lleib, diass);
        assert!(!report.ok);
        let w = report.witness.unwrap();
        assert!(w.contains("outside the relation span"), "{w}");
    }

    #[test]
    fn composition_matches_pointwise_mapping() {
        let f = diagram_arrow("Lie", "Ass").unwrap();
        let g = diagram_arrow("Ass", "AssAdm").unwrap();
        let fg = f.then(&g).unwrap();
        let direct = {
            let parsed = dsl::parse_genmap(
                "source Lie\ntarget AssAdm\nbr -> succ + prec - succ' - prec'",
            )
            .unwrap();
            GenMap::from_parsed(&parsed, catalog_get("Lie").unwrap(), catalog_get("AssAdm").unwrap())
                .unwrap()
        };
        assert!(fg.same_mapping(&direct));
    }

    #[test]
    fn change_of_generators_round_trips() {
        let comadm = catalog_get("ComAdm").unwrap();
        let single = Alphabet::new(vec![crate::trees::Generator {
            name: "c".into(),
            symmetry: Symmetry::Plain,
        }])
        .unwrap();
        let fwd = [
            (
                "di".to_string(),
                vec![
                    GenTerm { coeff: Rational::one(), symbol: "c".into(), transposed: false },
                    GenTerm { coeff: Rational::one(), symbol: "c".into(), transposed: true },
                ],
            ),
            (
                "br".to_string(),
                vec![
                    GenTerm { coeff: Rational::one(), symbol: "c".into(), transposed: false },
                    GenTerm { coeff: -Rational::one(), symbol: "c".into(), transposed: true },
                ],
            ),
        ];
        let single_form = change_generators(comadm, single, &fwd, "ComAdmOneOp").unwrap();
        assert_eq!(single_form.relations.dim(), 2);
        assert_eq!(single_form.quotient_dim3(), 10);

        let back = [(
            "c".to_string(),
            vec![
                GenTerm { coeff: crate::linalg::rat(1, 2), symbol: "di".into(), transposed: false },
                GenTerm { coeff: crate::linalg::rat(1, 2), symbol: "br".into(), transposed: false },
            ],
        )];
        let round =
            change_generators(&single_form, comadm.alphabet.clone(), &back, "ComAdmBack").unwrap();
        assert!(round.structure_eq(comadm));

        // a non-invertible substitution is rejected
        let squash = [
            ("di".to_string(), vec![GenTerm {
                coeff: Rational::one(),
                symbol: "c".into(),
                transposed: false,
            }, GenTerm {
                coeff: Rational::one(),
                symbol: "c".into(),
                transposed: true,
            }]),
            ("br".to_string(), vec![]),
        ];
        let single2 = Alphabet::new(vec![crate::trees::Generator {
            name: "c".into(),
            symmetry: Symmetry::Plain,
        }])
        .unwrap();
        assert!(matches!(
            change_generators(comadm, single2, &squash, "bad"),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn print_parse_round_trip() {
        let sleib = catalog_get("sLeib").unwrap();
        let printed = dsl::print_presentation(sleib);
        let parsed = dsl::parse_operads(&printed).unwrap();
        let back = Presentation::from_parsed(parsed.into_iter().next().unwrap()).unwrap();
        assert!(back.structure_eq(sleib));
        assert_eq!(back.name, "sLeib");
    }

    #[test]
    fn fingerprints_separate_different_relation_spaces() {
        let a = catalog_get("lLeib").unwrap().fingerprint();
        let b = catalog_get("rLeib").unwrap().fingerprint();
        let c = catalog_get("lLeib").unwrap().fingerprint();
        assert_ne!(a, b);
        assert_eq!(a, c);
    }

    #[test]
    fn all_diagram_arrows_resolve() {
        for (s, t, _) in DIAGRAM_ARROWS {
            let map = diagram_arrow(s, t).unwrap();
            assert_eq!(map.source, *s);
            assert_eq!(map.target, *t);
        }
        assert!(diagram_arrow("Lie", "Com").is_err());
    }
}
