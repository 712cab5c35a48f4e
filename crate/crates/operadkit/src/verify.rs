//! One-shot verification sweep over everything the library can recompute:
//! dimension counts, duality pairings, series inversions, morphism checks,
//! and the algebra-level models.  Each check returns pass, fail, or skip;
//! skips happen when the configured arity ceiling is below what a check
//! needs, so a capped run still reports honestly on the rest.

use std::collections::BTreeMap;

use crate::algebras::{
    self, apply_functor, check_identities, check_type, free_lie, free_sdiass, free_sleib,
    free_sperm, multilinear_rank, quotient_construction, samples, Binding, FreeAlgebra,
};
use crate::error::{Error, Result};
use crate::expansion::{arity_ceiling, hadamard_dims, quotient_dims, shape_basis_report};
use crate::koszul::{dual, evidence_ceiling, koszul_evidence};
use crate::presentations::{
    catalog_get, diagram_arrow, match_catalog, morphism_check, Presentation, DIAGRAM_ARROWS,
    DIAGRAM_SQUARES,
};
use crate::series::{inversion_defect, Egf};

pub enum Status {
    Pass,
    Fail(String),
    Skip(String),
}

pub struct CheckOutcome {
    pub label: String,
    pub status: Status,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        !matches!(self.status, Status::Fail(_))
    }

    pub fn render(&self) -> String {
        match &self.status {
            Status::Pass => format!("PASS  {}", self.label),
            Status::Fail(msg) => format!("FAIL  {}: {}", self.label, msg),
            Status::Skip(msg) => format!("SKIP  {} ({})", self.label, msg),
        }
    }
}

fn outcome(label: &str, r: Result<()>) -> CheckOutcome {
    let status = match r {
        Ok(()) => Status::Pass,
        Err(Error::Capacity {
            requested,
            ceiling,
            context,
        }) => Status::Skip(format!(
            "capacity: arity {requested} needed, ceiling for {context} is {ceiling}"
        )),
        Err(e) => Status::Fail(e.to_string()),
    };
    CheckOutcome {
        label: label.to_string(),
        status,
    }
}

fn fail(msg: String) -> Error {
    Error::CheckFailed(msg)
}

fn need_arity(p: &Presentation, target: usize) -> Result<()> {
    let ceiling = arity_ceiling(p.alphabet.dim());
    if target > ceiling {
        return Err(Error::Capacity {
            requested: target,
            ceiling,
            context: p.name.clone(),
        });
    }
    Ok(())
}

fn dims_check(name: &str, want: &[usize]) -> Result<()> {
    let p = catalog_get(name)?;
    need_arity(p, want.len())?;
    let got = quotient_dims(p, want.len())?;
    if got != want {
        return Err(fail(format!("{name} dimensions {got:?}, expected {want:?}")));
    }
    Ok(())
}

fn split_check(name: &str, ambient: usize, relations: usize, quotient: usize) -> Result<()> {
    let p = catalog_get(name)?;
    let (a, r, q) = (p.ambient_dim3(), p.relations.dim(), p.quotient_dim3());
    if (a, r, q) != (ambient, relations, quotient) {
        return Err(fail(format!(
            "{name} arity-3 split is {a} = {r} + {q}, expected {ambient} = {relations} + {quotient}"
        )));
    }
    Ok(())
}

fn dual_check(name: &str, expect: &str) -> Result<()> {
    let p = catalog_get(name)?;
    let d = dual(p)?;
    match match_catalog(&d) {
        Some(hit) if hit.name == expect => Ok(()),
        Some(hit) => Err(fail(format!(
            "dual of {name} matched {} instead of {expect}",
            hit.name
        ))),
        None => Err(fail(format!("dual of {name} matches no catalog entry"))),
    }
}

fn duality_table_check() -> Result<()> {
    let pairs = [
        ("Lie", "Com"),
        ("Ass", "Ass"),
        ("lLeib", "lZinb"),
        ("lPerm", "PreLie"),
        ("sLeib", "ComAdm"),
        ("sDiAss", "AssAdm"),
        ("sPerm", "LieAdm"),
        ("Dend", "DiAss"),
    ];
    for (a, b) in pairs {
        dual_check(a, b)?;
        dual_check(b, a)?;
        let p = catalog_get(a)?;
        let dd = dual(&dual(p)?)?;
        if !p.structure_eq(&dd) {
            return Err(fail(format!("double dual of {a} is not {a} itself")));
        }
    }
    Ok(())
}

fn series_table_check(source: &str, target_label: &str, want: &[&str]) -> Result<()> {
    let f = Egf::named(source, want.len())?;
    let g = f.invert()?;
    let dims = g.integer_dims()?;
    let got: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
    if got != want {
        return Err(fail(format!(
            "inverting the {source} series gave {got:?} for {target_label}, expected {want:?}"
        )));
    }
    if inversion_defect(&f, &g).is_some() || inversion_defect(&g, &f).is_some() {
        return Err(fail(format!(
            "{source} series and its inverse fail the compositional identity"
        )));
    }
    Ok(())
}

fn saturation_vs_series(name: &str, source_series: &str, target: usize) -> Result<()> {
    let p = catalog_get(name)?;
    need_arity(p, target)?;
    let got = quotient_dims(p, target)?;
    let f = Egf::named(source_series, target)?;
    let expect = f.invert()?.integer_dims()?;
    let expect: Vec<usize> = expect
        .iter()
        .map(|d| {
            d.to_string()
                .parse::<usize>()
                .map_err(|_| fail(format!("series term {d} out of range")))
        })
        .collect::<Result<_>>()?;
    if got != expect {
        return Err(fail(format!(
            "saturation of {name} gives {got:?}, series inversion gives {expect:?}"
        )));
    }
    Ok(())
}

fn evidence_check(name: &str) -> Result<()> {
    let p = catalog_get(name)?;
    let target = evidence_ceiling(p.alphabet.dim());
    need_arity(p, target)?;
    let report = koszul_evidence(p, target)?;
    if !report.pass() {
        return Err(fail(format!(
            "inversion defect at order {:?} for {name} against {}",
            report.first_defect, report.dual_name
        )));
    }
    Ok(())
}

fn damaged_evidence_check() -> Result<()> {
    let sleib = catalog_get("sLeib")?;
    let rows = sleib.relations.basis();
    let damaged = Presentation::from_relation_space(
        "damaged".to_string(),
        sleib.alphabet.clone(),
        crate::linalg::Subspace::from_sparse_rows(
            sleib.relations.ambient(),
            rows[..rows.len() - 1].to_vec(),
        ),
    );
    need_arity(&damaged, 5)?;
    let report = koszul_evidence(&damaged, 5)?;
    if report.pass() {
        return Err(fail(
            "dropping a relation still passed the inversion-defect test".to_string(),
        ));
    }
    Ok(())
}

fn arrows_check() -> Result<()> {
    for (src, tgt, _) in DIAGRAM_ARROWS {
        let map = diagram_arrow(src, tgt)?;
        let report = morphism_check(&map, catalog_get(src)?, catalog_get(tgt)?);
        if !report.ok {
            return Err(fail(format!(
                "{src} -> {tgt}: {}",
                report.witness.unwrap_or_default()
            )));
        }
    }
    Ok(())
}

fn squares_check() -> Result<()> {
    for (a, b, c, d) in DIAGRAM_SQUARES {
        let top = diagram_arrow(a, b)?.then(&diagram_arrow(b, d)?)?;
        let left = diagram_arrow(a, c)?.then(&diagram_arrow(c, d)?)?;
        if !top.same_mapping(&left) {
            return Err(fail(format!("square {a} {b} / {c} {d} does not commute")));
        }
    }
    Ok(())
}

fn leibniz_span_check() -> Result<()> {
    let left = catalog_get("lLeib")?;
    let right = catalog_get("rLeib")?;
    let single = check_type("sLeib")?;
    let span = left.relations.sum(&right.relations);
    if span != single.relations {
        return Err(fail(format!(
            "left and right Leibniz relations span dimension {}, single-operation form has {}",
            span.dim(),
            single.relations.dim()
        )));
    }
    Ok(())
}

fn zinbiel_intersection_check() -> Result<()> {
    let left = catalog_get("lZinb")?;
    let right = catalog_get("rZinb")?;
    let single = check_type("ComAdm")?;
    let meet = left.relations.intersect(&right.relations);
    if meet != single.relations {
        return Err(fail(format!(
            "Zinbiel relation intersection has dimension {}, single-operation form has {}",
            meet.dim(),
            single.relations.dim()
        )));
    }
    Ok(())
}

fn hadamard_check(a: &str, b: &str, want_of: &str) -> Result<()> {
    let pa = catalog_get(a)?;
    let pb = catalog_get(b)?;
    let pw = catalog_get(want_of)?;
    let target = 5usize;
    need_arity(pa, target)?;
    need_arity(pb, target)?;
    need_arity(pw, target)?;
    let got = hadamard_dims(pa, pb, target)?;
    let want = quotient_dims(pw, target)?;
    if got != want {
        return Err(fail(format!(
            "{a} x {b} has dimensions {got:?}, {want_of} has {want:?}"
        )));
    }
    Ok(())
}

fn shape_basis_pass_check(name: &str, through: usize) -> Result<()> {
    let p = catalog_get(name)?;
    need_arity(p, through)?;
    for n in 3..=through {
        let report = shape_basis_report(p, n)?;
        if !report.pass {
            return Err(fail(format!(
                "a planar shape fails to span the {name} quotient at arity {n}"
            )));
        }
    }
    Ok(())
}

fn shape_basis_fail_check() -> Result<()> {
    let p = catalog_get("Lie")?;
    need_arity(p, 3)?;
    let report = shape_basis_report(p, 3)?;
    if report.pass {
        return Err(fail(
            "single-shape decorations unexpectedly span the bracket quotient at arity 3"
                .to_string(),
        ));
    }
    Ok(())
}

fn assert_laws(alg: &algebras::Algebra, ty: &str, bind: &Binding, what: &str) -> Result<()> {
    let p = check_type(ty)?;
    let report = check_identities(alg, p, bind)?;
    if !report.ok {
        return Err(fail(format!(
            "{what} breaks the {ty} laws: {}",
            report.failures.first().cloned().unwrap_or_default()
        )));
    }
    Ok(())
}

fn cyclic_table_check() -> Result<()> {
    let alg = samples::cyclic_leibniz();
    let bind = algebras::parse_binding("m=mul")?;
    assert_laws(&alg, "lLeib", &bind, "the cyclic two-dimensional table")?;
    let right = check_identities(&alg, check_type("rLeib")?, &bind)?;
    if right.ok {
        return Err(fail(
            "the cyclic table unexpectedly satisfies the right Leibniz law too".to_string(),
        ));
    }
    Ok(())
}

fn derived_leibniz_check() -> Result<()> {
    let free = free_sdiass(2, 3)?;
    let derived = apply_functor(&free.algebra, "dialg_to_leibniz", &Binding::new())?;
    assert_laws(
        &derived,
        "sLeib",
        &Binding::new(),
        "the derived operation on the free symmetric dialgebra",
    )
}

fn witt_check() -> Result<()> {
    let free = free_lie(2, 6)?;
    let mut by_degree: BTreeMap<usize, usize> = BTreeMap::new();
    for name in &free.algebra.basis {
        let len = name.chars().filter(|c| c.is_ascii_alphabetic()).count();
        *by_degree.entry(len).or_insert(0) += 1;
    }
    let got: Vec<usize> = (1..=6).map(|d| by_degree.get(&d).copied().unwrap_or(0)).collect();
    if got != [2, 1, 2, 3, 6, 9] {
        return Err(fail(format!(
            "free Lie degrees on two generators count {got:?}, expected [2, 1, 2, 3, 6, 9]"
        )));
    }
    assert_laws(&free.algebra, "Lie", &Binding::new(), "the free Lie table")
}

fn multilinear_check() -> Result<()> {
    let cases: [(&str, FreeAlgebra, [usize; 3]); 4] = [
        ("Lie", free_lie(3, 3)?, [1, 1, 2]),
        ("sLeib", free_sleib(3, 3)?, [1, 2, 2]),
        ("sPerm", free_sperm(3, 3)?, [1, 2, 1]),
        ("sDiAss", free_sdiass(3, 3)?, [1, 4, 6]),
    ];
    for (ty, free, dims) in &cases {
        let p = check_type(ty)?;
        for n in 1..=3usize {
            let gens: Vec<_> = free.generators[..n]
                .iter()
                .map(|&g| free.algebra.unit_vector(g))
                .collect();
            let rank = multilinear_rank(&free.algebra, p, &Binding::new(), &gens)?;
            if rank != dims[n - 1] {
                return Err(fail(format!(
                    "multilinear span of the free {ty} algebra at arity {n} has rank {rank}, expected {}",
                    dims[n - 1]
                )));
            }
        }
    }
    Ok(())
}

fn squares_quotient_check() -> Result<()> {
    let free = free_sleib(2, 3)?;
    let q = quotient_construction(&free.algebra, "squares", &Binding::new())?;
    let lie = free_lie(2, 3)?;
    if q.algebra.dim != lie.algebra.dim {
        return Err(fail(format!(
            "collapsing squares leaves dimension {}, free Lie has {}",
            q.algebra.dim, lie.algebra.dim
        )));
    }
    assert_laws(
        &q.algebra,
        "Lie",
        &algebras::parse_binding("br=mul")?,
        "the squares quotient",
    )
}

fn diperm_quotient_check() -> Result<()> {
    let free = samples::free_diass(2, 3)?;
    let q = quotient_construction(&free.algebra, "diperm", &Binding::new())?;
    if q.algebra.dim != 12 {
        return Err(fail(format!(
            "identifying the two products leaves dimension {}, expected 12",
            q.algebra.dim
        )));
    }
    assert_laws(&q.algebra, "lPerm", &Binding::new(), "the identified quotient")
}

/// Runs the complete verification sweep.  Order is fixed so the printed
/// report is byte-stable.
pub fn verification_report() -> Vec<CheckOutcome> {
    let mut out = Vec::new();

    out.push(outcome(
        "catalog closes under Koszul duality (eight pairs, double dual returns)",
        duality_table_check(),
    ));
    out.push(outcome(
        "arity-3 split for the symmetric Leibniz presentation: 12 = 10 + 2",
        split_check("sLeib", 12, 10, 2),
    ));
    out.push(outcome(
        "arity-3 split for the symmetric dialgebra presentation: 48 = 42 + 6",
        split_check("sDiAss", 48, 42, 6),
    ));
    out.push(outcome(
        "left plus right Leibniz relations span the single-operation symmetric form",
        leibniz_span_check(),
    ));
    out.push(outcome(
        "left and right Zinbiel relations intersect in the single-operation dual form",
        zinbiel_intersection_check(),
    ));

    out.push(outcome(
        "bracket dimensions count (n-1)! through arity 6",
        dims_check("Lie", &[1, 1, 2, 6, 24, 120]),
    ));
    out.push(outcome(
        "symmetric Leibniz dimensions run 1, 2, 2, 6, 24",
        dims_check("sLeib", &[1, 2, 2, 6, 24]),
    ));
    out.push(outcome(
        "symmetric Perm dimensions run 1, 2, 1, 1, 1",
        dims_check("sPerm", &[1, 2, 1, 1, 1]),
    ));
    out.push(outcome(
        "symmetric dialgebra dimensions run 1, 4, 6, 24, 120",
        dims_check("sDiAss", &[1, 4, 6, 24, 120]),
    ));

    out.push(outcome(
        "ten coefficients of the commutative-admissible series come from inverting the symmetric Leibniz series",
        series_table_check(
            "sLeib",
            "the commutative-admissible table",
            &[
                "1", "2", "10", "86", "1036", "16052", "304060", "6807656", "175881016",
                "5150163272",
            ],
        ),
    ));
    out.push(outcome(
        "ten coefficients of the associative-admissible series come from inverting the symmetric dialgebra series",
        series_table_check(
            "sDiAss",
            "the associative-admissible table",
            &[
                "1", "4", "42", "744", "18480", "590400", "23058000", "1064367360",
                "56693831040", "3422589811200",
            ],
        ),
    ));
    out.push(outcome(
        "ten coefficients of the Lie-admissible series come from inverting the symmetric Perm series",
        series_table_check(
            "sPerm",
            "the Lie-admissible table",
            &[
                "1", "2", "11", "101", "1299", "21484", "434314", "10376729", "286071990",
                "8938291341",
            ],
        ),
    ));

    out.push(outcome(
        "saturated commutative-admissible dimensions match the inverted series through arity 5 (1036 at arity 5)",
        saturation_vs_series("ComAdm", "sLeib", 5),
    ));
    out.push(outcome(
        "saturated Lie-admissible dimensions match the inverted series through arity 5 (1299 at arity 5)",
        saturation_vs_series("LieAdm", "sPerm", 5),
    ));
    out.push(outcome(
        "saturated associative-admissible dimensions match the inverted series through arity 4 (744 at arity 4)",
        saturation_vs_series("AssAdm", "sDiAss", 4),
    ));

    for name in ["sLeib", "sDiAss", "sPerm", "Lie", "Com", "Ass", "lLeib", "lPerm", "DiAss"] {
        out.push(outcome(
            &format!("inversion identity holds for {name} against its dual"),
            evidence_check(name),
        ));
    }
    out.push(outcome(
        "a damaged presentation fails the inversion identity",
        damaged_evidence_check(),
    ));

    out.push(outcome(
        "all twenty-two catalog arrows carry relations into relations",
        arrows_check(),
    ));
    out.push(outcome(
        "all eight catalog squares commute",
        squares_check(),
    ));

    out.push(outcome(
        "pointwise product of bracket and symmetric Perm dimensions gives the symmetric Leibniz table",
        hadamard_check("Lie", "sPerm", "sLeib"),
    ));
    out.push(outcome(
        "pointwise product of associative and symmetric Perm dimensions gives the symmetric dialgebra table",
        hadamard_check("Ass", "sPerm", "sDiAss"),
    ));
    out.push(outcome(
        "one decoration set per planar shape spans the commutative quotient through arity 5",
        shape_basis_pass_check("Com", 5),
    ));
    out.push(outcome(
        "one decoration set per planar shape spans the symmetric Perm quotient through arity 5",
        shape_basis_pass_check("sPerm", 5),
    ));
    out.push(outcome(
        "single-shape decorations do not span the bracket quotient at arity 3",
        shape_basis_fail_check(),
    ));

    out.push(outcome(
        "the cyclic two-dimensional table satisfies the left Leibniz law only",
        cyclic_table_check(),
    ));
    out.push(outcome(
        "the derived single operation on the free symmetric dialgebra satisfies both Leibniz laws",
        derived_leibniz_check(),
    ));
    out.push(outcome(
        "free Lie degrees on two generators count 2, 1, 2, 3, 6, 9",
        witt_check(),
    ));
    out.push(outcome(
        "multilinear spans of free algebras match operad dimensions through arity 3",
        multilinear_check(),
    ));
    out.push(outcome(
        "collapsing squares takes the free symmetric Leibniz algebra onto the free Lie algebra",
        squares_quotient_check(),
    ));
    out.push(outcome(
        "identifying the two dialgebra products lands on the Perm laws",
        diperm_quotient_check(),
    ));

    out
}
