//! Acceptance gate: one test per headline claim, each printing a single
//! verdict line.  Run with `--nocapture` to see the lines for passing
//! criteria too; a failing criterion always shows its line.

use operadkit::algebras::{
    apply_functor, check_identities, check_type, free_lie, free_sdiass, free_sleib, free_sperm,
    multilinear_rank, quotient_construction, samples, scrambles, Binding, FreeAlgebra,
};
use operadkit::dsl::GenTerm;
use operadkit::expansion::{hadamard_dims, quotient_dims, shape_basis_report};
use operadkit::koszul::{dual, koszul_evidence};
use operadkit::linalg::{rat_int, Subspace};
use operadkit::presentations::{
    catalog_get, change_generators, diagram_arrow, match_catalog, morphism_check, Presentation,
    DIAGRAM_ARROWS, DIAGRAM_SQUARES,
};
use operadkit::series::{inversion_defect, Egf};
use operadkit::Result;

fn criterion(name: &str, run: impl FnOnce() -> Result<()>) {
    match run() {
        Ok(()) => println!("PASS  {name}"),
        Err(e) => {
            println!("FAIL  {name}: {e}");
            panic!("criterion {name} failed: {e}");
        }
    }
}

fn expect(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(operadkit::Error::CheckFailed(msg.to_string()))
    }
}

#[test]
fn criterion_duality_table() {
    criterion("the eight dual pairs close inside the catalog", || {
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
            let pa = catalog_get(a)?;
            let da = dual(pa)?;
            expect(
                match_catalog(&da).map(|p| p.name.as_str()) == Some(b),
                &format!("dual of {a} is not {b}"),
            )?;
            let db = dual(catalog_get(b)?)?;
            expect(
                match_catalog(&db).map(|p| p.name.as_str()) == Some(a),
                &format!("dual of {b} is not {a}"),
            )?;
            expect(
                dual(&da)?.structure_eq(pa),
                &format!("double dual of {a} differs from {a}"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_arity3_splits() {
    criterion("arity-3 splits: 12 = 10 + 2 and 48 = 42 + 6", || {
        let sleib = catalog_get("sLeib")?;
        expect(
            (sleib.ambient_dim3(), sleib.relations.dim(), sleib.quotient_dim3()) == (12, 10, 2),
            "two-operation Leibniz split is off",
        )?;
        let sdiass = catalog_get("sDiAss")?;
        expect(
            (sdiass.ambient_dim3(), sdiass.relations.dim(), sdiass.quotient_dim3()) == (48, 42, 6),
            "two-operation dialgebra split is off",
        )?;
        Ok(())
    });
}

#[test]
fn criterion_series_tables() {
    criterion("ten-term inverted dimension series match the stated tables", || {
        let tables: [(&str, [&str; 10]); 3] = [
            (
                "sLeib",
                ["1", "2", "10", "86", "1036", "16052", "304060", "6807656", "175881016",
                 "5150163272"],
            ),
            (
                "sDiAss",
                ["1", "4", "42", "744", "18480", "590400", "23058000", "1064367360",
                 "56693831040", "3422589811200"],
            ),
            (
                "sPerm",
                ["1", "2", "11", "101", "1299", "21484", "434314", "10376729", "286071990",
                 "8938291341"],
            ),
        ];
        for (name, want) in tables {
            let f = Egf::named(name, want.len())?;
            let g = f.invert()?;
            let got: Vec<String> = g.integer_dims()?.iter().map(|d| d.to_string()).collect();
            expect(got == want, &format!("inverted {name} series differs: {got:?}"))?;
            expect(
                inversion_defect(&f, &g).is_none() && inversion_defect(&g, &f).is_none(),
                &format!("{name} series inverse fails the compositional identity"),
            )?;
        }
        Ok(())
    });
}

#[test]
fn criterion_saturation_oracle() {
    criterion("relation saturation reproduces the series tables", || {
        for (name, want) in [
            ("ComAdm", vec![1, 2, 10, 86, 1036]),
            ("LieAdm", vec![1, 2, 11, 101, 1299]),
            ("AssAdm", vec![1, 4, 42, 744]),
        ] {
            let got = quotient_dims(catalog_get(name)?, want.len())?;
            expect(got == want, &format!("{name} saturation gives {got:?}"))?;
        }
        Ok(())
    });
}

#[test]
fn criterion_koszul_evidence() {
    criterion("dimension-series duality holds, and a damaged input fails it", || {
        for (name, depth) in [("sLeib", 5), ("sDiAss", 4), ("sPerm", 5)] {
            let report = koszul_evidence(catalog_get(name)?, depth)?;
            expect(
                report.pass(),
                &format!("{name}: defect at {:?}", report.first_defect),
            )?;
        }
        // control: drop one relation and the same test must detect it
        let sleib = catalog_get("sLeib")?;
        let rows = sleib.relations.basis();
        let damaged = Presentation::from_relation_space(
            "damaged".to_string(),
            sleib.alphabet.clone(),
            Subspace::from_sparse_rows(sleib.relations.ambient(), rows[..rows.len() - 1].to_vec()),
        );
        let report = koszul_evidence(&damaged, 5)?;
        expect(!report.pass(), "a weakened relation set still passed")?;
        Ok(())
    });
}

#[test]
fn criterion_diagram() {
    criterion("every catalog arrow is a morphism and every square commutes", || {
        for (src, tgt, _) in DIAGRAM_ARROWS {
            let map = diagram_arrow(src, tgt)?;
            let report = morphism_check(&map, catalog_get(src)?, catalog_get(tgt)?);
            expect(report.ok, &format!("arrow {src} -> {tgt} breaks a relation"))?;
        }
        for (a, b, c, d) in DIAGRAM_SQUARES {
            let top = diagram_arrow(a, b)?.then(&diagram_arrow(b, d)?)?;
            let left = diagram_arrow(a, c)?.then(&diagram_arrow(c, d)?)?;
            expect(top.same_mapping(&left), &format!("square {a},{b},{c},{d}"))?;
        }
        // one-operation reformulations: the two Leibniz laws together are the
        // symmetric form, and the two Zinbiel laws meet in its dual
        let span = catalog_get("lLeib")?.relations.sum(&catalog_get("rLeib")?.relations);
        expect(
            span == check_type("sLeib")?.relations,
            "left + right Leibniz span is not the one-operation symmetric form",
        )?;
        let meet = catalog_get("lZinb")?
            .relations
            .intersect(&catalog_get("rZinb")?.relations);
        expect(
            meet == check_type("ComAdm")?.relations,
            "Zinbiel intersection is not the one-operation admissible form",
        )?;
        // cross route: polarize the dual of the symmetric Leibniz presentation
        // down to one plain product and compare against the same intersection
        let term = |sym: &str, c: i64, t: bool| GenTerm {
            coeff: rat_int(c),
            symbol: sym.to_string(),
            transposed: t,
        };
        let images = [
            ("br!".to_string(), vec![term("mul", 1, false), term("mul", 1, true)]),
            ("di!".to_string(), vec![term("mul", 1, false), term("mul", -1, true)]),
        ];
        let via_dual = change_generators(
            &dual(catalog_get("sLeib")?)?,
            check_type("ComAdm")?.alphabet.clone(),
            &images,
            "ComAdmViaDual",
        )?;
        expect(
            via_dual.relations == meet,
            "dualizing and rewriting generators disagrees with the intersection",
        )?;
        Ok(())
    });
}

#[test]
fn criterion_hadamard_and_shapes() {
    criterion("pointwise products and per-shape spans behave as stated", || {
        let lie = catalog_get("Lie")?;
        let ass = catalog_get("Ass")?;
        let sperm = catalog_get("sPerm")?;
        expect(
            hadamard_dims(lie, sperm, 5)? == quotient_dims(catalog_get("sLeib")?, 5)?,
            "bracket x Perm dimensions differ from the symmetric Leibniz table",
        )?;
        expect(
            hadamard_dims(ass, sperm, 5)? == quotient_dims(catalog_get("sDiAss")?, 5)?,
            "associative x Perm dimensions differ from the symmetric dialgebra table",
        )?;
        for n in 3..=5 {
            expect(
                shape_basis_report(catalog_get("Com")?, n)?.pass,
                &format!("a commutative shape fails to span at arity {n}"),
            )?;
            expect(
                shape_basis_report(sperm, n)?.pass,
                &format!("a Perm shape fails to span at arity {n}"),
            )?;
        }
        expect(
            !shape_basis_report(lie, 3)?.pass,
            "single bracket shapes unexpectedly span at arity 3",
        )?;
        Ok(())
    });
}

#[test]
fn criterion_algebra_constructions() {
    criterion("free models, derived operations, and quotients all line up", || {
        let none = Binding::new();
        let ok = |alg: &operadkit::algebras::Algebra, ty: &str, bind: &Binding| -> Result<()> {
            let report = check_identities(alg, check_type(ty)?, bind)?;
            expect(
                report.ok,
                &format!("{ty} laws fail: {}", report.failures.join("; ")),
            )
        };

        // free models satisfy their own laws at the stated dimensions
        let flie = free_lie(2, 6)?;
        ok(&flie.algebra, "Lie", &none)?;
        let mut degree_counts = [0usize; 6];
        for name in &flie.algebra.basis {
            let deg = name.chars().filter(|c| c.is_ascii_alphabetic()).count();
            degree_counts[deg - 1] += 1;
        }
        expect(
            degree_counts == [2, 1, 2, 3, 6, 9],
            &format!("free bracket degree counts are {degree_counts:?}"),
        )?;

        let fsleib = free_sleib(2, 3)?;
        expect(fsleib.algebra.dim == 8, "free symmetric Leibniz dimension")?;
        ok(&fsleib.algebra, "sLeib", &none)?;
        let fsperm = free_sperm(2, 3)?;
        expect(fsperm.algebra.dim == 10, "free symmetric Perm dimension")?;
        ok(&fsperm.algebra, "sPerm", &none)?;
        let fsdiass = free_sdiass(2, 3)?;
        expect(fsdiass.algebra.dim == 18, "free symmetric dialgebra dimension")?;
        ok(&fsdiass.algebra, "sDiAss", &none)?;

        // derived single operation on a free dialgebra obeys both Leibniz laws
        let derived = apply_functor(&fsdiass.algebra, "dialg_to_leibniz", &none)?;
        ok(&derived, "sLeib", &none)?;

        // multilinear spans of the free models match the operad dimensions
        let rank_table = |free: &FreeAlgebra, ty: &str, want: &[usize]| -> Result<()> {
            for (i, &w) in want.iter().enumerate() {
                let gens: Vec<_> = free.generators[..i + 1]
                    .iter()
                    .map(|&g| free.algebra.unit_vector(g))
                    .collect();
                let r = multilinear_rank(&free.algebra, check_type(ty)?, &none, &gens)?;
                expect(
                    r == w,
                    &format!("{ty} multilinear rank at arity {} is {r}, expected {w}", i + 1),
                )?;
            }
            Ok(())
        };
        let k4 = (free_lie(4, 4)?, free_sleib(4, 4)?, free_sperm(4, 4)?, free_sdiass(4, 4)?);
        rank_table(&k4.0, "Lie", &[1, 1, 2, 6])?;
        rank_table(&k4.1, "sLeib", &[1, 2, 2, 6])?;
        rank_table(&k4.2, "sPerm", &[1, 2, 1, 1])?;
        rank_table(&k4.3, "sDiAss", &[1, 4, 6, 24])?;

        // quotients land on the stated structures
        let squares = quotient_construction(&fsleib.algebra, "squares", &none)?;
        expect(
            squares.algebra.dim == free_lie(2, 3)?.algebra.dim,
            "collapsing squares misses the free bracket dimension",
        )?;
        ok(&squares.algebra, "Lie", &[("br".to_string(), "mul".to_string())].into())?;

        let collapsed =
            quotient_construction(&samples::cyclic_leibniz(), "leibniz-defect", &none)?;
        expect(collapsed.algebra.dim == 1, "cyclic table should collapse to a line")?;
        ok(&collapsed.algebra, "sLeib", &none)?;

        let fdiass = samples::free_diass(2, 3)?;
        let perm = quotient_construction(&fdiass.algebra, "diperm", &none)?;
        expect(perm.algebra.dim == 12, "identified dialgebra misses the Perm dimension")?;
        ok(&perm.algebra, "lPerm", &none)?;

        // basis changes hide nothing: scrambled tables still pass
        for s in scrambles(&fsperm.algebra, 3, 11) {
            ok(&s, "sPerm", &none)?;
        }
        let m_is_mul: Binding = [("m".to_string(), "mul".to_string())].into();
        for s in scrambles(&samples::cyclic_leibniz(), 2, 7) {
            ok(&s, "lLeib", &m_is_mul)?;
        }
        Ok(())
    });
}
