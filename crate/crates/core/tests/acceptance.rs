//! Acceptance runner: one line per criterion, non-zero exit if any fails.

mod common;

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use chromatic_core::chromcat::{
    build_category, hom_chain_report, quillen_category, stabilization_rank, Level,
};
use chromatic_core::colim::{colim_points, filtration_tower};
use chromatic_core::elemab::SubgroupFamily;
use chromatic_core::fgl::hurewicz::b1_power;
use chromatic_core::fgl::{a4_demo, honda_fgl, hurewicz_eval, verify_kn_injectivity, HopfExpr};
use chromatic_core::fp::ipow;
use chromatic_core::invariants::{in_span, invariant_basis, subring_membership, LinearAction};
use chromatic_core::poly::{default_names, PolyFp};
use chromatic_core::skeleton::{skeleton, Orbit};
use chromatic_core::subring::{a4_invariants, build_cr, SubringPresentation};

use common::*;

type Check = Result<(), Box<dyn std::error::Error>>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+).into());
        }
    };
}

fn ac1_skeletons() -> Check {
    let fam = family("a4", 2);
    let top = skeleton(&build_category(&fam, Level::Finite(2)));
    let auts: Vec<usize> = top.classes.iter().map(|c| c.aut_order).collect();
    ensure!(auts == [1, 3], "level 2 Aut orders {auts:?}");
    ensure!(
        top.classes[0].rank == 1 && top.classes[1].rank == 2,
        "class ranks"
    );
    ensure!(
        top.edges.len() == 1 && top.edges[0].morphisms == 3,
        "level 2 edges {:?}",
        top.edges
    );
    let one = skeleton(&build_category(&fam, Level::Finite(1)));
    let auts: Vec<usize> = one.classes.iter().map(|c| c.aut_order).collect();
    ensure!(auts == [1, 6], "level 1 Aut orders {auts:?}");
    ensure!(
        one.edges.len() == 1
            && one.edges[0].orbits
                == [Orbit {
                    size: 3,
                    stabilizer: 2
                }],
        "level 1 edges {:?}",
        one.edges
    );
    Ok(())
}

fn ac2_stabilization() -> Check {
    let fam = family("a4", 2);
    let s = stabilization_rank(&fam);
    ensure!(s == 2, "stabilization rank {s}");
    let chain = hom_chain_report(&fam);
    ensure!(
        chain.levels[0].n == 1 && chain.levels[0].strict,
        "A^(1) ⊋ A^(2) fails: {:?}",
        chain.levels
    );
    ensure!(
        chain.levels.iter().skip(1).all(|l| !l.strict),
        "chain not stable past 2: {:?}",
        chain.levels
    );
    Ok(())
}

fn ac3_tower() -> Check {
    let fam = family("a4", 2);
    let tower = filtration_tower(&fam, 4)?;
    ensure!(tower.sizes() == [6, 5], "q = 4 sizes {:?}", tower.sizes());
    let map = &tower.surjections[0];
    let coarse = tower.levels[1].result.size();
    ensure!(
        (0..coarse).all(|c| map.contains(&c)),
        "connecting map not surjective: {map:?}"
    );
    let small = filtration_tower(&fam, 2)?;
    ensure!(small.sizes() == [2, 2], "q = 2 sizes {:?}", small.sizes());
    let two = build_category(&fam, Level::Finite(2));
    let one = build_category(&fam, Level::Finite(1));
    ensure!(colim_points(&two, 4)?.total_points() == 29, "point count");
    let oracle = [
        colim_oracle(&two, 4),
        colim_oracle(&one, 4),
        colim_oracle(&two, 2),
        colim_oracle(&one, 2),
    ];
    ensure!(oracle == [6, 5, 2, 2], "graph-search oracle {oracle:?}");
    Ok(())
}

fn ac4_invariants() -> Check {
    let (d1, d0, eta) = a4_invariants();
    let xy = default_names(2);
    let parse = |s: &str| PolyFp::parse(s, &xy, 2);
    ensure!(d1 == parse("x^2 + x*y + y^2")?, "D_1 = {d1}");
    ensure!(eta == parse("x^3 + x^2*y + y^3")?, "η = {eta}");
    let action = LinearAction::c3_on_f2_plane();
    let two = invariant_basis(&action, 2)?;
    ensure!(two == [d1.clone()], "degree 2 basis {two:?}");
    let three = invariant_basis(&action, 3)?;
    ensure!(
        three.len() == 2
            && in_span(&d0, &three)
            && in_span(&eta, &three)
            && !in_span(&eta, std::slice::from_ref(&d0)),
        "degree 3 basis {three:?}"
    );
    let relation = eta
        .mul(&eta)
        .add(&eta.mul(&d0))
        .add(&d1.pow(3))
        .add(&d0.pow(2));
    ensure!(
        relation.is_zero() && vanishes_everywhere(&relation, 8),
        "relation gives {relation}"
    );
    let chern = [d1.pow(2), d0.pow(2)];
    ensure!(
        !subring_membership(&eta, &chern, 12)?,
        "η in the Chern subring"
    );
    ensure!(
        !subring_membership(&eta.mul(&eta), &chern, 12)?,
        "η^2 in the Chern subring"
    );
    Ok(())
}

fn ac5_restriction_categories() -> Check {
    let fam = family("a4", 2);
    let (d1, d0, eta) = a4_invariants();
    let chern = build_cr(&SubringPresentation::new(
        fam.clone(),
        vec![d1.pow(2), d0.pow(2)],
    )?);
    ensure!(
        chern.same_homs(&build_category(&fam, Level::Finite(1))),
        "Chern C_R differs from A^(1)"
    );
    let full = build_cr(&SubringPresentation::new(fam.clone(), vec![d1, d0, eta])?);
    ensure!(
        full.same_homs(&quillen_category(&fam)),
        "full C_R differs from A"
    );
    Ok(())
}

fn ac6_pipeline() -> Check {
    let fgl = honda_fgl(2, 2, 8)?;
    fgl.check_axioms()?;
    let series = fgl.p_series()?;
    ensure!(
        series == PolyFp::monomial(2, 1, vec![4], 1),
        "[2](x) = {series}"
    );
    let low = fgl.law.truncate(3);
    ensure!(
        low == PolyFp::var(2, 2, 0).add(&PolyFp::var(2, 2, 1)),
        "F below degree 4 = {low}"
    );
    let report = a4_demo()?;
    ensure!(
        report.coefficient == "s^3 + s^2*t + t^3",
        "coefficient {}",
        report.coefficient
    );
    Ok(())
}

fn ac7_hurewicz() -> Check {
    for (p, n) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
        let bound = ipow(p as u64, n) as u32;
        let one = PolyFp::one(p, 2);
        for c in 1..p {
            let constant = PolyFp::constant(p, 1, c);
            ensure!(
                hurewicz_eval(&constant, 0, p, n)? == HopfExpr::grouplike(p, n, 0, c),
                "[{c}] on β_0 at p = {p}, n = {n}"
            );
            for t in 1..bound {
                ensure!(
                    hurewicz_eval(&constant, t, p, n)?.is_zero(),
                    "{c} on β_{t} at p = {p}, n = {n}"
                );
            }
            for r in 1..bound {
                let xr = PolyFp::monomial(p, 1, vec![r], c);
                let expected = HopfExpr::from_term(p, n, r, b1_power(r as usize), one.scale(c));
                ensure!(
                    hurewicz_eval(&xr, r, p, n)? == expected,
                    "{c}x^{r} on β_{r} at p = {p}, n = {n}"
                );
                for t in 1..r {
                    ensure!(
                        hurewicz_eval(&xr, t, p, n)?.is_zero(),
                        "{c}x^{r} on β_{t} at p = {p}, n = {n}"
                    );
                }
            }
        }
    }
    for (p, n) in [(2, 1), (2, 2), (3, 1)] {
        verify_kn_injectivity(p, n)?;
    }
    Ok(())
}

fn ac8_properties() -> Check {
    for (name, group) in bundled_up_to(64) {
        for p in [2, 3] {
            let fam = Arc::new(SubgroupFamily::new(group.clone(), p)?);
            let rank = fam.p_rank() as u32;
            let quillen = quillen_category(&fam);
            category_axioms(&quillen).map_err(|e| format!("{name} p = {p} A: {e}"))?;
            let levels: Vec<_> = (1..=rank.max(1) + 1)
                .map(|n| build_category(&fam, Level::Finite(n)))
                .collect();
            for (i, cat) in levels.iter().enumerate() {
                let n = i + 1;
                category_axioms(cat).map_err(|e| format!("{name} p = {p} A^({n}): {e}"))?;
                ensure!(
                    quillen.is_subcategory_of(cat),
                    "{name} p = {p}: A ⊄ A^({n})"
                );
                if let Some(next) = levels.get(i + 1) {
                    ensure!(
                        next.is_subcategory_of(cat),
                        "{name} p = {p}: A^({}) ⊄ A^({n})",
                        n + 1
                    );
                }
            }
            ensure!(
                build_category(&fam, Level::Finite(rank)).same_homs(&quillen),
                "{name} p = {p}: A^(p-rank) ≠ A"
            );
            compare_homs(&levels[0], |f| elementwise_conjugate(&fam, f))
                .map_err(|e| format!("{name} p = {p} A^(1) characterization: {e}"))?;
            if group.order() <= 32 {
                for n in 1..=3usize.min(levels.len()) {
                    compare_homs(&levels[n - 1], |f| level_oracle(&fam, f, n))
                        .map_err(|e| format!("{name} p = {p} A^({n}) vs all subsets: {e}"))?;
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, &str, fn() -> Check, Duration); 8] = [
        (
            "AC1",
            "A_4 skeletons at levels 1 and 2",
            ac1_skeletons,
            Duration::from_secs(1),
        ),
        (
            "AC2",
            "stabilization rank and strict chain",
            ac2_stabilization,
            Duration::from_secs(1),
        ),
        (
            "AC3",
            "chromatic tower point counts",
            ac3_tower,
            Duration::from_secs(1),
        ),
        (
            "AC4",
            "invariant theory of the A_4 Weyl action",
            ac4_invariants,
            Duration::from_secs(1),
        ),
        (
            "AC5",
            "C_R recovers A^(1) and A",
            ac5_restriction_categories,
            Duration::from_secs(5),
        ),
        (
            "AC6",
            "formal group law and Hopf ring pipeline",
            ac6_pipeline,
            Duration::from_secs(5),
        ),
        (
            "AC7",
            "Hurewicz formulas and injectivity",
            ac7_hurewicz,
            Duration::from_secs(10),
        ),
        (
            "AC8",
            "category property suites over the library",
            ac8_properties,
            Duration::from_secs(300),
        ),
    ];
    let mut failed = 0;
    for (id, title, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let verdict = match (&outcome, elapsed <= limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over the {} ms limit)", limit.as_millis()),
            (Err(e), _) => format!("FAIL: {e}"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("{id} {title:<44} {verdict} [{} ms]", elapsed.as_millis());
    }
    if failed == 0 {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
