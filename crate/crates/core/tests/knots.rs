use blockset::algebra::{FiniteField, Quasifield};
use blockset::blocking::hitting::SearchOptions;
use blockset::blocking::{axes_construction, dual_transfer, min_blocking, min_cover_excluding, CoverConfig};
use blockset::knots::{hypothesis_audit, line_profile, spectrum, KnotSpectrum};
use blockset::planes::{
    build_desarguesian_affine, build_desarguesian_projective, build_translation_plane, complete, dualize,
    IncidenceStructure, LineSet, PointSet,
};
use proptest::prelude::*;

fn pg(q: u64) -> IncidenceStructure {
    build_desarguesian_projective(&FiniteField::of_order(q).unwrap()).unwrap()
}

fn check_cover(cfg: &CoverConfig) {
    let s = KnotSpectrum::of_config(cfg);
    assert!(s.standard_counts_check(), "{s:?}");
    for kbar in 0..=s.q as i64 + 2 {
        let (lhs, rhs) = s.beq_evaluate(kbar).unwrap();
        assert_eq!(lhs, rhs, "kbar = {kbar}");
    }
    let report = hypothesis_audit(cfg);
    assert_eq!(report.violations().count(), 0, "{report:?}");
    for e in &report.entries {
        assert_eq!(e.applicable, e.holds.is_some());
    }
}

#[test]
fn transferred_and_searched_covers_satisfy_the_counts() {
    for q in [2u64, 3, 4, 5] {
        let a = build_desarguesian_affine(&FiniteField::of_order(q).unwrap()).unwrap();
        check_cover(&dual_transfer(&a, &axes_construction(&a).unwrap()).unwrap());
        let cert = min_blocking(&a, &SearchOptions::default()).unwrap();
        let s = PointSet::from_indices(&a, cert.witness.iter().copied()).unwrap();
        check_cover(&dual_transfer(&a, &s).unwrap());

        let p = pg(q);
        for point in [0, p.point_count() / 2] {
            let cert = min_cover_excluding(&p, point, &SearchOptions::default()).unwrap();
            let lines = LineSet::from_indices(&p, cert.witness).unwrap();
            check_cover(&CoverConfig::new(p.clone(), lines, point).unwrap());
        }
    }
    let h = build_translation_plane(&Quasifield::hall(3).unwrap()).unwrap();
    check_cover(&dual_transfer(&h, &axes_construction(&h).unwrap()).unwrap());
}

#[test]
fn line_profiles_sum_to_set_incidences() {
    let h = build_translation_plane(&Quasifield::hall(3).unwrap()).unwrap();
    let (hall_proj, _) = complete(&h).unwrap();
    let planes = [pg(2), pg(3), pg(4), dualize(&hall_proj).unwrap(), hall_proj];
    for p in planes {
        // Every third line, plus the full set and the empty set.
        let sets = [
            LineSet::from_indices(&p, (0..p.line_count()).step_by(3)).unwrap(),
            LineSet::full(&p),
            LineSet::empty(&p),
        ];
        for set in &sets {
            for l in 0..p.line_count() {
                let prof = line_profile(&p, set, l, None, &[]).unwrap();
                assert_eq!(Some(prof.incidence_sum()), prof.expected_incidences());
            }
        }
    }
}

/// Adds, for each uncovered point other than `excluded`, its least line
/// avoiding `excluded`.
fn complete_to_cover(p: &IncidenceStructure, mut chosen: Vec<usize>, excluded: usize) -> LineSet {
    chosen.retain(|&l| !p.incident(excluded, l));
    for pt in 0..p.point_count() {
        if pt == excluded || p.lines_through(pt).iter().any(|l| chosen.contains(l)) {
            continue;
        }
        let l = *p.lines_through(pt).iter().find(|&&l| !p.incident(excluded, l)).unwrap();
        chosen.push(l);
    }
    LineSet::from_indices(p, chosen).unwrap()
}

fn orders() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 4, 5, 7, 8, 9])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generic_identities_for_random_sets(q in orders(), seed in any::<u64>()) {
        let p = pg(q);
        let lines = LineSet::from_indices(
            &p,
            (0..p.line_count()).filter(|&l| (seed.rotate_left(l as u32 % 64) ^ l as u64) & 3 == 0),
        ).unwrap();
        let s = spectrum(&p, &lines, None).unwrap();
        prop_assert!(s.standard_counts_check());
        prop_assert_eq!(s.x.iter().sum::<u64>(), q * q + q + 1);
    }

    #[test]
    fn random_covers_pass_the_audit(
        q in orders(),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 0..20),
        excluded in any::<prop::sample::Index>(),
    ) {
        let p = pg(q);
        let excluded = excluded.index(p.point_count());
        let chosen = picks.iter().map(|i| i.index(p.line_count())).collect();
        let lines = complete_to_cover(&p, chosen, excluded);
        check_cover(&CoverConfig::new(p, lines, excluded).unwrap());
    }
}
