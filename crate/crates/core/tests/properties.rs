use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use udiag::bracket::{bracket, normalized_bracket};
use udiag::constructions::corpus::random_knot_diagrams;
use udiag::constructions::{doubled_set, doubling_transform, TangleTemplate};
use udiag::search::{ascending_number_of_diagram, unknotting_number_of_diagram};
use udiag::{apply_move, available_moves, classify_triviality, CrossingId, CrossingSet, Diagram, SearchBudget, StateTable, Verdict};

fn knot(seed: u64, max_c: usize) -> Diagram {
    random_knot_diagrams(1, max_c, seed).unwrap().pop().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pd_and_gauss_round_trip(seed in any::<u64>()) {
        let d = knot(seed, 12);
        let pd = Diagram::parse_pd(&d.render()).unwrap();
        prop_assert_eq!(pd.canonical(), d.canonical());
        let gauss = Diagram::parse_gauss(&d.to_gauss()).unwrap();
        prop_assert_eq!(gauss.canonical(), d.canonical());
    }

    #[test]
    fn mirror_and_crossing_change_are_involutions(seed in any::<u64>(), k in 0usize..12) {
        let d = knot(seed, 12);
        prop_assert_eq!(d.mirror().mirror().canonical(), d.canonical());
        let id = CrossingId(k % d.crossing_count());
        let back = d.crossing_change(id).unwrap().crossing_change(id).unwrap();
        prop_assert_eq!(back.canonical(), d.canonical());
        prop_assert_eq!(d.mirror().writhe(), -d.writhe());
    }

    #[test]
    fn mirror_inverts_the_variable(seed in any::<u64>()) {
        let d = knot(seed, 10);
        prop_assert_eq!(bracket(&d.mirror()).unwrap(), bracket(&d).unwrap().invert_variable());
    }

    #[test]
    fn variant_bracket_matches_direct(seed in any::<u64>(), mask in any::<u64>()) {
        let d = knot(seed, 10);
        let set = CrossingSet::from_mask(mask & ((1 << d.crossing_count()) - 1));
        let table = StateTable::build(&d).unwrap();
        prop_assert_eq!(table.variant_bracket(&set), bracket(&set.apply(&d).unwrap()).unwrap());
        prop_assert_eq!(table.variant_normalized(&set), normalized_bracket(&set.apply(&d).unwrap()).unwrap());
    }

    #[test]
    fn moves_preserve_the_normalized_bracket(seed in any::<u64>(), walk in any::<u64>()) {
        let d0 = knot(seed, 8);
        let want = normalized_bracket(&d0).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(walk);
        let mut d = d0.clone();
        for _ in 0..12 {
            let ms = available_moves(&d);
            if ms.is_empty() {
                break;
            }
            d = apply_move(&d, &ms[rng.gen_range(0..ms.len())]).unwrap();
            prop_assert_eq!(d.component_count(), 1);
        }
        prop_assert_eq!(normalized_bracket(&d).unwrap(), want);
    }

    #[test]
    fn ascending_set_unknots(seed in any::<u64>()) {
        let d = knot(seed, 10);
        let a = ascending_number_of_diagram(&d).unwrap();
        prop_assert!(a.value <= d.crossing_count().saturating_sub(1) / 2);
        let changed = a.change_set.apply(&d).unwrap();
        prop_assert_eq!(classify_triviality(&changed, &SearchBudget::default()).verdict(), Verdict::Trivial);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn u_is_bounded_by_the_ascending_number(seed in any::<u64>()) {
        let d = knot(seed, 8);
        let r = unknotting_number_of_diagram(&d, &SearchBudget::default()).unwrap();
        let a = ascending_number_of_diagram(&d).unwrap().value;
        prop_assert!(r.status.upper().is_some_and(|u| u <= a));
        let w = r.witness.unwrap();
        prop_assert!(w.certificate.verify(&w.set.apply(&d).unwrap()));
    }

    #[test]
    fn doubling_preserves_the_link_type_invariants(seed in any::<u64>(), mask in any::<u64>()) {
        let d = knot(seed, 4);
        let tpl = TangleTemplate::doubling();
        let dd = doubling_transform(&d, &tpl).unwrap();
        prop_assert_eq!(dd.crossing_count(), d.crossing_count() * tpl.crossing_count());
        prop_assert_eq!(normalized_bracket(&dd).unwrap(), normalized_bracket(&d).unwrap());
        // Changing the pair of a copy acts like changing the original crossing.
        let s = CrossingSet::from_mask(mask & ((1 << d.crossing_count()) - 1));
        let changed = doubled_set(&d, &s, &tpl).unwrap().apply(&dd).unwrap();
        prop_assert_eq!(normalized_bracket(&changed).unwrap(), normalized_bracket(&s.apply(&d).unwrap()).unwrap());
    }
}
