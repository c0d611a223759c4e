use proptest::prelude::*;
use valley_paths::paths::{enumerate_family, is_in_v, parse_path, Family, Filter, Path, VStructure};
use valley_paths::weights::{weight_of_path, weight_of_structure, WeightSpec};

fn any_path(family: Family, max_n: usize) -> impl Strategy<Value = Path> {
    (0..=max_n, any::<prop::sample::Index>()).prop_map(move |(n, i)| {
        let all = enumerate_family(family, n, Filter::None);
        all[i.index(all.len())].clone()
    })
}

fn any_family() -> impl Strategy<Value = Family> {
    prop::sample::select(Family::ALL.to_vec())
}

proptest! {
    #[test]
    fn text_and_json_round_trip(p in any_family().prop_flat_map(|f| any_path(f, 5))) {
        prop_assert_eq!(parse_path(&p.to_string(), p.family()).unwrap(), p.clone());
        let json = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Path>(&json).unwrap(), p);
    }

    #[test]
    fn primitive_factors_concatenate(p in any_path(Family::Dyck, 8)) {
        let mut acc = Path::empty(Family::Dyck);
        for f in p.primitive_factors() {
            prop_assert!(!f.is_empty());
            let levels = f.levels();
            prop_assert!(levels[..levels.len() - 1].iter().all(|&l| l > 0));
            prop_assert_eq!(levels.last(), Some(&0));
            acc = acc.concat(&f).unwrap();
        }
        prop_assert_eq!(acc, p);
    }

    #[test]
    fn structure_round_trip_and_weights(p in any_path(Family::Dyck, 8)) {
        match VStructure::from_path(&p) {
            Ok(s) => {
                prop_assert!(is_in_v(&p));
                prop_assert_eq!(s.to_path(), p.clone());
                prop_assert_eq!(s.size(), p.size());
                let spec = WeightSpec::generic(8);
                prop_assert_eq!(weight_of_structure(&s, &spec).unwrap(), weight_of_path(&p, &spec).unwrap());
            }
            Err(_) => prop_assert!(!is_in_v(&p)),
        }
    }

    #[test]
    fn filters_are_consistent(p in any_family().prop_flat_map(|f| any_path(f, 5))) {
        let y = Filter::YFilter.accepts(p.steps());
        prop_assert_eq!(y, Filter::FirstNotFlat.accepts(p.steps()) && Filter::FirstTwoNotUd.accepts(p.steps()));
        prop_assert_eq!(Filter::FirstTwoNotUd.accepts(p.steps()), !p.starts_with_ud());
    }
}

#[test]
fn enumeration_is_sorted_and_distinct() {
    for family in Family::ALL {
        for n in 0..=5 {
            let ps = enumerate_family(family, n, Filter::None);
            assert!(ps.windows(2).all(|w| w[0] < w[1]), "{family} n={n}");
            assert!(ps.iter().all(|p| p.size() == n));
        }
    }
}
