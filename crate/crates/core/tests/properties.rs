use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use supergrass_core::grassmann::{cup, CohomologyClass};
use supergrass_core::lascoux::{betti_table, DetVarSpec};
use supergrass_core::oracle::{tor_dims, OracleJob};
use supergrass_core::pairs::{classify, random_conjugate, random_multiset, synthesize};
use supergrass_core::partition::{partitions_in_box, Partition};
use supergrass_core::supergrass::{cohomology, euler_formula, SuperGrassSpec};
use supergrass_core::GrassSpec;

fn detvar() -> impl Strategy<Value = DetVarSpec> {
    (0usize..=3, 0usize..=3)
        .prop_flat_map(|(n, m)| (Just(n), Just(m), 0..=n.min(m)))
        .prop_map(|(n, m, t)| DetVarSpec::new(n, m, t).unwrap())
}

fn supergrass() -> impl Strategy<Value = SuperGrassSpec> {
    (0usize..=5, 0usize..=5)
        .prop_flat_map(|(n, m)| (Just(n), Just(m), 0..=n, 0..=m))
        .prop_map(|(n, m, r, s)| SuperGrassSpec::new(n, m, r, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn classification_survives_base_change(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ms = random_multiset(&mut rng, 8);
        let pair = random_conjugate(&synthesize(&ms), &mut rng);
        prop_assert_eq!(classify(&pair).unwrap(), ms.clone());
        prop_assert_eq!(classify(&pair.swap()).unwrap(), ms.parity_shift());
    }

    #[test]
    fn betti_table_matches_oracle_in_low_degree(spec in detvar()) {
        let tor = tor_dims(&OracleJob::new(spec, spec.n * spec.m, 4)).unwrap();
        let table = betti_table(spec).unwrap();
        for e in &tor.entries {
            prop_assert_eq!(table.dim_at(e.p, e.d), e.dim, "(p, d) = ({}, {})", e.p, e.d);
        }
    }

    #[test]
    fn super_cohomology_is_symmetric_under_swap(spec in supergrass()) {
        let swapped = SuperGrassSpec::new(spec.m, spec.n, spec.s, spec.r).unwrap();
        let a = cohomology(spec).unwrap();
        let b = cohomology(swapped).unwrap();
        prop_assert_eq!(a.dims(), b.dims());
        prop_assert_eq!(a.alternating_sum(), euler_formula(spec).unwrap());
    }

    #[test]
    fn cup_product_with_unit_is_identity(s in 0usize..=3, k in 0usize..=3, idx in any::<prop::sample::Index>()) {
        let spec = GrassSpec::new(s, s + k).unwrap();
        let all = partitions_in_box(spec.bound());
        let x = CohomologyClass::schubert(idx.get(&all).clone());
        let one = CohomologyClass::schubert(Partition::empty());
        prop_assert_eq!(cup(spec, &one, &x).unwrap(), x);
    }
}
