//! Fixed workloads shared by the criterion benches.

use supergrass_core::lascoux::DetVarSpec;
use supergrass_core::supergrass::SuperGrassSpec;

/// Determinantal specs of increasing size.
pub fn detvar_specs() -> Vec<DetVarSpec> {
    [(2, 2, 1), (3, 2, 1), (3, 3, 1), (3, 3, 2), (4, 4, 2), (6, 5, 3)]
        .into_iter()
        .map(|(n, m, t)| DetVarSpec::new(n, m, t).expect("valid spec"))
        .collect()
}

/// Super Grassmannians with a nonzero δ.
pub fn supergrass_specs() -> Vec<SuperGrassSpec> {
    [(2, 2, 1, 1), (3, 3, 2, 1), (4, 4, 3, 1), (5, 5, 3, 2)]
        .into_iter()
        .map(|(n, m, r, s)| SuperGrassSpec::new(n, m, r, s).expect("valid spec"))
        .collect()
}
