use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::families::{Family, FamilySpec};
use crate::report::{run_verify_with, Options, VerificationReport};

/// All valid specs with ambient size k + 2n ≤ `max_ambient`, ordered by family, k, n.
pub fn sweep_specs(max_ambient: usize) -> Result<Vec<FamilySpec>> {
    if max_ambient < 3 {
        return Err(Error::InvalidSpec(format!("max ambient size must be at least 3, got {max_ambient}")));
    }
    let mut out = Vec::new();
    for family in Family::ALL {
        let step = if family.needs_even_k() { 2 } else { 1 };
        for k in (step..max_ambient).step_by(step) {
            for n in 1..=(max_ambient.saturating_sub(k)) / 2 {
                out.push(FamilySpec::new(family, k, n)?);
            }
        }
    }
    Ok(out)
}

/// Verifies every spec of [`sweep_specs`] in parallel. Output order does not depend on scheduling.
pub fn sweep(max_ambient: usize) -> Result<Vec<VerificationReport>> {
    sweep_with(max_ambient, Options::default())
}

pub fn sweep_with(max_ambient: usize, opts: Options) -> Result<Vec<VerificationReport>> {
    sweep_specs(max_ambient)?.into_par_iter().map(|s| run_verify_with(s, opts)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sweep_contents() {
        let specs = sweep_specs(5).unwrap();
        for (f, k, n) in [(Family::Sl, 1, 1), (Family::Sl, 1, 2), (Family::Sl, 3, 1), (Family::SoCompact, 3, 1), (Family::Sp, 2, 1), (Family::USplit, 2, 1)] {
            assert!(specs.contains(&FamilySpec::new(f, k, n).unwrap()), "{f} {k} {n}");
        }
        assert!(sweep_specs(4).unwrap().iter().all(|s| s.n == 1));
        assert!(sweep_specs(2).is_err());
    }
}
