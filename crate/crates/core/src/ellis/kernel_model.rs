use serde::Serialize;

use crate::semigroup::{
    kernel, rees_decompose, structure_report, FiniteSemigroup, StructureReport,
};

use super::{EllisError, FiberSemigroup};

/// Largest explicit product table built.
pub const MAX_MODEL_SIZE: usize = 2048;

/// The kernel as `LZ_r × ℤ/ℓᴷ`: `(i, z)(j, w) = (i, z + w)`.
#[derive(Clone, Debug)]
pub struct KernelModel {
    /// Constant maps forming the fiber kernel, by name.
    pub fiber_kernel: Vec<String>,
    pub base: usize,
    pub depth: usize,
    pub requested_depth: usize,
    pub semigroup: FiniteSemigroup,
    pub report: StructureReport,
    pub rees: ReesSummary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReesSummary {
    pub group_order: usize,
    pub group_is_cyclic: bool,
    pub i_count: usize,
    pub lambda_count: usize,
    pub normalized: bool,
}

/// Builds the model at the requested odometer depth, or the largest depth
/// whose table has at most [`MAX_MODEL_SIZE`] elements. Declines unless the
/// fiber kernel is a left-zero semigroup of constant maps.
pub fn kernel_model(
    fiber: &FiberSemigroup,
    base: usize,
    depth: usize,
) -> Result<KernelModel, EllisError> {
    let s = &fiber.semigroup;
    let k = kernel(s).kernel;
    let constants = k.iter().all(|&a| fiber.map(a).constant_value().is_some());
    let left_zero = k.iter().all(|&x| k.iter().all(|&y| s.mul(x, y) == x));
    if fiber.points.len() < 2 || !(constants && left_zero) {
        let names: Vec<&str> = k.iter().map(|&a| fiber.name(a)).collect();
        return Err(EllisError::Declined(format!(
            "fiber kernel {{{}}} is not a left-zero semigroup of constant maps",
            names.join(", ")
        )));
    }
    let r = k.len();
    let mut used = depth;
    while used > 0 && r * base.pow(used as u32) > MAX_MODEL_SIZE {
        used -= 1;
    }
    let semigroup = product_table(r, base.pow(used as u32));
    let report = structure_report(&semigroup);
    let dec = rees_decompose(&semigroup)?;
    let group = &dec.data.group;
    let order = group.size();
    let group_is_cyclic = group
        .elements()
        .any(|g| group.generated_by(&[g]).len() == order);
    Ok(KernelModel {
        fiber_kernel: k.iter().map(|&a| fiber.name(a).to_string()).collect(),
        base,
        depth: used,
        requested_depth: depth,
        semigroup,
        report,
        rees: ReesSummary {
            group_order: order,
            group_is_cyclic,
            i_count: dec.data.i_count,
            lambda_count: dec.data.lambda_count,
            normalized: dec.data.normalized,
        },
    })
}

fn product_table(r: usize, modulus: usize) -> FiniteSemigroup {
    let n = r * modulus;
    let labels = (0..n)
        .map(|x| format!("({},{})", x / modulus, x % modulus))
        .collect();
    let rows = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| (x / modulus) * modulus + (x % modulus + y % modulus) % modulus)
                .collect()
        })
        .collect();
    let gens = (0..r)
        .map(|i| i * modulus + if modulus > 1 { 1 } else { 0 })
        .collect();
    FiniteSemigroup::from_table_unchecked(labels, rows, gens).expect("product table is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::{bijective_substitution, example_substitution, FixedPoints};

    fn fiber(sub: &crate::substitution::Substitution) -> FiberSemigroup {
        let fp = FixedPoints::new(sub).unwrap();
        FiberSemigroup::build(&fp, &fp.column_shadow()).unwrap()
    }

    #[test]
    fn example_model_depth_two() {
        let m = kernel_model(&fiber(&example_substitution()), 5, 2).unwrap();
        assert_eq!(m.semigroup.size(), 75);
        assert!(m.semigroup.check_associative().is_ok());
        assert!(m.report.is_completely_simple);
        assert_eq!(m.report.minimal_left_ideals.len(), 1);
        assert_eq!(
            m.rees,
            ReesSummary {
                group_order: 25,
                group_is_cyclic: true,
                i_count: 3,
                lambda_count: 1,
                normalized: true
            }
        );
    }

    #[test]
    fn depth_zero_is_left_zero() {
        let m = kernel_model(&fiber(&example_substitution()), 5, 0).unwrap();
        assert_eq!(m.semigroup.size(), 3);
        assert_eq!(m.rees.group_order, 1);
    }

    #[test]
    fn large_depth_is_capped() {
        let m = kernel_model(&fiber(&example_substitution()), 5, 8).unwrap();
        assert_eq!((m.depth, m.requested_depth), (4, 8));
        assert_eq!(m.semigroup.size(), 3 * 625);
    }

    #[test]
    fn bijective_declines() {
        assert!(matches!(
            kernel_model(&fiber(&bijective_substitution()), 3, 2),
            Err(EllisError::Declined(_))
        ));
    }
}
