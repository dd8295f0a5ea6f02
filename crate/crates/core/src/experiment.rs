//! The icosahedral experiment: orbits of an A₅-labeled subshift, pushed
//! through the degree-5 monodromy permutation of an index-5 subgroup, are
//! tallied by decomposition type and compared with the proportion of
//! elements of A₅ of each cycle type.

use num_rational::Ratio;
use thiserror::Error;

use crate::permgroup::{coset_action, CosetAction, CycleType, PermError, Permutation, Subgroup};
use crate::sft::{
    enumerate_orbits_parallel, exact_counts, orbit_power_counts, realization_check, DensityReport,
    LabeledSFT, Orbit, RealizationReport, SftError, DEFAULT_DP_CAP,
};

/// Maximum orbit length at which every class must already be attained.
pub const WITNESS_BOUND: usize = 6;

/// Decomposition types of the A₅ table, in column order.
pub const A5_TYPES: [&[usize]; 4] = [&[1, 1, 1, 1, 1], &[2, 2, 1], &[3, 1, 1], &[5]];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExperimentError {
    #[error("homomorphism is not onto A5 (image order {order}, target class sizes {sizes:?})")]
    NotA5 { order: usize, sizes: Vec<usize> },
    #[error("subgroup has index {0}, expected 5")]
    WrongIndex(usize),
    #[error("no point of the target has a stabilizer of index 5")]
    NoCanonicalSubgroup,
    #[error("realization check failed: {}", .0.join("; "))]
    Realization(Vec<String>),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error(transparent)]
    Sft(#[from] SftError),
}

impl ExperimentError {
    /// Input problems as opposed to failed verification.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, ExperimentError::Realization(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubgroupSpec {
    /// Stabilizer of the highest point whose orbit has size 5.
    Canonical,
    Generators(Vec<Permutation>),
}

#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    pub max_len: usize,
    pub skip: usize,
    pub tolerance: f64,
    pub workers: usize,
    pub subgroup: SubgroupSpec,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            max_len: 11,
            skip: 0,
            tolerance: 0.02,
            workers: 1,
            subgroup: SubgroupSpec::Canonical,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct A5TableRow {
    pub decomposition_type: CycleType,
    pub element_count: usize,
    pub target: Ratio<i128>,
    pub count: u64,
    pub total: u64,
}

impl A5TableRow {
    pub fn density(&self) -> Ratio<i128> {
        Ratio::new(self.count as i128, self.total as i128)
    }

    pub fn deviation(&self) -> Ratio<i128> {
        let d = self.density() - self.target;
        if d < Ratio::from_integer(0) {
            -d
        } else {
            d
        }
    }
}

#[derive(Clone, Debug)]
pub struct A5Outcome {
    pub table: Vec<A5TableRow>,
    /// Per-cutoff densities by decomposition type and by class.
    pub report: DensityReport,
    pub realization: RealizationReport,
    pub orbit_count: usize,
    /// Lengths at which enumeration disagreed with the transfer counts.
    pub conservation_failures: Vec<usize>,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl A5Outcome {
    pub fn within_tolerance(&self) -> bool {
        self.max_deviation <= self.tolerance
    }

    pub fn passed(&self) -> bool {
        self.within_tolerance() && self.conservation_failures.is_empty()
    }
}

fn is_a5(sft: &LabeledSFT) -> Result<(), ExperimentError> {
    let g = sft.group();
    let mut sizes: Vec<usize> = sft.classes().iter().map(|c| c.size()).collect();
    sizes.sort_unstable();
    if g.order() != 60 || sizes != [1, 12, 12, 15, 20] || !sft.hom().is_surjective() {
        return Err(ExperimentError::NotA5 {
            order: sft.hom().target().subgroup_generated(sft.hom().images()).order(),
            sizes,
        });
    }
    Ok(())
}

fn pick_subgroup(sft: &LabeledSFT, spec: &SubgroupSpec) -> Result<Subgroup, ExperimentError> {
    let g = sft.group();
    let sub = match spec {
        SubgroupSpec::Generators(gens) => Subgroup::generated_by(g, gens)?,
        SubgroupSpec::Canonical => (0..g.degree())
            .rev()
            .map(|p| g.point_stabilizer(p))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .find(|s| g.order() / s.order() == 5)
            .ok_or(ExperimentError::NoCanonicalSubgroup)?,
    };
    let index = g.order() / sub.order();
    if index != 5 {
        return Err(ExperimentError::WrongIndex(index));
    }
    Ok(sub)
}

/// Decomposition type of every element under the monodromy permutation.
pub fn decomposition_types(sft: &LabeledSFT, action: &CosetAction) -> Vec<CycleType> {
    (0..sft.group().order())
        .map(|z| action.image(z).cycle_type())
        .collect()
}

/// Lengths `n ≤ max_len` where the orbit-side and transfer-side counts of
/// closed paths per class disagree.
pub fn conservation_failures(sft: &LabeledSFT, orbits: &[Orbit], max_len: usize) -> Result<Vec<usize>, SftError> {
    let mut bad = Vec::new();
    for n in 1..=max_len {
        if orbit_power_counts(sft, orbits, n) != exact_counts(sft, n, DEFAULT_DP_CAP)? {
            bad.push(n);
        }
    }
    Ok(bad)
}

pub fn run_a5_experiment(sft: &LabeledSFT, cfg: &ExperimentConfig) -> Result<A5Outcome, ExperimentError> {
    if cfg.max_len == 0 {
        return Err(ExperimentError::Config("max length must be at least 1".into()));
    }
    if cfg.tolerance.is_nan() || cfg.tolerance <= 0.0 {
        return Err(ExperimentError::Config("tolerance must be positive".into()));
    }
    is_a5(sft)?;
    let sub = pick_subgroup(sft, &cfg.subgroup)?;
    let realization = realization_check(sft, WITNESS_BOUND);
    if !realization.passed() {
        return Err(ExperimentError::Realization(realization.diagnostics()));
    }
    let action = coset_action(sft.group(), &sub)?;
    let types = decomposition_types(sft, &action);

    let orbits = enumerate_orbits_parallel(sft, cfg.max_len, cfg.workers);
    if orbits.len() <= cfg.skip {
        return Err(SftError::NoOrbits.into());
    }
    let classes = sft.classes().to_vec();
    let class_type = |c: usize| types[classes[c].representative].clone();
    let report = DensityReport::from_orbits(sft, &orbits, cfg.max_len, cfg.skip, &class_type);
    let last = report.final_cutoff().ok_or(SftError::NoOrbits)?;

    let table: Vec<A5TableRow> = A5_TYPES
        .iter()
        .map(|parts| {
            let ty = CycleType::from_parts(parts.to_vec());
            let element_count = types.iter().filter(|t| **t == ty).count();
            let row = report.rows_at(&report.type_rows, last).find(|r| r.key == ty.to_string());
            A5TableRow {
                target: Ratio::new(element_count as i128, 60),
                count: row.map_or(0, |r| r.count),
                total: row.map_or_else(|| report.class_rows.last().map_or(0, |r| r.total), |r| r.total),
                element_count,
                decomposition_type: ty,
            }
        })
        .collect();
    let max_deviation = table
        .iter()
        .map(|r| {
            let d = r.deviation();
            *d.numer() as f64 / *d.denom() as f64
        })
        .fold(0.0, f64::max);
    let conservation_failures = conservation_failures(sft, &orbits, cfg.max_len)?;

    Ok(A5Outcome {
        table,
        report,
        realization,
        orbit_count: orbits.len(),
        conservation_failures,
        max_deviation,
        tolerance: cfg.tolerance,
    })
}
