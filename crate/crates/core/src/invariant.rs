//! Virtually invariant subspaces containing the vanishing cycle.
//!
//! A subspace is virtually invariant when its orbit in the Grassmannian under
//! the monodromy group is finite. The minimal one containing `gamma` bounds
//! the order of the minimal annihilator of the Abelian integral over `gamma`.
//! This module provides:
//!
//! * [`orbit`]: breadth-first orbit enumeration with canonical subspace keys;
//!   finiteness is certified exactly, non-finiteness only means the cap was hit.
//! * [`gamma_closure`]: the forcing procedure. If some `u` in `mon0^l H` pairs
//!   nontrivially with `gamma`, the center monodromy forces `gamma` into
//!   `mon0^l H`, i.e. `mon0^{-l} gamma` into `H`.
//! * [`certify_minimal`]: the closure is minimal once its own orbit is finite.
//! * [`zero_subspace_profile`]: classes in `H` whose images under every power
//!   of `mon0` pair trivially with `gamma`; they bound the drop from subspace
//!   dimension to annihilator order.

use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::homology::{Family, HomologyModel, ModelError};
use crate::linalg::{dot, kernel, rank, LinalgError, Matrix, Rational, Subspace, Vector};
use crate::monodromy::{GroupError, MonodromyGroupSpec};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("exponent bound {given} is below the required {required}")]
    ExponentBoundTooSmall { given: u64, required: u64 },
    #[error("cap must be at least 1")]
    ZeroCap,
    #[error("zero-subspace profile is only defined for the parabolic family, not {0}")]
    NotParabolic(Family),
    #[error("gamma does not lie in the given subspace")]
    GammaNotInSubspace,
    #[error("minimality is not certified; no order window can be given")]
    Uncertified,
}

pub type Result<T> = std::result::Result<T, AnalysisError>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitResult {
    /// Orbit members in discovery order; `subspaces[0]` is the start.
    pub subspaces: Vec<Subspace>,
    pub finite: bool,
    /// Orbit size, meaningful only when `finite`.
    pub size: usize,
    pub cap_hit: bool,
    pub generator_labels: Vec<String>,
}

/// Orbit of `start` under the group generated by `spec` (inverses included).
///
/// Letters are tried in label order (each generator, then its inverse) and
/// the queue is FIFO, so the resulting list is deterministic.
pub fn orbit(start: &Subspace, spec: &MonodromyGroupSpec, cap: usize) -> Result<OrbitResult> {
    if cap == 0 {
        return Err(AnalysisError::ZeroCap);
    }
    if start.ambient_dim() != spec.size() {
        return Err(LinalgError::DimensionMismatch {
            expected: spec.size(),
            found: start.ambient_dim(),
        }
        .into());
    }
    let mut seen: HashSet<Subspace> = HashSet::from([start.clone()]);
    let mut members = vec![start.clone()];
    let mut queue = VecDeque::from([0usize]);
    let labels = spec.labels().to_vec();
    while let Some(i) = queue.pop_front() {
        for (_, m) in spec.letters() {
            let image = members[i].image_unchecked(m)?;
            if seen.contains(&image) {
                continue;
            }
            if members.len() == cap {
                return Ok(OrbitResult {
                    size: members.len(),
                    subspaces: members,
                    finite: false,
                    cap_hit: true,
                    generator_labels: labels,
                });
            }
            seen.insert(image.clone());
            members.push(image);
            queue.push_back(members.len() - 1);
        }
    }
    Ok(OrbitResult {
        size: members.len(),
        subspaces: members,
        finite: true,
        cap_hit: false,
        generator_labels: labels,
    })
}

impl OrbitResult {
    /// Re-checks closure: every letter maps every member into the list.
    pub fn is_closed_under(&self, spec: &MonodromyGroupSpec) -> Result<bool> {
        let members: HashSet<&Subspace> = self.subspaces.iter().collect();
        for s in &self.subspaces {
            for (_, m) in spec.letters() {
                if !members.contains(&s.image_unchecked(m)?) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureResult {
    pub subspace: Subspace,
    /// `(l, mon0^{-l} gamma)` for every forced enlargement, in order.
    pub forced_vectors: Vec<(i64, Vector)>,
    /// Sweeps over the exponent range, including the final one that added nothing.
    pub passes: usize,
    pub stable_under_doubling: bool,
    pub exponent_bound: u64,
}

/// For `l` in `[-bound, bound]`: the functional `iota o mon0^l` and the
/// vector `mon0^{-l} gamma`, both computed by repeated exact steps.
struct ExponentTable {
    bound: i64,
    functionals: Vec<Vector>,
    gamma_preimages: Vec<Vector>,
}

impl ExponentTable {
    fn new(mon0: &Matrix, iota: &[Rational], gamma: &[Rational], bound: i64) -> Result<Self> {
        let inv = mon0.inverse()?;
        let width = (2 * bound + 1) as usize;
        let mut functionals = vec![Vector::new(); width];
        let mut gamma_preimages = vec![Vector::new(); width];
        let mid = bound as usize;
        functionals[mid] = iota.to_vec();
        gamma_preimages[mid] = gamma.to_vec();
        for k in 1..=mid {
            functionals[mid + k] = mon0.pull_back(&functionals[mid + k - 1])?;
            functionals[mid - k] = inv.pull_back(&functionals[mid - k + 1])?;
            gamma_preimages[mid + k] = inv.apply(&gamma_preimages[mid + k - 1])?;
            gamma_preimages[mid - k] = mon0.apply(&gamma_preimages[mid - k + 1])?;
        }
        Ok(Self {
            bound,
            functionals,
            gamma_preimages,
        })
    }

    fn exponents(&self) -> impl Iterator<Item = (i64, &Vector, &Vector)> {
        (-self.bound..=self.bound)
            .zip(self.functionals.iter().zip(&self.gamma_preimages))
            .map(|(l, (f, g))| (l, f, g))
    }

    fn functional(&self, l: i64) -> &Vector {
        &self.functionals[(l + self.bound) as usize]
    }
}

fn vanishes_on(functional: &[Rational], h: &Subspace) -> bool {
    h.basis().iter().all(|b| dot(functional, b).is_zero())
}

/// The closure, the vectors it forced with their exponents, and the sweep count.
type Forced = (Subspace, Vec<(i64, Vector)>, usize);

/// Runs forcing sweeps from `h` until a sweep adds nothing.
fn force(mut h: Subspace, table: &ExponentTable) -> Result<Forced> {
    let mut forced = Vec::new();
    let mut passes = 0;
    loop {
        passes += 1;
        let mut added = false;
        for (l, functional, preimage) in table.exponents() {
            if vanishes_on(functional, &h) || h.contains(preimage)? {
                continue;
            }
            h = h.sum(&Subspace::span(std::slice::from_ref(preimage), h.ambient_dim())?)?;
            forced.push((l, preimage.clone()));
            added = true;
        }
        if !added {
            return Ok((h, forced, passes));
        }
    }
}

/// Smallest subspace containing `gamma` closed under the forcing rule for
/// exponents `|l| <= exponent_bound`.
///
/// The bound must cover at least two torsion periods of `mon0` (`2pq` for the
/// parabolic family, `2p` for Lotka-Volterra). Stability is then re-checked
/// with the bound doubled.
pub fn gamma_closure(model: &HomologyModel, exponent_bound: u64) -> Result<ClosureResult> {
    let iota = model.iota()?;
    let required = 2 * model.torsion_order();
    if exponent_bound < required {
        return Err(AnalysisError::ExponentBoundTooSmall {
            given: exponent_bound,
            required,
        });
    }
    let gamma = model.gamma();
    let start = Subspace::span(std::slice::from_ref(&gamma), model.rank())?;
    let table = ExponentTable::new(&model.mon0, iota, &gamma, exponent_bound as i64)?;
    let (subspace, forced_vectors, passes) = force(start, &table)?;

    let doubled = ExponentTable::new(&model.mon0, iota, &gamma, 2 * exponent_bound as i64)?;
    let (_, extra, _) = force(subspace.clone(), &doubled)?;

    Ok(ClosureResult {
        subspace,
        forced_vectors,
        passes,
        stable_under_doubling: extra.is_empty(),
        exponent_bound,
    })
}

/// Default exponent bound: three torsion periods.
pub fn default_exponent_bound(model: &HomologyModel) -> u64 {
    3 * model.torsion_order()
}

impl ClosureResult {
    /// Re-running the forcing on the result adds nothing.
    pub fn is_fixpoint(&self, model: &HomologyModel) -> Result<bool> {
        let iota = model.iota()?;
        let table = ExponentTable::new(&model.mon0, iota, &model.gamma(), self.exponent_bound as i64)?;
        let (_, extra, _) = force(self.subspace.clone(), &table)?;
        Ok(extra.is_empty())
    }

    /// Every sampled `mon0^l H` is `monc`-invariant: either `iota` vanishes on
    /// it or it contains `gamma`.
    pub fn is_monc_compatible(&self, model: &HomologyModel) -> Result<bool> {
        let monc = model.monc_or_picard_lefschetz()?;
        let bound = self.exponent_bound as i64;
        let inv = model.mon0.inverse()?;
        let mut forward = self.subspace.clone();
        let mut backward = self.subspace.clone();
        for _ in 0..=bound {
            if !forward.is_invariant_under(&monc)? || !backward.is_invariant_under(&monc)? {
                return Ok(false);
            }
            forward = forward.image_unchecked(&model.mon0)?;
            backward = backward.image_unchecked(&inv)?;
        }
        Ok(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertifiedMinimal {
    /// Dimension of the closure; any virtually invariant subspace containing
    /// `gamma` has at least this dimension.
    pub lower_bound: usize,
    pub certified: bool,
    pub orbit: OrbitResult,
}

impl CertifiedMinimal {
    /// The minimal dimension, when certified.
    pub fn minimal_dim(&self) -> Option<usize> {
        self.certified.then_some(self.lower_bound)
    }
}

/// Certifies the closure as the minimal virtually invariant subspace by
/// checking that its own orbit under `{mon0, monc}` is finite within `cap`.
pub fn certify_minimal(model: &HomologyModel, closure: &ClosureResult, cap: usize) -> Result<CertifiedMinimal> {
    let spec = MonodromyGroupSpec::from_model(model)?;
    let orbit = orbit(&closure.subspace, &spec, cap)?;
    Ok(CertifiedMinimal {
        lower_bound: closure.subspace.dim(),
        certified: orbit.finite,
        orbit,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ParityCase {
    BothOdd,
    PEven,
    QEven,
}

impl ParityCase {
    pub fn of(p: u32, q: u32) -> Self {
        if p.is_even() {
            ParityCase::PEven
        } else if q.is_even() {
            ParityCase::QEven
        } else {
            ParityCase::BothOdd
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ParityCase::BothOdd => "both_odd",
            ParityCase::PEven => "p_even",
            ParityCase::QEven => "q_even",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSubspaceProfile {
    /// `{v in h : gamma . mon0^l v = 0}` over the sampled exponents.
    pub kernel: Subspace,
    pub parity_case: ParityCase,
    /// The spanning vector predicted by the parity case, if that case allows
    /// a nonzero kernel.
    pub predicted_span: Option<Vector>,
}

impl ZeroSubspaceProfile {
    /// The kernel lies inside the predicted span (`{0}` for both odd).
    pub fn matches_prediction(&self) -> Result<bool> {
        let n = self.kernel.ambient_dim();
        let predicted = match &self.predicted_span {
            Some(v) => Subspace::span(std::slice::from_ref(v), n)?,
            None => Subspace::zero(n),
        };
        Ok(predicted.contains_subspace(&self.kernel)?)
    }

    pub fn kernel_generator(&self) -> Option<&Vector> {
        (self.kernel.dim() == 1).then(|| &self.kernel.basis()[0])
    }
}

/// Predicted zero-subspace direction: `2 sum_{j even} P_j + (Delta2 - Delta1)`
/// for even `p`, `2 sum_{i even} Q_i - (Delta2 - Delta1)` for even `q`.
fn predicted_zero_direction(model: &HomologyModel, case: ParityCase) -> Result<Option<Vector>> {
    let (stem, count, sign) = match case {
        ParityCase::BothOdd => return Ok(None),
        ParityCase::PEven => ("P", model.params.p, 1),
        ParityCase::QEven => ("Q", model.params.q, -1),
    };
    let names: Vec<String> = (0..count).step_by(2).map(|j| format!("{stem}{j}")).collect();
    let mut terms: Vec<(&str, i64)> = names.iter().map(|n| (n.as_str(), 2)).collect();
    terms.push(("Delta2", sign));
    terms.push(("Delta1", -sign));
    Ok(Some(model.combination(&terms)?))
}

/// Classes in `h` pairing trivially with `gamma` after every power of `mon0`.
///
/// Exponents `|l| <= exponent_bound + T` are sampled, `T` the torsion period;
/// the extra period captures the affine drift of `mon0^{T N}`.
pub fn zero_subspace_profile(model: &HomologyModel, h: &Subspace, exponent_bound: u64) -> Result<ZeroSubspaceProfile> {
    if model.family() != Family::Parabolic {
        return Err(AnalysisError::NotParabolic(model.family()));
    }
    let iota = model.iota()?;
    let gamma = model.gamma();
    if !h.contains(&gamma)? {
        return Err(AnalysisError::GammaNotInSubspace);
    }
    let bound = (exponent_bound + model.torsion_order()) as i64;
    let table = ExponentTable::new(&model.mon0, iota, &gamma, bound)?;
    let constraints: Vec<Vector> = (-bound..=bound)
        .map(|l| {
            let f = table.functional(l);
            h.basis().iter().map(|b| dot(f, b)).collect()
        })
        .collect();
    let vectors: Vec<Vector> = kernel(&constraints, h.dim())
        .into_iter()
        .map(|coeffs| {
            let mut v = vec![Rational::zero(); h.ambient_dim()];
            for (c, b) in coeffs.iter().zip(h.basis()) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x += c * y;
                }
            }
            v
        })
        .collect();
    let parity_case = ParityCase::of(model.params.p, model.params.q);
    Ok(ZeroSubspaceProfile {
        kernel: Subspace::span(&vectors, h.ambient_dim())?,
        parity_case,
        predicted_span: predicted_zero_direction(model, parity_case)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderWindow {
    pub low: usize,
    pub high: usize,
}

impl OrderWindow {
    /// No annihilator of order `< p + q - 1` for the parabolic family.
    pub fn respects_parabolic_bound(&self, model: &HomologyModel) -> bool {
        self.low + 1 >= (model.params.p + model.params.q) as usize
    }
}

/// Window for the minimal annihilator order: `high` is the certified minimal
/// dimension, `low` subtracts the zero-kernel dimension (or 1 without a profile).
pub fn annihilator_order_bounds(
    certified: &CertifiedMinimal,
    profile: Option<&ZeroSubspaceProfile>,
) -> Result<OrderWindow> {
    let high = certified.minimal_dim().ok_or(AnalysisError::Uncertified)?;
    let drop = profile.map_or(1, |p| p.kernel.dim());
    Ok(OrderWindow {
        low: high.saturating_sub(drop),
        high,
    })
}

/// Whether the `p` cyclic block sums `e_{iq} + ... + e_{iq+q-1}` (indices mod
/// `p`, `i = 0..p`) span `Q^p`.
pub fn linalg_lemma_check(p: u32, q: u32) -> bool {
    if p == 0 {
        return false;
    }
    let dim = p as usize;
    let vectors: Vec<Vector> = (0..u64::from(p))
        .map(|i| {
            let mut v = vec![Rational::zero(); dim];
            for r in 0..u64::from(q) {
                v[((i * u64::from(q) + r) % u64::from(p)) as usize] += Rational::from_integer(1.into());
            }
            v
        })
        .collect();
    rank(&vectors, dim) == dim
}
