//! Homology lattices of the three polynomial families with their monodromy.
//!
//! Every model is described twice: once on the full list of named generators
//! (where the relations live), and once on a free basis obtained by
//! eliminating the highest-indexed generator of each relation. The free-basis
//! data (`mon0`, `monc`, `iota`) is what the algorithms consume; the
//! generator-level data is kept so [`validate`] can check that everything
//! descends to the quotient.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::linalg::{
    fmt_rational, fmt_vector, int, int_vector, is_zero_vector, sub_vectors, unit_vector, LinalgError, Matrix, Rational,
    Subspace, Vector,
};
use crate::monodromy::picard_lefschetz_matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("p={p} and q={q} are not coprime")]
    NotCoprime { p: u32, q: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("the {0} family carries no intersection data")]
    NoIntersectionData(Family),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// `F = x^p y^q`, relative homology.
    Toy,
    /// `F = x^p (y^2 + x - 1)^q`.
    Parabolic,
    /// `F = (xy)^p (x + y - 1)`.
    LotkaVolterra,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Toy => "toy",
            Family::Parabolic => "parabolic",
            Family::LotkaVolterra => "lotka_volterra",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "toy" => Ok(Family::Toy),
            "parabolic" => Ok(Family::Parabolic),
            "lotka_volterra" | "lotka-volterra" => Ok(Family::LotkaVolterra),
            other => Err(ModelError::InvalidParameter(format!("unknown family `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyParams {
    pub family: Family,
    pub p: u32,
    pub q: u32,
    pub m: i64,
    pub n: i64,
}

/// The pair `(m, n)` with `p m + q n = 1`.
///
/// Among the solutions with `|m| < q`, `|n| < p` the one with `m > 0` is
/// returned (so `n <= 0`). The bounds relax to `<=` when `p = 1` or `q = 1`,
/// where `(1, 1 - p)` is used.
pub fn bezout_mn(p: u32, q: u32) -> Result<(i64, i64), ModelError> {
    if p == 0 || q == 0 {
        return Err(ModelError::InvalidParameter("p and q must be positive".into()));
    }
    if p.gcd(&q) != 1 {
        return Err(ModelError::NotCoprime { p, q });
    }
    let (p, q) = (i64::from(p), i64::from(q));
    if q == 1 {
        return Ok((1, 1 - p));
    }
    let ext = p.extended_gcd(&q);
    let m = ext.x.rem_euclid(q);
    let n = (1 - p * m) / q;
    Ok((m, n))
}

/// Named generators of a family, in the order used for vectors.
#[derive(Debug, Clone, Default)]
struct Layout {
    names: Vec<String>,
}

impl Layout {
    fn push(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.names.len() - 1
    }

    fn push_family(&mut self, stem: &str, count: u32) -> Vec<usize> {
        (0..count).map(|i| self.push(format!("{stem}{i}"))).collect()
    }

    fn len(&self) -> usize {
        self.names.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyModel {
    pub params: FamilyParams,
    pub generator_names: Vec<String>,
    /// Integer relations over the generators (each vector sums to zero in homology).
    pub relations: Vec<Vec<i64>>,
    /// Generator eliminated by each relation, parallel to `relations`.
    pub eliminated: Vec<usize>,
    pub basis_names: Vec<String>,
    /// `rank x generators`; column `g` holds generator `g` in free coordinates.
    pub quotient: Matrix,
    /// Action of `mon0` on the generators before elimination.
    pub generator_mon0: Matrix,
    /// `gamma . g` for every generator.
    pub generator_iota: Option<Vector>,
    /// `gamma . v` on the free basis.
    pub iota: Option<Vector>,
    pub mon0: Matrix,
    pub monc: Option<Matrix>,
    /// The critical value encircled by `monc`; informational only.
    pub critical_value_c: Option<Rational>,
    pub gamma_index: usize,
}

impl HomologyModel {
    pub fn rank(&self) -> usize {
        self.basis_names.len()
    }

    pub fn family(&self) -> Family {
        self.params.family
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generator_names.iter().position(|n| n == name)
    }

    /// Free-basis coordinates of a generator-space vector.
    pub fn expand(&self, generator_vector: &[Rational]) -> Result<Vector, ModelError> {
        Ok(self.quotient.apply(generator_vector)?)
    }

    /// Free-basis coordinates of `sum coeff * generator`, eliminated generators allowed.
    pub fn combination(&self, terms: &[(&str, i64)]) -> Result<Vector, ModelError> {
        let mut g = vec![Rational::zero(); self.generator_names.len()];
        for (name, c) in terms {
            let i = self
                .generator_index(name)
                .ok_or_else(|| ModelError::InvalidParameter(format!("no generator `{name}`")))?;
            g[i] += int(*c);
        }
        self.expand(&g)
    }

    /// Free-basis coordinates of one named generator.
    pub fn class_of(&self, name: &str) -> Result<Vector, ModelError> {
        self.combination(&[(name, 1)])
    }

    pub fn gamma(&self) -> Vector {
        unit_vector(self.rank(), self.gamma_index)
    }

    pub fn iota(&self) -> Result<&Vector, ModelError> {
        self.iota
            .as_ref()
            .ok_or(ModelError::NoIntersectionData(self.params.family))
    }

    /// `monc`, falling back to the Picard-Lefschetz operator built from `iota`.
    pub fn monc_or_picard_lefschetz(&self) -> Result<Matrix, ModelError> {
        match &self.monc {
            Some(m) => Ok(m.clone()),
            None => Ok(picard_lefschetz_matrix(self.iota()?, self.gamma_index)),
        }
    }

    /// Order of the permutation part of `mon0`: `pq` for toy/parabolic, `p` for
    /// Lotka-Volterra. `mon0` raised to this power is unipotent on the model.
    pub fn torsion_order(&self) -> u64 {
        let FamilyParams { p, q, .. } = self.params;
        match self.params.family {
            Family::Toy | Family::Parabolic => u64::from(p) * u64::from(q),
            Family::LotkaVolterra => u64::from(p),
        }
    }

    /// Expected `mon0^torsion gamma - gamma` for the family.
    pub fn expected_torsion_drift(&self) -> Result<Vector, ModelError> {
        match self.params.family {
            Family::Toy => self.combination(&[("Delta", -1)]),
            Family::Parabolic => self.combination(&[("Delta2", 1), ("Delta1", -1)]),
            Family::LotkaVolterra => self.combination(&[("Delta1", 1), ("Delta2", -1), ("delta0", 1)]),
        }
    }

    pub fn expected_rank(&self) -> usize {
        let FamilyParams { p, q, .. } = self.params;
        let (p, q) = (p as usize, q as usize);
        match self.params.family {
            Family::Toy => p + q,
            Family::Parabolic => p + q + 1,
            Family::LotkaVolterra => 2 * p + 2,
        }
    }
}

fn cyclic(index: i64, modulus: u32) -> usize {
    index.rem_euclid(i64::from(modulus)) as usize
}

/// Row vector of a relation; `terms` are `(generator, coefficient)` pairs.
fn relation(len: usize, terms: impl IntoIterator<Item = (usize, i64)>) -> Vec<i64> {
    let mut r = vec![0; len];
    for (g, c) in terms {
        r[g] += c;
    }
    r
}

/// Quotient map and free-basis names, eliminating `eliminated[k]` through relation `k`.
fn quotient_map(
    layout: &Layout,
    relations: &[Vec<i64>],
    eliminated: &[usize],
) -> Result<(Matrix, Vec<usize>), ModelError> {
    let ngen = layout.len();
    let free: Vec<usize> = (0..ngen).filter(|g| !eliminated.contains(g)).collect();
    let rank = free.len();
    let position = |g: usize| free.iter().position(|&f| f == g);
    let mut columns: Vec<Vector> = Vec::with_capacity(ngen);
    for g in 0..ngen {
        if let Some(i) = position(g) {
            columns.push(unit_vector(rank, i));
            continue;
        }
        let k = eliminated.iter().position(|&e| e == g).unwrap();
        let r = &relations[k];
        let lead = r[g];
        if lead.abs() != 1 {
            return Err(ModelError::InvalidParameter(format!(
                "relation {k} has coefficient {lead} on eliminated generator"
            )));
        }
        // g = -(1/lead) * sum_{h != g} r[h] h
        let mut col = vec![Rational::zero(); rank];
        for (h, &c) in r.iter().enumerate() {
            if h == g || c == 0 {
                continue;
            }
            let i = position(h)
                .ok_or_else(|| ModelError::InvalidParameter("relation mentions two eliminated generators".into()))?;
            col[i] -= int(c * lead);
        }
        columns.push(col);
    }
    Ok((Matrix::from_columns(rank, &columns)?, free))
}

/// Descends a generator-level endomorphism to the free basis.
fn descend(quotient: &Matrix, generator_map: &Matrix, free: &[usize]) -> Result<Matrix, ModelError> {
    let columns: Vec<Vector> = free
        .iter()
        .map(|&g| quotient.apply(&generator_map.column(g)))
        .collect::<Result<_, _>>()?;
    Ok(Matrix::from_columns(quotient.rows(), &columns)?)
}

/// Generator-level matrix from a list of images; `images[g]` is the image of `g`.
fn generator_matrix(ngen: usize, images: &[Vec<(usize, i64)>]) -> Result<Matrix, ModelError> {
    let columns: Vec<Vector> = images
        .iter()
        .map(|terms| {
            let mut col = vec![Rational::zero(); ngen];
            for &(h, c) in terms {
                col[h] += int(c);
            }
            col
        })
        .collect();
    Ok(Matrix::from_columns(ngen, &columns)?)
}

fn params_for(family: Family, p: u32, q: u32) -> Result<FamilyParams, ModelError> {
    let (m, n) = bezout_mn(p, q)?;
    Ok(FamilyParams { family, p, q, m, n })
}

/// Indices `start, start+step, ...` (`count` of them) reduced mod `modulus`.
fn run(start: i64, step: i64, count: u64, modulus: u32) -> impl Iterator<Item = usize> {
    (0..count as i64).map(move |i| cyclic(start + step * i, modulus))
}

/// Relative homology of `x^p y^q`: rank `p+q`, no intersection data.
///
/// `mon gamma` adds `m` generators `Q_0, Q_{-1}, ..` and `|n|` generators
/// `P_0, P_{sgn n}, ..`, each run following the direction of the shift that
/// `mon` applies to that family of strips.
pub fn build_toy(p: u32, q: u32) -> Result<HomologyModel, ModelError> {
    let params = params_for(Family::Toy, p, q)?;
    let (m, n) = (params.m, params.n);
    let mut layout = Layout::default();
    let gamma = layout.push("gamma");
    let delta = layout.push("Delta");
    let qs = layout.push_family("Q", q);
    let ps = layout.push_family("P", p);
    let ngen = layout.len();

    let relations = vec![
        relation(ngen, qs.iter().map(|&g| (g, 1)).chain([(delta, 1)])),
        relation(ngen, ps.iter().map(|&g| (g, 1)).chain([(delta, -1)])),
    ];
    let eliminated = vec![qs[q as usize - 1], ps[p as usize - 1]];

    let mut images: Vec<Vec<(usize, i64)>> = vec![Vec::new(); ngen];
    let q_step = -m.signum();
    let p_step = n.signum();
    images[gamma] = std::iter::once((gamma, 1))
        .chain(run(0, q_step, m.unsigned_abs(), q).map(|j| (qs[j], 1)))
        .chain(run(0, p_step, n.unsigned_abs(), p).map(|k| (ps[k], 1)))
        .collect();
    images[delta] = vec![(delta, 1)];
    for j in 0..q as i64 {
        images[qs[j as usize]] = vec![(qs[cyclic(j - m, q)], 1)];
    }
    for k in 0..p as i64 {
        images[ps[k as usize]] = vec![(ps[cyclic(k + n, p)], 1)];
    }
    let generator_mon0 = generator_matrix(ngen, &images)?;

    let (quotient, free) = quotient_map(&layout, &relations, &eliminated)?;
    let mon0 = descend(&quotient, &generator_mon0, &free)?;
    Ok(HomologyModel {
        params,
        basis_names: free.iter().map(|&g| layout.names[g].clone()).collect(),
        generator_names: layout.names,
        relations,
        eliminated,
        quotient,
        generator_mon0,
        generator_iota: None,
        iota: None,
        mon0,
        monc: None,
        critical_value_c: None,
        gamma_index: 0,
    })
}

/// `gamma . g` on the parabolic generators. Coinciding listed indices
/// (`Q_0 = Q_{q-1}` when `q = 1`, likewise for `P`) add up.
fn parabolic_intersections(ngen: usize, d1: usize, d2: usize, qs: &[usize], ps: &[usize]) -> Vector {
    let mut iota = vec![Rational::zero(); ngen];
    iota[qs[0]] -= Rational::one();
    iota[qs[qs.len() - 1]] -= Rational::one();
    iota[ps[0]] += Rational::one();
    iota[ps[ps.len() - 1]] += Rational::one();
    iota[d1] += Rational::one();
    iota[d2] -= Rational::one();
    iota
}

/// Fiber homology of `x^p (y^2 + x - 1)^q`: rank `p+q+1`.
pub fn build_parabolic(p: u32, q: u32) -> Result<HomologyModel, ModelError> {
    let params = params_for(Family::Parabolic, p, q)?;
    let (m, n) = (params.m, params.n);
    let mut layout = Layout::default();
    let gamma = layout.push("gamma");
    let d1 = layout.push("Delta1");
    let d2 = layout.push("Delta2");
    let qs = layout.push_family("Q", q);
    let ps = layout.push_family("P", p);
    let ngen = layout.len();

    let relations = vec![
        relation(ngen, qs.iter().map(|&g| (g, 1)).chain([(d2, -1), (d1, 1)])),
        relation(ngen, ps.iter().map(|&g| (g, 1)).chain([(d1, -1), (d2, 1)])),
    ];
    let eliminated = vec![qs[q as usize - 1], ps[p as usize - 1]];

    let mut images: Vec<Vec<(usize, i64)>> = vec![Vec::new(); ngen];
    images[gamma] = std::iter::once((gamma, 1))
        .chain(run(0, m.signum(), m.unsigned_abs(), q).map(|j| (qs[j], 1)))
        .chain(run(0, -n.signum(), n.unsigned_abs(), p).map(|k| (ps[k], 1)))
        .collect();
    images[d1] = vec![(d1, 1)];
    images[d2] = vec![(d2, 1)];
    for j in 0..q as i64 {
        images[qs[j as usize]] = vec![(qs[cyclic(j + m, q)], 1)];
    }
    for k in 0..p as i64 {
        images[ps[k as usize]] = vec![(ps[cyclic(k - n, p)], 1)];
    }
    let generator_mon0 = generator_matrix(ngen, &images)?;

    let generator_iota = parabolic_intersections(ngen, d1, d2, &qs, &ps);
    // monc on generators, line by line: Q_0, Q_{q-1} lose gamma; P_0, P_{p-1}
    // and Delta1 gain gamma; Delta2 loses gamma; everything else is fixed.
    let mut monc_images: Vec<Vec<(usize, i64)>> = (0..ngen).map(|g| vec![(g, 1)]).collect();
    monc_images[qs[0]].push((gamma, -1));
    monc_images[qs[q as usize - 1]].push((gamma, -1));
    monc_images[ps[0]].push((gamma, 1));
    monc_images[ps[p as usize - 1]].push((gamma, 1));
    monc_images[d1].push((gamma, 1));
    monc_images[d2].push((gamma, -1));
    let generator_monc = generator_matrix(ngen, &monc_images)?;

    let (quotient, free) = quotient_map(&layout, &relations, &eliminated)?;
    let mon0 = descend(&quotient, &generator_mon0, &free)?;
    let monc = descend(&quotient, &generator_monc, &free)?;
    let iota: Vector = free.iter().map(|&g| generator_iota[g].clone()).collect();

    let (pr, qr) = (int(p.into()), int(q.into()));
    let total = &pr + &qr;
    let critical = num_traits::pow(&pr / &total, p as usize) * num_traits::pow(-&qr / &total, q as usize);

    Ok(HomologyModel {
        params,
        basis_names: free.iter().map(|&g| layout.names[g].clone()).collect(),
        generator_names: layout.names,
        relations,
        eliminated,
        quotient,
        generator_mon0,
        generator_iota: Some(generator_iota),
        iota: Some(iota),
        mon0,
        monc: Some(monc),
        critical_value_c: Some(critical),
        gamma_index: 0,
    })
}

/// Fiber homology of `(xy)^p (x + y - 1)`: rank `2p+2`.
pub fn build_lotka_volterra(p: u32) -> Result<HomologyModel, ModelError> {
    if p < 1 {
        return Err(ModelError::InvalidParameter("p must be at least 1".into()));
    }
    let params = params_for(Family::LotkaVolterra, p, 1)?;
    let mut layout = Layout::default();
    let gamma = layout.push("gamma");
    let d1 = layout.push("Delta1");
    let d2 = layout.push("Delta2");
    let ps = layout.push_family("P", p);
    let ds = layout.push_family("delta", p);
    let ngen = layout.len();
    let last = p as usize - 1;

    let relations = vec![relation(
        ngen,
        ps.iter().map(|&g| (g, 1)).chain([(d1, -1), (d2, 1), (ds[0], -1)]),
    )];
    let eliminated = vec![ps[last]];

    let mut images: Vec<Vec<(usize, i64)>> = vec![Vec::new(); ngen];
    images[gamma] = vec![(gamma, 1), (ps[0], 1)];
    images[d1] = vec![(d1, 1)];
    images[d2] = vec![(d2, 1)];
    for j in 0..last {
        images[ps[j]] = vec![(ps[j + 1], 1)];
    }
    images[ps[last]] = vec![(ps[0], 1), (ds[cyclic(1, p)], 1), (ds[0], -1)];
    for j in 0..p as i64 {
        images[ds[j as usize]] = vec![(ds[cyclic(j + 1, p)], 1)];
    }
    let generator_mon0 = generator_matrix(ngen, &images)?;

    let mut generator_iota = vec![Rational::zero(); ngen];
    generator_iota[ps[last]] = int(-1);
    generator_iota[ds[0]] = int(-1);
    generator_iota[d1] = int(-1);
    generator_iota[d2] = int(-1);

    let (quotient, free) = quotient_map(&layout, &relations, &eliminated)?;
    let mon0 = descend(&quotient, &generator_mon0, &free)?;
    let iota: Vector = free.iter().map(|&g| generator_iota[g].clone()).collect();
    let monc = picard_lefschetz_matrix(&iota, 0);

    // c = F(s, s) with s = p/(1+2p): s^(2p) (2s - 1).
    let s = Rational::new(p.into(), (1 + 2 * p).into());
    let critical = num_traits::pow(s.clone(), 2 * p as usize) * (int(2) * s - Rational::one());

    Ok(HomologyModel {
        params,
        basis_names: free.iter().map(|&g| layout.names[g].clone()).collect(),
        generator_names: layout.names,
        relations,
        eliminated,
        quotient,
        generator_mon0,
        generator_iota: Some(generator_iota),
        iota: Some(iota),
        mon0,
        monc: Some(monc),
        critical_value_c: Some(critical),
        gamma_index: gamma,
    })
}

/// Builds the model of `family`; `q` is ignored for Lotka-Volterra.
pub fn build(family: Family, p: u32, q: u32) -> Result<HomologyModel, ModelError> {
    match family {
        Family::Toy => build_toy(p, q),
        Family::Parabolic => build_parabolic(p, q),
        Family::LotkaVolterra => build_lotka_volterra(p),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, witness: impl FnOnce() -> String) -> Self {
        Check {
            name: name.into(),
            pass,
            witness: if pass { None } else { Some(witness()) },
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    fn push(&mut self, name: &str, pass: bool, witness: impl FnOnce() -> String) {
        self.checks.push(Check::new(name, pass, witness));
    }

    fn error(&mut self, name: &str, err: impl fmt::Display) {
        self.checks.push(Check {
            name: name.into(),
            pass: false,
            witness: Some(err.to_string()),
        });
    }
}

/// Checks every structural invariant of a model. Failures become report
/// entries carrying a witness; this never errors.
pub fn validate(model: &HomologyModel) -> ValidationReport {
    let mut report = ValidationReport::default();
    let rank = model.rank();
    let ngen = model.generator_names.len();

    report.push("rank", rank == model.expected_rank(), || {
        format!("rank {rank}, expected {}", model.expected_rank())
    });

    let shapes_ok = model.mon0.rows() == rank
        && model.mon0.cols() == rank
        && model.quotient.rows() == rank
        && model.quotient.cols() == ngen
        && model.generator_mon0.rows() == ngen
        && model.generator_mon0.cols() == ngen
        && model.relations.iter().all(|r| r.len() == ngen);
    report.push("shapes", shapes_ok, || {
        format!(
            "mon0 {}x{}, quotient {}x{}, generator_mon0 {}x{}, rank {rank}, generators {ngen}",
            model.mon0.rows(),
            model.mon0.cols(),
            model.quotient.rows(),
            model.quotient.cols(),
            model.generator_mon0.rows(),
            model.generator_mon0.cols()
        )
    });
    if !shapes_ok {
        return report;
    }

    let relations: Vec<Vector> = model.relations.iter().map(|r| int_vector(r)).collect();
    let relation_span = Subspace::span(&relations, ngen).expect("relation lengths checked");

    let bad = relations
        .iter()
        .find(|r| !is_zero_vector(&model.quotient.apply(r).unwrap()));
    report.push("relations_vanish_in_quotient", bad.is_none(), || {
        format!("relation {} maps to nonzero class", fmt_vector(bad.unwrap()))
    });

    let bad = relations.iter().find_map(|r| {
        let image = model.generator_mon0.apply(r).unwrap();
        (!relation_span.contains(&image).unwrap()).then_some(image)
    });
    report.push("mon0_preserves_relations", bad.is_none(), || {
        format!("image {} leaves the relation span", fmt_vector(bad.as_ref().unwrap()))
    });

    let lhs = model.quotient.mul(&model.generator_mon0).unwrap();
    let rhs = model.mon0.mul(&model.quotient).unwrap();
    report.push("mon0_descends", lhs == rhs, || {
        format!("quotient*mon0_gen = {lhs}, mon0*quotient = {rhs}")
    });

    match model.mon0.determinant() {
        Ok(det) => report.push("mon0_unimodular", det.abs().is_one(), || {
            format!("det(mon0) = {}", fmt_rational(&det))
        }),
        Err(e) => report.error("mon0_unimodular", e),
    }
    report.push("mon0_integral", model.mon0.is_integral(), || model.mon0.to_string());

    match (
        model.mon0.power(model.torsion_order() as i64),
        model.expected_torsion_drift(),
    ) {
        (Ok(power), Ok(expected)) => {
            let gamma = model.gamma();
            let drift = sub_vectors(&power.apply(&gamma).unwrap(), &gamma);
            report.push("torsion_drift", drift == expected, || {
                format!(
                    "mon0^T gamma - gamma = {}, expected {}",
                    fmt_vector(&drift),
                    fmt_vector(&expected)
                )
            });
        }
        (Err(e), _) => report.error("torsion_drift", e),
        (_, Err(e)) => report.error("torsion_drift", e),
    }

    if model.family() == Family::Toy {
        let none = model.iota.is_none() && model.monc.is_none() && model.generator_iota.is_none();
        report.push("toy_has_no_intersection_data", none, || {
            "toy model carries iota or monc".into()
        });
        return report;
    }

    let (Some(iota), Some(gen_iota)) = (&model.iota, &model.generator_iota) else {
        report.error("iota_present", "model has no intersection functional");
        return report;
    };
    if iota.len() != rank || gen_iota.len() != ngen {
        report.error("iota_present", format!("iota length {}, expected {rank}", iota.len()));
        return report;
    }

    let gamma = model.gamma();
    let at_gamma = crate::linalg::dot(iota, &gamma);
    report.push("iota_gamma_zero", at_gamma.is_zero(), || {
        format!("iota(gamma) = {}", fmt_rational(&at_gamma))
    });

    let bad = relations.iter().find(|r| !crate::linalg::dot(gen_iota, r).is_zero());
    report.push("iota_relation_compatible", bad.is_none(), || {
        format!("iota does not vanish on relation {}", fmt_vector(bad.unwrap()))
    });

    let pulled = model.quotient.pull_back(iota).unwrap();
    report.push("iota_descends", &pulled == gen_iota, || {
        format!(
            "iota*quotient = {}, generator iota = {}",
            fmt_vector(&pulled),
            fmt_vector(gen_iota)
        )
    });

    let sum_over = |stem: &str| -> Rational {
        model
            .generator_names
            .iter()
            .zip(gen_iota)
            .filter(|(n, _)| n.strip_prefix(stem).is_some_and(|s| s.parse::<u32>().is_ok()))
            .fold(Rational::zero(), |acc, (_, v)| acc + v)
    };
    let value = |name: &str| -> Rational {
        model
            .generator_index(name)
            .map_or_else(Rational::zero, |i| gen_iota[i].clone())
    };
    match model.family() {
        Family::Parabolic => {
            let qsum = sum_over("Q");
            let psum = sum_over("P");
            let diff = value("Delta2") - value("Delta1");
            report.push("iota_q_sum", qsum == int(-2) && qsum == diff, || {
                format!(
                    "sum iota(Q) = {}, iota(Delta2 - Delta1) = {}",
                    fmt_rational(&qsum),
                    fmt_rational(&diff)
                )
            });
            report.push("iota_p_sum", psum == int(2) && psum == -diff.clone(), || {
                format!(
                    "sum iota(P) = {}, iota(Delta1 - Delta2) = {}",
                    fmt_rational(&psum),
                    fmt_rational(&-diff)
                )
            });
        }
        Family::LotkaVolterra => {
            let psum = sum_over("P");
            let rhs = value("Delta1") - value("Delta2") + value("delta0");
            report.push("iota_p_sum", psum == int(-1) && psum == rhs, || {
                format!(
                    "sum iota(P) = {}, iota(Delta1 - Delta2 + delta0) = {}",
                    fmt_rational(&psum),
                    fmt_rational(&rhs)
                )
            });
        }
        Family::Toy => unreachable!(),
    }

    let Some(monc) = &model.monc else {
        report.error("monc_present", "model has intersection data but no monc");
        return report;
    };
    if monc.rows() != rank || monc.cols() != rank {
        report.error("monc_present", format!("monc is {}x{}", monc.rows(), monc.cols()));
        return report;
    }

    let generator_pl = picard_lefschetz_matrix(gen_iota, model.gamma_index_in_generators());
    let bad = relations.iter().find_map(|r| {
        let image = generator_pl.apply(r).unwrap();
        (!relation_span.contains(&image).unwrap()).then_some(image)
    });
    report.push("monc_preserves_relations", bad.is_none(), || {
        format!("image {} leaves the relation span", fmt_vector(bad.as_ref().unwrap()))
    });

    match monc.determinant() {
        Ok(det) => report.push("monc_unimodular", det.is_one(), || {
            format!("det(monc) = {}", fmt_rational(&det))
        }),
        Err(e) => report.error("monc_unimodular", e),
    }

    let nil = monc.sub(&Matrix::identity(rank)).unwrap();
    let square = nil.mul(&nil).unwrap();
    report.push("monc_unipotent", square.is_zero(), || {
        format!("(monc - I)^2 = {square}")
    });

    let image = Subspace::span(&nil.transpose().row_vectors(), rank).unwrap();
    let gamma_line = Subspace::span(std::slice::from_ref(&gamma), rank).unwrap();
    report.push("monc_image_gamma", image == gamma_line, || {
        format!("image of monc - I has basis {:?}", image.basis())
    });

    let pulled = monc.pull_back(iota).unwrap();
    report.push("monc_preserves_iota", &pulled == iota, || {
        format!("iota*monc = {}, iota = {}", fmt_vector(&pulled), fmt_vector(iota))
    });

    let pl = picard_lefschetz_matrix(iota, model.gamma_index);
    report.push("monc_matches_picard_lefschetz", &pl == monc, || {
        format!("monc = {monc}, picard-lefschetz = {pl}")
    });

    report
}

impl HomologyModel {
    fn gamma_index_in_generators(&self) -> usize {
        self.generator_index("gamma").unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::add_vectors;

    /// Exhaustive search for `p m + q n = 1` under the family bounds.
    fn bezout_oracle(p: i64, q: i64) -> Vec<(i64, i64)> {
        let strict = p > 1 && q > 1;
        let mut found = Vec::new();
        for m in -q..=q {
            for n in -p..=p {
                let ok_bounds = if strict {
                    m.abs() < q && n.abs() < p
                } else {
                    m.abs() <= q && n.abs() <= p
                };
                if ok_bounds && p * m + q * n == 1 {
                    found.push((m, n));
                }
            }
        }
        found
    }

    #[test]
    fn bezout_examples() {
        assert_eq!(bezout_mn(1, 2).unwrap(), (1, 0));
        assert_eq!(bezout_mn(2, 3).unwrap(), (2, -1));
        assert_eq!(bezout_mn(1, 1).unwrap(), (1, 0));
        assert_eq!(bezout_mn(4, 6), Err(ModelError::NotCoprime { p: 4, q: 6 }));
        assert!(bezout_mn(0, 3).is_err());
    }

    #[test]
    fn bezout_matches_exhaustive_search() {
        for p in 1..=12u32 {
            for q in 1..=12u32 {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let (m, n) = bezout_mn(p, q).unwrap();
                let candidates = bezout_oracle(p.into(), q.into());
                assert!(
                    candidates.contains(&(m, n)),
                    "({p},{q}) -> ({m},{n}) not in {candidates:?}"
                );
                let positive: Vec<_> = candidates.iter().filter(|(m, _)| *m > 0).collect();
                assert_eq!(positive.len(), 1, "({p},{q}): {candidates:?}");
                assert!(n <= 0);
            }
        }
    }

    #[test]
    fn toy_ranks_and_basis() {
        let toy = build_toy(1, 1).unwrap();
        assert_eq!(toy.rank(), 2);
        assert_eq!(toy.basis_names, vec!["gamma", "Delta"]);
        let toy = build_toy(2, 3).unwrap();
        assert_eq!(toy.rank(), 5);
        assert_eq!(toy.basis_names, vec!["gamma", "Delta", "Q0", "Q1", "P0"]);
    }

    #[test]
    fn toy_one_one_twists_gamma_by_delta() {
        // mon gamma = gamma + Q0 with Q0 = -Delta; no P-terms since n = 0.
        let toy = build_toy(1, 1).unwrap();
        let image = toy.mon0.apply(&toy.gamma()).unwrap();
        assert_eq!(image, toy.combination(&[("gamma", 1), ("Delta", -1)]).unwrap());
    }

    #[test]
    fn toy_fixes_delta() {
        let toy = build_toy(1, 2).unwrap();
        let delta = toy.class_of("Delta").unwrap();
        assert_eq!(toy.mon0.apply(&delta).unwrap(), delta);
    }

    #[test]
    fn toy_validates_for_small_pairs() {
        for p in 1..=6 {
            for q in 1..=6 {
                if let Ok(toy) = build_toy(p, q) {
                    let report = validate(&toy);
                    assert!(report.all_pass(), "toy ({p},{q}): {report:?}");
                }
            }
        }
    }

    #[test]
    fn parabolic_intersections_small() {
        let model = build_parabolic(1, 2).unwrap();
        assert_eq!(model.rank(), 4);
        let iota = model.iota().unwrap();
        let at = |name: &str| crate::linalg::dot(iota, &model.class_of(name).unwrap());
        assert_eq!(at("Delta1"), int(1));
        assert_eq!(at("Delta2"), int(-1));

        let degenerate = build_parabolic(1, 1).unwrap();
        let iota = degenerate.iota().unwrap();
        let at = |name: &str| crate::linalg::dot(iota, &degenerate.class_of(name).unwrap());
        assert_eq!(at("Q0"), int(-2));
        assert_eq!(at("P0"), int(2));
    }

    #[test]
    fn parabolic_corollary_two_three() {
        let model = build_parabolic(2, 3).unwrap();
        let gamma = model.gamma();
        let image = model.mon0.power(6).unwrap().apply(&gamma).unwrap();
        let expected = model
            .combination(&[("gamma", 1), ("Delta2", 1), ("Delta1", -1)])
            .unwrap();
        assert_eq!(image, expected);
    }

    #[test]
    fn parabolic_critical_value() {
        let model = build_parabolic(2, 3).unwrap();
        // (2/5)^2 (-3/5)^3
        assert_eq!(model.critical_value_c, Some(crate::linalg::ratio(-108, 3125)));
    }

    #[test]
    fn lotka_volterra_rank_and_torsion() {
        let lv = build_lotka_volterra(1).unwrap();
        assert_eq!(lv.rank(), 4);
        assert_eq!(lv.basis_names, vec!["gamma", "Delta1", "Delta2", "delta0"]);
        for p in 1..=8 {
            let lv = build_lotka_volterra(p).unwrap();
            let gamma = lv.gamma();
            let image = lv.mon0.power(p.into()).unwrap().apply(&gamma).unwrap();
            let expected = add_vectors(
                &gamma,
                &lv.combination(&[("Delta1", 1), ("Delta2", -1), ("delta0", 1)]).unwrap(),
            );
            assert_eq!(image, expected, "p = {p}");
        }
        assert!(build_lotka_volterra(0).is_err());
    }

    #[test]
    fn lotka_volterra_p_sum() {
        for p in 1..=6 {
            let lv = build_lotka_volterra(p).unwrap();
            let terms: Vec<(String, i64)> = (0..p).map(|j| (format!("P{j}"), 1)).collect();
            let refs: Vec<(&str, i64)> = terms.iter().map(|(n, c)| (n.as_str(), *c)).collect();
            let sum = lv.combination(&refs).unwrap();
            assert_eq!(crate::linalg::dot(lv.iota().unwrap(), &sum), int(-1));
        }
    }

    #[test]
    fn lotka_volterra_delta_intersection() {
        let lv = build_lotka_volterra(2).unwrap();
        let delta0 = lv.class_of("delta0").unwrap();
        assert_eq!(crate::linalg::dot(lv.iota().unwrap(), &delta0), int(-1));
    }

    #[test]
    fn family_models_validate() {
        let report = validate(&build_parabolic(2, 3).unwrap());
        assert!(report.all_pass(), "{report:?}");
        let report = validate(&build_lotka_volterra(3).unwrap());
        assert!(report.get("iota_p_sum").unwrap().pass);
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn injected_determinant_fails_unimodularity() {
        let mut model = build_parabolic(2, 3).unwrap();
        model.mon0[(1, 1)] = int(2);
        let report = validate(&model);
        let check = report.get("mon0_unimodular").unwrap();
        assert!(!check.pass);
        assert_eq!(check.witness.as_deref(), Some("det(mon0) = -2/1"));
        assert!(!report.all_pass());
    }

    #[test]
    fn broken_iota_is_reported() {
        let mut model = build_lotka_volterra(3).unwrap();
        model.iota.as_mut().unwrap()[1] = int(5);
        let report = validate(&model);
        assert!(!report.get("iota_descends").unwrap().pass);
        assert!(!report.get("monc_matches_picard_lefschetz").unwrap().pass);
    }

    #[test]
    fn family_names_round_trip() {
        for f in [Family::Toy, Family::Parabolic, Family::LotkaVolterra] {
            assert_eq!(f.name().parse::<Family>().unwrap(), f);
        }
        assert!("elliptic".parse::<Family>().is_err());
    }
}
