//! Brute-force oracles over small prime fields.
//!
//! Every sample draws from its own generator, seeded by the sweep seed and
//! the sample index, so reports do not depend on how samples are scheduled.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dspace::FormU;
use crate::foundation::{Field, Matrix, Scalar};
use crate::moduli::{is_in_x, tangent_and_normal, Direction, PointP2, SheafMatrix};
use crate::rbundle::{
    build_phi, build_phi_unchecked, conic, equivalent, point_q, stabilizer_orbits, AutomorphismL,
    StabilizerClass,
};
use crate::Error;

/// Environment variable overriding the number of worker threads.
pub const WORKERS_ENV: &str = "RBUNDLE_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Oracle {
    All,
    Singular,
    Equiv,
    Stabilizer,
}

impl Oracle {
    fn includes(self, other: Oracle) -> bool {
        self == Oracle::All || self == other
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepConfig {
    pub prime: u64,
    pub samples: usize,
    pub seed: u64,
    pub oracle: Oracle,
}

impl SweepConfig {
    pub fn new(prime: u64, samples: usize, seed: u64, oracle: Oracle) -> Result<Self, Error> {
        Field::prime(prime)?;
        if samples == 0 {
            return Err(Error::Parse("sample count must be at least 1".into()));
        }
        Ok(SweepConfig {
            prime,
            samples,
            seed,
            oracle,
        })
    }

    pub fn field(&self) -> Field {
        Field::Prime(self.prime)
    }

    fn rng(&self, index: usize) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index as u64);
        rng
    }
}

/// Runs `f` over `0..n` in parallel, honouring [`WORKERS_ENV`]; results keep index order.
fn run_indexed<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    let workers = std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w > 0);
    match workers.and_then(|w| rayon::ThreadPoolBuilder::new().num_threads(w).build().ok()) {
        Some(pool) => pool.install(|| (0..n).into_par_iter().map(&f).collect()),
        None => (0..n).into_par_iter().map(f).collect(),
    }
}

/// Uniform over `F_p`; over `Q`, a small integer in `[-5, 5]`.
pub fn random_scalar<R: Rng>(rng: &mut R, field: Field) -> Scalar {
    match field.order() {
        Some(p) => field.from_i64(rng.random_range(0..p) as i64),
        None => field.from_i64(rng.random_range(-5..=5)),
    }
}

pub fn random_nonzero<R: Rng>(rng: &mut R, field: Field) -> Scalar {
    loop {
        let s = random_scalar(rng, field);
        if !s.is_zero() {
            return s;
        }
    }
}

/// A special matrix with random coefficients, resampled until its determinant is nonzero.
pub fn random_special<R: Rng>(rng: &mut R, field: Field) -> SheafMatrix {
    loop {
        let a = std::array::from_fn(|_| random_scalar(rng, field));
        let b = std::array::from_fn(|_| random_scalar(rng, field));
        let m = SheafMatrix::special(field, a, b);
        if is_in_x(&m) {
            return m;
        }
    }
}

pub fn random_direction<R: Rng>(rng: &mut R, field: Field) -> Direction {
    let coords: Vec<Scalar> = (0..18).map(|_| random_scalar(rng, field)).collect();
    Direction::from_coordinates(field, &coords).expect("eighteen coordinates")
}

/// A random direction tangent to `X8` at the special matrix `a`.
pub fn random_tangent<R: Rng>(rng: &mut R, a: &SheafMatrix) -> Direction {
    let field = a.field();
    let s = a.special_coefficients().expect("special matrix");
    let mut coords = random_direction(rng, field).coordinates();
    let (xi0, eta0) = (coords[0].clone(), coords[3].clone());
    coords[6] = &(&s.a01 * &xi0) + &(&s.a02 * &eta0);
    coords[12] = &(&s.b01 * &xi0) + &(&s.b02 * &eta0);
    Direction::from_coordinates(field, &coords).expect("eighteen coordinates")
}

pub fn random_normal<R: Rng>(rng: &mut R, a: &SheafMatrix) -> Direction {
    loop {
        let b = random_direction(rng, a.field());
        if !tangent_and_normal(a, &b).expect("special matrix").0 {
            return b;
        }
    }
}

/// All points of `P2(F_p)` in normalized form.
pub fn projective_plane(field: Field) -> Vec<PointP2> {
    let elems: Vec<Scalar> = field.elements().expect("prime field").collect();
    let (zero, one) = (field.zero(), field.one());
    let mut out = Vec::new();
    for a in &elems {
        for b in &elems {
            out.push(PointP2::new([one.clone(), a.clone(), b.clone()]).expect("nonzero"));
        }
    }
    for a in &elems {
        out.push(PointP2::new([zero.clone(), one.clone(), a.clone()]).expect("nonzero"));
    }
    out.push(PointP2::new([zero.clone(), zero, one]).expect("nonzero"));
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularSweepReport {
    pub prime: u64,
    pub samples: usize,
    pub tangent_samples: usize,
    pub passes: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

/// For each sample, enumerates `D1(F_p)` and compares the common zeros of the
/// entries of `Phi` with the tangency verdict of the normal coordinates.
pub fn ff_singular_sweep(cfg: &SweepConfig) -> SingularSweepReport {
    let field = cfg.field();
    let plane = projective_plane(field);
    let outcomes = run_indexed(cfg.samples, |i| {
        let mut rng = cfg.rng(i);
        let a = random_special(&mut rng, field);
        let force_tangent = rng.random_bool(0.5);
        let b = if force_tangent {
            random_tangent(&mut rng, &a)
        } else {
            random_direction(&mut rng, field)
        };
        let (tangent, n) = tangent_and_normal(&a, &b).expect("special matrix");
        let phi = build_phi_unchecked(&a, &b).expect("special matrix");
        let zeros: Vec<&PointP2> = plane
            .iter()
            .filter(|p| phi.eval_d1(p.coords()).iter().all(Scalar::is_zero))
            .collect();
        let ok = if tangent {
            zeros.len() == 1 && *zeros[0] == point_q(&phi)
        } else {
            zeros.is_empty()
        };
        let detail = (!ok).then(|| format!("A = {a}, B = {b}, n = {n}, zeros = {}", zeros.len()));
        (tangent, ok, detail)
    });
    let failures = outcomes.iter().filter(|o| !o.1).count();
    SingularSweepReport {
        prime: cfg.prime,
        samples: cfg.samples,
        tangent_samples: outcomes.iter().filter(|o| o.0).count(),
        passes: cfg.samples - failures,
        failures,
        first_counterexample: outcomes.into_iter().find_map(|o| o.2),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceSweepReport {
    pub prime: u64,
    pub equivalent_pairs: usize,
    pub witnesses_verified: usize,
    pub inequivalent_pairs: usize,
    pub absences_correct: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

/// Outcome of one equivalent pair `(B1, alpha*B1 + T)` and one pair with
/// non-proportional normal coordinates.
fn equivalence_sample<R: Rng>(rng: &mut R, field: Field) -> (bool, bool, Option<String>) {
    let a = random_special(rng, field);
    let b1 = random_normal(rng, &a);
    let alpha = random_nonzero(rng, field);
    let t = random_tangent(rng, &a);
    let b2 = b1.scale(&alpha).add(&t);
    let witnessed = matches!(equivalent(&a, &b1, &b2), Ok(Some(ref e)) if e.alpha == alpha);

    let n1 = tangent_and_normal(&a, &b1).expect("special").1;
    let b3 = loop {
        let c = random_normal(rng, &a);
        let n3 = tangent_and_normal(&a, &c).expect("special").1;
        if n1.ratio_to(&n3).is_none() {
            break c;
        }
    };
    let absent = matches!(equivalent(&a, &b1, &b3), Ok(None));
    let detail = (!witnessed || !absent)
        .then(|| format!("A = {a}, B1 = {b1}, alpha = {alpha}, T = {t}, B3 = {b3}"));
    (witnessed, absent, detail)
}

pub fn ff_equivalence_sweep(cfg: &SweepConfig) -> EquivalenceSweepReport {
    let field = cfg.field();
    let outcomes = run_indexed(cfg.samples, |i| equivalence_sample(&mut cfg.rng(i), field));
    let witnesses = outcomes.iter().filter(|o| o.0).count();
    let absences = outcomes.iter().filter(|o| o.1).count();
    EquivalenceSweepReport {
        prime: cfg.prime,
        equivalent_pairs: cfg.samples,
        witnesses_verified: witnesses,
        inequivalent_pairs: cfg.samples,
        absences_correct: absences,
        failures: 2 * cfg.samples - witnesses - absences,
        first_failure: outcomes.into_iter().find_map(|o| o.2),
    }
}

/// Symbolic equivalence checks over `Q` on `samples` random instances; returns
/// the number of instances where both the witness and the absence are correct.
pub fn rational_equivalence_checks(samples: usize, seed: u64) -> usize {
    run_indexed(samples, |i| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        let (w, a, _) = equivalence_sample(&mut rng, Field::Rational);
        w && a
    })
    .into_iter()
    .filter(|&ok| ok)
    .count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCount {
    pub count: u64,
    pub elements: Vec<AutomorphismL>,
}

fn proportional(a: &Matrix, b: &Matrix) -> bool {
    let n = a.rows();
    let Some((r, c)) = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .find(|&(r, c)| !a.get(r, c).is_zero())
    else {
        return false;
    };
    let Ok(lambda) = b.get(r, c).checked_div(a.get(r, c)) else {
        return false;
    };
    !lambda.is_zero() && (0..n).all(|r| (0..n).all(|c| &(a.get(r, c) * &lambda) == b.get(r, c)))
}

/// Enumerates all `(p-1) p^2` automorphisms fixing `L` and keeps those whose
/// point map `P` satisfies `P^T S P ~ S`, `S` the symmetric matrix of `c1`.
pub fn ff_stabilizer_count(c1: &FormU) -> Result<StabilizerCount, Error> {
    let field = c1.field();
    if field.order().is_none() {
        return Err(Error::Parse(
            "stabilizer enumeration needs a prime field".into(),
        ));
    }
    if c1.is_zero() {
        return Err(Error::DegenerateConic);
    }
    let s = c1.doubled_symmetric_matrix();
    let elems: Vec<Scalar> = field.elements().expect("prime field").collect();
    let (zero, one) = (field.zero(), field.one());
    let mut elements = Vec::new();
    for alpha in elems.iter().filter(|x| !x.is_zero()) {
        for beta in &elems {
            for gamma in &elems {
                let p = Matrix::from_rows(
                    field,
                    vec![
                        vec![alpha.clone(), zero.clone(), zero.clone()],
                        vec![beta.clone(), one.clone(), zero.clone()],
                        vec![gamma.clone(), zero.clone(), one.clone()],
                    ],
                );
                let moved = p.transpose().mul(&s).mul(&p);
                if proportional(&s, &moved) {
                    elements.push(AutomorphismL {
                        alpha: alpha.clone(),
                        beta: beta.clone(),
                        gamma: gamma.clone(),
                    });
                }
            }
        }
    }
    Ok(StabilizerCount {
        count: elements.len() as u64,
        elements,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizerSweepReport {
    pub prime: u64,
    pub samples: usize,
    pub agreements: usize,
    pub failures: usize,
    pub classes: Vec<(StabilizerClass, usize)>,
    pub first_failure: Option<String>,
}

/// Compares the enumerated stabilizer with the analytic one: same size, and
/// every enumerated element lies in the analytic group.
pub fn stabilizer_agrees(c1: &FormU) -> Result<(StabilizerClass, bool), Error> {
    let report = stabilizer_orbits(c1)?;
    let brute = ff_stabilizer_count(c1)?;
    let ok = Some(brute.count) == report.group_order
        && brute.elements.iter().all(|g| report.group.contains(g));
    Ok((report.stabilizer_class, ok))
}

/// Conics are drawn from `Phi(A', B)` for random special `A'` and normal `B`;
/// a third of the samples force `C1` singular by using a conic with a
/// prescribed vertex, to reach the rarer classes.
pub fn ff_stabilizer_sweep(cfg: &SweepConfig) -> StabilizerSweepReport {
    let field = cfg.field();
    let outcomes = run_indexed(cfg.samples, |i| {
        let mut rng = cfg.rng(i);
        let c1 = if i % 3 == 2 {
            random_singular_conic(&mut rng, field)
        } else {
            let a = random_special(&mut rng, field);
            let b = random_normal(&mut rng, &a);
            conic(&build_phi(&a, &b).expect("normal direction"))
        };
        match stabilizer_agrees(&c1) {
            Ok((class, true)) => (Some(class), None),
            Ok((class, false)) => (Some(class), Some(format!("c1 = {c1}"))),
            Err(e) => (None, Some(format!("c1 = {c1}: {e}"))),
        }
    });
    let mut classes: Vec<(StabilizerClass, usize)> = Vec::new();
    for class in outcomes.iter().filter_map(|o| o.0) {
        match classes.iter_mut().find(|(c, _)| *c == class) {
            Some(entry) => entry.1 += 1,
            None => classes.push((class, 1)),
        }
    }
    let failures = outcomes.iter().filter(|o| o.1.is_some()).count();
    StabilizerSweepReport {
        prime: cfg.prime,
        samples: cfg.samples,
        agreements: cfg.samples - failures,
        failures,
        classes,
        first_failure: outcomes.into_iter().find_map(|o| o.1),
    }
}

/// A product of two random lines, not both equal to `u0 = 0`.
fn random_singular_conic<R: Rng>(rng: &mut R, field: Field) -> FormU {
    loop {
        let l: [Scalar; 3] = std::array::from_fn(|_| random_scalar(rng, field));
        let m: [Scalar; 3] = std::array::from_fn(|_| random_scalar(rng, field));
        // coefficients of (l.u)(m.u) on [u0^2, u0u1, u0u2, u1^2, u1u2, u2^2]
        let c = [
            &l[0] * &m[0],
            &(&l[0] * &m[1]) + &(&l[1] * &m[0]),
            &(&l[0] * &m[2]) + &(&l[2] * &m[0]),
            &l[1] * &m[1],
            &(&l[1] * &m[2]) + &(&l[2] * &m[1]),
            &l[2] * &m[2],
        ];
        let q = FormU::quadric(&c);
        if !q.is_zero() {
            return q;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub config: SweepConfig,
    pub singular: Option<SingularSweepReport>,
    pub equivalence: Option<EquivalenceSweepReport>,
    pub stabilizer: Option<StabilizerSweepReport>,
}

impl VerifyReport {
    pub fn failures(&self) -> usize {
        self.singular.as_ref().map_or(0, |r| r.failures)
            + self.equivalence.as_ref().map_or(0, |r| r.failures)
            + self.stabilizer.as_ref().map_or(0, |r| r.failures)
    }
}

pub fn run(cfg: &SweepConfig) -> VerifyReport {
    VerifyReport {
        config: cfg.clone(),
        singular: cfg
            .oracle
            .includes(Oracle::Singular)
            .then(|| ff_singular_sweep(cfg)),
        equivalence: cfg
            .oracle
            .includes(Oracle::Equiv)
            .then(|| ff_equivalence_sweep(cfg)),
        stabilizer: cfg
            .oracle
            .includes(Oracle::Stabilizer)
            .then(|| ff_stabilizer_sweep(cfg)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    fn nodal(f: Field) -> SheafMatrix {
        SheafMatrix::from_i64(
            f,
            [0, 1, 0],
            [0, 0, 1],
            [0, 0, 1, 0, 0, 1],
            [0, 1, 0, 0, 0, 0],
        )
    }

    #[test]
    fn plane_has_all_points() {
        assert_eq!(projective_plane(f7()).len(), 57);
    }

    #[test]
    fn fixed_nodal_instances_over_f7() {
        let f = f7();
        let plane = projective_plane(f);
        let zeros = |b: &Direction| {
            let phi = build_phi_unchecked(&nodal(f), b).unwrap();
            plane
                .iter()
                .filter(|p| phi.eval_d1(p.coords()).iter().all(Scalar::is_zero))
                .cloned()
                .collect::<Vec<_>>()
        };
        let tangent = Direction::central(f, 0, 1, 1, 0);
        let phi = build_phi_unchecked(&nodal(f), &tangent).unwrap();
        assert_eq!(zeros(&tangent), vec![point_q(&phi)]);
        assert!(zeros(&Direction::central(f, 0, 0, 1, 0)).is_empty());
    }

    #[test]
    fn stabilizer_counts_over_f7() {
        let f = f7();
        let smooth = FormU::quadric_i64(f, [0, 0, -1, 1, 0, -1]);
        assert_eq!(ff_stabilizer_count(&smooth).unwrap().count, 2);
        let lines = FormU::quadric_i64(f, [0, 0, 0, 1, 0, -1]);
        assert_eq!(ff_stabilizer_count(&lines).unwrap().count, 6);
        let tangent = FormU::quadric_i64(f, [0, 0, -1, 1, 0, 0]);
        let c = ff_stabilizer_count(&tangent).unwrap();
        assert_eq!(c.count, 1);
        assert!(c.elements[0].is_identity());
        for c1 in [smooth, lines, tangent] {
            assert!(stabilizer_agrees(&c1).unwrap().1);
        }
    }

    #[test]
    fn sweeps_are_deterministic() {
        let cfg = SweepConfig::new(5, 12, 9, Oracle::All).unwrap();
        let r1 = run(&cfg);
        let r2 = run(&cfg);
        assert_eq!(r1, r2);
        assert_eq!(r1.failures(), 0);
    }

    #[test]
    fn config_rejects_bad_input() {
        assert!(SweepConfig::new(4, 10, 0, Oracle::All).is_err());
        assert!(SweepConfig::new(5, 0, 0, Oracle::All).is_err());
    }
}
