//! The affine binary action of invertible real matrices on real space,
//! checked numerically.
//!
//! A matrix `A` acts on a pair of vectors by
//! `A(x, y) = (E - A) x + A y`, where `E` is the identity. The identity
//! matrix returns `y`, equal arguments are fixed (`A(x, x) = x`), and
//! the binary-action axioms hold exactly in real arithmetic; here they
//! are verified on random samples against an explicit tolerance, with
//! max-norm residuals recorded in reports. Freezing the first argument
//! at a base point `a` yields an ordinary action `y -> a + A(y - a)`;
//! at the origin that is plain matrix-vector multiplication, and the
//! shift `v -> v - a` intertwines the action at `a` with the one at the
//! origin. Finally, a two-point set is never invariant: scaling the
//! line through the two points (or rotating it, in dimension two and
//! up) lands outside the set, and [`demo_union_not_invariant`] exhibits
//! such matrices.

use crate::error::{Error, Result};
use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Determinant floor for constructing an acting matrix.
pub const MIN_DET: f64 = 1e-6;
/// Determinant floor used when rejection-sampling random matrices,
/// stricter than construction so sampled problems stay well-conditioned.
pub const SAMPLE_MIN_DET: f64 = 1e-3;
/// Default tolerance for residual checks.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Default seed recorded in reports.
pub const DEFAULT_SEED: u64 = 42;

/// A square real matrix with determinant bounded away from zero.
#[derive(Debug, Clone, PartialEq)]
pub struct RealMatrix {
    inner: DMatrix<f64>,
}

impl RealMatrix {
    /// Builds from rows; the matrix must be square, have finite entries,
    /// and satisfy `|det| >= MIN_DET`.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let d = rows.len();
        if d == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be positive".into()));
        }
        let mut entries = Vec::with_capacity(d * d);
        for row in &rows {
            if row.len() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    found: row.len(),
                });
            }
            for &v in row {
                if !v.is_finite() {
                    return Err(Error::Validation("matrix entries must be finite".into()));
                }
                entries.push(v);
            }
        }
        let inner = DMatrix::from_row_slice(d, d, &entries);
        let det = inner.determinant();
        if det.abs() < MIN_DET {
            return Err(Error::Validation(format!(
                "matrix is too close to singular (|det| = {:.3e} < {MIN_DET:.0e})",
                det.abs()
            )));
        }
        Ok(RealMatrix { inner })
    }

    pub fn identity(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidArgument("matrix dimension must be positive".into()));
        }
        Ok(RealMatrix {
            inner: DMatrix::identity(d, d),
        })
    }

    /// The scalar matrix `c E`; `c` must keep the determinant floor.
    pub fn scalar(d: usize, c: f64) -> Result<Self> {
        let mut m = RealMatrix::identity(d)?;
        m.inner *= c;
        let det = m.inner.determinant();
        if !c.is_finite() || det.abs() < MIN_DET {
            return Err(Error::Validation(format!(
                "scalar {c} gives |det| below the {MIN_DET:.0e} floor"
            )));
        }
        Ok(m)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim())
            .map(|i| self.inner.row(i).iter().copied().collect())
            .collect()
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &RealMatrix) -> Result<RealMatrix> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(RealMatrix {
            inner: &self.inner * &other.inner,
        })
    }
}

/// A real vector with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct RealVector {
    inner: DVector<f64>,
}

impl RealVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidArgument("vector dimension must be positive".into()));
        }
        if entries.iter().any(|v| !v.is_finite()) {
            return Err(Error::Validation("vector entries must be finite".into()));
        }
        Ok(RealVector {
            inner: DVector::from_vec(entries),
        })
    }

    pub fn zeros(d: usize) -> Result<Self> {
        RealVector::new(vec![0.0; d])
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.inner.nrows()
    }

    pub fn entries(&self) -> Vec<f64> {
        self.inner.iter().copied().collect()
    }

    /// Max-norm distance to another vector.
    pub fn max_norm_distance(&self, other: &RealVector) -> f64 {
        (&self.inner - &other.inner)
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

fn check_dims(a: &RealMatrix, x: &RealVector, y: &RealVector) -> Result<usize> {
    let d = a.dim();
    for found in [x.dim(), y.dim()] {
        if found != d {
            return Err(Error::DimensionMismatch { expected: d, found });
        }
    }
    Ok(d)
}

/// The affine binary action `A(x, y) = (E - A) x + A y`, evaluated
/// literally.
pub fn affine_act(a: &RealMatrix, x: &RealVector, y: &RealVector) -> Result<RealVector> {
    let d = check_dims(a, x, y)?;
    let e = DMatrix::<f64>::identity(d, d);
    let inner = (&e - &a.inner) * &x.inner + &a.inner * &y.inner;
    Ok(RealVector { inner })
}

/// One failed residual check inside a [`NumericReport`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericFailure {
    pub check: String,
    pub sample: usize,
    pub residual: f64,
}

/// Outcome of a batch of residual checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericReport {
    pub checks: usize,
    pub failures: Vec<NumericFailure>,
    pub max_residual: f64,
    pub seed: u64,
    pub tol: f64,
}

impl NumericReport {
    fn new(seed: u64, tol: f64) -> Self {
        NumericReport {
            checks: 0,
            failures: Vec::new(),
            max_residual: 0.0,
            seed,
            tol,
        }
    }

    fn record(&mut self, check: &str, sample: usize, residual: f64) {
        self.checks += 1;
        self.max_residual = self.max_residual.max(residual);
        if residual > self.tol {
            self.failures.push(NumericFailure {
                check: check.to_string(),
                sample,
                residual,
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn require_positive_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "tolerance must be positive and finite, got {tol}"
        )))
    }
}

/// Entrywise uniform in `[-1, 1]`, rejecting matrices with
/// `|det| < SAMPLE_MIN_DET`.
pub fn sample_matrix(d: usize, rng: &mut ChaCha8Rng) -> RealMatrix {
    loop {
        let inner = DMatrix::from_fn(d, d, |_, _| rng.gen_range(-1.0f64..=1.0));
        if inner.determinant().abs() >= SAMPLE_MIN_DET {
            return RealMatrix { inner };
        }
    }
}

pub fn sample_vector(d: usize, rng: &mut ChaCha8Rng) -> RealVector {
    RealVector {
        inner: DVector::from_fn(d, |_, _| rng.gen_range(-1.0f64..=1.0)),
    }
}

/// One deterministic vector for a given seed, entries in `[-1, 1]`.
pub fn seeded_vector(d: usize, seed: u64) -> RealVector {
    sample_vector(d, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Checks the two binary-action axioms on random samples: composing two
/// matrix actions equals acting by the matrix product,
/// `A(x, B(x, y)) = (A B)(x, y)`, and the identity matrix acts as the
/// second projection.
pub fn check_action_axioms(samples: usize, d: usize, seed: u64, tol: f64) -> Result<NumericReport> {
    require_positive_tol(tol)?;
    let e = RealMatrix::identity(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = NumericReport::new(seed, tol);
    for sample in 0..samples {
        let a = sample_matrix(d, &mut rng);
        let b = sample_matrix(d, &mut rng);
        let x = sample_vector(d, &mut rng);
        let y = sample_vector(d, &mut rng);

        let nested = affine_act(&a, &x, &affine_act(&b, &x, &y)?)?;
        let direct = affine_act(&a.matmul(&b)?, &x, &y)?;
        report.record("composition", sample, nested.max_norm_distance(&direct));

        let identity_image = affine_act(&e, &x, &y)?;
        report.record("identity", sample, identity_image.max_norm_distance(&y));
    }
    Ok(report)
}

/// Checks `A(x, x) = x` on random samples.
pub fn check_singleton_invariance(
    samples: usize,
    d: usize,
    seed: u64,
    tol: f64,
) -> Result<NumericReport> {
    require_positive_tol(tol)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = NumericReport::new(seed, tol);
    for sample in 0..samples {
        let a = sample_matrix(d, &mut rng);
        let x = sample_vector(d, &mut rng);
        let image = affine_act(&a, &x, &x)?;
        report.record("singleton", sample, image.max_norm_distance(&x));
    }
    Ok(report)
}

/// The ordinary action obtained by freezing the first argument at a
/// base point: `apply(A, y) = A(base, y) = base + A (y - base)`.
#[derive(Debug, Clone, PartialEq)]
pub struct InducedAction {
    base: RealVector,
}

impl InducedAction {
    pub fn at(base: RealVector) -> Self {
        InducedAction { base }
    }

    #[inline]
    pub fn base(&self) -> &RealVector {
        &self.base
    }

    pub fn apply(&self, a: &RealMatrix, y: &RealVector) -> Result<RealVector> {
        affine_act(a, &self.base, y)
    }

    /// Ordinary-action axioms at this base point on random samples:
    /// `apply(A B, y) = apply(A, apply(B, y))` and the identity matrix
    /// fixes `y`.
    pub fn check_axioms(&self, samples: usize, seed: u64, tol: f64) -> Result<NumericReport> {
        require_positive_tol(tol)?;
        let d = self.base.dim();
        let e = RealMatrix::identity(d)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut report = NumericReport::new(seed, tol);
        for sample in 0..samples {
            let a = sample_matrix(d, &mut rng);
            let b = sample_matrix(d, &mut rng);
            let y = sample_vector(d, &mut rng);

            let nested = self.apply(&a, &self.apply(&b, &y)?)?;
            let direct = self.apply(&a.matmul(&b)?, &y)?;
            report.record("composition", sample, nested.max_norm_distance(&direct));

            let fixed = self.apply(&e, &y)?;
            report.record("identity", sample, fixed.max_norm_distance(&y));
        }
        Ok(report)
    }
}

/// Checks that the shift `f(v) = v - a` intertwines the induced action
/// at `a` with the one at the origin:
/// `f(apply_a(A, y)) = apply_0(A, f(y))` on random samples.
pub fn check_translation_equivariance(
    a: &RealVector,
    samples: usize,
    seed: u64,
    tol: f64,
) -> Result<NumericReport> {
    require_positive_tol(tol)?;
    let d = a.dim();
    let at_a = InducedAction::at(a.clone());
    let at_origin = InducedAction::at(RealVector::zeros(d)?);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = NumericReport::new(seed, tol);
    for sample in 0..samples {
        let m = sample_matrix(d, &mut rng);
        let y = sample_vector(d, &mut rng);

        let shifted_image = RealVector {
            inner: &at_a.apply(&m, &y)?.inner - &a.inner,
        };
        let image_of_shifted = at_origin.apply(
            &m,
            &RealVector {
                inner: &y.inner - &a.inner,
            },
        )?;
        report.record(
            "equivariance",
            sample,
            shifted_image.max_norm_distance(&image_of_shifted),
        );
    }
    Ok(report)
}

/// One matrix moving the two-point set off itself.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnionWitness {
    pub label: String,
    pub matrix: Vec<Vec<f64>>,
    pub point: Vec<f64>,
    pub distance_to_x: f64,
    pub distance_to_y: f64,
}

/// Report of [`demo_union_not_invariant`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnionDemoReport {
    pub dim: usize,
    pub witnesses: Vec<UnionWitness>,
}

impl UnionDemoReport {
    pub fn found(&self) -> bool {
        !self.witnesses.is_empty()
    }
}

/// Demonstrates that the union of two distinct one-point sets is not
/// invariant: scalar matrices `c E` send `(x, y)` to `x + c (y - x)`,
/// which leaves `{x, y}` for `c` outside `{0, 1}`, and in dimension two
/// and up a quarter-turn of the first two coordinates leaves the line
/// through `x` and `y`. Every candidate that lands strictly outside the
/// set is reported.
pub fn demo_union_not_invariant(x: &RealVector, y: &RealVector) -> Result<UnionDemoReport> {
    let d = x.dim();
    if y.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: y.dim(),
        });
    }
    if x == y {
        return Err(Error::InvalidArgument(
            "the two points must be distinct (singletons are invariant)".into(),
        ));
    }

    let mut candidates: Vec<(String, RealMatrix)> = [2.0, 3.0, -1.0]
        .into_iter()
        .map(|c| (format!("scale {c}"), RealMatrix::scalar(d, c).expect("|c| >= 1")))
        .collect();
    if d >= 2 {
        let mut rows = vec![vec![0.0; d]; d];
        rows[0][1] = -1.0;
        rows[1][0] = 1.0;
        for (i, row) in rows.iter_mut().enumerate().skip(2) {
            row[i] = 1.0;
        }
        candidates.push((
            "quarter turn".to_string(),
            RealMatrix::from_rows(rows).expect("rotation is invertible"),
        ));
    }

    let mut witnesses = Vec::new();
    for (label, a) in candidates {
        let point = affine_act(&a, x, y)?;
        let distance_to_x = point.max_norm_distance(x);
        let distance_to_y = point.max_norm_distance(y);
        if distance_to_x > 0.0 && distance_to_y > 0.0 {
            witnesses.push(UnionWitness {
                label,
                matrix: a.rows(),
                point: point.entries(),
                distance_to_x,
                distance_to_y,
            });
        }
    }
    Ok(UnionDemoReport { dim: d, witnesses })
}
