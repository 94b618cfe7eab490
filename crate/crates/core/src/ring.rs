//! The ring of finitary endomorphisms carved out by a dual pairing.
//!
//! A [`DualSystem`] fixes a right D-space of dimension `n`, a space of
//! functionals of dimension `k`, and the evaluation matrix `F` with
//! `F[b][a] = f_b(e_a)`. Ring elements are `n x k` coefficient matrices; the
//! product of coefficients `L` and `L'` is `L * F * L'`, the trace is the
//! diagonal sum of `L * F`, and `L * F` itself is the action on the
//! underlying space.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{RingDescriptor, Scalar};

/// Dimensions `(n, k)` plus the evaluation matrix of the chosen functional
/// basis against the chosen space basis. Construction rejects rank-deficient
/// pairings so the coefficient representation is canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSystem {
    descriptor: RingDescriptor,
    n: usize,
    k: usize,
    f: Matrix,
}

impl DualSystem {
    /// `f` is the `k x n` evaluation matrix; its rows must be independent and
    /// `1 <= k <= n`.
    pub fn new(f: Matrix) -> Result<DualSystem> {
        let k = f.rows();
        let n = f.cols();
        if k == 0 || n == 0 {
            return Err(Error::InvariantError("dimensions must be positive".into()));
        }
        if k > n {
            return Err(Error::InvariantError(format!(
                "k = {} exceeds n = {}",
                k, n
            )));
        }
        let r = f.rank();
        if r != k {
            return Err(Error::InvariantError(format!(
                "evaluation matrix has rank {} < k = {}",
                r, k
            )));
        }
        Ok(DualSystem {
            descriptor: f.descriptor(),
            n,
            k,
            f,
        })
    }

    /// Test-only escape hatch for deliberately corrupted pairings.
    #[cfg(test)]
    pub(crate) fn new_unchecked(f: Matrix) -> DualSystem {
        DualSystem {
            descriptor: f.descriptor(),
            n: f.cols(),
            k: f.rows(),
            f,
        }
    }

    pub fn descriptor(&self) -> RingDescriptor {
        self.descriptor
    }

    pub fn space_dim(&self) -> usize {
        self.n
    }

    pub fn functional_dim(&self) -> usize {
        self.k
    }

    pub fn evaluation(&self) -> &Matrix {
        &self.f
    }

    /// Totality: no nonzero vector is annihilated by every functional,
    /// equivalently the evaluation matrix has full column rank. When this is
    /// false the ring sits outside the density regime.
    pub fn is_total(&self) -> bool {
        self.f.rank() == self.n
    }

    pub fn element(&self, lambda: Matrix) -> Result<RingElement> {
        if lambda.descriptor() != self.descriptor {
            return Err(Error::DescriptorMismatch);
        }
        if lambda.rows() != self.n || lambda.cols() != self.k {
            return Err(Error::ShapeMismatch(format!(
                "coefficients must be {}x{}, got {}x{}",
                self.n,
                self.k,
                lambda.rows(),
                lambda.cols()
            )));
        }
        Ok(RingElement {
            system: self.clone(),
            lambda,
        })
    }

    pub fn zero_element(&self) -> RingElement {
        self.element(Matrix::zeros(self.descriptor, self.n, self.k))
            .unwrap()
    }

    /// The element with coefficient matrix `s * E_ab`; these span the ring
    /// over the center as `s` runs over the central generating set.
    pub fn basis_element(&self, a: usize, b: usize, s: &Scalar) -> RingElement {
        let mut lambda = Matrix::zeros(self.descriptor, self.n, self.k);
        lambda.set(a, b, s.clone());
        self.element(lambda).unwrap()
    }

    /// A transvection with trace exactly one, obtained by solving
    /// `F[0] . v = 1` on the first nonzero entry of the first functional.
    pub fn nonzero_trace_element(&self) -> RingElement {
        let a = (0..self.n)
            .find(|&a| !self.f.get(0, a).is_zero())
            .expect("evaluation rows are nonzero by the rank invariant");
        let mut v = vec![Scalar::zero(self.descriptor); self.n];
        v[a] = self.f.get(0, a).inverse().expect("nonzero entry");
        let mut mu = vec![Scalar::zero(self.descriptor); self.k];
        mu[0] = Scalar::one(self.descriptor);
        Transvection::new(v, mu).to_element(self).unwrap()
    }

    /// Pseudorandom element with coefficients from a small fixed pool,
    /// reproducible under the caller's generator.
    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> RingElement {
        let entries = (0..self.n * self.k)
            .map(|_| random_scalar(rng, self.descriptor))
            .collect();
        self.element(Matrix::new(self.descriptor, self.n, self.k, entries).unwrap())
            .unwrap()
    }

    /// Seeded spot-check of associativity, two-sided distributivity, and
    /// faithfulness of the endomorphism representation.
    pub fn check_axioms(&self, trials: u64, seed: u64) -> Result<AxiomReport> {
        if trials < 1 {
            return Err(Error::PreconditionViolated("trials must be >= 1".into()));
        }
        // Faithfulness is structural: L * F = 0 forces L = 0 exactly when the
        // rows of F admit no left dependency.
        if let Some(dep) = self.f.left_null_space().into_iter().next() {
            let mut lambda = Matrix::zeros(self.descriptor, self.n, self.k);
            for a in 0..self.n {
                for b in 0..self.k {
                    lambda.set(a, b, dep[b].clone());
                }
            }
            return Ok(AxiomReport {
                trials: 0,
                failure: Some(AxiomFailure::Faithfulness { witness: lambda }),
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for t in 0..trials {
            let x = self.random_element(&mut rng).lambda;
            let y = self.random_element(&mut rng).lambda;
            let z = self.random_element(&mut rng).lambda;
            // All three identities share the middle factors F*L, which are
            // the small k x k-bound products; compute each once.
            let fx = self.f.mul(&x)?;
            let fy = self.f.mul(&y)?;
            let fz = self.f.mul(&z)?;
            let xy = x.mul(&fy)?;
            // (xy)z = (xy)(Fz) versus x(yz) = x((Fy)(Fz))
            if xy.mul(&fz)? != x.mul(&fy.mul(&fz)?)? {
                return Ok(AxiomReport {
                    trials: t,
                    failure: Some(AxiomFailure::Associativity { x, y, z }),
                });
            }
            if x.mul(&fy.add(&fz)?)? != xy.add(&x.mul(&fz)?)? {
                return Ok(AxiomReport {
                    trials: t,
                    failure: Some(AxiomFailure::LeftDistributivity { x, y, z }),
                });
            }
            if y.add(&z)?.mul(&fx)? != y.mul(&fx)?.add(&z.mul(&fx)?)? {
                return Ok(AxiomReport {
                    trials: t,
                    failure: Some(AxiomFailure::RightDistributivity { x, y, z }),
                });
            }
        }
        Ok(AxiomReport {
            trials,
            failure: None,
        })
    }
}

/// Draws from the fixed pools: integers -3..=3 in characteristic zero, all
/// residues for prime fields, unit-component quaternions.
pub fn random_scalar(rng: &mut ChaCha8Rng, d: RingDescriptor) -> Scalar {
    match d {
        RingDescriptor::Rationals => Scalar::from_integer(d, rng.gen_range(-3..=3)),
        RingDescriptor::PrimeField(p) => Scalar::from_integer(d, rng.gen_range(0..p) as i64),
        RingDescriptor::RationalQuaternions => Scalar::quaternion_units(
            rng.gen_range(-1..=1),
            rng.gen_range(-1..=1),
            rng.gen_range(-1..=1),
            rng.gen_range(-1..=1),
        ),
    }
}

/// Invertible matrix built from random elementary row operations on the
/// identity.
pub fn random_invertible(rng: &mut ChaCha8Rng, d: RingDescriptor, n: usize) -> Matrix {
    let mut m = Matrix::identity(d, n);
    for _ in 0..2 * n.max(1) {
        match rng.gen_range(0..3) {
            0 => {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                if i != j {
                    // row_i += c * row_j
                    let c = random_scalar(rng, d);
                    for col in 0..n {
                        let v = m.get(i, col).add(&c.mul(m.get(j, col)));
                        m.set(i, col, v);
                    }
                }
            }
            1 => {
                let i = rng.gen_range(0..n);
                let j = rng.gen_range(0..n);
                if i != j {
                    for col in 0..n {
                        let a = m.get(i, col).clone();
                        let b = m.get(j, col).clone();
                        m.set(i, col, b);
                        m.set(j, col, a);
                    }
                }
            }
            _ => {
                let i = rng.gen_range(0..n);
                let mut c = random_scalar(rng, d);
                while c.is_zero() {
                    c = random_scalar(rng, d);
                }
                for col in 0..n {
                    let v = c.mul(m.get(i, col));
                    m.set(i, col, v);
                }
            }
        }
    }
    m
}

/// An element of the ring, stored as coefficients relative to the fixed bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    system: DualSystem,
    lambda: Matrix,
}

impl RingElement {
    pub fn system(&self) -> &DualSystem {
        &self.system
    }

    pub fn coefficients(&self) -> &Matrix {
        &self.lambda
    }

    pub fn is_zero(&self) -> bool {
        self.lambda.is_zero()
    }

    fn check_system(&self, other: &RingElement) -> Result<()> {
        if self.system != other.system {
            return Err(Error::SystemMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &RingElement) -> Result<RingElement> {
        self.check_system(other)?;
        self.system.element(self.lambda.add(&other.lambda)?)
    }

    pub fn neg(&self) -> RingElement {
        self.system.element(self.lambda.neg()).unwrap()
    }

    /// Ring product: coefficients `L_x * F * L_y` in exactly that order,
    /// associated through the k x k middle factor since k <= n.
    pub fn multiply(&self, other: &RingElement) -> Result<RingElement> {
        self.check_system(other)?;
        let prod = self.lambda.mul(&self.system.f.mul(&other.lambda)?)?;
        self.system.element(prod)
    }

    /// Trace: diagonal sum of `L * F`; on a transvection this evaluates the
    /// functional on the vector.
    pub fn trace(&self) -> Scalar {
        let action = self.as_endomorphism();
        let mut acc = Scalar::zero(self.system.descriptor);
        for a in 0..self.system.n {
            acc = acc.add(action.get(a, a));
        }
        acc
    }

    /// The `n x n` action on the underlying space, `L * F`.
    pub fn as_endomorphism(&self) -> Matrix {
        self.lambda.mul(&self.system.f).unwrap()
    }
}

/// Rank-one data: a column `v` and the functional `sum_b mu_b f_b` with
/// coefficients on the left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transvection {
    v: Vec<Scalar>,
    mu: Vec<Scalar>,
}

impl Transvection {
    pub fn new(v: Vec<Scalar>, mu: Vec<Scalar>) -> Transvection {
        Transvection { v, mu }
    }

    /// Coefficients `L[a][b] = v_a * mu_b`, in that order.
    pub fn to_element(&self, s: &DualSystem) -> Result<RingElement> {
        if self.v.len() != s.n || self.mu.len() != s.k {
            return Err(Error::ShapeMismatch(format!(
                "transvection data ({}, {}) does not match system ({}, {})",
                self.v.len(),
                self.mu.len(),
                s.n,
                s.k
            )));
        }
        let mut lambda = Matrix::zeros(s.descriptor, s.n, s.k);
        for a in 0..s.n {
            for b in 0..s.k {
                lambda.set(a, b, self.v[a].mul(&self.mu[b]));
            }
        }
        s.element(lambda)
    }
}

/// Outcome of the randomized axiom suite.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub trials: u64,
    pub failure: Option<AxiomFailure>,
}

impl AxiomReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug)]
pub enum AxiomFailure {
    Associativity { x: Matrix, y: Matrix, z: Matrix },
    LeftDistributivity { x: Matrix, y: Matrix, z: Matrix },
    RightDistributivity { x: Matrix, y: Matrix, z: Matrix },
    Faithfulness { witness: Matrix },
}

impl std::fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AxiomFailure::Associativity { x, y, z } => {
                write!(f, "associativity failed on x={}, y={}, z={}", x, y, z)
            }
            AxiomFailure::LeftDistributivity { x, y, z } => {
                write!(f, "left distributivity failed on x={}, y={}, z={}", x, y, z)
            }
            AxiomFailure::RightDistributivity { x, y, z } => {
                write!(f, "right distributivity failed on x={}, y={}, z={}", x, y, z)
            }
            AxiomFailure::Faithfulness { witness } => {
                write!(f, "faithfulness failed: L={} acts as zero", witness)
            }
        }
    }
}
