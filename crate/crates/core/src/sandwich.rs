//! Additive maps between two finitary endomorphism rings, stored in sandwich
//! form: a finite family of term pairs `(A_i, B_i)` acting on coefficients by
//! `L -> sum_i A_i * L * B_i`.
//!
//! The sandwich form is well-defined on the underlying tensor product for
//! every descriptor, including the quaternions, which is why the map is not
//! stored as one big coefficient matrix. The module verifies the homomorphism
//! property on a finite spanning set, minimizes term families against
//! one-sided dependencies, checks the orthogonality and trace-scaling
//! identities, and recovers the conjugating pair of an isomorphism.

use crate::error::{Error, Result};
use crate::matrix::{left_dependency, right_dependency, Matrix};
use crate::ring::{DualSystem, RingElement};
use crate::scalar::{RingDescriptor, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct SandwichMap {
    source: DualSystem,
    target: DualSystem,
    terms: Vec<(Matrix, Matrix)>,
}

/// Outcome of the finite homomorphism check.
#[derive(Clone, Debug)]
pub struct HomReport {
    pub failure: Option<HomFailure>,
}

impl HomReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

/// First failing pair of spanning elements, with both sides of the identity.
#[derive(Clone, Debug)]
pub struct HomFailure {
    pub x: (usize, usize, Scalar),
    pub y: (usize, usize, Scalar),
    pub lhs: Matrix,
    pub rhs: Matrix,
}

impl std::fmt::Display for HomFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "failing pair x = {} * E({},{}), y = {} * E({},{}): phi(xy) = {} but phi(x)phi(y) = {}",
            self.x.2, self.x.0, self.x.1, self.y.2, self.y.0, self.y.1, self.lhs, self.rhs
        )
    }
}

/// Outcome of the orthogonality check `B_j G A_i = delta_ij F`.
#[derive(Clone, Debug)]
pub struct OrthogonalityReport {
    pub violation: Option<(usize, usize)>,
}

impl OrthogonalityReport {
    pub fn pass(&self) -> bool {
        self.violation.is_none()
    }
}

impl SandwichMap {
    pub fn new(
        source: DualSystem,
        target: DualSystem,
        terms: Vec<(Matrix, Matrix)>,
    ) -> Result<SandwichMap> {
        if source.descriptor() != target.descriptor() {
            return Err(Error::DescriptorMismatch);
        }
        let (n, k) = (source.space_dim(), source.functional_dim());
        let (m, l) = (target.space_dim(), target.functional_dim());
        for (a, b) in &terms {
            if a.descriptor() != source.descriptor() || b.descriptor() != source.descriptor() {
                return Err(Error::DescriptorMismatch);
            }
            if a.rows() != m || a.cols() != n || b.rows() != k || b.cols() != l {
                return Err(Error::ShapeMismatch(format!(
                    "term shapes must be {}x{} and {}x{}, got {}x{} and {}x{}",
                    m,
                    n,
                    k,
                    l,
                    a.rows(),
                    a.cols(),
                    b.rows(),
                    b.cols()
                )));
            }
        }
        Ok(SandwichMap {
            source,
            target,
            terms,
        })
    }

    /// The zero map: an empty term list.
    pub fn zero(source: DualSystem, target: DualSystem) -> Result<SandwichMap> {
        SandwichMap::new(source, target, Vec::new())
    }

    pub fn identity(s: &DualSystem) -> SandwichMap {
        let d = s.descriptor();
        let terms = vec![(
            Matrix::identity(d, s.space_dim()),
            Matrix::identity(d, s.functional_dim()),
        )];
        SandwichMap::new(s.clone(), s.clone(), terms).unwrap()
    }

    /// Conjugation by an invertible pair: the one-term map `(alpha, beta)`
    /// into the system with evaluation matrix `beta^-1 * F * alpha^-1`.
    pub fn conjugation(s: &DualSystem, alpha: &Matrix, beta: &Matrix) -> Result<SandwichMap> {
        let (n, k) = (s.space_dim(), s.functional_dim());
        if alpha.rows() != n || alpha.cols() != n || beta.rows() != k || beta.cols() != k {
            return Err(Error::ShapeMismatch(format!(
                "conjugators must be {0}x{0} and {1}x{1}",
                n, k
            )));
        }
        let alpha_inv = alpha.inverse()?;
        let beta_inv = beta.inverse()?;
        let g = beta_inv.mul(s.evaluation())?.mul(&alpha_inv)?;
        let target = DualSystem::new(g).map_err(|_| Error::RankLoss)?;
        SandwichMap::new(s.clone(), target, vec![(alpha.clone(), beta.clone())])
    }

    /// Two conjugations glued block-diagonally into a doubled target system:
    /// a two-term homomorphism that scales traces by two and is never
    /// bijective.
    pub fn direct_sum(s: &DualSystem, alpha1: &Matrix, alpha2: &Matrix) -> Result<SandwichMap> {
        let d = s.descriptor();
        let (n, k) = (s.space_dim(), s.functional_dim());
        if alpha1.rows() != n || alpha1.cols() != n || alpha2.rows() != n || alpha2.cols() != n {
            return Err(Error::ShapeMismatch(format!("conjugators must be {0}x{0}", n)));
        }
        let g1 = s.evaluation().mul(&alpha1.inverse()?)?;
        let g2 = s.evaluation().mul(&alpha2.inverse()?)?;
        let top = g1.hstack(&Matrix::zeros(d, k, n))?;
        let bottom = Matrix::zeros(d, k, n).hstack(&g2)?;
        let target = DualSystem::new(top.vstack(&bottom)?)?;
        let a1 = alpha1.vstack(&Matrix::zeros(d, n, n))?;
        let a2 = Matrix::zeros(d, n, n).vstack(alpha2)?;
        let b1 = Matrix::identity(d, k).hstack(&Matrix::zeros(d, k, k))?;
        let b2 = Matrix::zeros(d, k, k).hstack(&Matrix::identity(d, k))?;
        SandwichMap::new(s.clone(), target, vec![(a1, b1), (a2, b2)])
    }

    pub fn source(&self) -> &DualSystem {
        &self.source
    }

    pub fn target(&self) -> &DualSystem {
        &self.target
    }

    pub fn terms(&self) -> &[(Matrix, Matrix)] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn apply(&self, x: &RingElement) -> Result<RingElement> {
        if *x.system() != self.source {
            return Err(Error::SystemMismatch);
        }
        self.target.element(self.apply_coefficients(x.coefficients()))
    }

    /// `L -> sum_i A_i * L * B_i` on bare coefficient matrices.
    pub fn apply_coefficients(&self, lambda: &Matrix) -> Matrix {
        apply_terms(
            &self.terms,
            lambda,
            self.target.space_dim(),
            self.target.functional_dim(),
        )
    }

    /// Spanning coefficient matrices `g * E_ab` with `g` from the central
    /// generating set; agreement on these forces agreement everywhere because
    /// both sides of every identity checked here are additive and linear over
    /// the center.
    fn span(&self) -> Vec<(usize, usize, Scalar)> {
        let gens = self.source.descriptor().central_generating_set();
        let mut out = Vec::new();
        for a in 0..self.source.space_dim() {
            for b in 0..self.source.functional_dim() {
                for g in &gens {
                    out.push((a, b, g.clone()));
                }
            }
        }
        out
    }

    fn basis_lambda(&self, a: usize, b: usize, s: &Scalar) -> Matrix {
        let d = self.source.descriptor();
        let mut m = Matrix::zeros(d, self.source.space_dim(), self.source.functional_dim());
        m.set(a, b, s.clone());
        m
    }

    /// Verifies `phi(x y) = phi(x) phi(y)` for all pairs of spanning elements
    /// with central scalar insertions; a finite pass implies the identity for
    /// every element.
    pub fn is_homomorphism(&self) -> HomReport {
        let d = self.source.descriptor();
        let gens = d.central_generating_set();
        let f = self.source.evaluation();
        let g_eval = self.target.evaluation();
        let n = self.source.space_dim();
        let k = self.source.functional_dim();
        // images[gi][a*k + b] = phi(gens[gi] * E_ab)
        let images: Vec<Vec<Matrix>> = gens
            .iter()
            .map(|g| {
                let mut row = Vec::with_capacity(n * k);
                for a in 0..n {
                    for b in 0..k {
                        row.push(self.apply_coefficients(&self.basis_lambda(a, b, g)));
                    }
                }
                row
            })
            .collect();
        // premultiplied by the target pairing, for the right-hand products
        let images_g: Vec<Vec<Matrix>> = images
            .iter()
            .map(|row| row.iter().map(|m| m.mul(g_eval).unwrap()).collect())
            .collect();
        for (si, s) in gens.iter().enumerate() {
            for (ti, t) in gens.iter().enumerate() {
                for a in 0..n {
                    for b in 0..k {
                        for c in 0..n {
                            for e in 0..k {
                                // (s E_ab) F (t E_ce) = (s F_bc t) E_ae
                                let q = s.mul(f.get(b, c)).mul(t);
                                let lhs = combine_central(d, &q, &images, a, e, k);
                                let rhs = images_g[si][a * k + b]
                                    .mul(&images[ti][c * k + e])
                                    .unwrap();
                                if lhs != rhs {
                                    return HomReport {
                                        failure: Some(HomFailure {
                                            x: (a, b, s.clone()),
                                            y: (c, e, t.clone()),
                                            lhs,
                                            rhs,
                                        }),
                                    };
                                }
                            }
                        }
                    }
                }
            }
        }
        HomReport { failure: None }
    }

    /// Decides bijectivity by writing the action as a square matrix over the
    /// center's field (rationals or the prime field) and testing full rank.
    pub fn is_bijective(&self) -> bool {
        let d = self.source.descriptor();
        let base = d.base();
        let cdim = d.center_dim();
        let n = self.source.space_dim();
        let k = self.source.functional_dim();
        let m = self.target.space_dim();
        let l = self.target.functional_dim();
        let src_dim = n * k * cdim;
        let tgt_dim = m * l * cdim;
        if src_dim != tgt_dim {
            return false;
        }
        let gens = d.central_generating_set();
        let mut action = Matrix::zeros(base, tgt_dim, src_dim);
        for a in 0..n {
            for b in 0..k {
                for (gi, g) in gens.iter().enumerate() {
                    let col = (a * k + b) * cdim + gi;
                    let image = self.apply_coefficients(&self.basis_lambda(a, b, g));
                    for r in 0..m {
                        for c in 0..l {
                            for (hi, coord) in image.get(r, c).center_coords().iter().enumerate() {
                                action.set((r * l + c) * cdim + hi, col, coord.clone());
                            }
                        }
                    }
                }
            }
        }
        action.rank() == src_dim
    }

    /// Repeatedly substitutes one-sided dependencies of the term families into
    /// the opposite family and drops a term, preferring to keep the
    /// lowest-indexed terms; every substitution is committed only after
    /// re-verifying the action on the spanning set, so the result always acts
    /// identically to the input. Over commutative descriptors the result has
    /// fully independent families; over the quaternions a dependency whose
    /// coefficients cannot be moved across the coefficient matrix is left in
    /// place.
    pub fn minimized(&self) -> SandwichMap {
        let mut terms: Vec<(Matrix, Matrix)> = self.terms.clone();
        loop {
            terms.retain(|(a, b)| !a.is_zero() && !b.is_zero());
            if terms.len() < 2 {
                break;
            }
            match self.try_reduce(&terms) {
                Some(next) => terms = next,
                None => break,
            }
        }
        SandwichMap {
            source: self.source.clone(),
            target: self.target.clone(),
            terms,
        }
    }

    fn try_reduce(&self, terms: &[(Matrix, Matrix)]) -> Option<Vec<(Matrix, Matrix)>> {
        let a_family: Vec<Matrix> = terms.iter().map(|(a, _)| a.clone()).collect();
        if let Some(dep) = right_dependency(&a_family).ok()? {
            if let Some(next) = self.commit_substitution(terms, &dep, true) {
                return Some(next);
            }
        }
        let b_family: Vec<Matrix> = terms.iter().map(|(_, b)| b.clone()).collect();
        if let Some(dep) = left_dependency(&b_family).ok()? {
            if let Some(next) = self.commit_substitution(terms, &dep, false) {
                return Some(next);
            }
        }
        None
    }

    /// Eliminates one term of the dependency's support, folding the other
    /// coefficients into the opposite family; pivots are tried from the
    /// highest index down so lower-indexed terms survive. Returns the first
    /// candidate whose action matches on the spanning set.
    fn commit_substitution(
        &self,
        terms: &[(Matrix, Matrix)],
        dep: &[Scalar],
        a_side: bool,
    ) -> Option<Vec<(Matrix, Matrix)>> {
        let support: Vec<usize> = (0..terms.len()).filter(|&i| !dep[i].is_zero()).collect();
        for &j in support.iter().rev() {
            let dj_inv = dep[j].inverse().expect("nonzero support entry");
            let mut next: Vec<(Matrix, Matrix)> = terms.to_vec();
            for &i in &support {
                if i == j {
                    continue;
                }
                if a_side {
                    // sum A_i d_i = 0 with right coefficients, so
                    // A_j = sum_{i != j} A_i c_i for c_i = -(d_i * d_j^-1);
                    // over a commutative descriptor the term A_j L B_j then
                    // folds as B_i += c_i * B_j.
                    let c = dep[i].mul(&dj_inv).neg();
                    next[i].1 = next[i].1.add(&terms[j].1.scale_left(&c)).unwrap();
                } else {
                    // sum d_i B_i = 0 with left coefficients, so
                    // B_j = sum_{i != j} c_i B_i for c_i = -(d_j^-1 * d_i)
                    // and the fold is A_i += A_j * c_i.
                    let c = dj_inv.mul(&dep[i]).neg();
                    next[i].0 = next[i].0.add(&terms[j].0.scale_right(&c)).unwrap();
                }
            }
            next.remove(j);
            if self.terms_agree(terms, &next) {
                return Some(next);
            }
        }
        None
    }

    fn terms_agree(&self, lhs: &[(Matrix, Matrix)], rhs: &[(Matrix, Matrix)]) -> bool {
        let m = self.target.space_dim();
        let l = self.target.functional_dim();
        self.span().iter().all(|(a, b, s)| {
            let lambda = self.basis_lambda(*a, *b, s);
            apply_terms(lhs, &lambda, m, l) == apply_terms(rhs, &lambda, m, l)
        })
    }

    /// True when the map equals `other` on every spanning element.
    pub fn acts_like(&self, other: &SandwichMap) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.terms_agree(&self.terms, &other.terms)
    }

    fn require_minimized_homomorphism(&self) -> Result<()> {
        if !self.is_homomorphism().pass() {
            return Err(Error::PreconditionViolated(
                "map is not a ring homomorphism".into(),
            ));
        }
        if self.minimized().term_count() != self.term_count() {
            return Err(Error::PreconditionViolated("map is not minimized".into()));
        }
        Ok(())
    }

    /// Checks `B_i G A_i = F` for every term and `B_j G A_i = 0` for every
    /// distinct pair; requires a minimized homomorphism.
    pub fn orthogonality(&self) -> Result<OrthogonalityReport> {
        self.require_minimized_homomorphism()?;
        let f = self.source.evaluation();
        let g = self.target.evaluation();
        for i in 0..self.terms.len() {
            for j in 0..self.terms.len() {
                let prod = self.terms[j].1.mul(g)?.mul(&self.terms[i].0)?;
                let ok = if i == j { prod == *f } else { prod.is_zero() };
                if !ok {
                    return Ok(OrthogonalityReport {
                        violation: Some((i, j)),
                    });
                }
            }
        }
        Ok(OrthogonalityReport { violation: None })
    }

    /// Verifies the trace identity `Tr(phi(xi)) = c Tr(xi)` on the spanning
    /// set for `c` = term count, and returns `c`. Traces are compared in the
    /// quotient of the scalars by additive commutators, where the trace of a
    /// finite-rank map actually lives; for commutative descriptors that
    /// quotient is the whole ring, for the quaternions it is the real line.
    pub fn trace_scaling_factor(&self) -> Result<usize> {
        self.require_minimized_homomorphism()?;
        let d = self.source.descriptor();
        let c = Scalar::from_integer(d, self.terms.len() as i64);
        for (a, b, s) in self.span() {
            let lambda = self.basis_lambda(a, b, &s);
            let tr_in = trace_of(&self.source, &lambda);
            let tr_out = trace_of(&self.target, &self.apply_coefficients(&lambda));
            if !trace_eq(&tr_out, &c.mul(&tr_in)) {
                return Err(Error::ScalingViolation(format!(
                    "Tr(phi({} * E({},{}))) = {} but {} * Tr = {}",
                    s,
                    a,
                    b,
                    tr_out,
                    self.terms.len(),
                    c.mul(&tr_in)
                )));
            }
        }
        Ok(self.terms.len())
    }

    /// Inverse of a one-term invertible map.
    fn one_term_inverse(&self) -> Result<SandwichMap> {
        if self.terms.len() != 1 {
            return Err(Error::NotIsomorphism("not a one-term map".into()));
        }
        let (alpha, beta) = &self.terms[0];
        SandwichMap::new(
            self.target.clone(),
            self.source.clone(),
            vec![(alpha.inverse()?, beta.inverse()?)],
        )
    }

    /// The main engine: for a verified bijective homomorphism between systems
    /// of matching dimensions, minimizes the decomposition, asserts it
    /// collapses to a single term with both trace-scaling factors equal to
    /// one, verifies the normalization `B G A = F`, checks the conjugation
    /// identity on every spanning element, and returns the pair
    /// `(alpha, beta)`. The pair is unique only up to a central scalar, so
    /// callers should compare actions, not matrices.
    pub fn recover_conjugator(&self) -> Result<(Matrix, Matrix)> {
        if self.source.space_dim() != self.target.space_dim()
            || self.source.functional_dim() != self.target.functional_dim()
        {
            return Err(Error::NotIsomorphism(format!(
                "dimension mismatch: source ({}, {}) vs target ({}, {})",
                self.source.space_dim(),
                self.source.functional_dim(),
                self.target.space_dim(),
                self.target.functional_dim()
            )));
        }
        if !self.is_homomorphism().pass() {
            return Err(Error::NotIsomorphism("not a ring homomorphism".into()));
        }
        if !self.is_bijective() {
            return Err(Error::NotIsomorphism("action is not bijective".into()));
        }
        let min = self.minimized();
        if min.term_count() != 1 {
            return Err(Error::TheoremViolation(format!(
                "bijective homomorphism minimized to {} terms instead of 1",
                min.term_count()
            )));
        }
        let (alpha, beta) = min.terms[0].clone();
        let alpha_inv = alpha
            .inverse()
            .map_err(|_| Error::TheoremViolation("recovered alpha is singular".into()))?;
        beta.inverse()
            .map_err(|_| Error::TheoremViolation("recovered beta is singular".into()))?;
        // normalization: B G A = F
        let bga = beta.mul(self.target.evaluation())?.mul(&alpha)?;
        if bga != *self.source.evaluation() {
            return Err(Error::TheoremViolation(format!(
                "normalization failed: B G A = {} but F = {}",
                bga,
                self.source.evaluation()
            )));
        }
        // trace factors of the map and of its inverse action are both 1
        let forward = min.trace_scaling_factor()?;
        let backward = min.one_term_inverse()?.trace_scaling_factor()?;
        if forward != 1 || backward != 1 {
            return Err(Error::TheoremViolation(format!(
                "trace factors ({}, {}) differ from (1, 1)",
                forward, backward
            )));
        }
        // conjugation identity on every spanning element
        for (a, b, s) in self.span() {
            let lambda = self.basis_lambda(a, b, &s);
            let lhs = self.apply_coefficients(&lambda).mul(self.target.evaluation())?;
            let rhs = alpha
                .mul(&lambda.mul(self.source.evaluation())?)?
                .mul(&alpha_inv)?;
            if lhs != rhs {
                return Err(Error::TheoremViolation(format!(
                    "conjugation identity failed on {} * E({},{})",
                    s, a, b
                )));
            }
        }
        Ok((alpha, beta))
    }
}

fn apply_terms(terms: &[(Matrix, Matrix)], lambda: &Matrix, m: usize, l: usize) -> Matrix {
    let mut acc = Matrix::zeros(lambda.descriptor(), m, l);
    for (a, b) in terms {
        acc = acc.add(&a.mul(lambda).unwrap().mul(b).unwrap()).unwrap();
    }
    acc
}

/// Equality of trace values in the scalars modulo additive commutators.
/// Commutators vanish in a commutative ring; over the quaternions they span
/// the pure imaginary part, leaving only the real component well-defined.
fn trace_eq(x: &Scalar, y: &Scalar) -> bool {
    match (x, y) {
        (Scalar::Quaternion(a), Scalar::Quaternion(b)) => a.real() == b.real(),
        _ => x == y,
    }
}

fn trace_of(system: &DualSystem, lambda: &Matrix) -> Scalar {
    let action = lambda.mul(system.evaluation()).unwrap();
    let mut acc = Scalar::zero(lambda.descriptor());
    for a in 0..action.rows() {
        acc = acc.add(action.get(a, a));
    }
    acc
}

/// `sum_g coords(q)[g] * images[g][(a,e)]`, the image of `q * E_ae` under an
/// additive center-linear map given by its images on the spanning set.
fn combine_central(
    d: RingDescriptor,
    q: &Scalar,
    images: &[Vec<Matrix>],
    a: usize,
    e: usize,
    k: usize,
) -> Matrix {
    let coords = q.center_coords();
    let mut acc: Option<Matrix> = None;
    for (gi, coord) in coords.iter().enumerate() {
        let central = promote_central(d, coord);
        let term = images[gi][a * k + e].scale_left(&central);
        acc = Some(match acc {
            None => term,
            Some(prev) => prev.add(&term).unwrap(),
        });
    }
    acc.expect("central generating set is nonempty")
}

/// Lifts a base-field coordinate back into the ambient descriptor.
fn promote_central(d: RingDescriptor, coord: &Scalar) -> Scalar {
    match d {
        RingDescriptor::RationalQuaternions => {
            use num::Zero;
            match coord {
                Scalar::Rational(r) => Scalar::quaternion([
                    r.clone(),
                    num::BigRational::zero(),
                    num::BigRational::zero(),
                    num::BigRational::zero(),
                ]),
                _ => panic!("quaternion coordinates must be rational"),
            }
        }
        _ => coord.clone(),
    }
}
