//! Brute-force cross-checks over small prime fields, plus seeded instance
//! generation.
//!
//! The scan enumerates every additive map between two coefficient spaces,
//! filters for multiplicativity and bijectivity, and independently enumerates
//! every conjugation by an invertible pair. Agreement of the two collections
//! is the strongest evidence this crate can produce that the structural
//! results hold on a given instance, because nothing here shares code with
//! the sandwich machinery.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{random_invertible, random_scalar, DualSystem};
use crate::sandwich::SandwichMap;
use crate::scalar::{RingDescriptor, Scalar};

pub const DEFAULT_SCAN_CAP: u64 = 1_000_000;

/// An additive map recorded extensionally: `images[a * k + b]` is the image
/// coefficient matrix of the basis element `E_ab`.
pub type ImageTable = Vec<Matrix>;

#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub total_maps: u128,
    pub hom_count: u64,
    pub iso_count: u64,
    pub conjugation_action_count: u64,
    /// True when the bijective homomorphisms and the conjugation actions are
    /// the same set of maps.
    pub pass: bool,
    pub isomorphisms: Vec<ImageTable>,
}

/// Enumerates all `p^(nk * ml)` additive maps from the source coefficient
/// space to the target one and classifies them. Refuses descriptors other
/// than prime fields and candidate counts beyond `cap`.
pub fn exhaustive_isomorphism_scan(
    source: &DualSystem,
    target: &DualSystem,
    cap: u64,
) -> Result<ScanReport> {
    let d = source.descriptor();
    let p = match d {
        RingDescriptor::PrimeField(p) => p,
        _ => return Err(Error::WrongDescriptor),
    };
    if target.descriptor() != d {
        return Err(Error::DescriptorMismatch);
    }
    let n = source.space_dim();
    let k = source.functional_dim();
    let m = target.space_dim();
    let l = target.functional_dim();
    let digits = n * k * m * l;
    let total = checked_power(p, digits).ok_or(Error::SizeGuard {
        candidates: u128::MAX,
        cap,
    })?;
    if total > cap as u128 {
        return Err(Error::SizeGuard {
            candidates: total,
            cap,
        });
    }
    let f = source.evaluation();
    let g = target.evaluation();

    let mut hom_count = 0u64;
    let mut iso_count = 0u64;
    let mut isomorphisms: Vec<ImageTable> = Vec::new();
    for idx in 0..total {
        let table = decode_table(d, p, idx, n, k, m, l);
        if !is_multiplicative(&table, f, g, n, k) {
            continue;
        }
        hom_count += 1;
        if is_bijective_table(&table, d, n, k, m, l) {
            iso_count += 1;
            isomorphisms.push(table);
        }
    }

    // Independent side: every invertible pair (alpha, beta) with
    // beta * G * alpha = F induces the conjugation L -> alpha * L * beta.
    let mut conj_actions: Vec<ImageTable> = Vec::new();
    if n == m && k == l {
        for alpha in all_invertible(d, p, n)? {
            for beta in all_invertible(d, p, k)? {
                if beta.mul(g)?.mul(&alpha)? != *f {
                    continue;
                }
                let mut table = Vec::with_capacity(n * k);
                for a in 0..n {
                    for b in 0..k {
                        let mut e = Matrix::zeros(d, n, k);
                        e.set(a, b, Scalar::one(d));
                        table.push(alpha.mul(&e)?.mul(&beta)?);
                    }
                }
                if !conj_actions.contains(&table) {
                    conj_actions.push(table);
                }
            }
        }
    }
    let pass = isomorphisms.len() == conj_actions.len()
        && isomorphisms.iter().all(|t| conj_actions.contains(t));
    Ok(ScanReport {
        total_maps: total,
        hom_count,
        iso_count,
        conjugation_action_count: conj_actions.len() as u64,
        pass,
        isomorphisms,
    })
}

fn checked_power(p: u64, digits: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..digits {
        acc = acc.checked_mul(p as u128)?;
    }
    Some(acc)
}

/// Decodes a candidate index into an image table; the first base-p digit is
/// the most significant, entries run source-basis-major then image-row-major,
/// so the enumeration order is lexicographic and reproducible.
fn decode_table(
    d: RingDescriptor,
    p: u64,
    idx: u128,
    n: usize,
    k: usize,
    m: usize,
    l: usize,
) -> ImageTable {
    let digits = n * k * m * l;
    let mut rem = idx;
    let mut flat = vec![0u64; digits];
    for pos in (0..digits).rev() {
        flat[pos] = (rem % p as u128) as u64;
        rem /= p as u128;
    }
    let mut table = Vec::with_capacity(n * k);
    for ab in 0..n * k {
        let entries = (0..m * l)
            .map(|rc| Scalar::from_integer(d, flat[ab * m * l + rc] as i64))
            .collect();
        table.push(Matrix::new(d, m, l, entries).unwrap());
    }
    table
}

/// `E_ab * E_ce = F[b][c] * E_ae`, so multiplicativity of an additive map
/// reduces to `F[b][c] * T[ae] = T[ab] * G * T[ce]` over all index tuples.
fn is_multiplicative(table: &[Matrix], f: &Matrix, g: &Matrix, n: usize, k: usize) -> bool {
    for a in 0..n {
        for b in 0..k {
            let tg = table[a * k + b].mul(g).unwrap();
            for c in 0..n {
                for e in 0..k {
                    let lhs = table[a * k + e].scale_left(f.get(b, c));
                    if lhs != tg.mul(&table[c * k + e]).unwrap() {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn is_bijective_table(
    table: &[Matrix],
    d: RingDescriptor,
    n: usize,
    k: usize,
    m: usize,
    l: usize,
) -> bool {
    if n * k != m * l {
        return false;
    }
    let mut action = Matrix::zeros(d, m * l, n * k);
    for (col, image) in table.iter().enumerate() {
        for r in 0..m {
            for c in 0..l {
                action.set(r * l + c, col, image.get(r, c).clone());
            }
        }
    }
    action.rank() == n * k
}

fn all_invertible(d: RingDescriptor, p: u64, n: usize) -> Result<Vec<Matrix>> {
    let digits = n * n;
    let total = checked_power(p, digits).ok_or(Error::SizeGuard {
        candidates: u128::MAX,
        cap: DEFAULT_SCAN_CAP,
    })?;
    let mut out = Vec::new();
    for idx in 0..total {
        let mut rem = idx;
        let mut flat = vec![0u64; digits];
        for pos in (0..digits).rev() {
            flat[pos] = (rem % p as u128) as u64;
            rem /= p as u128;
        }
        let entries = flat
            .iter()
            .map(|&v| Scalar::from_integer(d, v as i64))
            .collect();
        let m = Matrix::new(d, n, n, entries).unwrap();
        if m.rank() == n {
            out.push(m);
        }
    }
    Ok(out)
}

/// Rewrites an extensional image table as a sandwich map via rank-one
/// decomposition of each image: an entry extractor `E_ra L E_bc = L[a][b] E_rc`
/// turns each rank-one piece `u w` of `T[ab]` into the term
/// `(u e_a^T, e_b w)`. The coefficient must commute past `u`, so this is
/// restricted to commutative descriptors.
pub fn linear_map_to_sandwich(
    source: &DualSystem,
    target: &DualSystem,
    images: &[Matrix],
) -> Result<SandwichMap> {
    let d = source.descriptor();
    if !d.is_commutative() {
        return Err(Error::WrongDescriptor);
    }
    let n = source.space_dim();
    let k = source.functional_dim();
    let m = target.space_dim();
    let l = target.functional_dim();
    if images.len() != n * k {
        return Err(Error::ShapeMismatch(format!(
            "expected {} image matrices, got {}",
            n * k,
            images.len()
        )));
    }
    let mut terms = Vec::new();
    for a in 0..n {
        for b in 0..k {
            for (u, w) in rank_one_pieces(&images[a * k + b]) {
                // A = u e_a^T (m x n), B = e_b w (k x l)
                let mut a_mat = Matrix::zeros(d, m, n);
                for (r, entry) in u.iter().enumerate() {
                    a_mat.set(r, a, entry.clone());
                }
                let mut b_mat = Matrix::zeros(d, k, l);
                for (c, entry) in w.iter().enumerate() {
                    b_mat.set(b, c, entry.clone());
                }
                terms.push((a_mat, b_mat));
            }
        }
    }
    SandwichMap::new(source.clone(), target.clone(), terms)
}

/// Greedy pivot elimination: peel off one outer product per pivot until the
/// matrix is zero. Returns `rank(M)` pairs of (column, row) vectors.
fn rank_one_pieces(mat: &Matrix) -> Vec<(Vec<Scalar>, Vec<Scalar>)> {
    let mut work = mat.clone();
    let mut pieces = Vec::new();
    loop {
        let pivot = (0..work.rows())
            .flat_map(|r| (0..work.cols()).map(move |c| (r, c)))
            .find(|&(r, c)| !work.get(r, c).is_zero());
        let Some((pr, pc)) = pivot else { break };
        let inv = work.get(pr, pc).inverse().unwrap();
        let u: Vec<Scalar> = (0..work.rows()).map(|r| work.get(r, pc).clone()).collect();
        let w: Vec<Scalar> = (0..work.cols())
            .map(|c| inv.mul(work.get(pr, c)))
            .collect();
        for r in 0..work.rows() {
            for c in 0..work.cols() {
                let v = work.get(r, c).sub(&u[r].mul(&w[c]));
                work.set(r, c, v);
            }
        }
        pieces.push((u, w));
    }
    pieces
}

/// Seeded generator for a random system together with an invertible pair of
/// the matching sizes; the evaluation matrix is redrawn until it has full row
/// rank.
pub fn random_instance(
    seed: u64,
    d: RingDescriptor,
    n: usize,
    k: usize,
) -> (DualSystem, Matrix, Matrix) {
    assert!(k >= 1 && k <= n, "need 1 <= k <= n");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let system = loop {
        let entries = (0..k * n).map(|_| random_scalar(&mut rng, d)).collect();
        let f = Matrix::new(d, k, n, entries).unwrap();
        if let Ok(s) = DualSystem::new(f) {
            break s;
        }
    };
    let alpha = random_invertible(&mut rng, d, n);
    let beta = random_invertible(&mut rng, d, k);
    (system, alpha, beta)
}
