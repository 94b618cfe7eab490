//! The acceptance gate: eight numbered checks, each printing one line.
//! Everything is exact arithmetic; there are no tolerances anywhere.

use std::process::Command;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fenring::oracle::{exhaustive_isomorphism_scan, random_instance, DEFAULT_SCAN_CAP};
use fenring::ring::{random_scalar, Transvection};
use fenring::sandwich::SandwichMap;
use fenring::{DualSystem, Error, Matrix, RingDescriptor, Scalar};

const DESCRIPTORS: [RingDescriptor; 5] = [
    RingDescriptor::Rationals,
    RingDescriptor::PrimeField(2),
    RingDescriptor::PrimeField(3),
    RingDescriptor::PrimeField(5),
    RingDescriptor::RationalQuaternions,
];

fn report(number: u32, what: &str, pass: bool) {
    println!(
        "criterion {} ({}): {}",
        number,
        what,
        if pass { "pass" } else { "FAIL" }
    );
    assert!(pass, "criterion {} failed", number);
}

fn dims(i: usize, max_n: usize) -> (usize, usize) {
    let n = 1 + i % max_n;
    let k = 1 + i % n;
    (n, k)
}

/// Trace values compared in the scalars modulo additive commutators: full
/// equality for commutative descriptors, the real component for quaternions.
fn trace_eq(x: &Scalar, y: &Scalar) -> bool {
    match (x, y) {
        (Scalar::Quaternion(a), Scalar::Quaternion(b)) => a.real() == b.real(),
        _ => x == y,
    }
}

#[test]
fn criterion_1_ring_axioms() {
    let mut pass = true;
    for (di, d) in DESCRIPTORS.iter().enumerate() {
        for i in 0..20 {
            let (n, k) = dims(i, 4);
            let seed = (di * 100 + i) as u64;
            let (s, _, _) = random_instance(seed, *d, n, k);
            let ok = s.check_axioms(1000, seed ^ 0xa11).unwrap().pass();
            pass &= ok;
        }
    }
    report(1, "ring axioms, 20 systems x 5 descriptors x 1000 trials", pass);
}

#[test]
fn criterion_2_trace_formula() {
    let mut pass = true;
    for (di, d) in DESCRIPTORS.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(2000 + di as u64);
        for i in 0..1000 {
            let (n, k) = dims(i, 4);
            let (s, _, _) = random_instance(3000 + (di * 1000 + i) as u64, *d, n, k);
            let v: Vec<Scalar> = (0..n).map(|_| random_scalar(&mut rng, *d)).collect();
            let mu: Vec<Scalar> = (0..k).map(|_| random_scalar(&mut rng, *d)).collect();
            let x = Transvection::new(v.clone(), mu.clone()).to_element(&s).unwrap();
            // f(v) = sum_b mu_b * (F[b] . v)
            let f = s.evaluation();
            let mut fv = Scalar::zero(*d);
            for b in 0..k {
                let mut row = Scalar::zero(*d);
                for a in 0..n {
                    row = row.add(&f.get(b, a).mul(&v[a]));
                }
                fv = fv.add(&mu[b].mul(&row));
            }
            pass &= trace_eq(&x.trace(), &fv);
        }
    }
    report(2, "trace of a transvection equals f(v), 1000 per descriptor", pass);
}

#[test]
fn criterion_3_round_trip_recovery() {
    let mut pass = true;
    for (di, d) in DESCRIPTORS.iter().enumerate() {
        for i in 0..200 {
            let (n, k) = dims(i, 3);
            let (s, alpha, beta) = random_instance(5000 + (di * 1000 + i) as u64, *d, n, k);
            let phi = SandwichMap::conjugation(&s, &alpha, &beta).unwrap();
            let ok = match phi.recover_conjugator() {
                Ok((a2, b2)) => {
                    let again = SandwichMap::conjugation(&s, &a2, &b2).unwrap();
                    again.acts_like(&phi)
                }
                Err(_) => false,
            };
            pass &= ok;
        }
    }
    report(3, "conjugator recovery round trip, 200 per descriptor", pass);
}

#[test]
fn criterion_4_trace_scaling_factor_two() {
    let mut pass = true;
    for (di, d) in DESCRIPTORS.iter().enumerate() {
        for i in 0..21 {
            let (n, k) = dims(i, 3);
            let seed = 7000 + (di * 100 + i) as u64;
            let (s, alpha1, _) = random_instance(seed, *d, n, k);
            let (_, alpha2, _) = random_instance(seed ^ 0xd5, *d, n, k);
            let phi = SandwichMap::direct_sum(&s, &alpha1, &alpha2).unwrap();
            pass &= phi.is_homomorphism().pass();
            pass &= phi.trace_scaling_factor().unwrap() == 2;
            pass &= matches!(phi.recover_conjugator(), Err(Error::NotIsomorphism(_)));
        }
    }
    report(4, "direct sums: homomorphism, trace factor 2, not isomorphism", pass);
}

#[test]
fn criterion_5_orthogonality() {
    let mut pass = true;
    for (di, d) in DESCRIPTORS.iter().enumerate() {
        // the same seeded instances as criteria 3 and 4
        for i in 0..200 {
            let (n, k) = dims(i, 3);
            let (s, alpha, beta) = random_instance(5000 + (di * 1000 + i) as u64, *d, n, k);
            let phi = SandwichMap::conjugation(&s, &alpha, &beta).unwrap();
            pass &= phi.orthogonality().unwrap().pass();
        }
        for i in 0..21 {
            let (n, k) = dims(i, 3);
            let seed = 7000 + (di * 100 + i) as u64;
            let (s, alpha1, _) = random_instance(seed, *d, n, k);
            let (_, alpha2, _) = random_instance(seed ^ 0xd5, *d, n, k);
            let phi = SandwichMap::direct_sum(&s, &alpha1, &alpha2).unwrap();
            pass &= phi.orthogonality().unwrap().pass();
        }
    }
    report(5, "orthogonality B_j G A_i = delta_ij F on all maps above", pass);
}

#[test]
fn criterion_6_exhaustive_scan() {
    let d = RingDescriptor::PrimeField(2);
    let s1 = DualSystem::new(Matrix::identity(d, 1)).unwrap();
    let r1 = exhaustive_isomorphism_scan(&s1, &s1, DEFAULT_SCAN_CAP).unwrap();
    let s2 = DualSystem::new(Matrix::from_rows(d, &[&[1, 0]])).unwrap();
    let r2 = exhaustive_isomorphism_scan(&s2, &s2, DEFAULT_SCAN_CAP).unwrap();
    let pass = r1.pass
        && r2.pass
        && r1.iso_count == r1.conjugation_action_count
        && r2.iso_count == r2.conjugation_action_count;
    report(6, "exhaustive scans at (2,1,1) and (2,2,1) match conjugations", pass);
}

#[test]
fn criterion_7_non_density_regime() {
    let mut pass = true;
    // every generated system with k < n sits outside the totality regime
    for (di, d) in DESCRIPTORS.iter().enumerate() {
        for i in 0..50 {
            let n = 2 + i % 3;
            let k = 1 + i % (n - 1);
            let (s, _, _) = random_instance(9000 + (di * 100 + i) as u64, *d, n, k);
            pass &= !s.is_total();
        }
    }
    // and so does the scanned degenerate system
    let d = RingDescriptor::PrimeField(2);
    let scanned = DualSystem::new(Matrix::from_rows(d, &[&[1, 0]])).unwrap();
    pass &= !scanned.is_total();
    report(7, "every k < n system is non-total", pass);
}

#[test]
fn criterion_8_cli_golden_round_trip() {
    let dir = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance");
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("input.session");
    let conj = dir.join("conj.session");
    std::fs::write(&input, "ring prime_field 2\nsystem S n=2 k=1 F=[[1, 0]]\n").unwrap();

    let make = Command::new(env!("CARGO_BIN_EXE_fenring"))
        .args([
            "make-conj",
            input.to_str().unwrap(),
            "S",
            "--alpha",
            "[[1, 1], [0, 1]]",
            "--beta",
            "[[1]]",
            "-o",
            conj.to_str().unwrap(),
        ])
        .output()
        .unwrap();
    let written = std::fs::read_to_string(&conj).unwrap_or_default();
    let expected_session = "ring prime_field 2\n\
         system S n=2 k=1 F=[[1, 0]]\n\
         system S_target n=2 k=1 F=[[1, 1]]\n\
         map S_conj source=S target=S_target terms=[([[1, 1], [0, 1]], [[1]])]\n";

    let recover = Command::new(env!("CARGO_BIN_EXE_fenring"))
        .args(["recover", conj.to_str().unwrap(), "S_conj"])
        .output()
        .unwrap();

    let pass = make.status.success()
        && String::from_utf8_lossy(&make.stdout) == "G = [[1, 1]]\n"
        && written == expected_session
        && recover.status.success()
        && String::from_utf8_lossy(&recover.stdout)
            == "alpha = [[1, 1], [0, 1]]\nbeta = [[1]]\nB G A = F: pass\n";
    report(8, "CLI make-conj/recover golden round trip, byte-exact", pass);
}
