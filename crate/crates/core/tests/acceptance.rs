//! Acceptance suite. Prints one line per criterion and exits nonzero if any
//! criterion fails. Set `DPCA_ORL_DIR` to an ORL-layout image tree to run
//! the ORL reproduction check.

mod common;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use dpca_core::bench::{run_bench, BenchConfig, BenchReport, DataSource, SplitKind};
use dpca_core::lda::{fit_dlda_gram, generalized_eig};
use dpca_core::scatter::{direct_scatter, gram_scatter, regularize};
use dpca_core::{
    evaluate, fit_dlda, fit_dpca, fit_pca, load_dataset, split, sym_eig, DpcaParams, Error,
    LabeledDataset, Method, Rule, SplitSpec, SynthSpec,
};
use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
}

struct Criterion {
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Outcome::Pass(detail)
    } else {
        Outcome::Fail(detail)
    }
}

fn random_counts(
    r: &mut ChaCha8Rng,
    classes: std::ops::RangeInclusive<usize>,
    per: std::ops::RangeInclusive<usize>,
) -> Vec<usize> {
    let c = r.random_range(classes);
    (0..c).map(|_| r.random_range(per.clone())).collect()
}

fn random_spd(n: usize, shift: f64, r: &mut ChaCha8Rng) -> DMatrix<f64> {
    let g = random_matrix(n, n, r);
    &g * g.transpose() + DMatrix::identity(n, n) * shift
}

fn gram_lift_equivalence() -> Outcome {
    let mut r = rng(100);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let n = r.random_range(3..=8);
        let mut omega = random_matrix(n, n, &mut r);
        for i in 0..n {
            omega[(i, i)] += 3.0;
        }
        let sw = random_spd(n, 0.5, &mut r);
        let sb = random_spd(n, 0.1, &mut r);
        let conj = |s: &DMatrix<f64>| {
            let c = omega.transpose() * s * &omega;
            from_na(&((&c + c.transpose()) * 0.5))
        };
        let (gsb, gsw) = (conj(&sb), conj(&sw));
        let solver = sw.clone().cholesky().expect("S_w is positive definite");
        let residual = |x: &DMatrix<f64>, lambda: f64| {
            let lhs = solver.solve(&(&sb * x));
            (lhs - x * lambda).norm() / x.norm()
        };

        let (values, tilde) = generalized_eig(&gsb, &gsw).unwrap();
        let lifted = to_na(&omega_times(&omega, &tilde));
        for (k, &lambda) in values.iter().enumerate() {
            worst = worst.max(residual(&lifted.columns(k, 1).into_owned(), lambda));
        }

        // Direct LDA columns satisfy S̃_b w̃ = (1/λ_w) S̃_w w̃ when S_b is invertible
        let pair = scatter_pair(&gsb, &gsw);
        let dlda = fit_dlda_gram(&pair, None, 0).unwrap();
        let lifted = to_na(&omega_times(&omega, &dlda.w_tilde));
        for (k, &lw) in dlda.within_eigenvalues.iter().enumerate() {
            worst = worst.max(residual(&lifted.columns(k, 1).into_owned(), lw.recip()));
        }
    }
    check(worst <= 1e-6, format!("max relative residual {worst:.2e}"))
}

fn omega_times(omega: &DMatrix<f64>, m: &dpca_core::Matrix) -> dpca_core::Matrix {
    from_na(&(omega * to_na(m)))
}

/// A Gram-space scatter pair holding the given matrices.
fn scatter_pair(sb: &dpca_core::Matrix, sw: &dpca_core::Matrix) -> dpca_core::scatter::ScatterPair {
    let d = LabeledDataset::new(dpca_core::Matrix::zeros(1, 2), vec![0, 1]).unwrap();
    let mut pair = gram_scatter(&d);
    pair.sb = sb.clone();
    pair.sw = sw.clone();
    pair
}

fn centred_scaled(d: &LabeledDataset) -> DMatrix<f64> {
    let x = to_na(d.samples());
    let mean = x.column_mean();
    let mut a = x;
    for mut col in a.column_iter_mut() {
        col -= &mean;
    }
    a / (d.dim() as f64).sqrt()
}

fn dual_trick() -> Outcome {
    let mut r = rng(200);
    let (mut worst_angle, mut worst_spec): (f64, f64) = (0.0, 0.0);
    for _ in 0..100 {
        let dim = r.random_range(4..=64);
        let counts = random_counts(&mut r, 1..=5, 1..=4);
        let d = random_dataset(dim, &counts, &mut r);
        let a = centred_scaled(&d);
        let (big, vecs) = sorted_eigen(&(&a * a.transpose()));
        let rank = (d.len() - 1).min(dim);
        if rank == 0 {
            continue;
        }
        let p = r.random_range(1..=rank);
        let s = fit_pca(&d, p).unwrap();
        let angle = max_principal_angle(&vecs.columns(0, p).into_owned(), &to_na(&s.basis));
        worst_angle = worst_angle.max(angle);

        let small = sym_eig(&from_na(&(a.transpose() * &a))).unwrap();
        let nonzero: Vec<f64> = small
            .values
            .iter()
            .copied()
            .filter(|&v| v > small.tolerance())
            .collect();
        if nonzero.len() != rank {
            return Outcome::Fail(format!("numerical rank {} != {rank}", nonzero.len()));
        }
        for (x, y) in nonzero
            .iter()
            .zip(&big)
            .chain(s.eigenvalues.iter().zip(&big))
        {
            worst_spec = worst_spec.max((x - y).abs() / y.abs());
        }
    }
    check(
        worst_angle <= 1e-6 && worst_spec <= 1e-8,
        format!("max angle {worst_angle:.2e} rad, max spectral gap {worst_spec:.2e}"),
    )
}

fn whitening() -> Outcome {
    let mut r = rng(300);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let dim = r.random_range(4..=64);
        let counts = random_counts(&mut r, 2..=10, 2..=4);
        let d = random_dataset(dim, &counts, &mut r);
        let s = regularize(gram_scatter(&d), Rule::Mean).unwrap();
        let res = fit_dlda_gram(&s, None, 0).unwrap();
        let b = to_na(&res.b_prime);
        let whitened = b.transpose() * to_na(&s.sb) * &b;
        let k = whitened.nrows();
        worst = worst.max((whitened - DMatrix::identity(k, k)).abs().max());
    }
    check(worst <= 1e-6, format!("max entry error {worst:.2e}"))
}

fn conjugation_and_rank() -> (Outcome, Outcome) {
    let mut r = rng(400);
    let mut worst: f64 = 0.0;
    let mut rank_violations = Vec::new();
    for trial in 0..100 {
        let dim = r.random_range(2..=64);
        let counts = random_counts(&mut r, 2..=8, 1..=4);
        let d = random_dataset(dim, &counts, &mut r);
        let direct = direct_scatter(&d).unwrap();
        let gram = gram_scatter(&d);
        let omega = to_na(d.samples());
        for (g, s) in [(&gram.sb, &direct.sb), (&gram.sw, &direct.sw)] {
            let expect = omega.transpose() * to_na(s) * &omega;
            let scale = expect.norm().max(f64::MIN_POSITIVE);
            worst = worst.max((to_na(g) - &expect).norm() / scale);
        }
        let c = d.num_classes();
        for sb in [&gram.sb, &direct.sb] {
            let rank = sym_eig(sb).unwrap().rank();
            if rank > c - 1 {
                rank_violations.push(format!("trial {trial}: rank {rank} with {c} classes"));
            }
        }
    }
    (
        check(
            worst <= 1e-9,
            format!("max relative Frobenius error {worst:.2e}"),
        ),
        check(
            rank_violations.is_empty(),
            if rank_violations.is_empty() {
                "200 between-class scatters within c - 1".into()
            } else {
                rank_violations.join("; ")
            },
        ),
    )
}

fn conjugation() -> Outcome {
    conjugation_and_rank().0
}

fn rank_bound() -> Outcome {
    conjugation_and_rank().1
}

fn orthonormality() -> Outcome {
    let mut r = rng(500);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let dim = r.random_range(10..=64);
        let counts = random_counts(&mut r, 3..=10, 2..=4);
        let d = random_dataset(dim, &counts, &mut r);
        let probe = DpcaParams {
            p: usize::MAX,
            ..DpcaParams::default()
        };
        let rank = match fit_dpca(&d, &probe) {
            Err(Error::RankExceeded { rank, .. }) => rank,
            other => return Outcome::Fail(format!("unexpected probe result {other:?}")),
        };
        let p = r.random_range(1..=rank);
        let s = fit_dpca(&d, &DpcaParams { p, ..probe }).unwrap();
        let xi = to_na(&s.basis);
        worst = worst.max((xi.transpose() * &xi - DMatrix::identity(p, p)).abs().max());
    }
    check(worst <= 1e-6, format!("max entry error {worst:.2e}"))
}

fn mean_accuracy(reports: &[BenchReport], method: Method) -> f64 {
    let accs: Vec<f64> = reports
        .iter()
        .flat_map(|r| &r.rows)
        .filter(|row| row.method == method)
        .map(|row| row.outcome.as_ref().map_or(0.0, |o| o.accuracy))
        .collect();
    accs.iter().sum::<f64>() / accs.len() as f64
}

fn separability() -> Outcome {
    let reports: Result<Vec<BenchReport>, _> = (0..20)
        .map(|seed| {
            let mut cfg = BenchConfig::new(DataSource::Synth(SynthSpec {
                seed,
                ..SynthSpec::default()
            }));
            cfg.l_values = vec![3];
            cfg.repeats = 1;
            run_bench(&cfg)
        })
        .collect();
    let reports = match reports {
        Ok(r) => r,
        Err(e) => return Outcome::Fail(e.to_string()),
    };
    let failed = reports
        .iter()
        .flat_map(|r| &r.rows)
        .filter(|row| row.outcome.is_err())
        .count();
    let pca = mean_accuracy(&reports, Method::Pca);
    let dlda = mean_accuracy(&reports, Method::Dlda);
    let dpca = mean_accuracy(&reports, Method::Dpca);
    check(
        failed == 0 && dpca >= pca + 0.10 && dpca >= dlda,
        format!(
            "mean accuracy pca {:.2}%, dlda {:.2}%, dpca {:.2}% ({failed} failed rows)",
            100.0 * pca,
            100.0 * dlda,
            100.0 * dpca
        ),
    )
}

const ORL_P: [usize; 4] = [10, 20, 30, 39];
const ORL_DISCARD: [usize; 5] = [0, 1, 2, 4, 8];

fn within(acc: f64, target: f64) -> bool {
    (100.0 * acc - target).abs() <= 5.0
}

fn orl() -> Outcome {
    let Some(root) = std::env::var_os("DPCA_ORL_DIR").map(PathBuf::from) else {
        return Outcome::Skip("DPCA_ORL_DIR not set".into());
    };
    let d = match load_dataset(&root) {
        Ok(d) => d,
        Err(e) => return Outcome::Fail(format!("cannot load {}: {e}", root.display())),
    };
    let mut notes = Vec::new();
    let mut ok = true;
    for (l, pca_target, dlda_target, dpca_target) in [
        (3, 85.36, None, 90.36),
        (5, 93.50, None, 95.00),
        (7, 95.83, Some(95.83), 95.83),
    ] {
        let (train, test) = match split(&d, SplitSpec::first(l)) {
            Ok(s) => s,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        let acc = |s: dpca_core::Result<dpca_core::FeatureSubspace>| {
            s.and_then(|s| evaluate(&s, &train, &test)).ok()
        };
        let pca: Vec<Option<f64>> = ORL_P.iter().map(|&p| acc(fit_pca(&train, p))).collect();
        let dlda: Vec<Option<f64>> = ORL_DISCARD
            .iter()
            .map(|&dw| acc(fit_dlda(&train, Rule::Mean, None, dw)))
            .collect();
        let mut best: Option<(f64, String)> = None;
        for (i, &p) in ORL_P.iter().enumerate() {
            for (j, &dw) in ORL_DISCARD.iter().enumerate() {
                let params = DpcaParams {
                    p,
                    m: None,
                    discarded_w: dw,
                    rule: Rule::Mean,
                };
                let (Some(a_pca), Some(a_dpca)) = (pca[i], acc(fit_dpca(&train, &params))) else {
                    continue;
                };
                let a_dlda = dlda[j];
                let hit = within(a_pca, pca_target)
                    && within(a_dpca, dpca_target)
                    && match dlda_target {
                        Some(t) => a_dlda.is_some_and(|a| within(a, t)),
                        None => a_dpca >= a_pca,
                    };
                let score =
                    (100.0 * a_dpca - dpca_target).abs() + (100.0 * a_pca - pca_target).abs();
                let desc = format!(
                    "l={l} p={p} dw={dw}: pca {:.2}% dlda {} dpca {:.2}%",
                    100.0 * a_pca,
                    a_dlda.map_or("error".into(), |a| format!("{:.2}%", 100.0 * a)),
                    100.0 * a_dpca
                );
                let score = if hit { score - 1e6 } else { score };
                if best.as_ref().is_none_or(|(s, _)| score < *s) {
                    best = Some((score, desc));
                }
            }
        }
        match best {
            Some((score, desc)) => {
                ok &= score < -1e5;
                notes.push(desc);
            }
            None => {
                ok = false;
                notes.push(format!("l={l}: every fit failed"));
            }
        }
    }
    check(ok, notes.join("; "))
}

fn bench_config(repeats: usize) -> BenchConfig {
    let mut cfg = BenchConfig::new(DataSource::Synth(SynthSpec {
        seed: 7,
        ..SynthSpec::default()
    }));
    cfg.l_values = vec![3, 5];
    cfg.repeats = repeats;
    cfg
}

fn accuracy_bits(r: &BenchReport) -> Vec<Option<u64>> {
    r.rows
        .iter()
        .map(|row| row.outcome.as_ref().ok().map(|o| o.accuracy.to_bits()))
        .collect()
}

fn timing() -> Outcome {
    let (one, twenty) = match (run_bench(&bench_config(1)), run_bench(&bench_config(20))) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Outcome::Fail(e.to_string()),
    };
    let times: Vec<f64> = twenty
        .rows
        .iter()
        .filter_map(|row| row.outcome.as_ref().ok().map(|o| o.mean_time_s))
        .collect();
    let positive = times.len() == twenty.rows.len() && times.iter().all(|&t| t > 0.0);
    let stable = accuracy_bits(&one) == accuracy_bits(&twenty);
    check(
        positive && stable,
        format!(
            "{} rows, min mean time {:.2e} s, accuracies identical: {stable}",
            times.len(),
            times.iter().copied().fold(f64::INFINITY, f64::min)
        ),
    )
}

fn determinism() -> Outcome {
    let run = || {
        let mut cfg = bench_config(1);
        cfg.split = SplitKind::Random;
        cfg.methods = vec![Method::Pca, Method::Fisher, Method::Dlda, Method::Dpca];
        run_bench(&cfg)
    };
    let (a, b) = match (run(), run()) {
        (Ok(a), Ok(b)) => (a, b),
        (Err(e), _) | (_, Err(e)) => return Outcome::Fail(e.to_string()),
    };
    let prints = |r: &BenchReport| -> Vec<Option<String>> {
        r.rows
            .iter()
            .map(|row| {
                row.outcome
                    .as_ref()
                    .ok()
                    .map(|o| o.basis_fingerprint.clone())
            })
            .collect()
    };
    let fitted = prints(&a).iter().filter(|p| p.is_some()).count();
    check(
        accuracy_bits(&a) == accuracy_bits(&b) && prints(&a) == prints(&b) && fitted >= 6,
        format!("{} rows, {fitted} fitted bases compared", a.rows.len()),
    )
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            name: "generalized eigenvectors lift from Gram space",
            limit: Some(Duration::from_secs(5)),
            run: gram_lift_equivalence,
        },
        Criterion {
            name: "dual trick matches ambient covariance",
            limit: Some(Duration::from_secs(10)),
            run: dual_trick,
        },
        Criterion {
            name: "direct LDA whitening identity",
            limit: Some(Duration::from_secs(10)),
            run: whitening,
        },
        Criterion {
            name: "scatter conjugation",
            limit: Some(Duration::from_secs(10)),
            run: conjugation,
        },
        Criterion {
            name: "between-class rank bound",
            limit: None,
            run: rank_bound,
        },
        Criterion {
            name: "discriminative basis orthonormality",
            limit: None,
            run: orthonormality,
        },
        Criterion {
            name: "synthetic separability",
            limit: Some(Duration::from_secs(60)),
            run: separability,
        },
        Criterion {
            name: "ORL reproduction",
            limit: Some(Duration::from_secs(300)),
            run: orl,
        },
        Criterion {
            name: "timing harness sanity",
            limit: None,
            run: timing,
        },
        Criterion {
            name: "bench determinism",
            limit: None,
            run: determinism,
        },
    ];
    let mut failures = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let over = c.limit.is_some_and(|l| elapsed > l);
        let (tag, detail) = match outcome {
            Outcome::Pass(d) if over => ("FAIL", format!("{d}; over time limit")),
            Outcome::Pass(d) => ("PASS", d),
            Outcome::Fail(d) => ("FAIL", d),
            Outcome::Skip(d) => ("SKIP", d),
        };
        if tag == "FAIL" {
            failures += 1;
        }
        let limit = c
            .limit
            .map_or(String::new(), |l| format!(" / {} s", l.as_secs()));
        println!(
            "{tag} {} [{:.2} s{limit}] {detail}",
            c.name,
            elapsed.as_secs_f64()
        );
    }
    println!("{} criteria, {failures} failed", criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
