//! Acceptance checks. Each test writes one `[PASS]` / `[FAIL]` line straight
//! to stderr (past the harness's output capture) and then asserts.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use tjade::cli::{cmd_apply, ApplyArgs, DataFormat};
use tjade::ica::{center, cumulant_set, fobi_fit, jade_fit, standardize, tfobi_fit, tjade_fit, Sample, Variant};
use tjade::metrics::{mdi, model_gain, GainMatrix};
use tjade::simlab::{
    asv_diag, asv_offdiag, asv_profile, haar_orthogonal, run_experiment, ExperimentConfig, FitStatus,
    MixingKind, SettingSpec, Summary,
};
use tjade::{Matrix, Method};

const SEED: u64 = 2017;

fn report(id: u32, title: &str, pass: bool, detail: &str, start: Instant) {
    let line = format!(
        "[{}] criterion {id}: {title} ({detail}; {:.1}s)\n",
        if pass { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
    assert!(pass, "criterion {id} failed: {detail}");
}

// ---------------------------------------------------------------- 1

/// `X ⊙_{-m} X` by enumerating every pair of elements.
fn literal_contraction(dims: &[usize], x: &[f64], m0: usize) -> Vec<Vec<f64>> {
    let p = dims[m0];
    let len: usize = dims.iter().product();
    let multi = |mut k: usize| -> Vec<usize> {
        dims.iter()
            .map(|&d| {
                let i = k % d;
                k /= d;
                i
            })
            .collect()
    };
    let mut s = vec![vec![0.0; p]; p];
    for a in 0..len {
        let ia = multi(a);
        for b in 0..len {
            let ib = multi(b);
            let same_rest = (0..dims.len()).all(|t| t == m0 || ia[t] == ib[t]);
            if same_rest {
                s[ia[m0]][ib[m0]] += x[a] * x[b];
            }
        }
    }
    s
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let p = a.len();
    let mut c = vec![vec![0.0; p]; p];
    for i in 0..p {
        for j in 0..p {
            for k in 0..p {
                c[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    c
}

/// `Ĉ^{ij}` straight from its definition: `B̂^{ij} − Ξ̂ (D) Ξ̂ᵀ` with
/// `D = δ_ij ρ I + E^{ij} + E^{ji}` (variant 1) or `δ_ij I + ρ E^{ij} + E^{ji}` (variant 2).
fn literal_cumulants(std: &Sample, m0: usize, c: u8) -> Vec<Vec<Vec<Vec<f64>>>> {
    let dims = std.dims();
    let p = dims[m0];
    let rho = (dims.iter().product::<usize>() / p) as f64;
    let n = std.n() as f64;
    let ss: Vec<Vec<Vec<f64>>> = std.observations().map(|x| literal_contraction(dims, x, m0)).collect();
    let mut xi = vec![vec![0.0; p]; p];
    for s in &ss {
        for k in 0..p {
            for l in 0..p {
                xi[k][l] += s[k][l] / (n * rho);
            }
        }
    }
    let mut out = vec![vec![vec![vec![0.0; p]; p]; p]; p];
    for i in 0..p {
        for j in 0..p {
            let mut e_ij = vec![vec![0.0; p]; p];
            e_ij[i][j] = 1.0;
            let mut b = vec![vec![0.0; p]; p];
            for s in &ss {
                let term = if c == 1 {
                    s.iter().map(|row| row.iter().map(|v| s[i][j] * v).collect()).collect::<Vec<Vec<f64>>>()
                } else {
                    mat_mul(&mat_mul(s, &e_ij), s)
                };
                for k in 0..p {
                    for l in 0..p {
                        b[k][l] += term[k][l] / (n * rho);
                    }
                }
            }
            let mut d = vec![vec![0.0; p]; p];
            let delta = if i == j { 1.0 } else { 0.0 };
            for k in 0..p {
                d[k][k] += if c == 1 { delta * rho } else { delta };
            }
            d[i][j] += if c == 1 { 1.0 } else { rho };
            d[j][i] += 1.0;
            let xt: Vec<Vec<f64>> = (0..p).map(|k| (0..p).map(|l| xi[l][k]).collect()).collect();
            let sub = mat_mul(&mat_mul(&xi, &d), &xt);
            for k in 0..p {
                for l in 0..p {
                    out[i][j][k][l] = b[k][l] - sub[k][l];
                }
            }
        }
    }
    out
}

#[test]
fn criterion_01_cumulant_oracle() {
    let start = Instant::now();
    let shapes: [&[usize]; 7] = [&[3], &[2, 2], &[3, 2], &[2, 3], &[3, 3], &[2, 3, 2], &[3, 3, 2]];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for t in 0..50 {
        let dims = shapes[t % shapes.len()].to_vec();
        let max_p = *dims.iter().max().unwrap();
        let n = rng.random_range(max_p + 1..=8);
        let len: usize = dims.iter().product();
        let data: Vec<f64> = (0..n * len)
            .map(|_| {
                let z: f64 = rng.sample(StandardNormal);
                z * z * z.signum() + 0.3
            })
            .collect();
        let sample = Sample::new(dims.clone(), data).unwrap();
        let (centered, _) = center(&sample);
        let (std, _) = standardize(&centered).unwrap();
        for m0 in 0..dims.len() {
            for (c, variant) in [(1u8, Variant::One), (2u8, Variant::Two)] {
                let fast = cumulant_set(&std, m0 + 1, variant).unwrap();
                let slow = literal_cumulants(&std, m0, c);
                let p = dims[m0];
                for i in 0..p {
                    for j in 0..p {
                        let cm = fast.get(i, j);
                        for k in 0..p {
                            for l in 0..p {
                                worst = worst.max((cm[(k, l)] - slow[i][j][k][l]).abs());
                            }
                        }
                    }
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        1,
        "optimized cumulant matrices match the literal definition",
        worst <= 1e-12 && secs < 10.0,
        &format!("max abs diff {worst:.2e}, limit 1e-12, {secs:.2}s of 10s"),
        start,
    );
}

// ---------------------------------------------------------------- 2

#[test]
fn criterion_02_population_structure() {
    let start = Instant::now();
    let n = 100_000;
    let setting = SettingSpec::matrix_study();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let z = setting.draw(n, &mut rng).unwrap();
    let (centered, _) = center(&z);
    let (std, _) = standardize(&centered).unwrap();
    let prof = asv_profile(&setting).unwrap();
    let limit = 5.0 / (n as f64).sqrt();
    let mut worst = 0.0f64;
    let mut per = Vec::new();
    for m in 1..=2 {
        let kappa = &prof.mode(m).kappa;
        for variant in [Variant::One, Variant::Two] {
            let set = cumulant_set(&std, m, variant).unwrap();
            let p = set.p;
            let mut dev = 0.0f64;
            for i in 0..p {
                for j in 0..p {
                    let c = set.get(i, j);
                    for k in 0..p {
                        for l in 0..p {
                            let target = if i == j && k == i && l == i { kappa[i] } else { 0.0 };
                            dev = dev.max((c[(k, l)] - target).abs());
                        }
                    }
                }
            }
            per.push(format!("m{m}/c{}={dev:.4}", variant.index()));
            worst = worst.max(dev);
        }
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        2,
        "sample cumulant matrices approach their diagonal limits",
        worst < limit && secs < 120.0,
        &format!("max deviation {worst:.4} vs 5/sqrt(n) = {limit:.4} [{}]", per.join(", ")),
        start,
    );
}

// ---------------------------------------------------------------- 3

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..=p.len() {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// `(p−1)^{-1/2} min ‖C G − I‖_F` over every permutation, with each row of
/// `C` holding its least-squares scale.
fn brute_force_mdi(g: &Matrix) -> f64 {
    let p = g.rows();
    let mut best = f64::INFINITY;
    for perm in permutations(p) {
        // Row i of C picks row perm[i] of G.
        let mut c = Matrix::zeros(p, p);
        for i in 0..p {
            let k = perm[i];
            let norm_sq: f64 = (0..p).map(|j| g[(k, j)] * g[(k, j)]).sum();
            c[(i, k)] = g[(k, i)] / norm_sq;
        }
        let r = c.matmul(g).unwrap().sub(&Matrix::identity(p)).unwrap();
        best = best.min(r.frobenius_sq());
    }
    (best / (p as f64 - 1.0)).sqrt()
}

#[test]
fn criterion_03_mdi_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    let mut exact_zero = true;
    for t in 0..1000 {
        let p = 2 + t % 5;
        let g = Matrix::from_fn(p, p, |_, _| rng.sample::<f64, _>(StandardNormal));
        let lib = mdi(&GainMatrix::new(g.clone()).unwrap()).unwrap();
        worst = worst.max((lib - brute_force_mdi(&g)).abs());

        let mut perm: Vec<usize> = (0..p).collect();
        for i in (1..p).rev() {
            perm.swap(i, rng.random_range(0..=i));
        }
        let mut sp = Matrix::zeros(p, p);
        for (i, &j) in perm.iter().enumerate() {
            let sign = if rng.random::<bool>() { 1.0 } else { -1.0 };
            sp[(i, j)] = sign * rng.random_range(0.1..10.0);
        }
        exact_zero &= mdi(&GainMatrix::new(sp).unwrap()).unwrap() == 0.0;
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        3,
        "assignment-based index equals brute force",
        worst <= 1e-12 && exact_zero && secs < 30.0,
        &format!("max abs diff {worst:.2e}, scaled permutations exactly zero: {exact_zero}"),
        start,
    );
}

// ---------------------------------------------------------------- 4

fn count_inversions(summary: &Summary, setting: &str, mixing: MixingKind, method: Method, ns: &[usize]) -> usize {
    let means: Vec<f64> = ns.iter().map(|&n| summary.get(setting, mixing, method, n).unwrap().mean_mdi).collect();
    means.windows(2).filter(|w| w[1] > w[0]).count()
}

#[test]
fn criterion_04_matrix_study() {
    let start = Instant::now();
    let ns = [1000, 4000, 8000];
    let cfg = ExperimentConfig {
        setting: tjade::simlab::OneOrMany::One(tjade::simlab::SettingRef::Name("matrix".into())),
        mixing: vec![MixingKind::Orthogonal, MixingKind::Gaussian, MixingKind::Uniform],
        methods: Method::ALL.to_vec(),
        ns: ns.to_vec(),
        reps: 100,
        seed: SEED,
        c: 1,
        timing: false,
    };
    let out = run_experiment(&cfg).unwrap();
    let s = &out.summary;
    let mut ok = true;
    let mut notes = Vec::new();
    for mix in &cfg.mixing {
        let t = |m: Method| s.get("matrix", *mix, m, 8000).unwrap().mean_tmdi;
        let (a, b, c, d) = (t(Method::Tjade), t(Method::Vjade), t(Method::Tfobi), t(Method::Vfobi));
        let ordered = a < b && b < c && c < d;
        ok &= ordered;
        notes.push(format!("{mix}: {a:.0}<{b:.0}<{c:.0}<{d:.0} {}", if ordered { "ok" } else { "NO" }));
    }
    for m in [Method::Vjade, Method::Vfobi] {
        let vals: Vec<f64> =
            cfg.mixing.iter().map(|mix| s.get("matrix", *mix, m, 8000).unwrap().mean_tmdi).collect();
        let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().cloned().fold(0.0, f64::max);
        let spread = (hi - lo) / lo;
        ok &= spread < 0.10;
        notes.push(format!("{m} spread across mixings {:.2e}", spread));
    }
    let mut inversions = 0;
    for mix in &cfg.mixing {
        for m in Method::ALL {
            inversions += count_inversions(s, "matrix", *mix, m, &ns);
        }
    }
    ok &= inversions <= 1;
    notes.push(format!("MDI inversions in n: {inversions}"));
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 1800.0;
    report(4, "matrix study ordering at n = 8000", ok, &notes.join("; "), start);
}

// ---------------------------------------------------------------- 5

#[test]
fn criterion_05_tensor_settings() {
    let start = Instant::now();
    let ns = [2000, 8000, 16000];
    let names = ["setting1", "setting2", "setting3"];
    let cfg = ExperimentConfig {
        setting: tjade::simlab::OneOrMany::Many(
            names.iter().map(|n| tjade::simlab::SettingRef::Name(n.to_string())).collect(),
        ),
        mixing: vec![MixingKind::Identity],
        methods: Method::ALL.to_vec(),
        ns: ns.to_vec(),
        reps: 100,
        seed: SEED,
        c: 1,
        timing: false,
    };
    let out = run_experiment(&cfg).unwrap();
    let s = &out.summary;
    let id = MixingKind::Identity;
    let mut ok = true;
    let mut notes = Vec::new();
    for name in names {
        let curve: Vec<f64> = ns.iter().map(|&n| s.get(name, id, Method::Tjade, n).unwrap().mean_tmdi).collect();
        let dec = curve.windows(2).all(|w| w[1] < w[0]);
        ok &= dec;
        let raw: Vec<f64> = ns.iter().map(|&n| s.get(name, id, Method::Tjade, n).unwrap().mean_mdi).collect();
        notes.push(format!(
            "{name} tjade tmdi {} {} (raw mdi {})",
            curve.iter().map(|v| format!("{v:.0}")).collect::<Vec<_>>().join(">"),
            if dec { "ok" } else { "NOT decreasing" },
            raw.iter().map(|v| format!("{v:.4}")).collect::<Vec<_>>().join(">"),
        ));
    }
    let tj = s.get("setting3", id, Method::Tjade, 16000).unwrap().mean_tmdi;
    for m in [Method::Tfobi, Method::Vjade, Method::Vfobi] {
        let v = s.get("setting3", id, m, 16000).unwrap().mean_tmdi;
        ok &= v >= 2.0 * tj;
        notes.push(format!("setting3 {m}/tjade = {:.1}", v / tj));
    }
    let vjade_fail: usize = out
        .results
        .iter()
        .filter(|r| r.setting == "setting3" && r.method == Method::Vjade && r.status == FitStatus::NotConverged)
        .count();
    ok &= vjade_fail > 0;
    notes.push(format!("setting3 vjade non-converged: {vjade_fail}"));
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 1800.0;
    report(5, "tensor settings 1-3", ok, &notes.join("; "), start);
}

// ---------------------------------------------------------------- 6

/// Rows of `phi` reordered and signed so that row `k` is the estimate of `e_kᵀ`.
fn align_to_identity(phi: &Matrix) -> Matrix {
    let p = phi.rows();
    let mut out = Matrix::zeros(p, p);
    let mut used = vec![false; p];
    for r in 0..p {
        let row = phi.row(r);
        let k = (0..p).max_by(|&a, &b| row[a].abs().total_cmp(&row[b].abs())).unwrap();
        assert!(!used[k], "ambiguous row alignment");
        used[k] = true;
        let s = row[k].signum();
        for j in 0..p {
            out[(k, j)] = s * row[j];
        }
    }
    out
}

#[test]
fn criterion_06_limiting_variances() {
    let start = Instant::now();
    let (n, reps) = (20_000usize, 1000usize);
    let setting = SettingSpec::matrix_study();
    let prof = asv_profile(&setting).unwrap();
    let dims = setting.dims.clone();
    // Per mode, per (k, l): sum and sum of squares of √n (φ̂ − δ).
    let mut acc: Vec<Vec<(f64, f64)>> = dims.iter().map(|&p| vec![(0.0, 0.0); p * p]).collect();
    for rep in 0..reps {
        let mut rng = tjade::simlab::substream(SEED, "limiting-variance", n, rep, 1);
        let z = setting.draw(n, &mut rng).unwrap();
        let model = tjade_fit(&z, Variant::One).unwrap();
        for (m0, phi) in model.phis.iter().enumerate() {
            let a = align_to_identity(phi);
            let p = dims[m0];
            for k in 0..p {
                for l in 0..p {
                    let target = if k == l { 1.0 } else { 0.0 };
                    let v = (n as f64).sqrt() * (a[(k, l)] - target);
                    let e = &mut acc[m0][k + p * l];
                    e.0 += v;
                    e.1 += v * v;
                }
            }
        }
    }
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut notes = Vec::new();
    for (m0, &p) in dims.iter().enumerate() {
        let kappa = &prof.modes[m0].kappa;
        for k in 0..p {
            for l in 0..p {
                if k != l && (kappa[k].abs() < 1.0 || kappa[l].abs() < 1.0) {
                    continue;
                }
                let (s, ss) = acc[m0][k + p * l];
                let mean = s / reps as f64;
                let var = (ss - reps as f64 * mean * mean) / (reps as f64 - 1.0);
                let theory =
                    if k == l { asv_diag(&prof, m0 + 1, k) } else { asv_offdiag(&prof, m0 + 1, k, l).unwrap() };
                let rel = (var - theory).abs() / theory;
                worst = worst.max(rel);
                if rel >= 0.15 {
                    ok = false;
                    notes.push(format!("mode{} ({},{}) emp {var:.4} vs {theory:.4}", m0 + 1, k + 1, l + 1));
                }
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ok &= secs < 2700.0;
    let detail = if notes.is_empty() {
        format!("worst relative error {worst:.3} (limit 0.15)")
    } else {
        format!("worst relative error {worst:.3}; outside: {}", notes.join(", "))
    };
    report(6, "Monte-Carlo variances match the limiting formulas", ok, &detail, start);
}

// ---------------------------------------------------------------- 7

#[test]
fn criterion_07_variant_equivalence() {
    let start = Instant::now();
    let n = 16_000;
    let setting = SettingSpec::matrix_study();
    let (mut diff, mut base) = (0.0, 0.0);
    for rep in 0..50 {
        let mut rng = tjade::simlab::substream(SEED, "variant-equivalence", n, rep, 1);
        let z = setting.draw(n, &mut rng).unwrap();
        let mixers = MixingKind::Orthogonal.generate(&setting.dims, &mut rng);
        let x = z.multi_mode_product(&mixers).unwrap();
        let d1 = mdi(&model_gain(&tjade_fit(&x, Variant::One).unwrap(), &mixers).unwrap()).unwrap();
        let d2 = mdi(&model_gain(&tjade_fit(&x, Variant::Two).unwrap(), &mixers).unwrap()).unwrap();
        diff += (d1 - d2).abs() / 50.0;
        base += d1 / 50.0;
    }
    let secs = start.elapsed().as_secs_f64();
    report(
        7,
        "both cumulant variants give the same accuracy",
        diff < 0.1 * base && secs < 900.0,
        &format!("mean |MDI1 - MDI2| = {diff:.5}, 0.1 * mean MDI1 = {:.5}", 0.1 * base),
        start,
    );
}

// ---------------------------------------------------------------- 8

#[test]
fn criterion_08_orthogonal_equivariance() {
    let start = Instant::now();
    let setting = SettingSpec::matrix_study();
    let mut worst = 0.0f64;
    for rep in 0..20 {
        let mut rng = tjade::simlab::substream(SEED, "equivariance", 2000, rep, 1);
        let z = setting.draw(2000, &mut rng).unwrap();
        let omega = MixingKind::Gaussian.generate(&setting.dims, &mut rng);
        let x = z.multi_mode_product(&omega).unwrap();
        let v: Vec<Matrix> = setting.dims.iter().map(|&p| haar_orthogonal(p, &mut rng)).collect();
        let xv = x.multi_mode_product(&v).unwrap();
        let old = tjade_fit(&x, Variant::One).unwrap();
        let new = tjade_fit(&xv, Variant::One).unwrap();
        for m0 in 0..setting.dims.len() {
            let g = new.phis[m0].matmul(&v[m0]).unwrap().matmul(&old.phis[m0].inverse().unwrap()).unwrap();
            worst = worst.max(mdi(&GainMatrix::new(g).unwrap()).unwrap());
        }
    }
    report(
        8,
        "orthogonal equivariance in every mode",
        worst < 1e-6,
        &format!("max MDI {worst:.2e}, limit 1e-6"),
        start,
    );
}

// ---------------------------------------------------------------- 9

#[test]
fn criterion_09_vector_reduction() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut all_equal = true;
    for t in 0..20 {
        let p = 2 + t % 5;
        let setting = SettingSpec::new(
            "v",
            vec![p],
            tjade::simlab::Distribution::MATRIX_STUDY[t % 6..t % 6 + p].to_vec(),
        )
        .unwrap();
        let z = setting.draw(500, &mut rng).unwrap();
        let mix = MixingKind::Gaussian.generate(&[p], &mut rng);
        let x = z.multi_mode_product(&mix).unwrap();
        let (a, b) = (tjade_fit(&x, Variant::One).unwrap(), jade_fit(&x).unwrap());
        let (c, d) = (tfobi_fit(&x).unwrap(), fobi_fit(&x).unwrap());
        all_equal &= a.phis == b.phis && a.location == b.location && a.face_kurtosis == b.face_kurtosis;
        all_equal &= c.phis == d.phis && c.location == d.location && c.face_kurtosis == d.face_kurtosis;
    }
    report(9, "one-mode tensors reduce to vector JADE and FOBI", all_equal, "bitwise comparison of 20 samples", start);
}

// ---------------------------------------------------------------- 10

fn semeion_path() -> Option<PathBuf> {
    if let Ok(p) = std::env::var("SEMEION_DATA") {
        return Some(PathBuf::from(p));
    }
    let local = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/data/semeion.data");
    local.exists().then_some(local)
}

/// Lloyd's algorithm from several k-means++ starts; returns the best labelling.
fn kmeans(points: &[[f64; 2]], k: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dist = |a: &[f64; 2], b: &[f64; 2]| (a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2);
    let mut best = (f64::INFINITY, vec![0; points.len()]);
    for _ in 0..25 {
        let mut centers = vec![points[rng.random_range(0..points.len())]];
        while centers.len() < k {
            let d: Vec<f64> = points
                .iter()
                .map(|p| centers.iter().map(|c| dist(p, c)).fold(f64::INFINITY, f64::min))
                .collect();
            let total: f64 = d.iter().sum();
            let mut u = rng.random_range(0.0..total);
            let mut pick = points.len() - 1;
            for (i, di) in d.iter().enumerate() {
                if u < *di {
                    pick = i;
                    break;
                }
                u -= di;
            }
            centers.push(points[pick]);
        }
        let mut labels = vec![0; points.len()];
        for _ in 0..200 {
            let new: Vec<usize> = points
                .iter()
                .map(|p| (0..k).min_by(|&a, &b| dist(p, &centers[a]).total_cmp(&dist(p, &centers[b]))).unwrap())
                .collect();
            let changed = new != labels;
            labels = new;
            for (c, center) in centers.iter_mut().enumerate() {
                let members: Vec<&[f64; 2]> = points.iter().zip(&labels).filter(|(_, &l)| l == c).map(|(p, _)| p).collect();
                if !members.is_empty() {
                    let m = members.len() as f64;
                    *center = [members.iter().map(|p| p[0]).sum::<f64>() / m, members.iter().map(|p| p[1]).sum::<f64>() / m];
                }
            }
            if !changed {
                break;
            }
        }
        let inertia: f64 = points.iter().zip(&labels).map(|(p, &l)| dist(p, &centers[l])).sum();
        if inertia < best.0 {
            best = (inertia, labels);
        }
    }
    best.1
}

/// Best fraction of matching labels over all relabellings of the clusters.
fn agreement(clusters: &[usize], truth: &[usize], k: usize) -> f64 {
    permutations(k)
        .iter()
        .map(|perm| clusters.iter().zip(truth).filter(|(&c, &t)| perm[c] == t).count())
        .max()
        .unwrap() as f64
        / truth.len() as f64
}

#[test]
fn criterion_10_semeion_workflow() {
    let start = Instant::now();
    let Some(path) = semeion_path() else {
        report(
            10,
            "digit images 0/1/7 separate on two components",
            false,
            "semeion.data not found: set SEMEION_DATA or place the file at crates/core/data/semeion.data",
            start,
        );
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let args = ApplyArgs {
        data: path,
        format: DataFormat::Semeion,
        dims: None,
        method: Method::Tjade,
        c: Variant::One,
        digits: Some(vec![0, 1, 7]),
        out_prefix: dir.path().join("semeion"),
    };
    let out = cmd_apply(&args).unwrap();
    let labels = out.labels.clone().unwrap();
    let sizes: Vec<usize> = [0u8, 1, 7].iter().map(|d| labels.iter().filter(|&&l| l == *d).count()).collect();
    let idx = out.lowest_kurtosis(2);
    let points: Vec<[f64; 2]> = out.scores.observations().map(|o| [o[idx[0]], o[idx[1]]]).collect();
    let truth: Vec<usize> = labels.iter().map(|&l| match l { 0 => 0, 1 => 1, _ => 2 }).collect();
    let clusters = kmeans(&points, 3, SEED);
    let agree = agreement(&clusters, &truth, 3);
    let ok = out.scores.n() == 481 && sizes == [161, 162, 158] && agree >= 0.7;
    report(
        10,
        "digit images 0/1/7 separate on two components",
        ok,
        &format!("n = {}, group sizes {sizes:?}, 3-means agreement {agree:.3} (limit 0.7)", out.scores.n()),
        start,
    );
}
