//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::f64::consts::PI;
use std::time::Instant;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use xyent::chain::{build_correlation_matrix, build_xx_matrix, classify_case, modulus_k, nu_spectrum, ModelParams, NuSpectrum};
use xyent::entropy::*;
use xyent::special::{complete_elliptic_k, modular_lambda, modular_lambda_complement, tau0_from_modulus, ModularPoint};
use xyent::spectrum::*;
use xyent::toeplitz::*;

type Outcome = Result<String, String>;

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn sci(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.3e}")).collect();
    format!("[{}]", parts.join(", "))
}

fn params(g: f64, h: f64) -> ModelParams {
    ModelParams::new(g, h).unwrap()
}

fn xy_nus(g: f64, h: f64, l: usize) -> NuSpectrum {
    nu_spectrum(&build_correlation_matrix(&params(g, h), l, None).unwrap()).unwrap()
}

fn strictly_decreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] < w[0])
}

fn c1_xx_asymptotics() -> Outcome {
    let start = Instant::now();
    let ups = upsilon1();
    let mut errs = Vec::new();
    for l in [50usize, 100, 200, 400] {
        let exact = vn_entropy_exact(&nu_spectrum(&build_xx_matrix(0.0, l).unwrap()).unwrap()).unwrap();
        let asym = xx_entropy_asymptotic(0.0, l).unwrap();
        errs.push((exact.value - asym.value).abs());
    }
    let secs = start.elapsed().as_secs_f64();
    check(
        (ups - 0.495_017_9).abs() <= 1e-6 && errs[1] < 0.01 && strictly_decreasing(&errs) && secs < 30.0,
        format!("Upsilon1 = {ups:.9}, errors {} at L = 50,100,200,400, {secs:.2} s", sci(&errs)),
    )
}

fn c2_xy_limit() -> Outcome {
    let start = Instant::now();
    let p = params(0.5, 1.0);
    let e = modulus_k(&p).unwrap();
    let case = classify_case(&p).unwrap();
    let limit = vn_entropy_limit_series(&e, case.sigma, 1e-16).unwrap().value;
    let errs: Vec<f64> = [10usize, 20, 30, 40]
        .iter()
        .map(|&l| (vn_entropy_exact(&xy_nus(0.5, 1.0, l)).unwrap().value - limit).abs())
        .collect();
    let secs = start.elapsed().as_secs_f64();
    // geometric: every step of 10 shrinks the error by at least the first step's factor, up to 10% slack
    let rho = errs[1] / errs[0];
    let geometric = rho < 1.0 && errs.windows(2).all(|w| w[1] <= 1.1 * rho * w[0] || w[1] < 1e-13);
    check(
        errs[3] < 1e-6 && geometric && secs < 10.0,
        format!("errors {} at L = 10,20,30,40, first-step ratio {rho:.3e}, {secs:.2} s", sci(&errs)),
    )
}

const GRID: [(f64, f64); 6] = [(0.5, 1.0), (0.5, 1.9), (1.0, 3.0), (0.2, 0.5), (1.0, 2.5), (0.8, 1.5)];

fn c3_triple_formula() -> Outcome {
    let mut worst: f64 = 0.0;
    for (g, h) in GRID {
        let p = params(g, h);
        let e = modulus_k(&p).unwrap();
        let case = classify_case(&p).unwrap();
        let s = vn_entropy_limit_series(&e, case.sigma, 1e-16).unwrap().value;
        let i = vn_entropy_limit_integral(&e, case.sigma).unwrap().value;
        let c = vn_entropy_closed(&e, &case).unwrap().value;
        worst = worst.max((s - i).abs()).max((s - c).abs()).max((i - c).abs());
    }
    check(worst < 1e-8, format!("max pairwise difference {worst:.3e} over 6 grid points"))
}

fn c4_renyi_cross() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut bracket_ok = true;
    let mut worst_bracket: f64 = 0.0;
    let mut regimes = [false, false];
    for (g, h) in GRID {
        let p = params(g, h);
        let e = modulus_k(&p).unwrap();
        let case = classify_case(&p).unwrap();
        regimes[case.sigma as usize] = true;
        for a in [0.5, 2.0, 3.0, 10.0] {
            let q = renyi_limit_qproduct(a, &e, &case).unwrap().value;
            let m = renyi_limit_modular(a, &e, &case).unwrap().value;
            worst = worst.max((q - m).abs());
        }
        let vn = vn_entropy_closed(&e, &case).unwrap().value;
        let below = renyi_limit_qproduct(1.0 - 1e-6, &e, &case).unwrap().value;
        let above = renyi_limit_qproduct(1.0 + 1e-6, &e, &case).unwrap().value;
        worst_bracket = worst_bracket.max((below - vn).abs()).max((above - vn).abs());
        bracket_ok &= below >= vn && vn >= above && (below - vn).abs() < 1e-4 && (above - vn).abs() < 1e-4;
    }
    check(
        worst < 1e-10 && bracket_ok && regimes == [true, true],
        format!("max q-product vs modular difference {worst:.3e}; alpha = 1 +- 1e-6 within {worst_bracket:.3e} of von Neumann, bracketing = {bracket_ok}"),
    )
}

fn c5_spectrum() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (g, h) in [(1.0, 3.0), (0.5, 1.0)] {
        let p = params(g, h);
        let e = modulus_k(&p).unwrap();
        let case = classify_case(&p).unwrap();
        let nmax = required_nmax(&p, 0.5, 1e-16).unwrap();
        let spec = density_spectrum(&p, nmax).unwrap();
        let z1 = zeta_function(&spec, 1.0).unwrap();
        let mut dz: f64 = 0.0;
        for a in [0.5, 2.0, 3.0] {
            let z = zeta_function(&spec, a).unwrap();
            let sr = renyi_limit_qproduct(a, &e, &case).unwrap().value;
            dz = dz.max((z - ((1.0 - a) * sr).exp()).abs());
        }
        let top = finite_l_top_eigenvalues(&xy_nus(g, h, 60), 5);
        let ladder = spec.expanded(5);
        let dtop = top.iter().zip(&ladder).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        ok &= (z1 - 1.0).abs() <= 1e-10 && dz < 1e-8 && dtop < 1e-6;
        notes.push(format!(
            "(g,h)=({g},{h}) nmax={nmax} |zeta(1)-1|={:.1e} zeta-vs-Renyi {dz:.1e} top-5 {dtop:.1e}",
            (z1 - 1.0).abs()
        ));
    }
    check(ok, notes.join("; "))
}

/// Entropies from the explicit `2^L` density-matrix spectrum.
fn brute_force(nus: &[f64], alpha: f64) -> f64 {
    let l = nus.len();
    let mut vn = 0.0;
    let mut tr = 0.0;
    for mask in 0u32..(1 << l) {
        let lam: f64 = (0..l)
            .map(|i| if mask >> i & 1 == 1 { (1.0 - nus[i]) / 2.0 } else { (1.0 + nus[i]) / 2.0 })
            .product();
        if lam > 0.0 {
            vn -= lam * lam.ln();
            tr += lam.powf(alpha);
        }
    }
    if alpha == 1.0 {
        vn
    } else {
        tr.ln() / (1.0 - alpha)
    }
}

fn c6_brute_force() -> Outcome {
    let mut worst: f64 = 0.0;
    for (g, h) in [(0.0, 0.0), (0.5, 1.0), (1.0, 3.0)] {
        for l in 1..=8 {
            let nus = xy_nus(g, h, l);
            let vn = vn_entropy_exact(&nus).unwrap().value;
            worst = worst.max((vn - brute_force(&nus.nus, 1.0)).abs());
            for a in [0.5, 2.0] {
                let r = renyi_exact(&nus, a).unwrap().value;
                worst = worst.max((r - brute_force(&nus.nus, a)).abs());
            }
        }
    }
    check(worst < 1e-12, format!("max deviation {worst:.3e} over L <= 8, 3 parameter points"))
}

fn c7_fisher_hartwig() -> Outcome {
    let s = SpectralParameter::real(3.0).unwrap();
    let mut errs = Vec::new();
    let mut path: f64 = 0.0;
    let (f, sings) = xx_fisher_hartwig_data(&s, 0.0).unwrap();
    for l in [16usize, 32, 64, 128] {
        let exact = xx_char_det_from_spectrum(&nu_spectrum(&build_xx_matrix(0.0, l).unwrap()).unwrap().nus, s.lambda);
        let special = xx_char_det_asymptotic(&s, 0.0, l).unwrap();
        let general = fisher_hartwig_asymptotic(&f, &sings, l).unwrap();
        errs.push(special.ratio_minus_one(&exact).norm());
        path = path.max(special.ratio_minus_one(&general).norm());
    }
    check(
        strictly_decreasing(&errs) && errs[3] < 0.05 && path <= 1e-12,
        format!("|asym/exact - 1| = {} at L = 16..128; special vs general path {path:.1e}", sci(&errs)),
    )
}

fn c8_block_theta() -> Outcome {
    let p = params(0.5, 1.0);
    let e = modulus_k(&p).unwrap();
    let case = classify_case(&p).unwrap();
    let s = SpectralParameter::real(2.0).unwrap();
    let exact = xy_char_det_from_spectrum(&xy_nus(0.5, 1.0, 60).nus, s.lambda);
    let asym = xy_block_det_asymptotic(&s, &e, &case, 60, None).unwrap();
    let err = asym.ratio_minus_one(&exact).norm();
    let mut signs = Vec::new();
    for lm in theta_zero_ladder(&e, case.sigma, 3).unwrap().values {
        let f = |x: f64| widom_theta_factors(beta_on_cut(x), e.tau0, case.sigma).unwrap()[0].re;
        signs.push(f(lm - 1e-8) * f(lm + 1e-8) < 0.0);
    }
    check(
        err < 1e-3 && signs.iter().all(|&b| b),
        format!("|D_asym/D_exact - 1| = {err:.3e} at L = 60; sign change at lambda_0..lambda_3: {signs:?}"),
    )
}

fn c9_pair_merge() -> Outcome {
    let p = params(0.5, 1.0);
    let e = modulus_k(&p).unwrap();
    let case = classify_case(&p).unwrap();
    let asc = xy_nus(0.5, 1.0, 60).ascending_abs();
    let ladder = theta_zero_ladder(&e, case.sigma, 3).unwrap().values;
    // nu_j is 1-based; nu_0 does not exist
    let nu = |j: usize| if j == 0 { None } else { Some(asc[j - 1]) };
    let mut worst: f64 = 0.0;
    for (m, lm) in ladder.iter().enumerate() {
        for j in [2 * m, 2 * m + 1] {
            if let Some(v) = nu(j) {
                worst = worst.max((v - lm).abs());
            }
        }
    }
    check(worst < 1e-6, format!("max |nu_2m, nu_2m+1 - lambda_m| = {worst:.3e} for m <= 3"))
}

fn c10_multiplicity_asymptotics() -> Outcome {
    let case = classify_case(&params(1.0, 3.0)).unwrap();
    let a = multiplicities(&case, 500);
    let dev: Vec<f64> = [100usize, 200, 400]
        .iter()
        .map(|&n| (a[n].to_f64().unwrap() / multiplicity_asymptotic(n).unwrap() - 1.0).abs())
        .collect();
    check(
        strictly_decreasing(&dev) && dev[2] < 0.25,
        format!("|a_n/a_n_hat - 1| = {} at n = 100,200,400 (a_500 has {} digits)", sci(&dev), a[500].to_string().len()),
    )
}

fn c11_critical_scaling() -> Outcome {
    let mut res = Vec::new();
    let mut scaled = Vec::new();
    for h in [1.9, 1.99, 1.999] {
        let p = params(1.0, h);
        let e = modulus_k(&p).unwrap();
        let case = classify_case(&p).unwrap();
        let d = vn_entropy_closed(&e, &case).unwrap().value + (2.0 - h).ln() / 6.0 - 4f64.ln() / 3.0;
        let eps = 2.0 - h;
        res.push(d.abs());
        scaled.push(d.abs() / (eps * eps.ln().powi(2)));
    }
    let bounded = scaled.iter().all(|&s| s < 1.0) && scaled[2] <= 2.0 * scaled[0];
    check(
        strictly_decreasing(&res) && bounded,
        format!("|residual| = {}; residual/(|2-h| ln^2|2-h|) = {}", sci(&res), sci(&scaled)),
    )
}

fn c12_special_functions() -> Outcome {
    let k0 = complete_elliptic_k(0.0).unwrap();
    let li = modular_lambda(&ModularPoint::imaginary(1.0).unwrap()).unwrap();
    let mut modular: f64 = 0.0;
    // fixed pseudo-random imaginary points in [0.3, 3]
    let mut state = 0x2545_f491_4f6c_dd1du64;
    for _ in 0..50 {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        let t = 0.3 + 2.7 * (state >> 11) as f64 / (1u64 << 53) as f64;
        let tau = ModularPoint::imaginary(t).unwrap();
        let lam = modular_lambda(&tau).unwrap();
        let inv = modular_lambda(&ModularPoint::imaginary(1.0 / t).unwrap()).unwrap();
        modular = modular.max((inv - (1.0 - lam)).norm());
        let comp = modular_lambda_complement(&tau).unwrap();
        modular = modular.max((comp + lam - 1.0).norm());
        // lambda - 1 taken from the complement, free of cancellation as lambda -> 1
        let shifted = modular_lambda(&ModularPoint::new(Complex64::new(1.0, t)).unwrap()).unwrap();
        modular = modular.max((shifted + lam / comp).norm());
    }
    let mut round: f64 = 0.0;
    for k in [0.1, 0.5, 0.9] {
        let e = tau0_from_modulus(k).unwrap();
        let lam = modular_lambda(&ModularPoint::imaginary(e.tau0).unwrap()).unwrap();
        round = round.max((lam.re - k * k).abs());
    }
    check(
        k0 == PI / 2.0 && (li.re - 0.5).abs() <= 1e-12 && li.im == 0.0 && modular <= 1e-11 && round <= 1e-10,
        format!("K(0) - pi/2 = {:e}; |lambda(i) - 1/2| = {:.1e}; modular identities {modular:.1e}; round trip {round:.1e}", k0 - PI / 2.0, (li.re - 0.5).abs()),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("XX asymptotic entropy", c1_xx_asymptotics),
        ("XY limit convergence", c2_xy_limit),
        ("triple-formula agreement", c3_triple_formula),
        ("Renyi cross-form", c4_renyi_cross),
        ("spectrum consistency", c5_spectrum),
        ("brute-force oracle equivalence", c6_brute_force),
        ("Fisher-Hartwig determinant", c7_fisher_hartwig),
        ("block-theta determinant", c8_block_theta),
        ("eigenvalue pair merging", c9_pair_merge),
        ("multiplicity asymptotics", c10_multiplicity_asymptotics),
        ("critical scaling", c11_critical_scaling),
        ("special functions", c12_special_functions),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        let secs = start.elapsed().as_secs_f64();
        match out {
            Ok(d) => println!("criterion {:>2} PASS  {name}: {d} [{secs:.2} s]", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {d} [{secs:.2} s]", i + 1)
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
