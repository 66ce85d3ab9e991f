use g0bound_core::numerics::Complex;
use g0bound_core::special::airy::{airy_pair_log_derivative_series, airy_zeros};
use g0bound_core::special::k_order::{k_imaginary_order_scaled, k_order_tau_zeros};
use g0bound_core::special::{
    airy_pair_eval, airy_squared_zeros, k_order_eval, k_order_log_derivative, k_order_zeros, AiryPairModel, KOrderModel,
};
use g0bound_core::zeros::{FunctionModel, ZeroFidelity};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn crel(a: Complex, b: Complex) -> f64 {
    (a - b).norm() / b.norm()
}

#[test]
fn airy_pair_values() {
    let f0 = airy_pair_eval(Complex::new(0.0, 0.0)).unwrap();
    assert!(rel(f0.re, 0.126_044_919_047_370_86) < 1e-14);
    let v = airy_pair_eval(Complex::new(1.0, 0.0)).unwrap();
    assert!(rel(v.re, 0.210_662_224_505_411_69) < 1e-13);
    let z = Complex::from_polar(16.0, std::f64::consts::PI / 3.0);
    let v = airy_pair_eval(z).unwrap();
    assert!(crel(v, Complex::new(2.835_495_613_253_538, -7.856_815_427_986_805)) < 1e-11);
    for k in 0..=50 {
        let x = 0.5 * k as f64;
        let v = airy_pair_eval(Complex::new(x, 0.0)).unwrap();
        assert!(v.im.abs() <= 1e-12 * v.norm());
        assert!(v.re >= f0.re);
    }
    assert!(airy_pair_eval(Complex::new(30.0, 0.0)).is_err());
}

#[test]
fn airy_zero_values() {
    let t = airy_zeros(10).unwrap();
    assert!(rel(t[0], 2.338_107_410_459_767) < 1e-14);
    assert!(rel(t[1], 4.087_949_444_130_970_6) < 1e-14);
    assert!(rel(t[4], 7.944_133_587_120_853) < 1e-13);
    assert!(rel(t[9], 12.828_776_752_865_757) < 1e-13);
    let z = airy_squared_zeros(1000).unwrap();
    assert!(rel(z[0], 5.466_746_262_846_878) < 1e-13);
    assert!(rel(z[1], 16.711_330_657_770_71) < 1e-13);
    assert!(z.windows(2).all(|w| w[0] < w[1]));
    assert!(airy_squared_zeros(1001).is_err());
}

#[test]
fn airy_model_log_derivative_matches_series() {
    let model = AiryPairModel::new(1000, 25.0).unwrap();
    assert!(rel(model.f0(), 0.126_044_919_047_370_86) < 1e-14);
    assert_eq!(model.order_rho0(), 0.75);
    assert!(rel(model.log_derivative(3.0).unwrap(), 0.450_781_903_189_167_8) < 1e-8);
    for x in [0.1, 1.0, 5.0, 20.0] {
        let a = model.log_derivative(x).unwrap();
        let b = airy_pair_log_derivative_series(x).unwrap();
        assert!(rel(a, b) < 1e-8, "x = {x}: {a} vs {b}");
    }
    let z = Complex::new(3.0, 4.0);
    let a = model.value_ratio(z).unwrap();
    let b = model.zeros().product_eval(z).unwrap();
    assert!(crel(a, Complex::new(-0.968_637_661_735_808_7, 4.837_457_009_532_202)) < 1e-10);
    assert!(crel(a, b) < 1e-8, "{a} vs {b}");
    assert!(model.value_ratio(Complex::new(26.0, 0.0)).is_err());
}

#[test]
fn k_order_values() {
    assert!(rel(k_order_eval(1.0, Complex::new(0.0, 0.0)).unwrap().re, 0.421_024_438_240_708_3) < 1e-12);
    assert!(rel(k_order_eval(1.0, Complex::new(1.0, 0.0)).unwrap().re, 0.601_907_230_197_234_6) < 1e-12);
    assert!(rel(k_order_eval(0.5, Complex::new(16.0, 0.0)).unwrap().re, 752.245_097_910_403_9) < 1e-12);
    let v = k_order_eval(1.0, Complex::new(1.0, 1.0)).unwrap();
    assert!(crel(v, Complex::new(0.569_642_498_012_505_1, 0.207_511_247_617_338_96)) < 1e-12);
    let k0 = k_order_eval(1.0, Complex::new(0.0, 0.0)).unwrap().re;
    for x in [0.1, 2.0, 50.0] {
        let v = k_order_eval(1.0, Complex::new(x, 0.0)).unwrap();
        assert_eq!(v.im, 0.0);
        assert!(v.re >= k0);
    }
}

#[test]
fn k_order_log_derivative_values() {
    assert!(rel(k_order_log_derivative(1.0, 1.0).unwrap(), 0.349_741_967_796_886_17) < 1e-11);
    assert!(rel(k_order_log_derivative(1.0, 0.0).unwrap(), 0.365_550_090_605_584_7) < 1e-11);
    assert!(rel(k_order_log_derivative(2.0, 1e4).unwrap(), 0.023_001_319_336_592_6) < 1e-10);
    // finite difference of log K
    let lk = |x: f64| k_order_eval(1.0, Complex::new(x, 0.0)).unwrap().re.ln();
    let h = 1e-5;
    let fd = (lk(1.0 + h) - lk(1.0 - h)) / (2.0 * h);
    assert!(rel(k_order_log_derivative(1.0, 1.0).unwrap(), fd) < 1e-6);
    for a in [0.5, 1.0, 2.0] {
        for x in [0.1, 1.0, 10.0, 1e100] {
            assert!(k_order_log_derivative(a, x).unwrap() > 0.0);
        }
    }
}

#[test]
fn k_order_zero_values() {
    let t = k_order_tau_zeros(1.0, 3, 0.05).unwrap();
    let expected = [2.962_548_534_570_952_3, 4.534_490_718_125_582, 5.879_867_199_675_178_5];
    for (a, b) in t.iter().zip(expected) {
        assert!(rel(*a, b) < 1e-11, "{a} vs {b}");
    }
    let other = k_order_tau_zeros(1.0, 1, 0.033).unwrap();
    assert!(rel(other[0], t[0]) < 1e-8);
    assert!(rel(k_order_tau_zeros(0.5, 1, 0.05).unwrap()[0], 2.101_245_117_609_970_2) < 1e-11);
    assert!(rel(k_order_tau_zeros(2.0, 1, 0.05).unwrap()[0], 4.425_484_223_672_723) < 1e-11);

    let z = k_order_zeros(1.0, 32).unwrap();
    assert!(z.windows(2).all(|w| w[0] < w[1]) && z[0] > 0.0);
    // partial sums stay below the full sum f'/f(0+)
    let full = k_order_log_derivative(1.0, 0.0).unwrap();
    let s8: f64 = z[..8].iter().map(|v| 1.0 / v).sum();
    let s32: f64 = z.iter().map(|v| 1.0 / v).sum();
    assert!(s8 < s32 && s32 < full);
    assert!(full - s32 < 0.5 * (full - s8));
    // the scaled function is O(1) far out
    assert!(k_imaginary_order_scaled(1.0, 100.0).unwrap().abs() > 1e-3);
}

#[test]
fn k_model_contract() {
    let m = KOrderModel::new(1.0, 8).unwrap();
    assert_eq!(m.zero_fidelity(), ZeroFidelity::HeadOnly);
    assert_eq!(m.order_rho0(), 0.5);
    assert!(rel(m.f0(), 0.421_024_438_240_708_3) < 1e-12);
    assert_eq!(m.value_ratio(Complex::new(0.0, 0.0)).unwrap(), Complex::new(1.0, 0.0));
    let v = m.value_ratio(Complex::new(1.0, 0.0)).unwrap();
    assert!(rel(v.re, 0.601_907_230_197_234_6 / 0.421_024_438_240_708_3) < 1e-12);
}
