//! Independent oracles for the exact routines.

use braid_inverse::basis_solver::{build_balanced, build_unbalanced, BasisKind, ExactMatrix};
use braid_inverse::braid_ring::tau_power;
use braid_inverse::inverse_engine::{q_expand, strengthen_to};
use braid_inverse::kontsevich::residue;
use braid_inverse::power_series::{arcsinh_taylor_coeff, two_sinh_half};
use braid_inverse::regularization::{theta_power, theta_value};
use braid_inverse::scalar::{factorial, int, rat};
use braid_inverse::{BraidSum, Rational, Series};
use num_traits::{One, ToPrimitive, Zero};

/// Multiplicative inverse of a series with nonzero constant term.
fn reciprocal(f: &Series) -> Series {
    let n = f.order();
    let mut g = vec![Rational::zero(); n + 1];
    let f0 = f.coeff(0);
    g[0] = Rational::one() / &f0;
    for k in 1..=n {
        let s = (1..=k).fold(Rational::zero(), |acc, i| acc + f.coeff(i) * &g[k - i]);
        g[k] = -s / &f0;
    }
    Series::new(n, g)
}

/// `[tⁿ] f⁻¹ = (1/n) [z^{n−1}] (z / f(z))ⁿ`.
fn lagrange_inverse(f: &Series) -> Series {
    let n = f.order();
    // f(z)/z through z^{n−1}.
    let shifted = Series::new(n, (1..=n).map(|i| f.coeff(i)).chain([Rational::zero()]));
    let h = reciprocal(&shifted);
    let mut out = vec![Rational::zero(); n + 1];
    for (k, slot) in out.iter_mut().enumerate().skip(1) {
        *slot = h.pow(k as u32).coeff(k - 1) / int(k as i64);
    }
    Series::new(n, out)
}

#[test]
fn lagrange_inversion_agrees_with_revert() {
    for n in [1usize, 5, 12, 17] {
        let f = two_sinh_half(n);
        assert_eq!(lagrange_inverse(&f), f.revert().unwrap(), "order {n}");
    }
    let f = Series::new(9, [int(0), rat(3, 2), int(-1), rat(1, 7), int(0), int(2), rat(-5, 3), int(1), int(0), rat(1, 11)]);
    assert_eq!(lagrange_inverse(&f), f.revert().unwrap());
}

#[test]
fn arcsinh_coefficients_match_lagrange() {
    let inverse = lagrange_inverse(&two_sinh_half(15));
    for k in 0..=7u32 {
        // 2·arcsinh(τ/2) has τ^{2k+1} coefficient 2·a_{2k+1}/2^{2k+1}.
        let expected = arcsinh_taylor_coeff(k) * int(2) / Rational::from_integer(num_bigint::BigInt::from(2).pow(2 * k + 1));
        assert_eq!(inverse.coeff(2 * k as usize + 1), expected);
    }
}

/// Plain Gauss-Jordan on `[A | I]` with rational pivots.
fn gauss_jordan_inverse(m: &ExactMatrix) -> Option<Vec<Vec<Rational>>> {
    let n = m.dim();
    let mut a: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = (0..n).map(|j| m.get(i, j).clone()).collect();
            row.extend((0..n).map(|j| if i == j { int(1) } else { int(0) }));
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|row| row[n..].to_vec()).collect())
}

#[test]
fn bareiss_inverse_matches_gauss_jordan() {
    for r in 0..=10 {
        for m in [build_balanced(r), build_unbalanced(2 * r)] {
            let inverse = m.invert().unwrap();
            let oracle = gauss_jordan_inverse(&m).unwrap();
            let rows: Vec<Vec<Rational>> = inverse.rows().map(<[Rational]>::to_vec).collect();
            assert_eq!(rows, oracle, "dimension {}", m.dim());
            assert_eq!(m.multiply(&inverse).unwrap(), ExactMatrix::identity(m.dim()));
        }
    }
}

fn harmonic(r: i64, power: u32) -> Rational {
    (1..=r).fold(int(0), |acc, k| acc + Rational::new(1.into(), num_bigint::BigInt::from(k).pow(power)))
}

#[test]
fn balanced_entries_are_symmetric_functions_of_inverse_squares() {
    for r in 1..=10i64 {
        let n = build_balanced(r as usize).invert().unwrap();
        assert_eq!(n.entry(1, 3).unwrap(), &-harmonic(r, 2));
        if r >= 2 {
            let h2 = harmonic(r, 2);
            let e2 = (&h2 * &h2 - harmonic(r, 4)) / int(2);
            assert_eq!(n.entry(1, 5).unwrap(), &e2);
        }
    }
}

#[test]
fn unbalanced_entries_are_symmetric_functions_of_reciprocals() {
    for r in 2..=10i64 {
        let n = BasisKind::Unbalanced.build(r as usize, false).invert().unwrap();
        let h1 = harmonic(r, 1);
        let e2 = (&h1 * &h1 - harmonic(r, 2)) / int(2);
        assert_eq!(n.entry(1, 3).unwrap(), &e2, "r = {r}");
    }
}

/// `E_k` from `sech x = Σ E_k x^k / k!`.
fn euler_numbers(n: usize) -> Vec<Rational> {
    let cosh = Series::new(
        n,
        (0..=n).map(|k| {
            if k % 2 == 0 {
                Rational::new(1.into(), factorial(k as u32))
            } else {
                Rational::zero()
            }
        }),
    );
    let sech = reciprocal(&cosh);
    (0..=n)
        .map(|k| sech.coeff(k) * Rational::from_integer(factorial(k as u32)))
        .collect()
}

#[test]
fn theta_values_are_half_euler_numbers() {
    let euler = euler_numbers(12);
    assert_eq!(euler[..7].to_vec(), [1, 0, -1, 0, 5, 0, -61].map(int).to_vec());
    for k in (0..=12).step_by(2) {
        assert_eq!(theta_value(k as u32), &euler[k] / int(2), "k = {k}");
    }
}

#[test]
fn theta_power_matches_direct_series_inside_the_disc() {
    for k in 0..=6u32 {
        let f = theta_power(k);
        for x in [0.3f64, 0.5, 0.9] {
            let exact = f.eval(&Rational::from_float(x).unwrap()).to_f64().unwrap();
            let direct: f64 = (0..4000)
                .map(|m| {
                    let n = (2 * m + 1) as f64;
                    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                    sign * n.powi(k as i32) * x.powf(n)
                })
                .sum();
            assert!((exact - direct).abs() <= 1e-9 * exact.abs().max(1.0), "k={k} x={x}");
        }
    }
}

/// `Σ (−1)ᵐ (2m+1)ᵏ x^{2m+1}` summed directly in f64.
fn abel_partial(k: i32, x: f64) -> f64 {
    let mut total = 0.0;
    let mut m = 0u64;
    loop {
        let n = (2 * m + 1) as f64;
        let term = n.powi(k) * x.powf(n);
        if term < 1e-18 && m > 10 {
            return total;
        }
        total += if m.is_multiple_of(2) { term } else { -term };
        m += 1;
    }
}

#[test]
fn abel_limits_match_theta_values() {
    for k in 0..=4 {
        let h = 4e-3;
        // Richardson: f(1−h) = f(1) + c·h + O(h²).
        let estimate = 2.0 * abel_partial(k, 1.0 - h / 2.0) - abel_partial(k, 1.0 - h);
        let exact = theta_value(k as u32).to_f64().unwrap();
        assert!((estimate - exact).abs() < 1e-3, "k={k}: {estimate} vs {exact}");
    }
}

#[test]
fn theta_powers_have_reflection_parity() {
    for k in 0..=10u32 {
        let f = theta_power(k);
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        for x in [rat(2, 1), rat(3, 7), rat(11, 5)] {
            let inv = Rational::one() / &x;
            assert_eq!(f.eval(&inv), &sign * f.eval(&x), "k={k}");
        }
    }
}

#[test]
fn coherent_products_have_product_residues() {
    let weak = BraidSum::from_terms([(1, int(2)), (0, int(-2))]);
    for a in 0..4u32 {
        for b in 0..4u32 {
            if a + b == 0 {
                continue;
            }
            let x = tau_power(a).multiply(&weak.pow(b));
            let r = residue(&x).unwrap();
            assert_eq!((r.order, r.value), ((a + b) as usize, int(1)));
        }
    }
}

#[test]
fn pair_one_coefficients_are_wallis_products() {
    let lift = strengthen_to(&BraidSum::tau(), 25).unwrap();
    let mut wallis = int(1);
    for k in 0..=12i64 {
        if k > 0 {
            wallis *= rat((2 * k + 1) * (2 * k + 1), 2 * k * (2 * k + 2));
        }
        let expansion = q_expand(&lift.truncate(2 * k as u32 + 1)).unwrap();
        assert_eq!(expansion.coefficient(1), wallis, "order {}", 2 * k + 1);
    }
}
