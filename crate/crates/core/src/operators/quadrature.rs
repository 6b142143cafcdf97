//! Adaptive Gauss–Kronrod (10/21 point) integration of complex-valued
//! functions of a real variable.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Default maximum bisection depth.
pub const MAX_DEPTH: usize = 20;

// Kronrod abscissae on [0, 1]; odd indices are the 10-point Gauss nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995657163025808080735527280689003,
    0.973906528517171720077964012084452,
    0.930157491355708226001207180059508,
    0.865063366688984510732096688423493,
    0.780817726586416897063717578345042,
    0.679409568299024406234327365114874,
    0.562757134668604683339000099272694,
    0.433395394129247190799265943165784,
    0.294392862701460198131126603103866,
    0.148874338981631210884826001129720,
    0.000000000000000000000000000000000,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066671344308688137593568809893332,
    0.149451349150580593145776339657697,
    0.219086362515982043995534934228163,
    0.269266719309996355091226921569469,
    0.295524224714752870173892994651338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011694638867371874278064396062192,
    0.032558162307964727478818972459390,
    0.054755896574351996031381300244580,
    0.075039674810919952767043140916190,
    0.093125454583697605535065465083366,
    0.109387158802297641899210590325805,
    0.123491976262065851077958109831074,
    0.134709217311473325928054001771707,
    0.142775938577060080797094273138717,
    0.147739104901338491374841515972068,
    0.149445554002916905664936468389821,
];

/// Integral estimate with its error bound `|K21 - G10|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

fn gauss_kronrod<F>(f: &F, a: f64, b: f64) -> Result<Estimate>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    for (j, (&x, &wk)) in XGK.iter().zip(&WGK).take(10).enumerate() {
        let dx = half * x;
        let pair = f(center - dx)? + f(center + dx)?;
        kronrod += pair * wk;
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    Ok(Estimate { value: kronrod * half, error: ((kronrod - gauss) * half).norm() })
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`, halving the
/// interval and the tolerance until each piece converges or `max_depth`
/// is reached.
pub fn integrate<F>(f: F, a: f64, b: f64, tol: f64, max_depth: usize) -> Result<Estimate>
where
    F: Fn(f64) -> Result<Complex64>,
{
    let whole = gauss_kronrod(&f, a, b)?;
    refine(&f, a, b, whole, tol, 0, max_depth)
}

fn refine<F>(f: &F, a: f64, b: f64, est: Estimate, tol: f64, depth: usize, max_depth: usize) -> Result<Estimate>
where
    F: Fn(f64) -> Result<Complex64>,
{
    if est.error <= tol {
        return Ok(est);
    }
    if depth >= max_depth {
        return Err(Error::QuadratureNoConverge { achieved: est.error, depth });
    }
    let mid = 0.5 * (a + b);
    let left = gauss_kronrod(f, a, mid)?;
    let right = gauss_kronrod(f, mid, b)?;
    let left = refine(f, a, mid, left, 0.5 * tol, depth + 1, max_depth)?;
    let right = refine(f, mid, b, right, 0.5 * tol, depth + 1, max_depth)?;
    Ok(Estimate { value: left.value + right.value, error: left.error + right.error })
}
