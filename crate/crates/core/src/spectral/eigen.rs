//! Dense real eigenvalues: Householder reduction to upper Hessenberg form
//! followed by the Francis double-shift QR iteration.

use nalgebra::Complex;

use crate::error::{Error, Result};
use crate::Matrix;

const MAX_ITERATIONS_PER_EIGENVALUE: usize = 60;

/// Orthogonally similar upper Hessenberg matrix.
pub fn hessenberg(m: &Matrix) -> Matrix {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "hessenberg needs a square matrix");
    let mut a = m.clone();
    for k in 0..n.saturating_sub(2) {
        let mut v: Vec<f64> = (k + 1..n).map(|i| a[(i, k)]).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let alpha = if v[0] > 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let vnorm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|x| *x /= vnorm);

        // A <- H A
        for j in 0..n {
            let dot: f64 = v.iter().enumerate().map(|(r, vr)| vr * a[(k + 1 + r, j)]).sum();
            for (r, vr) in v.iter().enumerate() {
                a[(k + 1 + r, j)] -= 2.0 * vr * dot;
            }
        }
        // A <- A H
        for i in 0..n {
            let dot: f64 = v.iter().enumerate().map(|(r, vr)| vr * a[(i, k + 1 + r)]).sum();
            for (r, vr) in v.iter().enumerate() {
                a[(i, k + 1 + r)] -= 2.0 * vr * dot;
            }
        }
        for i in k + 2..n {
            a[(i, k)] = 0.0;
        }
    }
    a
}

/// All eigenvalues of a real square matrix, in no particular order.
pub fn eigenvalues(m: &Matrix) -> Result<Vec<Complex<f64>>> {
    let n = m.nrows();
    if n != m.ncols() {
        return Err(Error::NotSquare { rows: n, cols: m.ncols() });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut a = hessenberg(m);
    hqr(&mut a)
}

fn sign(a: f64, b: f64) -> f64 {
    if b >= 0.0 {
        a.abs()
    } else {
        -a.abs()
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (destroys `a`).
fn hqr(a: &mut Matrix) -> Result<Vec<Complex<f64>>> {
    let n = a.nrows();
    let eps = f64::EPSILON;
    let mut wr = vec![Complex::new(0.0, 0.0); n];
    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[(i, j)].abs();
        }
    }

    let mut nn = n as isize - 1;
    let mut t = 0.0;
    while nn >= 0 {
        let mut its = 0;
        loop {
            let nu = nn as usize;
            // Look for a single small subdiagonal element.
            let mut l = nu;
            while l > 0 {
                let mut s = a[(l - 1, l - 1)].abs() + a[(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[(l, l - 1)].abs() <= eps * s {
                    a[(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let mut x = a[(nu, nu)];
            if l == nu {
                wr[nu] = Complex::new(x + t, 0.0);
                nn -= 1;
                break;
            }
            let mut y = a[(nu - 1, nu - 1)];
            let mut w = a[(nu, nu - 1)] * a[(nu - 1, nu)];
            if l == nu - 1 {
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    let z = p + sign(z, p);
                    wr[nu - 1] = Complex::new(x + z, 0.0);
                    wr[nu] = Complex::new(if z != 0.0 { x - w / z } else { x + z }, 0.0);
                } else {
                    wr[nu] = Complex::new(x + p, -z);
                    wr[nu - 1] = Complex::new(x + p, z);
                }
                nn -= 2;
                break;
            }

            if its == MAX_ITERATIONS_PER_EIGENVALUE {
                return Err(Error::NotConverged { what: "Hessenberg QR iteration", iterations: its });
            }
            if its == 10 || its == 20 || its == 40 {
                // Exceptional shift.
                t += x;
                for i in 0..=nu {
                    a[(i, i)] -= x;
                }
                let s = a[(nu, nu - 1)].abs() + a[(nu - 1, nu - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;

            // Two consecutive small subdiagonal elements.
            let mut m = nu - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a[(m, m)];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[(m + 1, m)] + a[(m, m + 1)];
                q = a[(m + 1, m + 1)] - z - rr - ss;
                r = a[(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[(m, m - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[(m - 1, m - 1)].abs() + z.abs() + a[(m + 1, m + 1)].abs());
                if u <= eps * v {
                    break;
                }
                m -= 1;
            }
            for i in m..nu - 1 {
                a[(i + 2, i)] = 0.0;
                if i != m {
                    a[(i + 2, i - 1)] = 0.0;
                }
            }

            // Double QR step on rows l..=nn and columns m..=nn.
            for k in m..nu {
                if k != m {
                    p = a[(k, k - 1)];
                    q = a[(k + 1, k - 1)];
                    r = if k + 1 != nu { a[(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = sign((p * p + q * q + r * r).sqrt(), p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        a[(k, k - 1)] = -a[(k, k - 1)];
                    }
                } else {
                    a[(k, k - 1)] = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                for j in k..=nu {
                    let mut pp = a[(k, j)] + q * a[(k + 1, j)];
                    if k + 1 != nu {
                        pp += r * a[(k + 2, j)];
                        a[(k + 2, j)] -= pp * z;
                    }
                    a[(k + 1, j)] -= pp * y;
                    a[(k, j)] -= pp * x;
                }
                let mmin = nu.min(k + 3);
                for i in l..=mmin {
                    let mut pp = x * a[(i, k)] + y * a[(i, k + 1)];
                    if k + 1 != nu {
                        pp += z * a[(i, k + 2)];
                        a[(i, k + 2)] -= pp * r;
                    }
                    a[(i, k + 1)] -= pp * q;
                    a[(i, k)] -= pp;
                }
            }
            if l + 1 >= nu {
                break;
            }
        }
    }
    Ok(wr)
}

/// Largest eigenvalue modulus; `0` for an empty matrix.
pub fn spectral_radius(m: &Matrix) -> Result<f64> {
    Ok(eigenvalues(m)?.iter().map(|z| z.norm()).fold(0.0, f64::max))
}
