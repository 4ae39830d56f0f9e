//! Brute-force reference implementations for the verification suites.
//!
//! Everything here recomputes a quantity by a route independent of the
//! library path it checks: dense eigenvalues via Hessenberg reduction and
//! shifted QR (with a characteristic-polynomial fallback for tiny
//! matrices), linear solves via Gaussian elimination, demapping and ML
//! decoding via exhaustive search, and a textbook Gauss-Seidel sweep.
//! These run at small sizes only and exist for tests; nothing in the
//! library depends on them.

use num_complex::Complex;

use crate::coding::ConvCode;
use crate::comms::Constellation;
use crate::linalg::Matrix;

/// Monic characteristic polynomial coefficients `[c1, ..., cn]` of an
/// `n x n` matrix, `p(x) = x^n + c1 x^(n-1) + ... + cn`, by the
/// Faddeev-LeVerrier recurrence. Adequate only for small, well-separated
/// spectra; the QR path in [`eigenvalues`] is the workhorse.
pub fn char_poly(m: &Matrix<f64>) -> Vec<f64> {
    assert!(m.is_square());
    let n = m.rows();
    let mut coeffs = Vec::with_capacity(n);
    let mut mk = m.clone();
    let mut c = -mk.trace();
    coeffs.push(c);
    for k in 2..=n {
        // M_k = M (M_{k-1} + c_{k-1} I)
        let mut shifted = mk.clone();
        for i in 0..n {
            shifted[(i, i)] += c;
        }
        mk = m.matmul(&shifted);
        c = -mk.trace() / k as f64;
        coeffs.push(c);
    }
    coeffs
}

/// All roots of a monic polynomial with real coefficients `[c1, ..., cn]`
/// (layout as in [`char_poly`]) by Durand-Kerner iteration.
pub fn poly_roots(coeffs: &[f64]) -> Vec<Complex<f64>> {
    let n = coeffs.len();
    if n == 0 {
        return Vec::new();
    }
    let eval = |z: Complex<f64>| {
        let mut p = Complex::new(1.0, 0.0);
        for &c in coeffs {
            p = p * z + Complex::new(c, 0.0);
        }
        p
    };
    let base = Complex::new(0.4, 0.9);
    let mut z: Vec<Complex<f64>> = (0..n).map(|k| base.powu(k as u32 + 1)).collect();
    for _ in 0..2000 {
        let mut max_step = 0.0f64;
        for k in 0..n {
            let mut den = Complex::new(1.0, 0.0);
            for j in 0..n {
                if j != k {
                    den *= z[k] - z[j];
                }
            }
            if den.norm() < 1e-300 {
                z[k] += Complex::new(1e-8, 1e-8);
                max_step = f64::MAX;
                continue;
            }
            let step = eval(z[k]) / den;
            z[k] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
        }
        if max_step < 1e-14 {
            break;
        }
    }
    z
}

/// Dense eigenvalues of a general real matrix: Householder reduction to
/// upper Hessenberg, then the implicitly shifted (Francis double-shift) QR
/// iteration, eigenvalues only. For `n <= 4` the characteristic-polynomial
/// route is used instead.
pub fn eigenvalues(m: &Matrix<f64>) -> Vec<Complex<f64>> {
    assert!(m.is_square());
    let n = m.rows();
    if n <= 4 {
        return poly_roots(&char_poly(m));
    }
    let mut h = hessenberg(m);
    hqr(&mut h)
}

/// Exact `max |lambda|`.
pub fn spectral_radius_exact(m: &Matrix<f64>) -> f64 {
    eigenvalues(m).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Householder similarity reduction to upper Hessenberg form.
fn hessenberg(m: &Matrix<f64>) -> Matrix<f64> {
    let n = m.rows();
    let mut a = m.clone();
    let mut v = vec![0.0f64; n];
    for k in 0..n.saturating_sub(2) {
        let mut norm_sq = 0.0;
        for i in (k + 1)..n {
            norm_sq += a[(i, k)] * a[(i, k)];
        }
        if norm_sq == 0.0 {
            continue;
        }
        let mut alpha = norm_sq.sqrt();
        if a[(k + 1, k)] > 0.0 {
            alpha = -alpha;
        }
        v[k + 1] = a[(k + 1, k)] - alpha;
        for i in (k + 2)..n {
            v[i] = a[(i, k)];
        }
        let vtv: f64 = v[(k + 1)..n].iter().map(|x| x * x).sum();
        if vtv == 0.0 {
            continue;
        }
        let beta = 2.0 / vtv;
        // A <- P A with P = I - beta v v^T
        for j in k..n {
            let mut dot = 0.0;
            for i in (k + 1)..n {
                dot += v[i] * a[(i, j)];
            }
            let f = beta * dot;
            for i in (k + 1)..n {
                a[(i, j)] -= f * v[i];
            }
        }
        // A <- A P
        for i in 0..n {
            let mut dot = 0.0;
            for j in (k + 1)..n {
                dot += a[(i, j)] * v[j];
            }
            let f = beta * dot;
            for j in (k + 1)..n {
                a[(i, j)] -= f * v[j];
            }
        }
        a[(k + 1, k)] = alpha;
        for i in (k + 2)..n {
            a[(i, k)] = 0.0;
        }
    }
    a
}

/// Shifted QR eigenvalue iteration on an upper Hessenberg matrix
/// (classic EISPACK-style `hqr`, eigenvalues only; destroys its input).
#[allow(clippy::many_single_char_names)]
fn hqr(a: &mut Matrix<f64>) -> Vec<Complex<f64>> {
    let n = a.rows();
    let mut wr = vec![0.0f64; n];
    let mut wi = vec![0.0f64; n];

    let mut anorm = 0.0f64;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[(i, j)].abs();
        }
    }

    let mut nn = n as isize - 1;
    let mut t = 0.0f64;
    while nn >= 0 {
        let mut its = 0;
        loop {
            // Find the smallest l with a negligible subdiagonal below it.
            let mut l = nn;
            while l >= 1 {
                let (lu, lm) = (l as usize, (l - 1) as usize);
                let mut s = a[(lm, lm)].abs() + a[(lu, lu)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[(lu, lm)].abs() <= f64::EPSILON * s {
                    a[(lu, lm)] = 0.0;
                    break;
                }
                l -= 1;
            }

            let nnu = nn as usize;
            let mut x = a[(nnu, nnu)];
            if l == nn {
                // One real eigenvalue deflated.
                wr[nnu] = x + t;
                wi[nnu] = 0.0;
                nn -= 1;
                break;
            }

            let y = a[(nnu - 1, nnu - 1)];
            let w = a[(nnu, nnu - 1)] * a[(nnu - 1, nnu)];
            if l == nn - 1 {
                // A 2x2 block deflated: real pair or conjugate pair.
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let mut z = q.abs().sqrt();
                x += t;
                if q >= 0.0 {
                    z = p + z.copysign(if p == 0.0 { 1.0 } else { p });
                    wr[nnu - 1] = x + z;
                    wr[nnu] = if z != 0.0 { x - w / z } else { x + z };
                    wi[nnu - 1] = 0.0;
                    wi[nnu] = 0.0;
                } else {
                    wr[nnu - 1] = x + p;
                    wr[nnu] = x + p;
                    wi[nnu] = z;
                    wi[nnu - 1] = -z;
                }
                nn -= 2;
                break;
            }

            // No deflation yet: one implicit double-shift QR step.
            assert!(its < 60, "hqr: too many iterations");
            let mut yy = y;
            let mut ww = w;
            if its > 0 && its % 10 == 0 {
                // Exceptional shift.
                t += x;
                for i in 0..=nnu {
                    a[(i, i)] -= x;
                }
                let s = a[(nnu, nnu - 1)].abs() + a[(nnu - 1, nnu - 2)].abs();
                x = 0.75 * s;
                yy = x;
                ww = -0.4375 * s * s;
            }
            its += 1;

            // Look for two consecutive small subdiagonals.
            let mut m = nn - 2;
            let (mut p, mut q, mut r);
            loop {
                let mu = m as usize;
                let z = a[(mu, mu)];
                let rr = x - z;
                let ss = yy - z;
                p = (rr * ss - ww) / a[(mu + 1, mu)] + a[(mu, mu + 1)];
                q = a[(mu + 1, mu + 1)] - z - rr - ss;
                r = a[(mu + 2, mu + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[(mu, mu - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[(mu - 1, mu - 1)].abs() + z.abs() + a[(mu + 1, mu + 1)].abs());
                if u <= f64::EPSILON * v {
                    break;
                }
                m -= 1;
            }
            let mu = m as usize;
            for i in (mu + 2)..=nnu {
                a[(i, i - 2)] = 0.0;
                if i != mu + 2 {
                    a[(i, i - 3)] = 0.0;
                }
            }

            // Double QR sweep over rows l..nn.
            for k in mu..nnu {
                if k != mu {
                    p = a[(k, k - 1)];
                    q = a[(k + 1, k - 1)];
                    r = if k != nnu - 1 { a[(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s_raw = (p * p + q * q + r * r).sqrt();
                let s = s_raw.copysign(if p == 0.0 { 1.0 } else { p });
                if s == 0.0 {
                    continue;
                }
                if k == mu {
                    if l != m {
                        a[(k, k - 1)] = -a[(k, k - 1)];
                    }
                } else {
                    a[(k, k - 1)] = -s * x;
                }
                p += s;
                x = p / s;
                let y2 = q / s;
                let z2 = r / s;
                q /= p;
                r /= p;
                // Row modification.
                for j in k..=nnu {
                    let mut pj = a[(k, j)] + q * a[(k + 1, j)];
                    if k != nnu - 1 {
                        pj += r * a[(k + 2, j)];
                        a[(k + 2, j)] -= pj * z2;
                    }
                    a[(k + 1, j)] -= pj * y2;
                    a[(k, j)] -= pj * x;
                }
                // Column modification.
                let mmin = nnu.min(k + 3);
                for i in (l as usize)..=mmin {
                    let mut pi = x * a[(i, k)] + y2 * a[(i, k + 1)];
                    if k != nnu - 1 {
                        pi += z2 * a[(i, k + 2)];
                        a[(i, k + 2)] -= pi * r;
                    }
                    a[(i, k + 1)] -= pi * q;
                    a[(i, k)] -= pi;
                }
            }
        }
    }

    wr.into_iter()
        .zip(wi)
        .map(|(re, im)| Complex::new(re, im))
        .collect()
}

/// Solve `A x = b` by Gaussian elimination with partial pivoting. Returns
/// `None` on a (numerically) singular matrix.
pub fn gauss_solve(a: &Matrix<f64>, b: &[f64]) -> Option<Vec<f64>> {
    assert!(a.is_square());
    let n = a.rows();
    assert_eq!(b.len(), n);
    let mut aug = vec![vec![0.0f64; n + 1]; n];
    for r in 0..n {
        for c in 0..n {
            aug[r][c] = a[(r, c)];
        }
        aug[r][n] = b[r];
    }
    for col in 0..n {
        let (pivot_row, pivot) = (col..n)
            .map(|r| (r, aug[r][col].abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))?;
        if pivot < 1e-300 {
            return None;
        }
        aug.swap(col, pivot_row);
        for r in (col + 1)..n {
            let f = aug[r][col] / aug[col][col];
            for c in col..=n {
                aug[r][c] -= f * aug[col][c];
            }
        }
    }
    let mut x = vec![0.0f64; n];
    for r in (0..n).rev() {
        let mut acc = aug[r][n];
        for c in (r + 1)..n {
            acc -= aug[r][c] * x[c];
        }
        x[r] = acc / aug[r][r];
    }
    Some(x)
}

/// Full inverse via column-by-column Gaussian elimination.
pub fn gauss_inverse(a: &Matrix<f64>) -> Option<Matrix<f64>> {
    let n = a.rows();
    let mut inv = Matrix::zeros(n, n);
    let mut e = vec![0.0f64; n];
    for col in 0..n {
        e.fill(0.0);
        e[col] = 1.0;
        let x = gauss_solve(a, &e)?;
        for r in 0..n {
            inv[(r, col)] = x[r];
        }
    }
    Some(inv)
}

/// Textbook Gauss-Seidel reference: `x_m = (b_m - sum_{k != m} A_mk x_k) /
/// A_mm` swept in ascending order from the zero vector. Written without the
/// relaxation machinery so SOR at `w = 1` has an independent twin; divisions
/// go through precomputed reciprocals, the same arithmetic contract the
/// detector uses, so outputs are comparable bit-for-bit.
pub fn gauss_seidel_reference(a: &Matrix<f64>, b: &[f64], sweeps: usize) -> Vec<f64> {
    let n = a.rows();
    let recip: Vec<f64> = (0..n).map(|m| 1.0 / a[(m, m)]).collect();
    let mut x = vec![0.0f64; n];
    for _ in 0..sweeps {
        for m in 0..n {
            let mut acc = b[m];
            for k in 0..n {
                if k != m {
                    acc -= a[(m, k)] * x[k];
                }
            }
            x[m] = acc * recip[m];
        }
    }
    x
}

/// Exhaustive nearest-neighbor demap over all constellation points; returns
/// the symbol label of the closest point.
pub fn nearest_point_label(c: &Constellation<f64>, est: Complex<f64>) -> usize {
    let mut best = 0usize;
    let mut best_d = f64::MAX;
    for (label, p) in c.points().iter().enumerate() {
        let d = (est - p).norm_sqr();
        if d < best_d {
            best_d = d;
            best = label;
        }
    }
    best
}

/// Exhaustive max-log LLRs over the full 2-D constellation (no per-axis
/// shortcut): for each bit, min distance-squared among points with the bit
/// set minus min among points with it clear, over the noise variance.
pub fn max_log_llr_exhaustive(
    c: &Constellation<f64>,
    est: Complex<f64>,
    noise_var: f64,
) -> Vec<f64> {
    let bps = c.bits_per_symbol();
    let mut llrs = Vec::with_capacity(bps);
    for j in 0..bps {
        let mut min0 = f64::MAX;
        let mut min1 = f64::MAX;
        for (label, p) in c.points().iter().enumerate() {
            let d = (est - p).norm_sqr();
            if (label >> (bps - 1 - j)) & 1 == 0 {
                min0 = min0.min(d);
            } else {
                min1 = min1.min(d);
            }
        }
        llrs.push((min1 - min0) / noise_var);
    }
    llrs
}

/// Exhaustive maximum-likelihood decoding: enumerate every info word of the
/// given length, encode it, and keep the codeword maximizing the same
/// correlation metric the Viterbi decoder uses. Only feasible for short
/// frames.
pub fn ml_decode_exhaustive(code: &ConvCode, llrs: &[f64], info_len: usize) -> Vec<u8> {
    assert!(
        info_len <= 20,
        "exhaustive search is exponential in info_len"
    );
    assert_eq!(llrs.len(), ConvCode::coded_len(info_len));
    let mut best_bits = vec![0u8; info_len];
    let mut best_metric = f64::NEG_INFINITY;
    for word in 0u64..(1 << info_len) {
        let bits: Vec<u8> = (0..info_len).map(|i| ((word >> i) & 1) as u8).collect();
        let coded = code.encode(&bits);
        let metric: f64 = coded
            .iter()
            .zip(llrs)
            .map(|(&b, &l)| if b == 0 { l } else { -l })
            .sum();
        if metric > best_metric {
            best_metric = metric;
            best_bits = bits;
        }
    }
    best_bits
}
