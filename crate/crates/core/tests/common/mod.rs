//! Independent reference computations shared by the integration tests.
//!
//! Nothing here calls into the library's numerics: matrices are plain
//! arrays, Bell kets and Paulis are literal tables, eigenvalues come from the
//! characteristic polynomial, and the bath channel is integrated directly
//! from its master equation.
#![allow(dead_code)]

use qswitch::linalg::{ComplexMatrix, DensityMatrix};
use qswitch::Complex64 as C;
use rand::Rng;

pub type M4 = [[C; 4]; 4];
pub type M2 = [[C; 2]; 2];

const S: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

/// Bell kets in |00>,|01>,|10>,|11> order, indexed by 2j+k.
pub fn bell_ket(ordinal: usize) -> [C; 4] {
    let z = c(0.0, 0.0);
    let p = c(S, 0.0);
    let m = c(-S, 0.0);
    match ordinal {
        0 => [p, z, z, p],
        1 => [p, z, z, m],
        2 => [z, p, p, z],
        3 => [z, p, m, z],
        _ => unreachable!(),
    }
}

/// I, Z, X, Y indexed by 2a+b.
pub fn pauli(ordinal: usize) -> M2 {
    let o = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    match ordinal {
        0 => [[one, o], [o, one]],
        1 => [[one, o], [o, -one]],
        2 => [[o, one], [one, o]],
        3 => [[o, c(0.0, -1.0)], [c(0.0, 1.0), o]],
        _ => unreachable!(),
    }
}

pub fn outer(v: &[C; 4]) -> M4 {
    let mut m = [[c(0.0, 0.0); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = v[i] * v[j].conj();
        }
    }
    m
}

/// `(P (x) I) rho (P (x) I)^dagger`, spelled out as a quadruple sum over
/// basis indices `|a b>`.
pub fn brute_conjugate_first(p: &M2, rho: &M4) -> M4 {
    let mut out = [[c(0.0, 0.0); 4]; 4];
    for a in 0..2 {
        for b in 0..2 {
            for a2 in 0..2 {
                for b2 in 0..2 {
                    let mut acc = c(0.0, 0.0);
                    for x in 0..2 {
                        for x2 in 0..2 {
                            acc += p[a][x] * rho[2 * x + b][2 * x2 + b2] * p[a2][x2].conj();
                        }
                    }
                    out[2 * a + b][2 * a2 + b2] = acc;
                }
            }
        }
    }
    out
}

pub fn to_array4(m: &ComplexMatrix) -> M4 {
    assert_eq!(m.dim(), 4);
    let mut out = [[c(0.0, 0.0); 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = m[(i, j)];
        }
    }
    out
}

pub fn max_diff4(a: &M4, b: &M4) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            d = d.max((a[i][j] - b[i][j]).norm());
        }
    }
    d
}

// ---------- eigenvalues via the characteristic polynomial ----------

fn matmul(a: &[Vec<C>], b: &[Vec<C>]) -> Vec<Vec<C>> {
    let n = a.len();
    let mut out = vec![vec![c(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

/// Coefficients of det(x I - A) = x^n + c[1] x^{n-1} + ... + c[n], by the
/// Faddeev-LeVerrier recursion.
pub fn char_poly(a: &[Vec<C>]) -> Vec<C> {
    let n = a.len();
    let mut coeffs = vec![c(1.0, 0.0)];
    let mut m = vec![vec![c(0.0, 0.0); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{k-1} I
        let mut next = matmul(a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += coeffs[k - 1];
        }
        m = next;
        let am = matmul(a, &m);
        let tr: C = (0..n).map(|i| am[i][i]).sum();
        coeffs.push(-tr / k as f64);
    }
    coeffs
}

fn horner(p: &[f64], x: f64) -> (f64, f64) {
    let mut v = 0.0;
    let mut d = 0.0;
    for &a in p {
        d = d * x + v;
        v = v * x + a;
    }
    (v, d)
}

/// Real roots of a real-rooted monic polynomial, largest first. Newton from
/// an upper bound converges monotonically to the largest root; that root is
/// then divided out.
pub fn real_roots_newton(poly: &[f64]) -> Vec<f64> {
    let mut p = poly.to_vec();
    let mut roots = Vec::new();
    while p.len() > 1 {
        // Cauchy bound
        let bound = 1.0 + p[1..].iter().fold(0.0f64, |m, a| m.max(a.abs()));
        let mut x = bound;
        for _ in 0..10_000 {
            let (v, d) = horner(&p, x);
            if d == 0.0 {
                break;
            }
            let step = v / d;
            x -= step;
            if step.abs() <= 1e-15 * x.abs().max(1.0) {
                break;
            }
        }
        roots.push(x);
        let mut q = Vec::with_capacity(p.len() - 1);
        let mut carry = 0.0;
        for &a in &p[..p.len() - 1] {
            carry = carry * x + a;
            q.push(carry);
        }
        p = q;
    }
    roots
}

pub fn oracle_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let n = m.dim();
    let a: Vec<Vec<C>> = (0..n).map(|i| (0..n).map(|j| m[(i, j)]).collect()).collect();
    let poly: Vec<f64> = char_poly(&a).iter().map(|z| z.re).collect();
    real_roots_newton(&poly)
}

/// Von Neumann entropy in bits from oracle eigenvalues.
pub fn oracle_entropy(m: &ComplexMatrix) -> f64 {
    oracle_eigenvalues(m)
        .into_iter()
        .filter(|&l| l > 1e-14)
        .map(|l| -l * l.log2())
        .sum()
}

// ---------- random inputs ----------

pub fn random_hermitian<R: Rng>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = c(rng.random_range(-1.0..1.0), 0.0);
        for j in i + 1..n {
            let z = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// `G G^dagger / tr`, with G having uniform complex entries. A random number
/// of zero columns makes low-rank states common.
pub fn random_density<R: Rng>(n: usize, rng: &mut R) -> DensityMatrix {
    let rank = rng.random_range(1..=n);
    let g = ComplexMatrix::from_fn(n, |_, j| {
        if j < rank {
            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        } else {
            c(0.0, 0.0)
        }
    });
    let gg = &g * &g.adjoint();
    let tr = gg.trace().re;
    DensityMatrix::new(gg.scale_real(1.0 / tr).hermitian_part()).expect("G G^dagger is a state")
}

// ---------- bath master equation ----------

/// Parameters of the squeezed thermal bath as they enter the master
/// equation, in the |0>-excited convention.
#[derive(Debug, Clone, Copy)]
pub struct Bath {
    pub r: f64,
    pub temperature: f64,
    pub gamma0: f64,
    pub omega: f64,
    pub angle: f64,
}

impl Bath {
    pub fn new(r: f64, temperature: f64, gamma0: f64) -> Self {
        Self {
            r,
            temperature,
            gamma0,
            omega: 1.0,
            angle: 0.0,
        }
    }

    fn coefficients(&self) -> (f64, C) {
        let n_th = if self.temperature == 0.0 {
            0.0
        } else {
            1.0 / ((self.omega / self.temperature).exp() - 1.0)
        };
        let n = n_th * (2.0 * self.r).cosh() + self.r.sinh().powi(2);
        let m = -0.5 * (2.0 * self.r).sinh() * (2.0 * n_th + 1.0);
        (n, C::from_polar(m, self.angle))
    }

    /// d rho / dt for the Lindblad generator with lowering operator
    /// `s = |1><0|`:
    /// `g(N+1) D[s] + g N D[s^dagger] - g M s^dagger rho s^dagger - g M* s rho s`.
    pub fn generator(&self, rho: &M2) -> M2 {
        let (n, m) = self.coefficients();
        let g = self.gamma0;
        let (r00, r01, r10, r11) = (rho[0][0], rho[0][1], rho[1][0], rho[1][1]);
        let d00 = -g * (n + 1.0) * r00 + g * n * r11;
        let d11 = -d00;
        let half = 0.5 * g * (2.0 * n + 1.0);
        let d01 = -half * r01 - g * m * r10;
        let d10 = -half * r10 - g * m.conj() * r01;
        [[d00, d01], [d10, d11]]
    }

    /// Classic RK4 from 0 to `t`.
    pub fn evolve(&self, rho: &M2, t: f64, steps: usize) -> M2 {
        let h = t / steps as f64;
        let mut x = *rho;
        let add = |a: &M2, b: &M2, s: f64| -> M2 {
            let mut o = *a;
            for i in 0..2 {
                for j in 0..2 {
                    o[i][j] += b[i][j] * s;
                }
            }
            o
        };
        for _ in 0..steps {
            let k1 = self.generator(&x);
            let k2 = self.generator(&add(&x, &k1, h / 2.0));
            let k3 = self.generator(&add(&x, &k2, h / 2.0));
            let k4 = self.generator(&add(&x, &k3, h));
            for i in 0..2 {
                for j in 0..2 {
                    x[i][j] += (k1[i][j] + 2.0 * k2[i][j] + 2.0 * k3[i][j] + k4[i][j]) * (h / 6.0);
                }
            }
        }
        x
    }
}

/// Holevo quantity computed only with oracle pieces: the four signal states
/// of a Werner ensemble are the shifted Werner weights on the Bell basis,
/// optionally followed by an arbitrary map on Alice's qubit given as a
/// function on 2x2 matrices (extended linearly to the first factor).
pub fn oracle_holevo(weights: [f64; 4], channel: Option<&dyn Fn(&M2) -> M2>) -> f64 {
    let mut states = Vec::new();
    for code in 0..4 {
        let mut rho = [[c(0.0, 0.0); 4]; 4];
        for (idx, w) in weights.iter().enumerate() {
            // encoding with code (a,b) moves label (j,k) to (j^a, k^b)
            let target = idx ^ code;
            let o = outer(&bell_ket(target));
            for i in 0..4 {
                for j in 0..4 {
                    rho[i][j] += o[i][j] * *w;
                }
            }
        }
        if let Some(f) = channel {
            rho = apply_first(f, &rho);
        }
        states.push(rho);
    }
    let to_mat = |m: &M4| ComplexMatrix::from_fn(4, |i, j| m[i][j]);
    let mut avg = [[c(0.0, 0.0); 4]; 4];
    for s in &states {
        for i in 0..4 {
            for j in 0..4 {
                avg[i][j] += s[i][j] * 0.25;
            }
        }
    }
    let mean_member: f64 = states.iter().map(|s| oracle_entropy(&to_mat(s))).sum::<f64>() / 4.0;
    (oracle_entropy(&to_mat(&avg)) - mean_member).max(0.0)
}

/// Extends a linear map on the first qubit to `rho` on two qubits by acting
/// on each 2x2 block `rho_{(a b),(a' b')}` with fixed `b, b'`.
pub fn apply_first(f: &dyn Fn(&M2) -> M2, rho: &M4) -> M4 {
    let mut out = [[c(0.0, 0.0); 4]; 4];
    for b in 0..2 {
        for b2 in 0..2 {
            let block = [
                [rho[b][b2], rho[b][2 + b2]],
                [rho[2 + b][b2], rho[2 + b][2 + b2]],
            ];
            let img = f(&block);
            for a in 0..2 {
                for a2 in 0..2 {
                    out[2 * a + b][2 * a2 + b2] = img[a][a2];
                }
            }
        }
    }
    out
}

/// Expected accuracy of blind identity pairing: one fixed point on average
/// decodes perfectly, the rest decode at chance.
pub fn collusion_expectation(n: usize) -> f64 {
    0.25 + 0.75 / n as f64
}

/// Uniform draw over the valid SGAD parameter box with `p1 + p2 = 1`.
pub fn random_sgad_params<R: Rng>(rng: &mut R) -> qswitch::channels::SgadParams {
    let p1 = rng.random_range(0.0..=1.0);
    let tau = std::f64::consts::TAU;
    qswitch::channels::SgadParams {
        p1,
        p2: 1.0 - p1,
        alpha: rng.random_range(0.0..=1.0),
        beta: rng.random_range(0.0..=1.0),
        mu: rng.random_range(0.0..=1.0),
        nu: rng.random_range(0.0..=1.0),
        phi: rng.random_range(0.0..tau),
        theta: rng.random_range(0.0..tau),
    }
}
