//! Small dense state-vector and density-matrix reference.
//!
//! Everything here is built from explicit `2^n x 2^n` complex matrices and
//! shares no code with the symplectic machinery, so it can serve as an
//! independent check. Qubit 0 is the leftmost Kronecker factor.

use num_complex::Complex64;

use crate::clifford::Gate;
use crate::pauli::{Pauli, PauliIndex, SignedPauli};

const TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    pub dim: usize,
    pub data: Vec<Complex64>,
}

impl Matrix {
    pub fn zeros(dim: usize) -> Self {
        Matrix { dim, data: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    fn from_rows(rows: &[[Complex64; 2]; 2]) -> Self {
        Matrix { dim: 2, data: rows.iter().flatten().copied().collect() }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.at(r, k);
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..d {
                    out.data[r * d + c] += a * other.at(k, c);
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &Matrix) -> Matrix {
        let d = self.dim * other.dim;
        let mut out = Self::zeros(d);
        for r1 in 0..self.dim {
            for c1 in 0..self.dim {
                let a = self.at(r1, c1);
                for r2 in 0..other.dim {
                    for c2 in 0..other.dim {
                        out.data[(r1 * other.dim + r2) * d + c1 * other.dim + c2] = a * other.at(r2, c2);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        Matrix { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, s: Complex64) -> Matrix {
        Matrix { dim: self.dim, data: self.data.iter().map(|a| a * s).collect() }
    }

    pub fn dagger(&self) -> Matrix {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for r in 0..d {
            for c in 0..d {
                out.data[c * d + r] = self.at(r, c).conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.at(i, i)).sum()
    }

    pub fn approx_eq(&self, other: &Matrix) -> bool {
        self.dim == other.dim && self.data.iter().zip(&other.data).all(|(a, b)| (a - b).norm() < TOL)
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn letter_matrix(p: Pauli) -> Matrix {
    let (o, l, i) = (c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0));
    match p {
        Pauli::I => Matrix::from_rows(&[[l, o], [o, l]]),
        Pauli::X => Matrix::from_rows(&[[o, l], [l, o]]),
        Pauli::Y => Matrix::from_rows(&[[o, -i], [i, o]]),
        Pauli::Z => Matrix::from_rows(&[[l, o], [o, -l]]),
    }
}

fn kron_all(factors: impl IntoIterator<Item = Matrix>) -> Matrix {
    factors.into_iter().fold(Matrix::identity(1), |acc, m| acc.kron(&m))
}

pub fn pauli_matrix(p: PauliIndex) -> Matrix {
    kron_all(p.paulis().into_iter().map(letter_matrix))
}

pub fn signed_matrix(p: SignedPauli) -> Matrix {
    let m = pauli_matrix(p.index);
    if p.negative {
        m.scale(c(-1.0, 0.0))
    } else {
        m
    }
}

/// `i^t` as a complex number.
pub fn i_power(t: u8) -> Complex64 {
    match t % 4 {
        0 => c(1.0, 0.0),
        1 => c(0.0, 1.0),
        2 => c(-1.0, 0.0),
        _ => c(0.0, -1.0),
    }
}

pub fn gate_unitary(n: usize, gate: Gate) -> Matrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let (o, l) = (c(0.0, 0.0), c(1.0, 0.0));
    match gate {
        Gate::H(q) | Gate::S(q) => {
            let u = match gate {
                Gate::H(_) => Matrix::from_rows(&[[c(s, 0.0), c(s, 0.0)], [c(s, 0.0), c(-s, 0.0)]]),
                _ => Matrix::from_rows(&[[l, o], [o, c(0.0, 1.0)]]),
            };
            kron_all((0..n).map(|k| if k == q { u.clone() } else { Matrix::identity(2) }))
        }
        Gate::Cnot(ctl, tgt) => {
            let p0 = Matrix::from_rows(&[[l, o], [o, o]]);
            let p1 = Matrix::from_rows(&[[o, o], [o, l]]);
            let x = letter_matrix(Pauli::X);
            let off = kron_all((0..n).map(|k| if k == ctl { p0.clone() } else { Matrix::identity(2) }));
            let on = kron_all((0..n).map(|k| {
                if k == ctl {
                    p1.clone()
                } else if k == tgt {
                    x.clone()
                } else {
                    Matrix::identity(2)
                }
            }));
            off.add(&on)
        }
    }
}

/// `prod_g (I + g) / 2` for a full set of stabilizer generators.
pub fn density(n: usize, gens: &[SignedPauli]) -> Matrix {
    let id = Matrix::identity(1 << n);
    gens.iter().fold(id.clone(), |acc, g| acc.mul(&id.add(&signed_matrix(*g)).scale(c(0.5, 0.0))))
}

pub fn expectation(rho: &Matrix, m: PauliIndex) -> f64 {
    rho.mul(&pauli_matrix(m)).trace().re
}

/// Unnormalized `Π rho Π` for the projector onto outcome `k` of `m`, and the
/// outcome probability.
pub fn project(rho: &Matrix, m: PauliIndex, k: bool) -> (Matrix, f64) {
    let id = Matrix::identity(rho.dim);
    let sign = if k { -1.0 } else { 1.0 };
    let proj = id.add(&pauli_matrix(m).scale(c(sign, 0.0))).scale(c(0.5, 0.0));
    let post = proj.mul(rho).mul(&proj);
    let prob = post.trace().re;
    (post, prob)
}

pub fn conjugate(u: &Matrix, rho: &Matrix) -> Matrix {
    u.mul(rho).mul(&u.dagger())
}
