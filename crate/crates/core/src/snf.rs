//! Smith normal form over Z, Q and Z_(p).

use crate::matrix::Matrix;
use crate::ring::CoeffRing;
use crate::scalar::Scalar;

/// `u · a · v = d` with `u_inv = u⁻¹`; the first `rank` diagonal entries
/// of `d` are non-zero canonical associates with `d_1 | d_2 | …`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
    pub d: Matrix,
    pub rank: usize,
}

impl Snf {
    pub fn diagonal(&self) -> Vec<Scalar> {
        (0..self.rank).map(|i| self.d[(i, i)]).collect()
    }
}

struct State<'a> {
    ring: &'a CoeffRing,
    a: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
}

impl State<'_> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
        self.v_inv.swap_rows(i, j);
    }

    /// `row[dst] += c · row[src]`.
    fn add_row(&mut self, dst: usize, src: usize, c: Scalar) {
        self.a.add_row(dst, src, c);
        self.u.add_row(dst, src, c);
        self.u_inv.add_col(src, dst, -c);
    }

    fn add_col(&mut self, dst: usize, src: usize, c: Scalar) {
        self.a.add_col(dst, src, c);
        self.v.add_col(dst, src, c);
        self.v_inv.add_row(src, dst, -c);
    }

    fn scale_row(&mut self, i: usize, c: Scalar) {
        self.a.scale_row(i, c);
        self.u.scale_row(i, c);
        self.u_inv.scale_col(i, c.recip());
    }

    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(u128, usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a[(i, j)];
                if x.is_zero() {
                    continue;
                }
                let n = self.ring.norm(x);
                if best.is_none_or(|(b, _, _)| n < b) {
                    best = Some((n, i, j));
                    if n == 0 {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Minimal entry restricted to row `t` and column `t`.
    fn min_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (self.ring.norm(self.a[(t, t)]), t, t);
        for i in t + 1..self.a.rows() {
            let x = self.a[(i, t)];
            if !x.is_zero() && self.ring.norm(x) < best.0 {
                best = (self.ring.norm(x), i, t);
            }
        }
        for j in t + 1..self.a.cols() {
            let x = self.a[(t, j)];
            if !x.is_zero() && self.ring.norm(x) < best.0 {
                best = (self.ring.norm(x), t, j);
            }
        }
        (best.1, best.2)
    }

    fn clear_cross(&mut self, t: usize) {
        loop {
            let (pi, pj) = self.min_cross(t);
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            let p = self.a[(t, t)];
            let mut clean = true;
            for i in t + 1..self.a.rows() {
                let x = self.a[(i, t)];
                if x.is_zero() {
                    continue;
                }
                let (q, r) = self.ring.div_rem(x, p);
                self.add_row(i, t, -q);
                clean &= r.is_zero();
            }
            for j in t + 1..self.a.cols() {
                let x = self.a[(t, j)];
                if x.is_zero() {
                    continue;
                }
                let (q, r) = self.ring.div_rem(x, p);
                self.add_col(j, t, -q);
                clean &= r.is_zero();
            }
            if clean {
                return;
            }
        }
    }

    fn non_divisible_row(&self, t: usize) -> Option<usize> {
        let p = self.a[(t, t)];
        for i in t + 1..self.a.rows() {
            for j in t + 1..self.a.cols() {
                if !self.ring.divides(p, self.a[(i, j)]) {
                    return Some(i);
                }
            }
        }
        None
    }
}

/// Smith normal form of `a` over the linear-algebra ring of `ring`.
pub fn smith_normal_form(ring: &CoeffRing, a: &Matrix) -> Snf {
    let ring = ring.la();
    let (m, n) = (a.rows(), a.cols());
    let mut st = State {
        ring: &ring,
        a: a.clone(),
        u: Matrix::identity(m),
        u_inv: Matrix::identity(m),
        v: Matrix::identity(n),
        v_inv: Matrix::identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some((i, j)) = st.min_entry(t) else { break };
        st.swap_rows(t, i);
        st.swap_cols(t, j);
        loop {
            st.clear_cross(t);
            match st.non_divisible_row(t) {
                Some(i) => st.add_row(t, i, Scalar::ONE),
                None => break,
            }
        }
        let (unit, _) = ring.unit_normal(st.a[(t, t)]);
        if !unit.is_one() {
            st.scale_row(t, unit.recip());
        }
        t += 1;
    }
    Snf { u: st.u, u_inv: st.u_inv, v: st.v, v_inv: st.v_inv, d: st.a, rank: t }
}

/// A basis of the kernel of `a` (columns), saturated in the ambient free module.
pub fn kernel_basis(ring: &CoeffRing, a: &Matrix) -> Matrix {
    let s = smith_normal_form(ring, a);
    let idx: Vec<usize> = (s.rank..a.cols()).collect();
    s.v.select_cols(&idx)
}

/// Some `x` with `a · x = b`, if one exists over the ring.
pub fn solve(ring: &CoeffRing, a: &Matrix, b: &Matrix) -> Option<Matrix> {
    assert_eq!(a.rows(), b.rows(), "solve: row mismatch");
    let la = ring.la();
    let s = smith_normal_form(&la, a);
    let ub = s.u.mul(b);
    let mut y = Matrix::zeros(a.cols(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let c = ub[(i, j)];
            if i < s.rank {
                let d = s.d[(i, i)];
                let (q, r) = la.div_rem(c, d);
                if !r.is_zero() {
                    return None;
                }
                y[(i, j)] = q;
            } else if !c.is_zero() {
                return None;
            }
        }
    }
    Some(s.v.mul(&y))
}

pub fn rank(ring: &CoeffRing, a: &Matrix) -> usize {
    smith_normal_form(ring, a).rank
}
