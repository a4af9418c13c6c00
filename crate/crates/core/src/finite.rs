//! Table-driven arithmetic over small finite fields, used by the exhaustive
//! searches. Elements are indices into [`RingSpec::elements`].

use crate::coeff::{RingSpec, Scalar};
use crate::error::{Error, Result};

/// Largest field the table engine accepts.
pub const MAX_TABLE_FIELD: u64 = 256;

pub type Form6 = [u8; 6];
pub type Mat9 = [u8; 9];
pub type Vec4 = [u8; 4];
/// Structure constants, index `(i * 4 + j) * 4 + k`.
pub type Consts = [u8; 64];
/// A 4x4 map, row-major; column j is the image of basis vector j.
pub type Map16 = [u8; 16];

#[derive(Clone, Debug)]
pub struct SmallField {
    ring: RingSpec,
    size: usize,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    elements: Vec<Scalar>,
}

impl SmallField {
    pub fn new(ring: &RingSpec) -> Result<SmallField> {
        if !ring.is_field() {
            return Err(Error::NotAField(ring.to_string()));
        }
        let size = ring.size().ok_or_else(|| Error::NotFinite(ring.to_string()))?;
        if size > MAX_TABLE_FIELD {
            return Err(Error::FieldTooLarge { ring: ring.to_string(), size, limit: MAX_TABLE_FIELD });
        }
        let elements = ring.elements()?;
        let n = elements.len();
        let idx = |s: &Scalar| s.finite_index().expect("finite element") as u8;
        let mut add = vec![0u8; n * n];
        let mut mul = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                add[a * n + b] = idx(&(&elements[a] + &elements[b]));
                mul[a * n + b] = idx(&(&elements[a] * &elements[b]));
            }
        }
        let neg = elements.iter().map(|e| idx(&-e)).collect();
        let inv = elements
            .iter()
            .map(|e| if e.is_zero() { 0 } else { idx(&e.inverse().expect("nonzero")) })
            .collect();
        Ok(SmallField { ring: ring.clone(), size: n, add, mul, neg, inv, elements })
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    /// Inverse of a nonzero element (0 maps to 0).
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    pub fn scalar(&self, a: u8) -> &Scalar {
        &self.elements[a as usize]
    }

    pub fn index(&self, s: &Scalar) -> Result<u8> {
        if s.ring() != &self.ring {
            return Err(Error::RingMismatch { left: s.ring().to_string(), right: self.ring.to_string() });
        }
        Ok(s.finite_index().expect("finite element") as u8)
    }

    pub fn units(&self) -> impl Iterator<Item = u8> {
        1..self.size as u8
    }

    pub fn det3(&self, m: &Mat9) -> u8 {
        let t = |a: u8, b: u8, c: u8| self.mul(a, self.mul(b, c));
        let pos = self.add(self.add(t(m[0], m[4], m[8]), t(m[1], m[5], m[6])), t(m[2], m[3], m[7]));
        let neg = self.add(self.add(t(m[2], m[4], m[6]), t(m[0], m[5], m[7])), t(m[1], m[3], m[8]));
        self.sub(pos, neg)
    }

    pub fn mat3_mul(&self, a: &Mat9, b: &Mat9) -> Mat9 {
        let mut out = [0u8; 9];
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = 0;
                for k in 0..3 {
                    acc = self.add(acc, self.mul(a[i * 3 + k], b[k * 3 + j]));
                }
                out[i * 3 + j] = acc;
            }
        }
        out
    }

    /// Invertible 3x3 matrices in lexicographic order of their row-major entries.
    pub fn gl3(&self) -> Vec<Mat9> {
        let q = self.size;
        let total = q.pow(9);
        let mut out = Vec::new();
        let mut m = [0u8; 9];
        for n in 0..total {
            let mut r = n;
            for slot in m.iter_mut().rev() {
                *slot = (r % q) as u8;
                r /= q;
            }
            if self.det3(&m) != 0 {
                out.push(m);
            }
        }
        out
    }

    pub fn identity3(&self) -> Mat9 {
        [1, 0, 0, 0, 1, 0, 0, 0, 1]
    }

    pub fn eval_form(&self, f: &Form6, x: [u8; 3]) -> u8 {
        let sq = |a: u8| self.mul(a, a);
        let mut acc = self.mul(f[0], sq(x[0]));
        acc = self.add(acc, self.mul(f[1], sq(x[1])));
        acc = self.add(acc, self.mul(f[2], sq(x[2])));
        acc = self.add(acc, self.mul(f[3], self.mul(x[0], x[1])));
        acc = self.add(acc, self.mul(f[4], self.mul(x[0], x[2])));
        self.add(acc, self.mul(f[5], self.mul(x[1], x[2])))
    }

    /// Coefficients of `x -> f(g x)`.
    pub fn pullback_form(&self, f: &Form6, g: &Mat9) -> Form6 {
        let col = |j: usize| [g[j], g[3 + j], g[6 + j]];
        let cols = [col(0), col(1), col(2)];
        let diag = cols.map(|c| self.eval_form(f, c));
        let polar = |a: usize, b: usize| {
            let s = [
                self.add(cols[a][0], cols[b][0]),
                self.add(cols[a][1], cols[b][1]),
                self.add(cols[a][2], cols[b][2]),
            ];
            self.sub(self.sub(self.eval_form(f, s), diag[a]), diag[b])
        };
        [diag[0], diag[1], diag[2], polar(0, 1), polar(0, 2), polar(1, 2)]
    }

    pub fn scale_form(&self, u: u8, f: &Form6) -> Form6 {
        f.map(|c| self.mul(u, c))
    }

    pub fn form_count(&self) -> usize {
        self.size.pow(6)
    }

    pub fn form_index(&self, f: &Form6) -> usize {
        f.iter().fold(0, |acc, &c| acc * self.size + c as usize)
    }

    pub fn form_at(&self, mut n: usize) -> Form6 {
        let mut f = [0u8; 6];
        for slot in f.iter_mut().rev() {
            *slot = (n % self.size) as u8;
            n /= self.size;
        }
        f
    }

    pub fn vec4_at(&self, mut n: usize) -> Vec4 {
        let mut v = [0u8; 4];
        for slot in v.iter_mut().rev() {
            *slot = (n % self.size) as u8;
            n /= self.size;
        }
        v
    }

    pub fn vec4_index(&self, v: &Vec4) -> usize {
        v.iter().fold(0, |acc, &c| acc * self.size + c as usize)
    }

    pub fn algebra_mul(&self, c: &Consts, x: &Vec4, y: &Vec4) -> Vec4 {
        let mut out = [0u8; 4];
        for i in 0..4 {
            if x[i] == 0 {
                continue;
            }
            for j in 0..4 {
                if y[j] == 0 {
                    continue;
                }
                let s = self.mul(x[i], y[j]);
                for (k, slot) in out.iter_mut().enumerate() {
                    *slot = self.add(*slot, self.mul(s, c[(i * 4 + j) * 4 + k]));
                }
            }
        }
        out
    }

    fn apply(&self, h: &Map16, v: &Vec4) -> Vec4 {
        let mut out = [0u8; 4];
        for (i, slot) in out.iter_mut().enumerate() {
            let mut acc = 0;
            for j in 0..4 {
                acc = self.add(acc, self.mul(h[i * 4 + j], v[j]));
            }
            *slot = acc;
        }
        out
    }

    /// Characteristic polynomial of a 4x4 matrix (Berkowitz), lowest degree
    /// coefficients of det(xI - M) excluding the leading 1.
    fn charpoly4(&self, m: &[u8; 16]) -> [u8; 4] {
        let mut p: Vec<u8> = vec![1];
        for r in 0..4 {
            let mut t = vec![1u8, self.neg(m[r * 4 + r])];
            let mut v: Vec<u8> = (0..r).map(|i| m[i * 4 + r]).collect();
            for _ in 0..r {
                let mut dot = 0;
                for (k, &x) in v.iter().enumerate() {
                    dot = self.add(dot, self.mul(m[r * 4 + k], x));
                }
                t.push(self.neg(dot));
                v = (0..r)
                    .map(|i| {
                        let mut acc = 0;
                        for (k, &x) in v.iter().enumerate() {
                            acc = self.add(acc, self.mul(m[i * 4 + k], x));
                        }
                        acc
                    })
                    .collect();
            }
            let mut next = vec![0u8; r + 2];
            for (i, slot) in next.iter_mut().enumerate() {
                for (j, &pj) in p.iter().enumerate().take(i + 1) {
                    *slot = self.add(*slot, self.mul(t[i - j], pj));
                }
            }
            p = next;
        }
        [p[1], p[2], p[3], p[4]]
    }

    /// Isomorphism invariant of an element: characteristic polynomials of
    /// left and right multiplication.
    fn element_signature(&self, c: &Consts, v: &Vec4) -> u64 {
        let mut left = [0u8; 16];
        let mut right = [0u8; 16];
        for j in 0..4 {
            let mut e = [0u8; 4];
            e[j] = 1;
            let l = self.algebra_mul(c, v, &e);
            let r = self.algebra_mul(c, &e, v);
            for i in 0..4 {
                left[i * 4 + j] = l[i];
                right[i * 4 + j] = r[i];
            }
        }
        let a = self.charpoly4(&left);
        let b = self.charpoly4(&right);
        a.iter().chain(&b).fold(0u64, |acc, &x| (acc << 8) | x as u64)
    }

    /// Unit-fixing algebra isomorphisms from `c` to `c2`. Columns are chosen in
    /// order ε1, ε2, ε3, each over candidate vectors in lexicographic order,
    /// pruned by element signatures of all combinations of the chosen columns.
    /// With `first_only`, stops at the first witness.
    pub fn isomorphisms(&self, c: &Consts, c2: &Consts, first_only: bool) -> Vec<Map16> {
        let q = self.size;
        let nvec = q.pow(4);
        let sig_target: Vec<u64> = (0..nvec).map(|n| self.element_signature(c2, &self.vec4_at(n))).collect();
        let sig_source: Vec<u64> = (0..nvec).map(|n| self.element_signature(c, &self.vec4_at(n))).collect();
        let basis: [Vec4; 4] = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        let mut out = Vec::new();
        let mut cols: [Vec4; 4] = [basis[0], [0; 4], [0; 4], [0; 4]];
        self.iso_search(c, c2, &sig_source, &sig_target, 1, &mut cols, first_only, &mut out);
        out
    }

    #[allow(clippy::too_many_arguments)]
    fn iso_search(
        &self,
        c: &Consts,
        c2: &Consts,
        sig_source: &[u64],
        sig_target: &[u64],
        depth: usize,
        cols: &mut [Vec4; 4],
        first_only: bool,
        out: &mut Vec<Map16>,
    ) {
        let q = self.size;
        if depth == 4 {
            let mut h = [0u8; 16];
            for (j, col) in cols.iter().enumerate() {
                for i in 0..4 {
                    h[i * 4 + j] = col[i];
                }
            }
            let b = [h[5], h[6], h[7], h[9], h[10], h[11], h[13], h[14], h[15]];
            if self.det3(&b) == 0 {
                return;
            }
            for i in 1..4 {
                for j in 1..4 {
                    let prod = self.algebra_mul(c2, &cols[i], &cols[j]);
                    let mut e = [0u8; 4];
                    e.copy_from_slice(&c[(i * 4 + j) * 4..(i * 4 + j) * 4 + 4]);
                    if self.apply(&h, &e) != prod {
                        return;
                    }
                }
            }
            out.push(h);
            return;
        }
        for n in 0..q.pow(4) {
            let v = self.vec4_at(n);
            if v[1..].iter().all(|&x| x == 0) {
                continue;
            }
            cols[depth] = v;
            // every nonzero combination whose top coefficient sits at `depth`
            let mut ok = true;
            let combos = q.pow(depth as u32 - 1);
            'combo: for lower in 0..combos {
                let mut coeffs = vec![0u8; depth];
                let mut r = lower;
                for slot in coeffs.iter_mut().take(depth - 1) {
                    *slot = (r % q) as u8;
                    r /= q;
                }
                for top in 1..q as u8 {
                    coeffs[depth - 1] = top;
                    let mut src = [0u8; 4];
                    let mut dst = [0u8; 4];
                    for (k, &a) in coeffs.iter().enumerate() {
                        src[k + 1] = self.add(src[k + 1], a);
                        for i in 0..4 {
                            dst[i] = self.add(dst[i], self.mul(a, cols[k + 1][i]));
                        }
                    }
                    if sig_source[self.vec4_index(&src)] != sig_target[self.vec4_index(&dst)] {
                        ok = false;
                        break 'combo;
                    }
                }
            }
            if ok {
                self.iso_search(c, c2, sig_source, sig_target, depth + 1, cols, first_only, out);
                if first_only && !out.is_empty() {
                    return;
                }
            }
        }
    }

    /// Every unit-fixing invertible map, in column-major lexicographic order.
    pub fn unit_fixing_maps(&self) -> Vec<Map16> {
        let q = self.size;
        let nvec = q.pow(4);
        let mut out = Vec::new();
        for a in 0..nvec {
            for b in 0..nvec {
                for c in 0..nvec {
                    let cols = [self.vec4_at(a), self.vec4_at(b), self.vec4_at(c)];
                    let m = [
                        cols[0][1], cols[1][1], cols[2][1], cols[0][2], cols[1][2], cols[2][2], cols[0][3],
                        cols[1][3], cols[2][3],
                    ];
                    if self.det3(&m) == 0 {
                        continue;
                    }
                    let mut h = [0u8; 16];
                    h[0] = 1;
                    for (j, col) in cols.iter().enumerate() {
                        for i in 0..4 {
                            h[i * 4 + j + 1] = col[i];
                        }
                    }
                    out.push(h);
                }
            }
        }
        out
    }
}

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] { (ra, rb) } else { (rb, ra) };
        self.parent[small] = big;
        self.size[big] += self.size[small];
    }
}
