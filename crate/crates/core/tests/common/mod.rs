//! Reference implementations used as test oracles. They read only the raw
//! head lists from the graph and share no code with the library's dynamics.

#![allow(dead_code, clippy::needless_range_loop)]

use rotorwalk::{RotorConfiguration, RotorSystem, VertexId};

/// Plain-vector copy of a rotor system: `heads[v]` is empty for targets.
#[derive(Debug, Clone)]
pub struct Plain {
    pub heads: Vec<Vec<usize>>,
    pub target: Vec<bool>,
    pub source: usize,
}

impl Plain {
    pub fn of(sys: &RotorSystem) -> Self {
        let g = sys.graph();
        let n = g.vertex_count();
        let mut heads = vec![Vec::new(); n];
        let mut target = vec![false; n];
        for v in g.vertices() {
            if g.is_target(v) {
                target[v.0] = true;
            } else {
                heads[v.0] = g.heads(v).iter().map(|w| w.0).collect();
            }
        }
        Plain {
            heads,
            target,
            source: g.source().0,
        }
    }

    pub fn n(&self) -> usize {
        self.heads.len()
    }

    pub fn deg(&self, v: usize) -> usize {
        self.heads[v].len()
    }

    /// One particle from `start`; `slots` holds 1-based retrospective slots.
    /// Returns the visited path, target included.
    pub fn particle(&self, slots: &mut [usize], start: usize) -> Vec<usize> {
        let mut path = vec![start];
        let mut at = start;
        while !self.target[at] {
            let d = self.deg(at);
            slots[at] = if slots[at] == d { 1 } else { slots[at] + 1 };
            at = self.heads[at][slots[at] - 1];
            path.push(at);
        }
        path
    }

    pub fn antiparticle(&self, slots: &mut [usize], start: usize) -> Vec<usize> {
        let mut path = vec![start];
        let mut at = start;
        while !self.target[at] {
            let next = self.heads[at][slots[at] - 1];
            slots[at] = if slots[at] == 1 {
                self.deg(at)
            } else {
                slots[at] - 1
            };
            at = next;
            path.push(at);
        }
        path
    }

    pub fn hitting(&self, slots: &[usize], n: usize) -> Vec<usize> {
        let mut s = slots.to_vec();
        (0..n)
            .map(|_| *self.particle(&mut s, self.source).last().unwrap())
            .collect()
    }

    /// True when following retrospective arcs from every vertex reaches a target.
    pub fn acyclic(&self, slots: &[usize]) -> bool {
        (0..self.n()).all(|v| {
            let mut at = v;
            for _ in 0..=self.n() {
                if self.target[at] {
                    return true;
                }
                at = self.heads[at][slots[at] - 1];
            }
            false
        })
    }

    /// Topple one unstable vertex at a time, lowest index first.
    pub fn stabilize(&self, counts: &[u64]) -> Vec<u64> {
        let mut c = counts.to_vec();
        loop {
            let Some(v) = (0..self.n()).find(|&v| !self.target[v] && c[v] >= self.deg(v) as u64)
            else {
                return c;
            };
            c[v] -= self.deg(v) as u64;
            for &w in &self.heads[v] {
                if !self.target[w] {
                    c[w] += 1;
                }
            }
        }
    }

    pub fn non_targets(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| !self.target[v]).collect()
    }

    /// Reduced Laplacian over V₀: column v is the effect of toppling v.
    pub fn reduced_laplacian(&self) -> Vec<Vec<i128>> {
        let idx = self.non_targets();
        let pos = |w: usize| idx.iter().position(|&x| x == w);
        let k = idx.len();
        let mut l = vec![vec![0i128; k]; k];
        for (j, &v) in idx.iter().enumerate() {
            l[j][j] += self.deg(v) as i128;
            for &w in &self.heads[v] {
                if let Some(i) = pos(w) {
                    l[i][j] -= 1;
                }
            }
        }
        l
    }

    /// |det L|: the order of the sandpile group and, by the matrix-tree
    /// theorem, the number of spanning forests rooted at the targets.
    pub fn group_order(&self) -> u128 {
        let l = self.reduced_laplacian();
        let k = l.len();
        let mut m: Vec<Vec<Frac>> = l
            .iter()
            .map(|r| r.iter().map(|&x| Frac::int(x)).collect())
            .collect();
        let mut det = Frac::int(1);
        for c in 0..k {
            let p = (c..k)
                .find(|&r| m[r][c].num != 0)
                .expect("reduced Laplacian is nonsingular");
            if p != c {
                m.swap(p, c);
                det = det.neg();
            }
            det = det.mul(m[c][c]);
            for r in c + 1..k {
                let f = m[r][c].div(m[c][c]);
                for j in c..k {
                    m[r][j] = m[r][j].sub(f.mul(m[c][j]));
                }
            }
        }
        assert_eq!(det.den, 1);
        det.num.unsigned_abs()
    }

    /// Order of δ_s in Z^{V₀} / L·Z^{V₀}: the lcm of the denominators of L⁻¹δ_s.
    pub fn order_of_source(&self) -> u64 {
        let idx = self.non_targets();
        let k = idx.len();
        let l = self.reduced_laplacian();
        let s = idx.iter().position(|&x| x == self.source).unwrap();
        let mut m: Vec<Vec<Frac>> = l
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row: Vec<Frac> = r.iter().map(|&x| Frac::int(x)).collect();
                row.push(Frac::int(i128::from(i == s)));
                row
            })
            .collect();
        for c in 0..k {
            let p = (c..k).find(|&r| m[r][c].num != 0).unwrap();
            m.swap(p, c);
            let piv = m[c][c];
            for j in 0..=k {
                m[c][j] = m[c][j].div(piv);
            }
            for r in 0..k {
                if r != c && m[r][c].num != 0 {
                    let f = m[r][c];
                    for j in 0..=k {
                        m[r][j] = m[r][j].sub(f.mul(m[c][j]));
                    }
                }
            }
        }
        (0..k).fold(1i128, |acc, r| lcm(acc, m[r][k].den)) as u64
    }
}

pub fn slots(rho: &RotorConfiguration) -> Vec<usize> {
    rho.slots().to_vec()
}

pub fn ids(path: &[VertexId]) -> Vec<usize> {
    path.iter().map(|v| v.0).collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i128, b: i128) -> i128 {
    a / gcd(a, b) * b
}

#[derive(Debug, Clone, Copy)]
struct Frac {
    num: i128,
    den: i128,
}

impl Frac {
    fn int(x: i128) -> Self {
        Frac { num: x, den: 1 }
    }
    fn norm(num: i128, den: i128) -> Self {
        let g = gcd(num, den).max(1);
        let s = if den < 0 { -1 } else { 1 };
        Frac {
            num: s * num / g,
            den: s * den / g,
        }
    }
    fn neg(self) -> Self {
        Frac {
            num: -self.num,
            den: self.den,
        }
    }
    fn mul(self, o: Self) -> Self {
        Frac::norm(self.num * o.num, self.den * o.den)
    }
    fn div(self, o: Self) -> Self {
        Frac::norm(self.num * o.den, self.den * o.num)
    }
    fn sub(self, o: Self) -> Self {
        Frac::norm(self.num * o.den - o.num * self.den, self.den * o.den)
    }
}
