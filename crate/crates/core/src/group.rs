//! Finite groups as explicit multiplication tables with named elements.
//! Construction always runs the full axiom audit; the order cap keeps the
//! cubic associativity check affordable.

use crate::error::{Error, Result};
use crate::fp;

pub const MAX_ORDER: usize = 512;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub order: usize,
    /// Row-major: table[a * order + b] = a * b.
    table: Vec<usize>,
    pub names: Vec<String>,
    inv: Vec<usize>,
    pub identity: usize,
}

impl FiniteGroup {
    pub fn from_table(table: Vec<usize>, names: Vec<String>) -> Result<Self> {
        let n = names.len();
        if n == 0 || table.len() != n * n {
            return Err(Error::NotAGroup("table size".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::TooLarge(format!("order {n} exceeds {MAX_ORDER}")));
        }
        if table.iter().any(|&x| x >= n) {
            return Err(Error::NotAGroup("entry out of range".into()));
        }
        // identity: two-sided
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| table[e * n + a] == a && table[a * n + e] == a))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        let mut inv = vec![usize::MAX; n];
        for a in 0..n {
            let i = (0..n)
                .find(|&b| table[a * n + b] == identity && table[b * n + a] == identity)
                .ok_or_else(|| Error::NotAGroup(format!("no inverse for {}", names[a])))?;
            inv[a] = i;
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a * n + b] * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(FiniteGroup { order: n, table, names, inv, identity })
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn pow(&self, g: usize, k: i64) -> usize {
        let mut base = if k < 0 { self.inv(g) } else { g };
        let mut e = k.unsigned_abs();
        let mut acc = self.identity;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// h g h^{-1}
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(h, g), self.inv(h))
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1usize, |acc, g| {
            let o = self.element_order(g) as u64;
            let a = acc as u64;
            (a / fp::gcd(a, o) * o) as usize
        })
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// Conjugacy classes in discovery order of their minimal element;
    /// each class is sorted ascending, so output is fully deterministic.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for g in 0..self.order {
            if seen[g] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|h| self.conj(g, h)).collect();
            class.sort_unstable();
            class.dedup();
            for &x in &class {
                seen[x] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Index of the class containing each element.
    pub fn class_of(&self, classes: &[Vec<usize>]) -> Vec<usize> {
        let mut byelt = vec![usize::MAX; self.order];
        for (ci, class) in classes.iter().enumerate() {
            for &g in class {
                byelt[g] = ci;
            }
        }
        byelt
    }

    pub fn name(&self, g: usize) -> &str {
        &self.names[g]
    }

    pub fn index_of_name(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Closure of the given elements; embed maps subgroup index -> parent index.
    pub fn subgroup(&self, generators: &[usize]) -> Result<Subgroup> {
        let mut elems = vec![self.identity];
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in generators {
                for y in [self.mul(x, g), self.mul(x, self.inv(g))] {
                    if !elems.contains(&y) {
                        elems.push(y);
                        frontier.push(y);
                    }
                }
            }
        }
        elems.sort_unstable();
        let lookup = |p: usize| elems.binary_search(&p).expect("closed");
        let m = elems.len();
        let mut table = vec![0usize; m * m];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                table[i * m + j] = lookup(self.mul(a, b));
            }
        }
        let names = elems.iter().map(|&p| self.names[p].clone()).collect();
        let h = FiniteGroup::from_table(table, names)?;
        Ok(Subgroup { h, embed: elems })
    }

    /// Check that perm (as images of each element) is an automorphism.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.order {
            return false;
        }
        let mut seen = vec![false; self.order];
        for &x in perm {
            if x >= self.order || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        (0..self.order)
            .all(|a| (0..self.order).all(|b| perm[self.mul(a, b)] == self.mul(perm[a], perm[b])))
    }
}

#[derive(Clone, Debug)]
pub struct Subgroup {
    pub h: FiniteGroup,
    /// embed[i] = index in the ambient group of subgroup element i.
    pub embed: Vec<usize>,
}

impl Subgroup {
    pub fn index_in_parent(&self, parent_order: usize) -> usize {
        parent_order / self.h.order
    }
}

/// C_m with elements g^k.
pub fn make_cyclic(m: usize) -> Result<FiniteGroup> {
    if m == 0 {
        return Err(Error::NotAGroup("order zero".into()));
    }
    let names = (0..m)
        .map(|k| match k {
            0 => "e".to_string(),
            1 => "g".to_string(),
            _ => format!("g^{k}"),
        })
        .collect();
    let mut table = vec![0usize; m * m];
    for a in 0..m {
        for b in 0..m {
            table[a * m + b] = (a + b) % m;
        }
    }
    FiniteGroup::from_table(table, names)
}

/// C_a semidirect C_b, with the generator t of C_b acting on the generator z
/// of C_a by z |-> z^alpha. Requires alpha^b = 1 mod a.
pub fn make_semidirect(a: usize, b: usize, alpha: u64) -> Result<FiniteGroup> {
    if a == 0 || b == 0 {
        return Err(Error::NotAGroup("order zero".into()));
    }
    if fp::gcd(alpha % a as u64, a as u64) != 1 || fp::pow_mod(alpha, b as u64, a as u64) != 1 % a as u64
    {
        return Err(Error::NotHomomorphism);
    }
    let n = a * b;
    if n > MAX_ORDER {
        return Err(Error::TooLarge(format!("order {n} exceeds {MAX_ORDER}")));
    }
    // element (i, j) = z^i t^j, index i + a*j
    let alpha_pow: Vec<u64> = (0..b).map(|j| fp::pow_mod(alpha, j as u64, a as u64)).collect();
    let mut table = vec![0usize; n * n];
    for j1 in 0..b {
        for i1 in 0..a {
            for j2 in 0..b {
                for i2 in 0..a {
                    // z^i1 t^j1 z^i2 t^j2 = z^{i1 + i2*alpha^j1} t^{j1+j2}
                    let i = (i1 as u64 + i2 as u64 * alpha_pow[j1]) % a as u64;
                    let j = (j1 + j2) % b;
                    table[(i1 + a * j1) * n + (i2 + a * j2)] = i as usize + a * j;
                }
            }
        }
    }
    let part = |base: &str, k: usize| match k {
        0 => None,
        1 => Some(base.to_string()),
        _ => Some(format!("{base}^{k}")),
    };
    let names = (0..n)
        .map(|x| {
            let (i, j) = (x % a, x / a);
            match (part("z", i), part("t", j)) {
                (None, None) => "e".to_string(),
                (Some(z), None) => z,
                (None, Some(t)) => t,
                (Some(z), Some(t)) => format!("{z}*{t}"),
            }
        })
        .collect();
    FiniteGroup::from_table(table, names)
}

/// The quaternion group {1, -1, i, -i, j, -j, k, -k}.
pub fn quaternion() -> FiniteGroup {
    // encode q = s * u with sign s in {0,1} (plus, minus) and u in {1,i,j,k}
    let units = ["1", "i", "j", "k"];
    let idx = |sign: usize, u: usize| u * 2 + sign;
    // i*j = k, j*k = i, k*i = j; u*u = -1 for u != 1
    let mul_units = |a: usize, b: usize| -> (usize, usize) {
        match (a, b) {
            (0, x) => (0, x),
            (x, 0) => (0, x),
            (x, y) if x == y => (1, 0),
            (1, 2) => (0, 3),
            (2, 3) => (0, 1),
            (3, 1) => (0, 2),
            (2, 1) => (1, 3),
            (3, 2) => (1, 1),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    let n = 8;
    let mut table = vec![0usize; n * n];
    for ua in 0..4 {
        for sa in 0..2 {
            for ub in 0..4 {
                for sb in 0..2 {
                    let (s, u) = mul_units(ua, ub);
                    table[idx(sa, ua) * n + idx(sb, ub)] = idx((sa + sb + s) % 2, u);
                }
            }
        }
    }
    let names = (0..n)
        .map(|x| {
            let (u, s) = (x / 2, x % 2);
            format!("{}{}", if s == 1 { "-" } else { "" }, units[u])
        })
        .collect();
    FiniteGroup::from_table(table, names).expect("quaternion table is a group")
}

/// Order 24: the quaternion group extended by an order-3 element w with
/// w i w^{-1} = j, w j w^{-1} = k, w k w^{-1} = i.
pub fn binary_tetrahedral() -> FiniteGroup {
    let q8 = quaternion();
    // automorphism alpha of Q8: fixes signs, cycles i -> j -> k -> i
    let alpha: Vec<usize> = (0..8)
        .map(|x| {
            let (u, s) = (x / 2, x % 2);
            let u2 = match u {
                0 => 0,
                1 => 2,
                2 => 3,
                3 => 1,
                _ => unreachable!(),
            };
            u2 * 2 + s
        })
        .collect();
    assert!(q8.is_automorphism(&alpha));
    let apply = |t: usize, q: usize| (0..t).fold(q, |acc, _| alpha[acc]);
    let n = 24;
    // element (q, t) = q * w^t, index q + 8*t; (q1 w^t1)(q2 w^t2) = q1 alpha^t1(q2) w^{t1+t2}
    let mut table = vec![0usize; n * n];
    for t1 in 0..3 {
        for q1 in 0..8 {
            for t2 in 0..3 {
                for q2 in 0..8 {
                    let q = q8.mul(q1, apply(t1, q2));
                    let t = (t1 + t2) % 3;
                    table[(q1 + 8 * t1) * n + (q2 + 8 * t2)] = q + 8 * t;
                }
            }
        }
    }
    let names = (0..n)
        .map(|x| {
            let (q, t) = (x % 8, x / 8);
            let qn = q8.name(q);
            match (qn, t) {
                (_, 0) => qn.to_string(),
                ("1", 1) => "w".to_string(),
                ("1", 2) => "w^2".to_string(),
                (_, 1) => format!("{qn}*w"),
                (_, t) => format!("{qn}*w^{t}"),
            }
        })
        .collect();
    FiniteGroup::from_table(table, names).expect("extension table is a group")
}

/// C_3 semidirect C_4 with t acting by inversion; order 12.
pub fn dicyclic_twelve() -> FiniteGroup {
    make_semidirect(3, 4, 2).expect("inversion has order 2 dividing 4")
}

/// C_p semidirect C_{n^2}, n = p-1, with t acting by z |-> z^e.
/// e must have order n mod p (a primitive root).
pub fn metacyclic_maximal(p: u64, e: u64) -> Result<FiniteGroup> {
    let n = (p - 1) as usize;
    if !fp::is_primitive_root(e, p) {
        return Err(Error::OrderMismatch(format!("{e} is not a primitive root mod {p}")));
    }
    make_semidirect(p as usize, n * n, e)
}
