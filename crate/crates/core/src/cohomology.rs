//! Mod-p group cohomology from the inhomogeneous bar complex.
//!
//! Cochains in degree k are functions G^k -> F_p stored densely; the
//! differential is the alternating sum of the k+2 coface maps.  Ranks of the
//! differentials are computed by exact echelon elimination over F_p, with a
//! bitset engine at p = 2 and a byte engine with delayed renormalization at
//! odd p.  Everything downstream (class equality, restriction, transfer,
//! conjugation) reduces to coboundary membership against those echelons.

use crate::error::{Error, Result};
use crate::fp;
use crate::group::{FiniteGroup, Subgroup};

/// Hard cap on |G|^maxdeg: beyond this the dense cochain spaces stop being
/// manageable and the request is refused rather than left to thrash.
pub const SIZE_CAP: usize = 10_000_000;

/// Largest prime the byte engine can store. Mod-p cohomology of groups small
/// enough for the size cap never needs more.
const MAX_PRIME: u64 = 251;

/// A cochain in degree `degree`: one value per tuple in G^degree, indexed
/// little-endian (first tuple slot varies fastest). Values are kept in 0..p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub degree: usize,
    pub values: Vec<u8>,
}

impl Cochain {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Cochain { degree, values: vec![0; dim] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// self - other mod p, degreewise.
    pub fn sub(&self, other: &Cochain, p: u64) -> Result<Cochain> {
        if self.degree != other.degree || self.values.len() != other.values.len() {
            return Err(Error::MixedGroups);
        }
        let p8 = p as u8;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| (a + (p8 - b)) % p8)
            .collect();
        Ok(Cochain { degree: self.degree, values })
    }
}

fn check_prime(p: u64) -> Result<u8> {
    if !fp::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p > MAX_PRIME {
        return Err(Error::TooLarge(format!("prime {p} exceeds byte storage")));
    }
    Ok(p as u8)
}

/// |G|^k, refusing anything past the size cap.
pub fn cochain_dim(g: &FiniteGroup, k: usize) -> Result<usize> {
    let mut dim = 1usize;
    for _ in 0..k {
        dim = dim
            .checked_mul(g.order)
            .filter(|&d| d <= SIZE_CAP)
            .ok_or_else(|| Error::TooLarge(format!("|G|^{k} exceeds {SIZE_CAP}")))?;
    }
    Ok(dim)
}

fn encode(n: usize, tuple: &[usize]) -> usize {
    tuple.iter().rev().fold(0, |acc, &t| acc * n + t)
}

/// Sparse row of the degree-k differential at the tuple y in G^{k+1}:
/// the k+2 faces of y with alternating signs, collisions merged mod p.
fn face_entries(g: &FiniteGroup, p: u8, y: &[usize], out: &mut Vec<(usize, u8)>) {
    let n = g.order;
    let k1 = y.len();
    out.clear();
    let mut face = Vec::with_capacity(k1 - 1);
    for i in 0..=k1 {
        face.clear();
        if i == 0 {
            face.extend_from_slice(&y[1..]);
        } else if i == k1 {
            face.extend_from_slice(&y[..k1 - 1]);
        } else {
            face.extend_from_slice(&y[..i - 1]);
            face.push(g.mul(y[i - 1], y[i]));
            face.extend_from_slice(&y[i + 1..]);
        }
        let idx = encode(n, &face);
        let coeff = if i % 2 == 0 { 1 } else { p - 1 };
        match out.iter_mut().find(|(j, _)| *j == idx) {
            Some((_, c)) => *c = (*c + coeff) % p,
            None => out.push((idx, coeff)),
        }
    }
    out.retain(|&(_, c)| c != 0);
}

/// Sparse coboundary d(e_x) of the basis cochain at x in G^{k-1}, as a vector
/// over G^k: all tuples having x among their faces, with the matching signs.
fn coboundary_support(g: &FiniteGroup, p: u8, x: &[usize]) -> Vec<(usize, u8)> {
    let n = g.order;
    let k = x.len() + 1;
    let mut acc: std::collections::BTreeMap<usize, u8> = std::collections::BTreeMap::new();
    let mut add = |idx: usize, c: u8| {
        let e = acc.entry(idx).or_insert(0);
        *e = (*e + c) % p;
    };
    let base = encode(n, x);
    // (t, x): first face recovers x.
    for t in 0..n {
        add(t + n * base, 1);
    }
    // Split slot i-1 of x into (a, a^-1 x_{i-1}): the i-th face merges it back.
    let mut y = Vec::with_capacity(k);
    for i in 1..k {
        let coeff = if i % 2 == 0 { 1 } else { p - 1 };
        for a in 0..n {
            let b = g.mul(g.inv(a), x[i - 1]);
            y.clear();
            y.extend_from_slice(&x[..i - 1]);
            y.push(a);
            y.push(b);
            y.extend_from_slice(&x[i..]);
            add(encode(n, &y), coeff);
        }
    }
    // (x, t): last face recovers x.
    let coeff = if k % 2 == 0 { 1 } else { p - 1 };
    let stride = n.pow((k - 1) as u32);
    for t in 0..n {
        add(base + t * stride, coeff);
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// Apply the differential to a sparse degree-(k) cochain, returning a sparse
/// degree-(k+1) result. Used by the d.d = 0 audit.
fn d_of_sparse(g: &FiniteGroup, p: u8, entries: &[(usize, u8)], k: usize) -> Vec<(usize, u8)> {
    let n = g.order;
    let mut acc: std::collections::BTreeMap<usize, u8> = std::collections::BTreeMap::new();
    let mut x = vec![0usize; k];
    for &(idx, v) in entries {
        let mut rest = idx;
        for slot in x.iter_mut() {
            *slot = rest % n;
            rest /= n;
        }
        for (j, c) in coboundary_support(g, p, &x) {
            let e = acc.entry(j).or_insert(0);
            *e = (*e + (v as u16 * c as u16 % p as u16) as u8) % p;
        }
    }
    acc.into_iter().filter(|&(_, c)| c != 0).collect()
}

/// Dense differential: phi in C^k gives d(phi) in C^{k+1}.
pub fn differential(g: &FiniteGroup, p: u64, phi: &Cochain) -> Result<Cochain> {
    let p8 = check_prime(p)?;
    let n = g.order;
    let dim_in = cochain_dim(g, phi.degree)?;
    if phi.values.len() != dim_in {
        return Err(Error::MixedGroups);
    }
    let k1 = phi.degree + 1;
    let dim_out = cochain_dim(g, k1)?;
    let mut out = vec![0u8; dim_out];
    let mut y = vec![0usize; k1];
    let mut faces = Vec::new();
    for (idx, slot) in out.iter_mut().enumerate() {
        let mut rest = idx;
        for t in y.iter_mut() {
            *t = rest % n;
            rest /= n;
        }
        face_entries(g, p8, &y, &mut faces);
        let mut acc = 0u32;
        for &(j, c) in &faces {
            acc += phi.values[j] as u32 * c as u32;
        }
        *slot = (acc % p as u32) as u8;
    }
    Ok(Cochain { degree: k1, values: out })
}

// ---------------------------------------------------------------------------
// Echelon engines.  Both keep pivot rows normalized (leading entry 1), stored
// from their leading column with trailing zeros trimmed, and a direct-address
// pivot table, so insertion order is the only source of pivot choice and the
// result is deterministic.

struct RowF2 {
    lead: usize,
    start_word: usize,
    data: Vec<u64>,
}

struct EchF2 {
    width: usize,
    words: usize,
    rows: Vec<RowF2>,
    pivot_at: Vec<u32>, // col -> row index + 1
    buf: Vec<u64>,
}

impl EchF2 {
    fn new(width: usize) -> Self {
        let words = width.div_ceil(64);
        EchF2 { width, words, rows: Vec::new(), pivot_at: vec![0; width], buf: vec![0; words] }
    }

    fn load_sparse(&mut self, entries: &[(usize, u8)]) {
        self.buf.fill(0);
        for &(col, v) in entries {
            if v & 1 == 1 {
                self.buf[col / 64] ^= 1 << (col % 64);
            }
        }
    }

    fn load_bytes(&mut self, row: &[u8]) {
        self.buf.fill(0);
        for (col, &v) in row.iter().enumerate() {
            if v & 1 == 1 {
                self.buf[col / 64] ^= 1 << (col % 64);
            }
        }
    }

    /// Reduce the working buffer against the pivots; the leading column
    /// survives iff the buffer is outside the current row space.
    fn reduce_buf(&mut self) -> Option<usize> {
        let mut buf = std::mem::take(&mut self.buf);
        let mut w = 0;
        let mut lead = None;
        while w < self.words {
            if buf[w] == 0 {
                w += 1;
                continue;
            }
            let col = w * 64 + buf[w].trailing_zeros() as usize;
            let r = self.pivot_at[col];
            if r == 0 {
                lead = Some(col);
                break;
            }
            let row = &self.rows[(r - 1) as usize];
            for (i, &d) in row.data.iter().enumerate() {
                buf[row.start_word + i] ^= d;
            }
        }
        self.buf = buf;
        lead
    }

    fn commit(&mut self, lead: usize) {
        let start_word = lead / 64;
        let mut end = self.words;
        while end > start_word && self.buf[end - 1] == 0 {
            end -= 1;
        }
        let data = self.buf[start_word..end].to_vec();
        self.rows.push(RowF2 { lead, start_word, data });
        self.pivot_at[lead] = self.rows.len() as u32;
    }

    fn rref(&mut self) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i].lead));
        for &i in &order {
            let (lead, sw, data) = {
                let r = &self.rows[i];
                (r.lead, r.start_word, r.data.clone())
            };
            for j in 0..self.rows.len() {
                if self.rows[j].lead >= lead {
                    continue;
                }
                if !self.get(j, lead) {
                    continue;
                }
                let need = sw + data.len();
                let rj = &mut self.rows[j];
                let have = rj.start_word + rj.data.len();
                if have < need {
                    rj.data.resize(rj.data.len() + (need - have), 0);
                }
                for (t, &d) in data.iter().enumerate() {
                    rj.data[sw + t - rj.start_word] ^= d;
                }
            }
        }
    }

    fn get(&self, row: usize, col: usize) -> bool {
        let r = &self.rows[row];
        let w = col / 64;
        if w < r.start_word || w >= r.start_word + r.data.len() {
            return false;
        }
        r.data[w - r.start_word] >> (col % 64) & 1 == 1
    }

    /// Kernel basis from the RREF: one vector per free column.
    fn kernel_basis(&self) -> Vec<Vec<u8>> {
        let mut out = Vec::new();
        for f in 0..self.width {
            if self.pivot_at[f] != 0 {
                continue;
            }
            let mut v = vec![0u8; self.width];
            v[f] = 1;
            for r in &self.rows {
                if f > r.lead && self.get(self.pivot_at[r.lead] as usize - 1, f) {
                    v[r.lead] = 1;
                }
            }
            out.push(v);
        }
        out
    }
}

struct RowFp {
    lead: usize,
    data: Vec<u8>, // data[0] at column `lead`, normalized, data[0] == 1
}

struct EchFp {
    p: u8,
    width: usize,
    rows: Vec<RowFp>,
    pivot_at: Vec<u32>,
    buf: Vec<u8>,
    /// Apps between full renormalizations; bytes stay below 256 because each
    /// application adds at most (p-1)^2 on top of a value below p.
    app_cap: u32,
}

impl EchFp {
    fn new(p: u8, width: usize) -> Self {
        let app_cap = if p <= 13 { (255 - (p as u32 - 1)) / ((p as u32 - 1) * (p as u32 - 1)) } else { 0 };
        EchFp { p, width, rows: Vec::new(), pivot_at: vec![0; width], buf: vec![0; width], app_cap }
    }

    fn load_sparse(&mut self, entries: &[(usize, u8)]) {
        self.buf.fill(0);
        for &(col, v) in entries {
            self.buf[col] = v % self.p;
        }
    }

    fn load_bytes(&mut self, row: &[u8]) {
        self.buf.copy_from_slice(row);
        for v in self.buf.iter_mut() {
            *v %= self.p;
        }
    }

    fn reduce_buf(&mut self) -> Option<usize> {
        let p = self.p;
        let mut buf = std::mem::take(&mut self.buf);
        let mut col = 0;
        let mut apps = 0u32;
        let mut lead = None;
        while col < self.width {
            let v = buf[col] % p;
            buf[col] = v;
            if v == 0 {
                col += 1;
                continue;
            }
            let r = self.pivot_at[col];
            if r == 0 {
                lead = Some(col);
                break;
            }
            let row = &self.rows[(r - 1) as usize];
            let q = p - v;
            if self.app_cap > 0 {
                // Wrapping ops: bounded by the renormalization cadence.
                for (dst, &d) in buf[col..col + row.data.len()].iter_mut().zip(&row.data) {
                    *dst = dst.wrapping_add(q.wrapping_mul(d));
                }
                apps += 1;
                if apps >= self.app_cap {
                    for b in buf[col..].iter_mut() {
                        *b %= p;
                    }
                    apps = 0;
                }
            } else {
                for (dst, &d) in buf[col..col + row.data.len()].iter_mut().zip(&row.data) {
                    *dst = ((*dst as u32 + q as u32 * d as u32) % p as u32) as u8;
                }
            }
        }
        self.buf = buf;
        lead
    }

    fn commit(&mut self, lead: usize) {
        let p = self.p;
        let inv = fp::inv_mod(self.buf[lead] as u64 % p as u64, p as u64).expect("unit lead") as u32;
        let mut end = self.width;
        while end > lead && self.buf[end - 1] % p == 0 {
            end -= 1;
        }
        let data: Vec<u8> =
            self.buf[lead..end].iter().map(|&b| ((b as u32 % p as u32) * inv % p as u32) as u8).collect();
        debug_assert_eq!(data[0], 1);
        self.rows.push(RowFp { lead, data });
        self.pivot_at[lead] = self.rows.len() as u32;
    }

    fn get(&self, row: usize, col: usize) -> u8 {
        let r = &self.rows[row];
        if col < r.lead || col >= r.lead + r.data.len() {
            return 0;
        }
        r.data[col - r.lead]
    }

    fn rref(&mut self) {
        let p = self.p as u32;
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i].lead));
        for &i in &order {
            let (lead, data) = {
                let r = &self.rows[i];
                (r.lead, r.data.clone())
            };
            for j in 0..self.rows.len() {
                if self.rows[j].lead >= lead {
                    continue;
                }
                let c = self.get(j, lead);
                if c == 0 {
                    continue;
                }
                let q = (p - c as u32) % p;
                let need = lead + data.len();
                let rj = &mut self.rows[j];
                let have = rj.lead + rj.data.len();
                if have < need {
                    rj.data.resize(rj.data.len() + (need - have), 0);
                }
                for (t, &d) in data.iter().enumerate() {
                    let dst = &mut rj.data[lead + t - rj.lead];
                    *dst = ((*dst as u32 + q * d as u32) % p) as u8;
                }
            }
        }
    }

    fn kernel_basis(&self) -> Vec<Vec<u8>> {
        let p = self.p;
        let mut out = Vec::new();
        for f in 0..self.width {
            if self.pivot_at[f] != 0 {
                continue;
            }
            let mut v = vec![0u8; self.width];
            v[f] = 1;
            for r in &self.rows {
                if f > r.lead {
                    let c = self.get(self.pivot_at[r.lead] as usize - 1, f);
                    if c != 0 {
                        v[r.lead] = p - c;
                    }
                }
            }
            out.push(v);
        }
        out
    }
}

enum Ech {
    Two(EchF2),
    Odd(EchFp),
}

impl Ech {
    fn new(p: u8, width: usize) -> Self {
        if p == 2 {
            Ech::Two(EchF2::new(width))
        } else {
            Ech::Odd(EchFp::new(p, width))
        }
    }

    fn insert_sparse(&mut self, entries: &[(usize, u8)]) -> bool {
        match self {
            Ech::Two(e) => {
                e.load_sparse(entries);
                match e.reduce_buf() {
                    Some(lead) => {
                        e.commit(lead);
                        true
                    }
                    None => false,
                }
            }
            Ech::Odd(e) => {
                e.load_sparse(entries);
                match e.reduce_buf() {
                    Some(lead) => {
                        e.commit(lead);
                        true
                    }
                    None => false,
                }
            }
        }
    }

    fn insert_bytes(&mut self, row: &[u8]) -> bool {
        match self {
            Ech::Two(e) => {
                e.load_bytes(row);
                match e.reduce_buf() {
                    Some(lead) => {
                        e.commit(lead);
                        true
                    }
                    None => false,
                }
            }
            Ech::Odd(e) => {
                e.load_bytes(row);
                match e.reduce_buf() {
                    Some(lead) => {
                        e.commit(lead);
                        true
                    }
                    None => false,
                }
            }
        }
    }

    /// Membership in the row space: reduces a copy, true iff it vanishes.
    fn spans(&mut self, row: &[u8]) -> bool {
        match self {
            Ech::Two(e) => {
                e.load_bytes(row);
                e.reduce_buf().is_none()
            }
            Ech::Odd(e) => {
                e.load_bytes(row);
                e.reduce_buf().is_none()
            }
        }
    }

    fn rank(&self) -> usize {
        match self {
            Ech::Two(e) => e.rows.len(),
            Ech::Odd(e) => e.rows.len(),
        }
    }

    fn rref(&mut self) {
        match self {
            Ech::Two(e) => e.rref(),
            Ech::Odd(e) => e.rref(),
        }
    }

    fn kernel_basis(&self) -> Vec<Vec<u8>> {
        match self {
            Ech::Two(e) => e.kernel_basis(),
            Ech::Odd(e) => e.kernel_basis(),
        }
    }
}

/// Echelonize the degree-k differential (rows = tuples in G^{k+1}).  The rank
/// is rank d^k and the kernel, after rref, is the cocycle space Z^k.
fn differential_echelon(g: &FiniteGroup, p: u8, k: usize) -> Result<Ech> {
    let n = g.order;
    let width = cochain_dim(g, k)?;
    let mut ech = Ech::new(p, width);
    if k == 0 {
        // d on C^0 is zero for trivial coefficients: both faces drop the
        // unique empty tuple.
        return Ok(ech);
    }
    let rows = cochain_dim(g, k)? * n; // |G|^{k+1}, within cap * |G|
    let mut y = vec![0usize; k + 1];
    let mut faces = Vec::new();
    for _ in 0..rows {
        face_entries(g, p, &y, &mut faces);
        if !faces.is_empty() {
            ech.insert_sparse(&faces);
        }
        // odometer increment
        for slot in y.iter_mut() {
            *slot += 1;
            if *slot < n {
                break;
            }
            *slot = 0;
        }
    }
    Ok(ech)
}

/// Echelonize the image of the degree-(k-1) differential inside C^k, from the
/// sparse coboundaries of the basis of C^{k-1}.  Rank must agree with
/// rank d^{k-1} computed row-wise; callers cross-check.
fn image_echelon(g: &FiniteGroup, p: u8, k: usize) -> Result<Ech> {
    let n = g.order;
    let width = cochain_dim(g, k)?;
    let mut ech = Ech::new(p, width);
    if k == 0 {
        return Ok(ech);
    }
    let count = cochain_dim(g, k - 1)?;
    let mut x = vec![0usize; k - 1];
    for _ in 0..count {
        let supp = coboundary_support(g, p, &x);
        if !supp.is_empty() {
            ech.insert_sparse(&supp);
        }
        for slot in x.iter_mut() {
            *slot += 1;
            if *slot < n {
                break;
            }
            *slot = 0;
        }
    }
    Ok(ech)
}

/// The space of coboundaries B^k(G; F_p), held as an echelon basis so that
/// membership tests are a single reduction.
pub struct CoboundarySpace {
    pub degree: usize,
    pub rank: usize,
    dim: usize,
    ech: Ech,
}

pub fn coboundary_space(g: &FiniteGroup, p: u64, k: usize) -> Result<CoboundarySpace> {
    let p8 = check_prime(p)?;
    let ech = image_echelon(g, p8, k)?;
    Ok(CoboundarySpace { degree: k, rank: ech.rank(), dim: cochain_dim(g, k)?, ech })
}

impl CoboundarySpace {
    pub fn contains(&mut self, x: &Cochain) -> Result<bool> {
        if x.degree != self.degree || x.values.len() != self.dim {
            return Err(Error::MixedGroups);
        }
        Ok(self.ech.spans(&x.values))
    }
}

/// The cocycle space Z^k(G; F_p) with an explicit basis.
pub struct CocycleSpace {
    pub degree: usize,
    /// Dimension of the ambient cochain space |G|^degree.
    pub dim: usize,
    pub basis: Vec<Cochain>,
}

pub fn cocycle_space(g: &FiniteGroup, p: u64, k: usize) -> Result<CocycleSpace> {
    let p8 = check_prime(p)?;
    let mut ech = differential_echelon(g, p8, k)?;
    ech.rref();
    let basis = ech
        .kernel_basis()
        .into_iter()
        .map(|values| Cochain { degree: k, values })
        .collect();
    Ok(CocycleSpace { degree: k, dim: cochain_dim(g, k)?, basis })
}

pub fn is_coboundary(g: &FiniteGroup, p: u64, x: &Cochain) -> Result<bool> {
    coboundary_space(g, p, x.degree)?.contains(x)
}

pub fn cohomologous(g: &FiniteGroup, p: u64, x: &Cochain, y: &Cochain) -> Result<bool> {
    is_coboundary(g, p, &x.sub(y, p)?)
}

/// Graded data of H^*(G; F_p) through degree maxdeg.
#[derive(Debug)]
pub struct BarCohomology {
    pub p: u64,
    pub dims: Vec<usize>,
    /// rank of d^k for k = 0..maxdeg.
    pub differential_ranks: Vec<usize>,
    /// Chosen cocycle representatives per degree: kernel vectors that are
    /// independent modulo coboundaries, in fixed pivot order.
    pub basis: Vec<Vec<Cochain>>,
}

pub fn bar_cohomology(g: &FiniteGroup, p: u64, maxdeg: usize) -> Result<BarCohomology> {
    let p8 = check_prime(p)?;
    cochain_dim(g, maxdeg)?; // enforce the cap before any allocation
    let mut ranks = Vec::with_capacity(maxdeg + 1);
    let mut kernels: Vec<Vec<Vec<u8>>> = Vec::with_capacity(maxdeg + 1);
    for k in 0..=maxdeg {
        let mut ech = differential_echelon(g, p8, k)?;
        ranks.push(ech.rank());
        ech.rref();
        kernels.push(ech.kernel_basis());
    }
    let mut dims = Vec::with_capacity(maxdeg + 1);
    let mut basis = Vec::with_capacity(maxdeg + 1);
    for k in 0..=maxdeg {
        let prev_rank = if k == 0 { 0 } else { ranks[k - 1] };
        let expected = kernels[k].len() - prev_rank;
        debug_assert_eq!(kernels[k].len() + ranks[k], cochain_dim(g, k)?);
        let mut img = image_echelon(g, p8, k)?;
        if img.rank() != prev_rank {
            return Err(Error::Invariant(format!(
                "image rank {} disagrees with row rank {} in degree {k}",
                img.rank(),
                prev_rank
            )));
        }
        let mut reps = Vec::new();
        for v in &kernels[k] {
            if img.insert_bytes(v) {
                reps.push(Cochain { degree: k, values: v.clone() });
            }
        }
        if reps.len() != expected {
            return Err(Error::Invariant(format!(
                "cohomology basis count {} != {} in degree {k}",
                reps.len(),
                expected
            )));
        }
        dims.push(expected);
        basis.push(reps);
    }
    audit_d_squared(g, p8, maxdeg)?;
    Ok(BarCohomology { p, dims, differential_ranks: ranks, basis })
}

/// d.d = 0 on basis cochains, sampled with a fixed stride when the basis is
/// large.  Failure here means the face bookkeeping is wrong.
fn audit_d_squared(g: &FiniteGroup, p: u8, maxdeg: usize) -> Result<()> {
    let n = g.order;
    for k in 0..maxdeg {
        let count = cochain_dim(g, k)?;
        let stride = (count / 4096).max(1);
        let mut x = vec![0usize; k];
        for idx in (0..count).step_by(stride) {
            let mut rest = idx;
            for slot in x.iter_mut() {
                *slot = rest % n;
                rest /= n;
            }
            let dd = d_of_sparse(g, p, &coboundary_support(g, p, &x), k + 1);
            if !dd.is_empty() {
                return Err(Error::Invariant(format!("d.d != 0 at degree {k} index {idx}")));
            }
        }
    }
    Ok(())
}

/// Cup product by the front-face/back-face formula:
/// (x.y)(a_1..a_k, b_1..b_l) = x(a) * y(b).  Strictly associative on cochains.
pub fn cup(g: &FiniteGroup, p: u64, x: &Cochain, y: &Cochain) -> Result<Cochain> {
    let p8 = check_prime(p)? as u32;
    let dx = cochain_dim(g, x.degree)?;
    let dy = cochain_dim(g, y.degree)?;
    if x.values.len() != dx || y.values.len() != dy {
        return Err(Error::MixedGroups);
    }
    let dim = cochain_dim(g, x.degree + y.degree)?;
    let mut values = vec![0u8; dim];
    for (j, &b) in y.values.iter().enumerate() {
        if b == 0 {
            continue;
        }
        let base = j * dx;
        for (i, &a) in x.values.iter().enumerate() {
            values[base + i] = (a as u32 * b as u32 % p8) as u8;
        }
    }
    Ok(Cochain { degree: x.degree + y.degree, values })
}

fn check_subgroup(g: &FiniteGroup, h: &Subgroup) -> Result<()> {
    if h.embed.iter().any(|&e| e >= g.order) {
        return Err(Error::NotSubgroup);
    }
    for (i, &a) in h.embed.iter().enumerate() {
        for (j, &b) in h.embed.iter().enumerate() {
            if g.mul(a, b) != h.embed[h.h.mul(i, j)] {
                return Err(Error::NotSubgroup);
            }
        }
    }
    Ok(())
}

/// Restrict a cochain on G to a subgroup: precompose with the embedding.
pub fn restriction(g: &FiniteGroup, h: &Subgroup, p: u64, x: &Cochain) -> Result<Cochain> {
    check_prime(p)?;
    check_subgroup(g, h)?;
    if x.values.len() != cochain_dim(g, x.degree)? {
        return Err(Error::MixedGroups);
    }
    let k = x.degree;
    let m = h.h.order;
    let n = g.order;
    let dim = cochain_dim(&h.h, k)?;
    let mut values = vec![0u8; dim];
    let mut t = vec![0usize; k];
    for slot in values.iter_mut() {
        let mut idx_g = 0usize;
        for &ti in t.iter().rev() {
            idx_g = idx_g * n + h.embed[ti];
        }
        *slot = x.values[idx_g];
        for s in t.iter_mut() {
            *s += 1;
            if *s < m {
                break;
            }
            *s = 0;
        }
    }
    Ok(Cochain { degree: k, values })
}

/// Minimal-index representatives of the right cosets H\G, in the order the
/// cosets are first met.
pub fn coset_section(g: &FiniteGroup, h: &Subgroup) -> Result<Vec<usize>> {
    check_subgroup(g, h)?;
    let mut rep_of = vec![usize::MAX; g.order];
    let mut reps = Vec::new();
    for t in 0..g.order {
        if rep_of[t] != usize::MAX {
            continue;
        }
        reps.push(t);
        for &e in &h.embed {
            rep_of[g.mul(e, t)] = t;
        }
    }
    Ok(reps)
}

/// Transfer a cochain on H up to G via an explicit coset section: sum over
/// representatives r of phi evaluated on the H-components of the walk
/// r -> r g_1 -> r g_1 g_2 -> ...
pub fn transfer_with_section(
    g: &FiniteGroup,
    h: &Subgroup,
    p: u64,
    x: &Cochain,
    reps: &[usize],
) -> Result<Cochain> {
    let p8 = check_prime(p)?;
    check_subgroup(g, h)?;
    let n = g.order;
    let m = h.h.order;
    if x.values.len() != cochain_dim(&h.h, x.degree)? {
        return Err(Error::MixedGroups);
    }
    // Validate the section and build coset/membership lookups.
    let mut h_index = vec![usize::MAX; n];
    for (i, &e) in h.embed.iter().enumerate() {
        h_index[e] = i;
    }
    let mut rep_of = vec![usize::MAX; n];
    for &r in reps {
        for &e in &h.embed {
            let t = g.mul(e, r);
            if rep_of[t] != usize::MAX {
                return Err(Error::Invariant("section hits a coset twice".into()));
            }
            rep_of[t] = r;
        }
    }
    if rep_of.iter().any(|&r| r == usize::MAX) {
        return Err(Error::Invariant("section misses a coset".into()));
    }
    let k = x.degree;
    let dim = cochain_dim(g, k)?;
    let mut values = vec![0u8; dim];
    let mut tuple = vec![0usize; k];
    for slot in values.iter_mut() {
        let mut acc = 0u32;
        for &r in reps {
            let mut cur = r;
            let mut idx_h = 0usize;
            let mut stride = 1usize;
            for &gi in &tuple {
                let t = g.mul(cur, gi);
                let next = rep_of[t];
                let hi = h_index[g.mul(t, g.inv(next))];
                debug_assert_ne!(hi, usize::MAX, "walk component must lie in H");
                idx_h += hi * stride;
                stride *= m;
                cur = next;
            }
            acc += x.values[idx_h] as u32;
        }
        *slot = (acc % p8 as u32) as u8;
        for s in tuple.iter_mut() {
            *s += 1;
            if *s < n {
                break;
            }
            *s = 0;
        }
    }
    Ok(Cochain { degree: k, values })
}

/// Transfer with the fixed minimal-index section.
pub fn transfer(g: &FiniteGroup, h: &Subgroup, p: u64, x: &Cochain) -> Result<Cochain> {
    let reps = coset_section(g, h)?;
    transfer_with_section(g, h, p, x, &reps)
}

/// Pull back a cochain along a group automorphism given elementwise.
pub fn automorphism_pullback(g: &FiniteGroup, perm: &[usize], x: &Cochain) -> Result<Cochain> {
    if !g.is_automorphism(perm) {
        return Err(Error::NotAutomorphism);
    }
    if x.values.len() != cochain_dim(g, x.degree)? {
        return Err(Error::MixedGroups);
    }
    let n = g.order;
    let k = x.degree;
    let mut values = vec![0u8; x.values.len()];
    let mut t = vec![0usize; k];
    for slot in values.iter_mut() {
        let mut idx = 0usize;
        for &ti in t.iter().rev() {
            idx = idx * n + perm[ti];
        }
        *slot = x.values[idx];
        for s in t.iter_mut() {
            *s += 1;
            if *s < n {
                break;
            }
            *s = 0;
        }
    }
    Ok(Cochain { degree: k, values })
}

/// Conjugation action of u on cochains: pull back along t -> u t u^{-1}.
/// With trivial coefficients this is the identity on cohomology.
pub fn conjugation_action(g: &FiniteGroup, u: usize, x: &Cochain) -> Result<Cochain> {
    if u >= g.order {
        return Err(Error::IndexOutOfRange(format!("element {u}")));
    }
    let perm: Vec<usize> = (0..g.order).map(|t| g.conj(t, u)).collect();
    automorphism_pullback(g, &perm, x)
}

// ---------------------------------------------------------------------------
// Cyclic ring models.  Integral cohomology enters only through the model
// Z[z0]/(t.z0) for a cyclic group of order t, with z0 in degree 2, and the
// invariant subrings of multiplier actions on it.

/// The class z0^power in Z[z0]/(torsion.z0); degree 2*power.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CyclicClass {
    pub torsion: u64,
    pub power: usize,
}

impl CyclicClass {
    pub fn degree(&self) -> usize {
        2 * self.power
    }
}

/// Product of monomials in the cyclic model: exponents add.
pub fn cyclic_cup(a: CyclicClass, b: CyclicClass) -> Result<CyclicClass> {
    if a.torsion != b.torsion {
        return Err(Error::MixedGroups);
    }
    Ok(CyclicClass { torsion: a.torsion, power: a.power + b.power })
}

/// Invariants of the multiplier action z0 -> u.z0 on H^*(C_p; Z_(p)).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantsModel {
    pub p: u64,
    /// Multiplier normalized into 1..p.
    pub multiplier: u64,
    pub multiplier_order: usize,
    /// First positive-degree invariant is z0^multiplier_order ...
    pub generator_power: usize,
    /// ... sitting in this degree, with p times it equal to zero.
    pub generator_degree: usize,
    pub torsion: u64,
}

pub fn invariants_model(p: u64, multiplier: i64) -> Result<InvariantsModel> {
    if !fp::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let u = multiplier.rem_euclid(p as i64) as u64;
    if u == 0 {
        return Err(Error::BadMultiplier);
    }
    // z0^j is invariant iff u^j = 1, so the invariant subring is generated by
    // z0^m with m the multiplicative order of u.
    let m = fp::order_mod(u, p)? as usize;
    Ok(InvariantsModel {
        p,
        multiplier: u,
        multiplier_order: m,
        generator_power: m,
        generator_degree: 2 * m,
        torsion: p,
    })
}
