//! Constructors for the group families the games are played on.

use super::{validate_group, FiniteGroup, GroupError, MAX_ORDER};

/// A recipe for building a concrete [`FiniteGroup`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    /// Z_n, addition mod `n`.
    Cyclic(usize),
    /// D_n of order 2n: symmetries of the regular n-gon.
    Dihedral(usize),
    /// The quaternion group of order 8.
    Quaternion8,
    /// Upper unitriangular 3×3 matrices over Z_p; order p³.
    Heisenberg(usize),
    /// Direct product.
    Product(Box<GroupSpec>, Box<GroupSpec>),
    /// Z_m ⋊ Z_k where the generator of Z_k acts by x ↦ α·x on Z_m.
    Semidirect { m: usize, k: usize, alpha: usize },
    /// The Frobenius group Z_p ⋊ Z_{p-1} of order p(p-1); the action is by a
    /// primitive root `r` modulo `p` (smallest one when `None`).
    Frobenius { p: usize, r: Option<usize> },
    /// Raw Cayley table in the text format of [`parse_cayley_table`]:
    /// whitespace-separated tokens, first the order `n`, then the n² row-major
    /// 0-based entries.
    Table(String),
}

/// Builds and fully validates the group described by `spec`.
pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup, GroupError> {
    match spec {
        GroupSpec::Cyclic(n) => cyclic(*n),
        GroupSpec::Dihedral(n) => dihedral(*n),
        GroupSpec::Quaternion8 => quaternion8(),
        GroupSpec::Heisenberg(p) => heisenberg(*p),
        GroupSpec::Product(a, b) => product(&build_group(a)?, &build_group(b)?),
        GroupSpec::Semidirect { m, k, alpha } => semidirect(*m, *k, *alpha),
        GroupSpec::Frobenius { p, r } => frobenius(*p, *r),
        GroupSpec::Table(text) => parse_cayley_table(text),
    }
}

fn check_order(n: usize) -> Result<(), GroupError> {
    if n == 0 {
        Err(GroupError::BadParameter("order must be positive".into()))
    } else if n > MAX_ORDER {
        Err(GroupError::OrderCapExceeded { order: n })
    } else {
        Ok(())
    }
}

fn finish(
    n: usize,
    entries: Vec<usize>,
    labels: Vec<String>,
    name: String,
) -> Result<FiniteGroup, GroupError> {
    // The constructors are trusted but cheap to double-check; everything goes
    // through the same validation path as ingested tables.
    validate_group(n, &entries, Some(0), Some(labels), name)
}

fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    check_order(n)?;
    let mut entries = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            entries[i * n + j] = (i + j) % n;
        }
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    finish(n, entries, labels, format!("Z{n}"))
}

/// Shared core of the split-extension constructors. Elements are pairs
/// (i, j) ∈ Z_m × Z_k with (i, j)·(i', j') = (i + i'·αʲ mod m, j + j' mod k),
/// indexed as (i, j) ↦ i·k + j.
fn semidirect_table(m: usize, k: usize, alpha: usize) -> (Vec<usize>, Vec<String>) {
    let n = m * k;
    // alpha_pow[j] = α^j mod m
    let mut alpha_pow = vec![1usize % m; k];
    for j in 1..k {
        alpha_pow[j] = alpha_pow[j - 1] * alpha % m;
    }
    let idx = |i: usize, j: usize| i * k + j;
    let mut entries = vec![0usize; n * n];
    for i in 0..m {
        for j in 0..k {
            for i2 in 0..m {
                for j2 in 0..k {
                    let ri = (i + i2 * alpha_pow[j]) % m;
                    let rj = (j + j2) % k;
                    entries[idx(i, j) * n + idx(i2, j2)] = idx(ri, rj);
                }
            }
        }
    }
    let mut labels = vec![String::new(); n];
    for i in 0..m {
        for j in 0..k {
            labels[idx(i, j)] = format!("({i},{j})");
        }
    }
    (entries, labels)
}

fn semidirect(m: usize, k: usize, alpha: usize) -> Result<FiniteGroup, GroupError> {
    if m == 0 || k == 0 {
        return Err(GroupError::BadParameter(
            "semidirect factors must be positive".into(),
        ));
    }
    check_order(m.checked_mul(k).ok_or(GroupError::OrderCapExceeded {
        order: usize::MAX,
    })?)?;
    let alpha = alpha % m;
    if gcd(alpha, m) != 1 {
        return Err(GroupError::BadAction(format!(
            "gcd({alpha}, {m}) != 1: x -> {alpha}x is not an automorphism of Z{m}"
        )));
    }
    if pow_mod(alpha, k, m) != 1 % m {
        return Err(GroupError::BadAction(format!(
            "{alpha}^{k} is not 1 mod {m}: the action does not have order dividing {k}"
        )));
    }
    let (entries, labels) = semidirect_table(m, k, alpha);
    finish(m * k, entries, labels, format!("Z{m}:Z{k}(a={alpha})"))
}

fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::BadParameter("order must be positive".into()));
    }
    check_order(2 * n)?;
    // D_n = Z_n ⋊ Z_2 with inversion action; α = n-1 ≡ -1 (mod n).
    let (entries, labels) = semidirect_table(n, 2, (n - 1) % n.max(1));
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(x, _)| {
            let (i, j) = (x / 2, x % 2);
            if j == 0 {
                format!("r{i}")
            } else {
                format!("r{i}s")
            }
        })
        .collect();
    finish(2 * n, entries, labels, format!("D{n}"))
}

fn quaternion8() -> Result<FiniteGroup, GroupError> {
    // Elements 1, -1, i, -i, j, -j, k, -k as (sign, axis) with axis 0 ↦ 1.
    // Axis products follow ij = k, jk = i, ki = j and x² = -1 on the axes.
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
    let axis = |x: usize| x / 2; // 0:unit, 1:i, 2:j, 3:k
    let sign = |x: usize| x % 2; // 0:+, 1:-
    let pack = |a: usize, s: usize| a * 2 + s;
    // mul of axes: (axis, axis) -> (axis, extra sign)
    let axis_mul = |a: usize, b: usize| -> (usize, usize) {
        match (a, b) {
            (0, b) => (b, 0),
            (a, 0) => (a, 0),
            (a, b) if a == b => (0, 1), // i² = j² = k² = -1
            (1, 2) => (3, 0),           // ij = k
            (2, 3) => (1, 0),           // jk = i
            (3, 1) => (2, 0),           // ki = j
            (2, 1) => (3, 1),           // ji = -k
            (3, 2) => (1, 1),
            (1, 3) => (2, 1),
            _ => unreachable!(),
        }
    };
    let mut entries = vec![0usize; 64];
    for x in 0..8 {
        for y in 0..8 {
            let (a, extra) = axis_mul(axis(x), axis(y));
            let s = (sign(x) + sign(y) + extra) % 2;
            entries[x * 8 + y] = pack(a, s);
        }
    }
    let labels = labels.iter().map(|s| s.to_string()).collect();
    finish(8, entries, labels, "Q8".into())
}

fn heisenberg(p: usize) -> Result<FiniteGroup, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    let n = p * p * p;
    check_order(n)?;
    // Triples (a, b, c) with (a,b,c)(a',b',c') = (a+a', b+b', c+c'+a·b').
    let idx = |a: usize, b: usize, c: usize| (a * p + b) * p + c;
    let mut entries = vec![0usize; n * n];
    let mut labels = vec![String::new(); n];
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                labels[idx(a, b, c)] = format!("({a},{b},{c})");
                for a2 in 0..p {
                    for b2 in 0..p {
                        for c2 in 0..p {
                            let r = idx((a + a2) % p, (b + b2) % p, (c + c2 + a * b2) % p);
                            entries[idx(a, b, c) * n + idx(a2, b2, c2)] = r;
                        }
                    }
                }
            }
        }
    }
    finish(n, entries, labels, format!("H{p}"))
}

fn product(h: &FiniteGroup, k: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let (nh, nk) = (h.order(), k.order());
    let n = nh
        .checked_mul(nk)
        .filter(|&n| n <= MAX_ORDER)
        .ok_or(GroupError::OrderCapExceeded {
            order: nh.saturating_mul(nk),
        })?;
    // (x, y) ↦ x·|K| + y, multiplied componentwise.
    let idx = |x: usize, y: usize| x * nk + y;
    let mut entries = vec![0usize; n * n];
    let mut labels = vec![String::new(); n];
    for x in 0..nh {
        for y in 0..nk {
            labels[idx(x, y)] = format!("({},{})", h.label(x), k.label(y));
            for x2 in 0..nh {
                for y2 in 0..nk {
                    entries[idx(x, y) * n + idx(x2, y2)] = idx(h.mul(x, x2), k.mul(y, y2));
                }
            }
        }
    }
    finish(n, entries, labels, format!("{}x{}", h.name(), k.name()))
}

fn frobenius(p: usize, r: Option<usize>) -> Result<FiniteGroup, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::NotPrime(p));
    }
    if p < 3 {
        return Err(GroupError::BadParameter(
            "Frobenius construction needs p >= 3 so that Z_{p-1} is nontrivial".into(),
        ));
    }
    let r = match r {
        Some(r) => {
            let r = r % p;
            if multiplicative_order(r, p) != Some(p - 1) {
                return Err(GroupError::NotPrimitiveRoot { root: r, modulus: p });
            }
            r
        }
        None => smallest_primitive_root(p),
    };
    let (entries, labels) = semidirect_table(p, p - 1, r);
    finish(p * (p - 1), entries, labels, format!("F{p}"))
}

/// Parses the plain-text Cayley table format: whitespace-separated decimal
/// tokens, the first being the order `n`, followed by exactly n² row-major
/// element indices in `0..n`. The identity may sit at any index; validation
/// renumbers it to 0.
pub fn parse_cayley_table(text: &str) -> Result<FiniteGroup, GroupError> {
    let mut tokens = text.split_whitespace();
    let n: usize = tokens
        .next()
        .ok_or_else(|| GroupError::BadTable("empty input".into()))?
        .parse()
        .map_err(|_| GroupError::BadTable("first token must be the order".into()))?;
    if n == 0 {
        return Err(GroupError::BadTable("order must be at least 1".into()));
    }
    if n > MAX_ORDER {
        return Err(GroupError::OrderCapExceeded { order: n });
    }
    let mut entries = Vec::with_capacity(n * n);
    for tok in tokens.by_ref().take(n * n) {
        let v: usize = tok
            .parse()
            .map_err(|_| GroupError::BadTable(format!("bad table entry '{tok}'")))?;
        entries.push(v);
    }
    if entries.len() < n * n {
        return Err(GroupError::BadTable(format!(
            "expected {} entries after the order, found {}",
            n * n,
            entries.len()
        )));
    }
    if let Some(extra) = tokens.next() {
        return Err(GroupError::BadTable(format!(
            "trailing token '{extra}' after {} entries",
            n * n
        )));
    }
    validate_group(n, &entries, None, None, format!("table-of-order-{n}"))
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn pow_mod(mut base: usize, mut exp: usize, modulus: usize) -> usize {
    if modulus == 1 {
        return 0;
    }
    let mut acc = 1usize;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Order of `a` in (Z/m)*; `None` if `gcd(a, m) != 1`.
fn multiplicative_order(a: usize, m: usize) -> Option<usize> {
    if m == 1 {
        return Some(1);
    }
    if gcd(a, m) != 1 {
        return None;
    }
    let mut x = a % m;
    let mut k = 1;
    while x != 1 {
        x = x * a % m;
        k += 1;
    }
    Some(k)
}

fn smallest_primitive_root(p: usize) -> usize {
    (2..p)
        .find(|&r| multiplicative_order(r, p) == Some(p - 1))
        .expect("every odd prime has a primitive root")
}
