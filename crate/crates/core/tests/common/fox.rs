//! Alexander polynomial of a knot from its Gauss code by Fox calculus on the
//! Wirtinger presentation. Shares no code with the library.

use std::collections::BTreeMap;

/// Laurent polynomial as exponent -> coefficient, no zero entries.
pub type Poly = BTreeMap<i64, i64>;

fn clean(mut p: Poly) -> Poly {
    p.retain(|_, c| *c != 0);
    p
}

fn add(a: &Poly, b: &Poly, k: i64) -> Poly {
    let mut out = a.clone();
    for (e, c) in b {
        *out.entry(*e).or_default() += k * c;
    }
    clean(out)
}

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            *out.entry(e1 + e2).or_default() += c1 * c2;
        }
    }
    clean(out)
}

fn det(m: &[Vec<Poly>]) -> Poly {
    if m.is_empty() {
        return Poly::from([(0, 1)]);
    }
    let mut out = Poly::new();
    for j in 0..m.len() {
        if m[0][j].is_empty() {
            continue;
        }
        let minor: Vec<Vec<Poly>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect()).collect();
        out = add(&out, &mul(&m[0][j], &det(&minor)), if j % 2 == 0 { 1 } else { -1 });
    }
    out
}

/// `∂w/∂x` with every generator sent to `t`.
fn fox(word: &[(usize, i64)], x: usize) -> Poly {
    let mut out = Poly::new();
    let mut prefix = 0i64;
    for &(g, e) in word {
        if g == x {
            if e > 0 {
                *out.entry(prefix).or_default() += 1;
            } else {
                *out.entry(prefix - 1).or_default() -= 1;
            }
        }
        prefix += e;
    }
    clean(out)
}

/// Coefficients from the lowest power upward, sign fixed so the lowest is positive.
pub fn normalize(p: &Poly) -> Vec<i64> {
    let Some((&lo, &c)) = p.iter().next() else { return Vec::new() };
    let hi = *p.keys().last().unwrap();
    let s = c.signum();
    (lo..=hi).map(|e| s * p.get(&e).copied().unwrap_or(0)).collect()
}

/// `Δ` of a one-circle code such as `O1+U2+O3+U1+O2+U3+`.
pub fn alexander_from_gauss(code: &str) -> Vec<i64> {
    let mut ends: Vec<(bool, usize, i64)> = Vec::new();
    let b = code.as_bytes();
    let mut i = 0;
    while i < b.len() {
        let under = b[i] == b'U';
        let mut j = i + 1;
        while b[j].is_ascii_digit() {
            j += 1;
        }
        let chord: usize = code[i + 1..j].parse().unwrap();
        ends.push((under, chord, if b[j] == b'+' { 1 } else { -1 }));
        i = j + 1;
    }
    // arc k starts right after the k-th under-passage
    let unders: Vec<usize> = (0..ends.len()).filter(|&p| ends[p].0).collect();
    let n = unders.len();
    let arc_at = |p: usize| -> usize {
        // the arc containing position p is the last under-passage at or before it
        match unders.iter().rposition(|&u| u <= p) {
            Some(k) => k,
            None => n - 1,
        }
    };
    let mut rows = Vec::new();
    for (k, &u) in unders.iter().enumerate() {
        let (_, chord, sign) = ends[u];
        let over = (0..ends.len()).find(|&p| !ends[p].0 && ends[p].1 == chord).unwrap();
        let (xo, xin, xout) = (arc_at(over), (k + n - 1) % n, k);
        // x_out = x_o^s x_in x_o^-s
        let word = [(xo, sign), (xin, 1), (xo, -sign), (xout, -1)];
        rows.push((0..n).map(|x| fox(&word, x)).collect::<Vec<Poly>>());
    }
    let minor: Vec<Vec<Poly>> = rows[1..].iter().map(|r| r[1..].to_vec()).collect();
    normalize(&det(&minor))
}
