//! Shared oracle for the dimension-two polynomial system.

use gfmub::polysys::{Poly, PolySystem};
use std::collections::BTreeMap;

/// Letters used for the two bases of the d = 2 system, in the order
/// (col 1 row 1, col 1 row 2, col 2 row 1, col 2 row 2), real then imaginary.
const B1: [(&str, &str); 4] = [("e", "E"), ("f", "F"), ("g", "G"), ("h", "H")];
const B2: [(&str, &str); 4] = [("s", "S"), ("t", "T"), ("u", "U"), ("v", "V")];

fn letter_names() -> BTreeMap<&'static str, String> {
    let mut m = BTreeMap::new();
    for (b, letters) in [(1, B1), (2, B2)] {
        for (k, (re, im)) in letters.iter().enumerate() {
            let (col, row) = (k / 2 + 1, k % 2 + 1);
            m.insert(*re, format!("b{b}c{col}r{row}re"));
            m.insert(*im, format!("b{b}c{col}r{row}im"));
        }
    }
    m
}

pub type Terms = BTreeMap<Vec<(String, u32)>, i64>;

/// Parses "k*a*b^2 + ..." written over the letters above.
fn expected(spec: &[(i64, &str)]) -> Terms {
    let names = letter_names();
    let mut out = Terms::new();
    for &(k, mono) in spec {
        let mut m: BTreeMap<String, u32> = BTreeMap::new();
        for f in mono.split('*').filter(|f| !f.is_empty()) {
            let (v, e) = match f.split_once('^') {
                Some((v, e)) => (v, e.parse().unwrap()),
                None => (f, 1),
            };
            *m.entry(names[v].clone()).or_default() += e;
        }
        *out.entry(m.into_iter().collect()).or_default() += k;
    }
    out
}

pub fn actual(sys: &PolySystem, p: &Poly) -> Terms {
    p.terms
        .iter()
        .map(|(m, &k)| {
            let mut named: Vec<(String, u32)> = m.iter().map(|&(v, e)| (sys.vars[v].name(), e)).collect();
            named.sort();
            (named, k)
        })
        .collect()
}

/// Substitutes letters in a monomial pattern written for (e,E,f,F) x (s,S,t,T).
fn subst(pattern: &str, a: (&str, &str, &str, &str), b: (&str, &str, &str, &str)) -> String {
    pattern
        .chars()
        .map(|ch| match ch {
            'e' => a.0.to_string(),
            'E' => a.1.to_string(),
            'f' => a.2.to_string(),
            'F' => a.3.to_string(),
            's' => b.0.to_string(),
            'S' => b.1.to_string(),
            't' => b.2.to_string(),
            'T' => b.3.to_string(),
            c => c.to_string(),
        })
        .collect()
}

/// The sixteen polynomials for d = 2, two bases and c = -1, written out by
/// hand with denominators cleared.
pub fn expected_d2_system() -> Vec<Terms> {
    let mut want: Vec<Terms> = Vec::new();
    // entry norms, scaled by d
    for letters in [B1, B2] {
        for (re, im) in letters {
            want.push(expected(&[(2, &format!("{re}^2")), (2, &format!("{im}^2")), (-1, "")]));
        }
    }
    // orthogonality within each basis: real and imaginary parts
    for [(a, aa), (b, bb), (c, cc), (dd, ddd)] in [B1, B2] {
        want.push(expected(&[
            (1, &format!("{a}*{c}")),
            (1, &format!("{aa}*{cc}")),
            (1, &format!("{b}*{dd}")),
            (1, &format!("{bb}*{ddd}")),
        ]));
        want.push(expected(&[
            (-1, &format!("{a}*{cc}")),
            (1, &format!("{aa}*{c}")),
            (-1, &format!("{b}*{ddd}")),
            (1, &format!("{bb}*{dd}")),
        ]));
    }
    // cross-basis unbiasedness, pattern for column (e,f) against (s,t)
    let quartic: [(i64, &str); 16] = [
        (1, "e^2*s^2"),
        (1, "e^2*S^2"),
        (2, "e*f*s*t"),
        (2, "e*f*S*T"),
        (2, "e*F*s*T"),
        (-2, "e*F*S*t"),
        (1, "E^2*s^2"),
        (1, "E^2*S^2"),
        (-2, "E*f*s*T"),
        (2, "E*f*S*t"),
        (2, "E*F*s*t"),
        (2, "E*F*S*T"),
        (1, "f^2*t^2"),
        (1, "f^2*T^2"),
        (1, "F^2*t^2"),
        (1, "F^2*T^2"),
    ];
    let cols1 = [("e", "E", "f", "F"), ("g", "G", "h", "H")];
    let cols2 = [("s", "S", "t", "T"), ("u", "U", "v", "V")];
    for a in cols1 {
        for b in cols2 {
            let subbed: Vec<(i64, String)> = quartic.iter().map(|&(k, m)| (4 * k, subst(m, a, b))).collect();
            let mut spec: Vec<(i64, &str)> = subbed.iter().map(|(k, m)| (*k, m.as_str())).collect();
            spec.push((-2, ""));
            want.push(expected(&spec));
        }
    }
    want
}
