//! Named groups, group descriptors and generator files.
//!
//! Descriptor grammar (case-sensitive):
//!
//! ```text
//! S<n> | A<n> | C<n> | C<n>^<k> | D<2n> | Q<4m> | SL23 | L27 | PGL27 | F20 | F21
//! wr(b,a)              S_b wr S_a inside S_ab
//! <spec>x<spec>        direct product acting on the disjoint union
//! <path>               generator file
//! ```

use std::collections::HashMap;
use std::hash::Hash;
use std::path::Path;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::{Permutation, Point};

/// Parses a group descriptor or reads a generator file.
pub fn parse_group_spec(spec: &str) -> Result<PermGroup> {
    let spec = spec.trim();
    if Path::new(spec).is_file() {
        return parse_group_file(&std::fs::read_to_string(spec)?);
    }
    if !spec.starts_with("wr(") && spec.contains('x') {
        let factors = spec.split('x').map(parse_group_spec).collect::<Result<Vec<_>>>()?;
        return Ok(direct_product(&factors));
    }
    parse_named(spec).ok_or_else(|| Error::UnknownGroup(spec.to_string()))
}

fn number(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_named(spec: &str) -> Option<PermGroup> {
    match spec {
        "SL23" => return Some(sl23()),
        "L27" => return Some(psl27()),
        "PGL27" => return Some(pgl27()),
        "F20" => return Some(affine(5, 2)),
        "F21" => return Some(affine(7, 2)),
        _ => {}
    }
    if let Some(args) = spec.strip_prefix("wr(").and_then(|s| s.strip_suffix(')')) {
        let (b, a) = args.split_once(',')?;
        return wreath(number(b.trim())?, number(a.trim())?);
    }
    if !spec.is_char_boundary(1) {
        return None;
    }
    let (head, rest) = spec.split_at(1);
    match head {
        "S" => number(rest).filter(|&n| n >= 1).map(PermGroup::symmetric),
        "A" => number(rest).filter(|&n| n >= 1).map(PermGroup::alternating),
        "C" => {
            let (n, k) = match rest.split_once('^') {
                Some((n, k)) => (number(n)?, number(k)?),
                None => (number(rest)?, 1),
            };
            (n >= 1 && k >= 1).then(|| direct_product(&vec![cyclic(n); k]))
        }
        "D" => number(rest).filter(|&n| n >= 6 && n % 2 == 0).map(|n| dihedral(n / 2)),
        "Q" => number(rest).filter(|&n| n >= 8 && n % 4 == 0).map(|n| dicyclic(n / 4)),
        _ => None,
    }
}

/// Parses the generator-file format: a `degree n` line followed by one
/// generator per line in cycle notation. Blank lines and `#` comments are
/// skipped.
pub fn parse_group_file(text: &str) -> Result<PermGroup> {
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap().trim())
        .filter(|l| !l.is_empty());
    let header = lines.next().ok_or_else(|| Error::Syntax("empty group file".into()))?;
    let degree = header
        .strip_prefix("degree")
        .and_then(|d| d.trim().parse::<usize>().ok())
        .ok_or_else(|| Error::Syntax(format!("expected `degree n`, found {header:?}")))?;
    let gens = lines
        .map(|l| Permutation::parse(l, degree))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::from_generators(degree, gens)
}

/// Writes a group in the generator-file format.
pub fn format_group_file(group: &PermGroup) -> String {
    let mut out = format!("degree {}\n", group.degree());
    for g in group.generators() {
        out.push_str(&g.to_string());
        out.push('\n');
    }
    out
}

fn perm(images: Vec<usize>) -> Permutation {
    Permutation::from_images(images.into_iter().map(|x| x as Point).collect()).unwrap()
}

pub fn cyclic(n: usize) -> PermGroup {
    PermGroup::from_generators(n, vec![perm((0..n).map(|i| (i + 1) % n).collect())]).unwrap()
}

/// Dihedral group of order `2n` on `n` points.
pub fn dihedral(n: usize) -> PermGroup {
    let rot = perm((0..n).map(|i| (i + 1) % n).collect());
    let refl = perm((0..n).map(|i| (n - i) % n).collect());
    PermGroup::from_generators(n, vec![rot, refl]).unwrap()
}

/// Dicyclic group of order `4m` (quaternion for `m` a power of two), in its
/// regular representation. Elements are pairs `(k, e)` for `a^k b^e`.
pub fn dicyclic(m: usize) -> PermGroup {
    let two_m = 2 * m;
    let mul = move |x: &(usize, usize), y: &(usize, usize)| -> (usize, usize) {
        let (k1, e1) = *x;
        let (k2, e2) = *y;
        match (e1, e2) {
            (0, _) => ((k1 + k2) % two_m, e2),
            (_, 0) => ((k1 + two_m - k2) % two_m, 1),
            _ => ((k1 + two_m - k2 + m) % two_m, 0),
        }
    };
    regular_representation(&[(1, 0), (0, 1)], (0, 0), mul)
}

/// `S_b wr S_a` acting imprimitively on `ab` points.
pub fn wreath(b: usize, a: usize) -> Option<PermGroup> {
    if a == 0 || b == 0 {
        return None;
    }
    let n = a * b;
    let mut gens = Vec::new();
    if b >= 2 {
        gens.push(perm((0..n).map(|x| if x < b { (x + 1) % b } else { x }).collect()));
        gens.push(perm(
            (0..n)
                .map(|x| match x {
                    0 => 1,
                    1 => 0,
                    _ => x,
                })
                .collect(),
        ));
    }
    if a >= 2 {
        gens.push(perm((0..n).map(|x| (x + b) % n).collect()));
        gens.push(perm(
            (0..n)
                .map(|x| match x / b {
                    0 => x + b,
                    1 => x - b,
                    _ => x,
                })
                .collect(),
        ));
    }
    Some(PermGroup::from_generators(n, gens).unwrap())
}

/// Affine group `x -> ux + v` over `Z/p` with `u` in the subgroup generated
/// by `mult`.
pub fn affine(p: usize, mult: usize) -> PermGroup {
    let t = perm((0..p).map(|x| (x + 1) % p).collect());
    let m = perm((0..p).map(|x| x * mult % p).collect());
    PermGroup::from_generators(p, vec![t, m]).unwrap()
}

/// Action on the projective line over `F_p` (point `p` is infinity) of
/// `x -> x+1`, `x -> mult*x` and `x -> -1/x`.
fn projective_line(p: usize, mult: usize) -> PermGroup {
    let inf = p;
    let inv = |x: usize| (1..p).find(|y| x * y % p == 1).unwrap();
    let t = perm((0..=p).map(|x| if x == inf { inf } else { (x + 1) % p }).collect());
    let m = perm((0..=p).map(|x| if x == inf { inf } else { x * mult % p }).collect());
    let s = perm(
        (0..=p)
            .map(|x| match x {
                _ if x == inf => 0,
                0 => inf,
                _ => (p - inv(x)) % p,
            })
            .collect(),
    );
    PermGroup::from_generators(p + 1, vec![t, m, s]).unwrap()
}

/// `L_2(7)` on the 8 points of the projective line.
pub fn psl27() -> PermGroup {
    projective_line(7, 2)
}

/// `PGL_2(7)` on the 8 points of the projective line.
pub fn pgl27() -> PermGroup {
    projective_line(7, 3)
}

/// `SL_2(3)` in its regular representation (degree 24).
pub fn sl23() -> PermGroup {
    type M = [u8; 4];
    let mul = |x: &M, y: &M| -> M {
        [
            (x[0] * y[0] + x[1] * y[2]) % 3,
            (x[0] * y[1] + x[1] * y[3]) % 3,
            (x[2] * y[0] + x[3] * y[2]) % 3,
            (x[2] * y[1] + x[3] * y[3]) % 3,
        ]
    };
    regular_representation(&[[1, 1, 0, 1], [0, 1, 2, 0]], [1, 0, 0, 1], mul)
}

/// Right regular representation of the group generated by `gens` under `mul`.
pub fn regular_representation<T, F>(gens: &[T], identity: T, mul: F) -> PermGroup
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> T,
{
    let mut elements = vec![identity];
    let mut index: HashMap<T, usize> = HashMap::from([(elements[0].clone(), 0)]);
    let mut head = 0;
    while head < elements.len() {
        let x = elements[head].clone();
        head += 1;
        for g in gens {
            let y = mul(&x, g);
            if !index.contains_key(&y) {
                index.insert(y.clone(), elements.len());
                elements.push(y);
            }
        }
    }
    let perms = gens
        .iter()
        .map(|g| perm(elements.iter().map(|x| index[&mul(x, g)]).collect()))
        .collect();
    PermGroup::from_generators(elements.len(), perms).unwrap()
}

/// Direct product acting on the disjoint union of the factors' points.
pub fn direct_product(factors: &[PermGroup]) -> PermGroup {
    let degree: usize = factors.iter().map(PermGroup::degree).sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for f in factors {
        for g in f.generators() {
            gens.push(perm(
                (0..degree)
                    .map(|x| {
                        if x >= offset && x < offset + f.degree() {
                            offset + g.image(x - offset)
                        } else {
                            x
                        }
                    })
                    .collect(),
            ));
        }
        offset += f.degree();
    }
    PermGroup::from_generators(degree, gens).unwrap()
}

/// Almost simple groups small enough for full subgroup lattices.
pub const ALMOST_SIMPLE: [&str; 6] = ["A5", "S5", "A6", "S6", "L27", "PGL27"];

/// Soluble groups of order at most 500, with whether each is nilpotent.
pub const SOLUBLE: [(&str, bool); 27] = [
    ("C2", true),
    ("C4", true),
    ("C6", true),
    ("C12", true),
    ("C30", true),
    ("C2^2", true),
    ("C2^3", true),
    ("C3^2", true),
    ("C5^2", true),
    ("C2^4", true),
    ("S3", false),
    ("D8", true),
    ("D10", false),
    ("D12", false),
    ("D16", true),
    ("Q8", true),
    ("Q16", true),
    ("A4", false),
    ("S4", false),
    ("SL23", false),
    ("F20", false),
    ("F21", false),
    ("S3xS3", false),
    ("C3xS3", false),
    ("D8xC3", true),
    ("Q8xC3", true),
    ("S4xC2", false),
];

#[cfg(test)]
mod tests {
    use super::*;

    fn order(spec: &str) -> u64 {
        parse_group_spec(spec).unwrap().order_u64().unwrap()
    }

    #[test]
    fn named_orders() {
        let cases = [
            ("S6", 720),
            ("A5", 60),
            ("C12", 12),
            ("C2^3", 8),
            ("D8", 8),
            ("D10", 10),
            ("Q8", 8),
            ("Q16", 16),
            ("SL23", 24),
            ("L27", 168),
            ("PGL27", 336),
            ("F20", 20),
            ("F21", 21),
            ("wr(2,3)", 48),
            ("wr(3,2)", 72),
            ("S3xS3", 36),
            ("S4xC2", 48),
        ];
        for (spec, expected) in cases {
            assert_eq!(order(spec), expected, "{spec}");
        }
        assert_eq!(parse_group_spec("SL23").unwrap().degree(), 24);
    }

    #[test]
    fn unknown_names_are_errors() {
        for bad in ["X5", "S", "D7", "Q6", "wr(2)", "L28", ""] {
            assert!(
                matches!(parse_group_spec(bad), Err(Error::UnknownGroup(_)) | Err(Error::Io(_))),
                "{bad}"
            );
        }
    }

    #[test]
    fn group_file_round_trip() {
        let g = parse_group_spec("F21").unwrap();
        let text = format_group_file(&g);
        let h = parse_group_file(&text).unwrap();
        assert!(g.same_group(&h).unwrap());
        let h = parse_group_file("# comment\ndegree 4\n(1,2)\n\n(1,2,3,4)\n").unwrap();
        assert_eq!(h.order_u64(), Some(24));
        assert!(parse_group_file("(1,2)").is_err());
    }

    #[test]
    fn catalog_parses() {
        for spec in ALMOST_SIMPLE {
            parse_group_spec(spec).unwrap();
        }
        for (spec, _) in SOLUBLE {
            let g = parse_group_spec(spec).unwrap();
            assert!(g.order_u64().unwrap() <= 500, "{spec}");
        }
    }
}
