//! Exact-rational evaluation of the probabilistic base-size bound
//! `Q(G,H,c) = Σ |x^G| fpr(x)^c` and the term tables used to bound it.

use num_bigint::{BigInt, BigUint};
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::Lattice;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    G2Subfield,
    Sp4EvenSubfield,
    O10PlusC2,
    /// Classes of a concrete group, from [`qhat_empirical`].
    Empirical,
}

impl Family {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "g2" | "g2_subfield" => Some(Self::G2Subfield),
            "sp4" | "sp4_even" | "sp4_even_subfield" => Some(Self::Sp4EvenSubfield),
            "o10" | "o10plus" | "o10plus_c2" => Some(Self::O10PlusC2),
            _ => None,
        }
    }
}

fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// One summand `multiplicity · v (u/v)^c`: at most `u` elements of the
/// relevant classes lie in `H`, and each such class has at least `v`
/// elements.
#[derive(Clone, Debug, Serialize)]
pub struct Term {
    pub label: String,
    #[serde(serialize_with = "ser_rational")]
    pub u: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub v: BigRational,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundTermTable {
    pub family: Family,
    pub q: u64,
    pub terms: Vec<Term>,
    /// Whether the field-automorphism terms of odd prime order are present.
    pub gamma: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QhatValue {
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    /// Decimal approximation for display only.
    pub approx: f64,
    /// `value < 1`, decided exactly.
    pub verdict: bool,
}

fn approx(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `Σ multiplicity · v (u/v)^c` as an exact rational.
pub fn evaluate_qhat(table: &BoundTermTable, c: u32) -> Result<QhatValue> {
    if table.terms.is_empty() {
        return Err(Error::InvalidParameters("empty term table".into()));
    }
    if c == 0 {
        return Err(Error::InvalidParameters("c must be positive".into()));
    }
    let mut value = BigRational::zero();
    for t in &table.terms {
        if t.multiplicity == 0 || t.u.is_zero() {
            continue;
        }
        let ratio = &t.u / &t.v;
        value += &t.v * num_traits::pow(ratio, c as usize) * BigInt::from(t.multiplicity);
    }
    let verdict = value < BigRational::one();
    Ok(QhatValue {
        approx: approx(&value),
        value,
        verdict,
    })
}

/// The collapsed bound `B (A/B)^c` for classes with `Σ u ≤ A` and every
/// `v ≥ B`, taking `A = Σ u` and `B = min v`.
pub fn collapse_bound(terms: &[Term], c: u32) -> Option<BigRational> {
    let a: BigRational = terms.iter().map(|t| &t.u * BigInt::from(t.multiplicity)).sum();
    let b = terms.iter().map(|t| t.v.clone()).min()?;
    Some(&b * num_traits::pow(a / &b, c as usize))
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `q^(num/den)`, exactly when integral, else rounded up or down to an
/// integer.
fn qpow(q: u64, num: u32, den: u32, round_up: bool) -> BigInt {
    let x = BigUint::from(q).pow(num);
    let r = x.nth_root(den);
    if r.pow(den) == x || !round_up {
        BigInt::from(r)
    } else {
        BigInt::from(r + 1u32)
    }
}

/// `log_2 q`, rounded up when `q` is not a power of two.
fn log2_ceil(q: u64) -> u64 {
    64 - (q - 1).leading_zeros() as u64
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut f = 0;
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
        f += 1;
    }
    (m == 1).then_some((p, f))
}

fn term(label: &str, u: BigRational, v: BigRational, multiplicity: u32) -> Term {
    debug_assert!(u.is_positive() && u <= v, "{label}: u = {u}, v = {v}");
    Term {
        label: label.to_string(),
        u,
        v,
        multiplicity,
    }
}

/// Terms for a subfield subgroup `G_2(q_0)` of `G_2(q)`, `q = q_0^2 >= 9`.
pub fn g2_subfield_terms(q: u64) -> Result<BoundTermTable> {
    let (_, f) = prime_power(q).ok_or_else(|| Error::InvalidParameters(format!("{q} is not a prime power")))?;
    if f % 2 != 0 || q < 9 {
        return Err(Error::InvalidParameters(format!(
            "q = {q} must be a square prime power >= 9"
        )));
    }
    let q0 = q.sqrt();
    let z = |n: u64| int(BigInt::from(n));
    let qq = z(q);
    let p = |e: u32| int(BigInt::from(q).pow(e));
    let one = BigRational::one();
    let gamma = q >= 64;
    let g = gamma as u32;
    let mut terms = vec![
        term(
            "u1/v1 involutions (p odd)",
            p(2) * (p(2) + &qq + &one),
            p(4) * (p(4) + p(2) + &one),
            1,
        ),
        term("u2/v2 long root", p(3) - &one, p(6) - &one, 2),
        term("u3/v3 short root", &qq * (p(3) - &one), p(2) * (p(6) - &one), 1),
        term("u4/v4 other unipotent", p(6), p(10) / z(7), 1),
        term(
            "u5/v5 semisimple A2",
            z(q0).pow(3) * (z(q0).pow(3) + &one),
            p(3) * (p(3) - &one),
            1,
        ),
        term(
            "u6/v6 semisimple A1T1",
            z(2) * p(3) * (z(q0) + &one) * (p(2) + &qq + &one),
            p(5) * (&qq - &one) * (p(4) + p(2) + &one),
            1,
        ),
        term(
            "u7/v7 regular semisimple",
            p(3) * (&qq - &one) * (p(3) - &one),
            p(6) * (&qq - &one) * (p(3) - &one) * (p(2) - &qq + &one),
            1,
        ),
        term(
            "u8/v8 field involutions",
            z(2) * (z(q0) + &one) * z(q0).pow(7),
            p(3) * (p(3) + &one) * (&qq + &one),
            1,
        ),
    ];
    if gamma {
        terms.extend([
            term(
                "u9/v9 field order 3",
                z(4) * int(qpow(q, 14, 3, true)),
                int(qpow(q, 28, 3, false)) / z(2),
                g,
            ),
            term(
                "u10/v10 field order 5",
                z(8) * int(qpow(q, 28, 5, true)),
                int(qpow(q, 56, 5, false)) / z(2),
                g,
            ),
            term("u11/v11 field order >= 7", z(2 * log2_ceil(q)) * p(7), p(12) / z(2), g),
        ]);
    }
    Ok(BoundTermTable {
        family: Family::G2Subfield,
        q,
        terms,
        gamma: Some(gamma),
    })
}

/// Terms for a subfield subgroup `Sp_4(q_0)` of `Sp_4(q)`, `q` even and
/// `q >= 64`.
pub fn sp4_even_subfield_terms(q: u64) -> Result<BoundTermTable> {
    if !q.is_power_of_two() || q < 64 {
        return Err(Error::InvalidParameters(format!(
            "q = {q} must be a power of 2, at least 64"
        )));
    }
    let z = |n: u64| int(BigInt::from(n));
    let qq = z(q);
    let p = |e: u32| int(BigInt::from(q).pow(e));
    let one = BigRational::one();
    let lg = z(q.trailing_zeros() as u64);
    let root = |num, den| int(qpow(q, num, den, true));
    // Field involutions: the larger of the two estimates, one for each
    // degree of the subfield.
    let u5_k2 = &qq * (p(2) + &qq - &one);
    let u5_k3 = root(2, 3) * (root(1, 3) + &one) * (root(2, 3) + &one);
    let terms = vec![
        term("u1/v1 b1, a2 involutions", p(2) - &one, p(4) - &one, 2),
        term(
            "u2/v2 c2 involutions",
            (&qq - &one) * (p(2) - &one),
            (p(2) - &one) * (p(4) - &one),
            1,
        ),
        term(
            "u3/v3 regular semisimple",
            p(2) * (&qq - &one) * (p(2) - &one),
            p(4) * (&qq - &one).pow(2) * (p(2) + &one),
            1,
        ),
        term(
            "u4/v4 non-regular semisimple",
            &lg * p(2) * (&qq + &one) * (root(1, 2) + &one),
            p(3) * (p(2) + &one) * (&qq - &one),
            1,
        ),
        term(
            "u5/v5 field involutions",
            u5_k2.max(u5_k3),
            p(2) * (&qq + &one) * (p(2) + &one),
            1,
        ),
        term(
            "u6/v6 field odd order",
            z(2) * &lg * root(10, 3),
            int(qpow(q, 20, 3, false)) / z(2),
            1,
        ),
    ];
    Ok(BoundTermTable {
        family: Family::Sp4EvenSubfield,
        q,
        terms,
        gamma: None,
    })
}

/// Terms for the `O_2^+(q) wr S_5` subgroup of `PΩ_10^+(q)`, `q >= 8`.
pub fn o10plus_c2_terms(q: u64) -> Result<BoundTermTable> {
    if prime_power(q).is_none() || q < 8 {
        return Err(Error::InvalidParameters(format!("q = {q} must be a prime power >= 8")));
    }
    let z = |n: u64| int(BigInt::from(n));
    let p = |e: u32| int(BigInt::from(q).pow(e));
    let terms = vec![
        term(
            "u1/v1 large classes",
            z(log2_ceil(q)) * z(32) * z(q - 1).pow(5) * z(120),
            p(14),
            1,
        ),
        term("u2/v2 reflections, b1 involutions", z(5 * (q - 1)), p(9) / z(4), 1),
    ];
    Ok(BoundTermTable {
        family: Family::O10PlusC2,
        q,
        terms,
        gamma: None,
    })
}

pub fn family_terms(family: Family, q: u64) -> Result<BoundTermTable> {
    match family {
        Family::G2Subfield => g2_subfield_terms(q),
        Family::Sp4EvenSubfield => sp4_even_subfield_terms(q),
        Family::O10PlusC2 => o10plus_c2_terms(q),
        Family::Empirical => Err(Error::InvalidParameters("empirical tables come from a group".into())),
    }
}

/// Number of elements of order exactly 2 in `S_n`.
pub fn involution_count_sym(n: u64) -> BigUint {
    // I(k) counts elements with square 1 (including the identity).
    let (mut prev, mut cur) = (BigUint::one(), BigUint::one());
    for k in 2..=n {
        let next = &cur + &prev * BigUint::from(k - 1);
        prev = cur;
        cur = next;
    }
    cur - 1u32
}

/// One class of prime-order elements in an empirical evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct ClassData {
    pub representative: String,
    pub element_order: u64,
    pub size: usize,
    /// `|x^G ∩ H|`
    pub in_subgroup: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct EmpiricalQhat {
    pub subgroup_order: usize,
    pub c: u32,
    pub classes: Vec<ClassData>,
    pub table: BoundTermTable,
    pub qhat: QhatValue,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// `Q(G,H,c)` from the true classes of prime-order elements and their
/// intersections with the subgroup `h` of the lattice.
pub fn qhat_empirical(lattice: &Lattice, h: usize, c: u32) -> Result<EmpiricalQhat> {
    if h == lattice.whole() {
        return Err(Error::InvalidParameters("H must be a proper subgroup".into()));
    }
    let table = lattice.table();
    let sub = lattice.subgroup(h);
    let mut classes = Vec::new();
    for class in table.conjugacy_classes() {
        let order = table.element_order(class[0]);
        if !is_prime(order) {
            continue;
        }
        classes.push(ClassData {
            representative: table.element(class[0]).to_string(),
            element_order: order,
            size: class.len(),
            in_subgroup: class.iter().filter(|&&x| sub.contains(x)).count(),
        });
    }
    let terms: Vec<Term> = classes
        .iter()
        .map(|cl| Term {
            label: format!("class of {}", cl.representative),
            u: int(BigInt::from(cl.in_subgroup)),
            v: int(BigInt::from(cl.size)),
            multiplicity: 1,
        })
        .collect();
    let bt = BoundTermTable {
        family: Family::Empirical,
        q: 0,
        terms,
        gamma: None,
    };
    let qhat = evaluate_qhat(&bt, c)?;
    Ok(EmpiricalQhat {
        subgroup_order: sub.order,
        c,
        classes,
        table: bt,
        qhat,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::parse_group_spec;
    use crate::invariants::base_size_subgroup;
    use proptest::prelude::*;

    fn single(u: u64, v: u64) -> BoundTermTable {
        BoundTermTable {
            family: Family::Empirical,
            q: 0,
            terms: vec![Term {
                label: "t".into(),
                u: int(BigInt::from(u)),
                v: int(BigInt::from(v)),
                multiplicity: 1,
            }],
            gamma: None,
        }
    }

    #[test]
    fn single_terms() {
        let r = evaluate_qhat(&single(10, 100), 3).unwrap();
        assert_eq!(r.value, BigRational::new(1.into(), 10.into()));
        assert!(r.verdict);
        let r = evaluate_qhat(&single(7, 7), 5).unwrap();
        assert_eq!(r.value, int(BigInt::from(7)));
        assert!(!r.verdict);
        let mut empty = single(1, 1);
        empty.terms.clear();
        assert!(evaluate_qhat(&empty, 3).is_err());
        assert!(evaluate_qhat(&single(1, 2), 0).is_err());
    }

    #[test]
    fn rounded_powers() {
        assert_eq!(qpow(64, 14, 3, true), BigInt::from(2).pow(28));
        assert_eq!(qpow(81, 1, 2, true), BigInt::from(9));
        // 128^(1/2) = 11.31..
        assert_eq!(qpow(128, 1, 2, true), BigInt::from(12));
        assert_eq!(qpow(128, 1, 2, false), BigInt::from(11));
        assert_eq!(log2_ceil(64), 6);
        assert_eq!(log2_ceil(9), 4);
    }

    #[test]
    fn table_shapes() {
        let g = g2_subfield_terms(9).unwrap();
        assert_eq!(g.gamma, Some(false));
        assert_eq!(g.terms.iter().map(|t| t.multiplicity).sum::<u32>(), 9);
        let g = g2_subfield_terms(64).unwrap();
        assert_eq!(g.terms.iter().map(|t| t.multiplicity).sum::<u32>(), 12);
        let s = sp4_even_subfield_terms(64).unwrap();
        assert_eq!(s.terms.iter().map(|t| t.multiplicity).sum::<u32>(), 7);
        assert_eq!(o10plus_c2_terms(8).unwrap().terms.len(), 2);
        for t in g.terms.iter().chain(&s.terms) {
            assert!(t.u <= t.v, "{}", t.label);
        }
    }

    #[test]
    fn preconditions() {
        assert!(g2_subfield_terms(8).is_err());
        assert!(g2_subfield_terms(4).is_err());
        assert!(g2_subfield_terms(27).is_err());
        assert!(sp4_even_subfield_terms(32).is_err());
        assert!(sp4_even_subfield_terms(81).is_err());
        assert!(o10plus_c2_terms(2).is_err());
        assert!(o10plus_c2_terms(12).is_err());
    }

    #[test]
    fn family_verdicts() {
        for q in [9, 16, 25, 49, 64, 81] {
            assert!(
                evaluate_qhat(&g2_subfield_terms(q).unwrap(), 3).unwrap().verdict,
                "g2 {q}"
            );
        }
        let v256 = evaluate_qhat(&sp4_even_subfield_terms(256).unwrap(), 3).unwrap();
        let v4096 = evaluate_qhat(&sp4_even_subfield_terms(4096).unwrap(), 3).unwrap();
        assert!(v256.verdict && v4096.verdict);
        assert!(v4096.value < v256.value);
        assert!(evaluate_qhat(&o10plus_c2_terms(8).unwrap(), 3).unwrap().verdict);
    }

    #[test]
    fn involutions() {
        assert_eq!(involution_count_sym(1), BigUint::zero());
        assert_eq!(involution_count_sym(2), BigUint::one());
        assert_eq!(involution_count_sym(8), BigUint::from(763u32));
        assert_eq!(involution_count_sym(16), BigUint::from(46206735u32));
        // Direct count in S_n.
        for n in 1..=7 {
            let g = crate::PermGroup::symmetric(n);
            let count = g.elements(10_000).unwrap().iter().filter(|x| x.order() == 2).count();
            assert_eq!(involution_count_sym(n as u64), BigUint::from(count), "n={n}");
        }
    }

    fn point_stabilizer(l: &Lattice, point: usize) -> usize {
        *l.maximal_subgroups()
            .iter()
            .find(|&&m| {
                l.subgroup(m).order * (l.table().group().degree()) == l.order()
                    && l.subgroup(m)
                        .elements
                        .iter()
                        .all(|x| l.table().element(x).image(point) == point)
            })
            .unwrap()
    }

    #[test]
    fn empirical_s5_point_stabilizer() {
        let l = Lattice::new(&parse_group_spec("S5").unwrap(), 1000).unwrap();
        let h = point_stabilizer(&l, 4);
        let e = qhat_empirical(&l, h, 4).unwrap();
        // Transpositions (10, 6 in H) and 3-cycles, 5-cycles, double
        // transpositions.
        assert_eq!(e.classes.len(), 4);
        assert!(!e.qhat.verdict);
        assert_eq!(base_size_subgroup(&l, h).unwrap().value, 4);
        assert!(qhat_empirical(&l, l.whole(), 2).is_err());
    }

    #[test]
    fn empirical_implies_base_size() {
        for spec in ["S5", "A5", "S4", "A6", "L27"] {
            let l = Lattice::new(&parse_group_spec(spec).unwrap(), 1000).unwrap();
            for &h in l.maximal_subgroups() {
                let b = base_size_subgroup(&l, h).unwrap().value;
                for c in 1..=5 {
                    let e = qhat_empirical(&l, h, c).unwrap();
                    if e.qhat.verdict {
                        assert!(b <= c as usize, "{spec} H of order {} c={c}", l.subgroup(h).order);
                    }
                    let collapsed = collapse_bound(&e.table.terms, c).unwrap();
                    assert!(e.qhat.value <= collapsed);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn collapse_dominates(raw in proptest::collection::vec((0u64..200, 1u64..400), 1..8), c in 1u32..6) {
            let terms: Vec<Term> = raw
                .iter()
                .map(|&(u, v)| Term { label: String::new(), u: int(BigInt::from(u.min(v))), v: int(BigInt::from(v)), multiplicity: 1 })
                .collect();
            let t = BoundTermTable { family: Family::Empirical, q: 0, terms: terms.clone(), gamma: None };
            let value = evaluate_qhat(&t, c).unwrap().value;
            prop_assert!(value <= collapse_bound(&terms, c).unwrap());
        }
    }
}
