use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use super::monoid::FiniteMonoid;

/// A finite group given by its order and, when recognised, a name such as
/// `S3`, `S4 x S2` or `PSL(3,2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupInfo {
    pub order: usize,
    pub name: String,
}

/// Largest degree tried when matching symmetric groups.
const MAX_DEGREE: usize = 8;

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Multiset of element orders of `S_n`, from cycle types.
fn symmetric_orders(n: usize) -> BTreeMap<usize, usize> {
    // count permutations by cycle type: partitions of n
    fn walk(
        rest: usize,
        max_part: usize,
        parts: &mut Vec<usize>,
        n: usize,
        out: &mut BTreeMap<usize, usize>,
    ) {
        if rest == 0 {
            let mut count = factorial(n);
            let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
            for &p in parts.iter() {
                count /= p;
                *mult.entry(p).or_default() += 1;
            }
            for &m in mult.values() {
                count /= factorial(m);
            }
            let order = parts.iter().fold(1, |a, &p| lcm(a, p));
            *out.entry(order).or_default() += count;
            return;
        }
        for p in (1..=rest.min(max_part)).rev() {
            parts.push(p);
            walk(rest - p, p, parts, n, out);
            parts.pop();
        }
    }
    let mut out = BTreeMap::new();
    walk(n, n, &mut Vec::new(), n, &mut out);
    out
}

fn product_orders(
    a: &BTreeMap<usize, usize>,
    b: &BTreeMap<usize, usize>,
) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for (&x, &cx) in a {
        for (&y, &cy) in b {
            *out.entry(lcm(x, y)).or_default() += cx * cy;
        }
    }
    out
}

/// Identify the group `h` (with identity `e`) inside `m`.
///
/// Symmetric groups and products of two of them are matched by order and
/// by the distribution of element orders; order 168 is reported as
/// `PSL(3,2)` when the group is simple. Anything else is `unrecognized`.
pub fn identify_group(m: &FiniteMonoid, e: usize, h: &[usize]) -> GroupInfo {
    let order = h.len();
    let element_order = |g: usize| {
        let mut x = g;
        let mut k = 1;
        while x != e {
            x = m.mul(x, g);
            k += 1;
        }
        k
    };
    let mut orders: BTreeMap<usize, usize> = BTreeMap::new();
    for &g in h {
        *orders.entry(element_order(g)).or_default() += 1;
    }
    let name = if order == 1 {
        "trivial".to_string()
    } else if let Some(name) = match_symmetric(order, &orders) {
        name
    } else if order == 168 && is_simple(m, e, h) {
        "PSL(3,2)".to_string()
    } else {
        "unrecognized".to_string()
    };
    GroupInfo { order, name }
}

fn match_symmetric(order: usize, orders: &BTreeMap<usize, usize>) -> Option<String> {
    for a in (2..=MAX_DEGREE).rev() {
        for b in 0..=a {
            if factorial(a) * factorial(b) != order {
                continue;
            }
            let sa = symmetric_orders(a);
            let expected = if b <= 1 {
                sa
            } else {
                product_orders(&sa, &symmetric_orders(b))
            };
            if &expected == orders {
                return Some(if b <= 1 {
                    format!("S{a}")
                } else {
                    format!("S{a} x S{b}")
                });
            }
        }
    }
    None
}

/// True iff the normal closure of every non-identity element is the group.
fn is_simple(m: &FiniteMonoid, e: usize, h: &[usize]) -> bool {
    let inverse = |g: usize| {
        *h.iter()
            .find(|&&x| m.mul(g, x) == e)
            .expect("group element")
    };
    let inverses: Vec<usize> = h.iter().map(|&x| inverse(x)).collect();
    let mut done: HashSet<usize> = HashSet::from([e]);
    for &g in h {
        if done.contains(&g) {
            continue;
        }
        let conj: BTreeSet<usize> = h
            .iter()
            .zip(&inverses)
            .map(|(&x, &xi)| m.mul(m.mul(x, g), xi))
            .collect();
        done.extend(conj.iter().copied());
        let mut closure: HashSet<usize> = HashSet::from([e]);
        let mut stack = vec![e];
        while let Some(a) = stack.pop() {
            for &c in &conj {
                let b = m.mul(a, c);
                if closure.insert(b) {
                    stack.push(b);
                }
            }
        }
        if closure.len() != h.len() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_order_counts() {
        let s3 = symmetric_orders(3);
        assert_eq!(s3, BTreeMap::from([(1, 1), (2, 3), (3, 2)]));
        assert_eq!(symmetric_orders(5).values().sum::<usize>(), 120);
    }

    #[test]
    fn cyclic_groups() {
        let c2 = FiniteMonoid::from_fn(2, 0, |a, b| (a + b) % 2).unwrap();
        assert_eq!(identify_group(&c2, 0, &[0, 1]).name, "S2");
        let c6 = FiniteMonoid::from_fn(6, 0, |a, b| (a + b) % 6).unwrap();
        let g = identify_group(&c6, 0, &[0, 1, 2, 3, 4, 5]);
        assert_eq!((g.order, g.name.as_str()), (6, "unrecognized"));
        let c4 = FiniteMonoid::from_fn(4, 0, |a, b| (a + b) % 4).unwrap();
        assert_eq!(identify_group(&c4, 0, &[0, 1, 2, 3]).name, "unrecognized");
        // Klein four group = S2 x S2
        let v4 = FiniteMonoid::from_fn(4, 0, |a, b| a ^ b).unwrap();
        assert_eq!(identify_group(&v4, 0, &[0, 1, 2, 3]).name, "S2 x S2");
    }
}
