//! Finite abelian groups `C_{n_1} x ... x C_{n_r}` in exponent coordinates.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// `sigma^m = sigma_1^{m_1} ... sigma_r^{m_r}` written as its exponent vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupExponent(pub Vec<usize>);

impl GroupExponent {
    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&m| m == 0)
    }
}

impl fmt::Display for GroupExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str(")")
    }
}

impl From<Vec<usize>> for GroupExponent {
    fn from(v: Vec<usize>) -> Self {
        GroupExponent(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    orders: Vec<usize>,
}

impl AbelianGroup {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if let Some(&n) = orders.iter().find(|&&n| n < 2) {
            return Err(Error::Malformed(alloc::format!("cyclic factor of order {n} < 2")));
        }
        Ok(AbelianGroup { orders })
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> usize {
        self.orders.iter().product()
    }

    pub fn identity(&self) -> GroupExponent {
        GroupExponent(vec![0; self.rank()])
    }

    pub fn generator(&self, i: usize) -> GroupExponent {
        let mut e = vec![0; self.rank()];
        e[i] = 1;
        GroupExponent(e)
    }

    pub fn contains(&self, g: &GroupExponent) -> bool {
        g.rank() == self.rank() && g.0.iter().zip(&self.orders).all(|(m, n)| m < n)
    }

    pub fn check(&self, g: &GroupExponent) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::Malformed(alloc::format!(
                "exponent {g} out of range for orders {:?}",
                self.orders
            )))
        }
    }

    /// Mixed-radix index with the last coordinate varying fastest, so that
    /// index order is lexicographic order on exponents.
    pub fn index_of(&self, g: &GroupExponent) -> usize {
        g.0.iter().zip(&self.orders).fold(0, |acc, (m, n)| acc * n + m)
    }

    pub fn element(&self, mut index: usize) -> GroupExponent {
        let mut e = vec![0; self.rank()];
        for (slot, n) in e.iter_mut().zip(&self.orders).rev() {
            *slot = index % n;
            index /= n;
        }
        GroupExponent(e)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupExponent> + '_ {
        (0..self.size()).map(move |i| self.element(i))
    }

    /// Reduces an arbitrary exponent vector into canonical range.
    pub fn reduce(&self, exps: &[usize]) -> GroupExponent {
        GroupExponent(exps.iter().zip(&self.orders).map(|(m, n)| m % n).collect())
    }

    pub fn add(&self, a: &GroupExponent, b: &GroupExponent) -> GroupExponent {
        GroupExponent(
            a.0.iter().zip(&b.0).zip(&self.orders).map(|((x, y), n)| (x + y) % n).collect(),
        )
    }

    pub fn neg(&self, a: &GroupExponent) -> GroupExponent {
        GroupExponent(a.0.iter().zip(&self.orders).map(|(x, n)| (n - x) % n).collect())
    }

    pub fn scale(&self, a: &GroupExponent, k: usize) -> GroupExponent {
        GroupExponent(a.0.iter().zip(&self.orders).map(|(x, n)| (x * (k % n)) % n).collect())
    }

    pub fn order_of(&self, g: &GroupExponent) -> usize {
        g.0.iter().zip(&self.orders).fold(1, |acc, (&m, &n)| acc.lcm(&(n / m.gcd(&n))))
    }

    /// The subgroup generated by `gens`, as a set of exponents.
    pub fn span(&self, gens: &[GroupExponent]) -> BTreeSet<GroupExponent> {
        let mut seen = BTreeSet::new();
        seen.insert(self.identity());
        let mut frontier = vec![self.identity()];
        while let Some(g) = frontier.pop() {
            for h in gens {
                let next = self.add(&g, h);
                if seen.insert(next.clone()) {
                    frontier.push(next);
                }
            }
        }
        seen
    }

    /// A finite abelian group is cyclic iff it has an element whose order is
    /// the group order.
    pub fn span_is_cyclic(&self, gens: &[GroupExponent]) -> bool {
        let span = self.span(gens);
        let size = span.len();
        span.iter().any(|g| self.order_of(g) == size)
    }

    pub fn is_cyclic(&self) -> bool {
        let gens: Vec<_> = (0..self.rank()).map(|i| self.generator(i)).collect();
        self.span_is_cyclic(&gens)
    }

    /// Nonidentity elements of prime order, in lexicographic order.
    pub fn prime_order_elements(&self) -> Vec<(GroupExponent, usize)> {
        self.elements()
            .skip(1)
            .filter_map(|g| {
                let q = self.order_of(&g);
                is_prime(q).then_some((g, q))
            })
            .collect()
    }
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}
