//! Finite groups given by multiplication tables.

use crate::error::{Error, Result, Violation};

/// A finite group on `0..order`, with `0` the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Checks closure, identity at `0`, inverses and associativity.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let violations = Self::check_table(&table);
        if !violations.is_empty() {
            return Err(Error::invalid("group table", violations));
        }
        let n = table.len();
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| table[a][b] == 0).expect("checked"))
            .collect();
        Ok(Self { table, inverse })
    }

    fn check_table(table: &[Vec<usize>]) -> Vec<Violation> {
        let n = table.len();
        let mut out = Vec::new();
        if n == 0 {
            out.push(Violation::new("nonempty", "a group needs an identity"));
            return out;
        }
        for (a, row) in table.iter().enumerate() {
            if row.len() != n {
                out.push(Violation::new("shape", format!("row {a} has {} entries", row.len())));
                return out;
            }
            if let Some(&c) = row.iter().find(|&&c| c >= n) {
                out.push(Violation::new("closure", format!("entry {c} in row {a}")));
                return out;
            }
        }
        for a in 0..n {
            if table[0][a] != a || table[a][0] != a {
                out.push(Violation::new("identity", format!("0 is not an identity at {a}")));
            }
            if !(0..n).any(|b| table[a][b] == 0 && table[b][a] == 0) {
                out.push(Violation::new("inverse", format!("{a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        out.push(Violation::new(
                            "associativity",
                            format!("({a}*{b})*{c} != {a}*({b}*{c})"),
                        ));
                        return out;
                    }
                }
            }
        }
        out
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group of order 0");
        Self::from_table((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect())
            .expect("cyclic table")
    }

    pub fn product(&self, other: &Self) -> Self {
        let m = other.order();
        let n = self.order() * m;
        let table = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| self.mul(a / m, b / m) * m + other.mul(a % m, b % m))
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("product of groups")
    }

    /// The group generated by permutations of `0..degree`; elements are
    /// ordered by breadth-first discovery from the identity.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Self {
        let identity: Vec<usize> = (0..degree).collect();
        let mut elements = vec![identity];
        let mut i = 0;
        while i < elements.len() {
            for g in generators {
                let next: Vec<usize> = (0..degree).map(|x| elements[i][g[x]]).collect();
                if !elements.contains(&next) {
                    elements.push(next);
                }
            }
            i += 1;
        }
        let index = |p: &Vec<usize>| elements.iter().position(|e| e == p).expect("closed");
        let table = elements
            .iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| index(&(0..degree).map(|x| a[b[x]]).collect()))
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("permutation group")
    }

    pub fn quaternion() -> Self {
        // Elements ±1, ±i, ±j, ±k encoded as sign * unit with units 1,i,j,k.
        const UNIT: [[(i8, usize); 4]; 4] = [
            [(1, 0), (1, 1), (1, 2), (1, 3)],
            [(1, 1), (-1, 0), (1, 3), (-1, 2)],
            [(1, 2), (-1, 3), (-1, 0), (1, 1)],
            [(1, 3), (1, 2), (-1, 1), (-1, 0)],
        ];
        let decode = |a: usize| (if a < 4 { 1i8 } else { -1 }, a % 4);
        let encode = |s: i8, u: usize| if s > 0 { u } else { u + 4 };
        let table = (0..8)
            .map(|a| {
                (0..8)
                    .map(|b| {
                        let (sa, ua) = decode(a);
                        let (sb, ub) = decode(b);
                        let (s, u) = UNIT[ua][ub];
                        encode(sa * sb * s, u)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(table).expect("quaternion table")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}
