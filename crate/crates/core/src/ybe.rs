//! Set-theoretic solutions `r(a, b) = (λ_a(b), ρ_b(a))` of the Yang–Baxter
//! equation.

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{check, Property, Violation};
use crate::map::is_permutation;
use crate::par;
use crate::semibrace::SemiBrace;

/// A map `r: B×B -> B×B` with pairs encoded row-major as `a*n + b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SetSolution {
    size: usize,
    r: Vec<usize>,
}

impl Serialize for SetSolution {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[usize; 2]> = self.r.iter().map(|&p| [p / self.size, p % self.size]).collect();
        pairs.serialize(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolutionReport {
    pub ybe: bool,
    pub ybe_witness: Option<Vec<usize>>,
    pub left_nondegenerate: bool,
    pub right_nondegenerate: bool,
    pub bijective: bool,
    pub involutive: bool,
    pub cubic: bool,
}

impl SetSolution {
    pub fn from_semibrace(s: &SemiBrace) -> Self {
        let n = s.order();
        let r = (0..n * n)
            .map(|p| {
                let (a, b) = (p / n, p % n);
                s.lambda(a, b) * n + s.rho(b, a)
            })
            .collect();
        SetSolution { size: n, r }
    }

    /// Builds a solution from an explicit pair table, `r[a*n + b] = (x, y)`.
    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Option<Self> {
        if pairs.len() != size * size || pairs.iter().any(|&(x, y)| x >= size || y >= size) {
            return None;
        }
        Some(SetSolution {
            size,
            r: pairs.iter().map(|&(x, y)| x * size + y).collect(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn apply(&self, a: usize, b: usize) -> (usize, usize) {
        let p = self.r[a * self.size + b];
        (p / self.size, p % self.size)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size;
        (0..n * n).map(|p| self.apply(p / n, p % n)).collect()
    }

    /// `(r×id)(id×r)(r×id) = (id×r)(r×id)(id×r)` on every triple, with the
    /// rightmost factor applied first; witness `(a, b, c)`.
    pub fn check_ybe(&self) -> Result<(), Violation> {
        let n = self.size;
        let left = |(x, y): (usize, usize), z: usize| {
            let (x, y) = self.apply(x, y);
            (x, y, z)
        };
        let right = |x: usize, (y, z): (usize, usize)| {
            let (y, z) = self.apply(y, z);
            (x, y, z)
        };
        let w = par::first_witness(n, |a| {
            for b in 0..n {
                for c in 0..n {
                    let (x, y, z) = left((a, b), c);
                    let (x, y, z) = right(x, (y, z));
                    let lhs = left((x, y), z);

                    let (x, y, z) = right(a, (b, c));
                    let (x, y, z) = left((x, y), z);
                    let rhs = right(x, (y, z));
                    if lhs != rhs {
                        return Some(vec![a, b, c]);
                    }
                }
            }
            None
        });
        check(Property::YangBaxter, w)
    }

    /// Every `b ↦ first(r(a, b))` is bijective.
    pub fn is_left_nondegenerate(&self) -> bool {
        let n = self.size;
        (0..n).all(|a| is_permutation(&(0..n).map(|b| self.apply(a, b).0).collect::<Vec<_>>()))
    }

    /// Every `a ↦ second(r(a, b))` is bijective.
    pub fn is_right_nondegenerate(&self) -> bool {
        let n = self.size;
        (0..n).all(|b| is_permutation(&(0..n).map(|a| self.apply(a, b).1).collect::<Vec<_>>()))
    }

    pub fn is_bijective(&self) -> bool {
        is_permutation(&self.r)
    }

    fn power(&self, k: usize) -> Vec<usize> {
        (0..self.r.len())
            .map(|p| (0..k).fold(p, |q, _| self.r[q]))
            .collect()
    }

    /// `r² = id`.
    pub fn is_involutive(&self) -> bool {
        self.power(2).iter().enumerate().all(|(p, &q)| p == q)
    }

    /// `r³ = r`.
    pub fn is_cubic(&self) -> bool {
        self.power(3) == self.r
    }

    pub fn report(&self) -> SolutionReport {
        let ybe = self.check_ybe();
        SolutionReport {
            ybe: ybe.is_ok(),
            ybe_witness: ybe.err().map(|v| v.witness),
            left_nondegenerate: self.is_left_nondegenerate(),
            right_nondegenerate: self.is_right_nondegenerate(),
            bijective: self.is_bijective(),
            involutive: self.is_involutive(),
            cubic: self.is_cubic(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine::compose_affine;
    use crate::families;
    use crate::group::FiniteGroup;

    #[test]
    fn trivial_on_c2() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let r = SetSolution::from_semibrace(&SemiBrace::trivial(&c2));
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(r.apply(a, b), (b, c2.op(c2.op(c2.inv(b), a), b)));
            }
        }
        assert!(r.check_ybe().is_ok());
    }

    #[test]
    fn right_projection_is_degenerate() {
        let c2 = FiniteGroup::cyclic(2).unwrap();
        let s = SemiBrace::new(c2.clone(), &[vec![0, 1], vec![0, 1]]).unwrap();
        let r = SetSolution::from_semibrace(&s);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(r.apply(a, b), (c2.op(a, b), 0));
            }
        }
        let rep = r.report();
        assert!(rep.ybe && rep.left_nondegenerate && !rep.right_nondegenerate);
        assert!(!rep.bijective && rep.cubic);
    }

    #[test]
    fn brace_on_c8_is_involutive() {
        let pt = families::parity_twist(8).unwrap();
        let sq = compose_affine(&pt, &pt).unwrap();
        let r = SetSolution::from_semibrace(&SemiBrace::from_affine(&sq).unwrap());
        let rep = r.report();
        assert!(rep.ybe && rep.involutive && rep.bijective);
    }

    #[test]
    fn non_solution_is_caught() {
        // r(a, b) = (a + 1, b) on two points: one side of the braid relation
        // shifts the first coordinate, the other the second.
        let pairs: Vec<(usize, usize)> = (0..4).map(|p| ((p / 2 + 1) % 2, p % 2)).collect();
        let r = SetSolution::from_pairs(2, &pairs).unwrap();
        assert_eq!(r.check_ybe().unwrap_err().witness, vec![0, 0, 0]);
    }
}
