//! Published reference values that reports are compared against.

use serde::Serialize;

use crate::models::AnyModel;

/// Diameters of the type A associahedra, ranks 2 to 9.
const DIAMETER_A: [u32; 8] = [2, 4, 5, 7, 9, 11, 12, 15];
/// Diameters of the cyclohedra, ranks 2 to 8.
const DIAMETER_B: [u32; 7] = [3, 5, 7, 9, 11, 14, 16];

#[derive(Debug, Clone, Serialize)]
pub struct Expectation<T> {
    pub value: T,
    pub claim: &'static str,
}

pub fn diameter(model: &AnyModel) -> Option<Expectation<u32>> {
    match model {
        AnyModel::A(m) => DIAMETER_A.get(m.n().checked_sub(2)?).map(|&v| Expectation {
            value: v,
            claim: "type A diameter table",
        }),
        AnyModel::B(m) => DIAMETER_B.get(m.n().checked_sub(2)?).map(|&v| Expectation {
            value: v,
            claim: "type B diameter table",
        }),
        AnyModel::D(m) => Some(Expectation {
            value: 2 * m.n() - 2,
            claim: "type D diameter is 2n-2",
        }),
        _ => None,
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub fn vertex_count(model: &AnyModel) -> Option<Expectation<u64>> {
    match model {
        AnyModel::A(m) => {
            let n = m.n() as u64 + 1;
            Some(Expectation {
                value: binomial(2 * n, n) / (n + 1),
                claim: "type A count is Catalan(n+1)",
            })
        }
        AnyModel::B(m) => {
            let n = m.n() as u64;
            Some(Expectation {
                value: binomial(2 * n, n),
                claim: "type B count is C(2n, n)",
            })
        }
        AnyModel::D(m) => {
            let n = m.n() as u64;
            Some(Expectation {
                value: (3 * n - 2) * binomial(2 * n - 2, n - 1) / n,
                claim: "type D count is (3n-2)/n C(2n-2, n-1)",
            })
        }
        _ => None,
    }
}

/// Whether the non-leaving-face property is expected to hold.
pub fn nlfp_holds(model: &AnyModel) -> Option<Expectation<bool>> {
    match model {
        AnyModel::A(_) | AnyModel::B(_) | AnyModel::D(_) => Some(Expectation {
            value: true,
            claim: "NLFP holds for finite types A, B and D",
        }),
        AnyModel::K(m) if (m.m(), m.k()) == (8, 2) => Some(Expectation {
            value: false,
            claim: "the 2-triangulations of the octagon violate NLFP",
        }),
        AnyModel::K(m) if m.k() == 1 => Some(Expectation {
            value: true,
            claim: "1-triangulations are type A",
        }),
        AnyModel::G(g) => {
            let name = g.graph().name();
            let size = |p: &str| name.strip_prefix(p).and_then(|s| s.parse::<usize>().ok());
            if let Some(leaves) = size("star-") {
                (leaves >= 5).then_some(Expectation {
                    value: false,
                    claim: "stellohedra with at least 5 leaves violate NLFP",
                })
            } else if size("path-").is_some() || size("cycle-").is_some() {
                Some(Expectation {
                    value: true,
                    claim: "path and cycle graph associahedra are types A and B",
                })
            } else {
                None
            }
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use flipgraph::typed::TypeD;

    #[test]
    fn d_counts() {
        let c = |n| vertex_count(&AnyModel::D(TypeD::new(n).unwrap())).unwrap().value;
        assert_eq!((c(3), c(4)), (14, 50));
    }
}
