//! Admissible labelings of trivalent spines: enumeration by backtracking
//! (lexicographic in edge order) and fast transfer-matrix counting along the
//! canonical caterpillar chain.

use serde::{Deserialize, Serialize};

use super::{Level, TqftError, TrivalentSpine};

/// An admissible labeling, stored as one label per spine edge in edge order.
/// Serializes as a plain JSON array of integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AdmissibleLabeling {
    labels: Vec<u16>,
}

impl AdmissibleLabeling {
    pub fn labels(&self) -> &[u16] {
        &self.labels
    }
}

/// All admissible labelings of `spine`, in lexicographic order by edge index
/// then label. Every labeling of the genus-1 free loop is admissible.
pub fn enumerate_admissible(level: &Level, spine: &TrivalentSpine) -> Vec<AdmissibleLabeling> {
    let mut out = Vec::new();
    for_each_admissible(level, spine, |labels| {
        out.push(AdmissibleLabeling {
            labels: labels.to_vec(),
        });
    });
    out
}

/// Number of admissible labelings of `spine`, by the same backtracking walk
/// as [`enumerate_admissible`] but without materializing them.
pub fn count_admissible(level: &Level, spine: &TrivalentSpine) -> u64 {
    let mut count = 0u64;
    for_each_admissible(level, spine, |_| count += 1);
    count
}

/// Number of admissible labelings of the canonical spine of `genus`,
/// computed without search: the label-set size at genus 1, a direct triple
/// count on the theta graph at genus 2, and a transfer-matrix product along
/// the caterpillar chain for `g >= 3`.
pub fn count_admissible_canonical(level: &Level, genus: u32) -> Result<u128, TqftError> {
    let labels: Vec<u16> = level.labels().iter().collect();
    match genus {
        0 => Err(TqftError::InvalidGenus(0)),
        1 => Ok(labels.len() as u128),
        2 => {
            let mut count = 0u128;
            for &a in &labels {
                for &b in &labels {
                    for &c in &labels {
                        if level.admissible_triple(a, b, c) {
                            count += 1;
                        }
                    }
                }
            }
            Ok(count)
        }
        g => {
            let m = labels.len();
            // End weight: labelings (a, a, c) of a loop vertex seen from its
            // chain edge c.
            let w: Vec<u128> = labels
                .iter()
                .map(|&c| {
                    labels
                        .iter()
                        .filter(|&&a| level.admissible_triple(a, a, c))
                        .count() as u128
                })
                .collect();
            // Transfer across one doubled edge: pairs (p, q) compatible with
            // the chain labels c on the left and c' on the right.
            let t: Vec<Vec<u128>> = labels
                .iter()
                .map(|&c| {
                    labels
                        .iter()
                        .map(|&c2| {
                            let mut n = 0u128;
                            for &p in &labels {
                                for &q in &labels {
                                    if level.admissible_triple(c, p, q)
                                        && level.admissible_triple(p, q, c2)
                                    {
                                        n += 1;
                                    }
                                }
                            }
                            n
                        })
                        .collect()
                })
                .collect();
            let mut v = w.clone();
            for _ in 0..(g - 2) {
                v = (0..m)
                    .map(|j| (0..m).map(|i| v[i] * t[i][j]).sum())
                    .collect();
            }
            Ok(v.iter().zip(&w).map(|(a, b)| a * b).sum())
        }
    }
}

fn for_each_admissible(level: &Level, spine: &TrivalentSpine, mut visit: impl FnMut(&[u16])) {
    let labels: Vec<u16> = level.labels().iter().collect();
    let num_edges = spine.num_edges();
    // A vertex can be checked as soon as its highest incident edge is
    // assigned; group the checks by that edge index so each backtracking
    // step prunes as early as possible.
    let mut checks_at: Vec<Vec<[usize; 3]>> = vec![Vec::new(); num_edges];
    for inc in spine.vertex_incidence() {
        let tri = [inc[0], inc[1], inc[2]];
        let last = *tri.iter().max().expect("trivalent vertex");
        checks_at[last].push(tri);
    }
    let mut assignment = vec![0u16; num_edges];
    descend(
        level,
        &labels,
        &checks_at,
        &mut assignment,
        0,
        &mut visit,
    );
}

fn descend(
    level: &Level,
    labels: &[u16],
    checks_at: &[Vec<[usize; 3]>],
    assignment: &mut Vec<u16>,
    depth: usize,
    visit: &mut impl FnMut(&[u16]),
) {
    if depth == assignment.len() {
        visit(assignment);
        return;
    }
    for &label in labels {
        assignment[depth] = label;
        let ok = checks_at[depth].iter().all(|&[a, b, c]| {
            level.admissible_triple(assignment[a], assignment[b], assignment[c])
        });
        if ok {
            descend(level, labels, checks_at, assignment, depth + 1, visit);
        }
    }
}
