//! Trivalent spines of handlebodies.

use super::TqftError;

/// One edge of a spine. `Joins(v, v)` is a loop at `v` and counts twice
/// toward its degree. `Free` is the vertex-less loop that only occurs as the
/// single edge of the genus-1 spine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpineEdge {
    Free,
    Joins(usize, usize),
}

/// A trivalent spine of a genus-`g` handlebody. For `g >= 2` this is a
/// connected graph with `2g - 2` trivalent vertices and `3g - 3` edges
/// (first Betti number `g`); for `g = 1` it degenerates to a single free
/// loop with no vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrivalentSpine {
    genus: u32,
    num_vertices: usize,
    edges: Vec<SpineEdge>,
}

impl TrivalentSpine {
    pub fn new(
        genus: u32,
        num_vertices: usize,
        edges: Vec<SpineEdge>,
    ) -> Result<Self, TqftError> {
        let spine = TrivalentSpine {
            genus,
            num_vertices,
            edges,
        };
        spine.validate()?;
        Ok(spine)
    }

    /// The fixed spine used for enumeration at each genus: a free loop at
    /// genus 1, the theta graph at genus 2, and for `g >= 3` a caterpillar
    /// chain (end loops joined through alternating single and doubled path
    /// edges). Admissibility decomposes along the chain, which is what makes
    /// transfer-matrix counting possible for large `r` and `g`.
    pub fn canonical(genus: u32) -> Result<Self, TqftError> {
        match genus {
            0 => Err(TqftError::InvalidGenus(0)),
            1 => Self::new(1, 0, vec![SpineEdge::Free]),
            2 => Self::new(
                2,
                2,
                vec![
                    SpineEdge::Joins(0, 1),
                    SpineEdge::Joins(0, 1),
                    SpineEdge::Joins(0, 1),
                ],
            ),
            g => {
                let n = (2 * g - 2) as usize;
                let mut edges = Vec::with_capacity((3 * g - 3) as usize);
                edges.push(SpineEdge::Joins(0, 0));
                edges.push(SpineEdge::Joins(0, 1));
                let mut v = 1;
                for _ in 0..(g - 2) {
                    edges.push(SpineEdge::Joins(v, v + 1));
                    edges.push(SpineEdge::Joins(v, v + 1));
                    edges.push(SpineEdge::Joins(v + 1, v + 2));
                    v += 2;
                }
                edges.push(SpineEdge::Joins(n - 1, n - 1));
                Self::new(g, n, edges)
            }
        }
    }

    /// The complete graph on four vertices: a genus-3 trivalent spine not
    /// isomorphic to the canonical caterpillar (it has no loops or parallel
    /// edges). Used to check that admissible counts are spine-independent.
    pub fn tetrahedral() -> Self {
        Self::new(
            3,
            4,
            vec![
                SpineEdge::Joins(0, 1),
                SpineEdge::Joins(0, 2),
                SpineEdge::Joins(0, 3),
                SpineEdge::Joins(1, 2),
                SpineEdge::Joins(1, 3),
                SpineEdge::Joins(2, 3),
            ],
        )
        .expect("K4 is a valid genus-3 spine")
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[SpineEdge] {
        &self.edges
    }

    /// Incident edge indices per vertex, loops listed twice. Each list has
    /// length exactly 3 on a valid spine.
    pub(crate) fn vertex_incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.num_vertices];
        for (i, edge) in self.edges.iter().enumerate() {
            if let SpineEdge::Joins(a, b) = *edge {
                inc[a].push(i);
                if a == b {
                    inc[a].push(i);
                } else {
                    inc[b].push(i);
                }
            }
        }
        inc
    }

    fn validate(&self) -> Result<(), TqftError> {
        let fail = |reason: &str| {
            Err(TqftError::InvalidSpine {
                genus: self.genus,
                reason: reason.to_string(),
            })
        };
        if self.genus == 0 {
            return Err(TqftError::InvalidGenus(0));
        }
        if self.genus == 1 {
            if self.num_vertices != 0 || self.edges != vec![SpineEdge::Free] {
                return fail("genus 1 requires exactly one free loop and no vertices");
            }
            return Ok(());
        }
        let g = self.genus as usize;
        if self.num_vertices != 2 * g - 2 {
            return fail("vertex count must be 2g - 2");
        }
        if self.edges.len() != 3 * g - 3 {
            return fail("edge count must be 3g - 3");
        }
        for edge in &self.edges {
            match *edge {
                SpineEdge::Free => return fail("free loops only occur at genus 1"),
                SpineEdge::Joins(a, b) => {
                    if a >= self.num_vertices || b >= self.num_vertices {
                        return fail("edge endpoint out of range");
                    }
                }
            }
        }
        let inc = self.vertex_incidence();
        if inc.iter().any(|edges| edges.len() != 3) {
            return fail("every vertex must be trivalent (loops count twice)");
        }
        if !self.is_connected() {
            return fail("spine must be connected");
        }
        // Betti number E - V + 1 = g is then automatic from the counts.
        Ok(())
    }

    fn is_connected(&self) -> bool {
        if self.num_vertices == 0 {
            return true;
        }
        let mut seen = vec![false; self.num_vertices];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for edge in &self.edges {
                if let SpineEdge::Joins(a, b) = *edge {
                    let next = if a == v {
                        b
                    } else if b == v {
                        a
                    } else {
                        continue;
                    };
                    if !seen[next] {
                        seen[next] = true;
                        stack.push(next);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}
