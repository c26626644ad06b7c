//! Conjugacy structure: class partition, classes of squares, and the maximal
//! rank of an elementary abelian subgroup.

use super::{Group, GroupLike};

impl Group {
    /// Conjugacy classes as sorted index lists, ordered by least member.
    pub fn conjugacy_classes(&self) -> &Vec<Vec<u32>> {
        self.classes_cache.get_or_init(|| {
            let gens = [self.idx(self.x()), self.idx(self.y())];
            let n = self.group_order() as usize;
            let mut seen = vec![false; n];
            let mut classes = Vec::new();
            for start in 0..n as u32 {
                if seen[start as usize] {
                    continue;
                }
                let mut orbit = vec![start];
                seen[start as usize] = true;
                let mut frontier = vec![start];
                while let Some(e) = frontier.pop() {
                    for &g in &gens {
                        let c = self.conj_idx(e, g);
                        if !seen[c as usize] {
                            seen[c as usize] = true;
                            orbit.push(c);
                            frontier.push(c);
                        }
                    }
                }
                orbit.sort_unstable();
                classes.push(orbit);
            }
            classes
        })
    }

    pub fn class_count(&self) -> usize {
        self.conjugacy_classes().len()
    }

    /// Conjugacy class of one element, as sorted indices.
    pub fn class_of(&self, g: u32) -> &[u32] {
        self.conjugacy_classes()
            .iter()
            .find(|c| c.binary_search(&g).is_ok())
            .expect("classes partition the group")
    }

    /// Number of conjugacy classes contained in the set of squares. The
    /// square set is closed under conjugation, so a class lies inside it as
    /// soon as one member is a square.
    pub fn squares_class_count(&self) -> u64 {
        let n = self.group_order() as usize;
        let mut is_square = vec![false; n];
        for g in 0..n as u32 {
            is_square[self.mul_idx(g, g) as usize] = true;
        }
        self.conjugacy_classes()
            .iter()
            .filter(|c| is_square[c[0] as usize])
            .count() as u64
    }

    /// Maximal GF(2)-dimension of a subgroup generated by pairwise commuting
    /// involutions, by backtracking over the commuting graph.
    pub fn elementary_abelian_rank(&self) -> u32 {
        let involutions: Vec<u32> = (0..self.group_order() as u32)
            .filter(|&g| g != 0 && self.mul_idx(g, g) == 0)
            .collect();
        let commute =
            |a: u32, b: u32| -> bool { self.mul_idx(a, b) == self.mul_idx(b, a) };

        // span: current elementary abelian subgroup as a sorted index set.
        fn extend(
            group: &Group,
            involutions: &[u32],
            commute: &dyn Fn(u32, u32) -> bool,
            chosen: &mut Vec<u32>,
            span: &Vec<u32>,
            from: usize,
            best: &mut u32,
        ) {
            *best = (*best).max(chosen.len() as u32);
            for (offset, &cand) in involutions[from..].iter().enumerate() {
                if span.binary_search(&cand).is_ok() {
                    continue; // already spanned, no rank gain
                }
                if !chosen.iter().all(|&c| commute(c, cand)) {
                    continue;
                }
                // New span = span ∪ span*cand.
                let mut new_span: Vec<u32> =
                    span.iter().map(|&s| group.mul_idx(s, cand)).collect();
                new_span.extend_from_slice(span);
                new_span.sort_unstable();
                chosen.push(cand);
                extend(
                    group,
                    involutions,
                    commute,
                    chosen,
                    &new_span,
                    from + offset + 1,
                    best,
                );
                chosen.pop();
            }
        }

        let mut best = 0u32;
        let mut chosen = Vec::new();
        extend(
            self,
            &involutions,
            &commute,
            &mut chosen,
            &vec![0u32],
            0,
            &mut best,
        );
        best
    }
}
