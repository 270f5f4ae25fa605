use std::collections::VecDeque;

use super::{GroupHom, Presentation, PresentationError, Word};

/// An edge of a graph of groups. Both homomorphisms start at the same edge
/// group (generators `mu, lambda` for a torus) and land in the presentations
/// of `source` and `target` respectively.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupEdge {
    pub source: usize,
    pub target: usize,
    pub to_source: GroupHom,
    pub to_target: GroupHom,
    /// Name for the stable letter if this edge ends up outside the spanning tree.
    pub stable_name: Option<String>,
}

/// Indices of edges in the BFS spanning tree rooted at node 0. Incident edges
/// are scanned in `(source, target, edge index)` order.
pub(crate) fn spanning_tree(
    node_count: usize,
    edges: &[(usize, usize)],
) -> Result<Vec<bool>, PresentationError> {
    let mut order: Vec<usize> = (0..edges.len()).collect();
    order.sort_by_key(|&e| (edges[e].0, edges[e].1, e));
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); node_count];
    for &e in &order {
        let (a, b) = edges[e];
        incident[a].push(e);
        if b != a {
            incident[b].push(e);
        }
    }
    let mut seen = vec![false; node_count];
    let mut in_tree = vec![false; edges.len()];
    let mut queue = VecDeque::new();
    seen[0] = true;
    queue.push_back(0);
    while let Some(u) = queue.pop_front() {
        for &e in &incident[u] {
            let (a, b) = edges[e];
            let other = if a == u { b } else { a };
            if !seen[other] {
                seen[other] = true;
                in_tree[e] = true;
                queue.push_back(other);
            }
        }
    }
    if let Some(missing) = seen.iter().position(|s| !s) {
        return Err(PresentationError::Disconnected(missing));
    }
    Ok(in_tree)
}

/// Presentation of the fundamental group of a graph of groups.
///
/// Generators are the node generators in node order followed by one stable
/// letter per edge outside the BFS spanning tree. Relators are the node
/// relators, then for each edge and each edge-group generator `g` either
/// `img0(g) img1(g)^-1` (tree edge) or `s img0(g) s^-1 img1(g)^-1`;
/// relators that reduce to the empty word are dropped.
pub fn graph_of_groups(
    nodes: &[Presentation],
    edges: &[GroupEdge],
) -> Result<Presentation, PresentationError> {
    if nodes.is_empty() {
        return Err(PresentationError::Empty);
    }
    let mut offsets = Vec::with_capacity(nodes.len());
    let mut names = Vec::new();
    let mut relators = Vec::new();
    for p in nodes {
        offsets.push(names.len());
        names.extend(p.generators().iter().cloned());
    }
    for (p, &off) in nodes.iter().zip(&offsets) {
        relators.extend(p.relators().iter().map(|r| r.shifted(off)));
    }

    let mut ends = Vec::with_capacity(edges.len());
    for (i, e) in edges.iter().enumerate() {
        for (end, (node, hom)) in [(e.source, &e.to_source), (e.target, &e.to_target)]
            .into_iter()
            .enumerate()
        {
            let wrap = |source: PresentationError| PresentationError::EdgeWord {
                edge: i,
                end,
                source: Box::new(source),
            };
            let p = nodes.get(node).ok_or(PresentationError::EdgeEndpoint {
                edge: i,
                node,
                count: nodes.len(),
            })?;
            if hom.target_rank() != p.num_generators() {
                return Err(wrap(PresentationError::Arity {
                    expected: p.num_generators(),
                    found: hom.target_rank(),
                }));
            }
        }
        if e.to_source.source_rank() != e.to_target.source_rank() {
            return Err(PresentationError::EdgeWord {
                edge: i,
                end: 1,
                source: Box::new(PresentationError::Arity {
                    expected: e.to_source.source_rank(),
                    found: e.to_target.source_rank(),
                }),
            });
        }
        ends.push((e.source, e.target));
    }

    let in_tree = spanning_tree(nodes.len(), &ends)?;
    for (i, e) in edges.iter().enumerate() {
        let s_off = offsets[e.source];
        let t_off = offsets[e.target];
        let stable = if in_tree[i] {
            None
        } else {
            let idx = names.len();
            names.push(e.stable_name.clone().unwrap_or_else(|| format!("s{i}")));
            Some(Word::generator(idx))
        };
        for g in 0..e.to_source.source_rank() {
            let a = e.to_source.image(g).shifted(s_off);
            let b = e.to_target.image(g).shifted(t_off);
            let lhs = match &stable {
                Some(s) => a.conjugate_by(s),
                None => a,
            };
            let r = lhs.concat(&b.inverse());
            if !r.is_empty() {
                relators.push(r);
            }
        }
    }
    Presentation::new(names, relators)
}

#[cfg(test)]
mod tests {
    use super::super::{abelianize, parse_word};
    use super::*;
    use crate::chain::AbelianGroup;

    fn hom(target: &Presentation, images: &[&str]) -> GroupHom {
        let words = images
            .iter()
            .map(|s| parse_word(s, target.generators()).unwrap())
            .collect();
        GroupHom::new(target.num_generators(), words).unwrap()
    }

    #[test]
    fn single_node() {
        let a = Presentation::free(["a"]);
        let p = graph_of_groups(&[a.clone()], &[]).unwrap();
        assert_eq!(p, a);
    }

    #[test]
    fn amalgamation_over_z() {
        let a = Presentation::free(["a"]);
        let b = Presentation::free(["b"]);
        let e = GroupEdge {
            source: 0,
            target: 1,
            to_source: hom(&a, &["a", "1"]),
            to_target: hom(&b, &["b", "1"]),
            stable_name: None,
        };
        let p = graph_of_groups(&[a, b], &[e]).unwrap();
        assert_eq!(p.to_string(), "< a, b | a*b^-1 >");
        assert_eq!(abelianize(&p), AbelianGroup::free(1));
    }

    #[test]
    fn hnn_self_edge() {
        let a = Presentation::free(["a"]);
        let e = GroupEdge {
            source: 0,
            target: 0,
            to_source: hom(&a, &["a", "1"]),
            to_target: hom(&a, &["a", "1"]),
            stable_name: None,
        };
        let p = graph_of_groups(&[a], &[e]).unwrap();
        assert_eq!(p.to_string(), "< a, s0 | s0*a*s0^-1*a^-1 >");
        assert_eq!(abelianize(&p), AbelianGroup::free(2));
    }

    #[test]
    fn disconnected_is_rejected() {
        let a = Presentation::free(["a"]);
        let b = Presentation::free(["b"]);
        assert_eq!(
            graph_of_groups(&[a, b], &[]),
            Err(PresentationError::Disconnected(1))
        );
    }

    #[test]
    fn bfs_tree_prefers_lowest_edges() {
        // triangle 0-1, 1-2, 0-2: BFS from 0 takes 0-1 and 0-2.
        let tree = spanning_tree(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(tree, vec![true, false, true]);
        // parallel edges: the first one wins
        let tree = spanning_tree(2, &[(0, 1), (0, 1)]).unwrap();
        assert_eq!(tree, vec![true, false]);
    }
}
