//! Brute-force oracles, deliberately independent of the library algorithms.

#![allow(dead_code, clippy::needless_range_loop, clippy::too_many_arguments)]

use std::collections::BTreeSet;

use multitori::Graph;

pub fn adjacency_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in g.edges() {
        adj[a as usize][b as usize] = true;
        adj[b as usize][a as usize] = true;
    }
    adj
}

/// Every simple cycle of length 3..=kmax that has no chord, keyed by its
/// sorted edge set. Enumerates all simple paths from every start vertex
/// without any pruning, then filters.
pub fn brute_chordless_cycles(g: &Graph, kmax: usize) -> BTreeSet<Vec<(u32, u32)>> {
    let adj = adjacency_matrix(g);
    let n = g.vertex_count();
    let mut found = BTreeSet::new();
    for s in 0..n {
        let mut stack = vec![vec![s]];
        while let Some(path) = stack.pop() {
            let last = *path.last().unwrap();
            if path.len() >= 3 && adj[last][s] {
                let mut edges: Vec<(u32, u32)> = (0..path.len())
                    .map(|i| {
                        let a = path[i] as u32;
                        let b = path[(i + 1) % path.len()] as u32;
                        (a.min(b), a.max(b))
                    })
                    .collect();
                edges.sort_unstable();
                let chordless = (0..path.len()).all(|i| {
                    (0..path.len()).all(|j| {
                        let cyc = (i + 1) % path.len() == j || (j + 1) % path.len() == i || i == j;
                        cyc || !adj[path[i]][path[j]]
                    })
                });
                if chordless {
                    found.insert(edges);
                }
            }
            if path.len() < kmax {
                for &w in g.neighbors(last as u32) {
                    let w = w as usize;
                    if !path.contains(&w) {
                        let mut p = path.clone();
                        p.push(w);
                        stack.push(p);
                    }
                }
            }
        }
    }
    found
}

pub fn floyd_warshall(g: &Graph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let inf = u32::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(a, b) in g.edges() {
        d[a as usize][b as usize] = 1;
        d[b as usize][a as usize] = 1;
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// The co relation as a boolean matrix over edge ids.
pub fn brute_co_matrix(g: &Graph) -> Vec<Vec<bool>> {
    let d = floyd_warshall(g);
    let edges = g.edges();
    let m = edges.len();
    let mut co = vec![vec![false; m]; m];
    for i in 0..m {
        for j in 0..m {
            let (a, b) = edges[i];
            let (c, e) = edges[j];
            for (u, v) in [(a, b), (b, a)] {
                for (x, y) in [(c, e), (e, c)] {
                    let (u, v, x, y) = (u as usize, v as usize, x as usize, y as usize);
                    if d[v][x] == d[v][y] + 1
                        && d[v][y] + 1 == d[u][x] + 1
                        && d[u][x] + 1 == d[u][y]
                    {
                        co[i][j] = true;
                    }
                }
            }
        }
    }
    co
}

/// Transitive closure classes of a relation, sorted, plus whether the
/// relation was already transitive.
pub fn closure_classes(rel: &[Vec<bool>]) -> (Vec<Vec<usize>>, bool) {
    let m = rel.len();
    let mut clo: Vec<Vec<bool>> = rel.to_vec();
    for k in 0..m {
        for i in 0..m {
            if clo[i][k] {
                for j in 0..m {
                    if clo[k][j] {
                        clo[i][j] = true;
                    }
                }
            }
        }
    }
    let transitive = clo == rel;
    let mut classes: BTreeSet<Vec<usize>> = BTreeSet::new();
    for i in 0..m {
        classes.insert((0..m).filter(|&j| clo[i][j] || i == j).collect());
    }
    (classes.into_iter().collect(), transitive)
}

/// All isomorphisms from `a` to `b` (up to `limit`), by backtracking with
/// degree filtering.
pub fn isomorphisms(a: &Graph, b: &Graph, limit: usize) -> Vec<Vec<u32>> {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Vec::new();
    }
    let adj_a = adjacency_matrix(a);
    let adj_b = adjacency_matrix(b);
    let mut out = Vec::new();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    // visit vertices in BFS order so partial maps stay connected
    let order: Vec<usize> = {
        let d = a.bfs_distances(0);
        let mut o: Vec<usize> = (0..n).collect();
        o.sort_by_key(|&v| d[v]);
        o
    };
    fn go(
        k: usize,
        order: &[usize],
        adj_a: &[Vec<bool>],
        adj_b: &[Vec<bool>],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<u32>>,
        limit: usize,
    ) {
        if out.len() >= limit {
            return;
        }
        if k == order.len() {
            out.push(map.iter().map(|&x| x as u32).collect());
            return;
        }
        let v = order[k];
        let deg_v = adj_a[v].iter().filter(|&&x| x).count();
        for w in 0..adj_b.len() {
            if used[w] || adj_b[w].iter().filter(|&&x| x).count() != deg_v {
                continue;
            }
            let ok = order[..k].iter().all(|&u| adj_a[v][u] == adj_b[w][map[u]]);
            if ok {
                map[v] = w;
                used[w] = true;
                go(k + 1, order, adj_a, adj_b, map, used, out, limit);
                used[w] = false;
                map[v] = usize::MAX;
            }
        }
    }
    go(
        0, &order, &adj_a, &adj_b, &mut map, &mut used, &mut out, limit,
    );
    out
}
