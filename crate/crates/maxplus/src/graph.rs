//! Small digraph helpers shared by the spectral and cyclic-class layers.

/// Tarjan's strongly connected components over an adjacency list.
/// Components come out in reverse topological order; callers sort as needed.
pub fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<Vec<usize>> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        index: usize,
        idx: Vec<Option<usize>>,
        low: Vec<usize>,
        stack: Vec<usize>,
        on_stack: Vec<bool>,
        comps: Vec<Vec<usize>>,
    }

    // Explicit stack; recursion depth would track the longest path.
    fn connect(root: usize, st: &mut State) {
        let mut call_stack: Vec<(usize, usize)> = vec![(root, 0)];
        st.idx[root] = Some(st.index);
        st.low[root] = st.index;
        st.index += 1;
        st.stack.push(root);
        st.on_stack[root] = true;

        while let Some(&mut (v, ref mut next)) = call_stack.last_mut() {
            if *next < st.adj[v].len() {
                let w = st.adj[v][*next];
                *next += 1;
                if st.idx[w].is_none() {
                    st.idx[w] = Some(st.index);
                    st.low[w] = st.index;
                    st.index += 1;
                    st.stack.push(w);
                    st.on_stack[w] = true;
                    call_stack.push((w, 0));
                } else if st.on_stack[w] {
                    st.low[v] = st.low[v].min(st.idx[w].unwrap());
                }
            } else {
                call_stack.pop();
                if let Some(&(parent, _)) = call_stack.last() {
                    st.low[parent] = st.low[parent].min(st.low[v]);
                }
                if st.low[v] == st.idx[v].unwrap() {
                    let mut comp = Vec::new();
                    loop {
                        let w = st.stack.pop().unwrap();
                        st.on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    st.comps.push(comp);
                }
            }
        }
    }

    let n = adj.len();
    let mut st = State {
        adj,
        index: 0,
        idx: vec![None; n],
        low: vec![0; n],
        stack: Vec::new(),
        on_stack: vec![false; n],
        comps: Vec::new(),
    };
    for v in 0..n {
        if st.idx[v].is_none() {
            connect(v, &mut st);
        }
    }
    st.comps
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn checked_lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scc_on_two_cycles() {
        // 0 <-> 1, 2 <-> 3, edge 1 -> 2
        let adj = vec![vec![1], vec![0, 2], vec![3], vec![2]];
        let mut comps = tarjan_scc(&adj);
        comps.sort();
        assert_eq!(comps, vec![vec![0, 1], vec![2, 3]]);
    }

    #[test]
    fn scc_singletons_without_loops() {
        let adj = vec![vec![1], vec![2], vec![]];
        let comps = tarjan_scc(&adj);
        assert_eq!(comps.len(), 3);
    }

    #[test]
    fn lcm_overflow_detected() {
        assert_eq!(checked_lcm(u64::MAX, u64::MAX - 1), None);
        assert_eq!(checked_lcm(4, 6), Some(12));
    }
}
