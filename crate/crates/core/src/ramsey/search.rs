use serde::{Deserialize, Serialize};

use super::{Coloring, RamseyError, SolutionSet};

pub const DEFAULT_SEARCH_BUDGET: u64 = 100_000_000;

/// Node budget from `PRTOOLKIT_BUDGET`, falling back to the default.
pub fn search_budget_from_env() -> u64 {
    std::env::var("PRTOOLKIT_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEARCH_BUDGET)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    /// Lexicographically least coloring (up to renaming colors) with no
    /// monochromatic solution.
    Avoiding { coloring: Coloring, nodes: u64 },
    /// Every `r`-coloring of `[1..n]` has a monochromatic solution.
    Forced { n: u64, r: u32, nodes: u64 },
    Unknown { nodes: u64, budget: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Status {
    Fresh,
    Mono(u32),
    Mixed,
}

struct Undo {
    support: usize,
    status: Status,
    forbid: Option<(usize, u32)>,
}

struct State<'a> {
    r: u32,
    supports: &'a [Vec<usize>],
    /// Support indices containing each value (0-based).
    containing: Vec<Vec<usize>>,
    color: Vec<Option<u32>>,
    open: Vec<usize>,
    status: Vec<Status>,
    forbid: Vec<Vec<u32>>,
    forbidden_colors: Vec<u32>,
    trail: Vec<Undo>,
}

impl State<'_> {
    /// Colors `v` and propagates; `false` on a monochromatic solution or a
    /// value with every color forbidden.
    fn assign(&mut self, v: usize, c: u32) -> bool {
        self.color[v] = Some(c);
        let mut ok = true;
        for i in 0..self.containing[v].len() {
            let s = self.containing[v][i];
            let old = self.status[s];
            self.open[s] -= 1;
            let new = match old {
                Status::Fresh => Status::Mono(c),
                Status::Mono(d) if d == c => old,
                _ => Status::Mixed,
            };
            self.status[s] = new;
            let mut forbid = None;
            if let Status::Mono(d) = new {
                if self.open[s] == 0 {
                    ok = false;
                } else if self.open[s] == 1 {
                    let u = *self.supports[s]
                        .iter()
                        .find(|&&u| self.color[u].is_none())
                        .expect("one open member");
                    self.forbid[u][d as usize] += 1;
                    if self.forbid[u][d as usize] == 1 {
                        self.forbidden_colors[u] += 1;
                        if self.forbidden_colors[u] == self.r {
                            ok = false;
                        }
                    }
                    forbid = Some((u, d));
                }
            }
            self.trail.push(Undo {
                support: s,
                status: old,
                forbid,
            });
            if !ok {
                break;
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize, mark: usize) {
        while self.trail.len() > mark {
            let u = self.trail.pop().expect("nonempty trail");
            self.status[u.support] = u.status;
            self.open[u.support] += 1;
            if let Some((w, d)) = u.forbid {
                self.forbid[w][d as usize] -= 1;
                if self.forbid[w][d as usize] == 0 {
                    self.forbidden_colors[w] -= 1;
                }
            }
        }
        self.color[v] = None;
    }
}

/// Backtracking over `1..=n` in order, trying colors in increasing order.
/// Colors are broken by symmetry: among values that occur in some solution,
/// each new value may use at most one color beyond those already used.
/// Values that occur in no solution get color 0.
pub fn search_avoiding_coloring(
    sols: &SolutionSet,
    r: u32,
    budget: u64,
) -> Result<SearchOutcome, RamseyError> {
    if r == 0 {
        return Err(RamseyError::InvalidParameter("at least one color is needed".into()));
    }
    let n = usize::try_from(sols.n)
        .map_err(|_| RamseyError::InvalidParameter("range too large".into()))?;
    let supports: Vec<Vec<usize>> = sols
        .supports()
        .into_iter()
        .map(|s| s.into_iter().map(|v| v as usize - 1).collect())
        .collect();
    if supports.iter().any(|s| s.len() == 1) {
        return Ok(SearchOutcome::Forced { n: sols.n, r, nodes: 0 });
    }
    let mut containing = vec![Vec::new(); n];
    for (i, s) in supports.iter().enumerate() {
        for &v in s {
            if v >= n {
                return Err(RamseyError::CoverageGap(v as u64 + 1));
            }
            containing[v].push(i);
        }
    }
    let mut st = State {
        r,
        supports: &supports,
        containing,
        color: vec![None; n],
        open: supports.iter().map(Vec::len).collect(),
        status: vec![Status::Fresh; supports.len()],
        forbid: vec![vec![0; r as usize]; n],
        forbidden_colors: vec![0; n],
        trail: Vec::new(),
    };

    let mut nodes = 0u64;
    // Per level: next color to try, trail mark, and the largest color used
    // so far by constrained values (-1 before any).
    let mut next = vec![0u32; n + 1];
    let mut marks = vec![0usize; n + 1];
    let mut max_used = vec![-1i64; n + 1];
    let mut level = 0usize;
    loop {
        if level == n {
            let colors = st.color.iter().map(|c| c.expect("all colored")).collect();
            return Ok(SearchOutcome::Avoiding {
                coloring: Coloring { r, colors },
                nodes,
            });
        }
        let free = st.containing[level].is_empty();
        let limit = if free {
            1
        } else {
            (max_used[level] + 2).min(r as i64) as u32
        };
        let mut advanced = false;
        while next[level] < limit {
            let c = next[level];
            next[level] += 1;
            if st.forbid[level][c as usize] > 0 {
                continue;
            }
            nodes += 1;
            if nodes > budget {
                return Ok(SearchOutcome::Unknown { nodes, budget });
            }
            marks[level] = st.trail.len();
            if st.assign(level, c) {
                max_used[level + 1] = if free {
                    max_used[level]
                } else {
                    max_used[level].max(c as i64)
                };
                level += 1;
                next[level] = 0;
                advanced = true;
                break;
            }
            st.unassign(level, marks[level]);
        }
        if advanced {
            continue;
        }
        if level == 0 {
            return Ok(SearchOutcome::Forced { n: sols.n, r, nodes });
        }
        level -= 1;
        st.unassign(level, marks[level]);
    }
}
