//! Recursive fraction-free block computation of the adjugate and determinant.
//!
//! For a matrix of order `2n` split as
//!
//! ```text
//!     ( A  C )
//!     ( B  D )
//! ```
//!
//! and a scale `gamma` such that every order-`k` minor is divisible by
//! `gamma^(k-1)`, one step computes
//!
//! ```text
//! stage 1   {alpha, A*} = rec(A, gamma)  ||  {beta, B*} = rec(B, gamma)
//! stage 2   N = B* D / gamma  ||  M = A* C / gamma,  then F = alpha N - beta M
//! stage 3   {phi, F*} = rec(F, alpha beta)
//! stage 4   phi' = phi / gamma  ||  H = F* A* / (alpha gamma)  ||  L = F* B* / (beta gamma)
//! stage 5   H' = (phi' A* + M H) / alpha  ||  L' = -(M L) / alpha
//! ```
//!
//! and returns `{phi', [[H', L'], [-H, L]]}`, which equal
//! `gamma^(1-2n) det` and `gamma^(2-2n) adj` of the input. Every division is
//! exact; a remainder means a violated precondition and is reported as an
//! error. The recursion bottoms out at order two with
//! `{(ad - bc) / gamma, [[d, -c], [-b, a]]}`.
//!
//! Items separated by `||` are independent. [`Mode::Parallel`] runs them
//! with `rayon::join`; [`Mode::Sequential`] runs them in order. Both produce
//! identical results and identical [`RunStats`].

use rayon::join;

use crate::domain::Domain;
use crate::error::{Block, Error, Result};
use crate::matrix::{Classical, MatMul, Matrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    Sequential,
    #[default]
    Parallel,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::Sequential => "seq",
            Mode::Parallel => "par",
        })
    }
}

/// Operation counts of one run.
///
/// Counts are summed when results are merged. `critical_path_stages` is the
/// length of the longest chain of dependent stages; it is a property of the
/// task graph, not of the schedule that executed it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RunStats {
    pub matmul_count: u64,
    pub exact_div_count: u64,
    pub recursion_calls: u64,
    pub critical_path_stages: u64,
}

impl RunStats {
    /// Stats of a single stage doing `matmuls` products and `divs` divisions.
    fn stage(matmuls: u64, divs: u64) -> Self {
        RunStats {
            matmul_count: matmuls,
            exact_div_count: divs,
            recursion_calls: 0,
            critical_path_stages: 1,
        }
    }

    /// Merge two independent branches.
    pub fn alongside(self, other: RunStats) -> RunStats {
        RunStats {
            matmul_count: self.matmul_count + other.matmul_count,
            exact_div_count: self.exact_div_count + other.exact_div_count,
            recursion_calls: self.recursion_calls + other.recursion_calls,
            critical_path_stages: self.critical_path_stages.max(other.critical_path_stages),
        }
    }

    /// Compose with a stage that depends on `self`.
    pub fn then(self, next: RunStats) -> RunStats {
        RunStats {
            matmul_count: self.matmul_count + next.matmul_count,
            exact_div_count: self.exact_div_count + next.exact_div_count,
            recursion_calls: self.recursion_calls + next.recursion_calls,
            critical_path_stages: self.critical_path_stages + next.critical_path_stages,
        }
    }

    /// Closed-form counts for an admissible input of the given order,
    /// from the recurrences of the step structure.
    pub fn predicted(order: usize) -> Option<RunStats> {
        if order < 2 || !order.is_power_of_two() {
            return None;
        }
        let mut s = RunStats {
            matmul_count: 0,
            exact_div_count: 1,
            recursion_calls: 1,
            critical_path_stages: 1,
        };
        let mut size = 2;
        while size < order {
            let half = size as u64;
            s = RunStats {
                matmul_count: 3 * s.matmul_count + 6,
                exact_div_count: 3 * s.exact_div_count + 6 * half * half + 1,
                recursion_calls: 3 * s.recursion_calls + 1,
                critical_path_stages: 2 * s.critical_path_stages + 3,
            };
            size *= 2;
        }
        Some(s)
    }
}

/// Output of the algorithm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjResult<D> {
    /// `gamma^(1-2n) * det`.
    pub phi: D,
    /// `gamma^(2-2n) * adj`.
    pub adj: Matrix<D>,
    pub stats: RunStats,
    /// Recorded intermediates, root step first. Empty unless tracing.
    pub trace: Vec<TraceStep<D>>,
}

/// Named intermediates of one recursive (order >= 4) step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep<D> {
    /// `root`, then `.A`, `.B`, `.F` per descent.
    pub path: String,
    pub level: usize,
    pub order: usize,
    /// The matrix this step was called on.
    pub input: Matrix<D>,
    pub gamma: D,
    pub alpha: D,
    pub beta: D,
    pub a_adj: Matrix<D>,
    pub b_adj: Matrix<D>,
    pub n: Matrix<D>,
    pub m: Matrix<D>,
    pub f: Matrix<D>,
    pub phi: D,
    pub f_adj: Matrix<D>,
    pub phi_prime: D,
    pub h: Matrix<D>,
    pub l: Matrix<D>,
    pub h_prime: Matrix<D>,
    pub l_prime: Matrix<D>,
}

/// Configured runner.
pub struct ParAdj<'a, D: Domain> {
    mode: Mode,
    trace: bool,
    mul: &'a dyn MatMul<D>,
}

impl<D: Domain> Default for ParAdj<'static, D> {
    fn default() -> Self {
        ParAdj {
            mode: Mode::Parallel,
            trace: false,
            mul: &Classical,
        }
    }
}

impl<D: Domain> ParAdj<'static, D> {
    pub fn new() -> Self {
        Self::default()
    }
}

impl<'a, D: Domain> ParAdj<'a, D> {
    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn trace(mut self, on: bool) -> Self {
        self.trace = on;
        self
    }

    pub fn matmul<'b>(self, mul: &'b dyn MatMul<D>) -> ParAdj<'b, D> {
        ParAdj {
            mode: self.mode,
            trace: self.trace,
            mul,
        }
    }

    /// Run on `a` with scale `gamma`. The order of `a` must be a power of two.
    pub fn run(&self, a: &Matrix<D>, gamma: &D) -> Result<AdjResult<D>> {
        let order = a.order()?;
        if order < 2 || !order.is_power_of_two() {
            return Err(Error::NotPowerOfTwo(order));
        }
        if gamma.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.step(a, gamma, 0, "root")
    }

    fn both<X: Send, Y: Send>(
        &self,
        fx: impl FnOnce() -> X + Send,
        fy: impl FnOnce() -> Y + Send,
    ) -> (X, Y) {
        match self.mode {
            Mode::Parallel => join(fx, fy),
            Mode::Sequential => {
                let x = fx();
                (x, fy())
            }
        }
    }

    fn step(&self, a: &Matrix<D>, gamma: &D, level: usize, path: &str) -> Result<AdjResult<D>> {
        let order = a.rows();
        if order == 2 {
            return base_case(a, gamma);
        }
        let half = order / 2;
        let sq = (half * half) as u64;
        let blocks = a.split_blocks()?;

        // stage 1
        let (path_a, path_b, path_f) = (
            format!("{path}.A"),
            format!("{path}.B"),
            format!("{path}.F"),
        );
        let (ra, rb) = self.both(
            || self.step(&blocks.top_left, gamma, level + 1, &path_a),
            || self.step(&blocks.bottom_left, gamma, level + 1, &path_b),
        );
        let ra = ra?;
        let rb = rb?;
        if ra.phi.is_zero() {
            return Err(Error::DegenerateMinor {
                level,
                block: Block::TopLeft,
            });
        }
        if rb.phi.is_zero() {
            return Err(Error::DegenerateMinor {
                level,
                block: Block::BottomLeft,
            });
        }
        let (alpha, a_adj) = (&ra.phi, &ra.adj);
        let (beta, b_adj) = (&rb.phi, &rb.adj);

        // stage 2
        let (n, m) = self.both(
            || {
                self.mul
                    .multiply(b_adj, &blocks.bottom_right)?
                    .exact_div_scalar(gamma)
            },
            || {
                self.mul
                    .multiply(a_adj, &blocks.top_right)?
                    .exact_div_scalar(gamma)
            },
        );
        let (n, m) = (n?, m?);
        let f = n.scale(alpha).sub(&m.scale(beta))?;

        // stage 3
        let alpha_beta = alpha.mul_ref(beta);
        let rf = self.step(&f, &alpha_beta, level + 1, &path_f)?;
        let (phi, f_adj) = (&rf.phi, &rf.adj);

        // stage 4
        let phi_prime = phi.exact_div(gamma)?;
        let (h, l) = self.both(
            || {
                self.mul
                    .multiply(f_adj, a_adj)?
                    .exact_div_scalar(&alpha.mul_ref(gamma))
            },
            || {
                self.mul
                    .multiply(f_adj, b_adj)?
                    .exact_div_scalar(&beta.mul_ref(gamma))
            },
        );
        let (h, l) = (h?, l?);

        // stage 5
        let (h_prime, l_prime) = self.both(
            || {
                a_adj
                    .scale(&phi_prime)
                    .add(&self.mul.multiply(&m, &h)?)?
                    .exact_div_scalar(alpha)
            },
            || self.mul.multiply(&m, &l)?.neg().exact_div_scalar(alpha),
        );
        let (h_prime, l_prime) = (h_prime?, l_prime?);

        let adj = Matrix::join_blocks(&h_prime, &l_prime, &h.neg(), &l)?;

        let own = RunStats {
            recursion_calls: 1,
            ..RunStats::default()
        };
        let stats = own
            .then(ra.stats.alongside(rb.stats))
            .then(RunStats::stage(2, 2 * sq))
            .then(rf.stats)
            .then(RunStats::stage(2, 2 * sq + 1))
            .then(RunStats::stage(2, 2 * sq));

        let mut trace = Vec::new();
        if self.trace {
            trace.push(TraceStep {
                path: path.to_string(),
                level,
                order,
                input: a.clone(),
                gamma: gamma.clone(),
                alpha: alpha.clone(),
                beta: beta.clone(),
                a_adj: a_adj.clone(),
                b_adj: b_adj.clone(),
                n,
                m,
                f,
                phi: phi.clone(),
                f_adj: f_adj.clone(),
                phi_prime: phi_prime.clone(),
                h,
                l,
                h_prime,
                l_prime,
            });
            trace.extend(ra.trace);
            trace.extend(rb.trace);
            trace.extend(rf.trace);
        }

        Ok(AdjResult {
            phi: phi_prime,
            adj,
            stats,
            trace,
        })
    }
}

fn base_case<D: Domain>(m: &Matrix<D>, gamma: &D) -> Result<AdjResult<D>> {
    let (a, c) = (m.get(0, 0), m.get(0, 1));
    let (b, d) = (m.get(1, 0), m.get(1, 1));
    let det = a.mul_ref(d) - b.mul_ref(c);
    let phi = det.exact_div(gamma)?;
    let adj = Matrix::from_rows(vec![
        vec![d.clone(), -c.clone()],
        vec![-b.clone(), a.clone()],
    ])?;
    Ok(AdjResult {
        phi,
        adj,
        stats: RunStats {
            matmul_count: 0,
            exact_div_count: 1,
            recursion_calls: 1,
            critical_path_stages: 1,
        },
        trace: Vec::new(),
    })
}

/// Run in parallel mode with classical multiplication.
pub fn par_adj<D: Domain>(a: &Matrix<D>, gamma: &D) -> Result<AdjResult<D>> {
    ParAdj::new().run(a, gamma)
}

pub fn par_adj_with_mode<D: Domain>(a: &Matrix<D>, gamma: &D, mode: Mode) -> Result<AdjResult<D>> {
    ParAdj::new().mode(mode).run(a, gamma)
}
